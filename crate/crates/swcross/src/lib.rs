//! Exact wall-crossing data for closed oriented 4-manifolds with `b+ = 1`.
//!
//! Seiberg-Witten invariants of a 4-manifold with `b+ = 1` depend on a
//! chamber structure in the space of (period, twist) pairs, and the jump
//! across a wall is a purely topological quantity: on a class `λ` of degree
//! `r` it equals the pairing `⟨λ ∧ exp(-u_c), l_O⟩` in the exterior algebra
//! of `H¹`, where `u_c` is built from triple cup products against the Chern
//! class `c`. Everything in this crate is computed in exact integer and
//! rational arithmetic; there are no floating-point numbers anywhere.
//!
//! The crate provides:
//!
//! - [`exterior`]: an exact exterior algebra on up to 64 generators, with
//!   wedge products, divided powers, truncated exponentials and the
//!   top-degree pairing;
//! - [`manifold`]: the topological skeleton (`b₁`, intersection form, triple
//!   cup products), validation, and the index data of characteristic classes;
//! - [`crossing`]: the class `u_c`, the abelian form `σ` evaluated by two
//!   independent formulas, and the wall-crossing identity verifier;
//! - [`segre`]: the recursion computing direct images of powers of the
//!   hyperplane class from Chern classes of an index bundle;
//! - [`chamber`]: walls, the four chambers of a class, positive-cone
//!   component selection and goodness predicates;
//! - [`kahler`]: invariants of rational surfaces via linear systems, the
//!   projective-plane table, and the blow-up enumeration of classes with a
//!   prescribed index;
//! - [`document`] and [`cli`]: a TOML manifold-description format and the
//!   command-line interface built on it.
//!
//! # Quick start
//!
//! ```
//! use swcross::kahler::{sw_values, RationalSurface};
//! use swcross::manifold::make_char_class;
//! use swcross::exterior::MultiIndex;
//! use num_bigint::BigInt;
//!
//! let p2 = RationalSurface::projective_plane();
//! let m = p2.manifold();
//! let cc = make_char_class(&m, &[5]).unwrap();
//! assert_eq!(cc.index(), 4);
//!
//! let sw = sw_values(&p2, &cc).unwrap();
//! assert_eq!(sw.plus_value(MultiIndex::EMPTY), BigInt::from(1));
//! assert_eq!(sw.minus_value(MultiIndex::EMPTY), BigInt::from(0));
//! ```
//!
//! Runnable demonstrations of every capability live in `examples/`; the
//! `swcross` binary exposes the same operations as subcommands.

pub mod chamber;
pub mod cli;
pub mod crossing;
pub mod document;
pub mod error;
pub mod exterior;
pub mod kahler;
pub mod manifold;
pub mod segre;

pub use chamber::{ChamberClass, ChamberQuery, ConeComponent, PeriodDirection};
pub use crossing::{SigmaForm, SwForm, UcClass};
pub use error::Error;
pub use exterior::{ExtElement, MultiIndex, Orientation, Sign};
pub use manifold::{CharClass, FourManifold, FourManifoldData};
