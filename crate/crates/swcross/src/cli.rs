//! Command-line interface: document ingestion, dispatch, deterministic
//! table emission. Tables go to stdout, diagnostics to stderr; the exit
//! status is 0 on success, 1 on validation failure, 2 on parse or usage
//! errors. The only environment variable consulted is `SWCROSS_SEED`,
//! which seeds sampling subcommands (default 0).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chamber::{classify, zero_twist_chamber_constancy, ChamberQuery, ConeComponent, PeriodDirection};
use crate::crossing::{build_uc, verify_wall_crossing, SigmaForm, SwForm};
use crate::document::{DocumentError, ManifoldDocument};
use crate::error::Error;
use crate::exterior::Orientation;
use crate::kahler::{
    dou_nonempty, enumerate_blowup_classes, spinor_divisor, sw_values, RationalSurface,
    SurfaceKind,
};
use crate::manifold::{make_char_class, CharClass, FourManifold};
use crate::segre::{default_k_max, dirac_chern_classes, segre_polynomials};

/// A table rendered with byte-identical output for identical inputs:
/// columns padded to their widest cell, two spaces between columns, no
/// trailing whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportTable {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl ReportTable {
    pub fn new<I, S>(headers: I) -> ReportTable
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        ReportTable {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let row: Vec<String> = cells.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.headers.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let emit = |line: &mut String, cells: &[String]| {
            for (n, (cell, width)) in cells.iter().zip(&widths).enumerate() {
                if n > 0 {
                    line.push_str("  ");
                }
                if n + 1 == cells.len() {
                    line.push_str(cell);
                } else {
                    let _ = write!(line, "{cell:<width$}");
                }
            }
            line.push('\n');
        };
        emit(&mut out, &self.headers);
        for row in &self.rows {
            emit(&mut out, row);
        }
        out
    }
}

/// Comma-separated integer vector as a single argument value.
#[derive(Debug, Clone)]
struct IntVec(Vec<i64>);

/// Comma-separated rational vector as a single argument value.
#[derive(Debug, Clone)]
struct RatVec(Vec<BigRational>);

fn parse_int_vec(text: &str) -> Result<IntVec, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad integer {tok:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(IntVec)
}

fn parse_rat_vec(text: &str) -> Result<RatVec, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<BigRational>()
                .map_err(|e| format!("bad rational {tok:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(RatVec)
}

fn parse_orientation(text: &str) -> Result<Orientation, String> {
    match text.trim() {
        "+1" | "+" | "1" => Ok(Orientation::Positive),
        "-1" | "-" => Ok(Orientation::Negative),
        other => Err(format!("bad orientation {other:?}: expected +1 or -1")),
    }
}

#[derive(Parser)]
#[command(
    name = "swcross",
    version,
    about = "Exact wall-crossing data for 4-manifolds with b+ = 1",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a manifold document against every structural invariant.
    Validate { file: PathBuf },
    /// Index data (w_c, delta_c) of a characteristic class.
    Index {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
    },
    /// The wall-crossing form over all basis monomials of admissible degree.
    Sigma {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
        #[arg(long, default_value = "+1", value_parser = parse_orientation, allow_hyphen_values = true)]
        orientation: Orientation,
    },
    /// Pushforward polynomials p_k of the Dirac family of a class.
    Segre {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<i64>,
    },
    /// Classify a (period, twist) pair against the wall of a class.
    Chamber {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
        #[arg(long, value_parser = parse_rat_vec, allow_hyphen_values = true)]
        omega: RatVec,
        #[arg(long, value_parser = parse_rat_vec, allow_hyphen_values = true)]
        twist: RatVec,
        /// Also certify that the zero-twist slice of H0 avoids the wall of
        /// the class, sampling this many directions (seed: SWCROSS_SEED).
        #[arg(long)]
        zero_twist_samples: Option<usize>,
    },
    /// Invariants of a class on a rational surface (surface key required).
    Sw {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
    },
    /// The projective-plane invariant table over a range of odd classes.
    P2table {
        #[arg(long, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, allow_hyphen_values = true)]
        max: i64,
    },
    /// Divisor tuples on a blown-up plane realizing a prescribed index.
    Blowup {
        #[arg(short = 'r', long = "points")]
        points: usize,
        #[arg(short = 'w', long = "index", allow_hyphen_values = true)]
        index: i64,
        #[arg(short = 'n', long = "count")]
        count: usize,
        #[arg(long, default_value_t = 60)]
        max_degree: i64,
    },
    /// Verify the wall-crossing identity against the surface invariants.
    Crosscheck {
        file: PathBuf,
        #[arg(short = 'c', long = "class", value_parser = parse_int_vec, allow_hyphen_values = true)]
        class: IntVec,
    },
}

/// A failed command: what to print where, and the exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Failure {
    fn parse(message: String) -> Failure {
        Failure {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }

    fn domain(message: String) -> Failure {
        Failure {
            code: 1,
            stdout: String::new(),
            stderr: message,
        }
    }

    fn report(output: String) -> Failure {
        Failure {
            code: 1,
            stdout: output,
            stderr: String::new(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::domain(format!("error: {e}\n"))
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Failure {
        Failure::parse(format!("error: {e}\n"))
    }
}

/// Runs the interface on explicit arguments and streams; returns the exit
/// status. The thin binary forwards `std::env::args` here.
pub fn run<I>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = stdout.write_all(rendered.as_bytes());
                0
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
                2
            };
        }
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let _ = stdout.write_all(output.as_bytes());
            0
        }
        Err(failure) => {
            let _ = stdout.write_all(failure.stdout.as_bytes());
            let _ = stderr.write_all(failure.stderr.as_bytes());
            failure.code
        }
    }
}

fn sampling_seed() -> u64 {
    std::env::var("SWCROSS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn read_document(path: &PathBuf) -> Result<ManifoldDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("error: cannot read {}: {e}\n", path.display())))?;
    Ok(ManifoldDocument::parse(&text)?)
}

fn load_manifold(path: &PathBuf) -> Result<(ManifoldDocument, FourManifold), Failure> {
    let doc = read_document(path)?;
    let data = doc.to_data()?;
    let manifold = FourManifold::new(data)
        .map_err(|report| Failure::domain(format!("{report}\n")))?;
    Ok((doc, manifold))
}

fn char_class(m: &FourManifold, class: &[i64]) -> Result<CharClass, Failure> {
    Ok(make_char_class(m, class)?)
}

fn join_ints(xs: &[i64]) -> String {
    xs.iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn dispatch(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Index { file, class } => cmd_index(&file, &class.0),
        Command::Sigma {
            file,
            class,
            orientation,
        } => cmd_sigma(&file, &class.0, orientation),
        Command::Segre { file, class, k_max } => cmd_segre(&file, &class.0, k_max),
        Command::Chamber {
            file,
            class,
            omega,
            twist,
            zero_twist_samples,
        } => cmd_chamber(&file, &class.0, omega.0, twist.0, zero_twist_samples),
        Command::Sw { file, class } => cmd_sw(&file, &class.0),
        Command::P2table { min, max } => cmd_p2table(min, max),
        Command::Blowup {
            points,
            index,
            count,
            max_degree,
        } => cmd_blowup(points, index, count, max_degree),
        Command::Crosscheck { file, class } => cmd_crosscheck(&file, &class.0),
    }
}

fn cmd_validate(file: &PathBuf) -> Result<String, Failure> {
    let doc = read_document(file)?;
    let data = doc.to_data()?;
    let report = data.validate();
    if report.is_valid() {
        Ok("valid\n".to_string())
    } else {
        Err(Failure::report(format!("{report}\n")))
    }
}

fn cmd_index(file: &PathBuf, class: &[i64]) -> Result<String, Failure> {
    let (_, m) = load_manifold(file)?;
    let cc = char_class(&m, class)?;
    let mut table = ReportTable::new(["c", "w_c", "delta_c"]);
    table.row([
        join_ints(class),
        cc.index().to_string(),
        cc.dirac_index().to_string(),
    ]);
    Ok(table.render())
}

fn cmd_sigma(file: &PathBuf, class: &[i64], orientation: Orientation) -> Result<String, Failure> {
    let (_, m) = load_manifold(file)?;
    let cc = char_class(&m, class)?;
    let sigma = SigmaForm::new(&m, &cc, orientation)?;
    let mut table = ReportTable::new(["monomial", "degree", "sigma"]);
    for (monomial, value) in sigma.table().map_err(Failure::from)? {
        table.row([
            monomial.to_string(),
            monomial.degree().to_string(),
            value.to_string(),
        ]);
    }
    Ok(table.render())
}

fn cmd_segre(file: &PathBuf, class: &[i64], k_max: Option<i64>) -> Result<String, Failure> {
    let (_, m) = load_manifold(file)?;
    let cc = char_class(&m, class)?;
    let uc = build_uc(&m, &cc)?;
    let input = dirac_chern_classes(&uc, m.b1() / 2)?;
    let k_max = k_max.unwrap_or_else(|| default_k_max(&input));
    let sequence = segre_polynomials(&input, k_max)?;
    let mut table = ReportTable::new(["k", "p_k"]);
    for (k, p) in sequence.iter() {
        table.row([k.to_string(), p.to_string()]);
    }
    Ok(table.render())
}

fn cmd_chamber(
    file: &PathBuf,
    class: &[i64],
    omega: Vec<BigRational>,
    twist: Vec<BigRational>,
    zero_twist_samples: Option<usize>,
) -> Result<String, Failure> {
    let (_, m) = load_manifold(file)?;
    let cc = char_class(&m, class)?;
    let query = ChamberQuery {
        omega: PeriodDirection::new(omega),
        twist,
        class: cc.clone(),
    };
    let classification = classify(&m, &query)?;
    let mut out = format!("{classification}\n");
    if let Some(samples) = zero_twist_samples {
        let certificate = zero_twist_chamber_constancy(&m, &cc, samples, sampling_seed())?;
        let _ = writeln!(out, "zero-twist sign: {}", certificate.sign);
        let _ = writeln!(out, "zero-twist samples: {}", certificate.samples);
    }
    Ok(out)
}

/// Reads the surface key and checks the document data actually is that
/// surface; the invariant values are meaningless otherwise.
fn required_surface(
    doc: &ManifoldDocument,
    m: &FourManifold,
) -> Result<RationalSurface, Failure> {
    let surface = doc
        .surface()
        .map_err(Failure::from)?
        .ok_or_else(|| {
            Failure::domain("error: key surface: required by this command\n".to_string())
        })?;
    if m.b1() != 0 {
        return Err(Failure::domain(format!(
            "error: key b1: a rational surface has b1 = 0, document says {}\n",
            m.b1()
        )));
    }
    if m.b_plus() != 1 || m.b_minus() != surface.rank() - 1 {
        return Err(Failure::domain(format!(
            "error: key b_minus: surface kind expects (b_plus, b_minus) = (1, {}), document says ({}, {})\n",
            surface.rank() - 1,
            m.b_plus(),
            m.b_minus()
        )));
    }
    if m.intersection_form() != surface.intersection_form() {
        return Err(Failure::domain(
            "error: key Q: does not match the diagonal form of the named surface\n".to_string(),
        ));
    }
    Ok(surface)
}

/// Invariants relative to the document's H0: when the document reference
/// class sits opposite the Kähler ray, the values are re-expressed through
/// the component-flip normalization.
fn surface_invariants(
    m: &FourManifold,
    surface: &RationalSurface,
    cc: &CharClass,
) -> Result<SwForm, Failure> {
    let sw = sw_values(surface, cc)?;
    let mut kahler_ray = vec![0i64; m.b2()];
    kahler_ray[0] = 1;
    let pairing = m.pairing(m.ref_pos(), &kahler_ray);
    let sw = if pairing < BigInt::zero() {
        sw.with_component(ConeComponent::NegH0)
    } else {
        sw
    };
    Ok(sw.normalized())
}

fn sw_table_row(
    table: &mut ReportTable,
    surface: &RationalSurface,
    cc: &CharClass,
    sw: &SwForm,
) -> Result<(), Failure> {
    let divisor = spinor_divisor(surface, cc)?;
    let nonempty = dou_nonempty(surface, &divisor)?;
    let criterion = match surface.kind() {
        SurfaceKind::ProjectivePlane => "exact",
        SurfaceKind::BlownUpPlane { .. } => "naive",
    };
    table.row([
        join_ints(cc.coords()),
        cc.index().to_string(),
        divisor.to_string(),
        if nonempty { "nonempty" } else { "empty" }.to_string(),
        sw.plus_value(crate::exterior::MultiIndex::EMPTY).to_string(),
        sw.minus_value(crate::exterior::MultiIndex::EMPTY).to_string(),
        criterion.to_string(),
    ]);
    Ok(())
}

fn cmd_sw(file: &PathBuf, class: &[i64]) -> Result<String, Failure> {
    let (doc, m) = load_manifold(file)?;
    let surface = required_surface(&doc, &m)?;
    let cc = char_class(&m, class)?;
    let sw = surface_invariants(&m, &surface, &cc)?;
    let mut table = ReportTable::new(["c", "w_c", "m", "dou", "sw_plus", "sw_minus", "criterion"]);
    sw_table_row(&mut table, &surface, &cc, &sw)?;
    Ok(table.render())
}

fn cmd_p2table(min: i64, max: i64) -> Result<String, Failure> {
    let surface = RationalSurface::projective_plane();
    let m = surface.manifold();
    let mut table = ReportTable::new(["c", "w_c", "sw_plus", "sw_minus"]);
    let mut c = min;
    while c <= max {
        if c.rem_euclid(2) == 1 {
            let cc = char_class(&m, &[c])?;
            let sw = sw_values(&surface, &cc)?;
            table.row([
                c.to_string(),
                cc.index().to_string(),
                sw.plus_value(crate::exterior::MultiIndex::EMPTY).to_string(),
                sw.minus_value(crate::exterior::MultiIndex::EMPTY).to_string(),
            ]);
        }
        c += 1;
    }
    Ok(table.render())
}

fn cmd_blowup(points: usize, index: i64, count: usize, max_degree: i64) -> Result<String, Failure> {
    let result = enumerate_blowup_classes(points, index, count, max_degree)?;
    let mut table = ReportTable::new(["d", "m", "c", "w_c"]);
    for solution in &result.solutions {
        table.row([
            solution.divisor.degree.to_string(),
            solution
                .divisor
                .multiplicities
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(","),
            join_ints(&solution.class),
            solution.index.to_string(),
        ]);
    }
    let mut out = table.render();
    if result.bound_exceeded {
        let _ = writeln!(
            out,
            "search bound d <= {} reached with {} solutions",
            result.max_degree,
            result.solutions.len()
        );
    }
    Ok(out)
}

fn cmd_crosscheck(file: &PathBuf, class: &[i64]) -> Result<String, Failure> {
    let (doc, m) = load_manifold(file)?;
    let surface = required_surface(&doc, &m)?;
    let cc = char_class(&m, class)?;
    let sw = surface_invariants(&m, &surface, &cc)?;
    let report = verify_wall_crossing(&sw, &m, &cc, Orientation::Positive)?;
    if report.is_consistent() {
        Ok("wall-crossing identity verified: 0 discrepancies\n".to_string())
    } else {
        let mut table = ReportTable::new(["monomial", "jump", "predicted"]);
        for d in &report.discrepancies {
            table.row([
                d.monomial.to_string(),
                d.jump.to_string(),
                d.predicted.to_string(),
            ]);
        }
        Err(Failure::report(table.render()))
    }
}
