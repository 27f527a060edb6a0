//! The TOML manifold-description format: parsing, validation, and the
//! canonical normalizer whose output re-parses to identical data.
//!
//! ```bash
//! cargo run -p swcross --example document_roundtrip
//! ```

use swcross::document::ManifoldDocument;
use swcross::manifold::FourManifold;

const DOCUMENT: &str = r#"
name = "T2xS2"
b1 = 2
b_plus = 1
b_minus = 1
Q = [[0, 1], [1, 0]]
ref_pos = [1, 1]

[[t]]
i = 2
j = 1
k = 1
value = -1
"#;

fn main() {
    let doc = ManifoldDocument::parse(DOCUMENT).unwrap();
    let data = doc.to_data().unwrap();
    println!("parsed {:?}: {}", data.name, data.validate());
    // the mirrored entry (2,1,1) = -1 was antisymmetrized into (1,2,1) = 1
    println!("t[1][2][1] = {}", data.triple.get(1, 2, 1));

    let normalized = ManifoldDocument::from_data(&data, None).render();
    println!("--- normalized document ---");
    print!("{normalized}");
    println!("---------------------------");

    let reparsed = ManifoldDocument::parse(&normalized).unwrap().to_data().unwrap();
    println!("round trip reproduces the data: {}", reparsed == data);

    let manifold = FourManifold::new(reparsed).unwrap();
    println!(
        "b2 = {}, signature = {}",
        manifold.b2(),
        manifold.signature()
    );
}
