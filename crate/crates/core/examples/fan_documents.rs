//! Building the named fans, writing them as fan documents, and reading a
//! document back with rational coordinates.
//!
//! ```text
//! cargo run --example fan_documents
//! ```

use fanspline::cli::{parse_fan_str, FanDocument};
use fanspline::constructions::{named_fans, perturb_p2_ray};
use fanspline::fan::face_lattice;

fn main() {
    for nf in named_fans() {
        let fl = face_lattice(&nf.fan);
        println!(
            "{:<12} dim {} rays {:>2} cones {:>2} interior f-vector {:?} hereditary {}  ({})",
            nf.name,
            nf.fan.dim(),
            nf.fan.rays().len(),
            nf.fan.num_maximal_cones(),
            fl.interior_f_vector(),
            fl.is_hereditary(),
            nf.provenance
        );
    }

    let first = &named_fans()[0];
    let doc = FanDocument::from_fan(Some(first.name.clone()), &first.fan);
    println!("{}", serde_json::to_string(&doc).unwrap());

    let text = r#"{"dim": 2, "rays": [["1/2", 0], ["0", "3"], [-1, -1]],
                   "maximal_cones": [[0, 1], [1, 2], [2, 0]]}"#;
    let fan = parse_fan_str(text).unwrap();
    for r in fan.rays() {
        let coords: Vec<String> = r.iter().map(ToString::to_string).collect();
        println!("parsed ray ({})", coords.join(", "));
    }

    for ray in [[4, -1, -1], [3, 0, -1], [6, -1, -2]] {
        match perturb_p2_ray(3, 0, &ray) {
            Ok(_) => println!("moving v1 to {ray:?}: walls no longer concurrent"),
            Err(e) => println!("moving v1 to {ray:?}: {e}"),
        }
    }
}
