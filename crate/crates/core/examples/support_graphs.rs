//! Candidate flats, their graphs, and the alpha invariants that correct the
//! naive Hilbert polynomial.
//!
//! ```text
//! cargo run --example support_graphs
//! ```

use fanspline::constructions::{p2_fan, perturbed_p2a3};
use fanspline::exactla::rat;
use fanspline::fan::Fan;
use fanspline::supports::SupportAnalysis;

fn flats(name: &str, fan: &Fan, i: usize) {
    let s = SupportAnalysis::new(fan);
    println!("{name}, codimension {}:", i + 1);
    for (flat, a) in s.contributions(i).expect("codimension in range") {
        let g = s.g_xi_graph(&flat.basis, i).expect("codimension in range");
        let basis: Vec<String> = flat
            .basis
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        println!(
            "  span({}) {:?}: {} vertices, {} edges, cycle rank {}, contributes {a}",
            basis.join(" | "),
            flat.origin,
            g.vertices.len(),
            g.edges.len(),
            g.cycle_rank()
        );
    }
    println!("  alpha_{i} = {}", s.alpha(i).unwrap());
}

fn main() {
    flats("P2(A3)", &p2_fan(3), 1);
    flats("perturbed P2(A3)", &perturbed_p2a3(), 1);

    let p3 = SupportAnalysis::new(&p2_fan(3));
    println!("P2(A3) three-dimensional formula: {}", p3.hp3d().unwrap());
    println!("P2(A3) alpha_1 from cycle ranks: {}", p3.alpha1_via_h1().unwrap());

    let p4 = SupportAnalysis::new(&p2_fan(4));
    let centre = vec![vec![rat(1), rat(1), rat(1), rat(1)]];
    let g = p4.g_xi_graph(&centre, 2).unwrap();
    println!(
        "P2(A4) graph at the centre line: {} vertices, {} edges",
        g.vertices.len(),
        g.edges.len()
    );
    println!("P2(A4) prediction: {}", p4.euler2_prediction().unwrap());
}
