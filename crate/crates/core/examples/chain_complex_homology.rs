//! Homology of the chain complex of a fan, degree by degree, and the Euler
//! identity tying it to the spline dimensions.
//!
//! ```text
//! cargo run --example chain_complex_homology
//! ```

use fanspline::complex::ChainComplexSpec;
use fanspline::constructions::{nonfree_annulus_fan, p2_fan};
use fanspline::fan::{face_lattice, Fan};
use fanspline::splines::SplineSystem;

fn show(name: &str, fan: &Fan, max_degree: usize) {
    let fl = face_lattice(fan);
    let complex = ChainComplexSpec::from_lattice(&fl).expect("dimension at least 2");
    let splines = SplineSystem::from_lattice(fan, &fl).hilbert_function(max_degree, "C0");
    let h = complex.homology(max_degree);
    println!("{name}: interior f-vector {:?}", fl.interior_f_vector());
    for i in 1..=complex.dim() {
        println!("  H_{i}: {:?}", h.table(i).dims);
    }
    let predicted: Vec<i64> = (0..=max_degree).map(|k| complex.euler_prediction(&h, k)).collect();
    println!("  Euler prediction {predicted:?}");
    println!("  spline dims      {:?}", splines.dims);
    println!("  d^2 = 0: {}", complex.squares_to_zero(max_degree));
}

fn main() {
    show("P2(A3)", &p2_fan(3), 8);
    show("P2(A4)", &p2_fan(4), 6);
    show("annulus", &nonfree_annulus_fan(), 8);
}
