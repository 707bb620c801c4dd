//! Dimensions of continuous piecewise polynomials on three fans, the
//! interpolated Hilbert polynomial, and the freeness test.
//!
//! ```text
//! cargo run --example spline_dimensions
//! ```

use fanspline::constructions::{nonfree_annulus_fan, p2_fan, perturbed_p2a3};
use fanspline::fan::Fan;
use fanspline::splines::{free_decomposition, interpolate_hilbert_polynomial, SplineSystem};

fn report(name: &str, fan: &Fan, max_degree: usize) {
    let system = SplineSystem::new(fan);
    let table = system.hilbert_function(max_degree, name);
    println!("{name}: {} walls, dims {:?}", system.walls().len(), table.dims);
    match interpolate_hilbert_polynomial(&table, fan.dim()) {
        Ok(p) => println!("  Hilbert polynomial {p}, valid from k = {}", p.stable_from),
        Err(e) => println!("  {e}"),
    }
    match free_decomposition(&table, fan.dim(), fan.num_maximal_cones()) {
        Ok(r) => println!("  {r:?}"),
        Err(e) => println!("  {e}"),
    }
}

fn main() {
    report("P2(A3)", &p2_fan(3), 8);
    report("perturbed P2(A3)", &perturbed_p2a3(), 8);
    report("P2(A4)", &p2_fan(4), 8);
    report("annulus", &nonfree_annulus_fan(), 8);
}
