//! The braid arrangement: intersection lattice, Mobius values, Poincare
//! polynomial, and exponents read off the module of derivations.
//!
//! ```text
//! cargo run --example braid_arrangement
//! ```

use fanspline::arrangements::{
    braid_arrangement, defining_arrangement, exponents_from_derivations, flat_labels, lattice_with_mobius,
    poincare_polynomial, terao_check,
};
use fanspline::constructions::{p1_fan, p2_fan};

fn main() {
    let a3 = braid_arrangement(3, true);
    println!("A3 forms: {:?}", a3.forms());
    let l = lattice_with_mobius(&a3);
    for (label, mu) in flat_labels(&l, 2) {
        println!("  rank 2 flat {label}: mu = {mu}");
    }
    println!("Poincare polynomial: {:?}", poincare_polynomial(&a3));
    println!("factors as (1+t)(1+2t)(1+3t): {}", terao_check(&a3, &[1, 2, 3]));

    for n in 2..=4 {
        for essential in [true, false] {
            let a = braid_arrangement(n, essential);
            println!(
                "A{n} ({}): exponents {:?}",
                if essential { "essential" } else { "in n+1 variables" },
                exponents_from_derivations(&a, n + 3).unwrap()
            );
        }
    }

    for n in 2..=4 {
        println!(
            "walls of P2(A{n}): {:?}; walls of P1(A{n}): {:?}",
            poincare_polynomial(&defining_arrangement(&p2_fan(n))),
            poincare_polynomial(&defining_arrangement(&p1_fan(n)))
        );
    }
}
