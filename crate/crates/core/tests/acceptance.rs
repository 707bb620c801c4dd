//! Acceptance suite: one test per criterion, each printing a single
//! `PASS`/`FAIL` line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::time::Duration;

use fanspline::complex::{homology_dimensions, ChainComplexSpec};
use fanspline::constructions::{nonfree_annulus_fan, p2_fan};
use fanspline::exactla::rat;
use fanspline::fan::{face_lattice, Fan};
use fanspline::splines::SplineSystem;
use fanspline::verify::run_criterion;
use proptest::prelude::*;

fn check(id: usize, limit: Option<Duration>) {
    let o = run_criterion(id);
    let within = limit.is_none_or(|l| o.elapsed < l);
    let status = if o.passed && within { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id:>2}: {} ({:.2?}) {}", o.title, o.elapsed, o.detail);
    assert!(o.passed, "criterion {id} failed: {}", o.detail);
    assert!(within, "criterion {id} took {:?}, limit {limit:?}", o.elapsed);
}

const SECONDS: fn(u64) -> Option<Duration> = |s| Some(Duration::from_secs(s));

#[test]
fn criterion_01_p2_a3_hilbert_function() {
    check(1, SECONDS(10));
}

#[test]
fn criterion_02_perturbed_hilbert_polynomial() {
    check(2, SECONDS(10));
}

#[test]
fn criterion_03_alpha_invariants() {
    check(3, None);
}

#[test]
fn criterion_04_alpha_from_cycle_ranks() {
    check(4, None);
}

#[test]
fn criterion_05_p2_a4() {
    check(5, SECONDS(300));
}

#[test]
fn criterion_06_euler_identity() {
    check(6, None);
}

#[test]
fn criterion_07_top_homology_is_splines() {
    check(7, None);
}

#[test]
fn criterion_08_braid_arrangement() {
    check(8, SECONDS(60));
}

#[test]
fn criterion_09_projective_space() {
    check(9, None);
}

#[test]
fn criterion_10_shared_exponents() {
    check(10, None);
}

#[test]
fn criterion_11_annulus_homology() {
    check(11, None);
}

#[test]
fn criterion_12_support_codimension() {
    check(12, None);
}

fn shear(a: i64, b: i64, c: i64) -> Vec<Vec<fanspline::exactla::Rational>> {
    // upper unitriangular, so the lattice and every span incidence are kept
    vec![
        vec![rat(1), rat(a), rat(b)],
        vec![rat(0), rat(1), rat(c)],
        vec![rat(0), rat(0), rat(1)],
    ]
}

fn euler_holds(fan: &Fan, k: usize) -> bool {
    let fl = face_lattice(fan);
    let complex = ChainComplexSpec::from_lattice(&fl).unwrap();
    let splines = SplineSystem::from_lattice(fan, &fl).hilbert_function(k, "C0");
    let h = complex.homology(k);
    complex.squares_to_zero(k) && (0..=k).all(|deg| complex.euler_prediction(&h, deg) == splines.dims[deg] as i64)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn euler_identity_survives_unimodular_changes_of_coordinates(a in -2i64..3, b in -2i64..3, c in -2i64..3) {
        let fan = p2_fan(3).transformed(&shear(a, b, c)).unwrap();
        prop_assert!(euler_holds(&fan, 6));
    }

    #[test]
    fn annulus_homology_is_coordinate_free(a in -2i64..3, b in -2i64..3, c in -2i64..3) {
        let base = homology_dimensions(&nonfree_annulus_fan(), 6).unwrap();
        let moved = homology_dimensions(&nonfree_annulus_fan().transformed(&shear(a, b, c)).unwrap(), 6).unwrap();
        prop_assert_eq!(&base.dims, &moved.dims);
        prop_assert!(moved.dims[1].iter().any(|&x| x > 0));
        prop_assert_eq!(*moved.dims[1].last().unwrap(), 0);
    }
}
