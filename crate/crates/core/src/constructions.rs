//! Builders for the named fans used throughout the crate.
//!
//! * [`p2_fan`]: the simplex-in-simplex fan `P₂(Aₙ)`, rays `e_i` and
//!   `v_i = (n+1)e_i − Σ e_j`, with the inner cone `a₀ = cone(e_1..e_n)` and
//!   outer cones `a_i = cone({v_j}_{j≠i} ∪ {e_j}_{j≠i})`.
//! * [`p1_fan`]: the complete fan of projective `n`-space.
//! * [`perturbed_p2a3`]: `P₂(A₃)` with `v₁` moved off the symmetric position
//!   so the three spoke walls no longer share a line.
//! * [`nonfree_annulus_fan`]: the cone over a triangulated triangular annulus.

use thiserror::Error;

use crate::exactla::subspace::{intersect, Vector};
use crate::exactla::{rat, Rational};
use crate::fan::{face_lattice, Fan, FanError};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("perturbed fan is invalid: {0}")]
    InvalidPerturbation(#[from] FanError),
    #[error("perturbation changed the combinatorial type")]
    NotCombinatoriallyEquivalent,
    #[error("perturbation keeps the spoke walls concurrent")]
    StillConcurrent,
}

/// A fan with a short name and a note on where it comes from.
#[derive(Debug, Clone)]
pub struct NamedFan {
    pub name: String,
    pub fan: Fan,
    pub provenance: String,
}

fn int_rays(rays: &[Vec<i64>]) -> Vec<Vector> {
    rays.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

/// Rays of `P₂(Aₙ)` in construction order `e_1..e_n, v_1..v_n`, and its cones
/// `a_0, a_1, …, a_n` as index sets into that list.
fn p2_raw(n: usize) -> (Vec<Vec<i64>>, Vec<Vec<usize>>) {
    let mut rays = Vec::with_capacity(2 * n);
    for i in 0..n {
        rays.push((0..n).map(|j| i64::from(i == j)).collect());
    }
    for i in 0..n {
        rays.push((0..n).map(|j| if i == j { n as i64 } else { -1 }).collect());
    }
    let mut cones = vec![(0..n).collect::<Vec<_>>()];
    for i in 0..n {
        let mut c: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        c.extend((0..n).filter(|&j| j != i).map(|j| n + j));
        cones.push(c);
    }
    (rays, cones)
}

/// `P₂(Aₙ)` for `n ≥ 2`.
pub fn p2_fan(n: usize) -> Fan {
    assert!(n >= 2, "P2(A_n) needs n >= 2");
    let (rays, cones) = p2_raw(n);
    Fan::from_integer_rays(n, &rays, cones).expect("P2(A_n) is a valid fan")
}

/// The fan of projective `n`-space: rays `e_1..e_n, −(e_1+…+e_n)` and every
/// `n`-subset of them as a maximal cone.
pub fn p1_fan(n: usize) -> Fan {
    assert!(n >= 1, "P1(A_n) needs n >= 1");
    let mut rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    rays.push(vec![-1; n]);
    let cones = (0..=n)
        .map(|skip| (0..=n).filter(|&r| r != skip).collect())
        .collect();
    Fan::from_integer_rays(n, &rays, cones).expect("projective space fan is valid")
}

/// `P₂(Aₙ)` with `v_{index}` (zero based) replaced by `ray`.
///
/// Fails unless the result is a valid fan with the same face lattice (under
/// the obvious ray correspondence) whose outer walls `a_i | a_j` no longer
/// meet in a common line.
pub fn perturb_p2_ray(n: usize, index: usize, ray: &[i64]) -> Result<Fan, ConstructionError> {
    let (mut rays, cones) = p2_raw(n);
    rays[n + index] = ray.to_vec();
    let perturbed = Fan::from_integer_rays(n, &rays, cones.clone())?;
    let original = p2_fan(n);
    if face_labels(&original, &p2_raw(n).0) != face_labels(&perturbed, &rays) {
        return Err(ConstructionError::NotCombinatoriallyEquivalent);
    }
    // outer walls a_i | a_j are spanned by the rays shared by both cones
    let mut common: Option<Vec<Vector>> = None;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let span: Vec<Vector> = cones[i]
                .iter()
                .filter(|r| cones[j].contains(r))
                .map(|&r| int_rays(&rays[r..=r]).remove(0))
                .collect();
            common = Some(match common {
                None => crate::exactla::subspace::canonical_basis(&span),
                Some(c) => intersect(&c, &span, n),
            });
        }
    }
    if common.is_some_and(|c| !c.is_empty()) {
        return Err(ConstructionError::StillConcurrent);
    }
    Ok(perturbed)
}

// Face lattice expressed with construction-order ray labels.
fn face_labels(fan: &Fan, construction_rays: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let label = |v: &Vector| -> usize {
        construction_rays
            .iter()
            .position(|r| r.iter().map(|&x| rat(x)).collect::<Vec<Rational>>() == *v)
            .expect("construction rays are primitive")
    };
    let fl = face_lattice(fan);
    let mut out: Vec<Vec<usize>> = fl
        .faces()
        .iter()
        .map(|f| {
            let mut l: Vec<usize> = f.rays.iter().map(|&r| label(&fan.rays()[r])).collect();
            l.sort_unstable();
            l
        })
        .collect();
    out.sort();
    out
}

/// `P₂(A₃)` with `v₁ = (3,−1,−1)` moved to `(6,−1,−2) = 2v₁ + e₂`.
///
/// Moving `v₁` along `e₁` keeps `(1,1,1)` in `span{e₁, v₁}`. The smaller move
/// `v₁ + e₂ = (3,0,−1)` puts `e₁` inside `cone(e₃, v₁)`.
pub fn perturbed_p2a3() -> Fan {
    perturb_p2_ray(3, 0, &[6, -1, -2]).expect("perturbation of P2(A3) is valid")
}

/// Cone over the annulus between the triangles `(0,0),(4,0),(2,4)` and
/// `(1,1),(3,1),(2,2)` at height one, triangulated into six triangles.
pub fn nonfree_annulus_fan() -> Fan {
    let rays = vec![
        vec![0, 0, 1], // outer
        vec![4, 0, 1],
        vec![2, 4, 1],
        vec![1, 1, 1], // inner
        vec![3, 1, 1],
        vec![2, 2, 1],
    ];
    let (o1, o2, o3, i1, i2, i3) = (0, 1, 2, 3, 4, 5);
    let cones = vec![
        vec![i1, i2, o1],
        vec![o1, o2, i2],
        vec![o2, o3, i2],
        vec![i2, i3, o3],
        vec![i1, i3, o3],
        vec![o3, o1, i1],
    ];
    Fan::new(3, int_rays(&rays), cones).expect("annulus triangulation is a valid fan")
}

/// Every named fan used by the verification suite.
pub fn named_fans() -> Vec<NamedFan> {
    let mut out = vec![
        NamedFan {
            name: "p2_a3".into(),
            fan: p2_fan(3),
            provenance: "simplex-in-simplex fan P2(A3)".into(),
        },
        NamedFan {
            name: "sigma_prime".into(),
            fan: perturbed_p2a3(),
            provenance: "P2(A3) with one outer ray perturbed".into(),
        },
        NamedFan {
            name: "p2_a4".into(),
            fan: p2_fan(4),
            provenance: "tetrahedron-in-tetrahedron fan P2(A4)".into(),
        },
        NamedFan {
            name: "annulus".into(),
            fan: nonfree_annulus_fan(),
            provenance: "cone over a triangulated annulus".into(),
        },
    ];
    for n in 1..=4 {
        out.push(NamedFan {
            name: format!("p1_a{n}"),
            fan: p1_fan(n),
            provenance: format!("fan of projective {n}-space"),
        });
    }
    out
}
