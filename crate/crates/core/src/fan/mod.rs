//! Rational polyhedral fans.
//!
//! A [`Fan`] is given by primitive integer rays and maximal cones listed as
//! ray index sets. Construction normalises rays, validates the fan axioms and
//! sorts everything canonically, so two descriptions of the same fan that
//! differ only in ordering produce identical fans.
//!
//! Faces are found by brute force: the facets of each maximal cone come from
//! `(d-1)`-subsets of its rays whose hyperplane supports the cone, and all
//! other faces are intersections of facets. This is adequate for the desk-scale
//! fans the crate targets (tens of rays, dimension at most five).

mod lattice;

pub use lattice::{face_lattice, Face, FaceLattice};

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactla::subspace::{self, dot, nullspace, rank_of, Vector};
use crate::exactla::Rational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FanError {
    #[error("fan has no maximal cones")]
    Empty,
    #[error("ray {ray} has length {got}, expected {expected}")]
    RayDimension { ray: usize, expected: usize, got: usize },
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("rays {0} and {1} span the same ray")]
    DuplicateRay(usize, usize),
    #[error("cone {cone} refers to missing ray {ray}")]
    MissingRay { cone: usize, ray: usize },
    #[error("ray {0} is not used by any maximal cone")]
    UnusedRay(usize),
    #[error("cone {0} is not full dimensional")]
    NotFullDim(usize),
    #[error("cone {0} contains a line")]
    NotPointed(usize),
    #[error("ray {ray} is not an extreme ray of cone {cone}")]
    NotExtreme { cone: usize, ray: usize },
    #[error("cones {0} and {1} do not meet in a common face")]
    BadIntersection(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vector>,
    maximal_cones: Vec<Vec<usize>>,
}

/// Facet of a full-dimensional cone: inward normal and the local indices of
/// the rays it contains.
#[derive(Debug, Clone)]
pub(crate) struct ConeFacet {
    pub normal: Vector,
    pub rays: Vec<usize>,
}

impl Fan {
    /// Normalises, validates and canonically orders a fan.
    ///
    /// Error indices refer to positions in the input lists.
    pub fn new(dim: usize, rays: Vec<Vector>, maximal_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let mut normalized = Vec::with_capacity(rays.len());
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::RayDimension {
                    ray: i,
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(Zero::is_zero) {
                return Err(FanError::ZeroRay(i));
            }
            normalized.push(subspace::to_rational(&subspace::primitive(r)));
        }
        for i in 0..normalized.len() {
            for j in 0..i {
                if normalized[i] == normalized[j] {
                    return Err(FanError::DuplicateRay(j, i));
                }
            }
        }
        if maximal_cones.is_empty() {
            return Err(FanError::Empty);
        }
        let mut used = vec![false; normalized.len()];
        let mut cones = Vec::with_capacity(maximal_cones.len());
        for (c, cone) in maximal_cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            for &r in &set {
                if r >= normalized.len() {
                    return Err(FanError::MissingRay { cone: c, ray: r });
                }
                used[r] = true;
            }
            cones.push(set.into_iter().collect::<Vec<_>>());
        }
        if let Some(r) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay(r));
        }
        let raw = Fan {
            dim,
            rays: normalized,
            maximal_cones: cones,
        };
        validate(&raw)?;
        Ok(raw.canonicalized())
    }

    /// Convenience constructor from integer rays.
    pub fn from_integer_rays(dim: usize, rays: &[Vec<i64>], maximal_cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let rays = rays
            .iter()
            .map(|r| r.iter().map(|&x| crate::exactla::rat(x)).collect())
            .collect();
        Fan::new(dim, rays, maximal_cones)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive integer rays, as rationals, in canonical (lexicographic) order.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal_cones
    }

    pub fn num_maximal_cones(&self) -> usize {
        self.maximal_cones.len()
    }

    /// Applies an invertible linear map `x ↦ M x` (rows of `M` given) to every ray.
    pub fn transformed(&self, m: &[Vector]) -> Result<Fan, FanError> {
        let rays = self
            .rays
            .iter()
            .map(|r| m.iter().map(|row| dot(row, r)).collect())
            .collect();
        Fan::new(self.dim, rays, self.maximal_cones.clone())
    }

    fn canonicalized(self) -> Fan {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = self
            .maximal_cones
            .iter()
            .map(|c| {
                let mut c: Vec<usize> = c.iter().map(|&r| new_index[r]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        Fan {
            dim: self.dim,
            rays,
            maximal_cones: cones,
        }
    }

    pub(crate) fn cone_rays(&self, cone: usize) -> Vec<Vector> {
        self.maximal_cones[cone]
            .iter()
            .map(|&r| self.rays[r].clone())
            .collect()
    }
}

/// Facets of the cone spanned by `rays` in `Q^dim`, assuming it is full
/// dimensional. Each facet is found from a `(dim-1)`-subset of rays whose
/// hyperplane has every ray on one side.
pub(crate) fn cone_facets(rays: &[Vector], dim: usize) -> Vec<ConeFacet> {
    let mut facets: Vec<ConeFacet> = Vec::new();
    if dim == 1 {
        // the only facet of a ray in Q^1 is the origin, cut out by the ray itself
        facets.push(ConeFacet {
            normal: subspace::to_rational(&subspace::primitive(&rays[0])),
            rays: Vec::new(),
        });
        return facets;
    }
    for subset in combinations(rays.len(), dim - 1) {
        let chosen: Vec<Vector> = subset.iter().map(|&i| rays[i].clone()).collect();
        if rank_of(&chosen) != dim - 1 {
            continue;
        }
        let normal = nullspace(&chosen, dim).pop().expect("hyperplane normal");
        let values: Vec<Rational> = rays.iter().map(|r| dot(&normal, r)).collect();
        let pos = values.iter().any(Signed::is_positive);
        let neg = values.iter().any(Signed::is_negative);
        if pos && neg {
            continue;
        }
        let normal: Vector = if neg {
            normal.into_iter().map(|x| -x).collect()
        } else {
            normal
        };
        let on: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_zero()).collect();
        if facets.iter().any(|f| f.rays == on) {
            continue;
        }
        facets.push(ConeFacet {
            normal: subspace::to_rational(&subspace::primitive(&normal)),
            rays: on,
        });
    }
    facets
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Extreme rays (primitive) of the pointed cone `{x : n·x ≥ 0 for all n}`.
fn extreme_rays_of_intersection(normals: &[Vector], dim: usize) -> Vec<Vector> {
    let mut rays: Vec<Vector> = Vec::new();
    if dim == 1 {
        for cand in [vec![crate::exactla::rat(1)], vec![crate::exactla::rat(-1)]] {
            if normals.iter().all(|n| !dot(n, &cand).is_negative()) {
                rays.push(cand);
            }
        }
        return rays;
    }
    for subset in combinations(normals.len(), dim - 1) {
        let chosen: Vec<Vector> = subset.iter().map(|&i| normals[i].clone()).collect();
        if rank_of(&chosen) != dim - 1 {
            continue;
        }
        let dir = nullspace(&chosen, dim).pop().expect("line");
        for cand in [dir.clone(), dir.iter().map(|x| -x.clone()).collect()] {
            if normals.iter().all(|n| !dot(n, &cand).is_negative()) {
                let prim = subspace::to_rational(&subspace::primitive(&cand));
                if !rays.contains(&prim) {
                    rays.push(prim);
                }
            }
        }
    }
    rays
}

/// All proper nonempty faces of one maximal cone as sorted local ray sets,
/// together with the cone itself.
pub(crate) fn cone_faces(facets: &[ConeFacet], num_rays: usize) -> BTreeSet<Vec<usize>> {
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert((0..num_rays).collect());
    let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.rays.clone()).collect();
    while let Some(face) = frontier.pop() {
        if face.is_empty() || !faces.insert(face.clone()) {
            continue;
        }
        for f in facets {
            let meet: Vec<usize> = face.iter().copied().filter(|r| f.rays.contains(r)).collect();
            if meet.len() < face.len() && !faces.contains(&meet) {
                frontier.push(meet);
            }
        }
    }
    faces
}

/// Checks the fan axioms: maximal cones are full dimensional and pointed,
/// listed rays are extreme, and any two maximal cones meet in a common face.
pub fn validate(fan: &Fan) -> Result<(), FanError> {
    let d = fan.dim;
    let mut all_facets = Vec::with_capacity(fan.maximal_cones.len());
    for (c, cone) in fan.maximal_cones.iter().enumerate() {
        let rays = fan.cone_rays(c);
        if rank_of(&rays) < d {
            return Err(FanError::NotFullDim(c));
        }
        let facets = cone_facets(&rays, d);
        let normals: Vec<Vector> = facets.iter().map(|f| f.normal.clone()).collect();
        let pointed = if d == 1 {
            // a full-dimensional cone in Q^1 is pointed iff its rays agree in sign
            rays.iter().all(|r| r[0].is_positive()) || rays.iter().all(|r| r[0].is_negative())
        } else {
            rank_of(&normals) == d
        };
        if !pointed {
            return Err(FanError::NotPointed(c));
        }
        for (local, &global) in cone.iter().enumerate() {
            let through: Vec<Vector> = facets
                .iter()
                .filter(|f| f.rays.contains(&local))
                .map(|f| f.normal.clone())
                .collect();
            let extreme = if d == 1 {
                cone.len() == 1
            } else {
                rank_of(&through) == d - 1
            };
            if !extreme {
                return Err(FanError::NotExtreme {
                    cone: c,
                    ray: global,
                });
            }
        }
        all_facets.push(facets);
    }
    let faces: Vec<BTreeSet<Vec<usize>>> = fan
        .maximal_cones
        .iter()
        .zip(&all_facets)
        .map(|(cone, facets)| {
            cone_faces(facets, cone.len())
                .into_iter()
                .map(|f| f.into_iter().map(|l| cone[l]).collect())
                .collect()
        })
        .collect();
    for i in 0..fan.maximal_cones.len() {
        for j in (i + 1)..fan.maximal_cones.len() {
            let shared: Vec<usize> = fan.maximal_cones[i]
                .iter()
                .copied()
                .filter(|r| fan.maximal_cones[j].contains(r))
                .collect();
            let mut normals: Vec<Vector> = all_facets[i].iter().map(|f| f.normal.clone()).collect();
            normals.extend(all_facets[j].iter().map(|f| f.normal.clone()));
            let mut meet = extreme_rays_of_intersection(&normals, d);
            meet.sort();
            let mut expected: Vec<Vector> = shared.iter().map(|&r| fan.rays[r].clone()).collect();
            expected.sort();
            let is_face = |k: usize| shared.is_empty() || faces[k].contains(&shared);
            if meet != expected || !is_face(i) || !is_face(j) {
                return Err(FanError::BadIntersection(i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(dim: usize, rays: &[Vec<i64>], cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        Fan::from_integer_rays(dim, rays, cones)
    }

    #[test]
    fn quadrant_fan_is_valid() {
        let f = fan(2, &[vec![1, 0], vec![0, 1], vec![-1, 0]], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.num_maximal_cones(), 2);
    }

    #[test]
    fn line_in_cone_is_not_pointed() {
        let err = fan(
            3,
            &[vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap_err();
        assert_eq!(err, FanError::NotPointed(0));
    }

    #[test]
    fn flat_cone_is_not_full_dimensional() {
        let err = fan(3, &[vec![1, 0, 0], vec![0, 1, 0]], vec![vec![0, 1]]).unwrap_err();
        assert_eq!(err, FanError::NotFullDim(0));
    }

    #[test]
    fn overlapping_slab_is_a_bad_intersection() {
        // second cone meets the first along a strict subcone of its face x2 = 0
        let err = fan(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![2, 0, 1],
                vec![1, 0, 2],
                vec![0, -1, 0],
            ],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        )
        .unwrap_err();
        assert_eq!(err, FanError::BadIntersection(0, 1));
    }

    #[test]
    fn overlapping_interiors_are_rejected() {
        let err = fan(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![0, 2]]).unwrap_err();
        assert_eq!(err, FanError::BadIntersection(0, 1));
    }

    #[test]
    fn interior_ray_is_not_extreme() {
        let err = fan(2, &[vec![1, 0], vec![1, 1], vec![0, 1]], vec![vec![0, 1, 2]]).unwrap_err();
        assert_eq!(err, FanError::NotExtreme { cone: 0, ray: 1 });
    }

    #[test]
    fn rays_are_made_primitive_and_deduplicated() {
        let f = Fan::new(
            2,
            vec![
                vec![crate::exactla::rat_frac(1, 2), crate::exactla::rat(0)],
                vec![crate::exactla::rat(0), crate::exactla::rat(3)],
            ],
            vec![vec![0, 1]],
        )
        .unwrap();
        assert_eq!(f.rays()[0], vec![crate::exactla::rat(0), crate::exactla::rat(1)]);
        assert_eq!(f.rays()[1], vec![crate::exactla::rat(1), crate::exactla::rat(0)]);
        let dup = fan(2, &[vec![1, 0], vec![2, 0], vec![0, 1]], vec![vec![0, 2]]);
        assert_eq!(dup.unwrap_err(), FanError::DuplicateRay(0, 1));
    }

    #[test]
    fn input_order_does_not_matter() {
        let a = fan(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let b = fan(2, &[vec![-1, -1], vec![0, 1], vec![1, 0]], vec![vec![2, 0], vec![1, 0], vec![2, 1]]).unwrap();
        assert_eq!(a, b);
    }
}
