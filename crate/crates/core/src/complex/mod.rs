//! The cellular chain complex of quotient rings over the interior faces of a
//! fan, and its homology in each degree.
//!
//! Position `i` holds one copy of `S/I_τ` per interior `i`-face `τ`. In the
//! face's span coordinates `S/I_τ` is a polynomial ring in `i` variables, so
//! its degree-`k` piece has dimension `C(k+i−1, i−1)`. The differential from an
//! `i`-face `α` to a facet `β` is the incidence sign times restriction, which
//! in coordinates is substitution along the inclusion `span(β) ↪ span(α)`.
//! The complex stops at position one; its top homology is the spline module.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::monomial::substitution_matrices;
use crate::exactla::subspace::{coordinates, Vector};
use crate::exactla::{binomial, rat, RatMatrix};
use crate::fan::{face_lattice, Fan, FaceLattice};
use crate::splines::{GradedDimensionTable, SplineSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the chain complex needs a fan of dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
}

/// One nonzero entry block of a differential.
#[derive(Debug, Clone)]
struct Incidence {
    /// Index of the source face within its position.
    source: usize,
    /// Index of the target face within its position.
    target: usize,
    sign: i32,
    /// Rows of the `i × (i−1)` matrix expressing the target's span
    /// coordinates in the source's.
    restriction: Vec<Vector>,
}

/// The complex in a form ready for degreewise evaluation.
#[derive(Debug, Clone)]
pub struct ChainComplexSpec {
    dim: usize,
    /// `positions[i - 1]` lists the interior `i`-faces by face id.
    positions: Vec<Vec<usize>>,
    /// `incidences[i - 2]` lists the blocks of `∂_i`.
    incidences: Vec<Vec<Incidence>>,
}

/// Dimensions of the graded pieces of `H_i`, for `i = 1..=d` and `k = 0..=K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    /// `dims[i - 1][k]` is the dimension of `H_i` in degree `k`.
    pub dims: Vec<Vec<usize>>,
}

impl HomologyTable {
    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn max_degree(&self) -> usize {
        self.dims[0].len() - 1
    }

    /// Dimension of `H_i` in degree `k`.
    pub fn get(&self, i: usize, k: usize) -> usize {
        self.dims[i - 1][k]
    }

    pub fn table(&self, i: usize) -> GradedDimensionTable {
        GradedDimensionTable::new(format!("H{i}"), self.dims[i - 1].clone())
    }
}

/// Builds the complex of interior faces of `fan`.
pub fn build_complex(fan: &Fan) -> Result<ChainComplexSpec, ComplexError> {
    ChainComplexSpec::from_lattice(&face_lattice(fan))
}

impl ChainComplexSpec {
    pub fn from_lattice(fl: &FaceLattice) -> Result<Self, ComplexError> {
        let d = fl.dim();
        if d < 2 {
            return Err(ComplexError::DimensionTooSmall(d));
        }
        let positions: Vec<Vec<usize>> = (1..=d).map(|i| fl.interior_of_dim(i)).collect();
        let mut incidences = Vec::with_capacity(d - 1);
        for i in 2..=d {
            let target_index: HashMap<usize, usize> =
                positions[i - 2].iter().enumerate().map(|(n, &f)| (f, n)).collect();
            let mut blocks = Vec::new();
            for (source, &alpha) in positions[i - 1].iter().enumerate() {
                let a = fl.face(alpha);
                for &beta in fl.facets_of(alpha) {
                    let Some(&target) = target_index.get(&beta) else {
                        continue;
                    };
                    let b = fl.face(beta);
                    let cols: Vec<Vector> = b
                        .orientation
                        .iter()
                        .map(|v| coordinates(&a.orientation, v).expect("facet lies in the span"))
                        .collect();
                    let restriction = (0..i)
                        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                        .collect();
                    blocks.push(Incidence {
                        source,
                        target,
                        sign: fl.incidence_sign(alpha, beta),
                        restriction,
                    });
                }
            }
            incidences.push(blocks);
        }
        Ok(ChainComplexSpec {
            dim: d,
            positions,
            incidences,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Face ids of the interior `i`-faces, in column order of `∂_i`.
    pub fn position(&self, i: usize) -> &[usize] {
        &self.positions[i - 1]
    }

    /// Number of interior `i`-faces, `f⁰_i`.
    pub fn rank_at(&self, i: usize) -> usize {
        self.positions[i - 1].len()
    }

    /// Copy of the complex with one incidence sign of `∂_i` negated. Used to
    /// confirm that the degreewise checks notice a broken differential.
    pub fn with_flipped_sign(&self, i: usize, entry: usize) -> Self {
        let mut out = self.clone();
        out.incidences[i - 2][entry].sign *= -1;
        out
    }

    /// Degree-`k` matrix of `∂_i` for `2 ≤ i ≤ d`.
    pub fn differential_block(&self, i: usize, k: usize) -> RatMatrix {
        self.differential_blocks(i, k).pop().expect("degree list is nonempty")
    }

    /// The matrices of `∂_i` in every degree `0..=max_degree`.
    pub fn differential_blocks(&self, i: usize, max_degree: usize) -> Vec<RatMatrix> {
        assert!((2..=self.dim).contains(&i), "differentials run from position 2 to d");
        let mut out: Vec<RatMatrix> = (0..=max_degree)
            .map(|k| {
                RatMatrix::zeros(
                    self.rank_at(i - 1) * binomial(k + i - 2, i - 2),
                    self.rank_at(i) * binomial(k + i - 1, i - 1),
                )
            })
            .collect();
        for inc in &self.incidences[i - 2] {
            let subs = substitution_matrices(&inc.restriction, max_degree);
            for (k, (m, sub)) in out.iter_mut().zip(subs).enumerate() {
                let block = sub.scaled(&rat(i64::from(inc.sign)));
                m.set_block(
                    inc.target * binomial(k + i - 2, i - 2),
                    inc.source * binomial(k + i - 1, i - 1),
                    &block,
                );
            }
        }
        out
    }

    /// Degreewise homology dimensions up to `max_degree`.
    pub fn homology(&self, max_degree: usize) -> HomologyTable {
        let d = self.dim;
        // ranks[i][k] = rank of ∂_i in degree k, zero for i = 1 and i = d + 1
        let mut ranks = vec![vec![0usize; max_degree + 1]; d + 2];
        let computed: Vec<(usize, Vec<usize>)> = (2..=d)
            .into_par_iter()
            .map(|i| {
                let blocks = self.differential_blocks(i, max_degree);
                (i, blocks.par_iter().map(RatMatrix::rank).collect())
            })
            .collect();
        for (i, r) in computed {
            ranks[i] = r;
        }
        let dims = (1..=d)
            .map(|i| {
                (0..=max_degree)
                    .map(|k| {
                        let chains = self.rank_at(i) * binomial(k + i - 1, i - 1);
                        // saturates only if a corrupted complex fails ∂² = 0
                        chains.saturating_sub(ranks[i][k] + ranks[i + 1][k])
                    })
                    .collect()
            })
            .collect();
        HomologyTable { dims }
    }

    /// Whether `∂_{i-1} ∘ ∂_i = 0` in every degree up to `max_degree`.
    pub fn squares_to_zero(&self, max_degree: usize) -> bool {
        (3..=self.dim).all(|i| {
            let lower = self.differential_blocks(i - 1, max_degree);
            let upper = self.differential_blocks(i, max_degree);
            lower.iter().zip(&upper).all(|(l, u)| l.mul(u).is_zero())
        })
    }

    /// The alternating sum predicting `dim C⁰_k` from face counts and the
    /// homology below the top.
    pub fn euler_prediction(&self, homology: &HomologyTable, k: usize) -> i64 {
        let d = self.dim;
        let sign = |e: usize| if e.is_multiple_of(2) { 1i64 } else { -1 };
        let chains: i64 = (1..=d)
            .map(|i| sign(d - i) * (self.rank_at(i) * binomial(k + i - 1, i - 1)) as i64)
            .sum();
        let lower: i64 = (1..d).map(|i| sign(d - 1 - i) * homology.get(i, k) as i64).sum();
        chains + lower
    }
}

/// Homology dimensions of the complex of `fan` in degrees `0..=max_degree`.
pub fn homology_dimensions(fan: &Fan, max_degree: usize) -> Result<HomologyTable, ComplexError> {
    Ok(build_complex(fan)?.homology(max_degree))
}

/// Checks `dim C⁰_k = Σ (−1)^{d−i} f⁰_i C(k+i−1, i−1) + Σ_{i<d} (−1)^{d−1−i} dim H_i`
/// for every `k ≤ max_degree`, with the left side from the Billera-Rose matrix.
pub fn euler_identity_check(fan: &Fan, max_degree: usize) -> Result<bool, ComplexError> {
    let fl = face_lattice(fan);
    let complex = ChainComplexSpec::from_lattice(&fl)?;
    let splines = SplineSystem::from_lattice(fan, &fl).hilbert_function(max_degree, "C0");
    Ok(euler_identity_holds(&complex, &splines, max_degree))
}

/// The Euler identity for a given complex against a given spline table.
pub fn euler_identity_holds(complex: &ChainComplexSpec, splines: &GradedDimensionTable, max_degree: usize) -> bool {
    let homology = complex.homology(max_degree);
    (0..=max_degree).all(|k| complex.euler_prediction(&homology, k) == splines.dims[k] as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{nonfree_annulus_fan, p1_fan, p2_fan, perturbed_p2a3};
    use crate::splines::hilbert_function;

    #[test]
    fn positions_follow_the_interior_f_vector() {
        let c = build_complex(&p2_fan(3)).unwrap();
        assert_eq!((c.rank_at(1), c.rank_at(2), c.rank_at(3)), (3, 6, 4));
        let annulus = build_complex(&nonfree_annulus_fan()).unwrap();
        assert_eq!(annulus.rank_at(1), 0);
    }

    #[test]
    fn one_dimensional_fans_are_rejected() {
        assert_eq!(build_complex(&p1_fan(1)).unwrap_err(), ComplexError::DimensionTooSmall(1));
    }

    #[test]
    fn top_rows_are_plus_minus_one_pairs() {
        let c = build_complex(&p2_fan(3)).unwrap();
        let m0 = c.differential_block(3, 0).to_dense();
        for row in m0 {
            let mut nz: Vec<i64> = row
                .iter()
                .filter(|x| !num_traits::Zero::is_zero(*x))
                .map(|x| x.to_integer().try_into().unwrap())
                .collect();
            nz.sort_unstable();
            assert_eq!(nz, vec![-1, 1]);
        }
        // in higher degrees the two cone blocks of a wall are opposite restrictions
        for k in 1..4 {
            let n = binomial(k + 2, 2);
            let m = c.differential_block(3, k).to_dense();
            for row in &m {
                for j in 0..n {
                    let total: crate::exactla::Rational = (0..4).map(|cone| row[cone * n + j].clone()).sum();
                    assert_eq!(total, rat(0));
                }
            }
        }
    }

    #[test]
    fn differentials_compose_to_zero() {
        for fan in [p2_fan(3), p2_fan(4), nonfree_annulus_fan(), perturbed_p2a3(), p1_fan(3)] {
            assert!(build_complex(&fan).unwrap().squares_to_zero(4));
        }
    }

    #[test]
    fn top_homology_is_the_spline_module() {
        for fan in [p2_fan(3), perturbed_p2a3(), nonfree_annulus_fan(), p1_fan(2)] {
            let h = homology_dimensions(&fan, 6).unwrap();
            assert_eq!(h.dims[fan.dim() - 1], hilbert_function(&fan, 6).dims);
        }
    }

    #[test]
    fn single_cone_complex() {
        let fan = Fan::from_integer_rays(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![0, 1, 2]]).unwrap();
        let h = homology_dimensions(&fan, 4).unwrap();
        for k in 0..=4 {
            assert_eq!(h.get(3, k), binomial(k + 2, 2));
            assert_eq!((h.get(1, k), h.get(2, k)), (0, 0));
        }
        assert!(euler_identity_check(&fan, 4).unwrap());
    }

    #[test]
    fn euler_identity_on_small_fans() {
        for fan in [p2_fan(3), perturbed_p2a3(), nonfree_annulus_fan(), p1_fan(2), p1_fan(3)] {
            assert!(euler_identity_check(&fan, 6).unwrap());
        }
    }

    #[test]
    fn annulus_has_second_homology_in_degree_zero() {
        let h = homology_dimensions(&nonfree_annulus_fan(), 6).unwrap();
        assert_eq!(h.dims[1], vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn corrupted_differential_breaks_the_identity() {
        let fan = p2_fan(3);
        let fl = face_lattice(&fan);
        let complex = ChainComplexSpec::from_lattice(&fl).unwrap();
        let splines = SplineSystem::from_lattice(&fan, &fl).hilbert_function(4, "C0");
        assert!(euler_identity_holds(&complex, &splines, 4));
        for entry in 0..complex.incidences[1].len() {
            let broken = complex.with_flipped_sign(3, entry);
            assert!(!euler_identity_holds(&broken, &splines, 4), "entry {entry}");
        }
    }
}
