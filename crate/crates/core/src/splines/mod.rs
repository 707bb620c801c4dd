//! Degreewise dimensions of the module of continuous piecewise polynomials
//! on a fan.
//!
//! A degree-`k` spline is a tuple of degree-`k` forms, one per maximal cone,
//! whose difference across each interior wall `τ` is divisible by the form
//! `l_τ` cutting out `span(τ)`. The Billera-Rose matrix encodes exactly that:
//! its columns are the cone forms followed by one degree-`(k-1)` quotient per
//! wall, and each wall contributes the rows of
//! `ε(a₁,τ) p_{a₁} + ε(a₂,τ) p_{a₂} − l_τ q_τ = 0`.
//! The quotient is determined by the cone forms, so the nullity of the block
//! is the spline dimension.

mod polynomial;

pub use polynomial::{interpolate_hilbert_polynomial, HilbertPolynomial};

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::subspace::{dot, nullspace, primitive, to_rational, Vector};
use crate::exactla::{binomial, monomial_basis, mult_by_linear_form, rat, RatMatrix};
use crate::fan::{face_lattice, Fan, FaceLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplineError {
    #[error("table {label} has not stabilised to a polynomial of degree < {dim} by degree {max_degree}")]
    NotStabilized {
        label: String,
        dim: usize,
        max_degree: usize,
    },
    #[error("table {label} up to degree {max_degree} is too short to see the whole numerator")]
    Inconclusive { label: String, max_degree: usize },
}

/// Dimensions of the graded pieces of a module in degrees `0..=K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDimensionTable {
    pub label: String,
    pub dims: Vec<usize>,
}

impl GradedDimensionTable {
    pub fn new(label: impl Into<String>, dims: Vec<usize>) -> Self {
        assert!(!dims.is_empty(), "a table covers at least degree zero");
        GradedDimensionTable {
            label: label.into(),
            dims,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }
}

/// Outcome of reading generator degrees off a Hilbert series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeDecompositionResult {
    /// Degrees of the generators of a free module with this Hilbert function.
    GeneratorDegrees(Vec<usize>),
    /// Index of a negative coefficient of the numerator. No free module has it.
    NotFreeEvidence(usize),
}

/// One interior wall with its two maximal cones, their incidence signs and
/// the primitive form vanishing on the wall.
#[derive(Debug, Clone)]
pub struct Wall {
    pub face: Option<usize>,
    pub cones: [usize; 2],
    pub signs: [i32; 2],
    pub form: Vector,
}

/// The data of the Billera-Rose matrix of a fan, independent of degree.
#[derive(Debug, Clone)]
pub struct SplineSystem {
    dim: usize,
    num_cones: usize,
    walls: Vec<Wall>,
}

impl SplineSystem {
    pub fn new(fan: &Fan) -> Self {
        Self::from_lattice(fan, &face_lattice(fan))
    }

    pub fn from_lattice(fan: &Fan, fl: &FaceLattice) -> Self {
        let d = fan.dim();
        let num_cones = fan.num_maximal_cones();
        if d == 1 {
            // the origin is the only wall; x₁ cuts it out
            let walls = if num_cones == 2 {
                let s = |c: usize| if fan.rays()[fan.maximal_cones()[c][0]][0].is_positive() { 1 } else { -1 };
                vec![Wall {
                    face: None,
                    cones: [0, 1],
                    signs: [s(0), s(1)],
                    form: vec![rat(1)],
                }]
            } else {
                Vec::new()
            };
            return SplineSystem {
                dim: 1,
                num_cones,
                walls,
            };
        }
        let cone_of_face: std::collections::HashMap<usize, usize> =
            (0..num_cones).map(|c| (fl.maximal_face(c), c)).collect();
        let walls = fl
            .interior_of_dim(d - 1)
            .into_iter()
            .map(|w| {
                let face = fl.face(w);
                let cones = [face.maximal_cones[0], face.maximal_cones[1]];
                let signs = cones.map(|c| fl.incidence_sign(fl.maximal_face(c), w));
                debug_assert!(cones.iter().all(|c| cone_of_face.contains_key(&fl.maximal_face(*c))));
                let normal = nullspace(&face.span_basis, d).pop().expect("wall is a hyperplane");
                let mut form = to_rational(&primitive(&normal));
                // positive on the first adjacent cone
                let off = fan.maximal_cones()[cones[0]]
                    .iter()
                    .map(|&r| dot(&form, &fan.rays()[r]))
                    .find(|v| !num_traits::Zero::is_zero(v))
                    .expect("cone leaves its wall");
                if off.is_negative() {
                    form.iter_mut().for_each(|x| *x = -x.clone());
                }
                Wall {
                    face: Some(w),
                    cones,
                    signs,
                    form,
                }
            })
            .collect();
        SplineSystem {
            dim: d,
            num_cones,
            walls,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// The degree-`k` block: rows indexed by (wall, degree-`k` monomial),
    /// columns by (cone, degree-`k` monomial) then (wall, degree-`(k-1)` monomial).
    pub fn block(&self, k: usize) -> RatMatrix {
        let n_k = monomial_basis(self.dim, k).len();
        let n_q = if k == 0 { 0 } else { monomial_basis(self.dim, k - 1).len() };
        let q_offset = self.num_cones * n_k;
        let mut m = RatMatrix::zeros(self.walls.len() * n_k, q_offset + self.walls.len() * n_q);
        for (w, wall) in self.walls.iter().enumerate() {
            let r0 = w * n_k;
            for (cone, s) in wall.cones.iter().zip(wall.signs) {
                for j in 0..n_k {
                    m.set(r0 + j, cone * n_k + j, rat(i64::from(s)));
                }
            }
            if k > 0 {
                let mult = mult_by_linear_form(&wall.form, k)
                    .expect("wall form is nonzero")
                    .scaled(&rat(-1));
                m.set_block(r0, q_offset + w * n_q, &mult);
            }
        }
        m
    }

    pub fn dimension(&self, k: usize) -> usize {
        self.block(k).nullity()
    }

    pub fn hilbert_function(&self, max_degree: usize, label: &str) -> GradedDimensionTable {
        let dims = (0..=max_degree).into_par_iter().map(|k| self.dimension(k)).collect();
        GradedDimensionTable::new(label, dims)
    }
}

/// The degree-`k` block of the Billera-Rose matrix of `fan`.
pub fn billera_rose_block(fan: &Fan, k: usize) -> RatMatrix {
    SplineSystem::new(fan).block(k)
}

/// Dimension of the space of degree-`k` continuous splines on `fan`.
pub fn spline_dimension(fan: &Fan, k: usize) -> usize {
    SplineSystem::new(fan).dimension(k)
}

/// Spline dimensions in degrees `0..=max_degree`, computed in parallel.
pub fn hilbert_function(fan: &Fan, max_degree: usize) -> GradedDimensionTable {
    SplineSystem::new(fan).hilbert_function(max_degree, "C0")
}

/// Coefficients of `(Σ dims[k] t^k)·(1−t)^d` up to `t^K`; all of them exact.
pub fn hilbert_numerator(table: &GradedDimensionTable, d: usize) -> Vec<i64> {
    let mut c: Vec<i64> = table.dims.iter().map(|&x| x as i64).collect();
    for _ in 0..d {
        for k in (1..c.len()).rev() {
            c[k] -= c[k - 1];
        }
    }
    c
}

/// Reads generator degrees of a free module of the given rank in `d`
/// variables off the table, or proves no such module matches it.
pub fn free_decomposition(
    table: &GradedDimensionTable,
    d: usize,
    rank: usize,
) -> Result<FreeDecompositionResult, SplineError> {
    let numerator = hilbert_numerator(table, d);
    if let Some(a) = numerator.iter().position(|&c| c < 0) {
        return Ok(FreeDecompositionResult::NotFreeEvidence(a));
    }
    let total: i64 = numerator.iter().sum();
    let last = numerator.iter().rposition(|&c| c != 0);
    // the numerator must end strictly inside the window
    if total != rank as i64 || last.is_none_or(|l| l >= table.max_degree()) {
        return Err(SplineError::Inconclusive {
            label: table.label.clone(),
            max_degree: table.max_degree(),
        });
    }
    let degrees = numerator
        .iter()
        .enumerate()
        .flat_map(|(a, &c)| std::iter::repeat_n(a, c as usize))
        .collect();
    Ok(FreeDecompositionResult::GeneratorDegrees(degrees))
}

/// Dimension in degree `k` of the free module `⊕ S(−a)` over `d` variables.
pub fn free_module_dimension(degrees: &[usize], d: usize, k: usize) -> usize {
    degrees
        .iter()
        .filter(|&&a| a <= k)
        .map(|&a| binomial(k - a + d - 1, d - 1))
        .sum()
}
