//! Central hyperplane arrangements: intersection lattice, Möbius function,
//! Poincaré polynomial and the graded pieces of the module of logarithmic
//! derivations.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::subspace::{canonical_basis, nullspace, primitive_normalized, rank_of, to_rational, Vector};
use crate::exactla::{monomial_basis, mult_by_linear_form, rat, RatMatrix};
use crate::fan::{face_lattice, Fan};
use crate::splines::{free_decomposition, FreeDecompositionResult, GradedDimensionTable, SplineError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("form {0} is zero")]
    ZeroForm(usize),
    #[error("form {index} has {got} coefficients, expected {expected}")]
    FormLength { index: usize, expected: usize, got: usize },
    #[error("forms {0} and {1} define the same hyperplane")]
    Proportional(usize, usize),
}

/// Distinct hyperplanes through the origin, each given by a primitive integer
/// form whose first nonzero coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    forms: Vec<Vec<BigInt>>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, forms: &[Vector]) -> Result<Self, ArrangementError> {
        let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(forms.len());
        for (index, f) in forms.iter().enumerate() {
            if f.len() != ambient_dim {
                return Err(ArrangementError::FormLength {
                    index,
                    expected: ambient_dim,
                    got: f.len(),
                });
            }
            if f.iter().all(Zero::is_zero) {
                return Err(ArrangementError::ZeroForm(index));
            }
            let p = primitive_normalized(f);
            if let Some(j) = out.iter().position(|g| *g == p) {
                return Err(ArrangementError::Proportional(j, index));
            }
            out.push(p);
        }
        Ok(Arrangement {
            ambient_dim,
            forms: out,
        })
    }

    pub fn from_integer_forms(ambient_dim: usize, forms: &[Vec<i64>]) -> Result<Self, ArrangementError> {
        let forms: Vec<Vector> = forms.iter().map(|f| f.iter().map(|&x| rat(x)).collect()).collect();
        Self::new(ambient_dim, &forms)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn forms(&self) -> &[Vec<BigInt>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    fn rational_form(&self, i: usize) -> Vector {
        to_rational(&self.forms[i])
    }

    fn rational_forms(&self, set: &[usize]) -> Vec<Vector> {
        set.iter().map(|&i| self.rational_form(i)).collect()
    }
}

/// An intersection of hyperplanes, identified by the set of all hyperplanes
/// containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeFlat {
    /// Indices of the hyperplanes containing the flat, increasing.
    pub hyperplanes: Vec<usize>,
    /// Codimension of the flat.
    pub rank: usize,
    pub mobius: i64,
}

/// Flats ordered by rank, then by hyperplane set; the first is the whole space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionLattice {
    pub flats: Vec<LatticeFlat>,
}

impl IntersectionLattice {
    pub fn rank(&self) -> usize {
        self.flats.iter().map(|f| f.rank).max().unwrap_or(0)
    }

    pub fn of_rank(&self, r: usize) -> impl Iterator<Item = &LatticeFlat> {
        self.flats.iter().filter(move |f| f.rank == r)
    }

    /// `s < t` in the order by reverse inclusion of subspaces.
    pub fn below(&self, s: usize, t: usize) -> bool {
        let (a, b) = (&self.flats[s].hyperplanes, &self.flats[t].hyperplanes);
        a.len() < b.len() && a.iter().all(|h| b.binary_search(h).is_ok())
    }
}

/// All flats of the arrangement with their ranks; Möbius values are left at
/// zero until [`mobius`] fills them.
pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let n = a.len();
    let closure = |set: &[usize]| -> (Vec<usize>, usize) {
        let rows = a.rational_forms(set);
        let r = rank_of(&rows);
        let closed = (0..n)
            .filter(|&h| {
                let mut t = rows.clone();
                t.push(a.rational_form(h));
                rank_of(&t) == r
            })
            .collect();
        (closed, r)
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut flats = vec![LatticeFlat {
        hyperplanes: Vec::new(),
        rank: 0,
        mobius: 0,
    }];
    seen.insert(Vec::new());
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    while !layer.is_empty() {
        let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
        for set in &layer {
            for h in (0..n).filter(|h| set.binary_search(h).is_err()) {
                let mut bigger = set.clone();
                bigger.push(h);
                let (closed, rank) = closure(&bigger);
                if seen.insert(closed.clone()) {
                    next.insert(closed.clone());
                    flats.push(LatticeFlat {
                        hyperplanes: closed,
                        rank,
                        mobius: 0,
                    });
                }
            }
        }
        layer = next.into_iter().collect();
    }
    flats.sort_by(|x, y| (x.rank, &x.hyperplanes).cmp(&(y.rank, &y.hyperplanes)));
    IntersectionLattice { flats }
}

/// Fills in `μ(0̂) = 1` and `μ(t) = −Σ_{s<t} μ(s)`.
pub fn mobius(mut l: IntersectionLattice) -> IntersectionLattice {
    for t in 0..l.flats.len() {
        let value = if t == 0 {
            1
        } else {
            -(0..t).filter(|&s| l.below(s, t)).map(|s| l.flats[s].mobius).sum::<i64>()
        };
        l.flats[t].mobius = value;
    }
    l
}

/// The lattice with Möbius values.
pub fn lattice_with_mobius(a: &Arrangement) -> IntersectionLattice {
    mobius(intersection_lattice(a))
}

/// Coefficients of `π(𝒜, t) = Σ μ(x)(−t)^{rank x}`, lowest degree first.
pub fn poincare_polynomial(a: &Arrangement) -> Vec<i64> {
    let l = lattice_with_mobius(a);
    let mut out = vec![0i64; l.rank() + 1];
    for f in &l.flats {
        let sign = if f.rank % 2 == 0 { 1 } else { -1 };
        out[f.rank] += sign * f.mobius;
    }
    out
}

/// Coefficients of `∏ (1 + d_i t)`.
pub fn exponent_polynomial(exponents: &[usize]) -> Vec<i64> {
    let mut out = vec![1i64];
    for &e in exponents {
        let mut next = vec![0i64; out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * e as i64;
        }
        out = next;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Whether `π(𝒜, t) = ∏ (1 + d_i t)`.
pub fn terao_check(a: &Arrangement, exponents: &[usize]) -> bool {
    poincare_polynomial(a) == exponent_polynomial(exponents)
}

/// The degree-`k` block whose kernel is `D(𝒜)_k`: unknowns are the `d`
/// coefficient forms of `θ` and one degree-`(k−1)` multiplier per hyperplane;
/// hyperplane `i` contributes the rows of `θ(l_i) − l_i q_i = 0`.
pub fn derivation_block(a: &Arrangement, k: usize) -> RatMatrix {
    let d = a.ambient_dim;
    let n_k = monomial_basis(d, k).len();
    let n_q = if k == 0 { 0 } else { monomial_basis(d, k - 1).len() };
    let q_offset = d * n_k;
    let mut m = RatMatrix::zeros(a.len() * n_k, q_offset + a.len() * n_q);
    for (i, form) in a.forms.iter().enumerate() {
        let r0 = i * n_k;
        for (j, c) in form.iter().enumerate() {
            if !c.is_zero() {
                let c = crate::exactla::Rational::from_integer(c.clone());
                for mono in 0..n_k {
                    m.set(r0 + mono, j * n_k + mono, c.clone());
                }
            }
        }
        if k > 0 {
            let mult = mult_by_linear_form(&a.rational_form(i), k)
                .expect("forms are nonzero")
                .scaled(&rat(-1));
            m.set_block(r0, q_offset + i * n_q, &mult);
        }
    }
    m
}

/// `dim D(𝒜)_k`.
pub fn derivation_dimension(a: &Arrangement, k: usize) -> usize {
    derivation_block(a, k).nullity()
}

/// `dim D(𝒜)_k` for `k = 0..=max_degree`.
pub fn derivation_table(a: &Arrangement, max_degree: usize) -> GradedDimensionTable {
    let dims = (0..=max_degree)
        .into_par_iter()
        .map(|k| derivation_dimension(a, k))
        .collect();
    GradedDimensionTable::new("D", dims)
}

/// Generator degrees of `D(𝒜)` read off its Hilbert function, if free.
pub fn exponents_from_derivations(
    a: &Arrangement,
    max_degree: usize,
) -> Result<FreeDecompositionResult, SplineError> {
    free_decomposition(&derivation_table(a, max_degree), a.ambient_dim, a.ambient_dim)
}

/// Forms `x_j − x_i` for `i < j ≤ n+1` in `n + 1` variables, or, when
/// `essential`, the same after setting `x_{n+1} = 0`: `x_1, …, x_n` followed by
/// `x_j − x_i` for `i < j ≤ n`. Differences are listed by `j − i`, then `i`.
pub fn braid_arrangement(n: usize, essential: bool) -> Arrangement {
    assert!(n >= 1, "the braid arrangement needs n >= 1");
    let vars = if essential { n } else { n + 1 };
    let mut forms: Vec<Vec<i64>> = Vec::new();
    if essential {
        forms.extend((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()));
    }
    for gap in 1..vars {
        for i in 0..vars - gap {
            let mut f = vec![0; vars];
            f[i] = -1;
            f[i + gap] = 1;
            forms.push(f);
        }
    }
    Arrangement::from_integer_forms(vars, &forms).expect("braid forms are distinct")
}

/// The distinct hyperplanes spanned by interior walls of `fan`, sorted by form.
pub fn defining_arrangement(fan: &Fan) -> Arrangement {
    let d = fan.dim();
    let fl = face_lattice(fan);
    let mut forms: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    if d == 1 && fan.num_maximal_cones() == 2 {
        // the two rays meet at the origin, cut out by x₁
        forms.insert(vec![BigInt::from(1)]);
    }
    if d >= 2 {
        for w in fl.interior_of_dim(d - 1) {
            let normal = nullspace(&fl.face(w).span_basis, d).pop().expect("wall is a hyperplane");
            forms.insert(primitive_normalized(&normal));
        }
    }
    let forms: Vec<Vector> = forms.iter().map(|f| to_rational(f)).collect();
    Arrangement::new(d, &forms).expect("wall forms are distinct")
}

/// Rank-`r` flats labelled by one-based hyperplane indices, as in `"124"`.
pub fn flat_labels(l: &IntersectionLattice, r: usize) -> Vec<(String, i64)> {
    l.of_rank(r)
        .map(|f| {
            let label = f.hyperplanes.iter().map(|h| (h + 1).to_string()).collect::<Vec<_>>().join("");
            (label, f.mobius)
        })
        .collect()
}

/// Number of flats in each rank.
pub fn flat_counts(l: &IntersectionLattice) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for f in &l.flats {
        *counts.entry(f.rank).or_default() += 1;
    }
    (0..=l.rank()).map(|r| counts.get(&r).copied().unwrap_or(0)).collect()
}

/// Canonical basis of the subspace cut out by a flat.
pub fn flat_subspace(a: &Arrangement, f: &LatticeFlat) -> Vec<Vector> {
    canonical_basis(&nullspace(&a.rational_forms(&f.hyperplanes), a.ambient_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{p1_fan, p2_fan};
    use crate::exactla::binomial;
    use crate::exactla::subspace::unit;

    fn forms(a: &Arrangement) -> Vec<Vec<i64>> {
        a.forms()
            .iter()
            .map(|f| f.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn braid_forms() {
        // x1, x2, x3, x2 − x1, x3 − x2, x3 − x1 with the first coefficient made positive
        assert_eq!(
            forms(&braid_arrangement(3, true)),
            vec![
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, -1, 0],
                vec![0, 1, -1],
                vec![1, 0, -1]
            ]
        );
        assert_eq!(braid_arrangement(3, false).len(), 6);
        assert_eq!(braid_arrangement(3, false).ambient_dim(), 4);
        assert_eq!(forms(&braid_arrangement(1, true)), vec![vec![1]]);
    }

    #[test]
    fn braid_a3_rank_two_flats() {
        let l = lattice_with_mobius(&braid_arrangement(3, true));
        let mut labels = flat_labels(&l, 2);
        labels.sort();
        let mut expected: Vec<(String, i64)> = [("124", 2), ("34", 1), ("136", 2), ("26", 1), ("456", 2), ("15", 1), ("235", 2)]
            .iter()
            .map(|(s, m)| (s.to_string(), *m))
            .collect();
        expected.sort();
        assert_eq!(labels, expected);
        assert_eq!(flat_counts(&l), vec![1, 6, 7, 1]);
    }

    #[test]
    fn mobius_recursion_and_simple_values() {
        let l = lattice_with_mobius(&braid_arrangement(3, true));
        assert_eq!(l.flats[0].mobius, 1);
        assert!(l.of_rank(1).all(|f| f.mobius == -1));
        for t in 1..l.flats.len() {
            let below: i64 = (0..l.flats.len()).filter(|&s| l.below(s, t)).map(|s| l.flats[s].mobius).sum();
            assert_eq!(below + l.flats[t].mobius, 0);
        }
    }

    #[test]
    fn poincare_polynomials() {
        assert_eq!(poincare_polynomial(&braid_arrangement(3, true)), vec![1, 6, 11, 6]);
        assert_eq!(poincare_polynomial(&braid_arrangement(3, false)), vec![1, 6, 11, 6]);
        assert_eq!(poincare_polynomial(&braid_arrangement(1, true)), vec![1, 1]);
        let generic = Arrangement::from_integer_forms(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(intersection_lattice(&generic).flats.len(), 4);
        assert_eq!(poincare_polynomial(&generic), vec![1, 2, 1]);
    }

    #[test]
    fn terao_factorisation() {
        assert!(terao_check(&braid_arrangement(3, true), &[1, 2, 3]));
        assert!(terao_check(&braid_arrangement(4, false), &[0, 1, 2, 3, 4]));
        let single = Arrangement::from_integer_forms(3, &[vec![1, 0, 0]]).unwrap();
        assert!(terao_check(&single, &[0, 0, 1]));
        assert!(!terao_check(&single, &[2]));
    }

    #[test]
    fn bad_forms_are_rejected() {
        assert_eq!(
            Arrangement::from_integer_forms(2, &[vec![1, 2], vec![-2, -4]]).unwrap_err(),
            ArrangementError::Proportional(0, 1)
        );
        assert_eq!(Arrangement::from_integer_forms(2, &[vec![0, 0]]).unwrap_err(), ArrangementError::ZeroForm(0));
    }

    #[test]
    fn derivations_of_small_arrangements() {
        let a = braid_arrangement(3, false);
        assert_eq!(derivation_dimension(&a, 0), 1);
        assert_eq!(derivation_dimension(&a, 1), 5);
        let empty = Arrangement::new(3, &[]).unwrap();
        for k in 0..4 {
            assert_eq!(derivation_dimension(&empty, k), 3 * binomial(k + 2, 2));
        }
    }

    // θ = B·x + c is logarithmic iff a_i·c = 0 and a_i B = λ_i a_i for each form
    fn brute_force_dimension(a: &Arrangement, k: usize) -> usize {
        let d = a.ambient_dim();
        let m = a.len();
        let rows: Vec<Vector> = match k {
            0 => a.forms().iter().map(|f| to_rational(f)).collect(),
            1 => {
                let mut rows = Vec::new();
                for (i, f) in a.forms().iter().enumerate() {
                    let f = to_rational(f);
                    for l in 0..d {
                        // Σ_j f_j B[j][l] − λ_i f_l = 0, unknowns B (row major) then λ
                        let mut row = vec![rat(0); d * d + m];
                        for j in 0..d {
                            row[j * d + l] = f[j].clone();
                        }
                        row[d * d + i] = -f[l].clone();
                        rows.push(row);
                    }
                }
                rows
            }
            _ => unreachable!(),
        };
        let unknowns = if k == 0 { d } else { d * d + m };
        let kernel = nullspace(&rows, unknowns);
        if k == 0 {
            return kernel.len();
        }
        // λ is determined by B, so project the kernel onto the B coordinates
        let projected: Vec<Vector> = kernel.iter().map(|v| v[..d * d].to_vec()).collect();
        rank_of(&projected)
    }

    #[test]
    fn low_degrees_agree_with_brute_force() {
        let samples = vec![
            braid_arrangement(2, true),
            braid_arrangement(3, true),
            braid_arrangement(3, false),
            defining_arrangement(&p2_fan(3)),
            Arrangement::from_integer_forms(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap(),
            Arrangement::new(3, &[unit(3, 0)]).unwrap(),
        ];
        for a in &samples {
            for k in 0..=1 {
                assert_eq!(derivation_dimension(a, k), brute_force_dimension(a, k), "{a:?} k={k}");
            }
        }
    }

    #[test]
    fn braid_exponents() {
        for n in 2..=4 {
            let essential: Vec<usize> = (1..=n).collect();
            let full: Vec<usize> = (0..=n).collect();
            assert_eq!(
                exponents_from_derivations(&braid_arrangement(n, true), n + 3),
                Ok(FreeDecompositionResult::GeneratorDegrees(essential))
            );
            assert_eq!(
                exponents_from_derivations(&braid_arrangement(n, false), n + 3),
                Ok(FreeDecompositionResult::GeneratorDegrees(full))
            );
        }
    }

    #[test]
    fn defining_arrangements_of_the_named_fans() {
        let a = defining_arrangement(&p2_fan(3));
        assert_eq!(a.len(), 6);
        assert_eq!(poincare_polynomial(&a), vec![1, 6, 11, 6]);
        let b = defining_arrangement(&p1_fan(2));
        assert_eq!(b.len(), 3);
        let single = Fan::from_integer_rays(2, &[vec![1, 0], vec![0, 1]], vec![vec![0, 1]]).unwrap();
        assert!(defining_arrangement(&single).is_empty());
    }

    #[test]
    fn adding_a_hyperplane_raises_the_linear_coefficient() {
        let mut forms = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let mut last = poincare_polynomial(&Arrangement::from_integer_forms(3, &forms).unwrap());
        for extra in [vec![0, 0, 1], vec![1, 1, 0], vec![1, 1, 1], vec![1, -1, 2]] {
            forms.push(extra);
            let p = poincare_polynomial(&Arrangement::from_integer_forms(3, &forms).unwrap());
            assert_eq!(p[1], last[1] + 1);
            last = p;
        }
    }
}
