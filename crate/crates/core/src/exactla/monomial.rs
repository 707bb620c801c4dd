//! Graded pieces of polynomial rings and the linear maps between them.
//!
//! Monomials of a fixed degree are ordered lexicographically with `x1 > x2 >
//! ... > xn`, which within one degree is the graded-lex order; `x1^k` comes
//! first and `xn^k` last. Every matrix in the crate uses this order.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use super::{binomial, RatMatrix, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonomialError {
    #[error("linear form is identically zero")]
    ZeroForm,
    #[error("linear form has {got} coefficients, expected {expected}")]
    FormLength { expected: usize, got: usize },
}

#[derive(Clone, Debug)]
pub struct MonomialBasis {
    num_vars: usize,
    degree: usize,
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }
}

/// All monomials of total degree `degree` in `num_vars` variables.
pub fn monomial_basis(num_vars: usize, degree: usize) -> MonomialBasis {
    assert!(num_vars >= 1, "need at least one variable");
    let mut monomials = Vec::with_capacity(binomial(degree + num_vars - 1, num_vars - 1));
    let mut current = vec![0u32; num_vars];
    fill(&mut monomials, &mut current, 0, degree as u32);
    let index = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    MonomialBasis {
        num_vars,
        degree,
        monomials,
        index,
    }
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// For each monomial of `lower` and each variable, the index of the product in `upper`.
fn shift_table(lower: &MonomialBasis, upper: &MonomialBasis) -> Vec<Vec<usize>> {
    lower
        .monomials
        .iter()
        .map(|m| {
            (0..lower.num_vars)
                .map(|v| {
                    let mut up = m.clone();
                    up[v] += 1;
                    upper.index_of(&up).expect("degree shift stays in basis")
                })
                .collect()
        })
        .collect()
}

/// Matrix of `p ↦ l·p` from forms of degree `k - 1` to forms of degree `k`.
pub fn mult_by_linear_form(l: &[Rational], k: usize) -> Result<RatMatrix, MonomialError> {
    assert!(k >= 1, "multiplication lands in degree at least one");
    if l.iter().all(Zero::is_zero) {
        return Err(MonomialError::ZeroForm);
    }
    let n = l.len();
    let lower = monomial_basis(n, k - 1);
    let upper = monomial_basis(n, k);
    let shifts = shift_table(&lower, &upper);
    let mut m = RatMatrix::zeros(upper.len(), lower.len());
    for (col, targets) in shifts.iter().enumerate() {
        for (v, coeff) in l.iter().enumerate() {
            if !coeff.is_zero() {
                m.set(targets[v], col, coeff.clone());
            }
        }
    }
    Ok(m)
}

/// Matrix of `p(x) ↦ p(A·y)` on degree-`k` forms, where `a` is the `d × e`
/// matrix of a linear map `Q^e → Q^d` given by its rows.
pub fn substitution_matrix(a: &[Vec<Rational>], k: usize) -> RatMatrix {
    substitution_matrices(a, k).pop().expect("degree list is nonempty")
}

/// The substitution matrices of [`substitution_matrix`] for every degree
/// `0..=max_degree`, sharing the work between degrees.
pub fn substitution_matrices(a: &[Vec<Rational>], max_degree: usize) -> Vec<RatMatrix> {
    let d = a.len();
    let e = a.first().map_or(0, Vec::len);
    assert!(d >= 1 && e >= 1, "substitution needs nonempty source and target");
    let mut out = Vec::with_capacity(max_degree + 1);

    let mut src = monomial_basis(d, 0);
    let mut dst = monomial_basis(e, 0);
    // images[i] = dense coefficients of the image of source monomial i
    let mut images: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(1.into())]];
    out.push(dense_columns_to_matrix(&images, dst.len()));

    for t in 1..=max_degree {
        let next_src = monomial_basis(d, t);
        let next_dst = monomial_basis(e, t);
        let dst_shift = shift_table(&dst, &next_dst);
        let mut next_images = Vec::with_capacity(next_src.len());
        for mono in &next_src.monomials {
            let j = mono.iter().position(|&x| x > 0).expect("positive degree");
            let mut prev = mono.clone();
            prev[j] -= 1;
            let prev_img = &images[src.index_of(&prev).expect("previous degree")];
            let mut img = vec![Rational::zero(); next_dst.len()];
            for (i, c) in prev_img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (l, alj) in a[j].iter().enumerate() {
                    if !alj.is_zero() {
                        img[dst_shift[i][l]] += c * alj;
                    }
                }
            }
            next_images.push(img);
        }
        out.push(dense_columns_to_matrix(&next_images, next_dst.len()));
        src = next_src;
        dst = next_dst;
        images = next_images;
    }
    out
}

fn dense_columns_to_matrix(columns: &[Vec<Rational>], rows: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                m.set(i, j, v.clone());
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use proptest::prelude::*;

    fn form(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn basis_sizes_and_order() {
        let b = monomial_basis(3, 2);
        assert_eq!(b.len(), 6);
        assert_eq!(b.monomials()[0], vec![2, 0, 0]);
        assert_eq!(b.monomials()[5], vec![0, 0, 2]);
        assert_eq!(monomial_basis(1, 5).monomials(), &[vec![5]]);
        assert_eq!(monomial_basis(4, 0).monomials(), &[vec![0, 0, 0, 0]]);
    }

    #[test]
    fn multiplying_constants_by_x1() {
        let m = mult_by_linear_form(&form(&[1, 0]), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(m.get(0, 0), rat(1));
        assert_eq!(m.get(1, 0), rat(0));
    }

    #[test]
    fn image_of_x1_under_x1_plus_x2() {
        let m = mult_by_linear_form(&form(&[1, 1]), 2).unwrap();
        // columns: x1, x2; rows: x1^2, x1x2, x2^2
        assert_eq!(m.get(0, 0), rat(1));
        assert_eq!(m.get(1, 0), rat(1));
        assert_eq!(m.get(2, 0), rat(0));
    }

    #[test]
    fn zero_form_is_rejected() {
        assert_eq!(
            mult_by_linear_form(&form(&[0, 0, 0]), 2).unwrap_err(),
            MonomialError::ZeroForm
        );
    }

    #[test]
    fn identity_substitution_is_identity() {
        let id = vec![form(&[1, 0, 0]), form(&[0, 1, 0]), form(&[0, 0, 1])];
        assert_eq!(substitution_matrix(&id, 3), RatMatrix::identity(10));
    }

    #[test]
    fn axis_inclusion_kills_second_variable() {
        // x1 -> y, x2 -> 0
        let a = vec![form(&[1]), form(&[0])];
        let m = substitution_matrix(&a, 1);
        assert_eq!(m.to_dense(), vec![vec![rat(1), rat(0)]]);
    }

    #[test]
    fn multiplication_is_injective() {
        for k in 1..5 {
            let m = mult_by_linear_form(&form(&[2, -1, 3]), k).unwrap();
            assert_eq!(m.rank(), m.cols());
        }
    }

    #[test]
    fn composed_multiplications_have_expected_rank() {
        // l^n : degree 0 -> degree n is injective; rank C(n-1+d-1, d-1) per step
        let l = form(&[1, -1, 2]);
        let mut acc = RatMatrix::identity(1);
        for k in 1..=4 {
            acc = mult_by_linear_form(&l, k).unwrap().mul(&acc);
            assert_eq!(acc.rank(), 1);
            let step = mult_by_linear_form(&l, k).unwrap();
            assert_eq!(step.rank(), binomial(k - 1 + 2, 2));
        }
    }

    fn small_map(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..3, cols), rows)
            .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(rat).collect()).collect())
    }

    fn mat_product(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| row.iter().zip(b).map(|(x, br)| x * &br[j]).sum())
                    .collect()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn substitution_is_functorial(a in small_map(3, 2), b in small_map(2, 2), k in 0usize..4) {
            let ab = mat_product(&a, &b);
            let lhs = substitution_matrix(&ab, k);
            let rhs = substitution_matrix(&b, k).mul(&substitution_matrix(&a, k));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
