//! Exact rational linear algebra.
//!
//! Everything downstream (spline spaces, chain complexes, derivation modules)
//! reduces to ranks of large, very sparse rational matrices whose entries are
//! coefficients of products of linear forms. [`RatMatrix`] stores rows
//! sparsely; its [`rank`](RatMatrix::rank) clears denominators row by row and
//! runs fraction-free integer elimination, trying machine integers first and
//! restarting with big integers on overflow.
//!
//! [`monomial`] holds the graded monomial bases and the two structured maps the
//! rest of the crate is built from: multiplication by a linear form and
//! substitution along a linear map. [`subspace`] collects the small dense
//! helpers (row echelon forms, kernels, coordinates) used for fan geometry.

mod elimination;
mod matrix;
pub mod monomial;
pub mod subspace;

pub use matrix::RatMatrix;
pub use monomial::{monomial_basis, mult_by_linear_form, substitution_matrix, MonomialBasis};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `n` choose `k` for small arguments, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Binomial coefficient `C(k + shift, m)` with the convention that it vanishes
/// whenever `k + shift < m` or the top is negative.
pub fn shifted_binomial(k: i64, shift: i64, m: i64) -> i64 {
    let top = k + shift;
    if m < 0 || top < m || top < 0 {
        return 0;
    }
    binomial(top as usize, m as usize) as i64
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
