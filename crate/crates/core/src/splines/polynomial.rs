use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{GradedDimensionTable, SplineError};
use crate::exactla::{rat, Rational};

/// A polynomial in `k` with rational coefficients, lowest degree first and no
/// trailing zeros, together with the degree from which a table agrees with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub coefficients: Vec<Rational>,
    pub stable_from: usize,
}

impl HilbertPolynomial {
    pub fn new(mut coefficients: Vec<Rational>, stable_from: usize) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        HilbertPolynomial {
            coefficients,
            stable_from,
        }
    }

    pub fn from_integers(coefficients: &[i64], stable_from: usize) -> Self {
        Self::new(coefficients.iter().map(|&c| rat(c)).collect(), stable_from)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coefficients.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, k: i64) -> Rational {
        let x = rat(k);
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    /// Same polynomial, ignoring `stable_from`.
    pub fn same_polynomial(&self, other: &HilbertPolynomial) -> bool {
        self.coefficients == other.coefficients
    }

    fn mul_linear(&self, shift: &Rational) -> Vec<Rational> {
        // (k - shift)·p
        let mut out = vec![Rational::zero(); self.coefficients.len() + 1];
        for (i, c) in self.coefficients.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * shift;
        }
        out
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for HilbertPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HilbertPolynomial", 3)?;
        let coeffs: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        s.serialize_field("coefficients", &coeffs)?;
        s.serialize_field("stable_from", &self.stable_from)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

/// Fits a polynomial of degree at most `d − 1` through the last `d` entries of
/// the table and walks backwards to the first degree where the table departs
/// from it. At least `d + 1` trailing entries must agree.
pub fn interpolate_hilbert_polynomial(
    table: &GradedDimensionTable,
    d: usize,
) -> Result<HilbertPolynomial, SplineError> {
    let not_stable = || SplineError::NotStabilized {
        label: table.label.clone(),
        dim: d,
        max_degree: table.max_degree(),
    };
    let n = table.dims.len();
    if d == 0 || n < d + 1 {
        return Err(not_stable());
    }
    let xs: Vec<usize> = (n - d..n).collect();
    let p = newton_interpolate(&xs, &table.dims[n - d..]);
    let agrees = |k: usize| p.eval(k as i64) == rat(table.dims[k] as i64);
    let mut stable_from = n - d;
    while stable_from > 0 && agrees(stable_from - 1) {
        stable_from -= 1;
    }
    if stable_from > n - d - 1 {
        return Err(not_stable());
    }
    Ok(HilbertPolynomial::new(p.coefficients, stable_from))
}

// Newton form through consecutive integer nodes, expanded to the power basis.
fn newton_interpolate(xs: &[usize], ys: &[usize]) -> HilbertPolynomial {
    let mut diffs: Vec<Rational> = ys.iter().map(|&y| rat(y as i64)).collect();
    let m = diffs.len();
    for level in 1..m {
        for i in (level..m).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / rat((xs[i] - xs[i - level]) as i64);
        }
    }
    let mut p = HilbertPolynomial::new(vec![diffs[m - 1].clone()], 0);
    for j in (0..m - 1).rev() {
        let mut next = p.mul_linear(&rat(xs[j] as i64));
        if next.is_empty() {
            next.push(Rational::zero());
        }
        next[0] += &diffs[j];
        p = HilbertPolynomial::new(next, 0);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat_frac;
    use proptest::prelude::*;

    fn table(dims: Vec<usize>) -> GradedDimensionTable {
        GradedDimensionTable::new("t", dims)
    }

    #[test]
    fn quadratic_with_exceptional_start() {
        let t = table((0..=8).map(|k| if k == 0 { 1 } else { 2 * k * k + 2 }).collect());
        let p = interpolate_hilbert_polynomial(&t, 3).unwrap();
        assert_eq!(p, HilbertPolynomial::from_integers(&[2, 0, 2], 1));
        assert_eq!(p.to_string(), "2k^2 + 2");
    }

    #[test]
    fn constant_table() {
        let p = interpolate_hilbert_polynomial(&table(vec![1, 1, 1]), 1).unwrap();
        assert_eq!(p, HilbertPolynomial::from_integers(&[1], 0));
    }

    #[test]
    fn zero_polynomial() {
        let p = interpolate_hilbert_polynomial(&table(vec![3, 1, 0, 0, 0, 0]), 2).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.stable_from, 2);
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn unstable_tail_is_rejected() {
        assert!(interpolate_hilbert_polynomial(&table(vec![1, 2, 4, 8, 16]), 2).is_err());
        assert!(interpolate_hilbert_polynomial(&table(vec![1, 2]), 2).is_err());
    }

    #[test]
    fn display_of_fractions_and_signs() {
        let p = HilbertPolynomial::new(vec![rat(-1), rat(1), rat_frac(1, 2)], 0);
        assert_eq!(p.to_string(), "(1/2)k^2 + k - 1");
    }

    proptest! {
        #[test]
        fn interpolation_recovers_integer_valued_polynomials(
            c in proptest::collection::vec(0i64..6, 1..4),
            junk in 0usize..3,
        ) {
            // sum c_j C(k + j, j) is integer valued and nonnegative
            let d = c.len();
            let value = |k: usize| -> usize {
                c.iter().enumerate().map(|(j, &cj)| cj as usize * crate::exactla::binomial(k + j, j)).sum()
            };
            let dims: Vec<usize> = (0..=2 * d + 2).map(|k| if k < junk { value(k) + 1 } else { value(k) }).collect();
            let p = interpolate_hilbert_polynomial(&table(dims.clone()), d).unwrap();
            for (k, &v) in dims.iter().enumerate().skip(p.stable_from) {
                prop_assert_eq!(p.eval(k as i64), rat(v as i64));
            }
            prop_assert!(p.stable_from <= junk);
        }
    }
}
