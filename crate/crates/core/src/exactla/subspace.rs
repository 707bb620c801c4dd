//! Small dense helpers on rational vectors: echelon forms, kernels,
//! coordinates and canonical subspace representatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub type Vector = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r].iter_mut().for_each(|v| *v *= &inv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rref(vectors).1.len()
}

/// Basis of `{x : rows · x = 0}` in `n` variables.
pub fn nullspace(rows: &[Vector], n: usize) -> Vec<Vector> {
    if rows.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Canonical representative of a row space: the nonzero rows of its reduced
/// row echelon form. Two lists span the same subspace iff these agree.
pub fn canonical_basis(vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    rref(vectors).0
}

pub fn intersect(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    let mut normals = nullspace(a, n);
    normals.extend(nullspace(b, n));
    canonical_basis(&nullspace(&normals, n))
}

pub fn contains_subspace(big: &[Vector], small: &[Vector]) -> bool {
    let base = rank_of(big);
    small.iter().all(|v| {
        let mut all = big.to_vec();
        all.push(v.clone());
        rank_of(&all) == base
    })
}

/// Coordinates of `v` in the (independent) list `basis`, if `v` lies in its span.
pub fn coordinates(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    let k = basis.len();
    let n = v.len();
    // columns are basis vectors; augment with v
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        out[p] = row[k].clone();
    }
    Some(out)
}

pub fn determinant(square: &[Vector]) -> Rational {
    let n = square.len();
    let mut m = square.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    det
}

/// Scales a nonzero vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Primitive integer vector with the first nonzero coordinate positive.
pub fn primitive_normalized(v: &[Rational]) -> Vec<BigInt> {
    let mut p = primitive(v);
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    p
}

pub fn to_rational(v: &[BigInt]) -> Vector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rat, rat_frac};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(&[v(&[1, -1, 0])], 3);
        assert_eq!(ns.len(), 2);
        for n in &ns {
            assert_eq!(dot(n, &v(&[1, -1, 0])), rat(0));
        }
    }

    #[test]
    fn intersection_of_two_planes_is_a_line() {
        let a = nullspace(&[v(&[1, -1, 0])], 3);
        let b = nullspace(&[v(&[1, 0, -1])], 3);
        let line = intersect(&a, &b, 3);
        assert_eq!(line, vec![v(&[1, 1, 1])]);
    }

    #[test]
    fn coordinates_solve_in_basis() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(coordinates(&basis, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(coordinates(&basis, &v(&[1, 0, 0])), None);
    }

    #[test]
    fn determinant_sign() {
        assert_eq!(determinant(&[v(&[0, 1]), v(&[1, 0])]), rat(-1));
        assert_eq!(determinant(&[v(&[2, 1]), v(&[4, 2])]), rat(0));
    }

    #[test]
    fn primitive_clears_denominators() {
        let p = primitive_normalized(&[rat_frac(1, 2), rat(0), rat(0)]);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        let q = primitive_normalized(&[rat(-2), rat(4)]);
        assert_eq!(q, vec![BigInt::from(1), BigInt::from(-2)]);
    }
}
