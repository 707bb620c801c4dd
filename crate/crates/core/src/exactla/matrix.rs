use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::elimination::{sparse_rank, to_i128_rows, SparseRow};
use super::Rational;

/// Rational matrix with sparse row storage.
///
/// Rows keep their nonzero entries sorted by column. The blocks this crate
/// builds have a handful of nonzeros per row and thousands of columns, so a
/// dense array would be mostly zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.data[i] = row
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.data[i][p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(p) if v.is_zero() => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = v,
            Err(_) if v.is_zero() => {}
            Err(p) => row.insert(p, (j, v)),
        }
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for (i, row) in block.data.iter().enumerate() {
            for (j, v) in row {
                self.set(r0 + i, c0 + j, v.clone());
            }
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row_entries(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        if s.is_zero() {
            out.data.iter_mut().for_each(Vec::clear);
        } else {
            for row in &mut out.data {
                row.iter_mut().for_each(|(_, v)| *v *= s);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                t.data[*j].push((i, v.clone()));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: Vec<Rational> = vec![Rational::zero(); rhs.cols];
            let mut touched = vec![false; rhs.cols];
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    acc[*j] += a * b;
                    touched[*j] = true;
                }
            }
            out.data[i] = acc
                .into_iter()
                .enumerate()
                .filter(|(j, v)| touched[*j] && !v.is_zero())
                .collect();
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[RatMatrix]) -> RatMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut out = Self::zeros(0, cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.data.extend(b.data.iter().cloned());
            out.rows += b.rows;
        }
        out
    }

    /// Rank over the rationals.
    ///
    /// Each row is scaled to a primitive integer row, then reduced by
    /// fraction-free elimination with gcd normalisation. Columns are processed
    /// sparsest first, which for block-structured maps eliminates the
    /// multiplier columns before the shared ones.
    pub fn rank(&self) -> usize {
        let (rows, ncols) = self.integer_rows_in_elimination_order();
        if let Some(small) = to_i128_rows(&rows) {
            if let Some(r) = sparse_rank(small, ncols) {
                return r;
            }
        }
        sparse_rank(rows, ncols).expect("big integer elimination cannot overflow")
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Rank by dense reduced row echelon form with rational pivots.
    ///
    /// Much slower than [`rank`](Self::rank); kept as an independent check.
    pub fn rank_rref(&self) -> usize {
        super::subspace::rref(&self.to_dense()).1.len()
    }

    fn integer_rows_in_elimination_order(&self) -> (Vec<SparseRow<BigInt>>, usize) {
        let mut counts = vec![0usize; self.cols];
        for row in &self.data {
            for (j, _) in row {
                counts[*j] += 1;
            }
        }
        let mut order: Vec<usize> = (0..self.cols).filter(|&j| counts[j] > 0).collect();
        order.sort_by_key(|&j| counts[j]);
        let mut position = vec![u32::MAX; self.cols];
        for (p, &j) in order.iter().enumerate() {
            position[j] = p as u32;
        }
        let rows = self
            .data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                let mut out: SparseRow<BigInt> = row
                    .iter()
                    .map(|(j, v)| (position[*j], v.numer() * (&lcm / v.denom())))
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        (rows, order.len())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(24) {
            let row: Vec<String> = (0..self.cols.min(24))
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
