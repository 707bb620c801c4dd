//! Fraction-free sparse row elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) type SparseRow<T> = Vec<(u32, T)>;

/// Integer types the elimination runs over. `combine` returns `None` on
/// overflow so the caller can restart with a wider type.
pub(crate) trait ElimInt: Clone + Sized {
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    /// `a * x`
    fn scale(a: &Self, x: &Self) -> Option<Self>;
    fn negated(&self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn bits(&self) -> u64;
}

// Keep well inside i128 so that abs() and gcd() can never overflow.
const I128_LIMIT: i128 = 1 << 125;

impl ElimInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        let v = a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)?;
        (v.abs() < I128_LIMIT).then_some(v)
    }

    fn scale(a: &Self, x: &Self) -> Option<Self> {
        let v = a.checked_mul(*x)?;
        (v.abs() < I128_LIMIT).then_some(v)
    }

    fn negated(&self) -> Self {
        -*self
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }

    fn is_unit(&self) -> bool {
        self.abs() == 1
    }

    fn bits(&self) -> u64 {
        128 - self.unsigned_abs().leading_zeros() as u64
    }
}

impl ElimInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }

    fn scale(a: &Self, x: &Self) -> Option<Self> {
        Some(a * x)
    }

    fn negated(&self) -> Self {
        -self
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }

    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }

    fn bits(&self) -> u64 {
        BigInt::bits(self)
    }
}

pub(crate) fn to_i128_rows(rows: &[SparseRow<BigInt>]) -> Option<Vec<SparseRow<i128>>> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| {
                    let v = v.to_i128()?;
                    (v.abs() < I128_LIMIT).then_some((*c, v))
                })
                .collect()
        })
        .collect()
}

fn normalize<T: ElimInt>(row: &mut SparseRow<T>) {
    let mut g: Option<T> = None;
    for (_, v) in row.iter() {
        g = Some(match g {
            None => v.clone(),
            Some(g) => g.gcd(v),
        });
        if g.as_ref().is_some_and(ElimInt::is_unit) {
            return;
        }
    }
    if let Some(g) = g {
        if !g.is_zero() && !g.is_unit() {
            for (_, v) in row.iter_mut() {
                *v = v.div_exact(&g);
            }
        }
    }
}

/// Replace `row` by `p_lead * row - r_lead * pivot`, cancelling the shared
/// leading column.
fn reduce<T: ElimInt>(row: &SparseRow<T>, pivot: &SparseRow<T>) -> Option<SparseRow<T>> {
    let r_lead = &row[0].1;
    let p_lead = &pivot[0].1;
    let g = r_lead.gcd(p_lead);
    let (rm, pm) = (p_lead.div_exact(&g), r_lead.div_exact(&g));
    let neg_pm = pm.negated();
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        let (col, v) = if ci < cj {
            let v = T::scale(&rm, &row[i].1)?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = T::scale(&neg_pm, &pivot[j].1)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::combine(&rm, &row[i].1, &pm, &pivot[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    normalize(&mut out);
    Some(out)
}

/// Rank of the row set. Columns are already renumbered into elimination
/// order and every row is sorted by column. Returns `None` on overflow.
pub(crate) fn sparse_rank<T: ElimInt>(rows: Vec<SparseRow<T>>, ncols: usize) -> Option<usize> {
    let mut buckets: Vec<Vec<SparseRow<T>>> = vec![Vec::new(); ncols];
    for mut row in rows {
        row.retain(|(_, v)| !v.is_zero());
        if let Some(&(c, _)) = row.first() {
            normalize(&mut row);
            buckets[c as usize].push(row);
        }
    }
    let mut rank = 0;
    for c in 0..ncols {
        let mut group = std::mem::take(&mut buckets[c]);
        if group.is_empty() {
            continue;
        }
        rank += 1;
        let best = group
            .iter()
            .enumerate()
            .min_by_key(|(_, r)| (r.len(), r[0].1.bits()))
            .map(|(i, _)| i)
            .expect("nonempty group");
        let pivot = group.swap_remove(best);
        for row in group {
            let reduced = reduce(&row, &pivot)?;
            if let Some(&(lead, _)) = reduced.first() {
                debug_assert!(lead as usize > c);
                buckets[lead as usize].push(reduced);
            }
        }
    }
    Some(rank)
}
