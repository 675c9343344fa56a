//! Dense integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{normalize, CyclicFactor, FgAbelian, FgabError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self, FgabError> {
        if entries.len() != rows * cols {
            return Err(FgabError::BadEntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged matrix rows");
            entries.extend_from_slice(r.as_ref());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, FgabError> {
        if self.cols != other.rows {
            return Err(FgabError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i64 = 0;
                for k in 0..self.cols {
                    let term = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(FgabError::Overflow)?;
                    acc = acc.checked_add(term).ok_or(FgabError::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Dense matrix of arbitrary-precision integers, used for the unimodular
/// transforms of a Smith normal form, whose entries can outgrow any fixed
/// width even when the input and the invariants are small.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl BigMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        BigMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &BigMatrix) -> Result<BigMatrix, FgabError> {
        if self.cols != other.rows {
            return Err(FgabError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries.push(
                    (0..self.cols)
                        .map(|k| self.get(i, k) * other.get(k, j))
                        .sum(),
                );
            }
        }
        Ok(BigMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Largest bit length of any entry.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    /// Converts back to 64-bit entries, failing if any entry does not fit.
    pub fn to_int_matrix(&self) -> Result<IntMatrix, FgabError> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.to_i64().ok_or(FgabError::Overflow))
            .collect::<Result<_, _>>()?;
        IntMatrix::new(self.rows, self.cols, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += factor * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = factor * self.get(src, j);
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += factor * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = factor * self.get(i, src);
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.entries[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        BigMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl fmt::Display for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `d = u * a * v` with `u`, `v` unimodular and `d` diagonal,
/// `d_1 | d_2 | ...`, non-negative, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: BigMatrix,
    pub d: IntMatrix,
    pub v: BigMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

/// Quotient rounded to nearest, so the remainder is at most half the divisor.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (r.abs() << 1) > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Smallest-pivot elimination with nearest-integer quotients, in exact
/// arithmetic. Only the diagonal is required to fit in 64 bits; an invariant
/// that does not is an overflow error rather than a wrong answer.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm, FgabError> {
    let (m, n) = (a.rows, a.cols);
    let mut d = BigMatrix::from(a);
    let mut u = BigMatrix::identity(m);
    let mut v = BigMatrix::identity(n);
    let one = BigInt::one();

    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                let q = -round_div(d.get(i, t), &pivot);
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = -round_div(d.get(t, j), &pivot);
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                // a nonzero remainder is smaller than the pivot; repivot on it
                continue;
            }
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !(d.get(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SmithForm {
        u,
        d: d.to_int_matrix()?,
        v,
    })
}

fn smallest_nonzero(d: &BigMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j).abs();
            if !x.is_zero() && best.as_ref().is_none_or(|(b, _, _)| x < *b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// `Z^n_gens` modulo the row space of `rels`.
pub fn from_relations(n_gens: usize, rels: &IntMatrix) -> Result<FgAbelian, FgabError> {
    if rels.rows == 0 {
        return Ok(FgAbelian::free(n_gens as u32));
    }
    if rels.cols != n_gens {
        return Err(FgabError::ShapeMismatch {
            expected: n_gens,
            found: rels.cols,
        });
    }
    let snf = smith_normal_form(rels)?;
    let diag = snf.d.diagonal();
    let rank = diag.iter().filter(|&&x| x != 0).count();
    let mut factors: Vec<CyclicFactor> = diag
        .iter()
        .filter(|&&x| x != 0)
        .map(|&x| CyclicFactor::Finite(x.unsigned_abs()))
        .collect();
    factors.extend(std::iter::repeat_n(CyclicFactor::Infinite, n_gens - rank));
    Ok(normalize(&factors))
}
