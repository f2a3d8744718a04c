//! Canonical vectors, logical matrices and the semi-tensor product.
//!
//! A canonical vector `e_k^i` is the `i`-th column of the `k x k` identity
//! (1-based). An assignment of `k` Boolean variables is encoded as
//! `e_{2^k}^i` with `i = 1 + sum_t (1 - b_t) 2^(k - t)`, so the all-TRUE
//! assignment is index 1 and the all-FALSE one is index `2^k`.
//!
//! Element accessors on [`BoolMatrix`] and [`DenseMatrix`] are 0-based like
//! any Rust matrix; canonical indices (rows of a [`LogicalMatrix`], state
//! numbers) are 1-based.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Canonical index (1-based) of an ordered bit list. The empty list maps to 1.
pub fn canonical_index(bits: &[bool]) -> usize {
    bits.iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(!b))
        + 1
}

/// Inverse of [`canonical_index`] for `k` bits.
pub fn index_to_bits(index: usize, k: usize) -> Result<Vec<bool>> {
    let max = 1usize
        .checked_shl(k as u32)
        .filter(|_| k < usize::BITS as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("{k} bits do not fit an index")))?;
    if index == 0 || index > max {
        return Err(Error::IndexOutOfRange { index, max });
    }
    let offset = index - 1;
    Ok((0..k).map(|t| (offset >> (k - 1 - t)) & 1 == 0).collect())
}

/// `e_p^i ⋉ e_q^j = e_{pq}^{(i-1)q + j}`.
pub fn stp_canonical(i: usize, p: usize, j: usize, q: usize) -> Result<usize> {
    if i == 0 || i > p {
        return Err(Error::IndexOutOfRange { index: i, max: p });
    }
    if j == 0 || j > q {
        return Err(Error::IndexOutOfRange { index: j, max: q });
    }
    Ok((i - 1) * q + j)
}

/// Real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "rows must be non-empty and of equal length".into(),
            ));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(DenseMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Column vector `e_k^i`.
    pub fn canonical(k: usize, i: usize) -> Result<Self> {
        if i == 0 || i > k {
            return Err(Error::IndexOutOfRange { index: i, max: k });
        }
        let mut m = Self::zeros(k, 1);
        m.set(i - 1, 0, 1.0);
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }
}

/// Semi-tensor product: `(A ⊗ I_{t/q}) (B ⊗ I_{t/r})` with `t = lcm(q, r)`,
/// where `A` is `p x q` and `B` is `r x s`.
pub fn stp(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let t = a.cols.lcm(&b.rows);
    let left = a.kron(&DenseMatrix::identity(t / a.cols));
    let right = b.kron(&DenseMatrix::identity(t / b.rows));
    left.matmul(&right)
        .expect("inner dimensions agree by construction")
}

/// A matrix whose every column is a canonical vector, stored as one row index
/// per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalMatrix {
    rows: usize,
    // 0-based row of the single 1 in each column.
    targets: Vec<u32>,
}

impl LogicalMatrix {
    /// Builds from 1-based column indices: column `j` is `e_rows^{indices[j]}`.
    pub fn new(rows: usize, indices: &[usize]) -> Result<Self> {
        if rows == 0 || indices.is_empty() {
            return Err(Error::DimensionMismatch(
                "logical matrix must be non-empty".into(),
            ));
        }
        if rows > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!("{rows} rows is too many")));
        }
        let targets = indices
            .iter()
            .map(|&i| {
                if i == 0 || i > rows {
                    Err(Error::IndexOutOfRange {
                        index: i,
                        max: rows,
                    })
                } else {
                    Ok((i - 1) as u32)
                }
            })
            .collect::<Result<_>>()?;
        Ok(LogicalMatrix { rows, targets })
    }

    pub(crate) fn from_targets(rows: usize, targets: Vec<u32>) -> Self {
        debug_assert!(targets.iter().all(|&t| (t as usize) < rows));
        LogicalMatrix { rows, targets }
    }

    pub fn identity(k: usize) -> Self {
        LogicalMatrix {
            rows: k,
            targets: (0..k as u32).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.targets.len()
    }

    /// Row index (1-based) of the 1 in column `col` (1-based).
    pub fn index(&self, col: usize) -> Result<usize> {
        if col == 0 || col > self.cols() {
            return Err(Error::IndexOutOfRange {
                index: col,
                max: self.cols(),
            });
        }
        Ok(self.targets[col - 1] as usize + 1)
    }

    /// All column indices, 1-based.
    pub fn indices(&self) -> Vec<usize> {
        self.targets.iter().map(|&t| t as usize + 1).collect()
    }

    pub(crate) fn targets(&self) -> &[u32] {
        &self.targets
    }

    /// Columns `first .. first + count` (0-based `first`).
    pub(crate) fn column_block(&self, first: usize, count: usize) -> LogicalMatrix {
        LogicalMatrix {
            rows: self.rows,
            targets: self.targets[first..first + count].to_vec(),
        }
    }

    pub fn to_bool(&self) -> BoolMatrix {
        let mut m = BoolMatrix::zeros(self.rows, self.cols());
        for (col, &t) in self.targets.iter().enumerate() {
            m.set(t as usize, col, true);
        }
        m
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols());
        for (col, &t) in self.targets.iter().enumerate() {
            m.set(t as usize, col, 1.0);
        }
        m
    }
}

impl fmt::Display for LogicalMatrix {
    /// `δ_rows[i1 i2 ...]`, the usual compact notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ_{}[", self.rows)?;
        for (j, &t) in self.targets.iter().enumerate() {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", t + 1)?;
        }
        f.write_str("]")
    }
}

/// 0/1 matrix, bit-packed by column: column `j` is a bitset of the rows `i`
/// with `M[i, j] = 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    words_per_col: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_col = rows.div_ceil(64);
        BoolMatrix {
            rows,
            cols,
            words_per_col,
            bits: vec![0; words_per_col * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| true)
    }

    pub fn identity(k: usize) -> Self {
        Self::from_fn(k, k, |i, j| i == j)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as strings of `0`/`1` (spaces ignored).
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::InvalidArgument(format!(
                            "`{other}` is not a matrix bit"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(
                "matrix rows differ in length".into(),
            ));
        }
        Ok(Self::from_fn(parsed.len(), cols, |i, j| parsed[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn column_words(&self, col: usize) -> &[u64] {
        &self.bits[col * self.words_per_col..(col + 1) * self.words_per_col]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        self.column_words(col)[row / 64] >> (row % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "index ({row}, {col}) out of bounds"
        );
        let word = &mut self.bits[col * self.words_per_col + row / 64];
        if value {
            *word |= 1 << (row % 64);
        } else {
            *word &= !(1 << (row % 64));
        }
    }

    /// Number of ones in column `col`.
    pub fn col_sum(&self, col: usize) -> usize {
        self.column_words(col)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.cols).map(|j| self.col_sum(j)).collect()
    }

    pub fn row_sum(&self, row: usize) -> usize {
        (0..self.cols).filter(|&j| self.get(row, j)).count()
    }

    /// Rows with a one in column `col`, ascending.
    pub fn column_ones(&self, col: usize) -> impl Iterator<Item = usize> + '_ {
        self.column_words(col)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| {
                let mut word = word;
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(w * 64 + bit)
                })
            })
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.rows * self.cols
    }

    /// `P M P'` where `order[k]` is the (0-based) original index placed at
    /// position `k`: the result has entry `M[order[a], order[b]]` at `(a, b)`.
    pub fn permute(&self, order: &[usize]) -> BoolMatrix {
        assert!(self.is_square() && order.len() == self.rows);
        BoolMatrix::from_fn(self.rows, self.cols, |a, b| self.get(order[a], order[b]))
    }

    /// Sub-matrix on the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BoolMatrix {
        BoolMatrix::from_fn(rows.len(), cols.len(), |a, b| self.get(rows[a], cols[b]))
    }

    /// Row `row` as a string of `0`/`1`.
    pub fn row_string(&self, row: usize) -> String {
        (0..self.cols)
            .map(|j| if self.get(row, j) { '1' } else { '0' })
            .collect()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            for i in self.column_ones(j) {
                d.set(i, j, 1.0);
            }
        }
        d
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Entrywise OR.
pub fn bool_or(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "cannot OR {}x{} with {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = a.clone();
    out.bits.iter_mut().zip(&b.bits).for_each(|(x, y)| *x |= y);
    Ok(out)
}
