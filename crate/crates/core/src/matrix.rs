//! Square matrices over extended counts and over {0,1}, with the elementwise
//! operations the identity catalogue is built from.
//!
//! Every operation is a pure function returning a fresh matrix. Row index is
//! the source node, column index the sink node.

use std::fmt;

use crate::count::{ExtendedCount, Finite, Inf};
use crate::error::MatrixError;

/// Read access shared by [`CountMatrix`] and [`BinaryMatrix`].
///
/// Binary cells read as `Finite(0)` / `Finite(1)`, which is what makes the
/// binary-to-count conversion implicit for every operation in this module.
pub trait Cells {
    fn dim(&self) -> usize;
    fn cell(&self, row: usize, col: usize) -> ExtendedCount;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountMatrix {
    n: usize,
    cells: Vec<ExtendedCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl CountMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        CountMatrix { n, cells: vec![ExtendedCount::ZERO; n * n] }
    }

    pub fn filled(n: usize, value: ExtendedCount) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        CountMatrix { n, cells: vec![value; n * n] }
    }

    /// Builds from a row-major cell vector of length `n * n`.
    pub fn from_cells(n: usize, cells: Vec<ExtendedCount>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if cells.len() != n * n {
            return Err(MatrixError::CellCount { expected: n * n, found: cells.len() });
        }
        Ok(CountMatrix { n, cells })
    }

    pub fn from_rows<R, T>(rows: R) -> Result<Self, MatrixError>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<ExtendedCount>,
    {
        let rows: Vec<Vec<ExtendedCount>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::CellCount { expected: n, found: bad.len() });
        }
        Self::from_cells(n, rows.into_iter().flatten().collect())
    }

    pub fn get(&self, row: usize, col: usize) -> ExtendedCount {
        self.cells[row * self.n + col]
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, row: usize, col: usize, value: ExtendedCount) {
        self.cells[row * self.n + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtendedCount]> {
        self.cells.chunks(self.n)
    }

    pub fn cells(&self) -> &[ExtendedCount] {
        &self.cells
    }

    pub fn is_all_finite(&self) -> bool {
        self.cells.iter().all(|c| c.is_finite())
    }
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        BinaryMatrix { n, cells: vec![false; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let cells = (0..n * n).map(|k| f(k / n, k % n)).collect();
        BinaryMatrix { n, cells }
    }

    /// Builds from rows of 0/1 integers.
    pub fn from_rows<R, T>(rows: R) -> Result<Self, MatrixError>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<u64>,
    {
        let counts = CountMatrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(|v| Finite(v.into()))),
        )?;
        Self::try_from(&counts)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.n + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: bool) {
        self.cells[row * self.n + col] = value;
    }

    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.cells.iter().enumerate().filter(|(_, &b)| b).map(move |(k, _)| (k / n, k % n))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn to_counts(&self) -> CountMatrix {
        CountMatrix::from(self)
    }

    /// Hadamard product of two binary matrices; stays binary.
    pub fn hadamard(&self, other: &BinaryMatrix) -> Result<BinaryMatrix, MatrixError> {
        check_dims(self, other)?;
        let cells = self.cells.iter().zip(&other.cells).map(|(a, b)| *a && *b).collect();
        Ok(BinaryMatrix { n: self.n, cells })
    }
}

impl Cells for CountMatrix {
    fn dim(&self) -> usize {
        self.n
    }
    fn cell(&self, row: usize, col: usize) -> ExtendedCount {
        self.get(row, col)
    }
}

impl Cells for BinaryMatrix {
    fn dim(&self) -> usize {
        self.n
    }
    fn cell(&self, row: usize, col: usize) -> ExtendedCount {
        Finite(self.get(row, col) as u64)
    }
}

impl From<&BinaryMatrix> for CountMatrix {
    fn from(b: &BinaryMatrix) -> Self {
        let cells = b.cells.iter().map(|&v| Finite(v as u64)).collect();
        CountMatrix { n: b.n, cells }
    }
}

impl From<BinaryMatrix> for CountMatrix {
    fn from(b: BinaryMatrix) -> Self {
        CountMatrix::from(&b)
    }
}

impl TryFrom<&CountMatrix> for BinaryMatrix {
    type Error = MatrixError;

    fn try_from(m: &CountMatrix) -> Result<Self, Self::Error> {
        let mut cells = Vec::with_capacity(m.cells.len());
        for (k, c) in m.cells.iter().enumerate() {
            match c {
                Finite(0) => cells.push(false),
                Finite(1) => cells.push(true),
                _ => return Err(MatrixError::NotBinary { row: k / m.n, col: k % m.n }),
            }
        }
        Ok(BinaryMatrix { n: m.n, cells })
    }
}

impl fmt::Display for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", line.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_counts(), f)
    }
}

fn check_dims(x: &impl Cells, y: &impl Cells) -> Result<(), MatrixError> {
    if x.dim() == y.dim() {
        Ok(())
    } else {
        Err(MatrixError::DimensionMismatch { left: x.dim(), right: y.dim() })
    }
}

fn zip_cells<X, Y, F>(x: &X, y: &Y, mut f: F) -> Result<CountMatrix, MatrixError>
where
    X: Cells + ?Sized,
    Y: Cells + ?Sized,
    F: FnMut(usize, usize, ExtendedCount, ExtendedCount) -> Result<ExtendedCount, MatrixError>,
{
    let n = x.dim();
    if n != y.dim() {
        return Err(MatrixError::DimensionMismatch { left: n, right: y.dim() });
    }
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(f(i, j, x.cell(i, j), y.cell(i, j))?);
        }
    }
    Ok(CountMatrix { n, cells })
}

/// 1 where the cell is finite and positive, 0 for zero and `Inf`.
pub fn binarize(m: &impl Cells) -> BinaryMatrix {
    BinaryMatrix::from_fn(m.dim(), |i, j| m.cell(i, j).is_positive_finite())
}

/// Elementwise product. `Inf` times a positive count is `Inf`; `Inf * 0` is
/// rejected.
pub fn hadamard(x: &impl Cells, y: &impl Cells) -> Result<CountMatrix, MatrixError> {
    zip_cells(x, y, |row, col, a, b| match (a, b) {
        (Finite(a), Finite(b)) => {
            a.checked_mul(b).map(Finite).ok_or(MatrixError::Overflow { row, col })
        }
        (Inf, Finite(0)) | (Finite(0), Inf) => Err(MatrixError::UndefinedProduct { row, col }),
        _ => Ok(Inf),
    })
}

pub fn ew_add(x: &impl Cells, y: &impl Cells) -> Result<CountMatrix, MatrixError> {
    zip_cells(x, y, |row, col, a, b| match (a, b) {
        (Finite(a), Finite(b)) => {
            a.checked_add(b).map(Finite).ok_or(MatrixError::Overflow { row, col })
        }
        _ => Err(MatrixError::InfiniteOperand { row, col }),
    })
}

/// Elementwise difference. `Inf - k` stays `Inf` for finite `k`; a negative
/// result or an infinite subtrahend is an error.
pub fn ew_sub(x: &impl Cells, y: &impl Cells) -> Result<CountMatrix, MatrixError> {
    zip_cells(x, y, |row, col, a, b| match (a, b) {
        (Finite(a), Finite(b)) => {
            a.checked_sub(b).map(Finite).ok_or(MatrixError::NegativeResult { row, col })
        }
        (Inf, Finite(_)) => Ok(Inf),
        (_, Inf) => Err(MatrixError::InfiniteOperand { row, col }),
    })
}

/// First cell (row-major) where `x > y`, if any.
pub fn first_leq_violation(
    x: &impl Cells,
    y: &impl Cells,
) -> Result<Option<(usize, usize)>, MatrixError> {
    check_dims(x, y)?;
    Ok(cell_indices(x.dim()).find(|&(i, j)| x.cell(i, j) > y.cell(i, j)))
}

/// First cell (row-major) where `x != y`, if any.
pub fn first_difference(
    x: &impl Cells,
    y: &impl Cells,
) -> Result<Option<(usize, usize)>, MatrixError> {
    check_dims(x, y)?;
    Ok(cell_indices(x.dim()).find(|&(i, j)| x.cell(i, j) != y.cell(i, j)))
}

pub fn ew_leq(x: &impl Cells, y: &impl Cells) -> Result<bool, MatrixError> {
    Ok(first_leq_violation(x, y)?.is_none())
}

pub fn is_zero(x: &impl Cells) -> bool {
    cell_indices(x.dim()).all(|(i, j)| x.cell(i, j).is_zero())
}

/// No cell is nonzero in both matrices. `Inf` counts as nonzero.
pub fn mutually_exclusive(x: &impl Cells, y: &impl Cells) -> Result<bool, MatrixError> {
    check_dims(x, y)?;
    Ok(cell_indices(x.dim()).all(|(i, j)| x.cell(i, j).is_zero() || y.cell(i, j).is_zero()))
}

fn cell_indices(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}
