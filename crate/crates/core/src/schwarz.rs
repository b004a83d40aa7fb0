//! Schwarz gaps, one-vs-rest matricizations and 2x2 minor enumeration.
//!
//! For two vectors the Lagrange identity
//! `‖x‖²‖y‖² − |⟨x|y⟩|² = Σ_{a<b} |x_a y_b − x_b y_a|²`
//! ties the Cauchy–Schwarz gap to the 2x2 minors of the two-row matrix
//! `[x; y]`. Applied to every pair of rows of a matricization it gives the
//! minor sums that concurrence is built from.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{split_sizes, Cut, PureState};
use crate::sum::NeumaierSum;

/// Relative slack under which a negative gap is treated as rounding noise.
const GAP_CLAMP: f64 = 1e-12;

fn check_lengths(x1: &[Complex64], x2: &[Complex64]) -> Result<()> {
    if x1.len() != x2.len() {
        return Err(Error::Shape(format!(
            "vectors of length {} and {}",
            x1.len(),
            x2.len()
        )));
    }
    if x1.is_empty() {
        return Err(Error::Shape("vectors must be nonempty".into()));
    }
    Ok(())
}

/// `‖x1‖²·‖x2‖² − |⟨x1|x2⟩|²`, never negative.
pub fn schwarz_gap(x1: &[Complex64], x2: &[Complex64]) -> Result<f64> {
    check_lengths(x1, x2)?;
    let n1: NeumaierSum = x1.iter().map(|a| a.norm_sqr()).collect();
    let n2: NeumaierSum = x2.iter().map(|a| a.norm_sqr()).collect();
    let mut re = NeumaierSum::default();
    let mut im = NeumaierSum::default();
    for (a, b) in x1.iter().zip(x2) {
        let p = a.conj() * b;
        re += p.re;
        im += p.im;
    }
    let bound = n1.sum() * n2.sum();
    let overlap = Complex64::new(re.sum(), im.sum()).norm_sqr();
    let gap = bound - overlap;
    if gap >= 0.0 {
        Ok(gap)
    } else if gap >= -GAP_CLAMP * bound {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!(
            "Schwarz gap {gap:e} below zero beyond rounding (bound {bound:e})"
        )))
    }
}

/// The Schwarz gap together with `Σ_{a<b} |x1_a·x2_b − x1_b·x2_a|²`.
pub fn gap_equals_minor_sum(x1: &[Complex64], x2: &[Complex64]) -> Result<(f64, f64)> {
    let gap = schwarz_gap(x1, x2)?;
    let mut acc = NeumaierSum::default();
    for a in 0..x1.len() {
        for b in a + 1..x1.len() {
            acc += (x1[a] * x2[b] - x1[b] * x2[a]).norm_sqr();
        }
    }
    Ok((gap, acc.sum()))
}

/// Row-major complex matrix, usually a state unfolded along one cut: rows
/// indexed by the isolated subsystem, columns by the remaining subsystems in
/// ascending order (row-major, last subsystem fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Matricization {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    cut: Option<Cut>,
    col_dims: Vec<usize>,
}

impl Matricization {
    /// Wraps an arbitrary row-major matrix. Columns are treated as a single
    /// index of size `cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows * cols != entries.len() || rows == 0 || cols == 0 {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix with {} entries",
                entries.len()
            )));
        }
        Ok(Matricization {
            rows,
            cols,
            entries,
            cut: None,
            col_dims: vec![cols],
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// The cut this matrix was unfolded along, if it came from a state.
    pub fn cut(&self) -> Option<Cut> {
        self.cut
    }

    /// Dimensions of the subsystems indexing the columns.
    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "entry ({row}, {col}) outside {}x{}",
            self.rows,
            self.cols
        );
        self.entries[(row - 1) * self.cols + col - 1]
    }

    /// Row `row` (1-based) as a slice.
    pub fn row(&self, row: usize) -> &[Complex64] {
        let start = (row - 1) * self.cols;
        &self.entries[start..start + self.cols]
    }

    /// Column `col` (1-based) as a vector.
    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (1..=self.rows).map(|r| self.entry(r, col)).collect()
    }

    /// 1-based multi-index over the remaining subsystems for column `col`.
    pub fn col_index(&self, col: usize) -> Vec<usize> {
        let mut rest = col - 1;
        let mut out = vec![0; self.col_dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.col_dims).rev() {
            *slot = rest % d + 1;
            rest /= d;
        }
        out
    }

    pub fn transpose(&self) -> Matricization {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.entries[r * self.cols + c]);
            }
        }
        Matricization {
            rows: self.cols,
            cols: self.rows,
            entries,
            cut: None,
            col_dims: vec![self.rows],
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Matricization {
        Matricization {
            entries: self.entries.iter().map(|a| a * factor).collect(),
            ..self.clone()
        }
    }
}

/// Unfolds `state` so that subsystem `cut` indexes the rows.
pub fn matricize(state: &PureState, cut: Cut) -> Result<Matricization> {
    let j = cut.check(state.arity())?.position();
    let dims = state.dims();
    let d = dims[j];
    let (outer, inner) = split_sizes(dims, j);
    let cols = outer * inner;
    let amps = state.amps();
    let mut entries = Vec::with_capacity(amps.len());
    for a in 0..d {
        for o in 0..outer {
            let base = (o * d + a) * inner;
            entries.extend_from_slice(&amps[base..base + inner]);
        }
    }
    let col_dims = dims
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &n)| n)
        .collect();
    Ok(Matricization {
        rows: d,
        cols,
        entries,
        cut: Some(cut),
        col_dims,
    })
}

/// A 2x2 minor: rows `k_j < l_j`, columns `k < l`, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinorTerm {
    pub row_pair: (usize, usize),
    pub col_pair: (usize, usize),
    pub value: Complex64,
}

/// Streams all `C(rows,2)·C(cols,2)` minors in lexicographic order of
/// `(k_j, l_j, k, l)`.
pub fn enumerate_minors(mat: &Matricization) -> Minors<'_> {
    Minors {
        mat,
        kr: 0,
        lr: 1,
        kc: 0,
        lc: 1,
    }
}

pub struct Minors<'a> {
    mat: &'a Matricization,
    kr: usize,
    lr: usize,
    kc: usize,
    lc: usize,
}

impl Iterator for Minors<'_> {
    type Item = MinorTerm;

    fn next(&mut self) -> Option<MinorTerm> {
        let (rows, cols) = (self.mat.rows, self.mat.cols);
        if cols < 2 || self.lr >= rows {
            return None;
        }
        let m = &self.mat.entries;
        let (top, bottom) = (self.kr * cols, self.lr * cols);
        let value = m[top + self.kc] * m[bottom + self.lc] - m[top + self.lc] * m[bottom + self.kc];
        let term = MinorTerm {
            row_pair: (self.kr + 1, self.lr + 1),
            col_pair: (self.kc + 1, self.lc + 1),
            value,
        };

        self.lc += 1;
        if self.lc == cols {
            self.kc += 1;
            self.lc = self.kc + 1;
            if self.lc == cols {
                self.kc = 0;
                self.lc = 1;
                self.lr += 1;
                if self.lr == rows {
                    self.kr += 1;
                    self.lr = self.kr + 1;
                }
            }
        }
        Some(term)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let (rows, cols) = (self.mat.rows, self.mat.cols);
        if cols < 2 || self.lr >= rows {
            return (0, Some(0));
        }
        let pairs = |n: usize| n * n.saturating_sub(1) / 2;
        let row_rank = pairs(rows) - pairs(rows - self.kr) + (self.lr - self.kr - 1);
        let col_rank = pairs(cols) - pairs(cols - self.kc) + (self.lc - self.kc - 1);
        let left = pairs(rows) * pairs(cols) - (row_rank * pairs(cols) + col_rank);
        (left, Some(left))
    }
}

impl ExactSizeIterator for Minors<'_> {}

/// `Σ |T|²` over all minors, compensated, in enumeration order.
pub fn minor_sum_sq(mat: &Matricization) -> f64 {
    enumerate_minors(mat)
        .map(|t| t.value.norm_sqr())
        .collect::<NeumaierSum>()
        .sum()
}

/// Largest `|T|` over all minors; zero when there are none.
pub fn max_abs_minor(mat: &Matricization) -> f64 {
    enumerate_minors(mat)
        .map(|t| t.value.norm())
        .fold(0.0, f64::max)
}
