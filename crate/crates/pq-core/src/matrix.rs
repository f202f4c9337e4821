//! Subscript matrices: the operation table written with 1-based indices.

use crate::magma::FiniteMagma;

/// An `n x n` table of 1-based subscripts: entry `(i,j)` names `x_i * x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl PqMatrix {
    pub fn from_magma(m: &FiniteMagma) -> Self {
        let n = m.size();
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = m.op(i, j) as u32 + 1;
            }
        }
        PqMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based subscript at row `i`, column `j` (0-based positions).
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Rows of space-separated subscripts.
    pub fn render_text(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entry(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn report(&self, source_is_pg: bool) -> MatrixReport {
        let n = self.n;
        let symmetric = (0..n).all(|i| (i + 1..n).all(|j| self.entry(i, j) == self.entry(j, i)));
        let trace: usize = (0..n).map(|i| self.entry(i, i)).sum();
        let expected_trace = n * (n + 1) / 2;
        let trace_ok = trace == expected_trace;
        let simple_form = n == 2
            && self.entry(0, 0) == 1
            && self.entry(0, 1) == 2
            && self.entry(1, 0) == 2
            && self.entry(1, 1) == 2;
        MatrixReport {
            symmetric,
            trace,
            expected_trace,
            trace_ok,
            simple_form,
            pg_laws_ok: source_is_pg.then_some(symmetric && trace_ok),
        }
    }
}

/// Symmetry, trace, and shape facts about a subscript matrix.
///
/// Symmetry is the exact, integer-level content of diagonalizability here:
/// a symmetric real matrix is diagonalizable, and the table is symmetric
/// precisely when the source operation commutes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixReport {
    pub symmetric: bool,
    pub trace: usize,
    pub expected_trace: usize,
    pub trace_ok: bool,
    /// Whether the matrix is exactly `[[1,2],[2,2]]`.
    pub simple_form: bool,
    /// For normal-subgroup sources: symmetry and the trace law together.
    pub pg_laws_ok: Option<bool>,
}
