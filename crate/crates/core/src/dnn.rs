//! Column-partitioned ReLU layer `y = max(xW + b, 0) = Σₚ max(xWₚ + bₚ, 0)`
//! with `Wₚ = W Iₚ` and `bₚ = b Iₚ`.
//!
//! Arithmetic here is over ordinary reals, not a semiring.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Row-major dense real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Dense {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} values, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Dense { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// A `1 × n` row vector.
    pub fn row(values: Vec<f64>) -> Self {
        Dense {
            rows: 1,
            cols: values.len(),
            data: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn matmul(&self, other: &Dense) -> Result<Dense> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Dense::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Dense) -> Result<Dense> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} to {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Dense { data, ..*self })
    }

    pub fn relu(&self) -> Dense {
        Dense {
            data: self.data.iter().map(|&v| v.max(0.0)).collect(),
            ..*self
        }
    }
}

/// `{0, 1}`-valued diagonal `Iₚ` selecting a set of columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectorDiag {
    pub diag: Vec<bool>,
}

impl SelectorDiag {
    pub fn matrix(&self) -> Dense {
        let n = self.diag.len();
        let mut m = Dense::zeros(n, n);
        for (j, &on) in self.diag.iter().enumerate() {
            if on {
                m.set(j, j, 1.0);
            }
        }
        m
    }

    pub fn columns(&self) -> Vec<usize> {
        (0..self.diag.len()).filter(|&j| self.diag[j]).collect()
    }
}

/// True when every column is selected by exactly one selector.
pub fn selectors_cover(selectors: &[SelectorDiag]) -> bool {
    let Some(first) = selectors.first() else { return false };
    (0..first.diag.len()).all(|j| {
        selectors
            .iter()
            .filter(|s| s.diag.get(j).copied().unwrap_or(false))
            .count()
            == 1
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DnnLayerPartition {
    pub weight_parts: Vec<Dense>,
    pub bias_parts: Vec<Dense>,
    pub selectors: Vec<SelectorDiag>,
}

/// `P` contiguous column blocks: column `j` of `N` goes to block `j·P/N`.
pub fn make_column_partition(w: &Dense, b: &Dense, p: usize) -> Result<DnnLayerPartition> {
    let n = w.cols();
    if b.rows() != 1 || b.cols() != n {
        return Err(Error::Dimension(format!(
            "bias must be 1x{n}, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if p < 1 || p > n {
        return Err(Error::InvalidPartitionCount(p));
    }
    let selectors: Vec<SelectorDiag> = (0..p)
        .map(|part| SelectorDiag {
            diag: (0..n).map(|j| j * p / n == part).collect(),
        })
        .collect();
    let mut weight_parts = Vec::with_capacity(p);
    let mut bias_parts = Vec::with_capacity(p);
    for sel in &selectors {
        let i = sel.matrix();
        weight_parts.push(w.matmul(&i)?);
        bias_parts.push(b.matmul(&i)?);
    }
    Ok(DnnLayerPartition {
        weight_parts,
        bias_parts,
        selectors,
    })
}

/// Unpartitioned `max(xW + b, 0)`.
pub fn relu_dense(x: &Dense, w: &Dense, b: &Dense) -> Result<Dense> {
    Ok(x.matmul(w)?.add(b)?.relu())
}

/// `Σₚ max(xWₚ + bₚ, 0)`, parts evaluated concurrently.
pub fn relu_layer(x: &Dense, layer: &DnnLayerPartition) -> Result<Dense> {
    let outputs = layer
        .weight_parts
        .par_iter()
        .zip(&layer.bias_parts)
        .map(|(w, b)| relu_dense(x, w, b))
        .collect::<Result<Vec<_>>>()?;
    let mut iter = outputs.into_iter();
    let first = iter.next().ok_or(Error::EmptyPartition)?;
    iter.try_fold(first, |acc, y| acc.add(&y))
}
