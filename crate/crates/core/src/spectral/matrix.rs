use std::fmt::Write as _;

use crate::graph::Graph;
use crate::weight::WeightFunction;

use super::{SpectralError, MAX_ORDER};

/// Dense real symmetric matrix, row-major. Both triangles are always written
/// together so `get(i, j) == get(j, i)` holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Result<Self, SpectralError> {
        if order == 0 {
            return Err(SpectralError::EmptyMatrix);
        }
        if order > MAX_ORDER {
            return Err(SpectralError::TooLarge(order));
        }
        Ok(Self {
            order,
            data: vec![0.0; order * order],
        })
    }

    /// Builds from explicit rows, rejecting anything not exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        let mut m = Self::zeros(n)?;
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(SpectralError::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v.to_bits() != rows[j][i].to_bits() {
                    return Err(SpectralError::NotSymmetric { row: i, col: j });
                }
                m.data[i * n + j] = v;
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_row_sum(&self) -> f64 {
        (0..self.order)
            .map(|i| self.row(i).iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    /// Whether the nonzero pattern is a connected graph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for (j, &v) in self.row(i).iter().enumerate() {
                if v != 0.0 && !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// Rows and columns `keep`, in that order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self, SpectralError> {
        let mut m = Self::zeros(keep.len())?;
        for (a, &i) in keep.iter().enumerate() {
            if i >= self.order {
                return Err(SpectralError::DimensionMismatch {
                    expected: self.order,
                    got: i,
                });
            }
            for (b, &j) in keep.iter().enumerate() {
                m.data[a * keep.len() + b] = self.get(i, j);
            }
        }
        Ok(m)
    }

    /// Debug dump: order line, then each row with 17 significant digits.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", row.join(" ")).expect("write to string");
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self, SpectralError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |reason: &str| SpectralError::Parse(reason.to_string());
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("missing order line"))?
            .trim()
            .parse()
            .map_err(|_| bad("order is not an integer"))?;
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|_| bad("bad matrix entry")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != n {
            return Err(bad("row count does not match order"));
        }
        Self::from_rows(&rows)
    }
}

/// General dense square matrix; quotient matrices land here since they need
/// not be symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        if n == 0 {
            return Err(SpectralError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(SpectralError::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { order: n, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_row_sum(&self) -> f64 {
        (0..self.order)
            .map(|i| self.row(i).iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }
}

/// `A_f(G)`: entry `(i, j)` is `f(d_i, d_j)` on edges and zero elsewhere.
pub fn build_weighted_adjacency(g: &Graph, f: &WeightFunction) -> Result<SymMatrix, SpectralError> {
    let mut m = SymMatrix::zeros(g.order())?;
    let degrees = g.degrees();
    for (u, v) in g.edges() {
        m.set(u, v, f.eval_degrees(degrees[u], degrees[v])?);
    }
    Ok(m)
}

/// Plain adjacency matrix `A(G)`.
pub fn adjacency_matrix(g: &Graph) -> Result<SymMatrix, SpectralError> {
    let mut m = SymMatrix::zeros(g.order())?;
    for (u, v) in g.edges() {
        m.set(u, v, 1.0);
    }
    Ok(m)
}
