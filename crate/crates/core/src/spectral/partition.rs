use super::{SpectralError, SquareMatrix, SymMatrix};

/// Default absolute tolerance on block row sums.
pub const EQUITABLE_TOLERANCE: f64 = 1e-9;

/// Ordered blocks of vertex indices, disjoint and covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self, SpectralError> {
        let invalid = |reason: String| Err(SpectralError::InvalidPartition(reason));
        let mut owner = vec![None; order];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return invalid(format!("block {b} is empty"));
            }
            for &v in block {
                if v >= order {
                    return invalid(format!("index {v} out of range for order {order}"));
                }
                if let Some(prev) = owner[v].replace(b) {
                    return invalid(format!("index {v} in blocks {prev} and {b}"));
                }
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return invalid(format!("index {v} not covered"));
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn order(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn check_fits(&self, m: &SymMatrix) -> Result<(), SpectralError> {
        if self.order() != m.order() {
            return Err(SpectralError::InvalidPartition(format!(
                "partition covers {} indices, matrix has order {}",
                self.order(),
                m.order()
            )));
        }
        Ok(())
    }
}

fn block_row_sum(m: &SymMatrix, row: usize, cols: &[usize]) -> f64 {
    cols.iter().map(|&j| m.get(row, j)).sum()
}

/// Every block `(i, j)` has all its row sums within `tol` of each other.
pub fn is_equitable(m: &SymMatrix, p: &Partition, tol: f64) -> Result<bool, SpectralError> {
    p.check_fits(m)?;
    for rows in p.blocks() {
        for cols in p.blocks() {
            let sums: Vec<f64> = rows.iter().map(|&r| block_row_sum(m, r, cols)).collect();
            let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi - lo > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `b_ij` = average row sum of block `(i, j)`.
pub fn quotient_matrix(m: &SymMatrix, p: &Partition) -> Result<SquareMatrix, SpectralError> {
    p.check_fits(m)?;
    let rows: Vec<Vec<f64>> = p
        .blocks()
        .iter()
        .map(|rows| {
            p.blocks()
                .iter()
                .map(|cols| {
                    rows.iter().map(|&r| block_row_sum(m, r, cols)).sum::<f64>() / rows.len() as f64
                })
                .collect()
        })
        .collect();
    SquareMatrix::from_rows(&rows)
}
