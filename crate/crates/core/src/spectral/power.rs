//! Shifted power iteration for nonnegative matrices.
//!
//! Adjacency matrices of trees are bipartite, so `-rho` is an eigenvalue and
//! plain power iteration oscillates. Iterating with `M + sigma I`, `sigma` the
//! maximum row sum, makes `rho + sigma` the unique dominant eigenvalue.

use serde::Serialize;

use super::{SpectralError, SquareMatrix, SymMatrix};

pub const MAX_ITERATIONS: usize = 100_000;
/// Stop once successive estimates move by at most this times `max(1, rho)`.
pub const RAYLEIGH_TOLERANCE: f64 = 1e-13;
/// ...and the eigen-residual is below this times `max(1, rho)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-11;

/// Spectral radius with its unit positive eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub radius: f64,
    pub eigenvector: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn residual(mx: &[f64], x: &[f64], lambda: f64) -> f64 {
    mx.iter()
        .zip(x)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Principal eigenpair of a nonnegative irreducible symmetric matrix.
pub fn principal_eigenvector(m: &SymMatrix) -> Result<SpectralResult, SpectralError> {
    if !m.is_nonnegative() {
        return Err(SpectralError::Negative);
    }
    if !m.is_irreducible() {
        return Err(SpectralError::Reducible);
    }
    let n = m.order();
    if n == 1 {
        return Ok(SpectralResult {
            radius: m.get(0, 0),
            eigenvector: vec![1.0],
            iterations: 0,
            residual: 0.0,
        });
    }
    let sigma = m.max_row_sum();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut previous = f64::NAN;
    for it in 1..=MAX_ITERATIONS {
        let mx = m.mul_vec(&x);
        let lambda: f64 = mx.iter().zip(&x).map(|(a, b)| a * b).sum();
        let scale = lambda.abs().max(1.0);
        let r = residual(&mx, &x, lambda);
        if (lambda - previous).abs() <= RAYLEIGH_TOLERANCE * scale
            && r <= RESIDUAL_TOLERANCE * scale
        {
            return Ok(SpectralResult {
                radius: lambda,
                eigenvector: x,
                iterations: it,
                residual: r,
            });
        }
        previous = lambda;
        let mut z: Vec<f64> = mx.iter().zip(&x).map(|(a, b)| a + sigma * b).collect();
        let len = norm(&z);
        z.iter_mut().for_each(|v| *v /= len);
        x = z;
    }
    Err(SpectralError::NoConvergence {
        method: "shifted power iteration",
        iterations: MAX_ITERATIONS,
    })
}

/// Spectral radius of a general nonnegative square matrix by shifted power
/// iteration.
pub fn nonnegative_radius(m: &SquareMatrix) -> Result<f64, SpectralError> {
    if !m.is_nonnegative() {
        return Err(SpectralError::Negative);
    }
    let n = m.order();
    let sigma = m.max_row_sum();
    if sigma == 0.0 {
        return Ok(0.0);
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut previous = f64::NAN;
    for _ in 0..MAX_ITERATIONS {
        let mx = m.mul_vec(&x);
        let lambda: f64 = mx.iter().zip(&x).map(|(a, b)| a * b).sum();
        let scale = lambda.abs().max(1.0);
        if (lambda - previous).abs() <= RAYLEIGH_TOLERANCE * scale
            && residual(&mx, &x, lambda) <= RESIDUAL_TOLERANCE * scale
        {
            return Ok(lambda);
        }
        previous = lambda;
        let mut z: Vec<f64> = mx.iter().zip(&x).map(|(a, b)| a + sigma * b).collect();
        let len = norm(&z);
        z.iter_mut().for_each(|v| *v /= len);
        x = z;
    }
    Err(SpectralError::NoConvergence {
        method: "shifted power iteration",
        iterations: MAX_ITERATIONS,
    })
}
