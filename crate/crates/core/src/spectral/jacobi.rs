//! Cyclic Jacobi eigenvalue solver for dense symmetric matrices.
//!
//! Only eigenvalues are produced; rotations are applied to a private copy of
//! the matrix until the off-diagonal Frobenius norm drops below
//! `OFF_DIAGONAL_TOLERANCE * ||M||_F`.

use super::{SpectralError, SymMatrix};

pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues in descending order.
pub fn eigen_spectrum(m: &SymMatrix) -> Result<Vec<f64>, SpectralError> {
    let n = m.order();
    let mut a = m.data().to_vec();
    let target = OFF_DIAGONAL_TOLERANCE * m.frobenius_norm();

    let mut converged = off_diagonal_norm(&a, n) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                method: "jacobi",
                iterations: sweeps,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a, n) <= target;
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(values)
}

// annihilates a[p][q] with a plane rotation, keeping both triangles in sync
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp - s * (akq + tau * akp);
        let new_kq = akq + s * (akp - tau * akq);
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
}
