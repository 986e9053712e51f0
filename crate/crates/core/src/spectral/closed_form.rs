//! Closed-form spectral radii of `A_f` for stars and double stars, read off
//! their small equitable quotients.

use crate::weight::WeightFunction;

use super::SpectralError;

/// `rho(A_f(S_n)) = f(1, n-1) * sqrt(n-1)`.
pub fn star_radius_closed_form(n: usize, f: &WeightFunction) -> Result<f64, SpectralError> {
    if n < 2 {
        return Err(SpectralError::ClosedFormRange(format!(
            "star needs n >= 2, got {n}"
        )));
    }
    Ok(f.eval_degrees(1, n - 1)? * ((n - 1) as f64).sqrt())
}

/// Largest root of `l^4 - (a+b+c) l^2 + ac` with `a = (d-1) f(1,d)^2`,
/// `b = f(d,n-d)^2`, `c = (n-d-1) f(1,n-d)^2`, i.e. the radius of the 4x4
/// quotient over {leaves of center 1}, {center 1}, {center 2}, {leaves of
/// center 2}.
pub fn double_star_radius_closed_form(
    d: usize,
    n: usize,
    f: &WeightFunction,
) -> Result<f64, SpectralError> {
    if d < 2 || d + 2 > n {
        return Err(SpectralError::ClosedFormRange(format!(
            "double star needs 2 <= d <= n-2, got d={d}, n={n}"
        )));
    }
    let e = n - d;
    let a = (d - 1) as f64 * f.eval_degrees(1, d)?.powi(2);
    let b = f.eval_degrees(d, e)?.powi(2);
    let c = (e - 1) as f64 * f.eval_degrees(1, e)?.powi(2);
    let s = a + b + c;
    // (s^2 - 4ac) = (a - c)^2 + b^2 + 2b(a + c), written to avoid cancellation
    let disc = (a - c).powi(2) + b * b + 2.0 * b * (a + c);
    Ok(((s + disc.sqrt()) / 2.0).sqrt())
}
