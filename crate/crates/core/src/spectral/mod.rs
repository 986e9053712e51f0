//! Spectra of degree-weighted adjacency matrices.
//!
//! Two independent radius algorithms are shipped: a full cyclic Jacobi
//! eigensolver ([`eigen_spectrum`], [`spectral_radius`]) and shifted power
//! iteration ([`principal_eigenvector`]). [`checked_radius`] runs both and
//! insists they agree.

mod closed_form;
mod jacobi;
mod matrix;
mod partition;
mod power;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::weight::{WeightError, WeightFunction};

pub use closed_form::{double_star_radius_closed_form, star_radius_closed_form};
pub use jacobi::eigen_spectrum;
pub use matrix::{adjacency_matrix, build_weighted_adjacency, SquareMatrix, SymMatrix};
pub use partition::{is_equitable, quotient_matrix, Partition, EQUITABLE_TOLERANCE};
pub use power::{nonnegative_radius, principal_eigenvector, SpectralResult};

/// Largest supported matrix order.
pub const MAX_ORDER: usize = 4096;

/// Relative agreement required between the two radius algorithms.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix of order 0")]
    EmptyMatrix,
    #[error("matrix order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("matrix not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix has a negative entry")]
    Negative,
    #[error("matrix is reducible (disconnected support); no positive principal eigenvector")]
    Reducible,
    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("closed form out of range: {0}")]
    ClosedFormRange(String),
    #[error("solvers disagree: jacobi {jacobi}, power iteration {power}")]
    SolverDisagreement { jacobi: f64, power: f64 },
    #[error("matrix dump parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `max |lambda_i|` via the Jacobi spectrum.
pub fn spectral_radius(m: &SymMatrix) -> Result<f64, SpectralError> {
    let spectrum = eigen_spectrum(m)?;
    let top = spectrum[0];
    let bottom = spectrum[spectrum.len() - 1];
    let radius = top.abs().max(bottom.abs());
    debug_assert!(
        !m.is_nonnegative() || (radius - top).abs() <= 1e-9 * radius.max(1.0),
        "nonnegative matrix radius must be its largest eigenvalue"
    );
    Ok(radius)
}

/// `x^T M x` for a unit vector `x`.
pub fn rayleigh(m: &SymMatrix, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != m.order() {
        return Err(SpectralError::DimensionMismatch {
            expected: m.order(),
            got: x.len(),
        });
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(SpectralError::NotUnit(norm));
    }
    Ok(m.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum())
}

/// Radius from both solvers, which must agree within
/// [`CROSS_CHECK_TOLERANCE`] relative. Needs an irreducible matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckedRadius {
    pub jacobi: f64,
    pub power: f64,
}

impl CheckedRadius {
    pub fn value(&self) -> f64 {
        self.jacobi
    }

    pub fn relative_gap(&self) -> f64 {
        (self.jacobi - self.power).abs() / self.jacobi.abs().max(1.0)
    }
}

pub fn checked_radius(m: &SymMatrix) -> Result<CheckedRadius, SpectralError> {
    let jacobi = spectral_radius(m)?;
    let power = principal_eigenvector(m)?.radius;
    let r = CheckedRadius { jacobi, power };
    if r.relative_gap() > CROSS_CHECK_TOLERANCE {
        return Err(SpectralError::SolverDisagreement { jacobi, power });
    }
    Ok(r)
}

/// Cross-checked radius of a possibly reducible nonnegative matrix: both
/// solvers run on every irreducible diagonal block and the largest block
/// radius is returned.
pub fn checked_radius_by_component(m: &SymMatrix) -> Result<CheckedRadius, SpectralError> {
    if !m.is_nonnegative() {
        return Err(SpectralError::Negative);
    }
    let n = m.order();
    let mut label = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        label[s] = id;
        let mut block = vec![s];
        let mut i = 0;
        while i < block.len() {
            let v = block[i];
            for (w, &x) in m.row(v).iter().enumerate() {
                if x != 0.0 && label[w] == usize::MAX {
                    label[w] = id;
                    block.push(w);
                }
            }
            i += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    if blocks.len() == 1 {
        return checked_radius(m);
    }
    let mut best = CheckedRadius {
        jacobi: 0.0,
        power: 0.0,
    };
    for block in &blocks {
        let r = checked_radius(&m.principal_submatrix(block)?)?;
        if r.jacobi > best.jacobi {
            best = r;
        }
    }
    Ok(best)
}

/// `rho(A_f(G))` by Jacobi; works for disconnected graphs too.
pub fn graph_radius(g: &Graph, f: &WeightFunction) -> Result<f64, SpectralError> {
    spectral_radius(&build_weighted_adjacency(g, f)?)
}

/// `rho(A_f(G))` cross-checked between both solvers; `G` must be connected.
pub fn checked_graph_radius(g: &Graph, f: &WeightFunction) -> Result<CheckedRadius, SpectralError> {
    checked_radius(&build_weighted_adjacency(g, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{double_star, path, spider_t1, star};
    use std::f64::consts::PI;

    fn one() -> WeightFunction {
        WeightFunction::constant(1.0).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn weighted_adjacency_entries() {
        let m = build_weighted_adjacency(&star(3).unwrap(), &WeightFunction::sombor()).unwrap();
        assert_eq!(m.get(0, 1), 5f64.sqrt());
        assert_eq!(m.get(2, 0), 5f64.sqrt());
        assert_eq!(m.get(1, 2), 0.0);
        let g = spider_t1();
        assert_eq!(
            build_weighted_adjacency(&g, &one()).unwrap(),
            adjacency_matrix(&g).unwrap()
        );
        let s15 =
            build_weighted_adjacency(&star(15).unwrap(), &WeightFunction::second_zagreb()).unwrap();
        assert!((1..15).all(|v| s15.get(0, v) == 14.0));
        let bad = WeightFunction::custom("x + y - 3").unwrap();
        assert!(matches!(
            build_weighted_adjacency(&path(3).unwrap(), &bad),
            Err(SpectralError::Weight(_))
        ));
    }

    #[test]
    fn small_spectra() {
        let ev = eigen_spectrum(&adjacency_matrix(&path(3).unwrap()).unwrap()).unwrap();
        let r2 = 2f64.sqrt();
        assert!(close(ev[0], r2, 1e-14) && ev[1].abs() < 1e-14 && close(ev[2], -r2, 1e-14));
        let f = WeightFunction::sombor();
        let ev = eigen_spectrum(&build_weighted_adjacency(&path(2).unwrap(), &f).unwrap()).unwrap();
        assert_eq!(ev, vec![f.value(1.0, 1.0), -f.value(1.0, 1.0)]);
        assert_eq!(
            eigen_spectrum(&SymMatrix::zeros(4).unwrap()).unwrap(),
            vec![0.0; 4]
        );
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let err = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert_eq!(err, SpectralError::NotSymmetric { row: 0, col: 1 });
        assert!(matches!(
            SymMatrix::zeros(MAX_ORDER + 1),
            Err(SpectralError::TooLarge(_))
        ));
    }

    #[test]
    fn radius_examples() {
        let p3 = spectral_radius(&adjacency_matrix(&path(3).unwrap()).unwrap()).unwrap();
        assert!(close(p3, 2.0 * (PI / 4.0).cos(), 1e-14));
        let g = WeightFunction::first_gourava();
        let s15 = graph_radius(&star(15).unwrap(), &g).unwrap();
        assert!(close(s15, 29.0 * 14f64.sqrt(), 1e-13));
        let t1 = graph_radius(&spider_t1(), &WeightFunction::sombor()).unwrap();
        assert!(close(t1, 44f64.sqrt(), 1e-13));
    }

    #[test]
    fn principal_vector_of_star() {
        for n in 3..12 {
            let m = build_weighted_adjacency(&star(n).unwrap(), &WeightFunction::sombor()).unwrap();
            let r = principal_eigenvector(&m).unwrap();
            let x = &r.eigenvector;
            assert!((1..n).all(|v| (x[v] - x[1]).abs() < 1e-12));
            // 2x2 quotient: rho x_leaf = f x_c, rho x_c = (n-1) f x_leaf
            assert!(close(x[0] / x[1], ((n - 1) as f64).sqrt(), 1e-10));
            assert!(r.residual <= 1e-10 * r.radius.max(1.0));
        }
        let p2 = principal_eigenvector(&adjacency_matrix(&path(2).unwrap()).unwrap()).unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(p2.eigenvector[0], h, 1e-13) && close(p2.eigenvector[1], h, 1e-13));
    }

    #[test]
    fn principal_vector_path_symmetry() {
        for n in 2..20 {
            let m =
                build_weighted_adjacency(&path(n).unwrap(), &WeightFunction::forgotten()).unwrap();
            let x = principal_eigenvector(&m).unwrap().eigenvector;
            for i in 0..n {
                assert!((x[i] - x[n - 1 - i]).abs() < 1e-9, "n={n} i={i}");
                assert!(x[i] > 0.0);
            }
        }
    }

    #[test]
    fn principal_vector_refuses_reducible() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let m = adjacency_matrix(&g).unwrap();
        assert_eq!(principal_eigenvector(&m), Err(SpectralError::Reducible));
        let neg = SymMatrix::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
        assert_eq!(principal_eigenvector(&neg), Err(SpectralError::Negative));
    }

    #[test]
    fn rayleigh_quotients() {
        let m = build_weighted_adjacency(&star(5).unwrap(), &WeightFunction::sombor()).unwrap();
        let r = principal_eigenvector(&m).unwrap();
        assert!(close(rayleigh(&m, &r.eigenvector).unwrap(), r.radius, 1e-9));
        let mut e1 = vec![0.0; 5];
        e1[0] = 1.0;
        assert_eq!(rayleigh(&m, &e1).unwrap(), 0.0);
        assert!(matches!(
            rayleigh(&m, &[1.0; 5]),
            Err(SpectralError::NotUnit(_))
        ));
        assert!(matches!(
            rayleigh(&m, &[1.0]),
            Err(SpectralError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn equitable_partitions() {
        let f = WeightFunction::sombor();
        let t1 = build_weighted_adjacency(&spider_t1(), &f).unwrap();
        let p = Partition::new(7, vec![vec![0], vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(is_equitable(&t1, &p, EQUITABLE_TOLERANCE).unwrap());
        let q = quotient_matrix(&t1, &p).unwrap();
        let (a, b) = (f.value(2.0, 3.0), f.value(1.0, 2.0));
        let expect = [[0.0, 3.0 * a, 0.0], [a, 0.0, b], [0.0, b, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((q.get(i, j) - expect[i][j]).abs() < 1e-12);
            }
        }

        let p4 = build_weighted_adjacency(&path(4).unwrap(), &f).unwrap();
        let ends = Partition::new(4, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert!(is_equitable(&p4, &ends, EQUITABLE_TOLERANCE).unwrap());
        let lopsided = Partition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert!(!is_equitable(&p4, &lopsided, EQUITABLE_TOLERANCE).unwrap());

        let whole = Partition::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let q = quotient_matrix(&p4, &whole).unwrap();
        assert_eq!(q.order(), 1);
        let avg = (0..4).map(|i| p4.row(i).iter().sum::<f64>()).sum::<f64>() / 4.0;
        assert!((q.get(0, 0) - avg).abs() < 1e-12);
    }

    #[test]
    fn star_quotient() {
        let f = WeightFunction::first_gourava();
        for n in 3..10 {
            let m = build_weighted_adjacency(&star(n).unwrap(), &f).unwrap();
            let p = Partition::new(n, vec![vec![0], (1..n).collect()]).unwrap();
            let q = quotient_matrix(&m, &p).unwrap();
            let w = f.value(1.0, (n - 1) as f64);
            assert_eq!(q.rows(), vec![vec![0.0, (n - 1) as f64 * w], vec![w, 0.0]]);
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(3, vec![vec![0], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1, 5]]).is_err());
        let m = SymMatrix::zeros(4).unwrap();
        let p = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(is_equitable(&m, &p, 1e-9).is_err());
    }

    #[test]
    fn closed_forms() {
        let s = WeightFunction::sombor();
        assert!(close(
            star_radius_closed_form(5, &s).unwrap(),
            2.0 * 17f64.sqrt(),
            1e-14
        ));
        let xy = WeightFunction::second_zagreb();
        assert!(close(
            star_radius_closed_form(15, &xy).unwrap(),
            14.0 * 14f64.sqrt(),
            1e-14
        ));
        assert_eq!(star_radius_closed_form(2, &s).unwrap(), s.value(1.0, 1.0));
        assert!(star_radius_closed_form(1, &s).is_err());

        assert!((double_star_radius_closed_form(2, 15, &xy).unwrap() - 52.009).abs() < 1e-3);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(
            double_star_radius_closed_form(2, 4, &one()).unwrap(),
            golden,
            1e-14
        ));
        assert!(double_star_radius_closed_form(1, 6, &xy).is_err());
        assert!(double_star_radius_closed_form(5, 6, &xy).is_err());
        for n in 4..16 {
            for d in 2..=n - 2 {
                let g = double_star(d, n).unwrap();
                let full = graph_radius(&g, &xy).unwrap();
                assert!(close(
                    double_star_radius_closed_form(d, n, &xy).unwrap(),
                    full,
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn dump_roundtrip() {
        let m = build_weighted_adjacency(&spider_t1(), &WeightFunction::p_sombor(3.0).unwrap())
            .unwrap();
        let text = m.to_dump();
        assert!(text.starts_with("7\n"));
        assert_eq!(SymMatrix::parse_dump(&text).unwrap(), m);
        assert!(SymMatrix::parse_dump("2\n0 1\n").is_err());
        assert!(SymMatrix::parse_dump("2\n0 1\n2 0\n").is_err());
    }

    #[test]
    fn componentwise_radius() {
        // K_2 plus a disjoint P_3
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let m = adjacency_matrix(&g).unwrap();
        let r = checked_radius_by_component(&m).unwrap();
        assert!(close(r.value(), 2f64.sqrt(), 1e-13));
        assert!(close(r.value(), spectral_radius(&m).unwrap(), 1e-13));
        let isolated = adjacency_matrix(&Graph::new(3).unwrap()).unwrap();
        assert_eq!(checked_radius_by_component(&isolated).unwrap().value(), 0.0);
    }

    #[test]
    fn solvers_agree_on_fixtures() {
        let f = WeightFunction::first_hyper_gourava();
        for g in [
            path(9).unwrap(),
            star(9).unwrap(),
            spider_t1(),
            double_star(4, 9).unwrap(),
        ] {
            let r = checked_graph_radius(&g, &f).unwrap();
            assert!(r.relative_gap() <= CROSS_CHECK_TOLERANCE);
        }
    }
}
