//! Experiment drivers. Each run returns an [`ExperimentReport`] whose rows
//! carry everything needed to recompute them.

mod report;
pub mod sample;

use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::enumeration::{double_star_chain, free_trees, ChainShape, EnumerationError};
use crate::graph::{double_star, path, star, Graph, GraphError};
use crate::spectral::{
    build_weighted_adjacency, checked_graph_radius, checked_radius_by_component,
    double_star_radius_closed_form, star_radius_closed_form, SpectralError,
};
use crate::transforms::{kelmans, TransformError};
use crate::weight::{WeightError, WeightFunction, DEFAULT_DELTA};

pub use report::{format_significant, Cell, ExperimentReport, Row, Status, Summary};

/// Half-width of the window around each published table value.
pub const TABLE1_TOLERANCE: f64 = 0.1;
/// Relative agreement between a computed radius and its closed form.
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-8;
/// Smallest gap that counts as a strict uniqueness margin in scans.
pub const MARGIN_TOLERANCE: f64 = 1e-9;
/// Relative slack for "unchanged" radii and path bounds.
pub const EQUALITY_TOLERANCE: f64 = 1e-10;
/// Connectivity retries per Erdős–Rényi trial.
pub const GNP_RETRIES: usize = 100;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    BadRange(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("worker pool: {0}")]
    Pool(String),
}

fn param(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn expected_to_fail(f: &WeightFunction) -> Result<bool, HarnessError> {
    Ok(!f.is_restricted(DEFAULT_DELTA)?)
}

/// `P_n`, `S_n` or `S_{a,b}` when the tree has one of those shapes,
/// otherwise its canonical form.
pub fn tree_label(g: &Graph) -> String {
    let n = g.order();
    if g.max_degree() <= 2 && g.is_tree() {
        return format!("P_{n}");
    }
    if g.is_tree() && g.max_degree() == n - 1 {
        return format!("S_{n}");
    }
    if g.is_tree() {
        let inner: Vec<usize> = (0..n).filter(|&v| g.neighbors(v).len() > 1).collect();
        if let [a, b] = inner[..] {
            let (da, db) = (g.neighbors(a).len(), g.neighbors(b).len());
            return format!("S_{{{},{}}}", da.min(db), da.max(db));
        }
        if let Ok(form) = g.tree_canonical_form() {
            return form.0;
        }
    }
    g.to_text().replace('\n', ";")
}

struct Table1Row {
    name: &'static str,
    f: fn() -> WeightFunction,
    published: [f64; 7],
    bold: usize,
}

fn table1_rows() -> [Table1Row; 5] {
    [
        Table1Row {
            name: "xy",
            f: WeightFunction::second_zagreb,
            published: [52.4, 52.0, 53.7, 56.4, 58.9, 60.9, 61.9],
            bold: 6,
        },
        Table1Row {
            name: "(xy)^2",
            f: WeightFunction::second_hyper_zagreb,
            published: [733.4, 894.3, 1381.3, 1973.6, 2518.4, 2926.1, 3142.9],
            bold: 6,
        },
        Table1Row {
            name: "x+y+xy",
            f: WeightFunction::first_gourava,
            published: [108.5, 102.1, 97.5, 94.2, 91.9, 90.5, 89.9],
            bold: 0,
        },
        Table1Row {
            name: "(x+y)xy",
            f: WeightFunction::second_gourava,
            published: [785.8, 741.4, 747.9, 781.5, 821.2, 853.8, 871.7],
            bold: 6,
        },
        Table1Row {
            name: "(x+y+xy)^2",
            f: WeightFunction::first_hyper_gourava,
            published: [3146.7, 3033.7, 3326.4, 3864.2, 4433.3, 4883.3, 5127.7],
            bold: 6,
        },
    ]
}

/// Star first, then double stars from the most unbalanced to the most
/// balanced, all of order 15.
fn table1_shapes() -> Vec<ChainShape> {
    let mut shapes = vec![ChainShape::Star { n: 15 }];
    shapes.extend((2..=7).map(|d| ChainShape::DoubleStar { d, n: 15 }));
    shapes
}

fn closed_form(shape: ChainShape, f: &WeightFunction) -> Result<f64, SpectralError> {
    match shape {
        ChainShape::Star { n } => star_radius_closed_form(n, f),
        ChainShape::DoubleStar { d, n } => double_star_radius_closed_form(d, n, f),
    }
}

/// Recomputes the 35 published radii of order-15 stars and double stars.
pub fn run_table1() -> Result<ExperimentReport, HarnessError> {
    let mut report = ExperimentReport::new(
        "table1",
        vec![
            param("n", 15),
            param("tolerance", format_significant(TABLE1_TOLERANCE, 6)),
            param(
                "closed_form_tolerance",
                format_significant(CLOSED_FORM_TOLERANCE, 6),
            ),
        ],
        &[
            "function",
            "tree",
            "rho",
            "published",
            "deviation",
            "closed_form",
            "row_max",
            "published_max",
        ],
    );
    let shapes = table1_shapes();
    let graphs: Vec<Graph> = shapes.iter().map(ChainShape::graph).collect();
    let mut worst: f64 = 0.0;
    for row in table1_rows() {
        let f = (row.f)();
        let mut rhos = Vec::with_capacity(shapes.len());
        for g in &graphs {
            rhos.push(checked_graph_radius(g, &f)?.value());
        }
        let argmax = (0..rhos.len())
            .max_by(|&a, &b| rhos[a].total_cmp(&rhos[b]))
            .expect("seven columns");
        for (j, &shape) in shapes.iter().enumerate() {
            let cf = closed_form(shape, &f)?;
            let deviation = rhos[j] - row.published[j];
            worst = worst.max(deviation.abs());
            let ok = deviation.abs() <= TABLE1_TOLERANCE
                && relative(rhos[j], cf) <= CLOSED_FORM_TOLERANCE
                && (j == argmax) == (j == row.bold);
            let mark = |b: bool| Cell::text(if b { "yes" } else { "no" });
            report.push(
                format!("{} @ {}", row.name, shape),
                vec![
                    Cell::text(row.name),
                    Cell::text(shape.to_string()),
                    Cell::Real(rhos[j]),
                    Cell::Real(row.published[j]),
                    Cell::Real(deviation),
                    Cell::Real(cf),
                    mark(j == argmax),
                    mark(j == row.bold),
                ],
                Status::from_bool(ok),
            );
        }
    }
    report.stat("max_deviation", format_significant(worst, 6));
    report.finish(false);
    Ok(report)
}

/// Which trees an extremal scan ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFamily {
    AllTrees,
    DoubleStars,
}

struct Ranked {
    rho: f64,
    form: String,
    label: String,
    gap: f64,
}

fn rank(g: &Graph, f: &WeightFunction) -> Result<Ranked, HarnessError> {
    let r = checked_graph_radius(g, f)?;
    Ok(Ranked {
        rho: r.value(),
        form: g.tree_canonical_form()?.0,
        label: tree_label(g),
        gap: r.relative_gap(),
    })
}

/// Exhaustive extremal-tree scan: for every order in range, the trees of
/// smallest and largest radius and their margins over the runners-up.
pub fn run_extremal_scan(
    f: &WeightFunction,
    n_lo: usize,
    n_hi: usize,
    family: ScanFamily,
    jobs: Option<usize>,
) -> Result<ExperimentReport, HarnessError> {
    let min_n = match family {
        ScanFamily::AllTrees => 1,
        ScanFamily::DoubleStars => 4,
    };
    if n_lo < min_n || n_lo > n_hi || n_hi > crate::enumeration::MAX_ENUMERATION_ORDER {
        return Err(HarnessError::BadRange(format!(
            "scan range {n_lo}..={n_hi} outside {min_n}..={}",
            crate::enumeration::MAX_ENUMERATION_ORDER
        )));
    }
    let unrestricted = expected_to_fail(f)?;
    let family_name = match family {
        ScanFamily::AllTrees => "all-trees",
        ScanFamily::DoubleStars => "double-stars",
    };
    let mut report = ExperimentReport::new(
        "scan",
        vec![
            param("f", f.label()),
            param("n_lo", n_lo),
            param("n_hi", n_hi),
            param("family", family_name),
            param("margin_tolerance", format_significant(MARGIN_TOLERANCE, 6)),
            param("restricted", !unrestricted),
        ],
        &[
            "n",
            "trees",
            "argmin",
            "rho_min",
            "margin_min",
            "argmax",
            "rho_max",
            "margin_max",
            "solver_gap",
        ],
    );
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;

    for n in n_lo..=n_hi {
        let mut ranked: Vec<Ranked> = match family {
            ScanFamily::AllTrees => pool.install(|| {
                free_trees(n)?
                    .par_bridge()
                    .map(|g| rank(&g, f))
                    .collect::<Result<Vec<_>, HarnessError>>()
            })?,
            ScanFamily::DoubleStars => double_star_chain(n)?
                .iter()
                .map(|(_, g)| rank(g, f))
                .collect::<Result<Vec<_>, _>>()?,
        };
        ranked.sort_by(|a, b| a.rho.total_cmp(&b.rho).then_with(|| a.form.cmp(&b.form)));
        let count = ranked.len();
        let first = &ranked[0];
        let last = &ranked[count - 1];
        let (margin_min, margin_max) = if count > 1 {
            (ranked[1].rho - first.rho, last.rho - ranked[count - 2].rho)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let expected_min = match family {
            ScanFamily::AllTrees => path(n)?,
            ScanFamily::DoubleStars => double_star(n / 2, n)?,
        };
        let expected_max = if n < 2 { path(n)? } else { star(n)? };
        let ok = first.form == expected_min.tree_canonical_form()?.0
            && last.form == expected_max.tree_canonical_form()?.0
            && margin_min > MARGIN_TOLERANCE
            && margin_max > MARGIN_TOLERANCE;
        let margin_cell = |m: f64| {
            if m.is_finite() {
                Cell::Real(m)
            } else {
                Cell::text("-")
            }
        };
        let solver_gap = ranked.iter().map(|r| r.gap).fold(0.0, f64::max);
        report.push(
            format!("n={n}"),
            vec![
                Cell::int(n),
                Cell::int(count),
                Cell::text(first.label.clone()),
                Cell::Real(first.rho),
                margin_cell(margin_min),
                Cell::text(last.label.clone()),
                Cell::Real(last.rho),
                margin_cell(margin_max),
                Cell::Real(solver_gap),
            ],
            Status::from_bool(ok),
        );
    }
    report.finish(unrestricted);
    Ok(report)
}

/// Random Kelmans applications on connected graphs (even trials) and trees
/// (odd trials). Nontrivial moves must raise the radius; trivial ones must
/// leave it unchanged.
pub fn run_kelmans_check(
    f: &WeightFunction,
    n_lo: usize,
    n_hi: usize,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::BadRange(
            "kelmans check needs at least one trial".into(),
        ));
    }
    if n_lo < 3 || n_lo > n_hi || n_hi > crate::spectral::MAX_ORDER {
        return Err(HarnessError::BadRange(format!(
            "kelmans range {n_lo}..={n_hi} needs 3 <= n_lo <= n_hi"
        )));
    }
    let unrestricted = expected_to_fail(f)?;
    let mut report = ExperimentReport::new(
        "kelmans",
        vec![
            param("f", f.label()),
            param("n_lo", n_lo),
            param("n_hi", n_hi),
            param("trials", trials),
            param("seed", seed),
            param("rng", "chacha8, stream = trial index"),
            param("gnp_p_range", "[ln n / n, 0.6]"),
            param("gnp_retries", GNP_RETRIES),
            param(
                "equality_tolerance",
                format_significant(EQUALITY_TOLERANCE, 6),
            ),
        ],
        &[
            "n",
            "kind",
            "p",
            "v1",
            "v2",
            "trivial",
            "rho_before",
            "rho_after",
            "gap",
        ],
    );
    let (mut nontrivial, mut trivial, mut skipped, mut violations) =
        (0usize, 0usize, 0usize, 0usize);
    let mut min_gap = f64::INFINITY;
    let mut max_trivial_change: f64 = 0.0;
    for t in 0..trials {
        let mut rng = sample::trial_rng(seed, t as u64);
        let n = rand::Rng::random_range(&mut rng, n_lo..=n_hi);
        let label = format!("trial {t:04}");
        let (g, kind, p) = if t % 2 == 0 {
            match sample::random_connected_gnp(&mut rng, n, GNP_RETRIES) {
                Some((g, p)) => (g, "gnp", Cell::Real(p)),
                None => {
                    skipped += 1;
                    let mut cells = vec![Cell::int(n), Cell::text("gnp"), Cell::text("-")];
                    cells.extend((0..6).map(|_| Cell::text("-")));
                    report.push(label, cells, Status::Skipped);
                    continue;
                }
            }
        } else {
            (sample::random_tree(&mut rng, n), "tree", Cell::text("-"))
        };
        let (v1, v2) = sample::random_pair(&mut rng, n);
        let before = checked_graph_radius(&g, f)?.value();
        let out = kelmans(&g, v1, v2)?;
        let after = checked_radius_by_component(&build_weighted_adjacency(&out.graph, f)?)?.value();
        let gap = after - before;
        let is_trivial = out.context.is_trivial();
        let ok = if is_trivial {
            trivial += 1;
            max_trivial_change = max_trivial_change.max(gap.abs());
            gap.abs() <= EQUALITY_TOLERANCE * before.max(1.0)
        } else {
            nontrivial += 1;
            min_gap = min_gap.min(gap);
            gap > EQUALITY_TOLERANCE
        };
        if !ok {
            violations += 1;
        }
        report.push(
            label,
            vec![
                Cell::int(n),
                Cell::text(kind),
                p,
                Cell::int(v1),
                Cell::int(v2),
                Cell::text(if is_trivial { "yes" } else { "no" }),
                Cell::Real(before),
                Cell::Real(after),
                Cell::Real(gap),
            ],
            Status::from_bool(ok),
        );
    }
    report.stat("nontrivial", nontrivial);
    report.stat("trivial", trivial);
    report.stat("skipped", skipped);
    report.stat("violations", violations);
    report.stat(
        "min_gap",
        if min_gap.is_finite() {
            format_significant(min_gap, 6)
        } else {
            "-".into()
        },
    );
    report.stat(
        "max_trivial_change",
        format_significant(max_trivial_change, 6),
    );
    report.finish(unrestricted);
    Ok(report)
}

/// Radii along the double-star chain of order `n`, checked for strict
/// increase and against the closed forms.
pub fn run_double_star_chain(
    f: &WeightFunction,
    n: usize,
) -> Result<ExperimentReport, HarnessError> {
    let chain = double_star_chain(n)?;
    let unrestricted = expected_to_fail(f)?;
    let mut report = ExperimentReport::new(
        "chain",
        vec![
            param("f", f.label()),
            param("n", n),
            param(
                "closed_form_tolerance",
                format_significant(CLOSED_FORM_TOLERANCE, 6),
            ),
            param("margin_tolerance", format_significant(MARGIN_TOLERANCE, 6)),
            param("restricted", !unrestricted),
        ],
        &["tree", "rho", "closed_form", "relative_error", "step"],
    );
    let mut prev: Option<f64> = None;
    for (shape, g) in &chain {
        let rho = checked_graph_radius(g, f)?.value();
        let cf = closed_form(*shape, f)?;
        let err = relative(rho, cf);
        let step = prev.map(|p| rho - p);
        let ok = err <= CLOSED_FORM_TOLERANCE && step.is_none_or(|s| s > MARGIN_TOLERANCE);
        report.push(
            shape.to_string(),
            vec![
                Cell::text(shape.to_string()),
                Cell::Real(rho),
                Cell::Real(cf),
                Cell::Real(err),
                step.map_or(Cell::text("-"), Cell::Real),
            ],
            Status::from_bool(ok),
        );
        prev = Some(rho);
    }
    report.finish(unrestricted);
    Ok(report)
}

/// `rho(A_f(P_n)) <= 2 f(2,2) cos(pi/(n+1))` for `n = 3..=n_hi`, plus the
/// `S_5` identity `rho = 2 f(1,4)`.
pub fn run_path_bounds(f: &WeightFunction, n_hi: usize) -> Result<ExperimentReport, HarnessError> {
    if n_hi < 3 {
        return Err(HarnessError::BadRange(format!(
            "path bounds need n_hi >= 3, got {n_hi}"
        )));
    }
    let not_increasing = !f.check_increasing(DEFAULT_DELTA)?.passed();
    let mut report = ExperimentReport::new(
        "pathbounds",
        vec![
            param("f", f.label()),
            param("n_hi", n_hi),
            param("tolerance", format_significant(EQUALITY_TOLERANCE, 6)),
        ],
        &["rho", "bound", "slack"],
    );
    let f22 = f.eval(2.0, 2.0)?;
    for n in 3..=n_hi {
        let rho = checked_graph_radius(&path(n)?, f)?.value();
        let bound = 2.0 * f22 * (PI / (n + 1) as f64).cos();
        let slack = bound - rho;
        report.push(
            format!("P_{n}"),
            vec![Cell::Real(rho), Cell::Real(bound), Cell::Real(slack)],
            Status::from_bool(slack >= -EQUALITY_TOLERANCE * bound.max(1.0)),
        );
    }
    let rho = checked_graph_radius(&star(5)?, f)?.value();
    let target = 2.0 * f.eval(1.0, 4.0)?;
    report.push(
        "S_5",
        vec![
            Cell::Real(rho),
            Cell::Real(target),
            Cell::Real(target - rho),
        ],
        Status::from_bool(relative(rho, target) <= EQUALITY_TOLERANCE),
    );
    report.finish(not_increasing);
    Ok(report)
}

/// Grid property checks, compared with the catalog's declared flags where
/// the function has them.
pub fn run_props(f: &WeightFunction, delta: u32) -> Result<ExperimentReport, HarnessError> {
    let props = f.properties(delta)?;
    let declared = f.declared_flags();
    let mut report = ExperimentReport::new(
        "props",
        vec![
            param("f", f.label()),
            param("delta", delta),
            param(
                "grid_tolerance",
                format_significant(crate::weight::GRID_TOLERANCE, 6),
            ),
        ],
        &["computed", "declared", "detail"],
    );
    for (name, verdict) in props.lines() {
        let claim = declared.and_then(|d| match name {
            "increasing" => Some(d.increasing),
            "convex" => Some(d.convex),
            "restricted" => Some(d.restricted),
            _ => None,
        });
        let ok = claim.is_none_or(|c| c == verdict.passed());
        let word = |b: bool| if b { "pass" } else { "fail" };
        report.push(
            name,
            vec![
                Cell::text(word(verdict.passed())),
                Cell::text(claim.map_or("-", word)),
                Cell::text(verdict.to_string()),
            ],
            Status::from_bool(ok),
        );
    }
    report.finish(false);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::caterpillar;

    #[test]
    fn labels() {
        assert_eq!(tree_label(&path(6).unwrap()), "P_6");
        assert_eq!(tree_label(&star(6).unwrap()), "S_6");
        assert_eq!(tree_label(&double_star(4, 9).unwrap()), "S_{4,5}");
        let cat = caterpillar(3, &[1, 1, 1]).unwrap();
        assert!(tree_label(&cat).starts_with('('));
    }

    #[test]
    fn table1_passes() {
        let r = run_table1().unwrap();
        assert_eq!(r.rows.len(), 35);
        assert!(r.passed(), "{}", r.to_csv());
        let first = &r.rows[0];
        assert_eq!(first.label, "xy @ S_15");
        match first.cells[2] {
            Cell::Real(v) => assert!((v - 52.38).abs() < 0.01),
            _ => panic!("rho cell"),
        }
    }

    #[test]
    fn scan_sombor_small() {
        let r = run_extremal_scan(
            &WeightFunction::sombor(),
            3,
            8,
            ScanFamily::AllTrees,
            Some(2),
        )
        .unwrap();
        assert!(r.passed(), "{}", r.to_csv());
        assert_eq!(r.rows.len(), 6);
    }

    #[test]
    fn scan_xy_double_stars() {
        let r = run_extremal_scan(
            &WeightFunction::second_zagreb(),
            15,
            15,
            ScanFamily::DoubleStars,
            None,
        )
        .unwrap();
        assert_eq!(r.summary.verdict, Status::ExpectedFail);
        assert_eq!(r.rows[0].cells[5], Cell::text("S_{7,8}"));
    }

    #[test]
    fn scan_is_deterministic_across_pool_sizes() {
        let f = WeightFunction::forgotten();
        let a = run_extremal_scan(&f, 9, 10, ScanFamily::AllTrees, Some(1)).unwrap();
        let b = run_extremal_scan(&f, 9, 10, ScanFamily::AllTrees, Some(4)).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn kelmans_sombor() {
        let f = WeightFunction::sombor();
        let r = run_kelmans_check(&f, 10, 10, 60, 42).unwrap();
        assert!(r.passed(), "{}", r.to_csv());
        assert_eq!(
            r.to_csv(),
            run_kelmans_check(&f, 10, 10, 60, 42).unwrap().to_csv()
        );
    }

    #[test]
    fn chains() {
        assert!(run_double_star_chain(&WeightFunction::sombor(), 15)
            .unwrap()
            .passed());
        let xy = run_double_star_chain(&WeightFunction::second_zagreb(), 15).unwrap();
        assert_eq!(xy.summary.verdict, Status::ExpectedFail);
        let fz = run_double_star_chain(&WeightFunction::first_zagreb(), 6).unwrap();
        let labels: Vec<_> = fz.rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["S_{3,3}", "S_{2,4}", "S_6"]);
        assert!(fz.passed());
    }

    #[test]
    fn path_bounds() {
        assert!(run_path_bounds(&WeightFunction::sombor(), 30)
            .unwrap()
            .passed());
        let r = run_path_bounds(&WeightFunction::forgotten(), 5).unwrap();
        let s5 = r.rows.last().unwrap();
        assert_eq!(s5.cells[1], Cell::Real(34.0));
        assert!(r.passed());
    }

    #[test]
    fn props_agree_with_declarations() {
        assert!(run_props(&WeightFunction::second_zagreb(), 50)
            .unwrap()
            .passed());
        assert!(run_props(&WeightFunction::sombor(), 50).unwrap().passed());
    }
}
