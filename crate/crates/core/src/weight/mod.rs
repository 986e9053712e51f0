//! Symmetric degree-based weight functions `f(x, y)`.
//!
//! The catalog holds the eleven named indices used throughout the crate: six
//! that satisfy the restricted condition (increasing and convex in `x`, and not
//! smaller on more unbalanced splits of a fixed sum) and five that are only
//! increasing and convex. Properties are checked on the integer grid
//! `1..=delta`, since only integer degrees ever reach a weight function.

mod expr;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub use expr::{Expr, ExprError};

/// Slack for non-strict comparisons on the grid.
pub const GRID_TOLERANCE: f64 = 1e-12;

/// Default grid bound for property checks.
pub const DEFAULT_DELTA: u32 = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("weight function arguments must be positive, got ({0}, {1})")]
    NonPositiveArgument(f64, f64),
    #[error("{name}({x}, {y}) = {value} is not a finite positive weight")]
    NonPositiveValue {
        name: String,
        x: f64,
        y: f64,
        value: f64,
    },
    #[error("invalid parameter {param} = {value} for {name}: {reason}")]
    BadParameter {
        name: &'static str,
        param: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("unknown weight function '{0}'")]
    Unknown(String),
    #[error("custom function is not symmetric: f({x},{y}) = {fxy} but f({y},{x}) = {fyx}")]
    NotSymmetric { x: u32, y: u32, fxy: f64, fyx: f64 },
    #[error("grid bound {delta} too small for {check} (need at least {min})")]
    DeltaTooSmall {
        check: &'static str,
        delta: u32,
        min: u32,
    },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    FirstZagreb,
    FirstHyperZagreb,
    GeneralSumConnectivity { alpha: f64 },
    Forgotten,
    Sombor,
    PSombor { p: f64 },
    SecondZagreb,
    SecondHyperZagreb,
    FirstGourava,
    SecondGourava,
    FirstHyperGourava,
    Constant(f64),
    Custom { src: String, expr: Expr },
}

/// Properties claimed by a catalog entry, cross-checked by the grid checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeclaredFlags {
    pub increasing: bool,
    pub convex: bool,
    pub restricted: bool,
}

const RESTRICTED: DeclaredFlags = DeclaredFlags {
    increasing: true,
    convex: true,
    restricted: true,
};

const UNRESTRICTED: DeclaredFlags = DeclaredFlags {
    increasing: true,
    convex: true,
    restricted: false,
};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    name: &'static str,
    kind: Kind,
    declared: Option<DeclaredFlags>,
}

fn pow(base: f64, exp: f64) -> f64 {
    if exp.fract() == 0.0 && exp.abs() <= 64.0 {
        base.powi(exp as i32)
    } else {
        base.powf(exp)
    }
}

impl WeightFunction {
    fn named(name: &'static str, kind: Kind, declared: DeclaredFlags) -> Self {
        Self {
            name,
            kind,
            declared: Some(declared),
        }
    }

    /// `x + y`
    pub fn first_zagreb() -> Self {
        Self::named("first_zagreb", Kind::FirstZagreb, RESTRICTED)
    }

    /// `(x + y)^2`
    pub fn first_hyper_zagreb() -> Self {
        Self::named("first_hyper_zagreb", Kind::FirstHyperZagreb, RESTRICTED)
    }

    /// `(x + y)^alpha`, `alpha >= 1`.
    pub fn general_sum_connectivity(alpha: f64) -> Result<Self, WeightError> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(WeightError::BadParameter {
                name: "general_sum_connectivity",
                param: "alpha",
                value: alpha,
                reason: "must be finite and at least 1",
            });
        }
        Ok(Self::named(
            "general_sum_connectivity",
            Kind::GeneralSumConnectivity { alpha },
            RESTRICTED,
        ))
    }

    /// `x^2 + y^2`
    pub fn forgotten() -> Self {
        Self::named("forgotten", Kind::Forgotten, RESTRICTED)
    }

    /// `sqrt(x^2 + y^2)`
    pub fn sombor() -> Self {
        Self::named("sombor", Kind::Sombor, RESTRICTED)
    }

    /// `(x^p + y^p)^(1/p)`, `p >= 1`.
    pub fn p_sombor(p: f64) -> Result<Self, WeightError> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(WeightError::BadParameter {
                name: "p_sombor",
                param: "p",
                value: p,
                reason: "must be finite and at least 1",
            });
        }
        Ok(Self::named("p_sombor", Kind::PSombor { p }, RESTRICTED))
    }

    /// `x * y`
    pub fn second_zagreb() -> Self {
        Self::named("second_zagreb", Kind::SecondZagreb, UNRESTRICTED)
    }

    /// `(x * y)^2`
    pub fn second_hyper_zagreb() -> Self {
        Self::named("second_hyper_zagreb", Kind::SecondHyperZagreb, UNRESTRICTED)
    }

    /// `x + y + x * y`
    pub fn first_gourava() -> Self {
        Self::named("first_gourava", Kind::FirstGourava, UNRESTRICTED)
    }

    /// `(x + y) * x * y`
    pub fn second_gourava() -> Self {
        Self::named("second_gourava", Kind::SecondGourava, UNRESTRICTED)
    }

    /// `(x + y + x * y)^2`
    pub fn first_hyper_gourava() -> Self {
        Self::named("first_hyper_gourava", Kind::FirstHyperGourava, UNRESTRICTED)
    }

    /// `f = c` for a positive constant; `c = 1` recovers the plain adjacency
    /// matrix.
    pub fn constant(c: f64) -> Result<Self, WeightError> {
        if !(c.is_finite() && c > 0.0) {
            return Err(WeightError::BadParameter {
                name: "constant",
                param: "c",
                value: c,
                reason: "must be finite and positive",
            });
        }
        Ok(Self {
            name: "constant",
            kind: Kind::Constant(c),
            declared: None,
        })
    }

    /// User expression in `x` and `y`; symmetry is verified on `1..=10`.
    pub fn custom(src: &str) -> Result<Self, WeightError> {
        let expr = Expr::parse(src)?;
        let f = Self {
            name: "custom",
            kind: Kind::Custom {
                src: src.trim().to_string(),
                expr,
            },
            declared: None,
        };
        for x in 1..=10u32 {
            for y in x + 1..=10 {
                let fxy = f.value(x as f64, y as f64);
                let fyx = f.value(y as f64, x as f64);
                let scale = fxy.abs().max(fyx.abs()).max(1.0);
                if !((fxy - fyx).abs() <= 1e-12 * scale) {
                    return Err(WeightError::NotSymmetric { x, y, fxy, fyx });
                }
            }
        }
        Ok(f)
    }

    /// Looks up a catalog name; parameterized entries take `alpha` / `p`
    /// (defaulting to 3 when absent).
    pub fn by_name(name: &str, alpha: Option<f64>, p: Option<f64>) -> Result<Self, WeightError> {
        Ok(match name {
            "first_zagreb" => Self::first_zagreb(),
            "first_hyper_zagreb" => Self::first_hyper_zagreb(),
            "general_sum_connectivity" => {
                Self::general_sum_connectivity(alpha.unwrap_or(DEFAULT_PARAMETER))?
            }
            "forgotten" => Self::forgotten(),
            "sombor" => Self::sombor(),
            "p_sombor" => Self::p_sombor(p.unwrap_or(DEFAULT_PARAMETER))?,
            "second_zagreb" => Self::second_zagreb(),
            "second_hyper_zagreb" => Self::second_hyper_zagreb(),
            "first_gourava" => Self::first_gourava(),
            "second_gourava" => Self::second_gourava(),
            "first_hyper_gourava" => Self::first_hyper_gourava(),
            "one" | "adjacency" => Self::constant(1.0)?,
            _ => return Err(WeightError::Unknown(name.to_string())),
        })
    }

    /// Catalog name if it is one, otherwise a custom expression.
    pub fn resolve(spec: &str, alpha: Option<f64>, p: Option<f64>) -> Result<Self, WeightError> {
        match Self::by_name(spec, alpha, p) {
            Err(WeightError::Unknown(_)) => Self::custom(spec),
            other => other,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    /// Name with parameters, e.g. `p_sombor(p=2)`.
    pub fn label(&self) -> String {
        match &self.kind {
            Kind::GeneralSumConnectivity { alpha } => format!("{}(alpha={alpha})", self.name),
            Kind::PSombor { p } => format!("{}(p={p})", self.name),
            Kind::Constant(c) => format!("constant({c})"),
            Kind::Custom { src, .. } => format!("custom({src})"),
            _ => self.name.to_string(),
        }
    }

    pub fn declared_flags(&self) -> Option<DeclaredFlags> {
        self.declared
    }

    /// Raw evaluation without argument or positivity checks.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        match &self.kind {
            Kind::FirstZagreb => x + y,
            Kind::FirstHyperZagreb => (x + y) * (x + y),
            Kind::GeneralSumConnectivity { alpha } => pow(x + y, *alpha),
            Kind::Forgotten => x * x + y * y,
            Kind::Sombor => (x * x + y * y).sqrt(),
            Kind::PSombor { p } => pow(pow(x, *p) + pow(y, *p), 1.0 / p),
            Kind::SecondZagreb => x * y,
            Kind::SecondHyperZagreb => (x * y) * (x * y),
            Kind::FirstGourava => x + y + x * y,
            Kind::SecondGourava => (x + y) * x * y,
            Kind::FirstHyperGourava => {
                let s = x + y + x * y;
                s * s
            }
            Kind::Constant(c) => *c,
            Kind::Custom { expr, .. } => expr.eval(x, y),
        }
    }

    /// `f(x, y)` for positive arguments; the result must be finite and positive.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, WeightError> {
        if !(x > 0.0 && y > 0.0) {
            return Err(WeightError::NonPositiveArgument(x, y));
        }
        let value = self.value(x, y);
        if value.is_finite() && value > 0.0 {
            Ok(value)
        } else {
            Err(WeightError::NonPositiveValue {
                name: self.label(),
                x,
                y,
                value,
            })
        }
    }

    pub(crate) fn eval_degrees(&self, dx: usize, dy: usize) -> Result<f64, WeightError> {
        self.eval(dx as f64, dy as f64)
    }

    fn grid(&self, x: u32, y: u32) -> f64 {
        self.value(x as f64, y as f64)
    }

    /// `f(x+1, y) >= f(x, y)` for `1 <= x < delta`, `1 <= y <= delta`.
    pub fn check_increasing(&self, delta: u32) -> Result<Verdict, WeightError> {
        require(delta, 2, "increasing")?;
        for x in 1..delta {
            for y in 1..=delta {
                let (lo, hi) = (self.grid(x, y), self.grid(x + 1, y));
                if !(hi >= lo - GRID_TOLERANCE) {
                    return Ok(Verdict::Fail(Counterexample {
                        at: (x, y),
                        against: Some((x + 1, y)),
                        value: lo,
                        other: hi,
                    }));
                }
            }
        }
        Ok(Verdict::Pass)
    }

    /// Discrete second difference in `x` is non-negative for
    /// `2 <= x <= delta - 1`, `1 <= y <= delta`.
    pub fn check_convex(&self, delta: u32) -> Result<Verdict, WeightError> {
        require(delta, 3, "convex")?;
        for x in 2..delta {
            for y in 1..=delta {
                let second = self.grid(x + 1, y) - 2.0 * self.grid(x, y) + self.grid(x - 1, y);
                if !(second >= -GRID_TOLERANCE) {
                    return Ok(Verdict::Fail(Counterexample {
                        at: (x, y),
                        against: None,
                        value: second,
                        other: 0.0,
                    }));
                }
            }
        }
        Ok(Verdict::Pass)
    }

    /// On every fixed sum, a more unbalanced split is not smaller.
    pub fn check_restricted(&self, delta: u32) -> Result<Verdict, WeightError> {
        require(delta, 3, "restricted")?;
        Ok(self.scan_splits(delta, |wide, narrow| wide >= narrow - GRID_TOLERANCE))
    }

    /// Strict version of [`check_restricted`](Self::check_restricted).
    pub fn check_property_p(&self, delta: u32) -> Result<Verdict, WeightError> {
        require(delta, 3, "property_p")?;
        Ok(self.scan_splits(delta, |wide, narrow| wide > narrow + GRID_TOLERANCE))
    }

    fn scan_splits(&self, delta: u32, holds: impl Fn(f64, f64) -> bool) -> Verdict {
        for sum in 2..=2 * delta {
            // splits (x, sum - x) with x <= sum - x, both in 1..=delta,
            // ordered from most to least unbalanced
            let lo = sum.saturating_sub(delta).max(1);
            let splits: Vec<u32> = (lo..=sum / 2).collect();
            for (i, &wide) in splits.iter().enumerate() {
                for &narrow in &splits[i + 1..] {
                    let fw = self.grid(wide, sum - wide);
                    let fn_ = self.grid(narrow, sum - narrow);
                    if !holds(fw, fn_) {
                        return Verdict::Fail(Counterexample {
                            at: (wide, sum - wide),
                            against: Some((narrow, sum - narrow)),
                            value: fw,
                            other: fn_,
                        });
                    }
                }
            }
        }
        Verdict::Pass
    }

    /// All four grid checks at once.
    pub fn properties(&self, delta: u32) -> Result<PropertyReport, WeightError> {
        Ok(PropertyReport {
            increasing: self.check_increasing(delta)?,
            convex: self.check_convex(delta)?,
            restricted: self.check_restricted(delta)?,
            property_p: self.check_property_p(delta)?,
        })
    }

    /// Whether the grid checks put `f` in the restricted class.
    pub fn is_restricted(&self, delta: u32) -> Result<bool, WeightError> {
        let r = self.properties(delta)?;
        Ok(r.increasing.passed() && r.convex.passed() && r.restricted.passed())
    }
}

const DEFAULT_PARAMETER: f64 = 3.0;

fn require(delta: u32, min: u32, check: &'static str) -> Result<(), WeightError> {
    if delta < min {
        Err(WeightError::DeltaTooSmall { check, delta, min })
    } else {
        Ok(())
    }
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Grid point where a property check failed. For pairwise checks `against`
/// is the point compared with; `value` and `other` are the two f-values (for
/// convexity, `value` is the offending second difference).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub at: (u32, u32),
    pub against: Option<(u32, u32)>,
    pub value: f64,
    pub other: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(c) => Some(c),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(c) => {
                let (x, y) = c.at;
                write!(f, "fail({x},{y})")?;
                match c.against {
                    Some((u, v)) => {
                        write!(f, " [f({x},{y})={} vs f({u},{v})={}]", c.value, c.other)
                    }
                    None => write!(f, " [second difference {:e}]", c.value),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropertyReport {
    pub increasing: Verdict,
    pub convex: Verdict,
    pub restricted: Verdict,
    pub property_p: Verdict,
}

impl PropertyReport {
    pub fn lines(&self) -> [(&'static str, Verdict); 4] {
        [
            ("increasing", self.increasing),
            ("convex", self.convex),
            ("restricted", self.restricted),
            ("property_p", self.property_p),
        ]
    }
}

/// The eleven named functions, parameterized entries at `alpha = p = 3`.
pub fn catalog() -> Vec<WeightFunction> {
    vec![
        WeightFunction::first_zagreb(),
        WeightFunction::first_hyper_zagreb(),
        WeightFunction::general_sum_connectivity(DEFAULT_PARAMETER).expect("valid"),
        WeightFunction::forgotten(),
        WeightFunction::sombor(),
        WeightFunction::p_sombor(DEFAULT_PARAMETER).expect("valid"),
        WeightFunction::second_zagreb(),
        WeightFunction::second_hyper_zagreb(),
        WeightFunction::first_gourava(),
        WeightFunction::second_gourava(),
        WeightFunction::first_hyper_gourava(),
    ]
}

/// Restricted catalog entries with the parameterized ones swept over
/// `alpha, p in {1, 2, 3}`.
pub fn restricted_sweep() -> Vec<WeightFunction> {
    let mut out = vec![
        WeightFunction::first_zagreb(),
        WeightFunction::first_hyper_zagreb(),
    ];
    out.extend((1..=3).map(|a| WeightFunction::general_sum_connectivity(a as f64).expect("valid")));
    out.push(WeightFunction::forgotten());
    out.push(WeightFunction::sombor());
    out.extend((1..=3).map(|p| WeightFunction::p_sombor(p as f64).expect("valid")));
    out
}

/// The five increasing and convex but unrestricted catalog entries.
pub fn unrestricted_catalog() -> Vec<WeightFunction> {
    catalog()
        .into_iter()
        .filter(|f| f.declared.is_some_and(|d| !d.restricted))
        .collect()
}

/// `sum over edges uv of f(d_u, d_v)`.
pub fn topological_index(g: &Graph, f: &WeightFunction) -> Result<f64, WeightError> {
    let degrees = g.degrees();
    g.edges()
        .map(|(u, v)| f.eval_degrees(degrees[u], degrees[v]))
        .sum()
}
