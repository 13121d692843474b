//! Validated scalar distribution specifications.

use std::collections::BTreeMap;

use rand::RngExt;
use rand_distr::{Beta, Binomial, Distribution, Gamma, Normal, Poisson, Triangular};

use super::{RngStream, StochasticsError};

/// The distribution families the engine knows how to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistKind {
    Gamma,
    Beta,
    Binomial,
    Uniform,
    Triangular,
    Normal,
    CappedPoisson,
    PointMass,
}

impl DistKind {
    pub fn name(self) -> &'static str {
        match self {
            DistKind::Gamma => "gamma",
            DistKind::Beta => "beta",
            DistKind::Binomial => "binomial",
            DistKind::Uniform => "uniform",
            DistKind::Triangular => "triangular",
            DistKind::Normal => "normal",
            DistKind::CappedPoisson => "capped_poisson",
            DistKind::PointMass => "point_mass",
        }
    }

    /// Canonical parameter names, in the order hyper-draws consume them.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            DistKind::Gamma => &["shape", "rate"],
            DistKind::Beta => &["a", "b"],
            DistKind::Binomial => &["n", "p"],
            DistKind::Uniform => &["lo", "hi"],
            DistKind::Triangular => &["min", "mode", "max"],
            DistKind::Normal => &["mean", "sd"],
            DistKind::CappedPoisson => &["lambda"],
            DistKind::PointMass => &["x"],
        }
    }
}

/// A fully parameterised scalar distribution.
///
/// `Gamma` is parameterised by shape and *rate* (mean = shape / rate).
/// `CappedPoisson` draws a Poisson count and clamps it to `min(1, k)`; its
/// support is exactly `{0, 1}`.  Degenerate forms are allowed where the
/// limit is well defined: `Uniform` with `lo == hi`, `Triangular` with
/// `min == mode == max` and `Normal` with `sd == 0` all collapse to a point
/// mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistSpec {
    Gamma { shape: f64, rate: f64 },
    Beta { a: f64, b: f64 },
    Binomial { n: u64, p: f64 },
    Uniform { lo: f64, hi: f64 },
    Triangular { min: f64, mode: f64, max: f64 },
    Normal { mean: f64, sd: f64 },
    CappedPoisson { lambda: f64 },
    PointMass { x: f64 },
}

impl DistSpec {
    pub fn kind(&self) -> DistKind {
        match self {
            DistSpec::Gamma { .. } => DistKind::Gamma,
            DistSpec::Beta { .. } => DistKind::Beta,
            DistSpec::Binomial { .. } => DistKind::Binomial,
            DistSpec::Uniform { .. } => DistKind::Uniform,
            DistSpec::Triangular { .. } => DistKind::Triangular,
            DistSpec::Normal { .. } => DistKind::Normal,
            DistSpec::CappedPoisson { .. } => DistKind::CappedPoisson,
            DistSpec::PointMass { .. } => DistKind::PointMass,
        }
    }

    /// Checks every parameter against its domain.
    pub fn validate(&self) -> Result<(), StochasticsError> {
        let dist = self.kind().name();
        let bad = |field: &'static str, constraint: &'static str, value: f64| {
            Err(StochasticsError::InvalidParameter {
                dist,
                field,
                constraint,
                value,
            })
        };
        match *self {
            DistSpec::Gamma { shape, rate } => {
                if !(shape.is_finite() && shape > 0.0) {
                    return bad("shape", "be finite and > 0", shape);
                }
                if !(rate.is_finite() && rate > 0.0) {
                    return bad("rate", "be finite and > 0", rate);
                }
            }
            DistSpec::Beta { a, b } => {
                if !(a.is_finite() && a > 0.0) {
                    return bad("a", "be finite and > 0", a);
                }
                if !(b.is_finite() && b > 0.0) {
                    return bad("b", "be finite and > 0", b);
                }
            }
            DistSpec::Binomial { n: _, p } => {
                if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
                    return bad("p", "lie in [0, 1]", p);
                }
            }
            DistSpec::Uniform { lo, hi } => {
                if !lo.is_finite() {
                    return bad("lo", "be finite", lo);
                }
                if !(hi.is_finite() && hi >= lo) {
                    return bad("hi", "be finite and >= lo", hi);
                }
            }
            DistSpec::Triangular { min, mode, max } => {
                if !min.is_finite() {
                    return bad("min", "be finite", min);
                }
                if !(mode.is_finite() && mode >= min) {
                    return bad("mode", "be finite and >= min", mode);
                }
                if !(max.is_finite() && max >= mode) {
                    return bad("max", "be finite and >= mode", max);
                }
            }
            DistSpec::Normal { mean, sd } => {
                if !mean.is_finite() {
                    return bad("mean", "be finite", mean);
                }
                if !(sd.is_finite() && sd >= 0.0) {
                    return bad("sd", "be finite and >= 0", sd);
                }
            }
            DistSpec::CappedPoisson { lambda } => {
                if !(lambda.is_finite() && lambda >= 0.0) {
                    return bad("lambda", "be finite and >= 0", lambda);
                }
            }
            DistSpec::PointMass { x } => {
                if !x.is_finite() {
                    return bad("x", "be finite", x);
                }
            }
        }
        Ok(())
    }

    /// Draws one variate.  Counts (binomial, capped Poisson) come back as
    /// exact integers stored in an `f64`.
    pub fn draw(&self, rng: &mut RngStream) -> Result<f64, StochasticsError> {
        self.validate()?;
        let value = match *self {
            DistSpec::Gamma { shape, rate } => {
                Gamma::new(shape, 1.0 / rate).expect("validated").sample(rng)
            }
            DistSpec::Beta { a, b } => Beta::new(a, b).expect("validated").sample(rng),
            DistSpec::Binomial { n, p } => {
                Binomial::new(n, p).expect("validated").sample(rng) as f64
            }
            DistSpec::Uniform { lo, hi } => {
                if lo == hi {
                    lo
                } else {
                    rng.random_range(lo..hi)
                }
            }
            DistSpec::Triangular { min, mode, max } => {
                if min == max {
                    min
                } else {
                    Triangular::new(min, max, mode).expect("validated").sample(rng)
                }
            }
            DistSpec::Normal { mean, sd } => {
                if sd == 0.0 {
                    mean
                } else {
                    Normal::new(mean, sd).expect("validated").sample(rng)
                }
            }
            DistSpec::CappedPoisson { lambda } => poisson_count(lambda, rng).min(1) as f64,
            DistSpec::PointMass { x } => x,
        };
        Ok(value)
    }

    /// Assembles a spec of the given kind from named parameter values, as
    /// produced by a hyper-draw.  The binomial count is rounded to the
    /// nearest non-negative integer.
    pub(crate) fn from_parameters(
        kind: DistKind,
        values: &BTreeMap<&'static str, f64>,
    ) -> Result<DistSpec, StochasticsError> {
        let get = |name: &str| *values.get(name).expect("binding checked by HyperSpec");
        let spec = match kind {
            DistKind::Gamma => DistSpec::Gamma {
                shape: get("shape"),
                rate: get("rate"),
            },
            DistKind::Beta => DistSpec::Beta {
                a: get("a"),
                b: get("b"),
            },
            DistKind::Binomial => {
                let n = get("n");
                if !n.is_finite() || n < -0.5 {
                    return Err(StochasticsError::InvalidParameter {
                        dist: "binomial",
                        field: "n",
                        constraint: "round to an integer >= 0",
                        value: n,
                    });
                }
                DistSpec::Binomial {
                    n: n.round() as u64,
                    p: get("p"),
                }
            }
            DistKind::Uniform => DistSpec::Uniform {
                lo: get("lo"),
                hi: get("hi"),
            },
            DistKind::Triangular => DistSpec::Triangular {
                min: get("min"),
                mode: get("mode"),
                max: get("max"),
            },
            DistKind::Normal => DistSpec::Normal {
                mean: get("mean"),
                sd: get("sd"),
            },
            DistKind::CappedPoisson => DistSpec::CappedPoisson { lambda: get("lambda") },
            DistKind::PointMass => DistSpec::PointMass { x: get("x") },
        };
        Ok(spec)
    }
}

/// Draws an uncapped Poisson count.  `lambda == 0` returns 0.
pub fn poisson_count(lambda: f64, rng: &mut RngStream) -> u64 {
    if lambda == 0.0 {
        return 0;
    }
    Poisson::<f64>::new(lambda).expect("positive lambda").sample(rng) as u64
}

/// Draws an index from a normalised probability vector by CDF inversion.
///
/// Consumes exactly one uniform, which keeps draws aligned across decisions
/// that share the same probability row.  Rounding slack beyond the last
/// cumulative bin falls to the final index.
pub fn sample_index(probabilities: &[f64], rng: &mut RngStream) -> usize {
    debug_assert!(!probabilities.is_empty());
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probabilities.len() - 1
}
