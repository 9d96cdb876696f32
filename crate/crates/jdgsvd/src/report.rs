//! Run reports: line-oriented `key = value` text under a versioned header.
//!
//! Keys are emitted in a fixed order and floats in their shortest
//! round-trip form, so equal reports serialize to equal bytes and
//! [`Report::parse`] inverts [`Report::emit`] exactly. The only
//! run-dependent field is `stats.wall_time_s`.

use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::str::FromStr;

/// First line of every report.
pub const HEADER: &str = "# jdgsvd-report v1";

/// Keys whose values depend on timing rather than on the inputs.
pub const TIMING_KEYS: &[&str] = &["stats.wall_time_s"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// All requested components converged.
    Converged,
    /// The outer iteration limit was hit first.
    NotConverged,
    /// The solver stopped with an error, see `Report::error`.
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Converged => "converged",
            Status::NotConverged => "not_converged",
            Status::Failed => "failed",
        })
    }
}

impl FromStr for Status {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "converged" => Ok(Status::Converged),
            "not_converged" => Ok(Status::NotConverged),
            "failed" => Ok(Status::Failed),
            _ => Err(()),
        }
    }
}

/// Solver settings as used.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigEcho {
    pub tau: f64,
    pub num: usize,
    pub tol: f64,
    pub kmin: usize,
    pub kmax: usize,
    /// `kmax` after fitting the matrix dimensions.
    pub kmax_used: usize,
    pub fixtol: f64,
    pub eps_tilde: f64,
    pub max_outer: usize,
    pub seed: u64,
    pub x0: String,
    pub inner_tolerance_rule: String,
}

/// Where the pair came from and its basic measures.
#[derive(Debug, Clone, PartialEq)]
pub struct InputEcho {
    pub a: String,
    pub b: String,
    pub transpose_a: bool,
    pub m: usize,
    pub p: usize,
    pub n: usize,
    pub norm1_a: f64,
    pub norm1_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalStats {
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub restarts: usize,
    pub wall_time_s: f64,
}

/// One computed component; the last one may be unconverged.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentRecord {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
    pub residual_norm: f64,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
    pub converged: bool,
}

/// Comparison of one converged component with the dense oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRecord {
    pub oracle_sigma: f64,
    /// `|σ − σ_oracle|/σ_oracle`
    pub sigma_error: f64,
    pub sin_u: f64,
    pub sin_v: f64,
    pub sin_x: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub components: Vec<ValidationRecord>,
    pub max_sigma_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorPaths {
    pub u: String,
    pub v: String,
    pub x: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub status: Status,
    pub error: Option<String>,
    pub config: ConfigEcho,
    pub input: InputEcho,
    pub stats: GlobalStats,
    pub components: Vec<ComponentRecord>,
    pub warnings: Vec<String>,
    pub validation: Option<Validation>,
    pub vectors: Option<VectorPaths>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ReportError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("bad value for `{key}`: {value:?}")]
    BadValue { key: String, value: String },
}

// Floats print as the shortest string that parses back to the same bits.
fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

struct Emitter(String);

impl Emitter {
    fn put(&mut self, key: &str, value: impl fmt::Display) {
        let _ = writeln!(self.0, "{key} = {value}");
    }
    fn real(&mut self, key: &str, value: f64) {
        self.put(key, float(value));
    }
}

impl Report {
    pub fn emit(&self) -> String {
        let mut e = Emitter(String::new());
        e.0.push_str(HEADER);
        e.0.push('\n');
        e.put("status", self.status);
        if let Some(err) = &self.error {
            e.put("error", one_line(err));
        }
        let c = &self.config;
        e.real("config.tau", c.tau);
        e.put("config.num", c.num);
        e.real("config.tol", c.tol);
        e.put("config.kmin", c.kmin);
        e.put("config.kmax", c.kmax);
        e.put("config.kmax_used", c.kmax_used);
        e.real("config.fixtol", c.fixtol);
        e.real("config.eps_tilde", c.eps_tilde);
        e.put("config.max_outer", c.max_outer);
        e.put("config.seed", c.seed);
        e.put("config.x0", one_line(&c.x0));
        e.put("config.inner_tolerance_rule", one_line(&c.inner_tolerance_rule));
        let i = &self.input;
        e.put("input.a", one_line(&i.a));
        e.put("input.b", one_line(&i.b));
        e.put("input.transpose_a", i.transpose_a);
        e.put("input.m", i.m);
        e.put("input.p", i.p);
        e.put("input.n", i.n);
        e.real("input.norm1_a", i.norm1_a);
        e.real("input.norm1_b", i.norm1_b);
        let s = &self.stats;
        e.put("stats.outer_iterations", s.outer_iterations);
        e.put("stats.inner_iterations", s.inner_iterations);
        e.put("stats.restarts", s.restarts);
        e.real("stats.wall_time_s", s.wall_time_s);
        e.put("components", self.components.len());
        for (k, r) in self.components.iter().enumerate() {
            let p = format!("component.{k}.");
            e.real(&(p.clone() + "alpha"), r.alpha);
            e.real(&(p.clone() + "beta"), r.beta);
            e.real(&(p.clone() + "sigma"), r.sigma);
            e.real(&(p.clone() + "residual_norm"), r.residual_norm);
            e.put(&(p.clone() + "outer_iterations"), r.outer_iterations);
            e.put(&(p.clone() + "inner_iterations"), r.inner_iterations);
            e.put(&(p + "converged"), r.converged);
        }
        e.put("warnings", self.warnings.len());
        for (k, w) in self.warnings.iter().enumerate() {
            e.put(&format!("warning.{k}"), one_line(w));
        }
        if let Some(v) = &self.validation {
            e.put("validation.components", v.components.len());
            e.real("validation.max_sigma_error", v.max_sigma_error);
            for (k, r) in v.components.iter().enumerate() {
                let p = format!("validation.{k}.");
                e.real(&(p.clone() + "oracle_sigma"), r.oracle_sigma);
                e.real(&(p.clone() + "sigma_error"), r.sigma_error);
                e.real(&(p.clone() + "sin_u"), r.sin_u);
                e.real(&(p.clone() + "sin_v"), r.sin_v);
                e.real(&(p + "sin_x"), r.sin_x);
            }
        }
        if let Some(v) = &self.vectors {
            e.put("vectors.u", one_line(&v.u));
            e.put("vectors.v", one_line(&v.v));
            e.put("vectors.x", one_line(&v.x));
        }
        e.0
    }

    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, HEADER)) => {}
            _ => {
                return Err(ReportError::Syntax {
                    line: 1,
                    message: format!("expected `{HEADER}`"),
                })
            }
        }
        let mut map = BTreeMap::new();
        for (idx, line) in lines {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once(" = ").ok_or_else(|| ReportError::Syntax {
                line: idx + 1,
                message: "expected `key = value`".into(),
            })?;
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ReportError::Syntax {
                    line: idx + 1,
                    message: format!("duplicate key `{k}`"),
                });
            }
        }
        let mut f = Fields(map);
        let report = Report {
            status: f.get("status")?,
            error: f.take_opt("error"),
            config: ConfigEcho {
                tau: f.real("config.tau")?,
                num: f.get("config.num")?,
                tol: f.real("config.tol")?,
                kmin: f.get("config.kmin")?,
                kmax: f.get("config.kmax")?,
                kmax_used: f.get("config.kmax_used")?,
                fixtol: f.real("config.fixtol")?,
                eps_tilde: f.real("config.eps_tilde")?,
                max_outer: f.get("config.max_outer")?,
                seed: f.get("config.seed")?,
                x0: f.take("config.x0")?,
                inner_tolerance_rule: f.take("config.inner_tolerance_rule")?,
            },
            input: InputEcho {
                a: f.take("input.a")?,
                b: f.take("input.b")?,
                transpose_a: f.get("input.transpose_a")?,
                m: f.get("input.m")?,
                p: f.get("input.p")?,
                n: f.get("input.n")?,
                norm1_a: f.real("input.norm1_a")?,
                norm1_b: f.real("input.norm1_b")?,
            },
            stats: GlobalStats {
                outer_iterations: f.get("stats.outer_iterations")?,
                inner_iterations: f.get("stats.inner_iterations")?,
                restarts: f.get("stats.restarts")?,
                wall_time_s: f.real("stats.wall_time_s")?,
            },
            components: {
                let count: usize = f.get("components")?;
                (0..count)
                    .map(|k| {
                        let p = format!("component.{k}.");
                        Ok(ComponentRecord {
                            alpha: f.real(&(p.clone() + "alpha"))?,
                            beta: f.real(&(p.clone() + "beta"))?,
                            sigma: f.real(&(p.clone() + "sigma"))?,
                            residual_norm: f.real(&(p.clone() + "residual_norm"))?,
                            outer_iterations: f.get(&(p.clone() + "outer_iterations"))?,
                            inner_iterations: f.get(&(p.clone() + "inner_iterations"))?,
                            converged: f.get(&(p + "converged"))?,
                        })
                    })
                    .collect::<Result<_, ReportError>>()?
            },
            warnings: {
                let count: usize = f.get("warnings")?;
                (0..count)
                    .map(|k| f.take(&format!("warning.{k}")))
                    .collect::<Result<_, _>>()?
            },
            validation: match f.take_opt("validation.components") {
                None => None,
                Some(c) => {
                    let count: usize = c.parse().map_err(|_| ReportError::BadValue {
                        key: "validation.components".into(),
                        value: c.clone(),
                    })?;
                    Some(Validation {
                        max_sigma_error: f.real("validation.max_sigma_error")?,
                        components: (0..count)
                            .map(|k| {
                                let p = format!("validation.{k}.");
                                Ok(ValidationRecord {
                                    oracle_sigma: f.real(&(p.clone() + "oracle_sigma"))?,
                                    sigma_error: f.real(&(p.clone() + "sigma_error"))?,
                                    sin_u: f.real(&(p.clone() + "sin_u"))?,
                                    sin_v: f.real(&(p.clone() + "sin_v"))?,
                                    sin_x: f.real(&(p + "sin_x"))?,
                                })
                            })
                            .collect::<Result<_, ReportError>>()?,
                    })
                }
            },
            vectors: match f.take_opt("vectors.u") {
                None => None,
                Some(u) => Some(VectorPaths {
                    u,
                    v: f.take("vectors.v")?,
                    x: f.take("vectors.x")?,
                }),
            },
        };
        if let Some(k) = f.0.keys().next() {
            return Err(ReportError::BadValue {
                key: k.clone(),
                value: "unknown key".into(),
            });
        }
        Ok(report)
    }

    /// The report text without timing lines, for reproducibility checks.
    pub fn without_timing(text: &str) -> String {
        text.lines()
            .filter(|l| !TIMING_KEYS.iter().any(|k| l.starts_with(&format!("{k} = "))))
            .map(|l| format!("{l}\n"))
            .collect()
    }
}

// Values are single-line by construction.
fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take(&mut self, key: &str) -> Result<String, ReportError> {
        self.0.remove(key).ok_or_else(|| ReportError::Missing(key.into()))
    }

    fn take_opt(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    fn get<T: FromStr>(&mut self, key: &str) -> Result<T, ReportError> {
        let v = self.take(key)?;
        v.parse().map_err(|_| ReportError::BadValue { key: key.into(), value: v })
    }

    fn real(&mut self, key: &str) -> Result<f64, ReportError> {
        self.get(key)
    }
}
