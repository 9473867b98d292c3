use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;
use ybl::{Composition, QMode, Setup};
use ybl_algebra::{parse_q, q_to_string, Q};

pub const SUITES: [&str; 11] = [
    "bethe-commute",
    "calogero-moser",
    "cohomology-examples",
    "flatness",
    "hecke",
    "idempotents",
    "limit-h",
    "qde",
    "quantum-products",
    "wronskian",
    "xi",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Number of colors (defaults to the length of --lambda).
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Number of tensor factors (defaults to the sum of --lambda).
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Weight, e.g. `2,1`.
    #[arg(long)]
    pub lambda: String,
    /// Evaluation points z_1..z_n as rationals `p/q`.
    #[arg(long = "spec-z")]
    pub spec_z: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    /// Quantum parameters `q_1,..,q_N`, or `symbolic`.
    #[arg(long)]
    pub q: Option<String>,
    /// Keep z and h symbolic (q too unless --q is given).
    #[arg(long)]
    pub symbolic: bool,
    /// Series order for the differential-equation check.
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Step of the differential equation.
    #[arg(long, default_value = "2")]
    pub kappa: String,
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Read --h in the opposite sign convention (h ↦ −h).
    #[arg(long)]
    pub flip_h: bool,
    /// Include wall-clock timings (makes output non-deterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Debug)]
pub enum Scalars {
    Symbolic,
    Specialized { z: Vec<Q>, h: Q },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub big_n: usize,
    pub n: usize,
    pub lambda: Composition,
    pub scalars: Scalars,
    /// `None` keeps the quantum parameters symbolic.
    pub q: Option<Vec<Q>>,
    pub order: usize,
    pub kappa: Q,
    pub suites: Vec<String>,
    pub format: Format,
    pub timings: bool,
}

/// The JSON echo of a configuration.
#[derive(Serialize)]
pub struct ConfigEcho {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: usize,
    pub lambda: Vec<usize>,
    pub z: Option<Vec<String>>,
    pub h: Option<String>,
    pub q: Option<Vec<String>>,
    pub order: usize,
    pub kappa: String,
}

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn rationals(s: &str, what: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| parse_q(t).with_context(|| format!("bad rational in --{what}: {t:?}"))).collect()
}

impl RunConfig {
    pub fn from_args(a: &RunArgs) -> Result<Self> {
        let parts = a
            .lambda
            .split(',')
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad --lambda entry {t:?}")))
            .collect::<Result<Vec<_>>>()?;
        let lambda = Composition::new(parts)?;
        let n = lambda.n();
        let big_n = lambda.big_n();
        if a.n.is_some_and(|v| v != n) {
            bail!("--n {} does not match the sum of --lambda ({n})", a.n.unwrap_or_default());
        }
        if a.big_n.is_some_and(|v| v != big_n) {
            bail!("--N {} does not match the length of --lambda ({big_n})", a.big_n.unwrap_or_default());
        }
        let scalars = if a.symbolic {
            if a.spec_z.is_some() || a.h.is_some() {
                bail!("--symbolic cannot be combined with --spec-z or --h");
            }
            Scalars::Symbolic
        } else {
            let z = rationals(a.spec_z.as_deref().context("--spec-z is required unless --symbolic")?, "spec-z")?;
            if z.len() != n {
                bail!("--spec-z has {} values, expected n = {n}", z.len());
            }
            let mut h = parse_q(a.h.as_deref().context("--h is required unless --symbolic")?).context("bad --h")?;
            if a.flip_h {
                h = -h;
            }
            Scalars::Specialized { z, h }
        };
        let q = match a.q.as_deref() {
            Some("symbolic") => None,
            Some(s) => {
                let v = rationals(s, "q")?;
                if v.len() != big_n {
                    bail!("--q has {} values, expected N = {big_n}", v.len());
                }
                Some(v)
            }
            None if a.symbolic => None,
            None => {
                if big_n > PRIMES.len() {
                    bail!("no default quantum parameters for N = {big_n}");
                }
                Some(PRIMES[..big_n].iter().map(|&p| Q::new(1.into(), p.into())).collect())
            }
        };
        if a.order < 1 {
            bail!("--order must be at least 1");
        }
        let kappa = parse_q(&a.kappa).context("bad --kappa")?;
        let suites: Vec<String> = a.suite.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        if suites.is_empty() {
            bail!("empty suite list");
        }
        let suites = if suites.iter().any(|s| s == "all") {
            SUITES.iter().map(|s| s.to_string()).collect()
        } else {
            for s in &suites {
                if !SUITES.contains(&s.as_str()) {
                    bail!("unknown suite {s:?} (known: {})", SUITES.join(", "));
                }
            }
            let mut v = suites;
            v.sort();
            v.dedup();
            v
        };
        Ok(RunConfig { big_n, n, lambda, scalars, q, order: a.order, kappa, suites, format: a.format, timings: a.timings })
    }

    pub fn setup(&self) -> ybl::Result<Setup> {
        let qm = match &self.q {
            Some(v) => QMode::Values(v.clone()),
            None => QMode::Symbolic,
        };
        match &self.scalars {
            Scalars::Symbolic => Setup::symbolic_with_q(self.n, self.big_n, qm),
            Scalars::Specialized { z, h } => Setup::specialized(z.clone(), h.clone(), self.big_n, qm),
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        let (z, h) = match &self.scalars {
            Scalars::Symbolic => (None, None),
            Scalars::Specialized { z, h } => (Some(z.iter().map(q_to_string).collect()), Some(q_to_string(h))),
        };
        ConfigEcho {
            big_n: self.big_n,
            n: self.n,
            lambda: self.lambda.parts().to_vec(),
            z,
            h,
            q: self.q.as_ref().map(|v| v.iter().map(q_to_string).collect()),
            order: self.order,
            kappa: q_to_string(&self.kappa),
        }
    }
}
