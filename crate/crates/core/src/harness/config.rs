use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::theory::Alpha;

/// Construction run on each trial graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DenseLb,
    CliqueUnion,
    PathPower,
    Sparse,
    Forest,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::DenseLb,
        Method::CliqueUnion,
        Method::PathPower,
        Method::Sparse,
        Method::Forest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::DenseLb => "dense-lb",
            Method::CliqueUnion => "clique-union",
            Method::PathPower => "path-power",
            Method::Sparse => "sparse",
            Method::Forest => "forest",
        }
    }

    /// Whether the method runs on cells of the given parameter kind.
    pub fn accepts(self, param: &Param) -> bool {
        match self {
            Method::DenseLb | Method::CliqueUnion | Method::PathPower => matches!(param, Param::P(_)),
            Method::Sparse => matches!(param, Param::Alpha(_)),
            Method::Forest => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown method {s:?}")))
    }
}

/// Edge probability of a cell: a constant `p`, or `p = n^{−α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    P(f64),
    Alpha(Alpha),
}

impl Param {
    pub fn probability(&self, n: usize) -> f64 {
        match self {
            Param::P(p) => *p,
            Param::Alpha(a) => (n as f64).powf(-a.to_f64()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::P(p) => write!(f, "p={p}"),
            Param::Alpha(a) => write!(f, "alpha={a}"),
        }
    }
}

/// Optional knobs passed through to the constructions.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct Overrides {
    /// Clique size for dense-lb and clique-union, path power for path-power.
    pub k: Option<usize>,
    /// Number of parts for path-power.
    pub m: Option<usize>,
    pub v_fraction: Option<f64>,
    /// Gadget size for sparse: `M`, or `j`.
    pub gadget_j: Option<usize>,
    pub tile_budget: Option<u64>,
    pub cascade: Option<bool>,
    pub complete_forest: Option<bool>,
}

/// A grid of `ns × (ps ∪ alphas)` cells, each run with every applicable
/// method on `seeds` graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub ns: Vec<usize>,
    #[serde(default)]
    pub ps: Vec<f64>,
    #[serde(default)]
    pub alphas: Vec<Alpha>,
    pub methods: Vec<Method>,
    #[serde(default = "one")]
    pub seeds: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub overrides: Overrides,
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub summary: Option<PathBuf>,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub threads: Option<usize>,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(methods: Vec<Method>) -> Self {
        Self {
            ns: Vec::new(),
            ps: Vec::new(),
            alphas: Vec::new(),
            methods,
            seeds: 1,
            master_seed: 0,
            overrides: Overrides::default(),
            csv: None,
            summary: None,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.seeds == 0 {
            return Err(HarnessError::Config("seeds per cell must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(HarnessError::Config("no methods given".into()));
        }
        if let Some(p) = self.ps.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(HarnessError::Config(format!("p = {p} must lie in (0, 1)")));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be positive".into()));
        }
        Ok(())
    }

    /// `(n, param)` pairs in grid order; the index is the cell index used for seeding.
    pub fn graph_cells(&self) -> Vec<(usize, Param)> {
        let params: Vec<Param> = self
            .ps
            .iter()
            .map(|&p| Param::P(p))
            .chain(self.alphas.iter().map(|&a| Param::Alpha(a)))
            .collect();
        self.ns
            .iter()
            .flat_map(|&n| params.iter().map(move |&q| (n, q)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_json_config() {
        let c: ExperimentConfig = serde_json::from_str(
            r#"{"ns": [512, 1024], "ps": [0.5], "alphas": ["9/20", 0.9],
                "methods": ["dense-lb", "sparse"], "seeds": 3,
                "overrides": {"k": 6}}"#,
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.graph_cells().len(), 6);
        assert_eq!(c.overrides.k, Some(6));
        assert_eq!(c.graph_cells()[1].1.to_string(), "alpha=9/20");
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"methods": ["nope"]}"#).is_err());
        let mut c = ExperimentConfig::new(vec![Method::Forest]);
        c.seeds = 0;
        assert!(c.validate().is_err());
        c.seeds = 1;
        c.ps = vec![1.0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
    }
}
