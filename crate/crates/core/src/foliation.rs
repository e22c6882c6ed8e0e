//! Verification reports shared by the exact and numeric engines.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Subalgebra,
    HStable,
    Isotropic,
    Lagrangian,
    Transversal,
    Ruling,
    Darboux,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> CheckStatus {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Exact(Vec<String>),
    Numeric(Vec<f64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct FoliationReport {
    pub algebra: String,
    pub engine: Engine,
    pub orbit_type: Vec<String>,
    pub sigma_j: Vec<String>,
    pub dim_n_j: usize,
    pub dim_g: usize,
    pub rank: usize,
    pub toroidal_dim: usize,
    pub checks: BTreeMap<CheckKind, CheckStatus>,
    /// Largest scale-normalized residual per check (numeric engine only).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<CheckKind, f64>,
    pub witness_x: Witness,
}

impl FoliationReport {
    pub fn dim_omega(&self) -> usize {
        self.dim_g - self.rank
    }

    pub fn is_lagrangian_dimension(&self) -> bool {
        2 * self.dim_n_j == self.dim_omega()
    }

    pub fn status(&self, kind: CheckKind) -> CheckStatus {
        self.checks.get(&kind).copied().unwrap_or(CheckStatus::Skipped)
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|s| *s != CheckStatus::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("algebra      {}\n", self.algebra));
        s.push_str(&format!("engine       {:?}\n", self.engine).to_lowercase());
        s.push_str(&format!("orbit type   {{{}}}\n", self.orbit_type.join(", ")));
        s.push_str(&format!("sigma_j      {{{}}}\n", self.sigma_j.join(", ")));
        s.push_str(&format!("dim g        {}\n", self.dim_g));
        s.push_str(&format!("rank         {}\n", self.rank));
        s.push_str(&format!("dim Omega    {}\n", self.dim_omega()));
        s.push_str(&format!("k-dim h_F    {}\n", self.toroidal_dim));
        s.push_str(&format!("dim n_j      {}\n", self.dim_n_j));
        for (k, v) in &self.checks {
            let name = serde_json::to_value(k).unwrap();
            let status = serde_json::to_value(v).unwrap();
            let line = match self.residuals.get(k) {
                Some(r) => format!("check {:<12} {:<8} residual {:.3e}\n", name.as_str().unwrap(), status.as_str().unwrap(), r),
                None => format!("check {:<12} {}\n", name.as_str().unwrap(), status.as_str().unwrap()),
            };
            s.push_str(&line);
        }
        s
    }
}
