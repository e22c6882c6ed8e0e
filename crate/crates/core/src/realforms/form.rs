use serde::Serialize;

use super::algebra::{MatrixAlgebra, Tolerances};
use super::cayley::{cayley_chain, CayleyChain};
use super::decomposition::{restricted_decomposition, RestrictedDatum};
use super::family::Family;
use super::roots::{full_roots, FullRootData};
use super::verify::verify_foliation_numeric;
use crate::error::{Error, Result};
use crate::foliation::FoliationReport;
use crate::rootsys::{is_admissible, sigma_chain, Root, SigmaChain, SigmaMethod};

/// A realized real form with its restricted and full root data.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub algebra: MatrixAlgebra,
    pub datum: RestrictedDatum,
    pub full: FullRootData,
}

/// Result of building the type-F foliation of a numeric real form.
#[derive(Clone, Debug)]
pub struct NumericFoliation {
    pub chain: CayleyChain,
    pub sigma: SigmaChain,
    pub report: FoliationReport,
}

/// Summary row used by tables and the CLI.
#[derive(Clone, Debug, Serialize)]
pub struct FormSummary {
    pub algebra: String,
    pub delta: String,
    pub sigma: String,
    pub dim: usize,
    pub dim_k: usize,
    pub rank: usize,
    pub real_rank: usize,
    pub f_max: usize,
    pub split: bool,
    pub dim_n: usize,
}

impl RealForm {
    pub fn build(family: Family) -> Result<RealForm> {
        Self::build_with(family, Tolerances::default())
    }

    pub fn build_with(family: Family, tol: Tolerances) -> Result<RealForm> {
        let algebra = MatrixAlgebra::realize_with(family, tol)?;
        let datum = restricted_decomposition(&algebra)?;
        let full = full_roots(&algebra, &datum)?;
        Ok(RealForm { algebra, datum, full })
    }

    pub fn summary(&self) -> Result<FormSummary> {
        Ok(FormSummary {
            algebra: self.algebra.family.to_string(),
            delta: self.full.type_name.clone(),
            sigma: self.datum.sigma_type.clone(),
            dim: self.algebra.dim(),
            dim_k: self.algebra.dim_k(),
            rank: self.datum.rank(),
            real_rank: self.datum.real_rank(),
            f_max: self.full.max_strongly_orthogonal_real()?.len(),
            split: self.datum.is_split(),
            dim_n: self.datum.dim_n(),
        })
    }

    /// Orbit types used by the verification sweeps: `∅`, every positive real root, and every
    /// strongly orthogonal pair of positive real roots.
    pub fn orbit_types(&self) -> Result<Vec<Vec<Root>>> {
        let reals = self.full.real_positive();
        let mut out = vec![Vec::new()];
        out.extend(reals.iter().map(|r| vec![r.clone()]));
        for (i, a) in reals.iter().enumerate() {
            for b in &reals[i + 1..] {
                let pair = vec![a.clone(), b.clone()];
                if is_admissible(&self.full.system, &pair)? {
                    out.push(pair);
                }
            }
        }
        Ok(out)
    }

    /// Restrictions of the roots in `f` to `a`.
    pub fn restrictions(&self, f: &[Root]) -> Result<Vec<Root>> {
        f.iter()
            .map(|r| {
                self.full
                    .get(r)
                    .and_then(|fr| fr.restriction.clone())
                    .ok_or_else(|| Error::Admissibility(format!("{r} does not restrict to a restricted root")))
            })
            .collect()
    }

    pub fn foliate(&self, f: &[Root], method: SigmaMethod, seed: u64) -> Result<NumericFoliation> {
        let chain = cayley_chain(&self.algebra, &self.datum, &self.full, f)?;
        let betas = self.restrictions(f)?;
        let sigma = sigma_chain(&self.datum.restricted, &betas, method)?;
        let report = verify_foliation_numeric(&self.algebra, &self.datum, &chain, sigma.last(), seed)?;
        Ok(NumericFoliation { chain, sigma, report })
    }
}
