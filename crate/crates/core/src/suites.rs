//! Property suites shared by the CLI and the acceptance harness.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foliation::{CheckKind, CheckStatus};
use crate::liealg::{
    cayley_csa, chamber_element, chevalley_basis, darboux_basis, foliate_exact, kirillov_form, regular_element,
    restricted_roots, FormMode, PositiveSystem, StructureConstants,
};
use crate::realforms::{adjoint_exp, cayley_chain, Family, RealForm, Tolerances};
use crate::rootsys::{
    build_root_system, is_admissible, sigma_chain, sigma_conditions_hold, RestrictedRoots, Root, Series, SigmaMethod,
    ORACLE_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Isotropy,
    Darboux,
    Ruling,
    Cayley,
    SigmaOracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Isotropy, Suite::Darboux, Suite::Ruling, Suite::Cayley, Suite::SigmaOracle];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Isotropy => "isotropy",
            Suite::Darboux => "darboux",
            Suite::Ruling => "ruling",
            Suite::Cayley => "cayley",
            Suite::SigmaOracle => "sigma-oracle",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Unsupported(format!("suite '{s}'")))
    }
}

/// An algebra a suite runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Numeric(Family),
    Split(Series, usize),
    /// A complex simple algebra viewed as a real one.
    Complex(Series, usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Numeric(fam) => write!(f, "{fam}"),
            Target::Split(s, r) => write!(f, "split {s}{r}"),
            Target::Complex(s, r) => write!(f, "complex {s}{r}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub target: String,
    pub case: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        !self.cases.is_empty() && self.failed() == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}\n", self.suite);
        for c in &self.cases {
            let status = if c.passed { "pass" } else { "FAIL" };
            s.push_str(&format!("{status}  {:<14} {}", c.target, c.case));
            if let Some(r) = c.residual {
                s.push_str(&format!("  residual {r:.3e}"));
            }
            if !c.detail.is_empty() {
                s.push_str(&format!("  ({})", c.detail));
            }
            s.push('\n');
        }
        s.push_str(&format!("passed {} failed {}\n", self.passed(), self.failed()));
        s
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub targets: Vec<Target>,
    pub seed: u64,
    pub tol: Tolerances,
}

fn split_targets(list: &[(Series, usize)]) -> Vec<Target> {
    list.iter().map(|&(s, r)| Target::Split(s, r)).collect()
}

impl SuiteConfig {
    /// The default range of each suite.
    pub fn default_for(suite: Suite) -> SuiteConfig {
        use Series::*;
        let targets = match suite {
            Suite::Isotropy => {
                let mut t: Vec<Target> = crate::realforms::standard_families().into_iter().map(Target::Numeric).collect();
                t.extend(split_targets(&[
                    (A, 1),
                    (A, 2),
                    (A, 3),
                    (A, 4),
                    (B, 2),
                    (B, 3),
                    (B, 4),
                    (C, 3),
                    (C, 4),
                    (D, 4),
                    (F, 4),
                    (G, 2),
                ]));
                t.extend([(A, 1), (A, 2), (B, 2), (G, 2)].map(|(s, r)| Target::Complex(s, r)));
                t
            }
            Suite::Darboux => split_targets(&[(A, 1), (A, 2), (C, 2)]),
            Suite::Ruling => {
                let mut t = split_targets(&[(A, 1), (A, 2), (A, 3), (B, 2), (C, 3), (G, 2)]);
                t.extend(
                    [Family::SlR { n: 3 }, Family::SpR { n: 2 }, Family::Su { p: 1, q: 2 }, Family::So { p: 2, q: 3 }]
                        .map(Target::Numeric),
                );
                t
            }
            Suite::Cayley => {
                let mut t: Vec<Target> =
                    [Family::SlR { n: 3 }, Family::SpR { n: 2 }, Family::So { p: 2, q: 3 }, Family::Su { p: 2, q: 2 }]
                        .map(Target::Numeric)
                        .to_vec();
                t.extend(split_targets(&[(A, 2), (A, 3), (B, 2), (C, 2), (C, 3), (D, 4), (G, 2)]));
                t
            }
            Suite::SigmaOracle => {
                split_targets(&[(A, 1), (A, 2), (A, 3), (B, 2), (C, 2), (C, 3), (G, 2), (BC, 1), (BC, 2)])
            }
        };
        SuiteConfig { targets, seed: 0, tol: Tolerances::default() }
    }

    /// A suite restricted to one family, with its split equivalent when the exact engine applies.
    pub fn for_family(suite: Suite, family: Family) -> Result<SuiteConfig> {
        let family = family.validated()?;
        let exact = family.split_type().map(|(s, r)| Target::Split(s, r));
        let targets = match suite {
            Suite::Darboux => vec![exact.ok_or_else(|| Error::Unsupported(format!("{family} is not split")))?],
            _ => {
                let mut t = vec![Target::Numeric(family)];
                if suite != Suite::SigmaOracle {
                    t.extend(exact);
                }
                t
            }
        };
        Ok(SuiteConfig { targets, seed: 0, tol: Tolerances::default() })
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for t in &cfg.targets {
        let mut local = Vec::new();
        let outcome = match suite {
            Suite::Isotropy => isotropy(t, cfg, &mut local),
            Suite::Darboux => darboux(t, &mut local),
            Suite::Ruling => ruling(t, cfg, &mut local),
            Suite::Cayley => cayley(t, cfg, &mut local),
            Suite::SigmaOracle => sigma_oracle(t, cfg, &mut local),
        };
        match outcome {
            Ok(()) => {}
            Err(e @ (Error::Unsupported(_) | Error::InvalidFamily(_) | Error::InvalidType { .. })) => return Err(e),
            Err(e) => local.push(case(t, "construction", false, None, e.to_string())),
        }
        cases.extend(local);
    }
    if suite == Suite::Ruling {
        cases.push(sl2_closed_form());
    }
    Ok(SuiteReport { suite, cases })
}

fn case(t: &Target, name: impl Into<String>, passed: bool, residual: Option<f64>, detail: impl Into<String>) -> CaseResult {
    CaseResult { target: t.to_string(), case: name.into(), passed, residual, detail: detail.into() }
}

fn type_label(f: &[Root]) -> String {
    format!("F={{{}}}", f.iter().map(Root::to_string).collect::<Vec<_>>().join(", "))
}

fn exact_algebra(t: &Target) -> Result<Option<StructureConstants>> {
    Ok(match *t {
        Target::Numeric(_) => None,
        Target::Split(s, r) => Some(chevalley_basis(&build_root_system(s, r)?, FormMode::Split)),
        Target::Complex(s, r) => Some(chevalley_basis(&build_root_system(s, r)?, FormMode::Complexified)),
    })
}

/// `∅`, every positive root, and every strongly orthogonal pair (split forms); `∅` only for
/// complex algebras, which have no real roots.
fn exact_orbit_types(sc: &StructureConstants) -> Result<Vec<Vec<Root>>> {
    let mut out = vec![Vec::new()];
    if sc.mode() == FormMode::Complexified {
        return Ok(out);
    }
    let pos = sc.system().positives();
    out.extend(pos.iter().map(|r| vec![r.clone()]));
    for (i, a) in pos.iter().enumerate() {
        for b in &pos[i + 1..] {
            let pair = vec![a.clone(), b.clone()];
            if is_admissible(sc.system(), &pair)? {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

fn numeric_form(family: Family, cfg: &SuiteConfig) -> Result<RealForm> {
    RealForm::build_with(family, cfg.tol)
}

fn isotropy(t: &Target, cfg: &SuiteConfig, out: &mut Vec<CaseResult>) -> Result<()> {
    if let Some(sc) = exact_algebra(t)? {
        let rs = restricted_roots(&sc);
        for f in exact_orbit_types(&sc)? {
            let csa = cayley_csa(&sc, &f)?;
            let x = regular_element(&sc, &csa)?;
            let sigma = sigma_chain(&rs, &f, SigmaMethod::Greedy)?;
            let n_j: Vec<_> = sigma.last().iter().flat_map(|m| sc.root_space(m)).collect();
            let mut nonzero = 0;
            for (i, u) in n_j.iter().enumerate() {
                for v in &n_j[i + 1..] {
                    if !kirillov_form(&sc, &x, u, v).is_zero() {
                        nonzero += 1;
                    }
                }
            }
            let detail = if nonzero == 0 { String::new() } else { format!("{nonzero} nonzero pairings") };
            out.push(case(t, format!("{} dim n_j {}", type_label(&f), n_j.len()), nonzero == 0, None, detail));
        }
        return Ok(());
    }
    let Target::Numeric(family) = *t else { unreachable!() };
    let form = numeric_form(family, cfg)?;
    for f in form.orbit_types()? {
        out.push(match form.foliate(&f, SigmaMethod::Greedy, cfg.seed) {
            Ok(fol) => {
                let r = &fol.report;
                let ok = r.status(CheckKind::Isotropic) == CheckStatus::Pass;
                let res = r.residuals.get(&CheckKind::Isotropic).copied();
                case(t, format!("{} dim n_j {}", type_label(&f), r.dim_n_j), ok, res, "")
            }
            Err(e) => case(t, type_label(&f), false, None, e.to_string()),
        });
    }
    Ok(())
}

fn darboux(t: &Target, out: &mut Vec<CaseResult>) -> Result<()> {
    let sc = match *t {
        Target::Split(s, r) => chevalley_basis(&build_root_system(s, r)?, FormMode::Split),
        Target::Numeric(fam) => {
            let (s, r) = fam.split_type().ok_or_else(|| Error::Unsupported(format!("{fam} is not split")))?;
            chevalley_basis(&build_root_system(s, r)?, FormMode::Split)
        }
        Target::Complex(..) => return Err(Error::Unsupported("Darboux bases are built for split forms".into())),
    };
    let sys = sc.system();
    let mut systems = vec![("standard positive system".to_string(), PositiveSystem::standard(sys))];
    for i in 0..sys.rank() {
        systems.push((format!("positive system reflected by s{}", i + 1), PositiveSystem::reflected(sys, i)));
    }
    for (name, pos) in systems {
        let x = chamber_element(&sc, &pos);
        out.push(match darboux_basis(&sc, &x, &pos) {
            Ok(d) => {
                let dev = d.max_deviation();
                let ok = d.pairing_identity_exact && dev <= 1e-12;
                let detail = if d.pairing_identity_exact { "" } else { "pairing identity failed" };
                case(t, name, ok, Some(dev), detail)
            }
            Err(e) => case(t, name, false, None, e.to_string()),
        });
    }
    Ok(())
}

fn ruling(t: &Target, cfg: &SuiteConfig, out: &mut Vec<CaseResult>) -> Result<()> {
    if let Some(sc) = exact_algebra(t)? {
        for f in exact_orbit_types(&sc)? {
            out.push(match foliate_exact(&sc, &f, SigmaMethod::Greedy, cfg.seed) {
                Ok(fol) => {
                    let ok = fol.report.status(CheckKind::Ruling) == CheckStatus::Pass;
                    case(t, format!("{} dim n_j {}", type_label(&f), fol.report.dim_n_j), ok, None, "")
                }
                Err(e) => case(t, type_label(&f), false, None, e.to_string()),
            });
        }
        return Ok(());
    }
    let Target::Numeric(family) = *t else { unreachable!() };
    let form = numeric_form(family, cfg)?;
    for f in form.orbit_types()? {
        out.push(match form.foliate(&f, SigmaMethod::Greedy, cfg.seed) {
            Ok(fol) => {
                let r = &fol.report;
                let ok = r.status(CheckKind::Ruling) == CheckStatus::Pass;
                let res = r.residuals.get(&CheckKind::Ruling).copied();
                case(t, format!("{} dim n_j {}", type_label(&f), r.dim_n_j), ok, res, "")
            }
            Err(e) => case(t, type_label(&f), false, None, e.to_string()),
        });
    }
    Ok(())
}

/// `Ad(e^{tE}) diag(1, −1) = diag(1, −1) − 2t·e₁₂` in `sl(2,R)`.
fn sl2_closed_form() -> CaseResult {
    let t = Target::Numeric(Family::SlR { n: 2 });
    let x = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let mut worst = 0.0f64;
    for s in [-10.0, -1.0, 1.0, 10.0] {
        let y = DMatrix::from_row_slice(2, 2, &[0.0, s, 0.0, 0.0]);
        let want = DMatrix::from_row_slice(2, 2, &[1.0, -2.0 * s, 0.0, -1.0]);
        match adjoint_exp(&y, &x) {
            Ok(got) => worst = worst.max((got - want).norm()),
            Err(e) => return case(&t, "closed form Ad(exp tE) H", false, None, e.to_string()),
        }
    }
    case(&t, "closed form Ad(exp tE) H, t in {-10,-1,1,10}", worst <= 1e-12, Some(worst), "")
}

fn cayley(t: &Target, cfg: &SuiteConfig, out: &mut Vec<CaseResult>) -> Result<()> {
    if let Some(sc) = exact_algebra(t)? {
        for f in exact_orbit_types(&sc)? {
            out.push(match cayley_csa(&sc, &f) {
                Ok(csa) => {
                    let abelian = csa
                        .basis
                        .iter()
                        .enumerate()
                        .all(|(i, a)| csa.basis[i + 1..].iter().all(|b| sc.bracket(a, b).is_zero()));
                    let ok = abelian
                        && csa.dim() == sc.rank()
                        && csa.toroidal_dim == f.len()
                        && csa.vector_dim == sc.rank() - f.len();
                    let detail = format!("k-dim {} p-dim {}", csa.toroidal_dim, csa.vector_dim);
                    case(t, type_label(&f), ok, None, detail)
                }
                Err(e) => case(t, type_label(&f), false, None, e.to_string()),
            });
        }
        return Ok(());
    }
    let Target::Numeric(family) = *t else { unreachable!() };
    let form = numeric_form(family, cfg)?;
    let dim_t = form.datum.t_basis.len();
    for f in form.orbit_types()? {
        out.push(match cayley_chain(&form.algebra, &form.datum, &form.full, &f) {
            Ok(chain) => {
                let lemma = chain.lemma_holds(cfg.tol.verify);
                let dims = chain.toroidal_dim == dim_t + f.len() && chain.vector_dim + chain.toroidal_dim == form.datum.rank();
                let residual = chain
                    .steps
                    .iter()
                    .map(|s| s.h_dual_residual.max(s.strong_orthogonality_residual).max(s.e_fixed_residual))
                    .fold(0.0, f64::max);
                let detail = format!("k-dim {} (t {dim_t}) p-dim {}", chain.toroidal_dim, chain.vector_dim);
                case(t, type_label(&f), lemma && dims, Some(residual), detail)
            }
            Err(e) => case(t, type_label(&f), false, None, e.to_string()),
        });
    }
    Ok(())
}

fn sigma_oracle(t: &Target, cfg: &SuiteConfig, out: &mut Vec<CaseResult>) -> Result<()> {
    let rs = match *t {
        Target::Split(s, r) => RestrictedRoots::split(build_root_system(s, r)?),
        Target::Numeric(fam) => numeric_form(fam, cfg)?.datum.restricted,
        Target::Complex(s, r) => restricted_roots(&chevalley_basis(&build_root_system(s, r)?, FormMode::Complexified)),
    };
    let n = rs.positives().len();
    if n > ORACLE_LIMIT {
        return Err(Error::Unsupported(format!("{t}: {n} positive restricted roots exceed the oracle limit {ORACLE_LIMIT}")));
    }
    let pos = rs.positives();
    let mut chains: Vec<Vec<Root>> = pos.iter().map(|b| vec![b.clone()]).collect();
    for a in pos {
        for b in pos {
            if a != b && is_admissible(&rs.system, &[a.clone(), b.clone()])? {
                chains.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    for betas in chains {
        let label = format!("betas {{{}}}", betas.iter().map(Root::to_string).collect::<Vec<_>>().join(", "));
        let g = sigma_chain(&rs, &betas, SigmaMethod::Greedy)?;
        let o = sigma_chain(&rs, &betas, SigmaMethod::Oracle)?;
        let mut mismatch = None;
        for (k, (gs, os)) in g.stages.iter().zip(&o.stages).enumerate() {
            if gs.len() != os.len() || !sigma_conditions_hold(&rs, &betas[..k], gs) {
                mismatch = Some(format!("stage {k}: greedy {} oracle {}", gs.len(), os.len()));
                break;
            }
        }
        let sizes = g.stages.iter().map(|s| s.len().to_string()).collect::<Vec<_>>().join(">");
        out.push(match mismatch {
            None => case(t, label, true, None, format!("|Sigma_n| {sizes}")),
            Some(m) => case(t, label, false, None, m),
        });
    }
    Ok(())
}
