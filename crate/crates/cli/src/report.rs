//! JSON shapes of the `solve` and `check` reports.

use serde::Serialize;
use thirdbvp::picard::{BoundChecks, Residual};
use thirdbvp::{ConditionVerdict64, IterationReport64, LipschitzProvenance, Monotonicity, RowSign};

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub problem: String,
    pub h: f64,
    pub tol: f64,
    pub rule: String,
    pub iterations: usize,
    pub final_diff: f64,
    pub q: Option<f64>,
    pub p_k: Option<f64>,
    #[serde(rename = "M")]
    pub bound: Option<f64>,
    #[serde(rename = "M0")]
    pub m0: f64,
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    pub bound_checks: Option<BoundChecksJson>,
    pub residual: Option<ResidualJson>,
    pub max_dev_exact: Option<f64>,
    pub converged: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundChecksJson {
    pub u: bool,
    pub du: bool,
    pub d2u: bool,
}

impl From<BoundChecks> for BoundChecksJson {
    fn from(b: BoundChecks) -> Self {
        Self {
            u: b.u,
            du: b.du,
            d2u: b.d2u,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ResidualJson {
    /// Largest `|D3 u - f|` over interior nodes.
    pub interior: f64,
    /// `|B1[u]|, |B2[u]|, |B3[u]|`.
    pub boundary: [f64; 3],
}

impl From<Residual<f64>> for ResidualJson {
    fn from(r: Residual<f64>) -> Self {
        Self {
            interior: r.interior,
            boundary: r.boundary,
        }
    }
}

impl SolveReport {
    pub fn new(problem: &str, h: f64, r: &IterationReport64) -> Self {
        Self {
            problem: problem.to_string(),
            h,
            tol: r.tol,
            rule: r.rule.to_string(),
            iterations: r.iterations,
            final_diff: r.final_diff,
            q: r.q,
            p_k: r.p_k,
            bound: r.bound,
            m0: r.norms.m0,
            m1: r.norms.m1,
            m2: r.norms.m2,
            bound_checks: r.bound_checks.map(Into::into),
            residual: r.residual.map(Into::into),
            max_dev_exact: r.max_dev_exact,
            converged: r.converged,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub problem: String,
    #[serde(rename = "M")]
    pub bound: f64,
    pub samples: usize,
    #[serde(rename = "M0")]
    pub m0: f64,
    #[serde(rename = "M1")]
    pub m1: f64,
    #[serde(rename = "M2")]
    pub m2: f64,
    #[serde(rename = "sigma_G")]
    pub sigma_g: Option<i8>,
    #[serde(rename = "sigma_G1")]
    pub sigma_g1: Option<i8>,
    pub constant_sign: ConstantSign,
    pub envelope: [f64; 3],
    pub sup_f: f64,
    pub sup_f_symmetric: f64,
    pub sup_f_positive: f64,
    pub sign_ok: bool,
    pub lipschitz: [f64; 3],
    pub lipschitz_provenance: &'static str,
    pub q: f64,
    pub theorem1_holds: bool,
    /// `null` when `G` or `G1` changes sign.
    pub theorem2_holds: Option<bool>,
    pub theorem3_holds: bool,
    pub theorem4_holds: Option<bool>,
    pub predicted_monotonicity: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ConstantSign {
    #[serde(rename = "G")]
    pub g: bool,
    #[serde(rename = "G1")]
    pub g1: bool,
    #[serde(rename = "G2")]
    pub g2: bool,
}

impl CheckReport {
    pub fn new(problem: &str, samples: usize, v: &ConditionVerdict64) -> Self {
        let constant = |s: RowSign| s.is_constant();
        Self {
            problem: problem.to_string(),
            bound: v.bound,
            samples,
            m0: v.norms.m0,
            m1: v.norms.m1,
            m2: v.norms.m2,
            sigma_g: v.signs.sigma_g(),
            sigma_g1: v.signs.sigma_g1(),
            constant_sign: ConstantSign {
                g: constant(v.signs.g),
                g1: constant(v.signs.g1),
                g2: constant(v.signs.g2),
            },
            envelope: v.envelope,
            sup_f: v.sup_f,
            sup_f_symmetric: v.sup_f_symmetric,
            sup_f_positive: v.sup_f_positive,
            sign_ok: v.sign_ok,
            lipschitz: v.lipschitz.constants,
            lipschitz_provenance: match v.lipschitz.provenance {
                LipschitzProvenance::Analytic => "analytic",
                LipschitzProvenance::SampledEstimate => "sampled-estimate",
            },
            q: v.q,
            theorem1_holds: v.theorem1_holds,
            theorem2_holds: v.theorem2_holds,
            theorem3_holds: v.theorem3_holds,
            theorem4_holds: v.theorem4_holds,
            predicted_monotonicity: match v.predicted_monotonicity {
                Monotonicity::Increasing => "increasing",
                Monotonicity::Decreasing => "decreasing",
                Monotonicity::None => "none",
            },
        }
    }
}
