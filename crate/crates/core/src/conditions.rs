//! Runtime checks of the existence, uniqueness and positivity hypotheses.
//!
//! Boundedness of `f` and its Lipschitz constants are estimated by
//! evaluating `f` on a deterministic sample of the admissible box: the
//! `3^4` lattice of corners, edge midpoints and centre, followed by a
//! Halton sequence. Sampled values are estimates, never certificates.
//! Continuity of `f` is assumed, not checked.

use thiserror::Error;

use crate::greens::{GreenKernel, KernelNorms, KernelSigns};
use crate::picard::contraction_factor;
use crate::problem::{DomainKind, ProblemSpec};
use crate::scalar::{lit, to_f64, Real};

/// Fewest Halton samples accepted by the estimators.
pub const MIN_SAMPLES: usize = 1000;
pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ConditionError {
    #[error("f is not finite at (t, x, y, z) = ({0}, {1}, {2}, {3})")]
    NonFiniteValue(f64, f64, f64, f64),
    #[error("bound M must be positive, got {0}")]
    NonPositiveBound(f64),
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
}

/// Radical inverse of `index` in `base`: the van der Corput sequence.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let (mut value, mut scale) = (0.0, inv);
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale *= inv;
    }
    value
}

const HALTON_BASES: [u64; 5] = [2, 3, 5, 7, 11];

/// Point `index` (starting at 1) of the Halton sequence in `[0, 1)^D`.
pub fn halton<const D: usize>(index: u64) -> [f64; D] {
    std::array::from_fn(|d| radical_inverse(index, HALTON_BASES[d]))
}

/// Axis-aligned box in `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleBox<T> {
    pub lo: [T; 4],
    pub hi: [T; 4],
}

impl<T: Real> SampleBox<T> {
    /// `D_M` for [`DomainKind::Symmetric`], `D_M^+` for [`DomainKind::Positive`].
    /// The `y` interval of `D_M^+` follows the sign of `sigma(G) sigma(G1)`;
    /// without a constant sign it falls back to the symmetric interval.
    pub fn admissible(m: T, norms: &KernelNorms<T>, signs: &KernelSigns, domain: DomainKind) -> Self {
        let [bx, by, bz] = norms.scaled(m);
        let zero = T::zero();
        match domain {
            DomainKind::Symmetric => Self::symmetric(m, norms),
            DomainKind::Positive => {
                let (ylo, yhi) = match signs.product() {
                    Some(1) => (zero, by),
                    Some(_) => (-by, zero),
                    None => (-by, by),
                };
                Self {
                    lo: [zero, zero, ylo, -bz],
                    hi: [T::one(), bx, yhi, bz],
                }
            }
        }
    }

    pub fn symmetric(m: T, norms: &KernelNorms<T>) -> Self {
        let [bx, by, bz] = norms.scaled(m);
        Self {
            lo: [T::zero(), -bx, -by, -bz],
            hi: [T::one(), bx, by, bz],
        }
    }

    fn at(&self, unit: [f64; 4]) -> [T; 4] {
        std::array::from_fn(|d| self.lo[d] + (self.hi[d] - self.lo[d]) * lit(unit[d]))
    }

    /// Lattice points followed by `samples` Halton points.
    pub fn points(&self, samples: usize) -> impl Iterator<Item = [T; 4]> + '_ {
        let lattice = (0..81usize).map(move |code| {
            let unit: [f64; 4] = std::array::from_fn(|d| (code / 3usize.pow(d as u32) % 3) as f64 * 0.5);
            self.at(unit)
        });
        let halton = (1..=samples as u64).map(move |i| self.at(halton::<4>(i)));
        lattice.chain(halton)
    }
}

fn eval_checked<T: Real>(problem: &ProblemSpec<T>, p: [T; 4]) -> Result<T, ConditionError> {
    let v = problem.f(p[0], p[1], p[2], p[3]);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConditionError::NonFiniteValue(to_f64(p[0]), to_f64(p[1]), to_f64(p[2]), to_f64(p[3])))
    }
}

fn check_inputs<T: Real>(m: T, samples: usize) -> Result<(), ConditionError> {
    if !(m > T::zero()) {
        return Err(ConditionError::NonPositiveBound(to_f64(m)));
    }
    if samples < MIN_SAMPLES {
        return Err(ConditionError::TooFewSamples(samples));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupEstimate<T> {
    /// Sample maximum of `|f|`.
    pub sup_f: T,
    /// `0 <= sigma(G) f` held at every sample.
    pub sign_ok: bool,
}

/// Sampled `sup |f|` over the admissible box, and whether `sigma(G) f >= 0`
/// held throughout. `sigma(G)` is taken as `+1` when `G` changes sign.
pub fn estimate_sup_f<T: Real>(
    problem: &ProblemSpec<T>,
    m: T,
    norms: &KernelNorms<T>,
    signs: &KernelSigns,
    domain: DomainKind,
    samples: usize,
) -> Result<SupEstimate<T>, ConditionError> {
    check_inputs(m, samples)?;
    let sigma: T = lit(f64::from(signs.sigma_g().unwrap_or(1)));
    let region = SampleBox::admissible(m, norms, signs, domain);
    let mut sup_f = T::zero();
    let mut sign_ok = true;
    for p in region.points(samples) {
        let v = eval_checked(problem, p)?;
        sup_f = sup_f.max(v.abs());
        sign_ok &= sigma * v >= T::zero();
    }
    Ok(SupEstimate { sup_f, sign_ok })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LipschitzProvenance {
    /// Supplied with the problem.
    Analytic,
    /// Sampled difference quotients: a lower bound of the true constants.
    SampledEstimate,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LipschitzEstimate<T> {
    pub constants: [T; 3],
    pub provenance: LipschitzProvenance,
}

/// Largest per-coordinate difference quotient of `f` over pairs of points
/// of `D_M` that differ in one of `x, y, z`.
pub fn sampled_lipschitz<T: Real>(
    problem: &ProblemSpec<T>,
    m: T,
    norms: &KernelNorms<T>,
    samples: usize,
) -> Result<[T; 3], ConditionError> {
    check_inputs(m, samples)?;
    let region = SampleBox::symmetric(m, norms);
    let mut out = [T::zero(); 3];
    for i in 1..=samples as u64 {
        let unit = halton::<5>(i);
        let p = region.at([unit[0], unit[1], unit[2], unit[3]]);
        let fp = eval_checked(problem, p)?;
        for c in 0..3 {
            let d = c + 1;
            let mut q = p;
            q[d] = region.lo[d] + (region.hi[d] - region.lo[d]) * lit(unit[4]);
            let delta = q[d] - p[d];
            if delta.abs() > T::epsilon() * (T::one() + p[d].abs()) * lit(1e3) {
                let fq = eval_checked(problem, q)?;
                out[c] = out[c].max((fq - fp).abs() / delta.abs());
            }
        }
    }
    Ok(out)
}

/// Supplied constants when they cover this `M`, sampled estimates otherwise.
pub fn estimate_lipschitz<T: Real>(
    problem: &ProblemSpec<T>,
    m: T,
    norms: &KernelNorms<T>,
    samples: usize,
) -> Result<LipschitzEstimate<T>, ConditionError> {
    check_inputs(m, samples)?;
    match problem.lipschitz_for(m) {
        Some(constants) => Ok(LipschitzEstimate {
            constants,
            provenance: LipschitzProvenance::Analytic,
        }),
        None => Ok(LipschitzEstimate {
            constants: sampled_lipschitz(problem, m, norms, samples)?,
            provenance: LipschitzProvenance::SampledEstimate,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionVerdict<T> {
    pub bound: T,
    pub norms: KernelNorms<T>,
    pub signs: KernelSigns,
    /// `(M0 M, M1 M, M2 M)`.
    pub envelope: [T; 3],
    /// Sampled `sup |f|` on the problem's selected domain.
    pub sup_f: T,
    pub sup_f_symmetric: T,
    pub sup_f_positive: T,
    pub sign_ok: bool,
    pub lipschitz: LipschitzEstimate<T>,
    pub q: T,
    /// `sup |f| <= M` on `D_M`: a solution exists.
    pub theorem1_holds: bool,
    /// Sign and bound conditions on `D_M^+`; `None` when `G` or `G1`
    /// changes sign and the hypothesis cannot be stated.
    pub theorem2_holds: Option<bool>,
    /// Existence conditions plus `q < 1`: a unique solution.
    pub theorem3_holds: bool,
    /// Positivity conditions plus `q < 1`.
    pub theorem4_holds: Option<bool>,
    pub predicted_monotonicity: Monotonicity,
}

pub fn verdict<T: Real>(
    problem: &ProblemSpec<T>,
    kernel: &GreenKernel<T>,
    m: T,
    samples: usize,
) -> Result<ConditionVerdict<T>, ConditionError> {
    check_inputs(m, samples)?;
    let norms = kernel.norms();
    let signs = kernel.signs();
    let symmetric = estimate_sup_f(problem, m, &norms, &signs, DomainKind::Symmetric, samples)?;
    let positive = estimate_sup_f(problem, m, &norms, &signs, DomainKind::Positive, samples)?;
    let lipschitz = estimate_lipschitz(problem, m, &norms, samples)?;
    let q = contraction_factor(lipschitz.constants, &norms);
    let contractive = q < T::one();

    let theorem1 = symmetric.sup_f <= m;
    let constant_sign = signs.g.is_constant() && signs.g1.is_constant();
    let theorem2 = constant_sign.then(|| positive.sign_ok && positive.sup_f <= m);
    let predicted_monotonicity = match signs.product() {
        Some(1) => Monotonicity::Increasing,
        Some(_) => Monotonicity::Decreasing,
        None => Monotonicity::None,
    };
    let sup_f = match problem.domain {
        DomainKind::Symmetric => symmetric.sup_f,
        DomainKind::Positive => positive.sup_f,
    };
    Ok(ConditionVerdict {
        bound: m,
        norms,
        signs,
        envelope: norms.scaled(m),
        sup_f,
        sup_f_symmetric: symmetric.sup_f,
        sup_f_positive: positive.sup_f,
        sign_ok: positive.sign_ok,
        lipschitz,
        q,
        theorem1_holds: theorem1,
        theorem2_holds: theorem2,
        theorem3_holds: theorem1 && contractive,
        theorem4_holds: theorem2.map(|t2| t2 && contractive),
        predicted_monotonicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::{kernel_catalog, CaseId, RowSign};
    use crate::problem::Boundary;

    #[test]
    fn van_der_corput_prefix() {
        let v: Vec<f64> = (1..=4).map(|i| radical_inverse(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
        assert_eq!(radical_inverse(1, 3), 1.0 / 3.0);
    }

    #[test]
    fn lattice_covers_corners() {
        let b = SampleBox {
            lo: [0.0, -1.0, -2.0, -3.0],
            hi: [1.0, 1.0, 2.0, 3.0],
        };
        let pts: Vec<_> = b.points(0).collect();
        assert_eq!(pts.len(), 81);
        assert!(pts.contains(&[1.0, 1.0, 2.0, 3.0]));
        assert!(pts.contains(&[0.0, -1.0, -2.0, -3.0]));
        assert!(pts.contains(&[0.5, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn zero_function_is_trivially_fine() {
        let p = ProblemSpec::<f64>::new(|_, _, _, _| 0.0, Boundary::Case(CaseId::Case1));
        let k = kernel_catalog(CaseId::Case1);
        let est = estimate_sup_f(&p, 0.7, &k.norms(), &k.signs(), DomainKind::Positive, 1000).unwrap();
        assert_eq!(est.sup_f, 0.0);
        assert!(est.sign_ok);
    }

    #[test]
    fn constant_function_has_zero_lipschitz() {
        let p = ProblemSpec::<f64>::new(|_, _, _, _| 3.0, Boundary::Case(CaseId::Case1));
        let k = kernel_catalog(CaseId::Case1);
        let l = estimate_lipschitz(&p, 2.0, &k.norms(), 1000).unwrap();
        assert_eq!(l.constants, [0.0, 0.0, 0.0]);
        assert_eq!(l.provenance, LipschitzProvenance::SampledEstimate);
    }

    #[test]
    fn linear_function_lipschitz_is_recovered() {
        let p = ProblemSpec::<f64>::new(|_, x, y, z| 2.0 * x - 0.5 * y + 3.0 * z, Boundary::Case(CaseId::Case2));
        let k = kernel_catalog(CaseId::Case2);
        let l = sampled_lipschitz(&p, 1.0, &k.norms(), 1000).unwrap();
        for (a, b) in l.iter().zip([2.0, 0.5, 3.0]) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn expansive_z_dependence_fails_uniqueness() {
        let p = ProblemSpec::<f64>::new(|_, _, _, z| 2.0 * z, Boundary::Case(CaseId::Case2))
            .with_lipschitz([0.0, 0.0, 2.0], f64::INFINITY)
            .unwrap();
        let k = kernel_catalog(CaseId::Case2);
        let v = verdict(&p, &k, 1.0, 1000).unwrap();
        assert_eq!(v.q, 2.0);
        assert!(!v.theorem3_holds);
        assert_eq!(v.theorem4_holds, Some(false));
    }

    #[test]
    fn input_validation() {
        let p = ProblemSpec::<f64>::new(|_, _, _, _| 0.0, Boundary::Case(CaseId::Case1));
        let k = kernel_catalog(CaseId::Case1);
        assert_eq!(verdict(&p, &k, 0.0, 1000).unwrap_err(), ConditionError::NonPositiveBound(0.0));
        assert_eq!(verdict(&p, &k, 1.0, 10).unwrap_err(), ConditionError::TooFewSamples(10));
    }

    #[test]
    fn non_finite_values_surface() {
        let p = ProblemSpec::<f64>::new(|_, x, _, _| x.ln(), Boundary::Case(CaseId::Case1));
        let k = kernel_catalog(CaseId::Case1);
        assert!(matches!(
            verdict(&p, &k, 1.0, 1000),
            Err(ConditionError::NonFiniteValue(..))
        ));
    }

    #[test]
    fn mixed_sign_kernel_makes_positivity_inapplicable() {
        let bc = crate::greens::BoundaryConditions::with_ends(
            [[1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            [crate::greens::End::Left, crate::greens::End::Right, crate::greens::End::Right],
        );
        let k = GreenKernel::general(bc).unwrap();
        assert_eq!(k.signs().g1, RowSign::Mixed);
        let p = ProblemSpec::<f64>::new(|_, _, _, _| -0.1, Boundary::Conditions(bc));
        let v = verdict(&p, &k, 1.0, 1000).unwrap();
        assert!(v.theorem1_holds);
        assert_eq!(v.theorem2_holds, None);
        assert_eq!(v.theorem4_holds, None);
        assert_eq!(v.predicted_monotonicity, Monotonicity::None);
    }
}
