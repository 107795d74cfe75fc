//! Successive approximation for the nonlinear term.
//!
//! Instead of iterating on `u`, the solver iterates on `phi = u'''`:
//!
//! ```text
//! phi_0(t)     = f(t, 0, 0, 0)
//! u_k, y_k, z_k = int G phi_k, int G1 phi_k, int G2 phi_k
//! phi_{k+1}(t) = f(t, u_k(t), y_k(t), z_k(t))
//! ```
//!
//! When `f` is Lipschitz on the admissible box with
//! `q = L0 M0 + L1 M1 + L2 M2 < 1` the map is a contraction and
//! `||phi_k - phi|| <= q^k / (1 - q) ||phi_1 - phi_0||`.

use thiserror::Error;

use crate::greens::{KernelError, KernelNorms, KernelRow};
use crate::problem::ProblemSpec;
use crate::quadrature::{Grid, KernelQuadrature, QuadratureError, QuadratureRule};
use crate::scalar::{lit, sup_distance, sup_norm, to_f64, Real};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_SPACING: f64 = 0.01;
/// Growth of the iterate difference over its first value that counts as divergence.
pub const DIVERGENCE_FACTOR: f64 = 10.0;
/// Slack on the `|u^(i)| <= M_i M` envelope checks.
pub const BOUND_SLACK: f64 = 1e-6;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("iteration diverged: difference {diff:e} at step {iteration} exceeds {factor}x the first difference {first:e}", factor = DIVERGENCE_FACTOR)]
    Diverged { iteration: usize, diff: f64, first: f64 },
    #[error("no convergence after {iterations} iterations (last difference {diff:e})")]
    MaxIterExceeded { iterations: usize, diff: f64 },
    #[error("f returned a non-finite value at node {node} in step {iteration}")]
    NonFiniteValue { iteration: usize, node: usize },
    #[error("q = {q} is not a contraction factor (need 0 <= q < 1)")]
    QNotContractive { q: f64 },
    #[error("residual needs at least 4 grid intervals, got {n}")]
    GridTooCoarse { n: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Current iterate: `phi_k` and the reconstructed `u, u', u''`.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationState<T> {
    pub phi: Vec<T>,
    pub u: Vec<T>,
    pub y: Vec<T>,
    pub z: Vec<T>,
    pub k: usize,
    pub diff: T,
}

/// Outcome of the `|u| <= M0 M`, `|u'| <= M1 M`, `|u''| <= M2 M` checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundChecks {
    pub u: bool,
    pub du: bool,
    pub d2u: bool,
}

impl BoundChecks {
    pub fn all(&self) -> bool {
        self.u && self.du && self.d2u
    }
}

/// Finite-difference check that the iterate satisfies the differential
/// equation and the boundary conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual<T> {
    /// `max_i |D^3 u(t_i) - f(t_i, u_i, y_i, z_i)|` over interior nodes.
    pub interior: T,
    /// `|B_j[u]|` with one-sided second-order differences.
    pub boundary: [T; 3],
}

impl<T: Real> Residual<T> {
    pub fn boundary_max(&self) -> T {
        self.boundary.iter().fold(T::zero(), |m, v| m.max(*v))
    }

    pub fn value(&self) -> T {
        self.interior.max(self.boundary_max())
    }
}

#[derive(Clone, Debug)]
pub struct IterationReport<T> {
    /// Number of `phi` updates performed.
    pub iterations: usize,
    pub final_diff: T,
    /// `||phi_{k+1} - phi_k||` for `k = 0..iterations`.
    pub diffs: Vec<T>,
    pub tol: T,
    pub rule: QuadratureRule,
    pub norms: KernelNorms<T>,
    pub q: Option<T>,
    /// A priori bound at the final iterate.
    pub p_k: Option<T>,
    pub bound: Option<T>,
    pub bound_checks: Option<BoundChecks>,
    pub max_dev_exact: Option<T>,
    /// `None` when the grid is too coarse for the stencils.
    pub residual: Option<Residual<T>>,
    pub converged: bool,
}

impl<T: Real> IterationReport<T> {
    /// `||phi_1 - phi_0||`.
    pub fn first_diff(&self) -> T {
        self.diffs.first().copied().unwrap_or_else(T::zero)
    }

    /// Successive ratios `diff_{k+1} / diff_k`.
    pub fn diff_ratios(&self) -> Vec<T> {
        self.diffs
            .windows(2)
            .filter(|w| w[0] > T::zero())
            .map(|w| w[1] / w[0])
            .collect()
    }

    /// A priori bound `p_k` for every recorded iterate `k = 0..=iterations`.
    pub fn apriori_bounds(&self) -> Option<Vec<T>> {
        let q = self.q?;
        (0..=self.iterations)
            .map(|k| apriori_bound(q, self.first_diff(), k).ok())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub state: IterationState<T>,
    pub report: IterationReport<T>,
    /// `phi_0, ..., phi_K`.
    pub iterates: Vec<Vec<T>>,
    pub grid: Grid<T>,
}

/// Solver settings.
#[derive(Clone, Copy, Debug)]
pub struct Solver<T> {
    pub tol: T,
    pub max_iter: usize,
    pub rule: QuadratureRule,
}

impl<T: Real> Default for Solver<T> {
    fn default() -> Self {
        Self {
            tol: lit(DEFAULT_TOLERANCE),
            max_iter: DEFAULT_MAX_ITER,
            rule: QuadratureRule::default(),
        }
    }
}

impl<T: Real> Solver<T> {
    pub fn new(tol: T, max_iter: usize) -> Self {
        Self {
            tol,
            max_iter,
            rule: QuadratureRule::default(),
        }
    }

    pub fn with_rule(mut self, rule: QuadratureRule) -> Self {
        self.rule = rule;
        self
    }

    /// Runs the iteration; fails with [`SolveError::MaxIterExceeded`] when
    /// the tolerance is not reached.
    pub fn solve(&self, problem: &ProblemSpec<T>, grid: &Grid<T>) -> Result<Solution<T>, SolveError> {
        let sol = self.iterate(problem, grid)?;
        if !sol.report.converged {
            return Err(SolveError::MaxIterExceeded {
                iterations: sol.report.iterations,
                diff: to_f64(sol.report.final_diff),
            });
        }
        Ok(sol)
    }

    /// Runs the iteration and returns the last state whether or not the
    /// tolerance was reached.
    pub fn iterate(&self, problem: &ProblemSpec<T>, grid: &Grid<T>) -> Result<Solution<T>, SolveError> {
        if !(self.tol > T::zero()) {
            return Err(SolveError::InvalidTolerance(to_f64(self.tol)));
        }
        let kernel = problem.kernel()?;
        let quad = KernelQuadrature::new(&kernel, grid, self.rule);
        let nodes = grid.nodes();
        let zero = T::zero();

        let update = |k: usize, u: &[T], y: &[T], z: &[T]| -> Result<Vec<T>, SolveError> {
            nodes
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let v = problem.f(t, u[i], y[i], z[i]);
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(SolveError::NonFiniteValue { iteration: k, node: i })
                    }
                })
                .collect()
        };

        let zeros = vec![zero; grid.len()];
        let mut phi = update(0, &zeros, &zeros, &zeros)?;
        let mut iterates = vec![phi.clone()];
        let mut diffs = Vec::new();
        let mut converged = false;
        let divergence = lit::<T>(DIVERGENCE_FACTOR);

        while diffs.len() < self.max_iter.max(1) {
            let k = diffs.len();
            let u = quad.apply(KernelRow::G, &phi)?;
            let y = quad.apply(KernelRow::G1, &phi)?;
            let z = quad.apply(KernelRow::G2, &phi)?;
            let next = update(k + 1, &u, &y, &z)?;
            let diff = sup_distance(&next, &phi);
            diffs.push(diff);
            phi = next;
            iterates.push(phi.clone());
            if diff <= self.tol {
                converged = true;
                break;
            }
            if diff > divergence * diffs[0] {
                return Err(SolveError::Diverged {
                    iteration: k + 1,
                    diff: to_f64(diff),
                    first: to_f64(diffs[0]),
                });
            }
        }

        let state = IterationState {
            u: quad.apply(KernelRow::G, &phi)?,
            y: quad.apply(KernelRow::G1, &phi)?,
            z: quad.apply(KernelRow::G2, &phi)?,
            phi,
            k: diffs.len(),
            diff: diffs.last().copied().unwrap_or(zero),
        };

        let norms = kernel.norms();
        let bound = problem.bound();
        let lipschitz = match bound {
            Some(m) => problem.lipschitz_for(m),
            None => problem.lipschitz().map(|l| l.as_array()),
        };
        let q = lipschitz.map(|l| contraction_factor(l, &norms));
        let p_k = q.and_then(|q| apriori_bound(q, diffs[0], diffs.len()).ok());
        let bound_checks = bound.map(|m| {
            let [b0, b1, b2] = norms.scaled(m);
            let slack = lit::<T>(BOUND_SLACK);
            BoundChecks {
                u: sup_norm(&state.u) <= b0 + slack,
                du: sup_norm(&state.y) <= b1 + slack,
                d2u: sup_norm(&state.z) <= b2 + slack,
            }
        });
        let max_dev_exact = problem.exact().map(|exact| {
            nodes
                .iter()
                .zip(&state.u)
                .fold(zero, |m, (&t, &u)| m.max((u - exact(t)).abs()))
        });
        let residual = residual(&state, problem, grid).ok();

        let report = IterationReport {
            iterations: diffs.len(),
            final_diff: state.diff,
            diffs,
            tol: self.tol,
            rule: self.rule,
            norms,
            q,
            p_k,
            bound,
            bound_checks,
            max_dev_exact,
            residual,
            converged,
        };
        Ok(Solution {
            state,
            report,
            iterates,
            grid: *grid,
        })
    }
}

/// Solves with the default quadrature rule.
pub fn solve<T: Real>(
    problem: &ProblemSpec<T>,
    grid: &Grid<T>,
    tol: T,
    max_iter: usize,
) -> Result<Solution<T>, SolveError> {
    Solver::new(tol, max_iter).solve(problem, grid)
}

/// `q = L0 M0 + L1 M1 + L2 M2`.
pub fn contraction_factor<T: Real>(lipschitz: [T; 3], norms: &KernelNorms<T>) -> T {
    lipschitz[0] * norms.m0 + lipschitz[1] * norms.m1 + lipschitz[2] * norms.m2
}

/// `p_k = q^k / (1 - q) * first_diff`.
pub fn apriori_bound<T: Real>(q: T, first_diff: T, k: usize) -> Result<T, SolveError> {
    if !(q >= T::zero() && q < T::one()) {
        return Err(SolveError::QNotContractive { q: to_f64(q) });
    }
    let qk = if k == 0 { T::one() } else { q.powi(k as i32) };
    Ok(qk / (T::one() - q) * first_diff)
}

/// Finite-difference residual of an iterate against the equation and the
/// boundary conditions. Shares nothing with the quadrature path.
pub fn residual<T: Real>(
    state: &IterationState<T>,
    problem: &ProblemSpec<T>,
    grid: &Grid<T>,
) -> Result<Residual<T>, SolveError> {
    let n = grid.intervals();
    if n < 4 {
        return Err(SolveError::GridTooCoarse { n });
    }
    if state.u.len() != grid.len() {
        return Err(QuadratureError::LengthMismatch {
            expected: grid.len(),
            found: state.u.len(),
        }
        .into());
    }
    let u = &state.u;
    let h = grid.h();
    let two = lit::<T>(2.0);
    let h3 = two * h * h * h;
    let mut interior = T::zero();
    for i in 2..=n - 2 {
        let d3 = (u[i + 2] - two * u[i + 1] + two * u[i - 1] - u[i - 2]) / h3;
        let rhs = problem.f(grid.node(i), u[i], state.y[i], state.z[i]);
        interior = interior.max((d3 - rhs).abs());
    }
    let (three, four, five) = (lit::<T>(3.0), lit::<T>(4.0), lit::<T>(5.0));
    let left = [
        u[0],
        (-three * u[0] + four * u[1] - u[2]) / (two * h),
        (two * u[0] - five * u[1] + four * u[2] - u[3]) / (h * h),
    ];
    let right = [
        u[n],
        (three * u[n] - four * u[n - 1] + u[n - 2]) / (two * h),
        (two * u[n] - five * u[n - 1] + four * u[n - 2] - u[n - 3]) / (h * h),
    ];
    let defects = problem.boundary.conditions().defects(left, right);
    Ok(Residual {
        interior,
        boundary: defects.map(|d| d.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::CaseId;
    use crate::problem::Boundary;

    fn zero_problem() -> ProblemSpec<f64> {
        ProblemSpec::new(|_, _, _, _| 0.0, Boundary::Case(CaseId::Case2))
    }

    #[test]
    fn zero_right_hand_side_converges_in_one_step() {
        let g = Grid::new(100).unwrap();
        let sol = solve(&zero_problem(), &g, 1e-6, 100).unwrap();
        assert_eq!(sol.report.iterations, 1);
        assert!(sol.state.u.iter().all(|&v| v == 0.0));
        assert!(sol.state.phi.iter().all(|&v| v == 0.0));
        assert!(sol.report.converged);
    }

    #[test]
    fn zero_state_has_zero_residual() {
        let g = Grid::new(100).unwrap();
        let sol = solve(&zero_problem(), &g, 1e-6, 100).unwrap();
        let r = residual(&sol.state, &zero_problem(), &g).unwrap();
        assert_eq!(r.value(), 0.0);
    }

    #[test]
    fn apriori_bound_values() {
        assert_eq!(apriori_bound(0.0, 3.0, 1).unwrap(), 0.0);
        assert_eq!(apriori_bound(0.5, 1.0, 3).unwrap(), 0.25);
        assert_eq!(apriori_bound(0.5, 1.0, 0).unwrap(), 2.0);
        assert!(matches!(apriori_bound(1.0, 1.0, 1), Err(SolveError::QNotContractive { .. })));
        assert!(matches!(apriori_bound(-0.1, 1.0, 1), Err(SolveError::QNotContractive { .. })));
    }

    #[test]
    fn linear_problem_matches_closed_form() {
        // u''' = 1 on case 1: u = t^3/6 - t^2/4
        let p = ProblemSpec::new(|_, _, _, _| 1.0, Boundary::Case(CaseId::Case1))
            .with_exact(|t: f64| t.powi(3) / 6.0 - t * t / 4.0);
        let sol = solve(&p, &Grid::new(100).unwrap(), 1e-12, 10).unwrap();
        assert!(sol.report.max_dev_exact.unwrap() < 1e-4);
    }

    #[test]
    fn residual_requires_four_intervals() {
        let g = Grid::new(3).unwrap();
        let sol = solve(&zero_problem(), &g, 1e-6, 10).unwrap();
        assert!(sol.report.residual.is_none());
        assert_eq!(
            residual(&sol.state, &zero_problem(), &g),
            Err(SolveError::GridTooCoarse { n: 3 })
        );
    }

    #[test]
    fn non_finite_right_hand_side_is_reported() {
        let p = ProblemSpec::new(|_, x: f64, _, _| 1.0 / x, Boundary::Case(CaseId::Case1));
        let err = solve(&p, &Grid::new(10).unwrap(), 1e-6, 10).unwrap_err();
        assert_eq!(err, SolveError::NonFiniteValue { iteration: 0, node: 0 });
    }

    #[test]
    fn expansive_map_diverges() {
        // f = 40 z + 1 on case 2: G2 has norm 1, so the map expands by ~40
        let p = ProblemSpec::new(|_, _, _, z: f64| 40.0 * z + 1.0, Boundary::Case(CaseId::Case2));
        let err = solve(&p, &Grid::new(50).unwrap(), 1e-6, 100).unwrap_err();
        assert!(matches!(err, SolveError::Diverged { .. }), "{err:?}");
    }

    #[test]
    fn max_iter_is_enforced() {
        let p = ProblemSpec::new(|_, x: f64, _, _| -(x.exp()), Boundary::Case(CaseId::Case1));
        let g = Grid::new(50).unwrap();
        let err = solve(&p, &g, 1e-14, 2).unwrap_err();
        assert!(matches!(err, SolveError::MaxIterExceeded { iterations: 2, .. }));
        let sol = Solver::new(1e-14, 2).iterate(&p, &g).unwrap();
        assert!(!sol.report.converged);
        assert_eq!(sol.iterates.len(), 3);
    }

    #[test]
    fn invalid_tolerance() {
        let g = Grid::new(10).unwrap();
        assert!(matches!(
            solve(&zero_problem(), &g, 0.0, 10),
            Err(SolveError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn runs_in_single_precision() {
        let p = ProblemSpec::new(|_, x: f32, _, _| -(x.exp()), Boundary::Case(CaseId::Case1));
        let sol = solve(&p, &Grid::<f32>::new(100).unwrap(), 1e-5, 50).unwrap();
        assert_eq!(sol.report.iterations, 4);
        let top = sol.state.u.iter().fold(0.0f32, |m, v| m.max(*v));
        assert!((top - 0.087).abs() < 1e-3, "{top}");
    }
}
