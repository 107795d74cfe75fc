//! Solver for fully third-order two-point boundary value problems
//!
//! ```text
//! u'''(t) = f(t, u, u', u''),   0 < t < 1,
//! B1[u] = B2[u] = B3[u] = 0,
//! ```
//!
//! with homogeneous linear boundary functionals. The problem is rewritten
//! as a fixed-point equation `phi = A phi` for the nonlinear term
//! `phi = u'''`: given `phi`, the linear problem `u''' = phi` is solved
//! through its Green's function `G`, and `A phi = f(t, u, u', u'')`.
//! Successive approximation on `phi` converges geometrically whenever
//! `q = L0 M0 + L1 M1 + L2 M2 < 1`, where `L_i` are Lipschitz constants of
//! `f` and `M_i` are the kernel norms.
//!
//! Modules:
//! - [`greens`]: closed-form and constructed kernels, signs, norms
//! - [`quadrature`]: trapezoid rule split at the kernel diagonal
//! - [`picard`]: the iteration, a priori bounds and residual checks
//! - [`conditions`]: sampled checks of the existence and uniqueness hypotheses
//! - [`corpus`]: the built-in benchmark problems
//! - [`study`]: grid-refinement studies
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases fix the scalar to `f64`.
//!
//! ```
//! use thirdbvp::{corpus, Grid64, Solver};
//!
//! let entry = corpus::get_problem::<f64>("yao-feng-7").unwrap();
//! let grid = Grid64::new(100).unwrap();
//! let sol = Solver::default().solve(&entry.problem, &grid).unwrap();
//! assert_eq!(sol.report.iterations, 5);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod conditions;
pub mod corpus;
pub mod greens;
pub mod picard;
pub mod problem;
pub mod quadrature;
pub mod scalar;
pub mod study;

pub use conditions::{verdict, ConditionError, ConditionVerdict, LipschitzProvenance, Monotonicity};
pub use corpus::{get_problem, list_problems, CorpusEntry, CorpusError};
pub use greens::{
    build_general_kernel, kernel_catalog, kernel_norms, kernel_signs, BoundaryConditions, CaseId, End,
    GreenKernel, KernelError, KernelNorms, KernelRow, KernelSigns, RowSign,
};
pub use picard::{apriori_bound, residual, solve, IterationReport, IterationState, Solution, SolveError, Solver};
pub use problem::{Boundary, DomainKind, ProblemSpec};
pub use quadrature::{integrate_kernel_row, trapezoid, Grid, QuadratureError, QuadratureRule};
pub use scalar::Real;
pub use study::{convergence_study, ConvergenceRow, StudyError};

pub type BoundaryConditions64 = BoundaryConditions<f64>;
pub type GreenKernel64 = GreenKernel<f64>;
pub type Grid64 = Grid<f64>;
pub type ProblemSpec64 = ProblemSpec<f64>;
pub type Solution64 = Solution<f64>;
pub type IterationReport64 = IterationReport<f64>;
pub type ConditionVerdict64 = ConditionVerdict<f64>;

pub type GreenKernel32 = GreenKernel<f32>;
pub type Grid32 = Grid<f32>;
pub type ProblemSpec32 = ProblemSpec<f32>;
