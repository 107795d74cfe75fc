//! Grid-refinement study against a closed-form solution.

use thiserror::Error;

use crate::picard::{SolveError, Solver};
use crate::problem::ProblemSpec;
use crate::quadrature::{Grid, QuadratureError};
use crate::scalar::Real;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum StudyError {
    #[error("problem has no exact solution to compare against")]
    NoExactSolution,
    #[error("starting grid has {n} intervals; need at least 4")]
    GridTooCoarse { n: usize },
    #[error(transparent)]
    Grid(#[from] QuadratureError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow<T> {
    pub h: T,
    pub intervals: usize,
    pub iterations: usize,
    pub max_dev_exact: T,
    /// `log2(dev(2h) / dev(h))`; absent on the coarsest row.
    pub observed_order: Option<T>,
}

/// Solves on `h0, h0/2, ..., h0/2^levels` and reports the maximal nodal
/// deviation from the exact solution on each grid.
pub fn convergence_study<T: Real>(
    problem: &ProblemSpec<T>,
    h0: f64,
    levels: usize,
    solver: &Solver<T>,
) -> Result<Vec<ConvergenceRow<T>>, StudyError> {
    if !problem.has_exact() {
        return Err(StudyError::NoExactSolution);
    }
    let mut grid = Grid::<T>::from_spacing(h0)?;
    if grid.intervals() < 4 {
        return Err(StudyError::GridTooCoarse { n: grid.intervals() });
    }
    let mut rows: Vec<ConvergenceRow<T>> = Vec::with_capacity(levels + 1);
    for _ in 0..=levels {
        let sol = solver.solve(problem, &grid)?;
        let dev = sol.report.max_dev_exact.expect("exact solution present");
        let observed_order = rows.last().map(|prev| (prev.max_dev_exact / dev).log2());
        rows.push(ConvergenceRow {
            h: grid.h(),
            intervals: grid.intervals(),
            iterations: sol.report.iterations,
            max_dev_exact: dev,
            observed_order,
        });
        grid = grid.refined();
    }
    Ok(rows)
}
