//! Green's function for arbitrary rank-3 boundary conditions.
//!
//! For a fixed source point `s`, `G(., s)` is the piecewise cubic
//!
//! ```text
//! G(t, s) = c1 + c2 t + c3 t^2 / 2                  for t <= s
//! G(t, s) = c1 + c2 t + c3 t^2 / 2 + (t - s)^2 / 2  for t >= s
//! ```
//!
//! so that `G''' = 0` away from the diagonal and `G_tt` jumps by one across
//! it. The coefficients solve the three boundary equations. The system
//! matrix does not depend on `s`, only the right-hand side does, so the
//! inverse is computed once and `c(s)` is recovered on demand.

use crate::scalar::{lit, Real};

use super::linalg;
use super::{BoundaryConditions, Branch, End, KernelError, KernelRow};

/// Condition estimate above which the boundary system is treated as singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e12;

#[derive(Clone, Debug)]
pub struct GeneralKernel<T> {
    bc: BoundaryConditions<T>,
    inverse: [[T; 3]; 3],
    condition: T,
}

impl<T: Real> GeneralKernel<T> {
    pub fn new(bc: BoundaryConditions<T>) -> Result<Self, KernelError> {
        bc.check_rank()?;
        let mut matrix = [[T::zero(); 3]; 3];
        let half = lit::<T>(0.5);
        for (i, (row, end)) in bc.rows().iter().zip(bc.ends).enumerate() {
            let [a, b, g] = *row;
            matrix[i] = match end {
                End::Left => [a, b, g],
                End::Right => [a, a + b, a * half + b + g],
            };
        }
        let (inverse, condition) = linalg::invert3(matrix).ok_or(KernelError::SingularBoundarySystem {
            condition: f64::INFINITY,
        })?;
        if !(condition <= lit(SINGULARITY_THRESHOLD)) {
            return Err(KernelError::SingularBoundarySystem {
                condition: crate::scalar::to_f64(condition),
            });
        }
        Ok(Self {
            bc,
            inverse,
            condition,
        })
    }

    pub fn boundary_conditions(&self) -> &BoundaryConditions<T> {
        &self.bc
    }

    /// 1-norm condition estimate of the boundary system.
    pub fn condition(&self) -> T {
        self.condition
    }

    /// Coefficients `(c1, c2, c3)` of the `t <= s` piece for source point `s`.
    pub fn coefficients(&self, s: T) -> [T; 3] {
        let r = T::one() - s;
        let half = lit::<T>(0.5);
        let mut rhs = [T::zero(); 3];
        for (i, (row, end)) in self.bc.rows().iter().zip(self.bc.ends).enumerate() {
            if end == End::Right {
                let [a, b, g] = *row;
                rhs[i] = -(a * r * r * half + b * r + g);
            }
        }
        let mut c = [T::zero(); 3];
        for (i, ci) in c.iter_mut().enumerate() {
            *ci = self.inverse[i][0] * rhs[0] + self.inverse[i][1] * rhs[1] + self.inverse[i][2] * rhs[2];
        }
        c
    }

    pub fn eval(&self, row: KernelRow, branch: Branch, t: T, s: T) -> T {
        let [c1, c2, c3] = self.coefficients(s);
        let half = lit::<T>(0.5);
        let d = t - s;
        let lower = branch == Branch::Lower;
        match row {
            KernelRow::G => {
                let base = c1 + c2 * t + c3 * t * t * half;
                if lower {
                    base + d * d * half
                } else {
                    base
                }
            }
            KernelRow::G1 => {
                let base = c2 + c3 * t;
                if lower {
                    base + d
                } else {
                    base
                }
            }
            KernelRow::G2 => {
                if lower {
                    c3 + T::one()
                } else {
                    c3
                }
            }
        }
    }
}
