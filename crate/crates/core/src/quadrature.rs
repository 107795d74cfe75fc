//! Composite trapezoid rule on a uniform grid of `[0, 1]`, with the kernel
//! integrals split at the diagonal `s = t`.

use thiserror::Error;

use crate::greens::{Branch, GreenKernel, KernelRow};
use crate::scalar::{count, lit, Real};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QuadratureError {
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("t = {t} is not a grid node")]
    NodeOffGrid { t: f64 },
    #[error("grid needs at least 2 intervals, got {n}")]
    TooFewIntervals { n: usize },
    #[error("spacing {h} does not divide [0, 1] into a whole number of intervals")]
    NonIntegralSpacing { h: f64 },
}

/// Uniform grid `t_i = i / n`, `i = 0..=n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid<T> {
    n: usize,
    h: T,
}

impl<T: Real> Grid<T> {
    pub fn new(n: usize) -> Result<Self, QuadratureError> {
        if n < 2 {
            return Err(QuadratureError::TooFewIntervals { n });
        }
        Ok(Self {
            n,
            h: T::one() / count(n),
        })
    }

    /// Grid from a spacing `h`, which must divide 1.
    pub fn from_spacing(h: f64) -> Result<Self, QuadratureError> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(QuadratureError::NonIntegralSpacing { h });
        }
        let n = (1.0 / h).round();
        if (n * h - 1.0).abs() > 1e-9 {
            return Err(QuadratureError::NonIntegralSpacing { h });
        }
        Self::new(n as usize)
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.n
    }

    /// Number of nodes, `n + 1`.
    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn node(&self, i: usize) -> T {
        count::<T>(i) / count::<T>(self.n)
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }

    /// Index of the node equal to `t` (within a few ulps of the spacing).
    pub fn index_of(&self, t: T) -> Result<usize, QuadratureError> {
        let x = t * count(self.n);
        let i = x.round();
        let off = || QuadratureError::NodeOffGrid {
            t: crate::scalar::to_f64(t),
        };
        if !(i >= T::zero()) || i > count(self.n) || (x - i).abs() > lit(1e-9) {
            return Err(off());
        }
        i.to_usize().ok_or_else(off)
    }

    /// Halved spacing.
    pub fn refined(&self) -> Self {
        Self {
            n: self.n * 2,
            h: self.h / lit(2.0),
        }
    }
}

/// `h (v_0/2 + v_1 + ... + v_{n-1} + v_n/2)`.
pub fn trapezoid<T: Real>(values: &[T], grid: &Grid<T>) -> Result<T, QuadratureError> {
    if values.len() != grid.len() {
        return Err(QuadratureError::LengthMismatch {
            expected: grid.len(),
            found: values.len(),
        });
    }
    Ok(trapezoid_partial(values, grid.h()))
}

/// Trapezoid sum over consecutive samples with spacing `h`. A single
/// sample spans no interval and integrates to zero.
pub fn trapezoid_partial<T: Real>(values: &[T], h: T) -> T {
    match values {
        [] | [_] => T::zero(),
        [first, inner @ .., last] => {
            let half = lit::<T>(0.5);
            let interior = inner.iter().fold(T::zero(), |acc, &v| acc + v);
            h * ((*first + *last) * half + interior)
        }
    }
}

/// How the kernel discontinuity at `s = t` is treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum QuadratureRule {
    /// Two trapezoid sums, `[0, t]` on the lower branch and `[t, 1]` on the
    /// upper branch; the diagonal node contributes its one-sided value to
    /// each. Second order for all three rows.
    #[default]
    SplitAtDiagonal,
    /// One trapezoid sweep over `[0, 1]` with the single-valued kernel
    /// (lower branch on the diagonal). The `G2` jump costs an `O(h)` term.
    SingleSweep,
}

impl std::str::FromStr for QuadratureRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" | "split-at-diagonal" => Ok(QuadratureRule::SplitAtDiagonal),
            "single-sweep" | "single" => Ok(QuadratureRule::SingleSweep),
            other => Err(format!("unknown quadrature rule `{other}` (expected split or single-sweep)")),
        }
    }
}

impl std::fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuadratureRule::SplitAtDiagonal => "split",
            QuadratureRule::SingleSweep => "single-sweep",
        })
    }
}

/// `int_0^1 K(t, s) phi(s) ds` at the node `t`, split at the diagonal.
pub fn integrate_kernel_row<T: Real>(
    kernel: &GreenKernel<T>,
    row: KernelRow,
    t: T,
    phi: &[T],
    grid: &Grid<T>,
) -> Result<T, QuadratureError> {
    if phi.len() != grid.len() {
        return Err(QuadratureError::LengthMismatch {
            expected: grid.len(),
            found: phi.len(),
        });
    }
    let i = grid.index_of(t)?;
    let t = grid.node(i);
    let lower: Vec<T> = (0..=i)
        .map(|j| kernel.eval_branch(row, Branch::Lower, t, grid.node(j)) * phi[j])
        .collect();
    let upper: Vec<T> = (i..grid.len())
        .map(|j| kernel.eval_branch(row, Branch::Upper, t, grid.node(j)) * phi[j])
        .collect();
    Ok(trapezoid_partial(&lower, grid.h()) + trapezoid_partial(&upper, grid.h()))
}

/// Quadrature weights of one kernel on one grid: `u_i = sum_j W[i][j] phi_j`
/// for each row. Built once per solve; applying it is a dense mat-vec.
#[derive(Clone, Debug)]
pub struct KernelQuadrature<T> {
    size: usize,
    weights: [Vec<T>; 3],
    rule: QuadratureRule,
}

impl<T: Real> KernelQuadrature<T> {
    pub fn new(kernel: &GreenKernel<T>, grid: &Grid<T>, rule: QuadratureRule) -> Self {
        let size = grid.len();
        let n = grid.intervals();
        let h = grid.h();
        let half_h = h * lit(0.5);
        let nodes = grid.nodes();
        let build = |row: KernelRow| {
            let mut w = vec![T::zero(); size * size];
            for (i, &t) in nodes.iter().enumerate() {
                let wi = &mut w[i * size..(i + 1) * size];
                match rule {
                    QuadratureRule::SplitAtDiagonal => {
                        for (j, &s) in nodes.iter().enumerate() {
                            let mut acc = T::zero();
                            if j <= i && i > 0 {
                                let end = j == 0 || j == i;
                                acc = acc + if end { half_h } else { h } * kernel.eval_branch(row, Branch::Lower, t, s);
                            }
                            if j >= i && i < n {
                                let end = j == i || j == n;
                                acc = acc + if end { half_h } else { h } * kernel.eval_branch(row, Branch::Upper, t, s);
                            }
                            wi[j] = acc;
                        }
                    }
                    QuadratureRule::SingleSweep => {
                        for (j, &s) in nodes.iter().enumerate() {
                            let end = j == 0 || j == n;
                            wi[j] = if end { half_h } else { h } * kernel.eval(row, t, s);
                        }
                    }
                }
            }
            w
        };
        Self {
            size,
            weights: [build(KernelRow::G), build(KernelRow::G1), build(KernelRow::G2)],
            rule,
        }
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }

    /// Integrates `phi` against one kernel row at every node.
    pub fn apply(&self, row: KernelRow, phi: &[T]) -> Result<Vec<T>, QuadratureError> {
        if phi.len() != self.size {
            return Err(QuadratureError::LengthMismatch {
                expected: self.size,
                found: phi.len(),
            });
        }
        let w = match row {
            KernelRow::G => &self.weights[0],
            KernelRow::G1 => &self.weights[1],
            KernelRow::G2 => &self.weights[2],
        };
        Ok(w.chunks_exact(self.size)
            .map(|wi| wi.iter().zip(phi).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect())
    }
}
