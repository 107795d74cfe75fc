//! Green's functions of `u''' = phi` under homogeneous linear boundary
//! conditions, their first two `t`-derivatives, sign patterns and
//! `L1`-type norms.
//!
//! A kernel is stored in two branches: `Lower` on `{0 <= s <= t <= 1}` and
//! `Upper` on `{0 <= t <= s <= 1}`. `G` and `G1 = dG/dt` are continuous
//! across the diagonal, `G2 = d^2G/dt^2` jumps by `+1`.

mod bc;
mod catalog;
mod general;
pub(crate) mod linalg;

pub use bc::{BoundaryConditions, End};
pub use catalog::CaseId;
pub use general::{GeneralKernel, SINGULARITY_THRESHOLD};

use thiserror::Error;

use crate::quadrature::{self, Grid};
use crate::scalar::{lit, Real};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("boundary coefficient matrix does not have rank 3")]
    RankDeficientBC,
    #[error(
        "boundary system is singular (condition estimate {condition:e}); \
         the homogeneous problem has nontrivial solutions and no Green's function exists"
    )]
    SingularBoundarySystem { condition: f64 },
}

/// Which derivative of the kernel is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelRow {
    G,
    G1,
    G2,
}

impl KernelRow {
    pub const ALL: [KernelRow; 3] = [KernelRow::G, KernelRow::G1, KernelRow::G2];
}

/// Side of the diagonal `t = s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `s <= t`
    Lower,
    /// `t <= s`
    Upper,
}

impl Branch {
    /// Branch used when a single value is wanted: `Lower` for `s <= t`.
    pub fn of<T: Real>(t: T, s: T) -> Self {
        if s <= t {
            Branch::Lower
        } else {
            Branch::Upper
        }
    }
}

/// Observed sign of a kernel row over the unit square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSign {
    NonNegative,
    NonPositive,
    /// Identically zero within tolerance: both signs are admissible.
    Zero,
    Mixed,
}

impl RowSign {
    /// `sigma(H)`; an identically zero row counts as `+1`.
    pub fn sigma(self) -> Option<i8> {
        match self {
            RowSign::NonNegative | RowSign::Zero => Some(1),
            RowSign::NonPositive => Some(-1),
            RowSign::Mixed => None,
        }
    }

    pub fn is_constant(self) -> bool {
        self != RowSign::Mixed
    }

    fn from_flags(nonneg: bool, nonpos: bool) -> Self {
        match (nonneg, nonpos) {
            (true, true) => RowSign::Zero,
            (true, false) => RowSign::NonNegative,
            (false, true) => RowSign::NonPositive,
            (false, false) => RowSign::Mixed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelSigns {
    pub g: RowSign,
    pub g1: RowSign,
    pub g2: RowSign,
}

impl KernelSigns {
    pub fn new(g: RowSign, g1: RowSign, g2: RowSign) -> Self {
        Self { g, g1, g2 }
    }

    pub fn sigma_g(&self) -> Option<i8> {
        self.g.sigma()
    }

    pub fn sigma_g1(&self) -> Option<i8> {
        self.g1.sigma()
    }

    /// `sigma(G) sigma(G1)`, defined when both rows have constant sign.
    pub fn product(&self) -> Option<i8> {
        Some(self.sigma_g()? * self.sigma_g1()?)
    }
}

/// `M_i = max_t int_0^1 |G_i(t, s)| ds`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelNorms<T> {
    pub m0: T,
    pub m1: T,
    pub m2: T,
}

impl<T: Real> KernelNorms<T> {
    pub fn as_array(&self) -> [T; 3] {
        [self.m0, self.m1, self.m2]
    }

    /// Envelope `(M0 M, M1 M, M2 M)` for `|u|, |u'|, |u''|`.
    pub fn scaled(&self, bound: T) -> [T; 3] {
        [self.m0 * bound, self.m1 * bound, self.m2 * bound]
    }

    pub fn get(&self, row: KernelRow) -> T {
        match row {
            KernelRow::G => self.m0,
            KernelRow::G1 => self.m1,
            KernelRow::G2 => self.m2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Catalog(CaseId),
    GeneralConstructed,
}

#[derive(Clone, Debug)]
enum Source<T> {
    Catalog(CaseId),
    General(GeneralKernel<T>),
}

/// A Green's function with attached norm and sign metadata.
#[derive(Clone, Debug)]
pub struct GreenKernel<T> {
    source: Source<T>,
    norms: KernelNorms<T>,
    signs: KernelSigns,
}

/// Working grid size the numeric norms are refined from.
pub const NORM_BASE_INTERVALS: usize = 100;
/// Refinement factor applied to [`NORM_BASE_INTERVALS`] for norms.
pub const NORM_REFINEMENT: usize = 10;
/// Probe grid size for sign sampling at construction time.
pub const SIGN_PROBE_INTERVALS: usize = 200;
const SIGN_TOLERANCE: f64 = 1e-12;

impl<T: Real> GreenKernel<T> {
    /// Closed-form kernel with analytic norms and signs.
    pub fn catalog(case: CaseId) -> Self {
        Self {
            source: Source::Catalog(case),
            norms: case.norms(),
            signs: case.signs(),
        }
    }

    /// Kernel for arbitrary rank-3 boundary conditions. Norms and signs are
    /// computed numerically.
    pub fn general(bc: BoundaryConditions<T>) -> Result<Self, KernelError> {
        let mut kernel = Self {
            source: Source::General(GeneralKernel::new(bc)?),
            norms: KernelNorms {
                m0: T::zero(),
                m1: T::zero(),
                m2: T::zero(),
            },
            signs: KernelSigns::new(RowSign::Zero, RowSign::Zero, RowSign::Zero),
        };
        kernel.norms = kernel_norms(&kernel, NORM_REFINEMENT);
        kernel.signs = kernel_signs(&kernel, &Grid::new(SIGN_PROBE_INTERVALS).expect("probe grid"));
        Ok(kernel)
    }

    pub fn provenance(&self) -> Provenance {
        match &self.source {
            Source::Catalog(case) => Provenance::Catalog(*case),
            Source::General(_) => Provenance::GeneralConstructed,
        }
    }

    pub fn boundary_conditions(&self) -> BoundaryConditions<T> {
        match &self.source {
            Source::Catalog(case) => case.boundary_conditions(),
            Source::General(k) => *k.boundary_conditions(),
        }
    }

    pub fn norms(&self) -> KernelNorms<T> {
        self.norms
    }

    pub fn signs(&self) -> KernelSigns {
        self.signs
    }

    /// Evaluates a row on an explicit branch.
    pub fn eval_branch(&self, row: KernelRow, branch: Branch, t: T, s: T) -> T {
        match &self.source {
            Source::Catalog(case) => case.eval(row, branch, t, s),
            Source::General(k) => k.eval(row, branch, t, s),
        }
    }

    /// Evaluates a row, taking the lower branch on the diagonal.
    pub fn eval(&self, row: KernelRow, t: T, s: T) -> T {
        self.eval_branch(row, Branch::of(t, s), t, s)
    }
}

/// Closed-form catalog kernel.
pub fn kernel_catalog<T: Real>(case: CaseId) -> GreenKernel<T> {
    GreenKernel::catalog(case)
}

/// Kernel constructed by solving the boundary system.
pub fn build_general_kernel<T: Real>(bc: BoundaryConditions<T>) -> Result<GreenKernel<T>, KernelError> {
    GreenKernel::general(bc)
}

/// Numeric `(M0, M1, M2)`: the maximum over a grid of
/// `NORM_BASE_INTERVALS * refinement` intervals of the split trapezoid
/// integral of `|G_i(t, .)|`.
pub fn kernel_norms<T: Real>(kernel: &GreenKernel<T>, refinement: usize) -> KernelNorms<T> {
    let grid = Grid::new(NORM_BASE_INTERVALS * refinement.max(1)).expect("norm grid");
    let nodes = grid.nodes();
    let mut out = [T::zero(); 3];
    let mut lower = Vec::with_capacity(nodes.len());
    let mut upper = Vec::with_capacity(nodes.len());
    for (i, &t) in nodes.iter().enumerate() {
        for (r, row) in KernelRow::ALL.into_iter().enumerate() {
            lower.clear();
            upper.clear();
            lower.extend(nodes[..=i].iter().map(|&s| kernel.eval_branch(row, Branch::Lower, t, s).abs()));
            upper.extend(nodes[i..].iter().map(|&s| kernel.eval_branch(row, Branch::Upper, t, s).abs()));
            let integral = quadrature::trapezoid_partial(&lower, grid.h()) + quadrature::trapezoid_partial(&upper, grid.h());
            out[r] = out[r].max(integral);
        }
    }
    KernelNorms {
        m0: out[0],
        m1: out[1],
        m2: out[2],
    }
}

/// Samples both branches on `probe x probe` and classifies each row.
pub fn kernel_signs<T: Real>(kernel: &GreenKernel<T>, probe: &Grid<T>) -> KernelSigns {
    let tol = lit::<T>(SIGN_TOLERANCE);
    let nodes = probe.nodes();
    let classify = |row: KernelRow| {
        let (mut nonneg, mut nonpos) = (true, true);
        for (i, &t) in nodes.iter().enumerate() {
            for (j, &s) in nodes.iter().enumerate() {
                let mut check = |v: T| {
                    nonneg &= v >= -tol;
                    nonpos &= v <= tol;
                };
                if j <= i {
                    check(kernel.eval_branch(row, Branch::Lower, t, s));
                }
                if j >= i {
                    check(kernel.eval_branch(row, Branch::Upper, t, s));
                }
            }
        }
        RowSign::from_flags(nonneg, nonpos)
    };
    KernelSigns::new(classify(KernelRow::G), classify(KernelRow::G1), classify(KernelRow::G2))
}

/// Largest pointwise difference between two kernels over all rows and both
/// branches on a `grid x grid` sample.
pub fn max_gap<T: Real>(a: &GreenKernel<T>, b: &GreenKernel<T>, grid: &Grid<T>) -> T {
    let nodes = grid.nodes();
    let mut gap = T::zero();
    for row in KernelRow::ALL {
        for (i, &t) in nodes.iter().enumerate() {
            for (j, &s) in nodes.iter().enumerate() {
                let mut branches = Vec::with_capacity(2);
                if j <= i {
                    branches.push(Branch::Lower);
                }
                if j >= i {
                    branches.push(Branch::Upper);
                }
                for br in branches {
                    let d = (a.eval_branch(row, br, t, s) - b.eval_branch(row, br, t, s)).abs();
                    gap = gap.max(d);
                }
            }
        }
    }
    gap
}
