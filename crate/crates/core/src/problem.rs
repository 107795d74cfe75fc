//! Problem definition: `u''' = f(t, u, u', u'')` on `[0, 1]` with
//! homogeneous boundary conditions.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::greens::{BoundaryConditions, CaseId, GreenKernel, KernelError};
use crate::scalar::{to_f64, Real};

/// Right-hand side `f(t, x, y, z)` with `x = u`, `y = u'`, `z = u''`.
pub type Nonlinearity<T> = Arc<dyn Fn(T, T, T, T) -> T + Send + Sync>;
/// Closed-form solution `t -> u(t)`.
pub type ExactSolution<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("bound M must be positive, got {0}")]
    NonPositiveBound(f64),
    #[error("Lipschitz constants must be nonnegative, got ({0}, {1}, {2})")]
    NegativeLipschitz(f64, f64, f64),
}

#[derive(Clone, Debug)]
pub enum Boundary<T> {
    Case(CaseId),
    Conditions(BoundaryConditions<T>),
}

impl<T: Real> Boundary<T> {
    pub fn conditions(&self) -> BoundaryConditions<T> {
        match self {
            Boundary::Case(c) => c.boundary_conditions(),
            Boundary::Conditions(bc) => *bc,
        }
    }

    /// Catalog kernel for a known case, constructed kernel otherwise.
    pub fn kernel(&self) -> Result<GreenKernel<T>, KernelError> {
        match self {
            Boundary::Case(c) => Ok(GreenKernel::catalog(*c)),
            Boundary::Conditions(bc) => GreenKernel::general(*bc),
        }
    }
}

/// Which admissible box the existence conditions are checked on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DomainKind {
    /// `|x| <= M0 M, |y| <= M1 M, |z| <= M2 M`
    #[default]
    Symmetric,
    /// `0 <= x <= M0 M, 0 <= sigma(G) sigma(G1) y <= M1 M, |z| <= M2 M`
    Positive,
}

/// Lipschitz constants of `f` in `(x, y, z)`, valid on the admissible box
/// for every bound `M <= valid_up_to`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lipschitz<T> {
    pub l0: T,
    pub l1: T,
    pub l2: T,
    pub valid_up_to: T,
}

impl<T: Real> Lipschitz<T> {
    pub fn as_array(&self) -> [T; 3] {
        [self.l0, self.l1, self.l2]
    }
}

#[derive(Clone)]
pub struct ProblemSpec<T> {
    f: Nonlinearity<T>,
    pub boundary: Boundary<T>,
    bound: Option<T>,
    lipschitz: Option<Lipschitz<T>>,
    exact: Option<ExactSolution<T>>,
    pub domain: DomainKind,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new<F>(f: F, boundary: Boundary<T>) -> Self
    where
        F: Fn(T, T, T, T) -> T + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            boundary,
            bound: None,
            lipschitz: None,
            exact: None,
            domain: DomainKind::default(),
        }
    }

    pub fn with_bound(mut self, m: T) -> Result<Self, ProblemError> {
        if !(m > T::zero()) {
            return Err(ProblemError::NonPositiveBound(to_f64(m)));
        }
        self.bound = Some(m);
        Ok(self)
    }

    /// Attaches Lipschitz constants valid for every `M` up to `valid_up_to`.
    pub fn with_lipschitz(mut self, l: [T; 3], valid_up_to: T) -> Result<Self, ProblemError> {
        if l.iter().any(|v| !(*v >= T::zero())) {
            return Err(ProblemError::NegativeLipschitz(to_f64(l[0]), to_f64(l[1]), to_f64(l[2])));
        }
        self.lipschitz = Some(Lipschitz {
            l0: l[0],
            l1: l[1],
            l2: l[2],
            valid_up_to,
        });
        Ok(self)
    }

    pub fn with_exact<F>(mut self, u: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        self.exact = Some(Arc::new(u));
        self
    }

    pub fn with_domain(mut self, domain: DomainKind) -> Self {
        self.domain = domain;
        self
    }

    #[inline]
    pub fn f(&self, t: T, x: T, y: T, z: T) -> T {
        (self.f)(t, x, y, z)
    }

    pub fn bound(&self) -> Option<T> {
        self.bound
    }

    pub fn lipschitz(&self) -> Option<Lipschitz<T>> {
        self.lipschitz
    }

    /// Lipschitz constants usable for the bound `m`, if any were supplied.
    pub fn lipschitz_for(&self, m: T) -> Option<[T; 3]> {
        self.lipschitz
            .filter(|l| m <= l.valid_up_to)
            .map(|l| l.as_array())
    }

    pub fn exact(&self) -> Option<&ExactSolution<T>> {
        self.exact.as_ref()
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn kernel(&self) -> Result<GreenKernel<T>, KernelError> {
        self.boundary.kernel()
    }
}

impl<T: Real> fmt::Debug for ProblemSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("boundary", &self.boundary)
            .field("bound", &self.bound)
            .field("lipschitz", &self.lipschitz)
            .field("has_exact", &self.exact.is_some())
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}
