//! Closed-form kernels for the four standard separated boundary cases.

use std::fmt;
use std::str::FromStr;

use crate::scalar::{lit, Real};

use super::{BoundaryConditions, Branch, End, KernelNorms, KernelRow, KernelSigns, RowSign};

/// The four boundary-condition cases with known closed-form kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// u(0) = u'(0) = u'(1) = 0
    Case1,
    /// u(0) = u'(0) = u''(1) = 0
    Case2,
    /// u(0) = u'(1) = u''(1) = 0
    Case3,
    /// u(0) = u''(0) = u'(1) = 0
    Case4,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4];

    pub fn number(self) -> u8 {
        match self {
            CaseId::Case1 => 1,
            CaseId::Case2 => 2,
            CaseId::Case3 => 3,
            CaseId::Case4 => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(CaseId::Case1),
            2 => Some(CaseId::Case2),
            3 => Some(CaseId::Case3),
            4 => Some(CaseId::Case4),
            _ => None,
        }
    }

    pub fn boundary_conditions<T: Real>(self) -> BoundaryConditions<T> {
        let (o, z) = (T::one(), T::zero());
        match self {
            CaseId::Case1 => BoundaryConditions::from_rows([o, z, z], [z, o, z], [z, o, z]),
            CaseId::Case2 => BoundaryConditions::from_rows([o, z, z], [z, o, z], [z, z, o]),
            // two conditions at the right end
            CaseId::Case3 => BoundaryConditions::with_ends(
                [[o, z, z], [z, o, z], [z, z, o]],
                [End::Left, End::Right, End::Right],
            ),
            CaseId::Case4 => BoundaryConditions::from_rows([o, z, z], [z, z, o], [z, o, z]),
        }
    }

    /// Analytic kernel norms `(M0, M1, M2)`.
    pub fn norms<T: Real>(self) -> KernelNorms<T> {
        let (m0, m1, m2) = match self {
            CaseId::Case1 => (1.0 / 12.0, 1.0 / 8.0, 0.5),
            CaseId::Case2 => (1.0 / 3.0, 0.5, 1.0),
            CaseId::Case3 => (1.0 / 6.0, 0.5, 1.0),
            CaseId::Case4 => (1.0 / 3.0, 0.5, 1.0),
        };
        KernelNorms {
            m0: lit(m0),
            m1: lit(m1),
            m2: lit(m2),
        }
    }

    /// Analytic sign pattern of `G`, `G1`, `G2` on the unit square.
    pub fn signs(self) -> KernelSigns {
        use RowSign::{Mixed as X, NonNegative as P, NonPositive as N};
        match self {
            CaseId::Case1 => KernelSigns::new(N, N, X),
            CaseId::Case2 => KernelSigns::new(N, N, N),
            CaseId::Case3 => KernelSigns::new(P, P, N),
            CaseId::Case4 => KernelSigns::new(N, N, P),
        }
    }

    /// Evaluates one branch of one kernel row.
    pub fn eval<T: Real>(self, row: KernelRow, branch: Branch, t: T, s: T) -> T {
        let o = T::one();
        let half = lit::<T>(0.5);
        match (self, row, branch) {
            (CaseId::Case1, KernelRow::G, Branch::Lower) => s * half * (t * t - (t + t) + s),
            (CaseId::Case1, KernelRow::G, Branch::Upper) => t * t * half * (s - o),
            (CaseId::Case1, KernelRow::G1, Branch::Lower) => s * (t - o),
            (CaseId::Case1, KernelRow::G1, Branch::Upper) => t * (s - o),
            (CaseId::Case1, KernelRow::G2, Branch::Lower) => s,
            (CaseId::Case1, KernelRow::G2, Branch::Upper) => s - o,

            (CaseId::Case2, KernelRow::G, Branch::Lower) => -s * t + s * s * half,
            (CaseId::Case2, KernelRow::G, Branch::Upper) => -t * t * half,
            (CaseId::Case2, KernelRow::G1, Branch::Lower) => -s,
            (CaseId::Case2, KernelRow::G1, Branch::Upper) => -t,
            (CaseId::Case2, KernelRow::G2, Branch::Lower) => T::zero(),
            (CaseId::Case2, KernelRow::G2, Branch::Upper) => -o,

            (CaseId::Case3, KernelRow::G, Branch::Lower) => s * s * half,
            (CaseId::Case3, KernelRow::G, Branch::Upper) => s * t - t * t * half,
            (CaseId::Case3, KernelRow::G1, Branch::Lower) => T::zero(),
            (CaseId::Case3, KernelRow::G1, Branch::Upper) => s - t,
            (CaseId::Case3, KernelRow::G2, Branch::Lower) => T::zero(),
            (CaseId::Case3, KernelRow::G2, Branch::Upper) => -o,

            (CaseId::Case4, KernelRow::G, Branch::Lower) => t * t * half - t + s * s * half,
            (CaseId::Case4, KernelRow::G, Branch::Upper) => t * (s - o),
            (CaseId::Case4, KernelRow::G1, Branch::Lower) => t - o,
            (CaseId::Case4, KernelRow::G1, Branch::Upper) => s - o,
            (CaseId::Case4, KernelRow::G2, Branch::Lower) => o,
            (CaseId::Case4, KernelRow::G2, Branch::Upper) => T::zero(),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case{}", self.number())
    }
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches("case");
        digits
            .parse::<u8>()
            .ok()
            .and_then(CaseId::from_number)
            .ok_or_else(|| format!("unknown boundary case `{s}` (expected 1..4)"))
    }
}
