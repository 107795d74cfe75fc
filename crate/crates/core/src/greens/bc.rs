use crate::scalar::{lit, Real};

use super::linalg;
use super::KernelError;

/// Endpoint of the interval a boundary functional is applied at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Left,
    Right,
}

/// Coefficients of three homogeneous boundary functionals
///
/// ```text
/// B1[u] = a1 u(e1) + b1 u'(e1) + g1 u''(e1)
/// B2[u] = a2 u(e2) + b2 u'(e2) + g2 u''(e2)
/// B3[u] = a3 u(e3) + b3 u'(e3) + g3 u''(e3)
/// ```
///
/// The usual layout is `e1 = e2 = 0`, `e3 = 1` ([`BoundaryConditions::from_rows`]).
/// Any layout is accepted, so problems with two conditions at the right end
/// are expressed without a change of variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryConditions<T> {
    pub a1: T,
    pub b1: T,
    pub g1: T,
    pub a2: T,
    pub b2: T,
    pub g2: T,
    pub a3: T,
    pub b3: T,
    pub g3: T,
    pub ends: [End; 3],
}

impl<T: Real> BoundaryConditions<T> {
    /// Two functionals at `t = 0`, one at `t = 1`.
    pub fn from_rows(left1: [T; 3], left2: [T; 3], right: [T; 3]) -> Self {
        Self::with_ends([left1, left2, right], [End::Left, End::Left, End::Right])
    }

    pub fn with_ends(rows: [[T; 3]; 3], ends: [End; 3]) -> Self {
        let [r1, r2, r3] = rows;
        Self {
            a1: r1[0],
            b1: r1[1],
            g1: r1[2],
            a2: r2[0],
            b2: r2[1],
            g2: r2[2],
            a3: r3[0],
            b3: r3[1],
            g3: r3[2],
            ends,
        }
    }

    pub fn rows(&self) -> [[T; 3]; 3] {
        [
            [self.a1, self.b1, self.g1],
            [self.a2, self.b2, self.g2],
            [self.a3, self.b3, self.g3],
        ]
    }

    /// Checks that the 3x6 block matrix (left-end coefficients in the first
    /// three columns, right-end coefficients in the last three) has rank 3.
    pub fn check_rank(&self) -> Result<(), KernelError> {
        let mut block = [[T::zero(); 6]; 3];
        for (i, (row, end)) in self.rows().iter().zip(self.ends).enumerate() {
            let offset = match end {
                End::Left => 0,
                End::Right => 3,
            };
            block[i][offset..offset + 3].copy_from_slice(row);
        }
        if linalg::rank(block, T::epsilon() * lit(64.0)) < 3 {
            return Err(KernelError::RankDeficientBC);
        }
        Ok(())
    }

    /// Applies the three functionals to boundary data
    /// `left = (u(0), u'(0), u''(0))` and `right = (u(1), u'(1), u''(1))`.
    pub fn defects(&self, left: [T; 3], right: [T; 3]) -> [T; 3] {
        let dot = |c: [T; 3], v: [T; 3]| c[0] * v[0] + c[1] * v[1] + c[2] * v[2];
        let rows = self.rows();
        let mut out = [T::zero(); 3];
        for i in 0..3 {
            out[i] = match self.ends[i] {
                End::Left => dot(rows[i], left),
                End::Right => dot(rows[i], right),
            };
        }
        out
    }
}
