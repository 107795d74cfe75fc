//! Fixed-size dense helpers for the boundary systems. The matrices involved
//! are 3x3 and 3x6, so plain Gaussian elimination is all that is needed.

use crate::scalar::Real;

/// Numerical rank of a 3xN matrix by elimination with full row pivoting.
/// Pivots below `rel_tol` times the largest entry count as zero.
pub(crate) fn rank<T: Real, const N: usize>(mut a: [[T; N]; 3], rel_tol: T) -> usize {
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return 0;
    }
    let tol = rel_tol * scale;
    let mut rank = 0;
    let mut used = [false; 3];
    for col in 0..N {
        let pivot = (0..3)
            .filter(|&r| !used[r])
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap());
        let Some(p) = pivot else { break };
        if !(a[p][col].abs() > tol) {
            continue;
        }
        used[p] = true;
        rank += 1;
        for r in 0..3 {
            if r != p {
                let factor = a[r][col] / a[p][col];
                for c in col..N {
                    a[r][c] = a[r][c] - factor * a[p][c];
                }
            }
        }
    }
    rank
}

fn norm1<T: Real>(a: &[[T; 3]; 3]) -> T {
    (0..3)
        .map(|c| a[0][c].abs() + a[1][c].abs() + a[2][c].abs())
        .fold(T::zero(), T::max)
}

/// Inverse of a 3x3 matrix by Gauss-Jordan elimination with partial
/// pivoting, together with the 1-norm condition number estimate
/// `||A||_1 ||A^-1||_1`. Returns `None` for an exactly singular matrix.
pub(crate) fn invert3<T: Real>(a: [[T; 3]; 3]) -> Option<([[T; 3]; 3], T)> {
    let mut m = a;
    let mut inv = [[T::zero(); 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for col in 0..3 {
        let p = (col..3)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[p][col] == T::zero() || !m[p][col].is_finite() {
            return None;
        }
        m.swap(col, p);
        inv.swap(col, p);
        let d = m[col][col];
        for c in 0..3 {
            m[col][c] = m[col][c] / d;
            inv[col][c] = inv[col][c] / d;
        }
        for r in 0..3 {
            if r != col {
                let factor = m[r][col];
                for c in 0..3 {
                    m[r][c] = m[r][c] - factor * m[col][c];
                    inv[r][c] = inv[r][c] - factor * inv[col][c];
                }
            }
        }
    }
    let cond = norm1(&a) * norm1(&inv);
    Some((inv, cond))
}
