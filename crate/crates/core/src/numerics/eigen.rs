use alloc::vec::Vec;
use num_traits::Float;

use crate::{Error, Result};

/// Real symmetric 2×2 or 3×3 matrix, the representation of every density
/// matrix the rate formulas need (all of them are real in the bases used).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: [[f64; 3]; 3],
}

impl SymMatrix {
    pub fn new2(rows: [[f64; 2]; 2]) -> Result<Self> {
        let mut entries = [[0.0; 3]; 3];
        for (i, row) in rows.iter().enumerate() {
            entries[i][..2].copy_from_slice(row);
        }
        Self::checked(2, entries)
    }

    pub fn new3(rows: [[f64; 3]; 3]) -> Result<Self> {
        Self::checked(3, rows)
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        if !(2..=3).contains(&diag.len()) {
            return Err(crate::error::invalid("SymMatrix dimension must be 2 or 3"));
        }
        let mut entries = [[0.0; 3]; 3];
        for (i, &d) in diag.iter().enumerate() {
            entries[i][i] = d;
        }
        Self::checked(diag.len(), entries)
    }

    fn checked(dim: usize, entries: [[f64; 3]; 3]) -> Result<Self> {
        for (i, row) in entries.iter().enumerate().take(dim) {
            for (j, &v) in row.iter().enumerate().take(dim) {
                if !v.is_finite() {
                    return Err(Error::Domain { what: "matrix entry", value: v });
                }
                if v != entries[j][i] {
                    return Err(crate::error::invalid("matrix is not symmetric"));
                }
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim);
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i][i]).sum()
    }
}

fn eig2(a: f64, b: f64, d: f64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    [mean + radius, mean - radius]
}

/// Eigenvalues in descending order.
pub fn sym_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let e = &m.entries;
    let mut values = match m.dim {
        2 => eig2(e[0][0], e[0][1], e[1][1]).to_vec(),
        _ => eig3(e),
    };
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

fn eig3(e: &[[f64; 3]; 3]) -> Vec<f64> {
    // A row with zero off-diagonal entries splits off a 1×1 block.
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if e[i][j] == 0.0 && e[i][k] == 0.0 {
            let (j, k) = (j.min(k), j.max(k));
            let [l0, l1] = eig2(e[j][j], e[j][k], e[k][k]);
            return alloc::vec![e[i][i], l0, l1];
        }
    }
    jacobi3(*e).to_vec()
}

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
fn jacobi3(mut a: [[f64; 3]; 3]) -> [f64; 3] {
    let scale: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    for _sweep in 0..64 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let r = 3 - p - q;
            let (app, aqq, apq) = (a[p][p], a[q][q], a[p][q]);
            a[p][p] = app - t * apq;
            a[q][q] = aqq + t * apq;
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            let (arp, arq) = (a[r][p], a[r][q]);
            a[r][p] = c * arp - s * arq;
            a[p][r] = a[r][p];
            a[r][q] = s * arp + c * arq;
            a[q][r] = a[r][q];
        }
    }
    [a[0][0], a[1][1], a[2][2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn diagonal_two_by_two() {
        let m = SymMatrix::new2([[0.5, 0.0], [0.0, 0.5]]).unwrap();
        assert_eq!(sym_eigenvalues(&m), [0.5, 0.5]);
    }

    #[test]
    fn uniform_prior_block() {
        // reference from the closed-form quadratic at 50 digits
        let m = SymMatrix::new2([[0.509158, 0.046974], [0.046974, 0.240926]]).unwrap();
        let ev = sym_eigenvalues(&m);
        assert!(close(&ev, &[0.51714639167035, 0.23293760832965], 1e-12), "{ev:?}");
    }

    #[test]
    fn diagonal_three_sorted() {
        let m = SymMatrix::diagonal(&[0.2, 0.7, 0.1]).unwrap();
        assert!(close(&sym_eigenvalues(&m), &[0.7, 0.2, 0.1], 1e-15));
    }

    #[test]
    fn dense_three_by_three_jacobi() {
        // eigenvalues 1, 2, 4 rotated by an orthogonal matrix (exact rational entries)
        // Q = 1/3 [[1,2,2],[2,1,-2],[2,-2,1]], A = Q diag(1,2,4) Q^T
        let q = [[1.0, 2.0, 2.0], [2.0, 1.0, -2.0], [2.0, -2.0, 1.0]];
        let d = [1.0, 2.0, 4.0];
        let mut a = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] = (0..3).map(|k| q[i][k] * d[k] * q[j][k]).sum::<f64>() / 9.0;
            }
        }
        let m = SymMatrix::new3(a).unwrap();
        assert!(close(&sym_eigenvalues(&m), &[4.0, 2.0, 1.0], 1e-13));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymMatrix::new2([[1.0, 0.1], [0.2, 0.0]]).is_err());
        assert!(SymMatrix::diagonal(&[1.0]).is_err());
    }
}
