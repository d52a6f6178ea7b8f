use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::matrix::{Mat2, ZERO};

/// A 4×4 complex operator stored as a 2×2 arrangement of [`Mat2`] blocks.
///
/// All arithmetic is blockwise; `to_dense` exposes the flat matrix for
/// cross-checking against plain 4×4 arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Block4(pub [[Mat2; 2]; 2]);

impl Block4 {
    pub fn new(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> Self {
        Block4([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Block4::new(Mat2::zero(), Mat2::zero(), Mat2::zero(), Mat2::zero())
    }

    pub fn identity() -> Self {
        Block4::diag(Mat2::identity(), Mat2::identity())
    }

    pub fn diag(a: Mat2, d: Mat2) -> Self {
        Block4::new(a, Mat2::zero(), Mat2::zero(), d)
    }

    pub fn off_diag(b: Mat2, c: Mat2) -> Self {
        Block4::new(Mat2::zero(), b, c, Mat2::zero())
    }

    pub fn block(&self, r: usize, c: usize) -> Mat2 {
        self.0[r][c]
    }

    pub fn adjoint(&self) -> Self {
        let b = &self.0;
        Block4::new(
            b[0][0].adjoint(),
            b[1][0].adjoint(),
            b[0][1].adjoint(),
            b[1][1].adjoint(),
        )
    }

    pub fn map_blocks(&self, f: impl Fn(Mat2) -> Mat2) -> Self {
        let b = &self.0;
        Block4::new(f(b[0][0]), f(b[0][1]), f(b[1][0]), f(b[1][1]))
    }

    pub fn conj(&self) -> Self {
        self.map_blocks(|m| m.conj())
    }

    pub fn inverse_via_dense(&self) -> Option<Self> {
        dense_inverse(&self.to_dense()).map(|d| Block4::from_dense(&d))
    }

    pub fn commutator(&self, other: &Block4) -> Block4 {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Block4) -> Block4 {
        *self * *other + *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, m| acc.max(m.max_abs()))
    }

    pub fn max_abs_diff(&self, other: &Block4) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn to_dense(&self) -> [[Complex64; 4]; 4] {
        let mut out = [[ZERO; 4]; 4];
        for (br, row) in self.0.iter().enumerate() {
            for (bc, m) in row.iter().enumerate() {
                for i in 0..2 {
                    for j in 0..2 {
                        out[2 * br + i][2 * bc + j] = m.get(i, j);
                    }
                }
            }
        }
        out
    }

    pub fn from_dense(d: &[[Complex64; 4]; 4]) -> Self {
        let blk = |br: usize, bc: usize| {
            Mat2::new(
                d[2 * br][2 * bc],
                d[2 * br][2 * bc + 1],
                d[2 * br + 1][2 * bc],
                d[2 * br + 1][2 * bc + 1],
            )
        };
        Block4::new(blk(0, 0), blk(0, 1), blk(1, 0), blk(1, 1))
    }
}

// Gauss-Jordan with partial pivoting; only used for the handful of constant
// 4×4 matrices in the linearization set.
fn dense_inverse(m: &[[Complex64; 4]; 4]) -> Option<[[Complex64; 4]; 4]> {
    let mut a = *m;
    let mut inv = [[ZERO; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    for col in 0..4 {
        let pivot = (col..4).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[pivot][col].norm() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv();
        for j in 0..4 {
            a[col][j] *= p;
            inv[col][j] *= p;
        }
        for r in 0..4 {
            if r != col {
                let f = a[r][col];
                for j in 0..4 {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

impl Add for Block4 {
    type Output = Block4;
    fn add(self, rhs: Block4) -> Block4 {
        let (a, b) = (&self.0, &rhs.0);
        Block4::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Block4 {
    type Output = Block4;
    fn sub(self, rhs: Block4) -> Block4 {
        self + (-rhs)
    }
}

impl Neg for Block4 {
    type Output = Block4;
    fn neg(self) -> Block4 {
        self.map_blocks(|m| -m)
    }
}

impl Mul for Block4 {
    type Output = Block4;
    fn mul(self, rhs: Block4) -> Block4 {
        let (a, b) = (&self.0, &rhs.0);
        Block4::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<Complex64> for Block4 {
    type Output = Block4;
    fn mul(self, s: Complex64) -> Block4 {
        self.map_blocks(|m| m * s)
    }
}

impl Mul<f64> for Block4 {
    type Output = Block4;
    fn mul(self, s: f64) -> Block4 {
        self.map_blocks(|m| m * s)
    }
}
