//! Fixed-size complex linear algebra on ℂ² and M(2, ℂ).
//!
//! Everything in the crate that acts on spin space goes through [`Mat2`]
//! and [`Vec2`]; the 4×4 block operators in [`crate::block`] are built
//! from the same pieces.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

pub type Vec2 = [Complex64; 2];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ⟨a|b⟩, conjugate-linear in the first argument.
pub fn inner(a: &Vec2, b: &Vec2) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

pub fn norm(a: &Vec2) -> f64 {
    inner(a, a).re.sqrt()
}

pub fn scale(s: Complex64, a: &Vec2) -> Vec2 {
    [s * a[0], s * a[1]]
}

pub fn vec_add(a: &Vec2, b: &Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn vec_conj(a: &Vec2) -> Vec2 {
    [a[0].conj(), a[1].conj()]
}

pub fn vec_max_abs_diff(a: &Vec2, b: &Vec2) -> f64 {
    (a[0] - b[0]).norm().max((a[1] - b[1]).norm())
}

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2([[s, ZERO], [ZERO, s]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    /// σ₁, σ₂, σ₃ for `m` = 1, 2, 3.
    pub fn pauli(m: usize) -> Self {
        match m {
            1 => Mat2::new(ZERO, ONE, ONE, ZERO),
            2 => Mat2::new(ZERO, -I, I, ZERO),
            3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
            _ => panic!("pauli index {m} out of range 1..=3"),
        }
    }

    /// e^{iδ}·[[α, β], [−β*, α*]] with α = e^{ia}cos t, β = e^{ib}sin t;
    /// covers U(2).
    pub fn unitary(a: f64, b: f64, t: f64, delta: f64) -> Self {
        let (s, co) = t.sin_cos();
        let alpha = Complex64::from_polar(co, a);
        let beta = Complex64::from_polar(s, b);
        Mat2::new(alpha, beta, -beta.conj(), alpha.conj()) * Complex64::from_polar(1.0, delta)
    }

    /// Matrix with the given first column and a zero second column.
    pub fn from_column(v: &Vec2) -> Self {
        Mat2([[v[0], ZERO], [v[1], ZERO]])
    }

    #[inline]
    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.0[r][col]
    }

    pub fn column(&self, col: usize) -> Vec2 {
        [self.0[0][col], self.0[1][col]]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let m = &self.0;
        Mat2([[f(m[0][0]), f(m[0][1])], [f(m[1][0]), f(m[1][1])]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Adjugate: `adj(A)·A = det(A)·1`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Mat2([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    /// Inverse, or `None` when `|det| <= tol · ‖A‖²`.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        if d.norm() <= 1e-14 * scale * scale {
            return None;
        }
        Some(self.adjugate() * d.inv())
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Mat2) -> Mat2 {
        *self * *other + *other * *self
    }

    /// |a⟩⟨b|
    pub fn outer(a: &Vec2, b: &Vec2) -> Self {
        Mat2([
            [a[0] * b[0].conj(), a[0] * b[1].conj()],
            [a[1] * b[0].conj(), a[1] * b[1].conj()],
        ])
    }

    /// exp(−iAt) via A = a·1 + B with B² = s²·1.
    pub fn exp_minus_i(&self, t: f64) -> Mat2 {
        let a = self.trace() * 0.5;
        let b = *self - Mat2::scalar(a);
        let s = (-b.det()).sqrt();
        let st = s * t;
        let sinc = if st.norm() < 1e-8 {
            // sin(st)/s to second order
            Complex64::new(t, 0.0) * (1.0 - st * st / 6.0)
        } else {
            st.sin() / s
        };
        (Mat2::scalar(st.cos()) - b * (sinc * I)) * (-I * a * t).exp()
    }

    /// Eigenvalues from the characteristic polynomial λ² − tr·λ + det.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_tr = self.trace() * 0.5;
        let m = &self.0;
        // (a−d)²/4 + bc avoids the tr²/4 − det cancellation
        let half_diff = (m[0][0] - m[1][1]) * 0.5;
        let disc = (half_diff * half_diff + m[0][1] * m[1][0]).sqrt();
        [half_tr + disc, half_tr - disc]
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Mat2::zero()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        *self = *self + rhs;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: Complex64) -> Mat2 {
        self.map(|z| z * s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.map(|z| z * s)
    }
}

impl Mul<Mat2> for Complex64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m * self
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m * self
    }
}

impl std::iter::Sum for Mat2 {
    fn sum<It: Iterator<Item = Mat2>>(iter: It) -> Mat2 {
        iter.fold(Mat2::zero(), |acc, m| acc + m)
    }
}
