//! Cl₃(ℝ) multivectors, the Pauli representation, the three classical
//! involutions and the γ-deformed generator sets.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c, Mat2, I, ONE, ZERO};

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("clifford.grade_reassembly", "grade projections sum back to the multivector"),
    ("clifford.matrix_round_trip", "from_matrix inverts to_matrix"),
    ("clifford.homomorphism", "to_matrix(ab) = to_matrix(a)·to_matrix(b)"),
    ("clifford.involution_laws", "involutions are involutive, (anti-)automorphic, and match their matrix forms"),
    ("clifford.deformed_closed_form", "similarity-deformed generators equal the closed-form sigma^gamma matrices"),
    ("clifford.deformed_clifford_relations", "e_i e_j + e_j e_i = 2 delta_ij for the deformed vectors"),
    ("clifford.even_subalgebra_closure", "products of even elements stay even"),
];

/// Storage order of multivector coefficients.
pub const BLADE_NAMES: [&str; 8] = ["1", "e1", "e2", "e3", "e12", "e23", "e31", "e123"];

pub const GRADE: [usize; 8] = [0, 1, 1, 1, 2, 2, 2, 3];

// Each stored blade as (bitmask of the ascending product, sign). e31 is
// stored, the ascending blade is e13 = -e31.
const BLADE_MASK: [(u8, f64); 8] = [
    (0b000, 1.0),
    (0b001, 1.0),
    (0b010, 1.0),
    (0b100, 1.0),
    (0b011, 1.0),
    (0b110, 1.0),
    (0b101, -1.0),
    (0b111, 1.0),
];

fn index_of_mask(mask: u8) -> usize {
    BLADE_MASK
        .iter()
        .position(|&(m, _)| m == mask)
        .expect("every 3-bit mask is a stored blade")
}

// Sign of e_A e_B for ascending blades A, B in a Euclidean signature:
// one factor of -1 per pair (i in A, j in B) with i > j.
fn reorder_sign(a: u8, b: u8) -> f64 {
    let mut swaps = 0;
    let mut a_shift = a >> 1;
    while a_shift != 0 {
        swaps += (a_shift & b).count_ones();
        a_shift >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// An element of Cl₃(ℝ), stored as real coefficients over [`BLADE_NAMES`].
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector(pub [f64; 8]);

impl Multivector {
    pub fn zero() -> Self {
        Multivector([0.0; 8])
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Multivector::zero();
        m.0[0] = s;
        m
    }

    /// The k-th basis blade in storage order.
    pub fn basis(k: usize) -> Self {
        let mut m = Multivector::zero();
        m.0[k] = 1.0;
        m
    }

    pub fn e1() -> Self {
        Self::basis(1)
    }
    pub fn e2() -> Self {
        Self::basis(2)
    }
    pub fn e3() -> Self {
        Self::basis(3)
    }
    pub fn e12() -> Self {
        Self::basis(4)
    }
    pub fn e23() -> Self {
        Self::basis(5)
    }
    pub fn e31() -> Self {
        Self::basis(6)
    }
    /// e₁₃ = −e₃₁.
    pub fn e13() -> Self {
        -Self::basis(6)
    }
    pub fn e123() -> Self {
        Self::basis(7)
    }

    pub fn coefficients(&self) -> [f64; 8] {
        self.0
    }

    /// ⟨U⟩ₖ
    pub fn grade(&self, k: usize) -> Self {
        let mut out = Multivector::zero();
        for (i, g) in GRADE.iter().enumerate() {
            if *g == k {
                out.0[i] = self.0[i];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Multivector(self.0.map(|x| x * s))
    }

    pub fn geometric_product(&self, other: &Multivector) -> Multivector {
        let mut out = [0.0; 8];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let (ma, sa) = BLADE_MASK[i];
            for (j, &b) in other.0.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let (mb, sb) = BLADE_MASK[j];
                let mask = ma ^ mb;
                let k = index_of_mask(mask);
                let sign = sa * sb * reorder_sign(ma, mb) * BLADE_MASK[k].1;
                out[k] += sign * a * b;
            }
        }
        Multivector(out)
    }

    pub fn involute(&self, kind: Involution) -> Multivector {
        let signs = kind.grade_signs();
        let mut out = self.0;
        for (i, x) in out.iter_mut().enumerate() {
            *x *= signs[GRADE[i]];
        }
        Multivector(out)
    }

    pub fn to_matrix(&self) -> Mat2 {
        self.0
            .iter()
            .zip(standard_generators().iter())
            .map(|(&a, g)| *g * a)
            .sum()
    }

    /// Inverse of [`Multivector::to_matrix`]; every 2×2 complex matrix has a
    /// unique preimage.
    pub fn from_matrix(m: &Mat2) -> Multivector {
        let half = 0.5;
        let a0 = (m.get(0, 0) + m.get(1, 1)) * half;
        let a3 = (m.get(0, 0) - m.get(1, 1)) * half;
        let a1 = (m.get(0, 1) + m.get(1, 0)) * half;
        let a2 = (m.get(1, 0) - m.get(0, 1)) * half / I;
        Multivector([a0.re, a1.re, a2.re, a3.re, a3.im, a1.im, a2.im, a0.im])
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        let mut out = self.0;
        for (x, y) in out.iter_mut().zip(rhs.0.iter()) {
            *x += y;
        }
        Multivector(out)
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.geometric_product(&rhs)
    }
}

pub fn geometric_product(a: &Multivector, b: &Multivector) -> Multivector {
    a.geometric_product(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    /// Automorphism Û.
    GradeInversion,
    /// Anti-automorphism Ũ.
    Reversion,
    /// Anti-automorphism Ū.
    CliffordConjugation,
}

impl Involution {
    pub const ALL: [Involution; 3] = [
        Involution::GradeInversion,
        Involution::Reversion,
        Involution::CliffordConjugation,
    ];

    pub fn grade_signs(self) -> [f64; 4] {
        match self {
            Involution::GradeInversion => [1.0, -1.0, 1.0, -1.0],
            Involution::Reversion => [1.0, 1.0, -1.0, -1.0],
            Involution::CliffordConjugation => [1.0, -1.0, -1.0, 1.0],
        }
    }

    pub fn is_anti(self) -> bool {
        !matches!(self, Involution::GradeInversion)
    }

    /// Closed matrix form in the standard representation.
    pub fn apply_matrix(self, u: &Mat2) -> Mat2 {
        let m = &u.0;
        match self {
            Involution::Reversion => u.adjoint(),
            Involution::CliffordConjugation => u.adjugate(),
            Involution::GradeInversion => Mat2::new(
                m[1][1].conj(),
                -m[1][0].conj(),
                -m[0][1].conj(),
                m[0][0].conj(),
            ),
        }
    }
}

pub fn involute(a: &Multivector, kind: Involution) -> Multivector {
    a.involute(kind)
}

/// 𝒢⁰ = {1, σ₁, σ₂, σ₃, iσ₃, iσ₁, iσ₂, i1}.
pub fn standard_generators() -> [Mat2; 8] {
    let (s1, s2, s3) = (Mat2::pauli(1), Mat2::pauli(2), Mat2::pauli(3));
    [
        Mat2::identity(),
        s1,
        s2,
        s3,
        s3 * I,
        s1 * I,
        s2 * I,
        Mat2::scalar(I),
    ]
}

pub fn check_gamma(gamma: f64) -> Result<f64> {
    if gamma.is_finite() && gamma.abs() < 1.0 {
        Ok(gamma)
    } else {
        Err(Error::GammaOutOfDomain(gamma))
    }
}

/// ω = +√(1−γ²).
pub fn omega(gamma: f64) -> f64 {
    (1.0 - gamma * gamma).sqrt()
}

/// T_eff = cos(θ/2)·1 + sin(θ/2)·σ₂ with sin θ = γ.
pub fn effective_transform(gamma: f64) -> Result<Mat2> {
    let theta = check_gamma(gamma)?.asin();
    let (s, co) = (0.5 * theta).sin_cos();
    Ok(Mat2::identity() * co + Mat2::pauli(2) * s)
}

/// cos(θ/2)·1 + 2cos(φ/2)sin(θ/2)·σ₁ − 2sin(φ/2)sin(θ/2)·σ₂, as stated for
/// the bi-orthogonal system theorem. It does not reproduce the closed-form
/// deformed generators at φ = π; kept for comparison.
pub fn theorem_transform(theta: f64, phi: f64) -> Mat2 {
    let st = (0.5 * theta).sin();
    Mat2::identity() * (0.5 * theta).cos()
        + Mat2::pauli(1) * (2.0 * (0.5 * phi).cos() * st)
        - Mat2::pauli(2) * (2.0 * (0.5 * phi).sin() * st)
}

/// The explicit closed forms of σ₁^γ, σ₂^γ, σ₃^γ.
pub fn closed_form_sigma(gamma: f64, m: usize) -> Result<Mat2> {
    let g = check_gamma(gamma)?;
    let w = omega(g);
    Ok(match m {
        1 => Mat2::new(c(0.0, -g), ONE, ONE, c(0.0, g)) * (1.0 / w),
        2 => Mat2::pauli(2),
        3 => Mat2::new(ONE, c(0.0, g), c(0.0, g), -ONE) * (1.0 / w),
        _ => panic!("sigma index {m} out of range 1..=3"),
    })
}

/// U = e₁₃ = [[0,−1],[1,0]], the unitary factor of fermionic time reversal.
pub fn e13_matrix() -> Mat2 {
    Mat2::new(ZERO, -ONE, ONE, ZERO)
}

/// T⁻¹ X T for a momentum-independent operator X: U⁻¹·X*·U.
pub fn time_reverse_constant(x: &Mat2) -> Mat2 {
    let u = e13_matrix();
    -u * x.conj() * u
}

/// The generator set 𝒢^γ in storage order together with its time-reversed
/// partner set 𝒢̆^γ.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedBasis {
    pub gamma: f64,
    pub omega: f64,
    pub generators: [Mat2; 8],
    pub reversed: [Mat2; 8],
}

impl DeformedBasis {
    pub fn generator(&self, k: usize) -> Mat2 {
        self.generators[k]
    }

    pub fn reversed_generator(&self, k: usize) -> Mat2 {
        self.reversed[k]
    }

    /// e₁^γ, e₂^γ, e₃^γ
    pub fn vector(&self, j: usize) -> Mat2 {
        self.generator(j)
    }

    pub fn e12(&self) -> Mat2 {
        self.generator(4)
    }
    pub fn e23(&self) -> Mat2 {
        self.generator(5)
    }
    pub fn e31(&self) -> Mat2 {
        self.generator(6)
    }
    pub fn e123(&self) -> Mat2 {
        self.generator(7)
    }

    /// Matrix image of a multivector in this basis.
    pub fn represent(&self, a: &Multivector) -> Mat2 {
        a.0.iter()
            .zip(self.generators.iter())
            .map(|(&x, g)| *g * x)
            .sum()
    }

    /// The listed time-reversed set {1, −σ̃₁, σ̃₂, −σ̃₃, iσ̃₃, iσ̃₁, iσ̃₂, −i1}
    /// with σ̃ₘ = (σₘ^γ)†. The e₂ entry is off by a sign against the
    /// conjugation T⁻¹e₂^γT = −σ₂; see [`DeformedBasis::listed_reversed_mismatch`].
    pub fn listed_reversed(&self) -> [Mat2; 8] {
        let t = |m: usize| self.generator(m).adjoint();
        [
            Mat2::identity(),
            -t(1),
            t(2),
            -t(3),
            t(3) * I,
            t(1) * I,
            t(2) * I,
            Mat2::scalar(-I),
        ]
    }

    /// Per-generator residual between the computed and the listed
    /// time-reversed set.
    pub fn listed_reversed_mismatch(&self) -> [f64; 8] {
        let listed = self.listed_reversed();
        let mut out = [0.0; 8];
        for (k, r) in out.iter_mut().enumerate() {
            *r = self.reversed_generator(k).max_abs_diff(&listed[k]);
        }
        out
    }
}

pub fn make_deformed_basis(gamma: f64) -> Result<DeformedBasis> {
    let t = effective_transform(gamma)?;
    let t_inv = t.inverse().ok_or(Error::NonInvertibleTransform)?;
    let v: [Mat2; 3] = [1, 2, 3].map(|m| t * Mat2::pauli(m) * t_inv);
    let generators = [
        Mat2::identity(),
        v[0],
        v[1],
        v[2],
        v[0] * v[1],
        v[1] * v[2],
        v[2] * v[0],
        v[0] * v[1] * v[2],
    ];
    let reversed = generators.map(|g| time_reverse_constant(&g));
    Ok(DeformedBasis {
        gamma,
        omega: omega(gamma),
        generators,
        reversed,
    })
}
