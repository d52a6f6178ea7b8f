//! Lévy-Leblond linearization matrices, generalized Clifford momenta
//! ℘^Q = Σⱼ eⱼ^γ(pⱼ + Qⱼ) and the Hamiltonians built from their products.
//!
//! Operators act on plane waves, so every Hamiltonian is a matrix-valued
//! function of the momentum label p. Units: ℏ = m = 1.

use num_complex::Complex64;

use crate::block::Block4;
use crate::clifford::{make_deformed_basis, DeformedBasis};
use crate::error::{Error, Result};
use crate::matrix::{c, Mat2, Vec2, I, ZERO};

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("momenta.linearization_relations", "L, N, M relations and M_i'M_j + M_j'M_i = -2 delta_ij"),
    ("momenta.factorization_consistency", "R+ equals 1/2 P^B P^A as a direct product"),
    ("momenta.rashba_adjoint", "adjoint of R+_gamma equals R+_-gamma"),
    ("momenta.isospectrality", "Spec R+_gamma = Spec R+_-gamma = Spec R+_0"),
    ("momenta.undeformed_hermitian", "R+_0 is Hermitian"),
    ("momenta.magnetic_product_form", "H+- equals 1/2 P+- P-+ + e3 B3"),
    ("momenta.coupled_system", "linearized coupled system reproduces H psi = E psi"),
];

/// The 4×4 matrices of the linearized Schrödinger system.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizationSet {
    pub l: Block4,
    pub l_prime: Block4,
    pub n: Block4,
    pub n_prime: Block4,
    /// M₁..M₅
    pub m: [Block4; 5],
    /// M₁′..M₅′
    pub m_prime: [Block4; 5],
    pub lambda: Block4,
    /// γ₁..γ₄
    pub gamma: [Block4; 4],
}

pub fn build_linearization() -> LinearizationSet {
    build_linearization_with(&make_deformed_basis(0.0).expect("gamma = 0 is in range"))
}

/// Same construction with γⱼ = offdiag(eⱼ^γ, eⱼ^γ).
pub fn build_linearization_with(basis: &DeformedBasis) -> LinearizationSet {
    let one = Mat2::identity();
    let lambda = Block4::off_diag(one, one);
    let lambda_inv = lambda
        .inverse_via_dense()
        .expect("offdiag(1, 1) is invertible");
    let e = |j: usize| basis.vector(j);
    let gamma = [
        Block4::off_diag(e(1), e(1)),
        Block4::off_diag(e(2), e(2)),
        Block4::off_diag(e(3), e(3)),
        Block4::diag(one, -one),
    ];
    let mi = I;
    let mut m = [Block4::zero(); 5];
    let mut m_prime = [Block4::zero(); 5];
    for j in 0..4 {
        m[j] = lambda * gamma[j];
        m_prime[j] = -(gamma[j] * lambda_inv);
    }
    m[4] = lambda * (-mi);
    m_prime[4] = lambda_inv * (-mi);
    // M₄ = i(L + N/2), M₅ = L − N/2
    let l = (m[3] * (-mi) + m[4]) * 0.5;
    let n = m[3] * (-mi) - m[4];
    let l_prime = (m_prime[3] * (-mi) + m_prime[4]) * 0.5;
    let n_prime = m_prime[3] * (-mi) - m_prime[4];
    LinearizationSet {
        l,
        l_prime,
        n,
        n_prime,
        m,
        m_prime,
        lambda,
        gamma,
    }
}

impl LinearizationSet {
    /// Named residuals of the defining relations: the L, N relations for
    /// j = 1..3 and the condensed M relation for i, j = 1..5.
    pub fn relation_residuals(&self) -> Vec<(String, f64)> {
        let zero = Block4::zero();
        let id = Block4::identity();
        let mut out = vec![
            ("L'L".to_string(), (self.l_prime * self.l).max_abs()),
            ("N'N".to_string(), (self.n_prime * self.n).max_abs()),
            (
                "L'N+N'L-2".to_string(),
                (self.l_prime * self.n + self.n_prime * self.l).max_abs_diff(&(id * 2.0)),
            ),
        ];
        for j in 0..3 {
            let lm = self.l_prime * self.m[j] + self.m_prime[j] * self.l;
            out.push((format!("L'M{0}+M{0}'L", j + 1), lm.max_abs_diff(&zero)));
            let nm = self.n_prime * self.m[j] + self.m_prime[j] * self.n;
            out.push((format!("N'M{0}+M{0}'N", j + 1), nm.max_abs_diff(&zero)));
        }
        for i in 0..5 {
            for j in 0..5 {
                let lhs = self.m_prime[i] * self.m[j] + self.m_prime[j] * self.m[i];
                let want = if i == j { id * -2.0 } else { zero };
                out.push((format!("M{}'M{}+M{}'M{}", i + 1, j + 1, j + 1, i + 1), lhs.max_abs_diff(&want)));
            }
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.relation_residuals()
            .iter()
            .fold(0.0_f64, |acc, (_, r)| acc.max(*r))
    }
}

/// ℘^Q = Σⱼ eⱼ^γ(pⱼ + Qⱼ) with a constant complex shift Q.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordMomentum {
    pub basis: DeformedBasis,
    pub shift: [Complex64; 3],
}

impl CliffordMomentum {
    pub fn new(gamma: f64, shift: [Complex64; 3]) -> Result<Self> {
        Ok(CliffordMomentum {
            basis: make_deformed_basis(gamma)?,
            shift,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.basis.gamma
    }

    pub fn evaluate(&self, p: [f64; 3]) -> Mat2 {
        (0..3)
            .map(|j| self.basis.vector(j + 1) * (self.shift[j] + p[j]))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamiltonianKind {
    Factorized,
    Rashba,
    Magnetic,
}

/// Structured coefficients of H(p) over {1, e₁₂^γ, e₂₃^γ, e₃₁^γ, e₃^γ}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianCoefficients {
    pub kinetic: Complex64,
    pub e12: Complex64,
    pub e23: Complex64,
    pub e31: Complex64,
    pub zeeman: Complex64,
}

/// H(p) = ½·℘^left(p)·℘^right(p) + B₃·e₃^γ.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumHamiltonian {
    pub kind: HamiltonianKind,
    pub basis: DeformedBasis,
    pub left: [Complex64; 3],
    pub right: [Complex64; 3],
    pub zeeman: f64,
    pub beta: f64,
    /// +1 for R⁺ / H⁺, −1 for the β ↦ −β partner.
    pub sign: i8,
}

impl MomentumHamiltonian {
    pub fn gamma(&self) -> f64 {
        self.basis.gamma
    }

    pub fn left_momentum(&self) -> CliffordMomentum {
        CliffordMomentum {
            basis: self.basis.clone(),
            shift: self.left,
        }
    }

    pub fn right_momentum(&self) -> CliffordMomentum {
        CliffordMomentum {
            basis: self.basis.clone(),
            shift: self.right,
        }
    }

    /// Expansion of ½Σⱼₖ eⱼeₖ bⱼaₖ with bⱼ = pⱼ + leftⱼ, aₖ = pₖ + rightₖ.
    pub fn coefficients(&self, p: [f64; 3]) -> HamiltonianCoefficients {
        let b: [Complex64; 3] = [0, 1, 2].map(|j| self.left[j] + p[j]);
        let a: [Complex64; 3] = [0, 1, 2].map(|j| self.right[j] + p[j]);
        HamiltonianCoefficients {
            kinetic: 0.5 * (b[0] * a[0] + b[1] * a[1] + b[2] * a[2]),
            e12: 0.5 * (b[0] * a[1] - b[1] * a[0]),
            e23: 0.5 * (b[1] * a[2] - b[2] * a[1]),
            e31: 0.5 * (b[2] * a[0] - b[0] * a[2]),
            zeeman: c(self.zeeman, 0.0),
        }
    }

    pub fn evaluate(&self, p: [f64; 3]) -> Mat2 {
        let k = self.coefficients(p);
        Mat2::scalar(k.kinetic)
            + self.basis.e12() * k.e12
            + self.basis.e23() * k.e23
            + self.basis.e31() * k.e31
            + self.basis.vector(3) * k.zeeman
    }

    /// In-plane evaluation, p₃ = 0.
    pub fn at(&self, p: [f64; 2]) -> Mat2 {
        self.evaluate([p[0], p[1], 0.0])
    }

    /// ∂H/∂pⱼ = ½(eⱼ℘^right + ℘^left eⱼ).
    pub fn velocity(&self, j: usize, p: [f64; 3]) -> Mat2 {
        let e = self.basis.vector(j + 1);
        (e * self.right_momentum().evaluate(p) + self.left_momentum().evaluate(p) * e) * 0.5
    }

    /// The momentum-independent part of ∂H/∂pⱼ; the spin contribution to
    /// the current.
    pub fn spin_velocity(&self, j: usize) -> Mat2 {
        self.velocity(j, [0.0; 3])
    }

    /// ℘^right ψ + 2iη = 0 and ℘^left η − iEψ = 0 with η = (i/2)℘^right ψ.
    /// Returns the residual of the second equation.
    pub fn coupled_system_residual(&self, p: [f64; 3], psi: &Vec2, energy: f64) -> f64 {
        let pa = self.right_momentum().evaluate(p).apply(psi);
        let eta = [pa[0] * (0.5 * I), pa[1] * (0.5 * I)];
        let first = [pa[0] + 2.0 * I * eta[0], pa[1] + 2.0 * I * eta[1]];
        let pb = self.left_momentum().evaluate(p).apply(&eta);
        let second = [pb[0] - I * energy * psi[0], pb[1] - I * energy * psi[1]];
        let zero = [ZERO, ZERO];
        crate::matrix::vec_max_abs_diff(&first, &zero)
            .max(crate::matrix::vec_max_abs_diff(&second, &zero))
    }
}

/// (H^AB, H^BA) = (½℘^B℘^A, ½℘^A℘^B).
pub fn factorize(
    a: &CliffordMomentum,
    b: &CliffordMomentum,
) -> Result<(MomentumHamiltonian, MomentumHamiltonian)> {
    if a.gamma() != b.gamma() {
        return Err(Error::MismatchedGamma(a.gamma(), b.gamma()));
    }
    let make = |left: [Complex64; 3], right: [Complex64; 3]| MomentumHamiltonian {
        kind: HamiltonianKind::Factorized,
        basis: a.basis.clone(),
        left,
        right,
        zeeman: 0.0,
        beta: 0.0,
        sign: 1,
    };
    Ok((make(b.shift, a.shift), make(a.shift, b.shift)))
}

/// R^±_γ(p) = ½(p₁² + p₂² + β²)1 ± iβ(e₃₁^γp₁ − e₂₃^γp₂).
pub fn rashba(gamma: f64, beta: f64, sign: i8) -> Result<MomentumHamiltonian> {
    let s = sign_of(sign)?;
    let basis = make_deformed_basis(gamma)?;
    let alpha = c(0.0, s * beta);
    Ok(MomentumHamiltonian {
        kind: HamiltonianKind::Rashba,
        basis,
        left: [ZERO, ZERO, alpha],
        right: [ZERO, ZERO, -alpha],
        zeeman: 0.0,
        beta,
        sign,
    })
}

/// H^± = ½℘^±℘^∓ + e₃^γB₃ with ℘^± = eⱼ^γ(pⱼ + Aⱼ ± iαⱼ), α = (0, 0, β)
/// and a constant in-plane vector potential A.
pub fn magnetic(
    gamma: f64,
    beta: f64,
    a_vec: [f64; 2],
    b3: f64,
    branch: i8,
) -> Result<MomentumHamiltonian> {
    let mut h = rashba(gamma, beta, branch)?;
    for j in 0..2 {
        h.left[j] += a_vec[j];
        h.right[j] += a_vec[j];
    }
    h.zeeman = b3;
    h.kind = HamiltonianKind::Magnetic;
    Ok(h)
}

fn sign_of(sign: i8) -> Result<f64> {
    match sign {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        _ => Err(Error::InvalidConfig(format!("sign must be +1 or -1, got {sign}"))),
    }
}
