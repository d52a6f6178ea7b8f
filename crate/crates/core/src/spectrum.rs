//! Closed-form spectrum and bi-orthogonal eigenspinors of R⁺_{±γ}.
//!
//! A plane-wave state e^{iεp·x}|A⟩ is stored as a [`FiniteSpinor`]: the
//! amplitudes |A⟩, the label p and the sign ε. The Hamiltonian acts on it
//! through its matrix at the wave vector k = εp. Delta-normalized momentum
//! kets reduce to label matching in every inner product.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{check_gamma, omega};
use crate::error::{Error, Result};
use crate::matrix::{c, inner, Mat2, Vec2, I, ONE, ZERO};
use crate::momenta::{rashba, MomentumHamiltonian};

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("spectrum.eigen_identity", "R+_gamma psi = lambda psi and R+_-gamma dual = lambda dual"),
    ("spectrum.eigenvalue_oracle", "closed-form lambda matches characteristic-polynomial roots"),
    ("spectrum.biorthogonality", "<<psi+^gamma|psi-^-gamma>> = 0 = <<psi-^gamma|psi+^-gamma>>"),
    ("spectrum.generic_isospectral_biorthogonality", "cross products of H and H-dagger eigenvectors vanish for delta != 0"),
    ("spectrum.projector_algebra", "Pi1 + Pi2 = 1, Pi1 Pi2 = 0, Pi_i^2 = Pi_i"),
    ("spectrum.projector_spectral_sum", "R+_gamma = lambda+ Pi1 + lambda- Pi2"),
    ("spectrum.flip_relations_principal", "flip relations mod 2pi for the principal-value phases"),
    ("spectrum.flip_relations_eigen_phase", "flip relations mod pi for the atan2 eigen-phases"),
    ("spectrum.diagonal_momentum_independence", "phi+- independent of |p| along p1 = +-p2"),
    ("spectrum.spin_vector_planar", "v3 = 0 for every eigenspinor"),
    ("spectrum.continuity", "bi-orthogonal continuity residual <= 1e-5 at dx = dt = 1e-3 with second-order convergence"),
    ("spectrum.undeformed_limit", "gamma = 0 gives orthogonal eigenvectors and Hermitian projectors"),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiniteSpinor {
    pub amplitudes: Vec2,
    pub momentum: [f64; 2],
    pub wave_sign: i8,
}

impl FiniteSpinor {
    pub fn new(amplitudes: Vec2, momentum: [f64; 2], wave_sign: i8) -> Self {
        FiniteSpinor {
            amplitudes,
            momentum,
            wave_sign,
        }
    }

    /// k = εp, the argument at which operators act on this state.
    pub fn wave_vector(&self) -> [f64; 2] {
        let s = self.wave_sign as f64;
        [s * self.momentum[0], s * self.momentum[1]]
    }

    pub fn same_label(&self, other: &FiniteSpinor) -> bool {
        self.momentum == other.momentum && self.wave_sign == other.wave_sign
    }

    pub fn scaled(&self, s: Complex64) -> FiniteSpinor {
        FiniteSpinor {
            amplitudes: [s * self.amplitudes[0], s * self.amplitudes[1]],
            ..*self
        }
    }

    pub fn norm(&self) -> f64 {
        crate::matrix::norm(&self.amplitudes)
    }
}

/// ⟨⟨a|b⟩⟩ = ⟨A|B⟩·(p′|p), with the delta factor realized as label equality.
pub fn biortho_inner(a: &FiniteSpinor, b: &FiniteSpinor) -> Complex64 {
    if a.same_label(b) {
        inner(&a.amplitudes, &b.amplitudes)
    } else {
        ZERO
    }
}

/// H acting on a plane-wave state.
pub fn apply_hamiltonian(h: &MomentumHamiltonian, psi: &FiniteSpinor) -> FiniteSpinor {
    FiniteSpinor {
        amplitudes: h.at(psi.wave_vector()).apply(&psi.amplitudes),
        ..*psi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn other(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// λ± = ½(|p|² + β²) ± β|p|
pub fn eigenvalues(beta: f64, p: [f64; 2]) -> (f64, f64) {
    let pp = p[0].hypot(p[1]);
    let e = 0.5 * (pp * pp + beta * beta);
    (e + beta * pp, e - beta * pp)
}

// Numerator and denominator of tan φ± at wave vector k.
fn phase_fraction(gamma: f64, k: [f64; 2], branch: Branch) -> (f64, f64) {
    let w = omega(gamma);
    let s = branch.sign();
    let kk = k[0].hypot(k[1]);
    let num = w * w * k[0] * kk - s * gamma * k[1] * k[1];
    let den = w * k[1] * kk + s * gamma * w * k[0] * k[1];
    (num, den)
}

/// φ± by the two-argument arctangent; the branch that makes the
/// eigenspinor formulas exact. Values in (−π, π].
pub fn eigen_phase(gamma: f64, k: [f64; 2], branch: Branch) -> f64 {
    let (num, den) = phase_fraction(gamma, k, branch);
    num.atan2(den)
}

/// φ± as the principal value tan⁻¹(num/den) of the same fraction, in
/// [−π/2, π/2]. Differs from [`eigen_phase`] by 0 or π.
pub fn principal_phase(gamma: f64, k: [f64; 2], branch: Branch) -> f64 {
    let (num, den) = phase_fraction(gamma, k, branch);
    (num / den).atan()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub gamma: f64,
    pub beta: f64,
    pub momentum: [f64; 2],
    pub wave_sign: i8,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
    /// Eigenspinors of R⁺_γ.
    pub psi_plus: FiniteSpinor,
    pub psi_minus: FiniteSpinor,
    /// Eigenspinors of R⁺_{−γ} = (R⁺_γ)†.
    pub dual_plus: FiniteSpinor,
    pub dual_minus: FiniteSpinor,
}

impl EigenSystem {
    pub fn lambda(&self, b: Branch) -> f64 {
        match b {
            Branch::Plus => self.lambda_plus,
            Branch::Minus => self.lambda_minus,
        }
    }

    pub fn psi(&self, b: Branch) -> &FiniteSpinor {
        match b {
            Branch::Plus => &self.psi_plus,
            Branch::Minus => &self.psi_minus,
        }
    }

    pub fn dual(&self, b: Branch) -> &FiniteSpinor {
        match b {
            Branch::Plus => &self.dual_plus,
            Branch::Minus => &self.dual_minus,
        }
    }

    pub fn hamiltonian(&self) -> MomentumHamiltonian {
        rashba(self.gamma, self.beta, 1).expect("validated at construction")
    }

    pub fn adjoint_hamiltonian(&self) -> MomentumHamiltonian {
        rashba(-self.gamma, self.beta, 1).expect("validated at construction")
    }

    /// max over both branches of |Hψ − λψ| and |H†ψ̆ − λψ̆|.
    pub fn eigen_residual(&self) -> f64 {
        let (h, hd) = (self.hamiltonian(), self.adjoint_hamiltonian());
        let mut worst = 0.0_f64;
        for b in Branch::BOTH {
            for (op, v) in [(&h, self.psi(b)), (&hd, self.dual(b))] {
                let hv = apply_hamiltonian(op, v).amplitudes;
                let lv = crate::matrix::scale(c(self.lambda(b), 0.0), &v.amplitudes);
                worst = worst.max(crate::matrix::vec_max_abs_diff(&hv, &lv));
            }
        }
        worst
    }
}

pub fn eigensystem(gamma: f64, beta: f64, p: [f64; 2], wave_sign: i8) -> Result<EigenSystem> {
    check_gamma(gamma)?;
    if wave_sign != 1 && wave_sign != -1 {
        return Err(Error::InvalidConfig(format!(
            "wave sign must be +1 or -1, got {wave_sign}"
        )));
    }
    if !(p[0].is_finite() && p[1].is_finite() && beta.is_finite()) {
        return Err(Error::InvalidConfig("non-finite momentum or beta".into()));
    }
    if beta == 0.0 || p[0].hypot(p[1]) == 0.0 {
        return Err(Error::DegenerateSplitting);
    }
    let s = wave_sign as f64;
    let k = [s * p[0], s * p[1]];
    let (lambda_plus, lambda_minus) = eigenvalues(beta, p);
    let phi_plus = eigen_phase(gamma, k, Branch::Plus);
    let phi_minus = eigen_phase(gamma, k, Branch::Minus);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let ep = Complex64::from_polar(1.0, phi_plus);
    let em = Complex64::from_polar(1.0, phi_minus);
    let spinor = |a: Complex64, b: Complex64| FiniteSpinor::new([h * a, h * b], p, wave_sign);
    Ok(EigenSystem {
        gamma,
        beta,
        momentum: p,
        wave_sign,
        lambda_plus,
        lambda_minus,
        phi_plus,
        phi_minus,
        psi_plus: spinor(ep, ONE),
        psi_minus: spinor(-em, ONE),
        dual_plus: spinor(ONE, em.conj()),
        dual_minus: spinor(-ONE, ep.conj()),
    })
}

/// A right eigenvector of a 2×2 matrix for a known eigenvalue, taken from
/// the larger of the two candidate null vectors.
pub fn right_eigenvector(h: &Mat2, lambda: Complex64) -> Vec2 {
    let (a, b, cc, d) = (h.get(0, 0), h.get(0, 1), h.get(1, 0), h.get(1, 1));
    let u = [b, lambda - a];
    let v = [lambda - d, cc];
    let pick = if crate::matrix::norm(&u) >= crate::matrix::norm(&v) {
        u
    } else {
        v
    };
    let n = crate::matrix::norm(&pick);
    if n == 0.0 {
        // h = λ·1: any vector works
        return [ONE, ZERO];
    }
    [pick[0] / n, pick[1] / n]
}

/// Finite parts of the bi-orthogonal projectors Π₁⁺, Π₂⁺.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorPair {
    pub pi1: Mat2,
    pub pi2: Mat2,
}

pub fn projectors(es: &EigenSystem) -> Result<ProjectorPair> {
    let ep = Complex64::from_polar(1.0, es.phi_plus);
    let em = Complex64::from_polar(1.0, es.phi_minus);
    let den = ep + em;
    if den.norm() < 1e-12 {
        return Err(Error::ProjectorSingular);
    }
    let inv = den.inv();
    let both = ep * em;
    Ok(ProjectorPair {
        pi1: Mat2::new(ep, both, ONE, em) * inv,
        pi2: Mat2::new(em, -both, -ONE, ep) * inv,
    })
}

impl ProjectorPair {
    /// max residual of Π₁+Π₂=1, Π₁Π₂=0, Π₂Π₁=0, Πᵢ²=Πᵢ.
    pub fn algebra_residual(&self) -> f64 {
        let (a, b) = (self.pi1, self.pi2);
        [
            (a + b).max_abs_diff(&Mat2::identity()),
            (a * b).max_abs(),
            (b * a).max_abs(),
            (a * a).max_abs_diff(&a),
            (b * b).max_abs_diff(&b),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// λ₊Π₁ + λ₋Π₂
    pub fn spectral_sum(&self, lambda_plus: f64, lambda_minus: f64) -> Mat2 {
        self.pi1 * lambda_plus + self.pi2 * lambda_minus
    }
}

/// Distance of `x` to the nearest multiple of `modulus`.
pub fn angle_residual(x: f64, modulus: f64) -> f64 {
    let r = x.rem_euclid(modulus);
    r.min(modulus - r)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipResidual {
    pub relation: String,
    /// Residual of the relation for the principal-value phases, mod 2π.
    pub principal_mod_2pi: f64,
    /// Residual of the relation for the atan2 eigen-phases, mod 2π.
    pub eigen_mod_2pi: f64,
    /// Residual of the relation for the atan2 eigen-phases, mod π.
    pub eigen_mod_pi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlipReport {
    pub gamma: f64,
    pub momentum: [f64; 2],
    pub entries: Vec<FlipResidual>,
}

impl FlipReport {
    pub fn max_principal(&self) -> f64 {
        self.entries.iter().map(|e| e.principal_mod_2pi).fold(0.0, f64::max)
    }

    pub fn max_eigen_mod_pi(&self) -> f64 {
        self.entries.iter().map(|e| e.eigen_mod_pi).fold(0.0, f64::max)
    }

    pub fn max_eigen_mod_2pi(&self) -> f64 {
        self.entries.iter().map(|e| e.eigen_mod_2pi).fold(0.0, f64::max)
    }
}

/// Residuals of
/// (a) φ∓(p,γ) = φ±(−p,γ) = φ±(p,−γ),
/// (b) φ±(−p,−γ) = φ±(p,γ),
/// (c) φ±(−p₁,p₂,γ) + φ∓(p₁,p₂,γ) = 0 = φ±(p₁,−p₂,γ) + φ±(p₁,p₂,γ),
/// for both sign choices and both phase conventions.
pub fn flip_relations(gamma: f64, p: [f64; 2]) -> Result<FlipReport> {
    check_gamma(gamma)?;
    type PhaseFn = fn(f64, [f64; 2], Branch) -> f64;
    let np = [-p[0], -p[1]];
    let m1 = [-p[0], p[1]];
    let m2 = [p[0], -p[1]];
    let mut entries = Vec::new();
    for b in Branch::BOTH {
        let o = b.other();
        let tag = if b == Branch::Plus { "+" } else { "-" };
        // Each relation as lhs − rhs under a given phase function.
        let relations: [(String, Box<dyn Fn(PhaseFn) -> f64>); 5] = [
            (
                format!("a1[{tag}]: phi_other(p,g) = phi(-p,g)"),
                Box::new(move |f: PhaseFn| f(gamma, p, o) - f(gamma, np, b)),
            ),
            (
                format!("a2[{tag}]: phi_other(p,g) = phi(p,-g)"),
                Box::new(move |f: PhaseFn| f(gamma, p, o) - f(-gamma, p, b)),
            ),
            (
                format!("b[{tag}]: phi(-p,-g) = phi(p,g)"),
                Box::new(move |f: PhaseFn| f(-gamma, np, b) - f(gamma, p, b)),
            ),
            (
                format!("c1[{tag}]: phi(-p1,p2,g) + phi_other(p,g) = 0"),
                Box::new(move |f: PhaseFn| f(gamma, m1, b) + f(gamma, p, o)),
            ),
            (
                format!("c2[{tag}]: phi(p1,-p2,g) + phi(p,g) = 0"),
                Box::new(move |f: PhaseFn| f(gamma, m2, b) + f(gamma, p, b)),
            ),
        ];
        for (name, rel) in relations.iter() {
            let pr = rel(principal_phase);
            let ei = rel(eigen_phase);
            entries.push(FlipResidual {
                relation: name.clone(),
                principal_mod_2pi: angle_residual(pr, TAU),
                eigen_mod_2pi: angle_residual(ei, TAU),
                eigen_mod_pi: angle_residual(ei, PI),
            });
        }
    }
    Ok(FlipReport {
        gamma,
        momentum: p,
        entries,
    })
}

/// ⟨⟨ψ̆|K|ψ⟩⟩ / ⟨⟨ψ̆|ψ⟩⟩ with ψ = c₊ψ₊^γ + c₋ψ₋^γ and ψ̆ = c₊ψ₊^{−γ} + c₋ψ₋^{−γ}.
pub fn associated_expectation(
    c_plus: Complex64,
    c_minus: Complex64,
    k: &Mat2,
    es: &EigenSystem,
) -> Result<Complex64> {
    let mix = |a: &FiniteSpinor, b: &FiniteSpinor| -> Vec2 {
        [
            c_plus * a.amplitudes[0] + c_minus * b.amplitudes[0],
            c_plus * a.amplitudes[1] + c_minus * b.amplitudes[1],
        ]
    };
    let psi = mix(&es.psi_plus, &es.psi_minus);
    let dual = mix(&es.dual_plus, &es.dual_minus);
    let den = inner(&dual, &psi);
    let scale = crate::matrix::norm(&psi) * crate::matrix::norm(&dual);
    if den.norm() <= 1e-12 * scale.max(f64::MIN_POSITIVE) || scale == 0.0 {
        return Err(Error::VanishingNormalization);
    }
    Ok(inner(&dual, &k.apply(&psi)) / den)
}

/// vⱼ = ⟨ψ|σⱼ|ψ⟩ with the conventional inner product on the finite part.
pub fn spin_vector(psi: &FiniteSpinor) -> [f64; 3] {
    [1, 2, 3].map(|j| inner(&psi.amplitudes, &Mat2::pauli(j).apply(&psi.amplitudes)).re)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    /// ρ = ψ†ψ with the Hermitian spin current β(ω⁻¹σ₁u₂ − σ₂u₁).
    Literal,
    /// ρ = ψ̆†ψ with ψ̆ evolving under H†, and the full spin velocity ∂H/∂p.
    Biorthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveComponent {
    pub coefficient: Complex64,
    pub state: FiniteSpinor,
    pub dual: FiniteSpinor,
    pub energy: f64,
}

/// Σₖ cₖ ψₖ e^{i(kₖ·x − λₖt)} together with its dual Σₖ cₖ ψ̆ₖ e^{i(kₖ·x − λₖt)}.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaveMixture {
    pub hamiltonian: MomentumHamiltonian,
    pub components: Vec<PlaneWaveComponent>,
}

impl PlaneWaveMixture {
    /// Mixture of eigenstates of R⁺_γ; each item is (cₖ, p, ε, branch).
    pub fn of_eigenstates(
        gamma: f64,
        beta: f64,
        items: &[(Complex64, [f64; 2], i8, Branch)],
    ) -> Result<Self> {
        let mut components = Vec::with_capacity(items.len());
        for &(coefficient, p, sign, b) in items {
            let es = eigensystem(gamma, beta, p, sign)?;
            components.push(PlaneWaveComponent {
                coefficient,
                state: *es.psi(b),
                dual: *es.dual(b),
                energy: es.lambda(b),
            });
        }
        Ok(PlaneWaveMixture {
            hamiltonian: rashba(gamma, beta, 1)?,
            components,
        })
    }

    // (field, ∂₁ field, ∂₂ field) at (x, t) for the states or their duals.
    fn field(&self, x: [f64; 2], t: f64, dual: bool) -> [Vec2; 3] {
        let mut out = [[ZERO; 2]; 3];
        for comp in &self.components {
            let k = comp.state.wave_vector();
            let phase = Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] - comp.energy * t);
            let amp = if dual { &comp.dual } else { &comp.state }.amplitudes;
            for s in 0..2 {
                let v = comp.coefficient * amp[s] * phase;
                out[0][s] += v;
                out[1][s] += I * k[0] * v;
                out[2][s] += I * k[1] * v;
            }
        }
        out
    }

    /// (ρ, J₁, J₂) at (x, t).
    pub fn density_current(&self, x: [f64; 2], t: f64, kind: DensityKind) -> (f64, [f64; 2]) {
        let psi = self.field(x, t, false);
        let (left, spin) = match kind {
            DensityKind::Literal => {
                let w = self.hamiltonian.basis.omega;
                let beta = self.hamiltonian.beta * self.hamiltonian.sign as f64;
                (
                    psi,
                    [Mat2::pauli(2) * -beta, Mat2::pauli(1) * (beta / w)],
                )
            }
            DensityKind::Biorthogonal => (
                self.field(x, t, true),
                [
                    self.hamiltonian.spin_velocity(0),
                    self.hamiltonian.spin_velocity(1),
                ],
            ),
        };
        let rho = inner(&left[0], &psi[0]);
        let mut j = [0.0; 2];
        for d in 0..2 {
            let para = (inner(&left[0], &psi[d + 1]) - inner(&left[d + 1], &psi[0])) / (2.0 * I);
            let sp = inner(&left[0], &spin[d].apply(&psi[0]));
            j[d] = (para + sp).re;
        }
        (rho.re, j)
    }
}

/// max over `points` of |∂₁J₁ + ∂₂J₂ + ∂ₜρ| at time `t`, by central
/// differences with steps `dx` and `dt`.
pub fn continuity_residual(
    mix: &PlaneWaveMixture,
    points: &[[f64; 2]],
    t: f64,
    dt: f64,
    dx: f64,
    kind: DensityKind,
) -> Result<f64> {
    if !(dt > 0.0 && dx > 0.0) {
        return Err(Error::InvalidConfig("dt and dx must be positive".into()));
    }
    let mut worst = 0.0_f64;
    for &x in points {
        let drho = (mix.density_current(x, t + dt, kind).0 - mix.density_current(x, t - dt, kind).0)
            / (2.0 * dt);
        let mut div = 0.0;
        for d in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[d] += dx;
            xm[d] -= dx;
            div += (mix.density_current(xp, t, kind).1[d] - mix.density_current(xm, t, kind).1[d])
                / (2.0 * dx);
        }
        worst = worst.max((div + drho).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quadratic_roots(h: &Mat2) -> [Complex64; 2] {
        // λ² − tr λ + det = 0
        let tr = h.trace();
        let det = h.det();
        let d = (tr * tr - 4.0 * det).sqrt();
        [(tr + d) * 0.5, (tr - d) * 0.5]
    }

    #[test]
    fn eigenvalue_example() {
        for g in [-0.8, 0.0, 0.5] {
            let es = eigensystem(g, 2.0, [3.0, 4.0], 1).unwrap();
            assert!((es.lambda_plus - 24.5).abs() < 1e-12);
            assert!((es.lambda_minus - 4.5).abs() < 1e-12);
            let mut r = quadratic_roots(&rashba(g, 2.0, 1).unwrap().at([3.0, 4.0]));
            r.sort_by(|a, b| b.re.total_cmp(&a.re));
            assert!((r[0] - 24.5).norm() < 1e-10 && (r[1] - 4.5).norm() < 1e-10);
        }
    }

    #[test]
    fn undeformed_phases_coincide() {
        let es = eigensystem(0.0, 1.0, [0.3, -1.7], 1).unwrap();
        let want = 0.3f64.atan2(-1.7);
        assert!((es.phi_plus - want).abs() < 1e-14 && (es.phi_minus - want).abs() < 1e-14);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert_eq!(eigensystem(0.1, 0.0, [1.0, 1.0], 1), Err(Error::DegenerateSplitting));
        assert_eq!(eigensystem(0.1, 1.0, [0.0, 0.0], 1), Err(Error::DegenerateSplitting));
        assert!(matches!(eigensystem(1.2, 1.0, [1.0, 0.0], 1), Err(Error::GammaOutOfDomain(_))));
        assert!(eigensystem(0.1, 1.0, [1.0, 0.0], 0).is_err());
    }

    #[test]
    fn diagonal_momentum_phases_are_scale_free() {
        for g in [-0.9, 0.3, 0.7] {
            for dir in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
                let base = eigensystem(g, 1.0, dir, 1).unwrap();
                for s in [0.2, 3.0, 40.0] {
                    let es = eigensystem(g, 1.0, [s * dir[0], s * dir[1]], 1).unwrap();
                    assert!((es.phi_plus - base.phi_plus).abs() < 1e-12);
                    assert!((es.phi_minus - base.phi_minus).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let es = eigensystem(0.4, 1.5, [0.7, -0.2], 1).unwrap();
        assert!(biortho_inner(&es.psi_plus, &es.dual_minus).norm() < 1e-12);
        assert!(biortho_inner(&es.psi_minus, &es.dual_plus).norm() < 1e-12);
        assert!((biortho_inner(&es.psi_plus, &es.psi_plus) - 1.0).norm() < 1e-12);
        let other = eigensystem(0.4, 1.5, [0.7, 0.2], 1).unwrap();
        assert_eq!(biortho_inner(&es.psi_plus, &other.psi_plus), ZERO);
        let flipped = eigensystem(0.4, 1.5, [0.7, -0.2], -1).unwrap();
        assert_eq!(biortho_inner(&es.psi_plus, &flipped.psi_plus), ZERO);
    }

    #[test]
    fn undeformed_projector_example() {
        let es = eigensystem(0.0, 1.0, [1.0, 0.0], 1).unwrap();
        let pr = projectors(&es).unwrap();
        let want = Mat2::new(ONE, I, -I, ONE) * 0.5;
        assert!(pr.pi1.max_abs_diff(&want) < 1e-12);
        assert!(pr.pi1.max_abs_diff(&pr.pi1.adjoint()) < 1e-12);
    }

    #[test]
    fn singular_projector_detected() {
        let mut es = eigensystem(0.3, 1.0, [1.0, 0.5], 1).unwrap();
        es.phi_minus = es.phi_plus + PI;
        assert_eq!(projectors(&es), Err(Error::ProjectorSingular));
    }

    #[test]
    fn associated_state_examples() {
        let es = eigensystem(0.6, 1.2, [0.4, 0.9], 1).unwrap();
        let h = rashba(0.6, 1.2, 1).unwrap().at([0.4, 0.9]);
        let r = associated_expectation(ONE, ZERO, &h, &es).unwrap();
        assert!((r - es.lambda_plus).norm() < 1e-12);
        let s = c(FRAC_1_SQRT_2, 0.0);
        let r = associated_expectation(s, s, &h, &es).unwrap();
        assert!((r - 0.5 * (es.lambda_plus + es.lambda_minus)).norm() < 1e-12);
        let r = associated_expectation(c(0.3, 0.1), c(-0.2, 0.8), &Mat2::identity(), &es).unwrap();
        assert!((r - 1.0).norm() < 1e-12);
        assert_eq!(
            associated_expectation(ZERO, ZERO, &h, &es),
            Err(Error::VanishingNormalization)
        );
    }

    #[test]
    fn spin_vector_examples() {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let v = spin_vector(&FiniteSpinor::new([h, h], [1.0, 0.0], 1));
        assert!((v[0] - 1.0).abs() < 1e-15 && v[1].abs() < 1e-15 && v[2].abs() < 1e-15);
        let es = eigensystem(0.0, 1.0, [1.0, 0.0], 1).unwrap();
        let v = spin_vector(&es.psi_plus);
        assert!(v[0].abs() < 1e-15 && (v[1] + 1.0).abs() < 1e-15 && v[2].abs() < 1e-15);
    }

    #[test]
    fn flip_relations_principal_and_eigen() {
        for (g, p) in [(0.3, [0.7, -1.2]), (-0.85, [-2.0, 0.4]), (0.0, [1.0, 1.0])] {
            let r = flip_relations(g, p).unwrap();
            assert!(r.max_principal() < 1e-10, "{r:?}");
            assert!(r.max_eigen_mod_pi() < 1e-10, "{r:?}");
        }
        // p₁ = 0: the fraction's numerator loses its ω² term
        let r = flip_relations(0.5, [0.0, 1.3]).unwrap();
        assert!(r.max_principal() < 1e-10);
        let r = flip_relations(0.0, [0.0, 1.3]).unwrap();
        assert!(r.max_eigen_mod_pi() < 1e-10);
        let es = eigensystem(0.0, 1.0, [0.0, 1.3], 1).unwrap();
        assert!(angle_residual(es.phi_plus, PI) < 1e-15);
    }

    #[test]
    fn stationary_state_has_no_residual() {
        let mix = PlaneWaveMixture::of_eigenstates(0.4, 1.0, &[(ONE, [0.5, 0.3], 1, Branch::Plus)])
            .unwrap();
        let pts = [[0.0, 0.0], [0.3, -0.7]];
        for kind in [DensityKind::Literal, DensityKind::Biorthogonal] {
            let r = continuity_residual(&mix, &pts, 0.2, 1e-3, 1e-3, kind).unwrap();
            assert!(r < 1e-9, "{kind:?}: {r}");
        }
    }

    #[test]
    fn free_particle_continuity() {
        // β → 0 is excluded from eigensystem, so use γ = 0 and small β
        let mix = PlaneWaveMixture::of_eigenstates(
            0.0,
            1e-9,
            &[(ONE, [0.5, 0.3], 1, Branch::Plus), (c(0.5, 0.2), [-0.4, 0.9], 1, Branch::Minus)],
        )
        .unwrap();
        let r = continuity_residual(&mix, &[[0.1, 0.2]], 0.3, 1e-3, 1e-3, DensityKind::Literal).unwrap();
        assert!(r < 1e-5);
    }

    fn eigen_case() -> impl Strategy<Value = (f64, f64, [f64; 2], i8)> {
        (
            -0.999..0.999f64,
            0.1..5.0f64,
            0.1..10.0f64,
            0.0..TAU,
            prop::bool::ANY,
        )
            .prop_map(|(g, b, r, a, s)| (g, b, [r * a.cos(), r * a.sin()], if s { 1 } else { -1 }))
    }

    proptest! {
        #[test]
        fn eigen_identity_and_biorthogonality((g, beta, p, s) in eigen_case()) {
            let es = eigensystem(g, beta, p, s).unwrap();
            let scale = (1.0 + es.lambda_plus) / (1.0 - g * g).sqrt();
            prop_assert!(es.eigen_residual() < 1e-12 * scale);
            prop_assert!(biortho_inner(&es.dual_minus, &es.psi_plus).norm() < 1e-12);
            prop_assert!(biortho_inner(&es.dual_plus, &es.psi_minus).norm() < 1e-12);
            for b in Branch::BOTH {
                prop_assert!(spin_vector(es.psi(b))[2].abs() < 1e-12);
                prop_assert!(spin_vector(es.dual(b))[2].abs() < 1e-12);
            }
        }

        #[test]
        fn projector_identities((g, beta, p, s) in eigen_case()) {
            let es = eigensystem(g, beta, p, s).unwrap();
            let pr = projectors(&es).unwrap();
            let den = (Complex64::from_polar(1.0, es.phi_plus) + Complex64::from_polar(1.0, es.phi_minus)).norm();
            prop_assume!(den > 1e-3);
            let h = rashba(g, beta, 1).unwrap().at(es.psi_plus.wave_vector());
            let spec = pr.spectral_sum(es.lambda_plus, es.lambda_minus);
            let scale = (1.0 + es.lambda_plus) / den;
            prop_assert!(pr.algebra_residual() < 1e-12 / den);
            prop_assert!(spec.max_abs_diff(&h) < 1e-12 * scale);
        }

        #[test]
        fn flip_relations_hold(g in -0.999..0.999f64, r in 0.1..10.0f64, a in 0.0..TAU) {
            let rep = flip_relations(g, [r * a.cos(), r * a.sin()]).unwrap();
            prop_assert!(rep.max_principal() < 1e-10);
            prop_assert!(rep.max_eigen_mod_pi() < 1e-10);
        }

        #[test]
        fn isospectral_biorthogonality_for_generic_similarity(
            e in -3.0..3.0f64,
            delta in 0.1..3.0f64,
            s in prop::array::uniform4((-2.0..2.0f64, -2.0..2.0f64)),
        ) {
            let m = Mat2::new(c(s[0].0, s[0].1), c(s[1].0, s[1].1), c(s[2].0, s[2].1), c(s[3].0, s[3].1));
            prop_assume!(m.det().norm() > 0.1);
            let h = m * Mat2::diag(c(e + delta, 0.0), c(e - delta, 0.0)) * m.inverse().unwrap();
            prop_assume!(h.max_abs_diff(&h.adjoint()) > 1e-6);
            let xi_p = right_eigenvector(&h, c(e + delta, 0.0));
            let xi_m = right_eigenvector(&h, c(e - delta, 0.0));
            let zeta_p = right_eigenvector(&h.adjoint(), c(e + delta, 0.0));
            let zeta_m = right_eigenvector(&h.adjoint(), c(e - delta, 0.0));
            let cond = m.max_abs() * m.inverse().unwrap().max_abs();
            prop_assert!(inner(&zeta_m, &xi_p).norm() < 1e-12 * cond * cond);
            prop_assert!(inner(&zeta_p, &xi_m).norm() < 1e-12 * cond * cond);
        }
    }
}
