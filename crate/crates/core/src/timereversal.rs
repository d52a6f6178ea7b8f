//! Fermionic time reversal T = e₁₃·K on plane-wave spinors and on
//! momentum-parameterized operators.
//!
//! K conjugates amplitudes and turns e^{iεp·x} into e^{−iεp·x}, so T flips
//! the wave sign of a [`FiniteSpinor`]. Conjugating an operator at wave
//! vector k gives T⁻¹HT(k) = U⁻¹·H(−k)*·U with U = e₁₃.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{e13_matrix, make_deformed_basis, DeformedBasis};
use crate::error::Result;
use crate::matrix::{inner, vec_max_abs_diff, Mat2, Vec2, I};
use crate::momenta::MomentumHamiltonian;
use crate::spectrum::{eigensystem, Branch, EigenSystem, FiniteSpinor};

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("timereversal.anti_involution", "T^2 = -1"),
    ("timereversal.antiunitarity", "<T psi|T phi> = <phi|psi>"),
    ("timereversal.norm_preservation", "|T psi| = |psi|"),
    ("timereversal.pseudo_hermiticity", "T^-1 R T = R-dagger for all four R^+-_+-gamma"),
    ("timereversal.generator_reversal", "T^-1 sigma_m^gamma T = -sigma_m^-gamma"),
    ("timereversal.listed_reversed_generators", "computed reversed generators match the listed set except e2"),
    ("timereversal.kramers_analogue", "T psi+-^gamma = (-1)^n psi-+^-gamma with T psi an eigenvector of the adjoint"),
    ("timereversal.noncommutation_witness", "T fails to commute with R+_gamma for gamma != 0 and commutes at gamma = 0"),
    ("timereversal.reversed_schrodinger", "T psi(-t) obeys the adjoint Schrodinger equation, second order in dt"),
    ("timereversal.magnetic_pseudo_hermiticity", "H+- pseudo-Hermitian with A -> -A, B -> -B"),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeReversal {
    pub unitary_part: Mat2,
}

impl Default for TimeReversal {
    fn default() -> Self {
        TimeReversal::new()
    }
}

impl TimeReversal {
    pub fn new() -> Self {
        TimeReversal {
            unitary_part: e13_matrix(),
        }
    }

    /// (a₁, a₂) ↦ (−a₂*, a₁*), wave sign flipped.
    pub fn apply(&self, psi: &FiniteSpinor) -> FiniteSpinor {
        let a = psi.amplitudes;
        FiniteSpinor {
            amplitudes: self.unitary_part.apply(&[a[0].conj(), a[1].conj()]),
            momentum: psi.momentum,
            wave_sign: -psi.wave_sign,
        }
    }

    /// T⁻¹·H·T as a matrix at wave vector k.
    pub fn conjugate_at(&self, h: &MomentumHamiltonian, k: [f64; 2]) -> Mat2 {
        let u = self.unitary_part;
        let u_inv = -u;
        u_inv * h.at([-k[0], -k[1]]).conj() * u
    }

    /// T⁻¹·X·T for a momentum-independent matrix.
    pub fn conjugate_constant(&self, x: &Mat2) -> Mat2 {
        let u = self.unitary_part;
        -u * x.conj() * u
    }
}

pub fn apply(t: &TimeReversal, psi: &FiniteSpinor) -> FiniteSpinor {
    t.apply(psi)
}

/// max |H(−p)·U − U·H(p)ᵀ|: zero iff T⁻¹HT = H† at p.
pub fn pseudo_hermitian_residual(h: &MomentumHamiltonian, p: [f64; 2]) -> f64 {
    pseudo_hermitian_residual_pair(h, h, p)
}

/// As [`pseudo_hermitian_residual`] with the time-reversed side evaluated on
/// `reversed`, for Hamiltonians whose external fields change sign under T.
pub fn pseudo_hermitian_residual_pair(
    h: &MomentumHamiltonian,
    reversed: &MomentumHamiltonian,
    p: [f64; 2],
) -> f64 {
    let u = e13_matrix();
    (reversed.at([-p[0], -p[1]]) * u).max_abs_diff(&(u * h.at(p).transpose()))
}

/// max |H(−p)·U − U·H(p)*|: zero iff T commutes with H at p.
pub fn commutation_residual(h: &MomentumHamiltonian, p: [f64; 2]) -> f64 {
    let u = e13_matrix();
    (h.at([-p[0], -p[1]]) * u).max_abs_diff(&(u * h.at(p).conj()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorReversalReport {
    pub gamma: f64,
    /// max over m of |T⁻¹σₘ^γT + σₘ^{−γ}|
    pub sigma_residual: f64,
    /// Per-generator residual against the listed set 𝒢̆^γ.
    pub listed_residual: [f64; 8],
    /// |ĕ₂ + σ₂|: the listed entry carries the opposite sign.
    pub e2_against_minus_sigma2: f64,
}

impl GeneratorReversalReport {
    /// Worst listed residual over all generators except ĕ₂.
    pub fn listed_max_except_e2(&self) -> f64 {
        self.listed_residual
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != 2)
            .map(|(_, r)| *r)
            .fold(0.0, f64::max)
    }
}

pub fn generator_reversal(basis: &DeformedBasis) -> Result<GeneratorReversalReport> {
    let t = TimeReversal::new();
    let mirror = make_deformed_basis(-basis.gamma)?;
    let mut sigma_residual = 0.0_f64;
    for m in 1..=3 {
        let r = t.conjugate_constant(&basis.vector(m));
        sigma_residual = sigma_residual.max(r.max_abs_diff(&(-mirror.vector(m))));
    }
    Ok(GeneratorReversalReport {
        gamma: basis.gamma,
        sigma_residual,
        listed_residual: basis.listed_reversed_mismatch(),
        e2_against_minus_sigma2: basis.reversed_generator(2).max_abs_diff(&(-Mat2::pauli(2))),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KramersBranch {
    pub branch: Branch,
    /// Sign exponent of Tψ_b = (−1)ⁿψ̆_{other} with the dual taken at p.
    pub n_at_p: u8,
    pub residual_at_p: f64,
    /// Same matching with the dual taken at −p.
    pub n_at_minus_p: u8,
    pub residual_at_minus_p: f64,
    /// Eigenvalue of H†(−k) carried by Tψ_b, and its eigen residual.
    pub adjoint_eigenvalue: f64,
    pub adjoint_eigen_residual: f64,
    /// |⟨Tψ|ψ⟩| on the amplitudes alone.
    pub orthogonality: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KramersReport {
    pub branches: [KramersBranch; 2],
}

impl KramersReport {
    pub fn residual(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.residual_at_p.max(b.adjoint_eigen_residual).max(b.orthogonality))
            .fold(0.0, f64::max)
    }
}

fn best_sign(a: &Vec2, b: &Vec2) -> (u8, f64) {
    let plus = vec_max_abs_diff(a, b);
    let minus = vec_max_abs_diff(a, &[-b[0], -b[1]]);
    if plus <= minus {
        (0, plus)
    } else {
        (1, minus)
    }
}

/// Measures Tψ±^γ ∝ ψ∓^{−γ} with factor (−1)ⁿ, matching the dual at p and
/// at −p.
pub fn kramers_analogue(es: &EigenSystem) -> Result<KramersReport> {
    let t = TimeReversal::new();
    let flipped = eigensystem(
        es.gamma,
        es.beta,
        [-es.momentum[0], -es.momentum[1]],
        es.wave_sign,
    )?;
    let adjoint = es.adjoint_hamiltonian();
    let make = |b: Branch| {
        let psi = es.psi(b);
        let tpsi = t.apply(psi);
        let (n_at_p, residual_at_p) = best_sign(&tpsi.amplitudes, &es.dual(b.other()).amplitudes);
        let (n_at_minus_p, residual_at_minus_p) =
            best_sign(&tpsi.amplitudes, &flipped.dual(b.other()).amplitudes);
        let hv = adjoint.at(tpsi.wave_vector()).apply(&tpsi.amplitudes);
        let (adjoint_eigenvalue, adjoint_eigen_residual) = [es.lambda_plus, es.lambda_minus]
            .into_iter()
            .map(|l| {
                let lv = [tpsi.amplitudes[0] * l, tpsi.amplitudes[1] * l];
                (l, vec_max_abs_diff(&hv, &lv))
            })
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("two candidates");
        KramersBranch {
            branch: b,
            n_at_p,
            residual_at_p,
            n_at_minus_p,
            residual_at_minus_p,
            adjoint_eigenvalue,
            adjoint_eigen_residual,
            orthogonality: inner(&tpsi.amplitudes, &psi.amplitudes).norm(),
        }
    };
    Ok(KramersReport {
        branches: [make(Branch::Plus), make(Branch::Minus)],
    })
}

/// With ψ(t) = exp(−iH(k)t)ψ₀ and φ(t) = T[ψ(−t)], returns
/// max over `times` of |i∂ₜφ − H(−k)†φ| using central differences of step `dt`.
pub fn reversed_schrodinger_check(
    h: &MomentumHamiltonian,
    psi0: &FiniteSpinor,
    times: &[f64],
    dt: f64,
) -> Result<f64> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(crate::Error::InvalidConfig("time step must be positive".into()));
    }
    let t_op = TimeReversal::new();
    let hk = h.at(psi0.wave_vector());
    let phi = |t: f64| {
        let evolved = FiniteSpinor {
            amplitudes: hk.exp_minus_i(-t).apply(&psi0.amplitudes),
            ..*psi0
        };
        t_op.apply(&evolved)
    };
    let mut worst = 0.0_f64;
    for &t in times {
        let (fp, fm, f0) = (phi(t + dt), phi(t - dt), phi(t));
        let lhs: Vec2 = [0, 1].map(|s| I * (fp.amplitudes[s] - fm.amplitudes[s]) / (2.0 * dt));
        let rhs = h.at(f0.wave_vector()).adjoint().apply(&f0.amplitudes);
        worst = worst.max(vec_max_abs_diff(&lhs, &rhs));
    }
    Ok(worst)
}

/// ⟨Tψ|Tφ⟩ − ⟨φ|ψ⟩ on amplitudes.
pub fn antiunitarity_defect(psi: &FiniteSpinor, phi: &FiniteSpinor) -> Complex64 {
    let t = TimeReversal::new();
    inner(&t.apply(psi).amplitudes, &t.apply(phi).amplitudes) - inner(&phi.amplitudes, &psi.amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, ONE, ZERO};
    use crate::momenta::{magnetic, rashba};
    use proptest::prelude::*;

    fn spinor() -> impl Strategy<Value = FiniteSpinor> {
        (prop::array::uniform4(-2.0..2.0f64), prop::array::uniform2(-3.0..3.0f64)).prop_map(
            |(a, p)| FiniteSpinor::new([c(a[0], a[1]), c(a[2], a[3])], p, 1),
        )
    }

    #[test]
    fn basis_spinor_example() {
        let t = TimeReversal::new();
        let psi = FiniteSpinor::new([ONE, ZERO], [0.3, 0.4], 1);
        let tp = t.apply(&psi);
        assert_eq!(tp.amplitudes, [ZERO, ONE]);
        assert_eq!(tp.wave_vector(), [-0.3, -0.4]);
        let tt = t.apply(&tp);
        assert_eq!(tt.amplitudes, [-ONE, ZERO]);
        assert_eq!(tt.wave_sign, 1);
    }

    #[test]
    fn deformed_sigma_as_hamiltonian() {
        // A bare σ₃^γ is not T-pseudo-Hermitian but reverses to −σ₃^{−γ}
        let b = make_deformed_basis(0.5).unwrap();
        let t = TimeReversal::new();
        let r = t.conjugate_constant(&b.vector(3));
        assert!(r.max_abs_diff(&b.vector(3).adjoint()) > 0.5);
        assert!(r.max_abs_diff(&(-make_deformed_basis(-0.5).unwrap().vector(3))) < 1e-12);
        assert!(t.conjugate_constant(&Mat2::pauli(2)).max_abs_diff(&(-Mat2::pauli(2))) < 1e-15);
    }

    #[test]
    fn commutation_witness() {
        let p = [0.8, -0.3];
        assert!(commutation_residual(&rashba(0.0, 1.0, 1).unwrap(), p) < 1e-12);
        assert!(commutation_residual(&rashba(0.4, 1.0, 1).unwrap(), p) > 1e-3);
    }

    #[test]
    fn magnetic_field_conventions() {
        let (g, beta, a, b3, p) = (0.4, 1.1, [0.3, -0.6], 0.7, [0.9, 0.2]);
        for branch in [1, -1] {
            let h = magnetic(g, beta, a, b3, branch).unwrap();
            let both = magnetic(g, beta, [-a[0], -a[1]], -b3, branch).unwrap();
            let b_only = magnetic(g, beta, a, -b3, branch).unwrap();
            assert!(pseudo_hermitian_residual_pair(&h, &both, p) < 1e-12);
            assert!(pseudo_hermitian_residual_pair(&h, &b_only, p) > 1e-3);
        }
    }

    #[test]
    fn eigenstate_reversal_keeps_eigenvalue() {
        let es = eigensystem(0.6, 1.3, [0.5, -0.8], 1).unwrap();
        let h = rashba(0.6, 1.3, 1).unwrap();
        let r = reversed_schrodinger_check(&h, &es.psi_plus, &[0.0, 0.5, 1.0], 1e-4).unwrap();
        assert!(r < 1e-6);
        let k = kramers_analogue(&es).unwrap();
        assert!((k.branches[0].adjoint_eigenvalue - es.lambda_plus).abs() < 1e-12);
    }

    #[test]
    fn reversed_schrodinger_is_second_order() {
        let h = rashba(-0.7, 2.0, 1).unwrap();
        let psi = FiniteSpinor::new([c(0.6, 0.2), c(-0.3, 0.7)], [1.1, 0.4], 1);
        let times = [0.3, 1.7];
        let r1 = reversed_schrodinger_check(&h, &psi, &times, 1e-3).unwrap();
        let r2 = reversed_schrodinger_check(&h, &psi, &times, 5e-4).unwrap();
        let ratio = r1 / r2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        let r0 = reversed_schrodinger_check(&rashba(0.0, 2.0, 1).unwrap(), &psi, &times, 1e-3).unwrap();
        assert!(r0 < 1e-4);
    }

    proptest! {
        #[test]
        fn time_reversal_laws(a in spinor(), b in spinor()) {
            let t = TimeReversal::new();
            let tt = t.apply(&t.apply(&a));
            prop_assert!(vec_max_abs_diff(&tt.amplitudes, &[-a.amplitudes[0], -a.amplitudes[1]]) == 0.0);
            prop_assert!(antiunitarity_defect(&a, &b).norm() < 1e-12);
            prop_assert!((t.apply(&a).norm() - a.norm()).abs() < 1e-12);
            prop_assert!(inner(&t.apply(&a).amplitudes, &a.amplitudes).norm() < 1e-12);
        }

        #[test]
        fn rashba_family_is_pseudo_hermitian(
            g in -0.999..0.999f64,
            beta in 0.1..5.0f64,
            p in prop::array::uniform2(-7.0..7.0f64),
        ) {
            let scale = (1.0 + beta * beta + p[0] * p[0] + p[1] * p[1]) / (1.0 - g * g).sqrt();
            for (gg, s) in [(g, 1), (-g, 1), (g, -1), (-g, -1)] {
                let h = rashba(gg, beta, s).unwrap();
                prop_assert!(pseudo_hermitian_residual(&h, p) < 1e-12 * scale);
            }
        }

        #[test]
        fn generator_reversal_holds(g in -0.999..0.999f64) {
            let rep = generator_reversal(&make_deformed_basis(g).unwrap()).unwrap();
            let scale = 1.0 / (1.0 - g * g);
            prop_assert!(rep.sigma_residual < 1e-12 * scale);
            prop_assert!(rep.listed_max_except_e2() < 1e-12 * scale);
            prop_assert!(rep.e2_against_minus_sigma2 < 1e-12);
        }

        #[test]
        fn kramers_matching(
            g in -0.999..0.999f64,
            beta in 0.1..5.0f64,
            r in 0.1..10.0f64,
            a in 0.0..std::f64::consts::TAU,
            s in prop::bool::ANY,
        ) {
            let es = eigensystem(g, beta, [r * a.cos(), r * a.sin()], if s { 1 } else { -1 }).unwrap();
            let rep = kramers_analogue(&es).unwrap();
            let scale = (1.0 + es.lambda_plus) / (1.0 - g * g).sqrt();
            prop_assert!(rep.branches[0].residual_at_p < 1e-12);
            prop_assert!(rep.branches[1].residual_at_p < 1e-12);
            prop_assert_eq!(rep.branches[0].n_at_p, 0);
            prop_assert_eq!(rep.branches[1].n_at_p, 1);
            for b in &rep.branches {
                prop_assert!(b.adjoint_eigen_residual < 1e-10 * scale);
                prop_assert!(b.orthogonality < 1e-12);
            }
            prop_assert!((rep.branches[0].adjoint_eigenvalue - es.lambda_plus).abs() < 1e-12);
            prop_assert!((rep.branches[1].adjoint_eigenvalue - es.lambda_minus).abs() < 1e-12);
        }
    }
}
