//! Supercharges, the SUSY and pseudo-SUSY Hamiltonians, Witten parity and
//! super time reversal, as 4×4 block operators at a fixed momentum.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::block::Block4;
use crate::clifford::e13_matrix;
use crate::error::Result;
use crate::matrix::Mat2;
use crate::momenta::{rashba, MomentumHamiltonian};

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("susy.nilpotency", "(Theta+-)^2 = 0"),
    ("susy.anticommutator_closure", "{Theta+, Theta-} = diag(R+, R-)"),
    ("susy.charge_conservation", "[H_SUSY, Theta+-] = 0"),
    ("susy.witten_relations", "W^2 = 1, [W, H] = 0, {W, Theta} = {W, Theta-dagger} = 0"),
    ("susy.pseudo_susy_equality", "H_pSUSY = H_SUSY"),
    ("susy.intertwining", "R+ Delta = Delta R- and R- Delta# = Delta# R+"),
    ("susy.super_time_reversal", "super time reversal maps Lambda+-dagger to Lambda- and squares to -1"),
    ("susy.sector_isospectrality", "sector spectra related by beta -> -beta and paired by the supercharges"),
];

/// (℘^B(p), ℘^A(p)) for R⁺_γ = ½℘^B℘^A.
fn momenta_at(h: &MomentumHamiltonian, p: [f64; 2]) -> (Mat2, Mat2) {
    let q = [p[0], p[1], 0.0];
    (h.left_momentum().evaluate(q), h.right_momentum().evaluate(q))
}

/// Θ⁺ = (1/√2)[[0, ℘^B], [0, 0]], Θ⁻ = (1/√2)[[0, 0], [℘^A, 0]].
pub fn supercharges(gamma: f64, beta: f64, p: [f64; 2]) -> Result<(Block4, Block4)> {
    let (pb, pa) = momenta_at(&rashba(gamma, beta, 1)?, p);
    let zero = Mat2::zero();
    Ok((
        Block4::new(zero, pb, zero, zero) * FRAC_1_SQRT_2,
        Block4::new(zero, zero, pa, zero) * FRAC_1_SQRT_2,
    ))
}

/// H^SUSY = {Θ⁺, Θ⁻}
pub fn susy_hamiltonian(gamma: f64, beta: f64, p: [f64; 2]) -> Result<Block4> {
    let (tp, tm) = supercharges(gamma, beta, p)?;
    Ok(tp.anticommutator(&tm))
}

/// diag(R⁺_γ(p), R⁻_γ(p)), the expected form of H^SUSY.
pub fn sector_hamiltonian(gamma: f64, beta: f64, p: [f64; 2]) -> Result<Block4> {
    Ok(Block4::diag(
        rashba(gamma, beta, 1)?.at(p),
        rashba(gamma, beta, -1)?.at(p),
    ))
}

/// W = diag(1, −1)
pub fn witten_parity() -> Block4 {
    Block4::diag(Mat2::identity(), -Mat2::identity())
}

/// diag(U, U) with U = e₁₃; 𝔗 = diag(T, T) is this matrix times conjugation
/// and momentum reversal.
pub fn super_time_reversal_unitary() -> Block4 {
    Block4::diag(e13_matrix(), e13_matrix())
}

/// 𝔗⁻¹·X·𝔗 at momentum p for a momentum-dependent block operator.
pub fn super_time_reverse(x: impl Fn([f64; 2]) -> Block4, p: [f64; 2]) -> Block4 {
    let d = super_time_reversal_unitary();
    let d_inv = d * -1.0;
    d_inv * x([-p[0], -p[1]]).conj() * d
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoSusy {
    /// Δ^B = ℘^B at p.
    pub delta_b: Mat2,
    /// (Δ^B)^# = T⁻¹(℘^B)†T at p.
    pub delta_b_sharp: Mat2,
    pub lambda_plus: Block4,
    pub lambda_minus: Block4,
    pub h_psusy: Block4,
}

/// T⁻¹(℘^B)†T at fixed momentum: U⁻¹·℘^B(−p)ᵀ·U.
pub fn sharp_of_left_momentum(gamma: f64, beta: f64, p: [f64; 2]) -> Result<Mat2> {
    let h = rashba(gamma, beta, 1)?;
    let (pb_minus, _) = momenta_at(&h, [-p[0], -p[1]]);
    let u = e13_matrix();
    Ok(-u * pb_minus.transpose() * u)
}

pub fn pseudo_susy(gamma: f64, beta: f64, p: [f64; 2]) -> Result<PseudoSusy> {
    let (pb, _) = momenta_at(&rashba(gamma, beta, 1)?, p);
    let sharp = sharp_of_left_momentum(gamma, beta, p)?;
    let zero = Mat2::zero();
    let lambda_plus = Block4::new(zero, pb, zero, zero) * FRAC_1_SQRT_2;
    let lambda_minus = Block4::new(zero, zero, sharp, zero) * FRAC_1_SQRT_2;
    Ok(PseudoSusy {
        delta_b: pb,
        delta_b_sharp: sharp,
        lambda_plus,
        lambda_minus,
        h_psusy: lambda_plus.anticommutator(&lambda_minus),
    })
}

/// Named residuals of every SUSY / pseudo-SUSY relation at one point.
pub fn susy_residuals(gamma: f64, beta: f64, p: [f64; 2]) -> Result<Vec<(&'static str, f64)>> {
    let (tp, tm) = supercharges(gamma, beta, p)?;
    let h = susy_hamiltonian(gamma, beta, p)?;
    let w = witten_parity();
    let ps = pseudo_susy(gamma, beta, p)?;
    let r_plus = rashba(gamma, beta, 1)?.at(p);
    let r_minus = rashba(gamma, beta, -1)?.at(p);
    let lambda_plus_at = |q: [f64; 2]| {
        pseudo_susy(gamma, beta, q)
            .expect("gamma validated above")
            .lambda_plus
            .adjoint()
    };
    let reversed_adjoint = super_time_reverse(lambda_plus_at, p);
    let d = super_time_reversal_unitary();
    Ok(vec![
        ("theta_plus_nilpotent", (tp * tp).max_abs()),
        ("theta_minus_nilpotent", (tm * tm).max_abs()),
        ("anticommutator_is_sector_diag", h.max_abs_diff(&sector_hamiltonian(gamma, beta, p)?)),
        ("h_commutes_theta_plus", h.commutator(&tp).max_abs()),
        ("h_commutes_theta_minus", h.commutator(&tm).max_abs()),
        ("witten_squared", (w * w).max_abs_diff(&Block4::identity())),
        ("witten_commutes_h", w.commutator(&h).max_abs()),
        ("witten_anticommutes_theta_plus", w.anticommutator(&tp).max_abs()),
        ("witten_anticommutes_theta_minus", w.anticommutator(&tm).max_abs()),
        ("witten_anticommutes_theta_plus_adj", w.anticommutator(&tp.adjoint()).max_abs()),
        ("witten_anticommutes_theta_minus_adj", w.anticommutator(&tm.adjoint()).max_abs()),
        ("lambda_plus_nilpotent", (ps.lambda_plus * ps.lambda_plus).max_abs()),
        ("lambda_minus_nilpotent", (ps.lambda_minus * ps.lambda_minus).max_abs()),
        ("psusy_equals_susy", ps.h_psusy.max_abs_diff(&h)),
        ("intertwining_delta", (r_plus * ps.delta_b).max_abs_diff(&(ps.delta_b * r_minus))),
        (
            "intertwining_delta_sharp",
            (r_minus * ps.delta_b_sharp).max_abs_diff(&(ps.delta_b_sharp * r_plus)),
        ),
        ("super_reversal_pseudo_adjoint", reversed_adjoint.max_abs_diff(&ps.lambda_minus)),
        ("super_reversal_squared", (d * d.conj()).max_abs_diff(&(Block4::identity() * -1.0))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use crate::spectrum::{eigensystem, right_eigenvector};
    use proptest::prelude::*;

    #[test]
    fn undeformed_limit_is_hermitian_susy() {
        let p = [0.7, -1.4];
        let h = susy_hamiltonian(0.0, 1.3, p).unwrap();
        assert!(h.max_abs_diff(&h.adjoint()) < 1e-12);
        let (tp, tm) = supercharges(0.0, 1.3, p).unwrap();
        assert!(tp.adjoint().max_abs_diff(&tm) < 1e-12);
        let ps = pseudo_susy(0.0, 1.3, p).unwrap();
        assert!(ps.delta_b_sharp.max_abs_diff(&ps.delta_b.adjoint()) < 1e-12);
    }

    #[test]
    fn sharp_equals_right_momentum() {
        let h = rashba(0.45, 0.9, 1).unwrap();
        let p = [1.2, 0.3];
        let (_, pa) = momenta_at(&h, p);
        assert!(sharp_of_left_momentum(0.45, 0.9, p).unwrap().max_abs_diff(&pa) < 1e-12);
    }

    #[test]
    fn sector_pairing() {
        // R⁻ψ = Eψ ⇒ R⁺(℘^Bψ) = E(℘^Bψ)
        let (g, beta, p) = (0.6, 1.4, [0.8, -0.5]);
        let h = rashba(g, beta, 1).unwrap();
        let (pb, _) = momenta_at(&h, p);
        let es = eigensystem(g, -beta, p, 1).unwrap();
        let rm = rashba(g, beta, -1).unwrap().at(p);
        for e in [es.lambda_plus, es.lambda_minus] {
            let psi = right_eigenvector(&rm, c(e, 0.0));
            let mapped = pb.apply(&psi);
            let lhs = h.at(p).apply(&mapped);
            assert!(crate::matrix::norm(&mapped) > 1e-6);
            assert!(crate::matrix::vec_max_abs_diff(&lhs, &crate::matrix::scale(c(e, 0.0), &mapped)) < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn all_relations_hold(
            g in -0.999..0.999f64,
            beta in 0.1..5.0f64,
            p in prop::array::uniform2(-7.0..7.0f64),
        ) {
            let scale = (1.0 + beta * beta + p[0] * p[0] + p[1] * p[1]) / (1.0 - g * g);
            for (name, r) in susy_residuals(g, beta, p).unwrap() {
                prop_assert!(r < 1e-12 * scale, "{} = {}", name, r);
            }
        }
    }
}
