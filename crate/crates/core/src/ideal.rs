//! Spinors as elements of the minimal left ideal S = M(2,ℂ)g₀, the basis
//! flip ♭, and the Clifford inner products C₁, C₂.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{e13_matrix, DeformedBasis, Involution};
use crate::matrix::{c, Mat2, I, ONE, ZERO};
use crate::spectrum::FiniteSpinor;

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("ideal.basis_reproduction", "g0..g3 combinations equal their constant forms"),
    ("ideal.left_ideal_closure", "u Psi keeps a zero second column"),
    ("ideal.round_trip", "FiniteSpinor <-> IdealSpinor round trip and zeta decomposition"),
    ("ideal.flip_anti_involution", "(U flat) flat = -U"),
    ("ideal.flip_matches_time_reversal", "Psi flat is the time-reversed spinor"),
    ("ideal.c1_conventional", "C1 equals the conventional inner product"),
    ("ideal.c1_c2_biorthogonality", "C1 and C2 vanish on the bi-orthogonal eigenpairs"),
    ("ideal.c2_flip_antiunitarity", "C1(Phi flat, Psi flat) = C1(Psi, Phi) and C2(A, B) = C1(A flat, B flat)"),
    ("ideal.invariance_groups", "G and G' coincide with U(2) and preserve C1, C2"),
];

/// A matrix in M(2,ℂ)g₀, i.e. with zero second column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdealSpinor {
    pub matrix: Mat2,
    pub momentum: [f64; 2],
    pub wave_sign: i8,
}

impl IdealSpinor {
    pub fn same_label(&self, other: &IdealSpinor) -> bool {
        self.momentum == other.momentum && self.wave_sign == other.wave_sign
    }

    /// |second column|, zero for a genuine ideal element.
    pub fn ideal_defect(&self) -> f64 {
        self.matrix.get(0, 1).norm().max(self.matrix.get(1, 1).norm())
    }

    /// u·Ψ
    pub fn left_mul(&self, u: &Mat2) -> IdealSpinor {
        IdealSpinor {
            matrix: *u * self.matrix,
            ..*self
        }
    }

    /// Ψ♭, the time-reversed spinor.
    pub fn flip(&self) -> IdealSpinor {
        IdealSpinor {
            matrix: basis_flip(&self.matrix),
            momentum: self.momentum,
            wave_sign: -self.wave_sign,
        }
    }

    /// ζ₀..ζ₃ with ψ₁ = ζ₀ + iζ₃, ψ₂ = −ζ₂ + iζ₁, at the point x.
    pub fn zeta_at(&self, x: [f64; 2]) -> [f64; 4] {
        let s = self.wave_sign as f64;
        let phase = Complex64::from_polar(1.0, s * (self.momentum[0] * x[0] + self.momentum[1] * x[1]));
        let a = self.matrix.get(0, 0) * phase;
        let b = self.matrix.get(1, 0) * phase;
        [a.re, b.im, -b.re, a.im]
    }

    pub fn zeta(&self) -> [f64; 4] {
        self.zeta_at([0.0, 0.0])
    }
}

/// g₀..g₃
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdealBasis {
    pub g: [Mat2; 4],
}

/// g₀ = ½1 + (ω/4)(e₃ − ĕ₃), g₁ = ½e₂ + (ω/4)(e₂₃ + ĕ₂₃),
/// g₂ = ½e₃₁ − (ω/4)(e₁ − ĕ₁), g₃ = ½e₁₂₃ + (ω/4)(e₁₂ + ĕ₁₂).
pub fn build_ideal_basis(basis: &DeformedBasis) -> IdealBasis {
    let w = 0.25 * basis.omega;
    let e = |k: usize| basis.generator(k);
    let r = |k: usize| basis.reversed_generator(k);
    IdealBasis {
        g: [
            e(0) * 0.5 + (e(3) - r(3)) * w,
            e(2) * 0.5 + (e(5) + r(5)) * w,
            e(6) * 0.5 - (e(1) - r(1)) * w,
            e(7) * 0.5 + (e(4) + r(4)) * w,
        ],
    }
}

/// The γ-independent constant forms of g₀..g₃.
pub fn constant_ideal_basis() -> IdealBasis {
    IdealBasis {
        g: [
            Mat2::new(ONE, ZERO, ZERO, ZERO),
            Mat2::new(ZERO, ZERO, I, ZERO),
            Mat2::new(ZERO, ZERO, -ONE, ZERO),
            Mat2::new(I, ZERO, ZERO, ZERO),
        ],
    }
}

impl IdealBasis {
    pub fn max_abs_diff(&self, other: &IdealBasis) -> f64 {
        self.g
            .iter()
            .zip(other.g.iter())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Σⱼ ζⱼgⱼ
    pub fn combine(&self, zeta: [f64; 4]) -> Mat2 {
        self.g.iter().zip(zeta).map(|(g, z)| *g * z).sum()
    }
}

pub fn to_ideal(psi: &FiniteSpinor) -> IdealSpinor {
    IdealSpinor {
        matrix: Mat2::from_column(&psi.amplitudes),
        momentum: psi.momentum,
        wave_sign: psi.wave_sign,
    }
}

pub fn from_ideal(s: &IdealSpinor) -> FiniteSpinor {
    FiniteSpinor::new(s.matrix.column(0), s.momentum, s.wave_sign)
}

/// U♭ = e₁₃·U* = [[−u₂₁*, −u₂₂*], [u₁₁*, u₁₂*]]
pub fn basis_flip(u: &Mat2) -> Mat2 {
    e13_matrix() * u.conj()
}

/// C₁ = tr(Ã·B) with the momentum delta realized as label equality.
pub fn inner_c1(a: &IdealSpinor, b: &IdealSpinor) -> Complex64 {
    if !a.same_label(b) {
        return ZERO;
    }
    (Involution::Reversion.apply_matrix(&a.matrix) * b.matrix).trace()
}

/// C₂ = tr(e₃₁·Ā·B♭) with the same label delta on the original spinors.
pub fn inner_c2(a: &IdealSpinor, b: &IdealSpinor) -> Complex64 {
    if !a.same_label(b) {
        return ZERO;
    }
    let e31 = -e13_matrix();
    (e31 * Involution::CliffordConjugation.apply_matrix(&a.matrix) * basis_flip(&b.matrix)).trace()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceMembership {
    /// ũu = 1
    pub in_g: bool,
    /// u†u = 1
    pub unitary: bool,
    /// ūu♭ = e₁₃, the condition the flip forces on unitaries.
    pub in_g_prime: bool,
    /// ūu♭ = 1 taken literally; fails already for u = 1.
    pub in_g_prime_literal: bool,
}

pub fn invariance_group_check(u: &Mat2) -> InvarianceMembership {
    let tol = 1e-12 * (1.0 + u.max_abs() * u.max_abs());
    let id = Mat2::identity();
    let rev = Involution::Reversion.apply_matrix(u) * *u;
    let bar_flat = Involution::CliffordConjugation.apply_matrix(u) * basis_flip(u);
    InvarianceMembership {
        in_g: rev.max_abs_diff(&id) <= tol,
        unitary: (u.adjoint() * *u).max_abs_diff(&id) <= tol,
        in_g_prime: bar_flat.max_abs_diff(&e13_matrix()) <= tol,
        in_g_prime_literal: bar_flat.max_abs_diff(&id) <= tol,
    }
}

/// exp(iα σ₂), a one-parameter family inside G.
pub fn sigma2_rotation(alpha: f64) -> Mat2 {
    let (s, co) = alpha.sin_cos();
    Mat2::identity() * co + Mat2::pauli(2) * c(0.0, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::make_deformed_basis;
    use crate::matrix::inner;
    use crate::spectrum::eigensystem;
    use crate::timereversal::TimeReversal;
    use proptest::prelude::*;

    fn cplx() -> impl Strategy<Value = Complex64> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
    }

    fn mat() -> impl Strategy<Value = Mat2> {
        prop::array::uniform4(cplx()).prop_map(|m| Mat2::new(m[0], m[1], m[2], m[3]))
    }

    fn spinor() -> impl Strategy<Value = FiniteSpinor> {
        (cplx(), cplx()).prop_map(|(a, b)| FiniteSpinor::new([a, b], [0.4, -1.1], 1))
    }

    #[test]
    fn ideal_basis_is_constant() {
        let expected = constant_ideal_basis();
        for g in [0.0, 0.5, -0.93] {
            let b = build_ideal_basis(&make_deformed_basis(g).unwrap());
            assert!(b.max_abs_diff(&expected) < 1e-12, "gamma {g}");
        }
        let g0 = expected.g[0];
        assert_eq!(g0 * g0, g0);
    }

    #[test]
    fn conversion_examples() {
        let s = to_ideal(&FiniteSpinor::new([ONE, ZERO], [1.0, 0.0], 1));
        assert_eq!(s.matrix, constant_ideal_basis().g[0]);
        let s = to_ideal(&FiniteSpinor::new([I, -ONE], [1.0, 0.0], 1));
        assert_eq!(s.matrix, Mat2::new(I, ZERO, -ONE, ZERO));
        assert_eq!(constant_ideal_basis().combine(s.zeta()), s.matrix);
    }

    #[test]
    fn flip_examples() {
        assert_eq!(basis_flip(&Mat2::identity()), e13_matrix());
    }

    #[test]
    fn c1_and_c2_on_eigenpairs() {
        let es = eigensystem(0.7, 2.0, [1.3, -0.6], 1).unwrap();
        let (pp, dm) = (to_ideal(&es.psi_plus), to_ideal(&es.dual_minus));
        let (pm, dp) = (to_ideal(&es.psi_minus), to_ideal(&es.dual_plus));
        assert!(inner_c1(&pp, &dm).norm() < 1e-12 && inner_c1(&pm, &dp).norm() < 1e-12);
        assert!(inner_c2(&pp, &dm).norm() < 1e-12 && inner_c2(&pm, &dp).norm() < 1e-12);
        assert!((inner_c1(&pp, &pp) - 1.0).norm() < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let r = invariance_group_check(&sigma2_rotation(0.8));
        assert!(r.in_g && r.unitary && r.in_g_prime && !r.in_g_prime_literal);
        let d = invariance_group_check(&Mat2::diag(c(2.0, 0.0), ONE));
        assert!(!d.in_g && !d.unitary && !d.in_g_prime);
        assert!(!invariance_group_check(&Mat2::identity()).in_g_prime_literal);
    }

    proptest! {
        #[test]
        fn left_ideal_closure(u in mat(), a in spinor()) {
            prop_assert!(to_ideal(&a).left_mul(&u).ideal_defect() == 0.0);
        }

        #[test]
        fn round_trip_and_zeta(a in spinor()) {
            let s = to_ideal(&a);
            prop_assert_eq!(from_ideal(&s), a);
            prop_assert!(constant_ideal_basis().combine(s.zeta()).max_abs_diff(&s.matrix) < 1e-15);
        }

        #[test]
        fn flip_is_anti_involution_matching_t(u in mat(), a in spinor()) {
            prop_assert!(basis_flip(&basis_flip(&u)).max_abs_diff(&(-u)) == 0.0);
            let via_t = TimeReversal::new().apply(&a);
            prop_assert_eq!(from_ideal(&to_ideal(&a).flip()), via_t);
        }

        #[test]
        fn inner_product_identities(a in spinor(), b in spinor()) {
            let (ia, ib) = (to_ideal(&a), to_ideal(&b));
            let c1 = inner_c1(&ia, &ib);
            prop_assert!((c1 - inner(&a.amplitudes, &b.amplitudes)).norm() < 1e-12);
            prop_assert!((inner_c1(&ib.flip(), &ia.flip()) - c1).norm() < 1e-12);
            let c2 = inner_c2(&ia, &ib);
            prop_assert!((c2 - c1.conj()).norm() < 1e-12);
            prop_assert!((c2 - inner_c1(&ia.flip(), &ib.flip())).norm() < 1e-12);
            let e31 = -e13_matrix();
            let corner = e31 * Involution::CliffordConjugation.apply_matrix(&ia.matrix) * basis_flip(&ib.matrix);
            prop_assert!((corner.get(0, 0) - c2).norm() < 1e-12);
            prop_assert!(corner.get(0, 1).norm() + corner.get(1, 0).norm() + corner.get(1, 1).norm() < 1e-12);
        }

        #[test]
        fn unitary_group_preserves_both_products(
            x in prop::array::uniform4(-3.2..3.2f64),
            a in spinor(),
            b in spinor(),
        ) {
            let u = Mat2::unitary(x[0], x[1], x[2], x[3]);
            let m = invariance_group_check(&u);
            prop_assert!(m.in_g && m.unitary && m.in_g_prime && !m.in_g_prime_literal);
            let (ia, ib) = (to_ideal(&a), to_ideal(&b));
            let (ua, ub) = (ia.left_mul(&u), ib.left_mul(&u));
            prop_assert!((inner_c1(&ua, &ub) - inner_c1(&ia, &ib)).norm() < 1e-11);
            prop_assert!((inner_c2(&ua, &ub) - inner_c2(&ia, &ib)).norm() < 1e-11);
        }

        #[test]
        fn ideal_basis_gamma_independent(g in -0.999..0.999f64) {
            let b = build_ideal_basis(&make_deformed_basis(g).unwrap());
            prop_assert!(b.max_abs_diff(&constant_ideal_basis()) < 1e-12 / (1.0 - g * g).sqrt());
        }
    }
}
