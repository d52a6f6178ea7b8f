//! Cross-checks against a general-purpose linear algebra library.

use nalgebra::{Complex, Matrix2, Matrix4};
use proptest::prelude::*;

use cl3_rashba::momenta::rashba;
use cl3_rashba::spectrum::{eigensystem, eigenvalues};
use cl3_rashba::susy::{supercharges, susy_hamiltonian};

type C = Complex<f64>;

fn dense4(d: [[C; 4]; 4]) -> Matrix4<C> {
    Matrix4::from_fn(|i, j| d[i][j])
}

fn sorted_re(mut v: Vec<C>) -> Vec<C> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re));
    v
}

fn schur_eigs4(m: Matrix4<C>) -> Vec<C> {
    sorted_re(m.schur().eigenvalues().expect("complex Schur form").iter().copied().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rashba_eigenvalues_match_schur(
        g in -0.99f64..0.99, beta in 0.1f64..4.0, r in 0.1f64..6.0, a in 0.0f64..std::f64::consts::TAU
    ) {
        let p = [r * a.cos(), r * a.sin()];
        let h = rashba(g, beta, 1).unwrap().at(p);
        let m = Matrix2::from_fn(|i, j| h.get(i, j));
        let e = sorted_re(m.schur().eigenvalues().unwrap().iter().copied().collect());
        let (lp, lm) = eigenvalues(beta, p);
        let tol = 1e-9 * (1.0 + lp.abs()) / (1.0 - g * g);
        prop_assert!((e[0] - lm).norm() < tol, "{:?} vs {}", e[0], lm);
        prop_assert!((e[1] - lp).norm() < tol, "{:?} vs {}", e[1], lp);
    }

    #[test]
    fn susy_hamiltonian_spectrum_is_doubled(
        g in -0.95f64..0.95, beta in 0.1f64..3.0, r in 0.1f64..4.0, a in 0.0f64..std::f64::consts::TAU
    ) {
        let p = [r * a.cos(), r * a.sin()];
        let e = schur_eigs4(dense4(susy_hamiltonian(g, beta, p).unwrap().to_dense()));
        let (lp, lm) = eigenvalues(beta, p);
        let tol = 1e-8 * (1.0 + lp.abs()) / (1.0 - g * g);
        for (got, want) in e.iter().zip([lm, lm, lp, lp]) {
            prop_assert!((got - want).norm() < tol, "{got:?} vs {want}");
        }
    }

    #[test]
    fn supercharges_square_to_zero_densely(
        g in -0.95f64..0.95, beta in 0.1f64..3.0, p1 in -3.0f64..3.0, p2 in -3.0f64..3.0
    ) {
        let (tp, tm) = supercharges(g, beta, [p1, p2]).unwrap();
        let (tp, tm) = (dense4(tp.to_dense()), dense4(tm.to_dense()));
        prop_assert!((tp * tp).camax() < 1e-12);
        prop_assert!((tm * tm).camax() < 1e-12);
        let h = dense4(susy_hamiltonian(g, beta, [p1, p2]).unwrap().to_dense());
        prop_assert!((tp * tm + tm * tp - h).camax() < 1e-10);
    }
}

#[test]
fn eigenvectors_agree_with_dense_solve() {
    let (g, beta, p) = (0.7, 1.3, [0.4, -1.1]);
    let es = eigensystem(g, beta, p, 1).unwrap();
    let h = rashba(g, beta, 1).unwrap().at(p);
    let m = Matrix2::from_fn(|i, j| h.get(i, j));
    for (lambda, psi) in [(es.lambda_plus, &es.psi_plus), (es.lambda_minus, &es.psi_minus)] {
        let v = nalgebra::Vector2::new(psi.amplitudes[0], psi.amplitudes[1]);
        let r = m * v - v * C::new(lambda, 0.0);
        assert!(r.camax() < 1e-12);
    }
}
