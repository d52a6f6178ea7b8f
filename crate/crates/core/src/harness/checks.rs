//! One check per declared invariant. Every residual is divided by a natural
//! scale of its sample point, (1 + β² + |p|²)/(1 − γ²) for Hamiltonian-level
//! identities, so a single tolerance applies across the sweep.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::SuiteConfig;
use crate::biortho::{build_pair, standard_pair, synthesize_generators};
use crate::clifford::{
    make_deformed_basis, closed_form_sigma, Involution, Multivector,
};
use crate::error::Result;
use crate::ideal::{
    basis_flip, build_ideal_basis, from_ideal, inner_c1, inner_c2, invariance_group_check,
    constant_ideal_basis, to_ideal,
};
use crate::matrix::{c, inner, norm, vec_max_abs_diff, Mat2, Vec2, ZERO};
use crate::momenta::{build_linearization, build_linearization_with, magnetic, rashba, CliffordMomentum};
use crate::spectrum::{
    biortho_inner, continuity_residual, eigensystem, flip_relations, projectors, right_eigenvector,
    spin_vector, Branch, DensityKind, FiniteSpinor, PlaneWaveMixture,
};
use crate::susy::susy_residuals;
use crate::timereversal::{
    commutation_residual, generator_reversal, kramers_analogue, pseudo_hermitian_residual,
    pseudo_hermitian_residual_pair, reversed_schrodinger_check, TimeReversal,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplePoint {
    pub gamma: f64,
    pub beta: f64,
    pub p: [f64; 2],
}

impl SamplePoint {
    pub fn scale(&self) -> f64 {
        (1.0 + self.beta * self.beta + self.p[0] * self.p[0] + self.p[1] * self.p[1])
            / (1.0 - self.gamma * self.gamma)
    }
}

pub struct Context<'a> {
    pub config: &'a SuiteConfig,
    pub points: Vec<SamplePoint>,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

impl<'a> Context<'a> {
    pub fn new(config: &'a SuiteConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let (glo, ghi) = config.gamma_range();
        let (blo, bhi) = config.beta_range();
        let uniform = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| {
            if lo == hi {
                lo
            } else {
                rng.gen_range(lo..=hi)
            }
        };
        let mut points = Vec::with_capacity(config.samples);
        while points.len() < config.samples {
            let gamma = uniform(&mut rng, glo, ghi);
            let beta = uniform(&mut rng, blo, bhi);
            let p = config.momentum_grid.sample(&mut rng);
            if p[0].hypot(p[1]) < 1e-6 || beta == 0.0 {
                continue;
            }
            points.push(SamplePoint { gamma, beta, p });
        }
        Context { config, points }
    }

    /// An independent stream per check, so results do not depend on order.
    pub fn rng(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ fnv1a(id))
    }

    /// The configured γ values followed by the sampled ones.
    pub fn gammas(&self) -> Vec<f64> {
        let mut g = self.config.gamma_values.clone();
        g.extend(self.points.iter().map(|p| p.gamma));
        g
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub max_residual: f64,
    pub samples: usize,
    /// Replaces the suite tolerance for discretization-limited checks.
    pub threshold: Option<f64>,
    /// Extra pass condition beyond the residual bound.
    pub condition: Option<bool>,
    pub detail: String,
}

impl Outcome {
    fn residual(max_residual: f64, samples: usize) -> Self {
        Outcome {
            max_residual,
            samples,
            threshold: None,
            condition: None,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        let bound = self.threshold.unwrap_or(tolerance);
        self.max_residual.is_finite() && self.max_residual <= bound && self.condition.unwrap_or(true)
    }
}

pub type Check = fn(&Context) -> Result<Outcome>;

fn over_points(ctx: &Context, mut f: impl FnMut(&SamplePoint) -> Result<f64>) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for pt in &ctx.points {
        worst = worst.max(f(pt)?);
    }
    Ok(Outcome::residual(worst, ctx.points.len()))
}

fn over_gammas(ctx: &Context, f: impl Fn(f64) -> Result<f64>) -> Result<Outcome> {
    let gs = ctx.gammas();
    let mut worst = 0.0_f64;
    for &g in &gs {
        worst = worst.max(f(g)? * (1.0 - g * g));
    }
    Ok(Outcome::residual(worst, gs.len()))
}

fn random_mv(rng: &mut ChaCha8Rng) -> Multivector {
    Multivector(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)))
}

fn random_c(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn random_mat(rng: &mut ChaCha8Rng) -> Mat2 {
    Mat2::new(random_c(rng), random_c(rng), random_c(rng), random_c(rng))
}

fn random_unitary(rng: &mut ChaCha8Rng) -> Mat2 {
    let mut x = || rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    Mat2::unitary(x(), x(), x(), x())
}

fn random_spinor(rng: &mut ChaCha8Rng, p: [f64; 2]) -> FiniteSpinor {
    FiniteSpinor::new([random_c(rng), random_c(rng)], p, 1)
}

fn samples(ctx: &Context) -> usize {
    ctx.config.samples
}

// ---- clifford ----

fn grade_reassembly(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("clifford.grade_reassembly");
    let worst = (0..samples(ctx))
        .map(|_| {
            let a = random_mv(&mut rng);
            let sum = (0..4).fold(Multivector::zero(), |acc, k| acc + a.grade(k));
            sum.max_abs_diff(&a)
        })
        .fold(0.0, f64::max);
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn matrix_round_trip(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("clifford.matrix_round_trip");
    let worst = (0..samples(ctx))
        .map(|_| {
            let a = random_mv(&mut rng);
            Multivector::from_matrix(&a.to_matrix()).max_abs_diff(&a)
        })
        .fold(0.0, f64::max);
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn homomorphism(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("clifford.homomorphism");
    let worst = (0..samples(ctx))
        .map(|_| {
            let (a, b) = (random_mv(&mut rng), random_mv(&mut rng));
            let lhs = (a * b).to_matrix();
            lhs.max_abs_diff(&(a.to_matrix() * b.to_matrix())) / (1.0 + lhs.max_abs())
        })
        .fold(0.0, f64::max);
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn involution_laws(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("clifford.involution_laws");
    let mut worst = 0.0_f64;
    for _ in 0..samples(ctx) {
        let (a, b) = (random_mv(&mut rng), random_mv(&mut rng));
        for kind in Involution::ALL {
            worst = worst.max(a.involute(kind).involute(kind).max_abs_diff(&a));
            let ab = (a * b).involute(kind);
            let expect = if kind.is_anti() {
                b.involute(kind) * a.involute(kind)
            } else {
                a.involute(kind) * b.involute(kind)
            };
            worst = worst.max(ab.max_abs_diff(&expect) / (1.0 + ab.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))));
            let m = kind.apply_matrix(&a.to_matrix());
            worst = worst.max(m.max_abs_diff(&a.involute(kind).to_matrix()));
        }
    }
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn deformed_closed_form(ctx: &Context) -> Result<Outcome> {
    over_gammas(ctx, |g| {
        let b = make_deformed_basis(g)?;
        let mut worst = 0.0_f64;
        for m in 1..=3 {
            worst = worst.max(b.vector(m).max_abs_diff(&closed_form_sigma(g, m)?));
        }
        Ok(worst)
    })
}

fn deformed_relations(ctx: &Context) -> Result<Outcome> {
    over_gammas(ctx, |g| {
        let b = make_deformed_basis(g)?;
        let mut worst = 0.0_f64;
        for i in 1..=3 {
            for j in 1..=3 {
                let want = Mat2::identity() * if i == j { 2.0 } else { 0.0 };
                worst = worst.max(b.vector(i).anticommutator(&b.vector(j)).max_abs_diff(&want));
            }
        }
        Ok(worst)
    })
}

fn even_closure(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("clifford.even_subalgebra_closure");
    let mut worst = 0.0_f64;
    for &g in &ctx.gammas() {
        let b = make_deformed_basis(g)?;
        let mut even = || {
            let a = random_mv(&mut rng);
            a.grade(0) + a.grade(2)
        };
        let (x, y) = (even(), even());
        let prod = x * y;
        let odd = (prod.grade(1) + prod.grade(3)).0.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let m = b.represent(&x) * b.represent(&y);
        let rep = m.max_abs_diff(&b.represent(&prod)) * (1.0 - g * g) / (1.0 + m.max_abs());
        worst = worst.max(odd).max(rep);
    }
    Ok(Outcome::residual(worst, ctx.gammas().len()))
}

// ---- biortho ----

fn gram_identity(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("biortho.gram_identity");
    let mut worst = 0.0_f64;
    let mut n = 0;
    while n < samples(ctx) {
        let t = random_mat(&mut rng);
        if t.det().norm() < 0.05 {
            continue;
        }
        let u = random_unitary(&mut rng);
        let pair = build_pair(u.column(0), u.column(1), t)?;
        let cond = t.max_abs() * t.inverse().map(|m| m.max_abs()).unwrap_or(f64::INFINITY);
        worst = worst.max(pair.gram().max_abs_diff(&pair.source_gram()) / cond);
        n += 1;
    }
    Ok(Outcome::residual(worst, n))
}

fn gram_identity_hermitian(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("biortho.gram_identity_hermitian");
    let mut worst = 0.0_f64;
    for _ in 0..samples(ctx) {
        let b = random_c(&mut rng) * 0.2;
        let t = Mat2::new(
            c(rng.gen_range(2.0..5.0), 0.0),
            b,
            b.conj(),
            c(rng.gen_range(2.0..5.0), 0.0),
        );
        let u = random_unitary(&mut rng);
        let pair = build_pair(u.column(0), u.column(1), t)?;
        worst = worst.max(pair.gram().max_abs_diff(&Mat2::identity()));
    }
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn synthesis_closed_form(ctx: &Context) -> Result<Outcome> {
    over_gammas(ctx, |g| {
        let s = synthesize_generators(&standard_pair(g)?)?;
        let mut worst = 0.0_f64;
        for m in 1..=3 {
            worst = worst.max(s[m - 1].max_abs_diff(&closed_form_sigma(g, m)?));
        }
        Ok(worst)
    })
}

fn synthesis_relations(ctx: &Context) -> Result<Outcome> {
    over_gammas(ctx, |g| {
        let s = synthesize_generators(&standard_pair(g)?)?;
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let want = Mat2::identity() * if i == j { 2.0 } else { 0.0 };
                worst = worst.max(s[i].anticommutator(&s[j]).max_abs_diff(&want));
            }
        }
        Ok(worst)
    })
}

// ---- momenta ----

fn linearization(ctx: &Context) -> Result<Outcome> {
    let mut worst = build_linearization().max_residual();
    for &g in &ctx.config.gamma_values {
        worst = worst.max(build_linearization_with(&make_deformed_basis(g)?).max_residual() * (1.0 - g * g));
    }
    Ok(Outcome::residual(worst, 1 + ctx.config.gamma_values.len()))
}

fn factorization(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let a = CliffordMomentum::new(pt.gamma, [ZERO, ZERO, c(0.0, -pt.beta)])?;
        let b = CliffordMomentum::new(pt.gamma, [ZERO, ZERO, c(0.0, pt.beta)])?;
        let q = [pt.p[0], pt.p[1], 0.0];
        let direct = b.evaluate(q) * a.evaluate(q) * 0.5;
        Ok(rashba(pt.gamma, pt.beta, 1)?.at(pt.p).max_abs_diff(&direct) / pt.scale())
    })
}

fn rashba_adjoint(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let h = rashba(pt.gamma, pt.beta, 1)?.at(pt.p);
        let hm = rashba(-pt.gamma, pt.beta, 1)?.at(pt.p);
        Ok(h.adjoint().max_abs_diff(&hm) / pt.scale())
    })
}

fn sorted_eigs(m: &Mat2) -> [Complex64; 2] {
    let mut e = m.eigenvalues();
    e.sort_by(|a, b| a.re.total_cmp(&b.re));
    e
}

fn isospectrality(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let e0 = sorted_eigs(&rashba(0.0, pt.beta, 1)?.at(pt.p));
        let mut worst = 0.0_f64;
        for g in [pt.gamma, -pt.gamma] {
            let e = sorted_eigs(&rashba(g, pt.beta, 1)?.at(pt.p));
            worst = worst.max((e[0] - e0[0]).norm()).max((e[1] - e0[1]).norm());
        }
        Ok(worst / pt.scale())
    })
}

fn undeformed_hermitian(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let h = rashba(0.0, pt.beta, 1)?.at(pt.p);
        Ok(h.max_abs_diff(&h.adjoint()) / pt.scale())
    })
}

fn magnetic_product(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("momenta.magnetic_product_form");
    over_points(ctx, |pt| {
        let av = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let b3 = rng.gen_range(-2.0..2.0);
        let mut worst = 0.0_f64;
        for branch in [1i8, -1] {
            let s = branch as f64;
            let h = magnetic(pt.gamma, pt.beta, av, b3, branch)?;
            let shift = |sg: f64| [c(av[0], 0.0), c(av[1], 0.0), c(0.0, sg * pt.beta)];
            let plus = CliffordMomentum::new(pt.gamma, shift(s))?;
            let minus = CliffordMomentum::new(pt.gamma, shift(-s))?;
            let q = [pt.p[0], pt.p[1], 0.0];
            let direct = plus.evaluate(q) * minus.evaluate(q) * 0.5 + h.basis.vector(3) * b3;
            worst = worst.max(h.at(pt.p).max_abs_diff(&direct) / (pt.scale() + 8.0));
        }
        Ok(worst)
    })
}

fn coupled_system(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let h = rashba(pt.gamma, pt.beta, 1)?;
        let q = [pt.p[0], pt.p[1], 0.0];
        let mut worst = 0.0_f64;
        for b in Branch::BOTH {
            worst = worst.max(h.coupled_system_residual(q, &es.psi(b).amplitudes, es.lambda(b)));
        }
        Ok(worst / pt.scale())
    })
}

// ---- spectrum ----

fn eigen_identity(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let mut worst = 0.0_f64;
        for s in [1, -1] {
            worst = worst.max(eigensystem(pt.gamma, pt.beta, pt.p, s)?.eigen_residual());
        }
        Ok(worst / pt.scale())
    })
}

fn eigenvalue_oracle(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let e = sorted_eigs(&rashba(pt.gamma, pt.beta, 1)?.at(pt.p));
        Ok(((e[1] - es.lambda_plus).norm()).max((e[0] - es.lambda_minus).norm()) / pt.scale())
    })
}

fn biorthogonality(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let mut worst = 0.0_f64;
        for s in [1, -1] {
            let es = eigensystem(pt.gamma, pt.beta, pt.p, s)?;
            worst = worst
                .max(biortho_inner(&es.dual_minus, &es.psi_plus).norm())
                .max(biortho_inner(&es.dual_plus, &es.psi_minus).norm());
        }
        Ok(worst)
    })
}

fn generic_biorthogonality(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("spectrum.generic_isospectral_biorthogonality");
    let mut worst = 0.0_f64;
    let mut n = 0;
    while n < samples(ctx) {
        let s = random_mat(&mut rng);
        let Some(s_inv) = s.inverse() else { continue };
        if s.det().norm() < 0.1 {
            continue;
        }
        let e = rng.gen_range(-3.0..3.0);
        let delta = rng.gen_range(0.1..3.0);
        let h = s * Mat2::diag(c(e + delta, 0.0), c(e - delta, 0.0)) * s_inv;
        let (lp, lm) = (c(e + delta, 0.0), c(e - delta, 0.0));
        let xi = [right_eigenvector(&h, lp), right_eigenvector(&h, lm)];
        let zeta = [right_eigenvector(&h.adjoint(), lp), right_eigenvector(&h.adjoint(), lm)];
        let cond = s.max_abs() * s_inv.max_abs();
        let r = inner(&zeta[1], &xi[0]).norm().max(inner(&zeta[0], &xi[1]).norm());
        worst = worst.max(r / (cond * cond));
        n += 1;
    }
    Ok(Outcome::residual(worst, n))
}

fn projector_den(es: &crate::spectrum::EigenSystem) -> f64 {
    (Complex64::from_polar(1.0, es.phi_plus) + Complex64::from_polar(1.0, es.phi_minus)).norm()
}

fn projector_algebra(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let pr = projectors(&es)?;
        Ok(pr.algebra_residual() * projector_den(&es))
    })
}

fn projector_spectral(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let pr = projectors(&es)?;
        let h = rashba(pt.gamma, pt.beta, 1)?.at(pt.p);
        let r = pr.spectral_sum(es.lambda_plus, es.lambda_minus).max_abs_diff(&h);
        Ok(r * projector_den(&es) / pt.scale())
    })
}

fn flips_principal(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| Ok(flip_relations(pt.gamma, pt.p)?.max_principal()))
}

fn flips_eigen(ctx: &Context) -> Result<Outcome> {
    let mut off_by_pi = 0usize;
    let mut out = over_points(ctx, |pt| Ok(flip_relations(pt.gamma, pt.p)?.max_eigen_mod_pi()))?;
    for pt in &ctx.points {
        if flip_relations(pt.gamma, pt.p)?.max_eigen_mod_2pi() > 1e-6 {
            off_by_pi += 1;
        }
    }
    out.detail = format!(
        "atan2 phases satisfy a1, b, c2 only up to pi at {off_by_pi} of {} points",
        ctx.points.len()
    );
    Ok(out)
}

fn diagonal_independence(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let mut worst = 0.0_f64;
        for dir in [[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            let base = eigensystem(pt.gamma, pt.beta, dir, 1)?;
            for r in [0.5, 2.0, 8.0] {
                let es = eigensystem(pt.gamma, pt.beta, [r * dir[0], r * dir[1]], 1)?;
                worst = worst
                    .max(crate::spectrum::angle_residual(es.phi_plus - base.phi_plus, std::f64::consts::TAU))
                    .max(crate::spectrum::angle_residual(es.phi_minus - base.phi_minus, std::f64::consts::TAU));
            }
        }
        Ok(worst)
    })
}

fn spin_planar(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let mut worst = 0.0_f64;
        for b in Branch::BOTH {
            worst = worst.max(spin_vector(es.psi(b))[2].abs()).max(spin_vector(es.dual(b))[2].abs());
        }
        Ok(worst)
    })
}

/// Bi-orthogonal continuity at (dx, dt) = (h, h) for h = 1e-3 and 5e-4.
pub fn continuity_pair(pt: &SamplePoint, kind: DensityKind) -> Result<(f64, f64)> {
    let q = [-0.6 * pt.p[1] + 0.1, 0.6 * pt.p[0] - 0.1];
    let mix = PlaneWaveMixture::of_eigenstates(
        pt.gamma,
        pt.beta,
        &[
            (c(0.8, 0.0), pt.p, 1, Branch::Plus),
            (c(0.36, 0.48), q, 1, Branch::Minus),
        ],
    )?;
    let xs = [[0.0, 0.0], [0.37, -0.21], [1.3, 0.8]];
    Ok((
        continuity_residual(&mix, &xs, 0.5, 1e-3, 1e-3, kind)?,
        continuity_residual(&mix, &xs, 0.5, 5e-4, 5e-4, kind)?,
    ))
}

fn continuity(ctx: &Context) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    let mut order_ok = true;
    let mut min_ratio = f64::INFINITY;
    let pts: Vec<_> = ctx.points.iter().take(5).collect();
    for pt in &pts {
        // sampled directions at fixed |p| = 0.8: the 1e-5 bound is a
        // statement about a bounded superposition, truncation error grows like |k|³
        let r = pt.p[0].hypot(pt.p[1]);
        let bounded = SamplePoint {
            gamma: pt.gamma.clamp(-0.9, 0.9),
            beta: pt.beta.clamp(-1.5, 1.5),
            p: [0.8 * pt.p[0] / r, 0.8 * pt.p[1] / r],
        };
        let (r1, r2) = continuity_pair(&bounded, DensityKind::Biorthogonal)?;
        worst = worst.max(r1);
        if r1 > 1e-11 {
            let ratio = r1 / r2;
            min_ratio = min_ratio.min(ratio);
            order_ok &= (3.0..=5.0).contains(&ratio);
        }
    }
    Ok(Outcome {
        max_residual: worst,
        samples: pts.len(),
        threshold: Some(1e-5),
        condition: Some(order_ok),
        detail: format!("smallest step-halving ratio {min_ratio:.3}"),
    })
}

fn undeformed_limit(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(0.0, pt.beta, pt.p, 1)?;
        let pr = projectors(&es)?;
        let orth = inner(&es.psi_plus.amplitudes, &es.psi_minus.amplitudes).norm();
        let herm = pr.pi1.max_abs_diff(&pr.pi1.adjoint()).max(pr.pi2.max_abs_diff(&pr.pi2.adjoint()));
        let same = (biortho_inner(&es.dual_plus, &es.psi_plus).norm() - 1.0).abs();
        let trs = commutation_residual(&rashba(0.0, pt.beta, 1)?, pt.p) / pt.scale();
        Ok(orth.max(herm).max(same).max(trs))
    })
}

// ---- time reversal ----

fn t_laws(ctx: &Context, id: &str, f: impl Fn(&FiniteSpinor, &FiniteSpinor) -> f64) -> Result<Outcome> {
    let mut rng = ctx.rng(id);
    let worst = (0..samples(ctx))
        .map(|_| {
            let p = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let (a, b) = (random_spinor(&mut rng, p), random_spinor(&mut rng, p));
            f(&a, &b)
        })
        .fold(0.0, f64::max);
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn t_anti_involution(ctx: &Context) -> Result<Outcome> {
    let t = TimeReversal::new();
    t_laws(ctx, "timereversal.anti_involution", |a, _| {
        let tt = t.apply(&t.apply(a));
        let label = if tt.same_label(a) { 0.0 } else { 1.0 };
        vec_max_abs_diff(&tt.amplitudes, &[-a.amplitudes[0], -a.amplitudes[1]]).max(label)
    })
}

fn t_antiunitarity(ctx: &Context) -> Result<Outcome> {
    t_laws(ctx, "timereversal.antiunitarity", |a, b| {
        crate::timereversal::antiunitarity_defect(a, b).norm()
    })
}

fn t_norm(ctx: &Context) -> Result<Outcome> {
    let t = TimeReversal::new();
    t_laws(ctx, "timereversal.norm_preservation", |a, _| (t.apply(a).norm() - a.norm()).abs())
}

fn t_pseudo_hermiticity(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let mut worst = 0.0_f64;
        for (g, s) in [(pt.gamma, 1), (-pt.gamma, 1), (pt.gamma, -1), (-pt.gamma, -1)] {
            worst = worst.max(pseudo_hermitian_residual(&rashba(g, pt.beta, s)?, pt.p));
        }
        Ok(worst / pt.scale())
    })
}

fn t_generators(ctx: &Context) -> Result<Outcome> {
    over_gammas(ctx, |g| Ok(generator_reversal(&make_deformed_basis(g)?)?.sigma_residual))
}

fn t_listed(ctx: &Context) -> Result<Outcome> {
    let mut e2 = 0.0_f64;
    let mut out = over_gammas(ctx, |g| {
        let rep = generator_reversal(&make_deformed_basis(g)?)?;
        Ok(rep.listed_max_except_e2().max(rep.e2_against_minus_sigma2))
    })?;
    for &g in &ctx.config.gamma_values {
        e2 = e2.max(generator_reversal(&make_deformed_basis(g)?)?.listed_residual[2]);
    }
    out.detail = format!("listed e2 entry has the opposite sign (deviation {e2:.3} on configured gammas)");
    Ok(out)
}

fn t_kramers(ctx: &Context) -> Result<Outcome> {
    let mut signs = [[0usize; 2]; 2];
    let mut minus_p = 0.0_f64;
    let mut out = over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let rep = kramers_analogue(&es)?;
        let ok_signs = rep.branches[0].n_at_p == 0 && rep.branches[1].n_at_p == 1;
        Ok(rep.residual() / pt.scale() + if ok_signs { 0.0 } else { 1.0 })
    })?;
    for pt in &ctx.points {
        let rep = kramers_analogue(&eigensystem(pt.gamma, pt.beta, pt.p, 1)?)?;
        for (i, b) in rep.branches.iter().enumerate() {
            signs[i][b.n_at_p as usize] += 1;
            minus_p = minus_p.max(b.residual_at_minus_p);
        }
    }
    out.detail = format!(
        "n(+) = 0 at {} points, n(-) = 1 at {} points; matching against -p leaves residual up to {minus_p:.3}",
        signs[0][0], signs[1][1]
    );
    Ok(out)
}

fn t_noncommutation(ctx: &Context) -> Result<Outcome> {
    let mut witnessed = true;
    let mut smallest = f64::INFINITY;
    let out = over_points(ctx, |pt| {
        Ok(commutation_residual(&rashba(0.0, pt.beta, 1)?, pt.p) / pt.scale())
    })?;
    for pt in &ctx.points {
        if pt.gamma.abs() > 1e-2 {
            let r = commutation_residual(&rashba(pt.gamma, pt.beta, 1)?, pt.p);
            smallest = smallest.min(r);
            witnessed &= r > 1e-8;
        }
    }
    Ok(Outcome {
        condition: Some(witnessed),
        detail: format!("smallest deformed commutator {smallest:.3e}"),
        ..out
    })
}

fn t_reversed_schrodinger(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("timereversal.reversed_schrodinger");
    let dt = 1e-3;
    let mut worst = 0.0_f64;
    for pt in &ctx.points {
        let h = rashba(pt.gamma, pt.beta, 1)?;
        let psi = random_spinor(&mut rng, pt.p);
        let psi = psi.scaled(c(1.0 / psi.norm(), 0.0));
        let r = reversed_schrodinger_check(&h, &psi, &[0.1, 0.4], dt)?;
        // central-difference bound dt²‖H‖³/6 plus round-off
        let hn = 2.0 * h.at(pt.p).max_abs();
        let bound = dt * dt * hn.powi(3) / 6.0 * 4.0 + 1e-12 / dt;
        worst = worst.max(r / bound);
    }
    Ok(Outcome {
        threshold: Some(1.0),
        detail: "residual relative to the central-difference error bound".into(),
        ..Outcome::residual(worst, ctx.points.len())
    })
}

fn t_magnetic(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("timereversal.magnetic_pseudo_hermiticity");
    let mut worst = 0.0_f64;
    let mut fixed_a = f64::INFINITY;
    for pt in &ctx.points {
        let av = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let b3 = rng.gen_range(-2.0..2.0);
        for branch in [1i8, -1] {
            let h = magnetic(pt.gamma, pt.beta, av, b3, branch)?;
            let both = magnetic(pt.gamma, pt.beta, [-av[0], -av[1]], -b3, branch)?;
            let b_only = magnetic(pt.gamma, pt.beta, av, -b3, branch)?;
            worst = worst.max(pseudo_hermitian_residual_pair(&h, &both, pt.p) / (pt.scale() + 8.0));
            fixed_a = fixed_a.min(pseudo_hermitian_residual_pair(&h, &b_only, pt.p));
        }
    }
    Ok(Outcome::residual(worst, ctx.points.len()).with_detail(format!(
        "with A held fixed the smallest residual is {fixed_a:.3e}"
    )))
}

// ---- ideal spinors ----

fn ideal_basis(ctx: &Context) -> Result<Outcome> {
    let expected = constant_ideal_basis();
    over_gammas(ctx, |g| Ok(build_ideal_basis(&make_deformed_basis(g)?).max_abs_diff(&expected)))
}

fn ideal_spinor_pairs(ctx: &Context, id: &str, f: impl Fn(&mut ChaCha8Rng, &FiniteSpinor, &FiniteSpinor) -> f64) -> Result<Outcome> {
    let mut rng = ctx.rng(id);
    let worst = (0..samples(ctx))
        .map(|_| {
            let p = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let (a, b) = (random_spinor(&mut rng, p), random_spinor(&mut rng, p));
            f(&mut rng, &a, &b)
        })
        .fold(0.0, f64::max);
    Ok(Outcome::residual(worst, samples(ctx)))
}

fn ideal_closure(ctx: &Context) -> Result<Outcome> {
    ideal_spinor_pairs(ctx, "ideal.left_ideal_closure", |rng, a, _| {
        to_ideal(a).left_mul(&random_mat(rng)).ideal_defect()
    })
}

fn ideal_round_trip(ctx: &Context) -> Result<Outcome> {
    let basis = constant_ideal_basis();
    ideal_spinor_pairs(ctx, "ideal.round_trip", |_, a, _| {
        let s = to_ideal(a);
        let back = from_ideal(&s);
        let label = if back.same_label(a) { 0.0 } else { 1.0 };
        vec_max_abs_diff(&back.amplitudes, &a.amplitudes)
            .max(basis.combine(s.zeta()).max_abs_diff(&s.matrix))
            .max(label)
    })
}

fn ideal_flip_involution(ctx: &Context) -> Result<Outcome> {
    ideal_spinor_pairs(ctx, "ideal.flip_anti_involution", |rng, _, _| {
        let u = random_mat(rng);
        basis_flip(&basis_flip(&u)).max_abs_diff(&(-u))
    })
}

fn ideal_flip_t(ctx: &Context) -> Result<Outcome> {
    let t = TimeReversal::new();
    ideal_spinor_pairs(ctx, "ideal.flip_matches_time_reversal", |_, a, _| {
        let via_flip = from_ideal(&to_ideal(a).flip());
        let via_t = t.apply(a);
        let label = if via_flip.same_label(&via_t) { 0.0 } else { 1.0 };
        vec_max_abs_diff(&via_flip.amplitudes, &via_t.amplitudes).max(label)
    })
}

fn ideal_c1(ctx: &Context) -> Result<Outcome> {
    ideal_spinor_pairs(ctx, "ideal.c1_conventional", |_, a, b| {
        (inner_c1(&to_ideal(a), &to_ideal(b)) - inner(&a.amplitudes, &b.amplitudes)).norm()
    })
}

fn ideal_biorthogonality(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let es = eigensystem(pt.gamma, pt.beta, pt.p, 1)?;
        let (pp, pm) = (to_ideal(&es.psi_plus), to_ideal(&es.psi_minus));
        let (dp, dm) = (to_ideal(&es.dual_plus), to_ideal(&es.dual_minus));
        Ok([
            inner_c1(&dm, &pp),
            inner_c1(&dp, &pm),
            inner_c2(&pp, &dm),
            inner_c2(&pm, &dp),
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
    })
}

fn ideal_c2_flip(ctx: &Context) -> Result<Outcome> {
    ideal_spinor_pairs(ctx, "ideal.c2_flip_antiunitarity", |_, a, b| {
        let (ia, ib) = (to_ideal(a), to_ideal(b));
        let c1 = inner_c1(&ia, &ib);
        (inner_c1(&ib.flip(), &ia.flip()) - c1)
            .norm()
            .max((inner_c2(&ia, &ib) - inner_c1(&ia.flip(), &ib.flip())).norm())
    })
}

fn ideal_groups(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("ideal.invariance_groups");
    let mut worst = 0.0_f64;
    let mut memberships_ok = !invariance_group_check(&Mat2::identity()).in_g_prime_literal;
    for _ in 0..samples(ctx) {
        let u = random_unitary(&mut rng);
        let m = invariance_group_check(&u);
        memberships_ok &= m.in_g && m.unitary && m.in_g_prime;
        let k = random_mat(&mut rng);
        let mk = invariance_group_check(&k);
        memberships_ok &= mk.in_g == mk.unitary && mk.in_g_prime == mk.unitary;
        let p = [0.2, -0.4];
        let (a, b) = (to_ideal(&random_spinor(&mut rng, p)), to_ideal(&random_spinor(&mut rng, p)));
        let (ua, ub) = (a.left_mul(&u), b.left_mul(&u));
        worst = worst
            .max((inner_c1(&ua, &ub) - inner_c1(&a, &b)).norm())
            .max((inner_c2(&ua, &ub) - inner_c2(&a, &b)).norm());
    }
    Ok(Outcome {
        condition: Some(memberships_ok),
        detail: "G' tested as u-bar u-flat = e13; the literal = 1 condition excludes the identity".into(),
        ..Outcome::residual(worst, samples(ctx))
    })
}

// ---- susy ----

fn susy_group(ctx: &Context, prefixes: &[&str]) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let scale = pt.scale() / (1.0 - pt.gamma * pt.gamma);
        Ok(susy_residuals(pt.gamma, pt.beta, pt.p)?
            .into_iter()
            .filter(|(n, _)| prefixes.iter().any(|p| n.starts_with(p)))
            .map(|(_, r)| r)
            .fold(0.0, f64::max)
            / scale)
    })
}

fn susy_sector_isospectrality(ctx: &Context) -> Result<Outcome> {
    over_points(ctx, |pt| {
        let rp = rashba(pt.gamma, pt.beta, 1)?;
        let rm = rashba(pt.gamma, pt.beta, -1)?.at(pt.p);
        let ep = sorted_eigs(&rp.at(pt.p));
        let em = sorted_eigs(&rm);
        let mut worst = (ep[0] - em[0]).norm().max((ep[1] - em[1]).norm());
        let pb = rp.left_momentum().evaluate([pt.p[0], pt.p[1], 0.0]);
        for e in em {
            let psi: Vec2 = right_eigenvector(&rm, e);
            let mapped = pb.apply(&psi);
            let n = norm(&mapped);
            if n > 1e-8 {
                let lhs = rp.at(pt.p).apply(&mapped);
                worst = worst.max(vec_max_abs_diff(&lhs, &[e * mapped[0], e * mapped[1]]) / n);
            }
        }
        Ok(worst / pt.scale())
    })
}

/// The check for a declared invariant id.
pub fn check_for(id: &str) -> Option<Check> {
    let f: Check = match id {
        "clifford.grade_reassembly" => grade_reassembly,
        "clifford.matrix_round_trip" => matrix_round_trip,
        "clifford.homomorphism" => homomorphism,
        "clifford.involution_laws" => involution_laws,
        "clifford.deformed_closed_form" => deformed_closed_form,
        "clifford.deformed_clifford_relations" => deformed_relations,
        "clifford.even_subalgebra_closure" => even_closure,
        "biortho.gram_identity" => gram_identity,
        "biortho.gram_identity_hermitian" => gram_identity_hermitian,
        "biortho.synthesis_closed_form" => synthesis_closed_form,
        "biortho.synthesis_clifford_relations" => synthesis_relations,
        "momenta.linearization_relations" => linearization,
        "momenta.factorization_consistency" => factorization,
        "momenta.rashba_adjoint" => rashba_adjoint,
        "momenta.isospectrality" => isospectrality,
        "momenta.undeformed_hermitian" => undeformed_hermitian,
        "momenta.magnetic_product_form" => magnetic_product,
        "momenta.coupled_system" => coupled_system,
        "spectrum.eigen_identity" => eigen_identity,
        "spectrum.eigenvalue_oracle" => eigenvalue_oracle,
        "spectrum.biorthogonality" => biorthogonality,
        "spectrum.generic_isospectral_biorthogonality" => generic_biorthogonality,
        "spectrum.projector_algebra" => projector_algebra,
        "spectrum.projector_spectral_sum" => projector_spectral,
        "spectrum.flip_relations_principal" => flips_principal,
        "spectrum.flip_relations_eigen_phase" => flips_eigen,
        "spectrum.diagonal_momentum_independence" => diagonal_independence,
        "spectrum.spin_vector_planar" => spin_planar,
        "spectrum.continuity" => continuity,
        "spectrum.undeformed_limit" => undeformed_limit,
        "timereversal.anti_involution" => t_anti_involution,
        "timereversal.antiunitarity" => t_antiunitarity,
        "timereversal.norm_preservation" => t_norm,
        "timereversal.pseudo_hermiticity" => t_pseudo_hermiticity,
        "timereversal.generator_reversal" => t_generators,
        "timereversal.listed_reversed_generators" => t_listed,
        "timereversal.kramers_analogue" => t_kramers,
        "timereversal.noncommutation_witness" => t_noncommutation,
        "timereversal.reversed_schrodinger" => t_reversed_schrodinger,
        "timereversal.magnetic_pseudo_hermiticity" => t_magnetic,
        "ideal.basis_reproduction" => ideal_basis,
        "ideal.left_ideal_closure" => ideal_closure,
        "ideal.round_trip" => ideal_round_trip,
        "ideal.flip_anti_involution" => ideal_flip_involution,
        "ideal.flip_matches_time_reversal" => ideal_flip_t,
        "ideal.c1_conventional" => ideal_c1,
        "ideal.c1_c2_biorthogonality" => ideal_biorthogonality,
        "ideal.c2_flip_antiunitarity" => ideal_c2_flip,
        "ideal.invariance_groups" => ideal_groups,
        "susy.nilpotency" => |ctx| susy_group(ctx, &["theta_plus_nil", "theta_minus_nil", "lambda_plus_nil", "lambda_minus_nil"]),
        "susy.anticommutator_closure" => |ctx| susy_group(ctx, &["anticommutator_is_sector_diag"]),
        "susy.charge_conservation" => |ctx| susy_group(ctx, &["h_commutes"]),
        "susy.witten_relations" => |ctx| susy_group(ctx, &["witten"]),
        "susy.pseudo_susy_equality" => |ctx| susy_group(ctx, &["psusy_equals_susy"]),
        "susy.intertwining" => |ctx| susy_group(ctx, &["intertwining"]),
        "susy.super_time_reversal" => |ctx| susy_group(ctx, &["super_reversal"]),
        "susy.sector_isospectrality" => susy_sector_isospectrality,
        _ => return None,
    };
    Some(f)
}

/// (module, test id, claim) for every declared invariant, in module order.
pub fn declared() -> Vec<(&'static str, &'static str, &'static str)> {
    let modules: [(&str, &[(&str, &str)]); 7] = [
        ("clifford_core", crate::clifford::INVARIANTS),
        ("biortho_basis", crate::biortho::INVARIANTS),
        ("momenta", crate::momenta::INVARIANTS),
        ("spectrum", crate::spectrum::INVARIANTS),
        ("timereversal", crate::timereversal::INVARIANTS),
        ("ideal_spinors", crate::ideal::INVARIANTS),
        ("susy", crate::susy::INVARIANTS),
    ];
    modules
        .iter()
        .flat_map(|(m, list)| list.iter().map(move |(id, claim)| (*m, *id, *claim)))
        .collect()
}
