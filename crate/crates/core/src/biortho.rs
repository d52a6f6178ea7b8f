//! Bi-orthogonal pairs {|φⱼ⟩ = T|vⱼ⟩, |χⱼ⟩ = (T⁻¹)†|vⱼ⟩} in ℂ² and the
//! rank-one synthesis of the deformed generators from such a pair.

use num_complex::Complex64;

use crate::clifford::effective_transform;
use crate::error::{Error, Result};
use crate::matrix::{inner, vec_max_abs_diff, Mat2, Vec2, I};

const SEED_TOL: f64 = 1e-12;

/// Invariants of this module checked by the verification harness, as
/// (test id, claim).
pub const INVARIANTS: &[(&str, &str)] = &[
    ("biortho.gram_identity", "<phi_j|chi_k> = <v_j|v_k> for any invertible T"),
    ("biortho.gram_identity_hermitian", "<phi_j|chi_k> = delta_jk for Hermitian T"),
    ("biortho.synthesis_closed_form", "rank-one synthesis reproduces sigma^gamma"),
    ("biortho.synthesis_clifford_relations", "synthesized generators satisfy the Clifford relations"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct BiorthoPair {
    pub phi: [Vec2; 2],
    pub chi: [Vec2; 2],
    pub source: [Vec2; 2],
    pub transform: Mat2,
}

impl BiorthoPair {
    /// ⟨φⱼ|χₖ⟩
    pub fn gram(&self) -> Mat2 {
        let g = |j: usize, k: usize| inner(&self.phi[j], &self.chi[k]);
        Mat2::new(g(0, 0), g(0, 1), g(1, 0), g(1, 1))
    }

    /// ⟨vⱼ|vₖ⟩
    pub fn source_gram(&self) -> Mat2 {
        let g = |j: usize, k: usize| inner(&self.source[j], &self.source[k]);
        Mat2::new(g(0, 0), g(0, 1), g(1, 0), g(1, 1))
    }
}

pub fn build_pair(v1: Vec2, v2: Vec2, t: Mat2) -> Result<BiorthoPair> {
    let t_inv = t.inverse().ok_or(Error::NonInvertibleTransform)?;
    let orthonormal = (inner(&v1, &v1) - 1.0).norm() <= SEED_TOL
        && (inner(&v2, &v2) - 1.0).norm() <= SEED_TOL
        && inner(&v1, &v2).norm() <= SEED_TOL;
    if !orthonormal {
        return Err(Error::SeedsNotOrthonormal);
    }
    let dual = t_inv.adjoint();
    Ok(BiorthoPair {
        phi: [t.apply(&v1), t.apply(&v2)],
        chi: [dual.apply(&v1), dual.apply(&v2)],
        source: [v1, v2],
        transform: t,
    })
}

/// vⱼ = (1, (−1)^{j−1})/√2
pub fn standard_seeds() -> [Vec2; 2] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// The pair built from [`standard_seeds`] and T_eff(γ).
pub fn standard_pair(gamma: f64) -> Result<BiorthoPair> {
    let [v1, v2] = standard_seeds();
    build_pair(v1, v2, effective_transform(gamma)?)
}

/// c^{(m)}ⱼₖ for m = 1, 2, 3 and j, k = 1, 2:
/// c¹ⱼₖ = (−1)ʲδⱼₖ, c³ⱼₖ = 1 − (−1)ʲc¹ⱼₖ, c²ⱼₖ = (−1)ʲc³ⱼₖ.
pub fn synthesis_coefficient(m: usize, j: usize, k: usize) -> f64 {
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c1 = if j == k { sign } else { 0.0 };
    let c3 = 1.0 - sign * c1;
    match m {
        1 => c1,
        2 => sign * c3,
        3 => c3,
        _ => panic!("generator index {m} out of range 1..=3"),
    }
}

/// σₘ^γ = i^{m+1} Σⱼₖ c^{(m)}ⱼₖ |φⱼ⟩⟨χₖ|
pub fn synthesize_generators(pair: &BiorthoPair) -> Result<[Mat2; 3]> {
    let seeds = standard_seeds();
    let matches = pair
        .source
        .iter()
        .zip(seeds.iter())
        .all(|(a, b)| vec_max_abs_diff(a, b) <= SEED_TOL);
    if !matches {
        return Err(Error::UnsupportedSeed);
    }
    Ok([1, 2, 3].map(|m| {
        let mut sum = Mat2::zero();
        for j in 1..=2 {
            for k in 1..=2 {
                let coeff = synthesis_coefficient(m, j, k);
                if coeff != 0.0 {
                    sum += Mat2::outer(&pair.phi[j - 1], &pair.chi[k - 1]) * coeff;
                }
            }
        }
        sum * I.powu(m as u32 + 1)
    }))
}
