//! The codimension report for the boundary candidates and the stabilizer
//! probe for the p > 1 distinguished point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flag::{p_point, p_point_term_bound};
use crate::orbit::lie::{infinitesimal_stabilizer, Algebra, Mode, Twist};
use crate::orbit::weights::{limit_point, Kind};
use crate::sym::{sym_dim, sym_le_dim};

/// Default ceiling on (Lie unknowns) × (expanded terms of the point).
pub const DEFAULT_RESOURCE_LIMIT: u128 = 90_000;

/// Checks the work estimate n² · #terms(p_{k,p}) against `limit`.
pub fn check_resources(p: usize, k: usize, limit: u128) -> Result<u128> {
    let n = sym_le_dim(p, k) as u128;
    let cost = n * n * p_point_term_bound(p, k);
    if cost > limit {
        return Err(Error::ResourceLimit(format!(
            "p={p}, k={k}: estimated cost {cost} exceeds the limit {limit}"
        )));
    }
    Ok(cost)
}

/// K = M·(1 + 2 + ⋯ + k) + 1.
pub fn twist_power(k: usize, m: usize) -> u64 {
    (m * k * (k + 1) / 2 + 1) as u64
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub kind: Kind,
    pub sigma: usize,
    pub proj_stab_dim: usize,
    pub orbit_codim: i64,
    pub bound_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodimReport {
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "K")]
    pub twist: u64,
    pub base_stabilizer_dim: usize,
    pub candidates: Vec<Candidate>,
}

impl CodimReport {
    pub fn all_ok(&self) -> bool {
        self.base_stabilizer_dim + 1 == self.k && self.candidates.iter().all(|c| c.bound_ok)
    }
}

/// Affine sl(k)-stabilizer of p_k ⊗ e₁^{⊗K}, and for each limit point
/// z_{λ^σ} (2 ≤ σ ≤ k), z_{μ^σ} (2 ≤ σ ≤ k−1) the projective
/// sl(k)-stabilizer of z ⊗ e₁^{⊗K}. The candidate's orbit codimension is
/// measured against the open orbit, dim SL(k) − (k−1).
pub fn codim_report(k: usize, m: usize, limit: u128) -> Result<CodimReport> {
    if k < 2 || m < 1 {
        return Err(Error::InvalidInput("codim report needs k >= 2 and M >= 1".into()));
    }
    check_resources(1, k, limit)?;
    let twist = Twist::e1(twist_power(k, m));
    let p = p_point(1, k);
    let base = infinitesimal_stabilizer(&p, Some(&twist), Algebra::Sl, Mode::Affine)?;
    let mut candidates = Vec::new();
    if k >= 3 {
        let list = (2..=k)
            .map(|s| (Kind::Lambda, s))
            .chain((2..k).map(|s| (Kind::Mu, s)));
        for (kind, sigma) in list {
            let z = limit_point(&p, &kind.subgroup(sigma, k)?)?;
            let stab = infinitesimal_stabilizer(&z, Some(&twist), Algebra::Sl, Mode::Projective)?;
            let d = stab.dimension;
            candidates.push(Candidate {
                kind,
                sigma,
                proj_stab_dim: d,
                orbit_codim: d as i64 - (k as i64 - 1),
                bound_ok: d > k,
            });
        }
    }
    Ok(CodimReport { k, m, twist: twist.b, base_stabilizer_dim: base.dimension, candidates })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub p: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub n: usize,
    #[serde(rename = "K")]
    pub twist: u64,
    pub measured: usize,
    pub predicted: usize,
    pub matches: bool,
}

/// Affine sl(n)-stabilizer of p_{k,p} ⊗ (e₁∧⋯∧e_p)^{⊗K}, n = sym^{≤k}(p),
/// K = M·Σ i·sym^i(p) + 1, against p·n − 1.
pub fn p1_probe_conjecture(p: usize, k: usize, m: usize, limit: u128) -> Result<ProbeReport> {
    if p < 1 || k < 1 || m < 1 {
        return Err(Error::InvalidInput("probe needs p, k, M >= 1".into()));
    }
    check_resources(p, k, limit)?;
    let n = sym_le_dim(p, k);
    let weight: usize = (1..=k).map(|i| i * sym_dim(p, i)).sum();
    let twist = Twist { a: 1, b: (m * weight + 1) as u64, p };
    let w = p_point(p, k);
    let stab = infinitesimal_stabilizer(&w, Some(&twist), Algebra::Sl, Mode::Affine)?;
    let predicted = p * n - 1;
    Ok(ProbeReport {
        p,
        k,
        m,
        n,
        twist: twist.b,
        measured: stab.dimension,
        predicted,
        matches: stab.dimension == predicted,
    })
}
