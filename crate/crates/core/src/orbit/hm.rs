//! Hilbert–Mumford criterion for a torus, by exact linear programming.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Unstable,
    SemistableNotStable,
    Stable,
}

/// Phase-I simplex: is {x ≥ 0 : Ax = b} nonempty? Bland's rule, exact.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // tableau columns: x (n), artificials (m), rhs
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = if flip { -&a[i][j] } else { a[i][j].clone() };
            }
            row[n + i] = Rational::one();
            row[width - 1] = b[i].abs();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of minimizing Σ artificials
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..width {
            if j < n || j == width - 1 {
                cost[j] -= &row[j];
            }
        }
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for j in 0..width {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        let f = cost[enter].clone();
        for j in 0..width {
            cost[j] -= &f * &prow[j];
        }
        basis[r] = enter;
    }
    // optimum of Σ artificials is −cost[rhs]
    cost[width - 1].is_zero()
}

fn as_rational(weights: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    weights
        .iter()
        .map(|w| w.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect()
}

/// 0 ∈ Conv(weights): Σcᵢαᵢ = 0, Σcᵢ = 1, c ≥ 0.
pub fn zero_in_hull(weights: &[Vec<i64>]) -> bool {
    let r = weights[0].len();
    let w = as_rational(weights);
    let mut a: Vec<Vec<Rational>> = (0..r).map(|d| w.iter().map(|v| v[d].clone()).collect()).collect();
    a.push(vec![Rational::one(); w.len()]);
    let mut b = vec![Rational::zero(); r];
    b.push(Rational::one());
    feasible(&a, &b)
}

/// 0 in the interior of Conv(weights): the weights span R^r and admit a
/// strictly positive relation Σcᵢαᵢ = 0 (with cᵢ = 1 + dᵢ, dᵢ ≥ 0).
pub fn zero_in_interior(weights: &[Vec<i64>]) -> bool {
    let r = weights[0].len();
    let w = as_rational(weights);
    if RatMatrix::from_rows(w.clone(), Rational::zero()).rank() < r {
        return false;
    }
    let a: Vec<Vec<Rational>> = (0..r).map(|d| w.iter().map(|v| v[d].clone()).collect()).collect();
    let b: Vec<Rational> = (0..r).map(|d| -w.iter().map(|v| v[d].clone()).sum::<Rational>()).collect();
    feasible(&a, &b)
}

pub fn hilbert_mumford_torus(weights: &[Vec<i64>]) -> crate::Result<Stability> {
    if weights.is_empty() {
        return Err(crate::Error::InvalidInput("empty weight list".into()));
    }
    let r = weights[0].len();
    if r == 0 || weights.iter().any(|w| w.len() != r) {
        return Err(crate::Error::InvalidInput("weights must share a positive dimension".into()));
    }
    Ok(if !zero_in_hull(weights) {
        Stability::Unstable
    } else if zero_in_interior(weights) {
        Stability::Stable
    } else {
        Stability::SemistableNotStable
    })
}
