//! The limit G^σ of the stabilizers of λ^σ(t)·p_k and the extra
//! transformations fixing z_{λ^σ}.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{rank_of_vectors, same_span};
use crate::exact::{Matrix, RatMatrix, Rational, Scalar, SparsePolynomial, VarSet};
use crate::flag::{dense, induced_sym_action, SymVector};
use crate::orbit::lie::LieElement;
use crate::orbit::weights::{lambda_sigma, EpsWeight, OneParamSubgroup};
use crate::sym::{compositions_into, SymBasis};

/// k×k matrix of polynomials in β₁,…,β_k, named `b[i]`.
#[derive(Clone, Debug)]
pub struct LimitStabilizerMatrix {
    pub sigma: usize,
    pub k: usize,
    pub n: Vec<EpsWeight>,
    pub vars: Arc<VarSet>,
    pub entries: Matrix<SparsePolynomial>,
}

/// n_i = max_{1≤j≤k−i+1} (λ_{j+i−1} − λ_j).
pub fn n_sigma(lambda: &OneParamSubgroup) -> Vec<EpsWeight> {
    let k = lambda.k();
    (1..=k)
        .map(|i| {
            (1..=k + 1 - i)
                .map(|j| lambda.weight(j + i - 1) - lambda.weight(j))
                .max()
                .unwrap()
        })
        .collect()
}

/// Smallest θ(i) with n_i = λ_{θ+i−1} − λ_θ.
pub fn theta(lambda: &OneParamSubgroup) -> Vec<usize> {
    let n = n_sigma(lambda);
    (1..=lambda.k())
        .map(|i| {
            (1..=lambda.k() + 1 - i)
                .find(|&j| lambda.weight(j + i - 1) - lambda.weight(j) == n[i - 1])
                .unwrap()
        })
        .collect()
}

/// Entry (i, j) of λ(t)G_zλ(t)^{-1} is t^{λ_i−λ_j} Σ_{a₁+⋯+a_i=j} α_{a₁}⋯α_{a_i};
/// after α_a = t^{n_a}β_a every t-exponent must be nonnegative, and the
/// limit keeps the exponent-zero terms.
pub fn limit_stabilizer_matrix(sigma: usize, k: usize) -> Result<LimitStabilizerMatrix> {
    let lambda = lambda_sigma(sigma, k)?;
    let n = n_sigma(&lambda);
    let vars = VarSet::new((1..=k).map(|i| format!("b[{i}]")));
    let beta: Vec<SparsePolynomial> = (0..k).map(|i| SparsePolynomial::var_at(&vars, i)).collect();
    let zero = SparsePolynomial::zero(&vars);
    let mut entries = Matrix::filled(k, k, zero.clone());
    for i in 1..=k {
        for j in i..=k {
            let base = lambda.weight(i) - lambda.weight(j);
            let mut acc = zero.clone();
            for comp in compositions_into(j as u32, i) {
                let e = comp.iter().fold(base.clone(), |s, &a| &s + &n[a as usize - 1]);
                if e < EpsWeight::zero() {
                    return Err(Error::Assertion(format!(
                        "negative t-exponent {e} at entry ({i},{j}) for sigma={sigma}, k={k}"
                    )));
                }
                if e.is_zero() {
                    let term = comp.iter().fold(SparsePolynomial::one(&vars), |m, &a| m.times(&beta[a as usize - 1]));
                    acc = acc.plus(&term);
                }
            }
            entries[(i - 1, j - 1)] = acc;
        }
    }
    Ok(LimitStabilizerMatrix { sigma, k, n, vars, entries })
}

impl LimitStabilizerMatrix {
    pub fn at(&self, beta: &[Rational]) -> RatMatrix {
        self.entries.map(Rational::zero(), |p| p.evaluate_at(beta))
    }

    pub fn identity_point(&self) -> Vec<Rational> {
        let mut b = vec![Rational::zero(); self.k];
        b[0] = Rational::one();
        b
    }

    /// ∂/∂β_i at β = (1, 0, …, 0), i = 1..k.
    pub fn first_order_directions(&self) -> Vec<LieElement> {
        let at = self.identity_point();
        (0..self.k)
            .map(|i| LieElement {
                matrix: self.entries.map(Rational::zero(), |p| p.derivative(i).evaluate_at(&at)),
            })
            .collect()
    }
}

/// g acting on the column span of a decomposable wedge keeps the span.
pub fn fixes_projectively(g: &RatMatrix, columns: &[SymVector], k: usize) -> bool {
    let basis = SymBasis::new(g.rows(), k);
    let action = induced_sym_action(g, k);
    let cols: Vec<Vec<Rational>> = columns.iter().map(|c| dense(c, &basis)).collect();
    let moved: Vec<Vec<Rational>> = cols.iter().map(|c| action.apply(c)).collect();
    same_span(&cols, &moved, basis.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ExtraCase {
    /// σ = k: e_{k−1} ↦ e_{k−1} + ζe_k.
    One,
    /// σ < k, k ≢ −1 mod σ: e_k ↦ e_k + ζe_σ.
    Two,
    /// σ < k, k ≡ −1 mod σ, k ≥ 4: e_{k−1} ↦ e_{k−1} + ζe_σ, e_k ↦ e_k + ζe_{σ+1}.
    Three,
}

#[derive(Clone, Debug)]
pub struct ExtraStabilizer {
    pub case: ExtraCase,
    pub k: usize,
    /// (row, column) positions, 1-based, carrying ζ.
    pub positions: Vec<(usize, usize)>,
}

pub fn extra_stabilizer(sigma: usize, k: usize) -> Result<ExtraStabilizer> {
    lambda_sigma(sigma, k)?;
    let (case, positions) = if sigma == k {
        (ExtraCase::One, vec![(k, k - 1)])
    } else if (k + 1) % sigma != 0 {
        (ExtraCase::Two, vec![(sigma, k)])
    } else if k >= 4 {
        (ExtraCase::Three, vec![(sigma, k - 1), (sigma + 1, k)])
    } else {
        return Err(Error::InvalidInput(format!(
            "sigma={sigma}, k={k} falls outside the three cases"
        )));
    };
    Ok(ExtraStabilizer { case, k, positions })
}

impl ExtraStabilizer {
    pub fn at(&self, zeta: &Rational) -> RatMatrix {
        let mut m = RatMatrix::eye(self.k);
        for &(r, c) in &self.positions {
            m[(r - 1, c - 1)] = zeta.clone();
        }
        m
    }

    pub fn symbolic(&self) -> Matrix<SparsePolynomial> {
        let vars = VarSet::new(["z"]);
        let zero = SparsePolynomial::zero(&vars);
        let mut m = Matrix::identity(self.k, zero);
        for &(r, c) in &self.positions {
            m[(r - 1, c - 1)] = SparsePolynomial::var_at(&vars, 0);
        }
        m
    }

    pub fn direction(&self) -> LieElement {
        let mut m = RatMatrix::zeros(self.k, self.k);
        for &(r, c) in &self.positions {
            m[(r - 1, c - 1)] = Rational::one();
        }
        LieElement { matrix: m }
    }
}

/// Dimension gained by adding `extra` to the span of `known`.
pub fn independent_of(extra: &LieElement, known: &[LieElement]) -> bool {
    let k = extra.matrix.rows();
    let flat: Vec<Vec<Rational>> = known.iter().map(LieElement::flat).collect();
    let before = rank_of_vectors(&flat, k * k);
    let mut with = flat;
    with.push(extra.flat());
    rank_of_vectors(&with, k * k) > before
}

/// diag(1, …, k) and diag(⌊i/σ⌋): the torus directions fixing z_{λ^σ}.
pub fn torus_directions(sigma: usize, k: usize) -> Vec<LieElement> {
    let mut a = RatMatrix::zeros(k, k);
    let mut b = RatMatrix::zeros(k, k);
    for i in 1..=k {
        a[(i - 1, i - 1)] = Rational::from_integer((i as i64).into());
        b[(i - 1, i - 1)] = Rational::from_integer(((i / sigma) as i64).into());
    }
    vec![LieElement { matrix: a }, LieElement { matrix: b }]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::orbit::weights::{z_closed_form_columns, Kind};

    #[test]
    fn k2_hand_expansion() {
        let g = limit_stabilizer_matrix(2, 2).unwrap();
        let shown: Vec<String> = g.entries.to_rows().iter().flatten().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["b[1]", "b[2]", "0", "b[1]^2"]);
    }

    #[test]
    fn n_values() {
        let l = lambda_sigma(2, 4).unwrap();
        let n: Vec<String> = n_sigma(&l).iter().map(|w| w.to_string()).collect();
        assert_eq!(n, ["0", "1", "2-ε", "3-2ε"]);
    }

    #[test]
    fn leading_terms_of_theta_entries() {
        for (sigma, k) in [(2, 4), (3, 5), (4, 4)] {
            let l = lambda_sigma(sigma, k).unwrap();
            let g = limit_stabilizer_matrix(sigma, k).unwrap();
            let th = theta(&l);
            for i in 2..=k {
                let e = &g.entries[(th[i - 1] - 1, th[i - 1] + i - 2)];
                let mut exps = vec![0u32; k];
                exps[0] = th[i - 1] as u32 - 1;
                exps[i - 1] += 1;
                let lead = crate::exact::Monomial(exps);
                // the part i can sit in any of the θ(i) slots
                assert_eq!(e.coefficient(&lead), int(th[i - 1] as i64), "sigma={sigma} k={k} i={i}");
            }
        }
    }

    #[test]
    fn extra_cases() {
        assert_eq!(extra_stabilizer(4, 4).unwrap().case, ExtraCase::One);
        assert_eq!(extra_stabilizer(3, 4).unwrap().case, ExtraCase::Two);
        let c3 = extra_stabilizer(2, 5).unwrap();
        assert_eq!(c3.case, ExtraCase::Three);
        assert_eq!(c3.positions, vec![(2, 4), (3, 5)]);
        assert!(extra_stabilizer(2, 3).is_err());
    }

    #[test]
    fn case_two_fixes() {
        let cols = z_closed_form_columns(3, 4, Kind::Lambda).unwrap();
        let t = extra_stabilizer(3, 4).unwrap();
        assert!(fixes_projectively(&t.at(&int(7)), &cols, 4));
    }
}
