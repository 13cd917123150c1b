//! One-parameter subgroups with weights in Q + Qε and their limit points.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::format_rational;
use crate::exact::Rational;
use crate::flag::{distinguished_columns, SymVector, WedgeVector};
use crate::sym::{defect, defect_of_partition, partitions_of, perm, SymMonomial};

/// a + bε with ε a positive infinitesimal; ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsWeight {
    pub a: Rational,
    pub b: Rational,
}

impl EpsWeight {
    pub fn new(a: Rational, b: Rational) -> Self {
        EpsWeight { a, b }
    }

    pub fn int(a: i64) -> Self {
        EpsWeight { a: Rational::from_integer(a.into()), b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Value with ε replaced by a number.
    pub fn at(&self, eps: &Rational) -> Rational {
        &self.a + &self.b * eps
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        EpsWeight { a: &self.a * c, b: &self.b * c }
    }
}

impl Ord for EpsWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for EpsWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &EpsWeight {
    type Output = EpsWeight;
    fn add(self, o: &EpsWeight) -> EpsWeight {
        EpsWeight { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &EpsWeight {
    type Output = EpsWeight;
    fn sub(self, o: &EpsWeight) -> EpsWeight {
        EpsWeight { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for &EpsWeight {
    type Output = EpsWeight;
    fn neg(self) -> EpsWeight {
        EpsWeight { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for EpsWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format_rational(&self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}ε")
        } else if self.b > Rational::zero() {
            write!(f, "{}+{b}ε", format_rational(&self.a))
        } else if b == "-" {
            write!(f, "{}-ε", format_rational(&self.a))
        } else {
            write!(f, "{}{b}ε", format_rational(&self.a))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    pub weights: Vec<EpsWeight>,
}

/// Where a subgroup first departs from (1, 2, …, k)·λ₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Head {
    Regular(usize),
    Degenerate(usize),
}

impl OneParamSubgroup {
    pub fn new(weights: Vec<EpsWeight>) -> Self {
        OneParamSubgroup { weights }
    }

    pub fn from_ints(w: &[i64]) -> Self {
        Self::new(w.iter().map(|&x| EpsWeight::int(x)).collect())
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    /// Weight of e_i, 1-based.
    pub fn weight(&self, i: usize) -> &EpsWeight {
        &self.weights[i - 1]
    }

    /// ε replaced by a number.
    pub fn specialize(&self, eps: &Rational) -> Self {
        Self::new(
            self.weights.iter().map(|w| EpsWeight::new(w.at(eps), Rational::zero())).collect(),
        )
    }

    pub fn sums_to_zero(&self) -> bool {
        self.weights.iter().fold(EpsWeight::zero(), |acc, w| &acc + w).is_zero()
    }

    pub fn head(&self) -> Option<Head> {
        let l1 = &self.weights[0];
        (2..=self.k()).find_map(|i| {
            let expected = l1.scaled(&Rational::from_integer((i as i64).into()));
            match self.weight(i).cmp(&expected) {
                Ordering::Less => Some(Head::Regular(i)),
                Ordering::Greater => Some(Head::Degenerate(i)),
                Ordering::Equal => None,
            }
        })
    }

    /// ρ_j = jλ₁ − λ_j.
    pub fn rho(&self) -> Vec<EpsWeight> {
        let l1 = &self.weights[0];
        (1..=self.k())
            .map(|j| &l1.scaled(&Rational::from_integer((j as i64).into())) - self.weight(j))
            .collect()
    }
}

/// λ_τ = Σ_{i∈τ} λ_i with multiplicity.
pub fn weight_of(lambda: &OneParamSubgroup, tau: &SymMonomial) -> EpsWeight {
    tau.entries()
        .iter()
        .fold(EpsWeight::zero(), |acc, &i| &acc + lambda.weight(i as usize))
}

/// λ̃ = (1, 2, …, k).
pub fn lambda_tilde(k: usize) -> OneParamSubgroup {
    OneParamSubgroup::from_ints(&(1..=k as i64).collect::<Vec<_>>())
}

/// λ^σ_i = i − ⌊i/σ⌋ε.
pub fn lambda_sigma(sigma: usize, k: usize) -> Result<OneParamSubgroup> {
    if sigma < 2 || sigma > k {
        return Err(Error::InvalidInput(format!("lambda needs 2 <= sigma <= k, got sigma={sigma}, k={k}")));
    }
    Ok(OneParamSubgroup::new(
        (1..=k)
            .map(|i| {
                EpsWeight::new(
                    Rational::from_integer((i as i64).into()),
                    Rational::from_integer((-((i / sigma) as i64)).into()),
                )
            })
            .collect(),
    ))
}

/// μ^σ_i = i, except μ^σ_σ = σ + ε.
pub fn mu_sigma(sigma: usize, k: usize) -> Result<OneParamSubgroup> {
    if sigma < 2 || sigma + 1 > k {
        return Err(Error::InvalidInput(format!("mu needs 2 <= sigma <= k-1, got sigma={sigma}, k={k}")));
    }
    let mut w: Vec<EpsWeight> = (1..=k as i64).map(EpsWeight::int).collect();
    w[sigma - 1].b = Rational::one();
    Ok(OneParamSubgroup::new(w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lambda,
    Mu,
}

impl Kind {
    pub fn subgroup(self, sigma: usize, k: usize) -> Result<OneParamSubgroup> {
        match self {
            Kind::Lambda => lambda_sigma(sigma, k),
            Kind::Mu => mu_sigma(sigma, k),
        }
    }
}

fn term_weight(lambda: &OneParamSubgroup, factors: &[SymMonomial]) -> EpsWeight {
    factors.iter().fold(EpsWeight::zero(), |acc, f| &acc + &weight_of(lambda, f))
}

fn check_ambient(w: &WedgeVector, lambda: &OneParamSubgroup) -> Result<()> {
    if w.n != lambda.k() {
        return Err(Error::DimensionMismatch(format!(
            "wedge over C^{} but subgroup of rank {}",
            w.n,
            lambda.k()
        )));
    }
    Ok(())
}

/// The projective limit of λ(t)·w as t → 0: the terms of minimal total weight.
pub fn limit_point(w: &WedgeVector, lambda: &OneParamSubgroup) -> Result<WedgeVector> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    check_ambient(w, lambda)?;
    let min = w.terms().map(|(f, _)| term_weight(lambda, f)).min().unwrap();
    Ok(w.retain(|f| term_weight(lambda, f) == min))
}

/// Minimal-weight part of a single column.
pub fn column_limit(col: &SymVector, lambda: &OneParamSubgroup) -> SymVector {
    let Some(min) = col.keys().map(|m| weight_of(lambda, m)).min() else {
        return SymVector::new();
    };
    col.iter()
        .filter(|(m, _)| weight_of(lambda, m) == min)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Column i of the closed form: Σ perm(τ) e_τ over partitions τ of i with
/// d(τ) = d(i) (regular, from λ^σ) or σ ∉ τ (degenerate, from μ^σ).
pub fn z_closed_form_columns(sigma: usize, k: usize, kind: Kind) -> Result<Vec<SymVector>> {
    kind.subgroup(sigma, k)?;
    let s = sigma as u32;
    Ok((1..=k as u32)
        .map(|i| {
            partitions_of(i)
                .into_iter()
                .filter(|tau| match kind {
                    Kind::Lambda => defect_of_partition(s, tau) == defect(s, i),
                    Kind::Mu => !tau.contains(s),
                })
                .map(|tau| (tau.as_monomial(), Rational::from_integer(perm(&tau).into())))
                .collect()
        })
        .collect())
}

pub fn z_closed_form(sigma: usize, k: usize, kind: Kind) -> Result<WedgeVector> {
    Ok(WedgeVector::wedge(k, k, &z_closed_form_columns(sigma, k, kind)?))
}

/// Number of degrees i whose minimal-weight column of p_k is exactly e_i.
pub fn toral_dimension(lambda: &OneParamSubgroup, k: usize) -> Result<usize> {
    if lambda.k() != k {
        return Err(Error::DimensionMismatch(format!("subgroup of rank {} for k={k}", lambda.k())));
    }
    Ok(distinguished_columns(1, k)
        .iter()
        .enumerate()
        .filter(|(i, col)| {
            let lim = column_limit(col, lambda);
            lim.len() == 1 && lim.contains_key(&SymMonomial::single(i + 1))
        })
        .count())
}

/// ρ_{i₁} + ⋯ + ρ_{i_s} ≤ ρ_j for every partition of every j ≤ k−1.
pub fn rho_superadditive(lambda: &OneParamSubgroup) -> bool {
    let rho = lambda.rho();
    (1..lambda.k() as u32).all(|j| {
        partitions_of(j).iter().all(|tau| {
            let s = tau.parts().iter().fold(EpsWeight::zero(), |acc, &i| &acc + &rho[i as usize - 1]);
            s <= rho[j as usize - 1]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{p_point, parse_monomial};

    #[test]
    fn eps_order_and_display() {
        let l = lambda_sigma(2, 4).unwrap();
        let shown: Vec<String> = l.weights.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["1", "2-ε", "3-ε", "4-2ε"]);
        assert!(EpsWeight::int(2) > *l.weight(2));
        assert!(*l.weight(2) > EpsWeight::int(1));
        let m = mu_sigma(3, 4).unwrap();
        assert_eq!(m.weight(3).to_string(), "3+ε");
        assert_eq!(weight_of(&l, &parse_monomial("e2^2").unwrap()).to_string(), "4-2ε");
        assert_eq!(weight_of(&OneParamSubgroup::from_ints(&[1, 2, 3]), &parse_monomial("e1e2").unwrap()), EpsWeight::int(3));
    }

    #[test]
    fn heads() {
        assert_eq!(lambda_sigma(3, 5).unwrap().head(), Some(Head::Regular(3)));
        assert_eq!(mu_sigma(2, 4).unwrap().head(), Some(Head::Degenerate(2)));
        assert_eq!(lambda_tilde(4).head(), None);
        assert!(mu_sigma(4, 4).is_err());
        assert!(lambda_sigma(1, 4).is_err());
    }

    #[test]
    fn tilde_fixes_p() {
        for k in 2..=5 {
            let p = p_point(1, k);
            assert_eq!(limit_point(&p, &lambda_tilde(k)).unwrap(), p);
            assert_eq!(toral_dimension(&lambda_tilde(k), k).unwrap(), 1);
        }
    }

    #[test]
    fn toral_lambda2() {
        assert_eq!(toral_dimension(&lambda_sigma(2, 4).unwrap(), 4).unwrap(), 2);
        let l = OneParamSubgroup::from_ints(&[1, -5, 3, 4]);
        assert!(toral_dimension(&l, 4).unwrap() >= 2);
    }

    #[test]
    fn degenerate_degree_two_column() {
        let cols = z_closed_form_columns(2, 4, Kind::Mu).unwrap();
        assert_eq!(cols[1].len(), 1);
        assert!(cols[1].contains_key(&parse_monomial("e1^2").unwrap()));
    }
}
