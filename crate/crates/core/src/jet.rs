//! Truncated jets, their composition and the reparametrization groups as
//! explicit matrices.
//!
//! Coefficients are normalized Taylor coefficients: the jet f stores the
//! vectors c_s with f(u) = sum_s c_s u^s, so c_i = f^{(i)}(0)/i! when p = 1.
//! Jets act as coefficient row arrays and a reparametrization ψ acts on the
//! right: coeffs(γ∘ψ) = coeffs(γ) · group_matrix(ψ).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{Matrix, RatMatrix, Rational, Scalar, SparsePolynomial, VarSet};
use crate::sym::{compositions_into, vector_compositions, SymBasis, SymMonomial};

/// A k-jet of a germ (C^p, 0) -> (C^q, 0).
#[derive(Clone, Debug, PartialEq)]
pub struct JetMap<T> {
    p: usize,
    q: usize,
    k: usize,
    basis: Arc<SymBasis>,
    coeffs: Vec<Vec<T>>,
    zero: T,
}

impl<T: Scalar> JetMap<T> {
    /// `coeffs[i]` is the coefficient vector at the i-th source monomial.
    pub fn new(p: usize, q: usize, k: usize, coeffs: Vec<Vec<T>>, zero: T) -> Result<Self> {
        let basis = Arc::new(SymBasis::new(p, k));
        if coeffs.len() != basis.len() || coeffs.iter().any(|c| c.len() != q) {
            return Err(Error::DimensionMismatch(format!(
                "jet ({p},{q},{k}) needs {} vectors of length {q}",
                basis.len()
            )));
        }
        Ok(JetMap { p, q, k, basis, coeffs, zero })
    }

    pub fn zero_jet(p: usize, q: usize, k: usize, zero: T) -> Self {
        let basis = Arc::new(SymBasis::new(p, k));
        let coeffs = vec![vec![zero.clone(); q]; basis.len()];
        JetMap { p, q, k, basis, coeffs, zero }
    }

    pub fn identity(p: usize, k: usize, zero: T) -> Self {
        let mut j = Self::zero_jet(p, p, k, zero);
        for l in 0..p {
            j.coeffs[l][l] = j.zero.one_like();
        }
        j
    }

    pub fn source_dim(&self) -> usize {
        self.p
    }

    pub fn target_dim(&self) -> usize {
        self.q
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &SymBasis {
        &self.basis
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn coeffs(&self) -> &[Vec<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, s: &SymMonomial) -> &[T] {
        let i = self.basis.position(s).expect("source monomial outside the jet order");
        &self.coeffs[i]
    }

    pub fn coeff_at(&self, i: usize) -> &[T] {
        &self.coeffs[i]
    }

    pub fn set_coeff_at(&mut self, i: usize, v: Vec<T>) {
        assert_eq!(v.len(), self.q);
        self.coeffs[i] = v;
    }

    pub fn map<U: Scalar>(&self, zero: U, f: impl Fn(&T) -> U) -> JetMap<U> {
        JetMap {
            p: self.p,
            q: self.q,
            k: self.k,
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|v| v.iter().map(&f).collect()).collect(),
            zero,
        }
    }

    /// The linear part Φ₁ as a q×p matrix.
    pub fn linear_part(&self) -> Matrix<T> {
        let mut m = Matrix::filled(self.q, self.p, self.zero.clone());
        for col in 0..self.p {
            for row in 0..self.q {
                m[(row, col)] = self.coeffs[col][row].clone();
            }
        }
        m
    }

    /// The coefficient row array of target coordinate t, indexed by source basis.
    pub fn row_array(&self, t: usize) -> Vec<T> {
        self.coeffs.iter().map(|v| v[t].clone()).collect()
    }

    /// Scales the coefficient at s by λ^s.
    pub fn torus_act(&self, lambda: &[T]) -> Self {
        assert_eq!(lambda.len(), self.p);
        let mut out = self.clone();
        for (i, m) in self.basis.elems().iter().enumerate() {
            let mut f = self.zero.one_like();
            for &e in m.entries() {
                f = f.times(&lambda[e as usize - 1]);
            }
            out.coeffs[i] = self.coeffs[i].iter().map(|c| c.times(&f)).collect();
        }
        out
    }

    /// Applies a q×q matrix to every coefficient vector (the GL(q) action).
    pub fn left_linear(&self, g: &Matrix<T>) -> Result<Self> {
        if g.cols() != self.q {
            return Err(Error::DimensionMismatch("linear map width".into()));
        }
        let mut out = Self::zero_jet(self.p, g.rows(), self.k, self.zero.clone());
        for (i, v) in self.coeffs.iter().enumerate() {
            out.coeffs[i] = (0..g.rows())
                .map(|r| {
                    v.iter()
                        .enumerate()
                        .fold(self.zero.clone(), |acc, (c, x)| acc.plus(&g[(r, c)].times(x)))
                })
                .collect();
        }
        Ok(out)
    }
}

/// Truncated power series without constant term, indexed by a source basis.
struct SeriesRing<'a> {
    basis: &'a SymBasis,
    table: Vec<Vec<Option<usize>>>,
}

impl<'a> SeriesRing<'a> {
    fn new(basis: &'a SymBasis) -> Self {
        SeriesRing { table: basis.product_table(), basis }
    }

    fn mul<T: Scalar>(&self, a: &[T], b: &[T], zero: &T) -> Vec<T> {
        let mut out = vec![zero.clone(); self.basis.len()];
        for (i, x) in a.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.vanishes() {
                    continue;
                }
                if let Some(pos) = self.table[i][j] {
                    out[pos] = out[pos].plus(&x.times(y));
                }
            }
        }
        out
    }
}

/// Rows τ ∈ Sym^{<=k}C^q, columns ν ∈ Sym^{<=k}C^p: entry [u^ν] f(u)^τ.
pub fn power_matrix<T: Scalar>(f: &JetMap<T>) -> Matrix<T> {
    let target = SymBasis::new(f.q, f.k);
    let ring = SeriesRing::new(&f.basis);
    let mut powers: Vec<Vec<T>> = Vec::with_capacity(target.len());
    for tau in target.elems() {
        let entries = tau.entries();
        let last = *entries.last().unwrap() as usize - 1;
        let coordinate = f.row_array(last);
        let series = if entries.len() == 1 {
            coordinate
        } else {
            let prefix = SymMonomial::new(entries[..entries.len() - 1].to_vec());
            let pi = target.position(&prefix).unwrap();
            ring.mul(&powers[pi], &coordinate, &f.zero)
        };
        powers.push(series);
    }
    Matrix::from_rows(powers, f.zero.clone())
}

/// Formal substitution g(f(u)) truncated above degree k.
pub fn compose<T: Scalar>(g: &JetMap<T>, f: &JetMap<T>) -> Result<JetMap<T>> {
    if g.p != f.q || g.k != f.k {
        return Err(Error::DimensionMismatch(format!(
            "compose ({},{},{}) after ({},{},{})",
            g.p, g.q, g.k, f.p, f.q, f.k
        )));
    }
    let pm = power_matrix(f);
    let mut out = JetMap::zero_jet(f.p, g.q, f.k, f.zero.clone());
    for nu in 0..f.basis.len() {
        for t in 0..g.q {
            let mut acc = f.zero.clone();
            for tau in 0..pm.rows() {
                let a = &g.coeffs[tau][t];
                let b = &pm[(tau, nu)];
                if !a.vanishes() && !b.vanishes() {
                    acc = acc.plus(&a.times(b));
                }
            }
            out.coeffs[nu][t] = acc;
        }
    }
    Ok(out)
}

/// The matrix of ψ ∈ G_{k,p} acting on coefficient row arrays from the right.
pub fn group_matrix<T: Scalar>(psi: &JetMap<T>) -> Result<Matrix<T>> {
    if psi.p != psi.q {
        return Err(Error::DimensionMismatch("reparametrization must have p = q".into()));
    }
    if psi.linear_part().determinant_expand()?.vanishes() {
        return Err(Error::Singular);
    }
    Ok(power_matrix(psi))
}

/// (G_k)_{i,j} = Σ_{s₁+⋯+sᵢ=j} α_{s₁}⋯α_{sᵢ} over the variables `alpha[0..k]`.
pub fn gk_entry(i: usize, j: usize, alpha: &[SparsePolynomial]) -> SparsePolynomial {
    let zero = alpha[0].zero_like();
    compositions_into(j as u32, i)
        .into_iter()
        .fold(zero, |acc, comp| {
            let term = comp
                .iter()
                .fold(alpha[0].one_like(), |t, &s| t.times(&alpha[s as usize - 1]));
            acc.plus(&term)
        })
}

/// Entry (τ, ν) of the block matrix: Σ over ordered tuples of nonzero
/// ν₁+⋯+ν_l = ν of α^{τ[1]}_{ν₁}⋯α^{τ[l]}_{ν_l}, read from a symbolic ψ.
pub fn gkp_entry(tau: &SymMonomial, nu: &SymMonomial, psi: &JetMap<SparsePolynomial>) -> SparsePolynomial {
    let zero = psi.zero.clone();
    let l = tau.degree();
    if l > nu.degree() {
        return zero;
    }
    vector_compositions(&nu.exponents(psi.p))
        .into_iter()
        .filter(|t| t.len() == l)
        .fold(zero.clone(), |acc, tuple| {
            let term = tuple.iter().zip(tau.entries()).fold(zero.one_like(), |t, (piece, &c)| {
                let s = SymMonomial::from_exponents(piece);
                t.times(&psi.coeff(&s)[c as usize - 1])
            });
            acc.plus(&term)
        })
}

/// The inverse in G_{k,p}, by solving ψ∘χ = id degree by degree.
pub fn invert(psi: &JetMap<Rational>) -> Result<JetMap<Rational>> {
    if psi.p != psi.q {
        return Err(Error::DimensionMismatch("reparametrization must have p = q".into()));
    }
    let p = psi.p;
    let phi1_inv = psi.linear_part().inverse()?;
    let mut chi = JetMap::zero_jet(p, p, psi.k, Rational::zero());
    for m in 0..p {
        chi.coeffs[m] = phi1_inv.column(m);
    }
    for d in 2..=psi.k {
        let residual = compose(psi, &chi)?;
        for pos in psi.basis.block(d) {
            let r = &residual.coeffs[pos];
            chi.coeffs[pos] = phi1_inv.apply(r).into_iter().map(|x| -x).collect();
        }
    }
    Ok(chi)
}

/// Torus weight of the coordinate at source monomial s: its exponent vector.
pub fn torus_weights(p: usize, k: usize) -> Vec<(SymMonomial, Vec<u32>)> {
    SymBasis::new(p, k)
        .elems()
        .iter()
        .map(|m| (m.clone(), m.exponents(p)))
        .collect()
}

fn index_label(p: usize, s: &SymMonomial) -> String {
    if p == 1 {
        s.degree().to_string()
    } else {
        let e: Vec<String> = s.exponents(p).iter().map(u32::to_string).collect();
        e.join(",")
    }
}

/// Name of the jet coordinate u[s][j].
pub fn jet_var_name(p: usize, s: &SymMonomial, j: usize) -> String {
    format!("u[{}][{}]", index_label(p, s), j + 1)
}

/// Name of the reparametrization parameter: a[i] for p = 1, a[l][s] otherwise.
pub fn param_var_name(p: usize, s: &SymMonomial, l: usize) -> String {
    if p == 1 {
        format!("a[{}]", s.degree())
    } else {
        format!("a[{}][{}]", l + 1, index_label(p, s))
    }
}

fn symbolic_jet_with(
    p: usize,
    q: usize,
    k: usize,
    name: impl Fn(&SymMonomial, usize) -> String,
) -> (JetMap<SparsePolynomial>, Arc<VarSet>) {
    let basis = SymBasis::new(p, k);
    let mut names = Vec::new();
    for s in basis.elems() {
        for j in 0..q {
            names.push(name(s, j));
        }
    }
    let vars = VarSet::new(names);
    let zero = SparsePolynomial::zero(&vars);
    let coeffs = (0..basis.len())
        .map(|i| (0..q).map(|j| SparsePolynomial::var_at(&vars, i * q + j)).collect())
        .collect();
    (JetMap::new(p, q, k, coeffs, zero).unwrap(), vars)
}

/// The generic jet C^p -> C^n with coefficients u[s][j].
pub fn symbolic_jet(p: usize, n: usize, k: usize) -> (JetMap<SparsePolynomial>, Arc<VarSet>) {
    symbolic_jet_with(p, n, k, |s, j| jet_var_name(p, s, j))
}

/// The generic element of G_{k,p} with parameters a[..].
pub fn symbolic_reparam(p: usize, k: usize) -> (JetMap<SparsePolynomial>, Arc<VarSet>) {
    symbolic_jet_with(p, p, k, |s, l| param_var_name(p, s, l))
}

/// The generic unipotent element (identity linear part) for p = 1.
pub fn symbolic_unipotent(k: usize) -> (JetMap<SparsePolynomial>, Arc<VarSet>) {
    let names: Vec<String> = (2..=k).map(|i| format!("a[{i}]")).collect();
    let vars = VarSet::new(names);
    let zero = SparsePolynomial::zero(&vars);
    let mut coeffs = vec![vec![SparsePolynomial::one(&vars)]];
    for i in 0..k - 1 {
        coeffs.push(vec![SparsePolynomial::var_at(&vars, i)]);
    }
    (JetMap::new(1, 1, k, coeffs, zero).unwrap(), vars)
}

#[derive(Serialize, Deserialize)]
struct JetMapJson {
    p: usize,
    q: usize,
    k: usize,
    coeffs: BTreeMap<String, Vec<String>>,
}

impl JetMap<Rational> {
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = self
            .basis
            .elems()
            .iter()
            .zip(&self.coeffs)
            .map(|(s, v)| {
                let e: Vec<String> = s.exponents(self.p).iter().map(u32::to_string).collect();
                (format!("[{}]", e.join(",")), v.iter().map(format_rational).collect())
            })
            .collect();
        serde_json::to_value(JetMapJson { p: self.p, q: self.q, k: self.k, coeffs }).unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: JetMapJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("jet JSON: {e}")))?;
        if raw.p == 0 || raw.q == 0 || raw.k == 0 {
            return Err(Error::InvalidInput("jet sizes must be positive".into()));
        }
        let mut jet = Self::zero_jet(raw.p, raw.q, raw.k, Rational::zero());
        for (key, vals) in &raw.coeffs {
            let inner = key
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::InvalidInput(format!("bad multi-index {key:?}")))?;
            let exps: Vec<u32> = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad multi-index {key:?}")))?;
            if exps.len() != raw.p {
                return Err(Error::InvalidInput(format!("multi-index {key:?} has wrong length")));
            }
            let s = SymMonomial::from_exponents(&exps);
            let pos = jet
                .basis
                .position(&s)
                .ok_or_else(|| Error::InvalidInput(format!("multi-index {key:?} outside 1..=k")))?;
            if vals.len() != raw.q {
                return Err(Error::InvalidInput(format!("coefficient {key:?} has wrong length")));
            }
            jet.coeffs[pos] = vals.iter().map(|v| parse_rational(v)).collect::<Result<_>>()?;
        }
        Ok(jet)
    }

    pub fn is_regular(&self) -> bool {
        self.linear_part().rank() == self.p
    }
}

/// Group product in G_{k,p}: the jet ψ₁∘ψ₂.
pub fn group_product(psi1: &JetMap<Rational>, psi2: &JetMap<Rational>) -> Result<JetMap<Rational>> {
    compose(psi1, psi2)
}

/// Whether every diagonal entry is one.
pub fn is_unipotent(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| m[(i, i)].is_unity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn jet1(vals: &[Rational]) -> JetMap<Rational> {
        JetMap::new(1, 1, vals.len(), vals.iter().map(|v| vec![v.clone()]).collect(), Rational::zero())
            .unwrap()
    }

    #[test]
    fn compose_k2_by_hand() {
        let (g1, g2, f1, f2) = (int(3), int(5), int(7), int(2));
        let g = jet1(&[g1.clone(), g2.clone()]);
        let f = jet1(&[f1.clone(), f2.clone()]);
        let c = compose(&g, &f).unwrap();
        assert_eq!(c.coeffs()[0][0], &g1 * &f1);
        assert_eq!(c.coeffs()[1][0], &g1 * &f2 + &g2 * &f1 * &f1);
        let id = JetMap::identity(1, 2, Rational::zero());
        assert_eq!(compose(&id, &f).unwrap(), f);
    }

    #[test]
    fn eq1_top_block() {
        let (psi, vars) = symbolic_reparam(1, 2);
        let m = group_matrix(&psi).unwrap();
        let p = |s: &str| SparsePolynomial::parse(&vars, s).unwrap();
        assert_eq!(m[(0, 0)], p("a[1]"));
        assert_eq!(m[(0, 1)], p("a[2]"));
        assert_eq!(m[(1, 0)], p("0"));
        assert_eq!(m[(1, 1)], p("a[1]^2"));
    }

    #[test]
    fn invert_k2_by_hand() {
        let a1 = rat(3, 2);
        let a2 = int(-5);
        let inv = invert(&jet1(&[a1.clone(), a2.clone()])).unwrap();
        assert_eq!(inv.coeffs()[0][0], int(1) / &a1);
        assert_eq!(inv.coeffs()[1][0], -&a2 / (&a1 * &a1 * &a1));
        let id = JetMap::identity(2, 3, Rational::zero());
        assert_eq!(invert(&id).unwrap(), id);
        assert_eq!(invert(&jet1(&[int(0), int(1)])), Err(Error::Singular));
    }

    #[test]
    fn gk_entries() {
        let (_, vars) = symbolic_reparam(1, 4);
        let alpha: Vec<SparsePolynomial> =
            (0..4).map(|i| SparsePolynomial::var_at(&vars, i)).collect();
        assert_eq!(gk_entry(2, 3, &alpha), SparsePolynomial::parse(&vars, "2*a[1]*a[2]").unwrap());
        assert!(gk_entry(3, 2, &alpha).vanishes());
        assert_eq!(gk_entry(1, 4, &alpha), alpha[3]);
    }

    #[test]
    fn torus_weight_table() {
        let w = torus_weights(2, 3);
        let get = |e: &[u32]| w.iter().find(|(m, _)| m.exponents(2) == e).unwrap().1.clone();
        assert_eq!(get(&[1, 1]), vec![1, 1]);
        assert_eq!(get(&[3, 0]), vec![3, 0]);
        assert_eq!(torus_weights(1, 3)[2].1, vec![3]);
    }

    #[test]
    fn json_round_trip() {
        let j = JetMap::identity(2, 2, Rational::zero());
        let v = j.to_json();
        assert_eq!(v["coeffs"]["[1,0]"], serde_json::json!(["1", "0"]));
        assert_eq!(JetMap::from_json(&v).unwrap(), j);
    }
}
