//! Infinitesimal gl(n) action on wedges of Sym^{<=k}C^n and stabilizer
//! dimensions.
//!
//! Twist reduction. Let v = w^{⊗a} ⊗ f^{⊗b} with f = e₁∧⋯∧e_p. Expanding
//! X·v slot by slot, the part of X·f outside the line of f lands in a single
//! slot, and these contributions are linearly independent across slots and
//! independent of the w-slot terms. Hence X·v = 0 iff X preserves
//! span(e₁,…,e_p) and a·X·w + b·tr(X|span(e₁,…,e_p))·w = 0. The projective
//! version only asks X·w ∈ C·w together with the same invariance of the span.
//! `full_tensor_stabilizer` checks this against the unreduced computation.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{same_span, Echelon};
use crate::exact::{RatMatrix, Rational};
use crate::flag::WedgeVector;
use crate::sym::SymMonomial;

/// An element of gl(n) or sl(n).
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement {
    pub matrix: RatMatrix,
}

impl LieElement {
    pub fn from_flat(n: usize, v: &[Rational]) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = v[a * n + b].clone();
            }
        }
        LieElement { matrix: m }
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.matrix.to_rows().into_iter().flatten().collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.matrix.rows()).map(|i| self.matrix[(i, i)].clone()).sum()
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn is_strictly_upper(&self) -> bool {
        let n = self.matrix.rows();
        (0..n).all(|i| (0..=i).all(|j| self.matrix[(i, j)].is_zero()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Gl,
    Sl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Affine,
    Projective,
}

/// The point w^{⊗a} ⊗ (e₁∧⋯∧e_p)^{⊗b}.
#[derive(Clone, Debug)]
pub struct Twist {
    pub a: u64,
    pub b: u64,
    pub p: usize,
}

impl Twist {
    /// p_k ⊗ e₁^{⊗K}.
    pub fn e1(k_power: u64) -> Self {
        Twist { a: 1, b: k_power, p: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub dimension: usize,
    pub basis: Vec<LieElement>,
}

/// E_{a←b}·e_τ = mult_b(τ)·e_{τ with one b replaced by a}; indices 1-based.
pub fn act_on_monomial(a: usize, b: usize, tau: &SymMonomial) -> Option<(SymMonomial, u64)> {
    let m = tau.multiplicity(b);
    if m == 0 {
        return None;
    }
    Some((tau.replace_one(b, a)?, m as u64))
}

/// E_{a←b}·w by the Leibniz rule.
pub fn act_on_wedge(a: usize, b: usize, w: &WedgeVector) -> WedgeVector {
    let mut terms = Vec::new();
    for (factors, c) in w.terms() {
        for (j, f) in factors.iter().enumerate() {
            if let Some((g, m)) = act_on_monomial(a, b, f) {
                let mut nf = factors.clone();
                nf[j] = g;
                terms.push((nf, c * Rational::from_integer(m.into())));
            }
        }
    }
    WedgeVector::from_terms(w.n, w.k, w.r, terms)
}

/// X·w for a concrete matrix.
pub fn apply_lie(x: &LieElement, w: &WedgeVector) -> WedgeVector {
    let n = w.n;
    let mut acc = WedgeVector::zero(w.n, w.k, w.r);
    for a in 0..n {
        for b in 0..n {
            let c = &x.matrix[(a, b)];
            if !c.is_zero() {
                acc = acc.plus(&act_on_wedge(a + 1, b + 1, w).scale(c));
            }
        }
    }
    acc
}

/// Accumulates sparse linear equations in a fixed number of unknowns.
struct System {
    unknowns: usize,
    rows: BTreeMap<Vec<SymMonomial>, BTreeMap<usize, Rational>>,
    extra: Vec<Vec<Rational>>,
}

impl System {
    fn new(unknowns: usize) -> Self {
        System { unknowns, rows: BTreeMap::new(), extra: Vec::new() }
    }

    fn add(&mut self, w: &WedgeVector, unknown: usize, scale: &Rational) {
        for (f, c) in w.terms() {
            let row = self.rows.entry(f.clone()).or_default();
            *row.entry(unknown).or_insert_with(Rational::zero) += c * scale;
        }
    }

    fn fix_zero(&mut self, unknown: usize) {
        let mut r = vec![Rational::zero(); self.unknowns];
        r[unknown] = Rational::one();
        self.extra.push(r);
    }

    fn kernel(self) -> Vec<Vec<Rational>> {
        let mut dense: Vec<Vec<Rational>> = self
            .rows
            .into_values()
            .map(|r| {
                let mut v = vec![Rational::zero(); self.unknowns];
                for (i, c) in r {
                    v[i] = c;
                }
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        dense.extend(self.extra);
        Echelon::of_rows(dense, self.unknowns).kernel()
    }
}

/// Stabilizer of w (optionally twisted) inside gl(n) or sl(n), affinely or
/// projectively.
pub fn infinitesimal_stabilizer(
    w: &WedgeVector,
    twist: Option<&Twist>,
    algebra: Algebra,
    mode: Mode,
) -> Result<Stabilizer> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = w.n;
    if let Some(t) = twist {
        if t.p == 0 || t.p > n || t.a == 0 {
            return Err(Error::InvalidInput("twist needs 1 <= p <= n and a >= 1".into()));
        }
    }
    let nx = n * n;
    let c_index = nx;
    let unknowns = if mode == Mode::Projective { nx + 1 } else { nx };
    let mut sys = System::new(unknowns);
    let images: Vec<WedgeVector> =
        (0..nx).map(|u| act_on_wedge(u / n + 1, u % n + 1, w)).collect();
    let weight = twist.map_or(Rational::one(), |t| Rational::from_integer(t.a.into()));
    for (u, img) in images.iter().enumerate() {
        sys.add(img, u, &weight);
    }
    if let Some(t) = twist {
        for i in t.p..n {
            for j in 0..t.p {
                sys.fix_zero(i * n + j);
            }
        }
        if mode == Mode::Affine {
            let b = Rational::from_integer(t.b.into());
            for i in 0..t.p {
                sys.add(w, i * n + i, &b);
            }
        }
    }
    if mode == Mode::Projective {
        sys.add(w, c_index, &-Rational::one());
    }
    if algebra == Algebra::Sl {
        let mut tr = vec![Rational::zero(); unknowns];
        for i in 0..n {
            tr[i * n + i] = Rational::one();
        }
        sys.extra.push(tr);
    }
    let basis: Vec<LieElement> =
        sys.kernel().iter().map(|v| LieElement::from_flat(n, &v[..nx])).collect();
    Ok(Stabilizer { dimension: basis.len(), basis })
}

/// Affine stabilizer of w ⊗ e₁^{⊗K} computed on the full tensor product.
pub fn full_tensor_stabilizer(w: &WedgeVector, k_power: usize, algebra: Algebra) -> Result<Stabilizer> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = w.n;
    let nx = n * n;
    type Key = (Vec<SymMonomial>, Vec<u8>);
    let mut rows: HashMap<Key, Vec<Rational>> = HashMap::new();
    let ones = vec![1u8; k_power];
    let mut add = |key: Key, u: usize, c: Rational| {
        let row = rows.entry(key).or_insert_with(|| vec![Rational::zero(); nx]);
        row[u] += c;
    };
    for u in 0..nx {
        let (a, b) = (u / n + 1, u % n + 1);
        for (f, c) in act_on_wedge(a, b, w).terms() {
            add((f.clone(), ones.clone()), u, c.clone());
        }
        if b == 1 {
            for slot in 0..k_power {
                let mut s = ones.clone();
                s[slot] = a as u8;
                for (f, c) in w.terms() {
                    add((f.clone(), s.clone()), u, c.clone());
                }
            }
        }
    }
    let mut eqs: Vec<Vec<Rational>> = rows.into_values().collect();
    if algebra == Algebra::Sl {
        let mut tr = vec![Rational::zero(); nx];
        for i in 0..n {
            tr[i * n + i] = Rational::one();
        }
        eqs.push(tr);
    }
    let basis: Vec<LieElement> =
        Echelon::of_rows(eqs, nx).kernel().iter().map(|v| LieElement::from_flat(n, v)).collect();
    Ok(Stabilizer { dimension: basis.len(), basis })
}

/// Two stabilizers span the same subspace of gl(n).
pub fn same_algebra(a: &Stabilizer, b: &Stabilizer, n: usize) -> bool {
    let fa: Vec<Vec<Rational>> = a.basis.iter().map(LieElement::flat).collect();
    let fb: Vec<Vec<Rational>> = b.basis.iter().map(LieElement::flat).collect();
    same_span(&fa, &fb, n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{p_point, sym_vector};

    #[test]
    fn derivation_on_monomials() {
        let t = SymMonomial::new(vec![1, 1, 2]);
        assert_eq!(act_on_monomial(3, 1, &t), Some((SymMonomial::new(vec![1, 2, 3]), 2)));
        assert_eq!(act_on_monomial(3, 3, &t), None);
    }

    #[test]
    fn lemma_k2() {
        let p = p_point(1, 2);
        let s = infinitesimal_stabilizer(&p, Some(&Twist::e1(4)), Algebra::Sl, Mode::Affine).unwrap();
        assert_eq!(s.dimension, 1);
        assert!(s.basis[0].is_strictly_upper());
    }

    #[test]
    fn twist_reduction_matches_full_tensor() {
        let p = p_point(1, 2);
        for alg in [Algebra::Gl, Algebra::Sl] {
            let reduced = infinitesimal_stabilizer(&p, Some(&Twist::e1(2)), alg, Mode::Affine).unwrap();
            let full = full_tensor_stabilizer(&p, 2, alg).unwrap();
            assert!(same_algebra(&reduced, &full, 2));
        }
    }

    #[test]
    fn top_cell_projective() {
        let w = WedgeVector::wedge(2, 2, &[sym_vector(&[("e1", 1)]), sym_vector(&[("e2", 1)])]);
        let s = infinitesimal_stabilizer(&w, None, Algebra::Sl, Mode::Projective).unwrap();
        assert_eq!(s.dimension, 3);
        let gl = infinitesimal_stabilizer(&w, None, Algebra::Gl, Mode::Affine).unwrap();
        assert_eq!(gl.dimension, 3);
    }

    #[test]
    fn apply_matches_images() {
        let p = p_point(1, 3);
        let mut x = RatMatrix::zeros(3, 3);
        x[(0, 1)] = Rational::one();
        let via = apply_lie(&LieElement { matrix: x }, &p);
        assert_eq!(via, act_on_wedge(1, 2, &p));
    }
}
