//! The embedding φ of jets into Hom(Sym^{<=k}C^p, Sym^{<=k}C^n), wedge
//! vectors and the distinguished points p_k, p_{k,p}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::matrix::Echelon;
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{Matrix, RatMatrix, Rational, Scalar};
use crate::jet::JetMap;
use crate::sym::{sym_le_dim, vector_compositions, SymBasis, SymMonomial};

/// Sparse element of Sym^{<=k}C^n.
pub type SymVector = BTreeMap<SymMonomial, Rational>;

/// Rows: basis of Sym^{<=k}C^n. Columns: basis of Sym^{<=k}C^p.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiMatrix<T> {
    pub rows: Arc<SymBasis>,
    pub cols: Arc<SymBasis>,
    pub matrix: Matrix<T>,
}

/// Symmetric product γ_{s₁}⋯γ_{s_j} of vectors in C^n, as Sym^j coordinates.
fn sym_product<T: Scalar>(vectors: &[&[T]], zero: &T) -> BTreeMap<SymMonomial, T> {
    let mut acc: BTreeMap<SymMonomial, T> = BTreeMap::new();
    acc.insert(SymMonomial::new(vec![]), zero.one_like());
    for v in vectors {
        let mut next: BTreeMap<SymMonomial, T> = BTreeMap::new();
        for (m, c) in &acc {
            for (a, x) in v.iter().enumerate() {
                if x.vanishes() {
                    continue;
                }
                let key = m.mul(&SymMonomial::single(a + 1));
                let e = next.entry(key).or_insert_with(|| zero.clone());
                *e = e.plus(&c.times(x));
            }
        }
        next.retain(|_, v| !v.vanishes());
        acc = next;
    }
    acc
}

/// φ(γ): column s is Σ over ordered tuples (s₁,…,s_j) of nonzero
/// multi-indices with s₁+⋯+s_j = s of γ_{s₁}⋯γ_{s_j} ∈ Sym^j C^n.
pub fn phi<T: Scalar>(gamma: &JetMap<T>) -> PhiMatrix<T> {
    let p = gamma.source_dim();
    let n = gamma.target_dim();
    let k = gamma.order();
    let rows = Arc::new(SymBasis::new(n, k));
    let cols = Arc::new(SymBasis::new(p, k));
    let zero = gamma.zero_entry().clone();
    let mut m = Matrix::filled(rows.len(), cols.len(), zero.clone());
    for (j, s) in cols.elems().iter().enumerate() {
        for tuple in vector_compositions(&s.exponents(p)) {
            let vecs: Vec<&[T]> = tuple
                .iter()
                .map(|piece| gamma.coeff(&SymMonomial::from_exponents(piece)))
                .collect();
            for (mono, c) in sym_product(&vecs, &zero) {
                let i = rows.position(&mono).unwrap();
                m[(i, j)] = m[(i, j)].plus(&c);
            }
        }
    }
    PhiMatrix { rows, cols, matrix: m }
}

impl PhiMatrix<Rational> {
    pub fn column_vector(&self, j: usize) -> SymVector {
        (0..self.matrix.rows())
            .filter(|&i| !self.matrix[(i, j)].is_zero())
            .map(|i| (self.rows.get(i).clone(), self.matrix[(i, j)].clone()))
            .collect()
    }
}

/// Sparse element of ∧^r(Sym^{<=k}C^n); factors of each term are strictly
/// increasing in the basis order and the coefficient carries the sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    terms: BTreeMap<Vec<SymMonomial>, Rational>,
}

impl WedgeVector {
    pub fn zero(n: usize, k: usize, r: usize) -> Self {
        WedgeVector { n, k, r, terms: BTreeMap::new() }
    }

    /// Builds from unnormalized factor tuples.
    pub fn from_terms(
        n: usize,
        k: usize,
        r: usize,
        terms: impl IntoIterator<Item = (Vec<SymMonomial>, Rational)>,
    ) -> Self {
        let mut w = Self::zero(n, k, r);
        for (factors, c) in terms {
            assert_eq!(factors.len(), r, "wedge rank");
            if let Some((sorted, sign)) = normalize(factors) {
                w.add_term(sorted, if sign { -c } else { c });
            }
        }
        w
    }

    /// The exterior product c₁∧⋯∧c_r, expanded term by term.
    pub fn wedge(n: usize, k: usize, columns: &[SymVector]) -> Self {
        let mut acc: BTreeMap<Vec<SymMonomial>, Rational> = BTreeMap::new();
        acc.insert(vec![], Rational::one());
        for col in columns {
            let mut next: BTreeMap<Vec<SymMonomial>, Rational> = BTreeMap::new();
            for (factors, c) in &acc {
                for (m, x) in col {
                    let pos = match factors.binary_search(m) {
                        Ok(_) => continue,
                        Err(pos) => pos,
                    };
                    let mut f = factors.clone();
                    f.insert(pos, m.clone());
                    let mut v = c * x;
                    if (factors.len() - pos) % 2 == 1 {
                        v = -v;
                    }
                    *next.entry(f).or_insert_with(Rational::zero) += v;
                }
            }
            next.retain(|_, v| !v.is_zero());
            acc = next;
        }
        WedgeVector { n, k, r: columns.len(), terms: acc }
    }

    fn add_term(&mut self, factors: Vec<SymMonomial>, c: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<SymMonomial>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, factors: &[SymMonomial]) -> Rational {
        self.terms.get(factors).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn plus(&self, other: &WedgeVector) -> WedgeVector {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> WedgeVector {
        if r.is_zero() {
            return Self::zero(self.n, self.k, self.r);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= r;
        }
        out
    }

    pub fn retain(&self, mut keep: impl FnMut(&[SymMonomial]) -> bool) -> WedgeVector {
        let mut out = self.clone();
        out.terms.retain(|f, _| keep(f));
        out
    }

    /// Some(c) with self = c·other, if proportional.
    pub fn ratio_to(&self, other: &WedgeVector) -> Option<Rational> {
        if self.terms.len() != other.terms.len() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (f0, c0) = other.terms.iter().next().unwrap();
        let ratio = self.terms.get(f0)? / c0;
        other
            .terms
            .iter()
            .all(|(f, c)| self.terms.get(f) == Some(&(c * &ratio)))
            .then_some(ratio)
    }

    pub fn is_proportional(&self, other: &WedgeVector) -> bool {
        !self.is_zero() && !other.is_zero() && self.ratio_to(other).is_some()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<WedgeTermJson> = self
            .terms
            .iter()
            .map(|(f, c)| WedgeTermJson { factors: f.clone(), coeff: format_rational(c) })
            .collect();
        serde_json::to_value(WedgeJson { n: self.n, k: self.k, r: self.r, terms }).unwrap()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: WedgeJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("wedge JSON: {e}")))?;
        let mut terms = Vec::new();
        for t in raw.terms {
            if t.factors.len() != raw.r {
                return Err(Error::InvalidInput("wedge term of wrong rank".into()));
            }
            terms.push((t.factors, parse_rational(&t.coeff)?));
        }
        Ok(Self::from_terms(raw.n, raw.k, raw.r, terms))
    }
}

/// Sorts factors; None if a factor repeats, else (sorted, odd permutation).
fn normalize(mut factors: Vec<SymMonomial>) -> Option<(Vec<SymMonomial>, bool)> {
    let mut odd = false;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            factors.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if factors.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((factors, odd))
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (factors, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = factors.iter().map(|m| m.to_string()).collect();
            if c.is_one() {
                write!(f, "{}", names.join("∧"))?;
            } else {
                write!(f, "({})·{}", c, names.join("∧"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WedgeTermJson {
    factors: Vec<SymMonomial>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct WedgeJson {
    n: usize,
    k: usize,
    r: usize,
    terms: Vec<WedgeTermJson>,
}

/// Wedge of the selected columns of φ(γ).
pub fn wedge_columns(m: &PhiMatrix<Rational>, columns: &[usize]) -> Result<WedgeVector> {
    let mut seen = columns.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != columns.len() {
        return Err(Error::InvalidInput("column subset has repeats".into()));
    }
    if columns.iter().any(|&c| c >= m.matrix.cols()) {
        return Err(Error::InvalidInput("column out of range".into()));
    }
    let cols: Vec<SymVector> = columns.iter().map(|&j| m.column_vector(j)).collect();
    Ok(WedgeVector::wedge(m.rows.n(), m.rows.k(), &cols))
}

/// The identity jet C^p -> C^n, n = sym^{<=k}(p), sending u^s to e_{pos(s)}.
pub fn identity_embedding(p: usize, k: usize) -> JetMap<Rational> {
    let n = sym_le_dim(p, k);
    let mut j = JetMap::zero_jet(p, n, k, Rational::zero());
    for i in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        j.set_coeff_at(i, v);
    }
    j
}

/// The columns of φ at the identity embedding.
pub fn distinguished_columns(p: usize, k: usize) -> Vec<SymVector> {
    let f = phi(&identity_embedding(p, k));
    (0..f.matrix.cols()).map(|j| f.column_vector(j)).collect()
}

/// p_k (p = 1) and p_{k,p}: the wedge of all columns of φ(identity).
pub fn p_point(p: usize, k: usize) -> WedgeVector {
    let n = sym_le_dim(p, k);
    WedgeVector::wedge(n, k, &distinguished_columns(p, k))
}

/// Number of expanded terms of p_{k,p} before cancellation.
pub fn p_point_term_bound(p: usize, k: usize) -> u128 {
    distinguished_columns(p, k).iter().map(|c| c.len() as u128).product()
}

/// True iff some term uses only degree-1 factors.
pub fn in_affine_chart(w: &WedgeVector) -> bool {
    w.terms().any(|(f, _)| f.iter().all(|m| m.degree() == 1))
}

/// For each d ≤ k, a basis of the span of the columns of source degree ≤ d.
pub fn flag_spans(m: &PhiMatrix<Rational>) -> Vec<Vec<Vec<Rational>>> {
    let k = m.cols.k();
    (1..=k)
        .map(|d| {
            let cols: Vec<Vec<Rational>> = (0..m.matrix.cols())
                .filter(|&j| m.cols.get(j).degree() <= d)
                .map(|j| m.matrix.column(j))
                .collect();
            let e = Echelon::of_rows(cols, m.matrix.rows());
            e.rows
                .iter()
                .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
                .collect()
        })
        .collect()
}

/// The matrix of g ∈ GL(n) acting on Sym^{<=k}C^n: e_τ ↦ ∏ g·e_{τ_j}.
pub fn induced_sym_action(g: &RatMatrix, k: usize) -> RatMatrix {
    let n = g.rows();
    let basis = SymBasis::new(n, k);
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| g.column(j)).collect();
    let mut out = RatMatrix::zeros(basis.len(), basis.len());
    for (j, tau) in basis.elems().iter().enumerate() {
        let vecs: Vec<&[Rational]> =
            tau.entries().iter().map(|&e| columns[e as usize - 1].as_slice()).collect();
        for (mono, c) in sym_product(&vecs, &Rational::zero()) {
            out[(basis.position(&mono).unwrap(), j)] = c;
        }
    }
    out
}

/// Applies a Sym-level action to a sparse vector.
pub fn apply_to_sym_vector(g: &RatMatrix, basis: &SymBasis, v: &SymVector) -> SymVector {
    let mut out = SymVector::new();
    for (m, c) in v {
        let j = basis.position(m).unwrap();
        for i in 0..g.rows() {
            if !g[(i, j)].is_zero() {
                *out.entry(basis.get(i).clone()).or_insert_with(Rational::zero) += &g[(i, j)] * c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Dense coordinates of a sparse vector in the basis order.
pub fn dense(v: &SymVector, basis: &SymBasis) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); basis.len()];
    for (m, c) in v {
        out[basis.position(m).unwrap()] = c.clone();
    }
    out
}

/// Parses a monomial label such as `e1^2e3` or `e1e2`.
pub fn parse_monomial(s: &str) -> Result<SymMonomial> {
    let bad = || Error::InvalidInput(format!("bad monomial {s:?}"));
    let mut entries = Vec::new();
    for part in s.split('e').skip(1) {
        let (idx, pow) = match part.split_once('^') {
            Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad())?),
            None => (part, 1),
        };
        let i: u8 = idx.parse().map_err(|_| bad())?;
        entries.extend(std::iter::repeat(i).take(pow));
    }
    if entries.is_empty() || !s.starts_with('e') {
        return Err(bad());
    }
    Ok(SymMonomial::new(entries))
}

/// Builds a sparse vector from `(label, coefficient)` pairs.
pub fn sym_vector(items: &[(&str, i64)]) -> SymVector {
    items
        .iter()
        .map(|(m, c)| (parse_monomial(m).unwrap(), Rational::from_integer((*c).into())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn identity_columns_p1() {
        let cols = distinguished_columns(1, 3);
        assert_eq!(cols[1], sym_vector(&[("e2", 1), ("e1^2", 1)]));
        assert_eq!(cols[2], sym_vector(&[("e3", 1), ("e1e2", 2), ("e1^3", 1)]));
    }

    #[test]
    fn p2_and_p3() {
        let p2 = p_point(1, 2);
        let expected = WedgeVector::from_terms(
            2,
            2,
            2,
            [
                (vec![parse_monomial("e1").unwrap(), parse_monomial("e2").unwrap()], int(1)),
                (vec![parse_monomial("e1").unwrap(), parse_monomial("e1^2").unwrap()], int(1)),
            ],
        );
        assert_eq!(p2, expected);
        assert!(in_affine_chart(&p2));
        assert_eq!(p_point(1, 3).len(), 6);
    }

    #[test]
    fn degenerate_jet() {
        let mut g = JetMap::zero_jet(1, 3, 3, Rational::zero());
        g.set_coeff_at(0, vec![int(1), int(0), int(0)]);
        let w = wedge_columns(&phi(&g), &[0, 1, 2]).unwrap();
        let expected = WedgeVector::from_terms(
            3,
            3,
            3,
            [(["e1", "e1^2", "e1^3"].iter().map(|m| parse_monomial(m).unwrap()).collect(), int(1))],
        );
        assert_eq!(w, expected);
        assert!(!in_affine_chart(&w));
        assert!(!in_affine_chart(&WedgeVector::zero(3, 3, 3)));
        assert!(wedge_columns(&phi(&g), &[0, 0]).is_err());
    }

    #[test]
    fn repeated_column_vanishes() {
        let c = sym_vector(&[("e1", 1), ("e2", 3)]);
        assert!(WedgeVector::wedge(2, 2, &[c.clone(), c]).is_zero());
    }

    #[test]
    fn sign_normalization() {
        let e1 = parse_monomial("e1").unwrap();
        let e2 = parse_monomial("e2").unwrap();
        let w = WedgeVector::from_terms(2, 1, 2, [(vec![e2.clone(), e1.clone()], int(1))]);
        assert_eq!(w.coefficient(&[e1.clone(), e2.clone()]), int(-1));
        let v = WedgeVector::wedge(2, 1, &[sym_vector(&[("e2", 1)]), sym_vector(&[("e1", 1)])]);
        assert_eq!(v, w);
        let json = w.to_json();
        assert_eq!(json["terms"][0]["factors"], serde_json::json!([[1], [2]]));
        assert_eq!(WedgeVector::from_json(&json).unwrap(), w);
    }

    #[test]
    fn flag_of_degenerate_jet() {
        let mut g = JetMap::zero_jet(1, 2, 2, Rational::zero());
        g.set_coeff_at(0, vec![int(1), int(0)]);
        let spans = flag_spans(&phi(&g));
        assert_eq!(spans.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2]);
    }
}
