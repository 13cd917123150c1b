//! Multi-indices, partitions, compositions and the ordered bases of
//! Sym^{<=k} C^n.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A monomial e_{i1} e_{i2} ... e_{id} of Sym^d C^n, stored as the sorted
/// tuple (i1 <= ... <= id) with 1-based entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymMonomial(Vec<u8>);

impl SymMonomial {
    pub fn new(mut entries: Vec<u8>) -> Self {
        assert!(entries.iter().all(|&e| e >= 1), "entries are 1-based");
        entries.sort_unstable();
        SymMonomial(entries)
    }

    pub fn single(i: usize) -> Self {
        SymMonomial(vec![i as u8])
    }

    /// From an exponent vector (a_1, ..., a_p), i.e. e_1^{a_1} ... e_p^{a_p}.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v = Vec::new();
        for (i, &a) in exps.iter().enumerate() {
            v.extend(std::iter::repeat((i + 1) as u8).take(a as usize));
        }
        SymMonomial(v)
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &i in &self.0 {
            e[i as usize - 1] += 1;
        }
        e
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Sum of the entries; the weight under diag(1, 2, ..., n).
    pub fn index_sum(&self) -> usize {
        self.0.iter().map(|&i| i as usize).sum()
    }

    pub fn max_entry(&self) -> usize {
        self.0.last().map_or(0, |&i| i as usize)
    }

    pub fn mul(&self, other: &SymMonomial) -> SymMonomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        SymMonomial(v)
    }

    /// Number of occurrences of `b`.
    pub fn multiplicity(&self, b: usize) -> usize {
        self.0.iter().filter(|&&i| i as usize == b).count()
    }

    /// Replaces one occurrence of `b` by `a`.
    pub fn replace_one(&self, b: usize, a: usize) -> Option<SymMonomial> {
        let pos = self.0.iter().position(|&i| i as usize == b)?;
        let mut v = self.0.clone();
        v[pos] = a as u8;
        v.sort_unstable();
        Some(SymMonomial(v))
    }

    /// |tau|! / prod(mult!) for the multiset of entries.
    pub fn multinomial(&self) -> u128 {
        perm_of(&self.0.iter().map(|&x| x as u32).collect::<Vec<_>>())
    }
}

impl Ord for SymMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SymMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == v).count();
            if run == 1 {
                write!(f, "e{v}")?;
            } else {
                write!(f, "e{v}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl Serialize for SymMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u8>::deserialize(d)?;
        if v.is_empty() || v.contains(&0) || v.windows(2).any(|w| w[0] > w[1]) {
            return Err(serde::de::Error::custom("monomial entries must be 1-based and sorted"));
        }
        Ok(SymMonomial(v))
    }
}

pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// dim Sym^i C^n.
pub fn sym_dim(n: usize, i: usize) -> usize {
    binomial((n + i - 1) as u64, i as u64) as usize
}

/// dim Sym^{<=k} C^n, degrees 1..k.
pub fn sym_le_dim(n: usize, k: usize) -> usize {
    (1..=k).map(|i| sym_dim(n, i)).sum()
}

/// Monomials of degree exactly `d` in lexicographic order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<SymMonomial> {
    fn rec(n: u8, d: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<SymMonomial>) {
        if cur.len() == d {
            out.push(SymMonomial(cur.clone()));
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u8, d, 1, &mut Vec::new(), &mut out);
    out
}

/// The ordered basis of Sym^{<=k} C^n with position lookup and a product table.
#[derive(Clone, Debug)]
pub struct SymBasis {
    n: usize,
    k: usize,
    elems: Vec<SymMonomial>,
    index: HashMap<SymMonomial, usize>,
}

impl SymBasis {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k >= 1 && n < 256, "basis needs 1 <= n < 256, k >= 1");
        let elems = enumerate_sym_basis(n, k);
        let index = elems.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        SymBasis { n, k, elems, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[SymMonomial] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &SymMonomial {
        &self.elems[i]
    }

    pub fn position(&self, m: &SymMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Positions of the degree-`d` block.
    pub fn block(&self, d: usize) -> std::ops::Range<usize> {
        let start = sym_le_dim_from(self.n, d);
        start..start + sym_dim(self.n, d)
    }

    /// Table of positions of products, `None` when the degree exceeds k.
    pub fn product_table(&self) -> Vec<Vec<Option<usize>>> {
        self.elems
            .iter()
            .map(|a| {
                self.elems
                    .iter()
                    .map(|b| {
                        if a.degree() + b.degree() > self.k {
                            None
                        } else {
                            self.position(&a.mul(b))
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for SymBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k
    }
}

fn sym_le_dim_from(n: usize, d: usize) -> usize {
    (1..d).map(|i| sym_dim(n, i)).sum()
}

pub fn enumerate_sym_basis(n: usize, k: usize) -> Vec<SymMonomial> {
    (1..=k).flat_map(|d| monomials_of_degree(n, d)).collect()
}

/// A partition, parts stored in weakly increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntPartition(Vec<u32>);

impl IntPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1));
        parts.sort_unstable();
        IntPartition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, part: u32) -> bool {
        self.0.contains(&part)
    }

    pub fn as_monomial(&self) -> SymMonomial {
        SymMonomial::new(self.0.iter().map(|&p| p as u8).collect())
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// All partitions of m, ordered by length then lexicographically.
pub fn partitions_of(m: u32) -> Vec<IntPartition> {
    fn rec(rem: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
        if rem == 0 {
            out.push(IntPartition(cur.clone()));
            return;
        }
        for p in min..=rem {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, 1, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn perm_of(parts: &[u32]) -> u128 {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .values()
        .fold(factorial(parts.len() as u32), |acc, &c| acc / factorial(c))
}

/// Number of distinct orderings of the parts.
pub fn perm(tau: &IntPartition) -> u128 {
    perm_of(&tau.0)
}

/// d(i) = floor(i / sigma).
pub fn defect(sigma: u32, i: u32) -> u32 {
    assert!(sigma >= 2, "defect needs sigma >= 2");
    i / sigma
}

pub fn defect_of_partition(sigma: u32, tau: &IntPartition) -> u32 {
    tau.0.iter().map(|&i| defect(sigma, i)).sum()
}

/// Ordered compositions of m into positive parts.
pub fn compositions(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    // each subset of the m-1 gaps is a composition
    for mask in 0u64..(1u64 << (m - 1)) {
        let mut parts = Vec::new();
        let mut cur = 1;
        for g in 0..m - 1 {
            if mask & (1 << g) != 0 {
                parts.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        parts.push(cur);
        out.push(parts);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Ordered compositions of m into exactly `parts` positive parts.
pub fn compositions_into(m: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rem: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rem < left as u32 {
            return;
        }
        for p in 1..=rem - (left as u32 - 1) {
            cur.push(p);
            rec(rem - p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(m, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Ordered tuples of nonzero exponent vectors summing to `s` componentwise.
pub fn vector_compositions(s: &[u32]) -> Vec<Vec<Vec<u32>>> {
    fn pieces(s: &[u32]) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &c in s {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=c).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.retain(|v| v.iter().any(|&x| x > 0));
        out
    }
    fn rec(s: &[u32], cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if s.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for t in pieces(s) {
            let rest: Vec<u32> = s.iter().zip(&t).map(|(a, b)| a - b).collect();
            cur.push(t);
            rec(&rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s.iter().any(|&x| x > 0) {
        rec(s, &mut Vec::new(), &mut out);
    }
    out
}

/// Strictly increasing positions into an ordered basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct WedgeIndex(Vec<usize>);

impl WedgeIndex {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("wedge positions must increase strictly".into()));
        }
        Ok(WedgeIndex(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }
}
