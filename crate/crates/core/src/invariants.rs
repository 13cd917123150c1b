//! Plücker-minor generators of the invariant algebras, their exact
//! verification, and the test-curve linear systems.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::poly::TermJson;
use crate::exact::rational::common_denominator;
use crate::exact::{Matrix, RatMatrix, Rational, Scalar, SparsePolynomial, VarSet};
use crate::flag::{phi, PhiMatrix};
use crate::jet::{compose, symbolic_jet, symbolic_unipotent, JetMap};
use crate::random::Sampler;
use crate::sym::{SymBasis, SymMonomial};

/// Which minor produced a generator: rows of φ and the leading column count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub rows: Vec<SymMonomial>,
    pub columns: usize,
}

#[derive(Clone, Debug)]
pub struct InvariantPoly {
    pub provenance: Provenance,
    /// Torus weight: Σ of the source multi-indices of the columns used.
    pub weighted_degree: Vec<i64>,
    /// Ordinary polynomial degree: the sum of the row degrees.
    pub degree: usize,
    row_positions: Vec<usize>,
    symbolic: Arc<PhiMatrix<SparsePolynomial>>,
    poly: OnceLock<SparsePolynomial>,
}

impl InvariantPoly {
    /// The minor as a polynomial in the jet variables, computed on first use.
    pub fn poly(&self) -> &SparsePolynomial {
        self.poly.get_or_init(|| {
            let cols: Vec<usize> = (0..self.provenance.columns).collect();
            self.symbolic
                .matrix
                .submatrix(&self.row_positions, &cols)
                .determinant_expand()
                .expect("square minor")
        })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.poly().vars()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GeneratorJson {
            provenance: &self.provenance,
            weighted_degree: &self.weighted_degree,
            degree: self.degree,
            polynomial: self.poly().term_list(),
        })
        .unwrap()
    }
}

#[derive(Serialize)]
struct GeneratorJson<'a> {
    provenance: &'a Provenance,
    weighted_degree: &'a [i64],
    degree: usize,
    polynomial: Vec<TermJson>,
}

/// All generators for one (n, k, p) together with a shared minor evaluator.
pub struct GeneratorSet {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub items: Vec<InvariantPoly>,
    pub vars: Arc<VarSet>,
    dag: MinorDag,
}

impl std::ops::Deref for GeneratorSet {
    type Target = [InvariantPoly];
    fn deref(&self) -> &[InvariantPoly] {
        &self.items
    }
}

/// Leading-column minors, evaluated level by level: a minor on rows R of the
/// first c columns expands along column c into minors on R∖{r}.
struct MinorDag {
    levels: Vec<Vec<Vec<usize>>>,
    // for each level c >= 1 and set: (child index at level c-1, row, negative)
    children: Vec<Vec<Vec<(usize, usize, bool)>>>,
    targets: Vec<(usize, usize)>,
}

impl MinorDag {
    fn build(targets: &[(Vec<usize>, usize)]) -> Self {
        let depth = targets.iter().map(|t| t.1).max().unwrap_or(0);
        let mut index: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); depth];
        let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); depth];
        let mut intern = |level: usize, set: &Vec<usize>, levels: &mut Vec<Vec<Vec<usize>>>| {
            *index[level].entry(set.clone()).or_insert_with(|| {
                levels[level].push(set.clone());
                levels[level].len() - 1
            })
        };
        let target_ids: Vec<(usize, usize)> = targets
            .iter()
            .map(|(rows, c)| (c - 1, intern(c - 1, rows, &mut levels)))
            .collect();
        let mut children = vec![Vec::new(); depth];
        for level in (1..depth).rev() {
            let mut kids = Vec::with_capacity(levels[level].len());
            let mut i = 0;
            while i < levels[level].len() {
                let set = levels[level][i].clone();
                let c = set.len();
                let mut entry = Vec::with_capacity(c);
                for (pos, &r) in set.iter().enumerate() {
                    let mut sub = set.clone();
                    sub.remove(pos);
                    let id = intern(level - 1, &sub, &mut levels);
                    entry.push((id, r, (pos + c - 1) % 2 == 1));
                }
                kids.push(entry);
                i += 1;
            }
            children[level] = kids;
        }
        MinorDag { levels, children, targets: target_ids }
    }

    /// Values of all targets on an integer matrix, in i128 while no
    /// intermediate overflows and in BigInt otherwise.
    fn evaluate(&self, m: &[Vec<BigInt>]) -> Vec<Int> {
        let small: Option<Vec<Vec<i128>>> = m
            .iter()
            .map(|row| row.iter().map(|x| x.to_i128()).collect())
            .collect();
        if let Some(vals) = small.and_then(|s| self.evaluate_small(&s)) {
            return vals.into_iter().map(Int::S).collect();
        }
        self.evaluate_big(m).into_iter().map(Int::B).collect()
    }

    fn evaluate_small(&self, m: &[Vec<i128>]) -> Option<Vec<i128>> {
        let mut all: Vec<Vec<i128>> = Vec::with_capacity(self.levels.len());
        for (level, sets) in self.levels.iter().enumerate() {
            let vals: Vec<i128> = if level == 0 {
                sets.iter().map(|s| m[s[0]][0]).collect()
            } else {
                let prev = &all[level - 1];
                let mut out = Vec::with_capacity(sets.len());
                for kids in &self.children[level] {
                    let mut acc: i128 = 0;
                    for &(child, r, negative) in kids {
                        let t = m[r][level].checked_mul(prev[child])?;
                        acc = if negative { acc.checked_sub(t)? } else { acc.checked_add(t)? };
                    }
                    out.push(acc);
                }
                out
            };
            all.push(vals);
        }
        Some(self.targets.iter().map(|&(l, i)| all[l][i]).collect())
    }

    fn evaluate_big(&self, m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let mut all: Vec<Vec<BigInt>> = Vec::with_capacity(self.levels.len());
        for (level, sets) in self.levels.iter().enumerate() {
            let vals: Vec<BigInt> = if level == 0 {
                sets.iter().map(|s| m[s[0]][0].clone()).collect()
            } else {
                let prev = &all[level - 1];
                self.children[level]
                    .iter()
                    .map(|kids| {
                        let mut acc = BigInt::zero();
                        for &(child, r, negative) in kids {
                            let a = &m[r][level];
                            if a.is_zero() || prev[child].is_zero() {
                                continue;
                            }
                            let t = a * &prev[child];
                            if negative {
                                acc -= t;
                            } else {
                                acc += t;
                            }
                        }
                        acc
                    })
                    .collect()
            };
            all.push(vals);
        }
        self.targets.iter().map(|&(l, i)| all[l][i].clone()).collect()
    }
}

/// Exact integer that stays in i128 until a product overflows.
#[derive(Clone, Debug)]
enum Int {
    S(i128),
    B(BigInt),
}

impl Int {
    fn big(&self) -> BigInt {
        match self {
            Int::S(x) => BigInt::from(*x),
            Int::B(x) => x.clone(),
        }
    }

    fn of(x: &BigInt) -> Int {
        x.to_i128().map_or_else(|| Int::B(x.clone()), Int::S)
    }

    fn mul(&self, other: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, other) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::S(c);
            }
        }
        Int::B(self.big() * other.big())
    }

    fn is_zero(&self) -> bool {
        match self {
            Int::S(x) => *x == 0,
            Int::B(x) => x.is_zero(),
        }
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Int) -> bool {
        match (self, other) {
            (Int::S(a), Int::S(b)) => a == b,
            _ => self.big() == other.big(),
        }
    }
}

/// Leading minors of φ at a point: row i is scaled by the common denominator
/// d_i, so the true minor on rows R is value / ∏_{i∈R} d_i.
struct Minors {
    values: Vec<Int>,
    scales: Vec<Int>,
}

impl Minors {
    fn new(dag: &MinorDag, m: &RatMatrix) -> Self {
        let scales: Vec<BigInt> = (0..m.rows()).map(|i| common_denominator(m.row(i))).collect();
        let ints: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| {
                let s = Rational::from_integer(scales[i].clone());
                m.row(i).iter().map(|x| (x * &s).to_integer()).collect()
            })
            .collect();
        Minors { values: dag.evaluate(&ints), scales: scales.iter().map(Int::of).collect() }
    }

    fn denominator(&self, rows: &[usize]) -> Int {
        rows.iter().fold(Int::S(1), |acc, &r| acc.mul(&self.scales[r]))
    }
}

/// Hall condition: the rows can be matched to columns of at least their degree.
fn hall_ok(row_degrees: &[usize], col_degrees: &[usize]) -> bool {
    let mut r = row_degrees.to_vec();
    r.sort_unstable();
    r.iter().zip(col_degrees).all(|(a, b)| a <= b)
}

fn subsets(n: usize, size: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, size, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut Vec::new(), &mut visit);
}

/// Flag Plücker coordinates of φ of the generic jet.
///
/// For p = 1: all s×s minors of the first s columns, s = 1..k (s = 1 gives
/// the coordinates f'_j). For p > 1: the maximal minors. Minors that vanish
/// identically are dropped.
pub fn generator_set(n: usize, k: usize, p: usize) -> Result<GeneratorSet> {
    if n == 0 || k == 0 || p == 0 {
        return Err(Error::InvalidInput("n, k, p must be positive".into()));
    }
    let (jet, vars) = symbolic_jet(p, n, k);
    let symbolic = Arc::new(phi(&jet));
    let rows = symbolic.rows.clone();
    let cols = symbolic.cols.clone();
    let col_degrees: Vec<usize> = cols.elems().iter().map(SymMonomial::degree).collect();
    let sizes: Vec<usize> = if p == 1 { (1..=k).collect() } else { vec![cols.len()] };
    let mut candidates: Vec<(Vec<usize>, usize)> = Vec::new();
    for &s in &sizes {
        let max_deg = col_degrees[s - 1];
        let eligible: Vec<usize> =
            (0..rows.len()).filter(|&i| rows.get(i).degree() <= max_deg).collect();
        subsets(eligible.len(), s, |idx| {
            let chosen: Vec<usize> = idx.iter().map(|&i| eligible[i]).collect();
            let degs: Vec<usize> = chosen.iter().map(|&i| rows.get(i).degree()).collect();
            if hall_ok(&degs, &col_degrees[..s]) {
                candidates.push((chosen, s));
            }
        });
    }
    let dag = MinorDag::build(&candidates);
    // generic nonvanishing: nonzero at some random point, else decided symbolically
    let mut sampler = Sampler::new(0x5eed_0001, 1000);
    let mut alive = vec![false; candidates.len()];
    for _ in 0..3 {
        let g = sampler.jet(p, n, k);
        let minors = Minors::new(&dag, &phi(&g).matrix);
        for (i, v) in minors.values.iter().enumerate() {
            alive[i] |= !v.is_zero();
        }
    }
    let weight_of = |s: usize| -> Vec<i64> {
        let mut w = vec![0i64; p];
        for c in cols.elems().iter().take(s) {
            for (l, e) in c.exponents(p).iter().enumerate() {
                w[l] += *e as i64;
            }
        }
        w
    };
    let mut items = Vec::new();
    let mut kept = Vec::new();
    for (i, (row_positions, s)) in candidates.iter().enumerate() {
        let item = InvariantPoly {
            provenance: Provenance {
                rows: row_positions.iter().map(|&r| rows.get(r).clone()).collect(),
                columns: *s,
            },
            weighted_degree: weight_of(*s),
            degree: row_positions.iter().map(|&r| rows.get(r).degree()).sum(),
            row_positions: row_positions.clone(),
            symbolic: symbolic.clone(),
            poly: OnceLock::new(),
        };
        if alive[i] || !item.poly().vanishes() {
            items.push(item);
            kept.push(candidates[i].clone());
        }
    }
    Ok(GeneratorSet { n, k, p, items, vars, dag: MinorDag::build(&kept) })
}

/// Outcome of randomized exact verification.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub generators: usize,
    pub trials: usize,
    pub invariance_failures: usize,
    pub homogeneity_failures: usize,
    pub witness: Option<Witness>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.invariance_failures == 0 && self.homogeneity_failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub generator: usize,
    pub trial: usize,
    pub check: &'static str,
    pub gamma: serde_json::Value,
    pub psi: serde_json::Value,
}

fn random_group_element(s: &mut Sampler, p: usize, k: usize) -> JetMap<Rational> {
    if p == 1 {
        s.unipotent(1, k)
    } else {
        s.special_reparam(p, k)
    }
}

fn torus_factor(lambda: &[Rational], w: &[i64]) -> Rational {
    lambda.iter().zip(w).fold(Rational::one(), |acc, (l, &e)| {
        let pw = num_traits::pow(l.clone(), e.unsigned_abs() as usize);
        if e >= 0 {
            acc * pw
        } else {
            acc / pw
        }
    })
}

impl GeneratorSet {
    /// Checks Q(γ∘ψ) = Q(γ) and Q(λ·γ) = λ^w Q(γ) for every generator at
    /// `trials` random rational points, using exact minor evaluation.
    pub fn verify(&self, trials: usize, seed: u64, bound: i64) -> InvarianceReport {
        let mut s = Sampler::new(seed, bound);
        let mut report = InvarianceReport {
            generators: self.items.len(),
            trials,
            invariance_failures: 0,
            homogeneity_failures: 0,
            witness: None,
        };
        for trial in 0..trials {
            let gamma = s.jet(self.p, self.n, self.k);
            let psi = random_group_element(&mut s, self.p, self.k);
            let moved = compose(&gamma, &psi).expect("sizes agree");
            let lambda: Vec<Rational> = (0..self.p).map(|_| s.scaling()).collect();
            let scaled = gamma.torus_act(&lambda);
            let m0 = Minors::new(&self.dag, &phi(&gamma).matrix);
            let m1 = Minors::new(&self.dag, &phi(&moved).matrix);
            let m2 = Minors::new(&self.dag, &phi(&scaled).matrix);
            let mut factors: HashMap<&[i64], (Int, Int)> = HashMap::new();
            for (g, item) in self.items.iter().enumerate() {
                let rows = &item.row_positions;
                let (d0, d1, d2) = (m0.denominator(rows), m1.denominator(rows), m2.denominator(rows));
                let mut fail = None;
                if m0.values[g].mul(&d1) != m1.values[g].mul(&d0) {
                    report.invariance_failures += 1;
                    fail = Some("invariance");
                }
                let (num, den) = factors.entry(&item.weighted_degree).or_insert_with(|| {
                    let f = torus_factor(&lambda, &item.weighted_degree);
                    (Int::of(f.numer()), Int::of(f.denom()))
                });
                let lhs = m2.values[g].mul(&d0).mul(den);
                let rhs = m0.values[g].mul(&d2).mul(num);
                if lhs != rhs {
                    report.homogeneity_failures += 1;
                    fail = fail.or(Some("homogeneity"));
                }
                if let (Some(check), None) = (fail, &report.witness) {
                    report.witness = Some(Witness {
                        generator: g,
                        trial,
                        check,
                        gamma: gamma.to_json(),
                        psi: psi.to_json(),
                    });
                }
            }
        }
        report
    }

    /// Generator values at a jet, through the fast evaluator.
    pub fn evaluate_fast(&self, gamma: &JetMap<Rational>) -> Vec<Rational> {
        let minors = Minors::new(&self.dag, &phi(gamma).matrix);
        minors
            .values
            .iter()
            .zip(&self.items)
            .map(|(v, item)| Rational::new(v.big(), minors.denominator(&item.row_positions).big()))
            .collect()
    }

    /// Indices of the first generator in each class of polynomials equal up
    /// to a nonzero scalar. Expands every minor symbolically.
    pub fn distinct_up_to_scalar(&self) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        (0..self.items.len())
            .filter(|&i| seen.insert(self.items[i].poly().monic().to_string()))
            .collect()
    }

    /// Count of generators per provenance column count.
    pub fn counts_by_columns(&self) -> Vec<(usize, usize)> {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for g in &self.items {
            *counts.entry(g.provenance.columns).or_default() += 1;
        }
        counts.into_iter().collect()
    }
}

/// Coordinates of a jet in the variable order of `symbolic_jet`.
pub fn jet_point(gamma: &JetMap<Rational>) -> Vec<Rational> {
    gamma.coeffs().iter().flatten().cloned().collect()
}

/// Randomized exact check of an arbitrary polynomial in the jet variables of
/// (n, k, p): Q(γ∘ψ) = Q(γ) for ψ in the unipotent radical (p = 1) or with
/// det Φ₁ = 1 (p > 1), and Q(λ·γ) = λ^w Q(γ) when `weight` is given.
pub fn verify_invariance(
    q: &SparsePolynomial,
    (n, k, p): (usize, usize, usize),
    weight: Option<&[i64]>,
    trials: usize,
    seed: u64,
    bound: i64,
) -> Result<InvarianceReport> {
    let (_, vars) = symbolic_jet(p, n, k);
    let q = q.embed(&vars)?;
    let mut s = Sampler::new(seed, bound);
    let mut report = InvarianceReport {
        generators: 1,
        trials,
        invariance_failures: 0,
        homogeneity_failures: 0,
        witness: None,
    };
    for trial in 0..trials {
        let gamma = s.jet(p, n, k);
        let psi = random_group_element(&mut s, p, k);
        let moved = compose(&gamma, &psi)?;
        let base = q.evaluate_at(&jet_point(&gamma));
        let mut fail = None;
        if q.evaluate_at(&jet_point(&moved)) != base {
            report.invariance_failures += 1;
            fail = Some("invariance");
        }
        if let Some(w) = weight {
            let lambda: Vec<Rational> = (0..p).map(|_| s.scaling()).collect();
            let scaled = gamma.torus_act(&lambda);
            if q.evaluate_at(&jet_point(&scaled)) != torus_factor(&lambda, w) * &base {
                report.homogeneity_failures += 1;
                fail = fail.or(Some("homogeneity"));
            }
        }
        if let (Some(check), None) = (fail, &report.witness) {
            report.witness =
                Some(Witness { generator: 0, trial, check, gamma: gamma.to_json(), psi: psi.to_json() });
        }
    }
    Ok(report)
}

/// Symbolic invariance for p = 1: Q(γ∘ψ) = Q(γ) as polynomials, with γ and
/// the unipotent ψ = (1, a₂, …, a_k) both generic.
pub fn invariant_symbolically(q: &SparsePolynomial, n: usize, k: usize) -> Result<bool> {
    let (jet, jet_vars) = symbolic_jet(1, n, k);
    let (psi, psi_vars) = symbolic_unipotent(k);
    let names: Vec<String> =
        jet_vars.names().iter().chain(psi_vars.names()).cloned().collect();
    let all = VarSet::new(names);
    let lift = |p: &SparsePolynomial| p.embed(&all).expect("subset of variables");
    let jet_all = jet.map(SparsePolynomial::zero(&all), lift);
    let psi_all = psi.map(SparsePolynomial::zero(&all), lift);
    let moved = compose(&jet_all, &psi_all)?;
    let images: Vec<SparsePolynomial> = moved.coeffs().iter().flatten().cloned().collect();
    let q_jet = q.embed(&jet_vars)?;
    Ok(q_jet.substitute(&images, &all) == lift(&q_jet))
}

/// Torus weights of the jet variables u[s][j]: |s| for p = 1, else component l of s.
pub fn jet_variable_weights(n: usize, k: usize, p: usize, component: usize) -> Vec<i64> {
    let basis = SymBasis::new(p, k);
    basis
        .elems()
        .iter()
        .flat_map(|s| {
            let w = s.exponents(p)[component] as i64;
            std::iter::repeat(w).take(n)
        })
        .collect()
}

/// Each component of the weighted degree matches the polynomial's grading.
pub fn homogeneous_symbolically(g: &InvariantPoly, n: usize, k: usize, p: usize) -> bool {
    (0..p).all(|l| g.poly().weighted_degree(&jet_variable_weights(n, k, p, l)) == Some(g.weighted_degree[l]))
}

/// The linear system {Ψ : Ψ∘γ = 0} for Ψ ∈ J_k(n, N).
///
/// Columns are the coordinates (t, ρ) of Ψ, t < N, ρ in Sym^{<=k}C^n; rows
/// are the coefficients (ν, t) of Ψ∘γ. Column (t, ρ) is read off the
/// composition of γ with the unit jet having a single 1 at (ρ, t).
pub struct TestCurveSystem<T> {
    pub matrix: Matrix<T>,
    pub source: Arc<SymBasis>,
    pub target: Arc<SymBasis>,
    pub big_n: usize,
}

pub fn test_curve_system<T: Scalar>(gamma: &JetMap<T>, big_n: usize) -> Result<TestCurveSystem<T>> {
    if big_n == 0 {
        return Err(Error::InvalidInput("N must be positive".into()));
    }
    let n = gamma.target_dim();
    let k = gamma.order();
    let zero = gamma.zero_entry().clone();
    let target = Arc::new(SymBasis::new(n, k));
    let source = Arc::new(gamma.basis().clone());
    let rows = source.len() * big_n;
    let cols = target.len() * big_n;
    let mut m = Matrix::filled(rows, cols, zero.clone());
    for t in 0..big_n {
        for rho in 0..target.len() {
            let mut unit = JetMap::zero_jet(n, big_n, k, zero.clone());
            let mut v = vec![zero.clone(); big_n];
            v[t] = zero.one_like();
            unit.set_coeff_at(rho, v);
            let c = compose(&unit, gamma)?;
            let col = t * target.len() + rho;
            for nu in 0..source.len() {
                for t2 in 0..big_n {
                    m[(nu * big_n + t2, col)] = c.coeff_at(nu)[t2].clone();
                }
            }
        }
    }
    Ok(TestCurveSystem { matrix: m, source, target, big_n })
}

/// Checks that the solutions of the test-curve system are exactly the
/// annihilator of im φ(γ) tensored with C^N, under the apolar pairing
/// ⟨Ψ, x⟩ = Σ_ρ Ψ_ρ x_ρ / mult(ρ).
pub fn solution_space_equals_perp(gamma: &JetMap<Rational>, big_n: usize) -> Result<bool> {
    let sys = test_curve_system(gamma, big_n)?;
    let kernel = sys.matrix.kernel_basis();
    let f = phi(gamma);
    let b = sys.target.len();
    let mut pairing = RatMatrix::zeros(f.matrix.cols(), b);
    for rho in 0..b {
        let mult = Rational::from_integer(BigInt::from(sys.target.get(rho).multinomial()));
        for s in 0..f.matrix.cols() {
            pairing[(s, rho)] = &f.matrix[(rho, s)] / &mult;
        }
    }
    let annihilator = pairing.kernel_basis();
    let mut perp = Vec::new();
    for t in 0..big_n {
        for a in &annihilator {
            let mut v = vec![Rational::zero(); b * big_n];
            v[t * b..(t + 1) * b].clone_from_slice(a);
            perp.push(v);
        }
    }
    Ok(crate::exact::matrix::same_span(&kernel, &perp, b * big_n))
}
