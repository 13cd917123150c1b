//! Seeded sampling of rationals, jets and group elements.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{RatMatrix, Rational};
use crate::jet::JetMap;

pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    /// `bound` caps numerators and denominators in absolute value.
    pub fn new(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1, "coefficient bound must be positive");
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bound }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.bound..=self.bound);
        let d = self.rng.gen_range(1..=self.bound);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self.rational();
            }
        }
        m
    }

    pub fn invertible_matrix(&mut self, n: usize) -> RatMatrix {
        loop {
            let m = self.matrix(n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// L·U with unit diagonals, so the determinant is 1.
    pub fn sl_matrix(&mut self, n: usize) -> RatMatrix {
        let mut l = RatMatrix::eye(n);
        let mut u = RatMatrix::eye(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.rational();
                u[(j, i)] = self.rational();
            }
        }
        l.mul(&u).unwrap()
    }

    pub fn jet(&mut self, p: usize, q: usize, k: usize) -> JetMap<Rational> {
        let mut j = JetMap::zero_jet(p, q, k, Rational::zero());
        for i in 0..j.basis().len() {
            let v = self.rationals(q);
            j.set_coeff_at(i, v);
        }
        j
    }

    /// A jet whose linear part has full rank p.
    pub fn regular_jet(&mut self, p: usize, q: usize, k: usize) -> JetMap<Rational> {
        loop {
            let j = self.jet(p, q, k);
            if j.is_regular() {
                return j;
            }
        }
    }

    fn reparam_with_linear(&mut self, p: usize, k: usize, lin: RatMatrix) -> JetMap<Rational> {
        let mut j = self.jet(p, p, k);
        for c in 0..p {
            j.set_coeff_at(c, lin.column(c));
        }
        j
    }

    /// An element of G_{k,p}.
    pub fn reparam(&mut self, p: usize, k: usize) -> JetMap<Rational> {
        let lin = self.invertible_matrix(p);
        self.reparam_with_linear(p, k, lin)
    }

    /// An element of the unipotent radical: linear part the identity.
    pub fn unipotent(&mut self, p: usize, k: usize) -> JetMap<Rational> {
        self.reparam_with_linear(p, k, RatMatrix::eye(p))
    }

    /// An element of G'_{k,p}: det Φ₁ = 1.
    pub fn special_reparam(&mut self, p: usize, k: usize) -> JetMap<Rational> {
        let lin = self.sl_matrix(p);
        self.reparam_with_linear(p, k, lin)
    }

    /// Nonzero rational unequal to ±1, for torus scalings.
    pub fn scaling(&mut self) -> Rational {
        loop {
            let r = self.nonzero_rational();
            if r != Rational::one() && r != -Rational::one() {
                return r;
            }
        }
    }
}
