use jetinv::exact::matrix::same_span;
use jetinv::exact::{int, RatMatrix, Rational};
use jetinv::flag::{flag_spans, phi, SymVector, WedgeVector};
use jetinv::invariants::{generator_set, test_curve_system};
use jetinv::jet::{compose, group_matrix, group_product, invert, JetMap};
use jetinv::orbit::hm::{hilbert_mumford_torus, Stability};
use jetinv::orbit::weights::{lambda_sigma, rho_superadditive};
use jetinv::random::Sampler;
use num_traits::Zero;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn matrix_of(jet: &JetMap<Rational>) -> RatMatrix {
    // rows: target coordinates, columns: source monomials
    let cols: Vec<Vec<Rational>> = jet.coeffs().to_vec();
    RatMatrix::from_columns(&cols, jet.target_dim(), Rational::zero())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn reparametrization_acts_by_group_matrix(seed in any::<u64>(), p in 1usize..=2, k in 1usize..=3, n in 1usize..=3) {
        let mut s = Sampler::new(seed, 9);
        let gamma = s.jet(p, n, k);
        let psi = s.reparam(p, k);
        let lhs = matrix_of(&compose(&gamma, &psi).unwrap());
        let rhs = matrix_of(&gamma).mul(&group_matrix(&psi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), p in 1usize..=2, k in 1usize..=3) {
        let mut s = Sampler::new(seed, 9);
        let psi = s.reparam(p, k);
        let inv = invert(&psi).unwrap();
        let id = JetMap::identity(p, k, Rational::zero());
        prop_assert_eq!(group_product(&psi, &inv).unwrap(), id.clone());
        prop_assert_eq!(group_product(&inv, &psi).unwrap(), id);
    }

    #[test]
    fn phi_is_equivariant(seed in any::<u64>(), p in 1usize..=2, k in 1usize..=3, n in 2usize..=3) {
        let mut s = Sampler::new(seed, 9);
        let gamma = s.regular_jet(p, n, k);
        let psi = s.reparam(p, k);
        let moved = phi(&compose(&gamma, &psi).unwrap());
        let f = phi(&gamma);
        prop_assert_eq!(&moved.matrix, &f.matrix.mul(&group_matrix(&psi).unwrap()).unwrap());
        let dim = f.matrix.rows();
        for (a, b) in flag_spans(&f).iter().zip(flag_spans(&moved).iter()) {
            prop_assert!(same_span(a, b, dim));
        }
    }

    #[test]
    fn test_curves_closed_under_reparametrization(seed in any::<u64>(), k in 2usize..=3) {
        let mut s = Sampler::new(seed, 9);
        let gamma = s.regular_jet(1, 3, k);
        let psi = s.reparam(1, k);
        let kernel = test_curve_system(&gamma, 1).unwrap().matrix.kernel_basis();
        let moved = test_curve_system(&compose(&gamma, &psi).unwrap(), 1).unwrap().matrix;
        for x in &kernel {
            prop_assert!(moved.apply(x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn generators_fixed_by_unipotent(seed in any::<u64>()) {
        let g = generator_set(2, 3, 1).unwrap();
        let mut s = Sampler::new(seed, 9);
        let gamma = s.jet(1, 2, 3);
        let psi = s.unipotent(1, 3);
        prop_assert_eq!(g.evaluate_fast(&compose(&gamma, &psi).unwrap()), g.evaluate_fast(&gamma));
    }

    #[test]
    fn hm_invariant_under_positive_scaling_and_duplication(
        w in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..6),
        c in 1i64..5,
    ) {
        let base = hilbert_mumford_torus(&w).unwrap();
        let scaled: Vec<Vec<i64>> = w.iter().map(|v| v.iter().map(|x| x * c).collect()).collect();
        prop_assert_eq!(hilbert_mumford_torus(&scaled).unwrap(), base);
        let mut doubled = w.clone();
        doubled.extend(w.iter().rev().cloned());
        prop_assert_eq!(hilbert_mumford_torus(&doubled).unwrap(), base);
        let negated: Vec<Vec<i64>> = w.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        prop_assert_eq!(hilbert_mumford_torus(&negated).unwrap(), base);
    }

    #[test]
    fn hm_adding_antipode_gives_semistability(w in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..5)) {
        let mut sym = w.clone();
        sym.extend(w.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        prop_assert_ne!(hilbert_mumford_torus(&sym).unwrap(), Stability::Unstable);
    }
}

#[test]
fn wedge_is_alternating() {
    let mut s = Sampler::new(5, 9);
    let gamma = s.regular_jet(1, 3, 3);
    let f = phi(&gamma);
    let cols: Vec<SymVector> = (0..3).map(|j| f.column_vector(j)).collect();
    let w = WedgeVector::wedge(3, 3, &cols);
    let swapped = WedgeVector::wedge(3, 3, &[cols[1].clone(), cols[0].clone(), cols[2].clone()]);
    assert_eq!(w.ratio_to(&swapped), Some(int(-1)));
    assert!(WedgeVector::wedge(3, 3, &[cols[0].clone(), cols[0].clone(), cols[2].clone()]).is_zero());
}

#[test]
fn rho_superadditive_on_candidates() {
    for k in 2..=6 {
        for sigma in 2..=k {
            assert!(rho_superadditive(&lambda_sigma(sigma, k).unwrap()), "lambda sigma={sigma} k={k}");
        }
    }
}
