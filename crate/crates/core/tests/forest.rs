mod common;

use common::{random_forest, rng, roomy};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use tmdelta::{
    bipartition_lower_witness, degree_sequence_bounds, delta_forest_formula, l_tilde, max_subdet_brute,
    max_subdet_principal, ElementColoring, ForestPair, Graph,
};

fn corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_forest(&mut r, max_n)).collect()
}

#[test]
fn formula_agrees_with_searches() {
    for f in corpus(41, 80, 9) {
        let formula = delta_forest_formula(&f, 14).unwrap();
        let principal = max_subdet_principal(&f, &roomy()).unwrap();
        let full = max_subdet_brute(&f, None, &roomy()).unwrap();
        assert_eq!(formula.result.value, principal.value, "{f:?}");
        assert_eq!(formula.result.value, full.value, "{f:?}");
        assert!(formula.result.verify(&f).unwrap());
    }
}

#[test]
fn schur_identity() {
    let mut r = rng(42);
    let forests = corpus(43, 100, 10);
    for f in &forests {
        let elements: Vec<_> = f.elements().filter(|_| r.gen_bool(0.5)).collect();
        let pair = ForestPair::from_elements(&elements);
        let m_det = ElementColoring::principal(elements).determinant(f).unwrap();
        let l_det = l_tilde(f, &pair).unwrap().determinant().unwrap();
        assert_eq!(m_det.abs(), l_det.abs());
    }
}

#[test]
fn bounds_sandwich_and_product_identity() {
    for f in corpus(44, 100, 10) {
        let d = max_subdet_brute(&f, None, &roomy()).unwrap().value;
        let b = degree_sequence_bounds(&f).unwrap();
        assert!(b.lower_holds(&d) && b.upper_holds(&d), "{f:?}");
        let w = bipartition_lower_witness(&f).unwrap();
        assert_eq!(&w.value * &w.other_value, b.lower_exact_square);
        assert!(&w.value * &w.value >= b.lower_exact_square);
        assert!(w.value <= d);
        assert!(w.value > BigInt::from(0));
    }
}
