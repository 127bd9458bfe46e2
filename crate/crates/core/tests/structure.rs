mod common;

use common::{graph_with_long_run, random_graph, rng, roomy};
use num_bigint::BigInt;
use tmdelta::{
    compute_decomposition, contract_degree2_run, max_subdet_brute, recognize, shrink_to_core, Certificate,
    DecompositionOutcome, DeltaOutcome, Graph,
};

fn delta(g: &Graph) -> BigInt {
    max_subdet_brute(g, None, &roomy()).unwrap().value
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).unwrap()
}

#[test]
fn recognize_with_generous_bound_is_exact() {
    let mut r = rng(21);
    for _ in 0..200 {
        let g = random_graph(&mut r, 14);
        let d = delta(&g);
        for bound in [to_u64(&d), to_u64(&d) + 3] {
            match recognize(&g, bound, &roomy()).unwrap() {
                DeltaOutcome::Exact { value } => assert_eq!(value, d, "{g:?}"),
                other => panic!("{g:?} bound {bound}: {other:?}"),
            }
        }
    }
}

#[test]
fn contraction_preserves_delta() {
    let mut r = rng(22);
    let mut checked = 0;
    while checked < 100 {
        let g = graph_with_long_run(&mut r, 6, 4);
        let h = contract_degree2_run(&g).expect("run present");
        if h.element_count() > 14 {
            continue;
        }
        assert_eq!(h.n() + 6, g.n());
        assert_eq!(h.m() + 6, g.m());
        assert_eq!(delta(&g), delta(&h), "{g:?}");
        checked += 1;
    }
}

#[test]
fn certificates_reverify() {
    let mut r = rng(23);
    for _ in 0..300 {
        let g = random_graph(&mut r, 20);
        for bound in 1..=6u64 {
            if let DecompositionOutcome::Exceeds(cert) = compute_decomposition(&g, bound).unwrap() {
                assert!(cert.verify(&g, bound).unwrap(), "{cert:?}");
                match &cert {
                    Certificate::DegreeExceeds { degree, .. } => assert!(*degree as u64 > bound + 1),
                    Certificate::TooManyDisjointCycles { cycles } => {
                        let mut seen = std::collections::HashSet::new();
                        assert!(cycles.iter().flatten().all(|v| seen.insert(*v)));
                    }
                    Certificate::TooManyHighDegreeVertices { product, .. } => {
                        assert!(*product > BigInt::from(bound))
                    }
                    Certificate::SubdeterminantFound { .. } => unreachable!(),
                }
            }
        }
    }
}

#[test]
fn decomposition_invariants() {
    let mut r = rng(24);
    for _ in 0..300 {
        let g = random_graph(&mut r, 22);
        for bound in [1u64, 2, 4, 8, 64] {
            let DecompositionOutcome::Structured(d) = compute_decomposition(&g, bound).unwrap() else {
                continue;
            };
            let pc = d.residual.graph.classify_paths_and_cycles().unwrap();
            assert!(pc.cycles.is_empty());
            assert!(d.cut_size as u64 <= (bound + 1) * d.z.len() as u64);
            let covered: usize = d.paths.iter().map(Vec::len).sum();
            assert_eq!(covered + d.z.len(), g.n());
        }
    }
}

#[test]
fn shrinking_keeps_delta() {
    let mut r = rng(25);
    for _ in 0..60 {
        let g = graph_with_long_run(&mut r, 7, 12);
        if g.element_count() > 36 {
            continue;
        }
        let d = delta(&g);
        if let Ok(core) = shrink_to_core(&g, to_u64(&d)) {
            assert!(core.element_count() <= g.element_count());
            assert_eq!(delta(&core), d);
        }
    }
}

#[test]
fn heuristic_is_a_lower_bound() {
    let mut r = rng(26);
    for _ in 0..200 {
        let g = random_graph(&mut r, 16);
        let (set, value) = tmdelta::near_pencil_heuristic(&g);
        assert!(value <= delta(&g), "{g:?}");
        if !set.is_empty() {
            assert_eq!(tmdelta::near_pencil_lower_bound(&g, &set).unwrap(), value);
        }
    }
}

#[test]
fn certificates_survive_serialization() {
    let mut r = rng(27);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..200 {
        let g = random_graph(&mut r, 14);
        let d = to_u64(&delta(&g));
        if d < 2 {
            continue;
        }
        let DeltaOutcome::Exceeds { certificate } = recognize(&g, d - 1, &roomy()).unwrap() else {
            panic!("{g:?} not certified above {}", d - 1);
        };
        let text = serde_json::to_string(&certificate).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, certificate);
        assert!(back.verify(&g, d - 1).unwrap());
        seen.insert(back.kind());
    }
    assert!(seen.len() >= 2, "{seen:?}");
}
