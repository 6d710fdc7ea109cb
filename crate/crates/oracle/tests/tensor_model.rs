use kmn_oracle::{casimir_check, check_hecke_relations, weight_decomposition, TensorSpace};

#[test]
fn hecke_relations_hold_on_small_spaces() {
    for (m, n, p, q, d) in [(1, 1, 0, 1, 2), (2, 1, 0, 0, 2), (1, 2, 0, 1, 1)] {
        assert!(check_hecke_relations(m, n, p, q, d).unwrap().passed(), "{m} {n} {p} {q} {d}");
    }
}

#[test]
fn eigenspaces_exhaust_the_space() {
    for (m, n, p, q, d) in [(1, 1, 0, 0, 2), (2, 1, 0, 1, 2)] {
        let dims = weight_decomposition(m, n, p, q, d).unwrap();
        let total: usize = dims.values().sum();
        assert_eq!(total, TensorSpace::new(m, n, p, q, d).unwrap().dimension());
    }
}

#[test]
fn casimir_shift_matches_inner_product() {
    for r in 1..=3 {
        assert!(casimir_check(2, 1, &[1, 0, 0], r).unwrap().passed, "r = {r}");
    }
}
