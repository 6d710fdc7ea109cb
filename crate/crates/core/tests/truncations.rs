use kmn_core::algebra::{build_truncation, cartan_matrix, check_associativity, decomposition_matrix, AssocMode};
use kmn_core::functors::{iterated_functor, serre_check};
use kmn_core::stretched::enumerate_stretched;
use kmn_core::weights::{from_gl_weight, to_gl_weight, GlWeight, Restrict, Window};

#[test]
fn small_truncation_is_associative_and_cellular() {
    let t = build_truncation(1, 1, 0, 2).unwrap();
    assert!(t.verify_products().passed());
    assert!(check_associativity(&t, AssocMode::Exhaustive).passed());
    for graded in [false, true] {
        assert_eq!(cartan_matrix(&t, graded), decomposition_matrix(&t, graded).gram());
    }
}

#[test]
fn functor_powers_count_stretched_diagrams() {
    let win = Window::new(2, 2, 0, 0).unwrap();
    let counts = enumerate_stretched(0, 0, 2, 2, 2).unwrap();
    assert_eq!(counts.total, 8);
    let image = iterated_functor(&win, 2).unwrap();
    for (lam, c) in image.entries() {
        assert_eq!(counts.dims.get(lam).copied().unwrap_or(0), c.at_one() as u64, "{lam}");
    }
    assert_eq!(image.entries().len(), counts.dims.len());
    assert!(serre_check(&win).passed());
}

#[test]
fn dictionary_roundtrips_on_a_window() {
    let win = Window::new(2, 1, 0, 1).unwrap();
    for w in win.enumerate(Restrict::All) {
        let gl: GlWeight = to_gl_weight(&w);
        assert_eq!(from_gl_weight(&gl).unwrap(), w);
    }
}
