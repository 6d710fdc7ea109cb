//! Special projective functors `F_i`, `E_i` on the Grothendieck group, block
//! admissibility, the crystal graph and descent to the ground state.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grothendieck::{change_basis, BasisKind, GrothendieckVector};
use crate::poly::LaurentPoly;
use crate::weights::{height, Block, BlockLabel, Label, Pos, Restrict, Weight, Window};

/// Elementary matching between the blocks `Γ` and `Γ − α_i` at vertices `i, i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MatchKind {
    /// `••` above `○×`, the two dots joined by a cup.
    Cup,
    /// `×○` above `••`, the two dots joined by a cap.
    Cap,
    /// `•○` above `○•`, a line from `i` to `i+1`.
    RightShift,
    /// `×•` above `•×`, a line from `i+1` to `i`.
    LeftShift,
}

/// The matching kind at `(i, i+1)` and the block `Γ − α_i`, if `i` is `Γ`-admissible.
pub fn admissible(block: &Block, i: Pos) -> Option<(MatchKind, Block)> {
    use BlockLabel::*;
    let (m, n) = block.rank();
    let mut crosses = block.crosses().clone();
    let mut circles = block.circles().clone();
    let (kind, defect) = match (block.label(i), block.label(i + 1)) {
        (Dot, Dot) if block.defect() > 0 => {
            circles.insert(i);
            crosses.insert(i + 1);
            (MatchKind::Cup, block.defect() - 1)
        }
        (Cross, Circle) => {
            crosses.remove(&i);
            circles.remove(&(i + 1));
            (MatchKind::Cap, block.defect() + 1)
        }
        (Dot, Circle) => {
            circles.remove(&(i + 1));
            circles.insert(i);
            (MatchKind::RightShift, block.defect())
        }
        (Cross, Dot) => {
            crosses.remove(&i);
            crosses.insert(i + 1);
            (MatchKind::LeftShift, block.defect())
        }
        _ => return None,
    };
    let next = Block::new(m, n, crosses, circles, defect).expect("elementary matchings preserve the rank");
    Some((kind, next))
}

type LocalRule = (Label, Label, &'static [(Label, Label)]);

const F_RULES: &[LocalRule] = {
    use Label::*;
    &[
        (Down, Circle, &[(Circle, Down)]),
        (Up, Circle, &[(Circle, Up)]),
        (Cross, Down, &[(Down, Cross)]),
        (Cross, Up, &[(Up, Cross)]),
        (Cross, Circle, &[(Up, Down), (Down, Up)]),
        (Down, Up, &[(Circle, Cross)]),
        (Up, Down, &[(Circle, Cross)]),
    ]
};

const E_RULES: &[LocalRule] = {
    use Label::*;
    &[
        (Down, Cross, &[(Cross, Down)]),
        (Up, Cross, &[(Cross, Up)]),
        (Circle, Down, &[(Down, Circle)]),
        (Circle, Up, &[(Up, Circle)]),
        (Circle, Cross, &[(Up, Down), (Down, Up)]),
        (Down, Up, &[(Cross, Circle)]),
        (Up, Down, &[(Cross, Circle)]),
    ]
};

const CRYSTAL_RULES: &[(Label, Label, Label, Label)] = {
    use Label::*;
    &[
        (Down, Circle, Circle, Down),
        (Up, Circle, Circle, Up),
        (Cross, Down, Down, Cross),
        (Cross, Up, Up, Cross),
        (Cross, Circle, Down, Up),
        (Down, Up, Circle, Cross),
    ]
};

fn relabel_pair(lam: &Weight, i: Pos, pair: (Label, Label)) -> Weight {
    lam.relabel(&[(i, pair.0), (i + 1, pair.1)]).expect("local moves preserve the rank")
}

fn apply_rules(rules: &[LocalRule], i: Pos, lam: &Weight) -> Vec<Weight> {
    let here = (lam.label(i), lam.label(i + 1));
    rules
        .iter()
        .find(|(a, b, _)| (*a, *b) == here)
        .map(|(_, _, outs)| outs.iter().map(|&pair| relabel_pair(lam, i, pair)).collect())
        .unwrap_or_default()
}

fn apply(rules: &[LocalRule], i: Pos, v: &GrothendieckVector) -> Result<GrothendieckVector> {
    if v.kind() != BasisKind::V {
        return Err(Error::WrongBasis { expected: 'V', found: v.kind().symbol() });
    }
    let mut out = GrothendieckVector::zero(BasisKind::V);
    for (lam, c) in v.entries() {
        for mu in apply_rules(rules, i, lam) {
            out.add_term(mu, c);
        }
    }
    Ok(out)
}

/// `F_i` on a vector in the standard basis.
pub fn apply_f(i: Pos, v: &GrothendieckVector) -> Result<GrothendieckVector> {
    apply(F_RULES, i, v)
}

/// `E_i` on a vector in the standard basis.
pub fn apply_e(i: Pos, v: &GrothendieckVector) -> Result<GrothendieckVector> {
    apply(E_RULES, i, v)
}

/// `F_{i_d} ∘ … ∘ F_{i_1}` applied to `v`.
pub fn apply_f_sequence(seq: &[Pos], v: &GrothendieckVector) -> Result<GrothendieckVector> {
    seq.iter().try_fold(v.clone(), |acc, &i| apply_f(i, &acc))
}

/// Positions where a local pattern of `lam` can occur without meeting only `∧`'s.
fn scan_range(lam: &Weight) -> Vec<Pos> {
    match lam.span() {
        Some((lo, hi)) => (lo - 1..=hi).collect(),
        None => Vec::new(),
    }
}

/// Outgoing crystal edges `(i, λ')` of `lam`.
pub fn crystal_edges(lam: &Weight) -> Vec<(Pos, Weight)> {
    let mut out = Vec::new();
    for i in scan_range(lam) {
        let here = (lam.label(i), lam.label(i + 1));
        for &(a, b, c, d) in CRYSTAL_RULES {
            if (a, b) == here {
                out.push((i, relabel_pair(lam, i, (c, d))));
            }
        }
    }
    out
}

/// Crystal edges among the weights of a window with colours in `I_{p,q}`.
pub fn crystal_graph(window: &Window, restrict: Restrict) -> (Vec<Weight>, Vec<(Weight, Pos, Weight)>) {
    let nodes = window.enumerate(restrict);
    let members: BTreeSet<&Weight> = nodes.iter().collect();
    let colours = window.interval();
    let mut edges = Vec::new();
    for lam in &nodes {
        for (i, mu) in crystal_edges(lam) {
            if colours.contains(&i) && members.contains(&mu) {
                edges.push((lam.clone(), i, mu));
            }
        }
    }
    (nodes, edges)
}

/// A descent from `λ` to the ground state of its narrowest window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathToGround {
    pub p: i64,
    pub q: i64,
    /// Colours `i_1, …, i_d` of the crystal path from `λ_{p,q}` to `λ`.
    pub sequence: Vec<Pos>,
    /// Number of `∨∧ → ○×` edges on the path.
    pub r: u32,
}

/// The window `(p, q)` of least width with `λ ∈ Λ°_{p,q}`, taking the smallest `p` among ties.
pub fn narrowest_window(lam: &Weight) -> Window {
    let (m, n) = (lam.m() as i64, lam.n() as i64);
    let Some((lo, hi)) = lam.span() else {
        return Window::new(lam.m(), lam.n(), 0, 0).expect("p = q");
    };
    (0i64..)
        .find_map(|w| {
            (hi - w - n..=lo + m - 1).find_map(|p| {
                let win = Window::new(lam.m(), lam.n(), p, p + w).expect("w ≥ 0");
                win.contains_restricted(lam).then_some(win)
            })
        })
        .expect("wide enough windows contain every weight")
}

/// Greedy descent along crystal edges inside `Λ°_{p,q}`, always taking the smallest colour.
pub fn path_to_ground(lam: &Weight) -> Result<PathToGround> {
    let win = narrowest_window(lam);
    let ground = win.ground();
    let mut current = lam.clone();
    let mut reversed = Vec::new();
    let mut r = 0;
    while current != ground {
        let step = win.interval().find_map(|i| {
            let here = (current.label(i), current.label(i + 1));
            CRYSTAL_RULES.iter().find_map(|&(a, b, c, d)| {
                let pred = ((c, d) == here).then(|| relabel_pair(&current, i, (a, b)))?;
                win.contains_restricted(&pred).then_some((i, pred, (a, b) == (Label::Down, Label::Up)))
            })
        });
        let Some((i, pred, cup)) = step else {
            return Err(Error::InvalidWeight(format!("no crystal predecessor of {current} in the window")));
        };
        debug_assert_eq!(height(&pred) + 1, height(&current));
        reversed.push(i);
        r += cup as u32;
        current = pred;
    }
    reversed.reverse();
    Ok(PathToGround { p: win.p, q: win.q, sequence: reversed, r })
}

/// Result of comparing the functor composite along a path with `2^r [P(λ)]`.
#[derive(Clone, Debug, Serialize)]
pub struct PathCheck {
    pub path: PathToGround,
    pub composite: GrothendieckVector,
    pub passed: bool,
}

/// Applies the path's functors to `[V(λ_{p,q})]` and rewrites the result in the projective basis.
pub fn verify_path(lam: &Weight) -> Result<PathCheck> {
    let path = path_to_ground(lam)?;
    let win = Window::new(lam.m(), lam.n(), path.p, path.q)?;
    let start = GrothendieckVector::class(BasisKind::V, win.ground());
    let image = apply_f_sequence(&path.sequence, &start)?;
    let composite = change_basis(&image, BasisKind::P, Some(&win))?;
    let mut expected = GrothendieckVector::zero(BasisKind::P);
    expected.add_term(lam.clone(), &LaurentPoly::constant(1 << path.r));
    let passed = composite == expected;
    Ok(PathCheck { path, composite, passed })
}

/// `(Σ_{i ∈ I_{p,q}} F_i)^d [P(λ_{p,q})]` in the projective basis.
pub fn iterated_functor(window: &Window, d: usize) -> Result<GrothendieckVector> {
    let mut v = GrothendieckVector::class(BasisKind::V, window.ground());
    for _ in 0..d {
        let mut next = GrothendieckVector::zero(BasisKind::V);
        for i in window.interval() {
            next.add_scaled(&apply_f(i, &v)?, &LaurentPoly::one());
        }
        v = next;
    }
    change_basis(&v, BasisKind::P, Some(window))
}

/// Outcome of the Serre-relation suite on one window.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SerreReport {
    pub checked: usize,
    pub excluded: usize,
    pub failures: Vec<String>,
    /// Diagonal values of `[E_i, F_i]` seen on standard classes.
    pub diagonal: BTreeSet<i64>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

enum Op {
    F(Pos),
    E(Pos),
}

/// Checks the `sl_∞` relations among `F_i, E_i` for `i, j ∈ I_{p,q}` on every `[V(λ)]`, `λ ∈ Λ_{p,q}`.
pub fn serre_check(window: &Window) -> SerreReport {
    let mut report = SerreReport::default();
    let colours: Vec<Pos> = window.interval().collect();
    for lam in window.enumerate(Restrict::All) {
        let v = GrothendieckVector::class(BasisKind::V, lam.clone());
        let word = |ops: &[Op]| -> GrothendieckVector {
            ops.iter().rev().fold(v.clone(), |acc, op| match *op {
                Op::F(i) => apply_f(i, &acc).expect("standard basis"),
                Op::E(i) => apply_e(i, &acc).expect("standard basis"),
            })
        };
        let combo = |terms: &[(i64, Vec<Op>)]| -> GrothendieckVector {
            let mut out = GrothendieckVector::zero(BasisKind::V);
            for (c, ops) in terms {
                out.add_scaled(&word(ops), &LaurentPoly::constant(*c));
            }
            out
        };
        let expect_zero = |name: String, value: GrothendieckVector, report: &mut SerreReport| {
            if value.entries().keys().any(|w| !window.contains(w)) {
                report.excluded += 1;
                return;
            }
            report.checked += 1;
            if !value.is_zero() && report.failures.len() < 16 {
                report.failures.push(format!("{name} on V{lam} gives {value}"));
            }
        };
        for &i in &colours {
            for &j in &colours {
                if (i - j).abs() > 1 {
                    expect_zero(
                        format!("[F{i},F{j}]"),
                        combo(&[(1, vec![Op::F(i), Op::F(j)]), (-1, vec![Op::F(j), Op::F(i)])]),
                        &mut report,
                    );
                    expect_zero(
                        format!("[E{i},E{j}]"),
                        combo(&[(1, vec![Op::E(i), Op::E(j)]), (-1, vec![Op::E(j), Op::E(i)])]),
                        &mut report,
                    );
                }
                if (i - j).abs() == 1 {
                    expect_zero(
                        format!("Serre F{i},F{j}"),
                        combo(&[
                            (1, vec![Op::F(i), Op::F(i), Op::F(j)]),
                            (-2, vec![Op::F(i), Op::F(j), Op::F(i)]),
                            (1, vec![Op::F(j), Op::F(i), Op::F(i)]),
                        ]),
                        &mut report,
                    );
                    expect_zero(
                        format!("Serre E{i},E{j}"),
                        combo(&[
                            (1, vec![Op::E(i), Op::E(i), Op::E(j)]),
                            (-2, vec![Op::E(i), Op::E(j), Op::E(i)]),
                            (1, vec![Op::E(j), Op::E(i), Op::E(i)]),
                        ]),
                        &mut report,
                    );
                }
                if i != j {
                    expect_zero(
                        format!("[E{i},F{j}]"),
                        combo(&[(1, vec![Op::E(i), Op::F(j)]), (-1, vec![Op::F(j), Op::E(i)])]),
                        &mut report,
                    );
                }
            }
            let h = combo(&[(1, vec![Op::E(i), Op::F(i)]), (-1, vec![Op::F(i), Op::E(i)])]);
            report.checked += 1;
            let diag = h.coeff(&lam).at_one();
            let mut off = h.clone();
            off.add_term(lam.clone(), &LaurentPoly::constant(-diag));
            if off.is_zero() {
                report.diagonal.insert(diag);
            } else if report.failures.len() < 16 {
                report.failures.push(format!("[E{i},F{i}] on V{lam} is not diagonal: {h}"));
            }
        }
    }
    report
}

/// `F_i` images of each standard class, as a sparse matrix keyed by weight.
pub fn functor_matrix(window: &Window, i: Pos) -> BTreeMap<Weight, GrothendieckVector> {
    window
        .enumerate(Restrict::All)
        .into_iter()
        .map(|lam| {
            let img = apply_f(i, &GrothendieckVector::class(BasisKind::V, lam.clone())).expect("standard basis");
            (lam, img)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::upper_set;
    use crate::weights::{block_of, lambda_ground};
    use proptest::prelude::*;

    fn w(m: u32, n: u32, downs: &[Pos], crosses: &[Pos], circles: &[Pos]) -> Weight {
        Weight::from_sets(m, n, downs, crosses, circles).unwrap()
    }

    fn v_class(lam: Weight) -> GrothendieckVector {
        GrothendieckVector::class(BasisKind::V, lam)
    }

    #[test]
    fn admissibility_patterns() {
        let principal = block_of(&w(1, 1, &[0], &[], &[]));
        let (kind, next) = admissible(&principal, 4).unwrap();
        assert_eq!(kind, MatchKind::Cup);
        assert_eq!(next.crosses(), &BTreeSet::from([5]));
        assert_eq!(next.circles(), &BTreeSet::from([4]));
        assert_eq!(next.defect(), 0);

        let ground = block_of(&lambda_ground(0, 1, 1, 1).unwrap());
        assert_eq!(admissible(&ground, 0).unwrap().0, MatchKind::LeftShift);
        assert_eq!(admissible(&ground, 1).unwrap().0, MatchKind::RightShift);
        assert!(admissible(&ground, 5).is_none());

        let tight = block_of(&lambda_ground(0, 0, 1, 1).unwrap());
        let (kind, next) = admissible(&tight, 0).unwrap();
        assert_eq!(kind, MatchKind::Cap);
        assert_eq!(next.defect(), 1);
        assert!(admissible(&block_of(&w(1, 1, &[], &[0], &[1])), 3).is_none());
    }

    #[test]
    fn lemma_cases() {
        let f = apply_f(0, &v_class(w(1, 1, &[], &[0], &[1]))).unwrap();
        let mut expected = v_class(w(1, 1, &[1], &[], &[]));
        expected.add_term(w(1, 1, &[0], &[], &[]), &LaurentPoly::one());
        assert_eq!(f, expected);
        assert!(apply_f(0, &v_class(w(2, 2, &[0, 1], &[], &[]))).unwrap().is_zero());
        let e = apply_e(0, &v_class(w(1, 1, &[], &[1], &[0]))).unwrap();
        assert_eq!(e, expected);
        assert_eq!(apply_f(3, &v_class(w(1, 1, &[3], &[], &[]))).unwrap(), v_class(w(1, 1, &[], &[4], &[3])));
        let p = GrothendieckVector::class(BasisKind::P, w(1, 1, &[3], &[], &[]));
        assert_eq!(apply_f(3, &p), Err(Error::WrongBasis { expected: 'V', found: 'P' }));
    }

    #[test]
    fn crystal_examples() {
        let edges = crystal_edges(&w(1, 1, &[], &[2], &[3]));
        assert!(edges.contains(&(2, w(1, 1, &[2], &[], &[]))));
        let edges = crystal_edges(&w(1, 1, &[2], &[], &[]));
        assert_eq!(edges, vec![(2, w(1, 1, &[], &[3], &[2]))]);
        assert!(crystal_edges(&Weight::new(0, 0, []).unwrap()).is_empty());
    }

    #[test]
    fn path_examples() {
        let g = lambda_ground(1, 2, 2, 1).unwrap();
        let path = path_to_ground(&g).unwrap();
        assert_eq!((path.p, path.q, path.sequence.len(), path.r), (1, 2, 0, 0));

        let down = w(1, 1, &[4], &[], &[]);
        let path = path_to_ground(&down).unwrap();
        assert_eq!((path.p, path.q, path.sequence.clone(), path.r), (4, 4, vec![4], 0));
        let image = apply_f(4, &v_class(lambda_ground(4, 4, 1, 1).unwrap())).unwrap();
        let win = Window::new(1, 1, 4, 4).unwrap();
        assert_eq!(change_basis(&image, BasisKind::P, Some(&win)).unwrap(), GrothendieckVector::class(BasisKind::P, down));

        let swapped = w(1, 1, &[], &[5], &[4]);
        let check = verify_path(&swapped).unwrap();
        assert_eq!(check.path.r, 1);
        assert!(check.passed, "{}", check.composite);
        assert_eq!(check.composite.coeff(&swapped), LaurentPoly::constant(2));
    }

    #[test]
    fn paths_in_windows() {
        for (m, n, p, q) in [(1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0), (1, 2, -1, 1)] {
            let win = Window::new(m, n, p, q).unwrap();
            for lam in win.enumerate(Restrict::MaximalDefect) {
                let check = verify_path(&lam).unwrap();
                assert!(check.passed, "{lam}: {}", check.composite);
                assert_eq!(check.path.sequence.len() as i64, height(&lam) - height(&lambda_ground(check.path.p, check.path.q, m, n).unwrap()));
            }
        }
    }

    #[test]
    fn ground_is_unique_source() {
        let win = Window::new(2, 1, 0, 1).unwrap();
        let (nodes, edges) = crystal_graph(&win, Restrict::MaximalDefect);
        let targets: BTreeSet<&Weight> = edges.iter().map(|e| &e.2).collect();
        let sources: Vec<&Weight> = nodes.iter().filter(|w| !targets.contains(w)).collect();
        assert_eq!(sources, vec![&win.ground()]);
        assert!(edges.iter().all(|(a, _, b)| height(a) + 1 == height(b)));
    }

    #[test]
    fn serre_relations() {
        for (m, n, p, q) in [(1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0)] {
            let report = serre_check(&Window::new(m, n, p, q).unwrap());
            assert!(report.passed(), "{:?}", report.failures);
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn far_functors_commute() {
        let v = v_class(w(2, 2, &[0], &[3], &[8]));
        let a = apply_f(0, &apply_f(7, &v).unwrap()).unwrap();
        let b = apply_f(7, &apply_f(0, &v).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn functors_preserve_window() {
        let win = Window::new(2, 1, 0, 1).unwrap();
        for i in win.interval() {
            for img in functor_matrix(&win, i).values() {
                assert!(img.entries().keys().all(|w| win.contains(w)));
            }
        }
    }

    #[test]
    fn projective_functor_image_is_projective() {
        let win = Window::new(2, 1, 0, 1).unwrap();
        for d in 0..4 {
            let v = iterated_functor(&win, d).unwrap();
            assert!(v.entries().values().all(|c| c.has_nonnegative_coefficients()));
        }
        let p = upper_set(&win.ground());
        assert_eq!(p, vec![win.ground()]);
    }

    fn small_weight() -> impl Strategy<Value = Weight> {
        (1u32..3, 1u32..3).prop_flat_map(|(m, n)| {
            proptest::sample::select(Window::new(m, n, 0, 1).unwrap().enumerate(Restrict::All))
        })
    }

    proptest! {
        #[test]
        fn functors_shift_height(lam in small_weight(), i in -2i64..4) {
            let h = height(&lam);
            for mu in apply_f(i, &v_class(lam.clone())).unwrap().entries().keys() {
                prop_assert_eq!(height(mu), h + 1);
            }
            for mu in apply_e(i, &v_class(lam.clone())).unwrap().entries().keys() {
                prop_assert_eq!(height(mu), h - 1);
            }
            for (_, mu) in crystal_edges(&lam) {
                prop_assert_eq!(height(&mu), h + 1);
            }
        }

        #[test]
        fn crystal_edges_are_quotients(lam in small_weight()) {
            for (i, mu) in crystal_edges(&lam) {
                let image = apply_f(i, &v_class(lam.clone())).unwrap();
                let in_l = change_basis(&image, BasisKind::L, None).unwrap();
                prop_assert!(in_l.coeff(&mu).at_one() > 0);
            }
        }
    }
}
