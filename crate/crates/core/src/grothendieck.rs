//! Graded Grothendieck group of `Rep K` in the irreducible, standard and
//! projective bases, with conversions between them.
//!
//! In the standard basis `[V(λ)] = Σ_{μ⊂λ} q^{deg(μ̲λ)} [L(μ)]` and
//! `[P(λ)] = Σ_{μ⊃λ} q^{deg(λ̲μ)} [V(μ)]`. Both matrices are unitriangular for
//! the Bruhat order, so their inverses are computed by back-substitution.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::arcs::{cup_diagram, lower_set, upper_set};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::weights::{bruhat_leq, Weight, Window};

/// Upper bound on back-substitution steps before giving up.
pub const MAX_SUBSTITUTIONS: usize = 100_000;

/// Which family of classes a vector is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    /// Irreducible modules `L(λ)`.
    L,
    /// Kac (standard) modules `V(λ)`.
    V,
    /// Indecomposable projectives `P(λ)`.
    P,
}

impl BasisKind {
    pub fn symbol(self) -> char {
        match self {
            BasisKind::L => 'L',
            BasisKind::V => 'V',
            BasisKind::P => 'P',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'L' => Some(BasisKind::L),
            'V' => Some(BasisKind::V),
            'P' => Some(BasisKind::P),
            _ => None,
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for BasisKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbol().to_string())
    }
}

impl<'de> Deserialize<'de> for BasisKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next().and_then(BasisKind::from_symbol), chars.next()) {
            (Some(k), None) => Ok(k),
            _ => Err(D::Error::custom(format!("unknown basis {s:?}"))),
        }
    }
}

/// A finite combination `Σ c_λ(q) [X(λ)]` for one basis kind `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckVector {
    kind: BasisKind,
    entries: BTreeMap<Weight, LaurentPoly>,
}

impl GrothendieckVector {
    pub fn zero(kind: BasisKind) -> Self {
        GrothendieckVector { kind, entries: BTreeMap::new() }
    }

    /// The class `[X(λ)]`.
    pub fn class(kind: BasisKind, lam: Weight) -> Self {
        let mut v = GrothendieckVector::zero(kind);
        v.add_term(lam, &LaurentPoly::one());
        v
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<Weight, LaurentPoly> {
        &self.entries
    }

    pub fn coeff(&self, lam: &Weight) -> LaurentPoly {
        self.entries.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, lam: Weight, c: &LaurentPoly) {
        let entry = self.entries.entry(lam.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.entries.remove(&lam);
        }
    }

    /// `self + c·other`; both must be in the same basis.
    pub fn add_scaled(&mut self, other: &GrothendieckVector, c: &LaurentPoly) {
        debug_assert_eq!(self.kind, other.kind);
        for (w, a) in &other.entries {
            self.add_term(w.clone(), &(a * c));
        }
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: i64) -> GrothendieckVector {
        let mut out = GrothendieckVector::zero(self.kind);
        out.add_scaled(self, &LaurentPoly::constant(c));
        out
    }

    /// The ungraded class: every coefficient evaluated at `q = 1`.
    pub fn at_one(&self) -> GrothendieckVector {
        let mut out = GrothendieckVector::zero(self.kind);
        for (w, c) in &self.entries {
            out.add_term(w.clone(), &LaurentPoly::constant(c.at_one()));
        }
        out
    }
}

impl fmt::Display for GrothendieckVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{}{w}]", self.kind)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    weight: Weight,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    basis: BasisKind,
    entries: Vec<EntryRepr>,
}

impl Serialize for GrothendieckVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorRepr {
            basis: self.kind,
            entries: self.entries.iter().map(|(w, c)| EntryRepr { weight: w.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrothendieckVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = VectorRepr::deserialize(d)?;
        let mut v = GrothendieckVector::zero(r.basis);
        for e in r.entries {
            v.add_term(e.weight, &e.coeff);
        }
        Ok(v)
    }
}

/// `[V(λ)]` in the `L` basis; with `graded` unset every coefficient is `1`.
pub fn standard_in_irreducibles(lam: &Weight, graded: bool) -> GrothendieckVector {
    let mut out = GrothendieckVector::zero(BasisKind::L);
    for mu in lower_set(lam) {
        let deg = if graded { cup_diagram(&mu).clockwise(lam) as i32 } else { 0 };
        out.add_term(mu, &LaurentPoly::monomial(deg, 1));
    }
    out
}

/// `[P(λ)]` in the `V` basis; with `graded` unset every coefficient is `1`.
pub fn projective_in_standards(lam: &Weight, graded: bool) -> GrothendieckVector {
    let mut out = GrothendieckVector::zero(BasisKind::V);
    let cups = cup_diagram(lam);
    for mu in upper_set(lam) {
        let deg = if graded { cups.clockwise(&mu) as i32 } else { 0 };
        out.add_term(mu, &LaurentPoly::monomial(deg, 1));
    }
    out
}

fn check_window(v: &GrothendieckVector, window: Option<&Window>) -> Result<()> {
    if let Some(win) = window {
        if let Some(w) = v.entries.keys().find(|w| !win.contains(w)) {
            return Err(Error::OutsideWindow(w.to_string()));
        }
    }
    Ok(())
}

/// Expands each term through `expand`, which maps one basis class to the next basis down.
fn expand(v: &GrothendieckVector, target: BasisKind, expand: impl Fn(&Weight) -> GrothendieckVector) -> GrothendieckVector {
    let mut out = GrothendieckVector::zero(target);
    for (w, c) in &v.entries {
        out.add_scaled(&expand(w), c);
    }
    out
}

/// Inverts a unitriangular expansion by repeatedly peeling off an extremal weight.
///
/// `pick_min` selects a Bruhat-minimal support element, otherwise a maximal one.
fn peel(
    v: &GrothendieckVector,
    target: BasisKind,
    pick_min: bool,
    window: Option<&Window>,
    expand: impl Fn(&Weight) -> GrothendieckVector,
) -> Result<GrothendieckVector> {
    let mut rest = v.clone();
    let mut out = GrothendieckVector::zero(target);
    for _ in 0..MAX_SUBSTITUTIONS {
        check_window(&rest, window)?;
        let support: Vec<&Weight> = rest.entries.keys().collect();
        let Some(&lam) = support.iter().find(|&&a| {
            support.iter().all(|&b| a == b || !(if pick_min { bruhat_leq(b, a) } else { bruhat_leq(a, b) }))
        }) else {
            return Ok(out);
        };
        let lam = lam.clone();
        let c = rest.coeff(&lam);
        out.add_term(lam.clone(), &c);
        rest.add_scaled(&expand(&lam), &(-&c));
    }
    Err(Error::NonTerminating(MAX_SUBSTITUTIONS))
}

/// Rewrites `v` in the basis `to` in the ungraded Grothendieck group.
///
/// Expansions towards `L` are finite. Expansions away from `L` are computed by
/// back-substitution and fail with [`Error::OutsideWindow`] as soon as an
/// intermediate weight leaves `window`, when one is given.
pub fn change_basis(v: &GrothendieckVector, to: BasisKind, window: Option<&Window>) -> Result<GrothendieckVector> {
    convert(v, to, window, false)
}

/// As [`change_basis`], using the graded multiplicities `q^{deg}`.
pub fn change_basis_graded(v: &GrothendieckVector, to: BasisKind, window: Option<&Window>) -> Result<GrothendieckVector> {
    convert(v, to, window, true)
}

fn convert(v: &GrothendieckVector, to: BasisKind, window: Option<&Window>, graded: bool) -> Result<GrothendieckVector> {
    use BasisKind::*;
    check_window(v, window)?;
    let pv = |w: &Weight| projective_in_standards(w, graded);
    let vl = |w: &Weight| standard_in_irreducibles(w, graded);
    let out = match (v.kind, to) {
        (a, b) if a == b => v.clone(),
        (P, V) => expand(v, V, pv),
        (V, L) => expand(v, L, vl),
        (P, L) => expand(&expand(v, V, pv), L, vl),
        (V, P) => peel(v, P, true, window, pv)?,
        (L, V) => peel(v, V, false, window, vl)?,
        (L, P) => {
            let std = peel(v, V, false, window, vl)?;
            peel(&std, P, true, window, pv)?
        }
        _ => unreachable!("all basis pairs are covered"),
    };
    check_window(&out, window)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{subset_lower, subset_upper};
    use crate::weights::{Restrict, Weight};
    use proptest::prelude::*;

    fn gl11(downs: &[i64]) -> Weight {
        Weight::from_sets(1, 1, downs, &[], &[]).unwrap()
    }

    #[test]
    fn gl11_projective_has_two_standards() {
        let p = projective_in_standards(&gl11(&[3]), true);
        let mut expected = GrothendieckVector::zero(BasisKind::V);
        expected.add_term(gl11(&[3]), &LaurentPoly::one());
        expected.add_term(gl11(&[4]), &LaurentPoly::monomial(1, 1));
        assert_eq!(p, expected);
        let v = standard_in_irreducibles(&gl11(&[3]), true);
        assert_eq!(v.coeff(&gl11(&[3])), LaurentPoly::one());
        assert_eq!(v.coeff(&gl11(&[2])), LaurentPoly::monomial(1, 1));
        assert_eq!(v.entries().len(), 2);
    }

    #[test]
    fn ground_state_projective_is_standard() {
        let win = Window::new(2, 1, 0, 2).unwrap();
        let g = win.ground();
        let p = GrothendieckVector::class(BasisKind::P, g.clone());
        assert_eq!(change_basis(&p, BasisKind::V, Some(&win)).unwrap(), GrothendieckVector::class(BasisKind::V, g.clone()));
        assert_eq!(change_basis(&p, BasisKind::L, Some(&win)).unwrap(), GrothendieckVector::class(BasisKind::L, g));
    }

    #[test]
    fn expansions_match_containment_filters() {
        let win = Window::new(2, 1, 0, 1).unwrap();
        let all = win.enumerate(Restrict::All);
        for lam in &all {
            let v = standard_in_irreducibles(lam, true);
            let expect: Vec<&Weight> = all.iter().filter(|mu| subset_lower(mu, lam)).collect();
            assert!(expect.iter().all(|mu| v.entries().contains_key(*mu)));
            let p = projective_in_standards(lam, true);
            assert!(p.entries().keys().all(|mu| subset_upper(mu, lam)));
        }
    }

    #[test]
    fn back_substitution_reports_escapes() {
        let win = Window::new(1, 1, 0, 2).unwrap();
        let v = GrothendieckVector::class(BasisKind::V, gl11(&[3]));
        assert!(matches!(change_basis(&v, BasisKind::P, Some(&win)), Err(Error::OutsideWindow(_))));
        assert!(matches!(change_basis_graded(&v, BasisKind::P, None), Err(Error::NonTerminating(_))));
        let ungraded = change_basis(&v, BasisKind::P, Some(&win));
        assert!(matches!(ungraded, Err(Error::OutsideWindow(_))));
    }

    #[test]
    fn json_roundtrip() {
        let v = projective_in_standards(&gl11(&[0]), true);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"basis":"V","entries":[{"weight":"#));
        let back: GrothendieckVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    fn weight_pair() -> impl Strategy<Value = (Weight, Weight)> {
        (0u32..3, 0u32..3).prop_flat_map(|(m, n)| {
            let all = Window::new(m, n, 0, 2).unwrap().enumerate(Restrict::MaximalDefect);
            (proptest::sample::select(all.clone()), proptest::sample::select(all))
        })
    }

    proptest! {
        #[test]
        fn roundtrip_through_all_bases((lam, mu) in weight_pair(), c in -3i64..4, graded in any::<bool>()) {
            let conv = if graded { change_basis_graded } else { change_basis };
            let mut p = GrothendieckVector::class(BasisKind::P, lam);
            p.add_term(mu, &LaurentPoly::monomial(1, c));
            if !graded {
                p = p.at_one();
            }
            let v = conv(&p, BasisKind::V, None).unwrap();
            let l = conv(&v, BasisKind::L, None).unwrap();
            prop_assert_eq!(conv(&p, BasisKind::L, None).unwrap(), l.clone());
            let v2 = conv(&l, BasisKind::V, None).unwrap();
            prop_assert_eq!(&v2, &v);
            prop_assert_eq!(conv(&v2, BasisKind::P, None).unwrap(), p.clone());
            prop_assert_eq!(conv(&l, BasisKind::P, None).unwrap(), p);
        }

        #[test]
        fn graded_specializes_to_ungraded((lam, _mu) in weight_pair()) {
            let p = GrothendieckVector::class(BasisKind::P, lam);
            let graded = change_basis_graded(&p, BasisKind::L, None).unwrap();
            prop_assert_eq!(graded.at_one(), change_basis(&p, BasisKind::L, None).unwrap());
        }
    }
}
