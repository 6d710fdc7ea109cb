//! Cup and cap diagrams, oriented circle diagrams and their degree.
//!
//! Rays are never stored: every `•` vertex of the block that is not an arc
//! endpoint carries an implicit ray, which must be labelled `∧`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{block_of, Block, Label, Pos, Weight};

/// An arc `(i, j)` with `i < j`.
pub type Arc = (Pos, Pos);

fn validate_arcs(arcs: &[Arc], block: &Block) -> Result<()> {
    let mut ends = std::collections::BTreeSet::new();
    for &(i, j) in arcs {
        if i >= j {
            return Err(Error::InvalidDiagram(format!("arc ({i},{j}) is not increasing")));
        }
        for p in [i, j] {
            if !block.is_vertex(p) {
                return Err(Error::InvalidDiagram(format!("arc endpoint {p} is a x or o vertex")));
            }
            if !ends.insert(p) {
                return Err(Error::InvalidDiagram(format!("vertex {p} meets two arcs")));
            }
        }
    }
    for &(i, j) in arcs {
        for &(k, l) in arcs {
            if i < k && k < j && j < l {
                return Err(Error::InvalidDiagram(format!("arcs ({i},{j}) and ({k},{l}) cross")));
            }
        }
        if let Some(p) = (i + 1..j).find(|p| block.is_vertex(*p) && !ends.contains(p)) {
            return Err(Error::InvalidDiagram(format!("the ray at {p} crosses arc ({i},{j})")));
        }
    }
    if arcs.len() as u32 != block.defect() {
        return Err(Error::InvalidDiagram(format!(
            "{} arcs for a block of defect {}",
            arcs.len(),
            block.defect()
        )));
    }
    Ok(())
}

/// Checks that `weight` orients `arcs`; returns the offending arc or ray on failure.
fn orientation_failure(arcs: &[Arc], block: &Block, weight: &Weight) -> Option<String> {
    if &block_of(weight) != block {
        return Some(format!("weight {weight} is not in the block of the diagram"));
    }
    for &(i, j) in arcs {
        let pair = (weight.label(i), weight.label(j));
        if !matches!(pair, (Label::Down, Label::Up) | (Label::Up, Label::Down)) {
            return Some(format!("arc ({i},{j}) reads {}{}", pair.0.symbol(), pair.1.symbol()));
        }
    }
    let covered = |p: Pos| arcs.iter().any(|&(i, j)| i == p || j == p);
    weight
        .downs()
        .into_iter()
        .find(|&p| !covered(p))
        .map(|p| format!("the ray at {p} is labelled v"))
}

fn clockwise(arcs: &[Arc], weight: &Weight) -> u32 {
    arcs.iter().filter(|&&(i, _)| weight.label(i) == Label::Up).count() as u32
}

#[derive(Serialize, Deserialize)]
struct CupRepr {
    cups: Vec<Arc>,
    block: Block,
}

#[derive(Serialize, Deserialize)]
struct CapRepr {
    caps: Vec<Arc>,
    block: Block,
}

macro_rules! matching_type {
    ($name:ident, $repr:ident, $repr_name:literal, $field:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = $repr_name, into = $repr_name)]
        pub struct $name {
            arcs: Vec<Arc>,
            block: Block,
        }

        impl TryFrom<$repr> for $name {
            type Error = Error;

            fn try_from(r: $repr) -> Result<Self> {
                $name::new(r.$field, r.block)
            }
        }

        impl From<$name> for $repr {
            fn from(d: $name) -> Self {
                $repr { $field: d.arcs, block: d.block }
            }
        }

        impl $name {
            pub fn new(mut arcs: Vec<Arc>, block: Block) -> Result<Self> {
                arcs.sort_unstable();
                validate_arcs(&arcs, &block)?;
                Ok($name { arcs, block })
            }

            /// Arcs sorted by left endpoint.
            pub fn arcs(&self) -> &[Arc] {
                &self.arcs
            }

            pub fn block(&self) -> &Block {
                &self.block
            }

            /// The unique weight whose diagram this is: `∨` at every left endpoint.
            pub fn weight(&self) -> Weight {
                let downs: Vec<Pos> = self.arcs.iter().map(|a| a.0).collect();
                self.block.weight_with_downs(&downs).expect("left endpoints are dots")
            }

            /// The other endpoint of the arc at `p`, if any.
            pub fn partner(&self, p: Pos) -> Option<Pos> {
                self.arcs.iter().find_map(|&(i, j)| match p {
                    _ if p == i => Some(j),
                    _ if p == j => Some(i),
                    _ => None,
                })
            }

            /// Whether `weight` orients this diagram.
            pub fn is_oriented_by(&self, weight: &Weight) -> bool {
                orientation_failure(&self.arcs, &self.block, weight).is_none()
            }

            /// Number of clockwise arcs under `weight`.
            pub fn clockwise(&self, weight: &Weight) -> u32 {
                clockwise(&self.arcs, weight)
            }
        }
    };
}

matching_type!(CupDiagram, CupRepr, "CupRepr", cups, "A non-crossing matching drawn below the number line.");
matching_type!(CapDiagram, CapRepr, "CapRepr", caps, "A non-crossing matching drawn above the number line.");

impl CupDiagram {
    /// Reflection in the number line.
    pub fn mirror(&self) -> CapDiagram {
        CapDiagram { arcs: self.arcs.clone(), block: self.block.clone() }
    }
}

impl CapDiagram {
    pub fn mirror(&self) -> CupDiagram {
        CupDiagram { arcs: self.arcs.clone(), block: self.block.clone() }
    }
}

/// Arcs from matching each `∨` with the nearest free `∧` to its right.
fn matching(w: &Weight) -> Vec<Arc> {
    let mut arcs = Vec::new();
    let Some((lo, hi)) = w.span() else {
        return arcs;
    };
    let mut open: Vec<Pos> = Vec::new();
    let mut p = lo;
    while p <= hi || !open.is_empty() {
        match w.label(p) {
            Label::Down => open.push(p),
            Label::Up => {
                if let Some(i) = open.pop() {
                    arcs.push((i, p));
                }
            }
            _ => {}
        }
        p += 1;
    }
    arcs.sort_unstable();
    arcs
}

/// The cup diagram `λ̲`.
pub fn cup_diagram(w: &Weight) -> CupDiagram {
    CupDiagram { arcs: matching(w), block: block_of(w) }
}

/// The cap diagram `λ̄`, the mirror image of `λ̲`.
pub fn cap_diagram(w: &Weight) -> CapDiagram {
    cup_diagram(w).mirror()
}

/// `μ ⊂ λ`: the labels of `λ` orient `μ̲`.
pub fn subset_lower(mu: &Weight, lam: &Weight) -> bool {
    block_of(mu) == block_of(lam) && cup_diagram(mu).is_oriented_by(lam)
}

/// `μ ⊃ λ`: the labels of `μ` orient `λ̄`.
pub fn subset_upper(mu: &Weight, lam: &Weight) -> bool {
    block_of(mu) == block_of(lam) && cap_diagram(lam).is_oriented_by(mu)
}

/// All `μ` with `μ ⊃ λ`: one `∨` on either end of each cap of `λ̄`.
pub fn upper_set(lam: &Weight) -> Vec<Weight> {
    let arcs = matching(lam);
    let block = block_of(lam);
    let mut out: Vec<Weight> = (0..1u64 << arcs.len())
        .map(|mask| {
            let downs: Vec<Pos> = arcs
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| if mask >> k & 1 == 1 { j } else { i })
                .collect();
            block.weight_with_downs(&downs).expect("arc ends are dots")
        })
        .collect();
    out.sort();
    out
}

/// All `μ` with `μ ⊂ λ`.
///
/// Each cup of `μ̲` has a `∨` of `λ` at one end, and a cup enclosing `k` cups spans
/// `2k` dots, so the `∨`'s of `μ` lie within `2·defect` dots left of `λ`'s.
pub fn lower_set(lam: &Weight) -> Vec<Weight> {
    let downs = lam.downs();
    let block = block_of(lam);
    let k = downs.len();
    if k == 0 {
        return vec![lam.clone()];
    }
    let mut lo = downs[0];
    let mut steps = 0;
    while steps < 2 * k {
        lo -= 1;
        if block.is_vertex(lo) {
            steps += 1;
        }
    }
    let candidates = block.vertices(lo..=downs[k - 1]);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    choose(&candidates, k, &mut chosen, &mut |set| {
        let mu = block.weight_with_downs(set).expect("candidates are dots");
        if cup_diagram(&mu).is_oriented_by(lam) {
            out.push(mu);
        }
    });
    out.sort();
    out
}

fn choose(items: &[Pos], k: usize, chosen: &mut Vec<Pos>, visit: &mut impl FnMut(&[Pos])) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let need = k - chosen.len();
    for idx in 0..items.len() {
        if items.len() - idx < need {
            break;
        }
        chosen.push(items[idx]);
        choose(&items[idx + 1..], k, chosen, visit);
        chosen.pop();
    }
}

/// An oriented circle diagram `a ν b`: a basis vector of the arc algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVector {
    lower: CupDiagram,
    weight: Weight,
    upper: CapDiagram,
}

#[derive(Serialize, Deserialize)]
struct BasisRepr {
    lower: CupDiagram,
    weight: Weight,
    upper: CapDiagram,
    #[serde(default)]
    degree: Option<u32>,
}

impl Serialize for BasisVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasisRepr {
            lower: self.lower.clone(),
            weight: self.weight.clone(),
            upper: self.upper.clone(),
            degree: Some(self.degree()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasisVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BasisRepr::deserialize(d)?;
        let v = make_basis_vector(r.lower, r.weight, r.upper).map_err(serde::de::Error::custom)?;
        match r.degree {
            Some(deg) if deg != v.degree() => Err(serde::de::Error::custom(format!(
                "stated degree {deg} differs from computed degree {}",
                v.degree()
            ))),
            _ => Ok(v),
        }
    }
}

impl PartialOrd for BasisVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasisVector {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.weight, &self.lower, &self.upper).cmp(&(&other.weight, &other.lower, &other.upper))
    }
}

impl BasisVector {
    pub fn lower(&self) -> &CupDiagram {
        &self.lower
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn upper(&self) -> &CapDiagram {
        &self.upper
    }

    /// Number of clockwise cups and caps.
    pub fn degree(&self) -> u32 {
        self.lower.clockwise(&self.weight) + self.upper.clockwise(&self.weight)
    }

    /// `μ` with `a = μ̲`.
    pub fn left_index(&self) -> Weight {
        self.lower.weight()
    }

    /// `ν` with `b = ν̄`.
    pub fn right_index(&self) -> Weight {
        self.upper.weight()
    }

    /// Whether this is an idempotent `e_λ = λ̲ λ λ̄`.
    pub fn is_idempotent(&self) -> bool {
        self.lower.arcs() == self.upper.arcs() && self.degree() == 0
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cups{:?} {} caps{:?}", self.lower.arcs(), self.weight, self.upper.arcs())
    }
}

/// Validating constructor for `a ν b`.
pub fn make_basis_vector(lower: CupDiagram, weight: Weight, upper: CapDiagram) -> Result<BasisVector> {
    if lower.block() != upper.block() {
        return Err(Error::NotOriented("cup and cap diagrams lie in different blocks".into()));
    }
    if let Some(why) = orientation_failure(lower.arcs(), lower.block(), &weight) {
        return Err(Error::NotOriented(format!("cups: {why}")));
    }
    if let Some(why) = orientation_failure(upper.arcs(), upper.block(), &weight) {
        return Err(Error::NotOriented(format!("caps: {why}")));
    }
    Ok(BasisVector { lower, weight, upper })
}

pub fn degree(v: &BasisVector) -> u32 {
    v.degree()
}

/// `e_λ`.
pub fn idempotent(lam: &Weight) -> BasisVector {
    BasisVector { lower: cup_diagram(lam), weight: lam.clone(), upper: cap_diagram(lam) }
}

/// All `ν` for which `a ν b` is oriented.
pub fn oriented_middles(lower: &CupDiagram, upper: &CapDiagram) -> Vec<Weight> {
    if lower.block() != upper.block() {
        return Vec::new();
    }
    upper_set(&upper.weight())
        .into_iter()
        .filter(|nu| lower.is_oriented_by(nu))
        .collect()
}
