//! Weight diagrams, blocks, the Bruhat order and the ground-state windows.
//!
//! A weight is a number line whose vertices are labelled `∧`, `∨`, `×` or `○`.
//! Only finitely many vertices carry a label other than `∧`, so weights are
//! stored as a sparse map over an implicit sea of `∧`'s.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex position on the number line.
pub type Pos = i64;

/// Vertex label of a weight diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Up,
    Down,
    Cross,
    Circle,
}

impl Label {
    /// One-letter ASCII form: `^`, `v`, `x`, `o`.
    pub fn symbol(self) -> char {
        match self {
            Label::Up => '^',
            Label::Down => 'v',
            Label::Cross => 'x',
            Label::Circle => 'o',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '^' => Some(Label::Up),
            'v' => Some(Label::Down),
            'x' => Some(Label::Cross),
            'o' => Some(Label::Circle),
            _ => None,
        }
    }

    /// True for `∧` and `∨`, the labels that survive in a block diagram as `•`.
    pub fn is_vertex(self) -> bool {
        matches!(self, Label::Up | Label::Down)
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbol().to_string())
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next().and_then(Label::from_symbol), chars.next()) {
            (Some(l), None) => Ok(l),
            _ => Err(serde::de::Error::custom(format!("unknown label {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    m: u32,
    n: u32,
    labels: BTreeMap<Pos, Label>,
}

/// A weight of rank `(m, n)`: `m` vertices carry `∨` or `×`, `n` carry `∨` or `○`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr", into = "WeightRepr")]
pub struct Weight {
    m: u32,
    n: u32,
    labels: BTreeMap<Pos, Label>,
}

impl TryFrom<WeightRepr> for Weight {
    type Error = Error;

    fn try_from(r: WeightRepr) -> Result<Self> {
        Weight::new(r.m, r.n, r.labels)
    }
}

impl From<Weight> for WeightRepr {
    fn from(w: Weight) -> Self {
        WeightRepr { m: w.m, n: w.n, labels: w.labels }
    }
}

impl Weight {
    /// Builds a weight from explicit labels; `∧` entries are dropped.
    pub fn new(m: u32, n: u32, labels: impl IntoIterator<Item = (Pos, Label)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pos, label) in labels {
            if map.insert(pos, label).is_some() {
                return Err(Error::InvalidWeight(format!("vertex {pos} labelled twice")));
            }
        }
        map.retain(|_, l| *l != Label::Up);
        let count = |l: Label| map.values().filter(|&&x| x == l).count() as u32;
        let (downs, crosses, circles) = (count(Label::Down), count(Label::Cross), count(Label::Circle));
        if downs + crosses != m || downs + circles != n {
            return Err(Error::InvalidWeight(format!(
                "rank ({m}|{n}) needs #v+#x = {m} and #v+#o = {n}, found v={downs} x={crosses} o={circles}"
            )));
        }
        Ok(Weight { m, n, labels: map })
    }

    /// Builds a weight from the positions of its `∨`, `×` and `○` vertices.
    pub fn from_sets(m: u32, n: u32, downs: &[Pos], crosses: &[Pos], circles: &[Pos]) -> Result<Self> {
        let labelled = |ps: &[Pos], l: Label| ps.iter().map(move |&p| (p, l)).collect::<Vec<_>>();
        Weight::new(
            m,
            n,
            labelled(downs, Label::Down)
                .into_iter()
                .chain(labelled(crosses, Label::Cross))
                .chain(labelled(circles, Label::Circle)),
        )
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn label(&self, pos: Pos) -> Label {
        self.labels.get(&pos).copied().unwrap_or(Label::Up)
    }

    /// The non-`∧` labels in ascending position order.
    pub fn labels(&self) -> &BTreeMap<Pos, Label> {
        &self.labels
    }

    pub fn positions_of(&self, label: Label) -> Vec<Pos> {
        self.labels.iter().filter(|(_, &l)| l == label).map(|(&p, _)| p).collect()
    }

    pub fn downs(&self) -> Vec<Pos> {
        self.positions_of(Label::Down)
    }

    /// Number of `∨`'s.
    pub fn defect(&self) -> u32 {
        self.labels.values().filter(|&&l| l == Label::Down).count() as u32
    }

    /// Smallest and largest non-`∧` position.
    pub fn span(&self) -> Option<(Pos, Pos)> {
        Some((*self.labels.keys().next()?, *self.labels.keys().next_back()?))
    }

    /// Returns a copy with the given vertices relabelled.
    pub fn relabel(&self, changes: &[(Pos, Label)]) -> Result<Weight> {
        let mut labels = self.labels.clone();
        for &(pos, label) in changes {
            labels.insert(pos, label);
        }
        Weight::new(self.m, self.n, labels)
    }

    /// The labels on `range` as an ASCII string.
    pub fn render(&self, range: RangeInclusive<Pos>) -> String {
        range.map(|p| self.label(p).symbol()).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})[", self.m, self.n)?;
        for (i, (p, l)) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}@{}", l.symbol(), p)?;
        }
        write!(f, "]")
    }
}

/// Label of a block diagram vertex: `×`, `○`, or `•` standing for either of `∧`, `∨`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockLabel {
    Cross,
    Circle,
    Dot,
}

#[derive(Serialize, Deserialize)]
struct BlockRepr {
    m: u32,
    n: u32,
    crosses: BTreeSet<Pos>,
    circles: BTreeSet<Pos>,
    defect: u32,
}

/// A block: the `×`/`○` positions of its weights together with their common defect.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BlockRepr", into = "BlockRepr")]
pub struct Block {
    m: u32,
    n: u32,
    crosses: BTreeSet<Pos>,
    circles: BTreeSet<Pos>,
    defect: u32,
}

impl TryFrom<BlockRepr> for Block {
    type Error = Error;

    fn try_from(r: BlockRepr) -> Result<Self> {
        Block::new(r.m, r.n, r.crosses, r.circles, r.defect)
    }
}

impl From<Block> for BlockRepr {
    fn from(b: Block) -> Self {
        BlockRepr { m: b.m, n: b.n, crosses: b.crosses, circles: b.circles, defect: b.defect }
    }
}

impl Block {
    pub fn new(m: u32, n: u32, crosses: BTreeSet<Pos>, circles: BTreeSet<Pos>, defect: u32) -> Result<Self> {
        if crosses.intersection(&circles).next().is_some() {
            return Err(Error::InvalidBlock("a vertex is both x and o".into()));
        }
        if crosses.len() as u32 + defect != m || circles.len() as u32 + defect != n {
            return Err(Error::InvalidBlock(format!(
                "rank ({m}|{n}) is inconsistent with {} crosses, {} circles and defect {defect}",
                crosses.len(),
                circles.len()
            )));
        }
        Ok(Block { m, n, crosses, circles, defect })
    }

    pub fn rank(&self) -> (u32, u32) {
        (self.m, self.n)
    }

    pub fn crosses(&self) -> &BTreeSet<Pos> {
        &self.crosses
    }

    pub fn circles(&self) -> &BTreeSet<Pos> {
        &self.circles
    }

    pub fn defect(&self) -> u32 {
        self.defect
    }

    pub fn label(&self, pos: Pos) -> BlockLabel {
        if self.crosses.contains(&pos) {
            BlockLabel::Cross
        } else if self.circles.contains(&pos) {
            BlockLabel::Circle
        } else {
            BlockLabel::Dot
        }
    }

    pub fn is_vertex(&self, pos: Pos) -> bool {
        self.label(pos) == BlockLabel::Dot
    }

    /// The `•` positions in `range`.
    pub fn vertices(&self, range: RangeInclusive<Pos>) -> Vec<Pos> {
        range.filter(|&p| self.is_vertex(p)).collect()
    }

    /// Smallest and largest `×`/`○` position.
    pub fn span(&self) -> Option<(Pos, Pos)> {
        let lo = self.crosses.iter().chain(&self.circles).min()?;
        let hi = self.crosses.iter().chain(&self.circles).max()?;
        Some((*lo, *hi))
    }

    /// The weight of this block with `∨`'s at `downs`.
    pub fn weight_with_downs(&self, downs: &[Pos]) -> Result<Weight> {
        if let Some(p) = downs.iter().find(|&&p| !self.is_vertex(p)) {
            return Err(Error::InvalidWeight(format!("vertex {p} is not a dot of the block")));
        }
        let crosses: Vec<Pos> = self.crosses.iter().copied().collect();
        let circles: Vec<Pos> = self.circles.iter().copied().collect();
        Weight::from_sets(self.m, self.n, downs, &crosses, &circles)
    }
}

/// The block containing `w`.
pub fn block_of(w: &Weight) -> Block {
    Block {
        m: w.m,
        n: w.n,
        crosses: w.positions_of(Label::Cross).into_iter().collect(),
        circles: w.positions_of(Label::Circle).into_iter().collect(),
        defect: w.defect(),
    }
}

pub fn defect(w: &Weight) -> u32 {
    w.defect()
}

/// A dominant integral weight, given by its coefficients on `ε_1, …, ε_{m+n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlWeight {
    pub m: u32,
    pub n: u32,
    pub coeffs: Vec<i64>,
}

impl GlWeight {
    pub fn new(m: u32, n: u32, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != (m + n) as usize {
            return Err(Error::InvalidWeight(format!(
                "expected {} coefficients, found {}",
                m + n,
                coeffs.len()
            )));
        }
        Ok(GlWeight { m, n, coeffs })
    }

    /// The values `a_r = (λ+ρ, ε_r)` for `r ≤ m` and `b_s = (λ+ρ, ε_{m+s})` for `s ≤ n`.
    pub fn shifted(&self) -> (Vec<i64>, Vec<i64>) {
        let m = self.m as usize;
        let a = (0..m).map(|r| self.coeffs[r] - r as i64).collect();
        let b = (0..self.n as usize)
            .map(|s| -(self.coeffs[m + s] + self.m as i64 - 1 - s as i64))
            .collect();
        (a, b)
    }

    pub fn is_dominant(&self) -> bool {
        let (a, b) = self.shifted();
        a.windows(2).all(|w| w[0] > w[1]) && b.windows(2).all(|w| w[0] < w[1])
    }
}

/// The weight diagram of a dominant weight: `∨` on `a ∩ b`, `×` on `a ∖ b`, `○` on `b ∖ a`.
pub fn from_gl_weight(w: &GlWeight) -> Result<Weight> {
    if w.coeffs.len() != (w.m + w.n) as usize {
        return Err(Error::InvalidWeight("coefficient count does not match the rank".into()));
    }
    if !w.is_dominant() {
        return Err(Error::InvalidWeight(format!("{:?} is not dominant", w.coeffs)));
    }
    let (a, b) = w.shifted();
    let a: BTreeSet<Pos> = a.into_iter().collect();
    let b: BTreeSet<Pos> = b.into_iter().collect();
    let labels = a
        .union(&b)
        .map(|&p| match (a.contains(&p), b.contains(&p)) {
            (true, true) => (p, Label::Down),
            (true, false) => (p, Label::Cross),
            _ => (p, Label::Circle),
        });
    Weight::new(w.m, w.n, labels)
}

/// Inverse of [`from_gl_weight`].
pub fn to_gl_weight(w: &Weight) -> GlWeight {
    let mut a: Vec<Pos> = w
        .labels()
        .iter()
        .filter(|(_, &l)| matches!(l, Label::Down | Label::Cross))
        .map(|(&p, _)| p)
        .collect();
    a.reverse();
    let b: Vec<Pos> = w
        .labels()
        .iter()
        .filter(|(_, &l)| matches!(l, Label::Down | Label::Circle))
        .map(|(&p, _)| p)
        .collect();
    let m = w.m() as i64;
    let coeffs = a
        .iter()
        .enumerate()
        .map(|(r, &ar)| ar + r as i64)
        .chain(b.iter().enumerate().map(|(s, &bs)| -bs - m + 1 + s as i64))
        .collect();
    GlWeight { m: w.m(), n: w.n(), coeffs }
}

/// Bruhat order: `b` is reached from `a` by moving `∨`'s rightwards past `∧`'s.
///
/// Uses the prefix-count criterion: every prefix of the number line holds at
/// least as many `∨`'s of `a` as of `b`.
pub fn bruhat_leq(a: &Weight, b: &Weight) -> bool {
    if block_of(a) != block_of(b) {
        return false;
    }
    let (da, db) = (a.downs(), b.downs());
    let mut checkpoints: Vec<Pos> = da.iter().chain(&db).copied().collect();
    checkpoints.sort_unstable();
    checkpoints
        .iter()
        .all(|&i| da.iter().filter(|&&p| p <= i).count() >= db.iter().filter(|&&p| p <= i).count())
}

/// `Σ(× positions) − Σ(○ positions)`.
pub fn height(w: &Weight) -> i64 {
    w.labels()
        .iter()
        .map(|(&p, &l)| match l {
            Label::Cross => p,
            Label::Circle => -p,
            _ => 0,
        })
        .sum()
}

/// No `∧` lies strictly between two `∨`'s.
pub fn is_kostant(w: &Weight) -> bool {
    w.downs().windows(2).all(|pair| {
        let (u, v) = (pair[0], pair[1]);
        (u + 1..v).all(|p| w.label(p) != Label::Up)
    })
}

/// Dimension of the Kac module with highest weight `w`, by the Weyl formula on the even part.
pub fn kac_dimension(w: &Weight) -> u128 {
    let gl = to_gl_weight(w);
    let (a, b) = gl.shifted();
    let weyl = |vals: &[i64]| -> u128 {
        let (mut num, mut den) = (1u128, 1u128);
        for s in 0..vals.len() {
            for t in s + 1..vals.len() {
                num *= vals[s].abs_diff(vals[t]) as u128;
                den *= (t - s) as u128;
            }
        }
        num / den
    };
    (1u128 << (w.m() * w.n())) * weyl(&a) * weyl(&b)
}

/// Which part of a window to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restrict {
    /// All of `Λ_{p,q}`.
    All,
    /// The subset `Λ°_{p,q}`.
    MaximalDefect,
}

/// The ground-state window of rank `(m, n)` attached to `p ≤ q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub m: u32,
    pub n: u32,
    pub p: i64,
    pub q: i64,
}

impl Window {
    pub fn new(m: u32, n: u32, p: i64, q: i64) -> Result<Self> {
        if p > q {
            return Err(Error::InvalidWindow { p, q });
        }
        Ok(Window { m, n, p, q })
    }

    /// `I_{p,q} = {p−m+1, …, q+n−1}`, the admissible functor indices.
    pub fn interval(&self) -> RangeInclusive<Pos> {
        self.p - self.m as i64 + 1..=self.q + self.n as i64 - 1
    }

    /// `I⁺_{p,q} = {p−m+1, …, q+n}`, the vertices that may carry non-`∧` labels.
    pub fn extended(&self) -> RangeInclusive<Pos> {
        self.p - self.m as i64 + 1..=self.q + self.n as i64
    }

    /// `λ_{p,q}`.
    pub fn ground(&self) -> Weight {
        let crosses: Vec<Pos> = (self.p - self.m as i64 + 1..=self.p).collect();
        let circles: Vec<Pos> = (self.q + 1..=self.q + self.n as i64).collect();
        Weight::from_sets(self.m, self.n, &[], &crosses, &circles).expect("ground state is a valid weight")
    }

    /// Membership in `Λ_{p,q}`.
    pub fn contains(&self, w: &Weight) -> bool {
        let range = self.extended();
        w.m() == self.m && w.n() == self.n && w.labels().keys().all(|p| range.contains(p))
    }

    /// Membership in `Λ°_{p,q}`: along every suffix `j, …, q+n` there are at least as many `∧`'s as `∨`'s.
    pub fn contains_restricted(&self, w: &Weight) -> bool {
        if !self.contains(w) {
            return false;
        }
        let mut balance = 0i64;
        for p in self.extended().rev() {
            match w.label(p) {
                Label::Up => balance += 1,
                Label::Down => balance -= 1,
                _ => {}
            }
            if balance < 0 {
                return false;
            }
        }
        true
    }

    /// `Λ_{p,q}` or `Λ°_{p,q}` in ascending order.
    pub fn enumerate(&self, restrict: Restrict) -> Vec<Weight> {
        let positions: Vec<Pos> = self.extended().collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.fill(&positions, 0, self.m, self.n, &mut current, &mut out);
        let mut weights: Vec<Weight> = out
            .into_iter()
            .filter(|w| restrict == Restrict::All || self.contains_restricted(w))
            .collect();
        weights.sort();
        weights
    }

    fn fill(&self, positions: &[Pos], k: usize, a: u32, b: u32, current: &mut Vec<(Pos, Label)>, out: &mut Vec<Weight>) {
        let remaining = (positions.len() - k) as u32;
        if a.max(b) > remaining {
            return;
        }
        if k == positions.len() {
            out.push(Weight::new(self.m, self.n, current.iter().copied()).expect("counts balanced"));
            return;
        }
        let pos = positions[k];
        self.fill(positions, k + 1, a, b, current, out);
        for (label, da, db) in [(Label::Down, 1, 1), (Label::Cross, 1, 0), (Label::Circle, 0, 1)] {
            if a >= da && b >= db {
                current.push((pos, label));
                self.fill(positions, k + 1, a - da, b - db, current, out);
                current.pop();
            }
        }
    }
}

/// `λ_{p,q}`: `×` on `{p−m+1, …, p}` and `○` on `{q+1, …, q+n}`.
pub fn lambda_ground(p: i64, q: i64, m: u32, n: u32) -> Result<Weight> {
    Ok(Window::new(m, n, p, q)?.ground())
}

/// `Λ_{p,q}` or `Λ°_{p,q}`.
pub fn enumerate_window(p: i64, q: i64, m: u32, n: u32, restrict: Restrict) -> Result<Vec<Weight>> {
    Ok(Window::new(m, n, p, q)?.enumerate(restrict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn gl11(i: Pos) -> Weight {
        Weight::from_sets(1, 1, &[i], &[], &[]).unwrap()
    }

    #[test]
    fn dictionary_examples() {
        let zero = from_gl_weight(&GlWeight::new(2, 1, vec![0, 0, 0]).unwrap()).unwrap();
        assert_eq!(zero, Weight::from_sets(2, 1, &[-1], &[0], &[]).unwrap());
        let ground = from_gl_weight(&GlWeight::new(2, 1, vec![0, 0, -3]).unwrap()).unwrap();
        assert_eq!(ground, Weight::from_sets(2, 1, &[], &[-1, 0], &[2]).unwrap());
        assert_eq!(to_gl_weight(&ground).coeffs, vec![0, 0, -3]);
        assert_eq!(to_gl_weight(&zero).coeffs, vec![0, 0, 0]);
        let empty = from_gl_weight(&GlWeight::new(0, 0, vec![]).unwrap()).unwrap();
        assert!(empty.labels().is_empty());
    }

    #[test]
    fn non_dominant_is_rejected() {
        let err = from_gl_weight(&GlWeight::new(2, 0, vec![0, 1]).unwrap());
        assert!(matches!(err, Err(Error::InvalidWeight(_))));
    }

    #[test]
    fn ground_state_matches_dictionary() {
        for (p, q, m, n) in [(0, 1, 2, 1), (-2, 3, 1, 2), (1, 1, 2, 2), (4, 7, 3, 1), (-1, -1, 0, 2)] {
            let mut coeffs = vec![p; m as usize];
            coeffs.extend(std::iter::repeat_n(-(q + m as i64), n as usize));
            let via_dict = from_gl_weight(&GlWeight::new(m, n, coeffs).unwrap()).unwrap();
            assert_eq!(via_dict, lambda_ground(p, q, m, n).unwrap());
        }
        assert!(matches!(lambda_ground(2, 1, 1, 1), Err(Error::InvalidWindow { .. })));
    }

    #[test]
    fn block_and_height_examples() {
        let b = block_of(&gl11(3));
        assert_eq!(b.defect(), 1);
        assert!(b.crosses().is_empty() && b.circles().is_empty());
        let g = lambda_ground(0, 1, 2, 1).unwrap();
        assert_eq!(g.defect(), 0);
        assert_eq!(height(&g), -3);
        assert_eq!(height(&gl11(5)), 0);
        assert_eq!(block_of(&Weight::new(0, 0, []).unwrap()).defect(), 0);
    }

    #[test]
    fn kostant_examples() {
        assert!(is_kostant(&gl11(2)));
        assert!(!is_kostant(&Weight::from_sets(2, 2, &[0, 2], &[], &[]).unwrap()));
        assert!(is_kostant(&Weight::from_sets(2, 2, &[0, 1], &[], &[]).unwrap()));
        assert!(!is_kostant(&Weight::from_sets(3, 3, &[0, 2, 3], &[], &[]).unwrap()));
        assert!(is_kostant(&Weight::from_sets(2, 1, &[0], &[1], &[]).unwrap()));
        let across = Weight::from_sets(3, 3, &[0, 2], &[1], &[]);
        assert!(across.is_err());
        let through_cross = Weight::from_sets(3, 2, &[0, 2], &[1], &[]).unwrap();
        assert!(is_kostant(&through_cross));
    }

    #[test]
    fn small_window_counts() {
        let w = Window::new(1, 1, 0, 0).unwrap();
        let all = w.enumerate(Restrict::All);
        let restricted = w.enumerate(Restrict::MaximalDefect);
        assert_eq!(all.len(), 4);
        assert_eq!(restricted.len(), 3);
        assert!(!restricted.contains(&gl11(1)));
        assert!(restricted.contains(&gl11(0)));
    }

    /// Independent count of `Λ_{p,q}`: every assignment of the four labels to `I⁺`.
    fn brute_window(w: &Window) -> (usize, usize) {
        let positions: Vec<Pos> = w.extended().collect();
        let labels = [Label::Up, Label::Down, Label::Cross, Label::Circle];
        let mut all = 0;
        let mut restricted = 0;
        let total = 4usize.pow(positions.len() as u32);
        for code in 0..total {
            let mut c = code;
            let assignment: Vec<(Pos, Label)> = positions
                .iter()
                .map(|&p| {
                    let l = labels[c % 4];
                    c /= 4;
                    (p, l)
                })
                .collect();
            if let Ok(weight) = Weight::new(w.m, w.n, assignment.clone()) {
                all += 1;
                let ok = (0..assignment.len()).all(|j| {
                    let ups = assignment[j..].iter().filter(|(_, l)| *l == Label::Up).count();
                    let downs = assignment[j..].iter().filter(|(_, l)| *l == Label::Down).count();
                    ups >= downs
                });
                if ok {
                    restricted += 1;
                    assert!(w.contains_restricted(&weight));
                }
            }
        }
        (all, restricted)
    }

    #[test]
    fn window_enumeration_matches_brute_force() {
        for (m, n, p, q) in [(1, 1, 0, 0), (1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0), (1, 2, -1, 1), (0, 1, 0, 2)] {
            let w = Window::new(m, n, p, q).unwrap();
            let (all, restricted) = brute_window(&w);
            assert_eq!(w.enumerate(Restrict::All).len(), all, "{m} {n} {p} {q}");
            assert_eq!(w.enumerate(Restrict::MaximalDefect).len(), restricted);
        }
    }

    #[test]
    fn ground_state_is_unique_minimal_height() {
        for (m, n, p, q) in [(1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0), (1, 2, 3, 4)] {
            let w = Window::new(m, n, p, q).unwrap();
            let ground = w.ground();
            let all = w.enumerate(Restrict::All);
            assert!(w.contains_restricted(&ground));
            let min = all.iter().map(height).min().unwrap();
            let minimal: Vec<_> = all.iter().filter(|x| height(x) == min).collect();
            assert_eq!(minimal, vec![&ground]);
        }
    }

    #[test]
    fn height_and_defect_constant_on_blocks() {
        let w = Window::new(2, 2, 0, 1).unwrap();
        let mut by_block: BTreeMap<Block, Vec<Weight>> = BTreeMap::new();
        for x in w.enumerate(Restrict::All) {
            by_block.entry(block_of(&x)).or_default().push(x);
        }
        for (block, members) in by_block {
            let h = height(&members[0]);
            assert!(members.iter().all(|x| height(x) == h && x.defect() == block.defect()));
        }
    }

    /// Swap-closure oracle for the Bruhat order on a finite window.
    fn swap_closure(a: &Weight, lo: Pos, hi: Pos) -> HashSet<Weight> {
        let mut seen = HashSet::from([a.clone()]);
        let mut queue = VecDeque::from([a.clone()]);
        while let Some(x) = queue.pop_front() {
            for i in lo..=hi {
                for j in i + 1..=hi {
                    if x.label(i) == Label::Down && x.label(j) == Label::Up {
                        let y = x.relabel(&[(i, Label::Up), (j, Label::Down)]).unwrap();
                        if seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn bruhat_matches_swap_closure() {
        let (lo, hi) = (-4, 4);
        let blocks = [
            (0u32, vec![], vec![]),
            (1, vec![], vec![]),
            (1, vec![0], vec![2]),
            (2, vec![], vec![]),
            (2, vec![-1], vec![3]),
            (3, vec![], vec![]),
        ];
        for (defect, crosses, circles) in blocks {
            let m = defect + crosses.len() as u32;
            let n = defect + circles.len() as u32;
            let block = Block::new(m, n, crosses.into_iter().collect(), circles.into_iter().collect(), defect).unwrap();
            let dots = block.vertices(lo..=hi);
            let members: Vec<Weight> = subsets(&dots, defect as usize)
                .into_iter()
                .map(|downs| block.weight_with_downs(&downs).unwrap())
                .collect();
            for a in &members {
                let closure = swap_closure(a, lo, hi);
                for b in &members {
                    assert_eq!(bruhat_leq(a, b), closure.contains(b), "{a} <= {b}");
                }
            }
        }
    }

    fn subsets(items: &[Pos], k: usize) -> Vec<Vec<Pos>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut out = subsets(&items[1..], k);
        for mut rest in subsets(&items[1..], k - 1) {
            rest.insert(0, items[0]);
            out.push(rest);
        }
        out
    }

    #[test]
    fn bruhat_gl11_examples() {
        assert!(bruhat_leq(&gl11(-1), &gl11(0)));
        assert!(!bruhat_leq(&gl11(0), &gl11(-1)));
        assert!(bruhat_leq(&gl11(3), &gl11(3)));
    }

    #[test]
    fn kac_dimension_examples() {
        assert_eq!(kac_dimension(&gl11(0)), 2);
        assert_eq!(kac_dimension(&Weight::new(0, 0, []).unwrap()), 1);
        let natural = from_gl_weight(&GlWeight::new(2, 0, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(kac_dimension(&natural), 2);
        let sym2 = from_gl_weight(&GlWeight::new(2, 1, vec![2, 0, 0]).unwrap()).unwrap();
        assert_eq!(kac_dimension(&sym2), 4 * 3);
    }

    #[test]
    fn json_shape() {
        let w = Weight::from_sets(2, 1, &[-1], &[0], &[]).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"m":2,"n":1,"labels":{"-1":"v","0":"x"}}"#);
        assert_eq!(serde_json::from_str::<Weight>(&s).unwrap(), w);
        assert!(serde_json::from_str::<Weight>(r#"{"m":1,"n":1,"labels":{"0":"x"}}"#).is_err());
    }

    fn arb_weight() -> impl Strategy<Value = Weight> {
        (0u32..4, 0u32..4, 0u32..4, -6i64..6, any::<u64>()).prop_filter_map("fits", |(defect, extra_m, extra_n, offset, seed)| {
            let total = (defect + extra_m + extra_n) as usize;
            let width = total + 4;
            let mut slots: Vec<Pos> = (0..width as i64).map(|p| p + offset).collect();
            let mut s = seed;
            for i in (1..slots.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                slots.swap(i, (s >> 33) as usize % (i + 1));
            }
            let d = defect as usize;
            let (x, o) = (extra_m as usize, extra_n as usize);
            Weight::from_sets(defect + extra_m, defect + extra_n, &slots[..d], &slots[d..d + x], &slots[d + x..d + x + o]).ok()
        })
    }

    proptest! {
        #[test]
        fn dictionary_roundtrip(w in arb_weight()) {
            let gl = to_gl_weight(&w);
            prop_assert!(gl.is_dominant());
            prop_assert_eq!(from_gl_weight(&gl).unwrap(), w);
        }

        #[test]
        fn bruhat_is_partial_order(a in arb_weight(), seed in any::<u64>()) {
            prop_assert!(bruhat_leq(&a, &a));
            let block = block_of(&a);
            let dots = block.vertices(-8..=8);
            let pick = |s: u64| -> Weight {
                let mut chosen = dots.clone();
                let mut s = s;
                for i in (1..chosen.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                    chosen.swap(i, (s >> 33) as usize % (i + 1));
                }
                let mut downs = chosen[..block.defect() as usize].to_vec();
                downs.sort();
                block.weight_with_downs(&downs).unwrap()
            };
            let (b, c) = (pick(seed), pick(seed ^ 0x9e3779b97f4a7c15));
            if bruhat_leq(&a, &b) && bruhat_leq(&b, &a) { prop_assert_eq!(&a, &b); }
            if bruhat_leq(&a, &b) && bruhat_leq(&b, &c) { prop_assert!(bruhat_leq(&a, &c)); }
        }
    }
}
