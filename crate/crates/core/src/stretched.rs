//! Oriented stretched cap diagrams: stacks of elementary matchings starting at
//! the ground state, counted by their bottom weight.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arcs::{subset_upper, upper_set};
use crate::error::Result;
use crate::functors::{admissible, MatchKind};
use crate::weights::{block_of, Block, Label, Pos, Weight, Window};

/// A sequence `i_1, …, i_d` with each `i_r` admissible for `Γ_{r−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSequence {
    pub indices: Vec<Pos>,
    pub blocks: Vec<Block>,
    pub kinds: Vec<MatchKind>,
}

/// All admissible sequences of length `d` in `I_{p,q}` starting from the block of `λ_{p,q}`.
pub fn admissible_sequences(window: &Window, d: usize) -> Vec<AdmissibleSequence> {
    let start = AdmissibleSequence { indices: Vec::new(), blocks: vec![block_of(&window.ground())], kinds: Vec::new() };
    let mut layer = vec![start];
    for _ in 0..d {
        let mut next = Vec::new();
        for seq in &layer {
            let top = seq.blocks.last().expect("Γ_0 is present");
            for i in window.interval() {
                if let Some((kind, block)) = admissible(top, i) {
                    let mut s = seq.clone();
                    s.indices.push(i);
                    s.blocks.push(block);
                    s.kinds.push(kind);
                    next.push(s);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Projective multiplicities `dim_{p,q}(λ)` and the number of oriented stretched circle diagrams.
///
/// Serialized as `{"dims": [{"lambda": …, "dim": …}], "total": …}` in weight order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchedCounts {
    pub dims: BTreeMap<Weight, u64>,
    pub total: u64,
}

#[derive(Serialize)]
struct DimEntry<'a> {
    lambda: &'a Weight,
    dim: u64,
}

#[derive(Serialize)]
struct CountsRepr<'a> {
    dims: Vec<DimEntry<'a>>,
    total: u64,
}

impl Serialize for StretchedCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CountsRepr {
            dims: self.dims.iter().map(|(lambda, &dim)| DimEntry { lambda, dim }).collect(),
            total: self.total,
        }
        .serialize(s)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, a: usize) -> usize {
        let mut root = a;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = a;
        while self.0[x] != root {
            let up = self.0[x];
            self.0[x] = root;
            x = up;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Weights `γ_r` below `γ_{r−1}` compatible with the matching of kind `kind` at `i`.
fn successors(gamma: &Weight, kind: MatchKind, i: Pos, block: &Block) -> Vec<Weight> {
    use Label::*;
    let (a, b) = (gamma.label(i), gamma.label(i + 1));
    let pairs: Vec<(Label, Label)> = match kind {
        MatchKind::Cup if (a, b) == (Down, Up) || (a, b) == (Up, Down) => vec![(Circle, Cross)],
        MatchKind::Cup => Vec::new(),
        MatchKind::Cap => vec![(Down, Up), (Up, Down)],
        MatchKind::RightShift => vec![(Circle, a)],
        MatchKind::LeftShift => vec![(b, Cross)],
    };
    pairs
        .into_iter()
        .map(|(x, y)| {
            let w = gamma.relabel(&[(i, x), (i + 1, y)]).expect("local moves preserve the rank");
            debug_assert_eq!(&block_of(&w), block);
            w
        })
        .collect()
}

/// Whether every component meeting the bottom line twice has `∨` at its leftmost bottom vertex.
fn generalized_caps_anticlockwise(seq: &AdmissibleSequence, gammas: &[Weight], range: &[Pos]) -> bool {
    let width = range.len();
    let lo = range[0];
    let node = |r: usize, p: Pos| r * width + (p - lo) as usize;
    let levels = gammas.len();
    let mut uf = UnionFind::new(levels * width);
    for r in 1..levels {
        let i = seq.indices[r - 1];
        let block_above = &seq.blocks[r - 1];
        for &p in range {
            if p != i && p != i + 1 && block_above.is_vertex(p) {
                uf.union(node(r - 1, p), node(r, p));
            }
        }
        match seq.kinds[r - 1] {
            MatchKind::Cup => uf.union(node(r - 1, i), node(r - 1, i + 1)),
            MatchKind::Cap => uf.union(node(r, i), node(r, i + 1)),
            MatchKind::RightShift => uf.union(node(r - 1, i), node(r, i + 1)),
            MatchKind::LeftShift => uf.union(node(r - 1, i + 1), node(r, i)),
        }
    }
    let bottom = levels - 1;
    let block = &seq.blocks[bottom];
    let mut first: BTreeMap<usize, (Pos, usize)> = BTreeMap::new();
    for &p in range.iter().filter(|&&p| block.is_vertex(p)) {
        let root = uf.find(node(bottom, p));
        first.entry(root).and_modify(|e| e.1 += 1).or_insert((p, 1));
    }
    first.values().all(|&(p, hits)| hits < 2 || gammas[bottom].label(p) == Label::Down)
}

fn count_sequence(seq: &AdmissibleSequence, ground: &Weight, range: &[Pos]) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    let mut stack: Vec<Vec<Weight>> = vec![vec![ground.clone()]];
    let d = seq.indices.len();
    while let Some(gammas) = stack.pop() {
        let r = gammas.len() - 1;
        if r == d {
            if generalized_caps_anticlockwise(seq, &gammas, range) {
                *out.entry(gammas[d].clone()).or_insert(0) += 1;
            }
            continue;
        }
        for next in successors(&gammas[r], seq.kinds[r], seq.indices[r], &seq.blocks[r + 1]) {
            let mut g = gammas.clone();
            g.push(next);
            stack.push(g);
        }
    }
    out
}

/// `dim_{p,q}(λ)` for all `λ` together with `Σ_{λ,μ} dim(λ) dim(μ) #{ν : λ̲νμ̄ oriented}`.
pub fn enumerate_stretched(p: i64, q: i64, m: u32, n: u32, d: usize) -> Result<StretchedCounts> {
    let window = Window::new(m, n, p, q)?;
    let ground = window.ground();
    let range: Vec<Pos> = window.extended().collect();
    let sequences = admissible_sequences(&window, d);
    let dims = sequences
        .par_iter()
        .map(|seq| count_sequence(seq, &ground, &range))
        .reduce(BTreeMap::new, |mut acc, part| {
            for (w, c) in part {
                *acc.entry(w).or_insert(0) += c;
            }
            acc
        });
    let total = circle_total(&dims);
    Ok(StretchedCounts { dims, total })
}

fn circle_total(dims: &BTreeMap<Weight, u64>) -> u64 {
    let mut total = 0;
    for (lam, a) in dims {
        let above = upper_set(lam);
        for (mu, b) in dims.iter().filter(|(mu, _)| block_of(mu) == block_of(lam)) {
            let middles = above.iter().filter(|nu| subset_upper(nu, mu)).count() as u64;
            total += a * b * middles;
        }
    }
    total
}
