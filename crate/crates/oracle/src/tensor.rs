//! The module `V(λ_{p,q}) ⊗ V^{⊗d}` with its `gl(m|n)`-action and the right
//! action of the degenerate affine Hecke algebra.
//!
//! `V(λ_{p,q})` has basis `e_S v_{p,q}` where `S` runs over subsets of the odd
//! matrix units `e_{r,s}` with `r > m ≥ s`, multiplied in lexicographic order
//! of `(r, s)`. These anticommute, so `S` is stored as a bitmask.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{OracleError, Result};
use crate::linalg::{q as rational, Q};

/// Largest state space the oracle agrees to build.
pub const MAX_DIMENSION: u128 = 1_000_000;

/// A basis vector `e_S v_{p,q} ⊗ v_{i_1} ⊗ … ⊗ v_{i_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Key {
    pub mask: u64,
    pub word: Vec<u8>,
}

/// A rational combination of basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorVector {
    terms: BTreeMap<Key, Q>,
}

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector::default()
    }

    pub fn basis(key: Key) -> Self {
        let mut v = TensorVector::zero();
        v.add_term(key, rational(1));
        v
    }

    pub fn add_term(&mut self, key: Key, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &Key) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &Q) {
        for (k, a) in other.terms() {
            self.add_term(k.clone(), a * c);
        }
    }

    pub fn sub(&self, other: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        out.add_scaled(other, &rational(-1));
        out
    }
}

/// Generators of the algebras acting on the tensor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Left action of the matrix unit `e_{r,s}`.
    E(usize, usize),
    /// Right action of `x_s`.
    X(usize),
    /// Right action of `s_r`.
    S(usize),
}

/// `V(λ_{p,q}) ⊗ V^{⊗d}` for fixed `(m, n, p, q, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub m: usize,
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub d: usize,
    odd_units: Vec<(usize, usize)>,
}

impl TensorSpace {
    pub fn new(m: usize, n: usize, p: i64, q: i64, d: usize) -> Result<Self> {
        let dimension = (m + n) as u128;
        let total = dimension
            .checked_pow(d as u32)
            .and_then(|t| t.checked_mul(1u128.checked_shl((m * n) as u32)?))
            .filter(|&t| t <= MAX_DIMENSION && m * n < 64);
        let Some(_) = total else {
            return Err(OracleError::TooLarge { m, n, d });
        };
        let odd_units = (m + 1..=m + n).flat_map(|r| (1..=m).map(move |s| (r, s))).collect();
        Ok(TensorSpace { m, n, p, q, d, odd_units })
    }

    /// `2^{mn} (m+n)^d`.
    pub fn dimension(&self) -> usize {
        (1usize << (self.m * self.n)) * (self.m + self.n).pow(self.d as u32)
    }

    /// All basis keys in ascending order.
    pub fn keys(&self) -> Vec<Key> {
        let letters = (self.m + self.n) as u8;
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..self.d {
            words = words.into_iter().flat_map(|w| (1..=letters).map(move |i| [w.clone(), vec![i]].concat())).collect();
        }
        let mut keys: Vec<Key> = (0..1u64 << self.odd_units.len())
            .flat_map(|mask| words.iter().map(move |w| Key { mask, word: w.clone() }))
            .collect();
        keys.sort();
        keys
    }

    /// `v_{p,q} ⊗ v_{i_1} ⊗ … ⊗ v_{i_d}`.
    pub fn pure(&self, word: &[u8]) -> TensorVector {
        TensorVector::basis(Key { mask: 0, word: word.to_vec() })
    }

    fn odd(&self, i: usize) -> bool {
        i > self.m
    }

    fn unit_parity(&self, a: usize, b: usize) -> bool {
        self.odd(a) ^ self.odd(b)
    }

    /// Parity of `v_{p,q}`, namely `n(q+m)` mod 2.
    pub fn ground_parity(&self) -> bool {
        (self.n as i64 * (self.q + self.m as i64)).rem_euclid(2) == 1
    }

    fn bit(&self, r: usize, s: usize) -> usize {
        (r - self.m - 1) * self.m + (s - 1)
    }

    /// Parity of `e_S v_{p,q} ⊗ v_{i_1} ⊗ … ⊗ v_{i_len}`.
    fn prefix_parity(&self, key: &Key, len: usize) -> bool {
        let mut par = self.ground_parity() ^ (key.mask.count_ones() % 2 == 1);
        for &i in &key.word[..len] {
            par ^= self.odd(i as usize);
        }
        par
    }

    fn check_unit(&self, a: usize, b: usize) -> Result<()> {
        let top = self.m + self.n;
        if a == 0 || b == 0 || a > top || b > top {
            return Err(OracleError::IndexOutOfRange(format!("e_({a},{b}) with m+n = {top}")));
        }
        Ok(())
    }

    /// `y · e_S v` for the odd unit with index `bit`: exterior multiplication.
    fn wedge(bit: usize, mask: u64) -> Option<(u64, i64)> {
        if mask >> bit & 1 == 1 {
            return None;
        }
        let before = (mask & ((1u64 << bit) - 1)).count_ones();
        Some((mask | 1 << bit, if before.is_multiple_of(2) { 1 } else { -1 }))
    }

    /// `e_{a,b} · (y_1 ⋯ y_k v_{p,q})` for the odd units `factors` in canonical order.
    fn act_monomial(&self, a: usize, b: usize, factors: &[usize]) -> Vec<(u64, i64)> {
        let Some((&first, rest)) = factors.split_first() else {
            return match () {
                _ if a == b && a <= self.m => vec![(0, self.p)],
                _ if a == b => vec![(0, -(self.q + self.m as i64))],
                _ if a > self.m && b <= self.m => vec![(1u64 << self.bit(a, b), 1)],
                _ => Vec::new(),
            };
        };
        let (c, d) = self.odd_units[first];
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        let mut push = |terms: Vec<(u64, i64)>, scale: i64| {
            for (mask, coeff) in terms {
                *out.entry(mask).or_insert(0) += scale * coeff;
            }
        };
        if b == c {
            push(self.act_monomial(a, d, rest), 1);
        }
        if d == a {
            let sign = if self.unit_parity(a, b) { 1 } else { -1 };
            push(self.act_monomial(c, b, rest), sign);
        }
        let sign = if self.unit_parity(a, b) { -1 } else { 1 };
        let inner: Vec<(u64, i64)> = self
            .act_monomial(a, b, rest)
            .into_iter()
            .filter_map(|(mask, coeff)| Self::wedge(first, mask).map(|(m2, s)| (m2, s * coeff)))
            .collect();
        push(inner, sign);
        out.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// `e_{a,b}` on `e_S v_{p,q}`.
    fn act_induced(&self, a: usize, b: usize, mask: u64) -> Vec<(u64, i64)> {
        let factors: Vec<usize> = (0..self.odd_units.len()).filter(|&k| mask >> k & 1 == 1).collect();
        self.act_monomial(a, b, &factors)
    }

    /// `e_{a,b}` acting through the coproduct on the induced factor and the first `len` letters.
    fn act_prefix(&self, a: usize, b: usize, key: &Key, len: usize) -> Vec<(Key, i64)> {
        let mut out = Vec::new();
        for (mask, c) in self.act_induced(a, b, key.mask) {
            out.push((Key { mask, word: key.word.clone() }, c));
        }
        let odd_op = self.unit_parity(a, b);
        for k in 0..len {
            if key.word[k] as usize == b {
                let sign = if odd_op && self.prefix_parity(key, k) { -1 } else { 1 };
                let mut word = key.word.clone();
                word[k] = a as u8;
                out.push((Key { mask: key.mask, word }, sign));
            }
        }
        out
    }

    fn map(&self, v: &TensorVector, f: impl Fn(&Key) -> Vec<(Key, i64)>) -> TensorVector {
        let mut out = TensorVector::zero();
        for (key, c) in v.terms() {
            for (k, a) in f(key) {
                out.add_term(k, c * rational(a));
            }
        }
        out
    }

    /// Left action of `e_{a,b}`.
    pub fn act_e(&self, a: usize, b: usize, v: &TensorVector) -> Result<TensorVector> {
        self.check_unit(a, b)?;
        Ok(self.map(v, |key| self.act_prefix(a, b, key, self.d)))
    }

    /// Right action of `x_s`: `Ω` with its first factor spread over positions `0..s` and its second on position `s`.
    pub fn act_x(&self, s: usize, v: &TensorVector) -> Result<TensorVector> {
        if s == 0 || s > self.d {
            return Err(OracleError::IndexOutOfRange(format!("x_{s} with d = {}", self.d)));
        }
        Ok(self.map(v, |key| {
            let i = key.word[s - 1] as usize;
            let par = self.prefix_parity(key, s - 1);
            let mut out = Vec::new();
            for b in 1..=self.m + self.n {
                let mut sign = if self.odd(b) { -1 } else { 1 };
                if self.unit_parity(i, b) && par {
                    sign = -sign;
                }
                for (mut k, c) in self.act_prefix(i, b, key, s - 1) {
                    k.word[s - 1] = b as u8;
                    out.push((k, sign * c));
                }
            }
            out
        }))
    }

    /// Right action of `s_r`: the signed flip of letters `r` and `r+1`.
    pub fn act_s(&self, r: usize, v: &TensorVector) -> Result<TensorVector> {
        if r == 0 || r >= self.d {
            return Err(OracleError::IndexOutOfRange(format!("s_{r} with d = {}", self.d)));
        }
        Ok(self.map(v, |key| {
            let (a, b) = (key.word[r - 1] as usize, key.word[r] as usize);
            let mut word = key.word.clone();
            word.swap(r - 1, r);
            let sign = if self.odd(a) && self.odd(b) { -1 } else { 1 };
            vec![(Key { mask: key.mask, word }, sign)]
        }))
    }

    pub fn apply(&self, op: Operator, v: &TensorVector) -> Result<TensorVector> {
        match op {
            Operator::E(a, b) => self.act_e(a, b, v),
            Operator::X(s) => self.act_x(s, v),
            Operator::S(r) => self.act_s(r, v),
        }
    }

    /// Applies `ops` left to right, matching the right action `v · (g_1 g_2 ⋯)`.
    pub fn apply_word(&self, ops: &[Operator], v: &TensorVector) -> Result<TensorVector> {
        ops.iter().try_fold(v.clone(), |acc, &op| self.apply(op, &acc))
    }

    /// The `gl(m|n)_0`-weight of a basis vector, as coefficients of `ε_1, …, ε_{m+n}`.
    pub fn weight(&self, key: &Key) -> Vec<i64> {
        let mut w: Vec<i64> =
            (1..=self.m + self.n).map(|r| if r <= self.m { self.p } else { -(self.q + self.m as i64) }).collect();
        for (k, &(r, s)) in self.odd_units.iter().enumerate() {
            if key.mask >> k & 1 == 1 {
                w[r - 1] += 1;
                w[s - 1] -= 1;
            }
        }
        for &i in &key.word {
            w[i as usize - 1] += 1;
        }
        w
    }

    /// The Casimir `Σ (−1)^{s̄} e_{r,s} e_{s,r}` applied to `v`.
    pub fn casimir(&self, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::zero();
        for r in 1..=self.m + self.n {
            for s in 1..=self.m + self.n {
                let inner = self.act_e(s, r, v).expect("indices in range");
                let outer = self.act_e(r, s, &inner).expect("indices in range");
                let sign = if self.odd(s) { -1 } else { 1 };
                out.add_scaled(&outer, &rational(sign));
            }
        }
        out
    }

    /// Coefficient of `v` in `w` when `w` is a multiple of `v`.
    pub fn scalar_multiple(v: &TensorVector, w: &TensorVector) -> Option<Q> {
        let (key, c) = v.terms().next()?;
        let ratio = w.coeff(key) / c;
        let mut diff = w.clone();
        diff.add_scaled(v, &-ratio.clone());
        diff.is_zero().then_some(ratio)
    }
}

/// Signed permutation words for every element of `S_d`, built from simple transpositions.
pub fn permutation_words(d: usize) -> Vec<Vec<usize>> {
    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let id: Vec<usize> = (0..d).collect();
    seen.insert(id.clone(), Vec::new());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for perm in frontier {
            for r in 1..d {
                let mut p = perm.clone();
                p.swap(r - 1, r);
                if !seen.contains_key(&p) {
                    let mut word = seen[&perm].clone();
                    word.push(r);
                    seen.insert(p.clone(), word);
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    seen.into_values().collect()
}
