//! Truncations `K^{p,q} = e^{p,q} K e^{p,q}`, their product tables, graded
//! Cartan and decomposition matrices, and endomorphism rings of projectives.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::arcs::{cap_diagram, cup_diagram, lower_set, make_basis_vector, subset_lower, subset_upper, BasisVector};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::surgery::{multiply, multiply_traced, SurgeryOrder};
use crate::weights::{Restrict, Weight, Window};

/// A finite integer combination of basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<BasisVector, i64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn from_basis(v: BasisVector) -> Self {
        AlgebraElement { terms: BTreeMap::from([(v, 1)]) }
    }

    pub fn add_term(&mut self, v: BasisVector, c: i64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(v) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if c != 0 {
                    slot.insert(c);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, i64)> {
        self.terms.iter().map(|(v, &c)| (v, c))
    }

    pub fn coeff(&self, v: &BasisVector) -> i64 {
        self.terms.get(v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (v, c) in other.terms() {
            out.add_term(v.clone(), c);
        }
        out
    }

    /// The product, extended bilinearly from surgery on basis vectors.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                for (v, c) in multiply(x, y).terms() {
                    out.add_term(v.clone(), a * b * c);
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: i64,
    vector: BasisVector,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self.terms().map(|(v, c)| TermRepr { coeff: c, vector: v.clone() }).collect();
        let mut st = s.serialize_struct("AlgebraElement", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            terms: Vec<TermRepr>,
        }
        let r = Repr::deserialize(d)?;
        let mut out = AlgebraElement::zero();
        for t in r.terms {
            out.add_term(t.vector, t.coeff);
        }
        Ok(out)
    }
}

/// One row of products together with the pairs that escaped the basis.
type RowProducts = (Vec<Vec<(usize, i64)>>, Vec<(usize, usize)>);

/// Sparse product table: entry `(i, j)` lists `(k, c)` with `b_i b_j = Σ c b_k`.
#[derive(Debug)]
pub struct ProductTable {
    dim: usize,
    entries: Vec<Vec<(usize, i64)>>,
    /// Pairs whose product left the truncation basis.
    pub escapes: Vec<(usize, usize)>,
}

impl ProductTable {
    pub fn get(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.entries[i * self.dim + j]
    }
}

/// The truncation `K^{p,q}` with its diagram basis.
#[derive(Debug)]
pub struct Truncation {
    window: Window,
    weights: Vec<Weight>,
    restricted: Vec<Weight>,
    basis: Vec<BasisVector>,
    index: HashMap<BasisVector, usize>,
    idempotents: BTreeMap<Weight, usize>,
    ends: Vec<(usize, usize)>,
    table: OnceLock<ProductTable>,
}

/// Builds `K^{p,q}`: all `μ̲ λ ν̄` with `μ, ν ∈ Λ°_{p,q}` and `λ ∈ Λ_{p,q}`.
pub fn build_truncation(m: u32, n: u32, p: i64, q: i64) -> Result<Truncation> {
    let window = Window::new(m, n, p, q)?;
    let weights = window.enumerate(Restrict::All);
    let restricted = window.enumerate(Restrict::MaximalDefect);
    let mut basis = Vec::new();
    for mu in &restricted {
        let cups = cup_diagram(mu);
        for lam in weights.iter().filter(|lam| subset_lower(mu, lam)) {
            for nu in restricted.iter().filter(|nu| subset_upper(lam, nu)) {
                basis.push(make_basis_vector(cups.clone(), lam.clone(), cap_diagram(nu))?);
            }
        }
    }
    basis.sort();
    let index: HashMap<BasisVector, usize> = basis.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let position = |w: &Weight| restricted.binary_search(w).expect("diagram weights lie in the window");
    let ends = basis.iter().map(|v| (position(&v.left_index()), position(&v.right_index()))).collect();
    let idempotents = restricted
        .iter()
        .map(|w| (w.clone(), index[&crate::arcs::idempotent(w)]))
        .collect();
    Ok(Truncation { window, weights, restricted, basis, index, idempotents, ends, table: OnceLock::new() })
}

impl Truncation {
    pub fn window(&self) -> &Window {
        &self.window
    }

    /// `Λ_{p,q}`.
    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// `Λ°_{p,q}`, the weights carrying idempotents.
    pub fn restricted(&self) -> &[Weight] {
        &self.restricted
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, v: &BasisVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn idempotent(&self, w: &Weight) -> Option<usize> {
        self.idempotents.get(w).copied()
    }

    /// Indices into [`Truncation::restricted`] of the two ends of basis vector `i`.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        self.ends[i]
    }

    /// Basis indices of `e_μ K^{p,q} e_ν`.
    pub fn block_indices(&self, mu: &Weight, nu: &Weight) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].left_index() == *mu && self.basis[i].right_index() == *nu)
            .collect()
    }

    /// `Σ_λ e_λ`.
    pub fn identity(&self) -> AlgebraElement {
        let mut one = AlgebraElement::zero();
        for &i in self.idempotents.values() {
            one.add_term(self.basis[i].clone(), 1);
        }
        one
    }

    /// The product table, computed once and shared.
    pub fn table(&self) -> &ProductTable {
        self.table.get_or_init(|| self.compute_table(SurgeryOrder::LeftToRight))
    }

    fn compute_table(&self, order: SurgeryOrder) -> ProductTable {
        let dim = self.dim();
        let rows: Vec<RowProducts> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![Vec::new(); dim];
                let mut escapes = Vec::new();
                for (j, slot) in row.iter_mut().enumerate() {
                    if self.ends[i].1 != self.ends[j].0 {
                        continue;
                    }
                    let (prod, _) = multiply_traced(&self.basis[i], &self.basis[j], order);
                    for (v, c) in prod.terms() {
                        match self.index_of(v) {
                            Some(k) => slot.push((k, c)),
                            None => escapes.push((i, j)),
                        }
                    }
                    slot.sort_unstable();
                }
                (row, escapes)
            })
            .collect();
        let mut entries = Vec::with_capacity(dim * dim);
        let mut escapes = Vec::new();
        for (row, esc) in rows {
            entries.extend(row);
            escapes.extend(esc);
        }
        ProductTable { dim, entries, escapes }
    }

    /// Product of two elements expressed in basis indices.
    pub fn mul_indexed(&self, a: &BTreeMap<usize, i64>, b: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
        let table = self.table();
        let mut out = BTreeMap::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                for &(k, c) in table.get(i, j) {
                    *out.entry(k).or_insert(0) += x * y * c;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Checks grading, closure, positivity and independence of the surgery order.
    pub fn verify_products(&self) -> ProductReport {
        let table = self.table();
        let other = self.compute_table(SurgeryOrder::RightToLeft);
        let dim = self.dim();
        let mut report = ProductReport {
            pairs: dim * dim,
            nonzero_pairs: 0,
            graded: true,
            closed: table.escapes.is_empty(),
            order_independent: true,
            nonnegative: true,
            max_coefficient: 0,
        };
        for i in 0..dim {
            for j in 0..dim {
                let entry = table.get(i, j);
                if !entry.is_empty() {
                    report.nonzero_pairs += 1;
                }
                if entry != other.get(i, j) {
                    report.order_independent = false;
                }
                let deg = self.basis[i].degree() + self.basis[j].degree();
                for &(k, c) in entry {
                    report.graded &= self.basis[k].degree() == deg;
                    report.nonnegative &= c > 0;
                    report.max_coefficient = report.max_coefficient.max(c);
                }
            }
        }
        report
    }
}

/// Summary of [`Truncation::verify_products`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub pairs: usize,
    pub nonzero_pairs: usize,
    pub graded: bool,
    pub closed: bool,
    pub order_independent: bool,
    pub nonnegative: bool,
    pub max_coefficient: i64,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.graded && self.closed && self.order_independent && self.nonnegative
    }
}

/// A matrix of Laurent polynomials with weight-labelled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyMatrix {
    pub rows: Vec<Weight>,
    pub cols: Vec<Weight>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl PolyMatrix {
    /// `selfᵀ · self`, indexed by the columns.
    pub fn gram(&self) -> PolyMatrix {
        let k = self.cols.len();
        let mut entries = vec![vec![LaurentPoly::zero(); k]; k];
        for row in &self.entries {
            for a in 0..k {
                if row[a].is_zero() {
                    continue;
                }
                for b in 0..k {
                    entries[a][b] += &(&row[a] * &row[b]);
                }
            }
        }
        PolyMatrix { rows: self.cols.clone(), cols: self.cols.clone(), entries }
    }

    /// Entries at `q = 1`.
    pub fn at_one(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|r| r.iter().map(LaurentPoly::at_one).collect()).collect()
    }

    /// CSV with a header row of column weights; entries are written as polynomials in `q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight");
        for c in &self.cols {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for (r, row) in self.rows.iter().zip(&self.entries) {
            let _ = write!(out, "{r}");
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// `D[λ][μ] = q^{deg(μ̲λ)}` for `μ ⊂ λ`; rows `Λ_{p,q}`, columns `Λ°_{p,q}`.
pub fn decomposition_matrix(t: &Truncation, graded: bool) -> PolyMatrix {
    let entries = t
        .weights()
        .iter()
        .map(|lam| {
            t.restricted()
                .iter()
                .map(|mu| {
                    if subset_lower(mu, lam) {
                        let e = if graded { cup_diagram(mu).clockwise(lam) as i32 } else { 0 };
                        LaurentPoly::monomial(e, 1)
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix { rows: t.weights().to_vec(), cols: t.restricted().to_vec(), entries }
}

/// `C[μ][ν] = Σ q^{deg v}` over the basis of `e_μ K^{p,q} e_ν`.
pub fn cartan_matrix(t: &Truncation, graded: bool) -> PolyMatrix {
    let k = t.restricted().len();
    let mut entries = vec![vec![LaurentPoly::zero(); k]; k];
    for (i, v) in t.basis().iter().enumerate() {
        let (a, b) = t.ends(i);
        let e = if graded { v.degree() as i32 } else { 0 };
        entries[a][b].add_term(e, 1);
    }
    PolyMatrix { rows: t.restricted().to_vec(), cols: t.restricted().to_vec(), entries }
}

/// Structure of `e_λ K e_λ` and the checks against `F[x_1, …, x_r]/(x_i²)`.
#[derive(Clone, Debug, Serialize)]
pub struct EndoRing {
    pub weight: Weight,
    pub defect: u32,
    pub dimension: usize,
    pub basis: Vec<BasisVector>,
    /// `(i, j, k)`: `basis[i]·basis[j] = basis[k]`; all other products vanish.
    pub table: Vec<(usize, usize, usize)>,
    pub generators: Vec<BasisVector>,
    pub commutative: bool,
    pub generators_square_to_zero: bool,
    pub products_match: bool,
}

impl EndoRing {
    pub fn passed(&self) -> bool {
        self.dimension == 1 << self.defect && self.commutative && self.generators_square_to_zero && self.products_match
    }
}

/// Computes the endomorphism ring of the projective indexed by `lam`.
pub fn endo_ring(t: &Truncation, lam: &Weight) -> Result<EndoRing> {
    let e = t.idempotent(lam).ok_or_else(|| Error::OutsideWindow(lam.to_string()))?;
    let cups = t.basis()[e].lower().arcs().to_vec();
    if cups.iter().any(|(i, j)| !t.window().extended().contains(i) || !t.window().extended().contains(j)) {
        return Err(Error::OutsideWindow(lam.to_string()));
    }
    let indices = t.block_indices(lam, lam);
    let clockwise_set = |v: &BasisVector| -> u64 {
        cups.iter()
            .enumerate()
            .filter(|(_, &(i, _))| v.weight().label(i) != crate::weights::Label::Down)
            .fold(0, |acc, (k, _)| acc | 1 << k)
    };
    let by_set: BTreeMap<u64, usize> = indices.iter().map(|&i| (clockwise_set(&t.basis()[i]), i)).collect();
    let table_data = t.table();
    let mut table = Vec::new();
    let mut commutative = true;
    let mut products_match = true;
    for (&s, &i) in &by_set {
        for (&u, &j) in &by_set {
            let prod = table_data.get(i, j);
            if prod != table_data.get(j, i) {
                commutative = false;
            }
            let expected: Vec<(usize, i64)> = if s & u == 0 {
                by_set.get(&(s | u)).map(|&k| vec![(k, 1)]).unwrap_or_default()
            } else {
                Vec::new()
            };
            if prod != expected.as_slice() {
                products_match = false;
            }
            if let [(k, 1)] = prod {
                table.push((position(&indices, i), position(&indices, j), position(&indices, *k)));
            }
        }
    }
    let generators: Vec<usize> = by_set.iter().filter(|(s, _)| s.count_ones() == 1).map(|(_, &i)| i).collect();
    let generators_square_to_zero = generators.iter().all(|&g| table_data.get(g, g).is_empty());
    Ok(EndoRing {
        weight: lam.clone(),
        defect: lam.defect(),
        dimension: indices.len(),
        basis: indices.iter().map(|&i| t.basis()[i].clone()).collect(),
        table,
        generators: generators.iter().map(|&i| t.basis()[i].clone()).collect(),
        commutative,
        generators_square_to_zero,
        products_match,
    })
}

fn position(indices: &[usize], i: usize) -> usize {
    indices.iter().position(|&x| x == i).expect("index belongs to the block")
}

/// Composition factors of the Kac module `V(λ)` grouped by degree.
pub fn kac_layers(lam: &Weight) -> BTreeMap<u32, Vec<Weight>> {
    let mut layers: BTreeMap<u32, Vec<Weight>> = BTreeMap::new();
    for mu in lower_set(lam) {
        let deg = cup_diagram(&mu).clockwise(lam);
        layers.entry(deg).or_default().push(mu);
    }
    layers
}

/// How many triples to test for associativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityReport {
    pub triples: usize,
    pub nonzero_triples: usize,
    pub counterexample: Option<(usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Verifies `(xy)z = x(yz)` on basis triples.
pub fn check_associativity(t: &Truncation, mode: AssocMode) -> AssociativityReport {
    let dim = t.dim();
    let table = t.table();
    let triple = |i: usize, j: usize, k: usize| -> (bool, bool) {
        let mut left: BTreeMap<usize, i64> = BTreeMap::new();
        for &(w, c) in table.get(i, j) {
            for &(v, d) in table.get(w, k) {
                *left.entry(v).or_insert(0) += c * d;
            }
        }
        let mut right: BTreeMap<usize, i64> = BTreeMap::new();
        for &(w, c) in table.get(j, k) {
            for &(v, d) in table.get(i, w) {
                *right.entry(v).or_insert(0) += c * d;
            }
        }
        left.retain(|_, c| *c != 0);
        right.retain(|_, c| *c != 0);
        (left == right, !left.is_empty())
    };
    let tally = |acc: (usize, usize, Option<(usize, usize, usize)>), t: (usize, usize, usize)| {
        let (ok, nonzero) = triple(t.0, t.1, t.2);
        let bad = if ok { acc.2 } else { acc.2.map_or(Some(t), |b| Some(b.min(t))) };
        (acc.0 + 1, acc.1 + nonzero as usize, bad)
    };
    let merge = |a: (usize, usize, Option<(usize, usize, usize)>), b: (usize, usize, Option<(usize, usize, usize)>)| {
        let bad = match (a.2, b.2) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        (a.0 + b.0, a.1 + b.1, bad)
    };
    let (triples, nonzero_triples, counterexample) = match mode {
        AssocMode::Exhaustive => (0..dim)
            .into_par_iter()
            .map(|i| {
                (0..dim)
                    .flat_map(|j| (0..dim).map(move |k| (i, j, k)))
                    .fold((0, 0, None), tally)
            })
            .reduce(|| (0, 0, None), merge),
        AssocMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<(usize, usize, usize)> = if dim == 0 {
                Vec::new()
            } else {
                (0..count)
                    .map(|_| (rng.random_range(0..dim), rng.random_range(0..dim), rng.random_range(0..dim)))
                    .collect()
            };
            samples.into_par_iter().fold(|| (0, 0, None), tally).reduce(|| (0, 0, None), merge)
        }
    };
    AssociativityReport { triples, nonzero_triples, counterexample }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{idempotent, oriented_middles};
    use crate::weights::{Label, Pos};

    fn gl11(i: Pos) -> Weight {
        Weight::from_sets(1, 1, &[i], &[], &[]).unwrap()
    }

    /// Independent basis count: every oriented `a λ b` with arcs inside `I⁺`.
    fn brute_dim(t: &Truncation) -> usize {
        let inside = |w: &Weight| {
            cup_diagram(w)
                .arcs()
                .iter()
                .all(|(i, j)| t.window().extended().contains(i) && t.window().extended().contains(j))
        };
        let ends: Vec<&Weight> = t.weights().iter().filter(|w| inside(w)).collect();
        let mut total = 0;
        for a in &ends {
            for b in &ends {
                total += oriented_middles(&cup_diagram(a), &cap_diagram(b))
                    .iter()
                    .filter(|nu| t.window().contains(nu))
                    .count();
            }
        }
        total
    }

    #[test]
    fn small_truncations() {
        let t = build_truncation(1, 1, 0, 0).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(brute_dim(&t), 4);
        let t = build_truncation(0, 0, 2, 5).unwrap();
        assert_eq!(t.dim(), 1);
        for (m, n, p, q) in [(1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0), (1, 2, 0, 1)] {
            let t = build_truncation(m, n, p, q).unwrap();
            assert_eq!(t.dim(), brute_dim(&t), "({m}|{n}) {p} {q}");
        }
    }

    #[test]
    fn restricted_weights_are_those_with_arcs_inside() {
        for (m, n, p, q) in [(1, 1, 0, 3), (2, 1, 0, 2), (2, 2, 0, 1), (1, 2, 0, 1)] {
            let t = build_truncation(m, n, p, q).unwrap();
            let ext = t.window().extended();
            let inside: Vec<Weight> = t
                .weights()
                .iter()
                .filter(|w| cup_diagram(w).arcs().iter().all(|(i, j)| ext.contains(i) && ext.contains(j)))
                .cloned()
                .collect();
            assert_eq!(inside, t.restricted());
        }
    }

    #[test]
    fn gl11_dimensions_and_cartan() {
        let t = build_truncation(1, 1, 0, 5).unwrap();
        let c = cartan_matrix(&t, true);
        let idx = |w: &Weight| t.restricted().iter().position(|x| x == w).unwrap();
        for i in 2..4 {
            assert_eq!(t.block_indices(&gl11(i), &gl11(i)).len(), 2);
            assert_eq!(t.block_indices(&gl11(i), &gl11(i + 1)).len(), 1);
            assert_eq!(t.block_indices(&gl11(i), &gl11(i + 2)).len(), 0);
            let cii = &c.entries[idx(&gl11(i))][idx(&gl11(i))];
            assert_eq!((cii.coeff(0), cii.coeff(2)), (1, 1));
            assert_eq!(c.entries[idx(&gl11(i))][idx(&gl11(i + 1))], LaurentPoly::monomial(1, 1));
        }
        let d = decomposition_matrix(&t, true);
        let row = t.weights().iter().position(|w| *w == gl11(3)).unwrap();
        assert_eq!(d.entries[row][idx(&gl11(3))], LaurentPoly::one());
        assert_eq!(d.entries[row][idx(&gl11(2))], LaurentPoly::monomial(1, 1));
    }

    #[test]
    fn cartan_is_gram_of_decomposition() {
        for (m, n, p, q) in [(1, 1, 0, 2), (2, 1, 0, 1), (2, 2, 0, 0)] {
            let t = build_truncation(m, n, p, q).unwrap();
            for graded in [false, true] {
                assert_eq!(cartan_matrix(&t, graded), decomposition_matrix(&t, graded).gram());
            }
        }
    }

    #[test]
    fn products_are_associative_and_graded() {
        let t = build_truncation(2, 1, 0, 1).unwrap();
        assert!(t.verify_products().passed());
        assert!(check_associativity(&t, AssocMode::Exhaustive).passed());
        let one = t.identity();
        for v in t.basis() {
            let x = AlgebraElement::from_basis(v.clone());
            assert_eq!(one.mul(&x), x);
            assert_eq!(x.mul(&one), x);
        }
        let sampled = check_associativity(&t, AssocMode::Sampled { count: 50, seed: 7 });
        assert_eq!(sampled.triples, 50);
    }

    #[test]
    fn endomorphism_rings() {
        let t = build_truncation(2, 2, 0, 0).unwrap();
        for lam in t.restricted() {
            let r = endo_ring(&t, lam).unwrap();
            assert!(r.passed(), "{lam}");
            assert_eq!(r.generators.len(), lam.defect() as usize);
        }
        let outside = Weight::from_sets(2, 2, &[5, 6], &[], &[]).unwrap();
        assert!(endo_ring(&t, &outside).is_err());
    }

    #[test]
    fn kac_layer_examples() {
        assert_eq!(kac_layers(&gl11(0)), BTreeMap::from([(0, vec![gl11(0)]), (1, vec![gl11(-1)])]));
        let typical = crate::weights::lambda_ground(0, 1, 2, 1).unwrap();
        assert_eq!(kac_layers(&typical), BTreeMap::from([(0, vec![typical.clone()])]));
        let w = Weight::from_sets(3, 3, &[0, 2, 3], &[], &[]).unwrap();
        let layers = kac_layers(&w);
        assert!(layers.keys().all(|&k| k <= 3));
        assert_eq!(layers.values().map(Vec::len).sum::<usize>(), crate::arcs::lower_set(&w).len());
    }

    #[test]
    fn degree_zero_only_for_idempotents() {
        let t = build_truncation(2, 2, 0, 1).unwrap();
        for v in t.basis() {
            assert_eq!(v.degree() == 0, v.is_idempotent());
            if v.is_idempotent() {
                assert_eq!(*v, idempotent(v.weight()));
            }
        }
        assert!(t.basis().iter().all(|v| v.weight().label(100) == Label::Up));
    }

    #[test]
    fn element_json_roundtrip() {
        let t = build_truncation(1, 1, 0, 1).unwrap();
        let x = t.identity();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"terms":[{"coeff":1,"vector":"#));
        assert_eq!(serde_json::from_str::<AlgebraElement>(&s).unwrap(), x);
    }
}
