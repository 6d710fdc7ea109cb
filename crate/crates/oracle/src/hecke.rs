//! Relation checks for the degenerate affine Hecke action, generalized
//! eigenspace decomposition, and the Casimir scalars behind `x_s`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{OracleError, Result};
use crate::linalg::{joint_generalized_eigenspaces, q as rational, rank, zeros, Mat, Q};
use crate::tensor::{permutation_words, Key, Operator, TensorSpace, TensorVector};

/// Outcome of [`check_hecke_relations`].
#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub m: usize,
    pub n: usize,
    pub p: i64,
    pub q: i64,
    pub d: usize,
    pub dimension: usize,
    pub ground_dimension: usize,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Rank of the operators `x^σ w` and the number `2^d d!` of them, when `d ≤ min(m, n)`.
    pub independence: Option<(usize, usize)>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.ground_dimension == 1 << (self.m * self.n)
            && self.independence.is_none_or(|(r, expected)| r == expected)
    }
}

type Term = (i64, Vec<Operator>);

fn combo(space: &TensorSpace, terms: &[Term], v: &TensorVector) -> Result<TensorVector> {
    let mut out = TensorVector::zero();
    for (c, ops) in terms {
        out.add_scaled(&space.apply_word(ops, v)?, &rational(*c));
    }
    Ok(out)
}

fn relations(space: &TensorSpace) -> Vec<(String, Vec<Term>, Vec<Term>)> {
    use Operator::{S, X};
    let d = space.d;
    let mut rels = Vec::new();
    for r in 1..d {
        rels.push((format!("s{r}^2 = 1"), vec![(1, vec![S(r), S(r)])], vec![(1, vec![])]));
        rels.push((
            format!("s{r} x{} = x{r} s{r} + 1", r + 1),
            vec![(1, vec![S(r), X(r + 1)])],
            vec![(1, vec![X(r), S(r)]), (1, vec![])],
        ));
        for s in (1..=d).filter(|&s| s != r && s != r + 1) {
            rels.push((format!("s{r} x{s} = x{s} s{r}"), vec![(1, vec![S(r), X(s)])], vec![(1, vec![X(s), S(r)])]));
        }
        for t in r + 2..d {
            rels.push((format!("s{r} s{t} = s{t} s{r}"), vec![(1, vec![S(r), S(t)])], vec![(1, vec![S(t), S(r)])]));
        }
        if r + 1 < d {
            rels.push((
                format!("braid s{r} s{}", r + 1),
                vec![(1, vec![S(r), S(r + 1), S(r)])],
                vec![(1, vec![S(r + 1), S(r), S(r + 1)])],
            ));
        }
    }
    for s in 1..=d {
        for t in s + 1..=d {
            rels.push((format!("x{s} x{t} = x{t} x{s}"), vec![(1, vec![X(s), X(t)])], vec![(1, vec![X(t), X(s)])]));
        }
    }
    if d >= 1 {
        let (p, q) = (space.p, space.q);
        rels.push((
            "(x1-p)(x1-q) = 0".to_string(),
            vec![(1, vec![X(1), X(1)]), (-(p + q), vec![X(1)]), (p * q, vec![])],
            vec![],
        ));
    }
    rels
}

/// Verifies the defining relations of `H_d^{p,q}` on every basis vector, and the
/// linear independence of `x^σ w` when `d ≤ min(m, n)`.
pub fn check_hecke_relations(m: usize, n: usize, p: i64, q: i64, d: usize) -> Result<HeckeReport> {
    let space = TensorSpace::new(m, n, p, q, d)?;
    let keys = space.keys();
    let ground_dimension = TensorSpace::new(m, n, p, q, 0)?.keys().len();
    let mut report = HeckeReport {
        m,
        n,
        p,
        q,
        d,
        dimension: keys.len(),
        ground_dimension,
        checked: 0,
        failures: Vec::new(),
        independence: None,
    };
    let rels = relations(&space);
    for key in &keys {
        let v = TensorVector::basis(key.clone());
        for (name, lhs, rhs) in &rels {
            report.checked += 1;
            if combo(&space, lhs, &v)? != combo(&space, rhs, &v)? && report.failures.len() < 16 {
                report.failures.push(format!("{name} fails on {key:?}"));
            }
        }
    }
    if d <= m.min(n) {
        report.independence = Some(independence_rank(&space, &keys)?);
    }
    Ok(report)
}

/// Rank of the `2^d d!` operators `x_1^{σ_1} ⋯ x_d^{σ_d} w`, each flattened over all basis vectors.
fn independence_rank(space: &TensorSpace, keys: &[Key]) -> Result<(usize, usize)> {
    let d = space.d;
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut words = Vec::new();
    for sigma in 0..1usize << d {
        for perm in permutation_words(d) {
            let mut ops: Vec<Operator> = (1..=d).filter(|s| sigma >> (s - 1) & 1 == 1).map(Operator::X).collect();
            ops.extend(perm.into_iter().map(Operator::S));
            words.push(ops);
        }
    }
    let mut columns: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, Q>> = Vec::new();
    for ops in &words {
        let mut row = BTreeMap::new();
        for (i, key) in keys.iter().enumerate() {
            let image = space.apply_word(ops, &TensorVector::basis(key.clone()))?;
            for (k, c) in image.terms() {
                let next = columns.len();
                let col = *columns.entry((i, index[k])).or_insert(next);
                row.insert(col, c.clone());
            }
        }
        rows.push(row);
    }
    let mut dense: Mat = zeros(rows.len(), columns.len());
    for (r, row) in rows.iter().enumerate() {
        for (&c, v) in row {
            dense[r][c] = v.clone();
        }
    }
    Ok((rank(&dense), words.len()))
}

/// Dimensions of the simultaneous generalized eigenspaces of `x_1, …, x_d`, keyed by eigenvalue tuple.
pub fn weight_decomposition(m: usize, n: usize, p: i64, q: i64, d: usize) -> Result<BTreeMap<Vec<i64>, usize>> {
    let space = TensorSpace::new(m, n, p, q, d)?;
    let mut blocks: BTreeMap<Vec<i64>, Vec<Key>> = BTreeMap::new();
    for key in space.keys() {
        blocks.entry(space.weight(&key)).or_default().push(key);
    }
    let slack = (m + n + d + 1) as i64;
    let candidates: Vec<i64> = (p.min(q) - slack..=p.max(q) + slack).collect();
    let mut out: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut missing = 0;
    for keys in blocks.values() {
        let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut ops = Vec::with_capacity(d);
        for s in 1..=d {
            let mut mat = zeros(keys.len(), keys.len());
            for (j, key) in keys.iter().enumerate() {
                for (k, c) in space.act_x(s, &TensorVector::basis(key.clone()))?.terms() {
                    mat[index[k]][j] = c.clone();
                }
            }
            ops.push(mat);
        }
        let (spaces, lost) = joint_generalized_eigenspaces(&ops, keys.len(), &candidates);
        missing += lost;
        for (values, dim) in spaces {
            *out.entry(values).or_insert(0) += dim;
        }
    }
    if missing > 0 {
        return Err(OracleError::MissingEigenvalues(missing));
    }
    Ok(out)
}

/// Both sides of the identity expressing the `Ω` scalar on `V(λ + ε_r)` through `(λ + ρ, ε_r)`.
#[derive(Clone, Debug, Serialize)]
pub struct CasimirReport {
    pub coeffs: Vec<i64>,
    pub r: usize,
    /// `(c_{λ+ε_r} − c_λ − (m − n)) / 2`.
    #[serde(serialize_with = "as_string")]
    pub lhs: Q,
    /// `(λ + ρ, ε_r) − (1 − (−1)^{r̄}) / 2`.
    #[serde(serialize_with = "as_string")]
    pub rhs: Q,
    /// The same with `+` in place of `−`; agrees with `lhs` exactly when `r ≤ m`.
    #[serde(serialize_with = "as_string")]
    pub rhs_plus: Q,
    pub passed: bool,
}

fn as_string<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn form(m: usize, a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).enumerate().fold(Q::zero(), |acc, (k, (x, y))| if k < m { acc + x * y } else { acc - x * y })
}

/// `ρ = Σ_{r ≤ m} (1 − r) ε_r + Σ_{s ≤ n} (m − s) ε_{m+s}`.
pub fn rho(m: usize, n: usize) -> Vec<i64> {
    (1..=m).map(|r| 1 - r as i64).chain((1..=n).map(|s| m as i64 - s as i64)).collect()
}

/// `c_λ = (λ + 2ρ + (m − n − 1) δ, λ)`.
pub fn casimir_scalar(m: usize, n: usize, coeffs: &[i64]) -> Q {
    let rho = rho(m, n);
    let shift = m as i64 - n as i64 - 1;
    let lam: Vec<Q> = coeffs.iter().map(|&c| rational(c)).collect();
    let left: Vec<Q> = (0..m + n)
        .map(|k| {
            let delta = if k < m { 1 } else { -1 };
            rational(coeffs[k] + 2 * rho[k] + shift * delta)
        })
        .collect();
    form(m, &left, &lam)
}

pub fn casimir_check(m: usize, n: usize, coeffs: &[i64], r: usize) -> Result<CasimirReport> {
    if coeffs.len() != m + n || r == 0 || r > m + n {
        return Err(OracleError::IndexOutOfRange(format!("weight of length {} and r = {r}", coeffs.len())));
    }
    let mut shifted = coeffs.to_vec();
    shifted[r - 1] += 1;
    let lhs = (casimir_scalar(m, n, &shifted) - casimir_scalar(m, n, coeffs) - rational(m as i64 - n as i64)) / rational(2);
    let rho = rho(m, n);
    let sign = if r <= m { 1 } else { -1 };
    let pairing = rational(sign * (coeffs[r - 1] + rho[r - 1]));
    let correction = rational(if r <= m { 0 } else { 1 });
    let rhs = &pairing - &correction;
    let rhs_plus = &pairing + &correction;
    let passed = lhs == rhs;
    Ok(CasimirReport { coeffs: coeffs.to_vec(), r, lhs, rhs, rhs_plus, passed })
}

/// The Casimir acting on `v_{p,q}` computed in the tensor model, with the closed form `c_{λ_{p,q}}`.
pub fn casimir_on_ground(m: usize, n: usize, p: i64, q: i64) -> Result<(Option<Q>, Q)> {
    let space = TensorSpace::new(m, n, p, q, 0)?;
    let v = space.pure(&[]);
    let measured = TensorSpace::scalar_multiple(&v, &space.casimir(&v));
    let coeffs: Vec<i64> = (0..m).map(|_| p).chain((0..n).map(|_| -(q + m as i64))).collect();
    Ok((measured, casimir_scalar(m, n, &coeffs)))
}
