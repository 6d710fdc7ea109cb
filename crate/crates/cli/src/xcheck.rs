//! Cross-validations between the diagram calculus and the tensor-space model.
//!
//! * projective multiplicities of `(Σ_i F_i)^d [P(λ_{p,q})]` against stretched circle diagrams;
//! * generalized eigenspaces of `x_1, …, x_d` against `F_{i_d} ⋯ F_{i_1} V(λ_{p,q})`;
//! * functor composites along crystal paths against `2^r [P(λ)]`.

use std::collections::BTreeMap;

use serde::Serialize;

use kmn_core::functors::{apply_f, iterated_functor, verify_path, PathCheck};
use kmn_core::grothendieck::{BasisKind, GrothendieckVector};
use kmn_core::stretched::enumerate_stretched;
use kmn_core::weights::{kac_dimension, Pos, Restrict, Weight, Window};
use kmn_oracle::{weight_decomposition, TensorSpace};

use crate::error::{CliError, Result};

/// Per-weight projective multiplicities from both sides at one `d`.
#[derive(Clone, Debug, Serialize)]
pub struct DecReport {
    pub d: usize,
    pub entries: Vec<DecEntry>,
    pub stretched_total: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecEntry {
    pub lambda: Weight,
    pub functor: i64,
    pub stretched: u64,
}

/// Compares `[(Σ_{i∈I} F_i)^d P(λ_{p,q}) : P(λ)]` with `dim_{p,q}(λ)` for every `λ`.
pub fn dec_check(window: &Window, d: usize) -> Result<DecReport> {
    let image = iterated_functor(window, d)?;
    let counts = enumerate_stretched(window.p, window.q, window.m, window.n, d)?;
    let mut merged: BTreeMap<Weight, (i64, u64)> = BTreeMap::new();
    let mut graded_ok = true;
    for (lam, c) in image.entries() {
        graded_ok &= c.terms().all(|(e, _)| e == 0);
        merged.entry(lam.clone()).or_default().0 = c.at_one();
    }
    for (lam, &k) in &counts.dims {
        merged.entry(lam.clone()).or_default().1 = k;
    }
    let entries: Vec<DecEntry> = merged
        .into_iter()
        .map(|(lambda, (functor, stretched))| DecEntry { lambda, functor, stretched })
        .collect();
    let passed = graded_ok && entries.iter().all(|e| e.functor >= 0 && e.functor as u64 == e.stretched);
    Ok(DecReport { d, entries, stretched_total: counts.total, passed })
}

/// One eigenvalue sequence `𝒊` with both dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenEntry {
    pub sequence: Vec<Pos>,
    pub oracle: usize,
    pub diagram: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct CogReport {
    pub m: u32,
    pub n: u32,
    pub p: i64,
    pub q: i64,
    pub d: usize,
    pub entries: Vec<EigenEntry>,
    /// Whether every sequence with a nonzero space lies in `I_{p,q}^d`; the comparison covers all of `ℤ^d` either way.
    pub within_interval: bool,
    pub passed: bool,
}

/// Dimension of the module with class `v`, read off the standard basis.
fn module_dimension(v: &GrothendieckVector) -> Result<u128> {
    let mut total: i128 = 0;
    for (lam, c) in v.entries() {
        total += c.at_one() as i128 * kac_dimension(lam) as i128;
    }
    u128::try_from(total).map_err(|_| CliError::CheckFailed(format!("negative dimension {total}")))
}

fn support_colours(v: &GrothendieckVector) -> Vec<Pos> {
    let spans: Vec<(Pos, Pos)> = v.entries().keys().filter_map(Weight::span).collect();
    match (spans.iter().map(|s| s.0).min(), spans.iter().map(|s| s.1).max()) {
        (Some(lo), Some(hi)) => (lo - 1..=hi).collect(),
        _ => Vec::new(),
    }
}

/// All `𝒊 ∈ ℤ^d` with `F_{i_d} ⋯ F_{i_1} [V(λ_{p,q})] ≠ 0`, with the composite's dimension.
pub fn functor_dimensions(window: &Window, d: usize) -> Result<BTreeMap<Vec<Pos>, u128>> {
    let mut layer = vec![(Vec::new(), GrothendieckVector::class(BasisKind::V, window.ground()))];
    for _ in 0..d {
        let mut next = Vec::new();
        for (seq, v) in &layer {
            for i in support_colours(v) {
                let w = apply_f(i, v)?;
                if !w.is_zero() {
                    let mut s = seq.clone();
                    s.push(i);
                    next.push((s, w));
                }
            }
        }
        layer = next;
    }
    let mut out = BTreeMap::new();
    for (seq, v) in layer {
        let dim = module_dimension(&v)?;
        if dim > 0 {
            out.insert(seq, dim);
        }
    }
    Ok(out)
}

/// Compares generalized eigenspaces of `x_1, …, x_d` on `V(λ_{p,q}) ⊗ V^{⊗d}` with functor composites.
pub fn cog_check(window: &Window, d: usize) -> Result<CogReport> {
    let (m, n) = (window.m as usize, window.n as usize);
    let oracle = weight_decomposition(m, n, window.p, window.q, d)?;
    let diagram = functor_dimensions(window, d)?;
    let mut keys: Vec<Vec<Pos>> = oracle.keys().chain(diagram.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    let entries: Vec<EigenEntry> = keys
        .into_iter()
        .map(|s| EigenEntry {
            oracle: oracle.get(&s).copied().unwrap_or(0),
            diagram: diagram.get(&s).copied().unwrap_or(0),
            sequence: s,
        })
        .collect();
    let interval = window.interval();
    let within_interval = entries.iter().all(|e| e.sequence.iter().all(|i| interval.contains(i)));
    let total: usize = entries.iter().map(|e| e.oracle).sum();
    let expected = TensorSpace::new(m, n, window.p, window.q, d)?.dimension();
    let passed = total == expected && entries.iter().all(|e| e.oracle as u128 == e.diagram);
    Ok(CogReport { m: window.m, n: window.n, p: window.p, q: window.q, d, entries, within_interval, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    pub checks: Vec<PathCheck>,
    pub passed: bool,
}

/// Runs [`verify_path`] on every weight of `Λ°_{p,q}`.
pub fn path_check(window: &Window) -> Result<PathReport> {
    let checks = window
        .enumerate(Restrict::MaximalDefect)
        .iter()
        .map(verify_path)
        .collect::<kmn_core::Result<Vec<_>>>()?;
    let passed = checks.iter().all(|c| c.passed);
    Ok(PathReport { checks, passed })
}

/// Everything `xcheck` runs on one window.
#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub window: Window,
    pub dec: Vec<DecReport>,
    pub cog: Vec<CogReport>,
    pub paths: PathReport,
    pub passed: bool,
}

/// Runs the decomposition check for `0..=d`, the eigenspace check for `0..=cog_d`, and the path check.
pub fn cross_validate(window: &Window, d: usize, cog_d: usize) -> Result<CrossReport> {
    let dec = (0..=d).map(|k| dec_check(window, k)).collect::<Result<Vec<_>>>()?;
    let cog = (0..=cog_d).map(|k| cog_check(window, k)).collect::<Result<Vec<_>>>()?;
    let paths = path_check(window)?;
    let passed = dec.iter().all(|r| r.passed) && cog.iter().all(|r| r.passed) && paths.passed;
    Ok(CrossReport { window: *window, dec, cog, paths, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl11_eigenspaces_match() {
        for (p, q) in [(0, 0), (0, 1), (-1, 2)] {
            let win = Window::new(1, 1, p, q).unwrap();
            for d in 0..=2 {
                let r = cog_check(&win, d).unwrap();
                assert!(r.passed, "{p} {q} {d}: {:?}", r.entries);
            }
        }
    }

    #[test]
    fn eigenvalues_may_leave_the_interval() {
        let r = cog_check(&Window::new(1, 1, 0, 0).unwrap(), 2).unwrap();
        assert!(!r.within_interval);
        let outside = r.entries.iter().find(|e| e.sequence == vec![0, -1]).unwrap();
        assert_eq!((outside.oracle, outside.diagram), (2, 2));
    }

    #[test]
    fn gl21_decomposition_matches() {
        let win = Window::new(2, 1, 0, 1).unwrap();
        for d in 0..=2 {
            assert!(dec_check(&win, d).unwrap().passed);
        }
    }

    #[test]
    fn ground_composite_is_kac_module() {
        let win = Window::new(2, 2, 0, 0).unwrap();
        let dims = functor_dimensions(&win, 0).unwrap();
        assert_eq!(dims, BTreeMap::from([(vec![], 16)]));
    }
}
