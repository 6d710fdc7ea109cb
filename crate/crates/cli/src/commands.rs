//! One function per subcommand, each returning the text written to standard output.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use kmn_core::algebra::{
    build_truncation, cartan_matrix, check_associativity, decomposition_matrix, endo_ring, kac_layers, AlgebraElement,
    AssocMode, AssociativityReport, EndoRing, PolyMatrix, ProductReport,
};
use kmn_core::arcs::BasisVector;
use kmn_core::functors::{crystal_graph, verify_path};
use kmn_core::stretched::enumerate_stretched;
use kmn_core::surgery::{multiply_traced, SurgeryOrder, Trace};
use kmn_core::weights::{bruhat_leq, from_gl_weight, to_gl_weight, GlWeight, Pos, Restrict, Weight, Window};
use kmn_oracle::{casimir_check, casimir_on_ground, check_hecke_relations, weight_decomposition};

use crate::error::{CliError, Result};
use crate::render::{render_vector, render_weight};
use crate::xcheck::cross_validate;

/// Standard output of a command and, for checking commands, the reason it failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failure: None }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json { path: path.display().to_string(), message: e.to_string() })
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_json(&read_text(path)?, path)
}

/// A file entry for `dict`: either side of the dictionary.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum DictEntry {
    Gl(GlWeight),
    Diagram(Weight),
}

fn dict_entry(value: serde_json::Value, path: &Path) -> Result<DictEntry> {
    let bad = |e: serde_json::Error| CliError::Json { path: path.display().to_string(), message: e.to_string() };
    if value.get("coeffs").is_some() {
        Ok(DictEntry::Gl(serde_json::from_value(value).map_err(bad)?))
    } else {
        Ok(DictEntry::Diagram(serde_json::from_value(value).map_err(bad)?))
    }
}

/// Converts every entry of a JSON array between coefficient vectors and weight diagrams.
pub fn dict(path: &Path) -> Result<Output> {
    let values: Vec<serde_json::Value> = read_json(path)?;
    let converted = values
        .into_iter()
        .map(|v| {
            Ok(match dict_entry(v, path)? {
                DictEntry::Gl(g) => DictEntry::Diagram(from_gl_weight(&g)?),
                DictEntry::Diagram(w) => DictEntry::Gl(to_gl_weight(&w)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Output::ok(pretty(&converted)))
}

#[derive(Serialize)]
struct BlockReport {
    window: Window,
    weights: Vec<Weight>,
    /// Covering relations `[a, b]` of the Bruhat order, `weights[a] < weights[b]`.
    hasse: Vec<(usize, usize)>,
}

/// The weights of a window with the Hasse diagram of the Bruhat order among them.
pub fn block(window: &Window, restrict: Restrict) -> Result<Output> {
    let weights = window.enumerate(restrict);
    let less = |a: usize, b: usize| a != b && bruhat_leq(&weights[a], &weights[b]);
    let k = weights.len();
    let mut hasse = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if less(a, b) && !(0..k).any(|c| less(a, c) && less(c, b)) {
                hasse.push((a, b));
            }
        }
    }
    Ok(Output::ok(pretty(&BlockReport { window: *window, weights, hasse })))
}

#[derive(Serialize)]
struct ProductOutput {
    product: AlgebraElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Trace>,
}

/// The surgery product of two basis vectors.
pub fn mult(x: &Path, y: &Path, order: SurgeryOrder, trace: bool) -> Result<Output> {
    let a: BasisVector = read_json(x)?;
    let b: BasisVector = read_json(y)?;
    let (product, t) = multiply_traced(&a, &b, order);
    Ok(Output::ok(pretty(&ProductOutput { product, trace: trace.then_some(t) })))
}

/// Output style for matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Csv,
}

fn matrix_output(mat: &PolyMatrix, format: MatrixFormat) -> Output {
    match format {
        MatrixFormat::Json => Output::ok(pretty(mat)),
        MatrixFormat::Csv => Output::ok(mat.to_csv()),
    }
}

/// The Cartan matrix of the truncation, indexed by `Λ°_{p,q}`.
pub fn cartan(window: &Window, graded: bool, format: MatrixFormat) -> Result<Output> {
    let t = build_truncation(window.m, window.n, window.p, window.q)?;
    Ok(matrix_output(&cartan_matrix(&t, graded), format))
}

/// The decomposition matrix `[V(λ) : L(μ)]`, rows `Λ_{p,q}`, columns `Λ°_{p,q}`.
pub fn decomp(window: &Window, graded: bool, format: MatrixFormat) -> Result<Output> {
    let t = build_truncation(window.m, window.n, window.p, window.q)?;
    Ok(matrix_output(&decomposition_matrix(&t, graded), format))
}

#[derive(Serialize)]
struct EndoReport {
    rings: Vec<EndoRing>,
    passed: bool,
}

/// Endomorphism rings `e_λ K e_λ` for the given weight, or for every weight of `Λ°_{p,q}`.
pub fn endo(window: &Window, weight: Option<&Path>) -> Result<Output> {
    let t = build_truncation(window.m, window.n, window.p, window.q)?;
    let targets: Vec<Weight> = match weight {
        Some(path) => vec![read_json(path)?],
        None => t.restricted().to_vec(),
    };
    let rings = targets.iter().map(|lam| endo_ring(&t, lam)).collect::<kmn_core::Result<Vec<_>>>()?;
    let passed = rings.iter().all(EndoRing::passed);
    Ok(Output::ok(pretty(&EndoReport { rings, passed })))
}

#[derive(Serialize)]
struct Layer {
    degree: u32,
    weights: Vec<Weight>,
}

#[derive(Serialize)]
struct KacReport {
    weight: Weight,
    layers: Vec<Layer>,
}

/// Composition factors `L(μ)` of `V(λ)` grouped by degree.
pub fn kac(weight: &Path) -> Result<Output> {
    let lam: Weight = read_json(weight)?;
    let layers = kac_layers(&lam).into_iter().map(|(degree, weights)| Layer { degree, weights }).collect();
    Ok(Output::ok(pretty(&KacReport { weight: lam, layers })))
}

/// A stable DOT node id: `w` and the first 16 hex digits of the SHA-256 of the weight's JSON.
pub fn node_id(w: &Weight) -> String {
    let json = serde_json::to_string(w).expect("weights serialize");
    let digest = Sha256::digest(json.as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("w{hex}")
}

/// The crystal graph of a window in DOT syntax, nodes and edges in canonical order.
pub fn crystal(window: &Window, restrict: Restrict) -> Result<Output> {
    let (nodes, edges) = crystal_graph(window, restrict);
    let range = window.extended();
    let mut out = String::from("digraph crystal {\n");
    for w in &nodes {
        writeln!(out, "  {} [label=\"{}\"];", node_id(w), w.render(range.clone())).expect("string write");
    }
    let mut sorted: Vec<(Pos, String, String)> =
        edges.iter().map(|(a, i, b)| (*i, node_id(a), node_id(b))).collect();
    sorted.sort();
    for (i, a, b) in sorted {
        writeln!(out, "  {a} -> {b} [label=\"{i}\"];").expect("string write");
    }
    out.push_str("}\n");
    Ok(Output::ok(out))
}

/// The greedy crystal path to the ground state and the functor composite along it.
pub fn path(weight: &Path) -> Result<Output> {
    let lam: Weight = read_json(weight)?;
    let check = verify_path(&lam)?;
    Ok(Output::ok(pretty(&check)))
}

/// Projective multiplicities from oriented stretched circle diagrams.
pub fn stretched(window: &Window, d: usize) -> Result<Output> {
    let counts = enumerate_stretched(window.p, window.q, window.m, window.n, d)?;
    Ok(Output::ok(pretty(&counts)))
}

/// Which tensor-space computation `oracle` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleSuite {
    Hecke,
    Eigen,
    Casimir,
}

#[derive(Serialize)]
struct HeckeOutput {
    #[serde(flatten)]
    report: kmn_oracle::HeckeReport,
    passed: bool,
}

#[derive(Serialize)]
struct EigenSpace {
    sequence: Vec<i64>,
    dim: usize,
}

#[derive(Serialize)]
struct CasimirOutput {
    ground_scalar: Option<String>,
    expected_scalar: String,
    shifts: Vec<kmn_oracle::CasimirReport>,
    passed: bool,
}

/// Runs one tensor-space suite on `V(λ_{p,q}) ⊗ V^{⊗d}`.
pub fn oracle(window: &Window, d: usize, suite: OracleSuite) -> Result<Output> {
    let (m, n) = (window.m as usize, window.n as usize);
    match suite {
        OracleSuite::Hecke => {
            let report = check_hecke_relations(m, n, window.p, window.q, d)?;
            let passed = report.passed();
            Ok(Output::ok(pretty(&HeckeOutput { report, passed })))
        }
        OracleSuite::Eigen => {
            let spaces: Vec<EigenSpace> = weight_decomposition(m, n, window.p, window.q, d)?
                .into_iter()
                .map(|(sequence, dim)| EigenSpace { sequence, dim })
                .collect();
            Ok(Output::ok(pretty(&spaces)))
        }
        OracleSuite::Casimir => {
            let (ground, expected) = casimir_on_ground(m, n, window.p, window.q)?;
            let coeffs = to_gl_weight(&window.ground()).coeffs;
            let shifts = (1..=m + n).map(|r| casimir_check(m, n, &coeffs, r)).collect::<kmn_oracle::Result<Vec<_>>>()?;
            let passed = ground.as_ref() == Some(&expected) && shifts.iter().all(|s| s.passed);
            Ok(Output::ok(pretty(&CasimirOutput {
                ground_scalar: ground.map(|g| g.to_string()),
                expected_scalar: expected.to_string(),
                shifts,
                passed,
            })))
        }
    }
}

#[derive(Serialize)]
struct AssocOutput {
    dim: usize,
    products: ProductReport,
    associativity: AssociativityReport,
    passed: bool,
}

/// Closure, grading and order-independence of products, and associativity over all or sampled triples.
pub fn assoc(window: &Window, samples: Option<usize>, seed: u64) -> Result<Output> {
    let t = build_truncation(window.m, window.n, window.p, window.q)?;
    let mode = match samples {
        None => AssocMode::Exhaustive,
        Some(count) => AssocMode::Sampled { count, seed },
    };
    let products = t.verify_products();
    let associativity = check_associativity(&t, mode);
    let passed = products.passed() && associativity.passed();
    Ok(Output::ok(pretty(&AssocOutput { dim: t.dim(), products, associativity, passed })))
}

/// Diagram-side versus tensor-side checks; fails if any comparison disagrees.
pub fn xcheck(window: &Window, d: usize, cog_d: usize) -> Result<Output> {
    let report = cross_validate(window, d, cog_d)?;
    let failure = (!report.passed).then(|| format!("window ({}, {}) of rank ({}|{})", window.p, window.q, window.m, window.n));
    Ok(Output { text: pretty(&report), failure })
}

/// ASCII drawing of a basis vector file, or of `λ̲ λ λ̄` for a weight file.
pub fn render(path: &Path) -> Result<Output> {
    let text = read_text(path)?;
    if let Ok(v) = serde_json::from_str::<BasisVector>(&text) {
        return Ok(Output::ok(render_vector(&v)));
    }
    let w: Weight = parse_json(&text, path)?;
    Ok(Output::ok(render_weight(&w)))
}

/// `count` seeded random basis vectors of a truncation, for property runs from the shell.
pub fn sample(window: &Window, count: usize, seed: u64) -> Result<Output> {
    let t = build_truncation(window.m, window.n, window.p, window.q)?;
    if t.dim() == 0 {
        return Err(CliError::Argument("the truncation is zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: BTreeSet<usize> = (0..count).map(|_| rng.random_range(0..t.dim())).collect();
    let chosen: Vec<&BasisVector> = picks.iter().map(|&i| &t.basis()[i]).collect();
    Ok(Output::ok(pretty(&chosen)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_ids_separate_weights() {
        let a = Weight::from_sets(1, 1, &[0], &[], &[]).unwrap();
        let b = Weight::from_sets(1, 1, &[1], &[], &[]).unwrap();
        assert_eq!(node_id(&a), node_id(&a.clone()));
        assert_ne!(node_id(&a), node_id(&b));
        assert_eq!(node_id(&a).len(), 17);
    }

    #[test]
    fn hasse_edges_are_covers() {
        let win = Window::new(1, 1, 0, 2).unwrap();
        let out = block(&win, Restrict::All).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        let weights: Vec<Weight> = serde_json::from_value(v["weights"].clone()).unwrap();
        let hasse: Vec<(usize, usize)> = serde_json::from_value(v["hasse"].clone()).unwrap();
        let downs: Vec<(Pos, Pos)> = hasse.iter().map(|&(a, b)| (weights[a].downs()[0], weights[b].downs()[0])).collect();
        assert_eq!(downs, vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn xcheck_reports_success() {
        let out = xcheck(&Window::new(1, 1, 0, 0).unwrap(), 2, 1).unwrap();
        assert!(out.failure.is_none());
    }
}
