//! Multiplication of basis vectors by iterated generalized surgery.
//!
//! The first diagram is glued underneath the second. Each mirror pair of a cap
//! of the first and a cup of the second is then replaced by two vertical
//! segments, merging or splitting components according to the rules
//!
//! ```text
//! 1⊗1 ↦ 1   1⊗x ↦ x   x⊗x ↦ 0   1⊗y ↦ y   x⊗y ↦ 0   y⊗y ↦ 0
//! 1 ↦ 1⊗x + x⊗1     x ↦ x⊗x     y ↦ x⊗y
//! ```
//!
//! where `1`/`x` are anticlockwise/clockwise circles and `y` a line.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::arcs::{make_basis_vector, Arc, BasisVector};
use crate::weights::{block_of, Pos};

static UNLISTED: AtomicU64 = AtomicU64::new(0);

/// Total number of surgery configurations outside the rule table seen by this process.
pub fn unlisted_configurations() -> u64 {
    UNLISTED.load(Ordering::Relaxed)
}

/// Value of a component in the surgery TQFT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentValue {
    /// Anticlockwise circle.
    One,
    /// Clockwise circle.
    X,
    /// Line.
    Y,
}

impl fmt::Display for ComponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentValue::One => "1",
            ComponentValue::X => "x",
            ComponentValue::Y => "y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    Merge,
    Split,
}

/// One rule application: input component values and the resulting terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Rule {
    pub kind: StepKind,
    pub inputs: Vec<ComponentValue>,
    pub outputs: Vec<Vec<ComponentValue>>,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vals: &[ComponentValue]| vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("⊗");
        write!(f, "{}↦", join(&self.inputs))?;
        if self.outputs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.outputs.iter().map(|t| join(t)).collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Record of one surgery step across the whole working sum.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub pair: Arc,
    pub kind: StepKind,
    pub rules: Vec<String>,
    pub terms_after: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub unlisted: u64,
}

/// Order in which the mirror pairs of the middle section are cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurgeryOrder {
    /// By left endpoint, then right endpoint; outer pairs precede the pairs they enclose.
    LeftToRight,
    /// Repeatedly the rightmost pair not enclosed by an uncut pair.
    RightToLeft,
}

fn schedule(arcs: &[Arc], order: SurgeryOrder) -> Vec<Arc> {
    match order {
        SurgeryOrder::LeftToRight => {
            let mut v = arcs.to_vec();
            v.sort_unstable();
            v
        }
        SurgeryOrder::RightToLeft => {
            let mut pending = arcs.to_vec();
            let mut out = Vec::with_capacity(arcs.len());
            while !pending.is_empty() {
                let outer = |a: &Arc| !pending.iter().any(|b| b.0 < a.0 && a.1 < b.1);
                let pick = *pending.iter().filter(|a| outer(a)).max().expect("some pair is outermost");
                pending.retain(|a| *a != pick);
                out.push(pick);
            }
            out
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Line {
    Bottom,
    Top,
}

type Node = (Line, usize);

/// Labels of both number lines; `true` means `∨`.
type Labels = (Vec<bool>, Vec<bool>);

/// Shape of the glued diagram over the active positions.
struct Composite {
    lower_cups: Vec<Option<usize>>,
    middle: Vec<Option<usize>>,
    upper_caps: Vec<Option<usize>>,
}

struct Component {
    nodes: Vec<Node>,
    bottom_rays: Vec<Node>,
    top_rays: usize,
}

impl Composite {
    fn len(&self) -> usize {
        self.middle.len()
    }

    fn index(node: Node) -> usize {
        match node {
            (Line::Bottom, k) => 2 * k,
            (Line::Top, k) => 2 * k + 1,
        }
    }

    /// Next node when leaving `node` upwards (`true`) or downwards, with the new direction.
    fn step(&self, node: Node, up: bool) -> Option<(Node, bool)> {
        match (node, up) {
            ((Line::Bottom, k), true) => Some(match self.middle[k] {
                Some(j) => ((Line::Bottom, j), false),
                None => ((Line::Top, k), true),
            }),
            ((Line::Top, k), true) => self.upper_caps[k].map(|j| ((Line::Top, j), false)),
            ((Line::Bottom, k), false) => self.lower_cups[k].map(|j| ((Line::Bottom, j), true)),
            ((Line::Top, k), false) => Some(match self.middle[k] {
                Some(j) => ((Line::Top, j), true),
                None => ((Line::Bottom, k), false),
            }),
        }
    }

    fn components(&self) -> (Vec<usize>, Vec<Component>) {
        let n = self.len();
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let union = |parent: &mut Vec<usize>, a: Node, b: Node| {
            let (ra, rb) = (find(parent, Self::index(a)), find(parent, Self::index(b)));
            parent[ra] = rb;
        };
        for k in 0..n {
            if let Some(j) = self.lower_cups[k] {
                union(&mut parent, (Line::Bottom, k), (Line::Bottom, j));
            }
            match self.middle[k] {
                Some(j) => {
                    union(&mut parent, (Line::Bottom, k), (Line::Bottom, j));
                    union(&mut parent, (Line::Top, k), (Line::Top, j));
                }
                None => union(&mut parent, (Line::Bottom, k), (Line::Top, k)),
            }
            if let Some(j) = self.upper_caps[k] {
                union(&mut parent, (Line::Top, k), (Line::Top, j));
            }
        }
        let mut ids = vec![usize::MAX; 2 * n];
        let mut comps: Vec<Component> = Vec::new();
        let mut root_to_id = BTreeMap::new();
        for k in 0..n {
            for line in [Line::Bottom, Line::Top] {
                let node = (line, k);
                let root = find(&mut parent, Self::index(node));
                let id = *root_to_id.entry(root).or_insert_with(|| {
                    comps.push(Component { nodes: Vec::new(), bottom_rays: Vec::new(), top_rays: 0 });
                    comps.len() - 1
                });
                ids[Self::index(node)] = id;
                let c = &mut comps[id];
                c.nodes.push(node);
                match line {
                    Line::Bottom if self.lower_cups[k].is_none() => c.bottom_rays.push(node),
                    Line::Top if self.upper_caps[k].is_none() => c.top_rays += 1,
                    _ => {}
                }
            }
        }
        (ids, comps)
    }

    fn value(comp: &Component, labels: &Labels) -> ComponentValue {
        if !comp.bottom_rays.is_empty() || comp.top_rays > 0 {
            return ComponentValue::Y;
        }
        let leftmost = *comp.nodes.iter().min_by_key(|n| n.1).expect("components are nonempty");
        if label(labels, leftmost) {
            ComponentValue::One
        } else {
            ComponentValue::X
        }
    }

    /// Orients `comp` to realize `value`; `None` if no orientation exists.
    fn relabel(&self, comp: &Component, value: ComponentValue, labels: &mut Labels) -> Option<()> {
        let (start, mut up) = match value {
            ComponentValue::Y => {
                if comp.bottom_rays.len() != 1 || comp.top_rays != 1 {
                    return None;
                }
                (comp.bottom_rays[0], true)
            }
            circle => {
                if !comp.bottom_rays.is_empty() || comp.top_rays > 0 {
                    return None;
                }
                let leftmost = *comp.nodes.iter().min_by_key(|n| n.1).expect("components are nonempty");
                (leftmost, circle == ComponentValue::X)
            }
        };
        let mut node = start;
        loop {
            set_label(labels, node, !up);
            match self.step(node, up) {
                Some((next, dir)) => {
                    if next == start {
                        return Some(());
                    }
                    node = next;
                    up = dir;
                }
                None => {
                    return (value == ComponentValue::Y && node.0 == Line::Top).then_some(());
                }
            }
        }
    }
}

fn label(labels: &Labels, node: Node) -> bool {
    match node {
        (Line::Bottom, k) => labels.0[k],
        (Line::Top, k) => labels.1[k],
    }
}

fn set_label(labels: &mut Labels, node: Node, down: bool) {
    match node {
        (Line::Bottom, k) => labels.0[k] = down,
        (Line::Top, k) => labels.1[k] = down,
    }
}

fn merge_rule(a: ComponentValue, b: ComponentValue) -> Option<ComponentValue> {
    use ComponentValue::*;
    match (a, b) {
        (One, One) => Some(One),
        (One, X) | (X, One) => Some(X),
        (One, Y) | (Y, One) => Some(Y),
        _ => None,
    }
}

/// Product `x·y` of two basis vectors.
pub fn multiply(x: &BasisVector, y: &BasisVector) -> AlgebraElement {
    multiply_traced(x, y, SurgeryOrder::LeftToRight).0
}

/// Product together with a record of every surgery step.
pub fn multiply_traced(x: &BasisVector, y: &BasisVector, order: SurgeryOrder) -> (AlgebraElement, Trace) {
    let mut trace = Trace::default();
    if x.upper().arcs() != y.lower().arcs() || block_of(x.weight()) != block_of(y.weight()) {
        return (AlgebraElement::zero(), trace);
    }
    let mut positions: Vec<Pos> = x
        .lower()
        .arcs()
        .iter()
        .chain(x.upper().arcs())
        .chain(y.upper().arcs())
        .flat_map(|&(i, j)| [i, j])
        .collect();
    positions.sort_unstable();
    positions.dedup();
    let idx = |p: Pos| positions.binary_search(&p).expect("endpoint is active");
    let pairing = |arcs: &[Arc]| {
        let mut v = vec![None; positions.len()];
        for &(i, j) in arcs {
            v[idx(i)] = Some(idx(j));
            v[idx(j)] = Some(idx(i));
        }
        v
    };
    let mut shape = Composite {
        lower_cups: pairing(x.lower().arcs()),
        middle: pairing(x.upper().arcs()),
        upper_caps: pairing(y.upper().arcs()),
    };
    let start: Labels = (
        positions.iter().map(|&p| x.weight().label(p) == crate::weights::Label::Down).collect(),
        positions.iter().map(|&p| y.weight().label(p) == crate::weights::Label::Down).collect(),
    );
    let mut sum: BTreeMap<Labels, i64> = BTreeMap::from([(start, 1)]);

    for pair in schedule(x.upper().arcs(), order) {
        let (i, j) = (idx(pair.0), idx(pair.1));
        let (ids, comps) = shape.components();
        let cap = ids[Composite::index((Line::Bottom, i))];
        let cup = ids[Composite::index((Line::Top, i))];
        let kind = if cap == cup { StepKind::Split } else { StepKind::Merge };
        let inputs: Vec<(Labels, i64, Vec<ComponentValue>)> = sum
            .into_iter()
            .map(|(labels, c)| {
                let vals = match kind {
                    StepKind::Merge => vec![Composite::value(&comps[cap], &labels), Composite::value(&comps[cup], &labels)],
                    StepKind::Split => vec![Composite::value(&comps[cap], &labels)],
                };
                (labels, c, vals)
            })
            .collect();
        shape.middle[i] = None;
        shape.middle[j] = None;
        let (ids, comps) = shape.components();
        let left = ids[Composite::index((Line::Bottom, i))];
        let right = ids[Composite::index((Line::Bottom, j))];
        let mut next: BTreeMap<Labels, i64> = BTreeMap::new();
        let mut rules: Vec<String> = Vec::new();
        let mut unlisted = 0u64;
        for (labels, coeff, vals) in inputs {
            let outputs: Option<Vec<Vec<(usize, ComponentValue)>>> = match kind {
                // Two lines reconnect into two lines rather than one component; `y⊗y ↦ 0` applies.
                StepKind::Merge if left == right || vals.iter().all(|&v| v == ComponentValue::Y) => {
                    Some(merge_rule(vals[0], vals[1]).map(|v| vec![vec![(left, v)]]).unwrap_or_default())
                }
                StepKind::Split if left != right => {
                    use ComponentValue::*;
                    match vals[0] {
                        One => Some(vec![vec![(left, One), (right, X)], vec![(left, X), (right, One)]]),
                        X => Some(vec![vec![(left, X), (right, X)]]),
                        Y => {
                            let closed = |c: usize| comps[c].bottom_rays.is_empty() && comps[c].top_rays == 0;
                            match (closed(left), closed(right)) {
                                (true, false) => Some(vec![vec![(left, X), (right, Y)]]),
                                (false, true) => Some(vec![vec![(left, Y), (right, X)]]),
                                _ => None,
                            }
                        }
                    }
                }
                _ => None,
            };
            let Some(outputs) = outputs else {
                unlisted += 1;
                continue;
            };
            let rule = Rule {
                kind,
                inputs: vals.clone(),
                outputs: outputs
                    .iter()
                    .map(|t| {
                        let mut vals: Vec<ComponentValue> = t.iter().map(|&(_, v)| v).collect();
                        if kind == StepKind::Split && vals.contains(&ComponentValue::Y) {
                            vals.sort_by_key(|&v| v == ComponentValue::Y);
                        }
                        vals
                    })
                    .collect(),
            }
            .to_string();
            if !rules.contains(&rule) {
                rules.push(rule);
            }
            for term in outputs {
                let mut new_labels = labels.clone();
                let ok = term.iter().all(|&(c, v)| shape.relabel(&comps[c], v, &mut new_labels).is_some());
                if ok {
                    *next.entry(new_labels).or_insert(0) += coeff;
                } else {
                    unlisted += 1;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        trace.unlisted += unlisted;
        trace.steps.push(TraceStep { pair, kind, rules, terms_after: next.len() });
        sum = next;
    }

    let block = block_of(x.weight());
    let mut result = AlgebraElement::zero();
    for ((bottom, top), coeff) in sum {
        if bottom != top {
            trace.unlisted += 1;
            continue;
        }
        let downs: Vec<Pos> = positions.iter().zip(&bottom).filter(|(_, &d)| d).map(|(&p, _)| p).collect();
        let built = block
            .weight_with_downs(&downs)
            .and_then(|nu| make_basis_vector(x.lower().clone(), nu, y.upper().clone()));
        match built {
            Ok(v) => result.add_term(v, coeff),
            Err(_) => trace.unlisted += 1,
        }
    }
    UNLISTED.fetch_add(trace.unlisted, Ordering::Relaxed);
    (result, trace)
}
