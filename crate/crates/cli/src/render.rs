//! ASCII circle diagrams: a cap row, a label row and a cup row.
//!
//! Arcs are drawn as matching brackets, so nesting reads like parentheses;
//! `|` marks a ray and a blank marks a `×` or `○` vertex.

use std::ops::RangeInclusive;

use kmn_core::arcs::{cap_diagram, cup_diagram, Arc, BasisVector};
use kmn_core::weights::{Block, Pos, Weight};

fn arc_row(arcs: &[Arc], block: &Block, range: RangeInclusive<Pos>) -> String {
    range
        .map(|p| {
            if arcs.iter().any(|a| a.0 == p) {
                '['
            } else if arcs.iter().any(|a| a.1 == p) {
                ']'
            } else if block.is_vertex(p) {
                '|'
            } else {
                ' '
            }
        })
        .collect()
}

fn extent(weight: &Weight, arcs: &[&[Arc]]) -> RangeInclusive<Pos> {
    let points = weight
        .labels()
        .keys()
        .copied()
        .chain(arcs.iter().flat_map(|a| a.iter().flat_map(|&(i, j)| [i, j])));
    let (lo, hi) = points.fold((Pos::MAX, Pos::MIN), |(lo, hi), p| (lo.min(p), hi.max(p)));
    if lo > hi {
        return 0..=0;
    }
    lo - 1..=hi + 1
}

fn rows(caps: &[Arc], weight: &Weight, cups: &[Arc], block: &Block) -> String {
    let range = extent(weight, &[caps, cups]);
    let gutter = format!("{:>4} ", range.start());
    let blank = " ".repeat(gutter.len());
    let trim = |s: String| s.trim_end().to_string();
    [
        trim(format!("{blank}{}", arc_row(caps, block, range.clone()))),
        trim(format!("{gutter}{}", weight.render(range.clone()))),
        trim(format!("{blank}{}", arc_row(cups, block, range))),
    ]
    .join("\n")
        + "\n"
}

/// Renders `a ν b`; the label row starts with the leftmost position shown.
pub fn render_vector(v: &BasisVector) -> String {
    rows(v.upper().arcs(), v.weight(), v.lower().arcs(), v.lower().block())
}

/// Renders `λ̲ λ λ̄`.
pub fn render_weight(w: &Weight) -> String {
    let cups = cup_diagram(w);
    rows(cap_diagram(w).arcs(), w, cups.arcs(), cups.block())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_caps_read_as_brackets() {
        let w = Weight::from_sets(2, 2, &[1, 2], &[], &[]).unwrap();
        assert_eq!(render_weight(&w), "     |[[]]|\n   0 ^vv^^^\n     |[[]]|\n");
    }

    #[test]
    fn crosses_and_circles_are_blank() {
        let w = Weight::from_sets(1, 1, &[], &[0], &[2]).unwrap();
        assert_eq!(render_weight(&w), "     | | |\n  -1 ^x^o^\n     | | |\n");
    }
}
