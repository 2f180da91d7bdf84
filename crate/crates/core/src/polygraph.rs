//! Explicitly presented regular 2-polygraphs.
//!
//! This is the declaration layer used by the file format and the tabular
//! backend: finite cell sets with boundary maps. Predicate- and
//! construction-backed structures present their polygraph intensionally
//! through the [`crate::structure::Structure`] trait instead.

use crate::error::{Error, Result};
use crate::report::{Finding, Report};
use crate::structure::{sequences, Structure};
use crate::value::{row, V};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCellDecl {
    pub src: V,
    pub tgt: V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCellDecl {
    pub inputs: Vec<V>,
    pub outputs: Vec<V>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RegularTwoPolygraph {
    pub zero_cells: Vec<V>,
    pub one_cells: BTreeMap<V, OneCellDecl>,
    pub two_cells: BTreeMap<V, TwoCellDecl>,
}

/// The restriction to 2-cells with a single input and a single output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGlobularSet {
    pub zero_cells: Vec<V>,
    pub one_cells: BTreeMap<V, OneCellDecl>,
    pub two_cells: BTreeMap<V, (V, V)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualKind {
    Op,
    Co,
}

impl RegularTwoPolygraph {
    pub fn one(&self, id: &V) -> Result<&OneCellDecl> {
        self.one_cells.get(id).ok_or_else(|| Error::UnknownCell(id.clone()))
    }

    pub fn two(&self, id: &V) -> Result<&TwoCellDecl> {
        self.two_cells.get(id).ok_or_else(|| Error::UnknownCell(id.clone()))
    }

    fn row_endpoints(&self, cells: &[V]) -> Result<(V, V)> {
        let first = self.one(&cells[0])?;
        let mut tgt = first.tgt.clone();
        for pair in cells.windows(2) {
            let next = self.one(&pair[1])?;
            if next.src != tgt {
                return Err(Error::Invalid(format!(
                    "sequence {} not composable at {}",
                    row(cells),
                    pair[1]
                )));
            }
            tgt = next.tgt.clone();
        }
        Ok((first.src.clone(), tgt))
    }
}

/// Checks regularity and the four boundary equations on every declared
/// 2-cell; dangling references become structural findings.
pub fn validate_globularity(p: &RegularTwoPolygraph) -> Report {
    let mut report = Report::new("globularity");
    for (id, decl) in &p.one_cells {
        for end in [&decl.src, &decl.tgt] {
            if !p.zero_cells.contains(end) {
                report.push(Finding::new("dangling-zero-cell").with("one_cell", id).with("missing", end));
            }
        }
    }
    for (id, decl) in &p.two_cells {
        if decl.inputs.is_empty() || decl.outputs.is_empty() {
            report.push(Finding::new("regularity-violation").with("two_cell", id));
            continue;
        }
        let mut dangling = false;
        for one in decl.inputs.iter().chain(&decl.outputs) {
            if !p.one_cells.contains_key(one) {
                report.push(Finding::new("dangling-one-cell").with("two_cell", id).with("missing", one));
                dangling = true;
            }
        }
        if dangling {
            continue;
        }
        // Composability inside each boundary row.
        for (side, cells) in [("input", &decl.inputs), ("output", &decl.outputs)] {
            for (k, pair) in cells.windows(2).enumerate() {
                let left = p.one(&pair[0]).unwrap();
                let right = p.one(&pair[1]).unwrap();
                if left.tgt != right.src {
                    report.push(
                        Finding::new("globularity-violation")
                            .with("two_cell", id)
                            .with("side", side)
                            .with("position", (k + 1) as i64),
                    );
                }
            }
        }
        // Shared endpoints of the two rows.
        let in_src = &p.one(&decl.inputs[0]).unwrap().src;
        let out_src = &p.one(&decl.outputs[0]).unwrap().src;
        if in_src != out_src {
            report.push(Finding::new("globularity-violation").with("two_cell", id).with("side", "source"));
        }
        let in_tgt = &p.one(decl.inputs.last().unwrap()).unwrap().tgt;
        let out_tgt = &p.one(decl.outputs.last().unwrap()).unwrap().tgt;
        if in_tgt != out_tgt {
            report.push(Finding::new("globularity-violation").with("two_cell", id).with("side", "target"));
        }
    }
    report
}

/// `op` reverses 1-cell direction and boundary order; `co` swaps inputs and
/// outputs. Both are involutions.
pub fn dual(p: &RegularTwoPolygraph, kind: DualKind) -> RegularTwoPolygraph {
    let mut out = p.clone();
    match kind {
        DualKind::Op => {
            for decl in out.one_cells.values_mut() {
                std::mem::swap(&mut decl.src, &mut decl.tgt);
            }
            for decl in out.two_cells.values_mut() {
                decl.inputs.reverse();
                decl.outputs.reverse();
            }
        }
        DualKind::Co => {
            for decl in out.two_cells.values_mut() {
                std::mem::swap(&mut decl.inputs, &mut decl.outputs);
            }
        }
    }
    out
}

pub fn truncate_globular(p: &RegularTwoPolygraph) -> TwoGlobularSet {
    let two_cells = p
        .two_cells
        .iter()
        .filter(|(_, d)| d.inputs.len() == 1 && d.outputs.len() == 1)
        .map(|(id, d)| (id.clone(), (d.inputs[0].clone(), d.outputs[0].clone())))
        .collect();
    TwoGlobularSet {
        zero_cells: p.zero_cells.clone(),
        one_cells: p.one_cells.clone(),
        two_cells,
    }
}

/// Composable sequences from `x` to `y` of weighted length at most
/// `max_len`, in the canonical order.
pub fn enumerate_sequences(s: &dyn Structure, x: &V, y: &V, max_len: usize) -> Vec<Vec<V>> {
    sequences(s, Some(x), Some(y), max_len, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::value::V;

    #[test]
    fn b4_polygraph_is_globular() {
        let p = fixtures::b4_polygraph();
        // Oracle: check the defining equations directly on a sample cell.
        let cell = p.two_cells.values().next().unwrap();
        let in_src = &p.one(&cell.inputs[0]).unwrap().src;
        let out_src = &p.one(&cell.outputs[0]).unwrap().src;
        assert_eq!(in_src, out_src);
        assert!(validate_globularity(&p).is_empty());
    }

    #[test]
    fn empty_input_list_is_a_regularity_violation() {
        let mut p = fixtures::b4_polygraph();
        p.two_cells.insert(
            V::sym("bad"),
            TwoCellDecl { inputs: vec![], outputs: vec![V::sym("1")] },
        );
        let report = validate_globularity(&p);
        assert!(report.findings.iter().any(|f| f.kind == "regularity-violation"));
    }

    #[test]
    fn swapping_a_one_cell_breaks_incident_two_cells() {
        // A two-object polygraph where swapping src/tgt of the bridge
        // 1-cell breaks every incident 2-cell.
        let mut p = RegularTwoPolygraph::default();
        p.zero_cells = vec![V::sym("x"), V::sym("y")];
        p.one_cells.insert(V::sym("a"), OneCellDecl { src: V::sym("x"), tgt: V::sym("y") });
        p.one_cells.insert(V::sym("c"), OneCellDecl { src: V::sym("y"), tgt: V::sym("x") });
        p.two_cells.insert(
            V::sym("p"),
            TwoCellDecl {
                inputs: vec![V::sym("a"), V::sym("c")],
                outputs: vec![V::sym("a"), V::sym("c")],
            },
        );
        p.two_cells.insert(
            V::sym("q"),
            TwoCellDecl {
                inputs: vec![V::sym("c"), V::sym("a")],
                outputs: vec![V::sym("c"), V::sym("a")],
            },
        );
        assert!(validate_globularity(&p).is_empty());
        let decl = p.one_cells.get_mut(&V::sym("a")).unwrap();
        std::mem::swap(&mut decl.src, &mut decl.tgt);
        let report = validate_globularity(&p);
        let broken: std::collections::BTreeSet<_> = report
            .findings
            .iter()
            .filter(|f| f.kind == "globularity-violation")
            .filter_map(|f| f.get("two_cell"))
            .collect();
        assert_eq!(broken.len(), 2, "every incident 2-cell must break: {report}");
    }

    #[test]
    fn duals_are_involutions_and_commute() {
        let p = fixtures::b4_polygraph();
        assert_eq!(dual(&dual(&p, DualKind::Op), DualKind::Op), p);
        assert_eq!(dual(&dual(&p, DualKind::Co), DualKind::Co), p);
        assert_eq!(
            dual(&dual(&p, DualKind::Op), DualKind::Co),
            dual(&dual(&p, DualKind::Co), DualKind::Op)
        );
    }

    #[test]
    fn co_swaps_boundaries() {
        let mut p = RegularTwoPolygraph::default();
        p.zero_cells = vec![V::sym("x")];
        p.one_cells.insert(V::sym("a"), OneCellDecl { src: V::sym("x"), tgt: V::sym("x") });
        p.one_cells.insert(V::sym("b"), OneCellDecl { src: V::sym("x"), tgt: V::sym("x") });
        p.one_cells.insert(V::sym("c"), OneCellDecl { src: V::sym("x"), tgt: V::sym("x") });
        p.two_cells.insert(
            V::sym("p"),
            TwoCellDecl { inputs: vec![V::sym("a"), V::sym("b")], outputs: vec![V::sym("c")] },
        );
        let q = dual(&p, DualKind::Co);
        let decl = q.two(&V::sym("p")).unwrap();
        assert_eq!(decl.inputs, vec![V::sym("c")]);
        assert_eq!(decl.outputs, vec![V::sym("a"), V::sym("b")]);
    }

    #[test]
    fn op_reverses_one_cells() {
        let p = fixtures::b4_polygraph();
        let q = dual(&p, DualKind::Op);
        for (id, decl) in &p.one_cells {
            let d = q.one(id).unwrap();
            assert_eq!(d.src, decl.tgt);
            assert_eq!(d.tgt, decl.src);
        }
    }

    #[test]
    fn x2_truncation_keeps_parity_endocells() {
        let x2 = fixtures::x2();
        // Oracle: the (1,1) cells of the parity structure are exactly the
        // two cells (0)->(0) and (1)->(1).
        let mut found = Vec::new();
        for a in [V::Int(0), V::Int(1)] {
            for b in [V::Int(0), V::Int(1)] {
                let hom = x2.hom(&[a.clone()], &[b.clone()]).unwrap();
                if !hom.is_empty() {
                    found.push((a.clone(), b.clone()));
                }
            }
        }
        assert_eq!(found, vec![(V::Int(0), V::Int(0)), (V::Int(1), V::Int(1))]);
    }

    #[test]
    fn b4_truncation_matches_the_order_table() {
        let p = fixtures::b4_polygraph();
        let g = truncate_globular(&p);
        // One 2-cell per comparable pair a <= b in the 4-element Boolean
        // algebra; oracle: count pairs directly.
        let leq = fixtures::b4_leq_pairs();
        assert_eq!(g.two_cells.len(), leq.len());
        for (a, b) in leq {
            assert!(g.two_cells.values().any(|(s, t)| s == &a && t == &b));
        }
    }

    #[test]
    fn sequence_enumeration_on_x2() {
        let x2 = fixtures::x2();
        let dot = V::sym("pt");
        let seqs = enumerate_sequences(x2.as_ref(), &dot, &dot, 2);
        let expect: Vec<Vec<V>> = vec![
            vec![V::Int(0)],
            vec![V::Int(1)],
            vec![V::Int(0), V::Int(0)],
            vec![V::Int(0), V::Int(1)],
            vec![V::Int(1), V::Int(0)],
            vec![V::Int(1), V::Int(1)],
        ];
        assert_eq!(seqs, expect);
    }

    #[test]
    fn sequence_enumeration_is_prefix_closed_and_duplicate_free() {
        let x2 = fixtures::x2();
        let dot = V::sym("pt");
        let seqs = enumerate_sequences(x2.as_ref(), &dot, &dot, 3);
        let set: std::collections::BTreeSet<_> = seqs.iter().cloned().collect();
        assert_eq!(set.len(), seqs.len());
        for s in &seqs {
            if s.len() > 1 {
                assert!(set.contains(&s[..s.len() - 1].to_vec()));
            }
        }
        assert_eq!(seqs.len(), 2 + 4 + 8);
    }
}
