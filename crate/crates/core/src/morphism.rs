//! Morphisms of structures: cell maps commuting with composition.

use crate::certificate::Certificate;
use crate::divis::{Certifier, Loc};
use crate::error::{Error, Result};
use crate::report::{Finding, Report};
use crate::structure::{all_two_cells, compose, sides_ok, Iv, Structure};
use crate::units::{is_divisible1, is_tensor_unit1, unit_on, OneDivKind};
use crate::value::V;
use std::collections::BTreeMap;
use std::rc::Rc;

pub trait Morph {
    fn dom(&self) -> Rc<dyn Structure>;
    fn cod(&self) -> Rc<dyn Structure>;
    fn on_zero(&self, x: &V) -> Result<V>;
    fn on_one(&self, a: &V) -> Result<V>;
    fn on_two(&self, p: &V) -> Result<V>;
    fn name(&self) -> String;
}

/// A morphism given by finite tables on the cells within budget.
pub struct TableMorph {
    pub dom: Rc<dyn Structure>,
    pub cod: Rc<dyn Structure>,
    pub map0: BTreeMap<V, V>,
    pub map1: BTreeMap<V, V>,
    pub map2: BTreeMap<V, V>,
    pub label: String,
}

impl Morph for TableMorph {
    fn dom(&self) -> Rc<dyn Structure> {
        self.dom.clone()
    }

    fn cod(&self) -> Rc<dyn Structure> {
        self.cod.clone()
    }

    fn on_zero(&self, x: &V) -> Result<V> {
        self.map0.get(x).cloned().ok_or_else(|| Error::UnknownCell(x.clone()))
    }

    fn on_one(&self, a: &V) -> Result<V> {
        self.map1.get(a).cloned().ok_or_else(|| Error::UnknownCell(a.clone()))
    }

    fn on_two(&self, p: &V) -> Result<V> {
        self.map2.get(p).cloned().ok_or_else(|| Error::UnknownCell(p.clone()))
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

type CellFn = Rc<dyn Fn(&V) -> Result<V>>;

/// A morphism given by functions on cell values; used for the structurally
/// defined maps (monad units, multiplications, algebra maps).
pub struct FnMorph {
    pub dom: Rc<dyn Structure>,
    pub cod: Rc<dyn Structure>,
    pub f0: CellFn,
    pub f1: CellFn,
    pub f2: CellFn,
    pub label: String,
}

impl Morph for FnMorph {
    fn dom(&self) -> Rc<dyn Structure> {
        self.dom.clone()
    }

    fn cod(&self) -> Rc<dyn Structure> {
        self.cod.clone()
    }

    fn on_zero(&self, x: &V) -> Result<V> {
        (self.f0)(x)
    }

    fn on_one(&self, a: &V) -> Result<V> {
        (self.f1)(a)
    }

    fn on_two(&self, p: &V) -> Result<V> {
        (self.f2)(p)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

pub fn identity_morph(s: Rc<dyn Structure>) -> Rc<dyn Morph> {
    let id: CellFn = Rc::new(|v: &V| Ok(v.clone()));
    Rc::new(FnMorph {
        dom: s.clone(),
        cod: s,
        f0: id.clone(),
        f1: id.clone(),
        f2: id,
        label: "id".into(),
    })
}

/// `g` after `f`.
pub fn compose_morphs(f: Rc<dyn Morph>, g: Rc<dyn Morph>) -> Rc<dyn Morph> {
    let label = format!("{}.{}", g.name(), f.name());
    let (f0, g0) = (f.clone(), g.clone());
    let (f1, g1) = (f.clone(), g.clone());
    let (f2, g2) = (f.clone(), g.clone());
    Rc::new(FnMorph {
        dom: f.dom(),
        cod: g.cod(),
        f0: Rc::new(move |x| g0.on_zero(&f0.on_zero(x)?)),
        f1: Rc::new(move |a| g1.on_one(&f1.on_one(a)?)),
        f2: Rc::new(move |p| g2.on_two(&f2.on_two(p)?)),
        label,
    })
}

/// Maps a boundary row through a morphism.
pub fn map_row(f: &dyn Morph, row: &[V]) -> Result<Vec<V>> {
    row.iter().map(|a| f.on_one(a)).collect()
}

/// Validity: images resolve, boundaries are preserved, and every legal
/// composition within budget commutes.
pub fn validate_morphism(f: &dyn Morph) -> Report {
    let mut report = Report::new(&format!("morphism-{}", f.name()));
    let dom = f.dom();
    let cod = f.cod();
    let x = dom.as_ref();
    let y = cod.as_ref();
    for a in x.one_cells() {
        match (f.on_one(&a), x.one_src(&a), x.one_tgt(&a)) {
            (Ok(fa), Ok(src), Ok(tgt)) => {
                let want_src = f.on_zero(&src);
                let want_tgt = f.on_zero(&tgt);
                if y.one_src(&fa).ok() != want_src.ok() || y.one_tgt(&fa).ok() != want_tgt.ok() {
                    report.push(Finding::new("boundary-mismatch").with("one_cell", &a));
                }
            }
            _ => {
                report.push(Finding::new("unmapped-one-cell").with("one_cell", &a));
            }
        }
    }
    let cells = all_two_cells(x);
    for p in &cells {
        let fp = match f.on_two(p) {
            Ok(v) => v,
            Err(_) => {
                report.push(Finding::new("unmapped-two-cell").with("two_cell", p));
                continue;
            }
        };
        let gin = x.two_inputs(p).unwrap();
        let gout = x.two_outputs(p).unwrap();
        let want_in = map_row(f, &gin);
        let want_out = map_row(f, &gout);
        let ok = matches!(
            (&want_in, &want_out, y.two_inputs(&fp), y.two_outputs(&fp)),
            (Ok(wi), Ok(wo), Ok(ai), Ok(ao)) if wi == &ai && wo == &ao
        );
        if !ok {
            report.push(Finding::new("boundary-mismatch").with("two_cell", p));
        }
    }
    // Commutation with every legal composition among budget cells whose
    // composite also stays within budget.
    let b = x.budget();
    for t in &cells {
        let t_out = x.two_outputs(t).unwrap();
        let t_in = x.two_inputs(t).unwrap();
        for s in &cells {
            let s_in = x.two_inputs(s).unwrap();
            let s_out = x.two_outputs(s).unwrap();
            for (jr, ir) in composable_intervals(&t_out, &s_in, x.has_merges()) {
                let (c_in, c_out) = crate::structure::composite_boundary(&t_in, &t_out, jr, &s_in, &s_out, ir);
                if !crate::divis::row_in_budget(x, &c_in, b.max_in)
                    || !crate::divis::row_in_budget(x, &c_out, b.max_out)
                {
                    continue;
                }
                let Ok(c) = compose(x, t, jr, s, ir) else { continue };
                let lhs = f.on_two(&c);
                let rhs = (|| {
                    let ft = f.on_two(t)?;
                    let fs = f.on_two(s)?;
                    compose(y, &ft, jr, &fs, ir)
                })();
                if !matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b) {
                    report.push(
                        Finding::new("composition-not-preserved")
                            .with("left", t)
                            .with("right", s)
                            .with("at", format!("{jr}/{ir}")),
                    );
                }
            }
        }
    }
    report.note("cells-checked", cells.len());
    report
}

/// All interval alignments along which two boundary rows can be glued.
pub fn composable_intervals(t_out: &[V], s_in: &[V], merges: bool) -> Vec<(Iv, Iv)> {
    let m = t_out.len();
    let p = s_in.len();
    let mut out = Vec::new();
    let max_len = if merges { m.min(p) } else { 1 };
    for len in 1..=max_len {
        for j1 in 1..=m + 1 - len {
            for i1 in 1..=p + 1 - len {
                let jr = Iv(j1, j1 + len - 1);
                let ir = Iv(i1, i1 + len - 1);
                if t_out[j1 - 1..j1 - 1 + len] == s_in[i1 - 1..i1 - 1 + len]
                    && sides_ok(jr, m, ir, p)
                {
                    out.push((jr, ir));
                }
            }
        }
    }
    out
}

/// Classification flags of the spec: validity, unitality, preservation of
/// divisible 2-cells, tensor/par strength, closure.
pub fn classify_morphism(f: &dyn Morph) -> Report {
    let mut report = validate_morphism(f);
    report.subject = format!("classify-{}", f.name());
    let valid = report.is_empty();
    report.note("valid", if valid { "yes" } else { "no" });
    if !valid {
        return report;
    }
    let dom = f.dom();
    let cod = f.cod();
    let cx = Certifier::new(dom.clone());
    let cy = Certifier::new(cod.clone());

    // Unital: certified unit 2-cells map to certified units.
    let mut unital = true;
    for a in dom.one_cells() {
        if let Some(u) = unit_on(&cx, &a) {
            let fu = f.on_two(&u);
            if !matches!(&fu, Ok(v) if cy.is_unit(v).ok()) {
                unital = false;
                report.push(Finding::new("unit-not-preserved").with("one_cell", &a));
            }
        }
    }
    report.note("unital", if unital { "yes" } else { "no" });

    // Preservation of singleton divisibility of 2-cells.
    let mut div2 = true;
    for p in all_two_cells(dom.as_ref()) {
        let n = dom.two_inputs(&p).unwrap().len();
        let m = dom.two_outputs(&p).unwrap().len();
        let locs: Vec<Loc> = (1..=n)
            .map(Loc::input_at)
            .chain((1..=m).map(Loc::output_at))
            .collect();
        for loc in locs {
            if cx.divisible_at(&p, loc).ok() {
                let fp = f.on_two(&p).unwrap();
                if !cy.divisible_at(&fp, loc).ok() {
                    div2 = false;
                    report.push(
                        Finding::new("divisibility-not-preserved")
                            .with("two_cell", &p)
                            .with("loc", format!("{loc}")),
                    );
                }
            }
        }
    }
    report.note("preserves-divisible-2-cells", if div2 { "yes" } else { "no" });

    let tensor_strong = unital
        && preserves_divisible_ones(f, &cx, &cy, OneDivKind::Tensor, &mut report)
        && preserves_tensors(f, &cx, &cy, &mut report);
    report.note("tensor-strong", if tensor_strong { "yes" } else { "no" });

    let par_strong = unital
        && preserves_divisible_ones(f, &cx, &cy, OneDivKind::Par, &mut report)
        && preserves_pars(f, &cx, &cy, &mut report);
    report.note("par-strong", if par_strong { "yes" } else { "no" });

    let right_closed = unital
        && preserves_tensor_units(f, &cx, &cy, &mut report)
        && preserves_homs(f, &cx, &cy, Loc::input_at(2), &mut report);
    report.note("right-closed", if right_closed { "yes" } else { "no" });
    let left_closed = unital
        && preserves_tensor_units(f, &cx, &cy, &mut report)
        && preserves_homs(f, &cx, &cy, Loc::input_at(1), &mut report);
    report.note("left-closed", if left_closed { "yes" } else { "no" });
    report
}

fn preserves_divisible_ones(
    f: &dyn Morph,
    cx: &Certifier,
    cy: &Certifier,
    kind: OneDivKind,
    report: &mut Report,
) -> bool {
    let mut ok = true;
    for e in f.dom().one_cells() {
        if is_divisible1(cx, &e, kind).ok() {
            let fe = f.on_one(&e).unwrap();
            if !is_divisible1(cy, &fe, kind).ok() {
                ok = false;
                report.push(Finding::new("divisible-one-cell-not-preserved").with("one_cell", &e));
            }
        }
    }
    ok
}

fn preserves_tensor_units(f: &dyn Morph, cx: &Certifier, cy: &Certifier, report: &mut Report) -> bool {
    let mut ok = true;
    for u in f.dom().one_cells() {
        if is_tensor_unit1(cx, &u).ok() {
            let fu = f.on_one(&u).unwrap();
            if !is_tensor_unit1(cy, &fu).ok() {
                ok = false;
                report.push(Finding::new("tensor-unit-not-preserved").with("one_cell", &u));
            }
        }
    }
    ok
}

/// A tensor witness is a binary-to-unary cell divisible at its output; the
/// morphism preserves tensors when images of such witnesses are again
/// divisible at the output.
fn preserves_tensors(f: &dyn Morph, cx: &Certifier, cy: &Certifier, report: &mut Report) -> bool {
    preserves_shape(f, cx, cy, (2, 1), Loc::output_at(1), "tensor-not-preserved", report)
}

fn preserves_pars(f: &dyn Morph, cx: &Certifier, cy: &Certifier, report: &mut Report) -> bool {
    preserves_shape(f, cx, cy, (1, 2), Loc::input_at(1), "par-not-preserved", report)
}

fn preserves_homs(
    f: &dyn Morph,
    cx: &Certifier,
    cy: &Certifier,
    loc: Loc,
    report: &mut Report,
) -> bool {
    preserves_shape(f, cx, cy, (2, 1), loc, "hom-not-preserved", report)
}

fn preserves_shape(
    f: &dyn Morph,
    cx: &Certifier,
    cy: &Certifier,
    shape: (usize, usize),
    loc: Loc,
    kind: &str,
    report: &mut Report,
) -> bool {
    let dom = f.dom();
    let mut ok = true;
    for p in all_two_cells(dom.as_ref()) {
        let n = dom.two_inputs(&p).unwrap().len();
        let m = dom.two_outputs(&p).unwrap().len();
        if (n, m) != shape {
            continue;
        }
        if cx.divisible_at(&p, loc).ok() {
            let fp = f.on_two(&p).unwrap();
            if !cy.divisible_at(&fp, loc).ok() {
                ok = false;
                report.push(Finding::new(kind).with("two_cell", &p));
            }
        }
    }
    ok
}

/// A linear adjunction `a -| b` relative to a tensor unit `u` on the source
/// of `a` and a par unit `w` on its target: any of the four divisibility
/// conditions on a counit `(b,a) -> (w)` or unit `(u) -> (a,b)` certifies
/// it; the certificate records which one was found.
pub fn check_linear_adjunction(cert: &Certifier, a: &V, b: &V, u: &V, w: &V) -> Certificate {
    let s = cert.s.as_ref();
    let budget = cert.budget();
    let prop = "linear-adjunction";
    let subject = V::tag("adj", vec![a.clone(), b.clone()]);
    let mut tried = Vec::new();
    if let Ok(cells) = s.hom(&[b.clone(), a.clone()], &[w.clone()]) {
        for eps in cells {
            for loc in [Loc::input_at(1), Loc::input_at(2)] {
                let c = cert.divisible_at(&eps, loc);
                if c.ok() {
                    return Certificate::holds(
                        prop,
                        subject,
                        budget,
                        vec![(V::tag("counit", vec![V::sym(&loc.to_string())]), eps)],
                    );
                }
            }
            tried.push(eps);
        }
    }
    if let Ok(cells) = s.hom(&[u.clone()], &[a.clone(), b.clone()]) {
        for eta in cells {
            for loc in [Loc::output_at(1), Loc::output_at(2)] {
                let c = cert.divisible_at(&eta, loc);
                if c.ok() {
                    return Certificate::holds(
                        prop,
                        subject,
                        budget,
                        vec![(V::tag("unit", vec![V::sym(&loc.to_string())]), eta)],
                    );
                }
            }
            tried.push(eta);
        }
    }
    Certificate::fails(prop, subject, budget, V::tag("no-witness", tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::units::thin_cell;

    fn inclusion_x2m_yn() -> Rc<dyn Morph> {
        let id: CellFn = Rc::new(|v: &V| Ok(v.clone()));
        Rc::new(FnMorph {
            dom: fixtures::x2m(),
            cod: fixtures::yn(),
            f0: Rc::new(|_| Ok(V::sym("pt"))),
            f1: id.clone(),
            f2: id,
            label: "incl".into(),
        })
    }

    #[test]
    fn identity_on_b4_has_all_flags() {
        // A tightened budget keeps the all-cells divisibility sweep quick;
        // the flags are budget-relative either way.
        let b4 = fixtures::b4_with_budget(crate::budget::Budget::new(2, 2, 3));
        let report = classify_morphism(identity_morph(b4).as_ref());
        for (k, v) in &report.notes {
            if k != "cells-checked" {
                assert_eq!(v, "yes", "flag {k} should hold: {report}");
            }
        }
    }

    #[test]
    fn inclusion_is_unital_hom_preserving_not_tensor_strong() {
        let f = inclusion_x2m_yn();
        let report = classify_morphism(f.as_ref());
        let flag = |k: &str| report.notes.iter().find(|(n, _)| n == k).unwrap().1.clone();
        assert_eq!(flag("valid"), "yes", "{report}");
        assert_eq!(flag("unital"), "yes");
        assert_eq!(flag("right-closed"), "yes");
        assert_eq!(flag("left-closed"), "yes");
        assert_eq!(flag("tensor-strong"), "no");
    }

    #[test]
    fn constant_morphism_s1_to_x2m_is_unital() {
        let s1 = fixtures::s1();
        let x2m = fixtures::x2m();
        let f: Rc<dyn Morph> = Rc::new(FnMorph {
            dom: s1,
            cod: x2m,
            f0: Rc::new(|_| Ok(V::sym("pt"))),
            f1: Rc::new(|_| Ok(V::Int(0))),
            f2: Rc::new(|p: &V| {
                let args = p.as_tag("cell").ok_or_else(|| Error::UnknownCell(p.clone()))?;
                let n = args[0].as_seq().unwrap().len();
                Ok(thin_cell(&vec![V::Int(0); n], &[V::Int(0)]))
            }),
            label: "collapse".into(),
        });
        let report = classify_morphism(f.as_ref());
        let flag = |k: &str| report.notes.iter().find(|(n, _)| n == k).unwrap().1.clone();
        assert_eq!(flag("valid"), "yes", "{report}");
        assert_eq!(flag("unital"), "yes");
    }

    #[test]
    fn linear_adjunction_in_x2() {
        let cert = Certifier::new(fixtures::x2());
        // 0 is simultaneously a tensor and a par unit in the parity
        // structure; 1 is self-adjoint through (1,1) -> (0).
        let c = check_linear_adjunction(&cert, &V::Int(1), &V::Int(1), &V::Int(0), &V::Int(0));
        assert!(c.ok(), "{c}");
        let c = check_linear_adjunction(&cert, &V::Int(0), &V::Int(1), &V::Int(0), &V::Int(0));
        assert!(!c.ok());
        let c = check_linear_adjunction(&cert, &V::Int(0), &V::Int(0), &V::Int(0), &V::Int(0));
        assert!(c.ok());
    }
}
