//! Oplax transformations, modifications, and equivalences of
//! merge-bicategories.

use crate::certificate::Certificate;
use crate::divis::{Certifier, Loc};
use crate::error::{Error, Result};
use crate::morphism::{map_row, Morph};
use crate::report::{Finding, Report};
use crate::structure::{all_two_cells, compose, Iv, Structure};
use crate::units::{is_divisible1, is_tensor_unit1, OneDivKind};
use crate::value::V;
use std::collections::BTreeMap;
use std::rc::Rc;

/// An oplax transformation `σ : f -> g`: a 1-cell `σ_x : f(x) -> g(x)` per
/// 0-cell and a 2-cell `σ_a : (f(a), σ_y) -> (σ_x, g(a))` per 1-cell,
/// natural against every 2-cell of the domain.
pub struct Oplax {
    pub f: Rc<dyn Morph>,
    pub g: Rc<dyn Morph>,
    pub comp0: BTreeMap<V, V>,
    pub comp1: BTreeMap<V, V>,
    pub label: String,
}

impl Oplax {
    pub fn at_zero(&self, x: &V) -> Result<&V> {
        self.comp0.get(x).ok_or_else(|| Error::InvalidChoice(format!("no component at {x}")))
    }

    pub fn at_one(&self, a: &V) -> Result<&V> {
        self.comp1.get(a).ok_or_else(|| Error::InvalidChoice(format!("no component at {a}")))
    }
}

/// A modification `μ : (σ¹,…,σⁿ) -> (τ¹,…,τᵐ)`: a 2-cell
/// `μ_x : (σ¹_x,…,σⁿ_x) -> (τ¹_x,…,τᵐ_x)` per 0-cell, compatible with the
/// component 2-cells of the transformations.
pub struct Modification {
    pub src: Vec<Rc<Oplax>>,
    pub tgt: Vec<Rc<Oplax>>,
    pub comp: BTreeMap<V, V>,
    pub label: String,
}

pub enum Transfor {
    Oplax(Rc<Oplax>),
    Modification(Rc<Modification>),
}

/// The left-hand side of the naturality equation: `f(p)` with the output
/// components of `σ` merged on top.
pub fn whisker_outputs(y: &dyn Structure, sigma: &Oplax, fp: &V, outs: &[V]) -> Result<V> {
    let mut t = fp.clone();
    let m = outs.len();
    for j in (1..=m).rev() {
        let s_b = sigma.at_one(&outs[j - 1])?;
        if j == m {
            t = compose(y, &t, Iv::at(m), s_b, Iv::at(1))?;
        } else {
            t = compose(y, &t, Iv(j, j + 1), s_b, Iv(1, 2))?;
        }
    }
    Ok(t)
}

/// The right-hand side: the staircase of input components below `g(p)`.
pub fn whisker_inputs(y: &dyn Structure, sigma: &Oplax, gp: &V, ins: &[V]) -> Result<V> {
    let mut t = gp.clone();
    for i in 1..=ins.len() {
        let s_a = sigma.at_one(&ins[i - 1])?;
        if i == 1 {
            t = compose(y, s_a, Iv::at(2), &t, Iv::at(1))?;
        } else {
            t = compose(y, s_a, Iv(1, 2), &t, Iv(i, i + 1))?;
        }
    }
    Ok(t)
}

/// Component staircase of a composable row of transformations at a 1-cell
/// `a`: `(f⁰(a), σ¹_y, …, σⁿ_y) -> (σ¹_x, …, σⁿ_x, fⁿ(a))`.
pub fn staircase(y: &dyn Structure, row: &[Rc<Oplax>], a: &V) -> Result<V> {
    let n = row.len();
    let mut t = row[n - 1].at_one(a)?.clone();
    for i in (1..n).rev() {
        let s_a = row[i - 1].at_one(a)?;
        t = compose(y, s_a, Iv::at(2), &t, Iv::at(1))?;
    }
    Ok(t)
}

fn oplax_component_boundaries(y: &dyn Structure, sigma: &Oplax, a: &V) -> Result<(Vec<V>, Vec<V>)> {
    let x0 = sigma.f.dom().one_src(a)?;
    let x1 = sigma.f.dom().one_tgt(a)?;
    let fa = sigma.f.on_one(a)?;
    let ga = sigma.g.on_one(a)?;
    let s_src = sigma.at_zero(&x0)?.clone();
    let s_tgt = sigma.at_zero(&x1)?.clone();
    let _ = y;
    Ok((vec![fa, s_tgt], vec![s_src, ga]))
}

/// Validates an oplax transformation and classifies it: fairness (by the
/// unit shortcut and by the full quantification over divisible 1-cells),
/// pseudo-naturality, pseudo-equivalence.
pub fn validate_oplax(sigma: &Oplax) -> Report {
    let mut report = Report::new(&format!("oplax-{}", sigma.label));
    let dom = sigma.f.dom();
    let x = dom.as_ref();
    let codom = sigma.f.cod();
    let y = codom.as_ref();
    for x0 in x.zero_cells() {
        match sigma.comp0.get(&x0) {
            None => report.push(Finding::new("missing-component").with("zero_cell", &x0)),
            Some(s) => {
                let ok = matches!(
                    (y.one_src(s), sigma.f.on_zero(&x0), y.one_tgt(s), sigma.g.on_zero(&x0)),
                    (Ok(a), Ok(b), Ok(c), Ok(d)) if a == b && c == d
                );
                if !ok {
                    report.push(Finding::new("component-boundary-mismatch").with("zero_cell", &x0));
                }
            }
        }
    }
    for a in x.one_cells() {
        match sigma.comp1.get(&a) {
            None => report.push(Finding::new("missing-component").with("one_cell", &a)),
            Some(s_a) => {
                let want = oplax_component_boundaries(y, sigma, &a);
                let got = (y.two_inputs(s_a), y.two_outputs(s_a));
                let ok = matches!(
                    (&want, &got),
                    (Ok((wi, wo)), (Ok(gi), Ok(go))) if wi == gi && wo == go
                );
                if !ok {
                    report.push(Finding::new("component-boundary-mismatch").with("one_cell", &a));
                }
            }
        }
    }
    if !report.is_empty() {
        return report;
    }
    // Naturality against every 2-cell within budget.
    for p in all_two_cells(x) {
        let ins = x.two_inputs(&p).unwrap();
        let outs = x.two_outputs(&p).unwrap();
        let lhs = sigma
            .f
            .on_two(&p)
            .and_then(|fp| whisker_outputs(y, sigma, &fp, &outs));
        let rhs = sigma
            .g
            .on_two(&p)
            .and_then(|gp| whisker_inputs(y, sigma, &gp, &ins));
        if !matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r) {
            report.push(Finding::new("naturality-violation").with("two_cell", &p));
        }
    }
    let valid = report.is_empty();
    report.note("valid", if valid { "yes" } else { "no" });
    if !valid {
        return report;
    }

    let cx = Certifier::new(dom.clone());
    let cy = Certifier::new(codom.clone());
    // Fairness, first by the unit shortcut, then in full.
    let mut fair_units = true;
    let mut fair_full = true;
    for e in x.one_cells() {
        let tensor_unit = is_tensor_unit1(&cx, &e).ok();
        let one_unit = tensor_unit && {
            let co = Certifier::new(crate::structure::co_view(dom.clone()));
            is_tensor_unit1(&co, &e).ok()
        };
        let divisible = is_divisible1(&cx, &e, OneDivKind::Tensor).ok()
            && is_divisible1(&cx, &e, OneDivKind::Par).ok();
        if one_unit || divisible {
            let s_e = sigma.comp1.get(&e).unwrap();
            let div = two_cell_divisible(&cy, s_e);
            if one_unit && !div {
                fair_units = false;
            }
            if divisible && !div {
                fair_full = false;
                report.push(Finding::new("unfair-component").with("one_cell", &e));
            }
        }
    }
    report.note("fair-at-units", if fair_units { "yes" } else { "no" });
    report.note("fair", if fair_full { "yes" } else { "no" });

    let pseudo = x
        .one_cells()
        .iter()
        .all(|a| two_cell_divisible(&cy, sigma.comp1.get(a).unwrap()));
    report.note("pseudo-natural", if pseudo { "yes" } else { "no" });
    let equiv = pseudo
        && x.zero_cells().iter().all(|x0| {
            let s = sigma.comp0.get(x0).unwrap();
            is_divisible1(&cy, s, OneDivKind::Tensor).ok()
                && is_divisible1(&cy, s, OneDivKind::Par).ok()
        });
    report.note("pseudo-equivalence", if equiv { "yes" } else { "no" });
    report
}

/// Divisibility of a 2-cell in the merge sense: at the full output and the
/// full input boundary.
pub fn two_cell_divisible(cert: &Certifier, p: &V) -> bool {
    let s = cert.s.as_ref();
    let (Ok(ins), Ok(outs)) = (s.two_inputs(p), s.two_outputs(p)) else {
        return false;
    };
    cert.divisible_at(p, Loc::output(Iv(1, outs.len()))).ok()
        && cert.divisible_at(p, Loc::input(Iv(1, ins.len()))).ok()
}

/// Validates a modification: component shapes plus the exchange equation
/// against the staircases of its source and target rows.
pub fn validate_modification(mu: &Modification) -> Report {
    let mut report = Report::new(&format!("modification-{}", mu.label));
    if mu.src.is_empty() || mu.tgt.is_empty() {
        report.push(Finding::new("empty-row"));
        return report;
    }
    let dom = mu.src[0].f.dom();
    let x = dom.as_ref();
    let codom = mu.src[0].f.cod();
    let y = codom.as_ref();
    for x0 in x.zero_cells() {
        let Some(m_x) = mu.comp.get(&x0) else {
            report.push(Finding::new("missing-component").with("zero_cell", &x0));
            continue;
        };
        let want_in: Result<Vec<V>> =
            mu.src.iter().map(|s| s.at_zero(&x0).cloned()).collect();
        let want_out: Result<Vec<V>> =
            mu.tgt.iter().map(|s| s.at_zero(&x0).cloned()).collect();
        let ok = matches!(
            (&want_in, &want_out, y.two_inputs(m_x), y.two_outputs(m_x)),
            (Ok(wi), Ok(wo), Ok(gi), Ok(go)) if wi == &gi && wo == &go
        );
        if !ok {
            report.push(Finding::new("component-boundary-mismatch").with("zero_cell", &x0));
        }
    }
    if !report.is_empty() {
        return report;
    }
    let n = mu.src.len();
    let m = mu.tgt.len();
    for a in x.one_cells() {
        let x0 = x.one_src(&a).unwrap();
        let x1 = x.one_tgt(&a).unwrap();
        let lhs = (|| -> Result<V> {
            let stair = staircase(y, &mu.src, &a)?;
            let mu_x = mu.comp.get(&x0).unwrap();
            compose(y, &stair, Iv(1, n), mu_x, Iv(1, n))
        })();
        let rhs = (|| -> Result<V> {
            let stair = staircase(y, &mu.tgt, &a)?;
            let mu_y = mu.comp.get(&x1).unwrap();
            compose(y, mu_y, Iv(1, m), &stair, Iv(2, m + 1))
        })();
        if !matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r) {
            report.push(Finding::new("exchange-violation").with("one_cell", &a));
        }
    }
    report.note("valid", if report.is_empty() { "yes" } else { "no" });
    report
}

pub fn validate_transfor(t: &Transfor) -> Report {
    match t {
        Transfor::Oplax(s) => validate_oplax(s),
        Transfor::Modification(m) => validate_modification(m),
    }
}

/// The identity oplax transformation on a morphism: unit components.
pub fn identity_oplax(cert_cod: &Certifier, f: Rc<dyn Morph>) -> Result<Oplax> {
    let dom = f.dom();
    let y = cert_cod.s.as_ref();
    let mut comp0 = BTreeMap::new();
    let mut comp1 = BTreeMap::new();
    // Requires 1-units and coherent witnesses on the codomain.
    let units = crate::units::choose_units(cert_cod)?;
    let family = crate::units::coherentize_witnesses(
        cert_cod,
        &crate::units::synthesize_witnesses(cert_cod, &units)?,
    )?;
    for x0 in dom.zero_cells() {
        let fx = f.on_zero(&x0)?;
        comp0.insert(x0, units.get(&fx).unwrap().clone());
    }
    for a in dom.one_cells() {
        let fa = f.on_one(&a)?;
        let r_fa = family.right.get(&fa).unwrap();
        let l_fa = family.left.get(&fa).unwrap();
        let l_inv = crate::units::invert2(cert_cod, l_fa)?;
        // (f(a), 1) -> (f(a)) -> (1, f(a))
        let cell = compose(y, r_fa, Iv(1, 1), &l_inv, Iv(1, 1))?;
        comp1.insert(a, cell);
    }
    Ok(Oplax { f: f.clone(), g: f, comp0, comp1, label: "identity".into() })
}

pub struct EquivalenceData {
    pub f: Rc<dyn Morph>,
    pub g: Rc<dyn Morph>,
    pub eta: Rc<Oplax>,
    pub eps: Rc<Oplax>,
}

/// An equivalence consists of pseudo-natural equivalences
/// `eta : id -> g f` and `eps : id -> f g`.
pub fn verify_equivalence(e: &EquivalenceData) -> Certificate {
    let x = e.f.dom();
    let y = e.f.cod();
    let budget = x.budget();
    let subject = V::tag("equivalence", vec![V::sym(&e.f.name()), V::sym(&e.g.name())]);
    let mut witnesses = Vec::new();
    for (name, t) in [("eta", &e.eta), ("eps", &e.eps)] {
        let report = validate_oplax(t);
        let flag = |k: &str| {
            report
                .notes
                .iter()
                .find(|(n, _)| n == k)
                .map(|(_, v)| v == "yes")
                .unwrap_or(false)
        };
        if !(flag("valid") && flag("pseudo-equivalence")) {
            return Certificate::fails(
                "equivalence",
                subject,
                budget,
                V::tag("not-pseudo-equivalence", vec![V::sym(name)]),
            );
        }
        witnesses.push((V::sym(name), V::sym("pseudo-equivalence")));
    }
    let _ = y;
    Certificate::holds("equivalence", subject, budget, witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphism::identity_morph;

    #[test]
    fn identity_oplax_on_x2_is_a_pseudo_equivalence() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2.clone());
        let sigma = identity_oplax(&cert, identity_morph(x2)).unwrap();
        let report = validate_oplax(&sigma);
        let flag = |k: &str| report.notes.iter().find(|(n, _)| n == k).unwrap().1.clone();
        assert_eq!(flag("valid"), "yes", "{report}");
        assert_eq!(flag("pseudo-natural"), "yes");
        assert_eq!(flag("pseudo-equivalence"), "yes");
        assert_eq!(flag("fair"), "yes");
        assert_eq!(flag("fair-at-units"), "yes");
    }

    #[test]
    fn identity_equivalence_on_x2_verifies() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2.clone());
        let f = identity_morph(x2.clone());
        let eta = Rc::new(identity_oplax(&cert, f.clone()).unwrap());
        let e = EquivalenceData { f: f.clone(), g: f, eta: eta.clone(), eps: eta };
        assert!(verify_equivalence(&e).ok());
    }

    #[test]
    fn broken_component_is_rejected() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2.clone());
        let mut sigma = identity_oplax(&cert, identity_morph(x2)).unwrap();
        // A component with the wrong boundary shape is a validity finding.
        sigma
            .comp1
            .insert(V::Int(1), crate::units::thin_cell(&[V::Int(1), V::Int(1)], &[V::Int(0), V::Int(0)]));
        let report = validate_oplax(&sigma);
        assert!(
            report.findings.iter().any(|f| f.kind == "component-boundary-mismatch"),
            "mutated transformation should not validate cleanly: {report}"
        );
    }

    #[test]
    fn modification_identity_on_x2() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2.clone());
        let sigma = Rc::new(identity_oplax(&cert, identity_morph(x2.clone())).unwrap());
        let mut comp = BTreeMap::new();
        for x0 in x2.zero_cells() {
            let s = sigma.comp0.get(&x0).unwrap().clone();
            comp.insert(x0, crate::units::thin_cell(&[s.clone()], &[s]));
        }
        let mu = Modification { src: vec![sigma.clone()], tgt: vec![sigma], comp, label: "id".into() };
        let report = validate_modification(&mu);
        assert!(report.is_empty(), "{report}");
    }
}
