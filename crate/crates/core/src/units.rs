//! Units and divisible 1-cells: synthesis, certification, coherentization.

use crate::certificate::Certificate;
use crate::divis::{divide, solve_unknown_left, Certifier, Loc};
use crate::error::{Error, Result};
use crate::report::{Finding, Report};
use crate::structure::{all_two_cells, compose, cut, Iv};
use crate::thin;
use crate::value::V;
use std::collections::BTreeMap;

/// The unit 2-cell synthesized from a divisible `(a) -> (a')` per the
/// two-sided division: `id_a` solves `cut(x, p) = p`, `id_a'` solves
/// `cut(p, x) = p`.
pub fn unit2_from_divisible(cert: &Certifier, p: &V) -> Result<(V, V)> {
    let s = cert.s.as_ref();
    let id_src = solve_unknown_left(s, p, Iv::at(1), Iv::at(1), p)?;
    let id_tgt = crate::divis::solve_unknown_right(s, p, Iv::at(1), Iv::at(1), p)?;
    for u in [&id_src, &id_tgt] {
        let c = cert.is_unit(u);
        if !c.ok() {
            return Err(Error::Invalid(format!("synthesized cell {u} failed the unit check")));
        }
    }
    Ok((id_src, id_tgt))
}

/// Finds the unit 2-cell on a 1-cell, if one exists within budget.
pub fn unit_on(cert: &Certifier, a: &V) -> Option<V> {
    let s = cert.s.as_ref();
    let hom = s.hom(&[a.clone()], &[a.clone()]).ok()?;
    hom.into_iter().find(|p| cert.is_unit(p).ok())
}

/// The unit 2-cell on a composable sequence, if one exists within budget.
pub fn unit_on_row(cert: &Certifier, gamma: &[V]) -> Option<V> {
    let s = cert.s.as_ref();
    let hom = s.hom(gamma, gamma).ok()?;
    hom.into_iter().find(|p| cert.is_unit(p).ok())
}

/// Inverse of a `(1,1)` 2-cell against the synthesized units: `p . p⁻¹` and
/// `p⁻¹ . p` are the units on the endpoints.
pub fn inverse2(cert: &Certifier, p: &V) -> Result<V> {
    let s = cert.s.as_ref();
    let a = s.two_inputs(p)?;
    let b = s.two_outputs(p)?;
    if a.len() != 1 || b.len() != 1 {
        return Err(Error::Invalid("inverse2 needs a (1,1)-cell".into()));
    }
    let id_a = unit_on(cert, &a[0])
        .ok_or_else(|| Error::NotDivisible(p.clone(), "no unit on the source".into()))?;
    let inv = divide(s, p, Loc::output_at(1), &id_a)
        .map_err(|_| Error::NotDivisible(p.clone(), "output1".into()))?;
    let id_b = unit_on(cert, &b[0])
        .ok_or_else(|| Error::NotDivisible(p.clone(), "no unit on the target".into()))?;
    let back = cut(s, &inv, 1, p, 1)?;
    if back != id_b {
        return Err(Error::NotDivisible(p.clone(), "one-sided inverse only".into()));
    }
    Ok(inv)
}

/// Inverse of a 2-cell against sequence units, composing along the full
/// boundaries (the merge-bicategory notion of isomorphism).
pub fn invert2(cert: &Certifier, p: &V) -> Result<V> {
    let s = cert.s.as_ref();
    let gamma = s.two_inputs(p)?;
    let delta = s.two_outputs(p)?;
    let id_gamma = unit_on_row(cert, &gamma)
        .ok_or_else(|| Error::NotDivisible(p.clone(), "no unit on the input row".into()))?;
    let id_delta = unit_on_row(cert, &delta)
        .ok_or_else(|| Error::NotDivisible(p.clone(), "no unit on the output row".into()))?;
    let m = delta.len();
    let n = gamma.len();
    let candidates = s.hom(&delta, &gamma)?;
    let mut found = Vec::new();
    for q in candidates {
        let lhs = compose(s, p, Iv(1, m), &q, Iv(1, m));
        let rhs = compose(s, &q, Iv(1, n), p, Iv(1, n));
        if matches!(lhs, Ok(ref c) if c == &id_gamma) && matches!(rhs, Ok(ref c) if c == &id_delta) {
            found.push(q);
        }
    }
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::NotDivisible(p.clone(), "no two-sided inverse".into())),
        _ => Err(Error::NonUniqueSolution { divisor: p.clone(), target: id_gamma }),
    }
}

/// Left-unitality witness shape: `l_a : (u, a) -> (a)` divisible at the
/// output and at the second input.
pub fn left_witness(cert: &Certifier, u: &V, a: &V) -> Option<V> {
    let s = cert.s.as_ref();
    let hom = s.hom(&[u.clone(), a.clone()], &[a.clone()]).ok()?;
    hom.into_iter().find(|l| {
        cert.divisible_at(l, Loc::output_at(1)).ok() && cert.divisible_at(l, Loc::input_at(2)).ok()
    })
}

/// Right-unitality witness shape: `r_b : (b, u) -> (b)` divisible at the
/// output and at the first input.
pub fn right_witness(cert: &Certifier, u: &V, b: &V) -> Option<V> {
    let s = cert.s.as_ref();
    let hom = s.hom(&[b.clone(), u.clone()], &[b.clone()]).ok()?;
    hom.into_iter().find(|r| {
        cert.divisible_at(r, Loc::output_at(1)).ok() && cert.divisible_at(r, Loc::input_at(1)).ok()
    })
}

/// Certifies `u : x -> x` as a tensor unit: every 1-cell out of `x` has a
/// left witness, every 1-cell into `x` a right witness.
pub fn is_tensor_unit1(cert: &Certifier, u: &V) -> Certificate {
    let s = cert.s.as_ref();
    let budget = cert.budget();
    let prop = "tensor-unit";
    let x = match (s.one_src(u), s.one_tgt(u)) {
        (Ok(a), Ok(b)) if a == b => a,
        _ => return Certificate::fails(prop, u.clone(), budget, V::sym("not-an-endo-one-cell")),
    };
    let mut witnesses = Vec::new();
    for a in s.one_cells() {
        if s.one_src(&a).ok().as_ref() == Some(&x) {
            match left_witness(cert, u, &a) {
                Some(l) => witnesses.push((V::tag("left", vec![a.clone()]), l)),
                None => {
                    return Certificate::fails(prop, u.clone(), budget, V::tag("no-left-witness", vec![a]));
                }
            }
        }
        if s.one_tgt(&a).ok().as_ref() == Some(&x) {
            match right_witness(cert, u, &a) {
                Some(r) => witnesses.push((V::tag("right", vec![a.clone()]), r)),
                None => {
                    return Certificate::fails(prop, u.clone(), budget, V::tag("no-right-witness", vec![a]));
                }
            }
        }
    }
    Certificate::holds(prop, u.clone(), budget, witnesses)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneDivKind {
    Tensor,
    Par,
}

/// Certifies a 1-cell `e : x -> x'` tensor divisible: for each `a : x -> y`
/// a right hom, for each `a' : x' -> y` a tensor, for each `b' : z -> x'` a
/// left hom, for each `b : z -> x` a tensor on the other side — all
/// witnessed by doubly divisible 2-cells. The par version runs on the co
/// view.
pub fn is_divisible1(cert: &Certifier, e: &V, kind: OneDivKind) -> Certificate {
    match kind {
        OneDivKind::Tensor => is_tensor_divisible1(cert, e),
        OneDivKind::Par => {
            let co = crate::structure::co_view(cert.s.clone());
            let cert_co = Certifier::new(co);
            let mut c = is_tensor_divisible1(&cert_co, e);
            c.property = "par-divisible-one-cell".into();
            c
        }
    }
}

fn is_tensor_divisible1(cert: &Certifier, e: &V) -> Certificate {
    let s = cert.s.as_ref();
    let budget = cert.budget();
    let prop = "tensor-divisible-one-cell";
    let (x, x1) = match (s.one_src(e), s.one_tgt(e)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Certificate::fails(prop, e.clone(), budget, V::sym("unknown-one-cell")),
    };
    let ones = s.one_cells();
    let mut witnesses = Vec::new();
    let both = |c: &Certifier, p: &V, second: Loc| {
        c.divisible_at(p, Loc::output_at(1)).ok() && c.divisible_at(p, second).ok()
    };
    // Left divisibility: right homs e \ a, and tensors e (x) a'.
    for a in &ones {
        if s.one_src(a).ok().as_ref() == Some(&x) {
            let mut found = None;
            'h: for h in &ones {
                if s.one_src(h).ok().as_ref() != Some(&x1) || s.one_tgt(h).ok() != s.one_tgt(a).ok() {
                    continue;
                }
                for p in s.hom(&[e.clone(), h.clone()], &[a.clone()]).unwrap_or_default() {
                    if both(cert, &p, Loc::input_at(2)) {
                        found = Some((h.clone(), p));
                        break 'h;
                    }
                }
            }
            match found {
                Some((h, p)) => witnesses.push((V::tag("rhom", vec![a.clone(), h]), p)),
                None => {
                    return Certificate::fails(prop, e.clone(), budget, V::tag("no-rhom", vec![a.clone()]));
                }
            }
        }
        if s.one_src(a).ok().as_ref() == Some(&x1) {
            let mut found = None;
            'h2: for h in &ones {
                if s.one_src(h).ok().as_ref() != Some(&x) || s.one_tgt(h).ok() != s.one_tgt(a).ok() {
                    continue;
                }
                for p in s.hom(&[e.clone(), a.clone()], &[h.clone()]).unwrap_or_default() {
                    if both(cert, &p, Loc::input_at(2)) {
                        found = Some((h.clone(), p));
                        break 'h2;
                    }
                }
            }
            match found {
                Some((h, p)) => witnesses.push((V::tag("ltensor", vec![a.clone(), h]), p)),
                None => {
                    return Certificate::fails(prop, e.clone(), budget, V::tag("no-left-tensor", vec![a.clone()]));
                }
            }
        }
    }
    // Right divisibility: left homs b' / e, and tensors b (x) e.
    for b in &ones {
        if s.one_tgt(b).ok().as_ref() == Some(&x1) {
            let mut found = None;
            'h3: for h in &ones {
                if s.one_tgt(h).ok().as_ref() != Some(&x) || s.one_src(h).ok() != s.one_src(b).ok() {
                    continue;
                }
                for p in s.hom(&[h.clone(), e.clone()], &[b.clone()]).unwrap_or_default() {
                    if both(cert, &p, Loc::input_at(1)) {
                        found = Some((h.clone(), p));
                        break 'h3;
                    }
                }
            }
            match found {
                Some((h, p)) => witnesses.push((V::tag("lhom", vec![b.clone(), h]), p)),
                None => {
                    return Certificate::fails(prop, e.clone(), budget, V::tag("no-lhom", vec![b.clone()]));
                }
            }
        }
        if s.one_tgt(b).ok().as_ref() == Some(&x) {
            let mut found = None;
            'h4: for h in &ones {
                if s.one_tgt(h).ok().as_ref() != Some(&x1) || s.one_src(h).ok() != s.one_src(b).ok() {
                    continue;
                }
                for p in s.hom(&[b.clone(), e.clone()], &[h.clone()]).unwrap_or_default() {
                    if both(cert, &p, Loc::input_at(1)) {
                        found = Some((h.clone(), p));
                        break 'h4;
                    }
                }
            }
            match found {
                Some((h, p)) => witnesses.push((V::tag("rtensor", vec![b.clone(), h]), p)),
                None => {
                    return Certificate::fails(prop, e.clone(), budget, V::tag("no-right-tensor", vec![b.clone()]));
                }
            }
        }
    }
    Certificate::holds(prop, e.clone(), budget, witnesses)
}

/// Self-division of a tensor-divisible 1-cell: the left hom `e / e` on the
/// source and the right hom `e \ e` on the target, both certified tensor
/// units.
pub fn unit1_from_divisible1(cert: &Certifier, e: &V) -> Result<(V, V)> {
    let s = cert.s.as_ref();
    let ones = s.one_cells();
    let x = s.one_src(e)?;
    let x1 = s.one_tgt(e)?;
    let mut left = None;
    for h in &ones {
        if s.one_src(h).ok().as_ref() == Some(&x) && s.one_tgt(h).ok().as_ref() == Some(&x) {
            for p in s.hom(&[h.clone(), e.clone()], &[e.clone()])? {
                if cert.divisible_at(&p, Loc::output_at(1)).ok()
                    && cert.divisible_at(&p, Loc::input_at(1)).ok()
                {
                    left = Some(h.clone());
                    break;
                }
            }
        }
        if left.is_some() {
            break;
        }
    }
    let mut right = None;
    for h in &ones {
        if s.one_src(h).ok().as_ref() == Some(&x1) && s.one_tgt(h).ok().as_ref() == Some(&x1) {
            for p in s.hom(&[e.clone(), h.clone()], &[e.clone()])? {
                if cert.divisible_at(&p, Loc::output_at(1)).ok()
                    && cert.divisible_at(&p, Loc::input_at(2)).ok()
                {
                    right = Some(h.clone());
                    break;
                }
            }
        }
        if right.is_some() {
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => {
            for u in [&l, &r] {
                let c = is_tensor_unit1(cert, u);
                if !c.ok() {
                    return Err(Error::Invalid(format!("self-division {u} is not a tensor unit")));
                }
            }
            Ok((l, r))
        }
        _ => Err(Error::NotDivisible(e.clone(), "self-division failed".into())),
    }
}

/// A family of unitality witnesses over a choice of tensor units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFamily {
    pub unit1: BTreeMap<V, V>,
    pub left: BTreeMap<V, V>,
    pub right: BTreeMap<V, V>,
    pub coherent: bool,
}

impl WitnessFamily {
    pub fn unit_for(&self, x: &V) -> Result<&V> {
        self.unit1.get(x).ok_or_else(|| Error::InvalidChoice(format!("no unit on {x}")))
    }
}

/// Picks a tensor unit per 0-cell (first certified in canonical order).
pub fn choose_units(cert: &Certifier) -> Result<BTreeMap<V, V>> {
    let s = cert.s.as_ref();
    let mut units = BTreeMap::new();
    for x in s.zero_cells() {
        let mut found = None;
        for u in s.one_cells() {
            if s.one_src(&u).ok().as_ref() == Some(&x)
                && s.one_tgt(&u).ok().as_ref() == Some(&x)
                && is_tensor_unit1(cert, &u).ok()
            {
                found = Some(u);
                break;
            }
        }
        units.insert(
            x.clone(),
            found.ok_or_else(|| Error::Invalid(format!("no tensor unit on {x}")))?,
        );
    }
    Ok(units)
}

/// Collects arbitrary (first-found) unitality witnesses for the chosen
/// units.
pub fn synthesize_witnesses(cert: &Certifier, units: &BTreeMap<V, V>) -> Result<WitnessFamily> {
    let s = cert.s.as_ref();
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for a in s.one_cells() {
        let x = s.one_src(&a)?;
        let y = s.one_tgt(&a)?;
        let ux = units.get(&x).ok_or_else(|| Error::InvalidChoice(format!("no unit on {x}")))?;
        let uy = units.get(&y).ok_or_else(|| Error::InvalidChoice(format!("no unit on {y}")))?;
        let l = left_witness(cert, ux, &a)
            .ok_or_else(|| Error::Invalid(format!("no left witness for {a}")))?;
        let r = right_witness(cert, uy, &a)
            .ok_or_else(|| Error::Invalid(format!("no right witness for {a}")))?;
        left.insert(a.clone(), l);
        right.insert(a, r);
    }
    Ok(WitnessFamily { unit1: units.clone(), left, right, coherent: false })
}

/// Rewrites a witness family into a coherent one.
///
/// First the witnesses on the units themselves are aligned (`l` on a unit
/// is replaced by the `r` on it, which is also a left witness). Then each
/// `l_a` is replaced by the unique solution of
/// `cut(x, 2, l_a) = cut(l_u, 1, l_a)` and each `r_a` by the solution of
/// `cut(x, 1, r_a) = cut(l_u', 2, r_a)`, dividing through the original
/// witnesses.
pub fn coherentize_witnesses(cert: &Certifier, raw: &WitnessFamily) -> Result<WitnessFamily> {
    let s = cert.s.as_ref();
    let mut family = raw.clone();
    // Align the witnesses on unit 1-cells: the right witness serves as both.
    for u in family.unit1.values() {
        let r_u = family
            .right
            .get(u)
            .ok_or_else(|| Error::InvalidChoice(format!("family misses r on the unit {u}")))?
            .clone();
        if !cert.divisible_at(&r_u, Loc::input_at(2)).ok() {
            return Err(Error::Invalid(format!("witness {r_u} on the unit is not two-sided")));
        }
        family.left.insert(u.clone(), r_u);
    }
    let mut new_left = BTreeMap::new();
    let mut new_right = BTreeMap::new();
    for a in s.one_cells() {
        let x = s.one_src(&a)?;
        let y = s.one_tgt(&a)?;
        let u_x = family.unit_for(&x)?.clone();
        let u_y = family.unit_for(&y)?.clone();
        let l_a = family.left.get(&a).ok_or_else(|| Error::InvalidChoice(format!("no l on {a}")))?;
        let r_a = family.right.get(&a).ok_or_else(|| Error::InvalidChoice(format!("no r on {a}")))?;
        let l_ux = family.left.get(&u_x).unwrap().clone();
        let l_uy = family.left.get(&u_y).unwrap().clone();
        // cut(l_{u_x}, 1, l_a, 1) : (u,u,a) -> (a)
        let lhs_l = cut(s, &l_ux, 1, l_a, 1)?;
        let new_l = solve_unknown_left(s, l_a, Iv::at(1), Iv::at(2), &lhs_l)?;
        // cut(l_{u_y}, 1, r_a, 2) : (a,u,u) -> (a)
        let lhs_r = cut(s, &l_uy, 1, r_a, 2)?;
        let new_r = solve_unknown_left(s, r_a, Iv::at(1), Iv::at(1), &lhs_r)?;
        new_left.insert(a.clone(), new_l);
        new_right.insert(a.clone(), new_r);
    }
    Ok(WitnessFamily { unit1: family.unit1.clone(), left: new_left, right: new_right, coherent: true })
}

/// Exhaustive check of the three coherence equation families on every
/// 2-cell within budget. This is the independent verifier: it never calls
/// the coherentization code path.
pub fn verify_coherent(cert: &Certifier, family: &WitnessFamily) -> Report {
    let s = cert.s.as_ref();
    let mut report = Report::new("coherence");
    let cells = all_two_cells(s);
    for p in &cells {
        let gamma = s.two_inputs(p).unwrap();
        let delta = s.two_outputs(p).unwrap();
        let a = &gamma[0];
        let b = &delta[0];
        // Left naturality at the shared source.
        if let (Some(l_a), Some(l_b)) = (family.left.get(a), family.left.get(b)) {
            let lhs = compose(s, p, Iv::at(1), l_b, Iv::at(2));
            let rhs = compose(s, l_a, Iv::at(1), p, Iv::at(1));
            if !matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y) {
                report.push(
                    Finding::new("left-naturality-violation").with("cell", p).with("one_cell", a),
                );
            }
        }
        // Right naturality at the shared target.
        let c = delta.last().unwrap();
        let an = gamma.last().unwrap();
        if let (Some(r_an), Some(r_c)) = (family.right.get(an), family.right.get(c)) {
            let lhs = compose(s, p, Iv::at(delta.len()), r_c, Iv::at(1));
            let rhs = compose(s, r_an, Iv::at(1), p, Iv::at(gamma.len()));
            if !matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y) {
                report.push(
                    Finding::new("right-naturality-violation").with("cell", p).with("one_cell", c),
                );
            }
        }
        // Triangle at every inner input position.
        for i in 1..gamma.len() {
            let a = &gamma[i - 1];
            let d = &gamma[i];
            if let (Some(r_a), Some(l_d)) = (family.right.get(a), family.left.get(d)) {
                let lhs = compose(s, r_a, Iv::at(1), p, Iv::at(i));
                let rhs = compose(s, l_d, Iv::at(1), p, Iv::at(i + 1));
                if !matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y) {
                    report.push(
                        Finding::new("triangle-violation").with("cell", p).with("position", i),
                    );
                }
            }
        }
    }
    report.note("cells-checked", cells.len());
    report
}

/// Search for a representing 1-cell and witnessing 2-cell of a given kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Tensor,
    Par,
    RHom,
    LHom,
    RCohom,
    LCohom,
}

impl RepKind {
    pub fn word(&self) -> &'static str {
        match self {
            RepKind::Tensor => "tensor",
            RepKind::Par => "par",
            RepKind::RHom => "rhom",
            RepKind::LHom => "lhom",
            RepKind::RCohom => "rcohom",
            RepKind::LCohom => "lcohom",
        }
    }
}

/// First hit in enumeration order: a 1-cell and a 2-cell with the kind's
/// divisibility property, certified.
pub fn search_representing(
    cert: &Certifier,
    kind: RepKind,
    a: &V,
    b: &V,
) -> Result<Option<(V, V, Certificate)>> {
    let s = cert.s.as_ref();
    let candidates = s.one_cells();
    for h in candidates {
        let found = match kind {
            // t : (a, b) -> (h) divisible at output 1.
            RepKind::Tensor => {
                if s.one_src(&h)? != s.one_src(a)? || s.one_tgt(&h)? != s.one_tgt(b)? {
                    continue;
                }
                try_witness(cert, &[a.clone(), b.clone()], &[h.clone()], Loc::output_at(1))
            }
            // c : (h) -> (a, b) divisible at input 1.
            RepKind::Par => {
                if s.one_src(&h)? != s.one_src(a)? || s.one_tgt(&h)? != s.one_tgt(b)? {
                    continue;
                }
                try_witness(cert, &[h.clone()], &[a.clone(), b.clone()], Loc::input_at(1))
            }
            // e : (a, h) -> (b) divisible at input 2.
            RepKind::RHom => {
                if s.one_src(&h)? != s.one_tgt(a)? || s.one_tgt(&h)? != s.one_tgt(b)? {
                    continue;
                }
                try_witness(cert, &[a.clone(), h.clone()], &[b.clone()], Loc::input_at(2))
            }
            // e : (h, a) -> (b) divisible at input 1.
            RepKind::LHom => {
                if s.one_tgt(&h)? != s.one_src(a)? || s.one_src(&h)? != s.one_src(b)? {
                    continue;
                }
                try_witness(cert, &[h.clone(), a.clone()], &[b.clone()], Loc::input_at(1))
            }
            // c : (b) -> (a, h) divisible at output 2.
            RepKind::RCohom => {
                if s.one_src(&h)? != s.one_tgt(a)? || s.one_tgt(&h)? != s.one_tgt(b)? {
                    continue;
                }
                try_witness(cert, &[b.clone()], &[a.clone(), h.clone()], Loc::output_at(2))
            }
            // c : (b) -> (h, a) divisible at output 1.
            RepKind::LCohom => {
                if s.one_tgt(&h)? != s.one_src(a)? || s.one_src(&h)? != s.one_src(b)? {
                    continue;
                }
                try_witness(cert, &[b.clone()], &[h.clone(), a.clone()], Loc::output_at(1))
            }
        };
        if let Some((w, c)) = found {
            return Ok(Some((h, w, c)));
        }
    }
    Ok(None)
}

fn try_witness(cert: &Certifier, ins: &[V], outs: &[V], loc: Loc) -> Option<(V, Certificate)> {
    let s = cert.s.as_ref();
    for w in s.hom(ins, outs).ok()? {
        let c = cert.divisible_at(&w, loc);
        if c.ok() {
            return Some((w, c));
        }
    }
    None
}

/// Convenience for tests: the unique thin cell on a boundary.
pub fn thin_cell(ins: &[V], outs: &[V]) -> V {
    thin::ThinStructure::cell(ins, outs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::value::V;

    fn ints(ks: &[i64]) -> Vec<V> {
        ks.iter().map(|&k| V::Int(k)).collect()
    }

    #[test]
    fn unit_synthesis_from_divisible_cell() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2);
        let p = thin_cell(&ints(&[1]), &ints(&[1]));
        let (ia, ib) = unit2_from_divisible(&cert, &p).unwrap();
        assert_eq!(ia, p);
        assert_eq!(ib, p);
    }

    #[test]
    fn b4_idempotents_are_units() {
        let b4 = fixtures::b4();
        let cert = Certifier::new(b4);
        let p = thin_cell(&[V::sym("p")], &[V::sym("p")]);
        assert!(cert.is_unit(&p).ok());
        let (ia, ib) = unit2_from_divisible(&cert, &p).unwrap();
        assert_eq!(ia, p);
        assert_eq!(ib, p);
    }

    #[test]
    fn inverse2_of_unit_is_itself() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2);
        let id1 = thin_cell(&ints(&[1]), &ints(&[1]));
        assert_eq!(inverse2(&cert, &id1).unwrap(), id1);
    }

    #[test]
    fn x2_inverts_across_arities() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2);
        let p = thin_cell(&ints(&[1, 1]), &ints(&[0]));
        let q = invert2(&cert, &p).unwrap();
        assert_eq!(q, thin_cell(&ints(&[0]), &ints(&[1, 1])));
    }

    #[test]
    fn top_is_a_tensor_unit_in_b4() {
        let b4 = fixtures::b4();
        let cert = Certifier::new(b4);
        assert!(is_tensor_unit1(&cert, &V::sym("1")).ok());
    }

    #[test]
    fn zero_is_a_tensor_unit_in_x2m_and_one_is_not() {
        let x2m = fixtures::x2m();
        let cert = Certifier::new(x2m);
        assert!(is_tensor_unit1(&cert, &V::Int(0)).ok());
        let c = is_tensor_unit1(&cert, &V::Int(1));
        assert!(!c.ok());
    }

    #[test]
    fn one_is_tensor_divisible_in_x2m_but_not_in_yn() {
        let cert = Certifier::new(fixtures::x2m());
        assert!(is_divisible1(&cert, &V::Int(1), OneDivKind::Tensor).ok());
        let cert_yn = Certifier::new(fixtures::yn());
        let c = is_divisible1(&cert_yn, &V::Int(1), OneDivKind::Tensor);
        assert!(!c.ok());
    }

    #[test]
    fn b4_tensor_divisible_set_is_top_only() {
        let cert = Certifier::new(fixtures::b4());
        for e in ["0", "p", "np", "1"] {
            let c = is_divisible1(&cert, &V::sym(e), OneDivKind::Tensor);
            assert_eq!(c.ok(), e == "1", "{e}: {c}");
        }
    }

    #[test]
    fn self_division_gives_units_in_x2m() {
        let cert = Certifier::new(fixtures::x2m());
        let (l, r) = unit1_from_divisible1(&cert, &V::Int(1)).unwrap();
        assert_eq!((l, r), (V::Int(0), V::Int(0)));
        let (l, r) = unit1_from_divisible1(&cert, &V::Int(0)).unwrap();
        assert_eq!((l, r), (V::Int(0), V::Int(0)));
    }

    #[test]
    fn representing_searches_match_the_arithmetic() {
        let cert = Certifier::new(fixtures::x2m());
        let (h, w, c) = search_representing(&cert, RepKind::Tensor, &V::Int(1), &V::Int(1))
            .unwrap()
            .unwrap();
        assert_eq!(h, V::Int(0));
        assert_eq!(w, thin_cell(&ints(&[1, 1]), &ints(&[0])));
        assert!(c.ok());

        let cert_yn = Certifier::new(fixtures::yn());
        let (h, w, _) = search_representing(&cert_yn, RepKind::RHom, &V::Int(2), &V::Int(5))
            .unwrap()
            .unwrap();
        assert_eq!(h, V::Int(3));
        assert_eq!(w, thin_cell(&ints(&[2, 3]), &ints(&[5])));

        let cert_b4 = Certifier::new(fixtures::b4());
        let (h, w, _) = search_representing(&cert_b4, RepKind::RHom, &V::sym("p"), &V::sym("p"))
            .unwrap()
            .unwrap();
        assert_eq!(h, V::sym("1"));
        assert_eq!(w, thin_cell(&[V::sym("p"), V::sym("1")], &[V::sym("p")]));
    }

    #[test]
    fn coherentize_is_identity_on_thin_families() {
        let cert = Certifier::new(fixtures::b4());
        let units = choose_units(&cert).unwrap();
        let raw = synthesize_witnesses(&cert, &units).unwrap();
        let coh = coherentize_witnesses(&cert, &raw).unwrap();
        assert_eq!(raw.left, coh.left);
        assert_eq!(raw.right, coh.right);
        assert!(verify_coherent(&cert, &coh).is_empty());
    }

    #[test]
    fn coherentize_is_idempotent() {
        let cert = Certifier::new(fixtures::x2());
        let units = choose_units(&cert).unwrap();
        let raw = synthesize_witnesses(&cert, &units).unwrap();
        let once = coherentize_witnesses(&cert, &raw).unwrap();
        let twice = coherentize_witnesses(&cert, &once).unwrap();
        assert_eq!(once.left, twice.left);
        assert_eq!(once.right, twice.right);
    }
}
