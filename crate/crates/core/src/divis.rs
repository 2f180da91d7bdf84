//! Budgeted divisibility certification and equation solving.
//!
//! Divisibility of a 2-cell `t` at a boundary interval means: every
//! well-formed composition equation with `t` at that interval has exactly
//! one solution. The certifier enumerates, within the structure's budget,
//! all partner boundary shapes the side conditions admit, all candidate
//! right-hand sides on the resulting boundary, and all candidate solutions,
//! and records one witness per instance.

use crate::budget::Budget;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::structure::{compose, row_src, row_tgt, sequences, Iv, Structure};
use crate::value::V;
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Input,
    Output,
}

impl Side {
    pub fn word(&self) -> &'static str {
        match self {
            Side::Input => "input",
            Side::Output => "output",
        }
    }
}

/// A boundary location on a 2-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loc {
    pub side: Side,
    pub iv: Iv,
}

impl Loc {
    pub fn input(iv: Iv) -> Loc {
        Loc { side: Side::Input, iv }
    }

    pub fn output(iv: Iv) -> Loc {
        Loc { side: Side::Output, iv }
    }

    pub fn input_at(i: usize) -> Loc {
        Loc::input(Iv::at(i))
    }

    pub fn output_at(j: usize) -> Loc {
        Loc::output(Iv::at(j))
    }
}

impl std::fmt::Display for Loc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.side.word(), self.iv)
    }
}

/// Caches certificates per subject so that representability sweeps do not
/// re-run identical enumerations.
pub struct Certifier {
    pub s: Rc<dyn Structure>,
    divis_cache: RefCell<BTreeMap<(V, Loc), Certificate>>,
    unit_cache: RefCell<BTreeMap<V, Certificate>>,
}

impl Certifier {
    pub fn new(s: Rc<dyn Structure>) -> Certifier {
        Certifier {
            s,
            divis_cache: RefCell::new(BTreeMap::new()),
            unit_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn budget(&self) -> Budget {
        self.s.budget()
    }

    fn st(&self) -> &dyn Structure {
        self.s.as_ref()
    }

    /// Certifies divisibility of `t` at `loc`, exhausting every well-formed
    /// equation within budget.
    pub fn divisible_at(&self, t: &V, loc: Loc) -> Certificate {
        if let Some(c) = self.divis_cache.borrow().get(&(t.clone(), loc)) {
            return c.clone();
        }
        let cert = self.divisible_at_uncached(t, loc);
        self.divis_cache
            .borrow_mut()
            .insert((t.clone(), loc), cert.clone());
        cert
    }

    fn divisible_at_uncached(&self, t: &V, loc: Loc) -> Certificate {
        let prop = format!("divisible-at-{loc}");
        let budget = self.budget();
        let mut witnesses = Vec::new();
        let instances = self.equation_instances(t, loc);
        for inst in instances {
            let solutions = self.solutions(&inst);
            match solutions.len() {
                1 => witnesses.push((inst.key(), solutions.into_iter().next().unwrap())),
                0 => {
                    return Certificate::fails(
                        &prop,
                        t.clone(),
                        budget,
                        V::tag("no-solution", vec![inst.key()]),
                    )
                }
                _ => {
                    return Certificate::fails(
                        &prop,
                        t.clone(),
                        budget,
                        V::tag("non-unique", vec![inst.key()]),
                    )
                }
            }
        }
        Certificate::holds(&prop, t.clone(), budget, witnesses)
    }

    /// All well-formed equations with `t` fixed at `loc`, within budget.
    fn equation_instances(&self, t: &V, loc: Loc) -> Vec<Equation> {
        let s = self.st();
        let b = self.budget();
        let t_in = match s.two_inputs(t) {
            Ok(v) => v,
            Err(_) => return vec![],
        };
        let t_out = match s.two_outputs(t) {
            Ok(v) => v,
            Err(_) => return vec![],
        };
        let mut out = Vec::new();
        match loc.side {
            Side::Output => {
                // merge(t, loc.iv, x, ir) = s, with x's input interval matching.
                let jr = loc.iv;
                let m = t_out.len();
                if !jr.valid_in(m) {
                    return vec![];
                }
                let shared = &t_out[jr.0 - 1..jr.1];
                let pre_free = jr.0 == 1;
                let post_free = jr.1 == m;
                for (pre, post) in self.contexts(shared, pre_free, post_free, b.max_in) {
                    let mut x_in = pre.clone();
                    x_in.extend_from_slice(shared);
                    x_in.extend_from_slice(&post);
                    let (xs, xt) = match (row_src(s, &x_in), row_tgt(s, &x_in)) {
                        (Ok(a), Ok(c)) => (a, c),
                        _ => continue,
                    };
                    for delta in sequences(s, Some(&xs), Some(&xt), b.max_out, b.max_seq) {
                        let ir = Iv(pre.len() + 1, pre.len() + shared.len());
                        // Boundary of the composite, uniformly.
                        let mut s_in = pre.clone();
                        s_in.extend_from_slice(&t_in);
                        s_in.extend_from_slice(&post);
                        let mut s_out = t_out[..jr.0 - 1].to_vec();
                        s_out.extend_from_slice(&delta);
                        s_out.extend_from_slice(&t_out[jr.1..]);
                        if !row_in_budget(s, &s_in, b.max_in) || !row_in_budget(s, &s_out, b.max_out) {
                            continue;
                        }
                        let targets = match s.hom(&s_in, &s_out) {
                            Ok(cells) => cells,
                            Err(_) => continue,
                        };
                        for target in targets {
                            out.push(Equation {
                                t: t.clone(),
                                t_slot_left: true,
                                jr,
                                ir,
                                partner_in: x_in.clone(),
                                partner_out: delta.clone(),
                                target,
                            });
                        }
                    }
                }
            }
            Side::Input => {
                // merge(x, jr, t, loc.iv) = s, with x's output interval matching.
                let ir = loc.iv;
                let n = t_in.len();
                if !ir.valid_in(n) {
                    return vec![];
                }
                let shared = &t_in[ir.0 - 1..ir.1];
                let pre_free = ir.0 == 1;
                let post_free = ir.1 == n;
                for (pre, post) in self.contexts(shared, pre_free, post_free, b.max_out) {
                    let mut x_out = pre.clone();
                    x_out.extend_from_slice(shared);
                    x_out.extend_from_slice(&post);
                    let (xs, xt) = match (row_src(s, &x_out), row_tgt(s, &x_out)) {
                        (Ok(a), Ok(c)) => (a, c),
                        _ => continue,
                    };
                    for gamma in sequences(s, Some(&xs), Some(&xt), b.max_in, b.max_seq) {
                        let jr = Iv(pre.len() + 1, pre.len() + shared.len());
                        let mut s_in = t_in[..ir.0 - 1].to_vec();
                        s_in.extend_from_slice(&gamma);
                        s_in.extend_from_slice(&t_in[ir.1..]);
                        let mut s_out = pre.clone();
                        s_out.extend_from_slice(&t_out);
                        s_out.extend_from_slice(&post);
                        if !row_in_budget(s, &s_in, b.max_in) || !row_in_budget(s, &s_out, b.max_out) {
                            continue;
                        }
                        let targets = match s.hom(&s_in, &s_out) {
                            Ok(cells) => cells,
                            Err(_) => continue,
                        };
                        for target in targets {
                            out.push(Equation {
                                t: t.clone(),
                                t_slot_left: false,
                                jr,
                                ir,
                                partner_in: gamma.clone(),
                                partner_out: x_out.clone(),
                                target,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Context rows around a shared interval: the pre-context may be
    /// nonempty only when the interval starts the boundary row of `t`, the
    /// post-context only when it ends it (the side-condition square).
    fn contexts(
        &self,
        shared: &[V],
        pre_free: bool,
        post_free: bool,
        max_arity: usize,
    ) -> Vec<(Vec<V>, Vec<V>)> {
        let s = self.st();
        let b = self.budget();
        let shared_w: usize = shared.iter().map(|a| s.one_weight(a)).sum();
        let slack_arity = max_arity.saturating_sub(shared.len());
        let slack_weight = b.max_seq.saturating_sub(shared_w);
        let shared_src = match row_src(s, shared) {
            Ok(v) => v,
            Err(_) => return vec![],
        };
        let shared_tgt = match row_tgt(s, shared) {
            Ok(v) => v,
            Err(_) => return vec![],
        };
        let mut pres: Vec<Vec<V>> = vec![vec![]];
        if pre_free && slack_arity > 0 {
            pres.extend(sequences(s, None, Some(&shared_src), slack_arity, slack_weight));
        }
        let mut out = Vec::new();
        for pre in pres {
            let pre_w: usize = pre.iter().map(|a| s.one_weight(a)).sum();
            let mut posts: Vec<Vec<V>> = vec![vec![]];
            let arity_left = slack_arity.saturating_sub(pre.len());
            let weight_left = slack_weight.saturating_sub(pre_w);
            if post_free && arity_left > 0 {
                posts.extend(sequences(s, Some(&shared_tgt), None, arity_left, weight_left));
            }
            for post in posts {
                out.push((pre.clone(), post.clone()));
            }
        }
        out
    }

    fn solutions(&self, eq: &Equation) -> Vec<V> {
        let s = self.st();
        let candidates = match s.hom(&eq.partner_in, &eq.partner_out) {
            Ok(cells) => cells,
            Err(_) => vec![],
        };
        candidates
            .into_iter()
            .filter(|r| {
                let composite = if eq.t_slot_left {
                    compose(s, &eq.t, eq.jr, r, eq.ir)
                } else {
                    compose(s, r, eq.jr, &eq.t, eq.ir)
                };
                matches!(composite, Ok(c) if c == eq.target)
            })
            .collect()
    }

    /// A 2-cell of shape `(Γ) -> (Γ)` is a unit when every composition with
    /// it returns the other argument; singleton cuts and, in a
    /// merge-bicategory, full-boundary interval merges are checked.
    pub fn is_unit(&self, p: &V) -> Certificate {
        if let Some(c) = self.unit_cache.borrow().get(p) {
            return c.clone();
        }
        let cert = self.is_unit_uncached(p);
        self.unit_cache.borrow_mut().insert(p.clone(), cert.clone());
        cert
    }

    fn is_unit_uncached(&self, p: &V) -> Certificate {
        let s = self.st();
        let budget = self.budget();
        let prop = "unit";
        let gamma = match s.two_inputs(p) {
            Ok(v) => v,
            Err(_) => {
                return Certificate::fails(prop, p.clone(), budget, V::sym("unknown-cell"));
            }
        };
        let delta = match s.two_outputs(p) {
            Ok(v) => v,
            Err(_) => {
                return Certificate::fails(prop, p.clone(), budget, V::sym("unknown-cell"));
            }
        };
        if gamma != delta {
            return Certificate::fails(prop, p.clone(), budget, V::sym("not-endo"));
        }
        let n = gamma.len();
        let mut witnesses = Vec::new();
        for t in crate::structure::all_two_cells(s) {
            let t_out = s.two_outputs(&t).unwrap_or_default();
            let t_in = s.two_inputs(&t).unwrap_or_default();
            // p merged below t along its full input boundary.
            for j1 in 1..=t_out.len() {
                let j2 = j1 + n - 1;
                if j2 > t_out.len() || t_out[j1 - 1..j2] != gamma[..] {
                    continue;
                }
                match compose(s, &t, Iv(j1, j2), p, Iv(1, n)) {
                    Ok(c) if c == t => {
                        witnesses.push((V::tag("below", vec![t.clone(), V::Int(j1 as i64)]), t.clone()));
                    }
                    Ok(other) => {
                        return Certificate::fails(
                            prop,
                            p.clone(),
                            budget,
                            V::tag("absorb-below", vec![t.clone(), V::Int(j1 as i64), other]),
                        );
                    }
                    Err(_) => {}
                }
            }
            // p merged above t along its full output boundary.
            for i1 in 1..=t_in.len() {
                let i2 = i1 + n - 1;
                if i2 > t_in.len() || t_in[i1 - 1..i2] != gamma[..] {
                    continue;
                }
                match compose(s, p, Iv(1, n), &t, Iv(i1, i2)) {
                    Ok(c) if c == t => {
                        witnesses.push((V::tag("above", vec![t.clone(), V::Int(i1 as i64)]), t.clone()));
                    }
                    Ok(other) => {
                        return Certificate::fails(
                            prop,
                            p.clone(),
                            budget,
                            V::tag("absorb-above", vec![t.clone(), V::Int(i1 as i64), other]),
                        );
                    }
                    Err(_) => {}
                }
            }
        }
        Certificate::holds(prop, p.clone(), budget, witnesses)
    }
}

/// Every quantified boundary row of an equation — the partner's and the
/// composite's — stays within the budget.
pub fn row_in_budget(s: &dyn Structure, row: &[V], max_arity: usize) -> bool {
    row.len() <= max_arity && crate::structure::row_weight(s, row) <= s.budget().max_seq
}

/// A single well-formed equation: the known cell `t` in the left or right
/// slot, the intervals, the required partner boundary, and the target.
#[derive(Clone, Debug)]
pub struct Equation {
    pub t: V,
    pub t_slot_left: bool,
    pub jr: Iv,
    pub ir: Iv,
    pub partner_in: Vec<V>,
    pub partner_out: Vec<V>,
    pub target: V,
}

impl Equation {
    pub fn key(&self) -> V {
        V::tag(
            "eq",
            vec![
                V::sym(if self.t_slot_left { "right" } else { "left" }),
                V::Int(self.jr.0 as i64),
                V::Int(self.jr.1 as i64),
                V::Int(self.ir.0 as i64),
                V::Int(self.ir.1 as i64),
                self.target.clone(),
            ],
        )
    }
}

/// Solves `merge(t, jr, x, ir) = target` for `x`. The partner boundary is
/// forced by the target's boundary; `NoSolution` and `NonUniqueSolution`
/// report failures.
pub fn solve_unknown_right(s: &dyn Structure, t: &V, jr: Iv, ir: Iv, target: &V) -> Result<V> {
    let t_in = s.two_inputs(t)?;
    let t_out = s.two_outputs(t)?;
    let tgt_in = s.two_inputs(target)?;
    let tgt_out = s.two_outputs(target)?;
    let pre_len = ir.0 - 1;
    if tgt_in.len() < pre_len + t_in.len()
        || tgt_in[pre_len..pre_len + t_in.len()] != t_in[..]
    {
        return Err(Error::NoSolution { divisor: t.clone(), target: target.clone() });
    }
    let mut x_in = tgt_in[..pre_len].to_vec();
    x_in.extend_from_slice(&t_out[jr.0 - 1..jr.1]);
    x_in.extend_from_slice(&tgt_in[pre_len + t_in.len()..]);
    let out_post = t_out.len() - jr.1;
    if tgt_out.len() < (jr.0 - 1) + out_post
        || tgt_out[..jr.0 - 1] != t_out[..jr.0 - 1]
        || tgt_out[tgt_out.len() - out_post..] != t_out[jr.1..]
    {
        return Err(Error::NoSolution { divisor: t.clone(), target: target.clone() });
    }
    let x_out = tgt_out[jr.0 - 1..tgt_out.len() - out_post].to_vec();
    let mut found = Vec::new();
    for r in s.hom(&x_in, &x_out)? {
        if matches!(compose(s, t, jr, &r, ir), Ok(c) if &c == target) {
            found.push(r);
        }
    }
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::NoSolution { divisor: t.clone(), target: target.clone() }),
        _ => Err(Error::NonUniqueSolution { divisor: t.clone(), target: target.clone() }),
    }
}

/// Solves `merge(x, jr, t, ir) = target` for `x`.
pub fn solve_unknown_left(s: &dyn Structure, t: &V, jr: Iv, ir: Iv, target: &V) -> Result<V> {
    let t_in = s.two_inputs(t)?;
    let t_out = s.two_outputs(t)?;
    let tgt_in = s.two_inputs(target)?;
    let tgt_out = s.two_outputs(target)?;
    let pre_len = jr.0 - 1;
    if tgt_out.len() < pre_len + t_out.len()
        || tgt_out[pre_len..pre_len + t_out.len()] != t_out[..]
    {
        return Err(Error::NoSolution { divisor: t.clone(), target: target.clone() });
    }
    let mut x_out = tgt_out[..pre_len].to_vec();
    x_out.extend_from_slice(&t_in[ir.0 - 1..ir.1]);
    x_out.extend_from_slice(&tgt_out[pre_len + t_out.len()..]);
    let in_post = t_in.len() - ir.1;
    if tgt_in.len() < (ir.0 - 1) + in_post
        || tgt_in[..ir.0 - 1] != t_in[..ir.0 - 1]
        || tgt_in[tgt_in.len() - in_post..] != t_in[ir.1..]
    {
        return Err(Error::NoSolution { divisor: t.clone(), target: target.clone() });
    }
    let x_in = tgt_in[ir.0 - 1..tgt_in.len() - in_post].to_vec();
    let mut found = Vec::new();
    for r in s.hom(&x_in, &x_out)? {
        if matches!(compose(s, &r, jr, t, ir), Ok(c) if &c == target) {
            found.push(r);
        }
    }
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::NoSolution { divisor: t.clone(), target: target.clone() }),
        _ => Err(Error::NonUniqueSolution { divisor: t.clone(), target: target.clone() }),
    }
}

/// The public division operation: solves the cut equation with `t` fixed at
/// a single boundary position against `target`, trying every placement the
/// boundaries admit; the solution must be unique across placements.
pub fn divide(s: &dyn Structure, t: &V, loc: Loc, target: &V) -> Result<V> {
    if loc.iv.len() != 1 && !s.has_merges() {
        return Err(Error::IllegalCut("interval division needs a merge-bicategory".into()));
    }
    let t_in = s.two_inputs(t)?;
    let t_out = s.two_outputs(t)?;
    let tgt_in = s.two_inputs(target)?;
    let mut found = Vec::new();
    match loc.side {
        Side::Output => {
            // Equation merge(t, loc.iv, x, ir) = target. Placements: offsets
            // where t's inputs occur inside target's inputs.
            for pre_len in 0..=tgt_in.len().saturating_sub(t_in.len()) {
                let ir = Iv(pre_len + 1, pre_len + loc.iv.len());
                if let Ok(x) = solve_unknown_right(s, t, loc.iv, ir, target) {
                    found.push(x);
                }
            }
        }
        Side::Input => {
            let tgt_out = s.two_outputs(target)?;
            for pre_len in 0..=tgt_out.len().saturating_sub(t_out.len()) {
                let jr = Iv(pre_len + 1, pre_len + loc.iv.len());
                if let Ok(x) = solve_unknown_left(s, t, jr, loc.iv, target) {
                    found.push(x);
                }
            }
        }
    }
    found.sort();
    found.dedup();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::NoSolution { divisor: t.clone(), target: target.clone() }),
        _ => Err(Error::NonUniqueSolution { divisor: t.clone(), target: target.clone() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::thin::ThinStructure;

    fn x2_cell(ins: &[i64], outs: &[i64]) -> V {
        let i: Vec<V> = ins.iter().map(|&k| V::Int(k)).collect();
        let o: Vec<V> = outs.iter().map(|&k| V::Int(k)).collect();
        ThinStructure::cell(&i, &o)
    }

    #[test]
    fn cut_matches_the_boundary_formulas() {
        // Oracle: the case formulas computed by hand on the parity fixture.
        let x2 = fixtures::x2();
        let t = x2_cell(&[0], &[1, 0, 1]);
        // Case (b): t's last output onto s's first input.
        let s = x2_cell(&[1, 0], &[1]);
        let c = compose(x2.as_ref(), &t, Iv::at(3), &s, Iv::at(1)).unwrap();
        assert_eq!(c, x2_cell(&[0, 0], &[1, 0, 1]));
        // Case (d): t's first output onto s's last input.
        let s = x2_cell(&[0, 1], &[1]);
        let c = compose(x2.as_ref(), &t, Iv::at(1), &s, Iv::at(2)).unwrap();
        assert_eq!(c, x2_cell(&[0, 0], &[1, 0, 1]));
        // Interval merge along [2,3]/[1,2].
        let c = compose(x2.as_ref(), &t, Iv(2, 3), &s, Iv(1, 2)).unwrap();
        assert_eq!(c, x2_cell(&[0], &[1, 1]));
    }

    #[test]
    fn illegal_indices_are_rejected() {
        let x2 = fixtures::x2();
        // Middle-to-middle single cut with nonempty contexts on all four
        // sides satisfies no side of the square.
        let t = x2_cell(&[0], &[1, 0, 1]);
        let s = x2_cell(&[1, 0, 1], &[1]);
        let err = compose(x2.as_ref(), &t, Iv::at(2), &s, Iv::at(2)).unwrap_err();
        assert!(matches!(err, Error::IllegalMerge(_)));
    }

    #[test]
    fn mismatched_boundary_is_rejected() {
        let x2 = fixtures::x2();
        let t = x2_cell(&[0], &[1, 1]);
        let s = x2_cell(&[0], &[0]);
        assert!(compose(x2.as_ref(), &t, Iv::at(2), &s, Iv::at(1)).is_err());
    }

    #[test]
    fn x2_two_one_cell_is_divisible_at_its_output() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2).divisible_at(&x2_cell(&[1, 1], &[0]), Loc::output_at(1));
        assert!(cert.ok(), "{cert}");
        assert!(!cert.witnesses.is_empty());
    }

    #[test]
    fn yn_two_one_cell_is_not_divisible() {
        // In the natural-number fixture there is no cell (0) -> (2), so the
        // equation asking (1,1)->(0) to reach (1,1)->(2) has no solution.
        let yn = fixtures::yn();
        let t = x2_cell(&[1, 1], &[0]);
        let cert = Certifier::new(yn).divisible_at(&t, Loc::output_at(1));
        assert!(!cert.ok());
        let ce = cert.counterexample.unwrap();
        assert!(ce.as_tag("no-solution").is_some(), "{ce}");
    }

    #[test]
    fn divide_solves_parity_equations() {
        let x2 = fixtures::x2();
        let t = x2_cell(&[1, 1], &[0]);
        let target = x2_cell(&[1, 1], &[0]);
        let r = divide(x2.as_ref(), &t, Loc::output_at(1), &target).unwrap();
        assert_eq!(r, x2_cell(&[0], &[0]));
    }

    #[test]
    fn divide_reports_no_solution_in_yn() {
        let yn = fixtures::yn();
        let t = x2_cell(&[1, 1], &[0]);
        let target = x2_cell(&[1, 1], &[2]);
        let err = divide(yn.as_ref(), &t, Loc::output_at(1), &target).unwrap_err();
        assert!(matches!(err, Error::NoSolution { .. }));
    }

    #[test]
    fn units_in_x2_are_units() {
        let x2 = fixtures::x2();
        let cert = Certifier::new(x2).is_unit(&x2_cell(&[0], &[0]));
        assert!(cert.ok(), "{cert}");
    }

    #[test]
    fn divide_self_through_unit_position_gives_unit() {
        let b4 = fixtures::b4();
        let p = ThinStructure::cell(&[V::sym("p")], &[V::sym("1")]);
        // The unique r with cut(r, p-at-input-1) = p is the idempotent on p.
        let r = divide(b4.as_ref(), &p, Loc::input_at(1), &p).unwrap();
        assert_eq!(r, ThinStructure::cell(&[V::sym("p")], &[V::sym("p")]));
    }
}
