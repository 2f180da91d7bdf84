//! The common interface to poly- and merge-bicategories.
//!
//! A [`Structure`] presents a regular poly-bicategory (or merge-bicategory,
//! when [`Structure::has_merges`] holds) under an arity budget. Backends only
//! implement boundary lookups, hom enumeration, and the raw composition; the
//! legality of a composition — matching shared boundary, the side-condition
//! square, interval lengths — is enforced once, in [`compose`].

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::value::{row, V};
use std::rc::Rc;

/// A 1-based inclusive interval of boundary positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iv(pub usize, pub usize);

impl Iv {
    pub fn at(i: usize) -> Iv {
        Iv(i, i)
    }

    pub fn len(&self) -> usize {
        self.1 - self.0 + 1
    }

    pub fn valid_in(&self, arity: usize) -> bool {
        1 <= self.0 && self.0 <= self.1 && self.1 <= arity
    }
}

impl std::fmt::Display for Iv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == self.1 {
            write!(f, "{}", self.0)
        } else {
            write!(f, "[{},{}]", self.0, self.1)
        }
    }
}

pub trait Structure {
    fn budget(&self) -> Budget;

    /// Whether interval merges of length > 1 are part of the structure.
    fn has_merges(&self) -> bool;

    fn zero_cells(&self) -> Vec<V>;

    /// All 1-cells within budget, in canonical order.
    fn one_cells(&self) -> Vec<V>;

    fn one_src(&self, a: &V) -> Result<V>;

    fn one_tgt(&self, a: &V) -> Result<V>;

    /// Weight of a 1-cell toward the `max_seq` budget. A structure whose
    /// 1-cells stand for composable sequences of an underlying structure
    /// weights them by the underlying length.
    fn one_weight(&self, _a: &V) -> usize {
        1
    }

    /// The 2-cells with the given boundary, in canonical order.
    fn hom(&self, inputs: &[V], outputs: &[V]) -> Result<Vec<V>>;

    fn two_inputs(&self, p: &V) -> Result<Vec<V>>;

    fn two_outputs(&self, p: &V) -> Result<Vec<V>>;

    /// Raw composition. `compose` has already checked that the boundary
    /// intervals match and satisfy the side conditions; implementations may
    /// still fail on cells they cannot represent.
    fn merge_raw(&self, t: &V, jr: Iv, s: &V, ir: Iv) -> Result<V>;
}

/// Checks the side-condition square for gluing `t`'s output interval
/// `[j1,j2]` (of `m`) onto `s`'s input interval `[i1,i2]` (of `p`).
pub fn sides_ok(jr: Iv, m: usize, ir: Iv, p: usize) -> bool {
    let full_in = ir.0 == 1 && ir.1 == p;
    let full_out = jr.0 == 1 && jr.1 == m;
    full_in || full_out || (ir.0 == 1 && jr.1 == m) || (jr.0 == 1 && ir.1 == p)
}

/// Composes `t` and `s` along `t`'s output interval `jr` and `s`'s input
/// interval `ir`, after validating the composition is legal. No budget bound
/// is applied here: quantifier bounds live in the enumeration layer.
pub fn compose(s: &dyn Structure, t: &V, jr: Iv, u: &V, ir: Iv) -> Result<V> {
    let t_out = s.two_outputs(t)?;
    let u_in = s.two_inputs(u)?;
    let m = t_out.len();
    let p = u_in.len();
    if !jr.valid_in(m) || !ir.valid_in(p) {
        return Err(Error::IllegalMerge(format!(
            "intervals {jr}/{ir} out of range for arities {m}/{p}"
        )));
    }
    if jr.len() != ir.len() {
        return Err(Error::IllegalMerge(format!(
            "interval lengths differ: {jr} vs {ir}"
        )));
    }
    if jr.len() > 1 && !s.has_merges() {
        return Err(Error::IllegalMerge(
            "interval merges are not available in a poly-bicategory".into(),
        ));
    }
    if t_out[jr.0 - 1..jr.1] != u_in[ir.0 - 1..ir.1] {
        return Err(Error::IllegalMerge(format!(
            "shared boundary mismatch: {} vs {}",
            row(&t_out[jr.0 - 1..jr.1]),
            row(&u_in[ir.0 - 1..ir.1])
        )));
    }
    if !sides_ok(jr, m, ir, p) {
        return Err(Error::IllegalMerge(format!(
            "indices {jr}/{ir} satisfy no side of the conditions square (arities {m}/{p})"
        )));
    }
    s.merge_raw(t, jr, u, ir)
}

/// Single-position composition, with the roles of the two index arguments as
/// in `cut(t, j, s, i)`: `t`'s `j`-th output onto `s`'s `i`-th input.
pub fn cut(s: &dyn Structure, t: &V, j: usize, u: &V, i: usize) -> Result<V> {
    compose(s, t, Iv::at(j), u, Iv::at(i)).map_err(|e| match e {
        Error::IllegalMerge(msg) => Error::IllegalCut(msg),
        other => other,
    })
}

/// Budget-enforcing variant of [`cut`]: the result's arities must stay within
/// the structure's budget.
pub fn cut_within_budget(s: &dyn Structure, t: &V, j: usize, u: &V, i: usize) -> Result<V> {
    let r = cut(s, t, j, u, i)?;
    let b = s.budget();
    let n = s.two_inputs(&r)?.len();
    let m = s.two_outputs(&r)?.len();
    if n > b.max_in || m > b.max_out {
        return Err(Error::BudgetExceeded(format!(
            "composite has arity ({n},{m}), budget is {b}"
        )));
    }
    Ok(r)
}

/// The boundary of a legal composite, computed uniformly for all four cases:
/// inputs are `s`-pre ++ `t`-inputs ++ `s`-post, outputs `t`-pre ++
/// `s`-outputs ++ `t`-post.
pub fn composite_boundary(
    t_in: &[V],
    t_out: &[V],
    jr: Iv,
    u_in: &[V],
    u_out: &[V],
    ir: Iv,
) -> (Vec<V>, Vec<V>) {
    let mut inputs = Vec::with_capacity(u_in.len() + t_in.len() - ir.len());
    inputs.extend_from_slice(&u_in[..ir.0 - 1]);
    inputs.extend_from_slice(t_in);
    inputs.extend_from_slice(&u_in[ir.1..]);
    let mut outputs = Vec::with_capacity(t_out.len() + u_out.len() - jr.len());
    outputs.extend_from_slice(&t_out[..jr.0 - 1]);
    outputs.extend_from_slice(u_out);
    outputs.extend_from_slice(&t_out[jr.1..]);
    (inputs, outputs)
}

/// Weighted length of a row of 1-cells.
pub fn row_weight(s: &dyn Structure, cells: &[V]) -> usize {
    cells.iter().map(|a| s.one_weight(a)).sum()
}

/// All composable sequences of 1-cells starting at `x` (any start if `None`),
/// ending at `y` (any end if `None`), with at most `max_arity` cells and
/// total weight at most `max_weight`. Lexicographic in the 1-cell order,
/// shorter sequences first.
pub fn sequences(
    s: &dyn Structure,
    x: Option<&V>,
    y: Option<&V>,
    max_arity: usize,
    max_weight: usize,
) -> Vec<Vec<V>> {
    let ones = s.one_cells();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<V>, V, usize)> = Vec::new();
    for a in &ones {
        let src = match s.one_src(a) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if let Some(want) = x {
            if &src != want {
                continue;
            }
        }
        let w = s.one_weight(a);
        if w <= max_weight {
            stack.push((vec![a.clone()], s.one_tgt(a).unwrap_or(src), w));
        }
    }
    // Depth-first in order keeps the output lexicographic per length once
    // sorted below.
    while let Some((seq, end, w)) = stack.pop() {
        if y.map_or(true, |want| want == &end) {
            out.push(seq.clone());
        }
        if seq.len() < max_arity {
            for a in &ones {
                if s.one_src(a).ok().as_ref() == Some(&end) {
                    let wa = s.one_weight(a);
                    if w + wa <= max_weight {
                        let mut next = seq.clone();
                        next.push(a.clone());
                        stack.push((next, s.one_tgt(a).unwrap(), w + wa));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Input rows within budget: arity at most `max_in`, weight at most `max_seq`.
pub fn input_rows(s: &dyn Structure) -> Vec<Vec<V>> {
    let b = s.budget();
    sequences(s, None, None, b.max_in, b.max_seq)
}

pub fn output_rows(s: &dyn Structure) -> Vec<Vec<V>> {
    let b = s.budget();
    sequences(s, None, None, b.max_out, b.max_seq)
}

pub fn row_src(s: &dyn Structure, cells: &[V]) -> Result<V> {
    s.one_src(&cells[0])
}

pub fn row_tgt(s: &dyn Structure, cells: &[V]) -> Result<V> {
    s.one_tgt(cells.last().expect("nonempty row"))
}

/// Every 2-cell within budget, in canonical (input row, output row, cell)
/// order.
pub fn all_two_cells(s: &dyn Structure) -> Vec<V> {
    let mut out = Vec::new();
    let inputs = input_rows(s);
    let outputs = output_rows(s);
    for gamma in &inputs {
        for delta in &outputs {
            if row_src(s, gamma).ok() != row_src(s, delta).ok()
                || row_tgt(s, gamma).ok() != row_tgt(s, delta).ok()
            {
                continue;
            }
            if let Ok(cells) = s.hom(gamma, delta) {
                out.extend(cells);
            }
        }
    }
    out
}

pub fn contains_two(s: &dyn Structure, p: &V) -> bool {
    let (gamma, delta) = match (s.two_inputs(p), s.two_outputs(p)) {
        (Ok(g), Ok(d)) => (g, d),
        _ => return false,
    };
    s.hom(&gamma, &delta).map_or(false, |cells| cells.contains(p))
}

/// The `op` view: 1-cell directions reversed, boundary rows reversed.
pub struct OpView {
    pub inner: Rc<dyn Structure>,
}

fn rev(cells: &[V]) -> Vec<V> {
    cells.iter().rev().cloned().collect()
}

impl Structure for OpView {
    fn budget(&self) -> Budget {
        self.inner.budget()
    }

    fn has_merges(&self) -> bool {
        self.inner.has_merges()
    }

    fn zero_cells(&self) -> Vec<V> {
        self.inner.zero_cells()
    }

    fn one_cells(&self) -> Vec<V> {
        self.inner.one_cells()
    }

    fn one_src(&self, a: &V) -> Result<V> {
        self.inner.one_tgt(a)
    }

    fn one_tgt(&self, a: &V) -> Result<V> {
        self.inner.one_src(a)
    }

    fn one_weight(&self, a: &V) -> usize {
        self.inner.one_weight(a)
    }

    fn hom(&self, inputs: &[V], outputs: &[V]) -> Result<Vec<V>> {
        self.inner.hom(&rev(inputs), &rev(outputs))
    }

    fn two_inputs(&self, p: &V) -> Result<Vec<V>> {
        Ok(rev(&self.inner.two_inputs(p)?))
    }

    fn two_outputs(&self, p: &V) -> Result<Vec<V>> {
        Ok(rev(&self.inner.two_outputs(p)?))
    }

    fn merge_raw(&self, t: &V, jr: Iv, s: &V, ir: Iv) -> Result<V> {
        let m = self.inner.two_outputs(t)?.len();
        let p = self.inner.two_inputs(s)?.len();
        let jr2 = Iv(m + 1 - jr.1, m + 1 - jr.0);
        let ir2 = Iv(p + 1 - ir.1, p + 1 - ir.0);
        self.inner.merge_raw(t, jr2, s, ir2)
    }
}

/// The `co` view: inputs and outputs swapped, so composition swaps the two
/// arguments.
pub struct CoView {
    pub inner: Rc<dyn Structure>,
}

impl Structure for CoView {
    fn budget(&self) -> Budget {
        let b = self.inner.budget();
        Budget::new(b.max_out, b.max_in, b.max_seq)
    }

    fn has_merges(&self) -> bool {
        self.inner.has_merges()
    }

    fn zero_cells(&self) -> Vec<V> {
        self.inner.zero_cells()
    }

    fn one_cells(&self) -> Vec<V> {
        self.inner.one_cells()
    }

    fn one_src(&self, a: &V) -> Result<V> {
        self.inner.one_src(a)
    }

    fn one_tgt(&self, a: &V) -> Result<V> {
        self.inner.one_tgt(a)
    }

    fn one_weight(&self, a: &V) -> usize {
        self.inner.one_weight(a)
    }

    fn hom(&self, inputs: &[V], outputs: &[V]) -> Result<Vec<V>> {
        self.inner.hom(outputs, inputs)
    }

    fn two_inputs(&self, p: &V) -> Result<Vec<V>> {
        self.inner.two_outputs(p)
    }

    fn two_outputs(&self, p: &V) -> Result<Vec<V>> {
        self.inner.two_inputs(p)
    }

    fn merge_raw(&self, t: &V, jr: Iv, s: &V, ir: Iv) -> Result<V> {
        self.inner.merge_raw(s, ir, t, jr)
    }
}

/// Forgets interval merges, exposing the underlying regular poly-bicategory
/// of a merge-bicategory.
pub struct UnderlyingPoly {
    pub inner: Rc<dyn Structure>,
}

impl Structure for UnderlyingPoly {
    fn budget(&self) -> Budget {
        self.inner.budget()
    }

    fn has_merges(&self) -> bool {
        false
    }

    fn zero_cells(&self) -> Vec<V> {
        self.inner.zero_cells()
    }

    fn one_cells(&self) -> Vec<V> {
        self.inner.one_cells()
    }

    fn one_src(&self, a: &V) -> Result<V> {
        self.inner.one_src(a)
    }

    fn one_tgt(&self, a: &V) -> Result<V> {
        self.inner.one_tgt(a)
    }

    fn one_weight(&self, a: &V) -> usize {
        self.inner.one_weight(a)
    }

    fn hom(&self, inputs: &[V], outputs: &[V]) -> Result<Vec<V>> {
        self.inner.hom(inputs, outputs)
    }

    fn two_inputs(&self, p: &V) -> Result<Vec<V>> {
        self.inner.two_inputs(p)
    }

    fn two_outputs(&self, p: &V) -> Result<Vec<V>> {
        self.inner.two_outputs(p)
    }

    fn merge_raw(&self, t: &V, jr: Iv, s: &V, ir: Iv) -> Result<V> {
        self.inner.merge_raw(t, jr, s, ir)
    }
}

pub fn op_view(inner: Rc<dyn Structure>) -> Rc<dyn Structure> {
    Rc::new(OpView { inner })
}

pub fn co_view(inner: Rc<dyn Structure>) -> Rc<dyn Structure> {
    Rc::new(CoView { inner })
}

pub fn underlying_poly(inner: Rc<dyn Structure>) -> Rc<dyn Structure> {
    Rc::new(UnderlyingPoly { inner })
}
