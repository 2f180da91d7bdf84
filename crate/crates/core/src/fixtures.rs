//! Built-in test structures.
//!
//! * `b4`  — the 4-element Boolean algebra as a thin polycategory: a unique
//!   cell `(a1..an) -> (b1..bm)` whenever `a1 ∧ … ∧ an <= b1 ∨ … ∨ bm`.
//! * `x2`  — the one-object thin merge-bicategory on 1-cells {0,1} with a
//!   cell whenever input and output sums agree mod 2.
//! * `x2m` — the multicategory restriction of `x2`.
//! * `yn`  — the multicategory on natural numbers with a cell
//!   `(k1..kn) -> (k)` whenever `Σki = k + 2m`, truncated to values <= 6 and
//!   arity <= 4.
//! * `s1`  — the single-1-cell multicategory with one cell `(a,..,a) -> (a)`
//!   per arity.
//! * `zg`  — the two-group on Z/2 with the nontrivial associator cocycle,
//!   presented as a merge-bicategory through the bicategory-to-sequences
//!   construction.

use crate::bicat::{groth, FiniteBicategory};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::polygraph::{OneCellDecl, RegularTwoPolygraph, TwoCellDecl};
use crate::thin::ThinStructure;
use crate::structure::Structure;
use crate::value::V;
use std::collections::BTreeMap;
use std::rc::Rc;

const B4_ELEMS: [&str; 4] = ["0", "p", "np", "1"];

fn b4_meet_all(xs: &[V]) -> u8 {
    xs.iter().fold(3u8, |acc, x| acc & b4_bits(x))
}

fn b4_join_all(xs: &[V]) -> u8 {
    xs.iter().fold(0u8, |acc, x| acc | b4_bits(x))
}

/// Elements as subsets of a 2-element set: 0 = {}, p = {1}, np = {2}, 1 = {1,2}.
fn b4_bits(x: &V) -> u8 {
    match x {
        V::Sym(s) => match &**s {
            "0" => 0b00,
            "p" => 0b01,
            "np" => 0b10,
            "1" => 0b11,
            _ => 0b00,
        },
        _ => 0b00,
    }
}

pub fn b4_leq(a: &V, b: &V) -> bool {
    b4_bits(a) & !b4_bits(b) == 0
}

pub fn b4_leq_pairs() -> Vec<(V, V)> {
    let mut out = Vec::new();
    for a in B4_ELEMS {
        for b in B4_ELEMS {
            if b4_leq(&V::sym(a), &V::sym(b)) {
                out.push((V::sym(a), V::sym(b)));
            }
        }
    }
    out
}

pub fn b4() -> Rc<dyn Structure> {
    b4_with_budget(Budget::default())
}

pub fn b4_with_budget(budget: Budget) -> Rc<dyn Structure> {
    let pt = V::sym("pt");
    let ones = B4_ELEMS.iter().map(|e| (V::sym(e), pt.clone(), pt.clone())).collect();
    Rc::new(ThinStructure::new(
        "b4",
        budget,
        vec![pt],
        ones,
        false,
        Rc::new(|ins: &[V], outs: &[V]| b4_meet_all(ins) & !b4_join_all(outs) == 0),
    ))
}

/// The explicit polygraph of `b4` with cells declared up to arity (2,2).
pub fn b4_polygraph() -> RegularTwoPolygraph {
    let pt = V::sym("pt");
    let mut p = RegularTwoPolygraph::default();
    p.zero_cells = vec![pt.clone()];
    for e in B4_ELEMS {
        p.one_cells.insert(V::sym(e), OneCellDecl { src: pt.clone(), tgt: pt.clone() });
    }
    let rows: Vec<Vec<V>> = {
        let mut rows = Vec::new();
        for a in B4_ELEMS {
            rows.push(vec![V::sym(a)]);
            for b in B4_ELEMS {
                rows.push(vec![V::sym(a), V::sym(b)]);
            }
        }
        rows
    };
    for ins in &rows {
        for outs in &rows {
            if b4_meet_all(ins) & !b4_join_all(outs) == 0 {
                let id = V::tag("c", vec![V::seq(ins.clone()), V::seq(outs.clone())]);
                p.two_cells.insert(id, TwoCellDecl { inputs: ins.clone(), outputs: outs.clone() });
            }
        }
    }
    p
}

fn parity(xs: &[V]) -> i64 {
    xs.iter().filter_map(|x| x.as_int()).sum::<i64>() & 1
}

pub fn x2() -> Rc<dyn Structure> {
    x2_with_budget(Budget::default())
}

pub fn x2_with_budget(budget: Budget) -> Rc<dyn Structure> {
    let pt = V::sym("pt");
    let ones = vec![
        (V::Int(0), pt.clone(), pt.clone()),
        (V::Int(1), pt.clone(), pt.clone()),
    ];
    Rc::new(ThinStructure::new(
        "x2",
        budget,
        vec![pt],
        ones,
        true,
        Rc::new(|ins: &[V], outs: &[V]| parity(ins) == parity(outs)),
    ))
}

pub fn x2m() -> Rc<dyn Structure> {
    x2m_with_budget(Budget::new(3, 1, 4))
}

pub fn x2m_with_budget(budget: Budget) -> Rc<dyn Structure> {
    let pt = V::sym("pt");
    let ones = vec![
        (V::Int(0), pt.clone(), pt.clone()),
        (V::Int(1), pt.clone(), pt.clone()),
    ];
    Rc::new(ThinStructure::new(
        "x2m",
        budget,
        vec![pt],
        ones,
        false,
        Rc::new(|ins: &[V], outs: &[V]| outs.len() == 1 && parity(ins) == parity(outs)),
    ))
}

pub const YN_MAX_VALUE: i64 = 6;
pub const YN_MAX_ARITY: usize = 4;

pub fn yn() -> Rc<dyn Structure> {
    yn_with_budget(Budget::new(3, 1, 4))
}

pub fn yn_with_budget(budget: Budget) -> Rc<dyn Structure> {
    let pt = V::sym("pt");
    let ones = (0..=YN_MAX_VALUE).map(|k| (V::Int(k), pt.clone(), pt.clone())).collect();
    Rc::new(ThinStructure::new(
        "yn",
        budget,
        vec![pt],
        ones,
        false,
        Rc::new(|ins: &[V], outs: &[V]| {
            if outs.len() != 1 || ins.len() > YN_MAX_ARITY {
                return false;
            }
            let sum: i64 = ins.iter().filter_map(|x| x.as_int()).sum();
            let k = outs[0].as_int().unwrap_or(-1);
            (0..=YN_MAX_VALUE).contains(&k)
                && ins.iter().all(|x| matches!(x.as_int(), Some(v) if (0..=YN_MAX_VALUE).contains(&v)))
                && sum >= k
                && (sum - k) % 2 == 0
        }),
    ))
}

pub fn s1() -> Rc<dyn Structure> {
    s1_with_budget(Budget::new(3, 1, 4))
}

pub fn s1_with_budget(budget: Budget) -> Rc<dyn Structure> {
    let pt = V::sym("pt");
    let a = V::sym("a");
    Rc::new(ThinStructure::new(
        "s1",
        budget,
        vec![pt.clone()],
        vec![(a.clone(), pt.clone(), pt)],
        false,
        Rc::new(|_ins: &[V], outs: &[V]| outs.len() == 1),
    ))
}

/// The source two-group of the `zg` fixture: one 0-cell, 1-cells Z/2,
/// hom(a,a) = Z/2, tensor = addition, associator twisted by the cocycle
/// `w(a,b,c) = abc`.
pub fn zg_source_bicategory() -> FiniteBicategory {
    let pt = V::sym("pt");
    let one = |a: i64| V::Int(a);
    let two = |a: i64, t: i64| V::tag("th", vec![V::Int(a), V::Int(t)]);
    let mut b = FiniteBicategory::default();
    b.cells0 = vec![pt.clone()];
    for a in 0..2 {
        b.one_src.insert(one(a), pt.clone());
        b.one_tgt.insert(one(a), pt.clone());
        for t in 0..2 {
            b.two_src.insert(two(a, t), one(a));
            b.two_tgt.insert(two(a, t), one(a));
        }
    }
    for a in 0..2 {
        for t in 0..2 {
            for u in 0..2 {
                b.vcomp.insert((two(a, t), two(a, u)), two(a, (t + u) % 2));
            }
        }
        b.vunit.insert(one(a), two(a, 0));
        b.lunit.insert(one(a), two(a, 0));
        b.runit.insert(one(a), two(a, 0));
    }
    for a in 0..2 {
        for c in 0..2 {
            b.hcomp1.insert((one(a), one(c)), one((a + c) % 2));
            for t in 0..2 {
                for u in 0..2 {
                    b.hcomp2.insert((two(a, t), two(c, u)), two((a + c) % 2, (t + u) % 2));
                }
            }
        }
    }
    b.hunit.insert(pt, one(0));
    for a in 0..2 {
        for c in 0..2 {
            for d in 0..2 {
                b.assoc.insert((one(a), one(c), one(d)), two((a + c + d) % 2, a * c * d));
            }
        }
    }
    b
}

pub fn zg() -> Rc<dyn Structure> {
    zg_with_budget(Budget::default())
}

pub fn zg_with_budget(budget: Budget) -> Rc<dyn Structure> {
    groth(Rc::new(zg_source_bicategory()), budget)
}

pub fn by_name(name: &str, budget: Budget) -> Result<Rc<dyn Structure>> {
    match name {
        "b4" => Ok(b4_with_budget(budget)),
        "x2" => Ok(x2_with_budget(budget)),
        "x2m" => Ok(x2m_with_budget(budget)),
        "yn" => Ok(yn_with_budget(budget)),
        "s1" => Ok(s1_with_budget(budget)),
        "zg" => Ok(zg_with_budget(budget)),
        _ => Err(Error::Invalid(format!("unknown fixture `{name}`"))),
    }
}

pub fn fixture_names() -> Vec<&'static str> {
    vec!["b4", "x2", "x2m", "yn", "s1", "zg"]
}

/// The inclusion x2m -> yn on cells, used by the morphism tests.
pub fn x2m_to_yn_cell(p: &V) -> V {
    p.clone()
}

pub fn _unused_map() -> BTreeMap<V, V> {
    BTreeMap::new()
}
