//! Predicate-backed structures: at most one 2-cell per pair of boundary
//! rows, present exactly when the hom predicate holds.
//!
//! All the arithmetic fixtures live on this backend. Thinness makes every
//! equation scheme hold automatically, so axiom checking reduces to closure
//! of the predicate under composition.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::structure::{composite_boundary, Iv, Structure};
use crate::value::{row, V};
use std::rc::Rc;

pub type HomPredicate = Rc<dyn Fn(&[V], &[V]) -> bool>;

pub struct ThinStructure {
    pub name: String,
    pub budget: Budget,
    pub zeros: Vec<V>,
    ones: Vec<(V, V, V)>,
    pred: HomPredicate,
    merges: bool,
}

impl ThinStructure {
    pub fn new(
        name: &str,
        budget: Budget,
        zeros: Vec<V>,
        ones: Vec<(V, V, V)>,
        merges: bool,
        pred: HomPredicate,
    ) -> ThinStructure {
        ThinStructure { name: name.to_string(), budget, zeros, ones, pred, merges }
    }

    fn one_decl(&self, a: &V) -> Result<&(V, V, V)> {
        self.ones
            .iter()
            .find(|(id, _, _)| id == a)
            .ok_or_else(|| Error::UnknownCell(a.clone()))
    }

    fn composable(&self, cells: &[V]) -> bool {
        if cells.is_empty() {
            return false;
        }
        cells.windows(2).all(|w| {
            matches!(
                (self.one_tgt(&w[0]), self.one_src(&w[1])),
                (Ok(a), Ok(b)) if a == b
            )
        }) && cells.iter().all(|c| self.one_decl(c).is_ok())
    }

    /// The unique cell on a pair of boundary rows.
    pub fn cell(inputs: &[V], outputs: &[V]) -> V {
        V::tag("cell", vec![V::seq(inputs.to_vec()), V::seq(outputs.to_vec())])
    }

    pub fn admits(&self, inputs: &[V], outputs: &[V]) -> bool {
        (self.pred)(inputs, outputs)
    }
}

impl Structure for ThinStructure {
    fn budget(&self) -> Budget {
        self.budget
    }

    fn has_merges(&self) -> bool {
        self.merges
    }

    fn zero_cells(&self) -> Vec<V> {
        self.zeros.clone()
    }

    fn one_cells(&self) -> Vec<V> {
        self.ones.iter().map(|(id, _, _)| id.clone()).collect()
    }

    fn one_src(&self, a: &V) -> Result<V> {
        Ok(self.one_decl(a)?.1.clone())
    }

    fn one_tgt(&self, a: &V) -> Result<V> {
        Ok(self.one_decl(a)?.2.clone())
    }

    fn hom(&self, inputs: &[V], outputs: &[V]) -> Result<Vec<V>> {
        if !self.composable(inputs) || !self.composable(outputs) {
            return Ok(vec![]);
        }
        if self.one_src(&inputs[0])? != self.one_src(&outputs[0])?
            || self.one_tgt(inputs.last().unwrap())? != self.one_tgt(outputs.last().unwrap())?
        {
            return Ok(vec![]);
        }
        if (self.pred)(inputs, outputs) {
            Ok(vec![ThinStructure::cell(inputs, outputs)])
        } else {
            Ok(vec![])
        }
    }

    fn two_inputs(&self, p: &V) -> Result<Vec<V>> {
        let args = p.as_tag("cell").ok_or_else(|| Error::UnknownCell(p.clone()))?;
        Ok(args[0].as_seq().unwrap().to_vec())
    }

    fn two_outputs(&self, p: &V) -> Result<Vec<V>> {
        let args = p.as_tag("cell").ok_or_else(|| Error::UnknownCell(p.clone()))?;
        Ok(args[1].as_seq().unwrap().to_vec())
    }

    fn merge_raw(&self, t: &V, jr: Iv, s: &V, ir: Iv) -> Result<V> {
        let (t_in, t_out) = (self.two_inputs(t)?, self.two_outputs(t)?);
        let (s_in, s_out) = (self.two_inputs(s)?, self.two_outputs(s)?);
        let (inputs, outputs) = composite_boundary(&t_in, &t_out, jr, &s_in, &s_out, ir);
        if !(self.pred)(&inputs, &outputs) {
            return Err(Error::Invalid(format!(
                "thin predicate of {} not closed under composition at {} -> {}",
                self.name,
                row(&inputs),
                row(&outputs)
            )));
        }
        Ok(ThinStructure::cell(&inputs, &outputs))
    }
}
