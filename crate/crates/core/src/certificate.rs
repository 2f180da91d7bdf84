//! Certificates: the outcome of an exhaustive budgeted check.
//!
//! A certificate records the property checked, the subject cell, the budget
//! the quantifiers ranged over, a witness per enumerated instance when the
//! property holds, and a counterexample when it fails. Re-running a check
//! yields an identical certificate.

use crate::budget::Budget;
use crate::value::V;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub property: String,
    pub subject: V,
    pub verdict: Verdict,
    pub budget: Budget,
    pub witnesses: Vec<(V, V)>,
    pub counterexample: Option<V>,
}

impl Certificate {
    pub fn holds(property: &str, subject: V, budget: Budget, witnesses: Vec<(V, V)>) -> Certificate {
        Certificate {
            property: property.to_string(),
            subject,
            verdict: Verdict::Holds,
            budget,
            witnesses,
            counterexample: None,
        }
    }

    pub fn fails(property: &str, subject: V, budget: Budget, counterexample: V) -> Certificate {
        Certificate {
            property: property.to_string(),
            subject,
            verdict: Verdict::Fails,
            budget,
            witnesses: Vec::new(),
            counterexample: Some(counterexample),
        }
    }

    pub fn ok(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        };
        write!(
            f,
            "certificate property={} subject={} verdict={verdict} budget={} instances={}",
            self.property,
            self.subject,
            self.budget,
            self.witnesses.len()
        )?;
        if let Some(ce) = &self.counterexample {
            write!(f, " counterexample={ce}")?;
        }
        Ok(())
    }
}
