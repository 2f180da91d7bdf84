use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Finite bounds under which every universally quantified check is certified.
///
/// `max_in` and `max_out` bound the arities of the 2-cells an enumeration
/// ranges over; `max_seq` bounds the weighted length of composable sequences
/// of 1-cells (each 1-cell counts with its [`crate::structure::Structure::one_weight`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_in: usize,
    pub max_out: usize,
    pub max_seq: usize,
}

impl Budget {
    pub fn new(max_in: usize, max_out: usize, max_seq: usize) -> Budget {
        Budget { max_in, max_out, max_seq }
    }

    /// Parses the CLI form `I,O,L`.
    pub fn parse(text: &str) -> Result<Budget> {
        let parts: Vec<_> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Invalid(format!("budget must be I,O,L, got `{text}`")));
        }
        let mut nums = [0usize; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad budget component `{part}`")))?;
        }
        if nums.iter().any(|&n| n == 0) {
            return Err(Error::Invalid("budget components must be >= 1".into()));
        }
        Ok(Budget::new(nums[0], nums[1], nums[2]))
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(3, 3, 4)
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.max_in, self.max_out, self.max_seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let b = Budget::parse("3,1,4").unwrap();
        assert_eq!(b, Budget::new(3, 1, 4));
        assert_eq!(b.to_string(), "3,1,4");
        assert!(Budget::parse("3,0,4").is_err());
        assert!(Budget::parse("3,4").is_err());
    }
}
