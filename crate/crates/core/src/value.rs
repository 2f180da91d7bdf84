//! Dynamic cell values.
//!
//! Every backend names its cells with the same small value language, so that
//! certification, reports, and golden tests can treat cells of a thin
//! predicate structure, a tabular structure, a Chu band, or a monad normal
//! form uniformly. Values are totally ordered; every enumeration in the
//! library is sorted by this order, which is what makes reports and
//! certificates byte-deterministic.

use std::fmt;
use std::sync::Arc;

/// A cell name: an atom, an integer, a sequence, or a tagged constructor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum V {
    Sym(Arc<str>),
    Int(i64),
    Seq(Vec<V>),
    Tag(Arc<str>, Vec<V>),
}

impl V {
    pub fn sym(s: &str) -> V {
        V::Sym(Arc::from(s))
    }

    pub fn tag(t: &str, args: Vec<V>) -> V {
        V::Tag(Arc::from(t), args)
    }

    pub fn seq(items: Vec<V>) -> V {
        V::Seq(items)
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            V::Int(k) => Some(*k),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&[V]> {
        match self {
            V::Seq(items) => Some(items),
            _ => None,
        }
    }

    /// Matches `Tag(name, args)` and returns the arguments.
    pub fn as_tag(&self, name: &str) -> Option<&[V]> {
        match self {
            V::Tag(t, args) if &**t == name => Some(args),
            _ => None,
        }
    }
}

impl fmt::Display for V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            V::Sym(s) => write!(f, "{s}"),
            V::Int(k) => write!(f, "{k}"),
            V::Seq(items) => {
                write!(f, "[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            V::Tag(t, args) => {
                write!(f, "{t}(")?;
                for (i, x) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for V {
    fn from(k: i64) -> V {
        V::Int(k)
    }
}

impl From<&str> for V {
    fn from(s: &str) -> V {
        V::sym(s)
    }
}

/// Renders a boundary row like `(a,b)` for reports.
pub fn row(cells: &[V]) -> String {
    let mut out = String::from("(");
    for (i, c) in cells.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&c.to_string());
    }
    out.push(')');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_total_and_stable() {
        let mut xs = vec![
            V::tag("b", vec![V::Int(1)]),
            V::sym("a"),
            V::Int(3),
            V::seq(vec![V::Int(0)]),
            V::Int(-1),
        ];
        xs.sort();
        let again = {
            let mut ys = xs.clone();
            ys.sort();
            ys
        };
        assert_eq!(xs, again);
    }

    #[test]
    fn display_round_trips_structure() {
        let v = V::tag("m2", vec![V::seq(vec![V::Int(1), V::Int(0)]), V::sym("p")]);
        assert_eq!(v.to_string(), "m2([1,0],p)");
    }
}
