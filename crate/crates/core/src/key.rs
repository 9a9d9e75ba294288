use std::fmt;

use serde::{Serialize, Serializer};

/// Opaque, totally ordered row/column key.
///
/// Integer keys sort before string keys; within a kind the natural order applies.
/// Matrices are arrays whose key sets are `Int(1..=N)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Int(i64),
    Str(String),
}

impl Key {
    /// The least key in the total order.
    pub const MIN: Key = Key::Int(i64::MIN);

    /// Integer-looking tokens become `Int`, everything else `Str`.
    pub fn parse(token: &str) -> Key {
        match token.parse::<i64>() {
            Ok(i) => Key::Int(i),
            Err(_) => Key::Str(token.to_owned()),
        }
    }

    pub(crate) fn write_bytes(&self, out: &mut Vec<u8>) {
        match self {
            Key::Int(i) => {
                out.push(0);
                out.extend_from_slice(&i.to_le_bytes());
            }
            Key::Str(s) => {
                out.push(1);
                out.extend_from_slice(&(s.len() as u64).to_le_bytes());
                out.extend_from_slice(s.as_bytes());
            }
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(i) => write!(f, "{i}"),
            Key::Str(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Key {
    fn from(i: i64) -> Self {
        Key::Int(i)
    }
}

impl From<i32> for Key {
    fn from(i: i32) -> Self {
        Key::Int(i64::from(i))
    }
}

impl From<usize> for Key {
    fn from(i: usize) -> Self {
        Key::Int(i as i64)
    }
}

impl From<&str> for Key {
    fn from(s: &str) -> Self {
        Key::Str(s.to_owned())
    }
}

impl From<String> for Key {
    fn from(s: String) -> Self {
        Key::Str(s)
    }
}

/// Keys serialize as their display string so JSON output is uniform.
impl Serialize for Key {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_distinguishes_ints() {
        assert_eq!(Key::parse("42"), Key::Int(42));
        assert_eq!(Key::parse("-3"), Key::Int(-3));
        assert_eq!(Key::parse("10.0.0.1"), Key::Str("10.0.0.1".into()));
    }

    #[test]
    fn ints_sort_before_strings() {
        let mut keys = vec![Key::from("a"), Key::from(2), Key::from(1)];
        keys.sort();
        assert_eq!(keys, vec![Key::from(1), Key::from(2), Key::from("a")]);
    }
}
