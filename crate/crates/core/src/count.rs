use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative count, or `Inf` for "no path exists".
///
/// `Inf` orders above every finite value. Serialized as a JSON integer, with
/// `null` standing for `Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedCount {
    Finite(u64),
    Inf,
}

pub use ExtendedCount::{Finite, Inf};

impl ExtendedCount {
    pub const ZERO: ExtendedCount = Finite(0);
    pub const ONE: ExtendedCount = Finite(1);

    pub fn is_zero(self) -> bool {
        self == Finite(0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    /// The binarization rule: 1 iff `0 < x < Inf`.
    pub fn is_positive_finite(self) -> bool {
        matches!(self, Finite(v) if v > 0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(v) => Some(v),
            Inf => None,
        }
    }
}

impl Default for ExtendedCount {
    fn default() -> Self {
        Finite(0)
    }
}

impl From<u64> for ExtendedCount {
    fn from(v: u64) -> Self {
        Finite(v)
    }
}

impl PartialOrd for ExtendedCount {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedCount {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Inf) => Ordering::Less,
            (Inf, Finite(_)) => Ordering::Greater,
            (Inf, Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(v) => write!(f, "{v}"),
            Inf => f.write_str("INF"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseCountError(pub String);

impl fmt::Display for ParseCountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid count {:?}: expected a nonnegative integer or INF", self.0)
    }
}

impl std::error::Error for ParseCountError {}

impl FromStr for ExtendedCount {
    type Err = ParseCountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "INF" {
            return Ok(Inf);
        }
        s.parse::<u64>()
            .map(Finite)
            .map_err(|_| ParseCountError(s.to_string()))
    }
}

impl Serialize for ExtendedCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(v) => serializer.serialize_u64(*v),
            Inf => serializer.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Option::<u64>::deserialize(deserializer)?.map_or(Inf, Finite))
    }
}
