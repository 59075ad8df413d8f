use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lattice::{Canonical, ParseError, Parser};

/// Replica identifier. Displayed as spreadsheet-style letters: 0 → `A`,
/// 25 → `Z`, 26 → `AA`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ReplicaId(pub u32);

impl ReplicaId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ReplicaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut n = self.0 as u64 + 1;
        let mut buf = Vec::new();
        while n > 0 {
            n -= 1;
            buf.push(b'A' + (n % 26) as u8);
            n /= 26;
        }
        buf.reverse();
        f.write_str(std::str::from_utf8(&buf).expect("ascii"))
    }
}

impl FromStr for ReplicaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_uppercase()) {
            return Err(format!("invalid replica id `{s}`"));
        }
        let mut n: u64 = 0;
        for b in s.bytes() {
            n = n * 26 + u64::from(b - b'A') + 1;
            if n > u64::from(u32::MAX) + 1 {
                return Err(format!("replica id `{s}` out of range"));
            }
        }
        Ok(ReplicaId((n - 1) as u32))
    }
}

impl Canonical for ReplicaId {
    fn encode(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let atom = p.atom()?;
        atom.parse().map_err(|e: String| p.error(e))
    }
}

/// Identifier of an independently replicated object.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ObjectId(pub u32);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}

/// Globally unique token `origin-seq`, used for set elements and register
/// writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub origin: u32,
    pub seq: u32,
}

impl Token {
    pub fn new(origin: u32, seq: u32) -> Self {
        Token { origin, seq }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.origin, self.seq)
    }
}

impl FromStr for Token {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (o, q) = s
            .split_once('-')
            .ok_or_else(|| format!("invalid token `{s}`"))?;
        Ok(Token {
            origin: o.parse().map_err(|_| format!("invalid token `{s}`"))?,
            seq: q.parse().map_err(|_| format!("invalid token `{s}`"))?,
        })
    }
}

impl Canonical for Token {
    fn encode(&self, out: &mut String) {
        out.push_str(&self.to_string());
    }

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
        let atom = p.atom()?;
        atom.parse().map_err(|e: String| p.error(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replica_letters() {
        assert_eq!(ReplicaId(0).to_string(), "A");
        assert_eq!(ReplicaId(3).to_string(), "D");
        assert_eq!(ReplicaId(25).to_string(), "Z");
        assert_eq!(ReplicaId(26).to_string(), "AA");
        assert_eq!(ReplicaId(27).to_string(), "AB");
        for i in [0, 1, 25, 26, 51, 52, 701, 702, 123_456] {
            assert_eq!(ReplicaId(i).to_string().parse::<ReplicaId>(), Ok(ReplicaId(i)));
        }
        assert!("a".parse::<ReplicaId>().is_err());
    }

    #[test]
    fn token_roundtrip() {
        let t = Token::new(3, 5);
        assert_eq!(t.to_string(), "3-5");
        assert_eq!("3-5".parse::<Token>(), Ok(t));
        assert!("35".parse::<Token>().is_err());
    }
}
