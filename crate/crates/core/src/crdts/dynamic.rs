//! Runtime-typed lattice values, selected by a type tag. Used by the CLI
//! `decompose` command and anywhere the concrete type is only known from
//! input.

use crate::lattice::{decompose, delta, Canonical, Lattice, LatticeError};

use super::{GCounter, GMap, GSet, LexPair, LinearSum, Max, MaxSet, PNCounter, Pair, Point};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    GCounter(GCounter),
    GSet(GSet<String>),
    PNCounter(PNCounter),
    GMap(GMap<String, GSet<String>>),
    MaxSet(MaxSet<Point>),
    Nat(Max<u64>),
    Lex(LexPair<Max<u64>, GSet<String>>),
    Pair(Pair<GSet<String>, GCounter>),
    Sum(LinearSum<GSet<String>, Max<u64>>),
}

pub const TYPE_TAGS: &[&str] = &[
    "gcounter", "gset", "pncounter", "gmap", "maxset", "nat", "lex", "pair", "sum",
];

macro_rules! each {
    ($v:expr, $x:ident => $body:expr) => {
        match $v {
            Value::GCounter($x) => $body,
            Value::GSet($x) => $body,
            Value::PNCounter($x) => $body,
            Value::GMap($x) => $body,
            Value::MaxSet($x) => $body,
            Value::Nat($x) => $body,
            Value::Lex($x) => $body,
            Value::Pair($x) => $body,
            Value::Sum($x) => $body,
        }
    };
}

macro_rules! zip {
    ($a:expr, $b:expr, ($x:ident, $y:ident) => $body:expr) => {
        match ($a, $b) {
            (Value::GCounter($x), Value::GCounter($y)) => Ok($body),
            (Value::GSet($x), Value::GSet($y)) => Ok($body),
            (Value::PNCounter($x), Value::PNCounter($y)) => Ok($body),
            (Value::GMap($x), Value::GMap($y)) => Ok($body),
            (Value::MaxSet($x), Value::MaxSet($y)) => Ok($body),
            (Value::Nat($x), Value::Nat($y)) => Ok($body),
            (Value::Lex($x), Value::Lex($y)) => Ok($body),
            (Value::Pair($x), Value::Pair($y)) => Ok($body),
            (Value::Sum($x), Value::Sum($y)) => Ok($body),
            (a, b) => Err(LatticeError::TypeMismatch {
                left: a.type_name(),
                right: b.type_name(),
            }),
        }
    };
}

impl Value {
    /// Parses `text` under the encoding for `tag`. Set- and map-like types
    /// accept their contents without the surrounding braces, so `A:5,B:7`
    /// and `{A:5,B:7}` are equivalent for `gcounter`.
    pub fn parse(tag: &str, text: &str) -> Result<Value, LatticeError> {
        let text = text.trim();
        let braced = |s: &str| {
            if s.starts_with('{') {
                s.to_string()
            } else {
                format!("{{{s}}}")
            }
        };
        Ok(match tag {
            "gcounter" => Value::GCounter(GCounter::from_canonical(&braced(text))?),
            "gset" => Value::GSet(GSet::from_canonical(&braced(text))?),
            "pncounter" => Value::PNCounter(PNCounter::from_canonical(&braced(text))?),
            "gmap" => Value::GMap(GMap::from_canonical(&braced(text))?),
            "maxset" => Value::MaxSet(MaxSet::from_canonical(&braced(text))?),
            "nat" => Value::Nat(Max::from_canonical(text)?),
            "lex" => Value::Lex(LexPair::from_canonical(text)?),
            "pair" => Value::Pair(Pair::from_canonical(text)?),
            "sum" => Value::Sum(LinearSum::from_canonical(text)?),
            other => return Err(LatticeError::UnknownType(other.to_string())),
        })
    }

    pub fn bottom(tag: &str) -> Result<Value, LatticeError> {
        Ok(match tag {
            "gcounter" => Value::GCounter(Lattice::bottom()),
            "gset" => Value::GSet(Lattice::bottom()),
            "pncounter" => Value::PNCounter(Lattice::bottom()),
            "gmap" => Value::GMap(Lattice::bottom()),
            "maxset" => Value::MaxSet(Lattice::bottom()),
            "nat" => Value::Nat(Lattice::bottom()),
            "lex" => Value::Lex(Lattice::bottom()),
            "pair" => Value::Pair(Lattice::bottom()),
            "sum" => Value::Sum(Lattice::bottom()),
            other => return Err(LatticeError::UnknownType(other.to_string())),
        })
    }

    /// Builds a lexicographic pair. Only a natural-number chain is accepted
    /// as first component.
    pub fn lex(first: Value, second: Value) -> Result<Value, LatticeError> {
        match (first, second) {
            (Value::Nat(c), Value::GSet(s)) => Ok(Value::Lex(LexPair::new(c, s))),
            (Value::Nat(_), other) => Err(LatticeError::TypeMismatch {
                left: "gset",
                right: other.type_name(),
            }),
            (other, _) => Err(LatticeError::NonChainLexFirst(other.type_name())),
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::GCounter(_) => "gcounter",
            Value::GSet(_) => "gset",
            Value::PNCounter(_) => "pncounter",
            Value::GMap(_) => "gmap",
            Value::MaxSet(_) => "maxset",
            Value::Nat(_) => "nat",
            Value::Lex(_) => "lex",
            Value::Pair(_) => "pair",
            Value::Sum(_) => "sum",
        }
    }

    pub fn encode(&self) -> String {
        each!(self, x => x.to_canonical())
    }

    pub fn is_bottom(&self) -> bool {
        each!(self, x => x.is_bottom())
    }

    pub fn weight(&self) -> usize {
        each!(self, x => x.weight())
    }

    pub fn try_join(&self, other: &Value) -> Result<Value, LatticeError> {
        zip!(self, other, (a, b) => Self::wrap_like(self, a.join(b)))?
    }

    pub fn try_leq(&self, other: &Value) -> Result<bool, LatticeError> {
        zip!(self, other, (a, b) => a.leq(b))
    }

    pub fn try_delta(&self, other: &Value) -> Result<Value, LatticeError> {
        zip!(self, other, (a, b) => Self::wrap_like(self, delta(a, b)))?
    }

    /// Members of the decomposition in canonical order.
    pub fn decompose(&self) -> Vec<Value> {
        each!(self, x => decompose(x)
            .into_vec()
            .into_iter()
            .map(|m| Self::wrap_like(self, m).expect("same variant"))
            .collect())
    }

    fn wrap_like<T: Lattice + 'static>(like: &Value, x: T) -> Result<Value, LatticeError> {
        let any: Box<dyn std::any::Any> = Box::new(x);
        let out = match like {
            Value::GCounter(_) => any.downcast().map(|b| Value::GCounter(*b)),
            Value::GSet(_) => any.downcast().map(|b| Value::GSet(*b)),
            Value::PNCounter(_) => any.downcast().map(|b| Value::PNCounter(*b)),
            Value::GMap(_) => any.downcast().map(|b| Value::GMap(*b)),
            Value::MaxSet(_) => any.downcast().map(|b| Value::MaxSet(*b)),
            Value::Nat(_) => any.downcast().map(|b| Value::Nat(*b)),
            Value::Lex(_) => any.downcast().map(|b| Value::Lex(*b)),
            Value::Pair(_) => any.downcast().map(|b| Value::Pair(*b)),
            Value::Sum(_) => any.downcast().map(|b| Value::Sum(*b)),
        };
        out.map_err(|_| LatticeError::TypeMismatch {
            left: like.type_name(),
            right: std::any::type_name::<T>(),
        })
    }
}
