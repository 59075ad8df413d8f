//! Canonical text encoding of lattice values.
//!
//! The format is deterministic (members sorted, no whitespace) and
//! round-trips through [`Canonical::from_canonical`]. Examples:
//!
//! | type       | encoding            |
//! |------------|---------------------|
//! | GSet       | `{a,b,c}`           |
//! | GCounter   | `{A:5,B:7}`         |
//! | PNCounter  | `{A:2/3,B:5/5}`     |
//! | GMap       | `{k1={a},k2={b,c}}` |
//! | Pair       | `({a},{A:2})`       |
//! | LexPair    | `<3,{a,b}>`         |
//! | LinearSum  | `L({a})`, `R(4)`    |
//! | MaxSet     | `{(1,2),(3,0)}`     |

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Canonical encoder/decoder. Implemented for lattices and for the atoms
/// stored inside them.
pub trait Canonical: Sized {
    fn encode(&self, out: &mut String);

    fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError>;

    fn to_canonical(&self) -> String {
        let mut out = String::new();
        self.encode(&mut out);
        out
    }

    /// Parses a complete string; trailing input is an error.
    fn from_canonical(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser::new(s);
        let v = Self::decode(&mut p)?;
        p.finish()?;
        Ok(v)
    }
}

/// Recursive-descent cursor over an encoded value. Whitespace between tokens
/// is ignored on input.
pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    pub fn error(&self, msg: impl fmt::Display) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Consumes `c` if it is next.
    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    /// A bare token: letters, digits, `_`, `.` and `-`.
    pub fn atom(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '-'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected an atom"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    /// Parses `open item (, item)* close`, allowing an empty list.
    pub fn list<T>(
        &mut self,
        open: char,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }
}

/// Writes `open a,b,c close` using `item` for each element.
pub fn write_list<'a, T: 'a>(
    out: &mut String,
    open: char,
    close: char,
    items: impl IntoIterator<Item = &'a T>,
    mut item: impl FnMut(&T, &mut String),
) {
    out.push(open);
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        item(x, out);
    }
    out.push(close);
}

macro_rules! canonical_via_fromstr {
    ($($t:ty),*) => {$(
        impl Canonical for $t {
            fn encode(&self, out: &mut String) {
                out.push_str(&self.to_string());
            }

            fn decode(p: &mut Parser<'_>) -> Result<Self, ParseError> {
                let atom = p.atom()?;
                atom.parse()
                    .map_err(|_| p.error(format!("invalid {}: `{atom}`", stringify!($t))))
            }
        }
    )*};
}

canonical_via_fromstr!(u8, u16, u32, u64, usize, bool, String);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_parsing() {
        let mut p = Parser::new(" { a , b-1 ,c.2 } ");
        let items = p.list('{', '}', |p| p.atom().map(str::to_string)).unwrap();
        assert_eq!(items, ["a", "b-1", "c.2"]);
        p.finish().unwrap();
    }

    #[test]
    fn empty_list() {
        let mut p = Parser::new("{}");
        let items = p.list('{', '}', |p| p.atom().map(str::to_string)).unwrap();
        assert!(items.is_empty());
    }

    #[test]
    fn errors_carry_position() {
        let err = u64::from_canonical("12x!").unwrap_err();
        assert_eq!(err.pos, 3);
        let err = u64::from_canonical("abc").unwrap_err();
        assert!(err.msg.contains("invalid u64"));
    }
}
