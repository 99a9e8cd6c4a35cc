//! Text codec for Gauss diagrams.
//!
//! Grammar (UTF-8, one diagram per string):
//!
//! ```text
//! diagram := ε | token ("," token)*
//! token   := ("O" | "U") label sign
//! label   := decimal integer >= 1
//! sign    := "+" | "-"
//! ```
//!
//! `O` marks an over-pass (arrow [`Role::Tail`]), `U` an under-pass (arrow
//! [`Role::Head`]). Each label appears exactly twice, once `O` and once `U`,
//! with the same sign both times. Whitespace around commas is ignored.
//!
//! [`GaussDiagram`]'s `Display` writes the stored sequence verbatim;
//! [`to_gauss_code`] writes the canonical rotation with first-occurrence
//! labels, so equal keys give equal canonical codes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{DiagramError, GaussDiagram, Role, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaussCodeError {
    #[error("syntax error at byte {pos}: {expected}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("chord label must be >= 1 at byte {pos}")]
    ZeroLabel { pos: usize },
    #[error("chord {label} sign mismatch at byte {pos}")]
    SignMismatch { label: u32, pos: usize },
    #[error("chord {label} has a duplicate {}-pass at byte {pos}", if *role == Role::Tail { "over" } else { "under" })]
    DuplicateRole { label: u32, role: Role, pos: usize },
    #[error("chord {label} appears more than twice at byte {pos}")]
    TooManyEndpoints { label: u32, pos: usize },
    #[error("chord {label} appears only once")]
    Unpaired { label: u32 },
    #[error(transparent)]
    Invalid(#[from] DiagramError),
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }
}

/// Parses a Gauss code, returning the validated, normalized diagram.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram, GaussCodeError> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    cur.skip_ws();
    if cur.peek().is_none() {
        return Ok(GaussDiagram::empty());
    }

    let mut endpoints: Vec<(u32, Role)> = Vec::new();
    let mut signs: BTreeMap<u32, Sign> = BTreeMap::new();
    // label -> (endpoint count, roles seen)
    let mut seen: BTreeMap<u32, (usize, Vec<Role>)> = BTreeMap::new();

    loop {
        cur.skip_ws();
        let token_pos = cur.pos;
        let role = match cur.peek() {
            Some(b'O') => Role::Tail,
            Some(b'U') => Role::Head,
            _ => {
                return Err(GaussCodeError::Syntax {
                    pos: cur.pos,
                    expected: "expected 'O' or 'U'",
                })
            }
        };
        cur.pos += 1;

        let digits_start = cur.pos;
        while cur.peek().is_some_and(|b| b.is_ascii_digit()) {
            cur.pos += 1;
        }
        if cur.pos == digits_start {
            return Err(GaussCodeError::Syntax {
                pos: cur.pos,
                expected: "expected a decimal chord label",
            });
        }
        let label: u32 = text[digits_start..cur.pos].parse().map_err(|_| {
            GaussCodeError::Syntax {
                pos: digits_start,
                expected: "chord label out of range",
            }
        })?;
        if label == 0 {
            return Err(GaussCodeError::ZeroLabel { pos: digits_start });
        }

        let sign = match cur.peek() {
            Some(b'+') => Sign::Plus,
            Some(b'-') => Sign::Minus,
            _ => {
                return Err(GaussCodeError::Syntax {
                    pos: cur.pos,
                    expected: "expected '+' or '-'",
                })
            }
        };
        cur.pos += 1;

        let entry = seen.entry(label).or_insert((0, Vec::new()));
        entry.0 += 1;
        if entry.0 > 2 {
            return Err(GaussCodeError::TooManyEndpoints {
                label,
                pos: token_pos,
            });
        }
        if entry.1.contains(&role) {
            return Err(GaussCodeError::DuplicateRole {
                label,
                role,
                pos: token_pos,
            });
        }
        entry.1.push(role);
        match signs.get(&label) {
            None => {
                signs.insert(label, sign);
            }
            Some(&prev) if prev != sign => {
                return Err(GaussCodeError::SignMismatch {
                    label,
                    pos: token_pos,
                });
            }
            Some(_) => {}
        }
        endpoints.push((label, role));

        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b',') => {
                cur.pos += 1;
            }
            Some(_) => {
                return Err(GaussCodeError::Syntax {
                    pos: cur.pos,
                    expected: "expected ',' or end of input",
                })
            }
        }
    }

    if let Some((&label, _)) = seen.iter().find(|(_, (count, _))| *count != 2) {
        return Err(GaussCodeError::Unpaired { label });
    }

    Ok(GaussDiagram::new(&endpoints, &signs)?)
}

fn write_sequence(d: &GaussDiagram, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, e) in d.endpoints().iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        let letter = match e.role {
            Role::Head => 'U',
            Role::Tail => 'O',
        };
        write!(f, "{letter}{}{}", e.chord, d.sign(e.chord).expect("valid chord"))?;
    }
    Ok(())
}

impl fmt::Display for GaussDiagram {
    /// The stored sequence, verbatim. Empty diagrams print as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sequence(self, f)
    }
}

impl FromStr for GaussDiagram {
    type Err = GaussCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss_code(s)
    }
}

/// Serializes starting at the canonical rotation with canonical labels.
pub fn to_gauss_code(d: &GaussDiagram) -> String {
    d.canonical_key().to_string()
}

impl serde::Serialize for GaussDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl serde::Serialize for crate::diagram::CanonicalKey {
    /// Keys serialize as the canonical Gauss code.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for crate::diagram::CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let diagram = parse_gauss_code(&text).map_err(serde::de::Error::custom)?;
        Ok(diagram.canonical_key())
    }
}

impl<'de> serde::Deserialize<'de> for GaussDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_gauss_code(&text).map_err(serde::de::Error::custom)
    }
}
