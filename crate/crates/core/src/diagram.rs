//! The Gauss-diagram data model.
//!
//! A Gauss diagram is an oriented circle carrying `2n` chord endpoints; each
//! chord joins the two preimages of one crossing and is oriented from the
//! over-passing branch (its [`Role::Tail`]) to the under-passing branch (its
//! [`Role::Head`]), with a [`Sign`] per chord. The endpoint sequence is read
//! in the positive (counterclockwise) direction of the circle.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * chord ids are `1..=n`, assigned by first occurrence along the sequence
//!   whenever a diagram is (re)normalized;
//! * two diagrams describe the same based-free diagram exactly when their
//!   [`CanonicalKey`]s are equal — keys quotient by rotation and relabeling,
//!   never by reflection (the circle orientation is part of the data);
//! * the empty diagram is legal and stands for the unknot.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Chord label. `1..=n` in a normalized diagram.
pub type ChordId = u32;

/// Crossing sign attached to a chord.
///
/// `Plus` orders before `Minus`; canonical keys depend on this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn negated(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl serde::Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl<'de> serde::Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("bad sign {other:?}"))),
        }
    }
}

/// Which end of a chord an endpoint is.
///
/// `Head` is the under-passing preimage (the arrow head), `Tail` the
/// over-passing one. `Head` orders before `Tail`; canonical keys depend on
/// this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Head,
    Tail,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
        }
    }
}

/// One chord end on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("chord {0} appears {1} time(s), expected exactly 2")]
    BadEndpointCount(ChordId, usize),
    #[error("chord {0} has two heads")]
    TwoHeads(ChordId),
    #[error("chord {0} has two tails")]
    TwoTails(ChordId),
    #[error("endpoint references chord {0} which has no sign")]
    MissingSign(ChordId),
    #[error("sign given for chord {0} which has no endpoints")]
    UnusedSign(ChordId),
    #[error("chord {0} is not present in the diagram")]
    MissingChord(ChordId),
    #[error("expected two distinct chords, got {0} twice")]
    SameChord(ChordId),
}

/// A validated Gauss diagram: cyclic endpoint sequence plus one sign per chord.
///
/// Values are immutable; every operation returns a fresh diagram. Equality is
/// structural (same sequence, same labels); use [`GaussDiagram::canonical_key`]
/// for rotation- and relabeling-insensitive comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    endpoints: Vec<Endpoint>,
    /// Indexed by `chord - 1`.
    signs: Vec<Sign>,
}

impl GaussDiagram {
    /// The trivial diagram with no chords (the unknot).
    pub fn empty() -> Self {
        GaussDiagram {
            endpoints: Vec::new(),
            signs: Vec::new(),
        }
    }

    /// Validates raw endpoint data and returns the normalized diagram, with
    /// chords renumbered `1..=n` by first occurrence.
    pub fn new(
        endpoints: &[(ChordId, Role)],
        signs: &BTreeMap<ChordId, Sign>,
    ) -> Result<Self, DiagramError> {
        // Count occurrences and check the head/tail pairing per raw id.
        let mut seen: BTreeMap<ChordId, (usize, Option<Role>)> = BTreeMap::new();
        for &(id, role) in endpoints {
            let entry = seen.entry(id).or_insert((0, None));
            entry.0 += 1;
            match entry.1 {
                None => entry.1 = Some(role),
                Some(prev) if prev == role && entry.0 == 2 => {
                    return Err(match role {
                        Role::Head => DiagramError::TwoHeads(id),
                        Role::Tail => DiagramError::TwoTails(id),
                    });
                }
                Some(_) => {}
            }
        }
        for (&id, &(count, _)) in &seen {
            if count != 2 {
                return Err(DiagramError::BadEndpointCount(id, count));
            }
            if !signs.contains_key(&id) {
                return Err(DiagramError::MissingSign(id));
            }
        }
        for &id in signs.keys() {
            if !seen.contains_key(&id) {
                return Err(DiagramError::UnusedSign(id));
            }
        }

        // Renumber by first occurrence.
        let mut rename: BTreeMap<ChordId, ChordId> = BTreeMap::new();
        let mut normalized = Vec::with_capacity(endpoints.len());
        let mut new_signs = Vec::with_capacity(seen.len());
        for &(id, role) in endpoints {
            let next = rename.len() as ChordId + 1;
            let new_id = *rename.entry(id).or_insert(next);
            if new_id == next {
                new_signs.push(signs[&id]);
            }
            normalized.push(Endpoint {
                chord: new_id,
                role,
            });
        }
        Ok(GaussDiagram {
            endpoints: normalized,
            signs: new_signs,
        })
    }

    /// Builds a diagram from already-normalized parts without re-validation.
    ///
    /// Callers must guarantee the `GaussDiagram` invariants; used by move
    /// application where the edits preserve them by construction.
    pub(crate) fn from_parts_unchecked(endpoints: Vec<Endpoint>, signs: Vec<Sign>) -> Self {
        debug_assert_eq!(endpoints.len(), 2 * signs.len());
        GaussDiagram { endpoints, signs }
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn endpoint_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    /// Chord ids, `1..=n`.
    pub fn chords(&self) -> impl Iterator<Item = ChordId> + '_ {
        1..=self.signs.len() as ChordId
    }

    pub fn contains_chord(&self, chord: ChordId) -> bool {
        chord >= 1 && (chord as usize) <= self.signs.len()
    }

    pub fn sign(&self, chord: ChordId) -> Result<Sign, DiagramError> {
        if !self.contains_chord(chord) {
            return Err(DiagramError::MissingChord(chord));
        }
        Ok(self.signs[chord as usize - 1])
    }

    pub(crate) fn sign_unchecked(&self, chord: ChordId) -> Sign {
        self.signs[chord as usize - 1]
    }

    /// Position of the chord's head in the endpoint sequence.
    pub fn head_position(&self, chord: ChordId) -> Option<usize> {
        self.position_of(chord, Role::Head)
    }

    /// Position of the chord's tail in the endpoint sequence.
    pub fn tail_position(&self, chord: ChordId) -> Option<usize> {
        self.position_of(chord, Role::Tail)
    }

    fn position_of(&self, chord: ChordId, role: Role) -> Option<usize> {
        self.endpoints
            .iter()
            .position(|e| e.chord == chord && e.role == role)
    }

    /// The diagram read from position `k` onward. Chord labels are untouched.
    pub fn rotated(&self, k: usize) -> Self {
        if self.endpoints.is_empty() {
            return self.clone();
        }
        let len = self.endpoints.len();
        let k = k % len;
        let mut endpoints = Vec::with_capacity(len);
        endpoints.extend_from_slice(&self.endpoints[k..]);
        endpoints.extend_from_slice(&self.endpoints[..k]);
        GaussDiagram {
            endpoints,
            signs: self.signs.clone(),
        }
    }

    /// True iff the endpoints of `c` and `d` alternate around the circle.
    pub fn chords_link(&self, c: ChordId, d: ChordId) -> Result<bool, DiagramError> {
        if c == d {
            return Err(DiagramError::SameChord(c));
        }
        if !self.contains_chord(c) {
            return Err(DiagramError::MissingChord(c));
        }
        if !self.contains_chord(d) {
            return Err(DiagramError::MissingChord(d));
        }
        Ok(self.links_unchecked(c, d))
    }

    pub(crate) fn links_unchecked(&self, c: ChordId, d: ChordId) -> bool {
        let h = self.head_position(c).expect("chord present");
        let t = self.tail_position(c).expect("chord present");
        let dh = self.head_position(d).expect("chord present");
        let dt = self.tail_position(d).expect("chord present");
        self.strictly_between(h, t, dh) != self.strictly_between(h, t, dt)
    }

    /// Whether `p` lies strictly inside the arc from `from` to `to`, walking
    /// in the positive direction.
    pub(crate) fn strictly_between(&self, from: usize, to: usize, p: usize) -> bool {
        let len = self.endpoints.len();
        let rel = |x: usize| (x + len - from) % len;
        rel(p) > 0 && rel(p) < rel(to)
    }

    /// The chord with its direction reversed and sign negated; everything else
    /// untouched. Chord labels are preserved.
    pub(crate) fn flip_chord(&self, chord: ChordId) -> Self {
        let mut endpoints = self.endpoints.clone();
        for e in endpoints.iter_mut() {
            if e.chord == chord {
                e.role = e.role.opposite();
            }
        }
        let mut signs = self.signs.clone();
        signs[chord as usize - 1] = signs[chord as usize - 1].negated();
        GaussDiagram { endpoints, signs }
    }

    /// Re-applies first-occurrence numbering to the current sequence.
    pub(crate) fn renormalized(&self) -> Self {
        let mut rename: BTreeMap<ChordId, ChordId> = BTreeMap::new();
        let mut endpoints = Vec::with_capacity(self.endpoints.len());
        let mut signs = Vec::with_capacity(self.signs.len());
        for e in &self.endpoints {
            let next = rename.len() as ChordId + 1;
            let new_id = *rename.entry(e.chord).or_insert(next);
            if new_id == next {
                signs.push(self.sign_unchecked(e.chord));
            }
            endpoints.push(Endpoint {
                chord: new_id,
                role: e.role,
            });
        }
        GaussDiagram { endpoints, signs }
    }

    fn key_tokens_from(&self, start: usize) -> Vec<u32> {
        let len = self.endpoints.len();
        let mut rename: BTreeMap<ChordId, u32> = BTreeMap::new();
        let mut tokens = Vec::with_capacity(len);
        for i in 0..len {
            let e = &self.endpoints[(start + i) % len];
            let next = rename.len() as u32 + 1;
            let id = *rename.entry(e.chord).or_insert(next);
            tokens.push(KeyToken::encode(id, e.role, self.sign_unchecked(e.chord)));
        }
        tokens
    }

    /// The lexicographically minimal relabeled rotation of the token stream.
    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(Arc::from(self.key_tokens_from(self.canonical_rotation())))
    }

    /// The rotation offset at which the canonical key starts.
    pub(crate) fn canonical_rotation(&self) -> usize {
        let len = self.endpoints.len();
        let mut best = 0usize;
        let mut best_tokens: Option<Vec<u32>> = None;
        for start in 0..len {
            let tokens = self.key_tokens_from(start);
            if best_tokens.as_ref().is_none_or(|b| tokens < *b) {
                best = start;
                best_tokens = Some(tokens);
            }
        }
        best
    }

    /// The canonical representative: canonical rotation, relabeled `1..=n`.
    pub fn canonical_form(&self) -> GaussDiagram {
        self.rotated(self.canonical_rotation()).renormalized()
    }

    /// Canonical representative and its key in one pass.
    pub fn canonical_pair(&self) -> (GaussDiagram, CanonicalKey) {
        let rotation = self.canonical_rotation();
        let form = self.rotated(rotation).renormalized();
        let key = CanonicalKey(Arc::from(form.key_tokens_from(0)));
        (form, key)
    }
}

/// Packed `(chord, role, sign)` token of a canonical key.
///
/// Encoding: `chord << 2 | role << 1 | sign` with `Head = 0 < Tail = 1` and
/// `Plus = 0 < Minus = 1`, so the numeric order of packed tokens equals the
/// declared token order and keys compare lexicographically as `u32` slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeyToken(u32);

impl KeyToken {
    fn encode(chord: u32, role: Role, sign: Sign) -> u32 {
        (chord << 2) | ((role == Role::Tail) as u32) << 1 | (sign == Sign::Minus) as u32
    }

    pub fn chord(self) -> ChordId {
        self.0 >> 2
    }

    pub fn role(self) -> Role {
        if self.0 & 0b10 == 0 {
            Role::Head
        } else {
            Role::Tail
        }
    }

    pub fn sign(self) -> Sign {
        if self.0 & 0b01 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Rotation- and relabeling-free identity of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Arc<[u32]>);

impl CanonicalKey {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = KeyToken> + '_ {
        self.0.iter().map(|&t| KeyToken(t))
    }
}

impl fmt::Display for CanonicalKey {
    /// Keys print as the Gauss code of the canonical representative.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let letter = match t.role() {
                Role::Head => 'U',
                Role::Tail => 'O',
            };
            write!(f, "{letter}{}{}", t.chord(), t.sign())?;
        }
        Ok(())
    }
}
