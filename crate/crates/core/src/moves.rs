//! Atomic rewriting steps on Gauss diagrams: the flip move and the three
//! Reidemeister moves, plus exhaustive neighbor enumeration for search.
//!
//! Move encodings:
//!
//! * `flip` reverses one chord and negates its sign.
//! * `r1` inserts or deletes a chord whose endpoints are adjacent.
//! * `r2` inserts or deletes a pair of opposite-sign chords whose two heads
//!   are adjacent and whose two tails are adjacent. Both interleavings occur:
//!   [`R2Pattern::Linked`] (the chords cross) and [`R2Pattern::Nested`] (one
//!   spans the other). These are the configurations realizable by sliding one
//!   strand across another, which is why both polynomial invariants survive
//!   them.
//! * `r3` acts on six endpoints forming three blocks of two adjacent
//!   positions, one endpoint each of two distinct chords per block, and swaps
//!   the two endpoints inside every block at once. The set of legal
//!   `(role, sign)` decorations is the [`R3_LEGAL`] table, reconstructed by
//!   enumerating planar triangle configurations (three directed strands,
//!   pairwise crossing, with a consistent over/under order); the
//!   `r3_model` integration test regenerates the table from that model and
//!   pins it.
//!
//! All moves are pure: they return new diagrams. Flip and r3 preserve chord
//! labels; insertions and deletions renumber by first occurrence.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ChordId, DiagramError, GaussDiagram, Role, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("chord {0}'s endpoints are not adjacent")]
    NotAKink(ChordId),
    #[error("r2 pair must have opposite signs")]
    R2SignsEqual,
    #[error("r2 pair endpoints must form adjacent head and tail blocks")]
    R2BadBlocks,
    #[error("r2 insert blocks at distinct gaps must lead with the head block")]
    R2BadLead,
    #[error("r3 endpoints do not form three adjacent blocks anchored at {0}")]
    R3BadBlocks(usize),
    #[error("r3 chords do not match the blocks anchored at {0}")]
    R3ChordMismatch(usize),
    #[error("r3 configuration is not in the legal set")]
    R3NotLegal,
    #[error("gap {gap} out of range (diagram has {gaps} gaps)")]
    GapOutOfRange { gap: usize, gaps: usize },
}

/// Within-block role order for an r1 insertion, reading positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleOrder {
    HeadTail,
    TailHead,
}

/// Interleaving of an r2 pair: `Linked` chords cross, `Nested` do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R2Pattern {
    Linked,
    Nested,
}

/// One replayable rewriting step. Parameters refer to the diagram the move is
/// applied to; `Ord` gives the deterministic enumeration order (kind, then
/// parameters).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "move", content = "params")]
pub enum Move {
    #[serde(rename = "flip")]
    Flip { chord: ChordId },
    #[serde(rename = "r1_delete")]
    R1Delete { chord: ChordId },
    #[serde(rename = "r2_delete")]
    R2Delete { chord_a: ChordId, chord_b: ChordId },
    #[serde(rename = "r3")]
    R3 { chords: [ChordId; 3], anchor: usize },
    #[serde(rename = "r1_insert")]
    R1Insert {
        gap: usize,
        order: RoleOrder,
        sign: Sign,
    },
    #[serde(rename = "r2_insert")]
    R2Insert {
        head_gap: usize,
        tail_gap: usize,
        interleave: R2Pattern,
        /// Sign of the chord whose head comes first in the head block; the
        /// other chord gets the opposite sign.
        lead_sign: Sign,
        /// Only meaningful when both gaps coincide: whether the head block
        /// precedes the tail block there. Must be `true` otherwise.
        head_block_first: bool,
    },
}

impl Move {
    pub fn is_flip(&self) -> bool {
        matches!(self, Move::Flip { .. })
    }
}

/// Reverses chord `c` and negates its sign.
pub fn flip(d: &GaussDiagram, c: ChordId) -> Result<GaussDiagram, MoveError> {
    if !d.contains_chord(c) {
        return Err(DiagramError::MissingChord(c).into());
    }
    Ok(d.flip_chord(c))
}

fn adjacent(a: usize, b: usize, len: usize) -> bool {
    (a + 1) % len == b || (b + 1) % len == a
}

/// Removes an isolated kink: a chord whose two endpoints are adjacent.
pub fn r1_delete(d: &GaussDiagram, c: ChordId) -> Result<GaussDiagram, MoveError> {
    if !d.contains_chord(c) {
        return Err(DiagramError::MissingChord(c).into());
    }
    let h = d.head_position(c).expect("chord present");
    let t = d.tail_position(c).expect("chord present");
    if !adjacent(h, t, d.endpoint_count()) {
        return Err(MoveError::NotAKink(c));
    }
    Ok(without_chords(d, &[c]))
}

/// Inserts a kink at `gap` with the given role order and sign.
pub fn r1_insert(
    d: &GaussDiagram,
    gap: usize,
    order: RoleOrder,
    sign: Sign,
) -> Result<GaussDiagram, MoveError> {
    let gaps = gap_count(d);
    if gap >= gaps {
        return Err(MoveError::GapOutOfRange { gap, gaps });
    }
    let fresh = d.chord_count() as ChordId + 1;
    let block = match order {
        RoleOrder::HeadTail => [(fresh, Role::Head), (fresh, Role::Tail)],
        RoleOrder::TailHead => [(fresh, Role::Tail), (fresh, Role::Head)],
    };
    Ok(insert_blocks(d, &[(gap, &block)], &[(fresh, sign)]))
}

/// Cancels an r2 pair: opposite signs, heads mutually adjacent, tails
/// mutually adjacent.
pub fn r2_delete(d: &GaussDiagram, a: ChordId, b: ChordId) -> Result<GaussDiagram, MoveError> {
    if a == b {
        return Err(DiagramError::SameChord(a).into());
    }
    for c in [a, b] {
        if !d.contains_chord(c) {
            return Err(DiagramError::MissingChord(c).into());
        }
    }
    if d.sign_unchecked(a) != d.sign_unchecked(b).negated() {
        return Err(MoveError::R2SignsEqual);
    }
    let len = d.endpoint_count();
    let ha = d.head_position(a).expect("chord present");
    let hb = d.head_position(b).expect("chord present");
    let ta = d.tail_position(a).expect("chord present");
    let tb = d.tail_position(b).expect("chord present");
    if !adjacent(ha, hb, len) || !adjacent(ta, tb, len) {
        return Err(MoveError::R2BadBlocks);
    }
    Ok(without_chords(d, &[a, b]))
}

/// Inserts an r2 pair: the head block at `head_gap`, the tail block at
/// `tail_gap`. The chord whose head leads gets `lead_sign`, the other the
/// opposite sign; `interleave` picks the tail-block order.
pub fn r2_insert(
    d: &GaussDiagram,
    head_gap: usize,
    tail_gap: usize,
    interleave: R2Pattern,
    lead_sign: Sign,
    head_block_first: bool,
) -> Result<GaussDiagram, MoveError> {
    let gaps = gap_count(d);
    for gap in [head_gap, tail_gap] {
        if gap >= gaps {
            return Err(MoveError::GapOutOfRange { gap, gaps });
        }
    }
    if head_gap != tail_gap && !head_block_first {
        return Err(MoveError::R2BadLead);
    }
    let a = d.chord_count() as ChordId + 1;
    let b = a + 1;
    let head_block = [(a, Role::Head), (b, Role::Head)];
    let tail_block = match interleave {
        R2Pattern::Linked => [(a, Role::Tail), (b, Role::Tail)],
        R2Pattern::Nested => [(b, Role::Tail), (a, Role::Tail)],
    };
    let signs = [(a, lead_sign), (b, lead_sign.negated())];
    let result = if head_gap == tail_gap {
        let mut combined = Vec::with_capacity(4);
        if head_block_first {
            combined.extend(head_block);
            combined.extend(tail_block);
        } else {
            combined.extend(tail_block);
            combined.extend(head_block);
        }
        insert_blocks(d, &[(head_gap, &combined)], &signs)
    } else {
        insert_blocks(d, &[(head_gap, &head_block), (tail_gap, &tail_block)], &signs)
    };
    Ok(result)
}

/// Applies the triangle move: swaps the two endpoints inside each of the
/// three blocks of the configuration anchored at `anchor`. Signs, roles, and
/// labels are untouched; applying the same move again restores the diagram.
pub fn r3(
    d: &GaussDiagram,
    chords: [ChordId; 3],
    anchor: usize,
) -> Result<GaussDiagram, MoveError> {
    for c in chords {
        if !d.contains_chord(c) {
            return Err(DiagramError::MissingChord(c).into());
        }
    }
    if chords[0] == chords[1] || chords[1] == chords[2] || chords[0] == chords[2] {
        return Err(DiagramError::SameChord(chords[0]).into());
    }
    let blocks = r3_blocks(d, chords, anchor)?;
    if !r3_pattern_is_legal(d, &blocks) {
        return Err(MoveError::R3NotLegal);
    }
    let mut endpoints = d.endpoints().to_vec();
    for &[p, q] in &blocks {
        endpoints.swap(p, q);
    }
    let signs = d.chords().map(|c| d.sign_unchecked(c)).collect();
    Ok(GaussDiagram::from_parts_unchecked(endpoints, signs))
}

/// Finds the three blocks of an r3 configuration starting at `anchor`:
/// walking positively from `anchor`, the six endpoint positions of the three
/// chords must come as three runs of two adjacent positions.
fn r3_blocks(
    d: &GaussDiagram,
    chords: [ChordId; 3],
    anchor: usize,
) -> Result<[[usize; 2]; 3], MoveError> {
    let len = d.endpoint_count();
    let mut rels: Vec<usize> = Vec::with_capacity(6);
    for c in chords {
        for pos in [
            d.head_position(c).expect("chord present"),
            d.tail_position(c).expect("chord present"),
        ] {
            rels.push((pos + len - anchor) % len);
        }
    }
    rels.sort_unstable();
    if rels[0] != 0 || rels[1] != 1 || rels[3] != rels[2] + 1 || rels[5] != rels[4] + 1 {
        return Err(MoveError::R3BadBlocks(anchor));
    }
    let abs = |rel: usize| (anchor + rel) % len;
    let blocks = [
        [abs(rels[0]), abs(rels[1])],
        [abs(rels[2]), abs(rels[3])],
        [abs(rels[4]), abs(rels[5])],
    ];
    // Each block must hold endpoints of two distinct chords.
    for &[p, q] in &blocks {
        if d.endpoints()[p].chord == d.endpoints()[q].chord {
            return Err(MoveError::R3ChordMismatch(anchor));
        }
    }
    Ok(blocks)
}

/// Canonical local pattern of a candidate r3 configuration: the token stream
/// over the three blocks, minimized over the three block rotations with
/// chords renamed by first occurrence. Token encoding: `chord << 2 |
/// (role == Tail) << 1 | (sign == Minus)`.
fn r3_pattern(d: &GaussDiagram, blocks: &[[usize; 2]; 3]) -> [u8; 6] {
    let mut best = [u8::MAX; 6];
    for rot in 0..3 {
        let mut rename: [Option<ChordId>; 3] = [None; 3];
        let mut pattern = [0u8; 6];
        let mut idx = 0;
        for b in 0..3 {
            for &pos in &blocks[(rot + b) % 3] {
                let e = d.endpoints()[pos];
                let renamed = match rename.iter().position(|&r| r == Some(e.chord)) {
                    Some(i) => i,
                    None => {
                        let i = rename.iter().position(|r| r.is_none()).expect("three chords");
                        rename[i] = Some(e.chord);
                        i
                    }
                } as u8;
                pattern[idx] = (renamed << 2)
                    | (((e.role == Role::Tail) as u8) << 1)
                    | (d.sign_unchecked(e.chord) == Sign::Minus) as u8;
                idx += 1;
            }
        }
        if pattern < best {
            best = pattern;
        }
    }
    best
}

fn r3_pattern_is_legal(d: &GaussDiagram, blocks: &[[usize; 2]; 3]) -> bool {
    R3_LEGAL.binary_search(&r3_pattern(d, blocks)).is_ok()
}

fn gap_count(d: &GaussDiagram) -> usize {
    d.endpoint_count().max(1)
}

/// Rebuilds the diagram without the given chords, renumbering the rest.
fn without_chords(d: &GaussDiagram, remove: &[ChordId]) -> GaussDiagram {
    let raw: Vec<(ChordId, Role)> = d
        .endpoints()
        .iter()
        .filter(|e| !remove.contains(&e.chord))
        .map(|e| (e.chord, e.role))
        .collect();
    let signs = d
        .chords()
        .filter(|c| !remove.contains(c))
        .map(|c| (c, d.sign_unchecked(c)))
        .collect();
    GaussDiagram::new(&raw, &signs).expect("deletion preserves validity")
}

/// Rebuilds the diagram with endpoint blocks spliced in at the given gaps
/// (gap indices refer to the original sequence) and extra signs added.
fn insert_blocks(
    d: &GaussDiagram,
    blocks: &[(usize, &[(ChordId, Role)])],
    extra_signs: &[(ChordId, Sign)],
) -> GaussDiagram {
    let mut raw: Vec<(ChordId, Role)> = Vec::with_capacity(d.endpoint_count() + 4);
    for gap in 0..=d.endpoint_count() {
        for &(at, block) in blocks {
            if at == gap {
                raw.extend_from_slice(block);
            }
        }
        if gap < d.endpoint_count() {
            let e = d.endpoints()[gap];
            raw.push((e.chord, e.role));
        }
    }
    let mut signs: std::collections::BTreeMap<ChordId, Sign> =
        d.chords().map(|c| (c, d.sign_unchecked(c))).collect();
    signs.extend(extra_signs.iter().copied());
    GaussDiagram::new(&raw, &signs).expect("insertion preserves validity")
}

/// Applies a serialized move to a diagram.
pub fn apply_move(d: &GaussDiagram, mv: &Move) -> Result<GaussDiagram, MoveError> {
    match *mv {
        Move::Flip { chord } => flip(d, chord),
        Move::R1Delete { chord } => r1_delete(d, chord),
        Move::R2Delete { chord_a, chord_b } => r2_delete(d, chord_a, chord_b),
        Move::R3 { chords, anchor } => r3(d, chords, anchor),
        Move::R1Insert { gap, order, sign } => r1_insert(d, gap, order, sign),
        Move::R2Insert {
            head_gap,
            tail_gap,
            interleave,
            lead_sign,
            head_block_first,
        } => r2_insert(d, head_gap, tail_gap, interleave, lead_sign, head_block_first),
    }
}

/// Every legal move on `d` whose result stays within `max_chords` chords,
/// with its result, in deterministic (kind, parameters) order and free of
/// duplicate moves.
pub fn enumerate_moves(d: &GaussDiagram, max_chords: usize) -> Vec<(Move, GaussDiagram)> {
    assert!(
        max_chords >= d.chord_count(),
        "max_chords below current chord count"
    );
    let mut out: Vec<(Move, GaussDiagram)> = Vec::new();
    let n = d.chord_count();
    let len = d.endpoint_count();

    for chord in d.chords() {
        out.push((Move::Flip { chord }, d.flip_chord(chord)));
    }

    for chord in d.chords() {
        if let Ok(result) = r1_delete(d, chord) {
            out.push((Move::R1Delete { chord }, result));
        }
    }

    for a in d.chords() {
        for b in a + 1..=n as ChordId {
            if let Ok(result) = r2_delete(d, a, b) {
                out.push((
                    Move::R2Delete {
                        chord_a: a,
                        chord_b: b,
                    },
                    result,
                ));
            }
        }
    }

    // r3: choose three disjoint adjacent-position blocks covering exactly the
    // six endpoints of three chords; the smallest block start is the anchor.
    let blocks: Vec<(usize, [ChordId; 2])> = (0..len)
        .filter_map(|p| {
            let a = d.endpoints()[p].chord;
            let b = d.endpoints()[(p + 1) % len].chord;
            (a != b).then_some((p, [a, b]))
        })
        .collect();
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for k in j + 1..blocks.len() {
                let starts = [blocks[i].0, blocks[j].0, blocks[k].0];
                let mut positions: Vec<usize> = starts
                    .iter()
                    .flat_map(|&p| [p, (p + 1) % len])
                    .collect();
                positions.sort_unstable();
                positions.dedup();
                if positions.len() != 6 {
                    continue;
                }
                let mut chords: Vec<ChordId> = [blocks[i].1, blocks[j].1, blocks[k].1]
                    .concat();
                chords.sort_unstable();
                if chords.chunks(2).any(|c| c[0] != c[1]) {
                    continue;
                }
                chords.dedup();
                if chords.len() != 3 {
                    continue;
                }
                let triple = [chords[0], chords[1], chords[2]];
                let anchor = starts[0];
                if let Ok(result) = r3(d, triple, anchor) {
                    out.push((
                        Move::R3 {
                            chords: triple,
                            anchor,
                        },
                        result,
                    ));
                }
            }
        }
    }

    if n + 1 <= max_chords {
        for gap in 0..gap_count(d) {
            for order in [RoleOrder::HeadTail, RoleOrder::TailHead] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let result = r1_insert(d, gap, order, sign).expect("gap in range");
                    out.push((Move::R1Insert { gap, order, sign }, result));
                }
            }
        }
    }

    if n + 2 <= max_chords {
        for head_gap in 0..gap_count(d) {
            for tail_gap in 0..gap_count(d) {
                for interleave in [R2Pattern::Linked, R2Pattern::Nested] {
                    for lead_sign in [Sign::Plus, Sign::Minus] {
                        let leads = if head_gap == tail_gap {
                            &[true, false][..]
                        } else {
                            &[true][..]
                        };
                        for &head_block_first in leads {
                            let result = r2_insert(
                                d,
                                head_gap,
                                tail_gap,
                                interleave,
                                lead_sign,
                                head_block_first,
                            )
                            .expect("gaps in range");
                            out.push((
                                Move::R2Insert {
                                    head_gap,
                                    tail_gap,
                                    interleave,
                                    lead_sign,
                                    head_block_first,
                                },
                                result,
                            ));
                        }
                    }
                }
            }
        }
    }

    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

/// Legal local r3 patterns in the encoding of `r3_pattern`, sorted.
///
/// Generated by enumerating every planar triangle configuration (both
/// chiralities, all strand directions, all consistent over/under orders, both
/// traversal orders) and canonicalizing; the `r3_model` integration test
/// rebuilds the set from the model and asserts equality.
const R3_LEGAL: &[[u8; 6]] = &[
    [0, 4, 2, 8, 6, 10],
    [0, 4, 2, 11, 6, 9],
    [0, 4, 6, 9, 2, 11],
    [0, 4, 6, 10, 2, 8],
    [0, 4, 8, 6, 10, 2],
    [0, 4, 9, 2, 11, 6],
    [0, 4, 10, 2, 8, 6],
    [0, 4, 11, 6, 9, 2],
    [0, 5, 2, 9, 11, 7],
    [0, 5, 2, 10, 8, 7],
    [0, 5, 7, 9, 11, 2],
    [0, 5, 7, 10, 8, 2],
    [0, 5, 8, 2, 7, 10],
    [0, 5, 8, 7, 2, 10],
    [0, 5, 11, 2, 7, 9],
    [0, 5, 11, 7, 2, 9],
    [0, 7, 2, 11, 5, 9],
    [0, 7, 5, 9, 2, 11],
    [1, 4, 3, 8, 10, 6],
    [1, 4, 3, 11, 9, 6],
    [1, 4, 6, 8, 10, 3],
    [1, 4, 6, 11, 9, 3],
    [1, 4, 9, 3, 6, 11],
    [1, 4, 9, 6, 3, 11],
    [1, 4, 10, 3, 6, 8],
    [1, 4, 10, 6, 3, 8],
    [1, 5, 3, 9, 7, 11],
    [1, 5, 3, 10, 7, 8],
    [1, 5, 7, 8, 3, 10],
    [1, 5, 7, 11, 3, 9],
    [1, 5, 9, 7, 11, 3],
    [1, 5, 11, 3, 9, 7],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_gauss_code;

    fn diagram(code: &str) -> GaussDiagram {
        parse_gauss_code(code).expect("valid code")
    }

    #[test]
    fn flip_reverses_one_chord() {
        let d = diagram("U1+,O1+");
        let f = flip(&d, 1).unwrap();
        assert_eq!(f.to_string(), "O1-,U1-");
        assert_eq!(flip(&f, 1).unwrap(), d);
        assert!(flip(&d, 2).is_err());
    }

    #[test]
    fn flip_in_context() {
        let d = diagram("U1+,U2+,O1+,O2+");
        assert_eq!(flip(&d, 2).unwrap().to_string(), "U1+,O2-,O1+,U2-");
    }

    #[test]
    fn r1_delete_cases() {
        assert!(r1_delete(&diagram("U1+,O1+"), 1).unwrap().is_empty());
        // Endpoints at positions 0 and 2 are not adjacent.
        assert_eq!(
            r1_delete(&diagram("U1+,U2+,O1+,O2+"), 1),
            Err(MoveError::NotAKink(1))
        );
        // Wrap-around adjacency counts.
        let d = diagram("O1+,U2-,O2-,U1+");
        assert_eq!(r1_delete(&d, 1).unwrap().to_string(), "U1-,O1-");
    }

    #[test]
    fn r1_insert_cases() {
        let d = r1_insert(&GaussDiagram::empty(), 0, RoleOrder::HeadTail, Sign::Minus).unwrap();
        assert_eq!(d.to_string(), "U1-,O1-");
        assert!(r1_insert(&GaussDiagram::empty(), 1, RoleOrder::HeadTail, Sign::Plus).is_err());
        let two = r1_insert(&d, 1, RoleOrder::TailHead, Sign::Plus).unwrap();
        assert_eq!(two.to_string(), "U1-,O2+,U2+,O1-");
    }

    #[test]
    fn r1_round_trips_restore_the_key() {
        let d = diagram("U1+,U2+,O1+,O2+");
        for gap in 0..d.endpoint_count() {
            for order in [RoleOrder::HeadTail, RoleOrder::TailHead] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let inserted = r1_insert(&d, gap, order, sign).unwrap();
                    // The fresh chord's id after renumbering is whatever sits
                    // at the gap; find the kink chord and delete it.
                    let kink = inserted
                        .chords()
                        .find(|&c| {
                            let h = inserted.head_position(c).unwrap();
                            let t = inserted.tail_position(c).unwrap();
                            adjacent(h, t, inserted.endpoint_count())
                                && r1_delete(&inserted, c).is_ok_and(|r| {
                                    r.canonical_key() == d.canonical_key()
                                })
                        })
                        .expect("inverse exists");
                    let restored = r1_delete(&inserted, kink).unwrap();
                    assert_eq!(restored.canonical_key(), d.canonical_key());
                }
            }
        }
    }

    #[test]
    fn r2_delete_flipped_pair() {
        // flip of the interleaved two-chord diagram at chord 2: heads at
        // positions 4 and 1 (1-based) are cyclically adjacent, tails at 2, 3.
        let d = diagram("U1+,O2-,O1+,U2-");
        assert!(r2_delete(&d, 1, 2).unwrap().is_empty());
        assert_eq!(
            r2_delete(&diagram("U1+,U2+,O1+,O2+"), 1, 2),
            Err(MoveError::R2SignsEqual)
        );
        // Opposite signs but heads not adjacent.
        assert_eq!(
            r2_delete(&diagram("U1+,O1+,U2-,O2-"), 1, 2),
            Err(MoveError::R2BadBlocks)
        );
    }

    #[test]
    fn r2_insert_then_delete_is_identity() {
        for base in ["", "U1+,O1+", "U1+,U2+,O1+,O2+"] {
            let d = diagram(base);
            for head_gap in 0..gap_count(&d) {
                for tail_gap in 0..gap_count(&d) {
                    for interleave in [R2Pattern::Linked, R2Pattern::Nested] {
                        for lead_sign in [Sign::Plus, Sign::Minus] {
                            let inserted = r2_insert(
                                &d, head_gap, tail_gap, interleave, lead_sign, true,
                            )
                            .unwrap();
                            assert_eq!(inserted.chord_count(), d.chord_count() + 2);
                            let mut restored = None;
                            'outer: for a in inserted.chords() {
                                for b in inserted.chords() {
                                    if a < b {
                                        if let Ok(r) = r2_delete(&inserted, a, b) {
                                            if r.canonical_key() == d.canonical_key() {
                                                restored = Some(r);
                                                break 'outer;
                                            }
                                        }
                                    }
                                }
                            }
                            assert!(restored.is_some(), "base={base:?} hg={head_gap} tg={tail_gap}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn r2_insert_respects_the_lead_rule() {
        let d = diagram("U1+,O1+");
        assert_eq!(
            r2_insert(&d, 0, 1, R2Pattern::Linked, Sign::Plus, false),
            Err(MoveError::R2BadLead)
        );
        let tt_hh = r2_insert(&d, 0, 0, R2Pattern::Linked, Sign::Plus, false).unwrap();
        let hh_tt = r2_insert(&d, 0, 0, R2Pattern::Linked, Sign::Plus, true).unwrap();
        assert_ne!(tt_hh, hh_tt);
    }

    #[test]
    fn enumerate_on_empty_diagram() {
        assert!(enumerate_moves(&GaussDiagram::empty(), 0).is_empty());
        let moves = enumerate_moves(&GaussDiagram::empty(), 1);
        assert_eq!(moves.len(), 4);
        assert!(moves
            .iter()
            .all(|(m, _)| matches!(m, Move::R1Insert { gap: 0, .. })));
    }

    #[test]
    fn enumerate_on_a_kink_with_tight_cap() {
        let moves = enumerate_moves(&diagram("U1+,O1+"), 1);
        let kinds: Vec<&Move> = moves.iter().map(|(m, _)| m).collect();
        assert_eq!(
            kinds,
            vec![&Move::Flip { chord: 1 }, &Move::R1Delete { chord: 1 }]
        );
    }

    #[test]
    fn enumerate_is_sorted_and_duplicate_free() {
        let d = diagram("U1+,O2-,O1+,U2-");
        let moves = enumerate_moves(&d, 4);
        for w in moves.windows(2) {
            assert!(w[0].0 < w[1].0);
        }
        // Results replay: applying the recorded move reproduces the diagram.
        for (mv, result) in &moves {
            assert_eq!(&apply_move(&d, mv).unwrap(), result);
        }
    }

    #[test]
    fn every_move_has_an_inverse_in_the_set() {
        for code in ["U1+,O1+", "U1+,U2+,O1+,O2+", "U1+,O2-,O1+,U2-"] {
            let d = diagram(code);
            let key = d.canonical_key();
            for (mv, result) in enumerate_moves(&d, d.chord_count() + 2) {
                let back = enumerate_moves(&result, d.chord_count() + 2);
                assert!(
                    back.iter().any(|(_, r)| r.canonical_key() == key),
                    "{code}: no inverse for {mv:?}"
                );
            }
        }
    }

    #[test]
    fn move_serialization_shape() {
        let mv = Move::Flip { chord: 2 };
        assert_eq!(
            serde_json::to_value(&mv).unwrap(),
            serde_json::json!({"move": "flip", "params": {"chord": 2}})
        );
        let mv = Move::R2Insert {
            head_gap: 1,
            tail_gap: 3,
            interleave: R2Pattern::Nested,
            lead_sign: Sign::Minus,
            head_block_first: true,
        };
        let value = serde_json::to_value(&mv).unwrap();
        assert_eq!(value["move"], "r2_insert");
        assert_eq!(value["params"]["interleave"], "nested");
        assert_eq!(value["params"]["lead_sign"], "-");
        let back: Move = serde_json::from_value(value).unwrap();
        assert_eq!(back, mv);
    }
}
