//! Pins the r3 legality table to first principles.
//!
//! A legal triangle-move position comes from a planar picture: three directed
//! strands, pairwise crossing once, whose over/under relation is a total
//! order. This test enumerates every such picture — both mirror arrangements,
//! all strand directions, all height orders, both traversal orders — encodes
//! each as a local Gauss-diagram configuration, and checks that `moves::r3`
//! accepts exactly those configurations over the full candidate space.

use std::collections::{BTreeMap, BTreeSet};

use vknot::diagram::{GaussDiagram, Role, Sign};
use vknot::invariants::{henrich_p, turaev_u};
use vknot::moves::{r3, MoveError};

/// Crossing order along each line (by pair index: 0 = {0,1}, 1 = {0,2},
/// 2 = {1,2}) for the `+` direction, plus the sign of `det(v_i, v_j)` per
/// pair. The two models are mirror arrangements of three concrete lines.
struct TriangleModel {
    orders: [[usize; 2]; 3],
    dets: [i8; 3],
}

const MODELS: [TriangleModel; 2] = [
    TriangleModel {
        orders: [[0, 1], [0, 2], [1, 2]],
        dets: [1, 1, 1],
    },
    TriangleModel {
        orders: [[0, 1], [2, 0], [1, 2]],
        dets: [1, -1, 1],
    },
];

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

const HEIGHT_ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

const TRAVERSALS: [[usize; 3]; 2] = [[0, 1, 2], [0, 2, 1]];

/// Slot-level data of a six-endpoint configuration: `(chord, role, sign)`
/// per slot, chords named by first occurrence from `start`.
fn pattern_from(d: &GaussDiagram, start: usize) -> [u8; 6] {
    let mut rename: BTreeMap<u32, u8> = BTreeMap::new();
    let mut out = [0u8; 6];
    for (i, slot) in out.iter_mut().enumerate() {
        let e = d.endpoints()[(start + i) % 6];
        let next = rename.len() as u8;
        let id = *rename.entry(e.chord).or_insert(next);
        *slot = (id << 2)
            | (((e.role == Role::Tail) as u8) << 1)
            | (d.sign(e.chord).unwrap() == Sign::Minus) as u8;
    }
    out
}

fn diagram_from_slots(slots: &[(u32, Role); 6], signs: &[(u32, Sign)]) -> GaussDiagram {
    let signs: BTreeMap<u32, Sign> = signs.iter().copied().collect();
    GaussDiagram::new(slots, &signs).expect("slot data is a valid diagram")
}

/// Every legal configuration, anchored at each of its three blocks.
fn planar_legal_patterns() -> BTreeSet<[u8; 6]> {
    let mut legal = BTreeSet::new();
    for model in &MODELS {
        for eps_bits in 0..8u32 {
            let eps: [i8; 3] = std::array::from_fn(|i| if eps_bits >> i & 1 == 0 { 1 } else { -1 });
            for ranks in HEIGHT_ORDERS {
                // ranks[i] = height of line i; larger is over.
                for traversal in TRAVERSALS {
                    let mut slots: [(u32, Role); 6] = [(0, Role::Head); 6];
                    let mut signs: Vec<(u32, Sign)> = Vec::new();
                    for (b, &line) in traversal.iter().enumerate() {
                        let mut crossings = model.orders[line];
                        if eps[line] < 0 {
                            crossings.reverse();
                        }
                        for (k, &pair) in crossings.iter().enumerate() {
                            let (i, j) = PAIRS[pair];
                            let over = if ranks[i] > ranks[j] { i } else { j };
                            let role = if line == over { Role::Tail } else { Role::Head };
                            slots[2 * b + k] = (pair as u32 + 1, role);
                        }
                    }
                    for (pair, &(i, j)) in PAIRS.iter().enumerate() {
                        let over = if ranks[i] > ranks[j] { i } else { j };
                        let orient = if over == i { 1 } else { -1 };
                        let s = model.dets[pair] * eps[i] * eps[j] * orient;
                        signs.push((pair as u32 + 1, if s > 0 { Sign::Plus } else { Sign::Minus }));
                    }
                    let d = diagram_from_slots(&slots, &signs);
                    // Transitive height order: one all-over line (two tails in
                    // its block), one all-under (two heads), one mixed.
                    let mut tails_per_block = [0u8; 3];
                    for b in 0..3 {
                        for k in 0..2 {
                            if d.endpoints()[2 * b + k].role == Role::Tail {
                                tails_per_block[b] += 1;
                            }
                        }
                    }
                    let mut sorted = tails_per_block;
                    sorted.sort_unstable();
                    assert_eq!(sorted, [0, 1, 2], "height order must be transitive");
                    for anchor in [0, 2, 4] {
                        legal.insert(pattern_from(&d, anchor));
                    }
                }
            }
        }
    }
    legal
}

/// All six-endpoint, three-block candidates: one chord between each pair of
/// blocks, every head choice, every sign choice.
fn candidates() -> Vec<GaussDiagram> {
    let mut out = Vec::new();
    for a0 in [0usize, 1] {
        for a1 in [2usize, 3] {
            for b2 in [4usize, 5] {
                // chord 1: block0-block1, chord 2: block0-block2,
                // chord 3: block1-block2.
                let pairs: [[usize; 2]; 3] = [[a0, a1], [1 - a0, b2], [5 - a1, 9 - b2]];
                for head_bits in 0..8u32 {
                    for sign_bits in 0..8u32 {
                        let mut slots: [(u32, Role); 6] = [(0, Role::Head); 6];
                        let mut signs = Vec::new();
                        for (c, pair) in pairs.iter().enumerate() {
                            let head_first = head_bits >> c & 1 == 0;
                            slots[pair[0]] = (
                                c as u32 + 1,
                                if head_first { Role::Head } else { Role::Tail },
                            );
                            slots[pair[1]] = (
                                c as u32 + 1,
                                if head_first { Role::Tail } else { Role::Head },
                            );
                            signs.push((
                                c as u32 + 1,
                                if sign_bits >> c & 1 == 0 {
                                    Sign::Plus
                                } else {
                                    Sign::Minus
                                },
                            ));
                        }
                        out.push(diagram_from_slots(&slots, &signs));
                    }
                }
            }
        }
    }
    out
}

/// Canonical form used by the baked table: minimum over block rotations.
fn canonical(pattern: [u8; 6]) -> [u8; 6] {
    let mut best = [u8::MAX; 6];
    for rot in [0usize, 2, 4] {
        let mut rename: BTreeMap<u8, u8> = BTreeMap::new();
        let mut rotated = [0u8; 6];
        for (i, slot) in rotated.iter_mut().enumerate() {
            let tok = pattern[(rot + i) % 6];
            let next = rename.len() as u8;
            let id = *rename.entry(tok >> 2).or_insert(next);
            *slot = (id << 2) | (tok & 0b11);
        }
        if rotated < best {
            best = rotated;
        }
    }
    best
}

#[test]
fn r3_accepts_exactly_the_planar_configurations() {
    let legal = planar_legal_patterns();
    let mut mismatches = Vec::new();
    let mut accepted = 0usize;
    for d in candidates() {
        let pattern = pattern_from(&d, 0);
        let expected = legal.contains(&pattern);
        let actual = r3(&d, [1, 2, 3], 0).is_ok();
        if actual {
            accepted += 1;
        }
        if expected != actual {
            mismatches.push((d.to_string(), pattern, expected));
        }
    }
    if !mismatches.is_empty() {
        let table: BTreeSet<[u8; 6]> = legal.iter().map(|&p| canonical(p)).collect();
        let mut literal = String::new();
        for row in &table {
            literal.push_str(&format!("    {row:?},\n"));
        }
        panic!(
            "{} mismatches (impl accepted {accepted}); first: {:?} expected legal={}\n\
             canonical table ({} rows):\n{literal}",
            mismatches.len(),
            mismatches[0].0,
            mismatches[0].2,
            table.len(),
        );
    }
    // The candidate space must contain legal positions at all.
    assert!(accepted > 0);
}

#[test]
fn r3_is_an_involution_and_preserves_invariants() {
    let legal = planar_legal_patterns();
    let mut checked = 0;
    for d in candidates() {
        if !legal.contains(&pattern_from(&d, 0)) {
            continue;
        }
        let once = r3(&d, [1, 2, 3], 0).expect("legal per model");
        assert_eq!(henrich_p(&once), henrich_p(&d), "{d}");
        assert_eq!(turaev_u(&once), turaev_u(&d), "{d}");
        let twice = r3(&once, [1, 2, 3], 0).expect("result is again legal");
        assert_eq!(twice.canonical_key(), d.canonical_key(), "{d}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn r3_known_position_replays() {
    // Top line over both, bottom under both, all positive.
    let d: GaussDiagram = "O1+,O2+,U1+,O3+,U2+,U3+".parse().unwrap();
    let moved = r3(&d, [1, 2, 3], 0).unwrap();
    assert_eq!(moved.to_string(), "O2+,O1+,O3+,U1+,U3+,U2+");
    assert_eq!(henrich_p(&moved), henrich_p(&d));
    assert_eq!(
        r3(&moved, [1, 2, 3], 0).unwrap().canonical_key(),
        d.canonical_key()
    );
}

#[test]
fn r3_rejects_bad_structure() {
    // The three chords' endpoints are interleaved with a fourth chord's, so
    // no three-adjacent-block grouping exists.
    let d: GaussDiagram = "U1+,U2+,U3+,U4+,O1+,O2+,O3+,O4+".parse().unwrap();
    assert!(matches!(
        r3(&d, [1, 2, 3], 0),
        Err(MoveError::R3BadBlocks(0))
    ));
    // Anchor off the endpoint run entirely.
    assert!(matches!(
        r3(&d, [1, 2, 3], 3),
        Err(MoveError::R3BadBlocks(3))
    ));
    // With six consecutive endpoints both groupings are structurally fine,
    // but the rotated grouping here has three mixed blocks (a cyclic
    // over/under order), which no planar picture realizes.
    let good: GaussDiagram = "O1+,O2+,U1+,O3+,U2+,U3+".parse().unwrap();
    assert!(matches!(r3(&good, [1, 2, 3], 1), Err(MoveError::R3NotLegal)));
}
