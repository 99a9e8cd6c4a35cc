//! Diagram invariants: bridge count, chord indices, the degree-one polynomial
//! invariants, and the flip-count lower bounds they induce.
//!
//! Index conventions (fixed so reports are deterministic):
//!
//! * `chord_index(D, c)` uses the arc from the head of `c` to its tail,
//!   walking in the positive circle direction. Chords linking `c` contribute
//!   their sign when their head lies in that arc and minus their sign
//!   otherwise; non-linking chords contribute nothing. Choosing the opposite
//!   arc negates the value, so `|i(c)|` — all the polynomials consume — is
//!   convention-free.
//! * `turaev_u` first reverses every negative chord so all signs are `+`,
//!   then counts, for each chord `c`, the chords crossing it parallel
//!   (`n_+`) and antiparallel (`n_-`) relative to the arc that starts at the
//!   head of `c`.

use std::fmt;

use crate::diagram::{ChordId, DiagramError, GaussDiagram, Sign};
use crate::poly::SparsePoly;

/// Number of inter-head arcs that contain at least one tail.
///
/// Zero exactly for the empty diagram; any diagram with chords has at least
/// one bridge.
pub fn bridge_count(d: &GaussDiagram) -> usize {
    let heads: Vec<usize> = d
        .endpoints()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.role == crate::diagram::Role::Head)
        .map(|(i, _)| i)
        .collect();
    if heads.is_empty() {
        return 0;
    }
    if heads.len() == 1 {
        // One head: the single arc is the rest of the circle, which holds the
        // lone tail.
        return 1;
    }
    let len = d.endpoint_count();
    heads
        .iter()
        .zip(heads.iter().cycle().skip(1))
        .filter(|(&a, &b)| (b + len - a) % len > 1)
        .count()
}

/// The signed count `i(c)` of chords pointing into the head-to-tail arc of `c`.
pub fn chord_index(d: &GaussDiagram, c: ChordId) -> Result<i64, DiagramError> {
    if !d.contains_chord(c) {
        return Err(DiagramError::MissingChord(c));
    }
    Ok(chord_index_unchecked(d, c))
}

fn chord_index_unchecked(d: &GaussDiagram, c: ChordId) -> i64 {
    let head = d.head_position(c).expect("chord present");
    let tail = d.tail_position(c).expect("chord present");
    let mut sum = 0;
    for other in d.chords() {
        if other == c {
            continue;
        }
        let oh = d.head_position(other).expect("chord present");
        let ot = d.tail_position(other).expect("chord present");
        let head_in = d.strictly_between(head, tail, oh);
        let tail_in = d.strictly_between(head, tail, ot);
        if head_in != tail_in {
            let s = d.sign_unchecked(other).value();
            sum += if head_in { s } else { -s };
        }
    }
    sum
}

/// Per-chord invariant data: the chord's sign, its index `i`, and its
/// directed crossing count `n` on the all-positive normalization.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ChordIndexEntry {
    pub chord: ChordId,
    pub sign: Sign,
    pub i_value: i64,
    pub n_value: i64,
}

pub type ChordIndexReport = Vec<ChordIndexEntry>;

pub fn chord_index_report(d: &GaussDiagram) -> ChordIndexReport {
    let positive = all_positive(d);
    d.chords()
        .map(|c| ChordIndexEntry {
            chord: c,
            sign: d.sign_unchecked(c),
            i_value: chord_index_unchecked(d, c),
            n_value: directed_crossing_count(&positive, c),
        })
        .collect()
}

/// The degree-one polynomial `sum over chords with i(c) != 0 of
/// sign(c) * t^|i(c)|`.
pub fn henrich_p(d: &GaussDiagram) -> SparsePoly {
    let mut p = SparsePoly::zero();
    for c in d.chords() {
        let i = chord_index_unchecked(d, c);
        if i != 0 {
            p.add_term(i.unsigned_abs() as u32, d.sign_unchecked(c).value());
        }
    }
    p
}

fn all_positive(d: &GaussDiagram) -> GaussDiagram {
    let mut out = d.clone();
    for c in d.chords() {
        if d.sign_unchecked(c) == Sign::Minus {
            out = out.flip_chord(c);
        }
    }
    out
}

/// `n(c) = n_+(c) - n_-(c)` on an all-positive diagram: chords are counted
/// `+` when they start (tail) outside and end (head) inside the arc that
/// begins at the head of `c`, `-` for the reverse passage.
fn directed_crossing_count(positive: &GaussDiagram, c: ChordId) -> i64 {
    let head = positive.head_position(c).expect("chord present");
    let tail = positive.tail_position(c).expect("chord present");
    let mut n = 0;
    for other in positive.chords() {
        if other == c {
            continue;
        }
        let oh = positive.head_position(other).expect("chord present");
        let ot = positive.tail_position(other).expect("chord present");
        let head_in = positive.strictly_between(head, tail, oh);
        let tail_in = positive.strictly_between(head, tail, ot);
        match (tail_in, head_in) {
            (false, true) => n += 1,
            (true, false) => n -= 1,
            _ => {}
        }
    }
    n
}

/// The homotopy-invariant polynomial `sum over chords with n(c) != 0 of
/// sign(n(c)) * t^|n(c)|`, computed on the all-positive normalization.
pub fn turaev_u(d: &GaussDiagram) -> SparsePoly {
    let positive = all_positive(d);
    let mut u = SparsePoly::zero();
    for c in positive.chords() {
        let n = directed_crossing_count(&positive, c);
        if n != 0 {
            u.add_term(n.unsigned_abs() as u32, n.signum());
        }
    }
    u
}

/// A half-integer lower bound on a flip count, kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct FlipBound {
    /// Twice the bound: the bound is `halves / 2`.
    pub halves: u64,
}

impl FlipBound {
    /// The usable integer bound (flip counts are integers).
    pub fn ceil(self) -> u64 {
        self.halves.div_ceil(2)
    }

    pub fn is_zero(self) -> bool {
        self.halves == 0
    }
}

impl fmt::Display for FlipBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.halves % 2 == 0 {
            write!(f, "{}", self.halves / 2)
        } else {
            write!(f, "{}/2", self.halves)
        }
    }
}

/// Every homotopy to a diagram with zero polynomial spends at least
/// `sum |coefficients| / 2` flips.
pub fn vu_lower_bound(p: &SparsePoly) -> FlipBound {
    FlipBound {
        halves: p.sum_abs_coeffs(),
    }
}

/// Flip-count lower bound between two diagrams with the given polynomials.
pub fn rvu_lower_bound(p1: &SparsePoly, p2: &SparsePoly) -> FlipBound {
    vu_lower_bound(&(p1 - p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_gauss_code;

    fn diagram(code: &str) -> GaussDiagram {
        parse_gauss_code(code).expect("valid code")
    }

    #[test]
    fn bridge_count_cases() {
        assert_eq!(bridge_count(&GaussDiagram::empty()), 0);
        assert_eq!(bridge_count(&diagram("U1+,O1+")), 1);
        assert_eq!(bridge_count(&diagram("U1+,U2+,O1+,O2+")), 1);
        // Heads at positions 2, 4, 6 (1-based), one tail per inter-head arc.
        assert_eq!(bridge_count(&diagram("O1+,U2+,O3+,U1+,O2+,U3+")), 3);
    }

    #[test]
    fn chord_index_of_a_lone_chord_is_zero() {
        assert_eq!(chord_index(&diagram("U1+,O1+"), 1), Ok(0));
        assert_eq!(
            chord_index(&diagram("U1+,O1+"), 2),
            Err(DiagramError::MissingChord(2))
        );
    }

    #[test]
    fn chord_index_on_the_head_block_family() {
        // 2i interleaved positive chords: chord k has index 2i - 2k + 1.
        for i in 1..=6u32 {
            let d = crate::families::k_family(i);
            for k in 1..=2 * i {
                assert_eq!(
                    chord_index(&d, k),
                    Ok(2 * i as i64 - 2 * k as i64 + 1),
                    "i={i} k={k}"
                );
            }
        }
    }

    #[test]
    fn chord_index_on_the_axis_diagram() {
        let d = diagram("U1+,U2+,U3+,O2+,O1+,O3+");
        assert_eq!(chord_index(&d, 3).unwrap().abs(), 2);
        assert_eq!(chord_index(&d, 1).unwrap().abs(), 1);
        assert_eq!(chord_index(&d, 2).unwrap().abs(), 1);
    }

    #[test]
    fn chord_index_flips_with_the_opposite_arc_convention() {
        // Recomputing with the tail-to-head arc must negate i(c).
        let opposite = |d: &GaussDiagram, c: ChordId| -> i64 {
            let head = d.head_position(c).unwrap();
            let tail = d.tail_position(c).unwrap();
            let mut sum = 0;
            for other in d.chords() {
                if other == c {
                    continue;
                }
                let oh = d.head_position(other).unwrap();
                let ot = d.tail_position(other).unwrap();
                let head_in = d.strictly_between(tail, head, oh);
                let tail_in = d.strictly_between(tail, head, ot);
                if head_in != tail_in {
                    let s = d.sign(other).unwrap().value();
                    sum += if head_in { s } else { -s };
                }
            }
            sum
        };
        for code in [
            "U1+,U2+,O1+,O2+",
            "U1+,U2+,U3+,O2+,O1+,O3+",
            "O1-,U2+,U1-,O2+",
            "O1+,U2+,O3+,U1+,O2+,U3+",
        ] {
            let d = diagram(code);
            for c in d.chords() {
                assert_eq!(chord_index(&d, c).unwrap(), -opposite(&d, c), "{code} c={c}");
            }
        }
    }

    #[test]
    fn p_of_unknot_is_zero() {
        assert!(henrich_p(&GaussDiagram::empty()).is_zero());
    }

    #[test]
    fn p_of_the_two_chord_diagram() {
        assert_eq!(
            henrich_p(&diagram("U1+,U2+,O1+,O2+")),
            SparsePoly::from_terms([(1, 2)])
        );
    }

    #[test]
    fn u_of_unknot_is_zero() {
        assert!(turaev_u(&GaussDiagram::empty()).is_zero());
    }

    #[test]
    fn u_of_the_axis_diagram() {
        // One vertical, two horizontals: 2t - t^2.
        assert_eq!(
            turaev_u(&diagram("U1+,U2+,U3+,O2+,O1+,O3+")),
            SparsePoly::from_terms([(1, 2), (2, -1)])
        );
    }

    #[test]
    fn u_ignores_flips() {
        let d = diagram("U1+,U2+,U3+,O2+,O1+,O3+");
        let u = turaev_u(&d);
        for c in d.chords() {
            assert_eq!(turaev_u(&d.flip_chord(c)), u);
        }
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(vu_lower_bound(&SparsePoly::zero()).ceil(), 0);
        assert_eq!(
            vu_lower_bound(&SparsePoly::from_terms([(4, 2)])),
            FlipBound { halves: 2 }
        );
        assert_eq!(vu_lower_bound(&SparsePoly::from_terms([(4, 2)])).ceil(), 1);
        // Odd sums round up.
        assert_eq!(
            vu_lower_bound(&SparsePoly::from_terms([(1, 2), (2, -1)])).ceil(),
            2
        );
        assert_eq!(FlipBound { halves: 3 }.to_string(), "3/2");
        assert_eq!(FlipBound { halves: 4 }.to_string(), "2");
    }

    #[test]
    fn relative_bound_cases() {
        let p = SparsePoly::from_terms([(1, 2)]);
        assert_eq!(rvu_lower_bound(&p, &p).ceil(), 0);
        assert_eq!(rvu_lower_bound(&p, &SparsePoly::zero()).ceil(), 1);
    }

    #[test]
    fn flip_locality_of_chord_index() {
        let codes = [
            "U1+,U2+,O1+,O2+",
            "U1+,U2+,U3+,O2+,O1+,O3+",
            "O1+,U2+,O3+,U1+,O2+,U3+",
        ];
        for code in codes {
            let d = diagram(code);
            for c in d.chords() {
                let flipped = d.flip_chord(c);
                assert_eq!(
                    chord_index(&flipped, c).unwrap(),
                    -chord_index(&d, c).unwrap()
                );
                for other in d.chords().filter(|&o| o != c) {
                    assert_eq!(
                        chord_index(&flipped, other).unwrap(),
                        chord_index(&d, other).unwrap()
                    );
                }
            }
        }
    }
}
