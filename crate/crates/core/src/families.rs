//! Generators for two parametric families of one-bridge diagrams, plus the
//! unknot. Both families are used heavily by the acceptance suite: their
//! polynomial invariants have closed forms and their flip distances are known
//! exactly.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{ChordId, GaussDiagram, Role, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("p and q must be at least 1 (got p={p}, q={q})")]
    AxisCountOutOfRange { p: u32, q: u32 },
}

/// Parameters naming a family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// `Ki { i }`: `2i` interleaved positive chords; homotopically trivial
    /// with flip distance `i` to the unknot.
    Ki { i: u32 },
    /// `Kpq { p, q, n }`: `p` vertical and `q` horizontal positive chords
    /// plus `n` pairs of diagonals through the center; members with the same
    /// `(p, q)` are mutually homotopic at flip distance `|n1 - n2|`.
    Kpq { p: u32, q: u32, n: u32 },
}

impl FamilySpec {
    pub fn generate(self) -> Result<GaussDiagram, FamilyError> {
        match self {
            FamilySpec::Ki { i } => Ok(k_family(i)),
            FamilySpec::Kpq { p, q, n } => kpq_family(p, q, n),
        }
    }
}

/// The trivial diagram.
pub fn unknot() -> GaussDiagram {
    GaussDiagram::empty()
}

/// `2i` positive chords: heads of chords `1..=2i` consecutively, then tails
/// in the same order. For `i = 0` this is the unknot.
///
/// Gauss code: `U1+,...,U(2i)+,O1+,...,O(2i)+`.
pub fn k_family(i: u32) -> GaussDiagram {
    let chords = 2 * i;
    let mut endpoints = Vec::with_capacity(2 * chords as usize);
    for c in 1..=chords {
        endpoints.push((c, Role::Head));
    }
    for c in 1..=chords {
        endpoints.push((c, Role::Tail));
    }
    let signs: BTreeMap<ChordId, Sign> = (1..=chords).map(|c| (c, Sign::Plus)).collect();
    GaussDiagram::new(&endpoints, &signs).expect("construction is valid")
}

/// The axis-and-diagonals diagram: `q` parallel horizontal chords pointing
/// right, `p` parallel vertical chords pointing up, and `n` pairs of positive
/// diagonals through the circle center (one near-vertical, one
/// near-horizontal per pair). All chords are positive.
///
/// Reading counterclockwise from the positive x-axis, the endpoint sequence
/// is: horizontal heads `h_1..h_q`, vertical heads `v_1..v_p`, diagonal heads
/// `dV_1..dV_n` followed by diagonal tails `dH_n..dH_1` on the second-quadrant
/// arc, horizontal tails `h_q..h_1`, vertical tails `v_p..v_1`, and diagonal
/// tails `dV_1..dV_n` followed by diagonal heads `dH_n..dH_1` on the
/// fourth-quadrant arc. Parallel chords of one axis group are disjoint; every
/// diagonal links every axis chord and every other diagonal.
///
/// Chord ids after normalization: `h_j = j`, `v_j = q + j`, `dV_j = q + p + j`,
/// `dH_j = q + p + 2n - j + 1` (so `dH_n = q + p + n + 1`).
pub fn kpq_family(p: u32, q: u32, n: u32) -> Result<GaussDiagram, FamilyError> {
    if p < 1 || q < 1 {
        return Err(FamilyError::AxisCountOutOfRange { p, q });
    }
    let horizontal = |j: u32| j;
    let vertical = |j: u32| q + j;
    let diag_v = |j: u32| q + p + j;
    let diag_h = |j: u32| q + p + n + j;

    let mut endpoints = Vec::with_capacity(2 * (p + q + 2 * n) as usize);
    for j in 1..=q {
        endpoints.push((horizontal(j), Role::Head));
    }
    for j in 1..=p {
        endpoints.push((vertical(j), Role::Head));
    }
    for j in 1..=n {
        endpoints.push((diag_v(j), Role::Head));
    }
    for j in (1..=n).rev() {
        endpoints.push((diag_h(j), Role::Tail));
    }
    for j in (1..=q).rev() {
        endpoints.push((horizontal(j), Role::Tail));
    }
    for j in (1..=p).rev() {
        endpoints.push((vertical(j), Role::Tail));
    }
    for j in 1..=n {
        endpoints.push((diag_v(j), Role::Tail));
    }
    for j in (1..=n).rev() {
        endpoints.push((diag_h(j), Role::Head));
    }

    let signs: BTreeMap<ChordId, Sign> = (1..=p + q + 2 * n).map(|c| (c, Sign::Plus)).collect();
    Ok(GaussDiagram::new(&endpoints, &signs).expect("construction is valid"))
}

/// Chord ids of the `n`-th diagonal pair in `kpq_family(p, q, n)`: the
/// near-vertical chord and the near-horizontal chord whose cancellation
/// produces the `n - 1` member.
pub fn kpq_outer_diagonals(p: u32, q: u32, n: u32) -> Option<(ChordId, ChordId)> {
    if n == 0 {
        return None;
    }
    Some((q + p + n, q + p + n + 1))
}
