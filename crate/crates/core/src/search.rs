//! Certificate-producing search over the move graph.
//!
//! States are canonical keys; edges come from [`enumerate_moves`]. Flip edges
//! cost 1 and Reidemeister edges cost 0, so a cheapest path realizes the
//! minimum flip count between two diagrams over everything reachable within
//! the budget. The engine is best-first with the admissible and consistent
//! heuristic `ceil(sum |coefficients of P(state) - P(goal)| / 2)`: a flip
//! moves exactly one coefficient of the degree-one polynomial by 2, an
//! isotopy move none, so the heuristic never overestimates and never drops by
//! more than an edge's cost. The first goal pop is therefore optimal within
//! the explored universe, and equal to the true minimum whenever it meets the
//! polynomial lower bound.
//!
//! Insertions are capped by `max_chords`, which makes the search incomplete
//! in principle: a returned certificate is always a sound upper bound, and
//! exactness is claimed only when the lower bound matches.

use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{CanonicalKey, GaussDiagram};
use crate::invariants::{henrich_p, rvu_lower_bound, turaev_u, vu_lower_bound, FlipBound};
use crate::moves::{apply_move, enumerate_moves, Move};
use crate::poly::SparsePoly;

/// Caps on the explored universe. All searches are deterministic; the
/// `deterministic` flag is kept for compatibility with callers that demand
/// reproducibility explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest diagram (in chords) the search may build.
    pub max_chords: usize,
    /// Largest admissible flip cost of a returned path.
    pub max_flips: u32,
    /// Cap on distinct states recorded before giving up.
    pub max_states: usize,
    pub deterministic: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_chords: 8,
            max_flips: 16,
            max_states: 1_000_000,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub expanded: u64,
    pub enqueued: u64,
    pub distinct_states: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NotFoundReason {
    /// An invariant separates the two diagrams; no path exists at any size.
    Obstructed,
    /// Everything reachable within `max_chords`/`max_flips` was explored.
    Exhausted,
    /// The distinct-state cap was reached first.
    StateLimit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("no path within budget ({reason:?}; expanded {}, enqueued {}, {} states)",
    stats.expanded, stats.enqueued, stats.distinct_states)]
pub struct NotFound {
    pub reason: NotFoundReason,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget allows {cap} chords but a diagram has {needed}")]
    InvalidBudget { cap: usize, needed: usize },
    #[error(transparent)]
    NotFound(#[from] NotFound),
}

/// One replayed edge: the move applied to the canonical form of the previous
/// state, and the canonical key of the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateStep {
    #[serde(flatten)]
    pub mv: Move,
    pub key: CanonicalKey,
}

/// A replayable move sequence between two diagrams with flip-cost accounting.
///
/// Replay contract: starting from `start.canonical_form()`, applying each
/// step's move and canonicalizing must reproduce each recorded key and end at
/// a diagram with `end`'s key; `flip_count` equals the number of flip steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub start: GaussDiagram,
    pub steps: Vec<CertificateStep>,
    pub end: GaussDiagram,
    pub flip_count: u32,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Joins two certificates sharing an intermediate diagram; flip counts
    /// add. Works because moves are recorded against canonical forms and
    /// equal keys have equal canonical forms.
    pub fn concat(&self, other: &Certificate) -> Result<Certificate, VerifyFailure> {
        if self.end.canonical_key() != other.start.canonical_key() {
            return Err(VerifyFailure {
                step: None,
                reason: "certificates do not share the intermediate diagram".into(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Ok(Certificate {
            start: self.start.clone(),
            steps,
            end: other.end.clone(),
            flip_count: self.flip_count + other.flip_count,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate invalid{}: {reason}", match step { Some(i) => format!(" at step {i}"), None => String::new() })]
pub struct VerifyFailure {
    /// Index of the first failing step, if the failure is step-local.
    pub step: Option<usize>,
    pub reason: String,
}

/// Replays every move, checking each recorded key, the final diagram, and
/// the flip accounting. Reports the first mismatch.
pub fn verify_certificate(cert: &Certificate) -> Result<(), VerifyFailure> {
    let mut current = cert.start.canonical_form();
    let mut flips = 0u32;
    for (i, step) in cert.steps.iter().enumerate() {
        let result = apply_move(&current, &step.mv).map_err(|e| VerifyFailure {
            step: Some(i),
            reason: format!("move does not apply: {e}"),
        })?;
        let key = result.canonical_key();
        if key != step.key {
            return Err(VerifyFailure {
                step: Some(i),
                reason: format!("recorded key {} but replay reached {key}", step.key),
            });
        }
        if step.mv.is_flip() {
            flips += 1;
        }
        current = result.canonical_form();
    }
    if current.canonical_key() != cert.end.canonical_key() {
        return Err(VerifyFailure {
            step: None,
            reason: "replay does not end at the recorded end diagram".into(),
        });
    }
    if flips != cert.flip_count {
        return Err(VerifyFailure {
            step: None,
            reason: format!(
                "flip_count records {} but the steps contain {flips} flips",
                cert.flip_count
            ),
        });
    }
    Ok(())
}

/// Minimum-flip-cost path from `d1` to `d2` over flips and Reidemeister
/// moves, within budget. The certificate's flip count is an upper bound for
/// the relative unknotting distance; it is exact when it equals
/// [`rvu_lower_bound`] of the two degree-one polynomials.
pub fn find_homotopy(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    budget: &SearchBudget,
) -> Result<Certificate, SearchError> {
    search(d1, d2, budget, true)
}

/// Like [`find_homotopy`] with flip edges disabled; any certificate found has
/// flip count zero.
pub fn find_isotopy(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    budget: &SearchBudget,
) -> Result<Certificate, SearchError> {
    search(d1, d2, budget, false)
}

fn obstructed(d1: &GaussDiagram, d2: &GaussDiagram, allow_flips: bool) -> bool {
    if turaev_u(d1) != turaev_u(d2) {
        return true;
    }
    let diff = &henrich_p(d1) - &henrich_p(d2);
    if allow_flips {
        // Flips move coefficients in steps of 2.
        diff.terms().any(|(_, c)| c % 2 != 0)
    } else {
        !diff.is_zero()
    }
}

fn heuristic(p_state: &SparsePoly, p_goal: &SparsePoly) -> u32 {
    rvu_lower_bound(p_state, p_goal).ceil() as u32
}

#[derive(PartialEq, Eq)]
struct Entry {
    f: u32,
    h: u32,
    seq: u64,
    g: u32,
    key: CanonicalKey,
    diagram: GaussDiagram,
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // BinaryHeap is a max-heap; invert for (f, h, seq) min order.
        (other.f, other.h, other.seq).cmp(&(self.f, self.h, self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn search(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    budget: &SearchBudget,
    allow_flips: bool,
) -> Result<Certificate, SearchError> {
    let needed = d1.chord_count().max(d2.chord_count());
    if budget.max_chords < needed {
        return Err(SearchError::InvalidBudget {
            cap: budget.max_chords,
            needed,
        });
    }

    let mut stats = SearchStats::default();
    if obstructed(d1, d2, allow_flips) {
        return Err(NotFound {
            reason: NotFoundReason::Obstructed,
            stats,
        }
        .into());
    }

    let goal_key = d2.canonical_key();
    let goal_p = henrich_p(d2);
    let (start_rep, start_key) = d1.canonical_pair();

    let mut best_g: HashMap<CanonicalKey, u32> = HashMap::new();
    let mut parents: HashMap<CanonicalKey, (CanonicalKey, Move)> = HashMap::new();
    let mut settled: HashSet<CanonicalKey> = HashSet::new();
    let mut heap: BinaryHeap<Entry> = BinaryHeap::new();
    let mut seq = 0u64;

    let h0 = heuristic(&henrich_p(&start_rep), &goal_p);
    if h0 > budget.max_flips {
        return Err(NotFound {
            reason: NotFoundReason::Exhausted,
            stats,
        }
        .into());
    }
    best_g.insert(start_key.clone(), 0);
    heap.push(Entry {
        f: h0,
        h: h0,
        seq,
        g: 0,
        key: start_key.clone(),
        diagram: start_rep,
    });
    stats.enqueued = 1;
    stats.distinct_states = 1;

    while let Some(entry) = heap.pop() {
        if best_g.get(&entry.key).copied() != Some(entry.g) || !settled.insert(entry.key.clone()) {
            continue;
        }
        if entry.key == goal_key {
            return Ok(reconstruct(d1, d2, &start_key, &entry.key, &parents));
        }
        stats.expanded += 1;

        for (mv, result) in enumerate_moves(&entry.diagram, budget.max_chords) {
            let cost = mv.is_flip() as u32;
            if cost == 1 && !allow_flips {
                continue;
            }
            let g2 = entry.g + cost;
            let (child_rep, child_key) = result.canonical_pair();
            if best_g.get(&child_key).is_some_and(|&g| g <= g2) {
                continue;
            }
            let h2 = heuristic(&henrich_p(&child_rep), &goal_p);
            if g2 + h2 > budget.max_flips {
                continue;
            }
            if !best_g.contains_key(&child_key) && best_g.len() >= budget.max_states {
                return Err(NotFound {
                    reason: NotFoundReason::StateLimit,
                    stats,
                }
                .into());
            }
            best_g.insert(child_key.clone(), g2);
            parents.insert(child_key.clone(), (entry.key.clone(), mv));
            seq += 1;
            stats.enqueued += 1;
            stats.distinct_states = best_g.len() as u64;
            heap.push(Entry {
                f: g2 + h2,
                h: h2,
                seq,
                g: g2,
                key: child_key,
                diagram: child_rep,
            });
        }
    }

    Err(NotFound {
        reason: NotFoundReason::Exhausted,
        stats,
    }
    .into())
}

fn reconstruct(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    start_key: &CanonicalKey,
    goal_key: &CanonicalKey,
    parents: &HashMap<CanonicalKey, (CanonicalKey, Move)>,
) -> Certificate {
    let mut chain: Vec<(Move, CanonicalKey)> = Vec::new();
    let mut cursor = goal_key.clone();
    while cursor != *start_key {
        let (parent, mv) = parents.get(&cursor).expect("parent chain is complete");
        chain.push((mv.clone(), cursor.clone()));
        cursor = parent.clone();
    }
    chain.reverse();
    let flip_count = chain.iter().filter(|(mv, _)| mv.is_flip()).count() as u32;
    Certificate {
        start: d1.clone(),
        steps: chain
            .into_iter()
            .map(|(mv, key)| CertificateStep { mv, key })
            .collect(),
        end: d2.clone(),
        flip_count,
    }
}

/// Result of certifying the unknotting flip count of one diagram.
#[derive(Debug, Clone, Serialize)]
pub struct VuReport {
    /// Exact polynomial lower bound.
    pub lower_bound: FlipBound,
    /// Integer form of the lower bound.
    pub lower: u64,
    /// Flip count of the found homotopy to the unknot, if any.
    pub upper: Option<u32>,
    pub certificate: Option<Certificate>,
    /// True when `upper` equals `lower`: the value is pinned.
    pub exact: bool,
    /// When the homotopy polynomial is nonzero the diagram is not homotopic
    /// to the unknot and the unknotting count is undefined; the polynomial is
    /// the evidence.
    pub u_obstruction: Option<SparsePoly>,
    /// Present when the search ran and failed.
    pub not_found: Option<NotFound>,
}

/// Certifies the unknotting flip count of `d`: the polynomial lower bound
/// plus, when a homotopy to the unknot is found within budget, a verified
/// upper bound. `max_chords` is raised to the diagram size if necessary.
pub fn certify_vu(d: &GaussDiagram, budget: &SearchBudget) -> VuReport {
    let p = henrich_p(d);
    let lower_bound = vu_lower_bound(&p);
    let u = turaev_u(d);
    if !u.is_zero() {
        return VuReport {
            lower_bound,
            lower: lower_bound.ceil(),
            upper: None,
            certificate: None,
            exact: false,
            u_obstruction: Some(u),
            not_found: None,
        };
    }
    let mut budget = *budget;
    budget.max_chords = budget.max_chords.max(d.chord_count());
    match find_homotopy(d, &GaussDiagram::empty(), &budget) {
        Ok(cert) => VuReport {
            lower_bound,
            lower: lower_bound.ceil(),
            upper: Some(cert.flip_count),
            exact: u64::from(cert.flip_count) == lower_bound.ceil(),
            certificate: Some(cert),
            u_obstruction: None,
            not_found: None,
        },
        Err(SearchError::NotFound(nf)) => VuReport {
            lower_bound,
            lower: lower_bound.ceil(),
            upper: None,
            certificate: None,
            exact: false,
            u_obstruction: None,
            not_found: Some(nf),
        },
        Err(SearchError::InvalidBudget { .. }) => unreachable!("max_chords raised above"),
    }
}
