//! A toolkit for virtual knots presented as Gauss diagrams.
//!
//! The crate models signed, oriented chord diagrams ([`diagram`]), parses and
//! prints the text Gauss-code format ([`codec`]), computes the classical
//! invariants attached to such diagrams — bridge count, chord indices, the
//! degree-one polynomial, and the homotopy polynomial ([`invariants`]) —
//! rewrites diagrams with flip and Reidemeister moves ([`moves`]), generates
//! the two parametric diagram families with known invariants ([`families`]),
//! and runs certificate-producing searches over the move graph that pin
//! unknotting flip counts exactly when the polynomial lower bound meets the
//! found upper bound ([`search`]).
//!
//! The [`selftest`] module packages the acceptance checks behind the
//! `acceptance` test target and the CLI `selftest` command.

pub mod codec;
pub mod diagram;
pub mod families;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod search;
pub mod selftest;

pub use codec::{parse_gauss_code, to_gauss_code, GaussCodeError};
pub use diagram::{CanonicalKey, ChordId, DiagramError, Endpoint, GaussDiagram, Role, Sign};
pub use families::{k_family, kpq_family, unknot, FamilyError, FamilySpec};
pub use invariants::{
    bridge_count, chord_index, chord_index_report, henrich_p, rvu_lower_bound, turaev_u,
    vu_lower_bound, ChordIndexEntry, ChordIndexReport, FlipBound,
};
pub use moves::{
    apply_move, enumerate_moves, flip, r1_delete, r1_insert, r2_delete, r2_insert, r3, Move,
    MoveError, R2Pattern, RoleOrder,
};
pub use poly::SparsePoly;
pub use search::{
    certify_vu, find_homotopy, find_isotopy, verify_certificate, Certificate, CertificateStep,
    NotFound, NotFoundReason, SearchBudget, SearchStats, VerifyFailure, VuReport,
};
