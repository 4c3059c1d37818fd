//! Inverse constructions: from a relation back to a function pair.
//!
//! [`from_kd45`] takes any non-empty serial, transitive, euclidean relation
//! `R` and builds a validated pair whose belief relation is *exactly* `R`;
//! [`from_equivalence`] does the same for knowledge from any non-empty
//! equivalence relation. Together with the forward direction in
//! [`crate::funcpair`], this makes the function-pair presentation exactly as
//! expressive as raw KD45/S5 frames, and `roundtrip_check` packages the
//! equality test both ways.
//!
//! The KD45 construction: restricted to its image, a KD45 relation is an
//! equivalence; pick a canonical representative per class
//! ([`CanonicalChoice`], lowest state index). Visibility `f` collapses image
//! states to their class representative and fixes everything else; bias `g`
//! fixes representatives and sends each non-image state to the
//! representative of its successors' class. That last step is only well
//! defined because all successors of a state share one class — asserted
//! during construction rather than trusted.
//!
//! Preconditions are reported as structured diagnostics with witnesses, not
//! panics: rejecting a candidate relation is an ordinary outcome.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::funcpair::{validate_pair, FunctionPair, StateFunction};
use crate::relalg::{Relation, StateSet, StateSpace};

/// Why a relation was rejected by a constructor. Witnesses are state names.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("the relation is empty; at least one pair is required")]
    EmptyRelation,
    #[error("seriality fails: state {state:?} has no successor")]
    NotSerial { state: String },
    #[error("transitivity fails at ({a:?}, {b:?}, {c:?}): ({a:?}, {b:?}) and ({b:?}, {c:?}) hold but ({a:?}, {c:?}) does not")]
    NotTransitive { a: String, b: String, c: String },
    #[error("euclideanness fails at ({a:?}, {b:?}, {c:?}): ({a:?}, {b:?}) and ({a:?}, {c:?}) hold but ({b:?}, {c:?}) does not")]
    NotEuclidean { a: String, b: String, c: String },
    #[error("reflexivity fails: ({state:?}, {state:?}) is missing")]
    NotReflexive { state: String },
    #[error("symmetry fails: ({a:?}, {b:?}) holds but ({b:?}, {a:?}) does not")]
    NotSymmetric { a: String, b: String },
}

/// How a canonical representative is chosen from each equivalence class.
/// Only one strategy exists; naming it keeps the determinism rule explicit
/// and visible in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoiceStrategy {
    /// The class member with the lowest state index.
    MinIndex,
}

/// A canonical-representative map for a partition of (part of) a state
/// space: equal classes always receive equal representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalChoice {
    strategy: ChoiceStrategy,
    rep_of: Vec<Option<usize>>,
}

impl CanonicalChoice {
    /// Builds the min-index choice for the given classes.
    ///
    /// # Panics
    /// Panics if a state is assigned two different representatives — i.e.
    /// if the input sets do not form a partition.
    pub fn min_index<I: IntoIterator<Item = StateSet>>(space: &Arc<StateSpace>, classes: I) -> Self {
        let mut rep_of = vec![None; space.len()];
        for class in classes {
            let rep = class.min().expect("equivalence classes are non-empty");
            for member in class.iter() {
                match rep_of[member] {
                    None => rep_of[member] = Some(rep),
                    Some(prev) => assert_eq!(
                        prev,
                        rep,
                        "state {} assigned two representatives; the classes do not form a partition",
                        space.name(member)
                    ),
                }
            }
        }
        CanonicalChoice {
            strategy: ChoiceStrategy::MinIndex,
            rep_of,
        }
    }

    pub fn strategy(&self) -> ChoiceStrategy {
        self.strategy
    }

    /// The representative of the class containing `s`, if `s` is covered.
    pub fn representative(&self, s: usize) -> Option<usize> {
        self.rep_of.get(s).copied().flatten()
    }
}

/// Builds a validated pair whose belief relation equals `r` exactly.
///
/// `r` must be non-empty, serial, transitive, and euclidean; the first
/// failing condition is reported with a witness.
pub fn from_kd45(r: &Relation) -> Result<FunctionPair, SynthesisError> {
    let space = Arc::clone(r.space());
    if r.is_empty() {
        return Err(SynthesisError::EmptyRelation);
    }
    if let Some(s) = r.seriality_witness() {
        return Err(SynthesisError::NotSerial {
            state: space.name(s).to_string(),
        });
    }
    if let Some((a, b, c)) = r.transitivity_witness() {
        return Err(SynthesisError::NotTransitive {
            a: space.name(a).to_string(),
            b: space.name(b).to_string(),
            c: space.name(c).to_string(),
        });
    }
    if let Some((a, b, c)) = r.euclidean_witness() {
        return Err(SynthesisError::NotEuclidean {
            a: space.name(a).to_string(),
            b: space.name(b).to_string(),
            c: space.name(c).to_string(),
        });
    }

    // On its image, r restricts to an equivalence whose class at s is
    // exactly the successor set of s.
    let im_r = r.image();
    let choice = CanonicalChoice::min_index(&space, im_r.iter().map(|s| r.successors(s)));

    let f = StateFunction::total_from_vec(
        &space,
        (0..space.len())
            .map(|s| {
                if im_r.contains(s) {
                    choice
                        .representative(s)
                        .expect("image states are covered by the canonical choice")
                } else {
                    s
                }
            })
            .collect(),
    );

    let im_f = f.image();
    let g = StateFunction::from_entries(
        &space,
        im_f.iter().map(|t| {
            if im_r.contains(t) {
                (t, t)
            } else {
                // t is invisible to r; all of its successors lie in one
                // class, so any of them determines the value of g.
                let succ = r.successors(t);
                let first = succ.min().expect("seriality guarantees a successor");
                let rep = choice
                    .representative(first)
                    .expect("successors lie in the image");
                for other in succ.iter() {
                    assert_eq!(
                        choice.representative(other),
                        Some(rep),
                        "successors of {} span several classes; the bias value would be ambiguous",
                        space.name(t)
                    );
                }
                (t, rep)
            }
        }),
    );

    Ok(validate_pair(f, g).expect("the KD45 construction always yields a valid pair"))
}

/// Builds a validated pair whose knowledge relation equals `e` exactly.
///
/// `e` must be a non-empty equivalence relation; visibility collapses each
/// class to its lowest-index member and the bias is the identity on those
/// representatives. For this pair belief and knowledge coincide with `e`.
pub fn from_equivalence(e: &Relation) -> Result<FunctionPair, SynthesisError> {
    let space = Arc::clone(e.space());
    if e.is_empty() {
        return Err(SynthesisError::EmptyRelation);
    }
    if let Some(s) = e.reflexivity_witness() {
        return Err(SynthesisError::NotReflexive {
            state: space.name(s).to_string(),
        });
    }
    if let Some((a, b)) = e.symmetry_witness() {
        return Err(SynthesisError::NotSymmetric {
            a: space.name(a).to_string(),
            b: space.name(b).to_string(),
        });
    }
    if let Some((a, b, c)) = e.transitivity_witness() {
        return Err(SynthesisError::NotTransitive {
            a: space.name(a).to_string(),
            b: space.name(b).to_string(),
            c: space.name(c).to_string(),
        });
    }

    let choice = CanonicalChoice::min_index(&space, (0..space.len()).map(|s| e.successors(s)));
    let f = StateFunction::total_from_vec(
        &space,
        (0..space.len())
            .map(|s| choice.representative(s).expect("reflexivity covers every state"))
            .collect(),
    );
    let g = StateFunction::identity_on(&f.image());
    Ok(validate_pair(f, g).expect("the equivalence construction always yields a valid pair"))
}

/// Outcome of one branch of [`roundtrip_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchOutcome {
    /// The relation does not meet the branch's precondition.
    NotApplicable { reason: String },
    /// Construction succeeded and reproduced the input exactly.
    Pass { pair: FunctionPair },
    /// Construction succeeded but the derived relation differs — listed as
    /// named pairs present only in the input (`missing`) or only in the
    /// reconstruction (`extra`). Reaching this outcome means a bug.
    Mismatch {
        missing: Vec<(String, String)>,
        extra: Vec<(String, String)>,
    },
}

impl BranchOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, BranchOutcome::Pass { .. })
    }

    pub fn applicable(&self) -> bool {
        !matches!(self, BranchOutcome::NotApplicable { .. })
    }
}

impl fmt::Display for BranchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchOutcome::NotApplicable { reason } => write!(f, "not applicable: {reason}"),
            BranchOutcome::Pass { .. } => write!(f, "pass"),
            BranchOutcome::Mismatch { missing, extra } => {
                write!(f, "MISMATCH (missing {missing:?}, extra {extra:?})")
            }
        }
    }
}

/// Runs both constructions against `r` and reports, per branch, whether the
/// reconstruction reproduces `r` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub kd45: BranchOutcome,
    pub equivalence: BranchOutcome,
}

pub fn roundtrip_check(r: &Relation) -> RoundtripReport {
    let kd45 = match from_kd45(r) {
        Err(e) => BranchOutcome::NotApplicable { reason: e.to_string() },
        Ok(pair) => {
            let d = pair.doxastic();
            if d == *r {
                BranchOutcome::Pass { pair }
            } else {
                BranchOutcome::Mismatch {
                    missing: r.difference(&d).named_pairs(),
                    extra: d.difference(r).named_pairs(),
                }
            }
        }
    };
    let equivalence = match from_equivalence(r) {
        Err(e) => BranchOutcome::NotApplicable { reason: e.to_string() },
        Ok(pair) => {
            let e_rel = pair.epistemic();
            if e_rel == *r {
                BranchOutcome::Pass { pair }
            } else {
                BranchOutcome::Mismatch {
                    missing: r.difference(&e_rel).named_pairs(),
                    extra: e_rel.difference(r).named_pairs(),
                }
            }
        }
    };
    RoundtripReport { kd45, equivalence }
}
