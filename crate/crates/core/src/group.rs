//! Distributed and common belief/knowledge over a community of agents.
//!
//! Given one relation per agent, the four group relations are pure
//! relation algebra:
//!
//! * distributed belief — the intersection of the members' belief relations;
//! * common belief — the transitive closure of their union;
//! * distributed knowledge — the intersection of the knowledge relations;
//! * common knowledge — the reflexive-transitive closure of their union.
//!
//! Distributed and common *knowledge* are again equivalence relations, so
//! they stay inside the synthesizable S5 fragment. Distributed *belief*
//! enjoys no such guarantee: the intersection of serial relations can
//! be empty, and an empty relation is returned as-is rather than patched.
//! Nothing here requires the members to share a bias function; communities
//! are typically built from per-agent pairs over one state space.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::funcpair::FunctionPair;
use crate::relalg::{Closure, Relation, StateSpace};

/// The four group modalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    DistributedBelief,
    CommonBelief,
    DistributedKnowledge,
    CommonKnowledge,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::DistributedBelief => "distributed belief",
            GroupKind::CommonBelief => "common belief",
            GroupKind::DistributedKnowledge => "distributed knowledge",
            GroupKind::CommonKnowledge => "common knowledge",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("a community needs at least one member")]
    Empty,
    #[error("duplicate member label: {0:?}")]
    DuplicateLabel(String),
    #[error("member {0:?} lives on a different state space")]
    SpaceMismatch(String),
}

/// A non-empty set of labelled agents sharing one state space.
#[derive(Debug, Clone)]
pub struct Community {
    space: Arc<StateSpace>,
    members: Vec<(String, FunctionPair)>,
}

impl Community {
    pub fn new<I, S>(members: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = (S, FunctionPair)>,
        S: Into<String>,
    {
        let members: Vec<(String, FunctionPair)> =
            members.into_iter().map(|(l, p)| (l.into(), p)).collect();
        let Some(space) = members.first().map(|(_, p)| Arc::clone(p.space())) else {
            return Err(GroupError::Empty);
        };
        for (i, (label, pair)) in members.iter().enumerate() {
            if pair.space().as_ref() != space.as_ref() {
                return Err(GroupError::SpaceMismatch(label.clone()));
            }
            if members[..i].iter().any(|(other, _)| other == label) {
                return Err(GroupError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Community { space, members })
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn members(&self) -> impl Iterator<Item = (&str, &FunctionPair)> {
        self.members.iter().map(|(l, p)| (l.as_str(), p))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Intersection of a non-empty list of relations.
///
/// # Panics
/// Panics on an empty list or mixed spaces.
pub fn distributed_of(rels: &[Relation]) -> Relation {
    let (first, rest) = rels.split_first().expect("distributed_of needs at least one relation");
    rest.iter().fold(first.clone(), |acc, r| acc.intersection(r))
}

/// Closure of the union of a non-empty list of relations: transitive for
/// common belief, reflexive-transitive for common knowledge.
///
/// # Panics
/// Panics on an empty list or mixed spaces.
pub fn common_of(rels: &[Relation], closure: Closure) -> Relation {
    let (first, rest) = rels.split_first().expect("common_of needs at least one relation");
    rest.iter().fold(first.clone(), |acc, r| acc.union(r)).closure(closure)
}

/// The group accessibility relation for `kind` over the community's
/// members, derived from each member's own belief or knowledge relation.
pub fn group_relation(community: &Community, kind: GroupKind) -> Relation {
    let rels: Vec<Relation> = community
        .members
        .iter()
        .map(|(_, pair)| match kind {
            GroupKind::DistributedBelief | GroupKind::CommonBelief => pair.doxastic(),
            GroupKind::DistributedKnowledge | GroupKind::CommonKnowledge => pair.epistemic(),
        })
        .collect();
    match kind {
        GroupKind::DistributedBelief | GroupKind::DistributedKnowledge => distributed_of(&rels),
        GroupKind::CommonBelief => common_of(&rels, Closure::Transitive),
        GroupKind::CommonKnowledge => common_of(&rels, Closure::ReflexiveTransitive),
    }
}
