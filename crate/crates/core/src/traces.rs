//! Action-trace state spaces and two correspondences connecting them to the
//! visibility/bias machinery.
//!
//! States are finite action histories: the empty history `0`, or a history
//! followed by one agent's action. A trace is written chronologically and
//! dot-joined — `0.1.2` is "agent 1 acted, then agent 2". The space is
//! truncated at a maximum depth, enumerated in length-lexicographic order
//! with `0` at index zero.
//!
//! Two facts are made executable:
//!
//! * **Indistinguishability.** Agent `a`'s projection keeps exactly `a`'s
//!   actions. Two traces are indistinguishable to `a` when they project
//!   equally, and that kernel is exactly the epistemic relation of the pair
//!   (projection, identity on its image) — projections are idempotent, so
//!   the pair validates.
//! * **Step relations.** The one-step relation `s ↦ s·a` and the terms
//!   built from it (converse, union, star, powers) evaluate to relations;
//!   the symmetric-transitive closure built from the step graph agrees with
//!   the star term. Step edges leaving the truncated space are dropped, so
//!   the comparison is asserted on interior traces and reported separately
//!   on the boundary. The step function itself is *not* a valid bias — it
//!   is partial at the boundary and never idempotent — which is checked
//!   negatively in the tests.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::funcpair::validate_pair;
use crate::relalg::{kernel, Relation, StateFunction, StateSet, StateSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("at least one agent is required")]
    NoAgents,
    #[error("agent label {0:?} must be non-empty and free of '.' and whitespace")]
    BadAgentLabel(String),
    #[error("agent label {0:?} appears twice")]
    DuplicateAgent(String),
    #[error("unknown agent {0:?}")]
    UnknownAgent(String),
}

/// All traces over a finite agent alphabet up to a depth bound.
#[derive(Debug, Clone)]
pub struct TraceSpace {
    agents: Vec<String>,
    depth: usize,
    space: Arc<StateSpace>,
    /// Each trace as a chronological list of agent indices.
    traces: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TraceSpace {
    pub fn new<I, S>(agents: I, depth: usize) -> Result<Self, TraceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let agents: Vec<String> = agents.into_iter().map(Into::into).collect();
        if agents.is_empty() {
            return Err(TraceError::NoAgents);
        }
        for (i, a) in agents.iter().enumerate() {
            if a.is_empty() || a.contains('.') || a.chars().any(char::is_whitespace) {
                return Err(TraceError::BadAgentLabel(a.clone()));
            }
            if agents[..i].contains(a) {
                return Err(TraceError::DuplicateAgent(a.clone()));
            }
        }

        // Breadth-first over lengths gives length-lexicographic order.
        let mut traces: Vec<Vec<usize>> = vec![Vec::new()];
        let mut level_start = 0;
        for _ in 0..depth {
            let level_end = traces.len();
            for t in level_start..level_end {
                for a in 0..agents.len() {
                    let mut next = traces[t].clone();
                    next.push(a);
                    traces.push(next);
                }
            }
            level_start = level_end;
        }
        let names: Vec<String> = traces
            .iter()
            .map(|t| {
                let mut name = String::from("0");
                for &a in t {
                    name.push('.');
                    name.push_str(&agents[a]);
                }
                name
            })
            .collect();
        let space = StateSpace::new(names).expect("trace enumeration yields distinct non-empty names");
        let index = traces
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(TraceSpace {
            agents,
            depth,
            space,
            traces,
            index,
        })
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The chronological agent indices of trace `i`.
    pub fn trace(&self, i: usize) -> &[usize] {
        &self.traces[i]
    }

    fn agent_index(&self, agent: &str) -> Result<usize, TraceError> {
        self.agents
            .iter()
            .position(|a| a == agent)
            .ok_or_else(|| TraceError::UnknownAgent(agent.to_string()))
    }

    /// The traces that can still act without leaving the truncation.
    pub fn interior(&self) -> StateSet {
        StateSet::from_indices(
            &self.space,
            (0..self.traces.len()).filter(|&i| self.traces[i].len() < self.depth),
        )
    }

    /// Agent `a`'s view of each trace: its own actions, in order. Total,
    /// and idempotent because a projected trace is all own-actions.
    pub fn projection(&self, agent: &str) -> Result<StateFunction, TraceError> {
        let a = self.agent_index(agent)?;
        let values = self
            .traces
            .iter()
            .map(|t| {
                let seen: Vec<usize> = t.iter().copied().filter(|&x| x == a).collect();
                self.index[&seen]
            })
            .collect();
        Ok(StateFunction::total_from_vec(&self.space, values))
    }

    /// One application of the projection.
    pub fn project(&self, agent: &str, state: usize) -> Result<usize, TraceError> {
        let p = self.projection(agent)?;
        Ok(p.apply(state).expect("projections are total"))
    }

    /// The partial function `s ↦ s·a`, undefined at the depth boundary.
    pub fn step_function(&self, agent: &str) -> Result<StateFunction, TraceError> {
        let a = self.agent_index(agent)?;
        let entries = (0..self.traces.len()).filter_map(|i| {
            if self.traces[i].len() >= self.depth {
                return None;
            }
            let mut next = self.traces[i].clone();
            next.push(a);
            Some((i, self.index[&next]))
        });
        Ok(StateFunction::from_entries(&self.space, entries))
    }

    /// The one-step relation of [`TraceSpace::step_function`].
    pub fn step_relation(&self, agent: &str) -> Result<Relation, TraceError> {
        let f = self.step_function(agent)?;
        Ok(Relation::from_pairs(
            &self.space,
            (0..self.len()).filter_map(|i| f.apply(i).map(|j| (i, j))),
        ))
    }

    /// Traces `a` cannot tell apart: the kernel of `a`'s projection.
    pub fn indistinguishability(&self, agent: &str) -> Result<Relation, TraceError> {
        Ok(kernel(&self.projection(agent)?))
    }
}

/// Terms denoting relations over a trace space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionTerm {
    /// One agent acts once.
    Prim(String),
    IdTerm,
    Converse(Box<ActionTerm>),
    Union(Box<ActionTerm>, Box<ActionTerm>),
    /// Reflexive-transitive closure.
    Star(Box<ActionTerm>),
    /// n-fold composition; `Power(_, 0)` is the identity.
    Power(Box<ActionTerm>, usize),
}

/// Evaluates a term compositionally. Primitive edges whose target would
/// exceed the depth bound are dropped.
pub fn pdl_relation(ts: &TraceSpace, term: &ActionTerm) -> Result<Relation, TraceError> {
    Ok(match term {
        ActionTerm::Prim(agent) => ts.step_relation(agent)?,
        ActionTerm::IdTerm => Relation::identity(ts.space()),
        ActionTerm::Converse(t) => pdl_relation(ts, t)?.converse(),
        ActionTerm::Union(t, u) => pdl_relation(ts, t)?.union(&pdl_relation(ts, u)?),
        ActionTerm::Star(t) => pdl_relation(ts, t)?.reflexive_transitive_closure(),
        ActionTerm::Power(t, n) => {
            let r = pdl_relation(ts, t)?;
            let mut acc = Relation::identity(ts.space());
            for _ in 0..*n {
                acc = acc.compose(&r);
            }
            acc
        }
    })
}

/// Outcome of comparing two relations, with named pair diffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideBySide {
    pub matched: bool,
    /// Pairs the right side has and the left side lacks.
    pub missing: Vec<(String, String)>,
    /// Pairs the left side has and the right side lacks.
    pub extra: Vec<(String, String)>,
}

fn side_by_side(left: &Relation, right: &Relation) -> SideBySide {
    let missing = right.difference(left).named_pairs();
    let extra = left.difference(right).named_pairs();
    SideBySide {
        matched: missing.is_empty() && extra.is_empty(),
        missing,
        extra,
    }
}

/// Result of [`verify_indist_correspondence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndistReport {
    pub agent: String,
    /// Constructed epistemic relation vs. projection kernel.
    pub comparison: SideBySide,
}

/// Builds the pair (projection, identity on its image) — valid because
/// projections are idempotent — and compares its epistemic relation with
/// the projection kernel. The two must coincide.
pub fn verify_indist_correspondence(ts: &TraceSpace, agent: &str) -> Result<IndistReport, TraceError> {
    let projection = ts.projection(agent)?;
    let identity_on_image = StateFunction::identity_on(&projection.image());
    let pair = validate_pair(projection, identity_on_image)
        .expect("a projection is total and idempotent, so the pair always validates");
    let constructed = pair.epistemic();
    let observed = ts.indistinguishability(agent)?;
    Ok(IndistReport {
        agent: agent.to_string(),
        comparison: side_by_side(&constructed, &observed),
    })
}

/// Result of [`verify_pdl_correspondence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdlReport {
    pub agent: String,
    /// Comparison restricted to pairs of interior traces, where truncation
    /// cannot interfere.
    pub interior: SideBySide,
    /// Comparison of the remaining pairs (at least one boundary endpoint).
    pub boundary: SideBySide,
}

/// Compares `id ∪ (G ∪ G⁻¹)⁺` — the epistemic construction applied to the
/// step graph `G` of one agent — against the star term
/// `(step ∪ step⁻¹)*`, splitting the verdict into interior and boundary
/// pairs of the truncated space.
pub fn verify_pdl_correspondence(ts: &TraceSpace, agent: &str) -> Result<PdlReport, TraceError> {
    let g = ts.step_relation(agent)?;
    let constructed = Relation::identity(ts.space()).union(&g.union(&g.converse()).transitive_closure());
    let star = pdl_relation(
        ts,
        &ActionTerm::Star(Box::new(ActionTerm::Union(
            Box::new(ActionTerm::Prim(agent.to_string())),
            Box::new(ActionTerm::Converse(Box::new(ActionTerm::Prim(agent.to_string())))),
        ))),
    )?;
    let interior = ts.interior();
    let interior_cmp = side_by_side(&constructed.restrict(&interior), &star.restrict(&interior));
    let boundary_cmp = side_by_side(
        &constructed.difference(&constructed.restrict(&interior)),
        &star.difference(&star.restrict(&interior)),
    );
    Ok(PdlReport {
        agent: agent.to_string(),
        interior: interior_cmp,
        boundary: boundary_cmp,
    })
}
