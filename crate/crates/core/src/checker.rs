//! Satisfaction, per-model validity, and the executable law suites.
//!
//! [`Evaluator`] computes formula extensions bottom-up with memoization;
//! [`law_suite`] instantiates the belief/knowledge axiom schemas and the
//! conditional laws over a bounded formula pool; [`iff_condition_checks`]
//! decides the two biconditional laws at the frame level.
//!
//! Two evaluation-strategy notes:
//!
//! * Schematic laws depend on instantiated subformulas only through their
//!   extensions, so the suite groups the pool by extension and checks one
//!   representative per class — exact, and it keeps the instance count at
//!   `min(pool, 2^|S|)` per schema slot.
//! * The biconditionals relate validity to a property of the bias function.
//!   Deciding them against the model's own valuation would be unsound: a
//!   coarse valuation can make `K[a] phi <-> B[a] phi` hold for every
//!   formula even though the bias is not the identity. The checks therefore
//!   quantify over *all* state subsets as candidate extensions (frame
//!   validity), which is decidable here and agrees with the relation-level
//!   characterizations.

use std::collections::HashMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::formulas::{render, Formula};
use crate::group::{common_of, distributed_of, GroupKind};
use crate::relalg::{Closure, Relation, StateSet};
use crate::signature::{LabeledRelation, Model};
use thiserror::Error;

/// A formula together with the states where it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub formula: Formula,
    pub states: StateSet,
}

/// Why evaluation failed: the formula mentions something the model lacks.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("formula mentions unknown atom {0:?}")]
    UnknownAtom(String),
    #[error("formula mentions unknown {kind} label {label:?}")]
    UnknownLabel { kind: &'static str, label: String },
}

/// Validity of one formula in one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validity {
    pub valid: bool,
    /// A state where the formula fails, when it is not valid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Bottom-up formula evaluation over one model, memoized per subformula and
/// per group-relation so repeated law instances stay cheap.
pub struct Evaluator<'m> {
    model: &'m Model,
    memo: HashMap<Formula, StateSet>,
    groups: HashMap<(GroupKind, Vec<String>), Relation>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m Model) -> Self {
        Evaluator {
            model,
            memo: HashMap::new(),
            groups: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'m Model {
        self.model
    }

    fn labeled(&self, kind: &'static str, label: &str) -> Result<&'m LabeledRelation, CheckError> {
        let found = match kind {
            "belief" => self.model.belief(label),
            _ => self.model.knowledge(label),
        };
        found.ok_or(CheckError::UnknownLabel {
            kind,
            label: label.to_string(),
        })
    }

    fn group(&mut self, kind: GroupKind, labels: &[String]) -> Result<Relation, CheckError> {
        let mut key: Vec<String> = labels.to_vec();
        key.sort();
        key.dedup();
        if let Some(r) = self.groups.get(&(kind, key.clone())) {
            return Ok(r.clone());
        }
        let side = match kind {
            GroupKind::DistributedBelief | GroupKind::CommonBelief => "belief",
            _ => "knowledge",
        };
        let rels: Vec<Relation> = key
            .iter()
            .map(|l| self.labeled(side, l).map(|lr| lr.relation.clone()))
            .collect::<Result<_, _>>()?;
        let relation = match kind {
            GroupKind::DistributedBelief | GroupKind::DistributedKnowledge => distributed_of(&rels),
            GroupKind::CommonBelief => common_of(&rels, Closure::Transitive),
            GroupKind::CommonKnowledge => common_of(&rels, Closure::ReflexiveTransitive),
        };
        self.groups.insert((kind, key), relation.clone());
        Ok(relation)
    }

    /// The set of states satisfying `formula`.
    pub fn extension_of(&mut self, formula: &Formula) -> Result<StateSet, CheckError> {
        if let Some(hit) = self.memo.get(formula) {
            return Ok(hit.clone());
        }
        let space = self.model.space();
        let states = match formula {
            Formula::Atom(name) => self
                .model
                .atom_extension(name)
                .ok_or_else(|| CheckError::UnknownAtom(name.clone()))?
                .clone(),
            Formula::Bottom => StateSet::empty(space),
            Formula::Not(x) => self.extension_of(x)?.complement(),
            Formula::And(a, b) => self.extension_of(a)?.intersection(&self.extension_of(b)?),
            Formula::Or(a, b) => self.extension_of(a)?.union(&self.extension_of(b)?),
            Formula::Implies(a, b) => self.extension_of(a)?.complement().union(&self.extension_of(b)?),
            Formula::Iff(a, b) => {
                let (ea, eb) = (self.extension_of(a)?, self.extension_of(b)?);
                ea.intersection(&eb).union(&ea.complement().intersection(&eb.complement()))
            }
            Formula::Belief(label, x) => {
                let inner = self.extension_of(x)?;
                self.labeled("belief", label)?.relation.box_over(&inner)
            }
            Formula::Knowledge(label, x) => {
                let inner = self.extension_of(x)?;
                self.labeled("knowledge", label)?.relation.box_over(&inner)
            }
            Formula::DistributedBelief(labels, x) => {
                let inner = self.extension_of(x)?;
                self.group(GroupKind::DistributedBelief, labels)?.box_over(&inner)
            }
            Formula::CommonBelief(labels, x) => {
                let inner = self.extension_of(x)?;
                self.group(GroupKind::CommonBelief, labels)?.box_over(&inner)
            }
            Formula::DistributedKnowledge(labels, x) => {
                let inner = self.extension_of(x)?;
                self.group(GroupKind::DistributedKnowledge, labels)?.box_over(&inner)
            }
            Formula::CommonKnowledge(labels, x) => {
                let inner = self.extension_of(x)?;
                self.group(GroupKind::CommonKnowledge, labels)?.box_over(&inner)
            }
        };
        self.memo.insert(formula.clone(), states.clone());
        Ok(states)
    }

    /// Validity in the model: the extension is the full space.
    pub fn validity_of(&mut self, formula: &Formula) -> Result<Validity, CheckError> {
        let ext = self.extension_of(formula)?;
        let counterexample = ext
            .complement()
            .min()
            .map(|i| self.model.space().name(i).to_string());
        Ok(Validity {
            valid: counterexample.is_none(),
            counterexample,
        })
    }
}

/// One-shot [`Evaluator::extension_of`].
pub fn extension(model: &Model, formula: &Formula) -> Result<Extension, CheckError> {
    let states = Evaluator::new(model).extension_of(formula)?;
    Ok(Extension {
        formula: formula.clone(),
        states,
    })
}

/// One-shot [`Evaluator::validity_of`].
pub fn valid_in_model(model: &Model, formula: &Formula) -> Result<Validity, CheckError> {
    Evaluator::new(model).validity_of(formula)
}

/// Knobs for [`law_suite`] and [`formula_pool`]. The defaults are the
/// CLI's defaults.
#[derive(Debug, Clone)]
pub struct LawSuiteConfig {
    /// Maximum height of instantiating formulas.
    pub depth: usize,
    /// Seed for the deterministic sampling of oversized pool levels.
    pub seed: u64,
    /// Total pool size cap.
    pub pool_budget: usize,
    /// Cap on (phi, psi) pairs fed to two-slot schemas.
    pub pair_budget: usize,
}

impl Default for LawSuiteConfig {
    fn default() -> Self {
        LawSuiteConfig {
            depth: 3,
            seed: 0,
            pool_budget: 2000,
            pair_budget: 4096,
        }
    }
}

/// A concrete instance witnessing a law failure: the state where the
/// instantiated law fails, and the substitution that produced the instance
/// (schema variable, rendered formula or state set).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub state: String,
    pub instantiation: Vec<(String, String)>,
}

/// Verdict for one law in one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LawStatus {
    /// Every generated instance is valid in the model.
    Valid,
    /// Some instance fails; the counterexample pinpoints it.
    Falsified { counterexample: Counterexample },
    /// The law's side condition does not hold for this label. `probe`
    /// reports a counterexample to the unconditioned schema when the
    /// model's own valuation happens to exhibit one.
    NotApplicable {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        probe: Option<Counterexample>,
    },
}

/// Outcome of checking one law schema against one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// Stable law identifier, e.g. `belief-K` or `bias-cancellation`.
    pub law: String,
    /// The label (or rendered group) the law was instantiated for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Human-readable statement of what was checked.
    pub claim: String,
    /// Whether this suite treats a `Falsified` outcome as a failure.
    /// Group-modality laws are reported for information only.
    pub asserted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub status: LawStatus,
}

impl LawReport {
    /// True when this report should fail a run: an asserted law falsified.
    pub fn failed(&self) -> bool {
        self.asserted && matches!(self.status, LawStatus::Falsified { .. })
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = match &self.status {
            LawStatus::Valid => "valid".to_string(),
            LawStatus::Falsified { counterexample } => format!(
                "FALSIFIED at {} with {}",
                counterexample.state,
                counterexample
                    .instantiation
                    .iter()
                    .map(|(v, t)| format!("{v} := {t}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            LawStatus::NotApplicable { reason, probe } => match probe {
                Some(c) => format!("not applicable ({reason}); unconditioned schema fails at {}", c.state),
                None => format!("not applicable ({reason})"),
            },
        };
        let label = self.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
        let flag = if self.asserted { "" } else { " (informational)" };
        let detail = self.detail.as_deref().map(|d| format!(" — {d}")).unwrap_or_default();
        write!(f, "{}{label}{flag}: {} — {verdict}{detail}", self.law, self.claim)
    }
}

/// Builds the instantiation pool: every formula over the model's atoms and
/// labels up to `cfg.depth`, capped at `cfg.pool_budget`. Levels that fit
/// the remaining budget are enumerated exhaustively; an oversized level is
/// sampled deterministically from `cfg.seed`.
pub fn formula_pool(model: &Model, cfg: &LawSuiteConfig) -> Vec<Formula> {
    use crate::formulas::{and, belief, iff, implies, knowledge, not, or};

    let atoms: Vec<&String> = model.valuation().keys().collect();
    let blabels: Vec<&str> = model.belief_relations().map(|(l, _)| l).collect();
    let klabels: Vec<&str> = model.knowledge_relations().map(|(l, _)| l).collect();

    let mut pool: Vec<Formula> = Vec::new();
    let mut levels: Vec<std::ops::Range<usize>> = Vec::new();
    let mut base: Vec<Formula> = atoms.iter().map(|a| Formula::Atom((*a).clone())).collect();
    base.push(Formula::Bottom);
    base.truncate(cfg.pool_budget.max(1));
    levels.push(0..base.len());
    pool.extend(base);

    type Unary = Box<dyn Fn(Formula) -> Formula>;
    let mut unary_ops: Vec<Unary> = vec![Box::new(not)];
    for l in &blabels {
        let l = l.to_string();
        unary_ops.push(Box::new(move |f| belief(l.clone(), f)));
    }
    for l in &klabels {
        let l = l.to_string();
        unary_ops.push(Box::new(move |f| knowledge(l.clone(), f)));
    }
    let binary_ops: [fn(Formula, Formula) -> Formula; 4] = [and, or, implies, iff];

    for level in 2..=cfg.depth.max(1) {
        let remaining = cfg.pool_budget.saturating_sub(pool.len());
        if remaining == 0 {
            break;
        }
        let prev = levels[level - 2].clone();
        let all = 0..pool.len();
        // A node has height `level` exactly when its tallest child has
        // height `level - 1`.
        let exact = unary_ops.len() * prev.len()
            + binary_ops.len() * (all.len() * all.len() - (all.len() - prev.len()) * (all.len() - prev.len()));
        let start = pool.len();
        if exact <= remaining {
            let mut next = Vec::with_capacity(exact);
            for op in &unary_ops {
                for i in prev.clone() {
                    next.push(op(pool[i].clone()));
                }
            }
            for op in &binary_ops {
                for a in all.clone() {
                    for b in all.clone() {
                        if a >= prev.start || b >= prev.start {
                            next.push(op(pool[a].clone(), pool[b].clone()));
                        }
                    }
                }
            }
            pool.extend(next);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (level as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut seen: std::collections::HashSet<Formula> = std::collections::HashSet::new();
            let mut attempts = 0usize;
            while pool.len() - start < remaining && attempts < remaining * 8 {
                attempts += 1;
                let candidate = if rng.gen_range(0..unary_ops.len() + 4 * binary_ops.len()) < unary_ops.len() {
                    let op = &unary_ops[rng.gen_range(0..unary_ops.len())];
                    op(pool[rng.gen_range(prev.clone())].clone())
                } else {
                    let op = binary_ops[rng.gen_range(0..binary_ops.len())];
                    let tall = rng.gen_range(prev.clone());
                    let other = rng.gen_range(0..prev.end);
                    if rng.gen_bool(0.5) {
                        op(pool[tall].clone(), pool[other].clone())
                    } else {
                        op(pool[other].clone(), pool[tall].clone())
                    }
                };
                if seen.insert(candidate.clone()) {
                    pool.push(candidate);
                }
            }
        }
        levels.push(start..pool.len());
    }
    pool
}

/// The distinct extensions realized by the pool, one representative formula
/// per extension, in a deterministic order.
fn extension_classes(eval: &mut Evaluator<'_>, pool: &[Formula]) -> Vec<(StateSet, Formula)> {
    let mut classes: std::collections::BTreeMap<Vec<usize>, Formula> = std::collections::BTreeMap::new();
    for f in pool {
        let ext = eval
            .extension_of(f)
            .expect("pool formulas only mention the model's own atoms and labels");
        classes.entry(ext.iter().collect()).or_insert_with(|| f.clone());
    }
    let space = eval.model().space();
    classes
        .into_iter()
        .map(|(idx, f)| (StateSet::from_indices(space, idx), f))
        .collect()
}

fn counterexample(model: &Model, law_ext: &StateSet, inst: Vec<(String, String)>) -> Counterexample {
    let bad = law_ext
        .complement()
        .min()
        .expect("counterexamples are only built for non-valid instances");
    Counterexample {
        state: model.space().name(bad).to_string(),
        instantiation: inst,
    }
}

/// Checks a one-variable schema over every extension class; returns the
/// first counterexample.
fn check_unary(
    model: &Model,
    classes: &[(StateSet, Formula)],
    law_of: impl Fn(&StateSet) -> StateSet,
) -> LawStatus {
    for (ext, rep) in classes {
        let law_ext = law_of(ext);
        if !law_ext.is_full() {
            return LawStatus::Falsified {
                counterexample: counterexample(model, &law_ext, vec![("phi".into(), render(rep))]),
            };
        }
    }
    LawStatus::Valid
}

fn check_pairs(
    model: &Model,
    classes: &[(StateSet, Formula)],
    pair_budget: usize,
    law_of: impl Fn(&StateSet, &StateSet) -> StateSet,
) -> LawStatus {
    let mut budget = pair_budget;
    for (x, fx) in classes {
        for (y, fy) in classes {
            if budget == 0 {
                return LawStatus::Valid;
            }
            budget -= 1;
            let law_ext = law_of(x, y);
            if !law_ext.is_full() {
                return LawStatus::Falsified {
                    counterexample: counterexample(
                        model,
                        &law_ext,
                        vec![("phi".into(), render(fx)), ("psi".into(), render(fy))],
                    ),
                };
            }
        }
    }
    LawStatus::Valid
}

/// Searches the classes for a counterexample to an unconditioned schema —
/// used to probe laws whose side condition failed.
fn probe_unary(
    model: &Model,
    classes: &[(StateSet, Formula)],
    law_of: impl Fn(&StateSet) -> StateSet,
) -> Option<Counterexample> {
    match check_unary(model, classes, law_of) {
        LawStatus::Falsified { counterexample } => Some(counterexample),
        _ => None,
    }
}

struct SuiteBuilder<'m> {
    model: &'m Model,
    classes: Vec<(StateSet, Formula)>,
    pair_budget: usize,
    reports: Vec<LawReport>,
}

impl<'m> SuiteBuilder<'m> {
    fn push(&mut self, law: &str, label: Option<&str>, claim: String, asserted: bool, status: LawStatus) {
        self.reports.push(LawReport {
            law: law.to_string(),
            label: label.map(str::to_string),
            claim,
            asserted,
            detail: None,
            status,
        });
    }

    /// The five KD45/S5 schemas for one relation. `truth_not_consistency`
    /// selects the T law (knowledge) over the D law (belief).
    fn modal_laws(&mut self, prefix: &str, label: &str, modality: &str, r: &Relation, truth_not_consistency: bool, asserted: bool) {
        let k = check_pairs(self.model, &self.classes, self.pair_budget, |x, y| {
            // M(phi -> psi) -> (M phi -> M psi)
            r.box_over(&x.complement().union(y))
                .complement()
                .union(&r.box_over(x).complement())
                .union(&r.box_over(y))
        });
        self.push(
            &format!("{prefix}-K"),
            Some(label),
            format!("{modality} (phi -> psi) -> ({modality} phi -> {modality} psi)"),
            asserted,
            k,
        );
        if truth_not_consistency {
            let t = check_unary(self.model, &self.classes, |x| r.box_over(x).complement().union(x));
            self.push(
                &format!("{prefix}-T"),
                Some(label),
                format!("{modality} phi -> phi"),
                asserted,
                t,
            );
        } else {
            let d = check_unary(self.model, &self.classes, |x| {
                r.box_over(x)
                    .complement()
                    .union(&r.box_over(&x.complement()).complement())
            });
            self.push(
                &format!("{prefix}-D"),
                Some(label),
                format!("{modality} phi -> ~{modality} ~phi"),
                asserted,
                d,
            );
        }
        let four = check_unary(self.model, &self.classes, |x| {
            let bx = r.box_over(x);
            bx.complement().union(&r.box_over(&bx))
        });
        self.push(
            &format!("{prefix}-4"),
            Some(label),
            format!("{modality} phi -> {modality} {modality} phi"),
            asserted,
            four,
        );
        let five = check_unary(self.model, &self.classes, |x| {
            let bx = r.box_over(x);
            bx.union(&r.box_over(&bx.complement()))
        });
        self.push(
            &format!("{prefix}-5"),
            Some(label),
            format!("~{modality} phi -> {modality} ~{modality} phi"),
            asserted,
            five,
        );
        // Necessitation: every valid instance stays valid under the box.
        let mut nec = LawStatus::Valid;
        for (ext, rep) in &self.classes {
            if ext.is_full() {
                let law_ext = r.box_over(ext);
                if !law_ext.is_full() {
                    nec = LawStatus::Falsified {
                        counterexample: counterexample(self.model, &law_ext, vec![("phi".into(), render(rep))]),
                    };
                    break;
                }
            }
        }
        self.push(
            &format!("{prefix}-N"),
            Some(label),
            format!("if phi is valid then {modality} phi is valid"),
            asserted,
            nec,
        );
    }
}

/// Instantiates every law schema over the pool and reports one verdict per
/// (law, label). Belief labels get the KD45 suite, knowledge labels the S5
/// suite, and labels meeting the side conditions get the conditional laws;
/// group-modality laws are reported without being asserted.
pub fn law_suite(model: &Model, cfg: &LawSuiteConfig) -> Vec<LawReport> {
    let pool = formula_pool(model, cfg);
    let mut eval = Evaluator::new(model);
    let classes = extension_classes(&mut eval, &pool);
    let mut b = SuiteBuilder {
        model,
        classes,
        pair_budget: cfg.pair_budget,
        reports: Vec::new(),
    };

    for (label, lr) in model.belief_relations() {
        b.modal_laws("belief", label, &format!("B[{label}]"), &lr.relation, false, true);
    }
    for (label, lr) in model.knowledge_relations() {
        b.modal_laws("knowledge", label, &format!("K[{label}]"), &lr.relation, true, true);
    }
    conditional_laws(model, &mut b);
    group_laws(model, &mut eval, &mut b);
    b.reports
}

/// The conditional laws: checked exactly when their side condition holds,
/// probed for counterexamples to the unconditioned schema otherwise.
fn conditional_laws(model: &Model, b: &mut SuiteBuilder<'_>) {
    let labels: Vec<String> = model.belief_relations().map(|(l, _)| l.to_string()).collect();
    let klabels: Vec<String> = model.knowledge_relations().map(|(l, _)| l.to_string()).collect();

    for label in &klabels {
        let k = model.knowledge(label).unwrap();
        let shared_belief = model.belief(label).filter(|belief| belief.pair == k.pair && k.pair.is_some());

        // knowledge implies belief: needs the label to mean the same pair
        // on both sides.
        let claim = format!("K[{label}] phi -> B[{label}] phi");
        match (&shared_belief, model.belief(label)) {
            (Some(belief), _) => {
                let (d, e) = (belief.relation.clone(), k.relation.clone());
                let status = check_unary(b.model, &b.classes, |x| {
                    e.box_over(x).complement().union(&d.box_over(x))
                });
                b.push("knowledge-implies-belief", Some(label), claim, true, status);
            }
            (None, Some(belief)) => {
                let (d, e) = (belief.relation.clone(), k.relation.clone());
                let probe = probe_unary(b.model, &b.classes, |x| {
                    e.box_over(x).complement().union(&d.box_over(x))
                });
                b.push(
                    "knowledge-implies-belief",
                    Some(label),
                    claim,
                    true,
                    LawStatus::NotApplicable {
                        reason: format!("B[{label}] and K[{label}] do not come from the same function pair"),
                        probe,
                    },
                );
            }
            (None, None) => b.push(
                "knowledge-implies-belief",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable {
                    reason: format!("no belief label {label:?}"),
                    probe: None,
                },
            ),
        }

        // knowledge as unbiased belief: K <-> B when the bias is the
        // identity on the visible image.
        let claim = format!("K[{label}] phi <-> B[{label}] phi");
        match shared_belief {
            Some(belief) => {
                let unbiased = belief.pair.as_ref().is_some_and(|p| p.is_unbiased());
                let (d, e) = (belief.relation.clone(), k.relation.clone());
                let law = |x: &StateSet| {
                    let (kx, bx) = (e.box_over(x), d.box_over(x));
                    kx.intersection(&bx).union(&kx.complement().intersection(&bx.complement()))
                };
                if unbiased {
                    let status = check_unary(b.model, &b.classes, law);
                    b.push("knowledge-as-unbiased-belief", Some(label), claim, true, status);
                } else {
                    let probe = probe_unary(b.model, &b.classes, law);
                    b.push(
                        "knowledge-as-unbiased-belief",
                        Some(label),
                        claim,
                        true,
                        LawStatus::NotApplicable {
                            reason: "the bias is not the identity on the visible image".to_string(),
                            probe,
                        },
                    );
                }
            }
            None => b.push(
                "knowledge-as-unbiased-belief",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable {
                    reason: format!("B[{label}] and K[{label}] do not share a declared function pair"),
                    probe: None,
                },
            ),
        }
    }

    for label in &labels {
        let belief = model.belief(label).unwrap();
        let d = belief.relation.clone();

        // unbiased belief is true belief.
        let claim = format!("B[{label}] phi -> phi");
        let law = |x: &StateSet| d.box_over(x).complement().union(x);
        match &belief.pair {
            Some(p) if p.is_unbiased() => {
                let status = check_unary(b.model, &b.classes, law);
                b.push("unbiased-belief-is-true", Some(label), claim, true, status);
            }
            Some(_) => {
                let probe = probe_unary(b.model, &b.classes, law);
                b.push(
                    "unbiased-belief-is-true",
                    Some(label),
                    claim,
                    true,
                    LawStatus::NotApplicable {
                        reason: "the bias is not the identity on the visible image".to_string(),
                        probe,
                    },
                );
            }
            None => b.push(
                "unbiased-belief-is-true",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable {
                    reason: "relation was overridden; no declared pair to inspect".to_string(),
                    probe: None,
                },
            ),
        }

        // negation-complete belief: with identity visibility the belief
        // relation is functional, so ~B phi -> B ~phi.
        let claim = format!("~B[{label}] phi -> B[{label}] ~phi");
        let law = |x: &StateSet| {
            d.box_over(x).union(&d.box_over(&x.complement()))
        };
        match &belief.pair {
            Some(p) if p.visibility().is_identity_on(&StateSet::full(model.space())) => {
                let status = check_unary(b.model, &b.classes, law);
                b.push("negation-complete-belief", Some(label), claim, true, status);
            }
            Some(_) => {
                let probe = probe_unary(b.model, &b.classes, law);
                b.push(
                    "negation-complete-belief",
                    Some(label),
                    claim,
                    true,
                    LawStatus::NotApplicable {
                        reason: "the visibility is not the identity".to_string(),
                        probe,
                    },
                );
            }
            None => b.push(
                "negation-complete-belief",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable {
                    reason: "relation was overridden; no declared pair to inspect".to_string(),
                    probe: None,
                },
            ),
        }
    }

    // perfect knowledge (and perfect knowledge as precise belief): both the
    // visibility and the bias are identities.
    for label in &klabels {
        let k = model.knowledge(label).unwrap();
        let e = k.relation.clone();
        let perfect = k.pair.as_ref().is_some_and(|p| {
            let full = StateSet::full(model.space());
            p.visibility().is_identity_on(&full) && p.bias().is_identity_on(p.visible_image())
        });
        let claim = format!("phi -> K[{label}] phi");
        let law = |x: &StateSet| x.complement().union(&e.box_over(x));
        if perfect {
            let status = check_unary(b.model, &b.classes, law);
            b.push("perfect-knowledge", Some(label), claim, true, status);
        } else {
            let probe = probe_unary(b.model, &b.classes, law);
            let reason = if k.pair.is_none() {
                "relation was overridden; no declared pair to inspect".to_string()
            } else {
                "the visibility and bias are not both identities".to_string()
            };
            b.push(
                "perfect-knowledge",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable { reason, probe },
            );
        }

        let shared_belief = model.belief(label).filter(|belief| belief.pair == k.pair && k.pair.is_some());
        let claim = format!("K[{label}] phi <-> B[{label}] phi");
        match shared_belief {
            Some(belief) if perfect => {
                let d = belief.relation.clone();
                let status = check_unary(b.model, &b.classes, |x| {
                    let (kx, bx) = (e.box_over(x), d.box_over(x));
                    kx.intersection(&bx).union(&kx.complement().intersection(&bx.complement()))
                });
                b.push("perfect-knowledge-as-precise-belief", Some(label), claim, true, status);
            }
            _ => b.push(
                "perfect-knowledge-as-precise-belief",
                Some(label),
                claim,
                true,
                LawStatus::NotApplicable {
                    reason: if perfect {
                        format!("B[{label}] and K[{label}] do not share a declared function pair")
                    } else {
                        "the visibility and bias are not both identities".to_string()
                    },
                    probe: None,
                },
            ),
        }
    }
}

/// Group-modality reports. The suite computes the verdicts but does not
/// assert them: no general laws are claimed for these modalities.
fn group_laws(model: &Model, eval: &mut Evaluator<'_>, b: &mut SuiteBuilder<'_>) {
    let blabels: Vec<String> = model.belief_relations().map(|(l, _)| l.to_string()).collect();
    let klabels: Vec<String> = model.knowledge_relations().map(|(l, _)| l.to_string()).collect();
    let mut run = |kind: GroupKind, labels: &[String], prefix: &str, truth: bool| {
        if labels.is_empty() {
            return;
        }
        let relation = eval
            .group(kind, labels)
            .expect("group members come straight from the model's label maps");
        let shown = format!("{kind}{{{}}}", labels.join(","));
        b.modal_laws(prefix, &shown, &shown, &relation, truth, false);
    };
    run(GroupKind::DistributedBelief, &blabels, "group-distributed-belief", false);
    run(GroupKind::CommonBelief, &blabels, "group-common-belief", false);
    run(GroupKind::DistributedKnowledge, &klabels, "group-distributed-knowledge", true);
    run(GroupKind::CommonKnowledge, &klabels, "group-common-knowledge", true);
}

/// Largest space size for which the biconditional checks sweep every subset
/// as a candidate extension; beyond it the relation-level route (provably
/// equivalent) is used alone.
const MASK_SWEEP_LIMIT: usize = 16;

fn sweep(space_len: usize) -> bool {
    space_len <= MASK_SWEEP_LIMIT
}

/// Frame validity of `K phi <-> B phi`: no subset separates the boxes.
fn frame_valid_k_iff_b(d: &Relation, e: &Relation) -> bool {
    let relation_level = d == e;
    let n = d.space().len();
    if sweep(n) {
        let space = d.space();
        let semantic = (0u64..(1u64 << n)).all(|mask| {
            let x = StateSet::from_bits(space, mask);
            d.box_over(&x) == e.box_over(&x)
        });
        assert_eq!(
            semantic, relation_level,
            "subset sweep must agree with the relation-level equality"
        );
    }
    relation_level
}

/// Frame validity of `~K phi -> K ~phi` over an equivalence: every class is
/// a singleton.
fn frame_valid_negation_complete(e: &Relation) -> bool {
    let relation_level = *e == Relation::identity(e.space());
    let n = e.space().len();
    if sweep(n) {
        let space = e.space();
        let semantic = (0u64..(1u64 << n)).all(|mask| {
            let x = StateSet::from_bits(space, mask);
            e.box_over(&x).union(&e.box_over(&x.complement())).is_full()
        });
        assert_eq!(
            semantic, relation_level,
            "subset sweep must agree with the identity-relation test"
        );
    }
    relation_level
}

/// Frame validity of `phi -> K phi`.
fn frame_valid_truth_to_knowledge(e: &Relation) -> bool {
    let relation_level = *e == Relation::identity(e.space());
    let n = e.space().len();
    if sweep(n) {
        let space = e.space();
        let semantic = (0u64..(1u64 << n)).all(|mask| {
            let x = StateSet::from_bits(space, mask);
            x.is_subset(&e.box_over(&x))
        });
        assert_eq!(
            semantic, relation_level,
            "subset sweep must agree with the identity-relation test"
        );
    }
    relation_level
}

fn side_report(law: &str, label: &str, claim: String, semantic: bool, semantic_text: &str, functional: bool, functional_text: &str) -> LawReport {
    let status = if semantic == functional {
        LawStatus::Valid
    } else {
        // The mathematics rules this out; reaching it means a bug upstream.
        LawStatus::Falsified {
            counterexample: Counterexample {
                state: String::new(),
                instantiation: vec![
                    (semantic_text.to_string(), semantic.to_string()),
                    (functional_text.to_string(), functional.to_string()),
                ],
            },
        }
    };
    LawReport {
        law: law.to_string(),
        label: Some(label.to_string()),
        claim,
        asserted: true,
        detail: Some(format!(
            "{semantic_text}: {semantic}; {functional_text}: {functional}"
        )),
        status,
    }
}

/// The two biconditional laws plus their supporting function facts, decided
/// at the frame level (all candidate extensions) so the verdict reflects
/// the relations, not the valuation. Both directions of each biconditional
/// are reported via the recorded side values.
pub fn iff_condition_checks(model: &Model) -> Vec<LawReport> {
    let mut reports = Vec::new();
    let full = StateSet::full(model.space());

    for (label, k) in model.knowledge_relations() {
        let shared_belief = model
            .belief(label)
            .filter(|belief| belief.pair == k.pair && k.pair.is_some());
        if let Some(belief) = shared_belief {
            let pair = belief.pair.as_ref().unwrap();
            let semantic = frame_valid_k_iff_b(&belief.relation, &k.relation);
            let functional = pair.is_unbiased();
            reports.push(side_report(
                "bias-cancellation",
                label,
                format!("K[{label}] phi <-> B[{label}] phi is frame-valid if and only if the bias is the identity on the visible image"),
                semantic,
                "K <-> B frame-valid",
                functional,
                "bias is identity on the visible image",
            ));
        } else {
            reports.push(LawReport {
                law: "bias-cancellation".to_string(),
                label: Some(label.to_string()),
                claim: format!("K[{label}] phi <-> B[{label}] phi is frame-valid if and only if the bias is the identity on the visible image"),
                asserted: true,
                detail: None,
                status: LawStatus::NotApplicable {
                    reason: format!("B[{label}] and K[{label}] do not share a declared function pair"),
                    probe: None,
                },
            });
        }
    }

    // The function-level halves, per label with an intact pair.
    for (which, iter) in [
        ("belief", model.belief_relations().collect::<Vec<_>>()),
        ("knowledge", model.knowledge_relations().collect::<Vec<_>>()),
    ] {
        for (label, lr) in iter {
            let Some(pair) = lr.pair.as_ref() else { continue };
            let injective = pair.bias().injectivity_witness_on(pair.visible_image()).is_none();
            let identity = pair.is_unbiased();
            reports.push(side_report(
                "injective-bias-is-identity",
                &format!("{which} {label}"),
                "the bias is the identity on the visible image if and only if it is injective there".to_string(),
                identity,
                "bias is identity on the visible image",
                injective,
                "bias is injective on the visible image",
            ));
        }
    }

    for (label, k) in model.knowledge_relations() {
        let claim = format!("~K[{label}] phi -> K[{label}] ~phi is frame-valid if and only if the bias is injective");
        let Some(pair) = k.pair.as_ref() else {
            reports.push(LawReport {
                law: "negation-complete-knowledge".to_string(),
                label: Some(label.to_string()),
                claim,
                asserted: true,
                detail: None,
                status: LawStatus::NotApplicable {
                    reason: "relation was overridden; no declared pair to inspect".to_string(),
                    probe: None,
                },
            });
            continue;
        };
        if !pair.visibility().is_identity_on(&full) {
            reports.push(LawReport {
                law: "negation-complete-knowledge".to_string(),
                label: Some(label.to_string()),
                claim,
                asserted: true,
                detail: None,
                status: LawStatus::NotApplicable {
                    reason: "the visibility is not the identity".to_string(),
                    probe: None,
                },
            });
            continue;
        }
        let semantic = frame_valid_negation_complete(&k.relation);
        let functional = pair.bias().injectivity_witness_on(&full).is_none();
        reports.push(side_report(
            "negation-complete-knowledge",
            label,
            claim,
            semantic,
            "~K phi -> K ~phi frame-valid",
            functional,
            "bias is injective",
        ));

        // And the coincidence with perfect knowledge, on the same side
        // condition.
        let perfect = frame_valid_truth_to_knowledge(&k.relation);
        reports.push(side_report(
            "negation-complete-knowledge-is-perfect",
            label,
            format!("~K[{label}] phi -> K[{label}] ~phi is frame-valid if and only if phi -> K[{label}] phi is"),
            semantic,
            "~K phi -> K ~phi frame-valid",
            perfect,
            "phi -> K phi frame-valid",
        ));
    }

    reports
}
