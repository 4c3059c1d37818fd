//! Typed registries of named functions, and the models built from them.
//!
//! A model document declares a state space, named subsets of it (types),
//! named functions between those types, and labelled visibility/bias pairs.
//! Loading interprets every name concretely, enforces the typing discipline,
//! and precomputes one accessibility relation per label:
//!
//! * a name with domain `S` is a **visibility** candidate and may appear in
//!   the first position of a label;
//! * a name with any other domain must be an idempotent endofunction on its
//!   type — those are the **bias** candidates (identity names `id_<T>` are
//!   always available implicitly);
//! * a label `a: [f, g]` requires the domain type of `g` to equal the
//!   codomain type of `f`, and the interpreted pair to pass
//!   [`validate_pair`](crate::funcpair::validate_pair).
//!
//! Composite declarations `{"compose": [h, f]}` denote `h` after `f` and are
//! resolved right-to-left; the registry only ever contains the composites a
//! document names, so it stays finite.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcpair::{validate_pair, FunctionPair, PairError};
use crate::relalg::{Relation, SpaceError, StateFunction, StateSet, StateSpace};

/// The reserved name of the all-states type.
pub const TYPE_S: &str = "S";

/// Errors reported while loading a model document. Each variant names the
/// violated rule and carries a witness.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("a model needs at least one state")]
    EmptyStates,
    #[error("state {0:?} is listed twice")]
    DuplicateState(String),
    #[error("unknown state {state:?} in {context}")]
    UnknownState { context: String, state: String },
    #[error("type \"S\" must list every state when it is declared explicitly")]
    ExplicitSMismatch,
    #[error("function {function:?} refers to unknown type {type_name:?}")]
    UnknownType { function: String, type_name: String },
    #[error("composite {composite:?} refers to unknown function {component:?}")]
    UnknownComponent { composite: String, component: String },
    #[error("composite {name:?} is defined in terms of itself")]
    CompositionCycle { name: String },
    #[error("composite {composite:?} applies {outer:?} after {inner:?}, but the codomain of {inner:?} is not the domain of {outer:?}")]
    CompositionTypeMismatch {
        composite: String,
        outer: String,
        inner: String,
    },
    #[error("function {function:?} is missing a value for state {state:?}")]
    MapMissingEntry { function: String, state: String },
    #[error("function {function:?} maps state {state:?}, which is outside its domain")]
    MapStrayEntry { function: String, state: String },
    #[error("function {function:?} sends {state:?} to {value:?}, outside its declared codomain")]
    CodomainViolation {
        function: String,
        state: String,
        value: String,
    },
    #[error("function {function:?} goes from {domain:?} to {codomain:?}; a function out of a non-S type must be an endofunction")]
    NotEndofunction {
        function: String,
        domain: String,
        codomain: String,
    },
    #[error("function {function:?} is not idempotent: applying it twice to {state:?} differs from applying it once")]
    NotIdempotent { function: String, state: String },
    #[error("{name:?} is reserved for the identity on its type and cannot be redefined")]
    IdentityOverride { name: String },
    #[error("label {label:?} refers to unknown function {name:?}")]
    UnknownFunction { label: String, name: String },
    #[error("label {label:?} uses {function:?} as a visibility, but its domain is not \"S\"")]
    LabelSourceNotS { label: String, function: String },
    #[error("label {label:?} pairs {fname:?} with {gname:?}, but the bias domain does not match the visibility codomain")]
    LabelTypeMismatch {
        label: String,
        fname: String,
        gname: String,
    },
    #[error("label {label:?} does not form a valid visibility/bias pair: {source}")]
    InvalidLabelPair { label: String, source: PairError },
    #[error("atom {name:?} is not usable in formulas (atoms must be identifiers other than \"false\")")]
    InvalidAtomName { name: String },
    #[error("agent label {label:?} is not usable in formulas (labels must be identifiers)")]
    InvalidAgentLabel { label: String },
    #[error("a model needs at least one atomic proposition")]
    NoAtoms,
    #[error("no modality label {label:?} is declared")]
    UnknownLabel { label: String },
    #[error("no function named {name:?} is declared")]
    UnknownName { name: String },
}

impl From<SpaceError> for ModelError {
    fn from(e: SpaceError) -> Self {
        match e {
            SpaceError::Empty => ModelError::EmptyStates,
            SpaceError::DuplicateState(name) => ModelError::DuplicateState(name),
        }
    }
}

/// A direct function declaration: an explicit map between two named types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectDecl {
    pub domain: String,
    pub codomain: String,
    pub map: BTreeMap<String, String>,
}

/// A composite declaration: `compose: [h, f]` means `h` after `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeDecl {
    pub compose: (String, String),
}

/// One entry of a document's `functions` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionDecl {
    Compose(ComposeDecl),
    Direct(DirectDecl),
}

/// The on-disk shape of a model. Field names are the exact JSON keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub types: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub belief_labels: BTreeMap<String, (String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub knowledge_labels: BTreeMap<String, (String, String)>,
    pub valuation: BTreeMap<String, Vec<String>>,
}

/// The name-level signature a document generates: which identifiers exist
/// and how they are typed, independent of their interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityType {
    /// Atomic proposition names (the valuation's keys).
    pub atoms: BTreeSet<String>,
    /// Type names, always including `S`.
    pub types: BTreeSet<String>,
    /// Names usable as visibilities: everything with domain `S`, mapped to
    /// `(domain, codomain)`.
    pub fnames: BTreeMap<String, (String, String)>,
    /// Names subject to the idempotent-endofunction discipline, mapped to
    /// their type: every `id_<T>`, every non-S-domain function, and every
    /// name a label uses in bias position.
    pub gnames: BTreeMap<String, String>,
    /// Belief labels and their `(visibility, bias)` name pairs.
    pub belief_labels: BTreeMap<String, (String, String)>,
    /// Knowledge labels and their `(visibility, bias)` name pairs.
    pub knowledge_labels: BTreeMap<String, (String, String)>,
}

/// Concrete interpretations of every declared name on a state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Instantiation {
    space: Arc<StateSpace>,
    type_interp: BTreeMap<String, StateSet>,
    fun_interp: BTreeMap<String, StateFunction>,
    fun_types: BTreeMap<String, (String, String)>,
}

impl Instantiation {
    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    /// The states a type name denotes.
    pub fn type_interpretation(&self, name: &str) -> Option<&StateSet> {
        self.type_interp.get(name)
    }

    /// The interpretation of a function name. Composites were resolved at
    /// load time, so this is a plain lookup.
    pub fn interpret(&self, name: &str) -> Result<&StateFunction, ModelError> {
        self.fun_interp
            .get(name)
            .ok_or_else(|| ModelError::UnknownName { name: name.to_string() })
    }

    /// The `(domain, codomain)` type names of a function name.
    pub fn typing(&self, name: &str) -> Option<&(String, String)> {
        self.fun_types.get(name)
    }

    pub fn function_names(&self) -> impl Iterator<Item = &str> {
        self.fun_interp.keys().map(String::as_str)
    }
}

/// A label's interpretation: the names it was declared with, the validated
/// pair, and the derived accessibility relation.
///
/// `pair` is `None` only after [`Model::override_belief_relation`] or
/// [`Model::override_knowledge_relation`] replaced the relation with one
/// that no longer comes from the declared functions.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRelation {
    pub fname: String,
    pub gname: String,
    pub pair: Option<FunctionPair>,
    pub relation: Relation,
}

/// A loaded model: signature, interpretations, valuation, and one
/// precomputed relation per belief/knowledge label.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    sim_type: SimilarityType,
    inst: Instantiation,
    valuation: BTreeMap<String, StateSet>,
    belief: BTreeMap<String, LabeledRelation>,
    knowledge: BTreeMap<String, LabeledRelation>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn implicit_identity_type(name: &str) -> Option<&str> {
    name.strip_prefix("id_")
}

struct Loader<'d> {
    doc: &'d ModelDocument,
    space: Arc<StateSpace>,
    type_interp: BTreeMap<String, StateSet>,
    fun_interp: BTreeMap<String, StateFunction>,
    fun_types: BTreeMap<String, (String, String)>,
    visiting: Vec<String>,
}

impl<'d> Loader<'d> {
    fn state_set(&self, context: &str, names: &[String]) -> Result<StateSet, ModelError> {
        let mut set = StateSet::empty(&self.space);
        for name in names {
            let i = self
                .space
                .position(name)
                .ok_or_else(|| ModelError::UnknownState {
                    context: context.to_string(),
                    state: name.clone(),
                })?;
            set.insert(i);
        }
        Ok(set)
    }

    fn types(&mut self) -> Result<(), ModelError> {
        for (name, members) in &self.doc.types {
            let set = self.state_set(&format!("type {name:?}"), members)?;
            if name == TYPE_S && !set.is_full() {
                return Err(ModelError::ExplicitSMismatch);
            }
            self.type_interp.insert(name.clone(), set);
        }
        self.type_interp
            .insert(TYPE_S.to_string(), StateSet::full(&self.space));
        Ok(())
    }

    fn build_direct(&self, name: &str, decl: &DirectDecl) -> Result<(StateFunction, (String, String)), ModelError> {
        let dom = self
            .type_interp
            .get(&decl.domain)
            .ok_or_else(|| ModelError::UnknownType {
                function: name.to_string(),
                type_name: decl.domain.clone(),
            })?;
        let cod = self
            .type_interp
            .get(&decl.codomain)
            .ok_or_else(|| ModelError::UnknownType {
                function: name.to_string(),
                type_name: decl.codomain.clone(),
            })?;
        let mut entries = Vec::with_capacity(decl.map.len());
        for (from, to) in &decl.map {
            let context = format!("function {name:?}");
            let fi = self
                .space
                .position(from)
                .ok_or_else(|| ModelError::UnknownState {
                    context: context.clone(),
                    state: from.clone(),
                })?;
            if !dom.contains(fi) {
                return Err(ModelError::MapStrayEntry {
                    function: name.to_string(),
                    state: from.clone(),
                });
            }
            let ti = self
                .space
                .position(to)
                .ok_or_else(|| ModelError::UnknownState {
                    context,
                    state: to.clone(),
                })?;
            if !cod.contains(ti) {
                return Err(ModelError::CodomainViolation {
                    function: name.to_string(),
                    state: from.clone(),
                    value: to.clone(),
                });
            }
            entries.push((fi, ti));
        }
        for i in dom.iter() {
            if !decl.map.contains_key(self.space.name(i)) {
                return Err(ModelError::MapMissingEntry {
                    function: name.to_string(),
                    state: self.space.name(i).to_string(),
                });
            }
        }
        Ok((
            StateFunction::from_entries(&self.space, entries),
            (decl.domain.clone(), decl.codomain.clone()),
        ))
    }

    /// Resolves `name` into `fun_interp`/`fun_types`, recursing through
    /// composites. `referrer` is the composite that asked for `name`, for
    /// error reporting.
    fn resolve(&mut self, name: &str, referrer: Option<&str>) -> Result<(), ModelError> {
        if self.fun_interp.contains_key(name) {
            return Ok(());
        }
        if self.visiting.iter().any(|v| v == name) {
            return Err(ModelError::CompositionCycle { name: name.to_string() });
        }
        match self.doc.functions.get(name) {
            Some(FunctionDecl::Direct(decl)) => {
                let (interp, typing) = self.build_direct(name, decl)?;
                self.fun_interp.insert(name.to_string(), interp);
                self.fun_types.insert(name.to_string(), typing);
                Ok(())
            }
            Some(FunctionDecl::Compose(decl)) => {
                let (outer, inner) = (decl.compose.0.clone(), decl.compose.1.clone());
                self.visiting.push(name.to_string());
                self.resolve(&outer, Some(name))?;
                self.resolve(&inner, Some(name))?;
                self.visiting.pop();
                let (_, inner_cod) = &self.fun_types[&inner];
                let (outer_dom, _) = &self.fun_types[&outer];
                if inner_cod != outer_dom {
                    return Err(ModelError::CompositionTypeMismatch {
                        composite: name.to_string(),
                        outer,
                        inner,
                    });
                }
                let interp = StateFunction::compose(&self.fun_interp[&outer], &self.fun_interp[&inner]);
                let typing = (
                    self.fun_types[&inner].0.clone(),
                    self.fun_types[&outer].1.clone(),
                );
                self.fun_interp.insert(name.to_string(), interp);
                self.fun_types.insert(name.to_string(), typing);
                Ok(())
            }
            None => {
                // Fall back to the implicit identities before giving up.
                if let Some(t) = implicit_identity_type(name) {
                    if let Some(set) = self.type_interp.get(t) {
                        let interp = StateFunction::identity_on(set);
                        self.fun_interp.insert(name.to_string(), interp);
                        self.fun_types
                            .insert(name.to_string(), (t.to_string(), t.to_string()));
                        return Ok(());
                    }
                }
                Err(ModelError::UnknownComponent {
                    composite: referrer.unwrap_or("").to_string(),
                    component: name.to_string(),
                })
            }
        }
    }

    fn functions(&mut self) -> Result<(), ModelError> {
        let declared: Vec<String> = self.doc.functions.keys().cloned().collect();
        for name in &declared {
            self.resolve(name, None)?;
        }
        // Materialize every implicit identity, then make sure no declared
        // name shadowed one with something else.
        let types: Vec<String> = self.type_interp.keys().cloned().collect();
        for t in &types {
            let name = format!("id_{t}");
            self.resolve(&name, None)?;
            let expected = StateFunction::identity_on(&self.type_interp[t]);
            if self.fun_interp[&name] != expected
                || self.fun_types[&name] != (t.clone(), t.clone())
            {
                return Err(ModelError::IdentityOverride { name });
            }
        }
        Ok(())
    }

    /// Enforces the endofunction/idempotency discipline on every function
    /// whose domain is not `S`.
    fn bias_discipline(&self) -> Result<BTreeMap<String, String>, ModelError> {
        let mut gnames = BTreeMap::new();
        for (name, (dom, cod)) in &self.fun_types {
            if implicit_identity_type(name).is_some_and(|t| self.type_interp.contains_key(t)) {
                gnames.insert(name.clone(), dom.clone());
                continue;
            }
            if dom == TYPE_S {
                continue;
            }
            if cod != dom {
                return Err(ModelError::NotEndofunction {
                    function: name.clone(),
                    domain: dom.clone(),
                    codomain: cod.clone(),
                });
            }
            self.check_idempotent(name)?;
            gnames.insert(name.clone(), dom.clone());
        }
        Ok(gnames)
    }

    fn check_idempotent(&self, name: &str) -> Result<(), ModelError> {
        let dom = &self.type_interp[&self.fun_types[name].0];
        if let Some(i) = self.fun_interp[name].idempotency_witness_within(dom) {
            return Err(ModelError::NotIdempotent {
                function: name.to_string(),
                state: self.space.name(i).to_string(),
            });
        }
        Ok(())
    }

    fn label(
        &self,
        label: &str,
        fname: &str,
        gname: &str,
        epistemic: bool,
        gnames: &mut BTreeMap<String, String>,
    ) -> Result<LabeledRelation, ModelError> {
        if !is_identifier(label) {
            return Err(ModelError::InvalidAgentLabel { label: label.to_string() });
        }
        for name in [fname, gname] {
            if !self.fun_interp.contains_key(name) {
                return Err(ModelError::UnknownFunction {
                    label: label.to_string(),
                    name: name.to_string(),
                });
            }
        }
        let (f_dom, f_cod) = &self.fun_types[fname];
        if f_dom != TYPE_S {
            return Err(ModelError::LabelSourceNotS {
                label: label.to_string(),
                function: fname.to_string(),
            });
        }
        let (g_dom, _) = &self.fun_types[gname];
        if g_dom != f_cod {
            return Err(ModelError::LabelTypeMismatch {
                label: label.to_string(),
                fname: fname.to_string(),
                gname: gname.to_string(),
            });
        }
        // A bias with domain S escaped the blanket discipline above; it
        // still must be idempotent to serve in bias position.
        if g_dom == TYPE_S && !gnames.contains_key(gname) {
            self.check_idempotent(gname)?;
        }
        gnames.insert(gname.to_string(), g_dom.clone());
        let pair = validate_pair(self.fun_interp[fname].clone(), self.fun_interp[gname].clone())
            .map_err(|source| ModelError::InvalidLabelPair {
                label: label.to_string(),
                source,
            })?;
        let relation = if epistemic { pair.epistemic() } else { pair.doxastic() };
        let report = relation.classify();
        if epistemic {
            assert!(
                report.equivalence,
                "knowledge relation for label {label:?} must be an equivalence — validated pairs always give one"
            );
        } else {
            assert!(
                report.is_kd45(),
                "belief relation for label {label:?} must be serial, transitive, and euclidean — validated pairs always give one"
            );
        }
        Ok(LabeledRelation {
            fname: fname.to_string(),
            gname: gname.to_string(),
            pair: Some(pair),
            relation,
        })
    }
}

/// Interprets a document, enforcing every typing rule, and precomputes the
/// labelled relations. Diagnostics carry the violated rule and a witness.
pub fn load_model(doc: &ModelDocument) -> Result<Model, ModelError> {
    let space = StateSpace::new(doc.states.iter().cloned())?;
    let mut loader = Loader {
        doc,
        space,
        type_interp: BTreeMap::new(),
        fun_interp: BTreeMap::new(),
        fun_types: BTreeMap::new(),
        visiting: Vec::new(),
    };
    loader.types()?;
    loader.functions()?;
    let mut gnames = loader.bias_discipline()?;

    let mut belief = BTreeMap::new();
    for (label, (fname, gname)) in &doc.belief_labels {
        belief.insert(
            label.clone(),
            loader.label(label, fname, gname, false, &mut gnames)?,
        );
    }
    let mut knowledge = BTreeMap::new();
    for (label, (fname, gname)) in &doc.knowledge_labels {
        knowledge.insert(
            label.clone(),
            loader.label(label, fname, gname, true, &mut gnames)?,
        );
    }

    let mut valuation = BTreeMap::new();
    for (atom, members) in &doc.valuation {
        if !is_identifier(atom) || atom == "false" {
            return Err(ModelError::InvalidAtomName { name: atom.clone() });
        }
        let set = loader.state_set(&format!("valuation of {atom:?}"), members)?;
        valuation.insert(atom.clone(), set);
    }
    if valuation.is_empty() {
        return Err(ModelError::NoAtoms);
    }

    let fnames = loader
        .fun_types
        .iter()
        .filter(|(_, (dom, _))| dom == TYPE_S)
        .map(|(name, typing)| (name.clone(), typing.clone()))
        .collect();
    let sim_type = SimilarityType {
        atoms: valuation.keys().cloned().collect(),
        types: loader.type_interp.keys().cloned().collect(),
        fnames,
        gnames,
        belief_labels: doc.belief_labels.clone(),
        knowledge_labels: doc.knowledge_labels.clone(),
    };
    Ok(Model {
        sim_type,
        inst: Instantiation {
            space: loader.space,
            type_interp: loader.type_interp,
            fun_interp: loader.fun_interp,
            fun_types: loader.fun_types,
        },
        valuation,
        belief,
        knowledge,
    })
}

impl Model {
    pub fn from_json_str(text: &str) -> Result<Model, ModelError> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        load_model(&doc)
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        self.inst.space()
    }

    pub fn similarity_type(&self) -> &SimilarityType {
        &self.sim_type
    }

    pub fn instantiation(&self) -> &Instantiation {
        &self.inst
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.valuation
    }

    pub fn atom_extension(&self, atom: &str) -> Option<&StateSet> {
        self.valuation.get(atom)
    }

    pub fn belief(&self, label: &str) -> Option<&LabeledRelation> {
        self.belief.get(label)
    }

    pub fn knowledge(&self, label: &str) -> Option<&LabeledRelation> {
        self.knowledge.get(label)
    }

    pub fn belief_relations(&self) -> impl Iterator<Item = (&str, &LabeledRelation)> {
        self.belief.iter().map(|(l, r)| (l.as_str(), r))
    }

    pub fn knowledge_relations(&self) -> impl Iterator<Item = (&str, &LabeledRelation)> {
        self.knowledge.iter().map(|(l, r)| (l.as_str(), r))
    }

    /// Replaces the relation behind a belief label with an arbitrary one,
    /// e.g. to probe how the law reports react to a relation that no
    /// validated pair could produce. The stored pair is dropped, and
    /// serialization still reflects the declared functions, not the
    /// override.
    pub fn override_belief_relation(&mut self, label: &str, relation: Relation) -> Result<(), ModelError> {
        Self::override_in(&mut self.belief, label, relation, self.inst.space())
    }

    /// Belief-label counterpart for knowledge; see
    /// [`Model::override_belief_relation`].
    pub fn override_knowledge_relation(&mut self, label: &str, relation: Relation) -> Result<(), ModelError> {
        Self::override_in(&mut self.knowledge, label, relation, self.inst.space())
    }

    fn override_in(
        rels: &mut BTreeMap<String, LabeledRelation>,
        label: &str,
        relation: Relation,
        space: &Arc<StateSpace>,
    ) -> Result<(), ModelError> {
        assert!(
            relation.space() == space,
            "overriding relation must live on the model's state space"
        );
        let entry = rels
            .get_mut(label)
            .ok_or_else(|| ModelError::UnknownLabel { label: label.to_string() })?;
        entry.pair = None;
        entry.relation = relation;
        Ok(())
    }

    /// Serializes back to document form. Composites are flattened to direct
    /// maps and implicit identities are omitted, so the output reloads to an
    /// equal model (relation overrides are not representable and do not
    /// survive).
    pub fn to_document(&self) -> ModelDocument {
        let space = self.inst.space();
        let types = self
            .inst
            .type_interp
            .iter()
            .filter(|(name, _)| name.as_str() != TYPE_S)
            .map(|(name, set)| (name.clone(), set.names().iter().map(|s| s.to_string()).collect()))
            .collect();
        let mut functions = BTreeMap::new();
        for (name, interp) in &self.inst.fun_interp {
            let (dom, cod) = &self.inst.fun_types[name];
            if implicit_identity_type(name) == Some(dom.as_str()) && dom == cod {
                continue;
            }
            let map = self.inst.type_interp[dom]
                .iter()
                .map(|i| {
                    let v = interp.apply(i).expect("loaded functions are total on their domain");
                    (space.name(i).to_string(), space.name(v).to_string())
                })
                .collect();
            functions.insert(
                name.clone(),
                FunctionDecl::Direct(DirectDecl {
                    domain: dom.clone(),
                    codomain: cod.clone(),
                    map,
                }),
            );
        }
        ModelDocument {
            states: space.names().map(str::to_string).collect(),
            types,
            functions,
            belief_labels: self.sim_type.belief_labels.clone(),
            knowledge_labels: self.sim_type.knowledge_labels.clone(),
            valuation: self
                .valuation
                .iter()
                .map(|(a, set)| (a.clone(), set.names().iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("model documents always serialize")
    }
}
