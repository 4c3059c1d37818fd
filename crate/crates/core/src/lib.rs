//! Doxastic and epistemic accessibility from function pairs.
//!
//! This crate builds multi-agent belief (KD45) and knowledge (S5)
//! accessibility relations out of pairs of functions over a finite state
//! space — a *visibility* function `f` that maps each state to what an agent
//! can see of it, and a *bias* function `g` that distorts the visible image —
//! and provides the reverse direction: given an arbitrary KD45 or S5
//! relation, synthesize a function pair that generates it exactly.
//!
//! On top of the relation layer sits a small modal language with belief,
//! knowledge, and group modalities, a bottom-up model checker, a law suite
//! that verifies the expected axioms on concrete models, and a bounded
//! trace-space construction in which agent indistinguishability and
//! single-action dynamic-logic programs arise as special cases of the same
//! machinery.
//!
//! Module layout:
//!
//! * [`relalg`] — state spaces, subsets, partial functions, bit-matrix
//!   relations, closures, and classification.
//! * [`funcpair`] — validated `(f, g)` pairs and the induced belief and
//!   knowledge relations.
//! * [`synthesis`] — inverse constructions from KD45 relations and from
//!   equivalence relations, with round-trip reporting.
//! * [`group`] — distributed and common belief/knowledge over communities.
//! * [`signature`] — typed function signatures, JSON model documents, and
//!   model loading.
//! * [`formulas`] — the formula language, parser, and printer.
//! * [`checker`] — extension computation, validity, law suite, and
//!   side-condition biconditionals.
//! * [`traces`] — bounded trace spaces, projections, and action programs.

pub mod checker;
pub mod formulas;
pub mod funcpair;
pub mod group;
pub mod relalg;
pub mod signature;
pub mod synthesis;
pub mod traces;
