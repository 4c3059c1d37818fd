//! Validated visibility/bias function pairs and the accessibility relations
//! they induce.
//!
//! A pair consists of a total *visibility* function `f` — mapping each state
//! of the world to the fragment of it an agent can observe — and a *bias*
//! function `g` that distorts observations inside the visible image. A pair
//! is well formed when `g`, restricted to `Im(f)`, is an idempotent
//! endofunction of `Im(f)`. Idempotency can be stated two equivalent ways,
//! and [`validate_pair`] deliberately checks both and insists they agree:
//!
//! * pointwise: whenever `g(f(s)) = f(s')`, also `g(f(s')) = f(s')` — the
//!   states an agent considers possible are exactly the fixed points of its
//!   distorted view;
//! * algebraic: `g ∘ g = g` on `Im(f)`.
//!
//! A disagreement between the two checks cannot be produced by bad input;
//! it would mean this module itself is broken, and it is reported as the
//! dedicated [`PairError::ConstraintDivergence`] so it can never slip
//! through as a false "valid".
//!
//! From a validated pair two relations are derived:
//!
//! * [`FunctionPair::doxastic`] — `s D s'` iff `g(f(s)) = f(s')`. Always
//!   serial, transitive, and euclidean (KD45): what an agent *believes*.
//! * [`FunctionPair::epistemic`] — the transitive closure of `D ∪ D⁻¹`,
//!   always the least equivalence relation containing `D` (S5): what an
//!   agent *knows*.
//!
//! The two coincide exactly when the bias is trivial on the visible image
//! ([`FunctionPair::is_unbiased`]), which is also exactly when `D` is
//! symmetric — knowledge is unbiased belief.

use std::fmt;

use thiserror::Error;

use crate::relalg::{Relation, StateSet, StateSpace};
use std::sync::Arc;

pub use crate::relalg::StateFunction;

/// Why a candidate `(f, g)` pair was rejected. Every variant names a witness
/// state.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("visibility function is undefined at state {state:?}; it must be total")]
    VisibilityNotTotal { state: String },
    #[error("bias function is undefined at {state:?}, which lies in the visibility image")]
    BiasNotTotalOnImage { state: String },
    #[error("bias escapes the visibility image: g({state:?}) = {value:?} is not a visible state")]
    BiasNotClosedOnImage { state: String, value: String },
    #[error("bias is not idempotent on the visibility image: g(g({state:?})) differs from g({state:?})")]
    BiasNotIdempotent { state: String },
    /// The pointwise and algebraic idempotency checks disagreed. This is an
    /// internal-consistency failure of the validator, not a property of the
    /// input.
    #[error(
        "internal error: pointwise and algebraic idempotency checks disagree \
         (pointwise witness: {pointwise:?}, algebraic witness: {algebraic:?})"
    )]
    ConstraintDivergence {
        pointwise: Option<String>,
        algebraic: Option<String>,
    },
}

/// A validated visibility/bias pair. Construct via [`validate_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionPair {
    f: StateFunction,
    g: StateFunction,
    im_f: StateSet,
}

/// Checks a candidate pair and returns it as a [`FunctionPair`], or a
/// diagnostic naming the violated constraint and a witness.
///
/// `g` may be defined on more states than `Im(f)`; validation only
/// constrains its behaviour on the visible image.
pub fn validate_pair(f: StateFunction, g: StateFunction) -> Result<FunctionPair, PairError> {
    let space = Arc::clone(f.space());
    assert!(
        space.as_ref() == g.space().as_ref(),
        "state-space mismatch in validate_pair"
    );

    if let Some(s) = (0..space.len()).find(|&s| f.apply(s).is_none()) {
        return Err(PairError::VisibilityNotTotal {
            state: space.name(s).to_string(),
        });
    }
    let im_f = f.image();
    for t in im_f.iter() {
        match g.apply(t) {
            None => {
                return Err(PairError::BiasNotTotalOnImage {
                    state: space.name(t).to_string(),
                })
            }
            Some(v) if !im_f.contains(v) => {
                return Err(PairError::BiasNotClosedOnImage {
                    state: space.name(t).to_string(),
                    value: space.name(v).to_string(),
                })
            }
            Some(_) => {}
        }
    }

    // Both formulations of the idempotency constraint, checked
    // independently; with g total and closed on Im(f) they must agree.
    let pointwise = pointwise_witness(&f, &g, &space);
    let algebraic = im_f.iter().find(|&t| {
        let v = g.apply(t).expect("g is total on Im(f) here");
        g.apply(v) != Some(v)
    });
    match (pointwise, algebraic) {
        (None, None) => Ok(FunctionPair { f, g, im_f }),
        (Some(_), Some(t)) => Err(PairError::BiasNotIdempotent {
            state: space.name(t).to_string(),
        }),
        (p, a) => Err(PairError::ConstraintDivergence {
            pointwise: p.map(|s| space.name(s).to_string()),
            algebraic: a.map(|s| space.name(s).to_string()),
        }),
    }
}

/// A state `s'` violating the pointwise constraint: there are `s, s'` with
/// `g(f(s)) = f(s')` but `g(f(s')) ≠ f(s')`.
fn pointwise_witness(f: &StateFunction, g: &StateFunction, space: &StateSpace) -> Option<usize> {
    let n = space.len();
    for s in 0..n {
        let gf_s = g.apply(f.apply(s)?)?;
        for s2 in 0..n {
            let f_s2 = f.apply(s2)?;
            if gf_s == f_s2 && g.apply(f_s2) != Some(f_s2) {
                return Some(s2);
            }
        }
    }
    None
}

impl FunctionPair {
    pub fn space(&self) -> &Arc<StateSpace> {
        self.f.space()
    }

    pub fn visibility(&self) -> &StateFunction {
        &self.f
    }

    pub fn bias(&self) -> &StateFunction {
        &self.g
    }

    /// The visibility image `Im(f)`, cached at validation time.
    pub fn visible_image(&self) -> &StateSet {
        &self.im_f
    }

    /// The belief relation: `s D s'` iff `g(f(s)) = f(s')`.
    ///
    /// For a validated pair this is always serial, transitive, and
    /// euclidean.
    pub fn doxastic(&self) -> Relation {
        let space = self.space();
        let n = space.len();
        let mut r = Relation::empty(space);
        let gf: Vec<usize> = (0..n)
            .map(|s| {
                self.g
                    .apply(self.f.apply(s).expect("f is total"))
                    .expect("g is total on Im(f)")
            })
            .collect();
        for (s, &target) in gf.iter().enumerate() {
            for s2 in 0..n {
                if self.f.apply(s2) == Some(target) {
                    r.insert(s, s2);
                }
            }
        }
        r
    }

    /// The knowledge relation: the transitive closure of `D ∪ D⁻¹`.
    ///
    /// Always the least equivalence relation containing
    /// [`FunctionPair::doxastic`].
    pub fn epistemic(&self) -> Relation {
        let d = self.doxastic();
        d.union(&d.converse()).transitive_closure()
    }

    /// True when the bias fixes every visible state — `g = id` on `Im(f)` —
    /// which holds exactly when belief and knowledge coincide.
    pub fn is_unbiased(&self) -> bool {
        self.g.is_identity_on(&self.im_f)
    }
}

impl fmt::Display for FunctionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f = {}, g = {})", self.f, self.g)
    }
}
