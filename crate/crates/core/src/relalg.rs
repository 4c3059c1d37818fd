//! Finite state spaces, state subsets, partial state functions, and binary
//! relations.
//!
//! Everything else in the crate is built on the four types here. States are
//! identified by their index inside one [`StateSpace`]; the space itself is
//! shared behind an [`Arc`] so that sets, functions, and relations can carry
//! it around cheaply. Combining values that belong to different spaces is a
//! programming error and panics — there is no implicit coercion between
//! spaces.
//!
//! [`Relation`] stores a dense bit matrix (one row of `u64` words per state),
//! which keeps the closure operations simple and fast at the scales this
//! crate targets: [`Relation::transitive_closure`] is Warshall's algorithm
//! performed by OR-ing whole rows. Classification
//! ([`Relation::classify`]) is direct quantifier evaluation and doubles as
//! the witness source for diagnostics.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors raised while building a [`StateSpace`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("a state space must contain at least one state")]
    Empty,
    #[error("duplicate state name: {0:?}")]
    DuplicateState(String),
}

/// A finite, non-empty set of named states.
///
/// State identity is positional: every state has an index in `0..len()`, and
/// all other types in this module speak in indices. Names exist for I/O and
/// diagnostics.
#[derive(Debug)]
pub struct StateSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl StateSpace {
    /// Builds a space from state names. Fails on an empty list or a
    /// duplicated name.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, SpaceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(SpaceError::Empty);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(SpaceError::DuplicateState(n.clone()));
            }
        }
        Ok(Arc::new(StateSpace { names, index }))
    }

    /// A space with states named `"0"`, `"1"`, …, `"n-1"`. Handy in tests and
    /// examples.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn numbered(n: usize) -> Arc<Self> {
        Self::new((0..n).map(|i| i.to_string())).expect("numbered space is non-empty and duplicate-free")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: spaces are non-empty by construction. Present to keep
    /// clippy and callers honest.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Index of a state name, if the name belongs to this space.
    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl PartialEq for StateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for StateSpace {}

fn same_space(a: &Arc<StateSpace>, b: &Arc<StateSpace>, op: &str) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "state-space mismatch in {op}: left has states {:?}, right has states {:?}",
        a.names,
        b.names
    );
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Mask selecting the live bits of the last word of an `n`-bit row.
fn tail_mask(n: usize) -> u64 {
    if n.is_multiple_of(64) {
        !0
    } else {
        (1u64 << (n % 64)) - 1
    }
}

/// A subset of one state space, stored as a bit vector.
#[derive(Debug, Clone)]
pub struct StateSet {
    space: Arc<StateSpace>,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(space: &Arc<StateSpace>) -> Self {
        StateSet {
            space: Arc::clone(space),
            words: vec![0; words_for(space.len())],
        }
    }

    pub fn full(space: &Arc<StateSpace>) -> Self {
        let n = space.len();
        let mut words = vec![!0u64; words_for(n)];
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(n);
        }
        StateSet {
            space: Arc::clone(space),
            words,
        }
    }

    pub fn singleton(space: &Arc<StateSpace>, i: usize) -> Self {
        let mut s = Self::empty(space);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(space: &Arc<StateSpace>, indices: I) -> Self {
        let mut s = Self::empty(space);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Interprets the low `len` bits of `bits` as a subset. Only meaningful
    /// for spaces of at most 64 states; used by exhaustive subset sweeps.
    ///
    /// # Panics
    /// Panics if the space has more than 64 states.
    pub fn from_bits(space: &Arc<StateSpace>, bits: u64) -> Self {
        assert!(space.len() <= 64, "from_bits only supports spaces of <= 64 states");
        StateSet {
            space: Arc::clone(space),
            words: vec![bits & tail_mask(space.len())],
        }
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.space.len(), "state index {i} out of bounds");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < self.space.len(), "state index {i} out of bounds");
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.space.len() && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.len()
    }

    pub fn union(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "StateSet::union");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        StateSet {
            space: Arc::clone(&self.space),
            words,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "StateSet::intersection");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        StateSet {
            space: Arc::clone(&self.space),
            words,
        }
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "StateSet::difference");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        StateSet {
            space: Arc::clone(&self.space),
            words,
        }
    }

    /// Complement within the space.
    pub fn complement(&self) -> Self {
        let n = self.space.len();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(n);
        }
        StateSet {
            space: Arc::clone(&self.space),
            words,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space, "StateSet::is_subset");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Indices of the members, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.space.len();
        (0..n).filter(move |&i| self.contains(i))
    }

    /// Member names, in index order.
    pub fn names(&self) -> Vec<&str> {
        self.iter().map(|i| self.space.name(i)).collect()
    }

    /// Smallest member index, if any.
    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl PartialEq for StateSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space) && self.words == other.words
    }
}

impl Eq for StateSet {}

impl std::hash::Hash for StateSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

/// A partial function from states to states, total on its domain.
///
/// The domain is exactly the set of indices where the function is defined,
/// so "partial on its own domain" is unrepresentable. Carriers for
/// visibility functions `f`, bias functions `g`, and trace projections.
#[derive(Debug, Clone)]
pub struct StateFunction {
    space: Arc<StateSpace>,
    map: Vec<Option<usize>>,
}

impl StateFunction {
    /// The identity on the whole space.
    pub fn identity(space: &Arc<StateSpace>) -> Self {
        StateFunction {
            space: Arc::clone(space),
            map: (0..space.len()).map(Some).collect(),
        }
    }

    /// The identity restricted to `domain`.
    pub fn identity_on(domain: &StateSet) -> Self {
        let space = Arc::clone(domain.space());
        let map = (0..space.len()).map(|i| domain.contains(i).then_some(i)).collect();
        StateFunction { space, map }
    }

    /// The total constant function onto `target`.
    pub fn constant(space: &Arc<StateSpace>, target: usize) -> Self {
        assert!(target < space.len(), "state index {target} out of bounds");
        StateFunction {
            space: Arc::clone(space),
            map: vec![Some(target); space.len()],
        }
    }

    /// Builds a function from `(argument, value)` index pairs. Later entries
    /// overwrite earlier ones; indices out of bounds panic.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize)>>(space: &Arc<StateSpace>, entries: I) -> Self {
        let mut map = vec![None; space.len()];
        for (a, v) in entries {
            assert!(a < space.len() && v < space.len(), "state index out of bounds in ({a}, {v})");
            map[a] = Some(v);
        }
        StateFunction {
            space: Arc::clone(space),
            map,
        }
    }

    /// Builds a total function from the value vector `values`, where state
    /// `i` maps to `values[i]`.
    pub fn total_from_vec(space: &Arc<StateSpace>, values: Vec<usize>) -> Self {
        assert_eq!(values.len(), space.len(), "value vector length must equal the space size");
        StateFunction {
            space: Arc::clone(space),
            map: values
                .into_iter()
                .map(|v| {
                    assert!(v < space.len(), "state index {v} out of bounds");
                    Some(v)
                })
                .collect(),
        }
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map.get(i).copied().flatten()
    }

    pub fn domain(&self) -> StateSet {
        StateSet::from_indices(&self.space, (0..self.space.len()).filter(|&i| self.map[i].is_some()))
    }

    pub fn image(&self) -> StateSet {
        StateSet::from_indices(&self.space, self.map.iter().flatten().copied())
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// True when the function fixes every member of `within` it is defined
    /// on, and is defined on all of `within`.
    pub fn is_identity_on(&self, within: &StateSet) -> bool {
        same_space(&self.space, within.space(), "StateFunction::is_identity_on");
        within.iter().all(|i| self.apply(i) == Some(i))
    }

    /// A state of `within` whose value is defined but escapes `within`, if
    /// any. States where the function is undefined also count as witnesses.
    pub fn escape_witness(&self, within: &StateSet) -> Option<usize> {
        same_space(&self.space, within.space(), "StateFunction::escape_witness");
        within.iter().find(|&i| match self.apply(i) {
            Some(v) => !within.contains(v),
            None => true,
        })
    }

    /// A state `x` of `within` with `f(f(x)) != f(x)`, if any. States where
    /// either application is undefined count as witnesses.
    pub fn idempotency_witness_within(&self, within: &StateSet) -> Option<usize> {
        same_space(&self.space, within.space(), "StateFunction::idempotency_witness_within");
        within.iter().find(|&x| match self.apply(x) {
            Some(v) => self.apply(v) != Some(v),
            None => true,
        })
    }

    /// Two distinct states of `within` sharing a value, if any.
    pub fn injectivity_witness_on(&self, within: &StateSet) -> Option<(usize, usize)> {
        same_space(&self.space, within.space(), "StateFunction::injectivity_witness_on");
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for x in within.iter() {
            if let Some(v) = self.apply(x) {
                if let Some(&prev) = seen.get(&v) {
                    return Some((prev, x));
                }
                seen.insert(v, x);
            }
        }
        None
    }

    /// Composition `outer ∘ inner`: first `inner`, then `outer`. Defined at
    /// `x` exactly when `inner(x)` is defined and lies in `outer`'s domain.
    pub fn compose(outer: &Self, inner: &Self) -> Self {
        same_space(&outer.space, &inner.space, "StateFunction::compose");
        let map = (0..inner.space.len())
            .map(|x| inner.apply(x).and_then(|v| outer.apply(v)))
            .collect();
        StateFunction {
            space: Arc::clone(&inner.space),
            map,
        }
    }

    /// The function restricted to `domain ∩ to`.
    pub fn restrict(&self, to: &StateSet) -> Self {
        same_space(&self.space, to.space(), "StateFunction::restrict");
        let map = (0..self.space.len())
            .map(|i| if to.contains(i) { self.apply(i) } else { None })
            .collect();
        StateFunction {
            space: Arc::clone(&self.space),
            map,
        }
    }
}

impl PartialEq for StateFunction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space) && self.map == other.map
    }
}

impl Eq for StateFunction {}

impl fmt::Display for StateFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = (0..self.space.len())
            .filter_map(|i| {
                self.apply(i)
                    .map(|v| format!("{} -> {}", self.space.name(i), self.space.name(v)))
            })
            .collect();
        write!(f, "{{{}}}", entries.join(", "))
    }
}

/// The kernel of a partial function: all pairs of domain states with equal
/// values. Always an equivalence relation on the domain; when `h` is total,
/// an equivalence relation on the whole space.
pub fn kernel(h: &StateFunction) -> Relation {
    let mut r = Relation::empty(&h.space);
    let n = h.space.len();
    for s in 0..n {
        let Some(v) = h.apply(s) else { continue };
        for t in 0..n {
            if h.apply(t) == Some(v) {
                r.insert(s, t);
            }
        }
    }
    r
}

/// Which closure [`Relation::closure`] should compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Transitive,
    ReflexiveTransitive,
}

/// Structural properties of a relation, each computed by direct quantifier
/// evaluation over the state space.
///
/// `functional` means every state has *at most* one successor. `equivalence`
/// is the conjunction of `reflexive`, `symmetric`, and `transitive`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyReport {
    pub serial: bool,
    pub transitive: bool,
    pub euclidean: bool,
    pub symmetric: bool,
    pub reflexive: bool,
    pub functional: bool,
    pub equivalence: bool,
}

impl PropertyReport {
    /// Serial, transitive, and euclidean.
    pub fn is_kd45(&self) -> bool {
        self.serial && self.transitive && self.euclidean
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut flags = Vec::new();
        for (name, on) in [
            ("serial", self.serial),
            ("transitive", self.transitive),
            ("euclidean", self.euclidean),
            ("symmetric", self.symmetric),
            ("reflexive", self.reflexive),
            ("functional", self.functional),
            ("equivalence", self.equivalence),
        ] {
            if on {
                flags.push(name);
            }
        }
        if flags.is_empty() {
            write!(f, "(none)")
        } else {
            write!(f, "{}", flags.join(", "))
        }
    }
}

/// A binary relation over one state space, stored as a dense bit matrix with
/// one row per state.
#[derive(Debug, Clone)]
pub struct Relation {
    space: Arc<StateSpace>,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(space: &Arc<StateSpace>) -> Self {
        let n = space.len();
        let wpr = words_for(n);
        Relation {
            space: Arc::clone(space),
            words_per_row: wpr,
            bits: vec![0; n * wpr],
        }
    }

    pub fn identity(space: &Arc<StateSpace>) -> Self {
        let mut r = Self::empty(space);
        for i in 0..space.len() {
            r.insert(i, i);
        }
        r
    }

    pub fn full(space: &Arc<StateSpace>) -> Self {
        let n = space.len();
        let wpr = words_for(n);
        let mut bits = vec![!0u64; n * wpr];
        let mask = tail_mask(n);
        for row in 0..n {
            bits[row * wpr + wpr - 1] &= mask;
        }
        Relation {
            space: Arc::clone(space),
            words_per_row: wpr,
            bits,
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(space: &Arc<StateSpace>, pairs: I) -> Self {
        let mut r = Self::empty(space);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn space(&self) -> &Arc<StateSpace> {
        &self.space
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        let n = self.space.len();
        assert!(a < n && b < n, "state index out of bounds in ({a}, {b})");
        self.bits[a * self.words_per_row + b / 64] |= 1 << (b % 64);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let n = self.space.len();
        a < n && b < n && self.bits[a * self.words_per_row + b / 64] >> (b % 64) & 1 == 1
    }

    /// All pairs, row-major.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.space.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    /// All pairs rendered as state names, row-major.
    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(a, b)| (self.space.name(a).to_string(), self.space.name(b).to_string()))
            .collect()
    }

    pub fn count_pairs(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    /// Successors of `i`, as a set.
    pub fn successors(&self, i: usize) -> StateSet {
        StateSet {
            space: Arc::clone(&self.space),
            words: self.row(i).to_vec(),
        }
    }

    /// The image: every state reachable from some state.
    pub fn image(&self) -> StateSet {
        let mut words = vec![0u64; self.words_per_row];
        for row in 0..self.space.len() {
            for (acc, w) in words.iter_mut().zip(self.row(row)) {
                *acc |= w;
            }
        }
        StateSet {
            space: Arc::clone(&self.space),
            words,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "Relation::union");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        Relation {
            space: Arc::clone(&self.space),
            words_per_row: self.words_per_row,
            bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "Relation::intersection");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        Relation {
            space: Arc::clone(&self.space),
            words_per_row: self.words_per_row,
            bits,
        }
    }

    /// Pairs of `self` not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "Relation::difference");
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect();
        Relation {
            space: Arc::clone(&self.space),
            words_per_row: self.words_per_row,
            bits,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space, "Relation::is_subset");
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn converse(&self) -> Self {
        let mut r = Self::empty(&self.space);
        for (a, b) in self.pairs() {
            r.insert(b, a);
        }
        r
    }

    /// Relational composition: `(a, c)` is in the result iff some `b` has
    /// `(a, b)` in `self` and `(b, c)` in `other`.
    pub fn compose(&self, other: &Self) -> Self {
        same_space(&self.space, &other.space, "Relation::compose");
        let n = self.space.len();
        let wpr = self.words_per_row;
        let mut out = Self::empty(&self.space);
        for a in 0..n {
            let row_a = a * wpr;
            for b in 0..n {
                if self.bits[row_a + b / 64] >> (b % 64) & 1 == 1 {
                    let (dst, src) = (a * wpr, b * wpr);
                    for w in 0..wpr {
                        out.bits[dst + w] |= other.bits[src + w];
                    }
                }
            }
        }
        out
    }

    /// Transitive or reflexive-transitive closure, by in-place Warshall
    /// row OR-ing.
    pub fn closure(&self, kind: Closure) -> Self {
        let mut out = self.clone();
        if kind == Closure::ReflexiveTransitive {
            for i in 0..self.space.len() {
                out.insert(i, i);
            }
        }
        let n = self.space.len();
        let wpr = self.words_per_row;
        for k in 0..n {
            for i in 0..n {
                if out.bits[i * wpr + k / 64] >> (k % 64) & 1 == 1 && i != k {
                    let (dst, src) = (i * wpr, k * wpr);
                    for w in 0..wpr {
                        out.bits[dst + w] |= out.bits[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn transitive_closure(&self) -> Self {
        self.closure(Closure::Transitive)
    }

    pub fn reflexive_transitive_closure(&self) -> Self {
        self.closure(Closure::ReflexiveTransitive)
    }

    /// The least equivalence relation containing `self`:
    /// `(R ∪ R⁻¹ ∪ id)*`. Serves as the independent route to the knowledge
    /// relation in tests.
    pub fn smallest_equivalence(&self) -> Self {
        self.union(&self.converse()).reflexive_transitive_closure()
    }

    /// The pairs of `self` with both endpoints inside `within`.
    pub fn restrict(&self, within: &StateSet) -> Self {
        same_space(&self.space, within.space(), "Relation::restrict");
        let mut r = Self::empty(&self.space);
        for (a, b) in self.pairs() {
            if within.contains(a) && within.contains(b) {
                r.insert(a, b);
            }
        }
        r
    }

    /// States all of whose successors lie in `set` — the box modality of
    /// this relation.
    pub fn box_over(&self, set: &StateSet) -> StateSet {
        same_space(&self.space, set.space(), "Relation::box_over");
        let n = self.space.len();
        StateSet::from_indices(
            &self.space,
            (0..n).filter(|&i| self.row(i).iter().zip(&set.words).all(|(r, s)| r & !s == 0)),
        )
    }

    /// A state with no successor, if any.
    pub fn seriality_witness(&self) -> Option<usize> {
        (0..self.space.len()).find(|&i| self.row(i).iter().all(|w| *w == 0))
    }

    /// A state not related to itself, if any.
    pub fn reflexivity_witness(&self) -> Option<usize> {
        (0..self.space.len()).find(|&i| !self.contains(i, i))
    }

    /// A pair `(a, b)` in the relation with `(b, a)` missing, if any.
    pub fn symmetry_witness(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !self.contains(b, a))
    }

    /// A triple `(a, b, c)` with `(a, b)` and `(b, c)` present but `(a, c)`
    /// missing, if any.
    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.space.len();
        for a in 0..n {
            for b in 0..n {
                if !self.contains(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.contains(b, c) && !self.contains(a, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// A triple `(a, b, c)` with `(a, b)` and `(a, c)` present but `(b, c)`
    /// missing, if any.
    pub fn euclidean_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.space.len();
        for a in 0..n {
            for b in 0..n {
                if !self.contains(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.contains(a, c) && !self.contains(b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// A state with two or more successors, if any.
    pub fn functionality_witness(&self) -> Option<usize> {
        (0..self.space.len()).find(|&i| self.row(i).iter().map(|w| w.count_ones()).sum::<u32>() > 1)
    }

    pub fn classify(&self) -> PropertyReport {
        let reflexive = self.reflexivity_witness().is_none();
        let symmetric = self.symmetry_witness().is_none();
        let transitive = self.transitivity_witness().is_none();
        PropertyReport {
            serial: self.seriality_witness().is_none(),
            transitive,
            euclidean: self.euclidean_witness().is_none(),
            symmetric,
            reflexive,
            functional: self.functionality_witness().is_none(),
            equivalence: reflexive && symmetric && transitive,
        }
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space) && self.bits == other.bits
    }
}

impl Eq for Relation {}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(a, b)| format!("({}, {})", self.space.name(a), self.space.name(b)))
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}
