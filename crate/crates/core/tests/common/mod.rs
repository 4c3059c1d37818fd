//! Shared generators and independent oracles for the integration suites.
//!
//! Everything here is deliberately naive: the oracles recompute semantics
//! with plain loops over `Vec<Vec<bool>>` matrices so that agreement with
//! the library is evidence, not circularity.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use doxa::formulas::Formula;
use doxa::funcpair::{validate_pair, FunctionPair};
use doxa::relalg::{Relation, StateFunction, StateSet, StateSpace};
use doxa::signature::{DirectDecl, FunctionDecl, Model, ModelDocument};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------
// Relations and functions
// ---------------------------------------------------------------------

pub fn random_relation(rng: &mut ChaCha8Rng, space: &Arc<StateSpace>, density: f64) -> Relation {
    let n = space.len();
    let mut r = Relation::empty(space);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                r.insert(i, j);
            }
        }
    }
    r
}

pub fn random_total_function(rng: &mut ChaCha8Rng, space: &Arc<StateSpace>) -> StateFunction {
    let n = space.len();
    StateFunction::total_from_vec(space, (0..n).map(|_| rng.gen_range(0..n)).collect())
}

/// A uniform-ish random validated pair: any total visibility, and a bias
/// drawn as a retraction of the visible image onto a nonempty set of
/// fixed points (exactly the idempotent self-maps).
pub fn random_pair(rng: &mut ChaCha8Rng, space: &Arc<StateSpace>) -> FunctionPair {
    let f = random_total_function(rng, space);
    let image: Vec<usize> = f.image().iter().collect();
    let mut fixed: Vec<usize> = image.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if fixed.is_empty() {
        fixed.push(image[rng.gen_range(0..image.len())]);
    }
    let g = StateFunction::from_entries(
        space,
        image.iter().map(|&s| {
            let v = if fixed.contains(&s) {
                s
            } else {
                fixed[rng.gen_range(0..fixed.len())]
            };
            (s, v)
        }),
    );
    validate_pair(f, g).expect("retraction biases always validate")
}

/// All `n^n` total functions on the space, by base-`n` counting.
pub fn all_total_functions(space: &Arc<StateSpace>) -> Vec<StateFunction> {
    let n = space.len();
    let count = n.pow(n as u32);
    (0..count)
        .map(|idx| {
            let mut values = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n {
                values.push(rest % n);
                rest /= n;
            }
            StateFunction::total_from_vec(space, values)
        })
        .collect()
}

/// All idempotent self-maps of `image`.
pub fn all_idempotent_biases(space: &Arc<StateSpace>, image: &StateSet) -> Vec<StateFunction> {
    let members: Vec<usize> = image.iter().collect();
    let m = members.len();
    let count = m.pow(m as u32);
    (0..count)
        .filter_map(|idx| {
            let mut rest = idx;
            let mut entries = Vec::with_capacity(m);
            for &s in &members {
                entries.push((s, members[rest % m]));
                rest /= m;
            }
            let g = StateFunction::from_entries(space, entries);
            (g.idempotency_witness_within(image).is_none()).then_some(g)
        })
        .collect()
}

/// Every relation on the space, one per bitmask. Only feasible for tiny
/// spaces (`n <= 3` gives at most 512).
pub fn all_relations(space: &Arc<StateSpace>) -> impl Iterator<Item = Relation> + '_ {
    let n = space.len();
    (0u64..(1 << (n * n))).map(move |mask| {
        Relation::from_pairs(
            space,
            (0..n * n)
                .filter(move |bit| mask >> bit & 1 == 1)
                .map(|bit| (bit / n, bit % n)),
        )
    })
}

// ---------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------

/// All partitions of `{0..n}` as class-index vectors (restricted growth
/// strings). Counts follow the Bell numbers: 1, 2, 5, 15, 52, ...
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; n];
    fn fill(current: &mut Vec<usize>, i: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for class in 0..=max_used + 1 {
            current[i] = class;
            fill(current, i + 1, max_used.max(class), out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    fill(&mut current, 1, 0, &mut out);
    out
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut classes = vec![0; n];
    let mut max_used = 0;
    for slot in classes.iter_mut().skip(1) {
        *slot = rng.gen_range(0..=max_used + 1);
        max_used = max_used.max(*slot);
    }
    classes
}

pub fn equivalence_from_partition(space: &Arc<StateSpace>, classes: &[usize]) -> Relation {
    let n = space.len();
    assert_eq!(classes.len(), n);
    let mut r = Relation::empty(space);
    for i in 0..n {
        for j in 0..n {
            if classes[i] == classes[j] {
                r.insert(i, j);
            }
        }
    }
    r
}

// ---------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------

/// Constraints the generated visibility/bias functions must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairShape {
    /// Any visibility, any idempotent bias.
    Random,
    /// Any visibility, bias = identity on the visible image.
    Unbiased,
    /// Identity visibility, any idempotent bias.
    IdentityVisibility,
    /// Identity visibility, identity bias.
    Perfect,
}

/// A random loadable model document: 1–2 labels (each a fresh
/// visibility/bias pair typed through its image), 1–3 atoms, every label
/// present as both a belief and a knowledge modality.
pub fn random_model_document(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    shape: PairShape,
) -> ModelDocument {
    let n = rng.gen_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let label_count = rng.gen_range(1..=2);

    let mut types = BTreeMap::new();
    let mut functions = BTreeMap::new();
    let mut belief_labels = BTreeMap::new();
    let mut knowledge_labels = BTreeMap::new();
    for label in ["a", "b"].iter().take(label_count) {
        if shape == PairShape::Perfect {
            belief_labels.insert(label.to_string(), ("id_S".to_string(), "id_S".to_string()));
            knowledge_labels.insert(label.to_string(), ("id_S".to_string(), "id_S".to_string()));
            continue;
        }
        let f: Vec<usize> = match shape {
            PairShape::IdentityVisibility => (0..n).collect(),
            _ => (0..n).map(|_| rng.gen_range(0..n)).collect(),
        };
        let image: Vec<usize> = f.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let fixed: Vec<usize> = match shape {
            PairShape::Unbiased => image.clone(),
            _ => {
                let mut fixed: Vec<usize> =
                    image.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if fixed.is_empty() {
                    fixed.push(image[rng.gen_range(0..image.len())]);
                }
                fixed
            }
        };
        let type_name = format!("V_{label}");
        types.insert(type_name.clone(), image.iter().map(|&s| format!("s{s}")).collect());
        functions.insert(
            format!("f_{label}"),
            FunctionDecl::Direct(DirectDecl {
                domain: "S".to_string(),
                codomain: type_name.clone(),
                map: (0..n).map(|s| (format!("s{s}"), format!("s{}", f[s]))).collect(),
            }),
        );
        functions.insert(
            format!("g_{label}"),
            FunctionDecl::Direct(DirectDecl {
                domain: type_name.clone(),
                codomain: type_name,
                map: image
                    .iter()
                    .map(|&s| {
                        let v = if fixed.contains(&s) {
                            s
                        } else {
                            fixed[rng.gen_range(0..fixed.len())]
                        };
                        (format!("s{s}"), format!("s{v}"))
                    })
                    .collect(),
            }),
        );
        belief_labels.insert(label.to_string(), (format!("f_{label}"), format!("g_{label}")));
        knowledge_labels.insert(label.to_string(), (format!("f_{label}"), format!("g_{label}")));
    }

    let atom_count = rng.gen_range(1..=3);
    let valuation = ["P", "Q", "R"]
        .iter()
        .take(atom_count)
        .map(|atom| {
            let holds: Vec<String> =
                (0..n).filter(|_| rng.gen_bool(0.5)).map(|s| format!("s{s}")).collect();
            (atom.to_string(), holds)
        })
        .collect();

    ModelDocument {
        states,
        types,
        functions,
        belief_labels,
        knowledge_labels,
        valuation,
    }
}

// ---------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------

/// A random formula of height at most `depth` over the given vocabulary.
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    atoms: &[String],
    belief_labels: &[String],
    knowledge_labels: &[String],
    depth: usize,
) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.15) {
            Formula::Bottom
        } else {
            Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone())
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_formula(rng, atoms, belief_labels, knowledge_labels, depth - 1));
    let group = |rng: &mut ChaCha8Rng, labels: &[String]| {
        let mut chosen: Vec<String> =
            labels.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if chosen.is_empty() {
            chosen.push(labels[rng.gen_range(0..labels.len())].clone());
        }
        chosen
    };
    match rng.gen_range(0..12) {
        0 | 1 => leaf(rng),
        2 => Formula::Not(sub(rng)),
        3 => Formula::And(sub(rng), sub(rng)),
        4 => Formula::Or(sub(rng), sub(rng)),
        5 => Formula::Implies(sub(rng), sub(rng)),
        6 => Formula::Iff(sub(rng), sub(rng)),
        7 => Formula::Belief(belief_labels[rng.gen_range(0..belief_labels.len())].clone(), sub(rng)),
        8 => Formula::Knowledge(
            knowledge_labels[rng.gen_range(0..knowledge_labels.len())].clone(),
            sub(rng),
        ),
        9 => {
            let labels = group(rng, belief_labels);
            Formula::DistributedBelief(labels, sub(rng))
        }
        10 => {
            let labels = group(rng, belief_labels);
            Formula::CommonBelief(labels, sub(rng))
        }
        _ => {
            let labels = group(rng, knowledge_labels);
            if rng.gen_bool(0.5) {
                Formula::DistributedKnowledge(labels, sub(rng))
            } else {
                Formula::CommonKnowledge(labels, sub(rng))
            }
        }
    }
}

// ---------------------------------------------------------------------
// Naive oracles
// ---------------------------------------------------------------------

pub fn bool_matrix(r: &Relation, n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| r.contains(i, j)).collect()).collect()
}

pub fn matrix_union(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x || y).collect())
        .collect()
}

pub fn matrix_intersection(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x && y).collect())
        .collect()
}

/// Transitive closure by brute-force fixpoint iteration.
pub fn naive_transitive_closure(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut closed: Vec<Vec<bool>> = m.to_vec();
    loop {
        let mut changed = false;
        for i in 0..n {
            for k in 0..n {
                if !closed[i][k] {
                    continue;
                }
                let row_k = closed[k].clone();
                for (j, &reachable) in row_k.iter().enumerate() {
                    if reachable && !closed[i][j] {
                        closed[i][j] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return closed;
        }
    }
}

pub fn with_diagonal(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let mut out = m.to_vec();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = true;
    }
    out
}

fn group_matrix(model: &Model, labels: &[String], knowledge: bool) -> Vec<Vec<bool>> {
    let n = model.space().len();
    let members: Vec<Vec<Vec<bool>>> = labels
        .iter()
        .map(|label| {
            let rel = if knowledge {
                &model.knowledge(label).expect("known label").relation
            } else {
                &model.belief(label).expect("known label").relation
            };
            bool_matrix(rel, n)
        })
        .collect();
    members[1..]
        .iter()
        .fold(members[0].clone(), |acc, m| matrix_intersection(&acc, m))
}

fn group_union(model: &Model, labels: &[String], knowledge: bool) -> Vec<Vec<bool>> {
    let n = model.space().len();
    let members: Vec<Vec<Vec<bool>>> = labels
        .iter()
        .map(|label| {
            let rel = if knowledge {
                &model.knowledge(label).expect("known label").relation
            } else {
                &model.belief(label).expect("known label").relation
            };
            bool_matrix(rel, n)
        })
        .collect();
    members[1..]
        .iter()
        .fold(members[0].clone(), |acc, m| matrix_union(&acc, m))
}

/// Truth at one state by direct recursion — the reference the memoizing
/// evaluator is judged against.
pub fn naive_sat(model: &Model, formula: &Formula, state: usize) -> bool {
    let boxed = |m: &[Vec<bool>], p: &Formula| {
        m[state]
            .iter()
            .enumerate()
            .all(|(t, &reachable)| !reachable || naive_sat(model, p, t))
    };
    match formula {
        Formula::Atom(name) => model.atom_extension(name).expect("known atom").contains(state),
        Formula::Bottom => false,
        Formula::Not(p) => !naive_sat(model, p, state),
        Formula::And(p, q) => naive_sat(model, p, state) && naive_sat(model, q, state),
        Formula::Or(p, q) => naive_sat(model, p, state) || naive_sat(model, q, state),
        Formula::Implies(p, q) => !naive_sat(model, p, state) || naive_sat(model, q, state),
        Formula::Iff(p, q) => naive_sat(model, p, state) == naive_sat(model, q, state),
        Formula::Belief(label, p) => {
            let n = model.space().len();
            boxed(&bool_matrix(&model.belief(label).expect("known label").relation, n), p)
        }
        Formula::Knowledge(label, p) => {
            let n = model.space().len();
            boxed(&bool_matrix(&model.knowledge(label).expect("known label").relation, n), p)
        }
        Formula::DistributedBelief(labels, p) => boxed(&group_matrix(model, labels, false), p),
        Formula::CommonBelief(labels, p) => {
            boxed(&naive_transitive_closure(&group_union(model, labels, false)), p)
        }
        Formula::DistributedKnowledge(labels, p) => boxed(&group_matrix(model, labels, true), p),
        Formula::CommonKnowledge(labels, p) => boxed(
            &with_diagonal(&naive_transitive_closure(&group_union(model, labels, true))),
            p,
        ),
    }
}
