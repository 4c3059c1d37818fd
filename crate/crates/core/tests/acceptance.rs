//! The acceptance gate. One test per criterion; each prints a
//! `acceptance <n> <name>: PASS (...)` line (run with `--nocapture` to see
//! them) and fails loudly otherwise. Criterion 11 (byte-identical JSON law
//! output) lives in the CLI crate's own acceptance target, next to the
//! binary it exercises.

mod common;

use std::time::{Duration, Instant};

use doxa::checker::{law_suite, Evaluator, LawStatus, LawSuiteConfig};
use doxa::funcpair::validate_pair;
use doxa::relalg::{Relation, StateFunction, StateSet, StateSpace};
use doxa::signature::load_model;
use doxa::synthesis::{from_equivalence, from_kd45};
use doxa::traces::{verify_indist_correspondence, verify_pdl_correspondence, TraceSpace};

const PAIRS_PER_SIZE: usize = 1000;

#[test]
fn criterion_01_belief_relations_are_always_kd45() {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 2..=8 {
        let space = StateSpace::numbered(n);
        let mut rng = common::rng(100 + n as u64);
        for _ in 0..PAIRS_PER_SIZE {
            let pair = common::random_pair(&mut rng, &space);
            let report = pair.doxastic().classify();
            assert!(
                report.serial && report.transitive && report.euclidean,
                "pair on {n} states produced a non-KD45 belief relation: {report}"
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}, budget 5s");
    println!("acceptance 1 kd45-soundness: PASS ({checked} random pairs over sizes 2..=8, {elapsed:?})");
}

#[test]
fn criterion_02_every_kd45_relation_is_reconstructible() {
    let start = Instant::now();
    let mut total = 0usize;
    let mut reconstructed = 0usize;
    for n in 1..=3 {
        let space = StateSpace::numbered(n);
        for relation in common::all_relations(&space) {
            total += 1;
            if !relation.classify().is_kd45() {
                continue;
            }
            let pair = from_kd45(&relation)
                .unwrap_or_else(|e| panic!("KD45 relation rejected: {e} ({relation:?})"));
            assert_eq!(pair.doxastic(), relation, "round-trip failed on {n} states");
            reconstructed += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1s");
    assert!(reconstructed > 0, "enumeration found no KD45 relations");
    println!("acceptance 2 kd45-completeness: PASS ({reconstructed} KD45 relations of {total} enumerated, {elapsed:?})");
}

#[test]
fn criterion_03_knowledge_is_the_smallest_equivalence_over_belief() {
    let mut checked = 0usize;
    for n in 2..=8 {
        let space = StateSpace::numbered(n);
        let mut rng = common::rng(100 + n as u64);
        for _ in 0..PAIRS_PER_SIZE {
            let pair = common::random_pair(&mut rng, &space);
            let d = pair.doxastic();
            assert_eq!(
                pair.epistemic(),
                d.smallest_equivalence(),
                "knowledge differs from the equivalence hull on {n} states"
            );
            checked += 1;
        }
    }
    println!("acceptance 3 s5-soundness-minimality: PASS ({checked} pairs, same generator as criterion 1)");
}

#[test]
fn criterion_04_every_equivalence_is_reconstructible() {
    let mut checked = 0usize;
    for n in 1..=4 {
        let space = StateSpace::numbered(n);
        for classes in common::all_partitions(n) {
            let e = common::equivalence_from_partition(&space, &classes);
            let pair = from_equivalence(&e)
                .unwrap_or_else(|err| panic!("equivalence rejected: {err} ({e:?})"));
            assert_eq!(pair.epistemic(), e, "round-trip failed on {n} states");
            checked += 1;
        }
    }
    println!("acceptance 4 s5-completeness: PASS ({checked} equivalences over sizes 1..=4)");
}

#[test]
fn criterion_05_symmetry_characterizes_unbiased_pairs() {
    let mut checked = 0usize;
    for n in 1..=3 {
        let space = StateSpace::numbered(n);
        for f in common::all_total_functions(&space) {
            for g in common::all_idempotent_biases(&space, &f.image()) {
                let pair = validate_pair(f.clone(), g).expect("idempotent biases validate");
                let d = pair.doxastic();
                let e = pair.epistemic();
                let symmetric = d.symmetry_witness().is_none();
                assert_eq!(symmetric, pair.is_unbiased(), "symmetry vs bias mismatch");
                assert_eq!(symmetric, d == e, "symmetry vs belief=knowledge mismatch");
                assert!(d.is_subset(&e), "belief must imply knowledge accessibility");
                checked += 1;
            }
        }
    }
    println!("acceptance 5 symmetry-characterization: PASS ({checked} exhaustive pairs over sizes 1..=3)");
}

const BELIEF_LAWS: [&str; 5] = ["belief-K", "belief-D", "belief-4", "belief-5", "belief-N"];
const KNOWLEDGE_LAWS: [&str; 5] = [
    "knowledge-K",
    "knowledge-T",
    "knowledge-4",
    "knowledge-5",
    "knowledge-N",
];

#[test]
fn criterion_06_law_suites_hold_and_fault_injection_is_detected() {
    let cfg = LawSuiteConfig::default();
    let mut models = 0usize;
    let mut law_checks = 0usize;
    for seed in 0..100u64 {
        let mut rng = common::rng(600 + seed);
        let doc = common::random_model_document(&mut rng, 5, common::PairShape::Random);
        let model = load_model(&doc).expect("generated documents load");
        let reports = law_suite(&model, &cfg);
        let mut this_model = 0usize;
        for report in &reports {
            if BELIEF_LAWS.contains(&report.law.as_str())
                || KNOWLEDGE_LAWS.contains(&report.law.as_str())
            {
                assert!(
                    matches!(report.status, LawStatus::Valid),
                    "model seed {seed}: {report}"
                );
                this_model += 1;
            }
        }
        // Five belief laws and five knowledge laws per label.
        let labels = model.similarity_type().belief_labels.len();
        assert_eq!(this_model, labels * 10, "missing law verdicts");
        law_checks += this_model;
        models += 1;
    }

    // Fault injection: a relation with a successor-less state must make
    // the consistency law fail, and the suite must say so.
    let mut rng = common::rng(606);
    let doc = loop {
        let candidate = common::random_model_document(&mut rng, 5, common::PairShape::Random);
        if candidate.states.len() >= 2 {
            break candidate;
        }
    };
    let mut model = load_model(&doc).expect("generated documents load");
    let n = model.space().len();
    let non_serial = Relation::from_pairs(model.space(), (1..n).map(|i| (i, i)));
    model
        .override_belief_relation("a", non_serial)
        .expect("label a always exists");
    let reports = law_suite(&model, &cfg);
    let d_report = reports
        .iter()
        .find(|r| r.law == "belief-D" && r.label.as_deref() == Some("a"))
        .expect("belief-D is always reported");
    assert!(
        d_report.failed(),
        "fault-injected non-serial relation went undetected: {d_report}"
    );
    println!("acceptance 6 law-suites: PASS ({models} random models, {law_checks} modal law verdicts, fault injection detected)");
}

fn all_masks(space: &std::sync::Arc<StateSpace>) -> impl Iterator<Item = StateSet> + '_ {
    (0u64..(1 << space.len())).map(move |bits| StateSet::from_bits(space, bits))
}

/// `K phi <-> B phi` holds under every valuation iff the boxes agree on
/// every extension.
fn frame_valid_k_iff_b(space: &std::sync::Arc<StateSpace>, d: &Relation, e: &Relation) -> bool {
    all_masks(space).all(|x| d.box_over(&x) == e.box_over(&x))
}

/// `~K phi -> K ~phi` holds under every valuation iff complements of boxes
/// land in boxes of complements.
fn frame_valid_negation_complete(space: &std::sync::Arc<StateSpace>, e: &Relation) -> bool {
    all_masks(space).all(|x| e.box_over(&x).complement().is_subset(&e.box_over(&x.complement())))
}

/// `phi -> K phi` holds under every valuation iff every set sits inside
/// its own box.
fn frame_valid_truth_to_knowledge(space: &std::sync::Arc<StateSpace>, e: &Relation) -> bool {
    all_masks(space).all(|x| x.is_subset(&e.box_over(&x)))
}

#[test]
fn criterion_07_conditional_laws_and_biconditionals() {
    let cfg = LawSuiteConfig::default();

    // Conditional laws valid whenever their side conditions hold, checked
    // through the suite on models shaped to meet each condition.
    let expect_valid = |shape: common::PairShape, laws: &[&str], seed_base: u64| {
        let mut seen = 0usize;
        for seed in 0..25u64 {
            let mut rng = common::rng(seed_base + seed);
            let doc = common::random_model_document(&mut rng, 4, shape);
            let model = load_model(&doc).expect("generated documents load");
            for report in law_suite(&model, &cfg) {
                if laws.contains(&report.law.as_str()) {
                    assert!(report.asserted, "side condition met but not asserted: {report}");
                    assert!(
                        matches!(report.status, LawStatus::Valid),
                        "{shape:?} seed {seed}: {report}"
                    );
                    seen += 1;
                }
            }
        }
        assert!(seen >= 25, "expected {laws:?} reports on every shaped model");
        seen
    };
    let unbiased = expect_valid(
        common::PairShape::Unbiased,
        &["knowledge-as-unbiased-belief", "unbiased-belief-is-true"],
        700,
    );
    let perfect = expect_valid(
        common::PairShape::Perfect,
        &["perfect-knowledge", "perfect-knowledge-as-precise-belief"],
        725,
    );
    let implication = expect_valid(common::PairShape::Random, &["knowledge-implies-belief"], 750);
    let negation = expect_valid(
        common::PairShape::IdentityVisibility,
        &["negation-complete-belief"],
        775,
    );

    // Bias cancellation, both directions, over exhaustively enumerated
    // labels: the knowledge/belief boxes agree under every valuation
    // exactly when the bias is the identity on the visible image.
    let mut cancellation = [0usize; 2];
    for n in 1..=3 {
        let space = StateSpace::numbered(n);
        for f in common::all_total_functions(&space) {
            for g in common::all_idempotent_biases(&space, &f.image()) {
                let pair = validate_pair(f.clone(), g).expect("idempotent biases validate");
                let agree = frame_valid_k_iff_b(&space, &pair.doxastic(), &pair.epistemic());
                assert_eq!(agree, pair.is_unbiased(), "bias cancellation failed");
                cancellation[usize::from(agree)] += 1;
            }
        }
    }
    assert!(cancellation[0] > 0 && cancellation[1] > 0, "both directions must occur");

    // Negation-complete knowledge, both directions, for identity
    // visibility: frame validity of ~K phi -> K ~phi exactly when the
    // bias is injective.
    let mut negation_complete = [0usize; 2];
    for n in 1..=3 {
        let space = StateSpace::numbered(n);
        let full = StateSet::full(&space);
        for g in common::all_idempotent_biases(&space, &full) {
            let injective = g.injectivity_witness_on(&full).is_none();
            let pair = validate_pair(StateFunction::identity(&space), g)
                .expect("idempotent biases validate");
            let valid = frame_valid_negation_complete(&space, &pair.epistemic());
            assert_eq!(valid, injective, "negation-complete knowledge mismatch");
            negation_complete[usize::from(valid)] += 1;
        }
    }
    assert!(negation_complete[0] > 0 && negation_complete[1] > 0);

    // Idempotent + injective forces the identity, over every endofunction
    // on up to four states.
    let mut endofunctions = 0usize;
    for n in 1..=4 {
        let space = StateSpace::numbered(n);
        let full = StateSet::full(&space);
        for h in common::all_total_functions(&space) {
            let idempotent = h.idempotency_witness_within(&full).is_none();
            let injective = h.injectivity_witness_on(&full).is_none();
            assert_eq!(
                idempotent && injective,
                h.is_identity_on(&full),
                "idempotent+injective must pin the identity"
            );
            endofunctions += 1;
        }
    }

    // Negation-complete knowledge coincides with perfect knowledge on the
    // same enumeration (identity visibility, idempotent biases).
    let mut coincide = 0usize;
    for n in 1..=4 {
        let space = StateSpace::numbered(n);
        let full = StateSet::full(&space);
        for g in common::all_idempotent_biases(&space, &full) {
            let pair = validate_pair(StateFunction::identity(&space), g)
                .expect("idempotent biases validate");
            let e = pair.epistemic();
            assert_eq!(
                frame_valid_negation_complete(&space, &e),
                frame_valid_truth_to_knowledge(&space, &e),
                "negation-complete and perfect knowledge must coincide"
            );
            coincide += 1;
        }
    }

    println!(
        "acceptance 7 modality-conditionals: PASS ({} conditional verdicts, {} cancellation labels, {} negation-complete labels, {endofunctions} endofunctions, {coincide} coincidence checks)",
        unbiased + perfect + implication + negation,
        cancellation[0] + cancellation[1],
        negation_complete[0] + negation_complete[1],
    );
}

#[test]
fn criterion_08_projection_kernels_are_the_constructed_knowledge() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut largest = 0usize;
    for agents in 1..=3usize {
        let labels: Vec<String> = (1..=agents).map(|i| i.to_string()).collect();
        for depth in 0..=4usize {
            let ts = TraceSpace::new(labels.clone(), depth).unwrap();
            largest = largest.max(ts.len());
            for agent in &labels {
                let report = verify_indist_correspondence(&ts, agent).unwrap();
                assert!(
                    report.comparison.matched,
                    "agent {agent}, {agents} agents, depth {depth}: {report:?}"
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}, budget 10s");
    assert_eq!(largest, 121, "grid must reach the 121-state space");
    println!("acceptance 8 indistinguishability-correspondence: PASS ({checked} agent/grid checks, largest space {largest} states, {elapsed:?})");
}

#[test]
fn criterion_09_step_closures_match_the_star_term() {
    let mut checked = 0usize;
    for agents in 1..=3usize {
        let labels: Vec<String> = (1..=agents).map(|i| i.to_string()).collect();
        for depth in 0..=4usize {
            let ts = TraceSpace::new(labels.clone(), depth).unwrap();
            for agent in &labels {
                let report = verify_pdl_correspondence(&ts, agent).unwrap();
                assert!(
                    report.interior.matched,
                    "interior mismatch, agent {agent}, {agents} agents, depth {depth}: {report:?}"
                );
                assert!(
                    report.boundary.matched,
                    "boundary mismatch, agent {agent}, {agents} agents, depth {depth}: {report:?}"
                );
                checked += 1;
            }
        }
    }

    // Negative test: one step of an action is not idempotent, so it can
    // never serve as a bias.
    let ts = TraceSpace::new(["1", "2"], 2).unwrap();
    let step = ts.step_function("1").unwrap();
    let zero = ts.space().position("0").unwrap();
    let once = step.apply(zero).expect("the root can act");
    assert_ne!(step.apply(once), Some(once), "acting twice must differ from acting once");
    assert!(
        validate_pair(StateFunction::identity(ts.space()), step).is_err(),
        "a step function must be rejected as a bias"
    );
    println!("acceptance 9 step-term-correspondence: PASS ({checked} agent/grid checks, negative test rejected)");
}

#[test]
fn criterion_10_checker_agrees_with_the_naive_oracle() {
    let mut formulas = 0usize;
    let mut state_checks = 0usize;
    for model_seed in 0..25u64 {
        let mut rng = common::rng(1000 + model_seed);
        let doc = common::random_model_document(&mut rng, 5, common::PairShape::Random);
        let model = load_model(&doc).expect("generated documents load");
        let atoms: Vec<String> = model.valuation().keys().cloned().collect();
        let blabels: Vec<String> =
            model.similarity_type().belief_labels.keys().cloned().collect();
        let klabels: Vec<String> =
            model.similarity_type().knowledge_labels.keys().cloned().collect();
        let mut evaluator = Evaluator::new(&model);
        for _ in 0..24 {
            let formula = common::random_formula(&mut rng, &atoms, &blabels, &klabels, 4);
            let extension = evaluator.extension_of(&formula).expect("vocabulary is declared");
            for state in 0..model.space().len() {
                assert_eq!(
                    extension.contains(state),
                    common::naive_sat(&model, &formula, state),
                    "disagreement at state {state} on {formula}"
                );
                state_checks += 1;
            }
            formulas += 1;
        }
    }
    assert!(formulas >= 500, "need at least 500 formulas, got {formulas}");
    println!("acceptance 10 checker-oracle: PASS ({formulas} formulas, {state_checks} state checks)");
}
