//! Algebraic laws of the bounded-horizon semantics on random instances.

mod common;

use common::*;
use proptest::prelude::*;

fn run(law: impl Fn(&mut rand_chacha::ChaCha8Rng) -> LawResult, seed: u64) -> Result<(), TestCaseError> {
    match law(&mut rng(seed)) {
        Ok(Outcome::Pass) => Ok(()),
        Ok(Outcome::Skip) => Err(TestCaseError::reject("enumeration guard")),
        Err(m) => Err(TestCaseError::fail(m)),
    }
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 200,
        max_global_rejects: 20_000,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn involution(seed in any::<u64>()) { run(law_involution, seed)?; }

    #[test]
    fn adequacy(seed in any::<u64>()) { run(law_adequacy, seed)?; }

    #[test]
    fn operator_monotonicity(seed in any::<u64>()) { run(law_oprmon, seed)?; }

    #[test]
    fn evolution_monotonicity(seed in any::<u64>()) { run(law_evlmon, seed)?; }

    #[test]
    fn refinement(seed in any::<u64>()) { run(law_refinement, seed)?; }

    #[test]
    fn double_dualization(seed in any::<u64>()) { run(law_double_dual, seed)?; }

    #[test]
    fn double_negation(seed in any::<u64>()) { run(|r| boolean_law(1, r), seed)?; }

    #[test]
    fn conjunction_elimination(seed in any::<u64>()) { run(|r| boolean_law(2, r), seed)?; }

    #[test]
    fn disjunction_introduction(seed in any::<u64>()) { run(|r| boolean_law(3, r), seed)?; }

    #[test]
    fn conjunction_associativity(seed in any::<u64>()) { run(|r| boolean_law(4, r), seed)?; }

    #[test]
    fn disjunction_associativity(seed in any::<u64>()) { run(|r| boolean_law(5, r), seed)?; }

    #[test]
    fn conjunction_de_morgan(seed in any::<u64>()) { run(|r| boolean_law(6, r), seed)?; }

    #[test]
    fn disjunction_de_morgan(seed in any::<u64>()) { run(|r| boolean_law(7, r), seed)?; }

    #[test]
    fn existential_duality(seed in any::<u64>()) { run(|r| boolean_law(8, r), seed)?; }

    #[test]
    fn universal_duality(seed in any::<u64>()) { run(|r| boolean_law(9, r), seed)?; }

    #[test]
    fn prefix_evolution(seed in any::<u64>()) { run(law_prefix_evolution, seed)?; }

    #[test]
    fn normal_evolution(seed in any::<u64>()) { run(law_nev_ev, seed)?; }

    #[test]
    fn normal_evolution_restriction(seed in any::<u64>()) { run(law_nev_restriction, seed)?; }

    #[test]
    fn functor_uniformity(seed in any::<u64>()) { run(law_bhvfnc, seed)?; }

    #[test]
    fn canonical_ordering(seed in any::<u64>()) { run(law_qntswp, seed)?; }
}

#[test]
fn containment_fails_off_antichains() {
    use gfgq_core::hyperoracle::{AsgSet, Hyperassignment, Limits, Space};
    let space = Space::new(props(&["p"]), 1).unwrap();
    let (a, b) = (AsgSet::singleton(0), AsgSet::singleton(1));
    let fam = Hyperassignment::new(space, [a, b, a.union(&b)]).unwrap();
    let l = Limits::default();
    let dd = fam.dualize(&l).unwrap().dualize(&l).unwrap();
    assert_eq!(dd.len(), 2);
    assert!(!dd.sets().contains(&a.union(&b)));
    assert!(fam.equivalent(&dd).unwrap());
}
