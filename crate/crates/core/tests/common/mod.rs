//! Generators, independent oracles and law checks shared by the integration
//! suites and the acceptance target.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gfgq_core::formula::{
    Formula, GeneralFormula, Ltl, Prefix, Prop, PropSet, QuantKind, QuantSpec, Quantifier,
};
use gfgq_core::hyperoracle::{
    enumerate_functors, evolve, spec_equiv, AsgSet, Assignment, DualMode, EvolveMode, Evaluator,
    Flag, Hyperassignment, Limits, Space,
};
use gfgq_core::models::KripkeStructure;
use gfgq_core::omega::{eval_ltl, Alphabet, LassoWord};
use gfgq_core::parity::{ParityGame, Player};
use gfgq_core::prefix_canon::canonize;
use gfgq_core::Error;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn props(names: &[&str]) -> Vec<Prop> {
    names.iter().map(|n| Prop::new(*n)).collect()
}

// ---------------------------------------------------------------- formulae

/// Random LTL over `atoms`. Without `temporal` only `X` is used.
pub fn random_ltl(rng: &mut ChaCha8Rng, atoms: &[Prop], depth: usize, temporal: bool) -> Ltl {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Ltl::True,
            1 => Ltl::False,
            _ => Ltl::atom(atoms.choose(rng).expect("atoms").clone()),
        };
    }
    let d = depth - 1;
    let ops = if temporal { 9 } else { 4 };
    match rng.gen_range(0..ops) {
        0 => Ltl::not(random_ltl(rng, atoms, d, temporal)),
        1 => Ltl::and(random_ltl(rng, atoms, d, temporal), random_ltl(rng, atoms, d, temporal)),
        2 => Ltl::or(random_ltl(rng, atoms, d, temporal), random_ltl(rng, atoms, d, temporal)),
        3 => Ltl::next(random_ltl(rng, atoms, d, temporal)),
        4 => Ltl::future(random_ltl(rng, atoms, d, temporal)),
        5 => Ltl::globally(random_ltl(rng, atoms, d, temporal)),
        6 => Ltl::until(random_ltl(rng, atoms, d, temporal), random_ltl(rng, atoms, d, temporal)),
        7 => Ltl::iff(random_ltl(rng, atoms, d, temporal), random_ltl(rng, atoms, d, temporal)),
        _ => Ltl::release(random_ltl(rng, atoms, d, temporal), random_ltl(rng, atoms, d, temporal)),
    }
}

/// Random LTL with `X`-nesting at most `xdepth` and no other temporal
/// operator.
pub fn random_x_bounded(rng: &mut ChaCha8Rng, atoms: &[Prop], depth: usize, xdepth: usize) -> Ltl {
    if depth == 0 || rng.gen_bool(0.2) {
        return Ltl::atom(atoms.choose(rng).expect("atoms").clone());
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => Ltl::not(random_x_bounded(rng, atoms, d, xdepth)),
        1 => Ltl::and(random_x_bounded(rng, atoms, d, xdepth), random_x_bounded(rng, atoms, d, xdepth)),
        2 => Ltl::or(random_x_bounded(rng, atoms, d, xdepth), random_x_bounded(rng, atoms, d, xdepth)),
        3 => Ltl::iff(random_x_bounded(rng, atoms, d, xdepth), random_x_bounded(rng, atoms, d, xdepth)),
        _ if xdepth > 0 => Ltl::next(random_x_bounded(rng, atoms, d, xdepth - 1)),
        _ => Ltl::not(random_x_bounded(rng, atoms, d, xdepth)),
    }
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[Prop]) -> Vec<Prop> {
    pool.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// Random specification drawn from vanilla, `B`, `S`, `B ∪ S<..>` and
/// explicit sets over `pool`.
pub fn random_spec(rng: &mut ChaCha8Rng, pool: &[Prop]) -> QuantSpec {
    match rng.gen_range(0..5) {
        0 => QuantSpec::vanilla(),
        1 => QuantSpec::b(),
        2 => QuantSpec::s(),
        3 => QuantSpec::b_strong(random_subset(rng, pool)),
        _ => QuantSpec::new(
            PropSet::of(random_subset(rng, pool)),
            PropSet::of(random_subset(rng, pool)),
        ),
    }
}

fn random_kind(rng: &mut ChaCha8Rng) -> QuantKind {
    if rng.gen_bool(0.5) {
        QuantKind::Exists
    } else {
        QuantKind::Forall
    }
}

/// Random general formula whose free propositions lie in `free`; bound
/// propositions come from `fresh`, never rebinding along a branch. With
/// `vanilla` every quantifier is unrestricted.
pub fn random_general(
    rng: &mut ChaCha8Rng,
    free: &[Prop],
    fresh: &[Prop],
    depth: usize,
    vanilla: bool,
) -> GeneralFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        return GeneralFormula::Ltl(random_ltl(rng, free, 2, true));
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => GeneralFormula::not(random_general(rng, free, fresh, d, vanilla)),
        1 => GeneralFormula::and(
            random_general(rng, free, fresh, d, vanilla),
            random_general(rng, free, fresh, d, vanilla),
        ),
        2 => GeneralFormula::or(
            random_general(rng, free, fresh, d, vanilla),
            random_general(rng, free, fresh, d, vanilla),
        ),
        _ => match fresh.split_first() {
            None => GeneralFormula::Ltl(random_ltl(rng, free, 2, true)),
            Some((p, rest)) => {
                let spec = if vanilla {
                    QuantSpec::vanilla()
                } else {
                    random_spec(rng, free)
                };
                let mut inner = free.to_vec();
                inner.push(p.clone());
                let body = random_general(rng, &inner, rest, d, vanilla);
                GeneralFormula::quant(Quantifier::new(random_kind(rng), p.clone(), spec), body)
            }
        },
    }
}

/// Random behavioral prefix over `names` (a random non-empty prefix of
/// them, at most `max` long).
pub fn random_behavioral_prefix(rng: &mut ChaCha8Rng, names: &[&str], max: usize) -> Prefix {
    let n = rng.gen_range(1..=max.min(names.len()));
    Prefix::new(
        names[..n]
            .iter()
            .map(|p| Quantifier::new(random_kind(rng), Prop::new(*p), QuantSpec::b()))
            .collect(),
    )
    .expect("distinct names")
}

/// Random closed behavioral sentence.
pub fn random_sentence(rng: &mut ChaCha8Rng, max_quants: usize, x_bounded: bool) -> Formula {
    let prefix = random_behavioral_prefix(rng, &["a", "b", "c", "d"], max_quants);
    let atoms = prefix.props();
    let matrix = if x_bounded {
        random_x_bounded(rng, &atoms, 3, 1)
    } else {
        random_ltl(rng, &atoms, 3, true)
    };
    Formula::new(prefix, matrix)
}

// ----------------------------------------------------------- hyperassignments

/// Random hyperassignment over `names` at horizon `h`.
pub fn random_hyper(
    rng: &mut ChaCha8Rng,
    names: &[&str],
    h: usize,
    max_sets: usize,
    max_size: usize,
) -> Hyperassignment {
    let space = Space::new(props(names), h).expect("space");
    let size = space.size() as u32;
    let n = rng.gen_range(1..=max_sets);
    let sets: Vec<AsgSet> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_size.min(size as usize));
            let mut x = AsgSet::new();
            while x.len() < k {
                x.insert(rng.gen_range(0..size));
            }
            x
        })
        .collect();
    Hyperassignment::new(space, sets).expect("valid hyperassignment")
}

/// A pair `a1 ⊑ a2`: every set of `a1` is a superset of a set of `a2`.
pub fn random_refining_pair(
    rng: &mut ChaCha8Rng,
    names: &[&str],
    h: usize,
    max_sets: usize,
    max_size: usize,
) -> (Hyperassignment, Hyperassignment) {
    let a2 = random_hyper(rng, names, h, max_sets, max_size);
    let size = a2.space().size() as u32;
    let base: Vec<AsgSet> = a2.sets().iter().copied().collect();
    let n = rng.gen_range(1..=max_sets);
    let sets: Vec<AsgSet> = (0..n)
        .map(|_| {
            let mut x = *base.choose(rng).expect("non-empty");
            for _ in 0..rng.gen_range(0..=2) {
                x.insert(rng.gen_range(0..size));
            }
            x
        })
        .collect();
    let a1 = Hyperassignment::new(a2.space().clone(), sets).expect("valid");
    (a1, a2)
}

fn family(a: &Hyperassignment) -> BTreeSet<AsgSet> {
    a.sets().clone()
}

// ------------------------------------------------------------------- laws

/// Outcome of one law instance.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// An enumeration guard tripped; the instance does not count.
    Skip,
}

pub type LawResult = Result<Outcome, String>;

/// Unwrap a library result; resource guards turn the instance into a skip.
macro_rules! g {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) if e.is_resource() => return Ok(Outcome::Skip),
            Err(e) => return Err(format!("unexpected error: {e}")),
        }
    };
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn flag(rng: &mut ChaCha8Rng) -> Flag {
    if rng.gen_bool(0.5) {
        Flag::EA
    } else {
        Flag::AE
    }
}

fn horizon(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=3)
}

fn small_limits() -> Limits {
    Limits {
        functors: 1 << 12,
        choice_functions: 50_000,
        partition_sets: 10,
        selection_maps: 50_000,
        sets: 1 << 14,
        ..Limits::default()
    }
}

fn evaluator() -> Evaluator {
    Evaluator::new(DualMode::Exact, small_limits())
}

/// Domain and fresh names for formula laws: one free proposition, up to
/// two bound ones.
fn formula_setup(rng: &mut ChaCha8Rng) -> (Hyperassignment, Vec<Prop>, Vec<Prop>) {
    let h = horizon(rng);
    let a = random_hyper(rng, &["p"], h, 3, 3);
    (a, props(&["p"]), props(&["q", "r"]))
}

fn random_phi(rng: &mut ChaCha8Rng, free: &[Prop], fresh: &[Prop]) -> GeneralFormula {
    random_general(rng, free, fresh, 2, false)
}

pub fn law_involution(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let names: &[&str] = if h == 1 { &["p", "q"] } else { &["p"] };
    let a = random_hyper(rng, names, h, 4, 3);
    let l = small_limits();
    let dd = g!(g!(a.dualize(&l)).dualize(&l));
    // Containment only holds for antichains: {{a},{b},{a,b}} dualizes twice
    // to {{a},{b}}.
    let m = a.min_antichain();
    let mdd = g!(g!(m.dualize(&l)).dualize(&l));
    check(family(&m).is_subset(&family(&mdd)), || {
        format!("antichain not contained in its double dual:\n{}", m.dump())
    })?;
    check(g!(a.equivalent(&dd)), || format!("A not equivalent to dual(dual(A)):\n{}", a.dump()))?;
    Ok(Outcome::Pass)
}

pub fn law_adequacy(rng: &mut ChaCha8Rng) -> LawResult {
    let (a, free, fresh) = formula_setup(rng);
    let phi = random_general(rng, &free, &fresh, 2, true);
    let ev = evaluator();
    let mut holds = Vec::new();
    for x in a.sets() {
        let mut v = Vec::new();
        for c in x.iter() {
            let chi = Assignment::new(a.space().clone(), c).expect("in space");
            v.push(g!(gfgq_core::hyperoracle::eval_tarski(&chi, &phi)));
        }
        holds.push(v);
    }
    let ea = holds.iter().any(|v| v.iter().all(|b| *b));
    let ae = holds.iter().all(|v| v.iter().any(|b| *b));
    let got_ea = g!(ev.eval(&a, &phi, Flag::EA));
    let got_ae = g!(ev.eval(&a, &phi, Flag::AE));
    check(got_ea == ea && got_ae == ae, || {
        format!("adequacy fails for {phi:?} on\n{}", a.dump())
    })?;
    Ok(Outcome::Pass)
}

pub fn law_oprmon(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let (a1, a2) = random_refining_pair(rng, &["p"], h, 3, 3);
    check(g!(a1.refines(&a2)), || "generator broke a1 ⊑ a2".into())?;
    let l = small_limits();
    let d1 = g!(a1.dualize(&l));
    let d2 = g!(a2.dualize(&l));
    check(g!(d2.refines(&d1)), || format!("dual not antitone:\n{}--\n{}", a1.dump(), a2.dump()))?;
    let spec = random_spec(rng, &props(&["p"]));
    let q = Prop::new("q");
    let e1 = g!(a1.extend(&q, &spec, &l));
    let e2 = g!(a2.extend(&q, &spec, &l));
    check(g!(e1.refines(&e2)), || format!("extension not monotone for {spec}"))?;
    Ok(Outcome::Pass)
}

fn random_prefix_over(rng: &mut ChaCha8Rng, names: &[&str], pool: &[Prop], max: usize) -> Prefix {
    let n = rng.gen_range(0..=max.min(names.len()));
    let mut seen = pool.to_vec();
    let mut qs = Vec::new();
    for name in &names[..n] {
        let spec = random_spec(rng, &seen);
        qs.push(Quantifier::new(random_kind(rng), Prop::new(*name), spec));
        seen.push(Prop::new(*name));
    }
    Prefix::new(qs).expect("distinct")
}

pub fn law_evlmon(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let (a1, a2) = random_refining_pair(rng, &["p"], h, 3, 3);
    let prefix = random_prefix_over(rng, &["q", "r"], &props(&["p"]), 2);
    let alpha = flag(rng);
    let l = small_limits();
    let e1 = g!(evolve(&a1, &prefix, alpha, EvolveMode::Ev, DualMode::Minimal, &l));
    let e2 = g!(evolve(&a2, &prefix, alpha, EvolveMode::Ev, DualMode::Minimal, &l));
    check(g!(e1.refines(&e2)), || format!("evolution not monotone for {prefix}"))?;
    Ok(Outcome::Pass)
}

pub fn law_refinement(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let (a1, a2) = random_refining_pair(rng, &["p"], h, 3, 3);
    let phi = random_phi(rng, &props(&["p"]), &props(&["q", "r"]));
    let ev = evaluator();
    if g!(ev.eval(&a1, &phi, Flag::EA)) {
        check(g!(ev.eval(&a2, &phi, Flag::EA)), || format!("EA refinement fails for {phi:?}"))?;
    }
    if g!(ev.eval(&a2, &phi, Flag::AE)) {
        check(g!(ev.eval(&a1, &phi, Flag::AE)), || format!("AE refinement fails for {phi:?}"))?;
    }
    Ok(Outcome::Pass)
}

pub fn law_double_dual(rng: &mut ChaCha8Rng) -> LawResult {
    let (a, free, fresh) = formula_setup(rng);
    let phi = random_phi(rng, &free, &fresh);
    let alpha = flag(rng);
    let ev = evaluator();
    let l = small_limits();
    let d = g!(a.dualize(&l));
    let dd = g!(d.dualize(&l));
    let base = g!(ev.eval(&a, &phi, alpha));
    let via_dual = g!(ev.eval(&d, &phi, alpha.dual()));
    let via_dd = g!(ev.eval(&dd, &phi, alpha));
    check(base == via_dual && base == via_dd, || {
        format!("double dualization fails for {phi:?} under {alpha:?}")
    })?;
    Ok(Outcome::Pass)
}

/// The nine Boolean laws; `implies` marks the one-directional ones.
pub fn boolean_law(index: usize, rng: &mut ChaCha8Rng) -> LawResult {
    use GeneralFormula as G;
    let (a, free, fresh) = formula_setup(rng);
    let mut phi = || random_general(rng, &free, &fresh[1..], 1, false);
    let (f1, f2, f) = (phi(), phi(), phi());
    let not = G::not;
    let (lhs, rhs, implies) = match index {
        1 => (f.clone(), not(not(f)), false),
        2 => (G::and(f1.clone(), f2), f1, true),
        3 => (f1.clone(), G::or(f1, f2), true),
        4 => (
            G::and(f1.clone(), G::and(f.clone(), f2.clone())),
            G::and(G::and(f1, f), f2),
            false,
        ),
        5 => (
            G::or(f1.clone(), G::or(f.clone(), f2.clone())),
            G::or(G::or(f1, f), f2),
            false,
        ),
        6 => (
            G::and(f1.clone(), f2.clone()),
            not(G::or(not(f1), not(f2))),
            false,
        ),
        7 => (
            G::or(f1.clone(), f2.clone()),
            not(G::and(not(f1), not(f2))),
            false,
        ),
        8 | 9 => {
            let q = fresh[0].clone();
            let mut inner = free.clone();
            inner.push(q.clone());
            let body = random_general(rng, &inner, &fresh[1..], 1, false);
            let spec = random_spec(rng, &free);
            let (k, dual) = if index == 8 {
                (QuantKind::Exists, QuantKind::Forall)
            } else {
                (QuantKind::Forall, QuantKind::Exists)
            };
            (
                G::quant(Quantifier::new(k, q.clone(), spec.clone()), body.clone()),
                not(G::quant(Quantifier::new(dual, q, spec), not(body))),
                false,
            )
        }
        _ => return Err(format!("no Boolean law {index}")),
    };
    let ev = evaluator();
    for alpha in [Flag::EA, Flag::AE] {
        let l = g!(ev.eval(&a, &lhs, alpha));
        let r = g!(ev.eval(&a, &rhs, alpha));
        let ok = if implies { !l || r } else { l == r };
        check(ok, || {
            format!("Boolean law {index} fails under {alpha:?}: {lhs:?} vs {rhs:?} on\n{}", a.dump())
        })?;
    }
    Ok(Outcome::Pass)
}

pub fn law_prefix_evolution(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let a = random_hyper(rng, &["p"], h, 3, 3);
    let prefix = random_prefix_over(rng, &["q", "r"], &props(&["p"]), 2);
    let mut atoms = props(&["p"]);
    atoms.extend(prefix.props());
    let matrix = random_ltl(rng, &atoms, 2, true);
    let alpha = flag(rng);
    let ev = evaluator();
    let whole = Formula::new(prefix.clone(), matrix.clone()).to_general();
    let lhs = g!(ev.eval(&a, &whole, alpha));
    let evolved = g!(evolve(&a, &prefix, alpha, EvolveMode::Ev, DualMode::Exact, &small_limits()));
    let rhs = g!(ev.eval(&evolved, &GeneralFormula::Ltl(matrix), alpha));
    check(lhs == rhs, || format!("prefix evolution fails for {prefix} under {alpha:?}"))?;
    Ok(Outcome::Pass)
}

pub fn law_nev_ev(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let a = random_hyper(rng, &["p"], h, 2, 2);
    let prefix = random_prefix_over(rng, &["q", "r"], &props(&["p"]), 2);
    let alpha = flag(rng);
    let l = small_limits();
    let ev = g!(evolve(&a, &prefix, alpha, EvolveMode::Ev, DualMode::Exact, &l));
    let nev = g!(evolve(&a, &prefix, alpha, EvolveMode::Nev, DualMode::Exact, &l));
    check(g!(ev.equivalent(&nev)), || format!("NEV differs from EV for {prefix} under {alpha:?}"))?;
    Ok(Outcome::Pass)
}

pub fn law_nev_restriction(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let a = random_hyper(rng, &["p"], h, 3, 3);
    let prefix = random_prefix_over(rng, &["q", "r"], &props(&["p"]), 2);
    let alpha = flag(rng);
    let nev = g!(evolve(&a, &prefix, alpha, EvolveMode::Nev, DualMode::Exact, &small_limits()));
    let back = g!(nev.restrict_off(&prefix.props()));
    let all = a.union_all();
    check(back.sets().iter().all(|y| y.is_subset(&all)), || {
        format!("restriction escapes the union for {prefix}")
    })?;
    Ok(Outcome::Pass)
}

/// The three componentwise conditions, computed on temporal valuations.
fn equiv_by_definition(c1: &Assignment, c2: &Assignment, spec: &QuantSpec, k: usize) -> bool {
    c1.space().props().iter().all(|p| {
        let (v1, v2) = (c1.get(p).expect("in domain"), c2.get(p).expect("in domain"));
        let agree_below = |n: usize| (0..n.min(v1.len())).all(|t| v1.get(t) == v2.get(t));
        if spec.strong.contains(p) {
            agree_below(k)
        } else if spec.behavioral.contains(p) {
            agree_below(k + 1)
        } else {
            v1 == v2
        }
    })
}

pub fn law_bhvfnc(rng: &mut ChaCha8Rng) -> LawResult {
    let h = horizon(rng);
    let names: &[&str] = if h == 1 && rng.gen_bool(0.5) { &["p", "q"] } else { &["p"] };
    let pool = props(names);
    let spec = random_spec(rng, &pool);
    let l = Limits {
        functors: 1 << 12,
        ..Limits::default()
    };
    let fs = g!(enumerate_functors(pool.clone(), &spec, h, &l));
    let space = Space::new(pool, h).expect("space");
    let chis: Vec<Assignment> = space
        .codes()
        .map(|c| Assignment::new(space.clone(), c).expect("in range"))
        .collect();
    for k in 0..h {
        for c1 in &chis {
            for c2 in &chis {
                let eq = g!(spec_equiv(c1, c2, &spec, k));
                check(eq == equiv_by_definition(c1, c2, &spec, k), || {
                    format!("spec_equiv disagrees with the definition for {spec} at {k}")
                })?;
                if !eq {
                    continue;
                }
                for f in fs.iter().take(64) {
                    let (o1, o2) = (f.apply(c1.code()), f.apply(c2.code()));
                    check(o1 >> k & 1 == o2 >> k & 1, || {
                        format!("functor not uniform for {spec} at time {k}")
                    })?;
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

pub fn law_qntswp(rng: &mut ChaCha8Rng) -> LawResult {
    let h = rng.gen_range(1..=2);
    let a = random_hyper(rng, &["p"], h, 2, 2);
    let prefix = random_behavioral_prefix(rng, &["q", "r", "s"], 3);
    let alpha = flag(rng);
    // Transversal pruning is quadratic in the family size.
    let l = Limits {
        sets: 1 << 11,
        ..small_limits()
    };
    let ev = |p: &Prefix| evolve(&a, p, alpha, EvolveMode::Ev, DualMode::Minimal, &l);
    let low = g!(ev(&g!(canonize(&prefix, alpha.dual()))));
    let mid = g!(ev(&prefix));
    let high = g!(ev(&g!(canonize(&prefix, alpha))));
    check(g!(low.refines(&mid)) && g!(mid.refines(&high)), || {
        format!("canonical chain broken for {prefix} under {alpha:?}")
    })?;
    Ok(Outcome::Pass)
}

pub type Law = fn(&mut ChaCha8Rng) -> LawResult;

/// Named law suites in reporting order.
pub fn law_suites() -> Vec<(String, Box<dyn Fn(&mut ChaCha8Rng) -> LawResult>)> {
    let mut v: Vec<(String, Box<dyn Fn(&mut ChaCha8Rng) -> LawResult>)> = vec![
        ("involution".into(), Box::new(law_involution)),
        ("adequacy".into(), Box::new(law_adequacy)),
        ("operator monotonicity".into(), Box::new(law_oprmon)),
        ("evolution monotonicity".into(), Box::new(law_evlmon)),
        ("refinement".into(), Box::new(law_refinement)),
        ("double dualization".into(), Box::new(law_double_dual)),
    ];
    for i in 1..=9 {
        v.push((format!("boolean law {i}"), Box::new(move |r| boolean_law(i, r))));
    }
    v.push(("prefix evolution".into(), Box::new(law_prefix_evolution)));
    v.push(("normal evolution".into(), Box::new(law_nev_ev)));
    v.push(("normal evolution restriction".into(), Box::new(law_nev_restriction)));
    v.push(("functor uniformity".into(), Box::new(law_bhvfnc)));
    v.push(("canonical ordering".into(), Box::new(law_qntswp)));
    v
}

/// Run `law` on seeds `seed0, seed0 + 1, ...` until `want` instances pass
/// or `max_tries` seeds are used. Returns passes and skips.
pub fn run_law(
    law: &dyn Fn(&mut ChaCha8Rng) -> LawResult,
    seed0: u64,
    want: usize,
    max_tries: usize,
) -> Result<(usize, usize), String> {
    let (mut pass, mut skip) = (0, 0);
    for i in 0..max_tries as u64 {
        if pass >= want {
            break;
        }
        match law(&mut rng(seed0 + i))? {
            Outcome::Pass => pass += 1,
            Outcome::Skip => skip += 1,
        }
    }
    Ok((pass, skip))
}

// ---------------------------------------------------------------- automata

/// Matrices with their propositions.
pub fn ltl_corpus() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("F G p", vec!["p"]),
        ("G F p", vec!["p"]),
        ("p <-> X q", vec!["p", "q"]),
        ("!p & X (G p | G !p)", vec!["p"]),
        ("G q | G !q", vec!["q"]),
        ("p U q", vec!["p", "q"]),
        ("p R q", vec!["p", "q"]),
        ("G (p -> F q)", vec!["p", "q"]),
        ("F G p | G F q", vec!["p", "q"]),
        ("F G p & G F !q", vec!["p", "q"]),
        ("G (p <-> X q)", vec!["p", "q"]),
        ("X X p", vec!["p"]),
        ("G (p -> X !p)", vec!["p"]),
        ("(G F p) -> (G F q)", vec!["p", "q"]),
        ("F (p & X (q U !p))", vec!["p", "q"]),
        ("G (p | q) & F !p", vec!["p", "q"]),
        ("!(p U q) | G p", vec!["p", "q"]),
        ("F G (p <-> q)", vec!["p", "q"]),
        ("true", vec!["p"]),
        ("G F (p & X !p)", vec!["p"]),
    ]
}

/// `∃ap` / `∀ap` membership of `word` (over `alphabet` without `ap`) by
/// enumerating lasso-shaped annotations of `ap` that share the word's
/// period up to a factor of two and extend its stem by up to two letters.
pub fn annotation_membership(
    psi: &Ltl,
    full: &Alphabet,
    ap: &Prop,
    kind: QuantKind,
    word: &LassoWord,
) -> bool {
    let i = full.index(ap).expect("ap in alphabet");
    let s0 = word.stem.len();
    let c0 = word.cycle.len();
    let mut any = false;
    let mut all = true;
    for s in s0..=s0 + 2 {
        for c in [c0, 2 * c0] {
            for bits in 0u64..1 << (s + c) {
                let letter = |t: usize| {
                    gfgq_core::omega::Alphabet::inject(word.at(t), i, bits >> t & 1 == 1)
                };
                let stem = (0..s).map(letter).collect();
                let cycle = (s..s + c).map(letter).collect();
                let w = LassoWord::new(stem, cycle).expect("non-empty cycle");
                let r = eval_ltl(psi, full, &w).expect("alphabet");
                any |= r;
                all &= r;
            }
        }
    }
    match kind {
        QuantKind::Exists => any,
        QuantKind::Forall => all,
    }
}

// ------------------------------------------------------------------- games

/// Random parity game with every position having one to three moves.
pub fn random_game(rng: &mut ChaCha8Rng, n: usize, priorities: u32) -> ParityGame {
    let owner = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::Eloise } else { Player::Abelard })
        .collect();
    let succ = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3.min(n));
            let mut s: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let priority = (0..n).map(|_| rng.gen_range(0..priorities)).collect();
    ParityGame::new(owner, succ, priority, 0, vec![false; n]).expect("valid game")
}

// ------------------------------------------------------------------ models

/// Random Kripke structure with up to `max_states` states over `aps`.
pub fn random_kripke(rng: &mut ChaCha8Rng, aps: &[&str], max_states: usize) -> KripkeStructure {
    let n = rng.gen_range(1..=max_states);
    let pool = props(aps);
    let states = (0..n)
        .map(|i| (format!("s{i}"), random_subset(rng, &pool).into_iter().collect()))
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        edges.push((a, rng.gen_range(0..n)));
        if rng.gen_bool(0.5) {
            edges.push((a, rng.gen_range(0..n)));
        }
    }
    KripkeStructure::new(&pool, states, &edges, 0).expect("sinkless")
}

/// Every lasso-shaped trace of `k` with at most `bound` distinct positions.
pub fn kripke_lassos(k: &KripkeStructure, bound: usize) -> Vec<LassoWord> {
    let mut out = Vec::new();
    let mut stack = vec![vec![k.init()]];
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("non-empty");
        for &t in k.successors(last) {
            if let Some(j) = path.iter().position(|&s| s == t) {
                let labels: Vec<_> = path.iter().map(|&s| k.label(s)).collect();
                let (stem, cycle) = labels.split_at(j);
                out.push(LassoWord::new(stem.to_vec(), cycle.to_vec()).expect("cycle"));
            }
            if path.len() < bound {
                let mut next = path.clone();
                next.push(t);
                stack.push(next);
            }
        }
    }
    out
}

/// Sanity helper: a library error is a guard.
pub fn is_guard(e: &Error) -> bool {
    e.is_resource()
}
