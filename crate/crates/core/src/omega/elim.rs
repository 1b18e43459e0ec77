//! Quantifier elimination for vanilla QPTL.

use super::alphabet::{Alphabet, Letter};
use super::dpa::{parity_to_buchi, ParityAutomaton};
use super::ltl2nba::ltl_to_nba;
use super::nba::BuchiAutomaton;
use super::safra::{determinize_with_budget, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::formula::{Formula, Prop, QuantKind};

/// Büchi automaton for `∃ap.L(D)` or `∀ap.L(D)` over the alphabet of `D`
/// without `ap`.
pub fn eliminate_quantifier(
    d: &ParityAutomaton,
    ap: &Prop,
    kind: QuantKind,
) -> Result<BuchiAutomaton> {
    eliminate_quantifier_with_budget(d, ap, kind, DEFAULT_BUDGET)
}

pub fn eliminate_quantifier_with_budget(
    d: &ParityAutomaton,
    ap: &Prop,
    kind: QuantKind,
    budget: usize,
) -> Result<BuchiAutomaton> {
    match kind {
        QuantKind::Exists => project(d, ap),
        QuantKind::Forall => {
            let some_not = project(&d.complement(), ap)?;
            Ok(determinize_with_budget(&some_not, budget)?
                .complement()
                .to_nba())
        }
    }
}

fn project(d: &ParityAutomaton, ap: &Prop) -> Result<BuchiAutomaton> {
    let i = d.alphabet().require(ap)?;
    let small = d.alphabet().without(i);
    let priority: Vec<u32> = (0..d.num_states()).map(|s| d.priority(s)).collect();
    let succ = |s: usize, l: Letter| {
        let mut v = vec![
            d.step(s, Alphabet::inject(l, i, false)),
            d.step(s, Alphabet::inject(l, i, true)),
        ];
        v.dedup();
        v
    };
    Ok(parity_to_buchi(
        &small,
        d.num_states(),
        &[d.initial()],
        &priority,
        succ,
    ))
}

/// Büchi automaton for a prenex vanilla formula over its free propositions
/// (sorted). A closed formula yields an automaton over the empty alphabet,
/// which is non-empty iff the formula is satisfiable.
pub fn vanilla_to_nba(f: &Formula) -> Result<BuchiAutomaton> {
    vanilla_to_nba_with_budget(f, DEFAULT_BUDGET)
}

pub fn vanilla_to_nba_with_budget(f: &Formula, budget: usize) -> Result<BuchiAutomaton> {
    if let Some(q) = f.prefix.iter().find(|q| !q.spec.is_vanilla()) {
        return Err(Error::NotVanilla(q.prop.to_string()));
    }
    let mut props: Vec<Prop> = f.free_props().into_iter().collect();
    props.extend(f.prefix.props());
    let alphabet = Alphabet::sorted(&props)?;
    let mut nba = ltl_to_nba(&f.matrix, &alphabet)?;
    for q in f.prefix.iter().rev() {
        nba = match q.kind {
            QuantKind::Exists => nba.project(&q.prop)?.trim(),
            QuantKind::Forall => {
                let d = determinize_with_budget(&nba, budget)?;
                eliminate_quantifier_with_budget(&d, &q.prop, QuantKind::Forall, budget)?
            }
        };
    }
    Ok(nba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, parse_ltl};
    use crate::omega::{determinize, LassoWord};

    fn dpa(src: &str, props: &[&str]) -> ParityAutomaton {
        let ab = Alphabet::new(props.iter().map(|p| (*p).into()).collect()).unwrap();
        determinize(&ltl_to_nba(&parse_ltl(src).unwrap(), &ab).unwrap()).unwrap()
    }

    #[test]
    fn exists_copy() {
        let d = dpa("G (p <-> q)", &["p", "q"]);
        let n = eliminate_quantifier(&d, &"p".into(), QuantKind::Exists).unwrap();
        assert_eq!(n.alphabet().props(), &[Prop::new("q")]);
        for w in LassoWord::enumerate(2, 4) {
            assert!(n.accepts(&w));
        }
    }

    #[test]
    fn forall_globally() {
        let d = dpa("G p", &["p"]);
        let n = eliminate_quantifier(&d, &"p".into(), QuantKind::Forall).unwrap();
        assert!(n.is_empty());
    }

    #[test]
    fn vanilla_examples() {
        let sat = |s: &str| !vanilla_to_nba(&parse(s).unwrap()).unwrap().is_empty();
        assert!(!sat("E q. A p. p <-> X q"));
        assert!(sat("A x. E y. G (y <-> X x)"));
        assert!(sat("A p. E q. (!p & X (G p | G !p)) -> ((G q | G !q) & (q <-> X p))"));
        assert!(matches!(
            vanilla_to_nba(&parse("E q:B. G q").unwrap()),
            Err(Error::NotVanilla(_))
        ));
    }
}
