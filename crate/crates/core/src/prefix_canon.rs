//! Single-alternation canonical forms of behavioral prefixes.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Prefix, Prop, QuantKind, QuantSpec, Quantifier};
use crate::hyperoracle::Flag;

/// Runs of same-kind quantifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<(QuantKind, Vec<Prop>)>,
}

impl BlockDecomposition {
    pub fn of(prefix: &Prefix) -> Self {
        let mut blocks: Vec<(QuantKind, Vec<Prop>)> = Vec::new();
        for q in prefix.iter() {
            match blocks.last_mut() {
                Some((k, ps)) if *k == q.kind => ps.push(q.prop.clone()),
                _ => blocks.push((q.kind, vec![q.prop.clone()])),
            }
        }
        BlockDecomposition { blocks }
    }
}

fn require_behavioral(prefix: &Prefix) -> Result<()> {
    match prefix.iter().find(|q| !q.spec.is_b()) {
        Some(q) => Err(Error::NotBehavioral(format!(
            "quantifier over `{}` has specification {}",
            q.prop, q.spec
        ))),
        None => Ok(()),
    }
}

/// `C_∃∀` (for [`Flag::EA`]) or `C_∀∃` (for [`Flag::AE`]).
///
/// The leading kind is moved to the front in its original order; every
/// quantifier of the other kind becomes strongly behavioral with respect to
/// the leading-kind propositions it used to precede.
pub fn canonize(prefix: &Prefix, target: Flag) -> Result<Prefix> {
    require_behavioral(prefix)?;
    let lead = match target {
        Flag::EA => QuantKind::Exists,
        Flag::AE => QuantKind::Forall,
    };
    let qs = prefix.quantifiers();
    let mut out: Vec<Quantifier> = qs
        .iter()
        .filter(|q| q.kind == lead)
        .cloned()
        .collect();
    for (i, q) in qs.iter().enumerate() {
        if q.kind == lead {
            continue;
        }
        let later = qs[i + 1..]
            .iter()
            .filter(|r| r.kind == lead)
            .map(|r| r.prop.clone());
        out.push(Quantifier::new(q.kind, q.prop.clone(), QuantSpec::b_strong(later)));
    }
    Prefix::new(out)
}

/// Flip every quantifier kind.
pub fn dual_prefix(prefix: &Prefix) -> Prefix {
    prefix.dual()
}

/// The order in which the quantification game picks the propositions of a
/// prefix within one round.
///
/// Every quantifier must be behavioral with respect to all earlier ones. A
/// strong dependence of a later quantifier on an earlier one of the opposite
/// kind moves the later one ahead in the round; a strong dependence between
/// quantifiers of the same kind is rejected. Behavioral prefixes keep their
/// order, and canonical forms map back to the prefix they came from.
pub fn round_order(prefix: &Prefix) -> Result<Prefix> {
    let qs = prefix.quantifiers();
    let n = qs.len();
    // before[j][i]: j is picked before i.
    let mut before = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            let p = &qs[i].prop;
            let spec = &qs[j].spec;
            if spec.strong.contains(p) {
                if qs[i].kind == qs[j].kind {
                    return Err(Error::NotBehavioral(format!(
                        "`{}` is strongly behavioral on `{p}`, quantified alike",
                        qs[j].prop
                    )));
                }
                before[j][i] = true;
            } else if spec.behavioral.contains(p) {
                before[i][j] = true;
            } else {
                return Err(Error::NotBehavioral(format!(
                    "`{}` is not behavioral on `{p}`",
                    qs[j].prop
                )));
            }
        }
    }
    // Tournament: a linear order exists iff the in-degrees are 0..n.
    let mut rank: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        let preds = (0..n).filter(|&j| before[j][i]).count();
        if rank.insert(preds, i).is_some() {
            return Err(Error::NotBehavioral(
                "strong dependencies admit no round order".into(),
            ));
        }
    }
    Prefix::new(
        rank.values()
            .map(|&i| Quantifier::new(qs[i].kind, qs[i].prop.clone(), QuantSpec::b()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn prefix(s: &str) -> Prefix {
        parse(&format!("{s} true")).unwrap().prefix
    }

    #[test]
    fn ceacae() {
        let p = prefix("A p:B. E q:B. E r:B. A s:B. E t:B.");
        assert_eq!(
            canonize(&p, Flag::EA).unwrap().to_string(),
            "E q:<*;>. E r:<*;>. E t:<*;>. A p:<*; q r t>. A s:<*; t>."
        );
        assert_eq!(
            canonize(&p, Flag::AE).unwrap().to_string(),
            "A p:<*;>. A s:<*;>. E q:<*; s>. E r:<*; s>. E t:<*;>."
        );
    }

    #[test]
    fn already_canonical() {
        let p = prefix("E q:B. A p:B.");
        assert_eq!(canonize(&p, Flag::EA).unwrap(), p);
        let p = prefix("A p:B. E q:B.");
        assert_eq!(canonize(&p, Flag::EA).unwrap(), prefix("E q:B. A p:<*; q>."));
    }

    #[test]
    fn rejects_vanilla() {
        assert!(matches!(
            canonize(&prefix("E q. A p."), Flag::EA),
            Err(Error::NotBehavioral(_))
        ));
    }

    #[test]
    fn round_order_inverts_canonize() {
        let p = prefix("A p:B. E q:B. E r:B. A s:B. E t:B.");
        for f in [Flag::EA, Flag::AE] {
            assert_eq!(round_order(&canonize(&p, f).unwrap()).unwrap(), p);
        }
        assert_eq!(
            round_order(&prefix("A p:B. E q:S.")).unwrap(),
            prefix("E q:B. A p:B.")
        );
        assert!(round_order(&prefix("E a:B. E b:S.")).is_err());
        assert!(round_order(&prefix("E a:B. A b.")).is_err());
    }

    #[test]
    fn blocks() {
        let d = BlockDecomposition::of(&prefix("A p:B. E q:B. E r:B. A s:B."));
        assert_eq!(d.blocks.len(), 3);
        assert_eq!(d.blocks[1].1.len(), 2);
    }
}
