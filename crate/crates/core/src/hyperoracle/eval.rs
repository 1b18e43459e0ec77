//! Tarski and alternating Hodges satisfaction on bounded assignments.

use super::functor::extension_within;
use super::hyper::Hyperassignment;
use super::space::{Assignment, Space};
use super::{DualMode, Flag, Limits};
use crate::error::{Error, Result};
use crate::formula::{GeneralFormula, Ltl, QuantKind, Quantifier};
use crate::omega::eval_ltl;

/// `χ ⊨ φ`: LTL on the stutter-extended word, quantifiers ranging over all
/// `2^h` temporal valuations. Specifications play no role here.
pub fn eval_tarski(chi: &Assignment, phi: &GeneralFormula) -> Result<bool> {
    tarski(chi.space(), chi.code(), phi)
}

fn tarski(space: &Space, code: u32, phi: &GeneralFormula) -> Result<bool> {
    match phi {
        GeneralFormula::Ltl(psi) => eval_ltl(psi, &space.alphabet(), &space.lasso(code)),
        GeneralFormula::Not(a) => Ok(!tarski(space, code, a)?),
        GeneralFormula::And(a, b) => Ok(tarski(space, code, a)? && tarski(space, code, b)?),
        GeneralFormula::Or(a, b) => Ok(tarski(space, code, a)? || tarski(space, code, b)?),
        GeneralFormula::Quant(q, body) => {
            let (target, codes): (Space, Vec<u32>) = match space.index(&q.prop) {
                Some(i) => (
                    space.clone(),
                    (0..1 << space.horizon()).map(|v| space.replace(code, i, v)).collect(),
                ),
                None => {
                    let (t, pos) = space.insert(&q.prop)?;
                    let codes = (0..1 << space.horizon())
                        .map(|v| space.inject(code, pos, v))
                        .collect();
                    (t, codes)
                }
            };
            for c in codes {
                let r = tarski(&target, c, body)?;
                match q.kind {
                    QuantKind::Exists if r => return Ok(true),
                    QuantKind::Forall if !r => return Ok(false),
                    _ => {}
                }
            }
            Ok(q.kind == QuantKind::Forall)
        }
    }
}

/// Evaluator for `𝔄 ⊨^α φ`.
#[derive(Clone, Debug, Default)]
pub struct Evaluator {
    pub dual: DualMode,
    pub limits: Limits,
}

impl Evaluator {
    pub fn new(dual: DualMode, limits: Limits) -> Self {
        Evaluator { dual, limits }
    }

    pub fn dualize(&self, a: &Hyperassignment) -> Result<Hyperassignment> {
        match self.dual {
            DualMode::Exact => a.dualize(&self.limits),
            DualMode::Minimal => a.dualize_min(&self.limits),
        }
    }

    /// Rules 1 to 6 with the specification-aware quantifier cases. Each
    /// dualization case is applied as written: an incoherent connective or
    /// quantifier dualizes the hyperassignment and switches the flag.
    pub fn eval(&self, a: &Hyperassignment, phi: &GeneralFormula, flag: Flag) -> Result<bool> {
        let free = phi.free_props();
        if let Some(p) = free.iter().find(|p| a.space().index(p).is_none()) {
            return Err(Error::Unbound(p.to_string()));
        }
        match self.dual {
            DualMode::Exact => self.sat(a, phi, flag),
            DualMode::Minimal => self.sat(&a.min_antichain(), phi, flag),
        }
    }

    fn sat(&self, a: &Hyperassignment, phi: &GeneralFormula, flag: Flag) -> Result<bool> {
        match phi {
            GeneralFormula::Ltl(psi) => base(a, psi, flag),
            GeneralFormula::Not(b) => Ok(!self.sat(a, b, flag.dual())?),
            GeneralFormula::And(l, r) => match flag {
                Flag::EA => {
                    for (a1, a2) in a.partitions(&self.limits)? {
                        let ok = (!a1.is_empty() && self.sat(&a1, l, Flag::EA)?)
                            || (!a2.is_empty() && self.sat(&a2, r, Flag::EA)?);
                        if !ok {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
                Flag::AE => self.sat(&self.dualize(a)?, phi, Flag::EA),
            },
            GeneralFormula::Or(l, r) => match flag {
                Flag::AE => {
                    for (a1, a2) in a.partitions(&self.limits)? {
                        let ok = (a1.is_empty() || self.sat(&a1, l, Flag::AE)?)
                            && (a2.is_empty() || self.sat(&a2, r, Flag::AE)?);
                        if ok {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                }
                Flag::EA => self.sat(&self.dualize(a)?, phi, Flag::AE),
            },
            GeneralFormula::Quant(q, body) => {
                let own = Flag::of(q.kind);
                if own != flag {
                    return self.sat(&self.dualize(a)?, phi, own);
                }
                if let GeneralFormula::Ltl(psi) = body.as_ref() {
                    return extend_then_base(a, q, psi, flag);
                }
                self.sat(&a.extend(&q.prop, &q.spec, &self.limits)?, body, flag)
            }
        }
    }
}

/// Rule 1: `∃X ∀χ` under `∃∀`, `∀X ∃χ` under `∀∃`.
fn base(a: &Hyperassignment, psi: &Ltl, flag: Flag) -> Result<bool> {
    let truth = a.space().truth_set(psi)?;
    Ok(match flag {
        Flag::EA => a.sets().iter().any(|x| x.is_subset(&truth)),
        Flag::AE => a.sets().iter().all(|x| x.intersects(&truth)),
    })
}

/// Rule 1 applied to `ext_σ(𝔄, ap)` without materializing the extension.
fn extend_then_base(a: &Hyperassignment, q: &Quantifier, psi: &Ltl, flag: Flag) -> Result<bool> {
    let (target, pos) = a.space().insert(&q.prop)?;
    let truth = target.truth_set(psi)?;
    Ok(match flag {
        Flag::EA => a
            .sets()
            .iter()
            .any(|x| extension_within(a.space(), x, pos, &q.spec, &truth)),
        Flag::AE => {
            let falsity = truth.complement(target.size());
            !a.sets()
                .iter()
                .any(|x| extension_within(a.space(), x, pos, &q.spec, &falsity))
        }
    })
}

/// `𝔄 ⊨^α φ` with exact dualization.
pub fn eval_alternating(a: &Hyperassignment, phi: &GeneralFormula, flag: Flag) -> Result<bool> {
    Evaluator::default().eval(a, phi, flag)
}
