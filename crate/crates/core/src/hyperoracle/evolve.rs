use super::hyper::Hyperassignment;
use super::{DualMode, Flag, Limits};
use crate::error::{Error, Result};
use crate::formula::Prefix;

/// Which evolution operator to apply to incoherent quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvolveMode {
    /// `dual(ext_σ(dual(𝔄), ap))`.
    Ev,
    /// Union of extensions along selection maps `ð : Fnc_σ → 𝔄`.
    Nev,
}

/// Apply the quantifiers of `prefix` to `a` under the fixed flag `flag`.
pub fn evolve(
    a: &Hyperassignment,
    prefix: &Prefix,
    flag: Flag,
    mode: EvolveMode,
    dual: DualMode,
    limits: &Limits,
) -> Result<Hyperassignment> {
    for q in prefix.iter() {
        if a.space().index(&q.prop).is_some() {
            return Err(Error::Domain(format!(
                "`{}` is both quantified and in the hyperassignment domain",
                q.prop
            )));
        }
    }
    let dualize = |x: &Hyperassignment| match dual {
        DualMode::Exact => x.dualize(limits),
        DualMode::Minimal => x.dualize_min(limits),
    };
    let mut cur = a.clone();
    for q in prefix.iter() {
        cur = if Flag::of(q.kind) == flag {
            cur.extend(&q.prop, &q.spec, limits)?
        } else {
            match mode {
                EvolveMode::Ev => dualize(&dualize(&cur)?.extend(&q.prop, &q.spec, limits)?)?,
                EvolveMode::Nev => cur.select_extend(&q.prop, &q.spec, limits)?,
            }
        };
    }
    Ok(cur)
}
