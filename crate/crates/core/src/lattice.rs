//! The operations ⊓, ⊔, ¬ on functions `[0, 1] -> [0, 1]` and the orders ⊑, ⪯.
//!
//! ⊓ and ⊔ are evaluated by their envelope closed forms
//! `f ⊓ g = (f ∨ g) ∧ (f^R ∧ g^R)` and `f ⊔ g = (f ∨ g) ∧ (f^L ∧ g^L)`,
//! which agree with the defining suprema over `{y ∧ z = x}` and
//! `{y ∨ z = x}` for every function, not only those in L.

use std::fmt;

use crate::envelope::{envelope, is_normal_convex, EnvelopeKind};
use crate::error::{Error, Result};
use crate::pwfn::PwFn;

pub fn meet(f: &PwFn, g: &PwFn) -> PwFn {
    let upper = envelope(f, EnvelopeKind::R).min(&envelope(g, EnvelopeKind::R));
    f.max(g).min(&upper)
}

pub fn join(f: &PwFn, g: &PwFn) -> PwFn {
    let upper = envelope(f, EnvelopeKind::L).min(&envelope(g, EnvelopeKind::L));
    f.max(g).min(&upper)
}

/// `x -> f(1 - x)`.
pub fn negate(f: &PwFn) -> PwFn {
    f.reflect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderMethod {
    /// `f ⊑ g` iff `f ⊓ g = f`.
    MeetDef,
    /// `f ⪯ g` iff `f ⊔ g = g`.
    JoinDef,
    /// `g^L <= f^L` and `f^R <= g^R`; only valid on L.
    Envelope,
}

impl fmt::Display for OrderMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderMethod::MeetDef => "meet_def",
            OrderMethod::JoinDef => "join_def",
            OrderMethod::Envelope => "envelope_thm13",
        })
    }
}

pub fn leq(f: &PwFn, g: &PwFn, method: OrderMethod) -> Result<bool> {
    Ok(match method {
        OrderMethod::MeetDef => meet(f, g) == *f,
        OrderMethod::JoinDef => join(f, g) == *g,
        OrderMethod::Envelope => {
            if !is_normal_convex(f) || !is_normal_convex(g) {
                return Err(Error::NotInL("the envelope order test"));
            }
            envelope(g, EnvelopeKind::L).le_pointwise(&envelope(f, EnvelopeKind::L))
                && envelope(f, EnvelopeKind::R).le_pointwise(&envelope(g, EnvelopeKind::R))
        }
    })
}

/// ⊑ with the default method: the envelope test on L, the meet definition elsewhere.
pub fn below(f: &PwFn, g: &PwFn) -> bool {
    let method = if is_normal_convex(f) && is_normal_convex(g) {
        OrderMethod::Envelope
    } else {
        OrderMethod::MeetDef
    };
    leq(f, g, method).expect("method chosen to match the inputs")
}
