//! The two constructed operations on L: ⋆, a t_r-norm that does not
//! distribute over ⊔, and ♦, a t-norm that is not closed on singletons.
//!
//! Both are built from the plateau thresholds
//! `η = inf{x : f^L(x) = 1} ∧ inf{x : g^L(x) = 1}` and
//! `ξ = sup{x : f^R(x) = 1} ∧ sup{x : g^R(x) = 1}`.

use crate::envelope::{envelope, is_normal_convex, plateau, EnvelopeKind, Side};
use crate::error::{Error, Result};
use crate::pwfn::PwFn;
use crate::rat::{min_rat, one, zero, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarResult {
    pub result: PwFn,
    pub eta: Rat,
    pub xi: Rat,
}

pub fn is_top(f: &PwFn) -> bool {
    f.as_singleton() == Some(one())
}

fn require_l(op: &'static str, f: &PwFn, g: &PwFn) -> Result<()> {
    if is_normal_convex(f) && is_normal_convex(g) {
        Ok(())
    } else {
        Err(Error::NotInL(op))
    }
}

/// `(η, ξ)` for two normal functions.
pub fn thresholds(f: &PwFn, g: &PwFn) -> Result<(Rat, Rat)> {
    let eta = min_rat(&plateau(f, Side::Left)?, &plateau(g, Side::Left)?);
    let xi = min_rat(&plateau(f, Side::Right)?, &plateau(g, Side::Right)?);
    Ok((eta, xi))
}

/// `f^R(ξ) ∧ g^R(ξ)`.
fn tail_value(f: &PwFn, g: &PwFn, xi: &Rat) -> Rat {
    let fr = envelope(f, EnvelopeKind::R).value_at(xi);
    let gr = envelope(g, EnvelopeKind::R).value_at(xi);
    min_rat(&fr, &gr)
}

/// 1 on `[0, ξ)`, `value` at `ξ`, 0 on `(ξ, 1]`.
fn descending_tail(xi: &Rat, value: &Rat) -> PwFn {
    let ones = PwFn::step(&zero(), xi, true, false, &one()).expect("ξ in [0, 1]");
    let point = PwFn::step(xi, xi, true, true, value).expect("ξ in [0, 1]");
    ones.max(&point)
}

/// `f^L ∨ g^L` on `[0, η)`, 0 elsewhere.
fn rising_head(f: &PwFn, g: &PwFn, eta: &Rat) -> PwFn {
    let head = envelope(f, EnvelopeKind::L).max(&envelope(g, EnvelopeKind::L));
    let mask = PwFn::step(&zero(), eta, true, false, &one()).expect("η in [0, 1]");
    head.min(&mask)
}

pub fn star(f: &PwFn, g: &PwFn) -> Result<StarResult> {
    require_l("⋆", f, g)?;
    let (eta, xi) = thresholds(f, g)?;
    let result = if is_top(f) {
        g.clone()
    } else if is_top(g) {
        f.clone()
    } else {
        let band = PwFn::step(&eta, &xi, true, false, &one())?;
        let point = PwFn::step(&xi, &xi, true, true, &tail_value(f, g, &xi))?;
        rising_head(f, g, &eta).max(&band).max(&point)
    };
    Ok(StarResult { result, eta, xi })
}

pub fn diamond(f: &PwFn, g: &PwFn) -> Result<PwFn> {
    require_l("♦", f, g)?;
    if is_top(f) {
        return Ok(g.clone());
    }
    if is_top(g) {
        return Ok(f.clone());
    }
    let (_, xi) = thresholds(f, g)?;
    Ok(descending_tail(&xi, &tail_value(f, g, &xi)))
}

/// `((f ⋆ g)^L, (f ⋆ g)^R)` from the thresholds, without building `f ⋆ g`.
pub fn star_envelopes(f: &PwFn, g: &PwFn) -> Result<(PwFn, PwFn)> {
    require_l("⋆", f, g)?;
    if is_top(f) || is_top(g) {
        return Err(Error::TopOperand("the ⋆ envelope closed form"));
    }
    let (eta, xi) = thresholds(f, g)?;
    let upper = PwFn::step(&eta, &one(), true, true, &one())?;
    let left = rising_head(f, g, &eta).max(&upper);
    let right = descending_tail(&xi, &tail_value(f, g, &xi));
    Ok((left, right))
}

/// `((f ♦ g)^L, (f ♦ g)^R)`: the constant 1 and the three-piece tail.
pub fn diamond_envelopes(f: &PwFn, g: &PwFn) -> Result<(PwFn, PwFn)> {
    require_l("♦", f, g)?;
    if is_top(f) || is_top(g) {
        return Err(Error::TopOperand("the ♦ envelope closed form"));
    }
    let (_, xi) = thresholds(f, g)?;
    Ok((
        PwFn::constant(one())?,
        descending_tail(&xi, &tail_value(f, g, &xi)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwfn::Affine;
    use crate::rat::{half, int, rat};

    fn f() -> PwFn {
        PwFn::singleton(&rat(3, 4)).unwrap()
    }

    fn g() -> PwFn {
        PwFn::from_parts(
            vec![zero(), half(), one()],
            vec![zero(), zero(), zero()],
            vec![Affine::constant(zero()), Affine::new(int(-2), int(2))],
        )
        .unwrap()
    }

    fn h() -> PwFn {
        PwFn::identity()
    }

    #[test]
    fn star_examples() {
        let fg = star(&f(), &g()).unwrap();
        assert_eq!(fg.result, PwFn::singleton(&half()).unwrap());
        assert_eq!((fg.eta.clone(), fg.xi.clone()), (half(), half()));

        // x on [0, 3/4), 1 at 3/4, 0 on (3/4, 1]
        let expected = PwFn::from_parts(
            vec![zero(), rat(3, 4), one()],
            vec![zero(), one(), zero()],
            vec![Affine::new(one(), zero()), Affine::constant(zero())],
        )
        .unwrap();
        assert_eq!(star(&f(), &h()).unwrap().result, expected);

        let top = PwFn::singleton(&one()).unwrap();
        assert_eq!(star(&g(), &top).unwrap().result, g());
        assert_eq!(star(&top, &g()).unwrap().result, g());
    }

    #[test]
    fn star_rejects_inputs_outside_l() {
        let spikes = PwFn::singleton(&rat(1, 4))
            .unwrap()
            .max(&PwFn::singleton(&rat(3, 4)).unwrap());
        assert!(matches!(star(&spikes, &g()), Err(Error::NotInL(_))));
        assert!(matches!(
            diamond(&PwFn::constant(half()).unwrap(), &g()),
            Err(Error::NotInL(_))
        ));
    }

    #[test]
    fn diamond_examples() {
        let out = diamond(
            &PwFn::singleton(&rat(1, 4)).unwrap(),
            &PwFn::singleton(&half()).unwrap(),
        )
        .unwrap();
        assert_eq!(out, PwFn::indicator(&zero(), &rat(1, 4)).unwrap());
        let top = PwFn::singleton(&one()).unwrap();
        assert_eq!(diamond(&g(), &top).unwrap(), g());
        assert_eq!(
            diamond(&f(), &h()).unwrap(),
            PwFn::indicator(&zero(), &rat(3, 4)).unwrap()
        );
    }

    #[test]
    fn star_envelope_examples() {
        let (l, r) = star_envelopes(&f(), &g()).unwrap();
        assert_eq!(l, PwFn::indicator(&half(), &one()).unwrap());
        assert_eq!(r, PwFn::indicator(&zero(), &half()).unwrap());
        let fg = star(&f(), &g()).unwrap().result;
        assert_eq!(l, envelope(&fg, EnvelopeKind::L));
        assert_eq!(r, envelope(&fg, EnvelopeKind::R));

        let k = PwFn::indicator(&rat(1, 4), &half()).unwrap();
        let (_, r) = star_envelopes(&k, &k).unwrap();
        assert_eq!(r, PwFn::indicator(&zero(), &half()).unwrap());

        let top = PwFn::singleton(&one()).unwrap();
        assert!(matches!(
            star_envelopes(&top, &k),
            Err(Error::TopOperand(_))
        ));
    }

    #[test]
    fn diamond_envelope_examples() {
        let a = PwFn::singleton(&rat(1, 4)).unwrap();
        let b = PwFn::singleton(&half()).unwrap();
        let (l, r) = diamond_envelopes(&a, &b).unwrap();
        assert_eq!(l, PwFn::constant(one()).unwrap());
        assert_eq!(r, PwFn::indicator(&zero(), &rat(1, 4)).unwrap());
        let d = diamond(&a, &b).unwrap();
        assert_eq!(l, envelope(&d, EnvelopeKind::L));
        assert_eq!(r, envelope(&d, EnvelopeKind::R));
    }
}
