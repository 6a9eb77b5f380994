//! Running-supremum envelopes, normality, convexity and plateau endpoints.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::pwfn::{Affine, Builder, PwFn};
use crate::rat::{max_rat, one, Rat};

/// `L`: `sup{f(y) : y <= x}`; `R`: `sup{f(y) : y >= x}`. The weak variants use
/// strict inequalities, falling back to `f(0)` (resp. `f(1)`) at the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnvelopeKind {
    L,
    R,
    Lw,
    Rw,
}

impl fmt::Display for EnvelopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EnvelopeKind::L => "L",
            EnvelopeKind::R => "R",
            EnvelopeKind::Lw => "Lw",
            EnvelopeKind::Rw => "Rw",
        };
        f.write_str(s)
    }
}

pub fn envelope(f: &PwFn, kind: EnvelopeKind) -> PwFn {
    match kind {
        EnvelopeKind::L => left_sweep(f, false),
        EnvelopeKind::Lw => left_sweep(f, true),
        EnvelopeKind::R => left_sweep(&f.reflect(), false).reflect(),
        EnvelopeKind::Rw => left_sweep(&f.reflect(), true).reflect(),
    }
}

/// One left-to-right pass carrying the running supremum. Increasing segments
/// are split where they rise above the running level.
fn left_sweep(f: &PwFn, strict: bool) -> PwFn {
    let xs = f.breakpoints();
    let values = f.point_values();
    let mut out = Builder::new();
    // supremum over [0, current breakpoint]
    let mut level = values[0].clone();
    out.point(xs[0].clone(), level.clone());
    for (i, seg) in f.segments().iter().enumerate() {
        let (lo, hi) = (&xs[i], &xs[i + 1]);
        let start = seg.at(lo);
        let end = seg.at(hi);
        if !seg.slope.is_positive() || end <= level {
            level = max_rat(&level, &start);
            out.segment(Affine::constant(level.clone()));
        } else if start >= level {
            out.segment(seg.clone());
            level = end;
        } else {
            let cross = (&level - &seg.intercept) / &seg.slope;
            out.segment(Affine::constant(level.clone()));
            out.point(cross, level.clone());
            out.segment(seg.clone());
            level = end;
        }
        // `level` is now the supremum over [0, hi)
        let closed = max_rat(&level, &values[i + 1]);
        out.point(
            hi.clone(),
            if strict {
                level.clone()
            } else {
                closed.clone()
            },
        );
        level = closed;
    }
    out.finish()
}

/// `sup f = 1`; attainment is not required.
pub fn is_normal(f: &PwFn) -> bool {
    f.sup() == one()
}

/// Fuzzy convexity, decided as `f == f^L ∧ f^R`.
pub fn is_convex(f: &PwFn) -> bool {
    let bound = envelope(f, EnvelopeKind::L).min(&envelope(f, EnvelopeKind::R));
    bound == *f
}

/// Membership in L.
pub fn is_normal_convex(f: &PwFn) -> bool {
    is_normal(f) && is_convex(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Left`: `inf{x : f^L(x) = 1}`; `Right`: `sup{x : f^R(x) = 1}`.
pub fn plateau(f: &PwFn, side: Side) -> Result<Rat> {
    if !is_normal(f) {
        return Err(Error::NotNormal { sup: f.sup() });
    }
    Ok(match side {
        Side::Left => first_unit_level(&envelope(f, EnvelopeKind::L)),
        Side::Right => one() - first_unit_level(&envelope(&f.reflect(), EnvelopeKind::L)),
    })
}

/// Infimum of `{x : up(x) = 1}` for a nondecreasing `up` with `up(1) = 1`.
fn first_unit_level(up: &PwFn) -> Rat {
    let xs = up.breakpoints();
    let values = up.point_values();
    for (i, seg) in up.segments().iter().enumerate() {
        if values[i] == one() || seg.at(&xs[i]) == one() {
            return xs[i].clone();
        }
        if seg.slope.is_positive() {
            let t = (one() - &seg.intercept) / &seg.slope;
            if t > xs[i] && t < xs[i + 1] {
                return t;
            }
        }
    }
    xs[xs.len() - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwfn::Affine;
    use crate::rat::{half, int, rat, zero};

    fn g() -> PwFn {
        PwFn::from_parts(
            vec![zero(), half(), one()],
            vec![zero(), zero(), zero()],
            vec![Affine::constant(zero()), Affine::new(int(-2), int(2))],
        )
        .unwrap()
    }

    #[test]
    fn envelope_examples() {
        let f = PwFn::singleton(&rat(3, 4)).unwrap();
        assert_eq!(
            envelope(&f, EnvelopeKind::L),
            PwFn::indicator(&rat(3, 4), &one()).unwrap()
        );
        assert_eq!(
            envelope(&f, EnvelopeKind::R),
            PwFn::indicator(&zero(), &rat(3, 4)).unwrap()
        );
        let g_r = PwFn::from_parts(
            vec![zero(), half(), one()],
            vec![one(), one(), zero()],
            vec![Affine::constant(one()), Affine::new(int(-2), int(2))],
        )
        .unwrap();
        assert_eq!(envelope(&g(), EnvelopeKind::R), g_r);
        // g^L: 0 on [0, 1/2], 1 on (1/2, 1]
        assert_eq!(
            envelope(&g(), EnvelopeKind::L),
            PwFn::step(&half(), &one(), false, true, &one()).unwrap()
        );
        assert_eq!(
            envelope(&PwFn::identity(), EnvelopeKind::R),
            PwFn::constant(one()).unwrap()
        );
        assert_eq!(
            envelope(&PwFn::identity(), EnvelopeKind::L),
            PwFn::identity()
        );
    }

    #[test]
    fn increasing_segment_is_split_at_running_level() {
        // 1/2 at 0, then x on (0, 1]
        let f = PwFn::from_parts(
            vec![zero(), one()],
            vec![half(), one()],
            vec![Affine::new(one(), zero())],
        )
        .unwrap();
        let l = envelope(&f, EnvelopeKind::L);
        assert_eq!(l.eval(&rat(1, 4)).unwrap(), half());
        assert_eq!(l.eval(&rat(3, 4)).unwrap(), rat(3, 4));
        assert_eq!(l.breakpoints(), &[zero(), half(), one()]);
    }

    #[test]
    fn weak_envelopes_exclude_the_point_itself() {
        let f = PwFn::singleton(&half()).unwrap();
        let lw = envelope(&f, EnvelopeKind::Lw);
        assert_eq!(lw.eval(&half()).unwrap(), zero());
        assert_eq!(lw.eval(&rat(3, 4)).unwrap(), one());
        let rw = envelope(&f, EnvelopeKind::Rw);
        assert_eq!(rw.eval(&half()).unwrap(), zero());
        assert_eq!(rw.eval(&rat(1, 4)).unwrap(), one());
        // boundary cases: f(0) and f(1)
        let at_zero = PwFn::singleton(&zero()).unwrap();
        assert_eq!(
            envelope(&at_zero, EnvelopeKind::Lw).eval(&zero()).unwrap(),
            one()
        );
        assert_eq!(
            envelope(&at_zero, EnvelopeKind::Lw).eval(&half()).unwrap(),
            one()
        );
        let at_one = PwFn::singleton(&one()).unwrap();
        assert_eq!(
            envelope(&at_one, EnvelopeKind::Rw).eval(&one()).unwrap(),
            one()
        );
        assert_eq!(
            envelope(&at_one, EnvelopeKind::Rw).eval(&half()).unwrap(),
            one()
        );
    }

    #[test]
    fn normality_examples() {
        assert!(is_normal(&g()));
        assert!(!is_normal(&PwFn::constant(half()).unwrap()));
        assert!(is_normal(&PwFn::singleton(&zero()).unwrap()));
    }

    #[test]
    fn convexity_examples() {
        assert!(is_convex(&PwFn::identity()));
        assert!(is_convex(&g()));
        assert!(is_convex(&PwFn::indicator(&rat(1, 4), &half()).unwrap()));
        let spikes = PwFn::singleton(&rat(1, 4))
            .unwrap()
            .max(&PwFn::singleton(&rat(3, 4)).unwrap());
        assert!(!is_convex(&spikes));
    }

    #[test]
    fn plateau_examples() {
        assert_eq!(plateau(&g(), Side::Left).unwrap(), half());
        assert_eq!(plateau(&g(), Side::Right).unwrap(), half());
        let k = PwFn::indicator(&rat(1, 4), &rat(2, 3)).unwrap();
        assert_eq!(plateau(&k, Side::Left).unwrap(), rat(1, 4));
        assert_eq!(plateau(&k, Side::Right).unwrap(), rat(2, 3));
        assert_eq!(plateau(&PwFn::identity(), Side::Left).unwrap(), one());
        assert_eq!(plateau(&PwFn::identity(), Side::Right).unwrap(), one());
        assert!(matches!(
            plateau(&PwFn::constant(half()).unwrap(), Side::Left),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn plateau_of_unattained_left_peak() {
        // 2x on [0, 1/2), 0 on [1/2, 1]
        let f = PwFn::from_parts(
            vec![zero(), half(), one()],
            vec![zero(), zero(), zero()],
            vec![Affine::new(int(2), zero()), Affine::constant(zero())],
        )
        .unwrap();
        assert_eq!(plateau(&f, Side::Left).unwrap(), half());
        assert_eq!(plateau(&f, Side::Right).unwrap(), half());
        assert_eq!(envelope(&f, EnvelopeKind::R).eval(&half()).unwrap(), zero());
    }
}
