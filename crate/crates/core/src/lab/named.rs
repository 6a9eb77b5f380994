//! The fixed triple `f = 1_{3/4}`, `g = 2(1 - x)` on `(1/2, 1]`, `h = x`
//! on which ⋆ fails to distribute over ⊔. The shipped `.pwf` files are the
//! single source for these functions.

use crate::pwfn::{parse_pwf, PwFn};

pub const F_PWF: &str = include_str!("../../fixtures/triple_f.pwf");
pub const G_PWF: &str = include_str!("../../fixtures/triple_g.pwf");
pub const H_PWF: &str = include_str!("../../fixtures/triple_h.pwf");

pub fn f() -> PwFn {
    parse_pwf(F_PWF).expect("fixture f parses")
}

pub fn g() -> PwFn {
    parse_pwf(G_PWF).expect("fixture g parses")
}

pub fn h() -> PwFn {
    parse_pwf(H_PWF).expect("fixture h parses")
}

pub fn triple() -> [PwFn; 3] {
    [f(), g(), h()]
}
