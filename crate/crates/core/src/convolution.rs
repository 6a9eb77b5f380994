//! Sup-convolutions `(f ∧ g)(x) = sup{f(y) ⋆ g(z) : y Δ z = x}` (norm direction)
//! and the same with a t-conorm ∇ in place of Δ (conorm direction).
//!
//! The supremum over a real constraint set is only computed exactly in three
//! situations, one per engine:
//!
//! * `ExactMin`: Δ = min (resp. ∇ = max) and ⋆ = min, where the convolution
//!   is ⊓ (resp. ⊔) and has a closed form.
//! * `Indicator`: both operands are interval indicators and the constraint
//!   operation is continuous, so the image of the rectangle is an interval.
//! * `Grid(n)`: operands are restricted to `{k/n}` and the constraint
//!   operation maps that grid into itself; the supremum becomes a finite max.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{join, meet};
use crate::par::Exec;
use crate::pwfn::PwFn;
use crate::rat::{grid, grid_index, one, zero, Rat};
use crate::scalar_ops::{ScalarKind, ScalarOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Norm,
    Conorm,
}

impl Direction {
    pub fn constraint_kind(self) -> ScalarKind {
        match self {
            Direction::Norm => ScalarKind::TNorm,
            Direction::Conorm => ScalarKind::TConorm,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Norm => "norm",
            Direction::Conorm => "conorm",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    ExactMin,
    Indicator,
    Grid(u32),
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::ExactMin => f.write_str("exact"),
            Engine::Indicator => f.write_str("indicator"),
            Engine::Grid(n) => write!(f, "grid({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvSpec {
    pub direction: Direction,
    /// Δ for the norm direction, ∇ for the conorm direction.
    pub combiner: ScalarOp,
    /// ⋆, applied to the operand values.
    pub star: ScalarOp,
    pub engine: Engine,
}

impl ConvSpec {
    pub fn new(
        direction: Direction,
        combiner: ScalarOp,
        star: ScalarOp,
        engine: Engine,
    ) -> Result<Self> {
        let spec = ConvSpec {
            direction,
            combiner,
            star,
            engine,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.combiner.kind != self.direction.constraint_kind() {
            return Err(Error::Engine(format!(
                "{} direction needs a {} as constraint operation, `{}` is a {}",
                self.direction,
                self.direction.constraint_kind(),
                self.combiner.name,
                self.combiner.kind
            )));
        }
        match self.engine {
            Engine::ExactMin => {
                let expected = match self.direction {
                    Direction::Norm => "min",
                    Direction::Conorm => "max",
                };
                if self.combiner.name != expected || self.star.name != "min" {
                    return Err(Error::Engine(format!(
                        "exact engine needs constraint `{expected}` and ⋆ = min"
                    )));
                }
            }
            Engine::Indicator => {
                if !self.combiner.continuous {
                    return Err(Error::Engine(format!(
                        "indicator engine needs a continuous constraint operation, `{}` is not",
                        self.combiner.name
                    )));
                }
                let (z, o) = (zero(), one());
                let zero_off_diagonal = [(&z, &z), (&z, &o), (&o, &z)]
                    .iter()
                    .all(|(a, b)| self.star.apply(a, b) == z);
                if !zero_off_diagonal {
                    return Err(Error::Engine(format!(
                        "indicator engine needs 0⋆0 = 0⋆1 = 1⋆0 = 0, `{}` violates this",
                        self.star.name
                    )));
                }
            }
            Engine::Grid(n) => {
                if !self.combiner.grid_closed(n) {
                    return Err(Error::Engine(format!(
                        "`{}` does not map the grid 1/{n} into itself",
                        self.combiner.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn with_engine(mut self, engine: Engine) -> Result<Self> {
        self.engine = engine;
        self.validate()?;
        Ok(self)
    }
}

/// One grid point of a grid convolution. `attained` is false when no pair
/// `(y, z)` on the grid combines to `x`; the value is then 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPoint {
    pub x: Rat,
    pub value: Rat,
    pub attained: bool,
}

pub fn convolve(f: &PwFn, g: &PwFn, spec: &ConvSpec) -> Result<PwFn> {
    convolve_with(Exec::default(), f, g, spec)
}

pub fn convolve_with(exec: Exec, f: &PwFn, g: &PwFn, spec: &ConvSpec) -> Result<PwFn> {
    spec.validate()?;
    match spec.engine {
        Engine::ExactMin => Ok(match spec.direction {
            Direction::Norm => meet(f, g),
            Direction::Conorm => join(f, g),
        }),
        Engine::Indicator => {
            let not_indicator =
                || Error::Engine("indicator engine needs interval indicators".into());
            let (a1, b1) = f.as_interval_indicator().ok_or_else(not_indicator)?;
            let (a2, b2) = g.as_interval_indicator().ok_or_else(not_indicator)?;
            let lo = spec.combiner.apply(&a1, &a2);
            let hi = spec.combiner.apply(&b1, &b2);
            let level = spec.star.apply(&one(), &one());
            PwFn::step(&lo, &hi, true, true, &level)
        }
        Engine::Grid(n) => {
            let points = grid_oracle_with(exec, f, g, spec)?;
            let values: Vec<Rat> = points.into_iter().map(|p| p.value).collect();
            PwFn::from_trace(&values, n)
        }
    }
}

pub fn grid_oracle(f: &PwFn, g: &PwFn, spec: &ConvSpec) -> Result<Vec<GridPoint>> {
    grid_oracle_with(Exec::default(), f, g, spec)
}

/// Brute force over all grid pairs: for each `k/n`, the max of
/// `f(i/n) ⋆ g(j/n)` over pairs with `i/n Δ j/n = k/n`.
pub fn grid_oracle_with(exec: Exec, f: &PwFn, g: &PwFn, spec: &ConvSpec) -> Result<Vec<GridPoint>> {
    let Engine::Grid(n) = spec.engine else {
        return Err(Error::Engine("grid oracle needs a grid engine".into()));
    };
    spec.validate()?;
    for operand in [f, g] {
        if let Some(x) = operand
            .breakpoints()
            .iter()
            .find(|x| grid_index(x, n).is_none())
        {
            return Err(Error::OffGrid { x: x.clone(), n });
        }
    }
    Ok(convolve_traces(
        exec,
        &f.trace(n),
        &g.trace(n),
        &spec.combiner,
        &spec.star,
        n,
    ))
}

/// Grid convolution of two traces sampled at `k/n`. `combiner` must map the
/// grid into itself.
pub fn convolve_traces(
    exec: Exec,
    lhs: &[Rat],
    rhs: &[Rat],
    combiner: &ScalarOp,
    star: &ScalarOp,
    n: u32,
) -> Vec<GridPoint> {
    let size = n as usize + 1;
    debug_assert_eq!(lhs.len(), size);
    debug_assert_eq!(rhs.len(), size);
    let pts: Vec<Rat> = (0..=n).map(|k| grid(k, n)).collect();
    let best = exec.fold(
        0..size,
        || vec![None::<Rat>; size],
        |mut acc, i| {
            for j in 0..size {
                let k = grid_index(&combiner.apply(&pts[i], &pts[j]), n)
                    .expect("combiner is grid-closed") as usize;
                let v = star.apply(&lhs[i], &rhs[j]);
                match &acc[k] {
                    Some(cur) if *cur >= v => {}
                    _ => acc[k] = Some(v),
                }
            }
            acc
        },
        |mut a, b| {
            for (slot, other) in a.iter_mut().zip(b) {
                if let Some(v) = other {
                    match slot {
                        Some(cur) if *cur >= v => {}
                        _ => *slot = Some(v),
                    }
                }
            }
            a
        },
    );
    best.into_iter()
        .zip(pts)
        .map(|(v, x)| GridPoint {
            x,
            attained: v.is_some(),
            value: v.unwrap_or_else(zero),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{half, rat};
    use crate::scalar_ops::builtin;

    fn spec(dir: Direction, comb: &str, star: &str, engine: Engine) -> ConvSpec {
        ConvSpec::new(dir, builtin(comb).unwrap(), builtin(star).unwrap(), engine).unwrap()
    }

    #[test]
    fn indicator_engine_absorption_laws() {
        let full = PwFn::indicator(&zero(), &one()).unwrap();
        let ab = PwFn::indicator(&rat(1, 4), &rat(5, 8)).unwrap();
        for tnorm in ["min", "product", "lukasiewicz"] {
            let s = spec(Direction::Norm, tnorm, "min", Engine::Indicator);
            assert_eq!(
                convolve(&full, &ab, &s).unwrap(),
                PwFn::indicator(&zero(), &rat(5, 8)).unwrap()
            );
        }
        let s = spec(Direction::Conorm, "max", "min", Engine::Indicator);
        assert_eq!(
            convolve(&full, &ab, &s).unwrap(),
            PwFn::indicator(&rat(1, 4), &one()).unwrap()
        );
    }

    #[test]
    fn grid_engine_singletons_under_lukasiewicz() {
        let s = spec(Direction::Norm, "lukasiewicz", "min", Engine::Grid(16));
        let out = convolve(
            &PwFn::singleton(&rat(1, 4)).unwrap(),
            &PwFn::singleton(&half()).unwrap(),
            &s,
        )
        .unwrap();
        assert_eq!(out, PwFn::singleton(&zero()).unwrap());
    }

    #[test]
    fn drastic_product_breaks_absorption_on_the_grid() {
        let s = spec(Direction::Norm, "drastic_product", "min", Engine::Grid(16));
        let pts = grid_oracle(
            &PwFn::indicator(&zero(), &one()).unwrap(),
            &PwFn::indicator(&rat(1, 4), &half()).unwrap(),
            &s,
        )
        .unwrap();
        let ones: Vec<u32> = (0..=16u32)
            .filter(|&k| pts[k as usize].value == one())
            .collect();
        assert_eq!(ones, vec![0, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn non_t_norm_star_leaks_mass() {
        let s = spec(Direction::Norm, "min", "max", Engine::Grid(16));
        let out = convolve(
            &PwFn::singleton(&rat(1, 4)).unwrap(),
            &PwFn::singleton(&half()).unwrap(),
            &s,
        )
        .unwrap();
        assert_eq!(out, PwFn::indicator(&zero(), &half()).unwrap());
    }

    #[test]
    fn unattained_points_are_flagged() {
        // every grid point is reached through 1 Δ z = z, so all are attained
        let s = spec(Direction::Norm, "drastic_product", "min", Engine::Grid(8));
        let f = PwFn::singleton(&rat(1, 4)).unwrap();
        let pts = grid_oracle(&f, &f, &s).unwrap();
        assert!(pts.iter().all(|p| p.attained));
        assert_eq!(pts[0].value, one());
        assert!(pts[1..].iter().all(|p| p.value == zero()));
    }

    #[test]
    fn spec_validation() {
        let min = builtin("min").unwrap();
        let luk = builtin("lukasiewicz").unwrap();
        let max = builtin("max").unwrap();
        let product = builtin("product").unwrap();
        let drastic = builtin("drastic_product").unwrap();
        assert!(ConvSpec::new(Direction::Norm, luk, min, Engine::ExactMin).is_err());
        assert!(ConvSpec::new(Direction::Norm, drastic, min, Engine::Indicator).is_err());
        assert!(ConvSpec::new(Direction::Norm, min, max, Engine::Indicator).is_err());
        assert!(ConvSpec::new(Direction::Norm, product, min, Engine::Grid(8)).is_err());
        assert!(ConvSpec::new(Direction::Norm, max, min, Engine::Grid(8)).is_err());
        assert!(ConvSpec::new(Direction::Conorm, max, min, Engine::ExactMin).is_ok());
    }

    #[test]
    fn off_grid_operands_are_rejected() {
        let s = spec(Direction::Norm, "min", "min", Engine::Grid(8));
        let f = PwFn::singleton(&rat(1, 3)).unwrap();
        assert!(matches!(
            grid_oracle(&f, &f, &s),
            Err(Error::OffGrid { n: 8, .. })
        ));
        let ind = spec(Direction::Norm, "min", "min", Engine::Indicator);
        assert!(convolve(&PwFn::identity(), &f, &ind).is_err());
    }
}
