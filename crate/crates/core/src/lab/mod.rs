//! Sampling, axiom checking and classification of binary operations on L,
//! plus exact reproductions of the known separating examples.

pub mod axioms;
pub mod generator;
pub mod named;
pub mod report;
pub mod reproduce;

use std::fmt;

use crate::constructions::{diamond, star};
use crate::convolution::{convolve_traces, convolve_with, ConvSpec, Direction, Engine};
use crate::error::{Error, Result};
use crate::lattice::{join, leq, meet, OrderMethod};
use crate::par::Exec;
use crate::pwfn::PwFn;
use crate::scalar_ops::{builtin, ScalarOp};

pub use axioms::{
    check_axiom, check_axiom_with, classify, classify_with, AxiomId, AxiomReport, Class,
    Classification, Relation, Verdict, Witness,
};
pub use generator::{gen_comparable_pair, gen_normal_convex, GenConfig, Generator};
pub use reproduce::{reproduce, CaseCheck, CaseReport, CASES};

/// A binary operation on L under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T2Op {
    Meet,
    Join,
    Star,
    Diamond,
    Conv(ConvSpec),
}

impl T2Op {
    /// `meet`, `join`, `star`, `diamond`, `wedge:<t-norm>:<⋆>[:N]` or
    /// `vee:<t-conorm>:<⋆>[:N]`. Without `N` the convolution must be one
    /// of the exact cases (min/min, max/min).
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "meet" => return Ok(T2Op::Meet),
            "join" => return Ok(T2Op::Join),
            "star" => return Ok(T2Op::Star),
            "diamond" => return Ok(T2Op::Diamond),
            _ => {}
        }
        let parts: Vec<&str> = name.split(':').collect();
        let direction = match parts.first() {
            Some(&"wedge") => Direction::Norm,
            Some(&"vee") => Direction::Conorm,
            _ => return Err(Error::UnknownOp(name.to_string())),
        };
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::UnknownOp(name.to_string()));
        }
        let combiner = builtin(parts[1])?;
        let star_op = builtin(parts[2])?;
        let engine = match parts.get(3) {
            None => Engine::ExactMin,
            Some(&"indicator") => Engine::Indicator,
            Some(n) => match n.parse::<u32>() {
                Ok(n) if n > 0 => Engine::Grid(n),
                _ => return Err(Error::UnknownOp(name.to_string())),
            },
        };
        Ok(T2Op::Conv(ConvSpec::new(
            direction, combiner, star_op, engine,
        )?))
    }

    pub fn conv(
        direction: Direction,
        combiner: &str,
        star_op: &str,
        engine: Engine,
    ) -> Result<Self> {
        Ok(T2Op::Conv(ConvSpec::new(
            direction,
            builtin(combiner)?,
            builtin(star_op)?,
            engine,
        )?))
    }

    pub fn direction(&self) -> Direction {
        match self {
            T2Op::Meet | T2Op::Star | T2Op::Diamond => Direction::Norm,
            T2Op::Join => Direction::Conorm,
            T2Op::Conv(spec) => spec.direction,
        }
    }

    /// The grid the operation lives on, if it is a grid convolution.
    pub fn grid(&self) -> Option<u32> {
        match self {
            T2Op::Conv(ConvSpec {
                engine: Engine::Grid(n),
                ..
            }) => Some(*n),
            _ => None,
        }
    }

    pub fn apply(&self, f: &PwFn, g: &PwFn) -> Result<PwFn> {
        match self {
            T2Op::Meet => Ok(meet(f, g)),
            T2Op::Join => Ok(join(f, g)),
            T2Op::Star => Ok(star(f, g)?.result),
            T2Op::Diamond => diamond(f, g),
            T2Op::Conv(spec) => match spec.engine {
                Engine::Grid(n) => grid_apply(
                    &self.project(f),
                    &self.project(g),
                    &spec.combiner,
                    &spec.star,
                    n,
                ),
                _ => convolve_with(Exec::Serial, f, g, spec),
            },
        }
    }

    /// Restricts `f` to the operation's grid; the identity for exact operations.
    pub fn project(&self, f: &PwFn) -> PwFn {
        match self.grid() {
            Some(n) => PwFn::from_trace(&f.trace(n), n).expect("trace values lie in [0, 1]"),
            None => f.clone(),
        }
    }

    /// ⊔ as seen by this operation: the grid convolution for grid operations.
    pub fn world_join(&self, f: &PwFn, g: &PwFn) -> PwFn {
        match self.grid() {
            Some(n) => grid_apply(f, g, &builtin("max").unwrap(), &builtin("min").unwrap(), n)
                .expect("grid join"),
            None => join(f, g),
        }
    }

    pub fn world_meet(&self, f: &PwFn, g: &PwFn) -> PwFn {
        match self.grid() {
            Some(n) => grid_apply(f, g, &builtin("min").unwrap(), &builtin("min").unwrap(), n)
                .expect("grid meet"),
            None => meet(f, g),
        }
    }

    /// `f ⊑ g` in the operation's world.
    pub fn world_below(&self, f: &PwFn, g: &PwFn) -> bool {
        match self.grid() {
            Some(_) => self.world_meet(f, g) == *f,
            None => leq(f, g, OrderMethod::MeetDef).expect("meet definition needs no precondition"),
        }
    }
}

fn grid_apply(f: &PwFn, g: &PwFn, combiner: &ScalarOp, star_op: &ScalarOp, n: u32) -> Result<PwFn> {
    let points = convolve_traces(Exec::Serial, &f.trace(n), &g.trace(n), combiner, star_op, n);
    let values: Vec<_> = points.into_iter().map(|p| p.value).collect();
    PwFn::from_trace(&values, n)
}

impl fmt::Display for T2Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T2Op::Meet => f.write_str("meet"),
            T2Op::Join => f.write_str("join"),
            T2Op::Star => f.write_str("star"),
            T2Op::Diamond => f.write_str("diamond"),
            T2Op::Conv(spec) => {
                let head = match spec.direction {
                    Direction::Norm => "wedge",
                    Direction::Conorm => "vee",
                };
                write!(f, "{head}:{}:{}", spec.combiner.name, spec.star.name)?;
                match spec.engine {
                    Engine::Grid(n) => write!(f, ":{n}"),
                    Engine::ExactMin => Ok(()),
                    Engine::Indicator => f.write_str(":indicator"),
                }
            }
        }
    }
}
