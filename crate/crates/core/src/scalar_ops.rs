//! Binary operations on `[0, 1]`: the t-norms and t-conorms used as the
//! constraint operation of a convolution, and as its combiner.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{grid, grid_index, max_rat, min_rat, one, rat, zero, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    TNorm,
    TConorm,
    Raw,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::TNorm => "t-norm",
            ScalarKind::TConorm => "t-conorm",
            ScalarKind::Raw => "raw",
        })
    }
}

/// Which uniform grids `{i/N}` an operation maps into themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridClosure {
    Every,
    Never,
}

#[derive(Clone, Copy)]
pub struct ScalarOp {
    pub name: &'static str,
    pub kind: ScalarKind,
    pub continuous: bool,
    pub grid_closure: GridClosure,
    eval: fn(&Rat, &Rat) -> Rat,
}

impl fmt::Debug for ScalarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarOp")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("continuous", &self.continuous)
            .field("grid_closure", &self.grid_closure)
            .finish()
    }
}

impl PartialEq for ScalarOp {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for ScalarOp {}

impl ScalarOp {
    pub fn apply(&self, x: &Rat, y: &Rat) -> Rat {
        (self.eval)(x, y)
    }

    pub fn grid_closed(&self, n: u32) -> bool {
        n > 0 && self.grid_closure == GridClosure::Every
    }
}

fn op_min(x: &Rat, y: &Rat) -> Rat {
    min_rat(x, y)
}

fn op_max(x: &Rat, y: &Rat) -> Rat {
    max_rat(x, y)
}

fn product(x: &Rat, y: &Rat) -> Rat {
    x * y
}

fn prob_sum(x: &Rat, y: &Rat) -> Rat {
    x + y - x * y
}

fn lukasiewicz(x: &Rat, y: &Rat) -> Rat {
    max_rat(&(x + y - one()), &zero())
}

fn bounded_sum(x: &Rat, y: &Rat) -> Rat {
    min_rat(&(x + y), &one())
}

fn drastic_product(x: &Rat, y: &Rat) -> Rat {
    if x.is_one() {
        y.clone()
    } else if y.is_one() {
        x.clone()
    } else {
        zero()
    }
}

fn drastic_sum(x: &Rat, y: &Rat) -> Rat {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else {
        one()
    }
}

fn nilpotent_min(x: &Rat, y: &Rat) -> Rat {
    if x + y > one() {
        min_rat(x, y)
    } else {
        zero()
    }
}

const fn op(
    name: &'static str,
    kind: ScalarKind,
    continuous: bool,
    grid_closure: GridClosure,
    eval: fn(&Rat, &Rat) -> Rat,
) -> ScalarOp {
    ScalarOp {
        name,
        kind,
        continuous,
        grid_closure,
        eval,
    }
}

use GridClosure::{Every, Never};
use ScalarKind::{TConorm, TNorm};

const BUILTINS: [ScalarOp; 9] = [
    op("min", TNorm, true, Every, op_min),
    op("max", TConorm, true, Every, op_max),
    op("product", TNorm, true, Never, product),
    op("prob_sum", TConorm, true, Never, prob_sum),
    op("lukasiewicz", TNorm, true, Every, lukasiewicz),
    op("bounded_sum", TConorm, true, Every, bounded_sum),
    op("drastic_product", TNorm, false, Every, drastic_product),
    op("drastic_sum", TConorm, false, Every, drastic_sum),
    op("nilpotent_min", TNorm, false, Every, nilpotent_min),
];

/// Largest denominator whose grid-closure claim is checked at registration.
pub const VERIFIED_GRID_LIMIT: u32 = 64;

/// Exhaustively checks that `op` maps `{i/n}^2` into `{j/n}`.
pub fn verify_grid_closure(op: &ScalarOp, n: u32) -> bool {
    (0..=n).all(|i| {
        let x = grid(i, n);
        (0..=n).all(|j| grid_index(&op.apply(&x, &grid(j, n)), n).is_some())
    })
}

fn registry() -> &'static [ScalarOp] {
    static VERIFIED: OnceLock<Vec<ScalarOp>> = OnceLock::new();
    VERIFIED.get_or_init(|| {
        for op in &BUILTINS {
            if op.grid_closure == Every {
                for n in 1..=VERIFIED_GRID_LIMIT {
                    assert!(
                        verify_grid_closure(op, n),
                        "{} claims grid closure but leaves the grid 1/{n}",
                        op.name
                    );
                }
            }
        }
        BUILTINS.to_vec()
    })
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|op| op.name)
}

pub fn builtin(name: &str) -> Result<ScalarOp> {
    registry()
        .iter()
        .find(|op| op.name == name)
        .copied()
        .ok_or_else(|| Error::UnknownScalarOp(name.to_string()))
}

pub fn builtins() -> &'static [ScalarOp] {
    registry()
}

/// One violated scalar law with the grid points that exhibit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarViolation {
    pub law: &'static str,
    pub inputs: Vec<Rat>,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl fmt::Display for ScalarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self.inputs.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} fails at ({}): {} vs {}",
            self.law,
            inputs.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarLawReport {
    pub law: &'static str,
    pub violation: Option<ScalarViolation>,
}

impl ScalarLawReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustive check of commutativity, associativity, monotonicity, the
/// neutral element and the boundary law (`x*y = 1` iff `x = y = 1` for
/// t-norms, `x*y = 0` iff `x = y = 0` for t-conorms) on `{i/grid_n}`.
pub fn check_scalar_axioms(op: &ScalarOp, kind: ScalarKind, grid_n: u32) -> Vec<ScalarLawReport> {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    let pts: Vec<Rat> = (0..=grid_n).map(|k| grid(k, grid_n)).collect();
    let neutral = if kind == ScalarKind::TConorm {
        zero()
    } else {
        one()
    };
    let absorbing = if kind == ScalarKind::TConorm {
        zero()
    } else {
        one()
    };
    let v = |law, inputs: &[&Rat], lhs: Rat, rhs: Rat| ScalarViolation {
        law,
        inputs: inputs.iter().map(|r| (*r).clone()).collect(),
        lhs,
        rhs,
    };

    let commutative = pts.iter().find_map(|x| {
        pts.iter().find_map(|y| {
            let (a, b) = (op.apply(x, y), op.apply(y, x));
            (a != b).then(|| v("T1", &[x, y], a, b))
        })
    });

    let table: Vec<Vec<Rat>> = pts
        .iter()
        .map(|x| pts.iter().map(|y| op.apply(x, y)).collect())
        .collect();
    let associative = pts.iter().enumerate().find_map(|(i, x)| {
        pts.iter().enumerate().find_map(|(j, y)| {
            pts.iter().enumerate().find_map(|(k, z)| {
                let lhs = op.apply(&table[i][j], z);
                let rhs = op.apply(x, &table[j][k]);
                (lhs != rhs).then(|| v("T2", &[x, y, z], lhs, rhs))
            })
        })
    });

    let monotone = (0..pts.len()).find_map(|i| {
        (0..pts.len()).find_map(|j| {
            if i + 1 < pts.len() && table[i][j] > table[i + 1][j] {
                return Some(v(
                    "T3",
                    &[&pts[i], &pts[i + 1], &pts[j]],
                    table[i][j].clone(),
                    table[i + 1][j].clone(),
                ));
            }
            if j + 1 < pts.len() && table[i][j] > table[i][j + 1] {
                return Some(v(
                    "T3",
                    &[&pts[i], &pts[j], &pts[j + 1]],
                    table[i][j].clone(),
                    table[i][j + 1].clone(),
                ));
            }
            None
        })
    });

    let neutral_law = pts.iter().find_map(|x| {
        let (a, b) = (op.apply(&neutral, x), op.apply(x, &neutral));
        if a != *x {
            Some(v(neutral_label(kind), &[x], a, x.clone()))
        } else if b != *x {
            Some(v(neutral_label(kind), &[x], b, x.clone()))
        } else {
            None
        }
    });

    let boundary = pts.iter().enumerate().find_map(|(i, x)| {
        pts.iter().enumerate().find_map(|(j, y)| {
            let hits = table[i][j] == absorbing;
            let both = *x == absorbing && *y == absorbing;
            (hits != both).then(|| v("boundary", &[x, y], table[i][j].clone(), absorbing.clone()))
        })
    });

    vec![
        ScalarLawReport {
            law: "T1",
            violation: commutative,
        },
        ScalarLawReport {
            law: "T2",
            violation: associative,
        },
        ScalarLawReport {
            law: "T3",
            violation: monotone,
        },
        ScalarLawReport {
            law: neutral_label(kind),
            violation: neutral_law,
        },
        ScalarLawReport {
            law: "boundary",
            violation: boundary,
        },
    ]
}

fn neutral_label(kind: ScalarKind) -> &'static str {
    if kind == ScalarKind::TConorm {
        "T4'"
    } else {
        "T4"
    }
}

/// Result of scanning one section `x -> op(x, b)` on a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionScan {
    ContinuousOnGrid,
    /// Adjacent samples `(x, op(x, b))`, `(x', op(x', b))` whose gap exceeds the bound.
    Jumps(Vec<(Rat, Rat, Rat, Rat)>),
}

/// Lipschitz bound used by [`section_continuity_scan`].
pub const SECTION_LIPSCHITZ: i64 = 2;

/// Flags every adjacent pair of samples of `x -> op(x, b)` whose difference
/// exceeds `SECTION_LIPSCHITZ / grid_n`. Evidence only: a section can be
/// discontinuous between samples or steep but continuous.
pub fn section_continuity_scan(op: &ScalarOp, b: &Rat, grid_n: u32) -> SectionScan {
    assert!(grid_n >= 8, "grid_n must be at least 8");
    let bound = rat(SECTION_LIPSCHITZ, i64::from(grid_n));
    let samples: Vec<(Rat, Rat)> = (0..=grid_n)
        .map(|k| {
            let x = grid(k, grid_n);
            let y = op.apply(&x, b);
            (x, y)
        })
        .collect();
    let jumps: Vec<_> = samples
        .windows(2)
        .filter(|w| {
            let gap = &w[1].1 - &w[0].1;
            gap > bound || -gap > bound
        })
        .map(|w| {
            (
                w[0].0.clone(),
                w[0].1.clone(),
                w[1].0.clone(),
                w[1].1.clone(),
            )
        })
        .collect();
    if jumps.is_empty() {
        SectionScan::ContinuousOnGrid
    } else {
        SectionScan::Jumps(jumps)
    }
}
