//! The axiom families for operations on L and a classifier built on them.
//!
//! Random axioms draw `(f, g, h)` from stream `t` of the configured seed for
//! trial `t`, so every axiom sees the same samples. The restrictive axioms
//! (O5)-(O7) enumerate all indicator inputs with endpoints `k/8` instead.

use std::fmt;

use num_integer::Integer;

use super::generator::{GenConfig, Generator};
use super::{named, T2Op};
use crate::convolution::Direction;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::pwfn::PwFn;
use crate::rat::{grid, one, zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    O1,
    O2,
    O3,
    O3p,
    O4,
    O4p,
    O4pp,
    O5,
    O5p,
    O6,
    O7,
}

impl AxiomId {
    pub const ALL: [AxiomId; 11] = [
        AxiomId::O1,
        AxiomId::O2,
        AxiomId::O3,
        AxiomId::O3p,
        AxiomId::O4,
        AxiomId::O4p,
        AxiomId::O4pp,
        AxiomId::O5,
        AxiomId::O5p,
        AxiomId::O6,
        AxiomId::O7,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            AxiomId::O1 => "O1",
            AxiomId::O2 => "O2",
            AxiomId::O3 => "O3",
            AxiomId::O3p => "O3p",
            AxiomId::O4 => "O4",
            AxiomId::O4p => "O4p",
            AxiomId::O4pp => "O4pp",
            AxiomId::O5 => "O5",
            AxiomId::O5p => "O5p",
            AxiomId::O6 => "O6",
            AxiomId::O7 => "O7",
        }
    }

    /// Accepts the tags above, case-insensitively, with `'`/`′` for `p`.
    pub fn parse(text: &str) -> Result<Self> {
        let norm = text.trim().to_ascii_uppercase().replace(['\'', '′'], "P");
        AxiomId::ALL
            .into_iter()
            .find(|a| a.tag().to_ascii_uppercase() == norm)
            .ok_or_else(|| Error::UnknownAxiom(text.to_string()))
    }

    pub fn applies_to(self, direction: Direction) -> bool {
        match self {
            AxiomId::O3 | AxiomId::O5 => direction == Direction::Norm,
            AxiomId::O3p | AxiomId::O5p => direction == Direction::Conorm,
            _ => true,
        }
    }

    pub fn is_exhaustive(self) -> bool {
        matches!(self, AxiomId::O5 | AxiomId::O5p | AxiomId::O6 | AxiomId::O7)
    }

    fn check_applicable(self, direction: Direction) -> Result<()> {
        if self.applies_to(direction) {
            Ok(())
        } else {
            Err(Error::InapplicableAxiom {
                axiom: self.tag(),
                direction: match direction {
                    Direction::Norm => "norm",
                    Direction::Conorm => "conorm",
                },
            })
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// What the two sides of an instance must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `lhs ⊑ rhs`.
    Below,
    /// `lhs` is a singleton indicator.
    InJ,
    /// `lhs` is an interval indicator.
    InK,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::Below => "below",
            Relation::InJ => "in_J",
            Relation::InK => "in_K",
        })
    }
}

/// One evaluated axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub relation: Relation,
    pub lhs: PwFn,
    pub rhs: Option<PwFn>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub trial: usize,
    pub inputs: Vec<PwFn>,
    pub relation: Relation,
    pub lhs: PwFn,
    pub rhs: Option<PwFn>,
}

impl Witness {
    /// Recomputes both sides from the stored inputs and confirms the same
    /// violation.
    pub fn reverify(&self, op: &T2Op, axiom: AxiomId) -> Result<bool> {
        let again = evaluate(op, axiom, &self.inputs)?;
        Ok(!again.holds
            && again.relation == self.relation
            && again.lhs == self.lhs
            && again.rhs == self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PassOnSample,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::PassOnSample => "pass_on_sample",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub op: String,
    pub axiom: AxiomId,
    pub verdict: Verdict,
    pub trials: usize,
    pub seed: u64,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::PassOnSample
    }
}

fn top() -> PwFn {
    PwFn::singleton(&one()).expect("1 in [0, 1]")
}

fn bottom() -> PwFn {
    PwFn::singleton(&zero()).expect("0 in [0, 1]")
}

fn full() -> PwFn {
    PwFn::constant(one()).expect("1 in [0, 1]")
}

fn indicator_operand(f: &PwFn) -> Result<(crate::rat::Rat, crate::rat::Rat)> {
    f.as_interval_indicator().ok_or_else(|| {
        Error::InvalidFunction("restrictive axiom needs an interval indicator operand".into())
    })
}

/// Evaluates one instance of `axiom` for `op` on `inputs`, in the
/// operation's world (grid operations use grid ⊔, ⊓ and ⊑).
pub fn evaluate(op: &T2Op, axiom: AxiomId, inputs: &[PwFn]) -> Result<Instance> {
    let arity = match axiom {
        AxiomId::O3 | AxiomId::O3p => 1,
        AxiomId::O2 | AxiomId::O4 | AxiomId::O4p | AxiomId::O4pp => 3,
        _ => 2,
    };
    if inputs.len() != arity {
        return Err(Error::InvalidFunction(format!(
            "{axiom} takes {arity} inputs, got {}",
            inputs.len()
        )));
    }
    let t = |a: &PwFn, b: &PwFn| op.apply(a, b);
    let equal = |lhs: PwFn, rhs: PwFn| Instance {
        relation: Relation::Equal,
        holds: lhs == rhs,
        lhs,
        rhs: Some(rhs),
    };
    let x = |i: usize| &inputs[i];
    Ok(match axiom {
        AxiomId::O1 => equal(t(x(0), x(1))?, t(x(1), x(0))?),
        AxiomId::O2 => equal(t(&t(x(0), x(1))?, x(2))?, t(x(0), &t(x(1), x(2))?)?),
        AxiomId::O3 => equal(t(x(0), &op.project(&top()))?, x(0).clone()),
        AxiomId::O3p => equal(t(x(0), &op.project(&bottom()))?, x(0).clone()),
        AxiomId::O4 => {
            let lhs = t(x(0), x(2))?;
            let rhs = t(x(1), x(2))?;
            Instance {
                relation: Relation::Below,
                holds: op.world_below(&lhs, &rhs),
                lhs,
                rhs: Some(rhs),
            }
        }
        AxiomId::O4p => equal(
            t(x(0), &op.world_join(x(1), x(2)))?,
            op.world_join(&t(x(0), x(1))?, &t(x(0), x(2))?),
        ),
        AxiomId::O4pp => equal(
            t(x(0), &op.world_meet(x(1), x(2)))?,
            op.world_meet(&t(x(0), x(1))?, &t(x(0), x(2))?),
        ),
        AxiomId::O5 => {
            let (_, b) = indicator_operand(x(1))?;
            equal(t(x(0), x(1))?, op.project(&PwFn::indicator(&zero(), &b)?))
        }
        AxiomId::O5p => {
            let (a, _) = indicator_operand(x(1))?;
            equal(t(x(0), x(1))?, op.project(&PwFn::indicator(&a, &one())?))
        }
        AxiomId::O6 | AxiomId::O7 => {
            let lhs = t(x(0), x(1))?;
            let (relation, holds) = if axiom == AxiomId::O6 {
                (Relation::InJ, lhs.as_singleton().is_some())
            } else {
                (Relation::InK, lhs.as_interval_indicator().is_some())
            };
            Instance {
                relation,
                lhs,
                rhs: None,
                holds,
            }
        }
    })
}

/// Endpoint denominator for the exhaustive axioms: 8, or the largest
/// divisor of 8 that keeps the endpoints on a grid operation's grid.
pub fn restrictive_denominator(op: &T2Op) -> u32 {
    op.grid().map_or(8, |n| n.gcd(&8))
}

fn exhaustive_inputs(op: &T2Op, axiom: AxiomId) -> Vec<Vec<PwFn>> {
    let d = restrictive_denominator(op);
    let intervals: Vec<PwFn> = (0..=d)
        .flat_map(|a| (a..=d).map(move |b| (a, b)))
        .map(|(a, b)| PwFn::indicator(&grid(a, d), &grid(b, d)).expect("a <= b"))
        .collect();
    match axiom {
        AxiomId::O5 | AxiomId::O5p => intervals.into_iter().map(|k| vec![full(), k]).collect(),
        AxiomId::O6 => {
            let points: Vec<PwFn> = (0..=d)
                .map(|k| PwFn::singleton(&grid(k, d)).expect("grid point"))
                .collect();
            points
                .iter()
                .flat_map(|p| points.iter().map(move |q| vec![p.clone(), q.clone()]))
                .collect()
        }
        AxiomId::O7 => intervals
            .iter()
            .flat_map(|p| intervals.iter().map(move |q| vec![p.clone(), q.clone()]))
            .collect(),
        _ => unreachable!("only restrictive axioms are enumerated"),
    }
}

/// The generator configuration an operation samples from: grid operations
/// draw on their own grid with attained peaks.
pub fn world_config(op: &T2Op, cfg: GenConfig) -> GenConfig {
    match op.grid() {
        Some(n) => GenConfig {
            grid_denominator: n,
            allow_unattained_peak: false,
            ..cfg
        },
        None => cfg,
    }
}

/// The three draws `(f, g, h)` of trial `t`, projected into the operation's world.
pub fn trial_sample(op: &T2Op, cfg: GenConfig, t: usize) -> Result<[PwFn; 3]> {
    let mut gen = Generator::stream(world_config(op, cfg), t as u64)?;
    Ok([(); 3].map(|_| op.project(&gen.normal_convex())))
}

fn random_inputs(op: &T2Op, axiom: AxiomId, cfg: GenConfig, t: usize) -> Result<Vec<PwFn>> {
    if *op == T2Op::Star && axiom == AxiomId::O4p && t == 0 {
        return Ok(named::triple().to_vec());
    }
    let [f, g, h] = trial_sample(op, cfg, t)?;
    Ok(match axiom {
        AxiomId::O1 => vec![f, g],
        AxiomId::O3 | AxiomId::O3p => vec![f],
        AxiomId::O4 => {
            let upper = op.world_join(&f, &g);
            vec![f, upper, h]
        }
        _ => vec![f, g, h],
    })
}

pub fn check_axiom(
    op: &T2Op,
    axiom: AxiomId,
    trials: usize,
    cfg: GenConfig,
) -> Result<AxiomReport> {
    check_axiom_with(Exec::default(), op, axiom, trials, cfg)
}

/// Runs `axiom` on `trials` samples (or on every enumerated case for the
/// restrictive axioms). The reported witness is the lowest failing trial.
pub fn check_axiom_with(
    exec: Exec,
    op: &T2Op,
    axiom: AxiomId,
    trials: usize,
    cfg: GenConfig,
) -> Result<AxiomReport> {
    axiom.check_applicable(op.direction())?;
    cfg.validate()?;
    let cases = axiom.is_exhaustive().then(|| exhaustive_inputs(op, axiom));
    let count = cases.as_ref().map_or(trials, Vec::len);
    let run = |t: usize| -> Option<Result<Witness>> {
        let inputs = match &cases {
            Some(cases) => cases[t].iter().map(|f| op.project(f)).collect(),
            None => match random_inputs(op, axiom, cfg, t) {
                Ok(inputs) => inputs,
                Err(e) => return Some(Err(e)),
            },
        };
        match evaluate(op, axiom, &inputs) {
            Ok(inst) if inst.holds => None,
            Ok(inst) => Some(Ok(Witness {
                trial: t,
                inputs,
                relation: inst.relation,
                lhs: inst.lhs,
                rhs: inst.rhs,
            })),
            Err(e) => Some(Err(e)),
        }
    };
    let witness = exec.find_map_first(0..count, run).transpose()?;
    Ok(AxiomReport {
        op: op.to_string(),
        axiom,
        verdict: if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::PassOnSample
        },
        trials: count,
        seed: cfg.seed,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    FailsBasic,
    TNorm,
    TrNorm,
    TwNorm,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::FailsBasic => "fails_basic",
            Class::TNorm => "t_norm",
            Class::TrNorm => "t_r_norm",
            Class::TwNorm => "t_w_norm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub op: String,
    pub direction: Direction,
    pub class: Class,
    pub reports: Vec<AxiomReport>,
}

impl Classification {
    pub fn report(&self, axiom: AxiomId) -> Option<&AxiomReport> {
        self.reports.iter().find(|r| r.axiom == axiom)
    }

    fn all_pass(&self, axioms: &[AxiomId]) -> bool {
        axioms
            .iter()
            .all(|a| self.report(*a).is_some_and(AxiomReport::passed))
    }
}

/// The axioms checked for a direction, in report order.
pub fn suite(direction: Direction) -> Vec<AxiomId> {
    AxiomId::ALL
        .into_iter()
        .filter(|a| a.applies_to(direction))
        .collect()
}

fn ladder(direction: Direction) -> (Vec<AxiomId>, Vec<AxiomId>, Vec<AxiomId>) {
    use AxiomId::*;
    let (o3, o5) = match direction {
        Direction::Norm => (O3, O5),
        Direction::Conorm => (O3p, O5p),
    };
    let basic = vec![O1, O2, o3, O4];
    let restrictive = [basic.clone(), vec![o5, O6, O7]].concat();
    let walker = vec![O1, O2, o3, O4p, O4pp, o5, O6, O7];
    (basic, restrictive, walker)
}

pub fn classify(op: &T2Op, trials: usize, cfg: GenConfig) -> Result<Classification> {
    classify_with(Exec::default(), op, trials, cfg)
}

/// The strongest of t_w-norm, t_r-norm, t-norm whose axioms all pass.
pub fn classify_with(
    exec: Exec,
    op: &T2Op,
    trials: usize,
    cfg: GenConfig,
) -> Result<Classification> {
    let direction = op.direction();
    let reports = suite(direction)
        .into_iter()
        .map(|a| check_axiom_with(exec, op, a, trials, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Classification {
        op: op.to_string(),
        direction,
        class: Class::FailsBasic,
        reports,
    };
    let (basic, restrictive, walker) = ladder(direction);
    out.class = if out.all_pass(&walker) {
        Class::TwNorm
    } else if out.all_pass(&restrictive) {
        Class::TrNorm
    } else if out.all_pass(&basic) {
        Class::TNorm
    } else {
        Class::FailsBasic
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{half, rat};

    fn cfg() -> GenConfig {
        GenConfig::with_seed(2024)
    }

    #[test]
    fn axiom_ids_parse() {
        assert_eq!(AxiomId::parse("O4′").unwrap(), AxiomId::O4p);
        assert_eq!(AxiomId::parse("o4''").unwrap(), AxiomId::O4pp);
        assert_eq!(AxiomId::parse("O5p").unwrap(), AxiomId::O5p);
        assert!(AxiomId::parse("O8").is_err());
        for a in AxiomId::ALL {
            assert_eq!(AxiomId::parse(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn inapplicable_axioms_are_rejected() {
        assert!(matches!(
            check_axiom(&T2Op::Meet, AxiomId::O3p, 10, cfg()),
            Err(Error::InapplicableAxiom { .. })
        ));
        assert!(check_axiom(&T2Op::Join, AxiomId::O5, 10, cfg()).is_err());
    }

    #[test]
    fn star_fails_join_distributivity_on_the_forced_triple() {
        let report = check_axiom(&T2Op::Star, AxiomId::O4p, 50, cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.as_ref().unwrap();
        assert_eq!(w.trial, 0);
        assert_eq!(w.inputs, named::triple().to_vec());
        assert_eq!(w.lhs.eval(&half()).unwrap(), zero());
        assert_eq!(w.rhs.as_ref().unwrap().eval(&half()).unwrap(), half());
        assert!(w.reverify(&T2Op::Star, AxiomId::O4p).unwrap());
    }

    #[test]
    fn diamond_leaves_j() {
        let report = check_axiom(&T2Op::Diamond, AxiomId::O6, 0, cfg()).unwrap();
        assert_eq!(report.trials, 81);
        let w = report.witness.unwrap();
        assert_eq!(w.inputs, vec![PwFn::singleton(&rat(1, 8)).unwrap(); 2]);
        assert_eq!(w.lhs, PwFn::indicator(&zero(), &rat(1, 8)).unwrap());
        assert!(w.reverify(&T2Op::Diamond, AxiomId::O6).unwrap());
    }

    #[test]
    fn meet_has_a_neutral_element() {
        let report = check_axiom(&T2Op::Meet, AxiomId::O3, 200, cfg()).unwrap();
        assert!(report.passed());
        let report = check_axiom(&T2Op::Join, AxiomId::O3p, 200, cfg()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn reports_do_not_depend_on_the_executor() {
        let op = T2Op::parse("wedge:nilpotent_min:min:8").unwrap();
        for axiom in [AxiomId::O2, AxiomId::O5, AxiomId::O7] {
            let a = check_axiom_with(Exec::Serial, &op, axiom, 60, cfg()).unwrap();
            let b = check_axiom_with(Exec::Parallel, &op, axiom, 60, cfg()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn max_as_value_operation_breaks_singletons() {
        let op = T2Op::parse("wedge:min:max:8").unwrap();
        let report = check_axiom(&op, AxiomId::O6, 0, cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn grid_witnesses_reverify() {
        let op = T2Op::parse("wedge:drastic_product:min:16").unwrap();
        let report = check_axiom(&op, AxiomId::O5, 0, cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.witness.unwrap().reverify(&op, AxiomId::O5).unwrap());
    }
}
