//! Exact piecewise-affine functions `[0, 1] -> [0, 1]`.
//!
//! A [`PwFn`] stores strictly increasing breakpoints `0 = x_0 < ... < x_{n-1} = 1`,
//! an explicit value at every breakpoint, and one affine law per open interval
//! `(x_i, x_{i+1})`. Point values are independent of the one-sided limits of the
//! neighbouring segments, so isolated values such as `1_{x}` are representable.
//!
//! Every constructor returns the canonical form: no interior breakpoint whose
//! value matches both one-sided limits while the neighbouring segments share
//! one affine law. Function equality is therefore structural equality.

mod text;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, check_unit, half, in_unit, max_rat, min_rat, one, zero, Rat};

pub use text::{parse_pwf, serialize_pwf, PWF_HEADER};

/// The affine law `slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub slope: Rat,
    pub intercept: Rat,
}

impl Affine {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        Affine { slope, intercept }
    }

    pub fn constant(value: Rat) -> Self {
        Affine {
            slope: zero(),
            intercept: value,
        }
    }

    /// The law through `(x0, y0)` and `(x1, y1)`, `x0 < x1`.
    pub fn through(x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat) -> Self {
        let slope = (y1 - y0) / (x1 - x0);
        let intercept = y0 - &slope * x0;
        Affine { slope, intercept }
    }

    pub fn at(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    /// Where two non-parallel laws cross.
    fn crossing(&self, other: &Affine) -> Option<Rat> {
        if self.slope == other.slope {
            return None;
        }
        Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.intercept)
        } else if self.intercept.is_zero() {
            write!(f, "{}x", self.slope)
        } else {
            write!(f, "{}x{:+}", self.slope, self.intercept)
        }
    }
}

/// Pointwise combination mode for [`PwFn::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pointwise {
    Min,
    Max,
}

impl Pointwise {
    fn pick(self, a: &Rat, b: &Rat) -> Rat {
        match self {
            Pointwise::Min => min_rat(a, b),
            Pointwise::Max => max_rat(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PwFn {
    xs: Vec<Rat>,
    values: Vec<Rat>,
    segments: Vec<Affine>,
}

/// Incremental construction: alternate `point` and `segment`, starting and
/// ending with a point.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    xs: Vec<Rat>,
    values: Vec<Rat>,
    segments: Vec<Affine>,
}

impl Builder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn point(&mut self, x: Rat, value: Rat) -> &mut Self {
        debug_assert_eq!(self.xs.len(), self.segments.len());
        debug_assert!(self.xs.last().is_none_or(|last| *last < x));
        self.xs.push(x);
        self.values.push(value);
        self
    }

    pub(crate) fn segment(&mut self, law: Affine) -> &mut Self {
        debug_assert_eq!(self.xs.len(), self.segments.len() + 1);
        self.segments.push(law);
        self
    }

    pub(crate) fn finish(self) -> PwFn {
        let out = PwFn::canonical(self.xs, self.values, self.segments);
        debug_assert!(out.is_valid(), "{out}");
        out
    }
}

impl PwFn {
    /// Validates raw parts and returns the canonical form.
    pub fn from_parts(xs: Vec<Rat>, values: Vec<Rat>, segments: Vec<Affine>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::InvalidFunction(
                "at least the breakpoints 0 and 1 are required".into(),
            ));
        }
        if values.len() != xs.len() {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints but {} point values",
                xs.len(),
                values.len()
            )));
        }
        if segments.len() + 1 != xs.len() {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints need {} segments, got {}",
                xs.len(),
                xs.len() - 1,
                segments.len()
            )));
        }
        if !xs[0].is_zero() || xs[xs.len() - 1] != one() {
            return Err(Error::InvalidFunction(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if let Some(w) = xs.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFunction(format!(
                "breakpoints not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        for v in &values {
            check_unit(v)?;
        }
        for (i, seg) in segments.iter().enumerate() {
            check_unit(&seg.at(&xs[i]))?;
            check_unit(&seg.at(&xs[i + 1]))?;
        }
        Ok(Self::canonical(xs, values, segments))
    }

    fn canonical(xs: Vec<Rat>, values: Vec<Rat>, segments: Vec<Affine>) -> Self {
        let n = xs.len();
        let mut out_x = Vec::with_capacity(n);
        let mut out_v = Vec::with_capacity(n);
        let mut out_s = Vec::with_capacity(n - 1);
        let mut xs = xs.into_iter();
        let mut values = values.into_iter();
        let mut segments = segments.into_iter();
        out_x.push(xs.next().unwrap());
        out_v.push(values.next().unwrap());
        let mut current = segments.next().unwrap();
        for i in 1..n {
            let x = xs.next().unwrap();
            let v = values.next().unwrap();
            if i < n - 1 {
                let next = segments.next().unwrap();
                if next == current && v == current.at(&x) {
                    continue;
                }
                out_s.push(std::mem::replace(&mut current, next));
            } else {
                out_s.push(current.clone());
            }
            out_x.push(x);
            out_v.push(v);
        }
        PwFn {
            xs: out_x,
            values: out_v,
            segments: out_s,
        }
    }

    pub fn constant(value: Rat) -> Result<Self> {
        check_unit(&value)?;
        Ok(Self::canonical(
            vec![zero(), one()],
            vec![value.clone(), value.clone()],
            vec![Affine::constant(value)],
        ))
    }

    /// The identity `x -> x`.
    pub fn identity() -> Self {
        Self::canonical(
            vec![zero(), one()],
            vec![zero(), one()],
            vec![Affine::new(one(), zero())],
        )
    }

    /// `level` on the interval from `lo` to `hi` (closedness per flag), 0 elsewhere.
    /// An empty interval yields the zero function.
    pub fn step(lo: &Rat, hi: &Rat, lo_closed: bool, hi_closed: bool, level: &Rat) -> Result<Self> {
        check_unit(lo)?;
        check_unit(hi)?;
        check_unit(level)?;
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Self::constant(zero());
        }
        let mut xs = vec![zero(), lo.clone(), hi.clone(), one()];
        xs.dedup();
        let inside = |x: &Rat| -> bool {
            (x > lo || (x == lo && lo_closed)) && (x < hi || (x == hi && hi_closed))
        };
        let pick = |x: &Rat| if inside(x) { level.clone() } else { zero() };
        let values = xs.iter().map(pick).collect();
        let segments = xs
            .windows(2)
            .map(|w| Affine::constant(pick(&((&w[0] + &w[1]) * half()))))
            .collect();
        Ok(Self::canonical(xs, values, segments))
    }

    /// The characteristic function `1_[a, b]`; `a == b` gives `1_{a}`.
    pub fn indicator(a: &Rat, b: &Rat) -> Result<Self> {
        if a > b {
            return Err(Error::InvalidInterval(format!("[{a}, {b}] has a > b")));
        }
        Self::step(a, b, true, true, &one())
    }

    pub fn singleton(x: &Rat) -> Result<Self> {
        Self::indicator(x, x)
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.xs
    }

    pub fn point_values(&self) -> &[Rat] {
        &self.values
    }

    pub fn segments(&self) -> &[Affine] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the segment whose open interval contains `x`, or the breakpoint
    /// index when `x` is a breakpoint.
    fn locate(&self, x: &Rat) -> std::result::Result<usize, usize> {
        self.xs.binary_search(x).map_err(|i| i - 1)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        check_unit(x)?;
        Ok(self.value_at(x))
    }

    /// `eval` without the domain check; `x` must lie in `[0, 1]`.
    pub(crate) fn value_at(&self, x: &Rat) -> Rat {
        match self.locate(x) {
            Ok(i) => self.values[i].clone(),
            Err(j) => self.segments[j].at(x),
        }
    }

    /// The affine law in force on the open interval `(lo, hi)`, which must not
    /// contain a breakpoint.
    fn law_on(&self, lo: &Rat) -> &Affine {
        let j = self.xs.partition_point(|x| x <= lo) - 1;
        &self.segments[j]
    }

    /// `lim_{y -> x-}`; `x > 0`.
    pub fn left_limit(&self, x: &Rat) -> Rat {
        let j = self.xs.partition_point(|b| b < x) - 1;
        self.segments[j].at(x)
    }

    /// `lim_{y -> x+}`; `x < 1`.
    pub fn right_limit(&self, x: &Rat) -> Rat {
        self.law_on(x).at(x)
    }

    /// Exact pointwise minimum or maximum.
    pub fn combine(&self, other: &PwFn, mode: Pointwise) -> PwFn {
        let mut xs: Vec<Rat> = self.xs.iter().chain(other.xs.iter()).cloned().collect();
        xs.sort();
        xs.dedup();
        let mut out = Builder::new();
        for (i, x) in xs.iter().enumerate() {
            out.point(x.clone(), mode.pick(&self.value_at(x), &other.value_at(x)));
            let Some(hi) = xs.get(i + 1) else { break };
            let a = self.law_on(x);
            let b = other.law_on(x);
            // Order of the two laws just right of `at`, where they take `va`, `vb`.
            let pick = |va: &Rat, vb: &Rat| {
                let ord = va.cmp(vb).then_with(|| a.slope.cmp(&b.slope));
                let a_wins = match mode {
                    Pointwise::Min => ord.is_le(),
                    Pointwise::Max => ord.is_ge(),
                };
                if a_wins {
                    a.clone()
                } else {
                    b.clone()
                }
            };
            if a == b {
                out.segment(a.clone());
                continue;
            }
            let (va, vb) = (a.at(x), b.at(x));
            match a.crossing(b) {
                Some(t) if &t > x && &t < hi => {
                    let vt = a.at(&t);
                    out.segment(pick(&va, &vb));
                    out.point(t, vt.clone());
                    out.segment(pick(&vt, &vt));
                }
                _ => {
                    out.segment(pick(&va, &vb));
                }
            }
        }
        out.finish()
    }

    pub fn min(&self, other: &PwFn) -> PwFn {
        self.combine(other, Pointwise::Min)
    }

    pub fn max(&self, other: &PwFn) -> PwFn {
        self.combine(other, Pointwise::Max)
    }

    /// `f <= g` at every point.
    pub fn le_pointwise(&self, other: &PwFn) -> bool {
        self.min(other) == *self
    }

    /// Exact supremum over an interval between `lo` and `hi`. One-sided limits
    /// at open ends take part, so the supremum need not be attained.
    pub fn sup_on(&self, lo: &Rat, hi: &Rat, lo_closed: bool, hi_closed: bool) -> Result<Rat> {
        check_unit(lo)?;
        check_unit(hi)?;
        if lo > hi {
            return Err(Error::InvalidInterval(format!("lo {lo} > hi {hi}")));
        }
        if lo == hi {
            if lo_closed && hi_closed {
                return Ok(self.value_at(lo));
            }
            return Err(Error::InvalidInterval(format!(
                "interval at {lo} with an open end is empty"
            )));
        }
        let mut best = zero();
        let mut offer = |v: Rat| {
            if v > best {
                best = v;
            }
        };
        if lo_closed {
            offer(self.value_at(lo));
        }
        if hi_closed {
            offer(self.value_at(hi));
        }
        for (i, seg) in self.segments.iter().enumerate() {
            let (a, b) = (&self.xs[i], &self.xs[i + 1]);
            if b <= lo || a >= hi {
                continue;
            }
            if a > lo {
                offer(self.values[i].clone());
            }
            offer(seg.at(&max_rat(a, lo)));
            offer(seg.at(&min_rat(b, hi)));
        }
        Ok(best)
    }

    /// Supremum over `[0, 1]`.
    pub fn sup(&self) -> Rat {
        let mut best = zero();
        for v in &self.values {
            if *v > best {
                best = v.clone();
            }
        }
        for (i, seg) in self.segments.iter().enumerate() {
            for v in [seg.at(&self.xs[i]), seg.at(&self.xs[i + 1])] {
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    /// `x -> f(1 - x)`.
    pub fn reflect(&self) -> PwFn {
        let n = self.xs.len();
        let xs = self.xs.iter().rev().map(|x| one() - x).collect();
        let values = self.values.iter().rev().cloned().collect();
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Affine::new(-&s.slope, &s.slope + &s.intercept))
            .collect();
        let out = PwFn {
            xs,
            values,
            segments,
        };
        debug_assert_eq!(out.xs.len(), n);
        out
    }

    /// `Some((a, b))` when `self == 1_[a, b]`.
    pub fn as_interval_indicator(&self) -> Option<(Rat, Rat)> {
        let mut lo: Option<&Rat> = None;
        let mut hi: Option<&Rat> = None;
        for (i, v) in self.values.iter().enumerate() {
            if *v == one() {
                lo.get_or_insert(&self.xs[i]);
                hi = Some(&self.xs[i]);
            }
        }
        let (lo, hi) = (lo?.clone(), hi?.clone());
        let candidate = PwFn::indicator(&lo, &hi).ok()?;
        (candidate == *self).then_some((lo, hi))
    }

    /// `Some(x)` when `self == 1_{x}`.
    pub fn as_singleton(&self) -> Option<Rat> {
        self.as_interval_indicator()
            .and_then(|(a, b)| (a == b).then_some(a))
    }

    /// True when every breakpoint is a multiple of `1/n`.
    pub fn on_grid(&self, n: u32) -> bool {
        self.xs.iter().all(|x| rat::grid_index(x, n).is_some())
    }

    /// Values at `k/n` for `k = 0..=n`.
    pub fn trace(&self, n: u32) -> Vec<Rat> {
        (0..=n).map(|k| self.value_at(&rat::grid(k, n))).collect()
    }

    /// The function taking `values[k]` at `k/n` and, on each open cell, the
    /// smaller of its two endpoint values. Interval indicators with grid
    /// endpoints are reproduced exactly from their traces.
    pub fn from_trace(values: &[Rat], n: u32) -> Result<Self> {
        if values.len() != n as usize + 1 || n == 0 {
            return Err(Error::InvalidFunction(format!(
                "a trace at 1/{n} needs {} values, got {}",
                n + 1,
                values.len()
            )));
        }
        let mut out = Builder::new();
        for (k, v) in values.iter().enumerate() {
            check_unit(v)?;
            out.point(rat::grid(k as u32, n), v.clone());
            if let Some(next) = values.get(k + 1) {
                out.segment(Affine::constant(min_rat(v, next)));
            }
        }
        Ok(out.finish())
    }

    pub(crate) fn is_valid(&self) -> bool {
        self.values.iter().all(in_unit)
            && self
                .segments
                .iter()
                .enumerate()
                .all(|(i, s)| in_unit(&s.at(&self.xs[i])) && in_unit(&s.at(&self.xs[i + 1])))
            && !self.xs.iter().any(|x| x.is_negative())
    }
}

/// Function equality over all of `[0, 1]`.
pub fn canonical_equal(f: &PwFn, g: &PwFn) -> bool {
    f == g
}

impl fmt::Display for PwFn {
    /// Compact one-line form, e.g. `[0]=0 (0,3/4)=0 [3/4]=1 (3/4,1)=0 [1]=0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.xs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "[{}]={}", x, self.values[i])?;
            if let Some(seg) = self.segments.get(i) {
                write!(f, " ({},{})={}", x, self.xs[i + 1], seg)?;
            }
        }
        Ok(())
    }
}
