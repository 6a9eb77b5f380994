//! Test-side oracles. They evaluate functions pointwise through `eval` and the
//! one-sided limits only, never through the library's sweeps or grid kernels.

#![allow(dead_code)]

use t2truth::lab::{GenConfig, Generator};
use t2truth::rat::{grid, one, rat, zero, Rat};
use t2truth::PwFn;

pub fn max_of(values: impl IntoIterator<Item = Rat>) -> Rat {
    values
        .into_iter()
        .fold(zero(), |a, b| if b > a { b } else { a })
}

/// Breakpoints of all functions plus every midpoint between neighbours.
pub fn probe_points(fs: &[&PwFn]) -> Vec<Rat> {
    let mut xs: Vec<Rat> = fs.iter().flat_map(|f| f.breakpoints().to_vec()).collect();
    xs.sort();
    xs.dedup();
    let mids: Vec<Rat> = xs.windows(2).map(|w| (&w[0] + &w[1]) / rat(2, 1)).collect();
    xs.extend(mids);
    xs.sort();
    xs
}

/// `sup{f(y) : y <= x}` from point values and one-sided limits: on a piece of
/// an affine segment the supremum is approached at one of its ends.
pub fn sup_left_of(f: &PwFn, x: &Rat) -> Rat {
    let mut cands = vec![f.eval(x).unwrap()];
    for b in f.breakpoints() {
        if b <= x {
            cands.push(f.eval(b).unwrap());
            if *b > zero() {
                cands.push(f.left_limit(b));
            }
        }
        if b < x {
            cands.push(f.right_limit(b));
        }
    }
    if *x > zero() {
        cands.push(f.left_limit(x));
    }
    max_of(cands)
}

/// `sup{f(y) : y >= x}`.
pub fn sup_right_of(f: &PwFn, x: &Rat) -> Rat {
    let mirrored = one() - x;
    sup_left_of(&f.reflect(), &mirrored)
}

pub fn sup_all(f: &PwFn) -> Rat {
    sup_left_of(f, &one())
}

/// Quasiconcavity: `v_j >= min(v_i, v_k)` for `i <= j <= k` over
/// the ordered sequence of left limits, point values, right limits and
/// midpoint values. A limit stands for values taken arbitrarily close to its
/// breakpoint, and each affine piece is monotone, so the scan is exact.
pub fn brute_convex(f: &PwFn) -> bool {
    let xs = f.breakpoints();
    let mut vals = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            vals.push(f.left_limit(x));
        }
        vals.push(f.eval(x).unwrap());
        if let Some(next) = xs.get(i + 1) {
            vals.push(f.right_limit(x));
            vals.push(f.eval(&((x + next) / rat(2, 1))).unwrap());
        }
    }
    // Some i <= j <= k has v_j < min(v_i, v_k) iff v_j is below both the
    // running maximum from the left and the one from the right.
    let mut left = vec![zero(); vals.len()];
    let mut right = vec![zero(); vals.len()];
    let mut best = zero();
    for (i, v) in vals.iter().enumerate() {
        best = rmax(&best, v);
        left[i] = best.clone();
    }
    best = zero();
    for (i, v) in vals.iter().enumerate().rev() {
        best = rmax(&best, v);
        right[i] = best.clone();
    }
    if (0..vals.len()).any(|j| vals[j] < rmin(&left[j], &right[j])) {
        return false;
    }
    true
}

/// Grid sup-convolution by brute force, evaluating both operands pointwise.
/// Returns `None` where no grid pair combines to `k/n`.
pub fn brute_grid_conv(
    f: &PwFn,
    g: &PwFn,
    combine: impl Fn(&Rat, &Rat) -> Rat,
    value: impl Fn(&Rat, &Rat) -> Rat,
    n: u32,
) -> Vec<Option<Rat>> {
    let pts: Vec<Rat> = (0..=n).map(|k| grid(k, n)).collect();
    let mut out: Vec<Option<Rat>> = vec![None; pts.len()];
    for y in &pts {
        for z in &pts {
            let x = combine(y, z);
            let k = pts
                .iter()
                .position(|p| *p == x)
                .expect("combine stays on the grid");
            let v = value(&f.eval(y).unwrap(), &g.eval(z).unwrap());
            if out[k].as_ref().is_none_or(|cur| v > *cur) {
                out[k] = Some(v);
            }
        }
    }
    out
}

pub fn rmin(a: &Rat, b: &Rat) -> Rat {
    a.min(b).clone()
}

pub fn rmax(a: &Rat, b: &Rat) -> Rat {
    a.max(b).clone()
}

pub fn luk(a: &Rat, b: &Rat) -> Rat {
    rmax(&(a + b - one()), &zero())
}

pub fn draws(seed: u64, count: usize) -> Vec<PwFn> {
    let mut gen = Generator::new(GenConfig::with_seed(seed)).unwrap();
    (0..count).map(|_| gen.normal_convex()).collect()
}

pub fn attained_draws(seed: u64, count: usize, n: u32) -> Vec<PwFn> {
    let cfg = GenConfig {
        grid_denominator: n,
        allow_unattained_peak: false,
        ..GenConfig::with_seed(seed)
    };
    let mut gen = Generator::new(cfg).unwrap();
    (0..count).map(|_| gen.normal_convex()).collect()
}

/// `f` with an extra spike of height 1 at `x`; usually outside L.
pub fn spiked(f: &PwFn, x: &Rat) -> PwFn {
    f.max(&PwFn::singleton(x).unwrap())
}
