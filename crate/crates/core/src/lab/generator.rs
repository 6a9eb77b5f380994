//! Seeded sampling of normal convex functions with grid breakpoints and values.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::join;
use crate::pwfn::{Affine, PwFn};
use crate::rat::grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub seed: u64,
    /// At most 16.
    pub max_breakpoints: usize,
    pub grid_denominator: u32,
    /// Whether the supremum 1 may be approached only as a one-sided limit.
    pub allow_unattained_peak: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_breakpoints: 16,
            grid_denominator: 64,
            allow_unattained_peak: true,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=16).contains(&self.max_breakpoints) {
            return Err(Error::InvalidFunction(format!(
                "max_breakpoints must lie in 2..=16, got {}",
                self.max_breakpoints
            )));
        }
        if self.grid_denominator == 0 {
            return Err(Error::InvalidFunction(
                "grid_denominator must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A deterministic stream of samples. Stream `s` of seed `k` is independent
/// of every other stream, so trial `s` can be drawn on any thread.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Result<Self> {
        Self::stream(cfg, 0)
    }

    pub fn stream(cfg: GenConfig, stream: u64) -> Result<Self> {
        cfg.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Ok(Generator { cfg, rng })
    }

    fn grid_level(&mut self) -> u32 {
        let n = self.cfg.grid_denominator;
        match self.rng.random_range(0..10) {
            0..=1 => 0,
            2..=3 => n,
            _ => self.rng.random_range(0..=n),
        }
    }

    pub fn normal_convex(&mut self) -> PwFn {
        let n = self.cfg.grid_denominator;
        match self.rng.random_range(0..20) {
            0 => {
                let k = self.rng.random_range(0..=n);
                return PwFn::singleton(&grid(k, n)).expect("grid point");
            }
            1 => {
                let a = self.rng.random_range(0..=n);
                let b = self.rng.random_range(a..=n);
                return PwFn::indicator(&grid(a, n), &grid(b, n)).expect("grid interval");
            }
            _ => {}
        }

        let max_bp = self.cfg.max_breakpoints.min(n as usize + 1);
        let count = self.rng.random_range(2..=max_bp);
        let mut ticks: Vec<u32> = if count > 2 {
            index::sample(&mut self.rng, n as usize - 1, count - 2)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect()
        } else {
            Vec::new()
        };
        ticks.sort_unstable();
        ticks.insert(0, 0);
        ticks.push(n);

        // Value slots read left to right: v_0 r_0 l_1 v_1 r_1 ... l_last v_last,
        // i.e. point value v_i at slot 3i with one-sided limits l_i, r_i beside it.
        let slots = 3 * count - 2;
        let peak = if self.cfg.allow_unattained_peak {
            self.rng.random_range(0..slots)
        } else {
            3 * self.rng.random_range(0..count)
        };
        let mut levels: Vec<u32> = (0..slots).map(|_| self.grid_level()).collect();
        levels[..peak].sort_unstable();
        levels[peak + 1..].sort_unstable_by(|a, b| b.cmp(a));
        levels[peak] = n;

        // Most breakpoints are continuous: lift the limits and the point value
        // to their common maximum, which keeps the slots unimodal.
        for i in 0..count {
            if self.rng.random_bool(0.7) {
                let group = (3 * i).saturating_sub(1)..(3 * i + 2).min(slots);
                let top = levels[group.clone()].iter().copied().max().unwrap();
                levels[group].iter_mut().for_each(|l| *l = top);
            }
        }

        let xs: Vec<_> = ticks.iter().map(|&t| grid(t, n)).collect();
        let values = (0..count).map(|i| grid(levels[3 * i], n)).collect();
        let segments = (0..count - 1)
            .map(|i| {
                Affine::through(
                    &xs[i],
                    &grid(levels[3 * i + 1], n),
                    &xs[i + 1],
                    &grid(levels[3 * i + 2], n),
                )
            })
            .collect();
        PwFn::from_parts(xs, values, segments).expect("generated slots are in range")
    }

    /// `(f, f ⊔ h)` for independent draws `f`, `h`, so the pair is ⊑-ordered.
    pub fn comparable_pair(&mut self) -> (PwFn, PwFn) {
        let f = self.normal_convex();
        let h = self.normal_convex();
        let upper = join(&f, &h);
        (f, upper)
    }
}

pub fn gen_normal_convex(cfg: GenConfig) -> Result<PwFn> {
    Ok(Generator::new(cfg)?.normal_convex())
}

pub fn gen_comparable_pair(cfg: GenConfig) -> Result<(PwFn, PwFn)> {
    Ok(Generator::new(cfg)?.comparable_pair())
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::envelope::{is_convex, is_normal};
    use crate::lattice::{leq, OrderMethod};
    use crate::pwfn::serialize_pwf;
    use crate::rat::{grid_index, one};

    #[test]
    fn samples_are_normal_convex_and_on_grid() {
        let mut gen = Generator::new(GenConfig::with_seed(7)).unwrap();
        for _ in 0..300 {
            let f = gen.normal_convex();
            assert!(is_normal(&f), "{f}");
            assert!(is_convex(&f), "{f}");
            assert!(f.on_grid(64));
            assert!(f.point_values().iter().all(|v| grid_index(v, 64).is_some()));
            assert!(f.breakpoints().len() <= 16);
        }
    }

    #[test]
    fn attained_peaks_when_requested() {
        let cfg = GenConfig {
            allow_unattained_peak: false,
            ..GenConfig::with_seed(3)
        };
        let mut gen = Generator::new(cfg).unwrap();
        for _ in 0..300 {
            let f = gen.normal_convex();
            assert!(f.trace(64).iter().any(|v| *v == one()), "{f}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::with_seed(42);
        assert_eq!(
            gen_normal_convex(cfg).unwrap(),
            gen_normal_convex(cfg).unwrap()
        );
        let a = Generator::stream(cfg, 5).unwrap().normal_convex();
        let b = Generator::stream(cfg, 5).unwrap().normal_convex();
        assert_eq!(a, b);
    }

    #[test]
    fn draws_are_diverse() {
        let mut gen = Generator::new(GenConfig::with_seed(1)).unwrap();
        let distinct: HashSet<String> = (0..1000)
            .map(|_| serialize_pwf(&gen.normal_convex()))
            .collect();
        assert!(distinct.len() >= 100, "only {} distinct", distinct.len());
    }

    #[test]
    fn comparable_pairs_are_ordered() {
        let mut gen = Generator::new(GenConfig::with_seed(9)).unwrap();
        for _ in 0..100 {
            let (a, b) = gen.comparable_pair();
            assert!(leq(&a, &b, OrderMethod::Envelope).unwrap());
        }
        let f = gen.normal_convex();
        let top = PwFn::singleton(&one()).unwrap();
        assert_eq!(join(&f, &top), top);
        assert_eq!(join(&f, &f), f);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = GenConfig {
            max_breakpoints: 17,
            ..GenConfig::default()
        };
        assert!(Generator::new(cfg).is_err());
    }
}
