//! Randomized comparison campaigns: closed form against the iteration oracle
//! on small-integer instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle::compare;
use crate::types::{rat, Equation, InitialState, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignConfig {
    pub trials: usize,
    pub seed: u64,
    pub horizon: usize,
    /// Integer entries are drawn from `[−coeff_range, coeff_range]`.
    pub coeff_range: i64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            trials: 500,
            seed: 0,
            horizon: 40,
            coeff_range: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub trial: usize,
    pub params: [String; 4],
    pub init: [String; 6],
    /// First index whose values differ, or the oracle cutoff index when only
    /// the cutoffs disagree.
    pub index: Option<usize>,
    pub track: Option<Equation>,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub trials: usize,
    pub agreements: usize,
    /// Instances whose orbit leaves the domain within the horizon.
    pub cutoffs: usize,
    pub cutoff_agreements: usize,
    pub seed: u64,
    pub horizon: usize,
    pub coeff_range: i64,
    pub first_divergence: Option<Divergence>,
}

impl CampaignSummary {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.trials
    }
}

fn nonzero(rng: &mut impl Rng, range: i64) -> i64 {
    loop {
        let v = rng.gen_range(-range..=range);
        if v != 0 {
            return v;
        }
    }
}

/// Integer parameters in `[−range, range]` with `d ≠ 0`, and nonzero integer
/// initial values in the same range.
pub fn random_instance(rng: &mut impl Rng, range: i64) -> (Params, InitialState) {
    let a = rng.gen_range(-range..=range);
    let b = rng.gen_range(-range..=range);
    let c = rng.gen_range(-range..=range);
    let d = nonzero(rng, range);
    let params = Params::from_ints(a, b, c, d).expect("d is nonzero");
    let vals: [i64; 6] = std::array::from_fn(|_| nonzero(rng, range));
    let init = InitialState::new(
        rat(vals[0]),
        rat(vals[1]),
        rat(vals[2]),
        rat(vals[3]),
        rat(vals[4]),
        rat(vals[5]),
    )
    .expect("values are nonzero");
    (params, init)
}

pub fn run_campaign(config: &CampaignConfig) -> CampaignSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let range = config.coeff_range.max(1);
    let mut summary = CampaignSummary {
        trials: config.trials,
        agreements: 0,
        cutoffs: 0,
        cutoff_agreements: 0,
        seed: config.seed,
        horizon: config.horizon,
        coeff_range: range,
        first_divergence: None,
    };

    for trial in 0..config.trials {
        let (params, init) = random_instance(&mut rng, range);
        let report = compare(&params, &init, config.horizon);
        let cmp = report.comparison.as_ref().expect("compare fills the comparison");
        if report.status.cutoff_index().is_some() {
            summary.cutoffs += 1;
            if cmp.cutoff_agrees {
                summary.cutoff_agreements += 1;
            }
        }
        if cmp.agrees() {
            summary.agreements += 1;
            continue;
        }
        if summary.first_divergence.is_none() {
            let (index, track, reason) = match cmp.first_divergence() {
                Some(e) => (Some(e.n), Some(e.track), "value mismatch"),
                None => (report.status.cutoff_index(), None, "cutoff mismatch"),
            };
            summary.first_divergence = Some(Divergence {
                trial,
                params: [params.a(), params.b(), params.c(), params.d()].map(|v| v.to_string()),
                init: {
                    let [x0, x1, x2] = init.x();
                    let [y0, y1, y2] = init.y();
                    [x0, x1, x2, y0, y1, y2].map(|v| v.to_string())
                },
                index,
                track,
                reason,
            });
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_respect_the_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (p, init) = random_instance(&mut rng, 2);
            assert!(!num_traits::Zero::is_zero(p.d()));
            for v in init.x().iter().chain(init.y()) {
                assert!(*v != rat(0) && *v >= rat(-2) && *v <= rat(2));
            }
        }
    }

    #[test]
    fn small_campaign_is_deterministic_and_green() {
        let cfg = CampaignConfig { trials: 30, seed: 11, horizon: 15, coeff_range: 3 };
        let first = run_campaign(&cfg);
        assert!(first.all_agree(), "{first:?}");
        assert_eq!(first, run_campaign(&cfg));
    }
}
