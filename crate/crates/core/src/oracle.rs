//! Brute-force iteration of the nonlinear system in exact arithmetic.
//!
//! This is the ground truth every closed form is checked against, so it
//! deliberately shares no code with the closed-form path beyond the scalar
//! types.

use num_traits::Zero;
use serde::Serialize;

use crate::closed_form::ClosedFormSolution;
use crate::types::{bit_size, Equation, InitialState, Params, Rational};

/// Default cap on the number of iterated steps.
pub const DEFAULT_MAX_HORIZON: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_horizon: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_horizon: DEFAULT_MAX_HORIZON,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Complete,
    /// The value at `index` could not be formed: the named equation
    /// divides by zero there.
    CutoffAtStep { index: usize, equation: Equation },
}

impl Status {
    pub fn cutoff_index(&self) -> Option<usize> {
        match self {
            Status::Complete => None,
            Status::CutoffAtStep { index, .. } => Some(*index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonEntry {
    pub n: usize,
    pub track: Equation,
    pub closed_form: Rational,
    pub oracle: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub entries: Vec<ComparisonEntry>,
    /// Where the closed-form path stops (from the first forbidden-set zero).
    pub closed_form_status: Status,
    pub cutoff_agrees: bool,
}

impl Comparison {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }

    /// Both value agreement at every index and agreement on the cutoff.
    pub fn agrees(&self) -> bool {
        self.cutoff_agrees && self.all_equal()
    }

    pub fn first_divergence(&self) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|e| !e.equal)
    }
}

/// Values of a trajectory indexed from −2; slot `k + 2` holds index `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryReport {
    pub x_values: Vec<Rational>,
    /// Empty for a single-equation run.
    pub y_values: Vec<Rational>,
    pub status: Status,
    /// Requested horizon after applying the cap.
    pub horizon: usize,
    pub comparison: Option<Comparison>,
    /// The fundamental sequence `J_0, J_1, ...` used by a closed-form run.
    pub fundamental: Option<Vec<Rational>>,
}

impl TrajectoryReport {
    pub fn x(&self, n: isize) -> Option<&Rational> {
        usize::try_from(n + 2).ok().and_then(|i| self.x_values.get(i))
    }

    pub fn y(&self, n: isize) -> Option<&Rational> {
        usize::try_from(n + 2).ok().and_then(|i| self.y_values.get(i))
    }

    /// Largest index with a stored value.
    pub fn last_index(&self) -> isize {
        self.x_values.len() as isize - 3
    }

    /// Largest numerator or denominator bit length among stored values.
    pub fn max_bits(&self) -> u64 {
        self.x_values
            .iter()
            .chain(self.y_values.iter())
            .map(bit_size)
            .max()
            .unwrap_or(0)
    }
}

/// `(a·u·v·w + b·v·u + c·u + d) / (u·v·w)`, the shared shape of both
/// defining equations; `None` when the denominator vanishes.
fn update(params: &Params, u: &Rational, v: &Rational, w: &Rational) -> Option<Rational> {
    let uv = u * v;
    let den = &uv * w;
    if den.is_zero() {
        return None;
    }
    let num = params.a() * &den + params.b() * &uv + params.c() * u + params.d();
    Some(num / den)
}

pub fn iterate_system(params: &Params, init: &InitialState, horizon: usize) -> TrajectoryReport {
    iterate_system_with(params, init, horizon, OracleLimits::default())
}

pub fn iterate_system_with(
    params: &Params,
    init: &InitialState,
    horizon: usize,
    limits: OracleLimits,
) -> TrajectoryReport {
    let horizon = horizon.min(limits.max_horizon);
    let mut x = init.x().to_vec();
    let mut y = init.y().to_vec();
    let mut status = Status::Complete;

    for k in 1..=horizon {
        // slot i holds index i − 2, so index k − 1 sits in slot k + 1
        let n = k + 1;
        let Some(x_next) = update(params, &y[n - 2], &x[n - 1], &y[n]) else {
            status = Status::CutoffAtStep { index: k, equation: Equation::X };
            break;
        };
        let Some(y_next) = update(params, &x[n - 2], &y[n - 1], &x[n]) else {
            status = Status::CutoffAtStep { index: k, equation: Equation::Y };
            break;
        };
        x.push(x_next);
        y.push(y_next);
    }

    TrajectoryReport {
        x_values: x,
        y_values: y,
        status,
        horizon,
        comparison: None,
        fundamental: None,
    }
}

pub fn iterate_single(
    params: &Params,
    x_m2: &Rational,
    x_m1: &Rational,
    x_0: &Rational,
    horizon: usize,
) -> TrajectoryReport {
    let horizon = horizon.min(DEFAULT_MAX_HORIZON);
    let mut x = vec![x_m2.clone(), x_m1.clone(), x_0.clone()];
    let mut status = Status::Complete;
    for k in 1..=horizon {
        let n = k + 1;
        match update(params, &x[n - 2], &x[n - 1], &x[n]) {
            Some(v) => x.push(v),
            None => {
                status = Status::CutoffAtStep { index: k, equation: Equation::X };
                break;
            }
        }
    }
    TrajectoryReport {
        x_values: x,
        y_values: Vec::new(),
        status,
        horizon,
        comparison: None,
        fundamental: None,
    }
}

/// Runs the oracle and the closed form side by side. The returned report
/// carries the oracle values; `comparison` records exact per-index
/// agreement and whether both paths stop at the same index and equation.
pub fn compare(params: &Params, init: &InitialState, horizon: usize) -> TrajectoryReport {
    let mut report = iterate_system(params, init, horizon);
    let solution = ClosedFormSolution::for_max_index(params.clone(), init.clone(), report.horizon);
    report.comparison = Some(compare_against(&report, &solution));
    report
}

pub(crate) fn compare_against(oracle: &TrajectoryReport, solution: &ClosedFormSolution) -> Comparison {
    let horizon = oracle.horizon;
    let closed_form_status = solution.status(horizon);
    let mut entries = Vec::new();
    for k in 1..=horizon {
        let idx = k as isize;
        let tracks = [
            (Equation::X, oracle.x(idx), solution.x_closed(idx)),
            (Equation::Y, oracle.y(idx), solution.y_closed(idx)),
        ];
        for (track, from_oracle, from_closed) in tracks {
            if let (Some(o), Ok(c)) = (from_oracle, from_closed) {
                entries.push(ComparisonEntry {
                    n: k,
                    track,
                    equal: *o == c,
                    closed_form: c,
                    oracle: o.clone(),
                });
            }
        }
    }
    Comparison {
        entries,
        cutoff_agrees: closed_form_status == oracle.status,
        closed_form_status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{frac, rat};

    fn ones() -> InitialState {
        InitialState::from_ints([1, 1, 1], [1, 1, 1]).unwrap()
    }

    fn witness() -> InitialState {
        // y_-2 = x_-1 = 1, y_0 = -3, rest 1
        InitialState::from_ints([1, 1, 1], [1, 1, -3]).unwrap()
    }

    #[test]
    fn all_ones_tetranacci() {
        let r = iterate_system(&Params::tetranacci(), &ones(), 20);
        assert_eq!(r.x(1), Some(&rat(4)));
        assert_eq!(r.y(1), Some(&rat(4)));
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.last_index(), 20);
        // x_2 = (1·1·1·4 + 1·1 + 1 + 1)/4 = 7/4
        assert_eq!(r.x(2), Some(&frac(7, 4)));
    }

    #[test]
    fn forbidden_witness_cuts_off_at_y() {
        let r = iterate_system(&Params::tetranacci(), &witness(), 20);
        assert_eq!(r.x(1), Some(&rat(0)));
        assert_eq!(
            r.status,
            Status::CutoffAtStep { index: 2, equation: Equation::Y }
        );
        assert_eq!(r.last_index(), 1);
    }

    #[test]
    fn symmetric_init_gives_equal_tracks() {
        let init = InitialState::from_ints([2, -1, 3], [2, -1, 3]).unwrap();
        let r = iterate_system(&Params::from_ints(1, -2, 3, 1).unwrap(), &init, 15);
        assert_eq!(r.x_values, r.y_values);
    }

    #[test]
    fn single_equation_examples() {
        let r = iterate_single(&Params::tetranacci(), &rat(1), &rat(1), &rat(1), 5);
        assert_eq!(r.x(1), Some(&rat(4)));
        let p = Params::from_ints(2, 3, 5, 7).unwrap();
        let r = iterate_single(&p, &rat(1), &rat(2), &rat(3), 5);
        assert_eq!(r.x(1), Some(&rat(5)));
        assert!(r.y_values.is_empty());
    }

    #[test]
    fn single_matches_symmetric_system() {
        let p = Params::from_ints(-2, 3, 1, 4).unwrap();
        let single = iterate_single(&p, &rat(3), &rat(-1), &frac(1, 2), 25);
        let init = InitialState::symmetric(rat(3), rat(-1), frac(1, 2)).unwrap();
        let system = iterate_system(&p, &init, 25);
        assert_eq!(single.x_values, system.x_values);
        assert_eq!(single.status, system.status);
    }

    #[test]
    fn horizon_is_capped() {
        let limits = OracleLimits { max_horizon: 7 };
        let r = iterate_system_with(&Params::tetranacci(), &ones(), 50, limits);
        assert_eq!(r.horizon, 7);
        assert_eq!(r.last_index(), 7);
        assert!(r.max_bits() > 0);
    }

    #[test]
    fn compare_examples() {
        let r = compare(&Params::tetranacci(), &ones(), 40);
        let cmp = r.comparison.as_ref().unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.entries.len(), 80);

        let r = compare(&Params::tetranacci(), &witness(), 40);
        let cmp = r.comparison.unwrap();
        assert!(cmp.agrees());
        assert_eq!(cmp.closed_form_status, r.status);
        assert_eq!(r.status.cutoff_index(), Some(2));
    }
}
