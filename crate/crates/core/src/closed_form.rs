//! Closed-form solution of the system in terms of the fundamental sequence,
//! the forbidden-set sequences `A_n`, `B_n`, and the single-equation and
//! Tetranacci specializations.
//!
//! With the weights
//! `W_m(p1, p2, p3) = d J_{m+1} + (c J_{m+1} + d J_m) p1 + (J_{m+3} − a J_{m+2}) p2 + J_{m+2} p3`
//! we have `A_m = W_m(y_{−2}, x_{−1} y_{−2}, y_0 x_{−1} y_{−2})` and
//! `B_m = W_m(x_{−2}, y_{−1} x_{−2}, x_0 y_{−1} x_{−2})`, and
//!
//! ```text
//! x_{2n+1} = A_{2n+1} / A_{2n}      x_{2n+2} = B_{2n+2} / B_{2n+1}
//! y_{2n+1} = B_{2n+1} / B_{2n}      y_{2n+2} = A_{2n+2} / A_{2n+1}
//! ```

use num_traits::Zero;

use crate::oracle::{compare_against, iterate_system, Status, TrajectoryReport};
use crate::sequences::{j_seq, SeqJ};
use crate::types::{Equation, InitialState, Letter, Params, Rational, SolverError};

/// `W_m(p1, p2, p3)`; needs `J` through `m + 3`.
pub(crate) fn j_weights(params: &Params, seq: &SeqJ, m: usize, p: [&Rational; 3]) -> Rational {
    let (a, c, d) = (params.a(), params.c(), params.d());
    d * &seq[m + 1]
        + (c * &seq[m + 1] + d * &seq[m]) * p[0]
        + (&seq[m + 3] - a * &seq[m + 2]) * p[1]
        + &seq[m + 2] * p[2]
}

/// The monomials `(y_{−2}, x_{−1} y_{−2}, y_0 x_{−1} y_{−2})` feeding `A_n`.
pub fn a_monomials(init: &InitialState) -> [Rational; 3] {
    let [_, x_m1, _] = init.x();
    let [y_m2, _, y_0] = init.y();
    let p2 = x_m1 * y_m2;
    let p3 = y_0 * &p2;
    [y_m2.clone(), p2, p3]
}

/// The monomials `(x_{−2}, y_{−1} x_{−2}, x_0 y_{−1} x_{−2})` feeding `B_n`.
pub fn b_monomials(init: &InitialState) -> [Rational; 3] {
    let [x_m2, _, x_0] = init.x();
    let [_, y_m1, _] = init.y();
    let p2 = y_m1 * x_m2;
    let p3 = x_0 * &p2;
    [x_m2.clone(), p2, p3]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenHit {
    pub n: usize,
    pub which: Letter,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenReport {
    pub hits: Vec<ForbiddenHit>,
    pub a_values: Vec<Rational>,
    pub b_values: Vec<Rational>,
}

impl ForbiddenReport {
    /// Smallest index hit, `A` before `B` at equal index.
    pub fn first_hit(&self) -> Option<&ForbiddenHit> {
        self.hits.first()
    }

    /// Where the orbit stops because of the first hit: a zero `A_m` or `B_m`
    /// is the denominator of index `m + 1`.
    pub fn cutoff(&self) -> Option<(usize, Equation)> {
        let hit = self.first_hit()?;
        let m = hit.n;
        let x_letter = x_denominator_letter(m + 1);
        let x_fails = match x_letter {
            Letter::A => self.a_values[m].is_zero(),
            Letter::B => self.b_values[m].is_zero(),
        };
        Some((m + 1, if x_fails { Equation::X } else { Equation::Y }))
    }
}

/// `x_k` divides by `A_{k−1}` at odd `k` and by `B_{k−1}` at even `k`.
fn x_denominator_letter(k: usize) -> Letter {
    if k % 2 == 1 {
        Letter::A
    } else {
        Letter::B
    }
}

fn scan(params: &Params, init: &InitialState, seq: &SeqJ, n_max: usize) -> ForbiddenReport {
    let am = a_monomials(init);
    let bm = b_monomials(init);
    let a_values: Vec<Rational> = (0..=n_max)
        .map(|m| j_weights(params, seq, m, [&am[0], &am[1], &am[2]]))
        .collect();
    let b_values: Vec<Rational> = (0..=n_max)
        .map(|m| j_weights(params, seq, m, [&bm[0], &bm[1], &bm[2]]))
        .collect();
    let mut hits = Vec::new();
    for m in 0..=n_max {
        for (which, v) in [(Letter::A, &a_values[m]), (Letter::B, &b_values[m])] {
            if v.is_zero() {
                hits.push(ForbiddenHit { n: m, which, value: v.clone() });
            }
        }
    }
    ForbiddenReport { hits, a_values, b_values }
}

/// `A_n` and `B_n` for `0 ≤ n ≤ n_max`, with every exact zero recorded.
pub fn forbidden_scan(params: &Params, init: &InitialState, n_max: usize) -> ForbiddenReport {
    let seq = j_seq(params, n_max + 3);
    scan(params, init, &seq, n_max)
}

/// Closed-form values for one `(params, init)`, valid for indices up to
/// `2·horizon + 2`.
#[derive(Debug, Clone)]
pub struct ClosedFormSolution {
    params: Params,
    init: InitialState,
    seq: SeqJ,
    horizon: usize,
    forbidden: ForbiddenReport,
}

impl ClosedFormSolution {
    /// `horizon` counts pairs of indices: the solution covers
    /// `x_{2n+1}, x_{2n+2}` (and the y-values) for `0 ≤ n ≤ horizon`.
    pub fn new(params: Params, init: InitialState, horizon: usize) -> Self {
        let seq = j_seq(&params, 2 * horizon + 5);
        let forbidden = scan(&params, &init, &seq, 2 * horizon + 2);
        Self {
            params,
            init,
            seq,
            horizon,
            forbidden,
        }
    }

    /// Smallest solution covering indices through `max_index`.
    pub fn for_max_index(params: Params, init: InitialState, max_index: usize) -> Self {
        Self::new(params, init, max_index.saturating_sub(1) / 2)
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn init(&self) -> &InitialState {
        &self.init
    }

    pub fn seq(&self) -> &SeqJ {
        &self.seq
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn max_index(&self) -> usize {
        2 * self.horizon + 2
    }

    pub fn forbidden(&self) -> &ForbiddenReport {
        &self.forbidden
    }

    pub fn a(&self, m: usize) -> &Rational {
        &self.forbidden.a_values[m]
    }

    pub fn b(&self, m: usize) -> &Rational {
        &self.forbidden.b_values[m]
    }

    /// Orbit status through index `horizon` (clamped to the covered range).
    pub fn status(&self, horizon: usize) -> Status {
        match self.forbidden.cutoff() {
            Some((index, equation)) if index <= horizon.min(self.max_index()) => {
                Status::CutoffAtStep { index, equation }
            }
            _ => Status::Complete,
        }
    }

    fn check_index(&self, n: isize) -> Result<usize, SolverError> {
        let max = self.max_index();
        if n < -2 || n > max as isize {
            return Err(SolverError::IndexOutOfRange {
                index: n as i64,
                max: max as i64,
            });
        }
        // any zero among A_m, B_m with m < n ends the orbit before index n
        if n >= 1 {
            if let Some(hit) = self.forbidden.first_hit().filter(|h| (h.n as isize) < n) {
                return Err(SolverError::ForbiddenSetHit {
                    index: hit.n,
                    which: hit.which,
                });
            }
        }
        Ok(n.max(0) as usize)
    }

    fn ratio(&self, letter: Letter, k: usize) -> Rational {
        let values = match letter {
            Letter::A => &self.forbidden.a_values,
            Letter::B => &self.forbidden.b_values,
        };
        &values[k] / &values[k - 1]
    }

    /// `x_n` for `−2 ≤ n ≤ 2·horizon + 2`; the three initial values are
    /// echoed, later ones come from the closed form.
    pub fn x_closed(&self, n: isize) -> Result<Rational, SolverError> {
        let k = self.check_index(n)?;
        if n <= 0 {
            return Ok(self.init.x()[(n + 2) as usize].clone());
        }
        Ok(self.ratio(x_denominator_letter(k), k))
    }

    /// `y_n`, the mirror of [`Self::x_closed`] with the roles of the x- and
    /// y-initial values exchanged.
    pub fn y_closed(&self, n: isize) -> Result<Rational, SolverError> {
        let k = self.check_index(n)?;
        if n <= 0 {
            return Ok(self.init.y()[(n + 2) as usize].clone());
        }
        let letter = match x_denominator_letter(k) {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        };
        Ok(self.ratio(letter, k))
    }

    /// Closed-form values for indices `−2..=max_index`, stopping before the
    /// first index the forbidden set makes undefined.
    pub fn trajectory(&self, max_index: usize) -> TrajectoryReport {
        let max_index = max_index.min(self.max_index());
        let status = self.status(max_index);
        let last = status.cutoff_index().map_or(max_index, |c| c - 1) as isize;
        let collect = |f: &dyn Fn(isize) -> Result<Rational, SolverError>| {
            (-2..=last)
                .map(|n| f(n).expect("index below the cutoff"))
                .collect::<Vec<_>>()
        };
        TrajectoryReport {
            x_values: collect(&|n| self.x_closed(n)),
            y_values: collect(&|n| self.y_closed(n)),
            status,
            horizon: max_index,
            comparison: None,
            fundamental: Some(self.seq.values().to_vec()),
        }
    }
}

/// `x_n` of the single equation obtained by mirroring the initial values.
pub fn solve_single_equation(
    params: &Params,
    x_m2: &Rational,
    x_m1: &Rational,
    x_0: &Rational,
    n: isize,
) -> Result<Rational, SolverError> {
    let init = InitialState::symmetric(x_m2.clone(), x_m1.clone(), x_0.clone())?;
    let max_index = n.max(1) as usize;
    ClosedFormSolution::for_max_index(params.clone(), init, max_index).x_closed(n)
}

/// Closed-form trajectory of the `a = b = c = d = 1` system through `n_max`,
/// annotated with the Tetranacci numbers used and checked against the oracle.
pub fn tetranacci_report(init: &InitialState, n_max: usize) -> TrajectoryReport {
    let params = Params::tetranacci();
    let solution = ClosedFormSolution::for_max_index(params.clone(), init.clone(), n_max);
    let oracle = iterate_system(&params, init, n_max);
    let mut report = solution.trajectory(n_max);
    report.comparison = Some(compare_against(&oracle, &solution));
    report
}
