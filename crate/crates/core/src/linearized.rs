//! The linear layer behind the closed form: the substitution
//! `x_n = u_n / v_{n−1}`, `y_n = v_n / u_{n−1}` turns the system into
//!
//! ```text
//! u_{n+1} = a v_n + b u_{n−1} + c v_{n−2} + d u_{n−3}
//! v_{n+1} = a u_n + b v_{n−1} + c u_{n−2} + d v_{n−3}
//! ```
//!
//! which decouples through `R = u + v`, `S = u − v`. The pair `(u, v)` is only
//! fixed up to the choice of `u_{−3}` and `v_{−3}` (the gauge); every
//! ratio-level output must be independent of it.

use num_traits::Zero;

use crate::closed_form::j_weights;
use crate::sequences::{j_seq, SeqJ};
use crate::types::{frac, Equation, InitialState, Params, Rational, SolverError};

/// Values chosen for `u_{−3}` and `v_{−3}`; both nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    u_m3: Rational,
    v_m3: Rational,
}

impl Gauge {
    pub fn new(u_m3: Rational, v_m3: Rational) -> Result<Self, SolverError> {
        if u_m3.is_zero() {
            return Err(SolverError::ZeroInitialValue("u_-3"));
        }
        if v_m3.is_zero() {
            return Err(SolverError::ZeroInitialValue("v_-3"));
        }
        Ok(Self { u_m3, v_m3 })
    }

    /// `u_{−3} = v_{−3} = 1`.
    pub fn unit() -> Self {
        Self::new(frac(1, 1), frac(1, 1)).expect("nonzero")
    }
}

#[derive(Debug, Clone)]
pub struct LinearizedSolution {
    params: Params,
    seq: SeqJ,
    /// `u_{−3..=0}` and `v_{−3..=0}`
    u_init: [Rational; 4],
    v_init: [Rational; 4],
    r_init: [Rational; 4],
    s_init: [Rational; 4],
    u: Vec<Rational>,
    v: Vec<Rational>,
}

impl LinearizedSolution {
    /// Builds `u, v` from the initial values by propagating the gauge
    /// (`u_{−2} = x_{−2} v_{−3}`, `v_{−2} = y_{−2} u_{−3}`, and so on) and
    /// evaluates them through `max_index` with the `J`-based formulas.
    pub fn new(params: &Params, init: &InitialState, gauge: &Gauge, max_index: usize) -> Self {
        let [x_m2, x_m1, x_0] = init.x();
        let [y_m2, y_m1, y_0] = init.y();
        let u_m3 = gauge.u_m3.clone();
        let v_m3 = gauge.v_m3.clone();
        let u_m2 = x_m2 * &v_m3;
        let v_m2 = y_m2 * &u_m3;
        let u_m1 = x_m1 * &v_m2;
        let v_m1 = y_m1 * &u_m2;
        let u_0 = x_0 * &v_m1;
        let v_0 = y_0 * &u_m1;
        let u_init = [u_m3, u_m2, u_m1, u_0];
        let v_init = [v_m3, v_m2, v_m1, v_0];
        let r_init: [Rational; 4] = std::array::from_fn(|i| &u_init[i] + &v_init[i]);
        let s_init: [Rational; 4] = std::array::from_fn(|i| &u_init[i] - &v_init[i]);

        let seq = j_seq(params, max_index + 3);
        let mut out = Self {
            params: params.clone(),
            seq,
            u_init,
            v_init,
            r_init,
            s_init,
            u: Vec::new(),
            v: Vec::new(),
        };
        // the two sign patterns of (R ± S) that appear in u_m, v_m
        let plus = out.pattern(true);
        let minus = out.pattern(false);
        for m in 0..=max_index {
            // u at odd m and v at even m use (R+S, R−S, R+S, R−S)
            let (pu, pv) = if m % 2 == 1 { (&plus, &minus) } else { (&minus, &plus) };
            let half = frac(1, 2);
            let u_m = &half * out.weighted(m, pu);
            let v_m = &half * out.weighted(m, pv);
            out.u.push(u_m);
            out.v.push(v_m);
        }
        out
    }

    fn pattern(&self, starts_with_sum: bool) -> [Rational; 4] {
        std::array::from_fn(|i| {
            let sum = (i % 2 == 0) == starts_with_sum;
            if sum {
                &self.r_init[i] + &self.s_init[i]
            } else {
                &self.r_init[i] - &self.s_init[i]
            }
        })
    }

    fn weighted(&self, m: usize, w: &[Rational; 4]) -> Rational {
        let (a, c, d) = (self.params.a(), self.params.c(), self.params.d());
        let j = &self.seq;
        d * &j[m + 1] * &w[0]
            + (c * &j[m + 1] + d * &j[m]) * &w[1]
            + (&j[m + 3] - a * &j[m + 2]) * &w[2]
            + &j[m + 2] * &w[3]
    }

    pub fn r_init(&self) -> &[Rational; 4] {
        &self.r_init
    }

    pub fn s_init(&self) -> &[Rational; 4] {
        &self.s_init
    }

    /// `u_n` for `n ≥ −3`.
    pub fn u(&self, n: isize) -> &Rational {
        if n < 0 {
            &self.u_init[(n + 3) as usize]
        } else {
            &self.u[n as usize]
        }
    }

    /// `v_n` for `n ≥ −3`.
    pub fn v(&self, n: isize) -> &Rational {
        if n < 0 {
            &self.v_init[(n + 3) as usize]
        } else {
            &self.v[n as usize]
        }
    }

    pub fn max_index(&self) -> usize {
        self.u.len() - 1
    }

    /// `x_n = u_n / v_{n−1}` for `n ≥ −2`.
    pub fn x(&self, n: isize) -> Result<Rational, SolverError> {
        let den = self.v(n - 1);
        if den.is_zero() {
            return Err(SolverError::DivisionByZeroAtStep {
                index: n.max(0) as usize,
                equation: Equation::X,
            });
        }
        Ok(self.u(n) / den)
    }

    /// `y_n = v_n / u_{n−1}` for `n ≥ −2`.
    pub fn y(&self, n: isize) -> Result<Rational, SolverError> {
        let den = self.u(n - 1);
        if den.is_zero() {
            return Err(SolverError::DivisionByZeroAtStep {
                index: n.max(0) as usize,
                equation: Equation::Y,
            });
        }
        Ok(self.v(n) / den)
    }

    /// The ratios `((R₋₂−S₋₂), (R₋₁+S₋₁), (R₀−S₀)) / (R₋₃+S₋₃)`, which reduce
    /// to `(y_{−2}, x_{−1} y_{−2}, y_0 x_{−1} y_{−2})`.
    pub fn rho(&self) -> [Rational; 3] {
        let (r, s) = (&self.r_init, &self.s_init);
        let base = &r[0] + &s[0];
        [
            (&r[1] - &s[1]) / &base,
            (&r[2] + &s[2]) / &base,
            (&r[3] - &s[3]) / &base,
        ]
    }

    /// The ratios `((R₋₂+S₋₂), (R₋₁−S₋₁), (R₀+S₀)) / (R₋₃−S₋₃)`, which reduce
    /// to `(x_{−2}, y_{−1} x_{−2}, x_0 y_{−1} x_{−2})`.
    pub fn sigma(&self) -> [Rational; 3] {
        let (r, s) = (&self.r_init, &self.s_init);
        let base = &r[0] - &s[0];
        [
            (&r[1] + &s[1]) / &base,
            (&r[2] - &s[2]) / &base,
            (&r[3] + &s[3]) / &base,
        ]
    }

    /// `x_n` through the intermediate form written with `R`/`S` ratios
    /// rather than initial-value monomials. `None` on a zero denominator.
    pub fn x_intermediate(&self, n: usize) -> Option<Rational> {
        let ratios = if n % 2 == 1 { self.rho() } else { self.sigma() };
        self.intermediate(n, &ratios)
    }

    /// `y_n` through the intermediate `R`/`S` form.
    pub fn y_intermediate(&self, n: usize) -> Option<Rational> {
        let ratios = if n % 2 == 1 { self.sigma() } else { self.rho() };
        self.intermediate(n, &ratios)
    }

    fn intermediate(&self, n: usize, p: &[Rational; 3]) -> Option<Rational> {
        assert!(n >= 1 && n <= self.max_index(), "index {n} outside 1..={}", self.max_index());
        let refs = [&p[0], &p[1], &p[2]];
        let den = j_weights(&self.params, &self.seq, n - 1, refs);
        if den.is_zero() {
            return None;
        }
        Some(j_weights(&self.params, &self.seq, n, refs) / den)
    }
}
