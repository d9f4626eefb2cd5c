//! Exact linear sequences: the fundamental sequence `J_n`, its sign-twisted
//! companion `j_n`, and the auxiliary sequences `R_n`, `S_n` together with
//! their expressions in terms of `J_n`.

use num_traits::{One, Zero};

use crate::types::{Params, Rational};

/// `J_{n+4} = a J_{n+3} + b J_{n+2} + c J_{n+1} + d J_n` with
/// `J_0 = J_1 = 0, J_2 = 1, J_3 = a`, memoized and extended on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqJ {
    params: Params,
    values: Vec<Rational>,
}

impl SeqJ {
    pub fn new(params: Params) -> Self {
        let values = vec![
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
            params.a().clone(),
        ];
        Self { params, values }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Highest generated index.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn extend_to(&mut self, n_max: usize) {
        let p = &self.params;
        while self.values.len() <= n_max {
            let n = self.values.len() - 4;
            let v = &self.values;
            let next =
                p.a() * &v[n + 3] + p.b() * &v[n + 2] + p.c() * &v[n + 1] + p.d() * &v[n];
            self.values.push(next);
        }
    }

    /// `J_n`; panics outside the generated range.
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl std::ops::Index<usize> for SeqJ {
    type Output = Rational;

    fn index(&self, n: usize) -> &Rational {
        &self.values[n]
    }
}

/// `J_0..=J_{n_max}` (at least through `J_3`).
pub fn j_seq(params: &Params, n_max: usize) -> SeqJ {
    let mut seq = SeqJ::new(params.clone());
    seq.extend_to(n_max);
    seq
}

/// `(−1)^n J_n`.
pub fn j_twisted(n: usize, seq: &SeqJ) -> Rational {
    let v = seq[n].clone();
    if n.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Checks `j_{n+4} = −a j_{n+3} + b j_{n+2} − c j_{n+1} + d j_n` and the
/// initial values `0, 0, 1, −a` for the twisted sequence over the whole
/// generated range. Returns the first index that breaks, if any.
pub fn j_twisted_recurrence_violation(seq: &SeqJ) -> Option<usize> {
    let p = seq.params();
    let j = |n| j_twisted(n, seq);
    let initial = [Rational::zero(), Rational::zero(), Rational::one(), -p.a()];
    if let Some(n) = (0..4).find(|&n| j(n) != initial[n]) {
        return Some(n);
    }
    (0..=seq.max_index().saturating_sub(4)).find_map(|n| {
        let rhs = -(p.a() * j(n + 3)) + p.b() * j(n + 2) - p.c() * j(n + 1) + p.d() * j(n);
        (j(n + 4) != rhs).then_some(n + 4)
    })
}

/// The two auxiliary sequences of the linearized system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aux {
    R,
    S,
}

/// `R_n` and `S_n` from their initial values at indices −3..=0, by iteration of
/// `R_{n+1} = a R_n + b R_{n−1} + c R_{n−2} + d R_{n−3}` and
/// `S_{n+1} = −a S_n + b S_{n−1} − c S_{n−2} + d S_{n−3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqRS {
    params: Params,
    r_values: Vec<Rational>,
    s_values: Vec<Rational>,
}

impl SeqRS {
    pub fn new(params: Params, r_init: [Rational; 4], s_init: [Rational; 4]) -> Self {
        Self {
            params,
            r_values: r_init.to_vec(),
            s_values: s_init.to_vec(),
        }
    }

    pub fn extend_to(&mut self, n_max: usize) {
        let p = &self.params;
        while self.r_values.len() < n_max + 4 {
            // next index is n + 1 where slot k holds index k − 3
            let k = self.r_values.len();
            let r = &self.r_values;
            let s = &self.s_values;
            let next_r = p.a() * &r[k - 1] + p.b() * &r[k - 2] + p.c() * &r[k - 3] + p.d() * &r[k - 4];
            let next_s =
                -(p.a() * &s[k - 1]) + p.b() * &s[k - 2] - p.c() * &s[k - 3] + p.d() * &s[k - 4];
            self.r_values.push(next_r);
            self.s_values.push(next_s);
        }
    }

    /// `R_n` for `n ≥ −3`.
    pub fn r(&self, n: isize) -> &Rational {
        &self.r_values[(n + 3) as usize]
    }

    /// `S_n` for `n ≥ −3`.
    pub fn s(&self, n: isize) -> &Rational {
        &self.s_values[(n + 3) as usize]
    }

    pub fn max_index(&self) -> usize {
        self.r_values.len() - 4
    }
}

/// `R_n = d J_{n+1} R_{−3} + (c J_{n+1} + d J_n) R_{−2} + (J_{n+3} − a J_{n+2}) R_{−1} + J_{n+2} R_0`.
pub fn r_closed_form(params: &Params, r_init: &[Rational; 4], n: usize, seq: &SeqJ) -> Rational {
    let [r_m3, r_m2, r_m1, r_0] = r_init;
    let (a, c, d) = (params.a(), params.c(), params.d());
    d * &seq[n + 1] * r_m3
        + (c * &seq[n + 1] + d * &seq[n]) * r_m2
        + (&seq[n + 3] - a * &seq[n + 2]) * r_m1
        + &seq[n + 2] * r_0
}

/// `S_n = (−1)^{n+1} [d J_{n+1} S_{−3} − (c J_{n+1} + d J_n) S_{−2} + (J_{n+3} − a J_{n+2}) S_{−1} − J_{n+2} S_0]`.
pub fn s_closed_form(params: &Params, s_init: &[Rational; 4], n: usize, seq: &SeqJ) -> Rational {
    let [s_m3, s_m2, s_m1, s_0] = s_init;
    let (a, c, d) = (params.a(), params.c(), params.d());
    let bracket = d * &seq[n + 1] * s_m3 - (c * &seq[n + 1] + d * &seq[n]) * s_m2
        + (&seq[n + 3] - a * &seq[n + 2]) * s_m1
        - &seq[n + 2] * s_0;
    if n % 2 == 1 {
        bracket
    } else {
        -bracket
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaMismatch {
    pub index: usize,
    pub sequence: Aux,
}

/// Iterates `R` and `S` by their recurrences and compares every term with the
/// `J`-based expressions for `0 ≤ n ≤ n_max`. Returns the first exact
/// disagreement (R checked before S at the same index).
pub fn lemma_consistency_check(
    params: &Params,
    r_init: &[Rational; 4],
    s_init: &[Rational; 4],
    n_max: usize,
) -> Option<LemmaMismatch> {
    let seq = j_seq(params, n_max + 3);
    let mut rs = SeqRS::new(params.clone(), r_init.clone(), s_init.clone());
    rs.extend_to(n_max);
    (0..=n_max).find_map(|n| {
        if *rs.r(n as isize) != r_closed_form(params, r_init, n, &seq) {
            Some(LemmaMismatch { index: n, sequence: Aux::R })
        } else if *rs.s(n as isize) != s_closed_form(params, s_init, n, &seq) {
            Some(LemmaMismatch { index: n, sequence: Aux::S })
        } else {
            None
        }
    })
}
