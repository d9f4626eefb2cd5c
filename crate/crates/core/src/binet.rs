//! Binet-type closed forms for `J_n`, one per root-multiplicity case.
//!
//! Every case is evaluated in complex arithmetic and dispatched on the
//! [`CaseTag`] of the classification; the exact recurrence stays the
//! reference the formulas are measured against.

use num_complex::Complex64;

use crate::quartic::{solve_characteristic, CaseTag, RootClassification};
use crate::sequences::SeqJ;
use crate::types::{to_f64, Params, SolverError};

#[derive(Debug, Clone)]
pub struct BinetEvaluator {
    classification: RootClassification,
    params: Params,
    case_tag: CaseTag,
}

impl BinetEvaluator {
    pub fn new(params: &Params) -> Result<Self, SolverError> {
        let classification = solve_characteristic(params)?;
        Ok(Self::from_classification(params.clone(), classification))
    }

    pub fn from_classification(params: Params, classification: RootClassification) -> Self {
        let case_tag = classification.case_tag;
        Self {
            classification,
            params,
            case_tag,
        }
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case_tag
    }

    pub fn classification(&self) -> &RootClassification {
        &self.classification
    }

    pub fn params(&self) -> &Params {
        &self.params
    }
}

/// `z^n` by repeated squaring.
fn powu(z: Complex64, mut n: usize) -> Complex64 {
    let mut base = z;
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Weights for four simple roots, shared by the all-distinct cases
/// (all real; two real and a conjugate pair; two conjugate pairs).
fn simple_roots(al: Complex64, be: Complex64, ga: Complex64, de: Complex64, n: usize) -> Complex64 {
    -al / ((de - al) * (ga - al) * (be - al)) * powu(al, n)
        + be / ((de - be) * (ga - be) * (be - al)) * powu(be, n)
        - ga / ((de - ga) * (ga - be) * (ga - al)) * powu(ga, n)
        + de / ((de - ga) * (de - be) * (de - al)) * powu(de, n)
}

/// The case formula for `J_n`. The imaginary part is returned for
/// diagnostics; for real parameters it is rounding noise.
pub fn binet_eval(ev: &BinetEvaluator, n: usize) -> Result<Complex64, SolverError> {
    let [al, be, ga, de] = ev.classification.labeled();
    let nf = n as f64;
    let value = match ev.case_tag {
        CaseTag::C1 => (nf * nf * nf - nf) / (6.0 * al * al) * powu(al, n),
        CaseTag::C2 => {
            let diff = be - al;
            -al / (diff * diff * diff) * powu(al, n)
                + (al / (diff * diff * diff) - nf * (al + be) / (2.0 * be * diff * diff)
                    + nf * nf / (2.0 * be * diff))
                    * powu(be, n)
        }
        CaseTag::C3 => {
            let (ga_al, ga_be) = (ga - al, ga - be);
            -al / (ga_al * ga_al * (be - al)) * powu(al, n)
                + be / (ga_be * ga_be * (be - al)) * powu(be, n)
                + ((al * be - ga * ga) / (ga_al * ga_al * ga_be * ga_be) + nf / (ga_al * ga_be))
                    * powu(ga, n)
        }
        CaseTag::C4 => {
            let diff = ga - al;
            let k = (ga + al) / (diff * diff * diff);
            let lin = nf / (diff * diff);
            (k + lin) * powu(al, n) + (-k + lin) * powu(ga, n)
        }
        CaseTag::C5 | CaseTag::C7 | CaseTag::C9 => simple_roots(al, be, ga, de, n),
        CaseTag::C6 => {
            let gb = de;
            ((gb * ga - al * al) / ((gb - al) * (gb - al) * (ga - al) * (ga - al))
                + nf / ((gb - al) * (ga - al)))
                * powu(al, n)
                - ga / ((gb - ga) * (ga - al) * (ga - al)) * powu(ga, n)
                + gb / ((gb - ga) * (gb - al) * (gb - al)) * powu(gb, n)
        }
        CaseTag::C8 => {
            let ab = be;
            let diff = ab - al;
            let k = (ab + al) / (diff * diff * diff);
            let lin = nf / (diff * diff);
            (k + lin) * powu(al, n) + (-k + lin) * powu(ab, n)
        }
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(SolverError::NonFiniteNumeric)
    }
}

/// `max_{n ≤ n_max} |Re binet(n) − J_n| / max(1, |J_n|)`.
pub fn binet_vs_recurrence(ev: &BinetEvaluator, seq: &SeqJ, n_max: usize) -> Result<f64, SolverError> {
    (0..=n_max).try_fold(0.0f64, |worst, n| {
        let exact = to_f64(&seq[n]);
        if !exact.is_finite() {
            return Err(SolverError::NonFiniteNumeric);
        }
        let approx = binet_eval(ev, n)?.re;
        Ok(worst.max((approx - exact).abs() / exact.abs().max(1.0)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::j_seq;

    fn evaluator(a: i64, b: i64, c: i64, d: i64) -> (BinetEvaluator, Params) {
        let p = Params::from_ints(a, b, c, d).unwrap();
        (BinetEvaluator::new(&p).unwrap(), p)
    }

    #[test]
    fn pow_by_squaring() {
        let z = Complex64::new(0.5, 1.5);
        assert!((powu(z, 13) - z.powu(13)).norm() < 1e-12);
        assert_eq!(powu(z, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn quadruple_root_value() {
        let (ev, _) = evaluator(4, -6, 4, -1);
        assert_eq!(ev.case_tag(), CaseTag::C1);
        let v = binet_eval(&ev, 4).unwrap();
        assert!((v.re - 10.0).abs() < 1e-12);
    }

    #[test]
    fn tetranacci_seventh_term() {
        let ev = BinetEvaluator::new(&Params::tetranacci()).unwrap();
        assert_eq!(ev.case_tag(), CaseTag::C7);
        let v = binet_eval(&ev, 7).unwrap();
        assert!((v.re - 15.0).abs() < 1e-9);
        assert!(v.im.abs() < 1e-8 * (1.0 + v.re.abs()));
    }

    #[test]
    fn initial_terms_reproduced() {
        for (a, b, c, d) in [(4, -6, 4, -1), (10, -35, 50, -24), (6, -13, 12, -4), (1, 1, 1, 1)] {
            let (ev, _) = evaluator(a, b, c, d);
            let want = [0.0, 0.0, 1.0, a as f64];
            for (n, w) in want.iter().enumerate() {
                assert!((binet_eval(&ev, n).unwrap().re - w).abs() < 1e-9, "case {}", ev.case_tag());
            }
        }
    }

    #[test]
    fn recurrence_agreement_for_integer_root_cases() {
        for ((a, b, c, d), n_max, tag) in [
            ((10, -35, 50, -24), 20, CaseTag::C5),
            ((4, -6, 4, -1), 30, CaseTag::C1),
            ((6, -13, 12, -4), 20, CaseTag::C4),
        ] {
            let (ev, p) = evaluator(a, b, c, d);
            assert_eq!(ev.case_tag(), tag);
            let err = binet_vs_recurrence(&ev, &j_seq(&p, n_max), n_max).unwrap();
            assert!(err <= 1e-9, "{tag}: {err}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let (ev, p) = evaluator(1000, 0, 0, 1);
        assert_eq!(binet_eval(&ev, 200), Err(SolverError::NonFiniteNumeric));
        assert_eq!(
            binet_vs_recurrence(&ev, &j_seq(&p, 200), 200),
            Err(SolverError::NonFiniteNumeric)
        );
    }
}
