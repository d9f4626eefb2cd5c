use num_complex::Complex64;
use proptest::prelude::*;

use tetrasolve::types::frac;
use tetrasolve::{
    binet_vs_recurrence, compare, j_seq, solve_characteristic, BinetEvaluator, CaseTag, Gauge,
    InitialState, LinearizedSolution, Params, Rational,
};

/// A factor of the characteristic polynomial: a real root `r` or the
/// conjugate pair `p ± q i`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Factor {
    Real(i64),
    Pair(i64, i64),
}

impl Factor {
    fn coeffs(self) -> Vec<i64> {
        match self {
            Factor::Real(r) => vec![-r, 1],
            Factor::Pair(p, q) => vec![p * p + q * q, -2 * p, 1],
        }
    }

    fn roots(self) -> Vec<Complex64> {
        match self {
            Factor::Real(r) => vec![Complex64::new(r as f64, 0.0)],
            Factor::Pair(p, q) => vec![Complex64::new(p as f64, q as f64), Complex64::new(p as f64, -q as f64)],
        }
    }
}

fn params_from(factors: &[(Factor, usize)]) -> Params {
    let mut poly = vec![1i64];
    for &(f, m) in factors {
        for _ in 0..m {
            let c = f.coeffs();
            let mut out = vec![0; poly.len() + c.len() - 1];
            for (i, x) in poly.iter().enumerate() {
                for (j, y) in c.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            poly = out;
        }
    }
    Params::from_ints(-poly[3], -poly[2], -poly[1], -poly[0]).unwrap()
}

fn real_root() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..=-1, 1i64..=5]
}

fn pair() -> impl Strategy<Value = Factor> {
    (-3i64..=3, 1i64..=4)
        .prop_filter("modulus at most 5", |(p, q)| p * p + q * q <= 25)
        .prop_map(|(p, q)| Factor::Pair(p, q))
}

fn distinct_reals(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(real_root(), n).prop_filter("distinct", |v| {
        let mut s = v.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == v.len()
    })
}

/// One of the nine multiplicity shapes with its expected case.
fn shaped() -> impl Strategy<Value = (CaseTag, Vec<(Factor, usize)>)> {
    use Factor::Real;
    prop_oneof![
        distinct_reals(1).prop_map(|r| (CaseTag::C1, vec![(Real(r[0]), 4)])),
        distinct_reals(2).prop_map(|r| (CaseTag::C2, vec![(Real(r[0]), 1), (Real(r[1]), 3)])),
        distinct_reals(3)
            .prop_map(|r| (CaseTag::C3, vec![(Real(r[0]), 1), (Real(r[1]), 1), (Real(r[2]), 2)])),
        distinct_reals(2).prop_map(|r| (CaseTag::C4, vec![(Real(r[0]), 2), (Real(r[1]), 2)])),
        distinct_reals(4).prop_map(|r| (CaseTag::C5, r.into_iter().map(|x| (Real(x), 1)).collect())),
        (distinct_reals(1), pair()).prop_map(|(r, p)| (CaseTag::C6, vec![(Real(r[0]), 2), (p, 1)])),
        (distinct_reals(2), pair())
            .prop_map(|(r, p)| (CaseTag::C7, vec![(Real(r[0]), 1), (Real(r[1]), 1), (p, 1)])),
        pair().prop_map(|p| (CaseTag::C8, vec![(p, 2)])),
        (pair(), pair())
            .prop_filter("distinct pairs", |(p, q)| p != q)
            .prop_map(|(p, q)| (CaseTag::C9, vec![(p, 1), (q, 1)])),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn params() -> impl Strategy<Value = Params> {
    (small_rational(), small_rational(), small_rational(), nonzero_rational())
        .prop_map(|(a, b, c, d)| Params::new(a, b, c, d).unwrap())
}

fn init() -> impl Strategy<Value = InitialState> {
    prop::array::uniform6(nonzero_rational()).prop_map(|[a, b, c, d, e, f]| InitialState::new(a, b, c, d, e, f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn roots_round_trip_for_every_shape((tag, factors) in shaped()) {
        let p = params_from(&factors);
        let rc = solve_characteristic(&p).unwrap();
        prop_assert_eq!(rc.case_tag, tag);
        for &(f, m) in &factors {
            for want in f.roots() {
                let found = rc.roots.iter().find(|(z, _)| (z - want).norm() <= 1e-7);
                prop_assert!(found.is_some(), "root {} missing from {:?}", want, rc.roots);
                prop_assert_eq!(found.unwrap().1, m);
            }
        }
        let ev = BinetEvaluator::from_classification(p.clone(), rc);
        let err = binet_vs_recurrence(&ev, &j_seq(&p, 25), 25).unwrap();
        prop_assert!(err <= 1e-8, "{} relative error {:e}", tag, err);
    }

    #[test]
    fn closed_form_matches_oracle(p in params(), init in init()) {
        let report = compare(&p, &init, 14);
        let cmp = report.comparison.unwrap();
        prop_assert!(cmp.agrees(), "{:?}", cmp.first_divergence());
    }

    #[test]
    fn gauge_does_not_change_solutions(
        p in params(),
        init in init(),
        g1 in (nonzero_rational(), nonzero_rational()),
        g2 in (nonzero_rational(), nonzero_rational()),
    ) {
        let one = LinearizedSolution::new(&p, &init, &Gauge::new(g1.0, g1.1).unwrap(), 12);
        let two = LinearizedSolution::new(&p, &init, &Gauge::new(g2.0, g2.1).unwrap(), 12);
        for n in -2..=12isize {
            prop_assert_eq!(one.x(n), two.x(n));
            prop_assert_eq!(one.y(n), two.y(n));
        }
    }
}
