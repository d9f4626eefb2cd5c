//! Roots of the characteristic quartic `λ⁴ − aλ³ − bλ² − cλ − d` and their
//! multiplicity classification into the nine Binet cases.
//!
//! Multiplicities and the number of real roots are decided exactly over the
//! rationals (square-free decomposition plus Sturm counting). Root values are
//! then computed per square-free factor with the closed-form quartic/cubic
//! resolution and a few Newton steps, so every factor being solved has only
//! simple roots. A separation guard rejects parameter sets whose distinct
//! roots sit closer than the clustering tolerance.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::{eval_with_derivative, RatPoly};
use crate::types::{elementary_symmetric, to_f64, Params, Rational, SolverError};

/// Default relative clustering tolerance.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;

const NEWTON_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    /// quadruple real root
    C1,
    /// simple real root and triple real root
    C2,
    /// two simple real roots and a double real root
    C3,
    /// two double real roots
    C4,
    /// four simple real roots
    C5,
    /// double real root and a conjugate pair
    C6,
    /// two simple real roots and a conjugate pair
    C7,
    /// double conjugate pair
    C8,
    /// two distinct conjugate pairs
    C9,
}

impl CaseTag {
    pub const ALL: [CaseTag; 9] = [
        CaseTag::C1,
        CaseTag::C2,
        CaseTag::C3,
        CaseTag::C4,
        CaseTag::C5,
        CaseTag::C6,
        CaseTag::C7,
        CaseTag::C8,
        CaseTag::C9,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Distinct characteristic roots with multiplicities, in the order in which
/// the case formulas name them (real roots by increasing multiplicity, then
/// descending; then conjugate pairs with the positive-imaginary member first).
#[derive(Debug, Clone, PartialEq)]
pub struct RootClassification {
    pub roots: Vec<(Complex64, usize)>,
    pub case_tag: CaseTag,
    pub cluster_tolerance_used: f64,
}

impl RootClassification {
    /// The roots as the labels `[α, β, γ, δ]` used by the case formulas.
    pub fn labeled(&self) -> [Complex64; 4] {
        let r = |i: usize| self.roots[i].0;
        match self.case_tag {
            CaseTag::C1 => [r(0); 4],
            CaseTag::C2 => [r(0), r(1), r(1), r(1)],
            CaseTag::C3 => [r(0), r(1), r(2), r(2)],
            CaseTag::C4 => [r(0), r(0), r(1), r(1)],
            CaseTag::C5 | CaseTag::C7 | CaseTag::C9 => [r(0), r(1), r(2), r(3)],
            CaseTag::C6 => [r(0), r(0), r(1), r(2)],
            CaseTag::C8 => [r(0), r(1), r(0), r(1)],
        }
    }

    /// All four roots counted with multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max)
    }
}

/// Coefficients (lowest first) of the characteristic quartic.
pub fn characteristic_poly(params: &Params) -> RatPoly {
    RatPoly::new(vec![
        -params.d(),
        -params.c(),
        -params.b(),
        -params.a(),
        Rational::from_integer(1.into()),
    ])
}

pub fn solve_characteristic(params: &Params) -> Result<RootClassification, SolverError> {
    solve_characteristic_with(params, CLUSTER_TOLERANCE)
}

pub fn solve_characteristic_with(
    params: &Params,
    tolerance: f64,
) -> Result<RootClassification, SolverError> {
    let quartic = characteristic_poly(params);
    let mut real: Vec<(f64, usize)> = Vec::new();
    let mut pairs: Vec<(Complex64, usize)> = Vec::new();

    for (i, factor) in quartic.square_free().iter().enumerate() {
        if factor.degree() == 0 {
            continue;
        }
        let multiplicity = i + 1;
        let n_real = factor.count_real_roots();
        let coeffs = factor.to_f64_coeffs();
        let mut found = polish(&coeffs, roots_low_degree(&coeffs))?;
        found.sort_by(|p, q| p.im.abs().total_cmp(&q.im.abs()));
        let (reals, complex) = found.split_at(n_real);
        for z in reals {
            let snapped = polish(&coeffs, vec![Complex64::new(z.re, 0.0)])?[0];
            real.push((snapped.re, multiplicity));
        }
        let upper: Vec<Complex64> = complex.iter().copied().filter(|z| z.im > 0.0).collect();
        if 2 * upper.len() != complex.len() {
            return Err(SolverError::RootClassificationAmbiguous);
        }
        pairs.extend(upper.into_iter().map(|z| (z, multiplicity)));
    }

    real.sort_by(|p, q| p.1.cmp(&q.1).then(q.0.total_cmp(&p.0)));
    pairs.sort_by(|p, q| q.0.re.total_cmp(&p.0.re).then(q.0.im.total_cmp(&p.0.im)));

    let case_tag = classify(&real, &pairs);
    let mut roots: Vec<(Complex64, usize)> = Vec::with_capacity(4);
    roots.extend(real.iter().map(|&(x, m)| (Complex64::new(x, 0.0), m)));
    for &(z, m) in &pairs {
        roots.push((z, m));
        roots.push((z.conj(), m));
    }
    if roots.iter().map(|(_, m)| m).sum::<usize>() != 4 {
        return Err(SolverError::RootClassificationAmbiguous);
    }

    let scale = 1.0 + roots.iter().map(|(z, _)| z.norm()).fold(0.0, f64::max);
    let cluster_tolerance_used = tolerance * scale;
    for (i, (z, _)) in roots.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SolverError::NonFiniteNumeric);
        }
        if z.im != 0.0 && z.im.abs() <= tolerance * (1.0 + z.re.abs()) {
            return Err(SolverError::RootClassificationAmbiguous);
        }
        if roots[i + 1..]
            .iter()
            .any(|(w, _)| (z - w).norm() <= cluster_tolerance_used)
        {
            return Err(SolverError::RootClassificationAmbiguous);
        }
    }

    Ok(RootClassification {
        roots,
        case_tag,
        cluster_tolerance_used,
    })
}

fn classify(real: &[(f64, usize)], pairs: &[(Complex64, usize)]) -> CaseTag {
    let mut mults: Vec<usize> = real.iter().map(|r| r.1).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    match (pairs, mults.as_slice()) {
        ([], [4]) => CaseTag::C1,
        ([], [3, 1]) => CaseTag::C2,
        ([], [2, 1, 1]) => CaseTag::C3,
        ([], [2, 2]) => CaseTag::C4,
        ([], [1, 1, 1, 1]) => CaseTag::C5,
        ([(_, 1)], [2]) => CaseTag::C6,
        ([(_, 1)], [1, 1]) => CaseTag::C7,
        ([(_, 2)], []) => CaseTag::C8,
        ([(_, 1), (_, 1)], []) => CaseTag::C9,
        _ => unreachable!("multiplicities of a real quartic: {mults:?} with {} pairs", pairs.len()),
    }
}

/// Largest relative residual of the four root/coefficient relations
/// `e1 = a, e2 = −b, e3 = c, e4 = −d`, each scaled by `max(1, |target|)`.
pub fn vieta_check(rc: &RootClassification, params: &Params) -> f64 {
    let expanded = rc.expanded();
    let roots: [Complex64; 4] = [expanded[0], expanded[1], expanded[2], expanded[3]];
    let e = elementary_symmetric(&roots);
    let targets = [
        to_f64(params.a()),
        -to_f64(params.b()),
        to_f64(params.c()),
        -to_f64(params.d()),
    ];
    e.iter()
        .zip(targets)
        .map(|(ek, t)| (ek - t).norm() / t.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Residual `|p(λ)|` of the characteristic quartic at a point.
pub fn residual(params: &Params, z: Complex64) -> f64 {
    let coeffs = characteristic_poly(params).to_f64_coeffs();
    eval_with_derivative(&coeffs, z).0.norm()
}

fn polish(coeffs: &[f64], mut roots: Vec<Complex64>) -> Result<Vec<Complex64>, SolverError> {
    for z in roots.iter_mut() {
        for _ in 0..NEWTON_STEPS {
            let (p, dp) = eval_with_derivative(coeffs, *z);
            if p.norm() == 0.0 || dp.norm() == 0.0 {
                break;
            }
            let next = *z - p / dp;
            if !next.re.is_finite() || !next.im.is_finite() {
                return Err(SolverError::NonFiniteNumeric);
            }
            *z = next;
        }
    }
    Ok(roots)
}

/// Roots of a monic polynomial of degree 1 to 4 (coefficients lowest first,
/// leading coefficient 1) by radicals.
fn roots_low_degree(coeffs: &[f64]) -> Vec<Complex64> {
    let c = |i: usize| Complex64::new(coeffs[i], 0.0);
    match coeffs.len() - 1 {
        1 => vec![-c(0)],
        2 => quadratic(c(1), c(0)).to_vec(),
        3 => cubic(c(2), c(1), c(0)).to_vec(),
        4 => quartic(c(3), c(2), c(1), c(0)).to_vec(),
        deg => unreachable!("degree {deg} factor of a quartic"),
    }
}

/// Roots of `z² + b z + c`.
fn quadratic(b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q.norm() == 0.0 {
        return [Complex64::new(0.0, 0.0); 2];
    }
    [q, c / q]
}

/// Roots of `z³ + b z² + c z + d` (Cardano on the depressed cubic).
fn cubic(b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 3] {
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w1 = -q / 2.0 + disc;
    let w2 = -q / 2.0 - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let u = w.cbrt();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    let mut rot = Complex64::new(1.0, 0.0);
    for slot in out.iter_mut() {
        let uk = u * rot;
        let t = if uk.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            uk - p / (3.0 * uk)
        };
        *slot = t - shift;
        rot *= omega;
    }
    out
}

/// Roots of `z⁴ + b z³ + c z² + d z + e` by Ferrari's method.
fn quartic(b: Complex64, c: Complex64, d: Complex64, e: Complex64) -> [Complex64; 4] {
    let shift = b / 4.0;
    let b2 = b * b;
    let p = c - 3.0 * b2 / 8.0;
    let q = d - b * c / 2.0 + b2 * b / 8.0;
    let r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;

    let scale = 1.0 + p.norm() + q.norm().sqrt() + r.norm().sqrt();
    if q.norm() <= 1e-14 * scale * scale {
        // biquadratic in y
        let [s1, s2] = quadratic(p, r);
        let (y1, y2) = (s1.sqrt(), s2.sqrt());
        return [y1 - shift, -y1 - shift, y2 - shift, -y2 - shift];
    }

    // resolvent 8m³ + 8p m² + (2p² − 8r) m − q² = 0, take the largest root
    let ms = cubic(p, p * p / 4.0 - r, -q * q / 8.0);
    let m = ms
        .into_iter()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("three resolvent roots");
    let s = (2.0 * m).sqrt();
    let half = p / 2.0 + m;
    let t = q / (2.0 * s);
    let [y1, y2] = quadratic(s, half - t);
    let [y3, y4] = quadratic(-s, half + t);
    [y1 - shift, y2 - shift, y3 - shift, y4 - shift]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{frac, rat};

    fn roots_close(found: &[Complex64], expected: &[Complex64], tol: f64) -> bool {
        let mut used = vec![false; expected.len()];
        found.iter().all(|z| {
            if let Some(i) = (0..expected.len()).find(|&i| !used[i] && (z - expected[i]).norm() <= tol) {
                used[i] = true;
                true
            } else {
                false
            }
        })
    }

    #[test]
    fn radical_solvers_hit_known_roots() {
        let one = Complex64::new(1.0, 0.0);
        let zs = quartic(-10.0 * one, 35.0 * one, -50.0 * one, 24.0 * one);
        let want: Vec<Complex64> = (1..=4).map(|k| Complex64::new(k as f64, 0.0)).collect();
        assert!(roots_close(&zs, &want, 1e-9), "{zs:?}");

        let zs = cubic(-6.0 * one, 11.0 * one, -6.0 * one);
        assert!(roots_close(&zs, &want[..3], 1e-9), "{zs:?}");

        // biquadratic (z² + 1)(z² + 4)
        let zs = quartic(0.0 * one, 5.0 * one, 0.0 * one, 4.0 * one);
        let i = Complex64::new(0.0, 1.0);
        assert!(roots_close(&zs, &[i, -i, 2.0 * i, -2.0 * i], 1e-12), "{zs:?}");
    }

    #[test]
    fn tetranacci_roots() {
        let rc = solve_characteristic(&Params::tetranacci()).unwrap();
        assert_eq!(rc.case_tag, CaseTag::C7);
        let [alpha, beta, gamma, delta] = rc.labeled();
        assert!((alpha.re - 1.927561975).abs() < 1e-8);
        assert_eq!(alpha.im, 0.0);
        assert!((beta.re + 0.774804113).abs() < 1e-8);
        assert!((gamma - Complex64::new(-0.076378931, 0.814703647)).norm() < 1e-8);
        assert_eq!(delta, gamma.conj());
        assert!(vieta_check(&rc, &Params::tetranacci()) <= 1e-8);
    }

    #[test]
    fn quadruple_root_is_exact() {
        let p = Params::from_ints(4, -6, 4, -1).unwrap();
        let rc = solve_characteristic(&p).unwrap();
        assert_eq!(rc.case_tag, CaseTag::C1);
        assert_eq!(rc.roots, vec![(Complex64::new(1.0, 0.0), 4)]);
        assert!(vieta_check(&rc, &p) < 1e-15);
    }

    #[test]
    fn four_distinct_integers() {
        let p = Params::from_ints(10, -35, 50, -24).unwrap();
        let rc = solve_characteristic(&p).unwrap();
        assert_eq!(rc.case_tag, CaseTag::C5);
        let vals: Vec<f64> = rc.roots.iter().map(|(z, _)| z.re).collect();
        for (v, want) in vals.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert!((v - want).abs() < 1e-12);
        }
        assert!(vieta_check(&rc, &p) <= 1e-12);
    }

    #[test]
    fn residual_after_polishing() {
        for p in [
            Params::tetranacci(),
            Params::from_ints(2, 3, 5, 7).unwrap(),
            Params::from_ints(-3, 1, -4, 2).unwrap(),
            Params::new(frac(1, 3), frac(-5, 7), rat(2), frac(9, 11)).unwrap(),
        ] {
            let rc = solve_characteristic(&p).unwrap();
            for z in rc.expanded() {
                assert!(residual(&p, z) <= 1e-10 * z.norm().powi(4).max(1.0), "{p} at {z}");
            }
        }
    }

    #[test]
    fn near_degenerate_double_root_is_ambiguous() {
        // (λ − 1)(λ − (1 + 10⁻¹⁰))(λ − 2)(λ − 3): exactly four distinct real roots
        let eps = Rational::new(1.into(), 10_000_000_000u64.into());
        let roots = [rat(1), rat(1) + eps, rat(2), rat(3)];
        let p = Params::from_roots(roots).unwrap();
        assert_eq!(
            solve_characteristic(&p),
            Err(SolverError::RootClassificationAmbiguous)
        );
        // a comfortably separated neighbour classifies fine
        let p = Params::from_roots([rat(1), frac(11, 10), rat(2), rat(3)]).unwrap();
        assert_eq!(solve_characteristic(&p).unwrap().case_tag, CaseTag::C5);
    }

    #[test]
    fn no_root_is_zero() {
        // d ≠ 0 means the constant term is nonzero
        let p = Params::from_ints(0, 0, 0, 1).unwrap();
        let rc = solve_characteristic(&p).unwrap();
        assert!(rc.expanded().iter().all(|z| z.norm() > 0.5));
        assert_eq!(rc.case_tag, CaseTag::C7);
    }
}
