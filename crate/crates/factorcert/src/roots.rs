//! Root-location machinery: modulus bounds, Rouche-type disk
//! certificates, Apollonius circles, rational square-root bounds, the
//! Routh-Hurwitz half-plane test, and a diagnostics-only numeric root
//! finder.
//!
//! Every certifying path here is exact; the numeric root finder is used
//! for plots and cross-checks only, never inside a certificate.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, Rat, pow_rat};
use crate::poly::{IntPoly, RatPoly, taylor_shift, taylor_shift_int};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("Apollonius ratio must exceed 1 (got {0}); the ratio-1 locus is a line, not a circle")]
    DegenerateRatio(String),
    #[error("Apollonius circle requires two distinct points")]
    CoincidentPoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    Cauchy,
    Fujiwara,
    EnestromKakeya,
    Littlewood,
    User,
}

impl std::fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundMethod::Cauchy => write!(f, "cauchy"),
            BoundMethod::Fujiwara => write!(f, "fujiwara"),
            BoundMethod::EnestromKakeya => write!(f, "enestrom_kakeya"),
            BoundMethod::Littlewood => write!(f, "littlewood"),
            BoundMethod::User => write!(f, "user"),
        }
    }
}

/// A sound upper bound on the maximum root modulus of a tagged polynomial.
/// `strict` records whether every root modulus is `< bound` or only
/// `<= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBound {
    pub bound: Rat,
    pub strict: bool,
    pub method: BoundMethod,
}

impl RootBound {
    pub fn user(bound: Rat, strict: bool) -> Self {
        RootBound { bound, strict, method: BoundMethod::User }
    }

    /// Prefer the smaller bound; on ties prefer the strict one.
    fn better_than(&self, other: &RootBound) -> bool {
        self.bound < other.bound || (self.bound == other.bound && self.strict && !other.strict)
    }

    /// The best bound available from the built-in methods.
    pub fn best_for(f: &IntPoly) -> RootBound {
        let mut best = cauchy_bound(f);
        for cand in [
            Some(fujiwara_bound(f)),
            enestrom_kakeya_bound(f),
            littlewood_bound(f),
        ]
        .into_iter()
        .flatten()
        {
            if cand.better_than(&best) {
                best = cand;
            }
        }
        best
    }
}

/// Cauchy's bound `1 + max_{i<n} |a_i / a_n|`; every root modulus is
/// strictly below it.
pub fn cauchy_bound(f: &IntPoly) -> RootBound {
    let n = f.degree().expect("cauchy_bound requires a nonzero polynomial");
    assert!(n >= 1, "cauchy_bound requires degree >= 1");
    let an = Rat::from_integer(f.leading().abs());
    let mut m = Rat::zero();
    for i in 0..n {
        let t = Rat::from_integer(f.coeff(i).abs()) / &an;
        if t > m {
            m = t;
        }
    }
    RootBound { bound: m + Rat::one(), strict: true, method: BoundMethod::Cauchy }
}

/// Fujiwara-style bound `2 max_i (|a_(n-i)| / |a_n|)^(1/i)` (the constant
/// term weighted by 1/2), with each fractional root replaced by a sound
/// rational upper bound.
pub fn fujiwara_bound(f: &IntPoly) -> RootBound {
    let n = f.degree().expect("fujiwara_bound requires a nonzero polynomial");
    assert!(n >= 1);
    let an = f.leading().abs();
    let mut m = Rat::zero();
    for i in 1..=n {
        let num = f.coeff(n - i).abs();
        if num.is_zero() {
            continue;
        }
        let mut den = an.clone();
        if i == n {
            den *= Int::from(2);
        }
        // Sound upper bound on (num/den)^(1/i): ceil root over floor root.
        let u = Rat::new(ceil_nth_root(&num, i as u32), floor_nth_root(&den, i as u32));
        if u > m {
            m = u;
        }
    }
    RootBound {
        bound: m * Rat::from_integer(Int::from(2)),
        strict: false,
        method: BoundMethod::Fujiwara,
    }
}

fn ceil_nth_root(n: &Int, k: u32) -> Int {
    let r = n.nth_root(k);
    if &r.pow(k) < n {
        r + Int::one()
    } else {
        r
    }
}

fn floor_nth_root(n: &Int, k: u32) -> Int {
    n.nth_root(k)
}

/// Nonnegative, nondecreasing coefficients: all root moduli are at most 1.
pub fn enestrom_kakeya_applies(f: &IntPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let coeffs = f.coeffs();
    if coeffs[0].is_negative() {
        return false;
    }
    coeffs.windows(2).all(|w| w[0] <= w[1])
}

fn enestrom_kakeya_bound(f: &IntPoly) -> Option<RootBound> {
    (enestrom_kakeya_applies(f) && f.degree() >= Some(1)).then(|| RootBound {
        bound: Rat::one(),
        strict: false,
        method: BoundMethod::EnestromKakeya,
    })
}

/// Every coefficient is +1 or -1: all root moduli are strictly below 2.
pub fn littlewood_applies(f: &IntPoly) -> bool {
    !f.is_zero() && f.coeffs().iter().all(|c| c.abs().is_one())
}

fn littlewood_bound(f: &IntPoly) -> Option<RootBound> {
    (littlewood_applies(f) && f.degree() >= Some(1)).then(|| RootBound {
        bound: Rat::from_integer(Int::from(2)),
        strict: true,
        method: BoundMethod::Littlewood,
    })
}

/// True implies every root of `f` has modulus strictly below `radius`;
/// the exact condition is `|a_n| R^n > sum_{i<n} |a_i| R^i`.
pub fn rouche_disk_certificate(f: &IntPoly, radius: &Rat) -> bool {
    assert!(radius > &Rat::zero(), "radius must be positive");
    assert!(f.degree() >= Some(1), "requires degree >= 1");
    let n = f.degree().unwrap();
    let lead = Rat::from_integer(f.leading().abs()) * pow_rat(radius, n as u32);
    let mut sum = Rat::zero();
    for i in 0..n {
        sum += Rat::from_integer(f.coeff(i).abs()) * pow_rat(radius, i as u32);
    }
    lead > sum
}

/// The same certificate with only the squared radius given. The Rouche sum
/// is split by parity so that only integer powers of `radius_sq` appear;
/// the one residual comparison of mixed parity is squared. Fully exact.
pub fn rouche_disk_sq(f: &RatPoly, radius_sq: &Rat) -> bool {
    assert!(radius_sq > &Rat::zero(), "squared radius must be positive");
    assert!(f.degree() >= Some(1), "requires degree >= 1");
    let n = f.degree().unwrap();
    let eps = n % 2;
    let mut a = Rat::zero(); // coefficient of R^eps: leading term minus same-parity tail
    let mut b = Rat::zero(); // coefficient of R^(1-eps): opposite-parity tail
    for i in 0..=n {
        let p = f.coeff(i).abs();
        if p.is_zero() {
            continue;
        }
        if i % 2 == eps {
            let term = p * pow_rat(radius_sq, ((i - eps) / 2) as u32);
            if i == n {
                a += term;
            } else {
                a -= term;
            }
        } else {
            b += p * pow_rat(radius_sq, ((i - (1 - eps)) / 2) as u32);
        }
    }
    // Condition: R^eps * a > R^(1-eps) * b with R = sqrt(radius_sq).
    if a <= Rat::zero() {
        return false;
    }
    if b.is_zero() {
        return true;
    }
    if eps == 0 {
        // a > R b  <=>  a^2 > s b^2
        &a * &a > radius_sq * &b * &b
    } else {
        // R a > b  <=>  s a^2 > b^2
        radius_sq * &a * &a > &b * &b
    }
}

/// The locus of points whose distance to `(b, 0)` is `r` times the
/// distance to `(a, 0)`, stored via the squared ratio so that ratios of
/// the form `sqrt(q)` with rational `q` stay exact.
///
/// "Inside" is the component containing `(a, 0)` when `r > 1`: the points
/// `P` with `d(P, B) > r * d(P, A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApolloniusCircle {
    pub a: Int,
    pub b: Int,
    /// Squared distance ratio; always > 1 here.
    pub ratio_sq: Rat,
    /// Abscissa of the center: `(a * r^2 - b)/(r^2 - 1)`.
    pub center: Rat,
    /// `(r * (b - a)/(r^2 - 1))^2`.
    pub radius_sq: Rat,
}

impl ApolloniusCircle {
    /// Circle with rational ratio `q > 1`.
    pub fn new(a: &Int, b: &Int, q: &Rat) -> Result<Self, RootsError> {
        Self::from_ratio_sq(a, b, &(q * q))
    }

    /// Circle with ratio `sqrt(q)` for rational `q > 1`.
    pub fn with_sqrt_ratio(a: &Int, b: &Int, q: &Rat) -> Result<Self, RootsError> {
        Self::from_ratio_sq(a, b, q)
    }

    fn from_ratio_sq(a: &Int, b: &Int, t: &Rat) -> Result<Self, RootsError> {
        if a == b {
            return Err(RootsError::CoincidentPoints);
        }
        if t <= &Rat::one() {
            return Err(RootsError::DegenerateRatio(crate::arith::rat_str(t)));
        }
        let ra = Rat::from_integer(a.clone());
        let rb = Rat::from_integer(b.clone());
        let denom = t - Rat::one();
        let center = (&ra * t - &rb) / &denom;
        let diff = &rb - &ra;
        let radius_sq = t * &diff * &diff / (&denom * &denom);
        Ok(ApolloniusCircle {
            a: a.clone(),
            b: b.clone(),
            ratio_sq: t.clone(),
            center,
            radius_sq,
        })
    }
}

/// Circle with the stated rational ratio `q > 1` around distinct integer
/// abscissae.
pub fn apollonius_circle(a: &Int, b: &Int, q: &Rat) -> Result<ApolloniusCircle, RootsError> {
    ApolloniusCircle::new(a, b, q)
}

/// True implies every root of `f` lies strictly inside the circle
/// (sufficient, not necessary): shift to the center, then run the exact
/// squared-radius Rouche test.
pub fn inside_apollonius_certificate(f: &IntPoly, circle: &ApolloniusCircle) -> bool {
    assert!(f.degree() >= Some(1), "requires degree >= 1");
    let shifted = taylor_shift_int(f, &circle.center);
    rouche_disk_sq(&shifted, &circle.radius_sq)
}

/// Rational `r` with `1 < r` and `r^2 <= q`, nondecreasing in
/// `iterations` and converging to `sqrt(q)` from below. Exact when `q` is
/// a perfect square of a rational.
pub fn sqrt_lower_bound(q: &Rat, iterations: u32) -> Rat {
    assert!(q > &Rat::one(), "sqrt_lower_bound requires q > 1");
    if let Some(exact) = exact_rat_sqrt(q) {
        return exact;
    }
    // q/u for the Newton-from-above iterate u stays below sqrt(q).
    Rat::new(q.numer().clone(), q.denom().clone()) / newton_sqrt_above(q, iterations)
}

/// Rational `u` with `u^2 >= q`, nonincreasing in `iterations` and
/// converging to `sqrt(q)` from above.
pub fn sqrt_upper_bound(q: &Rat, iterations: u32) -> Rat {
    assert!(q > &Rat::one(), "sqrt_upper_bound requires q > 1");
    if let Some(exact) = exact_rat_sqrt(q) {
        return exact;
    }
    newton_sqrt_above(q, iterations)
}

fn newton_sqrt_above(q: &Rat, iterations: u32) -> Rat {
    let half = Rat::new(Int::one(), Int::from(2));
    let mut u = (q + Rat::one()) * &half;
    for _ in 0..iterations {
        u = (&u + q / &u) * &half;
    }
    u
}

fn exact_rat_sqrt(q: &Rat) -> Option<Rat> {
    let sn = q.numer().sqrt();
    let sd = q.denom().sqrt();
    (&sn * &sn == *q.numer() && &sd * &sd == *q.denom()).then(|| Rat::new(sn, sd))
}

/// Verdict of a half-plane root-location test. `Indeterminate` arises
/// only from a zero pivot in the Routh array; it is never treated as a
/// certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlaneVerdict {
    Certified,
    NotCertified,
    Indeterminate,
}

/// Routh-Hurwitz test: `Certified` iff the Routh array completes with a
/// strictly positive first column (after normalizing the leading
/// coefficient), which holds iff every root has negative real part.
/// A zero pivot aborts to `Indeterminate`; no epsilon perturbation.
pub fn routh_hurwitz_stable(f: &RatPoly) -> HalfPlaneVerdict {
    let n = f.degree().expect("routh_hurwitz_stable requires a nonzero polynomial");
    assert!(n >= 1, "requires degree >= 1");
    let mut coeffs: Vec<Rat> = f.coeffs().to_vec();
    if coeffs.last().unwrap().is_negative() {
        for c in &mut coeffs {
            *c = -c.clone();
        }
    }
    // Stability forces every coefficient to be strictly positive.
    if coeffs.iter().any(|c| c.is_negative()) {
        return HalfPlaneVerdict::NotCertified;
    }

    // rows[0] = [c_n, c_(n-2), ...], rows[1] = [c_(n-1), c_(n-3), ...]
    let mut r0: Vec<Rat> = coeffs.iter().rev().step_by(2).cloned().collect();
    let mut r1: Vec<Rat> = coeffs.iter().rev().skip(1).step_by(2).cloned().collect();
    let mut first_col = vec![r0[0].clone()];
    for _ in 1..=n {
        if r1.is_empty() {
            break;
        }
        let pivot = r1[0].clone();
        if pivot.is_zero() {
            return HalfPlaneVerdict::Indeterminate;
        }
        first_col.push(pivot.clone());
        if first_col.len() == n + 1 {
            break;
        }
        let width = r0.len().saturating_sub(1).max(r1.len().saturating_sub(1));
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let a = r0.get(j + 1).cloned().unwrap_or_else(Rat::zero);
            let b = r1.get(j + 1).cloned().unwrap_or_else(Rat::zero);
            next.push((&pivot * a - &r0[0] * b) / &pivot);
        }
        r0 = r1;
        r1 = next;
    }
    if first_col.len() != n + 1 {
        return HalfPlaneVerdict::Indeterminate;
    }
    if first_col.iter().all(|c| c > &Rat::zero()) {
        HalfPlaneVerdict::Certified
    } else {
        HalfPlaneVerdict::NotCertified
    }
}

/// Certifies that all roots of `f` lie in the open half-plane
/// `x < (a+b)/2` when `b > a`, or `x > (a+b)/2` when `a > b`, by running
/// the Routh test on the recentred polynomial.
pub fn half_plane_certificate(f: &IntPoly, a: &Int, b: &Int) -> HalfPlaneVerdict {
    assert!(a != b, "half_plane_certificate requires a != b");
    assert!(f.degree() >= Some(1), "requires degree >= 1");
    let mid = Rat::new(a + b, Int::from(2));
    let g = if b > a {
        taylor_shift_int(f, &mid)
    } else {
        // Roots right of the midline iff f(c - X) is Hurwitz stable.
        taylor_shift(&f.to_rat().flip_sign_of_x(), &-mid)
    };
    routh_hurwitz_stable(&g)
}

/// Approximate roots for plotting and cross-checks.
#[derive(Debug, Clone)]
pub struct NumericRoots {
    /// Distinct roots (one entry per root of the squarefree part),
    /// sorted by real then imaginary part.
    pub roots: Vec<Complex64>,
    /// Relative residual `|f(z)| / sum |a_i||z|^i` per root.
    pub residuals: Vec<f64>,
    pub converged: bool,
}

/// Simultaneous (Ehrlich-Aberth) iteration on the squarefree part of `f`.
/// Diagnostics only: nothing here feeds a certificate.
pub fn numeric_roots(f: &IntPoly) -> NumericRoots {
    assert!(f.degree() >= Some(1), "numeric_roots requires degree >= 1");
    let fr = f.to_rat();
    let sf = {
        let g = fr.gcd(&fr.derivative());
        if g.is_constant() {
            fr.clone()
        } else {
            fr.exact_div(&g).expect("gcd divides")
        }
    };
    // Pull out the root at the origin so initial guesses stay away from 0.
    let mut coeffs: Vec<f64> = sf.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let mut roots: Vec<Complex64> = Vec::new();
    let mut zero_root = false;
    while coeffs.len() > 1 && coeffs[0] == 0.0 {
        coeffs.remove(0);
        zero_root = true;
    }
    if zero_root {
        roots.push(Complex64::new(0.0, 0.0));
    }
    let deg = coeffs.len() - 1;
    let mut converged = true;
    if deg == 1 {
        roots.push(Complex64::new(-coeffs[0] / coeffs[1], 0.0));
    } else if deg >= 2 {
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let monic: Vec<Complex64> = coeffs
            .iter()
            .map(|c| Complex64::new(c / coeffs[deg], 0.0))
            .collect();
        let _ = scale;
        let (mut zs, ok) = aberth(&monic);
        converged = ok;
        roots.append(&mut zs);
    }
    roots.sort_by(|p, q| {
        p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im))
    });
    let residuals = roots.iter().map(|z| relative_residual(f, *z)).collect();
    NumericRoots { roots, residuals, converged }
}

fn relative_residual(f: &IntPoly, z: Complex64) -> f64 {
    let mut val = Complex64::new(0.0, 0.0);
    let mut mag = 0.0f64;
    let mut zp = Complex64::new(1.0, 0.0);
    for c in f.coeffs() {
        let cf = c.to_f64().unwrap_or(f64::MAX);
        val += zp * cf;
        mag += cf.abs() * zp.norm();
        zp *= z;
    }
    if mag == 0.0 {
        return val.norm();
    }
    val.norm() / mag
}

fn aberth(monic: &[Complex64]) -> (Vec<Complex64>, bool) {
    let deg = monic.len() - 1;
    let mut zs: Vec<Complex64> = Vec::with_capacity(deg);
    let c0 = monic[0].norm().max(1e-8);
    let rho = c0.powf(1.0 / deg as f64).max(1e-4);
    for k in 0..deg {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
        zs.push(Complex64::from_polar(rho, theta));
    }
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let mut ok = false;
    for _ in 0..1000 {
        let mut max_delta = 0.0f64;
        for k in 0..deg {
            let (p, dp) = eval(zs[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() == 0.0 { p } else { p / dp };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != k {
                    let d = zs[k] - zs[j];
                    if d.norm() > 1e-300 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let delta = if denom.norm() < 1e-300 { w } else { w / denom };
            zs[k] -= delta;
            max_delta = max_delta.max(delta.norm() / (1.0 + zs[k].norm()));
        }
        if max_delta < 1e-13 {
            ok = true;
            break;
        }
    }
    if !ok {
        // The update size can jitter at the rounding floor; accept the
        // result when every residual is at that floor anyway.
        ok = zs.iter().all(|&z| {
            let (p, _) = eval(z);
            let mut mag = 0.0f64;
            let mut zp = 1.0f64;
            for c in monic {
                mag += c.norm() * zp;
                zp *= z.norm();
            }
            p.norm() <= 1e-12 * mag.max(1.0)
        });
    }
    (zs, ok)
}
