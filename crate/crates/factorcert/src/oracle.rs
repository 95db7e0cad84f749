//! Ground-truth verification, deliberately simple and self-contained:
//! exact factor counting over Q by squarefree decomposition, rational-root
//! stripping and Kronecker interpolation, plus a plain quadratic-loop
//! recomputation of the divisor-ratio maximum.
//!
//! Kronecker's method is slow but every step is auditable by hand; the
//! oracle's job is trust, not speed. Nothing here shares a code path with
//! the engines it checks.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Int, Rat};
use crate::divisors::DivisorClass;
use crate::poly::{IntPoly, RatPoly, rational_roots};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("degree {deg} exceeds the oracle degree cap {cap}")]
    DegreeCap { deg: usize, cap: usize },
    #[error("the zero polynomial has no factor count")]
    ZeroPoly,
    #[error("requires 0 < |f(a)| < |f(b)|")]
    ValueOrder,
    #[error("zero value")]
    ZeroValue,
}

/// Exact irreducible factorization over Q of `f = content * prod f_i^m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorCount {
    /// Sum of the multiplicities of the non-constant irreducible factors.
    pub count: u32,
    /// Primitive integer factors with positive leading coefficients,
    /// sorted by degree then coefficients.
    pub factors: Vec<(IntPoly, u32)>,
    /// Integer content including the sign of the leading coefficient.
    pub content: Int,
}

impl FactorCount {
    /// Multiplies the decomposition back together.
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Counts irreducible factors with multiplicity by exhaustive exact
/// factorization. Degrees above `degree_cap` are refused.
pub fn count_irreducible_factors(
    f: &IntPoly,
    degree_cap: usize,
) -> Result<FactorCount, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPoly);
    }
    let deg = f.degree().unwrap();
    if deg > degree_cap {
        return Err(OracleError::DegreeCap { deg, cap: degree_cap });
    }
    let content = f.content();
    if deg == 0 {
        return Ok(FactorCount { count: 0, factors: Vec::new(), content });
    }
    let prim = f.primitive();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&prim.to_rat()) {
        let (_, part) = sqfree.to_primitive_int();
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    let count = factors.iter().map(|(_, m)| *m).sum();
    Ok(FactorCount { count, factors, content })
}

/// Yun's algorithm over Q: returns monic squarefree parts with their
/// multiplicities, constants omitted.
fn squarefree_decomposition(f: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    let f = f.monic();
    let df = f.derivative();
    let g = f.gcd(&df);
    if g.is_constant() {
        return vec![(f, 1)];
    }
    let mut b = f.exact_div(&g).expect("gcd divides");
    let mut d = df.exact_div(&g).expect("gcd divides f'").sub(&b.derivative());
    let mut i = 1u32;
    while b.degree() > Some(0) {
        let a = b.gcd(&d);
        if a.degree() > Some(0) {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Factors a primitive squarefree integer polynomial into irreducibles:
/// rational-root stripping, then Kronecker interpolation through divisor
/// tuples for factor degrees 2..deg/2.
fn factor_squarefree(p: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = p.to_rat();
    for root in rational_roots(p) {
        // root n/d (reduced) gives the primitive factor d*x - n.
        let lin = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
        rest = rest.exact_div(&lin.to_rat()).expect("verified root divides");
        out.push(lin.primitive());
    }
    let (_, mut g) = rest.to_primitive_int();
    let mut d = 2usize;
    while g.degree().is_some_and(|n| n >= 2 * d) {
        match kronecker_factor(&g, d) {
            Some(fac) => {
                let quot = g
                    .to_rat()
                    .exact_div(&fac.to_rat())
                    .expect("kronecker factor divides");
                let (_, q) = quot.to_primitive_int();
                g = q;
                out.push(fac);
            }
            None => d += 1,
        }
    }
    if g.degree().is_some_and(|n| n >= 1) {
        out.push(g.primitive());
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

/// One degree-`d` factor of `g` by interpolation through divisors of the
/// values at d+2 integer points (the last point is a holdout check), or
/// `None` when the search is exhausted.
fn kronecker_factor(g: &IntPoly, d: usize) -> Option<IntPoly> {
    // Points with few divisors keep the search small.
    let mut pool: Vec<(usize, Int, Vec<Int>)> = Vec::new();
    let mut xs_seen = 0i64;
    let mut next_x = 0i64;
    while pool.len() < d + 6 && xs_seen < 40 {
        let x = next_x;
        next_x = if next_x > 0 { -next_x } else { -next_x + 1 };
        xs_seen += 1;
        let v = g.eval(&Int::from(x));
        if v.is_zero() {
            continue; // integer root; cannot happen after stripping
        }
        let divs = divisors_by_trial(&v.abs());
        pool.push((divs.len(), Int::from(x), divs));
    }
    pool.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.abs().cmp(&b.1.abs())));
    if pool.len() < d + 2 {
        return None;
    }
    let points: Vec<(Int, Vec<Int>)> =
        pool.into_iter().take(d + 2).map(|(_, x, divs)| (x, divs)).collect();
    let (hold_x, _) = points[d + 1].clone();
    let hold_v = g.eval(&hold_x);
    let base: Vec<(Int, Vec<Int>)> = points[..=d].to_vec();

    // Lagrange basis through the d+1 base points.
    let basis: Vec<RatPoly> = (0..=d)
        .map(|i| {
            let mut num = RatPoly::one();
            let mut den = Rat::one();
            for j in 0..=d {
                if i == j {
                    continue;
                }
                let xj = Rat::from_integer(base[j].0.clone());
                num = num.mul(&RatPoly::new(vec![-xj, Rat::one()]));
                den *= Rat::from_integer(&base[i].0 - &base[j].0);
            }
            num.scale(&(Rat::one() / den))
        })
        .collect();

    // Odometer over signed divisor tuples; the first coordinate stays
    // positive since g and -g divide together.
    let sizes: Vec<usize> = base
        .iter()
        .enumerate()
        .map(|(i, (_, divs))| if i == 0 { divs.len() } else { divs.len() * 2 })
        .collect();
    let value = |i: usize, idx: usize| -> Int {
        let divs = &base[i].1;
        if i == 0 || idx < divs.len() {
            divs[idx].clone()
        } else {
            -&divs[idx - divs.len()]
        }
    };
    let mut idx = vec![0usize; d + 1];
    loop {
        let tuple: Vec<Int> = (0..=d).map(|i| value(i, idx[i])).collect();
        if let Some(fac) = try_tuple(g, &basis, &tuple, &hold_x, &hold_v, d) {
            return Some(fac);
        }
        // Advance the odometer.
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            if pos > d {
                return None;
            }
        }
    }
}

fn try_tuple(
    g: &IntPoly,
    basis: &[RatPoly],
    tuple: &[Int],
    hold_x: &Int,
    hold_v: &Int,
    d: usize,
) -> Option<IntPoly> {
    let mut cand = RatPoly::zero();
    for (v, l) in tuple.iter().zip(basis) {
        cand = cand.add(&l.scale(&Rat::from_integer(v.clone())));
    }
    if cand.degree() != Some(d) {
        return None;
    }
    // Integer coefficients and a leading coefficient dividing g's.
    if cand.coeffs().iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    let lead = cand.leading();
    if !(g.leading() % lead.numer()).is_zero() {
        return None;
    }
    // Holdout divisibility before the full division.
    let hv = cand.eval(&Rat::from_integer(hold_x.clone()));
    if hv.is_zero() || !(hold_v % hv.numer()).is_zero() {
        return None;
    }
    let ip = IntPoly::new(cand.coeffs().iter().map(|c| c.numer().clone()).collect());
    g.to_rat().exact_div(&ip.to_rat()).map(|_| ip.primitive())
}

fn divisors_by_trial(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let co = n / &d;
            if co != d {
                out.push(co);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Independent recomputation of the class-constrained divisor-ratio
/// maximum: enumerate both divisor lists by trial division, classify by
/// direct gcd checks, and take the maximum over the full pair grid with
/// exact power comparisons.
pub fn brute_qk(
    fa: &Int,
    dfa: &Int,
    fb: &Int,
    dfb: &Int,
    k: u32,
    class: DivisorClass,
) -> Result<Rat, OracleError> {
    if fa.is_zero() || fb.is_zero() {
        return Err(OracleError::ZeroValue);
    }
    let va = fa.abs();
    let vb = fb.abs();
    if va >= vb {
        return Err(OracleError::ValueOrder);
    }
    if let (Some(va64), Some(vb64), Some(dfa64), Some(dfb64)) = (
        va.to_u64(),
        vb.to_u64(),
        dfa.abs().to_u64(),
        dfb.abs().to_u64(),
    ) {
        if let Some(q) = brute_qk_u64(va64, dfa64, vb64, dfb64, k, class) {
            return Ok(q);
        }
    }
    let d1s = classified_divisors(&va, dfa, class);
    let d2s = classified_divisors(&vb, dfb, class);
    let e = k + 1;
    let mut best = (Int::one(), Int::one());
    for d1 in &d1s {
        for d2 in &d2s {
            if d2.pow(e) * &va <= d1.pow(e) * &vb && d2 * &best.0 > &best.1 * d1 {
                best = (d1.clone(), d2.clone());
            }
        }
    }
    Ok(Rat::new(best.1, best.0))
}

fn classified_divisors(v: &Int, deriv: &Int, class: DivisorClass) -> Vec<Int> {
    let g = v.gcd(deriv);
    divisors_by_trial(v)
        .into_iter()
        .filter(|d| {
            let inner = d.gcd(&(v / d));
            match class {
                DivisorClass::Any => true,
                DivisorClass::Unitary => inner.is_one(),
                DivisorClass::Admissible => (&g % &inner).is_zero(),
            }
        })
        .collect()
}

fn brute_qk_u64(va: u64, dfa: u64, vb: u64, dfb: u64, k: u32, class: DivisorClass) -> Option<Rat> {
    let d1s = classified_divisors_u64(va, dfa, class);
    let d2s = classified_divisors_u64(vb, dfb, class);
    let e = k + 1;
    let pow = |d: u64| -> Option<u128> {
        let mut acc = 1u128;
        for _ in 0..e {
            acc = acc.checked_mul(d as u128)?;
        }
        Some(acc)
    };
    let rhs: Vec<u128> = d2s
        .iter()
        .map(|&d| pow(d).and_then(|p| p.checked_mul(va as u128)))
        .collect::<Option<_>>()?;
    let mut best = (1u64, 1u64);
    for &d1 in &d1s {
        let lhs_cap = pow(d1)?.checked_mul(vb as u128)?;
        for (&d2, &r) in d2s.iter().zip(&rhs) {
            if r <= lhs_cap && d2 as u128 * best.0 as u128 > best.1 as u128 * d1 as u128 {
                best = (d1, d2);
            }
        }
    }
    Some(Rat::new(Int::from(best.1), Int::from(best.0)))
}

fn classified_divisors_u64(v: u64, deriv: u64, class: DivisorClass) -> Vec<u64> {
    if let (Ok(v32), Ok(deriv32)) = (u32::try_from(v), u32::try_from(deriv)) {
        return classified_divisors_u32(v32, deriv32, class);
    }
    // Enumeration order does not matter for a plain max scan.
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= v {
        if v.is_multiple_of(d) {
            divs.push(d);
            if v / d != d {
                divs.push(v / d);
            }
        }
        d += 1;
    }
    let g = gcd_u64(v, deriv);
    divs.into_iter()
        .filter(|&d| {
            let inner = gcd_u64(d, v / d);
            match class {
                DivisorClass::Any => true,
                DivisorClass::Unitary => inner == 1,
                DivisorClass::Admissible => g.is_multiple_of(inner),
            }
        })
        .collect()
}

/// Same enumeration in 32-bit arithmetic, where division is cheaper.
fn classified_divisors_u32(v: u32, deriv: u32, class: DivisorClass) -> Vec<u64> {
    let mut divs: Vec<u32> = Vec::new();
    let mut d = 1u32;
    while d as u64 * d as u64 <= v as u64 {
        if v % d == 0 {
            divs.push(d);
            if v / d != d {
                divs.push(v / d);
            }
        }
        d += 1;
    }
    let g = gcd_u32(v, deriv);
    divs.retain(|&d| {
        let inner = gcd_u32(d, v / d);
        match class {
            DivisorClass::Any => true,
            DivisorClass::Unitary => inner == 1,
            DivisorClass::Admissible => g % inner == 0,
        }
    });
    divs.into_iter().map(u64::from).collect()
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::poly::parse_poly;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn counts_the_worked_examples() {
        let f = parse_poly("35x^4+12x^2+1").unwrap();
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 2);
        assert_eq!(
            fc.factors,
            vec![(p(&[1, 0, 5]), 1), (p(&[1, 0, 7]), 1)]
        );
        assert_eq!(fc.product(), f);

        let f = parse_poly("42x^3+x^2+5x+1").unwrap();
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 2);
        assert_eq!(fc.factors, vec![(p(&[1, 6]), 1), (p(&[1, -1, 7]), 1)]);
    }

    #[test]
    fn multiplicity_is_counted() {
        let f = p(&[0, 0, 0, 0, 1]); // x^4
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 4);
        assert_eq!(fc.factors, vec![(p(&[0, 1]), 4)]);

        let f = p(&[1, 2, 1]).mul(&p(&[-3, 1])); // (x+1)^2 (x-3)
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 3);
        assert_eq!(fc.product(), f);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            count_irreducible_factors(&f, 8),
            Err(OracleError::DegreeCap { deg: 9, cap: 8 })
        ));
    }

    #[test]
    fn finds_quadratic_pairs_and_content() {
        // Two irreducible quadratics with content and sign.
        let f = p(&[1, 1, 3]).mul(&p(&[2, -1, 5])).scale(&int(-6));
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 2);
        assert_eq!(fc.content, int(-6));
        assert_eq!(fc.product(), f);
        for (g, _) in &fc.factors {
            assert_eq!(g.degree(), Some(2));
        }
    }

    #[test]
    fn irreducible_quartics_and_cubics_survive() {
        // x^4 + 1 and x^4 - x - 1 are irreducible over Q; so is
        // x^3 - 2. The Kronecker search must exhaust without a factor.
        for f in [p(&[1, 0, 0, 0, 1]), p(&[-1, -1, 0, 0, 1]), p(&[-2, 0, 0, 1])] {
            let fc = count_irreducible_factors(&f, 8).unwrap();
            assert_eq!(fc.count, 1, "f = {f}");
        }
    }

    #[test]
    fn recovers_products_of_higher_degree() {
        // (x^2+x+1)(x^3-x-1): no rational roots on either factor.
        let f = p(&[1, 1, 1]).mul(&p(&[-1, -1, 0, 1]));
        let fc = count_irreducible_factors(&f, 8).unwrap();
        assert_eq!(fc.count, 2);
        assert_eq!(fc.factors, vec![(p(&[1, 1, 1]), 1), (p(&[-1, -1, 0, 1]), 1)]);
    }

    #[test]
    fn brute_qk_matches_the_worked_example() {
        let q = brute_qk(&int(48), &int(164), &int(609), &int(1168), 2, DivisorClass::Admissible)
            .unwrap();
        assert_eq!(q, rat(29, 16));
        assert!(brute_qk(&int(48), &int(1), &int(48), &int(1), 1, DivisorClass::Any).is_err());
    }
}
