//! Exact integer and rational arithmetic: factorization, primality, and
//! the power comparisons that replace floating-point logarithms everywhere
//! in this crate.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand for small integer literals.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Shorthand for small rational literals. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Exact `r^e` without materializing any real-valued root or log.
pub fn pow_rat(r: &Rat, e: u32) -> Rat {
    Rat::new_raw(r.numer().pow(e), r.denom().pow(e))
}

/// Canonical string form: plain integer when the denominator is 1,
/// otherwise `numerator/denominator` in lowest terms.
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`rat_str`].
pub fn rat_parse(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let num: Int = n.parse().ok()?;
            let den: Int = d.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("factorization of zero is undefined")]
    ZeroInput,
    #[error("factorization budget exceeded; unresolved composite cofactor {remaining}")]
    BudgetExceeded { remaining: Int },
}

/// Effort limits for [`factor_integer`]. Exceeding them is a hard error,
/// never a silent partial factorization: every divisor-based certificate
/// is unsound on an incomplete factorization.
#[derive(Debug, Clone)]
pub struct FactorConfig {
    /// Trial division covers all prime factors up to this bound.
    pub trial_bound: u64,
    /// Rounds of Brent cycles tried per surviving composite cofactor.
    pub rho_rounds: u32,
    /// Seeds the sequence of Brent constants; any value gives a
    /// reproducible run, 0 the canonical sequence 1, 2, 3, ...
    pub rho_seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_rounds: 64,
            rho_seed: 0,
        }
    }
}

impl FactorConfig {
    fn rho_constant(&self, round: u64) -> u64 {
        if self.rho_seed == 0 {
            round
        } else {
            let mut s = self.rho_seed.wrapping_add(round.wrapping_mul(0x9e3779b97f4a7c15));
            1 + splitmix64(&mut s) % (1 << 31)
        }
    }
}

/// Signed prime-power decomposition of a nonzero integer.
///
/// Invariants: every key is prime, keys are strictly increasing (BTreeMap
/// order), exponents are positive, and `sign * prod p^e` reproduces the
/// input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    sign: i8,
    factors: BTreeMap<Int, u32>,
}

impl Factorization {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Prime/exponent pairs in increasing prime order.
    pub fn factors(&self) -> impl Iterator<Item = (&Int, u32)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn num_distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, p: &Int) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// `Some((p, e))` when the absolute value is exactly `p^e` with `e >= 1`.
    pub fn as_prime_power(&self) -> Option<(&Int, u32)> {
        if self.factors.len() == 1 {
            let (p, &e) = self.factors.iter().next().unwrap();
            Some((p, e))
        } else {
            None
        }
    }

    /// Multiplies the decomposition back together.
    pub fn value(&self) -> Int {
        let mut v = Int::from(self.sign);
        for (p, &e) in &self.factors {
            v *= p.pow(e);
        }
        v
    }

    /// All positive divisors of the absolute value, sorted ascending.
    pub fn divisors(&self) -> Vec<Int> {
        let mut divs = vec![Int::one()];
        for (p, &e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            let mut pe = Int::one();
            for _ in 0..=e {
                for d in &divs {
                    next.push(d * &pe);
                }
                pe *= p;
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.factors {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact factorization of a nonzero integer.
///
/// Strategy: trial division up to `cfg.trial_bound`, then primality
/// certification and Brent's cycle method on whatever composite survives.
/// Runs out of budget with a hard error rather than returning a partial
/// decomposition.
pub fn factor_integer(n: &Int, cfg: &FactorConfig) -> Result<Factorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    let m = n.abs();
    if m.is_one() {
        return Ok(Factorization { sign, factors });
    }

    if let Some(m64) = m.to_u64() {
        for (p, e) in factor_u64(m64, cfg)? {
            factors.insert(Int::from(p), e);
        }
        return Ok(Factorization { sign, factors });
    }

    // Big path: strip small primes, then split the rest.
    let mut rest = m;
    let mut p: u64 = 2;
    while p <= cfg.trial_bound.min(65_536) {
        let pi = Int::from(p);
        while (&rest % &pi).is_zero() {
            rest /= &pi;
            *factors.entry(pi.clone()).or_insert(0) += 1;
        }
        p = if p == 2 { 3 } else { p + 2 };
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        split_big(&rest, cfg, &mut factors)?;
    }
    Ok(Factorization { sign, factors })
}

fn split_big(
    n: &Int,
    cfg: &FactorConfig,
    out: &mut BTreeMap<Int, u32>,
) -> Result<(), ArithError> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(n64) = n.to_u64() {
        for (p, e) in factor_u64(n64, cfg)? {
            *out.entry(Int::from(p)).or_insert(0) += e;
        }
        return Ok(());
    }
    if is_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return Ok(());
    }
    if let Some(s) = exact_sqrt(n) {
        let mut inner = BTreeMap::new();
        split_big(&s, cfg, &mut inner)?;
        for (p, e) in inner {
            *out.entry(p).or_insert(0) += 2 * e;
        }
        return Ok(());
    }
    let d = brent_rho_big(n, cfg)
        .ok_or_else(|| ArithError::BudgetExceeded { remaining: n.clone() })?;
    split_big(&d, cfg, out)?;
    split_big(&(n / &d), cfg, out)
}

fn exact_sqrt(n: &Int) -> Option<Int> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

fn factor_u64(mut m: u64, cfg: &FactorConfig) -> Result<Vec<(u64, u32)>, ArithError> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e, &mut out);
        }
    }
    // 30-wheel over residues coprime to 2*3*5.
    const WHEEL: [u64; 8] = [7, 11, 13, 17, 19, 23, 29, 31];
    let mut base = 0u64;
    'outer: while m > 1 {
        for off in WHEEL {
            let p = base + off;
            if p > cfg.trial_bound || p.saturating_mul(p) > m {
                break 'outer;
            }
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e > 0 {
                push(p, e, &mut out);
            }
        }
        base += 30;
    }
    if m > 1 {
        split_u64(m, cfg, &mut out)?;
    }
    out.sort_unstable();
    Ok(out)
}

fn split_u64(
    n: u64,
    cfg: &FactorConfig,
    out: &mut Vec<(u64, u32)>,
) -> Result<(), ArithError> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u64(n) {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == n) {
            last.1 += 1;
        } else {
            out.push((n, 1));
        }
        return Ok(());
    }
    let d = brent_rho_u64(n, cfg)
        .ok_or(ArithError::BudgetExceeded { remaining: Int::from(n) })?;
    split_u64(d, cfg, out)?;
    split_u64(n / d, cfg, out)
}

/// Primality verdict.
///
/// Deterministic for inputs below 3.3e24 (Miller-Rabin over the first 12
/// primes, a proven witness set there); above that, 64 additional
/// pseudo-random bases bound the composite-acceptance probability by 4^-64.
pub fn is_prime(n: &Int) -> bool {
    if n.is_negative() || n < &int(2) {
        return false;
    }
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    if n.is_even() {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if !miller_rabin_big(n, &Int::from(b)) {
            return false;
        }
    }
    let deterministic_limit: Int = "318665857834031151167461".parse().unwrap();
    if n < &deterministic_limit {
        return true;
    }
    let mut state = n.to_u64_digits().1.iter().fold(0x9e3779b97f4a7c15u64, |a, &d| {
        a.rotate_left(17) ^ d.wrapping_mul(0xbf58476d1ce4e5b9)
    });
    for _ in 0..64 {
        state = splitmix64(&mut state);
        let b = Int::from(2 + state % 1_000_000_007);
        if !miller_rabin_big(n, &b) {
            return false;
        }
    }
    true
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn miller_rabin_big(n: &Int, base: &Int) -> bool {
    let one = Int::one();
    let nm1 = n - &one;
    let b = base % n;
    if b.is_zero() {
        return true;
    }
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = b.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&int(2), n);
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn brent_rho_u64(n: u64, cfg: &FactorConfig) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for round in 1..=cfg.rho_rounds as u64 {
        let c = cfg.rho_constant(round) % n;
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return Some(d);
        }
    }
    None
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn brent_rho_big(n: &Int, cfg: &FactorConfig) -> Option<Int> {
    let one = Int::one();
    for round in 1..=cfg.rho_rounds as u64 {
        let ci = Int::from(cfg.rho_constant(round));
        let f = |x: &Int| (x * x + &ci) % n;
        let mut x = int(2);
        let mut y = int(2);
        let mut d = one.clone();
        let mut count = 0u32;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            count += 1;
            if count > 1 << 18 {
                break;
            }
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Smallest `k >= 1` with `s^(k+1) > ratio`, decided by exact integer
/// cross-multiplication. Requires `s > 1` and `ratio >= 1`.
///
/// This is the ground-truth form of every closed-form floor expression of
/// the shape `1 + floor(log ...)` used by the corollary fast paths: each of
/// those floors is derived from exactly this power inequality.
pub fn min_k_exceeding(s: &Rat, ratio: &Rat) -> u32 {
    assert!(s > &Rat::one(), "min_k_exceeding requires s > 1");
    assert!(ratio >= &Rat::one(), "min_k_exceeding requires ratio >= 1");
    // Exponential search on k+1, then binary search the first power > ratio.
    let mut hi: u32 = 2;
    while &pow_rat(s, hi) <= ratio {
        hi = hi.checked_mul(2).expect("exponent overflow");
    }
    let mut lo: u32 = hi / 2; // s^lo <= ratio (or lo < 2)
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if &pow_rat(s, mid) > ratio {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.max(2) - 1
}
