//! Dense univariate polynomials with exact integer or rational
//! coefficients: parsing, printing, evaluation, Taylor shift, rational
//! roots, and exact k-th roots.
//!
//! Coefficients are stored lowest degree first; the leading entry of a
//! nonzero polynomial is nonzero. The zero polynomial has an empty
//! coefficient vector and degree `None`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {what}")]
    Syntax { pos: usize, what: String },
    #[error("empty polynomial text")]
    Empty,
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Int) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn leading(&self) -> Int {
        self.coeffs.last().cloned().unwrap_or_else(Int::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    /// `f(-X)`.
    pub fn flip_sign_of_x(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Int) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Gcd of all coefficients (positive), times the sign of the leading
    /// coefficient. Zero polynomial has content 0.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Divides out the content, leaving a primitive polynomial with
    /// positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![Rat::one()] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading();
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &dlead;
            quot[i - dd] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = dc * &q;
                rem[i - dd + j] -= t;
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }

    /// Monic generator of the ideal (self, other): the gcd normalized to
    /// leading coefficient 1. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient 1 (zero polynomial unchanged).
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let lead = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// `f(-X)`.
    pub fn flip_sign_of_x(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Clears denominators and strips integer content: returns `(c, p)`
    /// with `self = c * p`, `p` primitive with positive leading coefficient.
    pub fn to_primitive_int(&self) -> (Rat, IntPoly) {
        if self.is_zero() {
            return (Rat::one(), IntPoly::zero());
        }
        let mut den = Int::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let ip = IntPoly::new(ints);
        let content = ip.content();
        let prim = ip.primitive();
        (Rat::new(content, den), prim)
    }
}

/// Exact Taylor shift: returns `g` with `g(X) = f(X + c)`.
///
/// Repeated synthetic division by `(X - (-c))`; the binomial-sum formula
/// for the shifted coefficients is used as a cross-check in the tests.
pub fn taylor_shift(f: &RatPoly, c: &Rat) -> RatPoly {
    if f.coeffs.is_empty() || c.is_zero() {
        return f.clone();
    }
    let n = f.coeffs.len();
    let mut a = f.coeffs.clone();
    for j in 0..n - 1 {
        for i in (j..n - 1).rev() {
            let t = &a[i + 1] * c;
            a[i] += t;
        }
    }
    RatPoly::new(a)
}

/// [`taylor_shift`] for integer polynomials.
pub fn taylor_shift_int(f: &IntPoly, c: &Rat) -> RatPoly {
    taylor_shift(&f.to_rat(), c)
}

/// All rational roots of a nonzero polynomial, without multiplicity,
/// sorted ascending. Candidates `p/q` with `p | a_0`, `q | a_n` are
/// verified by exact evaluation.
pub fn rational_roots(f: &IntPoly) -> Vec<Rat> {
    assert!(!f.is_zero(), "rational_roots requires a nonzero polynomial");
    let mut roots = Vec::new();
    // Strip powers of X so the trailing coefficient is nonzero.
    let mut low = 0;
    while f.coeff(low).is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    let g = IntPoly::new(f.coeffs[low..].to_vec());
    if g.degree() == Some(0) {
        roots.sort();
        return roots;
    }
    let a0 = g.coeff(0).abs();
    let an = g.leading().abs();
    let num_divs = divisors_abs(&a0);
    let den_divs = divisors_abs(&an);
    for p in &num_divs {
        for q in &den_divs {
            let cand = Rat::new(p.clone(), q.clone());
            for c in [cand.clone(), -cand] {
                if g.eval_rat(&c).is_zero() && !roots.contains(&c) {
                    roots.push(c);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors_abs(n: &Int) -> Vec<Int> {
    // Plain sqrt enumeration; the arguments here are single coefficients.
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let co = &n / &d;
            if co != d {
                out.push(co);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Exact k-th root: returns `h` with `h^k = f`, or `None` when no such
/// polynomial exists over Q. For even `k` the root with positive leading
/// coefficient is returned.
pub fn poly_kth_root(f: &RatPoly, k: u32) -> Option<RatPoly> {
    assert!(k >= 1);
    if k == 1 {
        return Some(f.clone());
    }
    if f.is_zero() {
        return Some(RatPoly::zero());
    }
    let n = f.degree().unwrap();
    if !n.is_multiple_of(k as usize) {
        return None;
    }
    let m = n / k as usize;
    let lead_root = rat_kth_root(&f.leading(), k)?;
    // Coefficients of h from the top down: the X^(n-j) coefficient of h^k
    // depends linearly on h_{m-j} once h_m..h_{m-j+1} are fixed.
    let mut h = vec![Rat::zero(); m + 1];
    h[m] = lead_root;
    let denom = Rat::from_integer(Int::from(k)) * pow_rat_poly(&h[m], k - 1);
    for j in 1..=m {
        let partial = RatPoly::new(h.clone()).pow(k);
        let current = partial.coeff(n - j);
        let want = f.coeff(n - j);
        h[m - j] = (want - current) / &denom;
    }
    let cand = RatPoly::new(h);
    if cand.pow(k) == *f {
        Some(cand)
    } else {
        None
    }
}

fn pow_rat_poly(r: &Rat, e: u32) -> Rat {
    crate::arith::pow_rat(r, e)
}

/// Rational k-th root when it exists exactly.
fn rat_kth_root(r: &Rat, k: u32) -> Option<Rat> {
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let negative = r.is_negative();
    if negative && k.is_multiple_of(2) {
        return None;
    }
    let num = int_kth_root(&r.numer().abs(), k)?;
    let den = int_kth_root(r.denom(), k)?;
    let mut out = Rat::new(num, den);
    if negative {
        out = -out;
    }
    Some(out)
}

fn int_kth_root(n: &Int, k: u32) -> Option<Int> {
    let r = n.nth_root(k);
    if &r.pow(k) == n {
        Some(r)
    } else {
        None
    }
}

/// Grammar (case-insensitive variable `x`, whitespace ignored):
/// a sum of terms `[+|-] [coeff] [x [^ exp]]` with integer coefficients
/// and nonnegative integer exponents, e.g. `-3x^2 + x - 7`.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let mut terms: Vec<(usize, Int)> = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(ParseError::Empty);
    }
    while pos < chars.len() {
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        let term_start = pos;
        let mut sign = 1i32;
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -1;
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !terms.is_empty() {
            return Err(ParseError::Syntax {
                pos: term_start,
                what: "expected '+' or '-' between terms".into(),
            });
        }
        // Optional integer coefficient.
        let digit_start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: Option<Int> = if pos > digit_start {
            let s: String = chars[digit_start..pos].iter().collect();
            Some(s.parse().expect("digit run parses"))
        } else {
            None
        };
        skip_ws(&mut pos);
        // Optional variable with optional exponent.
        let mut exp: Option<usize> = None;
        if pos < chars.len() && (chars[pos] == 'x' || chars[pos] == 'X') {
            pos += 1;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                skip_ws(&mut pos);
                let e_start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == e_start {
                    return Err(ParseError::Syntax {
                        pos: e_start,
                        what: "expected exponent digits after '^'".into(),
                    });
                }
                let s: String = chars[e_start..pos].iter().collect();
                let e: usize = s.parse().map_err(|_| ParseError::Syntax {
                    pos: e_start,
                    what: "exponent out of range".into(),
                })?;
                exp = Some(e);
            } else {
                exp = Some(1);
            }
        }
        let (e, c) = match (coeff, exp) {
            (Some(c), Some(e)) => (e, c),
            (Some(c), None) => (0, c),
            (None, Some(e)) => (e, Int::one()),
            (None, None) => {
                return Err(ParseError::Syntax {
                    pos: term_start,
                    what: "expected a coefficient or 'x'".into(),
                })
            }
        };
        terms.push((e, if sign < 0 { -c } else { c }));
        skip_ws(&mut pos);
    }
    let deg = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut coeffs = vec![Int::zero(); deg + 1];
    for (e, c) in terms {
        coeffs[e] += c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Canonical printer, the inverse of [`parse_poly`] on integer
/// polynomials: highest degree first, unit coefficients and `^1` omitted,
/// no whitespace. The zero polynomial prints as `0`.
pub fn print_canonical(f: &IntPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for i in (0..f.coeffs.len()).rev() {
        let c = &f.coeffs[i];
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() || i == 0 {
            out.push_str(&a.to_string());
        }
        if i >= 1 {
            out.push('x');
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

/// Printer for rational-coefficient polynomials; coefficients appear as
/// `n/d` where non-integral.
pub fn print_canonical_rat(f: &RatPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for i in (0..f.coeffs.len()).rev() {
        let c = &f.coeffs[i];
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() || i == 0 {
            out.push_str(&crate::arith::rat_str(&a));
        }
        if i >= 1 {
            out.push('x');
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_canonical(self))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_canonical_rat(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_poly("35x^4+12x^2+1").unwrap(), p(&[1, 0, 12, 0, 35]));
        assert_eq!(parse_poly("x").unwrap(), p(&[0, 1]));
        assert_eq!(parse_poly("42x^3+x^2+5x+1").unwrap(), p(&[1, 5, 1, 42]));
        assert_eq!(parse_poly("-3x^2 + x - 7").unwrap(), p(&[-7, 1, -3]));
        assert_eq!(parse_poly("X^2").unwrap(), p(&[0, 0, 1]));
        assert_eq!(parse_poly(" 0 ").unwrap(), IntPoly::zero());
        assert_eq!(parse_poly("x+x").unwrap(), p(&[0, 2]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_poly("3x^") {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("3y").is_err());
        assert!(parse_poly("x^-2").is_err());
        assert!(parse_poly("2 2").is_err());
    }

    #[test]
    fn eval_examples() {
        let f = p(&[1, 0, 12, 0, 35]);
        assert_eq!(f.eval(&int(1)), int(48));
        assert_eq!(f.eval(&int(2)), int(609));
        assert_eq!(f.eval(&int(0)), int(1));
    }

    #[test]
    fn derivative_examples() {
        let f = p(&[1, 0, 12, 0, 35]);
        assert_eq!(f.derivative(), p(&[0, 24, 0, 140]));
        assert_eq!(p(&[7]).derivative(), IntPoly::zero());
        assert_eq!(f.derivative().eval(&int(2)), int(1168));
    }

    #[test]
    fn taylor_shift_examples() {
        let sq = p(&[0, 0, 1]);
        let shifted = taylor_shift_int(&sq, &Rat::one());
        assert_eq!(shifted, p(&[1, 2, 1]).to_rat());
        let f = p(&[1, 5, 1, 42]);
        assert_eq!(taylor_shift_int(&f, &Rat::zero()), f.to_rat());
        let g = taylor_shift_int(&f, &rat(1, 2));
        assert_eq!(g.coeff(0), f.eval_rat(&rat(1, 2)));
    }

    #[test]
    fn taylor_shift_matches_binomial_formula() {
        // Cross-check the synthetic-division shift against the direct
        // binomial sum b_i = sum_j a_j C(j, i) c^(j-i).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let deg = rng.gen_range(0..7usize);
            let f = IntPoly::new((0..=deg).map(|_| int(rng.gen_range(-9i64..=9))).collect());
            let c = rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4));
            let got = taylor_shift_int(&f, &c);
            let n = f.coeffs().len();
            let want: Vec<Rat> = (0..n)
                .map(|i| {
                    let mut acc = Rat::zero();
                    for j in i..n {
                        let binom = binomial(j, i);
                        acc += Rat::from_integer(&f.coeff(j) * binom)
                            * crate::arith::pow_rat(&c, (j - i) as u32);
                    }
                    acc
                })
                .collect();
            assert_eq!(got, RatPoly::new(want));
        }
    }

    fn binomial(n: usize, k: usize) -> Int {
        let mut acc = Int::one();
        for i in 0..k {
            acc = acc * Int::from(n - i) / Int::from(i + 1);
        }
        acc
    }

    #[test]
    fn rational_roots_examples() {
        assert!(rational_roots(&p(&[1, 0, 12, 0, 35])).is_empty());
        assert_eq!(rational_roots(&p(&[-1, 1])), vec![Rat::one()]);
        // Exhaustive candidate check: -1/6 is a root of 42x^3+x^2+5x+1.
        assert_eq!(rational_roots(&p(&[1, 5, 1, 42])), vec![rat(-1, 6)]);
        assert_eq!(rational_roots(&p(&[0, 0, 3])), vec![Rat::zero()]);
    }

    #[test]
    fn kth_root_examples() {
        let f = p(&[1, 0, 4, 4, 4, 8, 4]).to_rat();
        let h = poly_kth_root(&f, 2).unwrap();
        assert_eq!(h, p(&[1, 0, 2, 2]).to_rat());
        assert_eq!(
            poly_kth_root(&p(&[0, 0, 1]).to_rat(), 2).unwrap(),
            p(&[0, 1]).to_rat()
        );
        assert!(poly_kth_root(&p(&[1, 1]).to_rat(), 2).is_none());
        assert!(poly_kth_root(&p(&[0, 0, 2]).to_rat(), 2).is_none());
    }

    #[test]
    fn kth_root_recovers_random_cubes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let h = RatPoly::new(
                (0..=3)
                    .map(|i| {
                        if i == 3 {
                            rat(rng.gen_range(1i64..=5), 1)
                        } else {
                            rat(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3))
                        }
                    })
                    .collect(),
            );
            for k in 2..=4u32 {
                let f = h.pow(k);
                let mut expect = h.clone();
                if k % 2 == 0 && expect.leading().is_negative() {
                    expect = expect.neg();
                }
                assert_eq!(poly_kth_root(&f, k), Some(expect));
            }
        }
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_canonical(&p(&[1, 0, 12, 0, 35])), "35x^4+12x^2+1");
        assert_eq!(print_canonical(&IntPoly::zero()), "0");
        assert_eq!(print_canonical(&p(&[-1, 1])), "x-1");
        assert_eq!(print_canonical(&p(&[0, -1])), "-x");
        assert_eq!(print_canonical(&p(&[-7])), "-7");
    }

    #[test]
    fn divrem_and_gcd() {
        let a = p(&[-1, 0, 1]).to_rat(); // x^2 - 1
        let b = p(&[-1, 1]).to_rat(); // x - 1
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, 1]).to_rat());
        let g = a.gcd(&p(&[1, 1]).to_rat());
        assert_eq!(g, p(&[1, 1]).to_rat());
        assert_eq!(a.gcd(&RatPoly::zero()), a.monic());
    }

    proptest! {
        #[test]
        fn shift_roundtrip(coeffs in proptest::collection::vec(-20i64..=20, 1..7),
                           cn in -8i64..=8, cd in 1i64..=5) {
            let f = IntPoly::new(coeffs.iter().map(|&c| int(c)).collect()).to_rat();
            let c = rat(cn, cd);
            let back = taylor_shift(&taylor_shift(&f, &c), &(-c.clone()));
            prop_assert_eq!(back, f);
        }

        #[test]
        fn shift_agrees_with_eval(coeffs in proptest::collection::vec(-20i64..=20, 1..7),
                                  cn in -8i64..=8, cd in 1i64..=5,
                                  xn in -8i64..=8, xd in 1i64..=5) {
            let f = IntPoly::new(coeffs.iter().map(|&c| int(c)).collect());
            let c = rat(cn, cd);
            let x = rat(xn, xd);
            let g = taylor_shift_int(&f, &c);
            prop_assert_eq!(g.eval(&x), f.eval_rat(&(x.clone() + c)));
        }

        #[test]
        fn parse_print_roundtrip(coeffs in proptest::collection::vec(-99i64..=99, 1..8)) {
            let f = IntPoly::new(coeffs.iter().map(|&c| int(c)).collect());
            let printed = print_canonical(&f);
            let back = parse_poly(&printed).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
