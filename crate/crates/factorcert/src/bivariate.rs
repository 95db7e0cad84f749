//! Bivariate certificates over Q(X): polynomials in Y with coefficients
//! in Q[X], their divisor theory by degrees, and the degree-comparison
//! criteria bounding the number of irreducible factors over Q(X).
//!
//! All absolute values are replaced by plain degree comparisons: degrees
//! of divisors are integers and the (k+1)-th-root bound becomes the
//! rational threshold `(deg f(X,b(X)) - deg f(X,a(X)))/(k+1)`.

use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat, rat_str};
use crate::divisors::DivisorClass;
use crate::poly::{IntPoly, RatPoly, poly_kth_root, print_canonical_rat, rational_roots};
use crate::report::{CriterionReport, Route};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BivarError {
    #[error("degree {deg} exceeds the factorization degree cap {cap}")]
    DegreeCap { deg: usize, cap: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPoly,
}

/// Polynomial in Y with coefficients in Q[X], dense in Y with a nonzero
/// leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    y_coeffs: Vec<RatPoly>,
}

impl BivarPoly {
    pub fn new(mut y_coeffs: Vec<RatPoly>) -> Self {
        while y_coeffs.last().is_some_and(|c| c.is_zero()) {
            y_coeffs.pop();
        }
        BivarPoly { y_coeffs }
    }

    pub fn zero() -> Self {
        BivarPoly { y_coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    /// Degree in Y; `None` for the zero polynomial.
    pub fn y_degree(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    pub fn y_coeffs(&self) -> &[RatPoly] {
        &self.y_coeffs
    }

    pub fn y_coeff(&self, i: usize) -> RatPoly {
        self.y_coeffs.get(i).cloned().unwrap_or_else(RatPoly::zero)
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero();
        }
        let mut out = vec![RatPoly::zero(); self.y_coeffs.len() + other.y_coeffs.len() - 1];
        for (i, a) in self.y_coeffs.iter().enumerate() {
            for (j, b) in other.y_coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BivarPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> BivarPoly {
        let mut acc = BivarPoly::new(vec![RatPoly::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl std::fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.y_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", print_canonical_rat(c))?,
                1 => write!(f, "({})*y", print_canonical_rat(c))?,
                _ => write!(f, "({})*y^{i}", print_canonical_rat(c))?,
            }
        }
        Ok(())
    }
}

/// Exact composition in Y: the value `f(X, s(X))`, by Horner in Y.
pub fn substitute_y(f: &BivarPoly, s: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    for c in f.y_coeffs.iter().rev() {
        acc = acc.mul(s).add(c);
    }
    acc
}

/// Formal partial derivative in Y.
pub fn partial_y(f: &BivarPoly) -> BivarPoly {
    if f.y_coeffs.len() <= 1 {
        return BivarPoly::zero();
    }
    BivarPoly::new(
        f.y_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rat::from_integer(Int::from(i))))
            .collect(),
    )
}

/// Complete factorization over Q: `value = constant * prod factors^mult`,
/// factors primitive with integer coefficients and positive leading
/// coefficient, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFactorization {
    pub constant: Rat,
    pub factors: Vec<(RatPoly, u32)>,
}

impl RatFactorization {
    pub fn product(&self) -> RatPoly {
        let mut acc = RatPoly::constant(self.constant.clone());
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn total_count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| *m).sum()
    }
}

/// Factors a rational-coefficient polynomial into irreducibles over Q:
/// squarefree split by gcd with the derivative, rational-root stripping,
/// then Kronecker interpolation for the remaining factors. Degrees above
/// `degree_cap` are refused.
pub fn factor_ratpoly(value: &RatPoly, degree_cap: usize) -> Result<RatFactorization, BivarError> {
    if value.is_zero() {
        return Err(BivarError::ZeroPoly);
    }
    let deg = value.degree().unwrap();
    if deg > degree_cap {
        return Err(BivarError::DegreeCap { deg, cap: degree_cap });
    }
    if deg == 0 {
        return Ok(RatFactorization { constant: value.leading(), factors: Vec::new() });
    }
    let mut factors: Vec<(RatPoly, u32)> = Vec::new();
    let monic = value.monic();
    let dm = monic.derivative();
    let g0 = monic.gcd(&dm);
    let parts: Vec<(RatPoly, u32)> = if g0.is_constant() {
        vec![(monic.clone(), 1)]
    } else {
        // Yun's algorithm.
        let mut out = Vec::new();
        let mut b = monic.exact_div(&g0).expect("gcd divides");
        let mut d = dm.exact_div(&g0).expect("gcd divides").sub(&b.derivative());
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
    };
    for (sqfree, mult) in parts {
        let (_, prim) = sqfree.to_primitive_int();
        for irr in factor_squarefree_int(&prim) {
            factors.push((irr.to_rat(), mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree().cmp(&b.degree()).then_with(|| {
            let (_, pa) = a.to_primitive_int();
            let (_, pb) = b.to_primitive_int();
            pa.coeffs().cmp(pb.coeffs())
        })
    });
    // The constant is pinned down by the leading coefficients.
    let mut lead = Rat::one();
    for (g, m) in &factors {
        for _ in 0..*m {
            lead *= g.leading();
        }
    }
    let constant = value.leading() / lead;
    Ok(RatFactorization { constant, factors })
}

fn factor_squarefree_int(p: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = p.to_rat();
    for root in rational_roots(p) {
        let lin = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
        rest = rest.exact_div(&lin.to_rat()).expect("verified root divides");
        out.push(lin.primitive());
    }
    let (_, mut g) = rest.to_primitive_int();
    let mut d = 2usize;
    while g.degree().is_some_and(|n| n >= 2 * d) {
        match kronecker_search(&g, d) {
            Some(fac) => {
                let quot = g.to_rat().exact_div(&fac.to_rat()).expect("factor divides");
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
    out
}

fn kronecker_search(g: &IntPoly, d: usize) -> Option<IntPoly> {
    let mut pool: Vec<(usize, Int, Vec<Int>)> = Vec::new();
    let mut x = 0i64;
    for _ in 0..40 {
        let xi = Int::from(x);
        x = if x > 0 { -x } else { -x + 1 };
        let v = g.eval(&xi);
        if v.is_zero() {
            continue;
        }
        let divs = small_divisors(&v.abs());
        pool.push((divs.len(), xi, divs));
        if pool.len() >= d + 4 {
            break;
        }
    }
    pool.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.abs().cmp(&b.1.abs())));
    if pool.len() < d + 1 {
        return None;
    }
    let base: Vec<(Int, Vec<Int>)> = pool.into_iter().take(d + 1).map(|(_, x, v)| (x, v)).collect();
    let basis: Vec<RatPoly> = (0..=d)
        .map(|i| {
            let mut num = RatPoly::one();
            let mut den = Rat::one();
            for (j, (xj, _)) in base.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&RatPoly::new(vec![-Rat::from_integer(xj.clone()), Rat::one()]));
                den *= Rat::from_integer(&base[i].0 - xj);
            }
            num.scale(&(Rat::one() / den))
        })
        .collect();
    let sizes: Vec<usize> = base
        .iter()
        .enumerate()
        .map(|(i, (_, divs))| if i == 0 { divs.len() } else { 2 * divs.len() })
        .collect();
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut cand = RatPoly::zero();
        for i in 0..=d {
            let divs = &base[i].1;
            let v = if i == 0 || idx[i] < divs.len() {
                divs[idx[i] % divs.len()].clone()
            } else {
                -&divs[idx[i] - divs.len()]
            };
            cand = cand.add(&basis[i].scale(&Rat::from_integer(v)));
        }
        if cand.degree() == Some(d) && cand.coeffs().iter().all(|c| c.denom().is_one()) {
            let ip = IntPoly::new(cand.coeffs().iter().map(|c| c.numer().clone()).collect());
            if (g.leading() % ip.leading()).is_zero()
                && g.to_rat().exact_div(&ip.to_rat()).is_some()
            {
                return Some(ip.primitive());
            }
        }
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

fn small_divisors(n: &Int) -> Vec<Int> {
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

/// One monic divisor of a Q[X] value with its classification.
#[derive(Debug, Clone)]
pub struct PolyDivisor {
    pub poly: RatPoly,
    pub degree: usize,
    /// Exponent of each base irreducible factor in this divisor.
    pub exponents: Vec<u32>,
    pub admissible: bool,
    pub unitary: bool,
}

/// All monic divisors of `base` (one per associate class; units of Q[X]
/// are the nonzero constants) classified against a companion value `G`:
/// `D` is admissible when `gcd(D, base/D)` divides `gcd(base, G)` and
/// unitary when that inner gcd is 1.
#[derive(Debug, Clone)]
pub struct PolyDivisorSet {
    pub base: RatPoly,
    /// Monic irreducible factors with multiplicities.
    pub factors: Vec<(RatPoly, u32)>,
    pub divisors: Vec<PolyDivisor>,
}

impl PolyDivisorSet {
    pub fn class_degrees(&self, class: DivisorClass) -> Vec<usize> {
        let mut degs: Vec<usize> = self
            .divisors
            .iter()
            .filter(|d| match class {
                DivisorClass::Admissible => d.admissible,
                DivisorClass::Unitary => d.unitary,
                DivisorClass::Any => true,
            })
            .map(|d| d.degree)
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }
}

/// Builds the classified divisor set of `base` against `companion`.
pub fn poly_divisor_set(
    base: &RatPoly,
    companion: &RatPoly,
    degree_cap: usize,
) -> Result<PolyDivisorSet, BivarError> {
    let fact = factor_ratpoly(base, degree_cap)?;
    let monic_factors: Vec<(RatPoly, u32)> =
        fact.factors.iter().map(|(g, m)| (g.monic(), *m)).collect();
    let w = base.gcd(companion);
    // Multiplicity of each base factor inside gcd(base, companion).
    let caps: Vec<u32> = monic_factors
        .iter()
        .map(|(g, _)| {
            let mut v = 0u32;
            let mut cur = w.clone();
            while let Some(next) = cur.exact_div(g) {
                v += 1;
                cur = next;
            }
            v
        })
        .collect();
    let mut divisors = Vec::new();
    let mut exps = vec![0u32; monic_factors.len()];
    loop {
        let mut poly = RatPoly::one();
        let mut degree = 0usize;
        let mut admissible = true;
        let mut unitary = true;
        for (i, (g, m)) in monic_factors.iter().enumerate() {
            let e = exps[i];
            for _ in 0..e {
                poly = poly.mul(g);
            }
            degree += e as usize * g.degree().unwrap_or(0);
            let inner = e.min(m - e);
            if inner > caps[i] {
                admissible = false;
            }
            if inner > 0 {
                unitary = false;
            }
        }
        divisors.push(PolyDivisor { poly, degree, exponents: exps.clone(), admissible, unitary });
        // Odometer over exponent vectors bounded by the multiplicities.
        let mut pos = 0;
        loop {
            if pos == monic_factors.len() {
                divisors.sort_by_key(|a| a.degree);
                return Ok(PolyDivisorSet {
                    base: base.clone(),
                    factors: monic_factors,
                    divisors,
                });
            }
            exps[pos] += 1;
            if exps[pos] <= monic_factors[pos].1 {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// Extended degree: `None` encodes the degree of the zero polynomial,
/// below every integer.
fn deg_ext(p: &RatPoly) -> Option<i64> {
    p.degree().map(|d| d as i64)
}

/// The largest degree difference `deg d2 - deg d1` not exceeding `delta`,
/// over the class pairs; always >= 0 since the pair (1, 1) qualifies.
fn bivar_qk(da: &PolyDivisorSet, db: &PolyDivisorSet, delta: &Rat, class: DivisorClass) -> i64 {
    let d1 = da.class_degrees(class);
    let d2 = db.class_degrees(class);
    let mut best = 0i64;
    for &x2 in &d2 {
        for &x1 in &d1 {
            let diff = x2 as i64 - x1 as i64;
            if diff > best && &Rat::from_integer(Int::from(diff)) <= delta {
                best = diff;
            }
        }
    }
    best
}

/// Degree-comparison certificate: `f(X,Y)` is the product of at most `k`
/// irreducible factors over Q(X) when the degree of `b(X)` clears the
/// coefficient-degree profile of `f` by more than the divisor-degree
/// ratio bound q_k. The unitary variant additionally demands both values
/// be coprime with the corresponding Y-derivative values.
pub fn certify_thm5(
    f: &BivarPoly,
    a_x: &RatPoly,
    b_x: &RatPoly,
    k: u32,
    class: DivisorClass,
    degree_cap: usize,
) -> CriterionReport {
    let mut rep = CriterionReport::not_certified(f.to_string(), class);
    assert!(k >= 1);
    rep.evidence.a = Some(print_canonical_rat(a_x));
    rep.evidence.b = Some(print_canonical_rat(b_x));
    let n = match f.y_degree() {
        Some(n) if n >= 1 => n,
        _ => {
            rep.check("deg_Y f >= 1", false);
            return rep;
        }
    };
    if !rep.check("a_0(X) != 0 and a_n(X) != 0", !f.y_coeff(0).is_zero()) {
        return rep;
    }
    let value_a = substitute_y(f, a_x);
    let value_b = substitute_y(f, b_x);
    rep.evidence.value_a_poly = Some(print_canonical_rat(&value_a));
    rep.evidence.value_b_poly = Some(print_canonical_rat(&value_b));
    if !rep.check("f(X,a(X)) * f(X,b(X)) != 0", !value_a.is_zero() && !value_b.is_zero()) {
        return rep;
    }
    let deg_a_val = value_a.degree().unwrap() as i64;
    let deg_b_val = value_b.degree().unwrap() as i64;
    rep.evidence.deg_value_a = Some(deg_a_val);
    rep.evidence.deg_value_b = Some(deg_b_val);
    let delta = Rat::new(Int::from(deg_b_val - deg_a_val), Int::from(k + 1));
    rep.evidence.delta_k = Some(rat_str(&delta));
    if !rep.check("Delta_k >= 0", !delta.is_negative()) {
        return rep;
    }
    let dy = partial_y(f);
    let comp_a = substitute_y(&dy, a_x);
    let comp_b = substitute_y(&dy, b_x);
    if class == DivisorClass::Unitary {
        let ok = value_a.gcd(&comp_a).degree() == Some(0)
            && value_b.gcd(&comp_b).degree() == Some(0);
        if !rep.check(
            "gcd(f(X,a), dY f(X,a)) = 1 and gcd(f(X,b), dY f(X,b)) = 1",
            ok,
        ) {
            return rep;
        }
    }
    let da = match poly_divisor_set(&value_a, &comp_a, degree_cap) {
        Ok(s) => s,
        Err(e) => {
            rep.check(&format!("factorization of f(X,a(X)) ({e})"), false);
            return rep;
        }
    };
    let db = match poly_divisor_set(&value_b, &comp_b, degree_cap) {
        Ok(s) => s,
        Err(e) => {
            rep.check(&format!("factorization of f(X,b(X)) ({e})"), false);
            return rep;
        }
    };
    let q = bivar_qk(&da, &db, &delta, class);
    rep.evidence.q_degree = Some(q);
    // Threshold: max{deg a(X), max_i (deg a_i - deg a_n)/(n - i)} + q_k.
    let an_deg = f.y_coeff(n).degree().unwrap() as i64;
    let mut profile: Option<Rat> = None;
    for i in 0..n {
        if let Some(di) = deg_ext(&f.y_coeff(i)) {
            let t = Rat::new(Int::from(di - an_deg), Int::from((n - i) as i64));
            if profile.as_ref().is_none_or(|m| &t > m) {
                profile = Some(t);
            }
        }
    }
    let deg_ax = deg_ext(a_x).map(|d| Rat::from_integer(Int::from(d)));
    let base_threshold: Option<Rat> = match (deg_ax, profile) {
        (Some(x), Some(y)) => Some(if x > y { x } else { y }),
        (Some(x), None) => Some(x),
        (None, y) => y,
    };
    let threshold = base_threshold.map(|t| t + Rat::from_integer(Int::from(q)));
    rep.evidence.degree_threshold = Some(
        threshold.as_ref().map_or_else(|| "-inf".to_string(), rat_str),
    );
    let deg_bx = deg_ext(b_x);
    let cond = match (&deg_bx, &threshold) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(db), Some(t)) => &Rat::from_integer(Int::from(*db)) > t,
    };
    if rep.check("deg b(X) > max{deg a(X), coefficient profile} + q_k", cond) {
        rep.route = Some(if class == DivisorClass::Unitary { Route::Thm7 } else { Route::Thm5 });
        rep.certified_k = Some(k);
    }
    rep
}

/// Perfect-power specialization: with constant `a_0`, a dominant pair of
/// top coefficient degrees and `deg g` past their difference, an exact
/// factorization `f(X,g(X)) = h(X)^k` with `h` irreducible certifies at
/// most `k` factors over Q(X). Finds the maximal such `k`.
pub fn certify_coro6(f: &BivarPoly, g: &RatPoly, degree_cap: usize) -> CriterionReport {
    let mut rep = CriterionReport::not_certified(f.to_string(), DivisorClass::Any);
    rep.evidence.b = Some(print_canonical_rat(g));
    let n = match f.y_degree() {
        Some(n) if n >= 1 => n,
        _ => {
            rep.check("deg_Y f >= 1", false);
            return rep;
        }
    };
    let a0 = f.y_coeff(0);
    if !rep.check("a_0 is a nonzero constant", a0.degree() == Some(0)) {
        return rep;
    }
    let an_deg = f.y_coeff(n).degree().unwrap() as i64;
    let top_deg = deg_ext(&f.y_coeff(n - 1));
    let profile_ok = top_deg.is_some_and(|t| t >= an_deg)
        && (0..n.saturating_sub(1)).all(|i| deg_ext(&f.y_coeff(i)).is_none_or(|d| d <= an_deg));
    if !rep.check(
        "deg a_(n-1) >= deg a_n >= max{deg a_0, ..., deg a_(n-2)}",
        profile_ok,
    ) {
        return rep;
    }
    let g_ok = deg_ext(g).is_some_and(|dg| dg > top_deg.unwrap() - an_deg);
    if !rep.check("deg g > deg a_(n-1) - deg a_n", g_ok) {
        return rep;
    }
    let value = substitute_y(f, g);
    rep.evidence.value_b_poly = Some(print_canonical_rat(&value));
    if !rep.check("f(X,g(X)) != 0 and nonconstant", value.degree() > Some(0)) {
        return rep;
    }
    let deg_f = value.degree().unwrap() as u32;
    // Largest k with an exact k-th root; by unique factorization the root
    // at that k is the only candidate for an irreducible h.
    let mut found: Option<(u32, RatPoly)> = None;
    let mut k = deg_f;
    while k >= 1 {
        if deg_f.is_multiple_of(k) {
            if let Some(h) = poly_kth_root(&value, k) {
                found = Some((k, h));
                break;
            }
        }
        k -= 1;
    }
    let (k, h) = found.expect("k = 1 always yields the value itself");
    rep.evidence.kth_root = Some(print_canonical_rat(&h));
    let irreducible = match factor_ratpoly(&h, degree_cap) {
        Ok(fact) => fact.is_irreducible(),
        Err(e) => {
            rep.check(&format!("factorization of the k-th root ({e})"), false);
            return rep;
        }
    };
    if rep.check("the k-th root h is irreducible over Q", irreducible) {
        rep.route = Some(Route::Coro6);
        rep.certified_k = Some(k);
    }
    rep
}
