//! The divisor-ratio engine: the largest class ratio `d2/d1` not exceeding
//! the (k+1)-th root of `|f(b)|/|f(a)|`, and the smallest `k` that forces
//! that ratio down to 1.
//!
//! Every root comparison `d2/d1 <= (|f(b)|/|f(a)|)^(1/(k+1))` is evaluated
//! as the integer inequality `d2^(k+1) * |f(a)| <= d1^(k+1) * |f(b)|`;
//! no real-valued root is ever materialized, so ties at the bound are
//! decided exactly and are included.

use num_traits::{One, ToPrimitive};

use crate::arith::{Int, Rat, min_k_exceeding};
use crate::divisors::{DivisorClass, DivisorSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatioError {
    #[error("requires 0 < |f(a)| < |f(b)|, got |f(a)| = {fa} and |f(b)| = {fb}")]
    ValueOrder { fa: Int, fb: Int },
}

/// The exact maximum ratio together with a witness pair attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QkResult {
    pub k: u32,
    /// Maximum of `d2/d1` over the class, subject to the root bound; >= 1.
    pub q: Rat,
    /// `(d1, d2)` attaining the maximum; the lexicographically smallest
    /// `(d2, d1)` among ties.
    pub witness: (Int, Int),
    pub class: DivisorClass,
}

/// Exact maximum of `d2/d1` over the chosen divisor class subject to
/// `(d2/d1)^(k+1) <= |f(b)|/|f(a)|`. Requires `da.value() < db.value()`.
pub fn compute_qk(
    da: &DivisorSet,
    db: &DivisorSet,
    k: u32,
    class: DivisorClass,
) -> Result<QkResult, RatioError> {
    if da.value() >= db.value() {
        return Err(RatioError::ValueOrder {
            fa: da.value().clone(),
            fb: db.value().clone(),
        });
    }
    assert!(k >= 1, "compute_qk requires k >= 1");
    let e = k + 1;
    let (d1, d2) = match qk_search_u64(da, db, e, class) {
        Some(pair) => (Int::from(pair.0), Int::from(pair.1)),
        None => qk_search_big(da, db, e, class),
    };
    Ok(QkResult {
        k,
        q: Rat::new(d2.clone(), d1.clone()),
        witness: (d1, d2),
        class,
    })
}

/// Smallest `k >= 1` with `compute_qk(.., k, class).q == 1`.
///
/// Equals `min_k_exceeding(s, |f(b)|/|f(a)|)` where `s` is the least class
/// ratio exceeding 1; `s` always exists because `db.value()/1 > 1`.
pub fn min_k_with_unit_ratio(
    da: &DivisorSet,
    db: &DivisorSet,
    class: DivisorClass,
) -> Result<u32, RatioError> {
    let s = least_ratio_above_one(da, db, class)?;
    let ratio = Rat::new(db.value().clone(), da.value().clone());
    Ok(min_k_exceeding(&s, &ratio))
}

/// Least `d2/d1 > 1` over the class. Requires `da.value() < db.value()`.
pub fn least_ratio_above_one(
    da: &DivisorSet,
    db: &DivisorSet,
    class: DivisorClass,
) -> Result<Rat, RatioError> {
    if da.value() >= db.value() {
        return Err(RatioError::ValueOrder {
            fa: da.value().clone(),
            fb: db.value().clone(),
        });
    }
    let d1s = class_members_big(da, class);
    let d2s = class_members_big(db, class);
    let mut best: Option<(Int, Int)> = None; // (d1, d2)
    for d2 in &d2s {
        // Largest d1 strictly below d2 minimizes d2/d1 above 1.
        let idx = match d1s.binary_search(d2) {
            Ok(i) => i,      // d1s[i] == d2; want a strictly smaller one
            Err(i) => i,     // d1s[..i] < d2
        };
        if idx == 0 {
            continue;
        }
        let d1 = &d1s[idx - 1];
        match &best {
            Some((b1, b2)) => {
                if d2 * b1 < b2 * d1 {
                    best = Some((d1.clone(), d2.clone()));
                }
            }
            None => best = Some((d1.clone(), d2.clone())),
        }
    }
    let (d1, d2) = best.expect("db.value()/1 > 1 always exists");
    Ok(Rat::new(d2, d1))
}

fn class_members_big(ds: &DivisorSet, class: DivisorClass) -> Vec<Int> {
    ds.all()
        .iter()
        .enumerate()
        .filter(|(i, _)| ds.in_class(*i, class))
        .map(|(_, d)| d.clone())
        .collect()
}


fn pow_u128(base: u64, e: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Fixed-width search path; `None` when anything overflows u128.
fn qk_search_u64(
    da: &DivisorSet,
    db: &DivisorSet,
    e: u32,
    class: DivisorClass,
) -> Option<(u64, u64)> {
    let fa = da.value().to_u64()?;
    let fb = db.value().to_u64()?;
    let da_all = da.all_u64()?;
    let db_all = db.all_u64()?;
    // v1[i] = d1^e * fb over the class members of da; validity of
    // (d1, d2) is d2^e * fa <= v1[i], monotone in d1.
    let mut d1s: Vec<u64> = Vec::with_capacity(da_all.len());
    let mut v1: Vec<u128> = Vec::with_capacity(da_all.len());
    for (i, &d) in da_all.iter().enumerate() {
        if da.in_class(i, class) {
            d1s.push(d);
            v1.push(pow_u128(d, e)?.checked_mul(fb as u128)?);
        }
    }

    let (mut best_d1, mut best_d2) = (1u64, 1u64);
    for j in (0..db_all.len()).rev() {
        if !db.in_class(j, class) {
            continue;
        }
        let d2 = db_all[j];
        // Even with d1 = 1 this d2 cannot beat the current best.
        if (d2 as u128) * (best_d1 as u128) < best_d2 as u128 {
            break;
        }
        let v2 = pow_u128(d2, e)?.checked_mul(fa as u128)?;
        let i = v1.partition_point(|v| *v < v2);
        if i == d1s.len() {
            continue;
        }
        let d1 = d1s[i];
        let lhs = d2 as u128 * best_d1 as u128;
        let rhs = best_d2 as u128 * d1 as u128;
        if lhs > rhs || (lhs == rhs && (d2, d1) < (best_d2, best_d1)) {
            best_d1 = d1;
            best_d2 = d2;
        }
    }
    Some((best_d1, best_d2))
}

fn qk_search_big(da: &DivisorSet, db: &DivisorSet, e: u32, class: DivisorClass) -> (Int, Int) {
    let fa = da.value();
    let fb = db.value();
    let d1s = class_members_big(da, class);
    let d2s = class_members_big(db, class);
    let v1: Vec<Int> = d1s.iter().map(|d| d.pow(e) * fb).collect();
    let v2: Vec<Int> = d2s.iter().map(|d| d.pow(e) * fa).collect();

    let mut best_d1 = Int::one();
    let mut best_d2 = Int::one();
    for j in (0..d2s.len()).rev() {
        let d2 = &d2s[j];
        if d2 * &best_d1 < best_d2 {
            break;
        }
        let i = v1.partition_point(|v| v < &v2[j]);
        if i == d1s.len() {
            continue;
        }
        let d1 = &d1s[i];
        let lhs = d2 * &best_d1;
        let rhs = &best_d2 * d1;
        if lhs > rhs || (lhs == rhs && (d2, d1) < (&best_d2, &best_d1)) {
            best_d1 = d1.clone();
            best_d2 = d2.clone();
        }
    }
    (best_d1, best_d2)
}
