//! Closed forms for the differential pattern, used as cross-checks.

use crate::BocksteinError;

/// 1 + p + ⋯ + p^k.
pub fn geometric(p: u32, k: u32) -> i64 {
    (0..=k).map(|i| (p as i64).pow(i)).sum()
}

/// b(sp^k) = sp^k − (p^k + ⋯ + 1), the v2-exponent hit from v2^{sp^k}.
pub fn b_exponent(s: i64, k: u32, p: u32) -> Result<i64, BocksteinError> {
    if s.rem_euclid(p as i64) == 0 {
        return Err(BocksteinError::Parameter(format!("p = {p} divides s = {s}")));
    }
    Ok(s * (p as i64).pow(k) - geometric(p, k))
}

/// Page of the differential on v2^{sp^k}: (p^k + ⋯ + 1)(p + 1).
pub fn page(k: u32, p: u32) -> i64 {
    geometric(p, k) * (p as i64 + 1)
}

/// Smallest truncation N with N > (p^k + ⋯ + p + 2)(p + 1).
pub fn required_truncation(k: u32, p: u32) -> i64 {
    (geometric(p, k) + 1) * (p as i64 + 1) + 1
}

/// m = s p^k with p ∤ s; m ≠ 0.
pub fn split_exponent(m: i64, p: u32) -> Result<(i64, u32), BocksteinError> {
    if m == 0 {
        return Err(BocksteinError::Parameter("exponent 0 has no p-adic splitting".into()));
    }
    let (mut s, mut k) = (m, 0);
    while s % p as i64 == 0 {
        s /= p as i64;
        k += 1;
    }
    Ok((s, k))
}

/// Every (s, i) with p ∤ s, i ≥ 1 and t = (s−1)p^i − p^{i−1} − ⋯ − 1.
pub fn representations(t: i64, p: u32) -> Vec<(i64, u32)> {
    let p64 = p as i128;
    let t = t as i128;
    let mut out = vec![];
    let mut pi: i128 = 1;
    // (s−1)p^i − (p^i−1)/(p−1) = t  ⇔  s p^i = t + (p^{i+1}−1)/(p−1)
    for i in 1..=80u32 {
        pi *= p64;
        let shifted = t + (pi * p64 - 1) / (p64 - 1);
        if shifted % pi == 0 {
            let s = shifted / pi;
            if s % p64 != 0 {
                out.push((s as i64, i));
            }
        }
        // beyond |shifted| < p^i only s = 0 or ±1 remain possible; stop once p^i dwarfs t
        if pi > 4 * (t.abs() + 2) * p64 {
            break;
        }
    }
    out
}

/// Torsion exponent of c_t: p+1 unless t ≡ −1 mod p, else (p^i + ⋯ + 1)(p+1)
/// for the unique representation of t.
pub fn n_t_closed_form(t: i64, p: u32) -> Result<i64, BocksteinError> {
    ehh2_core::field::check_odd_prime(p).map_err(|e| BocksteinError::Parameter(e.to_string()))?;
    if (t + 1).rem_euclid(p as i64) != 0 {
        return Ok(p as i64 + 1);
    }
    match representations(t, p).as_slice() {
        [(_, i)] => Ok(page(*i, p)),
        [] => Err(BocksteinError::Structural(format!("t = {t} has no representation (s−1)p^i − p^(i−1) − ⋯ − 1"))),
        many => Err(BocksteinError::Structural(format!("t = {t} has several representations {many:?}"))),
    }
}
