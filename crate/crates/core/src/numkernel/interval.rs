//! Rigorous fixed-point enclosures of natural logarithms.
//!
//! Every enclosure is a pair of integers `lo <= hi` with
//! `lo / 2^bits <= value <= hi / 2^bits`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Closed dyadic interval `[lo, hi] / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

impl LogInterval {
    pub fn zero(bits: u32) -> Self {
        LogInterval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            bits,
        }
    }

    pub fn add(&self, other: &LogInterval) -> LogInterval {
        debug_assert_eq!(self.bits, other.bits);
        LogInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits,
        }
    }

    /// Scales by an exact rational, rounding outward.
    pub fn scale(&self, c: &Rational) -> LogInterval {
        let (n, d) = (c.numer(), c.denom());
        let (a, b) = if n.is_negative() {
            (&self.hi * n, &self.lo * n)
        } else {
            (&self.lo * n, &self.hi * n)
        };
        LogInterval {
            lo: a.div_floor(d),
            hi: ceil_div(&b, d),
            bits: self.bits,
        }
    }

    /// Encloses an exact rational.
    pub fn from_rational(q: &Rational, bits: u32) -> LogInterval {
        let scaled = q.numer() << bits as usize;
        LogInterval {
            lo: scaled.div_floor(q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            bits,
        }
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Encloses `atanh(num/den)` for `0 <= num/den <= 1/3`.
///
/// Powers are truncated toward zero, so the computed partial sum never exceeds
/// the true value; each power lags by less than 2 ulps and each quotient by
/// less than 3, and the tail after the last nonzero power is below 3 ulps.
fn atanh_enclosure(num: &BigUint, den: &BigUint, bits: u32) -> (BigInt, BigInt) {
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (num << bits as usize) / den;
    let mut sum = BigUint::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigUint::from(2 * k + 1);
        power = power * &num2 / &den2;
        k += 1;
    }
    let slack = BigUint::from(3 * k + 3);
    (BigInt::from(sum.clone()), BigInt::from(sum + slack))
}

fn ln2_enclosure(bits: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_enclosure(&BigUint::one(), &BigUint::from(3u32), bits);
    (lo * 2, hi * 2)
}

type CacheKey = (BigUint, u32);

fn cache() -> &'static Mutex<HashMap<CacheKey, LogInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, LogInterval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Encloses `ln(n)` for `n >= 1` at `bits` fractional bits.
pub fn ln_interval(n: &BigUint, bits: u32) -> LogInterval {
    if n.is_one() || n.is_zero() {
        return LogInterval::zero(bits);
    }
    let key = (n.clone(), bits);
    if let Some(hit) = cache().lock().expect("log cache poisoned").get(&key) {
        return hit.clone();
    }
    // n = 2^k * m with 1 <= m < 2; ln m = 2 atanh((n - 2^k) / (n + 2^k))
    let k = n.bits() - 1;
    let pow2 = BigUint::one() << k as usize;
    let (l2_lo, l2_hi) = ln2_enclosure(bits);
    let (m_lo, m_hi) = atanh_enclosure(&(n - &pow2), &(n + &pow2), bits);
    let k = BigInt::from(k);
    let out = LogInterval {
        lo: &l2_lo * &k + m_lo * 2,
        hi: &l2_hi * &k + m_hi * 2,
        bits,
    };
    cache()
        .lock()
        .expect("log cache poisoned")
        .insert(key, out.clone());
    out
}
