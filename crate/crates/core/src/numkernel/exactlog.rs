use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::factor::{factorize, is_probable_prime};
use super::interval::{ln_interval, LogInterval};
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// A real number `sum_p c_p log p` with rational coefficients over primes.
///
/// The representation is canonical: keys are primes and no coefficient is zero.
/// Because the logarithms of distinct primes are linearly independent over Q,
/// two values are equal exactly when their term maps are equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactLog {
    terms: BTreeMap<BigUint, Rational>,
}

/// Precision ladder for sign decisions starts here and doubles up to the cap.
const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1_000_000;

impl ExactLog {
    pub fn zero() -> Self {
        ExactLog::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<BigUint, Rational> {
        &self.terms
    }

    /// Builds a value from `(prime, coefficient)` pairs, checking primality.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, Rational)>,
    {
        let mut out = ExactLog::zero();
        for (p, c) in terms {
            if !is_probable_prime(&p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, p: BigUint, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(p).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// `log q` for a positive rational `q`.
    pub fn of_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::domain(format!(
                "logarithm of non-positive rational {}",
                format_rational(q)
            )));
        }
        let mut out = ExactLog::zero();
        for (p, e) in factorize(q.numer())?.factors() {
            out.add_term(p.clone(), Rational::from_integer(BigInt::from(*e)));
        }
        for (p, e) in factorize(q.denom())?.factors() {
            out.add_term(p.clone(), -Rational::from_integer(BigInt::from(*e)));
        }
        Ok(out)
    }

    /// `log n` for a positive integer `n`.
    pub fn of_integer(n: &BigInt) -> Result<Self> {
        Self::of_rational(&Rational::from_integer(n.clone()))
    }

    pub fn of_u64(n: u64) -> Result<Self> {
        Self::of_integer(&BigInt::from(n))
    }

    /// `c * log q`.
    pub fn scaled_log(c: &Rational, q: &Rational) -> Result<Self> {
        Ok(Self::of_rational(q)?.scale(c))
    }

    /// `a + s * b`.
    pub fn combine(a: &ExactLog, s: &Rational, b: &ExactLog) -> ExactLog {
        let mut out = a.clone();
        if s.is_zero() {
            return out;
        }
        for (p, c) in &b.terms {
            out.add_term(p.clone(), c * s);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> ExactLog {
        Self::combine(&ExactLog::zero(), s, self)
    }

    pub fn scale_int(&self, s: i64) -> ExactLog {
        self.scale(&Rational::from_integer(BigInt::from(s)))
    }

    pub fn plus(&self, other: &ExactLog) -> ExactLog {
        Self::combine(self, &Rational::one(), other)
    }

    pub fn minus(&self, other: &ExactLog) -> ExactLog {
        Self::combine(self, &-Rational::one(), other)
    }

    /// Encloses `value + constant` at the given number of fractional bits.
    pub fn enclose(&self, constant: &Rational, bits: u32) -> LogInterval {
        let mut acc = LogInterval::from_rational(constant, bits);
        for (p, c) in &self.terms {
            acc = acc.add(&ln_interval(p, bits).scale(c));
        }
        acc
    }

    /// Sign of `value + constant`. Zero only when both parts vanish, since
    /// `1, log 2, log 3, ...` are linearly independent over Q.
    pub fn try_sign_with(&self, constant: &Rational) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(constant.cmp(&Rational::zero()));
        }
        let mut bits = START_BITS;
        loop {
            let iv = self.enclose(constant, bits);
            if iv.lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if iv.hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if bits >= MAX_BITS {
                return Err(Error::Internal(format!(
                    "sign of {self} + {} unresolved at {MAX_BITS} bits",
                    format_rational(constant)
                )));
            }
            bits = (bits * 2).min(MAX_BITS);
        }
    }

    pub fn try_cmp(&self, other: &ExactLog) -> Result<Ordering> {
        if self == other {
            return Ok(Ordering::Equal);
        }
        self.minus(other).try_sign_with(&Rational::zero())
    }

    /// Compares the value against an exact rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        self.try_sign_with(&-q.clone())
            .expect("distinct canonical forms always separate")
    }

    /// Decimal rendering with error strictly below `10^-digits`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let ten_d = num_traits::pow(BigInt::from(10), digits as usize);
        let mut bits = digits * 4 + 32;
        let iv = loop {
            let iv = self.enclose(&Rational::zero(), bits);
            if iv.width() * &ten_d < (BigInt::one() << bits as usize) {
                break iv;
            }
            bits *= 2;
        };
        // round the midpoint to the nearest multiple of 10^-digits
        let twice_mid_scaled = (&iv.lo + &iv.hi) * &ten_d;
        let denom = BigInt::one() << (bits as usize + 1);
        let rounded = (twice_mid_scaled + (&denom >> 1usize)).div_floor(&denom);
        render_fixed(&rounded, digits)
    }

    /// Rough `f64` value; for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(17).parse().unwrap_or(f64::NAN)
    }

    pub fn to_json_value(&self, digits: u32) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let prime = match p.to_u64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(p.to_string()),
                };
                serde_json::json!({ "prime": prime, "coeff": format_rational(c) })
            })
            .collect();
        serde_json::json!({
            "terms": terms,
            "exact": self.to_string(),
            "decimal": self.to_decimal(digits),
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::input("terms", "expected an array"))?;
        let mut out = Vec::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            let field = format!("terms[{i}]");
            let prime = match t.get("prime") {
                Some(serde_json::Value::Number(n)) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| Error::input(&field, "prime must be a positive integer"))?,
                Some(serde_json::Value::String(s)) => s
                    .parse::<BigUint>()
                    .map_err(|_| Error::input(&field, "prime must be a positive integer"))?,
                _ => return Err(Error::input(&field, "missing prime")),
            };
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::input(&field, "missing coeff string"))?;
            let coeff = parse_rational(coeff).map_err(|e| Error::input(&field, e.to_string()))?;
            out.push((prime, coeff));
        }
        ExactLog::from_terms(out)
    }
}

fn render_fixed(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.sign() == Sign::Minus;
    let mag = scaled.magnitude().to_string();
    let d = digits as usize;
    let padded = if mag.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl PartialOrd for ExactLog {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactLog {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other)
            .expect("distinct canonical forms always separate")
    }
}

impl fmt::Display for ExactLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "log {p}")?;
            } else {
                write!(f, "{} log {p}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl Serialize for ExactLog {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value(6).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactLog {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        ExactLog::from_json_value(&v).map_err(D::Error::custom)
    }
}
