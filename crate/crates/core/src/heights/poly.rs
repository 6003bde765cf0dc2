use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{format_rational, parse_rational, Rational};
use crate::polytope::ExponentSet;

/// Laurent polynomial over Q in `n` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolyQ {
    n: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPolyQ {
    pub fn zero(n: usize) -> Self {
        LaurentPolyQ {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut out = LaurentPolyQ::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::input(
                    "exp",
                    format!("expected {n} exponents, found {}", e.len()),
                ));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Convenience constructor from `(exponent, numerator, denominator)` triples.
    pub fn from_ints(n: usize, terms: &[(&[i64], i64, i64)]) -> Result<Self> {
        Self::new(
            n,
            terms.iter().map(|(e, p, q)| {
                (
                    e.to_vec(),
                    Rational::new(BigInt::from(*p), BigInt::from(*q)),
                )
            }),
        )
    }

    fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn support_set(&self) -> Result<ExponentSet> {
        if self.is_zero() {
            return Err(Error::domain("the zero polynomial has empty support"));
        }
        ExponentSet::new(self.n, self.support())
    }

    pub fn coeff(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::domain("evaluation point has the wrong dimension"));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * monomial_value(e, x)?;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &LaurentPolyQ) -> LaurentPolyQ {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> LaurentPolyQ {
        let mut out = LaurentPolyQ::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPolyQ) -> LaurentPolyQ {
        assert_eq!(
            self.n, other.n,
            "product of polynomials in different dimensions"
        );
        let mut out = LaurentPolyQ::zero(self.n);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                let g = e.iter().zip(f).map(|(a, b)| a + b).collect();
                out.add_term(g, c * d);
            }
        }
        out
    }

    /// `d f / d x_i`.
    pub fn derivative(&self, i: usize) -> LaurentPolyQ {
        let mut out = LaurentPolyQ::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    /// Coefficients scaled to coprime integers with a positive leading
    /// (largest-exponent) coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -1
        } else {
            1
        };
        ints.iter().map(|x| x / &g * sign).collect()
    }

    /// The same polynomial with coprime integer coefficients.
    pub fn primitive_part(&self) -> LaurentPolyQ {
        let ints = self.primitive_integer_coeffs();
        LaurentPolyQ {
            n: self.n,
            terms: self
                .terms
                .keys()
                .cloned()
                .zip(ints.into_iter().map(Rational::from_integer))
                .collect(),
        }
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d` and nonnegative exponents.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        if !self.has_nonnegative_exponents() {
            return None;
        }
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(n: usize, p: &PolyJson, field: &str) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.terms.len());
        for (k, t) in p.terms.iter().enumerate() {
            if t.exp.len() != n {
                return Err(Error::input(
                    format!("{field}.terms[{k}].exp"),
                    format!("expected {n} exponents, found {}", t.exp.len()),
                ));
            }
            let c = parse_rational(&t.coeff)
                .map_err(|e| Error::input(format!("{field}.terms[{k}].coeff"), e.to_string()))?;
            terms.push((t.exp.clone(), c));
        }
        Self::new(n, terms)
    }
}

/// `x^e` for a point of the torus.
pub fn monomial_value(e: &[i64], x: &[Rational]) -> Result<Rational> {
    let mut v = Rational::one();
    for (&k, xi) in e.iter().zip(x) {
        if k == 0 {
            continue;
        }
        if xi.is_zero() {
            return Err(Error::domain(
                "monomial evaluated at a point with a zero coordinate",
            ));
        }
        let k32 = i32::try_from(k).map_err(|_| Error::domain("exponent too large"))?;
        v *= xi.pow(k32);
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

impl Serialize for LaurentPolyQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
