use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Trial division runs through every integer up to this bound before the
/// primality test and rho splitting take over.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 16;

/// Prime factorization `n = prod p^e` of a positive integer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Factorization {
    factors: BTreeMap<BigUint, u64>,
}

impl Factorization {
    pub fn factors(&self) -> &BTreeMap<BigUint, u64> {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (p, &e)| {
            acc * num_traits::pow(p.clone(), e as usize)
        })
    }

    fn push(&mut self, p: BigUint, e: u64) {
        if e > 0 {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }

    /// Pointwise sum of exponents, i.e. the factorization of the product.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for (p, &e) in &other.factors {
            out.push(p.clone(), e);
        }
        out
    }

    /// Positive divisors, ascending.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for (p, &e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for d in &divs {
                let mut pk = d.clone();
                next.push(pk.clone());
                for _ in 0..e {
                    pk *= p;
                    next.push(pk.clone());
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Factors `n >= 1` using [`DEFAULT_TRIAL_BOUND`].
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}

pub fn factorize_with_bound(n: &BigInt, trial_bound: u64) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::domain(format!(
            "cannot factor non-positive integer {n}"
        )));
    }
    let mut rest = n.magnitude().clone();
    let mut out = Factorization::default();

    let mut d: u64 = 2;
    while d <= trial_bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        out.push(dd, e);
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.push(m, 1);
            continue;
        }
        let f = split(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    Ok(out)
}

const WITNESSES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first 20 primes as bases. The first 13 bases make the
/// test exact below 3.3e24; above that the answer is a strong probable prime.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if n == &w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial factor of a composite `n` (Brent's variant of rho).
fn split(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    if let Some(r) = exact_root(n) {
        return r;
    }
    for c in 1u32.. {
        if let Some(f) = brent(n, &BigUint::from(c)) {
            return f;
        }
    }
    unreachable!("rho iterates over every increment")
}

/// Returns `r` when `n = r^k` for some `k >= 2`.
fn exact_root(n: &BigUint) -> Option<BigUint> {
    let bits = n.bits();
    for k in 2..=bits as u32 {
        let r = n.nth_root(k);
        if r > BigUint::one() && num_traits::pow(r.clone(), k as usize) == *n {
            return Some(r);
        }
    }
    None
}

fn brent(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BATCH: u64 = 64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > (1 << 40) {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n || g.is_zero() {
        None
    } else {
        Some(g)
    }
}
