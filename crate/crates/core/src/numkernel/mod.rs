//! Arbitrary-precision rationals, integer factorization and [`ExactLog`], the
//! exact value type used for every height computed by this crate.

mod exactlog;
mod factor;
mod interval;
mod rational;

pub use exactlog::ExactLog;
pub use factor::{
    factorize, factorize_with_bound, is_probable_prime, Factorization, DEFAULT_TRIAL_BOUND,
};
pub use interval::{ln_interval, LogInterval};
pub use rational::{format_rational, parse_rational, rational_from_ints, Rational};
