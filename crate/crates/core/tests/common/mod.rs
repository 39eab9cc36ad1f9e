#![allow(dead_code)]

use bintrans::transform::{binomial, transform_sign};
use bintrans::{ExactRational, Sequence};
use proptest::prelude::*;
use rand::Rng;

pub type Q = ExactRational;

pub fn q(s: &str) -> Q {
    s.parse().unwrap()
}

/// Numerator in `-bound..=bound`, denominator in `1..=bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    Q::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound)).unwrap()
}

pub fn random_sequence<R: Rng>(rng: &mut R, len: usize, bound: i64, zero_start: bool) -> Sequence {
    let mut values: Vec<Q> = (0..len).map(|_| random_rational(rng, bound)).collect();
    if zero_start {
        values[0] = Q::zero();
    }
    Sequence::new(values).unwrap()
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-1000i64..=1000, 1i64..=1000).prop_map(|(n, d)| Q::new(n, d).unwrap())
}

pub fn sequence(len: std::ops::Range<usize>) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(rational(), len).prop_map(|v| Sequence::new(v).unwrap())
}

/// Sequences with `a_0 = 0`.
pub fn zero_start_sequence(len: std::ops::Range<usize>) -> impl Strategy<Value = Sequence> {
    sequence(len).prop_map(|s| {
        let mut v: Vec<Q> = s.terms().map(|(_, x)| x.clone()).collect();
        v[0] = Q::zero();
        Sequence::new(v).unwrap()
    })
}

/// `Σ_{k=0}^{n} C(n,k) (-1)^(k-1) term(k)`, written out term by term.
pub fn signed_sum(n: usize, term: impl Fn(usize) -> Q) -> Q {
    (0..=n)
        .map(|k| binomial(n as u64, k as u64) * Q::from(transform_sign(k)) * term(k))
        .sum()
}

pub fn values(s: &Sequence) -> Vec<Q> {
    s.terms().map(|(_, v)| v.clone()).collect()
}

pub fn factorial(n: usize) -> Q {
    (1..=n).map(Q::from).product()
}

/// A registry whose only identity is wrong from n = 3 on: the transform of
/// `1/k` compared against `H_n` plus a stray `1/n^2` term.
pub fn falsified_registry() -> bintrans::Registry {
    use bintrans::suite::{Kernel, Recipe};
    use bintrans::{IdentitySpec, Registry};

    let mut reg = Registry::new();
    reg.register(
        IdentitySpec::new(
            "bogus_harmonic",
            "Σ C(n,k)(-1)^(k-1)/k = H_n + [n >= 3]/n^2",
            "deliberately wrong",
            Recipe::sum(Kernel::Signed, 1, |k, _| Q::from(k).recip()),
            |n, _| {
                let h = bintrans::families::harmonic(n + 1)?.get(n)?.clone();
                if n >= 3 {
                    Ok(h + Q::from(n * n).recip()?)
                } else {
                    Ok(h)
                }
            },
        )
        .valid_from(1),
    )
    .unwrap();
    reg
}

/// Runs the CLI in-process and returns `(exit code, stdout, stderr)`.
pub fn run_cli(registry: &bintrans::Registry, args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bintrans").chain(args.iter().copied());
    let code = bintrans::cli::run(argv, registry, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
