//! The binomial transform pair and its operator calculus.
//!
//! Every operation is triangular: output term `n` depends only on input terms
//! `0..=n`, so a length-`N` prefix maps to a length-`N` prefix exactly.
//!
//! `(n∇)^0` is taken to be the identity operator.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sequence::{OperatorPolynomial, Sequence};

/// `(-1)^(k-1)`: `+1` for odd `k`, `-1` for even `k`.
pub fn transform_sign(k: usize) -> i32 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `C(n, k)` as an exact integer, `0` when `k > n`. Multiplicative formula.
pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> ExactRational {
    ExactRational::from_integer(binomial_int(n, k))
}

/// Row `C(n, 0..=n)` built by the ratio `C(n,k+1) = C(n,k)(n-k)/(k+1)`.
pub(crate) fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        c *= n - k;
        c /= k + 1;
    }
    row
}

fn weighted_rows<W>(a: &Sequence, weight: W) -> Result<Sequence>
where
    W: Fn(usize, usize) -> i32,
{
    let len = a.len();
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let row = binomial_row(n);
        let mut acc = ExactRational::zero();
        for (k, c) in row.into_iter().enumerate() {
            let term = ExactRational::from_integer(c) * a.get(k)?;
            if weight(n, k) < 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(acc);
    }
    Sequence::new(out)
}

/// `b_n = Σ_{k=0}^{n} C(n,k) (-1)^(k-1) a_k`. Its own inverse.
pub fn binomial_transform(a: &Sequence) -> Result<Sequence> {
    a.require_full("binomial_transform")?;
    weighted_rows(a, |_, k| transform_sign(k))
}

/// `b_n = Σ_{k=0}^{n} C(n,k) a_k`.
pub fn unsigned_binomial_transform(a: &Sequence) -> Result<Sequence> {
    a.require_full("unsigned_binomial_transform")?;
    weighted_rows(a, |_, _| 1)
}

/// `a_n = Σ_{k=0}^{n} C(n,k) (-1)^(n-k) b_k`.
pub fn inverse_unsigned_binomial_transform(b: &Sequence) -> Result<Sequence> {
    b.require_full("inverse_unsigned_binomial_transform")?;
    weighted_rows(b, |n, k| if (n - k) % 2 == 0 { 1 } else { -1 })
}

fn raised(s: &Sequence, by: usize, what: &str) -> Result<usize> {
    let vf = s.valid_from() + by;
    if vf >= s.len() {
        return Err(Error::Domain(format!(
            "{what} would start at index {vf}, past the last index {}",
            s.last_index()
        )));
    }
    Ok(vf)
}

/// `∇s_n = s_n - s_{n-1}`, defined from `s.valid_from + 1`.
pub fn backward_difference(s: &Sequence) -> Result<Sequence> {
    let vf = raised(s, 1, "backward difference")?;
    Sequence::from_fn(s.len(), vf, |n| Ok(s.get(n)? - s.get(n - 1)?))
}

/// `n∇s_n = n (s_n - s_{n-1})`.
pub fn n_nabla(s: &Sequence) -> Result<Sequence> {
    let vf = raised(s, 1, "n∇")?.max(1);
    Sequence::from_fn(s.len(), vf, |n| {
        Ok(ExactRational::from(n) * (s.get(n)? - s.get(n - 1)?))
    })
}

/// `p`-fold `n∇`, defined from `s.valid_from + p`.
pub fn n_nabla_pow(s: &Sequence, p: usize) -> Result<Sequence> {
    if p == 0 {
        return Err(Error::Domain("n_nabla_pow needs p >= 1".into()));
    }
    raised(s, p, "(n∇)^p")?;
    let mut cur = n_nabla(s)?;
    for _ in 1..p {
        cur = n_nabla(&cur)?;
    }
    Ok(cur)
}

/// `g(n∇) s = Σ_j g_j (n∇)^j s`.
pub fn apply_operator_polynomial(g: &OperatorPolynomial, s: &Sequence) -> Result<Sequence> {
    let degree = g.degree_bound();
    let vf = raised(s, degree, "g(n∇)")?;
    let mut acc = vec![ExactRational::zero(); s.len()];
    let mut power = s.clone();
    for (j, coeff) in g.coefficients().iter().enumerate().take(degree + 1) {
        if j > 0 {
            power = n_nabla(&power)?;
        }
        if coeff.is_zero() {
            continue;
        }
        for (n, slot) in acc.iter_mut().enumerate().skip(vf) {
            *slot += coeff * power.get(n)?;
        }
    }
    Sequence::with_valid_from(acc, vf)
}

/// `{k^p a_k}` with `0^0 = 1`.
pub fn multiply_by_index_pow(a: &Sequence, p: u32) -> Result<Sequence> {
    Sequence::from_fn(a.len(), a.valid_from(), |k| {
        Ok(ExactRational::from(k).pow(p) * a.get(k)?)
    })
}

/// `(n + λ) b_n - n b_{n-1}`, the image of `{(k + λ) a_k}`.
pub fn shifted_transform_rhs(b: &Sequence, lambda: &ExactRational) -> Result<Sequence> {
    let vf = raised(b, 1, "shifted transform")?.max(1);
    Sequence::from_fn(b.len(), vf, |n| {
        let nn = ExactRational::from(n);
        Ok((&nn + lambda) * b.get(n)? - nn * b.get(n - 1)?)
    })
}

/// The image of `{a_k / (k + λ)}` given the image `b` of `{a_k}` with `a_0 = 0`:
///
/// ```text
/// c_n = Σ_{m=1}^{n} [(m+1)(m+2)⋯n] / [(λ+m)(λ+m+1)⋯(λ+n)] · b_m
/// ```
///
/// Only `b_1, b_2, …` are read. `b_0` must be zero when it is defined, and
/// `b` may not start later than index 1. The result has `valid_from = 1`.
///
/// `λ ∈ {-1, -2, …}` is checked per index: the first `n` with `λ + n = 0` is
/// reported in [`Error::ForbiddenShift`], and truncating `b` to length `n`
/// gives a usable prefix.
pub fn divided_transform(b: &Sequence, lambda: &ExactRational) -> Result<Sequence> {
    match b.valid_from() {
        0 => {
            if !b.get(0)?.is_zero() {
                return Err(Error::Precondition(format!(
                    "divided_transform needs b_0 = 0, got {}",
                    b.get(0)?
                )));
            }
        }
        1 => {}
        vf => {
            return Err(Error::Domain(format!(
                "divided_transform reads b_1 onward, but b is only defined from {vf}"
            )))
        }
    }
    if b.len() < 2 {
        return Err(Error::Domain("divided_transform needs at least two terms".into()));
    }
    let mut out = vec![ExactRational::zero(); b.len()];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let top = lambda + ExactRational::from(n);
        if top.is_zero() {
            return Err(Error::ForbiddenShift { lambda: lambda.to_string(), n });
        }
        // weight_n = 1/(λ+n); weight_m = weight_{m+1} · (m+1)/(λ+m)
        let mut weight = top.recip()?;
        let mut acc = weight.clone() * b.get(n)?;
        for m in (1..n).rev() {
            let denom = lambda + ExactRational::from(m);
            weight = (weight * ExactRational::from(m + 1)).checked_div(&denom)?;
            acc += &weight * b.get(m)?;
        }
        *slot = acc;
    }
    Sequence::with_valid_from(out, 1)
}

/// `(1/(n+1)) Σ_{m=0}^{n} b_m`, the image of `{a_k / (k + 1)}`.
pub fn average_transform(b: &Sequence) -> Result<Sequence> {
    b.require_full("average_transform")?;
    let mut running = ExactRational::zero();
    let mut out = Vec::with_capacity(b.len());
    for (n, value) in b.terms() {
        running += value;
        out.push(running.checked_div(&ExactRational::from(n + 1))?);
    }
    Sequence::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn seq(items: &[&str]) -> Sequence {
        Sequence::new(items.iter().map(|s| q(s)).collect()).unwrap()
    }

    fn from(vf: usize, items: &[&str]) -> Sequence {
        Sequence::with_valid_from(items.iter().map(|s| q(s)).collect(), vf).unwrap()
    }

    fn defined(s: &Sequence) -> Vec<String> {
        s.terms().map(|(_, v)| v.to_string()).collect()
    }

    fn reciprocals(len: usize) -> Sequence {
        Sequence::from_fn(len, 1, |n| ExactRational::new(1, n as i64)).unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), q("10"));
        assert_eq!(binomial(4, 0), q("1"));
        assert_eq!(binomial(3, 5), q("0"));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
        let row = binomial_row(6);
        assert_eq!(row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","), "1,6,15,20,15,6,1");
    }

    #[test]
    fn signed_transform_examples() {
        assert_eq!(defined(&binomial_transform(&seq(&["1", "1", "1", "1"])).unwrap()), ["-1", "0", "0", "0"]);
        assert_eq!(
            defined(&binomial_transform(&seq(&["0", "1", "1/2", "1/3"])).unwrap()),
            ["0", "1", "3/2", "11/6"]
        );
        let fib = seq(&["0", "1", "1", "2", "3", "5"]);
        assert_eq!(binomial_transform(&fib).unwrap(), fib);
    }

    #[test]
    fn transforms_need_full_sequences() {
        let s = from(1, &["0", "1", "2"]);
        assert!(matches!(binomial_transform(&s), Err(Error::Domain(_))));
        assert!(matches!(unsigned_binomial_transform(&s), Err(Error::Domain(_))));
        assert!(matches!(inverse_unsigned_binomial_transform(&s), Err(Error::Domain(_))));
        assert!(matches!(average_transform(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn unsigned_pair_examples() {
        let u = |s: &[&str]| defined(&unsigned_binomial_transform(&seq(s)).unwrap());
        assert_eq!(u(&["0", "1", "1", "2", "3"]), ["0", "1", "3", "8", "21"]);
        assert_eq!(u(&["0", "0", "0"]), ["0", "0", "0"]);
        assert_eq!(u(&["1", "1", "1"]), ["1", "2", "4"]);

        let inv = |s: &[&str]| defined(&inverse_unsigned_binomial_transform(&seq(s)).unwrap());
        assert_eq!(inv(&["1", "2", "4"]), ["1", "1", "1"]);
        assert_eq!(inv(&["0", "1", "3", "8", "21"]), ["0", "1", "1", "2", "3"]);
        assert_eq!(inv(&["1", "0", "0"]), ["1", "-1", "1"]);
    }

    #[test]
    fn backward_difference_examples() {
        let d = backward_difference(&seq(&["0", "1", "3", "6"])).unwrap();
        assert_eq!(d.valid_from(), 1);
        assert_eq!(defined(&d), ["1", "2", "3"]);
        assert_eq!(defined(&backward_difference(&seq(&["5", "5", "5"])).unwrap()), ["0", "0"]);
        assert_eq!(
            defined(&backward_difference(&seq(&["0", "1", "3/2", "11/6"])).unwrap()),
            ["1", "1/2", "1/3"]
        );
        assert!(matches!(backward_difference(&seq(&["1"])), Err(Error::Domain(_))));
    }

    #[test]
    fn n_nabla_examples() {
        let r = n_nabla(&reciprocals(4)).unwrap();
        assert_eq!(r.valid_from(), 2);
        assert_eq!(r.get(2).unwrap(), &q("-1"));

        let s = Sequence::from_fn(4, 1, |n| ExactRational::new(2, (n * n) as i64)).unwrap();
        assert_eq!(n_nabla(&s).unwrap().get(2).unwrap(), &q("-3"));

        let c = n_nabla(&seq(&["4", "4", "4", "4"])).unwrap();
        assert_eq!(c.valid_from(), 1);
        assert_eq!(defined(&c), ["0", "0", "0"]);
    }

    #[test]
    fn n_nabla_pow_examples() {
        let r = n_nabla_pow(&reciprocals(5), 2).unwrap();
        assert_eq!(r.valid_from(), 3);
        assert_eq!(r.get(3).unwrap(), &q("3/2"));

        let h = seq(&["0", "1", "3/2", "11/6"]);
        assert_eq!(n_nabla_pow(&h, 1).unwrap(), n_nabla(&h).unwrap());

        let half = Sequence::from_fn(4, 0, |n| Ok(q("1/2").pow(n as u32))).unwrap();
        assert_eq!(n_nabla_pow(&half, 2).unwrap().get(3).unwrap(), &q("3/8"));

        assert!(n_nabla_pow(&h, 0).is_err());
        assert!(n_nabla_pow(&h, 3).is_ok() && n_nabla_pow(&h, 4).is_err());
    }

    #[test]
    fn operator_polynomial_examples() {
        let h = seq(&["0", "1", "3/2", "11/6"]);
        let g = OperatorPolynomial::new(vec![q("0"), q("1")]).unwrap();
        assert_eq!(apply_operator_polynomial(&g, &h).unwrap().get(2).unwrap(), &q("1"));

        let id = OperatorPolynomial::new(vec![q("1")]).unwrap();
        assert_eq!(apply_operator_polynomial(&id, &h).unwrap(), h);

        let sq = OperatorPolynomial::new(vec![q("0"), q("0"), q("1")]).unwrap();
        assert_eq!(apply_operator_polynomial(&sq, &h).unwrap(), n_nabla_pow(&h, 2).unwrap());
    }

    #[test]
    fn multiply_by_index_pow_examples() {
        let ones = seq(&["1", "1", "1"]);
        assert_eq!(defined(&multiply_by_index_pow(&ones, 1).unwrap()), ["0", "1", "2"]);
        assert_eq!(defined(&multiply_by_index_pow(&ones, 0).unwrap()), ["1", "1", "1"]);
        assert_eq!(defined(&multiply_by_index_pow(&seq(&["0", "1", "1/2"]), 2).unwrap()), ["0", "1", "2"]);
    }

    #[test]
    fn shifted_transform_examples() {
        let h = seq(&["0", "1", "3/2", "11/6"]);
        assert_eq!(shifted_transform_rhs(&h, &q("1")).unwrap().get(2).unwrap(), &q("5/2"));
        assert_eq!(shifted_transform_rhs(&h, &q("0")).unwrap(), n_nabla(&h).unwrap());
        let z = seq(&["0", "0", "0"]);
        assert_eq!(defined(&shifted_transform_rhs(&z, &q("7/3")).unwrap()), ["0", "0"]);
    }

    #[test]
    fn divided_transform_examples() {
        let h = seq(&["0", "1", "3/2", "11/6"]);
        assert_eq!(divided_transform(&h, &q("0")).unwrap().get(2).unwrap(), &q("7/4"));

        let delta = seq(&["0", "1", "0", "0"]);
        assert_eq!(divided_transform(&delta, &q("2")).unwrap().get(3).unwrap(), &q("1/10"));

        let z = seq(&["0", "0", "0"]);
        assert_eq!(defined(&divided_transform(&z, &q("3")).unwrap()), ["0", "0"]);
    }

    #[test]
    fn divided_transform_errors() {
        let bad = seq(&["1", "1", "0"]);
        assert!(matches!(divided_transform(&bad, &q("0")), Err(Error::Precondition(_))));

        let h = seq(&["0", "1", "3/2", "11/6", "25/12"]);
        assert_eq!(
            divided_transform(&h, &q("-3")),
            Err(Error::ForbiddenShift { lambda: "-3".into(), n: 3 })
        );
        // legal prefix below the offending index
        let prefix = divided_transform(&h.truncated(3).unwrap(), &q("-3")).unwrap();
        assert_eq!(prefix.len(), 3);
        // -1/2 is never forbidden
        assert!(divided_transform(&h, &q("-1/2")).is_ok());

        let late = from(2, &["0", "0", "1", "2"]);
        assert!(matches!(divided_transform(&late, &q("0")), Err(Error::Domain(_))));
    }

    #[test]
    fn average_transform_examples() {
        let fib = seq(&["0", "1", "1", "2", "3"]);
        assert_eq!(average_transform(&fib).unwrap().get(2).unwrap(), &q("2/3"));
        assert_eq!(defined(&average_transform(&seq(&["0", "0"])).unwrap()), ["0", "0"]);
        assert_eq!(
            defined(&average_transform(&seq(&["1", "0", "0", "0"])).unwrap()),
            ["1", "1/2", "1/3", "1/4"]
        );
    }
}
