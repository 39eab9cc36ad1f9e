//! Exact generators for the sequence families the identities are stated in.
//!
//! Generators return length-`N` prefixes starting at index 0. Fibonacci and
//! Lucas also have single-term accessors that accept negative indices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sequence::Sequence;
use crate::transform::binomial;

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::EmptySequence);
    }
    Ok(())
}

/// Running sums `Σ_{k=1}^{n} f(k)` with term 0 equal to 0.
fn partial_sums<F>(len: usize, mut f: F) -> Result<Sequence>
where
    F: FnMut(usize) -> Result<ExactRational>,
{
    check_len(len)?;
    let mut acc = ExactRational::zero();
    let mut out = Vec::with_capacity(len);
    out.push(acc.clone());
    for k in 1..len {
        acc += f(k)?;
        out.push(acc.clone());
    }
    Sequence::new(out)
}

fn unit_fraction(k: usize, power: u32) -> Result<ExactRational> {
    ExactRational::from(k).pow(power).recip()
}

/// `H_n = 1 + 1/2 + ⋯ + 1/n`, `H_0 = 0`.
pub fn harmonic(len: usize) -> Result<Sequence> {
    generalized_harmonic(len, 1)
}

/// `H_n^(r) = Σ_{k=1}^{n} 1/k^r`.
pub fn generalized_harmonic(len: usize, r: u32) -> Result<Sequence> {
    if r == 0 {
        return Err(Error::Domain("generalized_harmonic needs r >= 1".into()));
    }
    partial_sums(len, |k| unit_fraction(k, r))
}

/// `H_n^- = 1 - 1/2 + ⋯ + (-1)^(n-1)/n`, `H_0^- = 0`.
pub fn skew_harmonic(len: usize) -> Result<Sequence> {
    partial_sums(len, |k| {
        let t = unit_fraction(k, 1)?;
        Ok(if k % 2 == 1 { t } else { -t })
    })
}

/// Stirling numbers of the second kind `S(p, n)` for `n <= p <= p_max`,
/// filled by `S(p,n) = n S(p-1,n) + S(p-1,n-1)`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(p_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(p_max + 1);
        rows.push(vec![BigInt::one()]);
        for p in 1..=p_max {
            let prev = &rows[p - 1];
            let row = (0..=p)
                .map(|n| {
                    let stay = if n < p { BigInt::from(n) * &prev[n] } else { BigInt::zero() };
                    let grow = if n > 0 { prev[n - 1].clone() } else { BigInt::zero() };
                    stay + grow
                })
                .collect();
            rows.push(row);
        }
        Self { rows }
    }

    pub fn p_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(p, n)`, zero for `n > p`; `None` if `p` is beyond the table.
    pub fn get(&self, p: usize, n: usize) -> Option<BigInt> {
        let row = self.rows.get(p)?;
        Some(row.get(n).cloned().unwrap_or_else(BigInt::zero))
    }
}

pub fn stirling2(p: usize, n: usize) -> ExactRational {
    if n > p {
        return ExactRational::zero();
    }
    // one column-limited row sweep is enough for a single value
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for _ in 1..=p {
        for j in (1..=n).rev() {
            row[j] = BigInt::from(j) * &row[j] + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    ExactRational::from_integer(row[n].clone())
}

fn linear_recurrence(len: usize, first: i64, second: i64) -> Result<Sequence> {
    check_len(len)?;
    let mut out: Vec<ExactRational> = vec![first.into(), second.into()];
    while out.len() < len {
        let next = &out[out.len() - 1] + &out[out.len() - 2];
        out.push(next);
    }
    out.truncate(len);
    Sequence::new(out)
}

/// `F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}`.
pub fn fibonacci(len: usize) -> Result<Sequence> {
    linear_recurrence(len, 0, 1)
}

/// `L_0 = 2, L_1 = 1, L_n = L_{n-1} + L_{n-2}`.
pub fn lucas(len: usize) -> Result<Sequence> {
    linear_recurrence(len, 2, 1)
}

/// Term `n` of the Fibonacci-type recurrence with `u_0, u_1` given. Negative
/// `n` walks back with `u_{n-2} = u_n - u_{n-1}`.
fn recurrence_at(n: i64, u0: i64, u1: i64) -> ExactRational {
    let (mut lo, mut hi) = (BigInt::from(u0), BigInt::from(u1));
    if n >= 0 {
        for _ in 0..n {
            let next = &lo + &hi;
            lo = std::mem::replace(&mut hi, next);
        }
        ExactRational::from_integer(lo)
    } else {
        for _ in 0..(-n) {
            let prev = &hi - &lo;
            hi = std::mem::replace(&mut lo, prev);
        }
        ExactRational::from_integer(lo)
    }
}

pub fn fibonacci_at(n: i64) -> ExactRational {
    recurrence_at(n, 0, 1)
}

pub fn lucas_at(n: i64) -> ExactRational {
    recurrence_at(n, 2, 1)
}

/// `σ_n(q) = 1^q + ⋯ + n^q`, `σ_0(q) = 0`.
pub fn power_sum(len: usize, q: u32) -> Result<Sequence> {
    partial_sums(len, |k| Ok(ExactRational::from(k).pow(q)))
}

/// `Σ 1/(k_1 ⋯ k_m)` over `1 <= k_1 <= ⋯ <= k_m <= n`, via
/// `d(m, n) = d(m, n-1) + d(m-1, n)/n` with `d(0, n) = 1`.
pub fn multiple_harmonic_sum(len: usize, m: usize) -> Result<Sequence> {
    check_len(len)?;
    if m == 0 {
        return Err(Error::Domain("multiple_harmonic_sum needs m >= 1".into()));
    }
    let mut prev = vec![ExactRational::one(); len];
    for _ in 0..m {
        let mut cur = vec![ExactRational::zero(); len];
        for n in 1..len {
            let step = prev[n].checked_div(&ExactRational::from(n))?;
            cur[n] = &cur[n - 1] + step;
        }
        prev = cur;
    }
    Sequence::new(prev)
}

/// `L_0(x), …, L_{N-1}(x)` by `(n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}`.
pub fn laguerre(len: usize, x: &ExactRational) -> Result<Sequence> {
    check_len(len)?;
    let mut out = vec![ExactRational::one()];
    if len > 1 {
        out.push(ExactRational::one() - x);
    }
    for n in 1..len.saturating_sub(1) {
        let nn = ExactRational::from(n);
        let lhs = (ExactRational::from(2 * n + 1) - x) * &out[n] - nn * &out[n - 1];
        out.push(lhs.checked_div(&ExactRational::from(n + 1))?);
    }
    Sequence::new(out)
}

/// `x^k` with `x^0 = 1`.
pub fn geometric(len: usize, x: &ExactRational) -> Result<Sequence> {
    check_len(len)?;
    Sequence::from_fn(len, 0, |k| Ok(x.pow(k as u32)))
}

/// `k^p` with `0^0 = 1`.
pub fn index_powers(len: usize, p: u32) -> Result<Sequence> {
    check_len(len)?;
    Sequence::from_fn(len, 0, |k| Ok(ExactRational::from(k).pow(p)))
}

/// `C(p, k)`.
pub fn binomial_column(len: usize, p: u64) -> Result<Sequence> {
    check_len(len)?;
    Sequence::from_fn(len, 0, |k| Ok(binomial(p, k as u64)))
}

pub fn factorial(n: usize) -> ExactRational {
    (1..=n).map(ExactRational::from).product()
}

/// `a(p, n, x) = (x d/dx)^p (1+x)^n = Σ_{j=0}^{min(p,n)} C(n,j) S(p,j) j! x^j (1+x)^(n-j)`.
pub fn power_expansion(p: usize, n: usize, x: &ExactRational) -> ExactRational {
    let one_plus = ExactRational::one() + x;
    (0..=p.min(n))
        .map(|j| {
            binomial(n as u64, j as u64)
                * stirling2(p, j)
                * factorial(j)
                * x.pow(j as u32)
                * one_plus.pow((n - j) as u32)
        })
        .sum()
}
