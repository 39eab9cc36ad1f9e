//! The built-in identities.
//!
//! Left sides are direct binomial sums. Right sides are closed forms written
//! out term by term. Where an identity comes out of the operator calculus,
//! the operator route rebuilds it with `n∇`, `divided_transform` or
//! `average_transform` from a simpler known transform.

use super::params::{Constraint, ParamDecl, ParamSet};
use super::{IdentitySpec, Kernel, Recipe, Registry};
use crate::error::Result;
use crate::families::{
    self, factorial, fibonacci_at, lucas_at, power_expansion, stirling2,
};
use crate::rational::ExactRational as Q;
use crate::sequence::Sequence;
use crate::transform::{
    average_transform, binomial, binomial_transform, divided_transform, n_nabla_pow,
    transform_sign,
};

const LAMBDAS: [&str; 6] = ["1", "2", "3", "4", "1/2", "-1/2"];
const XS: [&str; 4] = ["1/2", "2", "-3", "-1"];

fn lit(s: &str) -> Q {
    s.parse().expect("catalog literal")
}

fn unit(k: usize) -> Q {
    Q::from(k).recip().expect("k >= 1")
}

fn h(n: usize) -> Q {
    (1..=n).map(unit).sum()
}

fn hr(n: usize, r: u32) -> Q {
    (1..=n).map(|k| unit(k).pow(r)).sum()
}

fn skew(n: usize) -> Q {
    (1..=n).map(|k| Q::from(transform_sign(k)) * unit(k)).sum()
}

/// `(-1)^(n-1)`
fn sgn(n: usize) -> Q {
    Q::from(transform_sign(n))
}

fn neg1_pow(e: usize) -> Q {
    if e.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

fn div(a: Q, b: Q) -> Result<Q> {
    a.checked_div(&b)
}

fn nq(n: usize) -> Q {
    Q::from(n)
}

fn pow2(n: usize) -> Q {
    Q::from(2).pow(n as u32)
}

fn fib(n: i64) -> Q {
    fibonacci_at(n)
}

fn luc(n: i64) -> Q {
    lucas_at(n)
}

/// `H_k^2 + H_k^(2)`
fn h_pair(k: usize) -> Q {
    h(k).pow(2) + hr(k, 2)
}

fn grid_ints(name: &str, values: impl IntoIterator<Item = usize>) -> Vec<ParamSet> {
    values.into_iter().map(|v| ParamSet::new().with(name, v)).collect()
}

fn grid_rats(name: &str, values: &[&str]) -> Vec<ParamSet> {
    values.iter().map(|v| ParamSet::new().with(name, lit(v))).collect()
}

fn grid_product(base: Vec<ParamSet>, name: &str, values: &[&str]) -> Vec<ParamSet> {
    base.into_iter()
        .flat_map(|ps| values.iter().map(move |v| ps.clone().with(name, lit(v))))
        .collect()
}

fn p_decl(lo: i64) -> ParamDecl {
    ParamDecl::integer("p", Constraint::AtLeast(lo))
}

fn x_decl() -> ParamDecl {
    ParamDecl::rational("x", Constraint::None)
}

fn lambda_decl(from: usize) -> ParamDecl {
    ParamDecl::rational("lambda", Constraint::AvoidsPoles { from })
}

/// `s_n = f(n)` for `n >= valid_from`.
fn seq_from<F>(len: usize, valid_from: usize, f: F) -> Result<Sequence>
where
    F: FnMut(usize) -> Result<Q>,
{
    Sequence::from_fn(len, valid_from, f)
}

/// `(n∇)^p base`, lengthening the base when `len` is too short for the
/// result to have any defined term. Extra terms are never compared.
fn nabla_route<B>(len: usize, p: usize, base: B) -> Result<Sequence>
where
    B: Fn(usize) -> Result<Sequence>,
{
    let first = base(len)?;
    let need = first.valid_from() + p + 1;
    let b = if need > len { base(need)? } else { first };
    n_nabla_pow(&b, p)
}

/// `Σ_{j=0}^{min(p,n)} C(n,j) S(p,j) j! sign(j) x^j y^(n-j)`
fn stirling_expansion(p: usize, n: usize, x: &Q, y: &Q, sign: impl Fn(usize) -> Q) -> Q {
    (0..=p.min(n))
        .map(|j| {
            binomial(n as u64, j as u64)
                * stirling2(p, j)
                * factorial(j)
                * sign(j)
                * x.pow(j as u32)
                * y.pow((n - j) as u32)
        })
        .sum()
}

/// `Σ_{k=1}^{n-1} (-1)^k k! S(p,k) / (n-k)`
fn reciprocal_action(p: usize, n: usize) -> Result<Q> {
    let mut acc = Q::zero();
    for k in 1..n {
        acc += div(neg1_pow(k) * factorial(k) * stirling2(p, k), nq(n - k))?;
    }
    Ok(acc)
}

/// `∏_{j=from}^{to} (λ + j)`
fn shifted_product(lambda: &Q, from: usize, to: usize) -> Q {
    (from..=to).map(|j| lambda + nq(j)).product()
}

fn reciprocals(len: usize) -> Result<Sequence> {
    seq_from(len, 1, |n| Ok(unit(n)))
}

/// `b` with `b_0 = 0` and `b_n = f(n)` above.
fn zero_start<F>(len: usize, mut f: F) -> Result<Sequence>
where
    F: FnMut(usize) -> Result<Q>,
{
    seq_from(len, 0, |n| if n == 0 { Ok(Q::zero()) } else { f(n) })
}

fn powers_and_stirling(reg: &mut Registry) -> Result<()> {
    reg.register(
        IdentitySpec::new(
            "stirling_rep",
            "Σ C(n,k)(-1)^(k-1) k^p = (-1)^(n-1) n! S(p,n)",
            "binomial-transform representation of S(p,n)",
            Recipe::sum(Kernel::Signed, 0, |k, ps| Ok(nq(k).pow(ps.int_u32("p")?))),
            |n, ps| Ok(sgn(n) * factorial(n) * stirling2(ps.int("p")?, n)),
        )
        .param(p_decl(1))
        .grid(grid_ints("p", 1..=10))
        .route(Recipe::operator(|len, ps| {
            let p = ps.int("p")?;
            nabla_route(len, p, |l| binomial_transform(&families::index_powers(l, 0)?))
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "stirling_inversion",
            "Σ C(n,k) k! S(q+1,k) = n^(q+1)",
            "inverse of the Stirling representation",
            Recipe::sum(Kernel::Unsigned, 0, |k, ps| Ok(factorial(k) * stirling2(ps.int("q")? + 1, k))),
            |n, ps| Ok(nq(n).pow(ps.int_u32("q")? + 1)),
        )
        .param(ParamDecl::integer("q", Constraint::AtLeast(0)))
        .grid(grid_ints("q", 0..=6)),
    )?;

    reg.register(
        IdentitySpec::new(
            "unsigned_power_expansion",
            "Σ C(n,k) k^p x^k = Σ_j C(n,j) S(p,j) j! x^j (1+x)^(n-j)",
            "(x d/dx)^p (1+x)^n expansion",
            Recipe::sum(Kernel::Unsigned, 0, |k, ps| Ok(nq(k).pow(ps.int_u32("p")?) * ps.rat("x")?.pow(k as u32))),
            |n, ps| Ok(power_expansion(ps.int("p")?, n, ps.rat("x")?)),
        )
        .param(p_decl(0))
        .param(x_decl())
        .grid(grid_product(grid_ints("p", 0..=4), "x", &XS)),
    )?;

    reg.register(
        IdentitySpec::new(
            "signed_power_expansion",
            "Σ C(n,k)(-1)^(k-1) k^p x^k = Σ_j C(n,j) S(p,j) j! (-1)^(j-1) x^j (1-x)^(n-j)",
            "signed form of the (x d/dx)^p expansion",
            Recipe::sum(Kernel::Signed, 0, |k, ps| Ok(nq(k).pow(ps.int_u32("p")?) * ps.rat("x")?.pow(k as u32))),
            |n, ps| {
                let x = ps.rat("x")?;
                Ok(stirling_expansion(ps.int("p")?, n, x, &(Q::one() - x), sgn))
            },
        )
        .param(p_decl(0))
        .param(x_decl())
        .grid(grid_product(grid_ints("p", 0..=4), "x", &XS)),
    )?;

    reg.register(
        IdentitySpec::new(
            "nnabla_xn_rule",
            "(n∇)^p (1-x)^n = Σ_j C(n,j) S(p,j) j! (-1)^j x^j (1-x)^(n-j)",
            "n∇ applied to -(1-x)^n = T(x^k)",
            Recipe::operator(|len, ps| {
                let y = Q::one() - ps.rat("x")?;
                n_nabla_pow(&families::geometric(len, &y)?, ps.int("p")?)
            }),
            |n, ps| {
                let x = ps.rat("x")?;
                Ok(stirling_expansion(ps.int("p")?, n, x, &(Q::one() - x), neg1_pow))
            },
        )
        .note("also seen with x^n as the operand; that version fails for every x != 1/2 (x = 2, p = 1, n = 1: 1 vs -2)")
        .param(p_decl(1))
        .param(x_decl())
        .valid_from_with(|ps| ps.int("p"))
        .grid(grid_product(grid_ints("p", 1..=4), "x", &XS))
        .route(Recipe::sum(Kernel::Signed, 0, |k, ps| {
            Ok(-(nq(k).pow(ps.int_u32("p")?) * ps.rat("x")?.pow(k as u32)))
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "geometric_bt",
            "Σ C(n,k)(-1)^(k-1) x^k = -(1-x)^n",
            "transform of a geometric sequence",
            Recipe::sum(Kernel::Signed, 0, |k, ps| Ok(ps.rat("x")?.pow(k as u32))),
            |n, ps| Ok(-(Q::one() - ps.rat("x")?).pow(n as u32)),
        )
        .param(x_decl())
        .grid(grid_rats("x", &["1/2", "2", "-3", "-1", "1"])),
    )?;

    reg.register(
        IdentitySpec::new(
            "corollary2",
            "Σ_{k>=1} C(n,k)(-1)^(k-1) k ∇a_k = n b_n with a_k = x^k, b_n = -(1-x)^n",
            "index times backward difference",
            Recipe::sum(Kernel::Signed, 1, |k, ps| {
                let x = ps.rat("x")?;
                Ok(nq(k) * (x.pow(k as u32) - x.pow(k as u32 - 1)))
            }),
            |n, ps| Ok(-(nq(n) * (Q::one() - ps.rat("x")?).pow(n as u32))),
        )
        .param(x_decl())
        .valid_from(1)
        .grid(grid_rats("x", &XS)),
    )?;
    Ok(())
}

fn harmonic_family(reg: &mut Registry) -> Result<()> {
    reg.register(
        IdentitySpec::new(
            "harmonic_bt",
            "Σ C(n,k)(-1)^(k-1)/k = H_n",
            "division by k applied to T(1) = 1",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(unit(k))),
            |n, _| Ok(h(n)),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| {
            divided_transform(&zero_start(len, |_| Ok(Q::one()))?, &Q::zero())
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "inv_harmonic",
            "Σ C(n,k)(-1)^(k-1) H_k = 1/n",
            "involution applied to the harmonic transform",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(h(k))),
            |n, _| Ok(unit(n)),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| binomial_transform(&families::harmonic(len)?))),
    )?;

    reg.register(
        IdentitySpec::new(
            "harmonic_recip_sq",
            "Σ C(n,k)(-1)^(k-1)/k^2 = Σ_{k<=n} H_k/k",
            "division by k applied to T(1/k) = H_n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(unit(k).pow(2))),
            |n, _| Ok((1..=n).map(|k| h(k) * unit(k)).sum()),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| divided_transform(&families::harmonic(len)?, &Q::zero()))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_pair_inv",
            "Σ C(n,k)(-1)^(k-1)(H_k^2 + H_k^(2)) = 2/n^2",
            "involution applied to Σ H_k/k = (H_n^2 + H_n^(2))/2",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(h_pair(k))),
            |n, _| Ok(Q::from(2) * unit(n).pow(2)),
        )
        .valid_from(1),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_pair_over_k",
            "Σ C(n,k)(-1)^(k-1)(H_k^2 + H_k^(2))/k = 2 H_n^(3)",
            "division by k applied to T(H_k^2 + H_k^(2)) = 2/n^2",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(h_pair(k) * unit(k))),
            |n, _| Ok(Q::from(2) * hr(n, 3)),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| {
            divided_transform(&seq_from(len, 1, |n| Ok(Q::from(2) * unit(n).pow(2)))?, &Q::zero())
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "h3_inv",
            "Σ C(n,k)(-1)^(k-1) H_k^(3) = (H_n^2 + H_n^(2))/(2n)",
            "involution applied to the H^(3) transform",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(hr(k, 3))),
            |n, _| div(h_pair(n), nq(2 * n)),
        )
        .note("also seen with H_n^(3) inside the sum over k; only the H_k^(3) reading holds")
        .valid_from(1),
    )?;

    let pair_base = |len: usize| seq_from(len, 1, |n| Ok(Q::from(2) * unit(n).pow(2)));

    reg.register(
        IdentitySpec::new(
            "h2_pair_k",
            "Σ C(n,k)(-1)^(k-1) k (H_k^2 + H_k^(2)) = 2(1-2n)/(n(n-1)^2)",
            "n∇ applied to 2/n^2",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k) * h_pair(k))),
            |n, _| {
                let n1 = nq(n - 1);
                div(Q::from(2) * (Q::one() - nq(2 * n)), nq(n) * n1.pow(2))
            },
        )
        .note("also seen with H_n inside the sum over k; only the H_k reading holds")
        .valid_from(2)
        .route(Recipe::operator(move |len, _| nabla_route(len, 1, pair_base))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_pair_k2",
            "Σ C(n,k)(-1)^(k-1) k^2 (H_k^2 + H_k^(2)) = 2(4n^2-9n+4)/((n-1)^2 (n-2)^2)",
            "(n∇)^2 applied to 2/n^2",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k).pow(2) * h_pair(k))),
            |n, _| {
                let n = nq(n);
                let num = Q::from(2) * (Q::from(4) * n.pow(2) - Q::from(9) * &n + Q::from(4));
                div(num, (&n - Q::one()).pow(2) * (&n - Q::from(2)).pow(2))
            },
        )
        .note("also seen as 4/((n-1)(n-2)); that form fails the direct sum from n = 3 (13/2 vs 2)")
        .valid_from(3)
        .route(Recipe::operator(move |len, _| nabla_route(len, 2, pair_base))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_pair_k3",
            "Σ C(n,k)(-1)^(k-1) k^3 (H_k^2 + H_k^(2)) = -2n(8n^3-39n^2+54n-19)/((n-1)^2 (n-2)^2 (n-3)^2)",
            "(n∇)^3 applied to 2/n^2",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k).pow(3) * h_pair(k))),
            |n, _| {
                let n = nq(n);
                let cubic = Q::from(8) * n.pow(3) - Q::from(39) * n.pow(2) + Q::from(54) * &n - Q::from(19);
                let den = (&n - Q::one()).pow(2) * (&n - Q::from(2)).pow(2) * (&n - Q::from(3)).pow(2);
                div(-(Q::from(2) * &n * cubic), den)
            },
        )
        .note("also seen as 8n(n-2)/((n-1)(n-3)); that form fails the direct sum from n = 4 (-170/9 vs 64/3)")
        .valid_from(4)
        .route(Recipe::operator(move |len, _| nabla_route(len, 3, pair_base))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h_over_k",
            "Σ C(n,k)(-1)^(k-1) H_k/k = H_n^(2)",
            "division by k applied to T(H_k) = 1/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(h(k) * unit(k))),
            |n, _| Ok(hr(n, 2)),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| divided_transform(&reciprocals(len)?, &Q::zero()))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_inv",
            "Σ C(n,k)(-1)^(k-1) H_k^(2) = H_n/n",
            "involution applied to T(H_k/k) = H_n^(2)",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(hr(k, 2))),
            |n, _| Ok(h(n) * unit(n)),
        )
        .valid_from(1),
    )?;

    let h_over_n = |len: usize| seq_from(len, 1, |n| Ok(h(n) * unit(n)));

    reg.register(
        IdentitySpec::new(
            "h2_k",
            "Σ C(n,k)(-1)^(k-1) k H_k^(2) = (1 - H_n)/(n-1)",
            "n∇ applied to H_n/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k) * hr(k, 2))),
            |n, _| div(Q::one() - h(n), nq(n - 1)),
        )
        .valid_from(2)
        .route(Recipe::operator(move |len, _| nabla_route(len, 1, h_over_n))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h2_k2",
            "Σ C(n,k)(-1)^(k-1) k^2 H_k^(2) = (1 - 2n + n H_n)/((n-1)(n-2))",
            "(n∇)^2 applied to H_n/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k).pow(2) * hr(k, 2))),
            |n, _| div(Q::one() - nq(2 * n) + nq(n) * h(n), nq(n - 1) * nq(n - 2)),
        )
        .valid_from(3)
        .route(Recipe::operator(move |len, _| nabla_route(len, 2, h_over_n))),
    )?;

    reg.register(
        IdentitySpec::new(
            "h_squared",
            "Σ C(n,k)(-1)^(k-1) H_k^2 = 2/n^2 - H_n/n",
            "difference of the H_k^2 + H_k^(2) and H_k^(2) transforms",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(h(k).pow(2))),
            |n, _| Ok(Q::from(2) * unit(n).pow(2) - h(n) * unit(n)),
        )
        .valid_from(1),
    )?;

    reg.register(
        IdentitySpec::new(
            "h_squared_k",
            "Σ C(n,k)(-1)^(k-1) k H_k^2 = H_n/(n-1) + (2 - 3n - n^2)/(n(n-1)^2)",
            "difference of the k-weighted pair and H^(2) transforms",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k) * h(k).pow(2))),
            |n, _| {
                let n1 = nq(n - 1);
                let first = div(h(n), n1.clone())?;
                let num = Q::from(2) - nq(3 * n) - nq(n).pow(2);
                Ok(first + div(num, nq(n) * n1.pow(2))?)
            },
        )
        .valid_from(2)
        .route(Recipe::operator(|len, _| {
            nabla_route(len, 1, |l| seq_from(l, 1, |n| Ok(Q::from(2) * unit(n).pow(2) - h(n) * unit(n))))
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "dilcher",
            "Σ C(n,k)(-1)^(k-1)/k^m = Σ_{1<=k_1<=...<=k_m<=n} 1/(k_1...k_m)",
            "repeated division by k (multiple harmonic sums)",
            Recipe::sum(Kernel::Signed, 1, |k, ps| Ok(unit(k).pow(ps.int_u32("m")?))),
            |n, ps| Ok(families::multiple_harmonic_sum(n + 1, ps.int("m")?)?.get(n)?.clone()),
        )
        .param(ParamDecl::integer("m", Constraint::AtLeast(1)))
        .valid_from(1)
        .grid(grid_ints("m", 1..=5))
        .route(Recipe::operator(|len, ps| {
            let mut b = families::harmonic(len)?;
            for _ in 1..ps.int("m")? {
                b = divided_transform(&b, &Q::zero())?;
            }
            Ok(b)
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "harmonic_kp",
            "Σ C(n,k)(-1)^(k-1) H_k k^p = (-1)^(n-1) n! S(p,n) H_n + Σ_{k=1}^{n-1} (-1)^k k! S(p,k)/(n-k)",
            "(n∇)^p applied to 1/n, all n >= 1",
            Recipe::sum(Kernel::Signed, 1, |k, ps| Ok(h(k) * nq(k).pow(ps.int_u32("p")?))),
            |n, ps| {
                let p = ps.int("p")?;
                Ok(sgn(n) * factorial(n) * stirling2(p, n) * h(n) + reciprocal_action(p, n)?)
            },
        )
        .param(p_decl(1))
        .valid_from(1)
        .grid(grid_ints("p", 1..=4))
        .route(Recipe::operator(|len, ps| nabla_route(len, ps.int("p")?, reciprocals))),
    )?;

    reg.register(
        IdentitySpec::new(
            "nnabla_inv_n",
            "(n∇)^p (1/n) = Σ_{k=1}^{n-1} (-1)^k k! S(p,k)/(n-k) for n > p",
            "(n∇)^p applied to 1/n",
            Recipe::operator(|len, ps| n_nabla_pow(&reciprocals(len)?, ps.int("p")?)),
            |n, ps| reciprocal_action(ps.int("p")?, n),
        )
        .param(p_decl(1))
        .valid_from_with(|ps| Ok(ps.int("p")? + 1))
        .grid(grid_ints("p", 1..=4))
        .route(Recipe::sum(Kernel::Signed, 1, |k, ps| Ok(h(k) * nq(k).pow(ps.int_u32("p")?)))),
    )?;
    Ok(())
}

fn skew_family(reg: &mut Registry) -> Result<()> {
    reg.register(
        IdentitySpec::new(
            "geometric_tail_inv",
            "Σ C(n,k)(-1)^(k-1) (1 - (1-x)^k) = x^n",
            "involution applied to T(x^k) on k >= 1",
            Recipe::sum(Kernel::Signed, 1, |k, ps| Ok(Q::one() - (Q::one() - ps.rat("x")?).pow(k as u32))),
            |n, ps| Ok(ps.rat("x")?.pow(n as u32)),
        )
        .param(x_decl())
        .valid_from(1)
        .grid(grid_rats("x", &XS)),
    )?;

    reg.register(
        IdentitySpec::new(
            "geometric_tail_over_k",
            "Σ C(n,k)(-1)^(k-1) (1 - (1-x)^k)/k = Σ_{k<=n} x^k/k",
            "division by k applied to T(1 - (1-x)^k) = x^n",
            Recipe::sum(Kernel::Signed, 1, |k, ps| {
                Ok((Q::one() - (Q::one() - ps.rat("x")?).pow(k as u32)) * unit(k))
            }),
            |n, ps| {
                let x = ps.rat("x")?;
                Ok((1..=n).map(|k| x.pow(k as u32) * unit(k)).sum())
            },
        )
        .param(x_decl())
        .valid_from(1)
        .grid(grid_rats("x", &XS))
        .route(Recipe::operator(|len, ps| {
            let x = ps.rat("x")?.clone();
            divided_transform(&zero_start(len, |n| Ok(x.pow(n as u32)))?, &Q::zero())
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "skew_recip",
            "Σ C(n,k)(-1)^(k-1) (1 - 2^k)/k = -H_n^-",
            "tail transform at x = -1",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok((Q::one() - pow2(k)) * unit(k))),
            |n, _| Ok(-skew(n)),
        )
        .valid_from(1),
    )?;

    let skew_image = |len: usize| zero_start(len, |n| div(pow2(n) - Q::one(), nq(n)));

    reg.register(
        IdentitySpec::new(
            "skew_inv",
            "Σ C(n,k)(-1)^(k-1) H_k^- = (2^n - 1)/n",
            "involution applied to the skew reciprocal transform",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(skew(k))),
            |n, _| div(pow2(n) - Q::one(), nq(n)),
        )
        .valid_from(1),
    )?;

    reg.register(
        IdentitySpec::new(
            "skew_k",
            "Σ C(n,k)(-1)^(k-1) k H_k^- = 2^(n-1)(n-2)/(n-1) + 1/(n-1)",
            "n∇ applied to (2^n - 1)/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(nq(k) * skew(k))),
            |n, _| Ok(div(pow2(n - 1) * (nq(n) - Q::from(2)), nq(n - 1))? + unit(n - 1)),
        )
        .valid_from(2)
        .route(Recipe::operator(move |len, _| {
            nabla_route(len, 1, |l| seq_from(l, 1, |n| div(pow2(n) - Q::one(), nq(n))))
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "skew_over_k",
            "Σ C(n,k)(-1)^(k-1) H_k^-/k = Σ_{k<=n} 2^k/k^2 - H_n^(2)",
            "division by k applied to (2^n - 1)/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(skew(k) * unit(k))),
            |n, _| Ok((1..=n).map(|k| pow2(k) * unit(k).pow(2)).sum::<Q>() - hr(n, 2)),
        )
        .valid_from(1)
        .route(Recipe::operator(move |len, _| divided_transform(&skew_image(len)?, &Q::zero()))),
    )?;

    reg.register(
        IdentitySpec::new(
            "skew_over_k1",
            "Σ C(n,k)(-1)^(k-1) H_k^-/(k+1) = (Σ_{k<=n} 2^k/k - H_n)/(n+1)",
            "division by k+1 applied to (2^n - 1)/n",
            Recipe::sum(Kernel::Signed, 1, |k, _| Ok(skew(k) * unit(k + 1))),
            |n, _| div((1..=n).map(|k| pow2(k) * unit(k)).sum::<Q>() - h(n), nq(n + 1)),
        )
        .valid_from(1)
        .route(Recipe::operator(move |len, _| divided_transform(&skew_image(len)?, &Q::one()))),
    )?;
    Ok(())
}

fn fibonacci_lucas(reg: &mut Registry) -> Result<()> {
    let f = |k: usize| fib(k as i64);
    let l = |k: usize| luc(k as i64);

    reg.register(
        IdentitySpec::new(
            "fib_self",
            "Σ C(n,k)(-1)^(k-1) F_k = F_n",
            "Fibonacci numbers are transform-invariant",
            Recipe::sum(Kernel::Signed, 0, move |k, _| Ok(f(k))),
            move |n, _| Ok(f(n)),
        ),
    )?;

    reg.register(
        IdentitySpec::new(
            "fib_k",
            "Σ C(n,k)(-1)^(k-1) k F_k = n F_(n-2)",
            "n∇ applied to F_n",
            Recipe::sum(Kernel::Signed, 0, move |k, _| Ok(nq(k) * f(k))),
            |n, _| Ok(nq(n) * fib(n as i64 - 2)),
        )
        .valid_from(1)
        .route(Recipe::operator(|len, _| nabla_route(len, 1, families::fibonacci))),
    )?;

    reg.register(
        IdentitySpec::new(
            "fib_k2",
            "Σ C(n,k)(-1)^(k-1) k^2 F_k = n^2 F_(n-4) + n F_(n-3)",
            "(n∇)^2 applied to F_n",
            Recipe::sum(Kernel::Signed, 0, move |k, _| Ok(nq(k).pow(2) * f(k))),
            |n, _| {
                let m = n as i64;
                Ok(nq(n).pow(2) * fib(m - 4) + nq(n) * fib(m - 3))
            },
        )
        .valid_from(2)
        .route(Recipe::operator(|len, _| nabla_route(len, 2, families::fibonacci))),
    )?;

    let f2n = |len: usize| seq_from(len, 0, |n| Ok(fib(2 * n as i64)));

    reg.register(
        IdentitySpec::new(
            "fib_unsigned",
            "Σ C(n,k) F_k = F_(2n)",
            "unsigned transform of Fibonacci numbers",
            Recipe::sum(Kernel::Unsigned, 0, move |k, _| Ok(f(k))),
            |n, _| Ok(fib(2 * n as i64)),
        ),
    )?;

    reg.register(
        IdentitySpec::new(
            "fib_unsigned_k",
            "Σ C(n,k) k F_k = n F_(2n-1)",
            "n∇ applied to F_(2n)",
            Recipe::sum(Kernel::Unsigned, 0, move |k, _| Ok(nq(k) * f(k))),
            |n, _| Ok(nq(n) * fib(2 * n as i64 - 1)),
        )
        .valid_from(1)
        .route(Recipe::operator(move |len, _| nabla_route(len, 1, f2n))),
    )?;

    reg.register(
        IdentitySpec::new(
            "fib_unsigned_k2",
            "Σ C(n,k) k^2 F_k = n^2 F_(2n-2) + n F_(2n-3)",
            "(n∇)^2 applied to F_(2n)",
            Recipe::sum(Kernel::Unsigned, 0, move |k, _| Ok(nq(k).pow(2) * f(k))),
            |n, _| {
                let m = 2 * n as i64;
                Ok(nq(n).pow(2) * fib(m - 2) + nq(n) * fib(m - 3))
            },
        )
        .valid_from(2)
        .route(Recipe::operator(move |len, _| nabla_route(len, 2, f2n))),
    )?;

    reg.register(
        IdentitySpec::new(
            "lucas_alt",
            "Σ C(n,k)(-1)^k L_k = L_n",
            "alternating transform of Lucas numbers",
            Recipe::sum(Kernel::Alternating, 0, move |k, _| Ok(l(k))),
            move |n, _| Ok(l(n)),
        ),
    )?;

    reg.register(
        IdentitySpec::new(
            "lucas_unsigned",
            "Σ C(n,k) L_k = L_(2n)",
            "unsigned transform of Lucas numbers",
            Recipe::sum(Kernel::Unsigned, 0, move |k, _| Ok(l(k))),
            |n, _| Ok(luc(2 * n as i64)),
        ),
    )?;

    reg.register(
        IdentitySpec::new(
            "fib_avg",
            "Σ C(n,k)(-1)^(k-1) F_k/(k+1) = (F_(n+2) - 1)/(n+1)",
            "division by k+1 with F_0 + ... + F_n = F_(n+2) - 1",
            Recipe::sum(Kernel::Signed, 0, move |k, _| Ok(f(k) * unit(k + 1))),
            move |n, _| div(f(n + 2) - Q::one(), nq(n + 1)),
        )
        .route(Recipe::operator(|len, _| average_transform(&families::fibonacci(len)?))),
    )?;

    reg.register(
        IdentitySpec::new(
            "lucas_avg",
            "Σ C(n,k)(-1)^k L_k/(k+1) = (L_(n+2) - 1)/(n+1)",
            "division by k+1 with L_0 + ... + L_n = L_(n+2) - 1",
            Recipe::sum(Kernel::Alternating, 0, move |k, _| Ok(l(k) * unit(k + 1))),
            move |n, _| div(l(n + 2) - Q::one(), nq(n + 1)),
        )
        .route(Recipe::operator(|len, _| average_transform(&families::lucas(len)?))),
    )?;
    Ok(())
}

fn power_sums(reg: &mut Registry) -> Result<()> {
    reg.register(
        IdentitySpec::new(
            "sigma_truncate",
            "Σ C(n,k)(-1)^(k-1) σ_k(q) = (-1)^(n-1) (n-1)! S(q+1,n), zero for n > q+1",
            "n∇ applied to the power-sum transform",
            Recipe::sum(Kernel::Signed, 0, |k, ps| {
                let q = ps.int_u32("q")?;
                Ok((1..=k).map(|j| nq(j).pow(q)).sum())
            }),
            |n, ps| Ok(sgn(n) * factorial(n - 1) * stirling2(ps.int("q")? + 1, n)),
        )
        .param(ParamDecl::integer("q", Constraint::AtLeast(0)))
        .valid_from(1)
        .grid(grid_ints("q", 0..=6)),
    )?;

    reg.register(
        IdentitySpec::new(
            "stirling_avg",
            "Σ C(n,k) k! S(q,k)/(k+1) = σ_n(q)/(n+1)",
            "division by k+1 applied to the Stirling inverse",
            Recipe::sum(Kernel::Unsigned, 1, |k, ps| Ok(factorial(k) * stirling2(ps.int("q")?, k) * unit(k + 1))),
            |n, ps| {
                let q = ps.int_u32("q")?;
                div((1..=n).map(|j| nq(j).pow(q)).sum(), nq(n + 1))
            },
        )
        .param(ParamDecl::integer("q", Constraint::AtLeast(1)))
        .valid_from(1)
        .grid(grid_ints("q", 1..=6))
        .route(Recipe::operator(|len, ps| {
            average_transform(&families::index_powers(len, ps.int_u32("q")?)?)
        })),
    )?;
    Ok(())
}

/// `Σ_{m=1}^{n} [(m+1)⋯n] / ([(λ+m)⋯(λ+n)] m)`
fn harmonic_shift_sum(n: usize, lambda: &Q) -> Result<Q> {
    let mut acc = Q::zero();
    for m in 1..=n {
        let num: Q = (m + 1..=n).map(nq).product();
        acc += div(num, shifted_product(lambda, m, n) * nq(m))?;
    }
    Ok(acc)
}

fn shifts(reg: &mut Registry) -> Result<()> {
    reg.register(
        IdentitySpec::new(
            "harmonic_lambda",
            "Σ C(n,k)(-1)^(k-1) H_k/(k+λ), closed forms for λ = 1..4, weighted sum otherwise",
            "division by k+λ applied to T(H_k) = 1/n",
            Recipe::sum(Kernel::Signed, 1, |k, ps| div(h(k), nq(k) + ps.rat("lambda")?)),
            |n, ps| {
                let lambda = ps.rat("lambda")?;
                let hn = h(n);
                let m = nq(n);
                let up = |j: i64| &m + Q::from(j);
                match lambda.to_i64() {
                    Some(1) => div(hn, up(1)),
                    Some(2) => div(hn + &m, up(1) * up(2)),
                    Some(3) => div(m.pow(2) + Q::from(7) * &m + Q::from(4) * hn, Q::from(2) * up(1) * up(2) * up(3)),
                    Some(4) => div(
                        Q::from(2) * m.pow(3) + Q::from(21) * m.pow(2) + Q::from(85) * &m + Q::from(36) * hn,
                        Q::from(6) * up(1) * up(2) * up(3) * up(4),
                    ),
                    _ => harmonic_shift_sum(n, lambda),
                }
            },
        )
        .param(lambda_decl(1))
        .valid_from(1)
        .grid(grid_rats("lambda", &LAMBDAS))
        .route(Recipe::operator(|len, ps| divided_transform(&reciprocals(len)?, ps.rat("lambda")?))),
    )?;

    reg.register(
        IdentitySpec::new(
            "harmonic_lambda_sum",
            "Σ C(n,k)(-1)^(k-1) H_k/(k+λ) = Σ_m [(m+1)⋯n]/([(λ+m)⋯(λ+n)] m)",
            "division by k+λ applied to T(H_k) = 1/n",
            Recipe::sum(Kernel::Signed, 1, |k, ps| div(h(k), nq(k) + ps.rat("lambda")?)),
            |n, ps| harmonic_shift_sum(n, ps.rat("lambda")?),
        )
        .param(lambda_decl(1))
        .valid_from(1)
        .grid(grid_rats("lambda", &LAMBDAS)),
    )?;

    reg.register(
        IdentitySpec::new(
            "index_over_shift",
            "Σ C(n,k)(-1)^(k-1) k/(k+λ) = n!/((λ+1)⋯(λ+n))",
            "division by k+λ applied to T(k) = [n = 1]",
            Recipe::sum(Kernel::Signed, 1, |k, ps| div(nq(k), nq(k) + ps.rat("lambda")?)),
            |n, ps| div(factorial(n), shifted_product(ps.rat("lambda")?, 1, n)),
        )
        .param(lambda_decl(1))
        .valid_from(1)
        .grid(grid_rats("lambda", &LAMBDAS))
        .route(Recipe::operator(|len, ps| {
            let delta = zero_start(len, |n| Ok(if n == 1 { Q::one() } else { Q::zero() }))?;
            divided_transform(&delta, ps.rat("lambda")?)
        })),
    )?;

    reg.register(
        IdentitySpec::new(
            "reciprocal_shift",
            "Σ C(n,k)(-1)^k/(k+λ) = n!/(λ(λ+1)⋯(λ+n))",
            "division by k+λ applied to T(k) = [n = 1]",
            Recipe::sum(Kernel::Alternating, 0, |k, ps| (nq(k) + ps.rat("lambda")?).recip()),
            |n, ps| div(factorial(n), shifted_product(ps.rat("lambda")?, 0, n)),
        )
        .param(lambda_decl(0))
        .grid(grid_rats("lambda", &LAMBDAS)),
    )?;
    Ok(())
}

fn laguerre_family(reg: &mut Registry) -> Result<()> {
    let laguerre_term = |k: usize, ps: &ParamSet| -> Result<Q> {
        div((-ps.rat("x")?).pow(k as u32), factorial(k))
    };
    let shifted_laguerre = |len: usize, ps: &ParamSet| -> Result<Sequence> {
        let l = families::laguerre(len, ps.rat("x")?)?;
        seq_from(len, 0, |n| Ok(l.get(n)? - Q::one()))
    };

    reg.register(
        IdentitySpec::new(
            "laguerre_sum",
            "Σ C(n,k) (-x)^k/k! = L_n(x)",
            "finite-sum form of Laguerre polynomials",
            Recipe::sum(Kernel::Unsigned, 0, laguerre_term),
            |n, ps| Ok(families::laguerre(n + 1, ps.rat("x")?)?.get(n)?.clone()),
        )
        .param(x_decl())
        .grid(grid_rats("x", &XS)),
    )?;

    reg.register(
        IdentitySpec::new(
            "laguerre_over_k",
            "Σ C(n,k) (-x)^k/(k! k) = Σ_{k<=n} L_k(x)/k - H_n",
            "division by k applied to the Laguerre sum",
            Recipe::sum(Kernel::Unsigned, 1, move |k, ps| Ok(laguerre_term(k, ps)? * unit(k))),
            |n, ps| {
                let l = families::laguerre(n + 1, ps.rat("x")?)?;
                let mut acc = -h(n);
                for k in 1..=n {
                    acc += l.get(k)? * unit(k);
                }
                Ok(acc)
            },
        )
        .param(x_decl())
        .valid_from(1)
        .grid(grid_rats("x", &XS))
        .route(Recipe::operator(move |len, ps| divided_transform(&shifted_laguerre(len, ps)?, &Q::zero()))),
    )?;

    reg.register(
        IdentitySpec::new(
            "laguerre_avg",
            "Σ C(n,k) (-x)^k/(k! (k+1)) = (1/(n+1)) Σ_{k<=n} (L_k(x) - 1)",
            "division by k+1 applied to the Laguerre sum",
            Recipe::sum(Kernel::Unsigned, 1, move |k, ps| Ok(laguerre_term(k, ps)? * unit(k + 1))),
            |n, ps| {
                let l = families::laguerre(n + 1, ps.rat("x")?)?;
                let mut acc = Q::zero();
                for k in 1..=n {
                    acc += l.get(k)? - Q::one();
                }
                div(acc, nq(n + 1))
            },
        )
        .param(x_decl())
        .valid_from(1)
        .grid(grid_rats("x", &XS))
        .route(Recipe::operator(move |len, ps| divided_transform(&shifted_laguerre(len, ps)?, &Q::one()))),
    )?;
    Ok(())
}

fn vandermonde_family(reg: &mut Registry) -> Result<()> {
    let column = |len: usize, ps: &ParamSet| -> Result<Sequence> {
        let p = ps.int("p")? as u64;
        seq_from(len, 0, |n| Ok(binomial(p + n as u64, p)))
    };

    reg.register(
        IdentitySpec::new(
            "vandermonde",
            "Σ C(n,k) C(p,k) = C(p+n,p)",
            "Vandermonde convolution",
            Recipe::sum(Kernel::Unsigned, 0, |k, ps| Ok(binomial(ps.int("p")? as u64, k as u64))),
            |n, ps| {
                let p = ps.int("p")? as u64;
                Ok(binomial(p + n as u64, p))
            },
        )
        .param(p_decl(0))
        .grid(grid_ints("p", 0..=5)),
    )?;

    reg.register(
        IdentitySpec::new(
            "vandermonde_k",
            "Σ C(n,k) C(p,k) k = n C(p+n-1,p-1)",
            "n∇ applied to C(p+n,p)",
            Recipe::sum(Kernel::Unsigned, 0, |k, ps| Ok(nq(k) * binomial(ps.int("p")? as u64, k as u64))),
            |n, ps| {
                let p = ps.int("p")? as u64;
                Ok(nq(n) * binomial(p + n as u64 - 1, p - 1))
            },
        )
        .param(p_decl(1))
        .valid_from(1)
        .grid(grid_ints("p", 1..=5))
        .route(Recipe::operator(move |len, ps| nabla_route(len, 1, |l| column(l, ps)))),
    )?;

    reg.register(
        IdentitySpec::new(
            "vandermonde_avg",
            "Σ C(n,k) C(p,k)/(k+1) = C(p+n+1,p+1)/(n+1)",
            "division by k+1 applied to C(p+n,p)",
            Recipe::sum(Kernel::Unsigned, 0, |k, ps| Ok(binomial(ps.int("p")? as u64, k as u64) * unit(k + 1))),
            |n, ps| {
                let p = ps.int("p")? as u64;
                div(binomial(p + n as u64 + 1, p + 1), nq(n + 1))
            },
        )
        .param(p_decl(0))
        .grid(grid_ints("p", 0..=5))
        .route(Recipe::operator(move |len, ps| average_transform(&column(len, ps)?))),
    )?;
    Ok(())
}

/// Adds every built-in identity to `reg`. Fails if any id is already taken.
pub fn add_builtin_identities(reg: &mut Registry) -> Result<()> {
    powers_and_stirling(reg)?;
    harmonic_family(reg)?;
    skew_family(reg)?;
    fibonacci_lucas(reg)?;
    power_sums(reg)?;
    shifts(reg)?;
    laguerre_family(reg)?;
    vandermonde_family(reg)?;
    Ok(())
}

pub fn register_builtin_identities() -> Registry {
    let mut reg = Registry::new();
    add_builtin_identities(&mut reg).expect("built-in identity ids are unique");
    reg
}
