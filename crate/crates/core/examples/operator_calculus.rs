// Multiplying a_k by k^p or by a polynomial g(k) shows up as n∇ on the
// transformed side.
//
// Run with `cargo run --example operator_calculus`.

use bintrans::families::{factorial, harmonic, index_powers, stirling2};
use bintrans::transform::{
    apply_operator_polynomial, binomial_transform, multiply_by_index_pow, n_nabla, n_nabla_pow,
};
use bintrans::{ExactRational, OperatorPolynomial, Sequence};

fn row(s: &Sequence) -> String {
    s.slots()
        .map(|v| v.map_or_else(|| "·".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join("  ")
}

pub fn run_example() -> bintrans::Result<()> {
    let h = harmonic(7)?;
    println!("H_n          {}", row(&h));
    // n∇H_n = 1, which is the transform of 1/k times k.
    println!("n∇ H_n       {}", row(&n_nabla(&h)?));

    let recips = Sequence::from_fn(7, 1, |n| ExactRational::from(n).recip())?;
    println!("(n∇)^2 1/n   {}", row(&n_nabla_pow(&recips, 2)?));

    // k^p a_k against (n∇)^p b_n on an arbitrary sequence.
    let a = Sequence::from_integers([3, -1, 4, 1, -5, 9, 2, -6])?;
    let b = binomial_transform(&a)?;
    for p in 1..=3 {
        let lhs = binomial_transform(&multiply_by_index_pow(&a, p as u32)?)?;
        let rhs = n_nabla_pow(&b, p)?;
        for (n, v) in rhs.terms() {
            assert_eq!(lhs.get(n)?, v);
        }
        println!("p = {p}: T(k^p a_k) = (n∇)^p b_n from n = {}", rhs.valid_from());
    }

    // g(t) = 2 - t + t^3 applied through the operator.
    let g = OperatorPolynomial::new(vec![2.into(), (-1).into(), 0.into(), 1.into()])?;
    let via_op = apply_operator_polynomial(&g, &b)?;
    let direct = binomial_transform(&Sequence::from_fn(a.len(), 0, |k| {
        Ok(g.eval(&ExactRational::from(k)) * a.get(k)?)
    })?)?;
    for (n, v) in via_op.terms() {
        assert_eq!(direct.get(n)?, v);
    }
    println!("g(n∇) b       {}", row(&via_op));

    // Stirling numbers fall out of the transform of k^p.
    let p = 5;
    let t = binomial_transform(&index_powers(8, p)?)?;
    for n in 1..8 {
        let sign = if n % 2 == 1 { ExactRational::one() } else { -ExactRational::one() };
        let s = t.get(n)?.checked_div(&(sign * factorial(n)))?;
        assert_eq!(s, stirling2(p as usize, n));
        print!("S({p},{n}) = {s}  ");
    }
    println!();
    Ok(())
}

fn main() -> bintrans::Result<()> {
    run_example()
}
