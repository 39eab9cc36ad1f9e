// Signed and unsigned binomial transforms of a few small sequences.
//
// Run with `cargo run --example transform_pair`.

use bintrans::families::{fibonacci, harmonic};
use bintrans::transform::{
    binomial_transform, inverse_unsigned_binomial_transform, unsigned_binomial_transform,
};
use bintrans::{ExactRational, Sequence};

fn show(label: &str, s: &Sequence) {
    let terms: Vec<String> = s.terms().map(|(_, v)| v.to_string()).collect();
    println!("{label:<22} {}", terms.join(", "));
}

pub fn run_example() -> bintrans::Result<()> {
    // 1/k with a_0 = 0 maps to the harmonic numbers.
    let recips = Sequence::from_fn(8, 0, |k| {
        if k == 0 {
            Ok(ExactRational::zero())
        } else {
            ExactRational::from(k).recip()
        }
    })?;
    let b = binomial_transform(&recips)?;
    show("1/k", &recips);
    show("T(1/k)", &b);
    assert_eq!(b, harmonic(8)?);

    // Signed transform undoes itself.
    assert_eq!(binomial_transform(&b)?, recips);

    // Fibonacci numbers are a fixed point.
    let fib = fibonacci(10)?;
    show("F_k", &fib);
    assert_eq!(binomial_transform(&fib)?, fib);

    // Unsigned: Σ C(n,k) F_k = F_{2n}.
    let up = unsigned_binomial_transform(&fib)?;
    show("unsigned T(F_k)", &up);
    let evens = fibonacci(19)?;
    for n in 0..10 {
        assert_eq!(up.get(n)?, evens.get(2 * n)?);
    }
    assert_eq!(inverse_unsigned_binomial_transform(&up)?, fib);
    Ok(())
}

fn main() -> bintrans::Result<()> {
    run_example()
}
