// Dividing a_k by k + λ, and the running average that handles a_0 ≠ 0.
//
// Run with `cargo run --example division_transforms`.

use bintrans::families::{fibonacci, harmonic};
use bintrans::transform::{average_transform, binomial_transform, divided_transform};
use bintrans::{Error, ExactRational, Sequence};

fn q(s: &str) -> ExactRational {
    s.parse().expect("literal")
}

pub fn run_example() -> bintrans::Result<()> {
    // T(H_k) = 1/n, so dividing H_k by k + λ is a weighted sum of 1/m.
    let h = harmonic(9)?;
    let b = binomial_transform(&h)?;
    for lambda in ["0", "1", "3", "-1/2"].map(q) {
        let c = divided_transform(&b, &lambda)?;
        let terms: Vec<String> = c.terms().map(|(_, v)| v.to_string()).collect();
        println!("λ = {lambda:<5} {}", terms.join(", "));
    }

    // λ = 1 gives H_n/(n+1).
    let c = divided_transform(&b, &ExactRational::one())?;
    for (n, v) in c.terms() {
        assert_eq!(v.clone(), h.get(n)?.checked_div(&ExactRational::from(n + 1))?);
    }

    // A negative integer λ hits a pole; everything before it still works.
    let lambda = q("-4");
    match divided_transform(&b, &lambda) {
        Err(Error::ForbiddenShift { n, .. }) => {
            println!("λ = -4 breaks at n = {n}");
            let prefix = divided_transform(&b.truncated(n)?, &lambda)?;
            println!("usable prefix has {} terms", prefix.len());
        }
        other => panic!("expected a forbidden shift, got {other:?}"),
    }

    // Average: F_k/(k+1) maps to (F_{n+2} - 1)/(n+1).
    let fib = fibonacci(12)?;
    let avg = average_transform(&binomial_transform(&fib)?)?;
    for n in 0..10 {
        let expected = (fib.get(n + 2)? - ExactRational::one()).checked_div(&ExactRational::from(n + 1))?;
        assert_eq!(avg.get(n)?, &expected);
    }
    println!("fibonacci average ok up to n = 9");

    let delta = Sequence::from_integers([1, 0, 0, 0, 0])?;
    let terms: Vec<String> = average_transform(&delta)?.terms().map(|(_, v)| v.to_string()).collect();
    println!("average of a delta: {}", terms.join(", "));
    Ok(())
}

fn main() -> bintrans::Result<()> {
    run_example()
}
