// The built-in generators.
//
// Run with `cargo run --example sequence_families`.

use bintrans::families::{
    binomial_column, fibonacci_at, generalized_harmonic, geometric, harmonic, laguerre, lucas,
    lucas_at, multiple_harmonic_sum, power_sum, skew_harmonic, StirlingTable,
};
use bintrans::Sequence;

fn line(name: &str, s: &Sequence) {
    let terms: Vec<String> = s.terms().map(|(_, v)| v.to_string()).collect();
    println!("{name:<16} {}", terms.join(", "));
}

pub fn run_example() -> bintrans::Result<()> {
    let half = "1/2".parse()?;
    line("H_n", &harmonic(6)?);
    line("H_n^(2)", &generalized_harmonic(6, 2)?);
    line("skew H_n", &skew_harmonic(6)?);
    line("mhs m=2", &multiple_harmonic_sum(6, 2)?);
    line("L_n (Lucas)", &lucas(8)?);
    line("σ_n(3)", &power_sum(6, 3)?);
    line("(1/2)^k", &geometric(6, &half)?);
    line("L_n(1/2)", &laguerre(5, &half)?);
    line("C(4,k)", &binomial_column(7, 4)?);

    let back: Vec<String> = (-6..=6).map(|n| fibonacci_at(n).to_string()).collect();
    println!("F_n, n=-6..6     {}", back.join(", "));
    assert_eq!(lucas_at(-3).to_string(), "-4");

    let table = StirlingTable::new(6);
    for p in 0..=table.p_max() {
        let row: Vec<String> = (0..=p).map(|n| table.get(p, n).unwrap_or_default().to_string()).collect();
        println!("S({p}, ·)          {}", row.join(" "));
    }
    Ok(())
}

fn main() -> bintrans::Result<()> {
    run_example()
}
