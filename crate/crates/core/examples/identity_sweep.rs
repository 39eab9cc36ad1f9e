// Checking the built-in identities, and registering a new one.
//
// Run with `cargo run --example identity_sweep`.

use bintrans::suite::{Constraint, Kernel, ParamDecl, Recipe};
use bintrans::{register_builtin_identities, ExactRational, IdentitySpec, ParamSet, Status};

pub fn run_example() -> bintrans::Result<()> {
    let mut registry = register_builtin_identities();
    let reports = registry.verify_all(12);
    let passed = reports.iter().filter(|r| r.status.is_pass()).count();
    println!("{} identities, {passed}/{} grid points pass", registry.len(), reports.len());

    let lambda = ParamSet::new().with("lambda", ExactRational::new(-1, 2)?);
    println!("{}", registry.verify("harmonic_lambda", 15, &lambda)?);
    println!("{}", registry.verify("dilcher", 10, &ParamSet::new().with("m", 3))?.to_machine_line());

    // Σ C(n,k) (-1)^k x^k = (1-x)^n
    registry.register(
        IdentitySpec::new(
            "alternating_geometric",
            "Σ C(n,k)(-1)^k x^k = (1-x)^n",
            "binomial theorem",
            Recipe::sum(Kernel::Alternating, 0, |k, ps| Ok(ps.rat("x")?.pow(k as u32))),
            |n, ps| Ok((ExactRational::one() - ps.rat("x")?).pow(n as u32)),
        )
        .param(ParamDecl::rational("x", Constraint::None))
        .grid(vec![ParamSet::new().with("x", 3), ParamSet::new().with("x", ExactRational::new(2, 5)?)]),
    )?;
    for r in registry.verify_grid("alternating_geometric", 20)? {
        assert_eq!(r.status, Status::Pass);
        println!("{r}");
    }
    Ok(())
}

fn main() -> bintrans::Result<()> {
    run_example()
}
