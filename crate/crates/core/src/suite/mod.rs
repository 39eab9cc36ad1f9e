//! Executable identity registry.
//!
//! An identity is checked over `valid_from..=n_max` by computing its left
//! side by direct summation `Σ C(n,k) w_k t_k` (with no operator shortcuts), its
//! right side from a closed form, and comparing exactly. Identities that
//! the operator calculus produces can also carry an *operator route*: the
//! same quantity obtained through `n∇`, `divided_transform` or
//! `average_transform`. That route is compared against the closed form too.

mod catalog;
mod params;
mod report;

use std::collections::BTreeMap;
use std::fmt;

pub use catalog::{add_builtin_identities, register_builtin_identities};
pub use params::{Constraint, ParamDecl, ParamKind, ParamSet};
pub use report::{Counterexample, Route, Status, VerificationReport};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::sequence::Sequence;
use crate::transform::binomial_row;

pub type TermFn = Box<dyn Fn(usize, &ParamSet) -> Result<ExactRational> + Send + Sync>;
pub type SequenceFn = Box<dyn Fn(usize, &ParamSet) -> Result<Sequence> + Send + Sync>;
pub type ClosedForm = Box<dyn Fn(usize, &ParamSet) -> Result<ExactRational> + Send + Sync>;
pub type ValidFromFn = Box<dyn Fn(&ParamSet) -> Result<usize> + Send + Sync>;

/// Sign pattern of a binomial sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `(-1)^(k-1)`
    Signed,
    /// `(-1)^k`
    Alternating,
    Unsigned,
}

impl Kernel {
    fn negative(self, k: usize) -> bool {
        match self {
            Kernel::Signed => k.is_multiple_of(2),
            Kernel::Alternating => k % 2 == 1,
            Kernel::Unsigned => false,
        }
    }
}

/// How to produce one side of an identity as a sequence in `n`.
pub enum Recipe {
    /// `Σ_{k=from}^{n} C(n,k) kernel(k) term(k)`.
    Sum { kernel: Kernel, from: usize, term: TermFn },
    /// Any sequence built by the caller, given the prefix length.
    Operator(SequenceFn),
}

impl Recipe {
    pub fn sum<F>(kernel: Kernel, from: usize, term: F) -> Self
    where
        F: Fn(usize, &ParamSet) -> Result<ExactRational> + Send + Sync + 'static,
    {
        Recipe::Sum { kernel, from, term: Box::new(term) }
    }

    pub fn operator<F>(f: F) -> Self
    where
        F: Fn(usize, &ParamSet) -> Result<Sequence> + Send + Sync + 'static,
    {
        Recipe::Operator(Box::new(f))
    }

    /// Terms `0..=n_max`.
    pub fn evaluate(&self, n_max: usize, params: &ParamSet) -> Result<Sequence> {
        match self {
            Recipe::Sum { kernel, from, term } => {
                let terms = (*from..=n_max)
                    .map(|k| term(k, params))
                    .collect::<Result<Vec<_>>>()?;
                let mut out = Vec::with_capacity(n_max + 1);
                for n in 0..=n_max {
                    let row = binomial_row(n);
                    let mut acc = ExactRational::zero();
                    for k in *from..=n {
                        let t = ExactRational::from_integer(row[k].clone()) * &terms[k - from];
                        if kernel.negative(k) {
                            acc -= t;
                        } else {
                            acc += t;
                        }
                    }
                    out.push(acc);
                }
                Sequence::new(out)
            }
            Recipe::Operator(f) => {
                let s = f(n_max + 1, params)?;
                if s.len() < n_max + 1 {
                    return Err(Error::Domain(format!(
                        "operator route produced {} terms, wanted {}",
                        s.len(),
                        n_max + 1
                    )));
                }
                Ok(s)
            }
        }
    }
}

/// One registered identity `lhs(n) = rhs(n)` for `n >= valid_from`.
pub struct IdentitySpec {
    pub id: String,
    pub description: String,
    pub derivation: String,
    /// Set when the registered form differs from a commonly quoted variant;
    /// records that variant and why it was not used.
    pub note: Option<String>,
    pub params: Vec<ParamDecl>,
    /// Parameter sets used by [`Registry::verify_all`].
    pub grid: Vec<ParamSet>,
    lhs: Recipe,
    rhs: ClosedForm,
    route: Option<Recipe>,
    valid_from: ValidFromFn,
}

impl IdentitySpec {
    pub fn new<F>(id: &str, description: &str, derivation: &str, lhs: Recipe, rhs: F) -> Self
    where
        F: Fn(usize, &ParamSet) -> Result<ExactRational> + Send + Sync + 'static,
    {
        Self {
            id: id.to_string(),
            description: description.to_string(),
            derivation: derivation.to_string(),
            note: None,
            params: Vec::new(),
            grid: vec![ParamSet::new()],
            lhs,
            rhs: Box::new(rhs),
            route: None,
            valid_from: Box::new(|_| Ok(0)),
        }
    }

    pub fn valid_from(mut self, n: usize) -> Self {
        self.valid_from = Box::new(move |_| Ok(n));
        self
    }

    pub fn valid_from_with<F>(mut self, f: F) -> Self
    where
        F: Fn(&ParamSet) -> Result<usize> + Send + Sync + 'static,
    {
        self.valid_from = Box::new(f);
        self
    }

    pub fn param(mut self, decl: ParamDecl) -> Self {
        self.params.push(decl);
        self
    }

    pub fn grid(mut self, grid: Vec<ParamSet>) -> Self {
        self.grid = grid;
        self
    }

    pub fn route(mut self, route: Recipe) -> Self {
        self.route = Some(route);
        self
    }

    pub fn note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub fn has_route(&self) -> bool {
        self.route.is_some()
    }

    pub fn first_valid_n(&self, params: &ParamSet) -> Result<usize> {
        (self.valid_from)(params)
    }

    pub fn lhs_at(&self, n: usize, params: &ParamSet) -> Result<ExactRational> {
        Ok(self.lhs.evaluate(n, params)?.get(n)?.clone())
    }

    pub fn rhs_at(&self, n: usize, params: &ParamSet) -> Result<ExactRational> {
        (self.rhs)(n, params)
    }

    /// Checks `lhs = rhs` (and `route = rhs`) for every `n` in `valid_from..=n_max`.
    pub fn verify(&self, n_max: usize, params: &ParamSet) -> VerificationReport {
        let mut report = VerificationReport {
            identity_id: self.id.clone(),
            params: params.clone(),
            n_min: 0,
            n_max,
            status: Status::Pass,
        };
        if let Err(reason) = params::check(&self.params, params, n_max) {
            report.status = Status::Skipped(reason);
            return report;
        }
        let n_min = match self.first_valid_n(params) {
            Ok(n) => n,
            Err(e) => {
                report.status = Status::Error(e.to_string());
                return report;
            }
        };
        report.n_min = n_min;
        if n_max < n_min.max(1) {
            report.status = Status::Skipped(format!("n_max {n_max} is below valid_from {n_min}"));
            return report;
        }
        report.status = match self.compare(n_min, n_max, params) {
            Ok(None) => Status::Pass,
            Ok(Some(cx)) => Status::Fail(cx),
            Err(e) => Status::Error(e.to_string()),
        };
        report
    }

    fn compare(&self, n_min: usize, n_max: usize, params: &ParamSet) -> Result<Option<Counterexample>> {
        let lhs = self.lhs.evaluate(n_max, params)?;
        let route = self.route.as_ref().map(|r| r.evaluate(n_max, params)).transpose()?;
        for n in n_min..=n_max {
            let rhs = self.rhs_at(n, params)?;
            let direct = lhs.get(n)?;
            if *direct != rhs {
                return Ok(Some(Counterexample { n, lhs: direct.clone(), rhs, route: Route::Direct }));
            }
            if let Some(route) = &route {
                if n >= route.valid_from() {
                    let via = route.get(n)?;
                    if *via != rhs {
                        return Ok(Some(Counterexample { n, lhs: via.clone(), rhs, route: Route::Operator }));
                    }
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("derivation", &self.derivation)
            .field("params", &self.params)
            .field("grid", &self.grid.len())
            .field("route", &self.route.is_some())
            .finish()
    }
}

/// Identities keyed by id. Iteration order is sorted by id.
#[derive(Default, Debug)]
pub struct Registry {
    identities: BTreeMap<String, IdentitySpec>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, spec: IdentitySpec) -> Result<()> {
        if self.identities.contains_key(&spec.id) {
            return Err(Error::DuplicateIdentity(spec.id));
        }
        self.identities.insert(spec.id.clone(), spec);
        Ok(())
    }

    pub fn lookup(&self, id: &str) -> Result<&IdentitySpec> {
        self.identities.get(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.identities.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &IdentitySpec> + '_ {
        self.identities.values()
    }

    pub fn verify(&self, id: &str, n_max: usize, params: &ParamSet) -> Result<VerificationReport> {
        Ok(self.lookup(id)?.verify(n_max, params))
    }

    /// One report per grid point of `id`.
    pub fn verify_grid(&self, id: &str, n_max: usize) -> Result<Vec<VerificationReport>> {
        let spec = self.lookup(id)?;
        Ok(spec.grid.iter().map(|ps| spec.verify(n_max, ps)).collect())
    }

    /// Every identity over its default grid, sorted by id. Identities are
    /// checked on scoped worker threads; output order does not depend on
    /// scheduling.
    pub fn verify_all(&self, n_max: usize) -> Vec<VerificationReport> {
        let specs: Vec<&IdentitySpec> = self.identities.values().collect();
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(specs.len().max(1));
        let chunk = specs.len().div_ceil(workers).max(1);
        std::thread::scope(|scope| {
            let handles: Vec<_> = specs
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .flat_map(|spec| spec.grid.iter().map(move |ps| spec.verify(n_max, ps)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("verification worker panicked"))
                .collect()
        })
    }
}

/// Runs the built-in registry over its default grids.
pub fn verify_all(n_max: usize) -> Vec<VerificationReport> {
    register_builtin_identities().verify_all(n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(id: &str, rhs_offset: i64) -> IdentitySpec {
        // Σ C(n,k) = 2^n, optionally perturbed
        IdentitySpec::new(id, "row sums", "test", Recipe::sum(Kernel::Unsigned, 0, |_, _| Ok(1.into())), move |n, _| {
            Ok(ExactRational::from(2).pow(n as u32) + ExactRational::from(if n == 3 { rhs_offset } else { 0 }))
        })
    }

    #[test]
    fn registry_rejects_duplicates() {
        let mut reg = Registry::new();
        reg.register(toy("a", 0)).unwrap();
        assert_eq!(reg.register(toy("a", 0)), Err(Error::DuplicateIdentity("a".into())));
        assert!(matches!(reg.lookup("b"), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn failure_carries_first_counterexample() {
        let r = toy("bad", 1).verify(6, &ParamSet::new());
        match r.status {
            Status::Fail(cx) => {
                assert_eq!(cx.n, 3);
                assert_eq!(cx.lhs, ExactRational::from(8));
                assert_eq!(cx.rhs, ExactRational::from(9));
                assert_eq!(cx.route, Route::Direct);
            }
            other => panic!("expected failure, got {other:?}"),
        }
        assert!(toy("good", 0).verify(6, &ParamSet::new()).status.is_pass());
    }

    #[test]
    fn bad_operator_route_is_caught() {
        let spec = toy("routed", 0).route(Recipe::operator(|len, _| {
            Sequence::from_fn(len, 0, |n| Ok(ExactRational::from(n)))
        }));
        match spec.verify(4, &ParamSet::new()).status {
            Status::Fail(cx) => {
                assert_eq!(cx.route, Route::Operator);
                assert_eq!(cx.n, 0);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn kernels() {
        let ones = |_: usize, _: &ParamSet| Ok(ExactRational::one());
        let p = ParamSet::new();
        let signed = Recipe::sum(Kernel::Signed, 0, ones).evaluate(3, &p).unwrap();
        assert_eq!(signed.get(0).unwrap(), &ExactRational::from(-1));
        assert_eq!(signed.get(3).unwrap(), &ExactRational::zero());
        let alt = Recipe::sum(Kernel::Alternating, 0, ones).evaluate(3, &p).unwrap();
        assert_eq!(alt.get(0).unwrap(), &ExactRational::one());
        let from1 = Recipe::sum(Kernel::Signed, 1, ones).evaluate(3, &p).unwrap();
        assert_eq!(from1.get(0).unwrap(), &ExactRational::zero());
        assert_eq!(from1.get(2).unwrap(), &ExactRational::one());
    }
}
