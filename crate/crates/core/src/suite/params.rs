use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Named exact parameters (`p`, `q`, `m`, `r`, `x`, `lambda`).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct ParamSet {
    values: BTreeMap<String, ExactRational>,
}

fn canonical_name(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        other => other,
    }
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: impl Into<ExactRational>) -> Self {
        self.insert(name, value.into());
        self
    }

    pub fn insert(&mut self, name: &str, value: ExactRational) {
        self.values.insert(canonical_name(name).to_string(), value);
    }

    /// Parses `name=value` with a rational literal value.
    pub fn insert_assignment(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Parameter(format!("expected name=value, got {assignment:?}")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Parameter(format!("missing parameter name in {assignment:?}")));
        }
        self.insert(name, value.trim().parse()?);
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ExactRational> {
        self.values.get(canonical_name(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ExactRational)> + '_ {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn rat(&self, name: &str) -> Result<&ExactRational> {
        self.get(name).ok_or_else(|| Error::Parameter(format!("missing parameter {name}")))
    }

    /// A non-negative integer parameter.
    pub fn int(&self, name: &str) -> Result<usize> {
        let v = self.rat(name)?;
        v.to_i64()
            .and_then(|i| usize::try_from(i).ok())
            .ok_or_else(|| Error::Parameter(format!("{name} = {v} is not a non-negative integer")))
    }

    pub fn int_u32(&self, name: &str) -> Result<u32> {
        let v = self.int(name)?;
        u32::try_from(v).map_err(|_| Error::Parameter(format!("{name} = {v} is too large")))
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Integer,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// Integer `>= bound`.
    AtLeast(i64),
    /// Integer in `lo..=hi`. Bounds the cost of a sweep, not the math.
    Between(i64, i64),
    /// `λ + k != 0` for every integer `k` in `from..=n_max`.
    AvoidsPoles { from: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: &'static str,
    pub kind: ParamKind,
    pub constraint: Constraint,
}

impl ParamDecl {
    pub fn integer(name: &'static str, constraint: Constraint) -> Self {
        Self { name, kind: ParamKind::Integer, constraint }
    }

    pub fn rational(name: &'static str, constraint: Constraint) -> Self {
        Self { name, kind: ParamKind::Rational, constraint }
    }
}

/// `Err(reason)` if `params` does not satisfy `schema` for a sweep up to `n_max`.
pub(crate) fn check(schema: &[ParamDecl], params: &ParamSet, n_max: usize) -> std::result::Result<(), String> {
    for (name, _) in params.iter() {
        if !schema.iter().any(|d| d.name == name) {
            return Err(format!("unknown parameter {name}"));
        }
    }
    for decl in schema {
        let value = params.get(decl.name).ok_or_else(|| format!("missing parameter {}", decl.name))?;
        if decl.kind == ParamKind::Integer && !value.is_integer() {
            return Err(format!("{} = {value} must be an integer", decl.name));
        }
        match decl.constraint {
            Constraint::None => {}
            Constraint::AtLeast(lo) => {
                if *value < ExactRational::from(lo) {
                    return Err(format!("{} = {value} must be at least {lo}", decl.name));
                }
            }
            Constraint::Between(lo, hi) => {
                if *value < ExactRational::from(lo) || *value > ExactRational::from(hi) {
                    return Err(format!("{} = {value} must be in {lo}..={hi}", decl.name));
                }
            }
            Constraint::AvoidsPoles { from } => {
                if let Some(v) = value.to_i64() {
                    let k = -v;
                    if k >= from as i64 && k <= n_max as i64 {
                        return Err(format!("{} = {value} is a forbidden shift (pole at k = {k})", decl.name));
                    }
                }
            }
        }
    }
    Ok(())
}
