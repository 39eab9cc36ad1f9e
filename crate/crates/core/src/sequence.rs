use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A finite prefix `s_0, …, s_{N-1}` of a sequence.
///
/// Entries below `valid_from` are placeholders: they are stored as zero and
/// every accessor refuses to hand them out. Operators such as `n∇` raise
/// `valid_from` because `s_{n-1}` does not exist at the bottom of the range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sequence {
    values: Vec<ExactRational>,
    valid_from: usize,
}

impl Sequence {
    pub fn new(values: Vec<ExactRational>) -> Result<Self> {
        Self::with_valid_from(values, 0)
    }

    /// Wraps `values`, zeroing everything below `valid_from`.
    pub fn with_valid_from(mut values: Vec<ExactRational>, valid_from: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if valid_from >= values.len() {
            return Err(Error::Domain(format!(
                "valid_from {valid_from} leaves no defined terms in a sequence of length {}",
                values.len()
            )));
        }
        for v in &mut values[..valid_from] {
            *v = ExactRational::zero();
        }
        Ok(Self { values, valid_from })
    }

    /// Builds a length-`len` sequence from `f(n)` for `n >= valid_from`.
    pub fn from_fn<F>(len: usize, valid_from: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize) -> Result<ExactRational>,
    {
        let values = (0..len)
            .map(|n| if n < valid_from { Ok(ExactRational::zero()) } else { f(n) })
            .collect::<Result<Vec<_>>>()?;
        Self::with_valid_from(values, valid_from)
    }

    pub fn from_integers<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<ExactRational>,
    {
        Self::new(values.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Never true for a constructed sequence; present for clippy's sake.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&ExactRational> {
        if n >= self.values.len() {
            return Err(Error::OutOfRange { index: n, len: self.values.len() });
        }
        if n < self.valid_from {
            return Err(Error::BelowValidFrom { index: n, valid_from: self.valid_from });
        }
        Ok(&self.values[n])
    }

    /// Defined terms as `(n, s_n)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &ExactRational)> + '_ {
        self.values.iter().enumerate().skip(self.valid_from)
    }

    /// Every slot, with `None` below `valid_from`.
    pub fn slots(&self) -> impl Iterator<Item = Option<&ExactRational>> + '_ {
        let vf = self.valid_from;
        self.values.iter().enumerate().map(move |(n, v)| (n >= vf).then_some(v))
    }

    /// The first `len` terms. Fails if that would drop every defined term.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        let len = len.min(self.values.len());
        Self::with_valid_from(self.values[..len].to_vec(), self.valid_from)
    }

    pub(crate) fn require_full(&self, what: &str) -> Result<()> {
        if self.valid_from != 0 {
            return Err(Error::Domain(format!(
                "{what} needs a sequence defined from index 0, got valid_from = {}",
                self.valid_from
            )));
        }
        Ok(())
    }
}

/// `g(t) = Σ_j coefficients[j] t^j`, applied as `g(n∇)`.
///
/// The degree is not canonicalized: trailing zero coefficients are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorPolynomial {
    coefficients: Vec<ExactRational>,
}

impl OperatorPolynomial {
    pub fn new(coefficients: Vec<ExactRational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain("operator polynomial needs at least one coefficient".into()));
        }
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    /// Highest `j` with a nonzero coefficient, or 0 for the zero polynomial.
    pub fn degree_bound(&self) -> usize {
        self.coefficients.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, t: &ExactRational) -> ExactRational {
        self.coefficients
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * t + c)
    }
}
