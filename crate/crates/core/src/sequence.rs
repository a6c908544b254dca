use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};

/// A finite prefix `S_{n0}, ..., S_{n0+N}` of a sequence, with its starting
/// label `n0`. Never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence<T: Scalar> {
    start_label: i64,
    values: Vec<T>,
}

impl<T: Scalar> Sequence<T> {
    /// Builds a sequence; all values must share one scalar context.
    pub fn new(start_label: i64, values: Vec<T>) -> Result<Self> {
        let first = values
            .first()
            .ok_or(Error::EmptyInput("a sequence needs at least one element"))?;
        let ctx = first.context();
        if let Some(other) = values.iter().find(|v| v.context() != ctx) {
            return Err(mode_mismatch::<T>(ctx, other.context()));
        }
        Ok(Sequence {
            start_label,
            values,
        })
    }

    /// Builds a sequence from the values `f(n)` for `n = start .. start + len`.
    pub fn from_fn(start_label: i64, len: usize, mut f: impl FnMut(i64) -> T) -> Result<Self> {
        let values = (0..len as i64).map(|i| f(start_label + i)).collect();
        Self::new(start_label, values)
    }

    pub fn start_label(&self) -> i64 {
        self.start_label
    }

    /// Label of the last element, `n0 + N`.
    pub fn end_label(&self) -> i64 {
        self.start_label + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn context(&self) -> T::Context {
        self.values[0].context()
    }

    pub fn mode(&self) -> ScalarMode {
        T::mode(self.context())
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> {
        self.start_label..=self.end_label()
    }

    pub fn contains_label(&self, n: i64) -> bool {
        (self.start_label..=self.end_label()).contains(&n)
    }

    /// `S_n`; labels outside the stored prefix are an error.
    pub fn get(&self, n: i64) -> Result<&T> {
        if !self.contains_label(n) {
            return Err(Error::window(format!(
                "label {n} outside stored range {}..={}",
                self.start_label,
                self.end_label()
            )));
        }
        Ok(&self.values[(n - self.start_label) as usize])
    }

    /// `Δ^order S_n` for every `n` where it is defined. The start label is
    /// kept and the length shrinks by `order`.
    pub fn forward_difference(&self, order: usize) -> Result<Sequence<T>> {
        if order >= self.len() {
            return Err(Error::window(format!(
                "difference of order {order} needs more than {} elements",
                self.len()
            )));
        }
        let mut current = self.values.clone();
        for _ in 0..order {
            current = current
                .windows(2)
                .map(|w| w[1].clone() - w[0].clone())
                .collect();
        }
        Ok(Sequence {
            start_label: self.start_label,
            values: current,
        })
    }

    pub fn map(&self, f: impl FnMut(&T) -> T) -> Sequence<T> {
        Sequence {
            start_label: self.start_label,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// The same values, relabelled to start at `start_label`.
    pub fn relabel(&self, start_label: i64) -> Sequence<T> {
        Sequence {
            start_label,
            values: self.values.clone(),
        }
    }

    /// Sub-prefix with labels `from ..= to`.
    pub fn slice(&self, from: i64, to: i64) -> Result<Sequence<T>> {
        if from > to || !self.contains_label(from) || !self.contains_label(to) {
            return Err(Error::window(format!(
                "slice {from}..={to} outside stored range {}..={}",
                self.start_label,
                self.end_label()
            )));
        }
        let lo = (from - self.start_label) as usize;
        let hi = (to - self.start_label) as usize;
        Ok(Sequence {
            start_label: from,
            values: self.values[lo..=hi].to_vec(),
        })
    }
}

fn mode_mismatch<T: Scalar>(a: T::Context, b: T::Context) -> Error {
    match (T::mode(a), T::mode(b)) {
        (
            ScalarMode::BigFloat { precision_bits: x },
            ScalarMode::BigFloat { precision_bits: y },
        ) => Error::ModeMismatch(x, y),
        _ => Error::Spec(format!("mixed scalar contexts {a:?} and {b:?}")),
    }
}

/// Every difference sequence `Δ^d S` of a prefix, computed once.
#[derive(Debug, Clone)]
pub(crate) struct Differences<T: Scalar> {
    orders: Vec<Vec<T>>,
    start_label: i64,
}

impl<T: Scalar> Differences<T> {
    pub(crate) fn new(seq: &Sequence<T>) -> Self {
        let mut orders = vec![seq.values.clone()];
        while orders.last().map_or(0, Vec::len) > 1 {
            let next = orders
                .last()
                .unwrap()
                .windows(2)
                .map(|w| w[1].clone() - w[0].clone())
                .collect();
            orders.push(next);
        }
        Differences {
            orders,
            start_label: seq.start_label,
        }
    }

    /// `Δ^order S_n`, if inside the stored window.
    pub(crate) fn get(&self, order: usize, n: i64) -> Option<&T> {
        let row = self.orders.get(order)?;
        let idx = n.checked_sub(self.start_label)?;
        usize::try_from(idx).ok().and_then(|i| row.get(i))
    }
}
