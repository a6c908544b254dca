use crate::scalar::Scalar;
use crate::sequence::Sequence;

/// One cell of a transformation table.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformEntry<T> {
    Valid(T),
    /// A zero or near-zero difference was divided by here or upstream.
    Breakdown,
    /// The input window of the cell exceeds the supplied sequence.
    Unavailable,
}

impl<T> TransformEntry<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            TransformEntry::Valid(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_value(self) -> Option<T> {
        match self {
            TransformEntry::Valid(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, TransformEntry::Valid(_))
    }

    pub fn is_breakdown(&self) -> bool {
        matches!(self, TransformEntry::Breakdown)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> TransformEntry<U> {
        match self {
            TransformEntry::Valid(v) => TransformEntry::Valid(f(v)),
            TransformEntry::Breakdown => TransformEntry::Breakdown,
            TransformEntry::Unavailable => TransformEntry::Unavailable,
        }
    }
}

/// Triangular table of transforms `T_k^(n)`, `0 ≤ k ≤ K`.
///
/// Column `k` holds the labels `n` whose window `S_n ..= S_{n + span·k}`
/// fits the input, where `span` is 3 for the lattice-Boussinesq transform
/// and 2 for the ε-algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformTable<T> {
    start_label: i64,
    input_len: usize,
    span: usize,
    columns: Vec<Vec<TransformEntry<T>>>,
}

impl<T: Clone> TransformTable<T> {
    /// Assembles a table from its columns. Column `k` must hold exactly
    /// [`Self::column_len`] entries.
    pub fn from_columns(
        start_label: i64,
        input_len: usize,
        span: usize,
        columns: Vec<Vec<TransformEntry<T>>>,
    ) -> Self {
        for (k, col) in columns.iter().enumerate() {
            assert_eq!(
                col.len(),
                feasible_len(input_len, span, k),
                "column {k} has the wrong length"
            );
        }
        TransformTable {
            start_label,
            input_len,
            span,
            columns,
        }
    }

    /// The order-zero table of a sequence alone.
    pub fn gauge(seq: &Sequence<T>, span: usize) -> Self
    where
        T: Scalar,
    {
        let col = seq
            .values()
            .iter()
            .cloned()
            .map(TransformEntry::Valid)
            .collect();
        TransformTable::from_columns(seq.start_label(), seq.len(), span, vec![col])
    }

    pub fn start_label(&self) -> i64 {
        self.start_label
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    /// Number of input elements consumed per order.
    pub fn span(&self) -> usize {
        self.span
    }

    /// Requested maximum order `K`.
    pub fn max_order(&self) -> usize {
        self.columns.len() - 1
    }

    /// Number of in-range labels for order `k`.
    pub fn column_len(&self, k: usize) -> usize {
        feasible_len(self.input_len, self.span, k)
    }

    pub fn column(&self, k: usize) -> Option<&[TransformEntry<T>]> {
        self.columns.get(k).map(Vec::as_slice)
    }

    /// Cell `(k, n)` by reference; `None` when out of range.
    pub fn entry(&self, k: usize, n: i64) -> Option<&TransformEntry<T>> {
        let idx = usize::try_from(n.checked_sub(self.start_label)?).ok()?;
        self.columns.get(k)?.get(idx)
    }

    /// Cell `(k, n)`; anything out of range is `Unavailable`.
    pub fn get(&self, k: usize, n: i64) -> TransformEntry<T> {
        self.entry(k, n)
            .cloned()
            .unwrap_or(TransformEntry::Unavailable)
    }

    /// Labels of the input sequence, i.e. every row of the table.
    pub fn labels(&self) -> impl Iterator<Item = i64> {
        self.start_label..self.start_label + self.input_len as i64
    }

    /// Valid values of column `k` as a sequence, if the column has any
    /// entries and none of them broke down.
    pub fn column_sequence(&self, k: usize) -> Option<Sequence<T>>
    where
        T: Scalar,
    {
        let col = self.columns.get(k)?;
        let values: Option<Vec<T>> = col.iter().map(|e| e.value().cloned()).collect();
        Sequence::new(self.start_label, values?).ok()
    }

    /// Applies `f` to every valid cell.
    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> TransformTable<U> {
        TransformTable {
            start_label: self.start_label,
            input_len: self.input_len,
            span: self.span,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().cloned().map(|e| e.map(|v| f(&v))).collect())
                .collect(),
        }
    }
}

pub(crate) fn feasible_len(input_len: usize, span: usize, k: usize) -> usize {
    input_len.saturating_sub(span * k)
}
