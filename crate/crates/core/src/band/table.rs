use std::fmt;
use std::sync::Arc;

use super::{Band, FormalSum};

type NullPredicate = dyn Fn(&[usize]) -> bool + Send + Sync;

/// A finite candidate band given by a multiplication table over indices
/// `0..n`, with index 0 the zero and index 1 the unit.
///
/// Nothing is assumed about the table or predicate; use
/// [`check_band_axioms`](super::check_band_axioms) to find out whether the
/// candidate is a band.
#[derive(Clone)]
pub struct TableBand {
    name: String,
    table: Vec<Vec<usize>>,
    null: Arc<NullPredicate>,
}

impl fmt::Debug for TableBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TableBand").field("name", &self.name).field("table", &self.table).finish()
    }
}

impl TableBand {
    /// `null` receives the canonical (sorted, zero-free) index list.
    pub fn new(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        null: impl Fn(&[usize]) -> bool + Send + Sync + 'static,
    ) -> Self {
        assert!(table.len() >= 2, "a table band needs at least 0 and 1");
        assert!(table.iter().all(|row| row.len() == table.len()), "multiplication table must be square");
        TableBand { name: name.into(), table, null: Arc::new(null) }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }
}

impl Band for TableBand {
    type Elem = usize;

    fn id(&self) -> String {
        self.name.clone()
    }

    fn zero(&self) -> usize {
        0
    }

    fn one(&self) -> usize {
        1
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn is_null(&self, sum: &FormalSum<usize>) -> bool {
        (self.null)(sum.entries())
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.table.len()).collect())
    }
}
