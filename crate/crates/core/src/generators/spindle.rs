//! The quadratic spindle family `G_m`: `n = 4m` symbols, dimension `2m`,
//! a path on `2m² + 1` singleton blocks whose apices are `2m²` apart.

use serde::{Deserialize, Serialize};

use crate::error::SpgError;
use crate::spg::Spg;
use crate::symbols::{DSet, Symbol, SymbolSet};

/// A triple `(a, b, c)` of the index set; ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpindleIndex {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// `{(a, b, c) : 0 <= a, b < m, c in {0, 1}} ∪ {(m, 0, 0)}` in lexicographic order.
pub fn spindle_index_set(m: usize) -> Vec<SpindleIndex> {
    let mut out = Vec::with_capacity(2 * m * m + 1);
    for a in 0..m {
        for b in 0..m {
            for c in 0..2 {
                out.push(SpindleIndex { a, b, c });
            }
        }
    }
    out.push(SpindleIndex { a: m, b: 0, c: 0 });
    out
}

/// Symbol `(i, j)` with `1 <= i <= 2m`, `j in {1, 2}` is encoded as `2(i-1) + (j-1)`.
fn encode(i: usize, j: usize) -> Symbol {
    (2 * (i - 1) + (j - 1)) as Symbol
}

/// The d-set `A_{a,b,c}`:
/// rows `a+1 ..= a+m-b-1` in full, row `a+m-b` from column `c+1`,
/// row `a+m-b+1` up to column `c`, rows `a+m-b+2 ..= a+m+1` in full.
pub fn spindle_dset(m: usize, idx: SpindleIndex) -> DSet {
    let SpindleIndex { a, b, c } = idx;
    let mut members = Vec::with_capacity(2 * m);
    let mut row = |i: usize, cols: std::ops::RangeInclusive<usize>| {
        for j in cols {
            members.push(encode(i, j));
        }
    };
    let pivot = a + m - b;
    for i in a + 1..pivot {
        row(i, 1..=2);
    }
    row(pivot, c + 1..=2);
    row(pivot + 1, 1..=c);
    for i in pivot + 2..=a + m + 1 {
        row(i, 1..=2);
    }
    DSet::new(members).expect("rows are distinct")
}

pub fn gen_spindle_family(m: usize) -> Result<Spg, SpgError> {
    if m == 0 {
        return Err(SpgError::BadParameter("spindle family needs m >= 1".into()));
    }
    let n = 4 * m;
    let d = 2 * m;
    let index = spindle_index_set(m);
    let blocks: Vec<Vec<DSet>> = index
        .iter()
        .map(|&idx| vec![spindle_dset(m, idx)])
        .collect();
    if let Some(bad) = blocks.iter().find(|b| b[0].len() != d) {
        return Err(SpgError::BadParameter(format!(
            "internal: {} has {} members",
            bad[0],
            bad[0].len()
        )));
    }
    let labels = (1..=2 * m)
        .flat_map(|i| (1..=2).map(move |j| format!("({i},{j})")))
        .collect();
    let symbols = SymbolSet::with_labels(n, labels)?;
    let count = blocks.len();
    let first = blocks[0][0].clone();
    let last = blocks[count - 1][0].clone();
    Spg::new(symbols, d, blocks, (1..count).map(|i| (i - 1, i)))?.with_apices(first, last)
}
