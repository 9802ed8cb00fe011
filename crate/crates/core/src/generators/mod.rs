//! Constructions of concrete subset partition graphs and layer families.

mod cyclic;
pub mod random;
mod spindle;

pub use cyclic::{
    cyclic_facet_count, dual_graph, gale_facets, gen_cyclic_construction, hamiltonian_path,
    hamiltonian_path_without_short_chords, CyclicBuild,
};
pub use spindle::{gen_spindle_family, spindle_dset, spindle_index_set, SpindleIndex};

use crate::clf::ConnectedLayerFamily;
use crate::error::SpgError;
use crate::spg::Spg;
use crate::symbols::{DSet, Symbol, SymbolSet};

/// The natural graph of the `dim`-cube. Symbol `s` and `s + dim` label
/// opposite facets; vertex `mask` picks `s + dim` wherever bit `s` is set.
pub fn gen_cube_spg(dim: usize) -> Result<Spg, SpgError> {
    if dim == 0 || dim > 16 {
        return Err(SpgError::BadParameter(format!(
            "cube dimension must lie in 1..=16, got {dim}"
        )));
    }
    let count = 1usize << dim;
    let blocks = (0..count)
        .map(|mask| {
            let members = (0..dim)
                .map(|s| {
                    if mask >> s & 1 == 1 {
                        (s + dim) as Symbol
                    } else {
                        s as Symbol
                    }
                })
                .collect::<Vec<_>>();
            vec![DSet::new(members).expect("one symbol per opposite pair")]
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..count {
        for s in 0..dim {
            let v = u ^ (1 << s);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let g = Spg::new(SymbolSet::new(2 * dim), dim, blocks, edges)?;
    let first = DSet::from_sorted((0..dim as Symbol).collect());
    let last = DSet::from_sorted((dim as Symbol..2 * dim as Symbol).collect());
    g.with_apices(first, last)
}

/// The path `{1..d}, {2..d+1}, .., {n-d+1..n}` (written 0-based).
pub fn gen_hirsch_path_clf(n: usize, d: usize) -> Result<ConnectedLayerFamily, SpgError> {
    if d == 0 || n <= d {
        return Err(SpgError::BadParameter(format!(
            "need n > d >= 1, got n = {n}, d = {d}"
        )));
    }
    let layers = (0..=n - d)
        .map(|i| {
            vec![DSet::from_sorted(
                (i as Symbol..(i + d) as Symbol).collect(),
            )]
        })
        .collect();
    ConnectedLayerFamily::new(SymbolSet::new(n), d, layers)
}

/// The six-vertex example on symbols `1..6` (stored 0-based) with blocks
/// `{123,126}, {246}, {345,456}, {156}, {234}, {135}`.
pub fn gen_figure1() -> Spg {
    let blocks: Vec<Vec<Vec<Symbol>>> = vec![
        vec![vec![1, 2, 3], vec![1, 2, 6]],
        vec![vec![2, 4, 6]],
        vec![vec![3, 4, 5], vec![4, 5, 6]],
        vec![vec![1, 5, 6]],
        vec![vec![2, 3, 4]],
        vec![vec![1, 3, 5]],
    ]
    .into_iter()
    .map(|block| {
        block
            .into_iter()
            .map(|a| a.into_iter().map(|s| s - 1).collect())
            .collect()
    })
    .collect();
    // 0 = {123,126}, 1 = {246}, 2 = {345,456}, 3 = {156}, 4 = {234}, 5 = {135}
    let edges = [
        (0, 1),
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 2),
        (1, 4),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 5),
    ];
    let labels = (1..=6).map(|s| s.to_string()).collect();
    let g = Spg::from_raw(6, 3, blocks, edges).expect("fixture is valid");
    let symbols = SymbolSet::with_labels(6, labels).expect("fixture labels are distinct");
    Spg::new(symbols, 3, g.blocks().to_vec(), g.edges().iter().copied()).expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{contraction, diameter};

    #[test]
    fn cube_shape() {
        let g = gen_cube_spg(3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edges().len(), 12);
        assert_eq!(diameter(&g).value, 3);
        assert!(gen_cube_spg(0).is_err());
    }

    #[test]
    fn hirsch_path_layers() {
        let clf = gen_hirsch_path_clf(6, 2).unwrap();
        let layers: Vec<Vec<u32>> = clf
            .layers()
            .iter()
            .map(|l| l[0].members().to_vec())
            .collect();
        assert_eq!(
            layers,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]]
        );
        assert_eq!(clf.diameter(), 4);
        assert!(gen_hirsch_path_clf(3, 3).is_err());
    }

    #[test]
    fn figure1_is_two_cube_contractions() {
        let cube = gen_cube_spg(3).unwrap();
        let find = |g: &Spg, v: &[u32]| g.block_of(&DSet::new(v.to_vec()).unwrap()).unwrap();
        // (123, 126) and (345, 456) in 1-based labels
        let (u, v) = (find(&cube, &[0, 1, 2]), find(&cube, &[0, 1, 5]));
        let once = contraction(&cube, u, v).unwrap();
        let (u, v) = (find(&once, &[2, 3, 4]), find(&once, &[3, 4, 5]));
        let twice = contraction(&once, u, v).unwrap();
        assert!(twice.same_up_to_block_order(&gen_figure1()));
        assert_eq!(gen_figure1().family_size(), 8);
    }
}
