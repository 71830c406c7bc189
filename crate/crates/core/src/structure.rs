//! Structural matrices of a directed graph: adjacency `A`, hop-count distance
//! `P`, external `E = P - A`, and the binarizations of `P` and `E`.

use crate::count::{ExtendedCount, Finite, Inf};
use crate::error::MatrixError;
use crate::graph::Graph;
use crate::matrix::{binarize, ew_sub, BinaryMatrix, CountMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureBundle {
    pub a: BinaryMatrix,
    pub p: CountMatrix,
    pub p_hat: BinaryMatrix,
    pub e: CountMatrix,
    pub e_hat: BinaryMatrix,
}

pub fn build_adjacency(g: &Graph) -> BinaryMatrix {
    let mut a = BinaryMatrix::zeros(g.n());
    for (s, d) in g.edges() {
        a.set(s, d, true);
    }
    a
}

/// All-pairs hop counts by Floyd-Warshall. The diagonal is pinned to 0 even
/// when a cycle returns to a node; unreachable pairs are `Inf`.
pub fn distance_matrix(a: &BinaryMatrix) -> CountMatrix {
    let n = crate::matrix::Cells::dim(a);
    let mut dist: Vec<Option<u64>> = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                dist[i * n + j] = Some(0);
            } else if a.get(i, j) {
                dist[i * n + j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = dist[i * n + k] else { continue };
            for j in 0..n {
                if let Some(kj) = dist[k * n + j] {
                    let via = ik + kj;
                    let cell = &mut dist[i * n + j];
                    if cell.is_none_or(|cur| via < cur) {
                        *cell = Some(via);
                    }
                }
            }
        }
    }
    let cells: Vec<ExtendedCount> = dist.into_iter().map(|d| d.map_or(Inf, Finite)).collect();
    CountMatrix::from_cells(n, cells).expect("n*n cells")
}

/// `E = P - A`: the hop count wherever no direct edge exists, 0 on edges,
/// `Inf` where unreachable.
pub fn external_matrix(p: &CountMatrix, a: &BinaryMatrix) -> Result<CountMatrix, MatrixError> {
    ew_sub(p, a)
}

pub fn build_structure(g: &Graph) -> Result<StructureBundle, MatrixError> {
    let a = build_adjacency(g);
    let p = distance_matrix(&a);
    let p_hat = binarize(&p);
    let e = external_matrix(&p, &a)?;
    let e_hat = binarize(&e);
    Ok(StructureBundle { a, p, p_hat, e, e_hat })
}
