//! Per-quiver table of indecomposables and their Hom dimensions.
//!
//! Built once and then only read, so a `Catalog` can be shared between
//! threads behind an `Arc`.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::sync::Arc;

use super::{hom_dim, reflect_minus, Representation};
use crate::error::{Error, Result};
use crate::quiver::{reflect, DimVector, DynkinType, Quiver};

#[derive(Debug)]
pub struct Catalog {
    quiver: Arc<Quiver>,
    dynkin: DynkinType,
    roots: Vec<DimVector>,
    indecs: Vec<Arc<Representation>>,
    /// `hom[i][j] = [Y_i, Y_j]`.
    hom: Vec<Vec<usize>>,
    /// Indecomposables listed so that `[X, Y] > 0` puts `X` before `Y`.
    order: Vec<usize>,
    position: Vec<usize>,
}

/// Order in which every vertex is a sink of the quiver reflected at all the
/// earlier ones: arrow `s -> e` puts `e` before `s`.
fn sink_order(q: &Quiver) -> Vec<usize> {
    let n = q.vertex_count();
    let mut out_deg = vec![0usize; n];
    for a in q.arrows() {
        out_deg[a.source] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| out_deg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for a in q.arrows() {
            if a.target == v {
                out_deg[a.source] -= 1;
                if out_deg[a.source] == 0 {
                    heap.push(Reverse(a.source));
                }
            }
        }
    }
    order
}

/// The indecomposable with dimension vector `root`, obtained by applying
/// `S^-` functors to a simple along a Coxeter sink sequence.
pub(crate) fn build_indecomposable(q: &Arc<Quiver>, root: &DimVector) -> Result<Representation> {
    let n = q.vertex_count();
    let order = sink_order(q);
    if order.len() != n {
        return Err(Error::Precondition("quiver has an oriented cycle".into()));
    }
    let mut cur: Vec<i64> = root.0.iter().map(|&x| x as i64).collect();
    let mut quiver = (**q).clone();
    let mut path = Vec::new();
    let limit = 4 * n * n + 8;
    let start = loop {
        let j = order[path.len() % n];
        if cur.iter().enumerate().all(|(i, &c)| c == i64::from(i == j)) {
            break j;
        }
        cur = reflect(q, &cur, j);
        if cur.iter().any(|&c| c < 0) || path.len() > limit {
            return Err(Error::NotARoot(root.to_string()));
        }
        quiver = quiver.reflect_at(j);
        path.push(j);
    };
    let mut rep = Representation::simple(Arc::new(quiver), start);
    for &j in path.iter().rev() {
        rep = reflect_minus(&rep, j)?;
    }
    if **rep.quiver() != **q || rep.dim() != root {
        return Err(Error::Inconsistent(format!("reflection functors missed root {root}")));
    }
    Representation::new(q.clone(), rep.dim().clone(), rep.maps().to_vec())
}

impl Catalog {
    pub fn new(quiver: Quiver) -> Result<Self> {
        Self::from_arc(Arc::new(quiver))
    }

    pub fn from_arc(quiver: Arc<Quiver>) -> Result<Self> {
        let dynkin = quiver.classify().ok_or(Error::NotDynkin)?;
        let roots = quiver.positive_roots()?;
        let mut indecs = Vec::with_capacity(roots.len());
        for r in &roots {
            let y = Arc::new(build_indecomposable(&quiver, r)?);
            if hom_dim(&y, &y)? != 1 {
                return Err(Error::Inconsistent(format!("End of the module at root {r} is not k")));
            }
            indecs.push(y);
        }
        let k = indecs.len();
        let mut hom = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                hom[i][j] = hom_dim(&indecs[i], &indecs[j])?;
            }
        }
        let order = directed_order(&hom)?;
        let mut position = vec![0; k];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }
        Ok(Self {
            quiver,
            dynkin,
            roots,
            indecs,
            hom,
            order,
            position,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn indecomposables(&self) -> &[Arc<Representation>] {
        &self.indecs
    }

    pub fn indecomposable(&self, i: usize) -> &Arc<Representation> {
        &self.indecs[i]
    }

    pub fn root_index(&self, root: &DimVector) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    /// `[Y_i, Y_j]`.
    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    /// Indecomposable indices in a directed order.
    pub fn directed_order(&self) -> &[usize] {
        &self.order
    }

    /// Position of indecomposable `i` in the directed order.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }
}

/// Topological order of the relation `[X, Y] > 0`, `X != Y`; smallest index
/// first among ready candidates.
fn directed_order(hom: &[Vec<usize>]) -> Result<Vec<usize>> {
    let k = hom.len();
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && hom[i][j] > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..k).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse(i)) = heap.pop() {
        order.push(i);
        for j in 0..k {
            if i != j && hom[i][j] > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    heap.push(Reverse(j));
                }
            }
        }
    }
    if order.len() != k {
        return Err(Error::Inconsistent("Hom relation on indecomposables has a cycle".into()));
    }
    Ok(order)
}
