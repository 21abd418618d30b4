//! Bernstein-Gelfand-Ponomarev reflection functors.

use std::sync::Arc;

use super::Representation;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::DimVector;

/// `S_j^-` at a source `j`: replaces `V_j` by the cokernel of
/// `V_j -> (+)_a V_{e(a)}` and reverses the arrows at `j`.
pub fn reflect_minus(rep: &Representation, j: usize) -> Result<Representation> {
    let q = rep.quiver();
    if !q.is_source(j) {
        return Err(Error::Precondition(format!("vertex {} is not a source", q.vertices()[j])));
    }
    let d = &rep.dim().0;
    let at_j: Vec<usize> = (0..q.arrows().len()).filter(|&k| q.arrows()[k].source == j).collect();
    let widths: Vec<usize> = at_j.iter().map(|&k| d[q.arrows()[k].target]).collect();
    let total: usize = widths.iter().sum();
    let mut stacked = Matrix::zeros(total, d[j]);
    let mut r0 = 0;
    for &k in &at_j {
        stacked.put(r0, 0, rep.map(k));
        r0 += rep.map(k).rows();
    }
    let left = stacked.left_kernel();
    let coker = Matrix::from_rows(&left, total);
    let new_q = Arc::new(q.reflect_at(j));
    let mut dim = d.clone();
    dim[j] = coker.rows();
    let mut maps = rep.maps().to_vec();
    let mut c0 = 0;
    for (&k, &w) in at_j.iter().zip(&widths) {
        maps[k] = coker.submatrix(0, coker.rows(), c0, c0 + w);
        c0 += w;
    }
    Representation::new(new_q, DimVector(dim), maps)
}

/// `S_j^+` at a sink `j`: replaces `V_j` by the kernel of
/// `(+)_a V_{s(a)} -> V_j` and reverses the arrows at `j`.
pub fn reflect_plus(rep: &Representation, j: usize) -> Result<Representation> {
    let q = rep.quiver();
    if !q.is_sink(j) {
        return Err(Error::Precondition(format!("vertex {} is not a sink", q.vertices()[j])));
    }
    let d = &rep.dim().0;
    let at_j: Vec<usize> = (0..q.arrows().len()).filter(|&k| q.arrows()[k].target == j).collect();
    let heights: Vec<usize> = at_j.iter().map(|&k| d[q.arrows()[k].source]).collect();
    let total: usize = heights.iter().sum();
    let mut joined = Matrix::zeros(d[j], total);
    let mut c0 = 0;
    for &k in &at_j {
        joined.put(0, c0, rep.map(k));
        c0 += rep.map(k).cols();
    }
    let ker = joined.kernel();
    let basis = Matrix::from_columns(total, &ker);
    let new_q = Arc::new(q.reflect_at(j));
    let mut dim = d.clone();
    dim[j] = basis.cols();
    let mut maps = rep.maps().to_vec();
    let mut r0 = 0;
    for (&k, &h) in at_j.iter().zip(&heights) {
        maps[k] = basis.submatrix(r0, r0 + h, 0, basis.cols());
        r0 += h;
    }
    Representation::new(new_q, DimVector(dim), maps)
}
