use std::sync::Arc;

use num_traits::Zero;

use super::{Catalog, Morphism, Representation};
use crate::error::Result;
use crate::linalg::{Matrix, Rational};

/// The linear system `f_{e(a)} X_a = Y_a f_{s(a)}` in the entries of the
/// vertex maps, laid out vertex by vertex, row-major; returns the nonzero
/// rows and the offsets of the vertex blocks.
fn hom_system(x: &Representation, y: &Representation) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let q = x.quiver();
    let n = q.vertex_count();
    let (xd, yd) = (&x.dim().0, &y.dim().0);
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + yd[v] * xd[v];
    }
    let unknowns = offset[n];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * xd[v] + c;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        let (s, e) = (a.source, a.target);
        let (xa, ya) = (x.map(k), y.map(k));
        for r in 0..yd[e] {
            for c in 0..xd[s] {
                let mut row = vec![Rational::zero(); unknowns];
                // (f_e X_a)[r][c] = sum_t f_e[r][t] X_a[t][c]
                for t in 0..xd[e] {
                    let coef = xa.get(t, c);
                    if !coef.is_zero() {
                        row[var(e, r, t)] += coef;
                    }
                }
                // (Y_a f_s)[r][c] = sum_t Y_a[r][t] f_s[t][c]
                for t in 0..yd[s] {
                    let coef = ya.get(r, t);
                    if !coef.is_zero() {
                        row[var(s, t, c)] -= coef;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    (rows, offset)
}

/// Basis of `Hom(x, y)`: the solutions of `f_{e(a)} X_a = Y_a f_{s(a)}`.
pub fn hom_space(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<Vec<Morphism>> {
    x.same_quiver(y)?;
    let n = x.quiver().vertex_count();
    let (xd, yd) = (&x.dim().0, &y.dim().0);
    let (rows, offset) = hom_system(x, y);
    let unknowns = offset[n];
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let kernel = if rows.is_empty() {
        Matrix::zeros(0, unknowns).kernel()
    } else {
        Matrix::from_rows(&rows, unknowns).kernel()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let maps = (0..n)
                .map(|i| Matrix::from_vec(yd[i], xd[i], v[offset[i]..offset[i + 1]].to_vec()))
                .collect();
            Morphism::new_unchecked(x.clone(), y.clone(), maps)
        })
        .collect())
}

pub fn hom_dim(x: &Arc<Representation>, y: &Arc<Representation>) -> Result<usize> {
    x.same_quiver(y)?;
    let (rows, offset) = hom_system(x, y);
    let unknowns = *offset.last().expect("offsets");
    if rows.is_empty() {
        return Ok(unknowns);
    }
    Ok(unknowns - Matrix::from_rows(&rows, unknowns).rank())
}

/// For each indecomposable `X`, the bilinear pairings `(b, f, a) -> b f a` in
/// `End(X) = k`, as linear functionals on the coordinates of `f` in `basis`.
fn radical_functionals(cat: &Catalog, basis: &[Morphism], a: &Arc<Representation>, b: &Arc<Representation>) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::new();
    for x in cat.indecomposables() {
        let into = hom_space(x, a)?;
        if into.is_empty() {
            continue;
        }
        let out = hom_space(b, x)?;
        if out.is_empty() {
            continue;
        }
        // Composites X -> X are scalar, so one matrix entry reads the scalar.
        let v0 = x.dim().0.iter().position(|&d| d > 0).expect("indecomposable is nonzero");
        for bi in &out {
            let brow = bi.map(v0).row(0).to_vec();
            for aj in &into {
                let acol: Vec<Rational> = (0..aj.map(v0).rows()).map(|r| aj.map(v0).get(r, 0).clone()).collect();
                let row: Vec<Rational> = basis
                    .iter()
                    .map(|f| {
                        let fa = f.map(v0).mul_vec(&acol);
                        brow.iter().zip(&fa).fold(Rational::zero(), |acc, (p, q)| acc + p * q)
                    })
                    .collect();
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

/// Basis of the radical `rad(a, b)`: morphisms `f` with `b' f a'` nilpotent
/// (hence zero) for every indecomposable `X` and all `a' : X -> a`, `b' : b -> X`.
pub fn radical_basis(cat: &Catalog, a: &Arc<Representation>, b: &Arc<Representation>) -> Result<Vec<Morphism>> {
    let basis = hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(basis);
    }
    let rows = radical_functionals(cat, &basis, a, b)?;
    if rows.is_empty() {
        return Ok(basis);
    }
    let coeffs = Matrix::from_rows(&rows, basis.len()).kernel();
    Ok(coeffs
        .iter()
        .map(|c| Morphism::combination(&basis, c, a, b))
        .collect())
}

/// Whether `f` lies in the radical of the module category.
pub fn in_radical(cat: &Catalog, f: &Morphism) -> Result<bool> {
    let (a, b) = (f.source(), f.target());
    for x in cat.indecomposables() {
        let into = hom_space(x, a)?;
        if into.is_empty() {
            continue;
        }
        let out = hom_space(b, x)?;
        for bi in &out {
            let bf = bi.after(f);
            for aj in &into {
                if !bf.after(aj).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
