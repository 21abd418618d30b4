//! Explicit representations and their morphisms.

mod catalog;
mod hom;
mod module;
mod reflection;

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::quiver::{DimVector, Quiver};

pub use catalog::Catalog;
pub use hom::{hom_dim, hom_space, in_radical, radical_basis};
pub use module::ModuleSpec;
pub use reflection::{reflect_minus, reflect_plus};

/// One matrix per arrow; arrow `a` carries a `d_{e(a)} x d_{s(a)}` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dim: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        quiver.check_dim(&dim)?;
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Shape(format!(
                "{} arrow matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dim.0[a.target], dim.0[a.source]);
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "arrow {} expects {}x{}, got {}x{}",
                    a.id,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { quiver, dim, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Self {
            quiver,
            dim: DimVector::zero(n),
            maps,
        }
    }

    /// The simple representation at vertex `v`.
    pub fn simple(quiver: Arc<Quiver>, v: usize) -> Self {
        let n = quiver.vertex_count();
        let dim = DimVector::unit(n, v);
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dim.0[a.target], dim.0[a.source]))
            .collect();
        Self { quiver, dim, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dim.total()
    }

    pub fn same_quiver(&self, other: &Representation) -> Result<()> {
        if self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn identity(self: &Arc<Self>) -> Morphism {
        let maps = self.dim.0.iter().map(|&d| Matrix::identity(d)).collect();
        Morphism::new_unchecked(self.clone(), self.clone(), maps)
    }

    /// Conjugates by a base change `g` (one invertible matrix per vertex):
    /// `X_a -> g_{e(a)} X_a g_{s(a)}^{-1}`, given both `g` and its inverse.
    pub fn transport(&self, g: &[Matrix], g_inv: &[Matrix]) -> Representation {
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| &(&g[a.target] * m) * &g_inv[a.source])
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            maps,
        }
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(parts: &[&Representation]) -> Result<Representation> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Precondition("direct sum of an empty list".into()))?;
    for p in parts {
        first.same_quiver(p)?;
    }
    let q = first.quiver.clone();
    let mut dim = DimVector::zero(q.vertex_count());
    for p in parts {
        dim = dim.add(&p.dim);
    }
    let maps = (0..q.arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[a]).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    Ok(Representation { quiver: q, dim, maps })
}

/// A family of vertex matrices `f_i : X_i -> Y_i`.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<Representation>,
    target: Arc<Representation>,
    maps: Vec<Matrix>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.maps == other.maps && *self.source == *other.source && *self.target == *other.target
    }
}

impl Morphism {
    /// Checks shapes and the intertwining law `f_{e(a)} X_a = Y_a f_{s(a)}`.
    pub fn new(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> Result<Self> {
        source.same_quiver(&target)?;
        let n = source.quiver.vertex_count();
        if maps.len() != n {
            return Err(Error::Shape(format!("{} vertex matrices for {} vertices", maps.len(), n)));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.shape() != (target.dim.0[i], source.dim.0[i]) {
                return Err(Error::Shape(format!("vertex matrix {i} has the wrong shape")));
            }
        }
        let f = Self::new_unchecked(source, target, maps);
        if !f.intertwines() {
            return Err(Error::Precondition("vertex matrices do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<Representation>, target: Arc<Representation>, maps: Vec<Matrix>) -> Self {
        Self { source, target, maps }
    }

    pub fn zero(source: Arc<Representation>, target: Arc<Representation>) -> Self {
        let maps = source
            .dim
            .0
            .iter()
            .zip(&target.dim.0)
            .map(|(&s, &t)| Matrix::zeros(t, s))
            .collect();
        Self { source, target, maps }
    }

    pub fn source(&self) -> &Arc<Representation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(k, a)| &self.maps[a.target] * &self.source.maps[k] == &self.target.maps[k] * &self.maps[a.source])
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Morphism) -> Morphism {
        debug_assert_eq!(first.target.dim, self.source.dim);
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g * f).collect();
        Morphism::new_unchecked(first.source.clone(), self.target.clone(), maps)
    }

    pub fn rank_at(&self, v: usize) -> usize {
        self.maps[v].rank()
    }

    pub fn is_injective(&self) -> bool {
        (0..self.maps.len()).all(|v| self.rank_at(v) == self.source.dim.0[v])
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.maps.len()).all(|v| self.rank_at(v) == self.target.dim.0[v])
    }

    pub fn scaled(&self, s: &Rational) -> Morphism {
        let maps = self.maps.iter().map(|m| m.scale(s)).collect();
        Morphism::new_unchecked(self.source.clone(), self.target.clone(), maps)
    }

    /// `sum_k c_k b_k` over morphisms sharing source and target.
    pub fn combination(basis: &[Morphism], coeffs: &[Rational], source: &Arc<Representation>, target: &Arc<Representation>) -> Morphism {
        let mut out = Morphism::zero(source.clone(), target.clone());
        for (b, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (m, bm) in out.maps.iter_mut().zip(&b.maps) {
                m.add_scaled(c, bm);
            }
        }
        out
    }

    /// All vertex matrices flattened row-major, vertex by vertex.
    pub fn flatten(&self) -> Vec<Rational> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Map into a direct sum given by one component per summand.
    pub fn column(parts: &[&Morphism], target: Arc<Representation>) -> Morphism {
        let source = parts[0].source.clone();
        let n = source.dim.0.len();
        let maps = (0..n)
            .map(|v| {
                let grid: Vec<Vec<&Matrix>> = parts.iter().map(|p| vec![&p.maps[v]]).collect();
                stack_rows(&grid, source.dim.0[v])
            })
            .collect();
        Morphism::new_unchecked(source, target, maps)
    }

    /// Map out of a direct sum given by one component per summand.
    pub fn row(parts: &[&Morphism], source: Arc<Representation>) -> Morphism {
        let target = parts[0].target.clone();
        let n = target.dim.0.len();
        let maps = (0..n)
            .map(|v| {
                let row: Vec<&Matrix> = parts.iter().map(|p| &p.maps[v]).collect();
                stack_cols(&row, target.dim.0[v])
            })
            .collect();
        Morphism::new_unchecked(source, target, maps)
    }
}

fn stack_rows(grid: &[Vec<&Matrix>], cols: usize) -> Matrix {
    let rows: usize = grid.iter().map(|r| r[0].rows()).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut r0 = 0;
    for r in grid {
        m.put(r0, 0, r[0]);
        r0 += r[0].rows();
    }
    m
}

fn stack_cols(row: &[&Matrix], rows: usize) -> Matrix {
    let cols: usize = row.iter().map(|m| m.cols()).sum();
    let mut m = Matrix::zeros(rows, cols);
    let mut c0 = 0;
    for b in row {
        m.put(0, c0, b);
        c0 += b.cols();
    }
    m
}

/// Canonical inclusions of and projections onto the summands of `sum`,
/// which must be `direct_sum(parts)`.
pub fn sum_structure(parts: &[Arc<Representation>], sum: &Arc<Representation>) -> (Vec<Morphism>, Vec<Morphism>) {
    let n = sum.dim.0.len();
    let mut offsets = vec![0usize; n];
    let mut incs = Vec::new();
    let mut projs = Vec::new();
    for p in parts {
        let mut inc = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let d = p.dim.0[v];
            let mut i = Matrix::zeros(sum.dim.0[v], d);
            let mut pr = Matrix::zeros(d, sum.dim.0[v]);
            for k in 0..d {
                i.set(offsets[v] + k, k, Rational::from_integer(1.into()));
                pr.set(k, offsets[v] + k, Rational::from_integer(1.into()));
            }
            offsets[v] += d;
            inc.push(i);
            proj.push(pr);
        }
        incs.push(Morphism::new_unchecked(p.clone(), sum.clone(), inc));
        projs.push(Morphism::new_unchecked(sum.clone(), p.clone(), proj));
    }
    (incs, projs)
}

/// Kernel of `f` as a subrepresentation, with its inclusion.
pub fn kernel(f: &Morphism) -> (Arc<Representation>, Morphism) {
    let src = &f.source;
    let q = src.quiver.clone();
    let n = q.vertex_count();
    // Column bases of the vertex kernels, plus the pivot rows that let us read
    // off coordinates of vectors inside each kernel.
    let bases: Vec<Matrix> = (0..n)
        .map(|v| {
            let k = f.maps[v].kernel();
            Matrix::from_columns(src.dim.0[v], &k)
        })
        .collect();
    let dim = DimVector(bases.iter().map(Matrix::cols).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let image = &src.maps[k] * &bases[a.source];
            coordinates(&bases[a.target], &image).expect("kernel is a subrepresentation")
        })
        .collect();
    let rep = Arc::new(Representation { quiver: q, dim, maps });
    let inc = Morphism::new_unchecked(rep.clone(), src.clone(), bases);
    (rep, inc)
}

/// Cokernel of `f` as a quotient representation, with its projection.
pub fn cokernel(f: &Morphism) -> (Arc<Representation>, Morphism) {
    let tgt = &f.target;
    let q = tgt.quiver.clone();
    let n = q.vertex_count();
    // Rows spanning the annihilator of the image, in reduced echelon form so
    // that pivot columns give a right inverse.
    let projs: Vec<(Matrix, Vec<usize>)> = (0..n)
        .map(|v| {
            let left = f.maps[v].left_kernel();
            let d = tgt.dim.0[v];
            if left.is_empty() {
                return (Matrix::zeros(0, d), vec![]);
            }
            let red = Matrix::from_rows(&left, d).reduced();
            (Matrix::from_rows(&red.rows, d), red.pivots)
        })
        .collect();
    let dim = DimVector(projs.iter().map(|(p, _)| p.rows()).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let (ps, piv) = &projs[a.source];
            let pe = &projs[a.target].0;
            // Right inverse of the source projection: unit columns at the pivots.
            let mut r = Matrix::zeros(ps.cols(), ps.rows());
            for (j, &p) in piv.iter().enumerate() {
                r.set(p, j, Rational::from_integer(1.into()));
            }
            &(pe * &tgt.maps[k]) * &r
        })
        .collect();
    let rep = Arc::new(Representation { quiver: q, dim, maps });
    let proj = Morphism::new_unchecked(tgt.clone(), rep.clone(), projs.into_iter().map(|(p, _)| p).collect());
    (rep, proj)
}

/// Solves `basis * X = image` for `X`, with `basis` of full column rank.
pub(crate) fn coordinates(basis: &Matrix, image: &Matrix) -> Option<Matrix> {
    let mut out = Matrix::zeros(basis.cols(), image.cols());
    for j in 0..image.cols() {
        let col: Vec<Rational> = (0..image.rows()).map(|i| image.get(i, j).clone()).collect();
        let x = basis.solve(&col)?;
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Some(out)
}

/// Factors `f : A -> B` through a monomorphism `mono : K -> B`, if possible.
pub fn factor_through_mono(f: &Morphism, mono: &Morphism) -> Option<Morphism> {
    let maps = (0..f.maps.len())
        .map(|v| coordinates(&mono.maps[v], &f.maps[v]))
        .collect::<Option<Vec<_>>>()?;
    Some(Morphism::new_unchecked(f.source.clone(), mono.source.clone(), maps))
}

/// Factors `f : B -> C` through an epimorphism `epi : B -> Q`, if possible.
pub fn factor_through_epi(f: &Morphism, epi: &Morphism) -> Option<Morphism> {
    let maps = (0..f.maps.len())
        .map(|v| coordinates(&epi.maps[v].transpose(), &f.maps[v].transpose()).map(|m| m.transpose()))
        .collect::<Option<Vec<_>>>()?;
    Some(Morphism::new_unchecked(epi.target.clone(), f.target.clone(), maps))
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
