//! `Ext^1` computed as cocycles modulo coboundaries.
//!
//! For a path algebra without relations a cocycle is determined by its
//! values on the arrows, so `Z^1(V, U)` is the product over arrows `a` of
//! `Hom_k(V_{s(a)}, U_{e(a)})` and `B^1(V, U)` is the image of
//! `h -> h_{e(a)} V_a - U_a h_{s(a)}`. Coordinates run arrow by arrow, each
//! block row-major.

mod cale;
mod sequence;

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{reduce, Matrix, Rational};
use crate::rep::{hom_dim, Morphism, Representation};

pub use cale::{cal_e, cal_e_dims, cal_e_reps, f_sets, gencriterion, ESpace, FSets, GenCriterion};
pub use sequence::{pullback, pushout, sequence_of, split_off, splits, SeqSpecs, ShortExactSequence};

/// A normalized cocycle in `Z^1(V, U)`: one `u_{e(a)} x v_{s(a)}` matrix per arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    v: Arc<Representation>,
    u: Arc<Representation>,
    comps: Vec<Matrix>,
}

fn block_shapes(v: &Representation, u: &Representation) -> Vec<(usize, usize)> {
    v.quiver()
        .arrows()
        .iter()
        .map(|a| (u.dim().0[a.target], v.dim().0[a.source]))
        .collect()
}

impl Cocycle {
    pub fn new(v: Arc<Representation>, u: Arc<Representation>, comps: Vec<Matrix>) -> Result<Self> {
        v.same_quiver(&u)?;
        let shapes = block_shapes(&v, &u);
        if comps.len() != shapes.len() || comps.iter().zip(&shapes).any(|(c, s)| c.shape() != *s) {
            return Err(Error::Shape("cocycle components do not match the arrows".into()));
        }
        Ok(Self { v, u, comps })
    }

    pub fn zero(v: Arc<Representation>, u: Arc<Representation>) -> Self {
        let comps = block_shapes(&v, &u).into_iter().map(|(r, c)| Matrix::zeros(r, c)).collect();
        Self { v, u, comps }
    }

    pub fn from_coords(v: &Arc<Representation>, u: &Arc<Representation>, coords: &[Rational]) -> Self {
        let mut at = 0;
        let comps = block_shapes(v, u)
            .into_iter()
            .map(|(r, c)| {
                let m = Matrix::from_vec(r, c, coords[at..at + r * c].to_vec());
                at += r * c;
                m
            })
            .collect();
        debug_assert_eq!(at, coords.len());
        Self {
            v: v.clone(),
            u: u.clone(),
            comps,
        }
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.comps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn v(&self) -> &Arc<Representation> {
        &self.v
    }

    pub fn u(&self) -> &Arc<Representation> {
        &self.u
    }

    pub fn component(&self, arrow: usize) -> &Matrix {
        &self.comps[arrow]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comps
    }

    /// Image under `Ext^1(V, f)` for `f : U -> U'`: components `f_{e(a)} Z_a`.
    pub fn pushed(&self, f: &Morphism) -> Cocycle {
        let q = self.v.quiver();
        let comps = q
            .arrows()
            .iter()
            .zip(&self.comps)
            .map(|(a, z)| f.map(a.target) * z)
            .collect();
        Cocycle {
            v: self.v.clone(),
            u: f.target().clone(),
            comps,
        }
    }

    /// Image under `Ext^1(g, U)` for `g : V' -> V`: components `Z_a g_{s(a)}`.
    pub fn pulled(&self, g: &Morphism) -> Cocycle {
        let q = self.v.quiver();
        let comps = q
            .arrows()
            .iter()
            .zip(&self.comps)
            .map(|(a, z)| z * g.map(a.source))
            .collect();
        Cocycle {
            v: g.source().clone(),
            u: self.u.clone(),
            comps,
        }
    }
}

fn cocycle_len(v: &Representation, u: &Representation) -> usize {
    block_shapes(v, u).iter().map(|(r, c)| r * c).sum()
}

/// Unit basis of the cocycle space.
pub fn cocycle_space(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<Vec<Cocycle>> {
    v.same_quiver(u)?;
    let len = cocycle_len(v, u);
    Ok((0..len)
        .map(|i| {
            let mut e = vec![Rational::zero(); len];
            e[i] = Rational::one();
            Cocycle::from_coords(v, u, &e)
        })
        .collect())
}

/// The coboundary of `h = (h_i : V_i -> U_i)`.
pub fn coboundary(v: &Arc<Representation>, u: &Arc<Representation>, h: &[Matrix]) -> Cocycle {
    let q = v.quiver();
    let comps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| &(&h[a.target] * v.map(k)) - &(u.map(k) * &h[a.source]))
        .collect();
    Cocycle {
        v: v.clone(),
        u: u.clone(),
        comps,
    }
}

/// Coboundaries of the unit vertex maps `h`, as coordinate vectors.
fn coboundary_images(v: &Arc<Representation>, u: &Arc<Representation>) -> Vec<Vec<Rational>> {
    let n = v.quiver().vertex_count();
    let (vd, ud) = (&v.dim().0, &u.dim().0);
    let mut out = Vec::new();
    for i in 0..n {
        for r in 0..ud[i] {
            for c in 0..vd[i] {
                let h: Vec<Matrix> = (0..n)
                    .map(|j| {
                        let mut m = Matrix::zeros(ud[j], vd[j]);
                        if j == i {
                            m.set(r, c, Rational::one());
                        }
                        m
                    })
                    .collect();
                out.push(coboundary(v, u, &h).coords());
            }
        }
    }
    out
}

/// `Ext^1(V, U)` presented as `Z^1 / B^1`.
#[derive(Clone, Debug)]
pub struct ExtQuotient {
    v: Arc<Representation>,
    u: Arc<Representation>,
    len: usize,
    /// Reduced echelon basis of the coboundaries.
    cob: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    /// Coordinates not hit by a pivot; their unit cocycles represent a basis
    /// of the quotient.
    free: Vec<usize>,
}

impl ExtQuotient {
    pub(crate) fn build(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<Self> {
        v.same_quiver(u)?;
        let len = cocycle_len(v, u);
        let images: Vec<Vec<Rational>> = coboundary_images(v, u)
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let (cob, pivots) = if images.is_empty() || len == 0 {
            (Vec::new(), Vec::new())
        } else {
            let red = reduce(&images, len);
            (red.rows, red.pivots)
        };
        let free = (0..len).filter(|c| !pivots.contains(c)).collect();
        Ok(Self {
            v: v.clone(),
            u: u.clone(),
            len,
            cob,
            pivots,
            free,
        })
    }

    pub fn v(&self) -> &Arc<Representation> {
        &self.v
    }

    pub fn u(&self) -> &Arc<Representation> {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn cocycle_dim(&self) -> usize {
        self.len
    }

    pub fn coboundary_dim(&self) -> usize {
        self.cob.len()
    }

    pub fn coboundary_basis(&self) -> Vec<Cocycle> {
        self.cob.iter().map(|r| Cocycle::from_coords(&self.v, &self.u, r)).collect()
    }

    /// Cocycles whose classes form a basis of the quotient.
    pub fn representatives(&self) -> Vec<Cocycle> {
        self.free
            .iter()
            .map(|&i| {
                let mut e = vec![Rational::zero(); self.len];
                e[i] = Rational::one();
                Cocycle::from_coords(&self.v, &self.u, &e)
            })
            .collect()
    }

    /// Coordinates of the class of `z` in the basis of `representatives`.
    pub fn class(&self, z: &Cocycle) -> Vec<Rational> {
        self.class_of_coords(z.coords())
    }

    fn class_of_coords(&self, mut z: Vec<Rational>) -> Vec<Rational> {
        for (row, &p) in self.cob.iter().zip(&self.pivots) {
            if z[p].is_zero() {
                continue;
            }
            let s = z[p].clone();
            for (x, r) in z.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &s * r;
                }
            }
        }
        self.free.iter().map(|&i| z[i].clone()).collect()
    }

    pub fn is_coboundary(&self, z: &Cocycle) -> bool {
        self.class(z).iter().all(Zero::is_zero)
    }

    /// The cocycle `sum_k c_k rep_k`.
    pub fn lift(&self, class: &[Rational]) -> Cocycle {
        let mut e = vec![Rational::zero(); self.len];
        for (&i, c) in self.free.iter().zip(class) {
            e[i] = c.clone();
        }
        Cocycle::from_coords(&self.v, &self.u, &e)
    }
}

/// The quotient `Z^1(V, U) / B^1(V, U)`, checked against
/// `[V, U] - <dim V, dim U>`.
pub fn ext_quotient(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<ExtQuotient> {
    let q = ExtQuotient::build(v, u)?;
    let expect = hom_dim(v, u)? as i64 - v.quiver().euler_form(v.dim(), u.dim())?;
    if q.dim() as i64 != expect {
        return Err(Error::Inconsistent(format!(
            "cocycle quotient has dimension {} but [V,U] - <V,U> = {expect}",
            q.dim()
        )));
    }
    Ok(q)
}

/// `dim Ext^1(V, U)` from the cocycle quotient.
pub fn ext_dim(v: &Arc<Representation>, u: &Arc<Representation>) -> Result<usize> {
    Ok(ExtQuotient::build(v, u)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::rep::Catalog;

    // Root order S2=(0,1), S1=(1,0), P=(1,1).
    fn a2() -> Catalog {
        Catalog::new(Quiver::numbered(2, &[(1, 2)]).unwrap()).unwrap()
    }

    #[test]
    fn simples_of_a2() {
        let cat = a2();
        let (s2, s1, p) = (cat.indecomposable(0), cat.indecomposable(1), cat.indecomposable(2));
        let q = ext_quotient(s1, s2).unwrap();
        assert_eq!((q.cocycle_dim(), q.coboundary_dim(), q.dim()), (1, 0, 1));
        let q = ext_quotient(s2, s1).unwrap();
        assert_eq!((q.cocycle_dim(), q.dim()), (0, 0));
        assert_eq!(cocycle_space(p, p).unwrap().len(), 1);
        for y in cat.indecomposables() {
            assert_eq!(ext_quotient(y, y).unwrap().dim(), 0);
        }
    }

    #[test]
    fn coboundary_dimension_is_rank_nullity() {
        let cat = a2();
        for v in cat.indecomposables() {
            for u in cat.indecomposables() {
                let q = ext_quotient(v, u).unwrap();
                let pairing: usize = v.dim().0.iter().zip(&u.dim().0).map(|(a, b)| a * b).sum();
                assert_eq!(q.coboundary_dim(), pairing - hom_dim(v, u).unwrap());
            }
        }
    }

    #[test]
    fn class_of_a_coboundary_vanishes() {
        let cat = a2();
        let p = cat.indecomposable(2);
        let n = cat.realize(&crate::rep::ModuleSpec(vec![1, 1, 1]));
        let q = ext_quotient(&n, p).unwrap();
        for b in q.coboundary_basis() {
            assert!(q.is_coboundary(&b));
        }
        for (k, r) in q.representatives().iter().enumerate() {
            let c = q.class(r);
            assert!(c.iter().enumerate().all(|(i, x)| *x == Rational::from_integer(i64::from(i == k).into())));
        }
    }
}
