//! Modules up to isomorphism, as multiplicity vectors over the indecomposables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{direct_sum, hom_dim, Catalog, Representation};
use crate::error::{Error, Result};
use crate::quiver::DimVector;

/// Multiplicity of each indecomposable, indexed by root position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleSpec(pub Vec<usize>);

impl ModuleSpec {
    pub fn zero(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn summands(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn mult(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Indices of the indecomposables that occur, each listed once.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, _)| i)
    }

    /// Indices with repetition, in root order.
    pub fn expanded(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i, m))
            .collect()
    }

    pub fn add(&self, other: &ModuleSpec) -> ModuleSpec {
        ModuleSpec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when `other` is not a summand of `self`.
    pub fn checked_sub(&self, other: &ModuleSpec) -> Option<ModuleSpec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ModuleSpec)
    }

    pub fn min(&self, other: &ModuleSpec) -> ModuleSpec {
        ModuleSpec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// No nonzero common direct summand.
    pub fn is_disjoint(&self, other: &ModuleSpec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scaled(&self, k: usize) -> ModuleSpec {
        ModuleSpec(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Catalog {
    pub fn check_spec(&self, m: &ModuleSpec) -> Result<()> {
        if m.len() != self.len() {
            return Err(Error::Shape(format!(
                "module spec has {} entries, quiver has {} indecomposables",
                m.len(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn dim_of(&self, m: &ModuleSpec) -> DimVector {
        let mut d = DimVector::zero(self.quiver().vertex_count());
        for (i, &k) in m.0.iter().enumerate() {
            if k > 0 {
                d = d.add(&self.roots()[i].scaled(k));
            }
        }
        d
    }

    /// `[A, B]` from the table of indecomposables.
    pub fn hom_spec(&self, a: &ModuleSpec, b: &ModuleSpec) -> usize {
        let mut total = 0;
        for i in a.support() {
            for j in b.support() {
                total += a.0[i] * b.0[j] * self.hom(i, j);
            }
        }
        total
    }

    /// `[A, Y_j]`.
    pub fn hom_to(&self, a: &ModuleSpec, j: usize) -> usize {
        a.support().map(|i| a.0[i] * self.hom(i, j)).sum()
    }

    /// `[Y_i, B]`.
    pub fn hom_from(&self, i: usize, b: &ModuleSpec) -> usize {
        b.support().map(|j| b.0[j] * self.hom(i, j)).sum()
    }

    /// `dim Ext^1(A, B) = [A, B] - <dim A, dim B>`.
    pub fn ext_spec(&self, a: &ModuleSpec, b: &ModuleSpec) -> Result<usize> {
        let e = self.hom_spec(a, b) as i64 - self.quiver().euler_unchecked(&self.dim_of(a), &self.dim_of(b));
        usize::try_from(e).map_err(|_| Error::Inconsistent(format!("negative Ext dimension {e}")))
    }

    /// Direct sum of indecomposables, blocks in root order.
    pub fn realize(&self, m: &ModuleSpec) -> Arc<Representation> {
        let parts: Vec<&Representation> = m.expanded().into_iter().map(|i| &**self.indecomposable(i)).collect();
        if parts.is_empty() {
            return Arc::new(Representation::zero(self.quiver().clone()));
        }
        Arc::new(direct_sum(&parts).expect("indecomposables share the quiver"))
    }

    /// Krull-Schmidt multiplicities of `w`, recovered from `[w, Y]` for every
    /// indecomposable `Y` by back substitution in the directed order.
    pub fn decompose(&self, w: &Arc<Representation>) -> Result<ModuleSpec> {
        if **w.quiver() != **self.quiver() {
            return Err(Error::QuiverMismatch);
        }
        let k = self.len();
        let h: Vec<usize> = self
            .indecomposables()
            .iter()
            .map(|y| hom_dim(w, y))
            .collect::<Result<_>>()?;
        let mut m = vec![0usize; k];
        for &x in self.directed_order() {
            let mut rest = h[x] as i64;
            for y in 0..k {
                if y != x && m[y] > 0 {
                    rest -= (m[y] * self.hom(y, x)) as i64;
                }
            }
            m[x] = usize::try_from(rest)
                .map_err(|_| Error::Inconsistent(format!("negative multiplicity while decomposing {}", w.dim())))?;
        }
        let spec = ModuleSpec(m);
        if self.dim_of(&spec) != *w.dim() {
            return Err(Error::Inconsistent(format!(
                "decomposition of a module of dimension {} has dimension {}",
                w.dim(),
                self.dim_of(&spec)
            )));
        }
        Ok(spec)
    }

    /// Every module with dimension vector `d`, in lexicographic order of
    /// multiplicity vectors.
    pub fn modules_of_dim(&self, d: &DimVector) -> Vec<ModuleSpec> {
        fn go(cat: &Catalog, i: usize, rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<ModuleSpec>) {
            if i == cat.len() {
                if rest.iter().all(|&r| r == 0) {
                    out.push(ModuleSpec(cur.clone()));
                }
                return;
            }
            let root = &cat.roots()[i].0;
            let max = root
                .iter()
                .zip(rest.iter())
                .filter(|(r, _)| **r > 0)
                .map(|(r, x)| x / r)
                .min()
                .unwrap_or(0);
            for k in 0..=max {
                for (x, r) in rest.iter_mut().zip(root) {
                    *x -= k * r;
                }
                cur[i] = k;
                go(cat, i + 1, rest, cur, out);
                for (x, r) in rest.iter_mut().zip(root) {
                    *x += k * r;
                }
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        go(self, 0, &mut d.0.clone(), &mut vec![0; self.len()], &mut out);
        out.sort();
        out
    }
}
