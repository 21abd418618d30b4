//! The degeneration order on modules of a fixed dimension vector.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{int, Rational};
use crate::quiver::DimVector;
use crate::rep::{cokernel, in_radical, radical_basis, Catalog, ModuleSpec, Morphism};

/// `δ_{M,N}(X) = [N, X] - [M, X]`.
pub fn delta(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, x: &ModuleSpec) -> i64 {
    cat.hom_spec(n, x) as i64 - cat.hom_spec(m, x) as i64
}

/// `δ'_{M,N}(X) = [X, N] - [X, M]`.
pub fn delta_prime(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, x: &ModuleSpec) -> i64 {
    cat.hom_spec(x, n) as i64 - cat.hom_spec(x, m) as i64
}

/// `δ` at the indecomposable with index `i`.
pub fn delta_at(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, i: usize) -> i64 {
    cat.hom_to(n, i) as i64 - cat.hom_to(m, i) as i64
}

/// `δ'` at the indecomposable with index `i`.
pub fn delta_prime_at(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, i: usize) -> i64 {
    cat.hom_from(i, n) as i64 - cat.hom_from(i, m) as i64
}

/// Hom-order: equal dimension vectors and `[X, N] >= [X, M]` for every
/// indecomposable `X`. For Dynkin quivers this is the degeneration order.
pub fn is_degeneration(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> bool {
    m.len() == cat.len()
        && n.len() == cat.len()
        && cat.dim_of(m) == cat.dim_of(n)
        && (0..cat.len()).all(|i| delta_prime_at(cat, m, n, i) >= 0)
}

pub fn orbit_dim(cat: &Catalog, m: &ModuleSpec) -> usize {
    cat.dim_of(m).group_dim() - cat.hom_spec(m, m)
}

/// `[N, N] - [M, M]`, the codimension of the orbit of `n` in the closure of
/// the orbit of `m`.
pub fn codim(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<usize> {
    if !is_degeneration(cat, m, n) {
        return Err(Error::NotDegeneration);
    }
    Ok(cat.hom_spec(n, n) - cat.hom_spec(m, m))
}

/// Splits off the maximal common direct summand `x`: returns `(m', n', x)`
/// with `m = m' + x` and `n = n' + x`.
pub fn split_common(m: &ModuleSpec, n: &ModuleSpec) -> (ModuleSpec, ModuleSpec, ModuleSpec) {
    let x = m.min(n);
    let mp = m.checked_sub(&x).expect("min is a summand");
    let np = n.checked_sub(&x).expect("min is a summand");
    (mp, np, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegPair {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub codim: usize,
}

impl DegPair {
    pub fn new(cat: &Catalog, m: ModuleSpec, n: ModuleSpec) -> Result<Self> {
        cat.check_spec(&m)?;
        cat.check_spec(&n)?;
        let codim = codim(cat, &m, &n)?;
        Ok(Self { m, n, codim })
    }
}

/// Orbits of one dimension vector with the covering relations of the
/// degeneration order.
#[derive(Clone, Debug)]
pub struct DegPoset {
    pub dim: DimVector,
    /// Sorted by decreasing orbit dimension, then by multiplicity vector.
    pub nodes: Vec<ModuleSpec>,
    pub orbit_dims: Vec<usize>,
    /// `(upper, lower, codim)` node indices; `lower` is a degeneration of `upper`.
    pub covers: Vec<(usize, usize, usize)>,
}

pub fn deg_poset(cat: &Catalog, d: &DimVector) -> Result<DegPoset> {
    cat.quiver().check_dim(d)?;
    let mut nodes = cat.modules_of_dim(d);
    nodes.sort_by(|a, b| orbit_dim(cat, b).cmp(&orbit_dim(cat, a)).then_with(|| a.cmp(b)));
    let orbit_dims: Vec<usize> = nodes.iter().map(|m| orbit_dim(cat, m)).collect();
    let k = nodes.len();
    let le: Vec<Vec<bool>> = (0..k)
        .into_par_iter()
        .map(|i| (0..k).map(|j| is_degeneration(cat, &nodes[i], &nodes[j])).collect())
        .collect();
    let mut covers = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !le[i][j] {
                continue;
            }
            let between = (0..k).any(|t| t != i && t != j && le[i][t] && le[t][j]);
            if !between {
                covers.push((i, j, orbit_dims[i] - orbit_dims[j]));
            }
        }
    }
    Ok(DegPoset {
        dim: d.clone(),
        nodes,
        orbit_dims,
        covers,
    })
}

impl DegPoset {
    /// Graphviz rendering: one node per orbit, edges from each orbit down to
    /// the orbits it covers, labeled by codimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph degenerations {\n  rankdir=TB;\n");
        for (i, (m, d)) in self.nodes.iter().zip(&self.orbit_dims).enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{m}\\ndim {d}\"];");
        }
        for (a, b, c) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"{c}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Search limits for randomized constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Bound on each multiplicity of the auxiliary module `Z`.
    pub zmult: usize,
    /// Random combinations tried per candidate after the basis sweep.
    pub trials: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { zmult: 3, trials: 200 }
    }
}

/// An exact sequence `0 -> Z -> Z + M -> N -> 0` with radical first map.
#[derive(Clone, Debug)]
pub struct ZWitness {
    pub z: ModuleSpec,
    pub f: Morphism,
}

/// Checks injectivity, radical membership and that the cokernel is `n`.
pub fn verify_zwitness(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, w: &ZWitness) -> Result<bool> {
    let f = &w.f;
    if cat.decompose(f.source())? != w.z || cat.decompose(f.target())? != w.z.add(m) {
        return Ok(false);
    }
    if !f.is_injective() || !in_radical(cat, f)? {
        return Ok(false);
    }
    let (c, _) = cokernel(f);
    Ok(cat.decompose(&c)? == *n)
}

/// Candidates `Z` of total dimension exactly `total` with multiplicities at
/// most `zmult`, restricted to those with `[Z, X] >= δ_{M,N}(X)` for every
/// indecomposable `X` (forced by exactness of `Hom(-, X)`).
fn z_candidates(cat: &Catalog, need: &[i64], total: usize, zmult: usize) -> Vec<ModuleSpec> {
    fn go(i: usize, left: usize, zmult: usize, sizes: &[usize], cur: &mut Vec<usize>, out: &mut Vec<ModuleSpec>) {
        if i == sizes.len() {
            if left == 0 {
                out.push(ModuleSpec(cur.clone()));
            }
            return;
        }
        for c in 0..=zmult.min(left / sizes[i]) {
            cur[i] = c;
            go(i + 1, left - c * sizes[i], zmult, sizes, cur, out);
        }
        cur[i] = 0;
    }
    let sizes: Vec<usize> = cat.roots().iter().map(DimVector::total).collect();
    let mut out = Vec::new();
    go(0, total, zmult, &sizes, &mut vec![0; cat.len()], &mut out);
    out.retain(|z| (0..cat.len()).all(|i| cat.hom_to(z, i) as i64 >= need[i]));
    out.sort();
    out
}

/// Searches for `Z` and a radical monomorphism `Z -> Z + M` with cokernel
/// `N`. `Ok(None)` means the budget ran out; it says nothing about `(m, n)`.
pub fn find_zwitness(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, budget: Budget, seed: u64) -> Result<Option<ZWitness>> {
    cat.check_spec(m)?;
    cat.check_spec(n)?;
    if m == n {
        return Err(Error::Precondition("find_zwitness needs m != n".into()));
    }
    if !is_degeneration(cat, m, n) {
        return Err(Error::NotDegeneration);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need: Vec<i64> = (0..cat.len()).map(|i| delta_at(cat, m, n, i)).collect();
    let candidates = (1..=3 * cat.dim_of(m).total()).flat_map(|t| z_candidates(cat, &need, t, budget.zmult));
    for z in candidates {
        let zr = cat.realize(&z);
        let zm = cat.realize(&z.add(m));
        let basis = radical_basis(cat, &zr, &zm)?;
        if basis.is_empty() {
            continue;
        }
        let accept = |f: Morphism| -> Result<Option<ZWitness>> {
            if !f.is_injective() {
                return Ok(None);
            }
            let (c, _) = cokernel(&f);
            if cat.decompose(&c)? == *n {
                return Ok(Some(ZWitness { z: z.clone(), f }));
            }
            Ok(None)
        };
        for b in &basis {
            if let Some(w) = accept(b.clone())? {
                return Ok(Some(w));
            }
        }
        for _ in 0..budget.trials {
            let coeffs: Vec<Rational> = (0..basis.len()).map(|_| int(rng.gen_range(-3..=3))).collect();
            if let Some(w) = accept(Morphism::combination(&basis, &coeffs, &zr, &zm))? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    // Root order S2=(0,1), S1=(1,0), P=(1,1).
    fn a2() -> Catalog {
        Catalog::new(Quiver::numbered(2, &[(1, 2)]).unwrap()).unwrap()
    }

    fn spec(s2: usize, s1: usize, p: usize) -> ModuleSpec {
        ModuleSpec(vec![s2, s1, p])
    }

    #[test]
    fn deltas_on_rank_one_pair() {
        let cat = a2();
        let (m, n) = (spec(1, 1, 1), spec(2, 2, 0));
        assert_eq!(delta(&cat, &m, &n, &spec(0, 1, 0)), 0);
        assert_eq!(delta(&cat, &m, &n, &spec(0, 0, 1)), 0);
        assert_eq!(delta_prime(&cat, &m, &n, &spec(1, 0, 0)), 0);
        assert_eq!(delta_prime(&cat, &m, &n, &spec(0, 0, 1)), 0);
        assert_eq!(delta(&cat, &m, &m, &spec(3, 1, 2)), 0);
    }

    #[test]
    fn orbit_dims_and_codims() {
        let cat = a2();
        assert_eq!(orbit_dim(&cat, &spec(1, 1, 1)), 3);
        assert_eq!(orbit_dim(&cat, &spec(2, 2, 0)), 0);
        assert_eq!(orbit_dim(&cat, &spec(0, 0, 0)), 0);
        assert_eq!(codim(&cat, &spec(0, 0, 2), &spec(1, 1, 1)).unwrap(), 1);
        assert_eq!(codim(&cat, &spec(1, 1, 1), &spec(2, 2, 0)).unwrap(), 3);
        assert!(is_degeneration(&cat, &spec(0, 0, 2), &spec(1, 1, 1)));
        assert!(!is_degeneration(&cat, &spec(1, 1, 1), &spec(0, 0, 2)));
        assert!(matches!(codim(&cat, &spec(1, 1, 1), &spec(0, 0, 2)), Err(Error::NotDegeneration)));
    }

    #[test]
    fn common_summand() {
        let (mp, np, x) = split_common(&spec(0, 0, 2), &spec(1, 1, 1));
        assert_eq!((mp, np, x), (spec(0, 0, 1), spec(1, 1, 0), spec(0, 0, 1)));
        let (mp, np, x) = split_common(&spec(1, 1, 1), &spec(1, 1, 1));
        assert!(mp.is_zero() && np.is_zero());
        assert_eq!(x, spec(1, 1, 1));
    }

    #[test]
    fn a2_posets() {
        let cat = a2();
        let p = deg_poset(&cat, &DimVector(vec![2, 2])).unwrap();
        assert_eq!(p.nodes, vec![spec(0, 0, 2), spec(1, 1, 1), spec(2, 2, 0)]);
        assert_eq!(p.covers, vec![(0, 1, 1), (1, 2, 3)]);
        assert!(p.to_dot().contains("n1 -> n2 [label=\"3\"]"));
        let p = deg_poset(&cat, &DimVector(vec![1, 1])).unwrap();
        assert_eq!(p.covers, vec![(0, 1, 1)]);
        let p = deg_poset(&cat, &DimVector(vec![0, 0])).unwrap();
        assert_eq!(p.nodes.len(), 1);
        assert!(p.covers.is_empty());
    }

    #[test]
    fn zwitness_for_projective_to_simples() {
        let cat = a2();
        let (m, n) = (spec(0, 0, 1), spec(1, 1, 0));
        let w = find_zwitness(&cat, &m, &n, Budget::default(), 0).unwrap().unwrap();
        assert_eq!(w.z, spec(1, 0, 0));
        assert!(verify_zwitness(&cat, &m, &n, &w).unwrap());
        assert!(find_zwitness(&cat, &m, &m, Budget::default(), 0).is_err());
    }
}
