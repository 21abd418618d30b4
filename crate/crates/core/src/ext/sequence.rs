//! Short exact sequences with explicit maps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Cocycle;
use crate::degen::{delta, delta_prime};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Rational};
use crate::rep::{
    cokernel, direct_sum, factor_through_epi, factor_through_mono, hom_space, kernel, sum_structure, Catalog, ModuleSpec, Morphism,
    Representation,
};

/// `0 -> U --inj--> W --surj--> V -> 0`, exactness checked on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    inj: Morphism,
    surj: Morphism,
}

impl ShortExactSequence {
    pub fn new(inj: Morphism, surj: Morphism) -> Result<Self> {
        if **inj.target() != **surj.source() {
            return Err(Error::Precondition("maps do not compose".into()));
        }
        if !inj.intertwines() || !surj.intertwines() {
            return Err(Error::Precondition("sequence maps are not morphisms".into()));
        }
        if !inj.is_injective() {
            return Err(Error::Precondition("first map is not injective".into()));
        }
        if !surj.is_surjective() {
            return Err(Error::Precondition("second map is not surjective".into()));
        }
        if !surj.after(&inj).is_zero() {
            return Err(Error::Precondition("composite is not zero".into()));
        }
        let n = inj.source().dim().0.len();
        for v in 0..n {
            if inj.rank_at(v) + surj.rank_at(v) != inj.target().dim().0[v] {
                return Err(Error::Precondition(format!("not exact at vertex {v}")));
            }
        }
        Ok(Self { inj, surj })
    }

    pub fn left(&self) -> &Arc<Representation> {
        self.inj.source()
    }

    pub fn middle(&self) -> &Arc<Representation> {
        self.inj.target()
    }

    pub fn right(&self) -> &Arc<Representation> {
        self.surj.target()
    }

    pub fn inj(&self) -> &Morphism {
        &self.inj
    }

    pub fn surj(&self) -> &Morphism {
        &self.surj
    }

    /// Direct sum with another sequence over the same quiver.
    pub fn sum_with(&self, other: &ShortExactSequence) -> Result<ShortExactSequence> {
        let glue = |a: &Arc<Representation>, b: &Arc<Representation>| direct_sum(&[a, b]).map(Arc::new);
        let (l, w, r) = (glue(self.left(), other.left())?, glue(self.middle(), other.middle())?, glue(self.right(), other.right())?);
        let block = |f: &Morphism, g: &Morphism, s: &Arc<Representation>, t: &Arc<Representation>| {
            let maps = f.maps().iter().zip(g.maps()).map(|(a, b)| Matrix::block_diag(&[a, b])).collect();
            Morphism::new(s.clone(), t.clone(), maps)
        };
        ShortExactSequence::new(block(&self.inj, &other.inj, &l, &w)?, block(&self.surj, &other.surj, &w, &r)?)
    }

    pub fn specs(&self, cat: &Catalog) -> Result<SeqSpecs> {
        Ok(SeqSpecs {
            left: cat.decompose(self.left())?,
            middle: cat.decompose(self.middle())?,
            right: cat.decompose(self.right())?,
        })
    }
}

/// Decompositions of the three terms of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqSpecs {
    pub left: ModuleSpec,
    pub middle: ModuleSpec,
    pub right: ModuleSpec,
}

impl SeqSpecs {
    pub fn ends(&self) -> ModuleSpec {
        self.left.add(&self.right)
    }

    /// `δ_σ(X) = [U + V, X] - [W, X]`.
    pub fn delta(&self, cat: &Catalog, x: &ModuleSpec) -> Result<usize> {
        nonneg(delta(cat, &self.middle, &self.ends(), x), "δ_σ")
    }

    /// `δ'_σ(X) = [X, U + V] - [X, W]`.
    pub fn delta_prime(&self, cat: &Catalog, x: &ModuleSpec) -> Result<usize> {
        nonneg(delta_prime(cat, &self.middle, &self.ends(), x), "δ'_σ")
    }

    pub fn splits(&self) -> bool {
        self.middle == self.ends()
    }
}

fn nonneg(x: i64, what: &str) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Inconsistent(format!("{what} is negative ({x})")))
}

/// The extension `W_Z` with arrow matrices `[[U_a, Z_a], [0, V_a]]`.
pub fn sequence_of(z: &Cocycle) -> Result<ShortExactSequence> {
    let (u, v) = (z.u(), z.v());
    let q = u.quiver();
    let n = q.vertex_count();
    let (ud, vd) = (&u.dim().0, &v.dim().0);
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let zero = Matrix::zeros(vd[a.target], ud[a.source]);
            Matrix::blocks(&[vec![u.map(k), z.component(k)], vec![&zero, v.map(k)]])
        })
        .collect();
    let dim = crate::quiver::DimVector(ud.iter().zip(vd).map(|(a, b)| a + b).collect());
    let w = Arc::new(Representation::new(q.clone(), dim, maps)?);
    let inj = (0..n)
        .map(|i| Matrix::blocks(&[vec![&Matrix::identity(ud[i])], vec![&Matrix::zeros(vd[i], ud[i])]]))
        .collect();
    let surj = (0..n)
        .map(|i| Matrix::blocks(&[vec![&Matrix::zeros(vd[i], ud[i]), &Matrix::identity(vd[i])]]))
        .collect();
    ShortExactSequence::new(Morphism::new(u.clone(), w.clone(), inj)?, Morphism::new(w, v.clone(), surj)?)
}

/// Whether `W = U + V`.
pub fn splits(cat: &Catalog, s: &ShortExactSequence) -> Result<bool> {
    Ok(s.specs(cat)?.splits())
}

/// Pushout of `s` along `f : U -> U'`. Returns the new sequence
/// `0 -> U' -> W' -> V -> 0` and the induced middle map `W -> W'`.
pub fn pushout(s: &ShortExactSequence, f: &Morphism) -> Result<(ShortExactSequence, Morphism)> {
    if **f.source() != **s.left() {
        return Err(Error::Precondition("pushout map must start at the left term".into()));
    }
    let parts = [s.middle().clone(), f.target().clone()];
    let sum = Arc::new(direct_sum(&[&parts[0], &parts[1]])?);
    let (incs, _) = sum_structure(&parts, &sum);
    let iota = Morphism::column(&[s.inj(), &f.scaled(&int(-1))], sum.clone());
    let (_, pi) = cokernel(&iota);
    let inj = pi.after(&incs[1]);
    let mid = pi.after(&incs[0]);
    let zero = Morphism::zero(f.target().clone(), s.right().clone());
    let out = Morphism::row(&[s.surj(), &zero], sum);
    let surj = factor_through_epi(&out, &pi).ok_or_else(|| Error::Inconsistent("pushout projection does not factor".into()))?;
    Ok((ShortExactSequence::new(inj, surj)?, mid))
}

/// Pullback of `s` along `g : V' -> V`. Returns `0 -> U -> W' -> V' -> 0`
/// and the induced middle map `W' -> W`.
pub fn pullback(s: &ShortExactSequence, g: &Morphism) -> Result<(ShortExactSequence, Morphism)> {
    if **g.target() != **s.right() {
        return Err(Error::Precondition("pullback map must end at the right term".into()));
    }
    let parts = [s.middle().clone(), g.source().clone()];
    let sum = Arc::new(direct_sum(&[&parts[0], &parts[1]])?);
    let (_, projs) = sum_structure(&parts, &sum);
    let kappa = Morphism::row(&[s.surj(), &g.scaled(&int(-1))], sum.clone());
    let (_, incl) = kernel(&kappa);
    let surj = projs[1].after(&incl);
    let mid = projs[0].after(&incl);
    let zero = Morphism::zero(s.left().clone(), g.source().clone());
    let into = Morphism::column(&[s.inj(), &zero], sum);
    let inj = factor_through_mono(&into, &incl).ok_or_else(|| Error::Inconsistent("pullback inclusion does not factor".into()))?;
    Ok((ShortExactSequence::new(inj, surj)?, mid))
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Morphism], s: &Arc<Representation>, t: &Arc<Representation>) -> Morphism {
    let coeffs: Vec<Rational> = (0..basis.len()).map(|_| int(rng.gen_range(-3..=3))).collect();
    Morphism::combination(basis, &coeffs, s, t)
}

/// Given `δ'_σ(V1) = 0` for a summand `V1` of the right term, returns
/// `0 -> U -> W2 -> V2 -> 0` with `V = V1 + V2` and `W = V1 + W2`.
pub fn split_off(cat: &Catalog, s: &ShortExactSequence, v1: &ModuleSpec, seed: u64) -> Result<ShortExactSequence> {
    if v1.is_zero() {
        return Ok(s.clone());
    }
    let specs = s.specs(cat)?;
    let v2 = specs
        .right
        .checked_sub(v1)
        .ok_or_else(|| Error::Precondition(format!("{v1} is not a summand of the right term")))?;
    if specs.delta_prime(cat, v1)? != 0 {
        return Err(Error::Precondition("δ'_σ of the summand is not zero".into()));
    }
    let v1r = cat.realize(v1);
    let v = s.right();
    let into = hom_space(&v1r, v)?;
    let back = hom_space(v, &v1r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // A split monomorphism `a : V1 -> V` with retraction `b`.
    let mut found = None;
    for _ in 0..500 {
        let a = random_combination(&mut rng, &into, &v1r, v);
        let b = random_combination(&mut rng, &back, v, &v1r);
        let ba = b.after(&a);
        let inv: Option<Vec<Matrix>> = ba.maps().iter().map(Matrix::inverse).collect();
        if let Some(inv) = inv {
            let inv = Morphism::new(v1r.clone(), v1r.clone(), inv)?;
            found = Some((a, inv.after(&b)));
            break;
        }
    }
    let (a, b) = found.ok_or_else(|| Error::Inconsistent("no split monomorphism found for the summand".into()))?;
    // Lift `a` through the surjection; possible because δ'_σ(V1) = 0.
    let lifts = hom_space(&v1r, s.middle())?;
    let images: Vec<Vec<Rational>> = lifts.iter().map(|l| s.surj().after(l).flatten()).collect();
    let target = a.flatten();
    let coeffs = if images.is_empty() {
        Some(Vec::new())
    } else {
        Matrix::from_columns(target.len(), &images).solve(&target)
    }
    .ok_or_else(|| Error::Inconsistent("split monomorphism does not lift".into()))?;
    let lifted = Morphism::combination(&lifts, &coeffs, &v1r, s.middle());
    debug_assert_eq!(s.surj().after(&lifted), a);
    let (w2, w2_in) = kernel(&b.after(s.surj()));
    let (v2r, v2_in) = kernel(&b);
    let inj = factor_through_mono(s.inj(), &w2_in).ok_or_else(|| Error::Inconsistent("U does not land in W2".into()))?;
    let surj = factor_through_mono(&s.surj().after(&w2_in), &v2_in).ok_or_else(|| Error::Inconsistent("W2 does not map into V2".into()))?;
    let out = ShortExactSequence::new(inj, surj)?;
    if cat.decompose(&v2r)? != v2 || specs.middle != v1.add(&cat.decompose(&w2)?) {
        return Err(Error::Inconsistent("split off summand does not match".into()));
    }
    Ok(out)
}
