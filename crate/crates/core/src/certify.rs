//! Regularity certificates for orbit closures at points of codimension one
//! and two.
//!
//! `certify` runs the case analysis (codimension one, cancellation of a
//! common summand, three or more summands, and the two-summand case through
//! an exact sequence `0 -> U -> M -> V -> 0`) and records every quantity it
//! relies on. `validate` replays the same analysis from the stored data.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::degen::{codim, delta, delta_prime, is_degeneration, split_common};
use crate::error::{Error, Result};
use crate::ext::{cal_e_reps, f_sets, gencriterion, pushout, splits, SeqSpecs, ShortExactSequence};
use crate::io::{MorphRecord, QuiverDoc, RepRecord};
use crate::linalg::{int, Matrix, Rational};
use crate::rep::{cokernel, is_zero_vec, direct_sum, hom_space, sum_structure, Catalog, ModuleSpec, Morphism, Representation};

/// Random combinations tried after the basis sweep when searching for the
/// sequence `0 -> U -> M -> V -> 0`.
pub const DEFAULT_TRIALS: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codim1Data {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub delta_m: i64,
    pub delta_prime_m: i64,
    pub delta_n: i64,
    pub delta_prime_n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aux1Data {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub common: ModuleSpec,
    pub m_rest: ModuleSpec,
    pub n_rest: ModuleSpec,
    pub residual_codim: usize,
    pub delta_common: i64,
    pub delta_prime_common: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDeltas {
    pub index: usize,
    pub mult: usize,
    pub delta: i64,
    pub delta_prime: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aux2Data {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub summands: usize,
    pub delta_m: i64,
    pub delta_prime_m: i64,
    pub table: Vec<SummandDeltas>,
    /// Summands with `δ' = 0`.
    pub u: ModuleSpec,
    /// Summands with `δ = 0`.
    pub v: ModuleSpec,
    /// The remaining summands.
    pub l: ModuleSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialUvData {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub u: usize,
    pub v: usize,
    pub delta_u: i64,
    pub delta_prime_u: i64,
    pub delta_v: i64,
    pub delta_prime_v: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub left: RepRecord,
    pub middle: RepRecord,
    pub right: RepRecord,
    pub inj: MorphRecord,
    pub surj: MorphRecord,
}

impl SequenceRecord {
    pub fn from_sequence(s: &ShortExactSequence) -> Self {
        Self {
            left: RepRecord::from_rep(s.left()),
            middle: RepRecord::from_rep(s.middle()),
            right: RepRecord::from_rep(s.right()),
            inj: MorphRecord::from_morphism(s.inj()),
            surj: MorphRecord::from_morphism(s.surj()),
        }
    }

    pub fn to_sequence(&self, cat: &Catalog) -> Result<ShortExactSequence> {
        let q = cat.quiver();
        let l = Arc::new(self.left.to_rep(q)?);
        let w = Arc::new(self.middle.to_rep(q)?);
        let r = Arc::new(self.right.to_rep(q)?);
        ShortExactSequence::new(self.inj.to_morphism(&l, &w)?, self.surj.to_morphism(&w, &r)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FromUtoVData {
    pub m: ModuleSpec,
    pub u: usize,
    pub v: usize,
    pub sequence: SequenceRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorCriterionData {
    /// `δ'_σ(U + M)`.
    pub delta_prime_um: usize,
    /// `δ_σ(M + V)`.
    pub delta_mv: usize,
}

/// `δ_σ` and `δ'_σ` at `U`, `M`, `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SixDeltas {
    pub delta_u: usize,
    pub delta_m: usize,
    pub delta_v: usize,
    pub delta_prime_u: usize,
    pub delta_prime_m: usize,
    pub delta_prime_v: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongPropData {
    pub hypothesis: SixDeltas,
    /// The indecomposable summand `M1` of `M` with `δ_σ(M1) = 1`.
    pub m1: usize,
    /// `h : U -> M1` not factoring through `U -> M`.
    pub h: MorphRecord,
    /// Middle term of the pushout `σ2 : 0 -> M1 -> X -> V -> 0`.
    pub x: ModuleSpec,
    /// `δ_{σ1}(U), δ_{σ1}(M), δ'_{σ1}(U), δ_{σ2}(V), δ'_{σ2}(U), δ'_{σ2}(V)`.
    pub step2: [usize; 6],
    /// Per indecomposable: `δ_{σ1}`, `δ_{σ2}`, `δ'_{σ1}`, `δ'_{σ2}`; they add
    /// up to `δ_σ` and `δ'_σ`.
    pub delta_sigma1: Vec<usize>,
    pub delta_sigma2: Vec<usize>,
    pub delta_prime_sigma1: Vec<usize>,
    pub delta_prime_sigma2: Vec<usize>,
    /// `δ_{σ1}(X)`.
    pub step3: usize,
    /// `δ'_{σ2}(M)`.
    pub step4: usize,
    /// `δ_σ(X)`.
    pub step5: usize,
    /// `j : X -> V` with `j f' = g1`.
    pub j: MorphRecord,
    /// Middle term `X + M'` of `σ3 : 0 -> U -> X + M' -> V + V -> 0`.
    pub sigma3_middle: ModuleSpec,
    /// `δ'_{σ3}(V)`.
    pub step7_delta_prime_v: usize,
    pub e_vu: usize,
    pub e_uu: usize,
    pub e_uv: usize,
    pub e_vv: usize,
    pub e_nn: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenCriterionData {
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub e_dim: usize,
    pub codim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "data")]
pub enum Step {
    Codim1(Codim1Data),
    #[serde(rename = "Aux1-Case1")]
    Aux1Case1(Aux1Data),
    #[serde(rename = "Aux1-Cancel")]
    Aux1Cancel(Aux1Data),
    #[serde(rename = "Aux2-S3")]
    Aux2S3(Aux2Data),
    SpecialUV(SpecialUvData),
    FromUtoV(FromUtoVData),
    CorCriterion(CorCriterionData),
    LongProp(Box<LongPropData>),
    GenCriterion(GenCriterionData),
}

impl Step {
    pub fn rule(&self) -> &'static str {
        match self {
            Step::Codim1(_) => "Codim1",
            Step::Aux1Case1(_) => "Aux1-Case1",
            Step::Aux1Cancel(_) => "Aux1-Cancel",
            Step::Aux2S3(_) => "Aux2-S3",
            Step::SpecialUV(_) => "SpecialUV",
            Step::FromUtoV(_) => "FromUtoV",
            Step::CorCriterion(_) => "CorCriterion",
            Step::LongProp(_) => "LongProp",
            Step::GenCriterion(_) => "GenCriterion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub quiver: QuiverDoc,
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub codim: usize,
    pub seed: u64,
    pub steps: Vec<Step>,
}

impl Certificate {
    pub fn rules(&self) -> Vec<&'static str> {
        self.steps.iter().map(Step::rule).collect()
    }

    pub fn terminal_rule(&self) -> &'static str {
        self.steps.last().map(Step::rule).unwrap_or("")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    RegCertified(Box<Certificate>),
    SameOrbit,
    NotDegeneration,
    CodimOutOfScope(usize),
    Inconclusive(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::RegCertified(_) => "RegCertified",
            Verdict::SameOrbit => "SameOrbit",
            Verdict::NotDegeneration => "NotDegeneration",
            Verdict::CodimOutOfScope(_) => "CodimOutOfScope",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Inconsistent(msg.into())
}

fn ensure(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg))
    }
}

fn codim1_data(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<Codim1Data> {
    let d = Codim1Data {
        m: m.clone(),
        n: n.clone(),
        delta_m: delta(cat, m, n, m),
        delta_prime_m: delta_prime(cat, m, n, m),
        delta_n: delta(cat, m, n, n),
        delta_prime_n: delta_prime(cat, m, n, n),
    };
    ensure(
        (d.delta_m, d.delta_prime_m, d.delta_n, d.delta_prime_n) == (0, 0, 1, 1),
        "codimension one pair without δ(M) = δ'(M) = 0, δ(N) = δ'(N) = 1",
    )?;
    Ok(d)
}

fn aux1_data(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<Aux1Data> {
    let (m_rest, n_rest, common) = split_common(m, n);
    ensure(is_degeneration(cat, &m_rest, &n_rest), "residual pair is not a degeneration")?;
    let residual_codim = codim(cat, &m_rest, &n_rest)?;
    let d = Aux1Data {
        m: m.clone(),
        n: n.clone(),
        delta_common: delta(cat, m, n, &common),
        delta_prime_common: delta_prime(cat, m, n, &common),
        common,
        m_rest,
        n_rest,
        residual_codim,
    };
    match d.residual_codim {
        1 => Ok(d),
        2 => {
            ensure(
                d.delta_common == 0 && d.delta_prime_common == 0,
                "common summand with nonzero δ in a cancellation step",
            )?;
            Ok(d)
        }
        c => Err(fail(format!("residual codimension {c} after removing the common summand"))),
    }
}

fn aux2_data(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<Aux2Data> {
    let s = n.summands();
    ensure(s <= 4, "disjoint codimension two pair with five or more summands")?;
    let k = cat.len();
    let table: Vec<SummandDeltas> = n
        .support()
        .map(|i| SummandDeltas {
            index: i,
            mult: n.mult(i),
            delta: delta(cat, m, n, &ModuleSpec::unit(k, i)),
            delta_prime: delta_prime(cat, m, n, &ModuleSpec::unit(k, i)),
        })
        .collect();
    let delta_m = delta(cat, m, n, m);
    let delta_prime_m = delta_prime(cat, m, n, m);
    let sum_d: i64 = table.iter().map(|t| t.mult as i64 * t.delta).sum();
    let sum_dp: i64 = table.iter().map(|t| t.mult as i64 * t.delta_prime).sum();
    ensure(delta_m + sum_dp == 2 && delta_prime_m + sum_d == 2, "δ bookkeeping does not add up to 2")?;
    ensure(table.iter().all(|t| t.delta + t.delta_prime >= 1), "summand of N with δ = δ' = 0")?;
    ensure(delta_m + delta_prime_m <= 1, "δ(M) + δ'(M) exceeds 1")?;
    let pick = |f: &dyn Fn(&SummandDeltas) -> bool| {
        let mut v = vec![0; k];
        for t in table.iter().filter(|t| f(t)) {
            v[t.index] = t.mult;
        }
        ModuleSpec(v)
    };
    let u = pick(&|t| t.delta_prime == 0);
    let v = pick(&|t| t.delta == 0);
    let l = pick(&|t| t.delta != 0 && t.delta_prime != 0);
    if !l.is_zero() {
        ensure(l.summands() == 1, "more than one summand outside U and V")?;
        let j = l.support().next().expect("nonzero");
        let t = table.iter().find(|t| t.index == j).expect("listed");
        ensure(
            (t.delta, t.delta_prime, delta_m, delta_prime_m) == (1, 1, 0, 0)
                && delta(cat, m, n, &u) == 1
                && delta_prime(cat, m, n, &v) == 1,
            "summand outside U and V without the expected δ pattern",
        )?;
    }
    Ok(Aux2Data {
        m: m.clone(),
        n: n.clone(),
        summands: s,
        delta_m,
        delta_prime_m,
        table,
        u,
        v,
        l,
    })
}

/// Indecomposable summands `U` (with `δ > 0 = δ'`) and `V` (with
/// `δ' > 0 = δ`) of `n`; `U` is the earliest candidate in the directed
/// order and `V` the latest.
pub fn find_special_uv(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<(usize, usize)> {
    if !m.is_disjoint(n) || m == n {
        return Err(Error::Precondition("special summands need a disjoint pair".into()));
    }
    let k = cat.len();
    let d = |i: usize| delta(cat, m, n, &ModuleSpec::unit(k, i));
    let dp = |i: usize| delta_prime(cat, m, n, &ModuleSpec::unit(k, i));
    let u = n
        .support()
        .filter(|&i| d(i) > 0 && dp(i) == 0)
        .min_by_key(|&i| cat.position(i))
        .ok_or_else(|| fail("no summand U with δ(U) > 0 = δ'(U)"))?;
    let v = n
        .support()
        .filter(|&i| d(i) == 0 && dp(i) > 0)
        .max_by_key(|&i| cat.position(i))
        .ok_or_else(|| fail("no summand V with δ'(V) > 0 = δ(V)"))?;
    Ok((u, v))
}

fn special_uv_data(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<SpecialUvData> {
    let (u, v) = find_special_uv(cat, m, n)?;
    let k = cat.len();
    let (us, vs) = (ModuleSpec::unit(k, u), ModuleSpec::unit(k, v));
    ensure(us.add(&vs) == *n, "N is not U + V")?;
    Ok(SpecialUvData {
        m: m.clone(),
        n: n.clone(),
        u,
        v,
        delta_u: delta(cat, m, n, &us),
        delta_prime_u: delta_prime(cat, m, n, &us),
        delta_v: delta(cat, m, n, &vs),
        delta_prime_v: delta_prime(cat, m, n, &vs),
    })
}

fn random_coeffs(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    (0..k).map(|_| int(rng.gen_range(-3..=3))).collect()
}

/// An exact sequence `0 -> U -> M -> V -> 0` with `U`, `M` realized from
/// the catalog: tries each basis vector of `Hom(U, M)`, then `trials` random
/// combinations. `Ok(None)` when the budget runs out.
pub fn build_umv(cat: &Catalog, u: &ModuleSpec, m: &ModuleSpec, v: &ModuleSpec, opts: Options) -> Result<Option<ShortExactSequence>> {
    let ur = cat.realize(u);
    let mr = cat.realize(m);
    let basis = hom_space(&ur, &mr)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let attempt = |f: Morphism| -> Result<Option<ShortExactSequence>> {
        if !f.is_injective() {
            return Ok(None);
        }
        let (c, p) = cokernel(&f);
        if cat.decompose(&c)? != *v {
            return Ok(None);
        }
        Ok(Some(ShortExactSequence::new(f, p)?))
    };
    for b in &basis {
        if let Some(s) = attempt(b.clone())? {
            return Ok(Some(s));
        }
    }
    if basis.is_empty() {
        return Ok(None);
    }
    for _ in 0..opts.trials {
        let c = random_coeffs(&mut rng, basis.len());
        if let Some(s) = attempt(Morphism::combination(&basis, &c, &ur, &mr))? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn from_u_to_v_check(cat: &Catalog, m: &ModuleSpec, u: usize, v: usize, s: &ShortExactSequence) -> Result<()> {
    let k = cat.len();
    ensure(**s.left() == *cat.realize(&ModuleSpec::unit(k, u)), "left term is not the catalog module U")?;
    ensure(**s.middle() == *cat.realize(m), "middle term is not the realized M")?;
    ensure(cat.decompose(s.right())? == ModuleSpec::unit(k, v), "right term is not V")
}

fn six_deltas(cat: &Catalog, sp: &SeqSpecs) -> Result<SixDeltas> {
    let (u, w, v) = (&sp.left, &sp.middle, &sp.right);
    Ok(SixDeltas {
        delta_u: sp.delta(cat, u)?,
        delta_m: sp.delta(cat, w)?,
        delta_v: sp.delta(cat, v)?,
        delta_prime_u: sp.delta_prime(cat, u)?,
        delta_prime_m: sp.delta_prime(cat, w)?,
        delta_prime_v: sp.delta_prime(cat, v)?,
    })
}

fn cor_criterion_data(cat: &Catalog, sp: &SeqSpecs) -> Result<CorCriterionData> {
    Ok(CorCriterionData {
        delta_prime_um: sp.delta_prime(cat, &sp.left.add(&sp.middle))?,
        delta_mv: sp.delta(cat, &sp.middle.add(&sp.right))?,
    })
}

/// Coordinates of `target` in the span of `vectors`, if it lies there.
fn solve_in_span(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    if vectors.is_empty() {
        return is_zero_vec(target).then(Vec::new);
    }
    Matrix::from_columns(target.len(), vectors).solve(target)
}

/// The block of `M1` inside the realized `M` and its complement `M'`.
struct SplitM {
    m1: Arc<Representation>,
    m_prime: Arc<Representation>,
    p1: Morphism,
    i1: Morphism,
    p_prime: Morphism,
    i_prime: Morphism,
}

fn split_m(cat: &Catalog, m: &ModuleSpec, mr: &Arc<Representation>, m1: usize) -> Result<SplitM> {
    let order = m.expanded();
    let parts: Vec<Arc<Representation>> = order.iter().map(|&i| cat.indecomposable(i).clone()).collect();
    let (incs, projs) = sum_structure(&parts, mr);
    let at = order.iter().position(|&i| i == m1).ok_or_else(|| fail("M1 is not a summand of M"))?;
    let rest = m.checked_sub(&ModuleSpec::unit(cat.len(), m1)).expect("summand");
    let m_prime = cat.realize(&rest);
    let others: Vec<usize> = (0..order.len()).filter(|&t| t != at).collect();
    let (p_prime, i_prime) = if others.is_empty() {
        (Morphism::zero(mr.clone(), m_prime.clone()), Morphism::zero(m_prime.clone(), mr.clone()))
    } else {
        let ps: Vec<&Morphism> = others.iter().map(|&t| &projs[t]).collect();
        let is: Vec<&Morphism> = others.iter().map(|&t| &incs[t]).collect();
        (Morphism::column(&ps, m_prime.clone()), Morphism::row(&is, m_prime.clone()))
    };
    Ok(SplitM {
        m1: parts[at].clone(),
        m_prime,
        p1: projs[at].clone(),
        i1: incs[at].clone(),
        p_prime,
        i_prime,
    })
}

fn seq_with_sum(inj_parts: &[&Morphism], surj_parts: &[&Morphism], left: &Arc<Representation>, right: &Arc<Representation>) -> Result<ShortExactSequence> {
    let mids: Vec<&Representation> = inj_parts.iter().map(|f| &**f.target()).collect();
    let sum = Arc::new(direct_sum(&mids)?);
    let inj = Morphism::column(inj_parts, sum.clone());
    let surj = Morphism::row(surj_parts, sum);
    debug_assert!(**inj.source() == **left && **surj.target() == **right);
    ShortExactSequence::new(inj, surj)
}

/// The pieces of the two-summand argument that certify chooses: `M1`, the
/// map `h` and the map `j`.
struct LongPropChoices {
    m1: usize,
    h: Morphism,
    j: Morphism,
}

fn choose_longprop(cat: &Catalog, s: &ShortExactSequence, sp: &SeqSpecs) -> Result<LongPropChoices> {
    let k = cat.len();
    let m1 = sp
        .middle
        .support()
        .find(|&i| sp.delta(cat, &ModuleSpec::unit(k, i)).ok() == Some(1))
        .ok_or_else(|| fail("no summand M1 of M with δ_σ(M1) = 1"))?;
    let split = split_m(cat, &sp.middle, s.middle(), m1)?;
    let f = s.inj();
    let through_f: Vec<Vec<Rational>> = hom_space(s.middle(), &split.m1)?.iter().map(|kk| kk.after(f).flatten()).collect();
    let h = hom_space(s.left(), &split.m1)?
        .into_iter()
        .find(|h| solve_in_span(&through_f, &h.flatten()).is_none())
        .ok_or_else(|| fail("every map U -> M1 factors through U -> M"))?;
    let (sigma2, _) = pushout(s, &h)?;
    let g1 = s.surj().after(&split.i1);
    let x = sigma2.middle();
    let homs = hom_space(x, s.right())?;
    let images: Vec<Vec<Rational>> = homs.iter().map(|b| b.after(sigma2.inj()).flatten()).collect();
    let coeffs = solve_in_span(&images, &g1.flatten()).ok_or_else(|| fail("M1 -> V does not factor through f'"))?;
    let j = Morphism::combination(&homs, &coeffs, x, s.right());
    Ok(LongPropChoices { m1, h, j })
}

/// Recomputes every recorded quantity of the two-summand argument from the
/// sequence `s` and the chosen `M1`, `h`, `j`.
fn longprop_trace(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, s: &ShortExactSequence, ch: &LongPropChoices) -> Result<LongPropData> {
    let k = cat.len();
    let unit = |i: usize| ModuleSpec::unit(k, i);
    let sp = s.specs(cat)?;
    let hyp = six_deltas(cat, &sp)?;
    ensure(
        hyp == SixDeltas {
            delta_u: 1,
            delta_m: 1,
            delta_v: 0,
            delta_prime_u: 0,
            delta_prime_m: 1,
            delta_prime_v: 1,
        },
        "hypothesis table δ_σ(U,M,V) = (1,1,0), δ'_σ(U,M,V) = (0,1,1) fails",
    )?;
    ensure(sp.middle.mult(ch.m1) == 1 && sp.delta(cat, &unit(ch.m1))? == 1, "M1 is not the summand with δ_σ = 1")?;
    let split = split_m(cat, &sp.middle, s.middle(), ch.m1)?;
    let m_prime_spec = sp.middle.checked_sub(&unit(ch.m1)).expect("summand");
    ensure(sp.delta(cat, &m_prime_spec)? == 0, "δ_σ(M') is not zero")?;

    // Step 1: σ2 is the pushout along h, σ1 glues f and h.
    let (f, g) = (s.inj(), s.surj());
    let h = &ch.h;
    ensure(**h.source() == **s.left() && **h.target() == *split.m1 && h.intertwines(), "h is not a map U -> M1")?;
    let through_f: Vec<Vec<Rational>> = hom_space(s.middle(), &split.m1)?.iter().map(|kk| kk.after(f).flatten()).collect();
    ensure(solve_in_span(&through_f, &h.flatten()).is_none(), "h factors through f")?;
    let (sigma2, h_prime) = pushout(s, h)?;
    let f_prime = sigma2.inj();
    let minus_f_prime = f_prime.scaled(&int(-1));
    let sigma1 = seq_with_sum(&[f, h], &[&h_prime, &minus_f_prime], s.left(), sigma2.middle())?;
    ensure(!splits(cat, &sigma1)?, "σ1 splits")?;
    ensure(!splits(cat, &sigma2)?, "σ2 splits")?;
    let (s1, s2) = (sigma1.specs(cat)?, sigma2.specs(cat)?);
    let x = s2.middle.clone();

    // Step 2 and additivity of δ over the pushout factorization.
    let (u, w, v) = (&sp.left, &sp.middle, &sp.right);
    let step2 = [
        s1.delta(cat, u)?,
        s1.delta(cat, w)?,
        s1.delta_prime(cat, u)?,
        s2.delta(cat, v)?,
        s2.delta_prime(cat, u)?,
        s2.delta_prime(cat, v)?,
    ];
    ensure(step2 == [1, 0, 0, 0, 0, 1], "step 2 equalities fail")?;
    let per = |seq: &SeqSpecs, prime: bool| -> Result<Vec<usize>> {
        (0..k)
            .map(|i| if prime { seq.delta_prime(cat, &unit(i)) } else { seq.delta(cat, &unit(i)) })
            .collect()
    };
    let (d1, d2, dp1, dp2) = (per(&s1, false)?, per(&s2, false)?, per(&s1, true)?, per(&s2, true)?);
    for i in 0..k {
        ensure(d1[i] + d2[i] == sp.delta(cat, &unit(i))?, "δ_σ is not δ_σ1 + δ_σ2")?;
        ensure(dp1[i] + dp2[i] == sp.delta_prime(cat, &unit(i))?, "δ'_σ is not δ'_σ1 + δ'_σ2")?;
    }

    // Steps 3 to 5.
    let step3 = s1.delta(cat, &x)?;
    let step4 = s2.delta_prime(cat, w)?;
    let step5 = sp.delta(cat, &x)?;
    ensure((step3, step4, step5) == (0, 0, 0), "steps 3 to 5 fail")?;

    // Step 6: 0 -> U -> X + M' -> V + V -> 0.
    let j = &ch.j;
    ensure(**j.source() == **sigma2.middle() && **j.target() == **s.right() && j.intertwines(), "j is not a map X -> V")?;
    let g1 = g.after(&split.i1);
    ensure(j.after(f_prime) == g1, "j f' differs from g1")?;
    let f1 = split.p1.after(f);
    let f2 = split.p_prime.after(f);
    let g2 = g.after(&split.i_prime);
    let xm = Arc::new(direct_sum(&[&**sigma2.middle(), &*split.m_prime])?);
    let vv = Arc::new(direct_sum(&[&**s.right(), &**s.right()])?);
    let inj3 = Morphism::column(&[&f_prime.after(&f1), &f2], xm.clone());
    let zero = Morphism::zero(split.m_prime.clone(), s.right().clone());
    let top = Morphism::row(&[sigma2.surj(), &zero], xm.clone());
    let bottom = Morphism::row(&[j, &g2], xm);
    let sigma3 = ShortExactSequence::new(inj3, Morphism::column(&[&top, &bottom], vv))?;
    let s3 = sigma3.specs(cat)?;
    ensure(s3.middle == x.add(&m_prime_spec), "middle of σ3 is not X + M'")?;

    // Steps 7 and 8.
    let step7 = s3.delta_prime(cat, v)?;
    ensure(step7 == hyp.delta_prime_v + step2[5] && step7 == 2, "δ'_σ3(V) is not 2")?;
    let sets = f_sets(cat, m, n);
    let (ur, vr) = (cat.realize(u), cat.realize(v));
    let e = |a: &Arc<Representation>, b: &Arc<Representation>| -> Result<usize> { Ok(cal_e_reps(cat, &sets, a, b)?.dim) };
    let (e_vu, e_uu, e_uv, e_vv) = (e(&vr, &ur)?, e(&ur, &ur)?, e(&ur, &vr)?, e(&vr, &vr)?);
    ensure(e_vu <= step7, "dim E(V, U) exceeds δ'_σ3(V)")?;
    ensure(e_uu == 0 && e_uv == 0 && e_vv == 0, "E vanishes on neither (U, -) nor (-, V)")?;
    let e_nn = e_uu + e_uv + e_vu + e_vv;
    let c = codim(cat, m, n)?;
    ensure(e_nn <= c, "dim E(N, N) exceeds the codimension")?;
    Ok(LongPropData {
        hypothesis: hyp,
        m1: ch.m1,
        h: MorphRecord::from_morphism(h),
        x,
        step2,
        delta_sigma1: d1,
        delta_sigma2: d2,
        delta_prime_sigma1: dp1,
        delta_prime_sigma2: dp2,
        step3,
        step4,
        step5,
        j: MorphRecord::from_morphism(j),
        sigma3_middle: s3.middle,
        step7_delta_prime_v: step7,
        e_vu,
        e_uu,
        e_uv,
        e_vv,
        e_nn,
    })
}

fn gencriterion_data(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<GenCriterionData> {
    let g = gencriterion(cat, m, n)?;
    ensure(g.regular_certified, "dim E(N, N) differs from the codimension")?;
    Ok(GenCriterionData {
        m: m.clone(),
        n: n.clone(),
        e_dim: g.e_dim,
        codim: g.codim,
    })
}

enum Outcome {
    Done,
    Inconclusive(String),
}

fn certify_codim2(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, opts: Options, steps: &mut Vec<Step>, depth: usize) -> Result<Outcome> {
    if !m.is_disjoint(n) {
        ensure(depth == 0, "common summand left after cancellation")?;
        let d = aux1_data(cat, m, n)?;
        let (mr, nr) = (d.m_rest.clone(), d.n_rest.clone());
        if d.residual_codim == 1 {
            steps.push(Step::Aux1Case1(d));
            steps.push(Step::Codim1(codim1_data(cat, &mr, &nr)?));
            return Ok(Outcome::Done);
        }
        steps.push(Step::Aux1Cancel(d));
        return certify_codim2(cat, &mr, &nr, opts, steps, depth + 1);
    }
    let s = n.summands();
    ensure(s >= 2, "indecomposable module degenerates")?;
    if s >= 3 {
        steps.push(Step::Aux2S3(aux2_data(cat, m, n)?));
        return Ok(Outcome::Done);
    }
    let uv = special_uv_data(cat, m, n)?;
    let (u, v) = (uv.u, uv.v);
    steps.push(Step::SpecialUV(uv));
    let k = cat.len();
    let Some(sigma) = build_umv(cat, &ModuleSpec::unit(k, u), m, &ModuleSpec::unit(k, v), opts)? else {
        return Ok(Outcome::Inconclusive(format!(
            "no exact sequence 0 -> U -> M -> V -> 0 found within {} random trials",
            opts.trials
        )));
    };
    from_u_to_v_check(cat, m, u, v, &sigma)?;
    steps.push(Step::FromUtoV(FromUtoVData {
        m: m.clone(),
        u,
        v,
        sequence: SequenceRecord::from_sequence(&sigma),
    }));
    let sp = sigma.specs(cat)?;
    let cc = cor_criterion_data(cat, &sp)?;
    if cc.delta_prime_um == 0 || cc.delta_mv == 0 {
        steps.push(Step::CorCriterion(cc));
        return Ok(Outcome::Done);
    }
    let choices = choose_longprop(cat, &sigma, &sp)?;
    steps.push(Step::LongProp(Box::new(longprop_trace(cat, m, n, &sigma, &choices)?)));
    steps.push(Step::GenCriterion(gencriterion_data(cat, m, n)?));
    Ok(Outcome::Done)
}

/// Decides whether the orbit closure of `m` is regular along the orbit of
/// `n`, for codimension at most two. Errors signal a broken invariant.
pub fn certify(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, opts: Options) -> Result<Verdict> {
    cat.check_spec(m)?;
    cat.check_spec(n)?;
    if m == n {
        return Ok(Verdict::SameOrbit);
    }
    if !is_degeneration(cat, m, n) {
        return Ok(Verdict::NotDegeneration);
    }
    let c = codim(cat, m, n)?;
    let mut steps = Vec::new();
    match c {
        1 => steps.push(Step::Codim1(codim1_data(cat, m, n)?)),
        2 => {
            if let Outcome::Inconclusive(why) = certify_codim2(cat, m, n, opts, &mut steps, 0)? {
                return Ok(Verdict::Inconclusive(why));
            }
        }
        _ => return Ok(Verdict::CodimOutOfScope(c)),
    }
    Ok(Verdict::RegCertified(Box::new(Certificate {
        quiver: QuiverDoc::from_quiver(cat.quiver()),
        m: m.clone(),
        n: n.clone(),
        codim: c,
        seed: opts.seed,
        steps,
    })))
}

fn replay_codim2<'a>(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, steps: &mut impl Iterator<Item = &'a Step>, depth: usize) -> Result<()> {
    let next = |steps: &mut dyn Iterator<Item = &'a Step>| steps.next().ok_or_else(|| fail("certificate ends early"));
    if !m.is_disjoint(n) {
        ensure(depth == 0, "common summand left after cancellation")?;
        let d = aux1_data(cat, m, n)?;
        return match (next(steps)?, d.residual_codim) {
            (Step::Aux1Case1(s), 1) if *s == d => match next(steps)? {
                Step::Codim1(c) if *c == codim1_data(cat, &d.m_rest, &d.n_rest)? => Ok(()),
                _ => Err(fail("Aux1-Case1 must be followed by Codim1 on the residual pair")),
            },
            (Step::Aux1Cancel(s), 2) if *s == d => replay_codim2(cat, &d.m_rest, &d.n_rest, steps, depth + 1),
            _ => Err(fail("Aux1 step does not match")),
        };
    }
    if n.summands() >= 3 {
        return match next(steps)? {
            Step::Aux2S3(s) if *s == aux2_data(cat, m, n)? => Ok(()),
            _ => Err(fail("Aux2-S3 step does not match")),
        };
    }
    let uv = special_uv_data(cat, m, n)?;
    match next(steps)? {
        Step::SpecialUV(s) if *s == uv => {}
        _ => return Err(fail("SpecialUV step does not match")),
    }
    let Step::FromUtoV(fv) = next(steps)? else {
        return Err(fail("expected FromUtoV"));
    };
    ensure(fv.m == *m && fv.u == uv.u && fv.v == uv.v, "FromUtoV modules do not match")?;
    let sigma = fv.sequence.to_sequence(cat)?;
    from_u_to_v_check(cat, m, uv.u, uv.v, &sigma)?;
    let sp = sigma.specs(cat)?;
    let cc = cor_criterion_data(cat, &sp)?;
    if cc.delta_prime_um == 0 || cc.delta_mv == 0 {
        return match next(steps)? {
            Step::CorCriterion(s) if *s == cc => Ok(()),
            _ => Err(fail("CorCriterion step does not match")),
        };
    }
    let Step::LongProp(lp) = next(steps)? else {
        return Err(fail("expected LongProp"));
    };
    ensure(lp.m1 < cat.len() && sp.middle.mult(lp.m1) == 1, "recorded M1 is not a summand of M")?;
    let split = split_m(cat, &sp.middle, sigma.middle(), lp.m1)?;
    let h = lp.h.to_morphism(sigma.left(), &split.m1)?;
    let (sigma2, _) = pushout(&sigma, &h)?;
    let j = lp.j.to_morphism(sigma2.middle(), sigma.right())?;
    let redo = longprop_trace(cat, m, n, &sigma, &LongPropChoices { m1: lp.m1, h, j })?;
    ensure(**lp == redo, "LongProp record does not recompute")?;
    match next(steps)? {
        Step::GenCriterion(g) if *g == gencriterion_data(cat, m, n)? => Ok(()),
        _ => Err(fail("GenCriterion step does not match")),
    }
}

/// Replays the certificate against `(m, n)`: every δ, codimension,
/// decomposition, exactness and splitting claim is recomputed.
pub fn validate(cat: &Catalog, cert: &Certificate, m: &ModuleSpec, n: &ModuleSpec) -> bool {
    validate_detailed(cat, cert, m, n).is_ok()
}

/// Like `validate`, with the first disagreement as the error.
pub fn validate_detailed(cat: &Catalog, cert: &Certificate, m: &ModuleSpec, n: &ModuleSpec) -> Result<()> {
    ensure(cert.quiver == QuiverDoc::from_quiver(cat.quiver()), "certificate is for another quiver")?;
    ensure(cert.m == *m && cert.n == *n, "certificate is for another pair")?;
    cat.check_spec(m)?;
    cat.check_spec(n)?;
    ensure(m != n && is_degeneration(cat, m, n), "pair is not a proper degeneration")?;
    let c = codim(cat, m, n)?;
    ensure(cert.codim == c, "recorded codimension is wrong")?;
    let mut steps = cert.steps.iter();
    match c {
        1 => match steps.next() {
            Some(Step::Codim1(d)) if *d == codim1_data(cat, m, n)? => {}
            _ => return Err(fail("Codim1 step does not match")),
        },
        2 => replay_codim2(cat, m, n, &mut steps, 0)?,
        _ => return Err(fail("codimension outside {1, 2}")),
    }
    ensure(steps.next().is_none(), "steps after the terminal rule")
}
