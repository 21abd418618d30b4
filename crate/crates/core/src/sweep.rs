//! Batch certification over every orientation of a Dynkin diagram and every
//! dimension vector up to a total dimension.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{certify, validate_detailed, Certificate, Options, Verdict};
use crate::degen::{codim, is_degeneration};
use crate::error::Result;
use crate::ext::gencriterion;
use crate::quiver::{orientations, parse_family, DimVector};
use crate::rep::{Catalog, ModuleSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Diagram name such as `A3` or `D4`.
    pub family: String,
    pub max_total: usize,
    pub seed: u64,
    pub trials: usize,
}

/// Outcome for one proper degeneration pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairResult {
    pub orientation: usize,
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub codim: usize,
    pub verdict: String,
    pub rules: Vec<String>,
    pub validated: bool,
    pub e_dim: usize,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenStats {
    pub pairs: usize,
    pub equal: usize,
    pub strict: usize,
    pub below: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub orientations: usize,
    pub dim_vectors: usize,
    pub orbits: usize,
    pub degeneration_pairs: usize,
    /// Codimension of every proper degeneration pair.
    pub codim_histogram: BTreeMap<usize, usize>,
    pub verdicts: BTreeMap<String, usize>,
    pub terminal_rules: BTreeMap<String, usize>,
    /// Occurrences of every rule across all certificates.
    pub rules: BTreeMap<String, usize>,
    /// `dim E(N, N)` against the codimension, keyed by codimension; covers
    /// every proper degeneration pair.
    pub gencriterion: BTreeMap<usize, GenStats>,
    /// Codimension two pairs ending in `LongProp` then `GenCriterion`.
    pub longprop_pairs: usize,
    /// Disjoint two-summand codimension two pairs, all of which need the
    /// sequence `0 -> U -> M -> V -> 0`.
    pub umv_pairs: usize,
    pub failures: Vec<PairResult>,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every vector of length `rank` with entry sum at most `max_total`, in
/// lexicographic order.
pub fn dim_vectors(rank: usize, max_total: usize) -> Vec<DimVector> {
    fn go(rank: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<DimVector>) {
        if cur.len() == rank {
            out.push(DimVector(cur.clone()));
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(rank, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, max_total, &mut Vec::new(), &mut out);
    out
}

/// Seed for one pair, mixed from the sweep seed and the pair's position so
/// that results do not depend on scheduling.
pub fn pair_seed(seed: u64, orientation: usize, index: usize) -> u64 {
    let mut z = seed ^ ((orientation as u64) << 40) ^ index as u64;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Proper degeneration pairs `(m, n, codim)` among the modules of `d`.
pub fn degeneration_pairs(cat: &Catalog, d: &DimVector) -> Vec<(ModuleSpec, ModuleSpec, usize)> {
    let nodes = cat.modules_of_dim(d);
    let mut out = Vec::new();
    for m in &nodes {
        for n in &nodes {
            if m != n && is_degeneration(cat, m, n) {
                let c = codim(cat, m, n).expect("degeneration");
                out.push((m.clone(), n.clone(), c));
            }
        }
    }
    out
}

fn run_pair(cat: &Catalog, orientation: usize, m: &ModuleSpec, n: &ModuleSpec, c: usize, opts: Options) -> PairResult {
    let mut r = PairResult {
        orientation,
        m: m.clone(),
        n: n.clone(),
        codim: c,
        verdict: String::new(),
        rules: Vec::new(),
        validated: false,
        e_dim: 0,
        reason: None,
    };
    match gencriterion(cat, m, n) {
        Ok(g) => r.e_dim = g.e_dim,
        Err(e) => r.reason = Some(e.to_string()),
    }
    if c > 2 {
        r.verdict = "CodimOutOfScope".into();
        return r;
    }
    match certify(cat, m, n, opts) {
        Ok(v) => {
            r.verdict = v.name().into();
            match v {
                Verdict::RegCertified(cert) => {
                    r.rules = cert.rules().into_iter().map(String::from).collect();
                    // Validate the serialized form, as a consumer of the file would.
                    let reread = Certificate::from_json(&cert.to_json());
                    match reread.and_then(|c| validate_detailed(cat, &c, m, n)) {
                        Ok(()) => r.validated = true,
                        Err(e) => r.reason = Some(format!("certificate does not validate: {e}")),
                    }
                }
                Verdict::Inconclusive(why) => r.reason = Some(why),
                _ => r.reason = Some("unexpected verdict".into()),
            }
        }
        Err(e) => {
            r.verdict = "Error".into();
            r.reason = Some(e.to_string());
        }
    }
    r
}

impl PairResult {
    fn failed(&self) -> bool {
        self.reason.is_some() || (self.codim <= 2 && !self.validated)
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let (family, rank) = parse_family(&cfg.family)?;
    let quivers = orientations(family, rank)?;
    let dims = dim_vectors(rank, cfg.max_total);
    let mut report = SweepReport {
        config: cfg.clone(),
        orientations: quivers.len(),
        dim_vectors: dims.len(),
        orbits: 0,
        degeneration_pairs: 0,
        codim_histogram: BTreeMap::new(),
        verdicts: BTreeMap::new(),
        terminal_rules: BTreeMap::new(),
        rules: BTreeMap::new(),
        gencriterion: BTreeMap::new(),
        longprop_pairs: 0,
        umv_pairs: 0,
        failures: Vec::new(),
    };
    for (o, q) in quivers.into_iter().enumerate() {
        let cat = Catalog::new(q)?;
        let mut pairs = Vec::new();
        for d in &dims {
            report.orbits += cat.modules_of_dim(d).len();
            pairs.extend(degeneration_pairs(&cat, d));
        }
        let results: Vec<PairResult> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, (m, n, c))| {
                let opts = Options {
                    seed: pair_seed(cfg.seed, o, i),
                    trials: cfg.trials,
                };
                run_pair(&cat, o, m, n, *c, opts)
            })
            .collect();
        for r in results {
            report.degeneration_pairs += 1;
            *report.codim_histogram.entry(r.codim).or_default() += 1;
            *report.verdicts.entry(r.verdict.clone()).or_default() += 1;
            for rule in &r.rules {
                *report.rules.entry(rule.clone()).or_default() += 1;
            }
            if let Some(last) = r.rules.last() {
                *report.terminal_rules.entry(last.clone()).or_default() += 1;
            }
            let g = report.gencriterion.entry(r.codim).or_default();
            g.pairs += 1;
            match r.e_dim.cmp(&r.codim) {
                std::cmp::Ordering::Equal => g.equal += 1,
                std::cmp::Ordering::Greater => g.strict += 1,
                std::cmp::Ordering::Less => g.below += 1,
            }
            if r.rules.iter().any(|x| x == "LongProp") {
                report.longprop_pairs += 1;
            }
            if r.rules.iter().any(|x| x == "FromUtoV") || r.reason.as_deref().is_some_and(|x| x.contains("0 -> U -> M -> V -> 0")) {
                report.umv_pairs += 1;
            }
            if r.failed() {
                report.failures.push(r);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_vector_counts() {
        assert_eq!(dim_vectors(2, 2).len(), 6);
        assert_eq!(dim_vectors(4, 6).len(), 210);
        assert_eq!(dim_vectors(3, 0), vec![DimVector(vec![0, 0, 0])]);
    }

    #[test]
    fn a2_sweep_is_clean() {
        let cfg = SweepConfig {
            family: "A2".into(),
            max_total: 4,
            seed: 0,
            trials: 500,
        };
        let r = sweep(&cfg).unwrap();
        assert!(r.is_clean(), "{:?}", r.failures);
        assert_eq!(r.orientations, 2);
        assert!(r.verdicts["RegCertified"] > 0);
    }
}
