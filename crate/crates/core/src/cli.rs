//! The `dynkin-orbits` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certify::{certify, validate_detailed, Certificate, Options, Verdict, DEFAULT_TRIALS};
use crate::degen::{codim, deg_poset, delta_at, delta_prime_at, find_zwitness, is_degeneration, Budget};
use crate::error::{Error, Result};
use crate::ext::{cal_e, ext_quotient};
use crate::io::{format_rational, parse_quiver, parse_representation, read_module, MorphRecord};
use crate::quiver::{orientations, parse_family, DimVector, Quiver};
use crate::rep::{hom_dim, Catalog, ModuleSpec};
use crate::sweep::{sweep, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_DEGENERATION: i32 = 3;
pub const EXIT_OUT_OF_SCOPE: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "dynkin-orbits", version, about = "Orbit closures of Dynkin quiver representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct QuiverArg {
    /// Quiver as a JSON file, or a diagram name such as `A3` or `D4`.
    #[arg(long, short)]
    pub quiver: String,
    /// Orientation index when `--quiver` names a diagram; bit `j` reverses
    /// edge `j`.
    #[arg(long, default_value_t = 0)]
    pub orientation: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random trials after the deterministic basis sweep.
    #[arg(long)]
    pub budget_trials: Option<usize>,
    /// Bound on multiplicities of the auxiliary module in witness search.
    #[arg(long)]
    pub budget_zmult: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Graph,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the positive roots in the order used by multiplicity vectors.
    Roots {
        #[command(flatten)]
        q: QuiverArg,
        #[command(flatten)]
        common: Common,
    },
    /// Hom and Ext dimensions of two modules, with the δ table when the
    /// second is a degeneration of the first.
    Hom {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose a representation given as JSON into indecomposables.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Degeneration poset of one dimension vector.
    Poset {
        #[command(flatten)]
        q: QuiverArg,
        dim: String,
        #[command(flatten)]
        common: Common,
    },
    /// Ext¹(V, U), and with `--m`/`--n` the subspace E_{M,N}(V, U).
    Ext {
        #[command(flatten)]
        q: QuiverArg,
        v: String,
        u: String,
        #[arg(long, requires = "n")]
        m: Option<String>,
        #[arg(long, requires = "m")]
        n: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an exact sequence 0 -> Z -> Z + M -> N -> 0 with radical
    /// first map.
    Witness {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certify regularity of the orbit closure of M along the orbit of N.
    Certify {
        #[command(flatten)]
        q: QuiverArg,
        m: String,
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a certificate; the pair defaults to the one it records.
    Validate {
        certificate: PathBuf,
        m: Option<String>,
        n: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Certify every codimension one and two pair over all orientations.
    Sweep {
        /// Diagram name such as `A3`.
        family: String,
        #[arg(long, default_value_t = 6)]
        max_total: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Result of a command: text for stdout and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidQuiver(_) | Error::NotDynkin | Error::QuiverMismatch | Error::Shape(_) | Error::NotARoot(_) | Error::Parse(_) | Error::Precondition(_) => EXIT_INPUT,
        Error::NotDegeneration => EXIT_NOT_DEGENERATION,
        Error::Inconsistent(_) => EXIT_INTERNAL,
    }
}

fn load_quiver(q: &QuiverArg) -> Result<Quiver> {
    let path = Path::new(&q.quiver);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", q.quiver)))?;
        return parse_quiver(&text);
    }
    let (family, rank) = parse_family(&q.quiver)?;
    orientations(family, rank)?
        .into_iter()
        .nth(q.orientation)
        .ok_or_else(|| Error::Parse(format!("orientation {} out of range", q.orientation)))
}

fn catalog(q: &QuiverArg) -> Result<Catalog> {
    Catalog::new(load_quiver(q)?)
}

fn parse_dim(text: &str, n: usize) -> Result<DimVector> {
    let v = text
        .split(',')
        .map(|p| p.trim().parse::<u16>().map(usize::from).map_err(|_| Error::Parse(format!("bad dimension {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!("dimension vector has {} entries, expected {n}", v.len())));
    }
    Ok(DimVector(v))
}

fn read_file(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, body).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn root_name(cat: &Catalog, i: usize) -> String {
    let r = &cat.roots()[i].0;
    let parts: Vec<String> = r.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn cmd_roots(cat: &Catalog) -> String {
    let mut out = format!("{} positive roots of {}\n", cat.len(), cat.dynkin());
    for i in 0..cat.len() {
        let _ = writeln!(out, "{i}\t{}", root_name(cat, i));
    }
    out
}

fn cmd_hom(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "M = {m}\nN = {n}");
    let _ = writeln!(out, "[M,M] = {}  [M,N] = {}  [N,M] = {}  [N,N] = {}", cat.hom_spec(m, m), cat.hom_spec(m, n), cat.hom_spec(n, m), cat.hom_spec(n, n));
    let _ = writeln!(out, "Ext(M,N) = {}  Ext(N,M) = {}", cat.ext_spec(m, n)?, cat.ext_spec(n, m)?);
    let _ = writeln!(out, "disjoint: {}", m.is_disjoint(n));
    if cat.dim_of(m) != cat.dim_of(n) || !is_degeneration(cat, m, n) {
        let _ = writeln!(out, "degeneration: no");
        return Ok(out);
    }
    let _ = writeln!(out, "degeneration: yes, codim {}", codim(cat, m, n)?);
    let _ = writeln!(out, "index\troot\tdelta\tdelta'");
    for i in 0..cat.len() {
        let _ = writeln!(out, "{i}\t{}\t{}\t{}", root_name(cat, i), delta_at(cat, m, n, i), delta_prime_at(cat, m, n, i));
    }
    Ok(out)
}

fn cmd_poset(cat: &Catalog, d: &DimVector, format: Format) -> Result<String> {
    let p = deg_poset(cat, d)?;
    if format == Format::Graph {
        return Ok(p.to_dot());
    }
    let mut out = format!("{} orbits, {} cover edges\n", p.nodes.len(), p.covers.len());
    for (i, (m, od)) in p.nodes.iter().zip(&p.orbit_dims).enumerate() {
        let _ = writeln!(out, "n{i}\t{m}\tdim {od}");
    }
    for (a, b, c) in &p.covers {
        let _ = writeln!(out, "n{a} -> n{b}\tcodim {c}");
    }
    let mut hist = std::collections::BTreeMap::<usize, usize>::new();
    for (_, _, c) in &p.covers {
        *hist.entry(*c).or_default() += 1;
    }
    let parts: Vec<String> = hist.iter().map(|(c, k)| format!("{c}:{k}")).collect();
    let _ = writeln!(out, "codim histogram: {}", parts.join(" "));
    Ok(out)
}

fn cmd_ext(cat: &Catalog, v: &ModuleSpec, u: &ModuleSpec, pair: Option<(ModuleSpec, ModuleSpec)>) -> Result<String> {
    let (vr, ur) = (cat.realize(v), cat.realize(u));
    let q = ext_quotient(&vr, &ur)?;
    let mut out = format!(
        "V = {v}\nU = {u}\n[V,U] = {}\ncocycles {}  coboundaries {}  Ext(V,U) = {}\n",
        hom_dim(&vr, &ur)?,
        q.cocycle_dim(),
        q.coboundary_dim(),
        q.dim()
    );
    if let Some((m, n)) = pair {
        if !is_degeneration(cat, &m, &n) {
            return Err(Error::NotDegeneration);
        }
        let e = cal_e(cat, &m, &n, v, u)?;
        let _ = writeln!(out, "E_(M,N)(V,U) = {}", e.dim);
        for z in &e.basis {
            let coords: Vec<String> = z.coords().iter().map(format_rational).collect();
            let _ = writeln!(out, "  [{}]", coords.join(" "));
        }
    }
    Ok(out)
}

fn budget(common: &Common) -> Budget {
    let d = Budget::default();
    Budget {
        zmult: common.budget_zmult.unwrap_or(d.zmult),
        trials: common.budget_trials.unwrap_or(d.trials),
    }
}

fn cmd_witness(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, common: &Common) -> Result<Outcome> {
    let b = budget(common);
    let mut out = format!("seed {}  zmult {}  trials {}\n", common.seed, b.zmult, b.trials);
    match find_zwitness(cat, m, n, b, common.seed)? {
        Some(w) => {
            let _ = writeln!(out, "Z = {}", w.z);
            let body = serde_json::to_string_pretty(&serde_json::json!({
                "m": m, "n": n, "z": w.z, "f": MorphRecord::from_morphism(&w.f),
            }))
            .expect("serializes");
            write_out(&common.out, &(body.clone() + "\n"))?;
            if common.out.is_none() {
                out.push_str(&body);
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
        None => {
            out.push_str("no witness within budget (inconclusive)\n");
            Ok(Outcome { text: out, code: EXIT_INCONCLUSIVE })
        }
    }
}

fn cmd_certify(cat: &Catalog, m: &ModuleSpec, n: &ModuleSpec, common: &Common) -> Result<Outcome> {
    let opts = Options {
        seed: common.seed,
        trials: common.budget_trials.unwrap_or(DEFAULT_TRIALS),
    };
    let v = certify(cat, m, n, opts)?;
    let mut out = format!("seed {}  trials {}\nverdict: {}\n", opts.seed, opts.trials, v.name());
    let code = match &v {
        Verdict::RegCertified(c) => {
            let _ = writeln!(out, "codim {}; rules: {}", c.codim, c.rules().join(" -> "));
            let body = c.to_json() + "\n";
            write_out(&common.out, &body)?;
            if common.out.is_none() {
                out.push_str(&body);
            }
            EXIT_OK
        }
        Verdict::SameOrbit => EXIT_OK,
        Verdict::NotDegeneration => EXIT_NOT_DEGENERATION,
        Verdict::CodimOutOfScope(c) => {
            let _ = writeln!(out, "codim {c}");
            EXIT_OUT_OF_SCOPE
        }
        Verdict::Inconclusive(why) => {
            let _ = writeln!(out, "{why}");
            EXIT_INCONCLUSIVE
        }
    };
    Ok(Outcome { text: out, code })
}

fn cmd_validate(file: &Path, m: Option<&str>, n: Option<&str>) -> Result<Outcome> {
    let cert = Certificate::from_json(&read_file(file)?)?;
    let cat = Catalog::new(cert.quiver.to_quiver()?)?;
    let (m, n) = match (m, n) {
        (Some(a), Some(b)) => (read_module(&cat, a)?, read_module(&cat, b)?),
        (None, None) => (cert.m.clone(), cert.n.clone()),
        _ => return Err(Error::Parse("give both modules or neither".into())),
    };
    Ok(match validate_detailed(&cat, &cert, &m, &n) {
        Ok(()) => Outcome::ok(format!("valid: {} -> {} codim {}, rules {}\n", m, n, cert.codim, cert.rules().join(" -> "))),
        Err(e) => Outcome {
            text: format!("invalid: {e}\n"),
            code: EXIT_NOT_DEGENERATION,
        },
    })
}

fn cmd_sweep(family: &str, max_total: usize, common: &Common) -> Result<Outcome> {
    let cfg = SweepConfig {
        family: family.to_string(),
        max_total,
        seed: common.seed,
        trials: common.budget_trials.unwrap_or(DEFAULT_TRIALS),
    };
    let report = sweep(&cfg)?;
    let body = report.to_json();
    write_out(&common.out, &body)?;
    let mut out = if common.out.is_none() { body } else { String::new() };
    let _ = writeln!(
        out,
        "{}: {} degeneration pairs, {} failures",
        cfg.family,
        report.degeneration_pairs,
        report.failures.len()
    );
    Ok(Outcome {
        text: out,
        code: if report.is_clean() { EXIT_OK } else { EXIT_INCONCLUSIVE },
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Roots { q, common } => {
            let text = cmd_roots(&catalog(q)?);
            write_out(&common.out, &text)?;
            Ok(Outcome::ok(text))
        }
        Command::Hom { q, m, n, common } => {
            let cat = catalog(q)?;
            let text = cmd_hom(&cat, &read_module(&cat, m)?, &read_module(&cat, n)?)?;
            write_out(&common.out, &text)?;
            Ok(Outcome::ok(text))
        }
        Command::Decompose { file, common } => {
            let rep = parse_representation(&read_file(file)?)?;
            let cat = Catalog::from_arc(rep.quiver().clone())?;
            let spec = cat.decompose(&Arc::new(rep))?;
            let mut text = format!("{spec}\n");
            for i in spec.support() {
                let _ = writeln!(text, "{} x {}", spec.mult(i), root_name(&cat, i));
            }
            write_out(&common.out, &text)?;
            Ok(Outcome::ok(text))
        }
        Command::Poset { q, dim, common } => {
            let cat = catalog(q)?;
            let d = parse_dim(dim, cat.quiver().vertex_count())?;
            let text = cmd_poset(&cat, &d, common.format)?;
            write_out(&common.out, &text)?;
            Ok(Outcome::ok(text))
        }
        Command::Ext { q, v, u, m, n, common } => {
            let cat = catalog(q)?;
            let pair = match (m, n) {
                (Some(a), Some(b)) => Some((read_module(&cat, a)?, read_module(&cat, b)?)),
                _ => None,
            };
            let text = cmd_ext(&cat, &read_module(&cat, v)?, &read_module(&cat, u)?, pair)?;
            write_out(&common.out, &text)?;
            Ok(Outcome::ok(text))
        }
        Command::Witness { q, m, n, common } => {
            let cat = catalog(q)?;
            cmd_witness(&cat, &read_module(&cat, m)?, &read_module(&cat, n)?, common)
        }
        Command::Certify { q, m, n, common } => {
            let cat = catalog(q)?;
            cmd_certify(&cat, &read_module(&cat, m)?, &read_module(&cat, n)?, common)
        }
        Command::Validate { certificate, m, n, .. } => cmd_validate(certificate, m.as_deref(), n.as_deref()),
        Command::Sweep { family, max_total, common } => cmd_sweep(family, *max_total, common),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(o) => {
            print!("{}", o.text);
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
