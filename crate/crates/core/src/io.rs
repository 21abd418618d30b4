//! JSON documents for quivers, representations and module specs.
//!
//! Rationals are always written as `"p/q"` strings; `"p"` is accepted on
//! input.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{Catalog, ModuleSpec, Morphism, Representation};

/// Upper bound on the entries of one parsed matrix, to keep hostile input
/// from requesting huge allocations.
const MAX_ENTRIES: usize = 1 << 20;

pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q) = (int(p)?, int(q)?);
            if q.is_zero() || q < BigInt::zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

impl QuiverDoc {
    pub fn from_quiver(q: &Quiver) -> Self {
        Self {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDoc {
                    id: a.id.clone(),
                    source: q.vertices()[a.source].clone(),
                    target: q.vertices()[a.target].clone(),
                })
                .collect(),
        }
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.id.as_str(), a.source.as_str(), a.target.as_str()))
            .collect();
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Quiver::new(&vertices, &arrows)
    }
}

/// A representation keyed by vertex and arrow ids; matrices row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepDoc {
    pub quiver: QuiverDoc,
    pub dim: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, Vec<String>>,
}

fn parse_matrix(rows: usize, cols: usize, entries: &[String], what: &str) -> Result<Matrix> {
    let want = rows
        .checked_mul(cols)
        .filter(|&n| n <= MAX_ENTRIES)
        .ok_or_else(|| Error::Parse(format!("{what} is too large")))?;
    if entries.len() != want {
        return Err(Error::Parse(format!("{what} has {} entries, expected {rows}x{cols}", entries.len())));
    }
    let data = entries.iter().map(|e| parse_rational(e)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_vec(rows, cols, data))
}

fn format_matrix(m: &Matrix) -> Vec<String> {
    m.entries().iter().map(format_rational).collect()
}

impl RepDoc {
    pub fn from_rep(rep: &Representation) -> Self {
        let q = rep.quiver();
        Self {
            quiver: QuiverDoc::from_quiver(q),
            dim: q.vertices().iter().cloned().zip(rep.dim().0.iter().copied()).collect(),
            matrices: q
                .arrows()
                .iter()
                .zip(rep.maps())
                .map(|(a, m)| (a.id.clone(), format_matrix(m)))
                .collect(),
        }
    }

    pub fn to_rep(&self) -> Result<Representation> {
        let q = Arc::new(self.quiver.to_quiver()?);
        for key in self.dim.keys() {
            if q.vertex_index(key).is_none() {
                return Err(Error::Parse(format!("dimension given for unknown vertex {key:?}")));
            }
        }
        for key in self.matrices.keys() {
            if q.arrow_index(key).is_none() {
                return Err(Error::Parse(format!("matrix given for unknown arrow {key:?}")));
            }
        }
        let dim = DimVector(q.vertices().iter().map(|v| self.dim.get(v).copied().unwrap_or(0)).collect());
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (dim.0[a.target], dim.0[a.source]);
                match self.matrices.get(&a.id) {
                    Some(e) => parse_matrix(r, c, e, &format!("matrix of arrow {:?}", a.id)),
                    None if r == 0 || c == 0 => Ok(Matrix::zeros(r, c)),
                    None => Err(Error::Parse(format!("missing matrix for arrow {:?}", a.id))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Representation::new(q, dim, maps)
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_quiver()
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    let doc: RepDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_rep()
}

/// Comma-separated multiplicities over the root order, e.g. `"0,1,1"`.
pub fn parse_module_spec(text: &str, roots: usize) -> Result<ModuleSpec> {
    let parts: Vec<&str> = text.trim().split(',').map(str::trim).collect();
    if parts.len() != roots {
        return Err(Error::Parse(format!("module spec has {} entries, expected {roots}", parts.len())));
    }
    parts
        .iter()
        .map(|p| {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad multiplicity {p:?}")));
            }
            p.parse::<u16>()
                .map(usize::from)
                .map_err(|_| Error::Parse(format!("multiplicity {p:?} out of range")))
        })
        .collect::<Result<Vec<_>>>()
        .map(ModuleSpec)
}

/// A module given either as a multiplicity vector or as an explicit
/// representation document, decomposed on ingest.
pub fn read_module(cat: &Catalog, arg: &str) -> Result<ModuleSpec> {
    let path = std::path::Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        let rep = parse_representation(&text)?;
        if **rep.quiver() != **cat.quiver() {
            return Err(Error::QuiverMismatch);
        }
        let rep = Representation::new(cat.quiver().clone(), rep.dim().clone(), rep.maps().to_vec())?;
        return cat.decompose(&Arc::new(rep));
    }
    parse_module_spec(arg, cat.len())
}

/// A representation inside a document that fixes the quiver elsewhere:
/// dimensions by vertex index, matrices by arrow index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub dim: Vec<usize>,
    pub maps: Vec<Vec<String>>,
}

impl RepRecord {
    pub fn from_rep(rep: &Representation) -> Self {
        Self {
            dim: rep.dim().0.clone(),
            maps: rep.maps().iter().map(format_matrix).collect(),
        }
    }

    pub fn to_rep(&self, q: &Arc<Quiver>) -> Result<Representation> {
        if self.dim.len() != q.vertex_count() || self.maps.len() != q.arrows().len() {
            return Err(Error::Parse("representation record does not fit the quiver".into()));
        }
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, e)| parse_matrix(self.dim[a.target], self.dim[a.source], e, "arrow matrix"))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(q.clone(), DimVector(self.dim.clone()), maps)
    }
}

/// Vertex matrices of a morphism whose ends are known from context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphRecord {
    pub maps: Vec<Vec<String>>,
}

impl MorphRecord {
    pub fn from_morphism(f: &Morphism) -> Self {
        Self {
            maps: f.maps().iter().map(format_matrix).collect(),
        }
    }

    /// Rebuilds the morphism, checking shapes and the intertwining law.
    pub fn to_morphism(&self, source: &Arc<Representation>, target: &Arc<Representation>) -> Result<Morphism> {
        let n = source.dim().0.len();
        if self.maps.len() != n {
            return Err(Error::Parse("morphism record has the wrong number of vertices".into()));
        }
        let maps = (0..n)
            .map(|v| parse_matrix(target.dim().0[v], source.dim().0[v], &self.maps[v], "vertex matrix"))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source.clone(), target.clone(), maps)
    }
}
