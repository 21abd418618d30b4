//! Quivers, dimension vectors, the Euler form and Dynkin root systems.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertices and arrows are addressed by position; the string
/// ids are kept for I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source id, target id)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {v:?}")));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            let id = id.as_ref().to_string();
            if !seen.insert(id.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {id:?}")));
            }
            let lookup = |v: &str| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::InvalidQuiver(format!("arrow {id:?} uses unknown vertex {v:?}")))
            };
            out.push(Arrow {
                source: lookup(s.as_ref())?,
                target: lookup(t.as_ref())?,
                id,
            });
        }
        Ok(Self {
            vertices,
            arrows: out,
        })
    }

    /// Vertices `1..=n`, arrows `a1, a2, ...` between the given 1-based vertex pairs.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = edges
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| (format!("a{}", k + 1), s.to_string(), t.to_string()))
            .collect();
        Self::new(&vs, &arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// The quiver with every arrow at `v` reversed (arrow ids kept).
    pub fn reflect_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    Arrow {
                        id: a.id.clone(),
                        source: a.target,
                        target: a.source,
                    }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
        }
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    /// Euler form `<x, y> = sum_i x_i y_i - sum_a x_{s(a)} y_{e(a)}`.
    pub fn euler_form(&self, x: &DimVector, y: &DimVector) -> Result<i64> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.euler_unchecked(x, y))
    }

    pub(crate) fn euler_unchecked(&self, x: &DimVector, y: &DimVector) -> i64 {
        let diag: i64 = x.0.iter().zip(&y.0).map(|(a, b)| (*a * *b) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| (x.0[a.source] * y.0[a.target]) as i64)
            .sum();
        diag - off
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.0.len() != self.vertex_count() {
            return Err(Error::Shape(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                d.0.len(),
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// ADE type of the underlying graph, or `None`.
    pub fn classify(&self) -> Option<DynkinType> {
        classify(self)
    }

    /// Positive roots in the canonical order (total dimension, then entries).
    pub fn positive_roots(&self) -> Result<Vec<DimVector>> {
        positive_roots(self)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}:{}->{}", a.id, self.vertices[a.source], self.vertices[a.target]))
            .collect();
        write!(f, "[{}]", arrows.join(", "))
    }
}

/// Dimension vector indexed by vertex position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: usize) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// `sum_i d_i^2`, the dimension of the base-change group.
    pub fn group_dim(&self) -> usize {
        self.0.iter().map(|a| a * a).sum()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinFamily {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub family: DynkinFamily,
    pub rank: usize,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            DynkinFamily::A => "A",
            DynkinFamily::D => "D",
            DynkinFamily::E => "E",
        };
        write!(f, "{fam}{}", self.rank)
    }
}

pub fn classify(q: &Quiver) -> Option<DynkinType> {
    let n = q.vertex_count();
    if n == 0 || q.arrows.len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = HashSet::new();
    for a in &q.arrows {
        if a.source == a.target {
            return None;
        }
        let key = (a.source.min(a.target), a.source.max(a.target));
        if !edges.insert(key) {
            return None;
        }
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    // n - 1 distinct edges plus connectivity means a tree.
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType {
            family: DynkinFamily::A,
            rank: n,
        }),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType {
                    family: DynkinFamily::D,
                    rank: n,
                }),
                [1, 2, 2..=4] => Some(DynkinType {
                    family: DynkinFamily::E,
                    rank: n,
                }),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Symmetrized form `(x, y) = <x, y> + <y, x>` against a unit vector.
fn pair_with_unit(q: &Quiver, x: &[i64], i: usize) -> i64 {
    let mut s = 2 * x[i];
    for a in &q.arrows {
        if a.source == i {
            s -= x[a.target];
        }
        if a.target == i {
            s -= x[a.source];
        }
    }
    s
}

/// Simple reflection `s_i(x) = x - (x, e_i) e_i`.
pub fn reflect(q: &Quiver, x: &[i64], i: usize) -> Vec<i64> {
    let mut y = x.to_vec();
    y[i] -= pair_with_unit(q, x, i);
    y
}

pub fn positive_roots(q: &Quiver) -> Result<Vec<DimVector>> {
    if classify(q).is_none() {
        return Err(Error::NotDynkin);
    }
    let n = q.vertex_count();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        if found.insert(e.clone()) {
            queue.push_back(e);
        }
    }
    while let Some(x) = queue.pop_front() {
        for i in 0..n {
            let y = reflect(q, &x, i);
            if y.iter().all(|&c| c >= 0) && found.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut roots: Vec<DimVector> = found
        .into_iter()
        .map(|v| DimVector(v.into_iter().map(|c| c as usize).collect()))
        .collect();
    roots.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.0.cmp(&b.0)));
    Ok(roots)
}

/// Edges of the standard ADE diagrams on vertices `1..=rank` (undirected).
pub fn dynkin_edges(family: DynkinFamily, rank: usize) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::InvalidQuiver(format!("no Dynkin diagram {family:?}{rank}"));
    match family {
        DynkinFamily::A if rank >= 1 => Ok((1..rank).map(|i| (i, i + 1)).collect()),
        // D_n: path 1..n-1 with vertex n attached to n-2.
        DynkinFamily::D if rank >= 4 => {
            let mut e: Vec<(usize, usize)> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            e.push((rank - 2, rank));
            Ok(e)
        }
        // E_n: path 1..n-1 with vertex n attached to 3.
        DynkinFamily::E if (6..=8).contains(&rank) => {
            let mut e: Vec<(usize, usize)> = (1..rank - 1).map(|i| (i, i + 1)).collect();
            e.push((3, rank));
            Ok(e)
        }
        _ => Err(bad()),
    }
}

/// Every orientation of the given diagram; orientation `k` reverses edge `j`
/// when bit `j` of `k` is set.
pub fn orientations(family: DynkinFamily, rank: usize) -> Result<Vec<Quiver>> {
    let edges = dynkin_edges(family, rank)?;
    (0..1usize << edges.len())
        .map(|mask| {
            let oriented: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(j, &(a, b))| if mask >> j & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            Quiver::numbered(rank, &oriented)
        })
        .collect()
}

/// Parses family names such as `A4`, `D4`, `E6`.
pub fn parse_family(s: &str) -> Result<(DynkinFamily, usize)> {
    let s = s.trim();
    let fam = match s.chars().next() {
        Some('A') | Some('a') => DynkinFamily::A,
        Some('D') | Some('d') => DynkinFamily::D,
        Some('E') | Some('e') => DynkinFamily::E,
        _ => return Err(Error::Parse(format!("unknown Dynkin family {s:?}"))),
    };
    let rank: usize = s[1..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
    dynkin_edges(fam, rank)?;
    Ok((fam, rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::numbered(2, &[(1, 2)]).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            a2().classify(),
            Some(DynkinType {
                family: DynkinFamily::A,
                rank: 2
            })
        );
        let loop_q = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        assert_eq!(loop_q.classify(), None);
        let star = Quiver::numbered(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(
            star.classify(),
            Some(DynkinType {
                family: DynkinFamily::D,
                rank: 4
            })
        );
        let kronecker = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert_eq!(kronecker.classify(), None);
    }

    #[test]
    fn invalid_quivers() {
        assert!(Quiver::new(&["1", "1"], &[]).is_err());
        assert!(Quiver::new(&["1"], &[("a", "1", "2")]).is_err());
        assert!(Quiver::new(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
    }

    #[test]
    fn euler_examples() {
        let q = a2();
        assert_eq!(q.euler_form(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), -1);
        assert_eq!(q.euler_form(&DimVector(vec![0, 0]), &DimVector(vec![0, 0])).unwrap(), 0);
        assert_eq!(q.euler_form(&DimVector(vec![1, 1]), &DimVector(vec![1, 1])).unwrap(), 1);
        assert!(q.euler_form(&DimVector(vec![1]), &DimVector(vec![1, 1])).is_err());
    }

    #[test]
    fn a2_roots_in_order() {
        let roots = a2().positive_roots().unwrap();
        assert_eq!(
            roots,
            vec![DimVector(vec![0, 1]), DimVector(vec![1, 0]), DimVector(vec![1, 1])]
        );
    }

    #[test]
    fn reflection_is_involution() {
        let q = Quiver::numbered(4, &[(1, 2), (3, 2), (2, 4)]).unwrap();
        let x = vec![1, 2, 1, 1];
        for i in 0..4 {
            assert_eq!(reflect(&q, &reflect(&q, &x, i), i), x);
        }
    }

    #[test]
    fn families_and_orientations() {
        assert_eq!(orientations(DynkinFamily::A, 4).unwrap().len(), 8);
        assert_eq!(orientations(DynkinFamily::D, 4).unwrap().len(), 8);
        for (fam, rank) in [(DynkinFamily::D, 5), (DynkinFamily::E, 6), (DynkinFamily::E, 8)] {
            let q = &orientations(fam, rank).unwrap()[0];
            assert_eq!(q.classify(), Some(DynkinType { family: fam, rank }));
        }
        assert!(parse_family("E9").is_err());
        assert_eq!(parse_family("D4").unwrap(), (DynkinFamily::D, 4));
    }
}
