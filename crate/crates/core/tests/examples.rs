//! Worked examples on small quivers, each checked against a hand computation
//! or an independent oracle.

use std::sync::Arc;

use dynkin_orbits::degen::{codim, deg_poset, delta, delta_prime, find_zwitness, is_degeneration, orbit_dim, split_common, verify_zwitness, Budget};
use dynkin_orbits::ext::{cal_e, coboundary, cocycle_space, ext_quotient, f_sets, gencriterion, pullback, pushout, sequence_of, split_off, splits, Cocycle, ShortExactSequence};
use dynkin_orbits::linalg::{int, Matrix, Rational};
use dynkin_orbits::quiver::{DimVector, DynkinFamily, Quiver};
use dynkin_orbits::rep::{direct_sum, hom_dim, in_radical, Catalog, ModuleSpec, Morphism, Representation};
use dynkin_orbits::Error;

// Root order on 1 -> 2: S2 = (0,1), S1 = (1,0), P = (1,1).
const S2: usize = 0;
const S1: usize = 1;
const P: usize = 2;

fn a2() -> Catalog {
    Catalog::new(Quiver::numbered(2, &[(1, 2)]).unwrap()).unwrap()
}

fn spec(v: &[usize]) -> ModuleSpec {
    ModuleSpec(v.to_vec())
}

fn unit(i: usize) -> ModuleSpec {
    ModuleSpec::unit(3, i)
}

/// Determinant by exact elimination.
fn det(m: &[Vec<i64>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != int(0)) else {
            return int(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for i in c + 1..n {
            let f = a[i][c].clone() / a[c][c].clone();
            for j in c..n {
                let t = a[c][j].clone() * f.clone();
                a[i][j] -= t;
            }
        }
    }
    d
}

/// A connected simply-laced graph is Dynkin iff `2I - A` is positive
/// definite; checked through leading principal minors.
fn tits_form_positive(q: &Quiver) -> bool {
    let n = q.vertex_count();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in q.arrows() {
        c[a.source][a.target] -= 1;
        c[a.target][a.source] -= 1;
    }
    (1..=n).all(|k| {
        let minor: Vec<Vec<i64>> = c[..k].iter().map(|r| r[..k].to_vec()).collect();
        det(&minor) > int(0)
    })
}

/// Positive roots by brute force: vectors with entries at most `bound` and
/// Tits form one.
fn roots_by_scan(q: &Quiver, bound: usize) -> Vec<DimVector> {
    let n = q.vertex_count();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        let d = DimVector(cur.clone());
        if !d.is_zero() && q.euler_form(&d, &d).unwrap() == 1 {
            out.push(d);
        }
        let mut i = 0;
        while i < n && cur[i] == bound {
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
    }
    out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn d4_star() -> Quiver {
    Quiver::numbered(4, &[(1, 4), (2, 4), (3, 4)]).unwrap()
}

#[test]
fn classification() {
    let t = Quiver::numbered(2, &[(1, 2)]).unwrap().classify().unwrap();
    assert_eq!((t.family, t.rank), (DynkinFamily::A, 2));
    let lp = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
    assert!(lp.classify().is_none());
    assert!(matches!(Catalog::new(lp), Err(Error::NotDynkin)));
    let star = d4_star();
    assert!(tits_form_positive(&star));
    let t = star.classify().unwrap();
    assert_eq!((t.family, t.rank), (DynkinFamily::D, 4));
    let kronecker = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    assert!(!tits_form_positive(&kronecker) && kronecker.classify().is_none());
    let cycle = Quiver::numbered(3, &[(1, 2), (2, 3), (3, 1)]).unwrap();
    assert!(!tits_form_positive(&cycle) && cycle.classify().is_none());
}

#[test]
fn euler_form_values() {
    let q = Quiver::numbered(2, &[(1, 2)]).unwrap();
    assert_eq!(q.euler_form(&DimVector(vec![1, 0]), &DimVector(vec![0, 1])).unwrap(), -1);
    assert_eq!(q.euler_form(&DimVector(vec![0, 0]), &DimVector(vec![0, 0])).unwrap(), 0);
    assert_eq!(q.euler_form(&DimVector(vec![1, 1]), &DimVector(vec![1, 1])).unwrap(), 1);
    let cat = a2();
    let p = cat.indecomposable(P);
    assert_eq!(hom_dim(p, p).unwrap() as i64 - ext_quotient(p, p).unwrap().dim() as i64, 1);
}

#[test]
fn roots_match_exhaustive_scan() {
    for (q, count) in [
        (Quiver::numbered(2, &[(1, 2)]).unwrap(), 3),
        (Quiver::numbered(3, &[(1, 2), (3, 2)]).unwrap(), 6),
        (d4_star(), 12),
    ] {
        let roots = q.positive_roots().unwrap();
        assert_eq!(roots.len(), count);
        assert_eq!(roots, roots_by_scan(&q, 6));
    }
    let roots = Quiver::numbered(2, &[(1, 2)]).unwrap().positive_roots().unwrap();
    assert_eq!(roots, vec![DimVector(vec![0, 1]), DimVector(vec![1, 0]), DimVector(vec![1, 1])]);
}

#[test]
fn indecomposables() {
    let cat = a2();
    assert_eq!(cat.indecomposable(P).map(0), &Matrix::identity(1));
    for i in [S1, S2] {
        let y = cat.indecomposable(i);
        assert!(y.maps().iter().all(|m| m.rows() * m.cols() == 0));
    }
    let star = Catalog::new(d4_star()).unwrap();
    let i = star.root_index(&DimVector(vec![1, 1, 1, 2])).unwrap();
    let y = star.indecomposable(i);
    assert_eq!(hom_dim(y, y).unwrap(), 1);
}

#[test]
fn hom_and_ext_dimensions() {
    let cat = a2();
    let q = cat.quiver().clone();
    let p = cat.indecomposable(P).clone();
    let s1 = Arc::new(Representation::simple(q.clone(), 0));
    let s2 = Arc::new(Representation::simple(q, 1));
    assert_eq!(hom_dim(&p, &s1).unwrap(), 1);
    assert_eq!(hom_dim(&s1, &p).unwrap(), 0);
    for x in cat.indecomposables() {
        assert!(hom_dim(x, x).unwrap() >= 1);
        assert_eq!(ext_quotient(x, x).unwrap().dim(), 0);
    }
    assert_eq!(ext_quotient(&s1, &s2).unwrap().dim(), 1);
    assert_eq!(ext_quotient(&s2, &s1).unwrap().dim(), 0);
    assert_eq!(cat.ext_spec(&unit(S1), &unit(S2)).unwrap(), 1);
    assert_eq!(cat.ext_spec(&unit(S2), &unit(S1)).unwrap(), 0);
}

#[test]
fn direct_sums_and_decomposition() {
    let cat = a2();
    let p = cat.indecomposable(P).clone();
    let s1 = cat.indecomposable(S1).clone();
    assert_eq!(direct_sum(&[&p]).unwrap(), *p);
    let ps = Arc::new(direct_sum(&[&p, &s1]).unwrap());
    assert_eq!(ps.dim(), &DimVector(vec![2, 1]));
    for z in cat.indecomposables() {
        assert_eq!(hom_dim(&ps, z).unwrap(), hom_dim(&p, z).unwrap() + hom_dim(&s1, z).unwrap());
    }
    for i in 0..3 {
        assert_eq!(cat.decompose(cat.indecomposable(i)).unwrap(), unit(i));
    }
    assert_eq!(cat.decompose(&ps).unwrap(), unit(P).add(&unit(S1)));
    let point = Representation::new(cat.quiver().clone(), DimVector(vec![2, 2]), vec![Matrix::from_i64(2, 2, &[1, 0, 0, 0])]).unwrap();
    assert_eq!(cat.decompose(&Arc::new(point)).unwrap(), spec(&[1, 1, 1]));
    assert_eq!(*cat.realize(&unit(P)), **cat.indecomposable(P));
    assert_eq!(cat.realize(&spec(&[0, 0, 2])).dim(), &DimVector(vec![2, 2]));
    assert_eq!(cat.realize(&spec(&[0, 0, 0])).total_dim(), 0);
}

#[test]
fn radical_membership() {
    let cat = a2();
    for x in cat.indecomposables() {
        assert!(!in_radical(&cat, &x.identity()).unwrap());
    }
    let p = cat.indecomposable(P).clone();
    let s1 = cat.indecomposable(S1).clone();
    let f = dynkin_orbits::rep::hom_space(&p, &s1).unwrap().remove(0);
    assert!(in_radical(&cat, &f).unwrap());
    // Disjoint modules: every map is radical.
    let a = cat.realize(&spec(&[1, 0, 0]));
    let b = cat.realize(&spec(&[0, 0, 2]));
    for g in dynkin_orbits::rep::hom_space(&a, &b).unwrap() {
        assert!(in_radical(&cat, &g).unwrap());
    }
}

#[test]
fn delta_values() {
    let cat = a2();
    let (m, n) = (spec(&[1, 1, 1]), spec(&[2, 2, 0]));
    assert_eq!(delta(&cat, &m, &n, &unit(S1)), 0);
    assert_eq!(delta(&cat, &m, &n, &unit(P)), 0);
    assert_eq!(delta_prime(&cat, &m, &n, &unit(S2)), 0);
    assert_eq!(delta_prime(&cat, &m, &n, &unit(P)), 0);
    for i in 0..3 {
        assert_eq!(delta(&cat, &m, &m, &unit(i)), 0);
        assert_eq!(delta_prime(&cat, &m, &m, &unit(i)), 0);
    }
}

#[test]
fn degeneration_order_on_a2() {
    let cat = a2();
    let (top, mid, low) = (spec(&[0, 0, 2]), spec(&[1, 1, 1]), spec(&[2, 2, 0]));
    assert!(is_degeneration(&cat, &mid, &mid));
    assert!(is_degeneration(&cat, &top, &mid));
    assert!(!is_degeneration(&cat, &mid, &top));
    assert_eq!(orbit_dim(&cat, &mid), 3);
    assert_eq!(orbit_dim(&cat, &low), 0);
    assert_eq!(orbit_dim(&cat, &spec(&[0, 0, 0])), 0);
    assert_eq!(codim(&cat, &mid, &mid).unwrap(), 0);
    assert_eq!(codim(&cat, &top, &mid).unwrap(), 1);
    assert_eq!(codim(&cat, &mid, &low).unwrap(), 3);
    assert_eq!(split_common(&top, &mid), (unit(P), spec(&[1, 1, 0]), unit(P)));
    assert_eq!(split_common(&unit(P), &spec(&[1, 1, 0])).2, spec(&[0, 0, 0]));
    assert_eq!(split_common(&mid, &mid), (spec(&[0, 0, 0]), spec(&[0, 0, 0]), mid.clone()));
}

#[test]
fn posets_on_a2() {
    let cat = a2();
    let p = deg_poset(&cat, &DimVector(vec![1, 1])).unwrap();
    assert_eq!(p.nodes, vec![unit(P), spec(&[1, 1, 0])]);
    assert_eq!(p.orbit_dims, vec![1, 0]);
    assert_eq!(p.covers, vec![(0, 1, 1)]);
    let p = deg_poset(&cat, &DimVector(vec![2, 2])).unwrap();
    assert_eq!(p.nodes, vec![spec(&[0, 0, 2]), spec(&[1, 1, 1]), spec(&[2, 2, 0])]);
    assert_eq!(p.covers, vec![(0, 1, 1), (1, 2, 3)]);
    assert_eq!(deg_poset(&cat, &DimVector(vec![0, 0])).unwrap().nodes.len(), 1);
}

#[test]
fn zwitness_on_a2() {
    let cat = a2();
    let (m, n) = (unit(P), spec(&[1, 1, 0]));
    let w = find_zwitness(&cat, &m, &n, Budget::default(), 0).unwrap().unwrap();
    assert_eq!(w.z, unit(S2));
    assert!(verify_zwitness(&cat, &m, &n, &w).unwrap());
    // The component into Z vanishes; the one into P is the inclusion.
    let zm = w.f.target();
    assert_eq!(cat.decompose(zm).unwrap(), spec(&[1, 0, 1]));
    assert!(matches!(find_zwitness(&cat, &m, &m, Budget::default(), 0), Err(Error::Precondition(_))));
}

fn nonsplit(cat: &Catalog) -> ShortExactSequence {
    let (s1, s2) = (cat.indecomposable(S1).clone(), cat.indecomposable(S2).clone());
    let q = ext_quotient(&s1, &s2).unwrap();
    sequence_of(&q.representatives()[0]).unwrap()
}

#[test]
fn cocycles_and_coboundaries() {
    let cat = a2();
    let (s1, s2, p) = (cat.indecomposable(S1).clone(), cat.indecomposable(S2).clone(), cat.indecomposable(P).clone());
    assert_eq!(cocycle_space(&p, &p).unwrap().len(), 1);
    assert_eq!(cocycle_space(&s1, &s2).unwrap().len(), 1);
    assert_eq!(cocycle_space(&s2, &s1).unwrap().len(), 0);
    let zero = Arc::new(Representation::zero(cat.quiver().clone()));
    assert!(cocycle_space(&zero, &p).unwrap().is_empty());
    let q = ext_quotient(&s1, &s2).unwrap();
    assert_eq!((q.cocycle_dim(), q.coboundary_dim(), q.dim()), (1, 0, 1));
    assert_eq!(ext_quotient(&s2, &s1).unwrap().dim(), 0);
    assert_eq!(ext_quotient(&zero, &p).unwrap().coboundary_dim(), 0);
    // dim B = sum u_i v_i - [V, U].
    for v in cat.indecomposables() {
        for u in cat.indecomposables() {
            let uv: usize = v.dim().0.iter().zip(&u.dim().0).map(|(a, b)| a * b).sum();
            assert_eq!(ext_quotient(v, u).unwrap().coboundary_dim(), uv - hom_dim(v, u).unwrap());
        }
    }
}

#[test]
fn sequences_on_a2() {
    let cat = a2();
    let s = nonsplit(&cat);
    assert_eq!(cat.decompose(s.middle()).unwrap(), unit(P));
    assert!(!splits(&cat, &s).unwrap());
    let sp = s.specs(&cat).unwrap();
    assert_eq!(sp.delta(&cat, &unit(S2)).unwrap(), 1);
    assert_eq!(sp.delta_prime(&cat, &unit(S1)).unwrap(), 1);

    let (s1, s2) = (cat.indecomposable(S1).clone(), cat.indecomposable(S2).clone());
    let z0 = sequence_of(&Cocycle::zero(s1.clone(), s2.clone())).unwrap();
    assert_eq!(**z0.middle(), direct_sum(&[&s2, &s1]).unwrap());
    assert!(splits(&cat, &z0).unwrap());
    let zs = z0.specs(&cat).unwrap();
    for i in 0..3 {
        assert_eq!(zs.delta(&cat, &unit(i)).unwrap(), 0);
        assert_eq!(zs.delta_prime(&cat, &unit(i)).unwrap(), 0);
    }
    let h = vec![Matrix::zeros(0, 1), Matrix::zeros(1, 0)];
    assert!(splits(&cat, &sequence_of(&coboundary(&s1, &s2, &h)).unwrap()).unwrap());
}

#[test]
fn pushouts_and_pullbacks() {
    let cat = a2();
    let s = nonsplit(&cat);
    let u = s.left().clone();
    let (same, _) = pushout(&s, &u.identity()).unwrap();
    assert_eq!(cat.decompose(same.middle()).unwrap(), unit(P));
    let (split, _) = pushout(&s, &Morphism::zero(u.clone(), u.clone())).unwrap();
    assert!(splits(&cat, &split).unwrap());
    let v = s.right().clone();
    let (same, _) = pullback(&s, &v.identity()).unwrap();
    assert!(!splits(&cat, &same).unwrap());
    let (split, _) = pullback(&s, &Morphism::zero(v.clone(), v)).unwrap();
    assert!(splits(&cat, &split).unwrap());
}

#[test]
fn split_off_summand() {
    let cat = a2();
    let s = nonsplit(&cat);
    let p = cat.indecomposable(P).clone();
    let id = ShortExactSequence::new(Morphism::zero(Arc::new(Representation::zero(cat.quiver().clone())), p.clone()), p.identity()).unwrap();
    // sigma plus 0 -> 0 -> P -> P -> 0, then remove the P on the right again.
    let glued = s.sum_with(&id).unwrap();
    assert_eq!(glued.right().dim(), &DimVector(vec![2, 1]));
    let back = split_off(&cat, &glued, &unit(P), 3).unwrap();
    assert_eq!(back.specs(&cat).unwrap(), s.specs(&cat).unwrap());
    assert_eq!(split_off(&cat, &s, &spec(&[0, 0, 0]), 0).unwrap().specs(&cat).unwrap(), s.specs(&cat).unwrap());
    let gone = split_off(&cat, &id, &unit(P), 0).unwrap();
    assert_eq!(gone.middle().total_dim(), 0);
}

#[test]
fn f_sets_and_e_on_a2() {
    let cat = a2();
    let (m, n) = (spec(&[0, 0, 2]), spec(&[1, 1, 1]));
    let sets = f_sets(&cat, &m, &n);
    for &x in &sets.f {
        assert_eq!(delta(&cat, &m, &n, &unit(x)), 0);
    }
    for &y in &sets.f_prime {
        assert_eq!(delta_prime(&cat, &m, &n, &unit(y)), 0);
    }
    assert!(sets.f.len() + sets.f_prime.len() >= 4);
    assert_eq!(cal_e(&cat, &m, &n, &n, &n).unwrap().dim, 1);
    let g = gencriterion(&cat, &m, &n).unwrap();
    assert_eq!((g.e_dim, g.codim, g.regular_certified), (1, 1, true));
    let all = f_sets(&cat, &m, &m);
    assert_eq!((all.f.len(), all.f_prime.len()), (3, 3));
    assert_eq!(cal_e(&cat, &m, &m, &m, &m).unwrap().dim, 0);
    let (m3, n3) = (spec(&[1, 1, 1]), spec(&[2, 2, 0]));
    assert!(gencriterion(&cat, &m3, &n3).unwrap().e_dim >= 3);
}
