use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use dynkin_orbits::degen::{codim, delta, delta_prime, is_degeneration, orbit_dim};
use dynkin_orbits::ext::{cal_e_reps, ext_quotient, f_sets, pushout, sequence_of, split_off, Cocycle, ShortExactSequence};
use dynkin_orbits::linalg::{int, Matrix};
use dynkin_orbits::quiver::{DimVector, Quiver};
use dynkin_orbits::rep::{direct_sum, hom_dim, hom_space, Catalog, ModuleSpec, Morphism, Representation};

fn catalogs() -> &'static [Catalog] {
    static CATS: OnceLock<Vec<Catalog>> = OnceLock::new();
    CATS.get_or_init(|| {
        [
            Quiver::numbered(3, &[(1, 2), (3, 2)]),
            Quiver::numbered(4, &[(1, 2), (2, 3), (4, 3)]),
            Quiver::numbered(4, &[(4, 1), (2, 4), (4, 3)]),
        ]
        .into_iter()
        .map(|q| Catalog::new(q.unwrap()).unwrap())
        .collect()
    })
}

fn cat_and_spec(max_mult: usize, max_total: usize) -> impl Strategy<Value = (usize, ModuleSpec)> {
    (0..3usize).prop_flat_map(move |c| {
        let k = catalogs()[c].len();
        (Just(c), prop::collection::vec(0..=max_mult, k))
            .prop_map(|(c, v)| (c, ModuleSpec(v)))
            .prop_filter("total dimension", move |(c, m)| catalogs()[*c].dim_of(m).total() <= max_total)
    })
}

fn two_specs(max_total: usize) -> impl Strategy<Value = (usize, ModuleSpec, ModuleSpec)> {
    let picks = || prop::collection::vec(0..12usize, 0..=3);
    (0..3usize, picks(), picks())
        .prop_map(|(c, a, b)| {
            let k = catalogs()[c].len();
            let build = |xs: Vec<usize>| xs.into_iter().fold(ModuleSpec::zero(k), |m, i| m.add(&ModuleSpec::unit(k, i % k)));
            (c, build(a), build(b))
        })
        .prop_filter("total dimension", move |(c, a, b)| {
            let cat = &catalogs()[*c];
            cat.dim_of(a).total() + cat.dim_of(b).total() <= max_total
        })
}

/// `q(x, y)` straight from the arrows.
fn euler_oracle(q: &Quiver, x: &DimVector, y: &DimVector) -> i64 {
    let diag: i64 = x.0.iter().zip(&y.0).map(|(a, b)| (a * b) as i64).sum();
    diag - q.arrows().iter().map(|a| (x.0[a.source] * y.0[a.target]) as i64).sum::<i64>()
}

/// Invertible `L U` with unit diagonals, along with its inverse.
fn base_change(n: usize, entries: &[i64]) -> (Matrix, Matrix) {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    let mut it = entries.iter().cycle();
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, int(*it.next().unwrap()));
            u.set(j, i, int(*it.next().unwrap()));
        }
    }
    let g = &l * &u;
    let inv = g.inverse().expect("unitriangular product is invertible");
    (g, inv)
}

fn random_morphism(x: &Arc<Representation>, y: &Arc<Representation>, coeffs: &[i64]) -> Morphism {
    let basis = hom_space(x, y).unwrap();
    let c: Vec<_> = (0..basis.len()).map(|i| int(coeffs[i % coeffs.len()])).collect();
    Morphism::combination(&basis, &c, x, y)
}

fn random_cocycle(v: &Arc<Representation>, u: &Arc<Representation>, coeffs: &[i64]) -> Cocycle {
    let len: usize = v
        .quiver()
        .arrows()
        .iter()
        .map(|a| u.dim().0[a.target] * v.dim().0[a.source])
        .sum();
    let c: Vec<_> = (0..len).map(|i| int(coeffs[i % coeffs.len()])).collect();
    Cocycle::from_coords(v, u, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_form_is_bilinear_and_positive(c in 0..3usize, x in prop::collection::vec(0..4usize, 4), y in prop::collection::vec(0..4usize, 4), z in prop::collection::vec(0..4usize, 4)) {
        let q = catalogs()[c].quiver();
        let n = q.vertex_count();
        let (x, y, z) = (DimVector(x[..n].to_vec()), DimVector(y[..n].to_vec()), DimVector(z[..n].to_vec()));
        prop_assert_eq!(q.euler_form(&x, &y).unwrap(), euler_oracle(q, &x, &y));
        prop_assert_eq!(q.euler_form(&x.add(&y), &z).unwrap(), q.euler_form(&x, &z).unwrap() + q.euler_form(&y, &z).unwrap());
        prop_assert_eq!(q.euler_form(&z, &x.add(&y)).unwrap(), q.euler_form(&z, &x).unwrap() + q.euler_form(&z, &y).unwrap());
        if !x.is_zero() {
            prop_assert!(q.euler_form(&x, &x).unwrap() > 0);
        }
    }

    #[test]
    fn decompose_sees_through_base_change((c, m) in cat_and_spec(2, 7), entries in prop::collection::vec(-2i64..=2, 1..12)) {
        let cat = &catalogs()[c];
        let w = cat.realize(&m);
        let (g, g_inv): (Vec<_>, Vec<_>) = w.dim().0.iter().map(|&d| base_change(d, &entries)).unzip();
        let moved = Arc::new(w.transport(&g, &g_inv));
        prop_assert_eq!(cat.decompose(&w).unwrap(), m.clone());
        prop_assert_eq!(cat.decompose(&moved).unwrap(), m);
    }

    #[test]
    fn hom_is_additive_and_matches_the_table((c, a, b) in two_specs(8)) {
        let cat = &catalogs()[c];
        let (ra, rb) = (cat.realize(&a), cat.realize(&b));
        let sum = Arc::new(direct_sum(&[&ra, &rb]).unwrap());
        for y in cat.indecomposables() {
            prop_assert_eq!(hom_dim(&sum, y).unwrap(), hom_dim(&ra, y).unwrap() + hom_dim(&rb, y).unwrap());
            prop_assert_eq!(hom_dim(y, &sum).unwrap(), hom_dim(y, &ra).unwrap() + hom_dim(y, &rb).unwrap());
        }
        prop_assert_eq!(cat.hom_spec(&a, &b), hom_dim(&ra, &rb).unwrap());
        let e = ext_quotient(&ra, &rb).unwrap().dim() as i64;
        prop_assert_eq!(cat.ext_spec(&a, &b).unwrap() as i64, e);
        prop_assert_eq!(hom_dim(&ra, &rb).unwrap() as i64 - e, euler_oracle(cat.quiver(), ra.dim(), rb.dim()));
    }

    #[test]
    fn deltas_are_additive((c, a, b) in two_specs(10), (m_raw, n_raw) in (prop::collection::vec(0..=1usize, 12), prop::collection::vec(0..=1usize, 12))) {
        let cat = &catalogs()[c];
        let k = cat.len();
        let (m, n) = (ModuleSpec(m_raw[..k].to_vec()), ModuleSpec(n_raw[..k].to_vec()));
        let ab = a.add(&b);
        prop_assert_eq!(delta(cat, &m, &n, &ab), delta(cat, &m, &n, &a) + delta(cat, &m, &n, &b));
        prop_assert_eq!(delta_prime(cat, &m, &n, &ab), delta_prime(cat, &m, &n, &a) + delta_prime(cat, &m, &n, &b));
    }

    #[test]
    fn degeneration_is_a_partial_order(c in 0..3usize, d in prop::collection::vec(0..=2usize, 4)) {
        let cat = &catalogs()[c];
        let d = DimVector(d[..cat.quiver().vertex_count()].to_vec());
        let nodes = cat.modules_of_dim(&d);
        prop_assert!(!nodes.is_empty());
        for m in &nodes {
            prop_assert!(is_degeneration(cat, m, m));
            for n in &nodes {
                if m == n || !is_degeneration(cat, m, n) {
                    continue;
                }
                prop_assert!(!is_degeneration(cat, n, m));
                prop_assert!(orbit_dim(cat, m) > orbit_dim(cat, n));
                prop_assert_eq!(codim(cat, m, n).unwrap(), orbit_dim(cat, m) - orbit_dim(cat, n));
                for x in cat.indecomposables() {
                    let (rm, rn) = (cat.realize(m), cat.realize(n));
                    prop_assert!(hom_dim(x, &rm).unwrap() <= hom_dim(x, &rn).unwrap());
                }
                for l in &nodes {
                    if is_degeneration(cat, n, l) {
                        prop_assert!(is_degeneration(cat, m, l));
                    }
                }
            }
        }
    }

    #[test]
    fn extensions_degenerate_to_their_ends((c, v, u) in two_specs(6), coeffs in prop::collection::vec(-2i64..=2, 1..8)) {
        let cat = &catalogs()[c];
        let (rv, ru) = (cat.realize(&v), cat.realize(&u));
        let z = random_cocycle(&rv, &ru, &coeffs);
        let s = sequence_of(&z).unwrap();
        let sp = s.specs(cat).unwrap();
        prop_assert_eq!(&sp.left, &u);
        prop_assert_eq!(&sp.right, &v);
        prop_assert!(is_degeneration(cat, &sp.middle, &sp.ends()));
        let q = ext_quotient(&rv, &ru).unwrap();
        prop_assert_eq!(sp.splits(), q.is_coboundary(&z));
        for i in 0..cat.len() {
            let x = ModuleSpec::unit(cat.len(), i);
            prop_assert!(sp.delta(cat, &x).is_ok());
            prop_assert!(sp.delta_prime(cat, &x).is_ok());
        }
    }

    #[test]
    fn pushforward_is_functorial((c, v, u) in two_specs(6), coeffs in prop::collection::vec(-2i64..=2, 1..8), w_pick in 0..20usize) {
        let cat = &catalogs()[c];
        let (rv, ru) = (cat.realize(&v), cat.realize(&u));
        let z = random_cocycle(&rv, &ru, &coeffs);
        prop_assert_eq!(z.pushed(&ru.identity()), z.clone());
        prop_assert_eq!(z.pulled(&rv.identity()), z.clone());
        let x = cat.indecomposable(w_pick % cat.len()).clone();
        let y = cat.indecomposable((w_pick / 3) % cat.len()).clone();
        let f = random_morphism(&ru, &x, &coeffs);
        let g = random_morphism(&x, &y, &coeffs);
        prop_assert_eq!(z.pushed(&f).pushed(&g), z.pushed(&g.after(&f)));
        let h = random_morphism(&y, &rv, &coeffs);
        prop_assert_eq!(z.pushed(&f).pulled(&h), z.pulled(&h).pushed(&f));
        // The pushout sequence is the one of the pushed cocycle.
        let (po, _) = pushout(&sequence_of(&z).unwrap(), &f).unwrap();
        let direct = sequence_of(&z.pushed(&f)).unwrap();
        prop_assert_eq!(cat.decompose(po.middle()).unwrap(), cat.decompose(direct.middle()).unwrap());
    }

    #[test]
    fn e_is_blockwise((c, v, u) in two_specs(5), (m_raw, n_raw) in (prop::collection::vec(0..=1usize, 12), prop::collection::vec(0..=1usize, 12))) {
        let cat = &catalogs()[c];
        let k = cat.len();
        let (m, n) = (ModuleSpec(m_raw[..k].to_vec()), ModuleSpec(n_raw[..k].to_vec()));
        let sets = f_sets(cat, &m, &n);
        let direct = cal_e_reps(cat, &sets, &cat.realize(&v), &cat.realize(&u)).unwrap().dim;
        let mut blocks = 0;
        for i in v.support() {
            for j in u.support() {
                blocks += v.mult(i) * u.mult(j) * cal_e_reps(cat, &sets, cat.indecomposable(i), cat.indecomposable(j)).unwrap().dim;
            }
        }
        prop_assert_eq!(direct, blocks);
    }

    #[test]
    fn split_off_recovers_the_sequence((c, v, u) in two_specs(6), coeffs in prop::collection::vec(-2i64..=2, 1..8), pick in 0..20usize, seed in any::<u64>()) {
        let cat = &catalogs()[c];
        let (rv, ru) = (cat.realize(&v), cat.realize(&u));
        let s = sequence_of(&random_cocycle(&rv, &ru, &coeffs)).unwrap();
        // Only summands with δ'_σ = 0 can be split off.
        let sp = s.specs(cat).unwrap();
        let ok: Vec<usize> = (0..cat.len()).filter(|&i| sp.delta_prime(cat, &ModuleSpec::unit(cat.len(), i)).unwrap() == 0).collect();
        let i = ok[pick % ok.len()];
        let x = cat.indecomposable(i).clone();
        let trivial = ShortExactSequence::new(Morphism::zero(Arc::new(Representation::zero(cat.quiver().clone())), x.clone()), x.identity()).unwrap();
        let glued = s.sum_with(&trivial).unwrap();
        let back = split_off(cat, &glued, &ModuleSpec::unit(cat.len(), i), seed).unwrap();
        prop_assert_eq!(back.specs(cat).unwrap(), s.specs(cat).unwrap());
    }
}
