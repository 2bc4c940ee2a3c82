mod common;

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;

use hct::configurations::{contour_supports, Configuration, Region};
use hct::eisenstein::{
    classify_diameter, factor_eisenstein, ground_state_count, is_attainable, loeschian_representations,
    DiameterCase, EisensteinInteger,
};
use hct::excitations::{count_defects, insertable_sites_in_triangle, TriangleStacks};
use hct::forces::{
    min_delta_nondeletable, removed_type_census, verify_inserted_lens_types, verify_inserted_triangle_types,
    verify_removed_types, ForceFamily, Rational,
};
use hct::lattice::{enumerate_ground_states, GroundStateDescriptor};
use hct::{LatticeSite, Sublattice};

fn site() -> impl Strategy<Value = LatticeSite> {
    (-100_000i64..100_000, -100_000i64..100_000).prop_map(|(m, n)| LatticeSite::new(m, n))
}

fn class() -> impl Strategy<Value = Sublattice> {
    (1i64..40, 0i64..40)
        .prop_filter("a >= b", |(a, b)| a >= b)
        .prop_map(|(a, b)| Sublattice::new(a, b).unwrap())
}

fn q(p: i64, d: i64) -> Rational {
    Ratio::new(p, d)
}

// ---------------------------------------------------------------------------
// geometry

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn metric_matches_embedding(x in site(), y in site()) {
        let (x0, x1) = x.embed();
        let (y0, y1) = y.embed();
        let euclid = (x0 - y0).powi(2) + (x1 - y1).powi(2);
        let exact = x.dist2(y) as f64;
        prop_assert!((euclid - exact).abs() <= 1e-9 * exact.max(1.0));
    }
}

proptest! {
    #[test]
    fn reflection_and_rotation_are_isometries(x in site(), y in site()) {
        prop_assert_eq!(x.reflect().dist2(y.reflect()), x.dist2(y));
        prop_assert_eq!(x.rotate60().dist2(y.rotate60()), x.dist2(y));
        prop_assert_eq!(x.reflect().reflect(), x);
        let mut r = x;
        for _ in 0..6 {
            r = r.rotate60();
        }
        prop_assert_eq!(r, x);
    }

    #[test]
    fn six_neighbors_sit_at_distance_d(s in class()) {
        let d2 = s.index() as i64;
        let nb = s.six_neighbors();
        for x in nb {
            prop_assert_eq!(x.norm2(), d2);
            prop_assert!(s.contains(x));
        }
        let distinct: BTreeSet<_> = nb.iter().collect();
        prop_assert_eq!(distinct.len(), 6);
        // no other sublattice site is that close
        let r = 2 * (s.a() + s.b());
        let mut close = 0;
        for m in -r..=r {
            for n in -r..=r {
                let x = LatticeSite::new(m, n);
                if x != LatticeSite::ORIGIN && s.contains(x) && x.norm2() <= d2 {
                    close += 1;
                }
            }
        }
        prop_assert_eq!(close, 6);
    }

    #[test]
    fn membership_is_a_group(s in class(), k in -50i64..50, l in -50i64..50, j in -50i64..50, i in -50i64..50, off in site()) {
        let [v1, v2] = s.basis();
        let comb = |k: i64, l: i64| LatticeSite::new(k * v1.m + l * v2.m, k * v1.n + l * v2.n);
        let x = comb(k, l);
        let y = comb(j, i);
        prop_assert!(s.contains(x));
        prop_assert!(s.contains(x + y));
        prop_assert!(s.contains(x - y));
        prop_assert!(s.contains(-x));
        prop_assert_eq!(s.contains(off), s.contains(off + x));
    }

    #[test]
    fn eisenstein_factorization_recomposes(a in -1000i64..1000, b in -1000i64..1000) {
        let z = EisensteinInteger::new(a, b);
        prop_assume!(z != EisensteinInteger::ZERO && z.norm() <= 1_000_000);
        let f = factor_eisenstein(z).unwrap();
        prop_assert_eq!(f.recompose(), z);
        prop_assert!(f.unit.is_unit());
    }
}

#[test]
fn factorization_fuzz_ten_thousand() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut done = 0;
    while done < 10_000 {
        let z = EisensteinInteger::new(rng.gen_range(-1155..=1155), rng.gen_range(-1155..=1155));
        if z == EisensteinInteger::ZERO || z.norm() > 1_000_000 {
            continue;
        }
        assert_eq!(factor_eisenstein(z).unwrap().recompose(), z, "{z}");
        done += 1;
    }
}

// ---------------------------------------------------------------------------
// classification against brute force

fn oracle_reps(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..=n {
        if a * a > n {
            break;
        }
        for b in 0..=a {
            if a * a + a * b + b * b == n {
                out.push((a, b));
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

fn oracle_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[test]
fn cases_agree_with_brute_force_up_to_2000() {
    for n in 1..=2000u64 {
        let reps = oracle_reps(n);
        assert_eq!(is_attainable(n), !reps.is_empty(), "{n}");
        if reps.is_empty() {
            continue;
        }
        let c = classify_diameter(n).unwrap();
        assert_eq!(c.representations, reps, "{n}");
        let split: Vec<u32> = oracle_factor(n)
            .into_iter()
            .filter(|&(p, _)| p % 3 == 1)
            .map(|(_, e)| e)
            .collect();
        let want = match split.as_slice() {
            [] => DiameterCase::Case1,
            [1] => DiameterCase::Case2,
            _ => DiameterCase::Case3,
        };
        assert_eq!(c.case, want, "{n}");
        // closed forms: one class in Case 1, one chiral class in Case 2, several otherwise
        match want {
            DiameterCase::Case1 => {
                assert_eq!(reps.len(), 1);
                assert_eq!(ground_state_count(n).unwrap(), n);
            }
            DiameterCase::Case2 => {
                assert_eq!(reps.len(), 1);
                assert!(reps[0].0 > reps[0].1 && reps[0].1 > 0);
                assert_eq!(ground_state_count(n).unwrap(), 2 * n);
            }
            DiameterCase::Case3 => assert!(reps.len() >= 2),
        }
    }
}

#[test]
fn ground_state_lists_have_the_predicted_size() {
    for n in (1..=500u64).filter(|&n| is_attainable(n)) {
        let states = enumerate_ground_states(n).unwrap();
        assert_eq!(states.len() as u64, ground_state_count(n).unwrap(), "{n}");
        let distinct: BTreeSet<_> = states.iter().collect();
        assert_eq!(distinct.len(), states.len());
    }
}

// ---------------------------------------------------------------------------
// insertable sites

#[test]
fn insertable_sites_match_brute_force() {
    for n in [49u64, 147, 169] {
        for (a, b) in loeschian_representations(n) {
            let s = Sublattice::new(a as i64, b as i64).unwrap();
            let fast = insertable_sites_in_triangle(LatticeSite::ORIGIN, s.generator());
            assert_eq!(fast, common::oracle_insertable(&s), "class ({a},{b})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn defect_counts_are_symmetric(s in class()) {
        let st = TriangleStacks::new(&s);
        let map = |f: fn(LatticeSite) -> LatticeSite| TriangleStacks {
            d2: st.d2,
            a: st.a.iter().map(|&x| f(x)).collect(),
            b: st.b.iter().map(|&x| f(x)).collect(),
            c: st.c.iter().map(|&x| f(x)).collect(),
            d: st.d.iter().map(|&x| f(x)).collect(),
        };
        let c = count_defects(&s);
        for moved in [map(LatticeSite::rotate60), map(LatticeSite::reflect), map(|x| -x)] {
            prop_assert_eq!(moved.pairs(), c.pairs);
            prop_assert_eq!(moved.triples(), c.triples);
            prop_assert_eq!(moved.quadruples(), c.quadruples);
        }
        prop_assert_eq!(c.excess, 2);
    }
}

// ---------------------------------------------------------------------------
// configurations

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn single_vacancy_gives_nine_parallelograms(k in 3i64..6, l in 3i64..6, pick in 0usize..7) {
        let n = 7;
        let gs = GroundStateDescriptor {
            class: Sublattice::new(2, 1).unwrap(),
            reflected: false,
            shift: LatticeSite::ORIGIN,
        };
        let mut c = Configuration::from_ground_state(&gs, Region::square(9));
        let inside: Vec<_> = c
            .occupied
            .iter()
            .copied()
            .filter(|x| x.m.div_euclid(n) == k && x.n.div_euclid(n) == l)
            .collect();
        prop_assert_eq!(inside.len(), 7);
        c.vacate(inside[pick]);
        let sup = contour_supports(&c).unwrap();
        prop_assert_eq!(sup.len(), 1);
        prop_assert_eq!(sup[0].parallelograms.len(), 9);
        prop_assert!(sup[0].parallelograms.contains(&(k, l)));
    }
}

// ---------------------------------------------------------------------------
// forces

const FAMILIES: [(&str, [(i64, i64); 2]); 3] =
    [("d7", [(7, 0), (5, 3)]), ("d13", [(13, 0), (8, 7)]), ("d147", [(11, 2), (7, 7)])];

#[test]
fn no_admissible_six_tuple() {
    for n in [49u64, 147, 169] {
        let c = removed_type_census(n, 1).expect("a sixth site would have been reported");
        assert!(c.tuple_counts_by_size[&5] > 0);
    }
}

#[test]
fn inserted_equalities_hold_for_all_listed_pairs() {
    for (name, classes) in FAMILIES {
        let f = ForceFamily::builtin(name).unwrap();
        for (a, b) in classes {
            let s = Sublattice::new(a, b).unwrap();
            assert!(verify_inserted_triangle_types(&f, &s).unwrap().holds, "{name} ({a},{b})");
            assert!(verify_inserted_lens_types(&f, &s).unwrap().holds, "{name} ({a},{b})");
        }
    }
}

#[test]
fn perturbing_any_used_force_breaks_an_inserted_equality() {
    for (name, classes) in FAMILIES {
        let f = ForceFamily::builtin(name).unwrap();
        let classes: Vec<_> = classes.iter().map(|&(a, b)| Sublattice::new(a, b).unwrap()).collect();
        let mut used = BTreeSet::new();
        for s in &classes {
            let t = verify_inserted_triangle_types(&f, s).unwrap();
            let l = verify_inserted_lens_types(&f, s).unwrap();
            used.extend(t.types.into_iter().chain(l.types).flatten());
        }
        assert!(!used.is_empty());
        for r in used {
            let up = f.get(r) + q(1, 1000);
            let g = f.with(r, if up <= q(1, 1) { up } else { f.get(r) - q(1, 1000) }).unwrap();
            let broken = classes.iter().any(|s| {
                !verify_inserted_triangle_types(&g, s).unwrap().holds || !verify_inserted_lens_types(&g, s).unwrap().holds
            });
            assert!(broken, "{name}: perturbing f[{r}] went unnoticed");
        }
    }
}

#[test]
fn lowering_a_force_keeps_removed_types_proper() {
    let f = ForceFamily::builtin("d7").unwrap();
    for (r, fr) in f.entries() {
        let g = f.with(r, fr / 2).unwrap();
        let report = verify_removed_types(&g).unwrap();
        assert!(report.proper, "halving f[{r}]");
    }
}

#[test]
fn removed_type_equalities_for_seven() {
    let f = ForceFamily::builtin("d7").unwrap();
    let rows: [(&[u64], Rational); 22] = [
        (&[4, 28, 36, 48], q(1, 1)),
        (&[7, 25, 27], q(47, 56)),
        (&[7, 28, 36, 37], q(47, 56)),
        (&[9, 28, 31, 48], q(51, 56)),
        (&[9, 31, 31, 37], q(51, 56)),
        (&[12, 16, 28], q(47, 56)),
        (&[12, 21, 28, 43], q(51, 56)),
        (&[12, 27, 31, 31], q(23, 28)),
        (&[13, 13, 39, 39], q(13, 14)),
        (&[13, 19, 31, 39], q(51, 56)),
        (&[13, 25, 27, 39], q(3, 4)),
        (&[13, 37, 39, 43, 48], q(19, 28)),
        (&[16, 21, 28, 37], q(23, 28)),
        (&[16, 28, 28, 36], q(37, 56)),
        (&[19, 19, 25, 36], q(23, 28)),
        (&[19, 25, 27, 31], q(41, 56)),
        (&[21, 21, 28, 28], q(25, 28)),
        (&[25, 25, 27, 27], q(4, 7)),
        (&[25, 37, 37, 39, 48], q(3, 7)),
        (&[28, 28, 36, 43, 48], q(1, 2)),
        (&[28, 36, 37, 39, 43], q(3, 7)),
        (&[31, 31, 37, 37, 48], q(1, 2)),
    ];
    let census = removed_type_census(49, 1).unwrap();
    let minimal: BTreeSet<Vec<u64>> = census.minimal().into_values().flatten().collect();
    for (ty, sum) in rows {
        assert_eq!(f.sum(ty.iter().copied()), sum, "{ty:?}");
        assert!(minimal.contains(ty), "{ty:?} should be a minimal type");
    }
}

#[test]
fn minimal_deltas_with_witnesses() {
    let table = [
        ("d13", (8, 7), q(149, 540), (21, 148)),
        ("d13", (13, 0), q(31, 90), (133, 28)),
        ("d147", (11, 2), q(1, 2), (37, 100)),
        ("d147", (7, 7), q(1, 4), (127, 21)),
        ("d7", (5, 3), q(31, 56), (28, 21)),
        ("d7", (7, 0), q(31, 56), (28, 21)),
    ];
    for (name, (a, b), delta, witness) in table {
        let f = ForceFamily::builtin(name).unwrap();
        let md = min_delta_nondeletable(&f, &Sublattice::new(a, b).unwrap()).unwrap();
        assert_eq!((md.delta, md.witness), (delta, witness), "{name} ({a},{b})");
    }
    // the classes the stability lemmas rely on
    for (name, (a, b)) in [("d7", (7, 0)), ("d7", (5, 3)), ("d13", (13, 0)), ("d147", (11, 2))] {
        let f = ForceFamily::builtin(name).unwrap();
        let md = min_delta_nondeletable(&f, &Sublattice::new(a, b).unwrap()).unwrap();
        assert!(md.delta > q(1, 3), "{name} ({a},{b})");
    }
}
