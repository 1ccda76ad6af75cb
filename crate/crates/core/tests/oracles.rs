mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use xmod::cech::abelian::AbelianCochainComplex;
use xmod::cech::cocycle::{apply_gauge, dual_cocycle, enumerate_pi0, tensor_cocycle, BibundleCocycle, Gauge};
use xmod::cech::nerve::Nerve;
use xmod::cech::obstruction::{image_h1_generators, lifting_obstruction};
use xmod::crossed::CrossedModule;
use xmod::fixtures;
use xmod::group::FiniteGroup;

#[test]
fn snf_cohomology_matches_rank_counts() {
    for (name, n) in fixtures::nerves() {
        for p in [2usize, 3, 5] {
            let c = AbelianCochainComplex::from_group(&n, &FiniteGroup::cyclic(p)).unwrap();
            for q in 1..=2 {
                let h = c.cohomology(q).unwrap();
                let dim = common::betti_mod_p(&n, q, p as i64);
                assert_eq!(h.order, p.pow(dim as u32), "{name} H^{q}(Z_{p})");
                assert!(h.invariant_factors.iter().all(|&d| d == p));
            }
        }
    }
}

#[test]
fn composite_coefficients_match_universal_coefficients() {
    // Z_4 coefficients on RP26: H^1 = Z_2, H^2 = Z_2 (from H_1 = Z_2, H_2 = 0).
    let n = &fixtures::nerves()["RP26"];
    let c = AbelianCochainComplex::from_group(n, &FiniteGroup::cyclic(4)).unwrap();
    assert_eq!(c.cohomology(1).unwrap().invariant_factors, vec![2]);
    assert_eq!(c.cohomology(2).unwrap().invariant_factors, vec![2]);
    let z6 = AbelianCochainComplex::from_group(n, &FiniteGroup::cyclic(6)).unwrap();
    assert_eq!(z6.cohomology(2).unwrap().order, 2);
}

/// Counts gauge orbits of all cocycles by brute force.
fn orbit_count(n: &Arc<Nerve>, xm: &Arc<CrossedModule>) -> usize {
    let (ng, nh) = (xm.g().order(), xm.h().order());
    let (e, v) = (n.edges().len(), n.vertex_count());
    let mut all = Vec::new();
    let total_g = ng.pow(e as u32);
    let total_h = nh.pow(v as u32);
    for gi in 0..total_g {
        let g: Vec<usize> = (0..e).map(|k| gi / ng.pow(k as u32) % ng).collect();
        for hi in 0..total_h {
            let h: Vec<usize> = (0..v).map(|k| hi / nh.pow(k as u32) % nh).collect();
            if let Ok(c) = BibundleCocycle::new(n, xm, g.clone(), h) {
                all.push(c);
            }
        }
    }
    let gauges: Vec<Gauge> =
        (0..ng.pow(v as u32)).map(|ki| Gauge { k: (0..v).map(|k| ki / ng.pow(k as u32) % ng).collect() }).collect();
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut orbits = 0;
    for c in &all {
        if seen.contains(&(c.g().to_vec(), c.h().to_vec())) {
            continue;
        }
        orbits += 1;
        for k in &gauges {
            let d = apply_gauge(c, k);
            seen.insert((d.g().to_vec(), d.h().to_vec()));
        }
    }
    orbits
}

#[test]
fn class_enumeration_matches_brute_force_orbits() {
    let nerves = fixtures::nerves();
    let xms = fixtures::crossed_modules();
    for (nn, xn, expected) in
        [("Circ3", "J3", 6), ("Disc2", "J3", 2), ("Disc2", "V4", 1), ("Sphere", "J2", 2), ("Circ3", "D1Z4", 1), ("Circ3", "V4", 2)]
    {
        let (n, xm) = (&nerves[nn], &xms[xn]);
        let brute = orbit_count(n, xm);
        assert_eq!(brute, expected, "{xn} on {nn}");
        assert_eq!(enumerate_pi0(n, xm, 1 << 24).unwrap().classes.len(), brute, "{xn} on {nn}");
    }
}

#[test]
fn tensor_and_dual_agree_with_fibrewise_construction() {
    for (nn, _, xn, _, classes) in common::grid(&["J2", "J3", "J4", "V4", "D1Z4", "D1S3", "AdS3"], 200_000) {
        for a in &classes {
            let d = dual_cocycle(a);
            assert_eq!(common::fibrewise_dual(a), (d.g().to_vec(), d.h().to_vec()), "{xn} on {nn}");
            for b in &classes {
                let t = tensor_cocycle(a, b).unwrap();
                assert_eq!(common::fibrewise_tensor(a, b), (t.g().to_vec(), t.h().to_vec()), "{xn} on {nn}");
            }
        }
    }
}

#[test]
fn projective_plane_obstruction_has_no_mod_two_primitive() {
    let n = &fixtures::nerves()["RP26"];
    let xm = &fixtures::crossed_modules()["V4"];
    let tau = image_h1_generators(n, xm).unwrap().remove(0);
    let ob = lifting_obstruction(n, xm, &tau).unwrap();
    // G_1 = {0, 2} ≅ Z_2, so the cochain is already a GF(2) vector.
    let d1 = common::delta(n, 1);
    let b: Vec<i64> = ob.cochain.iter().map(|&x| x as i64).collect();
    assert!(!common::solvable_mod_p(&d1, &b, 2));
    assert!(!ob.class.is_zero);
}
