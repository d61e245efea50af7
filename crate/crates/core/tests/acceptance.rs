//! Acceptance suite: every exit criterion of the project, one test per
//! criterion, each printing a PASS line when it holds. All comparisons are
//! exact rational equalities — there is no tolerance anywhere.

use gv4::chow::{KClass, RingPresentation};
use gv4::conjecture::{rhs_genus1, rhs_is_linear};
use gv4::constraints::{
    binomial_recursion_check, binomial_restricted_variant, constraint_gv_form, constraint_gw_form,
    constraint_resummed,
};
use gv4::dt4::{
    elliptic_tau1, local_p1p1_tau0_point, local_p1p1_tau1, local_p2_tau0_point, local_p2_tau1,
    LocalP3Pipeline,
};
use gv4::foundation::{CurveClass, NovikovSeries};
use gv4::geometry::{load_geometry, GeometryData};
use gv4::gv_series::{gv0_from_gw0, gv1_from_gw1, gw0_from_gv0, gw0_from_table, gw1_from_gv1};
use gv4::heuristic::{blowup_descendent_paths, elliptic_multiple_contribution, BlowupFamilyData};
use gv4::meeting::meeting_table;
use gv4::rational::{binomial, binomial_poly, rat, rat_int, Rat};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn c(v: &[i64]) -> CurveClass {
    CurveClass(v.to_vec())
}

const ALPHA_SAMPLES: [(i64, i64, i64, i64); 4] =
    [(1, 1, 0, 1), (1, 1, 1, 1), (2, 1, -3, 1), (1, 2, 5, 3)];

fn alpha_samples() -> Vec<[Rat; 2]> {
    ALPHA_SAMPLES
        .iter()
        .map(|&(p1, q1, p2, q2)| [rat(p1, q1), rat(p2, q2)])
        .collect()
}

#[test]
fn criterion_1_meeting_invariants() {
    let elliptic = load_geometry(fixture("elliptic_p3.json")).unwrap();
    let table = meeting_table(&elliptic, 10).unwrap();
    for r1 in 1..=5i64 {
        for r2 in 1..=5i64 {
            assert_eq!(table.get(&c(&[r1]), &c(&[r2])).unwrap(), rat_int(46080));
        }
    }

    let p3 = load_geometry(fixture("local_p3.json")).unwrap();
    let table = meeting_table(&p3, 4).unwrap();
    assert_eq!(table.get(&c(&[1]), &c(&[1])).unwrap(), rat_int(-1400));
    assert_eq!(table.get(&c(&[1]), &c(&[2])).unwrap(), rat_int(-67000));

    let p1p1 = load_geometry(fixture("local_p1p1.json")).unwrap();
    let table = meeting_table(&p1p1, 6).unwrap();
    assert_eq!(table.get(&c(&[1, 1]), &c(&[1, 1])).unwrap(), rat_int(-4));
    assert_eq!(table.get(&c(&[0, 1]), &c(&[2, 1])).unwrap(), rat_int(2));
    assert_eq!(table.get(&c(&[0, 2]), &c(&[2, 0])).unwrap(), rat_int(0));
    assert_eq!(table.get(&c(&[1, 0]), &c(&[1, 2])).unwrap(), rat_int(2));

    let p2 = load_geometry(fixture("local_p2.json")).unwrap();
    let table = meeting_table(&p2, 4).unwrap();
    assert_eq!(table.get(&c(&[1]), &c(&[1])).unwrap(), rat_int(6));
    assert_eq!(table.get(&c(&[1]), &c(&[2])).unwrap(), rat_int(4));

    println!("criterion 1 (meeting invariants): PASS");
}

#[test]
fn criterion_2_conjecture_rhs() {
    let elliptic = load_geometry(fixture("elliptic_p3.json")).unwrap();
    let meeting = meeting_table(&elliptic, 10).unwrap();
    for r in 1..=5i64 {
        for alpha in alpha_samples() {
            let rhs = rhs_genus1(&elliptic, &meeting, &c(&[r]), &alpha).unwrap();
            let expected = rat_int(20 - 1920 * r * r) * &alpha[0] + rat_int(960) * &alpha[1];
            assert_eq!(rhs, expected, "elliptic r = {r}");
        }
    }

    let p3 = load_geometry(fixture("local_p3.json")).unwrap();
    let meeting = meeting_table(&p3, 4).unwrap();
    assert_eq!(
        rhs_genus1(&p3, &meeting, &c(&[2]), &[Rat::one()]).unwrap(),
        rat_int(-30)
    );
    assert_eq!(
        rhs_genus1(&p3, &meeting, &c(&[3]), &[Rat::one()]).unwrap(),
        rat_int(-22610)
    );

    let p2 = load_geometry(fixture("local_p2.json")).unwrap();
    let meeting = meeting_table(&p2, 4).unwrap();
    assert_eq!(
        rhs_genus1(&p2, &meeting, &c(&[3]), &[Rat::one()]).unwrap(),
        rat(3, 2)
    );

    let p1p1 = load_geometry(fixture("local_p1p1.json")).unwrap();
    let meeting = meeting_table(&p1p1, 4).unwrap();
    for (a, b) in [(1, 1), (1, 0), (0, 1), (2, 3)] {
        let alpha = [rat_int(a), rat_int(b)];
        let rhs = rhs_genus1(&p1p1, &meeting, &c(&[2, 2]), &alpha).unwrap();
        assert_eq!(rhs, rat_int(-2 * (a + b)), "alpha = ({a},{b})");
    }

    println!("criterion 2 (conjecture right-hand side): PASS");
}

#[test]
fn criterion_3_dt4_pipelines() {
    // local_p2 d = 3
    let r = local_p2_tau1(&Rat::one()).unwrap();
    assert_eq!(r.value, rat(3, 2));

    // local_p1p1 (2,2)
    for (a, b) in [(1, 1), (1, 0), (0, 1), (2, 3)] {
        let r = local_p1p1_tau1(&rat_int(a), &rat_int(b)).unwrap();
        assert_eq!(r.value, rat_int(-2 * (a + b)));
    }

    // local_p3 d = 2: unsigned 30, signed -30
    let p3 = LocalP3Pipeline::new().unwrap();
    let r = p3.tau1(&Rat::one()).unwrap();
    assert_eq!(r.unsigned_value, rat_int(30));
    assert_eq!(r.value, rat_int(-30));

    // elliptic pairing value equals the conjecture RHS closed form
    let elliptic = load_geometry(fixture("elliptic_p3.json")).unwrap();
    let meeting = meeting_table(&elliptic, 10).unwrap();
    for r in 1..=5i64 {
        for alpha in alpha_samples() {
            let pipeline = elliptic_tau1(&elliptic, r, &alpha).unwrap();
            let rhs = rhs_genus1(&elliptic, &meeting, &c(&[r]), &alpha).unwrap();
            assert_eq!(pipeline.value, rhs, "elliptic r = {r}");
        }
    }

    println!("criterion 3 (descendent pipelines match the formula): PASS");
}

#[test]
fn criterion_4_intersection_engine_oracles() {
    // bundle pairings and virtual-class coefficients
    let p3 = LocalP3Pipeline::new().unwrap();
    assert_eq!(
        p3.pairings(),
        [rat_int(-4), rat_int(6), rat_int(-4), rat_int(1)]
    );
    assert_eq!(
        p3.virtual_class_coefficients(),
        [rat_int(120), rat_int(840), rat_int(3080), rat_int(7700)]
    );

    // Euler characteristics chi(P^n, O(k)) for n <= 4, -4 <= k <= 6
    for n in 1..=4u32 {
        let ring = RingPresentation::product(&[("H", n)]);
        for k in -4..=6i64 {
            let pushed = ring
                .grr_pushforward(&ring.ch(&KClass::line(&[k])), &[0])
                .unwrap();
            assert_eq!(
                pushed.coeff(&vec![0]),
                binomial_poly(k, n as u64),
                "chi(P^{n}, O({k}))"
            );
        }
    }

    // Newton round trip on 100 random split bundles
    let ring = RingPresentation::product(&[("H", 6)]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
    for _ in 0..100 {
        let parts = rng.gen_range(1..=6usize);
        let degs: Vec<i64> = (0..parts).map(|_| rng.gen_range(-4..=4)).collect();
        let mut k = KClass::zero();
        let mut expected = ring.one();
        for &a in &degs {
            k.add_line(&[a], 1);
            expected = ring.mul(
                &expected,
                &ring.one().add(&ring.generator(0).scale(&rat_int(a))),
            );
        }
        let total = ring.chern_from_ch(parts as i64, &ring.ch(&k)).unwrap();
        assert_eq!(total, expected);
    }

    println!("criterion 4 (intersection-engine oracles): PASS");
}

#[test]
fn criterion_5_constraint_identities() {
    let p1p1 = load_geometry(fixture("local_p1p1.json")).unwrap();
    let meeting = meeting_table(&p1p1, 6).unwrap();
    for beta in p1p1.effective_classes(6) {
        // alpha spanning the orthogonal line of beta, plus a scaled copy
        let base = [rat_int(beta.0[1]), rat_int(-beta.0[0])];
        let scaled = [&base[0] * rat_int(3), &base[1] * rat_int(3)];
        for alpha in [base, scaled] {
            let (l1, r1) = constraint_gv_form(&p1p1, &meeting, &alpha, &beta).unwrap();
            let (l2, r2) = constraint_resummed(&p1p1, &alpha, &beta).unwrap();
            let (l3, r3) = constraint_gw_form(&p1p1, &alpha, &beta).unwrap();
            assert_eq!(l1, r1, "gv form at {beta:?}");
            assert_eq!(l2, r2, "resummed form at {beta:?}");
            assert_eq!(l3, r3, "gw form at {beta:?}");
            assert_eq!(l1, l2, "gv and resummed lhs at {beta:?}");
        }
    }

    for d1 in 1..=10 {
        for d2 in 1..=10 {
            let (lhs, rhs) = binomial_recursion_check(d1, d2).unwrap();
            assert_eq!(lhs, rhs, "binomial recursion at ({d1},{d2})");
        }
    }

    // the strictly-positive restricted variant fails at (2,1), documented
    // as a negative control
    let (lhs, rhs) = binomial_restricted_variant(2, 1).unwrap();
    assert_ne!(lhs, rhs);
    assert_eq!(lhs, rat_int(4));
    assert_eq!(rhs, Rat::zero());

    println!("criterion 5 (constraint identities; restricted variant fails at (2,1) as documented): PASS");
}

#[test]
fn criterion_6_series_inversions() {
    // fixtures
    for name in [
        "elliptic_p3.json",
        "local_p2.json",
        "local_p1p1.json",
        "local_p3.json",
    ] {
        let geom = load_geometry(fixture(name)).unwrap();
        let cutoff = geom.degree_bound.min(8);
        for a in 0..geom.h4_basis.len() {
            let series = gw0_from_gv0(&geom, a, cutoff).unwrap();
            let back = gv0_from_gw0(&series);
            for beta in geom.effective_classes(cutoff) {
                assert_eq!(
                    back.entries.get(&beta).cloned().unwrap_or_else(Rat::zero),
                    geom.n0_basis(&beta, a).unwrap(),
                    "{name} basis {a} at {beta:?}"
                );
            }
        }
        let g1cut = geom.gv1_degree_bound.min(8);
        let meeting = meeting_table(&geom, g1cut).unwrap();
        let series = gw1_from_gv1(&geom, &meeting, g1cut).unwrap();
        let back = gv1_from_gw1(&geom, &series, &meeting).unwrap();
        for beta in geom.effective_classes(g1cut) {
            assert_eq!(
                back.entries.get(&beta).cloned().unwrap_or_else(Rat::zero),
                geom.n1(&beta).unwrap(),
                "{name} genus 1 at {beta:?}"
            );
        }
    }

    // 100 random genus-0 tables to degree 8
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(606);
    for _ in 0..100 {
        let mut table = BTreeMap::new();
        for beta in gv4::foundation::enumerate_effective(2, &[1, 1], 8) {
            let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            if !v.is_zero() {
                table.insert(beta, v);
            }
        }
        let lookup = {
            let table = table.clone();
            move |b: &CurveClass| table.get(b).cloned().unwrap_or_else(Rat::zero)
        };
        let series = gw0_from_table(&lookup, &[1, 1], 2, 8);
        let back = gv0_from_gw0(&series);
        for (beta, v) in &table {
            assert_eq!(back.entries.get(beta).unwrap(), v);
        }
    }

    // 100 random genus-1 tables to degree 8 on a synthetic rank-2 geometry
    let template = load_geometry(fixture("local_p1p1.json")).unwrap();
    for trial in 0..100 {
        let geom = randomized_geometry(&template, 8, &mut rng);
        let meeting = meeting_table(&geom, 8).unwrap();
        let series = gw1_from_gv1(&geom, &meeting, 8).unwrap();
        let back = gv1_from_gw1(&geom, &series, &meeting).unwrap();
        for beta in geom.effective_classes(8) {
            assert_eq!(
                back.entries.get(&beta).cloned().unwrap_or_else(Rat::zero),
                geom.n1(&beta).unwrap(),
                "random genus-1 trial {trial} at {beta:?}"
            );
        }
    }

    // the pinned inversion: n_{0,(2,2)}([pt]) = 2 from the closed form
    let closed = |beta: &CurveClass| {
        let (d1, d2) = (beta.0[0] as u64, beta.0[1] as u64);
        binomial(d1 + d2, d1).pow(2) / rat_int(((d1 + d2) * (d1 + d2)) as i64)
    };
    let mut series = NovikovSeries::zero(vec![1, 1], 4);
    for beta in gv4::foundation::enumerate_effective(2, &[1, 1], 4) {
        series.add_term(beta.clone(), closed(&beta));
    }
    let inv = gv0_from_gw0(&series);
    assert_eq!(inv.entries.get(&c(&[2, 2])), Some(&rat_int(2)));

    println!("criterion 6 (series inversions): PASS");
}

/// Clone a geometry with fresh random GV tables up to `bound`.
fn randomized_geometry(
    template: &GeometryData,
    bound: i64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> GeometryData {
    let mut geom = template.clone();
    geom.degree_bound = bound;
    geom.gv1_degree_bound = bound;
    geom.gv0.degree_bound = bound;
    geom.gv1.degree_bound = bound;
    geom.gv0.entries.clear();
    geom.gv1.entries.clear();
    for beta in geom.effective_classes(bound) {
        let row: Vec<Rat> = (0..geom.h4_basis.len())
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
            .collect();
        geom.gv0.entries.insert(beta.clone(), row);
        geom.gv1
            .entries
            .insert(beta, rat(rng.gen_range(-9..=9), rng.gen_range(1..=3)));
    }
    geom
}

#[test]
fn criterion_7_genus0_regression() {
    assert_eq!(local_p2_tau0_point().unwrap(), rat_int(-1));
    assert_eq!(local_p1p1_tau0_point().unwrap(), rat_int(2));
    println!("criterion 7 (primary-insertion regression): PASS");
}

#[test]
fn criterion_8_linearity() {
    for (name, beta) in [
        ("elliptic_p3.json", vec![3]),
        ("local_p2.json", vec![3]),
        ("local_p1p1.json", vec![2, 2]),
        ("local_p3.json", vec![3]),
    ] {
        let geom = load_geometry(fixture(name)).unwrap();
        let meeting = meeting_table(&geom, geom.gv1_degree_bound).unwrap();
        let report = rhs_is_linear(&geom, &meeting, &CurveClass(beta.clone()), 20, 1234).unwrap();
        assert!(report.passed, "linearity fails on {name}");
        assert_eq!(report.trials, 20);
    }

    // negative control: a corrupted meeting table breaks linearity
    let geom = load_geometry(fixture("local_p1p1.json")).unwrap();
    let mut meeting = meeting_table(&geom, 4).unwrap();
    meeting.corrupt(&c(&[1, 0]), &c(&[1, 2]), Rat::one());
    let report = rhs_is_linear(&geom, &meeting, &c(&[2, 2]), 20, 1234).unwrap();
    assert!(!report.passed);

    println!("criterion 8 (linearity with negative control): PASS");
}

#[test]
fn criterion_9_heuristic_harness() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(909);
    let sample =
        |rng: &mut rand_chacha::ChaCha8Rng| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
    for _ in 0..20 {
        let k = rng.gen_range(0..4usize);
        let mut alpha_beta = sample(&mut rng);
        while alpha_beta.is_zero() {
            alpha_beta = sample(&mut rng);
        }
        let data = BlowupFamilyData {
            k,
            psi_sq: sample(&mut rng),
            alpha_beta,
            alpha_beta1: (0..k).map(|_| sample(&mut rng)).collect(),
        };
        let a = sample(&mut rng);
        let (solved, closed) = blowup_descendent_paths(&data, &a).unwrap();
        assert_eq!(solved, closed);
    }

    // elliptic contributions assemble the multiple-cover term of the formula
    let geom = load_geometry(fixture("elliptic_p3.json")).unwrap();
    let meeting = meeting_table(&geom, 8).unwrap();
    for r in [1i64, 2, 3, 4] {
        let beta = c(&[r]);
        let alpha = [rat_int(2), rat(1, 3)];
        let t = geom.alpha_dot_beta(&alpha, &beta);
        let mut covers = Rat::zero();
        for (k, part) in gv4::foundation::divisors_of(&beta).unwrap() {
            covers += elliptic_multiple_contribution(k, &t).unwrap() * geom.n1(&part).unwrap();
        }
        let families =
            gv4::heuristic::rational_family_contribution(&geom, &meeting, &beta, &alpha).unwrap();
        let full = rhs_genus1(&geom, &meeting, &beta, &alpha).unwrap();
        assert_eq!(full, families - covers, "assembly at r = {r}");
    }

    println!("criterion 9 (heuristic harness): PASS");
}
