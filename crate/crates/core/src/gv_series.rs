//! Multiple-cover conversions between Gromov-Witten series and
//! Gopakumar-Vafa tables.
//!
//! Genus 0: `GW_beta = sum_{k|beta} n_{0,beta/k} / k^2`.
//! Genus 1: `GW_beta = sum_{k|beta} sigma(k)/k * n_{1,beta/k}
//!   - (1/24) sum_{k|beta} n_{0,beta/k}(c2)/k
//!   + (1/24) sum_{k(b1+b2)=beta} m_{b1,b2}/k`,
//!
//! the log terms having been expanded as `log(1-q^b) = -sum q^{kb}/k`.
//! Both conversions invert exactly by induction on divisibility/degree.

use crate::foundation::{decompositions, divisors_of, CurveClass, NovikovSeries};
use crate::geometry::{GeometryData, Gv0Table, ScalarGvTable};
use crate::meeting::MeetingTable;
use crate::rational::{divisors, rat, Rat};
use crate::Result;
use num::Zero;

/// Divisor sum `sigma(d) = sum_{i|d} i` for `d >= 1`.
pub fn sigma(d: u64) -> u64 {
    assert!(d >= 1, "sigma requires d >= 1");
    divisors(d).into_iter().sum()
}

/// Genus-0 GW series of the S-basis insertion `S_a`, truncated at `cutoff`.
pub fn gw0_from_gv0(geom: &GeometryData, a: usize, cutoff: i64) -> Result<NovikovSeries> {
    let mut out = NovikovSeries::zero(geom.ample.clone(), cutoff);
    for beta in geom.effective_classes(cutoff) {
        let mut acc = Rat::zero();
        for (k, part) in divisors_of(&beta)? {
            acc += geom.n0_basis(&part, a)? / rat((k * k) as i64, 1);
        }
        out.add_term(beta, acc);
    }
    Ok(out)
}

/// Genus-0 GW series built from an arbitrary single-insertion table
/// (`table[beta]` plays the role of `n_{0,beta}`).
pub fn gw0_from_table(
    table: &dyn Fn(&CurveClass) -> Rat,
    ample: &[i64],
    rank: usize,
    cutoff: i64,
) -> NovikovSeries {
    let mut out = NovikovSeries::zero(ample.to_vec(), cutoff);
    for beta in crate::foundation::enumerate_effective(rank, ample, cutoff) {
        let mut acc = Rat::zero();
        for (k, part) in divisors_of(&beta).expect("enumerated classes are effective") {
            acc += table(&part) / rat((k * k) as i64, 1);
        }
        out.add_term(beta, acc);
    }
    out
}

/// Invert a genus-0 GW series to a single-insertion GV table.
pub fn gv0_from_gw0(series: &NovikovSeries) -> ScalarGvTable {
    // induction on divisibility: beta/k has strictly smaller degree. Every
    // effective class below the cutoff is visited — a vanishing series
    // coefficient can still carry a nonzero invariant.
    let mut table = ScalarGvTable {
        entries: Default::default(),
        degree_bound: series.cutoff(),
    };
    let classes = crate::foundation::enumerate_effective(
        series.ample().len(),
        series.ample(),
        series.cutoff(),
    );
    for beta in classes {
        let mut n = series.coeff(&beta);
        for (k, part) in divisors_of(&beta).expect("series keys are effective") {
            if k > 1 {
                n -= table.entries.get(&part).cloned().unwrap_or_else(Rat::zero)
                    / rat((k * k) as i64, 1);
            }
        }
        if !n.is_zero() {
            table.entries.insert(beta, n);
        }
    }
    table
}

/// Full genus-0 inversion over the S-basis, one column per basis element.
pub fn gv0_table_from_gw0(series_per_basis: &[NovikovSeries]) -> Gv0Table {
    let mut out = Gv0Table {
        entries: Default::default(),
        degree_bound: series_per_basis
            .iter()
            .map(|s| s.cutoff())
            .min()
            .unwrap_or(0),
    };
    let columns: Vec<ScalarGvTable> = series_per_basis.iter().map(gv0_from_gw0).collect();
    let mut keys: Vec<CurveClass> = Vec::new();
    for col in &columns {
        for b in col.entries.keys() {
            if !keys.contains(b) {
                keys.push(b.clone());
            }
        }
    }
    for beta in keys {
        let row: Vec<Rat> = columns
            .iter()
            .map(|c| c.entries.get(&beta).cloned().unwrap_or_else(Rat::zero))
            .collect();
        out.entries.insert(beta, row);
    }
    out
}

/// Genus-1 GW series from the geometry's GV tables and a meeting table.
pub fn gw1_from_gv1(
    geom: &GeometryData,
    meeting: &MeetingTable,
    cutoff: i64,
) -> Result<NovikovSeries> {
    let mut out = NovikovSeries::zero(geom.ample.clone(), cutoff);
    for beta in geom.effective_classes(cutoff) {
        out.add_term(
            beta.clone(),
            gw1_coefficient(geom, meeting, &beta, &|b| geom.n1(b))?,
        );
    }
    Ok(out)
}

/// One genus-1 GW coefficient; `n1` supplies the genus-1 table being
/// converted (so the inversion can reuse this with a partial table).
fn gw1_coefficient(
    geom: &GeometryData,
    meeting: &MeetingTable,
    beta: &CurveClass,
    n1: &dyn Fn(&CurveClass) -> Result<Rat>,
) -> Result<Rat> {
    let mut acc = Rat::zero();
    let k24 = rat(1, 24);
    for (k, part) in divisors_of(beta)? {
        acc += rat(sigma(k) as i64, k as i64) * n1(&part)?;
        acc -= &k24 * geom.n0_c2(&part)? / rat(k as i64, 1);
        for (b1, b2) in decompositions(&part)? {
            acc += &k24 * meeting.get(&b1, &b2)? / rat(k as i64, 1);
        }
    }
    Ok(acc)
}

/// Invert a genus-1 GW series back to the genus-1 GV table.
pub fn gv1_from_gw1(
    geom: &GeometryData,
    series: &NovikovSeries,
    meeting: &MeetingTable,
) -> Result<ScalarGvTable> {
    let mut table = ScalarGvTable {
        entries: Default::default(),
        degree_bound: series.cutoff(),
    };
    for beta in geom.effective_classes(series.cutoff()) {
        // everything except the k=1 genus-1 term is already known
        let partial = {
            let entries = table.entries.clone();
            move |b: &CurveClass| -> Result<Rat> {
                Ok(entries.get(b).cloned().unwrap_or_else(Rat::zero))
            }
        };
        let rest = gw1_coefficient(geom, meeting, &beta, &partial)?;
        let n = series.coeff(&beta) - rest;
        if !n.is_zero() {
            table.entries.insert(beta, n);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::load_geometry;
    use crate::meeting::meeting_table;
    use crate::rational::rat_int;

    fn fixture(name: &str) -> String {
        format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn c(v: &[i64]) -> CurveClass {
        CurveClass(v.to_vec())
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1), 1);
        assert_eq!(sigma(6), 12);
        assert_eq!(sigma(12), 28);
    }

    #[test]
    fn gw0_local_p1p1_point_series() {
        let geom = load_geometry(fixture("local_p1p1.json")).unwrap();
        let s = gw0_from_gv0(&geom, 1, 4).unwrap();
        // (2,2): n(2,2) + n(1,1)/4 = 2 + 1/4 = 9/4 = C(4,2)^2/16
        assert_eq!(s.coeff(&c(&[2, 2])), rat(9, 4));
        // primitive class: the GV value itself
        assert_eq!(s.coeff(&c(&[2, 1])), rat_int(1));
    }

    #[test]
    fn gw0_zero_table_gives_zero_series() {
        let s = gw0_from_table(&|_| Rat::zero(), &[1, 1], 2, 5);
        assert!(s.is_zero());
    }

    #[test]
    fn gv0_inversion_of_closed_form() {
        // GW_{0,(d,0)}([pt]) = 1/d^2 inverts to n(1,0) = 1 and 0 above
        let s = gw0_from_table(
            &|b| {
                if b.0 == [1, 0] {
                    rat_int(1)
                } else {
                    Rat::zero()
                }
            },
            &[1, 1],
            2,
            6,
        );
        let inv = gv0_from_gw0(&s);
        assert_eq!(inv.entries.get(&c(&[1, 0])), Some(&rat_int(1)));
        assert_eq!(inv.entries.get(&c(&[2, 0])), None);
        assert_eq!(inv.entries.get(&c(&[3, 0])), None);
    }

    #[test]
    fn gv0_from_closed_form_point_series() {
        // the full localization closed form reproduces the fixture table
        let geom = load_geometry(fixture("local_p1p1.json")).unwrap();
        let closed = |beta: &CurveClass| {
            let (d1, d2) = (beta.0[0] as u64, beta.0[1] as u64);
            crate::rational::binomial(d1 + d2, d1).pow(2) / rat_int(((d1 + d2) * (d1 + d2)) as i64)
        };
        let mut series = NovikovSeries::zero(vec![1, 1], 6);
        for beta in geom.effective_classes(6) {
            series.add_term(beta.clone(), closed(&beta));
        }
        let inv = gv0_from_gw0(&series);
        assert_eq!(inv.entries.get(&c(&[1, 1])), Some(&rat_int(1)));
        assert_eq!(inv.entries.get(&c(&[2, 2])), Some(&rat_int(2)));
        assert_eq!(inv.entries.get(&c(&[3, 3])), Some(&rat_int(11)));
        for (beta, n) in &inv.entries {
            assert_eq!(Some(n), geom.gv0.entries.get(beta).map(|r| &r[1]));
        }
    }

    #[test]
    fn gw1_elliptic_fiber_coefficient() {
        let geom = load_geometry(fixture("elliptic_p3.json")).unwrap();
        let meeting = meeting_table(&geom, 4).unwrap();
        let s = gw1_from_gv1(&geom, &meeting, 2).unwrap();
        // beta = f: n1(f) - n0(f, c2)/24 = -20 - 46080/24 = -1940
        assert_eq!(s.coeff(&c(&[1])), rat_int(-1940));
    }

    #[test]
    fn gw1_single_primitive_class_table() {
        // with only n1 = 1 at a primitive class and everything else zero,
        // the series is sigma(d)/d at each multiple
        let mut geom = load_geometry(fixture("local_p1p1.json")).unwrap();
        for row in geom.gv0.entries.values_mut() {
            for v in row.iter_mut() {
                *v = Rat::zero();
            }
        }
        for v in geom.gv1.entries.values_mut() {
            *v = Rat::zero();
        }
        geom.gv1.entries.insert(c(&[1, 1]), rat_int(1));
        let meeting = meeting_table(&geom, 4).unwrap();
        let s = gw1_from_gv1(&geom, &meeting, 4).unwrap();
        assert_eq!(s.coeff(&c(&[1, 1])), rat_int(1));
        assert_eq!(s.coeff(&c(&[2, 2])), rat(3, 2));
        assert_eq!(s.coeff(&c(&[2, 1])), Rat::zero());
    }

    #[test]
    fn full_table_inversion_by_columns() {
        let geom = load_geometry(fixture("local_p3.json")).unwrap();
        let series: Vec<_> = (0..geom.h4_basis.len())
            .map(|a| gw0_from_gv0(&geom, a, 3).unwrap())
            .collect();
        let table = gv0_table_from_gw0(&series);
        assert_eq!(table.degree_bound, 3);
        for beta in geom.effective_classes(3) {
            assert_eq!(table.entries.get(&beta), geom.gv0.entries.get(&beta));
        }
    }

    #[test]
    fn genus1_conversion_needs_full_meeting_table() {
        let geom = load_geometry(fixture("local_p1p1.json")).unwrap();
        let meeting = meeting_table(&geom, 2).unwrap();
        let err = gw1_from_gv1(&geom, &meeting, 4);
        assert!(matches!(
            err,
            Err(crate::Error::IncompleteMeetingTable(_, _))
        ));
    }

    #[test]
    fn genus1_round_trips_on_fixtures() {
        for name in [
            "elliptic_p3.json",
            "local_p2.json",
            "local_p1p1.json",
            "local_p3.json",
        ] {
            let geom = load_geometry(fixture(name)).unwrap();
            let cutoff = geom.gv1_degree_bound;
            let meeting = meeting_table(&geom, cutoff).unwrap();
            let s = gw1_from_gv1(&geom, &meeting, cutoff).unwrap();
            let back = gv1_from_gw1(&geom, &s, &meeting).unwrap();
            for beta in geom.effective_classes(cutoff) {
                assert_eq!(
                    back.entries.get(&beta).cloned().unwrap_or_else(Rat::zero),
                    geom.n1(&beta).unwrap(),
                    "genus-1 round trip differs at {beta:?} in {name}"
                );
            }
        }
    }

    #[test]
    fn genus0_round_trips_on_fixtures() {
        for name in [
            "elliptic_p3.json",
            "local_p2.json",
            "local_p1p1.json",
            "local_p3.json",
        ] {
            let geom = load_geometry(fixture(name)).unwrap();
            let cutoff = geom.degree_bound;
            for a in 0..geom.h4_basis.len() {
                let s = gw0_from_gv0(&geom, a, cutoff).unwrap();
                let inv = gv0_from_gw0(&s);
                for beta in geom.effective_classes(cutoff) {
                    assert_eq!(
                        inv.entries.get(&beta).cloned().unwrap_or_else(Rat::zero),
                        geom.n0_basis(&beta, a).unwrap(),
                        "genus-0 round trip differs at {beta:?} in {name}"
                    );
                }
            }
        }
    }

    #[test]
    fn gw_series_linear_in_table() {
        let geom = load_geometry(fixture("local_p1p1.json")).unwrap();
        let s1 = gw0_from_gv0(&geom, 1, 5).unwrap();
        let mut scaled = load_geometry(fixture("local_p1p1.json")).unwrap();
        for row in scaled.gv0.entries.values_mut() {
            for v in row.iter_mut() {
                *v *= rat_int(7);
            }
        }
        let s7 = gw0_from_gv0(&scaled, 1, 5).unwrap();
        assert_eq!(s7, s1.scale(&rat_int(7)));
    }
}
