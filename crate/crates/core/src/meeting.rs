//! Meeting invariants.
//!
//! `m_{b1,b2}` is the virtual count of incidences between rational curves in
//! classes `b1` and `b2`. The table is determined by four rules:
//! symmetry; vanishing when either argument is non-effective; for `b1 != b2`
//! the recursion
//! `m_{b1,b2} = sum n_{0,b1}(S_a) g^{ab} n_{0,b2}(S_b) + m_{b1,b2-b1} + m_{b1-b2,b2}`;
//! and on the diagonal
//! `m_{b,b} = n_{0,b}(c2) + sum n_{0,b}(S_a) g^{ab} n_{0,b}(S_b) - sum_{b'+b''=b} m_{b',b''}`
//! with an ordered decomposition sum. Evaluation is memoized bottom-up by
//! total degree, which strictly decreases along every recursion step.

use crate::foundation::{decompositions, CurveClass};
use crate::geometry::GeometryData;
use crate::rational::Rat;
use crate::{Error, Result};
use num::Zero;
use serde::Serialize;
use std::collections::BTreeMap;

/// Symmetric table of meeting invariants over unordered pairs.
#[derive(Clone, Debug)]
pub struct MeetingTable {
    entries: BTreeMap<(CurveClass, CurveClass), Rat>,
    pub degree_bound: i64,
}

impl MeetingTable {
    /// `m_{b1,b2}`; zero off the effective cone, error when an effective pair
    /// exceeds the table's degree bound.
    pub fn get(&self, b1: &CurveClass, b2: &CurveClass) -> Result<Rat> {
        if !b1.is_effective() || !b2.is_effective() {
            return Ok(Rat::zero());
        }
        let key = canonical(b1, b2);
        match self.entries.get(&key) {
            Some(v) => Ok(v.clone()),
            None => Err(Error::IncompleteMeetingTable(b1.0.clone(), b2.0.clone())),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(CurveClass, CurveClass), &Rat)> {
        self.entries.iter()
    }

    /// Mutate one entry; only used to build corrupted tables as negative
    /// controls in tests and reports.
    pub fn corrupt(&mut self, b1: &CurveClass, b2: &CurveClass, delta: Rat) {
        let key = canonical(b1, b2);
        if let Some(v) = self.entries.get_mut(&key) {
            *v += delta;
        }
    }

    /// JSON rendering of the table (pairs with exact rational values).
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            beta1: Vec<i64>,
            beta2: Vec<i64>,
            value: String,
        }
        let rows: Vec<Entry> = self
            .entries
            .iter()
            .map(|((b1, b2), v)| Entry {
                beta1: b1.0.clone(),
                beta2: b2.0.clone(),
                value: v.to_string(),
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("meeting table serialization cannot fail")
    }
}

fn canonical(b1: &CurveClass, b2: &CurveClass) -> (CurveClass, CurveClass) {
    if b1 <= b2 {
        (b1.clone(), b2.clone())
    } else {
        (b2.clone(), b1.clone())
    }
}

/// Compute all meeting invariants for effective pairs with
/// `deg(b1) + deg(b2) <= degree_bound`.
pub fn meeting_table(geom: &GeometryData, degree_bound: i64) -> Result<MeetingTable> {
    if degree_bound - 1 > geom.degree_bound {
        return Err(Error::OutsideTable {
            beta: vec![],
            degree: degree_bound - 1,
            bound: geom.degree_bound,
        });
    }
    let mut table = MeetingTable {
        entries: BTreeMap::new(),
        degree_bound,
    };
    let classes = geom.effective_classes(degree_bound - 1);
    // pairs grouped by total degree so every recursive reference is computed
    let mut pairs: Vec<(CurveClass, CurveClass)> = Vec::new();
    for b1 in &classes {
        for b2 in &classes {
            if b1 <= b2 && geom.degree(b1) + geom.degree(b2) <= degree_bound {
                pairs.push((b1.clone(), b2.clone()));
            }
        }
    }
    pairs.sort_by_key(|(b1, b2)| geom.degree(b1) + geom.degree(b2));

    for (b1, b2) in pairs {
        let value = if b1 == b2 {
            // diagonal rule, ordered decomposition sum
            let mut v = geom.n0_c2(&b1)? + geom.diagonal_pairing(&b1, &b2)?;
            for (c1, c2) in decompositions(&b1)? {
                v -= lookup(&table, &c1, &c2)?;
            }
            v
        } else {
            let d1 = b2.sub(&b1);
            let d2 = b1.sub(&b2);
            geom.diagonal_pairing(&b1, &b2)? + lookup(&table, &b1, &d1)? + lookup(&table, &d2, &b2)?
        };
        table.entries.insert(canonical(&b1, &b2), value);
    }
    Ok(table)
}

/// In-recursion lookup: rule (ii) zeros plus a hard error on an uncomputed
/// in-range entry, which the degree ordering makes unreachable.
fn lookup(table: &MeetingTable, b1: &CurveClass, b2: &CurveClass) -> Result<Rat> {
    if !b1.is_effective() || !b2.is_effective() {
        return Ok(Rat::zero());
    }
    table
        .entries
        .get(&canonical(b1, b2))
        .cloned()
        .ok_or_else(|| {
            Error::Internal(format!(
                "meeting recursion referenced uncomputed entry {:?},{:?}",
                b1.0, b2.0
            ))
        })
}
