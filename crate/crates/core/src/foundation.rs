//! Curve-class lattice combinatorics and truncated Novikov series.
//!
//! A curve class is an integer coordinate vector in a fixed basis of the
//! geometry's curve lattice; a class is *effective* when all coordinates are
//! non-negative and not all zero. Degrees are taken against an ample vector
//! (per-coordinate weights, all >= 1). A Novikov series is a finite map from
//! effective classes to exact rationals, truncated at a degree cutoff.

use crate::rational::{divisors, gcd_u64, Rat};
use crate::{Error, Result};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Curve class in lattice coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveClass(pub Vec<i64>);

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl CurveClass {
    pub fn new(coords: Vec<i64>) -> Self {
        CurveClass(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// All coordinates non-negative and at least one positive.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    /// Degree against the ample vector.
    pub fn degree(&self, ample: &[i64]) -> i64 {
        self.0.iter().zip(ample).map(|(c, a)| c * a).sum()
    }

    pub fn add(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> CurveClass {
        CurveClass(self.0.iter().map(|c| c * k).collect())
    }

    fn coordinate_gcd(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &c| gcd_u64(g, c.unsigned_abs()))
    }
}

/// All `k >= 1` dividing every coordinate of `beta`, each paired with
/// `beta/k`, in ascending `k`.
pub fn divisors_of(beta: &CurveClass) -> Result<Vec<(u64, CurveClass)>> {
    if !beta.is_effective() {
        return Err(Error::NotEffective(beta.0.clone()));
    }
    let g = beta.coordinate_gcd();
    Ok(divisors(g)
        .into_iter()
        .map(|k| (k, CurveClass(beta.0.iter().map(|c| c / k as i64).collect())))
        .collect())
}

/// All ordered pairs of effective classes summing to `beta`.
///
/// Both `(b1, b2)` and `(b2, b1)` appear whenever `b1 != b2`; enumeration is
/// lexicographic in the first component.
pub fn decompositions(beta: &CurveClass) -> Result<Vec<(CurveClass, CurveClass)>> {
    if !beta.is_effective() {
        return Err(Error::NotEffective(beta.0.clone()));
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; beta.rank()];
    enumerate_boxes(&beta.0, 0, &mut current, &mut |b1| {
        let b1 = CurveClass(b1.to_vec());
        let b2 = beta.sub(&b1);
        if b1.is_effective() && b2.is_effective() {
            out.push((b1, b2));
        }
    });
    Ok(out)
}

/// Visit every integer vector `0 <= v <= bound` coordinatewise.
fn enumerate_boxes(bound: &[i64], i: usize, current: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == bound.len() {
        f(current);
        return;
    }
    for v in 0..=bound[i] {
        current[i] = v;
        enumerate_boxes(bound, i + 1, current, f);
    }
}

/// All effective classes of degree <= `max_degree`, ascending by (degree, lex).
pub fn enumerate_effective(rank: usize, ample: &[i64], max_degree: i64) -> Vec<CurveClass> {
    let mut out = Vec::new();
    let bound: Vec<i64> = ample.iter().map(|&a| max_degree / a.max(1)).collect();
    let mut current = vec![0i64; rank];
    enumerate_boxes(&bound, 0, &mut current, &mut |v| {
        let c = CurveClass(v.to_vec());
        if c.is_effective() && c.degree(ample) <= max_degree {
            out.push(c);
        }
    });
    out.sort_by_key(|c| (c.degree(ample), c.0.clone()));
    out
}

/// Truncated formal series over effective curve classes.
///
/// Invariants: keys are effective with degree <= `cutoff`; no zero
/// coefficients are stored. Immutable value semantics; all operations return
/// new series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    ample: Vec<i64>,
    cutoff: i64,
    terms: BTreeMap<CurveClass, Rat>,
}

impl NovikovSeries {
    pub fn zero(ample: Vec<i64>, cutoff: i64) -> Self {
        NovikovSeries {
            ample,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn ample(&self) -> &[i64] {
        &self.ample
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurveClass, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^beta` (zero when absent).
    pub fn coeff(&self, beta: &CurveClass) -> Rat {
        self.terms.get(beta).cloned().unwrap_or_else(Rat::zero)
    }

    /// Add `c * q^beta`, silently dropping terms beyond the cutoff.
    pub fn add_term(&mut self, beta: CurveClass, c: Rat) {
        if !beta.is_effective() || beta.degree(&self.ample) > self.cutoff || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(beta.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&beta);
        }
    }

    pub fn add(&self, other: &NovikovSeries) -> NovikovSeries {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.terms.retain(|b, _| b.degree(&out.ample) <= out.cutoff);
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> NovikovSeries {
        let mut out = NovikovSeries::zero(self.ample.clone(), self.cutoff);
        for (b, v) in &self.terms {
            out.add_term(b.clone(), v * c);
        }
        out
    }

    /// Product of two series (no constant terms, so the product again has no
    /// term below degree 2); truncates at the smaller cutoff.
    pub fn mul(&self, other: &NovikovSeries) -> NovikovSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = NovikovSeries::zero(self.ample.clone(), cutoff);
        for (b1, c1) in &self.terms {
            let d1 = b1.degree(&self.ample);
            if d1 > cutoff {
                continue;
            }
            for (b2, c2) in &other.terms {
                if d1 + b2.degree(&self.ample) > cutoff {
                    continue;
                }
                out.add_term(b1.add(b2), c1 * c2);
            }
        }
        out
    }
}

/// Truncation of `log(1 - q^beta) = -sum_{k>=1} q^{k beta} / k`.
///
/// A cutoff below `degree(beta)` yields the empty series.
pub fn geometric_log(ample: &[i64], beta: &CurveClass, cutoff: i64) -> Result<NovikovSeries> {
    if !beta.is_effective() {
        return Err(Error::NotEffective(beta.0.clone()));
    }
    let mut out = NovikovSeries::zero(ample.to_vec(), cutoff);
    let d = beta.degree(ample);
    let mut k = 1i64;
    while k * d <= cutoff {
        out.add_term(beta.scale(k), -Rat::new(1.into(), k.into()));
        k += 1;
    }
    Ok(out)
}
