//! The pole-cancellation constraint on genus-0 GV type invariants, in its
//! three equivalent forms, plus the binomial-coefficient recursion it implies
//! on the bidegree-graded local geometry.
//!
//! For any divisor `alpha` with `alpha . beta = 0`:
//!   GV form:       `n_{0,beta}(alpha^2) = (1/2) sum_{b1+b2=beta} (a.b1)(a.b2) m_{b1,b2}`
//!   resummed form: the same with the meeting recursion unrolled over coprime
//!                  cover degrees `(k1, k2)`,
//!   GW form:       the same statement for Gromov-Witten series coefficients.
//! Each operation returns `(lhs, rhs)`; equality is the content of the
//! identity, so callers (tests, the CLI suite) compare the two sides.

use crate::foundation::{decompositions, CurveClass};
use crate::geometry::GeometryData;
use crate::gv_series::gw0_from_gv0;
use crate::meeting::MeetingTable;
use crate::rational::{binomial, gcd_u64, rat, rat_int, Rat};
use crate::{Error, Result};
use num::Zero;

fn require_orthogonal(geom: &GeometryData, alpha: &[Rat], beta: &CurveClass) -> Result<()> {
    let t = geom.alpha_dot_beta(alpha, beta);
    if !t.is_zero() {
        return Err(Error::AlphaBetaNonzero(Box::new(t)));
    }
    Ok(())
}

/// Constraint in terms of GV invariants and meeting numbers (ordered
/// decomposition sum, halved).
pub fn constraint_gv_form(
    geom: &GeometryData,
    meeting: &MeetingTable,
    alpha: &[Rat],
    beta: &CurveClass,
) -> Result<(Rat, Rat)> {
    require_orthogonal(geom, alpha, beta)?;
    let lhs = geom.n0(beta, &geom.divisor_square(alpha))?;
    let mut rhs = Rat::zero();
    for (b1, b2) in decompositions(beta)? {
        rhs += geom.alpha_dot_beta(alpha, &b1)
            * geom.alpha_dot_beta(alpha, &b2)
            * meeting.get(&b1, &b2)?;
    }
    Ok((lhs, rhs / rat_int(2)))
}

/// Constraint with the meeting recursion resummed over coprime pairs
/// `(k1, k2)` of cover degrees.
pub fn constraint_resummed(
    geom: &GeometryData,
    alpha: &[Rat],
    beta: &CurveClass,
) -> Result<(Rat, Rat)> {
    require_orthogonal(geom, alpha, beta)?;
    let lhs = geom.n0(beta, &geom.divisor_square(alpha))?;
    // k1 | b1 <= beta componentwise, so both cover degrees are bounded by the
    // largest coordinate of beta
    let kmax = beta.0.iter().copied().max().unwrap_or(0).max(1) as u64;
    let mut rhs = Rat::zero();
    for k1 in 1..=kmax {
        for k2 in 1..=kmax {
            if gcd_u64(k1, k2) != 1 {
                continue;
            }
            for (b1, b2) in decompositions(beta)? {
                let (Some(p1), Some(p2)) = (divide(&b1, k1), divide(&b2, k2)) else {
                    continue;
                };
                let w = geom.alpha_dot_beta(alpha, &b1) * geom.alpha_dot_beta(alpha, &b2)
                    / rat_int((k1 * k1 * k2 * k2) as i64);
                if w.is_zero() {
                    continue;
                }
                rhs += w * geom.diagonal_pairing(&p1, &p2)?;
            }
        }
    }
    Ok((lhs, rhs / rat_int(2)))
}

fn divide(beta: &CurveClass, k: u64) -> Option<CurveClass> {
    let k = k as i64;
    if beta.0.iter().all(|c| c % k == 0) {
        Some(CurveClass(beta.0.iter().map(|c| c / k).collect()))
    } else {
        None
    }
}

/// Constraint in terms of genus-0 Gromov-Witten invariants.
pub fn constraint_gw_form(
    geom: &GeometryData,
    alpha: &[Rat],
    beta: &CurveClass,
) -> Result<(Rat, Rat)> {
    require_orthogonal(geom, alpha, beta)?;
    let cutoff = geom.degree(beta);
    // GW_{0,beta}(alpha^2) by linearity over the S-basis
    let square = geom.divisor_square(alpha);
    let series: Vec<_> = (0..geom.h4_basis.len())
        .map(|a| gw0_from_gv0(geom, a, cutoff))
        .collect::<Result<_>>()?;
    let gw = |b: &CurveClass, gamma: &[Rat]| -> Rat {
        gamma
            .iter()
            .zip(&series)
            .map(|(g, s)| g * s.coeff(b))
            .fold(Rat::zero(), |acc, x| acc + x)
    };
    let lhs = gw(beta, &square.0);
    let g = &geom.kunneth_inverse;
    let m = geom.h4_basis.len();
    let mut rhs = Rat::zero();
    for (b1, b2) in decompositions(beta)? {
        let w = geom.alpha_dot_beta(alpha, &b1) * geom.alpha_dot_beta(alpha, &b2);
        if w.is_zero() {
            continue;
        }
        let mut pairing = Rat::zero();
        for a in 0..m {
            for b in 0..m {
                pairing += series[a].coeff(&b1) * &g[a][b] * series[b].coeff(&b2);
            }
        }
        rhs += w * pairing;
    }
    Ok((lhs, rhs / rat_int(2)))
}

/// Point-insertion GW invariant of bidegree `(d1, d2)` on the bigraded local
/// geometry: `C(d1+d2, d1)^2 / (d1+d2)^2`, which restricts to `1/d^2` on the
/// axes.
fn gw_point(d1: u64, d2: u64) -> Rat {
    let n = d1 + d2;
    binomial(n, d1).pow(2) / rat_int((n * n) as i64)
}

/// The binomial recursion implied by the GW-form constraint at bidegree
/// `(d1, d2)`: returns `(lhs, rhs)` with `lhs = C(d1+d2,d1)^2/(d1+d2)^2` and
/// `rhs` the halved sum over all ordered splittings with both parts nonzero.
pub fn binomial_recursion_check(d1: u64, d2: u64) -> Result<(Rat, Rat)> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::DegenerateBidegree);
    }
    let lhs = gw_point(d1, d2);
    let mut rhs = Rat::zero();
    for a1 in 0..=d1 {
        for a2 in 0..=d2 {
            let (b1, b2) = (d1 - a1, d2 - a2);
            if (a1, a2) == (0, 0) || (b1, b2) == (0, 0) {
                continue;
            }
            let det = a1 as i64 * b2 as i64 - a2 as i64 * b1 as i64;
            if det == 0 {
                continue;
            }
            rhs += rat(det * det, (d1 * d2) as i64) * gw_point(a1, a2) * gw_point(b1, b2);
        }
    }
    Ok((lhs, rhs / rat_int(2)))
}

/// A restricted variant that keeps only splittings with all four parts
/// strictly positive and drops the squares on the split binomials. It fails
/// already at `(2, 1)` and is kept as a negative control; the identity that
/// holds is [`binomial_recursion_check`].
pub fn binomial_restricted_variant(d1: u64, d2: u64) -> Result<(Rat, Rat)> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::DegenerateBidegree);
    }
    let n = d1 + d2;
    let lhs = rat((2 * d1 * d2) as i64, (n * n) as i64) * binomial(n, d1).pow(2);
    let mut rhs = Rat::zero();
    for a1 in 1..d1 {
        for a2 in 1..d2 {
            let (b1, b2) = (d1 - a1, d2 - a2);
            let det = a1 as i64 * b2 as i64 - a2 as i64 * b1 as i64;
            rhs += rat(
                det * det,
                ((a1 + a2) * (a1 + a2) * (b1 + b2) * (b1 + b2)) as i64,
            ) * binomial(a1 + a2, a1)
                * binomial(b1 + b2, b1);
        }
    }
    Ok((lhs, rhs))
}
