//! Consistency harness for the ideal-geometry derivation behind the genus-1
//! descendent formula.
//!
//! A one-dimensional family of rational curves is modelled on a blown-up
//! P1-bundle with fiber class `beta`, relative cotangent class `psi` and
//! exceptional classes `beta_1^{(i)}`, with intersections
//! `beta.beta = beta_1.beta = 0`, `beta.psi = -2`,
//! `beta_1.psi = beta_1^2 = -1`. Restricting a divisor `alpha` and solving
//! the resulting linear relations expresses the descendent integral
//! `-(1/2) psi . alpha` through `alpha^2`, `psi^2` and the splitting data —
//! two independent evaluation routes that must agree identically. The
//! super-rigid elliptic contribution `(alpha.beta)/r` assembles the
//! multiple-cover term of the same formula.

use crate::foundation::{decompositions, CurveClass};
use crate::geometry::GeometryData;
use crate::meeting::MeetingTable;
use crate::rational::{rat_int, Rat};
use crate::{Error, Result};
use num::Zero;

/// Input data for one blown-up family.
#[derive(Clone, Debug)]
pub struct BlowupFamilyData {
    /// Number of blown-up points.
    pub k: usize,
    /// `psi^2` on the family.
    pub psi_sq: Rat,
    /// `alpha . beta`; must be nonzero.
    pub alpha_beta: Rat,
    /// `alpha . beta_1^{(i)}` for each exceptional class.
    pub alpha_beta1: Vec<Rat>,
}

/// Both evaluation routes for `-(1/2) psi . alpha`, with the free
/// restriction coefficient `a` supplied explicitly (it cancels between the
/// two routes).
pub fn blowup_descendent_paths(data: &BlowupFamilyData, a: &Rat) -> Result<(Rat, Rat)> {
    if data.alpha_beta.is_zero() {
        return Err(Error::PoleLocus);
    }
    debug_assert_eq!(data.k, data.alpha_beta1.len());
    let t = &data.alpha_beta;
    let s = &data.psi_sq;
    // restriction coefficients solved from the pairings with beta and the
    // exceptional classes
    let b = -t / rat_int(2);
    let d: Vec<Rat> = data
        .alpha_beta1
        .iter()
        .map(|ab1| (t - rat_int(2) * ab1) / rat_int(2))
        .collect();
    let sum_d = d.iter().fold(Rat::zero(), |acc, x| acc + x);

    // route one: the solved linear relation
    let solved = a - &b / rat_int(2) * s + &sum_d / rat_int(2);

    // route two: the closed form, with alpha^2 reconstructed from the same
    // coefficients
    let alpha_sq = {
        let d_sq = d.iter().fold(Rat::zero(), |acc, x| acc + x * x);
        &b * &b * s - d_sq - rat_int(4) * a * &b - rat_int(2) * &b * &sum_d
    };
    let mut closed = &alpha_sq / (rat_int(2) * t) + t * s / rat_int(8);
    for ab1 in &data.alpha_beta1 {
        let ab2 = t - ab1;
        let diff = ab1 - &ab2;
        closed += &diff * &diff / (rat_int(8) * t);
    }
    Ok((solved, closed))
}

/// The descendent contribution of one family: the common value of the two
/// routes (evaluated with the free coefficient at zero, where it cancels).
pub fn blowup_descendent(data: &BlowupFamilyData) -> Result<Rat> {
    let (solved, closed) = blowup_descendent_paths(data, &Rat::zero())?;
    if solved != closed {
        return Err(Error::Internal(format!(
            "blowup descendent routes disagree: {solved} vs {closed}"
        )));
    }
    Ok(solved)
}

/// Super-rigid elliptic contribution of a rank-`r` cover: `(alpha.beta)/r`.
pub fn elliptic_multiple_contribution(r: u64, alpha_beta: &Rat) -> Result<Rat> {
    if r < 1 {
        return Err(Error::Dimension("cover rank must be positive".into()));
    }
    Ok(alpha_beta / rat_int(r as i64))
}

/// Assemble the rational-curve part of the genus-1 descendent formula from
/// the heuristic pieces on a fixture geometry: with
/// `psi^2 = -(1/2) sum m_{b1,b2}` and the half-weighted meeting correction,
/// the family contribution equals the first two terms of the formula.
pub fn rational_family_contribution(
    geom: &GeometryData,
    meeting: &MeetingTable,
    beta: &CurveClass,
    alpha: &[Rat],
) -> Result<Rat> {
    let t = geom.alpha_dot_beta(alpha, beta);
    if t.is_zero() {
        return Err(Error::PoleLocus);
    }
    let mut m_sum = Rat::zero();
    let mut correction = Rat::zero();
    for (b1, b2) in decompositions(beta)? {
        let m = meeting.get(&b1, &b2)?;
        m_sum += &m;
        let diff = geom.alpha_dot_beta(alpha, &b1) - geom.alpha_dot_beta(alpha, &b2);
        correction += &diff * &diff * &m / (rat_int(8) * &t) / rat_int(2);
    }
    let psi_sq = -m_sum / rat_int(2);
    let alpha_sq = geom.n0(beta, &geom.divisor_square(alpha))?;
    Ok(&alpha_sq / (rat_int(2) * &t) + &t * psi_sq / rat_int(8) + correction)
}
