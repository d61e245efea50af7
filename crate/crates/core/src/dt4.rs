//! End-to-end descendent invariant pipelines for the example geometries.
//!
//! Each local-surface pipeline follows the same pattern: present the moduli
//! space of one-dimensional stable sheaves inside a product of projective
//! spaces (possibly as a divisor, possibly as a projective bundle), take the
//! K-theory class of the normalized universal sheaf on ambient x surface,
//! build the obstruction bundle by a Riemann-Roch pushforward, and integrate
//! its Euler class against the descendent insertion
//! `tau_k(x) = pi_{M*}(x . ch_{k+3})`. The orientation sign
//! `(-1)^{c1(Y).beta - 1}` is applied last and recorded separately.

use crate::chow::{KClass, RingClass, RingPresentation};
use crate::geometry::GeometryData;
use crate::rational::{rat_int, to_i64, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use serde::Serialize;

/// Preferred orientation: `(-1)^{c1(Y).beta - 1}`.
pub fn orientation_sign(c1_dot_beta: i64) -> i64 {
    if (c1_dot_beta - 1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// One signed descendent invariant, with the sign kept auditable.
#[derive(Clone, Debug, Serialize)]
pub struct Dt4Result {
    pub geometry: String,
    pub beta: Vec<i64>,
    #[serde(with = "crate::rational::serde_rat_vec")]
    pub alpha: Vec<Rat>,
    /// Signed value `orientation_sign * unsigned_value`.
    #[serde(with = "crate::rational::serde_rat")]
    pub value: Rat,
    pub orientation_sign: i64,
    #[serde(with = "crate::rational::serde_rat")]
    pub unsigned_value: Rat,
}

fn signed(geometry: &str, beta: &[i64], alpha: &[Rat], sign: i64, unsigned: Rat) -> Dt4Result {
    Dt4Result {
        geometry: geometry.to_string(),
        beta: beta.to_vec(),
        alpha: alpha.to_vec(),
        value: rat_int(sign) * &unsigned,
        orientation_sign: sign,
        unsigned_value: unsigned,
    }
}

/// A family of one-dimensional sheaves on a surface, presented by the
/// K-class of its universal sheaf on (moduli ambient) x (surface factors).
struct SheafFamily {
    ring: RingPresentation,
    universal: KClass,
    /// Generator indices of the surface factors.
    surface: Vec<usize>,
    /// Moduli space as a divisor class in the ambient (None when the moduli
    /// space is the whole ambient).
    divisor: Option<RingClass>,
    /// Twist `L` in the obstruction `Ext^1(E, E (x) L)`.
    obstruction_twist: Vec<i64>,
    obstruction_rank: i64,
    /// Line-bundle labels of the normal bundle of the surface inside the
    /// 4-fold; `ch` of the sheaf on the 4-fold is the ambient `ch` times the
    /// inverse Todd class of these, shifted down by the codimension.
    normal: Vec<Vec<i64>>,
}

impl SheafFamily {
    /// Euler class of the obstruction bundle
    /// `-Rpi_{M*}(E^dual (x) E (x) L)`.
    fn obstruction_euler(&self) -> Result<RingClass> {
        let ch_v = self.obstruction_ch()?;
        self.ring.euler_class(self.obstruction_rank, &ch_v)
    }

    fn obstruction_ch(&self) -> Result<RingClass> {
        let ch_e = self.ring.ch(&self.universal);
        let ch_dual = self.ring.ch(&self.universal.dual());
        let tw = self.ring.ch(&KClass::line(&self.obstruction_twist));
        let hom = self.ring.mul(&self.ring.mul(&ch_dual, &ch_e), &tw);
        Ok(self
            .ring
            .grr_pushforward(&hom, &self.surface)?
            .scale(&-Rat::one()))
    }

    /// Chern character of the universal sheaf regarded on the 4-fold: the
    /// ambient character divided by the Todd class of the surface's normal
    /// bundle. `ch_{k}` on the 4-fold is the total-degree `k - codim`
    /// component of this.
    fn fourfold_ch(&self) -> RingClass {
        let mut ch = self.ring.ch(&self.universal);
        for label in &self.normal {
            ch = self.ring.mul(&ch, &self.ring.todd_inverse_line(label));
        }
        ch
    }

    /// `int e(V) . (x . ch_{tau+3}) . [divisor]` — the unsigned descendent
    /// integral of `tau_k` (k = 0, 1, 2) against a surface-side class `x`.
    fn descendent(&self, tau: u32, surface_class: &RingClass) -> Result<Rat> {
        let euler = self.obstruction_euler()?;
        let component = tau + 3 - self.normal.len() as u32;
        let ch_k = self.fourfold_ch().graded(component);
        let mut integrand = self.ring.mul(&euler, &self.ring.mul(surface_class, &ch_k));
        if let Some(div) = &self.divisor {
            integrand = self.ring.restrict_to_divisor(&integrand, div);
        }
        Ok(self.ring.integrate(&integrand))
    }

    /// Twist the universal class so its pushforward to the moduli space has
    /// trivial determinant; errors if the determinant is not an integral
    /// multidegree. Only meaningful when the moduli space is the whole
    /// ambient.
    fn normalize(&mut self) -> Result<()> {
        debug_assert!(self.divisor.is_none());
        let pushed = self.ring.ch(&self.universal);
        let c1 = self.ring.grr_pushforward(&pushed, &self.surface)?.graded(1);
        let mut label = vec![0i64; self.ring.gen_count()];
        for (mono, coeff) in c1.terms() {
            let gen = mono
                .iter()
                .position(|&e| e == 1)
                .expect("degree-1 monomial");
            let c = to_i64(coeff).ok_or_else(|| {
                Error::Dimension(format!("determinant degree {coeff} is not an integer"))
            })?;
            label[gen] = -c;
        }
        self.universal = self.universal.twist(&label);
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Local surface: O(-1) + O(-2) over P2
// ---------------------------------------------------------------------------

/// Degree-3 family: the moduli space is the universal cubic, a `(1,3)`
/// divisor in P9 x P2, and the universal class lives on P9 x P2 x P2.
fn local_p2_family() -> SheafFamily {
    let ring = RingPresentation::product(&[("H1", 9), ("H2", 2), ("H3", 2)]);
    let mut universal = KClass::zero();
    universal.add_line(&[-1, 1, -3], -3);
    universal.add_line(&[0, 0, 0], 1);
    universal.add_line(&[-1, 1, -4], 1);
    universal.add_line(&[-1, 2, -2], 1);
    let divisor = ring.linear(&[1, 3, 0]);
    SheafFamily {
        ring,
        universal,
        surface: vec![2],
        divisor: Some(divisor),
        obstruction_twist: vec![0, 0, -1],
        obstruction_rank: 9,
        normal: vec![vec![0, 0, -1], vec![0, 0, -2]],
    }
}

fn local_p2_sign(d: i64) -> i64 {
    // c1 of the 3-fold O(-1) over P2 pairs the line by 2
    orientation_sign(2 * d)
}

/// `<tau_1(a . line)>_3` on the local P2 geometry; the value `3/2 a`.
pub fn local_p2_tau1(alpha: &Rat) -> Result<Dt4Result> {
    let fam = local_p2_family();
    let line = fam.ring.generator(2).scale(alpha);
    let unsigned = fam.descendent(1, &line)?;
    Ok(signed(
        "local_p2",
        &[3],
        std::slice::from_ref(alpha),
        local_p2_sign(3),
        unsigned,
    ))
}

/// `<tau_0([pt])>_3 = n_{0,3}([pt])` regression; the value `-1`.
pub fn local_p2_tau0_point() -> Result<Rat> {
    let fam = local_p2_family();
    let pt = {
        let h3 = fam.ring.generator(2);
        fam.ring.mul(&h3, &h3)
    };
    Ok(rat_int(local_p2_sign(3)) * fam.descendent(0, &pt)?)
}

/// `<tau_2(1)>_3`; conjecturally `-n_{0,3}(c2)/12`.
pub fn local_p2_tau2() -> Result<Rat> {
    let fam = local_p2_family();
    Ok(rat_int(local_p2_sign(3)) * fam.descendent(2, &fam.ring.one())?)
}

/// Euler class of the degree-3 obstruction bundle (rank 9).
pub fn local_p2_obstruction_euler() -> Result<(RingPresentation, RingClass)> {
    let fam = local_p2_family();
    let e = fam.obstruction_euler()?;
    Ok((fam.ring, e))
}

/// Degree 1 and 2 families: the moduli space is the full linear system and
/// the universal sheaf is the structure sheaf of the universal curve,
/// normalized at runtime.
pub fn local_p2_low_degree_tau1(d: u32, alpha: &Rat) -> Result<Dt4Result> {
    let (n, rank) = match d {
        1 => (2, 1),
        2 => (5, 4),
        _ => {
            return Err(Error::Dimension(
                "low-degree local_p2 pipeline covers d = 1, 2".into(),
            ))
        }
    };
    let ring = RingPresentation::product(&[("H1", n), ("H2", 2)]);
    let mut universal = KClass::line(&[0, 0]);
    universal.add_line(&[-1, -(d as i64)], -1);
    let mut fam = SheafFamily {
        ring,
        universal,
        surface: vec![1],
        divisor: None,
        obstruction_twist: vec![0, -1],
        obstruction_rank: rank,
        normal: vec![vec![0, -1], vec![0, -2]],
    };
    fam.normalize()?;
    let sign = local_p2_sign(d as i64);
    let line = fam.ring.generator(1).scale(alpha);
    let unsigned = fam.descendent(1, &line)?;
    Ok(signed(
        "local_p2",
        &[d as i64],
        std::slice::from_ref(alpha),
        sign,
        unsigned,
    ))
}

// ---------------------------------------------------------------------------
// Local surface: O(-1,-1) + O(-1,-1) over P1 x P1
// ---------------------------------------------------------------------------

fn local_p1p1_family() -> SheafFamily {
    let ring = RingPresentation::product(&[("H1", 8), ("H2", 1), ("H3", 1), ("H4", 1), ("H5", 1)]);
    let mut universal = KClass::zero();
    universal.add_line(&[0, 0, 0, 0, 0], 1);
    universal.add_line(&[-1, 1, 0, -1, -2], -1);
    universal.add_line(&[-1, 0, 1, -2, -1], -1);
    universal.add_line(&[-1, 1, 1, -1, -1], 1);
    let divisor = ring.linear(&[1, 2, 2, 0, 0]);
    SheafFamily {
        ring,
        universal,
        surface: vec![3, 4],
        divisor: Some(divisor),
        obstruction_twist: vec![0, 0, 0, -1, -1],
        obstruction_rank: 8,
        normal: vec![vec![0, 0, 0, -1, -1], vec![0, 0, 0, -1, -1]],
    }
}

fn local_p1p1_sign(d1: i64, d2: i64) -> i64 {
    // c1 of the 3-fold O(-1,-1) over P1 x P1 is (1,1)
    orientation_sign(d1 + d2)
}

/// `<tau_1(a H4 + b H5)>_{(2,2)}`; the value `-2(a+b)`.
pub fn local_p1p1_tau1(a: &Rat, b: &Rat) -> Result<Dt4Result> {
    let fam = local_p1p1_family();
    let alpha = fam
        .ring
        .generator(3)
        .scale(a)
        .add(&fam.ring.generator(4).scale(b));
    let sign = local_p1p1_sign(2, 2);
    let unsigned = fam.descendent(1, &alpha)?;
    Ok(signed(
        "local_p1p1",
        &[2, 2],
        &[a.clone(), b.clone()],
        sign,
        unsigned,
    ))
}

/// `<tau_0([pt])>_{(2,2)} = n_{0,(2,2)}([pt])` regression; the value `2`.
pub fn local_p1p1_tau0_point() -> Result<Rat> {
    let fam = local_p1p1_family();
    let pt = fam.ring.mul(&fam.ring.generator(3), &fam.ring.generator(4));
    Ok(rat_int(local_p1p1_sign(2, 2)) * fam.descendent(0, &pt)?)
}

/// `<tau_2(1)>_{(2,2)}`; conjecturally `-n_{0,(2,2)}(c2)/12`.
pub fn local_p1p1_tau2() -> Result<Rat> {
    let fam = local_p1p1_family();
    Ok(rat_int(local_p1p1_sign(2, 2)) * fam.descendent(2, &fam.ring.one())?)
}

/// Euler class of the `(2,2)` obstruction bundle (rank 8), with its ring.
pub fn local_p1p1_obstruction_euler() -> Result<(RingPresentation, RingClass)> {
    let fam = local_p1p1_family();
    let e = fam.obstruction_euler()?;
    Ok((fam.ring, e))
}

/// Curve classes `(1,1)`, `(2,1)`, `(1,2)` (pairing `H1.beta = d1`): the
/// moduli space is the full linear system; a class meeting the first ruling
/// `d1` times is cut by a section of bidegree `(d2, d1)`. Universal sheaf
/// normalized at runtime.
pub fn local_p1p1_low_degree_tau1(d1: u32, d2: u32, a: &Rat, b: &Rat) -> Result<Dt4Result> {
    let n = (d1 + 1) * (d2 + 1) - 1;
    let rank = n as i64 - 1;
    if !matches!((d1, d2), (1, 1) | (2, 1) | (1, 2)) {
        return Err(Error::Dimension(
            "low-degree local_p1p1 pipeline covers (1,1), (2,1), (1,2)".into(),
        ));
    }
    let ring = RingPresentation::product(&[("H1", n), ("H4", 1), ("H5", 1)]);
    let mut universal = KClass::line(&[0, 0, 0]);
    universal.add_line(&[-1, -(d2 as i64), -(d1 as i64)], -1);
    let mut fam = SheafFamily {
        ring,
        universal,
        surface: vec![1, 2],
        divisor: None,
        obstruction_twist: vec![0, -1, -1],
        obstruction_rank: rank,
        normal: vec![vec![0, -1, -1], vec![0, -1, -1]],
    };
    fam.normalize()?;
    let sign = local_p1p1_sign(d1 as i64, d2 as i64);
    let alpha = fam
        .ring
        .generator(1)
        .scale(a)
        .add(&fam.ring.generator(2).scale(b));
    let unsigned = fam.descendent(1, &alpha)?;
    Ok(signed(
        "local_p1p1",
        &[d1 as i64, d2 as i64],
        &[a.clone(), b.clone()],
        sign,
        unsigned,
    ))
}

// ---------------------------------------------------------------------------
// Local Fano: canonical bundle of P3, degree 2
// ---------------------------------------------------------------------------

/// The degree-2 moduli space is a P5-bundle over the dual P3: conics in
/// their unique supporting plane. Everything about the bundle is derived by
/// the engine itself — the pushforward of O(2) from the universal hyperplane
/// gives the rank-6 bundle, and its Chern classes feed the bundle ring.
pub struct LocalP3Pipeline {
    /// Ambient ring P3(x) x P(E): generators `Hx`, `h2` (base), `h1`
    /// (relative hyperplane, rank-6 bundle).
    pub ring: RingPresentation,
    universal: KClass,
    obstruction: RingClass,
    virtual_class: RingClass,
}

impl LocalP3Pipeline {
    pub fn new() -> Result<Self> {
        // ch(E) for E = pushforward of O(2) from the universal (1,1)
        // hyperplane in P3 x P3
        let flag = RingPresentation::product(&[("Hx", 3), ("Hy", 3)]);
        let mut o_h2 = KClass::line(&[2, 0]);
        o_h2.add_line(&[1, -1], -1);
        let ch_e_flag = flag.grr_pushforward(&flag.ch(&o_h2), &[0])?;

        // transplant into the base ring of the final ambient (Hx, h2)
        let base = RingPresentation::product(&[("Hx", 3), ("h2", 3)]);
        let mut ch_e = RingClass::default();
        for (mono, coeff) in ch_e_flag.terms() {
            debug_assert_eq!(mono[0], 0, "pushforward must be Hx-free");
            ch_e = ch_e.add(&RingClass::monomial(vec![0, mono[1]], coeff.clone()));
        }
        let chern_e = base.chern_from_ch(6, &ch_e)?;
        let ring = base.add_bundle("h1", 6, &chern_e)?;

        // normalized universal sheaf on P3(x) x P(E)
        let mut universal = KClass::zero();
        universal.add_line(&[0, 0, 0], 1);
        universal.add_line(&[-1, -1, 0], -1);
        universal.add_line(&[-2, 0, -1], -1);
        universal.add_line(&[-3, -1, -1], 1);

        // obstruction = tangent of P(E) + RHom pushforward - O
        let ch_e_ring = {
            let mut out = RingClass::default();
            for (mono, coeff) in ch_e.terms() {
                out = out.add(&RingClass::monomial(vec![0, mono[1], 0], coeff.clone()));
            }
            out
        };
        let tangent = {
            // pullback of T(P3) plus relative tangent E (x) O(h1) - O
            let p3_part = ring
                .ch(&KClass::line(&[0, 1, 0]))
                .scale(&rat_int(4))
                .sub(&ring.one());
            let rel = ring
                .mul(&ch_e_ring, &ring.ch(&KClass::line(&[0, 0, 1])))
                .sub(&ring.one());
            p3_part.add(&rel)
        };
        let hom = ring.mul(&ring.ch(&universal.dual()), &ring.ch(&universal));
        let hom_pushed = ring.grr_pushforward(&hom, &[0])?;
        let obstruction = tangent.add(&hom_pushed).sub(&ring.one());
        let virtual_class = ring.euler_class(7, &obstruction)?;

        Ok(LocalP3Pipeline {
            ring,
            universal,
            obstruction,
            virtual_class,
        })
    }

    /// The intersection numbers `h1^{5+j} h2^{3-j}` on P(E) for j = 3..0,
    /// i.e. `(h1^8, h1^7 h2, h1^6 h2^2, h1^5 h2^3)`.
    pub fn pairings(&self) -> [Rat; 4] {
        let mut out = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for (slot, j) in (0..4).zip((0..4).rev()) {
            // multiply by the P3(x) top class to integrate over P(E) alone
            let mono = RingClass::monomial(vec![3, (3 - j) as u32, (5 + j) as u32], Rat::one());
            out[slot] = self.ring.integrate(&mono);
        }
        out
    }

    /// Coefficients of the virtual class on `h1^7, h1^6 h2, h1^5 h2^2,
    /// h1^4 h2^3`.
    pub fn virtual_class_coefficients(&self) -> [Rat; 4] {
        [
            self.virtual_class.coeff(&vec![0, 0, 7]),
            self.virtual_class.coeff(&vec![0, 1, 6]),
            self.virtual_class.coeff(&vec![0, 2, 5]),
            self.virtual_class.coeff(&vec![0, 3, 4]),
        ]
    }

    /// Chern character of the obstruction bundle.
    pub fn obstruction_ch(&self) -> &RingClass {
        &self.obstruction
    }

    /// The normalized universal K-class on P3(x) x P(E).
    pub fn universal(&self) -> &KClass {
        &self.universal
    }

    /// Chern character of the universal sheaf on the 4-fold: the zero
    /// section P3 has normal bundle O(-4), so the ambient character is
    /// divided by its Todd class and shifted down by one degree.
    fn fourfold_ch(&self) -> RingClass {
        let tdinv = self.ring.todd_inverse_line(&[-4, 0, 0]);
        self.ring.mul(&self.ring.ch(&self.universal), &tdinv)
    }

    /// Descendent insertion `pi_{M*}(alpha . ch_4)` for `alpha` the plane
    /// class; conjecturally `-h1/2`.
    pub fn tau1_insertion(&self) -> Result<RingClass> {
        let ch4 = self.fourfold_ch().graded(3);
        let hx = self.ring.generator(0);
        self.ring.fiber_integrate(&self.ring.mul(&hx, &ch4), &[0])
    }

    fn sign(&self) -> i64 {
        // c1(P3) . 2 [line] = 8
        orientation_sign(8)
    }

    /// `<tau_1(a [P2])>_2`; the value `-30 a`.
    pub fn tau1(&self, alpha: &Rat) -> Result<Dt4Result> {
        let ch4 = self.fourfold_ch().graded(3);
        let hx = self.ring.generator(0).scale(alpha);
        let integrand = self
            .ring
            .mul(&self.virtual_class, &self.ring.mul(&hx, &ch4));
        let unsigned = self.ring.integrate(&integrand);
        Ok(signed(
            "local_p3",
            &[2],
            std::slice::from_ref(alpha),
            self.sign(),
            unsigned,
        ))
    }

    /// `<tau_2(1)>_2`; conjecturally `-n_{0,2}(c2)/12`.
    pub fn tau2(&self) -> Result<Rat> {
        let ch5 = self.fourfold_ch().graded(4);
        let integrand = self.ring.mul(&self.virtual_class, &ch5);
        Ok(rat_int(self.sign()) * self.ring.integrate(&integrand))
    }
}

// ---------------------------------------------------------------------------
// Elliptic fibration over P3, multiple fiber classes
// ---------------------------------------------------------------------------

/// `<tau_1(a1 D + a2 B)>_{r[f]}` from the fixture's pairing data: the
/// ch4 pushforward of the normalized universal sheaf is
/// `a1 (D - 2 r^2 B) + a2 B`, paired against minus the third Chern class.
pub fn elliptic_tau1(geom: &GeometryData, r: i64, alpha: &[Rat]) -> Result<Dt4Result> {
    let data = geom
        .elliptic
        .as_ref()
        .ok_or_else(|| Error::MissingEllipticData(geom.name.clone()))?;
    let (a1, a2) = (&alpha[0], &alpha[1]);
    let d_coeff = a1.clone();
    let b_coeff = a2 - a1 * rat_int(2 * r * r);
    let pairing = d_coeff * &data.d_dot_c3 + b_coeff * &data.b_dot_c3;
    Ok(signed(&geom.name, &[r], alpha, -1, pairing))
}

// ---------------------------------------------------------------------------
// Product of a 3-fold with an elliptic curve
// ---------------------------------------------------------------------------

/// Multiple fiber classes `r[E]`: `-chi(Y) (alpha . [E])` at `r = 1`,
/// zero above (the moduli space is empty).
pub fn product_fiber_tau1(chi_y: &Rat, alpha_dot_e: &Rat, r: u64) -> Rat {
    if r == 1 {
        -chi_y * alpha_dot_e
    } else {
        Rat::zero()
    }
}

/// Base classes: `(int_E alpha_2) . deg [M_1(Y,beta)]^vir`.
pub fn product_base_tau1(deg_vir: &Rat, int_e_alpha2: &Rat) -> Rat {
    deg_vir * int_e_alpha2
}
