//! Symbolic intersection theory on products of projective spaces and on one
//! projective-bundle layer over such a product.
//!
//! A [`RingPresentation`] fixes degree-1 generators: one hyperplane class per
//! projective-space factor (exponents capped at the factor dimension) and at
//! most one projective-bundle class `h`. Classes ([`RingClass`]) are rational
//! polynomial combinations of monomials in the generators; monomials whose
//! total degree exceeds the space dimension are dropped on sight since
//! nothing of higher degree survives integration or later products.
//!
//! Integration extracts the coefficient of the fundamental monomial; on a
//! bundle ring the excess powers of `h` are pushed down with the Segre
//! normalization `pi_*(h^{rank-1+j}) = s_j(E)`, which is where the defining
//! relation of the bundle enters.
//!
//! K-theory inputs are [`KClass`]es: integer combinations of line-bundle
//! labels. `ch` maps them into the ring, `grr_pushforward` implements
//! `ch(Rpi_* F) = pi_*(ch(F) . td)` along named projective fiber factors, and
//! Newton's identities convert Chern characters to Chern classes for Euler
//! class computations.

use crate::rational::{rat_int, Rat};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

type Monomial = Vec<u32>;

/// Rational combination of reduced monomials in the ring generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RingClass {
    terms: BTreeMap<Monomial, Rat>,
}

/// Integer combination of line bundles, labelled by their multidegrees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KClass {
    terms: BTreeMap<Vec<i64>, i64>,
}

struct Generator {
    name: String,
    cap: u32,
    bundle: Option<BundleData>,
}

struct BundleData {
    rank: u32,
    /// `segre[j]` = j-th Segre class of the bundle, in full-ring coordinates
    /// (bundle exponent zero).
    segre: Vec<RingClass>,
}

/// Graded polynomial quotient presentation; immutable once built.
pub struct RingPresentation {
    gens: Vec<Generator>,
    dim: u32,
}

impl RingPresentation {
    /// Ring of a product of projective spaces, one `(name, dimension)` pair
    /// per factor.
    pub fn product(factors: &[(&str, u32)]) -> Self {
        let gens = factors
            .iter()
            .map(|(name, dim)| Generator {
                name: name.to_string(),
                cap: *dim,
                bundle: None,
            })
            .collect::<Vec<_>>();
        let dim = gens.iter().map(|g| g.cap).sum();
        RingPresentation { gens, dim }
    }

    /// Append the relative hyperplane class of a projective bundle of the
    /// given rank whose total Chern class (in the existing generators) is
    /// `chern`. Only one bundle layer is supported.
    pub fn add_bundle(&self, name: &str, rank: u32, chern: &RingClass) -> Result<RingPresentation> {
        if self.gens.iter().any(|g| g.bundle.is_some()) {
            return Err(Error::Dimension(
                "only one projective-bundle layer is supported".into(),
            ));
        }
        let base_dim = self.dim;
        // s_k = -(c_1 s_{k-1} + ... + c_k s_0), computed in the base ring
        let mut segre_base: Vec<RingClass> = vec![RingClass::one(self.gens.len())];
        for k in 1..=base_dim {
            let mut s = RingClass::default();
            for i in 1..=k {
                let ci = chern.graded(i);
                if ci.is_zero() {
                    continue;
                }
                s = s.add(&self.mul(&ci, &segre_base[(k - i) as usize]));
            }
            segre_base.push(s.scale(&rat_int(-1)));
        }

        let mut gens: Vec<Generator> = self
            .gens
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                cap: g.cap,
                bundle: None,
            })
            .collect();
        let segre: Vec<RingClass> = segre_base.iter().map(|s| s.append_zero_column()).collect();
        gens.push(Generator {
            name: name.to_string(),
            cap: rank - 1 + base_dim,
            bundle: Some(BundleData { rank, segre }),
        });
        Ok(RingPresentation {
            gens,
            dim: base_dim + rank - 1,
        })
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    /// Dimension of the space (top cohomological degree).
    pub fn dimension(&self) -> u32 {
        self.dim
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn one(&self) -> RingClass {
        RingClass::one(self.gens.len())
    }

    /// The i-th generator as a class.
    pub fn generator(&self, i: usize) -> RingClass {
        let mut mono = vec![0u32; self.gens.len()];
        mono[i] = 1;
        RingClass::monomial(mono, Rat::one())
    }

    /// `sum_i label[i] * H_i`.
    pub fn linear(&self, label: &[i64]) -> RingClass {
        let mut out = RingClass::default();
        for (i, &a) in label.iter().enumerate() {
            if a != 0 {
                out = out.add(&self.generator(i).scale(&rat_int(a)));
            }
        }
        out
    }

    fn keeps(&self, mono: &Monomial) -> bool {
        let total: u32 = mono.iter().sum();
        total <= self.dim && mono.iter().zip(&self.gens).all(|(&e, g)| e <= g.cap)
    }

    fn insert_reduced(&self, terms: &mut BTreeMap<Monomial, Rat>, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() || !self.keeps(&mono) {
            return;
        }
        let entry = terms.entry(mono.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            terms.remove(&mono);
        }
    }

    pub fn mul(&self, a: &RingClass, b: &RingClass) -> RingClass {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mono: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                self.insert_reduced(&mut terms, mono, ca * cb);
            }
        }
        RingClass { terms }
    }

    /// `exp(x)` for a class with no degree-0 part.
    pub fn exp(&self, x: &RingClass) -> RingClass {
        debug_assert!(x.graded(0).is_zero(), "exp needs a nilpotent argument");
        let mut acc = self.one();
        let mut power = self.one();
        for j in 1..=self.dim as i64 {
            power = self.mul(&power, x).scale(&Rat::new(1.into(), j.into()));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        acc
    }

    /// Chern character of a K-class: `sum n_L exp(sum a_i H_i)`.
    pub fn ch(&self, k: &KClass) -> RingClass {
        let mut acc = RingClass::default();
        for (label, &mult) in &k.terms {
            if mult == 0 {
                continue;
            }
            let e = self.exp(&self.linear(label));
            acc = acc.add(&e.scale(&rat_int(mult)));
        }
        acc
    }

    /// Todd class of the relative tangent bundle of the named projective
    /// fiber factors: `prod (H/(1 - e^{-H}))^{n+1}`.
    pub fn todd_fiber(&self, fiber: &[usize]) -> Result<RingClass> {
        let mut acc = self.one();
        for &g in fiber {
            let gen = self.gens.get(g).ok_or_else(|| {
                Error::FiberGenMissing(format!("generator index {g} out of range"))
            })?;
            if gen.bundle.is_some() {
                return Err(Error::FiberGenMissing(format!(
                    "generator {} is a bundle class, not a projective factor",
                    gen.name
                )));
            }
            let coeffs = todd_power_series(self.dim as usize, (gen.cap + 1) as usize);
            let mut td = RingClass::default();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = vec![0u32; self.gens.len()];
                mono[g] = k as u32;
                if self.keeps(&mono) {
                    td = td.add(&RingClass::monomial(mono, c.clone()));
                }
            }
            acc = self.mul(&acc, &td);
        }
        Ok(acc)
    }

    /// Inverse Todd class `(1 - e^{-x})/x` of the line bundle `O(label)`,
    /// evaluated at `x = sum label_i H_i`.
    pub fn todd_inverse_line(&self, label: &[i64]) -> RingClass {
        let x = self.linear(label);
        let mut acc = self.one();
        let mut power = self.one();
        let mut factorial = Rat::one();
        for k in 1..=self.dim as i64 {
            power = self.mul(&power, &x);
            if power.is_zero() {
                break;
            }
            factorial *= rat_int(k + 1);
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&power.scale(&(sign / factorial.clone())));
        }
        acc
    }

    /// Cohomological pushforward along the named projective fiber factors:
    /// keep monomials whose fiber exponents are exactly the fiber dimensions
    /// and strip them.
    pub fn fiber_integrate(&self, x: &RingClass, fiber: &[usize]) -> Result<RingClass> {
        for &g in fiber {
            let gen = self
                .gens
                .get(g)
                .ok_or_else(|| Error::FiberGenMissing(format!("generator index {g}")))?;
            if gen.bundle.is_some() {
                return Err(Error::FiberGenMissing(format!(
                    "generator {} is a bundle class, not a projective factor",
                    gen.name
                )));
            }
        }
        let mut terms = BTreeMap::new();
        'outer: for (mono, coeff) in &x.terms {
            let mut stripped = mono.clone();
            for &g in fiber {
                if mono[g] != self.gens[g].cap {
                    continue 'outer;
                }
                stripped[g] = 0;
            }
            self.insert_reduced(&mut terms, stripped, coeff.clone());
        }
        Ok(RingClass { terms })
    }

    /// Riemann-Roch pushforward `pi_*(x . td_fiber)` along projective fiber
    /// factors; satisfies `ch(Rpi_* F) = grr_pushforward(ch(F), fiber)`.
    pub fn grr_pushforward(&self, x: &RingClass, fiber: &[usize]) -> Result<RingClass> {
        let td = self.todd_fiber(fiber)?;
        self.fiber_integrate(&self.mul(x, &td), fiber)
    }

    /// Coefficient of the fundamental class, with Segre pushdown of excess
    /// bundle-generator powers. Off-top-degree terms integrate to zero.
    pub fn integrate(&self, x: &RingClass) -> Rat {
        let bundle = self.gens.iter().position(|g| g.bundle.is_some());
        let fundamental: Monomial = self
            .gens
            .iter()
            .map(|g| if g.bundle.is_some() { 0 } else { g.cap })
            .collect();
        let mut total = Rat::zero();
        for (mono, coeff) in &x.terms {
            match bundle {
                None => {
                    if mono == &fundamental {
                        total += coeff.clone();
                    }
                }
                Some(b) => {
                    let data = self.gens[b].bundle.as_ref().expect("bundle data");
                    let e = mono[b];
                    if e + 1 < data.rank {
                        continue;
                    }
                    let j = (e + 1 - data.rank) as usize;
                    if j >= data.segre.len() {
                        continue;
                    }
                    let mut base = mono.clone();
                    base[b] = 0;
                    let pushed =
                        self.mul(&RingClass::monomial(base, coeff.clone()), &data.segre[j]);
                    total += pushed.coeff(&fundamental);
                }
            }
        }
        total
    }

    /// Restriction to a divisor before ambient integration.
    pub fn restrict_to_divisor(&self, x: &RingClass, divisor: &RingClass) -> RingClass {
        self.mul(x, divisor)
    }

    /// Total Chern class from a Chern character via Newton's identities.
    /// The degree-0 component of `ch` must equal `rank`.
    pub fn chern_from_ch(&self, rank: i64, ch: &RingClass) -> Result<RingClass> {
        let expected = rat_int(rank);
        let found = ch.coeff(&vec![0u32; self.gens.len()]);
        if found != expected {
            return Err(Error::RankMismatch {
                expected: Box::new(expected),
                found: Box::new(found),
            });
        }
        // p_i = i! ch_i; e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} p_i e_{k-i}
        let mut factorial = Rat::one();
        let mut power_sums: Vec<RingClass> = vec![RingClass::default()];
        for i in 1..=self.dim as i64 {
            factorial *= rat_int(i);
            power_sums.push(ch.graded(i as u32).scale(&factorial));
        }
        let mut elementary: Vec<RingClass> = vec![self.one()];
        for k in 1..=self.dim as usize {
            let mut acc = RingClass::default();
            for i in 1..=k {
                let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
                acc = acc.add(&self.mul(&power_sums[i], &elementary[k - i]).scale(&sign));
            }
            elementary.push(acc.scale(&Rat::new(1.into(), (k as i64).into())));
        }
        let mut out = RingClass::default();
        for e in elementary {
            out = out.add(&e);
        }
        Ok(out)
    }

    /// Euler class = top Chern class `c_rank`.
    pub fn euler_class(&self, rank: i64, ch: &RingClass) -> Result<RingClass> {
        if rank < 0 {
            return Err(Error::Dimension("euler class needs rank >= 0".into()));
        }
        Ok(self.chern_from_ch(rank, ch)?.graded(rank as u32))
    }
}

/// Coefficients of `(t/(1-e^{-t}))^{power}` up to degree `dim`.
fn todd_power_series(dim: usize, power: usize) -> Vec<Rat> {
    // f = (1-e^{-t})/t = sum (-1)^k t^k/(k+1)!
    let mut f = Vec::with_capacity(dim + 1);
    let mut fact = Rat::one();
    for k in 0..=dim {
        fact *= rat_int(k as i64 + 1);
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        f.push(sign * Rat::one() / fact.clone());
    }
    // invert: g = 1/f
    let mut g = vec![Rat::zero(); dim + 1];
    g[0] = Rat::one();
    for k in 1..=dim {
        let mut acc = Rat::zero();
        for i in 1..=k {
            acc += &f[i] * &g[k - i];
        }
        g[k] = -acc;
    }
    // raise to `power`
    let mut out = vec![Rat::zero(); dim + 1];
    out[0] = Rat::one();
    for _ in 0..power {
        let mut next = vec![Rat::zero(); dim + 1];
        for i in 0..=dim {
            if out[i].is_zero() {
                continue;
            }
            for j in 0..=dim - i {
                if !g[j].is_zero() {
                    let prod = &out[i] * &g[j];
                    next[i + j] += prod;
                }
            }
        }
        out = next;
    }
    out
}

impl RingClass {
    pub fn one(gen_count: usize) -> Self {
        RingClass::monomial(vec![0u32; gen_count], Rat::one())
    }

    pub fn monomial(mono: Monomial, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        RingClass { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &RingClass) -> RingClass {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        RingClass { terms }
    }

    pub fn sub(&self, other: &RingClass) -> RingClass {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> RingClass {
        if c.is_zero() {
            return RingClass::default();
        }
        RingClass {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Degree-`k` graded component.
    pub fn graded(&self, k: u32) -> RingClass {
        RingClass {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == k)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    /// Dual Chern character: odd-degree components negated.
    pub fn ch_dual(&self) -> RingClass {
        RingClass {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let deg: u32 = m.iter().sum();
                    let v = if deg % 2 == 1 { -v.clone() } else { v.clone() };
                    (m.clone(), v)
                })
                .collect(),
        }
    }

    /// Reinterpret in a presentation with one generator appended.
    fn append_zero_column(&self) -> RingClass {
        RingClass {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let mut m = m.clone();
                    m.push(0);
                    (m, v.clone())
                })
                .collect(),
        }
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c} * {m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl KClass {
    pub fn zero() -> Self {
        KClass::default()
    }

    /// The line bundle `O(label)`.
    pub fn line(label: &[i64]) -> Self {
        let mut k = KClass::default();
        k.add_line(label, 1);
        k
    }

    pub fn add_line(&mut self, label: &[i64], mult: i64) {
        let entry = self.terms.entry(label.to_vec()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(label);
        }
    }

    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &KClass) -> KClass {
        let mut out = self.clone();
        for (l, &m) in &other.terms {
            out.add_line(l, m);
        }
        out
    }

    pub fn scale(&self, c: i64) -> KClass {
        let mut out = KClass::default();
        for (l, &m) in &self.terms {
            out.add_line(l, m * c);
        }
        out
    }

    /// Tensor product: labels add, multiplicities multiply.
    pub fn tensor(&self, other: &KClass) -> KClass {
        let mut out = KClass::default();
        for (l1, &m1) in &self.terms {
            for (l2, &m2) in &other.terms {
                let label: Vec<i64> = l1.iter().zip(l2).map(|(a, b)| a + b).collect();
                out.add_line(&label, m1 * m2);
            }
        }
        out
    }

    /// Derived dual: labels negate.
    pub fn dual(&self) -> KClass {
        let mut out = KClass::default();
        for (l, &m) in &self.terms {
            let label: Vec<i64> = l.iter().map(|a| -a).collect();
            out.add_line(&label, m);
        }
        out
    }

    /// Twist by a single line bundle.
    pub fn twist(&self, label: &[i64]) -> KClass {
        self.tensor(&KClass::line(label))
    }
}
