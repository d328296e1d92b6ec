//! The join `M^7 = Y^{p,q} ⋆_{l1,l2} S^3_w`, its Sasaki-Einstein Reeb rays,
//! smoothness, and the quotient Bott orbifold.
//!
//! Along the `w`-cone the Einstein condition reduces to a cubic in
//! `k = w1 v3_inf / (w2 v3_0)`:
//!
//! ```text
//! 3 w2 k³ + (2 w2 - w1) k² - (2 w1 - w2) k - 3 w1 = 0
//! ```
//!
//! which has exactly one root in `(1, ∞)`. Rational roots give quasi-regular
//! rays and a quotient orbifold; irrational ones give irregular rays.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::bott::{Basis, BottOrbifold, CohClass};
use crate::error::{Error, Result};
use crate::kernel::{
    integrate_sym, real_roots, to_rational, AlgebraicRoot, Integer, Polynomial, Rational, RealRoot,
};
use crate::ypq::{exact_div, YpqEinstein};

/// Join parameters over a quasi-regular `Y^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSpec {
    pub ypq: YpqEinstein,
    pub l1: Integer,
    pub l2: Integer,
    pub w1: Integer,
    pub w2: Integer,
}

pub(crate) fn check_weights(w1: &Integer, w2: &Integer) -> Result<()> {
    if !w2.is_positive() {
        return Err(Error::InvalidJoin(format!("w2 = {w2} must be positive")));
    }
    if w1 <= w2 {
        return Err(Error::InvalidJoin(format!(
            "need w1 > w2, got ({w1}, {w2})"
        )));
    }
    if !w1.gcd(w2).is_one() {
        return Err(Error::InvalidJoin(format!(
            "w = ({w1}, {w2}) is not coprime"
        )));
    }
    Ok(())
}

impl JoinSpec {
    /// Rejects data not normalized to `gcd(l1, m2) = 1`.
    pub fn new(
        ypq: YpqEinstein,
        l1: Integer,
        l2: Integer,
        w1: Integer,
        w2: Integer,
    ) -> Result<Self> {
        check_weights(&w1, &w2)?;
        if !l1.is_positive() || !l2.is_positive() {
            return Err(Error::InvalidJoin(format!(
                "l = ({l1}, {l2}) must be positive"
            )));
        }
        if !l1.gcd(&ypq.m2).is_one() {
            return Err(Error::InvalidJoin(format!(
                "gcd(l1, m2) = gcd({l1}, {}) must be 1",
                ypq.m2
            )));
        }
        if !l1.gcd(&(&l2 * &ypq.m2)).is_one() {
            return Err(Error::InvalidJoin(format!(
                "gcd(l1, l2 m2) = gcd({l1}, {}) must be 1",
                &l2 * &ypq.m2
            )));
        }
        Ok(Self {
            ypq,
            l1,
            l2,
            w1,
            w2,
        })
    }

    /// The join with `(l1, l2)` from [`canonical_l`].
    pub fn canonical(ypq: YpqEinstein, w1: Integer, w2: Integer) -> Result<Self> {
        check_weights(&w1, &w2)?;
        let (l1, l2) = canonical_l(&w1, &w2, &ypq.fano_index);
        Self::new(ypq, l1, l2, w1, w2)
    }
}

/// `(l1, l2) = (I, |w|) / gcd(|w|, I)` with `|w| = w1 + w2`.
pub fn canonical_l(w1: &Integer, w2: &Integer, fano_index: &Integer) -> (Integer, Integer) {
    let norm = w1 + w2;
    let g = norm.gcd(fano_index);
    (fano_index / &g, norm / g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pole {
    Zero,
    Infinity,
}

impl fmt::Display for Pole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pole::Zero => "0",
            Pole::Infinity => "inf",
        })
    }
}

/// A failing pair in the smoothness test: `gcd(l2 m2 v2^i, l1 w_j) = gcd > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessWitness {
    pub pole: Pole,
    pub j: u8,
    pub gcd: Integer,
}

impl fmt::Display for SmoothnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gcd(l2 m2 v2^{}, l1 w{}) = {}",
            self.pole, self.j, self.gcd
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothness {
    pub witnesses: Vec<SmoothnessWitness>,
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn smoothness_check(spec: &JoinSpec) -> Smoothness {
    let y = &spec.ypq;
    let mut witnesses = Vec::new();
    for (pole, v) in [(Pole::Zero, &y.v2_0), (Pole::Infinity, &y.v2_inf)] {
        let left = &spec.l2 * &y.m2 * v;
        for (j, w) in [(1u8, &spec.w1), (2u8, &spec.w2)] {
            let g = left.gcd(&(&spec.l1 * w));
            if !g.is_one() {
                witnesses.push(SmoothnessWitness { pole, j, gcd: g });
            }
        }
    }
    Smoothness { witnesses }
}

pub fn se_cubic(w1: &Integer, w2: &Integer) -> Polynomial {
    let two = Integer::from(2);
    let three = Integer::from(3);
    Polynomial::from_integers([
        -(&three * w1),
        -(&two * w1 - w2),
        &two * w2 - w1,
        &three * w2,
    ])
}

/// A Sasaki-Einstein Reeb ray in the `w`-cone. `k` is the cubic's root and
/// the ray direction is `v3_inf / v3_0 = k w2 / w1`.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReebRay {
    QuasiRegular {
        v3_0: Integer,
        v3_inf: Integer,
        k: Rational,
    },
    Irregular {
        k: AlgebraicRoot,
        ratio: AlgebraicRoot,
    },
}

impl ReebRay {
    pub fn is_quasi_regular(&self) -> bool {
        matches!(self, ReebRay::QuasiRegular { .. })
    }

    pub fn k(&self) -> RealRoot {
        match self {
            ReebRay::QuasiRegular { k, .. } => RealRoot::Rational(k.clone()),
            ReebRay::Irregular { k, .. } => RealRoot::Algebraic(k.clone()),
        }
    }

    /// `v3_inf / v3_0`.
    pub fn ratio(&self) -> RealRoot {
        match self {
            ReebRay::QuasiRegular { v3_0, v3_inf, .. } => {
                RealRoot::Rational(Rational::new(v3_inf.clone(), v3_0.clone()))
            }
            ReebRay::Irregular { ratio, .. } => RealRoot::Algebraic(ratio.clone()),
        }
    }

    pub fn v3(&self) -> Option<(&Integer, &Integer)> {
        match self {
            ReebRay::QuasiRegular { v3_0, v3_inf, .. } => Some((v3_0, v3_inf)),
            ReebRay::Irregular { .. } => None,
        }
    }
}

/// Solves the cubic for its unique root in `(1, ∞)`.
pub fn se_ray_from_w(w1: &Integer, w2: &Integer) -> Result<ReebRay> {
    check_weights(w1, w2)?;
    let one = Rational::one();
    let mut above_one: Vec<RealRoot> = real_roots(&se_cubic(w1, w2))?
        .into_iter()
        .filter(|r| r.cmp_rational(&one).is_gt())
        .collect();
    if above_one.len() != 1 {
        return Err(Error::SeRootCount {
            count: above_one.len(),
        });
    }
    let scale = Rational::new(w2.clone(), w1.clone());
    Ok(match above_one.pop().unwrap() {
        RealRoot::Rational(k) => {
            let ratio = &k * &scale;
            ReebRay::QuasiRegular {
                v3_0: ratio.denom().clone(),
                v3_inf: ratio.numer().clone(),
                k,
            }
        }
        RealRoot::Algebraic(k) => {
            let ratio = k.scaled(&scale);
            ReebRay::Irregular { k, ratio }
        }
    })
}

/// The weights whose Sasaki-Einstein ray has cubic root `k`:
/// `w2 / w1 = (k² + 2k + 3) / (k (3k² + 2k + 1))` in lowest terms.
pub fn w_from_k(k: &Rational) -> Result<(Integer, Integer)> {
    if *k <= Rational::one() {
        return Err(Error::KOutOfRange(k.clone()));
    }
    let c = |n: i64| Rational::from_integer(n.into());
    let ratio = (k * k + c(2) * k + c(3)) / (k * (c(3) * k * k + c(2) * k + c(1)));
    let (w1, w2) = (ratio.denom().clone(), ratio.numer().clone());
    // w1 - w2 is proportional to (k-1)(3k² + 4k + 3)
    if w1 <= w2 {
        return Err(Error::Consistency(format!(
            "w_from_k({k}) gave w1={w1} <= w2={w2}"
        )));
    }
    Ok((w1, w2))
}

/// The Einstein integrand for the join ray, as a polynomial in `z`.
pub fn se_integrand(w1: &Integer, w2: &Integer, v3_0: &Integer, v3_inf: &Integer) -> Polynomial {
    let c = to_rational(&(v3_0 - v3_inf));
    let d = to_rational(&(v3_0 + v3_inf));
    let a = to_rational(&(w1 * v3_inf + w2 * v3_0));
    let b = to_rational(&(w1 * v3_inf - w2 * v3_0));
    let lin = Polynomial::linear(a, b);
    &(&Polynomial::linear(c, -d) * &lin) * &lin
}

pub fn verify_se_ray(w1: &Integer, w2: &Integer, v3_0: &Integer, v3_inf: &Integer) -> bool {
    integrate_sym(&se_integrand(w1, w2, v3_0, v3_inf)).is_zero()
}

/// Quotient Bott orbifold `(M_3(a, b, c), Δ_m)` of a quasi-regular join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinQuotient {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    /// `(m1_0, m1_inf, m2_0, m2_inf, m3_0, m3_inf)`
    pub m: [Integer; 6],
    pub s: Integer,
    pub m3: Integer,
    pub n: Integer,
    pub b_hat: Integer,
    pub c_hat: Integer,
    /// `m2 v2_0 v2_inf`, the degree of the Hirzebruch cover.
    pub cover: Integer,
}

pub fn quotient_orbifold(spec: &JoinSpec, ray: &ReebRay) -> Result<JoinQuotient> {
    let (v3_0, v3_inf) = ray.v3().ok_or(Error::IrregularRay)?;
    let x = &spec.w1 * v3_inf - &spec.w2 * v3_0;
    if x.is_zero() {
        return Err(Error::DegenerateRay);
    }
    if x.is_negative() {
        return Err(Error::InvalidJoin(format!(
            "ray ({v3_0}, {v3_inf}) is oriented with w1 v3_inf < w2 v3_0"
        )));
    }
    let y = &spec.ypq;
    let s = x.gcd(&spec.l2);
    let m3 = &spec.l2 / &s;
    let n = exact_div(&spec.l1 * &x, &s, "n")?;
    let b_hat = y.b_hat()?;
    let c_hat = y.c_hat()?;
    Ok(JoinQuotient {
        a: y.a.clone(),
        b: &n * &b_hat,
        c: &n * &c_hat,
        m: [
            Integer::one(),
            Integer::one(),
            y.m2_0.clone(),
            y.m2_inf.clone(),
            &m3 * v3_0,
            &m3 * v3_inf,
        ],
        s,
        m3,
        n,
        b_hat,
        c_hat,
        cover: y.covering_degree(),
    })
}

impl JoinQuotient {
    /// The Bott orbifold with the integer `(a, b, c)` exactly as computed.
    pub fn bott_orbifold(&self) -> BottOrbifold {
        BottOrbifold::from_integers(&self.a, &self.b, &self.c, &self.m)
    }

    /// The orbifold whose log Fano test matches the construction: the twist
    /// `(b, c)` measured against the Hirzebruch cover, `(b, c) / (m2 v2_0 v2_inf)`.
    pub fn transverse_orbifold(&self) -> BottOrbifold {
        let cover = to_rational(&self.cover);
        let mut orb = self.bott_orbifold();
        orb.b = &orb.b / &cover;
        orb.c = &orb.c / &cover;
        orb
    }
}

/// `b x1 + c x2`, the pullback of `c1(L^n)`.
pub fn pullback_class(quotient: &JoinQuotient) -> CohClass {
    CohClass::new(
        Basis::X1X2X3,
        [
            to_rational(&quotient.b),
            to_rational(&quotient.c),
            Rational::zero(),
        ],
    )
}
