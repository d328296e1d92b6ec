//! Generalized orbifold Calabi data over a Hirzebruch orbifold and the
//! Kähler-Einstein conditions for compatible metrics
//!
//! ```text
//! g = (1/r3 + z) n g_base + dz² / Θ(z) + Θ(z) θ²
//! ```
//!
//! The Einstein profile is built as `Θ = F / (1 + r3 z)²` with
//! `F(z) = ∫_{-1}^{z} (1 + r3 t)² R(t) dt` and `R(t) = (1-t)/m3_inf - (1+t)/m3_0`.
//! This gives `Θ(-1) = 0` and both endpoint slopes for free; `Θ(1) = 0` is
//! exactly the second Einstein condition.

use std::fmt::Write as _;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::join::{JoinQuotient, JoinSpec, ReebRay};
use crate::kernel::{
    decimal_round, fraction_string, integrate_sym, sturm_positive_on, to_rational, Integer,
    Polynomial, Rational,
};

/// `r3 = (w1 v3_inf - w2 v3_0) / (w1 v3_inf + w2 v3_0)`.
pub fn r3_from_ray(
    w1: &Integer,
    w2: &Integer,
    v3_0: &Integer,
    v3_inf: &Integer,
) -> Result<Rational> {
    for x in [w1, w2, v3_0, v3_inf] {
        if !x.is_positive() {
            return Err(Error::InvalidCalabi(format!(
                "r3 needs positive inputs, got {x}"
            )));
        }
    }
    let num = w1 * v3_inf - w2 * v3_0;
    if num.is_zero() {
        return Err(Error::InvalidCalabi("r3 = 0: w1 v3_inf = w2 v3_0".into()));
    }
    let r3 = Rational::new(num, w1 * v3_inf + w2 * v3_0);
    debug_assert!(r3.abs() < Rational::one());
    Ok(r3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalabiData {
    pub a: Integer,
    pub m2_0: Integer,
    pub m2_inf: Integer,
    pub fano_index: Integer,
    pub v3_0: Integer,
    pub v3_inf: Integer,
    pub m3: Integer,
    pub n: Integer,
    pub r3: Rational,
}

impl CalabiData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: Integer,
        m2_0: Integer,
        m2_inf: Integer,
        fano_index: Integer,
        v3_0: Integer,
        v3_inf: Integer,
        m3: Integer,
        n: Integer,
        r3: Rational,
    ) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidCalabi(s));
        if !fano_index.is_positive() || !m2_0.is_positive() || !m2_inf.is_positive() {
            return bad("base data must be positive".into());
        }
        if !v3_0.is_positive() || !v3_inf.is_positive() || !v3_0.gcd(&v3_inf).is_one() {
            return bad(format!(
                "(v3_0, v3_inf) = ({v3_0}, {v3_inf}) must be coprime and positive"
            ));
        }
        if !m3.is_positive() {
            return bad(format!("m3 = {m3} must be positive"));
        }
        if n.is_zero() || !n.gcd(&m3).is_one() {
            return bad(format!("n = {n} must be nonzero and coprime to m3 = {m3}"));
        }
        if r3.is_zero() || r3.abs() >= Rational::one() || r3.is_positive() != n.is_positive() {
            return bad(format!(
                "r3 = {r3} must satisfy 0 < |r3| < 1 with the sign of n"
            ));
        }
        Ok(Self {
            a,
            m2_0,
            m2_inf,
            fano_index,
            v3_0,
            v3_inf,
            m3,
            n,
            r3,
        })
    }

    /// Calabi data of a quasi-regular join quotient.
    pub fn from_join(spec: &JoinSpec, ray: &ReebRay, quotient: &JoinQuotient) -> Result<Self> {
        let (v3_0, v3_inf) = ray.v3().ok_or(Error::IrregularRay)?;
        let r3 = r3_from_ray(&spec.w1, &spec.w2, v3_0, v3_inf)?;
        Self::new(
            spec.ypq.a.clone(),
            spec.ypq.m2_0.clone(),
            spec.ypq.m2_inf.clone(),
            spec.ypq.fano_index.clone(),
            v3_0.clone(),
            v3_inf.clone(),
            quotient.m3.clone(),
            quotient.n.clone(),
            r3,
        )
    }

    pub fn m3_0(&self) -> Integer {
        &self.m3 * &self.v3_0
    }

    pub fn m3_inf(&self) -> Integer {
        &self.m3 * &self.v3_inf
    }

    /// `R(z) = (1-z)/m3_inf - (1+z)/m3_0`.
    pub fn slope_function(&self) -> Polynomial {
        let (i0, ii) = (
            Rational::new(Integer::one(), self.m3_0()),
            Rational::new(Integer::one(), self.m3_inf()),
        );
        Polynomial::linear(&ii - &i0, -(&ii + &i0))
    }

    /// `(1 + r3 z)²`.
    pub fn weight(&self) -> Polynomial {
        let lin = Polynomial::linear(Rational::one(), self.r3.clone());
        &lin * &lin
    }

    pub fn ke2_integrand(&self) -> Polynomial {
        &self.slope_function() * &self.weight()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeConditions {
    pub ke1: bool,
    pub ke2: bool,
}

impl KeConditions {
    pub fn both(&self) -> bool {
        self.ke1 && self.ke2
    }
}

pub fn ke_conditions(data: &CalabiData) -> KeConditions {
    let r = &data.r3;
    let one = Rational::one();
    let lhs =
        Rational::from_integer(2.into()) * r * to_rational(&data.fano_index) / to_rational(&data.n);
    let rhs = (&one + r) / to_rational(&data.m3_inf()) + (&one - r) / to_rational(&data.m3_0());
    KeConditions {
        ke1: lhs == rhs,
        ke2: integrate_sym(&data.ke2_integrand()).is_zero(),
    }
}

/// `Θ(z) = F(z) / (1 + r3 z)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalabiProfile {
    pub r3: Rational,
    pub f: Polynomial,
    pub m3_0: Integer,
    pub m3_inf: Integer,
}

pub fn ke_profile(data: &CalabiData) -> Result<CalabiProfile> {
    let ke = ke_conditions(data);
    if !ke.both() {
        return Err(Error::NotKahlerEinstein {
            ke1: ke.ke1,
            ke2: ke.ke2,
        });
    }
    let prim = data.ke2_integrand().antiderivative();
    let f = &prim - &Polynomial::constant(prim.eval(&-Rational::one()));
    let (lo, hi) = (-Rational::one(), Rational::one());
    if !f.eval(&hi).is_zero() {
        return Err(Error::Consistency(format!(
            "F(1) = {} despite KE2",
            f.eval(&hi)
        )));
    }
    if !sturm_positive_on(&f, &lo, &hi) {
        return Err(Error::ProfileNotPositive);
    }
    Ok(CalabiProfile {
        r3: data.r3.clone(),
        f,
        m3_0: data.m3_0(),
        m3_inf: data.m3_inf(),
    })
}

impl CalabiProfile {
    fn weight_at(&self, z: &Rational) -> Rational {
        let w = Rational::one() + &self.r3 * z;
        &w * &w
    }

    pub fn theta(&self, z: &Rational) -> Rational {
        self.f.eval(z) / self.weight_at(z)
    }

    /// `Θ'(z) = (F' w - F w') / w²` with `w = (1 + r3 z)²`.
    pub fn theta_derivative(&self, z: &Rational) -> Rational {
        let w = self.weight_at(z);
        let dw = Rational::from_integer(2.into()) * &self.r3 * (Rational::one() + &self.r3 * z);
        (self.f.derivative().eval(z) * &w - self.f.eval(z) * dw) / (&w * &w)
    }
}

/// Coefficients of `g_base`, `dz²` and `θ²` at an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricComponents {
    pub base_scale: Rational,
    pub dz2: Rational,
    pub theta2: Rational,
}

pub fn metric_components(
    profile: &CalabiProfile,
    n: &Integer,
    z: &Rational,
) -> Result<MetricComponents> {
    if z.abs() >= Rational::one() {
        return Err(Error::InvalidCalabi(format!("z = {z} is not in (-1, 1)")));
    }
    let theta = profile.theta(z);
    if theta.is_zero() {
        return Err(Error::ProfileVanishes(z.clone()));
    }
    let base_scale = (profile.r3.recip() + z) * to_rational(n);
    if !base_scale.is_positive() {
        return Err(Error::InvalidCalabi(format!(
            "base scale {base_scale} is not positive at z = {z}"
        )));
    }
    Ok(MetricComponents {
        base_scale,
        dz2: theta.recip(),
        theta2: theta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub z: Rational,
    pub theta: Rational,
}

/// `Θ` on the grid `z_i = -1 + 2i/grid`, `i = 0..=grid`.
pub fn profile_table(profile: &CalabiProfile, grid: u32) -> Vec<ProfileRow> {
    assert!(grid >= 1, "grid needs at least one step");
    (0..=grid)
        .map(|i| {
            let z = Rational::new(
                Integer::from(2 * i64::from(i) - i64::from(grid)),
                Integer::from(grid),
            );
            ProfileRow {
                theta: profile.theta(&z),
                z,
            }
        })
        .collect()
}

/// Plain-text dump: the coefficients of `F`, then one `z  Θ(z)` line per
/// grid point, with an optional rounded decimal column.
pub fn render_profile(profile: &CalabiProfile, rows: &[ProfileRow], digits: Option<u32>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# r3 = {}", fraction_string(&profile.r3));
    let _ = writeln!(out, "# m3 = ({}, {})", profile.m3_0, profile.m3_inf);
    for (i, c) in profile.f.coeffs().iter().enumerate() {
        let _ = writeln!(out, "# F[{i}] = {}", fraction_string(c));
    }
    match digits {
        Some(_) => out.push_str("z\ttheta\ttheta_decimal\n"),
        None => out.push_str("z\ttheta\n"),
    }
    for row in rows {
        let _ = write!(
            out,
            "{}\t{}",
            fraction_string(&row.z),
            fraction_string(&row.theta)
        );
        if let Some(d) = digits {
            let _ = write!(out, "\t{}", decimal_round(&row.theta, d));
        }
        out.push('\n');
    }
    out
}
