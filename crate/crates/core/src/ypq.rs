//! Quasi-regular Sasaki-Einstein structures on `Y^{p,q}` and their quotient
//! Hirzebruch orbifolds `(H_a, Δ_{m2})`.
//!
//! The Einstein ray `(v2_0, v2_inf)` is the coprime solution of
//!
//! ```text
//! ∫_{-1}^{1} ((v0 - vinf) - (v0 + vinf) z) (((p+q) vinf + (p-q) v0) + ((p+q) vinf - (p-q) v0) z) dz = 0.
//! ```
//!
//! Expanding, with `α = (p+q)/l`, `β = (p-q)/l`, `l = gcd(p+q, p-q)` and
//! `t = v0 / vinf`, the integral is `(2/3) vinf² l (2βt² + (α-β)t - 2α) · 2`
//! up to a positive factor, so the ray is the positive root of
//! `2β t² + (α - β) t - 2α = 0`. Its discriminant is `4(4p² - 3q²)/l²`, which
//! is why quasi-regularity is the perfect-square condition.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{
    integer_sqrt_exact, integrate_sym, solve_quadratic_rational, to_rational, Integer, Polynomial,
    Rational, RealRoot,
};

/// Validated `(p, q)` with `p > q >= 1` and `gcd(p, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YpqInput {
    p: Integer,
    q: Integer,
}

impl YpqInput {
    pub fn new(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        let reason = if q < Integer::one() {
            Some("q must be at least 1")
        } else if p <= q {
            Some("p must exceed q")
        } else if !p.gcd(&q).is_one() {
            Some("p and q must be coprime")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidYpq { p, q, reason }),
            None => Ok(Self { p, q }),
        }
    }

    pub fn p(&self) -> &Integer {
        &self.p
    }

    pub fn q(&self) -> &Integer {
        &self.q
    }

    /// `l = gcd(p+q, p-q)`: 2 when p and q are both odd, else 1.
    pub fn l(&self) -> Integer {
        (&self.p + &self.q).gcd(&(&self.p - &self.q))
    }

    /// `((p+q)/l, (p-q)/l)`, the weights of the second `S^3` factor.
    pub fn weights(&self) -> (Integer, Integer) {
        let l = self.l();
        ((&self.p + &self.q) / &l, (&self.p - &self.q) / &l)
    }
}

pub fn is_quasi_regular(p: &Integer, q: &Integer) -> Result<bool> {
    let input = YpqInput::new(p.clone(), q.clone())?;
    let disc = Integer::from(4) * &input.p * &input.p - Integer::from(3) * &input.q * &input.q;
    Ok(integer_sqrt_exact(&disc)?.is_some())
}

/// The coprime Einstein ray `(v2_0, v2_inf)` of a quasi-regular `Y^{p,q}`.
pub fn einstein_ray(p: &Integer, q: &Integer) -> Result<(Integer, Integer)> {
    let input = YpqInput::new(p.clone(), q.clone())?;
    let not_qr = || Error::NotQuasiRegular {
        p: p.clone(),
        q: q.clone(),
    };
    if !is_quasi_regular(p, q)? {
        return Err(not_qr());
    }
    let (alpha, beta) = input.weights();
    let (alpha, beta) = (to_rational(&alpha), to_rational(&beta));
    let two = Rational::from_integer(2.into());
    let roots = solve_quadratic_rational(&(&two * &beta), &(&alpha - &beta), &(-&two * &alpha))?;
    // The product of the roots is -α/β < 0, so exactly one is positive.
    let positive = roots
        .into_iter()
        .find(|r| r.cmp_rational(&Rational::zero()).is_gt())
        .ok_or_else(not_qr)?;
    match positive {
        RealRoot::Rational(t) => Ok((t.numer().clone(), t.denom().clone())),
        RealRoot::Algebraic(_) => Err(not_qr()),
    }
}

/// The integrand of the Einstein-ray equation as a polynomial in `z`.
pub fn einstein_integrand(p: &Integer, q: &Integer, v0: &Integer, vinf: &Integer) -> Polynomial {
    let c = to_rational(&(v0 - vinf));
    let d = to_rational(&(v0 + vinf));
    let e = to_rational(&((p + q) * vinf + (p - q) * v0));
    let f = to_rational(&((p + q) * vinf - (p - q) * v0));
    &Polynomial::linear(c, -d) * &Polynomial::linear(e, f)
}

/// Branch data and degree of the quotient Hirzebruch orbifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirzebruchQuotient {
    pub m2: Integer,
    pub m2_0: Integer,
    pub m2_inf: Integer,
    pub a: Integer,
}

pub fn hirzebruch_quotient(
    p: &Integer,
    q: &Integer,
    v0: &Integer,
    vinf: &Integer,
) -> Result<HirzebruchQuotient> {
    let input = YpqInput::new(p.clone(), q.clone())?;
    if !v0.is_positive() || !vinf.is_positive() || !v0.gcd(vinf).is_one() {
        return Err(Error::Consistency(format!(
            "ray ({v0}, {vinf}) must be a coprime pair of positive integers"
        )));
    }
    let (alpha, beta) = input.weights();
    let shift = (&alpha * vinf - &beta * v0).abs();
    let m2 = p / p.gcd(&shift);
    let m2_0 = &m2 * v0;
    let m2_inf = &m2 * vinf;
    let numer = (p + q) * &m2_inf - (p - q) * &m2_0;
    let (a, rem) = numer.div_rem(p);
    if !rem.is_zero() {
        return Err(Error::Consistency(format!(
            "Hirzebruch degree {numer}/{p} is not integral"
        )));
    }
    Ok(HirzebruchQuotient {
        m2,
        m2_0,
        m2_inf,
        a,
    })
}

/// Fano index `gcd((2 m2 v0 + a) vinf, v0 + vinf)` of the quotient orbifold.
pub fn fano_index(m2: &Integer, v0: &Integer, vinf: &Integer, a: &Integer) -> Integer {
    ((Integer::from(2) * m2 * v0 + a) * vinf).gcd(&(v0 + vinf))
}

/// A quasi-regular Sasaki-Einstein `Y^{p,q}` with its quotient data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YpqEinstein {
    pub p: Integer,
    pub q: Integer,
    pub l: Integer,
    pub v2_0: Integer,
    pub v2_inf: Integer,
    pub m2: Integer,
    pub m2_0: Integer,
    pub m2_inf: Integer,
    pub a: Integer,
    pub fano_index: Integer,
}

impl YpqEinstein {
    /// Runs the full pipeline and cross-checks the Einstein integral.
    pub fn solve(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<Self> {
        let input = YpqInput::new(p, q)?;
        let (p, q) = (input.p(), input.q());
        if !is_quasi_regular(p, q)? {
            return Err(Error::NotQuasiRegular {
                p: p.clone(),
                q: q.clone(),
            });
        }
        let (v2_0, v2_inf) = einstein_ray(p, q)?;
        let integral = integrate_sym(&einstein_integrand(p, q, &v2_0, &v2_inf));
        if !integral.is_zero() {
            return Err(Error::Consistency(format!(
                "Einstein integral for Y^{{{p},{q}}} is {integral}, not 0"
            )));
        }
        let hq = hirzebruch_quotient(p, q, &v2_0, &v2_inf)?;
        let index = fano_index(&hq.m2, &v2_0, &v2_inf, &hq.a);
        Ok(Self {
            p: p.clone(),
            q: q.clone(),
            l: input.l(),
            v2_0,
            v2_inf,
            m2: hq.m2,
            m2_0: hq.m2_0,
            m2_inf: hq.m2_inf,
            a: hq.a,
            fano_index: index,
        })
    }

    /// The homogeneous structure on `S^2 × S^3`, formally `(p, q) = (1, 0)`:
    /// unit ray and branch data over `CP^1 × CP^1`.
    pub fn homogeneous() -> Self {
        let one = Integer::one();
        let a = Integer::zero();
        let index = fano_index(&one, &one, &one, &a);
        Self {
            p: one.clone(),
            q: Integer::zero(),
            l: one.clone(),
            v2_0: one.clone(),
            v2_inf: one.clone(),
            m2: one.clone(),
            m2_0: one.clone(),
            m2_inf: one,
            a,
            fano_index: index,
        }
    }

    /// Degree `m2 v2_0 v2_inf` of the orbifold cover `Y^{p,q} → (H_a, Δ)`.
    pub fn covering_degree(&self) -> Integer {
        &self.m2 * &self.v2_0 * &self.v2_inf
    }

    /// `b̂ = (2 m2 v2_0 + a) v2_inf / I`.
    pub fn b_hat(&self) -> Result<Integer> {
        exact_div(
            (Integer::from(2) * &self.m2 * &self.v2_0 + &self.a) * &self.v2_inf,
            &self.fano_index,
            "b̂",
        )
    }

    /// `ĉ = (v2_0 + v2_inf) / I`.
    pub fn c_hat(&self) -> Result<Integer> {
        exact_div(&self.v2_0 + &self.v2_inf, &self.fano_index, "ĉ")
    }
}

pub(crate) fn exact_div(n: Integer, d: &Integer, what: &str) -> Result<Integer> {
    let (quot, rem) = n.div_rem(d);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(Error::Consistency(format!(
            "{what} = {n}/{d} is not integral"
        )))
    }
}

/// `(p, q) = (12k² + 18k + 7, 12k² + 16k + 5)`.
pub fn family_pq(k2: u64) -> (Integer, Integer) {
    let k = Integer::from(k2);
    let k_sq = &k * &k;
    (
        Integer::from(12) * &k_sq + Integer::from(18) * &k + 7,
        Integer::from(12) * &k_sq + Integer::from(16) * &k + 5,
    )
}

/// Member `k2` of the one-parameter family, solved through the generic
/// pipeline and checked against the closed forms
/// `m2 = p`, `v2 = (3 + 4k2, 2(1 + k2))`, `a = 6(1+k2)(1+2k2)(3+4k2)`, `I = 5 + 6k2`.
pub fn family_member(k2: u64) -> Result<YpqEinstein> {
    let (p, q) = family_pq(k2);
    let y = YpqEinstein::solve(p.clone(), q)?;
    let k = Integer::from(k2);
    let expected = [
        ("m2", p.clone()),
        ("v2_0", Integer::from(3) + Integer::from(4) * &k),
        ("v2_inf", Integer::from(2) * (&k + 1)),
        (
            "a",
            Integer::from(6) * (&k + 1) * (Integer::from(2) * &k + 1) * (Integer::from(4) * &k + 3),
        ),
        ("fano_index", Integer::from(6) * &k + 5),
    ];
    let actual = [&y.m2, &y.v2_0, &y.v2_inf, &y.a, &y.fano_index];
    for ((name, want), got) in expected.iter().zip(actual) {
        if want != got {
            return Err(Error::Consistency(format!(
                "family k2={k2}: {name} is {got}, closed form gives {want}"
            )));
        }
    }
    Ok(y)
}
