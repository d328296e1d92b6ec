//! Exact arithmetic substrate: big integers and rationals, dense rational
//! polynomials, integration over `[-1, 1]`, and certified real roots.
//!
//! Everything downstream is built on [`Integer`] and [`Rational`]; nothing in
//! this crate touches floating point except for display helpers.

mod poly;
mod roots;

use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};

pub use num_bigint::BigInt as Integer;
pub use num_rational::BigRational as Rational;

pub use poly::Polynomial;
pub use roots::{
    cubic_real_roots, default_isolation_width, real_roots, sturm_positive_on, AlgebraicRoot,
    RealRoot, SturmSequence,
};

use crate::error::{Error, Result};

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn to_rational(n: &Integer) -> Rational {
    Rational::from_integer(n.clone())
}

/// `Some(r)` with `r * r == n` when `n` is a perfect square.
pub fn integer_sqrt_exact(n: &Integer) -> Result<Option<Integer>> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.clone()));
    }
    let r = n.sqrt();
    Ok((&r * &r == *n).then_some(r))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(x.numer()).ok()??;
    let d = integer_sqrt_exact(x.denom()).ok()??;
    Some(Rational::new(n, d))
}

/// Real roots of `a t^2 + b t + c`, ascending. Roots are exact rationals when
/// the discriminant is a rational square, otherwise isolated algebraic roots.
pub fn solve_quadratic_rational(a: &Rational, b: &Rational, c: &Rational) -> Result<Vec<RealRoot>> {
    if a.is_zero() {
        return Err(Error::DegenerateEquation);
    }
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let two_a = Rational::from_integer(2.into()) * a;
    if let Some(s) = rational_sqrt_exact(&disc) {
        let mut roots = vec![(-b - &s) / &two_a, (-b + &s) / &two_a];
        roots.sort();
        roots.dedup();
        return Ok(roots.into_iter().map(RealRoot::Rational).collect());
    }
    real_roots(&Polynomial::new(vec![c.clone(), b.clone(), a.clone()]))
}

/// Exact `∫_{-1}^{1} p(z) dz`; odd terms vanish.
pub fn integrate_sym(p: &Polynomial) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(j, c)| c * Rational::new(Integer::from(2), Integer::from(j + 1)))
        .sum()
}

pub(crate) fn pow10(digits: u32) -> Integer {
    num_traits::pow(Integer::from(10), digits as usize)
}

fn format_scaled(n: &Integer, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Largest decimal with `digits` fractional digits that is `<= x`.
pub fn decimal_floor(x: &Rational, digits: u32) -> String {
    let scaled = (x * Rational::from_integer(pow10(digits)))
        .floor()
        .to_integer();
    format_scaled(&scaled, digits)
}

/// Smallest decimal with `digits` fractional digits that is `>= x`.
pub fn decimal_ceil(x: &Rational, digits: u32) -> String {
    let scaled = (x * Rational::from_integer(pow10(digits)))
        .ceil()
        .to_integer();
    format_scaled(&scaled, digits)
}

/// `x` rounded half away from zero to `digits` fractional digits.
pub fn decimal_round(x: &Rational, digits: u32) -> String {
    let scaled = (x * Rational::from_integer(pow10(digits)))
        .round()
        .to_integer();
    format_scaled(&scaled, digits)
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Always `num/den`, also for integers.
pub fn fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `n`, `n/d`, or a terminating decimal such as `1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = Integer::from_str(n.trim()).map_err(|_| bad())?;
        let d = Integer::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w = if whole.is_empty() || whole == "-" {
            Integer::zero()
        } else {
            Integer::from_str(whole).map_err(|_| bad())?.abs()
        };
        let f = Integer::from_str(frac).map_err(|_| bad())?;
        let scale = pow10(frac.len() as u32);
        let mut r = Rational::new(w * &scale + f, scale);
        if neg {
            r = -r;
        }
        return Ok(r);
    }
    Integer::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn sqrt_examples() {
        // 4*13^2 - 3*8^2
        assert_eq!(
            integer_sqrt_exact(&int(4 * 169 - 3 * 64)).unwrap(),
            Some(int(22))
        );
        assert_eq!(integer_sqrt_exact(&int(0)).unwrap(), Some(int(0)));
        assert_eq!(integer_sqrt_exact(&int(33)).unwrap(), None);
        assert!(matches!(
            integer_sqrt_exact(&int(-4)),
            Err(Error::NegativeSqrt(_))
        ));
    }

    #[test]
    fn quadratic_examples() {
        let roots = |a, b, c| {
            solve_quadratic_rational(&rat(a, 1), &rat(b, 1), &rat(c, 1))
                .unwrap()
                .into_iter()
                .map(|r| r.as_rational().cloned().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(roots(5, 8, -21), vec![rat(-3, 1), rat(7, 5)]);
        assert_eq!(roots(1, 0, -1), vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(roots(4, 3, -10), vec![rat(-2, 1), rat(5, 4)]);
        assert!(matches!(
            solve_quadratic_rational(&rat(0, 1), &rat(1, 1), &rat(1, 1)),
            Err(Error::DegenerateEquation)
        ));
    }

    #[test]
    fn quadratic_irrational_and_complex() {
        let r = solve_quadratic_rational(&rat(1, 1), &rat(0, 1), &rat(-2, 1)).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| matches!(x, RealRoot::Algebraic(_))));
        assert!(solve_quadratic_rational(&rat(1, 1), &rat(0, 1), &rat(1, 1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(integrate_sym(&Polynomial::z()), rat(0, 1));
        // Einstein-ray integrand for (p,q)=(13,7), (v0,vinf)=(4,3)
        let p = Polynomial::from_integers([84, -552, -252]);
        assert_eq!(integrate_sym(&p), rat(0, 1));
        assert_eq!(
            integrate_sym(&Polynomial::from_integers([1, 0, 1])),
            rat(8, 3)
        );
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_floor(&rat(-1, 3), 3), "-0.334");
        assert_eq!(decimal_ceil(&rat(-1, 3), 3), "-0.333");
        assert_eq!(decimal_round(&rat(5, 144), 6), "0.034722");
        assert_eq!(decimal_floor(&rat(7, 1), 0), "7");
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in small_rational(), y in small_rational(), z in small_rational()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            let renorm = Rational::new(x.numer().clone(), x.denom().clone());
            prop_assert_eq!(&renorm, &x);
            prop_assert!(x.denom().is_positive());
        }

        #[test]
        fn sqrt_of_square(bytes in proptest::collection::vec(any::<u8>(), 1..64)) {
            let n = Integer::from_bytes_be(num_bigint::Sign::Plus, &bytes);
            prop_assert_eq!(integer_sqrt_exact(&(&n * &n)).unwrap(), Some(n.clone()));
            if !n.is_zero() {
                prop_assert_eq!(integer_sqrt_exact(&(&n * &n + 1)).unwrap(), None);
            }
        }

        #[test]
        fn integrate_ignores_odd_part(c in proptest::collection::vec(-50i64..50, 0..7)) {
            let p = Polynomial::from_integers(c.iter().copied());
            prop_assert_eq!(integrate_sym(&p), integrate_sym(&p.even_part()));
        }

        #[test]
        fn integrate_even_monomials(j in 0usize..12) {
            let mut c = vec![Rational::zero(); 2 * j + 1];
            c[2 * j] = Rational::one();
            prop_assert_eq!(integrate_sym(&Polynomial::new(c)), rat(2, 2 * j as i64 + 1));
        }

        #[test]
        fn cubic_roots_are_roots(c in proptest::collection::vec(-30i64..30, 3), lead in 1i64..30) {
            let mut coeffs = c.clone();
            coeffs.push(lead);
            let p = Polynomial::from_integers(coeffs);
            for r in cubic_real_roots(&p).unwrap() {
                match r {
                    RealRoot::Rational(x) => prop_assert!(p.eval(&x).is_zero()),
                    RealRoot::Algebraic(a) => {
                        let sq = p.squarefree();
                        prop_assert!(sq.sign_at(a.lo()) * sq.sign_at(a.hi()) < 0);
                    }
                }
            }
        }
    }
}
