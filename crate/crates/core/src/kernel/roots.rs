//! Sturm sequences, real-root isolation, and algebraic numbers carried as
//! (polynomial, isolating interval) pairs.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{sign, Polynomial};
use super::{decimal_ceil, decimal_floor, pow10, Integer, Rational};
use crate::error::{Error, Result};

/// Refinement target for isolating intervals of irrational roots.
pub fn default_isolation_width() -> Rational {
    Rational::new(Integer::one(), pow10(30))
}

// Integer multiple of a polynomial (positive factor) for sign evaluation
// without rational normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<Integer>);

impl IntPoly {
    fn new(p: &Polynomial) -> Self {
        use num_integer::Integer as _;
        let lcm = p
            .coeffs()
            .iter()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        Self(
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
    }

    fn sign_at(&self, x: &Rational) -> i8 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = Integer::zero();
        let mut dpow = Integer::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = d^deg p(x) with d > 0.
        if acc.is_positive() {
            1
        } else if acc.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Sturm sequence of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Polynomial>,
    ints: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &Polynomial) -> Self {
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            let ints = vec![IntPoly::new(&p0)];
            return Self { chain, ints };
        }
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let next = -&prev.rem(&cur);
            prev = cur;
            cur = next;
        }
        let ints = chain.iter().map(IntPoly::new).collect();
        Self { chain, ints }
    }

    pub fn squarefree(&self) -> &Polynomial {
        &self.chain[0]
    }

    /// Number of sign changes at `x`, zeros dropped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.ints {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        debug_assert!(lo < hi);
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let n = self.count_half_open(lo, hi);
        if self.ints[0].sign_at(hi) == 0 {
            n - 1
        } else {
            n
        }
    }
}

/// An irrational real root: the unique root of a squarefree polynomial in an
/// open interval `(lo, hi)` across which the polynomial changes sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicRoot {
    poly: Polynomial,
    ip: IntPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicRoot {
    /// Checks the isolation invariant before accepting the interval.
    pub fn new(poly: &Polynomial, lo: Rational, hi: Rational) -> Result<Self> {
        let seq = SturmSequence::new(poly);
        let sq = seq.squarefree().clone();
        if lo >= hi || sq.sign_at(&lo) * sq.sign_at(&hi) >= 0 || seq.count_open(&lo, &hi) != 1 {
            return Err(Error::Consistency(format!(
                "({lo}, {hi}) does not isolate a root of {poly}"
            )));
        }
        Ok(Self {
            ip: IntPoly::new(&sq),
            poly: sq,
            lo,
            hi,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let s_mid = self.ip.sign_at(&mid);
        if s_mid == 0 {
            // Only reachable for a rational root; keep a nondegenerate interval.
            let quarter = self.width() / Rational::from_integer(4.into());
            self.lo = &mid - &quarter;
            self.hi = &mid + &quarter;
        } else if self.ip.sign_at(&self.lo) * s_mid < 0 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until the interval is narrower than `width`.
    pub fn refined(&self, width: &Rational) -> Self {
        let mut r = self.clone();
        while r.width() >= *width {
            r.bisect();
        }
        r
    }

    /// `c * root` for `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Self {
        assert!(c.is_positive(), "scale factor must be positive");
        let poly = self.poly.compose_scale(&c.recip()).monic();
        Self {
            ip: IntPoly::new(&poly),
            poly,
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        let mut r = self.clone();
        loop {
            if *x <= r.lo {
                return Ordering::Greater;
            }
            if *x >= r.hi {
                return Ordering::Less;
            }
            if r.ip.sign_at(x) == 0 {
                return Ordering::Equal;
            }
            r.bisect();
        }
    }

    /// Certified decimal bounds `lo <= root <= hi` with `digits` fractional digits.
    pub fn decimal_bounds(&self, digits: u32) -> (String, String) {
        let target = Rational::new(Integer::one(), pow10(digits));
        let r = self.refined(&target);
        (decimal_floor(&r.lo, digits), decimal_ceil(&r.hi, digits))
    }

    pub fn approx_f64(&self) -> f64 {
        let r = self.refined(&Rational::new(Integer::one(), pow10(17)));
        let mid = (&r.lo + &r.hi) / Rational::from_integer(2.into());
        super::to_f64(&mid)
    }
}

impl fmt::Display for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in ({}, {})", self.poly, self.lo, self.hi)
    }
}

/// A real root, exact when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Rational(Rational),
    Algebraic(AlgebraicRoot),
}

impl RealRoot {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealRoot::Rational(r) => Some(r),
            RealRoot::Algebraic(_) => None,
        }
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        match self {
            RealRoot::Rational(r) => r.cmp(x),
            RealRoot::Algebraic(a) => a.cmp_rational(x),
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => super::to_f64(r),
            RealRoot::Algebraic(a) => a.approx_f64(),
        }
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealRoot::Rational(r) => write!(f, "{r}"),
            RealRoot::Algebraic(a) => a.fmt(f),
        }
    }
}

/// All distinct real roots in ascending order: rational roots exactly,
/// irrational ones as intervals narrower than [`default_isolation_width`].
pub fn real_roots(p: &Polynomial) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let seq = SturmSequence::new(p);
    let sq = seq.squarefree().clone();
    if sq.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let lead = Rational::from_integer(sq.primitive_integer().last().unwrap().abs());
    let bound = sq.cauchy_bound();

    let mut isolated = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match seq.count_half_open(&lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    isolated.sort();

    let width = default_isolation_width();
    let mut roots = Vec::with_capacity(isolated.len());
    for (lo, hi) in isolated {
        roots.push(resolve_root(&seq, &lead, lo, hi, &width));
    }
    Ok(roots)
}

// `(lo, hi]` holds exactly one root of the squarefree polynomial.
fn resolve_root(
    seq: &SturmSequence,
    lead: &Rational,
    mut lo: Rational,
    mut hi: Rational,
    width: &Rational,
) -> RealRoot {
    let sq = &seq.ints[0];
    let two = Rational::from_integer(2.into());
    if sq.sign_at(&hi) == 0 {
        return RealRoot::Rational(hi);
    }
    // A root sitting on `lo` belongs to the neighbouring interval.
    while sq.sign_at(&lo) == 0 {
        let mid = (&lo + &hi) / &two;
        if seq.count_half_open(&lo, &mid) == 1 {
            if sq.sign_at(&mid) == 0 {
                return RealRoot::Rational(mid);
            }
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Any rational root r satisfies lead * r in Z; narrow until at most one
    // candidate numerator remains.
    let unit = lead.recip();
    loop {
        if &hi - &lo < unit {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let s = sq.sign_at(&mid);
        if s == 0 {
            return RealRoot::Rational(mid);
        }
        if sq.sign_at(&lo) * s < 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let first: Integer = (&lo * lead).floor().to_integer() + Integer::one();
    let last: Integer = (&hi * lead).ceil().to_integer() - Integer::one();
    let mut n = first;
    while n <= last {
        let candidate = Rational::new(n.clone(), lead.to_integer());
        if sq.sign_at(&candidate) == 0 {
            return RealRoot::Rational(candidate);
        }
        n += 1;
    }
    let poly = seq.squarefree().clone();
    let root = AlgebraicRoot {
        poly,
        ip: sq.clone(),
        lo,
        hi,
    };
    RealRoot::Algebraic(root.refined(width))
}

/// Real roots of a cubic.
pub fn cubic_real_roots(p: &Polynomial) -> Result<Vec<RealRoot>> {
    match p.degree() {
        Some(3) => real_roots(p),
        d => Err(Error::WrongDegree {
            expected: 3,
            actual: d.unwrap_or(0),
        }),
    }
}

/// True iff `p` has no root in `(lo, hi)` and is positive at the midpoint.
/// Roots at the endpoints are allowed.
pub fn sturm_positive_on(p: &Polynomial, lo: &Rational, hi: &Rational) -> bool {
    assert!(lo < hi, "sturm_positive_on requires lo < hi");
    if p.is_zero() {
        return false;
    }
    let seq = SturmSequence::new(p);
    let mid = (lo + hi) / Rational::from_integer(2.into());
    seq.count_open(lo, hi) == 0 && sign(&p.eval(&mid)) > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_integers(c.iter().copied())
    }

    // Bisection on a sign change using f64; independent of the Sturm path.
    fn bisect_oracle(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
        let f = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(lo) * f(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn cubic_with_single_rational_root() {
        let roots = cubic_real_roots(&p(&[-102, -57, -12, 33])).unwrap();
        assert_eq!(roots, vec![RealRoot::Rational(rat(2, 1))]);
    }

    #[test]
    fn cubic_with_irrational_root() {
        let roots = cubic_real_roots(&p(&[-2, -1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        let RealRoot::Algebraic(a) = &roots[0] else {
            panic!("expected irrational root")
        };
        assert!(a.lo() >= &rat(3, 2) && a.hi() <= &rat(2, 1));
        assert!(a.width() < default_isolation_width());
        let oracle = bisect_oracle(&[-2.0, -1.0, 0.0, 1.0], 1.5, 2.0);
        assert!((a.approx_f64() - oracle).abs() < 1e-12);
        assert!((oracle - 1.5214).abs() < 1e-4);
    }

    #[test]
    fn cubic_with_repeated_factor() {
        // 27(k^3 - 1)
        let roots = cubic_real_roots(&p(&[-27, 0, 0, 27])).unwrap();
        assert_eq!(roots, vec![RealRoot::Rational(rat(1, 1))]);
        // (z-1)^2 (z+3): distinct roots only
        let roots = cubic_real_roots(&p(&[3, -5, 1, 1])).unwrap();
        assert_eq!(
            roots,
            vec![
                RealRoot::Rational(rat(-3, 1)),
                RealRoot::Rational(rat(1, 1))
            ]
        );
    }

    #[test]
    fn cubic_rejects_wrong_degree() {
        assert!(matches!(
            cubic_real_roots(&p(&[1, 0, 1])),
            Err(Error::WrongDegree {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn three_rational_roots_found_exactly() {
        // (2z - 1)(z + 1)(3z - 4) = 6z^3 - 5z^2 - 7z + 4
        let roots = real_roots(&p(&[4, -7, -5, 6])).unwrap();
        assert_eq!(
            roots,
            vec![
                RealRoot::Rational(rat(-1, 1)),
                RealRoot::Rational(rat(1, 2)),
                RealRoot::Rational(rat(4, 3)),
            ]
        );
    }

    #[test]
    fn mixed_roots_in_order() {
        // (z^2 - 2)(z - 1): -sqrt2, 1, sqrt2
        let roots = real_roots(&p(&[2, -2, -1, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(matches!(roots[1], RealRoot::Rational(ref r) if *r == rat(1, 1)));
        assert!((roots[0].approx_f64() + 2f64.sqrt()).abs() < 1e-12);
        assert!((roots[2].approx_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sturm_counts() {
        let seq = SturmSequence::new(&p(&[0, -1, 0, 1])); // z^3 - z
        assert_eq!(seq.count_half_open(&rat(-2, 1), &rat(2, 1)), 3);
        assert_eq!(seq.count_half_open(&rat(-1, 1), &rat(1, 1)), 2); // (-1, 1]
        assert_eq!(seq.count_open(&rat(-1, 1), &rat(1, 1)), 1);
    }

    #[test]
    fn positivity() {
        assert!(sturm_positive_on(&p(&[1, 0, -1]), &rat(-1, 1), &rat(1, 1)));
        assert!(!sturm_positive_on(&p(&[0, 1]), &rat(-1, 1), &rat(1, 1)));
        assert!(!sturm_positive_on(&p(&[-1, 0, 1]), &rat(-1, 1), &rat(1, 1)));
        assert!(!sturm_positive_on(
            &Polynomial::zero(),
            &rat(-1, 1),
            &rat(1, 1)
        ));
        // touching zero inside the interval is not positive
        assert!(!sturm_positive_on(&p(&[0, 0, 1]), &rat(-1, 1), &rat(1, 1)));
    }

    #[test]
    fn scaled_root_and_comparisons() {
        let RealRoot::Algebraic(k) = real_roots(&p(&[-2, -1, 0, 1])).unwrap().remove(0) else {
            panic!()
        };
        let half = k.scaled(&rat(1, 2));
        assert!(
            half.poly().eval(half.lo()).is_negative() != half.poly().eval(half.hi()).is_negative()
        );
        assert_eq!(half.cmp_rational(&rat(3, 4)), Ordering::Greater);
        assert_eq!(half.cmp_rational(&rat(4, 5)), Ordering::Less);
        let (lo, hi) = k.decimal_bounds(10);
        assert_eq!(lo, "1.5213797068");
        assert_eq!(hi, "1.5213797069");
    }

    #[test]
    fn algebraic_root_rejects_bad_interval() {
        assert!(AlgebraicRoot::new(&p(&[-2, 0, 1]), rat(0, 1), rat(1, 1)).is_err());
        assert!(AlgebraicRoot::new(&p(&[-2, 0, 1]), rat(1, 1), rat(2, 1)).is_ok());
    }
}
