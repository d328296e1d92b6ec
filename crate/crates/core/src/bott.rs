//! Stage three Bott orbifolds `(M_3(a, b, c), Δ_m)`: fan, the four
//! distinguished cohomology bases, `c1^orb`, the log Fano test, the
//! cohomology ring, the `H^3` obstruction matrix and the monoid action on `m`.
//!
//! Ramification values are rational so that cone-angle data is covered.
//! Classes in the `x` basis relate to the others through
//! `y1 = x1`, `y2 = a x1 + x2`, `y3 = b x1 + c x2 + x3`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{to_rational, Integer, Rational};

/// Rays of the fan. `v[i]` is the standard basis vector, `u[i]` its partner
/// in the primitive collection `{v_i, u_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub v: [[Integer; 3]; 3],
    pub u: [[Integer; 3]; 3],
}

pub fn fan(a: &Integer, b: &Integer, c: &Integer) -> Fan {
    let z = Integer::zero;
    let o = Integer::one;
    Fan {
        v: [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]],
        u: [[-o(), -a, -b], [z(), -o(), -c], [z(), z(), -o()]],
    }
}

impl Fan {
    /// `v_i + u_i` for each primitive collection; each lies in the span of
    /// the later `u_j`: `v1 + u1 = a u2 + (b - ac) u3`, `v2 + u2 = c u3`, `v3 + u3 = 0`.
    pub fn collection_sums(&self) -> [[Integer; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|k| &self.v[i][k] + &self.u[i][k]))
    }
}

/// The four distinguished bases of `H^2(M_3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    X1X2X3,
    X1X2Y3,
    X1Y2X3,
    X1Y2Y3,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::X1X2X3, Basis::X1X2Y3, Basis::X1Y2X3, Basis::X1Y2Y3];

    fn uses_y2(self) -> bool {
        matches!(self, Basis::X1Y2X3 | Basis::X1Y2Y3)
    }

    fn uses_y3(self) -> bool {
        matches!(self, Basis::X1X2Y3 | Basis::X1Y2Y3)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::X1X2X3 => "(x1,x2,x3)",
            Basis::X1X2Y3 => "(x1,x2,y3)",
            Basis::X1Y2X3 => "(x1,y2,x3)",
            Basis::X1Y2Y3 => "(x1,y2,y3)",
        })
    }
}

/// A degree two class written in one of the distinguished bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    basis: Basis,
    coeffs: [Rational; 3],
}

impl CohClass {
    pub fn new(basis: Basis, coeffs: [Rational; 3]) -> Self {
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[Rational; 3] {
        &self.coeffs
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = match self.basis {
            Basis::X1X2X3 => ["x1", "x2", "x3"],
            Basis::X1X2Y3 => ["x1", "x2", "y3"],
            Basis::X1Y2X3 => ["x1", "y2", "x3"],
            Basis::X1Y2Y3 => ["x1", "y2", "y3"],
        };
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .map(|(c, n)| format!("({c}){n}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Rewrites `cls` in the `target` basis of `M_3(a, b, c)`.
pub fn basis_change(
    cls: &CohClass,
    target: Basis,
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> CohClass {
    if cls.basis == target {
        return cls.clone();
    }
    // To the x basis: α x1 + β Y2 + γ Y3.
    let [al, be, ga] = cls.coeffs.clone();
    let (mut x1, mut x2, x3) = (al, be.clone(), ga.clone());
    if cls.basis.uses_y2() {
        x1 += a * &be;
    }
    if cls.basis.uses_y3() {
        x1 += b * &ga;
        x2 += c * &ga;
    }
    // And back: peel off y3 first, then y2.
    let (mut t1, mut t2, t3) = (x1, x2, x3);
    if target.uses_y3() {
        t1 -= b * &t3;
        t2 -= c * &t3;
    }
    if target.uses_y2() {
        t1 -= a * &t2;
    }
    CohClass::new(target, [t1, t2, t3])
}

/// `(M_3(a, b, c), Δ_m)` with `m = (m1_0, m1_inf, m2_0, m2_inf, m3_0, m3_inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottOrbifold {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub m: [Rational; 6],
}

impl BottOrbifold {
    pub fn new(a: Rational, b: Rational, c: Rational, m: [Rational; 6]) -> Result<Self> {
        if let Some(bad) = m.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidOrbifold(format!(
                "ramification value {bad} is not positive"
            )));
        }
        Ok(Self { a, b, c, m })
    }

    /// Panics on a nonpositive `m` entry.
    pub fn from_integers(a: &Integer, b: &Integer, c: &Integer, m: &[Integer; 6]) -> Self {
        Self::new(
            to_rational(a),
            to_rational(b),
            to_rational(c),
            m.clone().map(Rational::from_integer),
        )
        .expect("ramification indices are positive")
    }

    fn inv(&self, i: usize) -> Rational {
        self.m[i].recip()
    }

    /// `c1^orb` in the requested basis.
    pub fn c1_orb(&self, basis: Basis) -> CohClass {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (m10, m1i, m20, m2i, m30, m3i) = (
            self.inv(0),
            self.inv(1),
            self.inv(2),
            self.inv(3),
            self.inv(4),
            self.inv(5),
        );
        let s1 = &m10 + &m1i;
        let s2 = &m20 + &m2i;
        let s3 = &m30 + &m3i;
        let bac = b - a * c;
        let (k1, k2) = match basis {
            Basis::X1X2X3 => (s1 + a * &m20 + b * &m30, s2 + c * &m30),
            Basis::X1X2Y3 => (s1 + a * &m20 - b * &m3i, s2 - c * &m3i),
            Basis::X1Y2X3 => (s1 - a * &m2i + &bac * &m30, s2 + c * &m30),
            Basis::X1Y2Y3 => (s1 - a * &m2i - &bac * &m3i, s2 - c * &m3i),
        };
        CohClass::new(basis, [k1, k2, s3])
    }

    pub fn basis_change(&self, cls: &CohClass, target: Basis) -> CohClass {
        basis_change(cls, target, &self.a, &self.b, &self.c)
    }

    /// The eight strict inequalities: the first two `c1^orb` coefficients are
    /// positive in every distinguished basis.
    pub fn is_log_fano(&self) -> bool {
        Basis::ALL.iter().all(|&basis| {
            let cls = self.c1_orb(basis);
            cls.coeffs[0].is_positive() && cls.coeffs[1].is_positive()
        })
    }

    /// `m_j ↦ λ_j m_j + shift_j`, slot by slot.
    pub fn monoid_act(&self, lambda: &[Rational; 6], shift: &[Rational; 6]) -> Result<Self> {
        if lambda.iter().any(|l| *l < Rational::one()) {
            return Err(Error::InvalidMonoid("every λ must be at least 1"));
        }
        if shift.iter().any(Signed::is_negative) {
            return Err(Error::InvalidMonoid("every shift must be nonnegative"));
        }
        let m = std::array::from_fn(|i| &lambda[i] * &self.m[i] + &shift[i]);
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), m)
    }

    pub fn h3_matrix(&self, class: &[Rational; 3]) -> H3Matrix {
        h3_matrix(&self.a, &self.b, &self.c, class)
    }
}

/// `c1^orb` of an `n`-stage tower in the `x` basis. `lower[i][j]` for `j < i`
/// is the entry `A^j_i` of the unipotent matrix; `m0`, `minf` are the
/// ramification values.
pub fn c1_orb_general(
    lower: &[Vec<Rational>],
    m0: &[Rational],
    minf: &[Rational],
) -> Vec<Rational> {
    let n = m0.len();
    (0..n)
        .map(|j| {
            let own = m0[j].recip() + minf[j].recip();
            (j + 1..n).fold(own, |acc, i| acc + &lower[i][j] / &m0[i])
        })
        .collect()
}

// Monomials of the truncated ring as bitmasks: bit 0 = x1, bit 1 = x2, bit 2 = x3.
const MONOMIALS: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

fn slot(mask: u8) -> usize {
    MONOMIALS.iter().position(|&m| m == mask).unwrap()
}

/// An element of `Q[x1, x2, x3] / (x1², x2(a x1 + x2), x3(b x1 + c x2 + x3))`
/// over the basis `1; x1, x2, x3; x1x2, x1x3, x2x3; x1x2x3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    coeffs: [Rational; 8],
}

impl RingElement {
    pub fn zero(a: &Rational, b: &Rational, c: &Rational) -> Self {
        Self {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            coeffs: Default::default(),
        }
    }

    pub fn one(a: &Rational, b: &Rational, c: &Rational) -> Self {
        let mut e = Self::zero(a, b, c);
        e.coeffs[0] = Rational::one();
        e
    }

    /// The generator `x_i`, `i ∈ {1, 2, 3}`.
    pub fn generator(i: usize, a: &Rational, b: &Rational, c: &Rational) -> Self {
        assert!((1..=3).contains(&i), "generator index must be 1, 2 or 3");
        let mut e = Self::zero(a, b, c);
        e.coeffs[slot(1 << (i - 1))] = Rational::one();
        e
    }

    /// `c1 x1 + c2 x2 + c3 x3`.
    pub fn degree_two(class: &[Rational; 3], a: &Rational, b: &Rational, c: &Rational) -> Self {
        let mut e = Self::zero(a, b, c);
        for (i, k) in class.iter().enumerate() {
            e.coeffs[slot(1 << i)] = k.clone();
        }
        e
    }

    /// Coefficients in the order `1, x1, x2, x3, x1x2, x1x3, x2x3, x1x2x3`.
    pub fn coeffs(&self) -> &[Rational; 8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn scaled_add(&mut self, other: &Self, k: &Rational) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += y * k;
        }
    }

    // x_i², as an element.
    fn square_of(&self, bit: u8) -> Self {
        let mut e = Self::zero(&self.a, &self.b, &self.c);
        match bit {
            0b001 => {}
            0b010 => e.coeffs[slot(0b011)] = -self.a.clone(),
            0b100 => {
                e.coeffs[slot(0b101)] = -self.b.clone();
                e.coeffs[slot(0b110)] = -self.c.clone();
            }
            _ => unreachable!(),
        }
        e
    }

    fn times_generator(&self, bit: u8) -> Self {
        let mut out = Self::zero(&self.a, &self.b, &self.c);
        for (&mask, k) in MONOMIALS.iter().zip(&self.coeffs) {
            if k.is_zero() {
                continue;
            }
            if mask & bit == 0 {
                out.coeffs[slot(mask | bit)] += k;
            } else {
                let reduced = self.square_of(bit).times_monomial(mask & !bit);
                out.scaled_add(&reduced, k);
            }
        }
        out
    }

    fn times_monomial(&self, mask: u8) -> Self {
        [0b001, 0b010, 0b100]
            .into_iter()
            .filter(|b| mask & b != 0)
            .fold(self.clone(), |acc, b| acc.times_generator(b))
    }
}

/// Product in the cohomology ring; anything above degree three vanishes.
pub fn ring_multiply(e1: &RingElement, e2: &RingElement) -> RingElement {
    assert!(
        e1.a == e2.a && e1.b == e2.b && e1.c == e2.c,
        "ring elements belong to different Bott manifolds"
    );
    let mut out = RingElement::zero(&e1.a, &e1.b, &e1.c);
    for (&mask, k) in MONOMIALS.iter().zip(&e2.coeffs) {
        if !k.is_zero() {
            out.scaled_add(&e1.times_monomial(mask), k);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3Matrix {
    pub entries: [[Rational; 3]; 3],
    pub rank: usize,
    pub det: Rational,
}

/// The matrix of `w ↦ (c1 x1 + c2 x2 + c3 x3) w` from degree two to degree four.
pub fn h3_matrix(a: &Rational, b: &Rational, c: &Rational, class: &[Rational; 3]) -> H3Matrix {
    let [c1, c2, c3] = class;
    let z = Rational::zero;
    let entries = [
        [c2.clone(), c1 - c2 * a, z()],
        [c3.clone(), z(), c1 - c3 * b],
        [z(), c3.clone(), c2 - c3 * c],
    ];
    let (rank, det) = bareiss(&entries);
    H3Matrix { entries, rank, det }
}

// Fraction-free elimination on the matrix with denominators cleared row by row.
fn bareiss(m: &[[Rational; 3]; 3]) -> (usize, Rational) {
    use num_integer::Integer as _;
    let mut scale = Rational::one();
    let mut rows: Vec<Vec<Integer>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Rational::from_integer(l.clone());
            row.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let n = 3;
    let mut prev = Integer::one();
    let mut rank = 0;
    let mut sign = 1i32;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            rows.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..n {
            for k in col + 1..n {
                let v = &rows[rank][col] * &rows[r][k] - &rows[r][col] * &rows[rank][k];
                rows[r][k] = v / &prev;
            }
            rows[r][col] = Integer::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    let det = if rank == n {
        Rational::from_integer(rows[n - 1][n - 1].clone() * sign) / scale
    } else {
        Rational::zero()
    };
    (rank, det)
}
