//! Cohomology of the join `M^7`: the fixed rational profile of a connected
//! sum of two copies of `S^2 × S^5`, the torsion `H^4(M^7, Z) ≅ Z_A ⊕ Z_B`,
//! and orbifold cohomology of Hirzebruch orbifolds.

use std::fmt;

use num_integer::Integer as _;
use num_traits::One;

use crate::join::JoinSpec;
use crate::kernel::Integer;

/// A finitely generated abelian group `Z^rank ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_k}`,
/// kept with the summands as presented (trivial ones dropped).
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    pub rank: u32,
    pub torsion: Vec<Integer>,
}

impl AbelianGroup {
    pub fn new(rank: u32, torsion: impl IntoIterator<Item = Integer>) -> Self {
        let torsion = torsion.into_iter().filter(|t| !t.is_one()).collect();
        Self { rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::new(0, [])
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors().is_empty()
    }

    /// Invariant factors `d_1 | d_2 | ...`, all greater than one.
    pub fn invariant_factors(&self) -> Vec<Integer> {
        let mut f: Vec<Integer> = self.torsion.clone();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                let g = f[i].gcd(&f[j]);
                let l = f[i].lcm(&f[j]);
                f[i] = g;
                f[j] = l;
            }
        }
        f.retain(|t| !t.is_one());
        f
    }
}

/// Isomorphism of abstract groups.
impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.invariant_factors() == other.invariant_factors()
    }
}

impl Eq for AbelianGroup {}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Orders of the two cyclic summands of `H^4(M^7, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionInvariant {
    pub a: Integer,
    pub b: Integer,
}

impl TorsionInvariant {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(0, [self.a.clone(), self.b.clone()])
    }

    /// `(gcd(A, B), lcm(A, B))`.
    pub fn elementary_pair(&self) -> (Integer, Integer) {
        (self.a.gcd(&self.b), self.a.lcm(&self.b))
    }
}

impl fmt::Display for TorsionInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} + Z_{}", self.a, self.b)
    }
}

/// `(A, B) = (v0 vinf m² l2², w1 w2 l1²)`. Smoothness of the join is the
/// caller's responsibility; the formula is evaluated regardless.
pub fn h4_torsion(
    v0: &Integer,
    vinf: &Integer,
    m: &Integer,
    l2: &Integer,
    w1: &Integer,
    w2: &Integer,
    l1: &Integer,
) -> TorsionInvariant {
    TorsionInvariant {
        a: v0 * vinf * m * m * l2 * l2,
        b: w1 * w2 * l1 * l1,
    }
}

pub fn h4_torsion_of(spec: &JoinSpec) -> TorsionInvariant {
    let y = &spec.ypq;
    h4_torsion(
        &y.v2_0, &y.v2_inf, &y.m2, &spec.l2, &spec.w1, &spec.w2, &spec.l1,
    )
}

/// True when the two torsion groups are not isomorphic. `false` only means
/// this invariant does not tell the manifolds apart.
pub fn homotopy_distinct(t1: &TorsionInvariant, t2: &TorsionInvariant) -> bool {
    t1.elementary_pair() != t2.elementary_pair()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiProfile {
    pub b: [u32; 8],
}

impl BettiProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

pub fn betti_profile() -> BettiProfile {
    BettiProfile {
        b: [1, 0, 2, 0, 0, 2, 0, 1],
    }
}

/// `H^r_orb(H_a, Δ; Z)` for a Hirzebruch orbifold with branch indices
/// `(m0, minf)` on the two sections.
pub fn hirzebruch_orb_cohomology(m0: &Integer, minf: &Integer, r: u32) -> AbelianGroup {
    assert!(
        *m0 >= Integer::one() && *minf >= Integer::one(),
        "branch indices must be at least 1"
    );
    match r {
        0 => AbelianGroup::new(1, []),
        _ if r % 2 == 1 => AbelianGroup::trivial(),
        2 => AbelianGroup::new(2, []),
        4 => AbelianGroup::new(1, [m0.clone(), minf.clone()]),
        _ => AbelianGroup::new(0, [m0.clone(), minf.clone()]),
    }
}

/// The fixed homotopy data `π1(M^7) = 0` and `π2(M^7) = Z²`.
pub fn low_homotopy_ranks() -> (u32, u32) {
    (0, 2)
}
