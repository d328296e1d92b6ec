//! Full Sasaki-Einstein records, parameter searches, and persistence.

mod export;
mod worked;

use std::fmt;

use num_integer::Integer as _;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::join::{
    quotient_orbifold, se_ray_from_w, smoothness_check, verify_se_ray, w_from_k, JoinQuotient,
    JoinSpec, ReebRay, Smoothness,
};
use crate::kernel::{Integer, Rational};
use crate::metric::{ke_conditions, ke_profile, CalabiData, CalabiProfile, KeConditions};
use crate::topology::{h4_torsion, h4_torsion_of, TorsionInvariant};
use crate::ypq::{is_quasi_regular, YpqEinstein};

pub use export::{
    export, profile_from_row, read_rows, render, Format, RecordRow, CSV_HEADER, SCHEMA_VERSION,
};
pub use worked::{
    verify_against, verify_paper_examples, worked_fixture, Check, Expectation, Report,
};

/// Everything attached to a quasi-regular ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularData {
    pub quotient: JoinQuotient,
    pub calabi: CalabiData,
    pub ke: KeConditions,
    pub log_fano: bool,
    pub profile: CalabiProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SERecord {
    pub spec: JoinSpec,
    pub ray: ReebRay,
    pub smoothness: Smoothness,
    pub torsion: TorsionInvariant,
    /// `None` for irregular rays, which have no quotient orbifold.
    pub regular: Option<RegularData>,
    pub notes: Vec<String>,
}

impl SERecord {
    pub fn is_smooth(&self) -> bool {
        self.smoothness.is_smooth()
    }

    /// `(p, q, w1, w2)`, the catalog order.
    pub fn sort_key(&self) -> [&Integer; 4] {
        [
            &self.spec.ypq.p,
            &self.spec.ypq.q,
            &self.spec.w1,
            &self.spec.w2,
        ]
    }

    /// Invariants every catalog record must satisfy; returns the failures.
    pub fn audit(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let s = &self.spec;
        if let Some(reg) = &self.regular {
            let (v0, vi) = self.ray.v3().expect("regular data implies a rational ray");
            if !verify_se_ray(&s.w1, &s.w2, v0, vi) {
                bad.push("Einstein integral of the ray is nonzero".to_string());
            }
            if !reg.ke.ke1 {
                bad.push("KE1 fails".to_string());
            }
            if !reg.ke.ke2 {
                bad.push("KE2 fails".to_string());
            }
            if !reg.log_fano {
                bad.push("quotient is not log Fano".to_string());
            }
        }
        if self.is_smooth() {
            let y = &s.ypq;
            let again = h4_torsion(&y.v2_0, &y.v2_inf, &y.m2, &s.l2, &s.w1, &s.w2, &s.l1);
            if again != self.torsion {
                bad.push(format!(
                    "torsion {} does not match the formula {again}",
                    self.torsion
                ));
            }
        }
        bad
    }
}

impl fmt::Display for SERecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.spec;
        write!(
            f,
            "Y^{{{},{}}} * S^3_({},{}) l=({},{})",
            s.ypq.p, s.ypq.q, s.w1, s.w2, s.l1, s.l2
        )?;
        match &self.regular {
            Some(reg) => {
                let q = &reg.quotient;
                write!(f, " n={} s={} m3={} b={} c={}", q.n, q.s, q.m3, q.b, q.c)?
            }
            None => write!(f, " irregular")?,
        }
        write!(f, " H4={} smooth={}", self.torsion, self.is_smooth())
    }
}

/// Assembles and audits the record for `Y^{p,q} ⋆ S^3_w` with the canonical `l`.
pub fn build_record(ypq: YpqEinstein, w1: Integer, w2: Integer) -> Result<SERecord> {
    let spec = JoinSpec::canonical(ypq, w1, w2)?;
    let ray = se_ray_from_w(&spec.w1, &spec.w2)?;
    let smoothness = smoothness_check(&spec);
    let torsion = h4_torsion_of(&spec);
    let mut notes: Vec<String> = smoothness.witnesses.iter().map(|w| w.to_string()).collect();
    let regular = match &ray {
        ReebRay::QuasiRegular { .. } => {
            let quotient = quotient_orbifold(&spec, &ray)?;
            let calabi = CalabiData::from_join(&spec, &ray, &quotient)?;
            let ke = ke_conditions(&calabi);
            let profile = ke_profile(&calabi)?;
            let log_fano = quotient.transverse_orbifold().is_log_fano();
            Some(RegularData {
                quotient,
                calabi,
                ke,
                log_fano,
                profile,
            })
        }
        ReebRay::Irregular { .. } => {
            notes.push("irregular ray: no quotient orbifold".to_string());
            None
        }
    };
    let record = SERecord {
        spec,
        ray,
        smoothness,
        torsion,
        regular,
        notes,
    };
    let bad = record.audit();
    if !bad.is_empty() {
        return Err(Error::Consistency(format!("{record}: {}", bad.join("; "))));
    }
    Ok(record)
}

/// Record for the Sasaki-Einstein ray with cubic root `k`.
pub fn build_record_k(ypq: YpqEinstein, k: &Rational) -> Result<SERecord> {
    let (w1, w2) = w_from_k(k)?;
    build_record(ypq, w1, w2)
}

/// All quasi-regular `Y^{p,q}` with `p <= p_max`, sorted by `(p, q)`.
pub fn enumerate_ypq(p_max: u64) -> Vec<YpqEinstein> {
    let mut out: Vec<YpqEinstein> = (2..=p_max)
        .into_par_iter()
        .flat_map_iter(|p| {
            (1..p)
                .filter(move |&q| p.gcd(&q).is_one())
                .filter(move |&q| is_quasi_regular(&p.into(), &q.into()).unwrap_or(false))
                .map(move |q| YpqEinstein::solve(p, q).expect("quasi-regular pairs always solve"))
        })
        .collect();
    out.sort_by(|x, y| (&x.p, &x.q).cmp(&(&y.p, &y.q)));
    out
}

/// Number of quasi-regular `q` for each admissible `p`.
pub fn q_counts(ypqs: &[YpqEinstein]) -> Vec<(Integer, usize)> {
    let mut out: Vec<(Integer, usize)> = Vec::new();
    for y in ypqs {
        match out.last_mut() {
            Some((p, n)) if *p == y.p => *n += 1,
            _ => out.push((y.p.clone(), 1)),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JoinInput {
    K(Rational),
    W(Integer, Integer),
}

impl fmt::Display for JoinInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinInput::K(k) => write!(f, "k={k}"),
            JoinInput::W(w1, w2) => write!(f, "w=({w1},{w2})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum JoinSearch {
    Ks(Vec<Rational>),
    /// Every coprime `w1 > w2 >= 1` with `w1 <= bound`.
    WBound(u64),
}

impl JoinSearch {
    pub fn inputs(&self) -> Vec<JoinInput> {
        match self {
            JoinSearch::Ks(ks) => ks.iter().cloned().map(JoinInput::K).collect(),
            JoinSearch::WBound(bound) => (2..=*bound)
                .flat_map(|w1| {
                    (1..w1)
                        .filter(move |w2| w1.gcd(w2).is_one())
                        .map(move |w2| JoinInput::W(w1.into(), w2.into()))
                })
                .collect(),
        }
    }
}

#[derive(Debug)]
pub struct JoinOutcome {
    pub input: JoinInput,
    pub record: Result<SERecord>,
}

/// One outcome per input, in input order; failures stay attached to their input.
pub fn enumerate_joins(ypq: &YpqEinstein, search: &JoinSearch) -> Vec<JoinOutcome> {
    search
        .inputs()
        .into_par_iter()
        .map(|input| {
            let record = match &input {
                JoinInput::K(k) => build_record_k(ypq.clone(), k),
                JoinInput::W(w1, w2) => build_record(ypq.clone(), w1.clone(), w2.clone()),
            };
            JoinOutcome { input, record }
        })
        .collect()
}

/// Sorted by `(p, q, w1, w2)`.
pub fn sorted(records: &[SERecord]) -> Vec<&SERecord> {
    let mut out: Vec<&SERecord> = records.iter().collect();
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    out
}
