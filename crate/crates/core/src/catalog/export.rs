//! JSON and CSV rendering of records, and reading them back.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{sorted, SERecord};
use crate::error::{Error, Result};
use crate::join::ReebRay;
use crate::kernel::{fraction_string, parse_rational, Integer, Polynomial, Rational};
use crate::metric::{ke_profile, r3_from_ray, CalabiData, CalabiProfile};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?}, expected json or csv"
            ))),
        }
    }
}

/// Flat, string-valued view of a record. Integers are decimal strings and
/// rationals are `num/den`; quotient fields are absent for irregular rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordRow {
    pub schema_version: u32,
    pub p: String,
    pub q: String,
    pub v2: [String; 2],
    pub m2: String,
    pub a: String,
    #[serde(rename = "I")]
    pub fano_index: String,
    pub l1: String,
    pub l2: String,
    pub w: [String; 2],
    pub regular: bool,
    pub k: Option<String>,
    pub k_bounds: Option<[String; 2]>,
    pub v3: Option<[String; 2]>,
    pub v3_ratio_bounds: Option<[String; 2]>,
    pub s: Option<String>,
    pub m3: Option<String>,
    pub n: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub m_vector: Option<[String; 6]>,
    pub torsion: [String; 2],
    pub smooth: bool,
    pub log_fano: Option<bool>,
    pub ke1: Option<bool>,
    pub ke2: Option<bool>,
    pub r3: Option<String>,
    #[serde(rename = "F_coeffs")]
    pub f_coeffs: Option<Vec<String>>,
    pub pi1: String,
    pub pi2: String,
    pub notes: Vec<String>,
}

pub const CSV_HEADER: [&str; 37] = [
    "schema_version",
    "p",
    "q",
    "v2_0",
    "v2_inf",
    "m2",
    "a",
    "I",
    "l1",
    "l2",
    "w1",
    "w2",
    "regular",
    "k",
    "k_lo",
    "k_hi",
    "v3_0",
    "v3_inf",
    "s",
    "m3",
    "n",
    "b",
    "c",
    "m1_0",
    "m1_inf",
    "m2_0",
    "m2_inf",
    "m3_0",
    "m3_inf",
    "torsion_A",
    "torsion_B",
    "smooth",
    "log_fano",
    "ke1",
    "ke2",
    "r3",
    "F_coeffs",
];

fn pair(x: &Integer, y: &Integer) -> [String; 2] {
    [x.to_string(), y.to_string()]
}

impl RecordRow {
    /// Irregular rays get certified decimal bounds with `digits` fractional digits.
    pub fn from_record(r: &SERecord, digits: u32) -> Self {
        let s = &r.spec;
        let y = &s.ypq;
        let (k, k_bounds, v3, v3_ratio_bounds) = match &r.ray {
            ReebRay::QuasiRegular { v3_0, v3_inf, k } => (
                Some(fraction_string(k)),
                None,
                Some(pair(v3_0, v3_inf)),
                None,
            ),
            ReebRay::Irregular { k, ratio } => {
                let (klo, khi) = k.decimal_bounds(digits);
                let (rlo, rhi) = ratio.decimal_bounds(digits);
                (None, Some([klo, khi]), None, Some([rlo, rhi]))
            }
        };
        let reg = r.regular.as_ref();
        let quot = reg.map(|g| &g.quotient);
        Self {
            schema_version: SCHEMA_VERSION,
            p: y.p.to_string(),
            q: y.q.to_string(),
            v2: pair(&y.v2_0, &y.v2_inf),
            m2: y.m2.to_string(),
            a: y.a.to_string(),
            fano_index: y.fano_index.to_string(),
            l1: s.l1.to_string(),
            l2: s.l2.to_string(),
            w: pair(&s.w1, &s.w2),
            regular: r.ray.is_quasi_regular(),
            k,
            k_bounds,
            v3,
            v3_ratio_bounds,
            s: quot.map(|q| q.s.to_string()),
            m3: quot.map(|q| q.m3.to_string()),
            n: quot.map(|q| q.n.to_string()),
            b: quot.map(|q| q.b.to_string()),
            c: quot.map(|q| q.c.to_string()),
            m_vector: quot.map(|q| q.m.clone().map(|x| x.to_string())),
            torsion: pair(&r.torsion.a, &r.torsion.b),
            smooth: r.is_smooth(),
            log_fano: reg.map(|g| g.log_fano),
            ke1: reg.map(|g| g.ke.ke1),
            ke2: reg.map(|g| g.ke.ke2),
            r3: reg.map(|g| fraction_string(&g.calabi.r3)),
            f_coeffs: reg.map(|g| g.profile.f.coeffs().iter().map(fraction_string).collect()),
            pi1: "0".to_string(),
            pi2: "Z^2".to_string(),
            notes: r.notes.clone(),
        }
    }

    fn csv_fields(&self) -> Vec<String> {
        let opt = |x: &Option<String>| x.clone().unwrap_or_default();
        let flag = |x: Option<bool>| x.map(|b| b.to_string()).unwrap_or_default();
        let two = |x: &Option<[String; 2]>, i: usize| {
            x.as_ref().map(|v| v[i].clone()).unwrap_or_default()
        };
        let mut out = vec![
            self.schema_version.to_string(),
            self.p.clone(),
            self.q.clone(),
            self.v2[0].clone(),
            self.v2[1].clone(),
            self.m2.clone(),
            self.a.clone(),
            self.fano_index.clone(),
            self.l1.clone(),
            self.l2.clone(),
            self.w[0].clone(),
            self.w[1].clone(),
            self.regular.to_string(),
            opt(&self.k),
            two(&self.k_bounds, 0),
            two(&self.k_bounds, 1),
            two(&self.v3, 0),
            two(&self.v3, 1),
            opt(&self.s),
            opt(&self.m3),
            opt(&self.n),
            opt(&self.b),
            opt(&self.c),
        ];
        match &self.m_vector {
            Some(m) => out.extend(m.iter().cloned()),
            None => out.extend(std::iter::repeat(String::new()).take(6)),
        }
        out.extend([
            self.torsion[0].clone(),
            self.torsion[1].clone(),
            self.smooth.to_string(),
            flag(self.log_fano),
            flag(self.ke1),
            flag(self.ke2),
            opt(&self.r3),
            self.f_coeffs
                .as_ref()
                .map(|f| f.join(";"))
                .unwrap_or_default(),
        ]);
        out
    }
}

fn csv_string(rows: &[RecordRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_fields())?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Deterministic text for `records`, sorted by `(p, q, w1, w2)`.
pub fn render(records: &[SERecord], format: Format, digits: u32) -> Result<String> {
    let rows: Vec<RecordRow> = sorted(records)
        .into_iter()
        .map(|r| RecordRow::from_record(r, digits))
        .collect();
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv_string(&rows),
    }
}

pub fn export(records: &[SERecord], format: Format, path: &Path, digits: u32) -> Result<()> {
    let text = render(records, format, digits)?;
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a JSON export: either an array of records or a single record.
pub fn read_rows(path: &Path) -> Result<Vec<RecordRow>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let rows = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    Ok(rows)
}

fn int(field: &str, s: &str) -> Result<Integer> {
    s.parse()
        .map_err(|_| Error::Parse(format!("{field}: not an integer: {s:?}")))
}

fn need<'a, T>(field: &str, x: &'a Option<T>) -> Result<&'a T> {
    x.as_ref()
        .ok_or_else(|| Error::Parse(format!("record has no {field}")))
}

/// Rebuilds the Einstein profile of a stored quasi-regular record and checks
/// it against the stored `r3` and `F` coefficients. Returns the profile and `n`.
pub fn profile_from_row(row: &RecordRow) -> Result<(CalabiProfile, Integer)> {
    if !row.regular {
        return Err(Error::IrregularRay);
    }
    let v3 = need("v3", &row.v3)?;
    let m = need("m_vector", &row.m_vector)?;
    let (w1, w2) = (int("w1", &row.w[0])?, int("w2", &row.w[1])?);
    let (v0, vi) = (int("v3_0", &v3[0])?, int("v3_inf", &v3[1])?);
    let n = int("n", need("n", &row.n)?)?;
    let r3 = r3_from_ray(&w1, &w2, &v0, &vi)?;
    let data = CalabiData::new(
        int("a", &row.a)?,
        int("m2_0", &m[2])?,
        int("m2_inf", &m[3])?,
        int("I", &row.fano_index)?,
        v0,
        vi,
        int("m3", need("m3", &row.m3)?)?,
        n.clone(),
        r3.clone(),
    )?;
    let profile = ke_profile(&data)?;
    if let Some(stored) = &row.r3 {
        if parse_rational(stored)? != r3 {
            return Err(Error::Consistency(format!(
                "stored r3 = {stored}, recomputed {r3}"
            )));
        }
    }
    if let Some(stored) = &row.f_coeffs {
        let coeffs = stored
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<Rational>>>()?;
        if Polynomial::new(coeffs) != profile.f {
            return Err(Error::Consistency(
                "stored F coefficients differ from the recomputed profile".into(),
            ));
        }
    }
    Ok((profile, n))
}
