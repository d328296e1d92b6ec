//! Re-derivation of the published worked examples from their raw `(p, q, k)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{build_record_k, SERecord};
use crate::kernel::{fraction_string, Integer, Rational};
use crate::topology::homotopy_distinct;
use crate::ypq::{family_pq, YpqEinstein};

/// Expected field values for one `(p, q, k)` input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub block: String,
    pub p: Integer,
    pub q: Integer,
    pub k: Rational,
    pub fields: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub block: String,
    pub field: String,
    pub expected: String,
    /// `None` when the field could not be computed.
    pub actual: Option<String>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.actual.as_deref() == Some(self.expected.as_str())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub blocks: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.failures() {
            writeln!(
                f,
                "FAIL {} {}: expected {}, got {}",
                c.block,
                c.field,
                c.expected,
                c.actual.as_deref().unwrap_or("<error>")
            )?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict}: {} blocks, {} checks, {} failed",
            self.blocks,
            self.checks.len(),
            self.failures().count()
        )
    }
}

fn tuple<T: fmt::Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Every field of a record that the worked examples mention.
pub(crate) fn record_fields(r: &SERecord) -> BTreeMap<&'static str, String> {
    let s = &r.spec;
    let y = &s.ypq;
    let mut out = BTreeMap::new();
    out.insert("v2", tuple(&[&y.v2_0, &y.v2_inf]));
    out.insert("m2", y.m2.to_string());
    out.insert("m2_pair", tuple(&[&y.m2_0, &y.m2_inf]));
    out.insert("a", y.a.to_string());
    out.insert("I", y.fano_index.to_string());
    out.insert("w", tuple(&[&s.w1, &s.w2]));
    out.insert("l", tuple(&[&s.l1, &s.l2]));
    out.insert("smooth", r.is_smooth().to_string());
    out.insert("torsion", tuple(&[&r.torsion.a, &r.torsion.b]));
    if let Some((v0, vi)) = r.ray.v3() {
        out.insert("v3", tuple(&[v0, vi]));
    }
    if let Some(reg) = &r.regular {
        let q = &reg.quotient;
        out.insert("s", q.s.to_string());
        out.insert("n", q.n.to_string());
        out.insert("m3", q.m3.to_string());
        out.insert("m3_pair", tuple(&q.m[4..]));
        out.insert("b", q.b.to_string());
        out.insert("c", q.c.to_string());
        out.insert("m", tuple(&q.m));
        out.insert("ke1", reg.ke.ke1.to_string());
        out.insert("ke2", reg.ke.ke2.to_string());
        out.insert("r3", fraction_string(&reg.calabi.r3));
        out.insert("log_fano", reg.log_fano.to_string());
    }
    out
}

fn fields(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn i(x: i64) -> Integer {
    Integer::from(x)
}

/// The hard-coded published values.
pub fn worked_fixture() -> Vec<Expectation> {
    let two = Rational::from_integer(i(2));
    let three = Rational::from_integer(i(3));
    let mut out = vec![
        Expectation {
            block: "Y^{13,8} k=2".into(),
            p: i(13),
            q: i(8),
            k: two.clone(),
            fields: fields(&[
                ("v2", "(7,5)".into()),
                ("m2", "13".into()),
                ("m2_pair", "(91,65)".into()),
                ("a", "70".into()),
                ("I", "12".into()),
                ("w", "(34,11)".into()),
                ("l", "(4,15)".into()),
                ("v3", "(17,11)".into()),
                ("s", "1".into()),
                ("n", "748".into()),
                ("m3_pair", "(255,165)".into()),
                ("b", "78540".into()),
                ("c", "748".into()),
                ("m", "(1,1,91,65,255,165)".into()),
                ("torsion", "(1330875,5984)".into()),
                ("ke1", "true".into()),
                ("ke2", "true".into()),
            ]),
        },
        Expectation {
            block: "Y^{13,7} k=2".into(),
            p: i(13),
            q: i(7),
            k: two,
            fields: fields(&[
                ("v2", "(4,3)".into()),
                ("m2", "13".into()),
                ("m2_pair", "(52,39)".into()),
                ("a", "36".into()),
                ("I", "7".into()),
                ("w", "(34,11)".into()),
                ("l", "(7,45)".into()),
                ("v3", "(17,11)".into()),
                ("s", "1".into()),
                ("n", "1309".into()),
                ("m3_pair", "(765,495)".into()),
                ("b", "78540".into()),
                ("c", "1309".into()),
                ("m", "(1,1,52,39,765,495)".into()),
                ("torsion", "(4106700,18326)".into()),
            ]),
        },
    ];
    for t in 1..=10i64 {
        let k2 = 255 * t + 10;
        let (p, q) = family_pq(k2 as u64);
        let l1 = 306 * t + 13;
        let (a, b, c) = (i(255 * t + 11), i(765 * t + 32), i(1020 * t + 43));
        let big_a = i(6) * &a * i(510 * t + 21) * &c;
        let big_b = i(204) * &a * &b * &c * i(l1);
        out.push(Expectation {
            block: format!("family t={t}"),
            p: p.clone(),
            q,
            k: three.clone(),
            fields: fields(&[
                ("m2", p.to_string()),
                (
                    "m2_pair",
                    tuple(&[&p * i(3 + 4 * k2), &p * i(2 * (1 + k2))]),
                ),
                ("a", big_a.to_string()),
                ("I", (5 * l1).to_string()),
                ("w", "(17,3)".into()),
                ("v3", "(17,9)".into()),
                ("l", tuple(&[l1, 4])),
                ("n", (51 * l1).to_string()),
                ("m3", "2".into()),
                ("m3_pair", "(34,18)".into()),
                ("b", big_b.to_string()),
                ("c", (51 * l1).to_string()),
                ("smooth", "true".into()),
                ("ke1", "true".into()),
                ("ke2", "true".into()),
                ("r3", "1/2".into()),
            ]),
        });
    }
    let (p, q) = family_pq(0);
    out.push(Expectation {
        block: "family k2=0".into(),
        p,
        q,
        k: three,
        fields: fields(&[
            ("l", "(1,4)".into()),
            ("n", "51".into()),
            ("smooth", "false".into()),
        ]),
    });
    out
}

fn family_t(block: &str) -> Option<i64> {
    block.strip_prefix("family t=")?.parse().ok()
}

/// `6(255t+11) - 5(306t+13)`, `10(306t+13) - 3(1020t+43)` and
/// `3(780300t² + 65790t + 1387) - (7650t+320)(306t+13)`.
fn bezout_values(t: i64) -> String {
    let t = i(t);
    let lin = |a: i64, b: i64| &t * a + b;
    let quad = &t * &t * 780300 + &t * 65790 + 1387;
    tuple(&[
        lin(255, 11) * 6 - lin(306, 13) * 5,
        lin(306, 13) * 10 - lin(1020, 43) * 3,
        quad * 3 - lin(7650, 320) * lin(306, 13),
    ])
}

/// Rebuilds every record in `fixture` and diffs it field by field. The two
/// `Y^{13,q}` blocks are also compared by their torsion.
pub fn verify_against(fixture: &[Expectation]) -> Report {
    let built: Vec<_> = fixture
        .par_iter()
        .map(|e| YpqEinstein::solve(e.p.clone(), e.q.clone()).and_then(|y| build_record_k(y, &e.k)))
        .collect();
    let mut report = Report {
        blocks: fixture.len(),
        checks: Vec::new(),
    };
    for (e, rec) in fixture.iter().zip(&built) {
        let actual = rec.as_ref().ok().map(record_fields).unwrap_or_default();
        for (field, expected) in &e.fields {
            report.checks.push(Check {
                block: e.block.clone(),
                field: field.clone(),
                expected: expected.clone(),
                actual: actual.get(field.as_str()).cloned(),
            });
        }
        if let Some(t) = family_t(&e.block) {
            report.checks.push(Check {
                block: e.block.clone(),
                field: "bezout".into(),
                expected: "(1,1,1)".into(),
                actual: Some(bezout_values(t)),
            });
        }
    }
    let find = |label: &str| fixture.iter().position(|e| e.block == label);
    if let (Some(x), Some(y)) = (find("Y^{13,8} k=2"), find("Y^{13,7} k=2")) {
        let actual = match (&built[x], &built[y]) {
            (Ok(r1), Ok(r2)) => Some(homotopy_distinct(&r1.torsion, &r2.torsion).to_string()),
            _ => None,
        };
        report.checks.push(Check {
            block: "Y^{13,8} vs Y^{13,7}".into(),
            field: "homotopy_distinct".into(),
            expected: "true".into(),
            actual,
        });
    }
    report
}

pub fn verify_paper_examples() -> Report {
    verify_against(&worked_fixture())
}
