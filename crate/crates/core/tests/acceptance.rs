//! Acceptance criteria, one PASS/FAIL line each. Exits 1 if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sejoin::bott::{Basis, BottOrbifold};
use sejoin::catalog::{build_record_k, enumerate_ypq, SERecord};
use sejoin::join::{se_cubic, se_ray_from_w, verify_se_ray, w_from_k};
use sejoin::kernel::{
    integrate_sym, real_roots, sturm_positive_on, Integer, Polynomial, Rational, RealRoot,
};
use sejoin::metric::{ke_conditions, ke_profile, CalabiData};
use sejoin::topology::{h4_torsion, homotopy_distinct};
use sejoin::ypq::{einstein_integrand, einstein_ray, family_member, family_pq, YpqEinstein};

const SEED: u64 = 0x5e_7013;
const CASES: usize = 1000;

fn int(x: i64) -> Integer {
    Integer::from(x)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

/// Collects mismatches for one criterion.
#[derive(Default)]
struct Diff(Vec<String>);

impl Diff {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, actual: T, expected: T) {
        if actual != expected {
            self.0
                .push(format!("{what}: got {actual:?}, expected {expected:?}"));
        }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        if elapsed >= limit {
            self.0
                .push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
        }
    }
}

fn record(p: i64, q: i64, k: Rational) -> Result<SERecord, String> {
    YpqEinstein::solve(p, q)
        .and_then(|y| build_record_k(y, &k))
        .map_err(|e| e.to_string())
}

fn golden(d: &mut Diff, p: i64, q: i64, expect: &[(&str, Vec<i64>)]) -> Option<SERecord> {
    let r = match record(p, q, rat(2, 1)) {
        Ok(r) => r,
        Err(e) => {
            d.0.push(e);
            return None;
        }
    };
    let y = &r.spec.ypq;
    let reg = r.regular.as_ref()?;
    let quot = &reg.quotient;
    let (v0, vi) = r.ray.v3()?;
    for (field, want) in expect {
        let got: Vec<&Integer> = match *field {
            "v2" => vec![&y.v2_0, &y.v2_inf],
            "m2" => vec![&y.m2],
            "m2_pair" => vec![&y.m2_0, &y.m2_inf],
            "a" => vec![&y.a],
            "I" => vec![&y.fano_index],
            "w" => vec![&r.spec.w1, &r.spec.w2],
            "l" => vec![&r.spec.l1, &r.spec.l2],
            "v3" => vec![v0, vi],
            "s" => vec![&quot.s],
            "n" => vec![&quot.n],
            "b" => vec![&quot.b],
            "c" => vec![&quot.c],
            "m" => quot.m.iter().collect(),
            other => panic!("unknown field {other}"),
        };
        let want: Vec<Integer> = want.iter().map(|&x| int(x)).collect();
        d.eq(field, got.into_iter().cloned().collect::<Vec<_>>(), want);
    }
    Some(r)
}

fn criterion_1(d: &mut Diff) {
    let start = Instant::now();
    golden(
        d,
        13,
        8,
        &[
            ("v2", vec![7, 5]),
            ("m2", vec![13]),
            ("m2_pair", vec![91, 65]),
            ("a", vec![70]),
            ("I", vec![12]),
            ("w", vec![34, 11]),
            ("l", vec![4, 15]),
            ("v3", vec![17, 11]),
            ("s", vec![1]),
            ("n", vec![748]),
            ("b", vec![78540]),
            ("c", vec![748]),
            ("m", vec![1, 1, 91, 65, 255, 165]),
        ],
    );
    d.within(start.elapsed(), Duration::from_secs(1));
}

fn criterion_2(d: &mut Diff) {
    golden(
        d,
        13,
        7,
        &[
            ("a", vec![36]),
            ("I", vec![7]),
            ("l", vec![7, 45]),
            ("n", vec![1309]),
            ("b", vec![78540]),
            ("c", vec![1309]),
            ("m", vec![1, 1, 52, 39, 765, 495]),
        ],
    );
}

fn criterion_3(d: &mut Diff) {
    let (Ok(r1), Ok(r2)) = (record(13, 8, rat(2, 1)), record(13, 7, rat(2, 1))) else {
        d.check("records build", false);
        return;
    };
    let torsion = |r: &SERecord| {
        let (s, y) = (&r.spec, &r.spec.ypq);
        h4_torsion(&y.v2_0, &y.v2_inf, &y.m2, &s.l2, &s.w1, &s.w2, &s.l1)
    };
    let (t1, t2) = (torsion(&r1), torsion(&r2));
    d.eq(
        "Y^{13,8} torsion",
        (t1.a.clone(), t1.b.clone()),
        (int(1330875), int(5984)),
    );
    d.eq(
        "Y^{13,7} torsion",
        (t2.a.clone(), t2.b.clone()),
        (int(4106700), int(18326)),
    );
    d.check("homotopy_distinct", homotopy_distinct(&t1, &t2));
}

fn criterion_4(d: &mut Diff) {
    let start = Instant::now();
    for t in 1..=10i64 {
        let k2 = 255 * t + 10;
        let r = match family_member(k2 as u64).and_then(|y| build_record_k(y, &rat(3, 1))) {
            Ok(r) => r,
            Err(e) => {
                d.0.push(format!("t={t}: {e}"));
                continue;
            }
        };
        let l1 = 306 * t + 13;
        d.eq(
            &format!("t={t} l"),
            (&r.spec.l1, &r.spec.l2),
            (&int(l1), &int(4)),
        );
        if let Some(reg) = &r.regular {
            let q = &reg.quotient;
            d.eq(&format!("t={t} n"), &q.n, &int(51 * l1));
            d.eq(&format!("t={t} m3"), &q.m3, &int(2));
            d.eq(
                &format!("t={t} m3 pair"),
                (&q.m[4], &q.m[5]),
                (&int(34), &int(18)),
            );
        } else {
            d.check(&format!("t={t} quasi-regular"), false);
        }
        d.check(&format!("t={t} smooth"), r.is_smooth());
    }
    // The three identities as polynomials in t.
    let t = Polynomial::z();
    let lin = |a: i64, b: i64| &t.scale(&rat(a, 1)) + &Polynomial::constant(rat(b, 1));
    let k = |c: i64, p: &Polynomial| p.scale(&rat(c, 1));
    let one = Polynomial::one();
    d.eq(
        "6(255t+11) - 5(306t+13)",
        &k(6, &lin(255, 11)) - &k(5, &lin(306, 13)),
        one.clone(),
    );
    d.eq(
        "10(306t+13) - 3(1020t+43)",
        &k(10, &lin(306, 13)) - &k(3, &lin(1020, 43)),
        one.clone(),
    );
    let quad = Polynomial::from_integers([1387, 65790, 780300]);
    d.eq(
        "3 quad - (7650t+320)(306t+13)",
        &k(3, &quad) - &(&lin(7650, 320) * &lin(306, 13)),
        one,
    );
    match family_member(0).and_then(|y| build_record_k(y, &rat(3, 1))) {
        Ok(r) => d.check("k2=0 flagged non-smooth", !r.is_smooth()),
        Err(e) => d.0.push(format!("k2=0: {e}")),
    }
    d.within(start.elapsed(), Duration::from_secs(5));
}

/// Same data with the branch indices over the two sections replaced. The
/// pair need not factor as `m3 (v3_0, v3_inf)` with coprime `n`, so this
/// bypasses validation; only the KE formulas read it.
fn perturbed(base: &CalabiData, m3_0: Integer, m3_inf: Integer) -> CalabiData {
    CalabiData {
        v3_0: m3_0,
        v3_inf: m3_inf,
        m3: Integer::one(),
        ..base.clone()
    }
}

fn ke_case(
    d: &mut Diff,
    label: &str,
    data: &CalabiData,
    lhs: Rational,
    terms: (Rational, Rational),
) {
    let r = &data.r3;
    let one = Rational::one();
    let m0 = Rational::from_integer(data.m3_0());
    let mi = Rational::from_integer(data.m3_inf());
    let i = Rational::from_integer(data.fano_index.clone());
    let n = Rational::from_integer(data.n.clone());
    d.eq(&format!("{label} 2 r3 I / n"), rat(2, 1) * r * i / n, lhs);
    d.eq(&format!("{label} (1+r3)/m3_inf"), (&one + r) / &mi, terms.0);
    d.eq(&format!("{label} (1-r3)/m3_0"), (&one - r) / &m0, terms.1);
    let ke = ke_conditions(data);
    d.check(&format!("{label} KE1"), ke.ke1);
    d.check(&format!("{label} KE2"), ke.ke2);
    let (a, b) = (data.m3_0(), data.m3_inf());
    for (what, m0, mi) in [
        ("m3_0+1", &a + 1, b.clone()),
        ("m3_0-1", &a - 1, b.clone()),
        ("m3_inf+1", a.clone(), &b + 1),
        ("m3_inf-1", a.clone(), &b - 1),
    ] {
        let ke = ke_conditions(&perturbed(data, m0, mi));
        d.check(&format!("{label} {what} breaks KE1"), !ke.ke1);
        d.check(&format!("{label} {what} breaks KE2"), !ke.ke2);
    }
}

fn calabi(p: i64, q: i64, k: i64) -> Option<CalabiData> {
    Some(record(p, q, rat(k, 1)).ok()?.regular?.calabi)
}

fn criterion_5(d: &mut Diff) {
    match calabi(13, 8, 2) {
        Some(data) => {
            d.eq("Y^{13,8} r3", data.r3.clone(), rat(1, 3));
            ke_case(
                d,
                "Y^{13,8}",
                &data,
                rat(2, 187),
                (rat(4, 495), rat(2, 765)),
            );
        }
        None => d.check("Y^{13,8} record", false),
    }
    for t in 1..=10u64 {
        let (p, q) = family_pq(255 * t + 10);
        let data = YpqEinstein::solve(p, q)
            .and_then(|y| build_record_k(y, &rat(3, 1)))
            .ok()
            .and_then(|r| r.regular)
            .map(|reg| reg.calabi);
        match data {
            Some(data) => {
                d.eq(&format!("family t={t} r3"), data.r3.clone(), rat(1, 2));
                ke_case(
                    d,
                    &format!("family t={t}"),
                    &data,
                    rat(5, 51),
                    (rat(1, 12), rat(1, 68)),
                );
            }
            None => d.check(&format!("family t={t} record"), false),
        }
    }
}

fn criterion_6(d: &mut Diff) {
    let Some(data) = calabi(847477, 846945, 3) else {
        d.check("family t=1 record", false);
        return;
    };
    let profile = match ke_profile(&data) {
        Ok(p) => p,
        Err(e) => {
            d.0.push(e.to_string());
            return;
        }
    };
    let expected = Polynomial::new(vec![
        rat(5, 144),
        rat(4, 153),
        rat(-9, 306),
        rat(-4, 153),
        rat(-13, 2448),
    ]);
    d.eq("F", profile.f.clone(), expected);
    d.check("F(-1) = 0", profile.f.eval(&rat(-1, 1)).is_zero());
    d.check("F(1) = 0", profile.f.eval(&rat(1, 1)).is_zero());
    d.eq("Θ'(-1)", profile.theta_derivative(&rat(-1, 1)), rat(1, 9));
    d.eq("Θ'(1)", profile.theta_derivative(&rat(1, 1)), rat(-1, 17));
    d.check(
        "F > 0 on (-1, 1)",
        sturm_positive_on(&profile.f, &rat(-1, 1), &rat(1, 1)),
    );
}

fn random_orbifold(rng: &mut ChaCha8Rng, span: i64, m_max: i64) -> BottOrbifold {
    let mut r = || Rational::from_integer(int(rng.gen_range(-span..=span)));
    let (a, b, c) = (r(), r(), r());
    let m = std::array::from_fn(|_| rat(rng.gen_range(1..=m_max), rng.gen_range(1..=4)));
    BottOrbifold::new(a, b, c, m).expect("positive ramification")
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: usize,
    example: Option<String>,
}

fn basis_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite {
        name: "four-basis consistency of c1_orb",
        cases: CASES,
        failures: 0,
        example: None,
    };
    for _ in 0..CASES {
        let o = random_orbifold(rng, 50, 100);
        let target = o.c1_orb(Basis::X1X2X3);
        if Basis::ALL
            .iter()
            .any(|&b| o.basis_change(&o.c1_orb(b), Basis::X1X2X3) != target)
        {
            s.failures += 1;
            s.example.get_or_insert_with(|| format!("{o:?}"));
        }
    }
    s
}

fn monoid_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite {
        name: "monoid action preserves log Fano",
        cases: CASES,
        failures: 0,
        example: None,
    };
    for _ in 0..CASES {
        let o = loop {
            let o = random_orbifold(rng, 3, 40);
            if o.is_log_fano() {
                break o;
            }
        };
        let lambda: [Rational; 6] = std::array::from_fn(|_| rat(rng.gen_range(4..=40), 4));
        let shift: [Rational; 6] = std::array::from_fn(|_| rat(rng.gen_range(0..=40), 4));
        let moved = o.monoid_act(&lambda, &shift).expect("λ >= 1, shift >= 0");
        if !moved.is_log_fano() {
            s.failures += 1;
            s.example.get_or_insert_with(|| {
                let show = |xs: &[Rational]| {
                    xs.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!(
                    "(a,b,c)=({},{},{}) m=({}) λ=({}) shift=({})",
                    o.a,
                    o.b,
                    o.c,
                    show(&o.m),
                    show(&lambda),
                    show(&shift)
                )
            });
        }
    }
    s
}

fn round_trip_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite {
        name: "w_from_k / se_ray_from_w / verify_se_ray round trip",
        cases: CASES,
        failures: 0,
        example: None,
    };
    for _ in 0..CASES {
        let den = rng.gen_range(1..=200i64);
        let num = rng.gen_range(den + 1..=20 * den);
        let k = rat(num, den);
        let ok = w_from_k(&k).and_then(|(w1, w2)| {
            let ray = se_ray_from_w(&w1, &w2)?;
            let (v0, vi) = ray.v3().expect("rational k gives a rational ray");
            Ok(ray.k() == RealRoot::Rational(k.clone()) && verify_se_ray(&w1, &w2, v0, vi))
        });
        if !matches!(ok, Ok(true)) {
            s.failures += 1;
            s.example.get_or_insert_with(|| format!("k = {k}: {ok:?}"));
        }
    }
    s
}

fn cubic_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite {
        name: "Einstein cubic has one root in (1, ∞)",
        cases: CASES,
        failures: 0,
        example: None,
    };
    let one = Rational::one();
    let mut done = 0;
    while done < CASES {
        let w1 = rng.gen_range(2..=1_000_000i64);
        let w2 = rng.gen_range(1..w1);
        if num_integer::gcd(w1, w2) != 1 {
            continue;
        }
        done += 1;
        let count = real_roots(&se_cubic(&int(w1), &int(w2))).map(|roots| {
            roots
                .iter()
                .filter(|r| r.cmp_rational(&one).is_gt())
                .count()
        });
        if !matches!(count, Ok(1)) {
            s.failures += 1;
            s.example
                .get_or_insert_with(|| format!("w = ({w1}, {w2}): {count:?}"));
        }
    }
    s
}

fn einstein_suite() -> Suite {
    let mut s = Suite {
        name: "Einstein ray back-substitution, all quasi-regular p <= 200",
        cases: 0,
        failures: 0,
        example: None,
    };
    for p in 2..=200i64 {
        for q in 1..p {
            let disc = 4 * p * p - 3 * q * q;
            let root = (disc as f64).sqrt().round() as i64;
            if num_integer::gcd(p, q) != 1 || root * root != disc {
                continue;
            }
            s.cases += 1;
            let ok = einstein_ray(&int(p), &int(q)).map(|(v0, vi)| {
                integrate_sym(&einstein_integrand(&int(p), &int(q), &v0, &vi)).is_zero()
            });
            if !matches!(ok, Ok(true)) {
                s.failures += 1;
                s.example
                    .get_or_insert_with(|| format!("(p, q) = ({p}, {q}): {ok:?}"));
            }
        }
    }
    s
}

fn criterion_7(d: &mut Diff) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let suites = [
        basis_suite(&mut rng),
        monoid_suite(&mut rng),
        round_trip_suite(&mut rng),
        cubic_suite(&mut rng),
        einstein_suite(),
    ];
    for s in &suites {
        let status = if s.failures == 0 { "ok" } else { "FAILED" };
        println!(
            "       {status:6} {} ({} cases, {} failures)",
            s.name, s.cases, s.failures
        );
        if let Some(ex) = &s.example {
            println!("              first counterexample: {ex}");
        }
        if s.failures > 0 {
            d.0.push(format!(
                "{}: {} of {} cases fail",
                s.name, s.failures, s.cases
            ));
        }
    }
    d.within(start.elapsed(), Duration::from_secs(30));
}

fn criterion_8(d: &mut Diff) {
    let found: BTreeSet<(Integer, Integer)> =
        enumerate_ypq(40).into_iter().map(|y| (y.p, y.q)).collect();
    let mut oracle = BTreeSet::new();
    for p in 2..=40i64 {
        for q in 1..p {
            let disc = 4 * p * p - 3 * q * q;
            if num_integer::gcd(p, q) == 1 && (1..=2 * p).any(|r| r * r == disc) {
                oracle.insert((int(p), int(q)));
            }
        }
    }
    d.eq("enumerate_ypq(40)", &found, &oracle);
    for (p, q) in [
        (7, 3),
        (7, 5),
        (13, 7),
        (13, 8),
        (19, 5),
        (19, 16),
        (37, 33),
    ] {
        d.check(
            &format!("contains ({p}, {q})"),
            found.contains(&(int(p), int(q))),
        );
    }
}

fn criterion_9(d: &mut Diff) {
    let ks = [rat(2, 1), rat(3, 1), rat(3, 2), rat(5, 3), rat(7, 2)];
    let mut records = 0;
    for y in enumerate_ypq(40) {
        for k in &ks {
            let label = format!("Y^{{{},{}}} k={k}", y.p, y.q);
            let r = match build_record_k(y.clone(), k) {
                Ok(r) => r,
                Err(e) => {
                    d.0.push(format!("{label}: {e}"));
                    continue;
                }
            };
            records += 1;
            let (Some(reg), Some((v0, vi))) = (&r.regular, r.ray.v3()) else {
                d.check(&format!("{label} quasi-regular"), false);
                continue;
            };
            d.check(
                &format!("{label} Einstein integral"),
                verify_se_ray(&r.spec.w1, &r.spec.w2, v0, vi),
            );
            d.check(&format!("{label} KE1"), reg.ke.ke1);
            d.check(&format!("{label} KE2"), reg.ke.ke2);
            d.check(
                &format!("{label} log Fano"),
                reg.quotient.transverse_orbifold().is_log_fano(),
            );
            d.check(
                &format!("{label} Θ > 0"),
                sturm_positive_on(&reg.profile.f, &rat(-1, 1), &rat(1, 1)),
            );
        }
    }
    d.check("at least 50 records", records >= 50);
}

type Criterion = (&'static str, fn(&mut Diff));

fn main() {
    let criteria: [Criterion; 9] = [
        ("Golden Example A: Y^{13,8}, k=2, exact, < 1 s", criterion_1),
        ("Golden Example B: Y^{13,7}, k=2, exact", criterion_2),
        ("H4 torsion pairs and homotopy distinction", criterion_3),
        (
            "family t=1..10, Bezout identities, k2=0 non-smooth, < 5 s",
            criterion_4,
        ),
        ("KE1 and KE2 exact, broken by m3 entry +-1", criterion_5),
        ("profile F, endpoint slopes, Sturm positivity", criterion_6),
        ("property suites, 1000 cases each, < 30 s", criterion_7),
        ("enumerate_ypq(40) equals brute-force oracle", criterion_8),
        ("Einstein conditions on every catalog record", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut d = Diff::default();
        let start = Instant::now();
        run(&mut d);
        let elapsed = start.elapsed();
        let verdict = if d.0.is_empty() { "PASS" } else { "FAIL" };
        println!("{verdict} {} {name} ({elapsed:.2?})", i + 1);
        for line in d.0.iter().take(10) {
            println!("       {line}");
        }
        if d.0.len() > 10 {
            println!("       ... {} more", d.0.len() - 10);
        }
        failed += usize::from(!d.0.is_empty());
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
