use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sejoin::catalog::{
    build_record, build_record_k, enumerate_joins, enumerate_ypq, export, profile_from_row,
    q_counts, read_rows, render, verify_paper_examples, Format, JoinSearch, SERecord,
};
use sejoin::kernel::{parse_rational, Integer, Rational};
use sejoin::metric::{profile_table, render_profile};
use sejoin::ypq::{family_pq, YpqEinstein};
use sejoin::Error;

#[derive(Parser)]
#[command(
    name = "sejoin",
    version,
    about = "Sasaki-Einstein joins Y^{p,q} * S^3_w, computed exactly"
)]
struct Cli {
    /// Fractional digits for certified bounds of irregular rays.
    #[arg(long, global = true, default_value_t = 40)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the quasi-regular Y^{p,q} with p <= P.
    Ypq {
        #[arg(long = "max", value_name = "P")]
        max: u64,
        /// Also print the homogeneous structure, formally (p, q) = (1, 0).
        #[arg(long)]
        homogeneous: bool,
    },
    /// Build one join with the canonical (l1, l2).
    Join {
        #[arg(long)]
        p: Integer,
        #[arg(long)]
        q: Integer,
        #[command(flatten)]
        ray: RayChoice,
        /// Print the JSON record instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// The one-parameter family with k2 = 255 t + 10 (or k2 given directly).
    Family {
        #[arg(long, conflicts_with = "k2", required_unless_present = "k2")]
        t: Option<u64>,
        #[arg(long)]
        k2: Option<u64>,
        #[arg(long, value_name = "NUM/DEN", default_value = "3")]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive the published worked examples and diff them.
    VerifyPaper,
    /// Tabulate the Einstein profile of a stored record.
    Profile {
        #[arg(long, value_name = "FILE")]
        record: PathBuf,
        #[arg(long, value_name = "N")]
        grid: u32,
        /// Which record of an array to use.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Add a rounded decimal column with this many digits.
        #[arg(long, value_name = "DIGITS", num_args = 0..=1, default_missing_value = "50")]
        decimal: Option<u32>,
    },
    /// Write a catalog of joins over all quasi-regular Y^{p,q} with p <= P.
    Export {
        #[arg(long, value_parser = ["json", "csv"])]
        format: String,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        #[arg(long = "max", value_name = "P", default_value_t = 13)]
        max: u64,
        /// Cubic roots k > 1, repeatable; defaults to k = 2.
        #[arg(long = "k", value_name = "NUM/DEN", conflicts_with = "w_bound")]
        ks: Vec<String>,
        /// All coprime weights w1 > w2 with w1 <= W instead of a k list.
        #[arg(long, value_name = "W")]
        w_bound: Option<u64>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RayChoice {
    /// Rational root k > 1 of the Einstein cubic.
    #[arg(long, value_name = "NUM/DEN")]
    k: Option<String>,
    /// Weights of S^3_w.
    #[arg(long, value_name = "W1,W2")]
    w: Option<String>,
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_)
            | Error::NotKahlerEinstein { .. }
            | Error::ProfileNotPositive
            | Error::ProfileVanishes(_)
            | Error::SeRootCount { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_w(s: &str) -> Result<(Integer, Integer), Error> {
    let bad = || Error::Parse(format!("expected W1,W2, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn print_record(r: &SERecord, json: bool, digits: u32) -> Outcome {
    if json {
        print!("{}", render(std::slice::from_ref(r), Format::Json, digits)?);
        return Ok(());
    }
    let s = &r.spec;
    let y = &s.ypq;
    println!(
        "Y^{{{},{}}}: v2=({},{}) m2={} m2_pair=({},{}) a={} I={}",
        y.p, y.q, y.v2_0, y.v2_inf, y.m2, y.m2_0, y.m2_inf, y.a, y.fano_index
    );
    println!("w=({},{}) l=({},{})", s.w1, s.w2, s.l1, s.l2);
    match r.ray.v3() {
        Some((v0, vi)) => println!("ray: quasi-regular k={} v3=({v0},{vi})", r.ray.k()),
        None => {
            let sejoin::join::ReebRay::Irregular { k, ratio } = &r.ray else {
                unreachable!()
            };
            let (lo, hi) = k.decimal_bounds(digits);
            println!("ray: irregular k in [{lo}, {hi}]");
            let (lo, hi) = ratio.decimal_bounds(digits);
            println!("v3_inf/v3_0 in [{lo}, {hi}]");
        }
    }
    if let Some(reg) = &r.regular {
        let q = &reg.quotient;
        let m: Vec<String> = q.m.iter().map(|x| x.to_string()).collect();
        println!(
            "quotient: s={} m3={} n={} a={} b={} c={} m=({})",
            q.s,
            q.m3,
            q.n,
            q.a,
            q.b,
            q.c,
            m.join(",")
        );
        println!(
            "r3={} ke1={} ke2={} log_fano={}",
            reg.calabi.r3, reg.ke.ke1, reg.ke.ke2, reg.log_fano
        );
        println!("F(z) = {}", reg.profile.f);
    }
    println!("H4 torsion: {}", r.torsion);
    println!("smooth: {}", r.is_smooth());
    for note in &r.notes {
        println!("note: {note}");
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let digits = cli.digits;
    match cli.command {
        Command::Ypq { max, homogeneous } => {
            if max < 2 {
                return Err(Failure::Usage("--max must be at least 2".into()));
            }
            println!("p\tq\tv2_0\tv2_inf\tm2\ta\tI");
            let print = |y: &YpqEinstein| {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    y.p, y.q, y.v2_0, y.v2_inf, y.m2, y.a, y.fano_index
                )
            };
            if homogeneous {
                print(&YpqEinstein::homogeneous());
            }
            let ys = enumerate_ypq(max);
            ys.iter().for_each(print);
            for (p, count) in q_counts(&ys) {
                println!("# p={p}: {count} quasi-regular q");
            }
            Ok(())
        }
        Command::Join { p, q, ray, json } => {
            let y = YpqEinstein::solve(p, q)?;
            let record = match (ray.k, ray.w) {
                (Some(k), _) => build_record_k(y, &parse_rational(&k)?)?,
                (_, Some(w)) => {
                    let (w1, w2) = parse_w(&w)?;
                    build_record(y, w1, w2)?
                }
                _ => unreachable!("clap requires one of --k, --w"),
            };
            print_record(&record, json, digits)
        }
        Command::Family { t, k2, k, json } => {
            let k2 = match (t, k2) {
                (Some(0), _) => return Err(Failure::Usage("--t must be positive".into())),
                (Some(t), _) => 255 * t + 10,
                (None, Some(k2)) => k2,
                _ => unreachable!("clap requires --t or --k2"),
            };
            let (p, q) = family_pq(k2);
            let record = build_record_k(YpqEinstein::solve(p, q)?, &parse_rational(&k)?)?;
            print_record(&record, json, digits)
        }
        Command::VerifyPaper => {
            let report = verify_paper_examples();
            println!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("published values differ".into()))
            }
        }
        Command::Profile {
            record,
            grid,
            index,
            decimal,
        } => {
            if grid == 0 {
                return Err(Failure::Usage("--grid must be at least 1".into()));
            }
            let rows = read_rows(&record)?;
            let row = rows.get(index).ok_or_else(|| {
                Failure::Usage(format!("{} has {} records", record.display(), rows.len()))
            })?;
            let (profile, _) = profile_from_row(row)?;
            print!(
                "{}",
                render_profile(&profile, &profile_table(&profile, grid), decimal)
            );
            Ok(())
        }
        Command::Export {
            format,
            out,
            max,
            ks,
            w_bound,
        } => {
            let format: Format = format.parse()?;
            let search = match w_bound {
                Some(w) => JoinSearch::WBound(w),
                None if ks.is_empty() => JoinSearch::Ks(vec![Rational::from_integer(2.into())]),
                None => JoinSearch::Ks(
                    ks.iter()
                        .map(|k| parse_rational(k))
                        .collect::<Result<_, _>>()?,
                ),
            };
            let mut records = Vec::new();
            let mut broken = 0;
            for y in enumerate_ypq(max) {
                for outcome in enumerate_joins(&y, &search) {
                    match outcome.record {
                        Ok(r) => records.push(r),
                        Err(e) => {
                            eprintln!("Y^{{{},{}}} {}: {e}", y.p, y.q, outcome.input);
                            if matches!(Failure::from(e), Failure::Verification(_)) {
                                broken += 1;
                            }
                        }
                    }
                }
            }
            export(&records, format, &out, digits)?;
            eprintln!("wrote {} records to {}", records.len(), out.display());
            if broken > 0 {
                return Err(Failure::Verification(format!(
                    "{broken} records failed verification"
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
