use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use charseries::arith::prime_divisors;
use charseries::classify::{
    aut_supersolvable_from, condition2, is_2_nilpotent, is_fully_solvable_with, is_solvable,
    is_strictly_p_closed, is_supersolvable, is_ultrasolvable_with, ClassifyConfig, Verdict,
};
use charseries::group::{from_generators, GroupConfig};
use charseries::morphisms::{enumerate_automorphisms, DEFAULT_AUT_CAP, DEFAULT_END_CAP};
use charseries::Certificate;
use charseries_harness::lemmas::RowOutcome;
use charseries_harness::perm::parse_generators;
use charseries_harness::report::{read_records, summary_table, write_jsonl};
use charseries_harness::{
    count_predicate, ingest_catalog, recheck_records, verify_lemma, verify_main, CatalogEntry,
    CountPredicate, LemmaConfig, LemmaId,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "charseries",
    version,
    about = "Solvability-hierarchy verification over finite group catalogs"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalArgs {
    /// Automorphism enumeration cap.
    #[arg(long, global = true, env = "CHARSERIES_AUT_CAP", default_value_t = DEFAULT_AUT_CAP)]
    aut_cap: usize,
    /// Endomorphism enumeration cap.
    #[arg(long, global = true, env = "CHARSERIES_END_CAP", default_value_t = DEFAULT_END_CAP)]
    end_cap: usize,
    /// Automorphisms counted without storing them (two-group-corollary).
    #[arg(long, global = true, env = "CHARSERIES_COUNT_CAP", default_value_t = LemmaConfig::default().count_cap)]
    count_cap: usize,
    /// Largest group order accepted (larger catalog entries are ignored).
    #[arg(
        long,
        global = true,
        env = "CHARSERIES_MAX_ORDER",
        default_value_t = 20_000
    )]
    max_order: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CHARSERIES_WORKERS")]
    workers: Option<usize>,
    /// Seed for sampled subgroups and sampled table checks.
    #[arg(long, global = true, env = "CHARSERIES_SEED", default_value_t = 0)]
    seed: u64,
    /// Skip instead of running existence searches when a cap is exceeded.
    #[arg(long, global = true)]
    no_fallback: bool,
    /// Require chain steps to be normal in the whole group.
    #[arg(long, global = true)]
    normal_in_group: bool,
}

impl GlobalArgs {
    fn classify(&self) -> ClassifyConfig {
        ClassifyConfig {
            aut_cap: self.aut_cap,
            end_cap: self.end_cap,
            existence_fallback: !self.no_fallback,
            normal_in_group: self.normal_in_group,
        }
    }

    fn group(&self) -> GroupConfig {
        GroupConfig {
            max_order: self.max_order,
            seed: self.seed,
            ..GroupConfig::default()
        }
    }

    fn load(&self, path: &Path) -> Result<Vec<CatalogEntry>> {
        ingest_catalog(path, &self.group()).with_context(|| format!("loading {}", path.display()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verification runs over a catalog.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Count catalog groups of one order satisfying a predicate.
    Count {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        order: usize,
        /// ultrasolvable, fully-solvable, supersolvable or solvable.
        #[arg(long)]
        predicate: CountPredicate,
    },
    /// Run one property suite over a catalog.
    Lemma {
        /// sylow-tower, pcore, baer, abelian-rule, pgroup-equiv,
        /// two-group-corollary, corsi-tani, hierarchy, durbin-mcdonald or
        /// strict-closure.
        id: String,
        #[arg(long)]
        catalog: PathBuf,
        /// Write the full report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All verdicts and certificates for one permutation group.
    Classify {
        /// Generators separated by `;`, in cycle notation on 1..d or as
        /// 0-based image lists, e.g. "(1,2,3);(1,2)" or "[1,2,0];[1,0,2]".
        #[arg(long)]
        gens: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Compare supersolvability of Aut(G) with the structural condition.
    Main {
        #[arg(long)]
        catalog: PathBuf,
        /// Write one JSON record per group.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate every certificate stored in a report without searching.
    Certificates {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(k) = g.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()?;
    }
    match &cli.command {
        Command::Verify {
            what: VerifyCommand::Main { catalog, out },
        } => {
            let entries = g.load(catalog)?;
            let records = verify_main(&entries, &g.classify());
            if let Some(path) = out {
                let file =
                    File::create(path).with_context(|| format!("creating {}", path.display()))?;
                write_jsonl(BufWriter::new(file), &records)?;
            }
            print!("{}", summary_table(&records));
            Ok(exit(records.iter().all(|r| !r.is_failure())))
        }
        Command::Verify {
            what: VerifyCommand::Certificates { catalog, report },
        } => {
            let entries = g.load(catalog)?;
            let file =
                File::open(report).with_context(|| format!("opening {}", report.display()))?;
            let records = read_records(BufReader::new(file))?;
            let failures = recheck_records(&entries, &records, &g.classify());
            for f in &failures {
                println!("FAILED {} {}: {}", f.id, f.field, f.reason);
            }
            println!(
                "{} records re-validated, {} certificate failures",
                records.len(),
                failures.len()
            );
            Ok(exit(failures.is_empty()))
        }
        Command::Count {
            catalog,
            order,
            predicate,
        } => {
            let entries = g.load(catalog)?;
            let n = count_predicate(&entries, *order, *predicate, &g.classify())?;
            println!("{n}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemma { id, catalog, out } => {
            let lemma: LemmaId = id.parse()?;
            let entries = g.load(catalog)?;
            let cfg = LemmaConfig {
                classify: g.classify(),
                seed: g.seed,
                count_cap: g.count_cap,
                ..LemmaConfig::default()
            };
            let report = verify_lemma(&entries, lemma, &cfg);
            if let Some(path) = out {
                let file =
                    File::create(path).with_context(|| format!("creating {}", path.display()))?;
                serde_json::to_writer_pretty(BufWriter::new(file), &report)?;
            }
            for row in &report.rows {
                match &row.outcome {
                    RowOutcome::Pass => {}
                    RowOutcome::Fail(d) => println!("FAIL {}: {d}", row.id),
                    RowOutcome::Skip(d) => println!("skip {}: {d}", row.id),
                }
            }
            println!(
                "{}: {} passed, {} failed, {} skipped",
                report.lemma, report.passed, report.failed, report.skipped
            );
            Ok(exit(report.all_passed()))
        }
        Command::Classify { gens } => classify(g, gens),
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn describe(c: &Certificate) -> String {
    let orders = |steps: &[charseries::SubgroupMask]| {
        steps
            .iter()
            .map(|s| s.popcount().to_string())
            .collect::<Vec<_>>()
            .join(" < ")
    };
    match c {
        Certificate::Chain(ch) => format!("series of orders {}", orders(&ch.steps)),
        Certificate::ChiefSeries(cs) => format!("chief series of orders {}", orders(&cs.steps)),
        Certificate::AutChiefSeries(cs) => {
            format!("chief series of Aut(G) of orders {}", orders(&cs.steps))
        }
        Certificate::DerivedSeries(steps) => format!("derived series of orders {}", {
            let mut v = steps.clone();
            v.reverse();
            orders(&v)
        }),
        Certificate::NormalHall(h) => format!("normal Hall subgroup {:?}", h.to_vec()),
        Certificate::StrictlyPClosed { sylow, .. } => {
            format!("normal Sylow subgroup {:?}", sylow.to_vec())
        }
        Certificate::Decomposition {
            odd,
            klein,
            odd_chain,
        } => format!(
            "H = {:?}, V = {:?}, H series of orders {}",
            odd.to_vec(),
            klein.to_vec(),
            orders(&odd_chain.steps)
        ),
    }
}

fn classify(g: &GlobalArgs, gens: &str) -> Result<ExitCode> {
    let spec = parse_generators(gens)?;
    let group = from_generators(&spec, g.max_order, &g.group())?;
    let cfg = g.classify();
    println!("order {}", group.order());
    let show = |name: &str, v: &Verdict| {
        println!("{name}: {:?}", v.value);
        if let (true, Some(c)) = (v.is_true(), &v.certificate) {
            println!("  {}", describe(c));
            println!(
                "  {}",
                serde_json::to_string(c).expect("certificate serializes")
            );
        }
    };
    show("solvable", &is_solvable(&group));
    show("supersolvable", &is_supersolvable(&group));
    show("2-nilpotent", &is_2_nilpotent(&group));
    for p in prime_divisors(group.order()) {
        show(
            &format!("strictly {p}-closed"),
            &is_strictly_p_closed(&group, p),
        );
    }
    show("ultrasolvable", &is_ultrasolvable_with(&group, &cfg));
    show("fully solvable", &is_fully_solvable_with(&group, &cfg));
    match enumerate_automorphisms(&group, cfg.aut_cap) {
        Ok(autos) => {
            println!("|Aut(G)| = {}", autos.len());
            show(
                "Aut(G) supersolvable",
                &aut_supersolvable_from(&group, &autos),
            );
        }
        Err(e) => println!("Aut(G): skipped ({e})"),
    }
    match condition2(&group, &cfg) {
        Ok(v) => show("ultrasolvable or H x C2 x C2", &v),
        Err(e) => bail!(e),
    }
    Ok(ExitCode::SUCCESS)
}
