//! Runs every acceptance criterion and prints one PASS/FAIL line per
//! criterion on stderr (written directly, so the lines show even when the
//! test harness captures output). The test fails if any criterion fails.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use anyhow::{anyhow, bail, ensure, Context, Result};
use charseries::arith::prime_divisors;
use charseries::classify::{
    aut_supersolvable_from, condition2, has_sylow_tower_tail, is_a_solvable, is_fully_solvable,
    is_solvable, is_strictly_p_closed, is_supersolvable, is_ultrasolvable, CheckContext,
    ClassifyConfig, Predicate,
};
use charseries::group::GroupConfig;
use charseries::morphisms::{aut_as_group, enumerate_automorphisms, inner_automorphisms};
use charseries::SkipReason;
use charseries::{Certificate, InvarianceKind, Value};
use charseries_harness::report::read_records;
use charseries_harness::verify::Outcome;
use charseries_harness::{ingest_catalog, recheck_records, CatalogEntry, VerificationRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load(name: &str) -> Result<Vec<CatalogEntry>> {
    Ok(ingest_catalog(data(name), &GroupConfig::default())?)
}

fn say(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
    let _ = err.flush();
}

/// Runs the CLI with default caps and returns stdout; a nonzero exit is an error.
fn cli(args: &[&str]) -> Result<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_charseries"))
        .args(args)
        .env_remove("CHARSERIES_AUT_CAP")
        .env_remove("CHARSERIES_END_CAP")
        .env_remove("CHARSERIES_COUNT_CAP")
        .env_remove("CHARSERIES_SEED")
        .output()?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    ensure!(
        out.status.success(),
        "charseries {} exited with {}: {}{}",
        args.join(" "),
        out.status,
        stdout,
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(stdout)
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn entry<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.id() == id)
        .ok_or_else(|| anyhow!("{id} not in catalog"))
}

fn order_32_counts() -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let n32 = entries.iter().filter(|e| e.order() == 32).count();
    ensure!(n32 == 51, "catalog has {n32} groups of order 32");
    let catalog = data("small_groups_1_63.jsonl");
    for (pred, want) in [("ultrasolvable", "36"), ("fully-solvable", "22")] {
        let got = cli(&[
            "count",
            "--catalog",
            path_str(&catalog),
            "--order",
            "32",
            "--predicate",
            pred,
        ])?;
        ensure!(
            got.trim() == want,
            "{pred}: counted {}, expected {want}",
            got.trim()
        );
    }
    Ok(())
}

fn main_theorem_sweep(dir: &Path) -> Result<Vec<VerificationRecord>> {
    let report = dir.join("main.jsonl");
    let catalog = data("small_groups_1_63.jsonl");
    cli(&[
        "verify",
        "main",
        "--catalog",
        path_str(&catalog),
        "--out",
        path_str(&report),
    ])?;
    let records = read_records(std::io::BufReader::new(std::fs::File::open(&report)?))?;
    ensure!(records.len() == 319, "{} records", records.len());
    let mut skipped = Vec::new();
    for r in &records {
        ensure!(
            r.error.is_none(),
            "{}: {}",
            r.id,
            r.error.as_deref().unwrap_or_default()
        );
        match r.main_theorem_agrees {
            Outcome::Known(true) => {}
            Outcome::Known(false) => bail!("{} disagrees", r.id),
            Outcome::Skipped { skipped: reason } => {
                ensure!(
                    reason == SkipReason::AutCapExceeded,
                    "{} skipped for {reason:?}",
                    r.id
                );
                skipped.push(r.id.as_str());
            }
        }
    }
    let summary = cli(&[
        "verify",
        "certificates",
        "--catalog",
        path_str(&catalog),
        "--report",
        path_str(&report),
    ])?;
    ensure!(summary.contains("0 certificate failures"), "{summary}");
    say(&format!(
        "    {} agree, skipped (AutCapExceeded): {}",
        records.len() - skipped.len(),
        skipped.join(", ")
    ));
    Ok(records)
}

fn c6_by_c2() -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let e = entry(&entries, "12.5")?;
    let g = &e.group;
    ensure!(g.is_abelian() && g.exponent() == 6, "12.5 is not C6 x C2");
    ensure!(is_ultrasolvable(g).value == Value::False, "ultrasolvable");
    let c2 = condition2(g, &ClassifyConfig::default())?;
    match &c2.certificate {
        Some(Certificate::Decomposition { odd, klein, .. }) if c2.is_true() => {
            ensure!(
                odd.popcount() == 3 && klein.popcount() == 4,
                "decomposition of orders {} and {}",
                odd.popcount(),
                klein.popcount()
            );
        }
        _ => bail!(
            "structural condition gave {:?} without a C3 x V decomposition",
            c2.value
        ),
    }
    let autos = enumerate_automorphisms(g, 20_000)?;
    ensure!(autos.len() == 12, "|Aut| = {}", autos.len());
    ensure!(
        aut_supersolvable_from(g, &autos).is_true(),
        "Aut not supersolvable"
    );
    Ok(())
}

fn klein_four() -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let g = &entry(&entries, "4.2")?.group;
    ensure!(g.exponent() == 2, "4.2 is not the Klein four-group");
    let autos = enumerate_automorphisms(g, 20_000)?;
    ensure!(autos.len() == 6, "|Aut| = {}", autos.len());
    let aut = aut_as_group(g, &autos)?;
    ensure!(
        aut.group.order() == 6 && !aut.group.is_abelian(),
        "Aut is not nonabelian of order 6"
    );
    ensure!(is_ultrasolvable(g).value == Value::False, "ultrasolvable");
    ensure!(
        condition2(g, &ClassifyConfig::default())?.is_true(),
        "neither ultrasolvable nor H x V"
    );
    Ok(())
}

fn dihedral_8() -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let g = &entry(&entries, "8.3")?.group;
    ensure!(
        g.order() == 8
            && !g.is_abelian()
            && g.elements().filter(|&x| g.element_order(x) == 2).count() == 5,
        "8.3 is not D8"
    );
    let v = is_ultrasolvable(g);
    let Some(Certificate::Chain(chain)) = &v.certificate else {
        bail!("no chain certificate")
    };
    ensure!(
        v.is_true() && chain.steps.len() == 4,
        "{} steps",
        chain.steps.len().saturating_sub(1)
    );
    ensure!(
        chain.invariance_kind == InvarianceKind::AutomorphismSet,
        "wrong invariance kind"
    );
    CheckContext::new(g, &ClassifyConfig::default()).recheck(Predicate::Ultrasolvable, &v)?;
    ensure!(is_fully_solvable(g).value == Value::False, "fully solvable");
    Ok(())
}

const LEMMAS: [&str; 10] = [
    "pcore",
    "baer",
    "sylow-tower",
    "abelian-rule",
    "two-group-corollary",
    "corsi-tani",
    "hierarchy",
    "pgroup-equiv",
    "strict-closure",
    "durbin-mcdonald",
];

fn lemma_suites(dir: &Path) -> Result<()> {
    let mut text = std::fs::read_to_string(data("small_groups_1_63.jsonl"))?;
    text.push_str(&std::fs::read_to_string(data("small_groups_64.jsonl"))?);
    let catalog = dir.join("small_groups_1_64.jsonl");
    std::fs::write(&catalog, text)?;
    let mut failures = Vec::new();
    for lemma in LEMMAS {
        let out = dir.join(format!("{lemma}.json"));
        let run = cli(&[
            "--seed",
            "1",
            "lemma",
            lemma,
            "--catalog",
            path_str(&catalog),
            "--out",
            path_str(&out),
        ]);
        let report: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(&out).with_context(|| format!("{lemma} report"))?,
        )?;
        say(&format!(
            "    {lemma}: {} passed, {} failed, {} skipped",
            report["passed"], report["failed"], report["skipped"]
        ));
        if let Err(e) = run {
            failures.push(format!("{lemma}: {e}"));
        }
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn inner_vs_chief_series() -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let bad: Vec<&str> = entries
        .iter()
        .filter(|e| {
            is_a_solvable(&e.group, &inner_automorphisms(&e.group)).value
                != is_supersolvable(&e.group).value
        })
        .map(|e| e.id())
        .collect();
    ensure!(bad.is_empty(), "disagreement on {}", bad.join(", "));
    Ok(())
}

/// Every true verdict re-validates, and toggling one element of any single
/// mask in any certificate is rejected.
fn certificate_audit(records: &[VerificationRecord]) -> Result<()> {
    let entries = load("small_groups_1_63.jsonl")?;
    let cfg = ClassifyConfig::default();
    let failures = recheck_records(&entries, records, &cfg);
    ensure!(
        failures.is_empty(),
        "{} stored certificates fail, first {:?}",
        failures.len(),
        failures[0]
    );
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut audited, mut mutants) = (0usize, 0usize);
    for (e, r) in entries.iter().zip(records) {
        ensure!(e.id() == r.id, "report order differs from catalog");
        let g = &e.group;
        let ctx = CheckContext::new(g, &cfg);
        let mut certs: Vec<(Predicate, Certificate)> = Vec::new();
        let mut push = |pred: Predicate, v: charseries::Verdict| -> Result<()> {
            if v.is_true() {
                ctx.recheck(pred, &v)
                    .with_context(|| format!("{} {pred:?}", e.id()))?;
                certs.push((pred, v.certificate.expect("rechecked")));
            }
            Ok(())
        };
        push(Predicate::Solvable, is_solvable(g))?;
        push(Predicate::Supersolvable, is_supersolvable(g))?;
        for p in prime_divisors(g.order()) {
            push(Predicate::StrictlyPClosed(p), is_strictly_p_closed(g, p))?;
            push(Predicate::SylowTowerTail(p), has_sylow_tower_tail(g, p))?;
        }
        let stored = &r.certificates;
        for (pred, c) in [
            (Predicate::Ultrasolvable, &stored.ultrasolvable),
            (Predicate::FullySolvable, &stored.fully_solvable),
            (Predicate::AutSupersolvable, &stored.aut_supersolvable),
            (Predicate::Condition2, &stored.condition2),
        ] {
            if let Some(c) = c {
                certs.push((pred, c.clone()));
            }
        }
        audited += certs.len();
        for (pred, cert) in &certs {
            let masks = cert.clone().masks_mut().len();
            for i in 0..masks {
                let mut bad = cert.clone();
                let mask = &mut bad.masks_mut()[i];
                let x = rng.gen_range(0..mask.parent_order());
                mask.toggle(x);
                mutants += 1;
                ensure!(
                    ctx.check(*pred, &bad).is_err(),
                    "{} {pred:?}: toggling {x} in mask {i} went undetected",
                    e.id()
                );
            }
        }
    }
    say(&format!(
        "    {audited} certificates re-validated, {mutants} single-mask mutants rejected"
    ));
    Ok(())
}

fn run<T>(
    results: &mut Vec<bool>,
    n: usize,
    title: &str,
    f: impl FnOnce() -> Result<T>,
) -> Option<T> {
    let start = std::time::Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(anyhow!("panicked: {}", msg.unwrap_or_default()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(v) => {
            say(&format!("PASS criterion {n}: {title} ({secs:.1}s)"));
            results.push(true);
            Some(v)
        }
        Err(e) => {
            say(&format!("FAIL criterion {n}: {title} ({secs:.1}s): {e:#}"));
            results.push(false);
            None
        }
    }
}

#[test]
fn acceptance_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let mut results = Vec::new();
    run(
        &mut results,
        1,
        "order 32 has 36 ultrasolvable and 22 fully solvable groups",
        order_32_counts,
    );
    let records = run(
        &mut results,
        2,
        "Aut(G) supersolvable iff ultrasolvable or H x V, all orders <= 63",
        || main_theorem_sweep(dir.path()),
    );
    run(
        &mut results,
        3,
        "C6 x C2: not ultrasolvable, C3 x V decomposition, |Aut| = 12 supersolvable",
        c6_by_c2,
    );
    run(
        &mut results,
        4,
        "Klein four: |Aut| = 6 nonabelian, not ultrasolvable, splits as H x V",
        klein_four,
    );
    run(
        &mut results,
        5,
        "D8: ultrasolvable with a 3-step certificate, not fully solvable",
        dihedral_8,
    );
    run(&mut results, 6, "property suites over orders <= 64", || {
        lemma_suites(dir.path())
    });
    run(
        &mut results,
        7,
        "chief-series supersolvability equals Inn(G)-solvability, orders <= 63",
        inner_vs_chief_series,
    );
    match &records {
        Some(records) => {
            run(
                &mut results,
                8,
                "certificate audit and single-mask mutation",
                || certificate_audit(records),
            );
        }
        None => {
            say("FAIL criterion 8: certificate audit and single-mask mutation: no report from criterion 2");
            results.push(false);
        }
    }
    let passed = results.iter().filter(|&&ok| ok).count();
    say(&format!(
        "{passed}/{} acceptance criteria passed",
        results.len()
    ));
    assert_eq!(passed, results.len(), "some acceptance criteria failed");
}
