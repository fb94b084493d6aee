use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use serde::Serialize;

use crate::verify::{Outcome, VerificationRecord};

pub fn write_jsonl<T: Serialize>(mut w: impl Write, items: &[T]) -> io::Result<()> {
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn read_records(r: impl BufRead) -> anyhow::Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| anyhow::anyhow!("report line {}: {e}", i + 1))?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Default)]
struct Row {
    groups: usize,
    ultra: usize,
    fully: usize,
    aut_ss: usize,
    cond: usize,
    agree: usize,
    skipped: usize,
    failed: usize,
}

fn yes(o: Outcome) -> usize {
    usize::from(o == Outcome::Known(true))
}

/// Per-order counts followed by the skipped and failing ids.
pub fn summary_table(records: &[VerificationRecord]) -> String {
    let mut rows: BTreeMap<usize, Row> = BTreeMap::new();
    for r in records {
        let row = rows.entry(r.order).or_default();
        row.groups += 1;
        row.ultra += yes(r.ultrasolvable);
        row.fully += yes(r.fully_solvable);
        row.aut_ss += yes(r.aut_supersolvable);
        row.cond += yes(r.condition2);
        row.agree += yes(r.main_theorem_agrees);
        row.skipped += usize::from(r.skip_reason().is_some());
        row.failed += usize::from(r.is_failure());
    }
    let mut s = String::new();
    let header = [
        "order", "groups", "ultra", "fully", "aut-ss", "cond2", "agree", "skipped", "failed",
    ];
    for h in header {
        let _ = write!(s, "{h:>8}");
    }
    s.push('\n');
    let mut total = Row::default();
    let line = |s: &mut String, label: String, r: &Row| {
        let cells = [
            r.groups, r.ultra, r.fully, r.aut_ss, r.cond, r.agree, r.skipped, r.failed,
        ];
        let _ = write!(s, "{label:>8}");
        for c in cells {
            let _ = write!(s, "{c:>8}");
        }
        s.push('\n');
    };
    for (order, r) in &rows {
        line(&mut s, order.to_string(), r);
        total.groups += r.groups;
        total.ultra += r.ultra;
        total.fully += r.fully;
        total.aut_ss += r.aut_ss;
        total.cond += r.cond;
        total.agree += r.agree;
        total.skipped += r.skipped;
        total.failed += r.failed;
    }
    line(&mut s, "total".into(), &total);
    for r in records {
        if let Some(reason) = r.skip_reason() {
            let _ = writeln!(s, "skipped {} ({reason:?})", r.id);
        }
    }
    for r in records.iter().filter(|r| r.is_failure()) {
        let why = r.error.clone().unwrap_or_else(|| {
            format!(
                "Aut supersolvable {:?}, ultrasolvable or H x V {:?}",
                r.aut_supersolvable, r.condition2
            )
        });
        let _ = writeln!(s, "FAILED {}: {why}", r.id);
    }
    s
}
