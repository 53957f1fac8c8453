//! Exit criteria. Run with `cargo test --test acceptance -- --nocapture` to see
//! one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde_json::Value;
use twobridge::census::{census_report_with, write_csv, write_json, Execution};
use twobridge::cli::dispatch;
use twobridge::{
    cf_value, complexity_interval, cor2_family, cover_bound, initial_ledger, lemma1_bound,
    normalize, reverse, sakuma_weeks_bound, theorem1_bound, TwoBridgeLink, VolumeTable,
};

use common::{brute_gcd, canonical_cfs, closed_form_upper};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_cli(args: &[&str]) -> (i32, String, Duration) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twobridge").chain(args.iter().copied());
    let start = Instant::now();
    let code = dispatch(argv, &mut out, &mut err);
    let elapsed = start.elapsed();
    (code, String::from_utf8(out).unwrap(), elapsed)
}

fn bound_json(p: &str, q: &str) -> Result<(Value, Duration), String> {
    // warm-up so the timing excludes one-time allocator and parser setup
    run_cli(&["bound", p, q, "--format", "json"]);
    let (code, out, elapsed) = run_cli(&["bound", p, q, "--format", "json"]);
    check(code == 0, format!("exit code {code}"))?;
    let v = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    Ok((v, elapsed))
}

fn ac1_figure_eight() -> Outcome {
    let (v, elapsed) = bound_json("5", "2")?;
    check(
        v["upper_thm1"] == 2,
        format!("upper_thm1 = {}", v["upper_thm1"]),
    )?;
    check(v["lower"] == 2, format!("lower = {}", v["lower"]))?;
    check(v["exact"] == 2, format!("exact = {}", v["exact"]))?;
    check(
        elapsed < Duration::from_millis(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("upper 2, lower 2, exact 2 in {elapsed:?}"))
}

fn ac2_whitehead() -> Outcome {
    let (v, _) = bound_json("8", "3")?;
    check(
        v["upper_thm1"] == 4,
        format!("upper_thm1 = {}", v["upper_thm1"]),
    )?;
    check(v["lower"] == 4, format!("lower = {}", v["lower"]))?;
    check(v["exact"] == 4, format!("exact = {}", v["exact"]))?;
    Ok("upper 4, lower 4, exact 4".into())
}

fn ac3_family_sweep() -> Outcome {
    let start = Instant::now();
    let mut prev: Vec<(u64, u64)> = Vec::new();
    for n in 2..=50usize {
        let (link, exact) = cor2_family(n).map_err(|e| e.to_string())?;
        let report = complexity_interval(&link).map_err(|e| e.to_string())?;
        let expected = 2 * n as u64 - 2;
        check(exact == expected, format!("n = {n}: exact {exact}"))?;
        check(
            report.upper_thm1 == expected && report.lower == expected,
            format!("n = {n}: [{}, {}]", report.lower, report.upper_thm1),
        )?;
        let pair = (link.p(), link.q());
        check(
            cf_value(link.cf()).map_err(|e| e.to_string())? == pair,
            format!("n = {n}: round trip"),
        )?;
        // [2,1,...,1,2] numerators and denominators follow p_n = p_{n-1} + p_{n-2}
        if let [.., a, b] = prev[..] {
            check(
                pair == (a.0 + b.0, a.1 + b.1),
                format!("n = {n}: {pair:?} breaks recurrence from {a:?}, {b:?}"),
            )?;
        }
        prev.push(pair);
    }
    let elapsed = start.elapsed();
    check(
        prev[..3] == [(5, 2), (8, 3), (13, 5)],
        format!("start {:?}", &prev[..3]),
    )?;
    check(
        elapsed < Duration::from_millis(10),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!("n = 2..50 exact, recurrence holds, {elapsed:?}"))
}

fn ac4_ledger_oracle() -> Outcome {
    let cfs = canonical_cfs(14);
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for cf in &cfs {
        let ledger = initial_ledger(cf)
            .and_then(|l| l.run_all_replacements())
            .map_err(|e| e.to_string())?;
        if ledger.total() as i64 != closed_form_upper(cf.entries()) {
            mismatches.push(cf.to_string());
        }
    }
    let elapsed = start.elapsed();
    check(mismatches.is_empty(), format!("mismatches: {mismatches:?}"))?;
    check(
        elapsed < Duration::from_secs(1),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{} fractions, 0 mismatches, {elapsed:?}",
        cfs.len()
    ))
}

fn ac5_worked_example() -> Outcome {
    let (code, out, _) = run_cli(&["spine", "--cf", "3,2,1,3,3"]);
    check(code == 0, format!("exit code {code}"))?;
    let lines: Vec<&str> = out.lines().collect();
    let marker = lines
        .iter()
        .position(|l| l.starts_with("replacement"))
        .ok_or("no replacement line")?;
    check(
        lines[marker - 1].ends_with("counts = [2,4,3,5,2]"),
        format!("initial counts line: {}", lines[marker - 1]),
    )?;
    let replacements: Vec<_> = lines
        .iter()
        .filter(|l| l.starts_with("replacement"))
        .collect();
    check(
        replacements.len() == 1,
        format!("{} replacements", replacements.len()),
    )?;
    check(
        replacements[0].contains("case (i)"),
        replacements[0].to_string(),
    )?;
    let before_total = lines[lines.len() - 2];
    check(
        before_total.ends_with("counts = [2,5,2,4,2]"),
        format!("final counts line: {before_total}"),
    )?;
    check(
        lines.last() == Some(&"total = 15"),
        format!("last line {:?}", lines.last()),
    )?;
    check(
        closed_form_upper(&[3, 2, 1, 3, 3]) == 15,
        "closed form disagrees",
    )?;
    Ok("[2,4,3,5,2] -> case (i) -> [2,5,2,4,2], total = 15".into())
}

fn ac6_inequalities() -> Outcome {
    let cfs = canonical_cfs(14);
    let mut violations = Vec::new();
    for cf in &cfs {
        let t1 = theorem1_bound(cf).map_err(|e| e.to_string())?;
        let l1 = lemma1_bound(cf).map_err(|e| e.to_string())?;
        let sw = sakuma_weeks_bound(cf).map_err(|e| e.to_string())?;
        let equality_expected = cf.entries().iter().all(|&a| a <= 2);
        let rev = theorem1_bound(&reverse(cf)).map_err(|e| e.to_string())?;
        let link = TwoBridgeLink::from_cf(cf).map_err(|e| e.to_string())?;
        let report = complexity_interval(&link).map_err(|e| e.to_string())?;
        let ok = t1 <= l1
            && t1 <= sw
            && (t1 == sw) == equality_expected
            && rev == t1
            && (!report.hyperbolic || report.lower <= report.upper_thm1);
        if !ok {
            violations.push(cf.to_string());
        }
    }
    check(violations.is_empty(), format!("violations: {violations:?}"))?;
    Ok(format!("{} fractions, 0 violations", cfs.len()))
}

fn ac7_covers() -> Outcome {
    let fig8 = normalize(5, 2).map_err(|e| e.to_string())?;
    let whitehead = normalize(8, 3).map_err(|e| e.to_string())?;
    for d in 2..=10u64 {
        let a = cover_bound(&fig8, d).map_err(|e| e.to_string())?;
        check(
            a.r == 1 && a.value == 3 * d,
            format!("K(5,2), d = {d}: {a:?}"),
        )?;
        let b = cover_bound(&whitehead, d).map_err(|e| e.to_string())?;
        check(
            b.r == 3 && b.value == 7 * d,
            format!("K(8,3), d = {d}: {b:?}"),
        )?;
    }
    Ok("3d and 7d for d = 2..10".into())
}

fn ac8_census() -> Outcome {
    let mut outputs = Vec::new();
    for execution in [Execution::Serial, Execution::Parallel] {
        let start = Instant::now();
        let rows = census_report_with(100, None, execution).map_err(|e| e.to_string())?;
        let mut json = Vec::new();
        write_json(&rows, &mut json).map_err(|e| e.to_string())?;
        let mut csv = Vec::new();
        write_csv(&rows, &mut csv).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(
            elapsed < Duration::from_secs(1),
            format!("{execution:?} took {elapsed:?}"),
        )?;
        outputs.push((json, csv, rows));
    }
    check(
        outputs[0].0 == outputs[1].0,
        "JSON differs between serial and parallel",
    )?;
    check(
        outputs[0].1 == outputs[1].1,
        "CSV differs between serial and parallel",
    )?;

    let (code_s, out_s, _) = run_cli(&["census", "--max-p", "100", "--serial", "--format", "csv"]);
    let (code_p, out_p, _) = run_cli(&["census", "--max-p", "100", "--format", "csv"]);
    check(code_s == 0 && code_p == 0, "census command failed")?;
    check(
        out_s == out_p,
        "CLI output differs between serial and parallel",
    )?;

    let rows = &outputs[0].2;
    for p in 2..=100u64 {
        let mut seen = BTreeSet::new();
        for row in rows.iter().filter(|r| r.p == p) {
            for &member in &row.class_members {
                check(
                    seen.insert(member),
                    format!("p = {p}: {member} in two classes"),
                )?;
            }
        }
        let coprime: BTreeSet<u64> = (1..p).filter(|&q| brute_gcd(p, q) == 1).collect();
        check(
            seen == coprime,
            format!("p = {p}: classes do not cover the coprime residues"),
        )?;
    }
    Ok(format!(
        "{} rows, byte-identical, partition holds",
        rows.len()
    ))
}

fn ac9_volumes() -> Outcome {
    let table = VolumeTable::from_reader("p,q,volume\n5,2,2.02988\n8,3,3.66386\n".as_bytes())
        .map_err(|e| e.to_string())?;
    let rows = census_report_with(8, Some(&table), Execution::Serial).map_err(|e| e.to_string())?;
    let find = |p: u64, q: u64| rows.iter().find(|r| r.p == p && r.q == q);
    let fig8 = find(5, 2).ok_or("no row K(5,2)")?;
    let whitehead = find(8, 3).ok_or("no row K(8,3)")?;
    check(
        fig8.lower_from_volume == Some(2),
        format!("K(5,2): {:?}", fig8.lower_from_volume),
    )?;
    check(
        fig8.effective_lower == 2,
        format!("K(5,2) effective {}", fig8.effective_lower),
    )?;
    check(
        whitehead.lower_from_volume == Some(4),
        format!("K(8,3): {:?}", whitehead.lower_from_volume),
    )?;
    check(
        whitehead.effective_lower == 4,
        format!("K(8,3) effective {}", whitehead.effective_lower),
    )?;
    Ok("effective lower bounds 2 and 4".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("AC1 figure-eight bound", ac1_figure_eight),
        ("AC2 Whitehead bound", ac2_whitehead),
        ("AC3 [2,1,...,1,2] family sweep", ac3_family_sweep),
        ("AC4 ledger vs closed form", ac4_ledger_oracle),
        ("AC5 C(3,2,1,3,3) trace", ac5_worked_example),
        ("AC6 inequality suite", ac6_inequalities),
        ("AC7 cover bounds", ac7_covers),
        ("AC8 census determinism and partition", ac8_census),
        ("AC9 volume ingestion", ac9_volumes),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                println!("FAIL  {name}: {reason}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
