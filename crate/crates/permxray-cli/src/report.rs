//! The `report` subcommand: every reference table as JSON plus aligned text,
//! with a manifest of content digests. Identical inputs produce identical
//! digests; only the manifest timestamp varies between runs.

use std::fs;
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::Context;
use permxray::{binary, degeneracy, structures};
use serde_json::json;
use sha2::{Digest, Sha256};

struct RunRecord {
    command: String,
    params: serde_json::Value,
    file: String,
    digest: String,
    elapsed_ms: u64,
}

fn digest_hex(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in hash {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn write_artifact(
    dir: &Path,
    records: &mut Vec<RunRecord>,
    name: &str,
    params: serde_json::Value,
    started: Instant,
    json_value: &serde_json::Value,
    text: &str,
) -> anyhow::Result<()> {
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let json_bytes = format!("{}\n", serde_json::to_string_pretty(json_value)?);
    for (file, bytes) in [
        (format!("{name}.json"), json_bytes.into_bytes()),
        (format!("{name}.txt"), text.as_bytes().to_vec()),
    ] {
        let path = dir.join(&file);
        fs::write(&path, &bytes).with_context(|| format!("writing {}", path.display()))?;
        records.push(RunRecord {
            command: format!("report/{name}"),
            params: params.clone(),
            file,
            digest: format!("sha256:{}", digest_hex(&bytes)),
            elapsed_ms,
        });
    }
    Ok(())
}

/// Writes the four reference tables and the manifest into `out`.
pub fn write_all(out: &Path, _offline: bool) -> anyhow::Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut records = Vec::new();

    // Distinct X-ray counts with the maximum-degeneracy word per order.
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut text = String::from("n   x_n    x_max            delta\n");
    for n in 1..=8usize {
        let x_n = degeneracy::count_distinct_xrays(n)?;
        let (words, delta) = degeneracy::max_degeneracy_words(n, 8)?;
        let words: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        text.push_str(&format!(
            "{n:<3} {x_n:<6} {:<16} {delta}\n",
            words.join(",")
        ));
        rows.push(json!({ "n": n, "x_n": x_n, "x_max": words, "delta": delta }));
    }
    let value = json!({ "schema": "permxray/1", "kind": "xray-counts", "rows": rows });
    write_artifact(
        out,
        &mut records,
        "xray_counts",
        json!({ "n": "1..8" }),
        started,
        &value,
        &text,
    )?;

    // Degeneracy class-size lines.
    let started = Instant::now();
    let mut lines = Vec::new();
    let mut text = String::new();
    let mut notes = Vec::new();
    for n in 2..=7usize {
        let report = degeneracy::enumerate_classes(n)?;
        text.push_str(&report.histogram_line());
        text.push('\n');
        if let Some(note) = degeneracy::reference_line_note(&report) {
            text.push_str(&format!("NOTE: {note}\n"));
            notes.push(json!({ "n": n, "note": note }));
        }
        lines.push(report.to_json(false));
    }
    let value = json!({
        "schema": "permxray/1",
        "kind": "degeneracy-classes",
        "rows": lines,
        "notes": notes,
    });
    write_artifact(
        out,
        &mut records,
        "degeneracy_classes",
        json!({ "n": "2..7" }),
        started,
        &value,
        &text,
    )?;

    // Circulant words and numeral values for odd orders.
    let started = Instant::now();
    let mut tables = Vec::new();
    let mut text = String::new();
    for n in [3usize, 5, 7] {
        let report = binary::circulant_formula_report(n)?;
        text.push_str(&format!("order {n}\n"));
        text.push_str("k  perm     x(perm)        d     formula\n");
        for row in &report.rows {
            text.push_str(&format!(
                "{:<2} {:<8} {:<14} {:<5} {}\n",
                row.k, row.permutation, row.word, row.d_direct, row.d_formula
            ));
        }
        text.push('\n');
        tables.push(serde_json::to_value(&report)?);
    }
    let value = json!({ "schema": "permxray/1", "kind": "circulants", "tables": tables });
    write_artifact(
        out,
        &mut records,
        "circulants",
        json!({ "n": [3, 5, 7] }),
        started,
        &value,
        &text,
    )?;

    // Palindromic counts next to involution counts.
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut text = String::from("n   l_n    i_n\n");
    for n in 2..=9usize {
        let l_n = structures::count_palindromic(n)?;
        let i_n = structures::involution_count(n);
        text.push_str(&format!("{n:<3} {l_n:<6} {i_n}\n"));
        rows.push(json!({ "n": n, "l_n": l_n, "i_n": i_n }));
    }
    let value = json!({ "schema": "permxray/1", "kind": "palindromic-counts", "rows": rows });
    write_artifact(
        out,
        &mut records,
        "palindromic_counts",
        json!({ "n": "2..9" }),
        started,
        &value,
        &text,
    )?;

    let timestamp_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let manifest = json!({
        "schema": "permxray/1",
        "kind": "manifest",
        "created_ms": timestamp_ms,
        "records": records
            .iter()
            .map(|r| {
                json!({
                    "command": r.command,
                    "params": r.params,
                    "file": r.file,
                    "result_digest": r.digest,
                    "elapsed_ms": r.elapsed_ms,
                })
            })
            .collect::<Vec<_>>(),
    });
    let manifest_path = out.join("manifest.json");
    fs::write(
        &manifest_path,
        format!("{}\n", serde_json::to_string_pretty(&manifest)?),
    )
    .with_context(|| format!("writing {}", manifest_path.display()))?;
    Ok(())
}
