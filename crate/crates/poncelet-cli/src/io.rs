//! JSON ingestion and text/report emission.

use poncelet_core::ellipse::EllipseComponent;
use poncelet_core::verify::CheckResult;
use poncelet_core::{C64, Matrix64};
use serde::Deserialize;
use std::fmt::Write as _;
use std::fs;

fn invalid(msg: impl Into<String>) -> poncelet_core::Error {
    poncelet_core::Error::InvalidInput(msg.into())
}

fn read_to_string(path: &str) -> poncelet_core::Result<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))
}

#[derive(Deserialize)]
struct FociFile {
    foci: Vec<[f64; 2]>,
}

pub fn read_foci(path: &str) -> poncelet_core::Result<Vec<C64>> {
    let text = read_to_string(path)?;
    let parsed: FociFile =
        serde_json::from_str(&text).map_err(|e| invalid(format!("bad foci JSON: {e}")))?;
    if parsed.foci.is_empty() {
        return Err(invalid("foci list must not be empty"));
    }
    Ok(parsed
        .foci
        .into_iter()
        .map(|[re, im]| C64::new(re, im))
        .collect())
}

#[derive(Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

pub fn read_matrix(path: &str) -> poncelet_core::Result<Matrix64> {
    let text = read_to_string(path)?;
    let parsed: MatrixFile =
        serde_json::from_str(&text).map_err(|e| invalid(format!("bad matrix JSON: {e}")))?;
    if parsed.n == 0
        || parsed.entries.len() != parsed.n
        || parsed.entries.iter().any(|row| row.len() != parsed.n)
    {
        return Err(invalid("matrix entries must form an n x n grid"));
    }
    let mut m = Matrix64::zeros(parsed.n);
    for (i, row) in parsed.entries.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m.set(i, j, C64::new(re, im));
        }
    }
    Ok(m)
}

#[derive(Deserialize)]
struct EllipseFile {
    f1: [f64; 2],
    f2: [f64; 2],
    s: f64,
}

pub fn read_ellipse(path: &str) -> poncelet_core::Result<EllipseComponent<f64>> {
    let text = read_to_string(path)?;
    let parsed: EllipseFile =
        serde_json::from_str(&text).map_err(|e| invalid(format!("bad ellipse JSON: {e}")))?;
    EllipseComponent::new(
        C64::new(parsed.f1[0], parsed.f1[1]),
        C64::new(parsed.f2[0], parsed.f2[1]),
        parsed.s,
    )
}

/// Write to the given path, or to stdout when no path is given.
pub fn write_text(path: Option<&str>, text: &str) -> poncelet_core::Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| invalid(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn components_json(comps: &[EllipseComponent<f64>]) -> String {
    let mut out = String::from("[\n");
    for (i, c) in comps.iter().enumerate() {
        write!(
            out,
            "  {{\"f1\": [{:.16e}, {:.16e}], \"f2\": [{:.16e}, {:.16e}], \"s\": {:.16e}}}",
            c.f1().re,
            c.f1().im,
            c.f2().re,
            c.f2().im,
            c.s()
        )
        .unwrap();
        out.push_str(if i + 1 < comps.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub fn report_json(results: &[CheckResult]) -> String {
    let mut out = String::from("{\n  \"checks\": [\n");
    for (i, r) in results.iter().enumerate() {
        write!(
            out,
            "    {{\"name\": \"{}\", \"measured\": {:e}, \"bound\": {:e}, \"pass\": {}}}",
            r.name, r.measured, r.bound, r.pass
        )
        .unwrap();
        out.push_str(if i + 1 < results.len() { ",\n" } else { "\n" });
    }
    let all = results.iter().all(|r| r.pass);
    write!(out, "  ],\n  \"all_pass\": {all}\n}}\n").unwrap();
    out
}
