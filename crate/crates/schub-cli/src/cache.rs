//! JSON-lines result cache for quantum products.
//!
//! One record per line, keyed by `(type, u, v)` with `u`, `v` as canonical
//! reduced words.  Writes are idempotent: a key that is already present is
//! never appended again.  Reads are defensive: a line that does not parse,
//! or whose payload fails validation against the root system, is skipped
//! with a warning on stderr — a damaged cache can cost recomputation but
//! never produce wrong data.  A reconstructed sum is the same value the
//! engine would compute, so cache hits render byte-identically.

use schub::quantum::{QKey, QuantumSum};
use schub::root_system::{CorootVec, RootSystem};
use schub::symbolic::{Polynomial, Q};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

/// The lookup key: Lie type plus canonical reduced words of the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Key {
    pub lie_type: String,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct Record {
    #[serde(rename = "type")]
    lie_type: String,
    u: Vec<usize>,
    v: Vec<usize>,
    rows: Vec<RecordRow>,
}

#[derive(Serialize, Deserialize)]
struct RecordRow {
    w: Vec<usize>,
    lambda: Vec<i64>,
    coef: Vec<RecordTerm>,
}

#[derive(Serialize, Deserialize)]
struct RecordTerm {
    exp: Vec<u32>,
    coef: String,
}

fn warn(path: &Path, line_no: usize, why: &str) {
    eprintln!(
        "warning: skipping corrupt cache line {} in {}: {}",
        line_no,
        path.display(),
        why
    );
}

/// Parses every line of the cache file, returning `(line_no, record)` for
/// each well-formed line and warning about the rest.
fn records(path: &Path) -> Vec<(usize, Record)> {
    let Ok(text) = fs::read_to_string(path) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Record>(line) {
            Ok(rec) => out.push((idx + 1, rec)),
            Err(err) => warn(path, idx + 1, &err.to_string()),
        }
    }
    out
}

/// Rebuilds the stored sum, or explains why the record is invalid.
fn reconstruct(rs: &RootSystem, rec: &Record) -> Result<QuantumSum, String> {
    let n = rs.rank();
    let width = n + 1;
    let mut sum = QuantumSum::new(width);
    for row in &rec.rows {
        let w = rs
            .weyl_from_word(&row.w)
            .map_err(|e| format!("bad w word: {e}"))?;
        if row.lambda.len() != n {
            return Err(format!("lambda has {} coordinates, expected {n}", row.lambda.len()));
        }
        if row.lambda.iter().any(|&c| c < 0) {
            return Err("lambda is not effective".to_string());
        }
        let mut terms = Vec::with_capacity(row.coef.len());
        for t in &row.coef {
            let q: Q = t.coef.parse().map_err(|e| format!("bad rational `{}`: {e}", t.coef))?;
            terms.push((t.exp.clone(), q));
        }
        let coef = Polynomial::from_terms(width, terms).map_err(|e| format!("bad term: {e}"))?;
        sum.insert_add(QKey::new(w, CorootVec(row.lambda.clone())), coef);
    }
    Ok(sum)
}

/// Looks the key up; on multiple matches (possible only if the file was
/// edited by hand) the last valid one wins.
pub fn lookup(path: &Path, rs: &RootSystem, key: &Key) -> Option<QuantumSum> {
    let mut hit = None;
    for (line_no, rec) in records(path) {
        if rec.lie_type == key.lie_type && rec.u == key.u && rec.v == key.v {
            match reconstruct(rs, &rec) {
                Ok(sum) => hit = Some(sum),
                Err(why) => warn(path, line_no, &why),
            }
        }
    }
    hit
}

/// Appends the record unless the key is already present (idempotent put).
pub fn store(path: &Path, rs: &RootSystem, key: &Key, sum: &QuantumSum) -> std::io::Result<()> {
    let already = records(path)
        .iter()
        .any(|(_, rec)| rec.lie_type == key.lie_type && rec.u == key.u && rec.v == key.v);
    if already {
        return Ok(());
    }
    let rows: Vec<RecordRow> = sum
        .terms()
        .map(|(qkey, coef)| RecordRow {
            w: rs.reduced_word(&qkey.w),
            lambda: qkey.lam.0.clone(),
            coef: coef
                .terms()
                .map(|(m, c)| RecordTerm { exp: m.exps().to_vec(), coef: c.to_string() })
                .collect(),
        })
        .collect();
    let record = Record {
        lie_type: key.lie_type.clone(),
        u: key.u.clone(),
        v: key.v.clone(),
        rows,
    };
    let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(&record).expect("record serializes"))?;
    Ok(())
}
