//! Reading point sets and other inputs from JSON or CSV text.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::points::{PointSet, PointSetFile};

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// `{"p": 3, "n": 2, "points": [[0,0],[1,0],[2,1]]}`.
pub fn parse_points_json(text: &str) -> Result<PointSet> {
    from_json::<PointSetFile>(text)?.to_set()
}

/// One point per line, comma-separated coordinates; blank lines and lines
/// starting with `#` are ignored.
pub fn parse_points_csv(text: &str, p: u64, n: usize) -> Result<PointSet> {
    let modulus = PrimeModulus::new(p)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Invalid(format!("malformed CSV: {e}")))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .map(|f| f.parse::<u32>().map_err(|_| Error::Invalid(format!("bad coordinate {f:?}"))))
            .collect::<Result<Vec<u32>>>()?;
        rows.push(row);
    }
    PointSet::from_rows(modulus, n, &rows)
}

/// Reads a point set, as CSV when `csv` gives `(p, n)` or the file ends in
/// `.csv`, otherwise as JSON.
pub fn load_points(path: &Path, csv: Option<(u64, usize)>) -> Result<PointSet> {
    let text = read(path)?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    match (csv, is_csv) {
        (Some((p, n)), _) => parse_points_csv(&text, p, n),
        (None, true) => Err(Error::Invalid("CSV input needs p and n".into())),
        (None, false) => parse_points_json(&text),
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}
