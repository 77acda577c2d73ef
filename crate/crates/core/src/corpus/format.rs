//! Plain-text cone files, line-oriented reports, and the JSON-lines log of
//! search hits.
//!
//! A cone file is an `n d` header followed by `n` rows of `d` integers;
//! blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::cone::{Cone, ConeError};
use crate::icp::{IcpReport, MonteCarloReport};
use crate::lattice::{Int, IntMatrix, LatticeVector};
use crate::search::TightHit;
use crate::uhc::UhcReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFile {
    /// Comment lines without the leading `#`, written before the header.
    pub comments: Vec<String>,
    pub matrix: IntMatrix,
}

impl ConeFile {
    pub fn new(matrix: IntMatrix) -> Self {
        ConeFile { comments: Vec::new(), matrix }
    }

    pub fn parse(text: &str) -> Result<ConeFile, ParseError> {
        let mut comments = Vec::new();
        let mut header: Option<(usize, usize)> = None;
        let mut rows: Vec<LatticeVector> = Vec::new();
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let t = raw.trim();
            if let Some(c) = t.strip_prefix('#') {
                if header.is_none() {
                    comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                }
                continue;
            }
            if t.is_empty() {
                continue;
            }
            let nums = t
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<Int>()
                        .map_err(|_| ParseError { line, message: format!("not an integer: {tok:?}") })
                })
                .collect::<Result<Vec<Int>, _>>()?;
            match header {
                None => {
                    let [n, d] = &nums[..] else {
                        return Err(ParseError { line, message: "header must be `rows columns`".into() });
                    };
                    let size = |x: &Int| x.to_u64().and_then(|v| usize::try_from(v).ok());
                    match (size(n), size(d)) {
                        (Some(n), Some(d)) => header = Some((n, d)),
                        _ => return Err(ParseError { line, message: "negative or oversized header".into() }),
                    }
                }
                Some((n, d)) => {
                    if rows.len() == n {
                        return Err(ParseError { line, message: format!("more than {n} rows") });
                    }
                    if nums.len() != d {
                        return Err(ParseError { line, message: format!("expected {d} entries, found {}", nums.len()) });
                    }
                    rows.push(LatticeVector::new(nums));
                }
            }
        }
        let Some((n, d)) = header else {
            return Err(ParseError { line: last_line.max(1), message: "missing header".into() });
        };
        if rows.len() != n {
            return Err(ParseError { line: last_line.max(1), message: format!("expected {n} rows, found {}", rows.len()) });
        }
        Ok(ConeFile { comments, matrix: IntMatrix::new(rows, d) })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let (n, d) = self.matrix.shape();
        let _ = writeln!(out, "{n} {d}");
        for r in self.matrix.rows() {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

pub fn read_cone_file(path: impl AsRef<Path>) -> Result<ConeFile, CorpusError> {
    Ok(ConeFile::parse(&fs::read_to_string(path)?)?)
}

pub fn read_cone(path: impl AsRef<Path>) -> Result<Cone, CorpusError> {
    Ok(Cone::from_generators(&read_cone_file(path)?.matrix)?)
}

pub fn write_cone(path: impl AsRef<Path>, file: &ConeFile) -> Result<(), CorpusError> {
    fs::write(path, file.render())?;
    Ok(())
}

/// Anything that can be written as a report: one `key value` pair per line.
#[derive(Clone, Copy, Debug)]
pub enum Report<'a> {
    Uhc(&'a UhcReport),
    Icp(&'a IcpReport),
    MonteCarlo(&'a MonteCarloReport),
}

fn vectors(vs: &[LatticeVector]) -> String {
    vs.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" ")
}

impl Report<'_> {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k} {v}");
        };
        match self {
            Report::Uhc(r) => {
                kv("property", &"uhc");
                kv("covered", &r.covered);
                kv("witnesses", &r.witnesses.len());
                for (i, w) in r.witnesses.iter().enumerate() {
                    kv(&format!("witness.{}.rays", i + 1), &vectors(&w.rays));
                }
                let s = &r.stats;
                kv("stats.regions_created", &s.regions_created);
                kv("stats.splits", &s.splits);
                kv("stats.containments", &s.containments);
                kv("stats.max_depth", &s.max_depth);
                kv("stats.subcones_materialized", &s.subcones_materialized);
            }
            Report::Icp(r) => {
                kv("property", &"icp");
                kv("covered", &r.covered);
                kv("failures", &r.failures.len());
                for (i, f) in r.failures.iter().enumerate() {
                    let p = format!("failure.{}", i + 1);
                    kv(&format!("{p}.ratio"), &format!("{}/{}", f.residue_count, f.group_index));
                    kv(&format!("{p}.reduced"), &f.ratio());
                    kv(&format!("{p}.rays"), &vectors(&f.region.rays));
                }
                if let Some(a) = r.aggregate_ratio() {
                    kv("aggregate_ratio", &a);
                }
                let s = &r.stats;
                kv("stats.regions_created", &s.regions_created);
                kv("stats.splits", &s.splits);
                kv("stats.max_depth", &s.max_depth);
                kv("stats.refinements", &s.refinements);
                kv("stats.unit_refinements", &s.unit_refinements);
                kv("stats.max_residues", &s.max_residues);
                kv("stats.growth_checks", &s.growth_checks);
                kv("stats.growth_violations", &s.growth_violations);
                kv("stats.covered_nodes", &s.covered_nodes);
                kv("stats.max_covering_det", &s.max_covering_det);
                kv("stats.subcones", &s.subcones);
            }
            Report::MonteCarlo(r) => {
                kv("property", &"icp-sample");
                kv("samples", &r.samples);
                kv("non_covered", &r.non_covered);
                kv("fraction", &format!("{}/{}", r.non_covered, r.samples));
                kv("certified", &r.certified);
                for (i, x) in r.hits.iter().enumerate() {
                    kv(&format!("hit.{}", i + 1), &format!("{x:?}"));
                }
            }
        }
        out
    }
}

pub fn write_report(path: impl AsRef<Path>, report: Report<'_>) -> Result<(), CorpusError> {
    fs::write(path, report.render())?;
    Ok(())
}

/// Appends one JSON record per hit.
pub fn append_hits<'a>(path: impl AsRef<Path>, hits: impl IntoIterator<Item = &'a TightHit>) -> Result<(), CorpusError> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    for h in hits {
        let line = serde_json::to_string(h).expect("hits serialize");
        writeln!(f, "{line}")?;
    }
    Ok(())
}

pub fn read_hits(path: impl AsRef<Path>) -> Result<Vec<TightHit>, CorpusError> {
    let f = BufReader::new(fs::File::open(path)?);
    let mut out = Vec::new();
    for (k, line) in f.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| CorpusError::Json { line: k + 1, source })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::c10;

    #[test]
    fn c10_render_header() {
        let text = ConeFile::new(c10().generators).render();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("10 6"));
        assert_eq!(lines.next(), Some("0 1 0 0 0 0"));
    }

    #[test]
    fn comments_and_round_trip() {
        let text = "# a cone\n\n2 3\n1 0 0\n# between\n0 -1 1\n";
        let f = ConeFile::parse(text).unwrap();
        assert_eq!(f.comments, vec!["a cone".to_string()]);
        assert_eq!(f.matrix, IntMatrix::from_i64s(&[&[1, 0, 0], &[0, -1, 1]]));
        assert_eq!(ConeFile::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = ConeFile::parse("2 2\n1 0\n1 x\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(ConeFile::parse("2 2\n1 0 0\n").unwrap_err().line, 2);
        assert_eq!(ConeFile::parse("2 2\n1 0\n").unwrap_err().line, 2);
        assert_eq!(ConeFile::parse("# only\n").unwrap_err().line, 1);
        assert_eq!(ConeFile::parse("1 2 3\n").unwrap_err().line, 1);
    }
}
