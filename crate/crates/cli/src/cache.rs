//! On-disk cache for eta-quotient coefficient tables.
//!
//! Tables are keyed by `(expression, precision)`; the format is a versioned
//! textual list of `(index, coefficient)` pairs and round-trips exactly.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use supercong_core::qseries::{fourier_a, fourier_b, BExpression};
use supercong_core::BigInt;

const FORMAT_HEADER: &str = "supercong-table v1";

/// Expression identifiers: the weight-4 quotient and the two weight-6 forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expression {
    Weight4,
    B(BExpression),
}

impl Expression {
    pub fn token(self) -> &'static str {
        match self {
            Expression::Weight4 => "weight4",
            Expression::B(e) => e.token(),
        }
    }
}

fn cache_path(dir: &Path, expr: Expression, n_max: usize) -> PathBuf {
    dir.join(format!("{}_{}.tbl", expr.token(), n_max))
}

fn write_table(path: &Path, expr: Expression, table: &[BigInt]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut out = String::new();
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    out.push_str(&format!("expr {}\n", expr.token()));
    out.push_str(&format!("precision {}\n", table.len() - 1));
    for (n, c) in table.iter().enumerate().skip(1) {
        out.push_str(&format!("{n} {c}\n"));
    }
    let tmp = path.with_extension("tbl.tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(out.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_table(path: &Path, expr: Expression, n_max: usize) -> Option<Vec<BigInt>> {
    let text = fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != FORMAT_HEADER {
        return None;
    }
    if lines.next()? != format!("expr {}", expr.token()) {
        return None;
    }
    let prec: usize = lines.next()?.strip_prefix("precision ")?.parse().ok()?;
    if prec != n_max {
        return None;
    }
    let mut table = vec![BigInt::from(0); n_max + 1];
    let mut seen = 0usize;
    for line in lines {
        let (n, c) = line.split_once(' ')?;
        let n: usize = n.parse().ok()?;
        if n == 0 || n > n_max {
            return None;
        }
        table[n] = BigInt::from_str(c).ok()?;
        seen += 1;
    }
    if seen != n_max {
        return None;
    }
    Some(table)
}

fn load_or_compute(
    dir: &Path,
    expr: Expression,
    n_max: usize,
    compute: impl FnOnce() -> Vec<BigInt>,
) -> Vec<BigInt> {
    let path = cache_path(dir, expr, n_max);
    if let Some(t) = read_table(&path, expr, n_max) {
        return t;
    }
    let t = compute();
    if let Err(e) = write_table(&path, expr, &t) {
        eprintln!("warning: could not write cache {}: {e}", path.display());
    }
    t
}

/// `a(1..=n_max)` with `table[n] = a(n)`, cached under `dir`.
pub fn fourier_a_cached(n_max: usize, dir: &Path) -> Vec<BigInt> {
    load_or_compute(dir, Expression::Weight4, n_max, || fourier_a(n_max))
}

/// `b(1..=n_max)` from the chosen eta expression, cached under `dir`.
pub fn fourier_b_cached(n_max: usize, expr: BExpression, dir: &Path) -> Vec<BigInt> {
    load_or_compute(dir, Expression::B(expr), n_max, || fourier_b(n_max, expr))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_round_trip_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let first = fourier_b_cached(64, BExpression::Eta1Eta4, dir.path());
        let path = cache_path(dir.path(), Expression::B(BExpression::Eta1Eta4), 64);
        assert!(path.exists());
        let reread = read_table(&path, Expression::B(BExpression::Eta1Eta4), 64).unwrap();
        assert_eq!(first, reread);
        // a second call hits the cache and yields the identical table
        let second = fourier_b_cached(64, BExpression::Eta1Eta4, dir.path());
        assert_eq!(first, second);
    }

    #[test]
    fn stale_or_foreign_files_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), Expression::Weight4, 16);
        fs::create_dir_all(dir.path()).unwrap();
        fs::write(&path, "not a table\n").unwrap();
        let t = fourier_a_cached(16, dir.path());
        assert_eq!(t[3], BigInt::from(-4));
        // the bad file was replaced by a valid one
        assert!(read_table(&path, Expression::Weight4, 16).is_some());
    }

    #[test]
    fn distinct_precisions_get_distinct_keys() {
        let dir = tempfile::tempdir().unwrap();
        fourier_a_cached(8, dir.path());
        fourier_a_cached(16, dir.path());
        assert!(cache_path(dir.path(), Expression::Weight4, 8).exists());
        assert!(cache_path(dir.path(), Expression::Weight4, 16).exists());
    }
}
