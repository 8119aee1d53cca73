//! Cell-by-cell comparison of a results CSV against a golden CSV of the same
//! schema.

use std::path::Path;

use crate::CliError;

/// A schema-tagged CSV held in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub tag: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let (tag, body) = text.split_once('\n').unwrap_or((text, ""));
        if !tag.starts_with("#schema=") {
            return Err(CliError::Schema(format!("{origin}: first line is not a schema tag")));
        }
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
        let header: Vec<String> =
            r.headers().map_err(|e| CliError::Schema(format!("{origin}: {e}")))?.iter().map(String::from).collect();
        if header.is_empty() {
            return Err(CliError::Schema(format!("{origin}: missing header row")));
        }
        let rows = r
            .records()
            .map(|rec| rec.map(|r| r.iter().map(String::from).collect()))
            .collect::<Result<Vec<Vec<String>>, _>>()
            .map_err(|e| CliError::Schema(format!("{origin}: {e}")))?;
        Ok(Self { tag: tag.trim_end().to_string(), header, rows })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Outcome for one compared cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    /// Data row index, starting at 0.
    pub row: usize,
    pub column: String,
    pub golden: String,
    pub result: String,
    /// Absolute difference for numeric pairs.
    pub diff: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub cells: Vec<CellCheck>,
    /// Set when the files hold different numbers of rows.
    pub row_count: Option<(usize, usize)>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> bool {
        self.row_count.is_none() && self.cells.iter().all(|c| c.pass)
    }
}

fn compare_cell(golden: &str, result: &str, tolerance: f64) -> (Option<f64>, bool) {
    match (golden.parse::<f64>(), result.parse::<f64>()) {
        (Ok(g), Ok(r)) => {
            let d = (g - r).abs();
            (Some(d), d <= tolerance || g == r)
        }
        _ => (None, golden == result),
    }
}

/// Compares two tables sharing tag and header. Numeric cells pass when they
/// differ by at most `tolerance`; other cells (`NA`, names) must match
/// exactly.
pub fn verify(golden: &Table, results: &Table, tolerance: f64) -> Result<Report, CliError> {
    if !(tolerance >= 0.0) {
        return Err(CliError::Schema(format!("tolerance must be non-negative, got {tolerance}")));
    }
    if results.rows.is_empty() {
        return Err(CliError::Schema("results file has no data rows".into()));
    }
    if golden.tag != results.tag {
        return Err(CliError::Schema(format!("schema tags differ: `{}` vs `{}`", golden.tag, results.tag)));
    }
    if golden.header != results.header {
        return Err(CliError::Schema(format!(
            "headers differ: [{}] vs [{}]",
            golden.header.join(","),
            results.header.join(",")
        )));
    }
    let mut cells = Vec::new();
    for (i, (g, r)) in golden.rows.iter().zip(&results.rows).enumerate() {
        for (j, name) in golden.header.iter().enumerate() {
            let gv = g.get(j).map(String::as_str).unwrap_or("");
            let rv = r.get(j).map(String::as_str).unwrap_or("");
            let (diff, pass) = compare_cell(gv, rv, tolerance);
            cells.push(CellCheck { row: i, column: name.clone(), golden: gv.into(), result: rv.into(), diff, pass });
        }
    }
    let row_count = (golden.rows.len() != results.rows.len()).then_some((golden.rows.len(), results.rows.len()));
    Ok(Report { cells, row_count })
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: &str = "#schema=msfs-csv/1 case=x\nstrategy,t,v\nBB,0,NA\nBB,1,0.5\n";

    fn table(s: &str) -> Table {
        Table::parse(s, "test").unwrap()
    }

    #[test]
    fn identical_files_pass_at_zero_tolerance() {
        let r = verify(&table(G), &table(G), 0.0).unwrap();
        assert!(r.passed());
        assert_eq!(r.cells.len(), 6);
    }

    #[test]
    fn perturbed_cell_is_reported() {
        let bad = G.replace("0.5", "0.502");
        let r = verify(&table(G), &table(&bad), 1e-3).unwrap();
        let f: Vec<_> = r.failures().collect();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].row, f[0].column.as_str()), (1, "v"));
        assert!((f[0].diff.unwrap() - 0.002).abs() < 1e-12);
        assert!(verify(&table(G), &table(&bad), 1e-2).unwrap().passed());
    }

    #[test]
    fn na_must_match_exactly() {
        let bad = G.replace("NA", "0");
        assert!(!verify(&table(G), &table(&bad), 1.0).unwrap().passed());
    }

    #[test]
    fn schema_problems() {
        let empty = "#schema=msfs-csv/1 case=x\nstrategy,t,v\n";
        assert!(matches!(verify(&table(G), &table(empty), 0.0), Err(CliError::Schema(_))));
        let other = G.replace("t,v", "t,w");
        assert!(matches!(verify(&table(G), &table(&other), 0.0), Err(CliError::Schema(_))));
        let tag = G.replace("case=x", "case=y");
        assert!(matches!(verify(&table(G), &table(&tag), 0.0), Err(CliError::Schema(_))));
        assert!(Table::parse("strategy,t\nBB,0\n", "t").is_err());
    }

    #[test]
    fn row_count_mismatch_fails() {
        let short = "#schema=msfs-csv/1 case=x\nstrategy,t,v\nBB,0,NA\n";
        let r = verify(&table(G), &table(short), 0.0).unwrap();
        assert_eq!(r.row_count, Some((2, 1)));
        assert!(!r.passed());
    }
}
