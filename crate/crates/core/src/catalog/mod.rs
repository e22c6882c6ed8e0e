//! Reproduction of the orbit and foliation data tables for complex and real simple Lie algebras.

mod printed;

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::realforms::{standard_families, Family, RealForm};
use crate::rootsys::{build_root_system, max_strongly_orthogonal, Series, MAX_RANK};
use printed::{printed_complex, printed_row, PrintedRow, EXCEPTIONAL};

pub const SCHEMA: &str = "foliation-table/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    Delta,
    Sigma,
    Dim,
    Rank,
    DimOmega,
    RealRank,
    FMax,
    Split,
    DimN,
}

impl Column {
    pub fn header(&self) -> &'static str {
        match self {
            Column::Delta => "delta",
            Column::Sigma => "sigma",
            Column::Dim => "dim",
            Column::Rank => "rank",
            Column::DimOmega => "dim_omega",
            Column::RealRank => "real_rank",
            Column::FMax => "f_max",
            Column::Split => "split",
            Column::DimN => "dim_n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Complex,
    Real,
}

impl TableKind {
    pub fn columns(&self) -> &'static [Column] {
        use Column::*;
        match self {
            TableKind::Complex => &[Delta, Dim, Rank, DimOmega, DimN],
            TableKind::Real => &[Delta, Sigma, Dim, Rank, DimOmega, RealRank, FMax, Split, DimN],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    StoredLiterature,
    FlaggedDiscrepancy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Bool(true) => "yes".into(),
            Value::Bool(false) => "no".into(),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub column: Column,
    pub value: Value,
    pub provenance: Provenance,
    /// The printed value, kept when it disagrees with `value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub algebra: String,
    pub cells: Vec<Cell>,
}

impl TableRow {
    pub fn cell(&self, c: Column) -> Option<&Cell> {
        self.cells.iter().find(|x| x.column == c)
    }

    pub fn int(&self, c: Column) -> Option<i64> {
        match self.cell(c)?.value {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn flag(&self, c: Column) -> bool {
        self.cell(c).is_some_and(|x| x.provenance == Provenance::FlaggedDiscrepancy)
    }

    pub fn flagged_columns(&self) -> Vec<Column> {
        self.cells.iter().filter(|c| c.provenance == Provenance::FlaggedDiscrepancy).map(|c| c.column).collect()
    }

    fn provenance_summary(&self) -> &'static str {
        if self.cells.iter().any(|c| c.provenance == Provenance::FlaggedDiscrepancy) {
            "flagged-discrepancy"
        } else if self.cells.iter().any(|c| c.provenance == Provenance::StoredLiterature) {
            "stored-literature"
        } else {
            "computed"
        }
    }

    fn discrepancy_summary(&self) -> String {
        self.cells
            .iter()
            .filter(|c| c.provenance == Provenance::FlaggedDiscrepancy)
            .map(|c| format!("{} printed {}", c.column.header(), c.printed.as_deref().unwrap_or("?")))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
}

/// Canonical name of a root system type, folding low-rank coincidences (`B1 = C1 = A1`,
/// `C2 = B2`, `D2 = A1+A1`, `D3 = A3`). Degenerate labels such as `B0` are left alone.
pub fn normalize_type(name: &str) -> String {
    let mut parts: Vec<String> = name
        .split('+')
        .flat_map(|part| {
            let split = part.find(|c: char| c.is_ascii_digit()).unwrap_or(part.len());
            let (s, r) = part.split_at(split);
            let folded: Vec<String> = match (s, r.parse::<usize>().unwrap_or(0)) {
                ("B" | "C", 1) => vec!["A1".into()],
                ("C", 2) => vec!["B2".into()],
                ("D", 2) => vec!["A1".into(), "A1".into()],
                ("D", 3) => vec!["A3".into()],
                _ => vec![part.to_string()],
            };
            folded
        })
        .collect();
    parts.sort();
    parts.join("+")
}

fn computed(column: Column, value: Value) -> Cell {
    Cell { column, value, provenance: Provenance::Computed, printed: None }
}

fn stored(column: Column, value: Value) -> Cell {
    Cell { column, value, provenance: Provenance::StoredLiterature, printed: None }
}

/// `value` (computed or stored) compared with the printed cell.
fn against(column: Column, value: Value, printed: Value, base: Provenance) -> Cell {
    let same = match (&value, &printed) {
        (Value::Text(a), Value::Text(b)) => normalize_type(a) == normalize_type(b),
        (a, b) => a == b,
    };
    if same {
        Cell { column, value, provenance: base, printed: None }
    } else {
        Cell { column, value, provenance: Provenance::FlaggedDiscrepancy, printed: Some(printed.render()) }
    }
}

fn complex_label(series: Series, r: usize) -> String {
    match series {
        Series::A => format!("sl({},C)", r + 1),
        Series::B => format!("so({},C)", 2 * r + 1),
        Series::C => format!("sp({},C)", 2 * r),
        Series::D => format!("so({},C)", 2 * r),
        s => format!("{}{r}(C)", s.to_string().to_lowercase()),
    }
}

fn complex_row(series: Series, r: usize) -> Result<TableRow> {
    let sys = build_root_system(series, r)?;
    let roots = sys.roots().len() as i64;
    let ri = r as i64;
    let (dim, rank, dim_omega) = (2 * (roots + ri), 2 * ri, 2 * roots);
    let (pd, pr, po) = printed_complex(series, ri);
    let base = Provenance::Computed;
    Ok(TableRow {
        algebra: complex_label(series, r),
        cells: vec![
            computed(Column::Delta, Value::Text(sys.name())),
            against(Column::Dim, Value::Int(dim), Value::Int(pd), base),
            against(Column::Rank, Value::Int(rank), Value::Int(pr), base),
            against(Column::DimOmega, Value::Int(dim_omega), Value::Int(po), base),
            // half of dim Ω, as for any Lagrangian subspace
            computed(Column::DimN, Value::Int(dim_omega / 2)),
        ],
    })
}

const CLASSICAL_MIN: [(Series, usize); 4] = [(Series::A, 1), (Series::B, 2), (Series::C, 3), (Series::D, 4)];
const EXCEPTIONAL_TYPES: [(Series, usize); 5] =
    [(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)];

/// Every classical type from its least rank up to `max_rank` (the least rank is always
/// included), then the exceptional types.
pub fn complex_table(max_rank: usize) -> Result<Table> {
    if max_rank > MAX_RANK {
        return Err(Error::InvalidType { series: "any".into(), rank: max_rank });
    }
    let mut rows = Vec::new();
    for (s, lo) in CLASSICAL_MIN {
        for r in lo..=max_rank.max(lo) {
            rows.push(complex_row(s, r)?);
        }
    }
    for (s, r) in EXCEPTIONAL_TYPES {
        rows.push(complex_row(s, r)?);
    }
    Ok(Table { kind: TableKind::Complex, rows })
}

/// One row per table line: each classical series at its least rank and each exceptional type.
pub fn complex_table_minimal() -> Result<Table> {
    let rows = CLASSICAL_MIN
        .iter()
        .chain(&EXCEPTIONAL_TYPES)
        .map(|&(s, r)| complex_row(s, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { kind: TableKind::Complex, rows })
}

fn real_row(family: Family) -> Result<TableRow> {
    let form = RealForm::build(family)?;
    let s = form.summary()?;
    let p: PrintedRow = printed_row(&form.algebra.family);
    let c = Provenance::Computed;
    let int = |v: usize| Value::Int(v as i64);
    Ok(TableRow {
        algebra: s.algebra,
        cells: vec![
            against(Column::Delta, Value::Text(s.delta), Value::Text(p.delta), c),
            against(Column::Sigma, Value::Text(s.sigma), Value::Text(p.sigma), c),
            against(Column::Dim, int(s.dim), Value::Int(p.dim), c),
            against(Column::Rank, int(s.rank), Value::Int(p.rank), c),
            against(Column::DimOmega, int(s.dim - s.rank), Value::Int(p.dim_omega), c),
            against(Column::RealRank, int(s.real_rank), Value::Int(p.real_rank), c),
            against(Column::FMax, int(s.f_max), Value::Int(p.f_max), c),
            against(Column::Split, Value::Bool(s.split), Value::Bool(p.split), c),
            against(Column::DimN, int(s.dim_n), Value::Int(p.dim_n), c),
        ],
    })
}

/// Exceptional rows. The complex type fixes dim, rank, and dim Ω; split forms are computed
/// from the root system, the rest come from the literature with `dim n = dim p − ℝ-rank`
/// derived from the stored `dim k`.
fn exceptional_row(e: &printed::ExceptionalRow) -> Result<TableRow> {
    let sys = build_root_system(e.series, e.rank)?;
    let roots = sys.roots().len() as i64;
    let r = e.rank as i64;
    let c = Provenance::Computed;
    let mut cells = vec![
        computed(Column::Delta, Value::Text(sys.name())),
        against(Column::Dim, Value::Int(roots + r), Value::Int(e.dim), c),
        against(Column::Rank, Value::Int(r), Value::Int(r), c),
        against(Column::DimOmega, Value::Int(roots), Value::Int(e.dim_omega), c),
    ];
    match e.dim_k {
        None => {
            let f = max_strongly_orthogonal(&sys, sys.positives())?.len() as i64;
            cells.insert(1, computed(Column::Sigma, Value::Text(sys.name())));
            cells.extend([
                against(Column::RealRank, Value::Int(r), Value::Int(e.real_rank), c),
                against(Column::FMax, Value::Int(f), Value::Int(e.f_max), c),
                against(Column::Split, Value::Bool(true), Value::Bool(e.split), c),
                against(Column::DimN, Value::Int(roots / 2), Value::Int(e.dim_n), c),
            ]);
        }
        Some(dim_k) => {
            let s = Provenance::StoredLiterature;
            cells.insert(1, stored(Column::Sigma, Value::Text(format!("{}{}", e.sigma.0, e.sigma.1))));
            let real_rank = e.sigma.1 as i64;
            let dim_n = roots + r - dim_k - real_rank;
            cells.extend([
                against(Column::RealRank, Value::Int(real_rank), Value::Int(e.real_rank), s),
                stored(Column::FMax, Value::Int(e.f_max)),
                against(Column::Split, Value::Bool(false), Value::Bool(e.split), s),
                against(Column::DimN, Value::Int(dim_n), Value::Int(e.dim_n), s),
            ]);
        }
    }
    Ok(TableRow { algebra: e.name.to_string(), cells })
}

/// Rows for `families` in the given order, followed by the exceptional rows when requested.
pub fn real_table(families: &[Family], exceptional: bool) -> Result<Table> {
    let mut rows = families.iter().map(|&f| real_row(f)).collect::<Result<Vec<_>>>()?;
    if exceptional {
        for e in &EXCEPTIONAL {
            rows.push(exceptional_row(e)?);
        }
    }
    Ok(Table { kind: TableKind::Real, rows })
}

/// The realized test range plus the exceptional rows.
pub fn real_table_default() -> Result<Table> {
    real_table(&standard_families(), true)
}

/// Discrepancies against the printed tables that have been analysed and are expected.
pub const EXPECTED_DISCREPANCIES: &[(&str, &[Column])] = {
    use Column::*;
    &[
        ("su(1,1)", &[Dim, Rank, DimOmega, Split, DimN]),
        ("su(1,2)", &[Dim, Rank, DimOmega, DimN]),
        ("su(1,3)", &[Dim, Rank, DimOmega, DimN]),
        ("su(2,2)", &[Dim, Rank, DimOmega, DimN]),
        ("so(1,2)", &[Split]),
        ("so(3,4)", &[Split]),
        ("so(1,5)", &[Sigma]),
        ("so(3,3)", &[Sigma]),
        ("so(2,4)", &[Sigma]),
        ("so*(6)", &[Sigma]),
        ("EII", &[DimN]),
        ("EIII", &[RealRank]),
        ("EIV", &[RealRank]),
        ("EIX", &[DimN]),
    ]
};

/// Flagged cells not listed in [`EXPECTED_DISCREPANCIES`].
pub fn unexpected_discrepancies(table: &Table) -> Vec<(String, Column)> {
    let mut out = Vec::new();
    for row in &table.rows {
        let expected = EXPECTED_DISCREPANCIES
            .iter()
            .find(|(a, _)| *a == row.algebra)
            .map(|(_, c)| *c)
            .unwrap_or(&[]);
        for c in row.flagged_columns() {
            if !expected.contains(&c) {
                out.push((row.algebra.clone(), c));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Unsupported(format!("format '{s}'"))),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Inconsistency(format!("csv: {e}"))
}

pub fn to_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = table.kind.columns();
    let mut header = vec!["algebra"];
    header.extend(cols.iter().map(|c| c.header()));
    header.extend(["provenance", "discrepancies"]);
    w.write_record(&header).map_err(csv_error)?;
    for row in &table.rows {
        let mut rec = vec![row.algebra.clone()];
        rec.extend(cols.iter().map(|c| row.cell(*c).map(|x| x.value.render()).unwrap_or_default()));
        rec.push(row.provenance_summary().into());
        rec.push(row.discrepancy_summary());
        w.write_record(&rec).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Inconsistency(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Inconsistency(e.to_string()))
}

#[derive(Serialize)]
struct JsonTable<'a> {
    schema: &'static str,
    table: TableKind,
    columns: Vec<&'static str>,
    rows: &'a [TableRow],
}

pub fn to_json(table: &Table) -> Result<String> {
    let doc = JsonTable {
        schema: SCHEMA,
        table: table.kind,
        columns: table.kind.columns().iter().map(|c| c.header()).collect(),
        rows: &table.rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Inconsistency(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Flagged cells read `value (printed X)`; literature cells carry a trailing `*`.
pub fn to_markdown(table: &Table) -> String {
    let cols = table.kind.columns();
    let mut s = String::from("| algebra |");
    for c in cols {
        let _ = write!(s, " {} |", c.header());
    }
    s.push_str("\n|---|");
    s.push_str(&"---|".repeat(cols.len()));
    s.push('\n');
    for row in &table.rows {
        let _ = write!(s, "| {} |", row.algebra);
        for c in cols {
            let text = match row.cell(*c) {
                None => String::new(),
                Some(cell) => match cell.provenance {
                    Provenance::Computed => cell.value.render(),
                    Provenance::StoredLiterature => format!("{}*", cell.value.render()),
                    Provenance::FlaggedDiscrepancy => {
                        format!("{} (printed {})", cell.value.render(), cell.printed.as_deref().unwrap_or("?"))
                    }
                },
            };
            let _ = write!(s, " {text} |");
        }
        s.push('\n');
    }
    s
}

pub fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(table),
        Format::Markdown => Ok(to_markdown(table)),
    }
}

/// Writes `table` to `path`, or to standard output when `path` is `None`.
pub fn emit(table: &Table, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(table, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}
