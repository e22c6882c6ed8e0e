use isofol_core::catalog::{
    complex_table, complex_table_minimal, emit, normalize_type, real_table, real_table_default, to_csv, to_json,
    unexpected_discrepancies, Column, Format, Provenance, Table, TableKind, Value,
};
use isofol_core::realforms::{Family, RealForm};
use isofol_core::Error;
use proptest::prelude::*;

fn row<'a>(t: &'a Table, name: &str) -> &'a isofol_core::catalog::TableRow {
    t.rows.iter().find(|r| r.algebra == name).unwrap_or_else(|| panic!("no row {name}"))
}

fn triple(t: &Table, name: &str) -> (i64, i64, i64) {
    let r = row(t, name);
    (r.int(Column::Dim).unwrap(), r.int(Column::Rank).unwrap(), r.int(Column::DimOmega).unwrap())
}

#[test]
fn complex_rows_match_printed_values() {
    let t = complex_table(8).unwrap();
    assert_eq!(triple(&t, "sl(3,C)"), (16, 4, 12));
    assert_eq!(triple(&t, "g2(C)"), (28, 4, 24));
    assert_eq!(triple(&t, "e8(C)"), (496, 16, 480));
    assert!(t.rows.iter().all(|r| r.flagged_columns().is_empty()));
}

#[test]
fn minimal_complex_table_has_one_row_per_series() {
    let t = complex_table_minimal().unwrap();
    assert_eq!(t.rows.len(), 9);
    assert_eq!(to_csv(&t).unwrap().lines().count(), 10);
    let low = complex_table(2).unwrap();
    let names: Vec<&str> = low.rows.iter().map(|r| r.algebra.as_str()).collect();
    assert_eq!(names, ["sl(2,C)", "sl(3,C)", "so(5,C)", "sp(6,C)", "so(8,C)", "e6(C)", "e7(C)", "e8(C)", "f4(C)", "g2(C)"]);
}

#[test]
fn row_invariants() {
    let t = real_table_default().unwrap();
    for r in &t.rows {
        let (dim, rank, omega) = triple(&t, &r.algebra);
        assert_eq!(omega, dim - rank, "{}", r.algebra);
        let split = r.cell(Column::Split).unwrap().value == Value::Bool(true);
        assert_eq!(split, rank == r.int(Column::RealRank).unwrap(), "{}", r.algebra);
    }
    for r in &complex_table(8).unwrap().rows {
        assert_eq!(r.int(Column::DimOmega).unwrap(), r.int(Column::Dim).unwrap() - r.int(Column::Rank).unwrap());
        assert_eq!(2 * r.int(Column::DimN).unwrap(), r.int(Column::DimOmega).unwrap());
    }
}

#[test]
fn named_real_rows() {
    let t = real_table(&[Family::SlR { n: 3 }, Family::SpR { n: 2 }, Family::Su { p: 2, q: 1 }], false).unwrap();
    let cols = [Column::Dim, Column::Rank, Column::DimOmega, Column::RealRank, Column::FMax, Column::DimN];
    let ints = |name: &str| cols.map(|c| row(&t, name).int(c).unwrap());
    assert_eq!(ints("sl(3,R)"), [8, 2, 6, 2, 1, 3]);
    assert_eq!(ints("sp(2,R)"), [10, 2, 8, 2, 2, 4]);
    let su = row(&t, "su(1,2)");
    assert_eq!(su.int(Column::DimN), Some(3));
    assert!(su.flag(Column::DimN));
    assert_eq!(su.cell(Column::DimN).unwrap().printed.as_deref(), Some("1"));
}

#[test]
fn dim_n_agrees_with_the_cartan_decomposition() {
    // dim p = dim a + dim n
    for f in isofol_core::realforms::standard_families() {
        let s = RealForm::build(f).unwrap().summary().unwrap();
        assert_eq!(s.dim_n, s.dim - s.dim_k - s.real_rank, "{f}");
    }
    for (p, q) in [(1, 1), (1, 2), (1, 3), (2, 2)] {
        let s = RealForm::build(Family::Su { p, q }).unwrap().summary().unwrap();
        assert_eq!(s.dim_n, 2 * p * q - p);
    }
}

#[test]
fn exceptional_rows_carry_provenance() {
    let t = real_table(&[], true).unwrap();
    assert_eq!(t.rows.len(), 12);
    let g = row(&t, "G");
    assert!(g.cells.iter().all(|c| c.provenance == Provenance::Computed));
    assert_eq!(g.int(Column::FMax), Some(2));
    assert_eq!(row(&t, "FI").int(Column::FMax), Some(4));
    let e2 = row(&t, "EII");
    assert_eq!(e2.cell(Column::FMax).unwrap().provenance, Provenance::StoredLiterature);
    assert!(e2.flag(Column::DimN));
    assert!(row(&t, "EIII").flag(Column::RealRank));
}

#[test]
fn only_analysed_discrepancies_are_flagged() {
    assert!(unexpected_discrepancies(&real_table_default().unwrap()).is_empty());
}

#[test]
fn empty_table_is_header_only() {
    let t = Table { kind: TableKind::Real, rows: vec![] };
    assert_eq!(
        to_csv(&t).unwrap(),
        "algebra,delta,sigma,dim,rank,dim_omega,real_rank,f_max,split,dim_n,provenance,discrepancies\n"
    );
}

#[test]
fn output_is_reproducible() {
    let a = real_table_default().unwrap();
    let b = real_table_default().unwrap();
    assert_eq!(to_csv(&a).unwrap(), to_csv(&b).unwrap());
    let j = to_json(&a).unwrap();
    assert_eq!(j, to_json(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["schema"], "foliation-table/1");
}

#[test]
fn emit_reports_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let t = complex_table_minimal().unwrap();
    let good = dir.path().join("t.csv");
    emit(&t, Format::Csv, Some(&good)).unwrap();
    assert_eq!(std::fs::read_to_string(&good).unwrap(), to_csv(&t).unwrap());
    let bad = dir.path().join("missing").join("t.csv");
    match emit(&t, Format::Json, Some(&bad)) {
        Err(Error::Io { path, .. }) => assert_eq!(path, bad),
        other => panic!("{other:?}"),
    }
}

#[test]
fn type_names_fold_low_rank_coincidences() {
    assert_eq!(normalize_type("C2"), "B2");
    assert_eq!(normalize_type("D2"), "A1+A1");
    assert_eq!(normalize_type("D3"), "A3");
    assert_eq!(normalize_type("B0"), "B0");
}

fn full_complex() -> &'static Table {
    static T: std::sync::OnceLock<Table> = std::sync::OnceLock::new();
    T.get_or_init(|| complex_table(8).unwrap())
}

proptest! {
    #[test]
    fn complex_rows_follow_root_counts(i in 0usize..31) {
        let r = &full_complex().rows[i];
        let delta = match &r.cell(Column::Delta).unwrap().value { Value::Text(s) => s.clone(), _ => unreachable!() };
        let (s, k) = delta.split_at(1);
        let n: i64 = k.parse().unwrap();
        // |Δ| by the classical formulas
        let roots = match s {
            "A" => n * (n + 1),
            "B" | "C" => 2 * n * n,
            "D" => 2 * n * (n - 1),
            _ => match n { 6 => 72, 7 => 126, 8 => 240, 4 => 48, _ => 12 },
        };
        prop_assert_eq!(r.int(Column::Dim).unwrap(), 2 * (roots + n));
        prop_assert_eq!(r.int(Column::Rank).unwrap(), 2 * n);
    }
}
