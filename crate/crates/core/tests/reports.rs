use tripartite_core::report::{from_json, table_report, to_csv, to_json, to_markdown, MonteCarloOptions, CSV_COLUMNS};

fn doc() -> tripartite_core::report::ReportDocument {
    table_report(MonteCarloOptions { samples: 2000, seed: 7 }).unwrap()
}

#[test]
fn table_document_round_trips_losslessly() {
    let d = doc();
    let json = to_json(&d).unwrap();
    let back = from_json(&json).unwrap();
    assert_eq!(back, d);
    assert_eq!(to_json(&back).unwrap(), json);
}

#[test]
fn table_document_is_ok_and_ordered_like_the_registry() {
    let d = doc();
    assert!(d.is_ok());
    let ids: Vec<_> = d.rows.iter().map(|r| r.id.clone().unwrap()).collect();
    let want: Vec<_> = tripartite_core::scenario_registry().into_iter().map(|r| r.id).collect();
    assert_eq!(ids, want);
    assert_eq!(d.inputs["seed"], 7);
}

#[test]
fn csv_has_one_record_per_row() {
    let d = doc();
    let csv = to_csv(&d).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(reader.headers().unwrap().len(), CSV_COLUMNS.len());
    let records: Vec<_> = reader.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(records.len(), d.rows.len());
    for (rec, row) in records.iter().zip(&d.rows) {
        let a: f64 = rec[7].parse().unwrap();
        assert_eq!(a.to_bits(), row.form.as_ref().unwrap().a.value.to_bits());
    }
}

#[test]
fn markdown_lists_every_row() {
    let d = doc();
    let md = to_markdown(&d);
    for row in &d.rows {
        assert!(md.contains(&format!("| {} |", row.id.as_ref().unwrap())));
    }
}
