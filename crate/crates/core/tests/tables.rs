//! DL to Turtle golden rows in both directions.

mod common;

use common::tables;

#[test]
fn forward_translation_matches_goldens() {
    let errors: Vec<String> = tables::rows()
        .iter()
        .filter_map(|r| tables::check_forward(r).err())
        .collect();
    assert!(errors.is_empty(), "{}", errors.join("\n"));
}

#[test]
fn goldens_and_written_forms_read_back() {
    let errors: Vec<String> = tables::rows()
        .iter()
        .filter_map(|r| tables::check_backward(r).err())
        .collect();
    assert!(errors.is_empty(), "{}", errors.join("\n"));
}

#[test]
fn every_row_has_a_golden_and_a_written_form() {
    let stems: Vec<String> = tables::rows().into_iter().map(|r| r.stem).collect();
    assert_eq!(stems.len(), tables::WRITTEN.len());
    for (stem, _) in tables::WRITTEN {
        assert!(stems.iter().any(|s| s == stem), "missing fixture {stem}");
    }
}

#[test]
fn unicode_individual_row() {
    let row = tables::rows()
        .into_iter()
        .find(|r| r.stem == "abox-jackie-chan")
        .unwrap();
    assert!(row.dl.contains("房仕龍"));
    assert!(row.ttl.contains(":房仕龍 owl:sameAs :JackieChan ."));
    tables::check_forward(&row).unwrap();
    tables::check_backward(&row).unwrap();
}

#[test]
fn convert_command_reproduces_goldens() {
    for row in tables::rows() {
        let path = format!("tables/{}.dl", row.stem);
        let run = common::run_binary(&["convert", &path]);
        assert_eq!(run.code, 0, "{}: {}", row.stem, run.err());
        assert_eq!(run.out(), row.ttl, "{}", row.stem);
    }
}
