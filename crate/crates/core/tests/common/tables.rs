//! The DL to Turtle translation rows kept as golden files.

use std::fs;

use tableau_kb::syntax::parse_dl;
use tableau_kb::turtle::{from_turtle, to_turtle};

use super::fixture;

/// Each row as usually written in Turtle, for rows whose reading differs from
/// the golden output: the schematic rows get a `:` prefix.
pub const WRITTEN: [(&str, &str); 16] = [
    ("schema-same", ":a owl:sameAs :b ."),
    ("schema-different", ":a owl:differentFrom :b ."),
    ("schema-subclass", ":C rdfs:subClassOf :D ."),
    ("schema-type", ":a rdf:type :C ."),
    ("schema-role", ":a :r :b ."),
    ("schema-inverse-role", ":b :r :a ."),
    ("tbox-live-action", ":liveAction rdfs:subClassOf :Movie ."),
    ("tbox-remake-of", ":remakeOf rdfs:subPropertyOf :basedOn ."),
    ("tbox-narrator", ":Narrator owl:equivalentClass :Lector ."),
    ("abox-zambezia", ":Zambezia a :computerAnimation ."),
    ("abox-unforgiven", ":Unforgiven :directedBy :ClintEastwood ."),
    ("abox-jackie-chan", ":房仕龍 owl:sameIndividualAs :JackieChan ."),
    ("abox-williams", ":RobinWilliams owl:differentFrom :RobbieWilliams ."),
    (
        "rbox-co-starred",
        ":co-starred owl:propertyChainAxiom (:starredIn :starredIn) .",
    ),
    (
        "rbox-disjoint",
        ":x a owl:AllDisjointProperties ; owl:members (:parentOf :childOf) .",
    ),
    ("rbox-based-on", ":basedOn a owl:TransitiveProperty ."),
];

const PREFIXES: &str = "@prefix : <http://example.org/tableau-kb#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
";

#[derive(Debug, Clone)]
pub struct Row {
    pub stem: String,
    pub dl: String,
    pub ttl: String,
}

pub fn rows() -> Vec<Row> {
    let dir = fixture("tables");
    let mut stems: Vec<String> = fs::read_dir(&dir)
        .expect("table fixtures")
        .filter_map(|e| {
            let name = e.ok()?.file_name().into_string().ok()?;
            name.strip_suffix(".dl").map(str::to_string)
        })
        .collect();
    stems.sort();
    stems
        .into_iter()
        .map(|stem| Row {
            dl: fs::read_to_string(dir.join(format!("{stem}.dl"))).unwrap(),
            ttl: fs::read_to_string(dir.join(format!("{stem}.ttl"))).unwrap(),
            stem,
        })
        .collect()
}

/// Forward translation must match the golden file byte for byte.
pub fn check_forward(row: &Row) -> Result<(), String> {
    let kb = parse_dl(&row.dl).map_err(|e| format!("{}: {e}", row.stem))?;
    let doc = to_turtle(&kb).map_err(|e| format!("{}: {e}", row.stem))?.to_string();
    if doc != row.ttl {
        return Err(format!("{}: got\n{doc}\nexpected\n{}", row.stem, row.ttl));
    }
    Ok(())
}

/// The golden file and the written form both read back as the DL axioms.
pub fn check_backward(row: &Row) -> Result<(), String> {
    let kb = parse_dl(&row.dl).map_err(|e| format!("{}: {e}", row.stem))?;
    let written = WRITTEN
        .iter()
        .find(|(stem, _)| *stem == row.stem)
        .map(|(_, body)| format!("{PREFIXES}{body}\n"))
        .ok_or_else(|| format!("{}: no written form", row.stem))?;
    for text in [&row.ttl, &written] {
        let back = from_turtle(text).map_err(|e| format!("{}: {e}", row.stem))?;
        if !back.diagnostics.is_empty() {
            return Err(format!("{}: unexpected diagnostics {:?}", row.stem, back.diagnostics));
        }
        if back.kb.axiom_set() != kb.axiom_set() {
            return Err(format!(
                "{}: read back {:?}, expected {:?}",
                row.stem,
                back.kb.axioms(),
                kb.axioms()
            ));
        }
    }
    Ok(())
}
