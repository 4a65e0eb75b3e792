//! Shared test helpers: fixture paths, runs of the binary and seeded random
//! knowledge bases.
#![allow(dead_code)]

pub mod props;
pub mod tables;

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tableau_kb::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};

pub const CONCEPTS: [&str; 3] = ["A", "B", "C"];
pub const ROLES: [&str; 2] = ["r", "s"];
pub const INDIVIDUALS: [&str; 2] = ["a", "b"];

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub depth: usize,
    /// Number restrictions, inverses and role axioms.
    pub full: bool,
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// The example knowledge bases run through the command line.
pub const EXAMPLES: [&str; 4] = ["actors.dl", "award.dl", "series.dl", "empty.dl"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

impl Run {
    pub fn out(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }

    pub fn err(&self) -> String {
        String::from_utf8_lossy(&self.stderr).into_owned()
    }
}

/// Runs the built binary in the fixture directory.
pub fn run_binary(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tableau-kb"))
        .args(args)
        .current_dir(fixture(""))
        .env_remove("TABLEAUKB_MAX_NODES")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

/// Every command on every fixture, as argument lists for the binary.
pub fn invocations() -> Vec<Vec<String>> {
    let mut files: Vec<String> = EXAMPLES.iter().map(|f| f.to_string()).collect();
    for row in tables::rows() {
        files.push(format!("tables/{}.dl", row.stem));
        files.push(format!("tables/{}.ttl", row.stem));
    }
    let commands: [&[&str]; 9] = [
        &["check"],
        &["check", "--trace"],
        &["classify"],
        &["classify", "--output", "ttl"],
        &["realize"],
        &["materialize"],
        &["materialize", "--mode", "entailment", "--trace"],
        &["convert"],
        &["oracle"],
    ];
    let mut out = Vec::new();
    for file in &files {
        for cmd in commands {
            let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
            args.push(file.clone());
            out.push(args);
        }
    }
    out.push(vec!["validate".into(), "award.dl".into(), "series.dl".into()]);
    out.push(vec!["materialize".into(), "--strict-rules".into(), "award.dl".into()]);
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn role(rng: &mut ChaCha8Rng, shape: Shape) -> RoleExpr {
    let name = *ROLES.choose(rng).unwrap();
    if shape.full && rng.gen_bool(0.25) {
        RoleExpr::inverse_of(name)
    } else {
        RoleExpr::named(name)
    }
}

pub fn concept(rng: &mut ChaCha8Rng, depth: usize, shape: Shape) -> ConceptExpr {
    let atomic = |rng: &mut ChaCha8Rng| ConceptExpr::atomic(*CONCEPTS.choose(rng).unwrap());
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => ConceptExpr::Top,
            1 => ConceptExpr::not(atomic(rng)),
            _ => atomic(rng),
        };
    }
    let kinds = if shape.full { 7 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => ConceptExpr::not(concept(rng, depth - 1, shape)),
        1 => ConceptExpr::and([concept(rng, depth - 1, shape), concept(rng, depth - 1, shape)]),
        2 => ConceptExpr::or([concept(rng, depth - 1, shape), concept(rng, depth - 1, shape)]),
        3 => ConceptExpr::exists(role(rng, shape), concept(rng, depth - 1, shape)),
        4 => ConceptExpr::for_all(role(rng, shape), concept(rng, depth - 1, shape)),
        5 => ConceptExpr::at_least(rng.gen_range(1..=2), role(rng, shape), concept(rng, depth - 1, shape)),
        _ => ConceptExpr::at_most(rng.gen_range(0..=1), role(rng, shape), concept(rng, depth - 1, shape)),
    }
}

/// A small random knowledge base over the fixed signature.
pub fn knowledge_base(rng: &mut ChaCha8Rng, shape: Shape) -> KnowledgeBase {
    let mut axioms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let c = concept(rng, shape.depth.min(2), shape);
        let d = concept(rng, shape.depth, shape);
        axioms.push(if rng.gen_bool(0.2) {
            Axiom::ConceptEquivalence(c, d)
        } else {
            Axiom::ConceptInclusion(c, d)
        });
    }
    for _ in 0..rng.gen_range(1..=3) {
        let a = *INDIVIDUALS.choose(rng).unwrap();
        if rng.gen_bool(0.7) {
            axioms.push(Axiom::ConceptAssertion(concept(rng, shape.depth, shape), a.to_string()));
        } else {
            let b = *INDIVIDUALS.choose(rng).unwrap();
            axioms.push(Axiom::role_assertion(
                RoleExpr::named(*ROLES.choose(rng).unwrap()),
                a,
                b,
            ));
        }
    }
    if shape.full {
        for _ in 0..rng.gen_range(0..=2) {
            let (r, s) = (RoleExpr::named(ROLES[0]), RoleExpr::named(ROLES[1]));
            axioms.push(match rng.gen_range(0..4) {
                0 => Axiom::TransitiveRole(if rng.gen_bool(0.5) { r } else { s }),
                1 => Axiom::DisjointRoles(r, s),
                2 => Axiom::RoleInclusion(r, s),
                _ => Axiom::RoleInclusion(s, r),
            });
        }
    }
    KnowledgeBase::new(axioms, Vec::new()).unwrap()
}
