//! Translation between knowledge bases and a Turtle subset of the OWL 2 RDF
//! mapping.
//!
//! The writer is hand-rolled so the output layout is fixed; parsing goes
//! through `rio_turtle` and the resulting triples are mapped back to axioms.

mod read;
mod write;

use std::fmt;

use thiserror::Error;

use crate::model::ModelError;

pub use read::{canonical_triples, from_turtle, TurtleImport};
pub use write::{to_turtle, turtle_name};

pub const DEFAULT_NAMESPACE: &str = "http://example.org/tableau-kb#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

/// A rendered Turtle document: prefix declarations followed by one
/// statement group per axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleDoc {
    pub prefixes: Vec<(String, String)>,
    pub groups: Vec<String>,
}

impl TurtleDoc {
    /// A document with the standard prefixes and the given statements.
    pub fn new(groups: Vec<String>) -> Self {
        let prefixes = [
            ("", DEFAULT_NAMESPACE),
            ("owl", OWL),
            ("rdf", RDF),
            ("rdfs", RDFS),
            ("xsd", XSD),
        ]
        .into_iter()
        .map(|(p, iri)| (p.to_string(), iri.to_string()))
        .collect();
        TurtleDoc { prefixes, groups }
    }

    /// The statements without the prefix header.
    pub fn body(&self) -> String {
        self.groups.iter().map(|g| format!("{g}\n")).collect()
    }
}

impl fmt::Display for TurtleDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, iri) in &self.prefixes {
            writeln!(f, "@prefix {p}: <{iri}> .")?;
        }
        if !self.groups.is_empty() {
            writeln!(f)?;
        }
        f.write_str(&self.body())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TurtleError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: u64, column: u64, message: String },
    #[error("cannot serialize `{axiom}`: {reason}")]
    Unsupported { axiom: String, reason: String },
    #[error("malformed RDF list starting at {node}")]
    MalformedList { node: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A triple that was read but not translated into an axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurtleDiagnostic {
    pub triple: String,
    pub message: String,
}

impl fmt::Display for TurtleDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning: {}: {}", self.message, self.triple)
    }
}
