//! Tableau satisfiability checking over a completion graph.
//!
//! Rules run in a fixed priority order with ties broken by node creation
//! order, so a run is fully deterministic. Case distinctions are explored left
//! to right. Every fact records the case distinctions it depends on, and a
//! clash jumps back to the latest one involved. Anonymous nodes are blocked
//! pairwise when the knowledge base has inverse roles, by a containing
//! ancestor when it has nominals or number restrictions, and by any earlier
//! node with a containing label otherwise. Complex role inclusions are not
//! applied here (they are compiled to rules for named individuals);
//! transitivity is handled by the `∀+` rule.

mod engine;
mod graph;
mod vocab;

use std::fmt;

use thiserror::Error;

use crate::model::{ConceptExpr, KnowledgeBase, RoleExpr};
use crate::validate::Diagnostic;

pub use engine::Tableau;
pub use graph::NodeId;

pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableauConfig {
    pub max_nodes: usize,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClashKind {
    Atomic(String),
    Bottom,
    Disjunction,
    AtMost,
    DisjointRoles(RoleExpr, RoleExpr),
    Irreflexive(RoleExpr),
    Asymmetric(RoleExpr),
    NegatedAssertion(RoleExpr),
    NegatedSelf(RoleExpr),
    NegatedNominal,
    Inequality,
}

impl fmt::Display for ClashKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClashKind::Atomic(a) => write!(f, "atomic {a}"),
            ClashKind::Bottom => f.write_str("bottom"),
            ClashKind::Disjunction => f.write_str("disjunction"),
            ClashKind::AtMost => f.write_str("at-most"),
            ClashKind::DisjointRoles(r, s) => write!(f, "disjoint-roles {r} {s}"),
            ClashKind::Irreflexive(r) => write!(f, "irreflexive {r}"),
            ClashKind::Asymmetric(r) => write!(f, "asymmetric {r}"),
            ClashKind::NegatedAssertion(r) => write!(f, "negated-assertion {r}"),
            ClashKind::NegatedSelf(r) => write!(f, "negated-self {r}"),
            ClashKind::NegatedNominal => f.write_str("negated-nominal"),
            ClashKind::Inequality => f.write_str("inequality"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clash {
    pub kind: ClashKind,
    pub nodes: Vec<NodeId>,
    pub concept: Option<ConceptExpr>,
}

/// One rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: &'static str,
    pub nodes: Vec<NodeId>,
    pub concept: Option<ConceptExpr>,
    pub detail: Option<String>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.rule)?;
        for n in &self.nodes {
            write!(f, " n{n}")?;
        }
        if let Some(c) = &self.concept {
            write!(f, " {c}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelNode {
    pub id: NodeId,
    pub name: Option<String>,
    pub label: Vec<ConceptExpr>,
    pub blocked_by: Option<NodeId>,
}

/// The clash-free completion graph a satisfiable verdict rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionModel {
    pub nodes: Vec<ModelNode>,
    pub edges: Vec<(NodeId, NodeId, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Satisfiable(CompletionModel),
    Unsatisfiable(Clash),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauVerdict {
    pub outcome: Outcome,
    /// Every rule application, including those on abandoned branches.
    pub trace: Vec<TraceStep>,
    pub backtracks: usize,
    /// Reasons the verdict may miss an inconsistency; empty when complete.
    pub possibly_incomplete: Vec<String>,
}

impl TableauVerdict {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self.outcome, Outcome::Satisfiable(_))
    }

    pub fn trace_text(&self) -> String {
        self.trace.iter().map(|s| format!("{s}\n")).collect()
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("knowledge base is not admissible: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("inconclusive: node limit of {max_nodes} exceeded")]
    ResourceLimit { max_nodes: usize },
}

pub fn is_consistent(kb: &KnowledgeBase) -> Result<TableauVerdict, TableauError> {
    Tableau::new(kb, TableauConfig::default())?.consistency()
}

/// Satisfiability of `c` with respect to `kb`, via a fresh individual.
pub fn is_satisfiable_concept(kb: &KnowledgeBase, c: &ConceptExpr) -> Result<TableauVerdict, TableauError> {
    Tableau::new(kb, TableauConfig::default())?.satisfiability(c)
}

/// `sub ⊑ sup` holds iff `sub ⊓ ¬sup` is unsatisfiable.
pub fn subsumes(kb: &KnowledgeBase, sup: &ConceptExpr, sub: &ConceptExpr) -> Result<bool, TableauError> {
    Tableau::new(kb, TableauConfig::default())?.subsumes(sup, sub)
}
