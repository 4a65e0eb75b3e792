//! Entailment, classification and realization.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Axiom, ConceptExpr, KnowledgeBase, ModelError, RoleExpr};
use crate::rules::{materialize, MaterializeConfig, MaterializeMode, RuleError};
use crate::tableau::{Tableau, TableauConfig, TableauError};
use crate::turtle::{turtle_name, TurtleDoc};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("entailment is not supported for `{0}`")]
    UnsupportedAxiom(String),
    #[error("knowledge base is inconsistent")]
    Inconsistent,
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Rules(#[from] RuleError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Reasoning services over one knowledge base. Rule and role-chain
/// consequences are folded into the ABox before any tableau call.
pub struct Reasoner {
    kb: KnowledgeBase,
    closed: KnowledgeBase,
    tableau: Tableau,
    config: TableauConfig,
    consistent: bool,
}

impl Reasoner {
    pub fn new(kb: &KnowledgeBase, config: TableauConfig) -> Result<Self, ReasonerError> {
        let base = kb.with_rules(Vec::new())?;
        let tableau = Tableau::new(&base, config)?;
        let consistent = tableau.consistency()?.is_satisfiable();
        let has_chains = kb.rbox().any(|ax| matches!(ax, Axiom::ComplexRoleInclusion(..)));
        let closed = if consistent && (!kb.rules().is_empty() || has_chains) {
            let store = materialize(
                kb,
                &MaterializeConfig {
                    mode: MaterializeMode::Entailment,
                    max_nodes: config.max_nodes,
                    ..Default::default()
                },
            )?;
            base.with_axioms(store.derived_axioms())?
        } else {
            base
        };
        let tableau = if closed.axioms().len() == kb.axioms().len() {
            tableau
        } else {
            Tableau::new(&closed, config)?
        };
        Ok(Reasoner {
            kb: kb.clone(),
            closed,
            tableau,
            config,
            consistent,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    fn unsatisfiable_with(&self, extra: Axiom) -> Result<bool, ReasonerError> {
        let kb = self.closed.with_axioms([extra])?;
        Ok(!Tableau::new(&kb, self.config)?.consistency()?.is_satisfiable())
    }

    pub fn instance_of(&self, c: &ConceptExpr, a: &str) -> Result<bool, ReasonerError> {
        if !self.consistent {
            return Ok(true);
        }
        self.unsatisfiable_with(Axiom::ConceptAssertion(ConceptExpr::not(c.clone()), a.to_string()))
    }

    pub fn related(&self, r: &RoleExpr, a: &str, b: &str) -> Result<bool, ReasonerError> {
        if !self.consistent {
            return Ok(true);
        }
        let (name, a, b) = match r {
            RoleExpr::Named(n) => (n, a, b),
            RoleExpr::Inverse(n) => (n, b, a),
            RoleExpr::Universal => return Ok(true),
        };
        let fact = Axiom::role_assertion(RoleExpr::named(name.as_str()), a, b);
        if self.closed.axioms().contains(&fact) {
            return Ok(true);
        }
        // every r-successor of a differs from b
        let not_b = ConceptExpr::not(ConceptExpr::nominal([b]).expect("one name"));
        let closure = crate::normalize::role_closure(&self.closed);
        let subs: Vec<RoleExpr> = closure
            .roles()
            .filter(|s| closure.subsumed(s, &RoleExpr::named(name.as_str())))
            .cloned()
            .collect();
        if subs
            .iter()
            .any(|s| self.closed.axioms().iter().any(|ax| role_fact_via(ax, s, a, b)))
        {
            return Ok(true);
        }
        self.unsatisfiable_with(Axiom::ConceptAssertion(
            ConceptExpr::for_all(RoleExpr::named(name.as_str()), not_b),
            a.to_string(),
        ))
    }

    pub fn subsumes(&self, sup: &ConceptExpr, sub: &ConceptExpr) -> Result<bool, ReasonerError> {
        Ok(self.tableau.subsumes(sup, sub)?)
    }

    /// Concept inclusions, concept assertions and role assertions.
    pub fn entails(&self, ax: &Axiom) -> Result<bool, ReasonerError> {
        match ax {
            Axiom::ConceptInclusion(c, d) => self.subsumes(d, c),
            Axiom::ConceptAssertion(c, a) => self.instance_of(c, a),
            Axiom::RoleAssertion(r, a, b) => self.related(r, a, b),
            other => Err(ReasonerError::UnsupportedAxiom(other.to_string())),
        }
    }

    /// Pairwise subsumption tests over all concept names, seeded with told
    /// subsumers.
    pub fn classify(&self) -> Result<ConceptHierarchy, ReasonerError> {
        let names: Vec<String> = self.kb.signature().concepts.iter().cloned().collect();
        if !self.consistent {
            return Ok(ConceptHierarchy::degenerate(names));
        }
        let told = told_subsumers(&self.kb);
        let n = names.len();
        let atom = |i: usize| ConceptExpr::atomic(names[i].as_str());
        let mut unsat = vec![false; n];
        let mut is_top = vec![false; n];
        for i in 0..n {
            unsat[i] = self.subsumes(&ConceptExpr::Bottom, &atom(i))?;
            is_top[i] = !unsat[i] && self.subsumes(&atom(i), &ConceptExpr::Top)?;
        }
        // below[i][j]: names[i] ⊑ names[j]
        let mut below = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                below[i][j] = i == j
                    || unsat[i]
                    || is_top[j]
                    || told.contains(&(names[i].clone(), names[j].clone()))
                    || (!unsat[j] && self.subsumes(&atom(j), &atom(i))?);
            }
        }
        Ok(ConceptHierarchy::from_order(&names, &unsat, &is_top, &below))
    }

    /// Most specific concept names of every named individual.
    pub fn realize(&self) -> Result<BTreeMap<String, BTreeSet<String>>, ReasonerError> {
        if !self.consistent {
            return Err(ReasonerError::Inconsistent);
        }
        let hierarchy = self.classify()?;
        let mut out = BTreeMap::new();
        for a in &self.kb.signature().individuals {
            let mut types = BTreeSet::new();
            for c in &self.kb.signature().concepts {
                if self.instance_of(&ConceptExpr::atomic(c.as_str()), a)? {
                    types.insert(c.clone());
                }
            }
            let specific = types
                .iter()
                .filter(|c| !types.iter().any(|d| hierarchy.strictly_below(d, c)))
                .cloned()
                .collect();
            out.insert(a.clone(), specific);
        }
        Ok(out)
    }
}

fn role_fact_via(ax: &Axiom, s: &RoleExpr, a: &str, b: &str) -> bool {
    match ax {
        Axiom::RoleAssertion(r, x, y) => (r == s && x == a && y == b) || (r.inverse() == *s && x == b && y == a),
        _ => false,
    }
}

/// Reflexive-transitive closure of syntactic `A ⊑ B` and `A ≡ B` between
/// concept names.
fn told_subsumers(kb: &KnowledgeBase) -> BTreeSet<(String, String)> {
    let mut pairs = BTreeSet::new();
    for ax in kb.tbox() {
        match ax {
            Axiom::ConceptInclusion(ConceptExpr::Atomic(a), ConceptExpr::Atomic(b)) => {
                pairs.insert((a.clone(), b.clone()));
            }
            Axiom::ConceptEquivalence(ConceptExpr::Atomic(a), ConceptExpr::Atomic(b)) => {
                pairs.insert((a.clone(), b.clone()));
                pairs.insert((b.clone(), a.clone()));
            }
            _ => {}
        }
    }
    loop {
        let extra: Vec<(String, String)> = pairs
            .iter()
            .flat_map(|(a, b)| {
                pairs
                    .iter()
                    .filter(move |(c, _)| c == b)
                    .map(move |(_, d)| (a.clone(), d.clone()))
            })
            .filter(|p| !pairs.contains(p))
            .collect();
        if extra.is_empty() {
            return pairs;
        }
        pairs.extend(extra);
    }
}

pub fn entails(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonerError> {
    Reasoner::new(kb, TableauConfig::default())?.entails(ax)
}

pub fn classify(kb: &KnowledgeBase) -> Result<ConceptHierarchy, ReasonerError> {
    Reasoner::new(kb, TableauConfig::default())?.classify()
}

pub fn realize(kb: &KnowledgeBase) -> Result<BTreeMap<String, BTreeSet<String>>, ReasonerError> {
    Reasoner::new(kb, TableauConfig::default())?.realize()
}

/// Equivalence classes of concept names ordered by subsumption. Node 0 is
/// ⊤ and node 1 is ⊥; edges run from a node to its direct subclasses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptHierarchy {
    /// Sorted member names per node.
    pub nodes: Vec<Vec<String>>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Set when the knowledge base is inconsistent and every name sits in ⊥.
    pub inconsistent: bool,
}

pub const TOP_NODE: usize = 0;
pub const BOTTOM_NODE: usize = 1;

impl ConceptHierarchy {
    fn degenerate(names: Vec<String>) -> Self {
        ConceptHierarchy {
            nodes: vec![Vec::new(), names],
            edges: BTreeSet::from([(TOP_NODE, BOTTOM_NODE)]),
            inconsistent: true,
        }
    }

    fn from_order(names: &[String], unsat: &[bool], is_top: &[bool], below: &[Vec<bool>]) -> Self {
        let n = names.len();
        let mut nodes = vec![Vec::new(), Vec::new()];
        let mut node_of = vec![usize::MAX; n];
        for i in 0..n {
            if unsat[i] {
                node_of[i] = BOTTOM_NODE;
            } else if is_top[i] {
                node_of[i] = TOP_NODE;
            } else if let Some(j) = (0..i).find(|&j| node_of[j] > BOTTOM_NODE && below[i][j] && below[j][i]) {
                node_of[i] = node_of[j];
            } else {
                node_of[i] = nodes.len();
                nodes.push(Vec::new());
            }
            nodes[node_of[i]].push(names[i].clone());
        }
        // representative name index per middle node
        let reps: Vec<usize> = (2..nodes.len())
            .map(|k| (0..n).find(|&i| node_of[i] == k).unwrap())
            .collect();
        let rep = |k: usize| reps[k - 2];
        let strictly = |a: usize, b: usize| below[rep(a)][rep(b)] && !below[rep(b)][rep(a)];
        let middle: Vec<usize> = (2..nodes.len()).collect();
        let mut edges = BTreeSet::new();
        for &c in &middle {
            let parents: Vec<usize> = middle
                .iter()
                .copied()
                .filter(|&p| strictly(c, p) && !middle.iter().any(|&q| strictly(c, q) && strictly(q, p)))
                .collect();
            if parents.is_empty() {
                edges.insert((TOP_NODE, c));
            }
            for p in parents {
                edges.insert((p, c));
            }
            if !middle.iter().any(|&d| strictly(d, c)) {
                edges.insert((c, BOTTOM_NODE));
            }
        }
        if middle.is_empty() {
            edges.insert((TOP_NODE, BOTTOM_NODE));
        }
        ConceptHierarchy {
            nodes,
            edges,
            inconsistent: false,
        }
    }

    pub fn node_of(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|m| m.iter().any(|x| x == name))
    }

    pub fn children(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges.iter().filter(|e| e.0 == k).map(|e| e.1).collect();
        out.sort_by_key(|k| self.label(*k));
        out
    }

    pub fn parents(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges.iter().filter(|e| e.1 == k).map(|e| e.0).collect();
        out.sort_by_key(|k| self.label(*k));
        out
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(k) = stack.pop() {
            if k == to {
                return true;
            }
            if seen.insert(k) {
                stack.extend(self.parents(k));
            }
        }
        false
    }

    /// `sub ⊑ sup` as read off the DAG: same node or an upward path.
    pub fn is_subsumed_by(&self, sub: &str, sup: &str) -> bool {
        match (self.node_of(sub), self.node_of(sup)) {
            (Some(a), Some(b)) => self.reaches(a, b),
            _ => false,
        }
    }

    pub fn strictly_below(&self, sub: &str, sup: &str) -> bool {
        self.node_of(sub) != self.node_of(sup) && self.is_subsumed_by(sub, sup)
    }

    fn label(&self, k: usize) -> String {
        let mut parts = vec![];
        match k {
            TOP_NODE => parts.push("TOP".to_string()),
            BOTTOM_NODE => parts.push("BOTTOM".to_string()),
            _ => {}
        }
        parts.extend(self.nodes[k].iter().cloned());
        parts.join(" = ")
    }

    /// Indented tree from ⊤; nodes with several parents repeat under each.
    /// ⊥ is printed once at the end.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.inconsistent {
            out.push_str("# inconsistent knowledge base\n");
        }
        self.write_tree(TOP_NODE, 0, &mut out);
        out.push_str(&self.label(BOTTOM_NODE));
        out.push('\n');
        out
    }

    fn write_tree(&self, k: usize, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&self.label(k));
        out.push('\n');
        for c in self.children(k) {
            if c != BOTTOM_NODE {
                self.write_tree(c, depth + 1, out);
            }
        }
    }

    /// Direct subsumptions as `rdfs:subClassOf`, equivalent names as
    /// `owl:equivalentClass`. Names that are not valid local names are
    /// skipped.
    pub fn to_turtle(&self) -> TurtleDoc {
        let term = |k: usize| -> Option<String> {
            match k {
                TOP_NODE => Some("owl:Thing".into()),
                BOTTOM_NODE => Some("owl:Nothing".into()),
                _ => turtle_name(&self.nodes[k][0]),
            }
        };
        let mut groups = Vec::new();
        for (k, members) in self.nodes.iter().enumerate() {
            let Some(anchor) = term(k) else {
                continue;
            };
            for m in members.iter().skip(if k > BOTTOM_NODE { 1 } else { 0 }) {
                if let Some(t) = turtle_name(m) {
                    groups.push(format!("{t} owl:equivalentClass {anchor} ."));
                }
            }
        }
        for &(p, c) in &self.edges {
            if p == TOP_NODE || c == BOTTOM_NODE {
                continue;
            }
            if let (Some(sub), Some(sup)) = (term(c), term(p)) {
                groups.push(format!("{sub} rdfs:subClassOf {sup} ."));
            }
        }
        TurtleDoc::new(groups)
    }
}
