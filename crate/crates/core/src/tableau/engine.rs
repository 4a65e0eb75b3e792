use std::borrow::Cow;
use std::collections::BTreeSet;

use im::OrdMap;

use super::graph::{union, Blocking, Deps, Graph, NodeId, Status};
use super::vocab::{Cid, Role, Shape, Vocab};
use super::{
    Clash, ClashKind, CompletionModel, ModelNode, Outcome, TableauConfig, TableauError, TableauVerdict, TraceStep,
};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};
use crate::normalize::{gci_disjunctions, nnf, role_closure};
use crate::validate::{validate, Diagnostic, DiagnosticCode};

#[derive(Debug, Clone)]
enum Assertion {
    Same(String, String),
    Different(String, String),
    Concept(Cid, String),
    Role(Role, String, String),
}

/// A knowledge base prepared for repeated satisfiability tests.
#[derive(Debug, Clone)]
pub struct Tableau {
    vocab: Vocab,
    gcis: Vec<Cid>,
    abox: Vec<Assertion>,
    individuals: BTreeSet<String>,
    disjoint: Vec<(Role, Role)>,
    irreflexive: Vec<Role>,
    asymmetric: Vec<Role>,
    reflexive: Vec<Role>,
    negated: Vec<(Role, String, String)>,
    blocking: Blocking,
    incomplete: Vec<String>,
    config: TableauConfig,
}

fn universal_diagnostic(c: &ConceptExpr) -> Option<Diagnostic> {
    c.roles().into_iter().any(RoleExpr::is_universal).then(|| {
        Diagnostic::error(
            DiagnosticCode::UniversalRole,
            format!("the universal role is not supported in reasoning: `{c}`"),
        )
    })
}

impl Tableau {
    pub fn new(kb: &KnowledgeBase, config: TableauConfig) -> Result<Self, TableauError> {
        let diags: Vec<Diagnostic> = validate(kb).into_iter().filter(Diagnostic::is_error).collect();
        if !diags.is_empty() {
            return Err(TableauError::Invalid(diags));
        }
        let gcis: Vec<ConceptExpr> = gci_disjunctions(kb.tbox())
            .into_iter()
            .filter(|c| *c != ConceptExpr::Top)
            .collect();
        let mut concepts = gcis.clone();
        for ax in kb.abox() {
            if let Axiom::ConceptAssertion(c, _) = ax {
                concepts.push(nnf(c));
            }
        }
        let sig = kb.signature();
        let mut vocab = Vocab::new(concepts, &sig.roles, &role_closure(kb));
        let mut gcis: Vec<Cid> = gcis.iter().map(|c| vocab.id(c)).collect();
        gcis.sort();
        gcis.dedup();
        let (mut abox, mut negated) = (vec![], vec![]);
        let (mut disjoint, mut irreflexive, mut asymmetric, mut reflexive) = (vec![], vec![], vec![], vec![]);
        let (mut nominals, mut inverses, mut counting, mut chains) = (false, false, false, false);
        for ax in kb.axioms() {
            match ax {
                Axiom::SameIndividual(a, b) => abox.push(Assertion::Same(a.clone(), b.clone())),
                Axiom::DifferentIndividuals(a, b) => abox.push(Assertion::Different(a.clone(), b.clone())),
                Axiom::ConceptAssertion(c, a) => abox.push(Assertion::Concept(vocab.id(&nnf(c)), a.clone())),
                Axiom::RoleAssertion(r, a, b) => abox.push(Assertion::Role(vocab.role(r), a.clone(), b.clone())),
                Axiom::DisjointRoles(r, s) => disjoint.push((vocab.role(r), vocab.role(s))),
                Axiom::IrreflexiveRole(r) => irreflexive.push(vocab.role(r)),
                Axiom::AsymmetricRole(r) => asymmetric.push(vocab.role(r)),
                Axiom::ReflexiveRole(r) => reflexive.push(vocab.role(r)),
                Axiom::NegatedRoleAssertion(r, a, b) => negated.push((vocab.role(r), a.clone(), b.clone())),
                Axiom::ComplexRoleInclusion(..) => chains = true,
                _ => {}
            }
            inverses |= ax.direct_roles().into_iter().any(RoleExpr::is_inverse);
            for c in ax.concepts() {
                c.walk(&mut |sub| match sub {
                    ConceptExpr::Nominal(_) => nominals = true,
                    ConceptExpr::AtMost(..) | ConceptExpr::AtLeast(..) => counting = true,
                    _ => {}
                });
                inverses |= c.roles().into_iter().any(RoleExpr::is_inverse);
            }
        }
        let blocking = match (inverses, nominals || counting) {
            (true, _) => Blocking::Pairwise,
            (false, true) => Blocking::Ancestor,
            (false, false) => Blocking::Anywhere,
        };
        let mut incomplete = vec![];
        if chains {
            incomplete.push("complex role inclusions are not applied to anonymous individuals".into());
        }
        if nominals && inverses && counting {
            incomplete.push("nominals combined with inverse roles and number restrictions".into());
        }
        Ok(Tableau {
            vocab,
            gcis,
            abox,
            individuals: sig.individuals.clone(),
            disjoint,
            irreflexive,
            asymmetric,
            reflexive,
            negated,
            blocking,
            incomplete,
            config,
        })
    }

    pub fn consistency(&self) -> Result<TableauVerdict, TableauError> {
        Run::new(self, Cow::Borrowed(&self.vocab), None).solve()
    }

    pub fn satisfiability(&self, c: &ConceptExpr) -> Result<TableauVerdict, TableauError> {
        if let Some(d) = universal_diagnostic(c) {
            return Err(TableauError::Invalid(vec![d]));
        }
        let c = nnf(c);
        let mut vocab = self.vocab.clone();
        let id = vocab.intern(&c);
        Run::new(self, Cow::Owned(vocab), Some(id)).solve()
    }

    pub fn subsumes(&self, sup: &ConceptExpr, sub: &ConceptExpr) -> Result<bool, TableauError> {
        let test = ConceptExpr::and([sub.clone(), ConceptExpr::not(sup.clone())]);
        Ok(!self.satisfiability(&test)?.is_satisfiable())
    }
}

#[derive(Debug, Clone)]
enum Choice {
    Add(NodeId, Cid),
    Merge(NodeId, NodeId),
}

struct BranchPoint {
    graph: Graph,
    rule: &'static str,
    alternatives: Vec<Choice>,
    next: usize,
    /// Dependencies of the facts that forced the case distinction.
    premise: Deps,
    /// Dependencies of the clashes met in the alternatives tried so far.
    failed: Deps,
}

struct Step {
    rule: &'static str,
    nodes: Vec<NodeId>,
    concept: Option<Cid>,
    detail: Option<String>,
}

struct Found {
    kind: ClashKind,
    nodes: Vec<NodeId>,
    concept: Option<Cid>,
    deps: Deps,
}

struct Run<'t> {
    t: &'t Tableau,
    v: Cow<'t, Vocab>,
    g: Graph,
    fresh: OrdMap<Cid, Deps>,
    stack: Vec<BranchPoint>,
    trace: Vec<Step>,
    backtracks: usize,
}

type Applied = Result<bool, TableauError>;
type Rule<'t> = fn(&mut Run<'t>, NodeId) -> Applied;

impl<'t> Run<'t> {
    fn new(t: &'t Tableau, v: Cow<'t, Vocab>, extra: Option<Cid>) -> Self {
        let mut run = Run {
            t,
            fresh: t.gcis.iter().map(|&c| (c, Deps::new())).collect(),
            v,
            g: Graph::new(t.blocking),
            stack: vec![],
            trace: vec![],
            backtracks: 0,
        };
        let mut names = t.individuals.clone();
        if let Some(c) = extra {
            run.v.expr(c).walk(&mut |sub| {
                if let ConceptExpr::Nominal(ns) = sub {
                    names.extend(ns.iter().cloned());
                }
            });
        }
        for n in names {
            let label = run.fresh.clone();
            run.g.add_node(None, Some(n), label);
        }
        for ax in &t.abox {
            if let Assertion::Same(a, b) = ax {
                let (x, y) = (run.node(a), run.node(b));
                let (from, into) = run.merge_target(x, y, None);
                run.g.merge(from, into, &Deps::new());
                run.step("same", vec![from, into], None, None);
            }
        }
        for ax in &t.abox {
            match ax {
                Assertion::Different(a, b) => {
                    let (x, y) = (run.node(a), run.node(b));
                    run.g.set_unequal(x, y, Deps::new());
                }
                Assertion::Concept(c, a) => {
                    let x = run.node(a);
                    run.add(x, *c, Deps::new());
                }
                Assertion::Role(r, a, b) => {
                    let (x, y) = (run.node(a), run.node(b));
                    run.g.add_edge(x, y, *r, Deps::new());
                }
                Assertion::Same(..) => {}
            }
        }
        if let Some(c) = extra {
            let label = run.fresh.clone();
            let x = run.g.add_node(None, None, label);
            run.add(x, c, Deps::new());
        }
        if run.g.nodes.is_empty() {
            let label = run.fresh.clone();
            run.g.add_node(None, None, label);
        }
        run
    }

    fn node(&self, name: &str) -> NodeId {
        self.g.individual(name).expect("every individual has a node")
    }

    fn step(&mut self, rule: &'static str, nodes: Vec<NodeId>, concept: Option<Cid>, detail: Option<String>) {
        self.trace.push(Step {
            rule,
            nodes,
            concept,
            detail,
        });
    }

    fn has(&self, x: NodeId, c: Cid) -> bool {
        c == self.v.top() || self.g.has(x, c)
    }

    fn add(&mut self, x: NodeId, c: Cid, deps: Deps) -> bool {
        c != self.v.top() && self.g.add(x, c, deps)
    }

    /// The node of an individual and the dependencies of the merges that
    /// led there.
    fn ident(&self, name: &str) -> (NodeId, Deps) {
        self.g.individual_deps(name).expect("every individual has a node")
    }

    /// Dependencies of `c = ≤n r.d` in `x` together with its `ys`: the
    /// edges, the qualifications and the inequalities between them.
    fn at_most_deps(&self, x: NodeId, c: Cid, r: Role, d: Cid, ys: &[NodeId]) -> Deps {
        let mut deps = self.g.deps(x, c);
        for (i, &y) in ys.iter().enumerate() {
            deps = union(&deps, &self.link_deps(x, y, r));
            deps = union(&deps, &self.g.deps(y, d));
            for &z in &ys[i + 1..] {
                deps = union(&deps, &self.g.unequal_deps(y, z));
            }
        }
        deps
    }

    fn new_node(&mut self, parent: NodeId, r: Role, c: Cid, deps: Deps) -> Result<NodeId, TableauError> {
        if self.g.live_count() >= self.t.config.max_nodes {
            return Err(TableauError::ResourceLimit {
                max_nodes: self.t.config.max_nodes,
            });
        }
        let y = self.g.add_node(Some(parent), None, self.fresh.clone());
        self.add(y, c, deps.clone());
        self.g.add_edge(parent, y, r, deps);
        Ok(y)
    }

    /// Which of two nodes survives a merge: individuals and roots over
    /// anonymous nodes, the predecessor of the node imposing the merge, else
    /// the older node.
    fn merge_target(&self, a: NodeId, b: NodeId, pred: Option<NodeId>) -> (NodeId, NodeId) {
        let (ra, rb) = (!self.g.nodes[a].is_anonymous(), !self.g.nodes[b].is_anonymous());
        match (ra, rb) {
            (true, false) => (b, a),
            (false, true) => (a, b),
            _ if pred == Some(a) => (b, a),
            _ if pred == Some(b) => (a, b),
            _ => (a.max(b), a.min(b)),
        }
    }

    fn refuted(&self, x: NodeId, d: Cid) -> bool {
        d == self.v.bottom() || self.g.has(x, self.v.neg(d))
    }

    /// Whether `k` of `ys` are pairwise unequal.
    fn distinct(&self, ys: &[NodeId], k: usize) -> bool {
        fn go(g: &Graph, ys: &[NodeId], k: usize, chosen: &mut Vec<NodeId>, start: usize) -> bool {
            if chosen.len() == k {
                return true;
            }
            for i in start..ys.len() {
                if ys.len() - i < k - chosen.len() {
                    return false;
                }
                if chosen.iter().all(|&c| g.is_unequal(c, ys[i])) {
                    chosen.push(ys[i]);
                    if go(g, ys, k, chosen, i + 1) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        k == 0 || go(&self.g, ys, k, &mut vec![], 0)
    }

    fn neighbors(&self, x: NodeId, r: Role) -> Vec<NodeId> {
        self.g.neighbors(x, r, &self.v)
    }

    fn neighbors_with(&self, x: NodeId, r: Role, c: Cid) -> Vec<NodeId> {
        self.neighbors(x, r).into_iter().filter(|&y| self.has(y, c)).collect()
    }

    fn holds(&self, x: NodeId, y: NodeId, r: Role) -> bool {
        self.g.holds(x, y, r, &self.v).is_some()
    }

    fn link_deps(&self, x: NodeId, y: NodeId, r: Role) -> Deps {
        self.g.holds(x, y, r, &self.v).unwrap_or_default()
    }

    fn solve(mut self) -> Result<TableauVerdict, TableauError> {
        loop {
            if let Some(found) = self.find_clash() {
                let detail = found.kind.to_string();
                self.step("clash", found.nodes.clone(), found.concept, Some(detail));
                if !self.backtrack(found.deps.clone()) {
                    let clash = Clash {
                        kind: found.kind,
                        nodes: found.nodes,
                        concept: found.concept.map(|c| self.v.expr(c).clone()),
                    };
                    return Ok(self.verdict(Outcome::Unsatisfiable(clash)));
                }
                continue;
            }
            if !self.expand()? {
                let model = self.model();
                return Ok(self.verdict(Outcome::Satisfiable(model)));
            }
        }
    }

    fn verdict(self, outcome: Outcome) -> TableauVerdict {
        let v = &self.v;
        let trace = self
            .trace
            .into_iter()
            .map(|s| TraceStep {
                rule: s.rule,
                nodes: s.nodes,
                concept: s.concept.map(|c| v.expr(c).clone()),
                detail: s.detail,
            })
            .collect();
        TableauVerdict {
            outcome,
            trace,
            backtracks: self.backtracks,
            possibly_incomplete: self.t.incomplete.clone(),
        }
    }

    fn model(&self) -> CompletionModel {
        let blocking = self.g.blocking();
        let nodes = self
            .g
            .live_nodes()
            .map(|x| ModelNode {
                id: x,
                name: self.g.nodes[x].name.clone(),
                label: self.g.labels(x).into_iter().map(|c| self.v.expr(c).clone()).collect(),
                blocked_by: match blocking[x] {
                    Status::Direct(y) => Some(y),
                    _ => None,
                },
            })
            .collect();
        let edges = self
            .g
            .edges()
            .map(|(x, y, r)| (x, y, self.v.role_name(r).to_string()))
            .collect();
        CompletionModel { nodes, edges }
    }

    fn apply(&mut self, rule: &'static str, choice: &Choice, deps: Deps, detail: String) {
        match *choice {
            Choice::Add(x, c) => {
                self.add(x, c, deps);
                self.step(rule, vec![x], Some(c), Some(detail));
            }
            Choice::Merge(from, into) => {
                self.g.merge(from, into, &deps);
                self.step(rule, vec![from, into], None, Some(detail));
            }
        }
    }

    fn branch(&mut self, rule: &'static str, alternatives: Vec<Choice>, premise: Deps) {
        let n = alternatives.len();
        let first = alternatives[0].clone();
        let level = self.stack.len();
        let mut deps = premise.clone();
        deps.insert(level);
        self.stack.push(BranchPoint {
            graph: self.g.clone(),
            rule,
            alternatives,
            next: 1,
            premise,
            failed: Deps::new(),
        });
        self.apply(rule, &first, deps, format!("branch 1/{n}"));
    }

    /// Jumps back to the latest case distinction the clash depends on and
    /// takes its next alternative. Returns false when none is left.
    fn backtrack(&mut self, mut clash: Deps) -> bool {
        while let Some(level) = self.stack.len().checked_sub(1) {
            if clash.remove(&level).is_none() {
                self.stack.pop();
                continue;
            }
            let bp = &mut self.stack[level];
            bp.failed = union(&bp.failed, &clash);
            if bp.next < bp.alternatives.len() {
                let choice = bp.alternatives[bp.next].clone();
                let tried: Vec<Choice> = bp.alternatives[..bp.next].to_vec();
                bp.next += 1;
                let detail = format!("branch {}/{}", bp.next, bp.alternatives.len());
                let (rule, failed) = (bp.rule, bp.failed.clone());
                let mut deps = bp.premise.clone();
                deps.insert(level);
                self.g = bp.graph.clone();
                self.backtracks += 1;
                match choice {
                    Choice::Add(x, c) => self.step("backtrack", vec![x], Some(c), Some(rule.into())),
                    Choice::Merge(a, b) => self.step("backtrack", vec![a, b], None, Some(rule.into())),
                }
                if rule == "or" {
                    for alt in tried {
                        if let Choice::Add(x, d) = alt {
                            let neg = self.v.neg(d);
                            self.add(x, neg, failed.clone());
                        }
                    }
                }
                self.apply(rule, &choice, deps, detail);
                return true;
            }
            clash = union(&bp.failed, &bp.premise);
            self.stack.pop();
        }
        false
    }

    fn find_clash(&self) -> Option<Found> {
        let found = |kind, nodes, concept, deps| {
            Some(Found {
                kind,
                nodes,
                concept,
                deps,
            })
        };
        if let Some((a, b, deps)) = &self.g.merge_clash {
            return found(ClashKind::Inequality, vec![*a, *b], None, deps.clone());
        }
        let roles = !(self.t.disjoint.is_empty() && self.t.irreflexive.is_empty() && self.t.asymmetric.is_empty());
        for x in self.g.live_nodes() {
            for (&c, deps) in &self.g.nodes[x].label {
                match self.v.shape(c) {
                    Shape::Bottom => return found(ClashKind::Bottom, vec![x], None, deps.clone()),
                    Shape::NotAtomic(a) if self.g.has(x, *a) => {
                        let ConceptExpr::Atomic(name) = self.v.expr(*a) else {
                            unreachable!()
                        };
                        let deps = union(deps, &self.g.deps(x, *a));
                        return found(ClashKind::Atomic(name.clone()), vec![x], Some(c), deps);
                    }
                    Shape::NotNominal(ns) => {
                        for a in ns {
                            let (y, ident) = self.ident(a);
                            if y == x {
                                return found(ClashKind::NegatedNominal, vec![x], Some(c), union(deps, &ident));
                            }
                        }
                    }
                    Shape::NotSelf(r) if self.holds(x, x, *r) => {
                        let kind = ClashKind::NegatedSelf(self.v.role_expr(*r));
                        let deps = union(deps, &self.link_deps(x, x, *r));
                        return found(kind, vec![x], Some(c), deps);
                    }
                    Shape::Or(ds) if ds.iter().all(|&d| self.refuted(x, d)) => {
                        let deps = ds
                            .iter()
                            .fold(deps.clone(), |acc, &d| union(&acc, &self.g.deps(x, self.v.neg(d))));
                        return found(ClashKind::Disjunction, vec![x], Some(c), deps);
                    }
                    Shape::AtMost(n, r, d) => {
                        let ys = self.neighbors_with(x, *r, *d);
                        if ys.len() > *n as usize && self.distinct(&ys, *n as usize + 1) {
                            let deps = self.at_most_deps(x, c, *r, *d, &ys);
                            return found(ClashKind::AtMost, vec![x], Some(c), deps);
                        }
                    }
                    _ => {}
                }
            }
            if !roles {
                continue;
            }
            for y in self.g.adjacent(x).filter(|&y| y >= x) {
                let link = |a, b, r| self.g.holds(a, b, r, &self.v);
                for &(r, s) in &self.t.disjoint {
                    for (a, b) in [(x, y), (y, x)] {
                        if let (Some(d1), Some(d2)) = (link(a, b, r), link(a, b, s)) {
                            let kind = ClashKind::DisjointRoles(self.v.role_expr(r), self.v.role_expr(s));
                            return found(kind, vec![x, y], None, union(&d1, &d2));
                        }
                    }
                }
                for &r in &self.t.irreflexive {
                    if let Some(deps) = link(x, x, r).filter(|_| x == y) {
                        let kind = ClashKind::Irreflexive(self.v.role_expr(r));
                        return found(kind, vec![x], None, deps);
                    }
                }
                for &r in &self.t.asymmetric {
                    if let (Some(d1), Some(d2)) = (link(x, y, r), link(y, x, r)) {
                        let kind = ClashKind::Asymmetric(self.v.role_expr(r));
                        return found(kind, vec![x, y], None, union(&d1, &d2));
                    }
                }
            }
        }
        for (r, a, b) in &self.t.negated {
            let ((x, dx), (y, dy)) = (self.ident(a), self.ident(b));
            if let Some(deps) = self.g.holds(x, y, *r, &self.v) {
                let kind = ClashKind::NegatedAssertion(self.v.role_expr(*r));
                return found(kind, vec![x, y], None, union(&union(&deps, &dx), &dy));
            }
        }
        None
    }

    /// Applies rules until the next clash check. Deterministic rules go first
    /// and are exhausted over the whole graph unless one opens a case
    /// distinction; then the first node in creation order with a branching or
    /// generating rule left is expanded. Returns false when the graph is
    /// complete.
    fn expand(&mut self) -> Applied {
        let deterministic: [Rule<'t>; 5] = [
            Self::rule_and,
            Self::rule_nominal,
            Self::rule_merge,
            Self::rule_forall,
            Self::rule_forall_plus,
        ];
        let local: [Rule<'t>; 4] = [Self::rule_or, Self::rule_choose, Self::rule_self, Self::rule_reflexive];
        let generating: [Rule<'t>; 2] = [Self::rule_exists, Self::rule_at_least];
        let blocking = self.g.blocking();
        let nodes: Vec<NodeId> = self
            .g
            .live_nodes()
            .filter(|&x| blocking[x] != Status::Indirect)
            .collect();
        let (level, mut applied) = (self.stack.len(), false);
        for rule in deterministic {
            for &x in &nodes {
                while self.g.is_live(x) && rule(self, x)? {
                    applied = true;
                    if self.stack.len() != level {
                        return Ok(true);
                    }
                }
            }
        }
        if applied {
            return Ok(true);
        }
        for &x in &nodes {
            for rule in local {
                if rule(self, x)? {
                    return Ok(true);
                }
            }
            if blocking[x] == Status::Open {
                for rule in generating {
                    if rule(self, x)? {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    fn rule_and(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::And(cs) = self.v.shape(c) else { continue };
            if cs.iter().all(|&d| self.has(x, d)) {
                continue;
            }
            let cs = cs.clone();
            let deps = self.g.deps(x, c);
            for d in cs {
                self.add(x, d, deps.clone());
            }
            self.step("and", vec![x], Some(c), None);
            return Ok(true);
        }
        Ok(false)
    }

    fn rule_nominal(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::Nominal(names) = self.v.shape(c) else {
                continue;
            };
            let idents: Vec<(NodeId, Deps)> = names.iter().map(|a| self.ident(a)).collect();
            if idents.iter().any(|(y, _)| *y == x) {
                continue;
            }
            let targets: Vec<NodeId> = idents.iter().map(|(y, _)| *y).collect();
            let premise = idents.iter().fold(self.g.deps(x, c), |acc, (_, d)| union(&acc, d));
            let alternatives: Vec<Choice> = targets
                .iter()
                .map(|&y| {
                    let (from, into) = self.merge_target(x, y, None);
                    Choice::Merge(from, into)
                })
                .collect();
            let detail = self.v.expr(c).to_string();
            if alternatives.len() == 1 {
                self.apply("nominal", &alternatives[0], premise, detail);
            } else {
                self.branch("nominal", alternatives, premise);
            }
            return Ok(true);
        }
        Ok(false)
    }

    fn rule_merge(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::AtMost(n, r, d) = *self.v.shape(c) else {
                continue;
            };
            let ys = self.neighbors_with(x, r, d);
            if ys.len() <= n as usize {
                continue;
            }
            let pred = self.g.nodes[x].parent;
            let mut alternatives = vec![];
            for (i, &a) in ys.iter().enumerate() {
                for &b in &ys[i + 1..] {
                    if !self.g.is_unequal(a, b) {
                        let (from, into) = self.merge_target(a, b, pred);
                        alternatives.push(Choice::Merge(from, into));
                    }
                }
            }
            if alternatives.is_empty() {
                continue;
            }
            let premise = self.at_most_deps(x, c, r, d, &ys);
            let detail = self.v.expr(c).to_string();
            if alternatives.len() == 1 {
                self.apply("merge", &alternatives[0], premise, detail);
            } else {
                self.branch("merge", alternatives, premise);
            }
            return Ok(true);
        }
        Ok(false)
    }

    fn rule_forall(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::ForAll(r, d) = *self.v.shape(c) else {
                continue;
            };
            for y in self.neighbors(x, r) {
                if !self.has(y, d) {
                    let deps = union(&self.g.deps(x, c), &self.link_deps(x, y, r));
                    self.add(y, d, deps);
                    self.step("forall", vec![x, y], Some(d), None);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn rule_forall_plus(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            if !matches!(self.v.shape(c), Shape::ForAll(..)) {
                continue;
            }
            for &(r, prop) in self.v.plus(c) {
                for y in self.neighbors(x, r) {
                    if !self.has(y, prop) {
                        let deps = union(&self.g.deps(x, c), &self.link_deps(x, y, r));
                        self.add(y, prop, deps);
                        self.step("forall+", vec![x, y], Some(prop), None);
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    fn rule_or(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::Or(ds) = self.v.shape(c) else { continue };
            if ds.iter().any(|&d| self.has(x, d)) {
                continue;
            }
            let mut premise = self.g.deps(x, c);
            let mut open = vec![];
            for &d in ds {
                if self.refuted(x, d) {
                    premise = union(&premise, &self.g.deps(x, self.v.neg(d)));
                } else {
                    open.push(Choice::Add(x, d));
                }
            }
            match open.len() {
                0 => continue,
                1 => self.apply("or", &open[0], premise, "branch 1/1".into()),
                _ => self.branch("or", open, premise),
            }
            return Ok(true);
        }
        Ok(false)
    }

    fn rule_exists(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::Exists(r, d) = *self.v.shape(c) else {
                continue;
            };
            if self.neighbors_with(x, r, d).is_empty() {
                let y = self.new_node(x, r, d, self.g.deps(x, c))?;
                self.step("exists", vec![x, y], Some(c), None);
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn rule_at_least(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::AtLeast(n, r, d) = *self.v.shape(c) else {
                continue;
            };
            let n = n as usize;
            if self.distinct(&self.neighbors_with(x, r, d), n) {
                continue;
            }
            let mut made = Vec::with_capacity(n);
            let deps = self.g.deps(x, c);
            for _ in 0..n {
                let y = self.new_node(x, r, d, deps.clone())?;
                for &z in &made {
                    self.g.set_unequal(y, z, deps.clone());
                }
                made.push(y);
            }
            let mut nodes = vec![x];
            nodes.extend(&made);
            self.step("at-least", nodes, Some(c), None);
            return Ok(true);
        }
        Ok(false)
    }

    fn rule_choose(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::AtMost(_, r, d) = *self.v.shape(c) else {
                continue;
            };
            if d == self.v.top() {
                continue;
            }
            let neg = self.v.neg(d);
            for y in self.neighbors(x, r) {
                if !self.has(y, d) && !self.has(y, neg) {
                    let premise = union(&self.g.deps(x, c), &self.link_deps(x, y, r));
                    self.branch("choose", vec![Choice::Add(y, d), Choice::Add(y, neg)], premise);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn rule_self(&mut self, x: NodeId) -> Applied {
        for c in self.g.labels(x) {
            let Shape::SelfRestriction(r) = *self.v.shape(c) else {
                continue;
            };
            if !self.holds(x, x, r) {
                self.g.add_edge(x, x, r, self.g.deps(x, c));
                self.step("self", vec![x], Some(c), None);
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn rule_reflexive(&mut self, x: NodeId) -> Applied {
        for i in 0..self.t.reflexive.len() {
            let r = self.t.reflexive[i];
            if !self.holds(x, x, r) {
                self.g.add_edge(x, x, r, Deps::new());
                let detail = self.v.role_expr(r).to_string();
                self.step("reflexive", vec![x], None, Some(detail));
                return Ok(true);
            }
        }
        Ok(false)
    }
}
