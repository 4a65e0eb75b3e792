//! DL-safe rule evaluation over named individuals.
//!
//! Rules (user rules plus compiled role chains) are evaluated bottom-up with
//! semi-naive iteration until no new ground atom appears. In asserted mode a
//! DL body atom holds when it is asserted or derived; in entailment mode it
//! holds when the knowledge base, extended with everything derived so far,
//! entails it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{
    Atom, Axiom, ConceptExpr, DlSafeRule, KnowledgeBase, ModelError, RoleExpr, Term, NAMED_INDIVIDUAL_PREDICATE,
};
use crate::normalize::{compile_chains_to_rules, guard_all};
use crate::tableau::{Tableau, TableauConfig, TableauError};
use crate::validate::{validate, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SafetyMode {
    /// Missing `O(?v)` guards are added.
    #[default]
    Auto,
    /// Unguarded variables are an error.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MaterializeMode {
    #[default]
    Asserted,
    Entailment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializeConfig {
    pub mode: MaterializeMode,
    pub safety: SafetyMode,
    pub max_nodes: usize,
    pub timeout: Option<Duration>,
}

impl Default for MaterializeConfig {
    fn default() -> Self {
        MaterializeConfig {
            mode: MaterializeMode::Asserted,
            safety: SafetyMode::Auto,
            max_nodes: TableauConfig::default().max_nodes,
            timeout: None,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("unsafe rule `{rule}`: variable ?{variable} occurs in no non-DL atom")]
    Unsafe { rule: String, variable: String },
    #[error("knowledge base is not admissible: {}", .0.iter().map(|d| d.message.as_str()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("refusing to materialize an inconsistent knowledge base")]
    Inconsistent,
    #[error("derived facts made the knowledge base inconsistent")]
    BecameInconsistent,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Adds or demands the `O(?v)` guards that make a rule DL-safe.
pub fn make_safe(rule: &DlSafeRule, mode: SafetyMode) -> Result<DlSafeRule, RuleError> {
    match mode {
        SafetyMode::Auto => Ok(guard_all(rule.clone())),
        SafetyMode::Strict => match rule.unguarded_variables().first() {
            None => Ok(rule.clone()),
            Some(v) => Err(RuleError::Unsafe {
                rule: rule.to_string(),
                variable: v.to_string(),
            }),
        },
    }
}

/// A ground atom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    Concept(String, String),
    Role(String, String, String),
    NonDl(String, Vec<String>),
}

impl Fact {
    pub fn predicate(&self) -> &str {
        match self {
            Fact::Concept(p, _) | Fact::Role(p, _, _) | Fact::NonDl(p, _) => p,
        }
    }

    pub fn individuals(&self) -> Vec<&str> {
        match self {
            Fact::Concept(_, a) => vec![a],
            Fact::Role(_, a, b) => vec![a, b],
            Fact::NonDl(_, args) => args.iter().map(String::as_str).collect(),
        }
    }

    /// The ABox assertion stating this fact; non-DL facts have none.
    pub fn to_axiom(&self) -> Option<Axiom> {
        match self {
            Fact::Concept(c, a) => Some(Axiom::ConceptAssertion(ConceptExpr::atomic(c.as_str()), a.clone())),
            Fact::Role(r, a, b) => Some(Axiom::role_assertion(
                RoleExpr::named(r.as_str()),
                a.as_str(),
                b.as_str(),
            )),
            Fact::NonDl(..) => None,
        }
    }

    fn tuple(&self) -> Vec<String> {
        self.individuals().into_iter().map(str::to_string).collect()
    }

    fn from_tuple(atom: &Atom, tuple: Vec<String>) -> Fact {
        let mut it = tuple.into_iter();
        match atom {
            Atom::Concept(p, _) => Fact::Concept(p.clone(), it.next().unwrap()),
            Atom::Role(p, _, _) => Fact::Role(p.clone(), it.next().unwrap(), it.next().unwrap()),
            Atom::NonDl(p, _) => Fact::NonDl(p.clone(), it.collect()),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Concept(p, a) => write!(f, "{p}({a})"),
            Fact::Role(p, a, b) => write!(f, "{p}({a},{b})"),
            Fact::NonDl(p, args) => write!(f, "{p}({})", args.join(",")),
        }
    }
}

/// Where a fact came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Asserted,
    /// A rule instance: rule id and variable bindings.
    Rule {
        rule: String,
        bindings: Vec<(String, String)>,
    },
    /// Entailed by the knowledge base without any rule.
    Entailed,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Asserted => f.write_str("asserted"),
            Source::Entailed => f.write_str("entailed"),
            Source::Rule { rule, bindings } => {
                write!(f, "{rule}")?;
                if !bindings.is_empty() {
                    let b: Vec<String> = bindings.iter().map(|(v, a)| format!("?{v}={a}")).collect();
                    write!(f, " {{{}}}", b.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

/// Asserted and derived facts with provenance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactStore {
    facts: BTreeMap<Fact, Vec<Source>>,
    /// Rule ids in evaluation order with the (guarded) rule text.
    pub rules: Vec<(String, DlSafeRule)>,
    pub rounds: usize,
    /// Limits that cut the computation short; empty when the fixpoint is
    /// exact.
    pub incomplete: Vec<String>,
    /// Constructs the entailment checks may not fully account for.
    pub caveats: Vec<String>,
}

impl FactStore {
    pub fn new() -> Self {
        FactStore::default()
    }

    /// Records `fact`; returns whether it was new.
    pub fn insert(&mut self, fact: Fact, source: Source) -> bool {
        match self.facts.get_mut(&fact) {
            Some(sources) => {
                if !sources.contains(&source) {
                    sources.push(source);
                }
                false
            }
            None => {
                self.facts.insert(fact, vec![source]);
                true
            }
        }
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.facts.contains_key(fact)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty()
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.facts.keys()
    }

    pub fn sources(&self, fact: &Fact) -> &[Source] {
        self.facts.get(fact).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Facts not asserted in the input.
    pub fn derived(&self) -> impl Iterator<Item = &Fact> {
        self.facts
            .iter()
            .filter(|(_, s)| !s.contains(&Source::Asserted))
            .map(|(f, _)| f)
    }

    pub fn concept_facts(&self) -> impl Iterator<Item = (&str, &str)> {
        self.facts.keys().filter_map(|f| match f {
            Fact::Concept(c, a) => Some((c.as_str(), a.as_str())),
            _ => None,
        })
    }

    pub fn role_facts(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.facts.keys().filter_map(|f| match f {
            Fact::Role(r, a, b) => Some((r.as_str(), a.as_str(), b.as_str())),
            _ => None,
        })
    }

    /// Derived facts as ABox axioms.
    pub fn derived_axioms(&self) -> Vec<Axiom> {
        self.derived().filter_map(Fact::to_axiom).collect()
    }

    /// Derived facts in the DL text syntax, one statement per line.
    pub fn to_dl(&self) -> String {
        self.derived_axioms().iter().map(|a| format!("{a}.\n")).collect()
    }

    /// One line per derived fact naming the rule instances behind it.
    pub fn provenance_report(&self) -> String {
        let mut out = String::new();
        for (id, rule) in &self.rules {
            out.push_str(&format!("{id}: {rule}\n"));
        }
        for f in self.derived() {
            let sources: Vec<String> = self.sources(f).iter().map(Source::to_string).collect();
            out.push_str(&format!("{f} <- {}\n", sources.join("; ")));
        }
        out
    }
}

/// Ground facts stated directly in the ABox. Inverse role assertions are
/// stored in the forward direction; complex concept assertions are skipped.
pub fn asserted_facts(kb: &KnowledgeBase) -> BTreeSet<Fact> {
    kb.abox()
        .filter_map(|ax| match ax {
            Axiom::ConceptAssertion(ConceptExpr::Atomic(c), a) => Some(Fact::Concept(c.clone(), a.clone())),
            Axiom::RoleAssertion(RoleExpr::Named(r), a, b) => Some(Fact::Role(r.clone(), a.clone(), b.clone())),
            Axiom::RoleAssertion(RoleExpr::Inverse(r), a, b) => Some(Fact::Role(r.clone(), b.clone(), a.clone())),
            _ => None,
        })
        .collect()
}

type Tuple = Vec<String>;
type Relations = BTreeMap<String, BTreeSet<Tuple>>;
type Binding = BTreeMap<String, String>;

fn named_individuals(kb: &KnowledgeBase) -> BTreeSet<Tuple> {
    kb.signature().individuals.iter().map(|a| vec![a.clone()]).collect()
}

fn relation<'a>(rels: &'a Relations, empty: &'a BTreeSet<Tuple>, p: &str) -> &'a BTreeSet<Tuple> {
    rels.get(p).unwrap_or(empty)
}

/// Extends `binding` with every way `atom` matches a tuple of `rel`.
fn match_atom(atom: &Atom, rel: &BTreeSet<Tuple>, binding: &Binding) -> Vec<Binding> {
    let terms = atom.terms();
    let mut out = Vec::new();
    'tuples: for t in rel {
        if t.len() != terms.len() {
            continue;
        }
        let mut b = binding.clone();
        for (term, val) in terms.iter().zip(t) {
            match term {
                Term::Constant(c) => {
                    if c != val {
                        continue 'tuples;
                    }
                }
                Term::Variable(v) => match b.get(v) {
                    Some(x) if x != val => continue 'tuples,
                    Some(_) => {}
                    None => {
                        b.insert(v.clone(), val.clone());
                    }
                },
            }
        }
        out.push(b);
    }
    out
}

/// All bindings satisfying the body, where the atom at `delta_at` (if any)
/// ranges over `delta` instead of the full relation.
fn evaluate_body(rule: &DlSafeRule, rels: &Relations, delta_at: Option<(usize, &BTreeSet<Tuple>)>) -> Vec<Binding> {
    let empty = BTreeSet::new();
    let mut order: Vec<usize> = (0..rule.body.len())
        .filter(|&i| Some(i) != delta_at.map(|d| d.0))
        .collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (&rule.body[i], &rule.body[j]);
        relation(rels, &empty, a.predicate())
            .len()
            .cmp(&relation(rels, &empty, b.predicate()).len())
            .then_with(|| a.cmp(b))
    });
    let mut bindings = vec![Binding::new()];
    if let Some((i, delta)) = delta_at {
        bindings = match_atom(&rule.body[i], delta, &Binding::new());
    }
    for i in order {
        let atom = &rule.body[i];
        let rel = relation(rels, &empty, atom.predicate());
        bindings = bindings.iter().flat_map(|b| match_atom(atom, rel, b)).collect();
        if bindings.is_empty() {
            break;
        }
    }
    bindings
}

fn ground_head(rule: &DlSafeRule, b: &Binding) -> Fact {
    let tuple = rule
        .head
        .terms()
        .into_iter()
        .map(|t| match t {
            Term::Constant(c) => c.clone(),
            Term::Variable(v) => b[v].clone(),
        })
        .collect();
    Fact::from_tuple(&rule.head, tuple)
}

fn rule_bindings(rule: &DlSafeRule, b: &Binding) -> Vec<(String, String)> {
    rule.variables()
        .into_iter()
        .map(|v| (v.to_string(), b[v].clone()))
        .collect()
}

fn relations_of<'a>(facts: impl IntoIterator<Item = &'a Fact>, kb: &KnowledgeBase) -> Relations {
    let mut rels = Relations::new();
    for f in facts {
        rels.entry(f.predicate().to_string()).or_default().insert(f.tuple());
    }
    rels.insert(NAMED_INDIVIDUAL_PREDICATE.to_string(), named_individuals(kb));
    rels
}

/// Every new ground head instance of `rule` whose DL body atoms are asserted
/// in `kb` or present in `store`.
pub fn apply_rule(rule: &DlSafeRule, kb: &KnowledgeBase, store: &FactStore) -> BTreeSet<Fact> {
    let asserted = asserted_facts(kb);
    let rels = relations_of(asserted.iter().chain(store.facts()), kb);
    evaluate_body(rule, &rels, None)
        .iter()
        .map(|b| ground_head(rule, b))
        .filter(|f| !asserted.contains(f) && !store.contains(f))
        .collect()
}

/// Instance checks against a fixed knowledge base, positives memoized
/// across rounds (entailment is monotone in added assertions).
struct Entailments {
    config: TableauConfig,
    base: KnowledgeBase,
    positive: BTreeSet<Fact>,
    /// Whether role facts may follow from equality reasoning.
    roles_need_tableau: bool,
    incomplete: BTreeSet<String>,
    caveats: BTreeSet<String>,
}

impl Entailments {
    fn new(kb: &KnowledgeBase, config: TableauConfig) -> Self {
        let mut roles_need_tableau = false;
        for ax in kb.axioms() {
            if matches!(ax, Axiom::SameIndividual(..)) {
                roles_need_tableau = true;
            }
            for c in ax.concepts() {
                c.walk(&mut |d| {
                    if matches!(d, ConceptExpr::Nominal(_) | ConceptExpr::AtMost(..)) {
                        roles_need_tableau = true;
                    }
                });
            }
        }
        Entailments {
            config,
            base: kb
                .with_rules(Vec::new())
                .expect("dropping rules keeps the signature valid"),
            positive: BTreeSet::new(),
            roles_need_tableau,
            incomplete: BTreeSet::new(),
            caveats: BTreeSet::new(),
        }
    }

    fn unsatisfiable_with(&mut self, kb: &KnowledgeBase, extra: Axiom) -> Result<bool, RuleError> {
        let kb = kb.with_axioms([extra])?;
        let verdict = match Tableau::new(&kb, self.config) {
            Ok(t) => t.consistency(),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(v) => {
                self.caveats.extend(v.possibly_incomplete.iter().cloned());
                Ok(!v.is_satisfiable())
            }
            Err(TableauError::ResourceLimit { max_nodes }) => {
                self.incomplete
                    .insert(format!("instance check exceeded {max_nodes} nodes"));
                Ok(false)
            }
            Err(TableauError::Invalid(d)) => Err(RuleError::Invalid(d)),
        }
    }

    /// Whether `kb` entails `fact`; `kb` is the base plus derived facts.
    fn holds(&mut self, kb: &KnowledgeBase, fact: &Fact, known: &BTreeSet<Fact>) -> Result<bool, RuleError> {
        if self.positive.contains(fact) || known.contains(fact) {
            return Ok(true);
        }
        let negation = match fact {
            Fact::Concept(c, a) => {
                Axiom::ConceptAssertion(ConceptExpr::not(ConceptExpr::atomic(c.as_str())), a.clone())
            }
            Fact::Role(r, a, b) => {
                if !self.roles_need_tableau {
                    return Ok(false);
                }
                // a has no r-successor equal to b
                let not_b = ConceptExpr::not(ConceptExpr::nominal([b.as_str()]).expect("one name"));
                Axiom::ConceptAssertion(ConceptExpr::for_all(RoleExpr::named(r.as_str()), not_b), a.clone())
            }
            Fact::NonDl(..) => return Ok(false),
        };
        let entailed = self.unsatisfiable_with(kb, negation)?;
        if entailed {
            self.positive.insert(fact.clone());
        }
        Ok(entailed)
    }
}

/// Consistency of `kb`; a run over the node limit counts as consistent and
/// is recorded in `store`.
fn is_consistent(kb: &KnowledgeBase, config: TableauConfig, store: &mut FactStore) -> Result<bool, RuleError> {
    match Tableau::new(kb, config).and_then(|t| t.consistency()) {
        Ok(v) => {
            for c in &v.possibly_incomplete {
                if !store.caveats.contains(c) {
                    store.caveats.push(c.clone());
                }
            }
            Ok(v.is_satisfiable())
        }
        Err(TableauError::ResourceLimit { max_nodes }) => {
            store
                .incomplete
                .push(format!("consistency check exceeded {max_nodes} nodes"));
            Ok(true)
        }
        Err(TableauError::Invalid(d)) => Err(RuleError::Invalid(d)),
    }
}

/// Runs all rules and compiled role chains to a fixpoint.
pub fn materialize(kb: &KnowledgeBase, config: &MaterializeConfig) -> Result<FactStore, RuleError> {
    let errors: Vec<Diagnostic> = validate(kb).into_iter().filter(Diagnostic::is_error).collect();
    if !errors.is_empty() {
        return Err(RuleError::Invalid(errors));
    }
    let mut rules = Vec::new();
    for (i, r) in kb.rules().iter().enumerate() {
        rules.push((format!("rule{}", i + 1), make_safe(r, config.safety)?));
    }
    let chains = compile_chains_to_rules(kb).expect("validated knowledge bases have no universal role");
    for (i, r) in chains.into_iter().enumerate() {
        rules.push((format!("chain{}", i + 1), r));
    }

    let tableau_config = TableauConfig {
        max_nodes: config.max_nodes,
    };
    let mut store = FactStore::new();
    store.rules = rules.clone();
    let asserted = asserted_facts(kb);
    for f in &asserted {
        store.insert(f.clone(), Source::Asserted);
    }
    let deadline = config.timeout.map(|t| Instant::now() + t);

    match config.mode {
        MaterializeMode::Asserted => asserted_fixpoint(kb, &rules, &mut store, deadline),
        MaterializeMode::Entailment => {
            if !is_consistent(kb, tableau_config, &mut store)? {
                return Err(RuleError::Inconsistent);
            }
            entailment_fixpoint(kb, &rules, &mut store, deadline, tableau_config)?;
        }
    }
    Ok(store)
}

fn timed_out(deadline: Option<Instant>, store: &mut FactStore) -> bool {
    if deadline.is_some_and(|d| Instant::now() >= d) {
        store
            .incomplete
            .push(format!("timed out after {} rounds", store.rounds));
        true
    } else {
        false
    }
}

fn asserted_fixpoint(
    kb: &KnowledgeBase,
    rules: &[(String, DlSafeRule)],
    store: &mut FactStore,
    deadline: Option<Instant>,
) {
    let mut rels = relations_of(store.facts(), kb);
    // first round: every fact counts as new
    let mut delta: Relations = rels.clone();
    let mut first = true;
    loop {
        if timed_out(deadline, store) {
            return;
        }
        store.rounds += 1;
        let mut new_facts = Vec::new();
        for (id, rule) in rules {
            let mut bindings = Vec::new();
            if first {
                bindings = evaluate_body(rule, &rels, None);
            } else {
                for (i, atom) in rule.body.iter().enumerate() {
                    if let Some(d) = delta.get(atom.predicate()).filter(|d| !d.is_empty() && atom.is_dl()) {
                        bindings.extend(evaluate_body(rule, &rels, Some((i, d))));
                    }
                }
            }
            for b in bindings {
                new_facts.push((ground_head(rule, &b), id.clone(), rule_bindings(rule, &b)));
            }
        }
        let mut next = Relations::new();
        for (fact, rule, bindings) in new_facts {
            if store.insert(fact.clone(), Source::Rule { rule, bindings }) {
                rels.entry(fact.predicate().to_string())
                    .or_default()
                    .insert(fact.tuple());
                next.entry(fact.predicate().to_string())
                    .or_default()
                    .insert(fact.tuple());
            }
        }
        first = false;
        if next.is_empty() {
            return;
        }
        delta = next;
    }
}

/// Relations for the DL predicates used in rule bodies, as entailed by
/// `working`, plus the explicit facts of `store`.
fn entailed_relations(
    working: &KnowledgeBase,
    rules: &[(String, DlSafeRule)],
    store: &FactStore,
    checker: &mut Entailments,
) -> Result<Relations, RuleError> {
    let known: BTreeSet<Fact> = store.facts().cloned().collect();
    let mut rels = relations_of(&known, working);
    let individuals: Vec<String> = working.signature().individuals.iter().cloned().collect();
    let mut predicates: BTreeSet<(String, bool)> = BTreeSet::new();
    for (_, rule) in rules {
        for atom in &rule.body {
            match atom {
                Atom::Concept(p, _) => predicates.insert((p.clone(), false)),
                Atom::Role(p, _, _) => predicates.insert((p.clone(), true)),
                Atom::NonDl(..) => false,
            };
        }
    }
    for (p, is_role) in predicates {
        let candidates: Vec<Fact> = if is_role {
            individuals
                .iter()
                .flat_map(|a| individuals.iter().map(|b| Fact::Role(p.clone(), a.clone(), b.clone())))
                .collect()
        } else {
            individuals
                .iter()
                .map(|a| Fact::Concept(p.clone(), a.clone()))
                .collect()
        };
        for f in candidates {
            if checker.holds(working, &f, &known)? {
                rels.entry(p.clone()).or_default().insert(f.tuple());
            }
        }
    }
    Ok(rels)
}

fn entailment_fixpoint(
    kb: &KnowledgeBase,
    rules: &[(String, DlSafeRule)],
    store: &mut FactStore,
    deadline: Option<Instant>,
    config: TableauConfig,
) -> Result<(), RuleError> {
    let mut checker = Entailments::new(kb, config);
    let base = checker.base.clone();
    let mut working = base.clone();
    let mut previous = Relations::new();
    loop {
        if timed_out(deadline, store) {
            break;
        }
        store.rounds += 1;
        let rels = entailed_relations(&working, rules, store, &mut checker)?;
        let mut new_facts = Vec::new();
        for (id, rule) in rules {
            let mut bindings = Vec::new();
            if store.rounds == 1 {
                bindings = evaluate_body(rule, &rels, None);
            } else {
                for (i, atom) in rule.body.iter().enumerate() {
                    if !atom.is_dl() {
                        continue;
                    }
                    let empty = BTreeSet::new();
                    let old = previous.get(atom.predicate()).unwrap_or(&empty);
                    let delta: BTreeSet<Tuple> = relation(&rels, &empty, atom.predicate())
                        .difference(old)
                        .cloned()
                        .collect();
                    if !delta.is_empty() {
                        bindings.extend(evaluate_body(rule, &rels, Some((i, &delta))));
                    }
                }
            }
            for b in bindings {
                new_facts.push((ground_head(rule, &b), id.clone(), rule_bindings(rule, &b)));
            }
        }
        let mut added = Vec::new();
        for (fact, rule, bindings) in new_facts {
            if store.insert(fact.clone(), Source::Rule { rule, bindings }) {
                added.push(fact);
            }
        }
        previous = rels;
        if added.is_empty() {
            break;
        }
        working = working.with_axioms(added.iter().filter_map(Fact::to_axiom))?;
        if !is_consistent(&working, config, store)? {
            return Err(RuleError::BecameInconsistent);
        }
    }

    // dual provenance for derived facts the rule-free knowledge base entails
    let asserted = asserted_facts(kb);
    let derived: Vec<Fact> = store.derived().cloned().collect();
    let mut base_checker = Entailments::new(kb, config);
    for f in derived {
        if base_checker.holds(&base, &f, &asserted)? {
            store.insert(f, Source::Entailed);
        }
    }
    let mut reasons: BTreeSet<String> = std::mem::take(&mut store.incomplete).into_iter().collect();
    reasons.extend(checker.incomplete);
    reasons.extend(base_checker.incomplete);
    store.incomplete = reasons.into_iter().collect();
    let mut caveats: BTreeSet<String> = std::mem::take(&mut store.caveats).into_iter().collect();
    caveats.extend(checker.caveats);
    caveats.extend(base_checker.caveats);
    store.caveats = caveats.into_iter().collect();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_dl;

    const AWARD: &str = "AwardWinnerActor EQUIV won SOME Award.
a : Actor. b : Actor. c : Actor.
d : Award.
a won d.
AwardWinnerActor(?x) <- won(?x,?y).";

    const SERIES: &str = "a : Actor. b : Actor. c : Actor. d : Actor.
m : Movie. s : Series. m partOf s.
partOf o starredIn SUBROLE co-starredWith.
starredIn o partOf SUBROLE starredIn.
a starredIn m. b starredIn m. c starredIn m. d starredIn s.
co-starredWith(?x,d) <- starredIn(?x,m).";

    fn kb(s: &str) -> KnowledgeBase {
        parse_dl(s).unwrap()
    }

    fn concept(c: &str, a: &str) -> Fact {
        Fact::Concept(c.into(), a.into())
    }

    fn role(r: &str, a: &str, b: &str) -> Fact {
        Fact::Role(r.into(), a.into(), b.into())
    }

    fn entailment() -> MaterializeConfig {
        MaterializeConfig {
            mode: MaterializeMode::Entailment,
            ..Default::default()
        }
    }

    #[test]
    fn auto_mode_guards_every_variable() {
        let k = kb(AWARD);
        let safe = make_safe(&k.rules()[0], SafetyMode::Auto).unwrap();
        assert_eq!(safe.to_string(), "AwardWinnerActor(?x) <- won(?x,?y), O(?x), O(?y)");
        assert_eq!(make_safe(&safe, SafetyMode::Auto).unwrap(), safe);
    }

    #[test]
    fn strict_mode_names_the_variable() {
        let k = kb(AWARD);
        let err = make_safe(&k.rules()[0], SafetyMode::Strict).unwrap_err();
        assert!(matches!(&err, RuleError::Unsafe { variable, .. } if variable == "x"));
        assert!(err.to_string().contains("?x"));
        let err = materialize(
            &k,
            &MaterializeConfig {
                safety: SafetyMode::Strict,
                ..Default::default()
            },
        );
        assert!(matches!(err, Err(RuleError::Unsafe { .. })));
    }

    #[test]
    fn award_winner_is_only_a() {
        let k = kb(AWARD);
        let store = materialize(&k, &MaterializeConfig::default()).unwrap();
        let derived: Vec<&Fact> = store.derived().collect();
        assert_eq!(derived, vec![&concept("AwardWinnerActor", "a")]);
        assert!(store.is_complete());
    }

    #[test]
    fn award_entailment_mode_has_dual_provenance() {
        let k = kb(AWARD);
        let store = materialize(&k, &entailment()).unwrap();
        let f = concept("AwardWinnerActor", "a");
        assert_eq!(store.derived().collect::<Vec<_>>(), vec![&f]);
        let sources = store.sources(&f);
        assert!(sources.contains(&Source::Entailed));
        assert!(sources
            .iter()
            .any(|s| matches!(s, Source::Rule { rule, .. } if rule == "rule1")));
    }

    #[test]
    fn apply_rule_on_series_abox() {
        let k = kb(SERIES);
        let got = apply_rule(&k.rules()[0], &k, &FactStore::new());
        let want: BTreeSet<Fact> = ["a", "b", "c"].iter().map(|x| role("co-starredWith", x, "d")).collect();
        assert_eq!(got, want);
        let r = parse_dl("A(?x) <- Missing(?x), O(?x).").unwrap();
        assert!(apply_rule(&r.rules()[0], &k, &FactStore::new()).is_empty());
    }

    #[test]
    fn series_materialization_is_exact() {
        let k = kb(SERIES);
        for config in [MaterializeConfig::default(), entailment()] {
            let store = materialize(&k, &config).unwrap();
            let derived: BTreeSet<Fact> = store.derived().cloned().collect();
            let mut want = BTreeSet::new();
            for x in ["a", "b", "c"] {
                want.insert(role("co-starredWith", x, "d"));
                want.insert(role("starredIn", x, "s"));
            }
            assert_eq!(derived, want, "{:?}", config.mode);
        }
    }

    #[test]
    fn no_rules_no_chains_gives_the_abox() {
        let k = kb("a : A. a r b. b : B. A SUBCLASS C.");
        let store = materialize(&k, &MaterializeConfig::default()).unwrap();
        let all: BTreeSet<Fact> = store.facts().cloned().collect();
        assert_eq!(all, asserted_facts(&k));
        assert_eq!(store.derived().count(), 0);
    }

    #[test]
    fn entailment_mode_uses_the_tbox() {
        let k = kb("a : A. A SUBCLASS B. C(?x) <- B(?x).");
        let asserted = materialize(&k, &MaterializeConfig::default()).unwrap();
        assert_eq!(asserted.derived().count(), 0);
        let entailed = materialize(&k, &entailment()).unwrap();
        assert_eq!(entailed.derived().collect::<Vec<_>>(), vec![&concept("C", "a")]);
    }

    #[test]
    fn transitive_roles_and_hierarchy() {
        let k = kb("TRANS p. p SUBROLE q. a p b. b p c. r(?x,?y) <- q(?x,?y).");
        let store = materialize(&k, &MaterializeConfig::default()).unwrap();
        for f in [
            role("p", "a", "c"),
            role("q", "a", "c"),
            role("r", "a", "b"),
            role("r", "a", "c"),
        ] {
            assert!(store.contains(&f), "{f}");
        }
    }

    #[test]
    fn equality_yields_role_facts_in_entailment_mode() {
        let k = kb("a r b. b SAME c. t(?x,?y) <- r(?x,?y).");
        let store = materialize(&k, &entailment()).unwrap();
        assert!(store.contains(&role("t", "a", "c")));
        let plain = materialize(&k, &MaterializeConfig::default()).unwrap();
        assert!(!plain.contains(&role("t", "a", "c")));
    }

    #[test]
    fn inconsistent_kb_refused_in_entailment_mode() {
        let k = kb("a : A. a : NOT A. B(?x) <- A(?x).");
        assert_eq!(materialize(&k, &entailment()), Err(RuleError::Inconsistent));
        let k = kb("a : A. a : NOT B. B(?x) <- A(?x).");
        assert_eq!(materialize(&k, &entailment()), Err(RuleError::BecameInconsistent));
    }

    #[test]
    fn exports() {
        let store = materialize(&kb(AWARD), &MaterializeConfig::default()).unwrap();
        assert_eq!(store.to_dl(), "a : AwardWinnerActor.\n");
        let report = store.provenance_report();
        assert!(report.contains("rule1: AwardWinnerActor(?x) <- won(?x,?y), O(?x), O(?y)"));
        assert!(report.contains("AwardWinnerActor(a) <- rule1 {?x=a, ?y=d}"));
    }
}
