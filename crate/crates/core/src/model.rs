//! Domain types: concept and role expressions, axioms, DL-safe rules and the
//! knowledge base container with its cached signature.
//!
//! Constructors normalize as they build: `And`/`Or` are flattened and
//! deduplicated, inverse roles collapse under double inversion, and role
//! assertions over an inverse role are stored with swapped arguments. Two
//! structurally equal values therefore always mean the same thing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// The built-in non-DL predicate that holds for every named individual.
pub const NAMED_INDIVIDUAL_PREDICATE: &str = "O";

/// Largest cardinality accepted in number restrictions.
pub const MAX_CARDINALITY: u32 = i32::MAX as u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleExpr {
    Named(String),
    Inverse(String),
    Universal,
}

impl RoleExpr {
    pub fn named(name: impl Into<String>) -> Self {
        RoleExpr::Named(name.into())
    }

    pub fn inverse_of(name: impl Into<String>) -> Self {
        RoleExpr::Inverse(name.into())
    }

    /// Inversion is an involution; the universal role is its own inverse.
    pub fn inverse(&self) -> RoleExpr {
        match self {
            RoleExpr::Named(n) => RoleExpr::Inverse(n.clone()),
            RoleExpr::Inverse(n) => RoleExpr::Named(n.clone()),
            RoleExpr::Universal => RoleExpr::Universal,
        }
    }

    /// The underlying role name, `None` for the universal role.
    pub fn name(&self) -> Option<&str> {
        match self {
            RoleExpr::Named(n) | RoleExpr::Inverse(n) => Some(n),
            RoleExpr::Universal => None,
        }
    }

    pub fn is_inverse(&self) -> bool {
        matches!(self, RoleExpr::Inverse(_))
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, RoleExpr::Universal)
    }
}

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoleExpr::Named(n) => write!(f, "{n}"),
            RoleExpr::Inverse(n) => write!(f, "INV({n})"),
            RoleExpr::Universal => write!(f, "UNIVERSAL"),
        }
    }
}

/// A concept expression.
///
/// Use the associated constructors (`and`, `or`, `nominal`, ...) rather than
/// building `And`/`Or`/`Nominal` variants by hand; they maintain the
/// flattening and non-emptiness invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConceptExpr {
    Atomic(String),
    Top,
    Bottom,
    Not(Box<ConceptExpr>),
    And(Vec<ConceptExpr>),
    Or(Vec<ConceptExpr>),
    Exists(RoleExpr, Box<ConceptExpr>),
    ForAll(RoleExpr, Box<ConceptExpr>),
    AtLeast(u32, RoleExpr, Box<ConceptExpr>),
    AtMost(u32, RoleExpr, Box<ConceptExpr>),
    SelfRestriction(RoleExpr),
    Nominal(BTreeSet<String>),
}

impl ConceptExpr {
    pub fn atomic(name: impl Into<String>) -> Self {
        ConceptExpr::Atomic(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(c))
    }

    /// Conjunction. Nested conjunctions are flattened and duplicates dropped
    /// (first occurrence wins); a single member is returned as is and an empty
    /// list yields `Top`.
    pub fn and(parts: impl IntoIterator<Item = ConceptExpr>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                ConceptExpr::And(inner) => {
                    for q in inner {
                        push_unique(&mut out, q);
                    }
                }
                other => push_unique(&mut out, other),
            }
        }
        match out.len() {
            0 => ConceptExpr::Top,
            1 => out.pop().unwrap(),
            _ => ConceptExpr::And(out),
        }
    }

    /// Disjunction; dual of [`ConceptExpr::and`], an empty list yields `Bottom`.
    pub fn or(parts: impl IntoIterator<Item = ConceptExpr>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                ConceptExpr::Or(inner) => {
                    for q in inner {
                        push_unique(&mut out, q);
                    }
                }
                other => push_unique(&mut out, other),
            }
        }
        match out.len() {
            0 => ConceptExpr::Bottom,
            1 => out.pop().unwrap(),
            _ => ConceptExpr::Or(out),
        }
    }

    pub fn exists(r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::Exists(r, Box::new(c))
    }

    pub fn for_all(r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::ForAll(r, Box::new(c))
    }

    pub fn at_least(n: u32, r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::AtLeast(n, r, Box::new(c))
    }

    pub fn at_most(n: u32, r: RoleExpr, c: ConceptExpr) -> Self {
        ConceptExpr::AtMost(n, r, Box::new(c))
    }

    /// Nominal over a nonempty set of individuals; `None` for an empty set.
    pub fn nominal<I, S>(names: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        if set.is_empty() {
            None
        } else {
            Some(ConceptExpr::Nominal(set))
        }
    }

    /// Visits this expression and every subexpression, parents first.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a ConceptExpr)) {
        f(self);
        match self {
            ConceptExpr::Not(c)
            | ConceptExpr::Exists(_, c)
            | ConceptExpr::ForAll(_, c)
            | ConceptExpr::AtLeast(_, _, c)
            | ConceptExpr::AtMost(_, _, c) => c.walk(f),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
                for c in cs {
                    c.walk(f);
                }
            }
            _ => {}
        }
    }

    /// Roles mentioned anywhere in the expression.
    pub fn roles(&self) -> Vec<&RoleExpr> {
        let mut out = Vec::new();
        self.walk(&mut |c| match c {
            ConceptExpr::Exists(r, _)
            | ConceptExpr::ForAll(r, _)
            | ConceptExpr::AtLeast(_, r, _)
            | ConceptExpr::AtMost(_, r, _)
            | ConceptExpr::SelfRestriction(r) => out.push(r),
            _ => {}
        });
        out
    }

    /// Modal depth: nesting of role restrictions.
    pub fn depth(&self) -> usize {
        match self {
            ConceptExpr::Atomic(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => 0,
            ConceptExpr::SelfRestriction(_) => 1,
            ConceptExpr::Not(c) => c.depth(),
            ConceptExpr::And(cs) | ConceptExpr::Or(cs) => cs.iter().map(|c| c.depth()).max().unwrap_or(0),
            ConceptExpr::Exists(_, c)
            | ConceptExpr::ForAll(_, c)
            | ConceptExpr::AtLeast(_, _, c)
            | ConceptExpr::AtMost(_, _, c) => 1 + c.depth(),
        }
    }
}

fn push_unique(out: &mut Vec<ConceptExpr>, c: ConceptExpr) {
    if !out.contains(&c) {
        out.push(c);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    ConceptInclusion(ConceptExpr, ConceptExpr),
    ConceptEquivalence(ConceptExpr, ConceptExpr),
    ConceptAssertion(ConceptExpr, String),
    RoleAssertion(RoleExpr, String, String),
    NegatedRoleAssertion(RoleExpr, String, String),
    SameIndividual(String, String),
    DifferentIndividuals(String, String),
    RoleInclusion(RoleExpr, RoleExpr),
    RoleEquivalence(RoleExpr, RoleExpr),
    ComplexRoleInclusion(Vec<RoleExpr>, RoleExpr),
    TransitiveRole(RoleExpr),
    DisjointRoles(RoleExpr, RoleExpr),
    AsymmetricRole(RoleExpr),
    ReflexiveRole(RoleExpr),
    IrreflexiveRole(RoleExpr),
    Domain(RoleExpr, ConceptExpr),
    Range(RoleExpr, ConceptExpr),
}

/// Which box an axiom belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    TBox,
    ABox,
    RBox,
}

impl Axiom {
    /// Role assertion `r(subj, obj)`; an inverse role is stored as the named
    /// role with the arguments swapped.
    pub fn role_assertion(r: RoleExpr, subj: impl Into<String>, obj: impl Into<String>) -> Self {
        let (s, o) = (subj.into(), obj.into());
        match r {
            RoleExpr::Inverse(n) => Axiom::RoleAssertion(RoleExpr::Named(n), o, s),
            r => Axiom::RoleAssertion(r, s, o),
        }
    }

    pub fn negated_role_assertion(r: RoleExpr, subj: impl Into<String>, obj: impl Into<String>) -> Self {
        let (s, o) = (subj.into(), obj.into());
        match r {
            RoleExpr::Inverse(n) => Axiom::NegatedRoleAssertion(RoleExpr::Named(n), o, s),
            r => Axiom::NegatedRoleAssertion(r, s, o),
        }
    }

    /// `chain ⊑ sup`; a one-element chain becomes a plain role inclusion and
    /// `r ∘ r ⊑ r` becomes `TransitiveRole(r)`. Returns `None` for an empty chain.
    pub fn role_chain(mut chain: Vec<RoleExpr>, sup: RoleExpr) -> Option<Self> {
        match chain.len() {
            0 => None,
            1 => Some(Axiom::RoleInclusion(chain.pop().unwrap(), sup)),
            2 if chain[0] == sup && chain[1] == sup && !sup.is_universal() => {
                let named = if sup.is_inverse() { sup.inverse() } else { sup };
                Some(Axiom::TransitiveRole(named))
            }
            _ => Some(Axiom::ComplexRoleInclusion(chain, sup)),
        }
    }

    pub fn kind(&self) -> AxiomKind {
        use Axiom::*;
        match self {
            ConceptInclusion(..) | ConceptEquivalence(..) | Domain(..) | Range(..) => AxiomKind::TBox,
            ConceptAssertion(..)
            | RoleAssertion(..)
            | NegatedRoleAssertion(..)
            | SameIndividual(..)
            | DifferentIndividuals(..) => AxiomKind::ABox,
            _ => AxiomKind::RBox,
        }
    }

    /// Domain and range axioms rewritten as the inclusions they abbreviate.
    pub fn desugar(&self) -> Axiom {
        match self {
            Axiom::Domain(r, c) => Axiom::ConceptInclusion(ConceptExpr::exists(r.clone(), ConceptExpr::Top), c.clone()),
            Axiom::Range(r, c) => Axiom::ConceptInclusion(ConceptExpr::Top, ConceptExpr::for_all(r.clone(), c.clone())),
            other => other.clone(),
        }
    }

    /// Concept expressions occurring directly in the axiom.
    pub fn concepts(&self) -> Vec<&ConceptExpr> {
        match self {
            Axiom::ConceptInclusion(a, b) | Axiom::ConceptEquivalence(a, b) => vec![a, b],
            Axiom::ConceptAssertion(c, _) | Axiom::Domain(_, c) | Axiom::Range(_, c) => vec![c],
            _ => vec![],
        }
    }

    /// Role expressions occurring directly in the axiom (not inside concepts).
    pub fn direct_roles(&self) -> Vec<&RoleExpr> {
        use Axiom::*;
        match self {
            RoleAssertion(r, ..)
            | NegatedRoleAssertion(r, ..)
            | TransitiveRole(r)
            | AsymmetricRole(r)
            | ReflexiveRole(r)
            | IrreflexiveRole(r)
            | Domain(r, _)
            | Range(r, _) => vec![r],
            RoleInclusion(a, b) | RoleEquivalence(a, b) | DisjointRoles(a, b) => vec![a, b],
            ComplexRoleInclusion(chain, sup) => chain.iter().chain(std::iter::once(sup)).collect(),
            _ => vec![],
        }
    }

    /// Individual names occurring directly in the axiom (not inside nominals).
    pub fn individuals(&self) -> Vec<&str> {
        use Axiom::*;
        match self {
            ConceptAssertion(_, a) => vec![a],
            RoleAssertion(_, a, b)
            | NegatedRoleAssertion(_, a, b)
            | SameIndividual(a, b)
            | DifferentIndividuals(a, b) => vec![a, b],
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(String),
    Constant(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn as_variable(&self) -> Option<&str> {
        match self {
            Term::Variable(v) => Some(v),
            Term::Constant(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Variable(v) => write!(f, "?{v}"),
            Term::Constant(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Concept(String, Term),
    Role(String, Term, Term),
    NonDl(String, Vec<Term>),
}

impl Atom {
    pub fn predicate(&self) -> &str {
        match self {
            Atom::Concept(p, _) | Atom::Role(p, _, _) | Atom::NonDl(p, _) => p,
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Concept(_, t) => vec![t],
            Atom::Role(_, s, t) => vec![s, t],
            Atom::NonDl(_, ts) => ts.iter().collect(),
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms().into_iter().filter_map(Term::as_variable)
    }

    pub fn is_dl(&self) -> bool {
        !matches!(self, Atom::NonDl(..))
    }

    /// `O(?v)`.
    pub fn named_guard(var: &str) -> Self {
        Atom::NonDl(NAMED_INDIVIDUAL_PREDICATE.to_string(), vec![Term::var(var)])
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Concept(p, t) => write!(f, "{p}({t})"),
            Atom::Role(p, s, t) => write!(f, "{p}({s},{t})"),
            Atom::NonDl(p, ts) => {
                write!(f, "{p}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlSafeRule {
    pub head: Atom,
    pub body: Vec<Atom>,
}

impl DlSafeRule {
    /// Builds a rule, checking that the head is a DL atom and that every head
    /// variable occurs in the body.
    pub fn new(head: Atom, body: Vec<Atom>) -> Result<Self, ModelError> {
        if !head.is_dl() {
            return Err(ModelError::NonDlHead(head.to_string()));
        }
        let body_vars: BTreeSet<&str> = body.iter().flat_map(|a| a.variables()).collect();
        if let Some(v) = head.variables().find(|v| !body_vars.contains(v)) {
            return Err(ModelError::UnboundHeadVariable(v.to_string()));
        }
        Ok(DlSafeRule { head, body })
    }

    /// All variables in order of first occurrence (head first, then body).
    pub fn variables(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in self
            .head
            .variables()
            .chain(self.body.iter().flat_map(|a| a.variables()))
        {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Variables that occur in no non-DL body atom.
    pub fn unguarded_variables(&self) -> Vec<&str> {
        let guarded: BTreeSet<&str> = self
            .body
            .iter()
            .filter(|a| !a.is_dl())
            .flat_map(|a| a.variables())
            .collect();
        self.variables().into_iter().filter(|v| !guarded.contains(v)).collect()
    }

    pub fn is_dl_safe(&self) -> bool {
        self.unguarded_variables().is_empty()
    }
}

impl fmt::Display for DlSafeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <-", self.head)?;
        for (i, a) in self.body.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { " " } else { ", " })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
    pub predicates: BTreeSet<String>,
}

impl Signature {
    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty() && self.individuals.is_empty() && self.predicates.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NameKind {
    Concept,
    Role,
    Individual,
    Predicate,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Concept => "concept",
            NameKind::Role => "role",
            NameKind::Individual => "individual",
            NameKind::Predicate => "non-DL predicate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("name `{name}` is used both as a {first} and as a {second}")]
    NameCollision {
        name: String,
        first: NameKind,
        second: NameKind,
    },
    #[error("rule head must be a concept or role atom, found `{0}`")]
    NonDlHead(String),
    #[error("head variable ?{0} does not occur in the rule body")]
    UnboundHeadVariable(String),
}

/// Collects names by kind and reports the first name used in two roles.
#[derive(Default)]
struct SignatureBuilder {
    kinds: BTreeMap<String, NameKind>,
    sig: Signature,
}

impl SignatureBuilder {
    fn add(&mut self, name: &str, kind: NameKind) -> Result<(), ModelError> {
        let builtin_clash = name == NAMED_INDIVIDUAL_PREDICATE && kind != NameKind::Predicate;
        if builtin_clash {
            return Err(ModelError::NameCollision {
                name: name.to_string(),
                first: NameKind::Predicate,
                second: kind,
            });
        }
        match self.kinds.get(name) {
            Some(&k) if k != kind => {
                return Err(ModelError::NameCollision {
                    name: name.to_string(),
                    first: k,
                    second: kind,
                })
            }
            Some(_) => return Ok(()),
            None => {}
        }
        self.kinds.insert(name.to_string(), kind);
        let set = match kind {
            NameKind::Concept => &mut self.sig.concepts,
            NameKind::Role => &mut self.sig.roles,
            NameKind::Individual => &mut self.sig.individuals,
            NameKind::Predicate => &mut self.sig.predicates,
        };
        set.insert(name.to_string());
        Ok(())
    }

    fn add_role(&mut self, r: &RoleExpr) -> Result<(), ModelError> {
        match r.name() {
            Some(n) => self.add(n, NameKind::Role),
            None => Ok(()),
        }
    }

    fn add_concept(&mut self, c: &ConceptExpr) -> Result<(), ModelError> {
        let mut result = Ok(());
        c.walk(&mut |sub| {
            if result.is_err() {
                return;
            }
            result = match sub {
                ConceptExpr::Atomic(n) => self.add(n, NameKind::Concept),
                ConceptExpr::Nominal(ns) => ns.iter().try_for_each(|n| self.add(n, NameKind::Individual)),
                ConceptExpr::Exists(r, _)
                | ConceptExpr::ForAll(r, _)
                | ConceptExpr::AtLeast(_, r, _)
                | ConceptExpr::AtMost(_, r, _)
                | ConceptExpr::SelfRestriction(r) => self.add_role(r),
                _ => Ok(()),
            };
        });
        result
    }

    fn add_axiom(&mut self, ax: &Axiom) -> Result<(), ModelError> {
        for c in ax.concepts() {
            self.add_concept(c)?;
        }
        for r in ax.direct_roles() {
            self.add_role(r)?;
        }
        for i in ax.individuals() {
            self.add(i, NameKind::Individual)?;
        }
        Ok(())
    }

    fn add_atom(&mut self, atom: &Atom) -> Result<(), ModelError> {
        let kind = match atom {
            Atom::Concept(..) => NameKind::Concept,
            Atom::Role(..) => NameKind::Role,
            Atom::NonDl(..) => NameKind::Predicate,
        };
        self.add(atom.predicate(), kind)?;
        for t in atom.terms() {
            if let Term::Constant(c) = t {
                self.add(c, NameKind::Individual)?;
            }
        }
        Ok(())
    }
}

/// An immutable knowledge base: axioms in input order (deduplicated) plus a
/// rule set, with the signature computed once at construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KnowledgeBase {
    axioms: Vec<Axiom>,
    rules: Vec<DlSafeRule>,
    signature: Signature,
}

impl KnowledgeBase {
    pub fn new(axioms: Vec<Axiom>, rules: Vec<DlSafeRule>) -> Result<Self, ModelError> {
        let mut seen = BTreeSet::new();
        let axioms: Vec<Axiom> = axioms.into_iter().filter(|a| seen.insert(a.clone())).collect();
        let mut seen = BTreeSet::new();
        let rules: Vec<DlSafeRule> = rules.into_iter().filter(|r| seen.insert(r.clone())).collect();
        let signature = compute_signature(&axioms, &rules)?;
        Ok(KnowledgeBase {
            axioms,
            rules,
            signature,
        })
    }

    pub fn empty() -> Self {
        KnowledgeBase::default()
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn rules(&self) -> &[DlSafeRule] {
        &self.rules
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn tbox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| a.kind() == AxiomKind::TBox)
    }

    pub fn abox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| a.kind() == AxiomKind::ABox)
    }

    pub fn rbox(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter().filter(|a| a.kind() == AxiomKind::RBox)
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty() && self.rules.is_empty()
    }

    /// A new knowledge base with extra axioms appended.
    pub fn with_axioms(&self, extra: impl IntoIterator<Item = Axiom>) -> Result<Self, ModelError> {
        let mut axioms = self.axioms.clone();
        axioms.extend(extra);
        KnowledgeBase::new(axioms, self.rules.clone())
    }

    /// A new knowledge base with the same axioms and a different rule set.
    pub fn with_rules(&self, rules: Vec<DlSafeRule>) -> Result<Self, ModelError> {
        KnowledgeBase::new(self.axioms.clone(), rules)
    }

    /// Same axioms and rules with duplicates removed and order ignored.
    pub fn axiom_set(&self) -> BTreeSet<&Axiom> {
        self.axioms.iter().collect()
    }
}

fn compute_signature(axioms: &[Axiom], rules: &[DlSafeRule]) -> Result<Signature, ModelError> {
    let mut b = SignatureBuilder::default();
    for ax in axioms {
        b.add_axiom(ax)?;
    }
    for rule in rules {
        b.add_atom(&rule.head)?;
        for atom in &rule.body {
            b.add_atom(atom)?;
        }
    }
    Ok(b.sig)
}

/// Recomputes the signature of `kb` from its axioms and rules.
pub fn signature_of(kb: &KnowledgeBase) -> Signature {
    // construction already rejected collisions, so this cannot fail
    compute_signature(kb.axioms(), kb.rules()).expect("knowledge base signature is consistent")
}
