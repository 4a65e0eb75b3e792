//! Finite-model search over the plain DL semantics.
//!
//! `find_model` tries domain sizes 1, 2, ... up to a bound. Knowledge bases
//! in plain ALC are decided per size through Hintikka types; everything else
//! goes through a backtracking enumeration of partial interpretations that
//! prunes on axioms already false under three-valued evaluation. Every model
//! returned is re-checked against all axioms and rules.

mod search;
mod types;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Atom, Axiom, ConceptExpr, DlSafeRule, KnowledgeBase, RoleExpr, Term, NAMED_INDIVIDUAL_PREDICATE};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Interpretation {
    pub size: usize,
    pub concepts: BTreeMap<String, BTreeSet<usize>>,
    pub roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("domain bound must be at least 1")]
    ZeroBound,
    #[error("search budget exhausted at domain size {size}")]
    BudgetExceeded { size: usize },
}

/// Kleene conjunction.
pub(crate) fn and3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

pub(crate) fn or3(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

pub(crate) fn not3(a: Option<bool>) -> Option<bool> {
    a.map(|v| !v)
}

fn all3(it: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut acc = Some(true);
    for v in it {
        acc = and3(acc, v);
        if acc == Some(false) {
            break;
        }
    }
    acc
}

fn any3(it: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut acc = Some(false);
    for v in it {
        acc = or3(acc, v);
        if acc == Some(true) {
            break;
        }
    }
    acc
}

/// A possibly partial interpretation over a fixed signature.
#[derive(Debug, Clone)]
pub(crate) struct Partial {
    pub d: usize,
    pub concept_index: BTreeMap<String, usize>,
    pub role_index: BTreeMap<String, usize>,
    /// `[concept * d + x]`
    pub conc: Vec<Option<bool>>,
    /// `[role * d * d + x * d + y]`
    pub role: Vec<Option<bool>>,
    pub ind: BTreeMap<String, usize>,
}

type Matrix = Vec<Option<bool>>;

impl Partial {
    pub fn new(d: usize, concepts: &BTreeSet<String>, roles: &BTreeSet<String>) -> Self {
        Partial {
            d,
            concept_index: concepts.iter().cloned().zip(0..).collect(),
            role_index: roles.iter().cloned().zip(0..).collect(),
            conc: vec![None; concepts.len() * d],
            role: vec![None; roles.len() * d * d],
            ind: BTreeMap::new(),
        }
    }

    fn from_interpretation(i: &Interpretation, kb_names: Option<(&BTreeSet<String>, &BTreeSet<String>)>) -> Self {
        let mut concepts: BTreeSet<String> = i.concepts.keys().cloned().collect();
        let mut roles: BTreeSet<String> = i.roles.keys().cloned().collect();
        if let Some((c, r)) = kb_names {
            concepts.extend(c.iter().cloned());
            roles.extend(r.iter().cloned());
        }
        let mut p = Partial::new(i.size, &concepts, &roles);
        p.conc.iter_mut().for_each(|v| *v = Some(false));
        p.role.iter_mut().for_each(|v| *v = Some(false));
        for (c, ext) in &i.concepts {
            let k = p.concept_index[c];
            for &x in ext {
                p.conc[k * i.size + x] = Some(true);
            }
        }
        for (r, ext) in &i.roles {
            let k = p.role_index[r];
            for &(x, y) in ext {
                p.role[k * i.size * i.size + x * i.size + y] = Some(true);
            }
        }
        p.ind = i.individuals.clone();
        p
    }

    pub fn to_interpretation(&self) -> Interpretation {
        let d = self.d;
        let concepts = self
            .concept_index
            .iter()
            .map(|(c, &k)| {
                (
                    c.clone(),
                    (0..d).filter(|&x| self.conc[k * d + x] == Some(true)).collect(),
                )
            })
            .collect();
        let roles = self
            .role_index
            .iter()
            .map(|(r, &k)| {
                let pairs = (0..d)
                    .flat_map(|x| (0..d).map(move |y| (x, y)))
                    .filter(|&(x, y)| self.role[k * d * d + x * d + y] == Some(true))
                    .collect();
                (r.clone(), pairs)
            })
            .collect();
        Interpretation {
            size: d,
            concepts,
            roles,
            individuals: self.ind.clone(),
        }
    }

    fn atomic(&self, name: &str, x: usize) -> Option<bool> {
        match self.concept_index.get(name) {
            Some(&k) => self.conc[k * self.d + x],
            None => Some(false),
        }
    }

    pub fn edge(&self, r: &RoleExpr, x: usize, y: usize) -> Option<bool> {
        let named = |n: &str, x: usize, y: usize| match self.role_index.get(n) {
            Some(&k) => self.role[k * self.d * self.d + x * self.d + y],
            None => Some(false),
        };
        match r {
            RoleExpr::Named(n) => named(n, x, y),
            RoleExpr::Inverse(n) => named(n, y, x),
            RoleExpr::Universal => Some(true),
        }
    }

    fn individual(&self, a: &str) -> Option<usize> {
        self.ind.get(a).copied()
    }

    pub fn concept(&self, c: &ConceptExpr, x: usize) -> Option<bool> {
        use ConceptExpr::*;
        let d = self.d;
        match c {
            Atomic(n) => self.atomic(n, x),
            Top => Some(true),
            Bottom => Some(false),
            Not(c) => not3(self.concept(c, x)),
            And(cs) => all3(cs.iter().map(|c| self.concept(c, x))),
            Or(cs) => any3(cs.iter().map(|c| self.concept(c, x))),
            Nominal(names) => {
                let mut out = Some(false);
                for a in names {
                    out = or3(out, self.individual(a).map(|e| e == x));
                }
                out
            }
            Exists(r, c) => any3((0..d).map(|y| self.successor(r, c, x, y))),
            ForAll(r, c) => all3((0..d).map(|y| match self.edge(r, x, y) {
                Some(false) => Some(true),
                e => or3(not3(e), self.concept(c, y)),
            })),
            AtLeast(n, r, c) => {
                let (sure, possible) = self.count(r, c, x);
                if sure >= *n {
                    Some(true)
                } else if possible < *n {
                    Some(false)
                } else {
                    None
                }
            }
            AtMost(n, r, c) => {
                let (sure, possible) = self.count(r, c, x);
                if possible <= *n {
                    Some(true)
                } else if sure > *n {
                    Some(false)
                } else {
                    None
                }
            }
            SelfRestriction(r) => self.edge(r, x, x),
        }
    }

    /// Whether `y` is an `r`-successor of `x` in `c`.
    fn successor(&self, r: &RoleExpr, c: &ConceptExpr, x: usize, y: usize) -> Option<bool> {
        match self.edge(r, x, y) {
            Some(false) => Some(false),
            e => and3(e, self.concept(c, y)),
        }
    }

    /// Successors of `x` surely and possibly in `c`.
    fn count(&self, r: &RoleExpr, c: &ConceptExpr, x: usize) -> (u32, u32) {
        let (mut sure, mut possible) = (0, 0);
        for y in 0..self.d {
            match self.successor(r, c, x, y) {
                Some(true) => {
                    sure += 1;
                    possible += 1;
                }
                None => possible += 1,
                Some(false) => {}
            }
        }
        (sure, possible)
    }

    fn matrix(&self, r: &RoleExpr) -> Matrix {
        let d = self.d;
        (0..d * d).map(|i| self.edge(r, i / d, i % d)).collect()
    }

    fn compose(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let d = self.d;
        (0..d * d)
            .map(|i| {
                let (x, z) = (i / d, i % d);
                any3((0..d).map(|y| and3(a[x * d + y], b[y * d + z])))
            })
            .collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let d = self.d;
        (0..d).flat_map(move |x| (0..d).map(move |y| (x, y)))
    }

    pub fn axiom(&self, ax: &Axiom) -> Option<bool> {
        use Axiom::*;
        let d = self.d;
        let ind = |a: &str| self.individual(a);
        match ax {
            ConceptInclusion(c, e) => all3((0..d).map(|x| or3(not3(self.concept(c, x)), self.concept(e, x)))),
            ConceptEquivalence(c, e) => all3((0..d).map(|x| {
                let (a, b) = (self.concept(c, x), self.concept(e, x));
                and3(or3(not3(a), b), or3(a, not3(b)))
            })),
            ConceptAssertion(c, a) => ind(a).and_then(|x| self.concept(c, x)),
            RoleAssertion(r, a, b) => match (ind(a), ind(b)) {
                (Some(x), Some(y)) => self.edge(r, x, y),
                _ => None,
            },
            NegatedRoleAssertion(r, a, b) => match (ind(a), ind(b)) {
                (Some(x), Some(y)) => not3(self.edge(r, x, y)),
                _ => None,
            },
            SameIndividual(a, b) => match (ind(a), ind(b)) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
            DifferentIndividuals(a, b) => match (ind(a), ind(b)) {
                (Some(x), Some(y)) => Some(x != y),
                _ => None,
            },
            RoleInclusion(r, s) => all3(
                self.pairs()
                    .map(|(x, y)| or3(not3(self.edge(r, x, y)), self.edge(s, x, y))),
            ),
            RoleEquivalence(r, s) => and3(
                self.axiom(&RoleInclusion(r.clone(), s.clone())),
                self.axiom(&RoleInclusion(s.clone(), r.clone())),
            ),
            ComplexRoleInclusion(chain, s) => {
                let mut m = self.matrix(&chain[0]);
                for r in &chain[1..] {
                    m = self.compose(&m, &self.matrix(r));
                }
                all3(self.pairs().map(|(x, y)| or3(not3(m[x * d + y]), self.edge(s, x, y))))
            }
            TransitiveRole(r) => self.axiom(&ComplexRoleInclusion(vec![r.clone(), r.clone()], r.clone())),
            DisjointRoles(r, s) => all3(
                self.pairs()
                    .map(|(x, y)| not3(and3(self.edge(r, x, y), self.edge(s, x, y)))),
            ),
            AsymmetricRole(r) => all3(
                self.pairs()
                    .map(|(x, y)| not3(and3(self.edge(r, x, y), self.edge(r, y, x)))),
            ),
            ReflexiveRole(r) => all3((0..d).map(|x| self.edge(r, x, x))),
            IrreflexiveRole(r) => all3((0..d).map(|x| not3(self.edge(r, x, x)))),
            Domain(r, c) => all3(
                self.pairs()
                    .map(|(x, y)| or3(not3(self.edge(r, x, y)), self.concept(c, x))),
            ),
            Range(r, c) => all3(
                self.pairs()
                    .map(|(x, y)| or3(not3(self.edge(r, x, y)), self.concept(c, y))),
            ),
        }
    }

    /// A rule holds when every binding of its variables to named individuals
    /// that satisfies the body also satisfies the head.
    pub fn rule(&self, rule: &DlSafeRule) -> Option<bool> {
        let vars = rule.variables();
        let names: Vec<&String> = self.ind.keys().collect();
        let mut result = Some(true);
        let mut choice = vec![0usize; vars.len()];
        if !vars.is_empty() && names.is_empty() {
            return Some(true);
        }
        loop {
            let binding: BTreeMap<&str, &str> = vars
                .iter()
                .zip(&choice)
                .map(|(v, &i)| (*v, names[i].as_str()))
                .collect();
            let body = all3(rule.body.iter().map(|a| self.ground_atom(a, &binding)));
            result = and3(result, or3(not3(body), self.ground_atom(&rule.head, &binding)));
            if result == Some(false) {
                return result;
            }
            // next binding
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return result;
                }
                choice[k] += 1;
                if choice[k] < names.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    fn ground_atom(&self, atom: &Atom, binding: &BTreeMap<&str, &str>) -> Option<bool> {
        let name = |t: &Term| -> Option<usize> {
            match t {
                Term::Variable(v) => self.individual(binding[v.as_str()]),
                Term::Constant(c) => self.individual(c),
            }
        };
        match atom {
            Atom::Concept(p, t) => name(t).and_then(|x| self.atomic(p, x)),
            Atom::Role(p, s, t) => match (name(s), name(t)) {
                (Some(x), Some(y)) => self.edge(&RoleExpr::named(p.as_str()), x, y),
                _ => None,
            },
            Atom::NonDl(p, ts) => Some(p == NAMED_INDIVIDUAL_PREDICATE && ts.iter().all(|t| name(t).is_some())),
        }
    }

    pub fn kb(&self, kb: &KnowledgeBase) -> Option<bool> {
        and3(
            all3(kb.axioms().iter().map(|a| self.axiom(a))),
            all3(kb.rules().iter().map(|r| self.rule(r))),
        )
    }
}

/// Truth of `ax` in `i` under the standard semantics. Names `i` does not
/// mention have empty extensions.
pub fn satisfies(i: &Interpretation, ax: &Axiom) -> bool {
    Partial::from_interpretation(i, None).axiom(ax) == Some(true)
}

/// Whether `i` is a model of every axiom and rule of `kb`.
pub fn satisfies_kb(i: &Interpretation, kb: &KnowledgeBase) -> bool {
    let sig = kb.signature();
    if sig.individuals.iter().any(|a| !i.individuals.contains_key(a)) {
        return false;
    }
    Partial::from_interpretation(i, Some((&sig.concepts, &sig.roles))).kb(kb) == Some(true)
}

/// Whether `c` holds at element `x` of `i`.
pub fn holds_at(i: &Interpretation, c: &ConceptExpr, x: usize) -> bool {
    Partial::from_interpretation(i, None).concept(c, x) == Some(true)
}

/// The first model with at most `max_domain` elements, smallest domains
/// first.
pub fn find_model(kb: &KnowledgeBase, max_domain: usize) -> Result<Option<Interpretation>, OracleError> {
    find_model_with_budget(kb, max_domain, DEFAULT_BUDGET)
}

pub fn find_model_with_budget(
    kb: &KnowledgeBase,
    max_domain: usize,
    budget: u64,
) -> Result<Option<Interpretation>, OracleError> {
    if max_domain == 0 {
        return Err(OracleError::ZeroBound);
    }
    let mut spent = 0u64;
    let alc = if types::is_plain_alc(kb) {
        Some(types::Prepared::new(kb, budget, &mut spent)?)
    } else {
        None
    };
    for d in 1..=max_domain {
        let found = if let Some(p) = &alc {
            p.model_of_size(d, budget, &mut spent)?
        } else {
            search::model_of_size(kb, d, budget, &mut spent)?
        };
        if let Some(i) = found {
            assert!(satisfies_kb(&i, kb), "oracle produced a non-model:\n{}", i.to_table());
            return Ok(Some(i));
        }
    }
    Ok(None)
}

impl Interpretation {
    /// Element rows against concept columns, then one line per role.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "domain size {}", self.size).unwrap();
        if !self.individuals.is_empty() {
            let parts: Vec<String> = self.individuals.iter().map(|(a, x)| format!("{a}={x}")).collect();
            writeln!(out, "individuals {}", parts.join(" ")).unwrap();
        }
        let names: Vec<&String> = self.concepts.keys().collect();
        let widths: Vec<usize> = names.iter().map(|n| n.chars().count()).collect();
        let head: Vec<String> = names.iter().map(|n| n.to_string()).collect();
        writeln!(out, "element | {}", head.join(" | ")).unwrap();
        for x in 0..self.size {
            let cells: Vec<String> = names
                .iter()
                .zip(&widths)
                .map(|(n, &w)| {
                    let mark = if self.concepts[*n].contains(&x) { "x" } else { "." };
                    format!("{mark:<w$}")
                })
                .collect();
            let row = format!("{:<7} | {}", x, cells.join(" | "));
            writeln!(out, "{}", row.trim_end()).unwrap();
        }
        for (r, pairs) in &self.roles {
            let ps: Vec<String> = pairs.iter().map(|(x, y)| format!("({x},{y})")).collect();
            writeln!(out, "{}", format!("{r}: {}", ps.join(" ")).trim_end()).unwrap();
        }
        out
    }
}
