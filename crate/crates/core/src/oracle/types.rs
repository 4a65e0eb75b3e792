//! Exact bounded model search for plain ALC through Hintikka types.
//!
//! A type fixes the truth of every concept name and every `∃r.C` / `∀r.C`
//! occurring in the knowledge base; the truth of compound concepts follows.
//! A model with at most `d` elements exists iff some set of at most `d`
//! types obeying the TBox is closed under witnesses and admits the ABox: the
//! types realized in any model form such a set, and such a set yields a
//! model with one element per type.

use std::collections::{BTreeSet, HashMap};

use super::{Interpretation, OracleError};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};

/// Largest number of type bits enumerated.
const MAX_BITS: usize = 22;

pub(super) fn is_plain_alc(kb: &KnowledgeBase) -> bool {
    fn concept_ok(c: &ConceptExpr) -> bool {
        let mut ok = true;
        c.walk(&mut |e| match e {
            ConceptExpr::Exists(r, _) | ConceptExpr::ForAll(r, _) => ok &= matches!(r, RoleExpr::Named(_)),
            ConceptExpr::Atomic(_)
            | ConceptExpr::Top
            | ConceptExpr::Bottom
            | ConceptExpr::Not(_)
            | ConceptExpr::And(_)
            | ConceptExpr::Or(_) => {}
            _ => ok = false,
        });
        ok
    }
    kb.rules().is_empty()
        && kb.axioms().iter().all(|ax| match ax {
            Axiom::ConceptInclusion(..) | Axiom::ConceptEquivalence(..) | Axiom::ConceptAssertion(..) => {
                ax.concepts().into_iter().all(concept_ok)
            }
            Axiom::Domain(r, c) | Axiom::Range(r, c) => matches!(r, RoleExpr::Named(_)) && concept_ok(c),
            Axiom::RoleAssertion(RoleExpr::Named(_), ..) => true,
            _ => false,
        })
}

type Type = u64;

struct Demand {
    /// The modal bit the demand comes from.
    bit: usize,
    role: String,
    filler: ConceptExpr,
    want: bool,
}

pub(super) struct Prepared {
    bits: Vec<ConceptExpr>,
    index: HashMap<ConceptExpr, usize>,
    names: Vec<String>,
    roles: Vec<String>,
    role_mask: HashMap<String, Type>,
    /// Types surviving elimination, in ascending order.
    good: Vec<Type>,
    individuals: Vec<String>,
    concept_assertions: Vec<Vec<ConceptExpr>>,
    role_assertions: Vec<(String, usize, usize)>,
}

impl Prepared {
    pub fn new(kb: &KnowledgeBase, budget: u64, spent: &mut u64) -> Result<Self, OracleError> {
        let sig = kb.signature();
        let names: Vec<String> = sig.concepts.iter().cloned().collect();
        let axioms: Vec<Axiom> = kb.axioms().iter().map(Axiom::desugar).collect();
        let mut modal = BTreeSet::new();
        for ax in &axioms {
            for c in ax.concepts() {
                c.walk(&mut |e| {
                    if matches!(e, ConceptExpr::Exists(..) | ConceptExpr::ForAll(..)) {
                        modal.insert(e.clone());
                    }
                });
            }
        }
        let bits: Vec<ConceptExpr> = names
            .iter()
            .map(|n| ConceptExpr::atomic(n.as_str()))
            .chain(modal)
            .collect();
        if bits.len() > MAX_BITS {
            return Err(OracleError::BudgetExceeded { size: 1 });
        }
        let index: HashMap<ConceptExpr, usize> = bits.iter().cloned().zip(0..).collect();
        let mut role_mask: HashMap<String, Type> = HashMap::new();
        for (i, b) in bits.iter().enumerate() {
            if let ConceptExpr::Exists(r, _) | ConceptExpr::ForAll(r, _) = b {
                *role_mask.entry(r.name().unwrap().to_string()).or_default() |= 1 << i;
            }
        }
        let individuals: Vec<String> = sig.individuals.iter().cloned().collect();
        let pos = |a: &str| individuals.iter().position(|x| x == a).unwrap();
        let mut concept_assertions = vec![Vec::new(); individuals.len()];
        let mut role_assertions = Vec::new();
        let mut tbox = Vec::new();
        for ax in axioms {
            match ax {
                Axiom::ConceptAssertion(c, a) => concept_assertions[pos(&a)].push(c),
                Axiom::RoleAssertion(r, a, b) => {
                    role_assertions.push((r.name().unwrap().to_string(), pos(&a), pos(&b)))
                }
                Axiom::ConceptInclusion(c, d) => tbox.push((c, d, false)),
                Axiom::ConceptEquivalence(c, d) => tbox.push((c, d, true)),
                _ => {}
            }
        }
        let mut p = Prepared {
            bits,
            index,
            names,
            roles: sig.roles.iter().cloned().collect(),
            role_mask,
            good: Vec::new(),
            individuals,
            concept_assertions,
            role_assertions,
        };
        let total: u64 = 1 << p.bits.len();
        *spent += total;
        if *spent > budget {
            return Err(OracleError::BudgetExceeded { size: 1 });
        }
        p.good = (0..total)
            .filter(|&t| {
                tbox.iter().all(|(c, d, both)| {
                    let (x, y) = (p.eval(c, t), p.eval(d, t));
                    (!x || y) && (!both || !y || x)
                })
            })
            .collect();
        p.eliminate();
        Ok(p)
    }

    fn eval(&self, c: &ConceptExpr, t: Type) -> bool {
        match c {
            ConceptExpr::Top => true,
            ConceptExpr::Bottom => false,
            ConceptExpr::Not(d) => !self.eval(d, t),
            ConceptExpr::And(cs) => cs.iter().all(|d| self.eval(d, t)),
            ConceptExpr::Or(cs) => cs.iter().any(|d| self.eval(d, t)),
            other => t & (1 << self.index[other]) != 0,
        }
    }

    fn demands(&self, t: Type) -> Vec<Demand> {
        let mut out = Vec::new();
        for (i, b) in self.bits.iter().enumerate() {
            let on = t & (1 << i) != 0;
            match b {
                ConceptExpr::Exists(r, c) if on => out.push(Demand {
                    bit: i,
                    role: r.name().unwrap().to_string(),
                    filler: (**c).clone(),
                    want: true,
                }),
                ConceptExpr::ForAll(r, c) if !on => out.push(Demand {
                    bit: i,
                    role: r.name().unwrap().to_string(),
                    filler: (**c).clone(),
                    want: false,
                }),
                _ => {}
            }
        }
        out
    }

    /// Whether an `r`-edge from a `t` element to a `u` element keeps `t`.
    fn compatible(&self, t: Type, r: &str, u: Type) -> bool {
        self.bits.iter().enumerate().all(|(i, b)| {
            let on = t & (1 << i) != 0;
            match b {
                ConceptExpr::ForAll(s, c) if on && s.name() == Some(r) => self.eval(c, u),
                ConceptExpr::Exists(s, c) if !on && s.name() == Some(r) => !self.eval(c, u),
                _ => true,
            }
        })
    }

    fn witnesses(&self, t: Type, dm: &Demand, u: Type) -> bool {
        self.eval(&dm.filler, u) == dm.want && self.compatible(t, &dm.role, u)
    }

    /// Drops types with a demand no remaining type can meet.
    fn eliminate(&mut self) {
        loop {
            // a demand's witnesses depend only on the type's bits for its role
            let mut cache: HashMap<(usize, Type), bool> = HashMap::new();
            let before = self.good.len();
            let good = std::mem::take(&mut self.good);
            let kept: Vec<Type> = good
                .iter()
                .copied()
                .filter(|&t| {
                    self.demands(t).iter().all(|dm| {
                        let key = (dm.bit, t & self.role_mask[&dm.role]);
                        *cache
                            .entry(key)
                            .or_insert_with(|| good.iter().any(|&u| self.witnesses(t, dm, u)))
                    })
                })
                .collect();
            self.good = kept;
            if self.good.len() == before {
                return;
            }
        }
    }

    fn admissible_for(&self, a: usize, t: Type) -> bool {
        self.concept_assertions[a].iter().all(|c| self.eval(c, t))
    }

    fn roles_ok(&self, tau: &[Type], a: usize, t: Type) -> bool {
        self.role_assertions.iter().all(|(r, x, y)| {
            let tx = if *x == a { Some(t) } else { tau.get(*x).copied() };
            let ty = if *y == a { Some(t) } else { tau.get(*y).copied() };
            match (tx, ty) {
                (Some(tx), Some(ty)) if *x <= a && *y <= a => self.compatible(tx, r, ty),
                _ => true,
            }
        })
    }

    fn first_open(&self, s: &[Type]) -> Option<(Type, Demand)> {
        for &t in s {
            for dm in self.demands(t) {
                if !s.iter().any(|&u| self.witnesses(t, &dm, u)) {
                    return Some((t, dm));
                }
            }
        }
        None
    }

    fn open_count(&self, s: &[Type]) -> usize {
        s.iter()
            .map(|&t| {
                self.demands(t)
                    .iter()
                    .filter(|dm| !s.iter().any(|&u| self.witnesses(t, dm, u)))
                    .count()
            })
            .sum()
    }

    /// Candidates ordered by how many demands they leave open.
    fn ranked(&self, s: &[Type], candidates: impl Iterator<Item = Type>) -> Vec<Type> {
        let mut v: Vec<(usize, Type)> = candidates
            .filter(|u| !s.contains(u))
            .map(|u| {
                let mut s2 = s.to_vec();
                s2.push(u);
                (self.open_count(&s2), u)
            })
            .collect();
        v.sort();
        v.into_iter().map(|(_, u)| u).collect()
    }

    fn solve(
        &self,
        s: &mut Vec<Type>,
        tau: &mut Vec<Type>,
        d: usize,
        budget: u64,
        spent: &mut u64,
    ) -> Result<bool, OracleError> {
        *spent += 1;
        if *spent > budget {
            return Err(OracleError::BudgetExceeded { size: d });
        }
        if tau.len() < self.individuals.len() {
            let a = tau.len();
            let fits = |t: Type| self.admissible_for(a, t) && self.roles_ok(tau, a, t);
            let mut options: Vec<Type> = s.iter().copied().filter(|&t| fits(t)).collect();
            if s.len() < d {
                options.extend(self.ranked(s, self.good.iter().copied().filter(|&t| fits(t))));
            }
            for t in options {
                let added = !s.contains(&t);
                if added {
                    s.push(t);
                }
                tau.push(t);
                if self.solve(s, tau, d, budget, spent)? {
                    return Ok(true);
                }
                tau.pop();
                if added {
                    s.pop();
                }
            }
            return Ok(false);
        }
        let options = if s.is_empty() {
            self.good.clone()
        } else {
            match self.first_open(s) {
                None => return Ok(true),
                Some(_) if s.len() >= d => return Ok(false),
                Some((t, dm)) => self.ranked(s, self.good.iter().copied().filter(|&u| self.witnesses(t, &dm, u))),
            }
        };
        if s.len() >= d {
            return Ok(false);
        }
        for u in options {
            s.push(u);
            if self.solve(s, tau, d, budget, spent)? {
                return Ok(true);
            }
            s.pop();
        }
        Ok(false)
    }

    pub fn model_of_size(&self, d: usize, budget: u64, spent: &mut u64) -> Result<Option<Interpretation>, OracleError> {
        if self.good.is_empty() {
            return Ok(None);
        }
        let (mut s, mut tau) = (Vec::new(), Vec::new());
        if !self.solve(&mut s, &mut tau, d, budget, spent)? {
            return Ok(None);
        }
        Ok(Some(self.build(&s, &tau)))
    }

    fn build(&self, s: &[Type], tau: &[Type]) -> Interpretation {
        let elem = |t: Type| s.iter().position(|&u| u == t).unwrap();
        let mut i = Interpretation {
            size: s.len(),
            ..Default::default()
        };
        for (k, n) in self.names.iter().enumerate() {
            i.concepts
                .insert(n.clone(), (0..s.len()).filter(|&x| s[x] & (1 << k) != 0).collect());
        }
        for r in &self.roles {
            i.roles.insert(r.clone(), BTreeSet::new());
        }
        for (x, &t) in s.iter().enumerate() {
            for dm in self.demands(t) {
                let y = s.iter().position(|&u| self.witnesses(t, &dm, u)).unwrap();
                i.roles.get_mut(&dm.role).unwrap().insert((x, y));
            }
        }
        for (r, a, b) in &self.role_assertions {
            i.roles.get_mut(r).unwrap().insert((elem(tau[*a]), elem(tau[*b])));
        }
        for (a, &t) in self.individuals.iter().zip(tau) {
            i.individuals.insert(a.clone(), elem(t));
        }
        i
    }
}
