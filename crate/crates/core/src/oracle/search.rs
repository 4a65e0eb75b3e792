//! Backtracking enumeration of interpretations of one domain size.

use std::collections::BTreeSet;

use super::{Interpretation, OracleError, Partial};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};

#[derive(Default)]
struct Mentions {
    concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    everything: bool,
}

fn note_role(m: &mut Mentions, r: &RoleExpr) {
    match r.name() {
        Some(n) => {
            m.roles.insert(n.to_string());
        }
        None => m.everything = true,
    }
}

fn mentions(ax: &Axiom) -> Mentions {
    let mut m = Mentions::default();
    for c in ax.concepts() {
        c.walk(&mut |e| {
            if let ConceptExpr::Atomic(n) = e {
                m.concepts.insert(n.clone());
            }
        });
        for r in c.roles() {
            note_role(&mut m, r);
        }
    }
    for r in ax.direct_roles() {
        note_role(&mut m, r);
    }
    m
}

/// Restricted growth strings: individual `i` maps to an element at most one
/// above the largest used so far, so element permutations are skipped.
fn individual_maps(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for e in 0..=next.min(d - 1) {
            cur.push(e);
            go(n, d, cur, out);
            cur.pop();
        }
    }
    go(n, d, &mut cur, &mut out);
    out
}

enum Var {
    Concept(usize),
    Role(usize),
}

struct Search<'a> {
    kb: &'a KnowledgeBase,
    p: Partial,
    vars: Vec<(Var, String)>,
    by_concept: Vec<Vec<usize>>,
    by_role: Vec<Vec<usize>>,
    budget: u64,
    spent: &'a mut u64,
    size: usize,
    /// Elements from here on are not named by any individual.
    first_anonymous: usize,
}

impl Search<'_> {
    fn violated(&self, axioms: &[usize]) -> bool {
        axioms
            .iter()
            .any(|&i| self.p.axiom(&self.kb.axioms()[i]) == Some(false))
    }

    /// Anonymous elements are interchangeable, so their concept vectors can
    /// be required to be non-decreasing. Checks the prefix up to concept `k`
    /// of element `x`.
    fn ordered(&self, slot: usize) -> bool {
        let d = self.size;
        let (k, x) = (slot / d, slot % d);
        if x == 0 || x - 1 < self.first_anonymous {
            return true;
        }
        for j in 0..=k {
            match (self.p.conc[j * d + x - 1], self.p.conc[j * d + x]) {
                (Some(false), Some(true)) => return true,
                (Some(true), Some(false)) => return false,
                _ => {}
            }
        }
        true
    }

    fn run(&mut self, i: usize) -> Result<bool, OracleError> {
        if i == self.vars.len() {
            return Ok(self.p.kb(self.kb) == Some(true));
        }
        for value in [false, true] {
            *self.spent += 1;
            if *self.spent > self.budget {
                return Err(OracleError::BudgetExceeded { size: self.size });
            }
            let (var, name) = &self.vars[i];
            let relevant = match var {
                Var::Concept(slot) => {
                    self.p.conc[*slot] = Some(value);
                    if !self.ordered(*slot) {
                        continue;
                    }
                    &self.by_concept[self.p.concept_index[name]]
                }
                Var::Role(slot) => {
                    self.p.role[*slot] = Some(value);
                    &self.by_role[self.p.role_index[name]]
                }
            };
            if !self.violated(relevant) && self.run(i + 1)? {
                return Ok(true);
            }
        }
        match self.vars[i].0 {
            Var::Concept(slot) => self.p.conc[slot] = None,
            Var::Role(slot) => self.p.role[slot] = None,
        }
        Ok(false)
    }
}

pub(super) fn model_of_size(
    kb: &KnowledgeBase,
    d: usize,
    budget: u64,
    spent: &mut u64,
) -> Result<Option<Interpretation>, OracleError> {
    let sig = kb.signature();
    let base = Partial::new(d, &sig.concepts, &sig.roles);
    // Element by element: once `x` is done, everything among `0..=x` is fixed.
    let mut vars = Vec::new();
    for x in 0..d {
        for (c, &k) in &base.concept_index {
            vars.push((Var::Concept(k * d + x), c.clone()));
        }
        for (r, &k) in &base.role_index {
            for y in 0..=x {
                vars.push((Var::Role(k * d * d + x * d + y), r.clone()));
                if y != x {
                    vars.push((Var::Role(k * d * d + y * d + x), r.clone()));
                }
            }
        }
    }
    let mut by_concept = vec![Vec::new(); base.concept_index.len()];
    let mut by_role = vec![Vec::new(); base.role_index.len()];
    for (i, ax) in kb.axioms().iter().enumerate() {
        let m = mentions(ax);
        for (c, &k) in &base.concept_index {
            if m.everything || m.concepts.contains(c) {
                by_concept[k].push(i);
            }
        }
        for (r, &k) in &base.role_index {
            if m.everything || m.roles.contains(r) {
                by_role[k].push(i);
            }
        }
    }
    let names: Vec<&String> = sig.individuals.iter().collect();
    for map in individual_maps(names.len(), d) {
        let mut p = base.clone();
        let first_anonymous = map.iter().max().map_or(0, |m| m + 1);
        p.ind = names.iter().map(|a| a.to_string()).zip(map).collect();
        let mut s = Search {
            kb,
            p,
            vars: std::mem::take(&mut vars),
            by_concept: std::mem::take(&mut by_concept),
            by_role: std::mem::take(&mut by_role),
            budget,
            spent: &mut *spent,
            size: d,
            first_anonymous,
        };
        let all: Vec<usize> = (0..kb.axioms().len()).collect();
        let found = !s.violated(&all) && s.run(0)?;
        if found {
            return Ok(Some(s.p.to_interpretation()));
        }
        vars = s.vars;
        by_concept = s.by_concept;
        by_role = s.by_role;
    }
    Ok(None)
}
