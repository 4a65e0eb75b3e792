//! Interned concepts and roles. Every concept a run can meet is closed under
//! subconcepts and negation up front, so rules work on small integer ids.

use std::collections::{BTreeMap, BTreeSet};

use crate::model::{ConceptExpr, RoleExpr};
use crate::normalize::{nnf, RoleClosure};

pub(crate) type Cid = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Role {
    pub name: u32,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Shape {
    Top,
    Bottom,
    Atomic,
    NotAtomic(Cid),
    Nominal(Vec<String>),
    NotNominal(Vec<String>),
    And(Vec<Cid>),
    Or(Vec<Cid>),
    Exists(Role, Cid),
    ForAll(Role, Cid),
    AtLeast(u32, Role, Cid),
    AtMost(u32, Role, Cid),
    SelfRestriction(Role),
    NotSelf(Role),
}

#[derive(Debug, Clone)]
pub(crate) struct Vocab {
    closure: RoleClosure,
    exprs: Vec<ConceptExpr>,
    shapes: Vec<Shape>,
    neg: Vec<Cid>,
    /// For `∀s.C`: every transitive `r ⊑* s` with the id of `∀r.C`.
    plus: Vec<Vec<(Role, Cid)>>,
    index: BTreeMap<ConceptExpr, Cid>,
    role_names: Vec<String>,
    role_index: BTreeMap<String, u32>,
    supers: Vec<[Vec<Role>; 2]>,
    transitive: Vec<Role>,
    top: Cid,
    bottom: Cid,
}

fn negate(c: &ConceptExpr) -> ConceptExpr {
    nnf(&ConceptExpr::not(c.clone()))
}

impl Vocab {
    /// Interns the closure of `concepts` (already in negation normal form)
    /// with ids in concept order.
    pub fn new<'a>(
        concepts: impl IntoIterator<Item = ConceptExpr>,
        roles: impl IntoIterator<Item = &'a String>,
        closure: &RoleClosure,
    ) -> Vocab {
        let mut v = Vocab {
            closure: closure.clone(),
            exprs: vec![],
            shapes: vec![],
            neg: vec![],
            plus: vec![],
            index: BTreeMap::new(),
            role_names: vec![],
            role_index: BTreeMap::new(),
            supers: vec![],
            transitive: vec![],
            top: 0,
            bottom: 0,
        };
        let mut names: BTreeSet<String> = roles.into_iter().cloned().collect();
        names.extend(closure.roles().filter_map(|r| r.name().map(str::to_string)));
        let mut all = BTreeSet::new();
        let mut todo: Vec<ConceptExpr> = concepts.into_iter().collect();
        todo.extend([ConceptExpr::Top, ConceptExpr::Bottom]);
        while let Some(c) = todo.pop() {
            if all.contains(&c) {
                continue;
            }
            for r in c.roles() {
                names.extend(r.name().map(str::to_string));
            }
            todo.extend(v.successors(&c));
            all.insert(c);
        }
        for n in names {
            v.role_id(&n);
        }
        v.transitive = closure.transitive_roles().iter().map(|r| v.role(r)).collect();
        for (i, c) in all.iter().enumerate() {
            v.index.insert(c.clone(), i as Cid);
        }
        v.exprs = all.into_iter().collect();
        for i in 0..v.exprs.len() {
            let c = v.exprs[i].clone();
            let shape = v.shape_of(&c);
            v.shapes.push(shape);
            v.neg.push(v.index[&negate(&c)]);
        }
        v.plus = (0..v.exprs.len()).map(|i| v.plus_of(i as Cid)).collect();
        v.top = v.index[&ConceptExpr::Top];
        v.bottom = v.index[&ConceptExpr::Bottom];
        v
    }

    /// Direct subconcepts, the negation, and the `∀r.C` needed by the
    /// transitivity rule.
    fn successors(&self, c: &ConceptExpr) -> Vec<ConceptExpr> {
        let mut out = vec![negate(c)];
        match c {
            ConceptExpr::Not(d) => out.push((**d).clone()),
            ConceptExpr::And(ds) | ConceptExpr::Or(ds) => out.extend(ds.iter().cloned()),
            ConceptExpr::Exists(_, d) | ConceptExpr::AtLeast(_, _, d) | ConceptExpr::AtMost(_, _, d) => {
                out.push((**d).clone())
            }
            ConceptExpr::ForAll(s, d) => {
                out.push((**d).clone());
                for r in self.closure.transitive_roles() {
                    if r != s && self.closure.subsumed(r, s) {
                        out.push(ConceptExpr::ForAll(r.clone(), d.clone()));
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Adds `c` and its closure after the existing ids.
    pub fn intern(&mut self, c: &ConceptExpr) -> Cid {
        if let Some(&id) = self.index.get(c) {
            return id;
        }
        for r in c.roles() {
            self.role(r);
        }
        let mut fresh = vec![];
        let mut todo = vec![c.clone()];
        while let Some(d) = todo.pop() {
            if self.index.contains_key(&d) {
                continue;
            }
            todo.extend(self.successors(&d));
            self.index.insert(d.clone(), self.exprs.len() as Cid);
            self.exprs.push(d.clone());
            fresh.push(d);
        }
        for d in &fresh {
            let shape = self.shape_of(d);
            self.shapes.push(shape);
            self.neg.push(self.index[&negate(d)]);
        }
        for i in self.plus.len()..self.exprs.len() {
            let p = self.plus_of(i as Cid);
            self.plus.push(p);
        }
        self.index[c]
    }

    fn role_id(&mut self, name: &str) -> u32 {
        if let Some(&id) = self.role_index.get(name) {
            return id;
        }
        let id = self.role_names.len() as u32;
        self.role_names.push(name.to_string());
        self.role_index.insert(name.to_string(), id);
        self.supers.push([vec![], vec![]]);
        for (k, r) in [RoleExpr::named(name), RoleExpr::inverse_of(name)]
            .into_iter()
            .enumerate()
        {
            let supers: Vec<RoleExpr> = self.closure.supers_of(&r).into_iter().collect();
            let mut ids: Vec<Role> = supers.iter().map(|s| self.role(s)).collect();
            ids.sort();
            self.supers[id as usize][k] = ids;
        }
        id
    }

    pub fn role(&mut self, r: &RoleExpr) -> Role {
        match r {
            RoleExpr::Named(n) => Role {
                name: self.role_id(n),
                inverse: false,
            },
            RoleExpr::Inverse(n) => Role {
                name: self.role_id(n),
                inverse: true,
            },
            RoleExpr::Universal => unreachable!("universal role rejected before expansion"),
        }
    }

    fn known_role(&self, r: &RoleExpr) -> Role {
        let name = self.role_index[r.name().expect("named role")];
        Role {
            name,
            inverse: r.is_inverse(),
        }
    }

    fn shape_of(&self, c: &ConceptExpr) -> Shape {
        let id = |d: &ConceptExpr| self.index[d];
        match c {
            ConceptExpr::Top => Shape::Top,
            ConceptExpr::Bottom => Shape::Bottom,
            ConceptExpr::Atomic(_) => Shape::Atomic,
            ConceptExpr::Not(d) => match &**d {
                ConceptExpr::Atomic(_) => Shape::NotAtomic(id(d)),
                ConceptExpr::Nominal(ns) => Shape::NotNominal(ns.iter().cloned().collect()),
                ConceptExpr::SelfRestriction(r) => Shape::NotSelf(self.known_role(r)),
                other => unreachable!("not in negation normal form: {other}"),
            },
            ConceptExpr::Nominal(ns) => Shape::Nominal(ns.iter().cloned().collect()),
            ConceptExpr::And(ds) => Shape::And(ds.iter().map(id).collect()),
            ConceptExpr::Or(ds) => Shape::Or(ds.iter().map(id).collect()),
            ConceptExpr::Exists(r, d) => Shape::Exists(self.known_role(r), id(d)),
            ConceptExpr::ForAll(r, d) => Shape::ForAll(self.known_role(r), id(d)),
            ConceptExpr::AtLeast(n, r, d) => Shape::AtLeast(*n, self.known_role(r), id(d)),
            ConceptExpr::AtMost(n, r, d) => Shape::AtMost(*n, self.known_role(r), id(d)),
            ConceptExpr::SelfRestriction(r) => Shape::SelfRestriction(self.known_role(r)),
        }
    }

    fn plus_of(&self, c: Cid) -> Vec<(Role, Cid)> {
        let ConceptExpr::ForAll(s, d) = &self.exprs[c as usize] else {
            return vec![];
        };
        self.closure
            .transitive_roles()
            .iter()
            .filter(|r| self.closure.subsumed(r, s))
            .map(|r| {
                (
                    self.known_role(r),
                    self.index[&ConceptExpr::ForAll(r.clone(), d.clone())],
                )
            })
            .collect()
    }

    pub fn id(&self, c: &ConceptExpr) -> Cid {
        self.index[c]
    }

    pub fn expr(&self, c: Cid) -> &ConceptExpr {
        &self.exprs[c as usize]
    }

    pub fn shape(&self, c: Cid) -> &Shape {
        &self.shapes[c as usize]
    }

    pub fn neg(&self, c: Cid) -> Cid {
        self.neg[c as usize]
    }

    pub fn plus(&self, c: Cid) -> &[(Role, Cid)] {
        &self.plus[c as usize]
    }

    pub fn top(&self) -> Cid {
        self.top
    }

    pub fn bottom(&self) -> Cid {
        self.bottom
    }

    /// Roles `s` with `r ⊑* s`, for an edge stored under `name`.
    pub fn supers(&self, name: u32, inverse: bool) -> &[Role] {
        &self.supers[name as usize][inverse as usize]
    }

    pub fn role_name(&self, name: u32) -> &str {
        &self.role_names[name as usize]
    }

    pub fn role_expr(&self, r: Role) -> RoleExpr {
        let n = self.role_name(r.name);
        if r.inverse {
            RoleExpr::inverse_of(n)
        } else {
            RoleExpr::named(n)
        }
    }
}
