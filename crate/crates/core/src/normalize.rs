//! Preprocessing shared by the reasoners: negation normal form, the role
//! hierarchy closure, regularity of role inclusions, and the compilation of
//! role-box axioms into rules over named individuals.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Atom, Axiom, ConceptExpr, DlSafeRule, KnowledgeBase, RoleExpr, Term};

/// Negation normal form. Negation ends up only in front of atomic concepts,
/// nominals and self restrictions. Trivial `⊤`/`⊥` subterms are folded.
pub fn nnf(c: &ConceptExpr) -> ConceptExpr {
    use ConceptExpr::*;
    match c {
        Atomic(_) | Top | Bottom | SelfRestriction(_) | Nominal(_) => c.clone(),
        Not(inner) => negated_nnf(inner),
        And(cs) => fold_and(cs.iter().map(nnf)),
        Or(cs) => fold_or(cs.iter().map(nnf)),
        Exists(r, c) => match nnf(c) {
            Bottom => Bottom,
            c => ConceptExpr::exists(r.clone(), c),
        },
        ForAll(r, c) => match nnf(c) {
            Top => Top,
            c => ConceptExpr::for_all(r.clone(), c),
        },
        AtLeast(0, _, _) => Top,
        AtLeast(n, r, c) => match nnf(c) {
            Bottom => Bottom,
            c => ConceptExpr::at_least(*n, r.clone(), c),
        },
        AtMost(n, r, c) => match nnf(c) {
            Bottom => Top,
            c => ConceptExpr::at_most(*n, r.clone(), c),
        },
    }
}

/// `nnf(¬c)` without building the negation first.
fn negated_nnf(c: &ConceptExpr) -> ConceptExpr {
    use ConceptExpr::*;
    match c {
        Top => Bottom,
        Bottom => Top,
        Atomic(_) | SelfRestriction(_) | Nominal(_) => ConceptExpr::not(c.clone()),
        Not(inner) => nnf(inner),
        And(cs) => fold_or(cs.iter().map(negated_nnf)),
        Or(cs) => fold_and(cs.iter().map(negated_nnf)),
        Exists(r, c) => nnf(&ConceptExpr::for_all(r.clone(), ConceptExpr::not((**c).clone()))),
        ForAll(r, c) => nnf(&ConceptExpr::exists(r.clone(), ConceptExpr::not((**c).clone()))),
        AtLeast(0, _, _) => Bottom,
        AtLeast(n, r, c) => nnf(&ConceptExpr::at_most(n - 1, r.clone(), (**c).clone())),
        AtMost(n, r, c) => nnf(&ConceptExpr::at_least(n + 1, r.clone(), (**c).clone())),
    }
}

fn fold_and(parts: impl Iterator<Item = ConceptExpr>) -> ConceptExpr {
    let mut kept = Vec::new();
    for p in parts {
        match p {
            ConceptExpr::Bottom => return ConceptExpr::Bottom,
            ConceptExpr::Top => {}
            p => kept.push(p),
        }
    }
    ConceptExpr::and(kept)
}

fn fold_or(parts: impl Iterator<Item = ConceptExpr>) -> ConceptExpr {
    let mut kept = Vec::new();
    for p in parts {
        match p {
            ConceptExpr::Top => return ConceptExpr::Top,
            ConceptExpr::Bottom => {}
            p => kept.push(p),
        }
    }
    ConceptExpr::or(kept)
}

/// Concepts every element must satisfy: `nnf(¬C ⊔ D)` for each inclusion,
/// both directions for equivalences, domain and range axioms desugared.
pub fn gci_disjunctions<'a>(tbox: impl IntoIterator<Item = &'a Axiom>) -> Vec<ConceptExpr> {
    let mut out = Vec::new();
    let mut push = |sub: &ConceptExpr, sup: &ConceptExpr| {
        out.push(nnf(&ConceptExpr::or([ConceptExpr::not(sub.clone()), sup.clone()])));
    };
    for ax in tbox {
        match ax.desugar() {
            Axiom::ConceptInclusion(c, d) => push(&c, &d),
            Axiom::ConceptEquivalence(c, d) => {
                push(&c, &d);
                push(&d, &c);
            }
            _ => {}
        }
    }
    out
}

/// The reflexive-transitive role hierarchy, closed under inversion, together
/// with the transitive and non-simple roles it induces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoleClosure {
    supers: BTreeMap<RoleExpr, BTreeSet<RoleExpr>>,
    transitive: BTreeSet<RoleExpr>,
    non_simple: BTreeSet<RoleExpr>,
}

impl RoleClosure {
    /// `r ⊑* s`. Roles outside the signature are only related to themselves.
    pub fn subsumed(&self, r: &RoleExpr, s: &RoleExpr) -> bool {
        r == s || self.supers.get(r).is_some_and(|set| set.contains(s))
    }

    /// All `s` with `r ⊑* s`, including `r`.
    pub fn supers_of(&self, r: &RoleExpr) -> BTreeSet<RoleExpr> {
        self.supers
            .get(r)
            .cloned()
            .unwrap_or_else(|| BTreeSet::from([r.clone()]))
    }

    pub fn pairs(&self) -> BTreeSet<(RoleExpr, RoleExpr)> {
        self.supers
            .iter()
            .flat_map(|(r, ss)| ss.iter().map(move |s| (r.clone(), s.clone())))
            .collect()
    }

    pub fn roles(&self) -> impl Iterator<Item = &RoleExpr> {
        self.supers.keys()
    }

    pub fn is_transitive(&self, r: &RoleExpr) -> bool {
        self.transitive.contains(r)
    }

    pub fn transitive_roles(&self) -> &BTreeSet<RoleExpr> {
        &self.transitive
    }

    pub fn is_simple(&self, r: &RoleExpr) -> bool {
        !self.non_simple.contains(r)
    }

    pub fn non_simple_roles(&self) -> &BTreeSet<RoleExpr> {
        &self.non_simple
    }
}

pub fn role_closure(kb: &KnowledgeBase) -> RoleClosure {
    let mut direct: BTreeMap<RoleExpr, BTreeSet<RoleExpr>> = BTreeMap::new();
    for name in &kb.signature().roles {
        for r in [RoleExpr::named(name.as_str()), RoleExpr::inverse_of(name.as_str())] {
            direct.entry(r.clone()).or_default().insert(r);
        }
    }
    let mut add = |r: &RoleExpr, s: &RoleExpr| {
        if r.is_universal() || s.is_universal() {
            return;
        }
        direct.entry(r.clone()).or_default().insert(s.clone());
        direct.entry(r.inverse()).or_default().insert(s.inverse());
    };
    for ax in kb.rbox() {
        match ax {
            Axiom::RoleInclusion(r, s) => add(r, s),
            Axiom::RoleEquivalence(r, s) => {
                add(r, s);
                add(s, r);
            }
            _ => {}
        }
    }

    let mut supers = BTreeMap::new();
    for start in direct.keys() {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut stack = vec![start.clone()];
        while let Some(r) = stack.pop() {
            for s in direct.get(&r).into_iter().flatten() {
                if seen.insert(s.clone()) {
                    stack.push(s.clone());
                }
            }
        }
        supers.insert(start.clone(), seen);
    }

    let mut closure = RoleClosure {
        supers,
        ..Default::default()
    };

    let mut transitive_base = BTreeSet::new();
    let mut chain_heads = BTreeSet::new();
    for ax in kb.rbox() {
        match ax {
            Axiom::TransitiveRole(r) if !r.is_universal() => {
                transitive_base.insert(r.clone());
            }
            Axiom::ComplexRoleInclusion(chain, s) if !s.is_universal() => {
                if chain.len() == 2 && chain[0] == *s && chain[1] == *s {
                    transitive_base.insert(s.clone());
                }
                chain_heads.insert(s.clone());
            }
            _ => {}
        }
    }
    // a role equivalent to a transitive role is transitive, as is its inverse
    let mut transitive = BTreeSet::new();
    for t in &transitive_base {
        for r in closure.roles() {
            if closure.subsumed(r, t) && closure.subsumed(t, r) {
                transitive.insert(r.clone());
                transitive.insert(r.inverse());
            }
        }
        transitive.insert(t.clone());
        transitive.insert(t.inverse());
    }
    let base: BTreeSet<RoleExpr> = transitive
        .iter()
        .cloned()
        .chain(chain_heads.iter().flat_map(|h| [h.clone(), h.inverse()]))
        .collect();
    let mut non_simple = BTreeSet::new();
    for b in &base {
        for s in closure.supers_of(b) {
            non_simple.insert(s.inverse());
            non_simple.insert(s);
        }
    }
    closure.transitive = transitive;
    closure.non_simple = non_simple;
    closure
}

/// A witnessing strict order on role names: `(a, b)` means `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegularOrder {
    pub less_than: BTreeSet<(String, String)>,
}

impl RegularOrder {
    pub fn lt(&self, a: &str, b: &str) -> bool {
        self.less_than.contains(&(a.to_string(), b.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("role inclusions are not regular: {}", display_axioms(.cycle))]
    Cycle { cycle: Vec<Axiom> },
    #[error("role inclusion `{0}` matches none of the regular forms")]
    Malformed(Axiom),
    #[error("the universal role cannot occur in a role chain: `{0}`")]
    Universal(Axiom),
}

fn display_axioms(axioms: &[Axiom]) -> String {
    axioms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("; ")
}

/// Rewrites `w ⊑ INV(s)` as `inv(w) ⊑ s` so the head is always a named role.
fn orient_chain(chain: &[RoleExpr], sup: &RoleExpr) -> (Vec<RoleExpr>, String) {
    match sup {
        RoleExpr::Inverse(n) => (chain.iter().rev().map(RoleExpr::inverse).collect(), n.clone()),
        _ => (chain.to_vec(), sup.name().unwrap_or_default().to_string()),
    }
}

/// Checks that the complex role inclusions admit a regular order.
///
/// Each chain `R1 ∘ … ∘ Rn ⊑ S` must have one of the shapes `S∘S`, `S∘w`,
/// `w∘S` or `w` where every role in `w` is strictly below `S`. The shapes fix
/// the required `<` constraints, so the check reduces to finding a cycle in
/// the constraint graph. On success the transitive closure of the
/// constraints is returned.
pub fn check_regularity<'a>(rbox: impl IntoIterator<Item = &'a Axiom>) -> Result<RegularOrder, RegularityError> {
    // edges below -> above, tagged with the axiom that demands them
    let mut edges: BTreeMap<String, Vec<(String, usize)>> = BTreeMap::new();
    let mut axioms = Vec::new();
    for ax in rbox {
        let Axiom::ComplexRoleInclusion(chain, sup) = ax else {
            continue;
        };
        if sup.is_universal() || chain.iter().any(RoleExpr::is_universal) {
            return Err(RegularityError::Universal(ax.clone()));
        }
        let idx = axioms.len();
        axioms.push(ax.clone());
        let (chain, head) = orient_chain(chain, sup);
        let head_role = RoleExpr::named(head.as_str());
        let n = chain.len();
        let starts = chain[0] == head_role;
        let ends = chain[n - 1] == head_role;
        let inner: &[RoleExpr] = match (starts, ends) {
            (true, true) if n == 2 => &[],
            (true, true) => return Err(RegularityError::Malformed(ax.clone())),
            (true, false) => &chain[1..],
            (false, true) => &chain[..n - 1],
            (false, false) => &chain[..],
        };
        for r in inner {
            let name = r.name().unwrap().to_string();
            edges.entry(name).or_default().push((head.clone(), idx));
        }
    }

    if let Some(cycle) = find_cycle(&edges) {
        let mut seen = BTreeSet::new();
        let cycle = cycle
            .into_iter()
            .filter(|i| seen.insert(*i))
            .map(|i| axioms[i].clone())
            .collect();
        return Err(RegularityError::Cycle { cycle });
    }

    let mut order = RegularOrder::default();
    for start in edges.keys() {
        let mut stack = vec![start.clone()];
        let mut seen = BTreeSet::new();
        while let Some(r) = stack.pop() {
            for (above, _) in edges.get(&r).into_iter().flatten() {
                if seen.insert(above.clone()) {
                    order.less_than.insert((start.clone(), above.clone()));
                    stack.push(above.clone());
                }
            }
        }
    }
    Ok(order)
}

/// Depth-first search in lexicographic order; returns the axiom indices
/// along the first cycle found.
fn find_cycle(edges: &BTreeMap<String, Vec<(String, usize)>>) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Active,
        Done,
    }
    fn visit(
        node: &str,
        edges: &BTreeMap<String, Vec<(String, usize)>>,
        marks: &mut BTreeMap<String, Mark>,
        path: &mut Vec<(String, usize)>,
    ) -> Option<Vec<usize>> {
        marks.insert(node.to_string(), Mark::Active);
        let mut succ: Vec<&(String, usize)> = edges.get(node).into_iter().flatten().collect();
        succ.sort();
        for (next, ax) in succ {
            match marks.get(next.as_str()) {
                Some(Mark::Active) => {
                    let start = path.iter().position(|(n, _)| n == next).unwrap_or(path.len());
                    let mut cycle: Vec<usize> = path[start..].iter().map(|(_, a)| *a).collect();
                    cycle.push(*ax);
                    return Some(cycle);
                }
                Some(Mark::Done) => {}
                None => {
                    path.push((next.clone(), *ax));
                    if let Some(c) = visit(next, edges, marks, path) {
                        return Some(c);
                    }
                    path.pop();
                }
            }
        }
        marks.insert(node.to_string(), Mark::Done);
        None
    }

    let mut marks = BTreeMap::new();
    for start in edges.keys() {
        if marks.contains_key(start) {
            continue;
        }
        let mut path = vec![(start.clone(), usize::MAX)];
        if let Some(mut cycle) = visit(start, edges, &mut marks, &mut path) {
            cycle.retain(|i| *i != usize::MAX);
            return Some(cycle);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the universal role cannot be compiled into a rule: `{0}`")]
pub struct UnsupportedRoleError(pub Axiom);

/// The atom `r(u, v)` for a possibly inverse role.
fn role_atom(r: &RoleExpr, u: &str, v: &str) -> Atom {
    match r {
        RoleExpr::Inverse(n) => Atom::Role(n.clone(), Term::var(v), Term::var(u)),
        _ => Atom::Role(r.name().unwrap().to_string(), Term::var(u), Term::var(v)),
    }
}

fn chain_variables(len: usize) -> Vec<String> {
    if len <= 2 {
        ["x", "y", "z"][..=len].iter().map(|s| s.to_string()).collect()
    } else {
        (0..=len).map(|i| format!("x{i}")).collect()
    }
}

/// Role inclusions, equivalences, chains and transitivity as guarded rules.
pub fn compile_chains_to_rules(kb: &KnowledgeBase) -> Result<Vec<DlSafeRule>, UnsupportedRoleError> {
    let mut rules = Vec::new();
    let mut chain_rule = |chain: &[RoleExpr], sup: &RoleExpr, ax: &Axiom| {
        if sup.is_universal() || chain.iter().any(RoleExpr::is_universal) {
            return Err(UnsupportedRoleError(ax.clone()));
        }
        let vars = chain_variables(chain.len());
        let body = chain
            .iter()
            .enumerate()
            .map(|(i, r)| role_atom(r, &vars[i], &vars[i + 1]))
            .collect();
        let head = role_atom(sup, &vars[0], &vars[chain.len()]);
        let rule = DlSafeRule::new(head, body).expect("head variables occur in the chain");
        rules.push(guard_all(rule));
        Ok(())
    };
    for ax in kb.rbox() {
        match ax {
            Axiom::ComplexRoleInclusion(chain, sup) => chain_rule(chain, sup, ax)?,
            Axiom::TransitiveRole(r) => {
                let r = match r {
                    RoleExpr::Inverse(n) => RoleExpr::named(n.as_str()),
                    r => r.clone(),
                };
                chain_rule(&[r.clone(), r.clone()], &r, ax)?
            }
            Axiom::RoleInclusion(r, s) => chain_rule(std::slice::from_ref(r), s, ax)?,
            Axiom::RoleEquivalence(r, s) => {
                chain_rule(std::slice::from_ref(r), s, ax)?;
                chain_rule(std::slice::from_ref(s), r, ax)?;
            }
            _ => {}
        }
    }
    Ok(rules)
}

/// Appends `O(?v)` for every variable lacking a non-DL occurrence.
pub(crate) fn guard_all(mut rule: DlSafeRule) -> DlSafeRule {
    let missing: Vec<String> = rule.unguarded_variables().iter().map(|v| v.to_string()).collect();
    for v in missing {
        rule.body.push(Atom::named_guard(&v));
    }
    rule
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_dl};

    fn c(s: &str) -> ConceptExpr {
        parse_concept(s).unwrap()
    }

    #[test]
    fn de_morgan() {
        assert_eq!(nnf(&c("NOT (C AND D)")), c("NOT C OR NOT D"));
    }

    #[test]
    fn existential_duality() {
        assert_eq!(nnf(&c("NOT (r SOME C)")), c("r ONLY NOT C"));
    }

    #[test]
    fn cardinality_duality() {
        assert_eq!(nnf(&c("NOT (MAX 2 r C)")), c("MIN 3 r C"));
        assert_eq!(nnf(&c("NOT (MIN 2 r C)")), c("MAX 1 r C"));
        assert_eq!(nnf(&c("NOT (MIN 0 r C)")), ConceptExpr::Bottom);
        assert_eq!(nnf(&c("NOT TOP")), ConceptExpr::Bottom);
        assert_eq!(nnf(&c("NOT BOTTOM")), ConceptExpr::Top);
    }

    #[test]
    fn negation_stays_on_nominals_and_self() {
        assert_eq!(nnf(&c("NOT NOT ONEOF{a}")), c("ONEOF{a}"));
        assert_eq!(nnf(&c("NOT (r SELF)")), c("NOT (r SELF)"));
    }

    #[test]
    fn gcis_of_table_two() {
        let kb = parse_dl("liveAction SUBCLASS Movie.").unwrap();
        assert_eq!(gci_disjunctions(kb.tbox()), vec![c("NOT liveAction OR Movie")]);
        let kb = parse_dl("Narrator EQUIV Lector.").unwrap();
        assert_eq!(
            gci_disjunctions(kb.tbox()),
            vec![c("NOT Narrator OR Lector"), c("NOT Lector OR Narrator")]
        );
        assert!(gci_disjunctions(KnowledgeBase::empty().tbox()).is_empty());
    }

    #[test]
    fn closure_of_sub_property() {
        let kb = parse_dl("remakeOf SUBROLE basedOn.").unwrap();
        let rc = role_closure(&kb);
        let (r, b) = (RoleExpr::named("remakeOf"), RoleExpr::named("basedOn"));
        assert!(rc.subsumed(&r, &b));
        assert!(rc.subsumed(&r.inverse(), &b.inverse()));
        assert!(!rc.subsumed(&b, &r));
        for x in [&r, &b] {
            assert!(rc.subsumed(x, x));
            assert!(rc.subsumed(&x.inverse(), &x.inverse()));
        }
    }

    #[test]
    fn closure_of_bare_role() {
        let kb = parse_dl("x r y.").unwrap();
        let rc = role_closure(&kb);
        let r = RoleExpr::named("r");
        assert_eq!(
            rc.pairs(),
            BTreeSet::from([(r.clone(), r.clone()), (r.inverse(), r.inverse())])
        );
    }

    #[test]
    fn closure_is_transitive() {
        let kb = parse_dl("r SUBROLE s.\ns SUBROLE t.").unwrap();
        assert!(role_closure(&kb).subsumed(&RoleExpr::named("r"), &RoleExpr::named("t")));
    }

    #[test]
    fn simple_roles() {
        let kb =
            parse_dl("partOf o starredIn SUBROLE co-starredWith.\nco-starredWith SUBROLE knows.\nTRANS anc.").unwrap();
        let rc = role_closure(&kb);
        for r in ["co-starredWith", "knows", "anc"] {
            assert!(!rc.is_simple(&RoleExpr::named(r)), "{r}");
            assert!(!rc.is_simple(&RoleExpr::inverse_of(r)), "INV({r})");
        }
        assert!(rc.is_simple(&RoleExpr::named("partOf")));
        assert!(rc.is_transitive(&RoleExpr::inverse_of("anc")));
    }

    #[test]
    fn chain_of_self_is_transitivity() {
        let kb = parse_dl("basedOn o basedOn SUBROLE basedOn.").unwrap();
        assert!(role_closure(&kb).is_transitive(&RoleExpr::named("basedOn")));
    }

    #[test]
    fn regular_transitivity_form() {
        let kb = parse_dl("basedOn o basedOn SUBROLE basedOn.").unwrap();
        assert_eq!(check_regularity(kb.rbox()).unwrap(), RegularOrder::default());
    }

    #[test]
    fn regular_chain_order() {
        let kb = parse_dl("partOf o starredIn SUBROLE co-starredWith.").unwrap();
        let order = check_regularity(kb.rbox()).unwrap();
        assert!(order.lt("partOf", "co-starredWith"));
        assert!(order.lt("starredIn", "co-starredWith"));
        assert_eq!(order.less_than.len(), 2);
    }

    #[test]
    fn mutually_dependent_chains_are_irregular() {
        let kb = parse_dl("r o s SUBROLE r.\ns o r SUBROLE s.").unwrap();
        match check_regularity(kb.rbox()).unwrap_err() {
            RegularityError::Cycle { cycle } => assert_eq!(cycle.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_in_middle_is_irregular() {
        let kb = parse_dl("r o INV(r) SUBROLE s.\ns o t SUBROLE r.").unwrap();
        assert!(check_regularity(kb.rbox()).is_err());
        let kb = parse_dl("r o s o r SUBROLE r.").unwrap();
        assert!(matches!(
            check_regularity(kb.rbox()),
            Err(RegularityError::Malformed(_))
        ));
    }

    #[test]
    fn inverse_head_is_oriented() {
        // r⁻ ∘ s ⊑ r⁻ is equivalent to s⁻ ∘ r ⊑ r, so s < r
        let kb = parse_dl("INV(r) o s SUBROLE INV(r).").unwrap();
        assert!(check_regularity(kb.rbox()).unwrap().lt("s", "r"));
    }

    #[test]
    fn chain_rule_for_series() {
        let kb = parse_dl("partOf o starredIn SUBROLE co-starredWith.").unwrap();
        let rules = compile_chains_to_rules(&kb).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(
            rules[0].to_string(),
            "co-starredWith(?x,?z) <- partOf(?x,?y), starredIn(?y,?z), O(?x), O(?z), O(?y)"
        );
        assert!(rules[0].is_dl_safe());
    }

    #[test]
    fn transitivity_rule() {
        let kb = parse_dl("TRANS basedOn.").unwrap();
        let rules = compile_chains_to_rules(&kb).unwrap();
        let unguarded: Vec<_> = rules[0].body.iter().filter(|a| a.is_dl()).collect();
        assert_eq!(rules[0].head.to_string(), "basedOn(?x,?z)");
        assert_eq!(
            unguarded.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            ["basedOn(?x,?y)", "basedOn(?y,?z)"]
        );
    }

    #[test]
    fn inverse_roles_swap_arguments() {
        let kb = parse_dl("r o INV(s) SUBROLE t.\nr SUBROLE INV(q).").unwrap();
        let rules = compile_chains_to_rules(&kb).unwrap();
        assert!(rules[0].to_string().starts_with("t(?x,?z) <- r(?x,?y), s(?z,?y)"));
        assert!(rules[1].to_string().starts_with("q(?y,?x) <- r(?x,?y)"));
    }

    #[test]
    fn empty_rbox_compiles_to_nothing() {
        assert!(compile_chains_to_rules(&KnowledgeBase::empty()).unwrap().is_empty());
    }

    #[test]
    fn universal_chain_rejected() {
        let kb = parse_dl("r o UNIVERSAL SUBROLE t.").unwrap();
        assert!(compile_chains_to_rules(&kb).is_err());
        assert!(matches!(
            check_regularity(kb.rbox()),
            Err(RegularityError::Universal(_))
        ));
    }
}
