//! Property suites shared by the property tests and the acceptance run.
//! Each suite runs a fixed number of cases from a deterministic seed.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::sample::select;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use tableau_kb::model::{Atom, Axiom, ConceptExpr, DlSafeRule, KnowledgeBase, RoleExpr, Term};
use tableau_kb::normalize::{check_regularity, nnf, role_closure};
use tableau_kb::oracle::{holds_at, Interpretation};
use tableau_kb::reasoner::{classify, ConceptHierarchy};
use tableau_kb::rules::{materialize, Fact, MaterializeConfig};
use tableau_kb::syntax::{parse_dl, serialize_dl};
use tableau_kb::tableau::subsumes;
use tableau_kb::turtle::{from_turtle, to_turtle};

use super::{CONCEPTS, INDIVIDUALS, ROLES};

pub type Suite = fn(u32) -> Result<(), String>;

/// Every suite with its name, in a fixed order.
pub const SUITES: [(&str, Suite); 12] = [
    ("nnf idempotence", nnf_idempotence),
    ("nnf duality", nnf_duality),
    ("nnf preserves semantics", nnf_semantics),
    ("role closure fixpoint", role_closure_fixpoint),
    ("regularity of role chains", regularity),
    ("materialize idempotence", materialize_idempotence),
    ("materialize monotonicity", materialize_monotonicity),
    ("materialize named individuals only", materialize_named_only),
    ("classify and subsumes coherence", classify_coherence),
    ("dl parse and serialize round trip", dl_round_trip),
    ("dl and turtle round trip", turtle_round_trip),
    ("regularity rejects mutual chains", regularity_rejects),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn named_role() -> impl Strategy<Value = RoleExpr> {
    select(&ROLES[..]).prop_map(RoleExpr::named)
}

fn any_role() -> impl Strategy<Value = RoleExpr> {
    (select(&ROLES[..]), any::<bool>()).prop_map(|(r, inv)| {
        if inv {
            RoleExpr::inverse_of(r)
        } else {
            RoleExpr::named(r)
        }
    })
}

/// Concepts over the fixed signature with every constructor the oracle
/// evaluates.
pub fn concept() -> BoxedStrategy<ConceptExpr> {
    let leaf = prop_oneof![
        Just(ConceptExpr::Top),
        Just(ConceptExpr::Bottom),
        select(&CONCEPTS[..]).prop_map(ConceptExpr::atomic),
        select(&INDIVIDUALS[..]).prop_map(|a| ConceptExpr::nominal([a]).unwrap()),
        any_role().prop_map(ConceptExpr::SelfRestriction),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ConceptExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ConceptExpr::and([a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ConceptExpr::or([a, b])),
            (any_role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::exists(r, c)),
            (any_role(), inner.clone()).prop_map(|(r, c)| ConceptExpr::for_all(r, c)),
            (0..3u32, any_role(), inner.clone()).prop_map(|(n, r, c)| ConceptExpr::at_least(n, r, c)),
            (0..3u32, any_role(), inner).prop_map(|(n, r, c)| ConceptExpr::at_most(n, r, c)),
        ]
    })
    .boxed()
}

/// Interpretations of the fixed signature with at most four elements.
pub fn interpretation() -> impl Strategy<Value = Interpretation> {
    (1..=4usize).prop_flat_map(|n| {
        let set = move || proptest::collection::vec(any::<bool>(), n);
        let pairs = move || proptest::collection::vec(any::<bool>(), n * n);
        (
            proptest::collection::vec(set(), CONCEPTS.len()),
            proptest::collection::vec(pairs(), ROLES.len()),
            proptest::collection::vec(0..n, INDIVIDUALS.len()),
        )
            .prop_map(move |(cs, rs, inds)| Interpretation {
                size: n,
                concepts: CONCEPTS
                    .iter()
                    .zip(cs)
                    .map(|(c, bits)| (c.to_string(), (0..n).filter(|&x| bits[x]).collect()))
                    .collect(),
                roles: ROLES
                    .iter()
                    .zip(rs)
                    .map(|(r, bits)| {
                        let pairs = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n)).collect();
                        (r.to_string(), pairs)
                    })
                    .collect(),
                individuals: INDIVIDUALS.iter().map(|a| a.to_string()).zip(inds).collect(),
            })
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// Negation occurs only in front of names, nominals and self restrictions.
fn in_nnf(c: &ConceptExpr) -> bool {
    let mut ok = true;
    c.walk(&mut |d| {
        if let ConceptExpr::Not(inner) = d {
            ok &= matches!(
                **inner,
                ConceptExpr::Atomic(_) | ConceptExpr::Nominal(_) | ConceptExpr::SelfRestriction(_)
            );
        }
    });
    ok
}

pub fn nnf_idempotence(cases: u32) -> Result<(), String> {
    run(cases, concept(), |c| {
        let once = nnf(&c);
        ensure(in_nnf(&once), || format!("{once} is not in negation normal form"))?;
        ensure(nnf(&once) == once, || format!("nnf not idempotent on {c}"))
    })
}

pub fn nnf_duality(cases: u32) -> Result<(), String> {
    let pair = (concept(), concept(), any_role(), 1..3u32);
    run(cases, pair, |(c, d, r, n)| {
        let not = |x: ConceptExpr| nnf(&ConceptExpr::not(x));
        let cases = [
            (
                not(ConceptExpr::and([c.clone(), d.clone()])),
                nnf(&ConceptExpr::or([
                    ConceptExpr::not(c.clone()),
                    ConceptExpr::not(d.clone()),
                ])),
            ),
            (
                not(ConceptExpr::or([c.clone(), d.clone()])),
                nnf(&ConceptExpr::and([
                    ConceptExpr::not(c.clone()),
                    ConceptExpr::not(d.clone()),
                ])),
            ),
            (
                not(ConceptExpr::exists(r.clone(), c.clone())),
                nnf(&ConceptExpr::for_all(r.clone(), ConceptExpr::not(c.clone()))),
            ),
            (
                not(ConceptExpr::for_all(r.clone(), c.clone())),
                nnf(&ConceptExpr::exists(r.clone(), ConceptExpr::not(c.clone()))),
            ),
            (
                not(ConceptExpr::at_least(n, r.clone(), c.clone())),
                nnf(&ConceptExpr::at_most(n - 1, r.clone(), c.clone())),
            ),
            (
                not(ConceptExpr::at_most(n, r.clone(), c.clone())),
                nnf(&ConceptExpr::at_least(n + 1, r.clone(), c.clone())),
            ),
            (not(ConceptExpr::not(c.clone())), nnf(&c)),
        ];
        for (got, want) in cases {
            ensure(got == want, || format!("dual forms differ: {got} vs {want}"))?;
        }
        Ok(())
    })
}

pub fn nnf_semantics(cases: u32) -> Result<(), String> {
    run(cases, (concept(), interpretation()), |(c, i)| {
        let n = nnf(&c);
        let neg = nnf(&ConceptExpr::not(c.clone()));
        for x in 0..i.size {
            let v = holds_at(&i, &c, x);
            ensure(v == holds_at(&i, &n, x), || format!("{c} and {n} differ at {x}"))?;
            ensure(v != holds_at(&i, &neg, x), || {
                format!("{neg} is not the complement of {c} at {x}")
            })?;
        }
        Ok(())
    })
}

const RBOX_ROLES: [&str; 3] = ["r", "s", "t"];

fn rbox() -> impl Strategy<Value = Vec<Axiom>> {
    let roles = &RBOX_ROLES[..];
    let role = move || {
        (select(roles), any::<bool>()).prop_map(|(r, inv)| {
            if inv {
                RoleExpr::inverse_of(r)
            } else {
                RoleExpr::named(r)
            }
        })
    };
    let axiom = prop_oneof![
        3 => (role(), role()).prop_map(|(r, s)| Axiom::RoleInclusion(r, s)),
        1 => select(roles).prop_map(|r| Axiom::TransitiveRole(RoleExpr::named(r))),
    ];
    proptest::collection::vec(axiom, 0..6)
}

/// Naive closure of the inclusions: every role pair reachable in the graph of
/// stated inclusions and their inverses.
fn naive_closure(axioms: &[Axiom], roles: &[RoleExpr]) -> BTreeSet<(RoleExpr, RoleExpr)> {
    let mut pairs: BTreeSet<(RoleExpr, RoleExpr)> = roles.iter().map(|r| (r.clone(), r.clone())).collect();
    for ax in axioms {
        if let Axiom::RoleInclusion(r, s) = ax {
            pairs.insert((r.clone(), s.clone()));
            pairs.insert((r.inverse(), s.inverse()));
        }
    }
    loop {
        let extra: Vec<_> = pairs
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

pub fn role_closure_fixpoint(cases: u32) -> Result<(), String> {
    run(cases, rbox(), |axioms| {
        let kb = KnowledgeBase::new(axioms.clone(), vec![]).unwrap();
        let closure = role_closure(&kb);
        let roles: Vec<RoleExpr> = kb
            .signature()
            .roles
            .iter()
            .flat_map(|r| [RoleExpr::named(r.as_str()), RoleExpr::inverse_of(r.as_str())])
            .collect();
        let expected = naive_closure(&axioms, &roles);
        ensure(closure.pairs() == expected, || {
            format!("closure {:?} vs {:?}", closure.pairs(), expected)
        })?;

        let stated: BTreeSet<RoleExpr> = axioms
            .iter()
            .filter_map(|a| match a {
                Axiom::TransitiveRole(r) => Some(r.clone()),
                _ => None,
            })
            .flat_map(|r| [r.inverse(), r])
            .collect();
        for r in &stated {
            ensure(closure.is_transitive(r), || format!("{r} should be transitive"))?;
        }
        for r in &roles {
            let non_simple = stated.iter().any(|t| closure.subsumed(t, r));
            ensure(closure.is_simple(r) != non_simple, || format!("simplicity of {r}"))?;
        }

        // feeding the closure back in changes nothing
        let again = kb
            .with_axioms(closure.pairs().into_iter().map(|(r, s)| Axiom::RoleInclusion(r, s)))
            .unwrap();
        ensure(role_closure(&again) == closure, || {
            "closure is not a fixpoint".to_string()
        })
    })
}

/// Chains built from a ranking of the roles, always in one of the regular
/// shapes for their head.
fn ranked_chains() -> impl Strategy<Value = Vec<Axiom>> {
    let names = ["p", "q", "r", "s"];
    let shape = (
        0..4usize,
        0..4usize,
        proptest::collection::vec((0..4usize, any::<bool>()), 1..3),
    );
    (Just(names), proptest::collection::vec(shape, 1..5)).prop_map(|(names, specs)| {
        specs
            .into_iter()
            .filter_map(|(head, form, w)| {
                let s = RoleExpr::named(names[head]);
                // roles in w rank strictly below the head
                let w: Vec<RoleExpr> = w
                    .into_iter()
                    .filter(|(k, _)| *k < head)
                    .map(|(k, inv)| {
                        if inv {
                            RoleExpr::inverse_of(names[k])
                        } else {
                            RoleExpr::named(names[k])
                        }
                    })
                    .collect();
                let chain = match form {
                    0 => vec![s.clone(), s.clone()],
                    1 if !w.is_empty() => [vec![s.clone()], w].concat(),
                    2 if !w.is_empty() => [w, vec![s.clone()]].concat(),
                    _ if w.len() >= 2 => w,
                    _ => return None,
                };
                Axiom::role_chain(chain, s)
            })
            .collect()
    })
}

fn rbox_fixture_axioms() -> Vec<Axiom> {
    super::tables::rows()
        .into_iter()
        .filter(|row| row.stem.starts_with("rbox-"))
        .flat_map(|row| parse_dl(&row.dl).unwrap().axioms().to_vec())
        .collect()
}

pub fn regularity(cases: u32) -> Result<(), String> {
    let fixed = rbox_fixture_axioms();
    check_regularity(&fixed).map_err(|e| format!("role box rows rejected: {e}"))?;
    let (r, s, w) = (RoleExpr::named("r"), RoleExpr::named("s"), RoleExpr::named("w"));
    let forms = [
        vec![s.clone(), s.clone()],
        vec![s.clone(), w.clone()],
        vec![w.clone(), s.clone()],
        vec![w.clone(), r.clone()],
    ];
    for chain in forms {
        let ax = Axiom::ComplexRoleInclusion(chain, s.clone());
        check_regularity([&ax]).map_err(|e| format!("{ax} rejected: {e}"))?;
    }
    run(cases, ranked_chains(), |axioms| {
        let order = check_regularity(&axioms).map_err(|e| TestCaseError::fail(format!("{e}")))?;
        for (a, b) in &order.less_than {
            ensure(!order.lt(b, a), || format!("order not strict on {a}, {b}"))?;
        }
        Ok(())
    })
}

pub fn regularity_rejects(_cases: u32) -> Result<(), String> {
    let (r, s) = (RoleExpr::named("r"), RoleExpr::named("s"));
    let axioms = [
        Axiom::role_chain(vec![r.clone(), s.clone()], r.clone()).unwrap(),
        Axiom::role_chain(vec![s.clone(), r.clone()], s.clone()).unwrap(),
    ];
    match check_regularity(&axioms) {
        Err(_) => Ok(()),
        Ok(order) => Err(format!("accepted with order {:?}", order.less_than)),
    }
}

const NAMED: [&str; 3] = ["a", "b", "c"];

fn rule() -> impl Strategy<Value = DlSafeRule> {
    let c = || select(&CONCEPTS[..]);
    let r = || select(&ROLES[..]);
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let concept = |p: &str, t: &Term| Atom::Concept(p.to_string(), t.clone());
    let role = |p: &str, s: &Term, t: &Term| Atom::Role(p.to_string(), s.clone(), t.clone());
    (0..6usize, c(), c(), r(), r(), select(&NAMED[..])).prop_map(move |(k, c1, c2, r1, r2, a)| {
        let (head, body) = match k {
            0 => (concept(c1, &x), vec![concept(c2, &x)]),
            1 => (concept(c1, &x), vec![role(r1, &x, &y)]),
            2 => (concept(c1, &x), vec![role(r1, &y, &x), concept(c2, &y)]),
            3 => (role(r1, &x, &z), vec![role(r2, &x, &y), role(r1, &y, &z)]),
            4 => (role(r1, &x, &y), vec![concept(c1, &x), concept(c2, &y)]),
            _ => (concept(c1, &x), vec![role(r1, &x, &Term::constant(a))]),
        };
        DlSafeRule::new(head, body).unwrap()
    })
}

fn assertion() -> impl Strategy<Value = Axiom> {
    prop_oneof![
        (select(&CONCEPTS[..]), select(&NAMED[..]))
            .prop_map(|(c, a)| Axiom::ConceptAssertion(ConceptExpr::atomic(c), a.to_string())),
        (named_role(), select(&NAMED[..]), select(&NAMED[..])).prop_map(|(r, a, b)| Axiom::role_assertion(r, a, b)),
    ]
}

/// A rule base over the fixed signature, optionally with the chain
/// `r ∘ s ⊑ t`.
fn rule_kb() -> impl Strategy<Value = (Vec<Axiom>, Vec<DlSafeRule>)> {
    (
        proptest::collection::vec(assertion(), 1..6),
        proptest::collection::vec(rule(), 0..4),
        any::<bool>(),
    )
        .prop_map(|(mut axioms, rules, chain)| {
            if chain {
                axioms.push(
                    Axiom::role_chain(vec![RoleExpr::named("r"), RoleExpr::named("s")], RoleExpr::named("t")).unwrap(),
                );
            }
            (axioms, rules)
        })
}

fn dl_facts(store: &tableau_kb::rules::FactStore) -> BTreeSet<Fact> {
    store
        .facts()
        .filter(|f| !matches!(f, Fact::NonDl(..)))
        .cloned()
        .collect()
}

/// Least fixpoint by trying every binding of the rule variables to named
/// individuals.
fn naive_materialize(kb: &KnowledgeBase) -> BTreeSet<Fact> {
    let mut rules = kb.rules().to_vec();
    for ax in kb.rbox() {
        if let Axiom::ComplexRoleInclusion(chain, sup) = ax {
            let vars: Vec<Term> = (0..=chain.len()).map(|i| Term::var(format!("v{i}"))).collect();
            let body = chain
                .iter()
                .enumerate()
                .map(|(i, r)| Atom::Role(r.name().unwrap().to_string(), vars[i].clone(), vars[i + 1].clone()))
                .collect();
            let head = Atom::Role(
                sup.name().unwrap().to_string(),
                vars[0].clone(),
                vars[chain.len()].clone(),
            );
            rules.push(DlSafeRule::new(head, body).unwrap());
        }
    }
    let individuals: Vec<String> = kb.signature().individuals.iter().cloned().collect();
    let mut facts = tableau_kb::rules::asserted_facts(kb);
    let ground = |atom: &Atom, b: &BTreeMap<String, String>| {
        let t = |t: &Term| match t {
            Term::Variable(v) => b[v].clone(),
            Term::Constant(c) => c.clone(),
        };
        match atom {
            Atom::Concept(p, x) => Fact::Concept(p.clone(), t(x)),
            Atom::Role(p, x, y) => Fact::Role(p.clone(), t(x), t(y)),
            Atom::NonDl(..) => unreachable!(),
        }
    };
    loop {
        let mut new = BTreeSet::new();
        for rule in &rules {
            let vars: Vec<String> = rule.variables().into_iter().map(str::to_string).collect();
            let total = individuals.len().pow(vars.len() as u32);
            for k in 0..total {
                let mut rest = k;
                let mut b = BTreeMap::new();
                for v in &vars {
                    b.insert(v.clone(), individuals[rest % individuals.len()].clone());
                    rest /= individuals.len();
                }
                if rule.body.iter().all(|a| facts.contains(&ground(a, &b))) {
                    let f = ground(&rule.head, &b);
                    if !facts.contains(&f) {
                        new.insert(f);
                    }
                }
            }
        }
        if new.is_empty() {
            return facts;
        }
        facts.extend(new);
    }
}

fn build((axioms, rules): (Vec<Axiom>, Vec<DlSafeRule>)) -> KnowledgeBase {
    KnowledgeBase::new(axioms, rules).unwrap()
}

fn materialized(kb: &KnowledgeBase) -> Result<tableau_kb::rules::FactStore, TestCaseError> {
    materialize(kb, &MaterializeConfig::default()).map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn materialize_idempotence(cases: u32) -> Result<(), String> {
    run(cases, rule_kb(), |parts| {
        let kb = build(parts);
        let first = materialized(&kb)?;
        let expected = naive_materialize(&kb);
        ensure(dl_facts(&first) == expected, || {
            format!(
                "{}\nderived {:?}\nexpected {:?}",
                serialize_dl(&kb),
                dl_facts(&first),
                expected
            )
        })?;
        let again = kb.with_axioms(first.derived_axioms()).unwrap();
        let second = materialized(&again)?;
        ensure(dl_facts(&second) == dl_facts(&first), || {
            "second run derived more".to_string()
        })?;
        let fresh = second.derived().count();
        ensure(fresh == 0, || format!("second run derived {fresh} new facts"))
    })
}

pub fn materialize_monotonicity(cases: u32) -> Result<(), String> {
    run(
        cases,
        (rule_kb(), proptest::collection::vec(assertion(), 1..4)),
        |(parts, extra)| {
            let kb = build(parts);
            let bigger = kb.with_axioms(extra).unwrap();
            let small = dl_facts(&materialized(&kb)?);
            let large = dl_facts(&materialized(&bigger)?);
            ensure(small.is_subset(&large), || {
                format!("lost {:?}", small.difference(&large).collect::<Vec<_>>())
            })
        },
    )
}

pub fn materialize_named_only(cases: u32) -> Result<(), String> {
    run(cases, rule_kb(), |parts| {
        let kb = build(parts);
        let store = materialized(&kb)?;
        let named = &kb.signature().individuals;
        for f in store.facts() {
            for a in f.individuals() {
                ensure(named.contains(a), || format!("{f} mentions unnamed {a}"))?;
            }
        }
        Ok(())
    })
}

fn tbox() -> impl Strategy<Value = Vec<Axiom>> {
    let name = || select(&["A", "B", "C", "D"][..]).prop_map(ConceptExpr::atomic);
    let axiom = prop_oneof![
        3 => (name(), name()).prop_map(|(c, d)| Axiom::ConceptInclusion(c, d)),
        1 => (name(), name(), name()).prop_map(|(c, d, e)| Axiom::ConceptInclusion(c, ConceptExpr::and([d, e]))),
        1 => (name(), name(), name()).prop_map(|(c, d, e)| Axiom::ConceptInclusion(ConceptExpr::or([c, d]), e)),
        1 => (name(), named_role(), name()).prop_map(|(c, r, d)| Axiom::ConceptInclusion(c, ConceptExpr::exists(r, d))),
        1 => (name(), named_role(), name()).prop_map(|(c, r, d)| Axiom::ConceptInclusion(ConceptExpr::exists(r, c), d)),
        1 => (name(), name()).prop_map(|(c, d)| Axiom::ConceptEquivalence(c, d)),
        1 => (name(), name()).prop_map(|(c, d)| Axiom::ConceptInclusion(ConceptExpr::and([c, d]), ConceptExpr::Bottom)),
    ];
    proptest::collection::vec(axiom, 1..6)
}

/// Upward reachability over the hierarchy edges.
fn reachable(h: &ConceptHierarchy, from: usize, to: usize) -> bool {
    let mut seen = BTreeSet::new();
    let mut stack = vec![from];
    while let Some(k) = stack.pop() {
        if k == to {
            return true;
        }
        if seen.insert(k) {
            stack.extend(h.edges.iter().filter(|e| e.1 == k).map(|e| e.0));
        }
    }
    false
}

pub fn classify_coherence(cases: u32) -> Result<(), String> {
    run(cases, tbox(), |axioms| {
        let kb = KnowledgeBase::new(axioms, vec![]).unwrap();
        let h = classify(&kb).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let names: Vec<String> = kb.signature().concepts.iter().cloned().collect();
        for sub in &names {
            for sup in &names {
                let (a, b) = (h.node_of(sub).unwrap(), h.node_of(sup).unwrap());
                let by_dag = a == b || reachable(&h, a, b);
                let by_tableau = subsumes(
                    &kb,
                    &ConceptExpr::atomic(sup.as_str()),
                    &ConceptExpr::atomic(sub.as_str()),
                )
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
                ensure(by_dag == by_tableau, || {
                    format!(
                        "{sub} below {sup}: hierarchy {by_dag}, tableau {by_tableau}\n{}",
                        serialize_dl(&kb)
                    )
                })?;
                ensure(h.is_subsumed_by(sub, sup) == by_dag, || {
                    format!("is_subsumed_by({sub}, {sup})")
                })?;
            }
        }
        // edges are direct: no edge is implied by a longer path
        for &(p, c) in &h.edges {
            let longer = h.edges.iter().any(|&(q, d)| d == c && q != p && reachable(&h, q, p));
            ensure(!longer, || format!("edge {p} -> {c} is not direct"))?;
        }
        Ok(())
    })
}

fn full_kb() -> impl Strategy<Value = KnowledgeBase> {
    let abox = prop_oneof![
        (concept(), select(&INDIVIDUALS[..])).prop_map(|(c, a)| Axiom::ConceptAssertion(c, a.to_string())),
        (any_role(), select(&INDIVIDUALS[..]), select(&INDIVIDUALS[..]))
            .prop_map(|(r, a, b)| Axiom::role_assertion(r, a, b)),
        (named_role(), select(&INDIVIDUALS[..]), select(&INDIVIDUALS[..]))
            .prop_map(|(r, a, b)| Axiom::negated_role_assertion(r, a, b)),
    ];
    let axiom = prop_oneof![
        (concept(), concept()).prop_map(|(c, d)| Axiom::ConceptInclusion(c, d)),
        (concept(), concept()).prop_map(|(c, d)| Axiom::ConceptEquivalence(c, d)),
        abox,
        (any_role(), named_role()).prop_map(|(r, s)| Axiom::RoleInclusion(r, s)),
        named_role().prop_map(Axiom::TransitiveRole),
        Just(Axiom::DisjointRoles(RoleExpr::named("r"), RoleExpr::named("s"))),
    ];
    proptest::collection::vec(axiom, 0..6).prop_map(|axioms| KnowledgeBase::new(axioms, vec![]).unwrap())
}

pub fn dl_round_trip(cases: u32) -> Result<(), String> {
    let with_rules =
        (full_kb(), proptest::collection::vec(rule(), 0..3)).prop_map(|(kb, rules)| kb.with_rules(rules).unwrap());
    run(cases, with_rules, |kb| {
        let text = serialize_dl(&kb);
        let back = parse_dl(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        ensure(back == kb, || {
            format!("round trip changed\n{text}\ninto\n{}", serialize_dl(&back))
        })?;
        ensure(serialize_dl(&back) == text, || "serialization not stable".to_string())
    })
}

pub fn turtle_round_trip(cases: u32) -> Result<(), String> {
    run(cases, full_kb(), |kb| {
        let doc = to_turtle(&kb)
            .map_err(|e| TestCaseError::fail(e.to_string()))?
            .to_string();
        let back = from_turtle(&doc).map_err(|e| TestCaseError::fail(format!("{e}\n{doc}")))?;
        ensure(back.diagnostics.is_empty(), || {
            format!("diagnostics {:?}", back.diagnostics)
        })?;
        ensure(back.kb.axiom_set() == kb.axiom_set(), || {
            format!("{}\nread back as\n{}", serialize_dl(&kb), serialize_dl(&back.kb))
        })?;
        let again = to_turtle(&back.kb).unwrap().to_string();
        ensure(again == doc, || "turtle output not stable".to_string())
    })
}
