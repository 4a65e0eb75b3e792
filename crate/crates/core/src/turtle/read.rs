use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rio_api::model::{Literal, Subject, Term};
use rio_api::parser::{ParseError as _, TriplesParser};
use rio_turtle::TurtleParser;

use super::{TurtleDiagnostic, TurtleError, DEFAULT_NAMESPACE, OWL, RDF, RDFS, XSD};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Iri(String),
    Blank(String),
    Literal { value: String, datatype: String },
}

#[derive(Debug, Clone)]
struct Triple {
    s: Node,
    p: String,
    o: Node,
}

struct Graph {
    triples: Vec<Triple>,
    prefixes: Vec<(String, String)>,
}

fn parse_graph(text: &str) -> Result<Graph, TurtleError> {
    let mut parser = TurtleParser::new(text.as_bytes(), None);
    let mut triples = Vec::new();
    let result = parser.parse_all(&mut |t| -> Result<(), rio_turtle::TurtleError> {
        let s = match t.subject {
            Subject::NamedNode(n) => Node::Iri(n.iri.to_string()),
            Subject::BlankNode(b) => Node::Blank(b.id.to_string()),
            Subject::Triple(_) => Node::Blank("rdf-star".into()),
        };
        let o = match t.object {
            Term::NamedNode(n) => Node::Iri(n.iri.to_string()),
            Term::BlankNode(b) => Node::Blank(b.id.to_string()),
            Term::Literal(Literal::Simple { value }) => Node::Literal {
                value: value.to_string(),
                datatype: format!("{XSD}string"),
            },
            Term::Literal(Literal::LanguageTaggedString { value, .. }) => Node::Literal {
                value: value.to_string(),
                datatype: format!("{RDF}langString"),
            },
            Term::Literal(Literal::Typed { value, datatype }) => Node::Literal {
                value: value.to_string(),
                datatype: datatype.iri.to_string(),
            },
            Term::Triple(_) => Node::Blank("rdf-star".into()),
        };
        triples.push(Triple {
            s,
            p: t.predicate.iri.to_string(),
            o,
        });
        Ok(())
    });
    if let Err(e) = result {
        let (line, column) = e
            .textual_position()
            .map(|p| (p.line_number(), p.byte_number()))
            .unwrap_or((0, 0));
        let full = e.to_string();
        let message = full.split(" on line ").next().unwrap_or(&full).to_string();
        return Err(TurtleError::Syntax { line, column, message });
    }
    let mut prefixes: Vec<(String, String)> = parser
        .prefixes()
        .iter()
        .map(|(p, iri)| (p.clone(), iri.clone()))
        .collect();
    prefixes.sort();
    Ok(Graph { triples, prefixes })
}

/// Result of reading a Turtle document.
#[derive(Debug)]
pub struct TurtleImport {
    pub kb: KnowledgeBase,
    pub diagnostics: Vec<TurtleDiagnostic>,
}

/// Reads a Turtle document. Triples outside the supported vocabulary are
/// reported as diagnostics; syntax errors and malformed lists are errors.
pub fn from_turtle(text: &str) -> Result<TurtleImport, TurtleError> {
    let graph = parse_graph(text)?;
    let mut reader = Reader::new(&graph);
    let axioms = reader.run()?;
    let kb = KnowledgeBase::new(axioms, vec![])?;
    Ok(TurtleImport {
        kb,
        diagnostics: reader.diags,
    })
}

/// The triples of a document with prefixes expanded and tree-shaped blank
/// nodes inlined, so two documents compare equal modulo blank-node labels,
/// prefix choice and statement order.
pub fn canonical_triples(text: &str) -> Result<BTreeSet<String>, TurtleError> {
    let graph = parse_graph(text)?;
    let mut by_subject: HashMap<&Node, Vec<&Triple>> = HashMap::new();
    let mut objects = HashSet::new();
    for t in &graph.triples {
        by_subject.entry(&t.s).or_default().push(t);
        objects.insert(&t.o);
    }
    fn canon(n: &Node, by_subject: &HashMap<&Node, Vec<&Triple>>, depth: usize) -> String {
        match n {
            Node::Iri(i) => format!("<{i}>"),
            Node::Literal { value, datatype } => format!("{value:?}^^<{datatype}>"),
            Node::Blank(_) if depth > 64 => "[...]".into(),
            Node::Blank(_) => {
                let mut parts: Vec<String> = by_subject
                    .get(n)
                    .into_iter()
                    .flatten()
                    .map(|t| format!("<{}> {}", t.p, canon(&t.o, by_subject, depth + 1)))
                    .collect();
                parts.sort();
                format!("[ {} ]", parts.join(" ; "))
            }
        }
    }
    let mut out = BTreeSet::new();
    for t in &graph.triples {
        match &t.s {
            Node::Blank(_) if objects.contains(&t.s) => {}
            Node::Blank(_) => {
                out.insert(canon(&t.s, &by_subject, 0));
            }
            s => {
                out.insert(format!(
                    "{} <{}> {}",
                    canon(s, &by_subject, 0),
                    t.p,
                    canon(&t.o, &by_subject, 0)
                ));
            }
        }
    }
    Ok(out)
}

fn owl(local: &str) -> String {
    format!("{OWL}{local}")
}

/// Predicates only meaningful inside a larger structure; they are consumed
/// by the statement that owns them.
const STRUCTURAL: &[&str] = &[
    "members",
    "sourceIndividual",
    "assertionProperty",
    "targetIndividual",
    "onProperty",
    "someValuesFrom",
    "allValuesFrom",
    "minQualifiedCardinality",
    "maxQualifiedCardinality",
    "onClass",
    "hasSelf",
    "intersectionOf",
    "unionOf",
    "complementOf",
    "oneOf",
];

fn is_vocabulary(iri: &str) -> bool {
    [RDF, RDFS, OWL, XSD].iter().any(|ns| iri.starts_with(ns))
}

type Step<T> = Result<Option<T>, TurtleError>;

struct Reader<'g> {
    graph: &'g Graph,
    by_subject: HashMap<&'g Node, Vec<usize>>,
    objects: HashSet<&'g Node>,
    used: Vec<bool>,
    classes: HashMap<Node, ConceptExpr>,
    roles: HashMap<Node, RoleExpr>,
    diags: Vec<TurtleDiagnostic>,
}

impl<'g> Reader<'g> {
    fn new(graph: &'g Graph) -> Self {
        let mut by_subject: HashMap<&Node, Vec<usize>> = HashMap::new();
        let mut objects = HashSet::new();
        for (i, t) in graph.triples.iter().enumerate() {
            by_subject.entry(&t.s).or_default().push(i);
            objects.insert(&t.o);
        }
        Reader {
            graph,
            by_subject,
            objects,
            used: vec![false; graph.triples.len()],
            classes: HashMap::new(),
            roles: HashMap::new(),
            diags: Vec::new(),
        }
    }

    fn run(&mut self) -> Result<Vec<Axiom>, TurtleError> {
        let mut axioms = Vec::new();
        for i in 0..self.graph.triples.len() {
            if self.used[i] {
                continue;
            }
            let t = &self.graph.triples[i];
            let blank = matches!(t.s, Node::Blank(_));
            if blank && self.objects.contains(&t.s) || self.is_structural(t, blank) {
                continue;
            }
            self.used[i] = true;
            axioms.extend(self.statement(i)?);
        }
        for i in 0..self.graph.triples.len() {
            if !self.used[i] {
                self.diag(i, "triple is not part of any supported axiom");
            }
        }
        Ok(axioms)
    }

    fn is_structural(&self, t: &Triple, blank_subject: bool) -> bool {
        if t.p == format!("{RDF}first") || t.p == format!("{RDF}rest") {
            return true;
        }
        if STRUCTURAL.iter().any(|k| t.p == owl(k)) {
            return true;
        }
        blank_subject
            && (t.p == owl("inverseOf")
                || t.p == format!("{RDF}type")
                    && (t.o == Node::Iri(owl("Class")) || t.o == Node::Iri(owl("Restriction"))))
    }

    fn show(&self, n: &Node) -> String {
        match n {
            Node::Iri(iri) => self
                .graph
                .prefixes
                .iter()
                .filter(|(_, ns)| iri.starts_with(ns.as_str()))
                .max_by_key(|(_, ns)| ns.len())
                .map(|(p, ns)| format!("{p}:{}", &iri[ns.len()..]))
                .unwrap_or_else(|| format!("<{iri}>")),
            Node::Blank(b) => format!("_:{b}"),
            Node::Literal { value, datatype } => {
                format!("{value:?}^^{}", self.show(&Node::Iri(datatype.clone())))
            }
        }
    }

    fn diag(&mut self, i: usize, message: &str) {
        let t = &self.graph.triples[i];
        let triple = format!(
            "{} {} {} .",
            self.show(&t.s),
            self.show(&Node::Iri(t.p.clone())),
            self.show(&t.o)
        );
        self.diags.push(TurtleDiagnostic {
            triple,
            message: message.to_string(),
        });
    }

    fn local(&self, iri: &str) -> String {
        let ns = self
            .graph
            .prefixes
            .iter()
            .filter(|(_, ns)| !is_vocabulary(ns) && iri.starts_with(ns.as_str()))
            .map(|(_, ns)| ns.as_str())
            .chain(iri.starts_with(DEFAULT_NAMESPACE).then_some(DEFAULT_NAMESPACE))
            .max_by_key(|ns| ns.len());
        match ns {
            Some(ns) => iri[ns.len()..].to_string(),
            None => iri.rsplit(['#', '/']).next().unwrap_or(iri).to_string(),
        }
    }

    /// Marks every triple reachable from a blank node as used.
    fn consume(&mut self, n: &Node) {
        if !matches!(n, Node::Blank(_)) {
            return;
        }
        let idxs = self.by_subject.get(n).cloned().unwrap_or_default();
        for i in idxs {
            if !self.used[i] {
                self.used[i] = true;
                let o = self.graph.triples[i].o.clone();
                self.consume(&o);
            }
        }
    }

    /// Unused outgoing triples of `n`, grouped by predicate.
    fn props(&mut self, n: &Node) -> BTreeMap<String, Vec<(usize, Node)>> {
        let mut out: BTreeMap<String, Vec<(usize, Node)>> = BTreeMap::new();
        for &i in self.by_subject.get(n).into_iter().flatten() {
            if !self.used[i] {
                let t = &self.graph.triples[i];
                out.entry(t.p.clone()).or_default().push((i, t.o.clone()));
            }
        }
        out
    }

    fn list(&mut self, head: &Node) -> Result<Vec<Node>, TurtleError> {
        let malformed = || TurtleError::MalformedList {
            node: format!("{head:?}"),
        };
        let nil = Node::Iri(format!("{RDF}nil"));
        let mut items = Vec::new();
        let mut cur = head.clone();
        let mut seen = HashSet::new();
        while cur != nil {
            if !matches!(cur, Node::Blank(_)) || !seen.insert(cur.clone()) {
                return Err(malformed());
            }
            let props = self.props(&cur);
            let first = props.get(&format!("{RDF}first"));
            let rest = props.get(&format!("{RDF}rest"));
            match (first, rest) {
                (Some(f), Some(r)) if f.len() == 1 && r.len() == 1 && props.len() == 2 => {
                    self.used[f[0].0] = true;
                    self.used[r[0].0] = true;
                    items.push(f[0].1.clone());
                    cur = r[0].1.clone();
                }
                _ => return Err(malformed()),
            }
        }
        Ok(items)
    }

    fn individual(&mut self, n: &Node, at: usize) -> Option<String> {
        match n {
            Node::Iri(iri) if !is_vocabulary(iri) => Some(self.local(iri)),
            _ => {
                self.diag(at, "expected a named individual");
                None
            }
        }
    }

    fn role(&mut self, n: &Node, at: usize) -> Step<RoleExpr> {
        match n {
            Node::Iri(iri) if !is_vocabulary(iri) => Ok(Some(RoleExpr::named(self.local(iri)))),
            Node::Blank(_) => {
                if let Some(r) = self.roles.get(n) {
                    return Ok(Some(r.clone()));
                }
                let props = self.props(n);
                let inv = owl("inverseOf");
                match props.get(&inv) {
                    Some(v) if v.len() == 1 && props.len() == 1 => {
                        let (i, o) = v[0].clone();
                        self.used[i] = true;
                        let r = self.role(&o, i)?.map(|r| r.inverse());
                        if let Some(r) = &r {
                            self.roles.insert(n.clone(), r.clone());
                        }
                        Ok(r)
                    }
                    _ => {
                        self.diag(at, "unsupported property expression");
                        self.consume(n);
                        Ok(None)
                    }
                }
            }
            _ => {
                self.diag(at, "unsupported property expression");
                Ok(None)
            }
        }
    }

    fn class(&mut self, n: &Node, at: usize) -> Step<ConceptExpr> {
        match n {
            Node::Iri(iri) if *iri == owl("Thing") => Ok(Some(ConceptExpr::Top)),
            Node::Iri(iri) if *iri == owl("Nothing") => Ok(Some(ConceptExpr::Bottom)),
            Node::Iri(iri) if !is_vocabulary(iri) => Ok(Some(ConceptExpr::atomic(self.local(iri)))),
            Node::Blank(_) => {
                if let Some(c) = self.classes.get(n) {
                    return Ok(Some(c.clone()));
                }
                let c = self.class_expression(n)?;
                match &c {
                    Some(c) => {
                        self.classes.insert(n.clone(), c.clone());
                    }
                    None => {
                        self.diag(at, "unsupported class expression");
                        self.consume(n);
                    }
                }
                Ok(c)
            }
            _ => {
                self.diag(at, "unsupported class expression");
                Ok(None)
            }
        }
    }

    fn class_expression(&mut self, n: &Node) -> Step<ConceptExpr> {
        let mut props = self.props(n);
        let single = |props: &mut BTreeMap<String, Vec<(usize, Node)>>, key: &str| match props.remove(&owl(key)) {
            Some(mut v) if v.len() == 1 => Some(v.pop().unwrap()),
            _ => None,
        };
        let kind = props.remove(&format!("{RDF}type"));
        let kind = match kind.as_deref() {
            None => None,
            Some([(i, Node::Iri(t))]) if *t == owl("Class") || *t == owl("Restriction") => Some((*i, t.clone())),
            Some(_) => return Ok(None),
        };
        let mut used = vec![];
        if let Some((i, _)) = kind {
            used.push(i);
        }
        let result = if let Some((i, list)) = single(&mut props, "intersectionOf") {
            used.push(i);
            self.class_list(&list, i)?.map(ConceptExpr::And)
        } else if let Some((i, list)) = single(&mut props, "unionOf") {
            used.push(i);
            self.class_list(&list, i)?.map(ConceptExpr::Or)
        } else if let Some((i, list)) = single(&mut props, "oneOf") {
            used.push(i);
            let mut names = BTreeSet::new();
            for m in self.list(&list)? {
                match self.individual(&m, i) {
                    Some(name) => names.insert(name),
                    None => return Ok(None),
                };
            }
            (!names.is_empty()).then_some(ConceptExpr::Nominal(names))
        } else if let Some((i, d)) = single(&mut props, "complementOf") {
            used.push(i);
            self.class(&d, i)?.map(|d| ConceptExpr::Not(Box::new(d)))
        } else if let Some((i, p)) = single(&mut props, "onProperty") {
            used.push(i);
            let Some(r) = self.role(&p, i)? else {
                return Ok(None);
            };
            let filler =
                |this: &mut Self, props: &mut BTreeMap<_, _>, used: &mut Vec<usize>| match single(props, "onClass") {
                    Some((i, d)) => {
                        used.push(i);
                        this.class(&d, i)
                    }
                    None => Ok(None),
                };
            if let Some((i, d)) = single(&mut props, "someValuesFrom") {
                used.push(i);
                self.class(&d, i)?.map(|d| ConceptExpr::Exists(r, Box::new(d)))
            } else if let Some((i, d)) = single(&mut props, "allValuesFrom") {
                used.push(i);
                self.class(&d, i)?.map(|d| ConceptExpr::ForAll(r, Box::new(d)))
            } else if let Some((i, k)) = single(&mut props, "minQualifiedCardinality") {
                used.push(i);
                match (cardinality(&k), filler(self, &mut props, &mut used)?) {
                    (Some(k), Some(d)) => Some(ConceptExpr::AtLeast(k, r, Box::new(d))),
                    _ => None,
                }
            } else if let Some((i, k)) = single(&mut props, "maxQualifiedCardinality") {
                used.push(i);
                match (cardinality(&k), filler(self, &mut props, &mut used)?) {
                    (Some(k), Some(d)) => Some(ConceptExpr::AtMost(k, r, Box::new(d))),
                    _ => None,
                }
            } else if let Some((i, v)) = single(&mut props, "hasSelf") {
                used.push(i);
                is_true(&v).then_some(ConceptExpr::SelfRestriction(r))
            } else {
                None
            }
        } else {
            None
        };
        if result.is_none() || !props.is_empty() {
            return Ok(None);
        }
        for i in used {
            self.used[i] = true;
        }
        Ok(result)
    }

    fn class_list(&mut self, list: &Node, at: usize) -> Step<Vec<ConceptExpr>> {
        let mut out = Vec::new();
        for m in self.list(list)? {
            match self.class(&m, at)? {
                Some(c) => out.push(c),
                None => return Ok(None),
            }
        }
        Ok((out.len() >= 2).then_some(out))
    }

    fn statement(&mut self, i: usize) -> Result<Vec<Axiom>, TurtleError> {
        let t = &self.graph.triples[i];
        let (s, p, o) = (t.s.clone(), t.p.as_str(), t.o.clone());
        let none = Ok(vec![]);
        let rdf_type = format!("{RDF}type");

        if p == rdf_type {
            let ty = match &o {
                Node::Iri(ty) => ty.clone(),
                _ => String::new(),
            };
            let role_property = [
                ("TransitiveProperty", Axiom::TransitiveRole as fn(RoleExpr) -> Axiom),
                ("AsymmetricProperty", Axiom::AsymmetricRole),
                ("ReflexiveProperty", Axiom::ReflexiveRole),
                ("IrreflexiveProperty", Axiom::IrreflexiveRole),
            ];
            if let Some((_, make)) = role_property.iter().find(|(k, _)| ty == owl(k)) {
                return Ok(self.role(&s, i)?.map(make).into_iter().collect());
            }
            if ty == owl("SymmetricProperty") {
                self.diag(i, "symmetric properties are not supported");
                return none;
            }
            if ty == owl("AllDisjointProperties") {
                return self.disjoint_properties(&s, i);
            }
            if ty == owl("NegativePropertyAssertion") {
                return self.negative_assertion(&s, i);
            }
            if is_vocabulary(&ty) {
                self.diag(i, "declaration is not translated");
                return none;
            }
            let Some(a) = self.individual(&s, i) else {
                return none;
            };
            return Ok(self
                .class(&o, i)?
                .map(|c| Axiom::ConceptAssertion(c, a))
                .into_iter()
                .collect());
        }

        let classes = |this: &mut Self| -> Step<(ConceptExpr, ConceptExpr)> {
            let c = this.class(&s, i)?;
            let d = this.class(&o, i)?;
            Ok(c.zip(d))
        };
        let roles = |this: &mut Self| -> Step<(RoleExpr, RoleExpr)> {
            let r = this.role(&s, i)?;
            let q = this.role(&o, i)?;
            Ok(r.zip(q))
        };
        let inds = |this: &mut Self| -> Option<(String, String)> {
            let a = this.individual(&s, i);
            let b = this.individual(&o, i);
            a.zip(b)
        };
        let axiom = if p == format!("{RDFS}subClassOf") {
            classes(self)?.map(|(c, d)| Axiom::ConceptInclusion(c, d))
        } else if p == owl("equivalentClass") {
            classes(self)?.map(|(c, d)| Axiom::ConceptEquivalence(c, d))
        } else if p == format!("{RDFS}subPropertyOf") {
            roles(self)?.map(|(r, q)| Axiom::RoleInclusion(r, q))
        } else if p == owl("equivalentProperty") {
            roles(self)?.map(|(r, q)| Axiom::RoleEquivalence(r, q))
        } else if p == owl("inverseOf") {
            roles(self)?.map(|(r, q)| Axiom::RoleEquivalence(r, q.inverse()))
        } else if p == owl("propertyDisjointWith") {
            roles(self)?.map(|(r, q)| Axiom::DisjointRoles(r, q))
        } else if p == format!("{RDFS}domain") || p == format!("{RDFS}range") {
            let r = self.role(&s, i)?;
            let c = self.class(&o, i)?;
            r.zip(c).map(|(r, c)| {
                if p.ends_with("domain") {
                    Axiom::Domain(r, c)
                } else {
                    Axiom::Range(r, c)
                }
            })
        } else if p == owl("sameAs") || p == owl("sameIndividualAs") {
            inds(self).map(|(a, b)| Axiom::SameIndividual(a, b))
        } else if p == owl("differentFrom") {
            inds(self).map(|(a, b)| Axiom::DifferentIndividuals(a, b))
        } else if p == owl("propertyChainAxiom") {
            let sup = self.role(&s, i)?;
            let mut chain = Some(vec![]);
            for m in self.list(&o)? {
                let r = self.role(&m, i)?;
                chain = chain.zip(r).map(|(mut c, r)| {
                    c.push(r);
                    c
                });
            }
            match chain.zip(sup) {
                Some((chain, sup)) => {
                    let ax = Axiom::role_chain(chain, sup);
                    if ax.is_none() {
                        self.diag(i, "empty property chain");
                    }
                    ax
                }
                None => None,
            }
        } else if is_vocabulary(p) {
            self.diag(i, "unsupported predicate");
            self.consume(&o);
            None
        } else if matches!(o, Node::Literal { .. }) {
            self.diag(i, "data property assertions are not supported");
            None
        } else {
            let r = RoleExpr::named(self.local(p));
            inds(self).map(|(a, b)| Axiom::role_assertion(r, a, b))
        };
        Ok(axiom.into_iter().collect())
    }

    fn disjoint_properties(&mut self, s: &Node, at: usize) -> Result<Vec<Axiom>, TurtleError> {
        let mut props = self.props(s);
        let Some(members) = props.remove(&owl("members")).filter(|v| v.len() == 1) else {
            self.diag(at, "owl:AllDisjointProperties without a single owl:members list");
            return Ok(vec![]);
        };
        let (i, list) = members[0].clone();
        self.used[i] = true;
        let mut roles = Vec::new();
        for m in self.list(&list)? {
            match self.role(&m, i)? {
                Some(r) => roles.push(r),
                None => return Ok(vec![]),
            }
        }
        let mut out = Vec::new();
        for (k, r) in roles.iter().enumerate() {
            for q in &roles[k + 1..] {
                out.push(Axiom::DisjointRoles(r.clone(), q.clone()));
            }
        }
        Ok(out)
    }

    fn negative_assertion(&mut self, s: &Node, at: usize) -> Result<Vec<Axiom>, TurtleError> {
        let props = self.props(s);
        let get = |key: &str| match props.get(&owl(key)).map(Vec::as_slice) {
            Some([one]) => Some(one.clone()),
            _ => None,
        };
        let parts = (
            get("sourceIndividual"),
            get("assertionProperty"),
            get("targetIndividual"),
        );
        let (Some(src), Some(prop), Some(tgt)) = parts else {
            self.diag(at, "incomplete owl:NegativePropertyAssertion");
            return Ok(vec![]);
        };
        for i in [src.0, prop.0, tgt.0] {
            self.used[i] = true;
        }
        let a = self.individual(&src.1, src.0);
        let r = self.role(&prop.1, prop.0)?;
        let b = self.individual(&tgt.1, tgt.0);
        Ok(match (a, r, b) {
            (Some(a), Some(r), Some(b)) => vec![Axiom::negated_role_assertion(r, a, b)],
            _ => vec![],
        })
    }
}

fn cardinality(n: &Node) -> Option<u32> {
    match n {
        Node::Literal { value, datatype }
            if *datatype == format!("{XSD}nonNegativeInteger") || *datatype == format!("{XSD}integer") =>
        {
            value.parse().ok()
        }
        _ => None,
    }
}

fn is_true(n: &Node) -> bool {
    matches!(n, Node::Literal { value, datatype } if value == "true" && *datatype == format!("{XSD}boolean"))
}
