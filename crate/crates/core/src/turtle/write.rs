use super::{TurtleDoc, TurtleError};
use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};

/// `:name` when `name` is a valid local name in the default namespace.
pub fn turtle_name(name: &str) -> Option<String> {
    let mut chars = name.chars();
    let first = chars.next()?;
    let ok = (first.is_alphanumeric() || first == '_') && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '-');
    ok.then(|| format!(":{name}"))
}

/// Serializes every axiom of `kb`, one statement group per axiom in input
/// order. Rules have no Turtle form and are rejected.
pub fn to_turtle(kb: &KnowledgeBase) -> Result<TurtleDoc, TurtleError> {
    if let Some(rule) = kb.rules().first() {
        return Err(TurtleError::Unsupported {
            axiom: rule.to_string(),
            reason: "rules have no Turtle serialization".into(),
        });
    }
    let groups = kb
        .axioms()
        .iter()
        .map(|ax| {
            axiom_group(ax).map_err(|reason| TurtleError::Unsupported {
                axiom: ax.to_string(),
                reason,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(TurtleDoc::new(groups))
}

type Render = Result<String, String>;

fn name(n: &str) -> Render {
    turtle_name(n).ok_or_else(|| format!("`{n}` is not a valid local name"))
}

fn role(r: &RoleExpr) -> Render {
    match r {
        RoleExpr::Named(n) => name(n),
        RoleExpr::Inverse(n) => Ok(format!("[ owl:inverseOf {} ]", name(n)?)),
        RoleExpr::Universal => Err("the universal role has no Turtle mapping".into()),
    }
}

fn list(items: impl IntoIterator<Item = Render>) -> Render {
    let items: Vec<String> = items.into_iter().collect::<Result<_, _>>()?;
    Ok(format!("({})", items.join(" ")))
}

fn class(c: &ConceptExpr) -> Render {
    use ConceptExpr::*;
    Ok(match c {
        Atomic(n) => name(n)?,
        Top => "owl:Thing".into(),
        Bottom => "owl:Nothing".into(),
        Not(d) => format!("[ a owl:Class ; owl:complementOf {} ]", class(d)?),
        And(cs) => format!("[ a owl:Class ; owl:intersectionOf {} ]", list(cs.iter().map(class))?),
        Or(cs) => format!("[ a owl:Class ; owl:unionOf {} ]", list(cs.iter().map(class))?),
        Nominal(inds) => format!("[ a owl:Class ; owl:oneOf {} ]", list(inds.iter().map(|i| name(i)))?),
        Exists(r, d) => restriction(r, format!("owl:someValuesFrom {}", class(d)?))?,
        ForAll(r, d) => restriction(r, format!("owl:allValuesFrom {}", class(d)?))?,
        AtLeast(n, r, d) => restriction(
            r,
            format!(
                "owl:minQualifiedCardinality \"{n}\"^^xsd:nonNegativeInteger ; owl:onClass {}",
                class(d)?
            ),
        )?,
        AtMost(n, r, d) => restriction(
            r,
            format!(
                "owl:maxQualifiedCardinality \"{n}\"^^xsd:nonNegativeInteger ; owl:onClass {}",
                class(d)?
            ),
        )?,
        SelfRestriction(r) => restriction(r, "owl:hasSelf true".into())?,
    })
}

fn restriction(r: &RoleExpr, body: String) -> Render {
    Ok(format!("[ a owl:Restriction ; owl:onProperty {} ; {body} ]", role(r)?))
}

fn axiom_group(ax: &Axiom) -> Render {
    use Axiom::*;
    let triple = |s: String, p: &str, o: String| format!("{s} {p} {o} .");
    Ok(match ax {
        ConceptInclusion(c, d) => triple(class(c)?, "rdfs:subClassOf", class(d)?),
        ConceptEquivalence(c, d) => triple(class(c)?, "owl:equivalentClass", class(d)?),
        ConceptAssertion(c, a) => triple(name(a)?, "a", class(c)?),
        RoleAssertion(r, a, b) => match r {
            RoleExpr::Named(n) => triple(name(a)?, &name(n)?, name(b)?),
            RoleExpr::Inverse(n) => triple(name(b)?, &name(n)?, name(a)?),
            RoleExpr::Universal => return Err("the universal role has no Turtle mapping".into()),
        },
        NegatedRoleAssertion(r, a, b) => format!(
            "[] a owl:NegativePropertyAssertion ; owl:sourceIndividual {} ; owl:assertionProperty {} ; owl:targetIndividual {} .",
            name(a)?,
            role(r)?,
            name(b)?
        ),
        SameIndividual(a, b) => triple(name(a)?, "owl:sameAs", name(b)?),
        DifferentIndividuals(a, b) => triple(name(a)?, "owl:differentFrom", name(b)?),
        RoleInclusion(r, s) => triple(role(r)?, "rdfs:subPropertyOf", role(s)?),
        RoleEquivalence(r, s) => triple(role(r)?, "owl:equivalentProperty", role(s)?),
        ComplexRoleInclusion(chain, s) => {
            triple(role(s)?, "owl:propertyChainAxiom", list(chain.iter().map(role))?)
        }
        TransitiveRole(r) => triple(role(r)?, "a", "owl:TransitiveProperty".into()),
        AsymmetricRole(r) => triple(role(r)?, "a", "owl:AsymmetricProperty".into()),
        ReflexiveRole(r) => triple(role(r)?, "a", "owl:ReflexiveProperty".into()),
        IrreflexiveRole(r) => triple(role(r)?, "a", "owl:IrreflexiveProperty".into()),
        DisjointRoles(r, s) => format!(
            "[] a owl:AllDisjointProperties ; owl:members {} .",
            list([role(r), role(s)])?
        ),
        Domain(r, c) => triple(role(r)?, "rdfs:domain", class(c)?),
        Range(r, c) => triple(role(r)?, "rdfs:range", class(c)?),
    })
}
