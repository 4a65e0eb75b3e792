//! Admissibility checks run before reasoning.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Axiom, ConceptExpr, KnowledgeBase, RoleExpr};
use crate::normalize::{check_regularity, guard_all, role_closure, RoleClosure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiagnosticCode {
    IrregularRoleBox,
    NonSimpleRole,
    UniversalRole,
    UnsafeRule,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub message: String,
}

impl Diagnostic {
    pub(crate) fn error(code: DiagnosticCode, message: String) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}", self.message)
    }
}

/// Returns an empty list iff the knowledge base can be handed to the
/// reasoners.
pub fn validate(kb: &KnowledgeBase) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if let Err(e) = check_regularity(kb.rbox()) {
        out.push(Diagnostic::error(DiagnosticCode::IrregularRoleBox, e.to_string()));
    }

    let closure = role_closure(kb);
    let mut reported = BTreeSet::new();
    for ax in kb.axioms() {
        check_axiom(ax, &closure, &mut reported, &mut out);
    }

    for rule in kb.rules() {
        let guarded = guard_all(rule.clone());
        if !guarded.is_dl_safe() {
            out.push(Diagnostic::error(
                DiagnosticCode::UnsafeRule,
                format!("rule `{rule}` is not DL-safe"),
            ));
        }
    }
    out
}

fn check_axiom(
    ax: &Axiom,
    closure: &RoleClosure,
    reported: &mut BTreeSet<(String, &'static str)>,
    out: &mut Vec<Diagnostic>,
) {
    let mut need_simple = |r: &RoleExpr, context: &'static str, out: &mut Vec<Diagnostic>| {
        if r.is_universal() || closure.is_simple(r) {
            return;
        }
        let name = r.name().unwrap_or_default().to_string();
        if reported.insert((name.clone(), context)) {
            out.push(Diagnostic::error(
                DiagnosticCode::NonSimpleRole,
                format!("role `{name}` is not simple but is used in {context}"),
            ));
        }
    };

    let mut universal = ax.direct_roles().into_iter().any(RoleExpr::is_universal);
    for c in ax.concepts() {
        c.walk(&mut |sub| match sub {
            ConceptExpr::AtLeast(_, r, _) | ConceptExpr::AtMost(_, r, _) => need_simple(r, "a number restriction", out),
            ConceptExpr::SelfRestriction(r) => need_simple(r, "a self restriction", out),
            _ => {}
        });
        universal |= c.roles().into_iter().any(RoleExpr::is_universal);
    }
    match ax {
        Axiom::DisjointRoles(r, s) => {
            need_simple(r, "a disjointness axiom", out);
            need_simple(s, "a disjointness axiom", out);
        }
        Axiom::NegatedRoleAssertion(r, ..) => need_simple(r, "a negated role assertion", out),
        Axiom::IrreflexiveRole(r) => need_simple(r, "an irreflexivity axiom", out),
        Axiom::AsymmetricRole(r) => need_simple(r, "an asymmetry axiom", out),
        _ => {}
    }
    if universal {
        out.push(Diagnostic::error(
            DiagnosticCode::UniversalRole,
            format!("the universal role is not supported in reasoning: `{ax}`"),
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_dl;

    #[test]
    fn table_four_is_admissible() {
        let kb = parse_dl("starredIn o starredIn SUBROLE co-starred.\nDIS parentOf childOf.\nTRANS basedOn.").unwrap();
        assert!(validate(&kb).is_empty());
    }

    #[test]
    fn empty_kb_is_admissible() {
        assert!(validate(&KnowledgeBase::empty()).is_empty());
    }

    #[test]
    fn non_simple_role_in_number_restriction() {
        let kb =
            parse_dl("partOf o starredIn SUBROLE co-starredWith.\nMAX 1 co-starredWith TOP SUBCLASS TOP.").unwrap();
        let diags = validate(&kb);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::NonSimpleRole);
        assert!(diags[0].message.contains("co-starredWith"));
    }

    #[test]
    fn transitive_role_in_disjointness() {
        let kb = parse_dl("TRANS r.\nDIS r s.\nIRR r.\nx NOT r y.").unwrap();
        let codes: Vec<_> = validate(&kb).iter().map(|d| d.code).collect();
        assert_eq!(codes, vec![DiagnosticCode::NonSimpleRole; 3]);
    }

    #[test]
    fn irregular_rbox_reported() {
        let kb = parse_dl("r o s SUBROLE r.\ns o r SUBROLE s.").unwrap();
        assert!(validate(&kb).iter().any(|d| d.code == DiagnosticCode::IrregularRoleBox));
    }

    #[test]
    fn universal_role_reported() {
        let kb = parse_dl("A SUBCLASS UNIVERSAL SOME B.").unwrap();
        let diags = validate(&kb);
        assert_eq!(diags[0].code, DiagnosticCode::UniversalRole);
    }

    #[test]
    fn unguarded_rule_is_admissible_after_guarding() {
        let kb = parse_dl("AwardWinnerActor(?x) <- won(?x,?y).").unwrap();
        assert!(validate(&kb).is_empty());
    }
}
