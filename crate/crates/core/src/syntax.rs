//! Textual DL syntax: one `.`-terminated statement per axiom or rule, `#`
//! comments, ASCII keywords for the constructors.
//!
//! ```text
//! liveAction SUBCLASS Movie.
//! Narrator EQUIV Lector.
//! partOf o starredIn SUBROLE co-starredWith.
//! activeActor SUBCLASS lives SOME Actor AND lives ONLY canAct.
//! Zambezia : computerAnimation.
//! Unforgiven directedBy ClintEastwood.
//! AwardWinnerActor(?x) <- won(?x,?y).
//! ```

use std::fmt;

use thiserror::Error;

use crate::model::{
    Atom, Axiom, ConceptExpr, DlSafeRule, KnowledgeBase, ModelError, RoleExpr, Term, MAX_CARDINALITY,
    NAMED_INDIVIDUAL_PREDICATE,
};

const RESERVED: &[&str] = &[
    "SUBCLASS",
    "EQUIV",
    "SUBROLE",
    "EQUIVROLE",
    "o",
    "TRANS",
    "DIS",
    "ASY",
    "REF",
    "IRR",
    "SAME",
    "DIFF",
    "NOT",
    "AND",
    "OR",
    "SOME",
    "ONLY",
    "MIN",
    "MAX",
    "SELF",
    "ONEOF",
    "DOMAIN",
    "RANGE",
    "INV",
    "UNIVERSAL",
    "TOP",
    "BOTTOM",
];

pub fn is_reserved(word: &str) -> bool {
    RESERVED.contains(&word)
}

/// True if `s` can be written as a bare identifier in the DL syntax.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => {}
        _ => return false,
    }
    chars.all(is_ident_continue) && !is_reserved(s)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("syntax error: found {found}, expected one of: {}", .expected.join(", "))]
    Syntax { found: String, expected: Vec<String> },
    #[error("atom `{name}` has {arity} argument(s); {expected}")]
    Arity {
        name: String,
        arity: usize,
        expected: &'static str,
    },
    #[error("cardinality {0} exceeds the maximum of 2147483647")]
    CardinalityTooLarge(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Number(String),
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Question,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Question => f.write_str("`?`"),
            Tok::Arrow => f.write_str("`<-`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        let tok = if is_ident_start(c) {
            let mut w = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                w.push(bump(&mut chars));
            }
            Tok::Word(w)
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                n.push(bump(&mut chars));
            }
            Tok::Number(n)
        } else {
            bump(&mut chars);
            match c {
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '?' => Tok::Question,
                '<' if chars.peek() == Some(&'-') => {
                    bump(&mut chars);
                    Tok::Arrow
                }
                other => {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        kind: ParseErrorKind::UnexpectedChar(other),
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Axiom(Axiom),
    Rule(DlSafeRule),
}

/// A statement with the position of its first token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub column: usize,
    pub statement: Statement,
}

/// Builds a knowledge base from statements in order.
pub fn knowledge_base(statements: &[Located]) -> Result<KnowledgeBase, ModelError> {
    let mut axioms = vec![];
    let mut rules = vec![];
    for s in statements {
        match &s.statement {
            Statement::Axiom(a) => axioms.push(a.clone()),
            Statement::Rule(r) => rules.push(r.clone()),
        }
    }
    KnowledgeBase::new(axioms, rules)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    /// Position reported when the statement ends early (its terminating dot).
    end: (usize, usize),
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.column)).unwrap_or(self.end)
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (line, column) = self.here();
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of statement".to_string(),
        };
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax {
                found,
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        }
    }

    fn error_kind(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.here();
        ParseError { line, column, kind }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, label: &str) -> PResult<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_word() == Some(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(&[kw]))
        }
    }

    fn ident(&mut self, label: &str) -> PResult<String> {
        match self.peek() {
            Some(Tok::Word(w)) if !is_reserved(w) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error(&[label])),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error(&["`.`"]))
        }
    }

    /// Index of the first depth-0 token satisfying `pred`.
    fn find_top_level(&self, pred: impl Fn(&Tok) -> bool) -> Option<usize> {
        let mut depth = 0i32;
        for (i, s) in self.toks.iter().enumerate() {
            match s.tok {
                Tok::LParen | Tok::LBrace => depth += 1,
                Tok::RParen | Tok::RBrace => depth -= 1,
                _ => {}
            }
            if depth == 0 && pred(&s.tok) {
                return Some(i);
            }
        }
        None
    }

    fn statement(&mut self) -> PResult<Statement> {
        if self.find_top_level(|t| *t == Tok::Arrow).is_some() {
            return self.rule().map(Statement::Rule);
        }
        let ax = match self.peek_word() {
            Some("TRANS") => {
                self.pos += 1;
                Axiom::TransitiveRole(self.role()?)
            }
            Some("ASY") => {
                self.pos += 1;
                Axiom::AsymmetricRole(self.role()?)
            }
            Some("REF") => {
                self.pos += 1;
                Axiom::ReflexiveRole(self.role()?)
            }
            Some("IRR") => {
                self.pos += 1;
                Axiom::IrreflexiveRole(self.role()?)
            }
            Some("DIS") => {
                self.pos += 1;
                let r = self.role()?;
                let s = self.role()?;
                Axiom::DisjointRoles(r, s)
            }
            _ => self.binary_statement()?,
        };
        self.finish()?;
        Ok(Statement::Axiom(ax))
    }

    fn binary_statement(&mut self) -> PResult<Axiom> {
        const OPS: &[&str] = &[
            "SUBCLASS",
            "EQUIV",
            "SUBROLE",
            "EQUIVROLE",
            "DOMAIN",
            "RANGE",
            "SAME",
            "DIFF",
        ];
        let op = self.find_top_level(|t| matches!(t, Tok::Word(w) if OPS.contains(&w.as_str())));
        let op = op.map(|i| match &self.toks[i].tok {
            Tok::Word(w) => w.clone(),
            _ => unreachable!(),
        });
        match op.as_deref() {
            Some("SUBCLASS") => {
                let sub = self.concept()?;
                self.expect_keyword("SUBCLASS")?;
                Ok(Axiom::ConceptInclusion(sub, self.concept()?))
            }
            Some("EQUIV") => {
                let a = self.concept()?;
                self.expect_keyword("EQUIV")?;
                Ok(Axiom::ConceptEquivalence(a, self.concept()?))
            }
            Some("SUBROLE") => {
                let mut chain = vec![self.role()?];
                while self.eat_keyword("o") {
                    chain.push(self.role()?);
                }
                self.expect_keyword("SUBROLE")?;
                let sup = self.role()?;
                Ok(Axiom::role_chain(chain, sup).expect("chain is nonempty"))
            }
            Some("EQUIVROLE") => {
                let r = self.role()?;
                self.expect_keyword("EQUIVROLE")?;
                Ok(Axiom::RoleEquivalence(r, self.role()?))
            }
            Some("DOMAIN") => {
                let r = self.role()?;
                self.expect_keyword("DOMAIN")?;
                Ok(Axiom::Domain(r, self.concept()?))
            }
            Some("RANGE") => {
                let r = self.role()?;
                self.expect_keyword("RANGE")?;
                Ok(Axiom::Range(r, self.concept()?))
            }
            Some("SAME") => {
                let a = self.ident("individual")?;
                self.expect_keyword("SAME")?;
                Ok(Axiom::SameIndividual(a, self.ident("individual")?))
            }
            Some("DIFF") => {
                let a = self.ident("individual")?;
                self.expect_keyword("DIFF")?;
                Ok(Axiom::DifferentIndividuals(a, self.ident("individual")?))
            }
            _ => self.assertion(),
        }
    }

    fn assertion(&mut self) -> PResult<Axiom> {
        let subject = self.ident("individual")?;
        if self.eat(&Tok::Colon) {
            return Ok(Axiom::ConceptAssertion(self.concept()?, subject));
        }
        let negated = self.eat_keyword("NOT");
        let role = match self.peek() {
            Some(Tok::Word(_)) => self.role()?,
            _ => return Err(self.error(&["`:`", "role", "NOT"])),
        };
        let object = self.ident("individual")?;
        Ok(if negated {
            Axiom::negated_role_assertion(role, subject, object)
        } else {
            Axiom::role_assertion(role, subject, object)
        })
    }

    fn role(&mut self) -> PResult<RoleExpr> {
        match self.peek_word() {
            Some("INV") => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let r = match self.peek_word() {
                    Some("INV") => self.role()?.inverse(),
                    _ => RoleExpr::Named(self.ident("role name")?),
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(match r {
                    RoleExpr::Named(n) => RoleExpr::Inverse(n),
                    other => other.inverse(),
                })
            }
            Some("UNIVERSAL") => {
                self.pos += 1;
                Ok(RoleExpr::Universal)
            }
            _ => Ok(RoleExpr::Named(self.ident("role")?)),
        }
    }

    fn concept(&mut self) -> PResult<ConceptExpr> {
        let mut parts = vec![self.conjunction()?];
        while self.eat_keyword("OR") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ConceptExpr::or(parts)
        })
    }

    fn conjunction(&mut self) -> PResult<ConceptExpr> {
        let mut parts = vec![self.unary()?];
        while self.eat_keyword("AND") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            ConceptExpr::and(parts)
        })
    }

    fn cardinality(&mut self) -> PResult<u32> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                let n = n.clone();
                let value = n
                    .parse::<u64>()
                    .ok()
                    .filter(|v| *v <= MAX_CARDINALITY as u64)
                    .ok_or_else(|| self.error_kind(ParseErrorKind::CardinalityTooLarge(n)))?;
                self.pos += 1;
                Ok(value as u32)
            }
            _ => Err(self.error(&["number"])),
        }
    }

    fn unary(&mut self) -> PResult<ConceptExpr> {
        const CONCEPT: &[&str] = &["concept", "TOP", "BOTTOM", "NOT", "MIN", "MAX", "ONEOF", "`(`"];
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.concept()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            Some(Tok::Word(w)) => match w.as_str() {
                "TOP" => {
                    self.pos += 1;
                    Ok(ConceptExpr::Top)
                }
                "BOTTOM" => {
                    self.pos += 1;
                    Ok(ConceptExpr::Bottom)
                }
                "NOT" => {
                    self.pos += 1;
                    Ok(ConceptExpr::not(self.unary()?))
                }
                "MIN" | "MAX" => {
                    let at_least = w == "MIN";
                    self.pos += 1;
                    let n = self.cardinality()?;
                    let r = self.role()?;
                    let c = self.unary()?;
                    Ok(if at_least {
                        ConceptExpr::at_least(n, r, c)
                    } else {
                        ConceptExpr::at_most(n, r, c)
                    })
                }
                "ONEOF" => {
                    self.pos += 1;
                    self.expect(Tok::LBrace, "`{`")?;
                    let mut names = vec![self.ident("individual")?];
                    while self.eat(&Tok::Comma) {
                        names.push(self.ident("individual")?);
                    }
                    self.expect(Tok::RBrace, "`}`")?;
                    Ok(ConceptExpr::nominal(names).expect("nonempty"))
                }
                "INV" | "UNIVERSAL" => self.restriction(),
                w if is_reserved(w) => Err(self.error(CONCEPT)),
                _ => {
                    let restriction = matches!(
                        self.peek_at(1),
                        Some(Tok::Word(k)) if k == "SOME" || k == "ONLY" || k == "SELF"
                    );
                    if restriction {
                        self.restriction()
                    } else {
                        Ok(ConceptExpr::Atomic(self.ident("concept")?))
                    }
                }
            },
            _ => Err(self.error(CONCEPT)),
        }
    }

    fn restriction(&mut self) -> PResult<ConceptExpr> {
        let r = self.role()?;
        if self.eat_keyword("SOME") {
            Ok(ConceptExpr::exists(r, self.unary()?))
        } else if self.eat_keyword("ONLY") {
            Ok(ConceptExpr::for_all(r, self.unary()?))
        } else if self.eat_keyword("SELF") {
            Ok(ConceptExpr::SelfRestriction(r))
        } else {
            Err(self.error(&["SOME", "ONLY", "SELF"]))
        }
    }

    fn rule(&mut self) -> PResult<DlSafeRule> {
        let head_pos = self.here();
        let head = self.atom()?;
        self.expect(Tok::Arrow, "`<-`")?;
        let mut body = Vec::new();
        if self.pos < self.toks.len() {
            body.push(self.atom()?);
            while self.eat(&Tok::Comma) {
                body.push(self.atom()?);
            }
        }
        self.finish()?;
        DlSafeRule::new(head, body).map_err(|e| ParseError {
            line: head_pos.0,
            column: head_pos.1,
            kind: e.into(),
        })
    }

    fn atom(&mut self) -> PResult<Atom> {
        let start = self.here();
        let name = self.ident("predicate")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut terms = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            terms.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        let arity_error = |expected| ParseError {
            line: start.0,
            column: start.1,
            kind: ParseErrorKind::Arity {
                name: name.clone(),
                arity: terms.len(),
                expected,
            },
        };
        if name == NAMED_INDIVIDUAL_PREDICATE {
            if terms.len() != 1 {
                return Err(arity_error("the named-individual guard O takes exactly one"));
            }
            return Ok(Atom::NonDl(name, terms));
        }
        let mut it = terms.iter().cloned();
        match terms.len() {
            1 => Ok(Atom::Concept(name.clone(), it.next().unwrap())),
            2 => Ok(Atom::Role(name.clone(), it.next().unwrap(), it.next().unwrap())),
            _ => Err(arity_error("concept atoms take one and role atoms two")),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        if self.eat(&Tok::Question) {
            Ok(Term::Variable(self.ident("variable name")?))
        } else {
            Ok(Term::Constant(self.ident("term")?))
        }
    }
}

/// Parses DL text into statements without assembling a knowledge base.
pub fn parse_statements(text: &str) -> Result<Vec<Located>, ParseError> {
    let toks = lex(text)?;
    let mut out = Vec::new();
    let mut rest = &toks[..];
    while !rest.is_empty() {
        let Some(dot) = rest.iter().position(|s| s.tok == Tok::Dot) else {
            let last = rest.last().unwrap();
            return Err(ParseError {
                line: last.line,
                column: last.column,
                kind: ParseErrorKind::Syntax {
                    found: "end of input".into(),
                    expected: vec!["`.`".into()],
                },
            });
        };
        let (stmt, tail) = rest.split_at(dot);
        let end = (tail[0].line, tail[0].column);
        rest = &tail[1..];
        if stmt.is_empty() {
            return Err(ParseError {
                line: end.0,
                column: end.1,
                kind: ParseErrorKind::Syntax {
                    found: "`.`".into(),
                    expected: vec!["statement".into()],
                },
            });
        }
        let mut p = Parser {
            toks: stmt,
            pos: 0,
            end,
        };
        out.push(Located {
            line: stmt[0].line,
            column: stmt[0].column,
            statement: p.statement()?,
        });
    }
    Ok(out)
}

/// Parses DL text into a knowledge base.
pub fn parse_dl(text: &str) -> Result<KnowledgeBase, ParseError> {
    let statements = parse_statements(text)?;
    knowledge_base(&statements).map_err(|err| {
        // locate the first statement that introduces the collision
        let at = (1..=statements.len())
            .find(|&n| knowledge_base(&statements[..n]).is_err())
            .unwrap_or(1);
        let s = &statements[at - 1];
        ParseError {
            line: s.line,
            column: s.column,
            kind: err.into(),
        }
    })
}

/// Prints a knowledge base in the DL text syntax; axioms first, then rules.
pub fn serialize_dl(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for ax in kb.axioms() {
        out.push_str(&ax.to_string());
        out.push_str(".\n");
    }
    for r in kb.rules() {
        out.push_str(&r.to_string());
        out.push_str(".\n");
    }
    out
}

// Precedence levels: 0 = disjunction, 1 = conjunction, 2 = unary operand.
fn write_concept(f: &mut fmt::Formatter<'_>, c: &ConceptExpr, level: u8) -> fmt::Result {
    match c {
        ConceptExpr::Atomic(n) => write!(f, "{n}"),
        ConceptExpr::Top => f.write_str("TOP"),
        ConceptExpr::Bottom => f.write_str("BOTTOM"),
        ConceptExpr::Not(c) => {
            f.write_str("NOT ")?;
            write_concept(f, c, 2)
        }
        ConceptExpr::And(cs) | ConceptExpr::Or(cs) => {
            let (sep, own) = match c {
                ConceptExpr::And(_) => (" AND ", 1),
                _ => (" OR ", 0),
            };
            if level > own {
                f.write_str("(")?;
            }
            for (i, part) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write_concept(f, part, 2)?;
            }
            if level > own {
                f.write_str(")")?;
            }
            Ok(())
        }
        ConceptExpr::Exists(r, c) => {
            write!(f, "{r} SOME ")?;
            write_concept(f, c, 2)
        }
        ConceptExpr::ForAll(r, c) => {
            write!(f, "{r} ONLY ")?;
            write_concept(f, c, 2)
        }
        ConceptExpr::AtLeast(n, r, c) => {
            write!(f, "MIN {n} {r} ")?;
            write_concept(f, c, 2)
        }
        ConceptExpr::AtMost(n, r, c) => {
            write!(f, "MAX {n} {r} ")?;
            write_concept(f, c, 2)
        }
        ConceptExpr::SelfRestriction(r) => write!(f, "{r} SELF"),
        ConceptExpr::Nominal(ns) => {
            f.write_str("ONEOF{")?;
            for (i, n) in ns.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(n)?;
            }
            f.write_str("}")
        }
    }
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_concept(f, self, 0)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::ConceptInclusion(a, b) => write!(f, "{a} SUBCLASS {b}"),
            Axiom::ConceptEquivalence(a, b) => write!(f, "{a} EQUIV {b}"),
            Axiom::ConceptAssertion(c, a) => write!(f, "{a} : {c}"),
            Axiom::RoleAssertion(r, a, b) => write!(f, "{a} {r} {b}"),
            Axiom::NegatedRoleAssertion(r, a, b) => write!(f, "{a} NOT {r} {b}"),
            Axiom::SameIndividual(a, b) => write!(f, "{a} SAME {b}"),
            Axiom::DifferentIndividuals(a, b) => write!(f, "{a} DIFF {b}"),
            Axiom::RoleInclusion(r, s) => write!(f, "{r} SUBROLE {s}"),
            Axiom::RoleEquivalence(r, s) => write!(f, "{r} EQUIVROLE {s}"),
            Axiom::ComplexRoleInclusion(chain, s) => {
                for (i, r) in chain.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" o ")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, " SUBROLE {s}")
            }
            Axiom::TransitiveRole(r) => write!(f, "TRANS {r}"),
            Axiom::DisjointRoles(r, s) => write!(f, "DIS {r} {s}"),
            Axiom::AsymmetricRole(r) => write!(f, "ASY {r}"),
            Axiom::ReflexiveRole(r) => write!(f, "REF {r}"),
            Axiom::IrreflexiveRole(r) => write!(f, "IRR {r}"),
            Axiom::Domain(r, c) => write!(f, "{r} DOMAIN {c}"),
            Axiom::Range(r, c) => write!(f, "{r} RANGE {c}"),
        }
    }
}

/// Parses a single concept expression, e.g. for command-line queries.
pub fn parse_concept(text: &str) -> Result<ConceptExpr, ParseError> {
    let toks = lex(text)?;
    let end = toks.last().map(|s| (s.line, s.column + 1)).unwrap_or((1, 1));
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end,
    };
    let c = p.concept()?;
    p.finish()?;
    Ok(c)
}
