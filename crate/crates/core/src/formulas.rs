//! The formula language: propositional connectives plus belief, knowledge,
//! and group modalities.
//!
//! Surface syntax, loosest to tightest binding:
//!
//! ```plain
//! iff      := implies ( "<->" iff )?            right-associative
//! implies  := or ( "->" implies )?              right-associative
//! or       := and ( "|" and )*                  left-associative
//! and      := unary ( "&" unary )*              left-associative
//! unary    := "~" unary | modality unary | primary
//! modality := "B[" label "]" | "K[" label "]"
//!           | ("DB" | "CB" | "DK" | "CK") "{" label ("," label)* "}"
//! primary  := "false" | atom | "(" formula ")"
//! ```
//!
//! Atoms and labels are identifiers (`[A-Za-z_][A-Za-z0-9_]*`). `B`, `K`,
//! `DB`, `CB`, `DK`, and `CK` are only special when followed by their
//! bracket, so `B` alone is a perfectly good atom; `false` is always the
//! falsum constant. Modalities bind like negation: `B[a] P & Q` is
//! `(B[a] P) & Q`.
//!
//! [`render`] prints with the fewest parentheses that re-parse to the same
//! tree, so `parse(render(f)) == f` structurally for every formula.

use std::fmt;

use thiserror::Error;

/// Formulas over atom and agent-label strings. Group modality label lists
/// are kept exactly as written (order and duplicates preserved); consumers
/// that need a set view deduplicate themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// `B[label] φ`
    Belief(String, Box<Formula>),
    /// `K[label] φ`
    Knowledge(String, Box<Formula>),
    /// `DB{labels} φ`
    DistributedBelief(Vec<String>, Box<Formula>),
    /// `CB{labels} φ`
    CommonBelief(Vec<String>, Box<Formula>),
    /// `DK{labels} φ`
    DistributedKnowledge(Vec<String>, Box<Formula>),
    /// `CK{labels} φ`
    CommonKnowledge(Vec<String>, Box<Formula>),
}

pub fn atom(name: impl Into<String>) -> Formula {
    Formula::Atom(name.into())
}

pub fn bottom() -> Formula {
    Formula::Bottom
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::Iff(Box::new(a), Box::new(b))
}

pub fn belief(label: impl Into<String>, f: Formula) -> Formula {
    Formula::Belief(label.into(), Box::new(f))
}

pub fn knowledge(label: impl Into<String>, f: Formula) -> Formula {
    Formula::Knowledge(label.into(), Box::new(f))
}

pub fn distributed_belief<I: IntoIterator<Item = S>, S: Into<String>>(labels: I, f: Formula) -> Formula {
    Formula::DistributedBelief(labels.into_iter().map(Into::into).collect(), Box::new(f))
}

pub fn common_belief<I: IntoIterator<Item = S>, S: Into<String>>(labels: I, f: Formula) -> Formula {
    Formula::CommonBelief(labels.into_iter().map(Into::into).collect(), Box::new(f))
}

pub fn distributed_knowledge<I: IntoIterator<Item = S>, S: Into<String>>(labels: I, f: Formula) -> Formula {
    Formula::DistributedKnowledge(labels.into_iter().map(Into::into).collect(), Box::new(f))
}

pub fn common_knowledge<I: IntoIterator<Item = S>, S: Into<String>>(labels: I, f: Formula) -> Formula {
    Formula::CommonKnowledge(labels.into_iter().map(Into::into).collect(), Box::new(f))
}

/// A parse failure, carrying the byte offset of the offending token.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// A parse failure inside a multi-line formula file.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct LinesError {
    pub line: usize,
    #[source]
    pub source: ParseError,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s:?}"),
            Tok::Tilde => f.write_str("'~'"),
            Tok::Amp => f.write_str("'&'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::DArrow => f.write_str("'<->'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Comma => f.write_str("','"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, i));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, i));
                i += 1;
            }
            '{' => {
                toks.push((Tok::LBrace, i));
                i += 1;
            }
            '}' => {
                toks.push((Tok::RBrace, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError {
                        offset: i,
                        message: "expected '->' after '-'".into(),
                    });
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::DArrow, i));
                    i += 3;
                } else {
                    return Err(ParseError {
                        offset: i,
                        message: "expected '<->' after '<'".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, context: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {t} {context}")))
        }
    }

    fn unexpected(&self, message: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("{message}, found {t}"),
            None => format!("{message}, found end of input"),
        };
        ParseError {
            offset: self.offset(),
            message: found,
        }
    }

    fn ident(&mut self, context: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(s)) = self.bump() else { unreachable!() };
                Ok(s)
            }
            _ => Err(self.unexpected(&format!("expected an identifier {context}"))),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let left = self.implies()?;
        if self.eat(&Tok::DArrow) {
            let right = self.iff()?;
            Ok(iff(left, right))
        } else {
            Ok(left)
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let left = self.or()?;
        if self.eat(&Tok::Arrow) {
            let right = self.implies()?;
            Ok(implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.and()?;
        while self.eat(&Tok::Pipe) {
            let right = self.and()?;
            left = or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.eat(&Tok::Amp) {
            let right = self.unary()?;
            left = and(left, right);
        }
        Ok(left)
    }

    fn label_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(&Tok::LBrace, "to open the label list")?;
        let mut labels = vec![self.ident("as a group member label")?];
        while self.eat(&Tok::Comma) {
            labels.push(self.ident("as a group member label")?);
        }
        self.expect(&Tok::RBrace, "to close the label list")?;
        Ok(labels)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(not(self.unary()?));
        }
        // A modality keyword is only a modality when its bracket follows.
        if let Some(Tok::Ident(name)) = self.peek() {
            let next = self.toks.get(self.pos + 1).map(|(t, _)| t);
            match (name.as_str(), next) {
                ("B", Some(Tok::LBracket)) | ("K", Some(Tok::LBracket)) => {
                    let kind = name.clone();
                    self.pos += 2;
                    let label = self.ident("as an agent label")?;
                    self.expect(&Tok::RBracket, "to close the agent label")?;
                    let body = self.unary()?;
                    return Ok(match kind.as_str() {
                        "B" => belief(label, body),
                        _ => knowledge(label, body),
                    });
                }
                ("DB" | "CB" | "DK" | "CK", Some(Tok::LBrace)) => {
                    let kind = name.clone();
                    self.pos += 1;
                    let labels = self.label_list()?;
                    let body = self.unary()?;
                    return Ok(match kind.as_str() {
                        "DB" => Formula::DistributedBelief(labels, Box::new(body)),
                        "CB" => Formula::CommonBelief(labels, Box::new(body)),
                        "DK" => Formula::DistributedKnowledge(labels, Box::new(body)),
                        _ => Formula::CommonKnowledge(labels, Box::new(body)),
                    });
                }
                _ => {}
            }
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                self.expect(&Tok::RParen, "to close the group")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) if name == "false" => {
                self.pos += 1;
                Ok(bottom())
            }
            Some(Tok::Ident(_)) => Ok(Formula::Atom(self.ident("")?)),
            _ => Err(self.unexpected("expected a formula")),
        }
    }
}

/// Parses one formula.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let f = p.iff()?;
    if p.peek().is_some() {
        return Err(p.unexpected("expected end of input"));
    }
    Ok(f)
}

/// Parses a formula file: one formula per line, blank lines and lines
/// starting with `#` skipped. Line numbers in errors are 1-based.
pub fn parse_lines(input: &str) -> Result<Vec<Formula>, LinesError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match parse(trimmed) {
            Ok(f) => out.push(f),
            Err(source) => return Err(LinesError { line: idx + 1, source }),
        }
    }
    Ok(out)
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..)
        | Formula::Belief(..)
        | Formula::Knowledge(..)
        | Formula::DistributedBelief(..)
        | Formula::CommonBelief(..)
        | Formula::DistributedKnowledge(..)
        | Formula::CommonKnowledge(..) => 5,
        Formula::Atom(..) | Formula::Bottom => 6,
    }
}

fn render_into(f: &Formula, min_prec: u8, out: &mut String) {
    let p = precedence(f);
    let parens = p < min_prec;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Atom(name) => out.push_str(name),
        Formula::Bottom => out.push_str("false"),
        Formula::Not(x) => {
            out.push('~');
            render_into(x, 5, out);
        }
        Formula::And(a, b) => {
            render_into(a, 4, out);
            out.push_str(" & ");
            render_into(b, 5, out);
        }
        Formula::Or(a, b) => {
            render_into(a, 3, out);
            out.push_str(" | ");
            render_into(b, 4, out);
        }
        Formula::Implies(a, b) => {
            render_into(a, 3, out);
            out.push_str(" -> ");
            render_into(b, 2, out);
        }
        Formula::Iff(a, b) => {
            render_into(a, 2, out);
            out.push_str(" <-> ");
            render_into(b, 1, out);
        }
        Formula::Belief(l, x) => {
            out.push_str("B[");
            out.push_str(l);
            out.push_str("] ");
            render_into(x, 5, out);
        }
        Formula::Knowledge(l, x) => {
            out.push_str("K[");
            out.push_str(l);
            out.push_str("] ");
            render_into(x, 5, out);
        }
        Formula::DistributedBelief(ls, x)
        | Formula::CommonBelief(ls, x)
        | Formula::DistributedKnowledge(ls, x)
        | Formula::CommonKnowledge(ls, x) => {
            out.push_str(match f {
                Formula::DistributedBelief(..) => "DB{",
                Formula::CommonBelief(..) => "CB{",
                Formula::DistributedKnowledge(..) => "DK{",
                _ => "CK{",
            });
            out.push_str(&ls.join(","));
            out.push_str("} ");
            render_into(x, 5, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Prints a formula with minimal parentheses; the result re-parses to a
/// structurally identical tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    render_into(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modalities_bind_like_negation() {
        let parsed = parse("K[a] P -> B[a] P").unwrap();
        assert_eq!(parsed, implies(knowledge("a", atom("P")), belief("a", atom("P"))));
        let parsed = parse("~B[a] false").unwrap();
        assert_eq!(parsed, not(belief("a", bottom())));
        let parsed = parse("B[a] P & Q").unwrap();
        assert_eq!(parsed, and(belief("a", atom("P")), atom("Q")));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse("P -> Q -> R").unwrap(),
            implies(atom("P"), implies(atom("Q"), atom("R")))
        );
        assert_eq!(
            parse("~B[a] P -> B[a] ~P").unwrap(),
            implies(not(belief("a", atom("P"))), belief("a", not(atom("P"))))
        );
    }

    #[test]
    fn precedence_chain() {
        // ~ > & > | > -> > <->
        assert_eq!(
            parse("~P & Q | R -> S <-> T").unwrap(),
            iff(
                implies(or(and(not(atom("P")), atom("Q")), atom("R")), atom("S")),
                atom("T")
            )
        );
    }

    #[test]
    fn group_modalities_parse_their_label_lists() {
        assert_eq!(
            parse("DB{a,b} P").unwrap(),
            distributed_belief(["a", "b"], atom("P"))
        );
        assert_eq!(parse("CK{a} ~P").unwrap(), common_knowledge(["a"], not(atom("P"))));
        let err = parse("CB{} P").unwrap_err();
        assert!(err.message.contains("identifier"));
    }

    #[test]
    fn keywords_only_reserve_their_bracketed_form() {
        // B alone is an atom; only "B[" opens a modality.
        assert_eq!(parse("B & K").unwrap(), and(atom("B"), atom("K")));
        assert_eq!(parse("DB | CK").unwrap(), or(atom("DB"), atom("CK")));
    }

    #[test]
    fn renders_with_minimal_parentheses() {
        assert_eq!(render(&not(and(atom("P"), atom("Q")))), "~(P & Q)");
        assert_eq!(render(&and(not(atom("P")), atom("Q"))), "~P & Q");
        assert_eq!(
            render(&belief("a", implies(atom("P"), atom("Q")))),
            "B[a] (P -> Q)"
        );
        assert_eq!(
            render(&implies(implies(atom("P"), atom("Q")), atom("R"))),
            "(P -> Q) -> R"
        );
        assert_eq!(
            render(&implies(atom("P"), implies(atom("Q"), atom("R")))),
            "P -> Q -> R"
        );
        assert_eq!(render(&and(atom("P"), and(atom("Q"), atom("R")))), "P & (Q & R)");
        assert_eq!(render(&and(and(atom("P"), atom("Q")), atom("R"))), "P & Q & R");
    }

    #[test]
    fn errors_carry_the_offset() {
        let err = parse("P -> ").unwrap_err();
        assert_eq!(err.offset, 5);
        let err = parse("P @ Q").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("(P -> Q").unwrap_err();
        assert_eq!(err.offset, 7);
        let err = parse("B[a P").unwrap_err();
        assert!(err.message.contains("']'"));
    }

    #[test]
    fn parses_formula_files_line_by_line() {
        let text = "# laws\nP -> P\n\n  ~false\n";
        let formulas = parse_lines(text).unwrap();
        assert_eq!(formulas, vec![implies(atom("P"), atom("P")), not(bottom())]);
        let err = parse_lines("P\nQ &\n").unwrap_err();
        assert_eq!(err.line, 2);
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop_oneof![Just("P"), Just("Q"), Just("r_1"), Just("B"), Just("false_alarm")]
                .prop_map(atom),
            Just(bottom()),
        ];
        let label = prop_oneof![Just("a"), Just("b"), Just("c_2")];
        let labels = proptest::collection::vec(label.clone(), 1..3)
            .prop_map(|ls| ls.into_iter().map(str::to_string).collect::<Vec<_>>());
        leaf.prop_recursive(5, 64, 3, move |inner| {
            prop_oneof![
                inner.clone().prop_map(not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| iff(a, b)),
                (label.clone(), inner.clone()).prop_map(|(l, f)| belief(l, f)),
                (label.clone(), inner.clone()).prop_map(|(l, f)| knowledge(l, f)),
                (labels.clone(), inner.clone()).prop_map(|(ls, f)| Formula::DistributedBelief(ls, Box::new(f))),
                (labels.clone(), inner.clone()).prop_map(|(ls, f)| Formula::CommonBelief(ls, Box::new(f))),
                (labels.clone(), inner.clone()).prop_map(|(ls, f)| Formula::DistributedKnowledge(ls, Box::new(f))),
                (labels.clone(), inner.clone()).prop_map(|(ls, f)| Formula::CommonKnowledge(ls, Box::new(f))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1024))]

        #[test]
        fn parse_render_round_trip(f in arb_formula()) {
            let printed = render(&f);
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(reparsed, f);
        }
    }
}
