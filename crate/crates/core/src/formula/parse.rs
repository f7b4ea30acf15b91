//! Tokenizer and recursive-descent parser for formulas and `.lpmln` programs.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! program := { "#signature" atom { "," atom } "." | weight ":" formula "." }
//! weight  := "alpha" | rational            -- -3, 2.5, 7/2
//! formula := "<-" imp | imp [ "<-" imp ]   -- G <- F is F -> G, <- F is F -> bot
//! imp     := disj [ "->" imp ]             -- right associative
//! disj    := conj { "|" conj }
//! conj    := unary { "&" unary }
//! unary   := "not" unary | atom | "bot" | "top" | "(" formula ")"
//! ```

use num_rational::BigRational;

use super::program::parse_rational;
use super::render::Dialect;
use super::{Formula, Signature, Weight, WeightedProgram};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(BigRational),
    Directive(String),
    Not,
    Bottom,
    Top,
    And,
    Or,
    Arrow,
    BackArrow,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(q) => format!("number `{q}`"),
            Tok::Directive(d) => format!("`#{d}`"),
            Tok::Not => "`not`".into(),
            Tok::Bottom | Tok::Top => "constant".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::BackArrow => "`<-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str, dialect: Dialect) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let syntax = |line, column, message: String| Error::Syntax {
        line,
        column,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(1, &mut i);
                continue;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            _ => {}
        }

        let next = chars.get(i + 1).copied();
        let tok = match c {
            '(' => {
                advance(1, &mut i);
                Tok::LParen
            }
            ')' => {
                advance(1, &mut i);
                Tok::RParen
            }
            '&' => {
                advance(1, &mut i);
                Tok::And
            }
            '|' => {
                advance(1, &mut i);
                Tok::Or
            }
            ':' => {
                advance(1, &mut i);
                Tok::Colon
            }
            ',' => {
                advance(1, &mut i);
                Tok::Comma
            }
            '.' => {
                advance(1, &mut i);
                Tok::Dot
            }
            '-' if next == Some('>') => {
                advance(2, &mut i);
                Tok::Arrow
            }
            '<' if next == Some('-') => {
                advance(2, &mut i);
                Tok::BackArrow
            }
            c if c.is_ascii_digit() || (c == '-' && next.is_some_and(|n| n.is_ascii_digit())) => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && (is_ident_char(chars[j]) || chars[j] == '/') {
                    j += 1;
                }
                // A `.` belongs to the literal only when a digit follows it.
                while j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && (is_ident_char(chars[j]) || chars[j] == '/') {
                        j += 1;
                    }
                }
                let literal: String = chars[start..j].iter().collect();
                advance(j - start, &mut i);
                match parse_rational(&literal) {
                    Some(q) => Tok::Number(q),
                    None => {
                        return Err(Error::NonRationalLiteral {
                            literal,
                            line: tl,
                            column: tc,
                        })
                    }
                }
            }
            '#' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let name: String = chars[start..j].iter().collect();
                advance(j - i, &mut i);
                if name.is_empty() {
                    return Err(syntax(tl, tc, "expected a directive name after `#`".into()));
                }
                Tok::Directive(name)
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                advance(j - start, &mut i);
                match (word.as_str(), dialect) {
                    ("not", _) => Tok::Not,
                    ("bot", Dialect::Internal) | ("false", Dialect::F2lp) => Tok::Bottom,
                    ("top", Dialect::Internal) | ("true", Dialect::F2lp) => Tok::Top,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(syntax(tl, tc, format!("unexpected character `{other}`")));
            }
        };
        out.push(Spanned {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: format!("expected {expected}, found {}", t.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(what))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::BackArrow {
            self.bump();
            let body = self.implication()?;
            return Ok(Formula::not(body));
        }
        let head = self.implication()?;
        if *self.peek() == Tok::BackArrow {
            self.bump();
            let body = self.implication()?;
            return Ok(Formula::implies(body, head));
        }
        Ok(head)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::atom(name))
            }
            Tok::Bottom => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error_here("a formula")),
        }
    }
}

/// Parses a single formula written with `not & | -> <- bot top`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    parse_formula_in(text, Dialect::Internal)
}

/// Parses a formula in the given dialect (`f2lp` spells the constants `false`/`true`).
pub fn parse_formula_in(text: &str, dialect: Dialect) -> Result<Formula> {
    let mut p = Parser {
        toks: tokenize(text, dialect)?,
        pos: 0,
    };
    let f = p.formula()?;
    p.expect(Tok::Eof, "end of formula")?;
    Ok(f)
}

/// Parses a program in the `.lpmln` format.
pub fn parse_program(text: &str) -> Result<WeightedProgram> {
    let mut p = Parser {
        toks: tokenize(text, Dialect::Internal)?,
        pos: 0,
    };
    let mut declared: Option<Signature> = None;
    let mut rules = Vec::new();
    loop {
        let start = p.toks[p.pos].clone();
        match start.tok {
            Tok::Eof => break,
            Tok::Directive(ref d) if d == "signature" => {
                p.bump();
                if declared.is_some() {
                    return Err(Error::DuplicateSignature {
                        line: start.line,
                        column: start.column,
                    });
                }
                let mut sig = Signature::new();
                loop {
                    match p.bump().tok {
                        Tok::Ident(a) => {
                            sig.insert(a)?;
                        }
                        _ => {
                            p.pos -= 1;
                            return Err(p.error_here("an atom name"));
                        }
                    }
                    match p.peek() {
                        Tok::Comma => {
                            p.bump();
                        }
                        _ => break,
                    }
                }
                p.expect(Tok::Dot, "`.` after #signature")?;
                declared = Some(sig);
            }
            Tok::Directive(ref d) => {
                return Err(Error::Syntax {
                    line: start.line,
                    column: start.column,
                    message: format!("unknown directive `#{d}`"),
                });
            }
            Tok::Number(ref q) => {
                p.bump();
                rules.push(rule_body(&mut p, Weight::Soft(q.clone()))?);
            }
            Tok::Ident(ref w) if w == "alpha" => {
                p.bump();
                rules.push(rule_body(&mut p, Weight::Alpha)?);
            }
            _ => return Err(p.error_here("a weight (`alpha` or a rational number)")),
        }
    }
    WeightedProgram::with_declared(declared.unwrap_or_default(), rules)
}

fn rule_body(p: &mut Parser, weight: Weight) -> Result<(Weight, Formula)> {
    p.expect(Tok::Colon, "`:` after the weight")?;
    let f = p.formula()?;
    p.expect(Tok::Dot, "`.` at the end of the rule")?;
    Ok((weight, f))
}
