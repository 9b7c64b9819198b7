//! Line-oriented parser for `.trig` lemma files.
//!
//! ```text
//! script <id> | axiom <id> | composite <id>
//! kind derived|theorem
//! tag <tag>[, <tag>...]
//! depends <id>[, <id>...]
//! figure <figure-id>
//! atom <name> [domain "<text>"] [bind <quantity>]
//! nonzero <poly>[, <poly>...]
//! hyp <atom> := <expr> [nonzero <poly>[, <poly>...]] by <id>[, <id>...]
//! given <label>: <expr> = <expr> by <id>[, <id>...]
//! fact <label>: <expr> = <expr> by <id>[, <id>...]
//! statement <expr> = <expr>
//! step <label>: <expr> = <expr> by ring | substitute(<label> [with <atom>=<expr>, ...])
//!                               | divide_by(<poly>) | lemma(<id> [with <atom>=<expr>, ...])
//! conclude <label>
//! ```

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use super::script::*;
use crate::arith::{MultiPoly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredAtom(String),
    DuplicateAtom(String),
    DuplicateLabel(String),
    UnresolvableJustification(String),
    DivisionByZero,
    SelfReference(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::UndeclaredAtom(a) => write!(f, "UndeclaredAtom({a})"),
            ParseErrorKind::DuplicateAtom(a) => write!(f, "duplicate atom `{a}`"),
            ParseErrorKind::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            ParseErrorKind::UnresolvableJustification(l) => write!(f, "unresolvable justification `{l}`"),
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
            ParseErrorKind::SelfReference(a) => write!(f, "hypothesis target `{a}` occurs in its replacement"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Str(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

const KEYWORDS: &[&str] = &["by", "nonzero", "with", "domain", "bind"];

fn lex(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, m: &str| ParseError { line: lineno, column: col, kind: ParseErrorKind::Syntax(m.to_string()) };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: BigInt = s.parse().map_err(|_| err(col, "bad number"))?;
            out.push(Token { tok: Tok::Num(n), col });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i >= chars.len() {
                return Err(err(col, "unterminated string"));
            }
            out.push(Token { tok: Tok::Str(chars[start..i].iter().collect()), col });
            i += 1;
            continue;
        }
        let sym: &'static str = match c {
            ':' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                ":="
            }
            ':' => ":",
            '+' => "+",
            '-' => "-",
            '*' => "*",
            '/' => "/",
            '^' => "^",
            '(' => "(",
            ')' => ")",
            ',' => ",",
            '=' => "=",
            _ => return Err(err(col, "unexpected character")),
        };
        i += 1;
        out.push(Token { tok: Tok::Sym(sym), col });
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    atoms: Option<&'a BTreeSet<String>>,
}

impl<'a> Cursor<'a> {
    fn new(text: &str, line: usize, atoms: Option<&'a BTreeSet<String>>) -> Result<Self, ParseError> {
        let toks = lex(text, line)?;
        Ok(Cursor { toks, pos: 0, line, end_col: text.chars().count() + 1, atoms })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.col(), kind }
    }

    fn syntax(&self, m: &str) -> ParseError {
        self.error(ParseErrorKind::Syntax(m.to_string()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.syntax(&alloc::format!("expected `{s}`")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.syntax(&alloc::format!("expected `{w}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.syntax("expected identifier")),
        }
    }

    /// Identifier that may contain dashes, e.g. `external-provenance`.
    fn dashed_ident(&mut self) -> Result<String, ParseError> {
        let mut s = self.ident()?;
        while self.is_sym("-") {
            let dash_col = self.col();
            let next_col = self.toks.get(self.pos + 1).map(|t| t.col);
            let prev_end = dash_col;
            if next_col != Some(prev_end + 1) {
                break;
            }
            self.pos += 1;
            s.push('-');
            s.push_str(&self.ident()?);
        }
        Ok(s)
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.syntax("expected quoted string")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }

    fn id_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = alloc::vec![self.ident()?];
        while self.eat_sym(",") {
            out.push(self.ident()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym("+") {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym("-") {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym("*") {
                acc = acc.mul(&self.unary()?);
            } else if self.is_sym("/") {
                self.pos += 1;
                let col = self.col();
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| ParseError {
                    line: self.line,
                    column: col,
                    kind: ParseErrorKind::DivisionByZero,
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        if self.eat_sym("-") {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.primary()?;
        if !self.eat_sym("^") {
            return Ok(base);
        }
        let neg = self.eat_sym("-");
        let exp = match self.peek() {
            Some(Tok::Num(n)) => {
                let e: i32 = i32::try_from(n.clone()).map_err(|_| self.syntax("exponent too large"))?;
                self.pos += 1;
                e
            }
            _ => return Err(self.syntax("expected integer exponent")),
        };
        let exp = if neg { -exp } else { exp };
        base.pow(exp).map_err(|_| self.error(ParseErrorKind::DivisionByZero))
    }

    fn primary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::constant(Rational::from(n)))
            }
            Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()) => {
                if let Some(atoms) = self.atoms {
                    if !atoms.contains(&name) {
                        return Err(self.error(ParseErrorKind::UndeclaredAtom(name)));
                    }
                }
                self.pos += 1;
                Ok(RatFunc::var(&name))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(self.syntax("expected expression")),
        }
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let col = self.col();
        let e = self.expr()?;
        if !e.den().is_one() {
            return Err(ParseError {
                line: self.line,
                column: col,
                kind: ParseErrorKind::Syntax("expected a polynomial".to_string()),
            });
        }
        let (num, _) = e.into_parts();
        Ok(num)
    }

    fn poly_list(&mut self) -> Result<Vec<MultiPoly>, ParseError> {
        let mut out = alloc::vec![self.poly()?];
        while self.eat_sym(",") {
            out.push(self.poly()?);
        }
        Ok(out)
    }

    fn equation(&mut self, label: &str) -> Result<Equation, ParseError> {
        let lhs = self.expr()?;
        self.expect_sym("=")?;
        let rhs = self.expr()?;
        Ok(Equation::new(label, lhs, rhs))
    }

    fn bindings(&mut self) -> Result<Vec<(String, RatFunc)>, ParseError> {
        let mut out = Vec::new();
        if !self.eat_word("with") {
            return Ok(out);
        }
        loop {
            // Binding targets name atoms of the cited lemma, not of this script.
            let name = self.ident()?;
            self.expect_sym("=")?;
            out.push((name, self.expr()?));
            if !self.eat_sym(",") {
                return Ok(out);
            }
        }
    }
}

/// Parses an expression in which any identifier is an atom.
pub fn parse_expr(text: &str) -> Result<RatFunc, ParseError> {
    let mut c = Cursor::new(text, 1, None)?;
    let e = c.expr()?;
    c.finish()?;
    Ok(e)
}

/// Parses `<expr> = <expr>` with free atoms.
pub fn parse_equation(text: &str) -> Result<Equation, ParseError> {
    let mut c = Cursor::new(text, 1, None)?;
    let e = c.equation("")?;
    c.finish()?;
    Ok(e)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Header {
    Script,
    Axiom,
    Composite,
}

struct Builder {
    header: Header,
    id: String,
    kind: Option<ScriptKind>,
    tags: Vec<String>,
    depends: Vec<String>,
    figure: Option<String>,
    atoms: Vec<Atom>,
    atom_names: BTreeSet<String>,
    labels: BTreeSet<String>,
    items: Vec<Item>,
    facts: Vec<FactDecl>,
    nonzero: Vec<MultiPoly>,
    statement: Option<Equation>,
    conclusion: Option<(String, usize)>,
}

/// Parses a `script` file.
pub fn parse_script(text: &str) -> Result<ProofScript, ParseError> {
    match parse_lemma(text)? {
        LemmaSource::Script(s) => Ok(s),
        _ => Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::Syntax("expected a `script` file".to_string()),
        }),
    }
}

/// Parses any lemma file: `script`, `axiom` or `composite`.
pub fn parse_lemma(text: &str) -> Result<LemmaSource, ParseError> {
    let mut b: Option<Builder> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let probe = Cursor::new(raw, lineno, None)?;
        if probe.at_end() {
            continue;
        }
        let Some(builder) = b.as_mut() else {
            let mut c = probe;
            let header = if c.eat_word("script") {
                Header::Script
            } else if c.eat_word("axiom") {
                Header::Axiom
            } else if c.eat_word("composite") {
                Header::Composite
            } else {
                return Err(c.syntax("expected `script`, `axiom` or `composite`"));
            };
            let id = c.ident()?;
            c.finish()?;
            b = Some(Builder {
                header,
                id,
                kind: None,
                tags: Vec::new(),
                depends: Vec::new(),
                figure: None,
                atoms: Vec::new(),
                atom_names: BTreeSet::new(),
                labels: BTreeSet::new(),
                items: Vec::new(),
                facts: Vec::new(),
                nonzero: Vec::new(),
                statement: None,
                conclusion: None,
            });
            continue;
        };
        let names = builder.atom_names.clone();
        let mut c = Cursor::new(raw, lineno, Some(&names))?;
        builder.directive(&mut c)?;
    }
    let Some(b) = b else {
        return Err(ParseError {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::Syntax("empty lemma file".to_string()),
        });
    };
    b.build(last_line)
}

impl Builder {
    fn only(&self, c: &Cursor<'_>, allowed: &[Header], what: &str) -> Result<(), ParseError> {
        if allowed.contains(&self.header) {
            Ok(())
        } else {
            Err(c.syntax(&alloc::format!("`{what}` is not allowed here")))
        }
    }

    fn new_label(&mut self, c: &Cursor<'_>, label: &str) -> Result<(), ParseError> {
        if !self.labels.insert(label.to_string()) {
            return Err(ParseError {
                line: c.line,
                column: 1,
                kind: ParseErrorKind::DuplicateLabel(label.to_string()),
            });
        }
        Ok(())
    }

    fn directive(&mut self, c: &mut Cursor<'_>) -> Result<(), ParseError> {
        if self.conclusion.is_some() {
            return Err(c.syntax("nothing may follow `conclude`"));
        }
        let word = match c.peek() {
            Some(Tok::Ident(w)) => w.clone(),
            _ => return Err(c.syntax("expected a directive")),
        };
        c.pos += 1;
        match word.as_str() {
            "kind" => {
                self.only(c, &[Header::Script], "kind")?;
                self.kind = Some(if c.eat_word("derived") {
                    ScriptKind::Derived
                } else if c.eat_word("theorem") {
                    ScriptKind::Theorem
                } else {
                    return Err(c.syntax("expected `derived` or `theorem`"));
                });
            }
            "tag" => {
                self.tags.push(c.dashed_ident()?);
                while c.eat_sym(",") {
                    self.tags.push(c.dashed_ident()?);
                }
            }
            "depends" => {
                self.only(c, &[Header::Script], "depends")?;
                if !c.at_end() {
                    self.depends.extend(c.id_list()?);
                }
            }
            "figure" => {
                self.only(c, &[Header::Script, Header::Composite], "figure")?;
                self.figure = Some(c.ident()?);
            }
            "atom" => {
                let name = c.ident()?;
                if !self.atom_names.insert(name.clone()) {
                    return Err(ParseError {
                        line: c.line,
                        column: 1,
                        kind: ParseErrorKind::DuplicateAtom(name),
                    });
                }
                let mut atom = Atom { name, domain: None, bind: None };
                loop {
                    if c.eat_word("domain") {
                        atom.domain = Some(c.string()?);
                    } else if c.eat_word("bind") {
                        atom.bind = Some(c.ident()?);
                    } else {
                        break;
                    }
                }
                self.atoms.push(atom);
            }
            "nonzero" => {
                self.only(c, &[Header::Script, Header::Composite, Header::Axiom], "nonzero")?;
                let polys = c.poly_list()?;
                self.nonzero.extend(polys.iter().cloned());
                self.items.push(Item::Nonzero(polys));
            }
            "hyp" => {
                self.only(c, &[Header::Script], "hyp")?;
                let col = c.col();
                let target = c.ident()?;
                if !self.atom_names.contains(&target) {
                    return Err(ParseError { line: c.line, column: col, kind: ParseErrorKind::UndeclaredAtom(target) });
                }
                c.expect_sym(":=")?;
                let replacement = c.expr()?;
                let nonvanishing = if c.eat_word("nonzero") { c.poly_list()? } else { Vec::new() };
                c.expect_word("by")?;
                let by = c.id_list()?;
                let hyp = Hypothesis::new(target.clone(), replacement, nonvanishing).map_err(|_| ParseError {
                    line: c.line,
                    column: col,
                    kind: ParseErrorKind::SelfReference(target),
                })?;
                self.items.push(Item::Hyp(HypDecl { hyp, by, line: c.line }));
            }
            "given" | "fact" => {
                let is_fact = word == "fact";
                if is_fact {
                    self.only(c, &[Header::Composite], "fact")?;
                } else {
                    self.only(c, &[Header::Script], "given")?;
                }
                let label = c.ident()?;
                c.expect_sym(":")?;
                let equation = c.equation(&label)?;
                c.expect_word("by")?;
                let by = c.id_list()?;
                self.new_label(c, &label)?;
                if is_fact {
                    self.facts.push(FactDecl { equation, by, line: c.line });
                } else {
                    self.items.push(Item::Given(GivenDecl { equation, by, line: c.line }));
                }
            }
            "statement" => {
                self.only(c, &[Header::Axiom], "statement")?;
                if self.statement.is_some() {
                    return Err(c.syntax("duplicate statement"));
                }
                self.statement = Some(c.equation(&self.id.clone())?);
            }
            "step" => {
                self.only(c, &[Header::Script], "step")?;
                let label = c.ident()?;
                c.expect_sym(":")?;
                let equation = c.equation(&label)?;
                c.expect_word("by")?;
                let justification = self.justification(c)?;
                self.new_label(c, &label)?;
                self.items.push(Item::Step(Step { label, equation, justification, line: c.line }));
            }
            "conclude" => {
                self.only(c, &[Header::Script], "conclude")?;
                let col = c.col();
                let label = c.ident()?;
                let last_step = self.items.iter().rev().find_map(|i| match i {
                    Item::Step(s) => Some(s.label.clone()),
                    _ => None,
                });
                match last_step {
                    Some(l) if l == label => {}
                    _ => {
                        return Err(ParseError {
                            line: c.line,
                            column: col,
                            kind: ParseErrorKind::UnresolvableJustification(label),
                        })
                    }
                }
                self.conclusion = Some((label, c.line));
            }
            _ => return Err(ParseError { line: c.line, column: 1, kind: ParseErrorKind::Syntax(alloc::format!("unknown directive `{word}`")) }),
        }
        c.finish()
    }

    fn established_label(&self, label: &str) -> bool {
        self.items.iter().any(|i| match i {
            Item::Given(g) => g.equation.label == label,
            Item::Step(s) => s.label == label,
            _ => false,
        })
    }

    fn justification(&self, c: &mut Cursor<'_>) -> Result<Justification, ParseError> {
        if c.eat_word("ring") {
            return Ok(Justification::Ring);
        }
        if c.eat_word("substitute") {
            c.expect_sym("(")?;
            let col = c.col();
            let source = c.ident()?;
            if !self.established_label(&source) {
                return Err(ParseError {
                    line: c.line,
                    column: col,
                    kind: ParseErrorKind::UnresolvableJustification(source),
                });
            }
            let bindings = c.bindings()?;
            c.expect_sym(")")?;
            return Ok(Justification::Substitute { source, bindings });
        }
        if c.eat_word("divide_by") {
            c.expect_sym("(")?;
            let p = c.poly()?;
            c.expect_sym(")")?;
            return Ok(Justification::DivideBy(p));
        }
        if c.eat_word("lemma") {
            c.expect_sym("(")?;
            let id = c.ident()?;
            // Binding values live in this script's atom scope; targets are the lemma's atoms.
            let bindings = {
                let mut out = Vec::new();
                if c.eat_word("with") {
                    loop {
                        let name = match c.peek() {
                            Some(Tok::Ident(s)) => s.clone(),
                            _ => return Err(c.syntax("expected identifier")),
                        };
                        c.pos += 1;
                        c.expect_sym("=")?;
                        out.push((name, c.expr()?));
                        if !c.eat_sym(",") {
                            break;
                        }
                    }
                }
                out
            };
            c.expect_sym(")")?;
            return Ok(Justification::Lemma { id, bindings });
        }
        Err(c.syntax("expected `ring`, `substitute(..)`, `divide_by(..)` or `lemma(..)`"))
    }

    fn build(self, last_line: usize) -> Result<LemmaSource, ParseError> {
        let missing = |m: &str| ParseError {
            line: last_line,
            column: 1,
            kind: ParseErrorKind::Syntax(m.to_string()),
        };
        match self.header {
            Header::Axiom => {
                Ok(LemmaSource::Axiom(AxiomDecl {
                    id: self.id,
                    tags: self.tags,
                    atoms: self.atoms,
                    statement: self.statement,
                }))
            }
            Header::Composite => Ok(LemmaSource::Composite(CompositeDecl {
                id: self.id,
                tags: self.tags,
                figure: self.figure,
                atoms: self.atoms,
                nonzero: self.nonzero,
                facts: self.facts,
            })),
            Header::Script => {
                let (conclusion, _) = self.conclusion.ok_or_else(|| missing("script without `conclude`"))?;
                let kind = self.kind.ok_or_else(|| missing("script without `kind`"))?;
                Ok(LemmaSource::Script(ProofScript {
                    id: self.id,
                    kind,
                    tags: self.tags,
                    depends: self.depends,
                    figure: self.figure,
                    atoms: self.atoms,
                    items: self.items,
                    conclusion,
                }))
            }
        }
    }
}
