//! ASCII syntax for first-order formulas.
//!
//! ```text
//! pre    ::= impl [ "=<" impl ]
//! impl   ::= disj [ ("->" | "-") impl ]
//! disj   ::= conj { "|" conj }
//! conj   ::= unary { "&" unary }
//! unary  ::= "~" unary | ("A" | "E") binder "." unary | atom
//! binder ::= x | c#i | c$m | C#i | C$m | P
//! atom   ::= "(" pre ")" | "@" name | C#i | C$m | "R(" term "," term ")"
//!          | P "(" term ")" | term ("=" | "!=") term
//! term   ::= x | c#i | c$m
//! ```
//!
//! `~f` and `t != u` abbreviate `f -> @0` and `t = u -> @0`.

use super::{Fo, Term, TvSym};
use crate::heyting::Algebra;
use crate::syntax::Const;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoParseError {
    #[error("syntax error at byte {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: String, found: String },
    #[error("unknown constant `@{name}` at byte {pos}")]
    UnknownConstant { pos: usize, name: String },
}

/// How to render formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoStyle {
    /// Parseable form.
    Ascii,
    /// Reading form: constants without `@` and `<=` for the crisp order.
    Display,
}

const PRE: u8 = 1;
const IMPL: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const ATOM: u8 = 5;

fn level(f: &Fo) -> u8 {
    match f {
        Fo::Preceq(..) => PRE,
        Fo::Implies(..) | Fo::Minus(..) => IMPL,
        Fo::Or(..) => OR,
        Fo::And(..) => AND,
        _ => ATOM,
    }
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(x) => x.clone(),
        Term::Nom(i) => format!("c#{i}"),
        Term::CoNom(m) => format!("c${m}"),
    }
}

fn tv(c: &TvSym) -> String {
    match c {
        TvSym::Nom(i) => format!("C#{i}"),
        TvSym::CoNom(m) => format!("C${m}"),
    }
}

impl FoStyle {
    pub fn render(self, f: &Fo) -> String {
        let mut s = String::new();
        self.write(f, PRE, &mut s);
        s
    }

    fn write(self, f: &Fo, min: u8, out: &mut String) {
        let paren = level(f) < min;
        if paren {
            out.push('(');
        }
        match f {
            Fo::Eq(a, b) => out.push_str(&format!("{} = {}", term(a), term(b))),
            Fo::Rel(a, b) => out.push_str(&format!("R({},{})", term(a), term(b))),
            Fo::Pred(p, t) => out.push_str(&format!("{p}({})", term(t))),
            Fo::Truth(c) => {
                if self == FoStyle::Ascii {
                    out.push('@');
                }
                out.push_str(&c.name);
            }
            Fo::Tv(c) => out.push_str(&tv(c)),
            Fo::Preceq(a, b) => {
                self.write(a, IMPL, out);
                out.push_str(if self == FoStyle::Ascii { " =< " } else { " <= " });
                self.write(b, IMPL, out);
            }
            Fo::Implies(a, b) | Fo::Minus(a, b) => {
                self.write(a, OR, out);
                out.push_str(if matches!(f, Fo::Implies(..)) { " -> " } else { " - " });
                self.write(b, IMPL, out);
            }
            Fo::Or(a, b) => {
                self.write(a, OR, out);
                out.push_str(" | ");
                self.write(b, AND, out);
            }
            Fo::And(a, b) => {
                self.write(a, AND, out);
                out.push_str(" & ");
                self.write(b, ATOM, out);
            }
            Fo::Forall(..)
            | Fo::Exists(..)
            | Fo::ForallPred(..)
            | Fo::ExistsPred(..)
            | Fo::ForallTv(..)
            | Fo::ExistsTv(..) => {
                let (q, sym, body) = match f {
                    Fo::Forall(x, b) => ("A", term(x), b),
                    Fo::Exists(x, b) => ("E", term(x), b),
                    Fo::ForallPred(p, b) => ("A", p.clone(), b),
                    Fo::ExistsPred(p, b) => ("E", p.clone(), b),
                    Fo::ForallTv(c, b) => ("A", tv(c), b),
                    Fo::ExistsTv(c, b) => ("E", tv(c), b),
                    _ => unreachable!(),
                };
                out.push_str(&format!("{q} {sym}. "));
                self.write(body, ATOM, out);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

impl std::fmt::Display for Fo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&FoStyle::Ascii.render(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    NomC(String),
    CoNomC(String),
    TvNom(String),
    TvCoNom(String),
    Const(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Implies,
    Minus,
    Preceq,
    Eq,
    Neq,
    Not,
    Eof,
}

fn is_name(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, FoParseError> {
    const FIXED: &[(&str, Tok)] = &[
        ("=<", Tok::Preceq),
        ("!=", Tok::Neq),
        ("->", Tok::Implies),
        ("=", Tok::Eq),
        ("-", Tok::Minus),
        ("(", Tok::LParen),
        (")", Tok::RParen),
        (",", Tok::Comma),
        (".", Tok::Dot),
        ("&", Tok::And),
        ("|", Tok::Or),
        ("~", Tok::Not),
    ];
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let name_end = |mut j: usize| {
        while j < b.len() && is_name(b[j]) {
            j += 1;
        }
        j
    };
    'outer: while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        for (t, k) in FIXED {
            if s[i..].starts_with(t) {
                out.push((i, k.clone()));
                i += t.len();
                continue 'outer;
            }
        }
        let bad = || FoParseError::Syntax {
            pos: i,
            expected: "a token".into(),
            found: format!("`{}`", s[i..].chars().next().unwrap()),
        };
        if c == b'@' {
            let j = name_end(i + 1);
            if j == i + 1 {
                return Err(bad());
            }
            out.push((i, Tok::Const(s[i + 1..j].into())));
            i = j;
            continue;
        }
        if (c == b'c' || c == b'C') && i + 1 < b.len() && (b[i + 1] == b'#' || b[i + 1] == b'$') {
            let j = name_end(i + 2);
            if j == i + 2 {
                return Err(bad());
            }
            let n = s[i + 2..j].to_string();
            out.push((
                i,
                match (c, b[i + 1]) {
                    (b'c', b'#') => Tok::NomC(n),
                    (b'c', _) => Tok::CoNomC(n),
                    (_, b'#') => Tok::TvNom(n),
                    _ => Tok::TvCoNom(n),
                },
            ));
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let j = name_end(i);
            let n = s[i..j].to_string();
            out.push((i, if c.is_ascii_lowercase() { Tok::Lower(n) } else { Tok::Upper(n) }));
            i = j;
            continue;
        }
        return Err(bad());
    }
    out.push((s.len(), Tok::Eof));
    Ok(out)
}

struct P<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    alg: &'a Algebra,
}

impl<'a> P<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }
    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].1
    }
    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        self.pos = (self.pos + 1).min(self.toks.len() - 1);
        t
    }
    fn fail<T>(&self, expected: &str) -> Result<T, FoParseError> {
        Err(FoParseError::Syntax {
            pos: self.toks[self.pos].0,
            expected: expected.into(),
            found: format!("{:?}", self.peek()),
        })
    }
    fn expect(&mut self, t: Tok, what: &str) -> Result<(), FoParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn pre(&mut self) -> Result<Fo, FoParseError> {
        let l = self.imp()?;
        if *self.peek() == Tok::Preceq {
            self.bump();
            return Ok(Fo::preceq(l, self.imp()?));
        }
        Ok(l)
    }

    fn imp(&mut self) -> Result<Fo, FoParseError> {
        let l = self.disj()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                Ok(Fo::implies(l, self.imp()?))
            }
            Tok::Minus => {
                self.bump();
                Ok(Fo::minus(l, self.imp()?))
            }
            _ => Ok(l),
        }
    }

    fn disj(&mut self) -> Result<Fo, FoParseError> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Fo::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Fo, FoParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Fo::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn term(&mut self) -> Result<Term, FoParseError> {
        match self.peek().clone() {
            Tok::Lower(x) => {
                self.bump();
                Ok(Term::Var(x))
            }
            Tok::NomC(i) => {
                self.bump();
                Ok(Term::Nom(i))
            }
            Tok::CoNomC(m) => {
                self.bump();
                Ok(Term::CoNom(m))
            }
            _ => self.fail("a term"),
        }
    }

    fn unary(&mut self) -> Result<Fo, FoParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Fo::not(self.unary()?))
            }
            Tok::Upper(q) if (q == "A" || q == "E") && *self.peek2() != Tok::LParen => {
                self.bump();
                let all = q == "A";
                let binder = self.bump();
                self.expect(Tok::Dot, "`.`")?;
                let body = self.unary()?;
                Ok(match (binder, all) {
                    (Tok::Lower(x), true) => Fo::forall(Term::Var(x), body),
                    (Tok::Lower(x), false) => Fo::exists(Term::Var(x), body),
                    (Tok::NomC(i), true) => Fo::forall(Term::Nom(i), body),
                    (Tok::NomC(i), false) => Fo::exists(Term::Nom(i), body),
                    (Tok::CoNomC(m), true) => Fo::forall(Term::CoNom(m), body),
                    (Tok::CoNomC(m), false) => Fo::exists(Term::CoNom(m), body),
                    (Tok::TvNom(i), true) => Fo::forall_tv(TvSym::Nom(i), body),
                    (Tok::TvNom(i), false) => Fo::exists_tv(TvSym::Nom(i), body),
                    (Tok::TvCoNom(m), true) => Fo::forall_tv(TvSym::CoNom(m), body),
                    (Tok::TvCoNom(m), false) => Fo::exists_tv(TvSym::CoNom(m), body),
                    (Tok::Upper(p), true) => Fo::forall_pred(&p, body),
                    (Tok::Upper(p), false) => Fo::exists_pred(&p, body),
                    _ => {
                        self.pos -= 2;
                        return self.fail("a bound symbol");
                    }
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Fo, FoParseError> {
        let at = self.toks[self.pos].0;
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.pre()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Const(name) => {
                self.bump();
                let elem = self.alg.elem(&name).ok_or(FoParseError::UnknownConstant { pos: at, name })?;
                Ok(Fo::Truth(Const { elem, name: self.alg.name_of(elem).to_string() }))
            }
            Tok::TvNom(i) => {
                self.bump();
                Ok(Fo::Tv(TvSym::Nom(i)))
            }
            Tok::TvCoNom(m) => {
                self.bump();
                Ok(Fo::Tv(TvSym::CoNom(m)))
            }
            Tok::Upper(p) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let a = self.term()?;
                if p == "R" && *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Fo::rel(a, b));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Fo::Pred(p, a))
            }
            Tok::Lower(_) | Tok::NomC(_) | Tok::CoNomC(_) => {
                let a = self.term()?;
                match self.bump() {
                    Tok::Eq => Ok(Fo::eq(a, self.term()?)),
                    Tok::Neq => Ok(Fo::not(Fo::eq(a, self.term()?))),
                    _ => {
                        self.pos -= 1;
                        self.fail("`=` or `!=`")
                    }
                }
            }
            _ => self.fail("a formula"),
        }
    }
}

pub fn parse_fo(text: &str, alg: &Algebra) -> Result<Fo, FoParseError> {
    let mut p = P { toks: lex(text)?, pos: 0, alg };
    let f = p.pre()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of input");
    }
    Ok(f)
}
