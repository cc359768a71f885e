//! Recursive-descent parser for the ASCII modal syntax.
//!
//! ```text
//! quasi    ::= [ ineq { "&" ineq } ] "=>" ineq
//! ineq     ::= formula "<=" formula
//! formula  ::= disj [ ("->" | "-") formula ]
//! disj     ::= conj { "\/" conj }
//! conj     ::= unary { "/\" unary }
//! unary    ::= ("[]" | "<>" | "[i]" | "<i>" | "~") unary | atom
//! atom     ::= var | "#" name | "$" name | "@" name | "(" formula ")"
//! ```
//!
//! Variables start with a lowercase letter. `~f` abbreviates `f -> @0`.

use super::formula::{Const, Formula, Inequality, ModalInput, QuasiInequality};
use crate::heyting::Algebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: expected {}, found {found}", expected.join(" or "))]
    Syntax { pos: usize, expected: Vec<String>, found: String },
    #[error("unknown constant `@{name}` at byte {pos}")]
    UnknownConstant { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nom(String),
    CoNom(String),
    Const(String),
    Or,
    And,
    Implies,
    Minus,
    Box,
    Diamond,
    BoxInv,
    DiamondInv,
    Neg,
    LParen,
    RParen,
    Leq,
    Amp,
    Entails,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nom(s) => format!("`#{s}`"),
            Tok::CoNom(s) => format!("`${s}`"),
            Tok::Const(s) => format!("`@{s}`"),
            Tok::Or => "`\\/`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Diamond => "`<>`".into(),
            Tok::BoxInv => "`[i]`".into(),
            Tok::DiamondInv => "`<i>`".into(),
            Tok::Neg => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Leq => "`<=`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Entails => "`=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    const FIXED: &[(&str, Tok)] = &[
        ("\\/", Tok::Or),
        ("/\\", Tok::And),
        ("->", Tok::Implies),
        ("[]", Tok::Box),
        ("<>", Tok::Diamond),
        ("[i]", Tok::BoxInv),
        ("<i>", Tok::DiamondInv),
        ("<=", Tok::Leq),
        ("=>", Tok::Entails),
        ("-", Tok::Minus),
        ("~", Tok::Neg),
        ("(", Tok::LParen),
        (")", Tok::RParen),
        ("&", Tok::Amp),
    ];
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = text.as_bytes();
    'outer: while i < text.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        for (s, t) in FIXED {
            if text[i..].starts_with(s) {
                out.push((i, t.clone()));
                i += s.len();
                continue 'outer;
            }
        }
        let sigil = matches!(c, '#' | '$' | '@');
        let start = if sigil { i + 1 } else { i };
        let mut j = start;
        while j < text.len() && is_name_char(bytes[j] as char) {
            j += 1;
        }
        let name = &text[start..j];
        let bad_ident = !sigil && !c.is_ascii_lowercase();
        if name.is_empty() || bad_ident {
            return Err(ParseError::Syntax {
                pos: i,
                expected: vec!["a formula token".into()],
                found: format!("`{c}`"),
            });
        }
        let tok = match c {
            '#' => Tok::Nom(name.into()),
            '$' => Tok::CoNom(name.into()),
            '@' => Tok::Const(name.into()),
            _ => Tok::Ident(name.into()),
        };
        out.push((i, tok));
        i = j;
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    alg: &'a Algebra,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(&[what])
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        match self.peek() {
            Tok::Implies => {
                self.bump();
                Ok(Formula::implies(lhs, self.formula()?))
            }
            Tok::Minus => {
                self.bump();
                Ok(Formula::minus(lhs, self.formula()?))
            }
            _ => Ok(lhs),
        }
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            f = Formula::or(f, self.conj()?);
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Box => Formula::boxed,
            Tok::Diamond => Formula::diamond,
            Tok::BoxInv => Formula::box_inv,
            Tok::DiamondInv => Formula::diamond_inv,
            Tok::Neg => Formula::neg,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Ident(p) => {
                self.bump();
                Ok(Formula::Var(p))
            }
            Tok::Nom(i) => {
                self.bump();
                Ok(Formula::Nom(i))
            }
            Tok::CoNom(m) => {
                self.bump();
                Ok(Formula::CoNom(m))
            }
            Tok::Const(name) => {
                self.bump();
                let elem = self.alg.elem(&name).ok_or(ParseError::UnknownConstant { pos: at, name })?;
                Ok(Formula::Const(Const { elem, name: self.alg.name_of(elem).to_string() }))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => self.fail(&["variable", "`#nominal`", "`$conominal`", "`@constant`", "`(`", "unary operator"]),
        }
    }

    fn inequality(&mut self) -> Result<Inequality, ParseError> {
        let lhs = self.formula()?;
        self.expect(Tok::Leq, "`<=`")?;
        Ok(Inequality::new(lhs, self.formula()?))
    }

    fn end(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }
}

fn parser<'a>(text: &str, alg: &'a Algebra) -> Result<Parser<'a>, ParseError> {
    Ok(Parser { toks: lex(text)?, pos: 0, alg })
}

pub fn parse_formula(text: &str, alg: &Algebra) -> Result<Formula, ParseError> {
    let mut p = parser(text, alg)?;
    let f = p.formula()?;
    p.end()?;
    Ok(f)
}

pub fn parse_inequality(text: &str, alg: &Algebra) -> Result<Inequality, ParseError> {
    let mut p = parser(text, alg)?;
    let i = p.inequality()?;
    p.end()?;
    Ok(i)
}

/// Parses either a formula or an inequality.
pub fn parse_input(text: &str, alg: &Algebra) -> Result<ModalInput, ParseError> {
    let mut p = parser(text, alg)?;
    let lhs = p.formula()?;
    if *p.peek() == Tok::Leq {
        p.bump();
        let rhs = p.formula()?;
        p.end()?;
        return Ok(ModalInput::Inequality(Inequality::new(lhs, rhs)));
    }
    if *p.peek() != Tok::Eof {
        return p.fail(&["`<=`", "end of input"]);
    }
    Ok(ModalInput::Formula(lhs))
}

pub fn parse_quasi(text: &str, alg: &Algebra) -> Result<QuasiInequality, ParseError> {
    let mut p = parser(text, alg)?;
    let mut premises = Vec::new();
    if *p.peek() != Tok::Entails {
        premises.push(p.inequality()?);
        while *p.peek() == Tok::Amp {
            p.bump();
            premises.push(p.inequality()?);
        }
    }
    p.expect(Tok::Entails, "`=>`")?;
    let conclusion = p.inequality()?;
    p.end()?;
    Ok(QuasiInequality { premises, conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::AlgebraSpec;

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    #[test]
    fn negation_sugar_and_disjunction() {
        let f = parse_formula("~p \\/ <>p", &p5()).unwrap();
        let p = Formula::var("p");
        assert_eq!(f, Formula::or(Formula::implies(p.clone(), Formula::bot()), Formula::diamond(p)));
    }

    #[test]
    fn single_variable() {
        assert_eq!(parse_formula("p", &p5()).unwrap(), Formula::var("p"));
    }

    #[test]
    fn inductive_example_shape() {
        let chain = Algebra::load(&AlgebraSpec {
            elements: vec!["0".into(), "a".into(), "1".into()],
            leq: vec![["0".into(), "a".into()], ["a".into(), "1".into()]],
        })
        .unwrap();
        let f = parse_formula("[](@a /\\ p -> q) /\\ []p -> <>[]q", &chain).unwrap();
        let a = Formula::Const(Const { elem: chain.elem("a").unwrap(), name: "a".into() });
        let (p, q) = (Formula::var("p"), Formula::var("q"));
        let want = Formula::implies(
            Formula::and(Formula::boxed(Formula::implies(Formula::and(a, p.clone()), q.clone())), Formula::boxed(p)),
            Formula::diamond(Formula::boxed(q)),
        );
        assert_eq!(f, want);
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("p -> q -> r", &p5()).unwrap();
        let (p, q, r) = (Formula::var("p"), Formula::var("q"), Formula::var("r"));
        assert_eq!(f, Formula::implies(p, Formula::implies(q, r)));
    }

    #[test]
    fn extended_atoms_and_inverse_modalities() {
        let f = parse_formula("<i>#j /\\ [i]$m - @gamma", &p5()).unwrap();
        let want = Formula::minus(
            Formula::and(Formula::diamond_inv(Formula::nom("j")), Formula::box_inv(Formula::conom("m"))),
            Formula::Const(Const { elem: p5().elem("gamma").unwrap(), name: "gamma".into() }),
        );
        assert_eq!(f, want);
        assert!(!f.is_basic());
    }

    #[test]
    fn constants_resolve_aliases() {
        let f = parse_formula("@bot", &p5()).unwrap();
        assert_eq!(f, Formula::bot());
    }

    #[test]
    fn errors_carry_position() {
        match parse_formula("p /\\ ", &p5()) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("@delta", &p5()), Err(ParseError::UnknownConstant { .. })));
        assert!(matches!(parse_formula("(p", &p5()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_formula("P", &p5()), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn inequalities_and_quasi() {
        let alg = p5();
        let i = parse_inequality("[](p \\/ q) <= <>(p /\\ q)", &alg).unwrap();
        assert_eq!(i.lhs, Formula::boxed(Formula::or(Formula::var("p"), Formula::var("q"))));
        let q = parse_quasi("#i <= @alpha & <>#i <= $m => #i <= $m", &alg).unwrap();
        assert_eq!(q.premises.len(), 2);
        let q = parse_quasi("=> #i <= $m", &alg).unwrap();
        assert!(q.premises.is_empty());
        assert!(matches!(parse_input("p <= q", &alg).unwrap(), ModalInput::Inequality(_)));
        assert!(matches!(parse_input("p -> q", &alg).unwrap(), ModalInput::Formula(_)));
    }
}
