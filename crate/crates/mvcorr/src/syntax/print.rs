//! ASCII printer. Output parses back to the same tree.

use super::formula::{Formula, Inequality, QuasiInequality};
use std::fmt;

const IMPL: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) | Formula::Minus(..) => IMPL,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut String) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Var(p) => out.push_str(p),
        Formula::Nom(i) => {
            out.push('#');
            out.push_str(i);
        }
        Formula::CoNom(m) => {
            out.push('$');
            out.push_str(m);
        }
        Formula::Const(c) => {
            out.push('@');
            out.push_str(&c.name);
        }
        Formula::Implies(a, b) | Formula::Minus(a, b) => {
            write_at(a, OR, out);
            out.push_str(if matches!(f, Formula::Implies(..)) { " -> " } else { " - " });
            write_at(b, IMPL, out);
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out);
            out.push_str(" \\/ ");
            write_at(b, AND, out);
        }
        Formula::And(a, b) => {
            write_at(a, AND, out);
            out.push_str(" /\\ ");
            write_at(b, UNARY, out);
        }
        Formula::Box(a) | Formula::Diamond(a) | Formula::BoxInv(a) | Formula::DiamondInv(a) => {
            out.push_str(match f {
                Formula::Box(_) => "[]",
                Formula::Diamond(_) => "<>",
                Formula::BoxInv(_) => "[i]",
                _ => "<i>",
            });
            write_at(a, UNARY, out);
        }
    }
    if paren {
        out.push(')');
    }
}

pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_at(f, IMPL, &mut s);
    s
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for QuasiInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if prem.is_empty() {
            write!(f, "=> {}", self.conclusion)
        } else {
            write!(f, "{} => {}", prem.join(" & "), self.conclusion)
        }
    }
}
