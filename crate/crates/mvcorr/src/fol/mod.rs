//! The first-order correspondence language and its second-order extensions.
//!
//! Formulas take values in the algebra. Equality and `=<` are crisp.

mod eval;
pub mod library;
pub mod simplify;
mod text;
mod translate;

pub use eval::{assignment_for_model, fo_eval, st_faithfulness_check, Assignment, FoError};
pub use simplify::simplify;
pub use text::{parse_fo, FoParseError, FoStyle};
pub use translate::{pred_name, standard_translation, Translator};

use crate::syntax::Const;
use serde::Serialize;
use std::collections::BTreeSet;

/// Individual terms: variables and the constants that name nominals and co-nominals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Term {
    Var(String),
    Nom(String),
    CoNom(String),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }
}

/// Nullary truth-value symbols `C_i` (over J∞) and `C_m` (over M∞).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TvSym {
    Nom(String),
    CoNom(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Fo {
    Eq(Term, Term),
    Rel(Term, Term),
    Pred(String, Term),
    Truth(Const),
    Tv(TvSym),
    Or(Box<Fo>, Box<Fo>),
    And(Box<Fo>, Box<Fo>),
    Implies(Box<Fo>, Box<Fo>),
    Minus(Box<Fo>, Box<Fo>),
    Preceq(Box<Fo>, Box<Fo>),
    Forall(Term, Box<Fo>),
    Exists(Term, Box<Fo>),
    ForallPred(String, Box<Fo>),
    ExistsPred(String, Box<Fo>),
    ForallTv(TvSym, Box<Fo>),
    ExistsTv(TvSym, Box<Fo>),
}

impl Fo {
    pub fn eq(a: Term, b: Term) -> Fo {
        Fo::Eq(a, b)
    }
    pub fn rel(a: Term, b: Term) -> Fo {
        Fo::Rel(a, b)
    }
    pub fn falsum() -> Fo {
        Fo::Truth(Const::bot())
    }
    pub fn verum() -> Fo {
        Fo::Truth(Const::top())
    }
    pub fn or(a: Fo, b: Fo) -> Fo {
        Fo::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: Fo, b: Fo) -> Fo {
        Fo::And(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Fo, b: Fo) -> Fo {
        Fo::Implies(Box::new(a), Box::new(b))
    }
    pub fn minus(a: Fo, b: Fo) -> Fo {
        Fo::Minus(Box::new(a), Box::new(b))
    }
    pub fn preceq(a: Fo, b: Fo) -> Fo {
        Fo::Preceq(Box::new(a), Box::new(b))
    }
    pub fn not(a: Fo) -> Fo {
        Fo::implies(a, Fo::falsum())
    }
    pub fn forall(x: Term, a: Fo) -> Fo {
        Fo::Forall(x, Box::new(a))
    }
    pub fn exists(x: Term, a: Fo) -> Fo {
        Fo::Exists(x, Box::new(a))
    }
    pub fn forall_tv(c: TvSym, a: Fo) -> Fo {
        Fo::ForallTv(c, Box::new(a))
    }
    pub fn exists_tv(c: TvSym, a: Fo) -> Fo {
        Fo::ExistsTv(c, Box::new(a))
    }
    pub fn forall_pred(p: &str, a: Fo) -> Fo {
        Fo::ForallPred(p.to_string(), Box::new(a))
    }
    pub fn exists_pred(p: &str, a: Fo) -> Fo {
        Fo::ExistsPred(p.to_string(), Box::new(a))
    }

    pub fn and_all(items: Vec<Fo>) -> Fo {
        items.into_iter().reduce(Fo::and).unwrap_or_else(Fo::verum)
    }
    pub fn or_all(items: Vec<Fo>) -> Fo {
        items.into_iter().reduce(Fo::or).unwrap_or_else(Fo::falsum)
    }

    pub fn children(&self) -> Vec<&Fo> {
        match self {
            Fo::Eq(..) | Fo::Rel(..) | Fo::Pred(..) | Fo::Truth(_) | Fo::Tv(_) => vec![],
            Fo::Or(a, b) | Fo::And(a, b) | Fo::Implies(a, b) | Fo::Minus(a, b) | Fo::Preceq(a, b) => vec![a, b],
            Fo::Forall(_, a)
            | Fo::Exists(_, a)
            | Fo::ForallPred(_, a)
            | Fo::ExistsPred(_, a)
            | Fo::ForallTv(_, a)
            | Fo::ExistsTv(_, a) => vec![a],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// True when no predicate symbol occurs.
    pub fn is_predicate_free(&self) -> bool {
        match self {
            Fo::Pred(..) | Fo::ForallPred(..) | Fo::ExistsPred(..) => false,
            _ => self.children().iter().all(|c| c.is_predicate_free()),
        }
    }

    fn collect_free(&self, bound: &mut Vec<Sym>, out: &mut BTreeSet<Sym>) {
        let mut see = |s: Sym, bound: &Vec<Sym>| {
            if !bound.contains(&s) {
                out.insert(s);
            }
        };
        match self {
            Fo::Eq(a, b) | Fo::Rel(a, b) => {
                see(Sym::Term(a.clone()), bound);
                see(Sym::Term(b.clone()), bound);
            }
            Fo::Pred(p, t) => {
                see(Sym::Pred(p.clone()), bound);
                see(Sym::Term(t.clone()), bound);
            }
            Fo::Truth(_) => {}
            Fo::Tv(c) => see(Sym::Tv(c.clone()), bound),
            Fo::Or(a, b) | Fo::And(a, b) | Fo::Implies(a, b) | Fo::Minus(a, b) | Fo::Preceq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Fo::Forall(x, a) | Fo::Exists(x, a) => Self::under(Sym::Term(x.clone()), a, bound, out),
            Fo::ForallPred(p, a) | Fo::ExistsPred(p, a) => Self::under(Sym::Pred(p.clone()), a, bound, out),
            Fo::ForallTv(c, a) | Fo::ExistsTv(c, a) => Self::under(Sym::Tv(c.clone()), a, bound, out),
        }
    }

    fn under(s: Sym, a: &Fo, bound: &mut Vec<Sym>, out: &mut BTreeSet<Sym>) {
        bound.push(s);
        a.collect_free(bound, out);
        bound.pop();
    }

    /// Free symbols of every sort.
    pub fn free_symbols(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn free_terms(&self) -> BTreeSet<Term> {
        self.free_symbols()
            .into_iter()
            .filter_map(|s| match s {
                Sym::Term(t) => Some(t),
                _ => None,
            })
            .collect()
    }

    pub fn occurs_free(&self, t: &Term) -> bool {
        self.free_symbols().contains(&Sym::Term(t.clone()))
    }

    /// All individual variables bound anywhere.
    pub fn bound_terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Fo::Forall(x, _) | Fo::Exists(x, _) = f {
                out.push(x.clone());
            }
        });
        out
    }

    pub fn walk(&self, f: &mut dyn FnMut(&Fo)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Clean: no variable is both free and bound, and no two quantifiers bind the same symbol.
    pub fn is_clean(&self) -> bool {
        let bound = self.bound_terms();
        let unique: BTreeSet<_> = bound.iter().collect();
        unique.len() == bound.len() && bound.iter().all(|t| !self.occurs_free(t))
    }

    /// Substitutes `by` for free occurrences of the term `t`. `by` must not be
    /// captured: callers substitute only terms that are not bound inside `self`.
    pub fn subst_term(&self, t: &Term, by: &Term) -> Fo {
        let s = |x: &Term| if x == t { by.clone() } else { x.clone() };
        match self {
            Fo::Eq(a, b) => Fo::Eq(s(a), s(b)),
            Fo::Rel(a, b) => Fo::Rel(s(a), s(b)),
            Fo::Pred(p, a) => Fo::Pred(p.clone(), s(a)),
            Fo::Forall(x, _) | Fo::Exists(x, _) if x == t => self.clone(),
            _ => self.map_children(|c| c.subst_term(t, by)),
        }
    }

    pub fn map_children(&self, mut f: impl FnMut(&Fo) -> Fo) -> Fo {
        let mut b = |x: &Fo| Box::new(f(x));
        match self {
            Fo::Eq(..) | Fo::Rel(..) | Fo::Pred(..) | Fo::Truth(_) | Fo::Tv(_) => self.clone(),
            Fo::Or(x, y) => {
                let l = b(x);
                Fo::Or(l, b(y))
            }
            Fo::And(x, y) => {
                let l = b(x);
                Fo::And(l, b(y))
            }
            Fo::Implies(x, y) => {
                let l = b(x);
                Fo::Implies(l, b(y))
            }
            Fo::Minus(x, y) => {
                let l = b(x);
                Fo::Minus(l, b(y))
            }
            Fo::Preceq(x, y) => {
                let l = b(x);
                Fo::Preceq(l, b(y))
            }
            Fo::Forall(v, x) => Fo::Forall(v.clone(), b(x)),
            Fo::Exists(v, x) => Fo::Exists(v.clone(), b(x)),
            Fo::ForallPred(v, x) => Fo::ForallPred(v.clone(), b(x)),
            Fo::ExistsPred(v, x) => Fo::ExistsPred(v.clone(), b(x)),
            Fo::ForallTv(v, x) => Fo::ForallTv(v.clone(), b(x)),
            Fo::ExistsTv(v, x) => Fo::ExistsTv(v.clone(), b(x)),
        }
    }

    /// Replaces every atomic `P(t)` by `by(t)`. The replacement must not
    /// mention variables bound between the root and the occurrence.
    pub fn subst_pred(&self, p: &str, by: &dyn Fn(&Term) -> Fo) -> Fo {
        match self {
            Fo::Pred(q, t) if q == p => by(t),
            Fo::ForallPred(q, _) | Fo::ExistsPred(q, _) if q == p => self.clone(),
            _ => self.map_children(|c| c.subst_pred(p, by)),
        }
    }
}

/// A symbol of any sort, for free-symbol bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sym {
    Term(Term),
    Tv(TvSym),
    Pred(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_and_bound() {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let f = Fo::forall(y.clone(), Fo::implies(Fo::rel(x.clone(), y.clone()), Fo::Pred("P".into(), y.clone())));
        assert_eq!(f.free_terms(), [x.clone()].into());
        assert!(f.is_clean());
        let g = Fo::and(f.clone(), Fo::Pred("Q".into(), y.clone()));
        assert!(!g.is_clean());
        assert!(!f.is_predicate_free());
        assert_eq!(f.subst_term(&x, &Term::Nom("i".into())).free_terms(), [Term::Nom("i".into())].into());
        assert_eq!(f.subst_term(&y, &x), f);
    }
}
