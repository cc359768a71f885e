use super::{translate::pred_name, Fo, Term, TvSym};
use crate::heyting::{Algebra, Elem};
use crate::semantics::{atom_domain, eval_all, Frame, Model, SemanticsError};
use crate::syntax::{Atom, Formula};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoError {
    #[error("symbol `{0}` is free but not interpreted")]
    UnboundSymbol(String),
    #[error("predicate quantification needs {needed} cases but the budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("state {0} is outside the frame")]
    NoSuchState(usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// Interpretation of free symbols: states for terms, values for truth-value
/// symbols, fuzzy sets for predicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub ind: BTreeMap<Term, usize>,
    pub tv: BTreeMap<TvSym, Elem>,
    pub pred: BTreeMap<String, Vec<Elem>>,
}

impl Assignment {
    pub fn with_term(mut self, t: Term, w: usize) -> Self {
        self.ind.insert(t, w);
        self
    }
}

enum C {
    Eq(usize, usize),
    Rel(usize, usize),
    Pred(usize, usize),
    Truth(Elem),
    Tv(usize),
    Or(Box<C>, Box<C>),
    And(Box<C>, Box<C>),
    Implies(Box<C>, Box<C>),
    Minus(Box<C>, Box<C>),
    Preceq(Box<C>, Box<C>),
    Ind { slot: usize, all: bool, body: Box<C> },
    Tv_ { slot: usize, dom: Vec<Elem>, all: bool, body: Box<C> },
    Pred_ { slot: usize, all: bool, body: Box<C> },
}

#[derive(PartialEq)]
enum Key<'a> {
    Term(&'a Term),
    Tv(&'a TvSym),
    Pred(&'a str),
}

struct Compiler<'a> {
    alg: &'a Algebra,
    scope: Vec<(Key<'a>, usize)>,
    ind: Vec<usize>,
    tv: Vec<Elem>,
    pred: Vec<Vec<Elem>>,
    assign: &'a Assignment,
}

fn term_name(t: &Term) -> String {
    match t {
        Term::Var(x) => x.clone(),
        Term::Nom(i) => format!("c#{i}"),
        Term::CoNom(m) => format!("c${m}"),
    }
}

fn tv_name(c: &TvSym) -> String {
    match c {
        TvSym::Nom(i) => format!("C#{i}"),
        TvSym::CoNom(m) => format!("C${m}"),
    }
}

impl<'a> Compiler<'a> {
    fn lookup(&self, k: &Key<'a>) -> Option<usize> {
        self.scope.iter().rev().find(|(q, _)| q == k).map(|&(_, s)| s)
    }

    fn term(&mut self, t: &'a Term) -> Result<usize, FoError> {
        if let Some(s) = self.lookup(&Key::Term(t)) {
            return Ok(s);
        }
        let w = *self.assign.ind.get(t).ok_or_else(|| FoError::UnboundSymbol(term_name(t)))?;
        self.ind.push(w);
        let s = self.ind.len() - 1;
        self.scope.insert(0, (Key::Term(t), s));
        Ok(s)
    }

    fn tv(&mut self, c: &'a TvSym) -> Result<usize, FoError> {
        if let Some(s) = self.lookup(&Key::Tv(c)) {
            return Ok(s);
        }
        let v = *self.assign.tv.get(c).ok_or_else(|| FoError::UnboundSymbol(tv_name(c)))?;
        self.tv.push(v);
        let s = self.tv.len() - 1;
        self.scope.insert(0, (Key::Tv(c), s));
        Ok(s)
    }

    fn pred(&mut self, p: &'a str) -> Result<usize, FoError> {
        if let Some(s) = self.lookup(&Key::Pred(p)) {
            return Ok(s);
        }
        let v = self.assign.pred.get(p).ok_or_else(|| FoError::UnboundSymbol(p.to_string()))?;
        self.pred.push(v.clone());
        let s = self.pred.len() - 1;
        self.scope.insert(0, (Key::Pred(p), s));
        Ok(s)
    }

    fn bind(&mut self, k: Key<'a>, body: &'a Fo) -> Result<(usize, Box<C>), FoError> {
        let slot = match k {
            Key::Term(_) => {
                self.ind.push(0);
                self.ind.len() - 1
            }
            Key::Tv(_) => {
                self.tv.push(Elem::BOT);
                self.tv.len() - 1
            }
            Key::Pred(_) => {
                self.pred.push(Vec::new());
                self.pred.len() - 1
            }
        };
        self.scope.push((k, slot));
        let body = self.compile(body);
        self.scope.pop();
        Ok((slot, Box::new(body?)))
    }

    fn compile(&mut self, f: &'a Fo) -> Result<C, FoError> {
        let bin = |a: &'a Fo, b: &'a Fo, this: &mut Self| -> Result<(Box<C>, Box<C>), FoError> {
            Ok((Box::new(this.compile(a)?), Box::new(this.compile(b)?)))
        };
        Ok(match f {
            Fo::Eq(a, b) => C::Eq(self.term(a)?, self.term(b)?),
            Fo::Rel(a, b) => C::Rel(self.term(a)?, self.term(b)?),
            Fo::Pred(p, t) => C::Pred(self.pred(p)?, self.term(t)?),
            Fo::Truth(c) => C::Truth(c.elem),
            Fo::Tv(c) => C::Tv(self.tv(c)?),
            Fo::Or(a, b) => {
                let (a, b) = bin(a, b, self)?;
                C::Or(a, b)
            }
            Fo::And(a, b) => {
                let (a, b) = bin(a, b, self)?;
                C::And(a, b)
            }
            Fo::Implies(a, b) => {
                let (a, b) = bin(a, b, self)?;
                C::Implies(a, b)
            }
            Fo::Minus(a, b) => {
                let (a, b) = bin(a, b, self)?;
                C::Minus(a, b)
            }
            Fo::Preceq(a, b) => {
                let (a, b) = bin(a, b, self)?;
                C::Preceq(a, b)
            }
            Fo::Forall(x, a) | Fo::Exists(x, a) => {
                let (slot, body) = self.bind(Key::Term(x), a)?;
                C::Ind { slot, all: matches!(f, Fo::Forall(..)), body }
            }
            Fo::ForallTv(c, a) | Fo::ExistsTv(c, a) => {
                let (slot, body) = self.bind(Key::Tv(c), a)?;
                let dom = match c {
                    TvSym::Nom(_) => self.alg.join_irreducibles().to_vec(),
                    TvSym::CoNom(_) => self.alg.meet_irreducibles().to_vec(),
                };
                C::Tv_ { slot, dom, all: matches!(f, Fo::ForallTv(..)), body }
            }
            Fo::ForallPred(p, a) | Fo::ExistsPred(p, a) => {
                let (slot, body) = self.bind(Key::Pred(p), a)?;
                C::Pred_ { slot, all: matches!(f, Fo::ForallPred(..)), body }
            }
        })
    }
}

struct Run<'a> {
    alg: &'a Algebra,
    frame: &'a Frame,
    ind: Vec<usize>,
    tv: Vec<Elem>,
    pred: Vec<Vec<Elem>>,
    sets: Vec<Vec<Elem>>,
}

impl<'a> Run<'a> {
    fn quant(&mut self, all: bool, n: usize, mut set: impl FnMut(&mut Self, usize), body: &C) -> Elem {
        let (unit, stop) = if all { (Elem::TOP, Elem::BOT) } else { (Elem::BOT, Elem::TOP) };
        let mut acc = unit;
        for k in 0..n {
            set(self, k);
            let v = self.go(body);
            acc = if all { self.alg.meet(acc, v) } else { self.alg.join(acc, v) };
            if acc == stop {
                break;
            }
        }
        acc
    }

    fn go(&mut self, c: &C) -> Elem {
        let alg = self.alg;
        match c {
            C::Eq(a, b) => {
                if self.ind[*a] == self.ind[*b] {
                    Elem::TOP
                } else {
                    Elem::BOT
                }
            }
            C::Rel(a, b) => self.frame.r(self.ind[*a], self.ind[*b]),
            C::Pred(p, t) => self.pred[*p][self.ind[*t]],
            C::Truth(e) => *e,
            C::Tv(s) => self.tv[*s],
            C::Or(a, b) => {
                let l = self.go(a);
                if l == Elem::TOP {
                    l
                } else {
                    alg.join(l, self.go(b))
                }
            }
            C::And(a, b) => {
                let l = self.go(a);
                if l == Elem::BOT {
                    l
                } else {
                    alg.meet(l, self.go(b))
                }
            }
            C::Implies(a, b) => {
                let l = self.go(a);
                if l == Elem::BOT {
                    Elem::TOP
                } else {
                    alg.implies(l, self.go(b))
                }
            }
            C::Minus(a, b) => {
                let l = self.go(a);
                alg.minus(l, self.go(b))
            }
            C::Preceq(a, b) => {
                let l = self.go(a);
                if l == Elem::BOT || alg.leq(l, self.go(b)) {
                    Elem::TOP
                } else {
                    Elem::BOT
                }
            }
            C::Ind { slot, all, body } => {
                let n = self.frame.size();
                self.quant(*all, n, |r, k| r.ind[*slot] = k, body)
            }
            C::Tv_ { slot, dom, all, body } => self.quant(*all, dom.len(), |r, k| r.tv[*slot] = dom[k], body),
            C::Pred_ { slot, all, body } => {
                let n = self.sets.len();
                self.quant(*all, n, |r, k| r.pred[*slot] = r.sets[k].clone(), body)
            }
        }
    }
}

/// Largest product of predicate-domain sizes along any path of nested predicate quantifiers.
fn pred_cost(f: &Fo, per: u64) -> Option<u64> {
    let inner = f.children().iter().map(|c| pred_cost(c, per)).try_fold(1u64, |m, c| c.map(|c| m.max(c)))?;
    match f {
        Fo::ForallPred(..) | Fo::ExistsPred(..) => inner.checked_mul(per),
        _ => Some(inner),
    }
}

fn check_state(frame: &Frame, w: usize) -> Result<(), FoError> {
    if w < frame.size() {
        Ok(())
    } else {
        Err(FoError::NoSuchState(w))
    }
}

/// Value of `f` on the frame under the assignment. Predicate quantifiers
/// enumerate all fuzzy sets and are limited by `budget`.
pub fn fo_eval_budget(
    alg: &Algebra,
    frame: &Frame,
    f: &Fo,
    assign: &Assignment,
    budget: u64,
) -> Result<Elem, FoError> {
    for &w in assign.ind.values() {
        check_state(frame, w)?;
    }
    let n = frame.size();
    let per = (alg.size() as u64).checked_pow(n as u32);
    let has_pred_q = {
        let mut found = false;
        f.walk(&mut |g| found |= matches!(g, Fo::ForallPred(..) | Fo::ExistsPred(..)));
        found
    };
    let sets = if has_pred_q {
        match per.and_then(|p| pred_cost(f, p)) {
            Some(k) if k <= budget => {}
            Some(k) => return Err(FoError::BudgetExceeded { needed: k.to_string(), budget }),
            None => return Err(FoError::BudgetExceeded { needed: "more than 2^64".into(), budget }),
        }
        atom_domain(alg, &Atom::Var(String::new()), n)
    } else {
        Vec::new()
    };
    let mut comp = Compiler { alg, scope: Vec::new(), ind: Vec::new(), tv: Vec::new(), pred: Vec::new(), assign };
    let code = comp.compile(f)?;
    for v in &comp.pred {
        if !v.is_empty() && v.len() != n {
            return Err(FoError::UnboundSymbol("predicate of the wrong length".into()));
        }
    }
    let mut run = Run { alg, frame, ind: comp.ind, tv: comp.tv, pred: comp.pred, sets };
    Ok(run.go(&code))
}

pub fn fo_eval(alg: &Algebra, frame: &Frame, f: &Fo, assign: &Assignment) -> Result<Elem, FoError> {
    fo_eval_budget(alg, frame, f, assign, crate::semantics::DEFAULT_BUDGET)
}

/// The first-order structure induced by a model: `P` is the value of `p`,
/// `c_i` names the state where `i` is nonzero and `C_i` is its value there,
/// and dually for co-nominals. `x` is sent to `w`.
pub fn assignment_for_model(model: &Model, x: &Term, w: usize) -> Assignment {
    let mut a = Assignment::default();
    for (atom, v) in &model.val {
        match atom {
            Atom::Var(p) => {
                a.pred.insert(pred_name(p), v.clone());
            }
            Atom::Nom(i) => {
                if let Some(s) = v.iter().position(|&e| e != Elem::BOT) {
                    a.ind.insert(Term::Nom(i.clone()), s);
                    a.tv.insert(TvSym::Nom(i.clone()), v[s]);
                }
            }
            Atom::CoNom(m) => {
                if let Some(s) = v.iter().position(|&e| e != Elem::TOP) {
                    a.ind.insert(Term::CoNom(m.clone()), s);
                    a.tv.insert(TvSym::CoNom(m.clone()), v[s]);
                }
            }
        }
    }
    a.ind.insert(x.clone(), w);
    a
}

/// Compares the modal value of `f` with the value of its standard translation
/// at every state. Returns the first state where they differ with both values.
pub fn st_faithfulness_check(
    alg: &Algebra,
    model: &Model,
    f: &Formula,
) -> Result<Option<(usize, Elem, Elem)>, FoError> {
    let x = Term::var("x");
    let st = super::standard_translation(f, &x);
    let modal = eval_all(alg, model, f)?;
    for (w, &v) in modal.iter().enumerate() {
        let fo = fo_eval(alg, &model.frame, &st, &assignment_for_model(model, &x, w))?;
        if fo != v {
            return Ok(Some((w, v, fo)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::Valuation;
    use crate::syntax::Const;

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    #[test]
    fn equality_is_crisp_and_reflexive() {
        let alg = p5();
        let f = Frame::uniform(2, Elem::BOT);
        let x = Term::var("x");
        let a = Assignment::default().with_term(x.clone(), 1);
        assert_eq!(fo_eval(&alg, &f, &Fo::eq(x.clone(), x.clone()), &a).unwrap(), Elem::TOP);
        let y = Term::var("y");
        let g = Fo::exists(y.clone(), Fo::not(Fo::eq(x.clone(), y)));
        assert_eq!(fo_eval(&alg, &f, &g, &a).unwrap(), Elem::TOP);
    }

    #[test]
    fn existential_over_single_reflexive_state() {
        let alg = p5();
        let gamma = alg.elem("gamma").unwrap();
        let f = Frame::uniform(1, gamma);
        let (x, y) = (Term::var("x"), Term::var("y"));
        let g = Fo::exists(y.clone(), Fo::and(Fo::rel(x.clone(), y.clone()), Fo::Pred("P".into(), y)));
        let mut a = Assignment::default().with_term(x, 0);
        a.pred.insert("P".into(), vec![Elem::TOP]);
        assert_eq!(fo_eval(&alg, &f, &g, &a).unwrap(), gamma);
    }

    #[test]
    fn preceq_is_crisp() {
        let alg = p5();
        let f = Frame::uniform(1, Elem::TOP);
        let c = |n: &str| Fo::Truth(Const { elem: alg.elem(n).unwrap(), name: n.into() });
        for a in ["0", "alpha", "beta", "gamma", "1"] {
            for b in ["0", "alpha", "beta", "gamma", "1"] {
                let v = fo_eval(&alg, &f, &Fo::preceq(c(a), c(b)), &Assignment::default()).unwrap();
                assert!(v == Elem::TOP || v == Elem::BOT);
                assert_eq!(v == Elem::TOP, alg.leq(alg.elem(a).unwrap(), alg.elem(b).unwrap()));
            }
        }
    }

    #[test]
    fn unbound_symbols_are_errors() {
        let alg = p5();
        let f = Frame::uniform(1, Elem::TOP);
        let g = Fo::rel(Term::var("x"), Term::var("x"));
        assert_eq!(fo_eval(&alg, &f, &g, &Assignment::default()), Err(FoError::UnboundSymbol("x".into())));
        let g = Fo::Tv(TvSym::Nom("i".into()));
        assert!(fo_eval(&alg, &f, &g, &Assignment::default()).is_err());
    }

    #[test]
    fn truth_value_quantifiers_range_over_irreducibles() {
        let alg = p5();
        let f = Frame::uniform(1, Elem::TOP);
        let c = TvSym::Nom("i".into());
        let all = Fo::forall_tv(c.clone(), Fo::Tv(c.clone()));
        let some = Fo::exists_tv(c.clone(), Fo::Tv(c.clone()));
        assert_eq!(fo_eval(&alg, &f, &all, &Assignment::default()).unwrap(), Elem::BOT);
        assert_eq!(fo_eval(&alg, &f, &some, &Assignment::default()).unwrap(), Elem::TOP);
        let m = TvSym::CoNom("m".into());
        let all = Fo::forall_tv(m.clone(), Fo::Tv(m.clone()));
        let some = Fo::exists_tv(m.clone(), Fo::Tv(m));
        assert_eq!(fo_eval(&alg, &f, &all, &Assignment::default()).unwrap(), Elem::BOT);
        assert_eq!(fo_eval(&alg, &f, &some, &Assignment::default()).unwrap(), alg.elem("gamma").unwrap());
    }

    #[test]
    fn predicate_quantifiers_are_budgeted() {
        let alg = p5();
        let f = Frame::uniform(2, Elem::TOP);
        let x = Term::var("x");
        let g = Fo::forall_pred("P", Fo::implies(Fo::Pred("P".into(), x.clone()), Fo::Pred("P".into(), x.clone())));
        let a = Assignment::default().with_term(x.clone(), 0);
        assert_eq!(fo_eval(&alg, &f, &g, &a).unwrap(), Elem::TOP);
        let h = Fo::exists_pred("P", Fo::forall_pred("Q", g));
        assert!(matches!(fo_eval_budget(&alg, &f, &h, &a, 100), Err(FoError::BudgetExceeded { .. })));
        let low = Fo::forall_pred("P", Fo::Pred("P".into(), x));
        assert_eq!(fo_eval(&alg, &f, &low, &a).unwrap(), Elem::BOT);
    }

    #[test]
    fn nominal_translation_at_its_state() {
        let alg = p5();
        let beta = alg.elem("beta").unwrap();
        let mut val = Valuation::new();
        val.insert(Atom::Nom("i".into()), vec![Elem::BOT, beta]);
        let model = Model::new(Frame::uniform(2, Elem::TOP), val);
        assert_eq!(st_faithfulness_check(&alg, &model, &Formula::nom("i")).unwrap(), None);
        let x = Term::var("x");
        let st = super::super::standard_translation(&Formula::nom("i"), &x);
        assert_eq!(fo_eval(&alg, &model.frame, &st, &assignment_for_model(&model, &x, 1)).unwrap(), beta);
    }
}
