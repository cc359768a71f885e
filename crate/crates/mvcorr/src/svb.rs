//! Sahlqvist–van Benthem correspondents of classical Sahlqvist formulas.
//!
//! The output never depends on the algebra or on the pinned value: it is read
//! off the formula alone, then checked against the many-valued semantics by
//! the oracle.

use crate::fol::{fo_eval, pred_name, simplify, Assignment, Fo, FoError, Sym, Term, Translator, TvSym};
use crate::gentree::{is_classical_sahlqvist, Antecedent, SahlqvistShape};
use crate::heyting::{Algebra, Elem};
use crate::semantics::Frame;
use crate::syntax::{Const, Formula};
use rand::Rng;
use serde::Serialize;
use std::cell::Cell;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SvbError {
    #[error("`{0}` is not a classical Sahlqvist formula")]
    NotClassicalSahlqvist(String),
}

/// `antecedent -> consequent` with an antecedent free of disjunctions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefiniteImplication {
    pub antecedent: Antecedent,
    pub consequent: Formula,
}

/// Definite implications and the way their correspondents recombine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    Implication(DefiniteImplication),
    /// `A y. (R(x,y) -> alpha(y))`
    Box(Box<Decomposition>),
    And(Box<Decomposition>, Box<Decomposition>),
    /// Only for disjuncts without shared variables.
    Or(Box<Decomposition>, Box<Decomposition>),
}

impl Decomposition {
    pub fn implications(&self) -> Vec<&DefiniteImplication> {
        match self {
            Decomposition::Implication(d) => vec![d],
            Decomposition::Box(d) => d.implications(),
            Decomposition::And(a, b) | Decomposition::Or(a, b) => {
                let mut v = a.implications();
                v.extend(b.implications());
                v
            }
        }
    }
}

/// Disjunction-free antecedents whose disjunction is `a`.
fn definite_parts(a: &Antecedent) -> Vec<Antecedent> {
    match a {
        Antecedent::Or(x, y) => {
            let mut v = definite_parts(x);
            v.extend(definite_parts(y));
            v
        }
        Antecedent::And(x, y) => {
            let (xs, ys) = (definite_parts(x), definite_parts(y));
            xs.iter()
                .flat_map(|l| ys.iter().map(move |r| Antecedent::And(Box::new(l.clone()), Box::new(r.clone()))))
                .collect()
        }
        Antecedent::Diamond(x) => definite_parts(x).into_iter().map(|p| Antecedent::Diamond(Box::new(p))).collect(),
        other => vec![other.clone()],
    }
}

fn from_shape(s: &SahlqvistShape) -> Decomposition {
    match s {
        SahlqvistShape::Implication { antecedent, consequent } => definite_parts(antecedent)
            .into_iter()
            .map(|a| Decomposition::Implication(DefiniteImplication { antecedent: a, consequent: consequent.clone() }))
            .reduce(|l, r| Decomposition::And(Box::new(l), Box::new(r)))
            .expect("an antecedent has at least one part"),
        SahlqvistShape::Box(b) => Decomposition::Box(Box::new(from_shape(b))),
        SahlqvistShape::And(a, b) => Decomposition::And(Box::new(from_shape(a)), Box::new(from_shape(b))),
        SahlqvistShape::Or(a, b) => Decomposition::Or(Box::new(from_shape(a)), Box::new(from_shape(b))),
    }
}

pub fn to_definite_implications(f: &Formula) -> Result<Decomposition, SvbError> {
    is_classical_sahlqvist(f).map(|s| from_shape(&s)).ok_or_else(|| SvbError::NotClassicalSahlqvist(f.to_string()))
}

/// `A y. (R^depth(var, y) -> P(y))`
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxAt {
    pub depth: usize,
    pub var: Term,
    pub pred: String,
}

/// A definite antecedent in prenex form `E vars. (REL & BOX-AT & NEG)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Normal {
    pub vars: Vec<Term>,
    pub rel: Vec<(Term, Term)>,
    pub box_at: Vec<BoxAt>,
    /// Negative parts with the state they are evaluated at.
    pub negative: Vec<(Formula, Term)>,
    /// The antecedent contains the constant 0.
    pub falsum: bool,
}

struct Names {
    xs: usize,
    zs: Cell<usize>,
    st: Translator,
    ctx: Translator,
}

impl Names {
    fn new() -> Self {
        Names { xs: 0, zs: Cell::new(0), st: Translator::new(), ctx: Translator::with_prefix("v") }
    }

    fn x(&mut self) -> Term {
        self.xs += 1;
        Term::Var(format!("x{}", self.xs))
    }

    fn z(&self) -> Term {
        self.zs.set(self.zs.get() + 1);
        Term::Var(format!("z{}", self.zs.get()))
    }
}

fn normalize(a: &Antecedent, at: &Term, names: &mut Names, out: &mut Normal) {
    match a {
        Antecedent::Top => {}
        Antecedent::Bot => out.falsum = true,
        Antecedent::BoxedAtom(n, p) => out.box_at.push(BoxAt { depth: *n, var: at.clone(), pred: pred_name(p) }),
        Antecedent::Negative(f) => out.negative.push((f.clone(), at.clone())),
        Antecedent::And(l, r) => {
            normalize(l, at, names, out);
            normalize(r, at, names, out);
        }
        Antecedent::Diamond(b) => {
            let y = names.x();
            out.vars.push(y.clone());
            out.rel.push((at.clone(), y.clone()));
            normalize(b, &y, names, out);
        }
        Antecedent::Or(..) => unreachable!("definite antecedents have no disjunction"),
    }
}

/// `R^n(from, to)` as a chain of existentials; `R^0` is equality.
pub fn r_power(n: usize, from: &Term, to: &Term, fresh: &mut dyn FnMut() -> Term) -> Fo {
    if n == 0 {
        return Fo::eq(from.clone(), to.clone());
    }
    let z = fresh();
    let rest = r_power(n - 1, &z, to, fresh);
    Fo::exists(z.clone(), Fo::and(Fo::rel(from.clone(), z), rest))
}

/// The minimal substitution for `pred`: the disjunction of `R^r(x_i, y)` over
/// its BOX-AT units, or falsum when there are none.
fn sigma(units: &[BoxAt], pred: &str, y: &Term, names: &Names) -> Fo {
    let ds: Vec<Fo> = units
        .iter()
        .filter(|u| u.pred == pred)
        .map(|u| r_power(u.depth, &u.var, y, &mut || names.z()))
        .collect();
    if ds.is_empty() {
        Fo::falsum()
    } else {
        Fo::or_all(ds)
    }
}

/// Constants print by their element so the text is the same in every algebra.
fn canonical(f: &Fo) -> Fo {
    match f {
        Fo::Truth(c) if c.elem == Elem::TOP => Fo::Truth(Const::top()),
        Fo::Truth(c) if c.elem == Elem::BOT => Fo::Truth(Const::bot()),
        _ => f.map_children(canonical),
    }
}

fn implication(d: &DefiniteImplication, x: &Term, names: &mut Names) -> Fo {
    let mut n = Normal::default();
    normalize(&d.antecedent, x, names, &mut n);
    if n.falsum {
        return Fo::verum();
    }
    let mut pos = names.st.formula(&d.consequent, x);
    if !n.negative.is_empty() {
        let negs: Vec<Fo> = n.negative.iter().map(|(f, at)| names.st.formula(f, at)).collect();
        pos = Fo::implies(Fo::and_all(negs), pos);
    }
    let preds: Vec<String> = pos
        .free_symbols()
        .into_iter()
        .filter_map(|s| match s {
            Sym::Pred(p) => Some(p),
            _ => None,
        })
        .collect();
    for p in preds {
        pos = pos.subst_pred(&p, &|t| sigma(&n.box_at, &p, t, names));
    }
    let rel: Vec<Fo> = n.rel.iter().map(|(a, b)| Fo::rel(a.clone(), b.clone())).collect();
    let mut out = if rel.is_empty() { pos } else { Fo::implies(Fo::and_all(rel), pos) };
    for v in n.vars.iter().rev() {
        out = Fo::forall(v.clone(), out);
    }
    out
}

fn build(d: &Decomposition, x: &Term, names: &mut Names) -> Fo {
    match d {
        Decomposition::Implication(i) => implication(i, x, names),
        Decomposition::Box(b) => {
            let y = names.ctx.fresh();
            let inner = build(b, &y, names);
            Fo::forall(y.clone(), Fo::implies(Fo::rel(x.clone(), y), inner))
        }
        Decomposition::And(a, b) => {
            let l = build(a, x, names);
            Fo::and(l, build(b, x, names))
        }
        Decomposition::Or(a, b) => {
            let l = build(a, x, names);
            Fo::or(l, build(b, x, names))
        }
    }
}

/// The local correspondent with free variable `x`.
pub fn svb_correspondent(f: &Formula) -> Result<Fo, SvbError> {
    let d = to_definite_implications(f)?;
    Ok(canonical(&build(&d, &Term::var("x"), &mut Names::new())))
}

/// [`svb_correspondent`] after the display rewriter.
pub fn svb_display(f: &Formula) -> Result<Fo, SvbError> {
    svb_correspondent(f).map(|g| simplify(&g))
}

/// `P(u) := delta(u)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub pred: String,
    pub param: Term,
    pub delta: Fo,
}

/// Applies every substitution, conjoining `C` to each replaced atom when given.
pub fn apply_substitution(phi: &Fo, subs: &[Substitution], c: Option<&TvSym>) -> Fo {
    let mut out = phi.clone();
    for s in subs {
        out = out.subst_pred(&s.pred, &|t| {
            let d = s.delta.subst_term(&s.param, t);
            match c {
                Some(c) => Fo::and(d, Fo::Tv(c.clone())),
                None => d,
            }
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CWitness {
    pub c: Elem,
    pub decorated: Elem,
    pub plain: Elem,
}

/// The truth-value symbol conjoined by [`check_c_elimination`].
pub fn c_symbol() -> TvSym {
    TvSym::Nom("C".into())
}

/// Compares `sigma_C(phi) /\ C` with `sigma(phi) /\ C` for every join-irreducible `C`.
pub fn check_c_elimination(
    alg: &Algebra,
    frame: &Frame,
    phi: &Fo,
    subs: &[Substitution],
    assign: &Assignment,
) -> Result<Option<CWitness>, FoError> {
    let c = c_symbol();
    let tv = Fo::Tv(c.clone());
    let decorated = Fo::and(apply_substitution(phi, subs, Some(&c)), tv.clone());
    let plain = Fo::and(apply_substitution(phi, subs, None), tv);
    for &cv in alg.join_irreducibles() {
        let mut a = assign.clone();
        a.tv.insert(c.clone(), cv);
        let (l, r) = (fo_eval(alg, frame, &decorated, &a)?, fo_eval(alg, frame, &plain, &a)?);
        if l != r {
            return Ok(Some(CWitness { c: cv, decorated: l, plain: r }));
        }
    }
    Ok(None)
}

/// Random formula of the second-order language over `preds` with the free
/// individual variables `free`, for property tests.
pub fn random_so_formula(alg: &Algebra, rng: &mut impl Rng, depth: usize, preds: &[&str], free: &[Term]) -> Fo {
    fn go(alg: &Algebra, rng: &mut dyn rand::RngCore, depth: usize, preds: &[&str], scope: &mut Vec<Term>, next: &mut usize) -> Fo {
        let term = |rng: &mut dyn rand::RngCore, scope: &Vec<Term>| scope[rng.random_range(0..scope.len())].clone();
        if depth == 0 || rng.random_range(0..4) == 0 {
            return match rng.random_range(0..4) {
                0 | 1 => Fo::Pred(preds[rng.random_range(0..preds.len())].to_string(), term(rng, scope)),
                2 => {
                    let (a, b) = (term(rng, scope), term(rng, scope));
                    if rng.random_bool(0.5) {
                        Fo::rel(a, b)
                    } else {
                        Fo::eq(a, b)
                    }
                }
                _ => {
                    let e = Elem(rng.random_range(0..alg.size()) as u16);
                    Fo::Truth(Const { elem: e, name: alg.name_of(e).to_string() })
                }
            };
        }
        match rng.random_range(0..8) {
            0 | 1 => Fo::and(go(alg, rng, depth - 1, preds, scope, next), go(alg, rng, depth - 1, preds, scope, next)),
            2 | 3 => Fo::or(go(alg, rng, depth - 1, preds, scope, next), go(alg, rng, depth - 1, preds, scope, next)),
            4 => Fo::implies(go(alg, rng, depth - 1, preds, scope, next), go(alg, rng, depth - 1, preds, scope, next)),
            5 | 6 => {
                *next += 1;
                let y = Term::Var(format!("y{next}"));
                scope.push(y.clone());
                let body = go(alg, rng, depth - 1, preds, scope, next);
                scope.pop();
                if rng.random_bool(0.5) {
                    Fo::forall(y, body)
                } else {
                    Fo::exists(y, body)
                }
            }
            _ => {
                let p = preds[rng.random_range(0..preds.len())];
                let body = go(alg, rng, depth - 1, preds, scope, next);
                if rng.random_bool(0.5) {
                    Fo::forall_pred(p, body)
                } else {
                    Fo::exists_pred(p, body)
                }
            }
        }
    }
    let mut scope = free.to_vec();
    go(alg, rng, depth, preds, &mut scope, &mut 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{library, FoStyle};
    use crate::oracle::{correspondence_oracle, OracleConfig};
    use crate::syntax::parse_formula;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    fn raw(s: &str) -> String {
        FoStyle::Ascii.render(&svb_correspondent(&parse_formula(s, &p5()).unwrap()).unwrap())
    }

    fn shown(s: &str) -> String {
        FoStyle::Ascii.render(&svb_display(&parse_formula(s, &p5()).unwrap()).unwrap())
    }

    #[test]
    fn raw_outputs() {
        assert_eq!(raw("p -> <>p"), "E y1. (R(x,y1) & x = y1)");
        assert_eq!(raw("<>p -> <><>p"), "A x1. (R(x,x1) -> E y1. (R(x,y1) & E y2. (R(y1,y2) & x1 = y2)))");
        assert_eq!(raw("[]p -> p"), "E z1. (R(x,z1) & z1 = x)");
        assert_eq!(raw("[](p -> <>p)"), "A v1. (R(x,v1) -> E y1. (R(v1,y1) & v1 = y1))");
    }

    #[test]
    fn displayed_outputs() {
        assert_eq!(shown("p -> <>p"), "R(x,x)");
        assert_eq!(shown("[]p -> p"), "R(x,x)");
        assert_eq!(shown("<><>p -> <>p"), "A x1. A x2. (R(x,x1) & R(x1,x2) -> R(x,x2))");
        assert_eq!(shown("p -> []<>p"), "A y1. (R(x,y1) -> R(y1,x))");
        assert_eq!(shown("[]p -> <>p"), "E y1. R(x,y1)");
    }

    #[test]
    fn disjunctive_antecedent_splits() {
        let alg = p5();
        let d = to_definite_implications(&parse_formula("(p \\/ q) -> <>p \\/ <>q", &alg).unwrap()).unwrap();
        assert_eq!(d.implications().len(), 2);
        let d = to_definite_implications(&parse_formula("(p -> <>p) \\/ (q -> <><>q)", &alg).unwrap()).unwrap();
        assert!(matches!(d, Decomposition::Or(..)));
        assert!(to_definite_implications(&parse_formula("[]<>p -> <>[]p", &alg).unwrap()).is_err());
    }

    #[test]
    fn correspondents_hold_for_every_value() {
        let alg = p5();
        let cfg = OracleConfig::exhaustive(&[1, 2]);
        let x = Term::var("x");
        for s in [
            "p -> <>p",
            "[]p -> [][]p",
            "p -> []<>p",
            "[]p -> <>p",
            "<>p -> <><>p",
            "[](p -> <>p)",
            "(p -> <>p) \\/ (q -> <><>q)",
            "(p \\/ q) -> <>p \\/ <>q",
            "[]p /\\ (q -> @0) -> <>p",
            "<>(p /\\ (q -> @0)) -> <>p",
            "@0 -> p",
        ] {
            let f = parse_formula(s, &alg).unwrap();
            let fo = svb_correspondent(&f).unwrap();
            let i = crate::syntax::Inequality::new(Formula::top(), f);
            for a in alg.elements() {
                let v = correspondence_oracle(&alg, &i, a, &fo, &x, a, &cfg).unwrap();
                assert!(v.is_pass(), "{s} at {}: {v:?}", alg.name_of(a));
            }
        }
        let fo = svb_correspondent(&parse_formula("p -> <>p", &alg).unwrap()).unwrap();
        assert_eq!(simplify(&fo), library::reflexivity());
    }

    #[test]
    fn same_text_in_every_algebra() {
        let b2 = Algebra::builtin("bool2").unwrap();
        for s in ["p -> <>p", "@1 -> []@1", "[]p /\\ @0 -> p"] {
            let l = svb_correspondent(&parse_formula(s, &b2).unwrap()).unwrap();
            let r = svb_correspondent(&parse_formula(s, &p5()).unwrap()).unwrap();
            assert_eq!(FoStyle::Ascii.render(&l), FoStyle::Ascii.render(&r));
        }
    }

    #[test]
    fn c_is_eliminated_on_random_formulas() {
        let alg = p5();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (x, w) = (Term::var("x"), Term::var("w"));
        let u = Term::var("u");
        let subs = vec![Substitution {
            pred: "P".into(),
            param: u.clone(),
            delta: Fo::or(Fo::eq(w.clone(), u.clone()), r_power(2, &w, &u, &mut { let mut k = 0; move || { k += 1; Term::Var(format!("z{k}")) } })),
        }];
        for _ in 0..60 {
            let phi = random_so_formula(&alg, &mut rng, 3, &["P", "Q"], &[x.clone(), w.clone()]);
            let frame = Frame::random(&alg, 2, &mut rng);
            let mut a = Assignment::default().with_term(x.clone(), rng.random_range(0..2)).with_term(w.clone(), rng.random_range(0..2));
            a.pred.insert("Q".into(), (0..2).map(|_| Elem(rng.random_range(0..alg.size()) as u16)).collect());
            a.pred.insert("P".into(), (0..2).map(|_| Elem(rng.random_range(0..alg.size()) as u16)).collect());
            assert_eq!(check_c_elimination(&alg, &frame, &phi, &subs, &a).unwrap(), None, "{phi}");
        }
    }
}
