//! Standard translation of modal formulas into the correspondence language.

use super::{Fo, Term, TvSym};
use crate::syntax::{Formula, Inequality};

/// Predicate symbol for a propositional variable: first letter uppercased.
pub fn pred_name(p: &str) -> String {
    let mut cs = p.chars();
    match cs.next() {
        Some(c) => c.to_ascii_uppercase().to_string() + cs.as_str(),
        None => String::new(),
    }
}

/// Draws fresh bound variables `y1, y2, ...`. Reusing one translator across
/// several calls keeps all bound variables distinct.
#[derive(Debug, Default, Clone)]
pub struct Translator {
    next: usize,
    prefix: String,
}

impl Translator {
    pub fn new() -> Self {
        Translator { next: 0, prefix: "y".into() }
    }

    pub fn with_prefix(prefix: &str) -> Self {
        Translator { next: 0, prefix: prefix.into() }
    }

    pub fn fresh(&mut self) -> Term {
        self.next += 1;
        Term::Var(format!("{}{}", self.prefix, self.next))
    }

    pub fn formula(&mut self, f: &Formula, x: &Term) -> Fo {
        let bin = |t: &mut Self, a: &Formula, b: &Formula| (t.formula(a, x), t.formula(b, x));
        match f {
            Formula::Var(p) => Fo::Pred(pred_name(p), x.clone()),
            Formula::Nom(i) => Fo::and(Fo::eq(Term::Nom(i.clone()), x.clone()), Fo::Tv(TvSym::Nom(i.clone()))),
            Formula::CoNom(m) => Fo::or(
                Fo::not(Fo::eq(Term::CoNom(m.clone()), x.clone())),
                Fo::Tv(TvSym::CoNom(m.clone())),
            ),
            Formula::Const(c) => Fo::Truth(c.clone()),
            Formula::Or(a, b) => {
                let (a, b) = bin(self, a, b);
                Fo::or(a, b)
            }
            Formula::And(a, b) => {
                let (a, b) = bin(self, a, b);
                Fo::and(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = bin(self, a, b);
                Fo::implies(a, b)
            }
            Formula::Minus(a, b) => {
                let (a, b) = bin(self, a, b);
                Fo::minus(a, b)
            }
            Formula::Box(a) | Formula::BoxInv(a) => {
                let y = self.fresh();
                let r = if matches!(f, Formula::Box(_)) {
                    Fo::rel(x.clone(), y.clone())
                } else {
                    Fo::rel(y.clone(), x.clone())
                };
                let body = self.formula(a, &y);
                Fo::forall(y, Fo::implies(r, body))
            }
            Formula::Diamond(a) | Formula::DiamondInv(a) => {
                let y = self.fresh();
                let r = if matches!(f, Formula::Diamond(_)) {
                    Fo::rel(x.clone(), y.clone())
                } else {
                    Fo::rel(y.clone(), x.clone())
                };
                let body = self.formula(a, &y);
                Fo::exists(y, Fo::and(r, body))
            }
        }
    }

    pub fn inequality(&mut self, i: &Inequality, x: &Term) -> Fo {
        let l = self.formula(&i.lhs, x);
        Fo::preceq(l, self.formula(&i.rhs, x))
    }
}

/// `ST_x(f)` with fresh variables `y1, y2, ...`.
pub fn standard_translation(f: &Formula, x: &Term) -> Fo {
    Translator::new().formula(f, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{assignment_for_model, fo_eval, st_faithfulness_check, FoStyle};
    use crate::heyting::{Algebra, Elem};
    use crate::semantics::{atom_domain, Frame, Model, Valuation};
    use crate::syntax::{parse_formula, Atom, Const};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    #[test]
    fn basic_clauses() {
        let alg = p5();
        let x = Term::var("x");
        let st = |s: &str| FoStyle::Ascii.render(&standard_translation(&parse_formula(s, &alg).unwrap(), &x));
        assert_eq!(st("p"), "P(x)");
        assert_eq!(st("[]p"), "A y1. (R(x,y1) -> P(y1))");
        assert_eq!(st("<>#i"), "E y1. (R(x,y1) & (c#i = y1 & C#i))");
        assert_eq!(st("[]@alpha"), "A y1. (R(x,y1) -> @alpha)");
        assert_eq!(st("[i]p"), "A y1. (R(y1,x) -> P(y1))");
        assert_eq!(st("$m"), "(c$m = x -> @0) | C$m");
    }

    #[test]
    fn output_is_clean() {
        let alg = p5();
        let f = parse_formula("[](<>p -> [](q /\\ <>p)) \\/ <>[]<>q", &alg).unwrap();
        let st = standard_translation(&f, &Term::var("x"));
        assert!(st.is_clean());
        assert_eq!(st.free_terms(), [Term::var("x")].into());
    }

    #[test]
    fn iterated_box_unfolds_into_chain() {
        let alg = p5();
        let x = Term::var("x");
        let st = standard_translation(&parse_formula("[][]p", &alg).unwrap(), &x);
        let r2 = |y: &Term| {
            let z = Term::var("z");
            Fo::exists(z.clone(), Fo::and(Fo::rel(x.clone(), z.clone()), Fo::rel(z, y.clone())))
        };
        let y = Term::var("u");
        let chain = Fo::forall(y.clone(), Fo::implies(r2(&y), Fo::Pred("P".into(), y)));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let frame = Frame::random(&alg, 3, &mut rng);
            let p: Vec<Elem> = (0..3).map(|_| Elem(rng.random_range(0..5))).collect();
            let model = Model::new(frame, [(Atom::Var("p".into()), p)].into());
            for w in 0..3 {
                let a = assignment_for_model(&model, &x, w);
                assert_eq!(fo_eval(&alg, &model.frame, &st, &a), fo_eval(&alg, &model.frame, &chain, &a));
            }
        }
    }

    #[test]
    fn constants_translate_to_themselves() {
        let alg = p5();
        for e in alg.elements() {
            let c = Formula::Const(Const { elem: e, name: alg.name_of(e).into() });
            let model = Model::new(Frame::uniform(2, Elem::TOP), Valuation::new());
            assert_eq!(st_faithfulness_check(&alg, &model, &c).unwrap(), None);
        }
    }

    #[test]
    fn nominal_values_match_at_every_placement() {
        let alg = p5();
        for v in atom_domain(&alg, &Atom::Nom("i".into()), 2) {
            for m in atom_domain(&alg, &Atom::CoNom("m".into()), 2) {
                let val: Valuation = [(Atom::Nom("i".into()), v.clone()), (Atom::CoNom("m".into()), m)].into();
                let model = Model::new(Frame::new(2, vec![Elem(2), Elem(1), Elem(0), Elem(4)]), val);
                let f = parse_formula("<>#i \\/ ($m - [i]#i)", &alg).unwrap();
                assert_eq!(st_faithfulness_check(&alg, &model, &f).unwrap(), None);
            }
        }
    }
}
