//! Equivalence-preserving rewriting of correspondence formulas for display.
//!
//! Every rule is valid over every finite Heyting algebra: equalities and `=<`
//! are crisp, truth-value symbols range over irreducibles, and the algebra is
//! join-generated by its join-irreducibles and meet-generated by its
//! meet-irreducibles. Verification always runs on the unsimplified formula.

use super::{Fo, Sym, Term, TvSym};
use crate::syntax::Const;

const MAX_PASSES: usize = 200;

/// Rewrites to a fixpoint, or stops after a fixed number of passes.
pub fn simplify(f: &Fo) -> Fo {
    let mut cur = f.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Simplifies, then renames the free term `from` to `to` when `to` is unused.
/// Bound nominal and co-nominal constants become variables `z1`, `z2`, ...
pub fn for_display(f: &Fo, from: &Term, to: &Term) -> Fo {
    let s = simplify(f);
    let s = if s.bound_terms().contains(to) || s.occurs_free(to) { s } else { s.subst_term(from, to) };
    let mut used = std::collections::BTreeSet::new();
    s.walk(&mut |g| {
        for t in g.bound_terms().into_iter().chain(g.free_terms()) {
            if let Term::Var(v) = t {
                used.insert(v);
            }
        }
    });
    rename_bound(&s, &mut used, &mut 0)
}

fn pass(f: &Fo) -> Fo {
    let g = f.map_children(pass);
    step(&g).unwrap_or(g)
}

/// Only the constants named `1` and `0` act as units, so a named value such
/// as a pinned `a` stays visible whatever element it denotes.
fn is_top(f: &Fo) -> bool {
    matches!(f, Fo::Truth(c) if *c == Const::top())
}

fn is_bot(f: &Fo) -> bool {
    matches!(f, Fo::Truth(c) if *c == Const::bot())
}

/// Takes only the values 0 and 1.
pub fn is_crisp(f: &Fo) -> bool {
    match f {
        Fo::Eq(..) | Fo::Preceq(..) => true,
        Fo::Truth(_) => is_top(f) || is_bot(f),
        Fo::Rel(..) | Fo::Pred(..) | Fo::Tv(_) => false,
        _ => f.children().iter().all(|c| is_crisp(c)),
    }
}

fn conjuncts(f: &Fo) -> Vec<Fo> {
    match f {
        Fo::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        _ => vec![f.clone()],
    }
}

fn disjuncts(f: &Fo) -> Vec<Fo> {
    match f {
        Fo::Or(a, b) => {
            let mut v = disjuncts(a);
            v.extend(disjuncts(b));
            v
        }
        _ => vec![f.clone()],
    }
}

fn or_all(items: Vec<Fo>) -> Fo {
    Fo::or_all(items)
}

/// `t != u` is written `t = u -> 0`.
fn as_inequation(f: &Fo) -> Option<(&Term, &Term)> {
    match f {
        Fo::Implies(a, b) if is_bot(b) => match &**a {
            Fo::Eq(s, t) => Some((s, t)),
            _ => None,
        },
        _ => None,
    }
}

/// The other side of an equation `y = t` or `t = y` with `t` distinct from `y`.
fn solves<'a>(f: &'a Fo, y: &Term) -> Option<&'a Term> {
    match f {
        Fo::Eq(s, t) if s == y && t != y => Some(t),
        Fo::Eq(s, t) if t == y && s != y => Some(s),
        _ => None,
    }
}

fn mentions_tv(f: &Fo, c: &TvSym) -> bool {
    f.free_symbols().contains(&Sym::Tv(c.clone()))
}

/// Removes the first item satisfying `pick` and returns what it yields.
fn take<T>(items: &mut Vec<Fo>, mut pick: impl FnMut(&Fo) -> Option<T>) -> Option<T> {
    let k = items.iter().position(|f| pick(f).is_some())?;
    let f = items.remove(k);
    pick(&f)
}

/// Substitution is allowed when `t` is never bound inside `f`.
fn subst_ok(f: &Fo, t: &Term) -> bool {
    !f.bound_terms().contains(t)
}

fn step(f: &Fo) -> Option<Fo> {
    units(f)
        .or_else(|| one_point(f))
        .or_else(|| guards(f))
        .or_else(|| density(f))
        .or_else(|| block(f))
        .or_else(|| distribute(f))
        .or_else(|| residuate(f))
        .or_else(|| absorption(f))
}

fn units(f: &Fo) -> Option<Fo> {
    let top = Fo::verum;
    let bot = Fo::falsum;
    if let Some(g) = dedup(f) {
        return Some(g);
    }
    match f {
        Fo::And(a, b) if is_top(a) => Some((**b).clone()),
        Fo::And(a, b) if is_top(b) => Some((**a).clone()),
        Fo::And(a, b) if is_bot(a) || is_bot(b) => Some(bot()),
        Fo::And(a, b) if a == b => Some((**a).clone()),
        Fo::Or(a, b) if is_bot(a) => Some((**b).clone()),
        Fo::Or(a, b) if is_bot(b) => Some((**a).clone()),
        Fo::Or(a, b) if is_top(a) || is_top(b) => Some(top()),
        Fo::Or(a, b) if a == b => Some((**a).clone()),
        Fo::Implies(a, b) if is_top(a) => Some((**b).clone()),
        Fo::Implies(a, b) if is_top(b) || is_bot(a) || a == b => Some(top()),
        Fo::Implies(a, b) => match &**b {
            Fo::Implies(c, d) => Some(Fo::implies(Fo::and((**a).clone(), (**c).clone()), (**d).clone())),
            _ => None,
        },
        Fo::Minus(a, b) if is_bot(b) => Some((**a).clone()),
        Fo::Minus(a, b) if is_bot(a) || is_top(b) || a == b => Some(bot()),
        Fo::Preceq(a, b) if is_bot(a) || is_top(b) || a == b => Some(top()),
        Fo::Preceq(a, b) if is_top(a) && is_crisp(b) => Some((**b).clone()),
        Fo::Preceq(a, b) if is_crisp(a) && is_crisp(b) => Some(Fo::implies((**a).clone(), (**b).clone())),
        Fo::Eq(s, t) if s == t => Some(top()),
        Fo::Forall(x, a) | Fo::Exists(x, a) if !a.occurs_free(x) => Some((**a).clone()),
        Fo::ForallTv(c, a) | Fo::ExistsTv(c, a) if !mentions_tv(a, c) => Some((**a).clone()),
        Fo::ForallPred(p, a) | Fo::ExistsPred(p, a) if !a.free_symbols().contains(&Sym::Pred(p.clone())) => {
            Some((**a).clone())
        }
        Fo::Forall(x, a) => match &**a {
            Fo::And(l, r) => Some(Fo::and(Fo::forall(x.clone(), (**l).clone()), Fo::forall(x.clone(), (**r).clone()))),
            _ => None,
        },
        Fo::ForallTv(c, a) => match &**a {
            Fo::And(l, r) => Some(Fo::and(Fo::forall_tv(c.clone(), (**l).clone()), Fo::forall_tv(c.clone(), (**r).clone()))),
            _ => None,
        },
        _ => None,
    }
}

fn dedup(f: &Fo) -> Option<Fo> {
    let (items, join) = match f {
        Fo::And(..) => (conjuncts(f), false),
        Fo::Or(..) => (disjuncts(f), true),
        _ => return None,
    };
    let mut kept: Vec<Fo> = Vec::new();
    for i in &items {
        if !kept.contains(i) {
            kept.push(i.clone());
        }
    }
    (kept.len() < items.len()).then(|| if join { or_all(kept) } else { Fo::and_all(kept) })
}

/// Quantifiers over a variable that an equation pins to a single term.
fn one_point(f: &Fo) -> Option<Fo> {
    match f {
        Fo::Exists(y, body) => {
            let mut cs = conjuncts(body);
            let t = take(&mut cs, |c| solves(c, y).cloned())?;
            subst_ok(body, &t).then(|| Fo::and_all(cs).subst_term(y, &t))
        }
        Fo::Forall(y, body) => {
            let (shape, lhs, rhs): (u8, &Fo, &Fo) = match &**body {
                Fo::Implies(a, b) => (0, a, b),
                Fo::Preceq(a, b) => (1, a, b),
                _ => return forall_disjunction(y, body),
            };
            let mut cs = conjuncts(lhs);
            if let Some(t) = take(&mut cs, |c| solves(c, y).cloned()) {
                if !subst_ok(body, &t) {
                    return None;
                }
                let rest = Fo::and_all(cs);
                let g = if shape == 0 { Fo::implies(rest, rhs.clone()) } else { Fo::preceq(rest, rhs.clone()) };
                return Some(g.subst_term(y, &t));
            }
            if shape == 1 {
                let mut ds = disjuncts(rhs);
                let t = take(&mut ds, |d| as_inequation(d).and_then(|(s, t)| solves(&Fo::eq(s.clone(), t.clone()), y).cloned()))?;
                if !subst_ok(body, &t) {
                    return None;
                }
                return Some(Fo::preceq(lhs.clone(), or_all(ds)).subst_term(y, &t));
            }
            forall_disjunction(y, body)
        }
        _ => None,
    }
}

fn forall_disjunction(y: &Term, body: &Fo) -> Option<Fo> {
    let mut ds = disjuncts(body);
    if ds.len() < 2 {
        return None;
    }
    let t = take(&mut ds, |d| as_inequation(d).and_then(|(s, t)| solves(&Fo::eq(s.clone(), t.clone()), y).cloned()))?;
    subst_ok(body, &t).then(|| or_all(ds).subst_term(y, &t))
}

/// Moves equations out of `=<` into an implication guard.
fn guards(f: &Fo) -> Option<Fo> {
    let Fo::Preceq(l, r) = f else { return None };
    let mut cs = conjuncts(l);
    if cs.len() > 1 {
        if let Some(e) = take(&mut cs, |c| matches!(c, Fo::Eq(..)).then(|| c.clone())) {
            return Some(Fo::implies(e, Fo::preceq(Fo::and_all(cs), (**r).clone())));
        }
    }
    let mut ds = disjuncts(r);
    if ds.len() > 1 {
        if let Some((s, t)) = take(&mut ds, |d| as_inequation(d).map(|(s, t)| (s.clone(), t.clone()))) {
            return Some(Fo::implies(Fo::eq(s, t), Fo::preceq((**l).clone(), or_all(ds))));
        }
    }
    None
}

/// Eliminates a universally quantified truth-value symbol `C` from
/// `A C. (P & prem -> goal)` with `P` crisp and free of `C`. Over
/// meet-irreducibles `X1 =< C & .. -> Y =< D | C` is `Y =< D | X1 | ..`, and
/// dually over join-irreducibles. Premises `D =< C` with `D` a join-irreducible
/// symbol, or dually, are discharged by instantiating `C`.
fn density(f: &Fo) -> Option<Fo> {
    let Fo::ForallTv(c, body) = f else { return None };
    let (ante, goal) = match &**body {
        Fo::Implies(a, g) => (conjuncts(a), &**g),
        g => (Vec::new(), g),
    };
    let tv = Fo::Tv(c.clone());
    let co = matches!(c, TvSym::CoNom(_));
    let Fo::Preceq(gl, gr) = goal else { return None };
    let free = |g: &Fo| !mentions_tv(g, c);
    let (mentioning, rest): (Vec<Fo>, Vec<Fo>) = ante.into_iter().partition(|p| mentions_tv(p, c));
    if !rest.iter().all(is_crisp) {
        return None;
    }
    let guard = |core: Fo| if rest.is_empty() { core } else { Fo::implies(Fo::and_all(rest.clone()), core) };
    let instance = |p: &Fo| match p {
        Fo::Preceq(a, b) if !co && **b == tv && matches!(&**a, Fo::Tv(TvSym::Nom(_))) => Some((**a).clone()),
        Fo::Preceq(a, b) if co && **a == tv && matches!(&**b, Fo::Tv(TvSym::CoNom(_))) => Some((**b).clone()),
        _ => None,
    };
    if free(goal) {
        return match mentioning.as_slice() {
            [p] if instance(p).is_some() => Some(guard(goal.clone())),
            _ => None,
        };
    }
    let parts = if co { disjuncts(gr) } else { conjuncts(gl) };
    let other = if co { gl } else { gr };
    if free(other) && parts.iter().filter(|p| **p == tv).count() == 1 && parts.iter().all(|p| *p == tv || free(p)) {
        let mut items: Vec<Fo> = parts.into_iter().filter(|p| *p != tv).collect();
        for p in &mentioning {
            match p {
                Fo::Preceq(a, b) if co && **b == tv && free(a) => items.push((**a).clone()),
                Fo::Preceq(a, b) if !co && **a == tv && free(b) => items.push((**b).clone()),
                _ => return None,
            }
        }
        return Some(guard(if co { Fo::preceq((**other).clone(), join_of(items)) } else { Fo::preceq(meet_of(items), (**other).clone()) }));
    }
    if co && **gr == tv && mentioning.is_empty() {
        let (m, k): (Vec<Fo>, Vec<Fo>) = conjuncts(gl).into_iter().partition(|p| mentions_tv(p, c));
        if let [Fo::Implies(x, t)] = m.as_slice() {
            if **t == tv && free(x) {
                return Some(guard(Fo::preceq(meet_of(k), (**x).clone())));
            }
        }
        return None;
    }
    let y = match co {
        false if **gr == tv && free(gl) => gl,
        true if **gl == tv && free(gr) => gr,
        _ => return None,
    };
    let [p] = mentioning.as_slice() else { return None };
    let d = instance(p)?;
    Some(guard(if co { Fo::preceq(d, (**y).clone()) } else { Fo::preceq((**y).clone(), d) }))
}

fn join_of(items: Vec<Fo>) -> Fo {
    if items.is_empty() {
        Fo::falsum()
    } else {
        Fo::or_all(items)
    }
}

fn meet_of(items: Vec<Fo>) -> Fo {
    and_all(items)
}

fn has_tv(f: &Fo) -> bool {
    f.free_symbols().iter().any(|s| matches!(s, Sym::Tv(_)))
}

fn is_named(f: &Fo) -> bool {
    matches!(f, Fo::Truth(_)) && !is_top(f) && !is_bot(f)
}

/// Moves everything but a named constant to the right of `=<`, and lifts
/// crisp guards and universal quantifiers over it.
fn residuate(f: &Fo) -> Option<Fo> {
    match f {
        Fo::Preceq(l, r) if !has_tv(l) && !has_tv(r) => {
            let mut cs = conjuncts(l);
            if cs.len() < 2 || cs.iter().filter(|c| is_named(c)).count() != 1 {
                return None;
            }
            let k = cs.iter().position(is_named)?;
            let a = cs.remove(k);
            Some(Fo::preceq(a, Fo::implies(Fo::and_all(cs), (**r).clone())))
        }
        Fo::Forall(y, b) => match &**b {
            Fo::Preceq(a, r) if is_named(a) => Some(Fo::preceq((**a).clone(), Fo::forall(y.clone(), (**r).clone()))),
            _ => None,
        },
        Fo::Implies(p, b) if is_crisp(p) => match &**b {
            Fo::Preceq(a, r) if is_named(a) && !has_tv(r) => Some(Fo::preceq((**a).clone(), Fo::implies((**p).clone(), (**r).clone()))),
            _ => None,
        },
        Fo::Implies(a, b) => {
            let mut ds = disjuncts(b);
            let (s, t) = take(&mut ds, |d| as_inequation(d).map(|(s, t)| (s.clone(), t.clone())))?;
            Some(Fo::implies(Fo::eq(s, t), Fo::implies((**a).clone(), join_of(ds))))
        }
        _ => None,
    }
}

/// Renames bound nominal and co-nominal constants to fresh variables.
fn rename_bound(f: &Fo, used: &mut std::collections::BTreeSet<String>, next: &mut usize) -> Fo {
    let mut fresh = |used: &mut std::collections::BTreeSet<String>| loop {
        *next += 1;
        let v = format!("z{next}");
        if used.insert(v.clone()) {
            return Term::Var(v);
        }
    };
    match f {
        Fo::Forall(t @ (Term::Nom(_) | Term::CoNom(_)), b) | Fo::Exists(t @ (Term::Nom(_) | Term::CoNom(_)), b) => {
            let v = fresh(used);
            let body = rename_bound(&b.subst_term(t, &v), used, next);
            if matches!(f, Fo::Forall(..)) {
                Fo::forall(v, body)
            } else {
                Fo::exists(v, body)
            }
        }
        _ => f.map_children(|c| rename_bound(c, used, next)),
    }
}

fn and_all(items: Vec<Fo>) -> Fo {
    if items.is_empty() {
        Fo::verum()
    } else {
        Fo::and_all(items)
    }
}

#[derive(Clone, PartialEq)]
enum Binder {
    Ind(Term),
    Tv(TvSym),
}

fn bind(b: &Binder, f: Fo) -> Fo {
    match b {
        Binder::Ind(x) => Fo::forall(x.clone(), f),
        Binder::Tv(c) => Fo::forall_tv(c.clone(), f),
    }
}

/// Tries one-point and density rules on each binder of a block of universal
/// quantifiers, after moving it innermost.
fn block(f: &Fo) -> Option<Fo> {
    let mut binders = Vec::new();
    let mut m = f;
    loop {
        match m {
            Fo::Forall(x, _) => binders.push(Binder::Ind(x.clone())),
            Fo::ForallTv(c, _) => binders.push(Binder::Tv(c.clone())),
            _ => break,
        }
        m = m.children()[0];
    }
    if binders.len() < 2 {
        return None;
    }
    if binders.iter().any(|b| binders.iter().filter(|o| *o == b).count() > 1) {
        return None;
    }
    for k in 0..binders.len() - 1 {
        let g = bind(&binders[k], m.clone());
        if let Some(h) = one_point(&g).or_else(|| density(&g)) {
            let mut out = h;
            for (j, b) in binders.iter().enumerate().rev() {
                if j != k {
                    out = bind(b, out);
                }
            }
            return Some(out);
        }
    }
    None
}

fn distribute(f: &Fo) -> Option<Fo> {
    match f {
        Fo::Implies(a, b) => match &**b {
            Fo::And(l, r) => Some(Fo::and(Fo::implies((**a).clone(), (**l).clone()), Fo::implies((**a).clone(), (**r).clone()))),
            _ => None,
        },
        Fo::Preceq(x, b) => match (&**x, &**b) {
            (_, Fo::And(l, r)) => Some(Fo::and(Fo::preceq((**x).clone(), (**l).clone()), Fo::preceq((**x).clone(), (**r).clone()))),
            (Fo::Or(l, r), _) => Some(Fo::and(Fo::preceq((**l).clone(), (**b).clone()), Fo::preceq((**r).clone(), (**b).clone()))),
            _ => None,
        },
        Fo::Exists(y, body) => {
            let (out, keep): (Vec<Fo>, Vec<Fo>) = conjuncts(body).into_iter().partition(|c| !c.occurs_free(y));
            (!out.is_empty() && !keep.is_empty()).then(|| Fo::and(Fo::and_all(out), Fo::exists(y.clone(), Fo::and_all(keep))))
        }
        _ => None,
    }
}

/// `phi` is provably at least `x` in every algebra.
fn below(x: &Fo, phi: &Fo) -> bool {
    if phi == x || is_top(phi) || is_bot(x) || conjuncts(x).contains(phi) {
        return true;
    }
    match phi {
        Fo::And(a, b) => below(x, a) && below(x, b),
        Fo::Or(a, b) => below(x, a) || below(x, b),
        Fo::Implies(_, b) => below(x, b),
        Fo::Forall(y, b) => !x.occurs_free(y) && below(x, b),
        Fo::ForallTv(c, b) => !mentions_tv(x, c) && below(x, b),
        _ => false,
    }
}

fn absorption(f: &Fo) -> Option<Fo> {
    let Fo::Preceq(l, r) = f else { return None };
    let mut cs = conjuncts(r);
    if cs.len() > 1 {
        if let Some(k) = cs.iter().position(|c| c == &**l) {
            cs.remove(k);
            return Some(Fo::preceq((**l).clone(), Fo::and_all(cs)));
        }
    }
    let mut ds = disjuncts(l);
    if ds.len() > 1 {
        if let Some(k) = ds.iter().position(|d| d == &**r) {
            ds.remove(k);
            return Some(Fo::preceq(or_all(ds), (**r).clone()));
        }
    }
    if below(l, r) || disjuncts(r).contains(l) {
        return Some(Fo::verum());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::{fo_eval, Assignment, FoStyle};
    use crate::heyting::Algebra;
    use crate::semantics::Frame;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn agree(alg: &Algebra, f: &Fo, g: &Fo, free: &[Term], seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tvs: Vec<TvSym> = f
            .free_symbols()
            .into_iter()
            .filter_map(|s| match s {
                Sym::Tv(c) => Some(c),
                _ => None,
            })
            .collect();
        for _ in 0..300 {
            let n = rng.random_range(1..=3);
            let frame = Frame::random(alg, n, &mut rng);
            let mut a = Assignment::default();
            for t in free {
                a = a.with_term(t.clone(), rng.random_range(0..n));
            }
            for c in &tvs {
                let dom = match c {
                    TvSym::Nom(_) => alg.join_irreducibles(),
                    TvSym::CoNom(_) => alg.meet_irreducibles(),
                };
                a.tv.insert(c.clone(), dom[rng.random_range(0..dom.len())]);
            }
            assert_eq!(fo_eval(alg, &frame, f, &a).unwrap(), fo_eval(alg, &frame, g, &a).unwrap(), "{f} vs {g}");
        }
    }

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    fn parse(alg: &Algebra, s: &str) -> Fo {
        crate::fol::parse_fo(s, alg).unwrap()
    }

    #[test]
    fn each_rule_preserves_values() {
        let alg = p5();
        let x = Term::var("x");
        let cases = [
            "E y. (R(x,y) & y = x)",
            "A y. (y = x -> R(y,y))",
            "A y. ((y = x & R(x,x)) =< R(y,x))",
            "A y. (R(x,y) =< (y = x -> @0) | R(y,y))",
            "A y. ((y = x -> @0) | R(y,y))",
            "R(x,x) =< (x = x -> @0) | @gamma",
            "(R(x,x) & @alpha) =< R(x,x)",
            "R(x,x) =< R(x,x) & @beta",
            "(@1 & R(x,x)) | @0",
            "R(x,x) -> (x = x -> R(x,x))",
            "@1 =< (R(x,x) =< @alpha)",
        ];
        for s in cases {
            let f = parse(&alg, s);
            agree(&alg, &f, &simplify(&f), std::slice::from_ref(&x), 3);
        }
    }

    #[test]
    fn density_over_irreducibles() {
        let alg = p5();
        let x = Term::var("x");
        let f = parse(&alg, "A C$m. ((R(x,x) =< C$m) -> (@gamma =< C$m))");
        let g = simplify(&f);
        assert_eq!(FoStyle::Ascii.render(&g), "@gamma =< R(x,x)");
        agree(&alg, &f, &g, std::slice::from_ref(&x), 4);
        let h = parse(&alg, "A C#i. (((C#i =< @alpha) & x = x) -> (C#i =< R(x,x)))");
        let k = simplify(&h);
        assert_eq!(FoStyle::Ascii.render(&k), "@alpha =< R(x,x)");
        agree(&alg, &h, &k, &[x], 5);
    }

    #[test]
    fn reflexivity_chain() {
        let alg = p5();
        let a = Const { elem: alg.elem("gamma").unwrap(), name: "gamma".into() };
        let i = Term::Nom("i0".into());
        let raw = parse(
            &alg,
            "A C#i0. A c$m0. A C$m0. ((A x. ((c#i0 = x & C#i0) =< @gamma) & A x. (E y1. (R(x,y1) & (c#i0 = y1 & C#i0)) =< (c$m0 = x -> @0) | C$m0)) -> A x. ((c#i0 = x & C#i0) =< (c$m0 = x -> @0) | C$m0))",
        );
        let s = simplify(&raw);
        assert_eq!(s, Fo::preceq(Fo::Truth(a), Fo::rel(i.clone(), i.clone())));
        agree(&alg, &raw, &s, std::slice::from_ref(&i), 6);
        let d = for_display(&raw, &i, &Term::var("x"));
        assert_eq!(FoStyle::Display.render(&d), "gamma <= R(x,x)");
    }

    #[test]
    fn capture_is_avoided() {
        let alg = p5();
        let f = parse(&alg, "E y. (y = x & A x. R(x,y))");
        let g = simplify(&f);
        agree(&alg, &f, &g, &[Term::var("x")], 7);
    }
}
