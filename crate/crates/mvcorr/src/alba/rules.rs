use super::{is_critical, Fresh, Rule, Step};
use crate::gentree::{Mark, OrderType};
use crate::heyting::Elem;
use crate::syntax::{Formula, Inequality, Polarity};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

type Rewrite = (Rule, Vec<Inequality>);

/// Distributes at the first skeleton position where a rewrite applies.
/// `up` is true on the positive side, where joins move up.
fn distribute(f: &Formula, up: bool) -> Option<Formula> {
    use Formula as F;
    let here = if up {
        match f {
            F::Diamond(a) => match &**a {
                F::Or(x, y) => Some(F::or(F::diamond((**x).clone()), F::diamond((**y).clone()))),
                _ => None,
            },
            F::And(g, h) => match (&**g, &**h) {
                (_, F::Or(x, y)) => Some(F::or(F::and((**g).clone(), (**x).clone()), F::and((**g).clone(), (**y).clone()))),
                (F::Or(x, y), _) => Some(F::or(F::and((**x).clone(), (**h).clone()), F::and((**y).clone(), (**h).clone()))),
                _ => None,
            },
            _ => None,
        }
    } else {
        match f {
            F::Box(a) => match &**a {
                F::And(x, y) => Some(F::and(F::boxed((**x).clone()), F::boxed((**y).clone()))),
                _ => None,
            },
            F::Or(g, h) => match (&**g, &**h) {
                (_, F::And(x, y)) => Some(F::and(F::or((**g).clone(), (**x).clone()), F::or((**g).clone(), (**y).clone()))),
                (F::And(x, y), _) => Some(F::and(F::or((**x).clone(), (**h).clone()), F::or((**y).clone(), (**h).clone()))),
                _ => None,
            },
            F::Implies(g, h) => match (&**g, &**h) {
                (F::Or(x, y), _) => Some(F::and(F::implies((**x).clone(), (**h).clone()), F::implies((**y).clone(), (**h).clone()))),
                (_, F::And(x, y)) => Some(F::and(F::implies((**g).clone(), (**x).clone()), F::implies((**g).clone(), (**y).clone()))),
                _ => None,
            },
            _ => None,
        }
    };
    if here.is_some() {
        return here;
    }
    match (f, up) {
        (F::Or(x, y), _) | (F::And(x, y), _) => {
            let rebuild = |a: Formula, b: Formula| if matches!(f, F::Or(..)) { F::or(a, b) } else { F::and(a, b) };
            if let Some(nx) = distribute(x, up) {
                return Some(rebuild(nx, (**y).clone()));
            }
            distribute(y, up).map(|ny| rebuild((**x).clone(), ny))
        }
        (F::Diamond(x), true) => distribute(x, true).map(F::diamond),
        (F::Box(x), false) => distribute(x, false).map(F::boxed),
        (F::Implies(x, y), false) => {
            if let Some(nx) = distribute(x, true) {
                return Some(F::implies(nx, (**y).clone()));
            }
            distribute(y, false).map(|ny| F::implies((**x).clone(), ny))
        }
        _ => None,
    }
}

fn split_one(i: &Inequality) -> Option<Vec<Inequality>> {
    match (&i.lhs, &i.rhs) {
        (Formula::Or(a, b), r) => Some(vec![Inequality::new((**a).clone(), r.clone()), Inequality::new((**b).clone(), r.clone())]),
        (l, Formula::And(a, b)) => Some(vec![Inequality::new(l.clone(), (**a).clone()), Inequality::new(l.clone(), (**b).clone())]),
        _ => None,
    }
}

fn replace(sys: &[Inequality], k: usize, by: Vec<Inequality>) -> Vec<Inequality> {
    let mut out = sys[..k].to_vec();
    out.extend(by);
    out.extend_from_slice(&sys[k + 1..]);
    out
}

/// `l <= x -> y` becomes `l /\ x <= y`, or `x <= y` when `l` is the top constant.
fn curry(i: &Inequality) -> Option<Inequality> {
    let Formula::Implies(x, y) = &i.rhs else { return None };
    let lhs = match &i.lhs {
        Formula::Const(c) if c.elem == Elem::TOP => (**x).clone(),
        l => Formula::and(l.clone(), (**x).clone()),
    };
    Some(Inequality::new(lhs, (**y).clone()))
}

/// Phase one: distribution, splitting and elimination of one-signed variables,
/// repeated until nothing applies.
pub fn preprocess(ineq: &Inequality) -> (Vec<Inequality>, Vec<Step>) {
    let mut set = vec![ineq.clone()];
    let mut trace = Vec::new();
    let mut push = |rule: Rule, before: &mut Vec<Inequality>, after: Vec<Inequality>| {
        trace.push(Step { rule, before: std::mem::replace(before, after.clone()), after });
    };
    loop {
        let mut changed = false;
        while let Some((k, n)) = set.iter().enumerate().find_map(|(k, i)| {
            distribute(&i.lhs, true)
                .map(|l| Inequality::new(l, i.rhs.clone()))
                .or_else(|| distribute(&i.rhs, false).map(|r| Inequality::new(i.lhs.clone(), r)))
                .map(|n| (k, n))
        }) {
            let after = replace(&set, k, vec![n]);
            push(Rule::Distribution, &mut set, after);
            changed = true;
        }
        while let Some((k, n)) = set.iter().enumerate().find_map(|(k, i)| curry(i).map(|n| (k, n))) {
            let after = replace(&set, k, vec![n]);
            push(Rule::Residuation("->"), &mut set, after);
            changed = true;
        }
        while let Some((k, parts)) = set.iter().enumerate().find_map(|(k, i)| split_one(i).map(|p| (k, p))) {
            let after = replace(&set, k, parts);
            push(Rule::Splitting, &mut set, after);
            changed = true;
        }
        for k in 0..set.len() {
            for p in set[k].vars() {
                let (rule, by) = match set[k].polarity(&p) {
                    Polarity::Positive => (Rule::MonotoneElimination(p.clone()), Formula::bot()),
                    Polarity::Negative => (Rule::AntitoneElimination(p.clone()), Formula::top()),
                    _ => continue,
                };
                let n = Inequality::new(set[k].lhs.subst_var(&p, &by), set[k].rhs.subst_var(&p, &by));
                let after = replace(&set, k, vec![n]);
                push(rule, &mut set, after);
                changed = true;
            }
        }
        if !changed {
            return (set, trace);
        }
    }
}

/// Splits the first non-pinned inequality with a join on the left or a meet on the right.
pub(super) fn split(sys: &[Inequality], pinned: &Inequality) -> Option<Rewrite> {
    sys.iter()
        .enumerate()
        .filter(|(_, i)| *i != pinned)
        .find_map(|(k, i)| split_one(i).map(|p| (Rule::Splitting, replace(sys, k, p))))
}

fn allowed(p: Polarity, ok: Polarity) -> bool {
    p == Polarity::Absent || p == ok
}

/// Applies the first possible Ackermann rule, preferring the direction given by `eps`.
pub(super) fn ackermann(sys: &[Inequality], pinned: &Inequality, vars: &[String], eps: &OrderType) -> Option<Rewrite> {
    for p in vars {
        let right_first = eps.get(p) != Some(&Mark::Dual);
        for right in [right_first, !right_first] {
            if let Some(r) = ackermann_on(sys, pinned, p, right) {
                return Some(r);
            }
        }
    }
    None
}

fn ackermann_on(sys: &[Inequality], pinned: &Inequality, p: &str, right: bool) -> Option<Rewrite> {
    let var = Formula::var(p);
    let mut bounds = Vec::new();
    let mut rest = Vec::new();
    for i in sys {
        let (own, other) = if right { (&i.rhs, &i.lhs) } else { (&i.lhs, &i.rhs) };
        if i != pinned && *own == var && !other.contains_var(p) {
            bounds.push(other.clone());
        } else {
            rest.push(i);
        }
    }
    let (lp, rp) = if right { (Polarity::Positive, Polarity::Negative) } else { (Polarity::Negative, Polarity::Positive) };
    if !rest.iter().all(|i| allowed(i.lhs.polarity(p), lp) && allowed(i.rhs.polarity(p), rp)) {
        return None;
    }
    let by = if right { Formula::join_all(bounds) } else { Formula::meet_all(bounds) };
    let after = rest
        .into_iter()
        .map(|i| Inequality::new(i.lhs.subst_var(p, &by), i.rhs.subst_var(p, &by)))
        .collect();
    let rule = if right { Rule::RightAckermann(p.into()) } else { Rule::LeftAckermann(p.into()) };
    Some((rule, after))
}

/// Variable occurrences with their polarity, as child-index paths.
fn occurrences(f: &Formula, positive: bool, path: &mut Vec<usize>, out: &mut Vec<(String, Vec<usize>, bool)>) {
    if let Formula::Var(p) = f {
        out.push((p.clone(), path.clone(), positive));
        return;
    }
    for (k, c) in f.children().into_iter().enumerate() {
        let flip = matches!((f, k), (Formula::Implies(..), 0) | (Formula::Minus(..), 1));
        path.push(k);
        occurrences(c, positive != flip, path, out);
        path.pop();
    }
}

fn is_nominal(f: &Formula) -> bool {
    matches!(f, Formula::Nom(_))
}

fn is_conominal(f: &Formula) -> bool {
    matches!(f, Formula::CoNom(_))
}

fn ineq(l: Formula, r: Formula) -> Inequality {
    Inequality::new(l, r)
}

/// One step that moves the connective above an occurrence to the other side,
/// or approximates it away. `child` is the first index on the occurrence's path.
fn peel(i: &Inequality, side: Side, child: usize, fresh: &mut Fresh) -> Option<Rewrite> {
    use Formula as F;
    let (l, r) = (i.lhs.clone(), i.rhs.clone());
    let (rule, out) = match side {
        Side::Right => match &i.rhs {
            F::Box(s) => (Rule::Residuation("[]"), vec![ineq(F::diamond_inv(l), (**s).clone())]),
            F::BoxInv(s) => (Rule::Residuation("[i]"), vec![ineq(F::diamond(l), (**s).clone())]),
            F::Or(a, b) => {
                let (keep, other) = if child == 0 { (a, b) } else { (b, a) };
                (Rule::Residuation("\\/"), vec![ineq(F::minus(l, (**other).clone()), (**keep).clone())])
            }
            F::Implies(a, b) if child == 1 => (Rule::Residuation("->"), vec![ineq(F::and(l, (**a).clone()), (**b).clone())]),
            F::Implies(a, b) => (Rule::Residuation("->"), vec![ineq((**a).clone(), F::implies(l, (**b).clone()))]),
            F::Diamond(s) if is_nominal(&l) => {
                let j = fresh.nom();
                (Rule::Approximation("<>"), vec![ineq(j.clone(), (**s).clone()), ineq(l, F::diamond(j))])
            }
            _ => return None,
        },
        Side::Left => match &i.lhs {
            F::Diamond(s) => (Rule::Residuation("<>"), vec![ineq((**s).clone(), F::box_inv(r))]),
            F::DiamondInv(s) => (Rule::Residuation("<i>"), vec![ineq((**s).clone(), F::boxed(r))]),
            F::And(a, b) => {
                let (keep, other) = if child == 0 { (a, b) } else { (b, a) };
                (Rule::Residuation("/\\"), vec![ineq((**keep).clone(), F::implies((**other).clone(), r))])
            }
            F::Minus(a, b) => (Rule::Residuation("-"), vec![ineq((**a).clone(), F::or((**b).clone(), r))]),
            F::Box(s) if is_conominal(&r) => {
                let n = fresh.conom();
                (Rule::Approximation("[]"), vec![ineq((**s).clone(), n.clone()), ineq(F::boxed(n), r)])
            }
            F::Implies(a, b) if is_conominal(&r) && child == 0 => {
                let j = fresh.nom();
                (
                    Rule::Approximation("-> left"),
                    vec![ineq(j.clone(), (**a).clone()), ineq(F::implies(j, (**b).clone()), r)],
                )
            }
            F::Implies(a, b) if is_conominal(&r) => {
                let n = fresh.conom();
                (
                    Rule::Approximation("-> right"),
                    vec![ineq((**b).clone(), n.clone()), ineq(F::implies((**a).clone(), n), r)],
                )
            }
            _ => return None,
        },
    };
    Some((rule, out))
}

/// Works toward the shape required by the Ackermann rules: picks the first
/// critical occurrence not yet isolated and applies one residuation or
/// approximation step above it. Steps that revisit a system are skipped.
pub(super) fn isolate(
    sys: &[Inequality],
    pinned: &Inequality,
    eps: &OrderType,
    fresh: &mut Fresh,
    seen: &HashSet<Vec<Inequality>>,
) -> Option<Rewrite> {
    for (k, i) in sys.iter().enumerate() {
        if i == pinned {
            continue;
        }
        for (side, f) in [(Side::Left, &i.lhs), (Side::Right, &i.rhs)] {
            let mut occ = Vec::new();
            occurrences(f, true, &mut Vec::new(), &mut occ);
            for (p, path, positive) in occ {
                let mark = eps.get(&p).copied().unwrap_or(Mark::One);
                if !is_critical(mark, side, positive) || path.is_empty() {
                    continue;
                }
                let saved = (fresh.noms, fresh.conoms);
                if let Some((rule, parts)) = peel(i, side, path[0], fresh) {
                    let after = replace(sys, k, parts);
                    if !seen.contains(&after) {
                        return Some((rule, after));
                    }
                }
                (fresh.noms, fresh.conoms) = saved;
            }
        }
    }
    None
}
