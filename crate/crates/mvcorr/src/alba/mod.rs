//! The ALBA calculus for inequalities with a pinned truth value: preprocessing,
//! reduction and elimination, and translation into the correspondence language.

mod rules;
pub mod soundness;

use crate::fol::{Fo, Term, Translator, TvSym};
use crate::gentree::{is_inductive, is_sahlqvist, order_types, Mark, OrderType};
use crate::heyting::{Algebra, Elem};
use crate::syntax::{Atom, Const, Formula, Inequality, ModalInput, QuasiInequality};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

pub use rules::{preprocess, Side};

/// Rule applications allowed per reduction attempt.
pub const STEP_CAP: usize = 10_000;

pub const I0: &str = "i0";
pub const M0: &str = "m0";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlbaError {
    #[error("ALBA accepts only the basic modal language, found `{0}`")]
    NotBasic(String),
    #[error("`{0}` is not an element of the algebra")]
    UnknownValue(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Distribution,
    Splitting,
    MonotoneElimination(String),
    AntitoneElimination(String),
    FirstApproximation,
    Approximation(&'static str),
    Residuation(&'static str),
    RightAckermann(String),
    LeftAckermann(String),
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Distribution => write!(f, "distribution"),
            Rule::Splitting => write!(f, "splitting"),
            Rule::MonotoneElimination(p) => write!(f, "monotone elimination of {p}"),
            Rule::AntitoneElimination(p) => write!(f, "antitone elimination of {p}"),
            Rule::FirstApproximation => write!(f, "first approximation"),
            Rule::Approximation(k) => write!(f, "approximation ({k})"),
            Rule::Residuation(k) => write!(f, "residuation ({k})"),
            Rule::RightAckermann(p) => write!(f, "right Ackermann on {p}"),
            Rule::LeftAckermann(p) => write!(f, "left Ackermann on {p}"),
        }
    }
}

impl Rule {
    pub fn is_preprocessing(&self) -> bool {
        matches!(
            self,
            Rule::Distribution | Rule::MonotoneElimination(_) | Rule::AntitoneElimination(_)
        )
    }
}

/// One rule application on a whole system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: Rule,
    pub before: Vec<Inequality>,
    pub after: Vec<Inequality>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Success,
    Failure,
    NonTermination,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Success => "success",
            Status::Failure => "failure",
            Status::NonTermination => "non-termination",
        })
    }
}

/// Reduction of one preprocessed inequality.
#[derive(Clone, Debug, Serialize)]
pub struct BranchRun {
    /// `lhs <= rhs`, read with the pinned value conjoined to `lhs`.
    pub pre: Inequality,
    pub initial: Vec<Inequality>,
    pub status: Status,
    /// The order type of the reported attempt.
    pub order_type: OrderType,
    pub attempts: usize,
    /// Variable free on success, the stuck system otherwise.
    pub system: Vec<Inequality>,
    /// First approximation, then every reduction step of the reported attempt.
    pub trace: Vec<Step>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlbaResult {
    pub status: Status,
    pub input: Inequality,
    pub value: Elem,
    pub value_name: String,
    /// `#i0 <= @a`, carried through every system unchanged.
    pub pinned: Inequality,
    pub preprocessing: Vec<Step>,
    pub pre: Vec<Inequality>,
    pub branches: Vec<BranchRun>,
    /// One per branch, only on success.
    pub quasi: Vec<QuasiInequality>,
}

/// The pinned constant, printed as `a` whatever its value.
pub fn pinned_const(value: Elem) -> Const {
    Const { elem: value, name: "a".into() }
}

pub fn pinned_inequality(value: Elem) -> Inequality {
    Inequality::new(Formula::nom(I0), Formula::Const(pinned_const(value)))
}

/// Runs all three phases on `lhs /\ a <= rhs`.
pub fn run_alba(input: &ModalInput, value: Elem) -> Result<AlbaResult, AlbaError> {
    let ineq = input.as_inequality();
    for f in [&ineq.lhs, &ineq.rhs] {
        if !f.is_basic() {
            return Err(AlbaError::NotBasic(f.to_string()));
        }
    }
    let (pre, preprocessing) = preprocess(&ineq);
    let pinned = pinned_inequality(value);
    let branches: Vec<BranchRun> = pre.iter().map(|p| reduce_branch(p, &pinned)).collect();
    let status = if branches.iter().all(|b| b.status == Status::Success) {
        Status::Success
    } else if branches.iter().any(|b| b.status == Status::NonTermination) {
        Status::NonTermination
    } else {
        Status::Failure
    };
    let quasi = if status == Status::Success {
        branches
            .iter()
            .map(|b| QuasiInequality {
                premises: b.system.clone(),
                conclusion: Inequality::new(Formula::nom(I0), Formula::conom(M0)),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(AlbaResult {
        status,
        input: ineq,
        value,
        value_name: String::new(),
        pinned,
        preprocessing,
        pre,
        branches,
        quasi,
    })
}

/// Same as [`run_alba`], recording the value's name for reports.
pub fn run_alba_named(alg: &Algebra, input: &ModalInput, value: &str) -> Result<AlbaResult, AlbaError> {
    let e = alg.elem(value).ok_or_else(|| AlbaError::UnknownValue(value.into()))?;
    let mut r = run_alba(input, e)?;
    r.value_name = alg.name_of(e).to_string();
    Ok(r)
}

/// Order types to try on a branch, best candidates first.
fn candidates(pre: &Inequality) -> Vec<OrderType> {
    let vars: Vec<String> = pre.vars().into_iter().collect();
    let mut out = Vec::new();
    if let Some((_, e)) = is_inductive(pre) {
        out.push(e);
    }
    if let Some(e) = is_sahlqvist(pre) {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    for e in order_types(&vars) {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

fn reduce_branch(pre: &Inequality, pinned: &Inequality) -> BranchRun {
    let a = pinned.rhs.clone();
    let start = Inequality::new(Formula::and(pre.lhs.clone(), a.clone()), pre.rhs.clone());
    let approx = vec![
        Inequality::new(Formula::nom(I0), start.lhs.clone()),
        Inequality::new(pre.rhs.clone(), Formula::conom(M0)),
    ];
    let initial = vec![
        Inequality::new(Formula::nom(I0), pre.lhs.clone()),
        pinned.clone(),
        Inequality::new(pre.rhs.clone(), Formula::conom(M0)),
    ];
    let head = vec![
        Step { rule: Rule::FirstApproximation, before: vec![start], after: approx.clone() },
        Step { rule: Rule::Splitting, before: approx, after: initial.clone() },
    ];
    let mut first: Option<BranchRun> = None;
    let cands = candidates(pre);
    for (k, eps) in cands.iter().enumerate() {
        let (status, system, steps) = reduce(&initial, pinned, eps);
        let mut trace = head.clone();
        trace.extend(steps);
        let run = BranchRun {
            pre: pre.clone(),
            initial: initial.clone(),
            status,
            order_type: eps.clone(),
            attempts: k + 1,
            system,
            trace,
        };
        if status == Status::Success {
            return run;
        }
        if first.is_none() {
            first = Some(run);
        }
    }
    let mut run = first.expect("at least one order type");
    run.attempts = cands.len();
    run
}

/// Fresh nominal and co-nominal names for one attempt.
pub(crate) struct Fresh {
    noms: usize,
    conoms: usize,
}

impl Fresh {
    fn nom(&mut self) -> Formula {
        self.noms += 1;
        Formula::nom(&format!("j{}", self.noms))
    }
    fn conom(&mut self) -> Formula {
        self.conoms += 1;
        Formula::conom(&format!("n{}", self.conoms))
    }
}

fn system_vars(sys: &[Inequality]) -> Vec<String> {
    let mut vs: Vec<String> = sys.iter().flat_map(|i| i.vars()).collect();
    vs.sort();
    vs.dedup();
    vs
}

/// Phase two on one initial system under the order type `eps`.
fn reduce(initial: &[Inequality], pinned: &Inequality, eps: &OrderType) -> (Status, Vec<Inequality>, Vec<Step>) {
    let mut sys = initial.to_vec();
    let mut trace = Vec::new();
    let mut fresh = Fresh { noms: 0, conoms: 0 };
    let mut seen: HashSet<Vec<Inequality>> = HashSet::new();
    seen.insert(sys.clone());
    loop {
        let vars = system_vars(&sys);
        if vars.is_empty() {
            return (Status::Success, sys, trace);
        }
        if trace.len() >= STEP_CAP {
            return (Status::NonTermination, sys, trace);
        }
        let step = rules::ackermann(&sys, pinned, &vars, eps)
            .or_else(|| rules::split(&sys, pinned))
            .or_else(|| rules::isolate(&sys, pinned, eps, &mut fresh, &seen));
        match step {
            Some((rule, after)) => {
                seen.insert(after.clone());
                trace.push(Step { rule, before: std::mem::replace(&mut sys, after.clone()), after });
            }
            None => return (Status::Failure, sys, trace),
        }
    }
}

/// Which side of `ineq` a variable occurrence must be isolated on under `eps`.
pub(crate) fn is_critical(mark: Mark, side: Side, positive: bool) -> bool {
    match mark {
        Mark::One => (side == Side::Right) == positive,
        Mark::Dual => (side == Side::Left) == positive,
    }
}

impl AlbaResult {
    /// The local correspondent with `c#i0` free.
    pub fn fo(&self) -> Option<Fo> {
        if self.status != Status::Success {
            return None;
        }
        Some(Fo::and_all(self.branches.iter().map(|b| branch_fo(&b.system)).collect()))
    }

    /// Universal closure of the local correspondent over `c#i0`.
    pub fn fo_global(&self) -> Option<Fo> {
        self.fo().map(|f| Fo::forall(Term::Nom(I0.into()), f))
    }

    /// The simplified correspondent with `x` in place of `c#i0`.
    pub fn display_fo(&self) -> Option<Fo> {
        self.fo().map(|f| crate::fol::simplify::for_display(&f, &Term::Nom(I0.into()), &Term::var("x")))
    }

    pub fn reduced_systems(&self) -> Vec<&[Inequality]> {
        self.branches.iter().map(|b| b.system.as_slice()).collect()
    }
}

/// Nominals and co-nominals other than the reserved ones, in order of first occurrence.
fn fresh_atoms(sys: &[Inequality]) -> Vec<Atom> {
    let mut out: Vec<Atom> = Vec::new();
    fn walk(f: &Formula, out: &mut Vec<Atom>) {
        let a = match f {
            Formula::Nom(i) if i != I0 => Some(Atom::Nom(i.clone())),
            Formula::CoNom(m) if m != M0 => Some(Atom::CoNom(m.clone())),
            _ => None,
        };
        if let Some(a) = a {
            if !out.contains(&a) {
                out.push(a);
            }
        }
        for c in f.children() {
            walk(c, out);
        }
    }
    for i in sys {
        walk(&i.lhs, &mut out);
        walk(&i.rhs, &mut out);
    }
    out
}

/// `A C#i0. A c$m0. A C$m0. A (fresh). (/\ A x. ST(ineq) -> A x. ST(#i0 <= $m0))`
pub fn branch_fo(sys: &[Inequality]) -> Fo {
    let x = Term::var("x");
    let mut tr = Translator::new();
    let premises: Vec<Fo> = sys.iter().map(|i| Fo::forall(x.clone(), tr.inequality(i, &x))).collect();
    let goal = Inequality::new(Formula::nom(I0), Formula::conom(M0));
    let mut f = Fo::implies(Fo::and_all(premises), Fo::forall(x.clone(), tr.inequality(&goal, &x)));
    for a in fresh_atoms(sys).iter().rev() {
        f = match a {
            Atom::Nom(j) => Fo::forall(Term::Nom(j.clone()), Fo::forall_tv(TvSym::Nom(j.clone()), f)),
            Atom::CoNom(n) => Fo::forall(Term::CoNom(n.clone()), Fo::forall_tv(TvSym::CoNom(n.clone()), f)),
            Atom::Var(_) => f,
        };
    }
    f = Fo::forall_tv(TvSym::CoNom(M0.into()), f);
    f = Fo::forall(Term::CoNom(M0.into()), f);
    Fo::forall_tv(TvSym::Nom(I0.into()), f)
}

#[cfg(test)]
mod tests;
