//! Kripke frames and models valued in a finite Heyting algebra.
//!
//! Formulas are compiled to a flat program and evaluated at every state of a
//! frame at once, which is how the complex algebra sees them.

use crate::heyting::{Algebra, Elem};
use crate::syntax::{Atom, Formula, Inequality};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default cap on the number of valuations a single validity check may enumerate.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("atom `{0}` has no value in the model")]
    UnboundAtom(String),
    #[error("enumeration needs {needed} cases but the budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("model: {0}")]
    BadModel(String),
}

/// A frame: states and an algebra-valued accessibility relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    states: Vec<String>,
    rel: Vec<Elem>,
}

impl Frame {
    /// A frame with states `w0..w{n-1}` and the given row-major relation.
    pub fn new(n: usize, rel: Vec<Elem>) -> Self {
        assert_eq!(rel.len(), n * n, "relation must be n*n");
        Frame { states: (0..n).map(|i| format!("w{i}")).collect(), rel }
    }

    pub fn named(states: Vec<String>, rel: Vec<Elem>) -> Self {
        assert_eq!(rel.len(), states.len() * states.len(), "relation must be n*n");
        Frame { states, rel }
    }

    pub fn uniform(n: usize, value: Elem) -> Self {
        Frame::new(n, vec![value; n * n])
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    #[inline]
    pub fn r(&self, w: usize, u: usize) -> Elem {
        self.rel[w * self.states.len() + u]
    }

    pub fn set(&mut self, w: usize, u: usize, e: Elem) {
        let n = self.states.len();
        self.rel[w * n + u] = e;
    }

    pub fn relation(&self) -> &[Elem] {
        &self.rel
    }

    /// Number of frames of size `n`, or `None` on overflow.
    pub fn count(alg: &Algebra, n: usize) -> Option<u64> {
        (alg.size() as u64).checked_pow((n * n) as u32)
    }

    /// The `k`-th frame of size `n` in lexicographic order over the row-major relation entries.
    pub fn from_index(alg: &Algebra, n: usize, mut k: u64) -> Frame {
        let base = alg.size() as u64;
        let mut rel = vec![Elem::BOT; n * n];
        for slot in rel.iter_mut().rev() {
            *slot = Elem((k % base) as u16);
            k /= base;
        }
        Frame::new(n, rel)
    }

    pub fn random(alg: &Algebra, n: usize, rng: &mut impl Rng) -> Frame {
        let rel = (0..n * n).map(|_| Elem(rng.random_range(0..alg.size()) as u16)).collect();
        Frame::new(n, rel)
    }

    /// Relation entries as `[from, to, value]` names.
    pub fn describe(&self, alg: &Algebra) -> Vec<[String; 3]> {
        let n = self.size();
        let mut out = Vec::new();
        for w in 0..n {
            for u in 0..n {
                out.push([self.states[w].clone(), self.states[u].clone(), alg.name_of(self.r(w, u)).to_string()]);
            }
        }
        out
    }
}

/// Values of atoms at every state.
pub type Valuation = BTreeMap<Atom, Vec<Elem>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame,
    pub val: Valuation,
}

#[derive(Deserialize, Serialize)]
struct ModelFile {
    states: Vec<String>,
    #[serde(default)]
    rel: Vec<[String; 3]>,
    #[serde(default)]
    val: Vec<[String; 3]>,
}

pub fn parse_atom(text: &str) -> Option<Atom> {
    let ok = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if let Some(i) = text.strip_prefix('#') {
        ok(i).then(|| Atom::Nom(i.to_string()))
    } else if let Some(m) = text.strip_prefix('$') {
        ok(m).then(|| Atom::CoNom(m.to_string()))
    } else {
        (ok(text) && text.starts_with(|c: char| c.is_ascii_lowercase())).then(|| Atom::Var(text.to_string()))
    }
}

impl Model {
    pub fn new(frame: Frame, val: Valuation) -> Self {
        Model { frame, val }
    }

    /// Reads `{"states": [...], "rel": [[from,to,value]], "val": [[atom,state,value]]}`.
    /// Missing relation entries are 0. An atom mentioned in `val` defaults to 0
    /// (1 for co-nominals) at the states it does not list.
    pub fn from_json(alg: &Algebra, text: &str) -> Result<Model, SemanticsError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| SemanticsError::BadModel(e.to_string()))?;
        let n = file.states.len();
        if n == 0 {
            return Err(SemanticsError::BadModel("no states".into()));
        }
        let state = |s: &str| {
            file.states.iter().position(|x| x == s).ok_or_else(|| SemanticsError::BadModel(format!("unknown state `{s}`")))
        };
        let elem = |s: &str| alg.elem(s).ok_or_else(|| SemanticsError::BadModel(format!("unknown element `{s}`")));
        let mut rel = vec![Elem::BOT; n * n];
        for [a, b, v] in &file.rel {
            rel[state(a)? * n + state(b)?] = elem(v)?;
        }
        let mut val = Valuation::new();
        for [a, s, v] in &file.val {
            let atom = parse_atom(a).ok_or_else(|| SemanticsError::BadModel(format!("bad atom `{a}`")))?;
            let default = if matches!(atom, Atom::CoNom(_)) { Elem::TOP } else { Elem::BOT };
            val.entry(atom).or_insert_with(|| vec![default; n])[state(s)?] = elem(v)?;
        }
        let model = Model { frame: Frame::named(file.states.clone(), rel), val };
        model.validate(alg)?;
        Ok(model)
    }

    /// Checks the nominal and co-nominal constraints.
    pub fn validate(&self, alg: &Algebra) -> Result<(), SemanticsError> {
        for (atom, v) in &self.val {
            if v.len() != self.frame.size() {
                return Err(SemanticsError::BadModel(format!("`{atom}` has the wrong number of values")));
            }
            let ok = match atom {
                Atom::Var(_) => true,
                Atom::Nom(_) => {
                    let hot: Vec<_> = v.iter().filter(|&&e| e != Elem::BOT).collect();
                    hot.len() == 1 && alg.join_irreducibles().contains(hot[0])
                }
                Atom::CoNom(_) => {
                    let cold: Vec<_> = v.iter().filter(|&&e| e != Elem::TOP).collect();
                    cold.len() == 1 && alg.meet_irreducibles().contains(cold[0])
                }
            };
            if !ok {
                return Err(SemanticsError::BadModel(format!("`{atom}` violates its nominal constraint")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Atom(usize),
    Const(Elem),
    Or(usize, usize),
    And(usize, usize),
    Implies(usize, usize),
    Minus(usize, usize),
    Box(usize),
    Diamond(usize),
    BoxInv(usize),
    DiamondInv(usize),
}

/// A compiled set of formulas sharing one atom table.
#[derive(Debug, Clone)]
pub struct Program {
    ops: Vec<Op>,
    atoms: Vec<Atom>,
    roots: Vec<usize>,
}

impl Program {
    pub fn compile(formulas: &[&Formula]) -> Program {
        let mut atoms: Vec<Atom> = Vec::new();
        for f in formulas {
            for a in f.atoms() {
                if !atoms.contains(&a) {
                    atoms.push(a);
                }
            }
        }
        atoms.sort();
        let mut p = Program { ops: Vec::new(), atoms, roots: Vec::new() };
        for f in formulas {
            let r = p.push(f);
            p.roots.push(r);
        }
        p
    }

    fn push(&mut self, f: &Formula) -> usize {
        let op = match f {
            Formula::Var(x) => Op::Atom(self.atom_index(&Atom::Var(x.clone()))),
            Formula::Nom(x) => Op::Atom(self.atom_index(&Atom::Nom(x.clone()))),
            Formula::CoNom(x) => Op::Atom(self.atom_index(&Atom::CoNom(x.clone()))),
            Formula::Const(c) => Op::Const(c.elem),
            Formula::Or(a, b) => Op::Or(self.push(a), self.push(b)),
            Formula::And(a, b) => Op::And(self.push(a), self.push(b)),
            Formula::Implies(a, b) => Op::Implies(self.push(a), self.push(b)),
            Formula::Minus(a, b) => Op::Minus(self.push(a), self.push(b)),
            Formula::Box(a) => Op::Box(self.push(a)),
            Formula::Diamond(a) => Op::Diamond(self.push(a)),
            Formula::BoxInv(a) => Op::BoxInv(self.push(a)),
            Formula::DiamondInv(a) => Op::DiamondInv(self.push(a)),
        };
        self.ops.push(op);
        self.ops.len() - 1
    }

    fn atom_index(&self, a: &Atom) -> usize {
        self.atoms.iter().position(|x| x == a).expect("atom collected at compile time")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Evaluates every node at every state. `env[k]` holds the values of `atoms()[k]`.
    /// Root `r` at state `w` is then `buf[roots[r] * n + w]`.
    pub fn run(&self, alg: &Algebra, frame: &Frame, env: &[&[Elem]], buf: &mut Vec<Elem>) {
        let n = frame.size();
        buf.clear();
        buf.resize(self.ops.len() * n, Elem::BOT);
        for (k, op) in self.ops.iter().enumerate() {
            let (done, rest) = buf.split_at_mut(k * n);
            let out = &mut rest[..n];
            let arg = |i: usize| &done[i * n..i * n + n];
            match *op {
                Op::Atom(i) => out.copy_from_slice(env[i]),
                Op::Const(c) => out.fill(c),
                Op::Or(a, b) => pointwise(out, arg(a), arg(b), |x, y| alg.join(x, y)),
                Op::And(a, b) => pointwise(out, arg(a), arg(b), |x, y| alg.meet(x, y)),
                Op::Implies(a, b) => pointwise(out, arg(a), arg(b), |x, y| alg.implies(x, y)),
                Op::Minus(a, b) => pointwise(out, arg(a), arg(b), |x, y| alg.minus(x, y)),
                Op::Box(a) | Op::BoxInv(a) => {
                    let v = arg(a);
                    let inv = matches!(op, Op::BoxInv(_));
                    for (w, o) in out.iter_mut().enumerate() {
                        let mut acc = Elem::TOP;
                        for (u, &vu) in v.iter().enumerate() {
                            let r = if inv { frame.r(u, w) } else { frame.r(w, u) };
                            acc = alg.meet(acc, alg.implies(r, vu));
                        }
                        *o = acc;
                    }
                }
                Op::Diamond(a) | Op::DiamondInv(a) => {
                    let v = arg(a);
                    let inv = matches!(op, Op::DiamondInv(_));
                    for (w, o) in out.iter_mut().enumerate() {
                        let mut acc = Elem::BOT;
                        for (u, &vu) in v.iter().enumerate() {
                            let r = if inv { frame.r(u, w) } else { frame.r(w, u) };
                            acc = alg.join(acc, alg.meet(r, vu));
                        }
                        *o = acc;
                    }
                }
            }
        }
    }

    pub fn root<'b>(&self, buf: &'b [Elem], r: usize, n: usize) -> &'b [Elem] {
        let k = self.roots[r];
        &buf[k * n..k * n + n]
    }
}

fn pointwise(out: &mut [Elem], a: &[Elem], b: &[Elem], f: impl Fn(Elem, Elem) -> Elem) {
    for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
        *o = f(x, y);
    }
}

/// Values of `f` at every state of the model.
pub fn eval_all(alg: &Algebra, model: &Model, f: &Formula) -> Result<Vec<Elem>, SemanticsError> {
    let prog = Program::compile(&[f]);
    let env = prog
        .atoms()
        .iter()
        .map(|a| model.val.get(a).map(|v| v.as_slice()).ok_or_else(|| SemanticsError::UnboundAtom(a.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut buf = Vec::new();
    prog.run(alg, &model.frame, &env, &mut buf);
    Ok(prog.root(&buf, 0, model.frame.size()).to_vec())
}

pub fn eval(alg: &Algebra, model: &Model, f: &Formula, w: usize) -> Result<Elem, SemanticsError> {
    Ok(eval_all(alg, model, f)?[w])
}

/// `f` is `a`-true at `w`: its value is at least `a`.
pub fn a_true_at(alg: &Algebra, model: &Model, f: &Formula, w: usize, a: Elem) -> Result<bool, SemanticsError> {
    Ok(alg.leq(a, eval(alg, model, f, w)?))
}

/// `a /\ lhs <= rhs` at `w`.
pub fn check_inequality(
    alg: &Algebra,
    model: &Model,
    ineq: &Inequality,
    w: usize,
    a: Elem,
) -> Result<bool, SemanticsError> {
    let l = eval(alg, model, &ineq.lhs, w)?;
    let r = eval(alg, model, &ineq.rhs, w)?;
    Ok(alg.leq(alg.meet(a, l), r))
}

/// Candidate value vectors of one atom on a frame with `n` states.
pub fn atom_domain(alg: &Algebra, atom: &Atom, n: usize) -> Vec<Vec<Elem>> {
    match atom {
        Atom::Var(_) => {
            let base = alg.size();
            let total = base.pow(n as u32);
            (0..total)
                .map(|mut k| {
                    let mut v = vec![Elem::BOT; n];
                    for slot in v.iter_mut().rev() {
                        *slot = Elem((k % base) as u16);
                        k /= base;
                    }
                    v
                })
                .collect()
        }
        Atom::Nom(_) => one_hot(n, alg.join_irreducibles(), Elem::BOT),
        Atom::CoNom(_) => one_hot(n, alg.meet_irreducibles(), Elem::TOP),
    }
}

fn one_hot(n: usize, values: &[Elem], rest: Elem) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for s in 0..n {
        for &e in values {
            let mut v = vec![rest; n];
            v[s] = e;
            out.push(v);
        }
    }
    out
}

/// Number of valuations of `atoms` on `n` states, or `None` on overflow.
pub fn valuation_count(alg: &Algebra, atoms: &[Atom], n: usize) -> Option<u64> {
    let mut total: u64 = 1;
    for a in atoms {
        let k = match a {
            Atom::Var(_) => (alg.size() as u64).checked_pow(n as u32)?,
            Atom::Nom(_) => (n * alg.join_irreducibles().len()) as u64,
            Atom::CoNom(_) => (n * alg.meet_irreducibles().len()) as u64,
        };
        total = total.checked_mul(k)?;
    }
    Some(total)
}

pub fn check_budget(needed: Option<u64>, budget: u64) -> Result<u64, SemanticsError> {
    match needed {
        Some(k) if k <= budget => Ok(k),
        Some(k) => Err(SemanticsError::BudgetExceeded { needed: k.to_string(), budget }),
        None => Err(SemanticsError::BudgetExceeded { needed: "more than 2^64".into(), budget }),
    }
}

/// Odometer over the cartesian product of atom domains.
pub struct Valuations {
    domains: Vec<Vec<Vec<Elem>>>,
    idx: Vec<usize>,
    done: bool,
}

impl Valuations {
    pub fn new(alg: &Algebra, atoms: &[Atom], n: usize) -> Self {
        let domains: Vec<_> = atoms.iter().map(|a| atom_domain(alg, a, n)).collect();
        let done = domains.iter().any(|d| d.is_empty());
        Valuations { idx: vec![0; domains.len()], domains, done }
    }

    /// The current valuation, one slice per atom.
    pub fn current(&self) -> Vec<&[Elem]> {
        self.idx.iter().zip(&self.domains).map(|(&i, d)| d[i].as_slice()).collect()
    }

    /// Moves to the next valuation; returns false once all were visited.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        for k in (0..self.idx.len()).rev() {
            self.idx[k] += 1;
            if self.idx[k] < self.domains[k].len() {
                return true;
            }
            self.idx[k] = 0;
        }
        self.done = true;
        false
    }

    pub fn is_empty(&self) -> bool {
        self.done
    }
}

/// For each state `w`, whether `a /\ lhs <= rhs` holds at `w` under every valuation.
pub fn valid_states(
    alg: &Algebra,
    frame: &Frame,
    ineq: &Inequality,
    a: Elem,
    budget: u64,
) -> Result<Vec<bool>, SemanticsError> {
    let prog = Program::compile(&[&ineq.lhs, &ineq.rhs]);
    let n = frame.size();
    check_budget(valuation_count(alg, prog.atoms(), n), budget)?;
    let mut ok = vec![true; n];
    let mut vals = Valuations::new(alg, prog.atoms(), n);
    let mut buf = Vec::new();
    if vals.is_empty() {
        return Ok(ok);
    }
    loop {
        prog.run(alg, frame, &vals.current(), &mut buf);
        let (l, r) = (prog.root(&buf, 0, n), prog.root(&buf, 1, n));
        for w in 0..n {
            if ok[w] && !alg.leq(alg.meet(a, l[w]), r[w]) {
                ok[w] = false;
            }
        }
        if !ok.iter().any(|&b| b) || !vals.advance() {
            return Ok(ok);
        }
    }
}

/// `a /\ lhs <= rhs` is valid at `w`: it holds under every valuation.
pub fn a_valid_at(
    alg: &Algebra,
    frame: &Frame,
    ineq: &Inequality,
    w: usize,
    a: Elem,
    budget: u64,
) -> Result<bool, SemanticsError> {
    Ok(refuting_valuation(alg, frame, ineq, w, a, budget)?.is_none())
}

/// First valuation in enumeration order refuting `a /\ lhs <= rhs` at `w`.
pub fn refuting_valuation(
    alg: &Algebra,
    frame: &Frame,
    ineq: &Inequality,
    w: usize,
    a: Elem,
    budget: u64,
) -> Result<Option<Valuation>, SemanticsError> {
    let prog = Program::compile(&[&ineq.lhs, &ineq.rhs]);
    let n = frame.size();
    check_budget(valuation_count(alg, prog.atoms(), n), budget)?;
    let mut vals = Valuations::new(alg, prog.atoms(), n);
    let mut buf = Vec::new();
    if vals.is_empty() {
        return Ok(None);
    }
    loop {
        let env = vals.current();
        prog.run(alg, frame, &env, &mut buf);
        if !alg.leq(alg.meet(a, prog.root(&buf, 0, n)[w]), prog.root(&buf, 1, n)[w]) {
            let v = prog.atoms().iter().cloned().zip(env.iter().map(|s| s.to_vec())).collect();
            return Ok(Some(v));
        }
        if !vals.advance() {
            return Ok(None);
        }
    }
}

/// The complex algebra of a frame: all maps from states to the algebra, with
/// the operators induced by the relation.
pub struct ComplexAlgebra<'a> {
    pub alg: &'a Algebra,
    pub frame: &'a Frame,
}

impl<'a> ComplexAlgebra<'a> {
    pub fn new(alg: &'a Algebra, frame: &'a Frame, budget: u64) -> Result<Self, SemanticsError> {
        check_budget((alg.size() as u64).checked_pow(frame.size() as u32), budget)?;
        Ok(ComplexAlgebra { alg, frame })
    }

    pub fn carrier(&self) -> Vec<Vec<Elem>> {
        atom_domain(self.alg, &Atom::Var(String::new()), self.frame.size())
    }

    pub fn diamond(&self, f: &[Elem]) -> Vec<Elem> {
        let n = self.frame.size();
        (0..n).map(|w| self.alg.join_all((0..n).map(|u| self.alg.meet(self.frame.r(w, u), f[u])))).collect()
    }

    pub fn boxed(&self, f: &[Elem]) -> Vec<Elem> {
        let n = self.frame.size();
        (0..n).map(|w| self.alg.meet_all((0..n).map(|u| self.alg.implies(self.frame.r(w, u), f[u])))).collect()
    }

    fn zip(&self, f: &[Elem], g: &[Elem], op: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
        f.iter().zip(g).map(|(&x, &y)| op(x, y)).collect()
    }

    /// Checks that diamond preserves all joins and box preserves all meets.
    /// On a finite carrier the empty and binary cases suffice.
    pub fn check_operator_laws(&self) -> Result<(), String> {
        let n = self.frame.size();
        let (a, carrier) = (self.alg, self.carrier());
        if self.diamond(&vec![Elem::BOT; n]) != vec![Elem::BOT; n] {
            return Err("diamond does not preserve the empty join".into());
        }
        if self.boxed(&vec![Elem::TOP; n]) != vec![Elem::TOP; n] {
            return Err("box does not preserve the empty meet".into());
        }
        for f in &carrier {
            for g in &carrier {
                let d = self.diamond(&self.zip(f, g, |x, y| a.join(x, y)));
                if d != self.zip(&self.diamond(f), &self.diamond(g), |x, y| a.join(x, y)) {
                    return Err(format!("diamond fails on {f:?} and {g:?}"));
                }
                let b = self.boxed(&self.zip(f, g, |x, y| a.meet(x, y)));
                if b != self.zip(&self.boxed(f), &self.boxed(g), |x, y| a.meet(x, y)) {
                    return Err(format!("box fails on {f:?} and {g:?}"));
                }
            }
        }
        Ok(())
    }

    /// Interprets a basic formula in the complex algebra.
    pub fn interpret(&self, f: &Formula, env: &BTreeMap<Atom, Vec<Elem>>) -> Vec<Elem> {
        let a = self.alg;
        let n = self.frame.size();
        match f {
            Formula::Var(_) | Formula::Nom(_) | Formula::CoNom(_) => {
                let atom = f.atoms().into_iter().next().unwrap();
                env[&atom].clone()
            }
            Formula::Const(c) => vec![c.elem; n],
            Formula::Or(x, y) => self.zip(&self.interpret(x, env), &self.interpret(y, env), |p, q| a.join(p, q)),
            Formula::And(x, y) => self.zip(&self.interpret(x, env), &self.interpret(y, env), |p, q| a.meet(p, q)),
            Formula::Implies(x, y) => {
                self.zip(&self.interpret(x, env), &self.interpret(y, env), |p, q| a.implies(p, q))
            }
            Formula::Minus(x, y) => self.zip(&self.interpret(x, env), &self.interpret(y, env), |p, q| a.minus(p, q)),
            Formula::Box(x) => self.boxed(&self.interpret(x, env)),
            Formula::Diamond(x) => self.diamond(&self.interpret(x, env)),
            Formula::BoxInv(_) | Formula::DiamondInv(_) => {
                unimplemented!("inverse modalities are not operators of the complex algebra")
            }
        }
    }

    /// `lhs <= rhs` holds in the complex algebra under every assignment of its variables.
    pub fn validates(&self, ineq: &Inequality) -> bool {
        let atoms: Vec<Atom> = ineq.atoms().into_iter().collect();
        let carrier = self.carrier();
        let mut idx = vec![0usize; atoms.len()];
        loop {
            let env: BTreeMap<Atom, Vec<Elem>> =
                atoms.iter().cloned().zip(idx.iter().map(|&i| carrier[i].clone())).collect();
            let (l, r) = (self.interpret(&ineq.lhs, &env), self.interpret(&ineq.rhs, &env));
            if l.iter().zip(&r).any(|(&x, &y)| !self.alg.leq(x, y)) {
                return false;
            }
            let mut k = atoms.len();
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < carrier.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_inequality};
    use proptest::prelude::*;

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    fn e(alg: &Algebra, s: &str) -> Elem {
        alg.elem(s).unwrap()
    }

    fn model1(alg: &Algebra, r: &str, p: &str) -> Model {
        let mut val = Valuation::new();
        val.insert(Atom::Var("p".into()), vec![e(alg, p)]);
        Model::new(Frame::uniform(1, e(alg, r)), val)
    }

    #[test]
    fn constants_and_diamond_at_reflexive_state() {
        let alg = p5();
        let m = model1(&alg, "gamma", "1");
        assert_eq!(eval(&alg, &m, &parse_formula("@beta", &alg).unwrap(), 0).unwrap(), e(&alg, "beta"));
        assert_eq!(eval(&alg, &m, &parse_formula("<>p", &alg).unwrap(), 0).unwrap(), e(&alg, "gamma"));
    }

    #[test]
    fn excluded_middle_with_diamond_stays_below_gamma() {
        let alg = p5();
        let f = parse_formula("~p \\/ <>p", &alg).unwrap();
        for r in alg.elements() {
            let mut frame = Frame::uniform(2, r);
            frame.set(0, 1, Elem::TOP);
            let mut val = Valuation::new();
            val.insert(Atom::Var("p".into()), vec![e(&alg, "alpha"); 2]);
            let v = eval(&alg, &Model::new(frame, val), &f, 0).unwrap();
            assert!(alg.leq(v, e(&alg, "gamma")));
        }
    }

    #[test]
    fn unbound_atom_is_reported() {
        let alg = p5();
        let m = model1(&alg, "1", "1");
        let f = parse_formula("q", &alg).unwrap();
        assert_eq!(eval(&alg, &m, &f, 0), Err(SemanticsError::UnboundAtom("q".into())));
    }

    #[test]
    fn validity_examples() {
        let alg = p5();
        let i = parse_inequality("@1 <= ~p \\/ <>p", &alg).unwrap();
        for r in alg.elements() {
            let f = Frame::uniform(1, r);
            assert!(a_valid_at(&alg, &f, &i, 0, Elem::BOT, DEFAULT_BUDGET).unwrap());
        }
        let refl = Frame::uniform(1, e(&alg, "gamma"));
        assert!(a_valid_at(&alg, &refl, &i, 0, e(&alg, "gamma"), DEFAULT_BUDGET).unwrap());
        let weak = Frame::uniform(1, e(&alg, "alpha"));
        let v = refuting_valuation(&alg, &weak, &i, 0, e(&alg, "gamma"), DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(v[&Atom::Var("p".into())], vec![Elem::TOP]);
    }

    #[test]
    fn check_inequality_meets_with_a() {
        let alg = p5();
        let m = model1(&alg, "1", "1");
        let i = parse_inequality("@gamma <= @alpha", &alg).unwrap();
        assert!(!check_inequality(&alg, &m, &i, 0, e(&alg, "beta")).unwrap());
        assert!(check_inequality(&alg, &m, &i, 0, e(&alg, "alpha")).unwrap());
        let j = parse_inequality("p <= <>p", &alg).unwrap();
        let as_impl = parse_formula("p -> <>p", &alg).unwrap();
        for r in alg.elements() {
            let m = model1(&alg, alg.name_of(r), "beta");
            let holds = check_inequality(&alg, &m, &j, 0, Elem::TOP).unwrap();
            assert_eq!(holds, eval(&alg, &m, &as_impl, 0).unwrap() == Elem::TOP);
        }
    }

    #[test]
    fn budget_is_checked_up_front() {
        let alg = p5();
        let i = parse_inequality("p /\\ q <= r", &alg).unwrap();
        let f = Frame::uniform(2, Elem::TOP);
        assert!(matches!(a_valid_at(&alg, &f, &i, 0, Elem::TOP, 1000), Err(SemanticsError::BudgetExceeded { .. })));
    }

    #[test]
    fn frame_indexing_is_lexicographic() {
        let alg = p5();
        assert_eq!(Frame::count(&alg, 2), Some(625));
        assert_eq!(Frame::from_index(&alg, 2, 0).relation(), &[Elem::BOT; 4]);
        assert_eq!(Frame::from_index(&alg, 2, 1).relation(), &[Elem(0), Elem(0), Elem(0), Elem(1)]);
        assert_eq!(Frame::from_index(&alg, 2, 624).relation(), &[Elem(4); 4]);
    }

    #[test]
    fn nominal_domains_respect_constraints() {
        let alg = p5();
        let noms = atom_domain(&alg, &Atom::Nom("i".into()), 2);
        assert_eq!(noms.len(), 6);
        let cos = atom_domain(&alg, &Atom::CoNom("m".into()), 3);
        assert_eq!(cos.len(), 9);
        for v in &cos {
            let m = Model::new(Frame::uniform(3, Elem::TOP), [(Atom::CoNom("m".into()), v.clone())].into());
            m.validate(&alg).unwrap();
        }
    }

    #[test]
    fn model_file_round() {
        let alg = p5();
        let text = r##"{"states":["u","v"],"rel":[["u","v","gamma"]],"val":[["p","v","alpha"],["#i","u","beta"]]}"##;
        let m = Model::from_json(&alg, text).unwrap();
        assert_eq!(m.frame.r(0, 1), e(&alg, "gamma"));
        assert_eq!(m.frame.r(1, 0), Elem::BOT);
        let v = eval(&alg, &m, &parse_formula("<>p \\/ #i", &alg).unwrap(), 0).unwrap();
        assert_eq!(v, e(&alg, "gamma"));
        let bad = r##"{"states":["u"],"val":[["#i","u","gamma"]]}"##;
        assert!(matches!(Model::from_json(&alg, bad), Err(SemanticsError::BadModel(_))));
    }

    #[test]
    fn complex_algebra_single_state() {
        let b = Algebra::builtin("bool2").unwrap();
        let f = Frame::uniform(1, Elem::TOP);
        let c = ComplexAlgebra::new(&b, &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.carrier().len(), 2);
        for v in c.carrier() {
            assert_eq!(c.diamond(&v), vec![b.meet(f.r(0, 0), v[0])]);
        }
        let alg = p5();
        let f = Frame::uniform(1, e(&alg, "gamma"));
        let c = ComplexAlgebra::new(&alg, &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.carrier().len(), 5);
        c.check_operator_laws().unwrap();
    }

    #[test]
    fn complex_algebra_operators_on_all_two_state_frames() {
        let alg = p5();
        for k in (0..625).step_by(7) {
            let f = Frame::from_index(&alg, 2, k);
            ComplexAlgebra::new(&alg, &f, DEFAULT_BUDGET).unwrap().check_operator_laws().unwrap();
        }
    }

    #[test]
    fn frame_validity_matches_complex_algebra() {
        let alg = p5();
        let cases = ["p <= <>p", "[]p <= [][]p", "<><>p <= <>p", "p <= []<>p", "[]p <= <>p", "@gamma /\\ p <= <>p"];
        for text in cases {
            let i = parse_inequality(text, &alg).unwrap();
            for k in (0..625).step_by(11) {
                let f = Frame::from_index(&alg, 2, k);
                let everywhere = valid_states(&alg, &f, &i, Elem::TOP, DEFAULT_BUDGET).unwrap().iter().all(|&b| b);
                let c = ComplexAlgebra::new(&alg, &f, DEFAULT_BUDGET).unwrap();
                assert_eq!(everywhere, c.validates(&i), "{text} on {:?}", f.relation());
            }
        }
    }

    #[test]
    fn disjunction_splits_over_truth_values() {
        let alg = p5();
        let phi = parse_formula("p -> <>p", &alg).unwrap();
        let psi = parse_formula("[]q -> [][]q", &alg).unwrap();
        let both = Inequality::new(Formula::top(), Formula::or(phi.clone(), psi.clone()));
        let (one, two) = (Inequality::new(Formula::top(), phi), Inequality::new(Formula::top(), psi));
        for k in (0..625).step_by(13) {
            let f = Frame::from_index(&alg, 2, k);
            for a in alg.elements() {
                let lhs = a_valid_at(&alg, &f, &both, 0, a, DEFAULT_BUDGET).unwrap();
                let rhs = alg.elements().any(|a1| {
                    alg.elements().any(|a2| {
                        alg.leq(a, alg.join(a1, a2))
                            && a_valid_at(&alg, &f, &one, 0, a1, DEFAULT_BUDGET).unwrap()
                            && a_valid_at(&alg, &f, &two, 0, a2, DEFAULT_BUDGET).unwrap()
                    })
                });
                assert_eq!(lhs, rhs);
            }
        }
    }

    fn arb_frame_and_vals() -> impl Strategy<Value = (Vec<u16>, Vec<u16>, Vec<u16>)> {
        (
            prop::collection::vec(0u16..5, 4),
            prop::collection::vec(0u16..5, 2),
            prop::collection::vec(0u16..5, 2),
        )
    }

    proptest! {
        #[test]
        fn positive_formulas_are_monotone((rel, v1, v2) in arb_frame_and_vals()) {
            let alg = p5();
            let f = parse_formula("<>(p /\\ [](q -> p)) \\/ []p", &alg).unwrap();
            let frame = Frame::new(2, rel.into_iter().map(Elem).collect());
            let lo: Vec<Elem> = v1.iter().zip(&v2).map(|(&a, &b)| alg.meet(Elem(a), Elem(b))).collect();
            let hi: Vec<Elem> = v1.into_iter().map(Elem).collect();
            let q = vec![Elem(2), Elem(3)];
            let mk = |p: &Vec<Elem>| Model::new(frame.clone(), [(Atom::Var("p".into()), p.clone()), (Atom::Var("q".into()), q.clone())].into());
            let (a, b) = (eval_all(&alg, &mk(&lo), &f).unwrap(), eval_all(&alg, &mk(&hi), &f).unwrap());
            for w in 0..2 {
                prop_assert!(alg.leq(a[w], b[w]));
            }
            let g = parse_formula("p -> <>q", &alg).unwrap();
            let (a, b) = (eval_all(&alg, &mk(&lo), &g).unwrap(), eval_all(&alg, &mk(&hi), &g).unwrap());
            for w in 0..2 {
                prop_assert!(alg.leq(b[w], a[w]));
            }
        }

        #[test]
        fn truth_is_antitone_in_the_threshold(rel in prop::collection::vec(0u16..5, 4), p in prop::collection::vec(0u16..5, 2)) {
            let alg = p5();
            let f = parse_formula("~p \\/ <>p", &alg).unwrap();
            let m = Model::new(Frame::new(2, rel.into_iter().map(Elem).collect()), [(Atom::Var("p".into()), p.into_iter().map(Elem).collect())].into());
            for a in alg.elements() {
                for b in alg.elements() {
                    if alg.leq(b, a) && a_true_at(&alg, &m, &f, 0, a).unwrap() {
                        prop_assert!(a_true_at(&alg, &m, &f, 0, b).unwrap());
                    }
                }
                prop_assert!(a_true_at(&alg, &m, &f, 1, Elem::BOT).unwrap());
            }
        }
    }
}
