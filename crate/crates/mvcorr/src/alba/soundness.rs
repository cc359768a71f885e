//! Semantic check of every rule application in an ALBA run.
//!
//! Preprocessing steps must keep local `a`-validity unchanged at every state.
//! Reduction steps act on systems evaluated globally: for every assignment to
//! the atoms both systems share, the system before must be satisfiable by some
//! choice of its private atoms exactly when the system after is. First
//! approximation relates local `a`-validity to the quasi-inequality with `#i0`
//! placed at the state in question.

use super::{AlbaResult, Rule, Step, I0, M0};
use crate::heyting::{Algebra, Elem};
use crate::oracle::{first_failure, OracleConfig, OracleError};
use crate::semantics::{atom_domain, check_budget, valid_states, valuation_count, Frame, Program, Valuations};
use crate::syntax::{Atom, Formula, Inequality};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Preprocessing,
    Reduction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepFailure {
    /// `None` for preprocessing.
    pub branch: Option<usize>,
    pub index: usize,
    pub rule: Rule,
    pub relation: Vec<Elem>,
    pub states: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub steps: usize,
    pub frames: u64,
    pub failure: Option<StepFailure>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.failure.is_none()
    }
}

/// A compiled system of inequalities.
struct System {
    prog: Program,
    len: usize,
}

impl System {
    fn new(ineqs: &[Inequality]) -> Self {
        let fs: Vec<&Formula> = ineqs.iter().flat_map(|i| [&i.lhs, &i.rhs]).collect();
        System { prog: Program::compile(&fs), len: ineqs.len() }
    }

    fn atoms(&self) -> &[Atom] {
        self.prog.atoms()
    }

    fn holds(&self, alg: &Algebra, frame: &Frame, env: &[&[Elem]], buf: &mut Vec<Elem>) -> bool {
        self.prog.run(alg, frame, env, buf);
        let n = frame.size();
        (0..self.len).all(|k| {
            let (l, r) = (self.prog.root(buf, 2 * k, n), self.prog.root(buf, 2 * k + 1, n));
            l.iter().zip(r).all(|(&x, &y)| alg.leq(x, y))
        })
    }

    /// Some valuation of the atoms missing from `fixed` satisfies the system.
    fn satisfiable(
        &self,
        alg: &Algebra,
        frame: &Frame,
        fixed: &[(Atom, &[Elem])],
        budget: u64,
        buf: &mut Vec<Elem>,
    ) -> Result<bool, OracleError> {
        let free: Vec<Atom> = self.atoms().iter().filter(|a| !fixed.iter().any(|(b, _)| b == *a)).cloned().collect();
        check_budget(valuation_count(alg, &free, frame.size()), budget)?;
        let mut vals = Valuations::new(alg, &free, frame.size());
        if vals.is_empty() {
            return Ok(false);
        }
        loop {
            let cur = vals.current();
            let env: Vec<&[Elem]> = self
                .atoms()
                .iter()
                .map(|a| match fixed.iter().find(|(b, _)| b == a) {
                    Some((_, v)) => *v,
                    None => cur[free.iter().position(|b| b == a).expect("free atom")],
                })
                .collect();
            if self.holds(alg, frame, &env, buf) {
                return Ok(true);
            }
            if !vals.advance() {
                return Ok(false);
            }
        }
    }
}

fn frame_seed(seed: u64, frame: &Frame) -> u64 {
    frame.relation().iter().fold(seed ^ frame.size() as u64, |h, e| h.wrapping_mul(31).wrapping_add(e.0 as u64 + 1))
}

/// Assignments to `atoms`: all of them, or `cap` seeded samples when there are more.
fn shared_assignments(alg: &Algebra, atoms: &[Atom], frame: &Frame, cap: u64, seed: u64) -> Vec<Vec<Vec<Elem>>> {
    let n = frame.size();
    let domains: Vec<Vec<Vec<Elem>>> = atoms.iter().map(|a| atom_domain(alg, a, n)).collect();
    if domains.iter().any(|d| d.is_empty()) {
        return Vec::new();
    }
    match valuation_count(alg, atoms, n) {
        Some(k) if k <= cap => {
            let mut out = Vec::new();
            let mut vals = Valuations::new(alg, atoms, n);
            loop {
                out.push(vals.current().iter().map(|s| s.to_vec()).collect());
                if !vals.advance() {
                    return out;
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(frame_seed(seed, frame));
            (0..cap).map(|_| domains.iter().map(|d| d[rng.random_range(0..d.len())].clone()).collect()).collect()
        }
    }
}

fn render(sys: &[Inequality]) -> String {
    sys.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
}

fn local_check(alg: &Algebra, frame: &Frame, step: &Step, a: Elem, budget: u64) -> Result<Option<String>, OracleError> {
    let at = |sys: &[Inequality]| -> Result<Vec<bool>, OracleError> {
        let mut ok = vec![true; frame.size()];
        for i in sys {
            for (o, v) in ok.iter_mut().zip(valid_states(alg, frame, i, a, budget)?) {
                *o &= v;
            }
        }
        Ok(ok)
    };
    let (b, f) = (at(&step.before)?, at(&step.after)?);
    Ok(b.iter().zip(&f).position(|(x, y)| x != y).map(|w| format!("state {w}: before {}, after {}", b[w], f[w])))
}

fn first_approximation_check(alg: &Algebra, frame: &Frame, step: &Step, budget: u64) -> Result<Option<String>, OracleError> {
    let n = frame.size();
    let before = valid_states(alg, frame, &step.before[0], Elem::TOP, budget)?;
    let sys = System::new(&step.after);
    let atoms = sys.atoms().to_vec();
    let i0 = atoms.iter().position(|a| *a == Atom::Nom(I0.into()));
    let m0 = atoms.iter().position(|a| *a == Atom::CoNom(M0.into()));
    let (Some(i0), Some(m0)) = (i0, m0) else {
        return Ok(Some("first approximation lacks #i0 or $m0".into()));
    };
    check_budget(valuation_count(alg, &atoms, n), budget)?;
    let mut after = vec![true; n];
    let mut vals = Valuations::new(alg, &atoms, n);
    let mut buf = Vec::new();
    loop {
        let env = vals.current();
        let w = env[i0].iter().position(|&e| e != Elem::BOT).expect("nominals are nonzero somewhere");
        if after[w] && sys.holds(alg, frame, &env, &mut buf) && !alg.leq(env[i0][w], env[m0][w]) {
            after[w] = false;
        }
        if !vals.advance() {
            break;
        }
    }
    Ok((0..n).find(|&w| before[w] != after[w]).map(|w| format!("state {w}: before {}, after {}", before[w], after[w])))
}

fn reduction_check(
    alg: &Algebra,
    frame: &Frame,
    step: &Step,
    cfg: &OracleConfig,
    shared_cap: u64,
) -> Result<Option<String>, OracleError> {
    let (sb, sa) = (System::new(&step.before), System::new(&step.after));
    let shared: Vec<Atom> = sb.atoms().iter().filter(|a| sa.atoms().contains(a)).cloned().collect();
    let mut buf = Vec::new();
    for s in shared_assignments(alg, &shared, frame, shared_cap, cfg.seed) {
        let fixed: Vec<(Atom, &[Elem])> = shared.iter().cloned().zip(s.iter().map(|v| v.as_slice())).collect();
        let b = sb.satisfiable(alg, frame, &fixed, cfg.budget, &mut buf)?;
        let a = sa.satisfiable(alg, frame, &fixed, cfg.budget, &mut buf)?;
        if a != b {
            let at: Vec<String> = fixed.iter().map(|(k, v)| format!("{}={:?}", k.formula(), v)).collect();
            return Ok(Some(format!(
                "[{}] satisfiable {b}, [{}] satisfiable {a}, at {}",
                render(&step.before),
                render(&step.after),
                at.join(" ")
            )));
        }
    }
    Ok(None)
}

/// Checks one step on every configured frame. Returns the frames checked and
/// the first frame with a description of the mismatch.
pub fn check_step(
    alg: &Algebra,
    step: &Step,
    phase: Phase,
    a: Elem,
    cfg: &OracleConfig,
    shared_cap: u64,
) -> Result<(u64, Option<(Frame, String)>), OracleError> {
    first_failure(alg, cfg, |frame| {
        let hit = match (phase, &step.rule) {
            (Phase::Preprocessing, _) => local_check(alg, frame, step, a, cfg.budget)?,
            (Phase::Reduction, Rule::FirstApproximation) => first_approximation_check(alg, frame, step, cfg.budget)?,
            (Phase::Reduction, _) => reduction_check(alg, frame, step, cfg, shared_cap)?,
        };
        Ok(hit.map(|d| (frame.clone(), d)))
    })
}

/// Checks the preprocessing steps and the trace of every branch.
pub fn check_result(
    alg: &Algebra,
    result: &AlbaResult,
    cfg: &OracleConfig,
    shared_cap: u64,
) -> Result<SoundnessReport, OracleError> {
    let mut jobs: Vec<(Option<usize>, usize, &Step, Phase)> =
        result.preprocessing.iter().enumerate().map(|(k, s)| (None, k, s, Phase::Preprocessing)).collect();
    for (b, run) in result.branches.iter().enumerate() {
        jobs.extend(run.trace.iter().enumerate().map(|(k, s)| (Some(b), k, s, Phase::Reduction)));
    }
    let mut frames = 0;
    for (branch, index, step, phase) in &jobs {
        let (f, hit) = check_step(alg, step, *phase, result.value, cfg, shared_cap)?;
        frames += f;
        if let Some((frame, detail)) = hit {
            let failure = StepFailure {
                branch: *branch,
                index: *index,
                rule: step.rule.clone(),
                relation: frame.relation().to_vec(),
                states: frame.size(),
                detail,
            };
            return Ok(SoundnessReport { steps: jobs.len(), frames, failure: Some(failure) });
        }
    }
    Ok(SoundnessReport { steps: jobs.len(), frames, failure: None })
}
