//! Brute-force correspondence checking over all small frames.
//!
//! Frames are enumerated in lexicographic order of their relation entries and
//! checked in parallel; the first counterexample in enumeration order wins.
//! Sampled frames come from a seeded generator and are reproducible.

use crate::fol::{fo_eval, Assignment, Fo, FoError, Term};
use crate::heyting::{Algebra, Elem};
use crate::semantics::{refuting_valuation, valid_states, Frame, SemanticsError, Valuation, DEFAULT_BUDGET};
use crate::syntax::Inequality;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("the first-order side must have no free symbol other than `{0}`")]
    FreeSymbols(String),
    #[error("{0} frames of size {1} exceed the budget")]
    TooManyFrames(String, usize),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Fo(#[from] FoError),
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Sizes enumerated exhaustively.
    pub sizes: Vec<usize>,
    /// `(size, count)` pairs of randomly sampled frames.
    pub samples: Vec<(usize, usize)>,
    pub seed: u64,
    pub budget: u64,
}

impl OracleConfig {
    pub fn exhaustive(sizes: &[usize]) -> Self {
        OracleConfig { sizes: sizes.to_vec(), samples: Vec::new(), seed: 0, budget: DEFAULT_BUDGET }
    }

    pub fn with_samples(mut self, size: usize, count: usize, seed: u64) -> Self {
        self.samples.push((size, count));
        self.seed = seed;
        self
    }

    /// Every frame to check, as lazily built batches.
    fn batches(&self, alg: &Algebra) -> Result<Vec<Batch>, OracleError> {
        let mut out = Vec::new();
        for &n in &self.sizes {
            match Frame::count(alg, n) {
                Some(k) if k <= self.budget => out.push(Batch::All(n, k)),
                Some(k) => return Err(OracleError::TooManyFrames(k.to_string(), n)),
                None => return Err(OracleError::TooManyFrames("more than 2^64".into(), n)),
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for &(n, count) in &self.samples {
            out.push(Batch::Sampled((0..count).map(|_| Frame::random(alg, n, &mut rng)).collect()));
        }
        Ok(out)
    }
}

enum Batch {
    All(usize, u64),
    Sampled(Vec<Frame>),
}

/// Runs `check` on every configured frame and returns the first failure in order.
pub fn first_failure<T: Send>(
    alg: &Algebra,
    cfg: &OracleConfig,
    check: impl Fn(&Frame) -> Result<Option<T>, OracleError> + Sync,
) -> Result<(u64, Option<T>), OracleError> {
    let mut frames = 0u64;
    for batch in cfg.batches(alg)? {
        let hit = match batch {
            Batch::All(n, k) => {
                frames += k;
                (0..k).into_par_iter().find_map_first(|i| check(&Frame::from_index(alg, n, i)).transpose())
            }
            Batch::Sampled(fs) => {
                frames += fs.len() as u64;
                fs.par_iter().find_map_first(|f| check(f).transpose())
            }
        };
        match hit {
            Some(Ok(t)) => return Ok((frames, Some(t))),
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    Ok((frames, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub frame: Frame,
    pub state: usize,
    /// Whether the modal side holds.
    pub modal: bool,
    /// Value of the first-order side.
    pub fo_value: Elem,
    /// A refuting valuation when the modal side fails.
    pub valuation: Option<Valuation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass { frames: u64 },
    Counterexample(Box<Counterexample>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

fn check_free(fo: &Fo, free: &Term) -> Result<(), OracleError> {
    let syms = fo.free_symbols();
    let ok = syms.iter().all(|s| *s == crate::fol::Sym::Term(free.clone()));
    if ok {
        Ok(())
    } else {
        Err(OracleError::FreeSymbols(match free {
            Term::Var(x) | Term::Nom(x) | Term::CoNom(x) => x.clone(),
        }))
    }
}

/// Checks that `a /\ lhs <= rhs` is valid at `w` exactly when `threshold <= fo`
/// with `free` sent to `w`, on every configured frame and state.
///
/// Correspondents produced by the standard translation are compared at
/// threshold `a`. Crisp correspondents that already mention `a` use threshold 1.
pub fn correspondence_oracle(
    alg: &Algebra,
    input: &Inequality,
    a: Elem,
    fo: &Fo,
    free: &Term,
    threshold: Elem,
    cfg: &OracleConfig,
) -> Result<Verdict, OracleError> {
    check_free(fo, free)?;
    let (frames, hit) = first_failure(alg, cfg, |frame| {
        let modal = valid_states(alg, frame, input, a, cfg.budget)?;
        for (w, &m) in modal.iter().enumerate() {
            let v = fo_eval(alg, frame, fo, &Assignment::default().with_term(free.clone(), w))?;
            if m != alg.leq(threshold, v) {
                let valuation = if m { None } else { refuting_valuation(alg, frame, input, w, a, cfg.budget)? };
                return Ok(Some(Counterexample { frame: frame.clone(), state: w, modal: m, fo_value: v, valuation }));
            }
        }
        Ok(None)
    })?;
    Ok(match hit {
        None => Verdict::Pass { frames },
        Some(c) => Verdict::Counterexample(Box::new(c)),
    })
}

/// A first-order side of an equivalence check: formula, free term, threshold.
pub type FoSide<'a> = (&'a Fo, &'a Term, Elem);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub frame: Frame,
    pub state: usize,
    pub left: Elem,
    pub right: Elem,
}

/// Checks that `tl <= fl` and `tr <= fr` agree at every state of every configured frame.
pub fn fo_agreement(
    alg: &Algebra,
    left: FoSide,
    right: FoSide,
    cfg: &OracleConfig,
) -> Result<(u64, Option<Disagreement>), OracleError> {
    check_free(left.0, left.1)?;
    check_free(right.0, right.1)?;
    first_failure(alg, cfg, |frame| {
        for w in 0..frame.size() {
            let l = fo_eval(alg, frame, left.0, &Assignment::default().with_term(left.1.clone(), w))?;
            let r = fo_eval(alg, frame, right.0, &Assignment::default().with_term(right.1.clone(), w))?;
            if alg.leq(left.2, l) != alg.leq(right.2, r) {
                return Ok(Some(Disagreement { frame: frame.clone(), state: w, left: l, right: r }));
            }
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::library;
    use crate::syntax::{parse_formula, parse_inequality, Formula};

    fn p5() -> Algebra {
        Algebra::builtin("paper-P").unwrap()
    }

    fn as_ineq(alg: &Algebra, s: &str) -> Inequality {
        Inequality::new(Formula::top(), parse_formula(s, alg).unwrap())
    }

    #[test]
    fn reflexivity_corresponds_for_every_value() {
        let alg = p5();
        let i = as_ineq(&alg, "p -> <>p");
        let x = Term::var("x");
        for a in alg.elements() {
            let v = correspondence_oracle(&alg, &i, a, &library::reflexivity(), &x, a, &OracleConfig::exhaustive(&[1, 2]))
                .unwrap();
            assert_eq!(v, Verdict::Pass { frames: 630 });
        }
    }

    #[test]
    fn excluded_middle_with_diamond() {
        let alg = p5();
        let i = as_ineq(&alg, "~p \\/ <>p");
        let x = Term::var("x");
        let cfg = OracleConfig::exhaustive(&[1, 2]);
        let v = correspondence_oracle(&alg, &i, Elem::TOP, &Fo::falsum(), &x, Elem::TOP, &cfg).unwrap();
        assert!(v.is_pass());
        let gamma = alg.elem("gamma").unwrap();
        let v = correspondence_oracle(&alg, &i, gamma, &library::reflexivity(), &x, gamma, &cfg).unwrap();
        assert!(v.is_pass());
        let v = correspondence_oracle(&alg, &i, Elem::TOP, &library::reflexivity(), &x, Elem::TOP, &cfg).unwrap();
        match v {
            Verdict::Counterexample(c) => {
                assert_eq!(c.frame.r(c.state, c.state), Elem::TOP);
                assert!(!c.modal);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_open_formulas() {
        let alg = p5();
        let i = parse_inequality("p <= p", &alg).unwrap();
        let f = Fo::rel(Term::var("x"), Term::var("y"));
        let r = correspondence_oracle(&alg, &i, Elem::TOP, &f, &Term::var("x"), Elem::TOP, &OracleConfig::exhaustive(&[1]));
        assert!(matches!(r, Err(OracleError::FreeSymbols(_))));
    }

    #[test]
    fn sampling_is_reproducible() {
        let alg = p5();
        let cfg = OracleConfig::exhaustive(&[]).with_samples(3, 20, 9);
        let x = Term::var("x");
        let same = fo_agreement(
            &alg,
            (&library::reflexivity(), &x, Elem::TOP),
            (&library::transitivity(), &x, Elem::TOP),
            &cfg,
        )
        .unwrap();
        let again = fo_agreement(
            &alg,
            (&library::reflexivity(), &x, Elem::TOP),
            (&library::transitivity(), &x, Elem::TOP),
            &cfg,
        )
        .unwrap();
        assert_eq!(same, again);
        assert!(same.1.is_some());
    }
}
