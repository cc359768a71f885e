//! Versioned structured output of command-line runs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::alba::soundness::SoundnessReport;
use crate::alba::{AlbaResult, BranchRun, Step};
use crate::fol::{Fo, FoStyle};
use crate::gentree::{Classification, OrderType};
use crate::heyting::Algebra;
use crate::oracle::{Counterexample, Disagreement, Verdict};
use crate::semantics::Frame;

pub const SCHEMA: &str = "mvcorr/1";

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraInfo>,
    pub seed: u64,
    pub input: BTreeMap<&'static str, String>,
    pub result: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInfo {
    pub name: String,
    pub fingerprint: String,
    pub size: usize,
    pub elements: Vec<String>,
}

impl AlgebraInfo {
    pub fn of(alg: &Algebra) -> Self {
        AlgebraInfo {
            name: alg.name().to_string(),
            fingerprint: alg.fingerprint(),
            size: alg.size(),
            elements: alg.names().to_vec(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct AlgebraCheck {
    /// Pairs `[a, b]` with `b` covering `a`.
    pub covers: Vec<[String; 2]>,
    pub join_irreducibles: Vec<String>,
    pub meet_irreducibles: Vec<String>,
    pub kappa: Vec<[String; 2]>,
    pub lambda: Vec<[String; 2]>,
}

pub fn algebra_check(alg: &Algebra) -> AlgebraCheck {
    let name = |e| alg.name_of(e).to_string();
    let mut covers = Vec::new();
    for a in alg.elements() {
        for b in alg.elements() {
            let strict = a != b && alg.leq(a, b);
            if strict && !alg.elements().any(|c| c != a && c != b && alg.leq(a, c) && alg.leq(c, b)) {
                covers.push([name(a), name(b)]);
            }
        }
    }
    let js = alg.join_irreducibles();
    let ms = alg.meet_irreducibles();
    AlgebraCheck {
        covers,
        join_irreducibles: js.iter().map(|&j| name(j)).collect(),
        meet_irreducibles: ms.iter().map(|&m| name(m)).collect(),
        kappa: js.iter().filter_map(|&j| alg.kappa(j).map(|m| [name(j), name(m)])).collect(),
        lambda: ms.iter().filter_map(|&m| alg.lambda(m).map(|j| [name(m), name(j)])).collect(),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FrameInfo {
    pub states: Vec<String>,
    /// `[from, to, value]` for every pair of states.
    pub relation: Vec<[String; 3]>,
}

pub fn frame(alg: &Algebra, f: &Frame) -> FrameInfo {
    FrameInfo { states: f.states().to_vec(), relation: f.describe(alg) }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleInfo {
    pub frame: FrameInfo,
    pub state: String,
    pub modal_holds: bool,
    pub fo_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

pub fn counterexample(alg: &Algebra, c: &Counterexample) -> CounterexampleInfo {
    CounterexampleInfo {
        frame: frame(alg, &c.frame),
        state: c.frame.states()[c.state].clone(),
        modal_holds: c.modal,
        fo_value: alg.name_of(c.fo_value).to_string(),
        valuation: c.valuation.as_ref().map(|v| {
            v.iter()
                .map(|(atom, vals)| (atom.to_string(), vals.iter().map(|&e| alg.name_of(e).to_string()).collect()))
                .collect()
        }),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct VerdictInfo {
    /// `PASS` or `FAIL`.
    pub verdict: &'static str,
    pub frames: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleInfo>,
}

impl VerdictInfo {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

/// `total` is the number of configured frames, reported on failure.
pub fn verdict(alg: &Algebra, v: &Verdict, total: u64) -> VerdictInfo {
    match v {
        Verdict::Pass { frames } => VerdictInfo { verdict: "PASS", frames: *frames, counterexample: None },
        Verdict::Counterexample(c) => {
            VerdictInfo { verdict: "FAIL", frames: total, counterexample: Some(counterexample(alg, c)) }
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct DisagreementInfo {
    pub frame: FrameInfo,
    pub state: String,
    pub left: String,
    pub right: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct AgreementInfo {
    pub verdict: &'static str,
    pub frames: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreement: Option<DisagreementInfo>,
}

pub fn agreement(alg: &Algebra, (frames, d): &(u64, Option<Disagreement>)) -> AgreementInfo {
    AgreementInfo {
        verdict: if d.is_none() { "PASS" } else { "FAIL" },
        frames: *frames,
        disagreement: d.as_ref().map(|d| DisagreementInfo {
            frame: frame(alg, &d.frame),
            state: d.frame.states()[d.state].clone(),
            left: alg.name_of(d.left).to_string(),
            right: alg.name_of(d.right).to_string(),
        }),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct FoText {
    /// Parseable text of the unsimplified formula.
    pub raw: String,
    /// Parseable text of the simplified formula.
    pub ascii: String,
    pub display: String,
}

pub fn fo_text(raw: &Fo, shown: &Fo) -> FoText {
    FoText {
        raw: FoStyle::Ascii.render(raw),
        ascii: FoStyle::Ascii.render(shown),
        display: FoStyle::Display.render(shown),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct StepInfo {
    pub rule: String,
    pub before: Vec<String>,
    pub after: Vec<String>,
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn step(s: &Step) -> StepInfo {
    StepInfo { rule: s.rule.to_string(), before: strings(&s.before), after: strings(&s.after) }
}

#[derive(Serialize, Clone, Debug)]
pub struct BranchInfo {
    pub pre: String,
    pub status: String,
    pub order_type: OrderType,
    pub attempts: usize,
    pub initial: Vec<String>,
    pub system: Vec<String>,
    pub trace: Vec<StepInfo>,
}

fn branch(b: &BranchRun) -> BranchInfo {
    BranchInfo {
        pre: b.pre.to_string(),
        status: b.status.to_string(),
        order_type: b.order_type.clone(),
        attempts: b.attempts,
        initial: strings(&b.initial),
        system: strings(&b.system),
        trace: b.trace.iter().map(step).collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SoundnessInfo {
    pub steps: usize,
    pub frames: u64,
    pub sound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub fn soundness(r: &SoundnessReport) -> SoundnessInfo {
    SoundnessInfo {
        steps: r.steps,
        frames: r.frames,
        sound: r.is_sound(),
        failure: r.failure.as_ref().map(|f| {
            let at = match f.branch {
                Some(b) => format!("branch {} step {}", b + 1, f.index + 1),
                None => format!("preprocessing step {}", f.index + 1),
            };
            format!("{at} ({}) on a {}-state frame: {}", f.rule, f.states, f.detail)
        }),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct AlbaInfo {
    pub status: String,
    pub value: String,
    pub pinned: String,
    pub preprocessing: Vec<StepInfo>,
    pub pre: Vec<String>,
    pub branches: Vec<BranchInfo>,
    pub quasi: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fo: Option<FoText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerdictInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub soundness: Option<SoundnessInfo>,
}

/// `fo` is the pair of raw and displayed correspondent chosen by the caller.
pub fn alba(r: &AlbaResult, fo: Option<(Fo, Fo)>) -> AlbaInfo {
    AlbaInfo {
        status: r.status.to_string(),
        value: r.value_name.clone(),
        pinned: r.pinned.to_string(),
        preprocessing: r.preprocessing.iter().map(step).collect(),
        pre: strings(&r.pre),
        branches: r.branches.iter().map(branch).collect(),
        quasi: strings(&r.quasi),
        fo: fo.map(|(raw, shown)| fo_text(&raw, &shown)),
        verification: None,
        soundness: None,
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct BranchRow {
    pub number: usize,
    pub side: &'static str,
    pub leaf: String,
    pub quality: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct ClassifyInfo {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<OrderType>,
    /// Pairs `[p, q]` with `p < q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<[String; 2]>>,
    pub branches: Vec<BranchRow>,
}

pub fn classification(c: &Classification) -> ClassifyInfo {
    let (epsilon, omega) = match (&c.sahlqvist, &c.inductive) {
        (Some(e), _) => (Some(e.clone()), None),
        (None, Some((o, e))) => (Some(e.clone()), Some(o.iter().map(|(p, q)| [p.clone(), q.clone()]).collect())),
        (None, None) => (None, None),
    };
    ClassifyInfo {
        verdict: c.verdict(),
        epsilon,
        omega,
        branches: c
            .analysis
            .branches
            .iter()
            .map(|b| BranchRow {
                number: b.number,
                side: if b.side == 0 { "left" } else { "right" },
                leaf: b.label.clone(),
                quality: b.quality.to_string(),
            })
            .collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SvbInfo {
    pub fo: FoText,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerdictInfo>,
    /// Agreement of the ALBA correspondent (left) with the SvB correspondent (right).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<AgreementInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alba_status: Option<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct StateValue {
    pub state: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

#[derive(Serialize, Clone, Debug)]
pub struct EvalInfo {
    pub states: Vec<StateValue>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyInfo {
    pub fo: String,
    pub threshold: String,
    #[serde(flatten)]
    pub verdict: VerdictInfo,
}
