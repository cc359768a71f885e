//! Signed generation trees, branch quality, and recognition of Sahlqvist,
//! inductive and classical Sahlqvist shapes.

use crate::syntax::{Formula, Inequality};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NodeClass {
    DeltaAdjoint,
    Slr,
    Sra,
    Srr,
    Leaf,
    Unclassifiable,
}

impl NodeClass {
    pub fn is_skeleton(self) -> bool {
        matches!(self, NodeClass::DeltaAdjoint | NodeClass::Slr)
    }
    pub fn is_pia(self) -> bool {
        matches!(self, NodeClass::Sra | NodeClass::Srr)
    }
}

/// The classes a signed connective may take. Binary lattice connectives have two.
pub fn classes(f: &Formula, sign: Sign) -> Vec<NodeClass> {
    use NodeClass::*;
    match (f, sign) {
        (Formula::Var(_) | Formula::Const(_) | Formula::Nom(_) | Formula::CoNom(_), _) => vec![Leaf],
        (Formula::Or(..), Sign::Plus) | (Formula::And(..), Sign::Minus) => vec![DeltaAdjoint, Srr],
        (Formula::And(..), Sign::Plus) | (Formula::Or(..), Sign::Minus) => vec![DeltaAdjoint, Sra],
        (Formula::Diamond(_), Sign::Plus) | (Formula::Box(_), Sign::Minus) | (Formula::Implies(..), Sign::Minus) => {
            vec![Slr]
        }
        (Formula::Box(_), Sign::Plus) | (Formula::Diamond(_), Sign::Minus) => vec![Sra],
        (Formula::Implies(..), Sign::Plus) => vec![Srr],
        _ => vec![Unclassifiable],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub formula: Formula,
    pub sign: Sign,
    pub children: Vec<usize>,
    pub classes: Vec<NodeClass>,
}

impl TreeNode {
    pub fn can_be_skeleton(&self) -> bool {
        self.classes.iter().any(|c| c.is_skeleton())
    }
    pub fn can_be_pia(&self) -> bool {
        self.classes.iter().any(|c| c.is_pia())
    }
    pub fn can_be_sra(&self) -> bool {
        self.classes.contains(&NodeClass::Sra)
    }
    pub fn can_be_srr(&self) -> bool {
        self.classes.contains(&NodeClass::Srr)
    }
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `+p`, `-[]`, `+@a` and so on.
    pub fn label(&self) -> String {
        let op = match &self.formula {
            Formula::Var(p) => p.clone(),
            Formula::Const(c) => format!("@{}", c.name),
            Formula::Nom(i) => format!("#{i}"),
            Formula::CoNom(m) => format!("${m}"),
            Formula::Or(..) => "\\/".into(),
            Formula::And(..) => "/\\".into(),
            Formula::Implies(..) => "->".into(),
            Formula::Minus(..) => "-".into(),
            Formula::Box(_) => "[]".into(),
            Formula::Diamond(_) => "<>".into(),
            Formula::BoxInv(_) => "[i]".into(),
            Formula::DiamondInv(_) => "<i>".into(),
        };
        format!("{}{op}", self.sign)
    }
}

/// A signed generation tree. Node 0 is the root, children come after parents.
#[derive(Clone, Debug, Serialize)]
pub struct SignedTree {
    pub nodes: Vec<TreeNode>,
}

pub fn build_signed_tree(f: &Formula, sign: Sign) -> SignedTree {
    fn go(f: &Formula, sign: Sign, nodes: &mut Vec<TreeNode>) -> usize {
        let id = nodes.len();
        nodes.push(TreeNode { formula: f.clone(), sign, children: vec![], classes: classes(f, sign) });
        let kids: Vec<usize> = match f {
            Formula::Implies(a, b) => {
                let l = go(a, sign.flip(), nodes);
                vec![l, go(b, sign, nodes)]
            }
            Formula::Minus(a, b) => {
                let l = go(a, sign, nodes);
                vec![l, go(b, sign.flip(), nodes)]
            }
            _ => f.children().into_iter().map(|c| go(c, sign, nodes)).collect(),
        };
        nodes[id].children = kids;
        id
    }
    let mut nodes = Vec::new();
    go(f, sign, &mut nodes);
    SignedTree { nodes }
}

impl SignedTree {
    /// Leaves left to right with the path of inner nodes above each.
    pub fn leaves(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(0, &mut path, &mut out);
        out
    }

    fn collect(&self, id: usize, path: &mut Vec<usize>, out: &mut Vec<(usize, Vec<usize>)>) {
        let n = &self.nodes[id];
        if n.is_leaf() {
            out.push((id, path.clone()));
            return;
        }
        path.push(id);
        for &c in &n.children {
            self.collect(c, path, out);
        }
        path.pop();
    }

    /// Leaves of the subtree rooted at `id`.
    pub fn leaves_under(&self, id: usize) -> Vec<usize> {
        let n = &self.nodes[id];
        if n.is_leaf() {
            return vec![id];
        }
        n.children.iter().flat_map(|&c| self.leaves_under(c)).collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quality {
    Excellent,
    Good,
    NotGood,
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quality::Excellent => "excellent",
            Quality::Good => "good",
            Quality::NotGood => "not good",
        })
    }
}

/// Splits a path at its longest skeleton prefix and grades the rest.
/// Returns the split index and the quality.
pub fn branch_quality(tree: &SignedTree, path: &[usize]) -> (usize, Quality) {
    let k = path.iter().take_while(|&&i| tree.nodes[i].can_be_skeleton()).count();
    let rest = &path[k..];
    let q = if rest.iter().all(|&i| tree.nodes[i].can_be_sra()) {
        Quality::Excellent
    } else if rest.iter().all(|&i| tree.nodes[i].can_be_pia()) {
        Quality::Good
    } else {
        Quality::NotGood
    };
    (k, q)
}

/// A branch of one of the two trees of an inequality.
#[derive(Clone, Debug, Serialize)]
pub struct Branch {
    /// 1-based, counted left to right over the positive tree of the left side and then the negative tree of the right side.
    pub number: usize,
    /// 0 for the left side, 1 for the right side.
    pub side: usize,
    pub leaf: usize,
    pub path: Vec<usize>,
    pub split: usize,
    pub quality: Quality,
    pub label: String,
}

/// Both signed trees of an inequality and all branches.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub trees: [SignedTree; 2],
    pub branches: Vec<Branch>,
}

pub fn analyze(ineq: &Inequality) -> Analysis {
    let trees = [build_signed_tree(&ineq.lhs, Sign::Plus), build_signed_tree(&ineq.rhs, Sign::Minus)];
    let mut branches = Vec::new();
    for (side, t) in trees.iter().enumerate() {
        for (leaf, path) in t.leaves() {
            let (split, quality) = branch_quality(t, &path);
            branches.push(Branch {
                number: branches.len() + 1,
                side,
                leaf,
                path,
                split,
                quality,
                label: t.nodes[leaf].label(),
            });
        }
    }
    Analysis { trees, branches }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mark {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "d")]
    Dual,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Mark::One { "1" } else { "∂" })
    }
}

pub type OrderType = BTreeMap<String, Mark>;

/// Strict order as the set of pairs `(p, q)` with `p < q`, transitively closed.
pub type DependencyOrder = BTreeSet<(String, String)>;

/// All order types over the variables, in lexicographic order with `1` before `∂`.
pub fn order_types(vars: &[String]) -> Vec<OrderType> {
    let n = vars.len();
    (0..1u64 << n)
        .map(|bits| {
            vars.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), if bits >> (n - 1 - i) & 1 == 1 { Mark::Dual } else { Mark::One }))
                .collect()
        })
        .collect()
}

impl Analysis {
    fn node(&self, b: &Branch) -> &TreeNode {
        &self.trees[b.side].nodes[b.leaf]
    }

    pub fn is_critical_leaf(&self, side: usize, leaf: usize, eps: &OrderType) -> bool {
        let n = &self.trees[side].nodes[leaf];
        match &n.formula {
            Formula::Var(p) => matches!((n.sign, eps.get(p)), (Sign::Plus, Some(Mark::One)) | (Sign::Minus, Some(Mark::Dual))),
            _ => false,
        }
    }

    pub fn critical_branches<'a>(&'a self, eps: &'a OrderType) -> impl Iterator<Item = &'a Branch> + 'a {
        self.branches.iter().filter(move |b| self.is_critical_leaf(b.side, b.leaf, eps))
    }

    pub fn is_eps_sahlqvist(&self, eps: &OrderType) -> bool {
        self.critical_branches(eps).all(|b| b.quality == Quality::Excellent)
    }

    /// Dependencies forced by `eps`, or `None` when some critical branch is not
    /// good or some residual side contains a critical leaf.
    pub fn inductive_constraints(&self, eps: &OrderType) -> Option<DependencyOrder> {
        let mut alternatives: Vec<Vec<Vec<(String, String)>>> = Vec::new();
        for b in self.critical_branches(eps) {
            if b.quality == Quality::NotGood {
                return None;
            }
            let t = &self.trees[b.side];
            let pi = match &self.node(b).formula {
                Formula::Var(p) => p.clone(),
                _ => unreachable!(),
            };
            for &id in &b.path[b.split..] {
                let n = &t.nodes[id];
                if !n.can_be_srr() || n.children.len() != 2 {
                    continue;
                }
                let mut opts = Vec::new();
                for &side_child in &n.children {
                    let leaves = t.leaves_under(side_child);
                    if leaves.iter().any(|&l| self.is_critical_leaf(b.side, l, eps)) {
                        continue;
                    }
                    let vars = t.nodes[side_child].formula.vars();
                    opts.push(vars.into_iter().map(|pj| (pj, pi.clone())).collect());
                }
                if opts.is_empty() {
                    return None;
                }
                alternatives.push(opts);
            }
        }
        solve(&alternatives, 0, &mut Vec::new())
    }
}

fn closure(pairs: &[(String, String)]) -> Option<DependencyOrder> {
    let mut rel: DependencyOrder = pairs.iter().cloned().collect();
    loop {
        let mut added = Vec::new();
        for (a, b) in &rel {
            for (c, d) in &rel {
                if b == c && !rel.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        rel.extend(added);
    }
    if rel.iter().any(|(a, b)| a == b) {
        None
    } else {
        Some(rel)
    }
}

fn solve(alts: &[Vec<Vec<(String, String)>>], k: usize, chosen: &mut Vec<(String, String)>) -> Option<DependencyOrder> {
    if k == alts.len() {
        return closure(chosen);
    }
    for opt in &alts[k] {
        let len = chosen.len();
        chosen.extend(opt.iter().cloned());
        if closure(chosen).is_some() {
            if let Some(o) = solve(alts, k + 1, chosen) {
                return Some(o);
            }
        }
        chosen.truncate(len);
    }
    None
}

/// True when the inequality is in the basic language without nominals.
pub fn is_classifiable(ineq: &Inequality) -> bool {
    fn ok(f: &Formula) -> bool {
        match f {
            Formula::Nom(_) | Formula::CoNom(_) | Formula::Minus(..) | Formula::BoxInv(_) | Formula::DiamondInv(_) => false,
            _ => f.children().iter().all(|c| ok(c)),
        }
    }
    ok(&ineq.lhs) && ok(&ineq.rhs)
}

fn vars_of(ineq: &Inequality) -> Vec<String> {
    ineq.vars().into_iter().collect()
}

/// First order type (in lexicographic order) under which every critical branch is excellent.
pub fn is_sahlqvist(ineq: &Inequality) -> Option<OrderType> {
    let a = analyze(ineq);
    order_types(&vars_of(ineq)).into_iter().find(|e| a.is_eps_sahlqvist(e))
}

/// First order type with a consistent dependency order.
pub fn is_inductive(ineq: &Inequality) -> Option<(DependencyOrder, OrderType)> {
    let a = analyze(ineq);
    order_types(&vars_of(ineq)).into_iter().find_map(|e| a.inductive_constraints(&e).map(|o| (o, e)))
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub sahlqvist: Option<OrderType>,
    pub inductive: Option<(DependencyOrder, OrderType)>,
    pub analysis: Analysis,
}

pub fn classify(ineq: &Inequality) -> Classification {
    Classification { sahlqvist: is_sahlqvist(ineq), inductive: is_inductive(ineq), analysis: analyze(ineq) }
}

impl Classification {
    pub fn verdict(&self) -> &'static str {
        match (&self.sahlqvist, &self.inductive) {
            (Some(_), _) => "sahlqvist",
            (None, Some(_)) => "inductive, not sahlqvist",
            (None, None) => "not inductive",
        }
    }
}

/// Antecedents of classical Sahlqvist implications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Antecedent {
    Top,
    Bot,
    /// `[]^n p`
    BoxedAtom(usize, String),
    Negative(Formula),
    And(Box<Antecedent>, Box<Antecedent>),
    Or(Box<Antecedent>, Box<Antecedent>),
    Diamond(Box<Antecedent>),
}

impl Antecedent {
    pub fn is_definite(&self) -> bool {
        match self {
            Antecedent::Or(..) => false,
            Antecedent::And(a, b) => a.is_definite() && b.is_definite(),
            Antecedent::Diamond(a) => a.is_definite(),
            _ => true,
        }
    }
}

/// How a classical Sahlqvist formula is built from implications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SahlqvistShape {
    Implication { antecedent: Antecedent, consequent: Formula },
    Box(Box<SahlqvistShape>),
    And(Box<SahlqvistShape>, Box<SahlqvistShape>),
    Or(Box<SahlqvistShape>, Box<SahlqvistShape>),
}

fn only_bounds(f: &Formula) -> bool {
    match f {
        Formula::Const(c) => c.elem == crate::heyting::Elem::BOT || c.elem == crate::heyting::Elem::TOP,
        Formula::Var(_) => true,
        Formula::Or(..) | Formula::And(..) | Formula::Implies(..) | Formula::Box(_) | Formula::Diamond(_) => {
            f.children().iter().all(|c| only_bounds(c))
        }
        _ => false,
    }
}

fn is_negative(f: &Formula) -> bool {
    f.vars().iter().all(|p| f.polarity(p).is_negative())
}

fn is_positive(f: &Formula) -> bool {
    f.vars().iter().all(|p| f.polarity(p).is_positive())
}

fn boxed_atom(f: &Formula) -> Option<(usize, String)> {
    match f {
        Formula::Var(p) => Some((0, p.clone())),
        Formula::Box(a) => boxed_atom(a).map(|(n, p)| (n + 1, p)),
        _ => None,
    }
}

pub fn sahlqvist_antecedent(f: &Formula) -> Option<Antecedent> {
    let structural = match f {
        Formula::Const(c) if c.elem == crate::heyting::Elem::TOP => Some(Antecedent::Top),
        Formula::Const(c) if c.elem == crate::heyting::Elem::BOT => Some(Antecedent::Bot),
        Formula::Var(_) | Formula::Box(_) if boxed_atom(f).is_some() => {
            boxed_atom(f).map(|(n, p)| Antecedent::BoxedAtom(n, p))
        }
        Formula::And(a, b) => sahlqvist_antecedent(a)
            .zip(sahlqvist_antecedent(b))
            .map(|(x, y)| Antecedent::And(Box::new(x), Box::new(y))),
        Formula::Or(a, b) => sahlqvist_antecedent(a)
            .zip(sahlqvist_antecedent(b))
            .map(|(x, y)| Antecedent::Or(Box::new(x), Box::new(y))),
        Formula::Diamond(a) => sahlqvist_antecedent(a).map(|x| Antecedent::Diamond(Box::new(x))),
        _ => None,
    };
    structural.or_else(|| is_negative(f).then(|| Antecedent::Negative(f.clone())))
}

fn shape(f: &Formula) -> Option<SahlqvistShape> {
    match f {
        Formula::Implies(a, c) => {
            if !is_positive(c) {
                return None;
            }
            sahlqvist_antecedent(a).map(|antecedent| SahlqvistShape::Implication { antecedent, consequent: (**c).clone() })
        }
        Formula::Box(a) => shape(a).map(|s| SahlqvistShape::Box(Box::new(s))),
        Formula::And(a, b) => shape(a).zip(shape(b)).map(|(x, y)| SahlqvistShape::And(Box::new(x), Box::new(y))),
        Formula::Or(a, b) => {
            if !a.vars().is_disjoint(&b.vars()) {
                return None;
            }
            shape(a).zip(shape(b)).map(|(x, y)| SahlqvistShape::Or(Box::new(x), Box::new(y)))
        }
        _ => None,
    }
}

/// Recognizes classical Sahlqvist formulas (negation read as `-> 0`).
pub fn is_classical_sahlqvist(f: &Formula) -> Option<SahlqvistShape> {
    if !only_bounds(f) {
        return None;
    }
    shape(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::{Algebra, AlgebraSpec};
    use crate::syntax::{parse_formula, parse_inequality, ModalInput};
    use proptest::prelude::*;

    fn alg_a() -> Algebra {
        Algebra::load(&AlgebraSpec {
            elements: vec!["0".into(), "a".into(), "1".into()],
            leq: vec![["0".into(), "a".into()], ["a".into(), "1".into()]],
        })
        .unwrap()
    }

    fn ineq(s: &str) -> Inequality {
        crate::syntax::parse_input(s, &alg_a()).unwrap().as_inequality()
    }

    fn labels(t: &SignedTree) -> Vec<String> {
        t.leaves().into_iter().map(|(l, _)| t.nodes[l].label()).collect()
    }

    #[test]
    fn leaf_signs() {
        let alg = alg_a();
        let f = parse_formula("(p -> @0) -> []q", &alg).unwrap();
        assert_eq!(labels(&build_signed_tree(&f, Sign::Plus)), ["+p", "-@0", "+q"]);
        let g = parse_formula("<>[]q \\/ []p", &alg).unwrap();
        assert_eq!(labels(&build_signed_tree(&g, Sign::Minus)), ["-q", "-p"]);
        let h = parse_formula("[](@a /\\ p -> q) /\\ []p -> <>[]q", &alg).unwrap();
        assert_eq!(labels(&build_signed_tree(&h, Sign::Minus)), ["-@a", "-p", "+q", "+p", "-q"]);
    }

    fn qualities(a: &Analysis) -> Vec<Quality> {
        a.branches.iter().map(|b| b.quality).collect()
    }

    use Quality::{Excellent as E, Good as G, NotGood as N};

    #[test]
    fn implication_over_boxed_q() {
        let i = ineq("(p -> @0) -> []q <= <>[]q \\/ []p");
        let c = classify(&i);
        assert_eq!(qualities(&c.analysis), [N, N, G, N, E]);
        assert_eq!(c.sahlqvist, None);
        let (omega, eps) = c.inductive.unwrap();
        assert_eq!(eps, [("p".to_string(), Mark::Dual), ("q".to_string(), Mark::One)].into());
        assert_eq!(omega, [("p".to_string(), "q".to_string())].into());
    }

    #[test]
    fn box_of_disjunction() {
        let i = ineq("[](p \\/ q) <= <>(p /\\ q)");
        let c = classify(&i);
        assert_eq!(qualities(&c.analysis), [G, G, G, G]);
        assert!(c.sahlqvist.is_none());
        assert!(c.inductive.is_none());
        assert_eq!(c.verdict(), "not inductive");
    }

    #[test]
    fn inductive_with_truth_constant() {
        let alg = alg_a();
        let f = parse_formula("[](@a /\\ p -> q) /\\ []p -> <>[]q", &alg).unwrap();
        let t = build_signed_tree(&f, Sign::Minus);
        let q: Vec<Quality> = t.leaves().iter().map(|(_, p)| branch_quality(&t, p).1).collect();
        assert_eq!(q, [G, G, G, E, N]);
        let i = ModalInput::Formula(f).as_inequality();
        let c = classify(&i);
        assert!(c.sahlqvist.is_none());
        let (omega, eps) = c.inductive.unwrap();
        assert_eq!(eps, [("p".to_string(), Mark::One), ("q".to_string(), Mark::One)].into());
        assert_eq!(omega, [("p".to_string(), "q".to_string())].into());
    }

    #[test]
    fn trivial_and_classical_cases() {
        assert!(is_sahlqvist(&ineq("p <= p")).is_some());
        for s in ["p -> <>p", "[]p -> [][]p", "<><>p -> <>p", "p -> []<>p", "[]p -> <>p", "<>p -> <><>p"] {
            let i = ineq(s);
            assert!(is_inductive(&i).is_some(), "{s}");
        }
        assert_eq!(is_sahlqvist(&ineq("<>p -> <><>p")), Some([("p".to_string(), Mark::One)].into()));
        assert!(is_inductive(&ineq("[]<>p -> <>[]p")).is_none());
    }

    #[test]
    fn classical_recognizer() {
        let alg = alg_a();
        let ok = |s: &str| is_classical_sahlqvist(&parse_formula(s, &alg).unwrap());
        assert!(matches!(ok("p -> <>p"), Some(SahlqvistShape::Implication { antecedent: Antecedent::BoxedAtom(0, _), .. })));
        assert!(matches!(ok("[]p -> [][]p"), Some(SahlqvistShape::Implication { .. })));
        assert!(ok("[]~p -> [][]~p").is_none());
        assert!(ok("[](p -> <>p)").is_some());
        assert!(matches!(ok("(p -> <>p) \\/ (q -> <><>q)"), Some(SahlqvistShape::Or(..))));
        assert!(ok("(p -> <>p) \\/ (p -> <><>p)").is_none());
        match ok("p \\/ q -> <>p \\/ <>q") {
            Some(SahlqvistShape::Implication { antecedent, .. }) => assert!(!antecedent.is_definite()),
            other => panic!("{other:?}"),
        }
        assert!(ok("<>p").is_none());
        assert!(ok("@a /\\ p -> <>p").is_none());
        assert!(ok("<>[]p /\\ ~q -> []<>p").is_some());
        assert!(ok("<>p -> <><>p").is_some());
        assert!(ok("[]<>p -> <>[]p").is_none());
    }

    #[test]
    fn classical_implies_sahlqvist_with_constant_one() {
        let alg = alg_a();
        for s in ["p -> <>p", "[]p -> [][]p", "<><>p -> <>p", "p -> []<>p", "[]p -> <>p", "[](p -> <>p)", "(p -> <>p) \\/ (q -> <><>q)"] {
            let f = parse_formula(s, &alg).unwrap();
            assert!(is_classical_sahlqvist(&f).is_some());
            let i = ModalInput::Formula(f).as_inequality();
            let a = analyze(&i);
            let ones: OrderType = i.vars().into_iter().map(|v| (v, Mark::One)).collect();
            assert!(a.is_eps_sahlqvist(&ones), "{s}");
        }
    }

    #[test]
    fn sahlqvist_implies_inductive_on_samples() {
        for s in ["[]p <= <>p", "<>[]p <= []<>p", "p /\\ <>q <= [](p \\/ q)", "[][]p <= []p", "<>(p /\\ []q) <= [](q -> p)"] {
            let i = parse_inequality(s, &alg_a()).unwrap();
            if is_sahlqvist(&i).is_some() {
                assert!(is_inductive(&i).is_some(), "{s}");
            }
        }
    }

    fn dual(f: &Formula) -> Formula {
        match f {
            Formula::And(a, b) => Formula::or(dual(a), dual(b)),
            Formula::Or(a, b) => Formula::and(dual(a), dual(b)),
            Formula::Box(a) => Formula::diamond(dual(a)),
            Formula::Diamond(a) => Formula::boxed(dual(a)),
            _ => f.clone(),
        }
    }

    fn arb_lattice_modal() -> impl Strategy<Value = Formula> {
        let leaf = prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::var);
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                inner.clone().prop_map(Formula::boxed),
                inner.prop_map(Formula::diamond),
            ]
        })
    }

    proptest! {
        #[test]
        fn duality_preserves_quality(f in arb_lattice_modal()) {
            let t = build_signed_tree(&f, Sign::Plus);
            let d = build_signed_tree(&dual(&f), Sign::Minus);
            let q1: Vec<_> = t.leaves().iter().map(|(_, p)| branch_quality(&t, p).1).collect();
            let q2: Vec<_> = d.leaves().iter().map(|(_, p)| branch_quality(&d, p).1).collect();
            prop_assert_eq!(q1, q2);
        }
    }
}
