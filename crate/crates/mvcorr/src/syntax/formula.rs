use crate::heyting::Elem;
use serde::Serialize;
use std::collections::BTreeSet;

/// An algebra constant. The name is kept so formulas print without the algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Const {
    pub elem: Elem,
    pub name: String,
}

impl Const {
    pub fn bot() -> Self {
        Const { elem: Elem::BOT, name: "0".into() }
    }
    pub fn top() -> Self {
        Const { elem: Elem::TOP, name: "1".into() }
    }
}

/// Formulas of the extended modal language. `BoxInv` and `DiamondInv` read the
/// accessibility relation backwards.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Formula {
    Var(String),
    Nom(String),
    CoNom(String),
    Const(Const),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Minus(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
    BoxInv(Box<Formula>),
    DiamondInv(Box<Formula>),
}

/// Atoms that receive a value from a valuation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Atom {
    Var(String),
    Nom(String),
    CoNom(String),
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Atom::Var(p) => write!(f, "{p}"),
            Atom::Nom(i) => write!(f, "#{i}"),
            Atom::CoNom(m) => write!(f, "${m}"),
        }
    }
}

impl Atom {
    pub fn formula(&self) -> Formula {
        match self {
            Atom::Var(p) => Formula::Var(p.clone()),
            Atom::Nom(i) => Formula::Nom(i.clone()),
            Atom::CoNom(m) => Formula::CoNom(m.clone()),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Mixed,
    Absent,
}

impl Polarity {
    fn add(self, sign: bool) -> Polarity {
        let s = if sign { Polarity::Positive } else { Polarity::Negative };
        match self {
            Polarity::Absent => s,
            p if p == s => p,
            _ => Polarity::Mixed,
        }
    }
    pub fn is_positive(self) -> bool {
        matches!(self, Polarity::Positive | Polarity::Absent)
    }
    pub fn is_negative(self) -> bool {
        matches!(self, Polarity::Negative | Polarity::Absent)
    }
}

impl Formula {
    pub fn var(p: &str) -> Self {
        Formula::Var(p.to_string())
    }
    pub fn nom(i: &str) -> Self {
        Formula::Nom(i.to_string())
    }
    pub fn conom(m: &str) -> Self {
        Formula::CoNom(m.to_string())
    }
    pub fn bot() -> Self {
        Formula::Const(Const::bot())
    }
    pub fn top() -> Self {
        Formula::Const(Const::top())
    }
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }
    pub fn minus(a: Formula, b: Formula) -> Self {
        Formula::Minus(Box::new(a), Box::new(b))
    }
    pub fn boxed(a: Formula) -> Self {
        Formula::Box(Box::new(a))
    }
    pub fn diamond(a: Formula) -> Self {
        Formula::Diamond(Box::new(a))
    }
    pub fn box_inv(a: Formula) -> Self {
        Formula::BoxInv(Box::new(a))
    }
    pub fn diamond_inv(a: Formula) -> Self {
        Formula::DiamondInv(Box::new(a))
    }
    pub fn neg(a: Formula) -> Self {
        Formula::implies(a, Formula::bot())
    }
    /// `[]^n a`
    pub fn box_n(n: usize, a: Formula) -> Self {
        (0..n).fold(a, |f, _| Formula::boxed(f))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Nom(_) | Formula::CoNom(_) | Formula::Const(_) => vec![],
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Implies(a, b) | Formula::Minus(a, b) => vec![a, b],
            Formula::Box(a) | Formula::Diamond(a) | Formula::BoxInv(a) | Formula::DiamondInv(a) => vec![a],
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.children().is_empty()
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Var(p) => {
                out.insert(Atom::Var(p.clone()));
            }
            Formula::Nom(i) => {
                out.insert(Atom::Nom(i.clone()));
            }
            Formula::CoNom(m) => {
                out.insert(Atom::CoNom(m.clone()));
            }
            _ => self.children().iter().for_each(|c| c.collect_atoms(out)),
        }
    }

    /// Atoms in a fixed order: variables, then nominals, then co-nominals, each sorted by name.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut s = BTreeSet::new();
        self.collect_atoms(&mut s);
        s
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.atoms()
            .into_iter()
            .filter_map(|a| if let Atom::Var(p) = a { Some(p) } else { None })
            .collect()
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Formula::Var(_) => true,
            _ => self.children().iter().any(|c| c.has_vars()),
        }
    }

    pub fn contains_var(&self, p: &str) -> bool {
        match self {
            Formula::Var(q) => q == p,
            _ => self.children().iter().any(|c| c.contains_var(p)),
        }
    }

    /// True when the formula uses no nominal, co-nominal, co-implication or inverse modality.
    pub fn is_basic(&self) -> bool {
        match self {
            Formula::Nom(_) | Formula::CoNom(_) | Formula::Minus(..) | Formula::BoxInv(_) | Formula::DiamondInv(_) => {
                false
            }
            _ => self.children().iter().all(|c| c.is_basic()),
        }
    }

    fn walk_polarity(&self, p: &str, sign: bool, acc: &mut Polarity) {
        match self {
            Formula::Var(q) if q == p => *acc = acc.add(sign),
            Formula::Implies(a, b) | Formula::Minus(b, a) => {
                a.walk_polarity(p, !sign, acc);
                b.walk_polarity(p, sign, acc);
            }
            _ => self.children().iter().for_each(|c| c.walk_polarity(p, sign, acc)),
        }
    }

    /// Polarity of `p` in the positive signed tree. The left argument of `->`
    /// and the right argument of `-` flip the sign.
    pub fn polarity(&self, p: &str) -> Polarity {
        let mut acc = Polarity::Absent;
        self.walk_polarity(p, true, &mut acc);
        acc
    }

    /// Replaces every occurrence of the atom by `by`.
    pub fn subst(&self, atom: &Atom, by: &Formula) -> Formula {
        let hit = match (self, atom) {
            (Formula::Var(a), Atom::Var(b)) | (Formula::Nom(a), Atom::Nom(b)) | (Formula::CoNom(a), Atom::CoNom(b)) => {
                a == b
            }
            _ => false,
        };
        if hit {
            return by.clone();
        }
        self.map_children(|c| c.subst(atom, by))
    }

    pub fn subst_var(&self, p: &str, by: &Formula) -> Formula {
        self.subst(&Atom::Var(p.to_string()), by)
    }

    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        let b = |x: &Formula, f: &mut dyn FnMut(&Formula) -> Formula| Box::new(f(x));
        match self {
            Formula::Var(_) | Formula::Nom(_) | Formula::CoNom(_) | Formula::Const(_) => self.clone(),
            Formula::Or(x, y) => Formula::Or(b(x, &mut f), b(y, &mut f)),
            Formula::And(x, y) => Formula::And(b(x, &mut f), b(y, &mut f)),
            Formula::Implies(x, y) => Formula::Implies(b(x, &mut f), b(y, &mut f)),
            Formula::Minus(x, y) => Formula::Minus(b(x, &mut f), b(y, &mut f)),
            Formula::Box(x) => Formula::Box(b(x, &mut f)),
            Formula::Diamond(x) => Formula::Diamond(b(x, &mut f)),
            Formula::BoxInv(x) => Formula::BoxInv(b(x, &mut f)),
            Formula::DiamondInv(x) => Formula::DiamondInv(b(x, &mut f)),
        }
    }

    pub fn join_all(items: Vec<Formula>) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or_else(Formula::bot)
    }

    pub fn meet_all(items: Vec<Formula>) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::top)
    }
}

/// `lhs <= rhs`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Inequality {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Inequality {
    pub fn new(lhs: Formula, rhs: Formula) -> Self {
        Inequality { lhs, rhs }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut s = self.lhs.atoms();
        s.extend(self.rhs.atoms());
        s
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut s = self.lhs.vars();
        s.extend(self.rhs.vars());
        s
    }

    pub fn has_vars(&self) -> bool {
        self.lhs.has_vars() || self.rhs.has_vars()
    }

    /// Polarity of `p` in the inequality read as `lhs -> rhs`.
    pub fn polarity(&self, p: &str) -> Polarity {
        Formula::implies(self.lhs.clone(), self.rhs.clone()).polarity(p)
    }

    pub fn subst(&self, atom: &Atom, by: &Formula) -> Inequality {
        Inequality::new(self.lhs.subst(atom, by), self.rhs.subst(atom, by))
    }
}

/// `premise & ... & premise => conclusion`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuasiInequality {
    pub premises: Vec<Inequality>,
    pub conclusion: Inequality,
}

impl QuasiInequality {
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut s = self.conclusion.atoms();
        for p in &self.premises {
            s.extend(p.atoms());
        }
        s
    }
}

/// Anything the front end accepts as a modal input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ModalInput {
    Formula(Formula),
    Inequality(Inequality),
}

impl ModalInput {
    /// A formula `f` is read as the inequality `1 <= f`.
    pub fn as_inequality(&self) -> Inequality {
        match self {
            ModalInput::Formula(f) => Inequality::new(Formula::top(), f.clone()),
            ModalInput::Inequality(i) => i.clone(),
        }
    }
}
