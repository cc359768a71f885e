//! Finite Heyting algebras with precomputed operation tables.
//!
//! An algebra is loaded from element names and order pairs. The order is
//! closed reflexively and transitively, then checked to be a bounded
//! distributive lattice. Every finite distributive lattice is a bi-Heyting
//! algebra, so implication and co-implication always exist.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

/// Index of an element in the carrier. Bottom is always 0 and top is always 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u16);

impl Elem {
    pub const BOT: Elem = Elem(0);
    pub const TOP: Elem = Elem(1);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("order pair mentions unknown element `{0}`")]
    UnknownElement(String),
    #[error("the carrier is empty")]
    Empty,
    #[error("`{0}` and `{1}` are distinct but each is below the other")]
    NotAPartialOrder(String, String),
    #[error("the order has no least or no greatest element")]
    NoBounds,
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("distributivity fails for a={0}, b={1}, c={2}")]
    NotDistributive(String, String, String),
    #[error("name `{0}` is reserved for the {1} element")]
    ReservedName(String, &'static str),
    #[error("unknown built-in algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("algebra file: {0}")]
    Format(String),
}

/// Plain description of an algebra: element names and order pairs `[a, b]` meaning `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Format(e.to_string()))
    }
}

/// Names of the built-in algebras.
pub const BUILTINS: &[&str] = &["bool2", "paper-P"];

pub fn builtin_spec(name: &str) -> Option<AlgebraSpec> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let p = |a: &str, b: &str| [a.to_string(), b.to_string()];
    match name {
        "bool2" => Some(AlgebraSpec { elements: s(&["0", "1"]), leq: vec![p("0", "1")] }),
        "paper-P" => Some(AlgebraSpec {
            elements: s(&["0", "alpha", "beta", "gamma", "1"]),
            leq: vec![p("0", "alpha"), p("0", "beta"), p("alpha", "gamma"), p("beta", "gamma"), p("gamma", "1")],
        }),
        _ => None,
    }
}

/// A finite Heyting algebra. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    names: Vec<String>,
    aliases: Vec<(String, Elem)>,
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    implies: Vec<Elem>,
    minus: Vec<Elem>,
    jinf: Vec<Elem>,
    minf: Vec<Elem>,
    kappa: Vec<Option<Elem>>,
    lambda: Vec<Option<Elem>>,
}

impl Algebra {
    pub fn builtin(name: &str) -> Result<Self, AlgebraError> {
        let spec = builtin_spec(name).ok_or_else(|| AlgebraError::UnknownBuiltin(name.to_string()))?;
        Self::load_named(name, &spec)
    }

    /// Loads a built-in by name, or else reads the argument as a JSON algebra file.
    pub fn from_source(source: &str) -> Result<Self, AlgebraError> {
        if builtin_spec(source).is_some() {
            return Self::builtin(source);
        }
        let text = std::fs::read_to_string(source)
            .map_err(|e| AlgebraError::Format(format!("{source}: {e}")))?;
        Self::load_named(source, &AlgebraSpec::from_json(&text)?)
    }

    pub fn load(spec: &AlgebraSpec) -> Result<Self, AlgebraError> {
        Self::load_named("custom", spec)
    }

    pub fn load_named(name: &str, spec: &AlgebraSpec) -> Result<Self, AlgebraError> {
        let n = spec.elements.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let canon = |s: &str| match s {
            "bot" => "0".to_string(),
            "top" => "1".to_string(),
            other => other.to_string(),
        };
        let raw: Vec<String> = spec.elements.iter().map(|s| canon(s)).collect();
        for (i, a) in raw.iter().enumerate() {
            if raw[..i].contains(a) {
                return Err(AlgebraError::DuplicateElement(a.clone()));
            }
        }
        let pos = |s: &str| {
            let c = canon(s);
            raw.iter().position(|x| *x == c).ok_or(AlgebraError::UnknownElement(s.to_string()))
        };
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for [a, b] in &spec.leq {
            let (i, j) = (pos(a)?, pos(b)?);
            le[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(AlgebraError::NotAPartialOrder(raw[i].clone(), raw[j].clone()));
                }
            }
        }
        let bot = (0..n).find(|&i| (0..n).all(|j| le[i * n + j])).ok_or(AlgebraError::NoBounds)?;
        let top = (0..n).find(|&i| (0..n).all(|j| le[j * n + i])).ok_or(AlgebraError::NoBounds)?;
        if n == 1 {
            return Err(AlgebraError::NoBounds);
        }
        // bottom first, top second, the rest in input order
        let mut order = vec![bot, top];
        order.extend((0..n).filter(|&i| i != bot && i != top));
        let mut names: Vec<String> = order.iter().map(|&i| raw[i].clone()).collect();
        let mut aliases = Vec::new();
        for (slot, reserved, what) in [(0usize, "0", "bottom"), (1, "1", "top")] {
            if let Some(k) = names.iter().position(|s| s == reserved) {
                if k != slot {
                    return Err(AlgebraError::ReservedName(reserved.to_string(), what));
                }
            }
            if names[slot] != reserved {
                aliases.push((names[slot].clone(), Elem(slot as u16)));
                names[slot] = reserved.to_string();
            }
        }
        aliases.push(("bot".to_string(), Elem::BOT));
        aliases.push(("top".to_string(), Elem::TOP));
        let mut leq = vec![false; n * n];
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                leq[a * n + b] = le[i * n + j];
            }
        }

        let mut alg = Algebra {
            name: name.to_string(),
            names,
            aliases,
            n,
            leq,
            join: vec![Elem::BOT; n * n],
            meet: vec![Elem::BOT; n * n],
            implies: vec![Elem::BOT; n * n],
            minus: vec![Elem::BOT; n * n],
            jinf: Vec::new(),
            minf: Vec::new(),
            kappa: vec![None; n],
            lambda: vec![None; n],
        };
        alg.build_lattice()?;
        alg.check_distributive()?;
        alg.build_residuals();
        alg.build_irreducibles();
        Ok(alg)
    }

    fn build_lattice(&mut self) -> Result<(), AlgebraError> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ups: Vec<usize> = (0..n).filter(|&c| self.leq[a * n + c] && self.leq[b * n + c]).collect();
                let lub = ups.iter().copied().find(|&c| ups.iter().all(|&d| self.leq[c * n + d]));
                let downs: Vec<usize> = (0..n).filter(|&c| self.leq[c * n + a] && self.leq[c * n + b]).collect();
                let glb = downs.iter().copied().find(|&c| downs.iter().all(|&d| self.leq[d * n + c]));
                let err = |what| AlgebraError::NotALattice(self.names[a].clone(), self.names[b].clone(), what);
                self.join[a * n + b] = Elem(lub.ok_or_else(|| err("least upper bound"))? as u16);
                self.meet[a * n + b] = Elem(glb.ok_or_else(|| err("greatest lower bound"))? as u16);
            }
        }
        Ok(())
    }

    fn check_distributive(&self) -> Result<(), AlgebraError> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Err(AlgebraError::NotDistributive(
                            self.name_of(a).into(),
                            self.name_of(b).into(),
                            self.name_of(c).into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn build_residuals(&mut self) {
        let n = self.n;
        for a in self.elements() {
            for b in self.elements() {
                let imp = self.join_all(self.elements().filter(|&c| self.leq(self.meet(a, c), b)));
                let minus = self.meet_all(self.elements().filter(|&c| self.leq(a, self.join(b, c))));
                self.implies[a.idx() * n + b.idx()] = imp;
                self.minus[a.idx() * n + b.idx()] = minus;
            }
        }
    }

    fn build_irreducibles(&mut self) {
        let below = |s: &Self, x: Elem| s.join_all(s.elements().filter(|&y| y != x && s.leq(y, x)));
        let above = |s: &Self, x: Elem| s.meet_all(s.elements().filter(|&y| y != x && s.leq(x, y)));
        self.jinf = self.elements().filter(|&x| x != Elem::BOT && below(self, x) != x).collect();
        self.minf = self.elements().filter(|&x| x != Elem::TOP && above(self, x) != x).collect();
        for &j in &self.jinf.clone() {
            let k = self.join_all(self.elements().filter(|&u| !self.leq(j, u)));
            self.kappa[j.idx()] = Some(k);
        }
        for &m in &self.minf.clone() {
            let l = self.meet_all(self.elements().filter(|&u| !self.leq(u, m)));
            self.lambda[m.idx()] = Some(l);
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + 'static {
        (0..self.n as u16).map(Elem)
    }

    pub fn name_of(&self, e: Elem) -> &str {
        &self.names[e.idx()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up an element by name, accepting `bot`/`top` and the original names of the bounds.
    pub fn elem(&self, name: &str) -> Option<Elem> {
        if let Some(i) = self.names.iter().position(|s| s == name) {
            return Some(Elem(i as u16));
        }
        self.aliases.iter().find(|(a, _)| a == name).map(|&(_, e)| e)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.idx() * self.n + b.idx()]
    }
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.idx() * self.n + b.idx()]
    }
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.idx() * self.n + b.idx()]
    }
    #[inline]
    pub fn implies(&self, a: Elem, b: Elem) -> Elem {
        self.implies[a.idx() * self.n + b.idx()]
    }
    /// Co-implication `a - b`, the least `c` with `a <= b \/ c`.
    #[inline]
    pub fn minus(&self, a: Elem, b: Elem) -> Elem {
        self.minus[a.idx() * self.n + b.idx()]
    }
    pub fn neg(&self, a: Elem) -> Elem {
        self.implies(a, Elem::BOT)
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(Elem::BOT, |acc, x| self.join(acc, x))
    }
    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(Elem::TOP, |acc, x| self.meet(acc, x))
    }

    /// Completely join-irreducible elements, in index order.
    pub fn join_irreducibles(&self) -> &[Elem] {
        &self.jinf
    }
    /// Completely meet-irreducible elements, in index order.
    pub fn meet_irreducibles(&self) -> &[Elem] {
        &self.minf
    }
    pub fn kappa(&self, j: Elem) -> Option<Elem> {
        self.kappa[j.idx()]
    }
    pub fn lambda(&self, m: Elem) -> Option<Elem> {
        self.lambda[m.idx()]
    }

    /// SHA-256 over the carrier names and all operation tables.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for s in &self.names {
            h.update((s.len() as u64).to_le_bytes());
            h.update(s.as_bytes());
        }
        for t in [&self.join, &self.meet, &self.implies, &self.minus] {
            for e in t.iter() {
                h.update(e.0.to_le_bytes());
            }
        }
        for b in &self.leq {
            h.update([*b as u8]);
        }
        hex::encode(h.finalize())
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{{}}}", self.name, self.names.join(", "))
    }
}
