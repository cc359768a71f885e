//! Reference first-order properties of the accessibility relation, each with
//! the free variable `x`.

use super::{Fo, Term};

fn t(x: &str) -> Term {
    Term::var(x)
}

fn r(a: &str, b: &str) -> Fo {
    Fo::rel(t(a), t(b))
}

/// `R(x,x)`
pub fn reflexivity() -> Fo {
    r("x", "x")
}

/// `A y. A z. (R(x,y) & R(y,z) -> R(x,z))`
pub fn transitivity() -> Fo {
    Fo::forall(t("y"), Fo::forall(t("z"), Fo::implies(Fo::and(r("x", "y"), r("y", "z")), r("x", "z"))))
}

/// `A y. (R(x,y) -> R(y,x))`
pub fn symmetry() -> Fo {
    Fo::forall(t("y"), Fo::implies(r("x", "y"), r("y", "x")))
}

/// `A y. (R(x,y) -> E z. (R(x,z) & R(z,y)))`
pub fn density() -> Fo {
    Fo::forall(t("y"), Fo::implies(r("x", "y"), Fo::exists(t("z"), Fo::and(r("x", "z"), r("z", "y")))))
}

/// `E y. R(x,y)`
pub fn seriality() -> Fo {
    Fo::exists(t("y"), r("x", "y"))
}

/// The properties by name.
pub fn all() -> Vec<(&'static str, Fo)> {
    vec![
        ("reflexivity", reflexivity()),
        ("transitivity", transitivity()),
        ("symmetry", symmetry()),
        ("density", density()),
        ("seriality", seriality()),
    ]
}

pub fn by_name(name: &str) -> Option<Fo> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f)
}
