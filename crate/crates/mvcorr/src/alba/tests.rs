use super::soundness::check_result;
use super::*;
use crate::fol::{library, FoStyle};
use crate::oracle::{correspondence_oracle, fo_agreement, OracleConfig};
use crate::syntax::parse_input;

fn p5() -> Algebra {
    Algebra::builtin("paper-P").unwrap()
}

fn run(alg: &Algebra, s: &str, a: Elem) -> AlbaResult {
    run_alba(&parse_input(s, alg).unwrap(), a).unwrap()
}

fn strings(sys: &[Inequality]) -> Vec<String> {
    sys.iter().map(|i| i.to_string()).collect()
}

fn i0() -> Term {
    Term::Nom(I0.into())
}

#[test]
fn reflexivity_reduces_to_two_inequalities() {
    let alg = p5();
    let input = parse_input("p -> <>p", &alg).unwrap();
    for a in alg.elements() {
        let r = run_alba(&input, a).unwrap();
        assert_eq!(r.status, Status::Success);
        assert_eq!(r.branches.len(), 1);
        assert_eq!(strings(&r.branches[0].system), ["#i0 <= @a", "<>#i0 <= $m0"]);
        let fo = r.fo().unwrap();
        let cfg = OracleConfig::exhaustive(&[1, 2]);
        assert!(correspondence_oracle(&alg, &input.as_inequality(), a, &fo, &i0(), Elem::TOP, &cfg).unwrap().is_pass());
        let x = Term::var("x");
        let agree = fo_agreement(&alg, (&fo, &i0(), Elem::TOP), (&library::reflexivity(), &x, a), &cfg).unwrap();
        assert_eq!(agree.1, None);
        let shown = r.display_fo().unwrap();
        assert_eq!(FoStyle::Display.render(&shown), "a <= R(x,x)");
        assert_eq!(FoStyle::Ascii.render(&shown), "@a =< R(x,x)");
    }
}

#[test]
fn frame_conditions_of_the_classical_suite() {
    let alg = p5();
    let cfg = OracleConfig::exhaustive(&[1, 2]);
    let x = Term::var("x");
    let suite = [
        ("p -> <>p", library::reflexivity()),
        ("<><>p -> <>p", library::transitivity()),
        ("p -> []<>p", library::symmetry()),
        ("<>p -> <><>p", library::density()),
        ("[]p -> <>p", library::seriality()),
    ];
    for (s, cond) in suite {
        for a in alg.elements() {
            let r = run(&alg, s, a);
            assert_eq!(r.status, Status::Success, "{s}");
            let fo = r.fo().unwrap();
            let agree = fo_agreement(&alg, (&fo, &i0(), Elem::TOP), (&cond, &x, a), &cfg).unwrap();
            assert_eq!(agree.1, None, "{s} at {}", alg.name_of(a));
        }
    }
}

#[test]
fn pinned_inequality_survives_every_branch() {
    let alg = p5();
    let r = run(&alg, "<>p \\/ <>q -> <>(p /\\ q)", alg.elem("beta").unwrap());
    assert!(r.branches.len() > 1);
    for b in &r.branches {
        for s in &b.trace[1..] {
            assert!(s.after.contains(&r.pinned), "{}", s.rule);
        }
    }
}

#[test]
fn stuck_system_is_a_failure() {
    let alg = p5();
    let r = run(&alg, "[](p \\/ q) <= <>(p /\\ q)", Elem::TOP);
    assert_eq!(r.status, Status::Failure);
    assert!(r.fo().is_none());
    assert!(r.quasi.is_empty());
    assert!(r.branches[0].attempts > 1);
}

#[test]
fn inverse_modalities_are_rejected() {
    let alg = p5();
    let err = run_alba(&parse_input("<i>p -> p", &alg).unwrap(), Elem::TOP).unwrap_err();
    assert!(matches!(err, AlbaError::NotBasic(_)));
    assert!(matches!(run_alba_named(&alg, &parse_input("p", &alg).unwrap(), "delta"), Err(AlbaError::UnknownValue(_))));
}

#[test]
fn inductive_non_sahlqvist_input_succeeds() {
    let alg = p5();
    let s = "(p -> @0) -> []q <= <>[]q \\/ []p";
    let input = parse_input(s, &alg).unwrap();
    let cfg = OracleConfig::exhaustive(&[1, 2]);
    for a in alg.elements() {
        let r = run_alba(&input, a).unwrap();
        assert_eq!(r.status, Status::Success);
        let fo = r.fo().unwrap();
        assert!(correspondence_oracle(&alg, &input.as_inequality(), a, &fo, &i0(), Elem::TOP, &cfg).unwrap().is_pass());
    }
}

#[test]
fn every_step_is_sound_for_reflexivity() {
    let alg = p5();
    let cfg = OracleConfig::exhaustive(&[1, 2]);
    for a in alg.elements() {
        let r = run(&alg, "p -> <>p", a);
        let rep = check_result(&alg, &r, &cfg, 2_000).unwrap();
        assert!(rep.is_sound(), "{:?}", rep.failure);
        assert_eq!(rep.steps, r.preprocessing.len() + r.branches[0].trace.len());
    }
}

#[test]
fn display_is_equivalent_to_the_raw_correspondent() {
    let alg = p5();
    let cfg = OracleConfig::exhaustive(&[1, 2]);
    let x = Term::var("x");
    let corpus = [
        "<><>p -> <>p",
        "p -> []<>p",
        "[]p -> <>p",
        "<>p -> <><>p",
        "[]p -> [][]p",
        "<>[]p -> []<>p",
        "[]p -> p",
        "(p -> @0) -> []q <= <>[]q \\/ []p",
        "[]([]p -> q) \\/ []([]q -> p)",
    ];
    for s in corpus {
        let r = run(&alg, s, alg.elem("alpha").unwrap());
        let (raw, shown) = (r.fo().unwrap(), r.display_fo().unwrap());
        let agree = fo_agreement(&alg, (&raw, &i0(), Elem::TOP), (&shown, &x, Elem::TOP), &cfg).unwrap();
        assert_eq!(agree.1, None, "{s}: {}", FoStyle::Ascii.render(&shown));
    }
}

#[test]
fn classical_suite_displays_as_frame_conditions() {
    let alg = p5();
    let beta = alg.elem("beta").unwrap();
    let cases = [
        ("<><>p -> <>p", "a <= A z1. A z2. (R(x,z1) & R(z1,z2) -> R(x,z2))"),
        ("p -> []<>p", "a <= A y1. (R(x,y1) -> R(y1,x))"),
        ("[]p -> <>p", "a <= E y1. R(x,y1)"),
        ("[]p -> p", "a <= R(x,x)"),
    ];
    for (s, shown) in cases {
        assert_eq!(FoStyle::Display.render(&run(&alg, s, beta).display_fo().unwrap()), shown);
    }
}
