use mvcorr::alba::{run_alba, Status, I0};
use mvcorr::fol::Term;
use mvcorr::gentree::{classify, is_inductive};
use mvcorr::heyting::{Algebra, Elem};
use mvcorr::oracle::{correspondence_oracle, fo_agreement, OracleConfig};
use mvcorr::svb::svb_correspondent;
use mvcorr::syntax::{parse_formula, Const, Formula, Inequality, ModalInput};
use proptest::prelude::*;

fn p5() -> Algebra {
    Algebra::builtin("paper-P").unwrap()
}

fn arb_basic() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop_oneof![Just("p"), Just("q")].prop_map(Formula::var),
        1 => (0u16..5).prop_map(|e| {
            let alg = p5();
            Formula::Const(Const { elem: Elem(e), name: alg.name_of(Elem(e)).into() })
        }),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.clone().prop_map(Formula::boxed),
            inner.prop_map(Formula::diamond),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn inductive_inputs_reduce_to_correspondents(l in arb_basic(), r in arb_basic(), a in 0u16..5) {
        let ineq = Inequality::new(l, r);
        prop_assume!(is_inductive(&ineq).is_some());
        let alg = p5();
        let res = run_alba(&ModalInput::Inequality(ineq.clone()), Elem(a)).unwrap();
        prop_assert_eq!(res.status, Status::Success, "{}", ineq);
        let fo = res.fo().unwrap();
        let cfg = OracleConfig::exhaustive(&[1, 2]);
        let v = correspondence_oracle(&alg, &ineq, Elem(a), &fo, &Term::Nom(I0.into()), Elem::TOP, &cfg).unwrap();
        prop_assert!(v.is_pass(), "{}: {:?}", ineq, v);
    }

    #[test]
    fn sahlqvist_implies_inductive(l in arb_basic(), r in arb_basic()) {
        let c = classify(&Inequality::new(l, r));
        prop_assert!(c.sahlqvist.is_none() || c.inductive.is_some());
    }
}

#[test]
fn alba_and_svb_agree_on_classical_formulas() {
    let alg = p5();
    let cfg = OracleConfig::exhaustive(&[1, 2]);
    let (i0, x) = (Term::Nom(I0.into()), Term::var("x"));
    for s in ["[]p -> p", "[]p -> [][]p", "p -> []<>p", "<>p -> <><>p", "[](p -> <>p)", "(p -> <>p) \\/ (q -> <><>q)"] {
        let f = parse_formula(s, &alg).unwrap();
        let svb = svb_correspondent(&f).unwrap();
        for a in alg.elements() {
            let r = run_alba(&ModalInput::Formula(f.clone()), a).unwrap();
            let (_, d) = fo_agreement(&alg, (&r.fo().unwrap(), &i0, Elem::TOP), (&svb, &x, a), &cfg).unwrap();
            assert_eq!(d, None, "{s} at {}", alg.name_of(a));
        }
    }
}
