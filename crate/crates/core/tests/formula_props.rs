use bcn_entropy::formula::{parse_formula, satisfiable_bruteforce, Assignment, Formula};
use proptest::prelude::*;

const VARS: [&str; 10] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(Formula::Const),
        (0..VARS.len()).prop_map(|i| Formula::var(VARS[i])),
    ];
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negate),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.and(r)),
            (inner.clone(), inner).prop_map(|(l, r)| l.or(r)),
        ]
    })
}

/// Reference semantics, written independently of the library evaluator.
fn reference_eval(f: &Formula, value: &dyn Fn(&str) -> bool) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Var(name) => value(name),
        Formula::Not(x) => !reference_eval(x, value),
        Formula::And(l, r) => reference_eval(l, value) && reference_eval(r, value),
        Formula::Or(l, r) => reference_eval(l, value) || reference_eval(r, value),
    }
}

fn all_assignments(vars: &[String]) -> impl Iterator<Item = Assignment> + '_ {
    (0..1u32 << vars.len()).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), bits >> k & 1 == 1))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_equivalent(f in formula_strategy()) {
        let back = parse_formula(&f.to_string()).unwrap();
        // The printer keeps structure, so this is stronger than equivalence.
        prop_assert_eq!(&back, &f);
        let vars = f.variables();
        for a in all_assignments(&vars) {
            prop_assert_eq!(back.eval(&a).unwrap(), f.eval(&a).unwrap());
        }
    }

    #[test]
    fn eval_matches_truth_table(f in formula_strategy()) {
        let vars = f.variables();
        for a in all_assignments(&vars) {
            let expected = reference_eval(&f, &|name| a.get(name).unwrap());
            prop_assert_eq!(f.eval(&a).unwrap(), expected);
        }
    }

    #[test]
    fn bruteforce_sat_is_first_canonical_model(f in formula_strategy()) {
        let vars = f.variables();
        // Canonical order: assignment r sets variable k TRUE iff bit (len-1-k) of r is 0.
        let first = (0..1u32 << vars.len()).find(|&r| {
            reference_eval(&f, &|name| {
                let k = vars.iter().position(|v| v == name).unwrap();
                r >> (vars.len() - 1 - k) & 1 == 0
            })
        });
        let found = satisfiable_bruteforce(&f).unwrap();
        prop_assert_eq!(found.is_some(), first.is_some());
        if let (Some(a), Some(r)) = (found, first) {
            for (k, v) in vars.iter().enumerate() {
                prop_assert_eq!(a.get(v).unwrap(), r >> (vars.len() - 1 - k) & 1 == 0);
            }
        }
    }

    #[test]
    fn truth_table_formula_reproduces_table(table in proptest::collection::vec(any::<bool>(), 16)) {
        let names: Vec<String> = VARS[..4].iter().map(|s| s.to_string()).collect();
        let f = Formula::from_truth_table(&names, |r| table[r]);
        for (r, &expected) in table.iter().enumerate() {
            let a: Assignment = names
                .iter()
                .enumerate()
                .map(|(k, n)| (n.clone(), r >> (3 - k) & 1 == 0))
                .collect();
            prop_assert_eq!(f.eval(&a).unwrap(), expected);
        }
    }
}

#[test]
fn precedence_of_or_and_and() {
    let f = parse_formula("a | b & c").unwrap();
    assert_eq!(
        f,
        Formula::var("a").or(Formula::var("b").and(Formula::var("c")))
    );
}
