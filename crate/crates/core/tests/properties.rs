mod common;

use common::{canon, raw, scalar, table, vector};
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;
use symcomp::expr::{Expr, Sort};
use symcomp::oracle::{check_identity, eval, eval_raw, trial_rng, Assignment};
use symcomp::poly::{coeff, coeff_matrix, subst};
use symcomp::rewrite::{apply_fixpoint, apply_once, builtin_ruleset, DEFAULT_CAP};
use symcomp::text::{parse_expr, print_expr, print_raw};

/// The canonical zero prints as `0` whatever its sort.
fn same(a: &Expr, b: &Expr) -> bool {
    a == b || (a.is_zero() && b.is_zero())
}

fn var(name: &str) -> symcomp::expr::Var {
    table().get(name).unwrap().0.clone()
}

fn assignment(seed: u64) -> Assignment {
    let t = table();
    let syms: Vec<(String, Sort)> = t.iter().map(|(v, s)| (v.name().to_string(), s)).collect();
    Assignment::random(syms.iter().map(|(n, s)| (n.as_str(), *s)), &mut trial_rng(seed, 0))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: Some(Box::new(FileFailurePersistence::Direct(
            "tests/properties.proptest-regressions",
        ))),
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn raw_print_parse_round_trip(e in raw(3)) {
        let text = print_raw(&e);
        prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn canonical_print_parse_round_trip(e in raw(2)) {
        let c = canon(&e);
        let text = print_expr(&c);
        prop_assert!(same(&canon(&parse_expr(&text).unwrap()), &c), "{}", text);
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn coeff_matrix_reconstructs(e in raw(3)) {
        let c = canon(&e);
        let m = coeff_matrix(&c, [var("alpha"), var("beta")]);
        prop_assert!(same(&m.reconstruct(), &c));
    }

    #[test]
    fn canonicalization_preserves_values(e in raw(3), seed in any::<u64>()) {
        let a = assignment(seed);
        let direct = eval_raw(&e, &table(), &a).unwrap();
        prop_assert_eq!(eval(&canon(&e), &a).unwrap(), direct);
    }

    #[test]
    fn identity_substitution(e in raw(3)) {
        let c = canon(&e);
        let same: Vec<_> = ["alpha", "x"].iter().map(|n| (var(n), canon(&parse_expr(n).unwrap()))).collect();
        prop_assert_eq!(subst(&c, &same).unwrap(), c);
    }

    #[test]
    fn zero_substitution_is_constant_coefficient(e in raw(3)) {
        let c = canon(&e);
        let zero = canon(&parse_expr("0").unwrap());
        prop_assert_eq!(subst(&c, &[(var("alpha"), zero)]).unwrap(), coeff(&c, &[(var("alpha"), 0)]));
    }

    #[test]
    fn substitution_commutes_with_evaluation(e in raw(2), v in vector(1), seed in any::<u64>()) {
        let c = canon(&e);
        let image = canon(&v);
        let a = assignment(seed);
        let mut b = a.clone();
        let value = eval(&image, &a).unwrap();
        match value {
            symcomp::expr::Value::Vector(p) => { b.vectors.insert("x".into(), p); }
            symcomp::expr::Value::Scalar(_) => unreachable!(),
        }
        prop_assert_eq!(eval(&subst(&c, &[(var("x"), image)]).unwrap(), &a).unwrap(), eval(&c, &b).unwrap());
    }

    #[test]
    fn coefficients_partition_terms(e in scalar(3)) {
        let c = canon(&e);
        let len = |x: &Expr| match x {
            Expr::Scalar(s) => s.len(),
            Expr::Vector(v) => v.len(),
        };
        let m = coeff_matrix(&c, [var("alpha"), var("beta")]);
        prop_assert_eq!(m.rows.iter().flatten().map(len).sum::<usize>(), len(&c));
    }

    #[test]
    fn fixpoint_is_idempotent(e in raw(2)) {
        let c = canon(&e);
        for name in ["rules1", "assleft", "assocb", "move1", "move3", "bsym"] {
            let rs = builtin_ruleset(name).unwrap();
            let once = apply_fixpoint(&c, &rs, DEFAULT_CAP).unwrap();
            prop_assert_eq!(&apply_fixpoint(&once, &rs, DEFAULT_CAP).unwrap(), &once, "{}", name);
            prop_assert_eq!(apply_once(&once, &rs).unwrap(), once, "{}", name);
        }
    }

    #[test]
    fn rewriting_preserves_values(e in raw(2), seed in 0u64..1000) {
        let c = canon(&e);
        for name in ["rules1", "rules2", "assleft", "assocb", "move1", "move3", "bsym"] {
            let rs = builtin_ruleset(name).unwrap();
            let out = apply_once(&c, &rs).unwrap();
            let d = out.sub(&c).unwrap();
            let r = check_identity(&d, 3, seed);
            prop_assert!(r.pass, "{}: {}", name, r);
        }
    }

    #[test]
    fn vectors_stay_vectors(e in vector(3)) {
        prop_assert_eq!(canon(&e).sort(), Sort::Vector);
    }
}
