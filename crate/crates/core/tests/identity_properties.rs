use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use side_diameter::identity::catalog_entry;
use side_diameter::{
    generate, identity_catalog, nth, proportion_check, proportion_subtract, trace_elegant,
    verify_identity, Justification, Poly, PolyRing, Rat,
};

const NVARS: usize = 20;

fn ring20() -> PolyRing {
    let names: Vec<String> = (0..NVARS).map(|i| format!("x{i}")).collect();
    PolyRing::new(&names)
}

/// Sparse terms: each term touches at most three variables.
fn poly_terms() -> impl Strategy<Value = Vec<(i64, Vec<(usize, u32)>)>> {
    prop::collection::vec(
        (
            -50i64..=50,
            prop::collection::vec((0..NVARS, 1u32..=2), 0..=3),
        ),
        0..6,
    )
}

fn build(ring: &PolyRing, terms: &[(i64, Vec<(usize, u32)>)]) -> Poly {
    ring.from_terms(terms.iter().map(|(c, vars)| {
        let mut exps = vec![0u32; NVARS];
        for (v, e) in vars {
            exps[*v] += e;
        }
        (BigInt::from(*c), exps)
    }))
}

fn assignment() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..=1000, NVARS)
}

fn as_map(ring: &PolyRing, values: &[i64]) -> HashMap<String, BigInt> {
    ring.vars()
        .iter()
        .cloned()
        .zip(values.iter().map(|v| BigInt::from(*v)))
        .collect()
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly_terms(), q in poly_terms(), s in assignment()) {
        let ring = ring20();
        let (p, q) = (build(&ring, &p), build(&ring, &q));
        let sigma = as_map(&ring, &s);
        let ev = |x: &Poly| x.eval(&sigma).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), ev(&p) * ev(&q));
        prop_assert_eq!(ev(&(&p + &q)), ev(&p) + ev(&q));
        prop_assert_eq!(ev(&(&p - &q)), ev(&p) - ev(&q));
        prop_assert_eq!(ev(&-&p), -ev(&p));
    }

    #[test]
    fn symbolic_pass_is_never_contradicted_by_sampling(
        p in poly_terms(),
        r in poly_terms(),
        samples in prop::collection::vec(assignment(), 100),
    ) {
        let ring = ring20();
        let (p, r) = (build(&ring, &p), build(&ring, &r));
        // q is p rearranged: (p + r)·(r + 1) − r·r − r − p·r
        let one = ring.constant(1);
        let q = &(&(&p + &r) * &(&r + &one)) - &(&(&(&r * &r) + &r) + &(&p * &r));
        prop_assert!(verify_identity(&p, &q).unwrap());
        for s in &samples {
            let sigma = as_map(&ring, s);
            prop_assert_eq!(p.eval(&sigma).unwrap(), q.eval(&sigma).unwrap());
        }
    }

    #[test]
    fn catalog_identities_hold_at_random_points(a in -10_000i64..10_000, d in -10_000i64..10_000) {
        for id in identity_catalog() {
            let vars = id.lhs.vars().to_vec();
            let sigma: HashMap<String, BigInt> =
                vars.into_iter().zip([BigInt::from(a), BigInt::from(d)]).collect();
            prop_assert_eq!(id.lhs.eval(&sigma).unwrap(), id.rhs.eval(&sigma).unwrap());
        }
    }

    #[test]
    fn proportion_random_large(
        x in any::<i64>().prop_filter("nonzero", |v| *v != 0),
        y in any::<i64>().prop_filter("nonzero", |v| *v != 0),
        num in 1i64..1000,
        den in 1i64..1000,
    ) {
        prop_assume!(x.checked_add(y).is_some_and(|s| s != 0));
        // Premises with ratio num/den: pick v and u that satisfy them exactly.
        let (x, y) = (BigInt::from(x) * den, BigInt::from(y) * den);
        let r = Rat::new(num, den).unwrap();
        let v = &y / den * num;
        let u = (&x + &y) / den * num - &v;
        let c = proportion_check(&u, &v, &x, &y, &r).unwrap();
        prop_assert!(c.premises_hold);
        prop_assert!(c.conclusion_holds);
    }
}

#[test]
fn single_coefficient_mutations_fail() {
    for id in identity_catalog() {
        let ring = id.lhs.ring().clone();
        let mut monomials: Vec<_> = id
            .lhs
            .terms()
            .chain(id.rhs.terms())
            .map(|(m, _)| m.clone())
            .collect();
        monomials.push(side_diameter::Monomial::one(ring.vars().len()));
        for m in monomials {
            for delta in [-2i64, -1, 1, 2] {
                let bump = ring.from_terms([(BigInt::from(delta), m.exponents().to_vec())]);
                let lhs = &id.lhs + &bump;
                assert!(
                    !verify_identity(&lhs, &id.rhs).unwrap(),
                    "{} lhs {m:?}",
                    id.name
                );
                let rhs = &id.rhs + &bump;
                assert!(
                    !verify_identity(&id.lhs, &rhs).unwrap(),
                    "{} rhs {m:?}",
                    id.name
                );
            }
        }
    }
}

#[test]
fn trace_conclusion_agrees_with_elegant_core() {
    let core = catalog_entry("elegant_core").unwrap();
    for p in generate(100).unwrap() {
        let trace = trace_elegant(&p);
        assert!(trace.all_steps_hold());
        let order: Vec<_> = trace.steps.iter().map(|s| s.justification).collect();
        assert_eq!(
            order,
            [
                Justification::EuclidII10,
                Justification::HypothesisSubstitution,
                Justification::V19Subtraction,
                Justification::Conclusion
            ]
        );
        let (a, d) = (p.side().clone(), p.diameter().clone());
        let e = p.sign().to_int();
        let a_d = &a + &d;
        // (2a+d)² − 2(a+d)² = −e
        let gap = &trace.conclusion().lhs_value - (&a_d * &a_d) * 2;
        assert_eq!(gap, -&e);
        let at_p: HashMap<String, BigInt> =
            [("a".to_owned(), a.clone()), ("d".to_owned(), d.clone())].into();
        assert_eq!(core.lhs.eval(&at_p).unwrap(), -&e);
        // Each step's expression evaluates to its recorded value.
        for s in &trace.steps {
            assert_eq!(s.lhs.eval(), s.lhs_value);
            assert_eq!(s.rhs.eval(), s.rhs_value);
        }
        // The conclusion is the next pair's relation.
        let next = p.step();
        assert_eq!(
            trace.conclusion().lhs_value,
            next.diameter() * next.diameter()
        );
    }
}

#[test]
fn proportion_exhaustive_small_values() {
    let two = Rat::from_int(2);
    let mut checked = 0;
    for x in -50i64..=50 {
        for y in -50i64..=50 {
            if x == 0 || y == 0 || x + y == 0 {
                continue;
            }
            for v in -50i64..=50 {
                for u in -50i64..=50 {
                    let premises = u + v == 2 * (x + y) && v == 2 * y;
                    if !premises {
                        continue;
                    }
                    let (u, v, x, y) = (u.into(), v.into(), x.into(), y.into());
                    let c = proportion_check(&u, &v, &x, &y, &two).unwrap();
                    assert!(c.premises_hold && c.conclusion_holds);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn proportion_from_random_pairs() {
    // u = (2a+d)² + e, v = 2a², x = (a+d)², y = a², ratio 2.
    let two = Rat::from_int(2);
    for n in (1..=200).step_by(2).chain([2, 4, 100, 150]) {
        let p = nth(n).unwrap();
        let (a, d) = p.clone().into_parts();
        let s = &a * 2 + &d;
        let u = &s * &s + p.sign().to_int();
        let v = (&a * &a) * 2;
        let x = (&a + &d) * (&a + &d);
        let y = &a * &a;
        let c = proportion_check(&u, &v, &x, &y, &two).unwrap();
        assert!(c.premises_hold && c.conclusion_holds, "n = {n}");
        assert!(proportion_subtract(&u, &v, &x, &y, &two).unwrap());
    }
}
