//! Randomized structural properties of the exponent arithmetic, norms and
//! partial-multiplication relations.

use lpq::exponent::{Exponent, Rat};
use lpq::form::extremal_weight;
use lpq::partialmul::{gamma1_check, gamma2_check};
use lpq::space::{
    DiscreteFunction, DiscreteSpace, Function, Support, SymbolicDomain, SymbolicFunction,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn exponent_strategy() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        8 => (1i64..=12, 1i64..=6).prop_map(|(extra, d)| {
            // p = 1 + extra/d ∈ (1, 13]
            Exponent::ratio(d + extra, d).unwrap()
        }),
        1 => Just(Exponent::ONE),
        1 => Just(Exponent::Infinity),
    ]
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

fn discrete_pair() -> impl Strategy<Value = (DiscreteFunction, DiscreteFunction)> {
    (2usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(0.05f64..3.0, n),
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n),
            proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n),
        )
            .prop_map(|(mu, fv, gv)| {
                let space = DiscreteSpace::new(mu).unwrap();
                let f = DiscreteFunction::new(
                    space.clone(),
                    fv.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
                )
                .unwrap();
                let g = DiscreteFunction::new(
                    space,
                    gv.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
                )
                .unwrap();
                (f, g)
            })
    })
}

fn symbolic_strategy(domain: SymbolicDomain) -> impl Strategy<Value = SymbolicFunction> {
    let support = match domain {
        SymbolicDomain::UnitInterval => prop_oneof![Just(Support::NearZero)].boxed(),
        SymbolicDomain::HalfLine => {
            prop_oneof![Just(Support::NearZero), Just(Support::Tail)].boxed()
        }
    };
    proptest::collection::vec(((1i64..=4, 1i64..=3), small_rat(), support), 1..=2).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .map(|((cn, cd), a, s)| lpq::PowerTerm {
                    coeff: Rat::new(cn, cd),
                    exponent: a,
                    support: s,
                })
                .collect();
            SymbolicFunction::new(domain, terms).unwrap()
        },
    )
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in exponent_strategy()) {
        let q = p.conjugate();
        prop_assert_eq!(q.conjugate(), p);
        // 1/p + 1/q = 1
        prop_assert_eq!(p.recip() + q.recip(), Rat::from_integer(1));
    }

    #[test]
    fn holder_solve_inverts_holder_combine(p in exponent_strategy(), q in exponent_strategy()) {
        if let Ok(r) = Exponent::holder_combine(&p, &q) {
            let back = Exponent::holder_solve(&p, &r).unwrap();
            prop_assert_eq!(back, q);
        }
    }

    #[test]
    fn holder_inequality_on_discrete_functions(
        (f, g) in discrete_pair(),
        p in exponent_strategy(),
        q in exponent_strategy(),
    ) {
        if let Ok(r) = Exponent::holder_combine(&p, &q) {
            let lhs = f.multiply(&g).unwrap().norm(&r);
            let rhs = f.norm(&p) * g.norm(&q);
            prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12, "{lhs} > {rhs}");
        }
    }

    #[test]
    fn involution_is_a_p_isometry((f, _) in discrete_pair(), p in exponent_strategy()) {
        let a = f.norm(&p);
        let b = f.involution().norm(&p);
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn norms_are_monotone_on_the_unit_interval(
        f in symbolic_strategy(SymbolicDomain::UnitInterval),
        p in exponent_strategy(),
        q in exponent_strategy(),
    ) {
        // probability measure: p ≤ q forces ‖f‖_p ≤ ‖f‖_q
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        let nl = f.norm(&lo);
        let nh = f.norm(&hi);
        if nh.is_finite() {
            prop_assert!(nl <= nh * (1.0 + 1e-6), "‖f‖_{lo} = {nl} > ‖f‖_{hi} = {nh}");
        }
    }

    #[test]
    fn membership_matches_norm_finiteness(
        f in symbolic_strategy(SymbolicDomain::HalfLine),
        p in exponent_strategy(),
    ) {
        let n = f.norm(&p);
        prop_assert_eq!(f.in_lp(&p), n.is_finite(), "norm {} vs membership", n);
    }

    #[test]
    fn exponent_set_decides_membership(
        f in symbolic_strategy(SymbolicDomain::HalfLine),
        p in exponent_strategy(),
    ) {
        prop_assert_eq!(f.exponent_set().contains(p), f.in_lp(&p));
    }

    #[test]
    fn gamma2_is_contained_in_gamma1(
        f in symbolic_strategy(SymbolicDomain::HalfLine),
        g in symbolic_strategy(SymbolicDomain::HalfLine),
        p in exponent_strategy(),
    ) {
        if let Exponent::Finite(_) = p {
            let (g1, _) = gamma1_check(&f, &g, &p).unwrap();
            let (g2, witness) = gamma2_check(&f, &g, &p).unwrap();
            if g2 {
                prop_assert!(g1, "Γ₂ pair escaped Γ₁");
                let (r, s) = witness.unwrap();
                prop_assert!(f.in_lp(&r) && g.in_lp(&s));
                prop_assert_eq!(Exponent::holder_combine(&r, &s).unwrap(), p);
            }
        }
    }

    #[test]
    fn extremal_weight_attains_the_p_norm((f, _) in discrete_pair(), pi in 2i64..=5) {
        let p = Exponent::from_int(pi).unwrap();
        if f.norm(&p) == 0.0 {
            return Ok(());
        }
        let w = extremal_weight(&f, &p).unwrap();
        let fun = Function::Discrete(f.clone());
        let diag = w.evaluate(&fun, &fun).unwrap().finite_value().unwrap();
        let expect = f.norm(&p).powi(2);
        prop_assert!((diag.re - expect).abs() <= 1e-9 * (1.0 + expect));
        prop_assert!(diag.im.abs() <= 1e-12 * (1.0 + expect));
    }
}
