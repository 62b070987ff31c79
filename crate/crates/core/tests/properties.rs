mod common;

use proptest::prelude::*;

use common::{any as element, projective_line, random_corr, random_rational, rng};
use corrdyn::corr::Direction;
use corrdyn::expr::{parse_bivariate, parse_rational};
use corrdyn::field::{FiniteField, Ring};
use corrdyn::graph::{complete_set_search, Budgets};
use corrdyn::job::{parse_job, CommandName, CorrSpec, Job, Param};
use corrdyn::oper::{td_apply, td_power_sums};
use corrdyn::RationalFunction;

fn f7() -> FiniteField {
    FiniteField::prime(7).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn td_apply_is_linear(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let c = random_corr(&mut r, &f, 2, 2);
        let (g, h) = (random_rational(&mut r, &f, 3, 2), random_rational(&mut r, &f, 3, 2));
        let (a, b) = (element(&mut r, &f), element(&mut r, &f));
        let lhs = td_apply(&c, &g.scale(&f, &a).add(&f, &h.scale(&f, &b))).unwrap();
        let rhs = td_apply(&c, &g).unwrap().scale(&f, &a).add(&f, &td_apply(&c, &h).unwrap().scale(&f, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn td_apply_is_multiplicative_on_graphs(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let m = random_rational(&mut r, &f, 3, 2);
        prop_assume!(m.degree() > 0);
        let c = corrdyn::corr::Correspondence::from_map(&f, &m).unwrap().transpose();
        let (g, h) = (random_rational(&mut r, &f, 2, 2), random_rational(&mut r, &f, 2, 2));
        let lhs = td_apply(&c, &g.mul(&f, &h)).unwrap();
        let rhs = td_apply(&c, &g).unwrap().mul(&f, &td_apply(&c, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_sums_match_monomials(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let c = random_corr(&mut r, &f, 2, 3);
        let sums = td_power_sums(&c, 4);
        let x = RationalFunction::x(&f);
        for (i, s) in sums.iter().enumerate() {
            prop_assert_eq!(s, &td_apply(&c, &x.pow(&f, i as u64)).unwrap());
        }
    }

    #[test]
    fn composition_matches_operators(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let inner = random_corr(&mut r, &f, 1, 2);
        let outer = random_corr(&mut r, &f, 2, 1);
        let comp = outer.compose(&inner).unwrap();
        let g = random_rational(&mut r, &f, 2, 1);
        let lhs = td_apply(&comp, &g).unwrap();
        let rhs = td_apply(&outer, &td_apply(&inner, &g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let (a, b) = inner.bidegree();
        let (c, d) = outer.bidegree();
        prop_assert_eq!(comp.bidegree(), (a * c, b * d));
    }

    #[test]
    fn transpose_is_an_involution(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let c = random_corr(&mut r, &f, 2, 3);
        let (a, b) = c.bidegree();
        prop_assert_eq!(c.transpose().bidegree(), (b, a));
        prop_assert_eq!(c.transpose().transpose().polynomial(), c.polynomial());
    }

    #[test]
    fn transpose_reverses_composition(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let inner = random_corr(&mut r, &f, 1, 2);
        let outer = random_corr(&mut r, &f, 2, 1);
        let lhs = outer.compose(&inner).unwrap().transpose();
        let rhs = inner.transpose().compose(&outer.transpose()).unwrap();
        prop_assert_eq!(lhs.polynomial(), rhs.polynomial());
    }

    #[test]
    fn sum_is_additive(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let c = random_corr(&mut r, &f, 1, 2);
        let d = random_corr(&mut r, &f, 2, 1);
        let g = random_rational(&mut r, &f, 2, 2);
        let s = c.sum(&d).unwrap();
        let (a, b) = c.bidegree();
        let (p, q) = d.bidegree();
        prop_assert_eq!(s.bidegree(), (a + p, b + q));
        prop_assert_eq!(
            td_apply(&s, &g).unwrap(),
            td_apply(&c, &g).unwrap().add(&f, &td_apply(&d, &g).unwrap())
        );
    }

    #[test]
    fn certified_sets_are_closed(seed in any::<u64>(), start in 0usize..8) {
        let f = f7();
        let mut r = rng(seed);
        let c = random_corr(&mut r, &f, 1, 2);
        let pt = projective_line(&f)[start].clone();
        let rep = complete_set_search(&c, &pt, Budgets { max_ext: 1, max_size: 64 });
        if rep.is_certified() {
            prop_assert!(rep.vertices.contains(&pt));
            for v in &rep.vertices {
                for dir in [Direction::Forward, Direction::Backward] {
                    let fib = c.fiber(dir, v);
                    prop_assert!(fib.residual.is_empty());
                    for (w, _) in &fib.points {
                        prop_assert!(rep.vertices.contains(w));
                    }
                }
            }
            for e in &rep.edges {
                prop_assert!(e.e1 >= 1 && e.e2 >= 1 && e.mult >= 1);
            }
        }
    }

    #[test]
    fn split_divisors_have_degree_zero(zeros in prop::collection::vec(0u64..7, 0..5), poles in prop::collection::vec(0u64..7, 0..5)) {
        let f = f7();
        let lin = |a: &u64| corrdyn::Poly::new(vec![f.neg(&corrdyn::Fq(*a)), f.one()]);
        let prod = |v: &[u64]| v.iter().fold(corrdyn::Poly::constant(f.one()), |acc, a| acc.mul(&f, &lin(a)));
        let g = RationalFunction::new(&f, prod(&zeros), prod(&poles)).unwrap();
        let total: i64 = projective_line(&f).iter().map(|p| g.ord_at(&f, p).unwrap()).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn rational_functions_print_and_parse(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let g = random_rational(&mut r, &f, 4, 3);
        let text = g.format(&f, "x");
        prop_assert_eq!(parse_rational(&f, &text).unwrap(), g);
    }

    #[test]
    fn bivariates_print_and_parse(seed in any::<u64>()) {
        let f = f7();
        let mut r = rng(seed);
        let p = random_corr(&mut r, &f, 2, 2).polynomial();
        prop_assert_eq!(parse_bivariate(&f, &p.format(&f)).unwrap(), p);
    }

    #[test]
    fn jobs_round_trip(
        k in 1i64..4,
        rng_seed in any::<u64>(),
        strict in any::<bool>(),
        a in 1u32..6,
    ) {
        let sets = Job::new("Fp:7", Some(CorrSpec::Map(format!("{a}*x^2"))), CommandName::CompleteSets)
            .with_param("seed", Param::Str("[1:1]".into()))
            .with_param("K", Param::Int(k));
        let sets = Job { rng: rng_seed, ..sets };
        prop_assert_eq!(parse_job(&sets.to_text()).unwrap(), sets);
        let classify = Job::new("Q", Some(CorrSpec::Poly(format!("y^2 - {a}*x"))), CommandName::Classify)
            .with_param("S", Param::Str("[0:1], [1:0]".into()))
            .with_param("strict", Param::Bool(strict));
        prop_assert_eq!(parse_job(&classify.to_text()).unwrap(), classify);
    }
}
