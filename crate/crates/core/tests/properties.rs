mod common;

use common::*;
use ivqrof::measure::{chain_weights, reverse_chain_weights, scalar_choquet};
use ivqrof::pipeline::AttributeSpec;
use ivqrof::problem_file::ProblemFile;
use ivqrof::{choquet, parse_problem, DecisionProblem, QSetting};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const EPS: f64 = 1e-12;

fn close(a: &ivqrof::IvqRofn, b: &ivqrof::IvqRofn) -> bool {
    max_diff(a, b) <= EPS
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn operations_stay_valid((a, q) in arb_value(), seed in any::<u64>(), lambda in 0.0..5.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = value(&mut rng, q);
        for r in [
            a.oplus(&b, q).unwrap(),
            a.otimes(&b, q).unwrap(),
            a.scalar_mul(lambda, q).unwrap(),
            a.power(lambda, q).unwrap(),
            a.complement(),
        ] {
            prop_assert!(r.is_valid(q), "{r} at q = {q}");
            prop_assert!(r.t().lo() <= r.t().hi() && r.f().lo() <= r.f().hi());
        }
    }

    #[test]
    fn complement_swaps_sum_and_product((a, q) in arb_value(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = value(&mut rng, q);
        let lhs = a.oplus(&b, q).unwrap().complement();
        let rhs = a.complement().otimes(&b.complement(), q).unwrap();
        prop_assert!(close(&lhs, &rhs));
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn sum_is_commutative_and_associative((a, q) in arb_value(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = value(&mut rng, q);
        let c = value(&mut rng, q);
        prop_assert!(close(&a.oplus(&b, q).unwrap(), &b.oplus(&a, q).unwrap()));
        let left = a.oplus(&b, q).unwrap().oplus(&c, q).unwrap();
        let right = a.oplus(&b.oplus(&c, q).unwrap(), q).unwrap();
        prop_assert!(close(&left, &right));
    }

    #[test]
    fn scalar_laws((a, q) in arb_value(), l in 0.0..3.0f64, m in 0.0..3.0f64) {
        let nested = a.scalar_mul(m, q).unwrap().scalar_mul(l, q).unwrap();
        prop_assert!(close(&nested, &a.scalar_mul(l * m, q).unwrap()));
        let split = a.scalar_mul(l, q).unwrap().oplus(&a.scalar_mul(m, q).unwrap(), q).unwrap();
        prop_assert!(close(&split, &a.scalar_mul(l + m, q).unwrap()));
        let powers = a.power(m, q).unwrap().power(l, q).unwrap();
        prop_assert!(close(&powers, &a.power(l * m, q).unwrap()));
        prop_assert!(close(&a.scalar_mul(1.0, q).unwrap(), &a));
    }

    #[test]
    fn score_and_accuracy_bounds((a, q) in arb_value()) {
        let s = a.score(q);
        let h = a.accuracy(q);
        prop_assert!((-1.0..=1.0).contains(&s));
        prop_assert!((0.0..=1.0).contains(&h));
        prop_assert!(s <= h + EPS);
    }

    #[test]
    fn comparison_is_a_total_preorder(seed in any::<u64>(), q in arb_rung()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs = values(&mut rng, 3, q);
        for a in &xs {
            prop_assert_eq!(a.compare(a, q), Ordering::Equal);
            for b in &xs {
                prop_assert_eq!(a.compare(b, q), b.compare(a, q).reverse());
                for c in &xs {
                    if a.compare(b, q).is_ge() && b.compare(c, q).is_ge() {
                        prop_assert!(a.compare(c, q).is_ge());
                    }
                }
            }
        }
    }

    #[test]
    fn chain_weights_are_a_distribution(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = capacity(&mut rng, n);
        let sigma = permutation(&mut rng, n);
        for w in [chain_weights(&m, &sigma).unwrap(), reverse_chain_weights(&m, &sigma).unwrap()] {
            prop_assert!(w.iter().all(|&x| x >= 0.0));
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() <= EPS);
        }
        // suffix chain of σ is the prefix chain of reversed σ, read backwards
        let mut rev = chain_weights(&m, &sigma.reversed()).unwrap();
        rev.reverse();
        let suffix = reverse_chain_weights(&m, &sigma).unwrap();
        for (x, y) in rev.iter().zip(&suffix) {
            prop_assert!((x - y).abs() <= EPS);
        }
    }

    #[test]
    fn generated_capacities_are_monotone(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = capacity(&mut rng, n);
        let full = ivqrof::Subset::full(n);
        prop_assert_eq!(m.value(ivqrof::Subset::EMPTY).unwrap(), 0.0);
        prop_assert_eq!(m.value(full).unwrap(), 1.0);
        for bits in 0..(1u32 << n) {
            let s = ivqrof::Subset::from_bits(bits);
            for i in 0..n {
                let t = s.insert(i);
                prop_assert!(m.value(s).unwrap() <= m.value(t).unwrap());
            }
        }
    }

    #[test]
    fn relabel_then_inverse_is_identity(n in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = capacity(&mut rng, n);
        let pi = permutation(&mut rng, n);
        let mut inverse = vec![0; n];
        for (i, &j) in pi.as_slice().iter().enumerate() {
            inverse[j] = i;
        }
        let inverse = ivqrof::Permutation::new(inverse).unwrap();
        prop_assert_eq!(m.relabel(&pi).unwrap().relabel(&inverse).unwrap(), m);
    }

    #[test]
    fn scalar_choquet_idempotent_and_additive(n in 1usize..=6, seed in any::<u64>(), c in 0.0..10.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = capacity(&mut rng, n);
        prop_assert!((scalar_choquet(&vec![c; n], &m).unwrap() - c).abs() <= EPS * (1.0 + c));
        let w = weights(&mut rng, n);
        let a = ivqrof::FuzzyMeasure::additive(&w).unwrap();
        let f: Vec<f64> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0.0..10.0)).collect();
        let dot: f64 = f.iter().zip(&w).map(|(x, y)| x * y).sum();
        prop_assert!((scalar_choquet(&f, &a).unwrap() - dot).abs() <= 1e-10);
    }

    #[test]
    fn ca_and_cg_are_complement_duals((items, m, q) in arb_instance()) {
        let comps: Vec<_> = items.iter().map(|a| a.complement()).collect();
        let avg = choquet::choquet_average_with(
            &comps,
            &m,
            &choquet::sort_desc(&items, q).unwrap(),
            q,
        )
        .unwrap();
        let geo = choquet::choquet_geometric(&items, &m, q).unwrap();
        prop_assert!(close(&geo, &avg.complement()));
    }

    #[test]
    fn problem_round_trips(seed in any::<u64>(), experts in 1usize..=3, alts in 1usize..=4, attrs in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rung(rand::Rng::gen_range(&mut rng, 1..=4));
        let alternatives: Vec<String> = (1..=alts).map(|i| format!("x{i}")).collect();
        let attributes: Vec<AttributeSpec> = (1..=attrs)
            .map(|j| if j % 2 == 0 { AttributeSpec::cost(format!("C{j}")) } else { AttributeSpec::benefit(format!("C{j}")) })
            .collect();
        let expert_names: Vec<String> = (1..=experts).map(|k| format!("e{k}")).collect();
        let matrices = (0..experts)
            .map(|_| (0..alts).map(|_| values(&mut rng, attrs, q)).collect())
            .collect();
        let p = DecisionProblem::new(
            alternatives,
            attributes,
            expert_names,
            matrices,
            capacity(&mut rng, attrs),
            capacity(&mut rng, experts),
            QSetting::Fixed(q),
        )
        .unwrap();
        let file = ProblemFile::from_problem(&p);
        prop_assert_eq!(&parse_problem(&file.to_toml().unwrap()).unwrap(), &p);
        prop_assert_eq!(&parse_problem(&file.to_json().unwrap()).unwrap(), &p);
    }
}
