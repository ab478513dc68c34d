mod common;

use proptest::prelude::*;

use common::{brute_force_completely_reduced, multidegrees, OracleEvaluator};
use weylpi::bracket::{enumerate_completely_reduced, weight_less, BracketMonomial, Status, Weight};
use weylpi::evaluation::{all_tuples, evaluate_at, generic_substitution, is_weak_identity, substitute_tuple, XY};
use weylpi::free_algebra::{
    complete_linearization, gamma, partial_linearization, st3, t4, Generator, MultiDegree, NCPoly, Word,
};
use weylpi::identities::{
    identity_basis, ideal_span_dimension, ideal_span_rows, identity_dimension, word_evaluation_matrix,
};
use weylpi::rewriter::{completely_reduce, normal_form, reduce, semi_reduce, semi_reduce_monomial};
use weylpi::weyl::WeylElement;
use weylpi::FieldSpec;

const Q: FieldSpec = FieldSpec::RATIONALS;

fn poly_from(m: usize, terms: &[(Vec<u32>, i64)], field: FieldSpec) -> NCPoly {
    let mut f = NCPoly::zero(field, m);
    for (w, c) in terms {
        let letters: Vec<u32> = w.iter().map(|&l| l % m as u32 + 1).collect();
        f.add_term(Word::new(letters).unwrap(), field.from_i64(*c));
    }
    f
}

fn poly() -> impl Strategy<Value = NCPoly> {
    (1usize..=3, prop::collection::vec((prop::collection::vec(0u32..3, 0..=4), -4i64..=4), 0..6))
        .prop_map(|(m, terms)| poly_from(m, &terms, Q))
}

/// A multihomogeneous polynomial: random coefficients on the words of a
/// random multidegree.
fn homogeneous() -> impl Strategy<Value = NCPoly> {
    (prop::collection::vec(0u32..=2, 1..=3), prop::collection::vec(-3i64..=3, 1..8)).prop_map(|(counts, coeffs)| {
        let mut counts = counts;
        if counts.iter().sum::<u32>() == 0 {
            counts[0] = 1;
        }
        let d = MultiDegree(counts);
        let words = d.words();
        let mut f = NCPoly::zero(Q, d.nvars());
        for (k, c) in coeffs.iter().enumerate() {
            f.add_term(words[(k * 7 + c.unsigned_abs() as usize) % words.len()].clone(), Q.from_i64(*c));
        }
        f
    })
}

fn bracket_monomial() -> impl Strategy<Value = BracketMonomial> {
    (
        prop::collection::vec(1u32..=5, 0..=3),
        prop::collection::vec((1u32..=4, 1u32..=4), 1..=3),
    )
        .prop_map(|(prefix, pairs)| {
            let brackets = pairs.into_iter().map(|(a, b)| (a, a + b.min(5 - a).max(1))).collect();
            BracketMonomial::new(prefix, brackets).unwrap()
        })
}

fn weight() -> impl Strategy<Value = Weight> {
    prop::collection::vec(0u32..4, 0..4).prop_map(Weight::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generic_substitution_is_a_homomorphism(f in poly(), g in poly()) {
        let (ef, eg) = (generic_substitution(&f), generic_substitution(&g));
        prop_assert_eq!(generic_substitution(&(&f * &g)), ef.mul(&eg).unwrap());
        prop_assert_eq!(generic_substitution(&(&f + &g)), ef.add(&eg).unwrap());
    }

    #[test]
    fn specialization_matches_direct_evaluation(f in poly(), vals in prop::collection::vec(-3i64..=3, 6)) {
        let params: Vec<_> = vals.iter().map(|&v| Q.from_i64(v)).collect();
        let values: Vec<WeylElement> = (0..3)
            .map(|k| {
                let mut e = WeylElement::x(Q).scale(&params[2 * k]);
                e = e.add(&WeylElement::y(Q).scale(&params[2 * k + 1])).unwrap();
                e
            })
            .collect();
        let direct = evaluate_at(&f, &values).unwrap();
        prop_assert_eq!(generic_substitution(&f).specialize(&params), direct.clone());
        let pts: Vec<(i64, i64)> = (0..3).map(|k| (vals[2 * k], vals[2 * k + 1])).collect();
        let oracle = OracleEvaluator::default().eval_linear(&f, &pts);
        prop_assert_eq!(common::from_weyl(&direct), oracle);
    }

    #[test]
    fn tuples_are_specializations(f in poly()) {
        let generic = generic_substitution(&f);
        for t in all_tuples(f.nvars()) {
            let params: Vec<_> = t
                .iter()
                .flat_map(|v| match v {
                    XY::X => [Q.one(), Q.zero()],
                    XY::Y => [Q.zero(), Q.one()],
                })
                .collect();
            prop_assert_eq!(substitute_tuple(&f, &t).unwrap(), generic.specialize(&params));
        }
    }

    #[test]
    fn linearizations_keep_identities(idx in prop::collection::vec(1u32..=2, 3)) {
        let f = Generator::Gamma(3).at(Q, &idx).unwrap();
        prop_assume!(!f.is_zero());
        let lin = complete_linearization(&f).unwrap();
        prop_assert!(lin.is_multilinear());
        prop_assert_eq!(lin.degree(), Some(3));
        prop_assert!(is_weak_identity(&lin));
    }

    #[test]
    fn partial_linearization_multidegree(f in homogeneous(), split in 1u32..=2) {
        prop_assume!(!f.is_zero());
        let d = f.multidegree().unwrap();
        let i = d.counts().iter().position(|&c| c >= split).map(|p| p as u32 + 1);
        prop_assume!(i.is_some());
        let i = i.unwrap();
        let di = d.counts()[i as usize - 1];
        let gamma = if di == split { vec![di] } else { vec![split, di - split] };
        let lin = partial_linearization(&f, i, &gamma).unwrap();
        let mut expected: Vec<u32> = d.counts()[..i as usize - 1].to_vec();
        expected.extend(&gamma);
        expected.extend(&d.counts()[i as usize..]);
        if !lin.is_zero() {
            prop_assert_eq!(lin.multidegree().unwrap().trimmed(), MultiDegree(expected).trimmed());
        }
        // Merging the new variables back recovers binom-weighted f.
        let merge: Vec<u32> = (1..=lin.nvars() as u32)
            .map(|l| if l < i { l } else if l < i + gamma.len() as u32 { i } else { l - gamma.len() as u32 + 1 })
            .collect();
        let back = lin.relabel(&merge).unwrap();
        let binom: u64 = (1..=di as u64).product::<u64>()
            / gamma.iter().map(|&g| (1..=g as u64).product::<u64>()).product::<u64>();
        prop_assert_eq!(back, f.scale(&Q.from_u64(binom)));
    }

    #[test]
    fn expansions_are_distinct(a in bracket_monomial(), b in bracket_monomial()) {
        let (ea, eb) = (a.expand(Q), b.expand(Q));
        prop_assert_eq!(a == b, ea == eb);
        prop_assert_eq!(ea.len(), 1 << a.k());
        prop_assert_eq!(ea.multidegree().unwrap().trimmed(), a.multidegree(0).trimmed());
    }

    #[test]
    fn weight_order_is_total(a in weight(), b in weight(), c in weight()) {
        let ab = weight_less(&a, &b);
        let ba = weight_less(&b, &a);
        prop_assert!(!(ab && ba));
        prop_assert_eq!(!ab && !ba, a == b);
        if ab && weight_less(&b, &c) {
            prop_assert!(weight_less(&a, &c));
        }
    }

    #[test]
    fn rewriting_preserves_evaluation_and_weight(b in bracket_monomial()) {
        let mw = b.monomial_weight();
        let semi = semi_reduce_monomial(&b, Q);
        for m in semi.keys() {
            prop_assert!(m.status() >= Status::SemiReduced);
            prop_assert!(m.monomial_weight() <= mw);
            let red = reduce(m, Q).unwrap();
            for r in red.keys() {
                prop_assert!(r.status() >= Status::Reduced);
                prop_assert!(r.monomial_weight() <= m.monomial_weight());
                for c in completely_reduce(r, Q).unwrap().keys() {
                    prop_assert_eq!(c.status(), Status::CompletelyReduced);
                    prop_assert!(c.monomial_weight() <= r.monomial_weight());
                }
            }
        }
        let (beta, _) = semi_reduce(&b.expand(Q)).unwrap();
        prop_assert!(beta.is_zero());
        let nf = normal_form(&b.expand(Q));
        let nf = nf.values().next().unwrap();
        prop_assert!(nf.beta.is_zero());
        prop_assert_eq!(generic_substitution(&nf.reconstruct()), generic_substitution(&b.expand(Q)));
    }

    #[test]
    fn normal_form_is_idempotent(f in homogeneous()) {
        for nf in normal_form(&f).values() {
            let again = normal_form(&nf.reconstruct());
            if nf.is_zero() {
                prop_assert!(again.values().all(|n| n.is_zero()));
            } else {
                prop_assert_eq!(again.values().next().unwrap(), nf);
            }
        }
    }

    #[test]
    fn ideal_elements_normalize_to_zero(
        w1 in prop::collection::vec(1u32..=3, 0..=1),
        w2 in prop::collection::vec(1u32..=3, 0..=1),
        idx in prop::collection::vec(1u32..=3, 4),
        which in 0usize..3,
    ) {
        let g = Generator::IDEAL[which];
        let gj = g.at(Q, &idx[..g.arity() as usize]).unwrap();
        let left = NCPoly::monomial(Q, Word::new(w1).unwrap(), Q.one());
        let right = NCPoly::monomial(Q, Word::new(w2).unwrap(), Q.one());
        let f = &(&left * &gj) * &right;
        prop_assert!(normal_form(&f).values().all(|nf| nf.is_zero()), "{}", f);
    }
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 2..=6 {
        for d in multidegrees(n, n as usize) {
            let got: std::collections::BTreeSet<String> = enumerate_completely_reduced(&d)
                .unwrap()
                .iter()
                .map(|b| {
                    assert_eq!(b.status(), Status::CompletelyReduced, "{b}");
                    b.to_string()
                })
                .collect();
            assert_eq!(got, brute_force_completely_reduced(&d), "{d}");
        }
    }
}

#[test]
fn rank_nullity_over_both_fields() {
    for field in [Q, FieldSpec::prime(7).unwrap()] {
        for n in 1..=5 {
            for d in multidegrees(n, 3).into_iter().filter(|d| d.counts().windows(2).all(|w| w[0] >= w[1])) {
                let basis = identity_basis(&d, field);
                let rank = word_evaluation_matrix(&d, field).rank();
                assert_eq!(basis.len() + rank, d.word_count() as usize, "{d} over {field}");
                assert_eq!(basis.len(), identity_dimension(&d, field), "{d} over {field}");
                for f in &basis {
                    assert!(is_weak_identity(f), "{f}");
                    assert!(normal_form(f).values().all(|nf| nf.is_zero()), "{f} over {field}");
                }
                assert!(ideal_span_dimension(&d, field) <= basis.len());
            }
        }
    }
}

#[test]
fn ideal_rows_are_identities() {
    for d in [MultiDegree(vec![2, 1, 1]), MultiDegree(vec![1, 1, 1, 1]), MultiDegree(vec![3, 2])] {
        for f in ideal_span_rows(&d, Q) {
            assert!(is_weak_identity(&f), "{f}");
            assert_eq!(f.multidegree().unwrap().trimmed(), d.trimmed());
        }
    }
}

#[test]
fn generators_over_small_fields() {
    for p in [2, 3, 5, 7] {
        let f = FieldSpec::prime(p).unwrap();
        for g in [gamma(f, 3).unwrap(), gamma(f, 4).unwrap(), st3(f), t4(f)] {
            assert!(is_weak_identity(&g), "{g} over {f}");
        }
    }
}
