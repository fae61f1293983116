use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossratio::charfns::all_char_fns;
use crossratio::linalg::{rat, ExactMatrix, Rational, Subspace};
use crossratio::moebius::structure::{default_point_names, degenerate_value};
use crossratio::moebius::tuple::act_on_tuple;
use crossratio::moebius::{
    check_axioms, classify_tuple, codifferential, eval_charfn_extended, moebius_from_semimetric, random_submoebius,
    FiniteSemiMetric, ScaledStructure, SubMoebius, SumStructure, TupleClass,
};
use crossratio::perm::{enumerate_group, Permutation};
use crossratio::rep::{eta, isotypic_projector, CanonicalRep, PrimeCharacter};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn perm_any(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(perm)
}

fn matrix_with_cols(c: usize) -> impl Strategy<Value = ExactMatrix> {
    (1usize..5).prop_flat_map(move |r| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            ExactMatrix::from_rows_with_cols(
                rows.into_iter().map(|row| row.into_iter().map(rat).collect()).collect(),
                c,
            )
            .unwrap()
        })
    })
}

fn small_matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..6).prop_flat_map(matrix_with_cols)
}

proptest! {
    #[test]
    fn composition_is_associative((p, q, r) in (1usize..=7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_sign((p, q) in (1usize..=8).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
        prop_assert_eq!(p.inverse().sign(), p.sign());
        prop_assert_eq!(p.cycle_type(), p.inverse().cycle_type());
    }

    #[test]
    fn one_line_round_trip(p in perm_any(8)) {
        let text = p.to_one_line();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn induced_permutations_compose((p, q, i) in (2usize..=7).prop_flat_map(|n| (perm(n), perm(n), 0..n))) {
        // (p q)_i = p_{q(i)} q_i
        let lhs = p.compose(&q).unwrap().induced(i).unwrap();
        let rhs = p.induced(q.apply(i)).unwrap().compose(&q.induced(i).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn crossratio_hom_is_a_homomorphism((p, q) in (perm(4), perm(4))) {
        let lhs = p.compose(&q).unwrap().crossratio_hom().unwrap();
        let rhs = p.crossratio_hom().unwrap().compose(&q.crossratio_hom().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta6_is_a_homomorphism((p, q) in (perm(6), perm(6))) {
        let lhs = eta(&p.compose(&q).unwrap()).unwrap();
        let rhs = eta(&p).unwrap().compose(&eta(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
        for v in kernel.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Rational::from_integer(0.into())));
        }
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn subspace_operations((a, b) in (1usize..6).prop_flat_map(|c| (matrix_with_cols(c), matrix_with_cols(c)))) {
        let n = a.cols();
        let sa = Subspace::span(n, a.row_vecs()).unwrap();
        let sb = Subspace::span(n, b.row_vecs()).unwrap();
        let meet = sa.intersect(&sb).unwrap();
        let join = sa.sum(&sb).unwrap();
        prop_assert!(meet.is_subspace_of(&sa).unwrap() && meet.is_subspace_of(&sb).unwrap());
        prop_assert_eq!(meet.dim() + join.dim(), sa.dim() + sb.dim());
        prop_assert_eq!(sa.orth_complement().dim() + sa.dim(), n);
        prop_assert_eq!(sa.orth_complement().orth_complement(), sa);
    }

    #[test]
    fn free_structures_are_equivariant(seed in any::<u64>(), p in perm(4), q in perm(5)) {
        let s = random_submoebius(default_point_names(5), seed).unwrap();
        let tuple: [usize; 4] = q.images().take(4).collect::<Vec<_>>().try_into().unwrap();
        let moved: [usize; 4] = act_on_tuple(&p, &tuple).try_into().unwrap();
        prop_assert_eq!(s.value(&moved).unwrap(), s.value(&tuple).unwrap().act(&p));
    }

    #[test]
    fn codifferential_is_equivariant(seed in any::<u64>(), p in perm(5), q in perm(5)) {
        let s = random_submoebius(default_point_names(5), seed).unwrap();
        let tuple: [usize; 5] = q.images().collect::<Vec<_>>().try_into().unwrap();
        let moved: [usize; 5] = act_on_tuple(&p, &tuple).try_into().unwrap();
        let op = CanonicalRep::get(5).unwrap().matrix(&p);
        prop_assert_eq!(codifferential(&s, &moved).unwrap(), codifferential(&s, &tuple).unwrap().act(op).unwrap());
    }

    #[test]
    fn degenerate_values_are_consistent(p in perm(4)) {
        let q = act_on_tuple(&p, &[0, 0, 1, 2]);
        let q: [usize; 4] = q.try_into().unwrap();
        prop_assert_eq!(degenerate_value(&q).unwrap(), degenerate_value(&[0, 0, 1, 2]).unwrap().act(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cone_of_sub_moebius_structures(s1 in any::<u64>(), s2 in any::<u64>(), k in 1u32..4) {
        let a = random_submoebius(default_point_names(5), s1).unwrap();
        let b = random_submoebius(default_point_names(5), s2).unwrap();
        let points = [0, 1, 2, 3, 4];
        prop_assert!(check_axioms(&SumStructure(&a, &b), &points).unwrap().pass);
        let scaled = ScaledStructure { inner: &a, factor: k };
        prop_assert!(check_axioms(&scaled, &points).unwrap().pass);
    }

    #[test]
    fn metric_roots_vanish_on_singular_tuples(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = moebius_from_semimetric(FiniteSemiMetric::random_metric(5, &mut rng));
        let chars = all_char_fns();
        // every singular admissible 5-tuple over the five points
        for idx in 0..5usize.pow(5) {
            let tuple: [usize; 5] = std::array::from_fn(|k| (idx / 5usize.pow(k as u32)) % 5);
            if classify_tuple(&tuple).unwrap() != TupleClass::SingularAdmissible {
                continue;
            }
            let v = codifferential(&m, &tuple).unwrap();
            prop_assert!(!v.is_finite());
            for r in &chars {
                prop_assert!(eval_charfn_extended(r, &v).unwrap().is_zero(), "{:?} {:?}", tuple, r);
            }
        }
    }
}

#[test]
fn projectors_are_complete_and_orthogonal() {
    let mut total = ExactMatrix::zeros(15, 15);
    for lambda in PrimeCharacter::ALL {
        let p = isotypic_projector(lambda);
        assert_eq!(p.mul(&p).unwrap(), p, "{lambda}");
        for mu in PrimeCharacter::ALL {
            if mu != lambda {
                assert!(p.mul(&isotypic_projector(mu)).unwrap().is_zero());
            }
        }
        total = total.add(&p).unwrap();
    }
    assert_eq!(total, ExactMatrix::identity(15));
}

#[test]
fn sum_of_metric_structures_is_moebius() {
    // M_{d1} + M_{d2} = M_{d1·d2}
    use crossratio::moebius::criterion::{criterion_report, regular_index_tuples, DEFAULT_TOLERANCE};
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let a = moebius_from_semimetric(FiniteSemiMetric::random_metric(5, &mut rng));
    let b = moebius_from_semimetric(FiniteSemiMetric::random_metric(5, &mut rng));
    let sum = SumStructure(&a, &b);
    assert!(check_axioms(&sum, &[0, 1, 2, 3, 4]).unwrap().pass);
    let report = criterion_report(&sum, &regular_index_tuples(5), "exhaustive", None, DEFAULT_TOLERANCE).unwrap();
    assert!(report.is_moebius);
}

#[test]
fn every_element_of_s4_acts_compatibly() {
    for p in enumerate_group(4).unwrap() {
        for q in enumerate_group(4).unwrap() {
            let v = degenerate_value(&[0, 0, 1, 2]).unwrap();
            assert_eq!(v.act(&p.compose(&q).unwrap()), v.act(&q).act(&p));
        }
    }
}
