use std::sync::Arc;

use proptest::prelude::*;
use superali_core::superscalar::{
    antisym_sign, super_sign, GenId, GeneratorTable, Monomial, Parity, ParityVector, Permutation, SuperScalar,
    TableBuilder,
};
use superali_core::Rational;

const N_EVEN: usize = 2;
const N_ODD: usize = 5;

fn table() -> Arc<GeneratorTable> {
    TableBuilder::default()
        .even("x", &[0])
        .even("x", &[1])
        .odd("e", &[0])
        .odd("e", &[1])
        .odd("e", &[2])
        .odd("e", &[3])
        .odd("e", &[4])
        .build()
        .unwrap()
}

type RawTerm = (u16, u16, u32, i64);

fn build(t: &Arc<GeneratorTable>, raw: &[RawTerm]) -> SuperScalar {
    SuperScalar::from_terms(
        t,
        raw.iter().map(|&(a, b, odd, c)| {
            let even = [(0 as GenId, a), (1 as GenId, b)].into_iter().filter(|(_, e)| *e > 0);
            let mask = (odd as u128) << N_EVEN;
            (Monomial::from_parts(even, mask), Rational::from_integer(c))
        }),
    )
}

fn raw_terms(parity: Option<Parity>) -> impl Strategy<Value = Vec<RawTerm>> {
    let term = (0u16..3, 0u16..3, 0u32..(1 << N_ODD), -4i64..=4).prop_filter("parity", move |t| match parity {
        None => true,
        Some(p) => (t.2.count_ones() % 2 == 1) == p.is_odd(),
    });
    prop::collection::vec(term, 0..6)
}

fn parity_strategy() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn homogeneous() -> impl Strategy<Value = (Parity, Vec<RawTerm>)> {
    parity_strategy().prop_flat_map(|p| (Just(p), raw_terms(Some(p))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative_and_distributive(a in raw_terms(None), b in raw_terms(None), c in raw_terms(None)) {
        let t = table();
        let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn supercommutative((p, a) in homogeneous(), (q, b) in homogeneous()) {
        let t = table();
        let (a, b) = (build(&t, &a), build(&t, &b));
        let ba = &b * &a;
        let expected = if p.is_odd() && q.is_odd() { -ba } else { ba };
        prop_assert_eq!(&a * &b, expected);
    }

    #[test]
    fn odd_elements_square_to_zero(a in raw_terms(Some(Parity::Odd))) {
        let t = table();
        let a = build(&t, &a);
        prop_assert!((&a * &a).is_zero());
    }

    #[test]
    fn odd_derivation_is_a_left_superderivation((p, a) in homogeneous(), b in raw_terms(None), k in 0..N_ODD) {
        let t = table();
        let (a, b) = (build(&t, &a), build(&t, &b));
        let id = (N_EVEN + k) as GenId;
        let lhs = (&a * &b).d_odd(id);
        let second = &a * &b.d_odd(id);
        let rhs = &(&a.d_odd(id) * &b) + &(if p.is_odd() { -second } else { second });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unipotent_inverse(c in prop_oneof![-5i64..=-1, 1i64..=5], nil in raw_terms(Some(Parity::Even))) {
        let t = table();
        // nilpotent part: no pure-even or constant terms
        let nil: Vec<RawTerm> = nil.into_iter().filter(|r| r.2 != 0).map(|(_, _, o, k)| (0, 0, o, k)).collect();
        let a = &SuperScalar::constant(&t, c) + &build(&t, &nil);
        let inv = a.invert_unipotent().unwrap();
        prop_assert_eq!(&a * &inv, SuperScalar::one(&t));
    }
}

fn bubble_sort_sign(order: &[usize], odd: &[bool]) -> i32 {
    // brute force: sort the factor sequence back to 0..k by adjacent swaps,
    // each swap of two odd factors costs a sign
    let mut v = order.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                if odd[v[j]] && odd[v[j + 1]] {
                    sign = -sign;
                }
                v.swap(j, j + 1);
            }
        }
    }
    sign
}

fn perm_and_parities(k: usize) -> impl Strategy<Value = (Vec<usize>, Vec<u32>)> {
    (Just((0..k).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(0u32..2, k))
}

fn to_perm(images: &[usize]) -> Permutation {
    Permutation::from_images(&images.iter().map(|i| i + 1).collect::<Vec<_>>()).unwrap()
}

fn signature(v: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                s = -s;
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn envelope_soundness((images, bits) in (2usize..=6).prop_flat_map(perm_and_parities)) {
        let s = to_perm(&images);
        let p = ParityVector::from_bits(&bits);
        // envelope factor i has parity p_i + 1
        let odd: Vec<bool> = bits.iter().map(|&b| b == 0).collect();
        let sign = super_sign(&s, &p).unwrap();
        prop_assert_eq!(sign, bubble_sort_sign(&images, &odd));

        let mut b = TableBuilder::default();
        for (i, &o) in odd.iter().enumerate() {
            b = if o { b.odd("y", &[i as i64]) } else { b.even("y", &[i as i64]) };
        }
        let t = b.build().unwrap();
        let gen = |i: usize| SuperScalar::named(&t, "y", &[i as i64]);
        let straight = (0..images.len()).fold(SuperScalar::one(&t), |acc, i| &acc * &gen(i));
        let permuted = images.iter().fold(SuperScalar::one(&t), |acc, &i| &acc * &gen(i));
        prop_assert_eq!(permuted, straight.scale(&Rational::from_integer(sign as i64)));
    }

    #[test]
    fn all_even_specialisation((images, _) in (1usize..=7).prop_flat_map(perm_and_parities)) {
        let s = to_perm(&images);
        let p = ParityVector::even(images.len());
        prop_assert_eq!(super_sign(&s, &p).unwrap(), signature(&images));
        prop_assert_eq!(antisym_sign(&s, &p).unwrap(), signature(&images));
        prop_assert_eq!(s.signature(), signature(&images));
    }

    #[test]
    fn antisymmetrizer_sign_is_signature_times_odd_subpermutation((images, bits) in (1usize..=7).prop_flat_map(perm_and_parities)) {
        let s = to_perm(&images);
        let p = ParityVector::from_bits(&bits);
        let odd_order: Vec<usize> = images.iter().copied().filter(|&i| bits[i] == 1).collect();
        prop_assert_eq!(antisym_sign(&s, &p).unwrap(), signature(&images) * signature(&odd_order));
    }

    #[test]
    fn cocycle_on_s5((a, bits) in perm_and_parities(5), b in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let (s1, s2) = (to_perm(&a), to_perm(&b));
        let p = ParityVector::from_bits(&bits);
        for sign in [super_sign, antisym_sign] {
            let lhs = sign(&s1.compose(&s2).unwrap(), &p).unwrap();
            let rhs = sign(&s1, &p).unwrap() * sign(&s2, &s1.act(&p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn cocycle_exhaustive_on_s3() {
    for s1 in Permutation::all(3) {
        for s2 in Permutation::all(3) {
            for p in ParityVector::all(3) {
                let lhs = super_sign(&s1.compose(&s2).unwrap(), &p).unwrap();
                let rhs = super_sign(&s1, &p).unwrap() * super_sign(&s2, &s1.act(&p).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{s1} {s2} {p:?}");
            }
        }
    }
}

#[test]
fn pinned_sign_examples() {
    let swap = Permutation::from_images(&[2, 1]).unwrap();
    assert_eq!(super_sign(&swap, &ParityVector::from_bits(&[0, 0])).unwrap(), -1);
    assert_eq!(super_sign(&swap, &ParityVector::from_bits(&[1, 1])).unwrap(), 1);
    assert_eq!(super_sign(&swap, &ParityVector::from_bits(&[0, 1])).unwrap(), 1);
    assert_eq!(super_sign(&Permutation::identity(4), &ParityVector::from_bits(&[1, 0, 1, 1])).unwrap(), 1);
    // the two conventions differ on a transposition of two odd arguments
    assert_eq!(antisym_sign(&swap, &ParityVector::from_bits(&[1, 1])).unwrap(), 1);
    assert_eq!(antisym_sign(&swap, &ParityVector::from_bits(&[0, 1])).unwrap(), -1);
}
