use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superali_core::supermat::{preserves_form, MatrixAlgebraSpec, SuperMatrix};
use superali_core::superscalar::{GeneratorTable, Monomial, Parity, SuperScalar, TableBuilder};
use superali_core::Rational;

const ODD: usize = 6;

fn grassmann() -> Arc<GeneratorTable> {
    let mut b = TableBuilder::default();
    for i in 0..ODD {
        b = b.odd("e", &[i as i64]);
    }
    b.build().unwrap()
}

/// Random homogeneous element of the Grassmann algebra on `ODD` generators.
fn scalar(t: &Arc<GeneratorTable>, p: Parity, nilpotent: bool, rng: &mut ChaCha8Rng) -> SuperScalar {
    let terms: Vec<(Monomial, Rational)> = (0..rng.gen_range(0..4))
        .filter_map(|_| {
            let mask: u128 = rng.gen_range(0..1 << ODD);
            let ok = (mask.count_ones() % 2 == 1) == p.is_odd() && !(nilpotent && mask == 0);
            ok.then(|| (Monomial::from_parts([], mask), Rational::from_integer(rng.gen_range(-3..=3))))
        })
        .collect();
    SuperScalar::from_terms(t, terms)
}

fn index_parity(m: usize, i: usize) -> Parity {
    if i < m {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn homogeneous(t: &Arc<GeneratorTable>, m: usize, n: usize, p: Parity, rng: &mut ChaCha8Rng) -> SuperMatrix {
    SuperMatrix::from_fn(t, m, n, |i, j| {
        let q = Parity::from_bit(p.bit() ^ index_parity(m, i).bit() ^ index_parity(m, j).bit());
        scalar(t, q, false, rng)
    })
    .with_parity(p)
    .unwrap()
}

/// `1 + N` with `N` even and nilpotent.
fn unipotent(t: &Arc<GeneratorTable>, m: usize, n: usize, rng: &mut ChaCha8Rng) -> SuperMatrix {
    SuperMatrix::from_fn(t, m, n, |i, j| {
        let q = Parity::from_bit(index_parity(m, i).bit() ^ index_parity(m, j).bit());
        let e = scalar(t, q, true, rng);
        if i == j {
            &e + &SuperScalar::one(t)
        } else {
            e
        }
    })
    .with_parity(Parity::Even)
    .unwrap()
}

fn sign(p: Parity, q: Parity) -> Rational {
    Rational::from_integer(if (p * q).is_odd() { -1 } else { 1 })
}

fn parity(b: bool) -> Parity {
    if b {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn supertrace_is_supersymmetric(seed in any::<u64>(), (m, n) in prop_oneof![Just((1, 1)), Just((2, 1)), Just((1, 2))], p in any::<bool>(), q in any::<bool>()) {
        let t = grassmann();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (parity(p), parity(q));
        let x = homogeneous(&t, m, n, p, &mut rng);
        let y = homogeneous(&t, m, n, q, &mut rng);
        let lhs = x.try_mul(&y).unwrap().with_parity(Parity::from_bit(p.bit() ^ q.bit())).unwrap().supertrace().unwrap();
        let rhs = y.try_mul(&x).unwrap().with_parity(Parity::from_bit(p.bit() ^ q.bit())).unwrap().supertrace().unwrap();
        prop_assert_eq!(lhs, rhs.scale(&sign(p, q)));
    }

    #[test]
    fn determinant_of_one_minus_uv(seed in any::<u64>(), p in 1usize..=3, q in 1usize..=3) {
        let t = grassmann();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Vec<Vec<SuperScalar>> = (0..p).map(|_| (0..q).map(|_| scalar(&t, Parity::Odd, false, &mut rng)).collect()).collect();
        let v: Vec<Vec<SuperScalar>> = (0..q).map(|_| (0..p).map(|_| scalar(&t, Parity::Odd, false, &mut rng)).collect()).collect();
        let one_minus = |a: &Vec<Vec<SuperScalar>>, b: &Vec<Vec<SuperScalar>>, k: usize, inner: usize| {
            SuperMatrix::from_fn(&t, k, 0, |i, j| {
                let prod = (0..inner).fold(SuperScalar::zero(&t), |acc, l| &acc + &(&a[i][l] * &b[l][j]));
                let id = if i == j { SuperScalar::one(&t) } else { SuperScalar::zero(&t) };
                &id - &prod
            })
        };
        let d1 = one_minus(&u, &v, p, q).det_even().unwrap();
        let d2 = one_minus(&v, &u, q, p).det_even().unwrap();
        prop_assert_eq!(&d1 * &d2, SuperScalar::one(&t));
    }

    #[test]
    fn berezinian_of_parity_change(seed in any::<u64>(), (m, n) in prop_oneof![Just((1, 1)), Just((2, 1))]) {
        let t = grassmann();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = unipotent(&t, m, n, &mut rng);
        let ber = z.berezinian().unwrap();
        let ber_pi = z.parity_change().berezinian().unwrap();
        prop_assert_eq!(&ber * &ber_pi, SuperScalar::one(&t));
    }

    #[test]
    fn berezinian_is_multiplicative(seed in any::<u64>(), (m, n) in prop_oneof![Just((1, 1)), Just((2, 1)), Just((1, 2))]) {
        let t = grassmann();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z1 = unipotent(&t, m, n, &mut rng);
        let z2 = unipotent(&t, m, n, &mut rng);
        let prod = z1.try_mul(&z2).unwrap().with_parity(Parity::Even).unwrap();
        prop_assert_eq!(prod.berezinian().unwrap(), &z1.berezinian().unwrap() * &z2.berezinian().unwrap());
    }
}

#[test]
fn berezinian_of_odd_block_matrix_is_one() {
    // Z = (1 λX; λX 1) with X odd in Mat(n|0), written over (n|n)
    for n in 1..=2 {
        let t = grassmann();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let x: Vec<SuperScalar> = (0..n * n).map(|_| scalar(&t, Parity::Odd, false, &mut rng)).collect();
        let lam = Rational::new(3, 2);
        let z = SuperMatrix::from_fn(&t, n, n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let (ri, rj) = (i % n, j % n);
            if bi == bj {
                if ri == rj { SuperScalar::one(&t) } else { SuperScalar::zero(&t) }
            } else {
                x[ri * n + rj].scale(&lam)
            }
        })
        .with_parity(Parity::Even)
        .unwrap();
        assert_eq!(z.berezinian().unwrap(), SuperScalar::one(&t), "n = {n}");
    }
}

#[test]
fn odd_generic_matrix_powers() {
    for n in 1..=3 {
        let g = MatrixAlgebraSpec::from_str_checked(&format!("gl({n})"));
        let x = superali_core::supermat::generic_element(&g).unwrap().matrix;
        for r in 1..=n {
            let p = x.pow(2 * r as u32).unwrap().with_parity(Parity::Even).unwrap();
            assert!(p.supertrace().unwrap().is_zero(), "str X^{} on gl({n})", 2 * r);
        }
        assert!(x.pow(2 * n as u32).unwrap().is_zero());
        assert!(!x.pow(2 * n as u32 - 1).unwrap().is_zero());
    }
}

trait Parse {
    fn from_str_checked(s: &str) -> MatrixAlgebraSpec;
}

impl Parse for MatrixAlgebraSpec {
    fn from_str_checked(s: &str) -> MatrixAlgebraSpec {
        s.parse().unwrap()
    }
}

#[test]
fn product_of_scaled_units() {
    let t = grassmann();
    let e = |i: i64| SuperScalar::named(&t, "e", &[i]);
    let unit = |i, j, c: SuperScalar| {
        SuperMatrix::from_fn(&t, 2, 0, |a, b| if (a, b) == (i, j) { c.clone() } else { SuperScalar::zero(&t) })
    };
    let prod = unit(0, 1, e(1)).try_mul(&unit(1, 0, e(2))).unwrap();
    assert_eq!(prod, unit(0, 0, &e(1) * &e(2)));
    let id = SuperMatrix::identity(&t, 2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = homogeneous(&t, 2, 1, Parity::Odd, &mut rng);
    assert_eq!(id.try_mul(&a).unwrap(), a);
}

#[test]
fn supertranspose_of_block_diagonal() {
    let x = SuperMatrix::from_integers(2, 1, &[1, 2, 0, 3, 4, 0, 0, 0, 5]).unwrap();
    let want = SuperMatrix::from_integers(2, 1, &[1, 3, 0, 2, 4, 0, 0, 0, 5]).unwrap();
    assert_eq!(x.supertranspose(), want);
    let id = SuperMatrix::identity(&GeneratorTable::empty(), 1, 1);
    assert_eq!(id.supertranspose(), id);
}

#[test]
fn form_preservation_examples() {
    let osp: MatrixAlgebraSpec = "osp(1|2)".parse().unwrap();
    let form = osp.form().unwrap();
    for b in osp.basis() {
        assert!(preserves_form(&form, &b).unwrap());
    }
    let e11 = SuperMatrix::unit(1, 2, 0, 0);
    assert!(!preserves_form(&form, &e11).unwrap());
    assert!(preserves_form(&form, &SuperMatrix::zero(&GeneratorTable::empty(), 1, 2).with_parity(Parity::Even).unwrap()).unwrap());
}

#[test]
fn bases_are_closed_under_the_superbracket() {
    for s in ["o(3)", "sp(4)", "osp(1|2)", "osp(2|2)", "pe(2)", "sl(2|1)", "q(2)", "sq(2)"] {
        let spec: MatrixAlgebraSpec = s.parse().unwrap();
        let basis = spec.basis();
        for x in &basis {
            for y in &basis {
                let z = x.supercommutator(y).unwrap();
                if z.is_zero() {
                    continue;
                }
                let p = Parity::from_bit(x.parity().unwrap().bit() ^ y.parity().unwrap().bit());
                assert!(spec.contains(&z.with_parity(p).unwrap()).unwrap(), "{s}: [{x}, {y}]");
            }
        }
    }
}

#[test]
fn queer_basis_commutes_with_j() {
    for n in 1..=3 {
        let spec: MatrixAlgebraSpec = format!("q({n})").parse().unwrap();
        let j = MatrixAlgebraSpec::queer_operator(n);
        for b in spec.basis() {
            assert!(b.supercommutator(&j).unwrap().is_zero());
        }
        assert_eq!(spec.basis().len(), 2 * n * n);
    }
}
