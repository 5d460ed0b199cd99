use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superali_core::antisym::OperatorTuple;
use superali_core::superscalar::{Generator, Parity, SuperScalar};
use superali_core::vectorfields::{
    adjoint_antisymmetrizer, adjoint_identity_check, algebra_basis, critical_scan, divergence, hamiltonian_field,
    h5_determinant, kcomm_first_order, lambda_density_action, n_commutator, poisson, sample_fields, sampled_adjoint,
    spec_domain, subcritical_eval, DiffOp, GenericDerivation, GenericFieldFamily, SuperDomain, VectorialFamily,
    VectorialSpec,
};
use superali_core::report::Classification;
use superali_core::Rational;

fn vspec(f: VectorialFamily, n: usize, d: usize) -> VectorialSpec {
    VectorialSpec::new(f, n, d).unwrap()
}

fn sampled(spec: &VectorialSpec, count: usize, seed: u64) -> (Arc<SuperDomain>, Vec<DiffOp>) {
    let dom = spec_domain(spec, []).unwrap();
    let (basis, _) = algebra_basis(spec, &dom).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (dom, sample_fields(&basis, count, &mut rng).unwrap())
}

fn int(c: i64) -> Rational {
    Rational::from_integer(c)
}

#[test]
fn composition_examples() {
    let dom = SuperDomain::standard(1, 1, []).unwrap();
    let (x, xi) = (dom.coord(0), dom.coord(1));
    let dx = DiffOp::partial(&dom, 0);
    let dxi = DiffOp::partial(&dom, 1);
    let id = DiffOp::identity(&dom);
    let mult = |f: &SuperScalar| DiffOp::multiplication(&dom, f.clone());
    assert_eq!(dx.compose(&mult(&x)).unwrap(), dx.left_mul(&x).try_add(&id).unwrap());
    assert_eq!(dxi.compose(&mult(&xi)).unwrap(), id.try_sub(&dxi.left_mul(&xi)).unwrap());

    let line = SuperDomain::standard(1, 0, []).unwrap();
    let t = line.coord(0);
    let d = DiffOp::partial(&line, 0);
    let x2d = d.left_mul(&(&t * &t));
    assert_eq!(x2d.commutator(&d).unwrap(), d.left_mul(&t).scale(&int(-2)));
    assert_eq!(d.commutator(&d.left_mul(&t)).unwrap(), d);
    assert!(x2d.commutator(&x2d).unwrap().is_zero());
}

#[test]
fn odd_fields_square_to_vector_fields() {
    let eta = Generator { name: "eta".into(), index: vec![], parity: Parity::Odd };
    let dom = SuperDomain::standard(1, 0, [eta]).unwrap();
    let e = SuperScalar::named(dom.table(), "eta", &[]);
    let d = DiffOp::vector_field(&dom, &[&e * &dom.coord(0)]);
    let sq = d.compose(&d).unwrap();
    assert!(sq.is_vector_field() || sq.is_zero());

    for (n, deg) in [(1, 3), (2, 1), (2, 2)] {
        let g = GenericDerivation::new(vspec(VectorialFamily::Vect, n, deg)).unwrap();
        let sq = g.op.compose(&g.op).unwrap();
        assert!(sq.is_vector_field(), "vect({n}), d = {deg}");
        assert!(!sq.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn brackets_of_fields_are_fields(seed in any::<u64>(), n in 1usize..=2) {
        let (_, f) = sampled(&vspec(VectorialFamily::Vect, n, 2), 2, seed);
        let c = f[0].commutator(&f[1]).unwrap();
        prop_assert!(c.is_zero() || c.is_vector_field());
    }

    #[test]
    fn divergence_is_a_cocycle(seed in any::<u64>()) {
        let (_, f) = sampled(&vspec(VectorialFamily::Vect, 2, 2), 2, seed);
        let (x, y) = (&f[0], &f[1]);
        let lhs = divergence(&x.commutator(y).unwrap()).unwrap();
        let rhs = &x.apply(&divergence(y).unwrap()) - &y.apply(&divergence(x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn svect_is_closed(seed in any::<u64>()) {
        let (_, f) = sampled(&vspec(VectorialFamily::Svect, 2, 2), 2, seed);
        prop_assert!(divergence(&f[0]).unwrap().is_zero());
        let c = f[0].commutator(&f[1]).unwrap();
        prop_assert!(c.is_zero() || divergence(&c).unwrap().is_zero());
    }

    #[test]
    fn densities_form_a_representation(seed in any::<u64>(), num in -3i64..=3, den in 1i64..=3) {
        let (dom, f) = sampled(&vspec(VectorialFamily::Vect, 2, 2), 3, seed);
        let lam = Rational::new(num, den);
        let g = f[2].field_coefficient(0);
        let act = |x: &DiffOp, h: &SuperScalar| lambda_density_action(x, h, &lam).unwrap();
        let bracket = f[0].commutator(&f[1]).unwrap();
        let lhs = if bracket.is_zero() { SuperScalar::zero(dom.table()) } else { act(&bracket, &g) };
        let rhs = &act(&f[0], &act(&f[1], &g)) - &act(&f[1], &act(&f[0], &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hamiltonian_fields(seed in any::<u64>()) {
        let spec = vspec(VectorialFamily::H, 2, 2);
        let dom = spec_domain(&spec, []).unwrap();
        let (_, gens) = algebra_basis(&spec, &dom).unwrap();
        let gens = gens.unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || {
            use rand::Rng;
            gens.iter().fold(SuperScalar::zero(dom.table()), |acc, g| &acc + &g.scale(&int(rng.gen_range(-2..=2))))
        };
        let (f, g) = (pick(), pick());
        let (xf, xg) = (hamiltonian_field(&dom, &f).unwrap(), hamiltonian_field(&dom, &g).unwrap());
        prop_assert!(divergence(&xf).unwrap().is_zero());
        let pb = poisson(&dom, &f, &g).unwrap();
        prop_assert_eq!(xf.commutator(&xg).unwrap(), hamiltonian_field(&dom, &pb).unwrap());
        prop_assert_eq!(xf.apply(&g), pb);
    }
}

#[test]
fn generic_order_matches_sampled_n_commutators() {
    let cases: [(usize, usize, &[usize]); 2] = [(1, 3, &[2, 3, 4]), (2, 2, &[2, 3, 4, 6])];
    for (n, d, ns) in cases {
        let spec = vspec(VectorialFamily::Vect, n, d);
        let g = GenericDerivation::new(spec).unwrap();
        for &big_n in ns {
            let dn = g.op.power(big_n as u32).unwrap();
            let samples = if big_n >= 6 { 6 } else { 20 };
            let mut max_order = None;
            for s in 0..samples {
                let (_, f) = sampled(&spec, big_n, 100 + s);
                let a = n_commutator(&OperatorTuple::diffops(f).unwrap(), big_n).unwrap();
                max_order = max_order.max(a.order());
            }
            assert_eq!(dn.order(), max_order, "vect({n}), d = {d}, N = {big_n}");
        }
    }
}

#[test]
fn kcomm_agrees_with_the_permutation_sum() {
    for (n, k, seed) in [(1, 2, 1), (1, 3, 2), (2, 2, 3), (2, 3, 4), (2, 4, 5)] {
        let (_, f) = sampled(&vspec(VectorialFamily::Vect, n, 2), k, seed);
        let fam = GenericFieldFamily::from_fields(&f).unwrap();
        let formula = fam.top_coefficient(&kcomm_first_order(&fam, k).unwrap()).unwrap();
        let direct = n_commutator(&OperatorTuple::diffops(f).unwrap(), k).unwrap().order_part(1);
        assert_eq!(formula, direct, "n = {n}, k = {k}");
    }
}

#[test]
fn subcritical_multiplier() {
    let spec = vspec(VectorialFamily::Vect, 1, 4);
    for seed in 0..5 {
        let (_, f) = sampled(&spec, 4, seed);
        let xs: [DiffOp; 3] = [f[0].clone(), f[1].clone(), f[2].clone()];
        let out = subcritical_eval(&xs, &f[3]).unwrap();
        assert!(out.matches, "seed {seed}");
        assert_eq!(out.image, out.operator().compose(&f[3]).unwrap());
    }
    let (_, f) = sampled(&spec, 3, 9);
    let out = subcritical_eval(&[f[0].clone(), f[0].clone(), f[1].clone()], &f[2]).unwrap();
    assert!(out.image.is_zero() && out.multiplier.is_zero());
}

#[test]
fn adjoint_routes_agree() {
    for (n, d, k) in [(1, 3, 2), (1, 3, 3), (1, 3, 4), (2, 1, 3)] {
        let spec = vspec(VectorialFamily::Vect, n, d);
        let (_, f) = sampled(&spec, k + 1, 40 + k as u64);
        let (xs, y) = (&f[..k], &f[k]);
        assert_eq!(adjoint_antisymmetrizer(xs, y).unwrap(), sampled_adjoint(xs, y).unwrap(), "vect({n}), k = {k}");
    }
}

#[test]
fn adjoint_identity_on_the_line() {
    let spec = vspec(VectorialFamily::Vect, 1, 4);
    assert!(adjoint_identity_check(&spec, 4, 0, 0).unwrap());
    assert!(adjoint_identity_check(&spec, 4, 10, 3).unwrap());
    assert!(!adjoint_identity_check(&spec, 2, 0, 0).unwrap());
    assert!(!adjoint_identity_check(&spec, 2, 5, 3).unwrap());
}

#[test]
fn line_critical_scan() {
    let scan = critical_scan(&vspec(VectorialFamily::Vect, 1, 3), 2, 5, false).unwrap();
    let kinds: Vec<Classification> = scan.items.iter().map(|i| i.classification).collect();
    assert_eq!(
        kinds,
        vec![Classification::Commutator, Classification::Zero, Classification::Zero, Classification::Zero]
    );
    assert!(critical_scan(&vspec(VectorialFamily::Vect, 3, 1), 1, 2, false).is_err());
}

#[test]
fn five_point_determinant_of_the_basis_tuple() {
    let dom = spec_domain(&vspec(VectorialFamily::H, 2, 2), []).unwrap();
    let (p, q) = (dom.coord(0), dom.coord(1));
    let det = h5_determinant(&dom, &[p.clone(), q.clone(), &p * &p, &q * &q, &p * &q]).unwrap();
    assert_eq!(det.as_rational().map(|v| v.abs()), Some(int(4)));
}
