mod common;

use cohnloc::algebra::{IntMatrix, Lattice, Matrix, Ring, Scalar};
use cohnloc::complexes::{tensor_layout, tensor_product};
use cohnloc::ltheory::{
    boundary_linking_form, double_dual_check, hom_tor_orders, linking_nonsingular, symmetrize, torsion_dual,
    witt_metabolic_test, Epsilon, LinkingForm, Side, Structure, TorsionPresentation,
};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn diag(a: &[i64]) -> Matrix {
    Matrix::from_fn(Ring::Integers, a.len(), a.len(), |i, j| z(if i == j { a[i] } else { 0 }))
}

/// A random linking form on `Z/a ⊕ Z/b`:
/// `[[u/a, w/g], [w/g, v/b]]` with `g = gcd(a, b)`.
fn diagonal_form(rng: &mut impl Rng) -> (i64, i64, i64, i64, i64) {
    let (a, b) = (rng.gen_range(2..=9), rng.gen_range(2..=9));
    let g = a.gcd(&b);
    (a, b, rng.gen_range(0..a), rng.gen_range(0..g), rng.gen_range(0..b))
}

/// Brute-force nonsingularity over all pairs of group elements.
fn nonsingular_oracle(a: i64, b: i64, u: i64, w: i64, v: i64) -> bool {
    let l = a.lcm(&b);
    let g = a.gcd(&b);
    let value = |x: (i64, i64), y: (i64, i64)| {
        (x.0 * y.0 * u * (l / a) + (x.0 * y.1 + x.1 * y.0) * w * (l / g) + x.1 * y.1 * v * (l / b)).rem_euclid(l)
    };
    let elements: Vec<(i64, i64)> = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    elements.iter().filter(|&&x| x != (0, 0)).all(|&x| elements.iter().any(|&y| value(x, y) != 0))
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn orthogonal_sum(l: &LinkingForm, m: &LinkingForm) -> LinkingForm {
    let (s, t) = (l.module().matrix(), m.module().matrix());
    let (n, k) = (s.rows(), t.rows());
    let zero = Matrix::zeros(Ring::Integers, n, k);
    let st = Matrix::block(s, &zero, &zero.transpose(), t).unwrap();
    let pairing = (0..n + k)
        .map(|i| {
            (0..n + k)
                .map(|j| match (i < n, j < n) {
                    (true, true) => l.pairing()[i][j].clone(),
                    (false, false) => m.pairing()[i - n][j - n].clone(),
                    _ => BigRational::zero(),
                })
                .collect()
        })
        .collect();
    LinkingForm::new(TorsionPresentation::new(st).unwrap(), pairing, l.eps()).unwrap()
}

fn negated(l: &LinkingForm) -> LinkingForm {
    let pairing = l.pairing().iter().map(|r| r.iter().map(|q| -q).collect()).collect();
    LinkingForm::new(l.module().clone(), pairing, l.eps()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn double_dual_is_the_identity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let m = TorsionPresentation::new(random_injective(&mut rng, 3, 6)).unwrap();
        prop_assert!(double_dual_check(&m));
        let dual = torsion_dual(&m);
        prop_assert_eq!(dual.order(), bareiss_det(&rows_of(m.matrix())).abs());
        prop_assert_eq!(dual.invariant_factors(), m.invariant_factors());
    }

    #[test]
    fn hom_from_the_dual_equals_tor(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let m = TorsionPresentation::new(random_injective(&mut rng, 3, 5)).unwrap();
        let n = TorsionPresentation::new(random_injective(&mut rng, 3, 5)).unwrap();
        let (hom, tor) = hom_tor_orders(&m, &n).unwrap();
        prop_assert_eq!(hom, tor);
    }

    #[test]
    fn hom_of_cyclic_sums(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(2..=12)).collect();
        let b: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(2..=12)).collect();
        let expected: BigInt = a.iter().flat_map(|x| b.iter().map(move |y| BigInt::from(x.gcd(y)))).product();
        let (hom, tor) = hom_tor_orders(
            &TorsionPresentation::new(diag(&a)).unwrap(),
            &TorsionPresentation::new(diag(&b)).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(&hom, &expected);
        prop_assert_eq!(&tor, &expected);
    }

    #[test]
    fn boundary_forms_are_nonsingular(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_injective(&mut rng, 3, 4);
        let s = a.add(&a.transpose()).unwrap();
        match boundary_linking_form(&s, Epsilon::Plus) {
            Ok(l) => {
                prop_assert!(linking_nonsingular(&l));
                let det = bareiss_det(&rows_of(&s)).abs();
                prop_assert_eq!(l.order(), det.clone());
                if det.is_one() {
                    prop_assert!(l.normalized().orders.is_empty());
                }
            }
            Err(e) => prop_assert!(bareiss_det(&rows_of(&s)).is_zero(), "{e}"),
        }
    }

    #[test]
    fn unimodular_boundaries_are_trivial(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=3);
        let u = random_unimodular(&mut rng, n, 6);
        let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let s = u.transpose().mul(&diag(&signs)).unwrap().mul(&u).unwrap();
        let l = boundary_linking_form(&s, Epsilon::Plus).unwrap();
        prop_assert!(l.order().is_one());
        prop_assert!(l.normalized().orders.is_empty());
        prop_assert!(witt_metabolic_test(&l, 10_000).unwrap());
    }

    #[test]
    fn skew_boundaries_are_skew(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = int_matrix(&mut rng, 2, 2, 4);
        let s = a.sub(&a.transpose()).unwrap();
        if bareiss_det(&rows_of(&s)).is_zero() {
            prop_assert!(boundary_linking_form(&s, Epsilon::Minus).is_err());
        } else {
            let l = boundary_linking_form(&s, Epsilon::Minus).unwrap();
            let p = l.pairing();
            for i in 0..p.len() {
                for j in 0..p.len() {
                    prop_assert!((&p[i][j] + &p[j][i]).is_integer());
                }
            }
            prop_assert!(linking_nonsingular(&l));
        }
    }

    #[test]
    fn nonsingularity_matches_brute_force(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, b, u, w, v) = diagonal_form(&mut rng);
        let g = a.gcd(&b);
        let pairing = vec![
            vec![rational(u, a), rational(w, g)],
            vec![rational(w, g), rational(v, b)],
        ];
        let l = LinkingForm::new(TorsionPresentation::new(diag(&[a, b])).unwrap(), pairing, Epsilon::Plus).unwrap();
        prop_assert_eq!(linking_nonsingular(&l), nonsingular_oracle(a, b, u, w, v));
    }

    #[test]
    fn form_plus_its_negative_is_metabolic(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (a, b, u, w, v) = diagonal_form(&mut rng);
        let g = a.gcd(&b);
        let pairing = vec![
            vec![rational(u, a), rational(w, g)],
            vec![rational(w, g), rational(v, b)],
        ];
        let l = LinkingForm::new(TorsionPresentation::new(diag(&[a, b])).unwrap(), pairing, Epsilon::Plus).unwrap();
        let sum = orthogonal_sum(&l, &negated(&l));
        // the diagonal {(x, x)} is isotropic of order |L|
        let order = BigInt::from(a * b);
        prop_assume!(&order * &order <= BigInt::from(10_000));
        prop_assert!(witt_metabolic_test(&sum, 10_000).unwrap());
        if !is_square(a * b) {
            prop_assert!(!witt_metabolic_test(&l, 10_000).unwrap());
        }
    }
}

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt().round() as i64;
    r * r == n
}

/// Entry `(j, i)` of the `(p, q)` block is the coordinate of `e_i ⊗ e_j`.
fn blocks_of(c: &cohnloc::complexes::ChainComplex, n: i64, v: &[Scalar]) -> Vec<(i64, Matrix)> {
    tensor_layout(c, c, n)
        .into_iter()
        .map(|(p, q, off, _)| {
            let (rp, rq) = (c.rank(p), c.rank(q));
            (p, Matrix::from_fn(Ring::Integers, rq, rp, |j, i| v[off + i * rq + j].clone()))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symmetrization_lands_in_cycles(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let c = random_complex(&mut rng, 2, 2, 3);
        let n = rng.gen_range(c.lo() * 2..=c.lo() * 2 + 4);
        let eps = if rng.gen_bool(0.5) { Epsilon::Plus } else { Epsilon::Minus };
        let x = tensor_product(&c, &c).unwrap();
        let kernel = Lattice::kernel(&IntMatrix::from_matrix(&x.d(n)).unwrap()).basis().to_matrix();
        prop_assume!(kernel.cols() > 0);
        let coeffs = int_matrix(&mut rng, kernel.cols(), 1, 3);
        let psi0 = kernel.mul(&coeffs).unwrap();
        let v: Vec<Scalar> = (0..psi0.rows()).map(|i| psi0.get(i, 0).clone()).collect();
        let blocks = blocks_of(&c, n, &v);
        let psi = Structure::from_blocks(&c, eps, n, Side::Quadratic, &[blocks.clone()]).unwrap();
        let phi = symmetrize(&psi).unwrap();
        phi.validate().unwrap();
        // φ_0 = ψ_0 + ε(−1)^{pq} ψ_0ᵀ blockwise
        for (p, m) in &blocks {
            let q = n - p;
            let other = blocks.iter().find(|b| b.0 == q).map(|b| b.1.clone()).unwrap();
            let sign = if (p * q).rem_euclid(2) == 0 { 1 } else { -1 } * eps.value();
            let expected = m.add(&other.transpose().scale(&z(sign))).unwrap();
            prop_assert_eq!(phi.block(0, *p), expected);
        }
    }
}
