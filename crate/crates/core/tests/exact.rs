use num_traits::{One, Zero};
use plie_core::exact::{
    determinant, format_rational, int, inverse, parse_rational, rank, ratio, solve_linear, ExactScalar, Form, Tensor,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Leibniz expansion over all permutations.
fn leibniz(m: &Tensor) -> ExactScalar {
    let n = m.shape()[0];
    fn perms(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                perms(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut all = Vec::new();
    perms(n, &mut Vec::new(), &mut vec![false; n], &mut all);
    let mut total = ExactScalar::zero();
    for p in all {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = if inversions % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() };
        for (i, &pi) in p.iter().enumerate() {
            term *= m.get(&[i, pi]);
        }
        total += term;
    }
    total
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Tensor {
    Tensor::from_fn(&[n, n], |_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
}

#[test]
fn solve_hundred_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut solved = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, n);
        let b = Tensor::vector((0..n).map(|_| int(rng.gen_range(-9..=9))).collect());
        match solve_linear(&m, &b) {
            Ok(x) => {
                assert_eq!(m.mat_vec(x.entries()).unwrap(), b.entries().to_vec());
                assert!(!leibniz(&m).is_zero());
                solved += 1;
            }
            Err(_) => assert!(leibniz(&m).is_zero()),
        }
    }
    assert!(solved > 50);
}

#[test]
fn determinant_matches_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, n);
        let det = determinant(&m).unwrap();
        assert_eq!(det, leibniz(&m));
        assert_eq!(rank(&m).unwrap() == n, !det.is_zero());
    }
}

#[test]
fn inverse_is_two_sided() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n);
        if let Ok(inv) = inverse(&m) {
            assert_eq!(m.mat_mul(&inv).unwrap(), Tensor::identity(n));
            assert_eq!(inv.mat_mul(&m).unwrap(), Tensor::identity(n));
        }
    }
}

#[test]
fn singular_system_reports_rank() {
    let m = Tensor::from_vec(&[2, 2], vec![int(1), int(2), int(2), int(4)]).unwrap();
    let err = solve_linear(&m, &Tensor::vector(vec![int(1), int(1)])).unwrap_err();
    assert!(matches!(err, plie_core::CoreError::Singular { size: 2, rank: 1 }));
}

#[test]
fn rational_text_forms() {
    assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
    assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    assert_eq!(format_rational(&ratio(8, 4)), "2");
    assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
    for bad in ["", "1/0", "x", "1.5", "1/-2", "--1"] {
        assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
    }
}

fn small_form(n: usize) -> impl Strategy<Value = Form> {
    proptest::collection::vec((proptest::collection::btree_set(0..n, 0..=n), -3i64..=3), 0..4).prop_map(
        move |terms| {
            let mut f = Form::zero(n);
            for (idx, c) in terms {
                let idx: Vec<usize> = idx.into_iter().collect();
                f = f.add(&Form::monomial(n, &idx, int(c)).unwrap()).unwrap();
            }
            f
        },
    )
}

fn homogeneous(n: usize) -> impl Strategy<Value = (usize, Form)> {
    (0..=n).prop_flat_map(move |k| small_form(n).prop_map(move |f| (k, f.homogeneous_part(k))))
}

proptest! {
    #[test]
    fn rational_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let x = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn wedge_graded_commutative((p, a) in homogeneous(4), (q, b) in homogeneous(4)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let expect = if (p * q) % 2 == 0 { ba } else { ba.neg() };
        prop_assert_eq!(ab, expect);
    }

    #[test]
    fn wedge_associative(a in small_form(4), b in small_form(4), c in small_form(4)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_distributes(a in small_form(3), b in small_form(3), c in small_form(3)) {
        let left = a.wedge(&b.add(&c).unwrap()).unwrap();
        let right = a.wedge(&b).unwrap().add(&a.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn odd_forms_square_to_zero(i in 0usize..4, j in 0usize..4, c in -3i64..=3, d in -3i64..=3) {
        let a = Form::basis(4, i).scale(&int(c)).add(&Form::basis(4, j).scale(&int(d))).unwrap();
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }
}

#[test]
fn two_form_matrix_is_antisymmetric() {
    let f = Form::basis(3, 0).wedge(&Form::basis(3, 2)).unwrap();
    let m = f.to_matrix().unwrap();
    assert_eq!(m.get(&[0, 2]), &int(1));
    assert_eq!(m.get(&[2, 0]), &int(-1));
    assert_eq!(m.transpose().unwrap(), m.neg_all());
}

trait NegAll {
    fn neg_all(&self) -> Tensor;
}

impl NegAll for Tensor {
    fn neg_all(&self) -> Tensor {
        Tensor::from_vec(self.shape(), self.entries().iter().map(|x| -x).collect()).unwrap()
    }
}
