use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use raminsep_core::exp::{e_eval, e_series, lambda_inverse, lambda_series};
use raminsep_core::schmid::pairing;
use raminsep_core::{Fe, FieldCtx, Series, EXACT};

fn field(p: u32, m: usize) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, m).unwrap())
}

/// Coefficients of `exp(sum_i X^{p^i} / p^i)` over Q, from
/// `n e_n = sum_{p^i <= n} e_{n - p^i}`.
fn e_rational(p: u64, n: usize) -> Vec<BigRational> {
    let mut e = vec![BigRational::zero(); n];
    e[0] = BigRational::one();
    for k in 1..n {
        let mut s = BigRational::zero();
        let mut q = 1usize;
        while q <= k {
            s += &e[k - q];
            q *= p as usize;
        }
        e[k] = s / BigRational::from_integer(BigInt::from(k));
    }
    e
}

fn mod_p(x: &BigRational, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let num = (x.numer() % &pb + &pb) % &pb;
    let den = (x.denom() % &pb + &pb) % &pb;
    assert!(!den.is_zero(), "coefficient is not p-integral");
    let (num, den) = (num.to_u64().unwrap(), den.abs().to_u64().unwrap());
    let mut inv = 1;
    for _ in 0..p - 2 {
        inv = inv * den % p;
    }
    (num * inv % p) as u32
}

#[test]
fn e_series_matches_rational_exponential() {
    for (p, n) in [(2u32, 120usize), (3, 100), (5, 80)] {
        let oracle: Vec<u32> = e_rational(p as u64, n).iter().map(|c| mod_p(c, p as u64)).collect();
        assert_eq!(e_series(p, n), oracle, "p = {p}");
    }
}

#[test]
fn log_derivative_to_200() {
    for p in [2u32, 3, 5] {
        let n = 200;
        let e = e_series(p, n);
        let l = lambda_series(p, n);
        for k in 0..n {
            let lhs = (k as u64 * e[k] as u64) % p as u64;
            let rhs = (0..=k).map(|j| e[j] as u64 * l[k - j] as u64).sum::<u64>() % p as u64;
            assert_eq!(lhs, rhs, "p = {p}, k = {k}");
        }
    }
}

fn random_series(k: &Arc<FieldCtx>, rng: &mut impl Rng, lo: i64, hi: i64) -> Series {
    let terms: Vec<(i64, Fe)> = (lo..=hi).map(|e| (e, k.from_index(rng.gen_range(0..k.q())))).collect();
    Series::from_terms(k, 't', &terms, EXACT)
}

fn random_unit(k: &Arc<FieldCtx>, rng: &mut impl Rng, hi: i64) -> Series {
    let v = rng.gen_range(-3..=3);
    let c = k.from_index(rng.gen_range(1..k.q()));
    let tail = random_series(k, rng, 1, hi);
    Series::one(k, 't', EXACT).add(&tail).shift(v).scale(c)
}

#[test]
fn lambda_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
        let k = field(p, m);
        for _ in 0..20 {
            let n = rng.gen_range(2..25);
            let alpha = random_series(&k, &mut rng, 1, n - 1).truncate(n);
            let u = e_eval(&alpha, n).unwrap();
            assert_eq!(lambda_inverse(&u).unwrap(), alpha);
            let u2 = Series::one(&k, 't', n).add(&random_series(&k, &mut rng, 1, n - 1)).truncate(n);
            assert_eq!(e_eval(&lambda_inverse(&u2).unwrap(), n).unwrap(), u2);
        }
    }
}

#[test]
fn e_is_multiplicative_modulo_t_pi() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..100 {
        let (p, m) = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)][trial % 5];
        let k = field(p, m);
        let i = rng.gen_range(1..5);
        let n = p as i64 * i;
        let a1 = random_series(&k, &mut rng, i, n + 3);
        let a2 = random_series(&k, &mut rng, i, n + 3);
        let lhs = e_eval(&a1.add(&a2), n).unwrap();
        let rhs = e_eval(&a1, n).unwrap().mul(&e_eval(&a2, n).unwrap()).truncate(n);
        assert_eq!(lhs, rhs, "trial {trial}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pairing_is_bilinear_with_expected_kernels(seed in any::<u64>(), which in 0usize..5) {
        let (p, m) = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1)][which];
        let k = field(p, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b1 = random_series(&k, &mut rng, -7, 2);
        let b2 = random_series(&k, &mut rng, -7, 2);
        let e1 = random_unit(&k, &mut rng, 9);
        let e2 = random_unit(&k, &mut rng, 9);
        let x = random_series(&k, &mut rng, -4, 3);
        let add = |a: u32, b: u32| (a + b) % p;
        prop_assert_eq!(pairing(&b1.add(&b2), &e1).unwrap(), add(pairing(&b1, &e1).unwrap(), pairing(&b2, &e1).unwrap()));
        prop_assert_eq!(pairing(&b1, &e1.mul(&e2)).unwrap(), add(pairing(&b1, &e1).unwrap(), pairing(&b1, &e2).unwrap()));
        prop_assert_eq!(pairing(&x.pth_power().sub(&x), &e1).unwrap(), 0);
        prop_assert_eq!(pairing(&b1, &e2.pth_power()).unwrap(), 0);
    }

    #[test]
    fn constant_moves_across_the_pairing(seed in any::<u64>(), which in 0usize..4, b in 1i64..10) {
        let (p, m) = [(2, 2), (2, 3), (3, 2), (5, 2)][which];
        prop_assume!(b % p as i64 != 0);
        let k = field(p, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let zeta = k.from_index(rng.gen_range(0..k.q()));
        let beta = random_series(&k, &mut rng, -b, 0);
        let lo = (b + p as i64 - 1) / p as i64;
        let alpha = random_series(&k, &mut rng, lo.max(1), b + 2);
        let prec = b + 3;
        let lhs = pairing(&beta.scale(zeta), &e_eval(&alpha, prec).unwrap()).unwrap();
        let rhs = pairing(&beta, &e_eval(&alpha.scale(zeta), prec).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
