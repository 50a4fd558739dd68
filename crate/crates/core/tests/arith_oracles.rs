use pcompact::arith::modular::{cyclotomic_factors_mod_p, is_prime};
use pcompact::arith::{embed_matrices, lift_cyclotomic_factor, ArithError, CyclotomicNumber, UnramifiedRing};
use pcompact::catalog::CatalogEntry;
use pcompact::reflection::close_group;
use proptest::prelude::*;

/// Φ₁₂ = x⁴ − x² + 1, reduced mod p.
fn phi12_mod(p: u64) -> Vec<u64> {
    vec![1, 0, p - 1, 0, 1]
}

/// Remainder of `a` by the monic `b` over F_p, by schoolbook division.
fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let d = b.len() - 1;
    while a.len() > d {
        let c = a.pop().unwrap();
        let shift = a.len() - d;
        for (i, &bi) in b[..d].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bi % p) % p;
        }
    }
    a
}

#[test]
fn phi12_mod_7_by_exhaustive_search() {
    let p = 7;
    let f = phi12_mod(p);
    let roots: Vec<u64> = (0..p).filter(|&x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0).collect();
    assert!(roots.is_empty());
    let quadratics: Vec<Vec<u64>> = (0..p)
        .flat_map(|b| (0..p).map(move |a| vec![b, a, 1]))
        .filter(|q| rem(f.clone(), q, p).iter().all(|&c| c == 0))
        .collect();
    assert_eq!(quadratics.len(), 2);
    let mut found = cyclotomic_factors_mod_p(p, 12).unwrap();
    found.sort();
    let mut expected = quadratics.clone();
    expected.sort();
    assert_eq!(found, expected);
    assert!(quadratics.contains(&lift_cyclotomic_factor(7, 12, 1).unwrap()));
}

#[test]
fn lift_degrees_match_multiplicative_order() {
    assert_eq!(lift_cyclotomic_factor(13, 12, 1).unwrap().len(), 2);
    assert_eq!(lift_cyclotomic_factor(13, 24, 1).unwrap().len(), 3);
}

#[test]
fn g7_embeds_at_13() {
    let gens = CatalogEntry::G7.generators(None).unwrap();
    let e = embed_matrices(&gens, 13, 6).unwrap();
    assert_eq!(e.matrices.len(), 3);
    assert_eq!(e.matrices[0].rows(), vec![vec![13u64.pow(6) - 1, 0], vec![0, 1]]);
}

/// Every factor of Φ₂₄ mod 7 is tried by hand; each leaves some entry outside Z₇.
#[test]
fn g7_fails_at_7_for_every_factor() {
    let gens = CatalogEntry::G7.generators(None).unwrap();
    let factors = cyclotomic_factors_mod_p(7, 24).unwrap();
    assert_eq!(factors.len(), 4);
    for index in 0..factors.len() {
        let ring = UnramifiedRing::for_factor(7, 24, 4, index).unwrap();
        let all_in_zp = gens.iter().flat_map(|m| m.entries()).all(|x| ring.embed(x).unwrap().is_in_zp());
        assert!(!all_in_zp, "factor {index}");
    }
    assert_eq!(embed_matrices(&gens, 7, 4).unwrap_err(), ArithError::NoEmbedding { p: 7, n: 24 });
}

#[test]
fn one_over_sqrt_two_times_zeta_lands_in_z13() {
    let f = pcompact::CyclotomicField::new(24);
    let z = |e| CyclotomicNumber::zeta_pow(&f, e);
    let x = &z(1) * &(&z(3) + &z(21)).inv().unwrap();
    let any = (0..cyclotomic_factors_mod_p(13, 24).unwrap().len())
        .any(|i| UnramifiedRing::for_factor(13, 24, 5, i).unwrap().embed(&x).unwrap().is_in_zp());
    assert!(any);
}

#[test]
fn primes_congruent_to_one_mod_twelve_embed_g7() {
    let gens = CatalogEntry::G7.generators(None).unwrap();
    for p in (13..=100).filter(|&p| is_prime(p) && p % 12 == 1) {
        assert!(embed_matrices(&gens, p, 3).is_ok(), "p={p}");
    }
    for p in [5u64, 7, 11, 17, 19, 23] {
        assert!(embed_matrices(&gens, p, 3).is_err(), "p={p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_is_a_homomorphism(i in 0usize..144, j in 0usize..144, k in 2u32..7) {
        let g = close_group(&CatalogEntry::G7.generators(None).unwrap(), 1000).unwrap();
        let (a, b) = (g.element(i).clone(), g.element(j).clone());
        let ab = a.mul(&b);
        let e = embed_matrices(&[a, b, ab], 13, k).unwrap();
        prop_assert_eq!(e.matrices[0].mul(&e.matrices[1]), e.matrices[2].clone());
    }

    #[test]
    fn precision_is_compatible(p in prop::sample::select(vec![13u64, 37, 61, 73]), k in 1u32..7) {
        let gens = CatalogEntry::G7.generators(None).unwrap();
        let lo = embed_matrices(&gens, p, k).unwrap();
        let hi = embed_matrices(&gens, p, k + 1).unwrap();
        prop_assert_eq!(lo.factor_index, hi.factor_index);
        for (l, h) in lo.matrices.iter().zip(&hi.matrices) {
            prop_assert_eq!(h.reduce_to(k), l.clone());
        }
    }
}
