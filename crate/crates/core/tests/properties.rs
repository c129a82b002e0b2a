use proptest::prelude::*;

use rexact::completion::{idem_split_decomposition, random_idempotent, IdemObject};
use rexact::complex::{cohomology_dims, cone, random_complex, ChainMap};
use rexact::conflation::{is_conflation, kernel_pair, ConflationClass};
use rexact::fixtures::{a3, a3_restricted_class};
use rexact::linalg::{format_rational, frac, parse_rational, Matrix};
use rexact::percolation::{q_is_zero, PercolatingSpec};
use rexact::rep::{cokernel, image, is_isomorphic, kernel, random_morphism, seeded_rng, DirectSum, KCPair, RepMorphism, Representation};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

fn object(rng: &mut ChaCha8Rng, parts: usize) -> Representation {
    let f = a3();
    let picks: Vec<Representation> = (0..parts).map(|_| f.named[rng.gen_range(0..6)].1.clone()).collect();
    DirectSum::new(&picks).object
}

fn automorphism(x: &Representation, rng: &mut ChaCha8Rng) -> RepMorphism {
    loop {
        let g = random_morphism(x, x, rng, 2);
        if g.is_iso() {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let x = frac(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn rank_nullity(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_i64(&refs);
        prop_assert_eq!(m.rank() + m.kernel().cols(), cols);
        prop_assert!((&m * &m.kernel()).is_zero());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn kernels_images_and_cokernels(parts in 1usize..3, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let (x, y) = (object(&mut rng, parts), object(&mut rng, parts));
        let f = random_morphism(&x, &y, &mut rng, 2);
        let (k, i) = kernel(&f);
        let (c, p) = cokernel(&f);
        let (im, incl, coim) = image(&f);
        prop_assert!(f.after(&i).is_zero() && p.after(&f).is_zero());
        prop_assert_eq!(incl.after(&coim), f.clone());
        prop_assert_eq!(k.total_dim() + im.total_dim(), x.total_dim());
        prop_assert_eq!(c.total_dim() + im.total_dim(), y.total_dim());
        prop_assert_eq!(x.composition_factors().iter().sum::<usize>(), x.total_dim());
    }

    #[test]
    fn isomorphism_is_an_equivalence(parts in 1usize..4, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let x = object(&mut rng, parts);
        let g = automorphism(&x, &mut rng);
        let dst = g.dst.clone();
        prop_assert!(is_isomorphic(&x, &x));
        prop_assert!(is_isomorphic(&x, &dst) && is_isomorphic(&dst, &x));
        let y = object(&mut rng, parts);
        let z = object(&mut rng, parts);
        if is_isomorphic(&x, &y) && is_isomorphic(&y, &z) {
            prop_assert!(is_isomorphic(&x, &z));
        }
    }

    #[test]
    fn conflations_are_invariant_under_conjugation(parts in 1usize..3, seed in any::<u64>()) {
        let f = a3();
        let classes = [ConflationClass::all_short_exact(&f.algebra), a3_restricted_class(&f)];
        let mut rng = seeded_rng(seed);
        let (y, z) = (object(&mut rng, parts), object(&mut rng, parts));
        let pair = kernel_pair(&random_morphism(&y, &z, &mut rng, 2));
        for _ in 0..3 {
            let a = automorphism(pair.left(), &mut rng);
            let b = automorphism(pair.middle(), &mut rng);
            let c = automorphism(pair.right(), &mut rng);
            let conj = KCPair::new(
                b.after(&pair.inflation).after(&a.inverse().unwrap()),
                c.after(&pair.deflation).after(&b.inverse().unwrap()),
            ).unwrap();
            for cl in &classes {
                prop_assert_eq!(is_conflation(cl, &conj), is_conflation(cl, &pair));
            }
        }
    }

    #[test]
    fn cones_are_complexes(seed in any::<u64>()) {
        let f = a3();
        let pool: Vec<Representation> = f.named.iter().map(|(_, r)| r.clone()).collect();
        let mut rng = seeded_rng(seed);
        let x = random_complex(&pool, rng.gen_range(-1..=1), 3, &mut rng, 2);
        let id = ChainMap::identity(&x);
        let c = cone(&id);
        prop_assert!(c.square_zero_failure().is_none());
        prop_assert!(cohomology_dims(&c).iter().all(|&(_, d)| d == 0));
        prop_assert_eq!(x.shift(1).shift(-1), x);
    }

    #[test]
    fn idempotents_split(parts in 1usize..4, seed in any::<u64>()) {
        let f = a3();
        let mut rng = seeded_rng(seed);
        let ps: Vec<Representation> = (0..parts).map(|_| f.named[rng.gen_range(0..6)].1.clone()).collect();
        let e = random_idempotent(&ps, &mut rng);
        prop_assert_eq!(e.after(&e), e.clone());
        let a = IdemObject::new(&e.src, &e).unwrap();
        prop_assert!(idem_split_decomposition(&a).verify());
    }

    #[test]
    fn quotient_zero_test_is_linear(parts in 1usize..3, seed in any::<u64>()) {
        let f = a3();
        let spec = PercolatingSpec::serre(&ConflationClass::all_short_exact(&f.algebra), vec![0]);
        let mut rng = seeded_rng(seed);
        let (x, y) = (object(&mut rng, parts), object(&mut rng, parts));
        let g = random_morphism(&x, &y, &mut rng, 2);
        let h = random_morphism(&x, &y, &mut rng, 2);
        if q_is_zero(&spec, &g).unwrap() && q_is_zero(&spec, &h).unwrap() {
            prop_assert!(q_is_zero(&spec, &g.add(&h)).unwrap());
        }
        prop_assert_eq!(q_is_zero(&spec, &g).unwrap(), q_is_zero(&spec, &g.neg()).unwrap());
    }
}
