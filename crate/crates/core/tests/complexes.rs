use rexact::complex::*;
use rexact::conflation::ConflationClass;
use rexact::fixtures::{a3, a3_restricted_class};
use rexact::linalg::q;
use rexact::rep::{cokernel, kernel, random_morphism, seeded_rng, Representation};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn pool() -> Vec<Representation> {
    a3().named.into_iter().map(|(_, r)| r).collect()
}

/// `ker g -> Y -> Y' -> coker g` for a random `g`, an exact complex.
fn exact_complex(pool: &[Representation], lo: i32, rng: &mut ChaCha8Rng) -> Complex {
    let y0 = pool[rng.gen_range(0..pool.len())].clone();
    let y1 = pool[rng.gen_range(0..pool.len())].clone();
    let g = random_morphism(&y0, &y1, rng, 2);
    let (k, i) = kernel(&g);
    let (c, p) = cokernel(&g);
    Complex::new(&y0.algebra().clone(), lo, vec![k, y0, y1, c], vec![i, g, p]).unwrap()
}

fn random_chain_map(x: &Complex, y: &Complex, rng: &mut ChaCha8Rng) -> ChainMap {
    let mut acc = ChainMap::zero(x, y);
    for b in chain_map_basis(x, y) {
        acc = acc.add(&b.scale(&q(rng.gen_range(-2..=2))));
    }
    acc
}

#[test]
fn ambient_acyclicity_matches_cohomology() {
    let f = a3();
    let all = ConflationClass::all_short_exact(&f.algebra);
    let mut rng = seeded_rng(11);
    for _ in 0..60 {
        let x = random_complex(&pool(), 0, 3, &mut rng, 2);
        let exact = cohomology_dims(&x).iter().all(|&(_, d)| d == 0);
        assert_eq!(is_acyclic(&all, &x), exact);
    }
}

#[test]
fn cone_of_map_between_acyclics_is_acyclic() {
    let f = a3();
    let all = ConflationClass::all_short_exact(&f.algebra);
    let mut rng = seeded_rng(12);
    for _ in 0..40 {
        let x = exact_complex(&pool(), rng.gen_range(-1..=1), &mut rng);
        let y = exact_complex(&pool(), rng.gen_range(-1..=1), &mut rng);
        assert!(is_acyclic(&all, &x) && is_acyclic(&all, &y));
        let m = random_chain_map(&x, &y, &mut rng);
        assert!(m.commutation_failure().is_none());
        assert!(is_acyclic(&all, &cone(&m)));
    }
}

#[test]
fn truncation_triangle() {
    let f = a3();
    let classes = [ConflationClass::all_short_exact(&f.algebra), a3_restricted_class(&f)];
    let mut rng = seeded_rng(13);
    let mut defined = 0;
    for k in 0..120 {
        let x = random_complex(&pool(), 0, 4, &mut rng, 2);
        let n = rng.gen_range(0..=3);
        let c = &classes[k % 2];
        let Ok((below, m)) = truncate_below(c, &x, n) else {
            continue;
        };
        defined += 1;
        assert!(m.commutation_failure().is_none());
        let (above, m2) = truncate_above(c, &x, n).unwrap();
        assert!(m2.commutation_failure().is_none());
        assert!(m2.after(&m).is_zero() || homotopy_between(&m2.after(&m), &ChainMap::zero(&below, &above)).is_some());
        let lhs = minimal_reduce(&cone(&m)).complex;
        let rhs = minimal_reduce(&above).complex;
        assert!(complexes_isomorphic(&lhs, &rhs), "{x:?} at {n}");
    }
    assert!(defined >= 60, "only {defined} truncations defined");
}

#[test]
fn reduction_of_cone_of_identity_vanishes() {
    let mut rng = seeded_rng(14);
    for _ in 0..20 {
        let x = random_complex(&pool(), -1, 3, &mut rng, 3);
        let r = minimal_reduce(&cone(&ChainMap::identity(&x)));
        assert!(r.complex.is_zero());
        assert!(r.verify());
    }
}

#[test]
fn totalization_of_acyclic_columns() {
    let f = a3();
    let all = ConflationClass::all_short_exact(&f.algebra);
    let mut rng = seeded_rng(15);
    for _ in 0..30 {
        let ncols = rng.gen_range(2..=3);
        let cols: Vec<Complex> = (0..ncols).map(|_| exact_complex(&pool(), 0, &mut rng)).collect();
        let mut maps: Vec<ChainMap> = Vec::new();
        for k in 0..ncols - 1 {
            let basis = chain_map_basis(&cols[k], &cols[k + 1]);
            let m = match maps.last() {
                None => random_chain_map(&cols[k], &cols[k + 1], &mut rng),
                Some(prev) => killing_combination(prev, &cols[k + 1], &basis, &mut rng),
            };
            maps.push(m);
        }
        let dc = DoubleComplex::from_columns(&f.algebra, 0, cols, maps).unwrap();
        let tot = dc.totalize().unwrap();
        assert!(is_acyclic(&all, &tot));
    }
}

fn killing_combination(prev: &ChainMap, z: &Complex, basis: &[ChainMap], rng: &mut ChaCha8Rng) -> ChainMap {
    use rexact::linalg::Matrix;
    let y = &prev.dst;
    if basis.is_empty() {
        return ChainMap::zero(y, z);
    }
    let cols: Vec<Vec<_>> = basis.iter().map(|b| b.after(prev).coords()).collect();
    let len = cols[0].len();
    let ker = Matrix::from_columns(len, &cols).kernel();
    let mut acc = ChainMap::zero(y, z);
    for c in 0..ker.cols() {
        let coeff = q(rng.gen_range(-2..=2));
        for (b, v) in basis.iter().zip(ker.column(c)) {
            acc = acc.add(&b.scale(&(&v * &coeff)));
        }
    }
    assert!(acc.after(prev).is_zero());
    acc
}

#[test]
fn restricted_class_distinguishes_removed_sequence_complex() {
    let f = a3();
    let s = rexact::fixtures::a3_removed_sequence(&f);
    let x = Complex::new(
        &f.algebra,
        -2,
        vec![f.get("S2").clone(), f.get("I2").clone(), f.get("S3").clone()],
        vec![s.inflation.clone(), s.deflation.clone()],
    )
    .unwrap();
    assert!(!is_acyclic(&a3_restricted_class(&f), &x));
}
