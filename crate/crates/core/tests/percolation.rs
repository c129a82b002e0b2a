use std::sync::Arc;

use rexact::axioms::Verdict;
use rexact::conflation::{is_split, ConflationClass};
use rexact::fixtures::{a3, Fixture};
use rexact::linalg::{q, Matrix};
use rexact::percolation::exactness::{ext2_into_a, l2_suite};
use rexact::percolation::roof::*;
use rexact::percolation::verdier::{check_c2op, verdier_probe};
use rexact::percolation::*;
use rexact::probe::{ProbeSet, ProbeSpec};
use rexact::quiver::QuiverAlgebra;
use rexact::rep::{hom_basis, hom_dim, random_morphism, seeded_rng, DirectSum, RepMorphism, Representation};
use rexact::Exec;

use rand::Rng;

fn setup() -> (Fixture, PercolatingSpec, ProbeSet) {
    let f = a3();
    let c = ConflationClass::all_short_exact(&f.algebra);
    let spec = PercolatingSpec::serre(&c, vec![0]);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    (f, spec, probes)
}

/// `e = e2 + e3`: restriction to the full subquiver `2 <- 3`.
fn ka2() -> Arc<QuiverAlgebra> {
    QuiverAlgebra::new(vec!["2".into(), "3".into()], vec![("b".into(), "3".into(), "2".into())], vec![]).unwrap()
}

fn restrict(alg: &Arc<QuiverAlgebra>, x: &Representation) -> Representation {
    Representation::new(alg, vec![x.dim(1), x.dim(2)], vec![x.arrow_map(1).clone()]).unwrap()
}

/// The image of a roof under `x -> ex`: `e(f) e(s)^{-1}` at vertices 2 and 3.
fn restrict_roof(r: &Roof) -> Vec<Matrix> {
    let s = r.s();
    (1..3)
        .map(|v| &r.leg_f.blocks[v] * &s.blocks[v].inverse().expect("weak isomorphisms are invertible away from A"))
        .collect()
}

#[test]
fn s1_is_percolating() {
    let (_, spec, probes) = setup();
    for r in check_percolating(&spec, &probes, Exec::Parallel) {
        assert_eq!(r.verdict, Verdict::HoldsOnProbes, "{}", r.axiom);
        assert!(r.checked > 0);
    }
}

#[test]
fn zero_subcategory_is_percolating() {
    let (f, _, probes) = setup();
    let spec = PercolatingSpec::serre(&ConflationClass::all_short_exact(&f.algebra), vec![]);
    for r in check_percolating(&spec, &probes, Exec::Sequential) {
        assert_eq!(r.verdict, Verdict::HoldsOnProbes);
    }
    for (_, x) in &f.named {
        assert_eq!(quotient_hom_dim(&spec, x, x).unwrap(), hom_dim(x, x));
    }
}

#[test]
fn quotient_homs_match_the_corner_algebra() {
    let (f, spec, probes) = setup();
    let e = ka2();
    for o in &probes.objects {
        for p in &probes.objects {
            let expect = hom_dim(&restrict(&e, &o.rep), &restrict(&e, &p.rep));
            assert_eq!(quotient_hom_dim(&spec, &o.rep, &p.rep).unwrap(), expect, "{} {}", o.name, p.name);
        }
    }
    for (_, x) in &f.named {
        for (_, y) in &f.named {
            assert_eq!(roof_hom_dim(&spec, x, y).unwrap(), quotient_hom_dim(&spec, x, y).unwrap());
        }
    }
    assert_eq!(quotient_hom_dim(&spec, f.get("S1"), f.get("S1")).unwrap(), 0);
    assert_eq!(quotient_hom_dim(&spec, f.get("P2"), f.get("S2")).unwrap(), 1);
}

#[test]
fn weak_isos_are_maps_with_kernel_and_cokernel_in_a() {
    let (_, spec, probes) = setup();
    let mut found = 0;
    for m in probes.all_morphisms() {
        let ker = rexact::rep::kernel(&m.map).0;
        let cok = rexact::rep::cokernel(&m.map).0;
        let expect = ker.dims()[1..].iter().chain(&cok.dims()[1..]).all(|&d| d == 0);
        let w = is_weak_iso(&spec, &m.map, 2);
        assert_eq!(w.is_some(), expect, "{}", m.label);
        if let Some(w) = w {
            assert!(w.len() <= 2 && w.verify(&spec));
            assert_eq!(w.composite(), m.map);
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn zero_test_agrees_with_restriction() {
    let (_, spec, probes) = setup();
    let mut rng = seeded_rng(31);
    let n = probes.len();
    let (mut zero, mut total) = (0, 0);
    while total < 200 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let f = random_morphism(&probes.objects[i].rep, &probes.objects[j].rep, &mut rng, 2);
        let expect = f.blocks[1].is_zero() && f.blocks[2].is_zero();
        assert_eq!(q_is_zero(&spec, &f).unwrap(), expect);
        let g = random_morphism(&probes.objects[i].rep, &probes.objects[j].rep, &mut rng, 2);
        if expect && q_is_zero(&spec, &g).unwrap() {
            assert!(q_is_zero(&spec, &f.add(&g)).unwrap());
        }
        zero += expect as usize;
        total += 1;
    }
    assert!(zero > 0 && zero < total);
}

/// Roofs between probe objects: quotient basis roofs, honest probe maps,
/// and each of those precomposed with a weak isomorphism.
fn roofs(spec: &PercolatingSpec, probes: &ProbeSet, i: usize, j: usize) -> Vec<Roof> {
    let (x, y) = (&probes.objects[i].rep, &probes.objects[j].rep);
    let mut out = quotient_hom_roofs(spec, x, y).unwrap();
    out.extend(probes.morphisms(i, j).iter().map(|m| Roof::of_map(&m.map)));
    let (_, incl) = a_reject(spec, x).unwrap();
    let extra: Vec<Roof> = out
        .iter()
        .map(|rf| {
            let (_, t, _) = rexact::rep::pullback(&rf.s(), &incl);
            Roof::new(spec, &rf.s().after(&t), &rf.leg_f.after(&t)).unwrap()
        })
        .collect();
    out.extend(extra);
    out
}

#[test]
fn roof_equality_matches_restriction() {
    let (_, spec, probes) = setup();
    let basic = probes.basic_indices();
    for &i in &basic {
        for &j in &basic {
            let rs = roofs(&spec, &probes, i, j);
            let images: Vec<Vec<Matrix>> = rs.iter().map(restrict_roof).collect();
            for a in 0..rs.len() {
                assert!(roof_equal(&spec, &rs[a], &rs[a]).unwrap());
                for b in 0..rs.len() {
                    let eq = roof_equal(&spec, &rs[a], &rs[b]).unwrap();
                    assert_eq!(eq, images[a] == images[b]);
                    assert_eq!(eq, roof_equal(&spec, &rs[b], &rs[a]).unwrap());
                }
            }
        }
    }
}

#[test]
fn roof_composition_is_associative() {
    let (_, spec, probes) = setup();
    let basic = probes.basic_indices();
    let mut rng = seeded_rng(32);
    let mut checked = 0;
    for _ in 0..60 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| basic[rng.gen_range(0..basic.len())];
        let (i, j, k, l) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (a, b, c) = (roofs(&spec, &probes, i, j), roofs(&spec, &probes, j, k), roofs(&spec, &probes, k, l));
        if a.is_empty() || b.is_empty() || c.is_empty() {
            continue;
        }
        let (a, b, c) = (&a[rng.gen_range(0..a.len())], &b[rng.gen_range(0..b.len())], &c[rng.gen_range(0..c.len())]);
        let left = roof_compose(&spec, &roof_compose(&spec, a, b).unwrap(), c).unwrap();
        let right = roof_compose(&spec, a, &roof_compose(&spec, b, c).unwrap()).unwrap();
        assert!(roof_equal(&spec, &left, &right).unwrap());
        let expect: Vec<Matrix> = (0..2)
            .map(|v| &(&restrict_roof(c)[v] * &restrict_roof(b)[v]) * &restrict_roof(a)[v])
            .collect();
        assert_eq!(restrict_roof(&left), expect);
        let id = Roof::of_map(&RepMorphism::identity(a.source()));
        assert!(roof_equal(&spec, &roof_compose(&spec, &id, a).unwrap(), a).unwrap());
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn maps_through_a_are_zero_roofs() {
    let (f, spec, _) = setup();
    // An endomorphism of S1+P2 factoring through S1 is nonzero in E but
    // not in E/A.
    let sum = DirectSum::new(&[f.get("S1").clone(), f.get("P2").clone()]);
    let to_p2 = hom_basis(f.get("S1"), f.get("P2")).remove(0);
    let through = sum.injections[1].after(&to_p2).after(&sum.projections[0]);
    assert!(!through.is_zero());
    let id = RepMorphism::identity(&sum.object);
    assert!(roof_equal(&spec, &Roof::of_map(&id), &Roof::of_map(&id.add(&through))).unwrap());
    assert!(!roof_equal(&spec, &Roof::of_map(&id), &Roof::of_map(&id.scale(&q(2)))).unwrap());
}

#[test]
fn lifting_roof_complexes() {
    let (f, spec, _) = setup();
    let p = hom_basis(f.get("P2"), f.get("S2")).remove(0);
    let inv = Roof::new(&spec, &p, &RepMorphism::identity(f.get("P2"))).unwrap();
    // S2 ~> P2 -> S2 composes to the identity in E/A, so it is not a complex.
    let bad = RoofComplex {
        lo: 0,
        entries: vec![f.get("S2").clone(), f.get("P2").clone(), f.get("S2").clone()],
        diffs: vec![inv.clone(), Roof::of_map(&p)],
    };
    assert!(lift_complex(&spec, &bad).is_err());
    // An A-stalk in the middle: S1+P2 -> S1 -> P3 squares to zero in E/A
    // only.
    let sum = DirectSum::new(&[f.get("S1").clone(), f.get("P2").clone()]);
    let to_s1 = sum.projections[0].clone();
    let from_s1 = hom_basis(f.get("S1"), f.get("P3")).remove(0);
    assert!(!from_s1.after(&to_s1).is_zero());
    let absorbed = RoofComplex {
        lo: -1,
        entries: vec![sum.object.clone(), f.get("S1").clone(), f.get("P3").clone()],
        diffs: vec![Roof::of_map(&to_s1), Roof::of_map(&from_s1)],
    };
    let l = lift_complex(&spec, &absorbed).unwrap();
    assert_eq!(l.comparisons.len(), 3);
    for (k, w) in l.comparisons.iter().enumerate() {
        assert!(w.verify(&spec));
        assert_eq!(w.src, l.complex.entry(k as i32 - 1));
    }
}

#[test]
fn verdier_suites() {
    let (f, spec, probes) = setup();
    let r = verdier_probe(&spec, &probes, Exec::Parallel).unwrap();
    assert!(r.passed(), "{:?}", r.suites);
    assert!(r.suites.iter().all(|s| s.checked > 0));
    let t = r.towers.iter().find(|t| t.label == probes.morphisms(probes.index_of("P2").unwrap(), probes.index_of("S2").unwrap())[0].label).unwrap();
    assert_eq!(t.pieces, vec![(-1, f.get("S1").clone())]);
    let seq = verdier_probe(&spec, &probes, Exec::Sequential).unwrap();
    assert_eq!(
        seq.suites.iter().map(|s| s.checked).collect::<Vec<_>>(),
        r.suites.iter().map(|s| s.checked).collect::<Vec<_>>()
    );
}

#[test]
fn c2op_diagrams() {
    let (_, spec, probes) = setup();
    let r = check_c2op(&spec, &probes, Exec::Parallel);
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.checked > 0);
    for (label, d) in &r.found {
        assert!(d.verify(&spec), "{label}");
        assert_eq!(is_split(&d.bottom), d.top.left().is_zero(), "{label}");
    }
    let zero = PercolatingSpec::serre(&spec.class, vec![]);
    assert_eq!(check_c2op(&zero, &probes, Exec::Parallel).checked, 0);
}

#[test]
fn exactness_of_the_quotient() {
    let (_, spec, probes) = setup();
    let e = ext2_into_a(&spec, &probes, Exec::Parallel);
    assert!(e.passed() && e.checked > 0);
    let r = l2_suite(&spec, &probes, 50, 7, Exec::Parallel).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.checked, 50);
}

#[test]
fn non_serre_specs_are_refused_for_arithmetic() {
    let (f, _, _) = setup();
    let c = ConflationClass::all_short_exact(&f.algebra);
    let explicit = PercolatingSpec::explicit(&c, vec![("S1".into(), f.get("S1").clone())]);
    assert!(quotient_hom_dim(&explicit, f.get("P2"), f.get("P2")).is_err());
    let sum = DirectSum::new(&[f.get("S1").clone(), f.get("S1").clone()]).object;
    assert!(explicit.contains(f.get("S1")) && !explicit.contains(&sum));
}
