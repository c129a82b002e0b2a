use rexact::axioms::ClassCertificate;
use rexact::complex::Ternary;
use rexact::completion::*;
use rexact::conflation::{is_conflation, ConflationClass};
use rexact::derived::derived_hom_table;
use rexact::fixtures::{a3, a3_removed_sequence, a3_restricted_class, k4};
use rexact::hull::*;
use rexact::probe::{ProbeSet, ProbeSpec};
use rexact::rep::{hom_basis, hom_dim, is_isomorphic, kernel, random_morphism, seeded_rng, DirectSum, KCPair, RepMorphism, Representation};
use rexact::Exec;

use rand::Rng;

#[test]
fn compressed_hom_dimension_is_the_summand_hom_dimension() {
    let f = a3();
    let mut rng = seeded_rng(41);
    for _ in 0..30 {
        let i = rng.gen_range(0..6);
        let j = rng.gen_range(0..6);
        let k = rng.gen_range(0..6);
        let parts = [f.named[i].1.clone(), f.named[j].1.clone()];
        let e = random_idempotent(&parts, &mut rng);
        let a = IdemObject::new(&e.src, &e).unwrap();
        let b = IdemObject::whole(&f.named[k].1);
        let (im, _, _) = a.realize();
        assert_eq!(idem_hom_basis(&a, &b).len(), hom_dim(&im, &b.carrier));
        assert_eq!(idem_hom_basis(&b, &a).len(), hom_dim(&b.carrier, &im));
        for g in idem_hom_basis(&a, &b) {
            assert!(a.is_morphism_to(&b, &g));
        }
    }
}

#[test]
fn seeded_idempotents_split() {
    let f = a3();
    let mut rng = seeded_rng(42);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let parts: Vec<Representation> = (0..n).map(|_| f.named[rng.gen_range(0..6)].1.clone()).collect();
        let e = random_idempotent(&parts, &mut rng);
        let a = IdemObject::new(&e.src, &e).unwrap();
        let d = idem_split_decomposition(&a);
        assert!(d.verify());
        let (im, r, s) = a.realize();
        assert_eq!(r.after(&s), RepMorphism::identity(&im));
        assert_eq!(s.after(&r), e);
        let (im2, _, _) = a.complement().realize();
        assert!(is_isomorphic(&DirectSum::new(&[im, im2]).object, &e.src));
    }
}

#[test]
fn a3_modules_are_already_weakly_idempotent_complete() {
    let f = a3();
    let t = wic_build(&f.named, 4, WicSearch::Sums, 1).unwrap();
    assert_eq!(t.stabilized_at, Some(0));
    let single = wic_build(&f.named[..1], 4, WicSearch::Listed, 1).unwrap();
    assert_eq!(single.stabilized_at, Some(0));
}

#[test]
fn k4_levels_and_provenance() {
    let (fx, gens) = k4();
    let t = wic_build(&gens, 8, WicSearch::Listed, 7).unwrap();
    assert_eq!(t.stabilized_at, Some(3));
    assert_eq!(t.levels.len(), 4);
    for (n, name) in [(1, "S1"), (2, "S2"), (3, "S3")] {
        let objs = &t.levels[n].new_objects;
        assert_eq!(objs.len(), 1);
        assert!(is_isomorphic(&objs[0].object.realize().0, fx.get(name)));
    }
    // Each new object is the kernel of a retraction between earlier objects.
    for n in 1..t.levels.len() {
        let earlier: Vec<&WicObject> = t.levels[..n].iter().flat_map(|l| &l.new_objects).collect();
        for o in &t.levels[n].new_objects {
            let w = o.provenance.as_ref().unwrap();
            let src = earlier.iter().find(|e| e.name == w.source).unwrap();
            let dst = earlier.iter().find(|e| e.name == w.target).unwrap();
            assert_eq!(w.retraction.after(&w.section), dst.object.idempotent);
            assert_eq!(o.object.idempotent, src.object.idempotent.sub(&w.section.after(&w.retraction)));
        }
    }
    let sums = wic_build(&gens, 8, WicSearch::Sums, 7).unwrap();
    assert_eq!(sums.stabilized_at, Some(1));
    for name in ["S1", "S2", "S3"] {
        assert!(sums.levels[1].new_objects.iter().any(|o| is_isomorphic(&o.object.realize().0, fx.get(name))));
    }
}

#[test]
fn k4_derived_tables_survive_completion() {
    let (fx, gens) = k4();
    let c = ConflationClass::all_short_exact(&fx.algebra);
    let t = wic_build(&gens, 8, WicSearch::Listed, 7).unwrap();
    let shifts: Vec<i32> = (-2..=2).collect();
    let before: Vec<Representation> = gens.iter().map(|(_, g)| g.clone()).collect();
    let after: Vec<IdemObject> = t.levels[0].new_objects.iter().map(|o| o.object.clone()).collect();
    let tb = derived_hom_table(&c, &before, &shifts, Exec::Parallel).unwrap();
    assert_eq!(tb, idem_derived_hom_table(&c, &after, &shifts, Exec::Sequential).unwrap());
    let all: Vec<IdemObject> = t.objects().map(|o| o.object.clone()).collect();
    let ta = idem_derived_hom_table(&c, &all, &shifts, Exec::Parallel).unwrap();
    let mut k = 0;
    for a in &all {
        for b in &all {
            for &s in &shifts {
                let expect = if s == 0 { idem_hom_basis(a, b).len() } else { 0 };
                assert_eq!(ta[k], expect);
                k += 1;
            }
        }
    }
}

#[test]
fn inherited_conflations() {
    let f = a3();
    let c = ConflationClass::all_short_exact(&f.algebra);
    let cert = ClassCertificate::abelian();
    let s = a3_removed_sequence(&f);
    let whole = |x: &Representation| IdemObject::whole(x);
    let image = IdemPair {
        objects: [whole(s.left()), whole(s.middle()), whole(s.right())],
        inflation: s.inflation.clone(),
        deflation: s.deflation.clone(),
    };
    let r = inherited_conflation(&c, &image, &cert).unwrap();
    assert_eq!(r.verdict, Ternary::Yes);
    // The nonsplit sequence as a summand of its sum with a split one,
    // cut out by idempotents.
    let split = KCPair::split(f.get("S1"), f.get("P2"));
    let sums: Vec<DirectSum> = (0..3)
        .map(|k| {
            let part = |p: &KCPair| [p.left(), p.middle(), p.right()][k].clone();
            DirectSum::new(&[part(&s), part(&split)])
        })
        .collect();
    let proj = |d: &DirectSum| d.injections[0].after(&d.projections[0]);
    let big_f = sums[1].pair(&[s.inflation.after(&sums[0].projections[0]), split.inflation.after(&sums[0].projections[1])]);
    let big_g = sums[2].pair(&[s.deflation.after(&sums[1].projections[0]), split.deflation.after(&sums[1].projections[1])]);
    let objects = [0, 1, 2].map(|k| IdemObject::new(&sums[k].object, &proj(&sums[k])).unwrap());
    let summand = IdemPair {
        inflation: objects[1].idempotent.after(&big_f).after(&objects[0].idempotent),
        deflation: objects[2].idempotent.after(&big_g).after(&objects[1].idempotent),
        objects,
    };
    let r = inherited_conflation(&c, &summand, &cert).unwrap();
    assert_eq!(r.verdict, Ternary::Yes);
    let (outer, inner, _) = r.witness.unwrap();
    assert!(is_conflation(&c, &outer) && is_conflation(&c, &inner));
    // Split pairs on completion objects.
    let e = random_idempotent(&[f.get("P2").clone(), f.get("S2").clone()], &mut seeded_rng(43));
    let a = IdemObject::new(&e.src, &e).unwrap();
    let b = a.complement();
    let sum = IdemObject::direct_sum(&[a.clone(), b.clone()]);
    let d = DirectSum::new(&[a.carrier.clone(), b.carrier.clone()]);
    let sp = IdemPair {
        inflation: d.injections[0].after(&a.idempotent),
        deflation: b.idempotent.after(&d.projections[1]),
        objects: [a, sum, b],
    };
    assert_eq!(inherited_conflation(&c, &sp, &cert).unwrap().verdict, Ternary::Yes);
    // Not exact in the middle.
    let bad = IdemPair {
        objects: [whole(f.get("S1")), whole(f.get("P3")), whole(f.get("S3"))],
        inflation: hom_basis(f.get("S1"), f.get("P3")).remove(0),
        deflation: hom_basis(f.get("P3"), f.get("S3")).remove(0),
    };
    assert_eq!(inherited_conflation(&c, &bad, &cert).unwrap().verdict, Ternary::No);
    // The removed sequence under the restricted class is not inherited.
    let restricted = a3_restricted_class(&f);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    let rcert = ClassCertificate::certify(&restricted, &probes, Exec::Parallel).unwrap();
    assert_eq!(inherited_conflation(&restricted, &image, &rcert).unwrap().verdict, Ternary::No);
}

#[test]
fn hull_restores_the_removed_conflation() {
    let f = a3();
    let restricted = a3_restricted_class(&f);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    let cert = ClassCertificate::certify(&restricted, &probes, Exec::Parallel).unwrap();
    let s = a3_removed_sequence(&f);
    assert!(!is_conflation(&restricted, &s));
    let objs = [hull_embed(s.left()), hull_embed(s.middle()), hull_embed(s.right())];
    let (u, v) = stalk_maps(&s.inflation, &s.deflation);
    assert_eq!(hull_conflation_check(&restricted, [&objs[0], &objs[1], &objs[2]], &u, &v, &cert), Ternary::Yes);
}

#[test]
fn hull_checks_agree_with_exactness_in_the_ambient() {
    let f = a3();
    let c = ConflationClass::all_short_exact(&f.algebra);
    let cert = ClassCertificate::abelian();
    let mut rng = seeded_rng(44);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..60 {
        let y = &f.named[rng.gen_range(0..6)].1;
        let z = &f.named[rng.gen_range(0..6)].1;
        let g = random_morphism(y, z, &mut rng, 2);
        let (x, i) = kernel(&g);
        let objs = [hull_embed(&x), hull_embed(y), hull_embed(z)];
        let (u, v) = stalk_maps(&i, &g);
        let verdict = hull_conflation_check(&c, [&objs[0], &objs[1], &objs[2]], &u, &v, &cert);
        let expect = if g.is_epi() { Ternary::Yes } else { Ternary::No };
        assert_eq!(verdict, expect);
        if g.is_epi() { yes += 1 } else { no += 1 }
    }
    assert!(yes > 0 && no > 0);
}

#[test]
fn hull_homs_are_derived_homs() {
    let f = a3();
    for c in [ConflationClass::all_short_exact(&f.algebra), a3_restricted_class(&f)] {
        let objs: Vec<Representation> = f.named.iter().map(|(_, x)| x.clone()).collect();
        let shifts = [0, 1];
        let table = derived_hom_table(&c, &objs, &shifts, Exec::Parallel).unwrap();
        let mut k = 0;
        for x in &objs {
            for y in &objs {
                for &s in &shifts {
                    assert_eq!(hull_hom_dim(&c, &hull_embed(x), &hull_embed(y), s).unwrap(), table[k]);
                    k += 1;
                }
            }
        }
    }
}

#[test]
fn hull_objects_have_presentations() {
    let f = a3();
    let restricted = a3_restricted_class(&f);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    let cert = ClassCertificate::certify(&restricted, &probes, Exec::Parallel).unwrap();
    let mut checked = 0;
    for m in probes.all_morphisms() {
        let Ok(h) = hull_cokernel(&m.map) else {
            continue;
        };
        let (objs, u, v) = conflation_presentation(&h);
        assert!(HullObject::new(h.complex.clone()).is_ok());
        assert_eq!(hull_conflation_check(&restricted, [&objs[0], &objs[1], &objs[2]], &u, &v, &cert), Ternary::Yes, "{}", m.label);
        checked += 1;
    }
    assert!(checked > 10);
}
