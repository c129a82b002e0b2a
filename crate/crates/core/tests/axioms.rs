use rexact::axioms::{check_axiom, AxiomTag, Verdict};
use rexact::conflation::{is_conflation, ConflationClass};
use rexact::fixtures::{a3, a3_removed_sequence, a3_restricted_class};
use rexact::probe::{ProbeSet, ProbeSpec};
use rexact::rep::is_isomorphic;
use rexact::Exec;

#[test]
fn restricted_class_r3_witness() {
    let f = a3();
    let c = a3_restricted_class(&f);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    let r3 = check_axiom(&c, AxiomTag::R3, &probes, Exec::Parallel).unwrap();
    assert_eq!(r3.verdict, Verdict::CounterexampleFound);
    let w = r3.witness.unwrap();
    let i = &w.maps[0].map;
    let p = &w.maps[1].map;
    assert!(is_isomorphic(&i.src, f.get("P3")));
    assert!(is_isomorphic(&i.dst, f.get("I2")));
    assert!(is_isomorphic(&p.dst, f.get("S3")));
    for tag in [AxiomTag::R0, AxiomTag::R0Star, AxiomTag::R1, AxiomTag::R2] {
        let r = check_axiom(&c, tag, &probes, Exec::Parallel).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnProbes, "{tag}");
    }
}

#[test]
fn abelian_class_holds_everywhere() {
    let f = a3();
    let c = ConflationClass::all_short_exact(&f.algebra);
    let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
    for tag in AxiomTag::ALL {
        let r = check_axiom(&c, tag, &probes, Exec::Parallel).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnProbes, "{tag}");
    }
    assert!(is_conflation(&c, &a3_removed_sequence(&f)));
}

#[test]
fn restricted_class_right_axioms_on_larger_probes() {
    let f = a3();
    let c = a3_restricted_class(&f);
    let spec = ProbeSpec { max_dim: 4, max_objects: 40, ..ProbeSpec::default() };
    let probes = ProbeSet::build(&f.algebra, &f.named, spec).unwrap();
    for tag in [AxiomTag::R0Star, AxiomTag::R1, AxiomTag::R2] {
        let r = check_axiom(&c, tag, &probes, Exec::Parallel).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsOnProbes, "{tag}");
    }
}
