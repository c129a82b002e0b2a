//! Probe suites for the localization sequence `D_A(E) -> D(E) -> D(E/A)`
//! and the comparison condition for conflations ending in `A`.

use serde::Serialize;

use super::roof::{lift_complex, quotient_hom_dim, quotient_hom_roofs, RoofComplex};
use super::{is_weak_iso, PercolatingSpec};
use crate::axioms::ClassCertificate;
use crate::complex::{cohomology, cone, truncate_below, ChainMap, Complex, QuasiIsoMode, Ternary};
use crate::conflation::{is_conflation, kernel_pair};
use crate::derived::is_quasi_iso;
use crate::error::Result;
use crate::exec::Exec;
use crate::rep::{
    cokernel, corestrict, factor_through_target, kernel, projective_cover, KCPair, RepMorphism, Representation,
};
use crate::probe::ProbeSet;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn collect(suite: &str, results: Vec<std::result::Result<(), String>>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checked: results.len(),
            failures: results.into_iter().filter_map(|r| r.err()).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `cone` written as an iterated extension of shifted stalks: `pieces[k]`
/// is `(n, H^n)` and the step from `τ^{≤n-1}` to `τ^{≤n}` has cone
/// quasi-isomorphic to `H^n[-n]`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub label: String,
    pub pieces: Vec<(i32, Representation)>,
}

#[derive(Clone, Debug)]
pub struct VerdierReport {
    pub suites: Vec<SuiteReport>,
    pub towers: Vec<Tower>,
}

impl VerdierReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

/// Filtration of `x` by canonical truncations, each step verified against
/// its cohomology stalk. Fails if some cohomology object lies outside `A`.
pub fn stalk_tower(spec: &PercolatingSpec, x: &Complex, label: &str) -> std::result::Result<Tower, String> {
    let c = spec.class.object_class();
    let cert = ClassCertificate::abelian();
    let mut pieces = Vec::new();
    if x.is_zero() {
        return Ok(Tower { label: label.to_string(), pieces });
    }
    let trunc = |n: i32| truncate_below(c, x, n).map_err(|e| format!("{label}: {e}"));
    let (mut prev, _) = trunc(x.lo() - 1)?;
    for n in x.lo()..=x.hi() {
        let (cur, _) = trunc(n)?;
        let (_, iota) = kernel(&x.diff(n - 1));
        let step = ChainMap::new(&prev, &cur, |m| {
            if m == n - 1 {
                iota.clone()
            } else if m < n - 1 {
                RepMorphism::identity(&prev.entry(m))
            } else {
                RepMorphism::zero(&prev.entry(m), &cur.entry(m))
            }
        })
        .map_err(|e| format!("{label}: truncation step {n}: {e}"))?;
        let h = cohomology(x, n);
        let k = cone(&step);
        let (_, zn) = kernel(&x.diff(n));
        let d = corestrict(&x.diff(n - 1), &zn).expect("boundaries are cycles");
        let (_, pi) = cokernel(&d);
        let stalk = Complex::stalk(&h, n);
        let to_stalk = ChainMap::new(&k, &stalk, |m| {
            if m == n && !h.is_zero() {
                RepMorphism::new_unchecked(&k.entry(n), &h, pi.blocks.clone())
            } else {
                RepMorphism::zero(&k.entry(m), &stalk.entry(m))
            }
        })
        .map_err(|e| format!("{label}: comparison at {n}: {e}"))?;
        if is_quasi_iso(c, &to_stalk, QuasiIsoMode::Strict, &cert) != Ternary::Yes {
            return Err(format!("{label}: step {n} is not an extension by its cohomology stalk"));
        }
        if !spec.contains(&h) {
            return Err(format!("{label}: cohomology in degree {n} lies outside A"));
        }
        if !h.is_zero() {
            pieces.push((n, h));
        }
        prev = cur;
    }
    Ok(Tower { label: label.to_string(), pieces })
}

fn a_probe_complexes(spec: &PercolatingSpec, probes: &ProbeSet) -> Vec<(String, Complex)> {
    let inside: Vec<usize> = (0..probes.len()).filter(|&i| spec.contains(&probes.objects[i].rep)).collect();
    let mut out: Vec<(String, Complex)> = inside
        .iter()
        .map(|&i| (format!("{}[0]", probes.name(i)), Complex::stalk(&probes.objects[i].rep, 0)))
        .collect();
    for &i in &inside {
        for &j in &inside {
            for m in probes.morphisms(i, j) {
                out.push((m.label.clone(), Complex::two_term(&m.map, -1)));
            }
        }
    }
    out
}

/// Runs suites (a) A-complexes are quotient-acyclic, (b) cones of probe
/// weak isomorphisms are towers of A-stalks, (c) probe roof complexes lift.
pub fn verdier_probe(spec: &PercolatingSpec, probes: &ProbeSet, exec: Exec) -> Result<VerdierReport> {
    spec.serre_generators()?;

    let a_cx = a_probe_complexes(spec, probes);
    let a = exec.map(&a_cx, |(label, x)| {
        for n in x.lo()..=x.hi() {
            let e = x.entry(n);
            match quotient_hom_dim(spec, &e, &e) {
                Ok(0) => {}
                Ok(_) => return Err(format!("{label}: entry in degree {n} survives in the quotient")),
                Err(err) => return Err(format!("{label}: {err}")),
            }
            if !spec.contains(&cohomology(x, n)) {
                return Err(format!("{label}: cohomology in degree {n} lies outside A"));
            }
        }
        Ok(())
    });

    let weak: Vec<(String, RepMorphism)> = probes
        .all_morphisms()
        .filter(|m| is_weak_iso(spec, &m.map, 2).is_some())
        .map(|m| (m.label.clone(), m.map.clone()))
        .collect();
    let b_results = exec.map(&weak, |(label, f)| {
        let x = Complex::stalk(&f.src, 0);
        let y = Complex::stalk(&f.dst, 0);
        let fm = ChainMap::new(&x, &y, |_| f.clone()).map_err(|e| format!("{label}: {e}"))?;
        stalk_tower(spec, &cone(&fm), label)
    });
    let mut towers = Vec::new();
    let b: Vec<std::result::Result<(), String>> = b_results
        .into_iter()
        .map(|r| r.map(|t| towers.push(t)))
        .collect();

    let mut roofs: Vec<(String, RoofComplex)> = Vec::new();
    for i in 0..probes.len() {
        for j in 0..probes.len() {
            let (x, y) = (&probes.objects[i].rep, &probes.objects[j].rep);
            for (k, r) in quotient_hom_roofs(spec, x, y)?.into_iter().enumerate() {
                roofs.push((
                    format!("{}~>{}#{k}", probes.name(i), probes.name(j)),
                    RoofComplex {
                        lo: 0,
                        entries: vec![x.clone(), y.clone()],
                        diffs: vec![r],
                    },
                ));
            }
            for m in probes.morphisms(i, j) {
                roofs.push((m.label.clone(), RoofComplex::of_complex(&Complex::two_term(&m.map, 0))));
            }
        }
    }
    let cc = exec.map(&roofs, |(label, x)| {
        lift_complex(spec, x).map(|_| ()).map_err(|e| format!("{label}: {e}"))
    });

    Ok(VerdierReport {
        suites: vec![
            SuiteReport::collect("a", a),
            SuiteReport::collect("b", b),
            SuiteReport::collect("c", cc),
        ],
        towers,
    })
}

/// Comparison diagram for a conflation `E' >-> E ->> A'` with `A'` in `A`:
/// a conflation `A'' >-> A1 ->> A'` inside `A` mapping to it, identity on
/// the right.
#[derive(Clone, Debug)]
pub struct C2Diagram {
    pub top: KCPair,
    pub bottom: KCPair,
    pub left: RepMorphism,
    pub middle: RepMorphism,
}

impl C2Diagram {
    pub fn verify(&self, spec: &PercolatingSpec) -> bool {
        let c = spec.class.object_class();
        self.bottom.middle() == &self.middle.dst
            && self.top.right() == self.bottom.right()
            && self.middle.after(&self.top.inflation) == self.bottom.inflation.after(&self.left)
            && self.bottom.deflation.after(&self.middle) == self.top.deflation
            && is_conflation(c, &self.top)
            && is_conflation(c, &self.bottom)
            && spec.contains(self.top.left())
            && spec.contains(self.top.middle())
    }
}

#[derive(Clone, Debug)]
pub struct C2Report {
    pub checked: usize,
    pub found: Vec<(String, C2Diagram)>,
    pub failures: Vec<String>,
}

impl C2Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn c2_diagram(spec: &PercolatingSpec, probes: &ProbeSet, pair: &KCPair) -> Option<C2Diagram> {
    let target = pair.right();
    let mut candidates: Vec<RepMorphism> = vec![RepMorphism::identity(target)];
    let (p, cover, _) = projective_cover(target);
    if spec.contains(&p) {
        candidates.push(cover);
    }
    for i in 0..probes.len() {
        if !spec.contains(&probes.objects[i].rep) {
            continue;
        }
        for j in 0..probes.len() {
            if &probes.objects[j].rep == target {
                candidates.extend(probes.morphisms(i, j).iter().filter(|m| m.map.is_epi()).map(|m| m.map.clone()));
            }
        }
    }
    candidates.into_iter().find_map(|q| {
        let u = factor_through_target(&q, &pair.deflation)?;
        let top = kernel_pair(&q);
        let left = corestrict(&u.after(&top.inflation), &pair.inflation)?;
        let d = C2Diagram {
            top,
            bottom: pair.clone(),
            left,
            middle: u,
        };
        d.verify(spec).then_some(d)
    })
}

/// Searches comparison diagrams for probe conflations ending in `A`: the
/// split ones `E' ⊕ A'` and kernel pairs of probe deflations onto
/// `A`-objects.
pub fn check_c2op(spec: &PercolatingSpec, probes: &ProbeSet, exec: Exec) -> C2Report {
    let c = spec.class.object_class();
    let mut pairs: Vec<(String, KCPair)> = Vec::new();
    for j in 0..probes.len() {
        let a = &probes.objects[j].rep;
        if a.is_zero() || !spec.contains(a) {
            continue;
        }
        for i in 0..probes.len() {
            pairs.push((format!("{}+{}", probes.name(i), probes.name(j)), KCPair::split(&probes.objects[i].rep, a)));
            for m in probes.morphisms(i, j) {
                if m.map.is_epi() {
                    let k = kernel_pair(&m.map);
                    if is_conflation(c, &k) {
                        pairs.push((m.label.clone(), k));
                    }
                }
            }
        }
    }
    let results = exec.map(&pairs, |(label, pair)| {
        c2_diagram(spec, probes, pair)
            .map(|d| (label.clone(), d))
            .ok_or_else(|| format!("{label}: no comparison diagram"))
    });
    let mut report = C2Report {
        checked: pairs.len(),
        found: Vec::new(),
        failures: Vec::new(),
    };
    for r in results {
        match r {
            Ok(d) => report.found.push(d),
            Err(e) => report.failures.push(e),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflation::ConflationClass;
    use crate::fixtures::a3;
    use crate::probe::ProbeSpec;
    use crate::rep::hom_basis;

    #[test]
    fn tower_of_a_deflation() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let spec = PercolatingSpec::serre(&c, vec![0]);
        let p = hom_basis(f.get("P2"), f.get("S2")).remove(0);
        let x = Complex::stalk(&p.src, 0);
        let y = Complex::stalk(&p.dst, 0);
        let fm = ChainMap::new(&x, &y, |_| p.clone()).unwrap();
        let t = stalk_tower(&spec, &cone(&fm), "p").unwrap();
        assert_eq!(t.pieces.len(), 1);
        assert_eq!(t.pieces[0].0, -1);
        assert_eq!(t.pieces[0].1, *f.get("S1"));
    }

    #[test]
    fn suites_pass_for_s1() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
        for gens in [vec![], vec![0]] {
            let spec = PercolatingSpec::serre(&c, gens);
            let r = verdier_probe(&spec, &probes, Exec::Parallel).unwrap();
            assert!(r.passed(), "{:?}", r.suites);
            let c2 = check_c2op(&spec, &probes, Exec::Parallel);
            assert!(c2.passed(), "{:?}", c2.failures);
        }
    }
}
