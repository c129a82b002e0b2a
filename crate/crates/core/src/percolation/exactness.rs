//! Evidence that `E/A` inherits an exact structure: `Ext^2` into `A`
//! vanishes, and spans of an inflation and a roof admit pushouts along
//! inflations.

use rand::Rng;

use super::roof::{roof_compose, roof_equal, Roof};
use super::verdier::SuiteReport;
use super::{a_reject, is_weak_iso, PercolatingSpec};
use crate::conflation::{is_inflation, kernel_pair};
use crate::derived::{ext_dim, hereditary_factorisation};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::probe::ProbeSet;
use crate::rep::{image, pushout, random_morphism, seeded_rng, DirectSum, RepMorphism, Representation};

/// `Ext^2(x, a)` for every probe `x` and probe `a` in `A`.
pub fn ext2_into_a(spec: &PercolatingSpec, probes: &ProbeSet, exec: Exec) -> SuiteReport {
    let pairs: Vec<(usize, usize)> = (0..probes.len())
        .flat_map(|i| (0..probes.len()).map(move |j| (i, j)))
        .filter(|&(_, j)| spec.contains(&probes.objects[j].rep))
        .collect();
    let results = exec.map(&pairs, |&(i, j)| match ext_dim(&spec.class, &probes.objects[i].rep, &probes.objects[j].rep, 2) {
        Ok(0) => Ok(()),
        Ok(d) => Err(format!("Ext^2({}, {}) has dimension {d}", probes.name(i), probes.name(j))),
        Err(e) => Err(format!("Ext^2({}, {}): {e}", probes.name(i), probes.name(j))),
    });
    SuiteReport {
        suite: "ext2".into(),
        checked: results.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
    }
}

/// An inflation `X' >-> Z'` of `E` together with a roof `X' <~ M -> Y`.
#[derive(Clone, Debug)]
pub struct Span {
    pub label: String,
    pub inflation: RepMorphism,
    pub roof: Roof,
}

/// `Y >-> P` in `E` and the roof `Z' <~ W -> P` closing the square in `E/A`.
#[derive(Clone, Debug)]
pub struct QuotientPushout {
    pub inflation: RepMorphism,
    pub roof: Roof,
}

/// Pushout in `E/A` of an inflation along a roof. The left leg of the roof
/// is split into its image factorization, the epi part is moved past the
/// inflation by the hereditary factorization, and the resulting honest
/// inflation is pushed out in `E`.
pub fn quotient_pushout(spec: &PercolatingSpec, span: &Span) -> Result<QuotientPushout> {
    let i = &span.inflation;
    let s = span.roof.s();
    let h = &span.roof.leg_f;
    if s.dst != i.src {
        return Err(Error::InvalidInput("roof does not start at the inflation's source".into()));
    }
    let (_, incl, coim) = image(&s);
    let through = i.after(&incl);
    let (k, w_to_z) = hereditary_factorisation(&spec.class, &coim, &through)?
        .ok_or_else(|| Error::Verification("extension does not lift along the coimage".into()))?;
    let (_, into_p, y_to_p) = pushout(&k, h);
    let c = spec.class.object_class();
    if !is_inflation(c, &y_to_p) {
        return Err(Error::Verification("pushed out map is not an inflation".into()));
    }
    let roof = Roof::new(spec, &w_to_z, &into_p)?;
    let lhs = roof_compose(spec, &Roof::of_map(i), &roof)?;
    let rhs = roof_compose(spec, &span.roof, &Roof::of_map(&y_to_p))?;
    if !roof_equal(spec, &lhs, &rhs)? {
        return Err(Error::Verification("pushout square does not commute in the quotient".into()));
    }
    Ok(QuotientPushout { inflation: y_to_p, roof })
}

/// Weak isomorphisms into `x` built from its reject and from projections
/// off `A`-summands.
fn weak_isos_into(spec: &PercolatingSpec, probes: &ProbeSet, x: &Representation) -> Result<Vec<RepMorphism>> {
    let (r, incl) = a_reject(spec, x)?;
    let mut out = vec![RepMorphism::identity(x), incl.clone()];
    for o in &probes.objects {
        if o.rep.is_zero() || !spec.contains(&o.rep) {
            continue;
        }
        for (base, map) in [(x, RepMorphism::identity(x)), (&r, incl.clone())] {
            let sum = DirectSum::new(&[base.clone(), o.rep.clone()]);
            out.push(map.after(&sum.projections[0]));
        }
    }
    Ok(out)
}

/// Seeded spans: inflations are kernels of random probe morphisms, roofs
/// pair a weak isomorphism into the kernel with a random map to a probe.
pub fn seeded_spans(spec: &PercolatingSpec, probes: &ProbeSet, count: usize, seed: u64) -> Result<Vec<Span>> {
    let mut rng = seeded_rng(seed);
    let n = probes.len();
    let grid = probes.spec.coefficient_grid;
    let mut spans = Vec::with_capacity(count);
    while spans.len() < count {
        let (zi, ci, yi) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let z = &probes.objects[zi].rep;
        let g = random_morphism(z, &probes.objects[ci].rep, &mut rng, grid);
        let inflation = kernel_pair(&g).inflation;
        let weak = weak_isos_into(spec, probes, &inflation.src)?;
        let s = &weak[rng.gen_range(0..weak.len())];
        let h = random_morphism(&s.src, &probes.objects[yi].rep, &mut rng, grid);
        let leg_s = is_weak_iso(spec, s, 2).ok_or_else(|| Error::Inconsistent("generated leg is not a weak isomorphism".into()))?;
        spans.push(Span {
            label: format!("ker({}->{}) ~> {} #{}", probes.name(zi), probes.name(ci), probes.name(yi), spans.len()),
            inflation,
            roof: Roof {
                apex: s.src.clone(),
                leg_s,
                leg_f: h,
            },
        });
    }
    Ok(spans)
}

/// Runs `quotient_pushout` on `count` seeded spans.
pub fn l2_suite(spec: &PercolatingSpec, probes: &ProbeSet, count: usize, seed: u64, exec: Exec) -> Result<SuiteReport> {
    spec.serre_generators()?;
    let spans = seeded_spans(spec, probes, count, seed)?;
    let results = exec.map(&spans, |sp| quotient_pushout(spec, sp).map(|_| ()).map_err(|e| format!("{}: {e}", sp.label)));
    Ok(SuiteReport {
        suite: "L2".into(),
        checked: results.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflation::ConflationClass;
    use crate::fixtures::a3;
    use crate::probe::ProbeSpec;
    use crate::rep::hom_basis;

    #[test]
    fn pushout_along_inverted_deflation() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let spec = PercolatingSpec::serre(&c, vec![0]);
        // S2 >-> I2 with the roof S2 <~ P2 = P2.
        let i = hom_basis(f.get("S2"), f.get("I2")).remove(0);
        let p = hom_basis(f.get("P2"), f.get("S2")).remove(0);
        let span = Span {
            label: "s".into(),
            inflation: i,
            roof: Roof::new(&spec, &p, &RepMorphism::identity(f.get("P2"))).unwrap(),
        };
        let out = quotient_pushout(&spec, &span).unwrap();
        assert_eq!(out.inflation.dst.dims(), [1, 1, 1]);
    }

    #[test]
    fn suites_pass_for_s1() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let spec = PercolatingSpec::serre(&c, vec![0]);
        let probes = ProbeSet::build(&f.algebra, &f.named, ProbeSpec::default()).unwrap();
        assert!(ext2_into_a(&spec, &probes, Exec::Parallel).passed());
        let r = l2_suite(&spec, &probes, 20, 5, Exec::Parallel).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
