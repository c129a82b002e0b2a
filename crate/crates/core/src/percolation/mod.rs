//! Percolating subcategories, weak isomorphisms and the localization `E/A`.
//!
//! Localization arithmetic (rejects, traces, roofs) is implemented for Serre
//! subcategories of the full module category; other specs are accepted for
//! axiom checking only.

pub mod exactness;
pub mod roof;
pub mod verdier;

use std::fmt;

use serde::Serialize;

use crate::axioms::{Verdict, Witness, WitnessMap};
use crate::conflation::{is_conflation, is_deflation, is_inflation, kernel_pair, ClassKind, ConflationClass};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::Matrix;
use crate::probe::{ProbeMorphism, ProbeSet};
use crate::rep::{
    cokernel, factor_through_source, image, is_isomorphic, pushout, subrep_from_spaces, RepMorphism,
    Representation,
};

#[derive(Clone, Debug)]
pub enum Membership {
    /// The Serre subcategory of representations whose composition factors
    /// are simples at the listed vertices.
    SerreGenerators(Vec<usize>),
    /// Representations isomorphic to a listed object (or zero).
    ExplicitObjects(Vec<(String, Representation)>),
}

#[derive(Clone, Debug)]
pub struct PercolatingSpec {
    pub class: ConflationClass,
    pub membership: Membership,
}

impl PercolatingSpec {
    pub fn serre(class: &ConflationClass, generators: Vec<usize>) -> Self {
        PercolatingSpec {
            class: class.clone(),
            membership: Membership::SerreGenerators(generators),
        }
    }

    pub fn explicit(class: &ConflationClass, objects: Vec<(String, Representation)>) -> Self {
        PercolatingSpec {
            class: class.clone(),
            membership: Membership::ExplicitObjects(objects),
        }
    }

    pub fn contains(&self, x: &Representation) -> bool {
        if x.is_zero() {
            return true;
        }
        match &self.membership {
            Membership::SerreGenerators(g) => x
                .composition_factors()
                .iter()
                .enumerate()
                .all(|(v, &m)| m == 0 || g.contains(&v)),
            Membership::ExplicitObjects(list) => list.iter().any(|(_, a)| is_isomorphic(a, x)),
        }
    }

    /// Generators of a Serre spec over the abelian structure, the setting in
    /// which rejects, traces and roof arithmetic are available.
    pub fn serre_generators(&self) -> Result<&[usize]> {
        match (&self.membership, &self.class.object_class().kind) {
            (Membership::SerreGenerators(g), ClassKind::AllShortExact) => Ok(g),
            (Membership::SerreGenerators(_), _) => Err(Error::Unsupported(
                "localization arithmetic needs the all-short-exact structure".into(),
            )),
            _ => Err(Error::Unsupported("localization arithmetic needs a Serre spec".into())),
        }
    }

    pub fn describe(&self) -> String {
        match &self.membership {
            Membership::SerreGenerators(g) => {
                let ids: Vec<&str> = g.iter().map(|&v| self.class.ambient.vertices()[v].as_str()).collect();
                format!("Serre subcategory generated by simples at vertices {ids:?}")
            }
            Membership::ExplicitObjects(list) => {
                let names: Vec<&str> = list.iter().map(|(n, _)| n.as_str()).collect();
                format!("objects isomorphic to one of {names:?}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PercolationAxiom {
    P1,
    P2,
    P3,
    P4,
}

impl fmt::Display for PercolationAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct PercolationReport {
    pub axiom: PercolationAxiom,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub checked: usize,
}

fn wmap(probes: &ProbeSet, label: &str, m: &ProbeMorphism) -> WitnessMap {
    WitnessMap {
        label: label.into(),
        src: probes.name(m.src).into(),
        dst: probes.name(m.dst).into(),
        map: m.map.clone(),
    }
}

fn report(axiom: PercolationAxiom, checked: usize, witness: Option<Witness>) -> PercolationReport {
    let verdict = match (&witness, checked) {
        (Some(_), _) => Verdict::CounterexampleFound,
        (None, 0) => Verdict::Inconclusive,
        (None, _) => Verdict::HoldsOnProbes,
    };
    PercolationReport {
        axiom,
        verdict,
        witness,
        checked,
    }
}

/// Checks P1-P4 on the probe set. P2 tries the image factorization first
/// and then probe deflations into `A`; P4 tries `p` itself and probe
/// deflations from `X` into `A` as the comparison quotient `X -> B'`.
pub fn check_percolating(spec: &PercolatingSpec, probes: &ProbeSet, exec: Exec) -> Vec<PercolationReport> {
    let c = spec.class.object_class();
    let maps: Vec<&ProbeMorphism> = probes.all_morphisms().collect();
    let in_a: Vec<bool> = exec.map(&probes.objects, |o| spec.contains(&o.rep));
    let defl: Vec<bool> = exec.map(&maps, |m| is_deflation(c, &m.map));
    let infl: Vec<bool> = exec.map(&maps, |m| is_inflation(c, &m.map));

    let p1_idx: Vec<usize> = (0..maps.len()).filter(|&k| defl[k]).collect();
    let p1 = exec.find_first(&p1_idx, |&k| {
        let pair = kernel_pair(&maps[k].map);
        let mid = in_a[maps[k].src];
        let ends = spec.contains(pair.left()) && in_a[maps[k].dst];
        (mid != ends).then(|| Witness {
            description: format!(
                "conflation with middle {} in A: {mid}, ends in A: {ends}",
                probes.name(maps[k].src)
            ),
            maps: vec![
                WitnessMap {
                    label: "inflation".into(),
                    src: "ker".into(),
                    dst: probes.name(maps[k].src).into(),
                    map: pair.inflation.clone(),
                },
                wmap(probes, "deflation", maps[k]),
            ],
        })
    });
    let p1 = report(PercolationAxiom::P1, p1_idx.len(), p1);

    let p2_idx: Vec<usize> = (0..maps.len()).filter(|&k| in_a[maps[k].dst]).collect();
    let p2 = exec.find_first(&p2_idx, |&k| {
        let f = &maps[k].map;
        let (im, _, co) = image(f);
        if spec.contains(&im) && is_deflation(c, &co) {
            return None;
        }
        let through_probe = (0..maps.len()).any(|q| {
            let m = maps[q];
            m.src == maps[k].src && defl[q] && in_a[m.dst] && factor_through_source(f, &m.map).is_some()
        });
        (!through_probe).then(|| Witness {
            description: "map into A does not factor through a deflation onto an object of A".into(),
            maps: vec![wmap(probes, "f", maps[k])],
        })
    });
    let p2 = report(PercolationAxiom::P2, p2_idx.len(), p2);

    let p3_pairs: Vec<(usize, usize)> = (0..maps.len())
        .filter(|&i| infl[i])
        .flat_map(|i| {
            let (maps, defl, in_a) = (&maps, &defl, &in_a);
            (0..maps.len()).filter(move |&p| maps[p].src == maps[i].src && defl[p] && in_a[maps[p].dst]).map(move |p| (i, p))
        })
        .collect();
    let p3 = exec.find_first(&p3_pairs, |&(i, p)| {
        let (_, into_d, into_a) = pushout(&maps[i].map, &maps[p].map);
        let ok = is_inflation(c, &into_a) && is_deflation(c, &into_d);
        (!ok).then(|| Witness {
            description: "pushout of an inflation along a deflation onto A is not an inflation/deflation pair".into(),
            maps: vec![wmap(probes, "i", maps[i]), wmap(probes, "p", maps[p])],
        })
    });
    let p3 = report(PercolationAxiom::P3, p3_pairs.len(), p3);

    let p4_pairs: Vec<(usize, usize)> = (0..maps.len())
        .filter(|&i| infl[i] && in_a[maps[i].src])
        .flat_map(|i| {
            let (maps, defl, in_a) = (&maps, &defl, &in_a);
            (0..maps.len()).filter(move |&p| maps[p].src == maps[i].dst && defl[p] && in_a[maps[p].dst]).map(move |p| (i, p))
        })
        .collect();
    let p4 = exec.find_first(&p4_pairs, |&(i, p)| {
        let (iota, pm) = (&maps[i].map, &maps[p].map);
        let candidates = std::iter::once(pm).chain(
            maps.iter()
                .enumerate()
                .filter(|(q, m)| m.src == maps[p].src && defl[*q] && in_a[m.dst])
                .map(|(_, m)| &m.map),
        );
        let mut found = false;
        for q in candidates {
            if factor_through_source(pm, q).is_none() {
                continue;
            }
            let (a2, incl, co) = image(&q.after(iota));
            if spec.contains(&a2) && is_deflation(c, &co) && is_inflation(c, &incl) {
                found = true;
                break;
            }
        }
        (!found).then(|| Witness {
            description: "no comparison square A ->> A' >-> B' with X ->> B' factoring p".into(),
            maps: vec![wmap(probes, "i", maps[i]), wmap(probes, "p", maps[p])],
        })
    });
    let p4 = report(PercolationAxiom::P4, p4_pairs.len(), p4);
    vec![p1, p2, p3, p4]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LinkKind {
    /// Inflation with cokernel in `A`.
    Inflation,
    /// Deflation with kernel in `A`.
    Deflation,
}

#[derive(Clone, Debug)]
pub struct WeakIsoLink {
    pub kind: LinkKind,
    pub map: RepMorphism,
}

/// A composable chain of `A^{-1}`-inflations and `A^{-1}`-deflations,
/// applied first to last.
#[derive(Clone, Debug)]
pub struct WeakIso {
    pub src: Representation,
    pub dst: Representation,
    pub links: Vec<WeakIsoLink>,
}

impl WeakIso {
    pub fn identity(x: &Representation) -> Self {
        WeakIso {
            src: x.clone(),
            dst: x.clone(),
            links: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn composite(&self) -> RepMorphism {
        self.links
            .iter()
            .fold(RepMorphism::identity(&self.src), |acc, l| l.map.after(&acc))
    }

    /// Every link is in the class with kernel or cokernel in `A`, and the
    /// links compose.
    pub fn verify(&self, spec: &PercolatingSpec) -> bool {
        let c = spec.class.object_class();
        let mut at = self.src.clone();
        for l in &self.links {
            if l.map.src != at {
                return false;
            }
            let ok = match l.kind {
                LinkKind::Inflation => is_inflation(c, &l.map) && spec.contains(&cokernel(&l.map).0),
                LinkKind::Deflation => {
                    is_deflation(c, &l.map) && spec.contains(&crate::rep::kernel(&l.map).0)
                }
            };
            if !ok {
                return false;
            }
            at = l.map.dst.clone();
        }
        at == self.dst
    }
}

/// A verified chain for `f` through its image factorization
/// `X ->> im f >-> Y`, if its length is within `length_budget`. For Serre
/// specs this decides: `f` is a weak isomorphism iff its kernel and
/// cokernel lie in `A`. For other specs longer chains are not searched.
pub fn is_weak_iso(spec: &PercolatingSpec, f: &RepMorphism, length_budget: usize) -> Option<WeakIso> {
    let links = if f.is_identity() {
        Vec::new()
    } else if f.is_mono() {
        vec![WeakIsoLink { kind: LinkKind::Inflation, map: f.clone() }]
    } else if f.is_epi() {
        vec![WeakIsoLink { kind: LinkKind::Deflation, map: f.clone() }]
    } else {
        let (_, incl, co) = image(f);
        vec![
            WeakIsoLink { kind: LinkKind::Deflation, map: co },
            WeakIsoLink { kind: LinkKind::Inflation, map: incl },
        ]
    };
    let w = WeakIso {
        src: f.src.clone(),
        dst: f.dst.clone(),
        links,
    };
    (w.len() <= length_budget && w.verify(spec)).then_some(w)
}

fn span_or_empty(rows: usize, parts: &[Matrix]) -> Matrix {
    let nonempty: Vec<&Matrix> = parts.iter().filter(|m| m.cols() > 0).collect();
    if nonempty.is_empty() {
        Matrix::zeros(rows, 0)
    } else {
        Matrix::hstack(&nonempty).column_space()
    }
}

/// The smallest subrepresentation `x0` with `x/x0` in `A`: the one
/// generated by the spaces at vertices outside the generators.
pub fn a_reject(spec: &PercolatingSpec, x: &Representation) -> Result<(Representation, RepMorphism)> {
    let g = spec.serre_generators()?;
    let alg = x.algebra();
    let mut spaces: Vec<Matrix> = (0..alg.n_vertices()).map(|v| Matrix::zeros(x.dim(v), 0)).collect();
    for &v in alg.topological_order() {
        spaces[v] = if g.contains(&v) {
            let parts: Vec<Matrix> = alg
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.tgt == v)
                .map(|(ai, a)| x.arrow_map(ai) * &spaces[a.src])
                .collect();
            span_or_empty(x.dim(v), &parts)
        } else {
            Matrix::identity(x.dim(v))
        };
    }
    Ok(subrep_from_spaces(x, &spaces))
}

/// Columns spanning `{u in span(cur) : a u in span(b)}`.
fn preimage_within(cur: &Matrix, a: &Matrix, b: &Matrix) -> Matrix {
    if cur.cols() == 0 {
        return cur.clone();
    }
    let ac = a * cur;
    let stacked = Matrix::hstack(&[&ac, &b.scale(&crate::linalg::q(-1))]);
    let k = stacked.kernel();
    let top = k.block(0, 0, cur.cols(), k.cols());
    span_or_empty(cur.rows(), &[cur * &top])
}

/// The largest subrepresentation of `y` lying in `A`.
pub fn a_trace(spec: &PercolatingSpec, y: &Representation) -> Result<(Representation, RepMorphism)> {
    let g = spec.serre_generators()?;
    let alg = y.algebra();
    let mut spaces: Vec<Matrix> = (0..alg.n_vertices()).map(|v| Matrix::zeros(y.dim(v), 0)).collect();
    for &v in alg.topological_order().iter().rev() {
        if !g.contains(&v) {
            continue;
        }
        let mut cur = Matrix::identity(y.dim(v));
        for (ai, a) in alg.arrows().iter().enumerate() {
            if a.src == v {
                cur = preimage_within(&cur, y.arrow_map(ai), &spaces[a.tgt]);
            }
        }
        spaces[v] = cur;
    }
    Ok(subrep_from_spaces(y, &spaces))
}

/// Whether `f` becomes zero in `E/A`: it vanishes on the reject of its
/// source.
pub fn q_is_zero(spec: &PercolatingSpec, f: &RepMorphism) -> Result<bool> {
    let (_, r) = a_reject(spec, &f.src)?;
    Ok(f.after(&r).is_zero())
}

/// Whether the sequence is a conflation with middle term in `A`.
pub fn is_a_conflation(spec: &PercolatingSpec, pair: &crate::rep::KCPair) -> bool {
    is_conflation(spec.class.object_class(), pair) && spec.contains(pair.middle())
}
