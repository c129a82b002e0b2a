//! Probe-instantiated checks of the one-sided exactness axioms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conflation::{is_deflation, is_inflation, ConflationClass};
use crate::error::Result;
use crate::exec::Exec;
use crate::probe::{ProbeMorphism, ProbeSet};
use crate::rep::{pullback, pushout, RepMorphism, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomTag {
    R0,
    #[serde(rename = "R0*")]
    R0Star,
    R1,
    R2,
    R3,
    L0,
    #[serde(rename = "L0*")]
    L0Star,
    L1,
    L2,
    L3,
}

impl AxiomTag {
    pub const ALL: [AxiomTag; 10] = [
        AxiomTag::R0,
        AxiomTag::R0Star,
        AxiomTag::R1,
        AxiomTag::R2,
        AxiomTag::R3,
        AxiomTag::L0,
        AxiomTag::L0Star,
        AxiomTag::L1,
        AxiomTag::L2,
        AxiomTag::L3,
    ];

    pub fn parse(s: &str) -> Option<AxiomTag> {
        Self::ALL.into_iter().find(|t| t.to_string() == s)
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomTag::R0 => "R0",
            AxiomTag::R0Star => "R0*",
            AxiomTag::R1 => "R1",
            AxiomTag::R2 => "R2",
            AxiomTag::R3 => "R3",
            AxiomTag::L0 => "L0",
            AxiomTag::L0Star => "L0*",
            AxiomTag::L1 => "L1",
            AxiomTag::L2 => "L2",
            AxiomTag::L3 => "L3",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    HoldsOnProbes,
    CounterexampleFound,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct WitnessMap {
    pub label: String,
    pub src: String,
    pub dst: String,
    pub map: RepMorphism,
}

/// A checkable counterexample diagram.
#[derive(Clone, Debug)]
pub struct Witness {
    pub description: String,
    pub maps: Vec<WitnessMap>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: AxiomTag,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub probe_budget: String,
    /// Number of probe instances examined.
    pub checked: usize,
}

struct Ctx<'a> {
    probes: &'a ProbeSet,
    maps: Vec<&'a ProbeMorphism>,
    deflation: Vec<bool>,
    inflation: Vec<bool>,
}

impl<'a> Ctx<'a> {
    fn new(class: &'a ConflationClass, probes: &'a ProbeSet, exec: Exec, need_left: bool, need_right: bool) -> Self {
        let maps: Vec<&ProbeMorphism> = probes.all_morphisms().collect();
        let deflation = if need_right {
            exec.map(&maps, |m| is_deflation(class, &m.map))
        } else {
            Vec::new()
        };
        let inflation = if need_left {
            exec.map(&maps, |m| is_inflation(class, &m.map))
        } else {
            Vec::new()
        };
        Ctx {
            probes,
            maps,
            deflation,
            inflation,
        }
    }

    fn dim(&self, i: usize) -> usize {
        self.probes.objects[i].rep.total_dim()
    }

    fn wmap(&self, label: &str, m: &ProbeMorphism) -> WitnessMap {
        WitnessMap {
            label: label.into(),
            src: self.probes.name(m.src).into(),
            dst: self.probes.name(m.dst).into(),
            map: m.map.clone(),
        }
    }

    fn derived(&self, label: &str, src: &str, dst: &str, map: RepMorphism) -> WitnessMap {
        WitnessMap {
            label: label.into(),
            src: src.into(),
            dst: dst.into(),
            map,
        }
    }

    /// Ordered pairs `(first, second)` of morphism indices with
    /// `first.dst == second.src`, sorted by total dimension of the three
    /// objects, then by index.
    fn composable(&self, first_ok: impl Fn(usize) -> bool, second_ok: impl Fn(usize) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ma) in self.maps.iter().enumerate() {
            if !first_ok(a) {
                continue;
            }
            for (b, mb) in self.maps.iter().enumerate() {
                if mb.src == ma.dst && second_ok(b) {
                    out.push((a, b));
                }
            }
        }
        out.sort_by_key(|&(a, b)| {
            let (ma, mb) = (self.maps[a], self.maps[b]);
            (self.dim(ma.src) + self.dim(ma.dst) + self.dim(mb.dst), ma.src, ma.dst, mb.dst, a, b)
        });
        out
    }

    /// Pairs of morphisms with a common target (`cospan`) or source.
    fn with_common(&self, common_target: bool, first_ok: impl Fn(usize) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ma) in self.maps.iter().enumerate() {
            if !first_ok(a) {
                continue;
            }
            for (b, mb) in self.maps.iter().enumerate() {
                let ok = if common_target { mb.dst == ma.dst } else { mb.src == ma.src };
                if ok {
                    out.push((a, b));
                }
            }
        }
        out.sort_by_key(|&(a, b)| {
            let (ma, mb) = (self.maps[a], self.maps[b]);
            (self.dim(ma.src) + self.dim(ma.dst) + self.dim(mb.src) + self.dim(mb.dst), a, b)
        });
        out
    }
}

/// Checks `axiom` on `probes`. Deflation-side axioms quantify over probe
/// deflations and probe morphisms; witnesses are the smallest failing
/// instances by total dimension.
pub fn check_axiom(class: &ConflationClass, axiom: AxiomTag, probes: &ProbeSet, exec: Exec) -> Result<AxiomReport> {
    use AxiomTag::*;
    let ctx = Ctx::new(class, probes, exec, matches!(axiom, L1 | L2 | L3), matches!(axiom, R1 | R2 | R3));
    let n_obj = probes.len();
    let zero = Representation::zero(&probes.algebra);
    let (checked, witness) = match axiom {
        R0 | L0 | R0Star | L0Star => {
            let idx: Vec<usize> = (0..n_obj).collect();
            let w = exec.find_first(&idx, |&i| {
                let x = &probes.objects[i].rep;
                let name = probes.name(i);
                let (m, ok, label) = match axiom {
                    R0 => {
                        let m = RepMorphism::identity(x);
                        let ok = is_deflation(class, &m);
                        (ctx.derived("id", name, name, m), ok, "identity is not a deflation")
                    }
                    L0 => {
                        let m = RepMorphism::identity(x);
                        let ok = is_inflation(class, &m);
                        (ctx.derived("id", name, name, m), ok, "identity is not an inflation")
                    }
                    R0Star => {
                        let m = RepMorphism::zero(x, &zero);
                        let ok = is_deflation(class, &m);
                        (ctx.derived("to_zero", name, "0", m), ok, "map to zero is not a deflation")
                    }
                    _ => {
                        let m = RepMorphism::zero(&zero, x);
                        let ok = is_inflation(class, &m);
                        (ctx.derived("from_zero", "0", name, m), ok, "map from zero is not an inflation")
                    }
                };
                (!ok).then(|| Witness {
                    description: label.into(),
                    maps: vec![m],
                })
            });
            (n_obj, w)
        }
        R1 | L1 => {
            let flags = if axiom == R1 { &ctx.deflation } else { &ctx.inflation };
            let cands = ctx.composable(|a| flags[a], |b| flags[b]);
            let w = exec.find_first(&cands, |&(a, b)| {
                let comp = ctx.maps[b].map.after(&ctx.maps[a].map);
                let ok = if axiom == R1 { is_deflation(class, &comp) } else { is_inflation(class, &comp) };
                (!ok).then(|| Witness {
                    description: format!(
                        "composite of two {} is not one",
                        if axiom == R1 { "deflations" } else { "inflations" }
                    ),
                    maps: vec![ctx.wmap("first", ctx.maps[a]), ctx.wmap("second", ctx.maps[b])],
                })
            });
            (cands.len(), w)
        }
        R2 => {
            let cands = ctx.with_common(true, |a| ctx.deflation[a]);
            let w = exec.find_first(&cands, |&(a, b)| {
                let (p, t) = (ctx.maps[a], ctx.maps[b]);
                let (_, pw, _) = pullback(&t.map, &p.map);
                (!is_deflation(class, &pw)).then(|| Witness {
                    description: "pullback of a deflation is not a deflation".into(),
                    maps: vec![
                        ctx.wmap("deflation", p),
                        ctx.wmap("along", t),
                        ctx.derived("pulled_back", "P", probes.name(t.src), pw),
                    ],
                })
            });
            (cands.len(), w)
        }
        L2 => {
            let cands = ctx.with_common(false, |a| ctx.inflation[a]);
            let w = exec.find_first(&cands, |&(a, b)| {
                let (i, t) = (ctx.maps[a], ctx.maps[b]);
                let (_, qw, _) = pushout(&t.map, &i.map);
                (!is_inflation(class, &qw)).then(|| Witness {
                    description: "pushout of an inflation is not an inflation".into(),
                    maps: vec![
                        ctx.wmap("inflation", i),
                        ctx.wmap("along", t),
                        ctx.derived("pushed_out", probes.name(t.dst), "Q", qw),
                    ],
                })
            });
            (cands.len(), w)
        }
        R3 => {
            let cands = ctx.composable(|_| true, |b| !ctx.deflation[b]);
            let w = exec.find_first(&cands, |&(a, b)| {
                let (i, p) = (ctx.maps[a], ctx.maps[b]);
                let comp = p.map.after(&i.map);
                is_deflation(class, &comp).then(|| Witness {
                    description: "composite p∘i is a deflation but p is not".into(),
                    maps: vec![ctx.wmap("i", i), ctx.wmap("p", p)],
                })
            });
            (cands.len(), w)
        }
        L3 => {
            let cands = ctx.composable(|a| !ctx.inflation[a], |_| true);
            let w = exec.find_first(&cands, |&(a, b)| {
                let (i, p) = (ctx.maps[a], ctx.maps[b]);
                let comp = p.map.after(&i.map);
                is_inflation(class, &comp).then(|| Witness {
                    description: "composite p∘i is an inflation but i is not".into(),
                    maps: vec![ctx.wmap("i", i), ctx.wmap("p", p)],
                })
            });
            (cands.len(), w)
        }
    };
    let verdict = if witness.is_some() {
        Verdict::CounterexampleFound
    } else if checked == 0 {
        Verdict::Inconclusive
    } else {
        Verdict::HoldsOnProbes
    };
    Ok(AxiomReport {
        axiom,
        verdict,
        witness,
        probe_budget: probes.spec.describe(),
        checked,
    })
}

pub fn check_all(class: &ConflationClass, probes: &ProbeSet, exec: Exec) -> Result<Vec<AxiomReport>> {
    AxiomTag::ALL
        .iter()
        .map(|&t| check_axiom(class, t, probes, exec))
        .collect()
}

/// Hypotheses under which a non-acyclic reduced cone certifies that a
/// chain map is not a quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct ClassCertificate {
    pub r0_star: Verdict,
    pub r3: Verdict,
    /// Weak idempotent completeness of the underlying additive category.
    pub weakly_idempotent_complete: Verdict,
}

impl ClassCertificate {
    pub fn certify(class: &ConflationClass, probes: &ProbeSet, exec: Exec) -> Result<Self> {
        let r0_star = check_axiom(class, AxiomTag::R0Star, probes, exec)?.verdict;
        let r3 = check_axiom(class, AxiomTag::R3, probes, exec)?.verdict;
        Ok(ClassCertificate {
            r0_star,
            r3,
            weakly_idempotent_complete: wic_on_probes(probes),
        })
    }

    /// Certificate for the full module category with all short exact
    /// sequences, which is abelian.
    pub fn abelian() -> Self {
        ClassCertificate {
            r0_star: Verdict::HoldsOnProbes,
            r3: Verdict::HoldsOnProbes,
            weakly_idempotent_complete: Verdict::HoldsOnProbes,
        }
    }

    pub fn thick(&self) -> bool {
        [self.r0_star, self.r3, self.weakly_idempotent_complete]
            .iter()
            .all(|v| *v == Verdict::HoldsOnProbes)
    }
}

/// Every probe retraction has a kernel. The ambient category is a module
/// category, so kernels always exist; the check records the instances.
fn wic_on_probes(probes: &ProbeSet) -> Verdict {
    let any = probes
        .all_morphisms()
        .any(|m| m.map.is_epi() && crate::rep::factor_through_target(&RepMorphism::identity(&m.map.dst), &m.map).is_some());
    if any {
        Verdict::HoldsOnProbes
    } else {
        Verdict::Inconclusive
    }
}
