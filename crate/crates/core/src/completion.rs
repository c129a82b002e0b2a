//! Idempotent completion `(A, p)` and the levelwise weak idempotent
//! completion built by adjoining kernels of retractions.

use rand::Rng;

use crate::complex::Ternary;
use crate::axioms::{ClassCertificate, Verdict};
use crate::conflation::{is_conflation, retract_conflation, ConflationClass, RetractDiagram};
use crate::derived::derived_hom_table;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{independent_subset, Matrix, Rational};
use crate::rep::{
    combination, hom_basis, is_isomorphic, seeded_rng, split_idempotent, sum_of_morphisms, DirectSum, KCPair,
    RepMorphism, Representation,
};

/// An object of the idempotent completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdemObject {
    pub carrier: Representation,
    pub idempotent: RepMorphism,
}

impl IdemObject {
    pub fn new(carrier: &Representation, idempotent: &RepMorphism) -> Result<Self> {
        if idempotent.src != *carrier || idempotent.dst != *carrier {
            return Err(Error::InvalidInput("idempotent is not an endomorphism of the carrier".into()));
        }
        if idempotent.after(idempotent) != *idempotent {
            return Err(Error::NotIdempotent);
        }
        Ok(IdemObject {
            carrier: carrier.clone(),
            idempotent: idempotent.clone(),
        })
    }

    pub fn whole(x: &Representation) -> Self {
        IdemObject {
            carrier: x.clone(),
            idempotent: RepMorphism::identity(x),
        }
    }

    /// `(A, 1 - p)`.
    pub fn complement(&self) -> Self {
        IdemObject {
            carrier: self.carrier.clone(),
            idempotent: RepMorphism::identity(&self.carrier).sub(&self.idempotent),
        }
    }

    /// The summand cut out by the idempotent, with `r: A -> im`, `s: im -> A`.
    pub fn realize(&self) -> (Representation, RepMorphism, RepMorphism) {
        split_idempotent(&self.idempotent).expect("checked idempotent")
    }

    pub fn is_zero(&self) -> bool {
        self.idempotent.is_zero()
    }

    pub fn direct_sum(parts: &[IdemObject]) -> Self {
        let s = DirectSum::new(&parts.iter().map(|p| p.carrier.clone()).collect::<Vec<_>>());
        IdemObject {
            carrier: s.object,
            idempotent: sum_of_morphisms(&parts.iter().map(|p| p.idempotent.clone()).collect::<Vec<_>>()),
        }
    }

    /// Whether `f` is a morphism `self -> other` of the completion.
    pub fn is_morphism_to(&self, other: &IdemObject, f: &RepMorphism) -> bool {
        f.src == self.carrier && f.dst == other.carrier && other.idempotent.after(f).after(&self.idempotent) == *f
    }
}

/// Basis of `q∘Hom(A, B)∘p`.
pub fn idem_hom_basis(a: &IdemObject, b: &IdemObject) -> Vec<RepMorphism> {
    let compressed: Vec<RepMorphism> = hom_basis(&a.carrier, &b.carrier)
        .iter()
        .map(|h| b.idempotent.after(h).after(&a.idempotent))
        .collect();
    let Some(first) = compressed.first() else {
        return Vec::new();
    };
    let coords: Vec<Vec<Rational>> = compressed.iter().map(RepMorphism::coords).collect();
    let keep = independent_subset(&coords, first.coord_len());
    keep.into_iter().filter(|&k| !compressed[k].is_zero()).map(|k| compressed[k].clone()).collect()
}

/// `(A, 1) ≅ (A, p) ⊕ (A, 1 - p)`: inclusions and projections are `p` and
/// `1 - p` viewed as morphisms between the three objects.
#[derive(Clone, Debug)]
pub struct IdemSplit {
    pub whole: IdemObject,
    pub first: IdemObject,
    pub second: IdemObject,
    pub inclusions: [RepMorphism; 2],
    pub projections: [RepMorphism; 2],
}

impl IdemSplit {
    /// Biproduct identities in the completion, where the identity of
    /// `(A, e)` is `e`.
    pub fn verify(&self) -> bool {
        let [i1, i2] = &self.inclusions;
        let [p1, p2] = &self.projections;
        let (e1, e2) = (&self.first.idempotent, &self.second.idempotent);
        self.first.is_morphism_to(&self.whole, i1)
            && self.second.is_morphism_to(&self.whole, i2)
            && self.whole.is_morphism_to(&self.first, p1)
            && self.whole.is_morphism_to(&self.second, p2)
            && p1.after(i1) == *e1
            && p2.after(i2) == *e2
            && p1.after(i2).is_zero()
            && p2.after(i1).is_zero()
            && i1.after(p1).add(&i2.after(p2)) == self.whole.idempotent
    }
}

/// `(A, 1) ≅ (A, p) ⊕ (A, 1 - p)` for `a = (A, p)`.
pub fn idem_split_decomposition(a: &IdemObject) -> IdemSplit {
    let (p, q) = (a.idempotent.clone(), a.complement().idempotent);
    IdemSplit {
        whole: IdemObject::whole(&a.carrier),
        first: a.clone(),
        second: a.complement(),
        inclusions: [p.clone(), q.clone()],
        projections: [p, q],
    }
}

/// Witness that a level object is the kernel `(A, e - s∘r)` of a
/// retraction `r` with section `s`.
#[derive(Clone, Debug)]
pub struct RetractionWitness {
    pub source: String,
    pub target: String,
    pub retraction: RepMorphism,
    pub section: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct WicObject {
    pub name: String,
    pub object: IdemObject,
    pub provenance: Option<RetractionWitness>,
}

#[derive(Clone, Debug)]
pub struct WicLevel {
    pub level: usize,
    pub new_objects: Vec<WicObject>,
}

/// Which pairs of objects are searched for retractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WicSearch {
    /// Retractions between the listed objects of earlier levels.
    Listed,
    /// Also retractions from and onto pairwise direct sums of them.
    Sums,
}

#[derive(Clone, Debug)]
pub struct WicTower {
    pub levels: Vec<WicLevel>,
    /// The last level, when a further level would add nothing new.
    pub stabilized_at: Option<usize>,
}

impl WicTower {
    pub fn objects(&self) -> impl Iterator<Item = &WicObject> {
        self.levels.iter().flat_map(|l| l.new_objects.iter())
    }
}

/// A pair `(r, s)` with `r∘s = 1_b`, searched by solving for `s` against
/// seeded choices of `r`.
fn find_retraction(a: &IdemObject, b: &IdemObject, rng: &mut rand_chacha::ChaCha8Rng) -> Option<(RepMorphism, RepMorphism)> {
    if b.is_zero() {
        return None;
    }
    let rs = idem_hom_basis(a, b);
    let ss = idem_hom_basis(b, a);
    if rs.is_empty() || ss.is_empty() {
        return None;
    }
    let target = b.idempotent.coords();
    let mut tries: Vec<RepMorphism> = rs.clone();
    for _ in 0..6 {
        let coeffs: Vec<Rational> = (0..rs.len()).map(|_| crate::linalg::q(rng.gen_range(-3..=3))).collect();
        tries.push(combination(&rs, &coeffs, &a.carrier, &b.carrier));
    }
    tries.into_iter().find_map(|r| {
        let cols: Vec<Vec<Rational>> = ss.iter().map(|s| r.after(s).coords()).collect();
        let m = Matrix::from_columns(target.len(), &cols);
        let sol = m.solve(&Matrix::new(target.len(), 1, target.clone()))?;
        let s = combination(&ss, &sol.column(0), &b.carrier, &a.carrier);
        (r.after(&s) == b.idempotent).then_some((r, s))
    })
}

fn realized(o: &IdemObject) -> Representation {
    o.realize().0
}

/// Whether `x` is isomorphic to a direct sum of copies of `classes`,
/// searched over multisets whose dimension vectors add up to that of `x`.
pub fn in_additive_closure(x: &Representation, classes: &[Representation]) -> bool {
    fn go(x: &Representation, classes: &[Representation], start: usize, rest: &[usize], chosen: &mut Vec<Representation>) -> bool {
        if rest.iter().all(|&d| d == 0) {
            return if chosen.is_empty() { x.is_zero() } else { is_isomorphic(x, &DirectSum::new(chosen).object) };
        }
        for k in start..classes.len() {
            let c = &classes[k];
            if c.is_zero() || c.dims().iter().zip(rest).any(|(a, b)| a > b) {
                continue;
            }
            let next: Vec<usize> = rest.iter().zip(c.dims()).map(|(a, b)| a - b).collect();
            chosen.push(c.clone());
            if go(x, classes, k, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(x, classes, 0, x.dims(), &mut Vec::new())
}

/// Adjoins kernels of retractions level by level until every kernel found
/// lies in the additive closure of the earlier levels, or `max_level` is
/// reached. Level 0 holds the generators.
pub fn wic_build(
    generators: &[(String, Representation)],
    max_level: usize,
    search: WicSearch,
    seed: u64,
) -> Result<WicTower> {
    if let Some((_, g)) = generators.first() {
        if generators.iter().any(|(_, x)| !x.same_algebra(g)) {
            return Err(Error::InvalidInput("generators live over different algebras".into()));
        }
    }
    let mut rng = seeded_rng(seed);
    let mut known: Vec<WicObject> = generators
        .iter()
        .map(|(n, x)| WicObject {
            name: n.clone(),
            object: IdemObject::whole(x),
            provenance: None,
        })
        .collect();
    let mut classes: Vec<Representation> = known.iter().map(|o| realized(&o.object)).collect();
    let mut levels = vec![WicLevel {
        level: 0,
        new_objects: known.clone(),
    }];
    for level in 1..=max_level {
        let mut pool: Vec<(String, IdemObject)> = known.iter().map(|o| (o.name.clone(), o.object.clone())).collect();
        if search == WicSearch::Sums {
            let base = pool.clone();
            for i in 0..base.len() {
                for j in i..base.len() {
                    pool.push((
                        format!("{}+{}", base[i].0, base[j].0),
                        IdemObject::direct_sum(&[base[i].1.clone(), base[j].1.clone()]),
                    ));
                }
            }
        }
        let mut fresh = Vec::new();
        for (an, a) in &pool {
            for (bn, b) in &pool {
                let Some((r, s)) = find_retraction(a, b, &mut rng) else {
                    continue;
                };
                let k = IdemObject {
                    carrier: a.carrier.clone(),
                    idempotent: a.idempotent.sub(&s.after(&r)),
                };
                if k.is_zero() {
                    continue;
                }
                let real = realized(&k);
                if in_additive_closure(&real, &classes) {
                    continue;
                }
                classes.push(real);
                fresh.push(WicObject {
                    name: format!("ker({an}->{bn})"),
                    object: k,
                    provenance: Some(RetractionWitness {
                        source: an.clone(),
                        target: bn.clone(),
                        retraction: r,
                        section: s,
                    }),
                });
            }
        }
        if fresh.is_empty() {
            return Ok(WicTower {
                levels,
                stabilized_at: Some(level - 1),
            });
        }
        known.extend(fresh.iter().cloned());
        levels.push(WicLevel {
            level,
            new_objects: fresh,
        });
    }
    Ok(WicTower {
        levels,
        stabilized_at: None,
    })
}

/// Derived hom dimensions between completion objects, computed on the
/// summands they cut out.
pub fn idem_derived_hom_table(c: &ConflationClass, objects: &[IdemObject], shifts: &[i32], exec: Exec) -> Result<Vec<usize>> {
    let real: Vec<Representation> = objects.iter().map(realized).collect();
    derived_hom_table(c, &real, shifts, exec)
}

/// A composable pair of completion morphisms `x -> y -> z`.
#[derive(Clone, Debug)]
pub struct IdemPair {
    pub objects: [IdemObject; 3],
    pub inflation: RepMorphism,
    pub deflation: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct InheritedConflation {
    pub verdict: Ternary,
    /// The conflation of `E` and the retract diagram onto the realized pair.
    pub witness: Option<(KCPair, KCPair, RetractDiagram)>,
}

/// Whether a pair over the completion is a direct summand of a conflation
/// of `E`. With `A = X ⊕ X'` and `C = Z ⊕ Z'` split by the idempotents, the
/// candidate is `A -> Y ⊕ X' ⊕ Z' -> C`, the realized pair `X -> Y -> Z`
/// plus the split sequences `X' = X' -> 0` and `0 -> Z' = Z'`; under R0* it
/// is a conflation exactly when the pair is inherited.
pub fn inherited_conflation(c: &ConflationClass, pair: &IdemPair, cert: &ClassCertificate) -> Result<InheritedConflation> {
    let [a, b, z] = &pair.objects;
    let (f, g) = (&pair.inflation, &pair.deflation);
    if !a.is_morphism_to(b, f) || !b.is_morphism_to(z, g) {
        return Err(Error::InvalidInput("maps are not morphisms of the completion".into()));
    }
    if !g.after(f).is_zero() {
        return Ok(InheritedConflation {
            verdict: Ternary::No,
            witness: None,
        });
    }
    let (x, ra, sa) = a.realize();
    let (y, rb, sb) = b.realize();
    let (zz, rz, sz) = z.realize();
    let (x2, ra2, _) = a.complement().realize();
    let (z2, _, sz2) = z.complement().realize();
    let mid = DirectSum::new(&[y.clone(), x2.clone(), z2.clone()]);
    let big_f = mid.pair(&[rb.after(f), ra2, RepMorphism::zero(&a.carrier, &z2)]);
    let big_g = mid.copair(&[g.after(&sb), RepMorphism::zero(&x2, &z.carrier), sz2]);
    let outer = KCPair::new(big_f, big_g)?;
    let inner = KCPair::new(rb.after(f).after(&sa), rz.after(g).after(&sb))?;
    debug_assert!(inner.left() == &x && inner.middle() == &y && inner.right() == &zz);
    let diagram = RetractDiagram {
        sections: [sa, mid.injections[0].clone(), sz],
        retractions: [ra, mid.projections[0].clone(), rz],
    };
    if is_conflation(c.object_class(), &outer) {
        let ok = retract_conflation(c, &outer, &inner, &diagram)?;
        if !ok {
            return Err(Error::Inconsistent("retract of a conflation is not a conflation".into()));
        }
        return Ok(InheritedConflation {
            verdict: Ternary::Yes,
            witness: Some((outer, inner, diagram)),
        });
    }
    let verdict = if cert.r0_star == Verdict::HoldsOnProbes { Ternary::No } else { Ternary::Unknown };
    Ok(InheritedConflation { verdict, witness: None })
}

/// Seeded idempotent `g π g^{-1}` on `x`, with `π` a coordinate projection
/// of `x = parts[0] ⊕ ...` and `g` a random automorphism.
pub fn random_idempotent(parts: &[Representation], rng: &mut rand_chacha::ChaCha8Rng) -> RepMorphism {
    let s = DirectSum::new(parts);
    let x = &s.object;
    let chosen: Vec<usize> = (0..parts.len()).filter(|_| rng.gen_bool(0.5)).collect();
    let mut pi = RepMorphism::zero(x, x);
    for &k in &chosen {
        pi = pi.add(&s.injections[k].after(&s.projections[k]));
    }
    let basis = hom_basis(x, x);
    let g = loop {
        let coeffs: Vec<Rational> = (0..basis.len()).map(|_| crate::linalg::q(rng.gen_range(-2..=2))).collect();
        let g = combination(&basis, &coeffs, x, x);
        if g.is_iso() {
            break g;
        }
    };
    g.after(&pi).after(&g.inverse().expect("automorphism"))
}
