//! Roofs `X <-s- M -f-> Y` with `s` a weak isomorphism, and complexes over
//! `E/A` given by roof differentials.

use super::{a_reject, a_trace, is_weak_iso, q_is_zero, PercolatingSpec, WeakIso};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{
    cokernel, hom_basis, hom_dim, kernel, pullback, sum_of_morphisms, DirectSum, RepMorphism, Representation,
};

/// Chains produced here come from image factorizations, so two links suffice.
const CHAIN_BUDGET: usize = 2;

#[derive(Clone, Debug)]
pub struct Roof {
    pub apex: Representation,
    pub leg_s: WeakIso,
    pub leg_f: RepMorphism,
}

impl Roof {
    /// The image of an honest morphism.
    pub fn of_map(f: &RepMorphism) -> Roof {
        Roof {
            apex: f.src.clone(),
            leg_s: WeakIso::identity(&f.src),
            leg_f: f.clone(),
        }
    }

    /// Roof from a pair of maps out of a common apex; `s` must be a weak
    /// isomorphism.
    pub fn new(spec: &PercolatingSpec, s: &RepMorphism, f: &RepMorphism) -> Result<Roof> {
        if s.src != f.src {
            return Err(Error::InvalidInput("roof legs do not share the apex".into()));
        }
        let leg_s = is_weak_iso(spec, s, CHAIN_BUDGET)
            .ok_or_else(|| Error::Verification("left leg is not a weak isomorphism".into()))?;
        Ok(Roof {
            apex: s.src.clone(),
            leg_s,
            leg_f: f.clone(),
        })
    }

    pub fn source(&self) -> &Representation {
        &self.leg_s.dst
    }

    pub fn target(&self) -> &Representation {
        &self.leg_f.dst
    }

    pub fn s(&self) -> RepMorphism {
        self.leg_s.composite()
    }

    pub fn verify(&self, spec: &PercolatingSpec) -> bool {
        self.leg_s.src == self.apex && self.leg_f.src == self.apex && self.leg_s.verify(spec)
    }
}

/// `r2 ∘ r1`: the apex is the pullback of `leg_s(r2)` along `leg_f(r1)`.
pub fn roof_compose(spec: &PercolatingSpec, r1: &Roof, r2: &Roof) -> Result<Roof> {
    spec.serre_generators()?;
    if r1.target() != r2.source() {
        return Err(Error::InvalidInput("roofs are not composable".into()));
    }
    let (_, t, g) = pullback(&r1.leg_f, &r2.s());
    if is_weak_iso(spec, &t, CHAIN_BUDGET).is_none() {
        return Err(Error::Verification("pulled back leg is not a weak isomorphism".into()));
    }
    Roof::new(spec, &r1.s().after(&t), &r2.leg_f.after(&g))
}

/// Equality in `E/A`: pull both apexes back over the common source and
/// test the difference of the induced maps with `q_is_zero`.
pub fn roof_equal(spec: &PercolatingSpec, r1: &Roof, r2: &Roof) -> Result<bool> {
    if r1.source() != r2.source() || r1.target() != r2.target() {
        return Err(Error::InvalidInput("roofs have different endpoints".into()));
    }
    let (_, t1, t2) = pullback(&r1.s(), &r2.s());
    q_is_zero(spec, &r1.leg_f.after(&t1).sub(&r2.leg_f.after(&t2)))
}

/// `dim Hom_{E/A}(x, y) = dim Hom(reject x, y / trace y)`.
pub fn quotient_hom_dim(spec: &PercolatingSpec, x: &Representation, y: &Representation) -> Result<usize> {
    let (r, _) = a_reject(spec, x)?;
    let (_, t) = a_trace(spec, y)?;
    Ok(hom_dim(&r, &cokernel(&t).0))
}

/// One roof per basis element of `Hom(reject x, y / trace y)`, obtained by
/// pulling `y -> y/trace y` back along it.
pub fn quotient_hom_roofs(spec: &PercolatingSpec, x: &Representation, y: &Representation) -> Result<Vec<Roof>> {
    let (r, incl) = a_reject(spec, x)?;
    let (_, t) = a_trace(spec, y)?;
    let (yt, pi) = cokernel(&t);
    hom_basis(&r, &yt)
        .iter()
        .map(|g| {
            let (_, s, f) = pullback(g, &pi);
            Roof::new(spec, &incl.after(&s), &f)
        })
        .collect()
}

/// `dim Hom_{E/A}(x, y)` counted through honest roofs: all roofs from `x`
/// factor through one apex `P -> x` built by pulling back `y^m -> (y/T)^m`,
/// and the count is the rank of `Hom(P, y)` in the quotient.
pub fn roof_hom_dim(spec: &PercolatingSpec, x: &Representation, y: &Representation) -> Result<usize> {
    let (r, incl) = a_reject(spec, x)?;
    let (_, t) = a_trace(spec, y)?;
    let (yt, pi) = cokernel(&t);
    let basis = hom_basis(&r, &yt);
    if basis.is_empty() {
        return Ok(0);
    }
    let yts = DirectSum::new(&vec![yt.clone(); basis.len()]);
    let g = yts.pair(&basis);
    let pis = sum_of_morphisms(&vec![pi.clone(); basis.len()]);
    let (p, s, _) = pullback(&g, &pis);
    let s = incl.after(&s);
    if is_weak_iso(spec, &s, CHAIN_BUDGET).is_none() {
        return Err(Error::Verification("common apex is not weakly isomorphic to the source".into()));
    }
    let (_, rp) = a_reject(spec, &p)?;
    let cols: Vec<Vec<_>> = hom_basis(&p, y).iter().map(|h| pi.after(h).after(&rp).coords()).collect();
    if cols.is_empty() || cols[0].is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_columns(cols[0].len(), &cols).rank())
}

/// A complex over `E/A`: objects of `E` with roof differentials.
#[derive(Clone, Debug)]
pub struct RoofComplex {
    pub lo: i32,
    pub entries: Vec<Representation>,
    /// `diffs[k]` goes from `entries[k]` to `entries[k + 1]`.
    pub diffs: Vec<Roof>,
}

impl RoofComplex {
    pub fn of_complex(x: &Complex) -> RoofComplex {
        RoofComplex {
            lo: x.lo(),
            entries: (x.lo()..=x.hi()).map(|n| x.entry(n)).collect(),
            diffs: (x.lo()..x.hi()).map(|n| Roof::of_map(&x.diff(n))).collect(),
        }
    }
}

/// A complex over `E` with degreewise weak isomorphisms onto the entries of
/// a roof complex.
#[derive(Clone, Debug)]
pub struct LiftedComplex {
    pub complex: Complex,
    pub comparisons: Vec<WeakIso>,
}

/// Lifts a roof complex right to left: each roof differential is composed
/// with the inverse of the comparison one degree up by a pullback, and the
/// new entry is cut down to the kernel of `d∘d`, whose cokernel lies in `A`
/// exactly when the input squares to zero in `E/A`.
pub fn lift_complex(spec: &PercolatingSpec, x: &RoofComplex) -> Result<LiftedComplex> {
    spec.serre_generators()?;
    let len = x.entries.len();
    if len == 0 {
        return Ok(LiftedComplex {
            complex: Complex::zero(&spec.class.ambient),
            comparisons: Vec::new(),
        });
    }
    if x.diffs.len() + 1 != len {
        return Err(Error::InvalidInput("roof complex needs one differential per adjacent pair".into()));
    }
    for (k, d) in x.diffs.iter().enumerate() {
        if d.source() != &x.entries[k] || d.target() != &x.entries[k + 1] || !d.verify(spec) {
            return Err(Error::InvalidInput(format!("differential at degree {} is not a roof between the entries", x.lo + k as i32)));
        }
    }
    let mut entries = vec![x.entries[len - 1].clone()];
    let mut comps = vec![RepMorphism::identity(&x.entries[len - 1])];
    let mut diffs: Vec<RepMorphism> = Vec::new();
    for k in (0..len - 1).rev() {
        let d = &x.diffs[k];
        let (_, t, mut g) = pullback(&d.leg_f, comps.last().expect("nonempty"));
        let mut s = d.s().after(&t);
        if let Some(next) = diffs.last() {
            let dd = next.after(&g);
            if !dd.is_zero() {
                let (_, inc) = kernel(&dd);
                if !spec.contains(&cokernel(&inc).0) {
                    return Err(Error::InvalidInput(format!(
                        "differentials do not compose to zero in the quotient at degree {}",
                        x.lo + k as i32
                    )));
                }
                g = g.after(&inc);
                s = s.after(&inc);
            }
        }
        entries.push(g.src.clone());
        comps.push(s);
        diffs.push(g);
    }
    entries.reverse();
    comps.reverse();
    diffs.reverse();
    let complex = Complex::new(&spec.class.ambient, x.lo, entries, diffs)?;
    let comparisons = comps
        .iter()
        .map(|s| is_weak_iso(spec, s, CHAIN_BUDGET))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Verification("comparison is not a weak isomorphism".into()))?;
    for k in 0..len - 1 {
        let n = x.lo + k as i32;
        let lhs = Roof::of_map(&comps[k + 1].after(&complex.diff(n)));
        let rhs = roof_compose(spec, &Roof::of_map(&comps[k]), &x.diffs[k])?;
        if !roof_equal(spec, &lhs, &rhs)? {
            return Err(Error::Verification(format!("lifted square at degree {n} does not commute in the quotient")));
        }
    }
    Ok(LiftedComplex { complex, comparisons })
}

/// The zero roof between two objects.
pub fn zero_roof(x: &Representation, y: &Representation) -> Roof {
    Roof::of_map(&RepMorphism::zero(x, y))
}

/// Whether a roof is zero in `E/A`.
pub fn roof_is_zero(spec: &PercolatingSpec, r: &Roof) -> Result<bool> {
    q_is_zero(spec, &r.leg_f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflation::ConflationClass;
    use crate::fixtures::a3;

    fn spec() -> (crate::fixtures::Fixture, PercolatingSpec) {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let s = PercolatingSpec::serre(&c, vec![0]);
        (f, s)
    }

    #[test]
    fn quotient_homs_in_a3() {
        let (f, s) = spec();
        assert_eq!(quotient_hom_dim(&s, f.get("P2"), f.get("S2")).unwrap(), 1);
        assert_eq!(quotient_hom_dim(&s, f.get("S1"), f.get("S1")).unwrap(), 0);
        for (_, x) in &f.named {
            for (_, y) in &f.named {
                assert_eq!(roof_hom_dim(&s, x, y).unwrap(), quotient_hom_dim(&s, x, y).unwrap());
            }
        }
    }

    #[test]
    fn roof_identities() {
        let (f, s) = spec();
        let p = hom_basis(f.get("P2"), f.get("S2")).remove(0);
        let inv = Roof::new(&s, &p, &RepMorphism::identity(f.get("P2"))).unwrap();
        let id = Roof::of_map(&RepMorphism::identity(f.get("S2")));
        let c = roof_compose(&s, &id, &inv).unwrap();
        assert!(roof_equal(&s, &c, &inv).unwrap());
        // p∘p^{-1} = 1 in the quotient.
        let back = roof_compose(&s, &inv, &Roof::of_map(&p)).unwrap();
        assert!(roof_equal(&s, &back, &id).unwrap());
    }

    #[test]
    fn lift_two_term_roof_complex() {
        let (f, s) = spec();
        let p = hom_basis(f.get("P2"), f.get("S2")).remove(0);
        let inv = Roof::new(&s, &p, &RepMorphism::identity(f.get("P2"))).unwrap();
        let x = RoofComplex {
            lo: 0,
            entries: vec![f.get("S2").clone(), f.get("P2").clone()],
            diffs: vec![inv],
        };
        let l = lift_complex(&s, &x).unwrap();
        assert_eq!(l.complex.entry(0), *f.get("P2"));
        let id = Complex::stalk(f.get("P3"), 0);
        let l = lift_complex(&s, &RoofComplex::of_complex(&id)).unwrap();
        assert_eq!(l.complex, id);
    }
}
