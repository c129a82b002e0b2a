//! The exact hull, modelled by two-term complexes `X^-1 >-> X^0` with
//! monic differential sitting inside the derived category.

use crate::axioms::ClassCertificate;
use crate::complex::{cone, homotopy_between, ChainMap, Complex, QuasiIsoMode, Ternary};
use crate::conflation::ConflationClass;
use crate::derived::{derived_hom, is_quasi_iso};
use crate::error::{Error, Result};
use crate::rep::{DirectSum, RepMorphism, Representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullObject {
    pub complex: Complex,
}

impl HullObject {
    /// Checks the support lies in degrees `-1, 0` with a monic differential.
    pub fn new(complex: Complex) -> Result<Self> {
        if !complex.is_zero() && (complex.lo() < -1 || complex.hi() > 0) {
            return Err(Error::InvalidInput(format!("hull objects live in degrees -1 and 0, got {complex:?}")));
        }
        if !complex.diff(-1).is_mono() {
            return Err(Error::InvalidInput("hull differential is not monic".into()));
        }
        Ok(HullObject { complex })
    }

    pub fn left(&self) -> Representation {
        self.complex.entry(-1)
    }

    pub fn right(&self) -> Representation {
        self.complex.entry(0)
    }

    pub fn differential(&self) -> RepMorphism {
        self.complex.diff(-1)
    }
}

/// `x` as the stalk `0 -> x`.
pub fn hull_embed(x: &Representation) -> HullObject {
    HullObject {
        complex: Complex::stalk(x, 0),
    }
}

/// The hull object `src -> dst` representing the cokernel of a monic `f`.
pub fn hull_cokernel(f: &RepMorphism) -> Result<HullObject> {
    if !f.is_mono() {
        return Err(Error::InvalidInput("hull cokernels need a monomorphism".into()));
    }
    Ok(HullObject {
        complex: Complex::two_term(f, -1),
    })
}

/// `Hom(a, Σ^shift b)` computed in the derived category.
pub fn hull_hom_dim(c: &ConflationClass, a: &HullObject, b: &HullObject, shift: i32) -> Result<usize> {
    Ok(derived_hom(c, &a.complex, &b.complex, shift)?.dimension)
}

/// The map `cone(u) -> z` extending `v` by a null-homotopy of `v∘u`, if
/// one exists.
pub fn hull_comparison(u: &ChainMap, v: &ChainMap) -> Option<ChainMap> {
    if u.dst != v.src {
        return None;
    }
    let (x, y, z) = (&u.src, &u.dst, &v.dst);
    let vu = v.after(u);
    let h = homotopy_between(&vu, &ChainMap::zero(x, z))?;
    let k = cone(u);
    let map = ChainMap::new(&k, z, |n| {
        let s = DirectSum::new(&[x.entry(n + 1), y.entry(n)]);
        h.map(n + 1).after(&s.projections[0]).add(&v.comp(n).after(&s.projections[1]))
    })
    .ok()?;
    Some(map)
}

/// Whether `x -u-> y -v-> z` is a conflation of the hull, that is a
/// triangle: `Yes` when the comparison `cone(u) -> z` is a quasi-iso,
/// `No` for non-composable input or when `v∘u` is not null-homotopic,
/// and `Unknown` when the quasi-iso test is inconclusive.
pub fn hull_conflation_check(
    c: &ConflationClass,
    objects: [&HullObject; 3],
    u: &ChainMap,
    v: &ChainMap,
    cert: &ClassCertificate,
) -> Ternary {
    let [x, y, z] = objects;
    if u.src != x.complex || u.dst != y.complex || v.src != y.complex || v.dst != z.complex {
        return Ternary::No;
    }
    if u.commutation_failure().is_some() || v.commutation_failure().is_some() {
        return Ternary::No;
    }
    match hull_comparison(u, v) {
        Some(phi) => is_quasi_iso(c, &phi, QuasiIsoMode::Weak, cert),
        None => Ternary::No,
    }
}

/// Stalk maps for `a -> b -> c` on objects of `E`.
pub fn stalk_maps(f: &RepMorphism, g: &RepMorphism) -> (ChainMap, ChainMap) {
    let (x, y, z) = (Complex::stalk(&f.src, 0), Complex::stalk(&f.dst, 0), Complex::stalk(&g.dst, 0));
    (
        ChainMap::new(&x, &y, |_| f.clone()).expect("stalk map"),
        ChainMap::new(&y, &z, |_| g.clone()).expect("stalk map"),
    )
}

/// The conflation `X^-1 >-> X^0 ->> h` with both ends in `E`.
pub fn conflation_presentation(h: &HullObject) -> ([HullObject; 3], ChainMap, ChainMap) {
    let a = hull_embed(&h.left());
    let b = hull_embed(&h.right());
    let u = ChainMap::new(&a.complex, &b.complex, |_| h.differential()).expect("stalk map");
    let v = ChainMap::new(&b.complex, &h.complex, |n| {
        if n == 0 {
            RepMorphism::identity(&h.right())
        } else {
            RepMorphism::zero(&b.complex.entry(n), &h.complex.entry(n))
        }
    })
    .expect("inclusion of the degree zero term");
    ([a, b, h.clone()], u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflation::ConflationClass;
    use crate::fixtures::{a3, a3_removed_sequence};
    use crate::rep::hom_basis;

    #[test]
    fn cokernel_of_s2_in_i2_is_s3() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let s = a3_removed_sequence(&f);
        let h = hull_cokernel(&s.inflation).unwrap();
        let s3 = hull_embed(f.get("S3"));
        let q = ChainMap::new(&h.complex, &s3.complex, |n| {
            if n == 0 {
                s.deflation.clone()
            } else {
                RepMorphism::zero(&h.complex.entry(n), &s3.complex.entry(n))
            }
        })
        .unwrap();
        assert_eq!(is_quasi_iso(&c, &q, QuasiIsoMode::Strict, &ClassCertificate::abelian()), Ternary::Yes);
        let zero = RepMorphism::zero(&Representation::zero(&f.algebra), f.get("S1"));
        assert_eq!(hull_cokernel(&zero).unwrap(), hull_embed(f.get("S1")));
        assert!(hull_cokernel(&hom_basis(f.get("P2"), f.get("S2"))[0]).is_err());
    }

    #[test]
    fn presentations_are_conflations() {
        let f = a3();
        let c = ConflationClass::all_short_exact(&f.algebra);
        let h = hull_cokernel(&hom_basis(f.get("S1"), f.get("P3"))[0]).unwrap();
        let (objs, u, v) = conflation_presentation(&h);
        let verdict = hull_conflation_check(&c, [&objs[0], &objs[1], &objs[2]], &u, &v, &ClassCertificate::abelian());
        assert_eq!(verdict, Ternary::Yes);
        let u0 = ChainMap::zero(&objs[0].complex, &objs[1].complex);
        assert_eq!(hull_conflation_check(&c, [&objs[0], &objs[1], &objs[2]], &u0, &v, &ClassCertificate::abelian()), Ternary::No);
        assert_eq!(hull_conflation_check(&c, [&objs[1], &objs[0], &objs[2]], &u, &v, &ClassCertificate::abelian()), Ternary::No);
    }
}
