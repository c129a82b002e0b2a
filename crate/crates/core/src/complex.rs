//! Bounded cochain complexes of representations.
//!
//! Differentials raise degree: `d^n: X^n -> X^{n+1}`. A complex stores its
//! entries on a contiguous degree window with zero ends trimmed.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::conflation::{is_conflation, is_deflation, ConflationClass};
use crate::error::{Error, Result};
use crate::linalg::{block_invertible_combination, q, Matrix, Rational, DEFAULT_SEED};
use crate::quiver::QuiverAlgebra;
use crate::rep::{
    cokernel, combination, complement_projections, corestrict, hom_basis, image, kernel, power,
    trace, DirectSum, KCPair, RepMorphism, Representation,
};

#[derive(Clone)]
pub struct Complex {
    alg: Arc<QuiverAlgebra>,
    lo: i32,
    entries: Vec<Representation>,
    /// `diffs[k]` starts at degree `lo + k`.
    diffs: Vec<RepMorphism>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.entries == other.entries && self.diffs == other.diffs
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{}:{:?}", self.lo + k as i32, e.dims())?;
        }
        write!(f, "]")
    }
}

impl Complex {
    /// Builds a complex from entries starting at degree `lo` and the
    /// differentials between consecutive entries, checking `d∘d = 0`.
    pub fn new(
        alg: &Arc<QuiverAlgebra>,
        lo: i32,
        entries: Vec<Representation>,
        diffs: Vec<RepMorphism>,
    ) -> Result<Self> {
        if diffs.len() != entries.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} entries need {} differentials, got {}",
                entries.len(),
                entries.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.src != entries[k] || d.dst != entries[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "differential at degree {} has wrong endpoints",
                    lo + k as i32
                )));
            }
        }
        let c = Complex {
            alg: alg.clone(),
            lo,
            entries,
            diffs,
        };
        if let Some(n) = c.square_zero_failure() {
            return Err(Error::InvalidInput(format!("d∘d != 0 at degree {n}")));
        }
        Ok(c.trimmed())
    }

    fn from_parts(alg: &Arc<QuiverAlgebra>, lo: i32, hi: i32, entry: impl Fn(i32) -> Representation, diff: impl Fn(i32, &Representation, &Representation) -> RepMorphism) -> Self {
        let entries: Vec<Representation> = (lo..=hi).map(entry).collect();
        let diffs = (0..entries.len().saturating_sub(1))
            .map(|k| diff(lo + k as i32, &entries[k], &entries[k + 1]))
            .collect();
        let c = Complex {
            alg: alg.clone(),
            lo,
            entries,
            diffs,
        };
        assert_eq!(c.square_zero_failure(), None, "constructed complex has d∘d != 0");
        c.trimmed()
    }

    pub fn zero(alg: &Arc<QuiverAlgebra>) -> Self {
        Complex {
            alg: alg.clone(),
            lo: 0,
            entries: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `x` concentrated in degree `n`.
    pub fn stalk(x: &Representation, n: i32) -> Self {
        Complex {
            alg: x.algebra().clone(),
            lo: n,
            entries: vec![x.clone()],
            diffs: Vec::new(),
        }
        .trimmed()
    }

    /// `f` as a complex with source in degree `n` and target in `n + 1`.
    pub fn two_term(f: &RepMorphism, n: i32) -> Self {
        Complex {
            alg: f.src.algebra().clone(),
            lo: n,
            entries: vec![f.src.clone(), f.dst.clone()],
            diffs: vec![f.clone()],
        }
        .trimmed()
    }

    /// The standard contractible complex `x = x` in degrees `n, n + 1`.
    pub fn contractible(x: &Representation, n: i32) -> Self {
        Self::two_term(&RepMorphism::identity(x), n)
    }

    pub fn algebra(&self) -> &Arc<QuiverAlgebra> {
        &self.alg
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top degree; `lo - 1` for the zero complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.entries.len() as i32 - 1
    }

    pub fn entry(&self, n: i32) -> Representation {
        match self.index(n) {
            Some(k) => self.entries[k].clone(),
            None => Representation::zero(&self.alg),
        }
    }

    /// `d^n: X^n -> X^{n+1}`.
    pub fn diff(&self, n: i32) -> RepMorphism {
        match self.index(n) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => RepMorphism::zero(&self.entry(n), &self.entry(n + 1)),
        }
    }

    fn index(&self, n: i32) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(Representation::total_dim).sum()
    }

    /// First degree `n` with `d^{n+1}∘d^n != 0`.
    pub fn square_zero_failure(&self) -> Option<i32> {
        self.diffs
            .windows(2)
            .position(|w| !w[1].after(&w[0]).is_zero())
            .map(|k| self.lo + k as i32)
    }

    fn trimmed(mut self) -> Self {
        while self.entries.last().is_some_and(Representation::is_zero) {
            self.entries.pop();
            self.diffs.pop();
        }
        let start = self.entries.iter().take_while(|e| e.is_zero()).count();
        if start == self.entries.len() {
            return Complex::zero(&self.alg);
        }
        self.entries.drain(..start);
        self.diffs.drain(..start.min(self.diffs.len()));
        self.lo += start as i32;
        self
    }

    /// `Σ^k x`: entries `x^{n+k}`, differentials multiplied by `(-1)^k`.
    pub fn shift(&self, k: i32) -> Self {
        let sign = if k % 2 == 0 { q(1) } else { q(-1) };
        Complex {
            alg: self.alg.clone(),
            lo: self.lo - k,
            entries: self.entries.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&sign)).collect(),
        }
    }

    /// Degreewise direct sum.
    pub fn direct_sum(parts: &[Complex]) -> Self {
        let alg = parts[0].alg.clone();
        let Some(lo) = parts.iter().filter(|p| !p.is_zero()).map(|p| p.lo).min() else {
            return Complex::zero(&alg);
        };
        let hi = parts.iter().map(|p| p.hi()).max().unwrap_or(lo);
        let sum = |n: i32| DirectSum::of(&alg, &parts.iter().map(|p| p.entry(n)).collect::<Vec<_>>());
        Self::from_parts(
            &alg,
            lo,
            hi,
            |n| sum(n).object,
            |n, _, _| {
                let ds: Vec<RepMorphism> = parts.iter().map(|p| p.diff(n)).collect();
                block_sum(&alg, &ds)
            },
        )
    }

    /// Degrees carrying a nonzero entry.
    pub fn support(&self) -> Vec<i32> {
        (self.lo..=self.hi()).collect()
    }
}

fn block_sum(alg: &Arc<QuiverAlgebra>, maps: &[RepMorphism]) -> RepMorphism {
    let src = DirectSum::of(alg, &maps.iter().map(|m| m.src.clone()).collect::<Vec<_>>()).object;
    let dst = DirectSum::of(alg, &maps.iter().map(|m| m.dst.clone()).collect::<Vec<_>>()).object;
    let blocks = (0..alg.n_vertices())
        .map(|v| {
            let bs: Vec<&Matrix> = maps.iter().map(|m| &m.blocks[v]).collect();
            if bs.is_empty() {
                Matrix::zeros(0, 0)
            } else {
                Matrix::block_diag(&bs)
            }
        })
        .collect();
    RepMorphism::new_unchecked(&src, &dst, blocks)
}

/// A morphism of complexes, one component per degree.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub src: Complex,
    pub dst: Complex,
    lo: i32,
    comps: Vec<RepMorphism>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap {:?} -> {:?}", self.src, self.dst)
    }
}

impl ChainMap {
    /// Builds a chain map from its components, checking that every square
    /// commutes.
    pub fn new(src: &Complex, dst: &Complex, comp: impl Fn(i32) -> RepMorphism) -> Result<Self> {
        let m = Self::new_unchecked(src, dst, comp);
        for (k, c) in m.comps.iter().enumerate() {
            let n = m.lo + k as i32;
            if c.src != src.entry(n) || c.dst != dst.entry(n) {
                return Err(Error::DimensionMismatch(format!("component at degree {n}")));
            }
        }
        if let Some(n) = m.commutation_failure() {
            return Err(Error::InvalidInput(format!("chain map square fails at degree {n}")));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(src: &Complex, dst: &Complex, comp: impl Fn(i32) -> RepMorphism) -> Self {
        let lo = src.lo.max(dst.lo);
        let hi = src.hi().min(dst.hi());
        let comps = if src.is_zero() || dst.is_zero() {
            Vec::new()
        } else {
            (lo..=hi).map(comp).collect()
        };
        ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo,
            comps,
        }
    }

    pub fn comp(&self, n: i32) -> RepMorphism {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            RepMorphism::zero(&self.src.entry(n), &self.dst.entry(n))
        }
    }

    /// Degrees where both complexes are nonzero.
    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.lo..self.lo + self.comps.len() as i32
    }

    /// First degree `n` where `f^{n+1}∘d^n != d^n∘f^n`.
    pub fn commutation_failure(&self) -> Option<i32> {
        let lo = self.src.lo.min(self.dst.lo) - 1;
        let hi = self.src.hi().max(self.dst.hi());
        (lo..=hi).find(|&n| {
            self.comp(n + 1).after(&self.src.diff(n)) != self.dst.diff(n).after(&self.comp(n))
        })
    }

    pub fn identity(x: &Complex) -> Self {
        Self::new_unchecked(x, x, |n| RepMorphism::identity(&x.entry(n)))
    }

    pub fn zero(x: &Complex, y: &Complex) -> Self {
        Self::new_unchecked(x, y, |n| RepMorphism::zero(&x.entry(n), &y.entry(n)))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        Self::new_unchecked(&first.src, &self.dst, |n| self.comp(n).after(&first.comp(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        Self::new_unchecked(&self.src, &self.dst, |n| self.comp(n).add(&other.comp(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        Self::new_unchecked(&self.src, &self.dst, |n| self.comp(n).sub(&other.comp(n)))
    }

    pub fn neg(&self) -> ChainMap {
        Self::new_unchecked(&self.src, &self.dst, |n| self.comp(n).neg())
    }

    pub fn scale(&self, c: &Rational) -> ChainMap {
        Self::new_unchecked(&self.src, &self.dst, |n| self.comp(n).scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RepMorphism::is_zero)
    }

    /// Every component invertible.
    pub fn is_iso(&self) -> bool {
        let degs = self.src.lo.min(self.dst.lo)..=self.src.hi().max(self.dst.hi());
        degs.into_iter().all(|n| self.comp(n).is_iso())
    }

    /// `Σ^k f`.
    pub fn shift(&self, k: i32) -> ChainMap {
        Self::new_unchecked(&self.src.shift(k), &self.dst.shift(k), |n| self.comp(n + k))
    }

    /// Coordinates over all degrees of the window, for linear algebra on
    /// spaces of chain maps between fixed complexes.
    pub fn coords(&self) -> Vec<Rational> {
        self.comps.iter().flat_map(RepMorphism::coords).collect()
    }
}

/// `cone(f)^n = X^{n+1} ⊕ Y^n` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> Complex {
    cone_triangle(f).0
}

/// The cone with the structure maps `Y -> cone(f) -> ΣX`.
pub fn cone_triangle(f: &ChainMap) -> (Complex, ChainMap, ChainMap) {
    let (x, y) = (&f.src, &f.dst);
    let alg = x.algebra().clone();
    if x.is_zero() && y.is_zero() {
        let z = Complex::zero(&alg);
        return (z.clone(), ChainMap::zero(y, &z), ChainMap::zero(&z, &x.shift(1)));
    }
    let lo = if x.is_zero() { y.lo } else if y.is_zero() { x.lo - 1 } else { (x.lo - 1).min(y.lo) };
    let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { (x.hi() - 1).max(y.hi()) };
    let sum = |n: i32| DirectSum::new(&[x.entry(n + 1), y.entry(n)]);
    let c = Complex::from_parts(
        &alg,
        lo,
        hi,
        |n| sum(n).object,
        |n, _, _| {
            let (s, t) = (sum(n), sum(n + 1));
            let (px, py) = (&s.projections[0], &s.projections[1]);
            let (ix, iy) = (&t.injections[0], &t.injections[1]);
            let a = ix.after(&x.diff(n + 1).neg().after(px));
            let b = iy.after(&f.comp(n + 1).after(px));
            let d = iy.after(&y.diff(n).after(py));
            a.add(&b).add(&d)
        },
    );
    let into = ChainMap::new_unchecked(y, &c, |n| sum(n).injections[1].clone());
    let sx = x.shift(1);
    let out = ChainMap::new_unchecked(&c, &sx, |n| sum(n).projections[0].clone());
    (c, into, out)
}

/// A bicomplex with commuting squares; `C^{i,j}` has horizontal degree `i`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    alg: Arc<QuiverAlgebra>,
    entries: BTreeMap<(i32, i32), Representation>,
    /// `(i, j) -> (i + 1, j)`.
    horizontal: BTreeMap<(i32, i32), RepMorphism>,
    /// `(i, j) -> (i, j + 1)`.
    vertical: BTreeMap<(i32, i32), RepMorphism>,
}

impl DoubleComplex {
    /// Columns `columns[k]` sit in horizontal degree `lo + k`, and
    /// `maps[k]: columns[k] -> columns[k + 1]`.
    pub fn from_columns(alg: &Arc<QuiverAlgebra>, lo: i32, columns: Vec<Complex>, maps: Vec<ChainMap>) -> Result<Self> {
        if maps.len() != columns.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch("column maps".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.src != columns[k] || m.dst != columns[k + 1] {
                return Err(Error::DimensionMismatch(format!("column map {k} endpoints")));
            }
            if let Some(n) = m.commutation_failure() {
                return Err(Error::InvalidInput(format!("column map {k} fails at degree {n}")));
            }
        }
        for (k, w) in maps.windows(2).enumerate() {
            if !w[1].after(&w[0]).is_zero() {
                return Err(Error::InvalidInput(format!(
                    "rows are not complexes at horizontal degree {}",
                    lo + k as i32
                )));
            }
        }
        let mut entries = BTreeMap::new();
        let mut horizontal = BTreeMap::new();
        let mut vertical = BTreeMap::new();
        for (k, col) in columns.iter().enumerate() {
            let i = lo + k as i32;
            for j in col.lo()..=col.hi() {
                entries.insert((i, j), col.entry(j));
                if j < col.hi() {
                    vertical.insert((i, j), col.diff(j));
                }
                if let Some(m) = maps.get(k) {
                    horizontal.insert((i, j), m.comp(j));
                }
            }
        }
        Ok(DoubleComplex {
            alg: alg.clone(),
            entries,
            horizontal,
            vertical,
        })
    }

    pub fn entry(&self, i: i32, j: i32) -> Representation {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Representation::zero(&self.alg))
    }

    pub fn horizontal(&self, i: i32, j: i32) -> RepMorphism {
        self.horizontal
            .get(&(i, j))
            .filter(|m| m.dst == self.entry(i + 1, j))
            .cloned()
            .unwrap_or_else(|| RepMorphism::zero(&self.entry(i, j), &self.entry(i + 1, j)))
    }

    pub fn vertical(&self, i: i32, j: i32) -> RepMorphism {
        self.vertical
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RepMorphism::zero(&self.entry(i, j), &self.entry(i, j + 1)))
    }

    fn i_range(&self) -> (i32, i32) {
        let lo = self.entries.keys().map(|k| k.0).min().unwrap_or(0);
        let hi = self.entries.keys().map(|k| k.0).max().unwrap_or(-1);
        (lo, hi)
    }

    fn j_range(&self) -> (i32, i32) {
        let lo = self.entries.keys().map(|k| k.1).min().unwrap_or(0);
        let hi = self.entries.keys().map(|k| k.1).max().unwrap_or(-1);
        (lo, hi)
    }

    pub fn column(&self, i: i32) -> Complex {
        let (lo, hi) = self.j_range();
        Complex::from_parts(&self.alg, lo, hi, |j| self.entry(i, j), |j, _, _| self.vertical(i, j))
    }

    pub fn row(&self, j: i32) -> Complex {
        let (lo, hi) = self.i_range();
        Complex::from_parts(&self.alg, lo, hi, |i| self.entry(i, j), |i, _, _| self.horizontal(i, j))
    }

    /// `Tot^n = ⊕_{i+j=n} C^{i,j}` with `d = d_h + (-1)^i d_v`.
    pub fn totalize(&self) -> Result<Complex> {
        if self.entries.is_empty() {
            return Ok(Complex::zero(&self.alg));
        }
        let (ilo, ihi) = self.i_range();
        let (jlo, jhi) = self.j_range();
        let terms = |n: i32| -> Vec<i32> { (ilo..=ihi).filter(|&i| self.entries.contains_key(&(i, n - i))).collect() };
        let sum = |n: i32| DirectSum::of(&self.alg, &terms(n).iter().map(|&i| self.entry(i, n - i)).collect::<Vec<_>>());
        let entries: Vec<Representation> = (ilo + jlo..=ihi + jhi).map(|n| sum(n).object).collect();
        let mut diffs = Vec::new();
        for n in ilo + jlo..ihi + jhi {
            let (s, t) = (sum(n), sum(n + 1));
            let (ts, tt) = (terms(n), terms(n + 1));
            let mut d = RepMorphism::zero(&s.object, &t.object);
            for (a, &i) in ts.iter().enumerate() {
                let j = n - i;
                if let Some(b) = tt.iter().position(|&k| k == i + 1) {
                    let h = self.horizontal(i, j);
                    d = d.add(&t.injections[b].after(&h.after(&s.projections[a])));
                }
                if let Some(b) = tt.iter().position(|&k| k == i) {
                    let sign = if i.rem_euclid(2) == 0 { q(1) } else { q(-1) };
                    let v = self.vertical(i, j).scale(&sign);
                    d = d.add(&t.injections[b].after(&v.after(&s.projections[a])));
                }
            }
            diffs.push(d);
        }
        let c = Complex {
            alg: self.alg.clone(),
            lo: ilo + jlo,
            entries,
            diffs,
        };
        if let Some(n) = c.square_zero_failure() {
            return Err(Error::Inconsistent(format!("totalization has d∘d != 0 at degree {n}")));
        }
        Ok(c.trimmed())
    }
}

/// Kernel of `d^n` with its inclusion.
fn cycles(x: &Complex, n: i32) -> (Representation, RepMorphism) {
    kernel(&x.diff(n))
}

/// First degree `n` at which `K^n -> X^n -> K^{n+1}` fails to be a
/// conflation, `K` denoting kernels of the differentials.
pub fn acyclicity_failure(c: &ConflationClass, x: &Complex) -> Option<i32> {
    if x.is_zero() {
        return None;
    }
    (x.lo() - 1..=x.hi()).find(|&n| {
        let (_, i_n) = cycles(x, n);
        let (k1, i_n1) = cycles(x, n + 1);
        if x.entry(n).is_zero() && k1.is_zero() {
            return false;
        }
        let Some(p) = corestrict(&x.diff(n), &i_n1) else {
            return true;
        };
        if !p.is_epi() {
            return true;
        }
        !is_conflation(c.object_class(), &KCPair { inflation: i_n, deflation: p })
    })
}

pub fn is_acyclic(c: &ConflationClass, x: &Complex) -> bool {
    acyclicity_failure(c, x).is_none()
}

/// Ambient cohomology dimensions per degree (only meaningful as an oracle
/// for the all-short-exact structure).
pub fn cohomology_dims(x: &Complex) -> Vec<(i32, usize)> {
    x.support()
        .into_iter()
        .map(|n| {
            let (k, _) = cycles(x, n);
            let (im, _, _) = image(&x.diff(n - 1));
            (n, k.total_dim() - im.total_dim())
        })
        .collect()
}

/// Ambient cohomology object `ker d^n / im d^{n-1}`.
pub fn cohomology(x: &Complex, n: i32) -> Representation {
    let (_, iota) = cycles(x, n);
    let d = corestrict(&x.diff(n - 1), &iota).expect("boundaries are cycles");
    cokernel(&d).0
}

fn require_admissible(c: &ConflationClass, x: &Complex, n: i32) -> Result<(Representation, RepMorphism, RepMorphism)> {
    let (k, iota) = cycles(x, n);
    let d = x.diff(n - 1);
    let p = corestrict(&d, &iota).ok_or(Error::TruncationUndefined(n))?;
    let (_, _, coimage) = image(&d);
    if !is_deflation(c.object_class(), &coimage) {
        return Err(Error::TruncationUndefined(n));
    }
    Ok((k, iota, p))
}

/// `τ^{≤n} x = (... -> X^{n-1} -> ker d^n)` with its map into `x`.
///
/// Defined when the coimage factor of `d^{n-1}` is a deflation of `c`.
pub fn truncate_below(c: &ConflationClass, x: &Complex, n: i32) -> Result<(Complex, ChainMap)> {
    let (k, iota, p) = require_admissible(c, x, n)?;
    let lo = x.lo().min(n);
    let t = Complex::from_parts(
        x.algebra(),
        lo,
        n,
        |m| if m == n { k.clone() } else { x.entry(m) },
        |m, _, _| if m == n - 1 { p.clone() } else { x.diff(m) },
    );
    let map = ChainMap::new_unchecked(&t, x, |m| if m == n { iota.clone() } else { RepMorphism::identity(&x.entry(m)) });
    Ok((t, map))
}

/// `τ^{≥n+1} x = (ker d^n -> X^n -> X^{n+1} -> ...)` with `ker d^n` in
/// degree `n - 1`, and the map from `x`.
pub fn truncate_above(c: &ConflationClass, x: &Complex, n: i32) -> Result<(Complex, ChainMap)> {
    let (k, iota, p) = require_admissible(c, x, n)?;
    let hi = x.hi().max(n);
    let t = Complex::from_parts(
        x.algebra(),
        n - 1,
        hi,
        |m| if m == n - 1 { k.clone() } else { x.entry(m) },
        |m, _, _| if m == n - 1 { iota.clone() } else { x.diff(m) },
    );
    let map = ChainMap::new_unchecked(x, &t, |m| if m == n - 1 { p.clone() } else { RepMorphism::identity(&x.entry(m)) });
    Ok((t, map))
}

/// Maps `h^n: X^n -> Y^{n-1}` with `f - g = d∘h + h∘d`.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub src: Complex,
    pub dst: Complex,
    pub maps: BTreeMap<i32, RepMorphism>,
}

impl HomotopyWitness {
    pub fn zero(x: &Complex, y: &Complex) -> Self {
        HomotopyWitness {
            src: x.clone(),
            dst: y.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn map(&self, n: i32) -> RepMorphism {
        self.maps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| RepMorphism::zero(&self.src.entry(n), &self.dst.entry(n - 1)))
    }

    /// The chain map `d∘h + h∘d`.
    pub fn boundary(&self) -> ChainMap {
        let (x, y) = (&self.src, &self.dst);
        ChainMap::new_unchecked(x, y, |n| {
            y.diff(n - 1).after(&self.map(n)).add(&self.map(n + 1).after(&x.diff(n)))
        })
    }

    pub fn verify(&self, f: &ChainMap, g: &ChainMap) -> bool {
        f.sub(g) == self.boundary()
    }

    pub fn add(&self, other: &HomotopyWitness) -> Self {
        let mut maps = self.maps.clone();
        for (&n, m) in &other.maps {
            let cur = self.map(n);
            maps.insert(n, cur.add(m));
        }
        HomotopyWitness {
            src: self.src.clone(),
            dst: self.dst.clone(),
            maps,
        }
    }

    /// `g ∘ h ∘ f` for chain maps `f` into the source and `g` out of the
    /// target.
    pub fn conjugate(&self, f: &ChainMap, g: &ChainMap) -> Self {
        let maps = self
            .maps
            .iter()
            .map(|(&n, h)| (n, g.comp(n - 1).after(&h.after(&f.comp(n)))))
            .collect();
        HomotopyWitness {
            src: f.src.clone(),
            dst: g.dst.clone(),
            maps,
        }
    }
}

/// Basis of the space of chain maps `x -> y`.
pub fn chain_map_basis(x: &Complex, y: &Complex) -> Vec<ChainMap> {
    let probe = ChainMap::zero(x, y);
    let degs: Vec<i32> = probe.degrees().collect();
    if degs.is_empty() {
        return Vec::new();
    }
    let bases: Vec<Vec<RepMorphism>> = degs.iter().map(|&n| hom_basis(&x.entry(n), &y.entry(n))).collect();
    let unknowns: usize = bases.iter().map(Vec::len).sum();
    if unknowns == 0 {
        return Vec::new();
    }
    // Constraint at degree n lives in Hom(X^n, Y^{n+1}).
    let cons: Vec<i32> = (degs[0] - 1..=*degs.last().unwrap()).collect();
    let offsets: Vec<usize> = cons
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += RepMorphism::zero(&x.entry(n), &y.entry(n + 1)).coord_len();
            Some(o)
        })
        .collect();
    let rows = cons
        .iter()
        .map(|&n| RepMorphism::zero(&x.entry(n), &y.entry(n + 1)).coord_len())
        .sum();
    let mut columns = Vec::with_capacity(unknowns);
    for (k, &n) in degs.iter().enumerate() {
        for b in &bases[k] {
            let mut col = vec![Rational::zero(); rows];
            // d_Y^n ∘ b enters the constraint at n with a minus sign.
            let ci = (n - cons[0]) as usize;
            for (t, v) in y.diff(n).after(b).coords().into_iter().enumerate() {
                col[offsets[ci] + t] -= v;
            }
            // b ∘ d_X^{n-1} enters the constraint at n - 1.
            let cj = (n - 1 - cons[0]) as usize;
            for (t, v) in b.after(&x.diff(n - 1)).coords().into_iter().enumerate() {
                col[offsets[cj] + t] += v;
            }
            columns.push(col);
        }
    }
    let sys = Matrix::from_columns(rows, &columns);
    let ker = sys.kernel();
    (0..ker.cols())
        .map(|c| {
            let v = ker.column(c);
            let mut at = 0;
            let mut comps = BTreeMap::new();
            for (k, &n) in degs.iter().enumerate() {
                let len = bases[k].len();
                let m = combination(&bases[k], &v[at..at + len], &x.entry(n), &y.entry(n));
                comps.insert(n, m);
                at += len;
            }
            ChainMap::new_unchecked(x, y, |n| comps[&n].clone())
        })
        .collect()
}

/// Null-homotopic chain maps `d∘h + h∘d` for `h` running over a basis of
/// the degree `-1` maps `x -> y`.
fn boundary_generators(x: &Complex, y: &Complex) -> Vec<HomotopyWitness> {
    let mut out = Vec::new();
    if x.is_zero() || y.is_zero() {
        return out;
    }
    for n in x.lo()..=x.hi() {
        for b in hom_basis(&x.entry(n), &y.entry(n - 1)) {
            let mut w = HomotopyWitness::zero(x, y);
            w.maps.insert(n, b);
            out.push(w);
        }
    }
    out
}

/// A homotopy `f ≃ g`, if one exists.
pub fn homotopy_between(f: &ChainMap, g: &ChainMap) -> Option<HomotopyWitness> {
    let (x, y) = (&f.src, &f.dst);
    let target = f.sub(g).coords();
    if target.iter().all(Zero::is_zero) {
        return Some(HomotopyWitness::zero(x, y));
    }
    let gens = boundary_generators(x, y);
    if gens.is_empty() {
        return None;
    }
    let cols: Vec<Vec<Rational>> = gens.iter().map(|h| h.boundary().coords()).collect();
    let a = Matrix::from_columns(target.len(), &cols);
    let b = Matrix::new(target.len(), 1, target);
    let sol = a.solve(&b)?.column(0);
    let mut w = HomotopyWitness::zero(x, y);
    for (h, c) in gens.iter().zip(&sol) {
        if !c.is_zero() {
            for (&n, m) in &h.maps {
                let cur = w.map(n);
                w.maps.insert(n, cur.add(&m.scale(c)));
            }
        }
    }
    debug_assert!(w.verify(f, g));
    Some(w)
}

/// Chain maps `x -> y` forming a basis of `Hom_K(x, y)` (pairwise
/// independent modulo null-homotopic maps).
pub fn homotopy_classes(x: &Complex, y: &Complex) -> Vec<ChainMap> {
    let basis = chain_map_basis(x, y);
    if basis.is_empty() {
        return basis;
    }
    let len = basis[0].coords().len();
    let mut cols: Vec<Vec<Rational>> = boundary_generators(x, y).iter().map(|h| h.boundary().coords()).collect();
    let mut rank = if cols.is_empty() { 0 } else { Matrix::from_columns(len, &cols).rank() };
    let mut reps = Vec::new();
    for b in basis {
        cols.push(b.coords());
        let r = Matrix::from_columns(len, &cols).rank();
        if r > rank {
            rank = r;
            reps.push(b);
        } else {
            cols.pop();
        }
    }
    reps
}

/// An isomorphism of complexes `x -> y`, if one exists.
pub fn find_complex_isomorphism(x: &Complex, y: &Complex) -> Option<ChainMap> {
    if x.is_zero() && y.is_zero() {
        return Some(ChainMap::zero(x, y));
    }
    if x.lo() != y.lo() || x.hi() != y.hi() {
        return None;
    }
    if (x.lo()..=x.hi()).any(|n| x.entry(n).dims() != y.entry(n).dims()) {
        return None;
    }
    let basis = chain_map_basis(x, y);
    let space: Vec<Vec<Matrix>> = basis
        .iter()
        .map(|m| (x.lo()..=x.hi()).flat_map(|n| m.comp(n).blocks).collect())
        .collect();
    let c = block_invertible_combination(&space, DEFAULT_SEED).ok()??;
    let mut acc = ChainMap::zero(x, y);
    for (b, ci) in basis.iter().zip(&c) {
        acc = acc.add(&b.scale(ci));
    }
    Some(acc)
}

pub fn complexes_isomorphic(x: &Complex, y: &Complex) -> bool {
    find_complex_isomorphism(x, y).is_some()
}

/// Result of Gaussian elimination: `to∘from = 1` and
/// `1 - from∘to = d∘h + h∘d` on the original complex.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub complex: Complex,
    pub to: ChainMap,
    pub from: ChainMap,
    pub homotopy: HomotopyWitness,
}

impl Reduction {
    pub fn verify(&self) -> bool {
        let x = &self.to.src;
        self.to.after(&self.from) == ChainMap::identity(&self.complex)
            && self
                .homotopy
                .verify(&ChainMap::identity(x), &self.from.after(&self.to))
            && self.to.commutation_failure().is_none()
            && self.from.commutation_failure().is_none()
    }
}

/// A non-nilpotent endomorphism `y∘h∘d^n` of `X^n`, if the left ideal
/// `Hom(X^{n+1}, X^n)∘d^n` is not contained in the radical. Detected by the
/// trace form, which is nondegenerate modulo the radical in characteristic 0.
fn invertible_part(x: &Complex, n: i32) -> Option<(RepMorphism, RepMorphism)> {
    let d = x.diff(n);
    if d.is_zero() {
        return None;
    }
    let hs = hom_basis(&x.entry(n + 1), &x.entry(n));
    let ends = hom_basis(&x.entry(n), &x.entry(n));
    for h in &hs {
        let l = h.after(&d);
        if l.is_zero() {
            continue;
        }
        for y in &ends {
            let phi = y.after(&l);
            if !trace(&phi).is_zero() {
                return Some((phi, y.after(h)));
            }
        }
    }
    None
}

fn eliminate(x: &Complex, n: i32, phi: &RepMorphism, yh: &RepMorphism) -> Reduction {
    let d = x.diff(n);
    let xn = x.entry(n);
    let psi = power(phi, xn.total_dim() as u32);
    let (_, ia, _) = image(&psi);
    let (_, ib) = kernel(&psi);
    let (pa, pb) = complement_projections(&ia, &ib).expect("Fitting decomposition");
    let u = pa.after(&phi.after(&ia));
    let u_inv = u.inverse().expect("restriction to the Fitting image is invertible");
    let rho = u_inv.after(&pa.after(yh));
    let alpha = d.after(&ia);
    debug_assert!(rho.after(&alpha).is_identity());
    let x1 = x.entry(n + 1);
    let (_, ic) = kernel(&rho);
    let proj = RepMorphism::identity(&x1).sub(&alpha.after(&rho));
    let pc = corestrict(&proj, &ic).expect("1 - αρ lands in ker ρ");
    let (b, c) = (ib.src.clone(), ic.src.clone());
    let lo = x.lo();
    let hi = x.hi();
    let reduced = Complex::from_parts(
        x.algebra(),
        lo,
        hi,
        |m| match m {
            _ if m == n => b.clone(),
            _ if m == n + 1 => c.clone(),
            _ => x.entry(m),
        },
        |m, _, _| match m {
            _ if m == n - 1 => pb.after(&x.diff(m)),
            _ if m == n => pc.after(&d.after(&ib)),
            _ if m == n + 1 => x.diff(m).after(&ic),
            _ => x.diff(m),
        },
    );
    let to = ChainMap::new_unchecked(x, &reduced, |m| match m {
        _ if m == n => pb.clone(),
        _ if m == n + 1 => pc.clone(),
        _ => RepMorphism::identity(&x.entry(m)),
    });
    let from = ChainMap::new_unchecked(&reduced, x, |m| match m {
        _ if m == n => ib.sub(&ia.after(&rho.after(&d.after(&ib)))),
        _ if m == n + 1 => ic.clone(),
        _ => RepMorphism::identity(&x.entry(m)),
    });
    let mut homotopy = HomotopyWitness::zero(x, x);
    homotopy.maps.insert(n + 1, ia.after(&rho));
    Reduction {
        complex: reduced,
        to,
        from,
        homotopy,
    }
}

/// Splits off contractible summands until every differential is radical.
pub fn minimal_reduce(x: &Complex) -> Reduction {
    let mut acc = Reduction {
        complex: x.clone(),
        to: ChainMap::identity(x),
        from: ChainMap::identity(x),
        homotopy: HomotopyWitness::zero(x, x),
    };
    loop {
        let cur = acc.complex.clone();
        let step = (cur.lo()..cur.hi()).find_map(|n| invertible_part(&cur, n).map(|(phi, yh)| eliminate(&cur, n, &phi, &yh)));
        let Some(step) = step else {
            return acc;
        };
        let homotopy = acc.homotopy.add(&step.homotopy.conjugate(&acc.to, &acc.from));
        acc = Reduction {
            complex: step.complex.clone(),
            to: step.to.after(&acc.to),
            from: acc.from.after(&step.from),
            homotopy,
        };
    }
}

/// Whether the reductions of `x` and `y` are isomorphic complexes, which for
/// bounded complexes of finite-dimensional representations is homotopy
/// equivalence.
pub fn homotopy_equivalent(x: &Complex, y: &Complex) -> bool {
    complexes_isomorphic(&minimal_reduce(x).complex, &minimal_reduce(y).complex)
}

/// Quasi-isomorphism test mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiIsoMode {
    /// Cone homotopy equivalent to an acyclic complex.
    Strict,
    /// Cone a direct summand of an acyclic complex up to homotopy.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Ternary {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Ternary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Random bounded complex with entries drawn from `pool`, built so that
/// `d^n` factors through the cokernel of `d^{n-1}`.
pub fn random_complex(pool: &[Representation], lo: i32, len: usize, rng: &mut ChaCha8Rng, range: i64) -> Complex {
    let alg = pool[0].algebra().clone();
    let pick = |rng: &mut ChaCha8Rng| -> Representation {
        let k = rng.gen_range(1..=2);
        let parts: Vec<Representation> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        DirectSum::new(&parts).object
    };
    let entries: Vec<Representation> = (0..len).map(|_| pick(rng)).collect();
    let mut diffs: Vec<RepMorphism> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let (src, dst) = (&entries[k], &entries[k + 1]);
        let d = match diffs.last() {
            None => crate::rep::random_morphism(src, dst, rng, range),
            Some(prev) => {
                let (coker, pi) = cokernel(prev);
                crate::rep::random_morphism(&coker, dst, rng, range).after(&pi)
            }
        };
        diffs.push(d);
    }
    Complex::new(&alg, lo, entries, diffs).expect("d∘d = 0 by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflation::ConflationClass;
    use crate::fixtures::{a3, a3_restricted_class};
    use crate::rep::seeded_rng;

    fn map(x: &Representation, y: &Representation) -> RepMorphism {
        hom_basis(x, y).remove(0)
    }

    #[test]
    fn cone_of_identity_is_standard_contractible() {
        let f = a3();
        let x = Complex::stalk(f.get("P2"), 0);
        let c = cone(&ChainMap::identity(&x));
        assert_eq!((c.lo(), c.hi()), (-1, 0));
        assert!(c.diff(-1).is_iso());
        assert!(minimal_reduce(&c).complex.is_zero());
    }

    #[test]
    fn cone_of_zero_source_is_target() {
        let f = a3();
        let y = Complex::two_term(&map(f.get("S2"), f.get("I2")), 0);
        let z = Complex::zero(&f.algebra);
        let c = cone(&ChainMap::zero(&z, &y));
        assert_eq!(c, y);
    }

    #[test]
    fn cone_of_stalk_map_is_two_term() {
        let f = a3();
        let g = map(f.get("S2"), f.get("I2"));
        let x = Complex::stalk(f.get("S2"), 0);
        let y = Complex::stalk(f.get("I2"), 0);
        let c = cone(&ChainMap::new(&x, &y, |_| g.clone()).unwrap());
        assert_eq!((c.lo(), c.hi()), (-1, 0));
        assert_eq!(c.entry(-1).dims(), f.get("S2").dims());
        assert_eq!(c.diff(-1).rank(), 1);
    }

    #[test]
    fn totalize_two_columns_is_cone() {
        let f = a3();
        let g = map(f.get("P2"), f.get("P3"));
        let x = Complex::stalk(f.get("P2"), 0);
        let y = Complex::stalk(f.get("P3"), 0);
        let h = ChainMap::new(&x, &y, |_| g.clone()).unwrap();
        let dc = DoubleComplex::from_columns(&f.algebra, -1, vec![x, y], vec![h.clone()]).unwrap();
        assert_eq!(dc.totalize().unwrap(), cone(&h));
        let one = DoubleComplex::from_columns(&f.algebra, 0, vec![cone(&h)], vec![]).unwrap();
        assert_eq!(one.totalize().unwrap(), cone(&h));
    }

    #[test]
    fn acyclicity_of_removed_sequence() {
        let f = a3();
        let s = crate::fixtures::a3_removed_sequence(&f);
        let x = Complex::new(
            &f.algebra,
            -1,
            vec![f.get("S2").clone(), f.get("I2").clone(), f.get("S3").clone()],
            vec![s.inflation.clone(), s.deflation.clone()],
        )
        .unwrap();
        assert!(is_acyclic(&ConflationClass::all_short_exact(&f.algebra), &x));
        assert!(!is_acyclic(&a3_restricted_class(&f), &x));
        assert!(is_acyclic(&ConflationClass::all_short_exact(&f.algebra), &Complex::zero(&f.algebra)));
    }

    #[test]
    fn homotopies() {
        let f = a3();
        let c = Complex::contractible(f.get("I2"), 0);
        let w = homotopy_between(&ChainMap::identity(&c), &ChainMap::zero(&c, &c)).unwrap();
        assert!(w.verify(&ChainMap::identity(&c), &ChainMap::zero(&c, &c)));
        let s = Complex::stalk(f.get("S1"), 0);
        assert!(homotopy_between(&ChainMap::identity(&s), &ChainMap::zero(&s, &s)).is_none());
        let id = ChainMap::identity(&s);
        assert!(homotopy_between(&id, &id).unwrap().maps.is_empty());
    }

    #[test]
    fn truncations() {
        let f = a3();
        let all = ConflationClass::all_short_exact(&f.algebra);
        let s = Complex::stalk(f.get("P3"), 2);
        let (t, m) = truncate_below(&all, &s, 2).unwrap();
        assert_eq!(t, s);
        assert!(m.is_iso());
        let seq = crate::fixtures::a3_removed_sequence(&f);
        let x = Complex::new(
            &f.algebra,
            0,
            vec![f.get("I2").clone(), f.get("S3").clone()],
            vec![seq.deflation.clone()],
        )
        .unwrap();
        // I2 -> S3 is not a deflation of the restricted class.
        let (t, _) = truncate_below(&all, &x, 1).unwrap();
        assert_eq!(t.entry(1).dims(), f.get("S3").dims());
        assert_eq!(
            truncate_below(&a3_restricted_class(&f), &x, 1).unwrap_err(),
            Error::TruncationUndefined(1)
        );
    }

    #[test]
    fn reduction_round_trip() {
        let f = a3();
        let pool: Vec<Representation> = f.named.iter().map(|(_, r)| r.clone()).collect();
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let x = random_complex(&pool, 0, 3, &mut rng, 2);
            let r = minimal_reduce(&x);
            assert!(r.verify(), "{x:?}");
            let again = minimal_reduce(&r.complex);
            assert_eq!(again.complex.total_dim(), r.complex.total_dim());
            let sum = Complex::direct_sum(&[x.clone(), Complex::contractible(f.get("P3"), 1)]);
            assert!(complexes_isomorphic(&minimal_reduce(&sum).complex, &r.complex));
        }
    }

    #[test]
    fn shift_negates_differential() {
        let f = a3();
        let g = map(f.get("P2"), f.get("P3"));
        let x = Complex::two_term(&g, 0);
        let s = x.shift(1);
        assert_eq!(s.lo(), -1);
        assert_eq!(s.diff(-1), g.neg());
        assert_eq!(s.shift(-1), x);
    }
}
