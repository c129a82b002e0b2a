//! Representations, morphisms and the abelian-category constructions on them.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{block_invertible_combination, q, solve_in_span, Matrix, Rational};
use crate::quiver::{path_matrix, relation_holds, QuiverAlgebra};

#[derive(PartialEq, Eq)]
struct RepData {
    alg: Arc<QuiverAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A finite-dimensional representation. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation(Arc<RepData>);

impl Representation {
    /// Builds a representation, checking matrix shapes and relations.
    pub fn new(alg: &Arc<QuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.n_vertices() || maps.len() != alg.arrows().len() {
            return Err(Error::DimensionMismatch(
                "representation data does not match the quiver".into(),
            ));
        }
        for (a, m) in alg.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.tgt], dims[a.src]) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.tgt],
                    dims[a.src],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (i, rel) in alg.relations().iter().enumerate() {
            if !relation_holds(alg, &dims, &maps, rel) {
                return Err(Error::RelationViolated {
                    rep: "<unnamed>".into(),
                    relation: i,
                });
            }
        }
        Ok(Self::new_unchecked(alg, dims, maps))
    }

    pub(crate) fn new_unchecked(alg: &Arc<QuiverAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        Representation(Arc::new(RepData {
            alg: alg.clone(),
            dims,
            maps,
        }))
    }

    pub fn zero(alg: &Arc<QuiverAlgebra>) -> Self {
        let dims = vec![0; alg.n_vertices()];
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Self::new_unchecked(alg, dims, maps)
    }

    pub fn simple(alg: &Arc<QuiverAlgebra>, v: usize) -> Self {
        let mut dims = vec![0; alg.n_vertices()];
        dims[v] = 1;
        let maps = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.tgt], dims[a.src]))
            .collect();
        Self::new_unchecked(alg, dims, maps)
    }

    /// Indecomposable projective at `v`: paths starting at `v` modulo relations.
    pub fn projective(alg: &Arc<QuiverAlgebra>, v: usize) -> Self {
        let data = alg.projective_data(v);
        let dims: Vec<usize> = data.quotient.iter().map(Matrix::rows).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                // Path p at a.src goes to p·a at a.tgt.
                let (from, to) = (&data.paths[a.src], &data.paths[a.tgt]);
                let mut ext = Matrix::zeros(to.len(), from.len());
                for (j, p) in from.iter().enumerate() {
                    let mut pa = p.clone();
                    pa.push(ai);
                    let i = to.iter().position(|x| *x == pa).unwrap();
                    ext[(i, j)] = Rational::one();
                }
                &(&data.quotient[a.tgt] * &ext) * &data.section[a.src]
            })
            .collect();
        Self::new_unchecked(alg, dims, maps)
    }

    pub fn algebra(&self) -> &Arc<QuiverAlgebra> {
        &self.0.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.0.dims[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.0.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.0.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.0.alg, &other.0.alg) || self.0.alg == other.0.alg
    }

    /// Multiplicity of each vertex simple as a composition factor.
    pub fn composition_factors(&self) -> Vec<usize> {
        self.0.dims.clone()
    }

    /// Per-vertex span of the images of all incoming arrows.
    pub fn radical_spaces(&self) -> Vec<Matrix> {
        let alg = self.algebra();
        (0..alg.n_vertices())
            .map(|v| {
                let cols: Vec<&Matrix> = alg
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.tgt == v)
                    .map(|(i, _)| self.arrow_map(i))
                    .collect();
                if cols.is_empty() {
                    Matrix::zeros(self.dim(v), 0)
                } else {
                    Matrix::hstack(&cols).column_space()
                }
            })
            .collect()
    }

    /// Matrix of the action of `path` starting at vertex `start`.
    pub fn path_action(&self, start: usize, path: &[usize]) -> Matrix {
        path_matrix(self.algebra(), self.dims(), self.maps(), start, &path.to_vec())
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims())
    }
}

/// A morphism of representations, one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMorphism {
    pub src: Representation,
    pub dst: Representation,
    pub blocks: Vec<Matrix>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} {:?}", self.src, self.dst, self.blocks)
    }
}

impl RepMorphism {
    /// Builds a morphism, checking block shapes and naturality.
    pub fn new(src: &Representation, dst: &Representation, blocks: Vec<Matrix>) -> Result<Self> {
        let alg = src.algebra();
        if !src.same_algebra(dst) || blocks.len() != alg.n_vertices() {
            return Err(Error::DimensionMismatch("morphism block count".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (dst.dim(v), src.dim(v)) {
                return Err(Error::DimensionMismatch(format!(
                    "block at vertex {} has shape {:?}",
                    alg.vertices()[v],
                    b.shape()
                )));
            }
        }
        let m = RepMorphism {
            src: src.clone(),
            dst: dst.clone(),
            blocks,
        };
        if let Some(a) = m.naturality_failure() {
            return Err(Error::Naturality(alg.arrows()[a].id.clone()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(src: &Representation, dst: &Representation, blocks: Vec<Matrix>) -> Self {
        RepMorphism {
            src: src.clone(),
            dst: dst.clone(),
            blocks,
        }
    }

    /// First arrow whose naturality square fails.
    pub fn naturality_failure(&self) -> Option<usize> {
        self.src.algebra().arrows().iter().enumerate().find_map(|(i, a)| {
            let lhs = &self.blocks[a.tgt] * self.src.arrow_map(i);
            let rhs = self.dst.arrow_map(i) * &self.blocks[a.src];
            (lhs != rhs).then_some(i)
        })
    }

    pub fn zero(src: &Representation, dst: &Representation) -> Self {
        let blocks = (0..src.algebra().n_vertices())
            .map(|v| Matrix::zeros(dst.dim(v), src.dim(v)))
            .collect();
        Self::new_unchecked(src, dst, blocks)
    }

    pub fn identity(x: &Representation) -> Self {
        let blocks = x.dims().iter().map(|&d| Matrix::identity(d)).collect();
        Self::new_unchecked(x, x, blocks)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> RepMorphism {
        assert_eq!(first.dst.dims(), self.src.dims(), "composition mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a * b)
            .collect();
        Self::new_unchecked(&first.src, &self.dst, blocks)
    }

    pub fn then(&self, second: &RepMorphism) -> RepMorphism {
        second.after(self)
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        Self::new_unchecked(&self.src, &self.dst, blocks)
    }

    pub fn sub(&self, other: &RepMorphism) -> RepMorphism {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a - b).collect();
        Self::new_unchecked(&self.src, &self.dst, blocks)
    }

    pub fn neg(&self) -> RepMorphism {
        let blocks = self.blocks.iter().map(|a| -a).collect();
        Self::new_unchecked(&self.src, &self.dst, blocks)
    }

    pub fn scale(&self, c: &Rational) -> RepMorphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        Self::new_unchecked(&self.src, &self.dst, blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(Matrix::is_identity)
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let blocks = self
            .blocks
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new_unchecked(&self.dst, &self.src, blocks))
    }

    /// Rank of the underlying linear map.
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Flattened coordinates (blocks in vertex order, row-major).
    pub fn coords(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
    }

    pub fn coord_len(&self) -> usize {
        self.blocks.iter().map(|b| b.rows() * b.cols()).sum()
    }

    pub fn same_shape(&self, other: &RepMorphism) -> bool {
        self.src.dims() == other.src.dims() && self.dst.dims() == other.dst.dims()
    }
}

/// A composable pair, candidate for a conflation `X -> Y -> Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCPair {
    pub inflation: RepMorphism,
    pub deflation: RepMorphism,
}

impl KCPair {
    pub fn new(inflation: RepMorphism, deflation: RepMorphism) -> Result<Self> {
        if inflation.dst != deflation.src {
            return Err(Error::InvalidInput("pair is not composable".into()));
        }
        Ok(KCPair {
            inflation,
            deflation,
        })
    }

    pub fn left(&self) -> &Representation {
        &self.inflation.src
    }

    pub fn middle(&self) -> &Representation {
        &self.inflation.dst
    }

    pub fn right(&self) -> &Representation {
        &self.deflation.dst
    }

    /// Whether `inflation = ker deflation` and `deflation = coker inflation`
    /// in the ambient category, i.e. the sequence is short exact.
    pub fn is_short_exact(&self) -> bool {
        let (f, g) = (&self.inflation, &self.deflation);
        g.after(f).is_zero()
            && f.is_mono()
            && g.is_epi()
            && f.blocks
                .iter()
                .zip(&g.blocks)
                .all(|(fb, gb)| fb.rank() + gb.rank() == fb.rows())
    }

    /// The split sequence `X -> X ⊕ Z -> Z`.
    pub fn split(x: &Representation, z: &Representation) -> Self {
        let s = DirectSum::new(&[x.clone(), z.clone()]);
        KCPair {
            inflation: s.injections[0].clone(),
            deflation: s.projections[1].clone(),
        }
    }
}

/// Direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: Representation,
    pub injections: Vec<RepMorphism>,
    pub projections: Vec<RepMorphism>,
}

impl DirectSum {
    pub fn new(parts: &[Representation]) -> Self {
        assert!(!parts.is_empty(), "direct sum of no objects needs an algebra");
        let alg = parts[0].algebra().clone();
        let nv = alg.n_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim(v)).sum()).collect();
        let maps = (0..alg.arrows().len())
            .map(|a| {
                let ms: Vec<&Matrix> = parts.iter().map(|p| p.arrow_map(a)).collect();
                Matrix::block_diag(&ms)
            })
            .collect();
        let object = Representation::new_unchecked(&alg, dims, maps);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offsets = vec![0usize; nv];
        for p in parts {
            let mut inj = Vec::with_capacity(nv);
            let mut proj = Vec::with_capacity(nv);
            for v in 0..nv {
                let mut i = Matrix::zeros(object.dim(v), p.dim(v));
                i.set_block(offsets[v], 0, &Matrix::identity(p.dim(v)));
                proj.push(i.transpose());
                inj.push(i);
                offsets[v] += p.dim(v);
            }
            injections.push(RepMorphism::new_unchecked(p, &object, inj));
            projections.push(RepMorphism::new_unchecked(&object, p, proj));
        }
        DirectSum {
            object,
            injections,
            projections,
        }
    }

    pub fn of(alg: &Arc<QuiverAlgebra>, parts: &[Representation]) -> Self {
        if parts.is_empty() {
            let z = Representation::zero(alg);
            DirectSum {
                object: z,
                injections: Vec::new(),
                projections: Vec::new(),
            }
        } else {
            Self::new(parts)
        }
    }

    /// Morphism out of the sum given componentwise.
    pub fn copair(&self, maps: &[RepMorphism]) -> RepMorphism {
        let mut acc = maps[0].after(&self.projections[0]);
        for (m, p) in maps.iter().zip(&self.projections).skip(1) {
            acc = acc.add(&m.after(p));
        }
        acc
    }

    /// Morphism into the sum given componentwise.
    pub fn pair(&self, maps: &[RepMorphism]) -> RepMorphism {
        let mut acc = self.injections[0].after(&maps[0]);
        for (m, i) in maps.iter().zip(&self.injections).skip(1) {
            acc = acc.add(&i.after(m));
        }
        acc
    }
}

/// Direct sum of morphisms `f ⊕ g`.
pub fn sum_of_morphisms(maps: &[RepMorphism]) -> RepMorphism {
    let srcs: Vec<Representation> = maps.iter().map(|m| m.src.clone()).collect();
    let dsts: Vec<Representation> = maps.iter().map(|m| m.dst.clone()).collect();
    let s = DirectSum::new(&srcs);
    let d = DirectSum::new(&dsts);
    let nv = srcs[0].algebra().n_vertices();
    let blocks = (0..nv)
        .map(|v| {
            let bs: Vec<&Matrix> = maps.iter().map(|m| &m.blocks[v]).collect();
            Matrix::block_diag(&bs)
        })
        .collect();
    RepMorphism::new_unchecked(&s.object, &d.object, blocks)
}

/// Matrix of the linear system whose kernel is `Hom(x, y)`, unknowns being
/// the flattened blocks.
fn naturality_system(x: &Representation, y: &Representation) -> (Matrix, Vec<usize>) {
    let alg = x.algebra();
    let nv = alg.n_vertices();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut acc = 0;
    for v in 0..nv {
        offsets.push(acc);
        acc += y.dim(v) * x.dim(v);
    }
    offsets.push(acc);
    let n_eq: usize = alg
        .arrows()
        .iter()
        .map(|a| y.dim(a.tgt) * x.dim(a.src))
        .sum();
    let mut sys = Matrix::zeros(n_eq, acc);
    let mut row = 0;
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.src, a.tgt);
        let xa = x.arrow_map(ai);
        let ya = y.arrow_map(ai);
        // (B_t X_a - Y_a B_s)[i, j] = 0
        for i in 0..y.dim(t) {
            for j in 0..x.dim(s) {
                for k in 0..x.dim(t) {
                    let c = &xa[(k, j)];
                    if !c.is_zero() {
                        sys[(row, offsets[t] + i * x.dim(t) + k)] += c;
                    }
                }
                for k in 0..y.dim(s) {
                    let c = &ya[(i, k)];
                    if !c.is_zero() {
                        sys[(row, offsets[s] + k * x.dim(s) + j)] -= c;
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

fn unflatten(x: &Representation, y: &Representation, offsets: &[usize], v: &[Rational]) -> RepMorphism {
    let blocks = (0..x.algebra().n_vertices())
        .map(|i| {
            Matrix::new(
                y.dim(i),
                x.dim(i),
                v[offsets[i]..offsets[i + 1]].to_vec(),
            )
        })
        .collect();
    RepMorphism::new_unchecked(x, y, blocks)
}

/// Basis of `Hom(x, y)`, canonical (reduced echelon) in block coordinates.
pub fn hom_basis(x: &Representation, y: &Representation) -> Vec<RepMorphism> {
    let (sys, offsets) = naturality_system(x, y);
    let k = sys.kernel();
    (0..k.cols())
        .map(|j| unflatten(x, y, &offsets, &k.column(j)))
        .collect()
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    let (sys, _) = naturality_system(x, y);
    sys.cols() - sys.rank()
}

/// Linear combination of morphisms with the given coefficients.
pub fn combination(basis: &[RepMorphism], coeffs: &[Rational], src: &Representation, dst: &Representation) -> RepMorphism {
    let mut acc = RepMorphism::zero(src, dst);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Seeded random element of `Hom(x, y)` with small integer coefficients.
pub fn random_morphism(x: &Representation, y: &Representation, rng: &mut ChaCha8Rng, range: i64) -> RepMorphism {
    let basis = hom_basis(x, y);
    let coeffs: Vec<Rational> = basis.iter().map(|_| q(rng.gen_range(-range..=range))).collect();
    combination(&basis, &coeffs, x, y)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Kernel object and its inclusion.
pub fn kernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let alg = f.src.algebra();
    let incl: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel).collect();
    let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let img = f.src.arrow_map(ai) * &incl[a.src];
            incl[a.tgt].solve(&img).expect("kernel is a subrepresentation")
        })
        .collect();
    let k = Representation::new_unchecked(alg, dims, maps);
    let iota = RepMorphism::new_unchecked(&k, &f.src, incl);
    (k, iota)
}

/// Cokernel object and its projection.
pub fn cokernel(f: &RepMorphism) -> (Representation, RepMorphism) {
    let alg = f.src.algebra();
    let proj: Vec<Matrix> = f.blocks.iter().map(Matrix::left_kernel).collect();
    let sections: Vec<Matrix> = proj
        .iter()
        .map(|p| p.solve(&Matrix::identity(p.rows())).expect("full row rank"))
        .collect();
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| &(&proj[a.tgt] * f.dst.arrow_map(ai)) * &sections[a.src])
        .collect();
    let c = Representation::new_unchecked(alg, dims, maps);
    let pi = RepMorphism::new_unchecked(&f.dst, &c, proj);
    (c, pi)
}

/// Subrepresentation spanned per vertex by the columns of `gens` (which must
/// be closed under the arrows), with its inclusion into `x`.
pub fn subrep_from_spaces(x: &Representation, gens: &[Matrix]) -> (Representation, RepMorphism) {
    let alg = x.algebra();
    let incl: Vec<Matrix> = gens
        .iter()
        .map(|g| if g.cols() == 0 { g.clone() } else { g.column_space() })
        .collect();
    let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let img = x.arrow_map(ai) * &incl[a.src];
            incl[a.tgt].solve(&img).expect("subspaces closed under arrows")
        })
        .collect();
    let s = Representation::new_unchecked(alg, dims, maps);
    let iota = RepMorphism::new_unchecked(&s, x, incl);
    (s, iota)
}

/// Image with inclusion and corestriction: `f = inclusion ∘ corestriction`.
pub fn image(f: &RepMorphism) -> (Representation, RepMorphism, RepMorphism) {
    let (im, incl) = subrep_from_spaces(&f.dst, &f.blocks);
    let blocks = incl
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(i, b)| i.solve(b).expect("image contains f"))
        .collect();
    let co = RepMorphism::new_unchecked(&f.src, &im, blocks);
    (im, incl, co)
}

/// Pullback of `f: X -> W` and `g: Y -> W`: returns `(P, p_X, p_Y)`.
pub fn pullback(f: &RepMorphism, g: &RepMorphism) -> (Representation, RepMorphism, RepMorphism) {
    let s = DirectSum::new(&[f.src.clone(), g.src.clone()]);
    let diff = s.copair(&[f.clone(), g.neg()]);
    let (p, iota) = kernel(&diff);
    let px = s.projections[0].after(&iota);
    let py = s.projections[1].after(&iota);
    (p, px, py)
}

/// Pushout of `f: U -> X` and `g: U -> Y`: returns `(Q, q_X, q_Y)`.
pub fn pushout(f: &RepMorphism, g: &RepMorphism) -> (Representation, RepMorphism, RepMorphism) {
    let s = DirectSum::new(&[f.dst.clone(), g.dst.clone()]);
    let diff = s.pair(&[f.clone(), g.neg()]);
    let (c, pi) = cokernel(&diff);
    let qx = pi.after(&s.injections[0]);
    let qy = pi.after(&s.injections[1]);
    (c, qx, qy)
}

/// Some `u` with `f ∘ u = t`, if one exists.
pub fn factor_through_target(t: &RepMorphism, f: &RepMorphism) -> Option<RepMorphism> {
    let basis = hom_basis(&t.src, &f.src);
    let images: Vec<Matrix> = basis.iter().map(|b| flat(&f.after(b))).collect();
    let c = solve_in_span(&images, &flat(t))?;
    Some(combination(&basis, &c, &t.src, &f.src))
}

/// Some `u` with `u ∘ g = t`, if one exists.
pub fn factor_through_source(t: &RepMorphism, g: &RepMorphism) -> Option<RepMorphism> {
    let basis = hom_basis(&g.dst, &t.dst);
    let images: Vec<Matrix> = basis.iter().map(|b| flat(&b.after(g))).collect();
    let c = solve_in_span(&images, &flat(t))?;
    Some(combination(&basis, &c, &g.dst, &t.dst))
}

/// Morphism coordinates as a column vector.
pub fn flat(m: &RepMorphism) -> Matrix {
    let c = m.coords();
    Matrix::new(c.len(), 1, c)
}

/// An isomorphism `x -> y`, if one exists.
pub fn find_isomorphism(x: &Representation, y: &Representation, seed: u64) -> Option<RepMorphism> {
    if x.dims() != y.dims() {
        return None;
    }
    if x.is_zero() {
        return Some(RepMorphism::zero(x, y));
    }
    let basis = hom_basis(x, y);
    let space: Vec<Vec<Matrix>> = basis.iter().map(|b| b.blocks.clone()).collect();
    let c = block_invertible_combination(&space, seed).ok()??;
    Some(combination(&basis, &c, x, y))
}

pub fn is_isomorphic(x: &Representation, y: &Representation) -> bool {
    find_isomorphism(x, y, crate::linalg::DEFAULT_SEED).is_some()
}

/// Image of an idempotent with retraction `r` and section `s`, `s∘r = e`.
pub fn split_idempotent(e: &RepMorphism) -> Result<(Representation, RepMorphism, RepMorphism)> {
    if e.src != e.dst || e.after(e) != *e {
        return Err(Error::NotIdempotent);
    }
    let (im, s, r) = image(e);
    Ok((im, r, s))
}

/// Top of `x` per vertex: a matrix whose columns lift a basis of `x_v / rad_v`.
pub fn top_lifts(x: &Representation) -> Vec<Matrix> {
    x.radical_spaces()
        .iter()
        .enumerate()
        .map(|(v, rad)| {
            let n = x.dim(v);
            let mut basis = rad.clone();
            let mut picked = Vec::new();
            for j in 0..n {
                let e = Matrix::unit(n, 1, j, 0);
                let cand = Matrix::hstack(&[&basis, &e]);
                if cand.rank() > basis.cols() {
                    basis = cand;
                    picked.push(e.column(0));
                }
            }
            Matrix::from_columns(n, &picked)
        })
        .collect()
}

/// The morphism `P(v) -> x` sending the trivial path at `v` to `elem`.
pub fn projective_map(p: &Representation, v: usize, x: &Representation, elem: &[Rational]) -> RepMorphism {
    let alg = x.algebra();
    let data = alg.projective_data(v);
    let e = Matrix::new(elem.len(), 1, elem.to_vec());
    let blocks = (0..alg.n_vertices())
        .map(|w| {
            let cols: Vec<Vec<Rational>> = data.paths[w]
                .iter()
                .map(|path| (&x.path_action(v, path) * &e).column(0))
                .collect();
            let b = Matrix::from_columns(x.dim(w), &cols);
            &b * &data.section[w]
        })
        .collect();
    RepMorphism::new_unchecked(p, x, blocks)
}

/// Projective cover `P -> x` with the summands of `P` listed by vertex.
pub fn projective_cover(x: &Representation) -> (Representation, RepMorphism, Vec<usize>) {
    let alg = x.algebra();
    let tops = top_lifts(x);
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut verts = Vec::new();
    for (v, t) in tops.iter().enumerate() {
        for j in 0..t.cols() {
            let p = Representation::projective(alg, v);
            maps.push(projective_map(&p, v, x, &t.column(j)));
            parts.push(p);
            verts.push(v);
        }
    }
    if parts.is_empty() {
        let z = Representation::zero(alg);
        return (z.clone(), RepMorphism::zero(&z, x), verts);
    }
    let s = DirectSum::new(&parts);
    let cover = s.copair(&maps);
    (s.object, cover, verts)
}

/// `f^n` for an endomorphism.
pub fn power(f: &RepMorphism, n: u32) -> RepMorphism {
    let blocks = f.blocks.iter().map(|b| b.pow(n)).collect();
    RepMorphism::new_unchecked(&f.src, &f.dst, blocks)
}

/// `u` with `incl ∘ u = f`, for a monomorphism `incl` whose image contains
/// the image of `f`.
pub fn corestrict(f: &RepMorphism, incl: &RepMorphism) -> Option<RepMorphism> {
    let blocks = incl
        .blocks
        .iter()
        .zip(&f.blocks)
        .map(|(i, b)| i.solve(b))
        .collect::<Option<Vec<Matrix>>>()?;
    Some(RepMorphism::new_unchecked(&f.src, &incl.src, blocks))
}

/// Trace of an endomorphism on the total space.
pub fn trace(f: &RepMorphism) -> Rational {
    let mut t = Rational::zero();
    for b in &f.blocks {
        for i in 0..b.rows() {
            t += &b[(i, i)];
        }
    }
    t
}

/// Projections for an internal decomposition `x = a ⊕ b` given by the two
/// inclusions.
pub fn complement_projections(ia: &RepMorphism, ib: &RepMorphism) -> Option<(RepMorphism, RepMorphism)> {
    let x = &ia.dst;
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    for v in 0..x.algebra().n_vertices() {
        let m = Matrix::hstack(&[&ia.blocks[v], &ib.blocks[v]]);
        let inv = m.inverse()?;
        let ka = ia.src.dim(v);
        pa.push(inv.block(0, 0, ka, inv.cols()));
        pb.push(inv.block(ka, 0, ib.src.dim(v), inv.cols()));
    }
    Some((
        RepMorphism::new_unchecked(x, &ia.src, pa),
        RepMorphism::new_unchecked(x, &ib.src, pb),
    ))
}
