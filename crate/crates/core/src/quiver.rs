use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A path is a sequence of arrow indices in traversal order; the empty path
/// at a vertex is the idempotent of that vertex.
pub type Path = Vec<usize>;

/// Linear combination of parallel paths, required to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

/// Finite-dimensional algebra presented by an acyclic quiver with relations.
#[derive(Debug, PartialEq, Eq)]
pub struct QuiverAlgebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
    topo: Vec<usize>,
}

/// Basis data for the projective at a vertex: for every target vertex the
/// paths reaching it and the quotient map killing the relation ideal.
#[derive(Debug, Clone)]
pub(crate) struct ProjectiveData {
    pub paths: Vec<Vec<Path>>,
    pub quotient: Vec<Matrix>,
    pub section: Vec<Matrix>,
}

impl QuiverAlgebra {
    /// Validates endpoints, acyclicity and that relations combine parallel
    /// paths. Cyclic quivers are rejected: the finite global dimension bound
    /// used by resolutions needs a triangular algebra.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<Vec<(Rational, Vec<String>)>>,
    ) -> Result<Arc<Self>> {
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidInput("duplicate vertex id".into()));
        }
        let mut arr = Vec::new();
        for (id, s, t) in &arrows {
            let lookup = |v: &String| {
                index.get(v.as_str()).copied().ok_or_else(|| {
                    Error::InvalidInput(format!("arrow {id} uses undeclared vertex {v}"))
                })
            };
            arr.push(Arrow {
                id: id.clone(),
                src: lookup(s)?,
                tgt: lookup(t)?,
            });
        }
        let arrow_index: BTreeMap<&str, usize> =
            arr.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
        if arrow_index.len() != arr.len() {
            return Err(Error::InvalidInput("duplicate arrow id".into()));
        }
        let topo = topological_order(vertices.len(), &arr).ok_or_else(|| {
            Error::Unsupported("quiver has an oriented cycle; only acyclic quivers load".into())
        })?;
        let mut rels = Vec::new();
        for (ri, rel) in relations.iter().enumerate() {
            let mut terms = Vec::new();
            let mut ends: Option<(usize, usize)> = None;
            for (c, names) in rel {
                let path: Path = names
                    .iter()
                    .map(|n| {
                        arrow_index.get(n.as_str()).copied().ok_or_else(|| {
                            Error::InvalidInput(format!("relation {ri} uses unknown arrow {n}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                if path.is_empty() {
                    return Err(Error::InvalidInput(format!("relation {ri} has an empty path")));
                }
                for w in path.windows(2) {
                    if arr[w[0]].tgt != arr[w[1]].src {
                        return Err(Error::InvalidInput(format!(
                            "relation {ri}: path is not composable"
                        )));
                    }
                }
                let e = (arr[path[0]].src, arr[*path.last().unwrap()].tgt);
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::InvalidInput(format!(
                            "relation {ri} combines non-parallel paths"
                        )))
                    }
                    _ => {}
                }
                terms.push((c.clone(), path));
            }
            rels.push(Relation { terms });
        }
        Ok(Arc::new(QuiverAlgebra {
            vertices,
            arrows: arr,
            relations: rels,
            topo,
        }))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Upper bound on the global dimension (acyclic quiver).
    pub fn global_dimension_bound(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Vertices in an order where every arrow goes forward.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// All paths starting at `v`, grouped by end vertex.
    pub fn paths_from(&self, v: usize) -> Vec<Vec<Path>> {
        let mut out = vec![Vec::new(); self.n_vertices()];
        let mut stack: Vec<(usize, Path)> = vec![(v, Vec::new())];
        while let Some((at, path)) = stack.pop() {
            out[at].push(path.clone());
            for (i, a) in self.arrows.iter().enumerate() {
                if a.src == at {
                    let mut p = path.clone();
                    p.push(i);
                    stack.push((a.tgt, p));
                }
            }
        }
        for ps in &mut out {
            ps.sort();
        }
        out
    }

    fn path_ends(&self, p: &Path, start: usize) -> usize {
        p.last().map_or(start, |&a| self.arrows[a].tgt)
    }

    pub(crate) fn projective_data(&self, v: usize) -> ProjectiveData {
        let paths = self.paths_from(v);
        let n = self.n_vertices();
        let mut ideal: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
        // Ideal elements p·r·q with q from v to the relation source.
        for rel in &self.relations {
            let rs = self.arrows[rel.terms[0].1[0]].src;
            for q_path in &paths[rs] {
                let after = self.paths_from(self.path_ends(&rel.terms[0].1, rs));
                for (w, ps) in after.iter().enumerate() {
                    for p_path in ps {
                        let mut vec = vec![Rational::zero(); paths[w].len()];
                        for (c, rp) in &rel.terms {
                            let mut full = q_path.clone();
                            full.extend(rp);
                            full.extend(p_path);
                            let idx = paths[w].iter().position(|x| *x == full).unwrap();
                            vec[idx] += c;
                        }
                        ideal[w].push(vec);
                    }
                }
            }
        }
        let mut quotient = Vec::with_capacity(n);
        let mut section = Vec::with_capacity(n);
        for w in 0..n {
            let m = paths[w].len();
            let l = if ideal[w].is_empty() {
                Matrix::identity(m)
            } else {
                Matrix::from_columns(m, &ideal[w]).left_kernel()
            };
            let s = l
                .solve(&Matrix::identity(l.rows()))
                .expect("quotient map has full row rank");
            quotient.push(l);
            section.push(s);
        }
        ProjectiveData {
            paths,
            quotient,
            section,
        }
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.tgt] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.src == v) {
            indeg[a.tgt] -= 1;
            if indeg[a.tgt] == 0 {
                ready.push(a.tgt);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Matrix of a path acting on a representation given by its arrow maps.
pub(crate) fn path_matrix(
    alg: &QuiverAlgebra,
    dims: &[usize],
    maps: &[Matrix],
    start: usize,
    path: &Path,
) -> Matrix {
    let mut m = Matrix::identity(dims[start]);
    for &a in path {
        m = &maps[a] * &m;
    }
    debug_assert_eq!(m.rows(), dims[alg.path_ends(path, start)]);
    m
}

/// Evaluates a relation, returning whether it vanishes.
pub(crate) fn relation_holds(
    alg: &QuiverAlgebra,
    dims: &[usize],
    maps: &[Matrix],
    rel: &Relation,
) -> bool {
    let (_, first) = &rel.terms[0];
    let s = alg.arrows[first[0]].src;
    let t = alg.path_ends(first, s);
    let mut acc = Matrix::zeros(dims[t], dims[s]);
    for (c, p) in &rel.terms {
        acc.add_scaled(c, &path_matrix(alg, dims, maps, s, p));
    }
    acc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn rejects_cycles_and_bad_endpoints() {
        let cyc = QuiverAlgebra::new(
            vec![s("1"), s("2")],
            vec![(s("a"), s("1"), s("2")), (s("b"), s("2"), s("1"))],
            vec![],
        );
        assert!(matches!(cyc, Err(Error::Unsupported(_))));
        let bad = QuiverAlgebra::new(vec![s("1")], vec![(s("a"), s("1"), s("9"))], vec![]);
        assert!(bad.is_err());
    }

    #[test]
    fn paths_and_relations() {
        // 1 -a-> 2 -b-> 3 with ba = 0.
        let alg = QuiverAlgebra::new(
            vec![s("1"), s("2"), s("3")],
            vec![(s("a"), s("1"), s("2")), (s("b"), s("2"), s("3"))],
            vec![vec![(q(1), vec![s("a"), s("b")])]],
        )
        .unwrap();
        let p = alg.paths_from(0);
        assert_eq!(p.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 1, 1]);
        let d = alg.projective_data(0);
        assert_eq!(d.quotient[2].rows(), 0);
        assert_eq!(d.quotient[1].rows(), 1);
        assert_eq!(alg.global_dimension_bound(), 2);
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let alg = QuiverAlgebra::new(
            vec![s("1"), s("2"), s("3")],
            vec![(s("a"), s("1"), s("2")), (s("b"), s("2"), s("3"))],
            vec![vec![(q(1), vec![s("a")]), (q(1), vec![s("a"), s("b")])]],
        );
        assert!(alg.is_err());
    }
}
