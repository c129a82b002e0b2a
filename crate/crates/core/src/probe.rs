//! Finite probe sets instantiating the universal quantifiers of the axioms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{q, Rational};
use crate::quiver::QuiverAlgebra;
use crate::rep::{combination, hom_basis, seeded_rng, DirectSum, RepMorphism, Representation};

use rand::Rng;

/// Search-space description recorded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeSpec {
    /// Largest total dimension of a direct-sum probe object.
    pub max_dim: usize,
    /// Random coefficients are drawn from `-grid..=grid`.
    pub coefficient_grid: i64,
    pub max_objects: usize,
    /// Random morphisms per ordered object pair, on top of the basis.
    pub random_morphisms: usize,
    pub seed: u64,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec {
            max_dim: 3,
            coefficient_grid: 2,
            max_objects: 24,
            random_morphisms: 1,
            seed: crate::linalg::DEFAULT_SEED,
        }
    }
}

impl ProbeSpec {
    pub fn describe(&self) -> String {
        format!(
            "objects: indecomposables, 0 and pairwise sums of total dim <= {} (at most {}); morphisms: hom basis, basis sum, {} seeded combination(s) with coefficients in [-{},{}]",
            self.max_dim, self.max_objects, self.random_morphisms, self.coefficient_grid, self.coefficient_grid
        )
    }
}

#[derive(Clone, Debug)]
pub struct ProbeObject {
    pub name: String,
    pub rep: Representation,
    /// Whether the object is one of the supplied (indecomposable) objects.
    pub basic: bool,
}

#[derive(Clone, Debug)]
pub struct ProbeMorphism {
    pub src: usize,
    pub dst: usize,
    pub label: String,
    pub map: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct ProbeSet {
    pub spec: ProbeSpec,
    pub algebra: Arc<QuiverAlgebra>,
    pub objects: Vec<ProbeObject>,
    /// `morphisms[i][j]`: probe morphisms from object `i` to object `j`.
    morphisms: Vec<Vec<Vec<ProbeMorphism>>>,
}

impl ProbeSet {
    /// Objects are the supplied ones, the zero object and pairwise sums
    /// within the dimension bound, in that order.
    pub fn build(
        algebra: &Arc<QuiverAlgebra>,
        named: &[(String, Representation)],
        spec: ProbeSpec,
    ) -> Result<Self> {
        if named.is_empty() || spec.max_objects == 0 {
            return Err(Error::EmptyProbeSet);
        }
        let mut objects: Vec<ProbeObject> = named
            .iter()
            .map(|(n, r)| ProbeObject {
                name: n.clone(),
                rep: r.clone(),
                basic: true,
            })
            .collect();
        objects.push(ProbeObject {
            name: "0".into(),
            rep: Representation::zero(algebra),
            basic: false,
        });
        'outer: for i in 0..named.len() {
            for j in i..named.len() {
                if objects.len() >= spec.max_objects {
                    break 'outer;
                }
                let (a, b) = (&named[i], &named[j]);
                if a.1.total_dim() + b.1.total_dim() > spec.max_dim {
                    continue;
                }
                objects.push(ProbeObject {
                    name: format!("{}+{}", a.0, b.0),
                    rep: DirectSum::new(&[a.1.clone(), b.1.clone()]).object,
                    basic: false,
                });
            }
        }
        objects.truncate(spec.max_objects.max(named.len() + 1));
        let n = objects.len();
        let mut morphisms = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                morphisms[i][j] = probe_morphisms(&objects, i, j, &spec);
            }
        }
        Ok(ProbeSet {
            spec,
            algebra: algebra.clone(),
            objects,
            morphisms,
        })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn morphisms(&self, i: usize, j: usize) -> &[ProbeMorphism] {
        &self.morphisms[i][j]
    }

    pub fn all_morphisms(&self) -> impl Iterator<Item = &ProbeMorphism> {
        self.morphisms.iter().flatten().flatten()
    }

    pub fn basic_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.objects[i].basic).collect()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.objects[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o.name == name)
    }
}

fn probe_morphisms(objects: &[ProbeObject], i: usize, j: usize, spec: &ProbeSpec) -> Vec<ProbeMorphism> {
    let (x, y) = (&objects[i].rep, &objects[j].rep);
    let basis = hom_basis(x, y);
    let tag = format!("{}->{}", objects[i].name, objects[j].name);
    let mut out: Vec<ProbeMorphism> = Vec::new();
    let push = |label: String, map: RepMorphism, out: &mut Vec<ProbeMorphism>| {
        if !out.iter().any(|m| m.map == map) {
            out.push(ProbeMorphism {
                src: i,
                dst: j,
                label,
                map,
            });
        }
    };
    if basis.is_empty() {
        push(format!("0:{tag}"), RepMorphism::zero(x, y), &mut out);
        return out;
    }
    for (k, b) in basis.iter().enumerate() {
        push(format!("b{k}:{tag}"), b.clone(), &mut out);
    }
    if basis.len() > 1 {
        let ones: Vec<Rational> = basis.iter().map(|_| q(1)).collect();
        push(format!("sum:{tag}"), combination(&basis, &ones, x, y), &mut out);
    }
    let mut rng = seeded_rng(spec.seed ^ ((i as u64) << 32) ^ (j as u64));
    for r in 0..spec.random_morphisms {
        let coeffs: Vec<Rational> = basis
            .iter()
            .map(|_| q(rng.gen_range(-spec.coefficient_grid..=spec.coefficient_grid)))
            .collect();
        push(format!("r{r}:{tag}"), combination(&basis, &coeffs, x, y), &mut out);
    }
    push(format!("0:{tag}"), RepMorphism::zero(x, y), &mut out);
    out
}
