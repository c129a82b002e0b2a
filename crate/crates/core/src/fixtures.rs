//! Built-in categories used by tests, benches and the shipped scenarios.

use std::sync::Arc;

use crate::conflation::{ClassKind, ConflationClass};
use crate::linalg::Matrix;
use crate::quiver::QuiverAlgebra;
use crate::rep::{hom_basis, KCPair, Representation};

/// A quiver algebra with a list of named objects.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub algebra: Arc<QuiverAlgebra>,
    pub named: Vec<(String, Representation)>,
}

impl Fixture {
    pub fn get(&self, name: &str) -> &Representation {
        &self
            .named
            .iter()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("fixture has no object {name}"))
            .1
    }

    pub fn names(&self) -> Vec<String> {
        self.named.iter().map(|(n, _)| n.clone()).collect()
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

/// The path algebra of `1 <- 2 <- 3` (arrows `a: 2 -> 1`, `b: 3 -> 2`)
/// with its six indecomposables. `I2` is the injective hull of `S2`, which
/// is also the inverse Auslander-Reiten translate of `P2`.
pub fn a3() -> Fixture {
    let alg = QuiverAlgebra::new(
        vec![s("1"), s("2"), s("3")],
        vec![(s("a"), s("2"), s("1")), (s("b"), s("3"), s("2"))],
        vec![],
    )
    .expect("A3 quiver is valid");
    let one = Matrix::identity(1);
    let rep = |dims: [usize; 3], a: bool, b: bool| {
        let ma = if a { one.clone() } else { Matrix::zeros(dims[0], dims[1]) };
        let mb = if b { one.clone() } else { Matrix::zeros(dims[1], dims[2]) };
        Representation::new(&alg, dims.to_vec(), vec![ma, mb]).expect("valid representation")
    };
    let named = vec![
        (s("S1"), rep([1, 0, 0], false, false)),
        (s("P2"), rep([1, 1, 0], true, false)),
        (s("P3"), rep([1, 1, 1], true, true)),
        (s("S2"), rep([0, 1, 0], false, false)),
        (s("I2"), rep([0, 1, 1], false, true)),
        (s("S3"), rep([0, 0, 1], false, false)),
    ];
    Fixture {
        algebra: alg,
        named,
    }
}

/// The nonsplit sequence `S2 -> I2 -> S3`.
pub fn a3_removed_sequence(f: &Fixture) -> KCPair {
    let inc = hom_basis(f.get("S2"), f.get("I2")).remove(0);
    let proj = hom_basis(f.get("I2"), f.get("S3")).remove(0);
    KCPair::new(inc, proj).expect("composable")
}

/// All short exact sequences except those isomorphic to `S2 -> I2 -> S3`.
pub fn a3_restricted_class(f: &Fixture) -> ConflationClass {
    ConflationClass::new(
        &f.algebra,
        ClassKind::AllShortExactMinus(vec![a3_removed_sequence(f)]),
    )
}

/// Four isolated vertices `0..3` and the sums generating the finite weak
/// idempotent completion tower.
pub fn k4() -> (Fixture, Vec<(String, Representation)>) {
    let alg = QuiverAlgebra::new(vec![s("0"), s("1"), s("2"), s("3")], vec![], vec![])
        .expect("K4 quiver is valid");
    let simple = |v: usize| Representation::simple(&alg, v);
    let named: Vec<(String, Representation)> =
        (0..4).map(|v| (format!("S{v}"), simple(v))).collect();
    let sum = |vs: &[usize]| {
        let mut dims = vec![0; 4];
        for &v in vs {
            dims[v] = 1;
        }
        Representation::new(&alg, dims, vec![]).expect("valid representation")
    };
    let generators = vec![
        (s("S0"), sum(&[0])),
        (s("S0+S1"), sum(&[0, 1])),
        (s("S1+S2"), sum(&[1, 2])),
        (s("S2+S3"), sum(&[2, 3])),
    ];
    (
        Fixture {
            algebra: alg,
            named,
        },
        generators,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{hom_dim, projective_cover};

    #[test]
    fn a3_matches_projectives() {
        let f = a3();
        for (v, name) in ["S1", "P2", "P3"].iter().enumerate() {
            let p = Representation::projective(&f.algebra, v);
            assert!(crate::rep::is_isomorphic(&p, f.get(name)));
        }
        assert_eq!(hom_dim(f.get("P3"), f.get("I2")), 1);
        let (_, _, verts) = projective_cover(f.get("I2"));
        assert_eq!(verts, vec![2]);
    }
}
