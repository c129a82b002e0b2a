use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::Rational;

/// Sparse multivariate polynomial over the rationals, monomials keyed by
/// exponent vectors and ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            let mut mono = Poly::zero(self.nvars);
            mono.terms.insert(e.clone(), c.clone());
            rem = rem.sub(&mono.mul(d));
            quot.add_term(e, c);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

/// Determinant of `sum_i x_i * space[i]` as a polynomial in the `x_i`,
/// by fraction-free (Bareiss) elimination.
pub fn symbolic_determinant(space: &[Matrix]) -> Poly {
    let k = space.len();
    let n = space.first().map_or(0, |m| m.rows());
    if n == 0 {
        return Poly::constant(k, Rational::one());
    }
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Poly::zero(k);
                    for (v, m) in space.iter().enumerate() {
                        if !m[(i, j)].is_zero() {
                            p = p.add(&Poly::var(k, v).mul(&Poly::constant(k, m[(i, j)].clone())));
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let mut prev = Poly::constant(k, Rational::one());
    let mut sign = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Poly::zero(k);
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let num = a[c][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[c][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][c] = Poly::zero(k);
        }
        prev = a[c][c].clone();
    }
    a[n - 1][n - 1].mul(&Poly::constant(k, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn exact_division_roundtrip() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = x.add(&y);
        let b = x.sub(&y).add(&Poly::constant(2, q(3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(x.div_exact(&y).is_none());
    }

    #[test]
    fn symbolic_det_matches_numeric() {
        let m1 = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[3, 0, 1]]);
        let m2 = Matrix::from_i64(&[&[0, 1, 1], &[1, 0, 2], &[2, 2, 0]]);
        let det = symbolic_determinant(&[m1.clone(), m2.clone()]);
        for (s, t) in [(1, 0), (0, 1), (2, -3), (5, 7)] {
            let mut m = m1.scale(&q(s));
            m.add_scaled(&q(t), &m2);
            assert_eq!(det.eval(&[q(s), q(t)]), m.determinant());
        }
    }

    #[test]
    fn nilpotent_space_has_zero_determinant() {
        let e12 = Matrix::unit(2, 2, 0, 1);
        assert!(symbolic_determinant(&[e12]).is_zero());
    }
}
