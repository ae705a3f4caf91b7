//! Lie algebras given by structure constants.
//!
//! [`LieData`] is a classical (ungraded) Lie algebra, the input to the
//! Chevalley–Eilenberg and Weil constructions. [`GLieAlgebra`] is a graded
//! Lie algebra, optionally with a boundary (a degree +1 derivation) and a
//! cobracket.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_odd, koszul_parity};
use crate::matrix::{rat, sign, zero_vector, Matrix, Rational, Vector};

/// `[X_i, X_j] = Σ_k c^k_{ij} X_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    names: Vec<String>,
    // constants[i][j][k] = c^k_{ij}
    constants: Vec<Vec<Vector>>,
}

impl LieData {
    /// Checks antisymmetry and the Jacobi identity exhaustively.
    pub fn new(names: Vec<String>, triples: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let n = names.len();
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].clone()));
        }
        let mut constants = vec![vec![zero_vector(n); n]; n];
        for (i, j, k, c) in triples {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::UnknownGenerator(format!("#{}", i.max(j).max(k))));
            }
            constants[*i][*j][*k] += c;
        }
        let lie = LieData { names, constants };
        lie.validate()?;
        Ok(lie)
    }

    /// Builds from `[X_i, X_j] = Σ c X_k` listed for `i < j` only.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut triples = Vec::new();
        for (i, j, v) in brackets {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    triples.push((*i, *j, k, c.clone()));
                    triples.push((*j, *i, k, -c.clone()));
                }
            }
        }
        Self::new(names, &triples)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let sum: Vector = self.constants[i][j].iter().zip(&self.constants[j][i]).map(|(a, b)| a + b).collect();
                if sum.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Antisymmetry(self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut total = zero_vector(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.constants[b][c];
                        let outer = self.bracket_vectors(&unit(n, a), inner);
                        for (t, o) in total.iter_mut().zip(outer) {
                            *t += o;
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        return Err(Error::Jacobi(self.names[i].clone(), self.names[j].clone(), self.names[k].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        LieData { names, constants: vec![vec![zero_vector(n); n]; n] }
    }

    /// The two-dimensional nonabelian algebra `[x, y] = y`.
    pub fn affine_line() -> Self {
        LieData::from_brackets(vec!["x".into(), "y".into()], &[(0, 1, vec![rat(0), rat(1)])]).expect("valid")
    }

    /// `[e_i, e_j] = ε_{ijk} e_k`.
    pub fn so3() -> Self {
        LieData::from_brackets(
            vec!["e1".into(), "e2".into(), "e3".into()],
            &[
                (0, 1, vec![rat(0), rat(0), rat(1)]),
                (1, 2, vec![rat(1), rat(0), rat(0)]),
                (0, 2, vec![rat(0), rat(-1), rat(0)]),
            ],
        )
        .expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `c^k_{ij}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[i][j][k]
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Vector {
        &self.constants[i][j]
    }

    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..n {
                    out[k] += &s * &self.constants[i][j][k];
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Matrix of `ad_X` in the basis.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_vectors(x, &unit(n, j))).collect();
        Matrix::from_columns(&cols, n)
    }
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

/// A graded Lie algebra on a finite homogeneous basis.
///
/// `[x, y] = -(-1)^{|x||y|} [y, x]`, graded Jacobi, `[L^p, L^q] ⊂ L^{p+q}`.
/// The optional boundary `∂` has degree +1, squares to zero and is a
/// derivation of the bracket. The optional cobracket `δ : L -> L ⊗ L` has
/// degree 0 and is stored as `δ(x_k) = Σ δ^{ij}_k x_i ⊗ x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLieAlgebra {
    names: Vec<String>,
    degrees: Vec<i64>,
    constants: Vec<Vec<Vector>>,
    boundary: Option<Matrix>,
    cobracket: Option<Vec<Matrix>>,
}

impl GLieAlgebra {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        triples: &[(usize, usize, usize, Rational)],
        boundary: Option<Matrix>,
        cobracket: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: degrees.len() });
        }
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateName(w[0].clone()));
        }
        let mut constants = vec![vec![zero_vector(n); n]; n];
        for (i, j, k, c) in triples {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::UnknownGenerator(format!("#{}", i.max(j).max(k))));
            }
            constants[*i][*j][*k] += c;
        }
        if let Some(b) = &boundary {
            if b.shape() != (n, n) {
                return Err(Error::Shape(format!("boundary must be {n}x{n}")));
            }
        }
        if let Some(cb) = &cobracket {
            if cb.len() != n || cb.iter().any(|m| m.shape() != (n, n)) {
                return Err(Error::Shape(format!("cobracket needs {n} matrices of size {n}x{n}")));
            }
        }
        let l = GLieAlgebra { names, degrees, constants, boundary, cobracket };
        l.validate()?;
        Ok(l)
    }

    /// Abelian, zero boundary and cobracket.
    pub fn abelian(names: Vec<String>, degrees: Vec<i64>) -> Result<Self> {
        Self::new(names, degrees, &[], None, None)
    }

    /// Adds a boundary; the result is re-validated.
    pub fn with_boundary(self, boundary: Matrix) -> Result<Self> {
        let triples = self.triples();
        Self::new(self.names, self.degrees, &triples, Some(boundary), self.cobracket)
    }

    pub fn with_cobracket(self, cobracket: Vec<Matrix>) -> Result<Self> {
        let triples = self.triples();
        Self::new(self.names, self.degrees, &triples, self.boundary, Some(cobracket))
    }

    fn triples(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.constants[i][j][k];
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.constants[i][j][k].is_zero() && self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::Shape(format!(
                            "[{}, {}] has a component on {} of the wrong degree",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
                let s = sign(koszul_parity(self.degrees[i], self.degrees[j]));
                let bad = (0..n).any(|k| self.constants[i][j][k] != -(&s * &self.constants[j][i][k]));
                if bad {
                    return Err(Error::Antisymmetry(self.names[i].clone(), self.names[j].clone()));
                }
            }
        }
        // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (di, dj, dk) = (self.degrees[i], self.degrees[j], self.degrees[k]);
                    let mut total = zero_vector(n);
                    for (a, b, c, s) in [
                        (i, j, k, koszul_parity(di, dk)),
                        (j, k, i, koszul_parity(dj, di)),
                        (k, i, j, koszul_parity(dk, dj)),
                    ] {
                        let v = self.bracket_vectors(&unit(n, a), &self.constants[b][c]);
                        let s = sign(s);
                        for (t, x) in total.iter_mut().zip(v) {
                            *t += &s * x;
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        return Err(Error::Jacobi(self.names[i].clone(), self.names[j].clone(), self.names[k].clone()));
                    }
                }
            }
        }
        if let Some(b) = &self.boundary {
            for (r, c, _) in b.triplets() {
                if self.degrees[r] != self.degrees[c] + 1 {
                    return Err(Error::Shape(format!(
                        "boundary sends {} to {} (degree must rise by one)",
                        self.names[c], self.names[r]
                    )));
                }
            }
            if let Some((_, c)) = (b * b).first_nonzero() {
                return Err(Error::SquareNonzero(self.names[c].clone()));
            }
            // ∂[x,y] = [∂x,y] + (-1)^{|x|}[x,∂y]
            for i in 0..n {
                for j in 0..n {
                    let lhs = b.mul_vec(&self.constants[i][j]);
                    let mut rhs = self.bracket_vectors(&b.column(i), &unit(n, j));
                    let s = sign(is_odd(self.degrees[i]));
                    for (t, x) in rhs.iter_mut().zip(self.bracket_vectors(&unit(n, i), &b.column(j))) {
                        *t += &s * x;
                    }
                    if lhs != rhs {
                        return Err(Error::BoundaryNotDerivation(self.names[i].clone(), self.names[j].clone()));
                    }
                }
            }
        }
        if let Some(cb) = &self.cobracket {
            for (k, m) in cb.iter().enumerate() {
                for (i, j, _) in m.triplets() {
                    if self.degrees[i] + self.degrees[j] != self.degrees[k] {
                        return Err(Error::Shape(format!(
                            "cobracket of {} has a component {} ⊗ {} of the wrong degree",
                            self.names[k], self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn boundary(&self) -> Matrix {
        self.boundary.clone().unwrap_or_else(|| Matrix::zeros(self.dim(), self.dim()))
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary.is_some()
    }

    /// `δ(x_k)` as an `n x n` coefficient matrix on `x_i ⊗ x_j`.
    pub fn cobracket(&self, k: usize) -> Matrix {
        self.cobracket.as_ref().map_or_else(|| Matrix::zeros(self.dim(), self.dim()), |cb| cb[k].clone())
    }

    pub fn has_cobracket(&self) -> bool {
        self.cobracket.is_some()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &Vector {
        &self.constants[i][j]
    }

    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..n {
                    out[k] += &s * &self.constants[i][j][k];
                }
            }
        }
        out
    }

    /// Checks that `∂` is a coderivation of `δ`:
    /// `δ∂ = (∂ ⊗ 1 + 1 ⊗ ∂)δ` with the Koszul sign on the second leg.
    pub fn check_coderivation(&self) -> Result<()> {
        let n = self.dim();
        let b = self.boundary();
        for k in 0..n {
            // left side: δ(∂ x_k) = Σ_m ∂_{mk} δ(x_m)
            let mut lhs = Matrix::zeros(n, n);
            for m in 0..n {
                let c = &b[(m, k)];
                if !c.is_zero() {
                    lhs = &lhs + &self.cobracket(m).scale(c);
                }
            }
            // right side: Σ δ^{ij}_k (∂x_i ⊗ x_j + (-1)^{|x_i|} x_i ⊗ ∂x_j)
            let d = self.cobracket(k);
            let mut rhs = &b * &d;
            for i in 0..n {
                let s = sign(is_odd(self.degrees[i]));
                for j in 0..n {
                    let c = &d[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    for j2 in 0..n {
                        let e = &b[(j2, j)];
                        if !e.is_zero() {
                            rhs[(i, j2)] += &s * c * e;
                        }
                    }
                }
            }
            let diff = &lhs - &rhs;
            if let Some((i, j)) = diff.first_nonzero() {
                return Err(Error::Compatibility {
                    element: self.names[k].clone(),
                    left: self.names[i].clone(),
                    right: self.names[j].clone(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for l in [LieData::abelian(3), LieData::affine_line(), LieData::so3()] {
            assert!(LieData::new(l.names().to_vec(), &triples_of(&l)).is_ok());
        }
        assert_eq!(LieData::affine_line().bracket(0, 1), &vec![rat(0), rat(1)]);
        assert!(!LieData::so3().is_abelian());
    }

    fn triples_of(l: &LieData) -> Vec<(usize, usize, usize, Rational)> {
        let n = l.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !l.c(i, j, k).is_zero() {
                        out.push((i, j, k, l.c(i, j, k).clone()));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn jacobi_failure_is_named() {
        // [a,b] = c, [b,c] = b violates Jacobi.
        let names = vec!["a".into(), "b".into(), "c".into()];
        let err = LieData::from_brackets(
            names,
            &[(0, 1, vec![rat(0), rat(0), rat(1)]), (1, 2, vec![rat(0), rat(1), rat(0)])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Jacobi(..)));
    }

    #[test]
    fn odd_self_bracket() {
        // One odd generator e (degree 1) and q = [e, e] in degree 2.
        let l = GLieAlgebra::new(vec!["e".into(), "q".into()], vec![1, 2], &[(0, 0, 1, rat(1))], None, None).unwrap();
        assert_eq!(l.bracket(0, 0), &vec![rat(0), rat(1)]);
        // the same for an even generator violates antisymmetry
        let err = GLieAlgebra::new(vec!["x".into(), "q".into()], vec![2, 4], &[(0, 0, 1, rat(1))], None, None);
        assert!(matches!(err, Err(Error::Antisymmetry(..))));
    }

    #[test]
    fn boundary_checks() {
        let l = GLieAlgebra::abelian(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        let b = Matrix::from_i64(2, 2, &[0, 0, 3, 0]);
        let l = l.with_boundary(b).unwrap();
        assert!(l.check_coderivation().is_ok());
        let bad = GLieAlgebra::abelian(vec!["a".into(), "b".into()], vec![1, 3]).unwrap();
        assert!(bad.with_boundary(Matrix::from_i64(2, 2, &[0, 0, 1, 0])).is_err());
    }

    #[test]
    fn coderivation_failure_names_component() {
        // δ(c) = a ⊗ a with ∂a = b: δ∂ = 0 but (∂⊗1 + 1⊗∂)δ(c) ≠ 0.
        let names = vec!["a".into(), "b".into(), "c".into()];
        let l = GLieAlgebra::abelian(names, vec![1, 2, 2]).unwrap();
        let l = l.with_boundary(Matrix::from_i64(3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0])).unwrap();
        let mut cb = vec![Matrix::zeros(3, 3); 3];
        cb[2] = Matrix::from_i64(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let l = l.with_cobracket(cb).unwrap();
        let err = l.check_coderivation().unwrap_err();
        assert_eq!(err, Error::Compatibility { element: "c".into(), left: "a".into(), right: "b".into() });
    }
}
