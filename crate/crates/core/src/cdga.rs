//! Free graded-commutative differential graded algebras `Λ(V)`.
//!
//! A [`FreeCdga`] is a finite list of generators in positive degrees, the
//! differential on each generator, and a truncation degree `N` that bounds
//! what is reported. Matrices in any degree can still be built on demand,
//! which is how homology in degree `N` stays honest.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::complex::{ChainMap, Complex, HomologyReport};
use crate::error::{Error, Result};
use crate::graded::{is_odd, GradedSpace};
use crate::matrix::{sign, Matrix, Rational};
use crate::poly::{monomials_of_degree, GeneratorSet, Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCdga {
    gens: GeneratorSet,
    diff: Vec<Polynomial>,
    truncation: i64,
}

impl FreeCdga {
    /// Validates degrees (all `>= 1`), homogeneity of every `d(x)`, and
    /// `d² = 0` on generators (which gives `d² = 0` everywhere).
    pub fn new(gens: GeneratorSet, diff: Vec<Polynomial>, truncation: i64) -> Result<Self> {
        let a = Self::new_unchecked(gens, diff, truncation)?;
        a.validate()?;
        Ok(a)
    }

    /// Only checks that there is one differential image per generator.
    pub fn new_unchecked(gens: GeneratorSet, diff: Vec<Polynomial>, truncation: i64) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), found: diff.len() });
        }
        Ok(FreeCdga { gens, diff, truncation })
    }

    /// `Λ(V)` with zero differential.
    pub fn free(gens: GeneratorSet, truncation: i64) -> Result<Self> {
        let diff = alloc::vec![Polynomial::zero(); gens.len()];
        Self::new(gens, diff, truncation)
    }

    pub fn validate(&self) -> Result<()> {
        for g in self.gens.iter() {
            if g.degree < 1 {
                return Err(Error::BadDegree { name: g.name.clone(), degree: g.degree });
            }
        }
        for (i, p) in self.diff.iter().enumerate() {
            if let Some(&bad) = p.support().iter().find(|&&j| j >= self.gens.len()) {
                return Err(Error::UnknownGenerator(format!("#{bad}")));
            }
            let expected = self.gens.degree(i) + 1;
            match p.homogeneous_degree(&self.gens) {
                Ok(None) => {}
                Ok(Some(d)) if d == expected => {}
                _ => return Err(Error::Inhomogeneous { name: self.gens.name(i).into(), expected }),
            }
        }
        for i in 0..self.gens.len() {
            if !self.apply_d(&self.diff[i]).is_zero() {
                return Err(Error::SquareNonzero(self.gens.name(i).into()));
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn differentials(&self) -> &[Polynomial] {
        &self.diff
    }

    pub fn differential(&self, i: usize) -> &Polynomial {
        &self.diff[i]
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn with_truncation(mut self, n: i64) -> Self {
        self.truncation = n;
        self
    }

    /// The differential as a degree +1 derivation.
    pub fn d(&self) -> Derivation {
        Derivation { degree: 1, images: self.diff.clone() }
    }

    pub fn apply_d(&self, p: &Polynomial) -> Polynomial {
        self.d().apply(p, &self.gens)
    }

    /// Monomial basis of degree `k` (`[1]` in degree 0).
    pub fn basis(&self, k: i64) -> Vec<Monomial> {
        monomials_of_degree(&self.gens, k)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b, &self.gens)
    }

    /// Coordinates of a homogeneous polynomial of degree `k` in [`FreeCdga::basis`].
    pub fn coordinates(&self, p: &Polynomial, k: i64) -> Vec<Rational> {
        let basis = self.basis(k);
        basis.iter().map(|m| p.coefficient(m)).collect()
    }

    pub fn from_coordinates(&self, v: &[Rational], k: i64) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in self.basis(k).into_iter().zip(v) {
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn d_matrix(&self, k: i64) -> Matrix {
        self.d().matrix(self, k)
    }

    /// The underlying cochain complex on degrees `0..=top`.
    pub fn complex_through(&self, top: i64) -> Complex {
        let mut space = GradedSpace::new();
        let mut diff = BTreeMap::new();
        for k in 0..=top {
            let labels = self.basis(k).iter().map(|m| monomial_label(m, &self.gens)).collect();
            space.set_degree(k, labels).expect("monomials are distinct");
            if k < top {
                diff.insert(k, self.d_matrix(k));
            }
        }
        Complex::new_unchecked(space, diff).expect("derivation matrices have the right shape")
    }

    /// Homology, honest through the truncation degree (degree `N+1` is
    /// built internally so that `H^N` is correct).
    pub fn homology(&self, window: RangeInclusive<i64>) -> Result<HomologyReport> {
        if *window.end() > self.truncation {
            return Err(Error::Truncation(format!(
                "homology requested through degree {} but truncation is {}",
                window.end(),
                self.truncation
            )));
        }
        let top = (*window.end() + 1).max(0);
        Ok(self.complex_through(top).homology(window))
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        Ok(self.homology(0..=self.truncation)?.betti_numbers())
    }

    /// Whether every `d(x)` lies in `Λ⁺V · Λ⁺V`; returns the first offender.
    pub fn first_indecomposable_differential(&self) -> Option<usize> {
        self.diff.iter().position(|p| p.min_length().is_some_and(|l| l < 2))
    }
}

pub fn monomial_label(m: &Monomial, gens: &GeneratorSet) -> String {
    let mut s = String::new();
    m.write(gens, &mut s).expect("writing to a String cannot fail");
    s
}

/// A derivation of a free graded-commutative algebra of the given degree,
/// determined by its values on generators:
/// `D(ab) = D(a) b + (-1)^{|D||a|} a D(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub degree: i64,
    pub images: Vec<Polynomial>,
}

impl Derivation {
    pub fn zero(degree: i64, n: usize) -> Self {
        Derivation { degree, images: alloc::vec![Polynomial::zero(); n] }
    }

    pub fn apply_monomial(&self, m: &Monomial, coeff: &Rational, gens: &GeneratorSet) -> Polynomial {
        let factors = m.expanded();
        let mut out = Polynomial::zero();
        let mut prefix_degree = 0i64;
        for (pos, &g) in factors.iter().enumerate() {
            let img = &self.images[g];
            if !img.is_zero() {
                let s = sign(is_odd(self.degree) && is_odd(prefix_degree));
                let left = Polynomial::from_product(&factors[..pos], &Rational::from_integer(1.into()), gens)
                    .expect("indices valid");
                let right = Polynomial::from_product(&factors[pos + 1..], &Rational::from_integer(1.into()), gens)
                    .expect("indices valid");
                let term = left.mul(img, gens).mul(&right, gens).scale(&(s * coeff));
                out.add_assign(&term);
            }
            prefix_degree += gens.degree(g);
        }
        out
    }

    pub fn apply(&self, p: &Polynomial, gens: &GeneratorSet) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            out.add_assign(&self.apply_monomial(m, c, gens));
        }
        out
    }

    /// Matrix from degree `k` to degree `k + self.degree` in monomial bases.
    pub fn matrix(&self, a: &FreeCdga, k: i64) -> Matrix {
        let src = a.basis(k);
        let tgt = a.basis(k + self.degree);
        let index: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(tgt.len(), src.len());
        let one = Rational::from_integer(1.into());
        for (j, m) in src.iter().enumerate() {
            for (mm, c) in self.apply_monomial(m, &one, &a.gens).terms() {
                let i = index[mm];
                out[(i, j)] = c.clone();
            }
        }
        out
    }

    /// Graded commutator `[D, E] = DE - (-1)^{|D||E|} ED`, again a derivation.
    pub fn bracket(&self, other: &Derivation, gens: &GeneratorSet) -> Derivation {
        let s = sign(is_odd(self.degree) && is_odd(other.degree));
        let images = (0..gens.len())
            .map(|i| {
                let de = self.apply(&other.images[i], gens);
                let ed = other.apply(&self.images[i], gens);
                de.sub(&ed.scale(&s))
            })
            .collect();
        Derivation { degree: self.degree + other.degree, images }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        debug_assert_eq!(self.degree, other.degree);
        Derivation {
            degree: self.degree,
            images: self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Derivation {
        Derivation { degree: self.degree, images: self.images.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// First generator on which the two derivations differ.
    pub fn first_difference(&self, other: &Derivation) -> Option<usize> {
        (0..self.images.len()).find(|&i| self.images[i] != other.images[i])
    }
}

/// A CDGA morphism between free algebras, given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaMorphism {
    pub source: FreeCdga,
    pub target: FreeCdga,
    pub images: Vec<Polynomial>,
}

impl CdgaMorphism {
    /// Checks degrees of the images and `f∘d = d∘f` on generators.
    pub fn new(source: FreeCdga, target: FreeCdga, images: Vec<Polynomial>) -> Result<Self> {
        let f = CdgaMorphism { source, target, images };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        let gens = self.source.generators();
        if self.images.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), found: self.images.len() });
        }
        for (i, img) in self.images.iter().enumerate() {
            match img.homogeneous_degree(self.target.generators()) {
                Ok(None) => {}
                Ok(Some(d)) if d == gens.degree(i) => {}
                _ => return Err(Error::Inhomogeneous { name: gens.name(i).into(), expected: gens.degree(i) }),
            }
        }
        for i in 0..gens.len() {
            let lhs = self.apply(self.source.differential(i));
            let rhs = self.target.apply_d(&self.images[i]);
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "morphism does not commute with d on `{}`",
                    gens.name(i)
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let tg = self.target.generators();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(c.clone());
            for g in m.expanded() {
                term = term.mul(&self.images[g], tg);
                if term.is_zero() {
                    break;
                }
            }
            out.add_assign(&term);
        }
        out
    }

    pub fn compose(&self, first: &CdgaMorphism) -> CdgaMorphism {
        CdgaMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|p| self.apply(p)).collect(),
        }
    }

    pub fn matrix(&self, k: i64) -> Matrix {
        let src = self.source.basis(k);
        let tgt = self.target.basis(k);
        let index: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(tgt.len(), src.len());
        for (j, m) in src.iter().enumerate() {
            let img = self.apply(&Polynomial::monomial(m.clone(), Rational::from_integer(1.into())));
            for (mm, c) in img.terms() {
                out[(index[mm], j)] = c.clone();
            }
        }
        out
    }

    /// The induced chain map on degrees `0..=top`.
    pub fn chain_map_through(&self, top: i64) -> Result<ChainMap> {
        let components = (0..=top).map(|k| (k, self.matrix(k))).collect();
        ChainMap::new(self.source.complex_through(top), self.target.complex_through(top), 0, components)
    }

    pub fn is_identity_on_generators(&self) -> bool {
        self.images.iter().enumerate().all(|(i, p)| *p == Polynomial::generator(i))
    }
}

/// Whether a polynomial is zero or has only terms of word length `>= 2`.
pub fn is_decomposable(p: &Polynomial) -> bool {
    p.min_length().is_none_or(|l| l >= 2)
}
