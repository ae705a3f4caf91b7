//! Monomials and polynomials in graded-commutative generators.
//!
//! Generators are ordered by declaration. A [`Monomial`] lists
//! `(generator index, exponent)` pairs sorted by that order; odd generators
//! never appear with exponent above one. Multiplication reorders factors and
//! picks up the Koszul sign.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_odd, koszul_parity};
use crate::matrix::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// Generators in their fixed total order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateName(g.name.clone()));
            }
        }
        Ok(GeneratorSet { gens })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Generator> {
        self.gens.iter()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.gens[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn is_odd(&self, i: usize) -> bool {
        is_odd(self.gens[i].degree)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.iter().position(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn push(&mut self, g: Generator) -> Result<usize> {
        if self.gens.iter().any(|h| h.name == g.name) {
            return Err(Error::DuplicateName(g.name));
        }
        self.gens.push(g);
        Ok(self.gens.len() - 1)
    }
}

/// A product of generators in normal form, without coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(i: usize) -> Self {
        Monomial { factors: alloc::vec![(i, 1)] }
    }

    /// Trusted constructor: `factors` must already be sorted, with positive exponents.
    pub fn from_sorted(factors: Vec<(usize, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|f| f.1 > 0));
        Monomial { factors }
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn degree(&self, gens: &GeneratorSet) -> i64 {
        self.factors.iter().map(|&(i, e)| gens.degree(i) * e as i64).sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.factors.iter().find(|f| f.0 == i).map_or(0, |f| f.1)
    }

    /// Factor indices with repetition, in normal order.
    pub fn expanded(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length() as usize);
        for &(i, e) in &self.factors {
            out.extend(core::iter::repeat_n(i, e as usize));
        }
        out
    }

    /// `self * other` in normal form, with the Koszul sign; `None` if an odd
    /// generator would repeat.
    pub fn mul(&self, other: &Monomial, gens: &GeneratorSet) -> Option<(bool, Monomial)> {
        let mut negative = false;
        for &(j, ej) in &other.factors {
            for &(i, ei) in &self.factors {
                if i > j && koszul_parity(gens.degree(i), gens.degree(j)) && (ei * ej) % 2 == 1 {
                    negative = !negative;
                }
            }
        }
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (0, 0);
        while a < self.factors.len() || b < other.factors.len() {
            let next = match (self.factors.get(a), other.factors.get(b)) {
                (Some(&x), Some(&y)) if x.0 == y.0 => {
                    if gens.is_odd(x.0) {
                        return None;
                    }
                    a += 1;
                    b += 1;
                    (x.0, x.1 + y.1)
                }
                (Some(&x), Some(&y)) if x.0 < y.0 => {
                    a += 1;
                    x
                }
                (Some(&x), None) => {
                    a += 1;
                    x
                }
                (_, Some(&y)) => {
                    b += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            merged.push(next);
        }
        Some((negative, Monomial { factors: merged }))
    }

    pub fn write(&self, gens: &GeneratorSet, out: &mut impl Write) -> fmt::Result {
        if self.factors.is_empty() {
            return out.write_str("1");
        }
        for (k, &(i, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                out.write_char('*')?;
            }
            out.write_str(gens.name(i))?;
            if e > 1 {
                write!(out, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sorts a raw product of generators into normal form.
///
/// Returns the signed coefficient and the monomial, or `None` when an odd
/// generator occurs twice (the product vanishes).
pub fn normalize(raw: &[usize], coefficient: &Rational, gens: &GeneratorSet) -> Result<Option<(Rational, Monomial)>> {
    if let Some(&bad) = raw.iter().find(|&&i| i >= gens.len()) {
        return Err(Error::UnknownGenerator(alloc::format!("#{bad}")));
    }
    let mut seq = raw.to_vec();
    let mut negative = false;
    // Insertion sort; each adjacent swap of two odd factors flips the sign.
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            if gens.is_odd(seq[j - 1]) && gens.is_odd(seq[j]) {
                negative = !negative;
            }
            seq.swap(j - 1, j);
            j -= 1;
        }
    }
    let mut factors: Vec<(usize, u32)> = Vec::new();
    for i in seq {
        match factors.last_mut() {
            Some(last) if last.0 == i => {
                if gens.is_odd(i) {
                    return Ok(None);
                }
                last.1 += 1;
            }
            _ => factors.push((i, 1)),
        }
    }
    if coefficient.is_zero() {
        return Ok(None);
    }
    let c = if negative { -coefficient.clone() } else { coefficient.clone() };
    Ok(Some((c, Monomial { factors })))
}

/// Finite linear combination of monomials; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(Monomial::generator(i), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Normalizes a raw product `c * g_{raw[0]} * g_{raw[1]} * ...`.
    pub fn from_product(raw: &[usize], c: &Rational, gens: &GeneratorSet) -> Result<Self> {
        Ok(match normalize(raw, c, gens)? {
            Some((c, m)) => Self::monomial(m, c),
            None => Polynomial::zero(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &Polynomial, gens: &GeneratorSet) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, m)) = a.mul(b, gens) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32, gens: &GeneratorSet) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self, gens);
        }
        acc
    }

    /// The common degree of all terms; `Ok(None)` for the zero polynomial.
    /// Otherwise the first two distinct degrees met.
    pub fn homogeneous_degree(&self, gens: &GeneratorSet) -> core::result::Result<Option<i64>, (i64, i64)> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.degree(gens);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err((e, d)),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Minimum word length over the terms (`None` for zero).
    pub fn min_length(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::length).min()
    }

    /// Generators that occur anywhere in the polynomial.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().flat_map(|m| m.factors.iter().map(|f| f.0)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Renumbers generator indices (`map[old] = new`) into a target set.
    pub fn reindex(&self, map: &[usize], target: &GeneratorSet) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let raw: Vec<usize> = m.expanded().into_iter().map(|i| map[i]).collect();
            if let Ok(Some((c2, m2))) = normalize(&raw, c, target) {
                out.add_term(m2, c2);
            }
        }
        out
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, gens }
    }
}

/// Renders a polynomial in the expression grammar accepted by the parser.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    gens: &'a GeneratorSet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let one = Rational::one();
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if abs != one {
                    write!(f, "{abs} ")?;
                }
                m.write(self.gens, f)?;
            }
        }
        Ok(())
    }
}

/// All monomials of exactly `degree` in generators of positive degree,
/// in increasing [`Monomial`] order.
pub fn monomials_of_degree(gens: &GeneratorSet, degree: i64) -> Vec<Monomial> {
    fn go(gens: &GeneratorSet, i: usize, remaining: i64, acc: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial { factors: acc.clone() });
            return;
        }
        if i == gens.len() {
            return;
        }
        let d = gens.degree(i);
        debug_assert!(d > 0, "monomial enumeration needs positive degrees");
        let max_e = if gens.is_odd(i) { 1 } else { remaining / d };
        for e in (0..=max_e.min(remaining / d)).rev() {
            if e > 0 {
                acc.push((i, e as u32));
            }
            go(gens, i + 1, remaining - e * d, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    if degree < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(gens, 0, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}
