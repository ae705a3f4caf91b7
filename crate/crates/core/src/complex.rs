//! Cochain complexes over the rationals and the standard surgery on them.
//!
//! Degrees are signed integers and every differential raises degree by one:
//! `d_k : C_k -> C_{k+1}` is stored as a `dim(k+1) x dim(k)` matrix. Negatively
//! graded "chain" complexes live in the same representation.
//!
//! Sign conventions (`j` is the degree of the source summand):
//!
//! * `cone(C)_j = C_j ⊕ C_{j+1}`, `d = [[d_j, (-1)^j I], [0, d_{j+1}]]`
//! * `cone'(C)_j = C_{j-1} ⊕ C_j`, `d = [[0, (-1)^j I], [0, 0]]` (differential of `C` forgotten)
//! * `cyl(φ)_j = F_j ⊕ F_{j+1} ⊕ F'_j`, `d = [[d_j, (-1)^j I, 0], [0, d_{j+1}, 0], [0, (-1)^{j+1} φ, d'_j]]`
//! * `cone(φ)_j = F_{j+1} ⊕ F'_j`, `d = [[d_{j+1}, 0], [(-1)^{j+1} φ, d'_j]]`
//! * `shift(C, s)` moves `C_k` to degree `k + s` and keeps the matrices
//! * `dual(C)_k = (C_{-k})*`, `d_k = (-1)^{k+1} (d_{-k-1})^T`
//! * `tensor`: `D(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{is_odd, GradedSpace};
use crate::matrix::{sign, zero_vector, Matrix, Rational, Vector};

fn parity_sign(k: i64) -> Rational {
    sign(is_odd(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    space: GradedSpace,
    diff: BTreeMap<i64, Matrix>,
    augmented: bool,
}

impl Complex {
    /// Builds a complex and checks `d∘d = 0`.
    ///
    /// Degrees between the lowest and highest declared degree that are
    /// missing from `space` become zero-dimensional; missing differentials
    /// are zero.
    pub fn new(space: GradedSpace, diff: BTreeMap<i64, Matrix>) -> Result<Self> {
        let c = Self::new_unchecked(space, diff)?;
        c.check()?;
        Ok(c)
    }

    /// Shape-checked but without verifying `d∘d = 0`; pair with [`Complex::check`].
    pub fn new_unchecked(mut space: GradedSpace, diff: BTreeMap<i64, Matrix>) -> Result<Self> {
        if let (Some(lo), Some(hi)) = (space.min_degree(), space.max_degree()) {
            for k in lo..=hi {
                if space.basis(k).is_empty() && space.support().all(|d| d != k) {
                    space.set_degree(k, Vec::new())?;
                }
            }
        }
        let mut full = BTreeMap::new();
        for k in space.min_degree().unwrap_or(0)..space.max_degree().unwrap_or(-1) {
            full.insert(k, Matrix::zeros(space.dim(k + 1), space.dim(k)));
        }
        for (k, m) in diff {
            match full.get_mut(&k) {
                Some(slot) => {
                    if slot.shape() != m.shape() {
                        return Err(Error::Shape(format!(
                            "d_{k} should be {}x{}, got {}x{}",
                            slot.rows(),
                            slot.cols(),
                            m.rows(),
                            m.cols()
                        )));
                    }
                    *slot = m;
                }
                None if m.is_zero() => {}
                None => return Err(Error::Shape(format!("d_{k} lies outside the support"))),
            }
        }
        Ok(Complex { space, diff: full, augmented: false })
    }

    pub fn zero() -> Self {
        Complex { space: GradedSpace::new(), diff: BTreeMap::new(), augmented: false }
    }

    /// Marks the complex as augmented: contractibility is then tested
    /// relative to a single class in degree 0.
    pub fn with_augmentation(mut self, augmented: bool) -> Self {
        self.augmented = augmented;
        self
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self, k: i64) -> usize {
        self.space.dim(k)
    }

    pub fn range(&self) -> Option<RangeInclusive<i64>> {
        Some(self.space.min_degree()?..=self.space.max_degree()?)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        match self.range() {
            Some(r) => r,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    /// `d_k : C_k -> C_{k+1}`; a zero matrix of the right shape off the support.
    pub fn d(&self, k: i64) -> Matrix {
        self.diff.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn is_zero_complex(&self) -> bool {
        self.space.total_dim() == 0
    }

    /// Verifies `d_{k+1} d_k = 0` everywhere, naming the first violation.
    pub fn check(&self) -> Result<()> {
        for k in self.degrees() {
            let dd = &self.d(k + 1) * &self.d(k);
            if let Some((row, col)) = dd.first_nonzero() {
                return Err(Error::NotAComplex { degree: k, row, col });
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| if is_odd(k) { -(self.dim(k) as i64) } else { self.dim(k) as i64 }).sum()
    }

    pub fn homology(&self, window: RangeInclusive<i64>) -> HomologyReport {
        let mut degrees = BTreeMap::new();
        for k in window {
            let d = self.d(k);
            let cycle_basis = d.kernel();
            let boundary_rank = self.d(k - 1).rank();
            let betti = cycle_basis.len() - boundary_rank;
            degrees.insert(k, HomologyDegree { betti, cycle_basis, boundary_rank });
        }
        HomologyReport { degrees }
    }

    pub fn full_homology(&self) -> HomologyReport {
        self.homology(self.degrees_or_empty())
    }

    fn degrees_or_empty(&self) -> RangeInclusive<i64> {
        #[allow(clippy::reversed_empty_ranges)]
        self.range().unwrap_or(1..=0)
    }

    pub fn betti(&self, k: i64) -> usize {
        self.d(k).kernel().len() - self.d(k - 1).rank()
    }

    /// Cycle representatives of a basis of `H_k`, chosen greedily in
    /// echelon order as a complement to the boundaries.
    pub fn homology_basis(&self, k: i64) -> Vec<Vector> {
        let boundaries = self.d(k - 1).column_space();
        extend_to_complement(&boundaries, &self.d(k).kernel(), self.dim(k))
    }

    /// Coordinates of the class of cycle `z` in the basis of [`Complex::homology_basis`].
    pub fn homology_coordinates(&self, k: i64, z: &[Rational]) -> Option<Vector> {
        let boundaries = self.d(k - 1).column_space();
        let reps = self.homology_basis(k);
        let mut cols = boundaries.clone();
        cols.extend(reps.iter().cloned());
        let sol = Matrix::from_columns(&cols, self.dim(k)).solve(z)?;
        Some(sol[boundaries.len()..].to_vec())
    }

    /// Translates degrees: `C_k` sits in degree `k + by`. Matrices are reused unchanged.
    pub fn shift(&self, by: i64) -> Complex {
        let mut space = GradedSpace::new();
        for (k, labels) in self.space.iter() {
            space.set_degree(k + by, labels.to_vec()).expect("labels already unique");
        }
        let diff = self.diff.iter().map(|(&k, m)| (k + by, m.clone())).collect();
        Complex { space, diff, augmented: self.augmented }
    }

    /// `cone(C)_j = C_j ⊕ C_{j+1}` with `d = [[d_j, (-1)^j I], [0, d_{j+1}]]`.
    pub fn cone(&self) -> Complex {
        let Some(r) = self.range() else { return Complex::zero() };
        let (lo, hi) = (*r.start() - 1, *r.end());
        let mut space = GradedSpace::new();
        for j in lo..=hi {
            let mut labels: Vec<String> = self.space.basis(j).to_vec();
            labels.extend(self.space.basis(j + 1).iter().map(|l| suspended(l)));
            space.set_degree(j, labels).expect("cone labels unique");
        }
        let mut diff = BTreeMap::new();
        for j in lo..hi {
            let (a0, a1, a2) = (self.dim(j), self.dim(j + 1), self.dim(j + 2));
            let mut m = Matrix::zeros(a1 + a2, a0 + a1);
            m.set_block(0, 0, &self.d(j));
            m.set_block(0, a0, &Matrix::scalar(a1, &parity_sign(j)));
            m.set_block(a1, a0, &self.d(j + 1));
            diff.insert(j, m);
        }
        Complex { space, diff, augmented: false }
    }

    /// The free complex on the underlying graded space:
    /// `cone'(C)_j = C_{j-1} ⊕ C_j` with `d = [[0, (-1)^j I], [0, 0]]`.
    /// The differential of `C` is forgotten.
    pub fn cone_prime(&self) -> Complex {
        let Some(r) = self.range() else { return Complex::zero() };
        let (lo, hi) = (*r.start(), *r.end() + 1);
        let mut space = GradedSpace::new();
        for j in lo..=hi {
            let mut labels: Vec<String> = self.space.basis(j - 1).to_vec();
            labels.extend(self.space.basis(j).iter().map(|l| suspended(l)));
            space.set_degree(j, labels).expect("cone' labels unique");
        }
        let mut diff = BTreeMap::new();
        for j in lo..hi {
            let (b0, b1) = (self.dim(j - 1), self.dim(j));
            let mut m = Matrix::zeros(b1 + self.dim(j + 1), b0 + b1);
            m.set_block(0, b0, &Matrix::scalar(b1, &parity_sign(j)));
            diff.insert(j, m);
        }
        Complex { space, diff, augmented: false }
    }

    /// Dual complex `D_k = (C_{-k})*` with `d_k = (-1)^{k+1} (d_{-k-1})^T`.
    pub fn dual(&self) -> Complex {
        let Some(r) = self.range() else { return Complex::zero() };
        let (lo, hi) = (-*r.end(), -*r.start());
        let mut space = GradedSpace::new();
        for k in lo..=hi {
            space.set_degree(k, self.space.basis(-k).iter().map(|l| dual_label(l)).collect()).expect("dual labels");
        }
        let diff = (lo..hi).map(|k| (k, self.d(-k - 1).transpose().scale(&parity_sign(k + 1)))).collect();
        Complex { space, diff, augmented: self.augmented }
    }

    /// Total complex of the tensor product with the Koszul-signed differential.
    pub fn tensor(&self, other: &Complex) -> Complex {
        let (Some(ra), Some(rb)) = (self.range(), other.range()) else { return Complex::zero() };
        let lo = ra.start() + rb.start();
        let hi = ra.end() + rb.end();
        // Index of each (l, i, j) summand inside degree k = l + m.
        let layout = |k: i64| -> Vec<(i64, usize)> {
            let mut blocks = Vec::new();
            let mut offset = 0;
            for l in ra.clone() {
                let m = k - l;
                if rb.contains(&m) {
                    blocks.push((l, offset));
                    offset += self.dim(l) * other.dim(m);
                }
            }
            blocks
        };
        let mut space = GradedSpace::new();
        for k in lo..=hi {
            let mut labels = Vec::new();
            for (l, _) in layout(k) {
                for a in self.space.basis(l) {
                    for b in other.space.basis(k - l) {
                        labels.push(format!("{a}\u{2297}{b}"));
                    }
                }
            }
            space.set_degree(k, labels).expect("tensor labels unique");
        }
        let mut diff = BTreeMap::new();
        for k in lo..hi {
            let src = layout(k);
            let dst = layout(k + 1);
            let mut m = Matrix::zeros(space.dim(k + 1), space.dim(k));
            for &(l, off) in &src {
                let mdeg = k - l;
                let (da, db) = (self.d(l), other.d(mdeg));
                let nb = other.dim(mdeg);
                // dx ⊗ y lands in block (l + 1, m)
                if let Some(&(_, toff)) = dst.iter().find(|b| b.0 == l + 1) {
                    let nb_t = other.dim(mdeg);
                    for i in 0..self.dim(l) {
                        for j in 0..nb {
                            for i2 in 0..self.dim(l + 1) {
                                let x = &da[(i2, i)];
                                if !x.is_zero() {
                                    m[(toff + i2 * nb_t + j, off + i * nb + j)] += x;
                                }
                            }
                        }
                    }
                }
                // (-1)^l x ⊗ dy lands in block (l, m + 1)
                if let Some(&(_, toff)) = dst.iter().find(|b| b.0 == l) {
                    let nb_t = other.dim(mdeg + 1);
                    let s = parity_sign(l);
                    for i in 0..self.dim(l) {
                        for j in 0..nb {
                            for j2 in 0..nb_t {
                                let y = &db[(j2, j)];
                                if !y.is_zero() {
                                    m[(toff + i * nb_t + j2, off + i * nb + j)] += y * &s;
                                }
                            }
                        }
                    }
                }
            }
            diff.insert(k, m);
        }
        Complex { space, diff, augmented: false }
    }

    /// A splitting `C_k = B_k ⊕ H_k ⊕ R_k` and the homotopy `h` with
    /// `dh + hd = I - π`, where `π` projects onto `H` along `B ⊕ R`.
    pub fn splitting_homotopy(&self) -> SplittingHomotopy {
        let mut complements: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();
        for k in self.degrees() {
            let cycles = self.d(k).kernel();
            let standard: Vec<Vector> = (0..self.dim(k)).map(|i| unit(self.dim(k), i)).collect();
            complements.insert(k, extend_to_complement(&cycles, &standard, self.dim(k)));
        }
        let mut homotopy = BTreeMap::new();
        let mut projection = BTreeMap::new();
        for k in self.degrees() {
            let n = self.dim(k);
            let prev = complements.get(&(k - 1)).cloned().unwrap_or_default();
            let d_prev = self.d(k - 1);
            let boundaries: Vec<Vector> = prev.iter().map(|r| d_prev.mul_vec(r)).collect();
            let reps = extend_to_complement(&boundaries, &self.d(k).kernel(), n);
            let own = &complements[&k];
            let mut cols = boundaries.clone();
            cols.extend(reps.iter().cloned());
            cols.extend(own.iter().cloned());
            let basis = Matrix::from_columns(&cols, n);
            let inv = basis.inverse().expect("splitting basis is invertible");
            // h sends d(r_i) to r_i, kills H_k and R_k.
            let mut lift = Matrix::zeros(self.dim(k - 1), n);
            for (i, r) in prev.iter().enumerate() {
                for (row, x) in r.iter().enumerate() {
                    lift[(row, i)] = x.clone();
                }
            }
            homotopy.insert(k, &lift * &inv);
            let mut keep = Matrix::zeros(n, n);
            for (i, h) in reps.iter().enumerate() {
                for (row, x) in h.iter().enumerate() {
                    keep[(row, boundaries.len() + i)] = x.clone();
                }
            }
            projection.insert(k, &keep * &inv);
        }
        SplittingHomotopy { homotopy, projection }
    }

    /// Contractibility over a field: acyclic (or, for augmented complexes,
    /// homology `ℚ` in degree 0 only), witnessed by an explicit homotopy.
    pub fn is_contractible(&self) -> Contractibility {
        let witness = self.splitting_homotopy();
        let contractible = self.degrees().all(|k| {
            let b = self.betti(k);
            if self.augmented && k == 0 {
                b == 1
            } else {
                b == 0
            }
        }) && (!self.augmented || self.range().is_some_and(|r| r.contains(&0)));
        Contractibility { contractible, witness }
    }

    /// Labels-and-blocks equality with another complex, ignoring labels.
    pub fn same_shape_and_differential(&self, other: &Complex) -> bool {
        let degs: Vec<i64> = self.degrees().chain(other.degrees()).collect();
        degs.iter().all(|&k| self.dim(k) == other.dim(k) && self.d(k) == other.d(k))
    }

    /// Direct sum, summands stacked `self` then `other` in each degree.
    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let lo = self.range().map(|r| *r.start()).into_iter().chain(other.range().map(|r| *r.start())).min();
        let hi = self.range().map(|r| *r.end()).into_iter().chain(other.range().map(|r| *r.end())).max();
        let (Some(lo), Some(hi)) = (lo, hi) else { return Complex::zero() };
        let mut space = GradedSpace::new();
        for k in lo..=hi {
            let mut labels: Vec<String> = self.space.basis(k).iter().map(|l| format!("0.{l}")).collect();
            labels.extend(other.space.basis(k).iter().map(|l| format!("1.{l}")));
            space.set_degree(k, labels).expect("sum labels unique");
        }
        let diff = (lo..hi)
            .map(|k| {
                let mut m = Matrix::zeros(space.dim(k + 1), space.dim(k));
                m.set_block(0, 0, &self.d(k));
                m.set_block(self.dim(k + 1), self.dim(k), &other.d(k));
                (k, m)
            })
            .collect();
        Complex { space, diff, augmented: false }
    }
}

fn suspended(label: &str) -> String {
    format!("s.{label}")
}

fn dual_label(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{label}*"),
    }
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

/// Greedily picks vectors from `candidates` that are independent of
/// `base` and of each other.
pub fn extend_to_complement(base: &[Vector], candidates: &[Vector], dim: usize) -> Vec<Vector> {
    let mut current: Vec<Vector> = base.to_vec();
    let mut rank = Matrix::from_columns(&current, dim).rank();
    let mut picked = Vec::new();
    for c in candidates {
        current.push(c.clone());
        let r = Matrix::from_columns(&current, dim).rank();
        if r > rank {
            rank = r;
            picked.push(c.clone());
        } else {
            current.pop();
        }
    }
    picked
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDegree {
    pub betti: usize,
    pub cycle_basis: Vec<Vector>,
    pub boundary_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyReport {
    pub degrees: BTreeMap<i64, HomologyDegree>,
}

impl HomologyReport {
    pub fn betti(&self, k: i64) -> usize {
        self.degrees.get(&k).map_or(0, |d| d.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.values().map(|d| d.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|(&k, d)| if is_odd(k) { -(d.betti as i64) } else { d.betti as i64 }).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.values().all(|d| d.betti == 0)
    }
}

/// `dh + hd = I - π`; `homotopy[k] : C_k -> C_{k-1}`, `projection[k] : C_k -> C_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingHomotopy {
    pub homotopy: BTreeMap<i64, Matrix>,
    pub projection: BTreeMap<i64, Matrix>,
}

impl SplittingHomotopy {
    pub fn h(&self, c: &Complex, k: i64) -> Matrix {
        self.homotopy.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(c.dim(k - 1), c.dim(k)))
    }

    /// Checks `d h + h d = I - π` entrywise in every degree.
    pub fn verify(&self, c: &Complex) -> bool {
        c.degrees().all(|k| {
            let lhs = &(&c.d(k - 1) * &self.h(c, k)) + &(&self.h(c, k + 1) * &c.d(k));
            let pi = self.projection.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(c.dim(k), c.dim(k)));
            lhs == &Matrix::identity(c.dim(k)) - &pi
        })
    }

    pub fn is_contraction(&self) -> bool {
        self.projection.values().all(Matrix::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct Contractibility {
    pub contractible: bool,
    pub witness: SplittingHomotopy,
}

/// A map `φ_j : F_j -> F'_{j+degree}` satisfying `d'φ - (-1)^degree φ d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    degree: i64,
    components: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, degree: i64, components: BTreeMap<i64, Matrix>) -> Result<Self> {
        let map = Self::new_unchecked(source, target, degree, components)?;
        map.check()?;
        Ok(map)
    }

    pub fn new_unchecked(
        source: Complex,
        target: Complex,
        degree: i64,
        components: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        for (&j, m) in &components {
            let want = (target.dim(j + degree), source.dim(j));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "component {j} should be {}x{}, got {}x{}",
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ChainMap { source, target, degree, components })
    }

    pub fn identity(c: &Complex) -> ChainMap {
        let components = c.degrees().map(|k| (k, Matrix::identity(c.dim(k)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, components }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), degree: 0, components: BTreeMap::new() }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn component(&self, j: i64) -> Matrix {
        self.components
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(j + self.degree), self.source.dim(j)))
    }

    fn window(&self) -> RangeInclusive<i64> {
        let lo = self.source.degrees().next().unwrap_or(0).min(self.target.degrees().next().unwrap_or(0) - self.degree);
        let hi = self.source.range().map_or(0, |r| *r.end()).max(self.target.range().map_or(0, |r| *r.end()) - self.degree);
        lo - 1..=hi + 1
    }

    /// Verifies `d' φ_j - (-1)^deg φ_{j+1} d_j = 0` in every degree.
    pub fn check(&self) -> Result<()> {
        let s = parity_sign(self.degree);
        for j in self.window() {
            let lhs = &self.target.d(j + self.degree) * &self.component(j);
            let rhs = (&self.component(j + 1) * &self.source.d(j)).scale(&s);
            if lhs != rhs {
                return Err(Error::NotAChainMap(j));
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap> {
        let components = first
            .source
            .degrees()
            .map(|j| (j, &self.component(j + first.degree) * &first.component(j)))
            .collect();
        ChainMap::new_unchecked(first.source.clone(), self.target.clone(), first.degree + self.degree, components)
    }

    /// Matrix of `H(φ)` in degree `k`, in the bases of [`Complex::homology_basis`].
    pub fn induced_map(&self, k: i64) -> Matrix {
        let reps = self.source.homology_basis(k);
        let phi = self.component(k);
        let out = k + self.degree;
        let cols: Vec<Vector> = reps
            .iter()
            .map(|z| {
                self.target
                    .homology_coordinates(out, &phi.mul_vec(z))
                    .expect("image of a cycle is a cycle")
            })
            .collect();
        Matrix::from_columns(&cols, self.target.betti(out))
    }

    /// Mapping cylinder with its canonical inclusions and projection.
    pub fn mapping_cylinder(&self) -> Result<MappingCylinder> {
        self.require_degree_zero()?;
        let (f, t) = (&self.source, &self.target);
        let lo = f.degrees().next().map(|l| l - 1).into_iter().chain(t.degrees().next()).min();
        let hi = f.range().map(|r| *r.end()).into_iter().chain(t.range().map(|r| *r.end())).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            let z = Complex::zero();
            return Ok(MappingCylinder {
                complex: z.clone(),
                include_source: ChainMap::zero(f, &z),
                include_target: ChainMap::zero(t, &z),
                project: ChainMap::zero(&z, t),
            });
        };
        let mut space = GradedSpace::new();
        for j in lo..=hi {
            let mut labels: Vec<String> = f.space.basis(j).to_vec();
            labels.extend(f.space.basis(j + 1).iter().map(|l| suspended(l)));
            labels.extend(t.space.basis(j).iter().map(|l| format!("t.{l}")));
            space.set_degree(j, labels)?;
        }
        let mut diff = BTreeMap::new();
        for j in lo..hi {
            let (a0, a1, a2) = (f.dim(j), f.dim(j + 1), f.dim(j + 2));
            let (t0, t1) = (t.dim(j), t.dim(j + 1));
            let mut m = Matrix::zeros(a1 + a2 + t1, a0 + a1 + t0);
            m.set_block(0, 0, &f.d(j));
            m.set_block(0, a0, &Matrix::scalar(a1, &parity_sign(j)));
            m.set_block(a1, a0, &f.d(j + 1));
            m.set_block(a1 + a2, a0, &self.component(j + 1).scale(&parity_sign(j + 1)));
            m.set_block(a1 + a2, a0 + a1, &t.d(j));
            diff.insert(j, m);
        }
        let complex = Complex::new(space, diff)?;
        let mut inc_s = BTreeMap::new();
        let mut inc_t = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for j in lo..=hi {
            let (a0, a1, t0) = (f.dim(j), f.dim(j + 1), t.dim(j));
            let n = a0 + a1 + t0;
            let mut is = Matrix::zeros(n, a0);
            is.set_block(0, 0, &Matrix::identity(a0));
            inc_s.insert(j, is);
            let mut it = Matrix::zeros(n, t0);
            it.set_block(a0 + a1, 0, &Matrix::identity(t0));
            inc_t.insert(j, it);
            let mut p = Matrix::zeros(t0, n);
            p.set_block(0, 0, &self.component(j));
            p.set_block(0, a0 + a1, &Matrix::identity(t0));
            proj.insert(j, p);
        }
        Ok(MappingCylinder {
            include_source: ChainMap::new(f.clone(), complex.clone(), 0, inc_s)?,
            include_target: ChainMap::new(t.clone(), complex.clone(), 0, inc_t)?,
            project: ChainMap::new(complex.clone(), t.clone(), 0, proj)?,
            complex,
        })
    }

    /// `cone(φ)_j = F_{j+1} ⊕ F'_j`.
    pub fn mapping_cone(&self) -> Result<Complex> {
        self.require_degree_zero()?;
        let (f, t) = (&self.source, &self.target);
        let lo = f.degrees().next().map(|l| l - 1).into_iter().chain(t.degrees().next()).min();
        let hi = f.range().map(|r| *r.end() - 1).into_iter().chain(t.range().map(|r| *r.end())).max();
        let (Some(lo), Some(hi)) = (lo, hi) else { return Ok(Complex::zero()) };
        let mut space = GradedSpace::new();
        for j in lo..=hi {
            let mut labels: Vec<String> = f.space.basis(j + 1).iter().map(|l| suspended(l)).collect();
            labels.extend(t.space.basis(j).iter().map(|l| format!("t.{l}")));
            space.set_degree(j, labels)?;
        }
        let mut diff = BTreeMap::new();
        for j in lo..hi {
            let (a1, a2, t0, t1) = (f.dim(j + 1), f.dim(j + 2), t.dim(j), t.dim(j + 1));
            let mut m = Matrix::zeros(a2 + t1, a1 + t0);
            m.set_block(0, 0, &f.d(j + 1));
            m.set_block(a2, 0, &self.component(j + 1).scale(&parity_sign(j + 1)));
            m.set_block(a2, a1, &t.d(j));
            diff.insert(j, m);
        }
        Complex::new(space, diff)
    }

    fn require_degree_zero(&self) -> Result<()> {
        if self.degree != 0 {
            return Err(Error::Precondition(format!("chain map of degree {} (need 0)", self.degree)));
        }
        self.check()
    }

    /// Whether `H(φ)` is an isomorphism in every degree.
    ///
    /// Decided twice: from the induced maps directly, and from acyclicity
    /// of the mapping cone. The two must agree.
    pub fn is_weak_equivalence(&self) -> Result<bool> {
        let w = self.window();
        self.is_weak_equivalence_on(*w.start() + 1..=*w.end() - 1)
    }

    /// Weak equivalence through a window `[a, b]`: `H(φ)` is an isomorphism
    /// on `[a, b]`, surjective at `a - 1` and injective at `b + 1`.
    /// Equivalent, by the long exact sequence, to `H(cone φ) = 0` on `[a-1, b]`.
    ///
    /// Both complexes must be honest in degrees `a - 1 ..= b + 1`; the
    /// caller is responsible for truncation.
    pub fn is_weak_equivalence_on(&self, window: RangeInclusive<i64>) -> Result<bool> {
        self.require_degree_zero()?;
        let (a, b) = (*window.start(), *window.end());
        let mut direct = true;
        for k in a - 1..=b + 1 {
            let h = self.induced_map(k);
            let r = h.rank();
            let ok = if k == a - 1 {
                r == h.rows()
            } else if k == b + 1 {
                r == h.cols()
            } else {
                r == h.rows() && r == h.cols()
            };
            direct &= ok;
        }
        let cone = self.mapping_cone()?;
        let via_cone = (a - 1..=b).all(|k| cone.betti(k) == 0);
        if direct != via_cone {
            return Err(Error::Consistency(format!(
                "induced-map test says {direct}, mapping-cone test says {via_cone}"
            )));
        }
        Ok(direct)
    }
}

#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub complex: Complex,
    pub include_source: ChainMap,
    pub include_target: ChainMap,
    pub project: ChainMap,
}

/// The isomorphism `cone'(shift(C, -1)) -> cone(C)` with blocks
/// `[[I, 0], [(-1)^{j+1} d_j, I]]` in degree `j`.
pub fn cone_isomorphism(c: &Complex) -> Result<ChainMap> {
    let source = c.shift(-1).cone_prime();
    let target = c.cone();
    let mut components = BTreeMap::new();
    for j in target.degrees() {
        let (a0, a1) = (c.dim(j), c.dim(j + 1));
        let mut m = Matrix::identity(a0 + a1);
        m.set_block(a0, 0, &c.d(j).scale(&parity_sign(j + 1)));
        components.insert(j, m);
    }
    ChainMap::new(source, target, 0, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;
    use alloc::vec;

    fn line(dims: &[usize], lo: i64) -> GradedSpace {
        let mut s = GradedSpace::new();
        for (i, &n) in dims.iter().enumerate() {
            let k = lo + i as i64;
            s.set_degree(k, (0..n).map(|j| format!("c{k}_{j}")).collect()).unwrap();
        }
        s
    }

    fn two_term_identity() -> Complex {
        let mut diff = BTreeMap::new();
        diff.insert(0, Matrix::identity(1));
        Complex::new(line(&[1, 1], 0), diff).unwrap()
    }

    #[test]
    fn check_flags_first_violation() {
        let mut diff = BTreeMap::new();
        diff.insert(0, Matrix::identity(1));
        diff.insert(1, Matrix::identity(1));
        let c = Complex::new_unchecked(line(&[1, 1, 1], 0), diff).unwrap();
        assert_eq!(c.check(), Err(Error::NotAComplex { degree: 0, row: 0, col: 0 }));
        let zero = Complex::new(line(&[2, 3, 1], 0), BTreeMap::new()).unwrap();
        assert!(zero.check().is_ok());
    }

    #[test]
    fn two_term_identity_is_acyclic() {
        let c = two_term_identity();
        assert_eq!(c.full_homology().betti_numbers(), vec![0, 0]);
        let w = c.is_contractible();
        assert!(w.contractible && w.witness.verify(&c) && w.witness.is_contraction());
    }

    #[test]
    fn cone_of_point() {
        let c = Complex::new(line(&[1], 0), BTreeMap::new()).unwrap();
        let cone = c.cone();
        assert_eq!(cone.range(), Some(-1..=0));
        assert_eq!(cone.d(-1), Matrix::from_i64(1, 1, &[-1]));
        assert!(cone.full_homology().is_acyclic());
        assert!(Complex::zero().cone().is_zero_complex());
        assert!(Complex::zero().cone_prime().is_zero_complex());
    }

    #[test]
    fn shift_round_trip() {
        let c = two_term_identity();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        assert_eq!(c.shift(3).range(), Some(3..=4));
    }

    #[test]
    fn cone_prime_of_bar_matches_cone_blocks() {
        let mut diff = BTreeMap::new();
        diff.insert(0, Matrix::from_i64(1, 2, &[1, 1]));
        let c = Complex::new(line(&[2, 1], 0), diff).unwrap();
        let lhs = c.shift(-1).cone_prime();
        let rhs = c.cone();
        assert_eq!(lhs.range(), rhs.range());
        for j in rhs.degrees() {
            assert_eq!(lhs.dim(j), rhs.dim(j));
            let (a0, a1) = (c.dim(j), c.dim(j + 1));
            assert_eq!(lhs.d(j).block(0, a0, a1, a1), rhs.d(j).block(0, a0, a1, a1));
        }
        let iso = cone_isomorphism(&c).unwrap();
        assert!(iso.check().is_ok());
    }

    #[test]
    fn dual_signs() {
        let mut diff = BTreeMap::new();
        diff.insert(0, Matrix::from_i64(1, 2, &[1, 2]));
        diff.insert(1, Matrix::zeros(1, 1));
        let c = Complex::new(line(&[2, 1, 1], 0), diff).unwrap();
        let dd = c.dual().dual();
        assert_eq!(dd.space(), c.space());
        for k in c.degrees() {
            assert_eq!(dd.d(k), -&c.d(k));
        }
        // (-1)^k is a chain isomorphism C -> dual(dual(C)).
        let comps = c.degrees().map(|k| (k, Matrix::scalar(c.dim(k), &parity_sign(k)))).collect();
        assert!(ChainMap::new(c.clone(), dd, 0, comps).is_ok());
        assert_eq!(c.dual().full_homology().betti_numbers().iter().rev().copied().collect::<Vec<_>>(), c.full_homology().betti_numbers());
    }

    #[test]
    fn tensor_with_unit() {
        let unit = Complex::new(line(&[1], 0), BTreeMap::new()).unwrap();
        let c = two_term_identity();
        let t = c.tensor(&unit);
        assert!(t.same_shape_and_differential(&c));
        let tt = c.tensor(&c);
        assert!(tt.check().is_ok());
        assert!(tt.full_homology().is_acyclic());
    }

    #[test]
    fn identity_and_zero_maps() {
        let point = Complex::new(line(&[1], 0), BTreeMap::new()).unwrap();
        assert!(ChainMap::identity(&point).is_weak_equivalence().unwrap());
        assert!(!ChainMap::zero(&point, &point).is_weak_equivalence().unwrap());
        let cyl = ChainMap::identity(&point).mapping_cylinder().unwrap();
        assert_eq!(cyl.complex.full_homology().betti(0), 1);
        assert!(cyl.project.is_weak_equivalence().unwrap());
    }

    #[test]
    fn cone_of_zero_map_is_shift() {
        let c = two_term_identity();
        let z = ChainMap::zero(&c, &Complex::zero());
        let cone = z.mapping_cone().unwrap();
        assert!(cone.same_shape_and_differential(&c.shift(-1)));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let c = two_term_identity();
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(1));
        let err = ChainMap::new(c.clone(), c, 0, comps).unwrap_err();
        assert_eq!(err, Error::NotAChainMap(0));
        let _ = rat(0);
    }
}
