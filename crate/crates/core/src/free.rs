//! Free objects at finite truncation: tensor algebra, free graded-commutative
//! algebra, free graded Lie algebra, enveloping algebra dimensions, and the
//! bar construction.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cdga::{monomial_label, FreeCdga};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graded::{koszul_parity, GradedSpace};
use crate::matrix::{sign, Matrix, Rational, Vector};
use crate::poly::{Generator, GeneratorSet, Monomial, Polynomial};

fn positive_dims(m: &GradedSpace) -> Result<BTreeMap<i64, usize>> {
    let mut dims = BTreeMap::new();
    for (k, basis) in m.iter() {
        if basis.is_empty() {
            continue;
        }
        if k < 1 {
            return Err(Error::BadDegree { name: basis[0].clone(), degree: k });
        }
        dims.insert(k, basis.len());
    }
    Ok(dims)
}

/// `dim Tens(M)_k` for `k = 0..=n`: sum over compositions of `k` of the
/// products of `dim M^{j_i}`.
pub fn tensor_algebra(m: &GradedSpace, n: i64) -> Result<Vec<usize>> {
    let dims = positive_dims(m)?;
    let mut out = vec![0usize; (n.max(0) + 1) as usize];
    out[0] = 1;
    for k in 1..=n {
        out[k as usize] = dims.iter().filter(|(&j, _)| j <= k).map(|(&j, &d)| d * out[(k - j) as usize]).sum();
    }
    Ok(out)
}

fn generators_of(m: &GradedSpace) -> Result<GeneratorSet> {
    positive_dims(m)?;
    GeneratorSet::new(m.iter().flat_map(|(k, b)| b.iter().map(move |l| Generator::new(l.clone(), k))).collect())
}

/// `Λ(M)` with zero differential.
pub fn free_gc_algebra(m: &GradedSpace, n: i64) -> Result<FreeCdga> {
    FreeCdga::free(generators_of(m)?, n)
}

/// Element of the tensor algebra: words in generator indices.
pub type Word = Vec<usize>;
pub type TensorElement = BTreeMap<Word, Rational>;

fn tensor_add(acc: &mut TensorElement, w: Word, c: Rational) {
    match acc.entry(w) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

/// Sparse incremental elimination over tensors. Each stored row is monic at
/// its pivot word and vanishes at the pivots of earlier rows.
#[derive(Default)]
struct Echelon {
    rows: Vec<(Word, TensorElement)>,
}

impl Echelon {
    /// Adds `t` if it is independent of the rows so far.
    fn insert(&mut self, t: &TensorElement) -> bool {
        let mut v = t.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (w, x) in row {
                    tensor_add(&mut v, w.clone(), -(&c * x));
                }
            }
        }
        let Some((pivot, lead)) = v.iter().next().map(|(w, c)| (w.clone(), c.clone())) else { return false };
        let inv = Rational::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        self.rows.push((pivot, v));
        true
    }
}

fn tensor_mul(a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut out = TensorElement::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            tensor_add(&mut out, w, ca * cb);
        }
    }
    out
}

/// `[u, v] = uv - (-1)^{|u||v|} vu` for homogeneous `u`, `v`.
pub fn graded_commutator(u: &TensorElement, v: &TensorElement, du: i64, dv: i64) -> TensorElement {
    let mut out = tensor_mul(u, v);
    let s = sign(!koszul_parity(du, dv));
    for (w, c) in tensor_mul(v, u) {
        tensor_add(&mut out, w, c * &s);
    }
    out
}

/// The free graded Lie algebra `ℒ(M)` realized inside `Tens(M)` by iterated
/// graded commutators, with a basis per degree extracted by rank.
#[derive(Clone, Debug)]
pub struct FreeGLie {
    pub generators: GeneratorSet,
    pub truncation: i64,
    /// Basis elements per degree, as tensors.
    pub basis: BTreeMap<i64, Vec<TensorElement>>,
}

struct WordIndex {
    index: BTreeMap<Word, usize>,
}

impl WordIndex {
    fn vectorize(&mut self, elems: &[TensorElement]) -> Vec<Vector> {
        for e in elems {
            for w in e.keys() {
                let n = self.index.len();
                self.index.entry(w.clone()).or_insert(n);
            }
        }
        let n = self.index.len();
        elems
            .iter()
            .map(|e| {
                let mut v = vec![Rational::zero(); n];
                for (w, c) in e {
                    v[self.index[w]] = c.clone();
                }
                v
            })
            .collect()
    }
}

/// Keyed by `((degree, index), (degree, index))` of the two basis elements.
pub type BracketTable = BTreeMap<((i64, usize), (i64, usize)), Vector>;

pub fn free_glie(m: &GradedSpace, n: i64) -> Result<FreeGLie> {
    let gens = generators_of(m)?;
    let mut basis: BTreeMap<i64, Vec<TensorElement>> = BTreeMap::new();
    for d in 1..=n {
        let mut candidates: Vec<TensorElement> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.degree == d {
                let mut e = TensorElement::new();
                e.insert(vec![i], Rational::one());
                candidates.push(e);
            }
        }
        for (i, g) in gens.iter().enumerate() {
            let rest = d - g.degree;
            if rest < 1 {
                continue;
            }
            let mut e = TensorElement::new();
            e.insert(vec![i], Rational::one());
            for u in basis.get(&rest).map(Vec::as_slice).unwrap_or(&[]) {
                let c = graded_commutator(&e, u, g.degree, rest);
                if !c.is_empty() {
                    candidates.push(c);
                }
            }
        }
        let mut echelon = Echelon::default();
        let chosen = candidates.into_iter().filter(|c| echelon.insert(c)).collect();
        basis.insert(d, chosen);
    }
    Ok(FreeGLie { generators: gens, truncation: n, basis })
}

impl FreeGLie {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.basis.iter().map(|(&k, b)| (k, b.len())).collect()
    }

    /// Coordinates of a tensor of degree `d` in the basis of `L_d`, if it lies there.
    pub fn coordinates(&self, d: i64, t: &TensorElement) -> Option<Vector> {
        let basis = self.basis.get(&d)?;
        let mut index = WordIndex { index: BTreeMap::new() };
        let mut all = basis.clone();
        all.push(t.clone());
        let mut vs = index.vectorize(&all);
        let dim = index.index.len();
        for v in &mut vs {
            v.resize(dim, Rational::zero());
        }
        let target = vs.pop().expect("pushed above");
        if basis.is_empty() {
            return if t.is_empty() { Some(Vec::new()) } else { None };
        }
        Matrix::from_columns(&vs, dim).solve(&target)
    }

    /// Brackets of basis elements `(d1, i) x (d2, j)` re-expanded in the basis
    /// of degree `d1 + d2` (within the truncation).
    pub fn bracket_table(&self) -> Result<BracketTable> {
        let mut table = BTreeMap::new();
        for (&d1, b1) in &self.basis {
            for (&d2, b2) in &self.basis {
                if d1 + d2 > self.truncation {
                    continue;
                }
                for (i, u) in b1.iter().enumerate() {
                    for (j, v) in b2.iter().enumerate() {
                        let c = graded_commutator(u, v, d1, d2);
                        let coords = self
                            .coordinates(d1 + d2, &c)
                            .ok_or_else(|| Error::Consistency(format!("bracket in degree {} leaves L", d1 + d2)))?;
                        table.insert(((d1, i), (d2, j)), coords);
                    }
                }
            }
        }
        Ok(table)
    }

    /// Graded Jacobi on all basis triples whose total degree is within the truncation.
    pub fn check_jacobi(&self) -> bool {
        let elems: Vec<(i64, &TensorElement)> =
            self.basis.iter().flat_map(|(&d, b)| b.iter().map(move |e| (d, e))).collect();
        for &(dx, x) in &elems {
            for &(dy, y) in &elems {
                for &(dz, z) in &elems {
                    if dx + dy + dz > self.truncation {
                        continue;
                    }
                    let mut total = TensorElement::new();
                    for (a, da, b, db, c, dc, s) in [
                        (x, dx, y, dy, z, dz, koszul_parity(dx, dz)),
                        (y, dy, z, dz, x, dx, koszul_parity(dy, dx)),
                        (z, dz, x, dx, y, dy, koszul_parity(dz, dy)),
                    ] {
                        let inner = graded_commutator(b, c, db, dc);
                        let outer = graded_commutator(a, &inner, da, db + dc);
                        let s = sign(s);
                        for (w, c) in outer {
                            tensor_add(&mut total, w, c * &s);
                        }
                    }
                    if !total.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// PBW dimensions of `U(L)` from the dimensions of `L` (all in degrees `>= 1`):
/// `Π_{d even} (1 - t^d)^{-n_d} · Π_{d odd} (1 + t^d)^{n_d}`, up to degree `n`.
pub fn enveloping(dims: &BTreeMap<i64, usize>, n: i64) -> Result<Vec<usize>> {
    for (&d, &k) in dims {
        if d < 1 && k > 0 {
            return Err(Error::BadDegree { name: format!("degree {d} part"), degree: d });
        }
    }
    let len = (n.max(0) + 1) as usize;
    let mut series = vec![0usize; len];
    series[0] = 1;
    for (&d, &count) in dims {
        let d = d as usize;
        for _ in 0..count {
            if d % 2 == 1 {
                // multiply by (1 + t^d)
                for k in (d..len).rev() {
                    series[k] += series[k - d];
                }
            } else {
                // divide by (1 - t^d)
                for k in d..len {
                    series[k] += series[k - d];
                }
            }
        }
    }
    Ok(series)
}

/// The bar construction `B(U, U)` of the augmented algebra `U = Λ(V)/Λ(V)^{>N}`
/// (internal degree at most `N`), together with its canonical contraction.
///
/// Bar degree `p` (`U ⊗ Ū^{⊗p} ⊗ U`) sits in cochain degree `-p`; the
/// augmentation `ε : U ⊗ U -> U` lands in degree `+1`. The differential is
/// `Σ_{i=0}^{p} (-1)^i` (multiply slots `i` and `i+1`), and the contraction is
/// `s(a_0[a_1|…|a_p]m) = [ā_0|a_1|…|a_p]m`, `s(m) = 1[]m`.
#[derive(Clone, Debug)]
pub struct BarConstruction {
    pub complex: Complex,
    /// `contraction[k] : C_k -> C_{k-1}`.
    pub contraction: BTreeMap<i64, Matrix>,
}

impl BarConstruction {
    /// `ds + sd = I` in every degree.
    pub fn verify_contraction(&self) -> bool {
        let c = &self.complex;
        let s = |k: i64| self.contraction.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(c.dim(k - 1), c.dim(k)));
        c.degrees().all(|k| &(&c.d(k - 1) * &s(k)) + &(&s(k + 1) * &c.d(k)) == Matrix::identity(c.dim(k)))
    }
}

struct TruncatedAlgebra<'a> {
    a: &'a FreeCdga,
    n: i64,
    basis: Vec<(i64, Monomial)>,
    index: BTreeMap<Monomial, usize>,
}

impl<'a> TruncatedAlgebra<'a> {
    fn new(a: &'a FreeCdga, n: i64) -> Result<Self> {
        if a.differentials().iter().any(|p| !p.is_zero()) {
            return Err(Error::Precondition("bar construction needs a zero differential".into()));
        }
        let mut basis = Vec::new();
        for k in 0..=n {
            for m in a.basis(k) {
                basis.push((k, m));
            }
        }
        let index = basis.iter().enumerate().map(|(i, (_, m))| (m.clone(), i)).collect();
        Ok(TruncatedAlgebra { a, n, basis, index })
    }

    /// Product of basis elements, as (coefficient, index), or `None` if zero.
    fn mul(&self, i: usize, j: usize) -> Option<(Rational, usize)> {
        let (di, mi) = &self.basis[i];
        let (dj, mj) = &self.basis[j];
        if di + dj > self.n {
            return None;
        }
        let (neg, m) = mi.mul(mj, self.a.generators())?;
        Some((sign(neg), self.index[&m]))
    }

    fn label(&self, i: usize) -> String {
        monomial_label(&self.basis[i].1, self.a.generators())
    }
}

/// Basis tuples `(a_0, [a_1..a_p], m)` of bar degree `p` with total internal degree `<= N`.
fn bar_tuples(u: &TruncatedAlgebra, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let slots = p + 2;
    let mut cur = Vec::with_capacity(slots);
    fn go(u: &TruncatedAlgebra, slots: usize, budget: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        let interior = !cur.is_empty() && cur.len() + 1 < slots;
        for (i, (d, _)) in u.basis.iter().enumerate() {
            if *d > budget || (interior && *d == 0) {
                continue;
            }
            cur.push(i);
            go(u, slots, budget - d, cur, out);
            cur.pop();
        }
    }
    go(u, slots, u.n, &mut cur, &mut out);
    out
}

pub fn bar_construction(a: &FreeCdga, n: i64) -> Result<BarConstruction> {
    let u = TruncatedAlgebra::new(a, n)?;
    let one = u.index[&Monomial::one()];
    let max_p = if a.generators().is_empty() { 0 } else { n.max(0) as usize };
    let mut tuples: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for p in 0..=max_p {
        let t = bar_tuples(&u, p);
        if t.is_empty() && p > 0 {
            break;
        }
        tuples.insert(p, t);
    }
    let top_p = *tuples.keys().next_back().expect("p = 0 present");
    let index: BTreeMap<usize, BTreeMap<Vec<usize>, usize>> = tuples
        .iter()
        .map(|(&p, ts)| (p, ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()))
        .collect();
    let aug_index: BTreeMap<usize, usize> = u.basis.iter().enumerate().map(|(i, _)| (i, i)).collect();

    let mut space = GradedSpace::new();
    space.set_degree(1, (0..u.basis.len()).map(|i| u.label(i)).collect())?;
    for (&p, ts) in &tuples {
        let labels = ts
            .iter()
            .map(|t| {
                let inner: Vec<String> = t[1..t.len() - 1].iter().map(|&i| u.label(i)).collect();
                format!("{}[{}]{}", u.label(t[0]), inner.join("|"), u.label(t[t.len() - 1]))
            })
            .collect();
        space.set_degree(-(p as i64), labels)?;
    }

    let mut diff = BTreeMap::new();
    // augmentation: a_0[]m -> a_0 m
    let mut eps = Matrix::zeros(u.basis.len(), tuples[&0].len());
    for (col, t) in tuples[&0].iter().enumerate() {
        if let Some((c, r)) = u.mul(t[0], t[1]) {
            eps[(aug_index[&r], col)] += c;
        }
    }
    diff.insert(0, eps);
    for p in 1..=top_p {
        let mut m = Matrix::zeros(tuples[&(p - 1)].len(), tuples[&p].len());
        for (col, t) in tuples[&p].iter().enumerate() {
            for i in 0..=p {
                if let Some((c, prod)) = u.mul(t[i], t[i + 1]) {
                    // merging interior slots can produce the unit only if both are 1, which never happens
                    if 0 < i && i < p && prod == one {
                        continue;
                    }
                    let mut merged = t[..i].to_vec();
                    merged.push(prod);
                    merged.extend_from_slice(&t[i + 2..]);
                    let row = index[&(p - 1)][&merged];
                    m[(row, col)] += c * sign(i % 2 == 1);
                }
            }
        }
        diff.insert(-(p as i64), m);
    }
    let complex = Complex::new(space, diff)?;

    let mut contraction = BTreeMap::new();
    // s : U (degree 1) -> B_0, m -> 1[]m
    let mut s1 = Matrix::zeros(tuples[&0].len(), u.basis.len());
    for i in 0..u.basis.len() {
        s1[(index[&0][&vec![one, i]], i)] = Rational::one();
    }
    contraction.insert(1, s1);
    for p in 0..top_p {
        let mut s = Matrix::zeros(tuples[&(p + 1)].len(), tuples[&p].len());
        for (col, t) in tuples[&p].iter().enumerate() {
            if t[0] == one {
                continue;
            }
            let mut shifted = vec![one];
            shifted.extend_from_slice(t);
            if let Some(&row) = index[&(p + 1)].get(&shifted) {
                s[(row, col)] = Rational::one();
            }
        }
        contraction.insert(-(p as i64), s);
    }
    Ok(BarConstruction { complex, contraction })
}

/// The complex `Hom_U(B(U, U), ℚ) = Hom(Ū^{⊗p}, ℚ)` computing `Ext_U(ℚ, ℚ)`,
/// graded by internal degree plus bar degree. Honest in total degrees `<= N`.
pub fn ext_complex(a: &FreeCdga, n: i64) -> Result<Complex> {
    let u = TruncatedAlgebra::new(a, n)?;
    // tuples of Ū elements with internal degree sum ≤ n, grouped by total degree
    let reduced: Vec<usize> = (0..u.basis.len()).filter(|&i| u.basis[i].0 > 0).collect();
    let mut by_total: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    let mut frontier: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 0)];
    while let Some((t, internal)) = frontier.pop() {
        by_total.entry(internal + t.len() as i64).or_default().push(t.clone());
        for &i in &reduced {
            let d = u.basis[i].0;
            if internal + d <= n {
                let mut t2 = t.clone();
                t2.push(i);
                frontier.push((t2, internal + d));
            }
        }
    }
    let top = n + 1;
    let mut space = GradedSpace::new();
    let mut index: BTreeMap<i64, BTreeMap<Vec<usize>, usize>> = BTreeMap::new();
    for k in 0..=top {
        let mut ts = by_total.remove(&k).unwrap_or_default();
        ts.sort();
        let labels = ts
            .iter()
            .map(|t| {
                let inner: Vec<String> = t.iter().map(|&i| u.label(i)).collect();
                format!("[{}]*", inner.join("|"))
            })
            .collect();
        space.set_degree(k, labels)?;
        index.insert(k, ts.into_iter().enumerate().map(|(i, t)| (t, i)).collect());
    }
    let mut diff = BTreeMap::new();
    for k in 0..top {
        // transpose of the inner bar differential from total degree k+1 to k
        let mut m = Matrix::zeros(index[&(k + 1)].len(), index[&k].len());
        for (t, &row) in &index[&(k + 1)] {
            for i in 0..t.len().saturating_sub(1) {
                if let Some((c, prod)) = u.mul(t[i], t[i + 1]) {
                    let mut merged = t[..i].to_vec();
                    merged.push(prod);
                    merged.extend_from_slice(&t[i + 2..]);
                    if let Some(&col) = index[&k].get(&merged) {
                        m[(row, col)] += c * sign(i % 2 == 0);
                    }
                }
            }
        }
        diff.insert(k, m);
    }
    Complex::new(space, diff)
}

/// Dimension of the indecomposables `A⁺ / (A⁺·A⁺)` in degree `k`.
pub fn indecomposables_dim(a: &FreeCdga, k: i64) -> usize {
    let mut products: Vec<Vector> = Vec::new();
    for i in 1..k {
        for x in a.basis(i) {
            for y in a.basis(k - i) {
                let p = Polynomial::monomial(x.clone(), Rational::one()).mul(&Polynomial::monomial(y, Rational::one()), a.generators());
                products.push(a.coordinates(&p, k));
            }
        }
    }
    a.dim(k) - Matrix::from_columns(&products, a.dim(k)).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(gens: &[(&str, i64)]) -> GradedSpace {
        let mut by: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (n, d) in gens {
            by.entry(*d).or_default().push((*n).into());
        }
        let mut s = GradedSpace::new();
        for (d, l) in by {
            s.set_degree(d, l).unwrap();
        }
        s
    }

    #[test]
    fn tensor_dims() {
        assert_eq!(tensor_algebra(&space(&[("a", 1)]), 4).unwrap()[1..], [1, 1, 1, 1]);
        assert_eq!(tensor_algebra(&space(&[("a", 1), ("b", 1)]), 3).unwrap()[1..], [2, 4, 8]);
        assert_eq!(tensor_algebra(&space(&[("a", 1), ("b", 2)]), 4).unwrap()[1..], [1, 2, 3, 5]);
    }

    #[test]
    fn gc_dims() {
        let e = free_gc_algebra(&space(&[("e", 3)]), 9).unwrap();
        assert_eq!((0..=9).map(|k| e.dim(k)).collect::<Vec<_>>(), vec![1, 0, 0, 1, 0, 0, 0, 0, 0, 0]);
        let x = free_gc_algebra(&space(&[("x", 2)]), 8).unwrap();
        assert_eq!((0..=8).map(|k| x.dim(k)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let xe = free_gc_algebra(&space(&[("x", 2), ("e", 3)]), 8).unwrap();
        assert_eq!((0..=8).map(|k| xe.dim(k)).collect::<Vec<_>>(), vec![1, 0, 1, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn free_lie_dims() {
        let even = free_glie(&space(&[("x", 2)]), 6).unwrap();
        assert_eq!(even.dims().values().copied().collect::<Vec<_>>(), vec![0, 1, 0, 0, 0, 0]);
        let odd = free_glie(&space(&[("e", 1)]), 3).unwrap();
        assert_eq!(odd.dims().values().copied().collect::<Vec<_>>(), vec![1, 1, 0]);
        let two = free_glie(&space(&[("a", 1), ("b", 1)]), 2).unwrap();
        assert_eq!(two.dims()[&2], 3);
        assert!(two.check_jacobi());
        assert!(two.bracket_table().is_ok());
    }

    #[test]
    fn pbw_on_free() {
        for gens in [vec![("a", 1)], vec![("a", 1), ("b", 2)], vec![("a", 2), ("b", 3), ("c", 1)]] {
            let m = space(&gens);
            let l = free_glie(&m, 6).unwrap();
            assert_eq!(enveloping(&l.dims(), 6).unwrap(), tensor_algebra(&m, 6).unwrap());
        }
        let mut bad = BTreeMap::new();
        bad.insert(0, 3);
        assert!(enveloping(&bad, 4).is_err());
    }

    #[test]
    fn bar_of_polynomial_algebra() {
        let x = free_gc_algebra(&space(&[("x", 2)]), 4).unwrap();
        let bar = bar_construction(&x, 4).unwrap();
        assert!(bar.complex.check().is_ok());
        assert!(bar.verify_contraction());
        assert!(bar.complex.full_homology().is_acyclic());
        let trivial = free_gc_algebra(&GradedSpace::new(), 4).unwrap();
        let tb = bar_construction(&trivial, 4).unwrap();
        assert_eq!(tb.complex.dim(0), 1);
        assert!(tb.verify_contraction());
    }

    #[test]
    fn ext_of_exterior_and_polynomial() {
        let e = free_gc_algebra(&space(&[("e", 1)]), 6).unwrap();
        let c = ext_complex(&e, 6).unwrap();
        let b: Vec<usize> = (0..=6).map(|k| c.betti(k)).collect();
        assert_eq!(b, vec![1, 0, 1, 0, 1, 0, 1]);
        let x = free_gc_algebra(&space(&[("x", 2)]), 8).unwrap();
        let c = ext_complex(&x, 8).unwrap();
        let b: Vec<usize> = (0..=8).map(|k| c.betti(k)).collect();
        assert_eq!(b, vec![1, 0, 0, 1, 0, 0, 0, 0, 0]);
    }
}
