//! Random complexes and chain maps with small integer entries, for
//! property tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::Rng;

use crate::complex::{ChainMap, Complex};
use crate::graded::GradedSpace;
use crate::matrix::{rat, Matrix, Rational, Vector};

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub lowest: i64,
    pub degrees: usize,
    pub max_dim: usize,
    pub max_entry: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { lowest: -2, degrees: 6, max_dim: 5, max_entry: 3 }
    }
}

fn small<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

fn combination<R: Rng + ?Sized>(rng: &mut R, basis: &[Vector], len: usize, bound: i64) -> Vector {
    let mut out = alloc::vec![Rational::zero(); len];
    for b in basis {
        let c = small(rng, bound);
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += &c * x;
        }
    }
    out
}

/// Each row of `d_k` is drawn from the left kernel of `d_{k-1}`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> Complex {
    let mut dims = BTreeMap::new();
    for i in 0..shape.degrees {
        dims.insert(shape.lowest + i as i64, rng.gen_range(0..=shape.max_dim));
    }
    let space = GradedSpace::from_dims("c", &dims);
    let mut diff: BTreeMap<i64, Matrix> = BTreeMap::new();
    let top = shape.lowest + shape.degrees as i64 - 1;
    for k in shape.lowest..top {
        let (src, tgt) = (dims[&k], dims[&(k + 1)]);
        let allowed = match diff.get(&(k - 1)) {
            Some(prev) => prev.transpose().kernel(),
            None => (0..src).map(|i| unit(src, i)).collect(),
        };
        // Sometimes restrict to a sub-span so that ranks vary.
        let keep = if allowed.is_empty() { 0 } else { rng.gen_range(0..=allowed.len()) };
        let rows: Vec<Vector> = (0..tgt).map(|_| combination(rng, &allowed[..keep], src, shape.max_entry)).collect();
        let d = Matrix::from_fn(tgt, src, |i, j| rows[i][j].clone());
        diff.insert(k, d);
    }
    Complex::new(space, diff).expect("d² = 0 by construction")
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = alloc::vec![Rational::zero(); n];
    v[i] = rat(1);
    v
}

/// A random degree-0 chain map `source -> target`, drawn from the solution
/// space of `d φ = φ d`.
pub fn random_chain_map<R: Rng + ?Sized>(rng: &mut R, source: &Complex, target: &Complex, bound: i64) -> ChainMap {
    let degrees: Vec<i64> = source.degrees().filter(|&k| source.dim(k) > 0 && target.dim(k) > 0).collect();
    let mut offsets = BTreeMap::new();
    let mut n = 0;
    for &k in &degrees {
        offsets.insert(k, n);
        n += source.dim(k) * target.dim(k);
    }
    let var = |k: i64, i: usize, j: usize| offsets.get(&k).map(|o| o + i * source.dim(k) + j);
    let mut constraints: Vec<Vector> = Vec::new();
    let ends: Vec<i64> = [source.range(), target.range()].into_iter().flatten().flat_map(|r| [*r.start(), *r.end()]).collect();
    let lo = ends.iter().copied().min().unwrap_or(0);
    let hi = ends.iter().copied().max().unwrap_or(0);
    for k in lo - 1..=hi {
        let (dc, dd) = (source.d(k), target.d(k));
        for r in 0..target.dim(k + 1) {
            for c in 0..source.dim(k) {
                let mut row = alloc::vec![Rational::zero(); n];
                // (d φ_k)[r, c] - (φ_{k+1} d)[r, c]
                for m in 0..target.dim(k) {
                    if let Some(v) = var(k, m, c) {
                        row[v] += &dd[(r, m)];
                    }
                }
                for m in 0..source.dim(k + 1) {
                    if let Some(v) = var(k + 1, r, m) {
                        row[v] -= &dc[(m, c)];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    constraints.push(row);
                }
            }
        }
    }
    let solutions = if constraints.is_empty() {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        Matrix::from_rows(constraints, n).kernel()
    };
    let x = combination(rng, &solutions, n, bound);
    let mut components = BTreeMap::new();
    for &k in &degrees {
        components.insert(k, Matrix::from_fn(target.dim(k), source.dim(k), |i, j| x[var(k, i, j).unwrap()].clone()));
    }
    ChainMap::new(source.clone(), target.clone(), 0, components).expect("solves d φ = φ d")
}
