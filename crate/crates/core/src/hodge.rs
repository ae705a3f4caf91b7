//! Inner products, adjoint differentials, Laplacians and harmonic spaces,
//! plus the number-operator identity on a free algebra `𝒜_c(L̄)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cdga::FreeCdga;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graded::{koszul_parity, koszul_sign};
use crate::lie::GLieAlgebra;
use crate::matrix::{sign, Matrix, Rational, Vector};
use crate::poly::{Generator, GeneratorSet, Monomial, Polynomial};

/// Symmetric positive-definite Gram matrices per degree; identity where absent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InnerProduct {
    grams: BTreeMap<i64, Matrix>,
}

impl InnerProduct {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(grams: BTreeMap<i64, Matrix>) -> Result<Self> {
        for (&k, g) in &grams {
            if !g.is_positive_definite() {
                return Err(Error::NotPositiveDefinite(k));
            }
        }
        Ok(InnerProduct { grams })
    }

    pub fn gram(&self, k: i64, dim: usize) -> Matrix {
        self.grams.get(&k).cloned().unwrap_or_else(|| Matrix::identity(dim))
    }

    /// Checks shapes against a complex.
    pub fn validate_for(&self, c: &Complex) -> Result<()> {
        for (&k, g) in &self.grams {
            if g.rows() != c.dim(k) {
                return Err(Error::Shape(format!("Gram matrix in degree {k} is {}x{}, space has dimension {}", g.rows(), g.cols(), c.dim(k))));
            }
        }
        Ok(())
    }

    pub fn pair(&self, k: i64, x: &[Rational], y: &[Rational]) -> Rational {
        let g = self.gram(k, x.len());
        let gy = g.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }
}

/// `d†_k : C_{k+1} -> C_k`, `d†_k = G_k⁻¹ d_kᵀ G_{k+1}`, keyed by `k`.
pub fn adjoint(c: &Complex, ip: &InnerProduct) -> Result<BTreeMap<i64, Matrix>> {
    ip.validate_for(c)?;
    let mut out = BTreeMap::new();
    for k in c.degrees() {
        let gk = ip.gram(k, c.dim(k));
        let gk1 = ip.gram(k + 1, c.dim(k + 1));
        let inv = gk.inverse().ok_or(Error::NotPositiveDefinite(k))?;
        out.insert(k, &(&inv * &c.d(k).transpose()) * &gk1);
    }
    Ok(out)
}

fn dagger(adj: &BTreeMap<i64, Matrix>, c: &Complex, k: i64) -> Matrix {
    adj.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(c.dim(k), c.dim(k + 1)))
}

/// `H_k = d_{k-1} d†_{k-1} + d†_k d_k`.
pub fn laplacian(c: &Complex, ip: &InnerProduct) -> Result<BTreeMap<i64, Matrix>> {
    let adj = adjoint(c, ip)?;
    Ok(c.degrees()
        .map(|k| (k, &(&c.d(k - 1) * &dagger(&adj, c, k - 1)) + &(&dagger(&adj, c, k) * &c.d(k))))
        .collect())
}

pub fn harmonic_space(c: &Complex, ip: &InnerProduct, k: i64) -> Result<Vec<Vector>> {
    let h = laplacian(c, ip)?;
    Ok(h.get(&k).map(Matrix::kernel).unwrap_or_default())
}

/// `C_k = ker H_k ⊕ im d_{k-1} ⊕ im d†_k`.
#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub degree: i64,
    pub harmonic: Vec<Vector>,
    pub exact: Vec<Vector>,
    pub coexact: Vec<Vector>,
}

impl HodgeDecomposition {
    /// Dimensions add up and the three pieces are pairwise orthogonal.
    pub fn verify(&self, ip: &InnerProduct, dim: usize) -> bool {
        if self.harmonic.len() + self.exact.len() + self.coexact.len() != dim {
            return false;
        }
        let parts = [&self.harmonic, &self.exact, &self.coexact];
        for a in 0..3 {
            for b in a + 1..3 {
                for x in parts[a] {
                    for y in parts[b] {
                        if !ip.pair(self.degree, x, y).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        let mut all: Vec<Vector> = Vec::new();
        for p in parts {
            all.extend(p.iter().cloned());
        }
        Matrix::from_columns(&all, dim).rank() == dim
    }
}

pub fn hodge_decomposition(c: &Complex, ip: &InnerProduct, k: i64) -> Result<HodgeDecomposition> {
    let adj = adjoint(c, ip)?;
    let harmonic = harmonic_space(c, ip, k)?;
    Ok(HodgeDecomposition {
        degree: k,
        harmonic,
        exact: c.d(k - 1).column_space(),
        coexact: dagger(&adj, c, k).column_space(),
    })
}

/// `ker H_k = ker d_k ∩ ker d†_{k-1}`, checked both ways by rank.
pub fn harmonic_is_cocycle_and_cocycle_dual(c: &Complex, ip: &InnerProduct, k: i64) -> Result<bool> {
    let adj = adjoint(c, ip)?;
    let stacked = c.d(k).vstack(&dagger(&adj, c, k - 1));
    let joint = stacked.kernel();
    let harmonic = harmonic_space(c, ip, k)?;
    let n = c.dim(k);
    let r_joint = Matrix::from_columns(&joint, n).rank();
    let r_h = Matrix::from_columns(&harmonic, n).rank();
    let mut both = joint.clone();
    both.extend(harmonic);
    Ok(r_joint == r_h && Matrix::from_columns(&both, n).rank() == r_h)
}

/// The `G`-orthogonal projection onto the harmonic space.
pub fn harmonic_projection(c: &Complex, ip: &InnerProduct, k: i64, v: &[Rational]) -> Result<Vector> {
    let h = harmonic_space(c, ip, k)?;
    let n = c.dim(k);
    if h.is_empty() {
        return Ok(alloc::vec![Rational::zero(); n]);
    }
    let basis = Matrix::from_columns(&h, n);
    let g = ip.gram(k, n);
    let bt_g = &basis.transpose() * &g;
    let small = &bt_g * &basis;
    let coeffs = small.solve(&bt_g.mul_vec(v)).ok_or(Error::NotPositiveDefinite(k))?;
    Ok(basis.mul_vec(&coeffs))
}

/// `[H, d] = 0` and `[H, d†] = 0` in every degree.
pub fn laplacian_commutes(c: &Complex, ip: &InnerProduct) -> Result<bool> {
    let h = laplacian(c, ip)?;
    let adj = adjoint(c, ip)?;
    let hk = |k: i64| h.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(c.dim(k), c.dim(k)));
    Ok(c.degrees().all(|k| {
        &hk(k + 1) * &c.d(k) == &c.d(k) * &hk(k) && &dagger(&adj, c, k) * &hk(k + 1) == &hk(k) * &dagger(&adj, c, k)
    }))
}

/// `im(d d†) ∩ im(d† d) = 0` in degree `k`, by rank.
pub fn images_intersect_trivially(c: &Complex, ip: &InnerProduct, k: i64) -> Result<bool> {
    let adj = adjoint(c, ip)?;
    let a = &c.d(k - 1) * &dagger(&adj, c, k - 1);
    let b = &dagger(&adj, c, k) * &c.d(k);
    Ok(a.hstack(&b).rank() == a.rank() + b.rank())
}

/// Outcome of the number-operator check on `𝓕 = 𝒜_c(L̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberOperatorReport {
    pub truncation: i64,
    /// `a_q c_p - (-1)^{|p||q|} c_p a_q = ⟨v_q, v_p⟩ I` for the Fock creation
    /// and annihilation operators.
    pub poisson_relations: bool,
    /// `Σ (G⁻¹)_{pq} c_p a_q` is the word-length operator.
    pub number_operator: bool,
    /// `δ∂† + ∂†δ = 0` and `δ†∂ + ∂δ† = 0` on `𝓕`.
    pub cross_terms_cancel: bool,
    /// `(dd† + d†d + N)` restricted to generators equals `H' + N`.
    pub identity_holds: bool,
    /// Nonzero residuals `H_L - (H' + N)` per generator degree.
    pub residual: BTreeMap<i64, Matrix>,
    pub degrees_checked: Vec<i64>,
}

struct Fock {
    algebra: FreeCdga,
    gram_v: Matrix,
    grams: BTreeMap<i64, Matrix>,
}

impl Fock {
    fn monomial_pairing(&self, a: &Monomial, b: &Monomial) -> Rational {
        let (xa, xb) = (a.expanded(), b.expanded());
        if xa.len() != xb.len() {
            return Rational::zero();
        }
        let gens = self.algebra.generators();
        let degrees: Vec<i64> = xb.iter().map(|&i| gens.degree(i)).collect();
        let mut total = Rational::zero();
        for perm in permutations(xb.len()) {
            let mut term = Rational::one();
            for (k, &p) in perm.iter().enumerate() {
                term *= &self.gram_v[(xa[k], xb[p])];
                if term.is_zero() {
                    break;
                }
            }
            if !term.is_zero() {
                let s = koszul_sign(&perm, &degrees).expect("valid permutation");
                total += term * Rational::from_integer(s.into());
            }
        }
        total
    }

    fn gram(&mut self, k: i64) -> Matrix {
        if let Some(g) = self.grams.get(&k) {
            return g.clone();
        }
        let basis = self.algebra.basis(k);
        let g = Matrix::from_fn(basis.len(), basis.len(), |i, j| self.monomial_pairing(&basis[i], &basis[j]));
        self.grams.insert(k, g.clone());
        g
    }

    /// Adjoint of `m : F^k -> F^{k+s}`.
    fn adjoint(&mut self, m: &Matrix, k: i64, s: i64) -> Matrix {
        let gk = self.gram(k);
        let gks = self.gram(k + s);
        let inv = gk.inverse().expect("Fock Gram is positive-definite");
        &(&inv * &m.transpose()) * &gks
    }

    fn creation(&self, p: usize, k: i64) -> Matrix {
        let a = &self.algebra;
        let dp = a.generators().degree(p);
        let src = a.basis(k);
        let tgt = a.basis(k + dp);
        let idx: BTreeMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Matrix::zeros(tgt.len(), src.len());
        let v = Polynomial::generator(p);
        for (j, m) in src.iter().enumerate() {
            let prod = v.mul(&Polynomial::monomial(m.clone(), Rational::one()), a.generators());
            for (mm, c) in prod.terms() {
                out[(idx[mm], j)] = c.clone();
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Builds `𝓕 = 𝒜_c(L̄)` (generators of `L` shifted up by one degree) with
/// `d` generated by `∂ + δ`, the Fock inner product induced by `gram`, and
/// checks the Poisson relations, the number operator, the cross-term
/// cancellations and `H_L = H' + N` on generators, degrees `< truncation`.
pub fn number_operator_check(l: &GLieAlgebra, gram: &Matrix, truncation: i64) -> Result<NumberOperatorReport> {
    let n = l.dim();
    if gram.shape() != (n, n) || !gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(0));
    }
    for i in 0..n {
        for j in 0..n {
            if l.degrees()[i] != l.degrees()[j] && !gram[(i, j)].is_zero() {
                return Err(Error::Shape(format!("Gram pairs {} and {} of different degrees", l.names()[i], l.names()[j])));
            }
        }
    }
    l.check_coderivation()?;
    let gens = GeneratorSet::new(
        l.names().iter().zip(l.degrees()).map(|(s, &d)| Generator::new(s.clone(), d + 1)).collect(),
    )?;
    let boundary = l.boundary();
    let mut lin = Vec::with_capacity(n);
    let mut quad = Vec::with_capacity(n);
    for k in 0..n {
        let mut p = Polynomial::zero();
        for m in 0..n {
            let c = &boundary[(m, k)];
            if !c.is_zero() {
                p.add_term(Monomial::generator(m), c.clone());
            }
        }
        lin.push(p);
        let cb = l.cobracket(k);
        let mut q = Polynomial::zero();
        for (i, j, c) in cb.triplets() {
            q.add_assign(&Polynomial::from_product(&[i, j], &c, &gens)?);
        }
        quad.push(q);
    }
    let diff: Vec<Polynomial> = lin.iter().zip(&quad).map(|(a, b)| a.add(b)).collect();
    let algebra = FreeCdga::new(gens.clone(), diff, truncation)?;
    let partial = crate::cdga::Derivation { degree: 1, images: lin };
    let delta = crate::cdga::Derivation { degree: 1, images: quad };
    let mut fock = Fock { algebra: algebra.clone(), gram_v: gram.clone(), grams: BTreeMap::new() };

    let top = truncation;
    let mut poisson = true;
    let mut number = true;
    let mut cross = true;
    for k in 0..=top {
        for p in 0..n {
            let dp = gens.degree(p);
            for q in 0..n {
                let dq = gens.degree(q);
                if k + dp > top || k + dp - dq < 0 {
                    continue;
                }
                // a_q c_p - (-1)^{|p||q|} c_p a_q on F^k
                let cp_k = fock.creation(p, k);
                let cq_1 = fock.creation(q, k + dp - dq);
                let aq_1 = fock.adjoint(&cq_1, k + dp - dq, dq);
                let lhs1 = &aq_1 * &cp_k;
                let cq_0 = fock.creation(q, k - dq);
                let aq_0 = fock.adjoint(&cq_0, k - dq, dq);
                let cp_0 = fock.creation(p, k - dq);
                let lhs2 = (&cp_0 * &aq_0).scale(&sign(koszul_parity(dp, dq)));
                let lhs = &lhs1 - &lhs2;
                let want = if dp == dq { Matrix::scalar(algebra.dim(k), &gram[(q, p)]) } else { Matrix::zeros(lhs.rows(), lhs.cols()) };
                if lhs != want {
                    poisson = false;
                }
            }
        }
        // N_P = Σ (G⁻¹)_{pq} c_p a_q
        let ginv = gram.inverse().expect("positive-definite");
        let mut np = Matrix::zeros(algebra.dim(k), algebra.dim(k));
        for p in 0..n {
            for q in 0..n {
                let c = &ginv[(p, q)];
                if c.is_zero() {
                    continue;
                }
                let dq = gens.degree(q);
                let cq = fock.creation(q, k - dq);
                let aq = fock.adjoint(&cq, k - dq, dq);
                let cp = fock.creation(p, k - dq);
                np = &np + &(&cp * &aq).scale(c);
            }
        }
        let length = Matrix::from_fn(np.rows(), np.cols(), |i, j| {
            if i == j {
                Rational::from_integer((algebra.basis(k)[i].length() as i64).into())
            } else {
                Rational::zero()
            }
        });
        if np != length {
            number = false;
        }
        if k < top && k >= 1 {
            // δ∂† + ∂†δ on F^k (degree 0) and δ†∂ + ∂δ† likewise
            let d_p_prev = partial.matrix(&algebra, k - 1);
            let pd_prev = fock.adjoint(&d_p_prev, k - 1, 1);
            let delta_prev = delta.matrix(&algebra, k - 1);
            let d_p = partial.matrix(&algebra, k);
            let pd = fock.adjoint(&d_p, k, 1);
            let delta_k = delta.matrix(&algebra, k);
            let first = &(&delta_prev * &pd_prev) + &(&pd * &delta_k);
            let dd_prev = fock.adjoint(&delta_prev, k - 1, 1);
            let dd = fock.adjoint(&delta_k, k, 1);
            let second = &(&dd * &d_p) + &(&d_p_prev * &dd_prev);
            if !first.is_zero() || !second.is_zero() {
                cross = false;
            }
        }
    }

    // H_L on generators: columns are the length-one monomials of each degree.
    let ginv = gram.inverse().expect("positive-definite");
    let h_prime = {
        let bd = l.boundary();
        let bdag = &(&ginv * &bd.transpose()) * gram;
        &(&bd * &bdag) + &(&bdag * &bd)
    };
    let mut residual = BTreeMap::new();
    let mut degrees_checked = Vec::new();
    let mut identity = true;
    let mut degs: Vec<i64> = gens.iter().map(|g| g.degree).collect();
    degs.sort_unstable();
    degs.dedup();
    for k in degs {
        if k + 1 > top {
            continue;
        }
        degrees_checked.push(k);
        let basis = algebra.basis(k);
        let idx: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dk = algebra.d_matrix(k);
        let dprev = algebra.d_matrix(k - 1);
        let dag_k = fock.adjoint(&dk, k, 1);
        let dag_prev = fock.adjoint(&dprev, k - 1, 1);
        let lap = &(&dprev * &dag_prev) + &(&dag_k * &dk);
        let gen_ids: Vec<usize> = (0..n).filter(|&i| gens.degree(i) == k).collect();
        let mut got = Matrix::zeros(basis.len(), gen_ids.len());
        let mut want = Matrix::zeros(basis.len(), gen_ids.len());
        for (col, &g) in gen_ids.iter().enumerate() {
            let j = idx[&Monomial::generator(g)];
            for r in 0..basis.len() {
                got[(r, col)] = lap[(r, j)].clone();
            }
            // + N: generators have length one
            got[(j, col)] += Rational::one();
            for &g2 in &gen_ids {
                let r = idx[&Monomial::generator(g2)];
                want[(r, col)] = h_prime[(g2, g)].clone();
            }
            want[(j, col)] += Rational::one();
        }
        let diff = &got - &want;
        if !diff.is_zero() {
            identity = false;
            residual.insert(k, diff);
        }
    }
    Ok(NumberOperatorReport {
        truncation,
        poisson_relations: poisson,
        number_operator: number,
        cross_terms_cancel: cross,
        identity_holds: identity && poisson && number,
        residual,
        degrees_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;
    use alloc::vec;

    fn line() -> Complex {
        let mut s = crate::graded::GradedSpace::new();
        s.set_degree(0, vec!["a".into()]).unwrap();
        s.set_degree(1, vec!["b".into()]).unwrap();
        let mut d = BTreeMap::new();
        d.insert(0, Matrix::identity(1));
        Complex::new(s, d).unwrap()
    }

    #[test]
    fn identity_gram_adjoint_is_transpose() {
        let c = line();
        let adj = adjoint(&c, &InnerProduct::identity()).unwrap();
        assert_eq!(adj[&0], c.d(0).transpose());
        let lap = laplacian(&c, &InnerProduct::identity()).unwrap();
        assert_eq!(lap[&0], Matrix::identity(1));
        assert_eq!(lap[&1], Matrix::identity(1));
    }

    #[test]
    fn custom_gram() {
        let c = line();
        let mut g = BTreeMap::new();
        g.insert(0, Matrix::from_i64(1, 1, &[2]));
        g.insert(1, Matrix::from_i64(1, 1, &[3]));
        let ip = InnerProduct::new(g).unwrap();
        let adj = adjoint(&c, &ip).unwrap();
        assert_eq!(adj[&0], Matrix::from_fn(1, 1, |_, _| crate::matrix::ratio(3, 2)));
        assert!(InnerProduct::new(BTreeMap::from([(0, Matrix::from_i64(1, 1, &[-1]))])).is_err());
    }

    #[test]
    fn fock_single_generator() {
        // L one generator in degree 0: 𝒜_c(L̄) = ∧(v), v in degree 1.
        let l = GLieAlgebra::abelian(vec!["x".into()], vec![0]).unwrap();
        let r = number_operator_check(&l, &Matrix::identity(1), 4).unwrap();
        assert!(r.poisson_relations && r.number_operator && r.cross_terms_cancel && r.identity_holds);
    }

    #[test]
    fn fock_boundary_zero_cobracket() {
        let l = GLieAlgebra::abelian(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        let l = l.with_boundary(Matrix::from_fn(2, 2, |i, j| if (i, j) == (1, 0) { crate::matrix::ratio(3, 2) } else { rat(0) })).unwrap();
        let gram = Matrix::from_i64(2, 2, &[2, 0, 0, 5]);
        let r = number_operator_check(&l, &gram, 6).unwrap();
        assert!(r.identity_holds, "{r:?}");
        assert!(r.cross_terms_cancel);
    }
}
