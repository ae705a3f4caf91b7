//! Chevalley–Eilenberg complexes, the Weil algebra, and Cartan calculus.
//!
//! Conventions, with `c^k_{ij}` the structure constants:
//!
//! * CE: generators `e^k` in degree 1, `d e^k = -½ Σ c^k_{ij} e^i e^j`
//! * Weil: `ω^k` (degree 1), `Ω^k` (degree 2),
//!   `dω^k = Ω^k - ½ Σ c^k_{ij} ω^i ω^j`, `dΩ^k = -Σ c^k_{ij} ω^i Ω^j`
//! * `ι_i` contracts the degree-1 generators (`ι_i ω^k = δ_i^k`, `ι_i Ω^k = 0`),
//!   and `θ_i = [d, ι_i]`, which acts on generators by the coadjoint action.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::cdga::{CdgaMorphism, Derivation, FreeCdga};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::lie::LieData;
use crate::matrix::{ratio, Matrix, Rational, Vector};
use crate::poly::{Generator, GeneratorSet, Polynomial};

fn half() -> Rational {
    ratio(1, 2)
}

/// `-½ Σ_{i,j} c^k_{ij} x_i x_j` over the given generator indices.
fn quadratic(lie: &LieData, k: usize, left: &[usize], right: &[usize], scale: &Rational, gens: &GeneratorSet) -> Polynomial {
    let mut out = Polynomial::zero();
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            let c = lie.c(i, j, k);
            if !c.is_zero() {
                out.add_assign(&Polynomial::from_product(&[left[i], right[j]], &(c * scale), gens).expect("valid"));
            }
        }
    }
    out
}

/// A free CDGA with a `𝔤`-action through contractions `ι_i` and Lie
/// derivatives `θ_i`.
#[derive(Clone, Debug)]
pub struct CartanOps {
    pub lie: LieData,
    pub algebra: FreeCdga,
    pub iota: Vec<Derivation>,
    pub theta: Vec<Derivation>,
}

impl CartanOps {
    /// Builds `θ_i = [d, ι_i]` from the contractions.
    pub fn from_contractions(lie: LieData, algebra: FreeCdga, iota: Vec<Derivation>) -> Result<Self> {
        if iota.len() != lie.dim() {
            return Err(Error::LengthMismatch { expected: lie.dim(), found: iota.len() });
        }
        if let Some(bad) = iota.iter().find(|i| i.degree != -1) {
            return Err(Error::Precondition(format!("contraction of degree {}", bad.degree)));
        }
        let d = algebra.d();
        let theta = iota.iter().map(|i| d.bracket(i, algebra.generators())).collect();
        Ok(CartanOps { lie, algebra, iota, theta })
    }

    fn gens(&self) -> &GeneratorSet {
        self.algebra.generators()
    }

    fn combination(&self, ops: &[Derivation], coeffs: &[Rational], degree: i64) -> Derivation {
        let mut out = Derivation::zero(degree, self.gens().len());
        for (op, c) in ops.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&op.scale(c));
            }
        }
        out
    }

    pub fn iota_of(&self, x: &[Rational]) -> Derivation {
        self.combination(&self.iota, x, -1)
    }

    pub fn theta_of(&self, x: &[Rational]) -> Derivation {
        self.combination(&self.theta, x, 0)
    }

    /// The five identities, checked on generators (which determines them,
    /// since every bracket of derivations is again a derivation):
    /// `[d, ι_X] = θ_X`, `[ι_X, ι_Y] = 0`, `[θ_X, ι_Y] = ι_{[X,Y]}`,
    /// `[θ_X, θ_Y] = θ_{[X,Y]}`, `[θ_X, d] = 0`.
    pub fn check_identities(&self) -> CartanReport {
        let g = self.gens();
        let d = self.algebra.d();
        let n = self.lie.dim();
        let mut report = CartanReport::default();
        for i in 0..n {
            if d.bracket(&self.iota[i], g) != self.theta[i] {
                report.failures.push(format!("[d, iota_{}] != theta_{}", self.lie.names()[i], self.lie.names()[i]));
            }
            if !self.theta[i].bracket(&d, g).is_zero() {
                report.failures.push(format!("[theta_{}, d] != 0", self.lie.names()[i]));
            }
            for j in 0..n {
                let (xi, xj) = (&self.lie.names()[i], &self.lie.names()[j]);
                if !self.iota[i].bracket(&self.iota[j], g).is_zero() {
                    report.failures.push(format!("[iota_{xi}, iota_{xj}] != 0"));
                }
                let br = self.lie.bracket(i, j);
                if self.theta[i].bracket(&self.iota[j], g) != self.iota_of(br) {
                    report.failures.push(format!("[theta_{xi}, iota_{xj}] != iota_[{xi},{xj}]"));
                }
                if self.theta[i].bracket(&self.theta[j], g) != self.theta_of(br) {
                    report.failures.push(format!("[theta_{xi}, theta_{xj}] != theta_[{xi},{xj}]"));
                }
            }
        }
        report.symbolic = report.failures.is_empty();
        report
    }

    /// The same identities as matrices, in every degree `k` for which all
    /// intermediate degrees stay within `0..=top`.
    pub fn check_identities_matrices(&self, top: i64) -> bool {
        let a = &self.algebra;
        let d = a.d();
        let n = self.lie.dim();
        for k in 0..=top {
            let dk = d.matrix(a, k);
            for i in 0..n {
                let ii = self.iota[i].matrix(a, k);
                let ti = self.theta[i].matrix(a, k);
                if k < top {
                    // d ι + ι d = θ
                    let lhs = &(&d.matrix(a, k - 1) * &ii) + &(&self.iota[i].matrix(a, k + 1) * &dk);
                    if lhs != ti {
                        return false;
                    }
                    // θ d = d θ
                    if &self.theta[i].matrix(a, k + 1) * &dk != &dk * &ti {
                        return false;
                    }
                }
                for j in 0..n {
                    let ij = self.iota[j].matrix(a, k);
                    let tj = self.theta[j].matrix(a, k);
                    let br = self.lie.bracket(i, j);
                    let (ii1, ij1) = (self.iota[i].matrix(a, k - 1), self.iota[j].matrix(a, k - 1));
                    if &(&ii1 * &ij) + &(&ij1 * &ii) != Matrix::zeros(a.dim(k - 2), a.dim(k)) {
                        return false;
                    }
                    let ti1 = self.theta[i].matrix(a, k - 1);
                    if &(&ti1 * &ij) - &(&ij * &ti) != self.iota_of(br).matrix(a, k) {
                        return false;
                    }
                    if &(&ti * &tj) - &(&tj * &ti) != self.theta_of(br).matrix(a, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CartanReport {
    pub symbolic: bool,
    pub failures: Vec<String>,
}

/// `Λ(𝔤*)` with the Chevalley–Eilenberg differential and its Cartan operations.
pub fn chevalley_eilenberg(lie: &LieData, truncation: i64) -> Result<CartanOps> {
    let n = lie.dim();
    let gens = GeneratorSet::new(lie.names().iter().map(|s| Generator::new(s.clone(), 1)).collect())?;
    let idx: Vec<usize> = (0..n).collect();
    let diff = (0..n).map(|k| quadratic(lie, k, &idx, &idx, &-half(), &gens)).collect();
    let algebra = FreeCdga::new(gens, diff, truncation)?;
    let iota = (0..n)
        .map(|i| {
            let mut images = alloc::vec![Polynomial::zero(); n];
            images[i] = Polynomial::one();
            Derivation { degree: -1, images }
        })
        .collect();
    CartanOps::from_contractions(lie.clone(), algebra, iota)
}

pub fn weil_name_connection(name: &str) -> String {
    format!("w_{name}")
}

pub fn weil_name_curvature(name: &str) -> String {
    format!("W_{name}")
}

/// The Weil algebra `Λ(ω^1..ω^n, Ω^1..Ω^n)` with its Cartan operations.
/// Generators `0..n` are the `ω`, `n..2n` the `Ω`.
pub fn weil_algebra(lie: &LieData, truncation: i64) -> Result<CartanOps> {
    let n = lie.dim();
    let mut list: Vec<Generator> = lie.names().iter().map(|s| Generator::new(weil_name_connection(s), 1)).collect();
    list.extend(lie.names().iter().map(|s| Generator::new(weil_name_curvature(s), 2)));
    let gens = GeneratorSet::new(list)?;
    let om: Vec<usize> = (0..n).collect();
    let cu: Vec<usize> = (n..2 * n).collect();
    let mut diff = Vec::with_capacity(2 * n);
    for k in 0..n {
        let mut p = Polynomial::generator(n + k);
        p.add_assign(&quadratic(lie, k, &om, &om, &-half(), &gens));
        diff.push(p);
    }
    for k in 0..n {
        diff.push(quadratic(lie, k, &om, &cu, &-Rational::one(), &gens));
    }
    let algebra = FreeCdga::new(gens, diff, truncation)?;
    let iota = (0..n)
        .map(|i| {
            let mut images = alloc::vec![Polynomial::zero(); 2 * n];
            images[i] = Polynomial::one();
            Derivation { degree: -1, images }
        })
        .collect();
    CartanOps::from_contractions(lie.clone(), algebra, iota)
}

/// Values `A(ω^k)` of a connection: degree-1 elements of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub values: Vec<Polynomial>,
}

impl Connection {
    /// Checks `ι_i A(ω^k) = δ_i^k`.
    pub fn check(&self, ops: &CartanOps) -> Result<()> {
        let n = ops.lie.dim();
        if self.values.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: self.values.len() });
        }
        for (k, v) in self.values.iter().enumerate() {
            for i in 0..n {
                let got = ops.iota[i].apply(v, ops.gens());
                let want = if i == k { Polynomial::one() } else { Polynomial::zero() };
                if got != want {
                    return Err(Error::Connection(ops.lie.names()[i].clone(), ops.lie.names()[k].clone()));
                }
            }
        }
        Ok(())
    }

    /// The canonical connection of the Weil algebra (`A(ω^k) = ω^k`).
    pub fn weil(lie: &LieData) -> Self {
        Connection { values: (0..lie.dim()).map(Polynomial::generator).collect() }
    }
}

/// The classifying morphism `W_𝔤 -> target` of a connection:
/// `ω^k ↦ A(ω^k)`, `Ω^k ↦ dA(ω^k) + ½ Σ c^k_{ij} A(ω^i) A(ω^j)`.
///
/// Checks commutation with `d`, `ι` and `θ` on generators.
pub fn classifying_map(target: &CartanOps, a: &Connection) -> Result<CdgaMorphism> {
    a.check(target)?;
    let lie = &target.lie;
    let n = lie.dim();
    let weil = weil_algebra(lie, target.algebra.truncation())?;
    let tg = target.gens();
    let mut images = a.values.clone();
    for k in 0..n {
        let mut curv = target.algebra.apply_d(&a.values[k]);
        for i in 0..n {
            for j in 0..n {
                let c = lie.c(i, j, k);
                if !c.is_zero() {
                    curv.add_assign(&a.values[i].mul(&a.values[j], tg).scale(&(c * &half())));
                }
            }
        }
        images.push(curv);
    }
    let f = CdgaMorphism::new(weil.algebra.clone(), target.algebra.clone(), images)?;
    check_equivariant(&f, &weil, target)?;
    Ok(f)
}

/// `f ∘ ι_i = ι_i ∘ f` and `f ∘ θ_i = θ_i ∘ f` on the generators of the source.
pub fn check_equivariant(f: &CdgaMorphism, source: &CartanOps, target: &CartanOps) -> Result<()> {
    let sg = source.gens();
    for i in 0..source.lie.dim() {
        for g in 0..sg.len() {
            let x = Polynomial::generator(g);
            for (ops_s, ops_t, what) in [(&source.iota, &target.iota, "iota"), (&source.theta, &target.theta, "theta")] {
                let lhs = f.apply(&ops_s[i].apply(&x, sg));
                let rhs = ops_t[i].apply(&f.apply(&x), target.gens());
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "morphism does not commute with {what}_{} on `{}`",
                        source.lie.names()[i],
                        sg.name(g)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The projection `W_𝔤 -> CE(𝔤)`, `ω ↦ e`, `Ω ↦ 0`.
pub fn weil_to_ce(lie: &LieData, truncation: i64) -> Result<(CartanOps, CartanOps, CdgaMorphism)> {
    let w = weil_algebra(lie, truncation)?;
    let ce = chevalley_eilenberg(lie, truncation)?;
    let n = lie.dim();
    let mut images: Vec<Polynomial> = (0..n).map(Polynomial::generator).collect();
    images.extend((0..n).map(|_| Polynomial::zero()));
    let f = CdgaMorphism::new(w.algebra.clone(), ce.algebra.clone(), images)?;
    check_equivariant(&f, &w, &ce)?;
    Ok((w, ce, f))
}

/// Joint kernel of all `ι_i` and `θ_i`, with the restricted differential,
/// on degrees `0..=top`. Also returns the inclusion basis per degree.
pub fn basic_subcomplex(ops: &CartanOps, top: i64) -> Result<(Complex, BTreeMap<i64, Matrix>)> {
    let a = &ops.algebra;
    let mut bases: BTreeMap<i64, Matrix> = BTreeMap::new();
    for k in 0..=top + 1 {
        let n = a.dim(k);
        let mut stacked = Matrix::zeros(0, n);
        for i in 0..ops.lie.dim() {
            stacked = stacked.vstack(&ops.iota[i].matrix(a, k)).vstack(&ops.theta[i].matrix(a, k));
        }
        bases.insert(k, Matrix::from_columns(&stacked.kernel(), n));
    }
    let mut space = GradedSpace::new();
    let mut diff = BTreeMap::new();
    for k in 0..=top {
        space.set_degree(k, (0..bases[&k].cols()).map(|i| format!("b{k}_{i}")).collect())?;
        if k < top + 1 {
            let image = &a.d_matrix(k) * &bases[&k];
            let restricted = bases[&(k + 1)]
                .solve_matrix(&image)
                .ok_or_else(|| Error::Consistency(format!("d leaves the basic subcomplex in degree {k}")))?;
            if k < top {
                diff.insert(k, restricted);
            }
        }
    }
    let c = Complex::new(space, diff)?;
    bases.remove(&(top + 1));
    Ok((c, bases))
}

/// Basic homology through `top`, computed with degree `top + 1` available
/// so that the last reported degree is honest.
pub fn basic_betti(ops: &CartanOps, top: i64) -> Result<Vec<usize>> {
    let (c, _) = basic_subcomplex(ops, top + 1)?;
    Ok(c.homology(0..=top).betti_numbers())
}

/// `k̄ : ω ↦ 0, Ω^k ↦ ω^k` on the Weil algebra, together with the
/// derivation `N = [d, k̄]`, which is `ω ↦ ω` and `dω ↦ dω`: the word-length
/// operator in the generators `(ω, dω)`.
#[derive(Clone, Debug)]
pub struct LengthWitness {
    pub k_bar: Derivation,
    pub length: Derivation,
}

pub fn weil_length_witness(weil: &CartanOps) -> Result<LengthWitness> {
    let n = weil.lie.dim();
    let g = weil.gens();
    if g.len() != 2 * n {
        return Err(Error::Precondition("not a Weil algebra".into()));
    }
    let mut images = alloc::vec![Polynomial::zero(); 2 * n];
    for k in 0..n {
        images[n + k] = Polynomial::generator(k);
    }
    let k_bar = Derivation { degree: -1, images };
    let length = weil.algebra.d().bracket(&k_bar, g);
    // Expected: N(ω) = ω, N(dω) = dω.
    let d = weil.algebra.d();
    for k in 0..n {
        let w = Polynomial::generator(k);
        let dw = d.apply(&w, g);
        if length.apply(&w, g) != w || length.apply(&dw, g) != dw {
            return Err(Error::Consistency(format!("[d, k] is not the length operator on {}", g.name(k))));
        }
    }
    Ok(LengthWitness { k_bar, length })
}

impl LengthWitness {
    /// Verifies `d k̄ + k̄ d = N` entrywise and that `h = k̄ N⁻¹` contracts
    /// positive degrees: `dh + hd = I` for `1 <= k < top`, and `= I - ε` at 0.
    pub fn verify(&self, weil: &CartanOps, top: i64) -> bool {
        let a = &weil.algebra;
        let h = |k: i64| -> Option<Matrix> {
            if k <= 0 {
                return Some(Matrix::zeros(a.dim(k - 1), a.dim(k)));
            }
            let nk = self.length.matrix(a, k).inverse()?;
            Some(&self.k_bar.matrix(a, k) * &nk)
        };
        for k in 0..top {
            let (dm, dk) = (a.d_matrix(k - 1), a.d_matrix(k));
            let kb = |j: i64| self.k_bar.matrix(a, j);
            if &(&dm * &kb(k)) + &(&kb(k + 1) * &dk) != self.length.matrix(a, k) {
                return false;
            }
            let (Some(hk), Some(hk1)) = (h(k), h(k + 1)) else { return false };
            let lhs = &(&dm * &hk) + &(&hk1 * &dk);
            let want = if k == 0 { Matrix::zeros(1, 1) } else { Matrix::identity(a.dim(k)) };
            if lhs != want {
                return false;
            }
        }
        true
    }
}

/// `h_X` with `dh + hd = I - exp(θ_X)`, per degree `0..top`.
#[derive(Clone, Debug)]
pub struct IntegratedHomotopy {
    pub homotopy: BTreeMap<i64, Matrix>,
    pub exp_theta: BTreeMap<i64, Matrix>,
    /// `exp(dι) exp(ιd) = exp(dι) + exp(ιd) - I` held in every degree.
    pub factorization_agrees: bool,
    pub identity_holds: bool,
}

fn exp_nilpotent(m: &Matrix, bound: usize, degree: i64) -> Result<Matrix> {
    let n = m.rows();
    let mut term = Matrix::identity(n);
    let mut total = Matrix::identity(n);
    for j in 1..=bound + 1 {
        term = (&term * m).scale(&ratio(1, j as i64));
        if term.is_zero() {
            return Ok(total);
        }
        total = &total + &term;
    }
    Err(Error::NotNilpotent { degree, bound })
}

/// `Σ_{m>=1} T^{m-1}/m!` for nilpotent `T`.
fn phi_nilpotent(t: &Matrix, bound: usize, degree: i64) -> Result<Matrix> {
    let n = t.rows();
    let mut power = Matrix::identity(n);
    let mut total = Matrix::zeros(n, n);
    let mut fact = Rational::one();
    for m in 1..=bound + 1 {
        fact *= Rational::from_integer((m as i64).into());
        if power.is_zero() {
            return Ok(total);
        }
        total = &total + &power.scale(&(Rational::one() / &fact));
        power = &power * t;
    }
    if power.is_zero() {
        Ok(total)
    } else {
        Err(Error::NotNilpotent { degree, bound })
    }
}

/// Integrates the infinitesimal homotopy `ι_X` to the group element `exp X`:
/// `h_X = -ι_X Σ_{m>=1} θ_X^{m-1}/m!`, so `dh + hd = I - exp(θ_X)`.
pub fn integrate_homotopy(ops: &CartanOps, x: &[Rational], bound: usize, top: i64) -> Result<IntegratedHomotopy> {
    let a = &ops.algebra;
    let iota = ops.iota_of(x);
    let theta = ops.theta_of(x);
    let mut homotopy = BTreeMap::new();
    let mut exp_theta = BTreeMap::new();
    for k in 0..=top {
        let t = theta.matrix(a, k);
        exp_theta.insert(k, exp_nilpotent(&t, bound, k)?);
        let phi = phi_nilpotent(&t, bound, k)?;
        homotopy.insert(k, -(&iota.matrix(a, k) * &phi));
    }
    let mut identity_holds = true;
    let mut factorization_agrees = true;
    for k in 0..top {
        let (dm, dk) = (a.d_matrix(k - 1), a.d_matrix(k));
        let h = |j: i64| homotopy.get(&j).cloned().unwrap_or_else(|| Matrix::zeros(a.dim(j - 1), a.dim(j)));
        let lhs = &(&dm * &h(k)) + &(&h(k + 1) * &dk);
        identity_holds &= lhs == &Matrix::identity(a.dim(k)) - &exp_theta[&k];
        let di = &dm * &iota.matrix(a, k);
        let id = &iota.matrix(a, k + 1) * &dk;
        let (e1, e2) = (exp_nilpotent(&di, bound, k)?, exp_nilpotent(&id, bound, k)?);
        let product = &e1 * &e2;
        let sum = &(&e1 + &e2) - &Matrix::identity(a.dim(k));
        factorization_agrees &= product == sum && product == exp_theta[&k];
    }
    Ok(IntegratedHomotopy { homotopy, exp_theta, factorization_agrees, identity_holds })
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = crate::matrix::zero_vector(n);
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;
    use alloc::vec;

    #[test]
    fn ce_betti() {
        let so3 = chevalley_eilenberg(&LieData::so3(), 3).unwrap();
        assert_eq!(so3.algebra.betti_numbers().unwrap(), vec![1, 0, 0, 1]);
        let aff = chevalley_eilenberg(&LieData::affine_line(), 2).unwrap();
        assert_eq!(aff.algebra.betti_numbers().unwrap(), vec![1, 1, 0]);
        let ab = chevalley_eilenberg(&LieData::abelian(3), 3).unwrap();
        assert_eq!(ab.algebra.betti_numbers().unwrap(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn theta_is_coadjoint() {
        let ce = chevalley_eilenberg(&LieData::affine_line(), 2).unwrap();
        // θ_x e^y = -c^y_{xy} e^y = -e^y
        assert_eq!(ce.theta[0].images[1], Polynomial::generator(1).scale(&rat(-1)));
    }

    #[test]
    fn cartan_identities_hold() {
        for lie in [LieData::abelian(2), LieData::affine_line(), LieData::so3()] {
            for ops in [chevalley_eilenberg(&lie, 3).unwrap(), weil_algebra(&lie, 4).unwrap()] {
                assert!(ops.check_identities().symbolic);
                assert!(ops.check_identities_matrices(4));
            }
        }
    }

    #[test]
    fn weil_rank_one() {
        let w = weil_algebra(&LieData::abelian(1), 6).unwrap();
        assert_eq!(w.algebra.betti_numbers().unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(basic_betti(&w, 8).unwrap(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        let wit = weil_length_witness(&w).unwrap();
        assert!(wit.verify(&w, 6));
    }

    #[test]
    fn classifying_maps() {
        let lie = LieData::so3();
        let w = weil_algebra(&lie, 4).unwrap();
        let id = classifying_map(&w, &Connection::weil(&lie)).unwrap();
        assert!(id.is_identity_on_generators());
        let ce = chevalley_eilenberg(&lie, 4).unwrap();
        let flat = classifying_map(&ce, &Connection { values: (0..3).map(Polynomial::generator).collect() }).unwrap();
        for k in 3..6 {
            assert!(flat.images[k].is_zero());
        }
        let bad = Connection { values: vec![Polynomial::generator(1), Polynomial::generator(0), Polynomial::generator(2)] };
        assert!(matches!(classifying_map(&ce, &bad), Err(Error::Connection(..))));
    }

    #[test]
    fn integration() {
        let w = weil_algebra(&LieData::abelian(2), 5).unwrap();
        let r = integrate_homotopy(&w, &[rat(1), rat(2)], 8, 4).unwrap();
        assert!(r.identity_holds && r.factorization_agrees);
        let zero = integrate_homotopy(&w, &[rat(0), rat(0)], 8, 4).unwrap();
        assert!(zero.homotopy.values().all(Matrix::is_zero));
        let aff = weil_algebra(&LieData::affine_line(), 4).unwrap();
        let err = integrate_homotopy(&aff, &[rat(1), rat(0)], 6, 3).unwrap_err();
        assert!(matches!(err, Error::NotNilpotent { .. }));
        let nil = integrate_homotopy(&aff, &[rat(0), rat(1)], 8, 3).unwrap();
        assert!(nil.identity_holds && nil.factorization_agrees);
    }
}
