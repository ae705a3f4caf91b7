//! Sullivan minimal models of 1-connected free CDGAs, built one Hirsch
//! extension at a time.
//!
//! Stage `k` adjoins degree-`k` generators that (a) hit the cokernel of
//! `H^k(M) -> H^k(A)` as cocycles and (b) kill the kernel of
//! `H^{k+1}(M) -> H^{k+1}(A)`. After stage `n` the map is an isomorphism on
//! `H^{<=n}` and injective on `H^{n+1}`, which is what certification checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::cdga::{is_decomposable, CdgaMorphism, FreeCdga};
use crate::complex::extend_to_complement;
use crate::error::{Error, Result};
use crate::matrix::{zero_vector, Rational, Vector};
use crate::poly::{Generator, GeneratorSet, Polynomial};

/// One Hirsch extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirschStage {
    pub degree: i64,
    pub generators: Vec<String>,
    /// `d(v)` in the model.
    pub differentials: Vec<Polynomial>,
    /// `f(v)` in the input algebra.
    pub targets: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub model: FreeCdga,
    pub quasi_iso: CdgaMorphism,
    pub stages: Vec<HirschStage>,
    pub certified_through: i64,
}

/// `dim π_k ⊗ ℚ` for `2 <= k <= certified_through` (nonzero entries only).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomotopyTable {
    pub ranks: BTreeMap<i64, usize>,
    pub certified_through: i64,
}

impl HomotopyTable {
    pub fn rank(&self, k: i64) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEvidence {
    pub degree: i64,
    pub betti_model: usize,
    pub betti_target: usize,
    pub induced_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub certified_through: i64,
    pub weak_equivalence: bool,
    pub evidence: Vec<DegreeEvidence>,
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.weak_equivalence
    }
}

struct Tower<'a> {
    target: &'a FreeCdga,
    gens: Vec<Generator>,
    diff: Vec<Polynomial>,
    images: Vec<Polynomial>,
    truncation: i64,
}

impl Tower<'_> {
    fn morphism(&self) -> Result<CdgaMorphism> {
        let model = FreeCdga::new(GeneratorSet::new(self.gens.clone())?, self.diff.clone(), self.truncation)?;
        CdgaMorphism::new(model, self.target.clone(), self.images.clone())
    }

    fn push(&mut self, stage: &mut HirschStage, d: Polynomial, image: Polynomial) {
        let name = format!("v{}_{}", stage.degree, stage.generators.len() + 1);
        self.gens.push(Generator::new(name.clone(), stage.degree));
        self.diff.push(d.clone());
        self.images.push(image.clone());
        stage.generators.push(name);
        stage.differentials.push(d);
        stage.targets.push(image);
    }
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

/// Minimal model of `a` through degree `n` (`n >= 2`).
pub fn minimal_model(a: &FreeCdga, n: i64) -> Result<MinimalModel> {
    if n < 2 {
        return Err(Error::Truncation(format!("minimal model needs truncation >= 2, got {n}")));
    }
    let a_ext = a.clone().with_truncation(a.truncation().max(n + 2));
    let low = a_ext.complex_through(2);
    if low.betti(0) != 1 {
        return Err(Error::NotSimplyConnected(format!("H^0 has dimension {}", low.betti(0))));
    }
    if low.betti(1) != 0 {
        return Err(Error::NotSimplyConnected(format!("H^1 has dimension {}", low.betti(1))));
    }
    let mut tower = Tower { target: &a_ext, gens: Vec::new(), diff: Vec::new(), images: Vec::new(), truncation: n };
    let mut stages = Vec::new();
    for k in 2..=n {
        let mut stage = HirschStage { degree: k, generators: Vec::new(), differentials: Vec::new(), targets: Vec::new() };

        // (a) new cocycles for the cokernel in degree k
        let f = tower.morphism()?;
        let cm = f.chain_map_through(k + 1)?;
        let induced = cm.induced_map(k);
        let betti_a = cm.target().betti(k);
        let units: Vec<Vector> = (0..betti_a).map(|i| unit(betti_a, i)).collect();
        let missing = extend_to_complement(&induced.columns(), &units, betti_a);
        let reps = cm.target().homology_basis(k);
        for e in missing {
            let j = e.iter().position(|c| c.is_one()).expect("unit vector");
            let z = a_ext.from_coordinates(&reps[j], k);
            tower.push(&mut stage, Polynomial::zero(), z);
        }

        // (b) kill the kernel in degree k + 1
        let f = tower.morphism()?;
        let cm = f.chain_map_through(k + 2)?;
        let induced = cm.induced_map(k + 1);
        let reps = cm.source().homology_basis(k + 1);
        let model = f.source.clone();
        for kv in induced.kernel() {
            let mut z = zero_vector(model.dim(k + 1));
            for (c, r) in kv.iter().zip(&reps) {
                for (zi, ri) in z.iter_mut().zip(r) {
                    *zi += c * ri;
                }
            }
            let zp = model.from_coordinates(&z, k + 1);
            let fz = a_ext.coordinates(&f.apply(&zp), k + 1);
            let pre = a_ext
                .d_matrix(k)
                .solve(&fz)
                .ok_or_else(|| Error::Consistency(format!("image of a kernel class in degree {} is not exact", k + 1)))?;
            tower.push(&mut stage, zp, a_ext.from_coordinates(&pre, k));
        }
        stages.push(stage);
    }
    let quasi_iso = tower.morphism()?;
    Ok(MinimalModel { model: quasi_iso.source.clone(), quasi_iso, stages, certified_through: n })
}

impl MinimalModel {
    pub fn homotopy_table(&self) -> HomotopyTable {
        let mut ranks = BTreeMap::new();
        for g in self.model.generators().iter() {
            if g.degree <= self.certified_through {
                *ranks.entry(g.degree).or_insert(0) += 1;
            }
        }
        HomotopyTable { ranks, certified_through: self.certified_through }
    }

    /// Re-verifies the model independently of how it was built: generator
    /// degrees, homogeneity, `d² = 0`, minimality, compatibility of the map
    /// with `d`, and the quasi-isomorphism through `certified_through`.
    pub fn certify(&self) -> Result<Certificate> {
        certify(&self.model, &self.quasi_iso, self.certified_through)
    }
}

pub fn certify(model: &FreeCdga, f: &CdgaMorphism, through: i64) -> Result<Certificate> {
    for g in model.generators().iter() {
        if g.degree < 2 {
            return Err(Error::BadDegree { name: g.name.clone(), degree: g.degree });
        }
    }
    model.validate()?;
    if let Some(i) = model.first_indecomposable_differential() {
        return Err(Error::NotMinimal(model.generators().name(i).into()));
    }
    debug_assert!(model.differentials().iter().all(is_decomposable));
    f.check()?;
    let cm = f.chain_map_through(through + 2)?;
    let mut evidence = Vec::new();
    for k in 0..=through + 1 {
        evidence.push(DegreeEvidence {
            degree: k,
            betti_model: cm.source().betti(k),
            betti_target: cm.target().betti(k),
            induced_rank: cm.induced_map(k).rank(),
        });
    }
    let weak_equivalence = cm.is_weak_equivalence_on(0..=through)?;
    Ok(Certificate { certified_through: through, weak_equivalence, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cdga(gens: &[(&str, i64)], diff: Vec<Polynomial>, n: i64) -> FreeCdga {
        let g = GeneratorSet::new(gens.iter().map(|(s, d)| Generator::new(*s, *d)).collect()).unwrap();
        FreeCdga::new(g, diff, n).unwrap()
    }

    #[test]
    fn odd_sphere() {
        let a = cdga(&[("e", 3)], vec![Polynomial::zero()], 9);
        let m = minimal_model(&a, 8).unwrap();
        assert_eq!(m.homotopy_table().ranks, BTreeMap::from([(3, 1)]));
        assert!(m.certify().unwrap().passes());
    }

    #[test]
    fn two_sphere() {
        let g = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
        let x2 = Polynomial::generator(0).pow(2, &g);
        let a = FreeCdga::new(g, vec![Polynomial::zero(), x2], 8).unwrap();
        let m = minimal_model(&a, 8).unwrap();
        assert_eq!(m.homotopy_table().ranks, BTreeMap::from([(2, 1), (3, 1)]));
        assert!(m.certify().unwrap().passes());
        assert_eq!(m.stages[1].generators, vec![String::from("v3_1")]);
    }

    #[test]
    fn cp2_is_already_minimal() {
        let g = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 5)]).unwrap();
        let x3 = Polynomial::generator(0).pow(3, &g);
        let a = FreeCdga::new(g, vec![Polynomial::zero(), x3], 9).unwrap();
        assert_eq!(a.betti_numbers().unwrap(), vec![1, 0, 1, 0, 1, 0, 0, 0, 0, 0]);
        let m = minimal_model(&a, 8).unwrap();
        assert_eq!(m.homotopy_table().ranks, BTreeMap::from([(2, 1), (5, 1)]));
        assert!(m.certify().unwrap().passes());
    }

    #[test]
    fn rejects_non_simply_connected() {
        let a = cdga(&[("e", 1)], vec![Polynomial::zero()], 4);
        assert!(matches!(minimal_model(&a, 4), Err(Error::NotSimplyConnected(_))));
    }

    #[test]
    fn corrupted_models_fail_certification() {
        let g = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
        let mut bad = Polynomial::generator(0).pow(2, &g);
        bad.add_assign(&Polynomial::generator(0));
        let model = FreeCdga::new_unchecked(g.clone(), vec![Polynomial::zero(), bad], 8).unwrap();
        let f = CdgaMorphism { source: model.clone(), target: model.clone(), images: vec![Polynomial::generator(0), Polynomial::generator(1)] };
        assert_eq!(certify(&model, &f, 4).unwrap_err(), Error::Inhomogeneous { name: "y".into(), expected: 4 });

        let g = GeneratorSet::new(vec![Generator::new("z", 4), Generator::new("y", 3)]).unwrap();
        let model = FreeCdga::new_unchecked(g, vec![Polynomial::zero(), Polynomial::generator(0)], 8).unwrap();
        let f = CdgaMorphism { source: model.clone(), target: model.clone(), images: vec![Polynomial::generator(0), Polynomial::generator(1)] };
        assert_eq!(certify(&model, &f, 4).unwrap_err(), Error::NotMinimal("y".into()));
    }

    #[test]
    fn empty_model() {
        let a = cdga(&[], vec![], 6);
        let m = minimal_model(&a, 6).unwrap();
        assert!(m.homotopy_table().ranks.is_empty());
        assert!(m.certify().unwrap().passes());
    }
}
