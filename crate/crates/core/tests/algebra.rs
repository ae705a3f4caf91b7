use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sullivan_core::cartan::{
    basic_betti, check_equivariant, chevalley_eilenberg, integrate_homotopy, unit_vector, weil_algebra, weil_length_witness,
    weil_to_ce,
};
use sullivan_core::cdga::{Derivation, FreeCdga};
use sullivan_core::free::{enveloping, free_glie, tensor_algebra};
use sullivan_core::lie::LieData;
use sullivan_core::matrix::rat;
use sullivan_core::minimal::minimal_model;
use sullivan_core::{Error, Generator, GeneratorSet, GradedSpace, Polynomial};

fn builtins() -> Vec<(&'static str, LieData)> {
    vec![
        ("abelian1", LieData::abelian(1)),
        ("abelian2", LieData::abelian(2)),
        ("abelian3", LieData::abelian(3)),
        ("affine", LieData::affine_line()),
        ("so3", LieData::so3()),
    ]
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_poly(r: &mut ChaCha8Rng, gens: &GeneratorSet, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let len = r.gen_range(0..=3);
        let raw: Vec<usize> = (0..len).map(|_| r.gen_range(0..gens.len())).collect();
        let c = rat(r.gen_range(-3..=3));
        p.add_assign(&Polynomial::from_product(&raw, &c, gens).unwrap());
    }
    p
}

fn mixed_generators() -> GeneratorSet {
    GeneratorSet::new(vec![
        Generator::new("a", 1),
        Generator::new("b", 2),
        Generator::new("c", 3),
        Generator::new("e", 1),
    ])
    .unwrap()
}

#[test]
fn products_are_graded_commutative_and_associative() {
    let gens = mixed_generators();
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let raw_x: Vec<usize> = (0..r.gen_range(1..=3)).map(|_| r.gen_range(0..4)).collect();
        let raw_y: Vec<usize> = (0..r.gen_range(1..=3)).map(|_| r.gen_range(0..4)).collect();
        let x = Polynomial::from_product(&raw_x, &rat(1), &gens).unwrap();
        let y = Polynomial::from_product(&raw_y, &rat(1), &gens).unwrap();
        let (Some(dx), Some(dy)) = (x.homogeneous_degree(&gens).unwrap(), y.homogeneous_degree(&gens).unwrap()) else {
            continue;
        };
        let s = if dx * dy % 2 != 0 { rat(-1) } else { rat(1) };
        assert_eq!(x.mul(&y, &gens), y.mul(&x, &gens).scale(&s));
        let z = random_poly(&mut r, &gens, 2);
        assert_eq!(x.mul(&y, &gens).mul(&z, &gens), x.mul(&y.mul(&z, &gens), &gens));
    }
}

#[test]
fn odd_squares_vanish() {
    let gens = mixed_generators();
    for i in [0, 2, 3] {
        assert!(Polynomial::generator(i).pow(2, &gens).is_zero());
    }
    assert!(!Polynomial::generator(1).pow(2, &gens).is_zero());
}

#[test]
fn differentials_square_to_zero_exactly_when_symbolically_closed() {
    // d b = p c, d c = q b², so d² b = 0 and d² c = 2pq b c
    let gens = mixed_generators();
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let p = rat(r.gen_range(-2..=2));
        let q = rat(r.gen_range(-2..=2));
        let diff = vec![
            Polynomial::zero(),
            Polynomial::from_product(&[2], &p, &gens).unwrap(),
            Polynomial::from_product(&[1, 1], &q, &gens).unwrap(),
            Polynomial::zero(),
        ];
        let built = FreeCdga::new(gens.clone(), diff.clone(), 8);
        assert_eq!(built.is_ok(), (&p * &q) == rat(0));
        let unchecked = FreeCdga::new_unchecked(gens.clone(), diff, 8).unwrap();
        let d = unchecked.d();
        let squares_to_zero = (0..=6).all(|k| (&d.matrix(&unchecked, k + 1) * &d.matrix(&unchecked, k)).is_zero());
        assert_eq!(squares_to_zero, built.is_ok());
        assert_eq!(d.bracket(&d, &gens).is_zero(), built.is_ok());
    }
}

#[test]
fn derivation_bracket_is_graded_antisymmetric() {
    let gens = mixed_generators();
    let mut r = ChaCha8Rng::seed_from_u64(13);
    let free = FreeCdga::free(gens.clone(), 6).unwrap();
    for _ in 0..30 {
        // degree-0 and degree-1 derivations with random homogeneous images
        let mut d0 = Vec::new();
        let mut d1 = Vec::new();
        for i in 0..gens.len() {
            let deg = gens.degree(i);
            let pick = |r: &mut ChaCha8Rng, target: i64| {
                let mut p = Polynomial::zero();
                for m in free.basis(target) {
                    p.add_term(m, rat(r.gen_range(-1..=1)));
                }
                p
            };
            d0.push(pick(&mut r, deg));
            d1.push(pick(&mut r, deg + 1));
        }
        let a = Derivation { degree: 0, images: d0 };
        let b = Derivation { degree: 1, images: d1 };
        let ab = a.bracket(&b, &gens);
        let ba = b.bracket(&a, &gens);
        assert!(ab.add(&ba).is_zero());
        for k in 0..=4 {
            let lhs = ab.matrix(&free, k);
            let rhs = &(&b.matrix(&free, k) * &a.matrix(&free, k)) - &(&a.matrix(&free, k + 1) * &b.matrix(&free, k));
            let rhs = -rhs;
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn pbw_matches_tensor_algebra() {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..25 {
        let n = r.gen_range(1..=3);
        let mut dims = BTreeMap::new();
        for _ in 0..n {
            *dims.entry(r.gen_range(1..=3i64)).or_insert(0) += 1;
        }
        let m = GradedSpace::from_dims("m", &dims);
        let lie = free_glie(&m, 6).unwrap();
        assert!(lie.check_jacobi());
        assert_eq!(enveloping(&lie.dims(), 6).unwrap(), tensor_algebra(&m, 6).unwrap());
    }
}

#[test]
fn chevalley_eilenberg_homology() {
    let so3 = chevalley_eilenberg(&LieData::so3(), 4).unwrap();
    assert_eq!(so3.algebra.homology(0..=3).unwrap().betti_numbers(), vec![1, 0, 0, 1]);
    let aff = chevalley_eilenberg(&LieData::affine_line(), 3).unwrap();
    assert_eq!(aff.algebra.homology(0..=2).unwrap().betti_numbers(), vec![1, 1, 0]);
    for n in 1..=4 {
        let ce = chevalley_eilenberg(&LieData::abelian(n), n as i64 + 1).unwrap();
        let betti = ce.algebra.homology(0..=n as i64).unwrap().betti_numbers();
        let expected: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
        assert_eq!(betti, expected);
    }
}

#[test]
fn weil_algebras_are_acyclic() {
    for (name, lie) in builtins() {
        let w = weil_algebra(&lie, 7).unwrap();
        let betti = w.algebra.homology(0..=6).unwrap().betti_numbers();
        assert_eq!(betti, vec![1, 0, 0, 0, 0, 0, 0], "{name}");
    }
}

#[test]
fn cartan_identities_hold_everywhere() {
    for (name, lie) in builtins() {
        for ops in [weil_algebra(&lie, 5).unwrap(), chevalley_eilenberg(&lie, 4).unwrap()] {
            let report = ops.check_identities();
            assert!(report.symbolic, "{name}: {:?}", report.failures);
            assert!(ops.check_identities_matrices(3), "{name}");
        }
    }
}

#[test]
fn basic_subcomplex_patterns() {
    let a1 = weil_algebra(&LieData::abelian(1), 9).unwrap();
    assert_eq!(basic_betti(&a1, 8).unwrap(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
    let so3 = weil_algebra(&LieData::so3(), 9).unwrap();
    assert_eq!(basic_betti(&so3, 8).unwrap(), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let a2 = weil_algebra(&LieData::abelian(2), 7).unwrap();
    // ℚ[Ω1, Ω2]: 1, 2, 3, 4 in degrees 0, 2, 4, 6
    assert_eq!(basic_betti(&a2, 6).unwrap(), vec![1, 0, 2, 0, 3, 0, 4]);
}

#[test]
fn projection_to_chevalley_eilenberg_is_natural() {
    for (name, lie) in builtins() {
        let (w, ce, f) = weil_to_ce(&lie, 5).unwrap();
        check_equivariant(&f, &w, &ce).unwrap();
        let cm = f.chain_map_through(4).unwrap();
        for x in 0..lie.dim() {
            let iw = w.iota_of(&unit_vector(lie.dim(), x));
            let ic = ce.iota_of(&unit_vector(lie.dim(), x));
            for k in 1..=4 {
                assert_eq!(&cm.component(k - 1) * &iw.matrix(&w.algebra, k), &ic.matrix(&ce.algebra, k) * &cm.component(k), "{name}");
            }
        }
    }
}

#[test]
fn weil_contraction_and_integrated_homotopy() {
    for (name, lie) in builtins() {
        let w = weil_algebra(&lie, 5).unwrap();
        let witness = weil_length_witness(&w).unwrap();
        assert!(witness.verify(&w, 4), "{name}");
    }
    // ad-nilpotent elements: anything abelian, y in the affine algebra
    for (lie, x) in [(LieData::abelian(2), 0), (LieData::affine_line(), 1)] {
        let ce = chevalley_eilenberg(&lie, 4).unwrap();
        let h = integrate_homotopy(&ce, &unit_vector(lie.dim(), x), 6, 3).unwrap();
        assert!(h.factorization_agrees && h.identity_holds);
    }
    let so3 = chevalley_eilenberg(&LieData::so3(), 4).unwrap();
    assert!(matches!(integrate_homotopy(&so3, &unit_vector(3, 0), 6, 3), Err(Error::NotNilpotent { .. })));
}

#[test]
fn minimal_model_stages_only_grow() {
    let gens = GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("y", 3)]).unwrap();
    let x2 = Polynomial::generator(0).pow(2, &gens);
    let a = FreeCdga::new(gens, vec![Polynomial::zero(), x2], 8).unwrap();
    let mut previous = BTreeMap::new();
    for n in 2..=7 {
        let m = minimal_model(&a, n).unwrap();
        let table = m.homotopy_table();
        for (k, v) in &previous {
            assert_eq!(table.rank(*k), *v);
        }
        assert!(m.certify().unwrap().passes());
        previous = table.ranks;
    }
    assert_eq!(previous, BTreeMap::from([(2, 1), (3, 1)]));
}

#[test]
fn minimal_model_of_a_product() {
    // S³ × S³: Λ(a3, b3) is its own minimal model
    let gens = GeneratorSet::new(vec![Generator::new("a", 3), Generator::new("b", 3)]).unwrap();
    let a = FreeCdga::new(gens, vec![Polynomial::zero(), Polynomial::zero()], 8).unwrap();
    let m = minimal_model(&a, 8).unwrap();
    assert_eq!(m.homotopy_table().ranks, BTreeMap::from([(3, 2)]));
}

#[test]
fn minimal_model_of_a_wedge_has_infinitely_many_generators() {
    // S² ∨ S²: cohomology ℚ ⊕ ℚ² (deg 2). The model is not finite; π_3 has rank 3.
    let gens = GeneratorSet::new(vec![
        Generator::new("x", 2),
        Generator::new("y", 2),
        Generator::new("u", 3),
        Generator::new("v", 3),
        Generator::new("w", 3),
    ])
    .unwrap();
    let sq = |i: usize, j: usize| Polynomial::from_product(&[i, j], &rat(1), &gens).unwrap();
    let a = FreeCdga::new(gens.clone(), vec![Polynomial::zero(), Polynomial::zero(), sq(0, 0), sq(0, 1), sq(1, 1)], 6).unwrap();
    // A itself is a minimal Sullivan algebra, so a model of it agrees with it through degree 3.
    let m = minimal_model(&a, 3).unwrap();
    assert_eq!(m.homotopy_table().ranks, BTreeMap::from([(2, 2), (3, 3)]));
    assert!(m.certify().unwrap().passes());
}
