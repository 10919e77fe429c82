//! End-to-end acceptance checks for the toolkit. Each test covers one
//! criterion and prints a single pass line; a panic marks the criterion
//! failed.

use std::time::Instant;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use latmeas::boolpoly::{
    build_ideal, buchberger, normal_form, random_poly, standard_monomials,
};
use latmeas::catalog::{enumerate_all, named, random_lattice, reference_table, table};
use latmeas::hull::{hull, verify_universal_property};
use latmeas::lattice::FiniteLattice;
use latmeas::linalg::{
    constraint_matrix, invariance_rows, nullspace_dimension, stack_rows,
};
use latmeas::measures::{
    check_measure, invariant_space, make_measure, orthogonalize, solve_membership,
    universal_measure,
};
use latmeas::spectrum::measurability;
use latmeas::LatticeMorphism;

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn groebner_n(lat: &FiniteLattice) -> usize {
    standard_monomials(&buchberger(&build_ideal(lat))).len()
}

fn nullspace_n(lat: &FiniteLattice) -> usize {
    nullspace_dimension(&constraint_matrix(lat, lat.size()).unwrap())
}

/// All lattices of sizes 1..=6, the exhaustive small catalog.
fn small_catalog() -> Vec<FiniteLattice> {
    (1..=6).flat_map(|s| enumerate_all(s).unwrap()).collect()
}

#[test]
fn criterion_01_table_reproduction() {
    let start = Instant::now();
    let got = table(6).unwrap();
    let total: usize = got.values().map(Vec::len).sum();
    assert_eq!(total, 25);
    assert_eq!(got, reference_table());
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
    println!("acceptance 01 table reproduction (25 lattices, sizes 1-6): pass");
}

#[test]
fn criterion_02_oracle_triangle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut lattices = small_catalog();
    for _ in 0..200 {
        let size = rng.gen_range(1..=10);
        lattices.push(random_lattice(size, &mut rng));
    }
    for lat in &lattices {
        let a = measurability(lat);
        let b = groebner_n(lat);
        let c = nullspace_n(lat);
        assert!(a == b && b == c, "disagreement {a} {b} {c} on size {}", lat.size());
    }
    assert!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    println!("acceptance 02 oracle triangle ({} lattices): pass", lattices.len());
}

#[test]
fn criterion_03_named_values() {
    for (name, expect) in [("m3", 0), ("n5", 2), ("m2", 2), ("hexagon9", 2), ("x7", 2)] {
        let e = named(name).unwrap();
        assert_eq!(measurability(&e.lattice), expect, "{name}");
    }
    for k in 0..=10 {
        assert_eq!(measurability(&FiniteLattice::chain(k)), k, "chain({k})");
    }
    for k in 0..=4 {
        assert_eq!(
            measurability(&FiniteLattice::powerset(k).unwrap()),
            k,
            "powerset({k})"
        );
    }
    println!("acceptance 03 named lattice values: pass");
}

#[test]
fn criterion_04_product_additivity() {
    let start = Instant::now();
    let small: Vec<FiniteLattice> =
        (1..=4).flat_map(|s| enumerate_all(s).unwrap()).collect();
    for a in &small {
        for b in &small {
            let p = FiniteLattice::product(a, b).unwrap();
            assert_eq!(measurability(&p), measurability(a) + measurability(b));
        }
    }
    // the 3 = 1 + 2 instance: chain(1) x chain(2)
    let p = FiniteLattice::product(&FiniteLattice::chain(1), &FiniteLattice::chain(2)).unwrap();
    assert_eq!(measurability(&p), 3);
    assert!(start.elapsed().as_secs() < 5, "took {:?}", start.elapsed());
    println!("acceptance 04 product additivity over size<=4 pairs: pass");
}

#[test]
fn criterion_05_torsion_free() {
    let start = Instant::now();
    for lat in small_catalog() {
        let m = constraint_matrix(&lat, lat.size()).unwrap();
        let snf = latmeas::linalg::smith_normal_form(&m).unwrap();
        assert!(snf.is_torsion_free(), "torsion on size {}", lat.size());
    }
    assert!(start.elapsed().as_secs() < 30, "took {:?}", start.elapsed());
    println!("acceptance 05 Smith normal form torsion-free (sizes 1-6): pass");
}

#[test]
fn criterion_06_measure_space_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for lat in small_catalog() {
        let um = universal_measure(&lat);
        for _ in 0..100 {
            let coeffs: Vec<BigRational> = (0..um.dimension())
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-50i64..=50)),
                        BigInt::from(rng.gen_range(1i64..=12)),
                    )
                })
                .collect();
            let m = make_measure(&um, &coeffs).unwrap();
            // the induced value map passes the measure laws at full cap
            check_measure(&lat, m.values(), lat.size()).unwrap();
            // and solving membership recovers the same coefficients
            assert_eq!(solve_membership(&um, m.values()).unwrap(), coeffs);
        }
        // conversely, random value maps that pass check_measure lie in the span
        for _ in 0..100 {
            let values: Vec<BigRational> =
                (0..lat.size()).map(|_| rat(rng.gen_range(-4i64..=4))).collect();
            if check_measure(&lat, &values, lat.size()).is_ok() {
                solve_membership(&um, &values).unwrap();
            }
        }
    }
    println!("acceptance 06 measure space isomorphism (100 seeded cases per lattice): pass");
}

#[test]
fn criterion_07_orthogonal_idempotents() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lattices: Vec<FiniteLattice> =
        ["m3", "m2", "n5", "hexagon9", "x7"]
            .iter()
            .map(|n| named(n).unwrap().lattice)
            .collect();
    lattices.push(FiniteLattice::chain(5));
    lattices.push(FiniteLattice::powerset(3).unwrap());
    for lat in &lattices {
        let um = universal_measure(lat);
        let n = um.dimension();
        for _ in 0..100 {
            let k = rng.gen_range(1..=5);
            let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..lat.size())).collect();
            let ys = orthogonalize(&um, &xs);
            for i in 0..k {
                assert!(ys[i].iter().all(|&v| v * v == v), "not idempotent");
                for j in 0..i {
                    assert_eq!(
                        ys[i].iter().zip(&ys[j]).map(|(a, b)| a * b).sum::<i64>(),
                        0
                    );
                }
            }
            for i in 0..k {
                let mut ysup = vec![false; n];
                let mut xsup = vec![false; n];
                for t in 0..=i {
                    for c in 0..n {
                        ysup[c] |= ys[t][c] != 0;
                        xsup[c] |= um.row(xs[t])[c] != 0;
                    }
                }
                assert_eq!(ysup, xsup, "prefix ideal supports differ");
            }
        }
    }
    println!("acceptance 07 orthogonalization laws (100 seeded sequences per lattice): pass");
}

#[test]
fn criterion_08_boolean_hull() {
    let start = Instant::now();
    // hull construction checks all the morphism/separation invariants itself
    for lat in small_catalog() {
        let h = hull(&lat).unwrap();
        assert_eq!(measurability(h.hull_lattice()), measurability(&lat));
    }
    let targets = [
        FiniteLattice::powerset(1).unwrap(),
        FiniteLattice::powerset(2).unwrap(),
    ];
    for lat in (1..=5).flat_map(|s| enumerate_all(s).unwrap()) {
        for target in &targets {
            let v = verify_universal_property(&lat, target, 6, 16).unwrap();
            assert!(v.ok, "size {}: {:?}", lat.size(), v.counterexample);
        }
    }
    assert!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    println!("acceptance 08 Boolean hull invariants and universal property: pass");
}

#[test]
fn criterion_09_boolean_ring_isomorphism() {
    for k in 0..=3 {
        latmeas::hull::boolean_ring_structure(&FiniteLattice::powerset(k).unwrap())
            .unwrap();
    }
    println!("acceptance 09 GF(2) ring isomorphism for powerset(k), k<=3: pass");
}

#[test]
fn criterion_10_invariant_measures() {
    // Sym(3) on powerset(3): one orbit of points, spanned by cardinality
    let lat = FiniteLattice::powerset(3).unwrap();
    let um = universal_measure(&lat);
    let swap01: Vec<usize> =
        (0..8).map(|s| s & 4 | (s & 1) << 1 | (s & 2) >> 1).collect();
    let cyc: Vec<usize> =
        (0..8).map(|s| (s & 1) << 1 | (s & 2) << 1 | (s & 4) >> 2).collect();
    let gens = vec![
        LatticeMorphism::new(lat.clone(), lat.clone(), swap01),
        LatticeMorphism::new(lat.clone(), lat.clone(), cyc),
    ];
    let space = invariant_space(&um, &gens).unwrap();
    assert_eq!(space.dimension(), 1);
    let basis = space.basis_coefficients(um.dimension());
    let m = make_measure(&um, &basis[0]).unwrap();
    for s in 0..lat.size() {
        assert_eq!(m.value(s), &rat(s.count_ones() as i64));
    }
    // orbit count vs augmented nullspace on seeded (lattice, subgroup) cases
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = small_catalog();
    let mut checked = 0;
    while checked < 20 {
        let lat = &pool[rng.gen_range(0..pool.len())];
        let autos = lat.automorphisms();
        let picks: Vec<Vec<usize>> = autos
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        let gens: Vec<LatticeMorphism> = picks
            .iter()
            .map(|p| LatticeMorphism::new(lat.clone(), lat.clone(), p.clone()))
            .collect();
        let um = universal_measure(lat);
        let dim = invariant_space(&um, &gens).unwrap().dimension();
        let mut m = constraint_matrix(lat, lat.size()).unwrap();
        for g in &picks {
            m = stack_rows(&m, &invariance_rows(lat, g));
        }
        assert_eq!(dim, nullspace_dimension(&m), "size {}", lat.size());
        checked += 1;
    }
    println!("acceptance 10 invariant measure spaces (Sym(3) + 20 seeded cases): pass");
}

#[test]
fn criterion_11_ring_is_boolean() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lattices: Vec<FiniteLattice> = ["m3", "m2", "n5", "hexagon9", "x7"]
        .iter()
        .map(|n| named(n).unwrap().lattice)
        .chain([FiniteLattice::chain(4), FiniteLattice::powerset(3).unwrap()])
        .collect();
    let mut done = 0;
    'outer: loop {
        for lat in &lattices {
            let gb = buchberger(&build_ideal(lat));
            for _ in 0..25 {
                let p = random_poly(lat.size(), &mut rng);
                let nf_p = normal_form(&p, &gb);
                let nf_p2 = normal_form(&p.mul(&p), &gb);
                assert_eq!(nf_p, nf_p2, "p^2 and p differ mod I");
                done += 1;
                if done >= 1000 {
                    break 'outer;
                }
            }
        }
    }
    println!("acceptance 11 GF(2) quotient is Boolean (1000 seeded polynomials): pass");
}

#[test]
fn criterion_12_measurability_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut lattices = small_catalog();
    for _ in 0..50 {
        lattices.push(random_lattice(rng.gen_range(2..=9), &mut rng));
    }
    for lat in &lattices {
        if lat.size() >= 2 {
            assert!(measurability(lat) < lat.size());
        }
    }
    // equality at chain(1)
    let c1 = FiniteLattice::chain(1);
    assert_eq!(measurability(&c1), c1.size() - 1);
    println!("acceptance 12 bound n(X) <= |X|-1 with equality at chain(1): pass");
}
