//! The Boolean hull of a lattice: the map D sending an element to its set
//! of points, the powerset lattice on the points, and desk-scale checks of
//! the universal property and the GF(2) ring structure of Boolean lattices.

use crate::boolpoly::{build_ideal, buchberger, normal_form, standard_monomials, BoolPoly};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMorphism};
use crate::spectrum::{enumerate_points, Spectrum};

pub const UNIVERSAL_SOURCE_CAP: usize = 6;
pub const UNIVERSAL_TARGET_CAP: usize = 16;

/// The hull Y = powerset(points) together with D: X -> Y.
#[derive(Debug, Clone)]
pub struct BooleanHull {
    lattice: FiniteLattice,
    spectrum: Spectrum,
    d_map: Vec<usize>, // per element, a bitmask over point indices
    hull: FiniteLattice,
}

impl BooleanHull {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// The hull as a lattice; element index i is the point subset with
    /// bitmask i.
    pub fn hull_lattice(&self) -> &FiniteLattice {
        &self.hull
    }

    /// D(x) as a bitmask over point indices (also the hull element index).
    pub fn d_mask(&self, x: usize) -> usize {
        self.d_map[x]
    }

    /// D(x) as a sorted list of point indices.
    pub fn d_points(&self, x: usize) -> Vec<usize> {
        (0..self.spectrum.len()).filter(|i| self.d_map[x] >> i & 1 == 1).collect()
    }

    pub fn d_morphism(&self) -> LatticeMorphism {
        LatticeMorphism::new(self.lattice.clone(), self.hull.clone(), self.d_map.clone())
    }

    /// The Boolean subalgebra of the powerset generated by the image of D,
    /// as a sorted list of bitmasks. In the finite case this is the whole
    /// powerset; kept for inspection.
    pub fn generated_subalgebra(&self) -> Vec<usize> {
        let n = self.spectrum.len();
        let full = (1usize << n) - 1;
        let mut in_set = vec![false; 1 << n];
        in_set[0] = true;
        in_set[full] = true;
        for &m in &self.d_map {
            in_set[m] = true;
        }
        loop {
            let current: Vec<usize> =
                (0..=full).filter(|&m| in_set[m]).collect();
            let mut grew = false;
            for &a in &current {
                if !in_set[full & !a] {
                    in_set[full & !a] = true;
                    grew = true;
                }
                for &b in &current {
                    for m in [a & b, a | b] {
                        if !in_set[m] {
                            in_set[m] = true;
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        (0..=full).filter(|&m| in_set[m]).collect()
    }
}

/// Builds the hull and checks its structural invariants exhaustively.
pub fn hull(lat: &FiniteLattice) -> Result<BooleanHull> {
    let spectrum = enumerate_points(lat);
    let n = spectrum.len();
    let hull_lattice = FiniteLattice::powerset(n)?;
    let d_map: Vec<usize> = (0..lat.size())
        .map(|x| {
            (0..n)
                .filter(|&i| spectrum.point(i).value(x))
                .fold(0usize, |m, i| m | 1 << i)
        })
        .collect();
    let h = BooleanHull { lattice: lat.clone(), spectrum, d_map, hull: hull_lattice };
    check_hull_invariants(&h)?;
    Ok(h)
}

fn check_hull_invariants(h: &BooleanHull) -> Result<()> {
    let lat = &h.lattice;
    let full = (1usize << h.spectrum.len()) - 1;
    assert_eq!(h.d_mask(lat.bottom()), 0);
    assert_eq!(h.d_mask(lat.top()), full);
    for x in 0..lat.size() {
        for y in 0..lat.size() {
            assert_eq!(h.d_mask(lat.meet(x, y)), h.d_mask(x) & h.d_mask(y));
            assert_eq!(h.d_mask(lat.join(x, y)), h.d_mask(x) | h.d_mask(y));
            if lat.leq(x, y) {
                assert_eq!(h.d_mask(x) & h.d_mask(y), h.d_mask(x));
            }
        }
    }
    // separation at ring level: equal point sets mean equal coordinate rows,
    // which is exactly D(x) = D(y); nothing further to compare, but the
    // morphism into the hull must be a bona fide lattice map.
    assert!(h.d_morphism().is_morphism());
    // generated subalgebra is the full powerset
    assert_eq!(h.generated_subalgebra().len(), full + 1);
    Ok(())
}

/// Outcome of the universal-property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalVerdict {
    pub ok: bool,
    pub maps_checked: usize,
    pub counterexample: Option<String>,
}

/// Enumerates every lattice map f: X -> target and checks that exactly one
/// lattice map g: hull -> target satisfies f = g after applying D.
pub fn verify_universal_property(
    lat: &FiniteLattice,
    target: &FiniteLattice,
    source_cap: usize,
    target_cap: usize,
) -> Result<UniversalVerdict> {
    if !target.is_boolean() {
        return Err(Error::TargetNotBoolean(
            "target must be complemented and distributive".to_string(),
        ));
    }
    if lat.size() > source_cap {
        return Err(Error::CapExceeded { size: lat.size(), cap: source_cap });
    }
    if target.size() > target_cap {
        return Err(Error::CapExceeded { size: target.size(), cap: target_cap });
    }
    let h = hull(lat)?;
    let n = h.spectrum.len();
    let fs = enumerate_lattice_maps(lat, target);
    let mut verdict =
        UniversalVerdict { ok: true, maps_checked: fs.len(), counterexample: None };
    for f in &fs {
        // a lattice map g on a powerset is determined by the atom images,
        // since every subset is the join of its atoms and g preserves joins
        let mut solutions = 0usize;
        let mut atom_images = vec![0usize; n.max(1)];
        count_factorizations(&h, target, f, 0, &mut atom_images, &mut solutions);
        if solutions != 1 {
            verdict.ok = false;
            verdict.counterexample = Some(format!(
                "map [{}] admits {solutions} factorizations",
                f.iter().map(|&t| target.name(t)).collect::<Vec<_>>().join(", ")
            ));
            break;
        }
    }
    Ok(verdict)
}

fn count_factorizations(
    h: &BooleanHull,
    target: &FiniteLattice,
    f: &[usize],
    atom: usize,
    atom_images: &mut Vec<usize>,
    solutions: &mut usize,
) {
    let n = h.spectrum.len();
    if atom == n {
        // materialize g from the atom images and verify everything
        let g: Vec<usize> = (0..h.hull.size())
            .map(|mask| {
                let members: Vec<usize> =
                    (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| atom_images[i]).collect();
                if members.is_empty() {
                    target.bottom()
                } else {
                    target.join_all(&members)
                }
            })
            .collect();
        let gm = LatticeMorphism::new(h.hull.clone(), target.clone(), g.clone());
        if gm.is_morphism()
            && (0..h.lattice.size()).all(|x| g[h.d_mask(x)] == f[x])
        {
            *solutions += 1;
        }
        return;
    }
    for t in 0..target.size() {
        atom_images[atom] = t;
        count_factorizations(h, target, f, atom + 1, atom_images, solutions);
    }
}

/// All lattice maps X -> target (preserving bottom, top, meet, join), found
/// by backtracking with incremental constraint checks.
pub fn enumerate_lattice_maps(lat: &FiniteLattice, target: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = lat.size();
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    assignment[lat.bottom()] = Some(target.bottom());
    assignment[lat.top()] = Some(target.top());
    let order: Vec<usize> =
        (0..n).filter(|&x| x != lat.bottom() && x != lat.top()).collect();
    let mut out = Vec::new();
    fn consistent(
        lat: &FiniteLattice,
        target: &FiniteLattice,
        assignment: &[Option<usize>],
        x: usize,
    ) -> bool {
        for y in 0..lat.size() {
            let Some(fy) = assignment[y] else { continue };
            let fx = assignment[x].unwrap();
            for (op_in, op_out) in
                [(lat.meet(x, y), target.meet(fx, fy)), (lat.join(x, y), target.join(fx, fy))]
            {
                if let Some(fz) = assignment[op_in] {
                    if fz != op_out {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        lat: &FiniteLattice,
        target: &FiniteLattice,
        order: &[usize],
        k: usize,
        assignment: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            let f: Vec<usize> = assignment.iter().map(|a| a.unwrap()).collect();
            let m = LatticeMorphism::new(lat.clone(), target.clone(), f.clone());
            if m.is_morphism() {
                out.push(f);
            }
            return;
        }
        let x = order[k];
        for t in 0..target.size() {
            assignment[x] = Some(t);
            if consistent(lat, target, assignment, x) {
                go(lat, target, order, k + 1, assignment, out);
            }
        }
        assignment[x] = None;
    }
    if n == 1 {
        // degenerate one-element lattice: the unique constant map
        return if target.size() == 1 { vec![vec![0]] } else { Vec::new() };
    }
    go(lat, target, &order, 0, &mut assignment, &mut out);
    out
}

/// Checks that a Boolean lattice, with symmetric difference as addition and
/// meet as multiplication, is carried isomorphically onto GF(2)[X]/I by
/// x -> nf(x).
pub fn boolean_ring_structure(lat: &FiniteLattice) -> Result<()> {
    if !lat.is_boolean() {
        return Err(Error::NotBoolean(
            "lattice must be complemented and distributive".to_string(),
        ));
    }
    let gb = buchberger(&build_ideal(lat));
    let nf = |x: usize| normal_form(&BoolPoly::var(x), &gb);
    let images: Vec<BoolPoly> = (0..lat.size()).map(nf).collect();
    // bijectivity: |X| distinct residues and |X| = 2^(number of standard monomials)
    let dim = standard_monomials(&gb).len();
    if 1usize.checked_shl(dim as u32) != Some(lat.size()) {
        return Err(Error::NotBoolean(format!(
            "residue ring has 2^{dim} elements, lattice has {}",
            lat.size()
        )));
    }
    for x in 0..lat.size() {
        for y in 0..lat.size() {
            if x < y && images[x] == images[y] {
                return Err(Error::NotBoolean(format!(
                    "elements {} and {} have equal residues",
                    lat.name(x),
                    lat.name(y)
                )));
            }
            // multiplication is meet
            let prod = normal_form(&images[x].mul(&images[y]), &gb);
            if prod != images[lat.meet(x, y)] {
                return Err(Error::NotBoolean(format!(
                    "product law fails at ({}, {})",
                    lat.name(x),
                    lat.name(y)
                )));
            }
            // addition is symmetric difference
            let xc = lat.complement(x).expect("complemented");
            let yc = lat.complement(y).expect("complemented");
            let symm = lat.join(lat.meet(x, yc), lat.meet(xc, y));
            let sum = normal_form(&images[x].add(&images[y]), &gb);
            if sum != images[symm] {
                return Err(Error::NotBoolean(format!(
                    "sum law fails at ({}, {})",
                    lat.name(x),
                    lat.name(y)
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{are_isomorphic, m2, m3, n5};
    use crate::spectrum::measurability;

    #[test]
    fn n5_and_m2_hulls_agree() {
        let h1 = hull(&n5()).unwrap();
        let h2 = hull(&m2()).unwrap();
        assert_eq!(h1.hull_lattice().size(), 4);
        assert!(are_isomorphic(h1.hull_lattice(), h2.hull_lattice()));
        assert!(are_isomorphic(
            h1.hull_lattice(),
            &FiniteLattice::powerset(2).unwrap()
        ));
    }

    #[test]
    fn m3_hull_is_trivial() {
        let h = hull(&m3()).unwrap();
        assert_eq!(h.hull_lattice().size(), 1);
        assert!((0..5).all(|x| h.d_mask(x) == 0));
    }

    #[test]
    fn powerset_hull_is_an_isomorphism() {
        let lat = FiniteLattice::powerset(3).unwrap();
        let h = hull(&lat).unwrap();
        assert_eq!(h.hull_lattice().size(), lat.size());
        let mut seen = vec![false; lat.size()];
        for x in 0..lat.size() {
            assert!(!seen[h.d_mask(x)]);
            seen[h.d_mask(x)] = true;
        }
    }

    #[test]
    fn hull_preserves_measurability() {
        for lat in [m2(), m3(), n5(), FiniteLattice::chain(3)] {
            let h = hull(&lat).unwrap();
            assert_eq!(measurability(h.hull_lattice()), measurability(&lat));
        }
    }

    #[test]
    fn d_points_sorted() {
        let h = hull(&n5()).unwrap();
        let top = h.lattice().top();
        assert_eq!(h.d_points(top), vec![0, 1]);
    }

    #[test]
    fn generated_subalgebra_is_everything() {
        for lat in [n5(), FiniteLattice::chain(4), FiniteLattice::powerset(2).unwrap()] {
            let h = hull(&lat).unwrap();
            let n = h.spectrum().len();
            assert_eq!(h.generated_subalgebra(), (0..1usize << n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn universal_property_chain2_vs_powerset1() {
        let v = verify_universal_property(
            &FiniteLattice::chain(2),
            &FiniteLattice::powerset(1).unwrap(),
            UNIVERSAL_SOURCE_CAP,
            UNIVERSAL_TARGET_CAP,
        )
        .unwrap();
        assert!(v.ok, "{:?}", v.counterexample);
        assert!(v.maps_checked >= 1);
    }

    #[test]
    fn universal_property_m3_vs_powerset1() {
        let v = verify_universal_property(
            &m3(),
            &FiniteLattice::powerset(1).unwrap(),
            UNIVERSAL_SOURCE_CAP,
            UNIVERSAL_TARGET_CAP,
        )
        .unwrap();
        assert!(v.ok, "{:?}", v.counterexample);
        // only the collapse map survives: M3 has no 2-valued morphism
        assert_eq!(v.maps_checked, 0);
    }

    #[test]
    fn universal_property_boolean_self() {
        let lat = FiniteLattice::powerset(2).unwrap();
        let v = verify_universal_property(&lat, &lat, 6, 16).unwrap();
        assert!(v.ok, "{:?}", v.counterexample);
        // D itself must factor through the identity, so at least one map
        assert!(v.maps_checked >= 1);
    }

    #[test]
    fn universal_property_rejects_non_boolean_target() {
        assert!(matches!(
            verify_universal_property(&m2(), &n5(), 6, 16),
            Err(Error::TargetNotBoolean(_))
        ));
    }

    #[test]
    fn universal_property_respects_caps() {
        let lat = FiniteLattice::powerset(3).unwrap();
        assert!(matches!(
            verify_universal_property(&lat, &FiniteLattice::powerset(1).unwrap(), 6, 16),
            Err(Error::CapExceeded { size: 8, cap: 6 })
        ));
    }

    // For a morphism f: X -> X', each point of X' composes with f to a
    // point of X (phi); D'(f(x)) must equal the phi-preimage of D(x).
    #[allow(clippy::needless_range_loop)]
    fn check_naturality(x: &FiniteLattice, xp: &FiniteLattice, f: &[usize]) {
        let fm = LatticeMorphism::new(x.clone(), xp.clone(), f.to_vec());
        assert!(fm.is_morphism());
        let hx = hull(x).unwrap();
        let hxp = hull(xp).unwrap();
        let phi: Vec<usize> = (0..hxp.spectrum().len())
            .map(|i| {
                let vals: Vec<bool> =
                    (0..x.size()).map(|e| hxp.spectrum().point(i).value(f[e])).collect();
                (0..hx.spectrum().len())
                    .find(|&j| hx.spectrum().point(j).values() == vals.as_slice())
                    .expect("composite is a point")
            })
            .collect();
        for e in 0..x.size() {
            let lhs = hxp.d_mask(f[e]);
            let rhs = (0..phi.len())
                .filter(|&i| hx.d_mask(e) >> phi[i] & 1 == 1)
                .fold(0usize, |m, i| m | 1 << i);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn naturality_square() {
        // the point of N5 supported on {c, 1}, seen as a map N5 -> chain(1)
        let x = n5();
        let c = x.index_of("c").unwrap();
        let f: Vec<usize> = (0..x.size())
            .map(|e| if x.leq(c, e) { 1 } else { 0 })
            .collect();
        check_naturality(&x, &FiniteLattice::chain(1), &f);
        // the bounds-preserving embedding chain(1) -> N5
        check_naturality(&FiniteLattice::chain(1), &x, &[x.bottom(), x.top()]);
        // subset inclusion-induced map chain(2) -> powerset(2): 0, {e1}, top
        let p2 = FiniteLattice::powerset(2).unwrap();
        check_naturality(&FiniteLattice::chain(2), &p2, &[0, 1, 3]);
    }

    #[test]
    fn boolean_ring_powerset_cases() {
        for k in 0..=3 {
            boolean_ring_structure(&FiniteLattice::powerset(k).unwrap()).unwrap();
        }
    }

    #[test]
    fn boolean_ring_rejects_n5() {
        assert!(matches!(
            boolean_ring_structure(&n5()),
            Err(Error::NotBoolean(_))
        ));
    }
}
