//! The universal measure, construction and verification of rational-valued
//! measures, invariant-measure spaces via point orbits, and the
//! orthogonal-idempotent construction.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMorphism};
use crate::spectrum::{enumerate_points, point_action, Spectrum};

/// The universal measure pi: X -> Z^n, tabulated as one integer vector per
/// element whose i-th coordinate is the i-th point's value there.
#[derive(Debug, Clone)]
pub struct UniversalMeasure {
    lattice: FiniteLattice,
    spectrum: Spectrum,
    table: Vec<Vec<i64>>,
}

impl UniversalMeasure {
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// The measurability n(X).
    pub fn dimension(&self) -> usize {
        self.spectrum.len()
    }

    /// pi(x) as an integer vector of length n.
    pub fn row(&self, x: usize) -> &[i64] {
        &self.table[x]
    }
}

/// Builds the universal measure of a lattice and checks its structural
/// invariants (bounds and the coordinatewise meet law).
pub fn universal_measure(lat: &FiniteLattice) -> UniversalMeasure {
    let spectrum = enumerate_points(lat);
    let n = spectrum.len();
    let table: Vec<Vec<i64>> = (0..lat.size())
        .map(|x| (0..n).map(|i| spectrum.point(i).value(x) as i64).collect())
        .collect();
    let um = UniversalMeasure { lattice: lat.clone(), spectrum, table };
    debug_assert!(um.row(lat.bottom()).iter().all(|&v| v == 0));
    debug_assert!(um.row(lat.top()).iter().all(|&v| v == 1));
    debug_assert!((0..lat.size()).all(|x| {
        (0..lat.size()).all(|y| {
            let m = um.row(lat.meet(x, y));
            (0..n).all(|i| m[i] == um.row(x)[i] * um.row(y)[i])
        })
    }));
    um
}

/// A rational-valued measure, stored as coefficients over the points plus
/// the induced value map on elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    coefficients: Vec<BigRational>,
    values: Vec<BigRational>,
}

impl Measure {
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn value(&self, x: usize) -> &BigRational {
        &self.values[x]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// The measure with the given point coefficients: nu(x) = sum c_i pi(x)_i.
pub fn make_measure(um: &UniversalMeasure, coefficients: &[BigRational]) -> Result<Measure> {
    if coefficients.len() != um.dimension() {
        return Err(Error::DimensionMismatch {
            got: coefficients.len(),
            expected: um.dimension(),
        });
    }
    let values = (0..um.lattice().size())
        .map(|x| {
            um.row(x)
                .iter()
                .zip(coefficients)
                .map(|(&t, c)| c * BigRational::from(BigInt::from(t)))
                .sum()
        })
        .collect();
    Ok(Measure { coefficients: coefficients.to_vec(), values })
}

/// Checks nu(0) = 0 and the inclusion-exclusion law on every
/// distinct-element subset of size 2..=max_subset_size, in deterministic
/// order (ascending size, lexicographic on indices). Returns the first
/// violating subset.
pub fn check_measure(
    lat: &FiniteLattice,
    values: &[BigRational],
    max_subset_size: usize,
) -> Result<()> {
    assert_eq!(values.len(), lat.size());
    if !values[lat.bottom()].is_zero() {
        return Err(Error::MeasureViolation(vec![lat.name(lat.bottom()).to_string()]));
    }
    check_ie_law(lat, values, max_subset_size)
}

fn check_ie_law(
    lat: &FiniteLattice,
    values: &[BigRational],
    max_subset_size: usize,
) -> Result<()> {
    let n = lat.size();
    let mut subset: Vec<usize> = Vec::new();
    fn visit(
        lat: &FiniteLattice,
        values: &[BigRational],
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
    ) -> Result<()> {
        if subset.len() == k {
            let mut rhs = BigRational::zero();
            for mask in 1u32..(1 << k) {
                let part: Vec<usize> =
                    (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| subset[i]).collect();
                let term = values[lat.meet_all(&part)].clone();
                if part.len() % 2 == 1 {
                    rhs += term;
                } else {
                    rhs -= term;
                }
            }
            if values[lat.join_all(subset)] != rhs {
                return Err(Error::MeasureViolation(
                    subset.iter().map(|&x| lat.name(x).to_string()).collect(),
                ));
            }
            return Ok(());
        }
        for x in start..lat.size() {
            subset.push(x);
            visit(lat, values, k, x + 1, subset)?;
            subset.pop();
        }
        Ok(())
    }
    for k in 2..=max_subset_size.min(n) {
        visit(lat, values, k, 0, &mut subset)?;
    }
    Ok(())
}

/// Solves values = table * c exactly; the coefficients of a map X -> Q are
/// unique when they exist. On inconsistency reports the first element with
/// a nonzero residual.
#[allow(clippy::needless_range_loop)]
pub fn solve_membership(
    um: &UniversalMeasure,
    values: &[BigRational],
) -> Result<Vec<BigRational>> {
    let lat = um.lattice();
    assert_eq!(values.len(), lat.size());
    let n = um.dimension();
    // Gaussian elimination on the |X| x (n+1) augmented system.
    let mut rows: Vec<Vec<BigRational>> = (0..lat.size())
        .map(|x| {
            let mut row: Vec<BigRational> = um
                .row(x)
                .iter()
                .map(|&t| BigRational::from(BigInt::from(t)))
                .collect();
            row.push(values[x].clone());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].clone();
        for j in col..=n {
            let v = &rows[r][j] / &inv;
            rows[r][j] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=n {
                    let v = &rows[i][j] - &f * &rows[r][j];
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        coeffs[col] = rows[i][n].clone();
    }
    // verify; report the first element where the residual is nonzero
    let candidate = make_measure(um, &coeffs)?;
    for x in 0..lat.size() {
        if candidate.value(x) != &values[x] {
            return Err(Error::NotAMeasure(lat.name(x).to_string()));
        }
    }
    Ok(coeffs)
}

/// The space of G-invariant measures: the orbit partition of the points
/// under the induced point action, with one basis measure per orbit.
#[derive(Debug, Clone)]
pub struct InvariantMeasureSpace {
    orbit_partition: Vec<Vec<usize>>,
}

impl InvariantMeasureSpace {
    pub fn dimension(&self) -> usize {
        self.orbit_partition.len()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbit_partition
    }

    /// Orbit-indicator coefficient vectors: a basis of the invariant space.
    pub fn basis_coefficients(&self, n: usize) -> Vec<Vec<BigRational>> {
        self.orbit_partition
            .iter()
            .map(|orbit| {
                let mut c = vec![BigRational::zero(); n];
                for &i in orbit {
                    c[i] = BigRational::one();
                }
                c
            })
            .collect()
    }
}

/// Computes the orbit partition of the spectrum under the group generated
/// by the given automorphisms.
pub fn invariant_space(
    um: &UniversalMeasure,
    generators: &[LatticeMorphism],
) -> Result<InvariantMeasureSpace> {
    let n = um.dimension();
    let perms: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| point_action(um.lattice(), g, um.spectrum()))
        .collect::<Result<_>>()?;
    let mut orbit_of: Vec<Option<usize>> = vec![None; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_of[start].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        orbit_of[start] = Some(id);
        while let Some(p) = stack.pop() {
            members.push(p);
            for perm in &perms {
                let q = perm[p];
                if orbit_of[q].is_none() {
                    orbit_of[q] = Some(id);
                    stack.push(q);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(InvariantMeasureSpace { orbit_partition: orbits })
}

/// The orthogonal idempotents y_i = pi(x_{i}) (1 - pi(x_1)) ... (1 - pi(x_{i-1}))
/// computed coordinatewise in Z^n.
pub fn orthogonalize(um: &UniversalMeasure, xs: &[usize]) -> Vec<Vec<i64>> {
    let n = um.dimension();
    let mut mask_free = vec![1i64; n]; // product of (1 - pi(x_j)) so far
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let y: Vec<i64> = (0..n).map(|i| um.row(x)[i] * mask_free[i]).collect();
        for (i, m) in mask_free.iter_mut().enumerate() {
            *m *= 1 - um.row(x)[i];
        }
        out.push(y);
    }
    out
}

/// Splits a non-normalized measure into (mu - mu(0), mu(0)) after
/// verifying the inclusion-exclusion law (without the nu(0) = 0 axiom).
pub fn nn_split(
    lat: &FiniteLattice,
    um: &UniversalMeasure,
    values: &[BigRational],
) -> Result<(Measure, BigRational)> {
    assert_eq!(values.len(), lat.size());
    check_ie_law(lat, values, lat.size()).map_err(|e| match e {
        Error::MeasureViolation(subset) => Error::NotANNMeasure(subset),
        other => other,
    })?;
    let c = values[lat.bottom()].clone();
    let shifted: Vec<BigRational> = values.iter().map(|v| v - &c).collect();
    let coeffs = solve_membership(um, &shifted).map_err(|e| match e {
        Error::NotAMeasure(x) => Error::NotANNMeasure(vec![x]),
        other => other,
    })?;
    Ok((make_measure(um, &coeffs)?, c))
}
