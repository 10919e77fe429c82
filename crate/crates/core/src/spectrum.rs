//! Points of Spec(F2[X]/I) as {0,1}-valuations on the lattice.
//!
//! A point assigns 0 to the bottom, 1 to the top, and respects
//! v(x ∧ y) = v(x)·v(y) and v(x ∨ y) = max(v(x), v(y)). The number of
//! points is the measurability n(X).

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeMorphism};

/// One {0,1}-valuation on the lattice elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedPoint {
    values: Vec<bool>,
}

impl TwoValuedPoint {
    pub fn value(&self, x: usize) -> bool {
        self.values[x]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Indices of elements valued 1.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i]).collect()
    }
}

/// The complete, lexicographically sorted point list of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    points: Vec<TwoValuedPoint>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[TwoValuedPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &TwoValuedPoint {
        &self.points[i]
    }

    fn index_of(&self, values: &[bool]) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.values.as_slice().cmp(values))
            .ok()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Unknown,
    Zero,
    One,
}

/// Propagates the valuation laws to a fixpoint. Returns false on conflict.
fn propagate(lat: &FiniteLattice, state: &mut [Val]) -> bool {
    let n = lat.size();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in i..n {
                let (m, k) = (lat.meet(i, j), lat.join(i, j));
                for (target, want_and) in [(m, true), (k, false)] {
                    let (vi, vj, vt) = (state[i], state[j], state[target]);
                    // forward: both operands known
                    let forced = match (vi, vj) {
                        (Val::Zero, _) | (_, Val::Zero) if want_and => Some(Val::Zero),
                        (Val::One, _) | (_, Val::One) if !want_and => Some(Val::One),
                        (Val::One, Val::One) => Some(Val::One),
                        (Val::Zero, Val::Zero) => Some(Val::Zero),
                        _ => None,
                    };
                    if let Some(f) = forced {
                        match vt {
                            Val::Unknown => {
                                state[target] = f;
                                changed = true;
                            }
                            v if v != f => return false,
                            _ => {}
                        }
                    }
                    // backward: result pins operands
                    let pin = match (want_and, vt) {
                        (true, Val::One) => Some(Val::One),
                        (false, Val::Zero) => Some(Val::Zero),
                        _ => None,
                    };
                    if let Some(p) = pin {
                        for op in [i, j] {
                            match state[op] {
                                Val::Unknown => {
                                    state[op] = p;
                                    changed = true;
                                }
                                v if v != p => return false,
                                _ => {}
                            }
                        }
                    }
                    // backward: result plus one operand pins the other
                    let other = |a: usize, b: usize, x: usize| if x == a { b } else { a };
                    if want_and && vt == Val::Zero
                        && (vi == Val::One || vj == Val::One) {
                            let x = if vi == Val::One { i } else { j };
                            let o = other(i, j, x);
                            match state[o] {
                                Val::Unknown => {
                                    state[o] = Val::Zero;
                                    changed = true;
                                }
                                Val::One => return false,
                                Val::Zero => {}
                            }
                        }
                    if !want_and && vt == Val::One
                        && (vi == Val::Zero || vj == Val::Zero) {
                            let x = if vi == Val::Zero { i } else { j };
                            let o = other(i, j, x);
                            match state[o] {
                                Val::Unknown => {
                                    state[o] = Val::One;
                                    changed = true;
                                }
                                Val::Zero => return false,
                                Val::One => {}
                            }
                        }
                }
            }
        }
    }
    true
}

fn satisfies_laws(lat: &FiniteLattice, v: &[bool]) -> bool {
    if v[lat.bottom()] || !v[lat.top()] {
        return false;
    }
    let n = lat.size();
    for i in 0..n {
        for j in i..n {
            if v[lat.meet(i, j)] != (v[i] && v[j]) || v[lat.join(i, j)] != (v[i] || v[j]) {
                return false;
            }
        }
    }
    true
}

fn dfs(lat: &FiniteLattice, state: Vec<Val>, out: &mut Vec<TwoValuedPoint>) {
    match state.iter().position(|&v| v == Val::Unknown) {
        None => {
            let values: Vec<bool> = state.iter().map(|&v| v == Val::One).collect();
            // full re-check; propagation is sound but verify anyway
            if satisfies_laws(lat, &values) {
                out.push(TwoValuedPoint { values });
            }
        }
        Some(i) => {
            for guess in [Val::Zero, Val::One] {
                let mut next = state.clone();
                next[i] = guess;
                if propagate(lat, &mut next) {
                    dfs(lat, next, out);
                }
            }
        }
    }
}

/// Enumerates all 2-valued points of the lattice, duplicate-free and
/// sorted lexicographically on the bit vector in element order.
pub fn enumerate_points(lat: &FiniteLattice) -> Spectrum {
    // bottom = top means 0 = 1 in the quotient ring: the zero ring.
    if lat.bottom() == lat.top() {
        return Spectrum { points: Vec::new() };
    }
    let mut state = vec![Val::Unknown; lat.size()];
    state[lat.bottom()] = Val::Zero;
    state[lat.top()] = Val::One;
    let mut points = Vec::new();
    if propagate(lat, &mut state) {
        dfs(lat, state, &mut points);
    }
    points.sort();
    points.dedup();
    Spectrum { points }
}

/// The measurability n(X): the number of 2-valued points.
pub fn measurability(lat: &FiniteLattice) -> usize {
    enumerate_points(lat).len()
}

/// The permutation induced on point indices by an automorphism g:
/// sigma(i) is the index of the point x -> point_i(g(x)).
pub fn point_action(
    lat: &FiniteLattice,
    g: &LatticeMorphism,
    spec: &Spectrum,
) -> Result<Vec<usize>> {
    if !g.is_automorphism() || g.source != *lat {
        return Err(Error::NotAnAutomorphism(
            "point_action requires an automorphism of the given lattice".into(),
        ));
    }
    let mut sigma = Vec::with_capacity(spec.len());
    let mut seen = vec![false; spec.len()];
    for p in spec.points() {
        let values: Vec<bool> = (0..lat.size()).map(|x| p.value(g.apply(x))).collect();
        let idx = spec.index_of(&values).ok_or_else(|| {
            Error::NotAnAutomorphism("automorphism does not permute the spectrum".into())
        })?;
        if seen[idx] {
            return Err(Error::NotAnAutomorphism("point action is not bijective".into()));
        }
        seen[idx] = true;
        sigma.push(idx);
    }
    Ok(sigma)
}
