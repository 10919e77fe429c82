//! Named example lattices with known measurability, exhaustive enumeration
//! of small lattices up to isomorphism, and the per-size measurability
//! table.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{m2, m3, n5, FiniteLattice};
use crate::spectrum::measurability;

pub const ENUMERATION_CAP: usize = 8;

/// A named lattice with its known measurability, when one is on record.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub lattice: FiniteLattice,
    pub expected_n: Option<usize>,
}

/// The hexagon-like 7-element lattice with two incomparable "mid" layers;
/// its measurability is 2.
pub fn hexagon9() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "d", "e", "a", "b", "c", "1"],
        &[
            ("0", "d"),
            ("0", "e"),
            ("d", "a"),
            ("d", "b"),
            ("e", "b"),
            ("e", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .expect("hexagon9 is a lattice")
}

/// The lattice with an M3 block stacked inside one branch and a single
/// element `y` in the other; every x_i equals 1 - y in the measure ring,
/// so the measurability is 2.
pub fn x7() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "x0", "y", "x1", "x2", "x3", "x4", "1"],
        &[
            ("0", "x0"),
            ("0", "y"),
            ("x0", "x1"),
            ("x0", "x2"),
            ("x0", "x3"),
            ("x1", "x4"),
            ("x2", "x4"),
            ("x3", "x4"),
            ("x4", "1"),
            ("y", "1"),
        ],
    )
    .expect("x7 is a lattice")
}

/// Looks up a named lattice; `chain(k)` and `powerset(k)` take a
/// parameter.
pub fn named(name: &str) -> Result<CatalogEntry> {
    let entry = |name: &str, lattice: FiniteLattice, expected_n: usize| CatalogEntry {
        name: name.to_string(),
        lattice,
        expected_n: Some(expected_n),
    };
    if let Some(arg) = name.strip_prefix("chain(").and_then(|s| s.strip_suffix(')')) {
        let k: usize =
            arg.parse().map_err(|_| Error::UnknownName(name.to_string()))?;
        return Ok(entry(name, FiniteLattice::chain(k), k));
    }
    if let Some(arg) = name.strip_prefix("powerset(").and_then(|s| s.strip_suffix(')')) {
        let k: usize =
            arg.parse().map_err(|_| Error::UnknownName(name.to_string()))?;
        return Ok(entry(name, FiniteLattice::powerset(k)?, k));
    }
    match name {
        "m3" => Ok(entry(name, m3(), 0)),
        "m2" => Ok(entry(name, m2(), 2)),
        "n5" => Ok(entry(name, n5(), 2)),
        "hexagon9" => Ok(entry(name, hexagon9(), 2)),
        "x7" => Ok(entry(name, x7(), 2)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// All fixed-name catalog entries (used by tests and the CLI).
pub fn all_named() -> Vec<CatalogEntry> {
    ["m3", "m2", "n5", "hexagon9", "x7"]
        .iter()
        .map(|n| named(n).expect("known name"))
        .collect()
}

/// Enumerates all bounded lattices with `size` elements up to isomorphism,
/// in a deterministic order.
///
/// Elements are labelled so that index order is a linear extension with the
/// bottom first and the top last; only the order relations among the middle
/// elements are free. Candidates failing transitivity or the lattice axioms
/// are discarded, and isomorphic duplicates are removed by canonical form.
pub fn enumerate_all(size: usize) -> Result<Vec<FiniteLattice>> {
    if size > ENUMERATION_CAP {
        return Err(Error::CapExceeded { size, cap: ENUMERATION_CAP });
    }
    if size == 0 {
        return Ok(Vec::new());
    }
    let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
    if size == 1 {
        return Ok(vec![FiniteLattice::from_covers::<String>(&names, &[]).unwrap()]);
    }
    let mid: Vec<(usize, usize)> = (1..size - 1)
        .flat_map(|i| (i + 1..size - 1).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<FiniteLattice> = Vec::new();
    let mut seen: Vec<Vec<bool>> = Vec::new();
    for choice in 0u32..1 << mid.len() {
        let mut leq = vec![false; size * size];
        let set = |leq: &mut Vec<bool>, a: usize, b: usize| leq[a * size + b] = true;
        for i in 0..size {
            set(&mut leq, i, i);
            set(&mut leq, 0, i);
            set(&mut leq, i, size - 1);
        }
        for (bit, &(i, j)) in mid.iter().enumerate() {
            if choice >> bit & 1 == 1 {
                set(&mut leq, i, j);
            }
        }
        // transitivity (index order is already a linear extension)
        let transitive = (0..size).all(|a| {
            (0..size).all(|b| {
                !leq[a * size + b]
                    || (0..size).all(|c| !leq[b * size + c] || leq[a * size + c])
            })
        });
        if !transitive {
            continue;
        }
        let Ok(lat) = FiniteLattice::from_leq(names.clone(), leq) else {
            continue;
        };
        let canon = lat.canonical_form();
        if !seen.contains(&canon) {
            seen.push(canon);
            out.push(lat);
        }
    }
    Ok(out)
}

/// Draws a random bounded lattice with exactly `size` elements. Random
/// order bits among the middle elements are closed transitively; draws
/// failing the lattice axioms are rejected and retried. Deterministic for
/// a given RNG state.
pub fn random_lattice<R: rand::Rng>(size: usize, rng: &mut R) -> FiniteLattice {
    assert!(size >= 1);
    let names: Vec<String> = (0..size).map(|i| format!("e{i}")).collect();
    if size <= 2 {
        return FiniteLattice::chain(size - 1);
    }
    loop {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
            leq[i] = true; // row 0: bottom below everything
            leq[i * size + size - 1] = true;
        }
        for i in 1..size - 1 {
            for j in i + 1..size - 1 {
                if rng.gen_bool(0.4) {
                    leq[i * size + j] = true;
                }
            }
        }
        // transitive closure (index order is a linear extension)
        for b in 0..size {
            for a in 0..size {
                if leq[a * size + b] {
                    for c in 0..size {
                        if leq[b * size + c] {
                            leq[a * size + c] = true;
                        }
                    }
                }
            }
        }
        if let Ok(lat) = FiniteLattice::from_leq(names.clone(), leq) {
            return lat;
        }
    }
}

/// Short deterministic identifier for a lattice: size plus the canonical
/// order matrix packed as hex.
pub fn canonical_id(lat: &FiniteLattice) -> String {
    let bits = lat.canonical_form();
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    format!("L{}-{hex}", lat.size())
}

/// The per-size multisets of measurabilities over all lattices of sizes
/// 1..=max_size (each multiset sorted ascending).
pub fn table(max_size: usize) -> Result<BTreeMap<usize, Vec<usize>>> {
    let mut out = BTreeMap::new();
    for size in 1..=max_size {
        let mut ns: Vec<usize> =
            enumerate_all(size)?.iter().map(measurability).collect();
        ns.sort_unstable();
        out.insert(size, ns);
    }
    Ok(out)
}

/// The known per-size measurability multisets for sizes 1..=6 (sorted
/// ascending), used as the reference for `table`.
pub fn reference_table() -> BTreeMap<usize, Vec<usize>> {
    let mut m = BTreeMap::new();
    m.insert(1, vec![0]);
    m.insert(2, vec![1]);
    m.insert(3, vec![2]);
    m.insert(4, vec![2, 3]);
    m.insert(5, vec![0, 2, 3, 3, 4]);
    m.insert(6, vec![0, 0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 4, 4, 4, 5]);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::are_isomorphic;

    #[test]
    fn named_values() {
        for (name, n) in [
            ("m3", 0),
            ("m2", 2),
            ("n5", 2),
            ("hexagon9", 2),
            ("x7", 2),
            ("chain(5)", 5),
            ("powerset(3)", 3),
        ] {
            let e = named(name).unwrap();
            assert_eq!(e.expected_n, Some(n), "{name}");
            assert_eq!(measurability(&e.lattice), n, "{name}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(named("dodecahedron"), Err(Error::UnknownName(_))));
        assert!(matches!(named("chain(x)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn hexagon9_shape() {
        let lat = hexagon9();
        assert_eq!(lat.size(), 7);
        let (d, e) = (lat.index_of("d").unwrap(), lat.index_of("e").unwrap());
        let b = lat.index_of("b").unwrap();
        assert_eq!(lat.join(d, e), b);
        assert_eq!(lat.meet(d, e), lat.bottom());
    }

    #[test]
    fn x7_shape() {
        let lat = x7();
        assert_eq!(lat.size(), 8);
        let y = lat.index_of("y").unwrap();
        for xi in ["x0", "x1", "x2", "x3", "x4"] {
            let x = lat.index_of(xi).unwrap();
            assert_eq!(lat.meet(x, y), lat.bottom());
            assert_eq!(lat.join(x, y), lat.top());
        }
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> =
            (1..=6).map(|s| enumerate_all(s).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn enumeration_is_up_to_isomorphism() {
        let all = enumerate_all(5).unwrap();
        for i in 0..all.len() {
            for j in 0..i {
                assert!(!are_isomorphic(&all[i], &all[j]));
            }
        }
    }

    #[test]
    fn enumeration_contains_known_size5_lattices() {
        let all = enumerate_all(5).unwrap();
        for target in [m3(), n5(), FiniteLattice::chain(4)] {
            assert!(all.iter().any(|l| are_isomorphic(l, &target)));
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_all(6).unwrap();
        let b = enumerate_all(6).unwrap();
        let ids: Vec<String> = a.iter().map(canonical_id).collect();
        assert_eq!(ids, b.iter().map(canonical_id).collect::<Vec<_>>());
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_all(9),
            Err(Error::CapExceeded { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn size5_has_exactly_one_zero() {
        let ns: Vec<usize> =
            enumerate_all(5).unwrap().iter().map(measurability).collect();
        assert_eq!(ns.iter().filter(|&&n| n == 0).count(), 1);
    }

    #[test]
    fn random_lattices_are_valid_and_seeded() {
        use rand::{RngCore, SeedableRng};
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let size = 3 + (a.next_u32() as usize) % 8;
            let _ = b.next_u32();
            let la = random_lattice(size, &mut a);
            let lb = random_lattice(size, &mut b);
            assert_eq!(la.size(), size);
            assert!(are_isomorphic(&la, &lb));
        }
    }

    #[test]
    fn table_matches_reference() {
        assert_eq!(table(6).unwrap(), reference_table());
    }

    #[test]
    fn canonical_id_is_isomorphism_invariant() {
        let a = named("m2").unwrap().lattice;
        let b = FiniteLattice::from_covers(
            &["bot", "q", "p", "top"],
            &[("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")],
        )
        .unwrap();
        assert_eq!(canonical_id(&a), canonical_id(&b));
        assert_ne!(canonical_id(&a), canonical_id(&n5()));
    }
}
