//! Finite bounded lattices: validated construction from cover relations,
//! standard families (chains, powersets), products, morphisms and
//! isomorphism testing by canonical form.

use crate::error::{Error, Result};

/// Default cap on the number of elements of a constructed lattice.
pub const DEFAULT_ELEMENT_CAP: usize = 4096;

/// A finite bounded lattice.
///
/// Elements are identified by their positional index; names are kept only
/// for input and output. The order relation and the meet/join tables are
/// precomputed and validated at construction, so every value of this type
/// is a genuine bounded lattice. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    elements: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Number of elements.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.size() + j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.size() + j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Meet of a non-empty set of elements.
    pub fn meet_all(&self, xs: &[usize]) -> usize {
        xs.iter().skip(1).fold(xs[0], |acc, &x| self.meet(acc, x))
    }

    /// Join of a non-empty set of elements.
    pub fn join_all(&self, xs: &[usize]) -> usize {
        xs.iter().skip(1).fold(xs[0], |acc, &x| self.join(acc, x))
    }

    /// The cover pairs (a, b) with a covered by b, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let strictly_between = (0..n).any(|c| {
                    c != a && c != b && self.leq(a, c) && self.leq(c, b)
                });
                if !strictly_between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Builds a lattice from element names and cover pairs given by name.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::NotBounded("empty element set".into()));
        }
        if n > DEFAULT_ELEMENT_CAP {
            return Err(Error::SizeCapExceeded { size: n, cap: DEFAULT_ELEMENT_CAP });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateElement(a.clone()));
            }
        }
        let idx = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        // Strict order as the transitive closure of the cover relation.
        let mut strict = vec![false; n * n];
        for (a, b) in covers {
            let (a, b) = (idx(a.as_ref())?, idx(b.as_ref())?);
            strict[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if strict[i * n + k] {
                    for j in 0..n {
                        if strict[k * n + j] {
                            strict[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if strict[i * n + i] {
                return Err(Error::CycleInCovers(names[i].clone()));
            }
        }
        let mut leq = strict;
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Self::from_leq(names, leq)
    }

    /// Builds a lattice from a full order relation, validating everything.
    pub(crate) fn from_leq(elements: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = elements.len();
        debug_assert_eq!(leq.len(), n * n);

        let bottoms: Vec<usize> = (0..n).filter(|&b| (0..n).all(|x| leq[b * n + x])).collect();
        let bottom = match bottoms.as_slice() {
            [b] => *b,
            _ => return Err(Error::NotBounded("no unique minimum".into())),
        };
        let tops: Vec<usize> = (0..n).filter(|&t| (0..n).all(|x| leq[x * n + t])).collect();
        let top = match tops.as_slice() {
            [t] => *t,
            _ => return Err(Error::NotBounded("no unique maximum".into())),
        };

        // Down-sets and up-sets as bitsets, one u64 block row per element.
        let words = n.div_ceil(64);
        let mut down = vec![0u64; n * words];
        let mut up = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if leq[j * n + i] {
                    down[i * words + j / 64] |= 1 << (j % 64);
                }
                if leq[i * n + j] {
                    up[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let popcount = |set: &[u64]| set.iter().map(|w| w.count_ones() as usize).sum::<usize>();

        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        let mut buf = vec![0u64; words];
        for i in 0..n {
            for j in i..n {
                // meet: greatest element of down(i) & down(j)
                for w in 0..words {
                    buf[w] = down[i * words + w] & down[j * words + w];
                }
                let total = popcount(&buf);
                let mut found = None;
                for k in 0..n {
                    if buf[k / 64] >> (k % 64) & 1 == 1 {
                        let covered = (0..words)
                            .map(|w| (down[k * words + w] & buf[w]).count_ones() as usize)
                            .sum::<usize>();
                        if covered == total {
                            found = Some(k);
                            break;
                        }
                    }
                }
                let m = found.ok_or_else(|| Error::NotALattice {
                    kind: "meet",
                    a: elements[i].clone(),
                    b: elements[j].clone(),
                })?;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
                // join: least element of up(i) & up(j)
                for w in 0..words {
                    buf[w] = up[i * words + w] & up[j * words + w];
                }
                let total = popcount(&buf);
                let mut found = None;
                for k in 0..n {
                    if buf[k / 64] >> (k % 64) & 1 == 1 {
                        let covering = (0..words)
                            .map(|w| (up[k * words + w] & buf[w]).count_ones() as usize)
                            .sum::<usize>();
                        if covering == total {
                            found = Some(k);
                            break;
                        }
                    }
                }
                let jn = found.ok_or_else(|| Error::NotALattice {
                    kind: "join",
                    a: elements[i].clone(),
                    b: elements[j].clone(),
                })?;
                join[i * n + j] = jn;
                join[j * n + i] = jn;
            }
        }

        Ok(FiniteLattice { elements, leq, meet, join, bottom, top })
    }

    /// The chain 0 <= 1 <= ... <= n (n + 1 elements).
    pub fn chain(n: usize) -> Self {
        let elements: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let m = n + 1;
        let mut leq = vec![false; m * m];
        let mut meet = vec![0usize; m * m];
        let mut join = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = i <= j;
                meet[i * m + j] = i.min(j);
                join[i * m + j] = i.max(j);
            }
        }
        FiniteLattice { elements, leq, meet, join, bottom: 0, top: n }
    }

    /// The powerset of an n-element set, ordered by inclusion.
    pub fn powerset(n: usize) -> Result<Self> {
        if n >= 12 {
            return Err(Error::SizeCapExceeded { size: 1 << n, cap: DEFAULT_ELEMENT_CAP });
        }
        let m = 1usize << n;
        let subset_name = |s: usize| -> String {
            if s == 0 {
                return "e".to_string();
            }
            let parts: Vec<String> =
                (0..n).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("e{}", parts.join("_"))
        };
        let elements: Vec<String> = (0..m).map(subset_name).collect();
        let mut leq = vec![false; m * m];
        let mut meet = vec![0usize; m * m];
        let mut join = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = i & j == i;
                meet[i * m + j] = i & j;
                join[i * m + j] = i | j;
            }
        }
        Ok(FiniteLattice { elements, leq, meet, join, bottom: 0, top: m - 1 })
    }

    /// Product lattice with coordinate-wise order, meet and join.
    pub fn product(x: &FiniteLattice, y: &FiniteLattice) -> Result<Self> {
        let (nx, ny) = (x.size(), y.size());
        let n = nx.checked_mul(ny).filter(|&n| n <= DEFAULT_ELEMENT_CAP).ok_or(
            Error::SizeCapExceeded { size: nx.saturating_mul(ny), cap: DEFAULT_ELEMENT_CAP },
        )?;
        let mut elements: Vec<String> = (0..n)
            .map(|k| format!("{}_{}", x.name(k / ny), y.name(k % ny)))
            .collect();
        // Pair names can collide when component names contain underscores.
        {
            let mut sorted = elements.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                elements = (0..n).map(|k| format!("p{k}")).collect();
            }
        }
        let mut leq = vec![false; n * n];
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            let (ax, ay) = (a / ny, a % ny);
            for b in 0..n {
                let (bx, by) = (b / ny, b % ny);
                leq[a * n + b] = x.leq(ax, bx) && y.leq(ay, by);
                meet[a * n + b] = x.meet(ax, bx) * ny + y.meet(ay, by);
                join[a * n + b] = x.join(ax, bx) * ny + y.join(ay, by);
            }
        }
        Ok(FiniteLattice {
            elements,
            leq,
            meet,
            join,
            bottom: x.bottom() * ny + y.bottom(),
            top: x.top() * ny + y.top(),
        })
    }

    /// Complement of an element, if one exists.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.size())
            .find(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
    }

    pub fn is_complemented(&self) -> bool {
        (0..self.size()).all(|x| self.complement(x).is_some())
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Complemented and distributive.
    pub fn is_boolean(&self) -> bool {
        self.is_complemented() && self.is_distributive()
    }

    /// All lattice automorphisms, as index maps, by brute force over
    /// class-respecting permutations. Intended for small lattices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let classes = refine_classes(self);
        let mut out = Vec::new();
        let mut map = vec![usize::MAX; self.size()];
        search_automorphisms(self, &classes, 0, &mut map, &mut out);
        out
    }

    /// Canonical form of the order relation: the lexicographically least
    /// relabelled leq matrix over all class-respecting permutations.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.size();
        let classes = refine_classes(self);
        // Order positions by class; permutations permute within classes only.
        let mut slots: Vec<Vec<usize>> = Vec::new();
        {
            let mut by_class: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
            for (i, &c) in classes.iter().enumerate() {
                by_class.entry(c).or_default().push(i);
            }
            for (_, v) in by_class {
                slots.push(v);
            }
        }
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        permute_within_classes(&slots, 0, &mut perm, &mut |perm| {
            // perm[k] = original index placed at canonical position k
            let mut mat = vec![false; n * n];
            for a in 0..n {
                for b in 0..n {
                    mat[a * n + b] = self.leq(perm[a], perm[b]);
                }
            }
            match &best {
                Some(b) if *b <= mat => {}
                _ => best = Some(mat),
            }
        });
        best.expect("non-empty lattice")
    }
}

fn permute_within_classes(
    slots: &[Vec<usize>],
    k: usize,
    perm: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k == slots.len() {
        visit(perm);
        return;
    }
    let mut items = slots[k].clone();
    heap_permutations(&mut items, perm, slots, k, visit);
}

fn heap_permutations(
    items: &mut Vec<usize>,
    perm: &mut Vec<usize>,
    slots: &[Vec<usize>],
    k: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    // Simple recursive permutation generator over `items`.
    fn rec(
        items: &mut Vec<usize>,
        pos: usize,
        perm: &mut Vec<usize>,
        slots: &[Vec<usize>],
        k: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if pos == items.len() {
            let before = perm.len();
            perm.extend_from_slice(items);
            permute_within_classes(slots, k + 1, perm, visit);
            perm.truncate(before);
            return;
        }
        for i in pos..items.len() {
            items.swap(pos, i);
            rec(items, pos + 1, perm, slots, k, visit);
            items.swap(pos, i);
        }
    }
    rec(items, 0, perm, slots, k, visit);
}

/// Iterative partition refinement on (down-degree, up-degree) signatures.
/// Returns a class id per element; classes are invariant under isomorphism.
fn refine_classes(lat: &FiniteLattice) -> Vec<usize> {
    let n = lat.size();
    let mut classes: Vec<usize> = (0..n)
        .map(|i| {
            let down = (0..n).filter(|&j| lat.leq(j, i)).count();
            let up = (0..n).filter(|&j| lat.leq(i, j)).count();
            down * (n + 1) + up
        })
        .collect();
    normalize(&mut classes);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut below: Vec<usize> =
                    (0..n).filter(|&j| lat.leq(j, i)).map(|j| classes[j]).collect();
                let mut above: Vec<usize> =
                    (0..n).filter(|&j| lat.leq(i, j)).map(|j| classes[j]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (classes[i], below, above)
            })
            .collect();
        let mut uniq: Vec<&(usize, Vec<usize>, Vec<usize>)> = sigs.iter().collect();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> =
            sigs.iter().map(|s| uniq.binary_search(&s).unwrap()).collect();
        if next == classes {
            return classes;
        }
        classes = next;
    }
}

fn normalize(classes: &mut [usize]) {
    let mut uniq: Vec<usize> = classes.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    for c in classes.iter_mut() {
        *c = uniq.binary_search(c).unwrap();
    }
}

#[allow(clippy::needless_range_loop)]
fn search_automorphisms(
    lat: &FiniteLattice,
    classes: &[usize],
    i: usize,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = lat.size();
    if i == n {
        out.push(map.clone());
        return;
    }
    'cand: for j in 0..n {
        if classes[j] != classes[i] || map[..i].contains(&j) {
            continue;
        }
        for k in 0..i {
            if lat.leq(i, k) != lat.leq(j, map[k]) || lat.leq(k, i) != lat.leq(map[k], j) {
                continue 'cand;
            }
        }
        map[i] = j;
        search_automorphisms(lat, classes, i + 1, map, out);
        map[i] = usize::MAX;
    }
}

/// Decides order-isomorphism of two finite lattices by canonical form.
pub fn are_isomorphic(x: &FiniteLattice, y: &FiniteLattice) -> bool {
    x.size() == y.size() && x.canonical_form() == y.canonical_form()
}

/// A map between two bounded lattices, by element index.
#[derive(Debug, Clone)]
pub struct LatticeMorphism {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    pub map: Vec<usize>,
}

impl LatticeMorphism {
    pub fn new(source: FiniteLattice, target: FiniteLattice, map: Vec<usize>) -> Self {
        LatticeMorphism { source, target, map }
    }

    pub fn identity(lat: &FiniteLattice) -> Self {
        let map = (0..lat.size()).collect();
        LatticeMorphism { source: lat.clone(), target: lat.clone(), map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// True iff meets, joins, bottom and top are preserved pointwise.
    pub fn is_morphism(&self) -> bool {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        if f.len() != s.size() || f.iter().any(|&y| y >= t.size()) {
            return false;
        }
        if f[s.bottom()] != t.bottom() || f[s.top()] != t.top() {
            return false;
        }
        for i in 0..s.size() {
            for j in 0..s.size() {
                if f[s.meet(i, j)] != t.meet(f[i], f[j])
                    || f[s.join(i, j)] != t.join(f[i], f[j])
                {
                    return false;
                }
            }
        }
        true
    }

    /// True iff this is a bijective morphism of a lattice onto itself.
    pub fn is_automorphism(&self) -> bool {
        let n = self.source.size();
        if self.target.size() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.map {
            if y >= n || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        self.is_morphism()
    }
}

/// The lattice M3: three incomparable atoms between bottom and top.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "x1", "x2", "x3", "1"],
        &[("0", "x1"), ("0", "x2"), ("0", "x3"), ("x1", "1"), ("x2", "1"), ("x3", "1")],
    )
    .expect("M3 is a lattice")
}

/// The diamond M2: two incomparable atoms between bottom and top.
pub fn m2() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .expect("M2 is a lattice")
}

/// The pentagon N5: 0 < a < b < 1 and 0 < c < 1.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
    .expect("N5 is a lattice")
}
