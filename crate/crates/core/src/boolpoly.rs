//! Boolean polynomial arithmetic over GF(2) with square-free monomials,
//! and a Buchberger engine for the lattice relation ideal.
//!
//! Arithmetic takes place in the quotient by the field equations
//! x^2 = x, so monomials are sets of variables and addition is symmetric
//! difference. Besides classical S-polynomial pairs, the completion loop
//! reduces x*g for every variable x occurring in g; this stands in for
//! the S-polynomials against the implicit field equations and is what
//! makes the square-free computation complete.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::FiniteLattice;

/// A square-free monomial: a sorted set of variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BoolMonomial {
    vars: Vec<u32>,
}

impl BoolMonomial {
    pub fn one() -> Self {
        BoolMonomial { vars: Vec::new() }
    }

    pub fn var(i: usize) -> Self {
        BoolMonomial { vars: vec![i as u32] }
    }

    pub fn from_vars(mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        BoolMonomial { vars }
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    /// Square-free product: union of variable sets.
    pub fn mul(&self, other: &BoolMonomial) -> BoolMonomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut a, mut b) = (self.vars.iter().peekable(), other.vars.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => match x.cmp(&y) {
                    Ordering::Less => {
                        vars.push(x);
                        a.next();
                    }
                    Ordering::Greater => {
                        vars.push(y);
                        b.next();
                    }
                    Ordering::Equal => {
                        vars.push(x);
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    vars.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    vars.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        BoolMonomial { vars }
    }

    pub fn divides(&self, other: &BoolMonomial) -> bool {
        let mut it = other.vars.iter();
        self.vars.iter().all(|v| it.any(|w| w == v))
    }

    /// The set difference other \ self (the cofactor when self divides other).
    pub fn quotient(&self, other: &BoolMonomial) -> BoolMonomial {
        BoolMonomial {
            vars: other.vars.iter().filter(|v| !self.vars.contains(v)).copied().collect(),
        }
    }
}

/// Degree-reverse-lexicographic order with variable order = declaration order.
impl Ord for BoolMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // equal degree: scan exponent vectors from the highest variable down;
        // at the first difference, the monomial containing the variable is smaller
        let (mut a, mut b) = (self.vars.iter().rev(), other.vars.iter().rev());
        loop {
            match (a.next(), b.next()) {
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Equal => continue,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Less => return Ordering::Greater,
                },
                (None, None) => return Ordering::Equal,
                // unreachable for equal degrees, but keep it total
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for BoolMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over GF(2) with square-free monomials; term presence = 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct BoolPoly {
    terms: BTreeSet<BoolMonomial>,
}

impl BoolPoly {
    pub fn zero() -> Self {
        BoolPoly::default()
    }

    pub fn one() -> Self {
        BoolPoly::from_terms(vec![BoolMonomial::one()])
    }

    pub fn var(i: usize) -> Self {
        BoolPoly::from_terms(vec![BoolMonomial::var(i)])
    }

    pub fn from_terms(terms: Vec<BoolMonomial>) -> Self {
        let mut p = BoolPoly::zero();
        for t in terms {
            p.toggle(t);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &BoolMonomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&BoolMonomial> {
        self.terms.iter().next_back()
    }

    fn toggle(&mut self, t: BoolMonomial) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    /// Addition over GF(2): symmetric difference of term sets.
    pub fn add(&self, other: &BoolPoly) -> BoolPoly {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &BoolMonomial) -> BoolPoly {
        let mut out = BoolPoly::zero();
        for t in &self.terms {
            out.toggle(t.mul(m));
        }
        out
    }

    pub fn mul(&self, other: &BoolPoly) -> BoolPoly {
        let mut out = BoolPoly::zero();
        for t in &other.terms {
            for s in &self.terms {
                out.toggle(s.mul(t));
            }
        }
        out
    }

    /// Evaluates at a {0,1}-assignment of the variables.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        let mut acc = false;
        for t in &self.terms {
            if t.vars().iter().all(|&v| assignment[v as usize]) {
                acc = !acc;
            }
        }
        acc
    }

    /// Renders as a sorted monomial sum, e.g. `a*b + c + 1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|t| {
                if t.is_one() {
                    "1".to_string()
                } else {
                    t.vars()
                        .iter()
                        .map(|&v| names[v as usize].as_str())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// The lattice relation ideal of F2[X]: one variable per element, with
/// generators 0_X, 1_X + 1 and, for every pair, the meet and join relations.
#[derive(Debug, Clone)]
pub struct MeasureIdeal {
    generators: Vec<BoolPoly>,
    num_vars: usize,
}

impl MeasureIdeal {
    pub fn generators(&self) -> &[BoolPoly] {
        &self.generators
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

/// Builds the relation ideal of a lattice: 0_X, 1_X + 1, and for every
/// unordered pair x, y the relations x∧y + xy and x∨y + x + y + xy.
pub fn build_ideal(lat: &FiniteLattice) -> MeasureIdeal {
    let n = lat.size();
    let mut seen = BTreeSet::new();
    let mut generators = Vec::new();
    let mut push = |p: BoolPoly| {
        if !p.is_zero() && seen.insert(p.clone()) {
            generators.push(p);
        }
    };
    push(BoolPoly::var(lat.bottom()));
    push(BoolPoly::var(lat.top()).add(&BoolPoly::one()));
    for i in 0..n {
        for j in i..n {
            let xy = BoolPoly::var(i).mul(&BoolPoly::var(j));
            push(BoolPoly::var(lat.meet(i, j)).add(&xy));
            push(
                BoolPoly::var(lat.join(i, j))
                    .add(&BoolPoly::var(i))
                    .add(&BoolPoly::var(j))
                    .add(&xy),
            );
        }
    }
    MeasureIdeal { generators, num_vars: n }
}

/// A reduced Gröbner basis under degrevlex, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    basis: Vec<BoolPoly>,
    num_vars: usize,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[BoolPoly] {
        &self.basis
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0] == BoolPoly::one()
    }
}

fn reduce(p: &BoolPoly, basis: &[BoolPoly]) -> BoolPoly {
    let mut rem = BoolPoly::zero();
    let mut work = p.clone();
    'outer: while let Some(lt) = work.leading_term().cloned() {
        for g in basis {
            let glt = g.leading_term().expect("basis polynomials are nonzero");
            if glt.divides(&lt) {
                let cofactor = glt.quotient(&lt);
                work = work.add(&g.mul_monomial(&cofactor));
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        rem.toggle(lt.clone());
        work.toggle(lt);
    }
    rem
}

fn s_poly(f: &BoolPoly, g: &BoolPoly) -> BoolPoly {
    let (lf, lg) = (f.leading_term().unwrap(), g.leading_term().unwrap());
    let lcm = lf.mul(lg);
    f.mul_monomial(&lf.quotient(&lcm)).add(&g.mul_monomial(&lg.quotient(&lcm)))
}

/// Buchberger's algorithm with normal pair selection (least lcm degree
/// first) and the product and chain elimination criteria, extended with
/// variable-multiple pairs for the implicit field equations.
pub fn buchberger(ideal: &MeasureIdeal) -> GroebnerBasis {
    let mut basis: Vec<BoolPoly> = Vec::new();
    for g in ideal.generators() {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r);
        }
    }

    // (i, j) classical pairs; (i, usize::MAX tagged with var) field pairs
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct Pair {
        lcm_degree: usize,
        lcm: BoolMonomial,
        kind: PairKind,
    }
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum PairKind {
        Classical(usize, usize),
        Field(usize, u32),
    }

    let mut queue: BTreeSet<Pair> = BTreeSet::new();
    let enqueue_for = |queue: &mut BTreeSet<Pair>, basis: &[BoolPoly], k: usize| {
        let gk = &basis[k];
        let lk = gk.leading_term().unwrap();
        for (i, gi) in basis.iter().enumerate().take(k) {
            let li = gi.leading_term().unwrap();
            let lcm = li.mul(lk);
            queue.insert(Pair {
                lcm_degree: lcm.degree(),
                lcm,
                kind: PairKind::Classical(i, k),
            });
        }
        for t in gk.terms() {
            for &v in t.vars() {
                let lcm = lk.mul(&BoolMonomial::var(v as usize));
                queue.insert(Pair {
                    lcm_degree: lcm.degree(),
                    lcm,
                    kind: PairKind::Field(k, v),
                });
            }
        }
    };
    for k in 0..basis.len() {
        enqueue_for(&mut queue, &basis, k);
    }

    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while let Some(pair) = queue.pop_first() {
        let s = match pair.kind {
            PairKind::Classical(i, j) => {
                done.insert((i, j));
                let (li, lj) =
                    (basis[i].leading_term().unwrap(), basis[j].leading_term().unwrap());
                // product criterion: coprime leading terms
                if li.degree() + lj.degree() == pair.lcm_degree {
                    continue;
                }
                // chain criterion
                let chained = basis.iter().enumerate().any(|(k, gk)| {
                    k != i
                        && k != j
                        && gk.leading_term().unwrap().divides(&pair.lcm)
                        && done.contains(&(i.min(k), i.max(k)))
                        && done.contains(&(j.min(k), j.max(k)))
                });
                if chained {
                    continue;
                }
                s_poly(&basis[i], &basis[j])
            }
            PairKind::Field(i, v) => basis[i].mul_monomial(&BoolMonomial::var(v as usize)),
        };
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            basis.push(r);
            enqueue_for(&mut queue, &basis, basis.len() - 1);
        }
    }

    // minimalize: drop polynomials whose leading term another leading term divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j]
                    .leading_term()
                    .unwrap()
                    .divides(basis[i].leading_term().unwrap())
                && (basis[j].leading_term().unwrap() != basis[i].leading_term().unwrap()
                    || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<BoolPoly> =
        basis.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(g, _)| g).collect();
    // auto-reduce tails
    let mut reduced: Vec<BoolPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<BoolPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(r);
        }
    }
    reduced.sort_by(|a, b| a.leading_term().cmp(&b.leading_term()));
    GroebnerBasis { basis: reduced, num_vars: ideal.num_vars() }
}

/// Unique remainder of p modulo the reduced basis; zero iff p lies in the ideal.
pub fn normal_form(p: &BoolPoly, gb: &GroebnerBasis) -> BoolPoly {
    reduce(p, &gb.basis)
}

/// All square-free monomials not divisible by any leading term, in
/// ascending degrevlex order. Their count is dim F2[X]/I = n(X).
pub fn standard_monomials(gb: &GroebnerBasis) -> Vec<BoolMonomial> {
    let n = gb.num_vars;
    assert!(n <= 24, "standard monomial enumeration capped at 24 variables");
    let lts: Vec<&BoolMonomial> =
        gb.basis.iter().map(|g| g.leading_term().unwrap()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let m = BoolMonomial::from_vars(
            (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect(),
        );
        if !lts.iter().any(|lt| lt.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Seeded randomized check that every element of the quotient is
/// idempotent. Returns the first witness polynomial with
/// normal_form(p^2) != normal_form(p), or None if all trials pass.
pub fn boolean_ring_witness(
    gb: &GroebnerBasis,
    trials: usize,
    seed: u64,
) -> Option<BoolPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let p = random_poly(gb.num_vars, &mut rng);
        let nf = normal_form(&p, gb);
        if normal_form(&p.mul(&p), gb) != nf {
            return Some(p);
        }
    }
    None
}

pub fn is_boolean_ring(gb: &GroebnerBasis, trials: usize, seed: u64) -> bool {
    boolean_ring_witness(gb, trials, seed).is_none()
}

/// A random polynomial with a handful of random square-free terms.
pub fn random_poly<R: Rng>(num_vars: usize, rng: &mut R) -> BoolPoly {
    let nterms = rng.gen_range(0..=4);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let deg = rng.gen_range(0..=num_vars.min(3));
        let vars: Vec<u32> =
            (0..deg).map(|_| rng.gen_range(0..num_vars) as u32).collect();
        terms.push(BoolMonomial::from_vars(vars));
    }
    BoolPoly::from_terms(terms)
}
