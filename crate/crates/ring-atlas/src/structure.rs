//! Ideal-theoretic analysis: radical, annihilators, ideal lattice, center,
//! quotients, central idempotent splitting, and simple-block recognition.
//!
//! Everything here is a pure scan over the parent ring's tables. Element
//! sets are kept as sorted index vectors, so set identity is `Vec` equality
//! and membership is a binary search.

use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// Closure kind of a [`SubStructure`], strongest property first-class.
///
/// `AdditiveSubgroup` covers the one case the ideal kinds cannot: the
/// two-sided annihilator of a non-central element is closed under addition
/// but need not absorb multiplication on either side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubKind {
    AdditiveSubgroup,
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    Subring,
}

/// A distinguished subset of a ring's elements: an ideal, a subring, or an
/// additive subgroup, with the generators that witnessed it.
#[derive(Debug, Clone)]
pub struct SubStructure<'r> {
    parent: &'r FiniteRing,
    /// Sorted ascending; always contains `zero`.
    members: Vec<usize>,
    kind: SubKind,
    generators: Vec<usize>,
}

impl<'r> SubStructure<'r> {
    pub fn parent(&self) -> &'r FiniteRing {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn kind(&self) -> SubKind {
        self.kind
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Re-checks the closure properties promised by `kind` directly against
    /// the parent tables. Used by property tests; `true` for every value
    /// produced by this module.
    pub fn verify(&self) -> bool {
        let r = self.parent;
        if !self.contains(r.zero()) {
            return false;
        }
        for &a in &self.members {
            if !self.contains(r.neg(a)) {
                return false;
            }
            for &b in &self.members {
                if !self.contains(r.add(a, b)) {
                    return false;
                }
            }
        }
        let left_absorbing = || {
            self.members
                .iter()
                .all(|&a| (0..r.order()).all(|x| self.contains(r.mul(x, a))))
        };
        let right_absorbing = || {
            self.members
                .iter()
                .all(|&a| (0..r.order()).all(|x| self.contains(r.mul(a, x))))
        };
        let mult_closed = || {
            self.members
                .iter()
                .all(|&a| self.members.iter().all(|&b| self.contains(r.mul(a, b))))
        };
        match self.kind {
            SubKind::AdditiveSubgroup => true,
            SubKind::LeftIdeal => left_absorbing(),
            SubKind::RightIdeal => right_absorbing(),
            SubKind::TwoSidedIdeal => left_absorbing() && right_absorbing(),
            SubKind::Subring => mult_closed() && self.contains(r.one()),
        }
    }
}

/// Smallest additive subgroup containing `seeds` (sorted member list).
/// Finite order makes inverse closure automatic.
pub fn additive_closure(ring: &FiniteRing, seeds: &[usize]) -> Vec<usize> {
    let n = ring.order();
    let mut in_set = vec![false; n];
    in_set[ring.zero()] = true;
    let mut frontier: Vec<usize> = vec![ring.zero()];
    for &s in seeds {
        if !in_set[s] {
            in_set[s] = true;
            frontier.push(s);
        }
    }
    // close under +: repeatedly add sums of members with frontier elements
    let mut i = 0;
    while i < frontier.len() {
        let a = frontier[i];
        i += 1;
        let mut j = 0;
        while j < frontier.len() {
            let s = ring.add(a, frontier[j]);
            if !in_set[s] {
                in_set[s] = true;
                frontier.push(s);
            }
            j += 1;
        }
    }
    frontier.sort_unstable();
    frontier
}

/// Which multiplicative closures a sorted additive subgroup actually has.
fn detect_kind(ring: &FiniteRing, members: &[usize], contains_one: bool) -> SubKind {
    let contains = |x: usize| members.binary_search(&x).is_ok();
    let left = members
        .iter()
        .all(|&a| (0..ring.order()).all(|x| contains(ring.mul(x, a))));
    let right = members
        .iter()
        .all(|&a| (0..ring.order()).all(|x| contains(ring.mul(a, x))));
    match (left, right) {
        (true, true) => SubKind::TwoSidedIdeal,
        (true, false) => SubKind::LeftIdeal,
        (false, true) => SubKind::RightIdeal,
        (false, false) => {
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| contains(ring.mul(a, b))));
            if closed && contains_one {
                SubKind::Subring
            } else {
                SubKind::AdditiveSubgroup
            }
        }
    }
}

/// Sidedness selector for annihilators and generated ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// The Jacobson radical `{x : 1 - r*x is a unit for every r}`.
///
/// Quasi-regularity characterizes the radical directly on the tables; the
/// result is a two-sided nilpotent ideal and the quotient by it has zero
/// radical.
pub fn jacobson_radical(ring: &FiniteRing) -> SubStructure<'_> {
    let n = ring.order();
    // two-sided unit test, precomputed once
    let is_unit: Vec<bool> = (0..n)
        .map(|a| (0..n).any(|b| ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one()))
        .collect();
    let members: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|r| is_unit[ring.sub(ring.one(), ring.mul(r, x))]))
        .collect();
    SubStructure {
        parent: ring,
        members,
        kind: SubKind::TwoSidedIdeal,
        generators: Vec::new(),
    }
}

/// Elements multiplying `a` to zero on the requested side (`Left` is
/// `{x : x*a = 0}`, `Right` is `{x : a*x = 0}`, `TwoSided` the
/// intersection). The reported kind is upgraded to the strongest closure
/// that actually holds — e.g. two-sided for a central `a`.
pub fn annihilator(ring: &FiniteRing, a: usize, side: Side) -> Result<SubStructure<'_>> {
    if a >= ring.order() {
        return Err(Error::InvalidParameter(format!(
            "element {a} out of range for ring of order {}",
            ring.order()
        )));
    }
    let zero = ring.zero();
    let members: Vec<usize> = (0..ring.order())
        .filter(|&x| match side {
            Side::Left => ring.mul(x, a) == zero,
            Side::Right => ring.mul(a, x) == zero,
            Side::TwoSided => ring.mul(x, a) == zero && ring.mul(a, x) == zero,
        })
        .collect();
    // Closure under + and - holds by bilinearity; the multiplicative kind
    // depends on a, so detect it rather than declare it.
    let detected = detect_kind(ring, &members, false);
    let kind = match (side, detected) {
        // keep at least the sidedness that is guaranteed by construction
        (Side::Left, SubKind::AdditiveSubgroup) => SubKind::LeftIdeal,
        (Side::Right, SubKind::AdditiveSubgroup) => SubKind::RightIdeal,
        (_, k) => k,
    };
    Ok(SubStructure {
        parent: ring,
        members,
        kind,
        generators: vec![a],
    })
}

/// Least ideal of the requested sidedness containing `seeds`, by closure
/// iteration: multiply current members by ring elements on the absorbing
/// side(s), then close additively, until stable.
pub fn ideal_generated<'r>(
    ring: &'r FiniteRing,
    seeds: &[usize],
    side: Side,
) -> Result<SubStructure<'r>> {
    for &s in seeds {
        if s >= ring.order() {
            return Err(Error::InvalidParameter(format!(
                "element {s} out of range for ring of order {}",
                ring.order()
            )));
        }
    }
    let n = ring.order();
    let mut members = additive_closure(ring, seeds);
    loop {
        let mut new_elems = Vec::new();
        let contains = |set: &[usize], x: usize| set.binary_search(&x).is_ok();
        for &a in &members {
            for x in 0..n {
                if matches!(side, Side::Left | Side::TwoSided) && !contains(&members, ring.mul(x, a))
                {
                    new_elems.push(ring.mul(x, a));
                }
                if matches!(side, Side::Right | Side::TwoSided)
                    && !contains(&members, ring.mul(a, x))
                {
                    new_elems.push(ring.mul(a, x));
                }
            }
        }
        if new_elems.is_empty() {
            break;
        }
        new_elems.extend_from_slice(&members);
        members = additive_closure(ring, &new_elems);
    }
    let kind = match side {
        Side::Left => SubKind::LeftIdeal,
        Side::Right => SubKind::RightIdeal,
        Side::TwoSided => SubKind::TwoSidedIdeal,
    };
    Ok(SubStructure {
        parent: ring,
        members,
        kind,
        generators: seeds.to_vec(),
    })
}

/// Every two-sided ideal of the ring, as sorted member sets (ascending by
/// size, then lexicographically).
///
/// An ideal is a sum of principal ideals, so the full lattice is the
/// closure of the principal ideals under pairwise ideal sum. This reaches
/// non-principal ideals too, which a single-generator search would miss.
pub fn two_sided_ideals(ring: &FiniteRing) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;

    let mut principals: BTreeSet<Vec<usize>> = BTreeSet::new();
    principals.insert(vec![ring.zero()]);
    for a in 0..ring.order() {
        let ideal = ideal_generated(ring, &[a], Side::TwoSided)
            .expect("in-range generator")
            .members;
        principals.insert(ideal);
    }
    let mut all: BTreeSet<Vec<usize>> = principals.clone();
    let mut frontier: Vec<Vec<usize>> = all.iter().cloned().collect();
    while let Some(i) = frontier.pop() {
        for p in &principals {
            // ideal sum = additive closure of the union (both absorb, so
            // the closure absorbs as well)
            let mut union = i.clone();
            union.extend_from_slice(p);
            let sum = additive_closure(ring, &union);
            if all.insert(sum.clone()) {
                frontier.push(sum);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All minimal nonzero two-sided ideals. Each is principal (generated by
/// any of its nonzero elements), so generating from every single element
/// and keeping the inclusion-minimal distinct results is complete.
pub fn minimal_ideals(ring: &FiniteRing) -> Vec<SubStructure<'_>> {
    let mut seen: Vec<(Vec<usize>, usize)> = Vec::new(); // (members, witness generator)
    for a in 0..ring.order() {
        if a == ring.zero() {
            continue;
        }
        let ideal = ideal_generated(ring, &[a], Side::TwoSided).expect("in-range");
        if !seen.iter().any(|(m, _)| *m == ideal.members) {
            seen.push((ideal.members, a));
        }
    }
    let minimal: Vec<(Vec<usize>, usize)> = seen
        .iter()
        .filter(|(m, _)| {
            !seen
                .iter()
                .any(|(other, _)| other.len() < m.len() && other.iter().all(|x| m.contains(x)))
        })
        .cloned()
        .collect();
    let mut out: Vec<SubStructure<'_>> = minimal
        .into_iter()
        .map(|(members, gen)| SubStructure {
            parent: ring,
            members,
            kind: SubKind::TwoSidedIdeal,
            generators: vec![gen],
        })
        .collect();
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// All maximal proper two-sided ideals, taken from the full ideal lattice
/// (maximal ideals need not be principal).
pub fn maximal_ideals(ring: &FiniteRing) -> Vec<SubStructure<'_>> {
    let all = two_sided_ideals(ring);
    let proper: Vec<&Vec<usize>> = all.iter().filter(|i| i.len() < ring.order()).collect();
    let mut out: Vec<SubStructure<'_>> = proper
        .iter()
        .filter(|m| {
            !proper
                .iter()
                .any(|other| other.len() > m.len() && m.iter().all(|x| other.contains(x)))
        })
        .map(|m| SubStructure {
            parent: ring,
            members: (*m).clone(),
            kind: SubKind::TwoSidedIdeal,
            generators: Vec::new(),
        })
        .collect();
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// A quotient ring together with the projection data connecting it to the
/// ring it came from.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    /// The coset ring; element `k` is the coset of `reps[k]`.
    pub quotient: FiniteRing,
    /// base element index -> quotient element index
    pub projection: Vec<usize>,
    /// quotient element index -> least base element of the coset
    pub reps: Vec<usize>,
    /// Members of the ideal that was quotiented out.
    pub modulus: Vec<usize>,
}

impl QuotientRing {
    /// The coset of `x` as a sorted list of base elements.
    pub fn coset(&self, k: usize) -> Vec<usize> {
        self.projection
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| (c == k).then_some(i))
            .collect()
    }
}

/// Quotient of the ring by a two-sided ideal. Cosets are labeled by their
/// least base element, in ascending order, so coset `0` is the ideal
/// itself and the labeling is deterministic.
pub fn quotient(ring: &FiniteRing, ideal: &SubStructure<'_>) -> Result<QuotientRing> {
    if !std::ptr::eq(ideal.parent(), ring) {
        return Err(Error::Precondition(
            "ideal belongs to a different ring".into(),
        ));
    }
    if ideal.kind() != SubKind::TwoSidedIdeal {
        return Err(Error::Precondition(format!(
            "quotient requires a two-sided ideal, got {:?}",
            ideal.kind()
        )));
    }
    let n = ring.order();
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let k = reps.len();
        for &i in ideal.members() {
            projection[ring.add(x, i)] = k;
        }
        // x is the least member of its coset because we scan ascending
        reps.push(x);
    }
    let m = reps.len();
    if m * ideal.len() != n {
        return Err(Error::Precondition(
            "given set is not additively closed (cosets overlap unevenly)".into(),
        ));
    }
    let mut add = vec![0u32; m * m];
    let mut mul = vec![0u32; m * m];
    for a in 0..m {
        for b in 0..m {
            add[a * m + b] = projection[ring.add(reps[a], reps[b])] as u32;
            mul[a * m + b] = projection[ring.mul(reps[a], reps[b])] as u32;
        }
    }
    let one = projection[ring.one()];
    let label = format!("{} / ideal(order {})", ring.label(), ideal.len());
    let quotient = if m == 1 {
        return Err(Error::Precondition(
            "quotient by the whole ring is not a unital ring".into(),
        ));
    } else {
        FiniteRing::from_tables(m, add, mul, one, label)?
    };
    Ok(QuotientRing {
        quotient,
        projection,
        reps,
        modulus: ideal.members().to_vec(),
    })
}

/// The center `{x : x*r = r*x for all r}`, a subring.
pub fn center(ring: &FiniteRing) -> SubStructure<'_> {
    let n = ring.order();
    let members: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|r| ring.mul(x, r) == ring.mul(r, x)))
        .collect();
    SubStructure {
        parent: ring,
        members,
        kind: SubKind::Subring,
        generators: Vec::new(),
    }
}

fn is_central(ring: &FiniteRing, x: usize) -> bool {
    (0..ring.order()).all(|r| ring.mul(x, r) == ring.mul(r, x))
}

/// All central idempotents, ascending.
pub fn central_idempotents(ring: &FiniteRing) -> Vec<usize> {
    (0..ring.order())
        .filter(|&e| ring.mul(e, e) == e && is_central(ring, e))
        .collect()
}

/// Finest direct-sum decomposition by primitive central idempotents.
///
/// Returns `(e_i, e_i R)` pairs in ascending idempotent order; the
/// idempotents are pairwise orthogonal and sum to `1`, each block is the
/// ideal `e_i R` re-indexed as a unital ring with identity `e_i`, and the
/// direct sum of the blocks is isomorphic to the ring. A single pair
/// `(1, R)` comes back when the ring is indecomposable.
pub fn central_idempotent_split(ring: &FiniteRing) -> Vec<(usize, FiniteRing)> {
    let idempotents = central_idempotents(ring);
    // e (nonzero) is primitive iff every central idempotent meets it in 0 or e
    let primitives: Vec<usize> = idempotents
        .iter()
        .copied()
        .filter(|&e| {
            e != ring.zero()
                && idempotents
                    .iter()
                    .all(|&f| ring.mul(e, f) == ring.zero() || ring.mul(e, f) == e)
        })
        .collect();
    let total = primitives
        .iter()
        .fold(ring.zero(), |acc, &e| ring.add(acc, e));
    assert_eq!(
        total,
        ring.one(),
        "primitive central idempotents must sum to 1"
    );
    primitives
        .into_iter()
        .map(|e| (e, corner_ring(ring, e)))
        .collect()
}

/// The ideal `eR` for a central idempotent `e`, re-indexed densely as a
/// unital ring with identity `e`.
pub fn corner_ring(ring: &FiniteRing, e: usize) -> FiniteRing {
    let mut members: Vec<usize> = (0..ring.order()).map(|r| ring.mul(e, r)).collect();
    members.sort_unstable();
    members.dedup();
    subset_as_ring(ring, &members, e, format!("block(e={e}, {})", ring.label()))
}

/// Re-indexes a multiplicatively and additively closed subset as its own
/// ring with the given identity element.
fn subset_as_ring(ring: &FiniteRing, members: &[usize], one: usize, label: String) -> FiniteRing {
    let m = members.len();
    let pos = |x: usize| members.binary_search(&x).expect("closed subset");
    let mut add = vec![0u32; m * m];
    let mut mul = vec![0u32; m * m];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            add[i * m + j] = pos(ring.add(a, b)) as u32;
            mul[i * m + j] = pos(ring.mul(a, b)) as u32;
        }
    }
    FiniteRing::from_tables(m, add, mul, pos(one), label)
        .expect("closed subset with identity forms a ring")
}

/// Identification of the simple blocks of a semisimple ring as full matrix
/// rings over finite fields: returns one `(n, q)` pair per block, meaning
/// the block is isomorphic to the n-by-n matrices over the q-element field.
///
/// Requires a zero radical. Candidate `(n, q)` pairs are screened by order
/// (`q^(n^2)` must equal the block order) and by unit count (the general
/// linear group order), then confirmed by the isomorphism tester.
pub fn wedderburn_blocks(ring: &FiniteRing) -> Result<Vec<(usize, usize)>> {
    if jacobson_radical(ring).len() != 1 {
        return Err(Error::Precondition(
            "simple-block identification requires a zero radical".into(),
        ));
    }
    let blocks = central_idempotent_split(ring);
    let mut out = Vec::with_capacity(blocks.len());
    for (_, block) in &blocks {
        out.push(identify_simple_block(block)?);
    }
    Ok(out)
}

fn identify_simple_block(block: &FiniteRing) -> Result<(usize, usize)> {
    let b = block.order();
    let unit_count = (0..b)
        .filter(|&a| (0..b).any(|x| block.mul(a, x) == block.one() && block.mul(x, a) == block.one()))
        .count();
    let mut n = 1usize;
    // smallest possible q is 2, so n is bounded by 2^(n^2) <= b
    while crate::ring::checked_pow(2, n * n).is_some_and(|min| min <= b) {
        if let Some(q) = integer_root(b, n * n) {
            if crate::ring::factorize(q).len() == 1 {
                // |GL_n(q)| = prod_{i<n} (q^n - q^i)
                let gl: usize = (0..n)
                    .map(|i| {
                        crate::ring::checked_pow(q, n).unwrap()
                            - crate::ring::checked_pow(q, i).unwrap()
                    })
                    .product();
                if gl == unit_count {
                    let (p, m) = crate::ring::factorize(q)[0];
                    let field = FiniteRing::galois_field(p, m)?;
                    let candidate = FiniteRing::matrix_ring(&field, n)?;
                    if crate::iso::is_isomorphic(block, &candidate).is_some() {
                        return Ok((n, q));
                    }
                }
            }
        }
        n += 1;
    }
    Err(Error::Internal(format!(
        "block of order {b} with {unit_count} units matches no matrix ring over a finite field"
    )))
}

/// Exact integer k-th root when it exists: `q` with `q^k = value`.
fn integer_root(value: usize, k: usize) -> Option<usize> {
    if k == 0 {
        return None;
    }
    let mut q = 1usize;
    loop {
        match crate::ring::checked_pow(q, k) {
            Some(p) if p == value => return Some(q),
            Some(p) if p > value => return None,
            Some(_) => q += 1,
            None => return None,
        }
    }
}

/// Least subring containing the additive span of `1` and the set `S`
/// (the prime subring with `S` adjoined).
pub fn prime_subring_closure<'r>(ring: &'r FiniteRing, s: &[usize]) -> Result<SubStructure<'r>> {
    for &x in s {
        if x >= ring.order() {
            return Err(Error::InvalidParameter(format!(
                "element {x} out of range for ring of order {}",
                ring.order()
            )));
        }
    }
    let mut seeds: Vec<usize> = s.to_vec();
    seeds.push(ring.one());
    let mut members = additive_closure(ring, &seeds);
    loop {
        let contains = |set: &[usize], x: usize| set.binary_search(&x).is_ok();
        let mut new_elems = Vec::new();
        for &a in &members {
            for &b in &members {
                let p = ring.mul(a, b);
                if !contains(&members, p) {
                    new_elems.push(p);
                }
            }
        }
        if new_elems.is_empty() {
            break;
        }
        new_elems.extend_from_slice(&members);
        members = additive_closure(ring, &new_elems);
    }
    Ok(SubStructure {
        parent: ring,
        members,
        kind: SubKind::Subring,
        generators: s.to_vec(),
    })
}
