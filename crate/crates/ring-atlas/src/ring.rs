//! Dense table representation of finite unital rings.
//!
//! A ring here is nothing but its element count, full addition and
//! multiplication tables, and the distinguished `0` and `1`. Everything else
//! in the crate (radicals, unit groups, classification, the census) is
//! computed from these tables, so the representation is deliberately
//! explicit rather than clever: every law can be checked by scanning.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Default upper bound on ring orders accepted by constructors.
pub const DEFAULT_ORDER_CAP: usize = 4096;

static ORDER_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ORDER_CAP);

/// Current order cap applied by all constructors.
pub fn order_cap() -> usize {
    ORDER_CAP.load(Ordering::Relaxed)
}

/// Replaces the order cap (process-wide). Constructors reject any ring whose
/// order would exceed the cap instead of degrading; raise it deliberately.
pub fn set_order_cap(cap: usize) {
    ORDER_CAP.store(cap.max(2), Ordering::Relaxed);
}

fn check_cap(requested: usize) -> Result<()> {
    let cap = order_cap();
    if requested > cap {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(())
    }
}

/// Mixed-radix coordinate form of an element over the ring's additive
/// components. Purely a (bijective) positional encoding of the index; used
/// by the census search and the isomorphism backtracker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementVector {
    pub coeffs: Vec<u32>,
}

/// A finite unital ring given by full operation tables.
///
/// Immutable after construction and safe to share across threads for
/// read-only analysis. Element "names" are the indices `0..order`.
#[derive(Clone)]
pub struct FiniteRing {
    order: usize,
    /// Row-major `order x order` tables.
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    add_order: Vec<u32>,
    zero: usize,
    one: usize,
    /// Prime-power cyclic component orders of `(R, +)`; product equals
    /// `order`. Grouped by ascending prime, descending exponent.
    additive_components: Vec<usize>,
    label: String,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.label, self.order)
    }
}

impl std::fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label)
    }
}

impl FiniteRing {
    // ------------------------------------------------------------------
    // accessors
    // ------------------------------------------------------------------

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn additive_components(&self) -> &[usize] {
        &self.additive_components
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Additive order of `a` in `(R, +)`.
    pub fn additive_order(&self, a: usize) -> usize {
        self.add_order[a] as usize
    }

    /// `k · a` (k-fold sum).
    pub fn scalar(&self, k: usize, a: usize) -> usize {
        let k = k % self.additive_order(a);
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    /// `a^k` under multiplication; `a^0 = 1`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Additive order of `1`, i.e. the least `m > 0` with `m · 1 = 0`.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.mul[a * n + b] != self.mul[b * n + a] {
                    return false;
                }
            }
        }
        true
    }

    /// True when every nonzero element has a two-sided inverse and the ring
    /// is commutative.
    pub fn is_field(&self) -> bool {
        if !self.is_commutative() {
            return false;
        }
        'outer: for a in 0..self.order {
            if a == self.zero {
                continue;
            }
            for b in 0..self.order {
                if self.mul(a, b) == self.one && self.mul(b, a) == self.one {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Mixed-radix decode of an index over `additive_components`.
    pub fn coords(&self, mut index: usize) -> ElementVector {
        let mut coeffs = Vec::with_capacity(self.additive_components.len());
        for &d in &self.additive_components {
            coeffs.push((index % d) as u32);
            index /= d;
        }
        ElementVector { coeffs }
    }

    /// Mixed-radix encode; inverse of [`coords`](Self::coords).
    pub fn index_of(&self, v: &ElementVector) -> Result<usize> {
        if v.coeffs.len() != self.additive_components.len() {
            return Err(Error::InvalidParameter(format!(
                "coordinate vector has {} entries, ring has {} additive components",
                v.coeffs.len(),
                self.additive_components.len()
            )));
        }
        let mut index = 0usize;
        let mut stride = 1usize;
        for (&c, &d) in v.coeffs.iter().zip(&self.additive_components) {
            if c as usize >= d {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {c} out of range for component of order {d}"
                )));
            }
            index += c as usize * stride;
            stride *= d;
        }
        Ok(index)
    }

    // ------------------------------------------------------------------
    // constructors
    // ------------------------------------------------------------------

    /// The integers modulo `m`, `m >= 2`, with natural element indexing.
    pub fn zmod(m: usize) -> Result<FiniteRing> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        check_cap(m)?;
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                add[a * m + b] = ((a + b) % m) as u32;
                mul[a * m + b] = ((a * b) % m) as u32;
            }
        }
        let components = factorize(m).into_iter().map(|(p, e)| p.pow(e as u32)).collect();
        FiniteRing::from_parts(m, add, mul, 0, 1 % m, components, format!("Z({m})"))
    }

    /// The field with `p^n` elements, `p` prime, `n >= 1`.
    ///
    /// The modulus is the lexicographically least monic irreducible
    /// polynomial of degree `n` over `Z_p`, comparing coefficient tuples
    /// from the constant term upward. Elements are polynomials of degree
    /// `< n`; the index of `sum c_j x^j` is `sum c_j p^j`.
    pub fn galois_field(p: usize, n: usize) -> Result<FiniteRing> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        let order = checked_pow(p, n).ok_or(Error::CapExceeded {
            requested: usize::MAX,
            cap: order_cap(),
        })?;
        check_cap(order)?;

        let modulus = least_irreducible(p, n);
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let pa = poly_of_index(a, p, n);
            for b in 0..order {
                let pb = poly_of_index(b, p, n);
                add[a * order + b] = index_of_poly(&poly_add(&pa, &pb, p), p) as u32;
                let prod = poly_rem(&poly_mul(&pa, &pb, p), &modulus, p);
                mul[a * order + b] = index_of_poly(&prod, p) as u32;
            }
        }
        let components = vec![p; n];
        FiniteRing::from_parts(order, add, mul, 0, 1, components, format!("GF({p},{n})"))
    }

    /// Full `n x n` matrix ring over a finite field.
    ///
    /// Entry slots are row-major; the index of a matrix is the base-`|F|`
    /// expansion over its slots (slot 0 least significant).
    pub fn matrix_ring(field: &FiniteRing, n: usize) -> Result<FiniteRing> {
        require_field(field)?;
        if n == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be positive".into()));
        }
        let q = field.order();
        let slots = n * n;
        let order = checked_pow(q, slots).ok_or(Error::CapExceeded {
            requested: usize::MAX,
            cap: order_cap(),
        })?;
        check_cap(order)?;

        let decode = slot_decode_table(order, q, slots);
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        let mut buf = vec![0usize; slots];
        for a in 0..order {
            for b in 0..order {
                let (ea, eb) = (&decode[a], &decode[b]);
                for s in 0..slots {
                    buf[s] = field.add(ea[s], eb[s]);
                }
                add[a * order + b] = slot_encode(&buf, q) as u32;
                for i in 0..n {
                    for k in 0..n {
                        let mut acc = field.zero();
                        for j in 0..n {
                            acc = field.add(acc, field.mul(ea[i * n + j], eb[j * n + k]));
                        }
                        buf[i * n + k] = acc;
                    }
                }
                mul[a * order + b] = slot_encode(&buf, q) as u32;
            }
        }
        let mut identity = vec![field.zero(); slots];
        for i in 0..n {
            identity[i * n + i] = field.one();
        }
        let one = slot_encode(&identity, q);
        let mut components = Vec::new();
        for _ in 0..slots {
            components.extend_from_slice(field.additive_components());
        }
        FiniteRing::from_parts(
            order,
            add,
            mul,
            0,
            one,
            components,
            format!("M({n}, {})", field.label()),
        )
    }

    /// Upper-triangular `n x n` matrices over a finite field, indexed
    /// densely over the `n(n+1)/2` on-or-above-diagonal slots (row-major).
    pub fn upper_triangular(field: &FiniteRing, n: usize) -> Result<FiniteRing> {
        require_field(field)?;
        if n == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be positive".into()));
        }
        let q = field.order();
        // slot positions (i, j) with i <= j, row-major
        let mut pos = Vec::new();
        for i in 0..n {
            for j in i..n {
                pos.push((i, j));
            }
        }
        let slots = pos.len();
        let slot_at = |i: usize, j: usize| pos.iter().position(|&(a, b)| (a, b) == (i, j));
        let order = checked_pow(q, slots).ok_or(Error::CapExceeded {
            requested: usize::MAX,
            cap: order_cap(),
        })?;
        check_cap(order)?;

        let decode = slot_decode_table(order, q, slots);
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        let mut buf = vec![0usize; slots];
        for a in 0..order {
            for b in 0..order {
                let (ea, eb) = (&decode[a], &decode[b]);
                for s in 0..slots {
                    buf[s] = field.add(ea[s], eb[s]);
                }
                add[a * order + b] = slot_encode(&buf, q) as u32;
                for (s, &(i, k)) in pos.iter().enumerate() {
                    // (AB)_{ik} = sum over i <= j <= k of A_{ij} B_{jk}
                    let mut acc = field.zero();
                    for j in i..=k {
                        let sa = slot_at(i, j).unwrap();
                        let sb = slot_at(j, k).unwrap();
                        acc = field.add(acc, field.mul(ea[sa], eb[sb]));
                    }
                    buf[s] = acc;
                }
                mul[a * order + b] = slot_encode(&buf, q) as u32;
            }
        }
        let mut identity = vec![field.zero(); slots];
        for i in 0..n {
            identity[slot_at(i, i).unwrap()] = field.one();
        }
        let one = slot_encode(&identity, q);
        let mut components = Vec::new();
        for _ in 0..slots {
            components.extend_from_slice(field.additive_components());
        }
        FiniteRing::from_parts(
            order,
            add,
            mul,
            0,
            one,
            components,
            format!("T({n}, {})", field.label()),
        )
    }

    /// External direct sum. The pair `(a, b)` gets index `a + |A| * b`, so
    /// the left summand's components come first in the mixed radix.
    pub fn direct_sum(&self, other: &FiniteRing) -> Result<FiniteRing> {
        let (na, nb) = (self.order, other.order);
        let order = na
            .checked_mul(nb)
            .ok_or(Error::CapExceeded { requested: usize::MAX, cap: order_cap() })?;
        check_cap(order)?;
        let mut add = vec![0u32; order * order];
        let mut mul = vec![0u32; order * order];
        for xa in 0..na {
            for xb in 0..nb {
                let x = xa + na * xb;
                for ya in 0..na {
                    for yb in 0..nb {
                        let y = ya + na * yb;
                        add[x * order + y] =
                            (self.add(xa, ya) + na * other.add(xb, yb)) as u32;
                        mul[x * order + y] =
                            (self.mul(xa, ya) + na * other.mul(xb, yb)) as u32;
                    }
                }
            }
        }
        let one = self.one + na * other.one;
        let zero = self.zero + na * other.zero;
        let mut components = self.additive_components.clone();
        components.extend_from_slice(&other.additive_components);
        FiniteRing::from_parts(
            order,
            add,
            mul,
            zero,
            one,
            components,
            format!("sum({}, {})", self.label, other.label),
        )
    }

    /// Builds a ring from raw tables, deriving `0` and the additive
    /// component decomposition from the addition table.
    ///
    /// Only the cheap structural facts are checked here (table shape, an
    /// additive identity exists, `one` is a two-sided multiplicative
    /// identity distinct from zero). Run [`validate`](Self::validate) for
    /// the full law-by-law report.
    pub fn from_tables(
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        one: usize,
        label: String,
    ) -> Result<FiniteRing> {
        if order < 2 {
            return Err(Error::InvalidParameter("ring order must be at least 2".into()));
        }
        check_cap(order)?;
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "tables must be {order} x {order}"
            )));
        }
        if add.iter().chain(mul.iter()).any(|&v| v as usize >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        if one >= order {
            return Err(Error::InvalidParameter("identity index out of range".into()));
        }
        let zero = (0..order)
            .find(|&z| (0..order).all(|x| add[z * order + x] as usize == x))
            .ok_or_else(|| Error::InvalidParameter("addition table has no identity".into()))?;
        if one == zero {
            return Err(Error::InvalidParameter("multiplicative identity equals zero".into()));
        }
        if (0..order).any(|x| {
            mul[one * order + x] as usize != x || mul[x * order + one] as usize != x
        }) {
            return Err(Error::InvalidParameter(
                "declared identity is not a two-sided multiplicative identity".into(),
            ));
        }
        // Every row of a group's table is a permutation; inverses exist iff
        // zero appears in each row.
        for a in 0..order {
            if !(0..order).any(|b| add[a * order + b] as usize == zero) {
                return Err(Error::InvalidParameter(format!(
                    "element {a} has no additive inverse"
                )));
            }
        }
        let neg = compute_neg(order, &add, zero);
        let add_order = compute_add_orders(order, &add, zero)?;
        let components = additive_decomposition(order, &add_order);
        Ok(FiniteRing {
            order,
            add,
            mul,
            neg,
            add_order,
            zero,
            one,
            additive_components: components,
            label,
        })
    }

    /// Trusted constructor for internally built tables. Debug builds verify
    /// the declared data; release builds take it on faith.
    pub(crate) fn from_parts(
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        additive_components: Vec<usize>,
        label: String,
    ) -> Result<FiniteRing> {
        check_cap(order)?;
        let neg = compute_neg(order, &add, zero);
        let add_order = compute_add_orders(order, &add, zero)?;
        let ring = FiniteRing {
            order,
            add,
            mul,
            neg,
            add_order,
            zero,
            one,
            additive_components,
            label,
        };
        debug_assert_eq!(
            {
                let mut a = ring.additive_components.clone();
                a.sort_unstable();
                a
            },
            {
                let mut b = additive_decomposition(order, &ring.add_order);
                b.sort_unstable();
                b
            },
            "declared additive components disagree with the addition table"
        );
        debug_assert!(ring.additive_components.iter().product::<usize>() == order);
        Ok(ring)
    }

    /// Re-labels the ring (used by the census and file ingestion).
    pub fn with_label(mut self, label: String) -> FiniteRing {
        self.label = label;
        self
    }

    // ------------------------------------------------------------------
    // validation
    // ------------------------------------------------------------------

    /// Checks every ring law against the tables and reports violations with
    /// witnesses. Triple-quantified laws (associativity, distributivity)
    /// are scanned exhaustively up to order 512 and by fixed-seed random
    /// sampling above that, so the report is deterministic either way.
    pub fn validate(&self) -> ValidationReport {
        use rand::{Rng, SeedableRng};

        const MAX_WITNESSES: usize = 64;
        fn record(v: &mut Vec<Violation>, law: Law, witness: Vec<usize>) {
            if v.len() < MAX_WITNESSES {
                v.push(Violation { law, witness });
            }
        }

        let n = self.order;
        let mut violations = Vec::new();

        // pair laws: always exhaustive
        'comm: for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    record(&mut violations, Law::AdditiveCommutativity, vec![a, b]);
                    break 'comm;
                }
            }
        }
        if (0..n).any(|x| self.add(self.zero, x) != x) {
            record(&mut violations, Law::AdditiveIdentity, vec![self.zero]);
        }
        if (0..n).any(|x| self.add(x, self.neg(x)) != self.zero) {
            record(&mut violations, Law::AdditiveInverse, vec![]);
        }
        if self.one == self.zero
            || (0..n).any(|x| self.mul(self.one, x) != x || self.mul(x, self.one) != x)
        {
            record(&mut violations, Law::MultiplicativeIdentity, vec![self.one]);
        }

        let exhaustive = n <= 512;
        let scan_triple = |violations: &mut Vec<Violation>, a: usize, b: usize, c: usize| {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                record(violations, Law::AdditiveAssociativity, vec![a, b, c]);
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                record(violations, Law::MultiplicativeAssociativity, vec![a, b, c]);
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                record(violations, Law::LeftDistributivity, vec![a, b, c]);
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                record(violations, Law::RightDistributivity, vec![a, b, c]);
            }
        };
        if exhaustive {
            'triples: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        scan_triple(&mut violations, a, b, c);
                        if violations.len() >= MAX_WITNESSES {
                            break 'triples;
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x52494e47);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                scan_triple(&mut violations, a, b, c);
                if violations.len() >= MAX_WITNESSES {
                    break;
                }
            }
        }

        // declared additive decomposition must match the table
        let mut declared = self.additive_components.clone();
        declared.sort_unstable();
        let mut computed = additive_decomposition(n, &self.add_order);
        computed.sort_unstable();
        if declared != computed || declared.iter().product::<usize>() != n {
            record(&mut violations, Law::AdditiveComponents, vec![]);
        }

        ValidationReport {
            order: n,
            commutative: self.is_commutative(),
            exhaustive,
            violations,
        }
    }
}

/// Ring laws checked by [`FiniteRing::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    AdditiveCommutativity,
    AdditiveAssociativity,
    AdditiveIdentity,
    AdditiveInverse,
    MultiplicativeAssociativity,
    MultiplicativeIdentity,
    LeftDistributivity,
    RightDistributivity,
    AdditiveComponents,
}

/// A single law violation with the witnessing elements.
#[derive(Debug, Clone)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<usize>,
}

/// Outcome of a full table validation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub order: usize,
    pub commutative: bool,
    /// Whether triple-quantified laws were scanned exhaustively.
    pub exhaustive: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

// ----------------------------------------------------------------------
// shared derivation helpers
// ----------------------------------------------------------------------

fn compute_neg(order: usize, add: &[u32], zero: usize) -> Vec<u32> {
    let mut neg = vec![0u32; order];
    for a in 0..order {
        for b in 0..order {
            if add[a * order + b] as usize == zero {
                neg[a] = b as u32;
                break;
            }
        }
    }
    neg
}

fn compute_add_orders(order: usize, add: &[u32], zero: usize) -> Result<Vec<u32>> {
    let mut out = vec![0u32; order];
    for a in 0..order {
        let mut s = a;
        let mut k = 1u32;
        while s != zero {
            s = add[s * order + a] as usize;
            k += 1;
            // a genuine group reaches zero within `order` steps; a cycle
            // that avoids zero means the table is not a group operation
            if k as usize > order {
                return Err(Error::InvalidParameter(format!(
                    "repeated addition of element {a} never reaches the additive identity"
                )));
            }
        }
        out[a] = k;
    }
    Ok(out)
}

/// Prime-power cyclic decomposition of a finite abelian group given the
/// element orders: for each prime `p`, the count of elements killed by
/// `p^k` determines how many cyclic factors have order at least `p^k`.
fn additive_decomposition(order: usize, add_order: &[u32]) -> Vec<usize> {
    let mut components = Vec::new();
    for (p, _) in factorize(order) {
        // factors_at_least[k] = number of cyclic p-factors of order >= p^k
        let mut factors_at_least = Vec::new();
        let mut prev = 1usize; // elements killed by p^0
        let mut pk = p;
        loop {
            let cur = add_order
                .iter()
                .filter(|&&o| pk % o as usize == 0)
                .count();
            if cur == prev {
                break;
            }
            let mut ratio = cur / prev;
            let mut m = 0usize;
            while ratio > 1 {
                ratio /= p;
                m += 1;
            }
            factors_at_least.push(m);
            prev = cur;
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
        // exact counts by differencing, largest exponent first
        for k in (1..=factors_at_least.len()).rev() {
            let at_least_k = factors_at_least[k - 1];
            let at_least_k1 = if k < factors_at_least.len() {
                factors_at_least[k]
            } else {
                0
            };
            for _ in 0..(at_least_k - at_least_k1) {
                components.push(p.pow(k as u32));
            }
        }
    }
    components
}

fn require_field(field: &FiniteRing) -> Result<()> {
    if field.is_field() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{} is not a field",
            field.label()
        )))
    }
}

fn slot_decode_table(order: usize, q: usize, slots: usize) -> Vec<Vec<usize>> {
    (0..order)
        .map(|mut idx| {
            let mut v = Vec::with_capacity(slots);
            for _ in 0..slots {
                v.push(idx % q);
                idx /= q;
            }
            v
        })
        .collect()
}

fn slot_encode(entries: &[usize], q: usize) -> usize {
    let mut idx = 0;
    for &e in entries.iter().rev() {
        idx = idx * q + e;
    }
    idx
}

// ----------------------------------------------------------------------
// integer helpers
// ----------------------------------------------------------------------

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs, ascending primes.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

// ----------------------------------------------------------------------
// polynomial arithmetic over Z_p (little-endian coefficient vectors)
// ----------------------------------------------------------------------

fn poly_trim(mut f: Vec<usize>) -> Vec<usize> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_add(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        out[i] = x % p;
    }
    poly_trim(out)
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        for i in 0..m.len() {
            let sub = (lead * m[i]) % p;
            let idx = i + shift;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_of_index(mut idx: usize, p: usize, n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(idx % p);
        idx /= p;
    }
    poly_trim(out)
}

fn index_of_poly(f: &[usize], p: usize) -> usize {
    let mut idx = 0;
    for &c in f.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

/// Least monic irreducible polynomial of degree `n` over `Z_p`, ordering
/// candidates by their tuple `(a_0, a_1, ..., a_{n-1})` of lower-degree
/// coefficients.
fn least_irreducible(p: usize, n: usize) -> Vec<usize> {
    let total = checked_pow(p, n).expect("field order already cap-checked");
    for code in 0..total {
        // decode so that a_0 is the most significant comparison position
        let mut tail = vec![0usize; n];
        let mut c = code;
        for i in (0..n).rev() {
            tail[i] = c % p;
            c /= p;
        }
        let mut f = tail;
        f.push(1); // monic of degree n
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of degree {n} exists over Z_{p}")
}

/// Trial division by every monic polynomial of degree up to `deg(f)/2`.
fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = checked_pow(p, d).expect("small");
        for code in 0..count {
            let mut g = poly_of_index(code, p, d);
            g.resize(d, 0);
            g.push(1); // monic of degree d
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let r = FiniteRing::zmod(6).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.add(4, 5), 3);
        assert_eq!(r.mul(4, 5), 2);
        assert_eq!(r.neg(2), 4);
        assert_eq!(r.characteristic(), 6);
        assert_eq!(r.additive_components(), &[2, 3]);
        assert_eq!(r.label(), "Z(6)");
        assert!(r.validate().is_ok());
    }

    #[test]
    fn zmod_rejects_degenerate_moduli() {
        assert!(FiniteRing::zmod(0).is_err());
        assert!(FiniteRing::zmod(1).is_err());
    }

    #[test]
    fn gf4_uses_least_irreducible_modulus() {
        // x^2 + x + 1 is the first irreducible quadratic over Z_2, so
        // x * x = x + 1, i.e. index 2 * index 2 = index 3.
        let f = FiniteRing::galois_field(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.additive_components(), &[2, 2]);
        assert!(f.is_field());
        assert!(f.validate().is_ok());
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        // Over Z_3 the tuple order visits x^2, x^2+1 first; x^2+1 has no
        // roots mod 3 and is the chosen modulus, so x * x = -1 = 2.
        let f = FiniteRing::galois_field(3, 2).unwrap();
        assert_eq!(f.mul(3, 3), 2); // index 3 is the polynomial x
        assert!(f.is_field());
    }

    #[test]
    fn gf_rejects_bad_parameters() {
        assert!(FiniteRing::galois_field(4, 1).is_err());
        assert!(FiniteRing::galois_field(2, 0).is_err());
    }

    #[test]
    fn prime_fields_match_zmod() {
        let a = FiniteRing::galois_field(5, 1).unwrap();
        let b = FiniteRing::zmod(5).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(a.add(x, y), b.add(x, y));
                assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }

    #[test]
    fn matrix_ring_m2_gf2() {
        let f = FiniteRing::galois_field(2, 1).unwrap();
        let m = FiniteRing::matrix_ring(&f, 2).unwrap();
        assert_eq!(m.order(), 16);
        assert!(!m.is_commutative());
        assert_eq!(m.characteristic(), 2);
        assert!(m.validate().is_ok());
        // identity = diag(1,1): slots (0,0),(0,1),(1,0),(1,1) -> 1 + 8
        assert_eq!(m.one(), 9);
    }

    #[test]
    fn matrix_ring_requires_a_field() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert!(matches!(
            FiniteRing::matrix_ring(&z4, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn upper_triangular_t2_gf2() {
        let f = FiniteRing::galois_field(2, 1).unwrap();
        let t = FiniteRing::upper_triangular(&f, 2).unwrap();
        assert_eq!(t.order(), 8);
        assert!(!t.is_commutative());
        assert!(t.validate().is_ok());
        let report = t.validate();
        assert!(!report.commutative);
    }

    #[test]
    fn upper_triangular_unit_count_formula() {
        // invertible iff every diagonal entry is nonzero
        let f3 = FiniteRing::galois_field(3, 1).unwrap();
        let t = FiniteRing::upper_triangular(&f3, 2).unwrap();
        let units = (0..t.order())
            .filter(|&a| (0..t.order()).any(|b| t.mul(a, b) == t.one() && t.mul(b, a) == t.one()))
            .count();
        assert_eq!(units, 12);
    }

    #[test]
    fn direct_sum_componentwise() {
        let a = FiniteRing::zmod(4).unwrap();
        let b = FiniteRing::galois_field(3, 1).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.order(), 12);
        assert_eq!(s.characteristic(), 12);
        assert_eq!(s.additive_components(), &[4, 3]);
        assert!(s.validate().is_ok());
        // (1,1) is the identity: 1 + 4*1 = 5
        assert_eq!(s.one(), 5);
    }

    #[test]
    fn coords_roundtrip() {
        let r = FiniteRing::zmod(12).unwrap();
        for i in 0..12 {
            let v = r.coords(i);
            assert_eq!(r.index_of(&v).unwrap(), i);
        }
        assert!(r
            .index_of(&ElementVector { coeffs: vec![9, 9] })
            .is_err());
    }

    #[test]
    fn from_tables_detects_broken_identity() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let n = 4;
        let add: Vec<u32> = (0..n * n)
            .map(|i| z4.add(i / n, i % n) as u32)
            .collect();
        let mul: Vec<u32> = (0..n * n)
            .map(|i| z4.mul(i / n, i % n) as u32)
            .collect();
        assert!(FiniteRing::from_tables(n, add.clone(), mul.clone(), 2, "bad".into()).is_err());
        let ok = FiniteRing::from_tables(n, add, mul, 1, "ok".into()).unwrap();
        assert_eq!(ok.zero(), 0);
        assert_eq!(ok.additive_components(), &[4]);
    }

    #[test]
    fn from_tables_rejects_nongroup_addition_with_cycling_orbit() {
        // row 2 contains zero (2 + e1 = 0) so the inverse scan passes,
        // but 2 + 2 = 2 cycles: the orbit of 2 never reaches zero and
        // construction must fail instead of spinning
        let add = vec![0, 1, 2, 1, 2, 0, 2, 0, 2];
        let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
        let err = FiniteRing::from_tables(3, add, mul, 1, "cyclic orbit".into());
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn validate_reports_associativity_breakage() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let n = 4;
        let add: Vec<u32> = (0..n * n)
            .map(|i| z4.add(i / n, i % n) as u32)
            .collect();
        let mut mul: Vec<u32> = (0..n * n)
            .map(|i| z4.mul(i / n, i % n) as u32)
            .collect();
        mul[2 * n + 3] = 1; // corrupt 2*3
        let r = FiniteRing::from_tables(n, add, mul, 1, "broken".into()).unwrap();
        let report = r.validate();
        assert!(!report.is_ok());
    }

    #[test]
    fn order_cap_is_enforced() {
        assert!(matches!(
            FiniteRing::zmod(order_cap() + 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn additive_decomposition_of_product_groups() {
        let a = FiniteRing::zmod(2).unwrap();
        let b = FiniteRing::zmod(4).unwrap();
        let s = a.direct_sum(&b).unwrap();
        let mut comps = s.additive_components().to_vec();
        comps.sort_unstable();
        assert_eq!(comps, vec![2, 4]);
        // the derived decomposition agrees with the declared one
        assert!(s.validate().is_ok());
    }

    #[test]
    fn scalar_and_pow() {
        let r = FiniteRing::zmod(10).unwrap();
        assert_eq!(r.scalar(7, 3), 1);
        assert_eq!(r.pow(3, 0), 1);
        assert_eq!(r.pow(3, 4), 1);
        assert_eq!(r.pow(2, 3), 8);
    }
}
