//! Property sweeps: every registered structural law, applied to every
//! ring the census can produce, with counterexample payloads when a law
//! fails. A sweep never hides a violation — the report carries it with
//! enough data (full tables at small orders) to replay the failure.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify;
use crate::enumerate::{
    enumerate_unital_rings, Census, CensusError, EnumerationTask, DEFAULT_ENUMERATION_CAP,
    MAX_ENUMERATION_ORDER,
};
use crate::error::Error;
use crate::ring::{factorize, is_prime, FiniteRing};
use crate::structure::{self, Side};
use crate::units::units;

/// Largest ring order that still gets full tables in a violation payload.
pub const DUMP_ORDER_LIMIT: usize = 64;
/// Default ceiling on the order of composite block-sum rings.
pub const DEFAULT_COMPOSITE_PRODUCT_CAP: usize = 1024;

/// The registered structural laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// For every two-sided ideal I inside the radical, the units of R/I
    /// are exactly the projected units of R.
    QuotientUnitsLift,
    /// The unit count multiplies over the central idempotent blocks, and
    /// a prime dividing two blocks' unit counts forces at least two
    /// subgroups of that order and a non-cyclic Sylow subgroup.
    SplitUnitCount,
    /// Rings of odd order are generated over the prime subring by their
    /// units.
    OddOrderUnitGeneration,
    /// A ring of 2-power order whose unit group has exactly one
    /// involution has cyclic Sylow 2-subgroups.
    UniqueInvolutionCyclicSylow,
    /// A minimal ideal inside a nonzero radical squares to zero, has
    /// prime characteristic p, and 1+I is an elementary abelian p-group.
    MinimalIdealLaws,
    /// The six-family classification statement, per prime.
    SixTypeClassification,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::QuotientUnitsLift,
        CheckKind::SplitUnitCount,
        CheckKind::OddOrderUnitGeneration,
        CheckKind::UniqueInvolutionCyclicSylow,
        CheckKind::MinimalIdealLaws,
        CheckKind::SixTypeClassification,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::QuotientUnitsLift => "quotient-units-lift",
            CheckKind::SplitUnitCount => "split-unit-count",
            CheckKind::OddOrderUnitGeneration => "odd-order-unit-generation",
            CheckKind::UniqueInvolutionCyclicSylow => "unique-involution-cyclic-sylow",
            CheckKind::MinimalIdealLaws => "minimal-ideal-laws",
            CheckKind::SixTypeClassification => "six-type-classification",
        }
    }

    /// Cost ceiling: rings larger than this are skipped by the check
    /// (the ideal-lattice checks are the expensive ones).
    fn order_ceiling(self) -> usize {
        match self {
            CheckKind::QuotientUnitsLift | CheckKind::MinimalIdealLaws => 128,
            _ => usize::MAX,
        }
    }

    /// Hypothesis guard: whether the law speaks about this ring at all.
    fn applicable(self, ring: &FiniteRing) -> bool {
        match self {
            CheckKind::OddOrderUnitGeneration => ring.order() % 2 == 1,
            CheckKind::UniqueInvolutionCyclicSylow => {
                let f = factorize(ring.order());
                f.len() == 1 && f[0].0 == 2
            }
            _ => true,
        }
    }
}

/// What a single check said about a single ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    /// The law's hypothesis pattern does not apply (or the ring exceeds
    /// the check's cost ceiling).
    Skipped,
    Passed,
    Violated(String),
}

/// Full tables of an offending ring, for replay.
#[derive(Debug, Clone, Serialize)]
pub struct RingDump {
    pub order: usize,
    pub label: String,
    pub one: usize,
    pub add: Vec<Vec<u32>>,
    pub mul: Vec<Vec<u32>>,
}

impl RingDump {
    pub fn of(ring: &FiniteRing) -> RingDump {
        let n = ring.order();
        let row = |table: &dyn Fn(usize, usize) -> usize, x: usize| -> Vec<u32> {
            (0..n).map(|y| table(x, y) as u32).collect()
        };
        RingDump {
            order: n,
            label: ring.label().to_string(),
            one: ring.one(),
            add: (0..n).map(|x| row(&|a, b| ring.add(a, b), x)).collect(),
            mul: (0..n).map(|x| row(&|a, b| ring.mul(a, b), x)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepViolation {
    pub check: CheckKind,
    pub ring_label: String,
    pub order: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<RingDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check: CheckKind,
    pub rings_checked: usize,
    pub rings_skipped: usize,
    pub violations: Vec<SweepViolation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub orders: Vec<usize>,
    pub census_rings: usize,
    pub composite_rings: usize,
    pub checks: Vec<CheckSummary>,
}

impl SweepReport {
    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn rings_swept(&self) -> usize {
        self.census_rings + self.composite_rings
    }
}

/// Composite extension: direct sums of census blocks of coprime
/// prime-power orders, covering orders the block censuses cannot reach
/// directly.
#[derive(Debug, Clone)]
pub struct CompositeSpec {
    /// Largest prime-power block order enumerated.
    pub block_cap: usize,
    /// Largest composite ring order assembled.
    pub product_cap: usize,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Orders run through the census enumerator directly.
    pub orders: Vec<usize>,
    /// Per-task enumeration cap (clamped to the hard maximum).
    pub enumeration_cap: usize,
    pub composites: Option<CompositeSpec>,
    pub checks: Vec<CheckKind>,
    pub budget: Option<u64>,
}

impl SweepOptions {
    /// The standard full sweep: census at every order up to `max_order`,
    /// plus composite block sums built from blocks of order at most
    /// `max_order`, running every registered check.
    pub fn through_order(max_order: usize) -> SweepOptions {
        SweepOptions {
            orders: (1..=max_order).collect(),
            enumeration_cap: max_order.max(DEFAULT_ENUMERATION_CAP),
            composites: Some(CompositeSpec {
                block_cap: max_order,
                product_cap: DEFAULT_COMPOSITE_PRODUCT_CAP,
            }),
            checks: CheckKind::ALL.to_vec(),
            budget: None,
        }
    }

    pub fn with_checks(mut self, checks: Vec<CheckKind>) -> SweepOptions {
        self.checks = checks;
        self
    }

    pub fn without_composites(mut self) -> SweepOptions {
        self.composites = None;
        self
    }
}

// ----------------------------------------------------------------------
// individual checks
// ----------------------------------------------------------------------

/// Runs one check on one ring, honoring hypothesis guards and cost
/// ceilings.
pub fn run_check(check: CheckKind, ring: &FiniteRing) -> Result<CheckOutcome, Error> {
    if !check.applicable(ring) || ring.order() > check.order_ceiling() {
        return Ok(CheckOutcome::Skipped);
    }
    let violation = match check {
        CheckKind::QuotientUnitsLift => check_quotient_units_lift(ring)?,
        CheckKind::SplitUnitCount => check_split_unit_count(ring)?,
        CheckKind::OddOrderUnitGeneration => check_odd_order_unit_generation(ring)?,
        CheckKind::UniqueInvolutionCyclicSylow => check_unique_involution(ring)?,
        CheckKind::MinimalIdealLaws => check_minimal_ideal_laws(ring)?,
        CheckKind::SixTypeClassification => check_six_type(ring)?,
    };
    Ok(match violation {
        Some(detail) => CheckOutcome::Violated(detail),
        None => CheckOutcome::Passed,
    })
}

fn check_quotient_units_lift(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let radical: BTreeSet<usize> = structure::jacobson_radical(ring).members().iter().copied().collect();
    let unit_view = units(ring);
    for ideal in structure::two_sided_ideals(ring) {
        if !ideal.iter().all(|x| radical.contains(x)) {
            continue;
        }
        let sub = structure::ideal_generated(ring, &ideal, Side::TwoSided)?;
        let q = structure::quotient(ring, &sub)?;
        let quotient_units: BTreeSet<usize> =
            units(&q.quotient).units().iter().copied().collect();
        let projected: BTreeSet<usize> = unit_view
            .units()
            .iter()
            .map(|&u| q.projection[u])
            .collect();
        if quotient_units != projected {
            return Ok(Some(format!(
                "quotient by the {}-element radical ideal has {} units but only {} projected \
                 unit images",
                ideal.len(),
                quotient_units.len(),
                projected.len()
            )));
        }
    }
    Ok(None)
}

fn check_split_unit_count(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let blocks = structure::central_idempotent_split(ring);
    let block_unit_counts: Vec<usize> = blocks.iter().map(|(_, b)| units(b).order()).collect();
    let product: usize = block_unit_counts.iter().product();
    let view = units(ring);
    if product != view.order() {
        return Ok(Some(format!(
            "unit count {} differs from the block product {} (blocks: {:?})",
            view.order(),
            product,
            block_unit_counts
        )));
    }
    // primes shared by at least two blocks' unit groups
    let mut shared: BTreeSet<usize> = BTreeSet::new();
    for (i, &a) in block_unit_counts.iter().enumerate() {
        for &b in &block_unit_counts[..i] {
            let mut g = gcd(a, b);
            let mut p = 2;
            while p * p <= g {
                if g % p == 0 {
                    shared.insert(p);
                    while g % p == 0 {
                        g /= p;
                    }
                }
                p += 1;
            }
            if g > 1 {
                shared.insert(g);
            }
        }
    }
    for p in shared {
        let count = view.count_subgroups_of_order_p(p)?;
        if count < 2 {
            return Ok(Some(format!(
                "prime {p} divides two block unit counts but only {count} subgroup(s) of \
                 order {p} exist"
            )));
        }
        if view.sylow_cyclic(p)? {
            return Ok(Some(format!(
                "prime {p} divides two block unit counts yet the Sylow {p}-subgroups are cyclic"
            )));
        }
    }
    Ok(None)
}

fn check_odd_order_unit_generation(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let unit_elems: Vec<usize> = units(ring).units().to_vec();
    let closure = structure::prime_subring_closure(ring, &unit_elems)?;
    if closure.len() != ring.order() {
        return Ok(Some(format!(
            "units generate a subring of {} of the {} elements",
            closure.len(),
            ring.order()
        )));
    }
    Ok(None)
}

fn check_unique_involution(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let view = units(ring);
    if view.involution_count() != 1 {
        return Ok(None); // hypothesis vacuous
    }
    if !view.sylow_cyclic(2)? {
        return Ok(Some(format!(
            "unique involution but the Sylow 2-subgroups of the {}-element unit group are \
             not cyclic",
            view.order()
        )));
    }
    Ok(None)
}

fn check_minimal_ideal_laws(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let radical: BTreeSet<usize> = structure::jacobson_radical(ring).members().iter().copied().collect();
    if radical.len() <= 1 {
        return Ok(None); // zero radical: nothing to test
    }
    for ideal in structure::minimal_ideals(ring) {
        let members = ideal.members();
        if !members.iter().all(|x| radical.contains(x)) {
            continue;
        }
        // I^2 = 0
        for &a in members {
            for &b in members {
                if ring.mul(a, b) != ring.zero() {
                    return Ok(Some(format!(
                        "minimal radical ideal of size {} has {} * {} = {} != 0",
                        members.len(),
                        a,
                        b,
                        ring.mul(a, b)
                    )));
                }
            }
        }
        // char(I) = p, one prime for all nonzero members
        let orders: BTreeSet<usize> = members
            .iter()
            .filter(|&&x| x != ring.zero())
            .map(|&x| ring.additive_order(x))
            .collect();
        let p = match (orders.len(), orders.iter().next()) {
            (1, Some(&p)) if is_prime(p) => p,
            _ => {
                return Ok(Some(format!(
                    "minimal radical ideal members have additive orders {orders:?}, not one prime"
                )));
            }
        };
        // 1 + I is an elementary abelian p-group under multiplication
        let coset: Vec<usize> = members.iter().map(|&s| ring.add(ring.one(), s)).collect();
        let coset_set: BTreeSet<usize> = coset.iter().copied().collect();
        for &x in &coset {
            for &y in &coset {
                if !coset_set.contains(&ring.mul(x, y)) {
                    return Ok(Some(format!(
                        "1+I is not closed: ({x})*({y}) leaves the coset"
                    )));
                }
                if ring.mul(x, y) != ring.mul(y, x) {
                    return Ok(Some(format!("1+I is not commutative at ({x},{y})")));
                }
            }
            if ring.pow(x, p) != ring.one() {
                return Ok(Some(format!(
                    "element {x} of 1+I has multiplicative order not dividing {p}"
                )));
            }
        }
    }
    Ok(None)
}

fn check_six_type(ring: &FiniteRing) -> Result<Option<String>, Error> {
    let verdict = classify::verify_theorem_on(ring)?;
    if verdict.passed {
        Ok(None)
    } else {
        Ok(Some(verdict.notes.join("; ")))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ----------------------------------------------------------------------
// the sweep driver
// ----------------------------------------------------------------------

/// Enumerates every ring in scope (census orders plus composite block
/// sums) and applies the requested checks, aggregating violations.
pub fn sweep(options: &SweepOptions) -> Result<SweepReport, CensusError> {
    let cap = options.enumeration_cap.min(MAX_ENUMERATION_ORDER);
    for &order in &options.orders {
        if order > cap {
            return Err(Error::CapExceeded {
                requested: order,
                cap,
            }
            .into());
        }
    }
    let mut summaries: Vec<CheckSummary> = options
        .checks
        .iter()
        .map(|&check| CheckSummary {
            check,
            rings_checked: 0,
            rings_skipped: 0,
            violations: Vec::new(),
        })
        .collect();
    let mut census_rings = 0usize;

    for &order in &options.orders {
        let mut task = EnumerationTask::new(order).with_cap(cap);
        if let Some(b) = options.budget {
            task = task.with_budget(b);
        }
        let census = enumerate_unital_rings(&task)?;
        census_rings += census.rings.len();
        apply_checks(&census.rings, &options.checks, &mut summaries)?;
    }

    let mut composite_rings = 0usize;
    if let Some(spec) = &options.composites {
        let (block_censuses, combos) = composite_plan(spec, cap, options.budget)?;
        composite_rings = combos.len();
        // stream in parallel: each worker assembles its ring, checks it,
        // and keeps only violation payloads before dropping the tables
        type Checked = (usize, CheckOutcome, String, usize, Option<RingDump>);
        let results: Vec<Result<Vec<Checked>, Error>> = combos
            .par_iter()
            .map(|combo| {
                let mut ring: Option<FiniteRing> = None;
                for &(ci, ri) in combo {
                    let block = &block_censuses[ci].rings[ri];
                    ring = Some(match ring {
                        None => block.clone(),
                        Some(acc) => acc.direct_sum(block)?,
                    });
                }
                let ring = ring.expect("combos contain at least two blocks");
                let mut outcomes = Vec::with_capacity(options.checks.len());
                for (slot, &check) in options.checks.iter().enumerate() {
                    let outcome = run_check(check, &ring)?;
                    let dump = (matches!(outcome, CheckOutcome::Violated(_))
                        && ring.order() <= DUMP_ORDER_LIMIT)
                        .then(|| RingDump::of(&ring));
                    outcomes.push((slot, outcome, ring.label().to_string(), ring.order(), dump));
                }
                Ok(outcomes)
            })
            .collect();
        for result in results {
            for (slot, outcome, label, order, dump) in result.map_err(CensusError::Invalid)? {
                record(&mut summaries[slot], outcome, &label, order, dump);
            }
        }
    }

    Ok(SweepReport {
        orders: options.orders.clone(),
        census_rings,
        composite_rings,
        checks: summaries,
    })
}

fn apply_checks(
    rings: &[FiniteRing],
    checks: &[CheckKind],
    summaries: &mut [CheckSummary],
) -> Result<(), CensusError> {
    let results: Vec<Result<Vec<CheckOutcome>, Error>> = rings
        .par_iter()
        .map(|ring| checks.iter().map(|&c| run_check(c, ring)).collect())
        .collect();
    for (ring, result) in rings.iter().zip(results) {
        let outcomes = result.map_err(CensusError::Invalid)?;
        for (slot, outcome) in outcomes.into_iter().enumerate() {
            let dump = (matches!(outcome, CheckOutcome::Violated(_))
                && ring.order() <= DUMP_ORDER_LIMIT)
                .then(|| RingDump::of(ring));
            record(&mut summaries[slot], outcome, ring.label(), ring.order(), dump);
        }
    }
    Ok(())
}

fn record(
    summary: &mut CheckSummary,
    outcome: CheckOutcome,
    label: &str,
    order: usize,
    tables: Option<RingDump>,
) {
    match outcome {
        CheckOutcome::Skipped => summary.rings_skipped += 1,
        CheckOutcome::Passed => summary.rings_checked += 1,
        CheckOutcome::Violated(detail) => {
            summary.rings_checked += 1;
            summary.violations.push(SweepViolation {
                check: summary.check,
                ring_label: label.to_string(),
                order,
                detail,
                tables,
            });
        }
    }
}

/// Census per prime-power block order, plus the list of block
/// combinations: at least two distinct primes, one census ring per
/// block, product within the cap. Entries are (census index, ring index).
#[allow(clippy::type_complexity)]
fn composite_plan(
    spec: &CompositeSpec,
    cap: usize,
    budget: Option<u64>,
) -> Result<(Vec<Census>, Vec<Vec<(usize, usize)>>), CensusError> {
    let block_cap = spec.block_cap.min(MAX_ENUMERATION_ORDER);
    // prime-power block orders, grouped by prime
    let mut primes: Vec<usize> = (2..=block_cap).filter(|&q| is_prime(q)).collect();
    primes.sort_unstable();
    let mut block_censuses: Vec<Census> = Vec::new();
    let mut powers_by_prime: Vec<Vec<usize>> = Vec::new(); // census indices per prime
    for &p in &primes {
        let mut indices = Vec::new();
        let mut q = p;
        while q <= block_cap {
            let mut task = EnumerationTask::new(q).with_cap(cap.max(block_cap));
            if let Some(b) = budget {
                task = task.with_budget(b);
            }
            indices.push(block_censuses.len());
            block_censuses.push(enumerate_unital_rings(&task)?);
            q = match q.checked_mul(p) {
                Some(next) => next,
                None => break,
            };
        }
        powers_by_prime.push(indices);
    }

    // choose a block order for a subset of >= 2 primes, then one ring per block
    let mut combos: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new(); // census indices
    fn choose(
        prime_idx: usize,
        product: usize,
        powers_by_prime: &[Vec<usize>],
        censuses: &[Census],
        product_cap: usize,
        chosen: &mut Vec<usize>,
        combos: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if prime_idx == powers_by_prime.len() {
            if chosen.len() >= 2 {
                // cartesian product over the chosen blocks' ring lists
                let mut selection: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
                for &ci in chosen.iter() {
                    let mut next = Vec::new();
                    for base in &selection {
                        for ri in 0..censuses[ci].rings.len() {
                            let mut b = base.clone();
                            b.push((ci, ri));
                            next.push(b);
                        }
                    }
                    selection = next;
                }
                combos.extend(selection);
            }
            return;
        }
        // skip this prime entirely
        choose(
            prime_idx + 1,
            product,
            powers_by_prime,
            censuses,
            product_cap,
            chosen,
            combos,
        );
        for &ci in &powers_by_prime[prime_idx] {
            let q = censuses[ci].order;
            match product.checked_mul(q) {
                Some(next) if next <= product_cap => {
                    chosen.push(ci);
                    choose(
                        prime_idx + 1,
                        next,
                        powers_by_prime,
                        censuses,
                        product_cap,
                        chosen,
                        combos,
                    );
                    chosen.pop();
                }
                _ => {}
            }
        }
    }
    choose(
        0,
        1,
        &powers_by_prime,
        &block_censuses,
        spec.product_cap,
        &mut chosen,
        &mut combos,
    );
    Ok((block_censuses, combos))
}
