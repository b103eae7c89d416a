//! Core model: valuation distributions, deterministic mechanisms, and the
//! welfare/revenue objective plane.
//!
//! An [`Instance`] is a finite single-item auction environment: one marginal
//! distribution per bidder, optionally coupled by an explicit joint pmf for
//! two bidders.  A deterministic ex-post incentive-compatible mechanism is an
//! [`AllocationMatrix`] (winner index per valuation tuple, `0` = keep the
//! item) that is monotone in every winner's own coordinate; monotonicity is
//! exactly what makes truthful threshold payments well defined, so a matrix
//! together with [`threshold_payments`] *is* the mechanism.
//!
//! All values are exact [`Rat`]ionals.  Types are plain immutable data and
//! the operations are pure functions, so everything here is safe to share
//! across threads.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rat, parse_rat};
use crate::{Error, Result};

pub use crate::rational::Rat;

// ---------------------------------------------------------------------------
// Distributions and instances
// ---------------------------------------------------------------------------

/// A single bidder's valuation distribution: strictly increasing positive
/// support values with strictly positive masses summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalDistribution {
    values: Vec<Rat>,
    masses: Vec<Rat>,
}

impl MarginalDistribution {
    pub fn new(values: Vec<Rat>, masses: Vec<Rat>) -> Result<Self> {
        let m = MarginalDistribution { values, masses };
        m.validate(0)?;
        Ok(m)
    }

    fn validate(&self, bidder: usize) -> Result<()> {
        if self.values.is_empty() || self.values.len() != self.masses.len() {
            return Err(Error::BadShape(format!(
                "bidder {bidder}: need equally many values and masses, at least one each"
            )));
        }
        for w in self.values.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::NonIncreasingSupport { bidder });
            }
        }
        if !self.values[0].is_positive() {
            return Err(Error::NonPositiveValue { bidder });
        }
        for m in &self.masses {
            if !m.is_positive() {
                return Err(Error::NonPositiveMass {
                    context: format!("bidder {bidder}"),
                });
            }
        }
        let total: Rat = self.masses.iter().sum();
        if !total.is_one() {
            return Err(Error::MassNotOne {
                context: format!("bidder {bidder}"),
                got: format_rat(&total),
            });
        }
        Ok(())
    }

    pub fn support_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn masses(&self) -> &[Rat] {
        &self.masses
    }

    /// Tail mass `Σ_{m ≥ j} f^m`.
    pub fn tail_mass(&self, j: usize) -> Rat {
        self.masses[j..].iter().sum()
    }
}

/// Raw, unvalidated instance description as it appears on the wire.
///
/// Rationals are strings (`"p"` or `"p/q"`); `joint`, when present, is the
/// row-major `h1 × h2` pmf of a two-bidder correlated distribution whose
/// row/column sums must reproduce the declared per-bidder `probs`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub bidders: Vec<BidderSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BidderSpec {
    pub values: Vec<String>,
    pub probs: Vec<String>,
}

/// A validated auction environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    marginals: Vec<MarginalDistribution>,
    /// Row-major `h1 × h2` joint pmf; `None` means independent bidders.
    joint: Option<Vec<Rat>>,
}

impl Instance {
    /// Independent bidders with the given marginals.
    pub fn product(marginals: Vec<MarginalDistribution>) -> Result<Self> {
        if marginals.is_empty() {
            return Err(Error::BadShape("need at least one bidder".into()));
        }
        for (b, m) in marginals.iter().enumerate() {
            m.validate(b)?;
        }
        Ok(Instance {
            marginals,
            joint: None,
        })
    }

    /// Two correlated bidders; marginals are derived from the joint pmf.
    /// `joint[k][l]` is the probability of the tuple `(v1[k], v2[l])`.
    pub fn correlated(v1: Vec<Rat>, v2: Vec<Rat>, joint: Vec<Vec<Rat>>) -> Result<Self> {
        let (h1, h2) = (v1.len(), v2.len());
        if joint.len() != h1 || joint.iter().any(|row| row.len() != h2) {
            return Err(Error::BadShape(format!(
                "joint must be {h1} rows of {h2} entries"
            )));
        }
        let mut flat = Vec::with_capacity(h1 * h2);
        for row in &joint {
            for x in row {
                if x.is_negative() {
                    return Err(Error::NonPositiveMass {
                        context: "joint entry".into(),
                    });
                }
                flat.push(x.clone());
            }
        }
        let total: Rat = flat.iter().sum();
        if !total.is_one() {
            return Err(Error::MassNotOne {
                context: "joint".into(),
                got: format_rat(&total),
            });
        }
        let m1 = (0..h1).map(|k| flat[k * h2..(k + 1) * h2].iter().sum()).collect();
        let m2 = (0..h2)
            .map(|l| (0..h1).map(|k| &flat[k * h2 + l]).sum())
            .collect();
        let marginals = vec![
            MarginalDistribution { values: v1, masses: m1 },
            MarginalDistribution { values: v2, masses: m2 },
        ];
        for (b, m) in marginals.iter().enumerate() {
            m.validate(b)?;
        }
        Ok(Instance {
            marginals,
            joint: Some(flat),
        })
    }

    pub fn n(&self) -> usize {
        self.marginals.len()
    }

    pub fn marginal(&self, b: usize) -> &MarginalDistribution {
        &self.marginals[b]
    }

    pub fn marginals(&self) -> &[MarginalDistribution] {
        &self.marginals
    }

    pub fn shape(&self) -> Vec<usize> {
        self.marginals.iter().map(|m| m.support_size()).collect()
    }

    pub fn num_tuples(&self) -> usize {
        self.marginals.iter().map(|m| m.support_size()).product()
    }

    pub fn is_correlated(&self) -> bool {
        self.joint.is_some()
    }

    /// Probability of the valuation tuple with the given support indices.
    pub fn mass_of(&self, idx: &[usize]) -> Rat {
        debug_assert_eq!(idx.len(), self.n());
        match &self.joint {
            Some(flat) => {
                let h2 = self.marginals[1].support_size();
                flat[idx[0] * h2 + idx[1]].clone()
            }
            None => idx
                .iter()
                .enumerate()
                .map(|(b, &i)| &self.marginals[b].masses[i])
                .product(),
        }
    }

    /// Expected maximum valuation, `Σ_t mass(t) · max_i v_i(t)`: the largest
    /// welfare any mechanism can achieve.
    pub fn welfare_upper_bound(&self) -> Rat {
        let mut total = Rat::zero();
        for_each_tuple(&self.shape(), |idx| {
            let best = idx
                .iter()
                .enumerate()
                .map(|(b, &i)| &self.marginals[b].values[i])
                .max()
                .expect("at least one bidder");
            total += self.mass_of(idx) * best;
        });
        total
    }

    pub fn to_spec(&self) -> InstanceSpec {
        InstanceSpec {
            bidders: self
                .marginals
                .iter()
                .map(|m| BidderSpec {
                    values: m.values.iter().map(format_rat).collect(),
                    probs: m.masses.iter().map(format_rat).collect(),
                })
                .collect(),
            joint: self.joint.as_ref().map(|flat| {
                let h2 = self.marginals[1].support_size();
                flat.chunks(h2)
                    .map(|row| row.iter().map(format_rat).collect())
                    .collect()
            }),
        }
    }
}

/// Parses and validates a raw instance description.
///
/// When a joint pmf is supplied the declared per-bidder `probs` must equal
/// its row/column sums ([`Error::JointMarginalMismatch`]); a joint is only
/// meaningful for exactly two bidders ([`Error::JointArityError`]).
pub fn validate_instance(spec: &InstanceSpec) -> Result<Instance> {
    if spec.bidders.is_empty() {
        return Err(Error::BadShape("need at least one bidder".into()));
    }
    let parse_vec = |xs: &[String]| -> Result<Vec<Rat>> { xs.iter().map(|s| parse_rat(s)).collect() };
    let mut marginals = Vec::with_capacity(spec.bidders.len());
    for (b, bs) in spec.bidders.iter().enumerate() {
        let m = MarginalDistribution {
            values: parse_vec(&bs.values)?,
            masses: parse_vec(&bs.probs)?,
        };
        m.validate(b)?;
        marginals.push(m);
    }
    match &spec.joint {
        None => Instance::product(marginals),
        Some(rows) => {
            if spec.bidders.len() != 2 {
                return Err(Error::JointArityError {
                    n: spec.bidders.len(),
                });
            }
            let joint: Vec<Vec<Rat>> = rows
                .iter()
                .map(|row| parse_vec(row))
                .collect::<Result<_>>()?;
            let inst = Instance::correlated(
                marginals[0].values.clone(),
                marginals[1].values.clone(),
                joint,
            )?;
            // The wire format carries marginals redundantly; reject silent
            // disagreement instead of preferring one side.
            for b in 0..2 {
                if inst.marginals[b].masses != marginals[b].masses {
                    return Err(Error::JointMarginalMismatch);
                }
            }
            Ok(inst)
        }
    }
}

/// Calls `f` with every index tuple of `shape`, last coordinate fastest
/// (row-major order).
pub fn for_each_tuple(shape: &[usize], mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; shape.len()];
    loop {
        f(&idx);
        let mut axis = shape.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < shape[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Allocation matrices and mechanisms
// ---------------------------------------------------------------------------

/// Winner-per-tuple table of a deterministic mechanism.
///
/// Entries are `0` (no sale) or the 1-based bidder index; storage is
/// row-major with the last bidder's coordinate fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AllocationMatrix {
    shape: Vec<usize>,
    winners: Vec<u8>,
}

impl AllocationMatrix {
    pub fn new(shape: Vec<usize>, winners: Vec<u8>) -> Result<Self> {
        let cells: usize = shape.iter().product();
        if shape.is_empty() || winners.len() != cells {
            return Err(Error::BadShape(format!(
                "expected {} winner entries for shape {:?}, got {}",
                cells,
                shape,
                winners.len()
            )));
        }
        let n = shape.len();
        for (cell, &w) in winners.iter().enumerate() {
            if w as usize > n {
                return Err(Error::WinnerOutOfRange { winner: w, cell, n });
            }
        }
        Ok(AllocationMatrix { shape, winners })
    }

    /// All-zero (never sell) matrix.
    pub fn zeros(shape: Vec<usize>) -> Self {
        let cells = shape.iter().product();
        AllocationMatrix {
            shape,
            winners: vec![0; cells],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn winners(&self) -> &[u8] {
        &self.winners
    }

    pub fn cells(&self) -> usize {
        self.winners.len()
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut flat = 0;
        for (axis, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[axis]);
            flat = flat * self.shape[axis] + i;
        }
        flat
    }

    pub fn get(&self, idx: &[usize]) -> u8 {
        self.winners[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], w: u8) {
        let flat = self.flat_index(idx);
        self.winners[flat] = w;
    }

    fn coord(&self, flat: usize, axis: usize) -> usize {
        (flat / self.stride(axis)) % self.shape[axis]
    }

    /// Structural monotonicity: whenever bidder `b` wins a tuple, they keep
    /// winning when their own coordinate increases.  This is necessary and
    /// sufficient for the matrix to support truthful threshold payments.
    pub fn is_monotone_matrix(&self) -> bool {
        for flat in 0..self.winners.len() {
            let w = self.winners[flat];
            if w == 0 {
                continue;
            }
            let axis = (w - 1) as usize;
            if self.coord(flat, axis) + 1 < self.shape[axis]
                && self.winners[flat + self.stride(axis)] != w
            {
                return false;
            }
        }
        true
    }
}

/// Checks `a` against `inst`'s shape, then monotonicity (see
/// [`AllocationMatrix::is_monotone_matrix`]).
pub fn is_monotone(a: &AllocationMatrix, inst: &Instance) -> Result<bool> {
    if a.shape() != inst.shape().as_slice() {
        return Err(Error::ShapeMismatch {
            matrix: a.shape().to_vec(),
            instance: inst.shape(),
        });
    }
    Ok(a.is_monotone_matrix())
}

/// Threshold payments per tuple: the winner pays their lowest support value
/// at which they would still win (their own coordinate varying, the others
/// held fixed); `0` where the item is not sold.
pub fn threshold_payments(a: &AllocationMatrix, inst: &Instance) -> Result<Vec<Rat>> {
    if !is_monotone(a, inst)? {
        return Err(Error::NotMonotone);
    }
    let mut pay = vec![Rat::zero(); a.cells()];
    for b in 0..inst.n() {
        let w = (b + 1) as u8;
        let stride = a.stride(b);
        let h = a.shape[b];
        for flat in 0..a.cells() {
            if a.coord(flat, b) != 0 {
                continue;
            }
            // Walk the line along bidder b's axis; their winning set within
            // the line is a suffix, and the threshold is its first index.
            let mut first_win = None;
            for m in 0..h {
                if a.winners[flat + m * stride] == w {
                    first_win = Some(m);
                    break;
                }
            }
            if let Some(m0) = first_win {
                let price = inst.marginal(b).values()[m0].clone();
                for m in m0..h {
                    debug_assert_eq!(a.winners[flat + m * stride], w);
                    pay[flat + m * stride] = price.clone();
                }
            }
        }
    }
    Ok(pay)
}

/// Expected welfare and revenue of a feasible allocation matrix.
pub fn evaluate(a: &AllocationMatrix, inst: &Instance) -> Result<ObjectivePoint> {
    let payments = threshold_payments(a, inst)?;
    let mut welfare = Rat::zero();
    let mut revenue = Rat::zero();
    for_each_tuple(&inst.shape(), |idx| {
        let flat = a.flat_index(idx);
        let w = a.winners[flat];
        if w == 0 {
            return;
        }
        let b = (w - 1) as usize;
        let mass = inst.mass_of(idx);
        welfare += &mass * &inst.marginal(b).values()[idx[b]];
        revenue += mass * &payments[flat];
    });
    Ok(ObjectivePoint { welfare, revenue })
}

/// A feasible allocation matrix bundled with its threshold payments and
/// objective point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mechanism {
    pub allocation: AllocationMatrix,
    /// Per-tuple payments, aligned with the allocation's storage order.
    pub payments: Vec<Rat>,
    pub objectives: ObjectivePoint,
}

impl Mechanism {
    pub fn from_allocation(allocation: AllocationMatrix, inst: &Instance) -> Result<Self> {
        let payments = threshold_payments(&allocation, inst)?;
        let objectives = evaluate(&allocation, inst)?;
        Ok(Mechanism {
            allocation,
            payments,
            objectives,
        })
    }
}

// ---------------------------------------------------------------------------
// Objective points, dominance, Pareto filtering
// ---------------------------------------------------------------------------

/// A point in the (expected welfare, expected revenue) plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectivePoint {
    pub welfare: Rat,
    pub revenue: Rat,
}

impl ObjectivePoint {
    pub fn new(welfare: Rat, revenue: Rat) -> Self {
        ObjectivePoint { welfare, revenue }
    }

    pub fn zero() -> Self {
        ObjectivePoint {
            welfare: Rat::zero(),
            revenue: Rat::zero(),
        }
    }

    /// Weak componentwise dominance excluding equality: `self ≥ other` in
    /// both coordinates and the points differ.
    pub fn dominates(&self, other: &ObjectivePoint) -> bool {
        self.welfare >= other.welfare && self.revenue >= other.revenue && self != other
    }

    /// Componentwise `self ≥ other` (equality allowed).
    pub fn at_least(&self, other: &ObjectivePoint) -> bool {
        self.welfare >= other.welfare && self.revenue >= other.revenue
    }
}

impl std::fmt::Display for ObjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", format_rat(&self.welfare), format_rat(&self.revenue))
    }
}

/// Multiplicative ε-covering: `p ≥ q / (1+eps)` componentwise.
pub fn eps_covers(p: &ObjectivePoint, q: &ObjectivePoint, eps: &Rat) -> Result<bool> {
    if eps.is_negative() {
        return Err(Error::NegativeEps);
    }
    let scale = Rat::one() + eps;
    Ok(&p.welfare * &scale >= q.welfare && &p.revenue * &scale >= q.revenue)
}

/// An antichain of objective points, sorted by strictly increasing welfare
/// (hence strictly decreasing revenue), each tagged with the handle of a
/// mechanism attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoSet {
    pub points: Vec<(ObjectivePoint, u64)>,
}

impl ParetoSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether `p` would survive against this set: no member dominates it.
    pub fn admits(&self, p: &ObjectivePoint) -> bool {
        !self.points.iter().any(|(q, _)| q.dominates(p))
    }
}

/// Removes every point dominated by another (componentwise ≥, not equal);
/// coinciding points keep the lowest handle.  The result is independent of
/// input order.
pub fn pareto_filter(mut points: Vec<(ObjectivePoint, u64)>) -> ParetoSet {
    points.sort_by(|(p, hp), (q, hq)| {
        q.welfare
            .cmp(&p.welfare)
            .then_with(|| q.revenue.cmp(&p.revenue))
            .then_with(|| hp.cmp(hq))
    });
    let mut kept: Vec<(ObjectivePoint, u64)> = Vec::new();
    let mut best_revenue: Option<Rat> = None;
    for (p, h) in points {
        // Scanning by descending welfare: p is dominated (or duplicated) iff
        // some earlier point has revenue ≥ p's.
        let strictly_better = match &best_revenue {
            None => true,
            Some(r) => p.revenue > *r,
        };
        if strictly_better {
            best_revenue = Some(p.revenue.clone());
            kept.push((p, h));
        }
    }
    kept.reverse();
    ParetoSet { points: kept }
}

/// Convenience: Pareto-filters mechanisms and returns the surviving
/// `(point, handle)` pairs along with the mechanisms they refer to.
pub fn pareto_filter_mechanisms(mechs: Vec<Mechanism>) -> (ParetoSet, BTreeMap<u64, Mechanism>) {
    let points = mechs
        .iter()
        .enumerate()
        .map(|(i, m)| (m.objectives.clone(), i as u64))
        .collect();
    let set = pareto_filter(points);
    let by_handle: BTreeMap<u64, Mechanism> = set
        .points
        .iter()
        .map(|(_, h)| (*h, mechs[*h as usize].clone()))
        .collect();
    (set, by_handle)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
