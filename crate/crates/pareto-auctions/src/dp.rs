//! Exact two-bidder dynamic programs over peeled rows and columns.
//!
//! Every feasible (monotone) two-bidder allocation matrix decomposes into
//! *line peels* of the valuation grid (rows = bidder 1's support indices,
//! columns = bidder 2's): repeatedly either
//!
//! * sell the top remaining row to bidder 2 from some column `k` on, at her
//!   threshold price `v2^k` (possibly `k = h2`, selling nothing), and drop
//!   the row; or
//! * sell the leftmost remaining column to bidder 1 from some row `k` on at
//!   `v1^k`, and drop the column.
//!
//! Conversely every such peeling yields a feasible matrix: a bidder's cells
//! within a peeled line form a suffix in their own coordinate, and cells
//! assigned to the *other* bidder by later peels lie strictly inside the
//! remaining rectangle, so they never break the suffix property or change a
//! threshold.  If bidder 1 wins the corner of the remaining rectangle the
//! column peel is forced, if bidder 2 wins it the row peel is forced, and
//! otherwise either order works, so the peeling view loses nothing.
//!
//! The state space is the set of lower-right subrectangles `(i, j)`; a peel
//! contributes an objective increment that depends only on the line, the
//! threshold, and the joint masses.  With increments scaled to integers by
//! the common denominator of the instance, reachable objective values (or
//! welfare/revenue pairs) per state are exact integer sets, which gives:
//!
//! * [`achievable_values`]: the full set of attainable single-objective
//!   values, optionally floor-rounded to a grid, with witness replay;
//! * [`achievable_pairs`]: the attainable welfare/revenue pairs kept as a
//!   dominance-pruned staircase per state, with witness links — its root is
//!   exactly the Pareto set of the instance;
//! * [`capped_pareto`]: the staircase variant on a floor-rounded unit grid
//!   with saturating caps, the engine behind approximate threshold queries.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{AllocationMatrix, Instance, Mechanism, ObjectivePoint};
use crate::rational::{lcm_denom, scale_to_int, to_i128, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Contribution tables
// ---------------------------------------------------------------------------

/// Objective increments of all line peels, scaled to integers.
///
/// `w1[k][j]`/`r1[k][j]` are welfare/revenue gained by selling column `j` to
/// bidder 1 at rows `≥ k` (price `v1^k`); index `k = h1` is the empty peel.
/// `w2[i][k]`/`r2[i][k]` sell row `i` to bidder 2 at columns `≥ k` (price
/// `v2^k`); `k = h2` is empty.  True values are the entries divided by
/// `scale`.
#[derive(Debug, Clone)]
pub struct ContributionTables {
    pub h1: usize,
    pub h2: usize,
    /// Common denominator: entries are exact rationals times `scale`.
    pub scale: BigInt,
    pub w1: Vec<Vec<i128>>,
    pub r1: Vec<Vec<i128>>,
    pub w2: Vec<Vec<i128>>,
    pub r2: Vec<Vec<i128>>,
}

impl ContributionTables {
    /// Maps a scaled integer back to the exact value it represents.
    pub fn descale(&self, x: i128) -> Rat {
        Rat::new(BigInt::from(x), self.scale.clone())
    }
}

pub fn contribution_tables(inst: &Instance) -> Result<ContributionTables> {
    if inst.n() != 2 {
        return Err(Error::ArityError {
            op: "two-bidder peel tables".into(),
            n: inst.n(),
        });
    }
    let h1 = inst.marginal(0).support_size();
    let h2 = inst.marginal(1).support_size();
    let v1 = inst.marginal(0).values();
    let v2 = inst.marginal(1).values();

    let mut w1 = vec![vec![Rat::zero(); h2]; h1 + 1];
    let mut r1 = vec![vec![Rat::zero(); h2]; h1 + 1];
    for j in 0..h2 {
        let mut welfare = Rat::zero();
        let mut mass = Rat::zero();
        for k in (0..h1).rev() {
            let f = inst.mass_of(&[k, j]);
            welfare += &v1[k] * &f;
            mass += &f;
            w1[k][j] = welfare.clone();
            r1[k][j] = &v1[k] * &mass;
        }
    }
    let mut w2 = vec![vec![Rat::zero(); h2 + 1]; h1];
    let mut r2 = vec![vec![Rat::zero(); h2 + 1]; h1];
    for i in 0..h1 {
        let mut welfare = Rat::zero();
        let mut mass = Rat::zero();
        for k in (0..h2).rev() {
            let f = inst.mass_of(&[i, k]);
            welfare += &v2[k] * &f;
            mass += &f;
            w2[i][k] = welfare.clone();
            r2[i][k] = &v2[k] * &mass;
        }
    }

    let mut scale = BigInt::one();
    for table in [&w1, &r1, &w2, &r2] {
        for row in table.iter() {
            for x in row {
                scale = lcm_denom(&scale, x);
            }
        }
    }
    let conv = |table: &Vec<Vec<Rat>>| -> Result<Vec<Vec<i128>>> {
        table
            .iter()
            .map(|row| row.iter().map(|x| to_i128(&scale_to_int(x, &scale))).collect())
            .collect()
    };
    Ok(ContributionTables {
        h1,
        h2,
        w1: conv(&w1)?,
        r1: conv(&r1)?,
        w2: conv(&w2)?,
        r2: conv(&r2)?,
        scale,
    })
}

// ---------------------------------------------------------------------------
// Shared peel-path machinery
// ---------------------------------------------------------------------------

/// Provenance of a staircase entry: which peel produced it and which entry
/// of the successor state it extends.
#[derive(Debug, Clone, Copy)]
enum Link {
    Base,
    /// Sold row `i` of the state to bidder 2 from column `k` on.
    Row { k: u32, pred: u32 },
    /// Sold column `j` of the state to bidder 1 from row `k` on.
    Col { k: u32, pred: u32 },
}

fn state_index(h2: usize, i: usize, j: usize) -> usize {
    i * (h2 + 1) + j
}

/// Rebuilds the allocation matrix of a staircase entry by following links
/// from the root.
fn walk_links(
    h1: usize,
    h2: usize,
    stairs: &[Vec<(i128, i128, Link)>],
    root_entry: usize,
) -> AllocationMatrix {
    let mut a = AllocationMatrix::zeros(vec![h1, h2]);
    let (mut i, mut j, mut e) = (0usize, 0usize, root_entry);
    loop {
        match stairs[state_index(h2, i, j)][e].2 {
            Link::Base => break,
            Link::Row { k, pred } => {
                for m in (k as usize)..h2 {
                    a.set(&[i, m], 2);
                }
                i += 1;
                e = pred as usize;
            }
            Link::Col { k, pred } => {
                for m in (k as usize)..h1 {
                    a.set(&[m, j], 1);
                }
                j += 1;
                e = pred as usize;
            }
        }
    }
    debug_assert!(i == h1 || j == h2);
    a
}

/// Dominance-prunes candidates into a staircase: welfare strictly
/// ascending, revenue strictly descending.  Among candidates with equal
/// coordinates the first generated survives, so witnesses are
/// deterministic.
fn prune_stairs(mut cands: Vec<(i128, i128, Link)>) -> Vec<(i128, i128, Link)> {
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let mut kept: Vec<(i128, i128, Link)> = Vec::new();
    for c in cands {
        if kept.last().map_or(true, |l| c.1 > l.1) {
            kept.push(c);
        }
    }
    kept.reverse();
    kept
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::ScaleOverflow)
}

// ---------------------------------------------------------------------------
// Single-objective value sets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarObjective {
    Welfare,
    Revenue,
}

/// The full set of values one objective can take over all feasible
/// mechanisms, per subrectangle state.
///
/// In exact mode stored integers are values times the instance denominator;
/// in rounded mode each peel's increment is floored to a multiple of the
/// rounding unit first and stored integers count units.  Either way a
/// stored integer `u` represents the value `u · unit_value`.
#[derive(Debug, Clone)]
pub struct DpValueSet {
    inst: Instance,
    h1: usize,
    h2: usize,
    unit_value: Rat,
    /// Column-peel increments `c1[k][j]`, `k = h1` empty.
    c1: Vec<Vec<i128>>,
    /// Row-peel increments `c2[i][k]`, `k = h2` empty.
    c2: Vec<Vec<i128>>,
    sets: Vec<HashSet<i128>>,
}

/// Hard cap on a single state's value-set size; the exact set can grow
/// exponentially in the support sizes, and past this point the caller
/// asked for something enumeration-shaped rather than DP-shaped.
const VALUE_SET_LIMIT: usize = 4_000_000;

pub fn achievable_values(
    inst: &Instance,
    objective: ScalarObjective,
    rounding: Option<&Rat>,
) -> Result<DpValueSet> {
    let t = contribution_tables(inst)?;
    let (h1, h2) = (t.h1, t.h2);
    let (e1, e2) = match objective {
        ScalarObjective::Welfare => (&t.w1, &t.w2),
        ScalarObjective::Revenue => (&t.r1, &t.r2),
    };
    let (unit_value, c1, c2) = match rounding {
        None => (
            Rat::new(BigInt::one(), t.scale.clone()),
            e1.clone(),
            e2.clone(),
        ),
        Some(g) => {
            if !g.is_positive() {
                return Err(Error::InvalidArgument(
                    "rounding unit must be positive".into(),
                ));
            }
            // Increment of one stored unit, in scaled-integer terms.
            let q = g * Rat::from_integer(t.scale.clone());
            let fl = |c: i128| -> Result<i128> {
                to_i128(&((BigInt::from(c) * q.denom()) / q.numer()))
            };
            let conv = |table: &Vec<Vec<i128>>| -> Result<Vec<Vec<i128>>> {
                table
                    .iter()
                    .map(|row| row.iter().map(|&c| fl(c)).collect())
                    .collect()
            };
            (g.clone(), conv(e1)?, conv(e2)?)
        }
    };

    let mut sets: Vec<HashSet<i128>> = vec![HashSet::new(); (h1 + 1) * (h2 + 1)];
    for i in (0..=h1).rev() {
        for j in (0..=h2).rev() {
            if i == h1 || j == h2 {
                sets[state_index(h2, i, j)].insert(0);
                continue;
            }
            let mut s = HashSet::new();
            for k in j..=h2 {
                let c = c2[i][k];
                for &v in &sets[state_index(h2, i + 1, j)] {
                    s.insert(add(v, c)?);
                }
            }
            for k in i..=h1 {
                let c = c1[k][j];
                for &v in &sets[state_index(h2, i, j + 1)] {
                    s.insert(add(v, c)?);
                }
            }
            if s.len() > VALUE_SET_LIMIT {
                return Err(Error::LimitExceeded(format!(
                    "value set exceeded {VALUE_SET_LIMIT} entries"
                )));
            }
            sets[state_index(h2, i, j)] = s;
        }
    }
    Ok(DpValueSet {
        inst: inst.clone(),
        h1,
        h2,
        unit_value,
        c1,
        c2,
        sets,
    })
}

impl DpValueSet {
    fn root(&self) -> &HashSet<i128> {
        &self.sets[0]
    }

    /// Reachable stored integers at the root, ascending.
    pub fn root_units(&self) -> Vec<i128> {
        let mut v: Vec<i128> = self.root().iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Reachable objective values, ascending.
    pub fn root_values(&self) -> Vec<Rat> {
        self.root_units()
            .into_iter()
            .map(|u| Rat::from_integer(BigInt::from(u)) * &self.unit_value)
            .collect()
    }

    /// The value each stored unit represents.
    pub fn unit_value(&self) -> &Rat {
        &self.unit_value
    }

    pub fn contains(&self, value: &Rat) -> bool {
        let q = value / &self.unit_value;
        if !q.is_integer() {
            return false;
        }
        match q.to_integer().to_i128() {
            Some(u) => self.root().contains(&u),
            None => false,
        }
    }

    /// A mechanism achieving `value` exactly (in rounded mode: whose
    /// floor-rounded peel increments sum to `value`), or `None` if `value`
    /// is not in the root set.
    pub fn witness(&self, value: &Rat) -> Result<Option<Mechanism>> {
        let q = value / &self.unit_value;
        if !q.is_integer() {
            return Ok(None);
        }
        let target = match q.to_integer().to_i128() {
            Some(u) if self.root().contains(&u) => u,
            _ => return Ok(None),
        };
        let a = self.replay(target);
        Ok(Some(Mechanism::from_allocation(a, &self.inst)?))
    }

    /// Deterministic reconstruction: at each state take the first peel (rows
    /// before columns, thresholds ascending) whose remainder stays
    /// reachable.
    fn replay(&self, target: i128) -> AllocationMatrix {
        let (h1, h2) = (self.h1, self.h2);
        let mut a = AllocationMatrix::zeros(vec![h1, h2]);
        let (mut i, mut j, mut t) = (0usize, 0usize, target);
        'peel: while i < h1 && j < h2 {
            for k in j..=h2 {
                let c = self.c2[i][k];
                if self.sets[state_index(h2, i + 1, j)].contains(&(t - c)) {
                    for m in k..h2 {
                        a.set(&[i, m], 2);
                    }
                    t -= c;
                    i += 1;
                    continue 'peel;
                }
            }
            for k in i..=h1 {
                let c = self.c1[k][j];
                if self.sets[state_index(h2, i, j + 1)].contains(&(t - c)) {
                    for m in k..h1 {
                        a.set(&[m, j], 1);
                    }
                    t -= c;
                    j += 1;
                    continue 'peel;
                }
            }
            unreachable!("reachable targets always admit a peel");
        }
        debug_assert_eq!(t, 0);
        a
    }
}

// ---------------------------------------------------------------------------
// Exact welfare/revenue pair sets (Pareto staircases)
// ---------------------------------------------------------------------------

/// Dominance-pruned reachable (welfare, revenue) pairs per state; the root
/// staircase is the instance's exact Pareto set, every entry carrying links
/// to rebuild a mechanism that attains it.
#[derive(Debug, Clone)]
pub struct DpPairSet {
    inst: Instance,
    h1: usize,
    h2: usize,
    scale: BigInt,
    stairs: Vec<Vec<(i128, i128, Link)>>,
}

pub fn achievable_pairs(inst: &Instance) -> Result<DpPairSet> {
    let t = contribution_tables(inst)?;
    let (h1, h2) = (t.h1, t.h2);
    let mut stairs: Vec<Vec<(i128, i128, Link)>> = vec![Vec::new(); (h1 + 1) * (h2 + 1)];
    for i in (0..=h1).rev() {
        for j in (0..=h2).rev() {
            if i == h1 || j == h2 {
                stairs[state_index(h2, i, j)] = vec![(0, 0, Link::Base)];
                continue;
            }
            let mut cands = Vec::new();
            for k in j..=h2 {
                let (cw, cr) = (t.w2[i][k], t.r2[i][k]);
                for (p, &(w, r, _)) in stairs[state_index(h2, i + 1, j)].iter().enumerate() {
                    cands.push((
                        add(w, cw)?,
                        add(r, cr)?,
                        Link::Row {
                            k: k as u32,
                            pred: p as u32,
                        },
                    ));
                }
            }
            for k in i..=h1 {
                let (cw, cr) = (t.w1[k][j], t.r1[k][j]);
                for (p, &(w, r, _)) in stairs[state_index(h2, i, j + 1)].iter().enumerate() {
                    cands.push((
                        add(w, cw)?,
                        add(r, cr)?,
                        Link::Col {
                            k: k as u32,
                            pred: p as u32,
                        },
                    ));
                }
            }
            stairs[state_index(h2, i, j)] = prune_stairs(cands);
        }
    }
    Ok(DpPairSet {
        inst: inst.clone(),
        h1,
        h2,
        scale: t.scale,
        stairs,
    })
}

impl DpPairSet {
    fn root(&self) -> &[(i128, i128, Link)] {
        &self.stairs[0]
    }

    pub fn len(&self) -> usize {
        self.root().len()
    }

    pub fn is_empty(&self) -> bool {
        self.root().is_empty()
    }

    /// The exact Pareto set, welfare ascending.
    pub fn root_points(&self) -> Vec<ObjectivePoint> {
        self.root()
            .iter()
            .map(|&(w, r, _)| {
                ObjectivePoint::new(
                    Rat::new(BigInt::from(w), self.scale.clone()),
                    Rat::new(BigInt::from(r), self.scale.clone()),
                )
            })
            .collect()
    }

    /// A mechanism attaining the `idx`-th Pareto point.
    pub fn witness(&self, idx: usize) -> Result<Mechanism> {
        let a = walk_links(self.h1, self.h2, &self.stairs, idx);
        Mechanism::from_allocation(a, &self.inst)
    }

    /// All Pareto points with attaining mechanisms, welfare ascending.
    pub fn points_with_witnesses(&self) -> Result<Vec<(ObjectivePoint, Mechanism)>> {
        (0..self.len())
            .map(|i| Ok((self.root_points()[i].clone(), self.witness(i)?)))
            .collect()
    }
}

/// A mechanism componentwise at least as good as `target`, if any exists.
pub fn dominance_witness(inst: &Instance, target: &ObjectivePoint) -> Result<Option<Mechanism>> {
    let dp = achievable_pairs(inst)?;
    // Along the staircase revenue falls as welfare rises, so the first
    // entry with enough welfare has the best revenue among all of them.
    for (i, p) in dp.root_points().iter().enumerate() {
        if p.welfare >= target.welfare {
            if p.revenue >= target.revenue {
                let m = dp.witness(i)?;
                debug_assert!(m.objectives.at_least(target));
                return Ok(Some(m));
            }
            return Ok(None);
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Capped unit-grid pair sets
// ---------------------------------------------------------------------------

/// Pareto staircases of floor-rounded, saturating unit sums.
///
/// Each peel's welfare increment is floored to `floor(c / gamma_w)` units
/// (revenue likewise with `gamma_r`) and unit sums saturate at `cap_w` /
/// `cap_r`.  A root entry `(uw, ur)` certifies a mechanism with exact
/// welfare ≥ `uw·gamma_w` and revenue ≥ `ur·gamma_r`; conversely any
/// mechanism's entry loses less than one unit per peel, at most `h1 + h2`
/// in total, before saturation.
#[derive(Debug, Clone)]
pub struct CappedParetoDp {
    inst: Instance,
    h1: usize,
    h2: usize,
    gamma_w: Rat,
    gamma_r: Rat,
    cap_w: i128,
    cap_r: i128,
    stairs: Vec<Vec<(i128, i128, Link)>>,
}

pub fn capped_pareto(
    inst: &Instance,
    gamma_w: &Rat,
    gamma_r: &Rat,
    cap_w: i128,
    cap_r: i128,
) -> Result<CappedParetoDp> {
    if !gamma_w.is_positive() || !gamma_r.is_positive() {
        return Err(Error::InvalidArgument("unit sizes must be positive".into()));
    }
    if cap_w <= 0 || cap_r <= 0 {
        return Err(Error::InvalidArgument("caps must be positive".into()));
    }
    let t = contribution_tables(inst)?;
    let (h1, h2) = (t.h1, t.h2);
    // One welfare unit, in scaled-integer terms (likewise revenue).
    let qw = gamma_w * Rat::from_integer(t.scale.clone());
    let qr = gamma_r * Rat::from_integer(t.scale.clone());
    let fl = |c: i128, q: &Rat, cap: i128| -> i128 {
        let u = (BigInt::from(c) * q.denom()) / q.numer();
        if u > BigInt::from(cap) {
            cap
        } else {
            u.to_i128().expect("bounded by cap")
        }
    };
    let conv = |table: &Vec<Vec<i128>>, q: &Rat, cap: i128| -> Vec<Vec<i128>> {
        table
            .iter()
            .map(|row| row.iter().map(|&c| fl(c, q, cap)).collect())
            .collect()
    };
    let uw1 = conv(&t.w1, &qw, cap_w);
    let ur1 = conv(&t.r1, &qr, cap_r);
    let uw2 = conv(&t.w2, &qw, cap_w);
    let ur2 = conv(&t.r2, &qr, cap_r);

    let sat = |a: i128, b: i128, cap: i128| -> i128 { (a + b).min(cap) };
    let mut stairs: Vec<Vec<(i128, i128, Link)>> = vec![Vec::new(); (h1 + 1) * (h2 + 1)];
    for i in (0..=h1).rev() {
        for j in (0..=h2).rev() {
            if i == h1 || j == h2 {
                stairs[state_index(h2, i, j)] = vec![(0, 0, Link::Base)];
                continue;
            }
            let mut cands = Vec::new();
            for k in j..=h2 {
                let (cw, cr) = (uw2[i][k], ur2[i][k]);
                for (p, &(w, r, _)) in stairs[state_index(h2, i + 1, j)].iter().enumerate() {
                    cands.push((
                        sat(w, cw, cap_w),
                        sat(r, cr, cap_r),
                        Link::Row {
                            k: k as u32,
                            pred: p as u32,
                        },
                    ));
                }
            }
            for k in i..=h1 {
                let (cw, cr) = (uw1[k][j], ur1[k][j]);
                for (p, &(w, r, _)) in stairs[state_index(h2, i, j + 1)].iter().enumerate() {
                    cands.push((
                        sat(w, cw, cap_w),
                        sat(r, cr, cap_r),
                        Link::Col {
                            k: k as u32,
                            pred: p as u32,
                        },
                    ));
                }
            }
            stairs[state_index(h2, i, j)] = prune_stairs(cands);
        }
    }
    Ok(CappedParetoDp {
        inst: inst.clone(),
        h1,
        h2,
        gamma_w: gamma_w.clone(),
        gamma_r: gamma_r.clone(),
        cap_w,
        cap_r,
        stairs,
    })
}

impl CappedParetoDp {
    /// Root staircase of saturated unit pairs, welfare units ascending.
    pub fn root_units(&self) -> Vec<(i128, i128)> {
        self.stairs[0].iter().map(|&(w, r, _)| (w, r)).collect()
    }

    pub fn gamma_w(&self) -> &Rat {
        &self.gamma_w
    }

    pub fn gamma_r(&self) -> &Rat {
        &self.gamma_r
    }

    pub fn cap_w(&self) -> i128 {
        self.cap_w
    }

    pub fn cap_r(&self) -> i128 {
        self.cap_r
    }

    /// A mechanism whose rounded peel sums saturate to the `idx`-th root
    /// entry; its exact objectives weakly exceed the entry's unit values.
    pub fn witness(&self, idx: usize) -> Result<Mechanism> {
        let a = walk_links(self.h1, self.h2, &self.stairs, idx);
        let m = Mechanism::from_allocation(a, &self.inst)?;
        debug_assert!({
            let (uw, ur) = (self.stairs[0][idx].0, self.stairs[0][idx].1);
            m.objectives.welfare >= Rat::from_integer(BigInt::from(uw)) * &self.gamma_w
                && m.objectives.revenue >= Rat::from_integer(BigInt::from(ur)) * &self.gamma_r
        });
        Ok(m)
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
