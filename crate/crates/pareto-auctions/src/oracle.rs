//! Ground truth by exhaustion: enumerate every feasible mechanism.
//!
//! This module deliberately re-derives everything from first principles —
//! its own line tables, its own pruning — so it can serve as an independent
//! check on the dynamic programs.  Two enumeration strategies:
//!
//! * generic: fill the winner table cell by cell in row-major order,
//!   propagating the own-coordinate monotonicity constraint from already
//!   filled neighbours (any number of bidders, but the tuple count is
//!   capped);
//! * two-bidder thresholds: a feasible matrix is exactly a pair `(t1, t2)`
//!   where `t1[j]` is the first row bidder 1 wins in column `j` and `t2[i]`
//!   the first column bidder 2 wins in row `i`, subject only to
//!   `t2[i] > max{ j : t1[j] ≤ i }` so no cell is claimed twice.  This
//!   factorization makes the per-row choices independent, so Pareto fronts
//!   and exact counts come out of a per-row sweep instead of a full product.
//!
//! All results are exact; where integers are used they are instance values
//! scaled by a common denominator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dp::ScalarObjective;
use crate::model::{
    evaluate, pareto_filter, AllocationMatrix, Instance, Mechanism, ObjectivePoint,
};
use crate::rational::{lcm_denom, scale_to_int, to_i128, Rat};
use crate::{Error, Result};

/// Largest tuple count the generic cell-by-cell enumeration accepts.
pub const ENUMERATION_CELL_LIMIT: usize = 16;
/// Largest per-bidder support the two-bidder threshold sweep accepts.
pub const THRESHOLD_SUPPORT_LIMIT: usize = 6;

// ---------------------------------------------------------------------------
// Generic enumeration
// ---------------------------------------------------------------------------

/// Every monotone allocation matrix of the instance, in a fixed order.
pub fn enumerate_feasible(inst: &Instance) -> Result<Vec<AllocationMatrix>> {
    let cells = inst.num_tuples();
    if cells > ENUMERATION_CELL_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "enumeration handles at most {ENUMERATION_CELL_LIMIT} valuation tuples, got {cells}"
        )));
    }
    let shape = inst.shape();
    let n = shape.len();
    let strides: Vec<usize> = (0..n).map(|b| shape[b + 1..].iter().product()).collect();
    let coord = |flat: usize, b: usize| (flat / strides[b]) % shape[b];

    let mut out = Vec::new();
    let mut winners = vec![0u8; cells];
    // Depth-first over cells; a cell's choice is forced to `b+1` whenever
    // its predecessor along axis b was won by bidder b+1 (else that bidder
    // would stop winning as their own value rises).
    fn fill(
        cell: usize,
        cells: usize,
        n: usize,
        shape: &[usize],
        strides: &[usize],
        coord: &dyn Fn(usize, usize) -> usize,
        winners: &mut Vec<u8>,
        out: &mut Vec<AllocationMatrix>,
    ) {
        if cell == cells {
            out.push(AllocationMatrix::new(shape.to_vec(), winners.clone()).expect("valid"));
            return;
        }
        let mut forced: Option<u8> = None;
        for b in 0..n {
            if coord(cell, b) > 0 && winners[cell - strides[b]] == (b + 1) as u8 {
                match forced {
                    None => forced = Some((b + 1) as u8),
                    // Two distinct bidders both require this cell: dead end.
                    Some(w) if w != (b + 1) as u8 => return,
                    Some(_) => {}
                }
            }
        }
        match forced {
            Some(w) => {
                winners[cell] = w;
                fill(cell + 1, cells, n, shape, strides, coord, winners, out);
            }
            None => {
                for w in 0..=n as u8 {
                    winners[cell] = w;
                    fill(cell + 1, cells, n, shape, strides, coord, winners, out);
                }
            }
        }
        winners[cell] = 0;
    }
    fill(0, cells, n, &shape, &strides, &coord, &mut winners, &mut out);
    Ok(out)
}

/// All values one objective attains over the feasible mechanisms, ascending
/// and deduplicated.  Uses the generic enumeration.
pub fn oracle_value_set(inst: &Instance, objective: ScalarObjective) -> Result<Vec<Rat>> {
    let mut seen = std::collections::BTreeSet::new();
    for a in enumerate_feasible(inst)? {
        let p = evaluate(&a, inst)?;
        seen.insert(match objective {
            ScalarObjective::Welfare => p.welfare,
            ScalarObjective::Revenue => p.revenue,
        });
    }
    Ok(seen.into_iter().collect())
}

/// The number of feasible mechanisms: closed-form threshold counting for
/// two bidders, plain enumeration otherwise.
pub fn count_feasible(inst: &Instance) -> Result<u128> {
    if inst.n() != 2 {
        return Ok(enumerate_feasible(inst)?.len() as u128);
    }
    let h1 = inst.marginal(0).support_size();
    let h2 = inst.marginal(1).support_size();
    let outer = (h1 as u128 + 1)
        .checked_pow(h2 as u32)
        .filter(|&c| c <= 5_000_000)
        .ok_or_else(|| {
            Error::LimitExceeded("too many column-threshold combinations to count".into())
        })?;
    let _ = outer;
    let mut total: u128 = 0;
    let mut t1 = vec![0usize; h2];
    loop {
        // Row i admits t2[i] ∈ { J_i + 1, …, h2 }: h2 − J_i choices, where
        // J_i is the rightmost column bidder 1 wins in row i (−1 if none).
        let mut product: u128 = 1;
        for i in 0..h1 {
            let j_max = (0..h2).rev().find(|&j| t1[j] <= i);
            let choices = match j_max {
                Some(j) => (h2 - j) as u128,
                None => (h2 + 1) as u128,
            };
            product = product.checked_mul(choices).ok_or_else(|| {
                Error::LimitExceeded("feasible mechanism count overflowed".into())
            })?;
        }
        total = total
            .checked_add(product)
            .ok_or_else(|| Error::LimitExceeded("feasible mechanism count overflowed".into()))?;
        if !next_radix(&mut t1, h1 + 1) {
            break;
        }
    }
    Ok(total)
}

/// Advances a little-endian-last mixed-radix counter; false on wraparound.
fn next_radix(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// Independent line tables (two bidders)
// ---------------------------------------------------------------------------

struct LineTables {
    scale: BigInt,
    /// `w1[k][j]`, `r1[k][j]`: scaled objectives of bidder 1 winning rows
    /// `≥ k` of column `j` at price `v1^k`; `k = h1` sells nothing.
    w1: Vec<Vec<i128>>,
    r1: Vec<Vec<i128>>,
    /// `w2[i][k]`, `r2[i][k]`: bidder 2 winning columns `≥ k` of row `i`.
    w2: Vec<Vec<i128>>,
    r2: Vec<Vec<i128>>,
}

fn line_tables(inst: &Instance) -> Result<LineTables> {
    let h1 = inst.marginal(0).support_size();
    let h2 = inst.marginal(1).support_size();
    let v1 = inst.marginal(0).values();
    let v2 = inst.marginal(1).values();
    let mut w1 = vec![vec![Rat::zero(); h2]; h1 + 1];
    let mut r1 = vec![vec![Rat::zero(); h2]; h1 + 1];
    let mut w2 = vec![vec![Rat::zero(); h2 + 1]; h1];
    let mut r2 = vec![vec![Rat::zero(); h2 + 1]; h1];
    for j in 0..h2 {
        for k in 0..h1 {
            let mut welfare = Rat::zero();
            let mut mass = Rat::zero();
            for row in k..h1 {
                let f = inst.mass_of(&[row, j]);
                welfare += &v1[row] * &f;
                mass += &f;
            }
            w1[k][j] = welfare;
            r1[k][j] = &v1[k] * &mass;
        }
    }
    for i in 0..h1 {
        for k in 0..h2 {
            let mut welfare = Rat::zero();
            let mut mass = Rat::zero();
            for col in k..h2 {
                let f = inst.mass_of(&[i, col]);
                welfare += &v2[col] * &f;
                mass += &f;
            }
            w2[i][k] = welfare;
            r2[i][k] = &v2[k] * &mass;
        }
    }
    let mut scale = BigInt::from(1);
    for t in [&w1, &r1, &w2, &r2] {
        for row in t.iter() {
            for x in row {
                scale = lcm_denom(&scale, x);
            }
        }
    }
    let conv = |t: &Vec<Vec<Rat>>| -> Result<Vec<Vec<i128>>> {
        t.iter()
            .map(|row| row.iter().map(|x| to_i128(&scale_to_int(x, &scale))).collect())
            .collect()
    };
    Ok(LineTables {
        w1: conv(&w1)?,
        r1: conv(&r1)?,
        w2: conv(&w2)?,
        r2: conv(&r2)?,
        scale,
    })
}

// ---------------------------------------------------------------------------
// Two-bidder Pareto front by threshold sweep
// ---------------------------------------------------------------------------

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::ScaleOverflow)
}

/// Dominance-prunes `(welfare, revenue, payload)` candidates; first
/// generated wins coordinate ties.
fn prune_partials<T>(mut cands: Vec<(i128, i128, T)>) -> Vec<(i128, i128, T)> {
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let mut kept: Vec<(i128, i128, T)> = Vec::new();
    for c in cands {
        if kept.last().map_or(true, |l| c.1 > l.1) {
            kept.push(c);
        }
    }
    kept.reverse();
    kept
}

/// Inserts into a welfare-keyed staircase, dropping dominated entries; an
/// existing equal-or-better entry wins.
fn stair_insert<T>(map: &mut BTreeMap<i128, (i128, T)>, w: i128, r: i128, payload: T) {
    if let Some((_, (r2, _))) = map.range(w..).next() {
        if *r2 >= r {
            return;
        }
    }
    let doomed: Vec<i128> = map
        .range(..=w)
        .rev()
        .take_while(|(_, (r2, _))| *r2 <= r)
        .map(|(k, _)| *k)
        .collect();
    for k in doomed {
        map.remove(&k);
    }
    map.insert(w, (r, payload));
}

fn matrix_from_thresholds(h1: usize, h2: usize, t1: &[usize], t2: &[usize]) -> AllocationMatrix {
    let mut a = AllocationMatrix::zeros(vec![h1, h2]);
    for i in 0..h1 {
        for j in 0..h2 {
            if i >= t1[j] {
                a.set(&[i, j], 1);
            } else if j >= t2[i] {
                a.set(&[i, j], 2);
            }
        }
    }
    a
}

/// The exact Pareto front with attaining mechanisms, welfare ascending.
///
/// Two bidders use the threshold sweep (supports up to
/// [`THRESHOLD_SUPPORT_LIMIT`]); other arities fall back to the generic
/// enumeration.
pub fn oracle_pareto(inst: &Instance) -> Result<Vec<(ObjectivePoint, Mechanism)>> {
    if inst.n() != 2 {
        let mechs: Vec<Mechanism> = enumerate_feasible(inst)?
            .into_iter()
            .map(|a| Mechanism::from_allocation(a, inst))
            .collect::<Result<_>>()?;
        let points = mechs
            .iter()
            .enumerate()
            .map(|(i, m)| (m.objectives.clone(), i as u64))
            .collect();
        let set = pareto_filter(points);
        return Ok(set
            .points
            .into_iter()
            .map(|(p, h)| (p, mechs[h as usize].clone()))
            .collect());
    }

    let h1 = inst.marginal(0).support_size();
    let h2 = inst.marginal(1).support_size();
    if h1 > THRESHOLD_SUPPORT_LIMIT || h2 > THRESHOLD_SUPPORT_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "threshold sweep handles supports up to {THRESHOLD_SUPPORT_LIMIT}, got {h1}×{h2}"
        )));
    }
    let t = line_tables(inst)?;
    let mut frontier: BTreeMap<i128, (i128, (Vec<usize>, Vec<usize>))> = BTreeMap::new();
    let mut t1 = vec![0usize; h2];
    loop {
        let mut wc: i128 = 0;
        let mut rc: i128 = 0;
        for j in 0..h2 {
            wc = add(wc, t.w1[t1[j]][j])?;
            rc = add(rc, t.r1[t1[j]][j])?;
        }
        // Rows choose independently above the bidder-1 boundary.
        let mut partial: Vec<(i128, i128, Vec<usize>)> = vec![(wc, rc, Vec::new())];
        for i in 0..h1 {
            let lo = match (0..h2).rev().find(|&j| t1[j] <= i) {
                Some(j) => j + 1,
                None => 0,
            };
            let mut next = Vec::with_capacity(partial.len() * (h2 + 1 - lo));
            for k in lo..=h2 {
                for (w, r, pre) in &partial {
                    let mut t2 = pre.clone();
                    t2.push(k);
                    next.push((add(*w, t.w2[i][k])?, add(*r, t.r2[i][k])?, t2));
                }
            }
            partial = prune_partials(next);
        }
        for (w, r, t2) in partial {
            stair_insert(&mut frontier, w, r, (t1.clone(), t2));
        }
        if !next_radix(&mut t1, h1 + 1) {
            break;
        }
    }

    let mut out = Vec::with_capacity(frontier.len());
    for (w, (r, (t1, t2))) in frontier {
        let a = matrix_from_thresholds(h1, h2, &t1, &t2);
        let m = Mechanism::from_allocation(a, inst)?;
        debug_assert_eq!(
            m.objectives,
            ObjectivePoint::new(
                Rat::new(BigInt::from(w), t.scale.clone()),
                Rat::new(BigInt::from(r), t.scale.clone())
            )
        );
        out.push((m.objectives.clone(), m));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Single bidder: posted prices
// ---------------------------------------------------------------------------

/// The Pareto front of a one-bidder instance.  Every deterministic
/// mechanism is a posted price at a support value; `points` pairs each
/// undominated price's support index with its objectives, welfare
/// ascending.  `convex` reports whether that front bulges nowhere inward:
/// revenue as a function of welfare makes no left turn.
#[derive(Debug, Clone)]
pub struct SingleBidderCurve {
    pub points: Vec<(usize, ObjectivePoint)>,
    pub convex: bool,
}

impl SingleBidderCurve {
    /// The posted-price mechanism behind the `idx`-th point.
    pub fn mechanism(&self, inst: &Instance, idx: usize) -> Result<Mechanism> {
        let h = inst.marginal(0).support_size();
        let k = self.points[idx].0;
        let winners = (0..h).map(|m| u8::from(m >= k)).collect();
        Mechanism::from_allocation(AllocationMatrix::new(vec![h], winners)?, inst)
    }
}

pub fn single_bidder_curve(inst: &Instance) -> Result<SingleBidderCurve> {
    if inst.n() != 1 {
        return Err(Error::ArityError {
            op: "single-bidder curve".into(),
            n: inst.n(),
        });
    }
    let m = inst.marginal(0);
    let candidates: Vec<(ObjectivePoint, u64)> = (0..m.support_size())
        .map(|k| {
            let welfare: Rat = (k..m.support_size())
                .map(|j| &m.values()[j] * &m.masses()[j])
                .sum();
            let revenue = &m.values()[k] * m.tail_mass(k);
            (ObjectivePoint::new(welfare, revenue), k as u64)
        })
        .collect();
    let set = pareto_filter(candidates);
    let points: Vec<(usize, ObjectivePoint)> = set
        .points
        .into_iter()
        .map(|(p, h)| (h as usize, p))
        .collect();
    let convex = points.windows(3).all(|t| {
        let (a, b, c) = (&t[0].1, &t[1].1, &t[2].1);
        let turn = (&b.welfare - &a.welfare) * (&c.revenue - &b.revenue)
            - (&b.revenue - &a.revenue) * (&c.welfare - &b.welfare);
        !num_traits::Signed::is_positive(&turn)
    });
    Ok(SingleBidderCurve { points, convex })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
