//! Approximate Pareto machinery for two bidders: a welfare/revenue gap
//! oracle built on the rounded joint dynamic program, and an ε-Pareto set
//! constructed from a geometric grid of gap queries.
//!
//! The gap oracle answers the following promise problem for a bound
//! `b = (W0, R0)` and a slack `δ > 0`: either produce a feasible
//! mechanism whose exact objectives weakly dominate `b` in both
//! coordinates, or certify that no feasible mechanism reaches
//! `((1+δ)·W0, (1+δ)·R0)`.  Between those two regimes either answer is
//! acceptable.  The oracle runs the capped unit-grid dynamic program with
//! welfare unit `δ·W0 / (4(h1+h2))` and revenue unit `δ·R0 / (4(h1+h2))`
//! and both caps at `⌈4(h1+h2)/δ⌉`; each decomposition performs at most
//! `h1+h2` peels and each peel floors once per coordinate, so a
//! mechanism's unit pair under-counts its true objectives by fewer than
//! `h1+h2` units per coordinate.  Consequently:
//!
//! - any mechanism with objectives ≥ `b` produces a root entry at least
//!   `cap − (h1+h2)` in both coordinates, and
//! - any mechanism with objectives ≥ `(1+δ)·b` saturates both caps, and a
//!   saturated entry's witness is guaranteed to reach `b` exactly.
//!
//! The oracle therefore scans root entries within `h1+h2` units of the
//! cap, re-evaluates each witness exactly, and returns the first that
//! truly dominates the bound; if none does it answers `NoCertificate`,
//! which the saturation argument shows is sound.
//!
//! The ε-Pareto construction lays a geometric grid of ratio `1+δ`
//! (`δ = min(ε/4, 2)`) across `[L/(1+δ)², U]`, where `U` is the expected
//! maximum valuation (an upper bound on both objectives) and `L` is the
//! smallest positive objective value (one unit of the common denominator
//! of all contributions).  A two-pointer sweep issues one gap query per
//! grid step — advancing the welfare index after each mechanism found and
//! lowering the revenue index after each refusal — and the answers,
//! seeded with the welfare-maximal second-price mechanism and pruned to
//! an antichain, `(1+δ)² ≤ 1+ε`-cover every feasible objective point.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::dp::{capped_pareto, contribution_tables};
use crate::mechanisms::vickrey;
use crate::model::{pareto_filter_mechanisms, Instance, Mechanism, ObjectivePoint};
use crate::rational::{ceil_int, rat_int, to_i128, Rat};
use crate::{Error, Result};

/// Largest accepted unit cap `⌈4(h1+h2)/δ⌉`.  The dynamic program stores
/// up to one staircase entry per welfare unit per subproblem, so the cap
/// bounds memory; refusing extreme slacks keeps a single query's
/// footprint in the tens of megabytes.
const CAP_LIMIT: i128 = 2_000_000;

/// Outcome of a gap query.
#[derive(Debug, Clone)]
pub enum GapAnswer {
    /// A feasible mechanism whose exact objectives weakly dominate the
    /// queried bound in both coordinates (re-verified, not inferred from
    /// rounded values).
    Mechanism(Box<Mechanism>),
    /// A certificate that no feasible mechanism weakly dominates
    /// `(1+δ)` times the bound in both coordinates.
    NoCertificate,
}

impl GapAnswer {
    pub fn mechanism(&self) -> Option<&Mechanism> {
        match self {
            GapAnswer::Mechanism(m) => Some(m),
            GapAnswer::NoCertificate => None,
        }
    }

    pub fn is_no_certificate(&self) -> bool {
        matches!(self, GapAnswer::NoCertificate)
    }
}

/// Decides, up to a multiplicative slack `delta`, whether any feasible
/// mechanism reaches the bound in both objectives at once.
///
/// Returns either a mechanism with exact objectives ≥ `bound`
/// componentwise, or [`GapAnswer::NoCertificate`] asserting that no
/// feasible mechanism attains `(1+delta)·bound` componentwise.  Both
/// bound coordinates must be strictly positive and `delta` must be
/// strictly positive.
pub fn gap_query(inst: &Instance, bound: &ObjectivePoint, delta: &Rat) -> Result<GapAnswer> {
    let n = inst.n();
    if n != 2 {
        return Err(Error::ArityError {
            op: "gap query".into(),
            n,
        });
    }
    if !delta.is_positive() {
        return Err(Error::NonPositiveDelta);
    }
    if !bound.welfare.is_positive() || !bound.revenue.is_positive() {
        return Err(Error::NonPositiveBound);
    }
    let (h1, h2) = {
        let s = inst.shape();
        (s[0], s[1])
    };
    let peels = h1 + h2;
    let four_p = rat_int(4 * peels as i64);
    let gamma_w = delta * &bound.welfare / &four_p;
    let gamma_r = delta * &bound.revenue / &four_p;
    let cap = to_i128(&ceil_int(&(&four_p / delta)))?;
    if cap > CAP_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "gap rounding grid needs {cap} units per coordinate (limit {CAP_LIMIT}); \
             use a larger delta"
        )));
    }
    let dp = capped_pareto(inst, &gamma_w, &gamma_r, cap, cap)?;
    // Any mechanism dominating the bound lands within `peels` units of the
    // cap in both coordinates; candidates inside that window may still fall
    // short, so each witness is re-evaluated exactly.
    let window = cap - peels as i128;
    for (idx, (uw, ur)) in dp.root_units().into_iter().enumerate() {
        if uw >= window && ur >= window {
            let mech = dp.witness(idx)?;
            if mech.objectives.at_least(bound) {
                return Ok(GapAnswer::Mechanism(Box::new(mech)));
            }
        }
    }
    Ok(GapAnswer::NoCertificate)
}

/// Builds an ε-Pareto set of the welfare/revenue trade-off: a short list
/// of feasible mechanisms such that every feasible mechanism's objective
/// point `q` is covered by some listed point `p` with `p ≥ q/(1+eps)`
/// componentwise.
///
/// Pairs are returned in strictly increasing welfare (and strictly
/// decreasing revenue) order, each mechanism with its exact objective
/// point.  The list size is O((1/ε)·log(U·D)) where `U` bounds the
/// objectives and `1/D` is the smallest positive objective value.
pub fn eps_pareto(inst: &Instance, eps: &Rat) -> Result<Vec<(Mechanism, ObjectivePoint)>> {
    let n = inst.n();
    if n != 2 {
        return Err(Error::ArityError {
            op: "eps-pareto construction".into(),
            n,
        });
    }
    if !eps.is_positive() {
        return Err(Error::NonPositiveEps);
    }
    // (1+δ)² ≤ 1+ε needs δ ≤ ε/4 for ε ≤ 8 and δ ≤ 2 beyond that.
    let mut delta = eps / rat_int(4);
    let two = rat_int(2);
    if delta > two {
        delta = two;
    }

    // Positive objective values live in [L, U]: every objective is an
    // integer multiple of 1/D, and U = E[max bidder value] bounds welfare,
    // hence also revenue.
    let t = contribution_tables(inst)?;
    let lower = Rat::new(BigInt::one(), t.scale.clone());
    let upper = inst.welfare_upper_bound();
    let ratio = Rat::one() + &delta;

    // Two grid steps below L guarantee that for any achievable value
    // `x ≥ L` some grid point sits in [x/(1+δ)², x/(1+δ)].
    let mut grid: Vec<Rat> = Vec::new();
    let mut g = &lower / (&ratio * &ratio);
    loop {
        grid.push(g.clone());
        if g >= upper {
            break;
        }
        g = g * &ratio;
    }

    // The second-price mechanism pins the maximum-welfare endpoint and
    // covers zero-revenue points, which the positive grid cannot reach.
    let mut mechs: Vec<Mechanism> = vec![vickrey(inst)?];

    // For each welfare level (ascending) find the highest revenue level
    // the gap oracle still certifies.  The refusal at (w, r) rules out
    // every mechanism with objectives ≥ ((1+δ)w, (1+δ)r), so the revenue
    // pointer never needs to move back up at higher welfare levels.
    let m = grid.len();
    let mut b_idx = m as isize - 1;
    for a in 0..m {
        while b_idx >= 0 {
            let bound = ObjectivePoint {
                welfare: grid[a].clone(),
                revenue: grid[b_idx as usize].clone(),
            };
            match gap_query(inst, &bound, &delta)? {
                GapAnswer::Mechanism(mech) => {
                    mechs.push(*mech);
                    break;
                }
                GapAnswer::NoCertificate => b_idx -= 1,
            }
        }
        if b_idx < 0 {
            // No mechanism with positive revenue reaches this welfare
            // level; higher levels are covered by the seed alone.
            break;
        }
    }

    let (set, mut by_handle) = pareto_filter_mechanisms(mechs);
    Ok(set
        .points
        .into_iter()
        .map(|(p, h)| (by_handle.remove(&h).expect("surviving handle"), p))
        .collect())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{eps_covers, MarginalDistribution};
    use crate::oracle::oracle_pareto;
    use crate::rational::{rat, rat_int};

    fn nonconvex_instance() -> Instance {
        Instance::product(vec![
            MarginalDistribution::new(vec![rat_int(11), rat_int(20)], vec![rat(1, 3), rat(2, 3)])
                .unwrap(),
            MarginalDistribution::new(vec![rat_int(2), rat_int(5)], vec![rat(1, 3), rat(2, 3)])
                .unwrap(),
        ])
        .unwrap()
    }

    fn uniform_pair() -> Instance {
        Instance::product(vec![
            MarginalDistribution::new(vec![rat_int(1), rat_int(2)], vec![rat(1, 2), rat(1, 2)])
                .unwrap(),
            MarginalDistribution::new(vec![rat_int(1), rat_int(3)], vec![rat(1, 2), rat(1, 2)])
                .unwrap(),
        ])
        .unwrap()
    }

    fn singleton_pair() -> Instance {
        Instance::product(vec![
            MarginalDistribution::new(vec![rat_int(1)], vec![rat_int(1)]).unwrap(),
            MarginalDistribution::new(vec![rat_int(2)], vec![rat_int(1)]).unwrap(),
        ])
        .unwrap()
    }

    fn ones_pair() -> Instance {
        Instance::product(vec![
            MarginalDistribution::new(vec![rat_int(1)], vec![rat_int(1)]).unwrap(),
            MarginalDistribution::new(vec![rat_int(1)], vec![rat_int(1)]).unwrap(),
        ])
        .unwrap()
    }

    fn point(w: Rat, r: Rat) -> ObjectivePoint {
        ObjectivePoint {
            welfare: w,
            revenue: r,
        }
    }

    #[test]
    fn gap_accepts_the_second_price_point() {
        let inst = nonconvex_instance();
        let b = vickrey(&inst).unwrap().objectives;
        assert_eq!(b, point(rat_int(17), rat_int(11)));
        let ans = gap_query(&inst, &b, &rat(1, 10)).unwrap();
        let m = ans.mechanism().expect("the bound itself is feasible");
        // The only feasible point weakly dominating (17, 11) is (17, 11).
        assert_eq!(m.objectives, b);
    }

    #[test]
    fn gap_refuses_past_the_welfare_bound() {
        let inst = nonconvex_instance();
        // Expected maximum valuation is 17, so welfare 18 is out of reach
        // no matter the slack.
        let b = point(rat_int(18), rat_int(1));
        for delta in [rat(1, 10), rat_int(2), rat_int(10)] {
            assert!(gap_query(&inst, &b, &delta).unwrap().is_no_certificate());
        }
    }

    #[test]
    fn gap_on_singleton_supports() {
        let inst = singleton_pair();
        let ans = gap_query(&inst, &point(rat_int(2), rat_int(2)), &rat(1, 10)).unwrap();
        let m = ans.mechanism().expect("selling to bidder 2 attains (2, 2)");
        assert_eq!(m.allocation.winners(), &[2]);
        assert_eq!(m.objectives, point(rat_int(2), rat_int(2)));
    }

    #[test]
    fn gap_validates_inputs() {
        let inst = nonconvex_instance();
        let b = point(rat_int(1), rat_int(1));
        assert!(matches!(
            gap_query(&inst, &b, &rat_int(0)),
            Err(Error::NonPositiveDelta)
        ));
        assert!(matches!(
            gap_query(&inst, &b, &rat_int(-1)),
            Err(Error::NonPositiveDelta)
        ));
        for bad in [
            point(rat_int(0), rat_int(1)),
            point(rat_int(1), rat_int(0)),
            point(rat_int(-1), rat_int(1)),
        ] {
            assert!(matches!(
                gap_query(&inst, &bad, &rat(1, 10)),
                Err(Error::NonPositiveBound)
            ));
        }
        let one = Instance::product(vec![MarginalDistribution::new(
            vec![rat_int(1)],
            vec![rat_int(1)],
        )
        .unwrap()])
        .unwrap();
        assert!(matches!(
            gap_query(&one, &b, &rat(1, 10)),
            Err(Error::ArityError { n: 1, .. })
        ));
        assert!(matches!(
            gap_query(&inst, &b, &rat(1, 10_000_000)),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn gap_answers_are_sound_against_enumeration() {
        let delta = rat(1, 3);
        let scale = Rat::one() + &delta;
        for inst in [nonconvex_instance(), uniform_pair()] {
            let front = oracle_pareto(&inst).unwrap();
            let mut bounds = Vec::new();
            for (q, _) in &front {
                bounds.push(q.clone());
                bounds.push(point(&q.welfare * rat(9, 10), &q.revenue * rat(9, 10)));
                bounds.push(point(&q.welfare * rat(11, 10), &q.revenue * rat(11, 10)));
                bounds.push(point(q.welfare.clone(), &q.revenue * rat(3, 2)));
            }
            bounds.push(point(rat(1, 7), rat(1, 7)));
            for b in bounds {
                if !b.welfare.is_positive() || !b.revenue.is_positive() {
                    continue;
                }
                match gap_query(&inst, &b, &delta).unwrap() {
                    GapAnswer::Mechanism(m) => {
                        assert!(m.objectives.at_least(&b), "witness must reach the bound");
                    }
                    GapAnswer::NoCertificate => {
                        let inflated =
                            point(&b.welfare * &scale, &b.revenue * &scale);
                        assert!(
                            !front.iter().any(|(q, _)| q.at_least(&inflated)),
                            "refusal contradicts a feasible point above {inflated}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eps_pareto_covers_the_exact_front() {
        let inst = nonconvex_instance();
        let eps = rat(1, 20);
        let cover = eps_pareto(&inst, &eps).unwrap();
        for (m, p) in &cover {
            assert_eq!(m.objectives, *p);
        }
        for i in 0..cover.len() {
            for j in 0..cover.len() {
                if i != j {
                    assert!(!cover[i].1.dominates(&cover[j].1));
                }
            }
        }
        let front = oracle_pareto(&inst).unwrap();
        for (q, _) in &front {
            assert!(
                cover
                    .iter()
                    .any(|(_, p)| eps_covers(p, q, &eps).unwrap()),
                "exact point {q} not covered"
            );
        }
        // The welfare-maximal point survives pruning verbatim.
        assert!(cover
            .iter()
            .any(|(_, p)| *p == point(rat_int(17), rat_int(11))));
    }

    #[test]
    fn eps_pareto_covers_uniform_supports() {
        let inst = uniform_pair();
        let eps = rat(1, 10);
        let cover = eps_pareto(&inst, &eps).unwrap();
        let front = oracle_pareto(&inst).unwrap();
        for (q, _) in &front {
            assert!(cover.iter().any(|(_, p)| eps_covers(p, q, &eps).unwrap()));
        }
    }

    #[test]
    fn eps_pareto_with_coarse_eps_still_covers() {
        // ε = 100 exercises the δ = min(ε/4, 2) guard: (1+2)² = 9 ≤ 101.
        let inst = uniform_pair();
        let eps = rat_int(100);
        let cover = eps_pareto(&inst, &eps).unwrap();
        assert!(!cover.is_empty());
        let front = oracle_pareto(&inst).unwrap();
        for (q, _) in &front {
            assert!(cover.iter().any(|(_, p)| eps_covers(p, q, &eps).unwrap()));
        }
    }

    #[test]
    fn eps_pareto_on_unit_values() {
        let inst = ones_pair();
        let cover = eps_pareto(&inst, &rat(1, 2)).unwrap();
        let target = point(rat_int(1), rat_int(1));
        assert!(cover
            .iter()
            .any(|(_, p)| eps_covers(p, &target, &rat(1, 2)).unwrap()));
    }

    #[test]
    fn eps_pareto_validates_inputs() {
        let inst = nonconvex_instance();
        assert!(matches!(
            eps_pareto(&inst, &rat_int(0)),
            Err(Error::NonPositiveEps)
        ));
        assert!(matches!(
            eps_pareto(&inst, &rat_int(-1)),
            Err(Error::NonPositiveEps)
        ));
        let one = Instance::product(vec![MarginalDistribution::new(
            vec![rat_int(1)],
            vec![rat_int(1)],
        )
        .unwrap()])
        .unwrap();
        assert!(matches!(
            eps_pareto(&one, &rat(1, 2)),
            Err(Error::ArityError { n: 1, .. })
        ));
    }
}
