//! Classic mechanisms: the welfare end, the revenue end, and the λ-family
//! spanning the randomized trade-off between them.
//!
//! For independent bidders, a monotone allocation's expected revenue equals
//! its expected *virtual* surplus: per bidder, `φ^j = v^j − (v^{j+1} −
//! v^j)·(tail mass above j)/f^j` and, summing the telescope over a winning
//! suffix, threshold revenue is exactly `Σ f^j φ^j` over winning indices.
//! Maximizing pointwise therefore maximizes revenue — once `φ` is replaced
//! by its non-decreasing *ironed* version `φ̄` (isotonic regression under
//! the mass weights, equivalently the slopes of the concave hull of the
//! price-posting revenue curve in quantile space), which keeps expectation
//! sums intact on pooled blocks while making the greedy rule monotone.
//!
//! The same telescope with objective `revenue + λ·welfare` uses `ψ = φ +
//! λ·v`; ironing `ψ` and allocating to the largest non-negative ironed
//! value (lowest bidder index on ties) is optimal for every `λ ≥ 0`.
//! Sweeping λ and bisecting exactly on the crossing slopes enumerates the
//! vertices of the upper convex envelope of the welfare/revenue cloud, and
//! mixing two adjacent vertices hits any prescribed welfare on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::model::{
    for_each_tuple, AllocationMatrix, Instance, Mechanism, ObjectivePoint,
};
use crate::rational::{format_rat, lcm_denom, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Virtual values and ironing
// ---------------------------------------------------------------------------

/// Per-bidder discrete virtual valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualValueTable {
    pub per_bidder: Vec<Vec<Rat>>,
    /// True iff every bidder's table is non-decreasing.
    pub regular: bool,
}

/// Per-bidder ironed (non-decreasing) virtual valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IronedCurve {
    pub per_bidder: Vec<Vec<Rat>>,
}

pub fn virtual_values(inst: &Instance) -> Result<VirtualValueTable> {
    if inst.is_correlated() {
        return Err(Error::CorrelatedUnsupported {
            op: "virtual values".into(),
        });
    }
    let per_bidder: Vec<Vec<Rat>> = inst
        .marginals()
        .iter()
        .map(|m| {
            let h = m.support_size();
            (0..h)
                .map(|j| {
                    if j + 1 == h {
                        m.values()[j].clone()
                    } else {
                        &m.values()[j]
                            - (&m.values()[j + 1] - &m.values()[j]) * m.tail_mass(j + 1)
                                / &m.masses()[j]
                    }
                })
                .collect()
        })
        .collect();
    let regular = per_bidder
        .iter()
        .all(|phi| phi.windows(2).all(|w| w[0] <= w[1]));
    Ok(VirtualValueTable { per_bidder, regular })
}

/// Weighted isotonic regression by pooling adjacent violators: the closest
/// non-decreasing sequence under the (positive) weights, which replaces
/// each pooled block by its weighted average and hence preserves every
/// block's weighted sum.
pub fn iron_nondecreasing(values: &[Rat], weights: &[Rat]) -> Vec<Rat> {
    // Stack of blocks (weighted sum, weight, length), averages increasing.
    let mut blocks: Vec<(Rat, Rat, usize)> = Vec::new();
    for (v, w) in values.iter().zip(weights) {
        let mut cur = (v * w, w.clone(), 1usize);
        while let Some(top) = blocks.last() {
            // Merge while the previous average exceeds the current one.
            if &top.0 * &cur.1 > &cur.0 * &top.1 {
                let (s, w0, len) = blocks.pop().expect("nonempty");
                cur = (cur.0 + s, cur.1 + w0, cur.2 + len);
            } else {
                break;
            }
        }
        blocks.push(cur);
    }
    let mut out = Vec::with_capacity(values.len());
    for (s, w, len) in blocks {
        let avg = s / w;
        out.extend(std::iter::repeat(avg).take(len));
    }
    out
}

pub fn iron(vv: &VirtualValueTable, inst: &Instance) -> Result<IronedCurve> {
    if inst.is_correlated() {
        return Err(Error::CorrelatedUnsupported { op: "ironing".into() });
    }
    Ok(IronedCurve {
        per_bidder: vv
            .per_bidder
            .iter()
            .zip(inst.marginals())
            .map(|(phi, m)| iron_nondecreasing(phi, m.masses()))
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// The mechanisms
// ---------------------------------------------------------------------------

/// Highest value wins (lowest bidder index on ties), threshold payments.
/// Welfare-maximal; correlation is fine since no distributional information
/// enters the allocation.
pub fn vickrey(inst: &Instance) -> Result<Mechanism> {
    let shape = inst.shape();
    let mut a = AllocationMatrix::zeros(shape.clone());
    for_each_tuple(&shape, |idx| {
        let mut best = 0usize;
        for b in 1..inst.n() {
            if inst.marginal(b).values()[idx[b]] > inst.marginal(best).values()[idx[best]] {
                best = b;
            }
        }
        a.set(idx, (best + 1) as u8);
    });
    Mechanism::from_allocation(a, inst)
}

/// Revenue-optimal deterministic mechanism for independent bidders:
/// allocate to the largest non-negative ironed virtual value.
pub fn myerson(inst: &Instance) -> Result<Mechanism> {
    lambda_optimal(inst, &Rat::zero())
}

/// Maximizes `revenue + λ·welfare` over all feasible mechanisms (λ = 0 is
/// exactly [`myerson`]): allocate to the largest non-negative ironed
/// combined value `iron(φ + λ·v)`, lowest bidder index on ties.
///
/// Allocation happens *on* zero as well; at λ = 0 a zero ironed virtual
/// value is revenue-neutral either way, and allocating keeps the λ-family
/// pointwise consistent as λ → 0.
pub fn lambda_optimal(inst: &Instance, lambda: &Rat) -> Result<Mechanism> {
    if lambda.is_negative() {
        return Err(Error::NegativeLambda);
    }
    let vv = virtual_values(inst)?;
    let combined: Vec<Vec<Rat>> = vv
        .per_bidder
        .iter()
        .zip(inst.marginals())
        .map(|(phi, m)| {
            let psi: Vec<Rat> = phi
                .iter()
                .zip(m.values())
                .map(|(p, v)| p + lambda * v)
                .collect();
            iron_nondecreasing(&psi, m.masses())
        })
        .collect();

    let shape = inst.shape();
    let mut a = AllocationMatrix::zeros(shape.clone());
    for_each_tuple(&shape, |idx| {
        let mut winner = 0u8;
        let mut best: Option<&Rat> = None;
        for b in 0..inst.n() {
            let c = &combined[b][idx[b]];
            if best.map_or(true, |cur| c > cur) {
                best = Some(c);
                winner = (b + 1) as u8;
            }
        }
        if best.expect("at least one bidder").is_negative() {
            winner = 0;
        }
        a.set(idx, winner);
    });
    Mechanism::from_allocation(a, inst)
}

// ---------------------------------------------------------------------------
// λ sweep and randomized trade-offs
// ---------------------------------------------------------------------------

/// A vertex of the upper convex envelope of the achievable objective
/// cloud, together with a λ at which it uniquely maximizes
/// `revenue + λ·welfare`.
#[derive(Debug, Clone)]
pub struct SweepVertex {
    pub lambda: Rat,
    pub mechanism: Mechanism,
}

/// Common denominator of all per-tuple `mass · value` products: every
/// achievable welfare and revenue is an integer multiple of its inverse.
fn objective_denominator(inst: &Instance) -> BigInt {
    let mut d = BigInt::one();
    let shape = inst.shape();
    for_each_tuple(&shape, |idx| {
        let mass = inst.mass_of(idx);
        for b in 0..inst.n() {
            d = lcm_denom(&d, &(&mass * &inst.marginal(b).values()[idx[b]]));
        }
    });
    d
}

/// All envelope vertices by exact bisection, welfare ascending: from the
/// revenue end (λ = 0, [`myerson`]) to the welfare end (λ beyond every
/// breakpoint).  Two adjacent mechanisms' objective lines cross at
/// `λ* = ΔR/ΔW`; a strictly better mechanism at λ* is a vertex between
/// them, else the chord is an envelope edge.
pub fn lambda_sweep(inst: &Instance) -> Result<Vec<SweepVertex>> {
    let low = myerson(inst)?;
    // Distinct welfares differ by ≥ 1/dim while revenues differ by at most
    // the welfare bound, so this λ always prefers higher welfare.
    let denom = Rat::from_integer(objective_denominator(inst));
    let top_lambda = Rat::one() + inst.welfare_upper_bound() * denom;
    let high = lambda_optimal(inst, &top_lambda)?;
    let mut out = vec![SweepVertex {
        lambda: Rat::zero(),
        mechanism: low.clone(),
    }];
    if high.objectives != low.objectives {
        fill_between(inst, &low, &high, &top_lambda, &mut out)?;
    }
    Ok(out)
}

fn fill_between(
    inst: &Instance,
    low: &Mechanism,
    high: &Mechanism,
    high_lambda: &Rat,
    out: &mut Vec<SweepVertex>,
) -> Result<()> {
    let (pl, ph) = (&low.objectives, &high.objectives);
    debug_assert!(pl.welfare < ph.welfare && pl.revenue >= ph.revenue);
    let crossing = (&pl.revenue - &ph.revenue) / (&ph.welfare - &pl.welfare);
    let mid = lambda_optimal(inst, &crossing)?;
    let val = |p: &ObjectivePoint| &p.revenue + &crossing * &p.welfare;
    debug_assert_eq!(val(pl), val(ph));
    if val(&mid.objectives) == val(pl) {
        out.push(SweepVertex {
            lambda: high_lambda.clone(),
            mechanism: high.clone(),
        });
    } else {
        fill_between(inst, low, &mid, &crossing, out)?;
        fill_between(inst, &mid, high, high_lambda, out)?;
    }
    Ok(())
}

/// A convex combination of deterministic mechanisms.
#[derive(Debug, Clone)]
pub struct RandomizedMechanism {
    /// Components with strictly positive weights summing to one.
    pub components: Vec<(Mechanism, Rat)>,
}

impl RandomizedMechanism {
    /// The expected objective point of the mixture.
    pub fn objectives(&self) -> ObjectivePoint {
        let mut welfare = Rat::zero();
        let mut revenue = Rat::zero();
        for (m, w) in &self.components {
            welfare += &m.objectives.welfare * w;
            revenue += &m.objectives.revenue * w;
        }
        ObjectivePoint { welfare, revenue }
    }
}

/// The revenue-maximal randomized mechanism with expected welfare exactly
/// `target_welfare`: a mixture of at most two adjacent λ-sweep vertices.
/// The target must lie between the welfare of [`myerson`] and the maximum
/// welfare.
pub fn randomized_tradeoff(inst: &Instance, target_welfare: &Rat) -> Result<RandomizedMechanism> {
    let vertices = lambda_sweep(inst)?;
    let lo = &vertices.first().expect("nonempty").mechanism.objectives.welfare;
    let hi = &vertices.last().expect("nonempty").mechanism.objectives.welfare;
    if target_welfare < lo || target_welfare > hi {
        return Err(Error::TargetOutOfRange {
            target: format_rat(target_welfare),
            lo: format_rat(lo),
            hi: format_rat(hi),
        });
    }
    let right = vertices
        .iter()
        .position(|v| &v.mechanism.objectives.welfare >= target_welfare)
        .expect("target is within the vertex range");
    let q = &vertices[right].mechanism;
    if &q.objectives.welfare == target_welfare {
        return Ok(RandomizedMechanism {
            components: vec![(q.clone(), Rat::one())],
        });
    }
    let p = &vertices[right - 1].mechanism;
    let alpha =
        (&q.objectives.welfare - target_welfare) / (&q.objectives.welfare - &p.objectives.welfare);
    Ok(RandomizedMechanism {
        components: vec![
            (p.clone(), alpha.clone()),
            (q.clone(), Rat::one() - alpha),
        ],
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MarginalDistribution;
    use crate::oracle::enumerate_feasible;
    use crate::rational::{rat, rat_int};

    fn uniform(vals: &[i64]) -> MarginalDistribution {
        let h = vals.len() as i64;
        MarginalDistribution::new(
            vals.iter().map(|&v| rat_int(v)).collect(),
            vals.iter().map(|_| rat(1, h)).collect(),
        )
        .unwrap()
    }

    fn nonconvex_instance() -> Instance {
        Instance::product(vec![
            MarginalDistribution::new(vec![rat_int(11), rat_int(20)], vec![rat(1, 3), rat(2, 3)])
                .unwrap(),
            MarginalDistribution::new(vec![rat_int(2), rat_int(5)], vec![rat(1, 3), rat(2, 3)])
                .unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn virtual_value_formulas() {
        let inst = Instance::product(vec![uniform(&[1, 2, 3, 4]), uniform(&[1]), uniform(&[1, 2])])
            .unwrap();
        let vv = virtual_values(&inst).unwrap();
        // Uniform on {1..k}: φ at value j is 2j − k.
        assert_eq!(
            vv.per_bidder[0],
            vec![rat_int(-2), rat_int(0), rat_int(2), rat_int(4)]
        );
        assert_eq!(vv.per_bidder[1], vec![rat_int(1)]);
        assert_eq!(vv.per_bidder[2], vec![rat_int(0), rat_int(2)]);
        assert!(vv.regular);

        // A fat low tail pushes the low virtual value negative and keeps
        // the table regular; an inverted one makes it irregular.
        let irregular = Instance::product(vec![MarginalDistribution::new(
            vec![rat_int(1), rat_int(10)],
            vec![rat(9, 10), rat(1, 10)],
        )
        .unwrap()])
        .unwrap();
        let vv = virtual_values(&irregular).unwrap();
        assert_eq!(vv.per_bidder[0], vec![rat_int(0), rat_int(10)]);

        let corr = Instance::correlated(
            vec![rat_int(1)],
            vec![rat_int(1)],
            vec![vec![rat_int(1)]],
        )
        .unwrap();
        assert!(matches!(
            virtual_values(&corr),
            Err(Error::CorrelatedUnsupported { .. })
        ));
    }

    #[test]
    fn ironing_examples() {
        let half = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(
            iron_nondecreasing(&[rat_int(2), rat_int(0)], &half),
            vec![rat_int(1), rat_int(1)]
        );
        assert_eq!(
            iron_nondecreasing(&[rat_int(0), rat_int(2)], &half),
            vec![rat_int(0), rat_int(2)]
        );
        // Unequal weights pull the pooled average toward the heavy entry.
        assert_eq!(
            iron_nondecreasing(&[rat_int(3), rat_int(0)], &[rat(1, 4), rat(3, 4)]),
            vec![rat(3, 4), rat(3, 4)]
        );
    }

    #[test]
    fn ironing_is_idempotent_and_preserves_weighted_sum() {
        let values = vec![rat_int(5), rat_int(-1), rat_int(2), rat_int(2), rat_int(0)];
        let weights = vec![rat(1, 10), rat(2, 10), rat(3, 10), rat(1, 10), rat(3, 10)];
        let once = iron_nondecreasing(&values, &weights);
        assert!(once.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(iron_nondecreasing(&once, &weights), once);
        let dot = |xs: &[Rat]| -> Rat { xs.iter().zip(&weights).map(|(x, w)| x * w).sum() };
        assert_eq!(dot(&values), dot(&once));
    }

    #[test]
    fn vickrey_examples() {
        // Deterministic tie: lowest index wins and pays their value.
        let inst = Instance::product(vec![uniform(&[1]), uniform(&[1])]).unwrap();
        let m = vickrey(&inst).unwrap();
        assert_eq!(m.allocation.winners(), &[1]);
        assert_eq!(m.objectives, ObjectivePoint::new(rat_int(1), rat_int(1)));

        let m = vickrey(&nonconvex_instance()).unwrap();
        assert_eq!(m.allocation.winners(), &[1, 1, 1, 1]);
        assert_eq!(m.objectives, ObjectivePoint::new(rat_int(17), rat_int(11)));

        let single = Instance::product(vec![uniform(&[1, 2])]).unwrap();
        let m = vickrey(&single).unwrap();
        assert_eq!(m.objectives, ObjectivePoint::new(rat(3, 2), rat_int(1)));
    }

    #[test]
    fn vickrey_is_welfare_maximal_on_small_instances() {
        for inst in [
            nonconvex_instance(),
            Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 2])]).unwrap(),
            Instance::product(vec![uniform(&[2, 3]), uniform(&[1, 4]), uniform(&[2, 5])]).unwrap(),
        ] {
            let best = vickrey(&inst).unwrap().objectives.welfare;
            assert_eq!(best, inst.welfare_upper_bound());
        }
    }

    #[test]
    fn myerson_examples() {
        // Single bidder uniform {1,2}: ironed φ = [0, 2]; allocating on the
        // zero sells at both values, i.e. posts the low price.
        let single = Instance::product(vec![uniform(&[1, 2])]).unwrap();
        let m = myerson(&single).unwrap();
        assert_eq!(m.allocation.winners(), &[1, 1]);
        assert_eq!(m.objectives, ObjectivePoint::new(rat(3, 2), rat_int(1)));

        // Deterministic bidders 1 and 2: the higher singleton value wins.
        let det = Instance::product(vec![uniform(&[1]), uniform(&[2])]).unwrap();
        let m = myerson(&det).unwrap();
        assert_eq!(m.allocation.winners(), &[2]);
        assert_eq!(m.objectives.revenue, rat_int(2));

        // Running two-bidder example: price 20 to bidder 1, else 5 to
        // bidder 2.
        let m = myerson(&nonconvex_instance()).unwrap();
        assert_eq!(m.objectives, ObjectivePoint::new(rat(130, 9), rat(130, 9)));
    }

    #[test]
    fn myerson_is_revenue_maximal_on_small_instances() {
        let instances = vec![
            nonconvex_instance(),
            Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 3])]).unwrap(),
            // Irregular marginal: ironing still yields the optimum.
            Instance::product(vec![
                MarginalDistribution::new(
                    vec![rat_int(2), rat_int(3), rat_int(9)],
                    vec![rat(1, 10), rat(8, 10), rat(1, 10)],
                )
                .unwrap(),
                uniform(&[1, 4]),
            ])
            .unwrap(),
            Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 2]), uniform(&[1, 2])]).unwrap(),
        ];
        for inst in instances {
            let mine = myerson(&inst).unwrap().objectives.revenue;
            let best = enumerate_feasible(&inst)
                .unwrap()
                .into_iter()
                .map(|a| crate::model::evaluate(&a, &inst).unwrap().revenue)
                .max()
                .unwrap();
            assert_eq!(mine, best);
        }
    }

    #[test]
    fn lambda_zero_is_myerson_and_rejects_negative() {
        let inst = nonconvex_instance();
        let m0 = lambda_optimal(&inst, &Rat::zero()).unwrap();
        let my = myerson(&inst).unwrap();
        assert_eq!(m0.allocation, my.allocation);
        assert!(matches!(
            lambda_optimal(&inst, &rat(-1, 2)),
            Err(Error::NegativeLambda)
        ));
    }

    #[test]
    fn lambda_optimal_maximizes_combined_objective() {
        let instances = vec![
            nonconvex_instance(),
            Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 3])]).unwrap(),
            Instance::product(vec![
                MarginalDistribution::new(
                    vec![rat_int(2), rat_int(3), rat_int(9)],
                    vec![rat(1, 10), rat(8, 10), rat(1, 10)],
                )
                .unwrap(),
                uniform(&[1, 4]),
            ])
            .unwrap(),
        ];
        for inst in instances {
            for lam in [rat_int(0), rat(1, 3), rat_int(1), rat_int(7)] {
                let mine = lambda_optimal(&inst, &lam).unwrap().objectives;
                let value = |p: &ObjectivePoint| &p.revenue + &lam * &p.welfare;
                let best = enumerate_feasible(&inst)
                    .unwrap()
                    .into_iter()
                    .map(|a| value(&crate::model::evaluate(&a, &inst).unwrap()))
                    .max()
                    .unwrap();
                assert_eq!(value(&mine), best);
            }
        }
        // Deterministic bidders 1 vs 2: bidder 2 wins at every λ.
        let det = Instance::product(vec![uniform(&[1]), uniform(&[2])]).unwrap();
        for lam in [rat_int(0), rat(5, 7), rat_int(100)] {
            assert_eq!(lambda_optimal(&det, &lam).unwrap().allocation.winners(), &[2]);
        }
    }

    #[test]
    fn sweep_on_running_example_has_three_vertices() {
        // Pareto points (44/3, 14) and (16, 12) fall strictly under the
        // envelope; the middle vertex sells to bidder 1 at 11 except on
        // (11, 5), where bidder 2 pays 5.
        let vertices = lambda_sweep(&nonconvex_instance()).unwrap();
        let pts: Vec<ObjectivePoint> =
            vertices.iter().map(|v| v.mechanism.objectives.clone()).collect();
        assert_eq!(
            pts,
            vec![
                ObjectivePoint::new(rat(130, 9), rat(130, 9)),
                ObjectivePoint::new(rat(47, 3), rat(41, 3)),
                ObjectivePoint::new(rat_int(17), rat_int(11)),
            ]
        );
        assert_eq!(vertices[0].lambda, Rat::zero());
        assert_eq!(vertices[1].mechanism.allocation.winners(), &[1, 2, 1, 1]);
    }

    #[test]
    fn sweep_vertices_are_ordered_and_optimal_at_their_lambda() {
        let inst = Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 3])]).unwrap();
        let vertices = lambda_sweep(&inst).unwrap();
        for w in vertices.windows(2) {
            assert!(w[0].mechanism.objectives.welfare < w[1].mechanism.objectives.welfare);
            assert!(w[0].mechanism.objectives.revenue > w[1].mechanism.objectives.revenue);
        }
        for v in &vertices {
            let same = lambda_optimal(&inst, &v.lambda).unwrap();
            assert_eq!(same.objectives, v.mechanism.objectives);
        }
    }

    #[test]
    fn tradeoff_mixture_on_running_example() {
        let inst = nonconvex_instance();
        // Midway target 16 lands on the envelope edge from (47/3, 41/3) to
        // (17, 11): mix 3/4 and 1/4 for revenue 13 — strictly above the
        // best deterministic revenue 12 at welfare 16.
        let mix = randomized_tradeoff(&inst, &rat_int(16)).unwrap();
        assert_eq!(mix.components.len(), 2);
        assert_eq!(mix.components[0].1, rat(3, 4));
        assert_eq!(mix.components[1].1, rat(1, 4));
        assert_eq!(
            mix.objectives(),
            ObjectivePoint::new(rat_int(16), rat_int(13))
        );
        // A target on a vertex is returned pure.
        let on_vertex = randomized_tradeoff(&inst, &rat(47, 3)).unwrap();
        assert_eq!(on_vertex.components.len(), 1);
        assert_eq!(
            on_vertex.objectives(),
            ObjectivePoint::new(rat(47, 3), rat(41, 3))
        );

        // Endpoints are degenerate mixtures.
        let at_top = randomized_tradeoff(&inst, &rat_int(17)).unwrap();
        assert_eq!(at_top.components.len(), 1);
        assert_eq!(at_top.components[0].1, Rat::one());
        assert_eq!(at_top.objectives(), ObjectivePoint::new(rat_int(17), rat_int(11)));
        let at_bottom = randomized_tradeoff(&inst, &rat(130, 9)).unwrap();
        assert_eq!(at_bottom.components.len(), 1);
        assert_eq!(
            at_bottom.objectives(),
            ObjectivePoint::new(rat(130, 9), rat(130, 9))
        );

        // Outside [welfare(myerson), welfare(vickrey)]: rejected.
        assert!(matches!(
            randomized_tradeoff(&inst, &rat_int(14)),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert!(matches!(
            randomized_tradeoff(&inst, &rat_int(18)),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn tradeoff_weights_are_positive_and_sum_to_one() {
        let inst = Instance::product(vec![uniform(&[1, 2]), uniform(&[1, 3])]).unwrap();
        let lo = myerson(&inst).unwrap().objectives.welfare;
        let hi = vickrey(&inst).unwrap().objectives.welfare;
        let target = (&lo + &hi) / rat_int(2);
        let mix = randomized_tradeoff(&inst, &target).unwrap();
        let total: Rat = mix.components.iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(total, Rat::one());
        assert!(mix.components.iter().all(|(_, w)| w.is_positive()));
        assert_eq!(mix.objectives().welfare, target);
    }
}
