//! End-to-end acceptance suite.
//!
//! Runs ten numbered criteria and prints exactly one `PASS`/`FAIL` line per
//! criterion (this target opts out of the libtest harness so the lines are
//! always visible).  Every numeric check is exact rational equality; the only
//! tolerances are the wall-clock limits and the output-size bound pinned in
//! the constants below.  The process exits nonzero if any criterion fails.

use std::any::Any;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pareto_auctions::dp::{achievable_pairs, achievable_values, ScalarObjective};
use pareto_auctions::fptas::{eps_pareto, gap_query, GapAnswer};
use pareto_auctions::generators::{
    diagonal_mechanism, gen_exponential_pareto, gen_nonconvex, gen_partition_welfare,
};
use pareto_auctions::matching::build_graph;
use pareto_auctions::mechanisms::{
    lambda_optimal, lambda_sweep, myerson, randomized_tradeoff, vickrey, virtual_values,
};
use pareto_auctions::model::eps_covers;
use pareto_auctions::oracle::{count_feasible, enumerate_feasible, oracle_pareto, oracle_value_set};
use pareto_auctions::rational::{format_rat, lcm_denom, rat, rat_int};
use pareto_auctions::{evaluate, Instance, MarginalDistribution, Mechanism, ObjectivePoint, Rat};

// ---------------------------------------------------------------------------
// Pinned parameters
// ---------------------------------------------------------------------------

/// Criterion 1: random instances compared between the dp and the oracle.
const C1_INSTANCES: usize = 100;
const C1_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Criterion 2: the non-convexity witness must be found quickly.
const C2_TIME_LIMIT: Duration = Duration::from_secs(1);
/// Criterion 3: random instances for the approximation-scheme coverage check,
/// shared with criterion 4.
const C3_INSTANCES: usize = 25;
const C3_TIME_LIMIT: Duration = Duration::from_secs(600);
/// Criterion 4: random bounds queried per instance.
const C4_BOUNDS_PER_INSTANCE: usize = 50;
/// Criterion 9: matching correspondence instance counts and budget.
const C9_TWO_BIDDER_INSTANCES: usize = 10;
const C9_THREE_BIDDER_INSTANCES: usize = 5;
const C9_TIME_LIMIT: Duration = Duration::from_secs(60);

// ---------------------------------------------------------------------------
// Random instance helpers (all denominators bounded by 12)
// ---------------------------------------------------------------------------

const MAX_DENOM: i64 = 12;

/// `h` distinct sorted values with a common denominator `q ≤ 12` and
/// numerators in `1..=3q` (so no value exceeds 3·12 = 36).
fn rand_values(rng: &mut ChaCha8Rng, h: usize) -> Vec<Rat> {
    let q = rng.gen_range(2..=MAX_DENOM);
    let mut numerators: Vec<i64> = (1..=3 * q).collect();
    numerators.shuffle(rng);
    let mut picked = numerators[..h].to_vec();
    picked.sort_unstable();
    picked.into_iter().map(|p| rat(p, q)).collect()
}

/// `h` positive masses summing to one with a common denominator `q ≤ 12`.
fn rand_masses(rng: &mut ChaCha8Rng, h: usize) -> Vec<Rat> {
    let q = rng.gen_range(h.max(2) as i64..=MAX_DENOM);
    let mut parts = vec![1i64; h];
    for _ in 0..(q - h as i64) {
        parts[rng.gen_range(0..h)] += 1;
    }
    parts.into_iter().map(|p| rat(p, q)).collect()
}

fn random_independent(rng: &mut ChaCha8Rng, h1: usize, h2: usize) -> Instance {
    Instance::product(vec![
        MarginalDistribution::new(rand_values(rng, h1), rand_masses(rng, h1)).unwrap(),
        MarginalDistribution::new(rand_values(rng, h2), rand_masses(rng, h2)).unwrap(),
    ])
    .unwrap()
}

/// A correlated instance: 12 probability units spread over the `h1 × h2`
/// grid so that every row and every column keeps positive marginal mass
/// (individual cells may still be zero).
fn random_correlated(rng: &mut ChaCha8Rng, h1: usize, h2: usize) -> Instance {
    let mut units = vec![vec![0i64; h2]; h1];
    for row in units.iter_mut() {
        row[rng.gen_range(0..h2)] += 1;
    }
    for j in 0..h2 {
        if (0..h1).all(|i| units[i][j] == 0) {
            units[rng.gen_range(0..h1)][j] += 1;
        }
    }
    let used: i64 = units.iter().flatten().sum();
    assert!(used <= MAX_DENOM, "supports too large for 12 mass units");
    for _ in 0..(MAX_DENOM - used) {
        units[rng.gen_range(0..h1)][rng.gen_range(0..h2)] += 1;
    }
    let joint = units
        .into_iter()
        .map(|row| row.into_iter().map(|u| rat(u, MAX_DENOM)).collect())
        .collect();
    Instance::correlated(rand_values(rng, h1), rand_values(rng, h2), joint).unwrap()
}

fn random_binary_product(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let marginals = (0..n)
        .map(|_| MarginalDistribution::new(rand_values(rng, 2), rand_masses(rng, 2)).unwrap())
        .collect();
    Instance::product(marginals).unwrap()
}

/// Rejection-samples independent two-bidder instances whose virtual-value
/// tables are already non-decreasing (two-point supports always qualify, so
/// this terminates fast).
fn random_regular_independent(rng: &mut ChaCha8Rng, count: usize, h_max: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for _ in 0..1000 {
        if out.len() == count {
            break;
        }
        let h1 = rng.gen_range(2..=h_max);
        let h2 = rng.gen_range(2..=h_max);
        let inst = random_independent(rng, h1, h2);
        if virtual_values(&inst).unwrap().regular {
            out.push(inst);
        }
    }
    assert_eq!(out.len(), count, "could not sample enough regular instances");
    out
}

/// Common denominator of every per-tuple `mass · value` product: all
/// achievable objective values are integer multiples of its inverse.
fn objective_denominator(inst: &Instance) -> BigInt {
    let mut d = BigInt::one();
    pareto_auctions::model::for_each_tuple(&inst.shape(), |idx| {
        let mass = inst.mass_of(idx);
        for b in 0..inst.n() {
            d = lcm_denom(&d, &(&mass * &inst.marginal(b).values()[idx[b]]));
        }
    });
    d
}

// ---------------------------------------------------------------------------
// Criterion 1: the exact dp agrees with brute-force enumeration
// ---------------------------------------------------------------------------

fn c1_dp_matches_enumeration() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC01);
    for i in 0..C1_INSTANCES {
        let h1 = rng.gen_range(2..=4);
        let h2 = rng.gen_range(2..=4);
        let inst = if i % 2 == 1 {
            random_correlated(&mut rng, h1, h2)
        } else {
            random_independent(&mut rng, h1, h2)
        };
        for obj in [ScalarObjective::Welfare, ScalarObjective::Revenue] {
            let dp: BTreeSet<Rat> = achievable_values(&inst, obj, None)
                .unwrap()
                .root_values()
                .into_iter()
                .collect();
            let oracle: BTreeSet<Rat> =
                oracle_value_set(&inst, obj).unwrap().into_iter().collect();
            assert_eq!(dp, oracle, "instance {i}: {obj:?} value sets differ");
        }
        let mut dp_pairs = achievable_pairs(&inst).unwrap().root_points();
        let mut oracle_pairs: Vec<ObjectivePoint> = oracle_pareto(&inst)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        dp_pairs.sort();
        oracle_pairs.sort();
        assert_eq!(dp_pairs, oracle_pairs, "instance {i}: Pareto sets differ");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed <= C1_TIME_LIMIT, "took {elapsed:?} (limit {C1_TIME_LIMIT:?})");
}

// ---------------------------------------------------------------------------
// Criterion 2: the exact frontier need not be convex
// ---------------------------------------------------------------------------

fn c2_frontier_is_nonconvex() {
    let t0 = Instant::now();
    let inst = gen_nonconvex().instance;
    let points: Vec<ObjectivePoint> = oracle_pareto(&inst)
        .unwrap()
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut found = false;
    'search: for p in &points {
        for q in &points {
            for r in &points {
                if p.welfare == r.welfare {
                    continue;
                }
                // Convex weight putting the p/r mixture at q's welfare.
                let lam = (&q.welfare - &r.welfare) / (&p.welfare - &r.welfare);
                if lam <= Rat::zero() || lam >= Rat::one() {
                    continue;
                }
                let mixed_revenue = &lam * &p.revenue + (Rat::one() - &lam) * &r.revenue;
                if mixed_revenue > q.revenue {
                    found = true;
                    break 'search;
                }
            }
        }
    }
    assert!(found, "no frontier point is strictly below a chord");
    let elapsed = t0.elapsed();
    assert!(elapsed <= C2_TIME_LIMIT, "took {elapsed:?} (limit {C2_TIME_LIMIT:?})");
}

// ---------------------------------------------------------------------------
// Criterion 3: the approximation scheme covers the exact frontier
// ---------------------------------------------------------------------------

/// The fixed random batch shared by criteria 3 and 4.
fn c3_instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC03);
    (0..C3_INSTANCES)
        .map(|i| {
            let h1 = rng.gen_range(2..=5);
            let h2 = rng.gen_range(2..=5);
            if i % 2 == 1 {
                random_correlated(&mut rng, h1, h2)
            } else {
                random_independent(&mut rng, h1, h2)
            }
        })
        .collect()
}

fn c3_eps_pareto_covers_frontier() {
    let t0 = Instant::now();
    for (i, inst) in c3_instances().iter().enumerate() {
        let frontier = oracle_pareto(inst).unwrap();
        let scale = &inst.welfare_upper_bound() * Rat::from_integer(objective_denominator(inst));
        let log_scale = scale.to_f64().unwrap().ln();
        for (en, ed) in [(1i64, 10i64), (1, 20)] {
            let eps = rat(en, ed);
            let out = eps_pareto(inst, &eps).unwrap();
            for (mech, point) in &out {
                assert_eq!(
                    &evaluate(&mech.allocation, inst).unwrap(),
                    point,
                    "instance {i}, eps {en}/{ed}: advertised point not re-verified"
                );
                assert_eq!(&mech.objectives, point);
            }
            for (target, _) in &frontier {
                assert!(
                    out.iter().any(|(_, p)| eps_covers(p, target, &eps).unwrap()),
                    "instance {i}, eps {en}/{ed}: frontier point {target} uncovered"
                );
            }
            // Output size stays within the geometric-grid budget
            // 4/eps · ln(U·D) (+2 for the seed point and rounding).
            let budget = 4.0 * (ed as f64 / en as f64) * log_scale + 2.0;
            assert!(
                (out.len() as f64) <= budget,
                "instance {i}, eps {en}/{ed}: {} points exceed the size budget {budget:.1}",
                out.len()
            );
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed <= C3_TIME_LIMIT, "took {elapsed:?} (limit {C3_TIME_LIMIT:?})");
}

// ---------------------------------------------------------------------------
// Criterion 4: gap queries are sound in both directions
// ---------------------------------------------------------------------------

fn c4_gap_queries_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC04);
    let deltas = [rat(1, 10), rat(1, 2), rat_int(1)];
    for (i, inst) in c3_instances().iter().enumerate() {
        let frontier: Vec<ObjectivePoint> = oracle_pareto(inst)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let upper = inst.welfare_upper_bound();
        for _ in 0..C4_BOUNDS_PER_INSTANCE {
            let bound = ObjectivePoint::new(
                &upper * rat(rng.gen_range(1..=50), 40),
                &upper * rat(rng.gen_range(1..=50), 40),
            );
            let delta = deltas[rng.gen_range(0..deltas.len())].clone();
            match gap_query(inst, &bound, &delta).unwrap() {
                GapAnswer::Mechanism(mech) => {
                    assert!(
                        mech.objectives.at_least(&bound),
                        "instance {i}: returned mechanism {} misses bound {bound}",
                        mech.objectives
                    );
                    assert_eq!(
                        evaluate(&mech.allocation, inst).unwrap(),
                        mech.objectives,
                        "instance {i}: returned mechanism mis-evaluated"
                    );
                }
                GapAnswer::NoCertificate => {
                    let scale = Rat::one() + &delta;
                    let scaled = ObjectivePoint::new(
                        &bound.welfare * &scale,
                        &bound.revenue * &scale,
                    );
                    assert!(
                        !frontier.iter().any(|p| p.at_least(&scaled)),
                        "instance {i}: refusal at {bound} but {scaled} is dominated"
                    );
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: welfare targets encode subset-sum
// ---------------------------------------------------------------------------

fn c5_welfare_targets_encode_subset_sum() {
    let cases: [(&[i64], bool); 4] = [
        (&[2, 1, 1], true),
        (&[3, 1, 1], false),
        (&[2, 2, 1, 1], true),
        (&[5, 2, 1, 1], false),
    ];
    for (elements, splittable) in cases {
        let gen = gen_partition_welfare(elements).unwrap();
        let target = &gen.targets["welfare"];
        let values = achievable_values(&gen.instance, ScalarObjective::Welfare, None).unwrap();
        let witness = values.witness(target).unwrap();
        match (splittable, witness) {
            (true, Some(mech)) => {
                assert_eq!(
                    &evaluate(&mech.allocation, &gen.instance).unwrap().welfare,
                    target,
                    "{elements:?}: witness does not re-evaluate to the target"
                );
            }
            (false, None) => {}
            (true, None) => panic!("{elements:?}: splittable but the target is unreachable"),
            (false, Some(_)) => panic!("{elements:?}: unsplittable but the target was hit"),
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: the exponential family fills the frontier
// ---------------------------------------------------------------------------

fn c6_exponential_family_on_frontier() {
    for k in [3usize, 4, 5] {
        let gen = gen_exponential_pareto(k).unwrap();
        let inst = &gen.instance;
        let n = inst.marginal(0).support_size();
        let frontier: BTreeSet<ObjectivePoint> = oracle_pareto(inst)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let mech_at = |mask: u32| -> Mechanism {
            let mut choices = vec![2u8; n];
            for i in 0..k {
                if mask >> i & 1 == 1 {
                    choices[i] = 1;
                }
            }
            choices[n - 1] = 1;
            diagonal_mechanism(inst, &choices).unwrap()
        };
        for mask in 0..1u32 << k {
            assert!(
                frontier.contains(&mech_at(mask).objectives),
                "k={k}: configuration {mask:b} is off the frontier"
            );
        }
        if k <= 4 {
            // Re-assigning any single free diagonal cell from the
            // higher-value to the lower-value bidder must strictly lower
            // welfare and strictly raise revenue, in every context.
            for mask in 0..1u32 << k {
                for i in 0..k {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    let kept = mech_at(mask).objectives;
                    let flipped = mech_at(mask & !(1 << i)).objectives;
                    assert!(
                        flipped.welfare < kept.welfare,
                        "k={k}, mask {mask:b}, cell {i}: flip did not lower welfare"
                    );
                    assert!(
                        flipped.revenue > kept.revenue,
                        "k={k}, mask {mask:b}, cell {i}: flip did not raise revenue"
                    );
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 7: classic mechanisms attain the frontier extremes
// ---------------------------------------------------------------------------

fn c7_classic_mechanisms_attain_extremes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC07);

    // Highest welfare: the second-price auction, on arbitrary (including
    // correlated) instances.
    for i in 0..30 {
        let h1 = rng.gen_range(2..=4);
        let h2 = rng.gen_range(2..=4);
        let inst = if i % 2 == 1 {
            random_correlated(&mut rng, h1, h2)
        } else {
            random_independent(&mut rng, h1, h2)
        };
        let best_welfare = oracle_pareto(&inst)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p.welfare)
            .max()
            .unwrap();
        assert_eq!(
            vickrey(&inst).unwrap().objectives.welfare,
            best_welfare,
            "instance {i}: second-price welfare below the maximum"
        );
    }

    // Highest revenue and every linear blend: on regular independent
    // instances the virtual-value maximizers are exactly optimal.
    let lambdas = [rat_int(0), rat(1, 2), rat_int(1), rat_int(10)];
    for (i, inst) in random_regular_independent(&mut rng, 10, 4).iter().enumerate() {
        let frontier: Vec<ObjectivePoint> = oracle_pareto(inst)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let best_revenue = frontier.iter().map(|p| p.revenue.clone()).max().unwrap();
        assert_eq!(
            myerson(inst).unwrap().objectives.revenue,
            best_revenue,
            "regular instance {i}: revenue-optimal mechanism below the maximum"
        );
        for lambda in &lambdas {
            let best_blend = frontier
                .iter()
                .map(|p| &p.revenue + lambda * &p.welfare)
                .max()
                .unwrap();
            let got = lambda_optimal(inst, lambda).unwrap().objectives;
            assert_eq!(
                &got.revenue + lambda * &got.welfare,
                best_blend,
                "regular instance {i}: blend λ={} not maximized",
                format_rat(lambda)
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: randomized tradeoffs live on the upper convex hull
// ---------------------------------------------------------------------------

/// Exact upper convex hull of a point cloud, as (welfare, revenue) vertices
/// with strictly increasing welfare.  Collinear interior points are dropped,
/// so hull membership must be tested against segments, not vertices.
fn upper_hull(points: &[ObjectivePoint]) -> Vec<(Rat, Rat)> {
    let mut best: BTreeMap<Rat, Rat> = BTreeMap::new();
    for p in points {
        best.entry(p.welfare.clone())
            .and_modify(|r| {
                if p.revenue > *r {
                    *r = p.revenue.clone();
                }
            })
            .or_insert_with(|| p.revenue.clone());
    }
    let mut hull: Vec<(Rat, Rat)> = Vec::new();
    for (w, r) in best {
        while hull.len() >= 2 {
            let o = &hull[hull.len() - 2];
            let a = &hull[hull.len() - 1];
            let cross = (&a.0 - &o.0) * (&r - &o.1) - (&a.1 - &o.1) * (&w - &o.0);
            if cross >= Rat::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((w, r));
    }
    hull
}

fn assert_on_upper_hull(hull: &[(Rat, Rat)], p: &ObjectivePoint, context: &str) {
    if let Some((_, r)) = hull.iter().find(|(w, _)| *w == p.welfare) {
        assert_eq!(&p.revenue, r, "{context}: point {p} below the hull vertex");
        return;
    }
    let segment = hull
        .windows(2)
        .find(|s| s[0].0 < p.welfare && p.welfare < s[1].0)
        .unwrap_or_else(|| panic!("{context}: welfare {} outside the hull span", format_rat(&p.welfare)));
    let (a, b) = (&segment[0], &segment[1]);
    let cross = (&p.welfare - &a.0) * (&b.1 - &a.1) - (&p.revenue - &a.1) * (&b.0 - &a.0);
    assert!(cross.is_zero(), "{context}: point {p} is not on the hull segment");
}

fn c8_randomized_tradeoff_on_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC08);
    for (i, inst) in random_regular_independent(&mut rng, 10, 4).iter().enumerate() {
        let cloud: Vec<ObjectivePoint> = enumerate_feasible(inst)
            .unwrap()
            .iter()
            .map(|a| evaluate(a, inst).unwrap())
            .collect();
        let hull = upper_hull(&cloud);
        let vertices = lambda_sweep(inst).unwrap();
        let mut targets: Vec<Rat> = vertices
            .iter()
            .map(|v| v.mechanism.objectives.welfare.clone())
            .collect();
        for pair in vertices.windows(2) {
            let mid = (&pair[0].mechanism.objectives.welfare
                + &pair[1].mechanism.objectives.welfare)
                / rat_int(2);
            targets.push(mid);
        }
        for target in &targets {
            let mixed = randomized_tradeoff(inst, target).unwrap();
            let point = mixed.objectives();
            assert_eq!(
                &point.welfare, target,
                "instance {i}: welfare target {} missed",
                format_rat(target)
            );
            assert_on_upper_hull(&hull, &point, &format!("instance {i}"));
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: matchings correspond to mechanisms exactly
// ---------------------------------------------------------------------------

fn c9_matchings_correspond_to_mechanisms() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xAC09);
    let sizes = std::iter::repeat(2)
        .take(C9_TWO_BIDDER_INSTANCES)
        .chain(std::iter::repeat(3).take(C9_THREE_BIDDER_INSTANCES));
    for (i, n) in sizes.enumerate() {
        let inst = random_binary_product(&mut rng, n);
        let graph = build_graph(&inst).unwrap();
        let matchings = graph.matchings();
        assert_eq!(
            matchings.len() as u128,
            count_feasible(&inst).unwrap(),
            "instance {i}: matching count differs from the mechanism count"
        );
        let mut weight_pairs: Vec<(Rat, Rat)> = Vec::with_capacity(matchings.len());
        for m in &matchings {
            let weight = graph.matching_weight(m).unwrap();
            let mech = graph.matching_to_mechanism(m).unwrap();
            assert_eq!(
                weight, mech.objectives,
                "instance {i}: edge weights disagree with the induced mechanism"
            );
            weight_pairs.push((weight.welfare, weight.revenue));
        }
        let mut mech_pairs: Vec<(Rat, Rat)> = enumerate_feasible(&inst)
            .unwrap()
            .iter()
            .map(|a| {
                let p = evaluate(a, &inst).unwrap();
                (p.welfare, p.revenue)
            })
            .collect();
        weight_pairs.sort();
        mech_pairs.sort();
        assert_eq!(
            weight_pairs, mech_pairs,
            "instance {i}: objective multisets differ"
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed <= C9_TIME_LIMIT, "took {elapsed:?} (limit {C9_TIME_LIMIT:?})");
}

// ---------------------------------------------------------------------------
// Criterion 10: subset-sum instances have regular column marginals
// ---------------------------------------------------------------------------

fn c10_subset_sum_instances_are_regular() {
    for k in 2..=8usize {
        let descending: Vec<i64> = (1..=k as i64).rev().collect();
        let ones = vec![1i64; k];
        let powers: Vec<i64> = (0..k as u32).rev().map(|e| 1i64 << e).collect();
        for b in [descending, ones, powers] {
            let gen = gen_partition_welfare(&b).unwrap();
            let table = virtual_values(&gen.instance).unwrap();
            let column = &table.per_bidder[1];
            assert!(
                column.windows(2).all(|w| w[0] <= w[1]),
                "k={k}, elements {b:?}: column virtual values decrease"
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Harness
// ---------------------------------------------------------------------------

const CRITERIA: &[(u32, &str, fn())] = &[
    (1, "exact dp matches brute-force enumeration", c1_dp_matches_enumeration),
    (2, "exact frontier is not convex", c2_frontier_is_nonconvex),
    (3, "eps-Pareto output covers the exact frontier", c3_eps_pareto_covers_frontier),
    (4, "gap queries are sound in both directions", c4_gap_queries_are_sound),
    (5, "welfare targets encode subset-sum", c5_welfare_targets_encode_subset_sum),
    (6, "exponential family fills the frontier", c6_exponential_family_on_frontier),
    (7, "classic mechanisms attain the frontier extremes", c7_classic_mechanisms_attain_extremes),
    (8, "randomized tradeoffs live on the upper hull", c8_randomized_tradeoff_on_hull),
    (9, "matchings correspond to mechanisms exactly", c9_matchings_correspond_to_mechanisms),
    (10, "subset-sum instances have regular column marginals", c10_subset_sum_instances_are_regular),
];

fn panic_text(payload: &(dyn Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".to_string()
    }
}

fn main() {
    let mut failures = 0u32;
    for &(number, name, body) in CRITERIA {
        let t = Instant::now();
        match catch_unwind(AssertUnwindSafe(body)) {
            Ok(()) => println!("criterion {number} ({name}): PASS [{:.1?}]", t.elapsed()),
            Err(payload) => {
                failures += 1;
                println!(
                    "criterion {number} ({name}): FAIL [{:.1?}] — {}",
                    t.elapsed(),
                    panic_text(payload.as_ref())
                );
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {} criteria failed", CRITERIA.len());
        std::process::exit(1);
    }
}
