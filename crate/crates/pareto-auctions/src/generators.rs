//! Constructors for structured instance families whose trade-off curves
//! have known shapes: a non-convex two-bidder example, two subset-sum
//! embeddings (one driving a single welfare target, one driving a joint
//! welfare/revenue target), a family whose exact Pareto set has `2^k`
//! points, and an n-bidder binary-support subset-sum embedding.
//!
//! Every constructor returns the instance together with its exact
//! rational target values and the construction parameters, and asserts
//! the structural inequalities its family relies on (value interleavings,
//! super-increasing perturbation sequences, exact welfare-plus-revenue
//! balance identities) at build time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::model::{AllocationMatrix, Instance, MarginalDistribution, Mechanism};
use crate::rational::{format_rat, rat, rat_int, Rat};
use crate::{Error, Result};

/// An instance packaged with the exact rational targets its construction
/// encodes and the parameters used to build it.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub instance: Instance,
    /// Named exact values (e.g. the welfare a hidden subset-sum solution
    /// attains), already rescaled to the instance's normalized masses.
    pub targets: BTreeMap<String, Rat>,
    /// Construction parameters, formatted for display.
    pub metadata: BTreeMap<String, String>,
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Non-convex two-bidder example
// ---------------------------------------------------------------------------

/// The running two-bidder example whose exact Pareto set is not convex:
/// `v1 ∈ {11, 20}`, `v2 ∈ {2, 5}`, independent, with masses `(1/3, 2/3)`
/// for each bidder.  Its frontier contains a point strictly below the
/// segment joining two other frontier points.
pub fn gen_nonconvex() -> GeneratedInstance {
    let instance = Instance::product(vec![
        MarginalDistribution::new(vec![rat_int(11), rat_int(20)], vec![rat(1, 3), rat(2, 3)])
            .expect("fixed marginal is valid"),
        MarginalDistribution::new(vec![rat_int(2), rat_int(5)], vec![rat(1, 3), rat(2, 3)])
            .expect("fixed marginal is valid"),
    ])
    .expect("fixed instance is valid");
    GeneratedInstance {
        instance,
        targets: BTreeMap::new(),
        metadata: meta(&[("family", "nonconvex".into())]),
    }
}

// ---------------------------------------------------------------------------
// Subset-sum embedding into a single welfare target (two bidders)
// ---------------------------------------------------------------------------

/// Embeds a subset-sum question into an exact-welfare question.
///
/// Given positive integers `B = (b_1 ≥ … ≥ b_k)`, builds a two-bidder
/// instance: the row bidder is uniform on `{1, …, k}` and the column
/// bidder uniform on `{1 + b'_1, …, k + b'_k}` with `b'_i = b_i / (10kT)`
/// and `T = Σ b_i`.  The `"welfare"` target is achievable exactly when
/// some `S ⊆ [k]` has `Σ_{i∈S} b_i = T/2`: reaching the target's integer
/// part forces selling to the higher-value bidder away from the diagonal,
/// and the diagonal cells sold to the column bidder then contribute a
/// subset of the perturbations `b'_i`, which must sum to half their
/// total.  The `"welfare_unit_mass"` target is the same value before
/// dividing by the `k²` tuple-mass normalization.
pub fn gen_partition_welfare(b: &[i64]) -> Result<GeneratedInstance> {
    let k = b.len();
    if k < 2 {
        return Err(Error::TooSmall(format!(
            "subset-sum embedding needs at least 2 elements, got {k}"
        )));
    }
    if b.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidArgument(
            "subset-sum elements must be positive integers".into(),
        ));
    }
    if b.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDescending(format!("{b:?}")));
    }
    let total: i64 = b.iter().sum();
    // b'_i = b_i / (10·k·T): small enough that perturbations can never
    // compensate an integer-scale welfare loss.
    let denom = Rat::from_integer(BigInt::from(10) * BigInt::from(k as i64) * BigInt::from(total));
    let bprime: Vec<Rat> = b.iter().map(|&x| rat_int(x) / &denom).collect();

    let kk = k as i64;
    let uniform = vec![rat(1, kk); k];
    let row = MarginalDistribution::new((1..=kk).map(rat_int).collect(), uniform.clone())?;
    let col_values: Vec<Rat> = (0..k).map(|i| rat_int(i as i64 + 1) + &bprime[i]).collect();
    let col = MarginalDistribution::new(col_values, uniform)?;
    let instance = Instance::product(vec![row, col])?;

    // Welfare of the intended mechanisms, with unit masses: sell to the
    // higher-value bidder off the diagonal, and split the diagonal so the
    // column bidder's extra perturbations sum to half their total.
    let off_diagonal = rat(2, 3) * rat_int((kk - 1) * kk * (kk + 1));
    let diagonal_base = rat(1, 2) * rat_int(kk * (kk + 1));
    let above: Rat = (1..k).map(|i| rat_int(i as i64) * &bprime[i]).sum();
    let half_perturbation = rat(1, 20 * kk);
    let target_unit = off_diagonal + diagonal_base + above + &half_perturbation;
    let mass_rescale = rat(1, kk * kk);
    let target = &target_unit * &mass_rescale;

    let mut targets = BTreeMap::new();
    targets.insert("welfare".to_string(), target);
    targets.insert("welfare_unit_mass".to_string(), target_unit);
    Ok(GeneratedInstance {
        instance,
        targets,
        metadata: meta(&[
            ("family", "partition-welfare".into()),
            ("k", k.to_string()),
            ("element_sum", total.to_string()),
            ("mass_rescale", format_rat(&mass_rescale)),
        ]),
    })
}

// ---------------------------------------------------------------------------
// Subset-sum embedding into a joint welfare/revenue target (two bidders)
// ---------------------------------------------------------------------------

/// Embeds a subset-sum question into a joint welfare/revenue dominance
/// question.
///
/// Given positive rationals `A = (a_1, …, a_k)` (sorted descending and
/// rescaled internally so they sum to a small budget, `1/100` by
/// default), builds a two-bidder instance with both bidders uniform on
/// supports of size `2k+1`: the column bidder's values are `1, …, 2k+1`
/// and the row bidder's values are `i + d_i`, where the diagonal gaps
/// `d_i` carry the elements: `d_{2j−1} = a_j`, `d_{2j}` is the unique
/// larger gap making the trade at position `2j−1` conserve
/// welfare-plus-revenue exactly, and `d_{2k+1} = 0`.
///
/// Any mechanism meeting the welfare target sells every off-diagonal
/// tuple to the higher-value bidder (a unit-scale loss otherwise) and
/// sells at every diagonal tuple, so the only freedom left is the
/// diagonal winners.  Giving diagonal position `2j−1` to the row bidder
/// adds `a_j` to welfare and removes exactly `a_j` from revenue (the row
/// bidder's column threshold drops from `i+1+d_{i+1}` to `i+d_i`, and
/// the column bidder's row threshold rises from `i` to `i+1`); giving an
/// even diagonal position to the column bidder strictly loses
/// welfare-plus-revenue, and the top position is fully neutral.  The
/// targets sit half the perturbation budget inside the extreme of that
/// trade line, so a feasible mechanism weakly dominates the
/// `("welfare", "revenue")` pair exactly when a sub-collection of `A`
/// sums to half the total.
///
/// `eps` overrides the perturbation budget; it must be positive and at
/// most `1/100` so that the budget stays far below the unit value gaps.
pub fn gen_partition_bicriterion(a: &[Rat], eps: Option<&Rat>) -> Result<GeneratedInstance> {
    let k = a.len();
    if k < 2 {
        return Err(Error::TooSmall(format!(
            "subset-sum embedding needs at least 2 elements, got {k}"
        )));
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument(
            "subset-sum elements must be positive".into(),
        ));
    }
    let budget = match eps {
        Some(e) => {
            if !e.is_positive() {
                return Err(Error::InvalidArgument(
                    "perturbation budget must be positive".into(),
                ));
            }
            if e > &rat(1, 100) {
                return Err(Error::TooLarge(format!(
                    "perturbation budget {} exceeds 1/100; the diagonal gaps must stay \
                     far below the unit value spacing",
                    format_rat(e)
                )));
            }
            e.clone()
        }
        None => rat(1, 100),
    };
    let sum: Rat = a.iter().sum();
    let scale = &budget / sum;
    let mut a: Vec<Rat> = a.iter().map(|x| x * &scale).collect();
    // The reduction is invariant under permutations of A; descending
    // order guarantees every even diagonal position strictly loses
    // welfare-plus-revenue when given to the column bidder.
    a.sort_by(|x, y| y.cmp(x));

    let n = 2 * k + 1;
    // Diagonal gaps, 1-based; d[n] stays zero.  With uniform unnormalized
    // masses, the mass of rows at or above index i is T_i = n − i + 1.
    let mut d = vec![Rat::zero(); n + 1];
    for (j, elem) in a.iter().enumerate() {
        let i = 2 * j + 1;
        let t_next = rat_int((n - i) as i64);
        d[i] = elem.clone();
        // Trade conservation at odd position i:
        //   welfare gain d_i  ==  revenue loss (T_{i+1}+1)·d_i − T_{i+1}·d_{i+1}.
        d[i + 1] = &d[i] * (&t_next + rat_int(2)) / &t_next;
    }
    for i in 1..=n {
        // Row-bidder values stay strictly between the column bidder's
        // current and next value (meeting it only at the top), and the
        // gaps stay far below the unit spacing.
        if i < n {
            assert!(d[i].is_positive() && d[i] < rat(1, 25));
        } else {
            assert!(d[i].is_zero());
        }
    }
    for j in 0..k {
        let i = 2 * j + 1;
        let t_next = rat_int((n - i) as i64);
        assert_eq!(
            &t_next * &d[i + 1],
            (&t_next + rat_int(2)) * &d[i],
            "trade at odd diagonal position {i} must conserve welfare-plus-revenue"
        );
        // At the following even position the column-bidder choice must
        // strictly lose welfare-plus-revenue, so it is never taken by a
        // mechanism meeting both targets.
        let t_even = rat_int((n - i - 1) as i64);
        assert!(
            &t_even * &d[i + 2] < (&t_even + rat_int(2)) * &d[i + 1],
            "even diagonal position {} must strictly favor the row bidder",
            i + 1
        );
    }

    let v2: Vec<Rat> = (1..=n).map(|i| rat_int(i as i64)).collect();
    let v1: Vec<Rat> = (1..=n).map(|i| rat_int(i as i64) + &d[i]).collect();
    let uniform = vec![rat(1, n as i64); n];
    let instance = Instance::product(vec![
        MarginalDistribution::new(v1, uniform.clone())?,
        MarginalDistribution::new(v2, uniform)?,
    ])?;

    // Reference configuration: even diagonal positions and the top to the
    // row bidder, odd (trading) positions to the column bidder.
    let mut choices = vec![0u8; n];
    for (i, c) in choices.iter_mut().enumerate() {
        *c = if (i + 1) % 2 == 0 || i + 1 == n { 1 } else { 2 };
    }
    let base = diagonal_mechanism(&instance, &choices)?;
    let cell = rat_int((n * n) as i64);
    let half = &budget / rat_int(2) / &cell;
    let w_t = &base.objectives.welfare + &half;
    let r_t = &base.objectives.revenue - &half;

    let mut targets = BTreeMap::new();
    targets.insert("welfare_unit_mass".to_string(), &w_t * &cell);
    targets.insert("revenue_unit_mass".to_string(), &r_t * &cell);
    targets.insert("welfare".to_string(), w_t);
    targets.insert("revenue".to_string(), r_t);
    Ok(GeneratedInstance {
        instance,
        targets,
        metadata: meta(&[
            ("family", "partition-bicriterion".into()),
            ("k", k.to_string()),
            ("support", n.to_string()),
            ("perturbation_sum", format_rat(&budget)),
            ("mass_rescale", format_rat(&(Rat::one() / &cell))),
        ]),
    })
}

// ---------------------------------------------------------------------------
// Exponential Pareto family (two bidders)
// ---------------------------------------------------------------------------

/// A two-bidder family whose exact Pareto frontier has at least `2^k`
/// points.
///
/// Both bidders are uniform on supports of size `k+1`: the column bidder
/// on `{1, …, k+1}` and the row bidder on `{i + a_i}` with
/// `a_i = 5^i / N` and `N` large enough that `Σ a_i < 1/1000`.  Selling
/// to the row bidder below the diagonal, the column bidder above it, and
/// fixing the top diagonal cell to the row bidder leaves the `k` lower
/// diagonal cells free; giving cell `(i, i)` to the row bidder raises
/// welfare by `a_i/(k+1)²` and lowers revenue by
/// `((n−i)a_{i+1} − (n−i+1)a_i)/(k+1)²` with `n = k+1`.  Both increment
/// sequences are super-increasing and sorted the same way, so the `2^k`
/// subset sums order welfare and revenue in exactly opposite directions:
/// every one of the `2^k` diagonal mechanisms is undominated.
///
/// Targets record the objective pairs of the two extreme diagonal
/// mechanisms (`diagonal_welfare_max`/`diagonal_revenue_min` for all
/// cells to the row bidder, `diagonal_welfare_min`/`diagonal_revenue_max`
/// for all free cells to the column bidder).
pub fn gen_exponential_pareto(k: usize) -> Result<GeneratedInstance> {
    if k < 2 {
        return Err(Error::TooSmall(format!(
            "the exponential family needs k ≥ 2, got {k}"
        )));
    }
    if k > 16 {
        return Err(Error::TooLarge(format!(
            "the exponential family is limited to k ≤ 16, got {k}"
        )));
    }
    let n = k + 1;
    let pow5: Vec<BigInt> = (0..=n).map(|i| BigInt::from(5).pow(i as u32)).collect();
    let normalizer =
        BigInt::from(1000) * pow5[1..].iter().sum::<BigInt>() + BigInt::one();
    let a: Vec<Rat> = (1..=n)
        .map(|i| Rat::new(pow5[i].clone(), normalizer.clone()))
        .collect();

    let total: Rat = a.iter().sum();
    assert!(total < rat(1, 1000), "perturbations must stay tiny");
    for i in 1..n {
        // Flipping free diagonal cell i to the row bidder must strictly
        // lower revenue: a_i < (n−i)/(n−i+1) · a_{i+1}, with margin.
        let gap = rat((n - i) as i64, (n - i + 1) as i64);
        assert!(&a[i - 1] < &(&gap * &a[i] / rat_int(2)));
        // Perturbations are super-increasing.
        let prefix: Rat = a[..i - 1].iter().sum();
        assert!(prefix < a[i - 1]);
    }
    // Revenue decrements Δ_i = (n−i)a_{i+1} − (n−i+1)a_i are positive,
    // ascending, and super-increasing, so welfare order and revenue order
    // over subsets of free cells are exact opposites.
    let deltas: Vec<Rat> = (1..n)
        .map(|i| rat_int((n - i) as i64) * &a[i] - rat_int((n - i + 1) as i64) * &a[i - 1])
        .collect();
    for (i, d) in deltas.iter().enumerate() {
        assert!(d.is_positive());
        let prefix: Rat = deltas[..i].iter().sum();
        assert!(&prefix < d);
    }

    let uniform = vec![rat(1, n as i64); n];
    let row_values: Vec<Rat> = (1..=n).map(|i| rat_int(i as i64) + &a[i - 1]).collect();
    let col_values: Vec<Rat> = (1..=n).map(|i| rat_int(i as i64)).collect();
    let instance = Instance::product(vec![
        MarginalDistribution::new(row_values, uniform.clone())?,
        MarginalDistribution::new(col_values, uniform)?,
    ])?;

    let all_row = diagonal_mechanism(&instance, &vec![1u8; n])?;
    let mut lo_choices = vec![2u8; n];
    lo_choices[n - 1] = 1;
    let all_col = diagonal_mechanism(&instance, &lo_choices)?;

    let mut targets = BTreeMap::new();
    targets.insert(
        "diagonal_welfare_max".to_string(),
        all_row.objectives.welfare.clone(),
    );
    targets.insert(
        "diagonal_revenue_min".to_string(),
        all_row.objectives.revenue.clone(),
    );
    targets.insert(
        "diagonal_welfare_min".to_string(),
        all_col.objectives.welfare.clone(),
    );
    targets.insert(
        "diagonal_revenue_max".to_string(),
        all_col.objectives.revenue.clone(),
    );
    Ok(GeneratedInstance {
        instance,
        targets,
        metadata: meta(&[
            ("family", "exponential".into()),
            ("k", k.to_string()),
            ("support", n.to_string()),
            ("normalizer", normalizer.to_string()),
        ]),
    })
}

/// The allocation that sells to the row bidder below the diagonal, the
/// column bidder above it, and follows `choices` (entries `1` or `2`) on
/// the diagonal.  Feasible for any two-bidder instance with equal support
/// sizes; the off-diagonal winners match the higher-value bidder whenever
/// the supports interleave as in the generated families.
pub fn diagonal_mechanism(inst: &Instance, choices: &[u8]) -> Result<Mechanism> {
    let n = inst.n();
    if n != 2 {
        return Err(Error::ArityError {
            op: "diagonal mechanism".into(),
            n,
        });
    }
    let shape = inst.shape();
    let (h1, h2) = (shape[0], shape[1]);
    if h1 != h2 || choices.len() != h1 {
        return Err(Error::InvalidArgument(format!(
            "diagonal mechanism needs square supports matching the {} choices, got {h1}×{h2}",
            choices.len()
        )));
    }
    if choices.iter().any(|&c| c != 1 && c != 2) {
        return Err(Error::InvalidArgument(
            "diagonal choices must be 1 or 2".into(),
        ));
    }
    let mut winners = vec![0u8; h1 * h2];
    for i in 0..h1 {
        for j in 0..h2 {
            winners[i * h2 + j] = match i.cmp(&j) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => 2,
                std::cmp::Ordering::Equal => choices[i],
            };
        }
    }
    let allocation = AllocationMatrix::new(vec![h1, h2], winners)?;
    Mechanism::from_allocation(allocation, inst)
}

// ---------------------------------------------------------------------------
// Binary-support subset-sum embedding (n bidders)
// ---------------------------------------------------------------------------

/// Embeds a subset-sum question into an exact-welfare question over `k`
/// binary-support bidders.
///
/// Given positive rationals `B` (rescaled so `Σ b_i = 1/100`), bidder `i`
/// is uniform on `{b_i, 2^i}`.  The high values are super-increasing and
/// dwarf every low value, so a mechanism whose welfare has high-part
/// exactly `Σ 2^i` wins, for each bidder, on exactly one tuple where that
/// bidder holds its high value; monotonicity then allows at most one
/// low-value win per bidder, and the `"welfare"` target additionally
/// demands low-value contributions summing to half of `Σ b_i`.
pub fn gen_binary_partition(b: &[Rat]) -> Result<GeneratedInstance> {
    let k = b.len();
    if k < 2 {
        return Err(Error::TooSmall(format!(
            "subset-sum embedding needs at least 2 elements, got {k}"
        )));
    }
    if b.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument(
            "subset-sum elements must be positive".into(),
        ));
    }
    let sum: Rat = b.iter().sum();
    let scale = rat(1, 100) / sum;
    let b: Vec<Rat> = b.iter().map(|x| x * &scale).collect();

    let half = rat(1, 2);
    let mut marginals = Vec::with_capacity(k);
    let mut high_sum = Rat::zero();
    for (i, low) in b.iter().enumerate() {
        let high = rat_int(1i64 << (i + 1));
        assert!(low < &high, "low values must stay below the high values");
        high_sum += &high;
        marginals.push(MarginalDistribution::new(
            vec![low.clone(), high],
            vec![half.clone(), half.clone()],
        )?);
    }
    let instance = Instance::product(marginals)?;

    let target_unit = &high_sum + rat(1, 200); // Σ 2^i + half of Σ b_i
    let mass_rescale = Rat::new(BigInt::one(), BigInt::one() << k);
    let target = &target_unit * &mass_rescale;
    let mut targets = BTreeMap::new();
    targets.insert("welfare".to_string(), target);
    targets.insert("welfare_unit_mass".to_string(), target_unit);
    Ok(GeneratedInstance {
        instance,
        targets,
        metadata: meta(&[
            ("family", "binary-partition".into()),
            ("k", k.to_string()),
            ("mass_rescale", format_rat(&mass_rescale)),
        ]),
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
