//! The two-bidder dynamic program answers exact questions that convex
//! methods cannot: which objective values are achievable at all, which
//! (welfare, revenue) pairs coexist, and a mechanism witnessing any of
//! them.  States are the lower-right subrectangles of the valuation grid;
//! peeling a row or column decides one bidder's top remaining value.

use pareto_auctions::dp::{
    achievable_pairs, achievable_values, dominance_witness, ScalarObjective,
};
use pareto_auctions::mechanisms::{myerson, vickrey};
use pareto_auctions::model::{evaluate, Instance, MarginalDistribution, ObjectivePoint};
use pareto_auctions::rational::{format_rat, parse_rat};
use pareto_auctions::Rat;

fn rat(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn marginal(values: &[&str], masses: &[&str]) -> MarginalDistribution {
    MarginalDistribution::new(
        values.iter().map(|s| rat(s)).collect(),
        masses.iter().map(|s| rat(s)).collect(),
    )
    .unwrap()
}

fn main() -> pareto_auctions::Result<()> {
    // Heavy upper tails make the low values' virtual values negative, so
    // maximal revenue and maximal welfare pull in different directions.
    let inst = Instance::product(vec![
        marginal(&["1", "2", "4"], &["1/4", "1/4", "1/2"]),
        marginal(&["1", "3"], &["1/3", "2/3"]),
    ])?;

    let welfare_set = achievable_values(&inst, ScalarObjective::Welfare, None)?;
    let mut values = welfare_set.root_values();
    values.sort();
    println!("{} distinct achievable welfare values:", values.len());
    println!(
        "  {}",
        values.iter().map(format_rat).collect::<Vec<_>>().join(", ")
    );

    // Witness an interior value exactly, and verify it by re-evaluation.
    let target = values[values.len() / 2].clone();
    let mech = welfare_set
        .witness(&target)?
        .expect("value from the set has a witness");
    assert_eq!(evaluate(&mech.allocation, &inst)?.welfare, target);
    println!(
        "\nwitness for welfare exactly {}: winners {:?}, revenue {}",
        format_rat(&target),
        mech.allocation.winners(),
        format_rat(&mech.objectives.revenue)
    );

    // A value missing from the set has no witness.
    let off = &target + rat("1/1000000");
    assert!(welfare_set.witness(&off)?.is_none());
    println!(
        "no mechanism has welfare exactly {} (as expected)",
        format_rat(&off)
    );

    // The joint pair DP sees combinations, not just single coordinates;
    // its dominance-pruned root staircase is the exact Pareto set.
    let pairs = achievable_pairs(&inst)?;
    println!(
        "\nthe exact Pareto frontier has {} points:",
        pairs.len()
    );
    for p in pairs.root_points() {
        println!(
            "  welfare {}, revenue {}",
            format_rat(&p.welfare),
            format_rat(&p.revenue)
        );
    }

    // Dominance queries: can some mechanism reach (w, r) componentwise?
    // The revenue-optimal point is reachable by definition; combining the
    // best welfare with the best revenue asks for both records at once.
    let attainable = myerson(&inst)?.objectives;
    let both_records = ObjectivePoint::new(
        vickrey(&inst)?.objectives.welfare,
        attainable.revenue.clone(),
    );
    let hit = dominance_witness(&inst, &attainable)?.expect("optimum dominates itself");
    println!(
        "({}, {}) is dominated: e.g. welfare {}, revenue {}",
        format_rat(&attainable.welfare),
        format_rat(&attainable.revenue),
        format_rat(&hit.objectives.welfare),
        format_rat(&hit.objectives.revenue)
    );
    match dominance_witness(&inst, &both_records)? {
        None => println!(
            "no mechanism reaches ({}, {}) in both coordinates: the two \
             records are incompatible",
            format_rat(&both_records.welfare),
            format_rat(&both_records.revenue)
        ),
        Some(m) => println!(
            "one mechanism holds both records: welfare {}, revenue {}",
            format_rat(&m.objectives.welfare),
            format_rat(&m.objectives.revenue)
        ),
    }
    Ok(())
}
