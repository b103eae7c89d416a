//! Randomization buys every point on the upper hull: for any welfare
//! target between the revenue-optimal auction's welfare and the maximum,
//! the best randomized mechanism is a coin flip between (at most) two
//! adjacent deterministic envelope vertices.

use pareto_auctions::mechanisms::{lambda_sweep, myerson, randomized_tradeoff, vickrey};
use pareto_auctions::model::{Instance, MarginalDistribution};
use pareto_auctions::rational::{format_rat, parse_rat};
use pareto_auctions::{Error, Rat};

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
    // Revenue here wants a reserve of 5 (keeping the item when both
    // bidders are low); welfare wants to always sell.  The envelope
    // between the two extremes is where mixtures live.
    let inst = Instance::product(vec![
        marginal(&["1", "5"], &["1/3", "2/3"]),
        marginal(&["1", "5"], &["1/3", "2/3"]),
    ])?;

    let w_rev = myerson(&inst)?.objectives.welfare;
    let w_max = vickrey(&inst)?.objectives.welfare;
    println!(
        "reachable expected-welfare range for revenue-best mixtures: [{}, {}]",
        format_rat(&w_rev),
        format_rat(&w_max)
    );
    println!("envelope vertices:");
    for v in lambda_sweep(&inst)? {
        println!(
            "  welfare {}, revenue {}",
            format_rat(&v.mechanism.objectives.welfare),
            format_rat(&v.mechanism.objectives.revenue)
        );
    }

    // A target strictly between two vertices forces a genuine coin flip.
    let target = (&w_rev + &w_max) / rat("2");
    let mixture = randomized_tradeoff(&inst, &target)?;
    let obj = mixture.objectives();
    println!("\ntarget welfare {} (midpoint):", format_rat(&target));
    for (m, weight) in &mixture.components {
        println!(
            "  with probability {}: welfare {}, revenue {}",
            format_rat(weight),
            format_rat(&m.objectives.welfare),
            format_rat(&m.objectives.revenue)
        );
    }
    println!(
        "  expected: welfare {}, revenue {}",
        format_rat(&obj.welfare),
        format_rat(&obj.revenue)
    );
    assert_eq!(obj.welfare, target, "the mixture hits the target exactly");

    // Out-of-range targets are refused rather than approximated.
    let too_much = &w_max + rat("1");
    match randomized_tradeoff(&inst, &too_much) {
        Err(Error::TargetOutOfRange { lo, hi, .. }) => println!(
            "\ntarget {} refused: the reachable range is [{lo}, {hi}]",
            format_rat(&too_much)
        ),
        other => panic!("expected an out-of-range error, got {other:?}"),
    }
    Ok(())
}
