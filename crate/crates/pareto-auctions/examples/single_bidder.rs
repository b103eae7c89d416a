//! One bidder: every deterministic mechanism is a posted price at a
//! support value, so the whole trade-off is a short explicit curve.  With
//! two support values it is always convex; from three values on it can
//! already bulge inward, the smallest seed of non-convexity.

use pareto_auctions::model::{Instance, MarginalDistribution};
use pareto_auctions::oracle::single_bidder_curve;
use pareto_auctions::rational::{format_rat, parse_rat};
use pareto_auctions::Rat;

fn rat(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn one_bidder(values: &[&str], masses: &[&str]) -> Instance {
    Instance::product(vec![MarginalDistribution::new(
        values.iter().map(|s| rat(s)).collect(),
        masses.iter().map(|s| rat(s)).collect(),
    )
    .unwrap()])
    .unwrap()
}

fn report(name: &str, inst: &Instance) -> pareto_auctions::Result<()> {
    let curve = single_bidder_curve(inst)?;
    println!("{name}:");
    for (idx, p) in &curve.points {
        let price = &inst.marginal(0).values()[*idx];
        println!(
            "  post price {:>4}: welfare {:>6}, revenue {:>5}",
            format_rat(price),
            format_rat(&p.welfare),
            format_rat(&p.revenue)
        );
        let mech = curve.mechanism(inst, curve.points.iter().position(|q| q.0 == *idx).unwrap())?;
        assert_eq!(&mech.objectives, p);
    }
    println!(
        "  curve is {}\n",
        if curve.convex { "convex" } else { "NOT convex" }
    );
    Ok(())
}

fn main() -> pareto_auctions::Result<()> {
    // Binary support: at most two undominated prices, always convex.
    report(
        "uniform coin on {1, 3}",
        &one_bidder(&["1", "3"], &["1/2", "1/2"]),
    )?;

    // Three support values: the middle price sits strictly below the chord
    // between its neighbors.
    let inst = one_bidder(&["1", "3", "10"], &["1/2", "1/4", "1/4"]);
    report("half 1, quarter 3, quarter 10", &inst)?;
    let curve = single_bidder_curve(&inst)?;
    assert!(!curve.convex);

    println!(
        "with a single bidder the frontier is the posted-price curve; its \
         non-convexity is what multi-bidder hard instances amplify."
    );
    Ok(())
}
