//! The classic corner mechanisms and the λ-family connecting them:
//! Vickrey maximizes welfare, the ironed-virtual-value auction maximizes
//! revenue, and maximizing revenue + λ·welfare sweeps out every vertex of
//! the upper convex envelope in between.

use pareto_auctions::mechanisms::{lambda_optimal, lambda_sweep, myerson, vickrey, virtual_values};
use pareto_auctions::model::{Instance, MarginalDistribution, Mechanism};
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

fn show(name: &str, m: &Mechanism) {
    println!(
        "{name}: welfare {}, revenue {}",
        format_rat(&m.objectives.welfare),
        format_rat(&m.objectives.revenue)
    );
    let (h1, h2) = (m.allocation.shape()[0], m.allocation.shape()[1]);
    for i in 0..h1 {
        let row: Vec<String> = (0..h2)
            .map(|j| {
                let f = i * h2 + j;
                let w = m.allocation.winners()[f];
                if w == 0 {
                    "-".into()
                } else {
                    format!("{w}@{}", format_rat(&m.payments[f]))
                }
            })
            .collect();
        println!("    [{}]", row.join("  "));
    }
}

fn main() -> pareto_auctions::Result<()> {
    // Both bidders: value 1 with probability 1/3, value 5 with 2/3.  The
    // low value's virtual value is negative, so maximal revenue demands a
    // reserve that sometimes keeps the item — a real welfare sacrifice.
    let inst = Instance::product(vec![
        marginal(&["1", "5"], &["1/3", "2/3"]),
        marginal(&["1", "5"], &["1/3", "2/3"]),
    ])?;

    println!("winner tables are rows = bidder 1's value, columns = bidder 2's;");
    println!("entries are winner@payment, '-' means the item is kept.\n");

    show("vickrey (welfare-optimal)", &vickrey(&inst)?);

    let vv = virtual_values(&inst)?;
    for (b, phis) in vv.per_bidder.iter().enumerate() {
        println!(
            "\nbidder {} virtual values: {:?}",
            b + 1,
            phis.iter().map(format_rat).collect::<Vec<_>>()
        );
    }
    println!();
    show("revenue-optimal", &myerson(&inst)?);

    // The envelope's only breakpoint is at λ = 7: below it the reserve
    // wins, above it always-selling wins.
    for l in ["1/4", "7", "100"] {
        println!();
        show(
            &format!("revenue + {l}·welfare maximizer"),
            &lambda_optimal(&inst, &rat(l))?,
        );
    }

    let sweep = lambda_sweep(&inst)?;
    println!("\nupper-envelope vertices (revenue end → welfare end):");
    for v in &sweep {
        println!(
            "  λ = {:>5}: welfare {}, revenue {}",
            format_rat(&v.lambda),
            format_rat(&v.mechanism.objectives.welfare),
            format_rat(&v.mechanism.objectives.revenue)
        );
    }
    Ok(())
}
