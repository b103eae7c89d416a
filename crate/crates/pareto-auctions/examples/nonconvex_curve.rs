//! The exact Pareto curve of a two-bidder instance can be non-convex:
//! one of its points lies strictly below a chord through two others, so no
//! λ-weighted objective (and no randomized mixture) ever selects it.

use pareto_auctions::generators::gen_nonconvex;
use pareto_auctions::oracle::oracle_pareto;
use pareto_auctions::rational::{decimal_approx, format_rat};
use pareto_auctions::Rat;

fn main() -> pareto_auctions::Result<()> {
    let gen = gen_nonconvex();
    let inst = &gen.instance;
    println!("instance:");
    for (b, m) in inst.marginals().iter().enumerate() {
        println!(
            "  bidder {}: values {:?}, masses {:?}",
            b + 1,
            m.values().iter().map(format_rat).collect::<Vec<_>>(),
            m.masses().iter().map(format_rat).collect::<Vec<_>>()
        );
    }

    let front = oracle_pareto(inst)?;
    println!("\nexact Pareto curve ({} points):", front.len());
    println!("  {:>10} {:>10}   {:>8} {:>8}", "welfare", "revenue", "~w", "~r");
    for (p, _) in &front {
        println!(
            "  {:>10} {:>10}   {:>8} {:>8}",
            format_rat(&p.welfare),
            format_rat(&p.revenue),
            decimal_approx(&p.welfare, 4),
            decimal_approx(&p.revenue, 4)
        );
    }

    // Search for a frontier point strictly below a chord through two others.
    let pts: Vec<_> = front.iter().map(|(p, _)| p).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                // b below chord a–c  ⇔  (c.w−a.w)(b.r−a.r) < (c.r−a.r)(b.w−a.w)
                let lhs = (&c.welfare - &a.welfare) * (&b.revenue - &a.revenue);
                let rhs = (&c.revenue - &a.revenue) * (&b.welfare - &a.welfare);
                if lhs < rhs {
                    let gap: Rat = (rhs - lhs) / (&c.welfare - &a.welfare);
                    println!(
                        "\nnon-convexity witness: ({}, {}) sits {} below the chord from \
                         ({}, {}) to ({}, {})",
                        format_rat(&b.welfare),
                        format_rat(&b.revenue),
                        format_rat(&gap),
                        format_rat(&a.welfare),
                        format_rat(&a.revenue),
                        format_rat(&c.welfare),
                        format_rat(&c.revenue),
                    );
                    println!(
                        "that point is Pareto-optimal, yet no revenue + λ·welfare \
                         maximizer and no mixture of them ever attains it."
                    );
                    return Ok(());
                }
            }
        }
    }
    println!("\nno chord violation found (curve is convex)");
    Ok(())
}
