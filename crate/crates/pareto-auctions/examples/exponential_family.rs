//! The exact Pareto curve can be exponentially long: on this family with
//! parameter k, each of the 2^k ways to assign the free diagonal cells
//! lands on the frontier, trading slivers of welfare against slivers of
//! revenue in its own pattern.

use pareto_auctions::generators::{diagonal_mechanism, gen_exponential_pareto};
use pareto_auctions::oracle::oracle_pareto;
use pareto_auctions::rational::{decimal_approx, format_rat};

fn main() -> pareto_auctions::Result<()> {
    let k = 3usize;
    let gen = gen_exponential_pareto(k)?;
    let inst = &gen.instance;
    let n = inst.marginal(0).support_size();
    println!("k = {k}: two bidders on a {n}×{n} support, slivers below 1/1000 total\n");

    let front = oracle_pareto(inst)?;
    println!(
        "exact frontier has {} points (≥ 2^{k} = {})",
        front.len(),
        1usize << k
    );
    assert!(front.len() >= 1 << k);

    // The top diagonal cell is pinned; the k below it are free.  Selling a
    // free cell to the row bidder gains a sliver of welfare and loses a
    // strictly larger set-dependent sliver of revenue, so all 2^k subsets
    // are mutually undominated.
    println!("\nall {} free-cell configurations:", 1usize << k);
    for mask in 0..1u32 << k {
        let mut choices = vec![2u8; n];
        for i in 0..k {
            if mask >> i & 1 == 1 {
                choices[i] = 1;
            }
        }
        choices[n - 1] = 1;
        let mech = diagonal_mechanism(inst, &choices)?;
        let p = &mech.objectives;
        let on_front = front.iter().any(|(q, _)| q == p);
        println!(
            "  rows {mask:0width$b}: welfare ≈ {:<12} revenue ≈ {:<12}{}",
            decimal_approx(&p.welfare, 10),
            decimal_approx(&p.revenue, 10),
            if on_front { " [on frontier]" } else { "" },
            width = k
        );
        assert!(on_front, "every free-cell configuration is Pareto-optimal");
    }

    println!(
        "\nbracketing targets: welfare ∈ [{}, {}]",
        format_rat(&gen.targets["diagonal_welfare_min"]),
        format_rat(&gen.targets["diagonal_welfare_max"]),
    );
    println!(
        "                    revenue ∈ [{}, {}]",
        format_rat(&gen.targets["diagonal_revenue_min"]),
        format_rat(&gen.targets["diagonal_revenue_max"]),
    );
    Ok(())
}
