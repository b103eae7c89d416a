//! Graph correspondence for binary-support instances.
//!
//! When every bidder's support has exactly two values ("low"/"high"), the
//! feasible deterministic mechanisms are in bijection with the matchings of
//! an explicit weighted graph:
//!
//! * one **tuple node** per valuation tuple (there are `2^n`);
//! * one **dummy node** per (tuple, bidder) pair where that bidder's
//!   coordinate is high;
//! * a **pair edge** per bidder `b` and per setting of the other bidders'
//!   coordinates, joining the two tuples that differ only in `b`'s
//!   coordinate — selecting it sells to `b` at both tuples, so `b` pays
//!   their low value;
//! * a **single edge** joining each dummy node to its tuple — selecting it
//!   sells to that bidder at that tuple only (their coordinate is high
//!   there), so they pay their high value.
//!
//! Each edge carries two weights, its exact contribution to expected
//! welfare and to expected revenue.  Summing either weight over a matching
//! gives the corresponding objective of the induced mechanism, so the
//! revenue/welfare trade-off becomes a bicriteria matching problem.
//!
//! The correspondence works because monotonicity pins down what a bidder's
//! winning set can look like along their own two-point axis (nothing, high
//! only, or both), and "each node matched at most once" is exactly "each
//! tuple has at most one winner".

use std::collections::HashMap;

use num_traits::Zero;

use crate::model::{AllocationMatrix, Instance, Mechanism, ObjectivePoint, Rat};
use crate::rational::format_rat;
use crate::{Error, Result};

/// Hard cap on the number of bidders: the graph has `2^n` tuple nodes and
/// `n·2^(n-1)` dummy nodes, and [`AuctionGraph::matchings`] enumerates a set
/// whose size is the number of feasible mechanisms.
pub const GRAPH_BIDDER_LIMIT: usize = 4;

/// A vertex of the auction graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphNode {
    /// A valuation tuple, identified by its flat row-major index (bidder
    /// `b`'s coordinate is bit `n-1-b`, so the index doubles as the index
    /// into an [`AllocationMatrix`] of shape `[2; n]`).
    Tuple(usize),
    /// Auxiliary partner for "sell at the high tuple only": attached to
    /// tuple `tuple`, where bidder `bidder` (0-based) has their high value.
    Dummy { tuple: usize, bidder: usize },
}

/// What selecting an edge does to the induced mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// Sell to `bidder` at both tuples of their low/high pair (the pair is
    /// identified by the tuple where the coordinate is low).  The bidder
    /// pays their low value.
    Pair { bidder: usize, low_tuple: usize },
    /// Sell to `bidder` at `tuple` only; their coordinate is high there and
    /// they pay their high value.
    Single { bidder: usize, tuple: usize },
}

/// An edge with its two objective contributions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    /// Indices into [`AuctionGraph::nodes`].
    pub endpoints: (usize, usize),
    pub kind: EdgeKind,
    /// Exact contribution to expected welfare if this edge is matched.
    pub welfare_weight: Rat,
    /// Exact contribution to expected revenue if this edge is matched.
    pub revenue_weight: Rat,
}

/// The weighted graph whose matchings are the feasible mechanisms of a
/// binary-support product instance.
#[derive(Debug, Clone)]
pub struct AuctionGraph {
    inst: Instance,
    n: usize,
    num_tuples: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

/// Builds the auction graph of `inst`.
///
/// Requires an independent (product) instance in which every bidder has
/// exactly two support values, and at most [`GRAPH_BIDDER_LIMIT`] bidders.
pub fn build_graph(inst: &Instance) -> Result<AuctionGraph> {
    if inst.is_correlated() {
        return Err(Error::CorrelatedUnsupported {
            op: "the matching-graph construction".into(),
        });
    }
    let n = inst.n();
    if n > GRAPH_BIDDER_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "the matching graph supports at most {GRAPH_BIDDER_LIMIT} bidders, got {n}"
        )));
    }
    if inst.shape().iter().any(|&h| h != 2) {
        return Err(Error::NotBinary);
    }
    let num_tuples = 1usize << n;

    // Tuple nodes first (node index == tuple index), then dummy nodes in
    // (tuple, bidder) order.
    let mut nodes: Vec<GraphNode> = (0..num_tuples).map(GraphNode::Tuple).collect();
    let mut dummy_at: HashMap<(usize, usize), usize> = HashMap::new();
    for t in 0..num_tuples {
        for b in 0..n {
            if t & bit(n, b) != 0 {
                dummy_at.insert((t, b), nodes.len());
                nodes.push(GraphNode::Dummy { tuple: t, bidder: b });
            }
        }
    }

    // Probability of the other bidders' coordinates in tuple `t`.
    let cofactor = |t: usize, b: usize| -> Rat {
        let mut p = Rat::from_integer(1.into());
        for j in 0..n {
            if j != b {
                let k = (t >> (n - 1 - j)) & 1;
                p *= &inst.marginal(j).masses()[k];
            }
        }
        p
    };

    let mut edges = Vec::new();
    for b in 0..n {
        let m = inst.marginal(b);
        let (vl, vh) = (&m.values()[0], &m.values()[1]);
        let (fl, fh) = (&m.masses()[0], &m.masses()[1]);
        for t in 0..num_tuples {
            if t & bit(n, b) != 0 {
                continue; // enumerate each pair once, from its low tuple
            }
            let c = cofactor(t, b);
            edges.push(GraphEdge {
                endpoints: (t, t | bit(n, b)),
                kind: EdgeKind::Pair { bidder: b, low_tuple: t },
                welfare_weight: &c * (fl * vl + fh * vh),
                revenue_weight: &c * (vl * (fl + fh)),
            });
        }
    }
    for t in 0..num_tuples {
        for b in 0..n {
            if t & bit(n, b) == 0 {
                continue;
            }
            let m = inst.marginal(b);
            let w = cofactor(t, b) * &m.masses()[1] * &m.values()[1];
            edges.push(GraphEdge {
                endpoints: (t, dummy_at[&(t, b)]),
                kind: EdgeKind::Single { bidder: b, tuple: t },
                welfare_weight: w.clone(),
                revenue_weight: w,
            });
        }
    }

    Ok(AuctionGraph {
        inst: inst.clone(),
        n,
        num_tuples,
        nodes,
        edges,
    })
}

/// Bit of bidder `b`'s coordinate in a flat tuple index (`b = 0` is the
/// most significant, matching row-major order).
fn bit(n: usize, b: usize) -> usize {
    1 << (n - 1 - b)
}

impl AuctionGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_tuple_nodes(&self) -> usize {
        self.num_tuples
    }

    pub fn num_dummy_nodes(&self) -> usize {
        self.nodes.len() - self.num_tuples
    }

    /// Human-readable node label: tuples as low/high strings in bidder
    /// order (`"LH"` = bidder 1 low, bidder 2 high), dummies as
    /// `"<tuple>~<bidder>"` with the bidder 1-based.
    pub fn node_label(&self, node: usize) -> String {
        match self.nodes[node] {
            GraphNode::Tuple(t) => self.tuple_label(t),
            GraphNode::Dummy { tuple, bidder } => {
                format!("{}~{}", self.tuple_label(tuple), bidder + 1)
            }
        }
    }

    fn tuple_label(&self, t: usize) -> String {
        (0..self.n)
            .map(|b| if t & bit(self.n, b) != 0 { 'H' } else { 'L' })
            .collect()
    }

    /// Validates that the edge indices form a matching (pairwise disjoint
    /// endpoints) and returns the bitmask of covered nodes.
    fn check_matching(&self, edge_indices: &[usize]) -> Result<u64> {
        let mut used = 0u64;
        for &e in edge_indices {
            if e >= self.edges.len() {
                return Err(Error::InvalidArgument(format!(
                    "edge index {e} out of range (the graph has {} edges)",
                    self.edges.len()
                )));
            }
            let (a, b) = self.edges[e].endpoints;
            let m = (1u64 << a) | (1u64 << b);
            if used & m != 0 {
                let clash = if used & (1u64 << a) != 0 { a } else { b };
                return Err(Error::NotAMatching(format!(
                    "node {} is covered by more than one edge",
                    self.node_label(clash)
                )));
            }
            used |= m;
        }
        Ok(used)
    }

    /// The mechanism induced by a matching: a pair edge sells to its bidder
    /// at both endpoints, a single edge sells at its tuple, and unmatched
    /// tuples keep the item unsold.
    pub fn matching_to_mechanism(&self, edge_indices: &[usize]) -> Result<Mechanism> {
        self.check_matching(edge_indices)?;
        let mut winners = vec![0u8; self.num_tuples];
        for &e in edge_indices {
            match self.edges[e].kind {
                EdgeKind::Pair { bidder, low_tuple } => {
                    winners[low_tuple] = (bidder + 1) as u8;
                    winners[low_tuple | bit(self.n, bidder)] = (bidder + 1) as u8;
                }
                EdgeKind::Single { bidder, tuple } => {
                    winners[tuple] = (bidder + 1) as u8;
                }
            }
        }
        let alloc = AllocationMatrix::new(vec![2; self.n], winners)?;
        Mechanism::from_allocation(alloc, &self.inst)
    }

    /// The matching's summed (welfare, revenue) weights.  Equals
    /// `matching_to_mechanism(..).objectives` exactly.
    pub fn matching_weight(&self, edge_indices: &[usize]) -> Result<ObjectivePoint> {
        self.check_matching(edge_indices)?;
        let mut w = Rat::zero();
        let mut r = Rat::zero();
        for &e in edge_indices {
            w += &self.edges[e].welfare_weight;
            r += &self.edges[e].revenue_weight;
        }
        Ok(ObjectivePoint::new(w, r))
    }

    /// Every matching (including the empty one), each as an ascending list
    /// of edge indices.
    ///
    /// Exhaustive branch-and-prune over edges; the output size equals the
    /// number of feasible mechanisms, which grows doubly exponentially in
    /// the number of bidders — intended for `n ≤ 3`.
    pub fn matchings(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_matchings(0, 0u64, &mut cur, &mut out);
        out
    }

    fn collect_matchings(
        &self,
        from: usize,
        used: u64,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if from == self.edges.len() {
            out.push(cur.clone());
            return;
        }
        self.collect_matchings(from + 1, used, cur, out);
        let (a, b) = self.edges[from].endpoints;
        let m = (1u64 << a) | (1u64 << b);
        if used & m == 0 {
            cur.push(from);
            self.collect_matchings(from + 1, used | m, cur, out);
            cur.pop();
        }
    }

    /// Tab-separated edge list: both node labels, the selling bidder
    /// (1-based), the edge kind, and the two weights as exact rationals.
    pub fn export_edge_list(&self) -> String {
        let mut s = String::from("node_a\tnode_b\tbidder\tkind\twelfare\trevenue\n");
        for e in &self.edges {
            let (a, b) = e.endpoints;
            let (bidder, kind) = match e.kind {
                EdgeKind::Pair { bidder, .. } => (bidder, "pair"),
                EdgeKind::Single { bidder, .. } => (bidder, "single"),
            };
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                self.node_label(a),
                self.node_label(b),
                bidder + 1,
                kind,
                format_rat(&e.welfare_weight),
                format_rat(&e.revenue_weight),
            ));
        }
        s
    }
}
