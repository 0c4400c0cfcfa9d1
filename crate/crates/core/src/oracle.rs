//! Brute-force integer-flow enumeration, the ground truth for tests.
//!
//! This module deliberately shares no code with the residue engine: it
//! works directly on the [`Network`] arc list with a depth-first search
//! over arc values. It is exact on desk-scale instances and handles
//! capacitated cyclic networks directly, which makes it an independent
//! check of the acyclic reduction.

use num_traits::Zero;

use crate::network::Network;
use crate::{Error, Int, Result};

/// One integral feasible flow: a nonnegative value per arc, in the
/// network's arc order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub values: Vec<u64>,
}

/// Result of a bounded enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub flows: Vec<FlowAssignment>,
    pub truncated: bool,
}

struct Search<'a> {
    net: &'a Network,
    /// Arc order used by the DFS (indices into net.arcs).
    order: Vec<usize>,
    tails: Vec<usize>,
    heads: Vec<usize>,
    /// Remaining outgoing/incoming capacity per node over unassigned
    /// capacitated arcs, and the number of unassigned uncapacitated ones.
    unassigned_out_cap: Vec<i128>,
    unassigned_in_cap: Vec<i128>,
    unassigned_out_free: Vec<usize>,
    unassigned_in_free: Vec<usize>,
    /// out minus in minus excess, over assigned arcs.
    surplus: Vec<i128>,
    /// Fallback cap for uncapacitated arcs whose tail may still receive
    /// flow: total supply plus total capacity.
    free_bound: i128,
    /// For each position in `order`: every arc into this arc's tail
    /// appears earlier, so the tail's inflow is final and the remaining
    /// out-flow is exactly determined.
    tail_inflow_final: Vec<bool>,
    values: Vec<u64>,
    count: Int,
    collect: Option<(usize, Vec<FlowAssignment>)>,
    truncated: bool,
}

impl<'a> Search<'a> {
    fn new(net: &'a Network, limit: Option<usize>) -> Result<Self> {
        if !net.is_zero_sum() {
            return Err(Error::InvalidInput(
                "oracle requires zero-sum excesses".into(),
            ));
        }
        // Uncapacitated arcs must not form a directed cycle: adding one
        // unit around such a cycle preserves feasibility, so the flow set
        // would be infinite as soon as it is nonempty.
        let uncap = Network {
            nodes: net.nodes.clone(),
            arcs: net
                .arcs
                .iter()
                .filter(|a| a.capacity.is_none())
                .cloned()
                .collect(),
        };
        if !uncap.is_acyclic() {
            return Err(Error::InfiniteCount(
                "uncapacitated arcs form a directed cycle".into(),
            ));
        }

        let n = net.nodes.len();
        let tails: Vec<usize> = net.arcs.iter().map(|a| net.node_index(&a.tail)).collect();
        let heads: Vec<usize> = net.arcs.iter().map(|a| net.node_index(&a.head)).collect();

        // Arc order: topological by tail where possible, then by head.
        // On acyclic inputs this makes the per-node prefix pruning tight.
        let mut rank: Vec<usize> = (0..n).collect();
        if let Some(topo) = topo_try(net) {
            for (pos, &node) in topo.iter().enumerate() {
                rank[node] = pos;
            }
        }
        let mut order: Vec<usize> = (0..net.arcs.len()).collect();
        order.sort_by_key(|&i| (rank[tails[i]], rank[heads[i]], i));

        let supply: i128 = net
            .nodes
            .iter()
            .map(|nd| nd.excess.max(0) as i128)
            .sum();
        let caps: i128 = net
            .arcs
            .iter()
            .filter_map(|a| a.capacity.map(|c| c as i128))
            .sum();
        let free_bound = supply + caps;

        let mut unassigned_out_cap = vec![0i128; n];
        let mut unassigned_in_cap = vec![0i128; n];
        let mut unassigned_out_free = vec![0usize; n];
        let mut unassigned_in_free = vec![0usize; n];
        for (i, arc) in net.arcs.iter().enumerate() {
            match arc.capacity {
                Some(c) => {
                    unassigned_out_cap[tails[i]] += c as i128;
                    unassigned_in_cap[heads[i]] += c as i128;
                }
                None => {
                    unassigned_out_free[tails[i]] += 1;
                    unassigned_in_free[heads[i]] += 1;
                }
            }
        }
        // Position k has a final tail inflow when every arc into its tail
        // sits at an earlier position. Always true on acyclic inputs with
        // the topological order; opportunistic on cyclic ones.
        let mut last_in_position = vec![usize::MAX; n];
        for (pos, &arc) in order.iter().enumerate() {
            let h = heads[arc];
            last_in_position[h] = match last_in_position[h] {
                usize::MAX => pos,
                old => old.max(pos),
            };
        }
        let tail_inflow_final = order
            .iter()
            .enumerate()
            .map(|(pos, &arc)| {
                let t = tails[arc];
                last_in_position[t] == usize::MAX || last_in_position[t] < pos
            })
            .collect();

        let surplus = net.nodes.iter().map(|nd| -(nd.excess as i128)).collect();

        Ok(Search {
            net,
            order,
            tails,
            heads,
            unassigned_out_cap,
            unassigned_in_cap,
            unassigned_out_free,
            unassigned_in_free,
            surplus,
            free_bound,
            tail_inflow_final,
            values: vec![0; net.arcs.len()],
            count: Int::zero(),
            collect: limit.map(|l| (l, Vec::new())),
            truncated: false,
        })
    }

    /// Node-local feasibility: the remaining unassigned arcs at each node
    /// must be able to absorb the current surplus. Uncapacitated arcs
    /// count as unbounded, so only their absence gives a bound.
    fn viable(&self) -> bool {
        for v in 0..self.net.nodes.len() {
            let s = self.surplus[v];
            if s < 0 && self.unassigned_out_free[v] == 0 && -s > self.unassigned_out_cap[v] {
                return false;
            }
            if s > 0 && self.unassigned_in_free[v] == 0 && s > self.unassigned_in_cap[v] {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) {
        if self.truncated {
            return;
        }
        if depth == self.order.len() {
            if self.surplus.iter().all(|&s| s == 0) {
                self.count += 1;
                if let Some((limit, flows)) = self.collect.as_mut() {
                    if flows.len() < *limit {
                        flows.push(FlowAssignment { values: self.values.clone() });
                    } else {
                        self.truncated = true;
                    }
                }
            }
            return;
        }
        let arc = self.order[depth];
        let (t, h) = (self.tails[arc], self.heads[arc]);
        let cap = self.net.arcs[arc].capacity.map(|c| c as i128);

        match cap {
            Some(c) => {
                self.unassigned_out_cap[t] -= c;
                self.unassigned_in_cap[h] -= c;
            }
            None => {
                self.unassigned_out_free[t] -= 1;
                self.unassigned_in_free[h] -= 1;
            }
        }

        let mut max_value = cap.unwrap_or(self.free_bound);
        if self.tail_inflow_final[depth] {
            // Inflow at the tail is settled, so the remaining out-arcs
            // must deliver exactly -surplus; this arc can take no more.
            max_value = max_value.min(-self.surplus[t]);
        }
        // An inclusive range with a negative upper end is empty, which
        // prunes the branch.
        for x in 0..=max_value {
            self.values[arc] = x as u64;
            self.surplus[t] += x;
            self.surplus[h] -= x;
            if self.viable() {
                self.dfs(depth + 1);
            }
            self.surplus[t] -= x;
            self.surplus[h] += x;
            if self.truncated {
                break;
            }
        }
        self.values[arc] = 0;

        match cap {
            Some(c) => {
                self.unassigned_out_cap[t] += c;
                self.unassigned_in_cap[h] += c;
            }
            None => {
                self.unassigned_out_free[t] += 1;
                self.unassigned_in_free[h] += 1;
            }
        }
    }
}

fn topo_try(net: &Network) -> Option<Vec<usize>> {
    // Local Kahn pass; ties by node order. Duplicated knowingly: the
    // oracle must not depend on the embedding code it cross-checks.
    let n = net.nodes.len();
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in &net.arcs {
        let t = net.node_index(&a.tail);
        let h = net.node_index(&a.head);
        indegree[h] += 1;
        out[t].push(h);
    }
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&next) = ready.iter().next() {
        ready.remove(&next);
        order.push(next);
        for &h in &out[next] {
            indegree[h] -= 1;
            if indegree[h] == 0 {
                ready.insert(h);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Exact number of integral feasible flows.
pub fn brute_count(net: &Network) -> Result<Int> {
    let mut search = Search::new(net, None)?;
    search.dfs(0);
    Ok(search.count)
}

/// Enumerate flows in lexicographic order of the DFS arc order, truncated
/// at `limit`.
pub fn brute_enumerate(net: &Network, limit: usize) -> Result<Enumeration> {
    let mut search = Search::new(net, Some(limit))?;
    search.dfs(0);
    let (_, flows) = search.collect.take().expect("collector present");
    Ok(Enumeration { flows, truncated: search.truncated })
}

/// Re-check an assignment against conservation and capacities, written
/// independently of the search so tests can cross-validate it.
pub fn check_assignment(net: &Network, flow: &FlowAssignment) -> bool {
    if flow.values.len() != net.arcs.len() {
        return false;
    }
    for (arc, &x) in net.arcs.iter().zip(&flow.values) {
        if let Some(cap) = arc.capacity {
            if x > cap {
                return false;
            }
        }
    }
    for node in &net.nodes {
        let mut balance: i128 = 0;
        for (arc, &x) in net.arcs.iter().zip(&flow.values) {
            if arc.tail == node.id {
                balance += x as i128;
            }
            if arc.head == node.id {
                balance -= x as i128;
            }
        }
        if balance != node.excess as i128 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{
        capacitated_example, complete_graph, pitman_stanley, with_excesses, Network, Node,
    };

    #[test]
    fn small_complete_graph_counts() {
        let net = with_excesses(complete_graph(3), &[1, 0, -1]).unwrap();
        assert_eq!(brute_count(&net).unwrap(), Int::from(2));
        let net = with_excesses(complete_graph(3), &[1, 1, -2]).unwrap();
        assert_eq!(brute_count(&net).unwrap(), Int::from(2));
    }

    #[test]
    fn pitman_stanley_example() {
        let net = with_excesses(pitman_stanley(3), &[2, 1, -3]).unwrap();
        assert_eq!(brute_count(&net).unwrap(), Int::from(9));
    }

    #[test]
    fn capacitated_cyclic_is_searched_directly() {
        // Node 1 must push 3 units but its only outgoing arc has capacity
        // 1, so the flow set is empty.
        assert_eq!(brute_count(&capacitated_example()).unwrap(), Int::from(0));
    }

    #[test]
    fn zero_excess_acyclic_has_the_zero_flow() {
        let net = with_excesses(complete_graph(3), &[0, 0, 0]).unwrap();
        let e = brute_enumerate(&net, 10).unwrap();
        assert_eq!(e.flows, vec![FlowAssignment { values: vec![0, 0, 0] }]);
        assert!(!e.truncated);
    }

    #[test]
    fn enumeration_matches_count_and_respects_limit() {
        let net = with_excesses(complete_graph(3), &[1, 0, -1]).unwrap();
        let full = brute_enumerate(&net, 100).unwrap();
        assert_eq!(full.flows.len(), 2);
        assert!(!full.truncated);
        for f in &full.flows {
            assert!(check_assignment(&net, f));
        }
        let cut = brute_enumerate(&net, 1).unwrap();
        assert_eq!(cut.flows.len(), 1);
        assert!(cut.truncated);
    }

    #[test]
    fn uncapacitated_cycle_is_an_error() {
        let net = Network::new(
            vec![
                Node { id: "1".into(), excess: 0 },
                Node { id: "2".into(), excess: 0 },
            ],
            vec![
                crate::network::Arc { tail: "1".into(), head: "2".into(), capacity: None },
                crate::network::Arc { tail: "2".into(), head: "1".into(), capacity: None },
            ],
        )
        .unwrap();
        assert!(matches!(brute_count(&net), Err(Error::InfiniteCount(_))));
    }

    #[test]
    fn mixed_cyclic_with_capacitated_cycle_is_finite() {
        // 1 -> 2 uncapacitated, 2 -> 1 capacitated: cycles must use the
        // capacitated arc, so the search is finite.
        let net = Network::new(
            vec![
                Node { id: "1".into(), excess: 1 },
                Node { id: "2".into(), excess: -1 },
            ],
            vec![
                crate::network::Arc { tail: "1".into(), head: "2".into(), capacity: None },
                crate::network::Arc { tail: "2".into(), head: "1".into(), capacity: Some(2) },
            ],
        )
        .unwrap();
        // x12 - x21 = 1 with x21 <= 2: x21 in {0,1,2}.
        assert_eq!(brute_count(&net).unwrap(), Int::from(3));
    }
}
