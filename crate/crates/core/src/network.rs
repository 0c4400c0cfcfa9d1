//! Network data model and graph-level transformations.
//!
//! A network is a directed multigraph with integer node excesses and
//! optional positive arc capacities. Counting works on acyclic
//! uncapacitated networks embedded into a root-system multiplicity
//! representation; capacitated or cyclic networks are first rewritten by
//! [`reduce_to_acyclic`], which replaces each capacitated arc by a fresh
//! node with two outgoing arcs and keeps integral flows in bijection.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A directed arc. `capacity: None` means uncapacitated; parallel arcs are
/// represented by repeated entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub tail: String,
    pub head: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub excess: i64,
}

/// Directed multigraph with excesses and optional capacities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Network {
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
}

/// Validation report; diagnostic only, nothing here is fatal by itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub zero_sum: bool,
    pub connected: bool,
    pub acyclic: bool,
    pub capacitated: bool,
}

/// How an original arc maps into the reduced network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcImage {
    /// The arc was kept as-is at this index.
    Unchanged(usize),
    /// The arc was split: `forward` carries the original flow value x,
    /// `complement` carries capacity - x.
    Split { forward: usize, complement: usize },
}

impl Network {
    pub fn new(nodes: Vec<Node>, arcs: Vec<Arc>) -> Result<Self> {
        let net = Network { nodes, arcs };
        let mut seen = HashMap::new();
        for (i, node) in net.nodes.iter().enumerate() {
            if seen.insert(node.id.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate node id `{}`",
                    node.id
                )));
            }
        }
        for arc in &net.arcs {
            if arc.tail == arc.head {
                return Err(Error::InvalidInput(format!(
                    "self-loop at node `{}`",
                    arc.tail
                )));
            }
            for end in [&arc.tail, &arc.head] {
                if !seen.contains_key(end) {
                    return Err(Error::InvalidInput(format!("unknown node id `{end}`")));
                }
            }
            if arc.capacity == Some(0) {
                return Err(Error::InvalidInput(format!(
                    "arc {}->{} has zero capacity",
                    arc.tail, arc.head
                )));
            }
        }
        Ok(net)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let net: Network = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("network JSON: {e}")))?;
        Network::new(net.nodes, net.arcs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialization cannot fail")
    }

    pub fn node_index(&self, id: &str) -> usize {
        self.nodes
            .iter()
            .position(|n| n.id == id)
            .expect("validated node id")
    }

    fn arc_indices(&self) -> Vec<(usize, usize)> {
        self.arcs
            .iter()
            .map(|a| (self.node_index(&a.tail), self.node_index(&a.head)))
            .collect()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.nodes.iter().map(|n| n.excess as i128).sum::<i128>() == 0
    }

    pub fn is_capacitated(&self) -> bool {
        self.arcs.iter().any(|a| a.capacity.is_some())
    }

    pub fn is_fully_capacitated(&self) -> bool {
        self.arcs.iter().all(|a| a.capacity.is_some())
    }

    /// True when the directed graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        topological_order(self.nodes.len(), &self.arc_indices()).is_some()
    }

    /// True when the underlying undirected graph is connected (single
    /// nodes are connected; so is the empty network).
    pub fn is_connected(&self) -> bool {
        component_labels(self).iter().all(|&c| c == 0)
    }
}

/// Kahn's algorithm; ties broken by original node order so relabelings
/// are deterministic. Returns node indices in topological order, or None
/// on a directed cycle.
fn topological_order(n: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in arcs {
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

fn component_labels(net: &Network) -> Vec<usize> {
    let n = net.nodes.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, h) in net.arc_indices() {
        adjacency[t].push(h);
        adjacency[h].push(t);
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        label[start] = next;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if label[w] == usize::MAX {
                    label[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Report structural facts about a network.
pub fn validate(net: &Network) -> Diagnostics {
    Diagnostics {
        zero_sum: net.is_zero_sum(),
        connected: net.is_connected(),
        acyclic: net.is_acyclic(),
        capacitated: net.is_capacitated(),
    }
}

/// Rewrite a network into acyclic uncapacitated form, preserving the set
/// of integral flows up to bijection.
///
/// Each capacitated arc f = (i -> j, cap c) becomes a fresh node with
/// excess c and two outgoing arcs f1 = f -> j (carrying x_f) and
/// f2 = f -> i (carrying c - x_f); node i loses the capacities of its
/// outgoing capacitated arcs: b_i - sum of cap(f) over tail(f) = i.
///
/// Acyclic uncapacitated networks pass through unchanged. A cyclic
/// network with any uncapacitated arc is rejected: its flow set need not
/// be finite and the rewrite does not apply.
pub fn reduce_to_acyclic(net: &Network) -> Result<(Network, Vec<ArcImage>)> {
    let acyclic = net.is_acyclic();
    if acyclic && !net.is_capacitated() {
        let map = (0..net.arcs.len()).map(ArcImage::Unchanged).collect();
        return Ok((net.clone(), map));
    }
    if !acyclic && !net.is_fully_capacitated() {
        return Err(Error::Unreducible(
            "cyclic network with uncapacitated arcs".into(),
        ));
    }

    let mut nodes: Vec<Node> = net.nodes.clone();
    let mut used_ids: std::collections::HashSet<String> =
        nodes.iter().map(|n| n.id.clone()).collect();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut images: Vec<ArcImage> = Vec::new();

    // Uncapacitated arcs (acyclic case only) pass through first.
    for arc in &net.arcs {
        if arc.capacity.is_none() {
            images.push(ArcImage::Unchanged(arcs.len()));
            arcs.push(arc.clone());
        } else {
            images.push(ArcImage::Unchanged(usize::MAX)); // patched below
        }
    }
    for (idx, arc) in net.arcs.iter().enumerate() {
        let Some(cap) = arc.capacity else { continue };
        let excess = i64::try_from(cap)
            .map_err(|_| Error::InvalidInput(format!("capacity {cap} too large")))?;
        let mut id = format!("f{}", idx + 1);
        while used_ids.contains(&id) {
            id.push('\'');
        }
        used_ids.insert(id.clone());
        nodes.push(Node { id: id.clone(), excess });
        let tail_pos = net.node_index(&arc.tail);
        nodes[tail_pos].excess = nodes[tail_pos]
            .excess
            .checked_sub(excess)
            .ok_or_else(|| Error::InvalidInput("excess overflow during reduction".into()))?;
        let forward = arcs.len();
        arcs.push(Arc { tail: id.clone(), head: arc.head.clone(), capacity: None });
        let complement = arcs.len();
        arcs.push(Arc { tail: id, head: arc.tail.clone(), capacity: None });
        images[idx] = ArcImage::Split { forward, complement };
    }

    let reduced = Network::new(nodes, arcs)?;
    debug_assert!(reduced.is_acyclic(), "reduction output must be acyclic");
    Ok((reduced, images))
}

/// Split into weakly-connected components with their induced excesses.
/// Flow counts multiply across components.
pub fn components(net: &Network) -> Vec<Network> {
    let labels = component_labels(net);
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let nodes: Vec<Node> = net
            .nodes
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == c)
            .map(|(n, _)| n.clone())
            .collect();
        let ids: std::collections::HashSet<&str> =
            nodes.iter().map(|n| n.id.as_str()).collect();
        let arcs: Vec<Arc> = net
            .arcs
            .iter()
            .filter(|a| ids.contains(a.tail.as_str()))
            .cloned()
            .collect();
        out.push(Network { nodes, arcs });
    }
    out
}

/// Root-system multiplicity representation of an acyclic uncapacitated
/// network: arc i -> j (after relabeling, i < j) appears `mult[i][j]`
/// times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootConfiguration {
    r: usize,
    /// Upper-triangular multiplicities, 0-based over r+1 node labels.
    mult: Vec<Vec<u32>>,
    n_arcs: usize,
    /// t[j] = (number of arcs out of node j) - 1, for j in 0..r.
    t: Vec<i64>,
    max_mult: u32,
}

impl RootConfiguration {
    /// Build from an explicit multiplicity matrix over `nodes` labels.
    pub fn from_multiplicities(nodes: usize, mult: Vec<Vec<u32>>) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidInput("configuration needs a node".into()));
        }
        if mult.len() != nodes || mult.iter().any(|row| row.len() != nodes) {
            return Err(Error::InvalidInput("multiplicity matrix shape".into()));
        }
        for i in 0..nodes {
            for j in 0..=i {
                if mult[i][j] != 0 {
                    return Err(Error::InvalidInput(
                        "multiplicities must be strictly upper triangular".into(),
                    ));
                }
            }
        }
        let r = nodes - 1;
        let n_arcs = mult.iter().flatten().map(|&m| m as usize).sum();
        let t: Vec<i64> = (0..r)
            .map(|j| mult[j].iter().map(|&m| m as i64).sum::<i64>() - 1)
            .collect();
        let max_mult = mult.iter().flatten().copied().max().unwrap_or(0);
        let cfg = RootConfiguration { r, mult, n_arcs, t, max_mult };
        if nodes > 1 && !cfg.support_connected() {
            return Err(Error::InvalidInput(
                "configuration does not span: support graph disconnected".into(),
            ));
        }
        Ok(cfg)
    }

    fn support_connected(&self) -> bool {
        let n = self.r + 1;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let (a, b) = (v.min(w), v.max(w));
                if a != b && self.mult[a][b] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn node_count(&self) -> usize {
        self.r + 1
    }

    pub fn arc_count(&self) -> usize {
        self.n_arcs
    }

    /// Multiplicity of arc i -> j (0-based, i < j).
    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }

    pub fn t(&self) -> &[i64] {
        &self.t
    }

    pub fn max_mult(&self) -> u32 {
        self.max_mult
    }

    /// Sum of all configuration vectors, one coordinate per node: out
    /// multiplicity minus in multiplicity.
    pub fn column_sum(&self) -> Vec<i64> {
        let n = self.r + 1;
        let mut out = vec![0i64; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let m = self.mult[i][j] as i64;
                out[i] += m;
                out[j] -= m;
            }
        }
        out
    }

    /// Distinct configuration vectors as integer vectors in R^r (the last
    /// coordinate is dropped; it is minus the sum of the others).
    pub fn delta_plus(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for i in 0..=self.r {
            for j in (i + 1)..=self.r {
                if self.mult[i][j] == 0 {
                    continue;
                }
                let mut v = vec![0i64; self.r];
                if i < self.r {
                    v[i] = 1;
                }
                if j < self.r {
                    v[j] = -1;
                }
                out.push(v);
            }
        }
        out
    }

    /// Complete graph on `n` nodes, every arc multiplicity 1.
    pub fn complete(n: usize) -> Self {
        let mut mult = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                mult[i][j] = 1;
            }
        }
        RootConfiguration::from_multiplicities(n, mult).expect("complete graph is valid")
    }

    /// Complete bipartite graph: `m` row nodes before `n` column nodes,
    /// arcs from every row to every column.
    pub fn bipartite(m: usize, n: usize) -> Self {
        let total = m + n;
        let mut mult = vec![vec![0u32; total]; total];
        for i in 0..m {
            for j in m..total {
                mult[i][j] = 1;
            }
        }
        RootConfiguration::from_multiplicities(total, mult).expect("bipartite graph is valid")
    }
}

/// Integer excess vector over the configuration's nodes; entries sum to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcessVector(Vec<i64>);

impl ExcessVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let sum: i128 = entries.iter().map(|&v| v as i128).sum();
        if sum != 0 {
            return Err(Error::InvalidInput(format!(
                "excesses sum to {sum}, expected 0"
            )));
        }
        Ok(ExcessVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Embed an acyclic uncapacitated connected network into a
/// RootConfiguration: relabel nodes topologically (ties by input order)
/// so every arc goes from a lower to a higher label, then record arc
/// multiplicities.
///
/// Returns the configuration, the excess vector in relabeled order, and
/// the relabeling (new position -> original node index).
pub fn embed(net: &Network) -> Result<(RootConfiguration, ExcessVector, Vec<usize>)> {
    if net.is_capacitated() {
        return Err(Error::InvalidInput(
            "embed requires an uncapacitated network".into(),
        ));
    }
    if !net.is_connected() {
        return Err(Error::InvalidInput("embed requires a connected network".into()));
    }
    if !net.is_zero_sum() {
        return Err(Error::InvalidInput("embed requires zero-sum excesses".into()));
    }
    let arcs = net.arc_indices();
    let order = topological_order(net.nodes.len(), &arcs)
        .ok_or_else(|| Error::InvalidInput("embed requires an acyclic network".into()))?;
    let mut position = vec![0usize; net.nodes.len()];
    for (pos, &orig) in order.iter().enumerate() {
        position[orig] = pos;
    }
    let n = net.nodes.len();
    let mut mult = vec![vec![0u32; n]; n];
    for &(t, h) in &arcs {
        let (a, b) = (position[t], position[h]);
        debug_assert!(a < b, "topological relabeling must orient arcs upward");
        mult[a][b] += 1;
    }
    let cfg = RootConfiguration::from_multiplicities(n, mult)?;
    let excess = ExcessVector::new(order.iter().map(|&i| net.nodes[i].excess).collect())?;
    Ok((cfg, excess, order))
}

fn skeleton(n: usize, arcs: Vec<(usize, usize)>) -> Network {
    let nodes = (1..=n)
        .map(|i| Node { id: i.to_string(), excess: 0 })
        .collect();
    let arcs = arcs
        .into_iter()
        .map(|(t, h)| Arc {
            tail: (t + 1).to_string(),
            head: (h + 1).to_string(),
            capacity: None,
        })
        .collect();
    Network { nodes, arcs }
}

/// Complete graph on nodes 1..n, arcs oriented low to high. Excesses are
/// zero; callers fill them in.
pub fn complete_graph(n: usize) -> Network {
    assert!(n >= 2, "complete graph needs at least two nodes");
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            arcs.push((i, j));
        }
    }
    skeleton(n, arcs)
}

/// Complete bipartite graph with `m` row nodes before `n` column nodes.
pub fn transportation(m: usize, n: usize) -> Network {
    assert!(m >= 1 && n >= 1, "transportation needs nodes on both sides");
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in 0..n {
            arcs.push((i, m + j));
        }
    }
    skeleton(m + n, arcs)
}

/// Path graph with chords to the last node; the final edge {n-1, n} has
/// multiplicity two. All arcs oriented low to high.
pub fn pitman_stanley(n: usize) -> Network {
    assert!(n >= 2, "pitman_stanley needs at least two nodes");
    let mut arcs = Vec::new();
    for i in 0..(n - 1) {
        arcs.push((i, i + 1));
    }
    for i in 0..(n - 1) {
        arcs.push((i, n - 1));
    }
    skeleton(n, arcs)
}

/// Attach excesses to a skeleton in node order.
pub fn with_excesses(mut net: Network, excesses: &[i64]) -> Result<Network> {
    if excesses.len() != net.nodes.len() {
        return Err(Error::InvalidInput(format!(
            "{} excesses for {} nodes",
            excesses.len(),
            net.nodes.len()
        )));
    }
    for (node, &e) in net.nodes.iter_mut().zip(excesses) {
        node.excess = e;
    }
    Ok(net)
}

/// The worked capacitated example: three nodes with excesses (3, -2, -1)
/// and four capacitated arcs forming a directed cycle.
pub fn capacitated_example() -> Network {
    Network::new(
        vec![
            Node { id: "1".into(), excess: 3 },
            Node { id: "2".into(), excess: -2 },
            Node { id: "3".into(), excess: -1 },
        ],
        vec![
            Arc { tail: "1".into(), head: "3".into(), capacity: Some(1) },
            Arc { tail: "2".into(), head: "1".into(), capacity: Some(1) },
            Arc { tail: "3".into(), head: "2".into(), capacity: Some(2) },
            Arc { tail: "2".into(), head: "3".into(), capacity: Some(1) },
        ],
    )
    .expect("example network is well formed")
}

/// Map from node id to excess, for assertions on reduced networks.
pub fn excess_map(net: &Network) -> BTreeMap<String, i64> {
    net.nodes
        .iter()
        .map(|n| (n.id.clone(), n.excess))
        .collect()
}
