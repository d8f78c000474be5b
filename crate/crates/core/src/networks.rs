//! Bounded concentrators from bi-expanders, recursive
//! superconcentrators, and flow-based verification of both defining
//! properties.

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::metrics::{bi_expander_constant, scan_input_subsets};
use crate::num::Rat;
use rand::Rng;
use std::collections::BTreeSet;

/// Bounded concentrator: a bipartite graph on n inputs and theta*n
/// outputs in which every input set of size at most n/2 has at least
/// as many neighbours.
#[derive(Debug, Clone)]
pub struct Concentrator {
    pub graph: BipartiteGraph,
    pub n: usize,
    pub theta: Rat,
    /// Edges-per-input density bound.
    pub k_density: Rat,
    pub alpha: Rat,
}

/// Build an (n, r/(r+1), (k+1)r/(r+1), 1/2)-bounded concentrator from
/// an (m, k, c)-bi-expander with c >= 1/(r-1).  Inputs split into a
/// large part L (wired through the bi-expander) and a small part S
/// whose vertex i is wired to all of the i-th output block of size r.
pub fn build_bounded_concentrator(b: &BipartiteGraph, r: usize) -> Result<Concentrator> {
    if r < 2 {
        return Err(Error::Precondition(format!("need r >= 2, got {r}")));
    }
    let m = b.n_inputs();
    if m != b.n_outputs() {
        return Err(Error::PartMismatch { n_inputs: m, n_outputs: b.n_outputs() });
    }
    let k = b
        .regular_degree()
        .ok_or_else(|| Error::Precondition("bi-expander must be regular".into()))?;
    if m % r != 0 {
        return Err(Error::Precondition(format!("r = {r} must divide m = {m}")));
    }
    let needed = Rat::new(1, r as i64 - 1);
    let got = bi_expander_constant(b)?.constant;
    if got < needed {
        return Err(Error::InsufficientExpansion {
            got: got.to_string(),
            needed: needed.to_string(),
        });
    }

    let small = m / r;
    let n = m + small;
    // Inputs: 0..m is L, m..m+small is S.  Outputs: 0..m in blocks of r.
    let mut edges = b.edges();
    for i in 0..small {
        for j in 0..r {
            edges.push((m + i, i * r + j));
        }
    }
    let graph = BipartiteGraph::new(n, m, &edges)?;
    debug_assert_eq!(graph.edge_count(), (k + 1) * m);
    Ok(Concentrator {
        graph,
        n,
        theta: Rat::new(r as i64, r as i64 + 1),
        k_density: Rat::new((k as i64 + 1) * r as i64, r as i64 + 1),
        alpha: Rat::new(1, 2),
    })
}

/// Outcome of a concentrator check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConcentratorCheck {
    Verified { subsets_checked: u64 },
    Violator(Vec<usize>),
}

/// Exhaustively check |boundary(A)| >= |A| for every input set of size
/// at most n/2.  Input count capped at 24.
pub fn verify_concentrator(c: &Concentrator) -> Result<ConcentratorCheck> {
    let n = c.graph.n_inputs();
    if n > 24 {
        return Err(Error::TooLarge { n, max: 24 });
    }
    // Track the smallest violator so single bad inputs surface as
    // singletons.
    let mut violator: Option<(usize, u32)> = None;
    let mut checked = 0u64;
    scan_input_subsets(&c.graph, |mask, size, boundary| {
        if 2 * size <= n {
            checked += 1;
            if boundary < size && violator.is_none_or(|(s, m)| (size, mask) < (s, m)) {
                violator = Some((size, mask));
            }
        }
    });
    Ok(match violator {
        Some((_, mask)) => {
            ConcentratorCheck::Violator((0..n).filter(|&i| mask & (1 << i) != 0).collect())
        }
        None => ConcentratorCheck::Verified { subsets_checked: checked },
    })
}

/// Sampled concentrator check for inputs too large to scan: each
/// sampled input set A is tested for Hall deficiency by a maximum
/// matching on its induced subgraph, which certifies every subset of A
/// at once; a deficient sample yields a genuine violator inside it.
pub fn verify_concentrator_sampled(
    c: &Concentrator,
    samples: u64,
    rng: &mut impl Rng,
) -> ConcentratorCheck {
    let n = c.graph.n_inputs();
    for _ in 0..samples {
        let size = rng.gen_range(1..=n / 2);
        let mut a = BTreeSet::new();
        while a.len() < size {
            a.insert(rng.gen_range(0..n));
        }
        let picked: Vec<usize> = a.iter().copied().collect();
        let edges: Vec<(usize, usize)> = picked
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| c.graph.input_neighbors(u).map(move |v| (i, v)))
            .collect();
        let induced = BipartiteGraph::new(picked.len(), c.graph.n_outputs(), &edges)
            .expect("induced subgraph valid");
        if let Some(violator) = crate::matching::hall_violator(&induced) {
            return ConcentratorCheck::Violator(violator.into_iter().map(|i| picked[i]).collect());
        }
    }
    ConcentratorCheck::Verified { subsets_checked: samples }
}

/// Directed acyclic superconcentrator network.
#[derive(Debug, Clone)]
pub struct SuperconcentratorDag {
    vertex_count: usize,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    /// Named layers of directed edges, in construction order.
    layers: Vec<(String, Vec<(usize, usize)>)>,
}

impl SuperconcentratorDag {
    pub fn n(&self) -> usize {
        self.inputs.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn layers(&self) -> &[(String, Vec<(usize, usize)>)] {
        &self.layers
    }

    pub fn edge_count(&self) -> usize {
        self.layers.iter().map(|(_, e)| e.len()).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.layers.iter().flat_map(|(_, e)| e.iter().copied())
    }

    /// Serialize as layer sections with directed edge lists.
    pub fn serialize(&self) -> String {
        let mut out = format!("dag {} {}\n", self.vertex_count, self.n());
        out.push_str("inputs");
        for &v in &self.inputs {
            out.push_str(&format!(" {v}"));
        }
        out.push_str("\noutputs");
        for &v in &self.outputs {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for (name, edges) in &self.layers {
            out.push_str(&format!("layer {} {}\n", name, edges.len()));
            for &(u, v) in edges {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, head) = lines.next().ok_or_else(|| parse_err(0, "empty input".into()))?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "dag" {
            return Err(parse_err(ln, format!("expected 'dag <vertices> <n>', got {head:?}")));
        }
        let vertex_count: usize =
            fields[1].parse().map_err(|_| parse_err(ln, "bad vertex count".into()))?;
        let mut read_list = |expect: &str| -> Result<Vec<usize>> {
            let (ln, line) =
                lines.next().ok_or_else(|| parse_err(0, format!("missing {expect} line")))?;
            let mut it = line.split_whitespace();
            if it.next() != Some(expect) {
                return Err(parse_err(ln, format!("expected '{expect} ...'")));
            }
            it.map(|s| s.parse().map_err(|_| parse_err(ln, format!("bad vertex {s:?}")))).collect()
        };
        let inputs = read_list("inputs")?;
        let outputs = read_list("outputs")?;
        type PartialLayer = (String, usize, Vec<(usize, usize)>);
        let mut layers = Vec::new();
        let mut current: Option<PartialLayer> = None;
        for (ln, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "layer" {
                if let Some((name, want, edges)) = current.take() {
                    if edges.len() != want {
                        return Err(parse_err(ln, format!("layer {name} edge count mismatch")));
                    }
                    layers.push((name, edges));
                }
                if fields.len() != 3 {
                    return Err(parse_err(ln, "expected 'layer <name> <edges>'".into()));
                }
                let want: usize =
                    fields[2].parse().map_err(|_| parse_err(ln, "bad edge count".into()))?;
                current = Some((fields[1].to_string(), want, Vec::new()));
            } else {
                let (name, _, edges) = current
                    .as_mut()
                    .ok_or_else(|| parse_err(ln, "edge before any layer".into()))?;
                if fields.len() != 2 {
                    return Err(parse_err(ln, format!("expected 'u v' in layer {name}")));
                }
                let u: usize = fields[0].parse().map_err(|_| parse_err(ln, "bad vertex".into()))?;
                let v: usize = fields[1].parse().map_err(|_| parse_err(ln, "bad vertex".into()))?;
                if u >= vertex_count || v >= vertex_count {
                    return Err(parse_err(ln, format!("vertex out of range in {line:?}")));
                }
                edges.push((u, v));
            }
        }
        if let Some((name, want, edges)) = current.take() {
            if edges.len() != want {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("layer {name} edge count mismatch"),
                });
            }
            layers.push((name, edges));
        }
        Ok(SuperconcentratorDag { vertex_count, inputs, outputs, layers })
    }
}

/// Supplies the bounded concentrator used at each recursion level.
pub trait ConcentratorSupplier {
    /// A concentrator with `n` inputs and `n r/(r+1)` outputs.
    fn concentrator(&mut self, n: usize, r: usize) -> Result<Concentrator>;
}

/// Default supplier: wires the large part through a complete bipartite
/// graph K_{m,m}, which is an (m, m, 1)-bi-expander, so the expansion
/// precondition holds for every r >= 2.
pub struct CompleteBipartiteSupplier;

impl ConcentratorSupplier for CompleteBipartiteSupplier {
    fn concentrator(&mut self, n: usize, r: usize) -> Result<Concentrator> {
        if n % (r + 1) != 0 {
            return Err(Error::Precondition(format!("(r+1) = {} must divide n = {n}", r + 1)));
        }
        let m = n * r / (r + 1);
        build_bounded_concentrator(&BipartiteGraph::complete(m, m), r)
    }
}

/// Density fixed point of the recursion: l = (2k+3)r + 1 keeps the
/// edge budget per vertex unchanged across levels.
pub fn density_fixed_point(k: usize, r: usize) -> usize {
    (2 * k + 3) * r + 1
}

/// Recursive superconcentrator: inputs feed a concentrator into a
/// smaller superconcentrator whose outputs feed the mirror
/// concentrator, plus a perfect matching straight from inputs to
/// outputs.  Sizes at or below `base_limit` use the complete bipartite
/// base case.  Inputs and outputs are paired by index.
pub fn build_superconcentrator(
    n: usize,
    r: usize,
    base_limit: usize,
    supplier: &mut dyn ConcentratorSupplier,
) -> Result<SuperconcentratorDag> {
    if n == 0 || r < 2 || base_limit == 0 {
        return Err(Error::Precondition("need n >= 1, r >= 2 and a positive base size".into()));
    }
    let mut dag = SuperconcentratorDag {
        vertex_count: 0,
        inputs: Vec::new(),
        outputs: Vec::new(),
        layers: Vec::new(),
    };
    let (inputs, outputs) = build_level(n, r, base_limit, supplier, &mut dag, 0)?;
    dag.inputs = inputs;
    dag.outputs = outputs;
    Ok(dag)
}

fn build_level(
    n: usize,
    r: usize,
    base_limit: usize,
    supplier: &mut dyn ConcentratorSupplier,
    dag: &mut SuperconcentratorDag,
    depth: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    fn alloc(dag: &mut SuperconcentratorDag, count: usize) -> Vec<usize> {
        let base = dag.vertex_count;
        dag.vertex_count += count;
        (base..base + count).collect()
    }
    if n <= base_limit {
        let inputs = alloc(dag, n);
        let outputs = alloc(dag, n);
        let edges = inputs.iter().flat_map(|&u| outputs.iter().map(move |&v| (u, v))).collect();
        dag.layers.push((format!("base-K{n}x{n}-depth{depth}"), edges));
        return Ok((inputs, outputs));
    }
    if n % (r + 1) != 0 {
        return Err(Error::Precondition(format!(
            "level size {n} not divisible by r+1 = {}",
            r + 1
        )));
    }
    let m = n * r / (r + 1);
    let conc = supplier.concentrator(n, r)?;
    if conc.graph.n_inputs() != n || conc.graph.n_outputs() != m {
        return Err(Error::Precondition(format!(
            "supplier returned a {}x{} concentrator for level {n}->{m}",
            conc.graph.n_inputs(),
            conc.graph.n_outputs()
        )));
    }

    // The recursive superconcentrator's own terminals serve as I' and
    // O'; the concentrators wire straight into them.
    let inputs = alloc(dag, n);
    let (sub_in, sub_out) = build_level(m, r, base_limit, supplier, dag, depth + 1)?;
    let in_edges: Vec<_> =
        conc.graph.edges().iter().map(|&(u, v)| (inputs[u], sub_in[v])).collect();
    dag.layers.push((format!("concentrate-in-depth{depth}"), in_edges));

    let outputs = alloc(dag, n);
    let out_edges: Vec<_> =
        conc.graph.edges().iter().map(|&(u, v)| (sub_out[v], outputs[u])).collect();
    dag.layers.push((format!("concentrate-out-depth{depth}"), out_edges));

    let matching: Vec<_> = inputs.iter().zip(&outputs).map(|(&a, &b)| (a, b)).collect();
    dag.layers.push((format!("io-matching-depth{depth}"), matching));

    Ok((inputs, outputs))
}

/// Unit-vertex-capacity max-flow network over a directed graph: every
/// vertex is split into in/out halves joined by a capacity-one arc, so
/// flow value counts vertex-disjoint paths.
pub struct VertexFlowNetwork {
    // Arc arrays; arc i^1 is the residual of arc i.
    to: Vec<usize>,
    cap: Vec<u8>,
    head: Vec<Vec<u32>>,
    node_count: usize,
    source: usize,
    sink: usize,
    base_arcs: usize,
}

impl VertexFlowNetwork {
    /// `n` vertices and directed edges; vertex v becomes in-node 2v and
    /// out-node 2v+1.  Two extra nodes serve as super-source/sink.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let node_count = 2 * n + 2;
        let mut net = VertexFlowNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); node_count],
            node_count,
            source: 2 * n,
            sink: 2 * n + 1,
            base_arcs: 0,
        };
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in edges {
            net.add_arc(2 * u + 1, 2 * v, 1);
        }
        net.base_arcs = net.to.len();
        net
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u8) {
        self.head[u].push(self.to.len() as u32);
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(self.to.len() as u32);
        self.to.push(u);
        self.cap.push(0);
    }

    /// Max flow from `sources` to `sinks` as vertex sets, resetting any
    /// previous run.  Sources and sinks carry capacity one themselves.
    pub fn max_flow(&mut self, sources: &[usize], sinks: &[usize]) -> usize {
        // Reset capacities and drop the previous terminals' arcs.
        self.to.truncate(self.base_arcs);
        self.cap.truncate(self.base_arcs);
        for i in 0..self.base_arcs {
            self.cap[i] = if i % 2 == 0 { 1 } else { 0 };
        }
        self.head[self.source].clear();
        self.head[self.sink].clear();
        for h in self.head.iter_mut() {
            h.retain(|&a| (a as usize) < self.base_arcs);
        }
        let (source, sink) = (self.source, self.sink);
        for &s in sources {
            self.add_arc(source, 2 * s, 1);
        }
        for &t in sinks {
            self.add_arc(2 * t + 1, sink, 1);
        }

        // BFS augmentation; with unit capacities every augmenting path
        // is worth exactly one.
        let mut flow = 0;
        let mut parent_arc = vec![u32::MAX; self.node_count];
        loop {
            for p in parent_arc.iter_mut() {
                *p = u32::MAX;
            }
            let mut queue = std::collections::VecDeque::from([source]);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.head[u] {
                    let (a, v) = (a as usize, self.to[a as usize]);
                    if self.cap[a] > 0 && parent_arc[v] == u32::MAX && v != source {
                        parent_arc[v] = a as u32;
                        if v == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !reached {
                return flow;
            }
            let mut v = sink;
            while v != source {
                let a = parent_arc[v] as usize;
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
    }
}

/// Outcome of a superconcentrator check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuperconcentratorCheck {
    Verified {
        pairs_checked: u64,
        exhaustive: bool,
    },
    /// Input set, output set, and the flow found (below their size).
    Counterexample {
        a: Vec<usize>,
        b: Vec<usize>,
        flow: usize,
    },
}

/// Verify that every pair of equal-size input/output subsets is joined
/// by that many vertex-disjoint paths, via max-flow.  Exhaustive when
/// the total pair count fits `budget`, otherwise `samples` random
/// pairs are drawn from `rng`.
pub fn verify_superconcentrator(
    dag: &SuperconcentratorDag,
    budget: u64,
    samples: u64,
    rng: &mut impl Rng,
) -> SuperconcentratorCheck {
    let n = dag.n();
    let mut net = VertexFlowNetwork::new(dag.vertex_count, dag.edges());

    let total_pairs: u64 = (1..=n)
        .map(|r| {
            let c = binomial(n as u64, r as u64);
            c.saturating_mul(c)
        })
        .fold(0u64, |acc, x| acc.saturating_add(x));

    if total_pairs <= budget {
        let mut checked = 0u64;
        for r in 1..=n {
            let mut a_sel = first_combination(r);
            loop {
                let a: Vec<usize> = a_sel.iter().map(|&i| dag.inputs[i]).collect();
                let mut b_sel = first_combination(r);
                loop {
                    let b: Vec<usize> = b_sel.iter().map(|&i| dag.outputs[i]).collect();
                    let flow = net.max_flow(&a, &b);
                    checked += 1;
                    if flow < r {
                        return SuperconcentratorCheck::Counterexample { a, b, flow };
                    }
                    if !next_combination(&mut b_sel, n) {
                        break;
                    }
                }
                if !next_combination(&mut a_sel, n) {
                    break;
                }
            }
        }
        SuperconcentratorCheck::Verified { pairs_checked: checked, exhaustive: true }
    } else {
        for _ in 0..samples {
            let r = rng.gen_range(1..=n);
            let a: Vec<usize> =
                rand::seq::index::sample(rng, n, r).iter().map(|i| dag.inputs[i]).collect();
            let b: Vec<usize> =
                rand::seq::index::sample(rng, n, r).iter().map(|i| dag.outputs[i]).collect();
            let flow = net.max_flow(&a, &b);
            if flow < r {
                return SuperconcentratorCheck::Counterexample { a, b, flow };
            }
        }
        SuperconcentratorCheck::Verified { pairs_checked: samples, exhaustive: false }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn first_combination(r: usize) -> Vec<usize> {
    (0..r).collect()
}

/// Advance `sel` to the next r-combination of 0..n; false when done.
fn next_combination(sel: &mut [usize], n: usize) -> bool {
    let r = sel.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if sel[i] < n - r + i {
            sel[i] += 1;
            for j in i + 1..r {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
