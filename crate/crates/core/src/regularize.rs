//! Making bounded-degree graphs regular: circulant and almost-regular
//! constructions, k-regularization by adding at most k+2 vertices,
//! degree raising through Hamiltonian cycles of the complement, and
//! the expansion bookkeeping for regularized expander families.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::num::{rat_ceil, Rat};

/// What `make_k_regular` did.
#[derive(Debug, Clone)]
pub struct RegularizationReport {
    pub output: Graph,
    pub added_vertices: usize,
    pub added_edges: usize,
    /// Set by explicit subgraph verification, not by construction.
    pub contains_input: bool,
}

/// k-regular graph on n vertices arranged on a circle; exists iff nk
/// is even.  Hamiltonian when k > 1.  For even k < n-1 the complement
/// contains a matching of size floor(n/2).
pub fn circulant_regular(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    if n * k % 2 != 0 {
        return Err(Error::Existence(format!("no {k}-regular graph on {n} vertices: nk odd")));
    }
    let mut edges = Vec::new();
    let half = k / 2;
    for v in 0..n {
        for d in 1..=half {
            edges.push((v, (v + d) % n));
        }
    }
    if k % 2 == 1 {
        // n is even here; add the antipodal perfect matching.
        for v in 0..n / 2 {
            edges.push((v, v + n / 2));
        }
    }
    let g = Graph::from_edges(n, &edges)?;
    debug_assert!(g.is_k_regular(k));
    Ok(g)
}

/// Matching of size floor(n/2) in the complement of the circulant:
/// pairs at circular distance floor(n/2), which is a non-edge whenever
/// k < n - 1.
fn complement_matching(n: usize) -> Vec<(usize, usize)> {
    (0..n / 2).map(|i| (i, i + n.div_ceil(2))).collect()
}

/// Graph on a+b vertices with exactly a vertices of degree k and b of
/// degree k-1; exists iff ak + b(k-1) is even.  Which vertices carry
/// which degree is unspecified; callers match them up by inspection.
pub fn almost_regular(a: usize, b: usize, k: usize) -> Result<Graph> {
    let n = a + b;
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 0 < k < a+b, got k={k}, n={n}")));
    }
    if (a * k + b * (k - 1)) % 2 != 0 {
        return Err(Error::Existence(format!(
            "no ({a},{b},{k})-almost-regular graph: degree sum odd"
        )));
    }
    if b == 0 {
        return circulant_regular(n, k);
    }
    if a == 0 {
        return if k == 1 { Ok(Graph::empty(n)) } else { circulant_regular(n, k - 1) };
    }
    if k == 1 {
        // a is even; match the first a vertices.
        let edges: Vec<_> = (0..a / 2).map(|i| (2 * i, 2 * i + 1)).collect();
        return Graph::from_edges(n, &edges);
    }
    if n * k % 2 == 0 {
        // Start k-regular and remove a matching from the Hamilton
        // cycle covering the last b vertices (b is even here).
        let g = circulant_regular(n, k)?;
        let removed: Vec<_> = (0..b / 2).map(|i| (a + 2 * i, a + 2 * i + 1)).collect();
        let keep: Vec<_> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !removed.contains(&(u, v)) && !removed.contains(&(v, u)))
            .collect();
        let out = Graph::from_edges(n, &keep)?;
        debug_assert_eq!(out.edge_count(), g.edge_count() - b / 2);
        Ok(out)
    } else {
        // nk odd: k-1 is even; start (k-1)-regular and add a matching
        // from the complement covering a vertices (a is even here).
        let g = circulant_regular(n, k - 1)?;
        let mut edges = g.edges();
        let pairs = complement_matching(n);
        assert!(a / 2 <= pairs.len());
        for &(u, v) in pairs.iter().take(a / 2) {
            debug_assert!(!g.has_edge(u, v));
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }
}

/// Saturate the deficient set to a clique, lowest-index pairs first.
fn saturate_deficient(g: &Graph, k: usize) -> Graph {
    let mut edges = g.edges();
    let mut h = g.clone();
    loop {
        let deficient: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) < k).collect();
        let mut added = None;
        'outer: for (i, &u) in deficient.iter().enumerate() {
            for &v in &deficient[i + 1..] {
                if !h.has_edge(u, v) {
                    added = Some((u, v));
                    break 'outer;
                }
            }
        }
        match added {
            Some(e) => {
                edges.push(e);
                h = Graph::from_edges(h.n(), &edges).expect("saturation edge valid");
            }
            None => return h,
        }
    }
}

/// Make `g` k-regular by adding edges and at most k+2 new vertices
/// (at most k+1 when k is even).  The input is contained as a
/// subgraph.  When `g` is connected the connected component containing
/// it is returned, which is itself k-regular.
pub fn make_k_regular(g: &Graph, k: usize) -> Result<RegularizationReport> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    if g.max_degree() > k {
        return Err(Error::Precondition(format!("max degree {} exceeds k = {k}", g.max_degree())));
    }
    if k == 0 {
        return Ok(RegularizationReport {
            output: g.clone(),
            added_vertices: 0,
            added_edges: 0,
            contains_input: true,
        });
    }

    let h = saturate_deficient(g, k);
    let deficient: Vec<usize> = (0..n).filter(|&v| h.degree(v) < k).collect();
    if deficient.is_empty() {
        let report = RegularizationReport {
            added_vertices: 0,
            added_edges: h.edge_count() - g.edge_count(),
            contains_input: h.contains_subgraph(g),
            output: h,
        };
        debug_assert!(report.output.is_k_regular(k));
        return Ok(report);
    }

    let deficiencies: Vec<usize> = deficient.iter().map(|&v| k - h.degree(v)).collect();
    let l: usize = deficiencies.iter().sum();
    let delta = *deficiencies.iter().max().unwrap();

    // Smallest m that the proposition's three conditions admit; k+1 or
    // k+2 always works, so the search is bounded.
    let mut chosen = None;
    for m in delta.max(1)..=(k + 2) {
        let q = l / m;
        if k > q && k - q < m && (n + m) * k % 2 == 0 {
            chosen = Some(m);
            break;
        }
    }
    let m = chosen.ok_or_else(|| {
        Error::Existence(format!("no admissible vertex count m for l={l}, k={k}"))
    })?;

    // Distribute the missing degree round-robin over the new vertices,
    // ordering the deficient set by increasing degree.
    let mut order: Vec<usize> = deficient.clone();
    order.sort_by_key(|&v| (h.degree(v), v));
    let mut edges = h.edges();
    let mut i = 0usize;
    for &v in &order {
        for _ in 0..(k - h.degree(v)) {
            edges.push((v, n + (i % m)));
            i += 1;
        }
    }
    debug_assert_eq!(i, l);
    let q = l / m;
    let r = l % m;

    // Overlay an almost-regular graph on the new vertices: the r that
    // received an extra distribution edge need k-q-1 more, the rest
    // need k-q.
    let need: Vec<usize> = (0..m).map(|j| if j < r { k - q - 1 } else { k - q }).collect();
    let overlay = almost_regular(m - r, r, k - q)?;
    // Map overlay vertices to new vertices with matching demand.
    let mut high: Vec<usize> = (0..m).filter(|&j| overlay.degree(j) == k - q).collect();
    let mut low: Vec<usize> = (0..m).filter(|&j| overlay.degree(j) == k - q - 1).collect();
    let mut assign = vec![usize::MAX; m]; // overlay vertex -> new-vertex offset
    for (j, &demand) in need.iter().enumerate() {
        let pool = if demand == k - q { &mut high } else { &mut low };
        assign[pool.pop().expect("overlay degree counts match")] = j;
    }
    for (u, v) in overlay.edges() {
        edges.push((n + assign[u], n + assign[v]));
    }

    let full = Graph::from_edges(n + m, &edges)?;
    debug_assert!(full.is_k_regular(k));

    let output = if g.is_connected() && n > 0 {
        let comp = full
            .components()
            .into_iter()
            .find(|c| c.contains(&0))
            .expect("vertex 0 lives somewhere");
        // Original vertices sort first, so their labels are preserved.
        full.induced(&comp).0
    } else {
        full
    };
    Ok(RegularizationReport {
        added_vertices: output.n() - n,
        added_edges: output.edge_count() - g.edge_count(),
        contains_input: output.contains_subgraph(g),
        output,
    })
}

/// Hamiltonian cycle by the rotation-extension argument behind Dirac's
/// theorem; requires min degree >= n/2 and n >= 3.  Ties are broken by
/// lowest vertex index.
pub fn dirac_hamiltonian_cycle(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Precondition(format!("Hamilton cycle needs n >= 3, got {n}")));
    }
    if (0..n).any(|v| 2 * g.degree(v) < n) {
        let v = (0..n).find(|&v| 2 * g.degree(v) < n).unwrap();
        return Err(Error::Precondition(format!(
            "Dirac condition fails: degree({v}) = {} < n/2",
            g.degree(v)
        )));
    }

    let mut path = vec![0usize];
    let mut on_path = vec![false; n];
    on_path[0] = true;
    loop {
        // Grow at both ends while possible.
        loop {
            let tail = *path.last().unwrap();
            if let Some(u) = g.neighbors(tail).find(|&u| !on_path[u]) {
                path.push(u);
                on_path[u] = true;
                continue;
            }
            let head = path[0];
            if let Some(u) = g.neighbors(head).find(|&u| !on_path[u]) {
                path.insert(0, u);
                on_path[u] = true;
                continue;
            }
            break;
        }
        let m = path.len();
        let head = path[0];
        let tail = path[m - 1];
        // Close directly when possible.
        let cycle = if g.has_edge(head, tail) {
            path.clone()
        } else {
            // Rotation: find i with head ~ path[i+1] and path[i] ~ tail;
            // exists by the pigeonhole when both ends are stuck.
            let i = (0..m - 1)
                .find(|&i| g.has_edge(head, path[i + 1]) && g.has_edge(path[i], tail))
                .expect("Dirac pigeonhole");
            let mut c = path[..=i].to_vec();
            c.extend(path[i + 1..].iter().rev());
            c
        };
        if cycle.len() == n {
            debug_assert!(cycle_is_valid(g, &cycle));
            return Ok(cycle);
        }
        // Break the cycle at a vertex adjacent to something outside;
        // connectivity follows from the degree condition.
        let (pos, u) = cycle
            .iter()
            .enumerate()
            .find_map(|(j, &c)| g.neighbors(c).find(|&u| !on_path[u]).map(|u| (j, u)))
            .expect("Dirac graphs are connected");
        let mut new_path = vec![u];
        new_path.extend(cycle[pos..].iter().copied());
        new_path.extend(cycle[..pos].iter().copied());
        on_path[u] = true;
        path = new_path;
    }
}

fn cycle_is_valid(g: &Graph, cycle: &[usize]) -> bool {
    let n = cycle.len();
    let distinct: std::collections::BTreeSet<_> = cycle.iter().collect();
    distinct.len() == n && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Raise a k'-regular graph to k-regular on the same vertex set by
/// adding Hamiltonian cycles of the complement (plus one matching when
/// the parities differ).  Requires nk even and k <= n/2.
pub fn raise_regular_degree(g: &Graph, k: usize) -> Result<Graph> {
    let n = g.n();
    let k0 = g.regular_degree().ok_or_else(|| Error::Precondition("input not regular".into()))?;
    if k0 >= k {
        return Err(Error::Precondition(format!("k' = {k0} must be below k = {k}")));
    }
    if n * k % 2 != 0 {
        return Err(Error::Existence(format!("nk = {} odd", n * k)));
    }
    if 2 * k > n {
        return Err(Error::Precondition(format!("need k <= n/2, got k={k}, n={n}")));
    }
    let mut current = g.clone();
    for _ in 0..(k - k0) / 2 {
        let cycle = dirac_hamiltonian_cycle(&current.complement())?;
        let mut edges = current.edges();
        for i in 0..n {
            edges.push((cycle[i], cycle[(i + 1) % n]));
        }
        current = Graph::from_edges(n, &edges)?;
    }
    if (k - k0) % 2 == 1 {
        // n is even here (nk and nk' both even, k-k' odd).
        debug_assert_eq!(n % 2, 0);
        let mut edges = current.edges();
        if n == 2 {
            // The complement is a single edge; no cycle to walk.
            edges.push((0, 1));
        } else {
            let cycle = dirac_hamiltonian_cycle(&current.complement())?;
            for i in (0..n).step_by(2) {
                edges.push((cycle[i], cycle[i + 1]));
            }
        }
        current = Graph::from_edges(n, &edges)?;
    }
    debug_assert!(current.is_k_regular(k));
    debug_assert!(current.contains_subgraph(g));
    Ok(current)
}

/// Size threshold and new fixed constant for regularized expander
/// families: from size 2(k+3)^2 / (c(k+2)) on, the k-regularized
/// graphs keep fixed constant c/(k+3).
pub fn regularized_expander_constant(k: usize, c: Rat) -> Result<(i64, Rat)> {
    if c <= Rat::from_integer(0) || c > Rat::from_integer(1) {
        return Err(Error::Precondition(format!("need 0 < c <= 1, got {c}")));
    }
    let k = k as i64;
    let threshold = rat_ceil(Rat::from_integer(2 * (k + 3) * (k + 3)) / (c * (k + 2)));
    Ok((threshold, c / (k + 3)))
}

/// Sharpness family, even k >= 4: a k-regular circulant with one
/// "cherry" collapsed, leaving a single vertex of degree k-2.  Needs
/// exactly k+1 added vertices.
pub fn sharp_family_even(k: usize, n: usize) -> Result<Graph> {
    if k % 2 != 0 || k < 4 {
        return Err(Error::Precondition("even sharpness family needs even k >= 4".into()));
    }
    let g = circulant_regular(n, k)?;
    // Cherry at v = k/2: u = 0 and w = k are both adjacent to v but
    // not to each other (circular distance k > k/2).
    let (u, v, w) = (0, k / 2, k);
    if w >= n || g.has_edge(u, w) {
        return Err(Error::Precondition(format!("n = {n} too small for the cherry")));
    }
    let edges: Vec<_> = g
        .edges()
        .into_iter()
        .filter(|&e| e != (u, v) && e != (v, w) && e != (v, u) && e != (w, v))
        .chain([(u, w)])
        .collect();
    let out = Graph::from_edges(n, &edges)?;
    debug_assert_eq!(out.degree(v), k - 2);
    Ok(out)
}

/// Sharpness family, odd k >= 3: an (n-1, 1, k)-almost-regular graph
/// (n odd), whose regularization needs exactly k+2 added vertices.
pub fn sharp_family_odd(k: usize, n: usize) -> Result<Graph> {
    if k % 2 != 1 || k < 3 || n % 2 != 1 {
        return Err(Error::Precondition("odd sharpness family needs odd k >= 3 and odd n".into()));
    }
    almost_regular(n - 1, 1, k)
}
