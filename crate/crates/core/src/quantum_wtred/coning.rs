use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{mapping_cone, ChainComplex, ChainMap};
use crate::css::{CssCode, Weights};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVec, RowSpace};

/// How long cycles are cut into faces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellulationStyle {
    /// Parallel chords `v_i – v_{L−1−i}`, leaving quadrilaterals and one
    /// last face.
    #[default]
    Ladder,
    /// Chords `v_0 – v_k`, leaving triangles.
    Triangulate,
}

/// Which cycles span each sector graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleBasis {
    /// Fundamental cycles of a breadth-first spanning forest, ordered by
    /// their non-tree edge.
    #[default]
    Fundamental,
    /// Shortest cycles through each edge, taken greedily by length while
    /// independent, topped up with fundamental cycles if they fall short.
    Short,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConingOptions {
    pub basis: CycleBasis,
    pub style: CellulationStyle,
    /// Cycles longer than this get chords.
    pub cellulate_above: usize,
    /// Trial 0 is deterministic; later trials shuffle search order.
    pub trials: usize,
    pub seed: u64,
}

impl Default for ConingOptions {
    fn default() -> Self {
        ConingOptions {
            basis: CycleBasis::Fundamental,
            style: CellulationStyle::Ladder,
            cellulate_above: 4,
            trials: 1,
            seed: 0,
        }
    }
}

impl ConingOptions {
    pub fn validate(&self) -> Result<()> {
        let min = match self.style {
            CellulationStyle::Ladder => 4,
            CellulationStyle::Triangulate => 3,
        };
        if self.cellulate_above < min {
            return Err(Error::InvalidOption(format!(
                "{:?} cellulation needs faces of at least {min} edges, got {}",
                self.style, self.cellulate_above
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidOption("coning needs at least one trial".into()));
        }
        Ok(())
    }
}

/// An edge between two local vertices, coming from an X check or a chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub check: Option<usize>,
    pub a: usize,
    pub b: usize,
}

/// The small complex `R → X → Q` attached to one Z check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSector {
    pub row: usize,
    /// Support of the Z check, ascending; vertex `v` is qubit `qubits[v]`.
    pub qubits: Vec<usize>,
    /// Check edges first, chords after.
    pub edges: Vec<Edge>,
    /// Edge indices of every face.
    pub faces: Vec<Vec<usize>>,
}

impl ConeSector {
    /// Vertex incidence, `|X| × |Q|`.
    pub fn d1(&self) -> BinaryMatrix {
        let rows: Vec<Vec<usize>> = self.edges.iter().map(|e| vec![e.a, e.b]).collect();
        BinaryMatrix::from_supports(rows.len(), self.qubits.len(), &rows)
    }

    /// Face incidence, `|R| × |X|`.
    pub fn d0(&self) -> BinaryMatrix {
        BinaryMatrix::from_supports(self.faces.len(), self.edges.len(), &self.faces)
    }

    /// Embeds the vertices into `n` qubits.
    pub fn f1(&self, n: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(n, self.qubits.len());
        for (v, &q) in self.qubits.iter().enumerate() {
            m.set(q, v, true);
        }
        m
    }

    /// Sends each check edge to its X check; chords go to zero.
    pub fn f0(&self, n_x: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zeros(n_x, self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            if let Some(s) = edge.check {
                m.set(s, e, true);
            }
        }
        m
    }

    pub fn chords(&self) -> usize {
        self.edges.iter().filter(|e| e.check.is_none()).count()
    }
}

fn check_edges(hx: &BinaryMatrix, qubits: &[usize]) -> Vec<Edge> {
    let mut local = vec![usize::MAX; hx.cols()];
    for (v, &q) in qubits.iter().enumerate() {
        local[q] = v;
    }
    let mut edges = Vec::new();
    for s in 0..hx.rows() {
        let overlap: Vec<usize> = hx.row_support(s).into_iter().filter(|&q| local[q] != usize::MAX).collect();
        for pair in overlap.chunks(2) {
            if let [a, b] = *pair {
                edges.push(Edge {
                    check: Some(s),
                    a: local[a],
                    b: local[b],
                });
            }
        }
    }
    edges
}

struct Forest {
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    components: Vec<Vec<usize>>,
    tree: Vec<bool>,
}

type Adjacency = Vec<Vec<(usize, usize)>>;

fn adjacency(nv: usize, edges: &[Edge], rng: &mut Option<&mut ChaCha8Rng>) -> Adjacency {
    let mut adj: Adjacency = vec![Vec::new(); nv];
    for (e, edge) in edges.iter().enumerate() {
        adj[edge.a].push((edge.b, e));
        adj[edge.b].push((edge.a, e));
    }
    if let Some(rng) = rng {
        for list in &mut adj {
            list.shuffle(*rng);
        }
    }
    adj
}

fn spanning_forest(adj: &Adjacency, n_edges: usize, rng: &mut Option<&mut ChaCha8Rng>) -> Forest {
    let nv = adj.len();
    let mut roots: Vec<usize> = (0..nv).collect();
    if let Some(rng) = rng {
        roots.shuffle(*rng);
    }
    let mut parent = vec![None; nv];
    let mut depth = vec![0; nv];
    let mut seen = vec![false; nv];
    let mut tree = vec![false; n_edges];
    let mut components = Vec::new();
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut comp = vec![r];
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    depth[w] = depth[u] + 1;
                    tree[e] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    Forest {
        parent,
        depth,
        components,
        tree,
    }
}

/// Closed walk: `edges[k]` joins `verts[k]` and `verts[k + 1]` cyclically.
type Cycle = (Vec<usize>, Vec<usize>);

fn fundamental_cycle(f: &Forest, edges: &[Edge], e: usize) -> Cycle {
    let (mut a, mut b) = (edges[e].a, edges[e].b);
    let (mut up_a, mut up_b) = (vec![a], vec![b]);
    let (mut ea, mut eb) = (Vec::new(), Vec::new());
    while a != b {
        if f.depth[a] >= f.depth[b] {
            let (p, pe) = f.parent[a].expect("non-root above its tree partner");
            ea.push(pe);
            up_a.push(p);
            a = p;
        } else {
            let (p, pe) = f.parent[b].expect("non-root above its tree partner");
            eb.push(pe);
            up_b.push(p);
            b = p;
        }
    }
    up_b.pop();
    let mut verts = up_a;
    verts.extend(up_b.into_iter().rev());
    let mut es = ea;
    es.extend(eb.into_iter().rev());
    es.push(e);
    (verts, es)
}

/// Shortest path from `a` to `b` avoiding edge `skip`, closed by `skip`.
fn shortest_cycle(adj: &Adjacency, edges: &[Edge], skip: usize) -> Option<Cycle> {
    let (a, b) = (edges[skip].a, edges[skip].b);
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &(w, e) in &adj[u] {
            if e != skip && !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    if !seen[b] {
        return None;
    }
    let (mut verts, mut es) = (vec![b], Vec::new());
    let mut v = b;
    while let Some((u, e)) = prev[v] {
        verts.push(u);
        es.push(e);
        v = u;
    }
    verts.reverse();
    es.reverse();
    es.push(skip);
    Some((verts, es))
}

fn cycle_basis(adj: &Adjacency, edges: &[Edge], forest: &Forest, basis: CycleBasis, rng: &mut Option<&mut ChaCha8Rng>) -> Vec<Cycle> {
    let non_tree: Vec<usize> = (0..edges.len()).filter(|&e| !forest.tree[e]).collect();
    let fundamental = non_tree.iter().map(|&e| fundamental_cycle(forest, edges, e));
    if basis == CycleBasis::Fundamental {
        return fundamental.collect();
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    if let Some(rng) = rng {
        order.shuffle(*rng);
    }
    let mut candidates: Vec<Cycle> = order.into_iter().filter_map(|e| shortest_cycle(adj, edges, e)).collect();
    candidates.sort_by_key(|c| c.1.len());
    candidates.extend(fundamental);
    let mut span = RowSpace::new(edges.len());
    let mut out = Vec::with_capacity(non_tree.len());
    for c in candidates {
        if out.len() == non_tree.len() {
            break;
        }
        if span.insert(BitVec::from_support(edges.len(), &c.1)) {
            out.push(c);
        }
    }
    out
}

/// Rotates to start at the smallest vertex, heading to its smaller
/// neighbour.
fn canonical((verts, es): Cycle) -> Cycle {
    let len = verts.len();
    let start = (0..len).min_by_key(|&k| verts[k]).expect("cycle has vertices");
    let mut v: Vec<usize> = (0..len).map(|k| verts[(k + start) % len]).collect();
    let mut ed: Vec<usize> = (0..len).map(|k| es[(k + start) % len]).collect();
    if len > 2 && v[len - 1] < v[1] {
        v = (0..len).map(|k| v[(len - k) % len]).collect();
        ed = (0..len).map(|k| ed[(2 * len - k - 1) % len]).collect();
    }
    (v, ed)
}

/// Chord endpoints, as positions along the cycle.
fn chord_positions(len: usize, style: CellulationStyle, above: usize) -> Vec<(usize, usize)> {
    match style {
        CellulationStyle::Ladder => (0..).take_while(|i| len - 2 * i > above).map(|i| (i + 1, len - 2 - i)).collect(),
        CellulationStyle::Triangulate => (2..len - 1).map(|k| (0, k)).collect(),
    }
}

/// Splits one cycle into faces, appending chord edges. Every rotation and
/// reflection of the cycle is tried; the one keeping the busiest chord
/// endpoint least busy wins, earliest first. `deg` tracks vertex degrees.
fn cellulate(
    v: &[usize],
    ed: &[usize],
    edges: &mut Vec<Edge>,
    deg: &mut [usize],
    style: CellulationStyle,
    above: usize,
) -> Vec<Vec<usize>> {
    let len = v.len();
    if len <= above {
        return vec![ed.to_vec()];
    }
    let chords = chord_positions(len, style, above);
    let orient = |r: usize, flip: bool| -> (Vec<usize>, Vec<usize>) {
        if flip {
            let vv = (0..len).map(|k| v[(2 * len + r - k) % len]).collect();
            let ee = (0..len).map(|k| ed[(2 * len + r - k - 1) % len]).collect();
            (vv, ee)
        } else {
            ((0..len).map(|k| v[(k + r) % len]).collect(), (0..len).map(|k| ed[(k + r) % len]).collect())
        }
    };
    let score = |vv: &[usize]| {
        let mut extra = std::collections::HashMap::new();
        for &(a, b) in &chords {
            *extra.entry(vv[a]).or_insert(0) += 1;
            *extra.entry(vv[b]).or_insert(0) += 1;
        }
        extra.iter().map(|(&x, &c)| deg[x] + c).max().unwrap_or(0)
    };
    let (v, ed) = [false, true]
        .into_iter()
        .flat_map(|flip| (0..len).map(move |r| (r, flip)))
        .map(|(r, flip)| orient(r, flip))
        .min_by_key(|(vv, _)| score(vv))
        .expect("cycle has a rotation");

    let mut chord = |a: usize, b: usize, edges: &mut Vec<Edge>| {
        deg[v[a]] += 1;
        deg[v[b]] += 1;
        edges.push(Edge { check: None, a: v[a], b: v[b] });
        edges.len() - 1
    };
    let mut faces = Vec::new();
    match style {
        CellulationStyle::Ladder => {
            // previous rung, starting with the closing edge
            let mut rung = ed[len - 1];
            for (i, &(a, b)) in chords.iter().enumerate() {
                let next = chord(a, b, edges);
                faces.push(vec![ed[i], next, ed[len - 2 - i], rung]);
                rung = next;
            }
            let m = chords.len();
            let mut last: Vec<usize> = ed[m..len - 1 - m].to_vec();
            last.push(rung);
            faces.push(last);
        }
        CellulationStyle::Triangulate => {
            let mut prev = ed[0];
            for &(a, b) in &chords {
                let c = chord(a, b, edges);
                faces.push(vec![prev, ed[b - 1], c]);
                prev = c;
            }
            faces.push(vec![prev, ed[len - 2], ed[len - 1]]);
        }
    }
    faces
}

/// The cone sector of Z check `row` with support `qubits`. `rng` shuffles
/// the spanning forest; without it the forest is plain breadth-first.
pub fn cone_sector(
    hx: &BinaryMatrix,
    row: usize,
    qubits: Vec<usize>,
    mut rng: Option<&mut ChaCha8Rng>,
    opts: &ConingOptions,
) -> ConeSector {
    let mut edges = check_edges(hx, &qubits);
    let adj = adjacency(qubits.len(), &edges, &mut rng);
    let forest = spanning_forest(&adj, edges.len(), &mut rng);
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut faces = Vec::new();
    for cycle in cycle_basis(&adj, &edges, &forest, opts.basis, &mut rng) {
        let (v, ed) = canonical(cycle);
        faces.extend(cellulate(&v, &ed, &mut edges, &mut deg, opts.style, opts.cellulate_above));
    }
    ConeSector {
        row,
        qubits,
        edges,
        faces,
    }
}

/// Every connected piece of the sector graph must carry a Z stabilizer;
/// otherwise it is a logical hiding inside the check.
fn check_reasonable(hx: &BinaryMatrix, hz_span: &RowSpace, n: usize, row: usize, qubits: &[usize]) -> Result<()> {
    let edges = check_edges(hx, qubits);
    let forest = spanning_forest(&adjacency(qubits.len(), &edges, &mut None), edges.len(), &mut None);
    for comp in &forest.components {
        let witness: Vec<usize> = comp.iter().map(|&v| qubits[v]).collect();
        let word = BinaryMatrix::from_supports(1, n, std::slice::from_ref(&witness)).row(0);
        if !hz_span.contains(&word) {
            return Err(Error::Unreasonable { row, witness });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coned {
    pub code: CssCode,
    pub sectors: Vec<ConeSector>,
    /// Trial that produced the kept sectors.
    pub trial: usize,
}

fn weights_of(hx: &BinaryMatrix, hz: &BinaryMatrix) -> Weights {
    Weights {
        w_x: hx.max_row_weight(),
        q_x: hx.max_col_weight(),
        w_z: hz.max_row_weight(),
        q_z: hz.max_col_weight(),
    }
}

/// Assembles the coned checks as the mapping cone of the sectors into the
/// code with the coned Z rows removed. New edge qubits come first.
pub fn assemble(c: &CssCode, sectors: &[ConeSector]) -> Result<(BinaryMatrix, BinaryMatrix)> {
    let (hx, hz) = (c.hx(), c.hz());
    let coned: Vec<usize> = sectors.iter().map(|s| s.row).collect();
    let rest: Vec<usize> = (0..hz.rows()).filter(|r| !coned.contains(r)).collect();
    let target = ChainComplex::from_css(hx, &hz.select_rows(&rest))?;
    let none = || BinaryMatrix::zeros(0, 0);
    let mut source = ChainComplex::with_dims(-1, vec![0, 0, 0], vec![none(), none()])?;
    let mut f0 = BinaryMatrix::zeros(hx.rows(), 0);
    let mut f1 = BinaryMatrix::zeros(hx.cols(), 0);
    for s in sectors {
        let piece = ChainComplex::with_dims(-1, vec![s.faces.len(), s.edges.len(), s.qubits.len()], vec![s.d0(), s.d1()])?;
        source = source.direct_sum(&piece);
        f0 = BinaryMatrix::hstack(&[&f0, &s.f0(hx.rows())]);
        f1 = BinaryMatrix::hstack(&[&f1, &s.f1(hx.cols())]);
    }
    let fm = BinaryMatrix::zeros(0, source.dim(-1));
    let map = ChainMap::new(source, target, vec![fm, f0, f1])?;
    let cone = mapping_cone(&map);
    Ok((cone.boundary(0), cone.boundary(1).transpose()))
}

/// Cones the Z checks `rows`, keeping the trial with the smallest
/// `(w_Z, q_X, w_X, n)`.
pub fn cone(c: &CssCode, rows: &[usize], opts: &ConingOptions) -> Result<Coned> {
    opts.validate()?;
    let (hx, hz) = (c.hx(), c.hz());
    let mut rows = rows.to_vec();
    rows.sort_unstable();
    rows.dedup();
    if let Some(&r) = rows.iter().find(|&&r| r >= hz.rows()) {
        return Err(Error::InvalidOption(format!("no Z check {r} to cone")));
    }
    let span = RowSpace::from_matrix(hz);
    for &r in &rows {
        check_reasonable(hx, &span, c.n(), r, &hz.row_support(r))?;
    }
    let run = |trial: usize| -> Result<(Weights, usize, Vec<ConeSector>, BinaryMatrix, BinaryMatrix)> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(trial as u64);
        let sectors: Vec<ConeSector> = rows
            .iter()
            .map(|&r| {
                let rng = if trial == 0 { None } else { Some(&mut rng) };
                cone_sector(hx, r, hz.row_support(r), rng, opts)
            })
            .collect();
        let (nhx, nhz) = assemble(c, &sectors)?;
        Ok((weights_of(&nhx, &nhz), trial, sectors, nhx, nhz))
    };
    let results: Vec<_> = (0..opts.trials).into_par_iter().map(run).collect::<Result<Vec<_>>>()?;
    let (_, trial, sectors, nhx, nhz) = results
        .into_iter()
        .min_by_key(|(w, t, _, m, _)| (w.w_z, w.q_x, w.w_x, m.cols(), *t))
        .expect("at least one trial");
    let code = CssCode::new(nhx, nhz)?;
    if code.k() != c.k() {
        return Err(Error::Invariant(format!("coning changed k from {} to {}", c.k(), code.k())));
    }
    Ok(Coned { code, sectors, trial })
}
