//! Tanner graphs of classical and CSS codes: girth, 4-cycle census and
//! DOT export.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::css::CssCode;
use crate::gf2::BinaryMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckType {
    X,
    Z,
    /// A classical parity check.
    Plain,
}

/// Bipartite multigraph: every check lists its variables, repeated once
/// per parallel edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n_vars: usize,
    checks: Vec<(CheckType, Vec<usize>)>,
}

impl TannerGraph {
    /// Panics if a variable index is out of range.
    pub fn new(n_vars: usize, checks: Vec<(CheckType, Vec<usize>)>) -> Self {
        for (_, vars) in &checks {
            assert!(vars.iter().all(|&v| v < n_vars), "variable out of range");
        }
        TannerGraph { n_vars, checks }
    }

    fn rows_of(m: &BinaryMatrix, t: CheckType) -> impl Iterator<Item = (CheckType, Vec<usize>)> + '_ {
        (0..m.rows()).map(move |r| (t, m.row_support(r)))
    }

    /// X checks first, then Z checks.
    pub fn from_css(c: &CssCode) -> Self {
        let checks = Self::rows_of(c.hx(), CheckType::X).chain(Self::rows_of(c.hz(), CheckType::Z)).collect();
        TannerGraph { n_vars: c.n(), checks }
    }

    pub fn from_classical(h: &BinaryMatrix) -> Self {
        TannerGraph {
            n_vars: h.cols(),
            checks: Self::rows_of(h, CheckType::Plain).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn checks(&self) -> &[(CheckType, Vec<usize>)] {
        &self.checks
    }

    pub fn n_edges(&self) -> usize {
        self.checks.iter().map(|(_, v)| v.len()).sum()
    }

    pub fn var_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vars];
        for (_, vars) in &self.checks {
            for &v in vars {
                d[v] += 1;
            }
        }
        d
    }

    /// Keeps only checks of one type.
    pub fn restrict(&self, t: CheckType) -> TannerGraph {
        TannerGraph {
            n_vars: self.n_vars,
            checks: self.checks.iter().filter(|(ct, _)| *ct == t).cloned().collect(),
        }
    }
}

/// Unordered 4-cycles by the types of their two checks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycles {
    pub x_only: u64,
    pub z_only: u64,
    pub cross: u64,
    pub plain: u64,
}

impl FourCycles {
    pub fn total(&self) -> u64 {
        self.x_only + self.z_only + self.cross + self.plain
    }

    fn add(&mut self, a: CheckType, b: CheckType, count: u64) {
        match (a, b) {
            (CheckType::X, CheckType::X) => self.x_only += count,
            (CheckType::Z, CheckType::Z) => self.z_only += count,
            (CheckType::Plain, CheckType::Plain) => self.plain += count,
            _ => self.cross += count,
        }
    }

    fn merge(mut self, o: FourCycles) -> FourCycles {
        self.x_only += o.x_only;
        self.z_only += o.z_only;
        self.cross += o.cross;
        self.plain += o.plain;
        self
    }
}

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn multiplicities(vars: &[usize]) -> HashMap<usize, u64> {
    let mut m = HashMap::new();
    for &v in vars {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// 4-cycles through the check pair `(a, b)`, optionally only those whose
/// two variables satisfy `keep`. With `m_a(v), m_b(v)` edge multiplicities,
/// `p_v = m_a(v)·m_b(v)` two-paths run through `v`; distinct variables give
/// `p_v·p_w` cycles and one variable gives `2·C(m_a,2)·C(m_b,2)`.
fn pair_cycles(a: &HashMap<usize, u64>, b: &HashMap<usize, u64>, keep: &dyn Fn(usize, usize) -> bool) -> u64 {
    let mut common: Vec<(usize, u64, u64)> =
        a.iter().filter_map(|(&v, &ma)| b.get(&v).map(|&mb| (v, ma, mb))).collect();
    common.sort_unstable();
    let mut total = 0;
    for (i, &(v, ma, mb)) in common.iter().enumerate() {
        if keep(v, v) {
            total += 2 * c2(ma) * c2(mb);
        }
        for &(w, na, nb) in &common[i + 1..] {
            if keep(v, w) {
                total += ma * mb * na * nb;
            }
        }
    }
    total
}

fn census(g: &TannerGraph, keep: &(dyn Fn(usize, usize) -> bool + Sync)) -> FourCycles {
    let mult: Vec<HashMap<usize, u64>> = g.checks.iter().map(|(_, v)| multiplicities(v)).collect();
    // checks per variable, to visit only pairs that share something
    let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); g.n_vars];
    for (c, m) in mult.iter().enumerate() {
        for &v in m.keys() {
            by_var[v].push(c);
        }
    }
    (0..g.checks.len())
        .into_par_iter()
        .map(|a| {
            let mut partners: Vec<usize> =
                mult[a].keys().flat_map(|&v| by_var[v].iter().copied().filter(|&b| b > a)).collect();
            partners.sort_unstable();
            partners.dedup();
            let mut out = FourCycles::default();
            for b in partners {
                out.add(g.checks[a].0, g.checks[b].0, pair_cycles(&mult[a], &mult[b], keep));
            }
            out
        })
        .reduce(FourCycles::default, FourCycles::merge)
}

pub fn count_4cycles(g: &TannerGraph) -> FourCycles {
    census(g, &|_, _| true)
}

/// 4-cycles whose two variables are distinct copies of one original
/// variable, given the original of every variable.
pub fn count_copy_4cycles(g: &TannerGraph, origin: &[usize]) -> FourCycles {
    assert_eq!(origin.len(), g.n_vars, "one origin per variable");
    census(g, &|v, w| v != w && origin[v] == origin[w])
}

/// Closed form for the cycles `copying` creates: a variable split into `s`
/// copies under `c` Z checks gives `C(s,2)·C(c,2)` Z-only and `c·(s−1)`
/// cross 4-cycles. `copies[i]` is the number of copies of variable `i`.
pub fn copying_cycle_formula(original: &CssCode, copies: &[usize]) -> FourCycles {
    let cz = original.hz().col_weights();
    let mut out = FourCycles::default();
    for (i, &s) in copies.iter().enumerate() {
        let (s, c) = (s as u64, cz[i] as u64);
        out.z_only += c2(s) * c2(c);
        out.cross += c * s.saturating_sub(1);
    }
    out
}

/// Length of a shortest cycle, `None` for a forest. With `only` set, the
/// other checks are dropped first.
pub fn girth(g: &TannerGraph, only: Option<CheckType>) -> Option<usize> {
    let g = match only {
        Some(t) => g.restrict(t),
        None => g.clone(),
    };
    let nv = g.n_vars;
    let total = nv + g.checks.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    let mut e = 0;
    for (c, (_, vars)) in g.checks.iter().enumerate() {
        for &v in vars {
            adj[v].push((nv + c, e));
            adj[nv + c].push((v, e));
            e += 1;
        }
    }
    (0..total)
        .into_par_iter()
        .filter_map(|s| {
            let mut dist = vec![usize::MAX; total];
            let mut via = vec![usize::MAX; total];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            let mut best = usize::MAX;
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &(w, edge) in &adj[u] {
                    if edge == via[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = edge;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
            (best != usize::MAX).then_some(best)
        })
        .min()
}

/// Graphviz source: variables as circles, X checks as open squares, Z
/// checks as filled squares, classical checks as grey squares.
pub fn to_dot(g: &TannerGraph) -> String {
    let mut s = String::from("graph tanner {\n  node [label=\"\"];\n");
    for v in 0..g.n_vars {
        let _ = writeln!(s, "  v{v} [shape=circle];");
    }
    for (c, (t, _)) in g.checks.iter().enumerate() {
        let style = match t {
            CheckType::X => "shape=square",
            CheckType::Z => "shape=square, style=filled, fillcolor=black",
            CheckType::Plain => "shape=square, style=filled, fillcolor=gray",
        };
        let _ = writeln!(s, "  c{c} [{style}];");
    }
    for (c, (_, vars)) in g.checks.iter().enumerate() {
        for v in vars {
            let _ = writeln!(s, "  c{c} -- v{v};");
        }
    }
    s.push_str("}\n");
    s
}
