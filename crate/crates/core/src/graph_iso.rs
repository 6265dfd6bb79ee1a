//! Isomorphism search for small edge-weighted digraphs by colour refinement
//! and individualization.
//!
//! Both graphs are refined jointly so colour ids mean the same thing on each
//! side. A vertex of the first graph is individualized against every
//! candidate of the same colour in the second, and the search recurses until
//! the colouring is discrete; each discrete leaf is checked edge by edge.
//! With a fixed choice rule, every isomorphism corresponds to exactly one
//! leaf, so `Mode::All` enumerates each isomorphism exactly once.

use std::collections::BTreeMap;

/// Weighted digraph; weight 0 means "no edge".
#[derive(Debug, Clone)]
pub(crate) struct Digraph {
    n: usize,
    weights: Vec<u32>,
    out: Vec<Vec<(usize, u32)>>,
    inn: Vec<Vec<(usize, u32)>>,
    colors: Vec<usize>,
}

impl Digraph {
    /// `colors` is an isomorphism-invariant initial colouring.
    pub(crate) fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, u32)>, colors: Vec<usize>) -> Self {
        assert_eq!(colors.len(), n);
        let mut weights = vec![0; n * n];
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v, w) in edges {
            assert!(w > 0, "edge weights must be positive");
            if weights[u * n + v] == 0 {
                out[u].push((v, w));
                inn[v].push((u, w));
            }
            weights[u * n + v] = w;
        }
        Digraph {
            n,
            weights,
            out,
            inn,
            colors,
        }
    }

    pub(crate) fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let both = edges.into_iter().flat_map(|(u, v)| [(u, v, 1), (v, u, 1)]);
        Digraph::new(n, both, vec![0; n])
    }

    fn weight(&self, u: usize, v: usize) -> u32 {
        self.weights[u * self.n + v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    First,
    All,
}

type Signature = (usize, Vec<(u32, usize)>, Vec<(u32, usize)>);

fn signature(g: &Digraph, colors: &[usize], v: usize) -> Signature {
    let mut out: Vec<(u32, usize)> = g.out[v].iter().map(|&(u, w)| (w, colors[u])).collect();
    let mut inn: Vec<(u32, usize)> = g.inn[v].iter().map(|&(u, w)| (w, colors[u])).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (colors[v], out, inn)
}

fn class_count(ca: &[usize], cb: &[usize]) -> usize {
    let mut all: Vec<usize> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Joint refinement to a stable colouring. Returns false as soon as the two
/// sides disagree on a colour-class size.
fn refine(a: &Digraph, b: &Digraph, ca: &mut Vec<usize>, cb: &mut Vec<usize>) -> bool {
    let mut classes = class_count(ca, cb);
    loop {
        let sa: Vec<Signature> = (0..a.n).map(|v| signature(a, ca, v)).collect();
        let sb: Vec<Signature> = (0..b.n).map(|v| signature(b, cb, v)).collect();
        let mut ids: BTreeMap<&Signature, usize> = sa.iter().chain(&sb).map(|s| (s, 0)).collect();
        for (i, id) in ids.values_mut().enumerate() {
            *id = i;
        }
        let mut hist = vec![0i64; ids.len()];
        for s in &sa {
            hist[ids[s]] += 1;
        }
        for s in &sb {
            hist[ids[s]] -= 1;
        }
        if hist.iter().any(|&h| h != 0) {
            return false;
        }
        *ca = sa.iter().map(|s| ids[s]).collect();
        *cb = sb.iter().map(|s| ids[s]).collect();
        let next = ids.len();
        if next == classes {
            return true;
        }
        classes = next;
    }
}

fn search(a: &Digraph, b: &Digraph, ca: Vec<usize>, cb: Vec<usize>, mode: Mode, found: &mut Vec<Vec<usize>>) -> bool {
    let n = a.n;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *sizes.entry(c).or_insert(0) += 1;
    }
    let target = sizes
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
        .map(|(&c, _)| c);
    let Some(color) = target else {
        let mut by_color = vec![usize::MAX; n];
        for (w, &c) in cb.iter().enumerate() {
            by_color[c] = w;
        }
        let map: Vec<usize> = ca.iter().map(|&c| by_color[c]).collect();
        let ok = (0..n).all(|u| (0..n).all(|v| a.weight(u, v) == b.weight(map[u], map[v])));
        if ok {
            found.push(map);
            return mode == Mode::First;
        }
        return false;
    };
    let v = ca.iter().position(|&c| c == color).expect("colour present");
    let fresh = ca.iter().chain(&cb).max().map_or(0, |m| m + 1);
    for w in (0..n).filter(|&w| cb[w] == color) {
        let (mut ca2, mut cb2) = (ca.clone(), cb.clone());
        ca2[v] = fresh;
        cb2[w] = fresh;
        if refine(a, b, &mut ca2, &mut cb2) && search(a, b, ca2, cb2, mode, found) {
            return true;
        }
    }
    false
}

/// Isomorphisms `a -> b` as vertex maps, optionally forcing `pin.0 -> pin.1`.
pub(crate) fn isomorphisms(a: &Digraph, b: &Digraph, pin: Option<(usize, usize)>, mode: Mode) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    if a.n != b.n {
        return found;
    }
    let (mut ca, mut cb) = (a.colors.clone(), b.colors.clone());
    // Initial colours are arbitrary labels; rank them jointly first.
    let mut keys: Vec<usize> = ca.iter().chain(&cb).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let rank = |c: &usize| keys.binary_search(c).expect("present");
    ca = ca.iter().map(rank).collect();
    cb = cb.iter().map(rank).collect();
    if let Some((u, v)) = pin {
        let fresh = keys.len();
        if ca[u] != cb[v] {
            return found;
        }
        ca[u] = fresh;
        cb[v] = fresh;
    }
    if refine(a, b, &mut ca, &mut cb) {
        search(a, b, ca, cb, mode, &mut found);
    }
    found
}
