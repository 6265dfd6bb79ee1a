//! Group-level comparison and decomposition: isomorphism testing, naming
//! small groups, semidirect/direct/central product discovery, cycle graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::families;
use crate::graph_iso::{isomorphisms, Digraph, Mode};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::all_subgroups;

/// Largest order handled by the isomorphism search.
pub const ISO_BOUND: usize = 64;

/// Cheap isomorphism invariants; unequal fingerprints rule out isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub class_sizes: Vec<usize>,
    pub commutator_order: usize,
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        order_histogram: g.order_histogram(),
        center_order: g.center().size(),
        class_sizes,
        commutator_order: g.commutator_subgroup().size(),
    }
}

/// A verified isomorphism `G -> H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    /// `map[x]` is the image of element `x`.
    pub map: Vec<usize>,
    /// `(generator of G, its image)` for the generating set the search used.
    pub generator_images: Vec<(usize, usize)>,
}

/// Per-element invariants: order, conjugacy-class size, number of square roots.
fn element_invariants(g: &FiniteGroup) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let mut class_size = vec![0; n];
    for class in g.conjugacy_classes() {
        for &x in &class {
            class_size[x] = class.len();
        }
    }
    let mut roots = vec![0; n];
    for x in g.elements() {
        roots[g.mul(x, x)] += 1;
    }
    g.elements().map(|x| (g.element_order(x), class_size[x], roots[x])).collect()
}

struct PartialMap<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: &'a [usize],
}

impl PartialMap<'_> {
    /// Extends `gens[i] -> images[i]` over the subgroup they generate.
    /// Returns `None` if that is not a well-defined injective homomorphism.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let (g, h) = (self.g, self.h);
        let mut map = vec![usize::MAX; g.order()];
        let mut used = vec![false; h.order()];
        map[g.identity()] = h.identity();
        used[h.identity()] = true;
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (&gen, &img) in self.gens.iter().zip(images) {
                let y = g.mul(x, gen);
                let target = h.mul(map[x], img);
                if map[y] == usize::MAX {
                    if used[target] {
                        return None;
                    }
                    map[y] = target;
                    used[target] = true;
                    queue.push_back(y);
                } else if map[y] != target {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn search(&self, candidates: &[Vec<usize>], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        let k = images.len();
        if k == self.gens.len() {
            return self.extend(images);
        }
        for &c in &candidates[k] {
            images.push(c);
            if self.extend(images).is_some() {
                if let Some(map) = self.search(candidates, images) {
                    return Some(map);
                }
            }
            images.pop();
        }
        None
    }
}

fn is_isomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    g.elements()
        .all(|a| g.elements().all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

/// Isomorphism test with a verified witness.
pub fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Isomorphism>> {
    for order in [g.order(), h.order()] {
        if order > ISO_BOUND {
            return Err(Error::TooLarge {
                order,
                bound: ISO_BOUND,
            });
        }
    }
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let (inv_g, inv_h) = (element_invariants(g), element_invariants(h));
    let gens = g.small_generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| h.elements().filter(|&y| inv_h[y] == inv_g[x]).collect())
        .collect();
    let search = PartialMap { g, h, gens: &gens };
    let Some(map) = search.search(&candidates, &mut Vec::new()) else {
        return Ok(None);
    };
    assert!(is_isomorphism(g, h, &map), "isomorphism search returned a non-isomorphism");
    let generator_images = gens.iter().map(|&x| (x, map[x])).collect();
    Ok(Some(Isomorphism { map, generator_images }))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group, largest first (`d_{i+1} | d_i`).
/// The trivial group has none.
pub fn abelian_invariants(g: &FiniteGroup) -> Vec<usize> {
    assert!(g.is_abelian(), "abelian_invariants: group is not abelian");
    let mut factors: Vec<usize> = Vec::new();
    for p in prime_factors(g.order()) {
        // log_p of #{x : x^(p^k) = 1}, for k = 0, 1, ... until it stabilizes.
        let mut logs = vec![0u32];
        let mut pk = 1i64;
        loop {
            pk *= p as i64;
            let count = g.elements().filter(|&x| g.power(x, pk) == g.identity()).count();
            let log = count.ilog(p);
            if log == *logs.last().expect("nonempty") {
                break;
            }
            logs.push(log);
        }
        // Number of cyclic p-factors of exponent >= k is logs[k] - logs[k-1].
        let at_least: Vec<usize> = logs.windows(2).map(|w| (w[1] - w[0]) as usize).collect();
        let count = at_least.first().copied().unwrap_or(0);
        for i in 0..count {
            let exponent = at_least.iter().filter(|&&c| c > i).count() as u32;
            let part = p.pow(exponent);
            match factors.get_mut(i) {
                Some(f) => *f *= part,
                None => factors.push(part),
            }
        }
    }
    factors
}

/// Name of an abelian group from its invariant factors: `C1`, `C8`, `V4`,
/// `C8xC2`, `C2^3`, `C4xC2^2`.
pub fn abelian_label(factors: &[usize]) -> String {
    match factors {
        [] => "C1".to_string(),
        [2, 2] => "V4".to_string(),
        _ => {
            let mut parts: Vec<String> = Vec::new();
            let mut i = 0;
            while i < factors.len() {
                let run = factors[i..].iter().take_while(|&&f| f == factors[i]).count();
                parts.push(match run {
                    1 => format!("C{}", factors[i]),
                    _ => format!("C{}^{run}", factors[i]),
                });
                i += run;
            }
            parts.join("x")
        }
    }
}

type Catalog = Arc<Vec<(String, FiniteGroup)>>;

/// Named nonabelian groups of the given order, built once per order.
fn catalog(order: usize) -> Catalog {
    static CACHE: OnceLock<Mutex<HashMap<usize, Catalog>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("catalog cache poisoned").get(&order) {
        return Arc::clone(hit);
    }
    let mut entries: Vec<(String, FiniteGroup)> = Vec::new();
    if order.is_multiple_of(2) {
        let n = order / 2;
        if n >= 3 {
            entries.extend(families::dihedral(n).ok().map(|g| (format!("D{n}"), g)));
        }
        if n >= 4 && n.is_multiple_of(2) {
            let name = if n.is_power_of_two() { format!("Q{order}") } else { format!("Dic{n}") };
            entries.extend(families::dicyclic(n).ok().map(|g| (name, g)));
        }
        if n >= 8 && n.is_power_of_two() {
            entries.extend(families::semidihedral(n).ok().map(|g| (format!("SD{n}"), g)));
            entries.extend(families::semiabelian(n).ok().map(|g| (format!("SA{n}"), g)));
        }
        if order >= 16 && order.is_power_of_two() {
            entries.extend(families::diquaternion(order / 4).ok().map(|g| (format!("DQ{n}"), g)));
        }
    }
    let built = Arc::new(entries);
    cache
        .lock()
        .expect("catalog cache poisoned")
        .insert(order, Arc::clone(&built));
    built
}

fn histogram_text(g: &FiniteGroup) -> String {
    g.order_histogram()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Short name for a group: abelian groups by invariant factors, nonabelian
/// groups by comparison against the named families of the same order, and
/// anything else as `G<order>[nab;<element-order histogram>]`.
pub fn iso_label(g: &FiniteGroup) -> String {
    if g.is_abelian() {
        return abelian_label(&abelian_invariants(g));
    }
    if g.order() <= ISO_BOUND {
        for (name, candidate) in catalog(g.order()).iter() {
            if matches!(isomorphic(g, candidate), Ok(Some(_))) {
                return name.clone();
            }
        }
    }
    format!("G{}[nab;{}]", g.order(), histogram_text(g))
}

/// Name of a subgroup considered as a group in its own right.
pub fn subgroup_label(g: &FiniteGroup, h: &Subgroup) -> String {
    iso_label(&g.subgroup_as_group(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecompositionKind {
    Semidirect,
    Direct,
    Central,
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionKind::Semidirect => "semidirect",
            DecompositionKind::Direct => "direct",
            DecompositionKind::Central => "central",
        })
    }
}

/// `G = N ⋊ H`, `N × H`, or `N ∘ H`, with `parts = [N, H]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub parts: [Subgroup; 2],
    pub labels: [String; 2],
}

struct Labeller<'a> {
    group: &'a FiniteGroup,
    cache: HashMap<Subgroup, String>,
}

impl<'a> Labeller<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        Labeller {
            group,
            cache: HashMap::new(),
        }
    }

    fn label(&mut self, h: &Subgroup) -> String {
        if let Some(l) = self.cache.get(h) {
            return l.clone();
        }
        let l = subgroup_label(self.group, h);
        self.cache.insert(h.clone(), l.clone());
        l
    }
}

fn canonical_sort(list: &mut [Decomposition]) {
    list.sort_by(|a, b| (&a.parts, a.kind).cmp(&(&b.parts, b.kind)));
}

/// All nontrivial splittings `G = N ⋊ H` with `N` normal. A pair in which
/// `H` is also normal is reported once, as `Direct`, with the larger part
/// first.
pub fn semidirect_decompositions(g: &FiniteGroup) -> Result<Vec<Decomposition>> {
    let subs = all_subgroups(g)?;
    let normal: Vec<bool> = subs.iter().map(|s| g.is_normal(s)).collect();
    let n = g.order();
    let mut labels = Labeller::new(g);
    let mut out = Vec::new();
    for (i, big) in subs.iter().enumerate() {
        if !normal[i] || big.is_trivial() || big.size() == n {
            continue;
        }
        for (j, small) in subs.iter().enumerate() {
            if big.size() * small.size() != n || small.is_trivial() {
                continue;
            }
            if big.set().intersection(small.set()).len() != 1 {
                continue;
            }
            let kind = if normal[j] {
                if small > big {
                    continue;
                }
                DecompositionKind::Direct
            } else {
                DecompositionKind::Semidirect
            };
            out.push(Decomposition {
                kind,
                labels: [labels.label(big), labels.label(small)],
                parts: [big.clone(), small.clone()],
            });
        }
    }
    canonical_sort(&mut out);
    Ok(out)
}

/// Pairs of proper subgroups `(H, K)` that commute elementwise, satisfy
/// `HK = G`, and meet in a nontrivial (hence central) subgroup. Listed once
/// per unordered pair, larger part first.
pub fn central_product_decompositions(g: &FiniteGroup) -> Result<Vec<Decomposition>> {
    let subs = all_subgroups(g)?;
    let n = g.order();
    let mut labels = Labeller::new(g);
    let mut out = Vec::new();
    for (i, h) in subs.iter().enumerate() {
        if h.size() == n || h.is_trivial() {
            continue;
        }
        let centralizer = g.centralizer(h);
        for k in &subs[..i] {
            let meet = h.set().intersection(k.set()).len();
            if meet < 2 || h.size() * k.size() != n * meet || !k.is_subgroup_of(&centralizer) {
                continue;
            }
            out.push(Decomposition {
                kind: DecompositionKind::Central,
                labels: [labels.label(h), labels.label(k)],
                parts: [h.clone(), k.clone()],
            });
        }
    }
    canonical_sort(&mut out);
    Ok(out)
}

/// The abstract semidirect product of `n` by `h` under conjugation in `g`:
/// pairs `(a, b)` with `(a1, b1)(a2, b2) = (a1 · b1 a2 b1^-1, b1 b2)`.
/// Isomorphic to `g` exactly when the pair is a semidirect decomposition.
pub fn semidirect_from_action(g: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> Result<FiniteGroup> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let (nn, nh) = (n.size(), h.size());
    let n_index: HashMap<usize, usize> = n.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let h_index: HashMap<usize, usize> = h.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut rows = Vec::with_capacity(nn * nh);
    for &a1 in n.members() {
        for &b1 in h.members() {
            let mut row = Vec::with_capacity(nn * nh);
            for &a2 in n.members() {
                for &b2 in h.members() {
                    let a = g.mul(a1, g.conjugate(a2, b1));
                    row.push(n_index[&a] * nh + h_index[&g.mul(b1, b2)]);
                }
            }
            rows.push(row);
        }
    }
    let labels = n
        .members()
        .iter()
        .flat_map(|&a| h.members().iter().map(move |&b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.label(a), g.label(b)))
        .collect();
    let gens: Vec<usize> = (0..nn * nh).collect();
    FiniteGroup::from_table(labels, rows, gens, "semidirect reconstruction")
}

/// Undirected graph on the elements formed by the cycles of all maximal
/// cyclic subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGraph {
    pub vertex_count: usize,
    /// Unordered pairs stored as `(low, high)`.
    pub edges: BTreeSet<(usize, usize)>,
    pub identity: usize,
}

/// Cyclic subgroups not properly contained in another cyclic subgroup,
/// each with its least-index generator.
pub fn maximal_cyclic_subgroups(g: &FiniteGroup) -> Vec<(Subgroup, usize)> {
    let mut cyclic: BTreeMap<Subgroup, usize> = BTreeMap::new();
    for x in g.elements() {
        cyclic.entry(g.cyclic_subgroup(x)).or_insert(x);
    }
    cyclic
        .iter()
        .filter(|(c, _)| !cyclic.keys().any(|d| d.size() > c.size() && c.is_subgroup_of(d)))
        .map(|(c, &x)| (c.clone(), x))
        .collect()
}

pub fn cycle_graph(g: &FiniteGroup) -> CycleGraph {
    let mut edges = BTreeSet::new();
    for (c, x) in maximal_cyclic_subgroups(g) {
        let k = c.size();
        if k < 2 {
            continue;
        }
        let mut cur = g.identity();
        for _ in 0..k {
            let next = g.mul(cur, x);
            edges.insert((cur.min(next), cur.max(next)));
            cur = next;
        }
    }
    CycleGraph {
        vertex_count: g.order(),
        edges,
        identity: g.identity(),
    }
}

/// Plain graph isomorphism between cycle graphs (the identity is not
/// pinned). Returns a vertex bijection on success.
pub fn cycle_graphs_isomorphic(a: &CycleGraph, b: &CycleGraph) -> Option<Vec<usize>> {
    if a.vertex_count != b.vertex_count || a.edges.len() != b.edges.len() {
        return None;
    }
    let ga = Digraph::undirected(a.vertex_count, a.edges.iter().copied());
    let gb = Digraph::undirected(b.vertex_count, b.edges.iter().copied());
    isomorphisms(&ga, &gb, None, Mode::First).into_iter().next()
}
