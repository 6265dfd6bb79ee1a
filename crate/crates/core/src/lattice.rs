//! Subgroup lattices: enumeration, index-weighted Hasse diagrams, lattice
//! automorphisms and unicorns, and lattices reduced to conjugacy classes.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph_iso::{isomorphisms, Digraph, Mode};
use crate::group::{ElementSet, FiniteGroup, Subgroup};
use crate::structure::subgroup_label;

/// Largest group order for which subgroups are enumerated.
pub const SUBGROUP_BOUND: usize = 64;

/// Every subgroup exactly once, sorted by (size, members).
///
/// Starts from the cyclic subgroups and closes under pairwise joins; every
/// subgroup is the join of the cyclic subgroups of its elements, so the
/// fixed point is complete.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if g.order() > SUBGROUP_BOUND {
        return Err(Error::TooLarge {
            order: g.order(),
            bound: SUBGROUP_BOUND,
        });
    }
    let mut found: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    let mut seen: HashMap<ElementSet, usize> = HashMap::new();
    for x in g.elements() {
        let c = g.cyclic_subgroup(x);
        if !seen.contains_key(c.set()) {
            seen.insert(c.set().clone(), found.len());
            found.push((c, vec![x]));
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let (a, b) = (&found[i].0, &found[j].0);
            if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                continue;
            }
            let mut gens = found[i].1.clone();
            gens.extend(found[j].1.iter().copied().filter(|&y| !a.contains(y)));
            let joined = g.generated_by(&gens);
            if !seen.contains_key(joined.set()) {
                seen.insert(joined.set().clone(), found.len());
                found.push((joined, gens));
            }
        }
        i += 1;
    }
    let mut subs: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
    subs.sort();
    Ok(subs)
}

fn check_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.members().iter().any(|&x| x >= g.order()) {
        return Err(Error::NotASubgroup);
    }
    Subgroup::new(g, h.members().iter().copied()).map(|_| ())
}

/// Normality of `h` in `g`; fails if `h` is not closed in `g`.
pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    check_subgroup(g, h)?;
    Ok(g.is_normal(h))
}

/// Conjugates `x h x^-1` of `h`, sorted.
pub fn subgroup_class(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Subgroup>> {
    check_subgroup(g, h)?;
    Ok(conjugates(g, h))
}

fn conjugates(g: &FiniteGroup, h: &Subgroup) -> Vec<Subgroup> {
    let n = g.order();
    let class: BTreeSet<Subgroup> = g
        .elements()
        .map(|x| {
            let set = ElementSet::from_indices(n, h.members().iter().map(|&y| g.conjugate(y, x)));
            Subgroup::from_set(set)
        })
        .collect();
    class.into_iter().collect()
}

pub fn intersect(h: &Subgroup, k: &Subgroup) -> Subgroup {
    Subgroup::from_set(h.set().intersection(k.set()))
}

pub fn join(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let gens: Vec<usize> = h.set().union(k.set()).iter().collect();
    g.generated_by(&gens)
}

/// A cover `lower ⋖ upper` between node indices, with `index = |upper|/|lower|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub index: usize,
}

/// Hasse diagram of the subgroup lattice, covers weighted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupLattice {
    pub group_order: usize,
    /// Sorted by (size, members): the trivial subgroup is first, the whole
    /// group last.
    pub nodes: Vec<Subgroup>,
    /// Sorted by (lower, upper).
    pub covers: Vec<Cover>,
}

impl SubgroupLattice {
    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.nodes.binary_search(h).ok()
    }

    fn digraph(&self) -> Digraph {
        let edges = self
            .covers
            .iter()
            .map(|c| (c.lower, c.upper, c.index as u32));
        let colors = self.nodes.iter().map(Subgroup::size).collect();
        Digraph::new(self.nodes.len(), edges, colors)
    }
}

fn covers_of(nodes: &[Subgroup]) -> Vec<Cover> {
    let mut covers = Vec::new();
    for (j, upper) in nodes.iter().enumerate() {
        // Largest candidates first: anything below an existing cover is not one.
        let mut maximal: Vec<usize> = Vec::new();
        for i in (0..j).rev() {
            let lower = &nodes[i];
            if lower.size() == upper.size() || !lower.is_subgroup_of(upper) {
                continue;
            }
            if maximal.iter().all(|&m| !lower.is_subgroup_of(&nodes[m])) {
                maximal.push(i);
            }
        }
        covers.extend(maximal.into_iter().map(|i| Cover {
            lower: i,
            upper: j,
            index: upper.size() / nodes[i].size(),
        }));
    }
    covers.sort();
    covers
}

pub fn hasse(g: &FiniteGroup) -> Result<SubgroupLattice> {
    let nodes = all_subgroups(g)?;
    let covers = covers_of(&nodes);
    Ok(SubgroupLattice {
        group_order: g.order(),
        nodes,
        covers,
    })
}

/// Every permutation of the nodes preserving covers and their indices.
pub fn lattice_automorphisms(l: &SubgroupLattice) -> Vec<Vec<usize>> {
    let d = l.digraph();
    isomorphisms(&d, &d, None, Mode::All)
}

/// Node indices fixed by every lattice automorphism.
pub fn unicorn_nodes(l: &SubgroupLattice) -> Vec<usize> {
    let d = l.digraph();
    (0..l.nodes.len())
        .filter(|&v| {
            (0..l.nodes.len())
                .filter(|&w| w != v && l.nodes[w].size() == l.nodes[v].size())
                .all(|w| isomorphisms(&d, &d, Some((v, w)), Mode::First).is_empty())
        })
        .collect()
}

/// Subgroups fixed by every lattice automorphism.
pub fn unicorns(l: &SubgroupLattice) -> Vec<Subgroup> {
    unicorn_nodes(l).into_iter().map(|v| l.nodes[v].clone()).collect()
}

/// A node bijection `L1 -> L2` preserving covers and indices, if any.
pub fn lattices_equal(a: &SubgroupLattice, b: &SubgroupLattice) -> Option<Vec<usize>> {
    if a.nodes.len() != b.nodes.len() || a.covers.len() != b.covers.len() {
        return None;
    }
    isomorphisms(&a.digraph(), &b.digraph(), None, Mode::First)
        .into_iter()
        .next()
}

/// A conjugacy class of subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClass {
    pub members: Vec<Subgroup>,
    pub label: String,
}

impl SubgroupClass {
    /// Number of conjugates.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Order of each member.
    pub fn order(&self) -> usize {
        self.members[0].size()
    }
}

/// Subgroup lattice collapsed to conjugacy classes. In general a DAG, not
/// a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedLattice {
    /// Ordered by their least member.
    pub classes: Vec<SubgroupClass>,
    /// `(a, b)` when some member of class `a` is a maximal subgroup of some
    /// member of class `b`. Sorted.
    pub edges: Vec<(usize, usize)>,
}

impl ReducedLattice {
    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(SubgroupClass::size).sum()
    }
}

pub fn reduced_lattice(g: &FiniteGroup) -> Result<ReducedLattice> {
    let l = hasse(g)?;
    let mut class_of = vec![usize::MAX; l.nodes.len()];
    let mut classes = Vec::new();
    for (i, h) in l.nodes.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members = conjugates(g, h);
        for m in &members {
            class_of[l.position(m).expect("conjugate is a subgroup")] = classes.len();
        }
        classes.push(SubgroupClass {
            label: subgroup_label(g, h),
            members,
        });
    }
    let edges: BTreeSet<(usize, usize)> = l
        .covers
        .iter()
        .map(|c| (class_of[c.lower], class_of[c.upper]))
        .collect();
    Ok(ReducedLattice {
        classes,
        edges: edges.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::matrix::Mat2;

    fn count(g: FiniteGroup) -> usize {
        all_subgroups(&g).unwrap().len()
    }

    fn catalog() -> Vec<FiniteGroup> {
        let mut out = vec![
            cyclic(1).unwrap(),
            cyclic(6).unwrap(),
            cyclic(8).unwrap(),
            abelian_cn_c2(2).unwrap(),
            abelian_cn_c2(4).unwrap(),
            abelian_cn_c2(8).unwrap(),
            direct_product(&cyclic(4).unwrap(), &abelian_cn_c2(2).unwrap()),
            pauli1().unwrap(),
        ];
        for n in [3, 4, 5, 6, 8] {
            out.push(dihedral(n).unwrap());
        }
        for n in [4, 6, 8] {
            out.push(dicyclic(n).unwrap());
        }
        {
            let n = 8;
            out.push(semidihedral(n).unwrap());
            out.push(semiabelian(n).unwrap());
        }
        out.push(diquaternion(4).unwrap());
        out
    }

    /// Brute-force subgroup count: closed subsets among all subsets.
    fn closed_subset_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        assert!(n <= 12);
        (0u32..1 << n)
            .filter(|mask| mask & (1 << g.identity()) != 0)
            .filter(|&mask| {
                let has = |x: usize| mask & (1 << x) != 0;
                (0..n).all(|a| !has(a) || (0..n).all(|b| !has(b) || has(g.mul(a, b))))
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(count(cyclic(1).unwrap()), 1);
        assert_eq!(count(dicyclic(6).unwrap()), 8);
        assert_eq!(count(semidihedral(8).unwrap()), 15);
        assert_eq!(count(dihedral(8).unwrap()), 19);
        assert_eq!(count(abelian_cn_c2(8).unwrap()), 11);
        assert_eq!(count(semiabelian(8).unwrap()), 11);
        assert!(matches!(all_subgroups(&cyclic(65).unwrap()), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in [dihedral(3).unwrap(), dicyclic(4).unwrap(), dihedral(6).unwrap(), dicyclic(6).unwrap(), abelian_cn_c2(4).unwrap()] {
            assert_eq!(count(g.clone()), closed_subset_count(&g), "{}", g.source());
        }
    }

    #[test]
    fn cyclic_lattice_is_a_chain() {
        let l = hasse(&cyclic(4).unwrap()).unwrap();
        assert_eq!(l.nodes.len(), 3);
        let covers: Vec<(usize, usize, usize)> = l.covers.iter().map(|c| (c.lower, c.upper, c.index)).collect();
        assert_eq!(covers, vec![(0, 1, 2), (1, 2, 2)]);
        assert_eq!(lattice_automorphisms(&l), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn hasse_invariants() {
        for g in catalog() {
            let l = hasse(&g).unwrap();
            assert!(l.nodes[l.bottom()].is_trivial());
            assert_eq!(l.nodes[l.top()].size(), g.order());
            let n = l.nodes.len();
            let mut reach = vec![vec![false; n]; n];
            for c in &l.covers {
                assert!(c.index >= 2);
                assert_eq!(c.index * l.nodes[c.lower].size(), l.nodes[c.upper].size());
                reach[c.lower][c.upper] = true;
            }
            // Transitive closure of the covers equals proper containment.
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let proper = i != j && l.nodes[i].is_subgroup_of(&l.nodes[j]);
                    assert_eq!(reach[i][j], proper, "{}", g.source());
                }
            }
        }
    }

    #[test]
    fn lagrange_and_join_closure() {
        for g in catalog() {
            let subs = all_subgroups(&g).unwrap();
            let set: BTreeSet<&Subgroup> = subs.iter().collect();
            for h in &subs {
                assert_eq!(g.order() % h.size(), 0);
                for k in &subs {
                    assert!(set.contains(&join(&g, h, k)));
                    assert!(set.contains(&intersect(h, k)));
                }
            }
        }
    }

    #[test]
    fn conjugate_classes_have_equal_sizes() {
        for g in catalog() {
            for h in all_subgroups(&g).unwrap() {
                let class = subgroup_class(&g, &h).unwrap();
                assert_eq!(g.order() % class.len(), 0);
                assert!(class.iter().all(|c| c.size() == h.size()));
                assert_eq!(class.len() == 1, is_normal(&g, &h).unwrap());
            }
        }
    }

    #[test]
    fn index_two_and_center_are_normal() {
        for g in catalog() {
            assert!(is_normal(&g, &g.center()).unwrap());
            for h in all_subgroups(&g).unwrap() {
                if 2 * h.size() == g.order() {
                    assert!(is_normal(&g, &h).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_subgroups_are_rejected() {
        let g = dihedral(4).unwrap();
        let c4 = g.cyclic_subgroup(g.generators()[0]);
        assert!(is_normal(&g, &c4).unwrap());
        let foreign = cyclic(16).unwrap().cyclic_subgroup(15);
        assert!(matches!(subgroup_class(&g, &foreign), Err(Error::NotASubgroup)));
        let c8 = cyclic(8).unwrap();
        let not_closed = c8
            .elements()
            .map(|x| c8.cyclic_subgroup(x))
            .find(|h| Subgroup::new(&g, h.members().iter().copied()).is_err())
            .expect("some subgroup of C8 is not closed in D4");
        assert!(matches!(is_normal(&g, &not_closed), Err(Error::NotASubgroup)));
    }

    fn sorted(mut v: Vec<Subgroup>) -> Vec<Subgroup> {
        v.sort();
        v
    }

    fn reflection_pair(g: &FiniteGroup) -> (Subgroup, Subgroup) {
        let f = Mat2::from_ints(8, [0, 1, 1, 0]);
        let s = g.find_matrix(&f).unwrap();
        let r4s = g.find_matrix(&f.neg()).unwrap();
        (g.cyclic_subgroup(s), g.cyclic_subgroup(r4s))
    }

    #[test]
    fn conjugates_of_s_in_semiabelian() {
        let g = semiabelian(8).unwrap();
        let (s, r4s) = reflection_pair(&g);
        assert_eq!(subgroup_class(&g, &s).unwrap(), sorted(vec![s.clone(), r4s]));
        assert!(!is_normal(&g, &s).unwrap());
    }

    /// Oracle: every permutation of the six nodes that preserves weighted covers.
    fn brute_force_automorphisms(l: &SubgroupLattice) -> usize {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let covers: BTreeSet<(usize, usize, usize)> = l.covers.iter().map(|c| (c.lower, c.upper, c.index)).collect();
        permutations(l.nodes.len())
            .into_iter()
            .filter(|p| {
                let mapped: BTreeSet<(usize, usize, usize)> = covers.iter().map(|&(a, b, i)| (p[a], p[b], i)).collect();
                mapped == covers
            })
            .count()
    }

    #[test]
    fn quaternion_lattice_automorphisms() {
        let l = hasse(&dicyclic(4).unwrap()).unwrap();
        assert_eq!(l.nodes.len(), 6);
        let autos = lattice_automorphisms(&l);
        assert_eq!(autos.len(), 6);
        assert_eq!(autos.len(), brute_force_automorphisms(&l));
        assert_eq!(unicorn_nodes(&l), vec![0, 1, 5]);
    }

    #[test]
    fn mystery_lattice() {
        let ab = abelian_cn_c2(8).unwrap();
        let l = hasse(&ab).unwrap();
        assert_eq!(l.nodes.len(), 11);
        let (s, r4s) = reflection_pair(&ab);
        let (vs, vr) = (l.position(&s).unwrap(), l.position(&r4s).unwrap());
        assert!(lattice_automorphisms(&l).iter().any(|p| p[vs] == vr));
        assert_eq!(unicorns(&l).len(), 7);

        let sa = semiabelian(8).unwrap();
        let m = hasse(&sa).unwrap();
        let witness = lattices_equal(&l, &m).expect("same weighted lattice");
        for c in &l.covers {
            assert!(m.covers.contains(&Cover {
                lower: witness[c.lower],
                upper: witness[c.upper],
                index: c.index
            }));
        }
        let uni = unicorns(&m);
        assert_eq!(uni.len(), 7);
        assert!(uni.iter().all(|u| sa.is_normal(u)));
        let normal = m.nodes.iter().filter(|h| sa.is_normal(h)).count();
        assert_eq!(normal, 9);
        let (s, r4s) = reflection_pair(&sa);
        let odd: Vec<Subgroup> = m
            .nodes
            .iter()
            .filter(|h| !uni.contains(h) && 2 * h.size() != sa.order())
            .cloned()
            .collect();
        assert_eq!(odd, sorted(vec![s.clone(), r4s]));
        assert_eq!(subgroup_class(&sa, &s).unwrap().len(), 2);
    }

    #[test]
    fn lattice_comparisons() {
        let h = |g: FiniteGroup| hasse(&g).unwrap();
        assert!(lattices_equal(&h(cyclic(2).unwrap()), &h(cyclic(3).unwrap())).is_none());
        let c4c2c2 = direct_product(&cyclic(4).unwrap(), &abelian_cn_c2(2).unwrap());
        assert!(lattices_equal(&h(c4c2c2), &h(diquaternion(4).unwrap())).is_none());
        for g in catalog() {
            let l = h(g);
            assert!(lattices_equal(&l, &l).is_some());
        }
    }

    #[test]
    fn top_and_bottom_are_unicorns_and_unicorns_are_normal() {
        for g in catalog() {
            let l = hasse(&g).unwrap();
            let uni = unicorn_nodes(&l);
            assert!(uni.contains(&l.bottom()) && uni.contains(&l.top()));
            for v in uni {
                assert!(g.is_normal(&l.nodes[v]), "{}: node {v}", g.source());
            }
        }
    }

    #[test]
    fn quaternion_subgroups_meet_in_minus_one() {
        for n in [8, 16, 32] {
            let g = dicyclic(n).unwrap();
            let minus = g.find_matrix(&Mat2::identity(n).neg()).unwrap();
            let subs = all_subgroups(&g).unwrap();
            for a in subs.iter().filter(|s| !s.is_trivial()) {
                for b in subs.iter().filter(|s| !s.is_trivial()) {
                    assert!(intersect(a, b).contains(minus));
                }
            }
        }
    }

    #[test]
    fn join_of_two_involutions_in_v4() {
        let v4 = abelian_cn_c2(2).unwrap();
        let twos: Vec<Subgroup> = all_subgroups(&v4).unwrap().into_iter().filter(|s| s.size() == 2).collect();
        assert_eq!(twos.len(), 3);
        assert_eq!(join(&v4, &twos[0], &twos[1]), v4.whole());
        assert_eq!(intersect(&twos[0], &v4.whole()), twos[0]);
    }

    fn class_sizes(r: &ReducedLattice) -> Vec<usize> {
        let mut v: Vec<usize> = r.classes.iter().map(SubgroupClass::size).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn reduced_quaternion_lattices() {
        let q16 = reduced_lattice(&dicyclic(8).unwrap()).unwrap();
        assert_eq!(q16.subgroup_count(), 11);
        assert_eq!(class_sizes(&q16), vec![1, 1, 1, 1, 1, 1, 1, 2, 2]);
        let labels: Vec<(&str, usize)> = q16.classes.iter().map(|c| (c.label.as_str(), c.size())).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![("C1", 1), ("C2", 1), ("C4", 1), ("C4", 2), ("C4", 2), ("C8", 1), ("Q16", 1), ("Q8", 1), ("Q8", 1)]
        );
        let q32 = reduced_lattice(&dicyclic(16).unwrap()).unwrap();
        assert_eq!(q32.subgroup_count(), 20);
        assert_eq!(q32.classes.len(), 12);
        assert_eq!(class_sizes(&q32), vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 4, 4]);
    }

    #[test]
    fn abelian_reduced_lattice_is_the_lattice() {
        let g = abelian_cn_c2(8).unwrap();
        let r = reduced_lattice(&g).unwrap();
        assert!(r.classes.iter().all(|c| c.size() == 1));
        assert_eq!(r.edges.len(), hasse(&g).unwrap().covers.len());
    }

    /// Every nontrivial subgroup of Q_{2^n} contains -1, so above the bottom
    /// the reduced lattice is that of Q_{2^n}/<-1> = D_{2^{n-2}}.
    #[test]
    fn quaternion_reduced_lattice_is_dihedral_on_a_stick() {
        for n in 3..=6u32 {
            let half = 1usize << (n - 1);
            let q = dicyclic(half).unwrap();
            let r = reduced_lattice(&q).unwrap();
            let quotient_order = 1usize << (n - 2);
            let d = if quotient_order == 2 { abelian_cn_c2(2).unwrap() } else { dihedral(quotient_order).unwrap() };
            let rd = reduced_lattice(&d).unwrap();
            assert_eq!(r.classes.len(), rd.classes.len() + 1, "n = {n}");
            let mut shifted: Vec<(usize, usize)> = rd.classes.iter().map(|c| (2 * c.order(), c.size())).collect();
            shifted.push((1, 1));
            shifted.sort_unstable();
            let mut got: Vec<(usize, usize)> = r.classes.iter().map(|c| (c.order(), c.size())).collect();
            got.sort_unstable();
            assert_eq!(got, shifted, "n = {n}");
            // The stick: C1 lies only under C2.
            assert_eq!(r.edges.iter().filter(|e| e.0 == 0).count(), 1);
            assert_eq!(r.edges.len(), rd.edges.len() + 1);
            // The central chain C1 < C2 < ... < C_{2^{n-1}} of singleton cyclic classes.
            for k in 0..n {
                let want = format!("C{}", 1usize << k);
                assert!(r.classes.iter().any(|c| c.label == want && c.size() == 1), "n = {n}: {want}");
            }
        }
    }
}
