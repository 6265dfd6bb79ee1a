//! Abstract finite groups given by multiplication tables.
//!
//! Groups are built once (from matrix generators or directly as a table) and
//! are immutable afterwards. Products are read left to right:
//! `mul(a, b)` is the element `a·b`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Mat2;

/// Default closure cap for [`generate_group`].
pub const DEFAULT_CAP: usize = 256;

/// A set of element indices backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_indices(universe: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1u64 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1u64 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup of some parent group, as a strictly sorted member list.
///
/// Ordered by size first, then lexicographically by members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    set: ElementSet,
}

impl Subgroup {
    /// Checks closure (and hence, by finiteness, the subgroup axioms).
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = ElementSet::from_indices(group.order(), members);
        if !set.contains(group.identity()) {
            return Err(Error::NotASubgroup);
        }
        for a in set.iter() {
            for b in set.iter() {
                if !set.contains(group.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Self::from_set(set))
    }

    pub(crate) fn from_set(set: ElementSet) -> Self {
        Subgroup {
            members: set.iter().collect(),
            set,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    source: String,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking the Latin-square
    /// property, the identity, and that `generators` generate everything.
    /// Associativity is checked separately by [`FiniteGroup::is_associative`].
    pub fn from_table(
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        source: impl Into<String>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidTable(format!("{} labels for {n} elements", labels.len())));
        }
        if let Some(row) = table.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidTable(format!("row {row} has the wrong length")));
        }
        check_latin_square(&table)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidTable(format!("generator index {g} out of range")));
        }
        let group = Self::assemble(labels, table.into_iter().flatten().collect(), identity, generators, source.into());
        if group.generated_by(&group.generators).size() != n {
            return Err(Error::InvalidTable("generators do not generate the group".into()));
        }
        Ok(group)
    }

    fn assemble(
        labels: Vec<String>,
        table: Vec<usize>,
        identity: usize,
        generators: Vec<usize>,
        source: String,
    ) -> Self {
        let n = labels.len();
        let mut inverses = vec![usize::MAX; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n).find(|&b| table[a * n + b] == identity).expect("latin square");
        }
        FiniteGroup {
            labels,
            table,
            identity,
            generators,
            source,
            inverses,
        }
    }

    /// Table construction for code paths that guarantee a valid group.
    pub(crate) fn from_trusted(
        labels: Vec<String>,
        table: Vec<usize>,
        identity: usize,
        generators: Vec<usize>,
        source: impl Into<String>,
    ) -> Self {
        Self::assemble(labels, table, identity, generators, source.into())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index of the element whose canonical matrix form is `m`.
    pub fn find_matrix(&self, m: &Mat2) -> Option<usize> {
        self.find_label(&m.to_string())
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self> {
        let n = self.order();
        if generators.iter().any(|&g| g >= n) || self.generated_by(&generators).size() != n {
            return Err(Error::InvalidTable("generators do not generate the group".into()));
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    /// `x^k` for any integer `k`.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(x) } else { x };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inverse(yx), xy)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.spanning_elements();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Generators if any are designated, otherwise every element.
    fn spanning_elements(&self) -> Vec<usize> {
        if self.generators.is_empty() {
            self.elements().collect()
        } else {
            self.generators.clone()
        }
    }

    /// Exhaustive O(n^3) associativity check.
    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_set(ElementSet::from_indices(self.order(), self.elements()))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_set(ElementSet::from_indices(self.order(), [self.identity]))
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut set = ElementSet::from_indices(n, [self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_set(set)
    }

    pub fn cyclic_subgroup(&self, x: usize) -> Subgroup {
        self.generated_by(&[x])
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Subgroup {
        let gens = self.spanning_elements();
        let set = ElementSet::from_indices(
            self.order(),
            self.elements()
                .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x))),
        );
        Subgroup::from_set(set)
    }

    /// Elements commuting with every member of `h`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let set = ElementSet::from_indices(
            self.order(),
            self.elements()
                .filter(|&x| h.members().iter().all(|&g| self.mul(x, g) == self.mul(g, x))),
        );
        Subgroup::from_set(set)
    }

    /// Orbits of `x -> g x g^-1`, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = ElementSet::new(n);
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let class = ElementSet::from_indices(n, self.elements().map(|g| self.conjugate(x, g)));
            for y in class.iter() {
                seen.insert(y);
            }
            classes.push(class.iter().collect());
        }
        classes
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let n = self.order();
        let comms = ElementSet::from_indices(
            n,
            self.elements()
                .flat_map(|x| self.elements().map(move |y| (x, y)))
                .map(|(x, y)| self.commutator(x, y)),
        );
        let gens: Vec<usize> = comms.iter().collect();
        self.generated_by(&gens)
    }

    /// Normality test by conjugating with the generators (or all elements
    /// when none are designated).
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.spanning_elements().iter().all(|&g| {
            h.members()
                .iter()
                .all(|&x| h.contains(self.conjugate(x, g)) && h.contains(self.conjugate(x, self.inverse(g))))
        })
    }

    /// Count of elements of each order.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for x in self.elements() {
            *hist.entry(self.element_order(x)).or_insert(0) += 1;
        }
        hist
    }

    /// Quotient by a normal subgroup. Cosets are represented by their least
    /// element index and ordered by it, so the identity coset comes first.
    pub fn quotient(&self, normal: &Subgroup) -> Result<FiniteGroup> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &h in normal.members() {
                coset_of[self.mul(x, h)] = id;
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        let labels = reps.iter().map(|&r| format!("({})N", self.label(r))).collect();
        let mut gens: Vec<usize> = self
            .spanning_elements()
            .iter()
            .map(|&g| coset_of[g])
            .filter(|&c| c != coset_of[self.identity])
            .collect();
        gens.dedup();
        Ok(FiniteGroup::from_trusted(
            labels,
            table,
            coset_of[self.identity],
            gens,
            format!("quotient of {} by a subgroup of order {}", self.source, normal.size()),
        ))
    }

    /// The subgroup `h` as a group in its own right, labels inherited.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let index: HashMap<usize, usize> =
            h.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = h.size();
        let mut table = Vec::with_capacity(k * k);
        for &a in h.members() {
            for &b in h.members() {
                table.push(index[&self.mul(a, b)]);
            }
        }
        let labels = h.members().iter().map(|&x| self.label(x).to_string()).collect();
        let group = FiniteGroup::from_trusted(labels, table, index[&self.identity], Vec::new(), "subgroup");
        let gens = group.small_generating_set();
        FiniteGroup { generators: gens, ..group }
    }

    /// Greedy generating set: repeatedly add the highest-order element not
    /// yet generated (lowest index on ties).
    pub fn small_generating_set(&self) -> Vec<usize> {
        let orders: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        while span.size() < self.order() {
            let pick = self
                .elements()
                .filter(|&x| !span.contains(x))
                .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
                .expect("span is proper");
            gens.push(pick);
            span = self.generated_by(&gens);
        }
        gens
    }

    /// Evaluate a word with the given generator images.
    pub fn evaluate(&self, gens: &[usize], word: &Word) -> Result<usize> {
        let mut acc = self.identity;
        for &(g, e) in &word.0 {
            let x = *gens.get(g).ok_or(Error::BadWord {
                index: g,
                available: gens.len(),
            })?;
            acc = self.mul(acc, self.power(x, e));
        }
        Ok(acc)
    }

    /// True iff every relator evaluates to the identity on the designated
    /// generators.
    pub fn check_relations(&self, relators: &[Word]) -> Result<bool> {
        self.check_relations_with(&self.generators, relators)
    }

    pub fn check_relations_with(&self, gens: &[usize], relators: &[Word]) -> Result<bool> {
        let mut ok = true;
        for w in relators {
            ok &= self.evaluate(gens, w)? == self.identity;
        }
        Ok(ok)
    }
}

fn check_latin_square(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    for (r, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTable(format!("row {r} is not a permutation")));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            if std::mem::replace(&mut seen[row[c]], true) {
                return Err(Error::InvalidTable(format!("column {c} is not a permutation")));
            }
        }
    }
    Ok(())
}

/// A word in generator positions and integer exponents, e.g. `r s r s^-1`
/// is `[(0,1), (1,1), (0,1), (1,-1)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    /// Parses whitespace-separated syllables `name` or `name^k` against the
    /// given generator names.
    pub fn parse(text: &str, names: &[&str]) -> Result<Word> {
        let mut out = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::InvalidParameter(format!("bad exponent in {token:?}")))?,
                ),
                None => (token, 1),
            };
            let g = names
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown generator {name:?}")))?;
            out.push((g, exp));
        }
        Ok(Word(out))
    }

    pub fn parse_all(texts: &[&str], names: &[&str]) -> Result<Vec<Word>> {
        texts.iter().map(|t| Word::parse(t, names)).collect()
    }
}

/// Breadth-first closure of `gens` under right multiplication, starting from
/// the identity. Element 0 is the identity and labels are canonical matrix
/// strings.
pub fn generate_group(gens: &[Mat2], cap: usize) -> Result<FiniteGroup> {
    assert!(cap >= 1, "generate_group: cap must be positive");
    let m = gens.first().map_or(1, Mat2::order);
    if let Some(bad) = gens.iter().find(|g| g.order() != m) {
        return Err(Error::OrderMismatch {
            left: m,
            right: bad.order(),
        });
    }
    let mut elements = vec![Mat2::identity(m)];
    let mut index: HashMap<Mat2, usize> = HashMap::from([(Mat2::identity(m), 0)]);
    // right[x][g] = index of x·gens[g], filled during the closure.
    let mut right: Vec<Vec<usize>> = Vec::new();
    // parent[y] = (x, g) with y = x·gens[g] and x discovered before y.
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let y = elements[next].mul(g)?;
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() == cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push((next, gi));
                    elements.len() - 1
                }
            };
            row.push(id);
        }
        right.push(row);
        next += 1;
    }
    let n = elements.len();
    // a·y = (a·x)·g, so each column follows from an earlier one.
    let mut table = vec![0; n * n];
    for a in 0..n {
        table[a * n] = a;
        for y in 1..n {
            let (x, g) = parent[y];
            table[a * n + y] = right[table[a * n + x]][g];
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    let labels = elements.iter().map(Mat2::to_string).collect();
    Ok(FiniteGroup::from_trusted(labels, table, 0, generators, "matrix closure"))
}
