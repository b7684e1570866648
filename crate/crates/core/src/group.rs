//! Finite permutation groups with a fully enumerated element table.
//!
//! Every group is closed out by breadth-first search from the identity, so
//! element `0` is the identity and element indices are stable across runs.
//! Subgroups are bit-sets over the parent's element indices.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Default upper bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 20_000;

/// Groups up to this order keep a full Cayley table.
const TABLE_LIMIT: usize = 2048;

const ROOT: u32 = u32::MAX;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// The enumeration cap, overridable through `CLASSGRAPH_CAP`.
pub fn enumeration_cap() -> usize {
    std::env::var("CLASSGRAPH_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone)]
pub struct FiniteGroup {
    id: u64,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    // (parent element, generator slot) along the BFS tree; the identity has ROOT.
    tree: Vec<(u32, u32)>,
    // rgen[i * ngens + s] = elements[i] * generators[s]
    rgen: Vec<u32>,
    table: Option<Vec<u32>>,
    normal_cache: OnceLock<Vec<Subgroup>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of a specific parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    members: FixedBitSet,
    order: usize,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Element indices in ascending order.
    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    /// A generating set (element indices into the parent).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(&other.members)
    }

    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.order, self.members.ones().collect())
    }
}

/// Which series a [`SeriesTag`] chain records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    DerivedSeries,
    NormalSeries,
}

#[derive(Clone, Debug)]
pub struct SeriesTag {
    pub kind: SeriesKind,
    pub chain: Vec<Subgroup>,
}

/// `G/N` as a coset-action permutation group, together with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[i]` is the quotient element index of parent element `i`.
    pub projection: Vec<usize>,
}

impl Quotient {
    /// Preimage in the parent of a subgroup of the quotient.
    pub fn preimage(&self, parent: &FiniteGroup, sub: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for (i, &q) in self.projection.iter().enumerate() {
            if sub.contains(q) {
                bits.insert(i);
            }
        }
        parent.subgroup_from_bits(bits)
    }
}

/// A product set `AB`; `subgroup` is set when `AB` is closed.
#[derive(Clone, Debug)]
pub struct ProductSet {
    pub members: FixedBitSet,
    pub size: usize,
    pub subgroup: Option<Subgroup>,
}

/// JSON group file: `{ "name", "degree", "generators": [[images...]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl FiniteGroup {
    /// Closes `gens` under multiplication, with the default cap.
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup> {
        Self::generate_with_cap(degree, gens, enumeration_cap())
    }

    pub fn generate_with_cap(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<FiniteGroup> {
        if degree == 0 {
            return Err(GroupError::InvalidPermutation("degree must be at least 1".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let ngens = gens.len();
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let mut tree = vec![(ROOT, ROOT)];
        let mut rgen: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let product = elements[head].then(g);
                let next = match index.get(&product) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        let k = elements.len() as u32;
                        index.insert(product.clone(), k);
                        elements.push(product);
                        tree.push((head as u32, s as u32));
                        k
                    }
                };
                rgen.push(next);
            }
            head += 1;
        }
        let order = elements.len();
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let orders = elements.iter().map(|e| e.order() as u32).collect();
        let mut group = FiniteGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            degree,
            generators: gens,
            elements,
            index,
            inverse,
            orders,
            tree,
            rgen,
            table: None,
            normal_cache: OnceLock::new(),
        };
        debug_assert!(ngens > 0 || order == 1);
        if order <= TABLE_LIMIT {
            group.table = Some(group.build_table());
        }
        Ok(group)
    }

    // Column j of the table follows from column parent(j) and one generator step.
    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let ngens = self.generators.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            table[i * n] = i as u32;
        }
        for j in 1..n {
            let (parent, slot) = self.tree[j];
            for i in 0..n {
                let left = table[i * n + parent as usize] as usize;
                table[i * n + j] = self.rgen[left * ngens + slot as usize];
            }
        }
        table
    }

    /// Builds a group from its JSON description.
    pub fn from_file(file: &GroupFile) -> Result<FiniteGroup> {
        let gens = file
            .generators
            .iter()
            .map(|images| {
                if images.len() != file.degree {
                    return Err(GroupError::DegreeMismatch {
                        expected: file.degree,
                        found: images.len(),
                    });
                }
                Permutation::from_images(images.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::generate(file.degree, gens)
    }

    pub fn to_file(&self, name: &str) -> GroupFile {
        GroupFile {
            name: name.to_string(),
            degree: self.degree,
            generators: self
                .generators
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g] as usize).collect()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&k| k as usize)
    }

    fn require(&self, p: &Permutation) -> Result<usize> {
        self.index_of(p).ok_or(GroupError::ElementNotInGroup)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut base = x;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn order_of(&self, x: usize) -> u64 {
        self.orders[x] as u64
    }

    pub fn element_order(&self, x: &Permutation) -> Result<u64> {
        Ok(self.order_of(self.require(x)?))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| arith::lcm(acc, o as u64))
    }

    /// Number of elements of each order.
    pub fn order_spectrum(&self) -> BTreeMap<u64, usize> {
        let mut spectrum = BTreeMap::new();
        for &o in &self.orders {
            *spectrum.entry(o as u64).or_insert(0) += 1;
        }
        spectrum
    }

    /// Primes dividing the order.
    pub fn prime_divisors(&self) -> Vec<u64> {
        arith::prime_divisors(self.order() as u64)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Right multiplication of `x` by generator slot `s`.
    pub(crate) fn times_generator(&self, x: usize, s: usize) -> usize {
        self.rgen[x * self.generators.len() + s] as usize
    }

    /// Extends generator images to a homomorphism into `target`.
    ///
    /// Returns `None` when the assignment does not define a homomorphism.
    pub fn homomorphism(&self, target: &FiniteGroup, gen_images: &[usize]) -> Option<Vec<usize>> {
        assert_eq!(gen_images.len(), self.generators.len());
        let mut map = vec![0usize; self.order()];
        for j in 1..self.order() {
            let (parent, slot) = self.tree[j];
            map[j] = target.mul(map[parent as usize], gen_images[slot as usize]);
        }
        for i in 0..self.order() {
            for (s, &img) in gen_images.iter().enumerate() {
                if map[self.times_generator(i, s)] != target.mul(map[i], img) {
                    return None;
                }
            }
        }
        Some(map)
    }

    // ---- subgroups -------------------------------------------------------

    fn subgroup_raw(&self, members: FixedBitSet, gens: Vec<usize>) -> Subgroup {
        Subgroup {
            parent: self.id,
            order: members.count_ones(..),
            members,
            gens,
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert_range(..);
        self.subgroup_raw(bits, self.generator_indices())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        self.subgroup_raw(bits, Vec::new())
    }

    fn closure_bits(&self, gens: &[usize]) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.put(y) {
                    queue.push_back(y);
                }
            }
        }
        bits
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup_generated(&self, candidates: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        let mut bits = self.closure_bits(&gens);
        for &c in candidates {
            if !bits.contains(c) {
                gens.push(c);
                bits = self.closure_bits(&gens);
            }
        }
        self.subgroup_raw(bits, gens)
    }

    /// Wraps a member set that is known to be closed.
    pub fn subgroup_from_bits(&self, bits: FixedBitSet) -> Subgroup {
        let members: Vec<usize> = bits.ones().collect();
        let sub = self.subgroup_generated(&members);
        debug_assert_eq!(sub.members, bits, "member set is not a subgroup");
        sub
    }

    /// Checks closure under products and inverses, then wraps the set.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Option<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for &e in elements {
            bits.insert(e);
        }
        if !bits.contains(0) {
            return None;
        }
        for a in bits.ones() {
            if !bits.contains(self.inv(a)) {
                return None;
            }
            for b in bits.ones() {
                if !bits.contains(self.mul(a, b)) {
                    return None;
                }
            }
        }
        Some(self.subgroup_from_bits(bits))
    }

    fn check_parent(&self, h: &Subgroup) -> Result<()> {
        if h.parent == self.id {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    /// Re-enumerates a subgroup as a permutation group of the same degree.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        self.check_parent(h)?;
        let gens = h.gens.iter().map(|&g| self.elements[g].clone()).collect();
        FiniteGroup::generate(self.degree, gens)
    }

    /// Maps a subgroup of `self` into `other` by permutation identity.
    ///
    /// Returns `None` when some member is not an element of `other`.
    pub fn transfer(&self, h: &Subgroup, other: &FiniteGroup) -> Option<Subgroup> {
        let gens = h
            .gens
            .iter()
            .map(|&g| other.index_of(&self.elements[g]))
            .collect::<Option<Vec<_>>>()?;
        let sub = other.subgroup_generated(&gens);
        (sub.order == h.order).then_some(sub)
    }

    pub fn centralizer_of(&self, x: usize) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if self.mul(g, x) == self.mul(x, g) {
                bits.insert(g);
            }
        }
        self.subgroup_from_bits(bits)
    }

    /// `C_G(x)`.
    pub fn centralizer(&self, x: &Permutation) -> Result<Subgroup> {
        Ok(self.centralizer_of(self.require(x)?))
    }

    /// Elements of `self` commuting with every element of `h`.
    pub fn centralizer_of_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check_parent(h)?;
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if h.gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                bits.insert(g);
            }
        }
        Ok(self.subgroup_from_bits(bits))
    }

    /// `Z(G)`, the common centralizer of the generators.
    pub fn center(&self) -> Subgroup {
        let gens = self.generator_indices();
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)) {
                bits.insert(g);
            }
        }
        self.subgroup_from_bits(bits)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check_parent(h)?;
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if h.gens.iter().all(|&x| h.contains(self.conj(x, g))) {
                bits.insert(g);
            }
        }
        Ok(self.subgroup_from_bits(bits))
    }

    /// True iff `g⁻¹hg ∈ H` for every generator `g` of `G` and every `h ∈ H`.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        if h.parent != self.id {
            return false;
        }
        let gens = self.generator_indices();
        h.members
            .ones()
            .all(|x| gens.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// The smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        let ggens = self.generator_indices();
        let mut sub = self.subgroup_generated(set);
        loop {
            let extra: Vec<usize> = sub
                .gens
                .iter()
                .flat_map(|&h| ggens.iter().map(move |&g| (h, g)))
                .map(|(h, g)| self.conj(h, g))
                .filter(|&c| !sub.contains(c))
                .collect();
            if extra.is_empty() {
                return sub;
            }
            let mut all = sub.gens.clone();
            all.extend(extra);
            sub = self.subgroup_generated(&all);
        }
    }

    /// Orbits of `members` under conjugation by the generators of `G`.
    ///
    /// `members` must be a union of conjugacy classes.
    pub fn conjugation_orbits(&self, members: &FixedBitSet) -> Vec<Vec<usize>> {
        let gens = self.generator_indices();
        let ginv: Vec<usize> = gens.iter().map(|&g| self.inv(g)).collect();
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut orbits = Vec::new();
        for start in members.ones() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for (&g, &gi) in gens.iter().zip(&ginv) {
                    let y = self.mul(self.mul(gi, x), g);
                    if !seen.put(y) {
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Conjugacy classes of the whole group, in order of first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut all = FixedBitSet::with_capacity(self.order());
        all.insert_range(..);
        self.conjugation_orbits(&all)
    }

    /// All normal subgroups, sorted by order and then by member indices.
    ///
    /// Every normal subgroup is a union of classes, hence a join of normal
    /// closures of single classes; the list is the join-closure of those.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normal_cache.get_or_init(|| self.compute_normal_subgroups())
    }

    fn compute_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut atoms: Vec<Subgroup> = Vec::new();
        for class in self.conjugacy_classes() {
            if class == [0] {
                continue;
            }
            let closure = self.subgroup_generated(&class);
            if !atoms.contains(&closure) {
                atoms.push(closure);
            }
        }
        let mut found: HashSet<Subgroup> = HashSet::new();
        let mut work = vec![self.trivial()];
        found.insert(self.trivial());
        for a in &atoms {
            if found.insert(a.clone()) {
                work.push(a.clone());
            }
        }
        while let Some(current) = work.pop() {
            for atom in &atoms {
                if atom.is_subset_of(&current) {
                    continue;
                }
                let mut gens = current.gens.clone();
                gens.extend(atom.gens.iter().copied());
                let joined = self.subgroup_generated(&gens);
                if !found.contains(&joined) {
                    found.insert(joined.clone());
                    work.push(joined);
                }
            }
        }
        let mut list: Vec<Subgroup> = found.into_iter().collect();
        list.sort_by_cached_key(|s| s.sort_key());
        list
    }

    /// Minimal elements of the poset of nontrivial normal subgroups.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let normals: Vec<&Subgroup> = self
            .normal_subgroups()
            .iter()
            .filter(|s| !s.is_trivial())
            .collect();
        normals
            .iter()
            .filter(|m| {
                !normals
                    .iter()
                    .any(|k| k.order < m.order && k.is_subset_of(m))
            })
            .map(|m| (*m).clone())
            .collect()
    }

    /// `G/N` via the action on right cosets `Ng`.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        self.check_parent(n)?;
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let unassigned = u32::MAX;
        let mut coset = vec![unassigned; self.order()];
        let mut reps = Vec::new();
        let nmembers = n.elements();
        for g in 0..self.order() {
            if coset[g] != unassigned {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &m in &nmembers {
                coset[self.mul(m, g)] = id;
            }
        }
        let index = reps.len();
        let ngens = self.generators.len();
        let mut qgens = Vec::with_capacity(ngens);
        for s in 0..ngens {
            let images = reps
                .iter()
                .map(|&r| coset[self.times_generator(r, s)])
                .collect();
            qgens.push(Permutation::from_images(images)?);
        }
        let group = FiniteGroup::generate(index, qgens)?;
        let slots: Vec<usize> = (0..ngens)
            .map(|s| group.index_of(&group.generators[s]).unwrap_or(0))
            .collect();
        let projection = self
            .homomorphism(&group, &slots)
            .expect("coset action is a homomorphism");
        Ok(Quotient { group, projection })
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let mut bits = a.members.clone();
        bits.intersect_with(&b.members);
        Ok(self.subgroup_from_bits(bits))
    }

    /// The set `AB`, flagged with the subgroup when it is one.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Result<ProductSet> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        let mut ab = FixedBitSet::with_capacity(self.order());
        let mut ba = FixedBitSet::with_capacity(self.order());
        let bm = b.elements();
        for x in a.members.ones() {
            for &y in &bm {
                ab.insert(self.mul(x, y));
                ba.insert(self.mul(y, x));
            }
        }
        let size = ab.count_ones(..);
        let subgroup = (ab == ba).then(|| self.subgroup_from_bits(ab.clone()));
        Ok(ProductSet {
            members: ab,
            size,
            subgroup,
        })
    }

    /// A Sylow `p`-subgroup, grown greedily inside normalizers.
    ///
    /// Returns the trivial subgroup when `p` does not divide the order.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = arith::p_part(self.order() as u64, p) as usize;
        if target == 1 {
            return self.trivial();
        }
        let is_p_power = |n: u64| n == 1 || arith::prime_power_base(n) == Some(p);
        // start from a cyclic p-subgroup of largest order
        let start = (0..self.order())
            .filter(|&x| is_p_power(self.order_of(x)))
            .max_by_key(|&x| (self.order_of(x), std::cmp::Reverse(x)))
            .unwrap_or(0);
        let mut current = self.subgroup_generated(&[start]);
        while current.order < target {
            let normalizer = self.normalizer(&current).expect("same parent");
            let step = normalizer.members.ones().find_map(|x| {
                if current.contains(x) {
                    return None;
                }
                let mut k = 1u64;
                let mut y = x;
                while !current.contains(y) {
                    y = self.mul(y, x);
                    k += 1;
                }
                is_p_power(k).then_some(x)
            });
            let x = step.expect("a non-Sylow p-subgroup grows inside its normalizer");
            let mut gens = current.gens.clone();
            gens.push(x);
            current = self.subgroup_generated(&gens);
        }
        current
    }

    /// The largest normal `p`-subgroup.
    pub fn o_p(&self, p: u64) -> Subgroup {
        self.normal_subgroups()
            .iter()
            .filter(|s| s.order == 1 || arith::prime_power_base(s.order as u64) == Some(p))
            .max_by_key(|s| s.order)
            .cloned()
            .unwrap_or_else(|| self.trivial())
    }

    /// Product of the `O_p` over primes dividing the order.
    pub fn fitting_subgroup(&self) -> Subgroup {
        let mut gens = Vec::new();
        for p in self.prime_divisors() {
            gens.extend_from_slice(&self.o_p(p).gens);
        }
        self.subgroup_generated(&gens)
    }

    /// `G'`, the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let gens = self.generator_indices();
        let comms: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    /// Derived subgroup of a subgroup `h`, as a subgroup of `self`.
    pub fn derived_subgroup_of(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check_parent(h)?;
        let comms: Vec<usize> = h
            .gens
            .iter()
            .flat_map(|&a| h.gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        // normal closure inside h
        let mut sub = self.subgroup_generated(&comms);
        loop {
            let extra: Vec<usize> = sub
                .gens
                .iter()
                .flat_map(|&x| h.gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&c| !sub.contains(c))
                .collect();
            if extra.is_empty() {
                return Ok(sub);
            }
            let mut all = sub.gens.clone();
            all.extend(extra);
            sub = self.subgroup_generated(&all);
        }
    }

    /// `G ≥ G' ≥ G'' ≥ …` until it stabilizes.
    pub fn derived_series(&self) -> SeriesTag {
        let mut chain = vec![self.whole()];
        loop {
            let last = chain.last().expect("nonempty");
            let next = self.derived_subgroup_of(last).expect("same parent");
            if next.order == last.order {
                break;
            }
            chain.push(next);
        }
        SeriesTag {
            kind: SeriesKind::DerivedSeries,
            chain,
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series()
            .chain
            .last()
            .map(|s| s.is_trivial())
            .unwrap_or(true)
    }

    /// Applies a point relabeling to every generator and re-enumerates.
    pub fn relabeled(&self, relabel: &Permutation) -> Result<FiniteGroup> {
        let gens = self.generators.iter().map(|g| g.relabeled(relabel)).collect();
        FiniteGroup::generate(self.degree, gens)
    }
}
