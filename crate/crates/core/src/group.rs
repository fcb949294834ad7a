//! Finite groups as multiplication tables, and their subgroups.
//!
//! Elements are indices `0..order` with 0 the identity. The numbering is
//! deterministic: breadth-first closure of the generators in input order.
//! Every group also carries a faithful permutation realization, used for
//! construction, parsing and display; all arithmetic goes through the table.

use crate::abelian::AbelianStructure;
use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Default cap on closure size; table storage is quadratic in the order.
pub const DEFAULT_MAX_ORDER: usize = 8192;

pub struct FiniteGroup {
    order: u32,
    mul: Vec<u32>,
    inv: Vec<u32>,
    label: String,
    degree: u32,
    perms: Vec<Perm>,
    structure_cache: Mutex<HashMap<Vec<u32>, Arc<AbelianStructure>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Closure of permutation generators under composition, numbered in BFS
    /// order over the generators in input order; element 0 is the identity.
    pub fn from_permutations(label: &str, degree: u32, gens: &[Perm], bound: usize) -> Result<Arc<Self>> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::NotBijective {
                    degree,
                    detail: format!("generator degree {} != {}", g.degree(), degree),
                });
            }
        }
        let mut perms: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut head = 0usize;
        while head < perms.len() {
            let current = perms[head].clone();
            for g in gens {
                let next = current.compose(g);
                if !index.contains_key(&next) {
                    if perms.len() >= bound {
                        return Err(Error::SizeBound { bound });
                    }
                    index.insert(next.clone(), perms.len() as u32);
                    perms.push(next);
                }
            }
            head += 1;
        }
        let order = perms.len() as u32;
        let mut mul = vec![0u32; (order as usize) * (order as usize)];
        for a in 0..order as usize {
            for b in 0..order as usize {
                let p = perms[a].compose(&perms[b]);
                mul[a * order as usize + b] = index[&p];
            }
        }
        let group = Self::assemble(label.to_string(), order, mul, degree, perms)?;
        Ok(Arc::new(group))
    }

    /// Builds from an explicit multiplication table (indices, identity 0).
    /// The permutation realization is the left-regular action on `1..=order`.
    pub fn from_table(label: &str, table: &[Vec<u32>]) -> Result<Arc<Self>> {
        let order = table.len() as u32;
        if order == 0 {
            return Err(Error::BadTable("empty table".into()));
        }
        let mut mul = vec![0u32; (order as usize) * (order as usize)];
        for (a, row) in table.iter().enumerate() {
            if row.len() != order as usize {
                return Err(Error::BadTable(format!("row {} has wrong length", a)));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return Err(Error::BadTable(format!("entry {},{} out of range", a, b)));
                }
                mul[a * order as usize + b] = c;
            }
        }
        let mut perms = Vec::with_capacity(order as usize);
        for a in 0..order as usize {
            let images: Vec<u32> = (0..order as usize)
                .map(|b| mul[a * order as usize + b])
                .collect();
            perms.push(Perm::from_images(images).map_err(|_| {
                Error::BadTable(format!("row {} is not a permutation of the elements", a))
            })?);
        }
        let group = Self::assemble(label.to_string(), order, mul, order, perms)?;
        Ok(Arc::new(group))
    }

    fn assemble(label: String, order: u32, mul: Vec<u32>, degree: u32, perms: Vec<Perm>) -> Result<Self> {
        // Identity at 0 and two-sided inverses; associativity by full scan.
        let at = |a: u32, b: u32| mul[(a as usize) * (order as usize) + b as usize];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::BadTable(format!("element 0 is not an identity at {}", a)));
            }
        }
        let mut inv = vec![u32::MAX; order as usize];
        for a in 0..order {
            for b in 0..order {
                if at(a, b) == 0 && at(b, a) == 0 {
                    inv[a as usize] = b;
                    break;
                }
            }
            if inv[a as usize] == u32::MAX {
                return Err(Error::BadTable(format!("element {} has no inverse", a)));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::BadTable(format!(
                            "associativity fails at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            inv,
            label,
            degree,
            perms,
            structure_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Direct product realized on the disjoint union of the two point sets,
    /// so subgroups of products can still be written in cycle notation.
    /// Returns the product with the two canonical embeddings.
    pub fn direct_product(label: &str, a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>, bound: usize) -> Result<ProductParts> {
        let order = (a.order as usize) * (b.order as usize);
        if order > bound {
            return Err(Error::SizeBound { bound });
        }
        let order = order as u32;
        let degree = a.degree + b.degree;
        let bo = b.order;
        let idx = |x: u32, y: u32| x * bo + y;
        let mut mul = vec![0u32; (order as usize) * (order as usize)];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        mul[(idx(x1, y1) as usize) * order as usize + idx(x2, y2) as usize] =
                            idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        let mut perms = Vec::with_capacity(order as usize);
        for x in 0..a.order {
            let pa = a.perms[x as usize].shift(degree, 0);
            for y in 0..b.order {
                let pb = b.perms[y as usize].shift(degree, a.degree);
                perms.push(pa.compose(&pb));
            }
        }
        let group = Arc::new(Self::assemble(label.to_string(), order, mul, degree, perms)?);
        let embed_a: Vec<u32> = (0..a.order).map(|x| idx(x, 0)).collect();
        let embed_b: Vec<u32> = (0..b.order).map(|y| idx(0, y)).collect();
        Ok(ProductParts {
            group,
            left: Arc::clone(a),
            right: Arc::clone(b),
            embed_left: embed_a,
            embed_right: embed_b,
        })
    }

    /// Materializes a subgroup as a standalone group. Element `i` of the new
    /// group is the `i`-th smallest element index of the subgroup, which
    /// keeps the identity at 0. Returns the new group and the map
    /// new index -> old index.
    pub fn from_subgroup(label: &str, sub: &Subgroup) -> Result<(Arc<Self>, Vec<u32>)> {
        let parent = sub.group();
        let elems = sub.elements().to_vec();
        let order = elems.len() as u32;
        let mut pos: HashMap<u32, u32> = HashMap::new();
        for (i, &e) in elems.iter().enumerate() {
            pos.insert(e, i as u32);
        }
        let mut mul = vec![0u32; (order as usize) * (order as usize)];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                mul[i * order as usize + j] = pos[&parent.mul(x, y)];
            }
        }
        let perms: Vec<Perm> = elems.iter().map(|&e| parent.perms[e as usize].clone()).collect();
        let group = Arc::new(Self::assemble(label.to_string(), order, mul, parent.degree, perms)?);
        Ok((group, elems))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as usize) * (self.order as usize) + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// g x g^{-1}
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elem_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn elem_perm(&self, a: u32) -> &Perm {
        &self.perms[a as usize]
    }

    pub fn elem_name(&self, a: u32) -> String {
        self.perms[a as usize].to_string()
    }

    /// Commutes check used all over the conjugacy machinery.
    #[inline]
    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.commute(a, b)))
    }

    pub(crate) fn structure_cache(&self) -> &Mutex<HashMap<Vec<u32>, Arc<AbelianStructure>>> {
        &self.structure_cache
    }

    /// Index of the element realized by the given permutation, if present.
    pub fn elem_from_perm(&self, p: &Perm) -> Option<u32> {
        self.perms.iter().position(|q| q == p).map(|i| i as u32)
    }
}

/// A direct product together with its canonical injections.
pub struct ProductParts {
    pub group: Arc<FiniteGroup>,
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pub embed_left: Vec<u32>,
    pub embed_right: Vec<u32>,
}

/// Subgroup of a fixed parent group: sorted element list plus membership bitset.
#[derive(Clone)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<u32>,
    mask: Vec<u64>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl Subgroup {
    fn from_sorted(group: Arc<FiniteGroup>, elements: Vec<u32>) -> Self {
        let mut mask = vec![0u64; (group.order() as usize + 63) / 64];
        for &e in &elements {
            mask[(e / 64) as usize] |= 1 << (e % 64);
        }
        Subgroup { group, elements, mask }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted(Arc::clone(group), vec![0])
    }

    pub fn full(group: &Arc<FiniteGroup>) -> Self {
        Self::from_sorted(Arc::clone(group), (0..group.order()).collect())
    }

    /// Closure of the given elements under multiplication and inverses.
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[u32]) -> Self {
        let mut in_set = vec![false; group.order() as usize];
        in_set[0] = true;
        let mut elems = vec![0u32];
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            for &g in gens {
                let y = group.mul(x, g);
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    elems.push(y);
                }
            }
            head += 1;
        }
        elems.sort_unstable();
        Self::from_sorted(Arc::clone(group), elems)
    }

    /// Validates that a sorted element list is closed; used by parsers.
    pub fn from_elements(group: &Arc<FiniteGroup>, elements: &[u32]) -> Result<Self> {
        let sub = Self::generated(group, elements);
        if sub.order() as usize != {
            let mut v = elements.to_vec();
            v.push(0);
            v.sort_unstable();
            v.dedup();
            v.len()
        } {
            return Err(Error::BadSubgroup("element list is not closed".into()));
        }
        Ok(sub)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| self.group.commute(a, b)))
    }

    pub fn conjugate(&self, g: u32) -> Subgroup {
        let mut elems: Vec<u32> = self.elements.iter().map(|&x| self.group.conj(g, x)).collect();
        elems.sort_unstable();
        Self::from_sorted(Arc::clone(&self.group), elems)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = self
            .elements
            .iter()
            .copied()
            .filter(|&e| other.contains(e))
            .collect();
        Self::from_sorted(Arc::clone(&self.group), elems)
    }

    /// Subgroup generated by this one together with the extra elements.
    pub fn extended(&self, extra: &[u32]) -> Subgroup {
        let mut gens = self.elements.clone();
        gens.extend_from_slice(extra);
        Self::generated(&self.group, &gens)
    }

    /// Exact centralizer by element scan.
    pub fn centralizer(&self) -> Subgroup {
        let g = &self.group;
        let elems: Vec<u32> = (0..g.order())
            .filter(|&x| self.elements.iter().all(|&h| g.commute(x, h)))
            .collect();
        Self::from_sorted(Arc::clone(g), elems)
    }

    /// Exact normalizer by element scan.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.group;
        let elems: Vec<u32> = (0..g.order())
            .filter(|&x| {
                self.elements
                    .iter()
                    .all(|&h| self.contains(g.conj(x, h)))
            })
            .collect();
        Self::from_sorted(Arc::clone(g), elems)
    }

    /// A small generating set: greedily adds the least element not yet
    /// generated. Deterministic; used for display.
    pub fn min_generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = Vec::new();
        let mut span = Subgroup::trivial(&self.group);
        for &e in &self.elements {
            if !span.contains(e) {
                gens.push(e);
                span = span.extended(&[e]);
            }
        }
        gens
    }
}

/// One representative per conjugacy class of abelian subgroups of `G`.
///
/// Representatives are the lexicographically least element list in their
/// class, listed in deterministic order (by order, then element list).
pub fn abelian_subgroup_classes(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let all = all_abelian_subgroups(group);
    let mut reps: Vec<Vec<u32>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for sub in &all {
        if seen.contains(sub.elements()) {
            continue;
        }
        let mut orbit_min = sub.elements().to_vec();
        for g in 0..group.order() {
            let conj = sub.conjugate(g);
            if conj.elements() < orbit_min.as_slice() {
                orbit_min = conj.elements().to_vec();
            }
            seen.insert(conj.elements().to_vec());
        }
        reps.push(orbit_min);
    }
    reps.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    reps.dedup();
    reps.into_iter()
        .map(|elems| Subgroup::from_sorted(Arc::clone(group), elems))
        .collect()
}

/// Every abelian subgroup of `G`, by closure: an abelian subgroup extends to
/// a larger one only by elements of its centralizer.
pub fn all_abelian_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    let trivial = Subgroup::trivial(group);
    found.insert(trivial.elements().to_vec());
    let mut queue = vec![trivial];
    while let Some(sub) = queue.pop() {
        let cent = sub.centralizer();
        for &g in cent.elements() {
            if sub.contains(g) {
                continue;
            }
            let bigger = sub.extended(&[g]);
            if bigger.is_abelian() && !found.contains(bigger.elements()) {
                found.insert(bigger.elements().to_vec());
                queue.push(bigger);
            }
        }
    }
    found
        .into_iter()
        .map(|elems| Subgroup::from_sorted(Arc::clone(group), elems))
        .collect()
}

/// All subgroups `S` with `H ⊆ S ⊆ C`. Requires `H` normal in `C`, which
/// holds whenever `C` centralizes `H`.
pub fn intermediate_subgroups(h: &Subgroup, c: &Subgroup) -> Result<Vec<Subgroup>> {
    if !h.is_subgroup_of(c) {
        return Err(Error::BadSubgroup("H is not contained in C".into()));
    }
    let g = h.group();
    for &x in c.elements() {
        for &y in h.elements() {
            if !h.contains(g.conj(x, y)) {
                return Err(Error::BadSubgroup("H is not normal in C".into()));
            }
        }
    }
    let mut found: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    found.insert(h.elements().to_vec());
    let mut queue = vec![h.clone()];
    while let Some(sub) = queue.pop() {
        for &r in c.elements() {
            if sub.contains(r) {
                continue;
            }
            let bigger = sub.extended(&[r]);
            if bigger.is_subgroup_of(c) && !found.contains(bigger.elements()) {
                found.insert(bigger.elements().to_vec());
                queue.push(bigger);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|elems| Subgroup::from_sorted(Arc::clone(g), elems))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s4() -> Arc<FiniteGroup> {
        FiniteGroup::from_permutations(
            "S4",
            4,
            &[
                Perm::from_cycles(4, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
            ],
            DEFAULT_MAX_ORDER,
        )
        .unwrap()
    }

    fn d4() -> Arc<FiniteGroup> {
        FiniteGroup::from_permutations(
            "D4",
            4,
            &[
                Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
                Perm::from_cycles(4, &[vec![2, 4]]).unwrap(),
            ],
            DEFAULT_MAX_ORDER,
        )
        .unwrap()
    }

    #[test]
    fn s4_from_transposition_and_four_cycle() {
        assert_eq!(s4().order(), 24);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutations("1", 1, &[], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn d4_from_four_cycle_and_reflection() {
        assert_eq!(d4().order(), 8);
    }

    #[test]
    fn size_bound_enforced() {
        let err = FiniteGroup::from_permutations(
            "S4",
            4,
            &[
                Perm::from_cycles(4, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap(),
            ],
            10,
        );
        assert!(matches!(err, Err(Error::SizeBound { .. })));
    }

    #[test]
    fn product_orders() {
        let c5 = FiniteGroup::from_permutations(
            "C5",
            5,
            &[Perm::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap()],
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        let s3 = FiniteGroup::from_permutations(
            "S3",
            3,
            &[
                Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
                Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
            ],
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        let p = FiniteGroup::direct_product("C5xS3", &c5, &s3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.group.order(), 30);

        let triv = FiniteGroup::from_permutations("1", 1, &[], DEFAULT_MAX_ORDER).unwrap();
        let q = FiniteGroup::direct_product("S3x1", &s3, &triv, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(q.group.order(), 6);
        // embedding of the left factor is bijective
        let mut img = q.embed_left.clone();
        img.sort_unstable();
        img.dedup();
        assert_eq!(img.len(), 6);

        let c2 = FiniteGroup::from_permutations(
            "C2",
            2,
            &[Perm::from_cycles(2, &[vec![1, 2]]).unwrap()],
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        let k4 = FiniteGroup::direct_product("C2xC2", &c2, &c2, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(k4.group.order(), 4);
        assert!((0..4).all(|x| k4.group.elem_order(x) <= 2));
    }

    #[test]
    fn product_size_bound() {
        let s4 = s4();
        assert!(matches!(
            FiniteGroup::direct_product("big", &s4, &s4, 100),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn centralizers() {
        let d4 = d4();
        let r = d4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap()).unwrap();
        let c4 = Subgroup::generated(&d4, &[r]);
        let z = c4.centralizer();
        assert_eq!(z, c4); // Z_{D4}(C4) = C4

        let s4 = s4();
        assert_eq!(Subgroup::trivial(&s4).centralizer(), Subgroup::full(&s4));
        let t12 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2]]).unwrap()).unwrap();
        let h = Subgroup::generated(&s4, &[t12]);
        let z = h.centralizer();
        assert_eq!(z.order(), 4); // <(12)> x <(34)>
        let t34 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![3, 4]]).unwrap()).unwrap();
        assert!(z.contains(t34));
    }

    #[test]
    fn conjugation() {
        let s4 = s4();
        let t12 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2]]).unwrap()).unwrap();
        let t13 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 3]]).unwrap()).unwrap();
        let t23 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![2, 3]]).unwrap()).unwrap();
        let h = Subgroup::generated(&s4, &[t12]);
        assert_eq!(h.conjugate(0), h);
        assert_eq!(h.conjugate(t13), Subgroup::generated(&s4, &[t23]));
        // normal subgroup fixed by all conjugations
        let v4: Vec<u32> = (0..24)
            .filter(|&x| {
                let p = s4.elem_perm(x);
                p.is_identity() || (s4.elem_order(x) == 2 && p.cycles().len() == 2)
            })
            .collect();
        let v4 = Subgroup::generated(&s4, &v4);
        for g in 0..24 {
            assert_eq!(v4.conjugate(g), v4);
        }
        // action property on a sample of pairs
        for g in 0..24u32 {
            for k in 0..24u32 {
                let lhs = h.conjugate(s4.mul(g, k));
                let rhs = h.conjugate(k).conjugate(g);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn normalizer_strictly_contains_centralizer() {
        let s4 = s4();
        let u = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2, 3]]).unwrap()).unwrap();
        let c3 = Subgroup::generated(&s4, &[u]);
        assert_eq!(c3.centralizer().order(), 3);
        // N_{S4}(C3) is the S3 fixing the remaining point
        let n = c3.normalizer();
        assert_eq!(n.order(), 6);
        let t12 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2]]).unwrap()).unwrap();
        assert!(n.contains(t12));
    }

    #[test]
    fn s4_abelian_classes() {
        let s4 = s4();
        let classes = abelian_subgroup_classes(&s4);
        // trivial, even Z/2, odd Z/2, Z/3, Z/4, even K4, odd K4
        assert_eq!(classes.len(), 7);
        let mut orders: Vec<u32> = classes.iter().map(|c| c.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4]);
    }

    #[test]
    fn abelian_group_classes_are_all_subgroups() {
        let c2 = FiniteGroup::from_permutations(
            "C2",
            2,
            &[Perm::from_cycles(2, &[vec![1, 2]]).unwrap()],
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        assert_eq!(abelian_subgroup_classes(&c2).len(), 2);
        let c6 = FiniteGroup::from_permutations(
            "C6",
            6,
            &[Perm::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap()],
            DEFAULT_MAX_ORDER,
        )
        .unwrap();
        // C6 has subgroups 1, C2, C3, C6 — each its own class
        assert_eq!(abelian_subgroup_classes(&c6).len(), 4);
    }

    /// Brute-force subgroup enumeration, used as the oracle for the class
    /// decomposition: the conjugates of the representatives must cover all
    /// abelian subgroups exactly once.
    fn all_subgroups_brute(group: &Arc<FiniteGroup>) -> std::collections::BTreeSet<Vec<u32>> {
        let mut found = std::collections::BTreeSet::new();
        found.insert(vec![0u32]);
        let mut queue = vec![vec![0u32]];
        while let Some(elems) = queue.pop() {
            let sub = Subgroup::from_elements(group, &elems).unwrap();
            for g in 0..group.order() {
                if sub.contains(g) {
                    continue;
                }
                let bigger = sub.extended(&[g]);
                if !found.contains(bigger.elements()) {
                    found.insert(bigger.elements().to_vec());
                    queue.push(bigger.elements().to_vec());
                }
            }
        }
        found
    }

    #[test]
    fn class_reps_cover_all_abelian_subgroups() {
        let s4 = s4();
        let brute: Vec<Vec<u32>> = all_subgroups_brute(&s4)
            .into_iter()
            .filter(|e| Subgroup::from_elements(&s4, e).unwrap().is_abelian())
            .collect();
        let mut covered = std::collections::BTreeSet::new();
        for rep in abelian_subgroup_classes(&s4) {
            for g in 0..24 {
                covered.insert(rep.conjugate(g).elements().to_vec());
            }
        }
        assert_eq!(brute.len(), covered.len());
        for b in brute {
            assert!(covered.contains(&b));
        }
    }

    #[test]
    fn intermediate_subgroup_enumeration() {
        let s4 = s4();
        let t12 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2]]).unwrap()).unwrap();
        let h = Subgroup::generated(&s4, &[t12]);
        let c = h.centralizer();
        // H = C: single subgroup
        assert_eq!(intermediate_subgroups(&c, &c).unwrap(), vec![c.clone()]);
        // between <(12)> and <(12)> x <(34)>: exactly the two of them
        let mids = intermediate_subgroups(&h, &c).unwrap();
        assert_eq!(mids.len(), 2);
        // trivial in C2
        let c2 = Subgroup::generated(&s4, &[t12]);
        let mids = intermediate_subgroups(&Subgroup::trivial(&s4), &c2).unwrap();
        assert_eq!(mids.len(), 2);
        // precondition violation: H not inside C
        assert!(intermediate_subgroups(&c, &h).is_err());
    }

    #[test]
    fn from_subgroup_keeps_structure() {
        let s4 = s4();
        let t12 = s4.elem_from_perm(&Perm::from_cycles(4, &[vec![1, 2]]).unwrap()).unwrap();
        let z = Subgroup::generated(&s4, &[t12]).centralizer();
        let (g, back) = FiniteGroup::from_subgroup("Z", &z).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(back.len(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn bad_table_rejected() {
        // 2x2 "table" with no identity row
        let t = vec![vec![1, 0], vec![0, 0]];
        assert!(FiniteGroup::from_table("bad", &t).is_err());
        let ok = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(FiniteGroup::from_table("C2", &ok).unwrap().order(), 2);
    }
}
