//! Presentations of the combinatorial symbols group and its prefilter
//! quotients, class arithmetic with exact zero tests, and the functorial
//! maps: restriction, products, psi/omega linear extensions, and the
//! projectivized-bundle class formula.

use crate::abelian::{AbelianStructure, Character};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, ProductParts, Subgroup};
use crate::lattice::{IntMatrix, QuotientStructure};
use crate::symbols::{enumerate_symbols as enumerate_raw, relation_b1, relation_b2, IndexedSymbol, LinComb, Symbol};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

pub use crate::group::ProductParts as ProductGroup;

/// A conjugation-closed set of pairs `(H, S)`, `S` the lift of `Y`.
#[derive(Clone)]
pub struct Prefilter {
    group: Arc<FiniteGroup>,
    pairs: BTreeSet<(Vec<u32>, Vec<u32>)>,
}

impl Prefilter {
    /// Builds from representative pairs; closure under conjugation is applied
    /// here, so membership tests are exact set lookups.
    pub fn new(group: &Arc<FiniteGroup>, pairs: &[(Subgroup, Subgroup)]) -> Result<Prefilter> {
        let mut closed = BTreeSet::new();
        for (h, s) in pairs {
            if !h.is_abelian() {
                return Err(Error::BadSubgroup("prefilter H must be abelian".into()));
            }
            if !h.is_subgroup_of(s) || !s.is_subgroup_of(&h.centralizer()) {
                return Err(Error::BadSubgroup(
                    "prefilter pair needs H ⊆ S ⊆ Z_G(H)".into(),
                ));
            }
            for g in 0..group.order() {
                closed.insert((
                    h.conjugate(g).elements().to_vec(),
                    s.conjugate(g).elements().to_vec(),
                ));
            }
        }
        Ok(Prefilter {
            group: Arc::clone(group),
            pairs: closed,
        })
    }

    /// The prefilter containing every pair; projection along it is the
    /// identity.
    pub fn all(group: &Arc<FiniteGroup>) -> Result<Prefilter> {
        let mut pairs = Vec::new();
        for h in crate::group::all_abelian_subgroups(group) {
            let z = h.centralizer();
            for s in crate::group::intermediate_subgroups(&h, &z)? {
                pairs.push((h.clone(), s));
            }
        }
        Prefilter::new(group, &pairs)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, h: &Subgroup, s: &Subgroup) -> bool {
        self.pairs
            .contains(&(h.elements().to_vec(), s.elements().to_vec()))
    }

    /// The closure hypothesis under which the reduced presentation is valid:
    /// for every pair `(H, S)` with `H` nontrivial and every `g` in `Z_G(H)`
    /// with `g ∈ S` and `S ⊆ Z_G(g)`, the pair `(⟨H, g⟩, S)` is again in the
    /// prefilter.
    pub fn is_closed(&self) -> bool {
        let group = &self.group;
        for (h_els, s_els) in &self.pairs {
            if h_els.len() == 1 {
                continue;
            }
            let h = Subgroup::from_elements(group, h_els).expect("stored pair");
            let s = Subgroup::from_elements(group, s_els).expect("stored pair");
            let z = h.centralizer();
            for &g in z.elements() {
                if !s.contains(g) {
                    continue;
                }
                let zg: Vec<u32> = (0..group.order()).filter(|&x| group.commute(x, g)).collect();
                let zg = Subgroup::from_elements(group, &zg).expect("centralizer of an element");
                if !s.is_subgroup_of(&zg) {
                    continue;
                }
                let h2 = h.extended(&[g]);
                if !self
                    .pairs
                    .contains(&(h2.elements().to_vec(), s_els.clone()))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// A sparse integer combination of canonical symbols of fixed dimension.
#[derive(Clone, Debug)]
pub struct BurnsideClass {
    group: Arc<FiniteGroup>,
    n: u32,
    terms: LinComb<Symbol>,
}

impl PartialEq for BurnsideClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.n == other.n && self.terms == other.terms
    }
}
impl Eq for BurnsideClass {}

impl BurnsideClass {
    pub fn zero(group: &Arc<FiniteGroup>, n: u32) -> Self {
        BurnsideClass {
            group: Arc::clone(group),
            n,
            terms: LinComb::zero(),
        }
    }

    pub fn from_symbol(sym: &Symbol) -> Self {
        BurnsideClass {
            group: Arc::clone(sym.group()),
            n: sym.n(),
            terms: LinComb::term(sym.canonicalize(), 1),
        }
    }

    pub fn from_terms(group: &Arc<FiniteGroup>, n: u32, entries: &[(i64, Symbol)]) -> Result<Self> {
        let mut terms = LinComb::zero();
        for (c, sym) in entries {
            if !Arc::ptr_eq(sym.group(), group) {
                return Err(Error::GroupMismatch);
            }
            if sym.n() != n {
                return Err(Error::Dimension(format!(
                    "symbol of dimension {} in a class of dimension {}",
                    sym.n(),
                    n
                )));
            }
            terms.add_term(sym.canonicalize(), *c);
        }
        Ok(BurnsideClass {
            group: Arc::clone(group),
            n,
            terms,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Symbol> {
        &self.terms
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &BurnsideClass) -> Result<BurnsideClass> {
        self.compatible(other)?;
        Ok(BurnsideClass {
            group: Arc::clone(&self.group),
            n: self.n,
            terms: self.terms.add(&other.terms),
        })
    }

    pub fn sub(&self, other: &BurnsideClass) -> Result<BurnsideClass> {
        self.compatible(other)?;
        Ok(BurnsideClass {
            group: Arc::clone(&self.group),
            n: self.n,
            terms: self.terms.sub(&other.terms),
        })
    }

    pub fn scale(&self, k: i64) -> BurnsideClass {
        BurnsideClass {
            group: Arc::clone(&self.group),
            n: self.n,
            terms: self.terms.scale(k),
        }
    }

    fn compatible(&self, other: &BurnsideClass) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.n != other.n {
            return Err(Error::Dimension("class dimensions differ".into()));
        }
        Ok(())
    }

    /// Drops coefficients on symbols whose pair `(H, Y)` is outside the
    /// prefilter.
    pub fn project(&self, prefilter: &Prefilter) -> Result<BurnsideClass> {
        if !Arc::ptr_eq(&self.group, prefilter.group()) {
            return Err(Error::GroupMismatch);
        }
        let terms: LinComb<Symbol> = self
            .terms
            .iter()
            .filter(|(sym, _)| prefilter.contains(sym.h(), sym.s()))
            .map(|(sym, c)| (sym.clone(), c))
            .collect();
        Ok(BurnsideClass {
            group: Arc::clone(&self.group),
            n: self.n,
            terms,
        })
    }
}

/// The target of a restriction: the subgroup materialized as a group of its
/// own, with the map back to parent element indices.
pub struct RestrictedGroup {
    pub group: Arc<FiniteGroup>,
    pub to_parent: Vec<u32>,
}

impl RestrictedGroup {
    pub fn of(sub: &Subgroup, label: &str) -> Result<RestrictedGroup> {
        let (group, to_parent) = FiniteGroup::from_subgroup(label, sub)?;
        Ok(RestrictedGroup { group, to_parent })
    }

    fn parent_to_own(&self) -> BTreeMap<u32, u32> {
        self.to_parent
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as u32))
            .collect()
    }
}

/// Transports a character of a subgroup of one group along an element map
/// into another group, preserving pairing values.
fn transport_character(
    chi: &Character,
    target_group: &Arc<FiniteGroup>,
    map: &BTreeMap<u32, u32>,
) -> Result<Character> {
    let src_elems = chi.structure().elements();
    let elems: Vec<u32> = src_elems.iter().map(|e| map[e]).collect();
    let sub = Subgroup::from_elements(target_group, &elems)?;
    let st = AbelianStructure::for_subgroup(&sub)?;
    let e_src = chi.structure().exponent();
    let e_dst = st.exponent();
    if e_src != e_dst {
        return Err(Error::StructureMismatch);
    }
    let values: Vec<(u32, u64)> = src_elems.iter().map(|&x| (map[&x], chi.pairing(x))).collect();
    Character::from_element_values(&st, &values)
}

/// Restriction of a class to a subgroup, computed per symbol over double
/// cosets `G' g S` (representatives by least element). A coset contributes
/// nothing when some conjugated character restricts to zero; otherwise it
/// contributes the intersected symbol.
pub fn restrict(class: &BurnsideClass, target: &RestrictedGroup, sub: &Subgroup) -> Result<BurnsideClass> {
    if !Arc::ptr_eq(class.group(), sub.group()) {
        return Err(Error::GroupMismatch);
    }
    if sub.elements() != target.to_parent.as_slice() {
        return Err(Error::BadSubgroup(
            "restriction target does not match the materialized subgroup".into(),
        ));
    }
    let group = class.group();
    let map = target.parent_to_own();
    let mut out = LinComb::zero();
    for (sym, coeff) in class.terms.iter() {
        let s_els = sym.s().elements();
        let mut covered = vec![false; group.order() as usize];
        for g in 0..group.order() {
            if covered[g as usize] {
                continue;
            }
            // mark the double coset G' g S
            for &a in sub.elements() {
                let ag = group.mul(a, g);
                for &b in s_els {
                    covered[group.mul(ag, b) as usize] = true;
                }
            }
            let h_g = sym.h().conjugate(g);
            let s_g = sym.s().conjugate(g);
            let h_cap = h_g.intersection(sub);
            let beta_g: Vec<Character> = sym.beta().iter().map(|b| b.conjugate(g)).collect();
            let mut restricted = Vec::with_capacity(beta_g.len());
            let mut dead = false;
            for b in &beta_g {
                let r = b.restrict(&h_cap)?;
                if r.is_zero() {
                    dead = true;
                    break;
                }
                restricted.push(r);
            }
            if dead {
                continue;
            }
            let s_cap = s_g.intersection(sub);
            // transport into the standalone group
            let h_new = Subgroup::from_elements(
                &target.group,
                &h_cap.elements().iter().map(|e| map[e]).collect::<Vec<_>>(),
            )?;
            let s_new = Subgroup::from_elements(
                &target.group,
                &s_cap.elements().iter().map(|e| map[e]).collect::<Vec<_>>(),
            )?;
            let beta_new: Vec<Character> = restricted
                .iter()
                .map(|b| transport_character(b, &target.group, &map))
                .collect::<Result<_>>()?;
            let new_sym = Symbol::new(h_new, s_new, beta_new, sym.n())?;
            out.add_term(new_sym.canonicalize(), coeff);
        }
    }
    Ok(BurnsideClass {
        group: Arc::clone(&target.group),
        n: class.n,
        terms: out,
    })
}

/// Symbol-wise product into the product group: `(H'×H'', S'×S'', β' ⊎ β'')`
/// with characters extended by zero on the other factor; bilinear extension.
pub fn product(
    left: &BurnsideClass,
    right: &BurnsideClass,
    parts: &ProductParts,
) -> Result<BurnsideClass> {
    if !Arc::ptr_eq(left.group(), &parts.left) || !Arc::ptr_eq(right.group(), &parts.right) {
        return Err(Error::GroupMismatch);
    }
    let pg = &parts.group;
    let n = left.n() + right.n();
    let mut out = LinComb::zero();
    for (s1, c1) in left.terms.iter() {
        for (s2, c2) in right.terms.iter() {
            let mut h_els = Vec::new();
            for &x in s1.h().elements() {
                for &y in s2.h().elements() {
                    h_els.push(pg.mul(parts.embed_left[x as usize], parts.embed_right[y as usize]));
                }
            }
            let h = Subgroup::from_elements(pg, &h_els)?;
            let mut s_els = Vec::new();
            for &x in s1.s().elements() {
                for &y in s2.s().elements() {
                    s_els.push(pg.mul(parts.embed_left[x as usize], parts.embed_right[y as usize]));
                }
            }
            let s = Subgroup::from_elements(pg, &s_els)?;
            let st = AbelianStructure::for_subgroup(&h)?;
            let e = st.exponent();
            let e1 = AbelianStructure::for_subgroup(s1.h())?.exponent();
            let e2 = AbelianStructure::for_subgroup(s2.h())?.exponent();
            let mut beta = Vec::new();
            for b in s1.beta() {
                let values: Vec<(u32, u64)> = s1
                    .h()
                    .elements()
                    .iter()
                    .map(|&x| (parts.embed_left[x as usize], b.pairing(x) * (e / e1)))
                    .chain(
                        s2.h()
                            .elements()
                            .iter()
                            .map(|&y| (parts.embed_right[y as usize], 0)),
                    )
                    .collect();
                beta.push(Character::from_element_values(&st, &values)?);
            }
            for b in s2.beta() {
                let values: Vec<(u32, u64)> = s2
                    .h()
                    .elements()
                    .iter()
                    .map(|&y| (parts.embed_right[y as usize], b.pairing(y) * (e / e2)))
                    .chain(
                        s1.h()
                            .elements()
                            .iter()
                            .map(|&x| (parts.embed_left[x as usize], 0)),
                    )
                    .collect();
                beta.push(Character::from_element_values(&st, &values)?);
            }
            let sym = Symbol::new(h, s, beta, n)?;
            out.add_term(sym.canonicalize(), c1 * c2);
        }
    }
    Ok(BurnsideClass {
        group: Arc::clone(pg),
        n,
        terms: out,
    })
}

/// Transport a class along a group isomorphism given as an element map.
pub fn transport(class: &BurnsideClass, target: &Arc<FiniteGroup>, map: &[u32]) -> Result<BurnsideClass> {
    let src = class.group();
    if map.len() != src.order() as usize {
        return Err(Error::Dimension("element map length".into()));
    }
    debug_assert!((0..src.order()).all(|a| (0..src.order()).all(|b| {
        map[src.mul(a, b) as usize] == target.mul(map[a as usize], map[b as usize])
    })), "element map is not a homomorphism");
    let bmap: BTreeMap<u32, u32> = (0..src.order() as usize)
        .map(|i| (i as u32, map[i]))
        .collect();
    let mut out = LinComb::zero();
    for (sym, c) in class.terms.iter() {
        let h = Subgroup::from_elements(
            target,
            &sym.h().elements().iter().map(|e| bmap[e]).collect::<Vec<_>>(),
        )?;
        let s = Subgroup::from_elements(
            target,
            &sym.s().elements().iter().map(|e| bmap[e]).collect::<Vec<_>>(),
        )?;
        let beta: Vec<Character> = sym
            .beta()
            .iter()
            .map(|b| transport_character(b, target, &bmap))
            .collect::<Result<_>>()?;
        let new_sym = Symbol::new(h, s, beta, sym.n())?;
        out.add_term(new_sym.canonicalize(), c);
    }
    Ok(BurnsideClass {
        group: Arc::clone(target),
        n: class.n,
        terms: out,
    })
}

/// Product of two classes over the same group followed by restriction to the
/// diagonal, transported back onto the original group.
pub fn diagonal_product(
    left: &BurnsideClass,
    right: &BurnsideClass,
    square: &ProductParts,
) -> Result<BurnsideClass> {
    if !Arc::ptr_eq(left.group(), right.group()) {
        return Err(Error::GroupMismatch);
    }
    if !Arc::ptr_eq(&square.left, left.group()) || !Arc::ptr_eq(&square.right, left.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = left.group();
    let prod = product(left, right, square)?;
    let diag_els: Vec<u32> = (0..g.order())
        .map(|x| {
            square.group.mul(
                square.embed_left[x as usize],
                square.embed_right[x as usize],
            )
        })
        .collect();
    let diag = Subgroup::from_elements(&square.group, &diag_els)?;
    let target = RestrictedGroup::of(&diag, "diag")?;
    let restricted = restrict(&prod, &target, &diag)?;
    // The diagonal group is the original group in disguise: element i of the
    // restricted group is diag(g_i) with the parent indices ascending in i.
    let mut back = vec![0u32; target.group.order() as usize];
    for (i, &old) in target.to_parent.iter().enumerate() {
        let pos = diag_els
            .iter()
            .position(|&d| d == old)
            .expect("diagonal element");
        back[i] = pos as u32;
    }
    transport(&restricted, g, &back)
}

/// The projectivized-bundle class: sum over proper subsets `J ⊊ I` of
/// `psi_J(omega_{P(I),J}(term))`, linearly in the input.
pub fn fibration_class(
    group: &Arc<FiniteGroup>,
    n: u32,
    terms: &[(i64, IndexedSymbol)],
) -> Result<BurnsideClass> {
    let Some((_, first)) = terms.first() else {
        return Ok(BurnsideClass::zero(group, n));
    };
    let index_set = first.index_set();
    for (_, t) in terms {
        if !t.is_projective() {
            return Err(Error::InvalidIndexedSymbol(
                "fibration input must be projective".into(),
            ));
        }
        if t.index_set() != index_set || t.n() != n || !Arc::ptr_eq(t.group(), group) {
            return Err(Error::InvalidIndexedSymbol(
                "fibration terms must share group, dimension and index set".into(),
            ));
        }
    }
    let indices: Vec<usize> = index_set.iter().copied().collect();
    let k = indices.len();
    if k >= 63 {
        return Err(Error::ResourceBound(format!(
            "index set of size {} is beyond the subset enumeration",
            k
        )));
    }
    let mut acc: LinComb<Symbol> = LinComb::zero();
    for mask in 0..(1u64 << k) {
        if mask == (1u64 << k) - 1 {
            continue; // J must be proper
        }
        let j: BTreeSet<usize> = indices
            .iter()
            .enumerate()
            .filter(|&(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        for (coeff, t) in terms {
            if let Some(pushed) = t.omega_proj(&j)? {
                acc = acc.add(&pushed.psi()?.scale(*coeff));
            }
        }
    }
    Ok(BurnsideClass {
        group: Arc::clone(group),
        n,
        terms: acc,
    })
}

/// Linear extension of `psi ∘ omega` on non-projective indexed data.
pub fn indexed_push(
    group: &Arc<FiniteGroup>,
    n: u32,
    terms: &[(i64, IndexedSymbol)],
    j: &BTreeSet<usize>,
) -> Result<BurnsideClass> {
    let mut acc: LinComb<Symbol> = LinComb::zero();
    for (coeff, t) in terms {
        if t.is_projective() {
            return Err(Error::InvalidIndexedSymbol(
                "indexed push expects non-projective symbols".into(),
            ));
        }
        if t.n() != n || !Arc::ptr_eq(t.group(), group) {
            return Err(Error::InvalidIndexedSymbol(
                "indexed terms must share group and dimension".into(),
            ));
        }
        if let Some(pushed) = t.omega(j)? {
            acc = acc.add(&pushed.psi()?.scale(*coeff));
        }
    }
    Ok(BurnsideClass {
        group: Arc::clone(group),
        n,
        terms: acc,
    })
}

/// Resource caps and worker count for presentation building.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_generators: usize,
    pub max_relations: usize,
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generators: 20_000,
            max_relations: 200_000,
            threads: 1,
        }
    }
}

/// A finite presentation of the symbols group in a fixed dimension,
/// optionally cut down by a prefilter.
pub struct Presentation {
    group: Arc<FiniteGroup>,
    n: u32,
    prefilter: Option<Prefilter>,
    /// Reduced presentation (prefilter closed) vs full quotient fallback.
    reduced: bool,
    generators: Vec<Symbol>,
    index: BTreeMap<Symbol, usize>,
    relation_rows: Vec<LinComb<Symbol>>,
    relations: IntMatrix,
    quotient: OnceLock<QuotientStructure>,
}

impl Presentation {
    pub fn build(
        group: &Arc<FiniteGroup>,
        n: u32,
        prefilter: Option<Prefilter>,
        limits: &Limits,
    ) -> Result<Presentation> {
        if let Some(pf) = &prefilter {
            if !Arc::ptr_eq(pf.group(), group) {
                return Err(Error::GroupMismatch);
            }
        }
        let reduced = prefilter.as_ref().map(|pf| pf.is_closed()).unwrap_or(false);
        let generators = if reduced {
            let pf = prefilter.as_ref().unwrap();
            let filter = |h: &Subgroup, s: &Subgroup| pf.contains(h, s);
            enumerate_raw(group, n, Some(&filter))?
        } else {
            enumerate_raw(group, n, None)?
        };
        if generators.len() > limits.max_generators {
            return Err(Error::ResourceBound(format!(
                "{} generators exceed the cap of {}",
                generators.len(),
                limits.max_generators
            )));
        }
        let index: BTreeMap<Symbol, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        // relation rows, generated per symbol pair (embarrassingly parallel);
        // (B1) and (B2) are independent relations, so a pair summing to zero
        // yields both rows
        let gen_rows = |sym: &Symbol| -> Result<Vec<LinComb<Symbol>>> {
            let mut rows = Vec::new();
            let len = sym.beta().len();
            for i in 0..len {
                for jj in i + 1..len {
                    let mut pair_rows = Vec::new();
                    if let Some(v) = relation_b1(sym, i, jj)? {
                        pair_rows.push(v);
                    }
                    pair_rows.push(relation_b2(sym, i, jj)?);
                    for row in pair_rows {
                        let row = if reduced {
                            let pf = prefilter.as_ref().unwrap();
                            row.iter()
                                .filter(|(s, _)| pf.contains(s.h(), s.s()))
                                .map(|(s, c)| (s.clone(), c))
                                .collect()
                        } else {
                            row
                        };
                        if !row.is_zero() {
                            rows.push(row);
                        }
                    }
                }
            }
            Ok(rows)
        };

        let mut relation_rows: Vec<LinComb<Symbol>> = Vec::new();
        let workers = limits.threads.max(1);
        if workers <= 1 || generators.len() < 2 * workers {
            for sym in &generators {
                relation_rows.extend(gen_rows(sym)?);
            }
        } else {
            let chunk = generators.len().div_ceil(workers);
            let gen_rows = &gen_rows;
            let results: Vec<Result<Vec<LinComb<Symbol>>>> = std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for slice in generators.chunks(chunk) {
                    handles.push(scope.spawn(move || -> Result<Vec<LinComb<Symbol>>> {
                        let mut rows = Vec::new();
                        for sym in slice {
                            rows.extend(gen_rows(sym)?);
                        }
                        Ok(rows)
                    }));
                }
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            for r in results {
                relation_rows.extend(r?);
            }
        }

        // full-quotient fallback: kill every generator outside the prefilter
        if let (Some(pf), false) = (&prefilter, reduced) {
            for sym in &generators {
                if !pf.contains(sym.h(), sym.s()) {
                    relation_rows.push(LinComb::term(sym.clone(), 1));
                }
            }
        }
        if relation_rows.len() > limits.max_relations {
            return Err(Error::ResourceBound(format!(
                "{} relations exceed the cap of {}",
                relation_rows.len(),
                limits.max_relations
            )));
        }

        let mut sparse = Vec::with_capacity(relation_rows.len());
        for row in &relation_rows {
            let mut entries = Vec::new();
            for (sym, c) in row.iter() {
                let Some(&col) = index.get(sym) else {
                    return Err(Error::UnknownSymbol(sym.to_string()));
                };
                entries.push((col, BigInt::from(c)));
            }
            sparse.push(entries);
        }
        let relations = IntMatrix::from_sparse_rows(relation_rows.len(), generators.len(), sparse);

        Ok(Presentation {
            group: Arc::clone(group),
            n,
            prefilter,
            reduced,
            generators,
            index,
            relation_rows,
            relations,
            quotient: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn relation_rows(&self) -> &[LinComb<Symbol>] {
        &self.relation_rows
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn prefilter(&self) -> Option<&Prefilter> {
        self.prefilter.as_ref()
    }

    /// Quotient-group structure, computed on first use.
    pub fn quotient(&self) -> &QuotientStructure {
        self.quotient.get_or_init(|| {
            QuotientStructure::new(self.generators.len(), &self.relations)
                .expect("relation matrix has one column per generator")
        })
    }

    /// Integer vector of a class over the generator basis. The class is
    /// projected along the prefilter first (symbols outside it are zero in
    /// the quotient); unknown canonical symbols are an error.
    pub fn class_vector(&self, class: &BurnsideClass) -> Result<Vec<BigInt>> {
        if !Arc::ptr_eq(class.group(), &self.group) {
            return Err(Error::GroupMismatch);
        }
        if class.n() != self.n {
            return Err(Error::Dimension(format!(
                "class dimension {} vs presentation dimension {}",
                class.n(),
                self.n
            )));
        }
        let projected = match (&self.prefilter, self.reduced) {
            (Some(pf), true) => class.project(pf)?,
            _ => class.clone(),
        };
        let mut v = vec![BigInt::zero(); self.generators.len()];
        for (sym, c) in projected.terms().iter() {
            let Some(&col) = self.index.get(sym) else {
                return Err(Error::UnknownSymbol(sym.to_string()));
            };
            v[col] += c;
        }
        Ok(v)
    }

    pub fn class_is_zero(&self, class: &BurnsideClass) -> Result<bool> {
        let v = self.class_vector(class)?;
        self.quotient().membership(&v)
    }

    pub fn classes_equal(&self, a: &BurnsideClass, b: &BurnsideClass) -> Result<bool> {
        self.class_is_zero(&a.sub(b)?)
    }

    /// Canonical representative of the class modulo the relation lattice.
    pub fn reduce_class(&self, class: &BurnsideClass) -> Result<BurnsideClass> {
        let v = self.class_vector(class)?;
        let reduced = self.quotient().reduce(&v)?;
        let mut terms = LinComb::zero();
        for (i, c) in reduced.iter().enumerate() {
            if !c.is_zero() {
                let coeff = i64::try_from(c)
                    .map_err(|_| Error::ResourceBound("reduced coefficient overflows i64".into()))?;
                terms.add_term(self.generators[i].clone(), coeff);
            }
        }
        Ok(BurnsideClass {
            group: Arc::clone(&self.group),
            n: self.n,
            terms,
        })
    }

    /// Certificate that the class is zero: coefficients over the relation
    /// rows summing to the class vector. `None` when the class is nonzero.
    pub fn zero_certificate(&self, class: &BurnsideClass) -> Result<Option<Vec<BigInt>>> {
        let v = self.class_vector(class)?;
        self.quotient().member_certificate(&v)
    }

    /// Certificate that the class is nonzero: a linear functional (column,
    /// modulus) vanishing on all relations but not on the class.
    pub fn nonzero_certificate(&self, class: &BurnsideClass) -> Result<Option<(Vec<BigInt>, BigInt)>> {
        let v = self.class_vector(class)?;
        self.quotient().separating_certificate(&v)
    }

    pub fn structure_string(&self) -> String {
        self.quotient().structure_string()
    }
}

/// Enumeration filtered by a prefilter on the `(H, Y)` pairs.
pub fn enumerate_symbols(
    group: &Arc<FiniteGroup>,
    n: u32,
    prefilter: Option<&Prefilter>,
) -> Result<Vec<Symbol>> {
    match prefilter {
        None => enumerate_raw(group, n, None),
        Some(pf) => {
            let filter = |h: &Subgroup, s: &Subgroup| pf.contains(h, s);
            enumerate_raw(group, n, Some(&filter))
        }
    }
}
