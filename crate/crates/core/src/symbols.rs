//! Canonical symbols `(H, Y, beta)` and their indexed variants, with the
//! reordering/conjugation canonical form, the blow-up relations, and the
//! `psi`/`omega` maps between indexed and plain symbols.
//!
//! `Y` is a subgroup of `Z_G(H)/H`; it is stored through its lift `S` with
//! `H ⊆ S ⊆ Z_G(H)`, so conjugation and intersection stay plain subgroup
//! operations and no quotient groups are ever materialized.

use crate::abelian::{AbelianStructure, Character};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::group::{abelian_subgroup_classes, intermediate_subgroups};
use crate::FiniteGroup;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Sparse integer combination of canonical keys; no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord + Clone> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, coeff: i64) -> Self {
        let mut t = Self::zero();
        t.add_term(key, coeff);
        t
    }

    pub fn add_term(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        if k != 0 {
            for (key, &c) in &self.terms {
                out.add_term(key.clone(), c * k);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (K, i64)>>(iter: T) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

/// A generator `(H, Y, beta)` of the combinatorial symbols group.
#[derive(Clone)]
pub struct Symbol {
    h: Subgroup,
    s: Subgroup,
    beta: Vec<Character>,
    n: u32,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol({})", self)
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for Symbol {}
impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.h
            .elements()
            .cmp(other.h.elements())
            .then_with(|| self.s.elements().cmp(other.s.elements()))
            .then_with(|| beta_coeffs(&self.beta).cmp(&beta_coeffs(&other.beta)))
            .then_with(|| self.n.cmp(&other.n))
    }
}

fn beta_coeffs(beta: &[Character]) -> Vec<Vec<u64>> {
    beta.iter().map(|b| b.coeffs().to_vec()).collect()
}

/// Order of the subgroup of the dual generated by the characters, by closure
/// on coefficient tuples.
pub fn span_order(structure: &Arc<AbelianStructure>, chars: &[Character]) -> u64 {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(vec![0; structure.rank()]);
    let mut frontier: Vec<Character> = vec![Character::zero(Arc::clone(structure))];
    while let Some(x) = frontier.pop() {
        for c in chars {
            let y = x.add(c).expect("same structure");
            if seen.insert(y.coeffs().to_vec()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

impl Symbol {
    /// Validates and sorts; does not conjugation-minimize.
    pub fn new(h: Subgroup, s: Subgroup, mut beta: Vec<Character>, n: u32) -> Result<Symbol> {
        if !h.is_abelian() {
            return Err(Error::InvalidSymbol("H is not abelian".into()));
        }
        if !h.is_subgroup_of(&s) {
            return Err(Error::InvalidSymbol("H is not contained in the lift of Y".into()));
        }
        let z = h.centralizer();
        if !s.is_subgroup_of(&z) {
            return Err(Error::InvalidSymbol(
                "the lift of Y is not inside the centralizer of H".into(),
            ));
        }
        let st = AbelianStructure::for_subgroup(&h)?;
        for b in &beta {
            if b.structure().elements() != h.elements() {
                return Err(Error::InvalidSymbol("character over the wrong subgroup".into()));
            }
            if b.is_zero() {
                return Err(Error::InvalidSymbol("beta contains a zero character".into()));
            }
        }
        if beta.len() as u32 > n {
            return Err(Error::InvalidSymbol(format!(
                "beta has {} characters but the dimension is {}",
                beta.len(),
                n
            )));
        }
        if span_order(&st, &beta) != h.order() as u64 {
            return Err(Error::InvalidSymbol(
                "beta does not generate the dual of H".into(),
            ));
        }
        beta.sort();
        Ok(Symbol { h, s, beta, n })
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    /// The lift `S` of `Y = S/H`.
    pub fn s(&self) -> &Subgroup {
        &self.s
    }

    pub fn beta(&self) -> &[Character] {
        &self.beta
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.h.group()
    }

    /// Conjugates all data by `g`; valid but not necessarily canonical.
    pub fn conjugate(&self, g: u32) -> Symbol {
        let mut beta: Vec<Character> = self.beta.iter().map(|b| b.conjugate(g)).collect();
        beta.sort();
        Symbol {
            h: self.h.conjugate(g),
            s: self.s.conjugate(g),
            beta,
            n: self.n,
        }
    }

    /// Canonical form under reordering and conjugation: beta sorted, then the
    /// tuple (H elements, S elements, beta coefficients) minimized over
    /// simultaneous conjugation by every group element.
    pub fn canonicalize(&self) -> Symbol {
        let group = Arc::clone(self.group());
        let mut best = self.clone();
        best.beta.sort();
        for g in 1..group.order() {
            let cand = self.conjugate(g);
            if cand < best {
                best = cand;
            }
        }
        best
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = self.group();
        let hgens = self.h.min_generators();
        write!(f, "(H=<")?;
        for (i, &g) in hgens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", group.elem_name(g))?;
        }
        write!(f, ">, Y=<")?;
        // generators of the lift beyond H
        let mut span = self.h.clone();
        let mut first = true;
        for &e in self.s.elements() {
            if !span.contains(e) {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", group.elem_name(e))?;
                first = false;
                span = span.extended(&[e]);
            }
        }
        write!(f, ">, beta=[")?;
        for (i, b) in self.beta.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, "])")
    }
}

/// All characters of the structure in lexicographic coefficient order.
pub fn all_characters(st: &Arc<AbelianStructure>) -> Vec<Character> {
    let mut out = Vec::new();
    let rank = st.rank();
    let mut tuple = vec![0u64; rank];
    loop {
        out.push(Character::new(Arc::clone(st), tuple.clone()).expect("valid coeffs"));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < st.invariant_factors()[i] {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// All canonical symbols of `G` in dimension `n`, optionally filtered by a
/// predicate on the pair `(H, S)` before beta-enumeration.
pub fn enumerate_symbols(
    group: &Arc<FiniteGroup>,
    n: u32,
    pair_filter: Option<&dyn Fn(&Subgroup, &Subgroup) -> bool>,
) -> Result<Vec<Symbol>> {
    let mut out: BTreeSet<Symbol> = BTreeSet::new();
    for h in abelian_subgroup_classes(group) {
        let z = h.centralizer();
        let st = AbelianStructure::for_subgroup(&h)?;
        let nonzero: Vec<Character> = all_characters(&st)
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        for s in intermediate_subgroups(&h, &z)? {
            if let Some(filter) = pair_filter {
                if !filter(&h, &s) {
                    continue;
                }
            }
            for len in 0..=n as usize {
                let mut stack: Vec<(usize, Vec<Character>)> = vec![(0, Vec::new())];
                while let Some((from, chosen)) = stack.pop() {
                    if chosen.len() == len {
                        if span_order(&st, &chosen) == h.order() as u64 {
                            let sym = Symbol::new(h.clone(), s.clone(), chosen, n)?;
                            out.insert(sym.canonicalize());
                        }
                        continue;
                    }
                    // sorted multisets: indices non-decreasing
                    for k in from..nonzero.len() {
                        let mut next = chosen.clone();
                        next.push(nonzero[k].clone());
                        stack.push((k, next));
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Blow-up relation (B1): the symbol vanishes when `beta[i] + beta[j] = 0`.
/// Returns the vector `{sym: 1}` in that case.
pub fn relation_b1(sym: &Symbol, i: usize, j: usize) -> Result<Option<LinComb<Symbol>>> {
    if i >= j || j >= sym.beta.len() {
        return Err(Error::IndexSet(format!("pair ({}, {}) out of range", i, j)));
    }
    let sum = sym.beta[i].add(&sym.beta[j])?;
    if sum.is_zero() {
        Ok(Some(LinComb::term(sym.canonicalize(), 1)))
    } else {
        Ok(None)
    }
}

/// Blow-up relation (B2) at positions `(i, j)`: returns
/// `sym - Theta1 - Theta2` with every term canonical. Defined for every
/// pair, independently of (B1).
pub fn relation_b2(sym: &Symbol, i: usize, j: usize) -> Result<LinComb<Symbol>> {
    if i >= j || j >= sym.beta.len() {
        return Err(Error::IndexSet(format!("pair ({}, {}) out of range", i, j)));
    }
    let b1 = &sym.beta[i];
    let b2 = &sym.beta[j];
    let mut out = LinComb::term(sym.canonicalize(), 1);
    let rest: Vec<Character> = sym
        .beta
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, b)| b.clone())
        .collect();
    // Theta1: character surgery, zero when the two characters coincide
    if b1 != b2 {
        let mut beta1 = rest.clone();
        beta1.push(b1.clone());
        beta1.push(b2.sub(b1)?);
        let t1a = Symbol::new(sym.h.clone(), sym.s.clone(), beta1, sym.n)?;
        out.add_term(t1a.canonicalize(), -1);
        let mut beta2 = rest.clone();
        beta2.push(b2.clone());
        beta2.push(b1.sub(b2)?);
        let t1b = Symbol::new(sym.h.clone(), sym.s.clone(), beta2, sym.n)?;
        out.add_term(t1b.canonicalize(), -1);
    }
    // Theta2: pass to the kernel subgroup unless some character of beta lies
    // in the cyclic subgroup generated by the difference
    let delta = b1.sub(b2)?;
    let excluded = sym
        .beta
        .iter()
        .map(|b| b.in_cyclic(&delta))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .any(|x| x);
    if !excluded {
        let hbar = delta.kernel();
        let beta_bar: Vec<Character> = sym
            .beta
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, b)| b.restrict(&hbar))
            .collect::<Result<Vec<Character>>>()?;
        let t2 = Symbol::new(hbar, sym.s.clone(), beta_bar, sym.n)
            .expect("Theta2 of a valid symbol is a valid symbol");
        out.add_term(t2.canonicalize(), -1);
    }
    Ok(out)
}

/// An indexed symbol `(H ⊆ H', Y', beta, gamma)`, possibly projective.
#[derive(Clone)]
pub struct IndexedSymbol {
    h: Subgroup,
    hp: Subgroup,
    sp: Subgroup,
    beta: Vec<Character>,
    gamma: BTreeMap<usize, Character>,
    n: u32,
    projective: bool,
}

impl fmt::Debug for IndexedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IndexedSymbol(H={:?}, Hp={:?}, |beta|={}, I={:?}, proj={})",
            self.h.elements(),
            self.hp.elements(),
            self.beta.len(),
            self.gamma.keys().collect::<Vec<_>>(),
            self.projective
        )
    }
}

impl PartialEq for IndexedSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for IndexedSymbol {}
impl PartialOrd for IndexedSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for IndexedSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let gamma_key = |s: &IndexedSymbol| -> Vec<(usize, Vec<u64>)> {
            s.gamma
                .iter()
                .map(|(&i, c)| (i, c.coeffs().to_vec()))
                .collect()
        };
        self.h
            .elements()
            .cmp(other.h.elements())
            .then_with(|| self.hp.elements().cmp(other.hp.elements()))
            .then_with(|| self.sp.elements().cmp(other.sp.elements()))
            .then_with(|| beta_coeffs(&self.beta).cmp(&beta_coeffs(&other.beta)))
            .then_with(|| gamma_key(self).cmp(&gamma_key(other)))
            .then_with(|| self.n.cmp(&other.n))
            .then_with(|| self.projective.cmp(&other.projective))
    }
}

impl IndexedSymbol {
    /// Validates the indexed symbol data. Projective symbols are normalized
    /// so the gamma value at the least index is the zero character.
    pub fn new(
        h: Subgroup,
        hp: Subgroup,
        sp: Subgroup,
        mut beta: Vec<Character>,
        mut gamma: BTreeMap<usize, Character>,
        n: u32,
        projective: bool,
    ) -> Result<IndexedSymbol> {
        if !hp.is_abelian() {
            return Err(Error::InvalidIndexedSymbol("H' is not abelian".into()));
        }
        if !h.is_subgroup_of(&hp) {
            return Err(Error::InvalidIndexedSymbol("H is not contained in H'".into()));
        }
        if !hp.is_subgroup_of(&sp) || !sp.is_subgroup_of(&hp.centralizer()) {
            return Err(Error::InvalidIndexedSymbol(
                "the lift of Y' must sit between H' and its centralizer".into(),
            ));
        }
        let stp = AbelianStructure::for_subgroup(&hp)?;
        let sth = AbelianStructure::for_subgroup(&h)?;
        for b in &beta {
            if b.structure().elements() != hp.elements() {
                return Err(Error::InvalidIndexedSymbol(
                    "beta character over the wrong subgroup".into(),
                ));
            }
            if b.is_zero() {
                return Err(Error::InvalidIndexedSymbol("beta contains a zero character".into()));
            }
            if !b.restrict(&h)?.is_zero() {
                return Err(Error::InvalidIndexedSymbol(
                    "beta characters must restrict trivially to H".into(),
                ));
            }
        }
        if span_order(&stp, &beta) * h.order() as u64 != hp.order() as u64 {
            return Err(Error::InvalidIndexedSymbol(
                "beta does not generate the annihilator of H".into(),
            ));
        }
        for c in gamma.values() {
            if c.structure().elements() != hp.elements() {
                return Err(Error::InvalidIndexedSymbol(
                    "gamma character over the wrong subgroup".into(),
                ));
            }
        }
        if projective {
            if gamma.is_empty() {
                return Err(Error::InvalidIndexedSymbol(
                    "projective symbols need a nonempty index set".into(),
                ));
            }
            if beta.len() + gamma.len() > n as usize + 1 {
                return Err(Error::Dimension(format!(
                    "|beta| + |I| - 1 = {} exceeds n = {}",
                    beta.len() + gamma.len() - 1,
                    n
                )));
            }
            // normalize by relation (P): shift so the least index carries 0
            let i0 = *gamma.keys().next().expect("nonempty");
            let shift = gamma[&i0].clone();
            for c in gamma.values_mut() {
                *c = c.sub(&shift)?;
            }
            let diffs: Vec<Character> = gamma
                .values()
                .map(|c| c.restrict(&h))
                .collect::<Result<Vec<_>>>()?;
            if span_order(&sth, &diffs) != h.order() as u64 {
                return Err(Error::InvalidIndexedSymbol(
                    "pairwise differences of gamma do not generate the dual of H".into(),
                ));
            }
        } else {
            if beta.len() + gamma.len() > n as usize {
                return Err(Error::Dimension(format!(
                    "|beta| + |I| = {} exceeds n = {}",
                    beta.len() + gamma.len(),
                    n
                )));
            }
            let images: Vec<Character> = gamma
                .values()
                .map(|c| c.restrict(&h))
                .collect::<Result<Vec<_>>>()?;
            if span_order(&sth, &images) != h.order() as u64 {
                return Err(Error::InvalidIndexedSymbol(
                    "gamma restricted to H does not generate its dual".into(),
                ));
            }
        }
        beta.sort();
        Ok(IndexedSymbol {
            h,
            hp,
            sp,
            beta,
            gamma,
            n,
            projective,
        })
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }
    pub fn hp(&self) -> &Subgroup {
        &self.hp
    }
    pub fn sp(&self) -> &Subgroup {
        &self.sp
    }
    pub fn beta(&self) -> &[Character] {
        &self.beta
    }
    pub fn gamma(&self) -> &BTreeMap<usize, Character> {
        &self.gamma
    }
    pub fn index_set(&self) -> BTreeSet<usize> {
        self.gamma.keys().copied().collect()
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn is_projective(&self) -> bool {
        self.projective
    }
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.h.group()
    }

    pub fn conjugate(&self, g: u32) -> IndexedSymbol {
        let mut beta: Vec<Character> = self.beta.iter().map(|b| b.conjugate(g)).collect();
        beta.sort();
        let gamma: BTreeMap<usize, Character> = self
            .gamma
            .iter()
            .map(|(&i, c)| (i, c.conjugate(g)))
            .collect();
        IndexedSymbol {
            h: self.h.conjugate(g),
            hp: self.hp.conjugate(g),
            sp: self.sp.conjugate(g),
            beta,
            gamma,
            n: self.n,
            projective: self.projective,
        }
    }

    pub fn canonicalize(&self) -> IndexedSymbol {
        let group = Arc::clone(self.group());
        let mut best = self.clone();
        for g in 1..group.order() {
            let cand = self.conjugate(g);
            if cand < best {
                best = cand;
            }
        }
        best
    }

    /// The map into plain symbols: merge gamma into beta when every gamma
    /// value is a nontrivial character of `H'`, otherwise zero.
    pub fn psi(&self) -> Result<LinComb<Symbol>> {
        if self.projective {
            return Err(Error::InvalidIndexedSymbol(
                "psi is defined on non-projective symbols".into(),
            ));
        }
        if self.gamma.values().any(|c| c.is_zero()) {
            return Ok(LinComb::zero());
        }
        let mut beta = self.beta.clone();
        beta.extend(self.gamma.values().cloned());
        let stp = AbelianStructure::for_subgroup(&self.hp)?;
        if span_order(&stp, &beta) != self.hp.order() as u64 {
            return Err(Error::InvalidIndexedSymbol(
                "beta and gamma together must generate the dual of H' (corrupted input)".into(),
            ));
        }
        let sym = Symbol::new(self.hp.clone(), self.sp.clone(), beta, self.n)?;
        Ok(LinComb::term(sym.canonicalize(), 1))
    }

    /// Kernel-restriction along the dropped indices `I \ J`. `None` is the
    /// zero class: some restricted beta character vanished.
    pub fn omega(&self, target: &BTreeSet<usize>) -> Result<Option<IndexedSymbol>> {
        if self.projective {
            return Err(Error::InvalidIndexedSymbol(
                "omega on projective symbols goes through omega_proj".into(),
            ));
        }
        let index_set = self.index_set();
        if !target.is_subset(&index_set) {
            return Err(Error::IndexSet("J is not a subset of I".into()));
        }
        let mut hp_bar = self.hp.clone();
        for (&i, c) in &self.gamma {
            if !target.contains(&i) {
                hp_bar = hp_bar.intersection(&c.kernel());
            }
        }
        let h_bar = self.h.intersection(&hp_bar);
        let mut beta_bar = Vec::with_capacity(self.beta.len());
        for b in &self.beta {
            let r = b.restrict(&hp_bar)?;
            if r.is_zero() {
                return Ok(None);
            }
            beta_bar.push(r);
        }
        let gamma_bar: BTreeMap<usize, Character> = self
            .gamma
            .iter()
            .filter(|(i, _)| target.contains(i))
            .map(|(&i, c)| Ok((i, c.restrict(&hp_bar)?)))
            .collect::<Result<_>>()?;
        let out = IndexedSymbol::new(
            h_bar,
            hp_bar,
            self.sp.clone(),
            beta_bar,
            gamma_bar,
            self.n,
            false,
        )?;
        Ok(Some(out))
    }

    /// Projective variant: normalize by (P) at the least dropped index, drop
    /// it, then apply `omega` toward `J`.
    pub fn omega_proj(&self, target: &BTreeSet<usize>) -> Result<Option<IndexedSymbol>> {
        if !self.projective {
            return Err(Error::InvalidIndexedSymbol(
                "omega_proj expects a projective symbol".into(),
            ));
        }
        let index_set = self.index_set();
        if !target.is_subset(&index_set) {
            return Err(Error::IndexSet("J is not a subset of I".into()));
        }
        if *target == index_set {
            return Err(Error::IndexSet("J must be a proper subset of I".into()));
        }
        let i0 = *index_set
            .difference(target)
            .next()
            .expect("proper subset leaves a least dropped index");
        let shift = self.gamma[&i0].clone();
        let gamma: BTreeMap<usize, Character> = self
            .gamma
            .iter()
            .filter(|(&i, _)| i != i0)
            .map(|(&i, c)| Ok((i, c.sub(&shift)?)))
            .collect::<Result<_>>()?;
        let unprojected = IndexedSymbol::new(
            self.h.clone(),
            self.hp.clone(),
            self.sp.clone(),
            self.beta.clone(),
            gamma,
            self.n,
            false,
        )?;
        unprojected.omega(target)
    }

    /// Indexed (B1): zero when `beta[i] + beta[j] = 0`.
    pub fn relation_b1(&self, i: usize, j: usize) -> Result<Option<LinComb<IndexedSymbol>>> {
        if i >= j || j >= self.beta.len() {
            return Err(Error::IndexSet(format!("pair ({}, {}) out of range", i, j)));
        }
        if self.beta[i].add(&self.beta[j])?.is_zero() {
            Ok(Some(LinComb::term(self.canonicalize(), 1)))
        } else {
            Ok(None)
        }
    }

    /// Indexed (B2): as for plain symbols on beta, with H prepended and the
    /// restricted gamma appended to the kernel term. Defined for every pair.
    pub fn relation_b2(&self, i: usize, j: usize) -> Result<LinComb<IndexedSymbol>> {
        if i >= j || j >= self.beta.len() {
            return Err(Error::IndexSet(format!("pair ({}, {}) out of range", i, j)));
        }
        let b1 = &self.beta[i];
        let b2 = &self.beta[j];
        let mut out = LinComb::term(self.canonicalize(), 1);
        let rest: Vec<Character> = self
            .beta
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, b)| b.clone())
            .collect();
        if b1 != b2 {
            let mut beta1 = rest.clone();
            beta1.push(b1.clone());
            beta1.push(b2.sub(b1)?);
            let t = IndexedSymbol::new(
                self.h.clone(),
                self.hp.clone(),
                self.sp.clone(),
                beta1,
                self.gamma.clone(),
                self.n,
                self.projective,
            )?;
            out.add_term(t.canonicalize(), -1);
            let mut beta2 = rest.clone();
            beta2.push(b2.clone());
            beta2.push(b1.sub(b2)?);
            let t = IndexedSymbol::new(
                self.h.clone(),
                self.hp.clone(),
                self.sp.clone(),
                beta2,
                self.gamma.clone(),
                self.n,
                self.projective,
            )?;
            out.add_term(t.canonicalize(), -1);
        }
        let delta = b1.sub(b2)?;
        let excluded = self
            .beta
            .iter()
            .map(|b| b.in_cyclic(&delta))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .any(|x| x);
        if !excluded {
            let hp_bar = delta.kernel();
            let beta_bar: Vec<Character> = self
                .beta
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, b)| b.restrict(&hp_bar))
                .collect::<Result<Vec<Character>>>()?;
            let gamma_bar: BTreeMap<usize, Character> = self
                .gamma
                .iter()
                .map(|(&k, c)| Ok((k, c.restrict(&hp_bar)?)))
                .collect::<Result<_>>()?;
            let t2 = IndexedSymbol::new(
                self.h.clone(),
                hp_bar,
                self.sp.clone(),
                beta_bar,
                gamma_bar,
                self.n,
                self.projective,
            )
            .expect("Theta2 of a valid indexed symbol is valid");
            out.add_term(t2.canonicalize(), -1);
        }
        Ok(out)
    }
}

impl fmt::Display for IndexedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = self.group();
        let part = |els: &Subgroup| -> String {
            els.min_generators()
                .iter()
                .map(|&g| group.elem_name(g))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "(H=<{}>, Hp=<{}>, Sp=<{}>, beta=[",
            part(&self.h),
            part(&self.hp),
            part(&self.sp)
        )?;
        for (i, b) in self.beta.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, "], gamma={{")?;
        for (k, (i, c)) in self.gamma.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", i, c)?;
        }
        write!(f, "}}{})", if self.projective { ", proj" } else { "" })
    }
}
