//! Invariant-factor structure of abelian subgroups, and their characters.
//!
//! A character is stored as an exponent tuple against the canonical basis of
//! its subgroup. The basis is computed by primary decomposition: within each
//! p-part, generators are picked greedily by maximal order with smallest
//! element index first, then merged across primes into a divisibility chain
//! d1 | d2 | ... | dr. Identical element lists always produce identical
//! bases, so coefficient tuples are comparable across runs.
//!
//! Roots of unity never appear: a character pairs an element to an exponent
//! in Z/e, where e is the exponent of the subgroup.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub struct AbelianStructure {
    group: Arc<FiniteGroup>,
    elements: Vec<u32>,
    /// d1 | d2 | ... | dr, each >= 2; empty for the trivial subgroup.
    invariant_factors: Vec<u64>,
    /// basis[i] generates the Z/d_i factor.
    basis: Vec<u32>,
    log: HashMap<u32, Vec<u64>>,
    exponent: u64,
}

impl fmt::Debug for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianStructure{:?}", self.invariant_factors)
    }
}

impl PartialEq for AbelianStructure {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements == other.elements
    }
}
impl Eq for AbelianStructure {}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
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

impl AbelianStructure {
    /// Structure of an abelian subgroup, cached per element list on the
    /// parent group.
    pub fn for_subgroup(sub: &Subgroup) -> Result<Arc<AbelianStructure>> {
        let group = sub.group();
        {
            let cache = group.structure_cache().lock().unwrap();
            if let Some(s) = cache.get(sub.elements()) {
                return Ok(Arc::clone(s));
            }
        }
        if !sub.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let built = Arc::new(Self::build(sub));
        let mut cache = group.structure_cache().lock().unwrap();
        Ok(Arc::clone(
            cache.entry(sub.elements().to_vec()).or_insert(built),
        ))
    }

    fn build(sub: &Subgroup) -> AbelianStructure {
        let group = Arc::clone(sub.group());
        let n = sub.order() as u64;
        // Per-prime bases in decreasing order of element order.
        let mut primary: Vec<Vec<(u32, u64)>> = Vec::new();
        for p in prime_factors(n) {
            let part: Vec<u32> = sub
                .elements()
                .iter()
                .copied()
                .filter(|&x| {
                    let mut o = group.elem_order(x) as u64;
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            primary.push(Self::p_part_basis(&group, &part, p));
        }
        // Merge across primes: the k-th largest factors multiply together.
        let rank = primary.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut merged: Vec<(u32, u64)> = Vec::new();
        for k in 0..rank {
            let mut elem = 0u32;
            let mut order = 1u64;
            for basis_p in &primary {
                if let Some(&(e, o)) = basis_p.get(k) {
                    elem = group.mul(elem, e);
                    order *= o;
                }
            }
            merged.push((elem, order));
        }
        merged.reverse(); // ascending: d1 | d2 | ... | dr
        let invariant_factors: Vec<u64> = merged.iter().map(|&(_, o)| o).collect();
        let basis: Vec<u32> = merged.iter().map(|&(e, _)| e).collect();
        debug_assert_eq!(invariant_factors.iter().product::<u64>(), n);
        let exponent = invariant_factors.last().copied().unwrap_or(1);

        // log/exp by enumerating the exponent box; the count coming out equal
        // to |H| is exactly the directness of the decomposition.
        let mut log: HashMap<u32, Vec<u64>> = HashMap::new();
        let mut stack: Vec<(usize, u32, Vec<u64>)> = vec![(0, 0, Vec::new())];
        while let Some((i, elem, tuple)) = stack.pop() {
            if i == basis.len() {
                let dup = log.insert(elem, tuple);
                assert!(dup.is_none(), "abelian basis is not direct");
                continue;
            }
            let mut x = elem;
            for a in 0..invariant_factors[i] {
                let mut t = tuple.clone();
                t.push(a);
                stack.push((i + 1, x, t));
                x = group.mul(x, basis[i]);
            }
        }
        assert_eq!(log.len() as u64, n, "abelian basis does not span");

        AbelianStructure {
            group,
            elements: sub.elements().to_vec(),
            invariant_factors,
            basis,
            log,
            exponent,
        }
    }

    /// Basis of an abelian p-group, greedy on order with smallest element
    /// index first, returned in decreasing order of element order.
    fn p_part_basis(group: &Arc<FiniteGroup>, part: &[u32], _p: u64) -> Vec<(u32, u64)> {
        let mut basis: Vec<(u32, u64)> = Vec::new();
        // span: element -> exponents over current basis
        let mut span: HashMap<u32, Vec<u64>> = HashMap::new();
        span.insert(0, Vec::new());
        while span.len() < part.len() {
            // quotient order of x modulo the current span
            let qord = |x: u32| -> u64 {
                let mut y = x;
                let mut k = 1u64;
                while !span.contains_key(&y) {
                    // y = x^(k) steps up to x^(order), which reaches identity
                    y = {
                        let mut z = y;
                        z = group.mul(z, x);
                        z
                    };
                    k += 1;
                }
                k
            };
            let mut best: Option<(u64, u32)> = None;
            for &x in part {
                if span.contains_key(&x) {
                    continue;
                }
                let q = qord(x);
                match best {
                    Some((bq, _)) if bq >= q => {}
                    _ => best = Some((q, x)),
                }
            }
            let (q, x) = best.expect("p-part not spanned but no candidate");
            // adjust the lift so its order drops to its quotient order
            let mut pow = x;
            for _ in 1..q {
                pow = group.mul(pow, x);
            }
            let coeffs = span.get(&pow).expect("x^q must be in the span").clone();
            let mut adjusted = x;
            for (i, &(b, _ord)) in basis.iter().enumerate() {
                let c = coeffs[i];
                assert_eq!(c % q, 0, "quotient order must divide span exponents");
                let shift = c / q;
                let mut binv_pow = 0u32;
                let binv = group.inv(b);
                for _ in 0..shift {
                    binv_pow = group.mul(binv_pow, binv);
                }
                adjusted = group.mul(adjusted, binv_pow);
            }
            assert_eq!(group.elem_order(adjusted) as u64, q, "adjusted lift order");
            basis.push((adjusted, q));
            // rebuild the span map over the enlarged basis
            span.clear();
            let mut stack: Vec<(usize, u32, Vec<u64>)> = vec![(0, 0, Vec::new())];
            while let Some((i, elem, tuple)) = stack.pop() {
                if i == basis.len() {
                    let dup = span.insert(elem, tuple);
                    assert!(dup.is_none(), "p-part basis is not direct");
                    continue;
                }
                let mut e = elem;
                for a in 0..basis[i].1 {
                    let mut t = tuple.clone();
                    t.push(a);
                    stack.push((i + 1, e, t));
                    e = group.mul(e, basis[i].0);
                }
            }
        }
        basis
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Exponent of the subgroup: the largest invariant factor, 1 if trivial.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn log(&self, elem: u32) -> Option<&[u64]> {
        self.log.get(&elem).map(|v| v.as_slice())
    }

    pub fn exp(&self, tuple: &[u64]) -> u32 {
        assert_eq!(tuple.len(), self.basis.len());
        let mut out = 0u32;
        for (i, &a) in tuple.iter().enumerate() {
            let a = a % self.invariant_factors[i];
            let mut pow = 0u32;
            for _ in 0..a {
                pow = self.group.mul(pow, self.basis[i]);
            }
            out = self.group.mul(out, pow);
        }
        out
    }

    pub fn subgroup(&self) -> Subgroup {
        Subgroup::from_elements(&self.group, &self.elements).expect("structure elements closed")
    }
}

/// An element of the dual of an abelian subgroup.
#[derive(Clone)]
pub struct Character {
    structure: Arc<AbelianStructure>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character{:?}", self.coeffs)
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.structure == other.structure && self.coeffs == other.coeffs
    }
}
impl Eq for Character {}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Character {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.structure
            .elements
            .cmp(&other.structure.elements)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Character {
    pub fn new(structure: Arc<AbelianStructure>, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != structure.rank() {
            return Err(Error::StructureMismatch);
        }
        let coeffs = coeffs
            .iter()
            .zip(structure.invariant_factors())
            .map(|(&a, &d)| a % d)
            .collect();
        Ok(Character { structure, coeffs })
    }

    pub fn zero(structure: Arc<AbelianStructure>) -> Self {
        let coeffs = vec![0; structure.rank()];
        Character { structure, coeffs }
    }

    /// The character determined by exponent values (mod e) on a generating
    /// set. Fails when the values are inconsistent or the set does not
    /// generate the subgroup.
    pub fn from_element_values(structure: &Arc<AbelianStructure>, values: &[(u32, u64)]) -> Result<Self> {
        let group = structure.group();
        let e = structure.exponent();
        let mut val: HashMap<u32, u64> = HashMap::new();
        val.insert(0, 0);
        let mut frontier = vec![0u32];
        while let Some(h) = frontier.pop() {
            let vh = val[&h];
            for &(g, vg) in values {
                if structure.log(g).is_none() {
                    return Err(Error::BadSubgroup(format!(
                        "element {} is outside the subgroup",
                        group.elem_name(g)
                    )));
                }
                let hg = group.mul(h, g);
                let vhg = (vh + vg) % e.max(1);
                match val.get(&hg) {
                    Some(&prev) if prev != vhg => {
                        return Err(Error::BadSubgroup(
                            "values do not define a homomorphism".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        val.insert(hg, vhg);
                        frontier.push(hg);
                    }
                }
            }
        }
        if val.len() as u64 != structure.order() {
            return Err(Error::BadSubgroup(
                "given elements do not generate the subgroup".into(),
            ));
        }
        let mut coeffs = Vec::with_capacity(structure.rank());
        for (i, &b) in structure.basis().iter().enumerate() {
            let d = structure.invariant_factors()[i];
            let v = val[&b];
            let step = e / d;
            if v % step != 0 {
                return Err(Error::BadSubgroup(
                    "values are not a character of the subgroup".into(),
                ));
            }
            coeffs.push((v / step) % d);
        }
        Ok(Character {
            structure: Arc::clone(structure),
            coeffs,
        })
    }

    pub fn structure(&self) -> &Arc<AbelianStructure> {
        &self.structure
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    /// Pairing value in Z/e at a subgroup element.
    pub fn pairing(&self, elem: u32) -> u64 {
        let e = self.structure.exponent();
        if e == 1 {
            return 0;
        }
        let x = self
            .structure
            .log(elem)
            .expect("element outside the subgroup");
        let mut acc = 0u64;
        for (i, (&a, &xi)) in self.coeffs.iter().zip(x.iter()).enumerate() {
            let d = self.structure.invariant_factors()[i];
            acc = (acc + a * xi % e * (e / d)) % e;
        }
        acc
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        if self.structure != other.structure {
            return Err(Error::StructureMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .zip(self.structure.invariant_factors())
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(Character {
            structure: Arc::clone(&self.structure),
            coeffs,
        })
    }

    pub fn neg(&self) -> Character {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.structure.invariant_factors())
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        Character {
            structure: Arc::clone(&self.structure),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Character {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.structure.invariant_factors())
            .map(|(&a, &d)| a * (k % d) % d)
            .collect();
        Character {
            structure: Arc::clone(&self.structure),
            coeffs,
        }
    }

    pub fn order(&self) -> u64 {
        let mut o = 1u64;
        for (&a, &d) in self.coeffs.iter().zip(self.structure.invariant_factors()) {
            let oa = d / gcd(a, d);
            o = o / gcd(o, oa) * oa;
        }
        o
    }

    /// Restriction to a sub-subgroup, recomputed against that subgroup's own
    /// canonical structure.
    pub fn restrict(&self, target: &Subgroup) -> Result<Character> {
        let own = self.structure.subgroup();
        if !target.is_subgroup_of(&own) {
            return Err(Error::BadSubgroup(
                "restriction target is not contained in the character's subgroup".into(),
            ));
        }
        let ts = AbelianStructure::for_subgroup(target)?;
        let e = self.structure.exponent();
        let mut coeffs = Vec::with_capacity(ts.rank());
        for (i, &b) in ts.basis().iter().enumerate() {
            let d = ts.invariant_factors()[i];
            let v = self.pairing(b);
            // v is a multiple of e/d because b has order d
            debug_assert_eq!(v * d % e.max(1), 0);
            coeffs.push(v * d / e.max(1) % d);
        }
        Ok(Character {
            structure: ts,
            coeffs,
        })
    }

    /// Kernel as a subgroup of the parent group.
    pub fn kernel(&self) -> Subgroup {
        let elems: Vec<u32> = self
            .structure
            .elements()
            .iter()
            .copied()
            .filter(|&h| self.pairing(h) == 0)
            .collect();
        Subgroup::from_elements(self.structure.group(), &elems).expect("kernel is a subgroup")
    }

    /// Membership of this character in the cyclic subgroup of the dual
    /// generated by `c`.
    pub fn in_cyclic(&self, c: &Character) -> Result<bool> {
        if self.structure != c.structure {
            return Err(Error::StructureMismatch);
        }
        let o = c.order();
        for k in 0..o {
            if c.scale(k) == *self {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Conjugate character over gHg^{-1}, with the convention
    /// `b^g(x) = b(g^{-1} x g)`.
    pub fn conjugate(&self, g: u32) -> Character {
        let group = self.structure.group();
        let own = self.structure.subgroup();
        let target = own.conjugate(g);
        let ts = AbelianStructure::for_subgroup(&target).expect("conjugate of abelian is abelian");
        let e = ts.exponent();
        debug_assert_eq!(e, self.structure.exponent());
        let ginv = group.inv(g);
        let mut coeffs = Vec::with_capacity(ts.rank());
        for (i, &b) in ts.basis().iter().enumerate() {
            let d = ts.invariant_factors()[i];
            let v = self.pairing(group.conj(ginv, b));
            debug_assert_eq!(v * d % e.max(1), 0);
            coeffs.push(v * d / e.max(1) % d);
        }
        Character {
            structure: ts,
            coeffs,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "(")?;
            for (i, a) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", a)?;
            }
            write!(f, ")")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}
