//! Script AST and its canonical pretty-printer.
//!
//! The printer regenerates parseable source; `parse ∘ print ∘ parse` is a
//! fixed point, which the tests pin down.

use std::fmt;

/// A permutation literal: a product of cycles of 1-based points. Empty
/// means the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermLit {
    pub cycles: Vec<Vec<u32>>,
}

impl fmt::Display for PermLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenList(pub Vec<PermLit>);

impl fmt::Display for GenList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ">")
    }
}

/// A character written as coefficients against the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTuple(pub Vec<u64>);

impl fmt::Display for CharTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, a) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", a)?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Perm { degree: u32, gens: GenList },
    Product { left: String, right: String },
    SubgroupOf { gens: GenList, parent: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinTerm {
    pub coeff: i64,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedTerm {
    pub coeff: i64,
    pub h: GenList,
    pub hp: GenList,
    pub y: GenList,
    pub beta: Vec<CharTuple>,
    pub gamma: Vec<(usize, CharTuple)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Group {
        name: String,
        expr: GroupExpr,
    },
    Subgroup {
        name: String,
        gens: GenList,
        group: String,
    },
    Symbol {
        name: String,
        h: GenList,
        y: GenList,
        beta: Vec<CharTuple>,
        group: String,
        dim: u32,
    },
    Class {
        name: String,
        terms: Vec<LinTerm>,
        group: String,
        dim: u32,
    },
    Prefilter {
        name: String,
        pairs: Vec<(GenList, GenList)>,
        group: String,
    },
    Indexed {
        name: String,
        projective: bool,
        terms: Vec<IndexedTerm>,
        group: String,
        dim: u32,
    },
}

/// Reference to a presentation: group, dimension, optional prefilter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcRef {
    pub group: String,
    pub dim: u32,
    pub prefilter: Option<String>,
}

impl fmt::Display for BcRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.prefilter {
            None => write!(f, "BC({}, {})", self.group, self.dim),
            Some(p) => write!(f, "BC({}, {}, {})", self.group, self.dim, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cmd {
    Structure {
        bc: BcRef,
    },
    Reduce {
        class: String,
        bc: BcRef,
        store: Option<String>,
    },
    IsZero {
        class: String,
        bc: BcRef,
    },
    Equal {
        left: String,
        right: String,
        bc: BcRef,
    },
    Restrict {
        class: String,
        from: String,
        to: String,
        store: Option<String>,
    },
    Product {
        left: String,
        right: String,
        group: String,
        store: Option<String>,
    },
    DiagonalProduct {
        left: String,
        right: String,
        store: Option<String>,
    },
    Projectivize {
        indexed: String,
        store: Option<String>,
    },
    Project {
        class: String,
        prefilter: String,
        store: Option<String>,
    },
    CheckPrefilter {
        prefilter: String,
    },
    Basis {
        gens: GenList,
        group: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Decl(Decl),
    Cmd(Cmd),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Script {
    pub items: Vec<Item>,
}

fn write_chars(f: &mut fmt::Formatter<'_>, chars: &[CharTuple]) -> fmt::Result {
    write!(f, "[")?;
    for (i, c) in chars.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", c)?;
    }
    write!(f, "]")
}

fn write_lin(f: &mut fmt::Formatter<'_>, terms: &[LinTerm]) -> fmt::Result {
    for (i, t) in terms.iter().enumerate() {
        let mag = t.coeff.unsigned_abs();
        if i == 0 {
            if t.coeff < 0 {
                write!(f, "-")?;
            }
        } else if t.coeff < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mag != 1 {
            write!(f, "{}*", mag)?;
        }
        write!(f, "{}", t.name)?;
    }
    Ok(())
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Decl(d) => writeln!(f, "{}", d)?,
                Item::Cmd(c) => writeln!(f, "{}", c)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Group { name, expr } => match expr {
                GroupExpr::Perm { degree, gens } => {
                    write!(f, "group {} = perm({}) {}", name, degree, gens)
                }
                GroupExpr::Product { left, right } => {
                    write!(f, "group {} = product({}, {})", name, left, right)
                }
                GroupExpr::SubgroupOf { gens, parent } => {
                    write!(f, "group {} = subgroup {} of {}", name, gens, parent)
                }
            },
            Decl::Subgroup { name, gens, group } => {
                write!(f, "subgroup {} = {} in {}", name, gens, group)
            }
            Decl::Symbol {
                name,
                h,
                y,
                beta,
                group,
                dim,
            } => {
                write!(f, "symbol {} = (H={}, Y={}, beta=", name, h, y)?;
                write_chars(f, beta)?;
                write!(f, ") in {} dim {}", group, dim)
            }
            Decl::Class {
                name,
                terms,
                group,
                dim,
            } => {
                write!(f, "class {} = ", name)?;
                write_lin(f, terms)?;
                write!(f, " in {} dim {}", group, dim)
            }
            Decl::Prefilter { name, pairs, group } => {
                write!(f, "prefilter {} = {{", name)?;
                for (i, (h, y)) in pairs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "(H={}, Y={})", h, y)?;
                }
                write!(f, "}} in {}", group)
            }
            Decl::Indexed {
                name,
                projective,
                terms,
                group,
                dim,
            } => {
                write!(f, "indexed {} = ", name)?;
                if *projective {
                    write!(f, "projective ")?;
                }
                write!(f, "[")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    if t.coeff != 1 {
                        write!(f, "{}*", t.coeff)?;
                    }
                    write!(f, "(H={}, Hp={}, Y={}, beta=", t.h, t.hp, t.y)?;
                    write_chars(f, &t.beta)?;
                    write!(f, ", gamma={{")?;
                    for (k, (idx, c)) in t.gamma.iter().enumerate() {
                        if k > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}: {}", idx, c)?;
                    }
                    write!(f, "}})")?;
                }
                write!(f, "] in {} dim {}", group, dim)
            }
        }
    }
}

impl fmt::Display for Cmd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let store = |f: &mut fmt::Formatter<'_>, s: &Option<String>| -> fmt::Result {
            if let Some(name) = s {
                write!(f, " as {}", name)?;
            }
            Ok(())
        };
        match self {
            Cmd::Structure { bc } => write!(f, "structure {}", bc),
            Cmd::Reduce { class, bc, store: s } => {
                write!(f, "reduce {} in {}", class, bc)?;
                store(f, s)
            }
            Cmd::IsZero { class, bc } => write!(f, "is_zero {} in {}", class, bc),
            Cmd::Equal { left, right, bc } => write!(f, "equal {} {} in {}", left, right, bc),
            Cmd::Restrict {
                class,
                from,
                to,
                store: s,
            } => {
                write!(f, "restrict {} from {} to {}", class, from, to)?;
                store(f, s)
            }
            Cmd::Product {
                left,
                right,
                group,
                store: s,
            } => {
                write!(f, "product {} {} in {}", left, right, group)?;
                store(f, s)
            }
            Cmd::DiagonalProduct { left, right, store: s } => {
                write!(f, "diagonal_product {} {}", left, right)?;
                store(f, s)
            }
            Cmd::Projectivize { indexed, store: s } => {
                write!(f, "projectivize {}", indexed)?;
                store(f, s)
            }
            Cmd::Project {
                class,
                prefilter,
                store: s,
            } => {
                write!(f, "project {} with {}", class, prefilter)?;
                store(f, s)
            }
            Cmd::CheckPrefilter { prefilter } => write!(f, "check_prefilter {}", prefilter),
            Cmd::Basis { gens, group } => write!(f, "basis {} in {}", gens, group),
        }
    }
}
