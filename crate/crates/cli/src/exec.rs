//! Script execution: declaration loading and command dispatch, with a
//! presentation cache keyed by (group, dimension, prefilter).

use crate::ast::*;
use crate::lexer::Pos;
use crate::report::{BasisOut, ClassTerm, CommandResult, Diagnostics, Report, StructureOut};
use burnc_core::abelian::{AbelianStructure, Character};
use burnc_core::group::{FiniteGroup, ProductParts, Subgroup, DEFAULT_MAX_ORDER};
use burnc_core::perm::Perm;
use burnc_core::symbols::{IndexedSymbol, Symbol};
use burnc_core::{
    diagonal_product, fibration_class, product, restrict, BurnsideClass, Limits, Prefilter,
    Presentation, RestrictedGroup,
};
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;
use std::time::Instant;

pub struct DeclError {
    pub pos: Pos,
    pub message: String,
}

struct GroupEntry {
    group: Arc<FiniteGroup>,
    product: Option<Rc<ProductParts>>,
    restricted: Option<RestrictedEntry>,
}

struct RestrictedEntry {
    parent: String,
    sub: Subgroup,
    target: Rc<RestrictedGroup>,
}

struct ClassEntry {
    group_name: String,
    class: BurnsideClass,
}

struct IndexedEntry {
    group_name: String,
    dim: u32,
    projective: bool,
    terms: Vec<(i64, IndexedSymbol)>,
}

pub struct Executor {
    limits: Limits,
    timing: bool,
    groups: BTreeMap<String, GroupEntry>,
    subgroups: BTreeMap<(String, String), Subgroup>,
    classes: BTreeMap<String, ClassEntry>,
    prefilters: BTreeMap<String, (String, Prefilter)>,
    indexed: BTreeMap<String, IndexedEntry>,
    presentations: BTreeMap<(String, u32, Option<String>), Rc<Presentation>>,
    squares: BTreeMap<String, Rc<ProductParts>>,
    materialized: BTreeMap<(String, String), Rc<RestrictedGroup>>,
}

impl Executor {
    pub fn new(limits: Limits, timing: bool) -> Self {
        Executor {
            limits,
            timing,
            groups: BTreeMap::new(),
            subgroups: BTreeMap::new(),
            classes: BTreeMap::new(),
            prefilters: BTreeMap::new(),
            indexed: BTreeMap::new(),
            presentations: BTreeMap::new(),
            squares: BTreeMap::new(),
            materialized: BTreeMap::new(),
        }
    }

    /// Loads every declaration; fails fast with a position on the first
    /// unresolved name, dimension mismatch, or invalid algebraic datum.
    pub fn load(&mut self, script: &Script, positions: &[Pos]) -> Result<(), DeclError> {
        for (item, &pos) in script.items.iter().zip(positions) {
            if let Item::Decl(decl) = item {
                self.load_decl(decl).map_err(|message| DeclError { pos, message })?;
            }
        }
        Ok(())
    }

    fn group(&self, name: &str) -> Result<&GroupEntry, String> {
        self.groups
            .get(name)
            .ok_or_else(|| format!("unknown group `{}`", name))
    }

    fn class(&self, name: &str) -> Result<&ClassEntry, String> {
        self.classes
            .get(name)
            .ok_or_else(|| format!("unknown symbol or class `{}`", name))
    }

    fn perm_of(&self, lit: &PermLit, degree: u32) -> Result<Perm, String> {
        Perm::from_cycles(degree, &lit.cycles).map_err(|e| e.to_string())
    }

    fn gens_of(&self, list: &GenList, group: &Arc<FiniteGroup>) -> Result<Vec<u32>, String> {
        let mut out = Vec::new();
        for lit in &list.0 {
            let p = self.perm_of(lit, group.degree())?;
            let e = group
                .elem_from_perm(&p)
                .ok_or_else(|| format!("permutation {} is not an element of the group", p))?;
            out.push(e);
        }
        Ok(out)
    }

    fn subgroup_of(&self, list: &GenList, group: &Arc<FiniteGroup>) -> Result<Subgroup, String> {
        Ok(Subgroup::generated(group, &self.gens_of(list, group)?))
    }

    fn lift_of(
        &self,
        h: &Subgroup,
        ylist: &GenList,
        group: &Arc<FiniteGroup>,
    ) -> Result<Subgroup, String> {
        let ygens = self.gens_of(ylist, group)?;
        Ok(h.extended(&ygens))
    }

    fn characters_of(
        &self,
        sub: &Subgroup,
        tuples: &[CharTuple],
    ) -> Result<Vec<Character>, String> {
        let st = AbelianStructure::for_subgroup(sub).map_err(|e| e.to_string())?;
        tuples
            .iter()
            .map(|t| {
                if t.0.len() != st.rank() {
                    return Err(format!(
                        "character tuple {} has {} coordinates, the canonical basis has {}",
                        t,
                        t.0.len(),
                        st.rank()
                    ));
                }
                Character::new(Arc::clone(&st), t.0.clone()).map_err(|e| e.to_string())
            })
            .collect()
    }

    fn register_class(&mut self, name: &str, entry: ClassEntry) -> Result<(), String> {
        if self.classes.contains_key(name) {
            return Err(format!("name `{}` is already a symbol or class", name));
        }
        self.classes.insert(name.to_string(), entry);
        Ok(())
    }

    fn load_decl(&mut self, decl: &Decl) -> Result<(), String> {
        match decl {
            Decl::Group { name, expr } => {
                if self.groups.contains_key(name) {
                    return Err(format!("group `{}` is already declared", name));
                }
                let entry = match expr {
                    GroupExpr::Perm { degree, gens } => {
                        if *degree == 0 {
                            return Err("permutation degree must be positive".into());
                        }
                        let perms: Vec<Perm> = gens
                            .0
                            .iter()
                            .map(|lit| self.perm_of(lit, *degree))
                            .collect::<Result<_, _>>()?;
                        let group =
                            FiniteGroup::from_permutations(name, *degree, &perms, DEFAULT_MAX_ORDER)
                                .map_err(|e| e.to_string())?;
                        GroupEntry {
                            group,
                            product: None,
                            restricted: None,
                        }
                    }
                    GroupExpr::Product { left, right } => {
                        let l = Arc::clone(&self.group(left)?.group);
                        let r = Arc::clone(&self.group(right)?.group);
                        let parts = FiniteGroup::direct_product(name, &l, &r, DEFAULT_MAX_ORDER)
                            .map_err(|e| e.to_string())?;
                        let group = Arc::clone(&parts.group);
                        GroupEntry {
                            group,
                            product: Some(Rc::new(parts)),
                            restricted: None,
                        }
                    }
                    GroupExpr::SubgroupOf { gens, parent } => {
                        let parent_entry = self.group(parent)?;
                        let sub = self.subgroup_of(gens, &parent_entry.group)?;
                        let target =
                            RestrictedGroup::of(&sub, name).map_err(|e| e.to_string())?;
                        GroupEntry {
                            group: Arc::clone(&target.group),
                            product: None,
                            restricted: Some(RestrictedEntry {
                                parent: parent.clone(),
                                sub,
                                target: Rc::new(target),
                            }),
                        }
                    }
                };
                self.groups.insert(name.clone(), entry);
                Ok(())
            }
            Decl::Subgroup { name, gens, group } => {
                let g = Arc::clone(&self.group(group)?.group);
                let sub = self.subgroup_of(gens, &g)?;
                let key = (group.clone(), name.clone());
                if self.subgroups.contains_key(&key) {
                    return Err(format!("subgroup `{}` of `{}` is already declared", name, group));
                }
                self.subgroups.insert(key, sub);
                Ok(())
            }
            Decl::Symbol {
                name,
                h,
                y,
                beta,
                group,
                dim,
            } => {
                let g = Arc::clone(&self.group(group)?.group);
                let hsub = self.subgroup_of(h, &g)?;
                let lift = self.lift_of(&hsub, y, &g)?;
                let chars = self.characters_of(&hsub, beta)?;
                let sym = Symbol::new(hsub, lift, chars, *dim).map_err(|e| e.to_string())?;
                self.register_class(
                    name,
                    ClassEntry {
                        group_name: group.clone(),
                        class: BurnsideClass::from_symbol(&sym),
                    },
                )
            }
            Decl::Class {
                name,
                terms,
                group,
                dim,
            } => {
                let g = Arc::clone(&self.group(group)?.group);
                let mut acc = BurnsideClass::zero(&g, *dim);
                for t in terms {
                    let entry = self.class(&t.name)?;
                    if entry.group_name != *group {
                        return Err(format!(
                            "`{}` lives over group `{}`, not `{}`",
                            t.name, entry.group_name, group
                        ));
                    }
                    if entry.class.n() != *dim {
                        return Err(format!(
                            "`{}` has dimension {}, the class is declared in dimension {}",
                            t.name,
                            entry.class.n(),
                            dim
                        ));
                    }
                    acc = acc
                        .add(&entry.class.scale(t.coeff))
                        .map_err(|e| e.to_string())?;
                }
                self.register_class(
                    name,
                    ClassEntry {
                        group_name: group.clone(),
                        class: acc,
                    },
                )
            }
            Decl::Prefilter { name, pairs, group } => {
                let g = Arc::clone(&self.group(group)?.group);
                let mut resolved = Vec::new();
                for (h, y) in pairs {
                    let hsub = self.subgroup_of(h, &g)?;
                    let lift = self.lift_of(&hsub, y, &g)?;
                    resolved.push((hsub, lift));
                }
                let pf = Prefilter::new(&g, &resolved).map_err(|e| e.to_string())?;
                if self.prefilters.contains_key(name) {
                    return Err(format!("prefilter `{}` is already declared", name));
                }
                self.prefilters.insert(name.clone(), (group.clone(), pf));
                Ok(())
            }
            Decl::Indexed {
                name,
                projective,
                terms,
                group,
                dim,
            } => {
                let g = Arc::clone(&self.group(group)?.group);
                let mut resolved = Vec::new();
                for t in terms {
                    let hsub = self.subgroup_of(&t.h, &g)?;
                    let hpsub = self.subgroup_of(&t.hp, &g)?;
                    let lift = self.lift_of(&hpsub, &t.y, &g)?;
                    let beta = self.characters_of(&hpsub, &t.beta)?;
                    let st = AbelianStructure::for_subgroup(&hpsub).map_err(|e| e.to_string())?;
                    let mut gamma = BTreeMap::new();
                    for (idx, tuple) in &t.gamma {
                        if tuple.0.len() != st.rank() {
                            return Err(format!(
                                "gamma tuple {} has {} coordinates, the canonical basis of H' has {}",
                                tuple,
                                tuple.0.len(),
                                st.rank()
                            ));
                        }
                        let c = Character::new(Arc::clone(&st), tuple.0.clone())
                            .map_err(|e| e.to_string())?;
                        if gamma.insert(*idx, c).is_some() {
                            return Err(format!("duplicate gamma index {}", idx));
                        }
                    }
                    let isym =
                        IndexedSymbol::new(hsub, hpsub, lift, beta, gamma, *dim, *projective)
                            .map_err(|e| e.to_string())?;
                    resolved.push((t.coeff, isym));
                }
                if self.indexed.contains_key(name) {
                    return Err(format!("indexed class `{}` is already declared", name));
                }
                self.indexed.insert(
                    name.clone(),
                    IndexedEntry {
                        group_name: group.clone(),
                        dim: *dim,
                        projective: *projective,
                        terms: resolved,
                    },
                );
                Ok(())
            }
        }
    }

    fn presentation(&mut self, bc: &BcRef) -> Result<Rc<Presentation>, String> {
        let key = (bc.group.clone(), bc.dim, bc.prefilter.clone());
        if let Some(p) = self.presentations.get(&key) {
            return Ok(Rc::clone(p));
        }
        let g = Arc::clone(&self.group(&bc.group)?.group);
        let pf = match &bc.prefilter {
            None => None,
            Some(name) => {
                let (pf_group, pf) = self
                    .prefilters
                    .get(name)
                    .ok_or_else(|| format!("unknown prefilter `{}`", name))?;
                if *pf_group != bc.group {
                    return Err(format!(
                        "prefilter `{}` lives over group `{}`, not `{}`",
                        name, pf_group, bc.group
                    ));
                }
                Some(pf.clone())
            }
        };
        let p = Presentation::build(&g, bc.dim, pf, &self.limits).map_err(|e| e.to_string())?;
        let p = Rc::new(p);
        self.presentations.insert(key, Rc::clone(&p));
        Ok(p)
    }

    fn class_for_bc(&self, name: &str, bc: &BcRef) -> Result<BurnsideClass, String> {
        let entry = self.class(name)?;
        if entry.group_name != bc.group {
            return Err(format!(
                "class `{}` lives over group `{}`, not `{}`",
                name, entry.group_name, bc.group
            ));
        }
        Ok(entry.class.clone())
    }

    fn listing(class: &BurnsideClass) -> Vec<ClassTerm> {
        class
            .terms()
            .iter()
            .map(|(sym, coeff)| ClassTerm {
                coeff,
                symbol: sym.to_string(),
            })
            .collect()
    }

    /// Runs one command; resource and math errors land in the result, not in
    /// a process failure.
    pub fn run_cmd(&mut self, cmd: &Cmd) -> CommandResult {
        let started = Instant::now();
        let mut result = CommandResult {
            command: cmd.to_string(),
            status: "ok".to_string(),
            ..Default::default()
        };
        if let Err(message) = self.dispatch(cmd, &mut result) {
            result.status = "error".to_string();
            result.message = Some(message);
        }
        if self.timing {
            result.timing_ms = Some(started.elapsed().as_millis());
        }
        result
    }

    fn dispatch(&mut self, cmd: &Cmd, out: &mut CommandResult) -> Result<(), String> {
        match cmd {
            Cmd::Structure { bc } => {
                let p = self.presentation(bc)?;
                let q = p.quotient();
                out.structure = Some(StructureOut {
                    free_rank: q.free_rank,
                    torsion: q.torsion.iter().map(|d| d.to_string()).collect(),
                    display: q.structure_string(),
                });
                out.diagnostics = Some(Diagnostics {
                    generators: p.generators().len(),
                    relations: p.relation_rows().len(),
                });
                Ok(())
            }
            Cmd::Reduce { class, bc, store } => {
                let c = self.class_for_bc(class, bc)?;
                let p = self.presentation(bc)?;
                let reduced = p.reduce_class(&c).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&reduced));
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name: bc.group.clone(),
                            class: reduced,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::IsZero { class, bc } => {
                let c = self.class_for_bc(class, bc)?;
                let p = self.presentation(bc)?;
                out.verdict = Some(p.class_is_zero(&c).map_err(|e| e.to_string())?);
                Ok(())
            }
            Cmd::Equal { left, right, bc } => {
                let a = self.class_for_bc(left, bc)?;
                let b = self.class_for_bc(right, bc)?;
                let p = self.presentation(bc)?;
                out.verdict = Some(p.classes_equal(&a, &b).map_err(|e| e.to_string())?);
                Ok(())
            }
            Cmd::Restrict {
                class,
                from,
                to,
                store,
            } => {
                let entry = self.class(class)?;
                if entry.group_name != *from {
                    return Err(format!(
                        "class `{}` lives over group `{}`, not `{}`",
                        class, entry.group_name, from
                    ));
                }
                let c = entry.class.clone();
                let (sub, target) = self.restriction_target(from, to)?;
                let restricted = restrict(&c, &target, &sub).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&restricted));
                out.group = Some(to.clone());
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name: to.clone(),
                            class: restricted,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::Product {
                left,
                right,
                group,
                store,
            } => {
                let parts = {
                    let entry = self.group(group)?;
                    entry
                        .product
                        .as_ref()
                        .map(Rc::clone)
                        .ok_or_else(|| format!("group `{}` was not declared as a product", group))?
                };
                let a = self.class(left)?.class.clone();
                let b = self.class(right)?.class.clone();
                let prod = product(&a, &b, &parts).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&prod));
                out.group = Some(group.clone());
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name: group.clone(),
                            class: prod,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::DiagonalProduct { left, right, store } => {
                let a = self.class(left)?;
                let b = self.class(right)?;
                if a.group_name != b.group_name {
                    return Err("diagonal product needs classes over the same group".into());
                }
                let group_name = a.group_name.clone();
                let a = a.class.clone();
                let b = b.class.clone();
                let square = self.square(&group_name)?;
                let d = diagonal_product(&a, &b, &square).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&d));
                out.group = Some(group_name.clone());
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name,
                            class: d,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::Projectivize { indexed, store } => {
                let entry = self
                    .indexed
                    .get(indexed)
                    .ok_or_else(|| format!("unknown indexed class `{}`", indexed))?;
                if !entry.projective {
                    return Err(format!(
                        "indexed class `{}` is not projective; projectivize needs relation (P)",
                        indexed
                    ));
                }
                let g = Arc::clone(&self.group(&entry.group_name)?.group);
                let class =
                    fibration_class(&g, entry.dim, &entry.terms).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&class));
                out.group = Some(entry.group_name.clone());
                let group_name = entry.group_name.clone();
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name,
                            class,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::Project {
                class,
                prefilter,
                store,
            } => {
                let (pf_group, pf) = self
                    .prefilters
                    .get(prefilter)
                    .ok_or_else(|| format!("unknown prefilter `{}`", prefilter))?;
                let entry = self.class(class)?;
                if entry.group_name != *pf_group {
                    return Err(format!(
                        "class `{}` and prefilter `{}` live over different groups",
                        class, prefilter
                    ));
                }
                let projected = entry.class.project(pf).map_err(|e| e.to_string())?;
                out.class = Some(Self::listing(&projected));
                let group_name = entry.group_name.clone();
                if let Some(name) = store {
                    self.register_class(
                        name,
                        ClassEntry {
                            group_name,
                            class: projected,
                        },
                    )?;
                }
                Ok(())
            }
            Cmd::CheckPrefilter { prefilter } => {
                let (_, pf) = self
                    .prefilters
                    .get(prefilter)
                    .ok_or_else(|| format!("unknown prefilter `{}`", prefilter))?;
                out.verdict = Some(pf.is_closed());
                Ok(())
            }
            Cmd::Basis { gens, group } => {
                let g = Arc::clone(&self.group(group)?.group);
                let sub = self.subgroup_of(gens, &g)?;
                let st = AbelianStructure::for_subgroup(&sub).map_err(|e| e.to_string())?;
                out.basis = Some(BasisOut {
                    elements: st.basis().iter().map(|&e| g.elem_name(e)).collect(),
                    invariant_factors: st.invariant_factors().to_vec(),
                });
                Ok(())
            }
        }
    }

    /// Resolves a restriction target: a group declared as `subgroup ... of
    /// from`, or a named subgroup of `from` materialized on demand.
    fn restriction_target(
        &mut self,
        from: &str,
        to: &str,
    ) -> Result<(Subgroup, Rc<RestrictedGroup>), String> {
        if let Some(entry) = self.groups.get(to) {
            let restricted = entry
                .restricted
                .as_ref()
                .ok_or_else(|| format!("group `{}` was not declared as a subgroup", to))?;
            if restricted.parent != from {
                return Err(format!(
                    "group `{}` is a subgroup of `{}`, not of `{}`",
                    to, restricted.parent, from
                ));
            }
            return Ok((restricted.sub.clone(), Rc::clone(&restricted.target)));
        }
        let key = (from.to_string(), to.to_string());
        if let Some(sub) = self.subgroups.get(&key).cloned() {
            if let Some(t) = self.materialized.get(&key) {
                return Ok((sub, Rc::clone(t)));
            }
            let target = Rc::new(RestrictedGroup::of(&sub, to).map_err(|e| e.to_string())?);
            self.materialized.insert(key, Rc::clone(&target));
            return Ok((sub, target));
        }
        Err(format!(
            "`{}` is neither a subgroup-declared group nor a named subgroup of `{}`",
            to, from
        ))
    }

    fn square(&mut self, group_name: &str) -> Result<Rc<ProductParts>, String> {
        if let Some(parts) = self.squares.get(group_name) {
            return Ok(Rc::clone(parts));
        }
        let g = Arc::clone(&self.group(group_name)?.group);
        let parts = FiniteGroup::direct_product(
            &format!("{}x{}", group_name, group_name),
            &g,
            &g,
            DEFAULT_MAX_ORDER,
        )
        .map_err(|e| e.to_string())?;
        let parts = Rc::new(parts);
        self.squares.insert(group_name.to_string(), Rc::clone(&parts));
        Ok(parts)
    }

    pub fn run_script(&mut self, script: &Script) -> Report {
        let mut report = Report::new();
        for item in &script.items {
            if let Item::Cmd(cmd) = item {
                report.results.push(self.run_cmd(cmd));
            }
        }
        report
    }
}
