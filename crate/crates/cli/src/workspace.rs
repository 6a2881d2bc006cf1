//! Resolution of parsed blocks into validated entities.

use std::collections::HashMap;
use std::sync::Arc;

use twocolim_core::bicolim::PseudoCocone;
use twocolim_core::bilim::PseudoCone;
use twocolim_core::fincat::{validate_functor, validate_nat, FinCategory, FinFunctor, Mor, NatTransformation, ProductCategory, RawFunctor, RawNat};
use twocolim_core::pseudo::{product_index, validate_pseudofunctor, BiIndexedPseudoFunctor, PseudoFunctor, PseudoFunctorSpec};

use crate::elaborate::elaborate;
use crate::error::{CliError, Location, Result};
use crate::syntax::{parse_blocks, Block, Header, IndexShape, Stmt, Table, Token};

pub const DEFAULT_MAX_ELAB: usize = 64;

#[derive(Debug, Clone)]
pub enum Shape {
    Plain(Arc<FinCategory>),
    /// Indexed by `J^op`; holds `J`.
    Opposite(Arc<FinCategory>),
    Product { i: Arc<FinCategory>, j: Arc<FinCategory>, product: ProductCategory },
}

#[derive(Debug, Clone)]
pub struct PseudoEntry {
    pub shape: Shape,
    pub functor: PseudoFunctor,
    /// Index morphisms with an explicit `on` line, in declaration order.
    pub declared_on: Vec<Mor>,
    pub at: Location,
}

#[derive(Debug, Clone)]
pub struct CoconeEntry {
    pub diagram: String,
    pub cocone: PseudoCocone,
}

#[derive(Debug, Clone)]
pub struct ConeEntry {
    pub diagram: String,
    pub cone: PseudoCone,
}

#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub categories: Vec<Arc<FinCategory>>,
    pub functors: Vec<FinFunctor>,
    pub nats: Vec<NatTransformation>,
    pub pseudofunctors: Vec<PseudoEntry>,
    pub cocones: Vec<CoconeEntry>,
    pub cones: Vec<ConeEntry>,
    names: HashMap<String, Location>,
}

fn unresolved(block: &Block, t: &Token, kind: &'static str) -> CliError {
    CliError::UnresolvedReference {
        at: block.at(t),
        kind,
        name: t.text.clone(),
    }
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&Arc<FinCategory>> {
        self.categories.iter().find(|c| c.name() == name)
    }

    pub fn functor(&self, name: &str) -> Option<&FinFunctor> {
        self.functors.iter().find(|f| f.name() == name)
    }

    pub fn pseudofunctor(&self, name: &str) -> Option<&PseudoEntry> {
        self.pseudofunctors.iter().find(|p| p.functor.name() == name)
    }

    pub fn cocone(&self, name: &str) -> Option<&CoconeEntry> {
        self.cocones.iter().find(|c| c.cocone.name == name)
    }

    pub fn cone(&self, name: &str) -> Option<&ConeEntry> {
        self.cones.iter().find(|c| c.cone.name == name)
    }

    /// The bi-indexed view of a pseudofunctor on `I x J^op`.
    pub fn bi_indexed(&self, name: &str, skip_filter_check: bool) -> Result<BiIndexedPseudoFunctor> {
        let p = self.pseudofunctor(name).ok_or_else(|| missing("pseudofunctor", name))?;
        let Shape::Product { i, j, product } = &p.shape else {
            return Err(CliError::Core {
                at: Some(p.at.clone()),
                source: twocolim_core::Error::ShapeMismatch(format!("`{name}` is not indexed by a product I x J^op")),
            });
        };
        BiIndexedPseudoFunctor::new(i.clone(), j.clone(), product.clone(), p.functor.clone(), skip_filter_check).map_err(|e| CliError::Core {
            at: Some(p.at.clone()),
            source: e,
        })
    }

    fn claim(&mut self, block: &Block, t: &Token) -> Result<()> {
        if self.names.contains_key(&t.text) {
            return Err(CliError::Duplicate {
                at: block.at(t),
                kind: "entity",
                name: t.text.clone(),
            });
        }
        self.names.insert(t.text.clone(), block.at(t));
        Ok(())
    }

    fn cat_ref(&self, block: &Block, t: &Token) -> Result<Arc<FinCategory>> {
        self.category(&t.text).cloned().ok_or_else(|| unresolved(block, t, "category"))
    }

    fn functor_ref(&self, block: &Block, t: &Token) -> Result<FinFunctor> {
        self.functor(&t.text).cloned().ok_or_else(|| unresolved(block, t, "functor"))
    }
}

/// Names a missing entity requested on the command line.
pub fn missing(kind: &'static str, name: &str) -> CliError {
    CliError::UnresolvedReference {
        at: Location {
            file: "<command line>".into(),
            line: 0,
            column: 0,
        },
        kind,
        name: name.to_string(),
    }
}

fn core_at<'a>(block: &'a Block, t: &'a Token) -> impl Fn(twocolim_core::Error) -> CliError + 'a {
    let at = block.at(t);
    move |e| CliError::Core {
        at: Some(at.clone()),
        source: e,
    }
}

fn resolve_table(block: &Block, table: &Table, rows: &FinCategory, values: &FinCategory) -> Result<Vec<Mor>> {
    let mut out = vec![None; rows.num_objects()];
    for (k, v) in table {
        let o = rows.object_by_name(&k.text).ok_or_else(|| unresolved(block, k, "object"))?;
        let m = values.morphism_by_name(&v.text).ok_or_else(|| unresolved(block, v, "morphism"))?;
        out[o] = Some(m);
    }
    out.into_iter()
        .enumerate()
        .map(|(o, m)| {
            m.ok_or_else(|| CliError::Syntax {
                at: Location {
                    file: block.file.clone(),
                    line: table.first().map(|t| t.0.line).unwrap_or(block.line),
                    column: 1,
                },
                message: format!("component table has no entry for `{}`", rows.object_name(o)),
            })
        })
        .collect()
}

fn load_category(ws: &mut Workspace, block: &Block, max_elab: usize) -> Result<()> {
    ws.claim(block, block.header.name())?;
    ws.categories.push(Arc::new(elaborate(block, max_elab)?));
    Ok(())
}

fn load_functor(ws: &mut Workspace, block: &Block) -> Result<()> {
    let Header::Functor { name, source, target } = &block.header else { unreachable!() };
    ws.claim(block, name)?;
    let (s, t) = (ws.cat_ref(block, source)?, ws.cat_ref(block, target)?);
    let mut raw = RawFunctor {
        name: name.text.clone(),
        ..Default::default()
    };
    for stmt in &block.body {
        match stmt {
            Stmt::ObjMap { from, to } => {
                s.object_by_name(&from.text).ok_or_else(|| unresolved(block, from, "object"))?;
                t.object_by_name(&to.text).ok_or_else(|| unresolved(block, to, "object"))?;
                raw.objects.push((from.text.clone(), to.text.clone()));
            }
            Stmt::MorMap { from, to } => {
                s.morphism_by_name(&from.text).ok_or_else(|| unresolved(block, from, "morphism"))?;
                t.morphism_by_name(&to.text).ok_or_else(|| unresolved(block, to, "morphism"))?;
                raw.morphisms.push((from.text.clone(), to.text.clone()));
            }
            _ => unreachable!("the parser only admits obj/mor lines here"),
        }
    }
    ws.functors.push(validate_functor(&raw, &s, &t).map_err(core_at(block, name))?);
    Ok(())
}

fn load_nat(ws: &mut Workspace, block: &Block) -> Result<()> {
    let Header::Nat { name, source, target } = &block.header else { unreachable!() };
    ws.claim(block, name)?;
    let (f, g) = (ws.functor_ref(block, source)?, ws.functor_ref(block, target)?);
    let mut raw = RawNat {
        name: name.text.clone(),
        ..Default::default()
    };
    for stmt in &block.body {
        if let Stmt::At { key, value } = stmt {
            f.source().object_by_name(&key.text).ok_or_else(|| unresolved(block, key, "object"))?;
            f.target().morphism_by_name(&value.text).ok_or_else(|| unresolved(block, value, "morphism"))?;
            raw.components.push((key.text.clone(), value.text.clone()));
        }
    }
    ws.nats.push(validate_nat(&raw, &f, &g, false).map_err(core_at(block, name))?);
    Ok(())
}

fn load_pseudo(ws: &mut Workspace, block: &Block) -> Result<()> {
    let Header::Pseudo { name, index } = &block.header else { unreachable!() };
    ws.claim(block, name)?;
    let (shape, ix) = match index {
        IndexShape::Plain(t) => {
            let c = ws.cat_ref(block, t)?;
            (Shape::Plain(c.clone()), c)
        }
        IndexShape::Opposite(t) => {
            let c = ws.cat_ref(block, t)?;
            let op = Arc::new(c.opposite());
            (Shape::Opposite(c), op)
        }
        IndexShape::Product(a, b) => {
            let (i, j) = (ws.cat_ref(block, a)?, ws.cat_ref(block, b)?);
            let product = product_index(&i, &j);
            let cat = product.category.clone();
            (Shape::Product { i, j, product }, cat)
        }
    };
    let mut at: Vec<Option<Arc<FinCategory>>> = vec![None; ix.num_objects()];
    let mut on: Vec<Option<FinFunctor>> = vec![None; ix.num_morphisms()];
    let mut declared_on = Vec::new();
    for stmt in &block.body {
        match stmt {
            Stmt::At { key, value } => {
                let o = ix.object_by_name(&key.text).ok_or_else(|| unresolved(block, key, "index object"))?;
                at[o] = Some(ws.cat_ref(block, value)?);
            }
            Stmt::On { key, value } => {
                let m = ix.morphism_by_name(&key.text).ok_or_else(|| unresolved(block, key, "index morphism"))?;
                on[m] = Some(ws.functor_ref(block, value)?);
                declared_on.push(m);
            }
            _ => {}
        }
    }
    let mut unit = vec![None; ix.num_objects()];
    let mut comp = HashMap::new();
    for stmt in &block.body {
        match stmt {
            Stmt::Unit { object, table } => {
                let o = ix.object_by_name(&object.text).ok_or_else(|| unresolved(block, object, "index object"))?;
                let c = at[o].clone().ok_or_else(|| unresolved(block, object, "value at index object"))?;
                unit[o] = Some(resolve_table(block, table, &c, &c)?);
            }
            Stmt::Comp { g, f, table } => {
                let mg = ix.morphism_by_name(&g.text).ok_or_else(|| unresolved(block, g, "index morphism"))?;
                let mf = ix.morphism_by_name(&f.text).ok_or_else(|| unresolved(block, f, "index morphism"))?;
                if ix.dom(mg) != ix.cod(mf) {
                    return Err(core_at(block, g)(twocolim_core::Error::BadEndpoints(format!(
                        "`{}` and `{}` are not composable",
                        g.text, f.text
                    ))));
                }
                let rows = at[ix.dom(mf)].clone().ok_or_else(|| unresolved(block, f, "value at index object"))?;
                let values = at[ix.cod(mg)].clone().ok_or_else(|| unresolved(block, g, "value at index object"))?;
                comp.insert((mg, mf), resolve_table(block, table, &rows, &values)?);
            }
            _ => {}
        }
    }
    let functor = validate_pseudofunctor(PseudoFunctorSpec {
        name: name.text.clone(),
        index: ix,
        at,
        on,
        unit,
        comp,
    })
    .map_err(core_at(block, name))?;
    ws.pseudofunctors.push(PseudoEntry {
        shape,
        functor,
        declared_on,
        at: block.at(name),
    });
    Ok(())
}

/// Legs and cells shared by cocone and cone blocks.
fn legs_and_cells(
    ws: &Workspace,
    block: &Block,
    ix: &FinCategory,
    cell_rows: impl Fn(Mor) -> Arc<FinCategory>,
    cell_values: impl Fn(Mor) -> Arc<FinCategory>,
) -> Result<(Vec<FinFunctor>, Vec<Option<Vec<Mor>>>)> {
    let mut legs = vec![None; ix.num_objects()];
    let mut cells = vec![None; ix.num_morphisms()];
    for stmt in &block.body {
        match stmt {
            Stmt::Leg { key, value } => {
                let o = ix.object_by_name(&key.text).ok_or_else(|| unresolved(block, key, "index object"))?;
                legs[o] = Some(ws.functor_ref(block, value)?);
            }
            Stmt::Cell { key, table } => {
                let m = ix.morphism_by_name(&key.text).ok_or_else(|| unresolved(block, key, "index morphism"))?;
                cells[m] = Some(resolve_table(block, table, &cell_rows(m), &cell_values(m))?);
            }
            _ => {}
        }
    }
    let legs = legs
        .into_iter()
        .enumerate()
        .map(|(o, l)| {
            l.ok_or_else(|| CliError::Syntax {
                at: block.at(block.header.name()),
                message: format!("no leg at `{}`", ix.object_name(o)),
            })
        })
        .collect::<Result<_>>()?;
    Ok((legs, cells))
}

fn load_cocone(ws: &mut Workspace, block: &Block) -> Result<()> {
    let Header::Cocone { name, diagram, target } = &block.header else { unreachable!() };
    ws.claim(block, name)?;
    let b = ws.pseudofunctor(&diagram.text).ok_or_else(|| unresolved(block, diagram, "pseudofunctor"))?.functor.clone();
    let t = ws.cat_ref(block, target)?;
    let ix = b.index().clone();
    let (legs, cells) = legs_and_cells(ws, block, &ix, |m| b.at(ix.dom(m)).clone(), |_| t.clone())?;
    let cocone = PseudoCocone {
        name: name.text.clone(),
        target: t,
        legs,
        cells,
    };
    cocone.validate(&b).map_err(core_at(block, name))?;
    ws.cocones.push(CoconeEntry {
        diagram: diagram.text.clone(),
        cocone,
    });
    Ok(())
}

fn load_cone(ws: &mut Workspace, block: &Block) -> Result<()> {
    let Header::Cone { name, source, diagram } = &block.header else { unreachable!() };
    ws.claim(block, name)?;
    let c = ws.pseudofunctor(&diagram.text).ok_or_else(|| unresolved(block, diagram, "pseudofunctor"))?.functor.clone();
    let d = ws.cat_ref(block, source)?;
    let ix = c.index().clone();
    let (legs, cells) = legs_and_cells(ws, block, &ix, |_| d.clone(), |m| c.at(ix.cod(m)).clone())?;
    let cone = PseudoCone {
        name: name.text.clone(),
        source: d,
        legs,
        cells,
    };
    cone.validate(&c).map_err(core_at(block, name))?;
    ws.cones.push(ConeEntry {
        diagram: diagram.text.clone(),
        cone,
    });
    Ok(())
}

/// Builds a workspace from `(file name, contents)` pairs. Entities may refer
/// to entities of other kinds declared anywhere in the input.
pub fn load_sources(sources: &[(String, String)], max_elab: usize) -> Result<Workspace> {
    let mut blocks = Vec::new();
    for (file, text) in sources {
        blocks.extend(parse_blocks(file, text)?);
    }
    let mut ws = Workspace::default();
    let kind = |b: &Block| match b.header {
        Header::Category { .. } => 0,
        Header::Functor { .. } => 1,
        Header::Nat { .. } => 2,
        Header::Pseudo { .. } => 3,
        Header::Cocone { .. } => 4,
        Header::Cone { .. } => 5,
    };
    for pass in 0..6 {
        for b in blocks.iter().filter(|b| kind(b) == pass) {
            match pass {
                0 => load_category(&mut ws, b, max_elab)?,
                1 => load_functor(&mut ws, b)?,
                2 => load_nat(&mut ws, b)?,
                3 => load_pseudo(&mut ws, b)?,
                4 => load_cocone(&mut ws, b)?,
                _ => load_cone(&mut ws, b)?,
            }
        }
    }
    Ok(ws)
}

pub fn load_files(paths: &[std::path::PathBuf], max_elab: usize) -> Result<Workspace> {
    let sources = paths
        .iter()
        .map(|p| {
            std::fs::read_to_string(p)
                .map(|text| (p.display().to_string(), text))
                .map_err(|e| CliError::Io {
                    path: p.display().to_string(),
                    message: e.to_string(),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    load_sources(&sources, max_elab)
}
