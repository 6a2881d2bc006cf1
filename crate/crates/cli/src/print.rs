//! Canonical catml output. Categories are printed with their full
//! composition tables, so re-parsing never needs elaboration.

use std::fmt::Write;

use twocolim_core::fincat::{FinCategory, FinFunctor, Mor, NatTransformation};
use twocolim_core::pseudo::PseudoFunctor;

use crate::workspace::{ConeEntry, CoconeEntry, PseudoEntry, Shape, Workspace};

pub fn category(c: &FinCategory) -> String {
    let mut s = format!("[category {}]\n", c.name());
    let objs: Vec<&str> = c.objects().map(|o| c.object_name(o)).collect();
    if objs.is_empty() {
        s.push_str("objects =\n");
    } else {
        writeln!(s, "objects = {}", objs.join(" ")).unwrap();
    }
    for o in c.objects() {
        let id = c.mor_name(c.identity(o));
        if id != format!("id_{}", c.object_name(o)) {
            writeln!(s, "identity {} = {id}", c.object_name(o)).unwrap();
        }
    }
    for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
        writeln!(s, "mor {} : {} -> {}", c.mor_name(m), c.object_name(c.dom(m)), c.object_name(c.cod(m))).unwrap();
    }
    for (g, f) in c.composable_pairs() {
        if c.is_identity(g) || c.is_identity(f) {
            continue;
        }
        writeln!(s, "compose {} {} = {}", c.mor_name(g), c.mor_name(f), c.mor_name(c.compose(g, f))).unwrap();
    }
    s
}

pub fn functor(f: &FinFunctor) -> String {
    let (a, b) = (f.source(), f.target());
    let mut s = format!("[functor {} : {} -> {}]\n", f.name(), a.name(), b.name());
    for o in a.objects() {
        writeln!(s, "obj {} = {}", a.object_name(o), b.object_name(f.obj(o))).unwrap();
    }
    for m in a.morphisms().filter(|&m| !a.is_identity(m)) {
        writeln!(s, "mor {} = {}", a.mor_name(m), b.mor_name(f.mor(m))).unwrap();
    }
    s
}

pub fn nat(n: &NatTransformation) -> String {
    let (a, b) = (n.source().source(), n.source().target());
    let mut s = format!("[nat {} : {} => {}]\n", n.name(), n.source().name(), n.target().name());
    for o in a.objects() {
        writeln!(s, "at {} = {}", a.object_name(o), b.mor_name(n.component(o))).unwrap();
    }
    s
}

fn table(rows: &FinCategory, values: &FinCategory, comps: impl Fn(usize) -> Mor) -> String {
    rows.objects()
        .map(|x| format!("{} = {}", rows.object_name(x), values.mor_name(comps(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cells_line(head: String, body: String) -> String {
    if body.is_empty() {
        format!("{head} :\n")
    } else {
        format!("{head} : {body}\n")
    }
}

pub fn pseudofunctor(p: &PseudoEntry) -> String {
    let u: &PseudoFunctor = &p.functor;
    let ix = u.index();
    let index = match &p.shape {
        Shape::Plain(c) => c.name().to_string(),
        Shape::Opposite(c) => format!("{}^op", c.name()),
        Shape::Product { i, j, .. } => format!("{} x {}^op", i.name(), j.name()),
    };
    let mut s = format!("[pseudofunctor {} : {index} -> CAT]\n", u.name());
    for o in ix.objects() {
        writeln!(s, "at {} = {}", ix.object_name(o), u.at(o).name()).unwrap();
    }
    for &m in &p.declared_on {
        writeln!(s, "on {} = {}", ix.mor_name(m), u.on(m).name()).unwrap();
    }
    for o in ix.objects().filter(|&o| u.has_unit_cell(o)) {
        let c = u.at(o);
        s.push_str(&cells_line(format!("unit {}", ix.object_name(o)), table(c, c, |x| u.unit(o, x))));
    }
    let mut keys: Vec<(Mor, Mor)> = u.comp_cells().keys().copied().collect();
    keys.sort();
    for (g, f) in keys {
        let (rows, values) = (u.at(ix.dom(f)), u.at(ix.cod(g)));
        s.push_str(&cells_line(
            format!("comp {} {}", ix.mor_name(g), ix.mor_name(f)),
            table(rows, values, |x| u.comp(g, f, x)),
        ));
    }
    s
}

pub fn cocone(ws: &Workspace, c: &CoconeEntry) -> String {
    let r = &c.cocone;
    let b = &ws.pseudofunctor(&c.diagram).expect("cocone diagram is loaded").functor;
    let ix = b.index();
    let mut s = format!("[cocone {} : {} -> {}]\n", r.name, c.diagram, r.target.name());
    for o in ix.objects() {
        writeln!(s, "leg {} = {}", ix.object_name(o), r.legs[o].name()).unwrap();
    }
    for m in ix.morphisms() {
        if let Some(v) = &r.cells[m] {
            s.push_str(&cells_line(format!("cell {}", ix.mor_name(m)), table(b.at(ix.dom(m)), &r.target, |x| v[x])));
        }
    }
    s
}

pub fn cone(ws: &Workspace, c: &ConeEntry) -> String {
    let r = &c.cone;
    let d = &ws.pseudofunctor(&c.diagram).expect("cone diagram is loaded").functor;
    let ix = d.index();
    let mut s = format!("[cone {} : {} -> {}]\n", r.name, r.source.name(), c.diagram);
    for o in ix.objects() {
        writeln!(s, "leg {} = {}", ix.object_name(o), r.legs[o].name()).unwrap();
    }
    for m in ix.morphisms() {
        if let Some(v) = &r.cells[m] {
            s.push_str(&cells_line(format!("cell {}", ix.mor_name(m)), table(&r.source, d.at(ix.cod(m)), |x| v[x])));
        }
    }
    s
}

/// Every entity, grouped by kind, in declaration order.
pub fn workspace(ws: &Workspace) -> String {
    let mut parts: Vec<String> = Vec::new();
    parts.extend(ws.categories.iter().map(|c| category(c)));
    parts.extend(ws.functors.iter().map(functor));
    parts.extend(ws.nats.iter().map(nat));
    parts.extend(ws.pseudofunctors.iter().map(pseudofunctor));
    parts.extend(ws.cocones.iter().map(|c| cocone(ws, c)));
    parts.extend(ws.cones.iter().map(|c| cone(ws, c)));
    parts.join("\n")
}
