#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use twocolim_cli::print;
use twocolim_cli::workspace::{load_files, load_sources, Workspace, DEFAULT_MAX_ELAB};
use twocolim_core::fincat::FinCategory;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "catml"))
        .collect();
    v.sort();
    v
}

pub fn corpus(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn twocolim(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_twocolim")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Checks that matching names give an isomorphism `a -> b`.
pub fn isomorphic_by_names(a: &FinCategory, b: &FinCategory) -> Result<(), String> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Err(format!("{}: sizes differ", a.name()));
    }
    let obj = |o| b.object_by_name(a.object_name(o)).ok_or_else(|| format!("{}: object `{}` lost", a.name(), a.object_name(o)));
    let mor = |m| b.morphism_by_name(a.mor_name(m)).ok_or_else(|| format!("{}: morphism `{}` lost", a.name(), a.mor_name(m)));
    for o in a.objects() {
        if b.identity(obj(o)?) != mor(a.identity(o))? {
            return Err(format!("{}: identity of `{}` moved", a.name(), a.object_name(o)));
        }
    }
    for m in a.morphisms() {
        let n = mor(m)?;
        if b.dom(n) != obj(a.dom(m))? || b.cod(n) != obj(a.cod(m))? {
            return Err(format!("{}: endpoints of `{}` moved", a.name(), a.mor_name(m)));
        }
    }
    for (g, f) in a.composable_pairs() {
        if b.compose(mor(g)?, mor(f)?) != mor(a.compose(g, f))? {
            return Err(format!("{}: `{}` . `{}` changed", a.name(), a.mor_name(g), a.mor_name(f)));
        }
    }
    Ok(())
}

/// Print, re-parse and compare every entity of a workspace.
pub fn round_trip(ws: &Workspace) -> Result<(), String> {
    let text = print::workspace(ws);
    let again = load_sources(&[("<printed>".to_string(), text.clone())], DEFAULT_MAX_ELAB).map_err(|e| e.to_string())?;
    if again.categories.len() != ws.categories.len()
        || again.functors.len() != ws.functors.len()
        || again.nats.len() != ws.nats.len()
        || again.pseudofunctors.len() != ws.pseudofunctors.len()
        || again.cocones.len() != ws.cocones.len()
        || again.cones.len() != ws.cones.len()
    {
        return Err("entity counts differ after re-parsing".into());
    }
    for c in &ws.categories {
        let d = again.category(c.name()).ok_or_else(|| format!("category `{}` lost", c.name()))?;
        isomorphic_by_names(c, d)?;
        isomorphic_by_names(d, c)?;
    }
    let second = print::workspace(&again);
    if second != text {
        return Err("printing the re-parsed workspace gives different text".into());
    }
    Ok(())
}

pub fn load(path: &Path) -> Workspace {
    load_files(&[path.to_path_buf()], DEFAULT_MAX_ELAB).unwrap()
}
