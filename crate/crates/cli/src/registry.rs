//! Named oracles and actions.

use std::path::{Path, PathBuf};

use cg_core::groups::{
    Action, FiniteGroup, FreeGroup, Group, Integers, RegularAction, TranslationAction, TrivialFiniteAction,
    TrivialGroup, Zn,
};
use cg_core::{Error, Result};

/// Work to run against whichever group a name resolves to.
pub trait GroupTask {
    type Out;
    fn run<G: Group>(self, group: G) -> Self::Out;
}

/// Work to run against whichever action a name resolves to.
pub trait ActionTask {
    type Out;
    fn run<A: Action>(self, action: A) -> Self::Out;
}

pub const ORACLE_HELP: &str = "trivial, s3, int, zmod<n>, z<n> (free abelian of rank n), free<n>, \
file:<path>, or a Cayley table found in CG_ORACLE_PATH";

pub const ACTION_HELP: &str = "translation, trivial:<n>, regular:<oracle>";

fn suffix_number(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn unknown(kind: &str, name: &str, help: &str) -> Error {
    Error::ActionMismatch(format!("unknown {kind} {name:?}; expected {help}"))
}

/// Looks `name` up as a Cayley table file in the directories of `CG_ORACLE_PATH`.
fn find_cayley(name: &str) -> Option<PathBuf> {
    let dirs = std::env::var_os("CG_ORACLE_PATH")?;
    std::env::split_paths(&dirs).find_map(|d| {
        [name.to_string(), format!("{name}.cayley"), format!("{name}.txt")]
            .into_iter()
            .map(|f| d.join(f))
            .find(|p| p.is_file())
    })
}

fn load_cayley(name: &str, path: &Path) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    FiniteGroup::from_cayley_text(name, &text)
}

pub fn with_oracle<T: GroupTask>(name: &str, task: T) -> Result<T::Out> {
    match name {
        "trivial" => return Ok(task.run(TrivialGroup)),
        "s3" => return Ok(task.run(FiniteGroup::symmetric3())),
        "int" => return Ok(task.run(Integers)),
        _ => {}
    }
    if let Some(n) = suffix_number(name, "zmod") {
        return Ok(task.run(FiniteGroup::cyclic(n)?));
    }
    if let Some(n) = suffix_number(name, "free") {
        return Ok(task.run(FreeGroup::new(n)?));
    }
    if let Some(n) = suffix_number(name, "z") {
        return Ok(task.run(Zn::new(n)?));
    }
    if let Some(path) = name.strip_prefix("file:") {
        let path = Path::new(path);
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
        return Ok(task.run(load_cayley(stem, path)?));
    }
    match find_cayley(name) {
        Some(path) => Ok(task.run(load_cayley(name, &path)?)),
        None => Err(unknown("oracle", name, ORACLE_HELP)),
    }
}

struct Regular<T>(T);

impl<T: ActionTask> GroupTask for Regular<T> {
    type Out = T::Out;

    fn run<G: Group>(self, group: G) -> T::Out {
        self.0.run(RegularAction::new(group))
    }
}

pub fn with_action<T: ActionTask>(name: &str, task: T) -> Result<T::Out> {
    if name == "translation" {
        return Ok(task.run(TranslationAction::new()));
    }
    if let Some(n) = name.strip_prefix("trivial:") {
        let n: u32 = n.parse().map_err(|_| unknown("action", name, ACTION_HELP))?;
        return Ok(task.run(TrivialFiniteAction::new(n)?));
    }
    if let Some(oracle) = name.strip_prefix("regular:") {
        return with_oracle(oracle, Regular(task));
    }
    Err(unknown("action", name, ACTION_HELP))
}
