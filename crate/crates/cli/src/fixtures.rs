//! Bundled example inputs. `TWISTLAB_FIXTURES` points at a directory of
//! `NAME.json` files that replaces the bundled set.

use std::path::Path;

use crate::CliError;

pub const ENV_VAR: &str = "TWISTLAB_FIXTURES";

const BUNDLED: [(&str, &str); 5] = [
    ("E1", include_str!("../fixtures/E1.json")),
    ("genus2-squares", include_str!("../fixtures/genus2-squares.json")),
    ("genus3-b1", include_str!("../fixtures/genus3-b1.json")),
    ("wajnryb-map21", include_str!("../fixtures/wajnryb-map21.json")),
    ("sl2z-amalgam", include_str!("../fixtures/sl2z-amalgam.json")),
];

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Fixture text from `dir` if given, otherwise from the bundled set.
pub fn load_from(dir: Option<&Path>, name: &str) -> Result<String, CliError> {
    match dir {
        Some(d) => {
            let path = d.join(format!("{name}.json"));
            std::fs::read_to_string(&path).map_err(|e| CliError::Io(path.display().to_string(), e))
        }
        None => bundled(name)
            .map(str::to_string)
            .ok_or_else(|| CliError::UnknownFixture(name.to_string())),
    }
}

pub fn load(name: &str) -> Result<String, CliError> {
    let dir = std::env::var_os(ENV_VAR);
    load_from(dir.as_deref().map(Path::new), name)
}

/// Names available under `dir`, or the bundled names.
pub fn list_from(dir: Option<&Path>) -> Result<Vec<String>, CliError> {
    let Some(d) = dir else {
        return Ok(names().into_iter().map(String::from).collect());
    };
    let entries = std::fs::read_dir(d).map_err(|e| CliError::Io(d.display().to_string(), e))?;
    let mut out: Vec<String> = entries
        .filter_map(Result::ok)
        .filter_map(|e| {
            let p = e.path();
            (p.extension()? == "json").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    out.sort();
    Ok(out)
}
