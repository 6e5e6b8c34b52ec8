//! Config files: a TOML table whose keys are the long flag names.
//!
//! The file is turned into command-line arguments and parsed by the same
//! clap definition, so both routes are validated identically. Flags given on
//! the command line override the file.

use std::ffi::OsString;
use std::path::Path;

const SUBCOMMANDS: [&str; 6] = ["sift", "bound", "lsieve", "sievefun", "chen", "verify"];
const VALUE_FLAGS: [&str; 4] = ["--config", "--format", "--output", "--seed"];

/// Renders a TOML value as a flag argument; arrays become comma lists.
fn render(key: &str, value: &toml::Value) -> Result<String, String> {
    Ok(match value {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Array(items) => items
            .iter()
            .map(|v| match v {
                toml::Value::Array(_) | toml::Value::Table(_) => Err(format!("`{key}`: nested arrays are not allowed")),
                v => render(key, v),
            })
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        toml::Value::Boolean(_) | toml::Value::Datetime(_) | toml::Value::Table(_) => {
            return Err(format!("`{key}` has an unsupported value"))
        }
    })
}

/// Arguments equivalent to the config file, subcommand first.
pub fn config_args(text: &str) -> Result<(Option<String>, Vec<String>), String> {
    let table: toml::Table = toml::from_str(text).map_err(|e| e.to_string())?;
    let mut command = None;
    let mut args = Vec::new();
    for (key, value) in &table {
        if key == "command" {
            match value {
                toml::Value::String(s) => command = Some(s.clone()),
                _ => return Err("`command` must be a string".into()),
            }
            continue;
        }
        if key == "config" {
            return Err("config files cannot include other config files".into());
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            toml::Value::Boolean(true) => args.push(flag),
            toml::Value::Boolean(false) => {}
            v => {
                args.push(flag);
                args.push(render(key, v)?);
            }
        }
    }
    Ok((command, args))
}

/// The command line with any `--config FILE` expanded in place.
pub fn expand(raw: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut config = None;
    let mut rest = Vec::new();
    let mut command = None;
    let mut iter = raw.into_iter();
    let bin = iter.next().unwrap_or_else(|| "sievekit".into());
    let mut expecting_value = false;
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy().into_owned();
        if s == "--config" {
            config = Some(iter.next().ok_or("--config needs a file")?);
            continue;
        }
        if let Some(path) = s.strip_prefix("--config=") {
            config = Some(path.into());
            continue;
        }
        if command.is_none() && !expecting_value && SUBCOMMANDS.contains(&s.as_str()) {
            command = Some(arg);
            continue;
        }
        expecting_value = VALUE_FLAGS.contains(&s.as_str());
        rest.push(arg);
    }
    let Some(path) = config else {
        let mut out = vec![bin];
        out.extend(command);
        out.extend(rest);
        return Ok(out);
    };
    let text = read(Path::new(&path))?;
    let (file_command, file_args) = config_args(&text).map_err(|e| format!("{}: {e}", Path::new(&path).display()))?;
    let command = command
        .or(file_command.map(OsString::from))
        .ok_or("no subcommand given on the command line or in the config file")?;
    let mut out = vec![bin, command];
    out.extend(file_args.into_iter().map(OsString::from));
    out.extend(rest);
    Ok(out)
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}
