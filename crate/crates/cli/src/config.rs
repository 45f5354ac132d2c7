//! `--config` files: flat `key = value` lines merged into the command line.
//!
//! Each key names a flag (`lambdas = 0.5,1` is `--lambdas 0.5,1`); `command` names the
//! subcommand. A flag given on the command line wins over the file.

use std::collections::BTreeMap;
use std::fs;

/// Parses `key = value` lines; blank lines and lines starting with `#` are skipped.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value, found {line:?}", n + 1))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key.starts_with('-') {
            return Err(format!("config line {}: bad key {key:?}", n + 1));
        }
        if key == "config" {
            return Err(format!("config line {}: config files do not nest", n + 1));
        }
        if out.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(format!("config line {}: {key} given twice", n + 1));
        }
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    args.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            args.get(i + 1).cloned()
        } else {
            a.strip_prefix("--config=").map(str::to_string)
        }
    })
}

fn given(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

/// The argument list with the config file's flags inserted after the subcommand.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("reading config {path}: {e}"))?;
    let mut entries = parse(&text)?;
    let command = entries.remove("command");
    let mut rest: Vec<String> = args.iter().skip(1).cloned().collect();
    let sub = match rest.first() {
        Some(first) if !first.starts_with('-') => rest.remove(0),
        _ => command.ok_or("config has no command and none was given")?,
    };
    let mut out = vec![args.first().cloned().unwrap_or_default(), sub];
    for (key, value) in entries {
        if given(&rest, &key) {
            continue;
        }
        match value.as_str() {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            _ => out.extend([format!("--{key}"), value]),
        }
    }
    out.extend(rest);
    Ok(out)
}
