//! `key = value` configuration files. Every key is the long name of a flag;
//! flags given on the command line win.

use std::ffi::OsString;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgMatches, Command, CommandFactory};

use crate::args::Cli;
use crate::CliError;

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key = value", i + 1)));
        };
        let key = k.trim().replace('_', "-");
        let value = v.trim().trim_matches('"').to_string();
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((key, value));
    }
    Ok(out)
}

pub fn load_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Appends `--key value` for each config entry that names a flag of the
/// selected subcommand and was not given on the command line.
pub fn merge(args: &[OsString], entries: &[(String, String)]) -> Result<Vec<OsString>, CliError> {
    let root = Cli::command();
    let matches = root.clone().try_get_matches_from(args).map_err(CliError::Clap)?;
    let (leaf_cmd, leaf_matches) = leaf(&root, &matches);
    let mut out = args.to_vec();
    for (key, value) in entries {
        if key == "config" {
            continue;
        }
        let arg = leaf_cmd
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()));
        let Some(arg) = arg else {
            if !known_anywhere(&root, key) {
                return Err(CliError::Usage(format!("unknown config key `{key}`")));
            }
            tracing::debug!(key, "config key does not apply to this command");
            continue;
        };
        let id = arg.get_id().as_str();
        if leaf_matches.value_source(id) == Some(ValueSource::CommandLine) {
            continue;
        }
        let flag = OsString::from(format!("--{key}"));
        if !arg.get_action().takes_values() {
            match value.as_str() {
                "true" => out.push(flag),
                "false" => {}
                _ => return Err(CliError::Usage(format!("config key `{key}` expects true or false"))),
            }
            continue;
        }
        for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            out.push(flag.clone());
            out.push(OsString::from(part));
        }
    }
    Ok(out)
}

fn leaf<'a>(cmd: &'a Command, m: &'a ArgMatches) -> (&'a Command, &'a ArgMatches) {
    match m.subcommand() {
        Some((name, sub)) => match cmd.find_subcommand(name) {
            Some(c) => leaf(c, sub),
            None => (cmd, m),
        },
        None => (cmd, m),
    }
}

fn known_anywhere(cmd: &Command, key: &str) -> bool {
    cmd.get_arguments().any(|a| a.get_long() == Some(key)) || cmd.get_subcommands().any(|c| known_anywhere(c, key))
}
