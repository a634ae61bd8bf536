//! Layered settings: command-line flags over the config file over the
//! preset over built-in defaults.

use crate::args::parse_number;
use crate::error::{config, CliResult};
use crate::table::Format;
use ini::Ini;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Key-value pairs read from `[general]` and then the subcommand section.
#[derive(Debug, Default, Clone)]
pub struct FileLayer {
    values: BTreeMap<String, String>,
}

impl FileLayer {
    pub fn load(path: &Path, section: &str, known: &[&str]) -> CliResult<Self> {
        let ini = Ini::load_from_file(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for name in ["general", section] {
            if let Some(props) = ini.section(Some(name)) {
                for (k, v) in props.iter() {
                    let key = k.trim().replace('_', "-");
                    if !known.contains(&key.as_str()) {
                        return Err(config(format!("unknown key '{k}' in [{name}] of {}", path.display())));
                    }
                    values.insert(key, v.trim().to_string());
                }
            }
        }
        if let Some(props) = ini.section(None::<String>) {
            if let Some((k, _)) = props.iter().next() {
                return Err(config(format!("key '{k}' outside any section in {}", path.display())));
            }
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn number(&self, key: &str) -> CliResult<Option<f64>> {
        self.raw(key)
            .map(|s| parse_number(s).map_err(|e| config(format!("{key}: {e}"))))
            .transpose()
    }

    pub fn numbers(&self, key: &str) -> CliResult<Option<Vec<f64>>> {
        self.raw(key)
            .map(|s| {
                s.split(',')
                    .map(|p| parse_number(p).map_err(|e| config(format!("{key}: {e}"))))
                    .collect()
            })
            .transpose()
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|s| s.parse::<T>().map_err(|e| config(format!("{key}: {e}"))))
            .transpose()
    }

    pub fn flag(&self, key: &str) -> CliResult<Option<bool>> {
        self.raw(key)
            .map(|s| match s.to_ascii_lowercase().as_str() {
                "true" | "yes" | "on" | "1" => Ok(true),
                "false" | "no" | "off" | "0" => Ok(false),
                _ => Err(config(format!("{key}: expected a boolean, got '{s}'"))),
            })
            .transpose()
    }
}

pub const OUTPUT_KEYS: [&str; 4] = ["preset", "out-dir", "format", "threads"];

/// Output settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub preset: Option<String>,
    pub out_dir: PathBuf,
    pub format: Format,
    pub threads: Option<usize>,
}

impl OutputConfig {
    pub fn resolve(args: &crate::args::OutputArgs, file: &FileLayer) -> CliResult<Self> {
        let format = match &args.format {
            Some(f) => f.parse().map_err(config)?,
            None => file.parsed::<Format>("format")?.unwrap_or(Format::Csv),
        };
        let threads = args.threads.or(file.parsed("threads")?);
        if threads == Some(0) {
            return Err(config("threads must be at least 1"));
        }
        Ok(Self {
            preset: args.preset.clone().or_else(|| file.raw("preset").map(str::to_string)),
            out_dir: args
                .out_dir
                .clone()
                .or_else(|| file.raw("out-dir").map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out")),
            format,
            threads,
        })
    }
}

pub fn load_layer(path: Option<&Path>, section: &str, known: &[&str]) -> CliResult<FileLayer> {
    match path {
        Some(p) => FileLayer::load(p, section, known),
        None => Ok(FileLayer::default()),
    }
}
