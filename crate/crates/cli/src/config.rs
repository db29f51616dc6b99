//! Structured-text configuration: `key = value` lines grouped in one
//! section per subcommand. Values supply defaults; explicit flags win.
//! Unknown sections or keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const SECTIONS: &[(&str, &[&str])] = &[
    ("verify", &["n", "a", "b", "tol"]),
    ("shape", &["a", "b", "target"]),
    ("slopes", &["u", "v", "L"]),
    (
        "render",
        &[
            "example",
            "n",
            "a",
            "b",
            "max-len",
            "dual",
            "out",
            "stroke-width",
            "circle-color",
            "domain-color",
        ],
    ),
    ("pinch", &["example", "n", "a", "b", "word", "enumerate", "tol"]),
    ("beltsum", &["n", "m3", "m2"]),
];

#[derive(Debug, Default)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                let known = SECTIONS.iter().find(|(s, _)| *s == name);
                if known.is_none() {
                    bail!("line {}: unknown section [{name}]", lineno + 1);
                }
                sections.entry(name.to_string()).or_default();
                current = Some(name.to_string());
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("line {}: expected 'key = value', got '{line}'", lineno + 1);
            };
            let key = key.trim();
            let value = value.trim();
            let Some(section) = &current else {
                bail!("line {}: key '{key}' outside any [section]", lineno + 1);
            };
            let (_, keys) = SECTIONS
                .iter()
                .find(|(s, _)| s == section)
                .expect("section validated on entry");
            if !keys.contains(&key) {
                bail!("line {}: unknown key '{key}' in section [{section}]", lineno + 1);
            }
            sections
                .get_mut(section)
                .expect("section inserted on entry")
                .insert(key.to_string(), value.to_string());
        }
        Ok(Config { sections })
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|m| m.get(key))
            .map(String::as_str)
    }
}
