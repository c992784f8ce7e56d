//! Run configuration: flags over config file over defaults.

use std::path::{Path, PathBuf};

use qrgroups::groups::DEFAULT_ELEMENT_BUDGET;
use qrgroups::mixing::Tolerances;
use qrgroups::productfree::DEFAULT_NODE_BUDGET;
use qrgroups::Exec;
use serde::Deserialize;

use crate::cli::GlobalArgs;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: f64,
    pub workers: usize,
    pub element_budget: u64,
    pub node_budget: u64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            tolerance: 1e-9,
            workers: 1,
            element_budget: DEFAULT_ELEMENT_BUDGET,
            node_budget: DEFAULT_NODE_BUDGET,
            output: None,
        }
    }
}

/// Keys accepted in the TOML file; the flag spellings and their
/// snake_case forms both work.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    seed: Option<u64>,
    tolerance: Option<f64>,
    workers: Option<usize>,
    #[serde(alias = "element_budget")]
    element_budget: Option<u64>,
    #[serde(alias = "node_budget")]
    node_budget: Option<u64>,
    output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, String> {
        let file = match &args.config {
            Some(path) => load(path)?,
            None => FileConfig::default(),
        };
        let d = RunConfig::default();
        let cfg = RunConfig {
            seed: args.seed.or(file.seed).unwrap_or(d.seed),
            tolerance: args.tolerance.or(file.tolerance).unwrap_or(d.tolerance),
            workers: args.workers.or(file.workers).unwrap_or(d.workers),
            element_budget: args.element_budget.or(file.element_budget).unwrap_or(d.element_budget),
            node_budget: args.node_budget.or(file.node_budget).unwrap_or(d.node_budget),
            output: args.output.clone().or(file.output),
        };
        if !(cfg.tolerance > 0.0 && cfg.tolerance.is_finite()) {
            return Err(format!("tolerance must be positive, got {}", cfg.tolerance));
        }
        if cfg.workers == 0 {
            return Err("workers must be at least 1".into());
        }
        Ok(cfg)
    }

    pub fn exec(&self) -> Exec {
        Exec::for_workers(self.workers)
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances { norm: self.tolerance, ..Tolerances::default() }
    }
}

fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(&GlobalArgs::default()).unwrap();
        assert_eq!(c, RunConfig::default());
        assert_eq!(c.seed, 42);
        assert_eq!(c.workers, 1);
        assert_eq!(c.element_budget, 100_000);
        assert_eq!(c.node_budget, 10_000_000);
    }

    #[test]
    fn flags_beat_file() {
        let dir = std::env::temp_dir().join(format!("qrgroups-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "seed = 7\nworkers = 3\nnode_budget = 55\n").unwrap();
        let args = GlobalArgs { seed: Some(9), config: Some(path), ..GlobalArgs::default() };
        let c = RunConfig::resolve(&args).unwrap();
        assert_eq!((c.seed, c.workers, c.node_budget), (9, 3, 55));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(toml::from_str::<FileConfig>("sed = 1").is_err());
        assert!(toml::from_str::<FileConfig>("element-budget = 10").unwrap().element_budget == Some(10));
    }

    #[test]
    fn bad_tolerance() {
        let args = GlobalArgs { tolerance: Some(0.0), ..GlobalArgs::default() };
        assert!(RunConfig::resolve(&args).is_err());
    }
}
