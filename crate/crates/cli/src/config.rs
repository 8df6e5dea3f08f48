use std::path::Path;

use selberg_core::config::ConfigOverrides;
use selberg_core::Config;

use crate::CliError;

pub const ENV_VAR: &str = "SELBERG_CONFIG";

/// Reads the TOML config from `path`, else `$SELBERG_CONFIG`, else
/// defaults. Every constant left at its default is announced on stderr.
pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
    let env_path = std::env::var_os(ENV_VAR);
    let path = path.or(env_path.as_deref().map(Path::new));
    let overrides = match path {
        None => ConfigOverrides::default(),
        Some(p) if !p.exists() => {
            eprintln!("warning: config file {} not found; using defaults", p.display());
            ConfigOverrides::default()
        }
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?;
            toml::from_str(&text).map_err(|e| CliError::Input(format!("bad config {}: {e}", p.display())))?
        }
    };
    let (cfg, defaulted) = Config::with_overrides(&overrides);
    cfg.validate()?;
    let as_json = serde_json::to_value(&cfg).expect("serializable");
    for name in defaulted {
        eprintln!("warning: {name} = {} is an illustrative default", as_json[name]);
    }
    Ok(cfg)
}
