//! Flat key-value config files: one `key = value` (or `key value`) pair
//! per line, `#` comments. Explicit command-line flags override file
//! values.

use std::collections::HashMap;
use std::path::Path;

use gaplab_core::barrier::{BarrierSpec, Shape};

pub struct Config {
    values: HashMap<String, String>,
}

/// Renders a resolved barrier as a loadable flat key-value block.
pub fn render_barrier(spec: &BarrierSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("alpha = {:e}\n", spec.alpha));
    out.push_str(&format!("beta = {:e}\n", spec.beta));
    out.push_str(&format!(
        "shape = {}\n",
        match spec.shape {
            Shape::Rectangular => "rectangular",
            Shape::Gaussian => "gaussian",
        }
    ));
    out.push_str(&format!("center = {:e}\n", spec.center_fraction));
    out.push_str(&format!("height-scale = {:e}\n", spec.height_scale));
    out.push_str(&format!("width-scale = {:e}\n", spec.width_scale));
    if let Some((half_width, height)) = spec.explicit_override {
        out.push_str(&format!("override-width = {:e}\n", 2.0 * half_width));
        out.push_str(&format!("override-height = {:e}\n", height));
    }
    out
}

impl Config {
    pub fn empty() -> Self {
        Config { values: HashMap::new() }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = match line.split_once('=') {
                Some((k, v)) => (k, v),
                None => line
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?,
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("config key {key}: not a number: {v}")),
        }
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_pairs_and_comments() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# barrier\nalpha = 0.3\nbeta 0.45  # inline\nshape = gaussian").unwrap();
        let c = Config::load(f.path()).unwrap();
        assert_eq!(c.get_f64("alpha").unwrap(), Some(0.3));
        assert_eq!(c.get_f64("beta").unwrap(), Some(0.45));
        assert_eq!(c.get_str("shape"), Some("gaussian"));
        assert_eq!(c.get_f64("missing").unwrap(), None);
    }

    #[test]
    fn rejects_bad_number() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "alpha = zebra").unwrap();
        let c = Config::load(f.path()).unwrap();
        assert!(c.get_f64("alpha").is_err());
    }
}
