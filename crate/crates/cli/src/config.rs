//! Optional TOML configuration with dotted keys; command-line flags win.

use std::path::Path;

use toml::{Table, Value};

#[derive(Debug, Default)]
pub struct Config {
    table: Table,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, String> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let table: Table = text
            .parse()
            .map_err(|e| format!("bad config {}: {e}", path.display()))?;
        Ok(Config { table })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        // accept both nested tables and quoted dotted keys
        if let Some(v) = self.table.get(key) {
            return Some(v);
        }
        let mut parts = key.split('.');
        let mut cur = self.table.get(parts.next()?)?;
        for p in parts {
            cur = cur.as_table()?.get(p)?;
        }
        Some(cur)
    }

    pub fn str(&self, key: &str) -> Result<Option<String>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(format!("config key {key} must be a string, found {v}")),
        }
    }

    pub fn int(&self, key: &str) -> Result<Option<i64>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(n)) => Ok(Some(*n)),
            Some(v) => Err(format!("config key {key} must be an integer, found {v}")),
        }
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Boolean(b)) => Ok(Some(*b)),
            Some(v) => Err(format!("config key {key} must be a boolean, found {v}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_and_dotted_keys() {
        let c = Config {
            table: "maxlen = 3\n\"gamma.specialize\" = true\n[cartan]\ntype = \"A2\"\n[window]\nkmin = -1\n"
                .parse()
                .unwrap(),
        };
        assert_eq!(c.str("cartan.type").unwrap().as_deref(), Some("A2"));
        assert_eq!(c.int("window.kmin").unwrap(), Some(-1));
        assert_eq!(c.int("maxlen").unwrap(), Some(3));
        assert_eq!(c.bool("gamma.specialize").unwrap(), Some(true));
        assert!(c.int("cartan.type").is_err());
        assert_eq!(c.int("window.kmax").unwrap(), None);
    }
}
