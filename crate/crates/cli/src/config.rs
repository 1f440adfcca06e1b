//! Run configuration: flags merged over an optional `key=value` file.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::{json, Value};

use qgr_core::cohomology::{default_alpha, GrContext};
use qgr_core::hypergeometric::CISpec;
use qgr_core::scalar::q_str;
use qgr_core::Q;

use crate::Failure;

pub const DEFAULT_DEPTH: i64 = 6;

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaMode {
    Zero,
    Default,
    Explicit(Vec<Q>),
}

impl AlphaMode {
    fn parse(s: &str) -> Result<Self, Failure> {
        match s.trim() {
            "zero" | "0" => Ok(AlphaMode::Zero),
            "default" | "generic" => Ok(AlphaMode::Default),
            list => list
                .split(',')
                .map(|t| Q::from_str(t.trim()).map_err(|_| Failure::Usage(format!("bad weight {t:?}"))))
                .collect::<Result<Vec<_>, _>>()
                .map(AlphaMode::Explicit),
        }
    }

    fn echo(&self) -> Value {
        match self {
            AlphaMode::Zero => json!("zero"),
            AlphaMode::Default => json!("default"),
            AlphaMode::Explicit(v) => json!(v.iter().map(q_str).collect::<Vec<_>>()),
        }
    }
}

/// Flag values as given; `None` when absent.
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    pub n: Option<usize>,
    pub a: Option<String>,
    pub qdeg: Option<u32>,
    pub zdeg: Option<u32>,
    pub depth: Option<i64>,
    pub alpha: Option<String>,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub a: CISpec,
    pub qdeg: u32,
    pub zdeg: u32,
    pub depth: i64,
    pub alpha: AlphaMode,
    pub output: Option<PathBuf>,
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.trim().parse().map_err(|_| Failure::Usage(format!("bad value for {key}: {v:?}")))
}

pub fn parse_a(s: &str) -> Result<CISpec, Failure> {
    let s = s.trim();
    let a = if s.is_empty() || s == "()" {
        Vec::new()
    } else {
        s.split(',').map(|t| parse_num::<u32>("a", t)).collect::<Result<_, _>>()?
    };
    CISpec::new(a).map_err(|e| Failure::Usage(e.to_string()))
}

fn read_file(path: &PathBuf) -> Result<BTreeMap<String, String>, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("{}:{}: expected key=value", path.display(), no + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    pub fn resolve(
        command: &str,
        raw: &RawConfig,
        file: Option<&PathBuf>,
        default_alpha_mode: AlphaMode,
    ) -> Result<Self, Failure> {
        let file = match file {
            Some(p) => read_file(p)?,
            None => BTreeMap::new(),
        };
        const KEYS: [&str; 7] = ["n", "a", "qdeg", "zdeg", "depth", "alpha", "output"];
        if let Some(k) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Failure::Usage(format!("unknown config key {k:?}")));
        }
        let get = |k: &str| file.get(k).map(String::as_str);
        let n = match raw.n {
            Some(n) => n,
            None => get("n").map(|v| parse_num("n", v)).transpose()?.ok_or_else(|| Failure::Usage("--n is required".into()))?,
        };
        let a = match (&raw.a, get("a")) {
            (Some(s), _) => parse_a(s)?,
            (None, Some(s)) => parse_a(s)?,
            (None, None) => CISpec::new(Vec::new()).expect("empty"),
        };
        let qdeg = match raw.qdeg {
            Some(d) => d,
            None => get("qdeg").map(|v| parse_num("qdeg", v)).transpose()?.unwrap_or(2),
        };
        let zdeg = match raw.zdeg {
            Some(d) => d,
            None => get("zdeg").map(|v| parse_num("zdeg", v)).transpose()?.unwrap_or(2),
        };
        let mut depth = match raw.depth {
            Some(d) => d,
            None => get("depth").map(|v| parse_num("depth", v)).transpose()?.unwrap_or(DEFAULT_DEPTH),
        };
        if let Ok(v) = std::env::var("QGR_DEPTH") {
            depth = parse_num("QGR_DEPTH", &v)?;
        }
        let alpha = match (&raw.alpha, get("alpha")) {
            (Some(s), _) => AlphaMode::parse(s)?,
            (None, Some(s)) => AlphaMode::parse(s)?,
            (None, None) => default_alpha_mode,
        };
        let output = raw.output.clone().or_else(|| get("output").map(PathBuf::from));
        let cfg = RunConfig { command: command.to_string(), n, a, qdeg, zdeg, depth, alpha, output };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Failure> {
        if !(3..=8).contains(&self.n) {
            return Err(Failure::Usage(format!("n = {} outside 3..=8", self.n)));
        }
        self.a.check_n(self.n).map_err(|e| Failure::Usage(e.to_string()))?;
        if self.depth < 1 {
            return Err(Failure::Usage("depth must be positive".into()));
        }
        if let AlphaMode::Explicit(v) = &self.alpha {
            if v.len() != self.n {
                return Err(Failure::Usage(format!("{} weights given for n = {}", v.len(), self.n)));
            }
            self.context()?;
        }
        Ok(())
    }

    /// Concrete weights: the explicit list, or `7^m` unless the mode is zero.
    pub fn weights(&self) -> Option<Vec<Q>> {
        match &self.alpha {
            AlphaMode::Zero => None,
            AlphaMode::Default => Some(default_alpha(self.n)),
            AlphaMode::Explicit(v) => Some(v.clone()),
        }
    }

    /// Equivariant context for the configured weights, checked for genericity.
    pub fn context(&self) -> Result<GrContext, Failure> {
        let w = self.weights().unwrap_or_else(|| default_alpha(self.n));
        let ctx = GrContext::with_alpha(self.n, w).map_err(|e| Failure::Usage(e.to_string()))?;
        ctx.check_generic(self.qdeg).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(ctx)
    }

    pub fn echo(&self) -> Value {
        json!({
            "command": self.command,
            "n": self.n,
            "a": self.a.a,
            "qdeg": self.qdeg,
            "zdeg": self.zdeg,
            "depth": self.depth,
            "alpha": self.alpha.echo(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("qgr-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "# comment\nn = 4\na = 2\nqdeg=3\n").unwrap();
        let raw = RawConfig { qdeg: Some(1), ..Default::default() };
        let c = RunConfig::resolve("series", &raw, Some(&path), AlphaMode::Zero).unwrap();
        assert_eq!((c.n, c.a.a.clone(), c.qdeg), (4, vec![2], 1));
        std::fs::write(&path, "colour = red\n").unwrap();
        assert!(RunConfig::resolve("series", &raw, Some(&path), AlphaMode::Zero).is_err());
    }

    #[test]
    fn rejects_bad_weights() {
        let raw = RawConfig { n: Some(3), alpha: Some("1,1,2".into()), ..Default::default() };
        assert!(RunConfig::resolve("cohomology", &raw, None, AlphaMode::Zero).is_err());
        let raw = RawConfig { n: Some(3), a: Some("2,2".into()), ..Default::default() };
        assert!(RunConfig::resolve("series", &raw, None, AlphaMode::Zero).is_err());
    }
}
