use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use qtk_core::basealg::{ChernData, GradedBaseAlgebra};
use qtk_core::catalog;
use qtk_core::io;
use qtk_core::{BundleRing, CharacteristicPair};

pub struct Loaded {
    pub label: String,
    pub cp: CharacteristicPair,
    pub base: GradedBaseAlgebra,
    pub chern: ChernData,
    pub expected_betti: Option<Vec<usize>>,
}

impl Loaded {
    pub fn ring(&self) -> Result<BundleRing> {
        Ok(BundleRing::new(self.cp.clone(), self.base.clone(), self.chern.clone())?)
    }

    pub fn canonical(&self) -> Value {
        io::instance_to_value(&self.cp, &self.base, &self.chern)
    }

    pub fn validation(&self, samples: usize, seed: u64) -> (bool, Value) {
        let cpr = self.cp.validate_with(samples, seed);
        let alg = self.base.validate();
        let mut checks = serde_json::Map::new();
        for (name, c) in cpr.checks() {
            checks.insert(format!("charpair.{name}"), json!({ "passed": c.passed, "detail": c.detail }));
        }
        for (name, r) in alg.checks() {
            let detail = match r {
                Ok(()) => "ok".to_string(),
                Err(e) => e.to_string(),
            };
            checks.insert(format!("base.{name}"), json!({ "passed": r.is_ok(), "detail": detail }));
        }
        let ok = cpr.ok() && alg.ok();
        (
            ok,
            json!({
                "instance": self.label,
                "passed": ok,
                "checks": checks,
                "warnings": cpr.warnings,
            }),
        )
    }
}

/// `catalog:<name>[?a=1&b=2]` or a JSON file path.
pub fn load(spec: &str) -> Result<Loaded> {
    if let Some(rest) = spec.strip_prefix("catalog:") {
        let inst = catalog::lookup(rest)?;
        return Ok(Loaded {
            label: format!("catalog:{}", inst.name),
            cp: inst.cp,
            base: inst.base,
            chern: inst.chern,
            expected_betti: Some(inst.expected_betti),
        });
    }
    let inst = io::load_instance(Path::new(spec)).with_context(|| format!("loading {spec}"))?;
    Ok(Loaded {
        label: spec.to_string(),
        cp: inst.cp,
        base: inst.base,
        chern: inst.chern,
        expected_betti: None,
    })
}

pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}
