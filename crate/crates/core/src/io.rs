//! JSON file formats for pairs, base algebras, Chern data, bundles and
//! potentials.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::basealg::{ChernData, GradedBaseAlgebra};
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{parse_scalar, Scalar};
use crate::invsys::Potential;

/// A rational written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Rat {
    Int(i64),
    Str(String),
}

impl Rat {
    fn value(&self) -> Result<Scalar> {
        match self {
            Rat::Int(v) => Ok(Scalar::from_integer((*v).into())),
            Rat::Str(s) => parse_scalar(s),
        }
    }
}

fn rats(v: &[Rat]) -> Result<Vec<Scalar>> {
    v.iter().map(Rat::value).collect()
}

fn bad(e: serde_json::Error) -> Error {
    Error::MalformedInput(e.to_string())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CharPairFile {
    n: usize,
    rays: Vec<Vec<Rat>>,
    lambda: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct BasisEntry {
    name: String,
    deg: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFile {
    basis: Vec<BasisEntry>,
    #[serde(default)]
    products: BTreeMap<String, Vec<(String, Rat)>>,
    fundamental: BTreeMap<String, Rat>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChernFile {
    Object { n: usize, images: Vec<Vec<Rat>> },
    Bare(Vec<Vec<Rat>>),
}

pub fn charpair_from_value(v: &Value) -> Result<CharacteristicPair> {
    let f: CharPairFile = serde_json::from_value(v.clone()).map_err(bad)?;
    let rays = f.rays.iter().map(|r| rats(r)).collect::<Result<Vec<_>>>()?;
    let cones = f
        .max_cones
        .iter()
        .map(|c| {
            c.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::MalformedInput("ray indices are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CharacteristicPair::new(f.n, rays, f.lambda, cones)
}

pub fn base_from_value(v: &Value) -> Result<GradedBaseAlgebra> {
    let f: BaseFile = serde_json::from_value(v.clone()).map_err(bad)?;
    let names: Vec<String> = f.basis.iter().map(|b| b.name.clone()).collect();
    let degrees: Vec<u32> = f.basis.iter().map(|b| b.deg).collect();
    let idx = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::MalformedInput(format!("unknown basis element {name:?}")))
    };
    let mut products = BTreeMap::new();
    for (key, terms) in &f.products {
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| Error::MalformedInput(format!("product key {key:?} is not \"a,b\"")))?;
        let pair = (idx(a.trim())?, idx(b.trim())?);
        let list = terms
            .iter()
            .map(|(k, c)| Ok((idx(k)?, c.value()?)))
            .collect::<Result<Vec<_>>>()?;
        products.insert(pair, list);
    }
    // products with the degree-0 element default to the unit law
    let zeros: Vec<usize> = (0..names.len()).filter(|&i| degrees[i] == 0).collect();
    if let [u] = zeros[..] {
        for i in 0..names.len() {
            let one = Scalar::from_integer(1.into());
            products.entry((u, i)).or_insert_with(|| vec![(i, one.clone())]);
            products.entry((i, u)).or_insert_with(|| vec![(i, one)]);
        }
    }
    let mut fundamental = vec![Scalar::from_integer(0.into()); names.len()];
    for (name, c) in &f.fundamental {
        fundamental[idx(name)?] = c.value()?;
    }
    GradedBaseAlgebra::from_sparse(names, degrees, &products, fundamental)
}

pub fn chern_from_value(v: &Value, base: &GradedBaseAlgebra, n: usize) -> Result<ChernData> {
    let f: ChernFile = serde_json::from_value(v.clone()).map_err(bad)?;
    let images = match f {
        ChernFile::Object { n: m, images } => {
            if m != n {
                return Err(Error::MalformedInput(format!("chern rank {m} but fan dimension {n}")));
            }
            images
        }
        ChernFile::Bare(images) => images,
    };
    if images.len() != n {
        return Err(Error::MalformedInput(format!("expected {n} chern images")));
    }
    let coeffs = images.iter().map(|r| rats(r)).collect::<Result<Vec<_>>>()?;
    ChernData::from_degree2(base, coeffs)
}

pub fn charpair_to_value(cp: &CharacteristicPair) -> Value {
    json!({
        "n": cp.n(),
        "rays": cp.rays().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "lambda": cp.lambda(),
        "max_cones": cp.max_cones().iter().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn base_to_value(b: &GradedBaseAlgebra) -> Value {
    let basis: Vec<Value> = b
        .names()
        .iter()
        .zip(b.degrees())
        .map(|(n, d)| json!({"name": n, "deg": d}))
        .collect();
    let mut products = serde_json::Map::new();
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let terms: Vec<Value> = b
                .product_of_basis(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| json!([b.names()[k], c.to_string()]))
                .collect();
            if !terms.is_empty() {
                products.insert(format!("{},{}", b.names()[i], b.names()[j]), Value::Array(terms));
            }
        }
    }
    let fundamental: serde_json::Map<String, Value> = b
        .names()
        .iter()
        .zip(b.fundamental())
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(n, c)| (n.clone(), Value::String(c.to_string())))
        .collect();
    json!({"basis": basis, "products": products, "fundamental": fundamental})
}

pub fn chern_to_value(c: &ChernData, base: &GradedBaseAlgebra) -> Value {
    let images: Vec<Vec<String>> = c
        .degree2_coefficients(base)
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    json!({"n": c.n(), "images": images})
}

/// Canonical JSON of a full instance; keys are sorted by `serde_json`.
pub fn instance_to_value(cp: &CharacteristicPair, base: &GradedBaseAlgebra, chern: &ChernData) -> Value {
    json!({
        "charpair": charpair_to_value(cp),
        "base": base_to_value(base),
        "chern": chern_to_value(chern, base),
    })
}

#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub cp: CharacteristicPair,
    pub base: GradedBaseAlgebra,
    pub chern: ChernData,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(bad)
}

/// A nested part is either inline JSON or a path relative to `dir`.
fn resolve(v: &Value, dir: &Path) -> Result<Value> {
    match v {
        Value::String(p) => {
            let path: PathBuf = dir.join(p);
            read_json(&path)
        }
        other => Ok(other.clone()),
    }
}

/// Loads a bundle file, or a bare characteristic-pair file (point base).
pub fn load_instance(path: &Path) -> Result<LoadedInstance> {
    let v = read_json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    instance_from_value(&v, dir)
}

pub fn instance_from_value(v: &Value, dir: &Path) -> Result<LoadedInstance> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::MalformedInput("instance must be a JSON object".into()))?;
    if !obj.contains_key("charpair") {
        let cp = charpair_from_value(v)?;
        let base = GradedBaseAlgebra::make_point();
        let chern = ChernData::zero(&base, cp.n());
        return Ok(LoadedInstance { cp, base, chern });
    }
    for k in obj.keys() {
        if !["charpair", "base", "chern"].contains(&k.as_str()) {
            return Err(Error::MalformedInput(format!("unknown bundle key {k:?}")));
        }
    }
    let cp = charpair_from_value(&resolve(&obj["charpair"], dir)?)?;
    let base = match obj.get("base") {
        Some(b) => base_from_value(&resolve(b, dir)?)?,
        None => GradedBaseAlgebra::make_point(),
    };
    let chern = match obj.get("chern") {
        Some(c) => chern_from_value(&resolve(c, dir)?, &base, cp.n())?,
        None => ChernData::zero(&base, cp.n()),
    };
    Ok(LoadedInstance { cp, base, chern })
}

#[derive(Serialize)]
struct VarOut<'a> {
    name: &'a str,
    weight: u32,
}

pub fn potential_to_value(p: &Potential) -> Value {
    let vars: Vec<VarOut> = p
        .names()
        .iter()
        .zip(p.weights())
        .map(|(name, &weight)| VarOut { name, weight })
        .collect();
    let terms: serde_json::Map<String, Value> = p
        .poly()
        .terms()
        .map(|(e, c)| {
            let key: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            (key.join(","), Value::String(c.to_string()))
        })
        .collect();
    json!({
        "vars": vars,
        "degree": p.degree(),
        "terms": terms,
        "text": p.render(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn charpair_roundtrip() {
        for inst in catalog::all() {
            let v = charpair_to_value(&inst.cp);
            assert_eq!(charpair_from_value(&v).unwrap(), inst.cp);
        }
    }

    #[test]
    fn base_roundtrip() {
        for inst in catalog::all() {
            let v = base_to_value(&inst.base);
            assert_eq!(base_from_value(&v).unwrap(), inst.base, "{}", inst.name);
            let c = chern_to_value(&inst.chern, &inst.base);
            assert_eq!(chern_from_value(&c, &inst.base, inst.cp.n()).unwrap(), inst.chern);
        }
    }

    #[test]
    fn parses_handwritten_files() {
        let cp = charpair_from_value(&json!({
            "n": 1, "rays": [["1"], [-1]], "lambda": [[1], [-1]], "max_cones": [[1], [2]]
        }))
        .unwrap();
        assert_eq!(cp.s(), 2);
        let base = base_from_value(&json!({
            "basis": [{"name": "1", "deg": 0}, {"name": "t", "deg": 2}],
            "fundamental": {"t": "1"}
        }))
        .unwrap();
        assert!(base.validate().ok());
        let chern = chern_from_value(&json!([["3/2"]]), &base, 1).unwrap();
        assert_eq!(chern.images()[0][1], crate::exactnum::rat(3, 2));
        assert!(charpair_from_value(&json!({"n": 1, "rays": [], "lambda": [], "max_cones": [[0]]})).is_err());
    }

    #[test]
    fn bundle_with_inline_parts() {
        let v = json!({
            "charpair": {"n": 1, "rays": [["1"], ["-1"]], "lambda": [[1], [-1]], "max_cones": [[1], [2]]},
            "base": {"basis": [{"name": "1", "deg": 0}, {"name": "t", "deg": 2}], "fundamental": {"t": 1}},
            "chern": {"n": 1, "images": [[2]]}
        });
        let inst = instance_from_value(&v, Path::new(".")).unwrap();
        assert_eq!(inst.chern.images()[0][1], crate::exactnum::int(2));
    }
}
