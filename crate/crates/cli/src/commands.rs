use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qtk_core::catalog;
use qtk_core::exactnum::{factorial, int, parse_scalar_list, rat, Scalar};
use qtk_core::invsys::{self, Potential};
use qtk_core::io;
use qtk_core::literal::{parse_base, parse_class_list};
use qtk_core::multipoly::{bkk_check, horizontal_part, volume_polynomial, MultiPolytope};
use qtk_core::ppbrion::{brion_bundle_dims, brion_quotient_dims};
use qtk_core::BundleRing;

use crate::instance::{digest, load, Loaded};
use crate::{Mode, Outcome, Settings};

const VALIDATION_SAMPLES: usize = 64;
const CHECK_ALL_SAMPLES: usize = 20;

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn support_numbers(spec: Option<&str>, s: usize) -> Result<Vec<Scalar>> {
    match spec {
        None => Ok(vec![int(1); s]),
        Some(text) => {
            let h = parse_scalar_list(text)?;
            if h.len() != s {
                bail!("--h needs {s} support numbers, got {}", h.len());
            }
            Ok(h)
        }
    }
}

/// Loads and validates; a failing instance short-circuits into a report.
fn prepare(spec: &str, st: &Settings) -> Result<std::result::Result<(Loaded, BundleRing), Outcome>> {
    let inst = load(spec)?;
    let (ok, report) = inst.validation(st.samples.unwrap_or(VALIDATION_SAMPLES), st.seed);
    let digest = digest(&inst.canonical());
    if !ok {
        return Ok(Err(Outcome {
            digest,
            result: json!({ "instance": inst.label, "validation": report }),
            passed: false,
        }));
    }
    let ring = inst.ring()?;
    Ok(Ok((inst, ring)))
}

macro_rules! prepared {
    ($spec:expr, $st:expr) => {
        match prepare($spec, $st)? {
            Ok(pair) => pair,
            Err(outcome) => return Ok(outcome),
        }
    };
}

fn finish(inst: &Loaded, mut result: Value, passed: bool) -> Outcome {
    result["instance"] = json!(inst.label);
    Outcome { digest: digest(&inst.canonical()), result, passed }
}

pub fn validate(specs: &[String], st: &Settings) -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut canon = Vec::new();
    let mut all_ok = true;
    for spec in specs {
        let inst = load(spec)?;
        let (ok, report) = inst.validation(st.samples.unwrap_or(VALIDATION_SAMPLES), st.seed);
        all_ok &= ok;
        reports.push(report);
        canon.push(inst.canonical());
    }
    Ok(Outcome {
        digest: digest(&Value::Array(canon)),
        result: json!({ "passed": all_ok, "instances": reports }),
        passed: all_ok,
    })
}

pub fn betti(spec: &str, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let b = ring.betti();
    let duality = ring.poincare_duality_holds()?;
    let mut passed = duality;
    let mut result = json!({
        "betti": b,
        "total": b.iter().sum::<usize>(),
        "poincare_duality": duality,
    });
    if let Some(exp) = &inst.expected_betti {
        result["expected"] = json!(exp);
        passed &= exp == &b;
    }
    Ok(finish(&inst, result, passed))
}

pub fn volume(spec: &str, h: Option<&str>, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let h = support_numbers(h, inst.cp.s())?;
    let vol = MultiPolytope::new(&inst.cp, h.clone())?.volume()?;
    let poly = volume_polynomial(&inst.cp)?;
    let n = inst.cp.n() as u32;
    let scaled = factorial(n) * &vol;
    let mut result = json!({
        "h": strings(&h),
        "volume": vol.to_string(),
        "volume_polynomial": poly.render(&poly.default_names("h")),
        "n_factorial_volume": scaled.to_string(),
    });
    let mut passed = true;
    if inst.base.dim() == 1 {
        // the top power of ρ(h) counts n! times the volume
        let top = ring.evaluate_top(&ring.pow(&ring.rho(&h), n))?;
        passed = top == scaled;
        result["rho_power"] = json!(top.to_string());
    }
    Ok(finish(&inst, result, passed))
}

pub fn intersect(spec: &str, classes: &str, gamma: Option<&str>, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let cls = parse_class_list(&ring, classes)?;
    let g = parse_base(&inst.base, gamma.unwrap_or("1"))?;
    let value = ring.intersection_number(&cls, &g)?;
    let rendered: Vec<String> = cls.iter().map(|c| ring.render(c)).collect();
    let result = json!({
        "classes": rendered,
        "gamma": inst.base.render(&g),
        "value": value.to_string(),
    });
    Ok(finish(&inst, result, true))
}

pub fn bkk(spec: &str, gamma: Option<&str>, i: Option<u32>, h: Option<&str>, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let i = i.unwrap_or(inst.base.top_degree() / 2);
    let g = parse_base(&inst.base, gamma.unwrap_or("1"))?;
    let h = support_numbers(h, inst.cp.s())?;
    let r = bkk_check(&ring, &g, i, &h)?;
    let result = json!({
        "gamma": inst.base.render(&g),
        "i": i,
        "h": strings(&h),
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "equal": r.equal,
    });
    Ok(finish(&inst, result, r.equal))
}

pub fn horizontal(spec: &str, h: Option<&str>, i: u32, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let h = support_numbers(h, inst.cp.s())?;
    let b = horizontal_part(&ring, &h, i)?;
    let result = json!({
        "i": i,
        "h": strings(&h),
        "class": inst.base.render(&b),
        "coordinates": strings(&b),
    });
    Ok(finish(&inst, result, true))
}

fn bundle_potential(ring: &BundleRing, mode: Mode) -> Result<Potential> {
    Ok(match mode {
        Mode::Integral => invsys::bundle_potential_integral(ring)?,
        Mode::Direct => invsys::bundle_potential_direct(ring)?,
    })
}

pub fn potential(spec: &str, mode: Mode, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let p = bundle_potential(&ring, mode)?;
    let name = match mode {
        Mode::Integral => "integral",
        Mode::Direct => "direct",
    };
    let result = json!({ "mode": name, "potential": io::potential_to_value(&p) });
    Ok(finish(&inst, result, true))
}

pub fn ann_hilbert(spec: &str, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let p = bundle_potential(&ring, Mode::Integral)?;
    let hf = invsys::ann_hilbert(&p);
    let symmetric = hf.is_symmetric();
    let result = json!({
        "dims": hf.dims,
        "even": hf.even(),
        "symmetric": symmetric,
    });
    Ok(finish(&inst, result, symmetric))
}

pub fn ann_generators(spec: &str, max_degree: Option<u32>, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let p = bundle_potential(&ring, Mode::Integral)?;
    let gens = invsys::ann_generators(&p, max_degree.unwrap_or(p.degree() + 2))?;
    let list: Vec<Value> = gens
        .iter()
        .map(|g| json!({ "degree": g.degree, "generator": g.poly.render(p.names()) }))
        .collect();
    let result = json!({ "potential": p.render(), "generators": list });
    Ok(finish(&inst, result, true))
}

pub fn brion(spec: &str, max_degree: Option<u32>, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let top = max_degree.unwrap_or(ring.total_dim());
    let bundle = brion_bundle_dims(&ring, top);
    let fiber = brion_quotient_dims(&inst.cp, inst.cp.n() as u32);
    let betti: Vec<usize> = ring.betti().into_iter().take(top as usize + 1).collect();
    let agree = bundle == betti;
    let result = json!({
        "bundle_dims": bundle,
        "fiber_dims": fiber,
        "betti": betti,
        "agree": agree,
    });
    Ok(finish(&inst, result, agree))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let q = rng.gen_range(1..=3i64);
    rat(rng.gen_range(-3 * q..=3 * q), q)
}

fn check(name: &str, passed: bool, detail: String) -> Value {
    json!({ "name": name, "passed": passed, "detail": detail })
}

pub fn check_all(spec: &str, st: &Settings) -> Result<Outcome> {
    let (inst, ring) = prepared!(spec, st);
    let mut checks = Vec::new();
    let betti = ring.betti();
    if let Some(exp) = &inst.expected_betti {
        checks.push(check("betti_expected", exp == &betti, format!("{betti:?} vs {exp:?}")));
    }
    checks.push(check("poincare_duality", ring.poincare_duality_holds()?, String::new()));

    let bundle = brion_bundle_dims(&ring, ring.total_dim());
    checks.push(check("brion_bundle", bundle == betti, format!("{bundle:?}")));
    let fiber = brion_quotient_dims(&inst.cp, inst.cp.n() as u32);
    let fiber_betti: Vec<usize> = BundleRing::over_point(inst.cp.clone())?.betti().into_iter().step_by(2).collect();
    checks.push(check("brion_fiber", fiber == fiber_betti, format!("{fiber:?}")));

    if inst.base.has_odd() {
        checks.push(check("ann_hilbert", true, "skipped: odd base classes".into()));
        checks.push(check("potentials_agree", true, "skipped: odd base classes".into()));
    } else {
        let p = bundle_potential(&ring, Mode::Integral)?;
        let q = bundle_potential(&ring, Mode::Direct)?;
        let hf = invsys::ann_hilbert(&p);
        checks.push(check("ann_hilbert", hf.dims == betti, format!("{:?}", hf.dims)));
        checks.push(check("potentials_agree", p.poly() == q.poly(), p.render()));
    }

    let samples = st.samples.unwrap_or(CHECK_ALL_SAMPLES);
    let mut rng = ChaCha8Rng::seed_from_u64(st.seed);
    let k = inst.base.top_degree();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let i = rng.gen_range(0..=k / 2);
        let choices = inst.base.basis_of_degree(k - 2 * i);
        if choices.is_empty() {
            continue;
        }
        let gamma = inst.base.basis(choices[rng.gen_range(0..choices.len())]);
        let h: Vec<Scalar> = (0..inst.cp.s()).map(|_| random_rational(&mut rng)).collect();
        let r = bkk_check(&ring, &gamma, i, &h)?;
        if !r.equal {
            failures.push(format!("i={i} gamma={} h={:?}", inst.base.render(&gamma), strings(&h)));
        }
    }
    checks.push(check(
        "bkk",
        failures.is_empty(),
        format!("{samples} samples, {} failures {}", failures.len(), failures.join("; ")),
    ));

    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    let result = json!({ "passed": passed, "checks": checks, "betti": betti, "seed": st.seed });
    Ok(finish(&inst, result, passed))
}

pub fn catalog() -> Result<Outcome> {
    let entries: Vec<Value> = catalog::ENTRIES
        .iter()
        .map(|e| {
            let params: serde_json::Map<String, Value> = e.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            json!({ "name": e.name, "params": params, "description": e.description })
        })
        .collect();
    Ok(Outcome { digest: digest(&json!([])), result: json!({ "instances": entries }), passed: true })
}
