//! Browser bindings. Every export returns a JSON string; `www/index.html`
//! renders them.

use densematch::extractor::bound_formula;
use densematch::harness::{bound_density, Family};
use densematch::sampling::{derive_seed, sample_partition};
use densematch::{derive_params, extract_best, optimal_ell, ExtractOptions, SeededRng};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest instance the page will build.
pub const MAX_DEMO_N: usize = 3000;
pub const MAX_SAMPLES: usize = 2_000_000;

fn to_js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

/// `f(c', t, ell)` sampled over the admissible range of `ell`.
pub fn bound_curve_json(c: f64, t: usize, samples: usize) -> Result<String, String> {
    if !(c.is_finite() && c >= 4.0) || t == 0 {
        return Err("need c' >= 4 and t >= 1".into());
    }
    let lo = (c / t as f64).sqrt();
    let hi = c / 2.0 - 1.5;
    if lo >= hi {
        return Err(format!(
            "no admissible ell: sqrt(c'/t) = {lo:.4} >= c'/2 - 3/2 = {hi:.4}"
        ));
    }
    let samples = samples.clamp(2, 5000);
    let points: Vec<[f64; 2]> = (1..=samples)
        .map(|i| {
            let ell = lo + (hi - lo) * i as f64 / samples as f64;
            [ell, bound_formula(c, t, ell)]
        })
        .collect();
    let star = optimal_ell(c, t);
    let params = derive_params(c, t, star).ok();
    Ok(json!({
        "c_prime": c,
        "t": t,
        "lo": lo,
        "hi": hi,
        "ell_star": star,
        "params": params,
        "density": params.as_ref().map(|p| bound_density(p.bound, t)),
        "asymptotic_density": 1.0 / (c * (c - 1.0) * (c - 1.0)),
        "points": points,
    })
    .to_string())
}

fn demo_family(name: &str, n: usize, seed: u64) -> Result<Family, String> {
    Ok(match name {
        "complete" => Family::Complete { n: Some(n) },
        "two-cliques" => Family::TwoCliques { n: Some(n) },
        "rtf" => Family::Rtf { n: Some(n), seed },
        "c5" => {
            let mut parts = [n / 5; 5];
            for p in parts.iter_mut().take(n % 5) {
                *p += 1;
            }
            Family::C5 { parts }
        }
        other => return Err(format!("unknown family {other:?}")),
    })
}

/// Builds an instance and runs the best-of-`trials` extraction on it.
pub fn extract_demo_json(
    family: &str,
    n: usize,
    seed: u64,
    c: f64,
    t: usize,
    trials: usize,
    shortcut: bool,
) -> Result<String, String> {
    if n > MAX_DEMO_N {
        return Err(format!("n = {n} exceeds the demo limit of {MAX_DEMO_N}"));
    }
    let g = demo_family(family, n, seed)?
        .build(n)
        .map_err(|e| e.to_string())?;
    let opts = ExtractOptions {
        cm_shortcut: shortcut,
        max_attempts: 100_000,
        ..Default::default()
    };
    let out = extract_best(&g, c, t, trials, seed, &opts).map_err(|e| e.to_string())?;
    let counts: Vec<usize> = out.reports.iter().map(|r| r.nonadjacent_pairs).collect();
    let mean =
        (!counts.is_empty()).then(|| counts.iter().sum::<usize>() as f64 / counts.len() as f64);
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "params": out.params,
        "shortcut": out.shortcut,
        "best": out.nonadjacent_pairs,
        "mean": mean,
        "counts": counts,
        "acceptance_rate": out.acceptance_rate,
        "failed_trials": out.failed_trials,
        "matching": out.matching,
    })
    .to_string())
}

/// Empirical law of a uniform pairing of `size` points against the exact
/// `1/(s-1)` and `1/((s-1)(s-3))`.
pub fn pairing_law_json(size: usize, samples: usize, seed: u64) -> Result<String, String> {
    if size < 4 || size % 2 == 1 || size > 200 {
        return Err("size must be even and between 4 and 200".into());
    }
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be between 1 and {MAX_SAMPLES}"));
    }
    let s: Vec<usize> = (0..size).collect();
    let mut rng = SeededRng::new(derive_seed(seed, size as u64));
    let mut partner = vec![0u64; size];
    let mut both = 0u64;
    for _ in 0..samples {
        let x = sample_partition(&s, &mut rng).map_err(|e| e.to_string())?;
        let &(a, b) = x
            .pairs()
            .iter()
            .find(|&&(a, b)| a == 0 || b == 0)
            .expect("vertex 0 is paired");
        let mate = if a == 0 { b } else { a };
        partner[mate] += 1;
        if mate == 1 && x.contains(2, 3) {
            both += 1;
        }
    }
    let n = samples as f64;
    Ok(json!({
        "size": size,
        "samples": samples,
        "partner_counts": partner,
        "edge": { "empirical": partner[1] as f64 / n, "exact": 1.0 / (size - 1) as f64 },
        "two_edges": {
            "empirical": both as f64 / n,
            "exact": 1.0 / ((size - 1) * (size - 3)) as f64,
        },
    })
    .to_string())
}

#[wasm_bindgen(js_name = boundCurve)]
pub fn bound_curve(c: f64, t: usize, samples: usize) -> Result<String, JsValue> {
    bound_curve_json(c, t, samples).map_err(to_js)
}

#[wasm_bindgen(js_name = extractDemo)]
pub fn extract_demo(
    family: &str,
    n: usize,
    seed: u32,
    c: f64,
    t: usize,
    trials: usize,
    shortcut: bool,
) -> Result<String, JsValue> {
    extract_demo_json(family, n, seed.into(), c, t, trials, shortcut).map_err(to_js)
}

#[wasm_bindgen(js_name = pairingLaw)]
pub fn pairing_law(size: usize, samples: usize, seed: u32) -> Result<String, JsValue> {
    pairing_law_json(size, samples, seed.into()).map_err(to_js)
}
