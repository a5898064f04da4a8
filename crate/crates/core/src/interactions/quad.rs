use gauss_quad::hermite::GaussHermite;
use gauss_quad::legendre::GaussLegendre;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Rule = Arc<Vec<(f64, f64)>>;

fn cached(kind: u8, order: usize, build: impl FnOnce() -> Vec<(f64, f64)>) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<(u8, usize), Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&(kind, order)) {
        return r.clone();
    }
    let rule = Arc::new(build());
    cache.lock().unwrap().entry((kind, order)).or_insert(rule).clone()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn legendre(order: usize) -> Rule {
    cached(0, order, || {
        GaussLegendre::new(order.max(1).try_into().unwrap()).as_node_weight_pairs().to_vec()
    })
}

/// Gauss-Hermite nodes and weights for the weight `exp(-x^2)`.
pub fn hermite(order: usize) -> Rule {
    cached(1, order, || GaussHermite::new(order.max(1).try_into().unwrap()).as_node_weight_pairs().to_vec())
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn legendre_on(order: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let h = 0.5 * (b - a);
    let m = 0.5 * (b + a);
    legendre(order).iter().map(|&(x, w)| (m + h * x, h * w)).collect()
}

/// Composite Gauss-Legendre over equal panels of `[a, b]`.
pub fn panels(order: usize, count: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let h = (b - a) / count as f64;
    (0..count)
        .flat_map(|i| legendre_on(order, a + i as f64 * h, a + (i + 1) as f64 * h))
        .collect()
}

/// Polynomial parts `phi_n(q) exp(q^2/2)` of the Hermite functions.
pub fn hermite_poly_parts(nmax: usize, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(std::f64::consts::PI.powf(-0.25));
    if nmax >= 1 {
        out.push(2f64.sqrt() * q * out[0]);
    }
    for n in 1..nmax {
        let nf = n as f64;
        out.push((2.0 / (nf + 1.0)).sqrt() * q * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1]);
    }
    out
}
