use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::quad::{hermite, hermite_poly_parts, legendre_on, panels};
use crate::error::{Error, Result};
use crate::spectra::{SingleParticleSpectrum, TrapKind};

/// Interaction potential `V(|q1 - q2|)` sampled on a grid; linear interpolation
/// inside, constant extrapolation outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    r: Vec<f64>,
    v: Vec<f64>,
}

impl Kernel {
    pub fn new(r: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if r.is_empty() || r.len() != v.len() {
            return Err(Error::Invalid("kernel needs matching, non-empty r and value columns".into()));
        }
        if r.iter().chain(&v).any(|x| !x.is_finite()) || r[0] < 0.0 {
            return Err(Error::Invalid("kernel samples must be finite with r >= 0".into()));
        }
        if r.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("kernel r values must be strictly increasing".into()));
        }
        Ok(Self { r, v })
    }

    pub fn grid(&self) -> &[f64] {
        &self.r
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn eval(&self, r: f64) -> f64 {
        let r = r.abs();
        let n = self.r.len();
        if r <= self.r[0] {
            return self.v[0];
        }
        if r >= self.r[n - 1] {
            return self.v[n - 1];
        }
        let i = self.r.partition_point(|&x| x <= r) - 1;
        let t = (r - self.r[i]) / (self.r[i + 1] - self.r[i]);
        self.v[i] * (1.0 - t) + self.v[i + 1] * t
    }

    fn scale(&self) -> f64 {
        self.v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InteractionKind {
    Contact,
    Kernel(Kernel),
}

/// Canonical cache key of a two-body element `v^{ab}_{cd}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKey {
    /// Contact: the sorted multiset of all four labels.
    Contact([usize; 4]),
    /// Generic real orbitals: the unordered pair of unordered pairs `{ac}{bd}`.
    Pairs([[usize; 2]; 2]),
}

impl ElementKey {
    pub fn max_label(&self) -> usize {
        match self {
            ElementKey::Contact(k) => k[3],
            ElementKey::Pairs(p) => p[0][1].max(p[1][1]),
        }
    }
}

impl fmt::Display for ElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKey::Contact(k) => write!(f, "v({}{}{}{})", k[0], k[1], k[2], k[3]),
            ElementKey::Pairs(p) => write!(f, "v({}{}|{}{})", p[0][0], p[0][1], p[1][0], p[1][1]),
        }
    }
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Quadrature settings for two-body elements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    /// Gauss-Hermite order for harmonic orbitals (at least 80).
    pub hermite_order: usize,
    /// Gauss-Legendre order per panel or kernel segment.
    pub legendre_order: usize,
    /// Relative error above which an element is rejected.
    pub tolerance: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self { hermite_order: 80, legendre_order: 24, tolerance: 1e-9 }
    }
}

struct Inner {
    spectrum: SingleParticleSpectrum,
    kind: InteractionKind,
    opts: QuadratureOptions,
    cache: RwLock<HashMap<ElementKey, f64>>,
}

/// Two-body matrix elements with a shared cache of unit-strength values.
/// Clones made by [`TwoBodyTable::with_strength`] share the cache.
#[derive(Clone)]
pub struct TwoBodyTable {
    inner: Arc<Inner>,
    g: f64,
}

impl fmt::Debug for TwoBodyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoBodyTable")
            .field("kind", &self.inner.kind)
            .field("g", &self.g)
            .field("cached", &self.cached_len())
            .finish()
    }
}

impl TwoBodyTable {
    pub fn new(spectrum: &SingleParticleSpectrum, kind: InteractionKind, g: f64) -> Result<Self> {
        Self::with_options(spectrum, kind, g, QuadratureOptions::default())
    }

    pub fn contact(spectrum: &SingleParticleSpectrum, g: f64) -> Result<Self> {
        Self::new(spectrum, InteractionKind::Contact, g)
    }

    pub fn with_options(
        spectrum: &SingleParticleSpectrum,
        kind: InteractionKind,
        g: f64,
        mut opts: QuadratureOptions,
    ) -> Result<Self> {
        if !spectrum.has_wavefunctions() {
            return Err(Error::NoWavefunctions);
        }
        if !g.is_finite() {
            return Err(Error::Invalid("interaction strength must be finite".into()));
        }
        opts.hermite_order = opts.hermite_order.max(80);
        let inner = Inner { spectrum: spectrum.clone(), kind, opts, cache: RwLock::new(HashMap::new()) };
        Ok(Self { inner: Arc::new(inner), g })
    }

    /// Same elements at another strength, sharing the cache.
    pub fn with_strength(&self, g: f64) -> Self {
        Self { inner: self.inner.clone(), g }
    }

    pub fn strength(&self) -> f64 {
        self.g
    }

    pub fn spectrum(&self) -> &SingleParticleSpectrum {
        &self.inner.spectrum
    }

    pub fn kind(&self) -> &InteractionKind {
        &self.inner.kind
    }

    pub fn cached_len(&self) -> usize {
        self.inner.cache.read().unwrap().len()
    }

    pub fn key(&self, a: usize, b: usize, c: usize, d: usize) -> ElementKey {
        match self.inner.kind {
            InteractionKind::Contact => {
                let mut k = [a, b, c, d];
                k.sort_unstable();
                ElementKey::Contact(k)
            }
            InteractionKind::Kernel(_) => {
                let p = sorted2(a, c);
                let q = sorted2(b, d);
                ElementKey::Pairs(if p <= q { [p, q] } else { [q, p] })
            }
        }
    }

    /// `v^{ab}_{cd} = g * int int phi_a(q1) phi_b(q2) V phi_c(q1) phi_d(q2)`.
    pub fn element(&self, a: usize, b: usize, c: usize, d: usize) -> Result<f64> {
        Ok(self.g * self.unit(self.key(a, b, c, d))?)
    }

    /// Unit-strength value of a canonical key.
    pub fn unit(&self, key: ElementKey) -> Result<f64> {
        if let Some(&v) = self.inner.cache.read().unwrap().get(&key) {
            return Ok(v);
        }
        self.prefetch(&[key])?;
        Ok(self.inner.cache.read().unwrap()[&key])
    }

    /// Computes every missing key, in parallel.
    pub fn prefetch(&self, keys: &[ElementKey]) -> Result<()> {
        let mut missing: Vec<ElementKey> = {
            let cache = self.inner.cache.read().unwrap();
            keys.iter().filter(|k| !cache.contains_key(k)).copied().collect()
        };
        missing.sort_unstable();
        missing.dedup();
        // odd integrands vanish exactly in symmetric traps
        let (odd, missing): (Vec<ElementKey>, Vec<ElementKey>) = missing.into_iter().partition(|k| self.is_odd(k));
        if !odd.is_empty() {
            let mut cache = self.inner.cache.write().unwrap();
            for k in odd {
                cache.entry(k).or_insert(0.0);
            }
        }
        if missing.is_empty() {
            return Ok(());
        }
        let values: Vec<f64> = match &self.inner.kind {
            InteractionKind::Contact => missing
                .par_iter()
                .map(|k| match k {
                    ElementKey::Contact(l) => self.contact_unit(*l),
                    ElementKey::Pairs(_) => unreachable!(),
                })
                .collect::<Result<_>>()?,
            InteractionKind::Kernel(kernel) => self.kernel_batch(kernel, &missing)?,
        };
        let mut cache = self.inner.cache.write().unwrap();
        for (k, v) in missing.into_iter().zip(values) {
            cache.entry(k).or_insert(v);
        }
        Ok(())
    }

    fn is_odd(&self, key: &ElementKey) -> bool {
        let labels = match key {
            ElementKey::Contact(l) => *l,
            ElementKey::Pairs(p) => [p[0][0], p[0][1], p[1][0], p[1][1]],
        };
        let s = &self.inner.spectrum;
        s.is_symmetric() && labels.iter().map(|&n| s.parity(n).unwrap_or(1)).product::<i8>() < 0
    }

    fn contact_unit(&self, l: [usize; 4]) -> Result<f64> {
        let nmax = l[3];
        let opts = &self.inner.opts;
        let (value, estimate) = match self.inner.spectrum.kind() {
            TrapKind::Harmonic => {
                // product of four Hermite functions is poly(q) exp(-2q^2); q = x/sqrt(2)
                let eval = |order: usize| -> f64 {
                    hermite(order)
                        .iter()
                        .map(|&(x, w)| {
                            let p = hermite_poly_parts(nmax, x / 2f64.sqrt());
                            w * p[l[0]] * p[l[1]] * p[l[2]] * p[l[3]]
                        })
                        .sum::<f64>()
                        / 2f64.sqrt()
                };
                let order = opts.hermite_order.max(2 * nmax + 2);
                let a = eval(order);
                let b = eval(order + 16);
                (a, (a - b).abs())
            }
            TrapKind::SquareWell => {
                let (lo, hi) = self.inner.spectrum.domain();
                let eval = |count: usize| -> f64 {
                    panels(opts.legendre_order, count, lo, hi)
                        .iter()
                        .map(|&(q, w)| {
                            let p = self.inner.spectrum.wavefunctions(nmax, q).unwrap();
                            w * p[l[0]] * p[l[1]] * p[l[2]] * p[l[3]]
                        })
                        .sum()
                };
                let count = 2 + nmax / 2;
                let a = eval(count);
                let b = eval(2 * count);
                (b, (a - b).abs())
            }
            TrapKind::Table => return Err(Error::NoWavefunctions),
        };
        if estimate > opts.tolerance * value.abs().max(1.0) {
            return Err(Error::Quadrature { key: ElementKey::Contact(l).to_string(), estimate });
        }
        Ok(value)
    }

    /// `int dr V(|r|) G(r)` with `G(r) = int dq rho_ac(q + r) rho_bd(q)`, using
    /// Gauss-Legendre on every kernel segment where `V` is linear.
    fn kernel_batch(&self, kernel: &Kernel, keys: &[ElementKey]) -> Result<Vec<f64>> {
        let spectrum = &self.inner.spectrum;
        let opts = &self.inner.opts;
        let nmax = keys.iter().map(|k| k.max_label()).max().unwrap_or(0);
        let reach = match spectrum.kind() {
            TrapKind::Harmonic => 2.0 * (2.0 * nmax as f64 + 1.0).sqrt() + 12.0,
            _ => PI,
        };
        let mut breaks: Vec<f64> = vec![-reach, 0.0, reach];
        for &r in kernel.grid() {
            if r < reach {
                breaks.push(r);
                breaks.push(-r);
            }
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        // long segments (the extrapolated tails) get unit-length panels
        let mut segments = Vec::new();
        for w in breaks.windows(2) {
            let count = (w[1] - w[0]).ceil().max(1.0) as usize;
            let h = (w[1] - w[0]) / count as f64;
            segments.extend((0..count).map(|i| (w[0] + i as f64 * h, w[0] + (i + 1) as f64 * h)));
        }
        let run = |order: usize| -> Vec<f64> {
            let nodes: Vec<(f64, f64)> =
                segments.iter().flat_map(|&(a, b)| legendre_on(order, a, b)).collect();
            // per-node contributions, reduced in node order for determinism
            let per_node: Vec<Vec<f64>> = nodes
                .par_iter()
                .map(|&(r, w)| {
                    let g = pair_overlaps(spectrum, nmax, r, keys, opts);
                    let v = w * kernel.eval(r);
                    g.into_iter().map(|x| x * v).collect()
                })
                .collect();
            let mut sum = vec![0.0; keys.len()];
            for row in per_node {
                for (s, x) in sum.iter_mut().zip(row) {
                    *s += x;
                }
            }
            sum
        };
        let coarse = run(opts.legendre_order);
        let fine = run(2 * opts.legendre_order);
        let scale = kernel.scale();
        for (k, (a, b)) in keys.iter().zip(coarse.iter().zip(&fine)) {
            let estimate = (a - b).abs();
            if estimate > opts.tolerance * scale.max(b.abs()) {
                return Err(Error::Quadrature { key: k.to_string(), estimate });
            }
        }
        Ok(fine)
    }
}

// G(r) for every key at one displacement r.
fn pair_overlaps(
    s: &SingleParticleSpectrum,
    nmax: usize,
    r: f64,
    keys: &[ElementKey],
    opts: &QuadratureOptions,
) -> Vec<f64> {
    let mut acc = vec![0.0; keys.len()];
    let mut add = |w: f64, up: &[f64], down: &[f64]| {
        for (a, k) in acc.iter_mut().zip(keys) {
            if let ElementKey::Pairs([[p, q], [u, v]]) = *k {
                *a += w * up[p] * up[q] * down[u] * down[v];
            }
        }
    };
    match s.kind() {
        TrapKind::Harmonic => {
            // q = y - r/2, y = x/sqrt(2): the Gaussian factor becomes exp(-x^2 - r^2/2)
            let pref = (-r * r / 2.0).exp() / 2f64.sqrt();
            if pref == 0.0 {
                return acc;
            }
            let order = opts.hermite_order.max(2 * nmax + 2);
            for &(x, w) in hermite(order).iter() {
                let y = x / 2f64.sqrt();
                let up = hermite_poly_parts(nmax, y + r / 2.0);
                let down = hermite_poly_parts(nmax, y - r / 2.0);
                add(w * pref, &up, &down);
            }
        }
        _ => {
            let (lo, hi) = s.domain();
            let a = lo.max(lo - r);
            let b = hi.min(hi - r);
            if b <= a {
                return acc;
            }
            let order = 2 * nmax + 24;
            for (q, w) in legendre_on(order, a, b) {
                let up = s.wavefunctions(nmax, q + r).unwrap();
                let down = s.wavefunctions(nmax, q).unwrap();
                add(w, &up, &down);
            }
        }
    }
    acc
}

/// `table.element(a, b, c, d)` as a free function.
pub fn two_body_element(table: &TwoBodyTable, a: usize, b: usize, c: usize, d: usize) -> Result<f64> {
    table.element(a, b, c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_ground_contact() {
        let t = TwoBodyTable::contact(&SingleParticleSpectrum::harmonic(), 1.0).unwrap();
        let v = t.element(0, 0, 0, 0).unwrap();
        assert!((v - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
        assert!(t.element(0, 0, 0, 1).unwrap().abs() < 1e-15);
    }

    #[test]
    fn square_well_ground_contact() {
        let t = TwoBodyTable::contact(&SingleParticleSpectrum::square_well(), 2.0).unwrap();
        let v = t.element(0, 0, 0, 0).unwrap();
        assert!((v - 2.0 * 1.5 / PI).abs() < 1e-13);
    }

    #[test]
    fn kernel_interpolation() {
        let k = Kernel::new(vec![0.0, 1.0, 2.0], vec![2.0, 0.0, 1.0]).unwrap();
        assert_eq!(k.eval(-0.5), 1.0);
        assert_eq!(k.eval(1.5), 0.5);
        assert_eq!(k.eval(10.0), 1.0);
        assert!(Kernel::new(vec![1.0, 0.5], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn constant_kernel_gives_overlaps() {
        // V = 1 everywhere: v^{ab}_{cd} = delta_ac delta_bd
        let k = Kernel::new(vec![0.0], vec![1.0]).unwrap();
        for s in [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()] {
            let t = TwoBodyTable::new(&s, InteractionKind::Kernel(k.clone()), 1.0).unwrap();
            assert!((t.element(0, 1, 0, 1).unwrap() - 1.0).abs() < 1e-9);
            assert!(t.element(0, 1, 1, 0).unwrap().abs() < 1e-9);
            assert!(t.element(2, 0, 1, 0).unwrap().abs() < 1e-9);
        }
    }
}
