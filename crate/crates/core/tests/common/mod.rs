#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Irrep-dimension catalogs as printed in the two summary tables:
/// (N, trap, C0, K0, C, K) with trap in asymmetric, symmetric, harmonic order.
pub const CATALOGS: [(usize, &str, &str, &str, &str, &str); 9] = [
    (2, "asymmetric", "1^2", "1,2", "1^2", "1^2"),
    (2, "symmetric", "1^4,2", "1^2,2^3", "1^4", "1^4"),
    (2, "harmonic", "1,2", "(X+1)", "1^4", "1^4"),
    (3, "asymmetric", "1^2,2", "1,3,6", "1^2,2", "1^2,2"),
    (3, "symmetric", "1^4,2^2,3^4", "1^2,3^4,6^4", "1^4,2^2", "1^4,2^2"),
    (3, "harmonic", "2λ+1", "(X+2)!/(2 X!)", "1^8,2^4", "1^8,2^4"),
    (4, "asymmetric", "1^2,2,3^2", "1,4,6,12,24", "1^2,2,3^2", "1^2,2,3^2"),
    (4, "symmetric", "1^4,2^2,3^4,4^4,6^4,8^2", "1^2,4^4,6^3,12^6,24^5", "1^4,2^2,3^4", "1^4,2^2,3^4"),
    (4, "harmonic", "(λ+1)^2", "(X+3)!/(6 X!)", "1^8,2^4,3^8", "1^8,2^4,3^8"),
];

/// Near-unitary N=4 eigenvalue list for a reflection-symmetric trap with
/// outer amplitudes t and inner amplitude u: (label, value, multiplicity).
pub fn near_unitary_four(t: f64, u: f64) -> Vec<(&'static str, f64, usize)> {
    let r1 = (4.0 * t * t - 2.0 * t * u + u * u).sqrt();
    let r2 = (t * t + u * u).sqrt();
    vec![
        ("[4]+", -4.0 * t - 2.0 * u, 1),
        ("[31]+", -2.0 * t - 2.0 * u, 3),
        ("[2^2]+", -2.0 * t - u - r1, 2),
        ("[2^2]+", -2.0 * t - u + r1, 2),
        ("[21^2]+", -2.0 * t, 3),
        ("[1^4]+", 0.0, 1),
        ("[31]-", -3.0 * t - u - r2, 3),
        ("[31]-", -3.0 * t - u + r2, 3),
        ("[21^2]-", -t - u - r2, 3),
        ("[21^2]-", -t - u + r2, 3),
    ]
}

/// Root-free part and discriminant of the [31] shifts of a composition (a^2 b g),
/// from v(a^4), v(a^2 b^2), v(a^2 g^2), v(b^2 g^2).
pub fn aabg_parts(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let lin = 2.0 * a + 5.0 * b + 5.0 * c + 2.0 * d;
    let disc = 9.0 * b * b - 14.0 * b * c + 9.0 * c * c - 4.0 * b * d - 4.0 * c * d + 4.0 * d * d;
    (lin, disc)
}

/// The closed form with the printed prefactor 1/3.
pub fn aabg_printed(a: f64, b: f64, c: f64, d: f64) -> [f64; 2] {
    let (lin, disc) = aabg_parts(a, b, c, d);
    [(lin - disc.sqrt()) / 3.0, (lin + disc.sqrt()) / 3.0]
}

/// The same closed form with prefactor 1/2, which is what the 2x2 block gives.
pub fn aabg_half(a: f64, b: f64, c: f64, d: f64) -> [f64; 2] {
    let (lin, disc) = aabg_parts(a, b, c, d);
    [(lin - disc.sqrt()) / 2.0, (lin + disc.sqrt()) / 2.0]
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

use std::collections::HashMap;

use fewbody::interactions::{first_order_splitting_level, exact_diagonalize, DoubleTableauBasis, SectorSpec, TwoBodyTable};
use fewbody::spectra::{enumerate_levels, IrrepLabel, Truncation};
use fewbody::symgroup::{irrep_matrix, Partition, Permutation};
use nalgebra::{DMatrix, DVector};

/// Every sequence of `n` oscillator labels with total excitation at most `x`.
pub fn sequences_up_to(n: usize, x: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                let used: usize = s.iter().sum();
                (0..=x - used).map(move |k| {
                    let mut t = s.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}

/// `sum_{i<j} V_ij` between sequences, assembled entry by entry from two-body elements.
pub fn particle_basis_interaction(table: &TwoBodyTable, seqs: &[Vec<usize>]) -> DMatrix<f64> {
    let dim = seqs.len();
    let mut m = DMatrix::zeros(dim, dim);
    for (r, a) in seqs.iter().enumerate() {
        for (c, b) in seqs.iter().enumerate() {
            let n = a.len();
            let mut v = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if (0..n).all(|k| k == i || k == j || a[k] == b[k]) {
                        v += table.element(a[i], a[j], b[i], b[j]).unwrap();
                    }
                }
            }
            m[(r, c)] = v;
        }
    }
    m
}

/// Matrix of a permutation acting on sequences by `(p.n)_i = n_{p(i)}`.
pub fn sequence_permutation(p: &Permutation, seqs: &[Vec<usize>]) -> DMatrix<f64> {
    let index: HashMap<&Vec<usize>, usize> = seqs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = DMatrix::zeros(seqs.len(), seqs.len());
    for (c, s) in seqs.iter().enumerate() {
        m[(index[&p.act_on(s)], c)] = 1.0;
    }
    m
}

/// Isotypic projector `(d/N!) sum_p chi(p) U(p)` on a sequence space.
pub fn isotypic_projector(shape: &Partition, seqs: &[Vec<usize>]) -> DMatrix<f64> {
    let n = shape.n();
    let all = Permutation::all(n);
    let mut proj = DMatrix::zeros(seqs.len(), seqs.len());
    for p in &all {
        let chi = irrep_matrix(shape, p).trace();
        proj += sequence_permutation(p, seqs) * chi;
    }
    proj * (shape.dimension() as f64 / all.len() as f64)
}

/// Largest interaction element between double-tableau vectors with different Young
/// tableaux or different shapes, and largest spread of same-Y elements over Y, for
/// all compositions of `n` oscillator quanta up to `x`.
pub fn block_structure_defects(table: &TwoBodyTable, n: usize, x: usize) -> (f64, f64, usize) {
    let seqs = sequences_up_to(n, x);
    let index: HashMap<Vec<usize>, usize> = seqs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let v = particle_basis_interaction(table, &seqs);
    let spectrum = table.spectrum().clone();
    let comps = fewbody::spectra::compositions(&spectrum, n, Truncation::Excitation(x)).unwrap();
    // (shape, y, vector) for every |W Y>
    let mut vecs: Vec<(Partition, usize, usize, DVector<f64>)> = Vec::new();
    let mut copy = 0;
    for c in &comps {
        let basis = DoubleTableauBasis::new(c).unwrap();
        for ir in &basis.irreps {
            for w in 0..ir.k() {
                for y in 0..ir.young.len() {
                    let mut full = DVector::zeros(seqs.len());
                    for (s, val) in basis.sequences.iter().zip(ir.vector(w, y).iter()) {
                        full[index[s]] = *val;
                    }
                    vecs.push((ir.shape.clone(), y, copy + w, full));
                }
            }
            copy += ir.k();
        }
    }
    let mut cross: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut reduced: HashMap<(usize, usize), f64> = HashMap::new();
    let vv: Vec<DVector<f64>> = vecs.iter().map(|e| &v * &e.3).collect();
    for (i, a) in vecs.iter().enumerate() {
        for (j, b) in vecs.iter().enumerate() {
            let e = a.3.dot(&vv[j]);
            if a.0 != b.0 || a.1 != b.1 {
                cross = cross.max(e.abs());
            } else if let Some(prev) = reduced.get(&(a.2, b.2)) {
                spread = spread.max((prev - e).abs());
            } else {
                reduced.insert((a.2, b.2), e);
            }
            let _ = i;
        }
    }
    (cross, spread, vecs.len())
}

/// For every harmonic shell up to `x` and every irrep, the ratios
/// `r(g2)/r(g1)` of the residual `exact - E - g * first_order`.
pub fn second_order_ratios(table: &TwoBodyTable, n: usize, x: usize, g1: f64, g2: f64) -> Vec<(String, f64, f64, f64)> {
    let spectrum = table.spectrum().clone();
    let levels = enumerate_levels(&spectrum, n, Truncation::Excitation(x)).unwrap();
    let unit = table.with_strength(1.0);
    let splits: Vec<_> = levels.iter().map(|l| first_order_splitting_level(&l.compositions, &unit).unwrap()).collect();
    let mut out = Vec::new();
    for shape in Partition::all(n) {
        let exact = |g: f64| {
            exact_diagonalize(table, n, Truncation::Excitation(x), &SectorSpec::Spatial(shape.clone()), g)
                .map(|r| r.eigenvalues)
        };
        let (Ok(e1), Ok(e2)) = (exact(g1), exact(g2)) else { continue };
        // first-order prediction, level by level, ascending within each level
        let mut predicted: Vec<(f64, f64, String)> = Vec::new();
        for (level, split) in levels.iter().zip(&splits) {
            let label = IrrepLabel::with_parity(shape.clone(), level.parity);
            for s in sorted(split.shifts(&label)) {
                predicted.push((level.energy, s, format!("E={} {}", level.energy, label)));
            }
        }
        assert_eq!(predicted.len(), e1.len(), "{shape}");
        let order = |g: f64| {
            let mut p: Vec<(f64, &String)> = predicted.iter().map(|(e, s, l)| (e + g * s, l)).collect();
            p.sort_by(|a, b| a.0.total_cmp(&b.0));
            p
        };
        let (p1, p2) = (order(g1), order(g2));
        for k in 0..e1.len() {
            assert_eq!(p1[k].1, p2[k].1);
            let r1 = e1[k] - p1[k].0;
            let r2 = e2[k] - p2[k].0;
            out.push((p1[k].1.clone(), r1, r2, r2 / r1));
        }
    }
    out
}
