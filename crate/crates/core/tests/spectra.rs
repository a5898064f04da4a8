mod common;

use std::collections::{BTreeMap, BTreeSet};

use fewbody::spectra::*;
use fewbody::symgroup::{irrep_dimension, Partition};
use fewbody::Error;
use proptest::prelude::*;
use rand::Rng;

fn comp(s: &str) -> Composition {
    Composition::parse(s).unwrap()
}

#[test]
fn degeneracy_examples() {
    assert_eq!(composition_degeneracy(&comp("0,1,1,2,4")), 60);
    assert_eq!(composition_degeneracy(&comp("0,0,1,1,2")), 30);
    assert_eq!(composition_degeneracy(&comp("3,3,3,3,3")), 1);
}

#[test]
fn degeneracy_counts_distinct_sequences() {
    for s in ["0,1,1,2,4", "0,0,1,1,2", "2,2,2", "0,1,2,3", "0,0,0,1,1,5"] {
        let c = comp(s);
        let seqs = c.sequences();
        let distinct: BTreeSet<_> = seqs.iter().cloned().collect();
        assert_eq!(distinct.len(), seqs.len());
        assert_eq!(seqs.len() as u64, c.degeneracy());
        assert!(seqs.iter().all(|q| Composition::from_states(q).unwrap() == c));
    }
}

#[test]
fn degeneracy_depends_only_on_shape() {
    let a = comp("0,0,1,2");
    let b = comp("3,5,5,9");
    assert_eq!(a.shape(), b.shape());
    assert_eq!(a.degeneracy(), b.degeneracy());
}

#[test]
fn harmonic_truncation_x4() {
    let s = SingleParticleSpectrum::harmonic();
    let comps = compositions(&s, 4, Truncation::Excitation(4)).unwrap();
    assert_eq!(comps.len(), 12);
    assert_eq!(comps.iter().map(|c| c.degeneracy()).sum::<u64>(), 70);
    let by_energy = compositions(&s, 4, Truncation::Energy(6.0)).unwrap();
    assert_eq!(by_energy, comps);
}

#[test]
fn single_particle_levels() {
    let s = SingleParticleSpectrum::harmonic();
    let levels = enumerate_levels(&s, 1, Truncation::Excitation(5)).unwrap();
    assert_eq!(levels.len(), 6);
    for (n, l) in levels.iter().enumerate() {
        assert_eq!(l.energy, n as f64 + 0.5);
        assert_eq!(l.degeneracy, 1);
        assert_eq!(l.parity, Some(if n % 2 == 0 { 1 } else { -1 }));
    }
    let sq = SingleParticleSpectrum::square_well();
    let levels = enumerate_levels(&sq, 1, Truncation::Energy(30.0)).unwrap();
    assert_eq!(levels.iter().map(|l| l.energy).collect::<Vec<_>>(), vec![1.0, 4.0, 9.0, 16.0, 25.0]);
}

#[test]
fn cutoff_below_ground_is_rejected() {
    let s = SingleParticleSpectrum::harmonic();
    assert!(matches!(enumerate_levels(&s, 4, Truncation::Energy(1.9)), Err(Error::Invalid(_))));
    assert!(enumerate_levels(&s, 4, Truncation::Energy(2.0)).is_ok());
}

#[test]
fn harmonic_shell_examples() {
    assert_eq!(harmonic_shell_degeneracy(4, 0), 1);
    assert_eq!(harmonic_shell_degeneracy(4, 2), 10);
    for x in 0..10u128 {
        assert_eq!(harmonic_shell_degeneracy(4, x as usize), (x + 1) * (x + 2) * (x + 3) / 6);
    }
}

fn brute_shell(n: usize, x: usize) -> u128 {
    // count sequences in {0..x}^n with sum x
    let mut count = 0;
    let total = (x + 1).pow(n as u32);
    for mut code in 0..total {
        let mut sum = 0;
        for _ in 0..n {
            sum += code % (x + 1);
            code /= x + 1;
        }
        count += (sum == x) as u128;
    }
    count
}

#[test]
fn harmonic_levels_match_shells() {
    let s = SingleParticleSpectrum::harmonic();
    for n in 1..=5 {
        let levels = enumerate_levels(&s, n, Truncation::Excitation(6)).unwrap();
        assert_eq!(levels.len(), 7);
        for (x, l) in levels.iter().enumerate() {
            assert_eq!(l.excitation, Some(x));
            assert_eq!(l.degeneracy as u128, harmonic_shell_degeneracy(n, x));
            assert_eq!(l.degeneracy as u128, brute_shell(n, x));
            assert_eq!(l.flags.emergent_harmonic, l.compositions.len() > 1);
            assert!(!l.flags.accidental);
            assert_eq!(l.parity, Some(if x % 2 == 0 { 1 } else { -1 }));
        }
    }
}

#[test]
fn kostka_consistency_per_level() {
    let traps = [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()];
    for s in &traps {
        for n in 1..=5 {
            let e_max = if s.kind() == TrapKind::Harmonic { n as f64 * 0.5 + 5.0 } else { n as f64 * 20.0 };
            for l in enumerate_levels(s, n, Truncation::Energy(e_max)).unwrap() {
                let from_irreps: u64 = l.irreps.iter().map(|(lab, m)| *m as u64 * irrep_dimension(&lab.shape)).sum();
                let from_comps: u64 = l.compositions.iter().map(composition_degeneracy).sum();
                assert_eq!(from_irreps, l.degeneracy);
                assert_eq!(from_comps, l.degeneracy);
                assert!(l.irreps.iter().all(|(lab, _)| lab.parity.is_some()));
            }
        }
    }
}

#[test]
fn square_well_pythagorean_coincidences() {
    let s = SingleParticleSpectrum::square_well();
    let e_max = 400.0;
    let levels = enumerate_levels(&s, 2, Truncation::Energy(e_max)).unwrap();
    // oracle: direct scan of (a+1)^2 + (b+1)^2
    let mut brute: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for a in 1..=20u64 {
        for b in a..=20u64 {
            if a * a + b * b <= e_max as u64 {
                brute.entry(a * a + b * b).or_default().push((a - 1, b - 1));
            }
        }
    }
    assert_eq!(levels.len(), brute.len());
    for l in &levels {
        let pairs = &brute[&(l.energy as u64)];
        assert_eq!(l.compositions.len(), pairs.len());
        assert_eq!(l.flags.accidental, pairs.len() > 1);
        assert!(!l.flags.emergent_harmonic);
    }
    // 50 = 1+49 = 25+25
    let fifty = levels.iter().find(|l| l.energy == 50.0).unwrap();
    assert!(fifty.flags.accidental);
    assert_eq!(fifty.degeneracy, 3);
}

#[test]
fn generic_table_traps_have_no_coincidences() {
    let mut rng = common::rng(11);
    for _ in 0..10 {
        let mut e = 0.0;
        let energies: Vec<f64> = (0..9)
            .map(|n| {
                e += 1.0 + 0.3 * rng.gen::<f64>();
                e + n as f64 * 0.01
            })
            .collect();
        let s = SingleParticleSpectrum::table(energies.clone(), None).unwrap();
        let levels = enumerate_levels(&s, 3, Truncation::Energy(3.0 * energies[8])).unwrap();
        assert!(!levels.is_empty());
        for l in &levels {
            assert_eq!(l.compositions.len(), 1);
            assert!(l.flags.minimal);
            assert!(l.parity.is_none());
        }
        // table length bounds the states used
        assert!(levels.iter().all(|l| l.compositions[0].max_state() < 9));
    }
}

#[test]
fn table_trap_validation() {
    assert!(SingleParticleSpectrum::table(vec![1.0, 1.0], None).is_err());
    assert!(SingleParticleSpectrum::table(vec![2.0, 1.0], None).is_err());
    assert!(SingleParticleSpectrum::table(vec![1.0, 2.0], Some(vec![1])).is_err());
    assert!(SingleParticleSpectrum::table(vec![1.0, 2.0], Some(vec![1, 0])).is_err());
    let s = SingleParticleSpectrum::table(vec![0.5, 1.5], Some(vec![1, -1])).unwrap();
    assert!(s.is_symmetric());
    assert!(!s.has_wavefunctions());
}

#[test]
fn orthogonal_dimensions() {
    for l in 0..12 {
        assert_eq!(orthogonal_irrep_dimension(3, l).unwrap(), 2 * l as u128 + 1);
        assert_eq!(orthogonal_irrep_dimension(4, l).unwrap(), (l as u128 + 1).pow(2));
    }
    assert_eq!(orthogonal_irrep_dimension(7, 0).unwrap(), 1);
    assert!(orthogonal_irrep_dimension(2, 1).is_err());
}

fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

#[test]
fn orthogonal_dimensions_count_harmonic_polynomials() {
    // homogeneous degree-l polynomials in N variables minus those divisible by r^2
    for n in 3..=7i64 {
        for l in 0..10i64 {
            let harmonic = binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1);
            assert_eq!(orthogonal_irrep_dimension(n as usize, l as usize).unwrap() as i128, harmonic);
        }
    }
}

#[test]
fn bose_fermi_partner_examples() {
    let c = bose_fermi_partner(&comp("0,1,1,2,4"));
    assert_eq!(c.sorted(), vec![0, 2, 3, 5, 8]);
    assert_eq!(bose_fermi_partner(&comp("0,0,0,0")).sorted(), vec![0, 1, 2, 3]);
}

#[test]
fn bose_fermi_partner_shift_on_random_compositions() {
    let s = SingleParticleSpectrum::harmonic();
    let mut rng = common::rng(3);
    for _ in 0..20 {
        let n = rng.gen_range(2..=6);
        let states: Vec<usize> = (0..n).map(|_| rng.gen_range(0..8)).collect();
        let c = Composition::from_states(&states).unwrap();
        let p = bose_fermi_partner(&c);
        assert_eq!(p.shape(), Partition::column(n));
        assert_eq!(p.energy(&s) - c.energy(&s), (n * (n - 1) / 2) as f64);
    }
}

#[test]
fn bose_fermi_partner_is_injective_and_order_preserving() {
    let s = SingleParticleSpectrum::harmonic();
    let comps = compositions(&s, 4, Truncation::Excitation(8)).unwrap();
    let images: BTreeSet<_> = comps.iter().map(bose_fermi_partner).collect();
    assert_eq!(images.len(), comps.len());
    for w in comps.windows(2) {
        assert!(bose_fermi_partner(&w[0]).energy(&s) <= bose_fermi_partner(&w[1]).energy(&s));
    }
}

#[test]
fn wavefunction_parity_and_normalization() {
    for s in [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()] {
        let (a, b) = s.domain();
        let (a, b) = (a.max(-12.0), b.min(12.0));
        for q in [0.1f64, 0.37, 0.8, 1.3] {
            let q = q.min(b * 0.99);
            let plus = s.wavefunctions(6, q).unwrap();
            let minus = s.wavefunctions(6, -q).unwrap();
            for n in 0..=6 {
                let pi = s.parity(n).unwrap() as f64;
                assert!((minus[n] - pi * plus[n]).abs() < 1e-12);
            }
        }
        // midpoint-rule overlaps as an independent check of orthonormality
        let steps = 20000;
        let h = (b - a) / steps as f64;
        let mut gram = [[0.0; 5]; 5];
        for k in 0..steps {
            let q = a + (k as f64 + 0.5) * h;
            let f = s.wavefunctions(4, q).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    gram[i][j] += h * f[i] * f[j];
                }
            }
        }
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                assert!((g - (i == j) as u8 as f64).abs() < 1e-6, "{i}{j} {g}");
            }
        }
    }
}

#[test]
fn derivatives_match_finite_differences() {
    for s in [SingleParticleSpectrum::harmonic(), SingleParticleSpectrum::square_well()] {
        let h = 1e-5;
        for q in [-0.9, 0.2, 1.1] {
            let d = s.derivatives(5, q).unwrap();
            let up = s.wavefunctions(5, q + h).unwrap();
            let dn = s.wavefunctions(5, q - h).unwrap();
            for n in 0..=5 {
                assert!((d[n] - (up[n] - dn[n]) / (2.0 * h)).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn catalogs_match_tables() {
    for (n, trap, c0, k0, c, k) in common::CATALOGS {
        let kind = match trap {
            "asymmetric" => CatalogTrap::Asymmetric,
            "symmetric" => CatalogTrap::Symmetric,
            _ => CatalogTrap::Harmonic,
        };
        let cat = minimal_group_catalog(n, kind).unwrap();
        assert_eq!(cat.c0.to_string(), c0, "C0 N={n} {trap}");
        assert_eq!(cat.k0.to_string(), k0, "K0 N={n} {trap}");
        assert_eq!(cat.c.to_string(), c, "C N={n} {trap}");
        assert_eq!(cat.k.to_string(), k, "K N={n} {trap}");
    }
}

#[test]
fn catalog_orders() {
    let fact = |n: u64| (1..=n).product::<u64>();
    for n in 2..=4 {
        let asym = minimal_group_catalog(n, CatalogTrap::Asymmetric).unwrap();
        assert_eq!(asym.c0.order(), Some(fact(n as u64)));
        let sym = minimal_group_catalog(n, CatalogTrap::Symmetric).unwrap();
        assert_eq!(sym.c0.order(), Some(fact(n as u64) << n));
        assert_eq!(sym.c.order(), Some(2 * fact(n as u64)));
    }
    assert!(minimal_group_catalog(5, CatalogTrap::Asymmetric).is_err());
    assert!(minimal_group_catalog(1, CatalogTrap::Harmonic).is_err());
}

#[test]
fn symmetric_kinematic_classes_match_parity_patterns() {
    // oracle: enumerate compositions over a 2-state-per-parity alphabet large enough to
    // realize every (shape, parity pattern) and count distinct classes per degeneracy
    let s = SingleParticleSpectrum::square_well();
    let mut classes: BTreeMap<u64, BTreeSet<Vec<(usize, i8)>>> = BTreeMap::new();
    for c in compositions(&s, 4, Truncation::Energy(4.0 * 64.0)).unwrap() {
        let mut pattern: Vec<(usize, i8)> =
            c.labels().iter().map(|&l| (c.multiplicity(l), s.parity(l).unwrap())).collect();
        pattern.sort();
        classes.entry(c.degeneracy()).or_default().insert(pattern);
    }
    let counted: BTreeMap<u64, usize> = classes.into_iter().map(|(d, v)| (d, v.len())).collect();
    match minimal_group_catalog(4, CatalogTrap::Symmetric).unwrap().k0 {
        IrrepDims::Finite(m) => assert_eq!(m, counted),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #[test]
    fn composition_roundtrip(states in proptest::collection::vec(0usize..9, 1..7)) {
        let c = Composition::from_states(&states).unwrap();
        prop_assert_eq!(Composition::parse(&c.to_string()).unwrap(), c.clone());
        prop_assert_eq!(c.n(), states.len());
        prop_assert_eq!(c.shape().n(), states.len());
    }

    #[test]
    fn partner_is_fermionic(states in proptest::collection::vec(0usize..9, 1..7)) {
        let c = Composition::from_states(&states).unwrap();
        let p = bose_fermi_partner(&c);
        prop_assert_eq!(p.degeneracy(), (1..=states.len() as u64).product::<u64>());
    }
}
