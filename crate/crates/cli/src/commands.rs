use std::fmt;
use std::path::Path;

use fewbody::interactions::{
    exact_diagonalize, first_order_splitting, first_order_splitting_level, InteractionKind, SectorSpec, SplitLevel,
    TwoBodyTable,
};
use fewbody::io::{parse_kernel, parse_table_trap};
use fewbody::spectra::{
    enumerate_levels, minimal_group_catalog, CatalogTrap, Composition, IrrepLabel, SingleParticleSpectrum,
    Truncation,
};
use fewbody::spinstats::{physical_state_count, spatial_irrep_for_spin, spin_sector_states, decompose_spin_space, Statistics};
use fewbody::symgroup::{kostka_row, semistandard_tableaux, standard_tableaux, Partition};
use fewbody::unitary::{
    near_unitary_splitting, tunneling_amplitudes_from_trap, unitary_spectrum, TunnelingAmplitudes,
};

use crate::output::{round12, Cell, Table};
use crate::*;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Lib(fewbody::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "{s}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<fewbody::Error> for CliError {
    fn from(e: fewbody::Error) -> Self {
        CliError::Lib(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn partition(s: &str) -> Result<Partition> {
    Ok(Partition::parse(s)?)
}

fn numbers<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| config(format!("bad {what} '{s}'"))))
        .collect()
}

/// `from:to:steps` with at least two steps.
fn sweep(s: &str) -> Result<Vec<f64>> {
    let bad = || config(format!("sweep must be 'from:to:steps', got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, k] = parts[..] else { return Err(bad()) };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let k: usize = k.parse().map_err(|_| bad())?;
    if k < 2 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64).collect())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(config("--n must be at least 1"));
    }
    Ok(())
}

fn spectrum(t: &TrapArgs) -> Result<SingleParticleSpectrum> {
    Ok(match t.trap {
        TrapChoice::Harmonic => SingleParticleSpectrum::harmonic(),
        TrapChoice::SquareWell => SingleParticleSpectrum::square_well(),
        TrapChoice::Table => {
            let path = t.trap_file.as_ref().ok_or_else(|| config("--trap table needs --trap-file"))?;
            parse_table_trap(&read(path)?)?
        }
    })
}

fn truncation(t: &TruncArgs) -> Result<Truncation> {
    match (t.xmax, t.emax) {
        (Some(x), None) => Ok(Truncation::Excitation(x)),
        (None, Some(e)) if e.is_finite() => Ok(Truncation::Energy(e)),
        (None, None) => Err(config("give --xmax or --emax")),
        _ => Err(config("--emax must be finite")),
    }
}

fn table(s: &SingleParticleSpectrum, i: &InteractionArgs) -> Result<TwoBodyTable> {
    if !i.g.is_finite() {
        return Err(config("--g must be finite"));
    }
    let kind = match i.interaction {
        InteractionChoice::Contact => InteractionKind::Contact,
        InteractionChoice::Kernel => {
            let path = i.kernel_file.as_ref().ok_or_else(|| config("--interaction kernel needs --kernel-file"))?;
            InteractionKind::Kernel(parse_kernel(&read(path)?)?)
        }
    };
    Ok(TwoBodyTable::new(s, kind, i.g)?)
}

fn stats(s: StatsChoice) -> Statistics {
    match s {
        StatsChoice::Boson => Statistics::Boson,
        StatsChoice::Fermion => Statistics::Fermion,
    }
}

fn parity_cell(p: Option<i8>) -> Cell {
    p.into()
}

fn energy_col(s: &SingleParticleSpectrum, name: &str) -> String {
    format!("{name} [{}]", s.units())
}

fn float_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| serde_json::to_string(&round12(x)).unwrap()).collect::<Vec<_>>().join(";")
}

pub fn run(cmd: &Command) -> Result<Table> {
    match cmd {
        Command::Tableaux(a) => tableaux(a),
        Command::Spectrum(a) => spectrum_cmd(a),
        Command::Spin(a) => spin(a),
        Command::Splitting(a) => match a.mode {
            SplitMode::Weak => weak(a),
            SplitMode::NearUnitary => near_unitary(a),
        },
        Command::Unitary(a) => unitary(a),
        Command::Exactdiag(a) => exactdiag(a),
        Command::Catalog(a) => catalog(a),
    }
}

fn tableaux(a: &TableauxArgs) -> Result<Table> {
    check_n(a.n)?;
    let mut t = Table::new(&["shape", "dimension", "kind", "index", "tableau"]);
    let Some(shape) = &a.shape else {
        for p in Partition::all(a.n) {
            let d = p.dimension();
            t.push(vec![p.to_string().into(), d.into(), "irrep".into(), Cell::Empty, Cell::Empty]);
        }
        return Ok(t);
    };
    let p = partition(shape)?;
    if p.n() != a.n {
        return Err(config(format!("shape {p} does not partition {}", a.n)));
    }
    let d = p.dimension();
    match &a.content {
        None => {
            for (i, y) in standard_tableaux(&p).iter().enumerate() {
                t.push(vec![p.to_string().into(), d.into(), "standard".into(), i.into(), y.to_string().into()]);
            }
        }
        Some(c) => {
            let content: Vec<usize> = numbers(c, "content")?;
            if content.iter().sum::<usize>() != a.n {
                return Err(config(format!("content {c} does not sum to {}", a.n)));
            }
            for (i, w) in semistandard_tableaux(&p, &content).iter().enumerate() {
                t.push(vec![p.to_string().into(), d.into(), "semistandard".into(), i.into(), w.to_string().into()]);
            }
        }
    }
    Ok(t)
}

fn irreps_of(c: &Composition, s: &SingleParticleSpectrum) -> String {
    kostka_row(&c.shape())
        .into_iter()
        .filter(|&(_, k)| k > 0)
        .map(|(shape, k)| format!("{}x{k}", IrrepLabel::with_parity(shape, c.parity(s))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn spectrum_cmd(a: &SpectrumArgs) -> Result<Table> {
    check_n(a.n)?;
    let s = spectrum(&a.trap)?;
    let levels = enumerate_levels(&s, a.n, truncation(&a.trunc)?)?;
    let e = energy_col(&s, "energy");
    let mut t = Table::new(&[
        "level",
        &e,
        "composition",
        "shape",
        "composition_degeneracy",
        "irreps",
        "level_degeneracy",
        "level_irreps",
        "parity",
        "minimal",
        "emergent_harmonic",
        "accidental",
    ]);
    for (i, l) in levels.iter().enumerate() {
        let level_irreps: Vec<String> = l.irreps.iter().map(|(lab, k)| format!("{lab}x{k}")).collect();
        for c in &l.compositions {
            t.push(vec![
                i.into(),
                l.energy.into(),
                c.to_string().into(),
                c.shape().to_string().into(),
                c.degeneracy().into(),
                irreps_of(c, &s).into(),
                l.degeneracy.into(),
                level_irreps.join(" ").into(),
                parity_cell(l.parity),
                l.flags.minimal.into(),
                l.flags.emergent_harmonic.into(),
                l.flags.accidental.into(),
            ]);
        }
    }
    Ok(t)
}

fn spin(a: &SpinArgs) -> Result<Table> {
    let d = decompose_spin_space(a.n, a.j)?;
    let st = stats(a.stats);
    let mut t = Table::new(&[
        "spin_irrep",
        "spin_multiplicity",
        "total_spin",
        "statistics",
        "spatial_irrep",
        "spatial_dimension",
        "states_per_spatial_copy",
        "sector_states",
    ]);
    for c in &d.components {
        let spatial = spatial_irrep_for_spin(&c.shape, st);
        t.push(vec![
            c.shape.to_string().into(),
            c.multiplicity.into(),
            c.total_spin.into(),
            format!("{:?}", st).to_lowercase().into(),
            spatial.to_string().into(),
            spatial.dimension().into(),
            physical_state_count(&spatial, st, a.j).into(),
            spin_sector_states(&spatial, st, a.j).into(),
        ]);
    }
    Ok(t)
}

fn weak(a: &SplittingArgs) -> Result<Table> {
    check_n(a.n)?;
    if a.t.is_some() || a.amps.is_some() || a.sweep_ratio.is_some() {
        return Err(config("--t, --u, --amps and --sweep-ratio belong to --mode near-unitary"));
    }
    let s = spectrum(&a.trap)?;
    let tab = table(&s, &a.interaction)?;
    // (level energy, compositions) groups
    let groups: Vec<(f64, Vec<Composition>)> = match &a.composition {
        Some(c) => {
            let c = Composition::parse(c)?;
            if c.n() != a.n {
                return Err(config(format!("composition {c} has {} particles, not {}", c.n(), a.n)));
            }
            vec![(c.energy(&s), vec![c])]
        }
        None => enumerate_levels(&s, a.n, truncation(&a.trunc)?)?
            .into_iter()
            .map(|l| (l.energy, l.compositions))
            .collect(),
    };
    let e = energy_col(&s, "energy");
    if let Some(sw) = &a.sweep_g {
        let gs = sweep(sw)?;
        let unit = tab.with_strength(1.0);
        let mut t = Table::new(&["g", &e, "irrep", "parity", "multiplicity"]);
        let splits: Vec<(f64, Vec<SplitLevel>)> = groups
            .iter()
            .map(|(en, cs)| Ok((*en, first_order_splitting_level(cs, &unit)?.levels)))
            .collect::<Result<_>>()?;
        for g in gs {
            for (en, levels) in &splits {
                for l in levels {
                    t.push(vec![
                        g.into(),
                        (en + g * l.shift).into(),
                        l.label.shape.to_string().into(),
                        parity_cell(l.label.parity),
                        l.multiplicity.into(),
                    ]);
                }
            }
        }
        return Ok(t);
    }
    let shift = energy_col(&s, "shift");
    let level_e = energy_col(&s, "level_energy");
    let mut t = Table::new(&[&level_e, "compositions", "irrep", "parity", &shift, "multiplicity", &e]);
    for (en, cs) in &groups {
        let split = if cs.len() == 1 { first_order_splitting(&cs[0], &tab)? } else { first_order_splitting_level(cs, &tab)? };
        let names: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        for l in &split.levels {
            t.push(vec![
                (*en).into(),
                names.join(" ").into(),
                l.label.shape.to_string().into(),
                parity_cell(l.label.parity),
                l.shift.into(),
                l.multiplicity.into(),
                (en + l.shift).into(),
            ]);
        }
    }
    Ok(t)
}

fn near_unitary(a: &SplittingArgs) -> Result<Table> {
    check_n(a.n)?;
    if a.composition.is_some() || a.sweep_g.is_some() {
        return Err(config("--composition and --sweep-g belong to --mode weak"));
    }
    let s = spectrum(&a.trap)?;
    let level = unitary_spectrum(&s, a.n, a.level + 1)?.pop().ok_or_else(|| config("no unitary level"))?;
    if let Some(sw) = &a.sweep_ratio {
        if a.n != 4 {
            return Err(config("--sweep-ratio needs --n 4"));
        }
        let mut t = Table::new(&["t/u", "shift [u]", "irrep", "parity", "multiplicity"]);
        for r in sweep(sw)? {
            let split = near_unitary_splitting(&level, &TunnelingAmplitudes::four(r, 1.0)?)?;
            for l in &split.levels {
                t.push(vec![r.into(), l.shift.into(), l.label.shape.to_string().into(), parity_cell(l.label.parity), l.multiplicity.into()]);
            }
        }
        return Ok(t);
    }
    let amps = match (a.t, a.u, &a.amps) {
        (Some(t), Some(u), None) => {
            if a.n != 4 {
                return Err(config("--t/--u describe N=4; use --amps otherwise"));
            }
            TunnelingAmplitudes::four(t, u)?
        }
        (None, None, Some(list)) => {
            let v: Vec<f64> = numbers(list, "amplitude list")?;
            let symmetric = s.is_symmetric() && level.parity.is_some() && v.iter().eq(v.iter().rev());
            TunnelingAmplitudes::new(v, symmetric)?
        }
        (None, None, None) => tunneling_amplitudes_from_trap(&s, &level)?,
        _ => return Err(config("give --t with --u, or --amps")),
    };
    let shift = energy_col(&s, "shift*g");
    let energy = energy_col(&s, "unitary_energy");
    let mut t = Table::new(&["state", "irrep", "parity", &shift, "copy", &energy, "composition"]);
    let split = near_unitary_splitting(&level, &amps)?;
    let mut state = 0usize;
    for (copy, l) in split.levels.iter().enumerate() {
        for _ in 0..l.multiplicity {
            t.push(vec![
                state.into(),
                l.label.shape.to_string().into(),
                parity_cell(l.label.parity),
                l.shift.into(),
                copy.into(),
                level.energy.into(),
                level.composition.to_string().into(),
            ]);
            state += 1;
        }
    }
    Ok(t)
}

fn unitary(a: &UnitaryArgs) -> Result<Table> {
    check_n(a.n)?;
    let s = spectrum(&a.trap)?;
    let e = energy_col(&s, "energy");
    let amp_col = energy_col(&s, "amplitudes*g");
    let mut t = Table::new(&["index", "composition", &e, "degeneracy", "parity", &amp_col, "t/u"]);
    for (i, l) in unitary_spectrum(&s, a.n, a.count)?.iter().enumerate() {
        let (amps, ratio) = if a.amplitudes && a.n >= 2 {
            let amps = tunneling_amplitudes_from_trap(&s, l)?;
            let ratio = (a.n == 4).then(|| amps.a[0] / amps.a[1]);
            (Cell::from(float_list(&amps.a)), Cell::from(ratio))
        } else {
            (Cell::Empty, Cell::Empty)
        };
        t.push(vec![i.into(), l.composition.to_string().into(), l.energy.into(), l.degeneracy.into(), parity_cell(l.parity), amps, ratio]);
    }
    Ok(t)
}

fn exactdiag(a: &ExactArgs) -> Result<Table> {
    check_n(a.n)?;
    let s = spectrum(&a.trap)?;
    let tab = table(&s, &a.interaction)?;
    let sector = match (&a.irrep, a.stats) {
        (Some(p), None) => SectorSpec::Spatial(partition(p)?),
        (None, Some(st)) => {
            let spin = a.spin.as_deref().map(partition).transpose()?;
            SectorSpec::Spin { statistics: stats(st), j: a.j, spin }
        }
        _ => return Err(config("give --irrep or --stats")),
    };
    let r = exact_diagonalize(&tab, a.n, truncation(&a.trunc)?, &sector, a.interaction.g)?;
    let e = energy_col(&s, "energy");
    let mut t =
        Table::new(&["index", &e, "irrep", "parity", "block_dimension", "sector_dimension", "naive_dimension"]);
    let mut index = 0usize;
    for b in &r.blocks {
        for &ev in &b.eigenvalues {
            t.push(vec![
                index.into(),
                ev.into(),
                r.irrep.to_string().into(),
                parity_cell(b.parity),
                b.dimension.into(),
                r.dimension.into(),
                r.naive_dimension.into(),
            ]);
            index += 1;
        }
    }
    Ok(t)
}

fn catalog(a: &CatalogArgs) -> Result<Table> {
    let kind = match a.trap {
        CatalogKind::Asymmetric => CatalogTrap::Asymmetric,
        CatalogKind::Symmetric => CatalogTrap::Symmetric,
        CatalogKind::Harmonic => CatalogTrap::Harmonic,
    };
    let c = minimal_group_catalog(a.n, kind)?;
    let mut t = Table::new(&["group", "irrep_dimensions", "order"]);
    for (name, dims) in [("C0", &c.c0), ("K0", &c.k0), ("C", &c.c), ("K", &c.k)] {
        t.push(vec![name.into(), dims.to_string().into(), dims.order().into()]);
    }
    Ok(t)
}
