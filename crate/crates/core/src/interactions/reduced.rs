use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use super::basis::DoubleTableauBasis;
use super::table::{ElementKey, TwoBodyTable};
use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::spectra::{Composition, IrrepLabel};
use crate::symgroup::{Partition, Tableau};

/// Every `(n, n', v-arguments)` coupling of two composition spaces through a pair interaction.
fn couplings(
    rows: &[Vec<usize>],
    c2: &Composition,
    cols: &[Vec<usize>],
    mut f: impl FnMut(usize, usize, [usize; 4]),
) {
    let col_index: HashMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let target = c2.sorted();
    for (ri, n) in rows.iter().enumerate() {
        let len = n.len();
        for i in 0..len {
            for j in (i + 1)..len {
                // remaining states must sit inside c2, the two leftovers fill slots i and j
                let mut rest: Vec<usize> = (0..len).filter(|&k| k != i && k != j).map(|k| n[k]).collect();
                rest.sort_unstable();
                let Some((a, b)) = leftover(&target, &rest) else { continue };
                let mut push = |x: usize, y: usize| {
                    let mut m = n.clone();
                    m[i] = x;
                    m[j] = y;
                    if let Some(&ci) = col_index.get(&m) {
                        f(ri, ci, [n[i], n[j], x, y]);
                    }
                };
                push(a, b);
                if a != b {
                    push(b, a);
                }
            }
        }
    }
}

// target minus rest, when rest is a sub-multiset and exactly two remain.
fn leftover(target: &[usize], rest: &[usize]) -> Option<(usize, usize)> {
    let mut out = Vec::with_capacity(2);
    let mut r = 0;
    for &t in target {
        if r < rest.len() && rest[r] == t {
            r += 1;
        } else {
            out.push(t);
            if out.len() > 2 {
                return None;
            }
        }
    }
    (r == rest.len() && out.len() == 2).then(|| (out[0], out[1]))
}

/// Matrix of `sum_{i<j} V(q_i, q_j)` between two composition spaces in the sequence basis.
pub fn interaction_block(
    table: &TwoBodyTable,
    rows: &[Vec<usize>],
    c2: &Composition,
    cols: &[Vec<usize>],
) -> Result<DMatrix<f64>> {
    let mut entries = Vec::new();
    couplings(rows, c2, cols, |r, c, l| entries.push((r, c, table.key(l[0], l[1], l[2], l[3]))));
    let keys: Vec<ElementKey> = entries.iter().map(|e| e.2).collect();
    table.prefetch(&keys)?;
    let mut m = DMatrix::zeros(rows.len(), cols.len());
    for (r, c, k) in entries {
        m[(r, c)] += table.strength() * table.unit(k)?;
    }
    Ok(m)
}

/// Linear combination of canonical two-body elements.
pub type Symbolic = BTreeMap<ElementKey, f64>;

fn symbolic_block(table: &TwoBodyTable, rows: &[Vec<usize>], c2: &Composition, cols: &[Vec<usize>]) -> HashMap<(usize, usize), Symbolic> {
    let mut m: HashMap<(usize, usize), Symbolic> = HashMap::new();
    couplings(rows, c2, cols, |r, c, l| {
        *m.entry((r, c)).or_default().entry(table.key(l[0], l[1], l[2], l[3])).or_insert(0.0) += 1.0;
    });
    m
}

/// Reduced matrix `<W||V||W'>` of one irrep over its Kostka copies.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducedBlock {
    pub composition: Composition,
    pub shape: Partition,
    pub weyl: Vec<Tableau>,
    pub matrix: DMatrix<f64>,
}

/// Same as [`ReducedBlock`] with entries as combinations of canonical elements.
#[derive(Clone, Debug)]
pub struct SymbolicBlock {
    pub composition: Composition,
    pub shape: Partition,
    pub weyl: Vec<Tableau>,
    pub entries: Vec<Vec<Symbolic>>,
}

/// Tolerance for the Young-tableau independence of reduced elements.
pub const Y_INDEPENDENCE_TOL: f64 = 1e-10;

pub fn reduced_blocks(c: &Composition, table: &TwoBodyTable) -> Result<Vec<ReducedBlock>> {
    let basis = DoubleTableauBasis::new(c)?;
    reduced_blocks_in(&basis, table)
}

pub fn reduced_blocks_in(basis: &DoubleTableauBasis, table: &TwoBodyTable) -> Result<Vec<ReducedBlock>> {
    let c = &basis.composition;
    let v = interaction_block(table, &basis.sequences, c, &basis.sequences)?;
    let mut out = Vec::new();
    for ir in &basis.irreps {
        let first = ir.vectors[0].transpose() * &v * &ir.vectors[0];
        let last_y = ir.vectors.len() - 1;
        let last = ir.vectors[last_y].transpose() * &v * &ir.vectors[last_y];
        let scale = first.amax().max(table.strength().abs()).max(1.0);
        if (&first - &last).amax() > Y_INDEPENDENCE_TOL * scale {
            return Err(Error::Numeric(format!(
                "reduced elements of {} in {c} depend on the Young tableau ({:e})",
                ir.shape,
                (&first - &last).amax()
            )));
        }
        let sym = (&first + first.transpose()) * 0.5;
        out.push(ReducedBlock { composition: c.clone(), shape: ir.shape.clone(), weyl: ir.weyl.clone(), matrix: sym });
    }
    Ok(out)
}

/// Reduced blocks as linear combinations of canonical elements. Coefficients
/// below 1e-13 in magnitude are dropped.
pub fn symbolic_reduced_blocks(c: &Composition, table: &TwoBodyTable) -> Result<Vec<SymbolicBlock>> {
    let basis = DoubleTableauBasis::new(c)?;
    let sym = symbolic_block(table, &basis.sequences, c, &basis.sequences);
    let mut out = Vec::new();
    for ir in &basis.irreps {
        let q = &ir.vectors[0];
        let k = ir.k();
        let mut entries = vec![vec![Symbolic::new(); k]; k];
        for ((r, col), combo) in &sym {
            for a in 0..k {
                for b in 0..k {
                    let w = q[(*r, a)] * q[(*col, b)];
                    if w == 0.0 {
                        continue;
                    }
                    for (key, coef) in combo {
                        *entries[a][b].entry(*key).or_insert(0.0) += w * coef;
                    }
                }
            }
        }
        for row in entries.iter_mut() {
            for e in row.iter_mut() {
                e.retain(|_, c| c.abs() >= 1e-13);
            }
        }
        out.push(SymbolicBlock { composition: c.clone(), shape: ir.shape.clone(), weyl: ir.weyl.clone(), entries });
    }
    Ok(out)
}

/// One first-order level.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplitLevel {
    pub label: IrrepLabel,
    pub shift: f64,
    pub multiplicity: u64,
    /// Eigenvector over the copies, ordered as in `copies`.
    pub eigenvector: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplittingResult {
    pub levels: Vec<SplitLevel>,
    /// For each irrep, the `(composition, Weyl tableau)` copies spanning it.
    pub copies: BTreeMap<String, Vec<(Composition, Tableau)>>,
}

impl SplittingResult {
    pub fn shifts(&self, label: &IrrepLabel) -> Vec<f64> {
        self.levels.iter().filter(|l| &l.label == label).map(|l| l.shift).collect()
    }

    pub fn total_states(&self) -> u64 {
        self.levels.iter().map(|l| l.multiplicity).sum()
    }
}

/// First-order shifts of one composition space.
pub fn first_order_splitting(c: &Composition, table: &TwoBodyTable) -> Result<SplittingResult> {
    first_order_splitting_level(std::slice::from_ref(c), table)
}

/// First-order shifts of a degenerate level made of several compositions:
/// the reduced matrices of all copies of each irrep are diagonalized together.
pub fn first_order_splitting_level(comps: &[Composition], table: &TwoBodyTable) -> Result<SplittingResult> {
    let bases: Vec<DoubleTableauBasis> = comps.iter().map(DoubleTableauBasis::new).collect::<Result<_>>()?;
    let spectrum = table.spectrum();
    let parities: Vec<Option<i8>> = comps.iter().map(|c| c.parity(spectrum)).collect();
    let parity = if parities.windows(2).all(|w| w[0] == w[1]) { parities.first().copied().flatten() } else { None };
    let mut blocks: Vec<Vec<DMatrix<f64>>> = vec![vec![DMatrix::zeros(0, 0); bases.len()]; bases.len()];
    for (i, bi) in bases.iter().enumerate() {
        for (j, bj) in bases.iter().enumerate() {
            if j >= i {
                blocks[i][j] = interaction_block(table, &bi.sequences, &bj.composition, &bj.sequences)?;
            }
        }
    }
    let mut shapes: Vec<Partition> = bases.iter().flat_map(|b| b.irreps.iter().map(|i| i.shape.clone())).collect();
    shapes.sort_by(|a, b| b.cmp(a));
    shapes.dedup();
    let mut levels = Vec::new();
    let mut copies = BTreeMap::new();
    for shape in shapes {
        // (composition index, first-Y vectors)
        let members: Vec<(usize, &DMatrix<f64>, &[Tableau])> = bases
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.irrep(&shape).map(|ir| (i, &ir.vectors[0], ir.weyl.as_slice())))
            .collect();
        let total: usize = members.iter().map(|m| m.1.ncols()).sum();
        let mut red = DMatrix::zeros(total, total);
        let mut row0 = 0;
        for &(i, qi, _) in &members {
            let mut col0 = 0;
            for &(j, qj, _) in &members {
                let v = if j >= i { &blocks[i][j] } else { &blocks[j][i] };
                let sub = if j >= i { qi.transpose() * v * qj } else { (qj.transpose() * v * qi).transpose() };
                red.view_mut((row0, col0), (qi.ncols(), qj.ncols())).copy_from(&sub);
                col0 += qj.ncols();
            }
            row0 += qi.ncols();
        }
        let (vals, vecs) = eigh(&red);
        let label = IrrepLabel::with_parity(shape.clone(), parity);
        for (k, val) in vals.iter().enumerate() {
            // contact interactions cannot act on antisymmetric states; round-off is cleared
            let shift = if val.abs() < 1e-14 * table.strength().abs().max(1.0) { 0.0 } else { *val };
            levels.push(SplitLevel {
                label: label.clone(),
                shift,
                multiplicity: shape.dimension(),
                eigenvector: vecs.column(k).iter().copied().collect(),
            });
        }
        copies.insert(
            label.to_string(),
            members.iter().flat_map(|&(i, _, w)| w.iter().map(move |t| (comps[i].clone(), t.clone()))).collect(),
        );
    }
    Ok(SplittingResult { levels, copies })
}

/// Vector `|W Y>` of one composition space, embedded in a larger sequence basis.
pub fn embed(basis: &DoubleTableauBasis, v: &DVector<f64>, index: &HashMap<Vec<usize>, usize>, dim: usize) -> DVector<f64> {
    let mut out = DVector::zeros(dim);
    for (s, x) in basis.sequences.iter().zip(v.iter()) {
        out[index[s]] = *x;
    }
    out
}
