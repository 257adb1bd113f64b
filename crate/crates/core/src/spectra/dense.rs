use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{DickeMembership, MembershipMetric, SpectralReport, SpectrumMethod};
use crate::dicke::{fixed_weight_indices, DickeLabel};
use crate::error::{Error, Result};
use crate::pauli::{expectation_float, CompiledSum, PauliSum};

/// Default qubit guard for [`dense_spectrum`]; raise to 14 explicitly.
pub const DEFAULT_DENSE_SPECTRUM_GUARD: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOptions {
    pub max_qubits: usize,
    /// Absolute tolerance for `|lambda| = max_abs`.
    pub eigen_tol: f64,
    /// Projection residual below which a Dicke state counts as extremal.
    pub membership_tol: f64,
    /// Diagonalize connected components of the matrix separately.
    pub block_decompose: bool,
    pub keep_eigenvalues: bool,
}

impl Default for DenseOptions {
    fn default() -> Self {
        Self {
            max_qubits: DEFAULT_DENSE_SPECTRUM_GUARD,
            eigen_tol: 1e-8,
            membership_tol: 1e-8,
            block_decompose: true,
            keep_eigenvalues: true,
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins, so every root is its component's minimum
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Basis indices grouped into connected components of the nonzero pattern,
/// each sorted, ordered by smallest index.
fn components(op: &CompiledSum, split: bool) -> Vec<Vec<u64>> {
    let dim = op.dim();
    if !split {
        return vec![(0..dim as u64).collect()];
    }
    let mut uf = UnionFind::new(dim);
    for col in 0..dim as u64 {
        for (row, _) in op.column(col) {
            uf.union(row as u32, col as u32);
        }
    }
    let mut slot = vec![u32::MAX; dim];
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    for b in 0..dim {
        let root = uf.find(b as u32) as usize;
        if slot[root] == u32::MAX {
            slot[root] = blocks.len() as u32;
            blocks.push(Vec::new());
        }
        blocks[slot[root] as usize].push(b as u64);
    }
    blocks
}

/// Eigen-decomposition of one block. Only extremal candidates keep vectors.
struct BlockEigen {
    indices: Vec<u64>,
    values: Vec<f64>,
    vectors: Vec<(f64, Vec<Complex64>)>,
}

fn block_matrix<T: ComplexField + Copy>(
    op: &CompiledSum,
    indices: &[u64],
    conv: impl Fn(Complex64) -> T,
) -> Result<DMatrix<T>> {
    let k = indices.len();
    let mut m = DMatrix::<T>::zeros(k, k);
    for (j, &col) in indices.iter().enumerate() {
        for (row, v) in op.column(col) {
            let i = indices.binary_search(&row).expect("block closed under the operator");
            m[(i, j)] += conv(v);
        }
    }
    Ok(m)
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<()> {
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-12 * scale {
                return Err(Error::NotHermitianMatrix);
            }
        }
    }
    Ok(())
}

/// Keeps eigenvectors within `tol` of the block's own largest `|lambda|`;
/// anything in the global extremal eigenspace passes this filter.
fn decompose_block(op: &CompiledSum, indices: Vec<u64>, tol: f64) -> Result<BlockEigen> {
    let complex = block_matrix(op, &indices, |c| c)?;
    check_hermitian(&complex)?;
    let keep = |values: &[f64]| values.iter().fold(0.0f64, |a, v| a.max(v.abs())) - tol;
    let (values, vectors): (Vec<f64>, Vec<(f64, Vec<Complex64>)>) = if op.is_real() {
        let m = complex.map(|c| c.re);
        let eig = SymmetricEigen::new(m);
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let keep_above = keep(&values);
        let vectors = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() >= keep_above)
            .map(|(i, &v)| {
                (
                    v,
                    eig.eigenvectors
                        .column(i)
                        .iter()
                        .map(|&x| Complex64::new(x, 0.0))
                        .collect(),
                )
            })
            .collect();
        (values, vectors)
    } else {
        let eig = SymmetricEigen::new(complex);
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let keep_above = keep(&values);
        let vectors = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() >= keep_above)
            .map(|(i, &v)| (v, eig.eigenvectors.column(i).iter().copied().collect()))
            .collect();
        (values, vectors)
    };
    Ok(BlockEigen {
        indices,
        values,
        vectors,
    })
}

/// Full spectrum of `sum` by dense Hermitian diagonalization, with Dicke
/// membership in the extremal eigenspace for every weight `1 <= m < n`.
pub fn dense_spectrum(sum: &PauliSum, options: &DenseOptions) -> Result<SpectralReport> {
    let n = sum.n();
    if n > options.max_qubits {
        return Err(Error::GuardExceeded {
            what: "dense spectrum qubits",
            n,
            max: options.max_qubits,
        });
    }
    let op = CompiledSum::new(sum);
    let blocks = components(&op, options.block_decompose);
    let block_count = blocks.len();

    let decomposed: Vec<BlockEigen> = blocks
        .into_par_iter()
        .map(|indices| decompose_block(&op, indices, options.eigen_tol))
        .collect::<Result<_>>()?;

    let mut eigenvalues: Vec<f64> = decomposed.iter().flat_map(|b| b.values.iter().copied()).collect();
    eigenvalues.sort_by(f64::total_cmp);
    let max_eigenvalue = *eigenvalues.last().expect("nonempty spectrum");
    let min_eigenvalue = eigenvalues[0];
    let max_abs = max_eigenvalue.abs().max(min_eigenvalue.abs());
    let threshold = max_abs - options.eigen_tol;
    let extremal_multiplicity = eigenvalues.iter().filter(|v| v.abs() >= threshold).count();
    let mut extremal_values = Vec::new();
    if min_eigenvalue.abs() >= threshold {
        extremal_values.push(min_eigenvalue);
    }
    if max_eigenvalue.abs() >= threshold
        && (extremal_values.is_empty() || max_eigenvalue - min_eigenvalue > options.eigen_tol)
    {
        extremal_values.push(max_eigenvalue);
    }

    let mut dicke_membership = Vec::new();
    for m in 1..n {
        let label = DickeLabel::new(m, n)?;
        let support: Vec<u64> = fixed_weight_indices(n, m).collect();
        let amp = 1.0 / (support.len() as f64).sqrt();
        // residual = d - sum_e e <e|d>, tracked on the Dicke support plus
        // whatever the extremal vectors touch
        let mut residual_sq = 0.0;
        let mut covered = 0usize;
        for block in &decomposed {
            let local: Vec<(usize, bool)> = block
                .indices
                .iter()
                .enumerate()
                .map(|(i, b)| (i, b.count_ones() as usize == m))
                .collect();
            let in_support = local.iter().filter(|(_, s)| *s).count();
            if in_support == 0 {
                continue;
            }
            covered += in_support;
            let d = DVector::<Complex64>::from_iterator(
                block.indices.len(),
                local
                    .iter()
                    .map(|&(_, s)| Complex64::new(if s { amp } else { 0.0 }, 0.0)),
            );
            let mut r = d.clone();
            for (v, e) in &block.vectors {
                if v.abs() < threshold {
                    continue;
                }
                let e = DVector::from_column_slice(e);
                let c = e.dotc(&d);
                r -= e * c;
            }
            residual_sq += r.norm_squared();
        }
        debug_assert_eq!(covered, support.len());
        let residual = residual_sq.sqrt();
        let rayleigh = expectation_float(sum, &crate::dicke::dicke_float(label)?)?;
        dicke_membership.push(DickeMembership {
            m,
            residual,
            rayleigh,
            in_extremal_eigenspace: residual < options.membership_tol,
        });
    }

    Ok(SpectralReport {
        n,
        operator: sum.content_hash()[..12].to_string(),
        operator_hash: sum.content_hash(),
        method: SpectrumMethod::Dense,
        solver: if op.is_real() { "symmetric" } else { "hermitian" }.to_string(),
        max_abs,
        max_eigenvalue,
        min_eigenvalue,
        extremal_values,
        extremal_multiplicity: Some(extremal_multiplicity),
        eigenvalues: options.keep_eigenvalues.then_some(eigenvalues),
        dicke_membership,
        membership_metric: MembershipMetric::Projection,
        converged: true,
        iterations: 0,
        blocks: Some(block_count),
        tolerance: options.eigen_tol,
    })
}
