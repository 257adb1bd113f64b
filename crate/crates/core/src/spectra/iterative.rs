use std::ops::{AddAssign, Mul, Sub, SubAssign};

use nalgebra::{DMatrix, SymmetricEigen};
use num::Zero;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{DickeMembership, MembershipMetric, SpectralReport, SpectrumMethod};
use crate::dicke::{dicke_float, DickeLabel};
use crate::error::{Error, Result};
use crate::pauli::{CompiledSum, PauliSum, MAX_DENSE_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    /// Restarted Lanczos converging both ends of the spectrum.
    Lanczos,
    /// Power iteration on `S`, with sign split and deflation for `+-lambda` pairs.
    Power,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Lanczos => "lanczos",
            Solver::Power => "power",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterativeOptions {
    /// Relative accuracy of the extremal eigenvalue estimate.
    pub tol: f64,
    /// Budget of matrix-vector products.
    pub max_iter: usize,
    pub seed: u64,
    pub solver: Solver,
    /// Krylov basis size per Lanczos cycle.
    pub krylov_dim: usize,
    /// Relative gap below which `+lambda` and `-lambda` both count as extremal.
    pub degeneracy_tol: f64,
    /// Compute Dicke eigen-residuals against the extremal values.
    pub membership: bool,
    pub membership_tol: f64,
}

impl Default for IterativeOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 20_000,
            seed: 0,
            solver: Solver::Lanczos,
            krylov_dim: 40,
            degeneracy_tol: 1e-8,
            membership: true,
            membership_tol: 1e-8,
        }
    }
}

/// Scalar field for the iterative solvers: `f64` for real-symmetric
/// operators, `Complex64` otherwise.
trait Amp: Copy + Send + Sync + Zero + AddAssign + SubAssign + Sub<Output = Self> + Mul<Output = Self> + 'static {
    fn conj(self) -> Self;
    fn from_re(x: f64) -> Self;
    fn re(self) -> f64;
    fn random(rng: &mut ChaCha8Rng) -> Self;
    fn apply(op: &CompiledSum, v: &[Self], out: &mut [Self]);
}

impl Amp for f64 {
    fn conj(self) -> Self {
        self
    }
    fn from_re(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn random(rng: &mut ChaCha8Rng) -> Self {
        rng.random_range(-1.0..1.0)
    }
    fn apply(op: &CompiledSum, v: &[Self], out: &mut [Self]) {
        op.apply_real(v, out)
    }
}

impl Amp for Complex64 {
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }
    fn apply(op: &CompiledSum, v: &[Self], out: &mut [Self]) {
        op.apply_complex(v, out)
    }
}

const REDUCE_CHUNK: usize = 1 << 12;

/// `<a|b>` summed over fixed-size chunks in a fixed order, so the result is
/// identical for any thread count.
fn dot<A: Amp>(a: &[A], b: &[A]) -> A {
    let partial: Vec<A> = a
        .par_chunks(REDUCE_CHUNK)
        .zip(b.par_chunks(REDUCE_CHUNK))
        .map(|(x, y)| {
            let mut acc = A::zero();
            for (p, q) in x.iter().zip(y) {
                acc += p.conj() * *q;
            }
            acc
        })
        .collect();
    let mut total = A::zero();
    for p in partial {
        total += p;
    }
    total
}

fn norm<A: Amp>(a: &[A]) -> f64 {
    dot(a, a).re().max(0.0).sqrt()
}

/// `y -= c x`
fn axpy_sub<A: Amp>(y: &mut [A], c: A, x: &[A]) {
    y.par_chunks_mut(REDUCE_CHUNK)
        .zip(x.par_chunks(REDUCE_CHUNK))
        .for_each(|(ys, xs)| {
            for (p, q) in ys.iter_mut().zip(xs) {
                *p -= c * *q;
            }
        });
}

fn scale<A: Amp>(y: &mut [A], c: f64) {
    let c = A::from_re(c);
    y.par_iter_mut().for_each(|p| *p = *p * c);
}

fn random_unit<A: Amp>(dim: usize, rng: &mut ChaCha8Rng) -> Vec<A> {
    let mut v: Vec<A> = (0..dim).map(|_| A::random(rng)).collect();
    let nv = norm(&v);
    scale(&mut v, 1.0 / nv);
    v
}

struct Extremes {
    max: f64,
    min: f64,
    converged: bool,
    matvecs: usize,
}

fn lanczos<A: Amp>(op: &CompiledSum, opts: &IterativeOptions, rng: &mut ChaCha8Rng) -> Extremes {
    let dim = op.dim();
    let k_max = opts.krylov_dim.clamp(2, dim.max(2));
    let mut start: Vec<A> = random_unit(dim, rng);
    let mut matvecs = 0;
    loop {
        let mut basis: Vec<Vec<A>> = vec![start];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut tail = 0.0;
        let mut w = vec![A::zero(); dim];
        for j in 0..k_max {
            A::apply(op, &basis[j], &mut w);
            matvecs += 1;
            let a = dot(&basis[j], &w).re();
            alpha.push(a);
            // two passes of Gram-Schmidt against the whole basis
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    axpy_sub(&mut w, c, q);
                }
            }
            let b = norm(&w);
            let invariant = b <= 1e-13 * alpha.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            if invariant || j + 1 == k_max || basis.len() == dim {
                tail = if invariant || basis.len() == dim { 0.0 } else { b };
                break;
            }
            beta.push(b);
            let mut next = std::mem::replace(&mut w, vec![A::zero(); dim]);
            scale(&mut next, 1.0 / b);
            basis.push(next);
        }

        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (mut i_max, mut i_min) = (0, 0);
        for i in 0..k {
            if eig.eigenvalues[i] > eig.eigenvalues[i_max] {
                i_max = i;
            }
            if eig.eigenvalues[i] < eig.eigenvalues[i_min] {
                i_min = i;
            }
        }
        let theta_max = eig.eigenvalues[i_max];
        let theta_min = eig.eigenvalues[i_min];
        let scale_ref = theta_max.abs().max(theta_min.abs()).max(1e-300);

        // eigenvalue error bound min(r, r^2 / gap) for each end
        let bound = |i: usize| {
            let r = tail * eig.eigenvectors[(k - 1, i)].abs();
            let theta = eig.eigenvalues[i];
            let gap = (0..k)
                .filter(|&j| j != i)
                .map(|j| (eig.eigenvalues[j] - theta).abs())
                .filter(|g| *g > 0.0)
                .fold(f64::INFINITY, f64::min);
            r.min(r * r / gap)
        };
        let converged = bound(i_max) <= opts.tol * scale_ref && bound(i_min) <= opts.tol * scale_ref;
        if converged || tail == 0.0 {
            return Extremes {
                max: theta_max,
                min: theta_min,
                converged: true,
                matvecs,
            };
        }
        if matvecs >= opts.max_iter {
            return Extremes {
                max: theta_max,
                min: theta_min,
                converged: false,
                matvecs,
            };
        }
        // restart on the sum of both extremal Ritz vectors
        let mut next = vec![A::zero(); dim];
        for (j, q) in basis.iter().enumerate() {
            let c = A::from_re(eig.eigenvectors[(j, i_max)] + eig.eigenvectors[(j, i_min)]);
            axpy_sub(&mut next, A::zero() - c, q);
        }
        let nn = norm(&next);
        if nn == 0.0 {
            next = random_unit(dim, rng);
        } else {
            scale(&mut next, 1.0 / nn);
        }
        start = next;
    }
}

struct PowerRun<A> {
    mu: f64,
    vector: Vec<A>,
    converged: bool,
    matvecs: usize,
}

fn power_run<A: Amp>(
    op: &CompiledSum,
    opts: &IterativeOptions,
    rng: &mut ChaCha8Rng,
    deflate: Option<&[A]>,
    budget: usize,
) -> PowerRun<A> {
    let dim = op.dim();
    let project = |v: &mut Vec<A>| {
        if let Some(d) = deflate {
            let c = dot(d, v);
            axpy_sub(v, c, d);
        }
    };
    let mut v: Vec<A> = random_unit(dim, rng);
    project(&mut v);
    let nv = norm(&v);
    scale(&mut v, 1.0 / nv);
    let mut w = vec![A::zero(); dim];
    let mut mu_prev = f64::NAN;
    let mut matvecs = 0;
    while matvecs < budget {
        A::apply(op, &v, &mut w);
        matvecs += 1;
        project(&mut w);
        let mu = norm(&w);
        if mu == 0.0 {
            return PowerRun {
                mu: 0.0,
                vector: v,
                converged: true,
                matvecs,
            };
        }
        std::mem::swap(&mut v, &mut w);
        scale(&mut v, 1.0 / mu);
        if (mu - mu_prev).abs() <= opts.tol * mu {
            return PowerRun {
                mu,
                vector: v,
                converged: true,
                matvecs,
            };
        }
        mu_prev = mu;
    }
    PowerRun {
        mu: mu_prev,
        vector: v,
        converged: false,
        matvecs,
    }
}

/// Splits `v` into its `+mu` and `-mu` eigenspace parts via `(v +- S v / mu) / 2`;
/// returns the dominant sign and its normalized part.
fn sign_split<A: Amp>(op: &CompiledSum, v: &[A], mu: f64) -> (f64, Vec<A>) {
    let mut sv = vec![A::zero(); v.len()];
    A::apply(op, v, &mut sv);
    let mut plus = v.to_vec();
    let mut minus = v.to_vec();
    let c = A::from_re(1.0 / mu);
    axpy_sub(&mut plus, A::zero() - c, &sv);
    axpy_sub(&mut minus, c, &sv);
    let (np, nm) = (norm(&plus), norm(&minus));
    let (sign, mut part, np) = if np >= nm { (1.0, plus, np) } else { (-1.0, minus, nm) };
    scale(&mut part, 1.0 / np);
    (sign, part)
}

fn power<A: Amp>(op: &CompiledSum, opts: &IterativeOptions, rng: &mut ChaCha8Rng) -> Extremes {
    let first = power_run::<A>(op, opts, rng, None, opts.max_iter);
    if first.mu == 0.0 {
        return Extremes {
            max: 0.0,
            min: 0.0,
            converged: first.converged,
            matvecs: first.matvecs,
        };
    }
    let (sign, part) = sign_split(op, &first.vector, first.mu);
    let budget = opts.max_iter.saturating_sub(first.matvecs).max(1);
    let second = power_run::<A>(op, opts, rng, Some(&part), budget);
    let mut matvecs = first.matvecs + second.matvecs + 1;
    let lambda = sign * first.mu;
    let mut other = lambda;
    if second.mu > 0.0 && (first.mu - second.mu).abs() <= opts.degeneracy_tol.max(opts.tol) * first.mu * 10.0 {
        let (sign2, _) = sign_split(op, &second.vector, second.mu);
        matvecs += 1;
        other = sign2 * second.mu;
    }
    Extremes {
        max: lambda.max(other),
        min: lambda.min(other),
        converged: first.converged,
        matvecs,
    }
}

fn membership<A: Amp>(op: &CompiledSum, n: usize, extremal: &[f64], tol: f64) -> Result<Vec<DickeMembership>> {
    let mut out = Vec::new();
    for m in 1..n {
        let d: Vec<A> = dicke_float(DickeLabel::new(m, n)?)?
            .amplitudes()
            .iter()
            .map(|c| A::from_re(c.re))
            .collect();
        let mut sd = vec![A::zero(); d.len()];
        A::apply(op, &d, &mut sd);
        let rayleigh = dot(&d, &sd).re();
        let residual = extremal
            .iter()
            .map(|&lambda| {
                let mut r = sd.clone();
                axpy_sub(&mut r, A::from_re(lambda), &d);
                norm(&r) / lambda.abs().max(1.0)
            })
            .fold(f64::INFINITY, f64::min);
        out.push(DickeMembership {
            m,
            residual,
            rayleigh,
            in_extremal_eigenspace: residual < tol,
        });
    }
    Ok(out)
}

/// Extremal eigenvalues of `sum` without forming its matrix.
pub fn extremal_eigen_iterative(sum: &PauliSum, opts: &IterativeOptions) -> Result<SpectralReport> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let n = sum.n();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::GuardExceeded {
            what: "iterative solver qubits",
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let op = CompiledSum::new(sum);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ext = match (opts.solver, op.is_real()) {
        (Solver::Lanczos, true) => lanczos::<f64>(&op, opts, &mut rng),
        (Solver::Lanczos, false) => lanczos::<Complex64>(&op, opts, &mut rng),
        (Solver::Power, true) => power::<f64>(&op, opts, &mut rng),
        (Solver::Power, false) => power::<Complex64>(&op, opts, &mut rng),
    };
    let max_abs = ext.max.abs().max(ext.min.abs());
    let cutoff = max_abs * (1.0 - opts.degeneracy_tol);
    let mut extremal_values = Vec::new();
    if ext.min.abs() >= cutoff {
        extremal_values.push(ext.min);
    }
    if ext.max.abs() >= cutoff && (extremal_values.is_empty() || ext.max - ext.min > opts.degeneracy_tol * max_abs) {
        extremal_values.push(ext.max);
    }
    let dicke_membership = if opts.membership && (2..=24).contains(&n) && max_abs > 0.0 {
        if op.is_real() {
            membership::<f64>(&op, n, &extremal_values, opts.membership_tol)?
        } else {
            membership::<Complex64>(&op, n, &extremal_values, opts.membership_tol)?
        }
    } else {
        Vec::new()
    };
    let hash = sum.content_hash();
    Ok(SpectralReport {
        n,
        operator: hash[..12].to_string(),
        operator_hash: hash,
        method: SpectrumMethod::Iterative,
        solver: opts.solver.name().to_string(),
        max_abs,
        max_eigenvalue: ext.max,
        min_eigenvalue: ext.min,
        extremal_values,
        extremal_multiplicity: None,
        eigenvalues: None,
        dicke_membership,
        membership_metric: MembershipMetric::EigenResidual,
        converged: ext.converged,
        iterations: ext.matvecs,
        blocks: None,
        tolerance: opts.tol,
    })
}
