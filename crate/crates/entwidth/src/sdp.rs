//! A small semidefinite solver for partial-transpose relaxations.
//!
//! The problem solved here is
//!
//! ```text
//! minimize    tr(C rho)
//! subject to  rho >= 0,  tr(rho) = 1,  PT_S(rho) >= 0  for each site set S,
//! ```
//!
//! the positive-partial-transpose relaxation of minimizing an observable over
//! states separable across the given bipartitions. Every reported optimum
//! comes with a rigorous certificate: for any W_k >= 0,
//!
//! ```text
//! tr(C rho) >= lambda_min(C - sum_k PT_k(W_k))        (PT is self-adjoint)
//! ```
//!
//! for every feasible rho, so the returned `dual_bound` is a true lower bound
//! independent of how accurately the interior-point iteration converged.
//!
//! The solver is a primal-dual path-following method. It maintains a strictly
//! feasible primal `X` together with dual multipliers `Z_k >= 0` for the
//! transposed blocks and a scalar `y` for the trace constraint, keeps the dual
//! slack `S = C - y I - sum_k PT_k(Z_k)` positive definite by construction,
//! and drives the complementarity products `X S` and `PT_k(X) Z_k` toward a
//! common multiple of the identity with adaptively centered Newton steps.
//! Because the dual iterates converge alongside the primal, the certificate
//! multipliers come out sharp even when the optimal face is degenerate, where
//! purely primal barrier methods leave the bound stranded at the square root
//! of machine precision. Newton systems are assembled densely in symmetric
//! matrix coordinates and factorized directly; at the register sizes
//! supported here that is both fast and robust. All real problem data is
//! handled in real symmetric arithmetic; complex Hermitian objectives are
//! embedded as `[[A, -B], [B, A]]`, which is exact for this problem class
//! (conjugation symmetry makes the embedded optimum equal the complex one).

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, site_mask, DenseOperator, DensityMatrix};
use crate::tol;

/// A partial-transpose relaxation instance.
#[derive(Debug, Clone)]
pub struct SdpProblem {
    n_qubits: usize,
    objective: DenseOperator,
    partitions: Vec<Vec<usize>>,
}

impl SdpProblem {
    /// Builds a problem; the objective must be Hermitian on `n_qubits` sites
    /// and every partition a non-empty set of valid sites.
    pub fn new(
        n_qubits: usize,
        objective: DenseOperator,
        partitions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if objective.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: objective.dim(),
            });
        }
        objective.assert_hermitian()?;
        for sites in &partitions {
            if sites.is_empty() {
                return Err(Error::InvalidPairing {
                    reason: "a partition must contain at least one site".into(),
                });
            }
            site_mask(n_qubits, sites)?;
        }
        Ok(SdpProblem {
            n_qubits,
            objective,
            partitions,
        })
    }

    /// Number of sites.
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The objective observable.
    pub fn objective(&self) -> &DenseOperator {
        &self.objective
    }

    /// The transposed site sets.
    pub fn partitions(&self) -> &[Vec<usize>] {
        &self.partitions
    }
}

/// Contiguous-cut partitions: cut k separates sites 1..=k from the rest, so
/// the transposed set is 1..=k. Cuts must be strictly increasing, in 1..n.
pub fn cut_partitions(n: usize, cuts: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut partitions = Vec::with_capacity(cuts.len());
    let mut previous = 0usize;
    for &cut in cuts {
        if cut == 0 || cut >= n {
            return Err(Error::invalid_parameter(
                "cuts",
                format!("a cut must lie strictly inside the chain (1..{n}), got {cut}"),
            ));
        }
        if cut <= previous {
            return Err(Error::invalid_parameter(
                "cuts",
                "cuts must be strictly increasing",
            ));
        }
        previous = cut;
        partitions.push((1..=cut).collect());
    }
    Ok(partitions)
}

/// Solver knobs; the defaults suit the small registers used here.
#[derive(Debug, Clone)]
pub struct SdpOptions {
    /// Interior-point iterations allowed before giving up.
    pub max_iterations: usize,
    /// Fraction of the distance to the cone boundary taken per step.
    pub step_fraction: f64,
    /// Absolute duality-gap target; `None` picks a dimension-scaled default.
    pub target_gap: Option<f64>,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            max_iterations: 120,
            step_fraction: 0.98,
            target_gap: None,
        }
    }
}

/// A solved relaxation: a feasible primal state and a rigorous lower bound.
#[derive(Debug, Clone)]
pub struct SdpSolution {
    /// tr(C rho) of the returned feasible state (an upper bound).
    pub optimum: f64,
    /// Certified lower bound on the true optimum.
    pub dual_bound: f64,
    /// optimum - dual_bound.
    pub duality_gap: f64,
    /// The primal optimizer (strictly feasible).
    pub rho: DensityMatrix,
    /// Total Newton steps taken.
    pub iterations: usize,
}

fn symmetrized(m: DMatrix<f64>) -> DMatrix<f64> {
    let mt = m.transpose();
    (m + mt) * 0.5
}

/// Real partial transpose over the bit mask: mirrors the complex version.
fn pt_real(mat: &DMatrix<f64>, mask: usize) -> DMatrix<f64> {
    let dim = mat.nrows();
    DMatrix::from_fn(dim, dim, |r, c| {
        let rp = (r & !mask) | (c & mask);
        let cp = (c & !mask) | (r & mask);
        mat[(rp, cp)]
    })
}

/// Largest step length `a >= 0` keeping `A + a D` positive semidefinite,
/// where `A` is given through its Cholesky factor. Computed as
/// `-1 / lambda_min(L^-1 D L^-T)`, or infinity if that eigenvalue is not
/// negative.
fn max_step(chol: &Cholesky<f64, Dyn>, direction: &DMatrix<f64>) -> f64 {
    let l = chol.l();
    let Some(t1) = l.solve_lower_triangular(direction) else {
        return 0.0;
    };
    let Some(g) = l.solve_lower_triangular(&t1.transpose()) else {
        return 0.0;
    };
    let low = nalgebra::SymmetricEigen::new(symmetrized(g))
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    if low >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / low
    }
}

// --- symmetric-matrix coordinates ----------------------------------------
//
// Symmetric matrices are flattened to their upper triangle with off-diagonal
// entries scaled by sqrt(2), which turns the Frobenius inner product into the
// plain Euclidean one. The Newton condensation `D -> (Xinv D S + S D Xinv)/2
// + sum_k PT_k((Yinv_k PT_k(D) Z_k + Z_k PT_k(D) Yinv_k)/2)` becomes an
// explicit symmetric positive definite matrix in these coordinates, built
// from the closed form of the two-sided product plus index permutations for
// the partial transposes.

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn sym_dim(dim: usize) -> usize {
    dim * (dim + 1) / 2
}

/// Coordinate of the (i, j) entry, `i <= j`, in the flattened upper triangle.
fn svec_index(i: usize, j: usize) -> usize {
    j * (j + 1) / 2 + i
}

fn svec(m: &DMatrix<f64>) -> DVector<f64> {
    let dim = m.nrows();
    let mut v = DVector::zeros(sym_dim(dim));
    for j in 0..dim {
        for i in 0..=j {
            v[svec_index(i, j)] = if i == j { m[(i, j)] } else { SQRT2 * m[(i, j)] };
        }
    }
    v
}

fn smat(v: &DVector<f64>, dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        for i in 0..=j {
            let value = if i == j {
                v[svec_index(i, j)]
            } else {
                v[svec_index(i, j)] / SQRT2
            };
            m[(i, j)] = value;
            m[(j, i)] = value;
        }
    }
    m
}

/// The symmetrized two-sided product `D -> (A D B + B D A) / 2` (A, B
/// symmetric) as a matrix on flattened coordinates. Symmetric, and positive
/// definite whenever A and B both are, since the quadratic form equals
/// `tr(D A D B) = |A^(1/2) D B^(1/2)|_F^2`.
fn sym_kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = a.nrows();
    let n = sym_dim(dim);
    let mut out = DMatrix::zeros(n, n);
    for l in 0..dim {
        for k in 0..=l {
            let col = svec_index(k, l);
            let col_weight = if k == l { 1.0 } else { SQRT2 };
            for j in 0..dim {
                for i in 0..=j {
                    let row_weight = if i == j { 1.0 } else { SQRT2 };
                    let mut value = a[(i, k)] * b[(l, j)] + b[(i, k)] * a[(l, j)];
                    if k < l {
                        value += a[(i, l)] * b[(k, j)] + b[(i, l)] * a[(k, j)];
                    }
                    out[(svec_index(i, j), col)] = 0.5 * value * row_weight / col_weight;
                }
            }
        }
    }
    out
}

/// Partial transpose as a permutation of flattened coordinates. It maps
/// diagonal entries to diagonal entries and unordered off-diagonal pairs to
/// unordered off-diagonal pairs, so the scaling weights match up and the
/// permutation is an involution.
fn pt_svec_permutation(dim: usize, mask: usize) -> Vec<usize> {
    let mut perm = vec![0usize; sym_dim(dim)];
    for j in 0..dim {
        for i in 0..=j {
            let r = (i & !mask) | (j & mask);
            let c = (j & !mask) | (i & mask);
            let (lo, hi) = if r <= c { (r, c) } else { (c, r) };
            perm[svec_index(i, j)] = svec_index(lo, hi);
        }
    }
    perm
}

/// Assembles the condensed Newton operator in flattened coordinates:
/// `symkron(Xinv, S) + sum_k P_k symkron(Yinv_k, Z_k) P_k` with `P_k` the PT
/// permutation.
fn assemble_schur(
    dim: usize,
    xinv: &DMatrix<f64>,
    s: &DMatrix<f64>,
    masks: &[usize],
    yinvs: &[DMatrix<f64>],
    zs: &[DMatrix<f64>],
) -> DMatrix<f64> {
    let mut schur = sym_kron(xinv, s);
    for ((&mask, yinv), z) in masks.iter().zip(yinvs).zip(zs) {
        let block = sym_kron(yinv, z);
        let perm = pt_svec_permutation(dim, mask);
        let n = sym_dim(dim);
        for b in 0..n {
            for a in 0..n {
                schur[(perm[a], perm[b])] += block[(a, b)];
            }
        }
    }
    schur
}

/// Factorizes the Newton system, adding a whisper of ridge if roundoff has
/// pushed the assembled Hessian off the positive cone.
fn factor_newton_system(mut hessian: DMatrix<f64>) -> Option<Cholesky<f64, Dyn>> {
    let scale = hessian
        .diagonal()
        .iter()
        .fold(0.0f64, |acc, d| acc.max(d.abs()))
        .max(f64::MIN_POSITIVE);
    let mut ridge = 0.0f64;
    loop {
        match Cholesky::new(hessian.clone()) {
            Some(chol) => return Some(chol),
            None => {
                let bump = if ridge == 0.0 { 1e-14 * scale } else { ridge * 100.0 };
                if bump > 1e-4 * scale {
                    return None;
                }
                for i in 0..hessian.nrows() {
                    hessian[(i, i)] += bump - ridge;
                }
                ridge = bump;
            }
        }
    }
}

/// Rigorous lower bound from any PSD multipliers `W_k`:
/// `lambda_min(C - sum_k PT_k(W_k))`. The bound needs nothing from the
/// iteration that produced the multipliers, only their positivity.
fn certificate_bound(c: &DMatrix<f64>, masks: &[usize], ws: &[DMatrix<f64>]) -> Result<f64> {
    let mut shifted = c.clone();
    for (&mask, w) in masks.iter().zip(ws) {
        shifted -= pt_real(w, mask);
    }
    let eig = hermitian_eig(&DenseOperator::from_real(&shifted)?)?;
    Ok(eig.values[0])
}

/// Projects a symmetric matrix onto the positive cone by clipping negative
/// eigenvalues to zero.
fn psd_clip(m: DMatrix<f64>) -> DMatrix<f64> {
    let dim = m.nrows();
    let eig = nalgebra::SymmetricEigen::new(m);
    let mut out = DMatrix::zeros(dim, dim);
    for (k, &value) in eig.eigenvalues.iter().enumerate() {
        if value > 0.0 {
            let v = eig.eigenvectors.column(k);
            out += (v * v.transpose()) * value;
        }
    }
    out
}

/// Lower bounds that need no multipliers at all: `lambda_min(C)` (drop every
/// PT constraint) and, for each single site set, `lambda_min(PT_m(C))`, valid
/// because `tr(C rho) = tr(PT_m(C) PT_m(rho))` and `PT_m(rho)` is a unit-trace
/// PSD matrix for feasible `rho`. For objectives whose optimum sits on a
/// single PT facet (or strictly inside the cone) one of these is exact.
fn spectral_floor(c: &DMatrix<f64>, masks: &[usize]) -> f64 {
    let mut best = nalgebra::SymmetricEigen::new(c.clone())
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    for &mask in masks {
        let swapped = nalgebra::SymmetricEigen::new(pt_real(c, mask));
        let low = swapped
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &v| acc.min(v));
        best = best.max(low);
    }
    best
}

/// Recovers near-exact multipliers from the active-face structure of an
/// approximate optimum. Complementary slackness forces the optimal `W_k` onto
/// the near-null space of `PT_k(X)` and forces `C - sum_k PT_k(W_k) - t I` to
/// vanish on the range of `X`, so with both subspaces estimated from the
/// current iterate the multipliers follow from a small linear least-squares
/// problem. The returned bound is evaluated rigorously from the clipped
/// multipliers, so a poor subspace estimate only weakens it, never
/// invalidates it.
fn active_face_bound(c: &DMatrix<f64>, masks: &[usize], x: &DMatrix<f64>) -> Option<f64> {
    const MAX_NULL_DIM: usize = 6;
    let dim = x.nrows();

    let x_eig = nalgebra::SymmetricEigen::new(x.clone());
    let x_top = x_eig.eigenvalues.amax();
    let range: Vec<usize> = (0..dim)
        .filter(|&i| x_eig.eigenvalues[i] > 1e-5 * x_top)
        .collect();
    if range.is_empty() {
        return None;
    }

    // Near-null bases of the transposed blocks, smallest eigenvalues first.
    let mut bases = Vec::with_capacity(masks.len());
    for &mask in masks {
        let y_eig = nalgebra::SymmetricEigen::new(pt_real(x, mask));
        let y_top = y_eig.eigenvalues.amax();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| {
            y_eig.eigenvalues[a]
                .partial_cmp(&y_eig.eigenvalues[b])
                .expect("eigenvalues are finite")
        });
        let picked: Vec<usize> = order
            .into_iter()
            .filter(|&i| y_eig.eigenvalues[i] < 1e-4 * y_top)
            .take(MAX_NULL_DIM)
            .collect();
        let mut basis = DMatrix::zeros(dim, picked.len());
        for (col, &i) in picked.iter().enumerate() {
            basis.column_mut(col).copy_from(&y_eig.eigenvectors.column(i));
        }
        bases.push(basis);
    }

    // Unknowns: t plus one symmetric block per partition; equations demand
    // (C - sum_k PT_k(U_k M_k U_k^T) - t I) v = 0 on every range vector v.
    let params = 1 + bases
        .iter()
        .map(|u| sym_dim(u.ncols()))
        .sum::<usize>();
    let rows = range.len() * dim;
    let mut a = DMatrix::<f64>::zeros(rows, params);
    let mut b = DVector::<f64>::zeros(rows);
    for (ri, &i) in range.iter().enumerate() {
        let v = x_eig.eigenvectors.column(i);
        b.rows_mut(ri * dim, dim).copy_from(&(c * v));
        a.column_mut(0)
            .rows_mut(ri * dim, dim)
            .copy_from(&v.clone_owned());
    }
    let mut col = 1usize;
    for (&mask, basis) in masks.iter().zip(&bases) {
        for q in 0..basis.ncols() {
            for p in 0..=q {
                let up = basis.column(p);
                let uq = basis.column(q);
                let mut e = up * uq.transpose();
                if p != q {
                    e = &e + e.transpose();
                }
                let g = pt_real(&symmetrized(e), mask);
                for (ri, &i) in range.iter().enumerate() {
                    let v = x_eig.eigenvectors.column(i);
                    a.column_mut(col).rows_mut(ri * dim, dim).copy_from(&(&g * v));
                }
                col += 1;
            }
        }
    }

    let theta = a.svd(true, true).solve(&b, 1e-12).ok()?;

    // Reassemble, clip to the cone, and evaluate the certificate honestly.
    let mut shifted = c.clone();
    let mut col = 1usize;
    for (&mask, basis) in masks.iter().zip(&bases) {
        let r = basis.ncols();
        let mut m = DMatrix::<f64>::zeros(r, r);
        for q in 0..r {
            for p in 0..=q {
                m[(p, q)] = theta[col];
                m[(q, p)] = theta[col];
                col += 1;
            }
        }
        let w = psd_clip(basis * m * basis.transpose());
        shifted -= pt_real(&w, mask);
    }
    let low = nalgebra::SymmetricEigen::new(shifted)
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    low.is_finite().then_some(low)
}

/// Internal real-symmetric solve shared by both input paths.
struct RealSolve {
    x: DMatrix<f64>,
    primal: f64,
    dual: f64,
    iterations: usize,
}

fn solve_real(
    c: &DMatrix<f64>,
    masks: &[usize],
    options: &SdpOptions,
    invariant_gap: &dyn Fn(f64) -> f64,
) -> Result<RealSolve> {
    let dim = c.nrows();
    let scale = {
        let max_abs = c.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if max_abs > 0.0 {
            max_abs
        } else {
            1.0
        }
    };
    let c = c / scale; // normalized objective; rescale results on exit
    let blocks = 1 + masks.len();
    let identity = DMatrix::<f64>::identity(dim, dim);
    let e = svec(&identity);

    // Strictly feasible start: maximally mixed primal, identity multipliers,
    // and the trace multiplier pushed low enough that the dual slack begins
    // positive definite with smallest eigenvalue one.
    let mut x = &identity / dim as f64;
    let mut zs: Vec<DMatrix<f64>> = masks.iter().map(|_| identity.clone()).collect();
    let c_low = nalgebra::SymmetricEigen::new(c.clone())
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    let mut y = c_low - 1.0 - masks.len() as f64;

    // The dual slack is kept exactly equal to its definition, so dual
    // feasibility never drifts; only positivity needs step-length control.
    let slack = |y: f64, zs: &[DMatrix<f64>]| {
        let mut s = &c - &identity * y;
        for (&mask, z) in masks.iter().zip(zs) {
            s -= pt_real(z, mask);
        }
        symmetrized(s)
    };
    let mut s = slack(y, &zs);

    let mut iterations = 0usize;
    let mut best_dual = spectral_floor(&c, masks);
    let mut primal = (&c * &x).trace();

    let stalled = |primal: f64, best_dual: f64, iterations: usize| Error::SdpNoConvergence {
        primal: scale * primal,
        dual: scale * best_dual,
        iterations,
    };

    for _ in 0..options.max_iterations {
        // Factor every block. The fraction-to-boundary rule keeps all of them
        // positive definite, so a failure here is a terminal breakdown.
        let x_chol = Cholesky::new(x.clone())
            .ok_or_else(|| stalled(primal, best_dual, iterations))?;
        let ys: Vec<DMatrix<f64>> = masks.iter().map(|&mask| pt_real(&x, mask)).collect();
        let mut y_chols = Vec::with_capacity(masks.len());
        for block in &ys {
            let chol = Cholesky::new(block.clone())
                .ok_or_else(|| stalled(primal, best_dual, iterations))?;
            y_chols.push(chol);
        }
        let s_chol = Cholesky::new(s.clone())
            .ok_or_else(|| stalled(primal, best_dual, iterations))?;
        let mut z_chols = Vec::with_capacity(masks.len());
        for z in &zs {
            let chol = Cholesky::new(z.clone())
                .ok_or_else(|| stalled(primal, best_dual, iterations))?;
            z_chols.push(chol);
        }

        // Rigorous bookkeeping at the current iterate: the primal value is an
        // upper bound because X stays feasible, and the clipped dual blocks
        // certify a lower bound wherever the iteration happens to stand.
        primal = (&c * &x).trace();
        let ws: Vec<DMatrix<f64>> = zs.iter().map(|z| psd_clip(z.clone())).collect();
        best_dual = best_dual.max(certificate_bound(&c, masks, &ws)?);
        if iterations >= 2 && !masks.is_empty() {
            if let Some(bound) = active_face_bound(&c, masks, &x) {
                best_dual = best_dual.max(bound);
            }
        }
        let gap = scale * (primal - best_dual);
        let target = options
            .target_gap
            .unwrap_or_else(|| (1e-6 * dim as f64).min(invariant_gap(scale * primal) / 5.0));
        if gap <= target {
            return Ok(RealSolve {
                x,
                primal: scale * primal,
                dual: scale * best_dual,
                iterations,
            });
        }

        // Average complementarity across all blocks sets the path parameter.
        let compl = x.dot(&s) + ys.iter().zip(&zs).map(|(yb, z)| yb.dot(z)).sum::<f64>();
        let mu = compl / (blocks * dim) as f64;

        // Condensed Newton operator, shared by both solves this iteration.
        let xinv = symmetrized(x_chol.inverse());
        let yinvs: Vec<DMatrix<f64>> = y_chols
            .iter()
            .map(|chol| symmetrized(chol.inverse()))
            .collect();
        let schur = assemble_schur(dim, &xinv, &s, masks, &yinvs, &zs);
        let schur_chol = factor_newton_system(schur)
            .ok_or_else(|| stalled(primal, best_dual, iterations))?;
        let d_trace = schur_chol.solve(&e);
        let trace_gain = e.dot(&d_trace);
        let r_p = 1.0 - x.trace();

        // Newton direction toward the point with complementarity sigma*mu:
        // eliminate the multiplier updates block by block, solve the
        // condensed system for the primal update and the trace multiplier,
        // then back-substitute.
        let direction = |sigma_mu: f64| {
            let mut rhs = &xinv * sigma_mu - &s;
            for ((&mask, yinv), z) in masks.iter().zip(&yinvs).zip(&zs) {
                rhs += pt_real(&(yinv * sigma_mu - z), mask);
            }
            let rhs_v = svec(&symmetrized(rhs));
            let d1 = schur_chol.solve(&rhs_v);
            let dy = (r_p - e.dot(&d1)) / trace_gain;
            let dx = smat(&(d1 + &d_trace * dy), dim);
            let dzs: Vec<DMatrix<f64>> = masks
                .iter()
                .zip(&yinvs)
                .zip(&zs)
                .map(|((&mask, yinv), z)| {
                    yinv * sigma_mu - z - symmetrized(yinv * pt_real(&dx, mask) * z)
                })
                .collect();
            let mut ds = &identity * (-dy);
            for (&mask, dz) in masks.iter().zip(&dzs) {
                ds -= pt_real(dz, mask);
            }
            (dx, dy, dzs, symmetrized(ds))
        };

        // Fraction-to-boundary step lengths, primal and dual separately.
        let step_pair = |dx: &DMatrix<f64>, dzs: &[DMatrix<f64>], ds: &DMatrix<f64>| {
            let mut alpha_p = max_step(&x_chol, dx);
            for (&mask, chol) in masks.iter().zip(&y_chols) {
                alpha_p = alpha_p.min(max_step(chol, &pt_real(dx, mask)));
            }
            let mut alpha_d = max_step(&s_chol, ds);
            for (chol, dz) in z_chols.iter().zip(dzs) {
                alpha_d = alpha_d.min(max_step(chol, dz));
            }
            (
                (options.step_fraction * alpha_p).min(1.0),
                (options.step_fraction * alpha_d).min(1.0),
            )
        };

        // Affine probe fixes the adaptive centering weight: aim nearly
        // straight at the optimum when the pure Newton step is absorbed
        // well, re-center hard when it is not.
        let (dx_a, _, dzs_a, ds_a) = direction(0.0);
        let (ap_a, ad_a) = step_pair(&dx_a, &dzs_a, &ds_a);
        let mut compl_affine = (&x + &dx_a * ap_a).dot(&(&s + &ds_a * ad_a));
        for ((&mask, yb), (z, dz)) in masks.iter().zip(&ys).zip(zs.iter().zip(&dzs_a)) {
            compl_affine += (yb + pt_real(&dx_a, mask) * ap_a).dot(&(z + dz * ad_a));
        }
        let sigma = (compl_affine.max(0.0) / compl).powi(3).clamp(1e-8, 0.999);

        // Centered step.
        let (dx, dy, dzs, ds) = direction(sigma * mu);
        let (alpha_p, alpha_d) = step_pair(&dx, &dzs, &ds);
        x = symmetrized(&x + &dx * alpha_p);
        for (z, dz) in zs.iter_mut().zip(&dzs) {
            *z += dz * alpha_d;
        }
        y += dy * alpha_d;
        s = slack(y, &zs);
        iterations += 1;
    }
    Err(stalled(primal, best_dual, iterations))
}

/// Solves the relaxation, returning a strictly feasible state together with
/// a certified lower bound on the optimum.
///
/// Fails with [`Error::SdpNoConvergence`] if the duality gap cannot be
/// closed to `1e-5 (1 + |optimum|)`.
pub fn solve_sdp(problem: &SdpProblem, options: &SdpOptions) -> Result<SdpSolution> {
    let dim = 1usize << problem.n_qubits;
    let masks: Vec<usize> = problem
        .partitions
        .iter()
        .map(|sites| site_mask(problem.n_qubits, sites))
        .collect::<Result<_>>()?;

    let matrix = problem.objective.matrix();
    let scale_ref = 1.0 + problem.objective.max_abs();
    let is_real = problem.objective.max_imag() <= tol::TIGHT_TOL * scale_ref;
    let invariant_gap = |optimum: f64| 1e-5 * (1.0 + optimum.abs());

    let (solve, rho) = if is_real {
        let c = DMatrix::from_fn(dim, dim, |r, q| matrix[(r, q)].re);
        let solve = solve_real(&symmetrized(c), &masks, options, &invariant_gap)?;
        let mat = DMatrix::from_fn(dim, dim, |r, q| Complex64::new(solve.x[(r, q)], 0.0));
        let rho = DensityMatrix::new(DenseOperator::new(mat)?)?;
        (solve, rho)
    } else {
        // Embed A + iB as [[A, -B], [B, A]]; the block index rides above the
        // site bits, so the partial-transpose masks carry over unchanged.
        let mut embedded = DMatrix::<f64>::zeros(2 * dim, 2 * dim);
        for r in 0..dim {
            for q in 0..dim {
                let entry = matrix[(r, q)];
                embedded[(r, q)] = entry.re;
                embedded[(dim + r, dim + q)] = entry.re;
                embedded[(r, dim + q)] = -entry.im;
                embedded[(dim + r, q)] = entry.im;
            }
        }
        let solve = solve_real(&symmetrized(embedded), &masks, options, &invariant_gap)?;
        // Average the solution with its conjugation twirl to land back on an
        // embedded Hermitian matrix: rho = (P + R) + i (Q^T - Q).
        let p = solve.x.view((0, 0), (dim, dim));
        let q = solve.x.view((0, dim), (dim, dim));
        let r = solve.x.view((dim, dim), (dim, dim));
        let mat = DMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(p[(i, j)] + r[(i, j)], q[(j, i)] - q[(i, j)])
        });
        let rho = DensityMatrix::new(DenseOperator::new(mat)?)?;
        (solve, rho)
    };

    let duality_gap = solve.primal - solve.dual;
    if duality_gap > invariant_gap(solve.primal) {
        return Err(Error::SdpNoConvergence {
            primal: solve.primal,
            dual: solve.dual,
            iterations: solve.iterations,
        });
    }
    Ok(SdpSolution {
        optimum: solve.primal,
        dual_bound: solve.dual,
        duality_gap,
        rho,
        iterations: solve.iterations,
    })
}
