//! Brute-force oracle and residual suite.
//!
//! The truncated Dirac Hamiltonian is diagonalized densely and every statement about the
//! exact FW transformation is turned into a max-norm residual over the interior Landau
//! sectors. Each check yields one [`ResidualReport`].

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::subspace::{avoid_rows, clusters, eigen_columns};
use crate::algebra::{commutator, hermitian_eig, ComplexMatrix, EigenDecomposition, FwTransform, SplitHamiltonian};
use crate::error::Result;
use crate::landau::states::{max_abs_diff, norm, norm_sq};
use crate::landau::{
    analytic_spectrum, build_dirac_hamiltonian_with, degenerate_partner, fw_hamiltonian_closed_form,
    orbital_numbers, phase_aligned_distance, renormalized_fw, uniform_grid, BispinorState, EigenRecord,
    HalfInteger, ModelParams, RadialFunction, Spin, SpinCoupling, CLUSTER_TOL, EDGE_WEIGHT_TOL,
};

/// Outcome of one check. `passed` is exactly `max_residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub check_name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: BTreeMap<String, String>,
}

impl ResidualReport {
    pub fn new(check_name: &str, max_residual: f64, tolerance: f64, context: BTreeMap<String, String>) -> Self {
        Self {
            check_name: check_name.to_owned(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            context,
        }
    }
}

/// Per-check tolerances. [`Tolerances::scaled`] multiplies every entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub exactness: f64,
    pub unitarity: f64,
    pub conjugation: f64,
    pub closed_form: f64,
    pub fw_commutation: f64,
    pub invariance: f64,
    pub spectrum_rel: f64,
    pub preservation_rel: f64,
    pub simultaneous: f64,
    pub connection: f64,
    pub analytic: f64,
    pub degeneracy: f64,
    pub splitting: f64,
    pub radial_norm: f64,
    pub radial_eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exactness: 1e-12,
            unitarity: 1e-10,
            conjugation: 1e-8,
            closed_form: 1e-10,
            fw_commutation: 1e-10,
            invariance: 1e-8,
            spectrum_rel: 1e-10,
            preservation_rel: 1e-8,
            simultaneous: 1e-8,
            connection: 1e-8,
            analytic: 1e-14,
            degeneracy: 1e-10,
            splitting: 1e-9,
            radial_norm: 1e-8,
            radial_eigenvalue: 1e-4,
        }
    }
}

impl Tolerances {
    pub fn scaled(self, k: f64) -> Self {
        Self {
            exactness: self.exactness * k,
            unitarity: self.unitarity * k,
            conjugation: self.conjugation * k,
            closed_form: self.closed_form * k,
            fw_commutation: self.fw_commutation * k,
            invariance: self.invariance * k,
            spectrum_rel: self.spectrum_rel * k,
            preservation_rel: self.preservation_rel * k,
            simultaneous: self.simultaneous * k,
            connection: self.connection * k,
            analytic: self.analytic * k,
            degeneracy: self.degeneracy * k,
            splitting: self.splitting * k,
            radial_norm: self.radial_norm * k,
            radial_eigenvalue: self.radial_eigenvalue * k,
        }
    }
}

/// Random Hermitian perturbation added to the Dirac Hamiltonian before diagonalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perturbation {
    /// Max-norm of the perturbation.
    pub amplitude: f64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub coupling: SpinCoupling,
    pub perturbation: Option<Perturbation>,
    pub tolerances: Tolerances,
    /// Radial grid for the eigenfunction check, in magnetic lengths and points.
    pub radial_extent: f64,
    pub radial_points: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            coupling: SpinCoupling::Polarization,
            perturbation: None,
            tolerances: Tolerances::default(),
            radial_extent: 12.0,
            radial_points: 4000,
        }
    }
}

/// Deterministic Hermitian matrix with entries drawn uniformly from the unit square,
/// rescaled so that its max-norm equals `amplitude`.
pub fn random_hermitian(dim: usize, amplitude: f64, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        entries[i * dim + i] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..dim {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            entries[i * dim + j] = z;
            entries[j * dim + i] = z.conj();
        }
    }
    let m = ComplexMatrix::from_fn(dim, |i, j| entries[i * dim + j]);
    let scale = m.max_norm();
    m.scale_real(amplitude / scale)
}

/// Full eigensystem of `βm + 𝓔 + 𝓞` on the truncated basis.
pub fn oracle_diagonalize(params: &ModelParams) -> Result<EigenDecomposition> {
    params.validate()?;
    let split = build_dirac_hamiltonian_with(params, SpinCoupling::Polarization)?;
    hermitian_eig(&split.full())
}

/// Pairing of target levels with numeric eigenvalues.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LevelMatching {
    /// `(target index, numeric index, relative error)`.
    pub pairs: Vec<(usize, usize, f64)>,
    /// `(target index, relative distance to the nearest free numeric value)`.
    pub unmatched_targets: Vec<(usize, f64)>,
    pub unmatched_numeric: Vec<usize>,
    /// Targets with several distinguishable candidates inside the tolerance.
    pub ambiguous_targets: Vec<usize>,
}

/// Greedy, one-to-one nearest-value matching in target order.
///
/// A target is ambiguous when two free candidates lie within `rel_tol` of it but differ
/// from each other by more than `rel_tol / 10`; the nearest is still taken and the
/// target is flagged.
pub fn match_levels(numeric: &[f64], targets: &[f64], rel_tol: f64) -> LevelMatching {
    let mut used = vec![false; numeric.len()];
    let mut out = LevelMatching::default();
    for (t, &target) in targets.iter().enumerate() {
        let scale = target.abs().max(f64::MIN_POSITIVE);
        let mut free: Vec<(usize, f64)> = numeric
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, &v)| (i, (v - target).abs() / scale))
            .collect();
        free.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        match free.first() {
            Some(&(i, rel)) if rel <= rel_tol => {
                let distinct_rival = free
                    .iter()
                    .skip(1)
                    .take_while(|(_, r)| *r <= rel_tol)
                    .any(|&(j, _)| (numeric[j] - numeric[i]).abs() / scale > rel_tol / 10.0);
                if distinct_rival {
                    out.ambiguous_targets.push(t);
                }
                used[i] = true;
                out.pairs.push((t, i, rel));
            }
            Some(&(_, rel)) => out.unmatched_targets.push((t, rel)),
            None => out.unmatched_targets.push((t, f64::INFINITY)),
        }
    }
    out.unmatched_numeric = (0..numeric.len()).filter(|&i| !used[i]).collect();
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchedLevel {
    pub numeric: f64,
    pub record: EigenRecord,
    pub rel_error: f64,
}

/// Numeric levels paired with analytic records.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectrumComparison {
    pub matched: Vec<MatchedLevel>,
    pub unmatched_numeric: Vec<f64>,
    /// Unmatched records with the relative distance to the nearest free numeric value.
    pub unmatched_records: Vec<(EigenRecord, f64)>,
    pub ambiguous: Vec<EigenRecord>,
}

impl SpectrumComparison {
    pub fn max_rel_error(&self) -> f64 {
        self.matched
            .iter()
            .map(|m| m.rel_error)
            .chain(self.unmatched_records.iter().map(|(_, r)| *r))
            .fold(0.0, f64::max)
    }

    pub fn all_records_matched(&self) -> bool {
        self.unmatched_records.is_empty() && self.ambiguous.is_empty()
    }

    pub fn numeric_for(&self, n: usize, lambda: Spin) -> Option<f64> {
        self.matched.iter().find(|m| m.record.n == n && m.record.lambda == lambda).map(|m| m.numeric)
    }
}

pub fn compare_spectra(numeric: &[f64], records: &[EigenRecord], rel_tol: f64) -> SpectrumComparison {
    let targets: Vec<f64> = records.iter().map(|r| r.e_total).collect();
    let m = match_levels(numeric, &targets, rel_tol);
    SpectrumComparison {
        matched: m
            .pairs
            .iter()
            .map(|&(t, i, rel)| MatchedLevel { numeric: numeric[i], record: records[t], rel_error: rel })
            .collect(),
        unmatched_numeric: m.unmatched_numeric.iter().map(|&i| numeric[i]).collect(),
        unmatched_records: m.unmatched_targets.iter().map(|&(t, rel)| (records[t], rel)).collect(),
        ambiguous: m.ambiguous_targets.iter().map(|&t| records[t]).collect(),
    }
}

/// Eigenvector of the oracle supported entirely on interior Landau sectors.
#[derive(Clone, Debug)]
pub struct InteriorState {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

/// Orthonormal eigenvectors with no weight on sectors above `max_interior_level`, one
/// basis per numerically degenerate cluster.
pub fn interior_eigenstates(params: &ModelParams, eig: &EigenDecomposition) -> Vec<InteriorState> {
    let edge = params.interior_dim()..params.dim();
    let mut out = Vec::new();
    for range in clusters(&eig.values, CLUSTER_TOL) {
        let value = eig.values[range.clone()].iter().sum::<f64>() / range.len() as f64;
        let basis = avoid_rows(&eigen_columns(eig, range), edge.clone(), EDGE_WEIGHT_TOL);
        for col in basis.column_iter() {
            let mut vector: Vec<Complex64> = col.iter().copied().collect();
            let s = norm(&vector);
            vector.iter_mut().for_each(|z| *z /= s);
            out.push(InteriorState { value, vector });
        }
    }
    out
}

fn expectation(op: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let w = op.apply(v);
    v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum::<f64>() / norm_sq(v)
}

fn residual_vec(op: &ComplexMatrix, v: &[Complex64], value: f64) -> f64 {
    let w = op.apply(v);
    w.iter().zip(v).fold(0.0f64, |acc, (x, y)| acc.max((x - y * value).norm()))
}

/// `[ε₀ + β(E − 𝓔₀)] / √(2ε₀(ε₀+m))` applied componentwise.
pub(crate) fn connection_factor_apply(v: &[Complex64], eps0: f64, e0: f64, energy: f64, mass: f64) -> Vec<Complex64> {
    let denom = (2.0 * eps0 * (eps0 + mass)).sqrt();
    let up = (eps0 + (energy - e0)) / denom;
    let down = (eps0 - (energy - e0)) / denom;
    v.iter().enumerate().map(|(k, z)| z * if k % 4 < 2 { up } else { down }).collect()
}

/// Everything the suite derives from one parameter point.
pub struct SuiteRun {
    pub params: ModelParams,
    pub config: SuiteConfig,
    pub split: SplitHamiltonian,
    pub hamiltonian: ComplexMatrix,
    pub oracle: EigenDecomposition,
    pub transform: FwTransform,
    pub comparison: SpectrumComparison,
    pub reports: Vec<ResidualReport>,
}

/// Runs every check at default configuration.
pub fn run_suite(params: &ModelParams) -> Result<Vec<ResidualReport>> {
    run_suite_with(params, &SuiteConfig::default())
}

pub fn run_suite_with(params: &ModelParams, config: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    Ok(execute(params, config)?.reports)
}

/// Runs the suite and keeps the intermediate objects.
pub fn execute(params: &ModelParams, config: &SuiteConfig) -> Result<SuiteRun> {
    params.validate()?;
    let tol = config.tolerances;
    let split = build_dirac_hamiltonian_with(params, config.coupling)?;
    let mut hamiltonian = split.full();
    if let Some(p) = config.perturbation {
        hamiltonian = &hamiltonian + &random_hermitian(params.dim(), p.amplitude, p.seed);
    }
    let oracle = hermitian_eig(&hamiltonian)?;
    let transform = FwTransform::new(&split)?;
    let interior = params.interior_dim();

    let mut base = BTreeMap::new();
    base.insert("m".to_owned(), params.m.to_string());
    base.insert("e".to_owned(), params.e.to_string());
    base.insert("H".to_owned(), params.h.to_string());
    base.insert("mu_prime".to_owned(), params.mu_prime.to_string());
    base.insert("n_max".to_owned(), params.n_max.to_string());
    base.insert("interior_levels".to_owned(), format!("0..={}", params.max_interior_level()));
    base.insert(
        "coupling".to_owned(),
        match config.coupling {
            SpinCoupling::Polarization => "polarization",
            SpinCoupling::SpinSabotage => "spin_sabotage",
        }
        .to_owned(),
    );
    if let Some(p) = config.perturbation {
        base.insert("perturbation_amplitude".to_owned(), p.amplitude.to_string());
        base.insert("perturbation_seed".to_owned(), p.seed.to_string());
    }
    let ctx = |extra: &[(&str, String)]| {
        let mut c = base.clone();
        for (k, v) in extra {
            c.insert((*k).to_owned(), v.clone());
        }
        c
    };

    let mut reports = Vec::new();
    let id = ComplexMatrix::identity(params.dim());
    let (eps, u, u_inv) = (&transform.epsilon, &transform.forward, &transform.inverse);

    // [𝓔, 𝓞] = 0
    reports.push(ResidualReport::new("exactness_commutator", split.exactness_residual(interior), tol.exactness, ctx(&[])));

    reports.push(ResidualReport::new(
        "fw_unitarity",
        (&(&u.adjoint() * u) - &id).max_norm_leading(interior),
        tol.unitarity,
        ctx(&[]),
    ));
    reports.push(ResidualReport::new(
        "fw_inverse",
        (&(u * u_inv) - &id).max_norm_leading(interior),
        tol.unitarity,
        ctx(&[]),
    ));

    let h_fw = crate::algebra::transform::fw_hamiltonian_from(&split, eps);
    reports.push(ResidualReport::new(
        "fw_conjugation",
        (&transform.conjugate(&split.full()) - &h_fw).max_norm_leading(interior),
        tol.conjugation,
        ctx(&[]),
    ));
    if config.coupling == SpinCoupling::Polarization {
        let closed = fw_hamiltonian_closed_form(params)?;
        reports.push(ResidualReport::new(
            "fw_closed_form",
            (&h_fw - &closed).max_norm_leading(interior),
            tol.closed_form,
            ctx(&[]),
        ));
    }
    let beta_odd_sq = split.beta() * &(split.odd() * split.odd());
    reports.push(ResidualReport::new(
        "fw_commutes_beta_odd_squared",
        commutator(&beta_odd_sq, &h_fw)?.max_norm_leading(interior),
        tol.fw_commutation,
        ctx(&[]),
    ));
    reports.push(ResidualReport::new(
        "fw_commutes_even",
        commutator(split.even(), &h_fw)?.max_norm_leading(interior),
        tol.fw_commutation,
        ctx(&[]),
    ));

    let inv = crate::algebra::transform::invariance_with(&split, &transform, interior);
    reports.push(ResidualReport::new("invariance_even", inv.even, tol.invariance, ctx(&[])));
    reports.push(ResidualReport::new("invariance_epsilon", inv.epsilon, tol.invariance, ctx(&[])));

    // Positive-energy spectrum against the analytic records.
    let records: Vec<EigenRecord> =
        analytic_spectrum(params, &[]).into_iter().filter(|r| params.is_interior(r.n)).collect();
    let positive: Vec<f64> = oracle.values.iter().copied().filter(|&v| v > 0.0).collect();
    let comparison = compare_spectra(&positive, &records, tol.spectrum_rel);
    let states = interior_eigenstates(params, &oracle);
    let positive_states: Vec<&InteriorState> = states.iter().filter(|s| s.value > 0.0).collect();
    let excess = multiplicity_excess(&positive_states, &comparison);
    let spectrum_residual = if excess > 0 { comparison.max_rel_error().max(1.0) } else { comparison.max_rel_error() };
    reports.push(ResidualReport::new(
        "spectrum_identity",
        spectrum_residual,
        tol.spectrum_rel,
        ctx(&[
            ("interior_records", records.len().to_string()),
            ("matched", comparison.matched.len().to_string()),
            ("unmatched_records", comparison.unmatched_records.len().to_string()),
            ("ambiguous", comparison.ambiguous.len().to_string()),
            ("interior_states", positive_states.len().to_string()),
            ("unexplained_interior_states", excess.to_string()),
        ]),
    ));

    // Both energy branches against the closed-form FW diagonal.
    if config.coupling == SpinCoupling::Polarization {
        let closed = fw_hamiltonian_closed_form(params)?;
        let targets: Vec<f64> = closed.diagonal()[..interior].iter().map(|z| z.re).collect();
        let m = match_levels(&oracle.values, &targets, tol.preservation_rel);
        let worst = m.pairs.iter().map(|p| p.2).chain(m.unmatched_targets.iter().map(|p| p.1)).fold(0.0, f64::max);
        reports.push(ResidualReport::new(
            "spectrum_preservation",
            worst,
            tol.preservation_rel,
            ctx(&[("levels", targets.len().to_string()), ("unmatched", m.unmatched_targets.len().to_string())]),
        ));
    }

    state_checks(params, &split, &transform, &positive_states, &tol, &ctx, &mut reports);
    degeneracy_checks(params, &comparison, &tol, &ctx, &mut reports);
    reports.push(charge_symmetry_report(params, &tol, &ctx));
    radial_report(params, config, &ctx, &mut reports);

    reports.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    Ok(SuiteRun { params: *params, config: *config, split, hamiltonian, oracle, transform, comparison, reports })
}

/// Interior numeric states not accounted for by matched interior records, summed over
/// clusters.
fn multiplicity_excess(states: &[&InteriorState], comparison: &SpectrumComparison) -> usize {
    let mut excess = 0;
    let mut seen: Vec<f64> = Vec::new();
    for s in states {
        if seen.contains(&s.value) {
            continue;
        }
        seen.push(s.value);
        let near = |x: f64| (x - s.value).abs() <= CLUSTER_TOL * s.value.abs().max(1.0);
        let n_states = states.iter().filter(|t| t.value == s.value).count();
        let n_records = comparison.matched.iter().filter(|m| near(m.numeric)).count();
        excess += n_states.saturating_sub(n_records);
    }
    excess
}

type Ctx<'a> = dyn Fn(&[(&str, String)]) -> BTreeMap<String, String> + 'a;

fn state_checks(
    params: &ModelParams,
    split: &SplitHamiltonian,
    transform: &FwTransform,
    states: &[&InteriorState],
    tol: &Tolerances,
    ctx: &Ctx<'_>,
    reports: &mut Vec<ResidualReport>,
) {
    let m = params.m;
    let (mut simultaneous, mut lower, mut ratio, mut factor_err, mut renorm, mut bookkeeping) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for s in states {
        let psi = &s.vector;
        let eps0 = expectation(&transform.epsilon, psi);
        let e0 = expectation(split.even(), psi);
        simultaneous = simultaneous
            .max(residual_vec(&transform.epsilon, psi, eps0))
            .max(residual_vec(split.even(), psi, e0))
            .max((eps0 + e0 - s.value).abs());

        let fw = transform.forward.apply(psi);
        let fw_state = BispinorState::new(fw.clone()).expect("dimension is a multiple of four");
        let dirac = BispinorState::new(psi.clone()).expect("dimension is a multiple of four");
        lower = lower.max(fw_state.lower_norm());
        let factor = (2.0 * eps0 / (eps0 + m)).sqrt();
        let predicted: Vec<Complex64> = dirac.upper().iter().map(|z| z * factor).collect();
        ratio = ratio.max(max_abs_diff(&fw_state.upper(), &predicted));
        factor_err = factor_err.max(max_abs_diff(&connection_factor_apply(psi, eps0, e0, s.value, m), &fw));
        if let Ok(r) = renormalized_fw(&dirac.upper()) {
            renorm = renorm.max(phase_aligned_distance(&fw, r.coeffs()));
        } else {
            renorm = renorm.max(1.0);
        }
        bookkeeping = bookkeeping.max((dirac.upper_norm_sq() - (eps0 + m) / (2.0 * eps0)).abs());
    }
    let n = ("states", states.len().to_string());
    let mut push = |name: &str, value: f64, t: f64| {
        reports.push(ResidualReport::new(name, value, t, ctx(std::slice::from_ref(&n))));
    };
    push("simultaneous_eigenstates", simultaneous, tol.simultaneous);
    push("connection_lower_spinor", lower, tol.connection);
    push("connection_upper_ratio", ratio, tol.connection);
    push("connection_factor_vs_unitary", factor_err, tol.connection);
    push("renormalized_form", renorm, tol.connection);
    push("upper_norm_bookkeeping", bookkeeping, tol.connection);
}

fn degeneracy_checks(
    params: &ModelParams,
    comparison: &SpectrumComparison,
    tol: &Tolerances,
    ctx: &Ctx<'_>,
    reports: &mut Vec<ResidualReport>,
) {
    let expected_split_abs = 2.0 * params.mu_prime * params.h;
    let branch = if params.mu_prime == 0.0 { "degenerate" } else { "split" };
    let (mut analytic, mut numeric, mut pairs) = (0.0f64, 0.0f64, 0usize);
    for n in 0..params.max_interior_level() {
        for lambda in Spin::BOTH {
            let Some((n2, l2)) = degenerate_partner(params, n, lambda) else { continue };
            let a = EigenRecord::new(params, n, lambda, None);
            let b = EigenRecord::new(params, n2, l2, None);
            // E_a − E_b = (λ_b − λ_a)μ′H, magnitude 2μ′H.
            let expected = (l2.sign() - lambda.sign()) * params.mu_prime * params.h;
            analytic = analytic.max((a.eps0 - b.eps0).abs()).max(((a.e_total - b.e_total) - expected).abs());
            if let (Some(x), Some(y)) = (comparison.numeric_for(n, lambda), comparison.numeric_for(n2, l2)) {
                numeric = numeric.max(((x - y) - expected).abs());
            } else {
                numeric = numeric.max(1.0);
            }
            pairs += 1;
        }
    }
    let numeric_tol = if params.mu_prime == 0.0 { tol.degeneracy } else { tol.splitting };
    let extra = [
        ("branch", branch.to_owned()),
        ("pairs", pairs.to_string()),
        ("expected_splitting", expected_split_abs.to_string()),
    ];
    reports.push(ResidualReport::new("degeneracy_analytic", analytic, tol.analytic, ctx(&extra)));
    reports.push(ResidualReport::new("degeneracy_numeric", numeric, numeric_tol, ctx(&extra)));
}

fn charge_symmetry_report(params: &ModelParams, tol: &Tolerances, ctx: &Ctx<'_>) -> ResidualReport {
    let mirrored = ModelParams { e: -params.e, ..*params };
    let mut worst = 0.0f64;
    for n in 0..=params.n_max {
        for lambda in Spin::BOTH {
            let a = EigenRecord::new(params, n, lambda, None);
            let b = EigenRecord::new(&mirrored, n, lambda.flipped(), None);
            worst = worst.max((a.eps0 - b.eps0).abs());
        }
    }
    ResidualReport::new("charge_sign_symmetry", worst, tol.analytic, ctx(&[]))
}

/// `(n, λ, M)` triples ordered by oscillator shell `2n_ρ + |m_l|`, then total energy,
/// then `M`.
pub fn lowest_admissible_states(params: &ModelParams, count: usize) -> Vec<(usize, Spin, HalfInteger)> {
    let mut out: Vec<(usize, usize, Spin, HalfInteger, f64)> = Vec::new();
    let mut shell = 0usize;
    while out.len() < count {
        let mut this_shell = Vec::new();
        for m_l in -(shell as i32)..=(shell as i32) {
            if (shell as i32 - m_l.abs()) % 2 != 0 {
                continue;
            }
            let n_rho = (shell - m_l.unsigned_abs() as usize) / 2;
            for lambda in Spin::BOTH {
                let m = HalfInteger::from_twice(2 * m_l + lambda.as_i32()).expect("odd by construction");
                let shift = if params.field_sign() > 0.0 { (m_l.abs() - m_l) / 2 } else { (m_l.abs() + m_l) / 2 };
                let n = n_rho + shift as usize;
                let e = EigenRecord::new(params, n, lambda, Some(m)).e_total;
                this_shell.push((shell, n, lambda, m, e));
            }
        }
        this_shell.sort_by(|a, b| a.4.total_cmp(&b.4).then(a.3.cmp(&b.3)));
        out.extend(this_shell);
        shell += 1;
    }
    out.truncate(count);
    out.into_iter().map(|(_, n, l, m, _)| (n, l, m)).collect()
}

/// Radial eigenfunction residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialCheck {
    pub norm_error: f64,
    /// Relative error of the finite-difference Rayleigh quotient.
    pub rayleigh_error: f64,
    /// `‖(π⊥² − λ)R‖ / (λ‖R‖)` over interior grid points.
    pub residual: f64,
}

/// Applies the symmetric-gauge radial operator
/// `−R'' − R'/ρ + (m_l²/ρ² + (eH)²ρ²/4 − eH·m_l) R` to samples on a uniform grid
/// `ρ_i = i·h` by central differences and compares with `(2n+1)|eH|`.
pub fn radial_fd_check(params: &ModelParams, n: usize, m_l: i32, samples: &[(f64, f64)]) -> RadialCheck {
    let eh = params.eh();
    let target = (2 * n + 1) as f64 * eh.abs();
    let h = samples[1].0 - samples[0].0;
    let (mut num, mut den, mut res) = (0.0, 0.0, 0.0);
    for i in 1..samples.len() - 1 {
        let (rho, r) = samples[i];
        let (rm, rp) = (samples[i - 1].1, samples[i + 1].1);
        let ml = m_l as f64;
        let op = -(rp - 2.0 * r + rm) / (h * h) - (rp - rm) / (2.0 * h * rho)
            + (ml * ml / (rho * rho) + eh * eh * rho * rho / 4.0 - eh * ml) * r;
        num += r * op * rho;
        den += r * r * rho;
        res += (op - target * r).powi(2) * rho;
    }
    // ∫ R² ρ dρ on [0, ρ_max] by Simpson with R(0)·0 = 0 at the origin.
    let rho_max = samples.last().unwrap().0;
    let mut integrand = vec![0.0];
    integrand.extend(samples.iter().map(|(rho, r)| r * r * rho));
    let panels = integrand.len() - 1;
    let norm = if panels % 2 == 0 {
        let hh = rho_max / panels as f64;
        let inner: f64 = integrand[1..panels].iter().enumerate().map(|(k, v)| if k % 2 == 0 { 4.0 * v } else { 2.0 * v }).sum();
        (integrand[0] + integrand[panels] + inner) * hh / 3.0
    } else {
        integrand.windows(2).map(|w| (w[0] + w[1]) / 2.0).sum::<f64>() * h
    };
    RadialCheck {
        norm_error: (norm - 1.0).abs(),
        rayleigh_error: (num / den - target).abs() / target,
        residual: (res / den).sqrt() / target,
    }
}

fn radial_report(params: &ModelParams, config: &SuiteConfig, ctx: &Ctx<'_>, reports: &mut Vec<ResidualReport>) {
    let b = params.magnetic_length();
    let grid = uniform_grid(config.radial_extent * b, config.radial_points);
    let (mut norm_err, mut eig_err) = (0.0f64, 0.0f64);
    let states = lowest_admissible_states(params, 5);
    for &(n, lambda, m) in &states {
        let orb = orbital_numbers(params, n, lambda, m).expect("enumerated states are admissible");
        let radial = RadialFunction::new(orb.n_rho, orb.m_l.unsigned_abs(), b).expect("b > 0");
        let samples: Vec<(f64, f64)> = grid.iter().map(|&r| (r, radial.value(r))).collect();
        let check = radial_fd_check(params, n, orb.m_l, &samples);
        norm_err = norm_err.max(check.norm_error);
        eig_err = eig_err.max(check.rayleigh_error).max(check.residual);
    }
    let labels = states
        .iter()
        .map(|(n, l, m)| format!("({n},{},{})", l.as_i32(), m.value()))
        .collect::<Vec<_>>()
        .join(" ");
    let extra = [("states", labels), ("grid_points", config.radial_points.to_string())];
    reports.push(ResidualReport::new("radial_norm", norm_err, config.tolerances.radial_norm, ctx(&extra)));
    reports.push(ResidualReport::new("radial_eigenvalue", eig_err, config.tolerances.radial_eigenvalue, ctx(&extra)));
}
