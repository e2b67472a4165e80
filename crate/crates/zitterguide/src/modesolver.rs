//! Unperturbed step-profile eigenproblem: characteristic-equation roots,
//! transverse wavenumbers, propagation constants, normalization, and the
//! radial wavefunction.
//!
//! Inside the core the radial function is N J_m(kappa0_a rho); outside it is
//! the K_m branch scaled for continuity at rho = 1. The characteristic
//! equation is solved in the cleared-denominator form
//!
//! ```text
//! F(k) = k J_{m+1}(k) K_m(w) - w K_{m+1}(w) J_m(k),   w = sqrt(R^2 - k^2)
//! ```
//!
//! which is finite on all of (0, R): the raw ratio form has poles at the
//! zeros of J_m. Sign changes of F are bracketed on a fine grid and
//! bisected; roots whose normalization brace is non-positive are spurious
//! crossings and are discarded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::{NormalizedFrequency, ParticleConfig, ParticleKind};
use crate::specfun::{bessel_j, bessel_j_prime, bessel_k, BesselOrder};

/// Quantum numbers (n, m_ell, sigma) labeling an unperturbed eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeIndex {
    /// Radial quantum number, n >= 1.
    pub n: u32,
    /// Orbital angular momentum, any sign.
    pub m_ell: i32,
    /// Spin / helicity, +1 or -1.
    pub sigma: i32,
}

impl ModeIndex {
    pub fn new(n: u32, m_ell: i32, sigma: i32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Validation("radial index n must be >= 1".into()));
        }
        if sigma != 1 && sigma != -1 {
            return Err(Error::Validation(format!(
                "sigma must be +1 or -1, got {sigma}"
            )));
        }
        Ok(ModeIndex { n, m_ell, sigma })
    }

    pub fn m_abs(&self) -> u32 {
        self.m_ell.unsigned_abs()
    }

    /// Sign of m_ell (mu); zero when m_ell = 0.
    pub fn mu(&self) -> i32 {
        self.m_ell.signum()
    }

    /// LP label: LP_{|m|n} with a +/- suffix for the sign of sigma*m_ell.
    pub fn lp_label(&self) -> String {
        let base = format!("LP{}{}", self.m_abs(), self.n);
        match (self.sigma * self.m_ell).signum() {
            1 => format!("{base}+"),
            -1 => format!("{base}-"),
            _ => base,
        }
    }
}

/// A solved guided mode: dimensionless transverse wavenumbers, propagation
/// constant, and normalization, tied to its particle configuration.
#[derive(Debug, Clone)]
pub struct ModeSolution {
    pub index: ModeIndex,
    /// kappa0 * a: dimensionless transverse wavenumber inside the core.
    pub kappa0_a: f64,
    /// kappa~0 * a = sqrt(R^2 - (kappa0 a)^2): decay constant outside.
    pub kappa_tilde0_a: f64,
    /// Propagation constant (1/m).
    pub beta0: f64,
    /// Normalization factor N (dimensionless, taken positive).
    pub norm_n: f64,
    pub config: ParticleConfig,
}

/// Serialized form of a [`ModeSolution`].
#[derive(Debug, Serialize, Deserialize)]
pub struct ModeSolutionRecord {
    pub particle: ParticleKind,
    pub r: f64,
    pub n: u32,
    pub m_ell: i32,
    pub sigma: i32,
    pub kappa0_a: f64,
    pub kappa_tilde0_a: f64,
    pub beta0: f64,
    #[serde(rename = "N")]
    pub norm_n: f64,
}

impl From<&ModeSolution> for ModeSolutionRecord {
    fn from(mode: &ModeSolution) -> Self {
        ModeSolutionRecord {
            particle: mode.config.kind(),
            r: crate::medium::waveguide_parameter(&mode.config).value(),
            n: mode.index.n,
            m_ell: mode.index.m_ell,
            sigma: mode.index.sigma,
            kappa0_a: mode.kappa0_a,
            kappa_tilde0_a: mode.kappa_tilde0_a,
            beta0: mode.beta0,
            norm_n: mode.norm_n,
        }
    }
}

/// Cleared-denominator residual of the characteristic equation.
pub fn char_residual(kappa0_a: f64, r: NormalizedFrequency, m_abs: u32) -> Result<f64> {
    let rv = r.value();
    if !(kappa0_a.is_finite() && kappa0_a > 0.0 && kappa0_a < rv) {
        return Err(Error::Domain(format!(
            "kappa0_a must lie in (0, R) = (0, {rv}), got {kappa0_a}"
        )));
    }
    let w = (rv * rv - kappa0_a * kappa0_a).sqrt();
    let jm = bessel_j(BesselOrder(m_abs), kappa0_a)?;
    let jm1 = bessel_j(BesselOrder(m_abs + 1), kappa0_a)?;
    let km = bessel_k(BesselOrder(m_abs), w)?;
    let km1 = bessel_k(BesselOrder(m_abs + 1), w)?;
    Ok(kappa0_a * jm1 * km - w * km1 * jm)
}

/// The brace of the normalization formula,
/// K_{m-1}K_{m+1}/K_m^2 - J_{m-1}J_{m+1}/J_m^2, with J_{-1} = -J_1 and
/// K_{-1} = K_1. Positive for every physical guided mode.
pub fn norm_brace(kappa0_a: f64, kappa_tilde0_a: f64, m_abs: u32) -> Result<f64> {
    let j = |order: i32, x: f64| -> Result<f64> {
        if order < 0 {
            Ok(-bessel_j(BesselOrder(1), x)?)
        } else {
            bessel_j(BesselOrder(order as u32), x)
        }
    };
    let k = |order: i32, x: f64| bessel_k(BesselOrder(order.unsigned_abs()), x);
    let m = m_abs as i32;
    let jm = j(m, kappa0_a)?;
    let j_lo = j(m - 1, kappa0_a)?;
    let j_hi = j(m + 1, kappa0_a)?;
    let km = k(m, kappa_tilde0_a)?;
    let k_lo = k(m - 1, kappa_tilde0_a)?;
    let k_hi = k(m + 1, kappa_tilde0_a)?;
    Ok(k_lo * k_hi / (km * km) - j_lo * j_hi / (jm * jm))
}

/// All characteristic-equation roots kappa0_a on (0, R) for a given |m_ell|,
/// ascending; the k-th root is the mode with n = k. Empty when nothing is
/// guided.
pub fn solve_modes(r: NormalizedFrequency, m_abs: u32) -> Result<Vec<f64>> {
    let rv = r.value();
    let eps = 1e-9 * rv.max(1.0);
    let step = (0.01f64).min(rv / 2000.0);
    let mut roots = Vec::new();
    let mut x_prev = eps;
    let mut f_prev = char_residual(x_prev, r, m_abs)?;
    let mut x = x_prev + step;
    while x < rv - eps {
        let f = char_residual(x, r, m_abs)?;
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev * f < 0.0 {
            roots.push(bisect(x_prev, x, f_prev, r, m_abs)?);
        }
        x_prev = x;
        f_prev = f;
        x += step;
    }
    // a just-guided mode sits arbitrarily close to R; examine the final
    // partial interval up to the edge of the domain
    let edge = rv * (1.0 - 1e-12);
    if edge > x_prev && f_prev != 0.0 {
        let f_edge = char_residual(edge, r, m_abs)?;
        if f_prev * f_edge < 0.0 {
            roots.push(bisect(x_prev, edge, f_prev, r, m_abs)?);
        }
    }
    // keep only roots with a positive normalization brace; crossings created
    // by J_m zeros are not physical modes
    let mut kept = Vec::with_capacity(roots.len());
    for root in roots {
        let w = (rv * rv - root * root).sqrt();
        if norm_brace(root, w, m_abs)? > 0.0 {
            kept.push(root);
        }
    }
    Ok(kept)
}

fn bisect(mut lo: f64, mut hi: f64, f_lo: f64, r: NormalizedFrequency, m_abs: u32) -> Result<f64> {
    let mut sign_lo = f_lo.signum();
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let f_mid = char_residual(mid, r, m_abs)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        sign_lo = char_residual(lo, r, m_abs)?.signum();
    }
    Ok(0.5 * (lo + hi))
}

/// Propagation constant beta0 = (1/a) sqrt((a/lambda_bar)^2 - (kappa0 a)^2).
pub fn beta0(config: &ParticleConfig, kappa0_a: f64) -> Result<f64> {
    let a = config.radius_a();
    let q = a / config.lambda_bar();
    if kappa0_a >= q {
        return Err(Error::NotGuided(format!(
            "kappa0_a = {kappa0_a} >= a k(0) = {q}; beta0 would be imaginary"
        )));
    }
    Ok((q * q - kappa0_a * kappa0_a).sqrt() / a)
}

/// Normalization factor N, taken positive. Errors when the brace is
/// non-positive, which flags a spurious root.
pub fn normalization(kappa0_a: f64, kappa_tilde0_a: f64, m_abs: u32) -> Result<f64> {
    let brace = norm_brace(kappa0_a, kappa_tilde0_a, m_abs)?;
    if brace <= 0.0 {
        return Err(Error::InconsistentRoot {
            kappa0_a,
            brace,
        });
    }
    let jm = bessel_j(BesselOrder(m_abs), kappa0_a)?;
    Ok(1.0 / (std::f64::consts::PI.sqrt() * jm.abs() * brace.sqrt()))
}

impl ModeSolution {
    /// Solve the mode with the given quantum numbers for this configuration.
    pub fn solve(config: &ParticleConfig, index: ModeIndex) -> Result<Self> {
        let r = crate::medium::waveguide_parameter(config);
        let roots = solve_modes(r, index.m_abs())?;
        let kappa0_a = *roots.get((index.n - 1) as usize).ok_or_else(|| {
            Error::NotGuided(format!(
                "no guided mode LP{}{} at R = {}",
                index.m_abs(),
                index.n,
                r.value()
            ))
        })?;
        Self::from_root(config, index, r, kappa0_a)
    }

    /// Assemble a solution from an already-located root.
    pub fn from_root(
        config: &ParticleConfig,
        index: ModeIndex,
        r: NormalizedFrequency,
        kappa0_a: f64,
    ) -> Result<Self> {
        let rv = r.value();
        let kappa_tilde0_a = (rv * rv - kappa0_a * kappa0_a).sqrt();
        let beta0 = beta0(config, kappa0_a)?;
        let norm_n = normalization(kappa0_a, kappa_tilde0_a, index.m_abs())?;
        Ok(ModeSolution {
            index,
            kappa0_a,
            kappa_tilde0_a,
            beta0,
            norm_n,
            config: config.clone(),
        })
    }

    /// Every guided mode of this configuration with |m_ell| <= m_abs_max
    /// (and n <= n_max when given), one solution per (|m|, n) with
    /// m_ell = +|m|, sigma = +1 as representative labels.
    pub fn enumerate(
        config: &ParticleConfig,
        m_abs_max: u32,
        n_max: Option<u32>,
    ) -> Result<Vec<ModeSolution>> {
        let r = crate::medium::waveguide_parameter(config);
        let mut out = Vec::new();
        for m_abs in 0..=m_abs_max {
            let roots = solve_modes(r, m_abs)?;
            for (i, &root) in roots.iter().enumerate() {
                let n = i as u32 + 1;
                if let Some(limit) = n_max {
                    if n > limit {
                        break;
                    }
                }
                let index = ModeIndex::new(n, m_abs as i32, 1)?;
                out.push(Self::from_root(config, index, r, root)?);
            }
        }
        Ok(out)
    }

    /// The same radial solution relabeled with different (m_ell, sigma)
    /// within its degenerate family (|m_ell| must be unchanged).
    pub fn with_labels(&self, m_ell: i32, sigma: i32) -> Result<ModeSolution> {
        let index = ModeIndex::new(self.index.n, m_ell, sigma)?;
        if index.m_abs() != self.index.m_abs() {
            return Err(Error::Domain(format!(
                "cannot relabel |m|={} solution as m_ell={m_ell}",
                self.index.m_abs()
            )));
        }
        let mut out = self.clone();
        out.index = index;
        Ok(out)
    }

    pub fn wavefunction(&self) -> RadialWavefunction {
        RadialWavefunction::new(self)
    }

    pub fn record(&self) -> ModeSolutionRecord {
        self.into()
    }
}

/// Evaluator for the dimensionless radial wavefunction psi(rho).
#[derive(Debug, Clone)]
pub struct RadialWavefunction {
    m_abs: u32,
    kappa0_a: f64,
    kappa_tilde0_a: f64,
    norm_n: f64,
    /// J_m(kappa0 a) / K_m(kappa~0 a): continuity scaling of the outer branch.
    outside_scale: f64,
}

impl RadialWavefunction {
    pub fn new(mode: &ModeSolution) -> Self {
        let m = BesselOrder(mode.index.m_abs());
        let jm = bessel_j(m, mode.kappa0_a).expect("kappa0_a is finite and positive");
        let km = bessel_k(m, mode.kappa_tilde0_a).expect("kappa_tilde0_a is positive");
        RadialWavefunction {
            m_abs: mode.index.m_abs(),
            kappa0_a: mode.kappa0_a,
            kappa_tilde0_a: mode.kappa_tilde0_a,
            norm_n: mode.norm_n,
            outside_scale: jm / km,
        }
    }

    pub fn m_abs(&self) -> u32 {
        self.m_abs
    }

    pub fn kappa0_a(&self) -> f64 {
        self.kappa0_a
    }

    pub fn kappa_tilde0_a(&self) -> f64 {
        self.kappa_tilde0_a
    }

    /// (int_0^1 psi^2 rho drho, int_1^inf psi^2 rho drho) in closed form,
    /// via int_0^x t J_m(t)^2 dt = (x^2/2)[J_m^2 - J_{m-1}J_{m+1}] and its
    /// K counterpart.
    pub fn unit_norm_split(&self) -> (f64, f64) {
        let m = self.m_abs as i32;
        let j = |order: i32, x: f64| -> f64 {
            if order < 0 {
                -bessel_j(BesselOrder(1), x).expect("x >= 0")
            } else {
                bessel_j(BesselOrder(order as u32), x).expect("x >= 0")
            }
        };
        let k = |order: i32, x: f64| bessel_k(BesselOrder(order.unsigned_abs()), x).expect("x > 0");
        let kap = self.kappa0_a;
        let kt = self.kappa_tilde0_a;
        let jm = j(m, kap);
        let inner =
            0.5 * self.norm_n * self.norm_n * (jm * jm - j(m - 1, kap) * j(m + 1, kap));
        let nc = self.norm_n * self.outside_scale;
        let km = k(m, kt);
        let outer = 0.5 * nc * nc * (k(m - 1, kt) * k(m + 1, kt) - km * km);
        (inner, outer)
    }

    /// psi(rho); continuous across the boundary by construction.
    pub fn psi(&self, rho: f64) -> f64 {
        let m = BesselOrder(self.m_abs);
        if rho <= 1.0 {
            self.norm_n * bessel_j(m, self.kappa0_a * rho).expect("rho >= 0")
        } else {
            self.norm_n
                * self.outside_scale
                * bessel_k(m, self.kappa_tilde0_a * rho).expect("rho > 0")
        }
    }

    /// d psi / d rho away from the boundary; the derivative jumps at rho = 1,
    /// use the one-sided accessors there.
    pub fn psi_prime(&self, rho: f64) -> Result<f64> {
        if rho == 1.0 {
            return Err(Error::Domain(
                "psi' is discontinuous at rho = 1; use psi_prime_inside / psi_prime_outside".into(),
            ));
        }
        if rho < 1.0 {
            let m = BesselOrder(self.m_abs);
            Ok(self.norm_n * self.kappa0_a * bessel_j_prime(m, self.kappa0_a * rho)?)
        } else {
            Ok(self.outside_prime(rho))
        }
    }

    /// Inside-branch derivative at the boundary, N kappa0_a J'_m(kappa0_a).
    pub fn psi_prime_inside(&self) -> f64 {
        let m = BesselOrder(self.m_abs);
        self.norm_n * self.kappa0_a * bessel_j_prime(m, self.kappa0_a).expect("finite")
    }

    /// Outside-branch derivative at the boundary.
    pub fn psi_prime_outside(&self) -> f64 {
        self.outside_prime(1.0)
    }

    fn outside_prime(&self, rho: f64) -> f64 {
        // K'_m = -(K_{m-1} + K_{m+1}) / 2, with K_{-1} = K_1
        let x = self.kappa_tilde0_a * rho;
        let lo = if self.m_abs == 0 { 1 } else { self.m_abs - 1 };
        let k_lo = bessel_k(BesselOrder(lo), x).expect("x > 0");
        let k_hi = bessel_k(BesselOrder(self.m_abs + 1), x).expect("x > 0");
        -0.5 * self.norm_n * self.outside_scale * self.kappa_tilde0_a * (k_lo + k_hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{match_electron_to_photon, waveguide_parameter};
    use crate::quad::integrate_split;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn freq(r: f64) -> NormalizedFrequency {
        NormalizedFrequency::new(r).unwrap()
    }

    fn photon_at(r: f64) -> ParticleConfig {
        let n0 = 1.46;
        let lambda0 = 632.8e-9;
        let delta = 0.014;
        let lg = lambda0 / (2.0 * std::f64::consts::PI * n0);
        ParticleConfig::photon(delta, r * lg / delta.sqrt(), n0, lambda0).unwrap()
    }

    /// Dense sign-scan oracle: count residual sign changes independently of
    /// the production scan parameters.
    fn sign_change_count(r: f64, m_abs: u32) -> usize {
        let rf = freq(r);
        let n = 10_000;
        let eps = 1e-7 * r;
        let mut count = 0;
        let mut prev = char_residual(eps, rf, m_abs).unwrap();
        for i in 1..n {
            let x = eps + (r - 2.0 * eps) * i as f64 / n as f64;
            let f = char_residual(x, rf, m_abs).unwrap();
            if prev * f < 0.0 {
                count += 1;
            }
            prev = f;
        }
        count
    }

    #[test]
    fn residual_is_finite_near_origin() {
        let r = freq(5.0);
        let f = char_residual(1e-8, r, 0).unwrap();
        assert!(f.is_finite());
        assert!(f < 0.0); // -w K1(w) J0(0) < 0
    }

    #[test]
    fn residual_domain_checks() {
        let r = freq(5.0);
        assert!(char_residual(0.0, r, 0).is_err());
        assert!(char_residual(5.0, r, 0).is_err());
        assert!(char_residual(-1.0, r, 1).is_err());
    }

    #[test]
    fn two_sign_changes_at_r5_m0() {
        assert_eq!(sign_change_count(5.0, 0), 2);
        assert_eq!(solve_modes(freq(5.0), 0).unwrap().len(), 2);
    }

    #[test]
    fn fundamental_mode_has_no_cutoff() {
        let roots = solve_modes(freq(1.0), 0).unwrap();
        assert_eq!(roots.len(), 1);
        // still guided well below R = 1 (the root crowds the domain edge and
        // eventually falls below floating-point resolution, but not here)
        let small = solve_modes(freq(0.5), 0).unwrap();
        assert_eq!(small.len(), 1);
    }

    #[test]
    fn lp11_cutoff_at_first_j0_zero() {
        assert!(solve_modes(freq(2.0), 1).unwrap().is_empty());
        assert_eq!(solve_modes(freq(3.0), 1).unwrap().len(), 1);
        // scan the cutoff bracket
        assert!(solve_modes(freq(2.404), 1).unwrap().is_empty());
        assert_eq!(solve_modes(freq(2.406), 1).unwrap().len(), 1);
    }

    #[test]
    fn residual_vanishes_at_roots() {
        for &r in &[2.0, 5.0, 8.0] {
            for m in 0..=2 {
                for root in solve_modes(freq(r), m).unwrap() {
                    let res = char_residual(root, freq(r), m).unwrap();
                    assert!(res.abs() <= 1e-10, "residual {res} at root {root}");
                }
            }
        }
    }

    #[test]
    fn kappa_approaches_first_j0_zero_from_below() {
        let mut prev = 0.0;
        for &r in &[5.0, 10.0, 20.0, 50.0] {
            let k = solve_modes(freq(r), 0).unwrap()[0];
            assert!(k > prev);
            assert!(k < 2.404826);
            prev = k;
        }
        assert!(prev > 2.35); // closing in on j_{0,1}
    }

    #[test]
    fn root_count_non_decreasing_in_r() {
        for m in 0..=3u32 {
            let mut prev = 0;
            for &r in &[1.0, 2.0, 3.0, 5.0, 8.0, 10.0] {
                let count = solve_modes(freq(r), m).unwrap().len();
                assert!(count >= prev, "count dropped for m={m} at R={r}");
                prev = count;
            }
        }
    }

    #[test]
    fn roots_interlace_with_bessel_zeros() {
        // consecutive roots at fixed R are separated by a zero of J_m
        let r = freq(8.0);
        for m in 0..=2u32 {
            let roots = solve_modes(r, m).unwrap();
            for pair in roots.windows(2) {
                let j_changes_sign = {
                    let a = bessel_j(BesselOrder(m), pair[0]).unwrap();
                    let b = bessel_j(BesselOrder(m), pair[1]).unwrap();
                    a * b < 0.0
                };
                assert!(j_changes_sign, "no J_{m} zero between {:?}", pair);
            }
        }
    }

    #[test]
    fn beta0_limits_and_sandwich() {
        let cfg = photon_at(5.0);
        let a = cfg.radius_a();
        let k0 = 1.0 / cfg.lambda_bar();
        assert_relative_eq!(beta0(&cfg, 0.0).unwrap(), k0, max_relative = 1e-14);

        // 3-4-5 arithmetic: a/lambda = 10, kappa0 a = 6 -> beta0 = 8/a
        let n0 = 1.46;
        let lambda0 = 632.8e-9;
        let lg = lambda0 / (2.0 * std::f64::consts::PI * n0);
        let cfg10 = ParticleConfig::photon(0.014, 10.0 * lg, n0, lambda0).unwrap();
        assert_relative_eq!(beta0(&cfg10, 6.0).unwrap(), 8.0 / (10.0 * lg), max_relative = 1e-13);
        assert!(beta0(&cfg10, 10.0).is_err());

        let r = waveguide_parameter(&cfg);
        let ka = (k0 * k0 - (r.value() / a) * (r.value() / a)).sqrt();
        let mut prev_beta = f64::INFINITY;
        for root in solve_modes(r, 0).unwrap() {
            let b = beta0(&cfg, root).unwrap();
            assert!(b > ka && b < k0, "guided-mode sandwich violated");
            assert!(b < prev_beta, "beta0 must decrease with kappa0_a");
            prev_beta = b;
        }
    }

    #[test]
    fn matched_particles_share_beta0_times_a() {
        let photon = photon_at(5.0);
        let electron = match_electron_to_photon(&photon, 10.0).unwrap();
        let r = waveguide_parameter(&photon);
        for root in solve_modes(r, 1).unwrap() {
            let bg = beta0(&photon, root).unwrap() * photon.radius_a();
            let be = beta0(&electron, root).unwrap() * electron.radius_a();
            assert_relative_eq!(bg, be, max_relative = 1e-12);
        }
    }

    #[test]
    fn normalization_positive_and_unit_norm() {
        for &r in &[2.0, 5.0, 8.0] {
            let cfg = photon_at(r);
            for m in 0..=2u32 {
                let roots = solve_modes(freq(r), m).unwrap();
                for (i, _) in roots.iter().enumerate() {
                    let index = ModeIndex::new(i as u32 + 1, m as i32, 1).unwrap();
                    let mode = ModeSolution::solve(&cfg, index).unwrap();
                    assert!(mode.norm_n > 0.0);
                    let psi = mode.wavefunction();
                    let rho_max = (40.0 / mode.kappa_tilde0_a).max(2.0);
                    let integral = integrate_split(
                        |rho| {
                            let p = psi.psi(rho);
                            p * p * rho
                        },
                        0.0,
                        rho_max,
                        &[1.0],
                        1e-12,
                    )
                    .unwrap();
                    let total = 2.0 * std::f64::consts::PI * integral;
                    assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn psi_shape_and_continuity() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, 1, 1).unwrap()).unwrap();
        let psi = mode.wavefunction();
        assert_eq!(psi.psi(0.0), 0.0); // J_1(0) = 0
        let inside = psi.psi(1.0 - 1e-14);
        let outside = psi.psi(1.0 + 1e-14);
        assert_relative_eq!(inside, outside, max_relative = 1e-10);

        // inside-branch derivative value at the step
        let expect = mode.norm_n
            * mode.kappa0_a
            * bessel_j_prime(BesselOrder(1), mode.kappa0_a).unwrap();
        assert_relative_eq!(psi.psi_prime_inside(), expect, max_relative = 1e-14);
        assert!(psi.psi_prime(1.0).is_err());
    }

    #[test]
    fn psi_decays_like_k_asymptotics() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, 0, 1).unwrap()).unwrap();
        let psi = mode.wavefunction();
        // slope of ln(psi sqrt(rho)) vs rho approaches -kappa_tilde0_a
        let (r1, r2) = (3.0, 6.0);
        let g = |rho: f64| (psi.psi(rho).abs() * rho.sqrt()).ln();
        let slope = (g(r2) - g(r1)) / (r2 - r1);
        assert_relative_eq!(slope, -mode.kappa_tilde0_a, max_relative = 0.05);
    }

    #[test]
    fn record_round_trip_re_verifies_residual() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(2, 0, -1).unwrap()).unwrap();
        let text = serde_json::to_string(&mode.record()).unwrap();
        let back: ModeSolutionRecord = serde_json::from_str(&text).unwrap();
        let res = char_residual(back.kappa0_a, freq(back.r), back.m_ell.unsigned_abs()).unwrap();
        assert!(res.abs() <= 1e-10);
        assert_eq!(back.particle, ParticleKind::Photon);
    }

    #[test]
    fn missing_mode_is_not_guided() {
        let cfg = photon_at(2.0);
        let err = ModeSolution::solve(&cfg, ModeIndex::new(1, 1, 1).unwrap());
        assert!(matches!(err, Err(Error::NotGuided(_))));
    }
}
