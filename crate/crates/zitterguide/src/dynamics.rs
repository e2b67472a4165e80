//! Evolution of two-state superpositions under the first-order phases:
//! common Darwin phase, spin-orbit splitting, and the resulting Bloch-vector
//! precession in z and t.
//!
//! Each eigenstate with quantum numbers (m_ell, sigma) accumulates the phase
//! exp[i(|dB_D| - sigma mu |dB_SO|) z], so a two-state pair sharing
//! (n, |m_ell|) precesses about the Bloch axis: the azimuth advances at
//! 2 |dB_SO| per unit z (the relative phase of the pair) while a physical
//! polarization vector rotates at |dB_SO|.
//!
//! Time evolution follows the transformed-eigenstate picture with
//! |d omega| = (omega / beta0) |dB_SO|: the spin-orbit phase of each member
//! is -sigma mu (|dB_SO| z + |d omega| t). With that sign the t = 0 limit
//! reduces exactly to the z-evolution, and at z = 0 the substitution
//! |dB_SO| z -> |d omega| t maps one onto the other, which is how the two
//! pictures are tied together. (Reading the combined phase with a relative
//! minus instead would mirror the t-precession against the z-precession and
//! break that substitution.)

use serde::Serialize;

use crate::error::{Error, Result};
use crate::medium::ParticleKind;
use crate::modesolver::ModeSolution;
use crate::perturb::ShiftBreakdown;

/// Which pair of degenerate states the superposition spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairKind {
    /// sigma vs -sigma at fixed m_ell (spin / polarization space).
    SamPair,
    /// m_ell vs -m_ell at fixed sigma (orbital space).
    OamPair,
}

/// A two-state superposition: the base mode is the north-pole member, its
/// partner (sigma or m_ell negated) the south-pole member, with Bloch
/// angles (theta, phi) giving the initial state
/// cos(theta/2) e^{-i phi/2} |north> + sin(theta/2) e^{+i phi/2} |south>.
#[derive(Debug, Clone)]
pub struct SuperpositionSpec {
    base: ModeSolution,
    pair_kind: PairKind,
    theta: f64,
    phi: f64,
}

impl SuperpositionSpec {
    pub fn new(base: ModeSolution, pair_kind: PairKind, theta: f64, phi: f64) -> Result<Self> {
        if base.index.m_ell == 0 {
            return Err(Error::Validation(
                "precession requires |m_ell| >= 1; sigma m_ell = 0 has no splitting".into(),
            ));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Validation(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        if !(0.0..2.0 * std::f64::consts::PI).contains(&phi) {
            return Err(Error::Validation(format!(
                "phi must lie in [0, 2 pi), got {phi}"
            )));
        }
        Ok(SuperpositionSpec {
            base,
            pair_kind,
            theta,
            phi,
        })
    }

    pub fn base(&self) -> &ModeSolution {
        &self.base
    }

    pub fn pair_kind(&self) -> PairKind {
        self.pair_kind
    }

    /// Sign of the north member's m_ell.
    pub fn mu(&self) -> i32 {
        self.base.index.mu()
    }

    /// Replace the Bloch angles (used to chain evolutions).
    pub fn with_bloch(&self, theta: f64, phi: f64) -> Result<Self> {
        SuperpositionSpec::new(self.base.clone(), self.pair_kind, theta, phi)
    }

    fn guard_scope(&self) -> Result<()> {
        if self.base.config.kind() == ParticleKind::Photon && self.base.index.m_abs() == 1 {
            return Err(Error::PhotonMEllOne);
        }
        Ok(())
    }

    /// Azimuth advance per unit z is 2 sigma_N mu_N |dB_SO|: the spin-orbit
    /// phases of the two members differ by twice the single-state shift.
    fn precession_sign(&self) -> f64 {
        (self.base.index.sigma * self.base.index.mu()) as f64
    }
}

/// A point on the Bloch sphere plus the accumulated common (Darwin) phase.
#[derive(Debug, Clone, Serialize)]
pub struct BlochState {
    pub bloch_vector: [f64; 3],
    pub accumulated_common_phase: f64,
}

impl BlochState {
    fn from_angles(theta: f64, phi: f64, common_phase: f64) -> Self {
        BlochState {
            bloch_vector: [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ],
            accumulated_common_phase: common_phase,
        }
    }

    /// Recover the Bloch angles (theta, phi).
    pub fn to_angles(&self) -> (f64, f64) {
        let [x, y, z] = self.bloch_vector;
        (z.clamp(-1.0, 1.0).acos(), y.atan2(x))
    }

    pub fn norm(&self) -> f64 {
        let [x, y, z] = self.bloch_vector;
        (x * x + y * y + z * z).sqrt()
    }
}

/// Phase factor exp[i(|dB_D| - sigma mu |dB_SO|) z] a single eigenstate
/// picks up over a distance z. For m_ell = 0 the spin-orbit part is absent.
pub fn mode_phase(mode: &ModeSolution, shifts: &ShiftBreakdown, z: f64) -> num_complex::Complex64 {
    let so = if mode.index.m_ell == 0 {
        0.0
    } else {
        (mode.index.sigma * mode.index.mu()) as f64 * shifts.delta_beta_so
    };
    num_complex::Complex64::from_polar(1.0, (shifts.delta_beta_d - so) * z)
}

/// Evolve the superposition a distance z down the guide.
pub fn evolve_z(spec: &SuperpositionSpec, shifts: &ShiftBreakdown, z: f64) -> Result<BlochState> {
    spec.guard_scope()?;
    let phi = spec.phi + 2.0 * spec.precession_sign() * shifts.delta_beta_so * z;
    Ok(BlochState::from_angles(
        spec.theta,
        phi,
        shifts.delta_beta_d * z,
    ))
}

/// Spin-orbit frequency splitting |d omega| = (omega / beta0) |dB_SO|.
pub fn delta_omega(mode: &ModeSolution, shifts: &ShiftBreakdown) -> f64 {
    mode.config.angular_frequency() / mode.beta0 * shifts.delta_beta_so
}

/// Evolve in both z and t; the t = 0 slice is exactly [`evolve_z`].
pub fn evolve_t(
    spec: &SuperpositionSpec,
    shifts: &ShiftBreakdown,
    mode: &ModeSolution,
    z: f64,
    t: f64,
) -> Result<BlochState> {
    spec.guard_scope()?;
    let angle = shifts.delta_beta_so * z + delta_omega(mode, shifts) * t;
    let phi = spec.phi + 2.0 * spec.precession_sign() * angle;
    Ok(BlochState::from_angles(
        spec.theta,
        phi,
        shifts.delta_beta_d * z,
    ))
}

/// Transverse polarization vector of a balanced in-phase photon SAM pair:
/// (cos(|dB_SO| z), mu sin(|dB_SO| z)).
pub fn polarization_vector(
    spec: &SuperpositionSpec,
    shifts: &ShiftBreakdown,
    z: f64,
) -> Result<[f64; 2]> {
    if spec.pair_kind != PairKind::SamPair {
        return Err(Error::Domain(
            "polarization_vector expects a SAM pair".into(),
        ));
    }
    if spec.base.config.kind() != ParticleKind::Photon {
        return Err(Error::Domain(
            "polarization_vector describes photon states; use spin_expectation for electrons"
                .into(),
        ));
    }
    spec.guard_scope()?;
    let angle = shifts.delta_beta_so * z;
    let mu = spec.mu() as f64;
    Ok([angle.cos(), mu * angle.sin()])
}

/// Spin expectation vector of a balanced in-phase electron SAM pair, in
/// units of hbar: (1/2)(cos(2|dB_SO| z), mu sin(2|dB_SO| z), 0).
pub fn spin_expectation(
    spec: &SuperpositionSpec,
    shifts: &ShiftBreakdown,
    z: f64,
) -> Result<[f64; 3]> {
    if spec.pair_kind != PairKind::SamPair {
        return Err(Error::Domain("spin_expectation expects a SAM pair".into()));
    }
    if spec.base.config.kind() != ParticleKind::Electron {
        return Err(Error::Domain(
            "spin_expectation describes electron states; use polarization_vector for photons"
                .into(),
        ));
    }
    let angle = 2.0 * shifts.delta_beta_so * z;
    let mu = spec.mu() as f64;
    Ok([0.5 * angle.cos(), 0.5 * mu * angle.sin(), 0.0])
}

/// Axial period pi / |dB_SO| of the rotating orbital pattern.
pub fn beat_length(shifts: &ShiftBreakdown) -> Result<f64> {
    if shifts.delta_beta_so <= 0.0 {
        return Err(Error::InfiniteBeat);
    }
    Ok(std::f64::consts::PI / shifts.delta_beta_so)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{match_electron_to_photon, ParticleConfig};
    use crate::modesolver::ModeIndex;
    use crate::perturb::diagonal_shift;
    use crate::medium::Profile;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn photon_at(r: f64) -> ParticleConfig {
        let n0 = 1.46;
        let lambda0 = 632.8e-9;
        let delta = 0.014;
        let lg = lambda0 / (2.0 * std::f64::consts::PI * n0);
        ParticleConfig::photon(delta, r * lg / delta.sqrt(), n0, lambda0).unwrap()
    }

    fn photon_pair(r: f64, m_ell: i32, sigma: i32, kind: PairKind) -> (SuperpositionSpec, ShiftBreakdown, ModeSolution) {
        let cfg = photon_at(r);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, m_ell, sigma).unwrap()).unwrap();
        let shifts = diagonal_shift(&mode, &Profile::step()).unwrap();
        let spec = SuperpositionSpec::new(
            mode.clone(),
            kind,
            std::f64::consts::FRAC_PI_2,
            0.0,
        )
        .unwrap();
        (spec, shifts, mode)
    }

    #[test]
    fn mode_phase_basics() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, 2, 1).unwrap()).unwrap();
        let shifts = diagonal_shift(&mode, &Profile::step()).unwrap();
        let p0 = mode_phase(&mode, &shifts, 0.0);
        assert_eq!(p0, num_complex::Complex64::new(1.0, 0.0));
        for &z in &[0.1, 1.7, 42.0] {
            assert_abs_diff_eq!(mode_phase(&mode, &shifts, z).norm(), 1.0, epsilon = 1e-14);
        }
        // partners with opposite sigma mu land on opposite half-turn phases
        let z = std::f64::consts::PI / shifts.delta_beta_so;
        let partner = mode.with_labels(2, -1).unwrap();
        let a = mode_phase(&mode, &shifts, z);
        let b = mode_phase(&partner, &shifts, z);
        assert_abs_diff_eq!((a / b).arg().abs(), 0.0, epsilon = 1e-9); // 2 pi apart
    }

    #[test]
    fn evolve_z_rotates_polarization() {
        let (spec, shifts, _) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let z = std::f64::consts::FRAC_PI_4 / shifts.delta_beta_so;
        let pol = polarization_vector(&spec, &shifts, z).unwrap();
        let c = std::f64::consts::FRAC_PI_4.cos();
        assert_abs_diff_eq!(pol[0], c, epsilon = 1e-12);
        assert_abs_diff_eq!(pol[1], c, epsilon = 1e-12);

        let state = evolve_z(&spec, &shifts, 0.0).unwrap();
        assert_abs_diff_eq!(state.bloch_vector[0], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sense_laws() {
        let z = 1.0;
        let (plus, shifts, _) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let (minus, _, _) = photon_pair(5.0, -2, 1, PairKind::SamPair);
        let a = evolve_z(&plus, &shifts, z).unwrap();
        let b = evolve_z(&minus, &shifts, z).unwrap();
        // flipping mu negates dPhi/dz
        assert_abs_diff_eq!(a.bloch_vector[1], -b.bloch_vector[1], epsilon = 1e-12);
        assert_abs_diff_eq!(a.bloch_vector[0], b.bloch_vector[0], epsilon = 1e-12);

        // flipping sigma reverses the OAM precession sense
        let (oam_up, s_up, _) = photon_pair(5.0, 2, 1, PairKind::OamPair);
        let (oam_dn, s_dn, _) = photon_pair(5.0, 2, -1, PairKind::OamPair);
        let u = evolve_z(&oam_up, &s_up, z).unwrap();
        let d = evolve_z(&oam_dn, &s_dn, z).unwrap();
        assert_abs_diff_eq!(u.bloch_vector[1], -d.bloch_vector[1], epsilon = 1e-12);
    }

    #[test]
    fn theta_is_invariant_and_norm_conserved() {
        let (spec, shifts, _) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let spec = spec.with_bloch(1.1, 0.3).unwrap();
        for i in 0..100 {
            let state = evolve_z(&spec, &shifts, i as f64 * 0.37).unwrap();
            assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
            let (theta, _) = state.to_angles();
            assert_abs_diff_eq!(theta, 1.1, epsilon = 1e-12);
        }
    }

    #[test]
    fn composition_law() {
        let (spec, shifts, _) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let spec = spec.with_bloch(1.0, 0.5).unwrap();
        let (z1, z2) = (0.013, 0.029);
        let direct = evolve_z(&spec, &shifts, z1 + z2).unwrap();
        let first = evolve_z(&spec, &shifts, z1).unwrap();
        let (theta, phi) = first.to_angles();
        let chained = spec.with_bloch(theta, phi.rem_euclid(2.0 * std::f64::consts::PI)).unwrap();
        let second = evolve_z(&chained, &shifts, z2).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(
                direct.bloch_vector[i],
                second.bloch_vector[i],
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn electron_spin_rotates_twice_as_fast() {
        let photon = photon_at(5.0);
        let electron = match_electron_to_photon(&photon, 10.0).unwrap();
        let pmode = ModeSolution::solve(&photon, ModeIndex::new(1, 2, 1).unwrap()).unwrap();
        let emode = ModeSolution::solve(&electron, ModeIndex::new(1, 2, 1).unwrap()).unwrap();
        let pshift = diagonal_shift(&pmode, &Profile::step()).unwrap();
        let espec = SuperpositionSpec::new(emode, PairKind::SamPair, std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        let pspec = SuperpositionSpec::new(pmode, PairKind::SamPair, std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        // compare at equal |dB_SO| by reusing the photon's shifts for both
        let z = 0.2 / pshift.delta_beta_so;
        let pol = polarization_vector(&pspec, &pshift, z).unwrap();
        let spin = spin_expectation(&espec, &pshift, z).unwrap();
        let pol_angle = pol[1].atan2(pol[0]);
        let spin_angle = spin[1].atan2(spin[0]);
        assert_relative_eq!(spin_angle, 2.0 * pol_angle, max_relative = 1e-12);
        assert_abs_diff_eq!(spin[0] * spin[0] + spin[1] * spin[1], 0.25, epsilon = 1e-14);
        assert_eq!(spin_expectation(&pspec, &pshift, z).is_err(), true);
        assert!(polarization_vector(&espec, &pshift, z).is_err());
    }

    #[test]
    fn evolve_t_reduces_and_substitutes() {
        let (spec, shifts, mode) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let spec = spec.with_bloch(0.8, 0.4).unwrap();
        // t = 0 reduces to evolve_z exactly
        let z = 0.6 / shifts.delta_beta_so;
        let a = evolve_t(&spec, &shifts, &mode, z, 0.0).unwrap();
        let b = evolve_z(&spec, &shifts, z).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(a.bloch_vector[i], b.bloch_vector[i], epsilon = 1e-14);
        }
        // |d omega| definition
        let dw = delta_omega(&mode, &shifts);
        assert_relative_eq!(
            dw,
            mode.config.angular_frequency() / mode.beta0 * shifts.delta_beta_so,
            max_relative = 1e-15
        );
        // substitution |dB_SO| z -> |d omega| t at z = 0
        let t = 0.37 / dw;
        let z_sub = 0.37 / shifts.delta_beta_so;
        let at_t = evolve_t(&spec, &shifts, &mode, 0.0, t).unwrap();
        let at_z = evolve_z(&spec, &shifts, z_sub).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(at_t.bloch_vector[i], at_z.bloch_vector[i], epsilon = 1e-10);
        }
        // full period in t returns the Bloch vector
        let start = evolve_t(&spec, &shifts, &mode, 0.0, 0.0).unwrap();
        let period = evolve_t(&spec, &shifts, &mode, 0.0, 2.0 * std::f64::consts::PI / dw).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(start.bloch_vector[i], period.bloch_vector[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn beat_length_values() {
        let (_, shifts, _) = photon_pair(5.0, 2, 1, PairKind::SamPair);
        let l = beat_length(&shifts).unwrap();
        assert_relative_eq!(l, std::f64::consts::PI / shifts.delta_beta_so, max_relative = 1e-15);

        let mut silent = shifts.clone();
        silent.delta_beta_so = 0.0;
        assert!(matches!(beat_length(&silent), Err(Error::InfiniteBeat)));

        let mut unit = shifts;
        unit.delta_beta_so = std::f64::consts::PI;
        assert_abs_diff_eq!(beat_length(&unit).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_m_ell_rejected_for_precession() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, 0, 1).unwrap()).unwrap();
        assert!(SuperpositionSpec::new(mode, PairKind::SamPair, 1.0, 0.0).is_err());
    }

    #[test]
    fn photon_m1_refused() {
        let cfg = photon_at(5.0);
        let mode = ModeSolution::solve(&cfg, ModeIndex::new(1, 1, 1).unwrap()).unwrap();
        // shifts cannot even be computed for it; fabricate one to reach evolve
        let donor = ModeSolution::solve(&cfg, ModeIndex::new(1, 2, 1).unwrap()).unwrap();
        let shifts = diagonal_shift(&donor, &Profile::step()).unwrap();
        let spec = SuperpositionSpec::new(mode, PairKind::SamPair, 1.0, 0.0).unwrap();
        assert!(matches!(
            evolve_z(&spec, &shifts, 1.0),
            Err(Error::PhotonMEllOne)
        ));
    }
}
