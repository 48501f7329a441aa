#pragma once

// Calibration constants recorded once from the seeded pinning runs (see
// README, "Pinned regression constants") and enforced as regression bounds
// from then on. Touch only when a corpus or its seeds change, and record
// the new values from a fresh pinning run.

namespace logeuler::pinned {

// sup ratio of the log-interpolation inequality over the 100-field corpus
// (64^2, band [1,10], decay 2, amplitudes 1e-2..1e2; measured 0.1589)
inline constexpr double kLogInterpSupRatio = 0.20;

// sup ratio of the Kato-Ponce commutator inequality over the 50-pair corpus
// (64^2, band [1,10], decay 2, s = 2.5; measured 0.4333)
inline constexpr double kKatoPonceSupRatio = 0.55;

// C0 of the Gronwall comparison envelope, fitted at t = 0.1 on the gamma
// sweep (seed 11, 64^2, amplitude 0.3; fit 3.76e-4, max-over-t 5.07e-4)
inline constexpr double kGammaEnvelopeC0 = 8.0e-4;

// sup_t ||theta(t)||_{H^s} / ||theta0||_{H^s} for the two-blob transport run
// (256^2, radius 0.3, |amplitude| 1, t <= 1; measured 1.0000)
inline constexpr double kSupportHsGrowthMax = 1.25;

} // namespace logeuler::pinned
