#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

namespace evanesim {

inline constexpr double kSpeedOfLight = 299792458.0;     // m/s
inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s
inline constexpr double kPi = std::numbers::pi;

inline constexpr double degrees(double deg) { return deg * kPi / 180.0; }
inline constexpr double to_degrees(double rad) { return rad * 180.0 / kPi; }

// Sign and normalization conventions shared by every module. The text is
// hashed into the provenance block of each result bundle, so editing it
// changes the fingerprint of all emitted files.
inline constexpr std::string_view kConventionLedger =
    "time e^{-i w t}; fields ~ e^{+i k_z z}; "
    "k_z principal branch Re>=0, Im>=0 (decaying evanescent tail); "
    "transfer matrix maps (forward, backward) amplitudes left->right; "
    "propagation diag(e^{+i k_z d}, e^{-i k_z d}); r = -m21/m22, t = det/m22; "
    "t referenced at the exit face of the last layer (local phase); "
    "admittance p: TE k_z, TM k_z/n^2 (H field), waveguide TE10 k_z, "
    "acoustic k/rho (pressure), quantum k/m (psi); "
    "flux |r|^2 + Re(p_exit)/Re(p_entry) |t|^2 = 1; "
    "phase time tau = d(arg)/d(omega); GH shift D = -d(arg r)/d(k_x); "
    "quantum natural units hbar = m = 1, omega == E";

/// 64-bit FNV-1a hash of the convention ledger text.
std::uint64_t convention_hash();

}  // namespace evanesim
