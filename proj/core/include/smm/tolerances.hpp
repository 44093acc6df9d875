#pragma once

#include <cstdlib>
#include <string>

namespace smm::tol {

// Centralized tolerance policy for double precision at n <= 200.
inline constexpr double sym_tol = 1e-12;          // relative symmetry check
inline constexpr double ortho_tol = 1e-10;        // ||Q^T Q - I||_F
inline constexpr double eigh_tol = 1e-10;         // relative reconstruction
inline constexpr double chol_tol = 1e-12;         // relative ||R^T R - A||_F
inline constexpr double qr_tol = 1e-12;           // relative ||QR - M||_F
inline constexpr double rank_tol_factor = 1e-10;  // times 2-norm estimate
inline constexpr double clamp_eps_factor = 1e-14; // times max eigenvalue
inline constexpr double param_tol = 1e-10;        // min gap between model params
inline constexpr double int_tol = 1e-6;           // integrality of multiplicities
inline constexpr double extr_tol = 1e-9;          // extraction roundtrip
inline constexpr double gen_tol_factor = 1e-9;    // times ||a|| * n
inline constexpr double cond_warn = 1e8;          // SPD condition warning
inline constexpr double cond_fail = 1e12;         // SPD condition hard error

inline constexpr double fallback_membership = 1e-9;

/// Default membership tolerance; SMM_DEFAULT_TOL overrides.
inline double default_membership() {
  if (const char* s = std::getenv("SMM_DEFAULT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) return v;
  }
  return fallback_membership;
}

}  // namespace smm::tol
