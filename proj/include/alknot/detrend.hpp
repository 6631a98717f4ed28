#pragma once

#include <span>
#include <string>
#include <vector>

#include "alknot/errors.hpp"

namespace alknot {

/// Deterministic component of the model: none, a constant, or a linear trend,
/// i.e. z_t = (), (1), or (1, t).
enum class DeterministicKind { none, constant, linear_trend };

std::string to_string(DeterministicKind kind);
DeterministicKind deterministic_kind_from_string(const std::string& name);

/// First-difference adjustment:
///   none         -> identity
///   constant     -> y_t - y_1
///   linear_trend -> y_t - y_1 - (t/T)(y_T - y_1),  t = 1..T
/// The constant case pins the first element to zero, the trend case the last.
std::vector<double> fd_adjust(std::span<const double> y, DeterministicKind kind);

/// Residuals of the least-squares regression of y on z_t (identity for none).
std::vector<double> ols_adjust(std::span<const double> y, DeterministicKind kind);

/// ERS-style local alternative used for quasi-differencing: -7 for a
/// constant, -13.5 for a linear trend.
double default_gls_cbar(DeterministicKind kind);

/// GLS (quasi-difference) adjustment: with a-bar = 1 + c_bar/T, regress the
/// quasi-differenced series on the quasi-differenced z_t and subtract the
/// fitted deterministic part from the original series. kind must not be none.
std::vector<double> gls_adjust(std::span<const double> y, DeterministicKind kind,
                               double c_bar);

inline std::vector<double> gls_adjust(std::span<const double> y,
                                      DeterministicKind kind) {
  return gls_adjust(y, kind, default_gls_cbar(kind));
}

}  // namespace alknot
