#pragma once

#include <string>
#include <vector>

#include "asym/expansion.hpp"

namespace asym {

/// Render a number for display, snapping to a small-denominator rational
/// ("-22/9") when one fits within 1e-9 relative error; otherwise %.12g.
std::string pretty_number(double x);

/// Human-readable rendering of an elementary factor, e.g.
/// "t^(-22/9) * exp((2/3)t + (1/2)t^2 + (1/3)t^3)".
/// Display only; machine consumers should use the numeric report fields.
std::string factor_string(const ExpFactor& f);

/// Deterministic JSON report of an expansion (full-precision numbers).
std::string report_json(const Expansion& e,
                        const std::vector<AsymptoticColumn>& cols);

/// Plain-text report of the same content.
std::string report_text(const Expansion& e,
                        const std::vector<AsymptoticColumn>& cols);

}  // namespace asym
