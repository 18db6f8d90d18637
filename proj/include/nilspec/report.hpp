#pragma once

#include "nilspec/spectrum.hpp"

#include <string>

namespace nilspec {

// Shortest fixed formatting used for every floating-point number we emit:
// twelve significant digits, C locale, byte-stable for equal inputs.
std::string fmt12(double x);

std::string json_escape(const std::string& s);

// Polynomial over VarSpace{r, 0} printed in the variables m1..mr.
std::string m_poly_str(const MultiPoly& q);

// CSV with columns n, lambda, m1..mr, d_phi, d_psi.
std::string convergence_csv(const PairSpec& pair, const ConvergenceReport& rep);

// JSON summary: regime, verdict, stabilization_index, calibration_constants
// and the checkpoint/tail statistics. Hand-rendered for byte determinism.
std::string convergence_summary_json(const PairSpec& pair, const ConvergenceReport& rep);

}  // namespace nilspec
