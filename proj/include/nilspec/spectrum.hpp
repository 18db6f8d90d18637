#pragma once

#include "nilspec/moment.hpp"
#include "nilspec/sweep.hpp"

#include <cstdint>
#include <variant>

namespace nilspec {

// Spectrum parameters: type I is (lambda > 0, m), type II a point b of V
// (the center evaluated at 0).
struct TypeI {
    double lambda = 1.0;
    std::vector<long> m;
};
struct TypeII {
    Eigen::VectorXcd b;
};
using SpectrumParam = std::variant<TypeI, TypeII>;

// Eigenvalue model: one real entry per invariant, in the stored enumeration.
// Type I values are exact in m through the cached eigenvalue polynomial; any
// imaginary leak above 1e-9 (type II path) aborts.
Eigen::VectorXd phi_embed(const FockContext& fock, const SpectrumParam& s);

// Orbit model representative: type I solves the spherical point and returns
// (sqrt(lambda) v_m, lambda A); type II returns (b, 0).
NStarPoint psi_orbit(const PairSpec& pair, const SpectrumParam& s, std::uint64_t seed = 0);

// Invariant values at the representative; imaginary parts must stay under
// 1e-9 relative.
Eigen::VectorXd orbit_signature(const PairSpec& pair, const NStarPoint& pt);

double phi_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Euclidean distance after rescaling component i by x -> sign(x) |x|^{1/deg_i},
// deg_i = s_i + z_i (degree-homogeneity normalization).
double orbit_distance(const PairSpec& pair, const Eigen::VectorXd& sig_a,
                      const Eigen::VectorXd& sig_b);

enum class Regime { ItoI, ItoII, IItoII };
enum class Schedule {
    Standard,      // I-I: lambda = 1 + 1/n; I-II: lambda = 1/n, m = round(n/8) m_dir;
                   // II-II: b(n) = b + (1/4n^2) e_1
    Minus,         // I-I only: lambda = 1 - 1/n
    OscillatingM,  // I-I only: m alternates, violating eventual constancy
    Linear         // II-II only: b(n) = b + (1/n) e_1
};

const char* regime_name(Regime r);
const char* schedule_name(Schedule s);

struct ParamSequence {
    Regime regime = Regime::ItoI;
    Schedule schedule = Schedule::Standard;
    std::vector<long> ns;
    std::vector<SpectrumParam> params;
    SpectrumParam limit;
    // Type I scaffolding reused by the experiment: m(n) = k(n) * m_dir with the
    // base spherical point solved at m_dir (exact scaling ray v_k = sqrt(k) v_1).
    std::vector<long> m_dir;
    Eigen::VectorXcd base_v;
};

// Deterministic sequence with its declared limit. Throws std::invalid_argument
// for an invalid regime (I-II with lambda(n) * m(n) unbounded is rejected) or
// an unsupported regime/schedule combination.
ParamSequence make_sequence(const PairSpec& pair, Regime regime, long n_max,
                            Schedule schedule = Schedule::Standard, std::uint64_t seed = 0);

// Factored type I eigenvalue D_i = c_i lambda^{e_i} q_i(m): c_i collects the
// (-2)^{s/2} normalization and the rational content of the eigenvalue
// polynomial, q_i is the primitive integer-coefficient polynomial left over.
struct Calibration {
    std::string invariant;
    Rat c;
    long lambda_exponent = 0;
    MultiPoly q;  // over VarSpace{rank, 0}, variables standing for m_1..m_r
};
std::vector<Calibration> calibration_constants(const PairSpec& pair, const FockContext& fock);

struct ConvergenceRow {
    long n = 0;
    double lambda = 0.0;      // 0 for type II parameters
    std::vector<long> m;      // all-zero for type II parameters
    double d_phi = 0.0;
    double d_psi = 0.0;
};

struct ConvergenceReport {
    Regime regime = Regime::ItoI;
    Schedule schedule = Schedule::Standard;
    std::vector<ConvergenceRow> rows;
    std::string verdict;            // "co-convergent" | "regime-violation" | "fail: ..."
    long stabilization_index = -1;  // I-I: first n from which m(n) is constant
    double tail_max_phi = 0.0;      // maxima over the last half of the sequence
    double tail_max_psi = 0.0;
    double tail_ratio_phi_psi = 0.0;  // max d_phi/d_psi over the tail (both > 0)
    double tail_ratio_psi_phi = 0.0;
    double mixed_max_final = 0.0;    // I-II: max |mixed-invariant eigenvalue| at n_max
    double lower_order_final = 0.0;  // I-II: max lower-order eigenvalue defect at n_max
    long checkpoint_n = 0;           // verdict checkpoint: largest n <= 1000
    double checkpoint_d_phi = 0.0;
    double checkpoint_d_psi = 0.0;
    double checkpoint_tol = 0.0;
    std::vector<Calibration> calibration;
    std::vector<std::string> notes;

    double d_phi_at(long n) const;
    double d_psi_at(long n) const;
};

// Per-n distances to the declared limit plus the regime checks. Values do not
// depend on `exec`; the parallel path fills disjoint row slots.
ConvergenceReport convergence_experiment(const PairSpec& pair, const FockContext& fock,
                                         const ParamSequence& seq, Exec exec = Exec::Serial,
                                         std::uint64_t seed = 0);

// Threshold the verdict applies at the n = 10^3 checkpoint for each regime.
double verdict_tolerance(Regime r);

struct InjectivityReport {
    int count = 0;
    double min_phi_gap = 0.0;  // smallest pairwise sup-norm gap
    double min_psi_gap = 0.0;
    bool ok = false;
};

// Deterministic separated parameters (half type I, half type II with distinct
// singular profiles); verifies that neither embedding identifies any two.
InjectivityReport injectivity_scan(const PairSpec& pair, const FockContext& fock, int count,
                                   std::uint64_t seed = 0, double tol = 1e-6,
                                   Exec exec = Exec::Serial);

}  // namespace nilspec
