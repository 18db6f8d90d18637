#pragma once

#include "nilspec/fock.hpp"

#include <cstdint>

namespace nilspec {

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Values Im tau(v)(Z_j) over kA_basis; tau(v)(Z) = -1/2 <v, Z v> is purely
// imaginary, so the imaginary parts carry everything.
Eigen::VectorXd moment_map(const PairSpec& pair, const Eigen::VectorXcd& v);

// Im of the target functional of type m: -sum_i m_i weights[i][j] on the
// torus entries, zero on the rest of kA_basis.
Eigen::VectorXd alpha_target(const PairSpec& pair, const std::vector<long>& m);

struct SphericalPoint {
    Eigen::VectorXcd v;
    std::vector<long> m;
    double residual = 0.0;   // sup-norm of moment_map(v) - alpha_target(m)
    bool converged = false;
    int starts_converged = 0;
};

// Damped Gauss-Newton over 32 random starts (deterministic in `seed`), each
// scaled to |v|^2 = 2 deg h_m. Among converged starts the one maximizing
// |h_m(v)| is returned. Throws NoConvergence when no start reaches `tol`.
SphericalPoint solve_spherical_point(const PairSpec& pair, const std::vector<long>& m,
                                     std::uint64_t seed = 0, double tol = 1e-9,
                                     int starts = 32);

// Single damped Gauss-Newton run from the given start (no multistart); used
// for warm starts along exact scaling rays. Throws NoConvergence on failure.
SphericalPoint polish_spherical_point(const PairSpec& pair, const std::vector<long>& m,
                                      const Eigen::VectorXcd& v0, double tol = 1e-9);

struct WellAdapted {
    bool ok = false;
    double hm_abs = 0.0;       // |h_m(v)|
    double max_defect = 0.0;   // max_i |2 d_i h_m(v) - conj(v_i) h_m(v)|
};

// h_m(v) != 0 (over 1e-9) and the lowering identities 2 d_i h_m = conj(v_i) h_m
// within relative 1e-6 of |h_m(v)|.
WellAdapted is_well_adapted(const PairSpec& pair, const Eigen::VectorXcd& v,
                            const std::vector<long>& m);

// The point (sqrt(lambda) v_m, lambda A) of n*.
NStarPoint spherical_point_typeI(const PairSpec& pair, double lambda,
                                 const Eigen::VectorXcd& v_m);

enum class LemmaStatus { Pass, Fail, Skipped };

struct LemmaTopResult {
    LemmaStatus status = LemmaStatus::Fail;
    std::string reason;     // populated when skipped
    double lhs = 0.0;       // lambda^z (-2 lambda)^{s/2} [top of mu](m)
    double rhs = 0.0;       // (-1)^{s/2} p(sqrt(lambda) v_m, lambda A)
    double defect = 0.0;    // |lhs - rhs| / max(1, |lhs|, |rhs|)
    SphericalPoint point;
};

// Top-degree law at the spherical point of type (lambda, m). A well-adapted
// violation is reported as Skipped with the reason, not as a failure.
LemmaTopResult verify_lemma_top(const PairSpec& pair, const FockContext& fock,
                                const Invariant& inv, double lambda,
                                const std::vector<long>& m, double tol = 1e-6,
                                std::uint64_t seed = 0);

}  // namespace nilspec
