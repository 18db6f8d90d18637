#pragma once

#include "nilspec/pair_spec.hpp"
#include "nilspec/weyl.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <vector>

namespace nilspec {

// Thrown when h_m is not an eigenvector of a quantized invariant.
struct NotEigenvector : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock-model spectral data of one pair. All exact arithmetic; results for the
// stored invariants are cached (thread-safe).
class FockContext {
public:
    explicit FockContext(const PairSpec& pair) : pair_(pair) {}

    const PairSpec& pair() const { return pair_; }

    // Quantized operator of the central restriction q(v) = p(v, A). The
    // invariant must be free of central variables after restriction; for a
    // mixed or central invariant pass the restriction, not the raw polynomial.
    WeylOp rho_op(const Invariant& inv) const;

    // Exact eigenvalue of rho_op(q) on h_m: quantize(q).h_m = mu(m) h_m.
    // Throws NotEigenvector if h_m is not an eigenvector (never for a valid
    // pair) and std::invalid_argument if m has the wrong length or a negative
    // entry. The eigenvalue of a real invariant is real, hence a rational.
    Rat eigenvalue_mu(const Invariant& inv, const std::vector<long>& m) const;
    Rat eigenvalue_mu(int inv_index, const std::vector<long>& m) const;  // cached

    // Type I eigenvalue D_p(lambda, m) = lambda^z (-2 lambda)^{s/2} mu(m),
    // exact for rational lambda > 0.
    Rat eigenvalue_typeI_exact(int inv_index, const Rat& lambda, const std::vector<long>& m) const;
    double eigenvalue_typeI(int inv_index, double lambda, const std::vector<long>& m) const;

    // The polynomial p~ with p~(m) = eigenvalue_mu(inv, m), obtained by exact
    // tensor Newton interpolation on the grid {0..s/2}^rank and validated on
    // ten off-grid lattice points. Variables: v_0..v_{rank-1} of VarSpace{rank, 0}
    // standing for m_1..m_rank. Total degree <= s/2.
    MultiPoly eigen_poly(const Invariant& inv) const;
    MultiPoly eigen_poly(int inv_index) const;  // cached

    // Fast type I eigenvalue through the cached interpolant (identical values).
    double eigenvalue_typeI_interp(int inv_index, double lambda, const std::vector<long>& m) const;

    // Type II eigenvalue p(ib): v -> i b, w -> i conj(b), t -> 0.
    std::complex<double> eigenvalue_typeII(int inv_index, const Eigen::VectorXcd& b) const;
    Scalar eigenvalue_typeII_exact(const Invariant& inv, const std::vector<Scalar>& b) const;

    // Exact homogeneity law D(lambda) = lambda^{s/2 + z} D(1).
    bool scaling_check(int inv_index, const Rat& lambda, const std::vector<long>& m) const;

private:
    const PairSpec& pair_;
    mutable std::mutex lock_;
    mutable std::map<std::pair<int, std::vector<long>>, Rat> mu_cache_;
    mutable std::map<int, MultiPoly> poly_cache_;
};

// Exact interpolation used by eigen_poly, exposed for ad-hoc invariants such
// as non-generator powers: values(m) must be exact on {0..degree_bound}^rank.
MultiPoly interpolate_lattice(int rank, long degree_bound,
                              const std::function<Rat(const std::vector<long>&)>& values);

}  // namespace nilspec
