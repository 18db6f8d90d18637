#pragma once

#include "nilspec/scalar.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilspec {

struct VarMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Variable space V + center: holomorphic v_0..v_{n-1}, antiholomorphic w_0..w_{n-1}
// (formal conjugates of the v's), central t_0..t_{d-1}.
// Flat variable indices: [0,n) = v, [n,2n) = w, [2n,2n+d) = t.
struct VarSpace {
    int n = 0;
    int d = 0;

    int total() const { return 2 * n + d; }
    bool is_v(int idx) const { return idx >= 0 && idx < n; }
    bool is_w(int idx) const { return idx >= n && idx < 2 * n; }
    bool is_t(int idx) const { return idx >= 2 * n && idx < total(); }
    int v(int i) const { return i; }
    int w(int i) const { return n + i; }
    int t(int a) const { return 2 * n + a; }

    friend bool operator==(const VarSpace& a, const VarSpace& b) = default;
};

std::string var_name(const VarSpace& sp, int idx);

using Mono = std::vector<std::uint32_t>;

long mono_total_degree(const Mono& e);
long mono_vw_degree(const VarSpace& sp, const Mono& e);
long mono_v_degree(const VarSpace& sp, const Mono& e);
long mono_w_degree(const VarSpace& sp, const Mono& e);
long mono_t_degree(const VarSpace& sp, const Mono& e);

// Sparse multivariate polynomial with Gaussian-rational coefficients.
// Canonical form: ordered term map, no explicit zero coefficients.
class MultiPoly {
public:
    VarSpace space;
    std::map<Mono, Scalar> terms;

    MultiPoly() = default;
    explicit MultiPoly(VarSpace sp) : space(sp) {}

    static MultiPoly zero(VarSpace sp) { return MultiPoly(sp); }
    static MultiPoly constant(VarSpace sp, const Scalar& c);
    static MultiPoly variable(VarSpace sp, int idx);
    static MultiPoly monomial(VarSpace sp, const Mono& e, const Scalar& c);

    bool is_zero() const { return terms.empty(); }
    std::size_t term_count() const { return terms.size(); }
    Scalar coeff(const Mono& e) const;
    void add_term(const Mono& e, const Scalar& c);

    long total_degree() const;  // zero polynomial: -1
    long v_degree() const;
    long w_degree() const;
    long t_degree() const;
    long vw_degree() const;

    bool is_homogeneous(long k) const;                 // total degree
    bool is_vw_homogeneous(long s) const;              // every term has vw-degree s
    bool is_t_homogeneous(long z) const;
    bool is_bidegree(long a, long b) const;            // v-degree a and w-degree b per term
    bool uses_only_v() const;                          // no w, no t variables

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly scaled(const Scalar& c) const;
    MultiPoly pow(long k) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly derivative(int idx) const;

    // Image of each source variable must be given, as a polynomial over `target`.
    MultiPoly substitute(const VarSpace& target, const std::vector<MultiPoly>& images) const;

    // Substitution within the same space: images for selected variables, identity elsewhere.
    MultiPoly substitute_partial(const std::map<int, MultiPoly>& images) const;

    // Numeric evaluation with the pairing w_i = conj(v_i) enforced by construction.
    std::complex<double> evaluate(const std::vector<std::complex<double>>& v_vals,
                                  const std::vector<double>& t_vals) const;
    Scalar evaluate_exact(const std::vector<Scalar>& v_vals,
                          const std::vector<Rat>& t_vals) const;

    // Raw evaluation, one value per variable, no conjugation convention.
    std::complex<double> evaluate_vars(const std::vector<std::complex<double>>& vals) const;
    Scalar evaluate_vars_exact(const std::vector<Scalar>& vals) const;

    // v_i -> i b_i, w_i -> i conj(b_i), t_a -> 0.
    std::complex<double> formal_i_eval(const std::vector<std::complex<double>>& b) const;
    Scalar formal_i_eval_exact(const std::vector<Scalar>& b) const;

    MultiPoly homogeneous_component(long k) const;
    MultiPoly top_term() const;  // top_term(0) = 0, top_term(constant) = the constant

    // Formal conjugate: coefficients conjugated, v and w exponents swapped.
    // A polynomial is real-valued on { w = conj(v), t real } iff bar() == *this.
    MultiPoly bar() const;

    std::string str() const;

private:
    void check_space(const MultiPoly& o) const;
};

// Real-linear map on V + center, expressed on the formal variables:
// (Z x)_j = sum_k M[j][k] x_k. Complex-linear actions on V fill the w-block
// with the conjugate of the v-block; central rows must stay real.
struct LinearMap {
    VarSpace space;
    std::vector<std::vector<Scalar>> M;

    explicit LinearMap(VarSpace sp)
        : space(sp), M(sp.total(), std::vector<Scalar>(sp.total())) {}

    static LinearMap identity(VarSpace sp);
    // B is n x n complex (row-major), acting on v; T is d x d real, acting on t.
    static LinearMap from_complex(VarSpace sp,
                                  const std::vector<std::vector<Scalar>>& B,
                                  const std::vector<std::vector<Rat>>& T);

    LinearMap scaled(const Scalar& c) const;

    // Image of variable idx as a degree-one polynomial.
    MultiPoly apply_to_variable(int idx) const;
};

// Derivation action (Z . p)(x) = -d/ds|_0 p(exp(s Z) x) = -sum_j (Z x)_j d_j p.
MultiPoly infinitesimal_action(const LinearMap& Z, const MultiPoly& p);

} // namespace nilspec
