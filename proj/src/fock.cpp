#include "nilspec/fock.hpp"

#include <functional>

namespace nilspec {

namespace {

// p(v, A): substitute the central coordinates by the base point.
MultiPoly restrict_to_A(const PairSpec& pair, const MultiPoly& p) {
    std::map<int, MultiPoly> images;
    for (int a = 0; a < pair.d; ++a)
        images[pair.space.t(a)] = MultiPoly::constant(pair.space, Scalar(pair.A[a]));
    return p.substitute_partial(images);
}

void check_m(const PairSpec& pair, const std::vector<long>& m) {
    if (static_cast<int>(m.size()) != pair.rank())
        throw std::invalid_argument("m has length " + std::to_string(m.size()) +
                                    ", expected the rank " + std::to_string(pair.rank()));
    for (long mi : m)
        if (mi < 0) throw std::invalid_argument("m has a negative entry");
}

}  // namespace

WeylOp FockContext::rho_op(const Invariant& inv) const {
    if (inv.z != 0 || inv.poly.t_degree() != 0)
        throw std::invalid_argument("rho_op: invariant " + inv.name +
                                    " involves central variables; pass its central restriction");
    return quantize(inv.poly);
}

Rat FockContext::eigenvalue_mu(const Invariant& inv, const std::vector<long>& m) const {
    check_m(pair_, m);
    const MultiPoly h = pair_.h_m(m);
    const MultiPoly q = restrict_to_A(pair_, inv.poly);
    const MultiPoly res = weyl_apply(quantize(q), h);
    if (res.is_zero()) return Rat(0);

    const auto& [mono, c] = *h.terms.begin();
    const Scalar mu = res.coeff(mono) / c;
    if (!mu.is_real())
        throw NotEigenvector("eigenvalue of " + inv.name + " on h_m is not real");
    if (!(h.scaled(mu) == res))
        throw NotEigenvector("h_m is not an eigenvector of " + inv.name);
    return mu.re;
}

Rat FockContext::eigenvalue_mu(int inv_index, const std::vector<long>& m) const {
    check_m(pair_, m);
    const auto key = std::make_pair(inv_index, m);
    {
        std::lock_guard<std::mutex> g(lock_);
        auto it = mu_cache_.find(key);
        if (it != mu_cache_.end()) return it->second;
    }
    Rat mu = eigenvalue_mu(pair_.invariants.at(inv_index), m);
    std::lock_guard<std::mutex> g(lock_);
    return mu_cache_.emplace(key, std::move(mu)).first->second;
}

Rat FockContext::eigenvalue_typeI_exact(int inv_index, const Rat& lambda,
                                        const std::vector<long>& m) const {
    if (lambda <= 0) throw std::invalid_argument("type I requires lambda > 0");
    const Invariant& inv = pair_.invariants.at(inv_index);
    return rat_pow(lambda, inv.z) * rat_pow(Rat(-2) * lambda, inv.s / 2) *
           eigenvalue_mu(inv_index, m);
}

double FockContext::eigenvalue_typeI(int inv_index, double lambda,
                                     const std::vector<long>& m) const {
    if (!(lambda > 0)) throw std::invalid_argument("type I requires lambda > 0");
    const Invariant& inv = pair_.invariants.at(inv_index);
    return std::pow(lambda, static_cast<double>(inv.z)) *
           std::pow(-2.0 * lambda, static_cast<double>(inv.s / 2)) *
           rat_double(eigenvalue_mu(inv_index, m));
}

double FockContext::eigenvalue_typeI_interp(int inv_index, double lambda,
                                            const std::vector<long>& m) const {
    if (!(lambda > 0)) throw std::invalid_argument("type I requires lambda > 0");
    check_m(pair_, m);
    const Invariant& inv = pair_.invariants.at(inv_index);
    const MultiPoly poly = eigen_poly(inv_index);
    // The interpolation space has a w-slot per m-variable; those exponents are
    // all zero, but the evaluator still expects a full assignment.
    std::vector<Scalar> vals(2 * m.size(), Scalar(Rat(0)));
    for (std::size_t i = 0; i < m.size(); ++i) vals[i] = Scalar(Rat(m[i]));
    const Scalar mu = poly.evaluate_vars_exact(vals);
    return std::pow(lambda, static_cast<double>(inv.z)) *
           std::pow(-2.0 * lambda, static_cast<double>(inv.s / 2)) * rat_double(mu.re);
}

MultiPoly interpolate_lattice(int rank, long degree_bound,
                              const std::function<Rat(const std::vector<long>&)>& values) {
    const long nodes = degree_bound + 1;
    // Tensor of values on {0..degree_bound}^rank, odometer order.
    long total = 1;
    for (int i = 0; i < rank; ++i) total *= nodes;
    std::vector<Rat> table(total);
    std::vector<long> idx(rank, 0);
    for (long flat = 0; flat < total; ++flat) {
        table[flat] = values(idx);
        for (int i = rank - 1; i >= 0; --i) {
            if (++idx[i] < nodes) break;
            idx[i] = 0;
        }
    }

    // Divided differences along each axis (unit-spaced nodes): after the pass
    // over axis ax, table holds coefficients for the Newton basis in m_ax.
    long stride = 1;
    for (int ax = rank - 1; ax >= 0; --ax) {
        for (long base = 0; base < total; ++base) {
            if ((base / stride) % nodes != 0) continue;
            for (long k = 1; k < nodes; ++k)
                for (long j = nodes - 1; j >= k; --j) {
                    Rat& hi = table[base + j * stride];
                    hi = (hi - table[base + (j - 1) * stride]) / Rat(k);
                }
        }
        stride *= nodes;
    }

    // Newton basis polynomials N_k(x) = x (x-1) ... (x-k+1) per variable.
    const VarSpace sp{rank, 0};
    std::vector<std::vector<MultiPoly>> newton(rank);
    for (int i = 0; i < rank; ++i) {
        newton[i].push_back(MultiPoly::constant(sp, Scalar(1)));
        for (long k = 1; k < nodes; ++k) {
            MultiPoly shifted =
                MultiPoly::variable(sp, sp.v(i)) - MultiPoly::constant(sp, Scalar(Rat(k - 1)));
            newton[i].push_back(newton[i].back() * shifted);
        }
    }

    MultiPoly result = MultiPoly::zero(sp);
    std::fill(idx.begin(), idx.end(), 0L);
    for (long flat = 0; flat < total; ++flat) {
        if (!(table[flat] == 0)) {
            MultiPoly term = MultiPoly::constant(sp, Scalar(table[flat]));
            for (int i = 0; i < rank; ++i)
                if (idx[i] > 0) term = term * newton[i][idx[i]];
            result = result + term;
        }
        for (int i = rank - 1; i >= 0; --i) {
            if (++idx[i] < nodes) break;
            idx[i] = 0;
        }
    }
    return result;
}

MultiPoly FockContext::eigen_poly(const Invariant& inv) const {
    const int r = pair_.rank();
    const long bound = inv.s / 2;
    MultiPoly poly = interpolate_lattice(
        r, bound, [&](const std::vector<long>& m) { return eigenvalue_mu(inv, m); });

    if (poly.total_degree() > bound)
        throw ValidationError("eigenvalue polynomial of " + inv.name +
                              " exceeds the degree bound " + std::to_string(bound));

    // Exact agreement at ten lattice points outside the interpolation grid.
    for (int j = 0; j < 10; ++j) {
        std::vector<long> m(r);
        std::vector<Scalar> vals(2 * static_cast<std::size_t>(r), Scalar(Rat(0)));
        for (int i = 0; i < r; ++i) {
            m[i] = bound + 1 + ((j + i * (i + 2)) % 5);
            vals[static_cast<std::size_t>(i)] = Scalar(Rat(m[i]));
        }
        const Scalar at = poly.evaluate_vars_exact(vals);
        if (!at.is_real() || !(at.re == eigenvalue_mu(inv, m)))
            throw ValidationError("eigenvalue polynomial of " + inv.name +
                                  " fails off-grid validation");
    }
    return poly;
}

MultiPoly FockContext::eigen_poly(int inv_index) const {
    {
        std::lock_guard<std::mutex> g(lock_);
        auto it = poly_cache_.find(inv_index);
        if (it != poly_cache_.end()) return it->second;
    }
    MultiPoly poly = eigen_poly(pair_.invariants.at(inv_index));
    std::lock_guard<std::mutex> g(lock_);
    return poly_cache_.emplace(inv_index, std::move(poly)).first->second;
}

std::complex<double> FockContext::eigenvalue_typeII(int inv_index,
                                                    const Eigen::VectorXcd& b) const {
    const Invariant& inv = pair_.invariants.at(inv_index);
    if (b.size() != pair_.n) throw std::invalid_argument("type II point has wrong dimension");
    std::vector<std::complex<double>> bv(b.data(), b.data() + b.size());
    return inv.poly.formal_i_eval(bv);
}

Scalar FockContext::eigenvalue_typeII_exact(const Invariant& inv,
                                            const std::vector<Scalar>& b) const {
    return inv.poly.formal_i_eval_exact(b);
}

bool FockContext::scaling_check(int inv_index, const Rat& lambda,
                                const std::vector<long>& m) const {
    const Invariant& inv = pair_.invariants.at(inv_index);
    const Rat lhs = eigenvalue_typeI_exact(inv_index, lambda, m);
    const Rat rhs =
        rat_pow(lambda, inv.s / 2 + inv.z) * eigenvalue_typeI_exact(inv_index, Rat(1), m);
    return lhs == rhs;
}

}  // namespace nilspec
