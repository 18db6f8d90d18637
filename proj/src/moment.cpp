#include "nilspec/moment.hpp"

#include <random>

namespace nilspec {

namespace {

std::vector<std::complex<double>> to_std(const Eigen::VectorXcd& v) {
    return std::vector<std::complex<double>>(v.data(), v.data() + v.size());
}

// Uniform in (0,1), identical across platforms for a given engine state.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, int dim) {
    Eigen::VectorXd g(dim);
    for (int i = 0; i < dim; i += 2) {
        const double u1 = uniform01(rng), u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1)), a = 2.0 * M_PI * u2;
        g[i] = r * std::cos(a);
        if (i + 1 < dim) g[i + 1] = r * std::sin(a);
    }
    return g;
}

struct MomentSystem {
    const PairSpec& pair;
    std::vector<Eigen::MatrixXcd> H;  // -i B_j, Hermitian
    Eigen::VectorXd target;

    MomentSystem(const PairSpec& p, const std::vector<long>& m)
        : pair(p), target(alpha_target(p, m)) {
        const std::complex<double> mi(0.0, -1.0);
        for (const auto& Z : p.kA_basis) H.push_back(mi * v_action_matrix(p, Z));
    }

    Eigen::VectorXcd lift(const Eigen::VectorXd& u) const {
        Eigen::VectorXcd v(pair.n);
        for (int k = 0; k < pair.n; ++k) v[k] = {u[2 * k], u[2 * k + 1]};
        return v;
    }

    Eigen::VectorXd residual(const Eigen::VectorXd& u) const {
        const Eigen::VectorXcd v = lift(u);
        Eigen::VectorXd r(static_cast<int>(H.size()));
        for (std::size_t j = 0; j < H.size(); ++j)
            r[static_cast<int>(j)] = -0.5 * v.dot(H[j] * v).real() - target[static_cast<int>(j)];
        return r;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
        const Eigen::VectorXcd v = lift(u);
        Eigen::MatrixXd J(static_cast<int>(H.size()), 2 * pair.n);
        for (std::size_t j = 0; j < H.size(); ++j) {
            const Eigen::VectorXcd Hv = H[j] * v;
            for (int k = 0; k < pair.n; ++k) {
                J(static_cast<int>(j), 2 * k) = -Hv[k].real();
                J(static_cast<int>(j), 2 * k + 1) = -Hv[k].imag();
            }
        }
        return J;
    }
};

// Damped Gauss-Newton; returns true when the 2-norm of the residual is < tol.
bool gauss_newton(const MomentSystem& sys, Eigen::VectorXd& u, double tol) {
    double rn = sys.residual(u).norm();
    for (int iter = 0; iter < 150; ++iter) {
        if (rn < tol) return true;
        const Eigen::VectorXd R = sys.residual(u);
        const Eigen::MatrixXd J = sys.jacobian(u);
        const Eigen::VectorXd step =
            J.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-R);
        double t = 1.0;
        bool moved = false;
        for (int h = 0; h < 30; ++h, t *= 0.5) {
            const Eigen::VectorXd cand = u + t * step;
            const double cn = sys.residual(cand).norm();
            if (cn < rn) {
                u = cand;
                rn = cn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return rn < tol;
}

}  // namespace

Eigen::VectorXd moment_map(const PairSpec& pair, const Eigen::VectorXcd& v) {
    Eigen::VectorXd out(static_cast<int>(pair.kA_basis.size()));
    for (std::size_t j = 0; j < pair.kA_basis.size(); ++j) {
        const Eigen::MatrixXcd B = v_action_matrix(pair, pair.kA_basis[j]);
        out[static_cast<int>(j)] = -0.5 * v.dot(B * v).imag();
    }
    return out;
}

Eigen::VectorXd alpha_target(const PairSpec& pair, const std::vector<long>& m) {
    if (static_cast<int>(m.size()) != pair.rank())
        throw std::invalid_argument("m has wrong length");
    Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<int>(pair.kA_basis.size()));
    for (int j = 0; j < pair.torus_size; ++j) {
        long s = 0;
        for (int i = 0; i < pair.rank(); ++i) s += m[i] * pair.weights[i][j];
        t[j] = -static_cast<double>(s);
    }
    return t;
}

SphericalPoint solve_spherical_point(const PairSpec& pair, const std::vector<long>& m,
                                     std::uint64_t seed, double tol, int starts) {
    SphericalPoint best;
    best.m = m;

    const long deg = pair.weighted_degree(m);
    if (deg == 0) {
        best.v = Eigen::VectorXcd::Zero(pair.n);
        best.residual = 0.0;
        best.converged = true;
        best.starts_converged = starts;
        return best;
    }

    const MomentSystem sys(pair, m);
    const MultiPoly hm = pair.h_m(m);
    const double radius = std::sqrt(2.0 * static_cast<double>(deg));
    std::mt19937_64 rng(seed);

    double best_h = -1.0;
    for (int s = 0; s < starts; ++s) {
        Eigen::VectorXd u = gaussian_vector(rng, 2 * pair.n);
        u *= radius / u.norm();
        if (!gauss_newton(sys, u, tol)) continue;
        ++best.starts_converged;
        const Eigen::VectorXcd v = sys.lift(u);
        const double habs =
            std::abs(hm.evaluate(to_std(v), std::vector<double>(static_cast<std::size_t>(pair.d), 0.0)));
        if (habs > best_h) {
            best_h = habs;
            best.v = v;
            best.residual = (moment_map(pair, v) - sys.target).lpNorm<Eigen::Infinity>();
            best.converged = true;
        }
    }
    if (!best.converged)
        throw NoConvergence("no multistart converged for the given type");
    return best;
}

SphericalPoint polish_spherical_point(const PairSpec& pair, const std::vector<long>& m,
                                      const Eigen::VectorXcd& v0, double tol) {
    SphericalPoint pt;
    pt.m = m;
    const MomentSystem sys(pair, m);
    Eigen::VectorXd u(2 * pair.n);
    for (int k = 0; k < pair.n; ++k) {
        u[2 * k] = v0[k].real();
        u[2 * k + 1] = v0[k].imag();
    }
    if (!gauss_newton(sys, u, tol))
        throw NoConvergence("polish did not converge from the given start");
    pt.v = sys.lift(u);
    pt.residual = (moment_map(pair, pt.v) - sys.target).lpNorm<Eigen::Infinity>();
    pt.converged = true;
    pt.starts_converged = 1;
    return pt;
}

WellAdapted is_well_adapted(const PairSpec& pair, const Eigen::VectorXcd& v,
                            const std::vector<long>& m) {
    WellAdapted wa;
    const MultiPoly hm = pair.h_m(m);
    const auto vv = to_std(v);
    const std::vector<double> t0(static_cast<std::size_t>(pair.d), 0.0);
    const std::complex<double> hv = hm.evaluate(vv, t0);
    wa.hm_abs = std::abs(hv);
    for (int i = 0; i < pair.n; ++i) {
        const std::complex<double> di = hm.derivative(pair.space.v(i)).evaluate(vv, t0);
        wa.max_defect = std::max(wa.max_defect, std::abs(2.0 * di - std::conj(vv[i]) * hv));
    }
    wa.ok = wa.hm_abs > 1e-9 && wa.max_defect < 1e-6 * wa.hm_abs;
    return wa;
}

NStarPoint spherical_point_typeI(const PairSpec& pair, double lambda,
                                 const Eigen::VectorXcd& v_m) {
    NStarPoint pt;
    pt.v = std::sqrt(lambda) * v_m;
    pt.z = Eigen::VectorXd(pair.d);
    for (int a = 0; a < pair.d; ++a) pt.z[a] = lambda * rat_double(pair.A[a]);
    return pt;
}

LemmaTopResult verify_lemma_top(const PairSpec& pair, const FockContext& fock,
                                const Invariant& inv, double lambda,
                                const std::vector<long>& m, double tol, std::uint64_t seed) {
    LemmaTopResult res;
    res.point = solve_spherical_point(pair, m, seed);

    const WellAdapted wa = is_well_adapted(pair, res.point.v, m);
    if (!wa.ok) {
        res.status = LemmaStatus::Skipped;
        res.reason = "well-adapted violation at m: |h_m(v)| = " + std::to_string(wa.hm_abs) +
                     ", lowering defect = " + std::to_string(wa.max_defect);
        return res;
    }

    const MultiPoly top = fock.eigen_poly(inv).homogeneous_component(inv.s / 2);
    std::vector<Scalar> mv(2 * m.size(), Scalar(Rat(0)));
    for (std::size_t i = 0; i < m.size(); ++i) mv[i] = Scalar(Rat(m[i]));
    const double topval = rat_double(top.evaluate_vars_exact(mv).re);
    res.lhs = std::pow(lambda, static_cast<double>(inv.z)) *
              std::pow(-2.0 * lambda, static_cast<double>(inv.s / 2)) * topval;

    const NStarPoint pt = spherical_point_typeI(pair, lambda, res.point.v);
    std::vector<double> tv(pt.z.data(), pt.z.data() + pt.z.size());
    const std::complex<double> pval = inv.poly.evaluate(to_std(pt.v), tv);
    const double sign = (inv.s / 2) % 2 == 0 ? 1.0 : -1.0;
    res.rhs = sign * pval.real();

    const double scale = std::max({1.0, std::abs(res.lhs), std::abs(res.rhs)});
    res.defect = std::abs(res.lhs - res.rhs) / scale;
    if (std::abs(pval.imag()) > 1e-9 * scale) {
        res.status = LemmaStatus::Fail;
        res.reason = "spherical value is not real";
        return res;
    }
    res.status = res.defect <= tol ? LemmaStatus::Pass : LemmaStatus::Fail;
    return res;
}

}  // namespace nilspec
