#include "nilspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace nilspec {

namespace {

std::vector<std::complex<double>> to_std(const Eigen::VectorXcd& v) {
    return std::vector<std::complex<double>>(v.data(), v.data() + v.size());
}

double checked_real(std::complex<double> z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
        throw std::runtime_error(std::string(what) + ": imaginary leak " +
                                 std::to_string(z.imag()));
    return z.real();
}

std::vector<long> ones_m(const PairSpec& pair) {
    return std::vector<long>(static_cast<std::size_t>(pair.rank()), 1L);
}

// Default type II base point: real, generic slope across the coordinates.
Eigen::VectorXcd base_type2_point(const PairSpec& pair) {
    Eigen::VectorXcd b(pair.n);
    for (int k = 0; k < pair.n; ++k) b[k] = 0.25 * (2.0 + k);
    return b;
}

Rat canonical(Rat x) {
    x.canonicalize();
    return x;
}

Rat rational_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    const Rat ca = canonical(a), cb = canonical(b);
    mpz_class num, den;
    mpz_gcd(num.get_mpz_t(), ca.get_num().get_mpz_t(), cb.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), ca.get_den().get_mpz_t(), cb.get_den().get_mpz_t());
    return Rat(num) / Rat(den);
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::ItoI: return "I-I";
        case Regime::ItoII: return "I-II";
        case Regime::IItoII: return "II-II";
    }
    return "?";
}

const char* schedule_name(Schedule s) {
    switch (s) {
        case Schedule::Standard: return "standard";
        case Schedule::Minus: return "minus";
        case Schedule::OscillatingM: return "oscillating-m";
        case Schedule::Linear: return "linear";
    }
    return "?";
}

Eigen::VectorXd phi_embed(const FockContext& fock, const SpectrumParam& s) {
    const PairSpec& pair = fock.pair();
    Eigen::VectorXd out(pair.invariant_count());
    if (std::holds_alternative<TypeI>(s)) {
        const TypeI& p = std::get<TypeI>(s);
        for (int i = 0; i < pair.invariant_count(); ++i)
            out[i] = fock.eigenvalue_typeI_interp(i, p.lambda, p.m);
    } else {
        const TypeII& p = std::get<TypeII>(s);
        for (int i = 0; i < pair.invariant_count(); ++i)
            out[i] = checked_real(fock.eigenvalue_typeII(i, p.b), "phi_embed type II");
    }
    return out;
}

NStarPoint psi_orbit(const PairSpec& pair, const SpectrumParam& s, std::uint64_t seed) {
    if (std::holds_alternative<TypeI>(s)) {
        const TypeI& p = std::get<TypeI>(s);
        const SphericalPoint sp = solve_spherical_point(pair, p.m, seed);
        return spherical_point_typeI(pair, p.lambda, sp.v);
    }
    NStarPoint pt;
    pt.v = std::get<TypeII>(s).b;
    pt.z = Eigen::VectorXd::Zero(pair.d);
    return pt;
}

Eigen::VectorXd orbit_signature(const PairSpec& pair, const NStarPoint& pt) {
    const auto vv = to_std(pt.v);
    const std::vector<double> tv(pt.z.data(), pt.z.data() + pt.z.size());
    Eigen::VectorXd sig(pair.invariant_count());
    for (int i = 0; i < pair.invariant_count(); ++i)
        sig[i] = checked_real(pair.invariants[i].poly.evaluate(vv, tv), "orbit_signature");
    return sig;
}

double phi_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a - b).norm();
}

double orbit_distance(const PairSpec& pair, const Eigen::VectorXd& sig_a,
                      const Eigen::VectorXd& sig_b) {
    double sum = 0.0;
    for (int i = 0; i < pair.invariant_count(); ++i) {
        const double deg = static_cast<double>(pair.invariants[i].s + pair.invariants[i].z);
        auto rescale = [deg](double x) {
            return std::copysign(std::pow(std::abs(x), 1.0 / deg), x);
        };
        const double delta = rescale(sig_a[i]) - rescale(sig_b[i]);
        sum += delta * delta;
    }
    return std::sqrt(sum);
}

ParamSequence make_sequence(const PairSpec& pair, Regime regime, long n_max,
                            Schedule schedule, std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("need n_max >= 2");
    ParamSequence seq;
    seq.regime = regime;
    seq.schedule = schedule;

    switch (regime) {
        case Regime::ItoI: {
            if (schedule == Schedule::Linear)
                throw std::invalid_argument("linear schedule is a II-II schedule");
            const std::vector<long> m = ones_m(pair);
            seq.m_dir = m;
            seq.base_v = solve_spherical_point(pair, m, seed).v;
            const long n0 = schedule == Schedule::Minus ? 2 : 1;
            for (long n = n0; n <= n_max; ++n) {
                TypeI p;
                p.lambda = schedule == Schedule::Minus ? 1.0 - 1.0 / static_cast<double>(n)
                                                       : 1.0 + 1.0 / static_cast<double>(n);
                p.m = m;
                if (schedule == Schedule::OscillatingM && n % 2 == 1 && !p.m.empty()) p.m[0] += 1;
                seq.ns.push_back(n);
                seq.params.emplace_back(std::move(p));
            }
            seq.limit = TypeI{1.0, m};
            break;
        }
        case Regime::ItoII: {
            if (schedule != Schedule::Standard)
                throw std::invalid_argument("I-II supports only the standard schedule");
            const std::vector<long> m = ones_m(pair);
            seq.m_dir = m;
            seq.base_v = solve_spherical_point(pair, m, seed).v;
            for (long n = 1; n <= n_max; ++n) {
                TypeI p;
                p.lambda = 1.0 / static_cast<double>(n);
                const long k = std::max(1L, std::lround(static_cast<double>(n) / 8.0));
                p.m = m;
                for (auto& mi : p.m) mi *= k;
                seq.ns.push_back(n);
                seq.params.emplace_back(std::move(p));
            }
            // lambda(n) k(n) -> 1/8, so the type I points sqrt(lambda) v_{k m}
            // = sqrt(lambda k) v_m converge to b below.
            TypeII lim;
            lim.b = seq.base_v / std::sqrt(8.0);
            seq.limit = std::move(lim);
            break;
        }
        case Regime::IItoII: {
            if (schedule != Schedule::Standard && schedule != Schedule::Linear)
                throw std::invalid_argument("II-II supports the standard or linear schedule");
            const Eigen::VectorXcd b = base_type2_point(pair);
            for (long n = 1; n <= n_max; ++n) {
                TypeII p;
                p.b = b;
                const double dn = static_cast<double>(n);
                p.b[0] += schedule == Schedule::Linear ? 1.0 / dn : 0.25 / (dn * dn);
                seq.ns.push_back(n);
                seq.params.emplace_back(std::move(p));
            }
            TypeII lim;
            lim.b = b;
            seq.limit = std::move(lim);
            break;
        }
    }

    // Regime precondition: lambda(n) * deg-weighted m(n) must stay bounded.
    double first_g = -1.0, last_g = -1.0;
    for (std::size_t i = 0; i < seq.params.size(); ++i) {
        if (!std::holds_alternative<TypeI>(seq.params[i])) continue;
        const TypeI& p = std::get<TypeI>(seq.params[i]);
        const double g = p.lambda * static_cast<double>(pair.weighted_degree(p.m));
        if (first_g < 0) first_g = g;
        last_g = g;
    }
    if (first_g >= 0 && last_g > 4.0 * first_g + 1e-9)
        throw std::invalid_argument("invalid regime: lambda(n) * m(n) unbounded");
    return seq;
}

std::vector<Calibration> calibration_constants(const PairSpec& pair, const FockContext& fock) {
    std::vector<Calibration> out;
    for (int i = 0; i < pair.invariant_count(); ++i) {
        const Invariant& inv = pair.invariants[i];
        Calibration cal;
        cal.invariant = inv.name;
        cal.lambda_exponent = inv.s / 2 + inv.z;
        MultiPoly mu = fock.eigen_poly(i);

        Rat content(0);
        for (const auto& [mono, coeff] : mu.terms) {
            if (!coeff.is_real())
                throw std::runtime_error("eigenvalue polynomial of " + inv.name + " not real");
            content = rational_gcd(content, canonical(coeff.re));
        }
        if (content == 0) content = 1;
        if (!mu.terms.empty() && mu.terms.rbegin()->second.re < 0) content = -content;

        cal.c = rat_pow(Rat(-2), inv.s / 2) * content;
        cal.q = mu.scaled(Scalar(Rat(1) / content));
        out.push_back(std::move(cal));
    }
    return out;
}

double verdict_tolerance(Regime r) {
    switch (r) {
        case Regime::ItoI: return 1e-3;
        case Regime::ItoII: return 1e-2;
        case Regime::IItoII: return 1e-6;
    }
    return 0.0;
}

double ConvergenceReport::d_phi_at(long n) const {
    for (const auto& r : rows)
        if (r.n == n) return r.d_phi;
    throw std::out_of_range("no row with n = " + std::to_string(n));
}

double ConvergenceReport::d_psi_at(long n) const {
    for (const auto& r : rows)
        if (r.n == n) return r.d_psi;
    throw std::out_of_range("no row with n = " + std::to_string(n));
}

ConvergenceReport convergence_experiment(const PairSpec& pair, const FockContext& fock,
                                         const ParamSequence& seq, Exec exec,
                                         std::uint64_t seed) {
    ConvergenceReport rep;
    rep.regime = seq.regime;
    rep.schedule = seq.schedule;
    rep.calibration = calibration_constants(pair, fock);

    // Spherical points for every distinct type I parameter (and the limit),
    // solved sequentially; multiples of m_dir ride the exact scaling ray
    // v_{k m} = sqrt(k) v_m and are only polished.
    std::map<std::vector<long>, Eigen::VectorXcd> points;
    auto solve_m = [&](const std::vector<long>& m) {
        if (points.count(m)) return;
        if (pair.weighted_degree(m) == 0) {
            points[m] = Eigen::VectorXcd::Zero(pair.n);
            return;
        }
        if (!seq.m_dir.empty() && seq.base_v.size() == pair.n) {
            long k = 0;
            bool ray = true;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (seq.m_dir[i] == 0) {
                    ray = m[i] == 0;
                } else if (m[i] % seq.m_dir[i] == 0) {
                    const long ki = m[i] / seq.m_dir[i];
                    if (k == 0) k = ki;
                    ray = ki == k;
                } else {
                    ray = false;
                }
                if (!ray) break;
            }
            if (ray && k > 0) {
                points[m] =
                    polish_spherical_point(pair, m, std::sqrt(static_cast<double>(k)) * seq.base_v)
                        .v;
                return;
            }
        }
        points[m] = solve_spherical_point(pair, m, seed).v;
    };
    for (const auto& p : seq.params)
        if (std::holds_alternative<TypeI>(p)) solve_m(std::get<TypeI>(p).m);
    if (std::holds_alternative<TypeI>(seq.limit)) solve_m(std::get<TypeI>(seq.limit).m);

    auto signature_of = [&](const SpectrumParam& p) {
        if (std::holds_alternative<TypeI>(p)) {
            const TypeI& t = std::get<TypeI>(p);
            return orbit_signature(pair, spherical_point_typeI(pair, t.lambda, points.at(t.m)));
        }
        NStarPoint pt;
        pt.v = std::get<TypeII>(p).b;
        pt.z = Eigen::VectorXd::Zero(pair.d);
        return orbit_signature(pair, pt);
    };

    const Eigen::VectorXd phi_lim = phi_embed(fock, seq.limit);
    const Eigen::VectorXd sig_lim = signature_of(seq.limit);

    // Pre-warm the eigenvalue-polynomial cache before the parallel section.
    for (int i = 0; i < pair.invariant_count(); ++i) fock.eigen_poly(i);

    const long count = static_cast<long>(seq.params.size());
    rep.rows.resize(static_cast<std::size_t>(count));
    sweep_for(exec, count, [&](long idx) {
        const SpectrumParam& p = seq.params[static_cast<std::size_t>(idx)];
        ConvergenceRow row;
        row.n = seq.ns[static_cast<std::size_t>(idx)];
        if (std::holds_alternative<TypeI>(p)) {
            row.lambda = std::get<TypeI>(p).lambda;
            row.m = std::get<TypeI>(p).m;
        } else {
            row.lambda = 0.0;
            row.m.assign(static_cast<std::size_t>(pair.rank()), 0L);
        }
        row.d_phi = phi_distance(phi_embed(fock, p), phi_lim);
        row.d_psi = orbit_distance(pair, signature_of(p), sig_lim);
        rep.rows[static_cast<std::size_t>(idx)] = std::move(row);
    });

    // Tail statistics over the last half.
    const std::size_t half = rep.rows.size() / 2;
    for (std::size_t i = half; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        rep.tail_max_phi = std::max(rep.tail_max_phi, r.d_phi);
        rep.tail_max_psi = std::max(rep.tail_max_psi, r.d_psi);
        if (r.d_phi > 1e-300 && r.d_psi > 1e-300) {
            rep.tail_ratio_phi_psi = std::max(rep.tail_ratio_phi_psi, r.d_phi / r.d_psi);
            rep.tail_ratio_psi_phi = std::max(rep.tail_ratio_psi_phi, r.d_psi / r.d_phi);
        }
    }

    // m-stabilization (I-I): first n from which m(n) stays constant.
    bool regime_violation = false;
    if (seq.regime == Regime::ItoI) {
        const std::vector<long>& last_m = std::get<TypeI>(seq.params.back()).m;
        std::size_t idx = seq.params.size();
        while (idx > 0 && std::get<TypeI>(seq.params[idx - 1]).m == last_m) --idx;
        rep.stabilization_index = seq.ns[idx == seq.params.size() ? idx - 1 : idx];
        rep.notes.push_back("m stabilization index: " + std::to_string(rep.stabilization_index));
        if (rep.stabilization_index > seq.ns.back() / 2) {
            regime_violation = true;
            rep.notes.push_back("m(n) is not eventually constant before n_max/2");
        }
    }

    // lambda(n) * deg m(n) divergence guard.
    double first_g = -1.0, last_g = -1.0;
    for (const auto& p : seq.params) {
        if (!std::holds_alternative<TypeI>(p)) continue;
        const TypeI& t = std::get<TypeI>(p);
        const double g = t.lambda * static_cast<double>(pair.weighted_degree(t.m));
        if (first_g < 0) first_g = g;
        last_g = g;
    }
    if (first_g >= 0 && last_g > 4.0 * first_g + 1e-9) {
        regime_violation = true;
        rep.notes.push_back("lambda(n) * deg m(n) diverges along the sequence");
    }

    // I-II extras at n_max: mixed invariants vanish; lower-order terms vanish.
    if (seq.regime == Regime::ItoII) {
        const TypeI& t = std::get<TypeI>(seq.params.back());
        std::vector<Scalar> mv(2 * t.m.size(), Scalar(Rat(0)));
        for (std::size_t i = 0; i < t.m.size(); ++i) mv[i] = Scalar(Rat(t.m[i]));
        for (int i = 0; i < pair.invariant_count(); ++i) {
            const Invariant& inv = pair.invariants[i];
            const double di = fock.eigenvalue_typeI_interp(i, t.lambda, t.m);
            if (inv.s > 0 && inv.z > 0)
                rep.mixed_max_final = std::max(rep.mixed_max_final, std::abs(di));
            const MultiPoly top = fock.eigen_poly(i).homogeneous_component(inv.s / 2);
            const double top_val =
                std::pow(t.lambda, static_cast<double>(inv.z)) *
                std::pow(-2.0 * t.lambda, static_cast<double>(inv.s / 2)) *
                rat_double(top.evaluate_vars_exact(mv).re);
            rep.lower_order_final = std::max(rep.lower_order_final, std::abs(di - top_val));
        }
        rep.notes.push_back("max |mixed eigenvalue| at n_max: " + std::to_string(rep.mixed_max_final));
        rep.notes.push_back("max lower-order defect at n_max: " +
                            std::to_string(rep.lower_order_final));
    }

    // Verdict at the n <= 1000 checkpoint.
    rep.checkpoint_n = seq.ns.front();
    for (const auto& r : rep.rows)
        if (r.n <= 1000) rep.checkpoint_n = std::max(rep.checkpoint_n, r.n);
    rep.checkpoint_d_phi = rep.d_phi_at(rep.checkpoint_n);
    rep.checkpoint_d_psi = rep.d_psi_at(rep.checkpoint_n);
    rep.checkpoint_tol = verdict_tolerance(seq.regime);

    if (regime_violation) {
        rep.verdict = "regime-violation";
    } else if (rep.checkpoint_d_phi < rep.checkpoint_tol &&
               rep.checkpoint_d_psi < rep.checkpoint_tol) {
        // Co-convergence guard: neither distance may stall high while the
        // other has converged.
        if (rep.tail_max_phi > 10.0 * rep.checkpoint_tol ||
            rep.tail_max_psi > 10.0 * rep.checkpoint_tol)
            rep.verdict = "fail: one model stalls while the other converges";
        else
            rep.verdict = "co-convergent";
    } else {
        rep.verdict = "fail: d_phi or d_psi above tolerance at the checkpoint";
    }
    return rep;
}

InjectivityReport injectivity_scan(const PairSpec& pair, const FockContext& fock, int count,
                                   std::uint64_t seed, double tol, Exec exec) {
    InjectivityReport rep;
    rep.count = count;

    // Half type I on a lattice of (lambda, m); half type II with distinct
    // singular profiles (one slot when only the norm separates K-orbits of V,
    // two slots otherwise).
    std::vector<SpectrumParam> params;
    const int n_typeI = count / 2;
    {
        const int r = pair.rank();
        std::vector<long> m(static_cast<std::size_t>(r), 0L);
        int lam_idx = 0;
        while (static_cast<int>(params.size()) < n_typeI) {
            TypeI p;
            p.lambda = 0.5 + 0.37 * lam_idx;
            p.m = m;
            params.emplace_back(std::move(p));
            int i = r - 1;
            for (; i >= 0; --i) {
                if (++m[static_cast<std::size_t>(i)] <= 3) break;
                m[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) ++lam_idx;  // grid exhausted; next lambda shell
        }
    }
    const bool rich = pair.invariant_count() > 2 && pair.n >= 2;
    for (int i = 0; static_cast<int>(params.size()) < count; ++i) {
        TypeII p;
        p.b = Eigen::VectorXcd::Zero(pair.n);
        if (rich) {
            // Diagonal enumeration of pairs x < y.
            int s = 0, a = i;
            while (a > s) a -= ++s;
            const double x = 0.4 + 0.12 * a;
            const double y = x + 0.12 * (s - a + 1);
            p.b[0] = x;
            p.b[pair.n - 1] = y;
        } else {
            p.b[0] = 0.45 + 0.11 * i;
        }
        params.emplace_back(std::move(p));
    }

    // Solve each distinct m once (sequentially), then embed in parallel.
    std::map<std::vector<long>, Eigen::VectorXcd> points;
    for (const auto& p : params)
        if (std::holds_alternative<TypeI>(p)) {
            const auto& m = std::get<TypeI>(p).m;
            if (!points.count(m)) points[m] = solve_spherical_point(pair, m, seed).v;
        }
    for (int i = 0; i < pair.invariant_count(); ++i) fock.eigen_poly(i);

    std::vector<Eigen::VectorXd> phis(params.size()), sigs(params.size());
    sweep_for(exec, static_cast<long>(params.size()), [&](long idx) {
        const SpectrumParam& p = params[static_cast<std::size_t>(idx)];
        phis[static_cast<std::size_t>(idx)] = phi_embed(fock, p);
        NStarPoint pt;
        if (std::holds_alternative<TypeI>(p)) {
            const TypeI& t = std::get<TypeI>(p);
            pt = spherical_point_typeI(pair, t.lambda, points.at(t.m));
        } else {
            pt.v = std::get<TypeII>(p).b;
            pt.z = Eigen::VectorXd::Zero(pair.d);
        }
        sigs[static_cast<std::size_t>(idx)] = orbit_signature(pair, pt);
    });

    std::vector<double> min_phi(params.size(), std::numeric_limits<double>::infinity());
    std::vector<double> min_psi(params.size(), std::numeric_limits<double>::infinity());
    sweep_for(exec, static_cast<long>(params.size()), [&](long i) {
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < params.size(); ++j) {
            min_phi[static_cast<std::size_t>(i)] =
                std::min(min_phi[static_cast<std::size_t>(i)],
                         (phis[static_cast<std::size_t>(i)] - phis[j]).lpNorm<Eigen::Infinity>());
            min_psi[static_cast<std::size_t>(i)] =
                std::min(min_psi[static_cast<std::size_t>(i)],
                         (sigs[static_cast<std::size_t>(i)] - sigs[j]).lpNorm<Eigen::Infinity>());
        }
    });
    rep.min_phi_gap = *std::min_element(min_phi.begin(), min_phi.end() - 1);
    rep.min_psi_gap = *std::min_element(min_psi.begin(), min_psi.end() - 1);
    rep.ok = rep.min_phi_gap > tol && rep.min_psi_gap > tol;
    (void)seed;
    return rep;
}

}  // namespace nilspec
