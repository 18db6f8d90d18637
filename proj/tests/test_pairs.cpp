#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilspec/pair_spec.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace nilspec;

namespace {

std::vector<Rat> rand_rat_vec(std::mt19937_64& rng, int len) {
    std::vector<Rat> x;
    for (int i = 0; i < len; ++i)
        x.push_back(rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 3)));
    return x;
}

Rat inner_V(const PairSpec& pair, const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * pair.gram_V[i][j] * y[j];
    return s;
}

Rat inner_Z(const PairSpec& pair, const std::vector<Rat>& a, const std::vector<Rat>& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * pair.gram_Z[i][j] * b[j];
    return s;
}

std::vector<PairSpec> all_builtins() {
    std::vector<PairSpec> out;
    for (const auto& name : builtin_names()) out.push_back(*builtin_by_name(name));
    return out;
}

}  // namespace

TEST_CASE("all builtin pairs pass validation") {
    for (const auto& pair : all_builtins()) {
        const ValidationReport rep = validate_pair(pair);
        INFO(pair.name, ": ", rep.summary());
        CHECK(rep.ok());
    }
}

TEST_CASE("validation rejects corrupted fixtures") {
    SUBCASE("broken Jacobi / antisymmetry") {
        PairSpec pair = builtin_heisenberg_un(2);
        pair.bracket[0][0][1] += Rat(1);  // destroys antisymmetry pairing
        CHECK_FALSE(validate_pair(pair).ok());
    }
    SUBCASE("non-invariant polynomial") {
        PairSpec pair = builtin_u2su2();
        Mono e(static_cast<std::size_t>(pair.space.total()), 0);
        e[static_cast<std::size_t>(pair.space.v(0))] = 1;
        e[static_cast<std::size_t>(pair.space.w(1))] = 1;
        pair.invariants[1].poly.add_term(e, Scalar(Rat(1)));
        CHECK_FALSE(validate_pair(pair).ok());
    }
    SUBCASE("base point scaled to 2A breaks unit length") {
        PairSpec pair = builtin_heisenberg_un(1);
        for (auto& a : pair.A) a *= Rat(2);
        CHECK_FALSE(validate_pair(pair).ok());
    }
    SUBCASE("wrong highest weight row") {
        PairSpec pair = builtin_u2su2();
        for (auto& w : pair.weights[0]) w = 1;
        CHECK_FALSE(validate_pair(pair).ok());
    }
    SUBCASE("kA element that does not stabilize A") {
        PairSpec pair = builtin_u2su2();
        pair.kA_basis.push_back(pair.k_basis[2]);
        bool rejected = false;
        try {
            rejected = !validate_pair(pair).ok();
        } catch (const std::exception&) {
            rejected = true;
        }
        CHECK(rejected);
    }
}

TEST_CASE("J_A reproduces the bracket pairing exactly") {
    std::mt19937_64 rng(41);
    for (const auto& pair : all_builtins()) {
        const JAStructure jA = build_jA(pair);
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = rand_rat_vec(rng, 2 * pair.n);
            const auto y = rand_rat_vec(rng, 2 * pair.n);
            // <J_A x, y>_V = <[x, y], A>_z
            std::vector<Rat> jx(static_cast<std::size_t>(2 * pair.n), Rat(0));
            for (int i = 0; i < 2 * pair.n; ++i)
                for (int j = 0; j < 2 * pair.n; ++j)
                    jx[static_cast<std::size_t>(i)] +=
                        jA.J_exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        y[static_cast<std::size_t>(j)];
            // note: J applied to the second argument with a sign gives the same
            // bilinear form; check the defining identity directly on (x, y).
            std::vector<Rat> jx2(static_cast<std::size_t>(2 * pair.n), Rat(0));
            for (int i = 0; i < 2 * pair.n; ++i)
                for (int j = 0; j < 2 * pair.n; ++j)
                    jx2[static_cast<std::size_t>(i)] +=
                        jA.J_exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        x[static_cast<std::size_t>(j)];
            const Rat lhs = inner_V(pair, jx2, y);
            const Rat rhs = inner_Z(pair, pair.bracket_of(x, y), pair.A);
            CHECK(lhs == rhs);
        }
        // orthogonal complex structure when all mu = 1
        if (jA.all_mu_one) {
            for (int trial = 0; trial < 5; ++trial) {
                const auto x = rand_rat_vec(rng, 2 * pair.n);
                std::vector<Rat> jjx(static_cast<std::size_t>(2 * pair.n), Rat(0));
                for (int i = 0; i < 2 * pair.n; ++i)
                    for (int j = 0; j < 2 * pair.n; ++j)
                        for (int k = 0; k < 2 * pair.n; ++k)
                            jjx[static_cast<std::size_t>(i)] +=
                                jA.J_exact[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(j)] *
                                jA.J_exact[static_cast<std::size_t>(j)]
                                          [static_cast<std::size_t>(k)] *
                                x[static_cast<std::size_t>(k)];
                for (int i = 0; i < 2 * pair.n; ++i)
                    CHECK(jjx[static_cast<std::size_t>(i)] == -x[static_cast<std::size_t>(i)]);
            }
        }
    }
}

TEST_CASE("JSON round trip is lossless and the loader validates") {
    for (const auto& pair : all_builtins()) {
        const std::string text = pair_to_json_text(pair);
        const PairSpec back = pair_from_json_text(text);
        CHECK(back.name == pair.name);
        CHECK(back.n == pair.n);
        CHECK(back.d == pair.d);
        CHECK(back.bracket == pair.bracket);
        CHECK(back.A == pair.A);
        CHECK(back.gram_V == pair.gram_V);
        CHECK(back.gram_Z == pair.gram_Z);
        CHECK(back.torus_size == pair.torus_size);
        CHECK(back.weights == pair.weights);
        REQUIRE(back.invariants.size() == pair.invariants.size());
        for (std::size_t i = 0; i < pair.invariants.size(); ++i) {
            CHECK(back.invariants[i].poly == pair.invariants[i].poly);
            CHECK(back.invariants[i].s == pair.invariants[i].s);
            CHECK(back.invariants[i].z == pair.invariants[i].z);
        }
        REQUIRE(back.hw_generators.size() == pair.hw_generators.size());
        for (std::size_t i = 0; i < pair.hw_generators.size(); ++i)
            CHECK(back.hw_generators[i] == pair.hw_generators[i]);
        CHECK(validate_pair(back).ok());
    }

    CHECK_THROWS_AS((void)pair_from_json_text("{\"format\": 2}"), SchemaError);
    CHECK_THROWS_AS((void)pair_from_json_text("not json"), SchemaError);
    CHECK_THROWS_AS((void)resolve_pair("no-such-builtin-or-file"), SchemaError);
}

TEST_CASE("resolve_pair accepts builtin names and file paths") {
    const PairSpec byname = resolve_pair("u2su2");
    CHECK(byname.name == builtin_u2su2().name);

    const std::string path = "roundtrip_pair_tmp.json";
    save_pair(builtin_heisenberg_un(2), path);
    const PairSpec fromfile = resolve_pair(path);
    CHECK(fromfile.n == 2);
    CHECK(validate_pair(fromfile).ok());
    std::remove(path.c_str());
}

TEST_CASE("central restriction p_A composes with the transfer map phi") {
    std::mt19937_64 rng(43);
    for (const auto& pair : all_builtins()) {
        const JAStructure jA = build_jA(pair);
        for (int idx = 0; idx < pair.invariant_count(); ++idx) {
            const TransferredInvariant ti = p_transfer(pair, jA, idx);
            const MultiPoly& p = pair.invariants[static_cast<std::size_t>(idx)].poly;
            for (int trial = 0; trial < 25; ++trial) {
                Eigen::VectorXd x(2 * pair.n);
                for (int i = 0; i < 2 * pair.n; ++i)
                    x[i] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53 * 2.0 - 1.0;
                const double t = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53 * 2.0 - 1.0;

                // p_A(phi(v), t) = p(v, t A)
                const Eigen::VectorXd px = phi_transfer(jA, x);
                const Eigen::VectorXcd pv = real_to_complex(pair, px);
                std::vector<std::complex<double>> pvv(pv.data(), pv.data() + pv.size());
                const auto lhs = ti.p_A.evaluate(pvv, {t});

                const Eigen::VectorXcd v = real_to_complex(pair, x);
                std::vector<std::complex<double>> vv(v.data(), v.data() + v.size());
                std::vector<double> tA;
                for (const Rat& a : pair.A) tA.push_back(t * rat_double(a));
                const auto rhs = p.evaluate(vv, tA);

                CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
            }

            // q agrees with p at t = A
            for (int trial = 0; trial < 10; ++trial) {
                Eigen::VectorXd x(2 * pair.n);
                for (int i = 0; i < 2 * pair.n; ++i)
                    x[i] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53 * 2.0 - 1.0;
                const Eigen::VectorXcd v = real_to_complex(pair, x);
                std::vector<std::complex<double>> vv(v.data(), v.data() + v.size());
                std::vector<double> tA;
                for (const Rat& a : pair.A) tA.push_back(rat_double(a));
                const auto lhs = ti.q.evaluate(vv, std::vector<double>(
                                                       static_cast<std::size_t>(pair.d), 0.0));
                const auto rhs = p.evaluate(vv, tA);
                CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("phi intertwines the K_A action up to first order") {
    // d/de phi(exp(e Z) v) = Z phi(v) for Z in k_A, checked by central differences.
    const double eps = 1e-4;
    std::mt19937_64 rng(47);
    for (const auto& pair : all_builtins()) {
        const JAStructure jA = build_jA(pair);
        for (const auto& Z : pair.kA_basis) {
            const Eigen::MatrixXd R =
                real_action_matrix(pair, Z).topLeftCorner(2 * pair.n, 2 * pair.n);
            for (int trial = 0; trial < 5; ++trial) {
                Eigen::VectorXd x(2 * pair.n);
                for (int i = 0; i < 2 * pair.n; ++i)
                    x[i] = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53 * 2.0 - 1.0;
                const Eigen::MatrixXd flow_p = (eps * R).exp();
                const Eigen::MatrixXd flow_m = (-eps * R).exp();
                const Eigen::VectorXd fd =
                    (phi_transfer(jA, flow_p * x) - phi_transfer(jA, flow_m * x)) / (2 * eps);
                const Eigen::VectorXd lie = R * phi_transfer(jA, x);
                CHECK((fd - lie).lpNorm<Eigen::Infinity>() < 1e-6);
            }
        }
    }
}

TEST_CASE("h_m and weighted degree follow the weight table") {
    const PairSpec pair = builtin_u2su2();
    const std::vector<long> m = {2, 1, 1};
    const MultiPoly h = pair.h_m(m);
    CHECK(h.uses_only_v());
    CHECK(h.is_homogeneous(pair.weighted_degree(m)));

    long expect = 0;
    for (int j = 0; j < pair.rank(); ++j) {
        long row = 0;
        for (long w : pair.weights[static_cast<std::size_t>(j)]) row += w;
        // weighted degree counts v-degree of h_j, which is the number of
        // v-factors, recoverable from the generator itself
        (void)row;
        expect += m[static_cast<std::size_t>(j)] *
                  pair.hw_generators[static_cast<std::size_t>(j)].total_degree();
    }
    CHECK(pair.weighted_degree(m) == expect);

    // h_m is a simultaneous eigenvector of the torus with eigenvalue sum m_j w_j
    for (int a = 0; a < pair.torus_size; ++a) {
        const MultiPoly moved = infinitesimal_action(pair.kA_basis[static_cast<std::size_t>(a)], h);
        // eigenvalue must be purely imaginary rational multiple: moved = c * h
        REQUIRE_FALSE(h.is_zero());
        const auto& lead = *h.terms.begin();
        const Scalar c = moved.coeff(lead.first) / lead.second;
        CHECK(moved == h.scaled(c));
    }
}
