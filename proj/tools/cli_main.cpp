#include "nilspec/fock.hpp"
#include "nilspec/moment.hpp"
#include "nilspec/report.hpp"
#include "nilspec/spectrum.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace nilspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct Common {
    std::string pair_src = "u2su2";
    std::string format = "csv";
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string out;
};

void attach_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--pair", c.pair_src, "builtin name or path to a pair JSON file");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", c.seed, "seed of every randomized step");
    cmd->add_option("--tol", c.tol, "comparison tolerance of the verification suites");
    cmd->add_option("--out", c.out, "write output to this path instead of stdout");
}

void emit(const Common& c, const std::string& content) {
    if (c.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw SchemaError("cannot open output file: " + c.out);
    f << content;
    if (!f) throw SchemaError("cannot write output file: " + c.out);
}

std::vector<long> parse_m(const std::string& text) {
    std::vector<long> m;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("empty entry in m list");
        std::size_t pos = 0;
        m.push_back(std::stol(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument("bad m entry: " + tok);
    }
    if (m.empty()) throw std::invalid_argument("empty m list");
    return m;
}

std::vector<Rat> parse_lambda_list(const std::string& text) {
    std::vector<Rat> ls;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) ls.push_back(parse_rat(tok));
    if (ls.empty()) throw std::invalid_argument("empty lambda list");
    return ls;
}

// Complex entries "re" or "re:im", comma separated.
Eigen::VectorXcd parse_b(const std::string& text) {
    std::vector<std::complex<double>> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        std::size_t pos = 0;
        if (colon == std::string::npos) {
            const double re = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("bad b entry: " + tok);
            vals.emplace_back(re, 0.0);
        } else {
            const std::string res = tok.substr(0, colon), ims = tok.substr(colon + 1);
            const double re = std::stod(res, &pos);
            if (pos != res.size()) throw std::invalid_argument("bad b entry: " + tok);
            const double im = std::stod(ims, &pos);
            if (pos != ims.size()) throw std::invalid_argument("bad b entry: " + tok);
            vals.emplace_back(re, im);
        }
    }
    if (vals.empty()) throw std::invalid_argument("empty b list");
    Eigen::VectorXcd b(static_cast<int>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) b[static_cast<int>(i)] = vals[i];
    return b;
}

std::string vector_json(const Eigen::VectorXd& v) {
    std::string s = "[";
    for (int i = 0; i < v.size(); ++i) s += std::string(i ? ", " : "") + fmt12(v[i]);
    return s + "]";
}

// ---------------------------------------------------------------- validate

int cmd_pair_validate(const Common& c) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const ValidationReport rep = validate_pair(pair);
    std::ostringstream os;
    if (c.format == "json") {
        os << "{\n  \"pair\": \"" << json_escape(pair.name) << "\",\n  \"ok\": "
           << (rep.ok() ? "true" : "false") << ",\n  \"checks\": [\n";
        for (std::size_t i = 0; i < rep.checks.size(); ++i) {
            const auto& ck = rep.checks[i];
            os << "    {\"check\": \"" << json_escape(ck.check) << "\", \"pass\": "
               << (ck.pass ? "true" : "false") << ", \"witness\": \"" << json_escape(ck.witness)
               << "\"}" << (i + 1 < rep.checks.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "check,pass,witness\n";
        for (const auto& ck : rep.checks)
            os << ck.check << ',' << (ck.pass ? "pass" : "fail") << ',' << ck.witness << '\n';
    }
    emit(c, os.str());
    return rep.ok() ? kExitOk : kExitVerification;
}

// --------------------------------------------------------------- eigentable

int cmd_eigentable(const Common& c, const std::string& lambdas, long mmax) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const FockContext fock(pair);
    const std::vector<Rat> ls = parse_lambda_list(lambdas);
    for (const Rat& l : ls)
        if (l <= 0) throw std::invalid_argument("lambda must be positive: " + rat_str(l));

    std::vector<std::vector<long>> grid;
    if (mmax >= 0) {
        std::vector<long> m(static_cast<std::size_t>(pair.rank()), 0);
        while (true) {
            grid.push_back(m);
            int i = pair.rank() - 1;
            for (; i >= 0; --i) {
                if (++m[static_cast<std::size_t>(i)] <= mmax) break;
                m[static_cast<std::size_t>(i)] = 0;
            }
            if (i < 0) break;
        }
    }

    std::ostringstream os;
    if (c.format == "json") {
        os << "{\n  \"pair\": \"" << json_escape(pair.name) << "\",\n  \"rows\": [\n";
        for (std::size_t r = 0; r < grid.size() * ls.size(); ++r) {
            const Rat& l = ls[r / grid.size()];
            const auto& m = grid[r % grid.size()];
            os << "    {\"lambda\": \"" << rat_str(l) << "\", \"m\": [";
            for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m[i];
            os << "], \"values\": [";
            for (int i = 0; i < pair.invariant_count(); ++i)
                os << (i ? ", " : "") << '"'
                   << rat_str(fock.eigenvalue_typeI_exact(i, l, m)) << '"';
            os << "]}" << (r + 1 < grid.size() * ls.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    } else {
        os << "lambda";
        for (int i = 1; i <= pair.rank(); ++i) os << ",m" << i;
        for (int i = 0; i < pair.invariant_count(); ++i) os << ",D" << i;
        os << "\n";
        for (const Rat& l : ls)
            for (const auto& m : grid) {
                os << fmt12(rat_double(l));
                for (long mi : m) os << ',' << mi;
                for (int i = 0; i < pair.invariant_count(); ++i)
                    os << ',' << fmt12(rat_double(fock.eigenvalue_typeI_exact(i, l, m)));
                os << '\n';
            }
    }
    emit(c, os.str());
    return kExitOk;
}

// ----------------------------------------------------------- spherical-point

int cmd_spherical_point(const Common& c, const std::string& m_text, double lambda) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const std::vector<long> m = parse_m(m_text);
    const SphericalPoint pt = solve_spherical_point(pair, m, c.seed);
    const WellAdapted wa = is_well_adapted(pair, pt.v, m);
    const NStarPoint np = spherical_point_typeI(pair, lambda, pt.v);

    std::ostringstream os;
    if (c.format == "json") {
        os << "{\n  \"pair\": \"" << json_escape(pair.name) << "\",\n  \"m\": [";
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m[i];
        os << "],\n  \"lambda\": " << fmt12(lambda) << ",\n  \"residual\": "
           << fmt12(pt.residual) << ",\n  \"starts_converged\": " << pt.starts_converged
           << ",\n  \"well_adapted\": " << (wa.ok ? "true" : "false")
           << ",\n  \"h_m_abs\": " << fmt12(wa.hm_abs) << ",\n  \"norm2\": "
           << fmt12(pt.v.squaredNorm()) << ",\n  \"v\": [";
        for (int i = 0; i < pt.v.size(); ++i)
            os << (i ? ", " : "") << "[" << fmt12(pt.v[i].real()) << ", "
               << fmt12(pt.v[i].imag()) << "]";
        os << "],\n  \"point_v\": [";
        for (int i = 0; i < np.v.size(); ++i)
            os << (i ? ", " : "") << "[" << fmt12(np.v[i].real()) << ", "
               << fmt12(np.v[i].imag()) << "]";
        os << "],\n  \"point_z\": " << vector_json(np.z) << "\n}\n";
    } else {
        os << "field,value\n";
        os << "residual," << fmt12(pt.residual) << '\n';
        os << "starts_converged," << pt.starts_converged << '\n';
        os << "well_adapted," << (wa.ok ? "true" : "false") << '\n';
        os << "h_m_abs," << fmt12(wa.hm_abs) << '\n';
        os << "norm2," << fmt12(pt.v.squaredNorm()) << '\n';
        for (int i = 0; i < pt.v.size(); ++i)
            os << "v" << i + 1 << ',' << fmt12(pt.v[i].real())
               << (pt.v[i].imag() < 0 ? '-' : '+') << fmt12(std::abs(pt.v[i].imag())) << "i\n";
    }
    emit(c, os.str());
    return kExitOk;
}

// ------------------------------------------------------------------ verify

struct SuiteLine {
    std::string suite;
    std::string check;
    std::string status;  // pass | fail | skip
    std::string witness;
};

void grid_points(int rank, long lo, long hi, std::vector<std::vector<long>>& out) {
    std::vector<long> m(static_cast<std::size_t>(rank), lo);
    while (true) {
        out.push_back(m);
        int i = rank - 1;
        for (; i >= 0; --i) {
            if (++m[static_cast<std::size_t>(i)] <= hi) break;
            m[static_cast<std::size_t>(i)] = lo;
        }
        if (i < 0) break;
    }
}

void suite_invariance(const PairSpec& pair, std::vector<SuiteLine>& lines) {
    for (const auto& inv : pair.invariants) {
        bool ok = true;
        std::string witness;
        for (std::size_t g = 0; g < pair.k_basis.size(); ++g) {
            if (!infinitesimal_action(pair.k_basis[g], inv.poly).is_zero()) {
                ok = false;
                witness = "generator " + std::to_string(g) + " moves " + inv.name;
                break;
            }
        }
        lines.push_back({"invariance", inv.name, ok ? "pass" : "fail", witness});
    }
}

void suite_lemma_top(const PairSpec& pair, const FockContext& fock, double tol,
                     std::uint64_t seed, std::vector<SuiteLine>& lines) {
    std::vector<std::vector<long>> interior, boundary;
    grid_points(pair.rank(), 1, 2, interior);
    boundary.push_back(std::vector<long>(static_cast<std::size_t>(pair.rank()), 0));
    for (double lambda : {1.0, 2.0}) {
        for (const auto& inv : pair.invariants) {
            for (const auto& m : interior) {
                const LemmaTopResult r = verify_lemma_top(pair, fock, inv, lambda, m, tol, seed);
                std::ostringstream name;
                name << inv.name << " lambda=" << fmt12(lambda) << " m=";
                for (std::size_t i = 0; i < m.size(); ++i) name << (i ? "," : "") << m[i];
                if (r.status == LemmaStatus::Pass)
                    lines.push_back({"lemma-top", name.str(), "pass", ""});
                else if (r.status == LemmaStatus::Skipped)
                    lines.push_back({"lemma-top", name.str(), "skip", r.reason});
                else
                    lines.push_back({"lemma-top", name.str(), "fail",
                                     "lhs=" + fmt12(r.lhs) + " rhs=" + fmt12(r.rhs)});
            }
        }
    }
    // Boundary m: a well-adapted violation is allowed and reported as a skip.
    for (const auto& m : boundary) {
        const LemmaTopResult r =
            verify_lemma_top(pair, fock, pair.invariants[1], 1.0, m, tol, seed);
        std::ostringstream name;
        name << pair.invariants[1].name << " lambda=1 boundary m=";
        for (std::size_t i = 0; i < m.size(); ++i) name << (i ? "," : "") << m[i];
        if (r.status == LemmaStatus::Fail)
            lines.push_back(
                {"lemma-top", name.str(), "fail", "lhs=" + fmt12(r.lhs) + " rhs=" + fmt12(r.rhs)});
        else
            lines.push_back({"lemma-top", name.str(),
                             r.status == LemmaStatus::Pass ? "pass" : "skip", r.reason});
    }
}

void suite_type2(const PairSpec& pair, const FockContext& fock, std::uint64_t seed,
                 std::vector<SuiteLine>& lines) {
    // Exact oracle: p homogeneous of V-degree s and central degree z satisfies
    // p(ib, i conj b, 0) = i^s p(b, conj b) for z = 0 and 0 for z > 0.
    std::mt19937_64 rng(seed);
    bool ok = true;
    std::string witness;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        std::vector<Scalar> b;
        for (int i = 0; i < pair.n; ++i)
            b.emplace_back(rat(static_cast<long>(rng() % 19) - 9, 4),
                           rat(static_cast<long>(rng() % 19) - 9, 4));
        for (const auto& inv : pair.invariants) {
            const Scalar lhs = fock.eigenvalue_typeII_exact(inv, b);
            Scalar rhs(0);
            if (inv.z == 0) {
                std::vector<Rat> t_zero(static_cast<std::size_t>(pair.d), Rat(0));
                rhs = i_pow(inv.s) * inv.poly.evaluate_exact(b, t_zero);
            }
            if (!(lhs == rhs)) {
                ok = false;
                witness = inv.name + " at trial " + std::to_string(trial);
                break;
            }
        }
    }
    lines.push_back({"type2", "formal substitution vs i^s evaluation, 50 points",
                     ok ? "pass" : "fail", witness});
}

void suite_well_adapted(const PairSpec& pair, std::uint64_t seed,
                        std::vector<SuiteLine>& lines) {
    std::vector<std::vector<long>> interior, boundary;
    grid_points(pair.rank(), 1, 2, interior);
    grid_points(pair.rank(), 0, 1, boundary);
    for (const auto& m : interior) {
        const SphericalPoint pt = solve_spherical_point(pair, m, seed);
        const WellAdapted wa = is_well_adapted(pair, pt.v, m);
        std::ostringstream name;
        name << "interior m=";
        for (std::size_t i = 0; i < m.size(); ++i) name << (i ? "," : "") << m[i];
        lines.push_back({"well-adapted", name.str(), wa.ok ? "pass" : "fail",
                         wa.ok ? "" : "|h_m|=" + fmt12(wa.hm_abs) +
                                          " defect=" + fmt12(wa.max_defect)});
    }
    for (const auto& m : boundary) {
        bool interior_m = true;
        for (long mi : m) interior_m = interior_m && mi > 0;
        if (interior_m) continue;
        const SphericalPoint pt = solve_spherical_point(pair, m, seed);
        const WellAdapted wa = is_well_adapted(pair, pt.v, m);
        std::ostringstream name;
        name << "boundary m=";
        for (std::size_t i = 0; i < m.size(); ++i) name << (i ? "," : "") << m[i];
        lines.push_back({"well-adapted", name.str(), wa.ok ? "pass" : "skip",
                         wa.ok ? "" : "boundary violation tolerated: |h_m|=" +
                                          fmt12(wa.hm_abs)});
    }
}

void suite_scaling(const PairSpec& pair, const FockContext& fock,
                   std::vector<SuiteLine>& lines) {
    std::vector<std::vector<long>> grid;
    grid_points(pair.rank(), 0, 2, grid);
    const std::vector<Rat> lambdas = {Rat(1, 2), Rat(2), Rat(3)};
    bool ok = true;
    std::string witness;
    for (int i = 0; i < pair.invariant_count() && ok; ++i)
        for (const Rat& l : lambdas)
            for (const auto& m : grid)
                if (!fock.scaling_check(i, l, m)) {
                    ok = false;
                    witness = pair.invariants[static_cast<std::size_t>(i)].name +
                              " lambda=" + rat_str(l);
                    break;
                }
    lines.push_back(
        {"scaling", "exact lambda^{s/2+z} law on {0..2}^r", ok ? "pass" : "fail", witness});
}

void suite_separation(const PairSpec& pair, const FockContext& fock, double tol,
                      std::uint64_t seed, std::vector<SuiteLine>& lines) {
    const InjectivityReport rep = injectivity_scan(pair, fock, 100, seed, tol, Exec::Parallel);
    lines.push_back({"separation", "injectivity over 100 separated parameters",
                     rep.ok ? "pass" : "fail",
                     "min phi gap " + fmt12(rep.min_phi_gap) + ", min psi gap " +
                         fmt12(rep.min_psi_gap)});
}

int cmd_verify(const Common& c, const std::string& suites_text) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const FockContext fock(pair);

    std::vector<std::string> suites;
    {
        std::stringstream ss(suites_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) suites.push_back(tok);
    }
    const std::vector<std::string> known = {"invariance", "lemma-top",     "type2",
                                            "well-adapted", "scaling",     "separation"};
    if (suites.size() == 1 && suites[0] == "all")
        suites = known;
    for (const auto& s : suites)
        if (std::find(known.begin(), known.end(), s) == known.end())
            throw std::invalid_argument("unknown suite: " + s);

    std::vector<SuiteLine> lines;
    for (const auto& s : suites) {
        if (s == "invariance") suite_invariance(pair, lines);
        if (s == "lemma-top") suite_lemma_top(pair, fock, c.tol, c.seed, lines);
        if (s == "type2") suite_type2(pair, fock, c.seed, lines);
        if (s == "well-adapted") suite_well_adapted(pair, c.seed, lines);
        if (s == "scaling") suite_scaling(pair, fock, lines);
        if (s == "separation") suite_separation(pair, fock, c.tol, c.seed, lines);
    }

    bool all_ok = true;
    for (const auto& l : lines) all_ok = all_ok && l.status != "fail";

    std::ostringstream os;
    if (c.format == "json") {
        os << "{\n  \"pair\": \"" << json_escape(pair.name) << "\",\n  \"ok\": "
           << (all_ok ? "true" : "false") << ",\n  \"checks\": [\n";
        for (std::size_t i = 0; i < lines.size(); ++i)
            os << "    {\"suite\": \"" << lines[i].suite << "\", \"check\": \""
               << json_escape(lines[i].check) << "\", \"status\": \"" << lines[i].status
               << "\", \"witness\": \"" << json_escape(lines[i].witness) << "\"}"
               << (i + 1 < lines.size() ? "," : "") << "\n";
        os << "  ]\n}\n";
    } else {
        os << "suite,check,status,witness\n";
        for (const auto& l : lines)
            os << l.suite << ',' << l.check << ',' << l.status << ',' << l.witness << '\n';
    }
    emit(c, os.str());
    return all_ok ? kExitOk : kExitVerification;
}

// ------------------------------------------------------------------- embed

int cmd_embed(const Common& c, double lambda, const std::string& m_text,
              const std::string& b_text) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const FockContext fock(pair);

    SpectrumParam param;
    if (!b_text.empty() && !m_text.empty())
        throw std::invalid_argument("give either --m (type I) or --b (type II), not both");
    if (!b_text.empty()) {
        TypeII p;
        p.b = parse_b(b_text);
        if (p.b.size() != pair.n) throw std::invalid_argument("b has wrong dimension");
        param = std::move(p);
    } else if (!m_text.empty()) {
        TypeI p;
        p.lambda = lambda;
        p.m = parse_m(m_text);
        param = std::move(p);
    } else {
        throw std::invalid_argument("embed needs --m (type I) or --b (type II)");
    }

    const Eigen::VectorXd phi = phi_embed(fock, param);
    const NStarPoint pt = psi_orbit(pair, param, c.seed);
    const Eigen::VectorXd sig = orbit_signature(pair, pt);

    std::ostringstream os;
    if (c.format == "json") {
        os << "{\n  \"pair\": \"" << json_escape(pair.name) << "\",\n  \"type\": \""
           << (std::holds_alternative<TypeI>(param) ? "I" : "II") << "\",\n  \"phi\": "
           << vector_json(phi) << ",\n  \"signature\": " << vector_json(sig) << "\n}\n";
    } else {
        os << "component,phi,signature\n";
        for (int i = 0; i < phi.size(); ++i)
            os << pair.invariants[static_cast<std::size_t>(i)].name << ',' << fmt12(phi[i])
               << ',' << fmt12(sig[i]) << '\n';
    }
    emit(c, os.str());
    return kExitOk;
}

// ----------------------------------------------------------------- converge

int cmd_converge(const Common& c, const std::string& regime_text,
                 const std::string& schedule_text, long n_max) {
    const PairSpec pair = resolve_pair(c.pair_src);
    const FockContext fock(pair);

    Regime regime;
    if (regime_text == "I-I") regime = Regime::ItoI;
    else if (regime_text == "I-II") regime = Regime::ItoII;
    else if (regime_text == "II-II") regime = Regime::IItoII;
    else throw std::invalid_argument("unknown regime: " + regime_text);

    Schedule schedule;
    if (schedule_text == "standard") schedule = Schedule::Standard;
    else if (schedule_text == "minus") schedule = Schedule::Minus;
    else if (schedule_text == "oscillating-m") schedule = Schedule::OscillatingM;
    else if (schedule_text == "linear") schedule = Schedule::Linear;
    else throw std::invalid_argument("unknown schedule: " + schedule_text);

    const ParamSequence seq = make_sequence(pair, regime, n_max, schedule, c.seed);
    const ConvergenceReport rep =
        convergence_experiment(pair, fock, seq, Exec::Parallel, c.seed);

    const std::string csv = convergence_csv(pair, rep);
    const std::string json = convergence_summary_json(pair, rep);
    if (c.out.empty()) {
        std::cout << csv << json;
    } else {
        Common csv_out = c;
        csv_out.out = c.out + ".csv";
        emit(csv_out, csv);
        Common json_out = c;
        json_out.out = c.out + ".json";
        emit(json_out, json);
    }
    return rep.verdict == "co-convergent" ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric engine for nilpotent Gelfand pairs"};
    app.require_subcommand(1);

    Common common;

    auto* pair_cmd = app.add_subcommand("pair", "pair-file operations");
    pair_cmd->require_subcommand(1);
    auto* validate_cmd = pair_cmd->add_subcommand("validate", "run the structural validator");
    attach_common(validate_cmd, common);

    auto* eigentable_cmd =
        app.add_subcommand("eigentable", "type I eigenvalue table over a (lambda, m) grid");
    attach_common(eigentable_cmd, common);
    std::string lambdas = "1/2,1,2";
    long mmax = 2;
    eigentable_cmd->add_option("--lambda", lambdas, "comma-separated rational lambdas");
    eigentable_cmd->add_option("--mmax", mmax, "m ranges over {0..mmax}^rank; -1 for empty");

    auto* spherical_cmd =
        app.add_subcommand("spherical-point", "solve the moment-map equations for one m");
    attach_common(spherical_cmd, common);
    std::string m_text;
    double lambda = 1.0;
    spherical_cmd->add_option("--m", m_text, "comma-separated m")->required();
    spherical_cmd->add_option("--lambda", lambda, "scale of the embedded point");

    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    attach_common(verify_cmd, common);
    std::string suites = "all";
    verify_cmd->add_option("--suite", suites,
                           "all or a comma list of invariance,lemma-top,type2,"
                           "well-adapted,scaling,separation");

    auto* embed_cmd = app.add_subcommand("embed", "eigenvalue vector and orbit signature");
    attach_common(embed_cmd, common);
    std::string embed_m, embed_b;
    double embed_lambda = 1.0;
    embed_cmd->add_option("--m", embed_m, "type I: comma-separated m");
    embed_cmd->add_option("--lambda", embed_lambda, "type I: lambda > 0");
    embed_cmd->add_option("--b", embed_b, "type II: entries re or re:im, comma separated");

    auto* converge_cmd = app.add_subcommand("converge", "convergence experiment report");
    attach_common(converge_cmd, common);
    std::string regime_text = "I-II", schedule_text = "standard";
    long n_max = 1000;
    converge_cmd->add_option("--regime", regime_text, "I-I, I-II or II-II");
    converge_cmd->add_option("--schedule", schedule_text,
                             "standard, minus, oscillating-m or linear");
    converge_cmd->add_option("--n", n_max, "sequence length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return cmd_pair_validate(common);
        if (eigentable_cmd->parsed()) return cmd_eigentable(common, lambdas, mmax);
        if (spherical_cmd->parsed()) return cmd_spherical_point(common, m_text, lambda);
        if (verify_cmd->parsed()) return cmd_verify(common, suites);
        if (embed_cmd->parsed()) return cmd_embed(common, embed_lambda, embed_m, embed_b);
        if (converge_cmd->parsed()) return cmd_converge(common, regime_text, schedule_text, n_max);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const NoConvergence& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const NotEigenvector& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerification;
    }
}
