// Timing comparison of the serial reference sweeps against the OpenMP path.
// Both paths must serialize to identical bytes; any mismatch aborts the run.

#include "nilspec/fock.hpp"
#include "nilspec/report.hpp"
#include "nilspec/spectrum.hpp"
#include "nilspec/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace nilspec;

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

std::string injectivity_digest(const InjectivityReport& r) {
    std::ostringstream os;
    os << r.count << '|' << fmt12(r.min_phi_gap) << '|' << fmt12(r.min_psi_gap) << '|'
       << (r.ok ? 1 : 0);
    return os.str();
}

struct Row {
    std::string name;
    double serial = 0.0;
    double parallel = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
    const long n_conv = argc > 1 ? std::atol(argv[1]) : 2000;
    const int n_inj = argc > 2 ? std::atoi(argv[2]) : 300;

    const PairSpec pair = builtin_u2su2();
    const FockContext fock(pair);

    std::vector<Row> rows;

    {
        Row row{"injectivity scan (" + std::to_string(n_inj) + " params)"};
        std::string serial_digest, parallel_digest;
        InjectivityReport rs, rp;
        row.serial = seconds(
            [&] { rs = injectivity_scan(pair, fock, n_inj, 0, 1e-6, Exec::Serial); });
        row.parallel = seconds(
            [&] { rp = injectivity_scan(pair, fock, n_inj, 0, 1e-6, Exec::Parallel); });
        serial_digest = injectivity_digest(rs);
        parallel_digest = injectivity_digest(rp);
        if (serial_digest != parallel_digest) {
            std::cerr << "MISMATCH injectivity: " << serial_digest << " vs " << parallel_digest
                      << '\n';
            return 1;
        }
        rows.push_back(row);
    }

    const struct {
        Regime regime;
        Schedule schedule;
    } experiments[] = {
        {Regime::ItoII, Schedule::Standard},
        {Regime::IItoII, Schedule::Standard},
    };
    for (const auto& e : experiments) {
        const ParamSequence seq = make_sequence(pair, e.regime, n_conv, e.schedule, 0);
        Row row{std::string("converge ") + regime_name(e.regime) + " " +
                schedule_name(e.schedule) + " (n=" + std::to_string(n_conv) + ")"};
        std::string serial_bytes, parallel_bytes;
        row.serial = seconds([&] {
            const auto rep = convergence_experiment(pair, fock, seq, Exec::Serial, 0);
            serial_bytes = convergence_csv(pair, rep) + convergence_summary_json(pair, rep);
        });
        row.parallel = seconds([&] {
            const auto rep = convergence_experiment(pair, fock, seq, Exec::Parallel, 0);
            parallel_bytes = convergence_csv(pair, rep) + convergence_summary_json(pair, rep);
        });
        if (serial_bytes != parallel_bytes) {
            std::cerr << "MISMATCH " << row.name << ": serialized outputs differ\n";
            return 1;
        }
        rows.push_back(row);
    }

    std::printf("OpenMP available: %s\n\n", parallel_available() ? "yes" : "no");
    std::printf("%-44s %10s %10s %8s\n", "sweep", "serial[s]", "openmp[s]", "speedup");
    for (const auto& row : rows)
        std::printf("%-44s %10.3f %10.3f %7.2fx\n", row.name.c_str(), row.serial, row.parallel,
                    row.parallel > 0 ? row.serial / row.parallel : 0.0);
    std::printf("\nall serialized outputs byte-identical across execution modes\n");
    return 0;
}
