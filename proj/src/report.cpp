#include "nilspec/report.hpp"

#include <cstdio>
#include <sstream>

namespace nilspec {

std::string fmt12(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string m_poly_str(const MultiPoly& q) {
    if (q.is_zero()) return "0";
    std::string out;
    // Highest monomials first reads like the usual leading-term order.
    for (auto it = q.terms.rbegin(); it != q.terms.rend(); ++it) {
        const auto& [mono, coeff] = *it;
        std::string term;
        const Rat c = coeff.re;
        bool printed_coeff = false;
        if (!(c == 1)) {
            if (c == -1) {
                term += "-";
            } else {
                term += rat_str(c);
                printed_coeff = true;
            }
        }
        bool any_var = false;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0) continue;
            if (any_var || printed_coeff) term += "*";
            any_var = true;
            term += "m" + std::to_string(i + 1);
            if (mono[i] > 1) term += "^" + std::to_string(mono[i]);
        }
        if (!any_var && (c == 1 || c == -1)) term += "1";
        if (!out.empty()) out += term.size() && term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        else out = term;
    }
    return out;
}

std::string convergence_csv(const PairSpec& pair, const ConvergenceReport& rep) {
    std::ostringstream os;
    os << "n,lambda";
    for (int i = 1; i <= pair.rank(); ++i) os << ",m" << i;
    os << ",d_phi,d_psi\n";
    for (const auto& r : rep.rows) {
        os << r.n << ',' << fmt12(r.lambda);
        for (long mi : r.m) os << ',' << mi;
        os << ',' << fmt12(r.d_phi) << ',' << fmt12(r.d_psi) << '\n';
    }
    return os.str();
}

std::string convergence_summary_json(const PairSpec& pair, const ConvergenceReport& rep) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"pair\": \"" << json_escape(pair.name) << "\",\n";
    os << "  \"regime\": \"" << regime_name(rep.regime) << "\",\n";
    os << "  \"schedule\": \"" << schedule_name(rep.schedule) << "\",\n";
    os << "  \"verdict\": \"" << json_escape(rep.verdict) << "\",\n";
    os << "  \"stabilization_index\": " << rep.stabilization_index << ",\n";
    os << "  \"calibration_constants\": [\n";
    for (std::size_t i = 0; i < rep.calibration.size(); ++i) {
        const auto& c = rep.calibration[i];
        os << "    {\"invariant\": \"" << json_escape(c.invariant) << "\", \"c\": \""
           << rat_str(c.c) << "\", \"lambda_exponent\": " << c.lambda_exponent << ", \"q\": \""
           << json_escape(m_poly_str(c.q)) << "\"}" << (i + 1 < rep.calibration.size() ? "," : "")
           << "\n";
    }
    os << "  ],\n";
    os << "  \"checkpoint\": {\"n\": " << rep.checkpoint_n << ", \"d_phi\": "
       << fmt12(rep.checkpoint_d_phi) << ", \"d_psi\": " << fmt12(rep.checkpoint_d_psi)
       << ", \"tolerance\": " << fmt12(rep.checkpoint_tol) << "},\n";
    os << "  \"tail\": {\"max_d_phi\": " << fmt12(rep.tail_max_phi) << ", \"max_d_psi\": "
       << fmt12(rep.tail_max_psi) << ", \"ratio_phi_psi\": " << fmt12(rep.tail_ratio_phi_psi)
       << ", \"ratio_psi_phi\": " << fmt12(rep.tail_ratio_psi_phi) << "},\n";
    if (rep.regime == Regime::ItoII) {
        os << "  \"mixed_max_final\": " << fmt12(rep.mixed_max_final) << ",\n";
        os << "  \"lower_order_final\": " << fmt12(rep.lower_order_final) << ",\n";
    }
    os << "  \"rows\": " << rep.rows.size() << ",\n";
    os << "  \"notes\": [";
    for (std::size_t i = 0; i < rep.notes.size(); ++i)
        os << (i ? ", " : "") << "\"" << json_escape(rep.notes[i]) << "\"";
    os << "]\n";
    os << "}\n";
    return os.str();
}

}  // namespace nilspec
