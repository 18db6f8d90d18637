#include "nilspec/pair_spec.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace nilspec {

namespace {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where + ": rational must be a string \"p\" or \"p/q\"");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const std::exception& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

Json scalar_to_json(const Scalar& s) { return Json::array({rat_str(s.re), rat_str(s.im)}); }

Scalar scalar_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError(where + ": Gaussian rational must be a two-element array [re, im]");
    return Scalar(rat_from_json(j[0], where + "[0]"), rat_from_json(j[1], where + "[1]"));
}

Json rat_matrix_to_json(const std::vector<std::vector<Rat>>& m) {
    Json rows = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(rat_to_json(x));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::vector<Rat>> rat_matrix_from_json(const Json& j, int rows, int cols,
                                                   const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw SchemaError(where + ": expected " + std::to_string(rows) + " rows");
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols));
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw SchemaError(where + "[" + std::to_string(i) + "]: expected " +
                              std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k)
            m[i][k] = rat_from_json(j[i][k], where + "[" + std::to_string(i) + "][" +
                                                  std::to_string(k) + "]");
    }
    return m;
}

Json poly_to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [mono, c] : p.terms) {
        Json t;
        t["exponents"] = mono;
        t["coeff"] = scalar_to_json(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

MultiPoly poly_from_json(const Json& j, const VarSpace& sp, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": polynomial must be an array of terms");
    MultiPoly p = MultiPoly::zero(sp);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& t = j[k];
        const std::string tw = where + "[" + std::to_string(k) + "]";
        if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
            throw SchemaError(tw + ": term must have \"exponents\" and \"coeff\"");
        const Json& ex = t["exponents"];
        if (!ex.is_array() || static_cast<int>(ex.size()) != sp.total())
            throw SchemaError(tw + ": expected " + std::to_string(sp.total()) + " exponents");
        Mono mono(sp.total(), 0);
        for (int i = 0; i < sp.total(); ++i) {
            if (!ex[i].is_number_unsigned())
                throw SchemaError(tw + ": exponents must be nonnegative integers");
            mono[i] = ex[i].get<std::uint32_t>();
        }
        p.add_term(mono, scalar_from_json(t["coeff"], tw + ".coeff"));
    }
    return p;
}

Json map_to_json(const LinearMap& Z, const VarSpace& sp) {
    Json vb = Json::array();
    for (int i = 0; i < sp.n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < sp.n; ++j) row.push_back(scalar_to_json(Z.M[sp.v(i)][sp.v(j)]));
        vb.push_back(std::move(row));
    }
    Json tb = Json::array();
    for (int a = 0; a < sp.d; ++a) {
        Json row = Json::array();
        for (int b = 0; b < sp.d; ++b) row.push_back(rat_to_json(Z.M[sp.t(a)][sp.t(b)].re));
        tb.push_back(std::move(row));
    }
    Json out;
    out["v_block"] = std::move(vb);
    out["t_block"] = std::move(tb);
    return out;
}

LinearMap map_from_json(const Json& j, const VarSpace& sp, const std::string& where) {
    if (!j.is_object() || !j.contains("v_block") || !j.contains("t_block"))
        throw SchemaError(where + ": expected {\"v_block\", \"t_block\"}");
    const Json& vb = j["v_block"];
    if (!vb.is_array() || static_cast<int>(vb.size()) != sp.n)
        throw SchemaError(where + ".v_block: expected " + std::to_string(sp.n) + " rows");
    std::vector<std::vector<Scalar>> B(sp.n, std::vector<Scalar>(sp.n));
    for (int i = 0; i < sp.n; ++i) {
        if (!vb[i].is_array() || static_cast<int>(vb[i].size()) != sp.n)
            throw SchemaError(where + ".v_block: expected square matrix");
        for (int k = 0; k < sp.n; ++k)
            B[i][k] = scalar_from_json(vb[i][k], where + ".v_block entry");
    }
    auto T = rat_matrix_from_json(j["t_block"], sp.d, sp.d, where + ".t_block");
    return LinearMap::from_complex(sp, B, T);
}

template <typename T>
T require(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw SchemaError("missing field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw SchemaError("field \"" + key + "\" has the wrong type");
    }
}

const Json& require_field(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw SchemaError("missing field \"" + key + "\"");
    return j.at(key);
}

} // namespace

std::string pair_to_json_text(const PairSpec& pair) {
    Json j;
    j["format"] = 1;
    j["name"] = pair.name;
    j["n"] = pair.n;
    j["d"] = pair.d;
    Json a = Json::array();
    for (const auto& x : pair.A) a.push_back(rat_to_json(x));
    j["A"] = std::move(a);
    Json br = Json::array();
    for (const auto& ba : pair.bracket) br.push_back(rat_matrix_to_json(ba));
    j["bracket"] = std::move(br);
    Json kb = Json::array();
    for (const auto& z : pair.k_basis) kb.push_back(map_to_json(z, pair.space));
    j["k_basis"] = std::move(kb);
    Json kab = Json::array();
    for (const auto& z : pair.kA_basis) kab.push_back(map_to_json(z, pair.space));
    j["kA_basis"] = std::move(kab);
    Json ti = Json::array();
    for (int i = 0; i < pair.torus_size; ++i) ti.push_back(i);
    j["torus_indices"] = std::move(ti);
    Json invs = Json::array();
    for (const auto& inv : pair.invariants) {
        Json ij;
        ij["name"] = inv.name;
        ij["bidegree"] = Json::array({inv.s, inv.z});
        ij["terms"] = poly_to_json(inv.poly);
        invs.push_back(std::move(ij));
    }
    j["invariants"] = std::move(invs);
    Json hws = Json::array();
    for (const auto& h : pair.hw_generators) hws.push_back(poly_to_json(h));
    j["hw_generators"] = std::move(hws);
    j["weights"] = pair.weights;
    Json ip;
    ip["V"] = rat_matrix_to_json(pair.gram_V);
    ip["z"] = rat_matrix_to_json(pair.gram_Z);
    j["inner_product"] = std::move(ip);
    return j.dump(2) + "\n";
}

PairSpec pair_from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("pair file must be a JSON object");
    const int format = require<int>(j, "format");
    if (format != 1) throw SchemaError("unsupported format " + std::to_string(format) +
                                       " (this reader understands format 1)");
    PairSpec P;
    P.name = require<std::string>(j, "name");
    P.n = require<int>(j, "n");
    P.d = require<int>(j, "d");
    if (P.n < 1 || P.d < 1) throw SchemaError("n and d must be positive");
    P.space = VarSpace{P.n, P.d};

    const Json& a = require_field(j, "A");
    if (!a.is_array() || static_cast<int>(a.size()) != P.d)
        throw SchemaError("A: expected " + std::to_string(P.d) + " coordinates");
    for (int i = 0; i < P.d; ++i) P.A.push_back(rat_from_json(a[i], "A"));

    const Json& ip = require_field(j, "inner_product");
    if (!ip.is_object() || !ip.contains("V") || !ip.contains("z"))
        throw SchemaError("inner_product: expected {\"V\", \"z\"} Gram matrices");
    P.gram_V = rat_matrix_from_json(ip.at("V"), 2 * P.n, 2 * P.n, "inner_product.V");
    P.gram_Z = rat_matrix_from_json(ip.at("z"), P.d, P.d, "inner_product.z");

    const Json& br = require_field(j, "bracket");
    if (!br.is_array() || static_cast<int>(br.size()) != P.d)
        throw SchemaError("bracket: expected " + std::to_string(P.d) + " matrices");
    for (int aidx = 0; aidx < P.d; ++aidx)
        P.bracket.push_back(rat_matrix_from_json(br[aidx], 2 * P.n, 2 * P.n,
                                                 "bracket[" + std::to_string(aidx) + "]"));

    const Json& kb = require_field(j, "k_basis");
    if (!kb.is_array() || kb.empty()) throw SchemaError("k_basis: expected a nonempty array");
    for (std::size_t i = 0; i < kb.size(); ++i)
        P.k_basis.push_back(map_from_json(kb[i], P.space, "k_basis[" + std::to_string(i) + "]"));

    const Json& kab = require_field(j, "kA_basis");
    if (!kab.is_array() || kab.empty()) throw SchemaError("kA_basis: expected a nonempty array");
    std::vector<LinearMap> kA_raw;
    for (std::size_t i = 0; i < kab.size(); ++i)
        kA_raw.push_back(map_from_json(kab[i], P.space, "kA_basis[" + std::to_string(i) + "]"));

    // torus_indices select the torus sub-basis; internally it is stored first.
    const Json& ti = require_field(j, "torus_indices");
    if (!ti.is_array() || ti.empty() || ti.size() > kA_raw.size())
        throw SchemaError("torus_indices: expected a nonempty array of kA_basis indices");
    std::vector<bool> is_torus(kA_raw.size(), false);
    for (const auto& x : ti) {
        if (!x.is_number_integer()) throw SchemaError("torus_indices: entries must be integers");
        long k = x.get<long>();
        if (k < 0 || k >= static_cast<long>(kA_raw.size()) || is_torus[k])
            throw SchemaError("torus_indices: index out of range or repeated");
        is_torus[k] = true;
        P.kA_basis.push_back(kA_raw[k]);
    }
    for (std::size_t i = 0; i < kA_raw.size(); ++i)
        if (!is_torus[i]) P.kA_basis.push_back(kA_raw[i]);
    P.torus_size = static_cast<int>(ti.size());

    const Json& invs = require_field(j, "invariants");
    if (!invs.is_array() || invs.size() < 2)
        throw SchemaError("invariants: expected at least p0 and p1");
    for (std::size_t i = 0; i < invs.size(); ++i) {
        const Json& ij = invs[i];
        const std::string where = "invariants[" + std::to_string(i) + "]";
        if (!ij.is_object()) throw SchemaError(where + ": expected an object");
        Invariant inv;
        inv.name = require<std::string>(ij, "name");
        const Json& bd = require_field(ij, "bidegree");
        if (!bd.is_array() || bd.size() != 2 || !bd[0].is_number_integer() ||
            !bd[1].is_number_integer())
            throw SchemaError(where + ".bidegree: expected [s, z]");
        inv.s = bd[0].get<long>();
        inv.z = bd[1].get<long>();
        inv.poly = poly_from_json(require_field(ij, "terms"), P.space, where + ".terms");
        P.invariants.push_back(std::move(inv));
    }

    const Json& hws = require_field(j, "hw_generators");
    if (!hws.is_array() || hws.empty())
        throw SchemaError("hw_generators: expected a nonempty array");
    for (std::size_t i = 0; i < hws.size(); ++i)
        P.hw_generators.push_back(
            poly_from_json(hws[i], P.space, "hw_generators[" + std::to_string(i) + "]"));

    const Json& w = require_field(j, "weights");
    if (!w.is_array() || w.size() != hws.size())
        throw SchemaError("weights: expected one row per highest weight generator");
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Json& row = w[i];
        if (!row.is_array() || static_cast<int>(row.size()) != P.torus_size)
            throw SchemaError("weights[" + std::to_string(i) + "]: expected torus_size entries");
        std::vector<long> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw SchemaError("weights[" + std::to_string(i) + "]: entries must be integers");
            r.push_back(x.get<long>());
        }
        P.weights.push_back(std::move(r));
    }
    return P;
}

PairSpec load_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open pair file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return pair_from_json_text(ss.str());
}

void save_pair(const PairSpec& pair, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write pair file: " + path);
    out << pair_to_json_text(pair);
}

PairSpec resolve_pair(const std::string& name_or_path) {
    if (auto b = builtin_by_name(name_or_path)) return *b;
    if (std::filesystem::exists(name_or_path)) return load_pair(name_or_path);
    std::string names;
    for (const auto& n : builtin_names()) names += (names.empty() ? "" : ", ") + n;
    throw SchemaError("\"" + name_or_path + "\" is neither a builtin pair (" + names +
                      ") nor an existing pair file");
}

} // namespace nilspec
