#include "nilspec/weyl.hpp"

#include <sstream>

namespace nilspec {

namespace {

// e * (e-1) * ... * (e-b+1), exact
Rat falling(std::uint32_t e, std::uint32_t b) {
    mpz_class acc = 1;
    for (std::uint32_t j = 0; j < b; ++j) acc *= static_cast<long>(e - j);
    return Rat(acc);
}

Rat binom(std::uint32_t n, std::uint32_t k) {
    if (k > n) return Rat(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rat(r);
}

} // namespace

void WeylOp::add_term(const Mono& mult, const Mono& deriv, const Scalar& c) {
    if (static_cast<int>(mult.size()) != space.n || static_cast<int>(deriv.size()) != space.n)
        throw VarMismatchError("operator exponent length must equal the holomorphic dimension");
    if (c.is_zero()) return;
    auto key = std::make_pair(mult, deriv);
    auto [it, fresh] = terms.emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
    if (!(space == o.space)) throw VarMismatchError("operator spaces differ");
    for (const auto& [k, c] : o.terms) add_term(k.first, k.second, c);
    return *this;
}

WeylOp WeylOp::scaled(const Scalar& c) const {
    WeylOp r(space);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms) r.terms.emplace(k, v * c);
    return r;
}

long WeylOp::mult_degree() const {
    long best = 0;
    for (const auto& [k, c] : terms) best = std::max(best, mono_total_degree(k.first));
    return best;
}

long WeylOp::deriv_degree() const {
    long best = 0;
    for (const auto& [k, c] : terms) best = std::max(best, mono_total_degree(k.second));
    return best;
}

std::string WeylOp::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << scalar_str(c) << ")";
        for (int i = 0; i < space.n; ++i)
            if (k.first[i]) {
                os << "*v" << (i + 1);
                if (k.first[i] > 1) os << "^" << k.first[i];
            }
        for (int i = 0; i < space.n; ++i)
            if (k.second[i]) {
                os << "*d" << (i + 1);
                if (k.second[i] > 1) os << "^" << k.second[i];
            }
    }
    return os.str();
}

WeylOp quantize(const MultiPoly& p) {
    if (p.t_degree() != 0)
        throw std::invalid_argument("quantize: polynomial contains central variables");
    const VarSpace& sp = p.space;
    WeylOp D(sp);
    Mono mult(sp.n), deriv(sp.n);
    for (const auto& [e, c] : p.terms) {
        for (int i = 0; i < sp.n; ++i) {
            mult[i] = e[sp.v(i)];
            deriv[i] = e[sp.w(i)];
        }
        D.add_term(mult, deriv, c);
    }
    return D;
}

MultiPoly weyl_apply(const WeylOp& D, const MultiPoly& p) {
    if (!(D.space == p.space)) throw VarMismatchError("operator and argument spaces differ");
    if (!p.uses_only_v())
        throw std::invalid_argument("weyl_apply: argument must be holomorphic (v-variables only)");
    const VarSpace& sp = p.space;
    MultiPoly r(sp);
    for (const auto& [key, c] : D.terms) {
        const Mono& a = key.first;
        const Mono& b = key.second;
        for (const auto& [e, pc] : p.terms) {
            Scalar coef = c * pc;
            Mono out(sp.total(), 0);
            bool dead = false;
            for (int i = 0; i < sp.n; ++i) {
                std::uint32_t ei = e[sp.v(i)];
                if (b[i] > ei) {
                    dead = true;
                    break;
                }
                if (b[i]) coef *= Scalar(falling(ei, b[i]));
                out[sp.v(i)] = ei - b[i] + a[i];
            }
            if (dead || coef.is_zero()) continue;
            r.add_term(out, coef);
        }
    }
    return r;
}

WeylOp weyl_compose(const WeylOp& D1, const WeylOp& D2) {
    if (!(D1.space == D2.space)) throw VarMismatchError("operator spaces differ");
    const int n = D1.space.n;
    WeylOp r(D1.space);
    Mono mult(n), deriv(n), k(n);
    // d^b v^c = sum_k binom(b,k) falling(c,k) v^{c-k} d^{b-k}, componentwise
    for (const auto& [k1, c1] : D1.terms)
        for (const auto& [k2, c2] : D2.terms) {
            const Mono& a1 = k1.first;
            const Mono& b1 = k1.second;
            const Mono& a2 = k2.first;
            const Mono& b2 = k2.second;
            std::fill(k.begin(), k.end(), 0);
            while (true) {
                Scalar coef = c1 * c2;
                for (int i = 0; i < n; ++i)
                    if (k[i]) coef *= Scalar(binom(b1[i], k[i]) * falling(a2[i], k[i]));
                if (!coef.is_zero()) {
                    for (int i = 0; i < n; ++i) {
                        mult[i] = a1[i] + a2[i] - k[i];
                        deriv[i] = b1[i] - k[i] + b2[i];
                    }
                    r.add_term(mult, deriv, coef);
                }
                // advance the multi-index k over 0 <= k_i <= min(b1_i, a2_i)
                int pos = 0;
                for (; pos < n; ++pos) {
                    if (k[pos] < std::min(b1[pos], a2[pos])) {
                        ++k[pos];
                        break;
                    }
                    k[pos] = 0;
                }
                if (pos == n) break;
            }
        }
    return r;
}

} // namespace nilspec
