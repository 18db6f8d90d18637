#include "nilspec/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace nilspec {

std::string scalar_str(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::string out;
    if (s.re != 0) out += rat_str(s.re);
    if (s.im != 0) {
        if (s.im > 0 && !out.empty()) out += "+";
        if (s.im == 1)
            out += "i";
        else if (s.im == -1)
            out += "-i";
        else
            out += rat_str(s.im) + "i";
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << scalar_str(s); }

std::string var_name(const VarSpace& sp, int idx) {
    if (sp.is_v(idx)) return "v" + std::to_string(idx + 1);
    if (sp.is_w(idx)) return "w" + std::to_string(idx - sp.n + 1);
    if (sp.is_t(idx)) return "t" + std::to_string(idx - 2 * sp.n + 1);
    throw std::out_of_range("variable index");
}

long mono_total_degree(const Mono& e) {
    long s = 0;
    for (auto x : e) s += x;
    return s;
}

long mono_vw_degree(const VarSpace& sp, const Mono& e) {
    long s = 0;
    for (int j = 0; j < 2 * sp.n; ++j) s += e[j];
    return s;
}

long mono_v_degree(const VarSpace& sp, const Mono& e) {
    long s = 0;
    for (int j = 0; j < sp.n; ++j) s += e[j];
    return s;
}

long mono_w_degree(const VarSpace& sp, const Mono& e) {
    long s = 0;
    for (int j = sp.n; j < 2 * sp.n; ++j) s += e[j];
    return s;
}

long mono_t_degree(const VarSpace& sp, const Mono& e) {
    long s = 0;
    for (int j = 2 * sp.n; j < sp.total(); ++j) s += e[j];
    return s;
}

MultiPoly MultiPoly::constant(VarSpace sp, const Scalar& c) {
    MultiPoly p(sp);
    if (!c.is_zero()) p.terms.emplace(Mono(sp.total(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(VarSpace sp, int idx) {
    if (idx < 0 || idx >= sp.total()) throw std::out_of_range("variable index");
    Mono e(sp.total(), 0);
    e[idx] = 1;
    return monomial(sp, e, Scalar(1));
}

MultiPoly MultiPoly::monomial(VarSpace sp, const Mono& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != sp.total())
        throw VarMismatchError("monomial exponent length does not match variable space");
    MultiPoly p(sp);
    if (!c.is_zero()) p.terms.emplace(e, c);
    return p;
}

Scalar MultiPoly::coeff(const Mono& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Scalar(0) : it->second;
}

void MultiPoly::add_term(const Mono& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != space.total())
        throw VarMismatchError("term exponent length does not match variable space");
    if (c.is_zero()) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

void MultiPoly::check_space(const MultiPoly& o) const {
    if (!(space == o.space))
        throw VarMismatchError("operands live in different variable spaces");
}

long MultiPoly::total_degree() const {
    long best = -1;
    for (const auto& [e, c] : terms) best = std::max(best, mono_total_degree(e));
    return best;
}

long MultiPoly::v_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms) best = std::max(best, mono_v_degree(space, e));
    return best;
}

long MultiPoly::w_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms) best = std::max(best, mono_w_degree(space, e));
    return best;
}

long MultiPoly::t_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms) best = std::max(best, mono_t_degree(space, e));
    return best;
}

long MultiPoly::vw_degree() const {
    long best = 0;
    for (const auto& [e, c] : terms) best = std::max(best, mono_vw_degree(space, e));
    return best;
}

bool MultiPoly::is_homogeneous(long k) const {
    for (const auto& [e, c] : terms)
        if (mono_total_degree(e) != k) return false;
    return true;
}

bool MultiPoly::is_vw_homogeneous(long s) const {
    for (const auto& [e, c] : terms)
        if (mono_vw_degree(space, e) != s) return false;
    return true;
}

bool MultiPoly::is_t_homogeneous(long z) const {
    for (const auto& [e, c] : terms)
        if (mono_t_degree(space, e) != z) return false;
    return true;
}

bool MultiPoly::is_bidegree(long a, long b) const {
    for (const auto& [e, c] : terms)
        if (mono_v_degree(space, e) != a || mono_w_degree(space, e) != b) return false;
    return true;
}

bool MultiPoly::uses_only_v() const {
    for (const auto& [e, c] : terms)
        if (mono_w_degree(space, e) != 0 || mono_t_degree(space, e) != 0) return false;
    return true;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(space);
    for (const auto& [e, c] : terms) r.terms.emplace(e, -c);
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_space(o);
    for (const auto& [e, c] : o.terms) add_term(e, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_space(b);
    MultiPoly r(a.space);
    Mono e(a.space.total());
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    MultiPoly r(space);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms) r.terms.emplace(e, k * c);
    return r;
}

MultiPoly MultiPoly::pow(long k) const {
    if (k < 0) throw std::domain_error("negative polynomial power");
    MultiPoly acc = constant(space, Scalar(1));
    MultiPoly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.space == b.space && a.terms == b.terms;
}

MultiPoly MultiPoly::derivative(int idx) const {
    if (idx < 0 || idx >= space.total()) throw std::out_of_range("variable index");
    MultiPoly r(space);
    for (const auto& [e, c] : terms) {
        if (e[idx] == 0) continue;
        Mono f = e;
        f[idx] -= 1;
        r.add_term(f, c * Scalar(static_cast<long>(e[idx])));
    }
    return r;
}

MultiPoly MultiPoly::substitute(const VarSpace& target, const std::vector<MultiPoly>& images) const {
    if (static_cast<int>(images.size()) != space.total())
        throw VarMismatchError("substitute requires one image per source variable");
    for (const auto& im : images)
        if (!(im.space == target)) throw VarMismatchError("substitution image in wrong space");

    MultiPoly r = MultiPoly::zero(target);
    for (const auto& [e, c] : terms) {
        MultiPoly t = MultiPoly::constant(target, c);
        for (int j = 0; j < space.total(); ++j)
            if (e[j] > 0) t = t * images[j].pow(e[j]);
        r += t;
    }
    return r;
}

MultiPoly MultiPoly::substitute_partial(const std::map<int, MultiPoly>& images) const {
    std::vector<MultiPoly> full;
    full.reserve(space.total());
    for (int j = 0; j < space.total(); ++j) {
        auto it = images.find(j);
        full.push_back(it == images.end() ? MultiPoly::variable(space, j) : it->second);
    }
    return substitute(space, full);
}

namespace {

std::complex<double> cpow_u32(std::complex<double> b, std::uint32_t k) {
    std::complex<double> acc(1.0, 0.0);
    while (k) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

} // namespace

std::complex<double> MultiPoly::evaluate_vars(const std::vector<std::complex<double>>& vals) const {
    if (static_cast<int>(vals.size()) != space.total())
        throw VarMismatchError("evaluate_vars requires one value per variable");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [e, c] : terms) {
        std::complex<double> t = c.to_complex();
        for (int j = 0; j < space.total(); ++j)
            if (e[j]) t *= cpow_u32(vals[j], e[j]);
        acc += t;
    }
    return acc;
}

Scalar MultiPoly::evaluate_vars_exact(const std::vector<Scalar>& vals) const {
    if (static_cast<int>(vals.size()) != space.total())
        throw VarMismatchError("evaluate_vars requires one value per variable");
    Scalar acc(0);
    for (const auto& [e, c] : terms) {
        Scalar t = c;
        for (int j = 0; j < space.total(); ++j)
            if (e[j]) t *= scalar_pow(vals[j], e[j]);
        acc += t;
    }
    return acc;
}

std::complex<double> MultiPoly::evaluate(const std::vector<std::complex<double>>& v_vals,
                                         const std::vector<double>& t_vals) const {
    if (static_cast<int>(v_vals.size()) != space.n || static_cast<int>(t_vals.size()) != space.d)
        throw VarMismatchError("evaluate: wrong number of v or t values");
    std::vector<std::complex<double>> all(space.total());
    for (int i = 0; i < space.n; ++i) {
        all[space.v(i)] = v_vals[i];
        all[space.w(i)] = std::conj(v_vals[i]);
    }
    for (int a = 0; a < space.d; ++a) all[space.t(a)] = t_vals[a];
    return evaluate_vars(all);
}

Scalar MultiPoly::evaluate_exact(const std::vector<Scalar>& v_vals,
                                 const std::vector<Rat>& t_vals) const {
    if (static_cast<int>(v_vals.size()) != space.n || static_cast<int>(t_vals.size()) != space.d)
        throw VarMismatchError("evaluate: wrong number of v or t values");
    std::vector<Scalar> all(space.total());
    for (int i = 0; i < space.n; ++i) {
        all[space.v(i)] = v_vals[i];
        all[space.w(i)] = v_vals[i].conj();
    }
    for (int a = 0; a < space.d; ++a) all[space.t(a)] = Scalar(t_vals[a]);
    return evaluate_vars_exact(all);
}

std::complex<double> MultiPoly::formal_i_eval(const std::vector<std::complex<double>>& b) const {
    if (static_cast<int>(b.size()) != space.n)
        throw VarMismatchError("formal_i_eval: wrong number of b values");
    const std::complex<double> I(0.0, 1.0);
    std::vector<std::complex<double>> all(space.total(), std::complex<double>(0.0, 0.0));
    for (int i = 0; i < space.n; ++i) {
        all[space.v(i)] = I * b[i];
        all[space.w(i)] = I * std::conj(b[i]);
    }
    return evaluate_vars(all);
}

Scalar MultiPoly::formal_i_eval_exact(const std::vector<Scalar>& b) const {
    if (static_cast<int>(b.size()) != space.n)
        throw VarMismatchError("formal_i_eval: wrong number of b values");
    std::vector<Scalar> all(space.total(), Scalar(0));
    for (int i = 0; i < space.n; ++i) {
        all[space.v(i)] = Scalar::i() * b[i];
        all[space.w(i)] = Scalar::i() * b[i].conj();
    }
    return evaluate_vars_exact(all);
}

MultiPoly MultiPoly::homogeneous_component(long k) const {
    MultiPoly r(space);
    for (const auto& [e, c] : terms)
        if (mono_total_degree(e) == k) r.terms.emplace(e, c);
    return r;
}

MultiPoly MultiPoly::top_term() const {
    return homogeneous_component(total_degree());
}

MultiPoly MultiPoly::bar() const {
    MultiPoly r(space);
    Mono f(space.total());
    for (const auto& [e, c] : terms) {
        f = e;
        for (int i = 0; i < space.n; ++i) std::swap(f[space.v(i)], f[space.w(i)]);
        r.add_term(f, c.conj());
    }
    return r;
}

std::string MultiPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << scalar_str(c) << ")";
        for (int j = 0; j < space.total(); ++j) {
            if (e[j] == 0) continue;
            os << "*" << var_name(space, j);
            if (e[j] > 1) os << "^" << e[j];
        }
    }
    return os.str();
}

LinearMap LinearMap::identity(VarSpace sp) {
    LinearMap z(sp);
    for (int j = 0; j < sp.total(); ++j) z.M[j][j] = Scalar(1);
    return z;
}

LinearMap LinearMap::from_complex(VarSpace sp,
                                  const std::vector<std::vector<Scalar>>& B,
                                  const std::vector<std::vector<Rat>>& T) {
    if (static_cast<int>(B.size()) != sp.n) throw VarMismatchError("from_complex: B must be n x n");
    if (static_cast<int>(T.size()) != sp.d) throw VarMismatchError("from_complex: T must be d x d");
    LinearMap z(sp);
    for (int i = 0; i < sp.n; ++i) {
        if (static_cast<int>(B[i].size()) != sp.n) throw VarMismatchError("from_complex: B must be n x n");
        for (int j = 0; j < sp.n; ++j) {
            z.M[sp.v(i)][sp.v(j)] = B[i][j];
            z.M[sp.w(i)][sp.w(j)] = B[i][j].conj();
        }
    }
    for (int a = 0; a < sp.d; ++a) {
        if (static_cast<int>(T[a].size()) != sp.d) throw VarMismatchError("from_complex: T must be d x d");
        for (int b = 0; b < sp.d; ++b) z.M[sp.t(a)][sp.t(b)] = Scalar(T[a][b]);
    }
    return z;
}

LinearMap LinearMap::scaled(const Scalar& c) const {
    LinearMap z(space);
    for (int j = 0; j < space.total(); ++j)
        for (int k = 0; k < space.total(); ++k) z.M[j][k] = M[j][k] * c;
    return z;
}

MultiPoly LinearMap::apply_to_variable(int idx) const {
    MultiPoly r(space);
    Mono e(space.total(), 0);
    for (int k = 0; k < space.total(); ++k) {
        if (M[idx][k].is_zero()) continue;
        e[k] = 1;
        r.add_term(e, M[idx][k]);
        e[k] = 0;
    }
    return r;
}

MultiPoly infinitesimal_action(const LinearMap& Z, const MultiPoly& p) {
    if (!(Z.space == p.space))
        throw VarMismatchError("linear map and polynomial live in different variable spaces");
    MultiPoly r(p.space);
    for (int j = 0; j < p.space.total(); ++j) {
        MultiPoly dj = p.derivative(j);
        if (dj.is_zero()) continue;
        r -= Z.apply_to_variable(j) * dj;
    }
    return r;
}

} // namespace nilspec
