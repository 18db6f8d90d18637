#include "nilspec/pair_spec.hpp"

namespace nilspec {

namespace {

using CMat = std::vector<std::vector<Scalar>>;

CMat cmat_zero(int n) { return CMat(n, std::vector<Scalar>(n)); }

CMat cmat_mul(const CMat& a, const CMat& b) {
    const int n = static_cast<int>(a.size());
    CMat c = cmat_zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

CMat cmat_sub(const CMat& a, const CMat& b) {
    CMat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
    return c;
}

Scalar cmat_trace(const CMat& a) {
    Scalar t;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

std::vector<std::vector<Rat>> rat_zero(int r, int c) {
    return std::vector<std::vector<Rat>>(r, std::vector<Rat>(c, Rat(0)));
}

std::vector<std::vector<Rat>> rat_id(int n) {
    auto g = rat_zero(n, n);
    for (int i = 0; i < n; ++i) g[i][i] = 1;
    return g;
}

MultiPoly v_norm2(const VarSpace& sp) {
    MultiPoly p = MultiPoly::zero(sp);
    for (int i = 0; i < sp.n; ++i)
        p += MultiPoly::variable(sp, sp.v(i)) * MultiPoly::variable(sp, sp.w(i));
    return p;
}

MultiPoly t_norm2(const VarSpace& sp) {
    MultiPoly p = MultiPoly::zero(sp);
    for (int a = 0; a < sp.d; ++a) {
        MultiPoly t = MultiPoly::variable(sp, sp.t(a));
        p += t * t;
    }
    return p;
}

} // namespace

PairSpec builtin_heisenberg_un(int n) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("builtin_heisenberg_un: n must be between 1 and 4");
    PairSpec P;
    P.name = "heisenberg-u" + std::to_string(n);
    P.n = n;
    P.d = 1;
    P.space = VarSpace{n, 1};
    P.A = {Rat(1)};
    P.gram_V = rat_id(2 * n);
    P.gram_Z = rat_id(1);

    // [x, y] = -Im<x, y> (Hermitian form conjugate-linear in the first slot).
    P.bracket.assign(1, rat_zero(2 * n, 2 * n));
    for (int i = 0; i < n; ++i) {
        P.bracket[0][2 * i][2 * i + 1] = -1;
        P.bracket[0][2 * i + 1][2 * i] = 1;
    }

    // u(n) basis: torus iE_11..iE_nn first, then E_jk - E_kj and i(E_jk + E_kj).
    auto make_un = [&](const CMat& X) {
        return LinearMap::from_complex(P.space, X, rat_zero(1, 1));
    };
    for (int j = 0; j < n; ++j) {
        CMat X = cmat_zero(n);
        X[j][j] = Scalar::i();
        P.k_basis.push_back(make_un(X));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            CMat X = cmat_zero(n);
            X[j][k] = Scalar(1);
            X[k][j] = Scalar(-1);
            P.k_basis.push_back(make_un(X));
            CMat Y = cmat_zero(n);
            Y[j][k] = Scalar::i();
            Y[k][j] = Scalar::i();
            P.k_basis.push_back(make_un(Y));
        }
    P.kA_basis = P.k_basis;  // the center is fixed by all of K
    P.torus_size = n;

    P.invariants.push_back({"p0", t_norm2(P.space), 0, 2});
    P.invariants.push_back({"p1", v_norm2(P.space), 2, 0});

    P.hw_generators.push_back(MultiPoly::variable(P.space, P.space.v(0)));
    P.weights.assign(1, std::vector<long>(n, 0));
    P.weights[0][0] = 1;
    return P;
}

PairSpec builtin_u2su2() {
    PairSpec P;
    P.name = "u2su2";
    P.n = 4;  // V = 2x2 complex matrices, v-coordinates row-major: u11 u12 u21 u22
    P.d = 3;  // center su(2), orthonormal basis Z1, Z2, Z3 for -1/2 Re tr(WZ)
    P.space = VarSpace{4, 3};
    P.A = {Rat(1), Rat(0), Rat(0)};  // A = Z1
    P.gram_V = rat_id(8);
    P.gram_Z = rat_id(3);

    const Scalar I = Scalar::i();
    CMat Z1 = {{I, Scalar()}, {Scalar(), -I}};
    CMat Z2 = {{Scalar(), Scalar(1)}, {Scalar(-1), Scalar()}};
    CMat Z3 = {{Scalar(), I}, {I, Scalar()}};
    const std::vector<CMat> Z = {Z1, Z2, Z3};

    auto idx = [](int i, int j) { return 2 * i + j; };

    // Real basis of V: e_{2p} = E_p, e_{2p+1} = i E_p, p the flat matrix index.
    auto real_basis = [&](int k) {
        CMat e = cmat_zero(2);
        e[(k / 2) / 2][(k / 2) % 2] = (k % 2 == 0) ? Scalar(1) : Scalar::i();
        return e;
    };

    // <x, y> = Re tr(x* y). The bracket [x,y] = proj_su2(x y* - y x*) satisfies
    // <[x,y], Z_a> = <x, Z_a y> for traceless Z_a, which is what gets tabulated.
    P.bracket.assign(3, rat_zero(8, 8));
    for (int a = 0; a < 3; ++a)
        for (int j = 0; j < 8; ++j) {
            CMat m = cmat_mul(Z[a], real_basis(j));
            for (int i = 0; i < 8; ++i) {
                const CMat ei = real_basis(i);
                Scalar acc;
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) acc += ei[r][c].conj() * m[r][c];
                P.bracket[a][i][j] = acc.re;
            }
        }

    // gamma_X = (u -> X u, ad(X) on the center); delta_Y = (u -> -u Y, 0).
    auto left_mult = [&](const CMat& X) {
        CMat B = cmat_zero(4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) B[idx(i, j)][idx(k, j)] += X[i][k];
        return B;
    };
    auto right_mult_neg = [&](const CMat& Y) {
        CMat B = cmat_zero(4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l) B[idx(i, j)][idx(i, l)] -= Y[l][j];
        return B;
    };
    auto ad_center = [&](const CMat& X) {
        auto T = rat_zero(3, 3);
        for (int b = 0; b < 3; ++b) {
            CMat c = cmat_sub(cmat_mul(X, Z[b]), cmat_mul(Z[b], X));
            for (int a = 0; a < 3; ++a) {
                Scalar tr = cmat_trace(cmat_mul(c, Z[a]));
                T[a][b] = -tr.re / 2;
            }
        }
        return T;
    };
    auto gamma = [&](const CMat& X) {
        return LinearMap::from_complex(P.space, left_mult(X), ad_center(X));
    };
    auto delta = [&](const CMat& Y) {
        return LinearMap::from_complex(P.space, right_mult_neg(Y), rat_zero(3, 3));
    };

    CMat iE11 = {{I, Scalar()}, {Scalar(), Scalar()}};
    CMat iE22 = {{Scalar(), Scalar()}, {Scalar(), I}};
    CMat G3 = {{Scalar(), Scalar(1)}, {Scalar(-1), Scalar()}};       // E12 - E21
    CMat G4 = {{Scalar(), I}, {I, Scalar()}};                        // i(E12 + E21)
    CMat mZ1 = {{-I, Scalar()}, {Scalar(), I}};

    P.k_basis = {gamma(iE11), gamma(iE22), gamma(G3), gamma(G4), delta(Z1), delta(Z2), delta(Z3)};
    // Stabilizer of A = Z1: diagonal torus of u(2), sigma = delta(-Z1), and the
    // remaining su(2) factor (which fixes the center pointwise).
    P.kA_basis = {gamma(iE11), gamma(iE22), delta(mZ1), delta(Z2), delta(Z3)};
    P.torus_size = 3;

    const VarSpace& sp = P.space;
    MultiPoly v1 = MultiPoly::variable(sp, sp.v(0));
    MultiPoly v2 = MultiPoly::variable(sp, sp.v(1));
    MultiPoly v3 = MultiPoly::variable(sp, sp.v(2));
    MultiPoly v4 = MultiPoly::variable(sp, sp.v(3));
    MultiPoly w1 = MultiPoly::variable(sp, sp.w(0));
    MultiPoly w2 = MultiPoly::variable(sp, sp.w(1));
    MultiPoly w3 = MultiPoly::variable(sp, sp.w(2));
    MultiPoly w4 = MultiPoly::variable(sp, sp.w(3));

    MultiPoly detv = v1 * v4 - v2 * v3;
    MultiPoly detw = w1 * w4 - w2 * w3;

    // p3 = i sum_a t_a tr(Z_a u u*), with (u u*)_{ji} = sum_k v_{jk} w_{ik}.
    MultiPoly p3 = MultiPoly::zero(sp);
    for (int a = 0; a < 3; ++a) {
        MultiPoly ta = MultiPoly::variable(sp, sp.t(a));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                if (Z[a][i][j].is_zero()) continue;
                for (int k = 0; k < 2; ++k) {
                    MultiPoly term = ta * MultiPoly::variable(sp, sp.v(idx(j, k))) *
                                     MultiPoly::variable(sp, sp.w(idx(i, k)));
                    p3 += term.scaled(Scalar::i() * Z[a][i][j]);
                }
            }
    }

    P.invariants.push_back({"p0", t_norm2(sp), 0, 2});
    P.invariants.push_back({"p1", v_norm2(sp), 2, 0});
    P.invariants.push_back({"p2", detv * detw, 4, 0});
    P.invariants.push_back({"p3", p3, 2, 1});

    P.hw_generators = {v1, v3, detv};
    P.weights = {{1, 0, 1}, {0, 1, 1}, {1, 1, 0}};
    return P;
}

std::vector<std::string> builtin_names() {
    return {"heisenberg-u1", "heisenberg-u2", "heisenberg-u3", "heisenberg-u4", "u2su2"};
}

std::optional<PairSpec> builtin_by_name(const std::string& name) {
    if (name == "u2su2") return builtin_u2su2();
    for (int n = 1; n <= 4; ++n)
        if (name == "heisenberg-u" + std::to_string(n)) return builtin_heisenberg_un(n);
    return std::nullopt;
}

} // namespace nilspec
