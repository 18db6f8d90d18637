#pragma once

#include "nilspec/multipoly.hpp"

namespace nilspec {

// Normal-ordered operator sum c * v^a d^b acting on holomorphic polynomials
// in the v-variables of `space` (multiplications to the left of derivatives).
class WeylOp {
public:
    VarSpace space;
    // key: (multiplication exponents, derivative exponents), both length n
    std::map<std::pair<Mono, Mono>, Scalar> terms;

    WeylOp() = default;
    explicit WeylOp(VarSpace sp) : space(sp) {}

    bool is_zero() const { return terms.empty(); }
    void add_term(const Mono& mult, const Mono& deriv, const Scalar& c);

    WeylOp& operator+=(const WeylOp& o);
    friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
    WeylOp scaled(const Scalar& c) const;

    long mult_degree() const;
    long deriv_degree() const;

    std::string str() const;
};

// v^a w^b -> v^a d^b termwise. The polynomial must be free of central variables.
WeylOp quantize(const MultiPoly& p);

// Exact application; the argument must be holomorphic (v-variables only).
MultiPoly weyl_apply(const WeylOp& D, const MultiPoly& p);

// Normal-ordered product D1 D2 (apply D2 first).
WeylOp weyl_compose(const WeylOp& D1, const WeylOp& D2);

} // namespace nilspec
