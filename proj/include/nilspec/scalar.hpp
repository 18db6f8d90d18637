#pragma once

#include "nilspec/rational.hpp"

#include <complex>
#include <iosfwd>
#include <ostream>

namespace nilspec {

// Gaussian rational: re + im * i with exact rational parts.
struct Scalar {
    Rat re, im;

    Scalar() : re(0), im(0) {}
    Scalar(long n) : re(n), im(0) {}
    Scalar(const Rat& r) : re(r), im(0) {}
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    // |z|^2, exact.
    Rat norm2() const { return re * re + im * im; }

    std::complex<double> to_complex() const { return {rat_double(re), rat_double(im)}; }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        Rat n2 = o.norm2();
        if (n2 == 0) throw std::domain_error("division by zero Scalar");
        Rat r = (re * o.re + im * o.im) / n2;
        Rat i = (im * o.re - re * o.im) / n2;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

inline Scalar scalar_pow(const Scalar& base, long e) {
    if (e == 0) return Scalar(1);
    if (base.is_zero()) {
        if (e < 0) throw std::domain_error("0 raised to a negative power");
        return Scalar(0);
    }
    Scalar acc(1), b = base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    if (e < 0) acc = Scalar(1) / acc;
    return acc;
}

// i^k for k >= 0.
inline Scalar i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

// "0", "1", "-2/3", "i", "-i", "1/2+3i", "1-2/5i"
std::string scalar_str(const Scalar& s);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace nilspec
