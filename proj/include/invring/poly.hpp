#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace invring {

using Int = mpz_class;
using Rat = mpq_class;

// Dense univariate polynomial with rational coefficients, used for
// expressions that stay symbolic in the ambient vertex count n.
struct Poly {
    std::vector<Rat> c;  // c[i] is the coefficient of n^i

    Poly() = default;
    explicit Poly(const Rat& constant) {
        if (constant != 0) c.push_back(constant);
    }
    static Poly var() { return Poly(std::vector<Rat>{0, 1}); }
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (size_t i = 0; i < o.c.size(); i++) c[i] += o.c[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size());
        for (size_t i = 0; i < o.c.size(); i++) c[i] -= o.c[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return Poly();
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); i++)
            for (size_t j = 0; j < b.c.size(); j++) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const Rat& s, Poly p) {
        for (auto& x : p.c) x *= s;
        p.trim();
        return p;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

    std::string str() const {
        if (c.empty()) return "0";
        std::string s;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c[i].get_str();
            if (i >= 1) s += "*n";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

// (n-a)(n-a-1)...(n-b+1), the falling product with b-a factors (a <= b).
inline Poly falling_from(int a, int b) {
    Poly r{Rat(1)};
    for (int t = a; t < b; t++) r = r * (Poly::var() - Poly(Rat(t)));
    return r;
}

inline Int binomial(const Int& n, long k) {
    if (k < 0) return 0;
    Int r;
    if (n >= 0) {
        if (n < k) return 0;
        mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    } else {
        mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    }
    return r;
}

inline Int factorial(long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

// C(n,k) as a polynomial in n.
inline Poly binomial_poly(long k) {
    Poly r{Rat(1)};
    for (long t = 0; t < k; t++) r = r * (Poly::var() - Poly(Rat(t)));
    return Rat(Int(1), factorial(k)) * r;
}

}  // namespace invring
