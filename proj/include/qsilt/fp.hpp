#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsilt {

struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of a prime field F_p with a runtime modulus.
///
/// A modulus of 0 marks an "unbound" integer literal (Eigen materializes
/// Scalar(0)/Scalar(1) without knowing p); unbound values adopt the modulus of
/// the first bound operand they meet.
struct Fp {
    uint64_t v = 0;
    uint64_t p = 0;

    Fp() = default;
    Fp(long long x) {  // NOLINT: implicit by design, Eigen casts int literals
        if (x < 0)
            throw ComputationError("Fp: negative literal needs a modulus");
        v = static_cast<uint64_t>(x);
    }
    Fp(long long x, uint64_t mod) : p(mod) {
        long long r = x % static_cast<long long>(mod);
        if (r < 0)
            r += static_cast<long long>(mod);
        v = static_cast<uint64_t>(r);
    }
    static Fp raw(uint64_t value, uint64_t mod) {
        Fp z;
        z.v = value % mod;
        z.p = mod;
        return z;
    }

    bool bound() const { return p != 0; }
    bool isZero() const { return v == 0; }

    friend uint64_t joinMod(const Fp& a, const Fp& b) {
        if (a.p != 0 && b.p != 0 && a.p != b.p)
            throw ComputationError("Fp: modulus mismatch");
        return a.p != 0 ? a.p : b.p;
    }

    friend Fp operator+(const Fp& a, const Fp& b) {
        uint64_t m = joinMod(a, b);
        if (m == 0)
            return Fp(static_cast<long long>(a.v + b.v));
        uint64_t x = a.v % m, y = b.v % m;
        uint64_t s = x + y;
        if (s >= m || s < x)
            s -= m;
        return raw(s, m);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        uint64_t m = joinMod(a, b);
        if (m == 0) {
            if (b.v > a.v)
                throw ComputationError("Fp: negative unbound difference");
            return Fp(static_cast<long long>(a.v - b.v));
        }
        uint64_t x = a.v % m, y = b.v % m;
        return raw(x >= y ? x - y : x + m - y, m);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        uint64_t m = joinMod(a, b);
        if (m == 0)
            return Fp(static_cast<long long>(a.v * b.v));
        unsigned __int128 prod = static_cast<unsigned __int128>(a.v % m) * (b.v % m);
        return raw(static_cast<uint64_t>(prod % m), m);
    }
    Fp operator-() const {
        if (p == 0) {
            if (v == 0)
                return *this;
            throw ComputationError("Fp: negation of unbound value");
        }
        return raw(v == 0 ? 0 : p - v, p);
    }

    Fp pow(uint64_t e) const {
        if (p == 0)
            throw ComputationError("Fp: pow on unbound value");
        Fp acc = raw(1, p), base = *this;
        while (e) {
            if (e & 1)
                acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }
    Fp inv() const {
        if (p == 0 || v == 0)
            throw ComputationError("Fp: inverse of zero or unbound value");
        return pow(p - 2);  // p prime
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        uint64_t m = joinMod(a, b);
        if (m == 0)
            return a.v == b.v;
        return a.v % m == b.v % m;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline std::string toString(const Fp& x) { return std::to_string(x.v); }

}  // namespace qsilt

namespace Eigen {
template <>
struct NumTraits<qsilt::Fp> {
    typedef qsilt::Fp Real;
    typedef qsilt::Fp NonInteger;
    typedef qsilt::Fp Literal;
    typedef qsilt::Fp Nested;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 9
    };
    static inline Real epsilon() { return qsilt::Fp(0); }
    static inline Real dummy_precision() { return qsilt::Fp(0); }
    static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace qsilt {

using FpMatrix = Eigen::Matrix<Fp, Eigen::Dynamic, Eigen::Dynamic>;
using FpVector = Eigen::Matrix<Fp, Eigen::Dynamic, 1>;

inline FpMatrix fpZeros(Eigen::Index r, Eigen::Index c, uint64_t p) {
    return FpMatrix::Constant(r, c, Fp::raw(0, p));
}
inline FpVector fpZeroVec(Eigen::Index n, uint64_t p) {
    return FpVector::Constant(n, Fp::raw(0, p));
}
inline FpMatrix fpIdentity(Eigen::Index n, uint64_t p) {
    FpMatrix m = fpZeros(n, n, p);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = Fp::raw(1, p);
    return m;
}

// ---- primes and roots of unity ----------------------------------------

/// Deterministic Miller–Rabin, valid for all 64-bit inputs.
inline bool isPrime64(uint64_t n) {
    if (n < 2)
        return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0)
            return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [n](uint64_t a, uint64_t b) {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1)
                r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

/// Default field modulus: the smallest prime >= 2^61 congruent to 1 modulo
/// lcm(1..16), so that roots of unity of all small orders exist.
constexpr uint64_t kDefaultPrime = 2305843009216306561ULL;

/// Smallest prime > lowerBound with p ≡ 1 (mod m).
inline uint64_t smallestPrimeCongruent1(uint64_t m, uint64_t lowerBound = 1000000) {
    uint64_t q = lowerBound + 1;
    if (m > 1)
        q += (m - (q - 1) % m) % m;
    while (!isPrime64(q) || (m > 1 && (q - 1) % m != 0))
        q += (m > 1 ? m : 1);
    return q;
}

inline std::vector<uint64_t> primeFactors(uint64_t m) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fs.push_back(d);
            while (m % d == 0)
                m /= d;
        }
    }
    if (m > 1)
        fs.push_back(m);
    return fs;
}

/// Smallest primitive m-th root of unity in F_p.  Requires m | p-1.
inline Fp primitiveRootOfUnity(uint64_t p, uint64_t m) {
    if (m == 0 || (p - 1) % m != 0)
        throw ComputationError("no root: order does not divide p-1");
    if (m == 1)
        return Fp::raw(1, p);
    auto factors = primeFactors(m);
    auto isPrimitive = [&](Fp z) {
        for (uint64_t q : factors)
            if (z.pow(m / q).v == 1)
                return false;
        return true;
    };
    for (uint64_t c = 2; c < p; ++c) {
        Fp z = Fp::raw(c, p).pow((p - 1) / m);
        if (z.v != 1 && isPrimitive(z)) {
            // minimize over the primitive powers z^k, gcd(k,m)=1
            Fp best = z;
            Fp cur = z;
            for (uint64_t k = 2; k < m; ++k) {
                cur = cur * z;
                if (isPrimitive(cur) && cur.v < best.v)
                    best = cur;
            }
            return best;
        }
    }
    throw ComputationError("no root: search exhausted");
}


}  // namespace qsilt
