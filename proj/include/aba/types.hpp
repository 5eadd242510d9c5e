#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aba {

using Cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr Cplx I{0.0, 1.0};

/// Default tolerances. Exact algebraic identities get 1e-12, anything that
/// went through an eigensolver gets 1e-10; both can be overridden per call.
struct Tolerances {
    double exact = 1e-12;
    double eigen = 1e-10;
    double pole = 1e-8;
};

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonGenericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedSectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Guarded complex ratio: throws PoleError when the denominator is closer to
/// zero than `tol`. `what` names the offending factor in the message.
inline Cplx guarded_div(Cplx num, Cplx den, double tol, const char* what) {
    if (std::abs(den) < tol)
        throw PoleError(std::string("pole proximity in ") + what +
                        " (|denominator| = " + std::to_string(std::abs(den)) + ")");
    return num / den;
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

/// Deterministic RNG: splitmix64-seeded xoshiro-free minimal generator.
/// We avoid std::uniform_real_distribution so that streams are pinned by the
/// seed alone, independent of the standard library implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Cplx complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

    /// Derive an independent stream, e.g. one per sample index.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0x517cc1b727220a95ull * (stream + 1)));
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
};

/// Parses "re", "imi", "re+imi" / "re-imi" complex literals, e.g. "0.3-0.2i".
inline Cplx parse_complex(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    require(!t.empty(), "empty complex literal");
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        if (t.empty() || t == "+") return {0.0, 1.0};
        if (t == "-") return {0.0, -1.0};
        // split at the last top-level +/- that is not an exponent sign
        for (int p = int(t.size()) - 1; p > 0; --p) {
            char c = t[p];
            if ((c == '+' || c == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
                double re = std::stod(t.substr(0, p));
                std::string ims = t.substr(p);
                double im = (ims == "+") ? 1.0 : (ims == "-") ? -1.0 : std::stod(ims);
                return {re, im};
            }
        }
        return {0.0, std::stod(t)};
    }
    return {std::stod(t), 0.0};
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string format_complex(Cplx z) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

}  // namespace aba
