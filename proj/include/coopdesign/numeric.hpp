#ifndef COOPDESIGN_NUMERIC_HPP
#define COOPDESIGN_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

namespace coopdesign {

// Exact arithmetic scalar used by the --exact code paths. Expression
// templates are off so Rational behaves like a plain scalar in generic code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline constexpr double kDefaultTol = 1e-12;

// ---------------------------------------------------------------------------
// Scalar traits: the analytic core is templated over double / Rational.
// ---------------------------------------------------------------------------

template <typename R>
struct num;

template <>
struct num<double> {
    static constexpr bool exact = false;
    static double from_int(long long v) { return static_cast<double>(v); }
    static double from_ratio(long long p, long long q) {
        return static_cast<double>(p) / static_cast<double>(q);
    }
    static double to_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
    static double pow_int(double base, int e) {
        double out = 1.0;
        for (int i = 0; i < e; ++i) out *= base;
        return out;
    }
    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
};

template <>
struct num<Rational> {
    static constexpr bool exact = true;
    static Rational from_int(long long v) { return Rational(v); }
    static Rational from_ratio(long long p, long long q) { return Rational(p) / Rational(q); }
    static double to_double(const Rational& v) { return v.template convert_to<double>(); }
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
    static Rational pow_int(const Rational& base, int e) {
        Rational out = 1;
        for (int i = 0; i < e; ++i) out *= base;
        return out;
    }
    static std::string str(const Rational& v) { return v.str(); }
};

// ---------------------------------------------------------------------------
// Comparisons. All boundary decisions in the model go through one of these so
// that ties behave identically everywhere: weak inequalities absorb the
// tolerance, strict inequalities must clear it. In exact mode the tolerance
// is zero and the comparisons are literal.
// ---------------------------------------------------------------------------

template <typename R>
struct Tol {
    R abs_tol;

    Tol() : abs_tol(default_tol()) {}
    explicit Tol(R t) : abs_tol(t) {}

    static R default_tol() {
        if constexpr (num<R>::exact) {
            return R(0);
        } else {
            return kDefaultTol;
        }
    }

    bool leq(const R& a, const R& b) const { return a <= b + abs_tol; }
    bool geq(const R& a, const R& b) const { return a + abs_tol >= b; }
    bool lt(const R& a, const R& b) const { return !geq(a, b); }
    bool gt(const R& a, const R& b) const { return !leq(a, b); }
    bool eq(const R& a, const R& b) const { return num<R>::abs(a - b) <= abs_tol; }
};

// Library-wide float tolerance, overridable via COOPDESIGN_TOL.
inline double global_tolerance() {
    if (const char* s = std::getenv("COOPDESIGN_TOL")) {
        char* end = nullptr;
        double v = std::strtod(s, &end);
        if (end != s && v >= 0.0) return v;
    }
    return kDefaultTol;
}

}  // namespace coopdesign

#endif  // COOPDESIGN_NUMERIC_HPP
