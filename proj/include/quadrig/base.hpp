// Exact arithmetic primitives shared by every module: arbitrary-precision
// rationals, 2d vectors/matrices over them, and the library error type.
// All decision paths run on these types; floating point appears only in
// rendering output.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadrig {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Err {
    InvalidGraph,
    NotAutomorphism,
    WrongOrder,
    StructureViolation,
    NotAdmissible,
    NotReducible,
    ChainVerificationFailed,
    InvalidNorm,
    NotWellPositioned,
    NoSwappingIsometry,
    BudgetExceeded,
    ParseError,
    ContractViolation,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::InvalidGraph: return "InvalidGraph";
        case Err::NotAutomorphism: return "NotAutomorphism";
        case Err::WrongOrder: return "WrongOrder";
        case Err::StructureViolation: return "StructureViolation";
        case Err::NotAdmissible: return "NotAdmissible";
        case Err::NotReducible: return "NotReducible";
        case Err::ChainVerificationFailed: return "ChainVerificationFailed";
        case Err::InvalidNorm: return "InvalidNorm";
        case Err::NotWellPositioned: return "NotWellPositioned";
        case Err::NoSwappingIsometry: return "NoSwappingIsometry";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::ParseError: return "ParseError";
        case Err::ContractViolation: return "ContractViolation";
    }
    return "UnknownErr";
}

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& msg)
        : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int rat_sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

// Parses "p", "-p", or "p/q"; q must be nonzero.
inline Rat rat_parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error(Err::ParseError, "zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(Err::ParseError, "bad rational '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

struct Vec2 {
    Rat x{0}, y{0};

    Vec2() = default;
    Vec2(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Rat& s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
    bool operator<(const Vec2& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
    bool is_zero() const { return x == 0 && y == 0; }
};

// Evaluates the linear functional with coefficient row f at v.
inline Rat dot(const Vec2& f, const Vec2& v) { return f.x * v.x + f.y * v.y; }

inline std::string vec_str(const Vec2& v) { return "(" + rat_str(v.x) + ", " + rat_str(v.y) + ")"; }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    Rat a{1}, b{0}, c{0}, d{1};

    static Mat2 identity() { return {}; }

    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Rat det() const { return a * d - b * c; }

    Mat2 inverse() const {
        Rat dt = det();
        if (dt == 0) throw Error(Err::ContractViolation, "inverting singular 2x2 matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    Mat2 power(int k) const {
        Mat2 r = identity();
        for (int i = 0; i < k; i++) r = r.mul(*this);
        return r;
    }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const Mat2& o) const { return !(*this == o); }
    bool operator<(const Mat2& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }

    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool is_minus_identity() const { return a == -1 && b == 0 && c == 0 && d == -1; }
};

inline std::string mat_str(const Mat2& m) {
    return "[[" + rat_str(m.a) + ", " + rat_str(m.b) + "], [" + rat_str(m.c) + ", " +
           rat_str(m.d) + "]]";
}

}  // namespace quadrig
