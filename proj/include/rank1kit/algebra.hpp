#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rank1kit {

/// The four normed division algebras, ordered by inclusion R ⊂ C ⊂ H ⊂ O.
enum class Kind { R, C, H, O };

constexpr std::size_t dim(Kind k) noexcept {
    switch (k) {
    case Kind::R: return 1;
    case Kind::C: return 2;
    case Kind::H: return 4;
    case Kind::O: return 8;
    }
    return 0;
}

constexpr bool is_associative(Kind k) noexcept { return k != Kind::O; }

std::string_view kind_name(Kind k) noexcept;
Kind kind_from_name(std::string_view name);

class KindMismatch : public std::invalid_argument {
public:
    KindMismatch(Kind a, Kind b);
};

/// A number in R, C, H or O stored as real coefficients over the basis
/// e0 = 1, e1 = i, e2 = j, e3 = k, e4..e7 = (0,1), (0,i), (0,j), (0,k).
/// Coefficients at index >= dim(kind) are always zero.
class Element {
public:
    Element() = default;
    explicit Element(Kind kind) : kind_(kind) {}
    Element(Kind kind, double real) : kind_(kind) { c_[0] = real; }
    Element(Kind kind, std::initializer_list<double> coeffs);

    static Element unit(Kind kind, std::size_t axis);
    static Element from_coeffs(Kind kind, const double* coeffs, std::size_t n);

    Kind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return dim(kind_); }
    double operator[](std::size_t i) const noexcept { return c_[i]; }
    double& operator[](std::size_t i) noexcept { return c_[i]; }
    const std::array<double, 8>& coeffs() const noexcept { return c_; }

    double re() const noexcept { return c_[0]; }
    Element im() const noexcept {
        Element r = *this;
        r.c_[0] = 0.0;
        return r;
    }

    double norm2() const noexcept;
    bool is_zero() const noexcept;

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(double s) noexcept;
    Element& operator/=(double s) noexcept;

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= -1.0; }
    friend Element operator*(Element a, double s) noexcept { return a *= s; }
    friend Element operator*(double s, Element a) noexcept { return a *= s; }
    friend Element operator/(Element a, double s) noexcept { return a /= s; }
    friend Element operator*(const Element& a, const Element& b);

    /// Exact coefficient equality; use approx_equal for numerical comparison.
    friend bool operator==(const Element& a, const Element& b) noexcept {
        return a.kind_ == b.kind_ && a.c_ == b.c_;
    }

private:
    Kind kind_ = Kind::R;
    std::array<double, 8> c_{};
};

/// Cayley–Dickson product. For O the pair-of-quaternions rule is
/// (q1,q2)(p1,p2) = (q1 p1 - conj(p2) q2, p2 q1 + q2 conj(p1)).
Element mul(const Element& a, const Element& b);
Element conj(const Element& a) noexcept;
double norm(const Element& a) noexcept;
/// Throws std::domain_error on the zero element.
Element inv(const Element& a);

struct RealImag {
    double re;
    Element im;
};
RealImag split(const Element& a) noexcept;

/// Re(a conj(b)): the real inner product of coefficient vectors.
double dot(const Element& a, const Element& b);

/// Zero-pads into a larger algebra; throws when narrowing.
Element embed(const Element& a, Kind into);

/// |a - b| <= tol * max(1, |a|, |b|).
bool approx_equal(const Element& a, const Element& b, double tol = 1e-12);

/// Independent standard normal coefficients.
Element random_element(Kind kind, std::mt19937_64& rng);
Element random_imaginary(Kind kind, std::mt19937_64& rng);
Element random_unit(Kind kind, std::mt19937_64& rng);

std::string to_string(const Element& a);

}  // namespace rank1kit
