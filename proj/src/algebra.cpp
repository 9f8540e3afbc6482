#include "rank1kit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rank1kit {

namespace {

using Quat = std::array<double, 4>;

// Terms are paired so that q conj(q) and conj(q) q come out exactly real.
Quat hamilton(const double* a, const double* b) noexcept {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            (a[0] * b[1] + a[1] * b[0]) + (a[2] * b[3] - a[3] * b[2]),
            (a[0] * b[2] + a[2] * b[0]) + (a[3] * b[1] - a[1] * b[3]),
            (a[0] * b[3] + a[3] * b[0]) + (a[1] * b[2] - a[2] * b[1])};
}

Quat qconj(const double* a) noexcept { return {a[0], -a[1], -a[2], -a[3]}; }

void require_same(const Element& a, const Element& b) {
    if (a.kind() != b.kind()) throw KindMismatch(a.kind(), b.kind());
}

}  // namespace

std::string_view kind_name(Kind k) noexcept {
    switch (k) {
    case Kind::R: return "R";
    case Kind::C: return "C";
    case Kind::H: return "H";
    case Kind::O: return "O";
    }
    return "?";
}

Kind kind_from_name(std::string_view name) {
    if (name == "R") return Kind::R;
    if (name == "C") return Kind::C;
    if (name == "H") return Kind::H;
    if (name == "O") return Kind::O;
    throw std::invalid_argument("unknown algebra kind '" + std::string(name) + "'");
}

KindMismatch::KindMismatch(Kind a, Kind b)
    : std::invalid_argument("algebra kind mismatch: " + std::string(kind_name(a)) + " vs " +
                            std::string(kind_name(b))) {}

Element::Element(Kind kind, std::initializer_list<double> coeffs) : kind_(kind) {
    if (coeffs.size() > dim(kind)) throw std::invalid_argument("too many coefficients for kind");
    std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

Element Element::unit(Kind kind, std::size_t axis) {
    if (axis >= dim(kind)) throw std::out_of_range("basis axis out of range");
    Element e(kind);
    e.c_[axis] = 1.0;
    return e;
}

Element Element::from_coeffs(Kind kind, const double* coeffs, std::size_t n) {
    if (n != dim(kind)) throw std::invalid_argument("coefficient count does not match kind");
    Element e(kind);
    std::copy(coeffs, coeffs + n, e.c_.begin());
    return e;
}

double Element::norm2() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += c_[i] * c_[i];
    return s;
}

bool Element::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

Element& Element::operator+=(const Element& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Element& Element::operator-=(const Element& o) {
    require_same(*this, o);
    for (std::size_t i = 0; i < size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Element& Element::operator*=(double s) noexcept {
    for (std::size_t i = 0; i < size(); ++i) c_[i] *= s;
    return *this;
}

Element& Element::operator/=(double s) noexcept {
    for (std::size_t i = 0; i < size(); ++i) c_[i] /= s;
    return *this;
}

Element operator*(const Element& a, const Element& b) { return mul(a, b); }

Element mul(const Element& a, const Element& b) {
    require_same(a, b);
    Element r(a.kind());
    const double* x = a.coeffs().data();
    const double* y = b.coeffs().data();
    switch (a.kind()) {
    case Kind::R:
        r[0] = x[0] * y[0];
        break;
    case Kind::C:
        r[0] = x[0] * y[0] - x[1] * y[1];
        r[1] = x[0] * y[1] + x[1] * y[0];
        break;
    case Kind::H: {
        const Quat q = hamilton(x, y);
        std::copy(q.begin(), q.end(), &r[0]);
        break;
    }
    case Kind::O: {
        const double* q1 = x;
        const double* q2 = x + 4;
        const double* p1 = y;
        const double* p2 = y + 4;
        const Quat p2c = qconj(p2);
        const Quat p1c = qconj(p1);
        const Quat a1 = hamilton(q1, p1);
        const Quat a2 = hamilton(p2c.data(), q2);
        const Quat b1 = hamilton(p2, q1);
        const Quat b2 = hamilton(q2, p1c.data());
        for (int i = 0; i < 4; ++i) {
            r[i] = a1[i] - a2[i];
            r[4 + i] = b1[i] + b2[i];
        }
        break;
    }
    }
    return r;
}

Element conj(const Element& a) noexcept {
    Element r = -a;
    r[0] = a[0];
    return r;
}

double norm(const Element& a) noexcept {
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max(scale, std::abs(a[i]));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = a[i] / scale;
        s += v * v;
    }
    return scale * std::sqrt(s);
}

Element inv(const Element& a) {
    const double n2 = a.norm2();
    if (n2 == 0.0) throw std::domain_error("inverse of zero algebra element");
    return conj(a) / n2;
}

RealImag split(const Element& a) noexcept { return {a.re(), a.im()}; }

double dot(const Element& a, const Element& b) {
    require_same(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Element embed(const Element& a, Kind into) {
    if (dim(into) < a.size()) throw std::invalid_argument("cannot embed into a smaller algebra");
    Element r(into);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

bool approx_equal(const Element& a, const Element& b, double tol) {
    if (a.kind() != b.kind()) return false;
    const double scale = std::max({1.0, norm(a), norm(b)});
    return norm(a - b) <= tol * scale;
}

Element random_element(Kind kind, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Element r(kind);
    for (std::size_t i = 0; i < dim(kind); ++i) r[i] = nd(rng);
    return r;
}

Element random_imaginary(Kind kind, std::mt19937_64& rng) {
    Element r = random_element(kind, rng);
    r[0] = 0.0;
    return r;
}

Element random_unit(Kind kind, std::mt19937_64& rng) {
    for (;;) {
        Element r = random_element(kind, rng);
        const double n = norm(r);
        if (n > 1e-3) return r / n;
    }
}

std::string to_string(const Element& a) {
    std::ostringstream os;
    os.precision(17);
    os << kind_name(a.kind()) << '(';
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i];
    os << ')';
    return os.str();
}

}  // namespace rank1kit
