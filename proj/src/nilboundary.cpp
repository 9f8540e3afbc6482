#include "rank1kit/nilboundary.hpp"

#include <cmath>
#include <limits>

namespace rank1kit {

SpaceConfig::SpaceConfig(Kind k, int rank) : kind(k), m(rank) {
    if (rank < 2) throw std::invalid_argument("rank m must be at least 2");
    if (k == Kind::O && rank != 2) throw std::invalid_argument("the Cayley hyperbolic space only exists for m = 2");
}

NilPoint::NilPoint(SpaceConfig config, Element center, std::vector<Element> horizontal)
    : config_(config), center_(std::move(center)), horizontal_(std::move(horizontal)) {
    if (center_.kind() != config_.kind) throw KindMismatch(center_.kind(), config_.kind);
    if (static_cast<int>(horizontal_.size()) != config_.horizontal_dim())
        throw std::invalid_argument("horizontal part must have m - 1 coordinates");
    for (const auto& k : horizontal_)
        if (k.kind() != config_.kind) throw KindMismatch(k.kind(), config_.kind);
    const double scale = std::max(1.0, norm(center_));
    if (std::abs(center_.re()) > 1e-12 * scale)
        throw std::invalid_argument("center of a boundary point must be purely imaginary");
    center_[0] = 0.0;
}

NilPoint NilPoint::identity(SpaceConfig config) {
    return NilPoint(config, Element(config.kind),
                    std::vector<Element>(config.horizontal_dim(), Element(config.kind)));
}

NilPoint NilPoint::infinity(SpaceConfig config) {
    NilPoint p = identity(config);
    p.infinity_ = true;
    return p;
}

double NilPoint::horizontal_norm2() const noexcept {
    double s = 0.0;
    for (const auto& k : horizontal_) s += k.norm2();
    return s;
}

Element hermitian(const std::vector<Element>& k, const std::vector<Element>& kp) {
    if (k.size() != kp.size() || k.empty()) throw std::invalid_argument("hermitian: size mismatch");
    Element s(k.front().kind());
    for (std::size_t i = 0; i < k.size(); ++i) s += mul(k[i], conj(kp[i]));
    return s;
}

NilPoint nmul(const NilPoint& g, const NilPoint& h) {
    if (g.is_infinity() || h.is_infinity()) throw InfinityOperand("nmul");
    if (!(g.config() == h.config())) throw ConfigMismatch();
    Element center = g.center() + h.center() + 2.0 * hermitian(g.horizontal(), h.horizontal()).im();
    std::vector<Element> k = g.horizontal();
    for (std::size_t i = 0; i < k.size(); ++i) k[i] += h.horizontal()[i];
    return NilPoint(g.config(), std::move(center), std::move(k));
}

NilPoint ninv(const NilPoint& g) {
    if (g.is_infinity()) throw InfinityOperand("ninv");
    std::vector<Element> k = g.horizontal();
    for (auto& x : k) x = -x;
    return NilPoint(g.config(), -g.center(), std::move(k));
}

Element gauge(const NilPoint& g) {
    if (g.is_infinity()) throw InfinityOperand("gauge");
    Element a = g.center();
    a[0] = g.horizontal_norm2();
    return a;
}

double qnorm(const NilPoint& g) { return std::sqrt(norm(gauge(g))); }

double dist(const NilPoint& g, const NilPoint& h) { return qnorm(nmul(ninv(h), g)); }

double crossratio_nil(const NilPoint& g1, const NilPoint& g2, const NilPoint& g3,
                      const NilPoint& g4) {
    const int infinities = g1.is_infinity() + g2.is_infinity() + g3.is_infinity() + g4.is_infinity();
    if (infinities > 1) throw std::invalid_argument("crossratio_nil: at most one point may be infinity");
    // |A(b^-1 a)| = d(a,b)^2
    auto factor = [](const NilPoint& a, const NilPoint& b) {
        if (a.is_infinity() || b.is_infinity()) return 1.0;
        return norm(gauge(nmul(ninv(b), a)));
    };
    const double num = factor(g1, g3) * factor(g2, g4);
    const double den = factor(g1, g4) * factor(g2, g3);
    if (den == 0.0) {
        if (num == 0.0) throw std::domain_error("crossratio_nil: indeterminate 0/0 configuration");
        return std::numeric_limits<double>::infinity();
    }
    return num / den;
}

bool approx_equal(const NilPoint& a, const NilPoint& b, double tol) {
    if (!(a.config() == b.config()) || a.is_infinity() != b.is_infinity()) return false;
    if (!approx_equal(a.center(), b.center(), tol)) return false;
    for (std::size_t i = 0; i < a.horizontal().size(); ++i)
        if (!approx_equal(a.horizontal()[i], b.horizontal()[i], tol)) return false;
    return true;
}

NilPoint random_nilpoint(SpaceConfig config, std::mt19937_64& rng, double scale) {
    std::vector<Element> k;
    for (int i = 0; i < config.horizontal_dim(); ++i) k.push_back(scale * random_element(config.kind, rng));
    return NilPoint(config, scale * scale * random_imaginary(config.kind, rng), std::move(k));
}

}  // namespace rank1kit
