#include "rank1kit/ballmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rank1kit {

BallPoint::BallPoint(SpaceConfig config, std::vector<Element> w1, Element w2)
    : config_(config), w1_(std::move(w1)), w2_(std::move(w2)) {
    if (static_cast<int>(w1_.size()) != config_.horizontal_dim())
        throw std::invalid_argument("ball point needs m - 1 leading coordinates");
    for (const auto& x : w1_)
        if (x.kind() != config_.kind) throw KindMismatch(x.kind(), config_.kind);
    if (w2_.kind() != config_.kind) throw KindMismatch(w2_.kind(), config_.kind);
}

BallPoint BallPoint::north(SpaceConfig config) {
    return BallPoint(config, std::vector<Element>(config.horizontal_dim(), Element(config.kind)),
                     Element(config.kind, 1.0));
}

BallPoint BallPoint::south(SpaceConfig config) {
    return BallPoint(config, std::vector<Element>(config.horizontal_dim(), Element(config.kind)),
                     Element(config.kind, -1.0));
}

BallPoint BallPoint::origin(SpaceConfig config) {
    return BallPoint(config, std::vector<Element>(config.horizontal_dim(), Element(config.kind)),
                     Element(config.kind));
}

double BallPoint::norm2() const noexcept {
    double s = w2_.norm2();
    for (const auto& x : w1_) s += x.norm2();
    return s;
}

bool BallPoint::is_boundary(double tol) const noexcept { return std::abs(norm2() - 1.0) <= tol; }

Element inner(const BallPoint& x, const BallPoint& y) {
    if (!(x.config() == y.config())) throw ConfigMismatch();
    Element s = mul(x.w2(), conj(y.w2()));
    for (std::size_t i = 0; i < x.w1().size(); ++i) s += mul(x.w1()[i], conj(y.w1()[i]));
    return s;
}

double rform(const BallPoint& v, const BallPoint& w) {
    if (!(v.config() == w.config())) throw ConfigMismatch();
    if (v.config().kind != Kind::O) return 0.0;
    const Element& v1 = v.w1().front();
    const Element& v2 = v.w2();
    const Element& w1 = w.w1().front();
    const Element& w2 = w.w2();
    return mul(mul(v1, conj(v2)), mul(w2, conj(w1))).re() - mul(mul(conj(v2), w2), mul(conj(w1), v1)).re();
}

namespace {

BallPoint on_sphere(const BallPoint& x) {
    if (!x.is_boundary()) throw std::invalid_argument("expected a boundary point of the ball");
    return project_to_sphere(x);
}

// Numerator of cosh d for interior points and <<x,y>> for boundary points.
double bracket(const BallPoint& x, const BallPoint& y) {
    // Re(1 - <x,y>) = ((1 - |x|^2) + (1 - |y|^2) + |x - y|^2) / 2 avoids the
    // cancellation in 1 - Re<x,y> for nearby points.
    double diff2 = (x.w2() - y.w2()).norm2();
    for (std::size_t i = 0; i < x.w1().size(); ++i) diff2 += (x.w1()[i] - y.w1()[i]).norm2();
    Element d = -inner(x, y).im();
    d[0] = 0.5 * ((1.0 - x.norm2()) + (1.0 - y.norm2()) + diff2);
    const double a = norm(d);
    if (x.config().kind != Kind::O) return a;
    return std::sqrt(std::max(0.0, a * a + 2.0 * rform(x, y)));
}

}  // namespace

double chordal(const BallPoint& x, const BallPoint& y) { return bracket(on_sphere(x), on_sphere(y)); }

double coshdist(const BallPoint& x, const BallPoint& y) {
    const double nx = x.norm2();
    const double ny = y.norm2();
    if (!(nx < 1.0) || !(ny < 1.0)) throw std::invalid_argument("coshdist: points must lie inside the ball");
    return std::max(1.0, bracket(x, y) / std::sqrt((1.0 - nx) * (1.0 - ny)));
}

double distance(const BallPoint& x, const BallPoint& y) { return std::acosh(coshdist(x, y)); }

double crossratio_ball(const BallPoint& x, const BallPoint& y, const BallPoint& z, const BallPoint& w) {
    const BallPoint xs = on_sphere(x), ys = on_sphere(y), zs = on_sphere(z), ws = on_sphere(w);
    const double num = bracket(zs, xs) * bracket(ws, ys);
    const double den = bracket(ws, xs) * bracket(zs, ys);
    if (den == 0.0) {
        if (num == 0.0) throw std::domain_error("crossratio_ball: indeterminate 0/0 configuration");
        return std::numeric_limits<double>::infinity();
    }
    return num / den;
}

BallPoint stereo(const NilPoint& g) {
    const SpaceConfig cfg = g.config();
    if (g.is_infinity()) return BallPoint::south(cfg);
    const double k2 = g.horizontal_norm2();
    const Element denom = Element(cfg.kind, 1.0 + k2) - g.center();
    const Element denom_inv = inv(denom);
    std::vector<Element> w1;
    w1.reserve(g.horizontal().size());
    for (const auto& k : g.horizontal()) w1.push_back(2.0 * mul(denom_inv, k));
    Element w2 = mul(denom_inv, Element(cfg.kind, 1.0 - k2) + g.center());
    return BallPoint(cfg, std::move(w1), std::move(w2));
}

NilPoint stereo_inv(const BallPoint& x) {
    const BallPoint p = on_sphere(x);
    const SpaceConfig cfg = p.config();
    const Element one(cfg.kind, 1.0);
    const Element shifted = one + p.w2();
    if (norm(shifted) <= 1e-12) return NilPoint::infinity(cfg);
    // 1 + w2 = 2 D^{-1}, so D = 2 (1 + w2)^{-1} and k = D (w1 / 2).
    const Element denom = 2.0 * inv(shifted);
    std::vector<Element> k;
    k.reserve(p.w1().size());
    for (const auto& w : p.w1()) k.push_back(mul(denom, 0.5 * w));
    return NilPoint(cfg, -denom.im(), std::move(k));
}

BallPoint project_to_sphere(const BallPoint& x) {
    const double n = std::sqrt(x.norm2());
    if (n == 0.0) throw std::invalid_argument("cannot project the origin onto the sphere");
    std::vector<Element> w1 = x.w1();
    for (auto& v : w1) v /= n;
    return BallPoint(x.config(), std::move(w1), x.w2() / n);
}

double max_coord_diff(const BallPoint& a, const BallPoint& b) {
    if (!(a.config() == b.config())) throw ConfigMismatch();
    double d = norm(a.w2() - b.w2());
    for (std::size_t i = 0; i < a.w1().size(); ++i) d = std::max(d, norm(a.w1()[i] - b.w1()[i]));
    return d;
}

BallPoint random_interior(SpaceConfig config, std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    std::vector<Element> w1;
    for (int i = 0; i < config.horizontal_dim(); ++i) w1.push_back(random_element(config.kind, rng));
    BallPoint dir(config, std::move(w1), random_element(config.kind, rng));
    const double r = radius * ud(rng);
    BallPoint unit = project_to_sphere(dir);
    std::vector<Element> v1 = unit.w1();
    for (auto& v : v1) v *= r;
    return BallPoint(config, std::move(v1), r * unit.w2());
}

}  // namespace rank1kit
