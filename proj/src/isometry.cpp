#include "rank1kit/isometry.hpp"

#include <algorithm>
#include <cmath>

namespace rank1kit {

FMatrix::FMatrix(Kind kind, int rows, int cols)
    : kind_(kind), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), Element(kind)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

FMatrix FMatrix::identity(Kind kind, int n) {
    FMatrix m(kind, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Element(kind, 1.0);
    return m;
}

FMatrix FMatrix::lorentz_form(Kind kind, int n) {
    FMatrix m = identity(kind, n);
    m(n - 1, n - 1) = Element(kind, -1.0);
    return m;
}

double FMatrix::max_abs() const noexcept {
    double r = 0.0;
    for (const auto& e : a_) r = std::max(r, norm(e));
    return r;
}

FMatrix matmul(const FMatrix& a, const FMatrix& b) {
    if (a.kind() != b.kind()) throw KindMismatch(a.kind(), b.kind());
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    FMatrix r(a.kind(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Element s(a.kind());
            for (int k = 0; k < a.cols(); ++k) s += mul(a(i, k), b(k, j));
            r(i, j) = s;
        }
    return r;
}

FMatrix adjoint(const FMatrix& a) {
    FMatrix r(a.kind(), a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(j, i) = conj(a(i, j));
    return r;
}

FMatrix operator-(const FMatrix& a, const FMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
    FMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
    return r;
}

std::vector<Element> vecmat(const std::vector<Element>& v, const FMatrix& a) {
    if (static_cast<int>(v.size()) != a.rows()) throw std::invalid_argument("vecmat: shape mismatch");
    std::vector<Element> r(static_cast<std::size_t>(a.cols()), Element(a.kind()));
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < a.rows(); ++i) r[j] += mul(v[i], a(i, j));
    return r;
}

Eigen::MatrixXcd complex_image(const FMatrix& a) {
    using cd = std::complex<double>;
    switch (a.kind()) {
    case Kind::R:
    case Kind::C: {
        Eigen::MatrixXcd m(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) m(i, j) = cd(a(i, j)[0], a(i, j)[1]);
        return m;
    }
    case Kind::H: {
        Eigen::MatrixXcd m(2 * a.rows(), 2 * a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                const Element& q = a(i, j);
                const cd z(q[0], q[1]);
                const cd w(q[2], q[3]);
                m(2 * i, 2 * j) = z;
                m(2 * i, 2 * j + 1) = w;
                m(2 * i + 1, 2 * j) = -std::conj(w);
                m(2 * i + 1, 2 * j + 1) = std::conj(z);
            }
        return m;
    }
    case Kind::O: break;
    }
    throw std::invalid_argument("complex_image: octonionic matrices are not supported");
}

NormalIsometry::NormalIsometry(SpaceConfig cfg, FMatrix rotation, Element unit, double translation)
    : config(cfg), M(std::move(rotation)), nu(std::move(unit)), s(translation) {
    const int d = cfg.horizontal_dim();
    if (M.kind() != cfg.kind || nu.kind() != cfg.kind) throw KindMismatch(M.kind(), cfg.kind);
    if (M.rows() != d || M.cols() != d) throw std::invalid_argument("rotation block must be (m-1)x(m-1)");
    if (std::abs(norm(nu) - 1.0) > 1e-12) throw std::invalid_argument("nu must be a unit");
    if (cfg.kind == Kind::O) {
        if (std::abs(norm(M(0, 0)) - 1.0) > 1e-12) throw std::invalid_argument("rotation must be a unit");
    } else {
        const FMatrix defect = matmul(adjoint(M), M) - FMatrix::identity(cfg.kind, d);
        if (defect.max_abs() > 1e-10) throw std::invalid_argument("rotation block must be unitary");
    }
    if (!std::isfinite(s)) throw std::invalid_argument("translation parameter must be finite");
}

NormalIsometry NormalIsometry::dilation(SpaceConfig cfg, double s) {
    return NormalIsometry(cfg, FMatrix::identity(cfg.kind, cfg.horizontal_dim()), Element(cfg.kind, 1.0), s);
}

GroupMatrix::GroupMatrix(SpaceConfig config, FMatrix entries, double tol)
    : config_(config), entries_(std::move(entries)) {
    if (config_.kind == Kind::O) throw std::invalid_argument("group matrices are only defined for R, C, H");
    if (entries_.kind() != config_.kind) throw KindMismatch(entries_.kind(), config_.kind);
    const int n = config_.m + 1;
    if (entries_.rows() != n || entries_.cols() != n) throw std::invalid_argument("group matrix must be (m+1)x(m+1)");
    const FMatrix j = FMatrix::lorentz_form(config_.kind, n);
    const FMatrix defect = matmul(matmul(entries_, j), adjoint(entries_)) - j;
    const double scale = std::max(1.0, entries_.max_abs() * entries_.max_abs());
    if (defect.max_abs() > tol * scale) throw std::invalid_argument("matrix does not preserve the form of signature (m,1)");
}

NilPoint act_nil(const NormalIsometry& iso, const NilPoint& g) {
    if (!(iso.config == g.config())) throw ConfigMismatch();
    if (g.is_infinity()) return g;
    const Kind kind = iso.config.kind;
    const double k2 = g.horizontal_norm2();
    const Element& q = g.center();
    const Element nu_inv = inv(iso.nu);
    const Element shifted = Element(kind, std::exp(2.0 * iso.s) + k2) - q;
    const Element base = Element(kind, 1.0 + k2) - q;
    const Element shifted_inv = inv(shifted);
    const Element base_inv = inv(base);

    const Element a = inv(mul(mul(nu_inv, shifted_inv), iso.nu));
    const Element b = mul(nu_inv, mul(shifted_inv, base));
    std::vector<Element> c;
    c.reserve(g.horizontal().size());
    for (const auto& k : g.horizontal()) c.push_back(mul(base_inv, k));
    c = vecmat(c, iso.M);

    const double contract = std::exp(-iso.s);
    for (auto& x : c) x = contract * mul(a, mul(b, x));
    Element center = std::exp(-2.0 * iso.s) * mul(mul(nu_inv, q), iso.nu);
    center[0] = 0.0;
    return NilPoint(g.config(), std::move(center), std::move(c));
}

BallPoint act_ball(const NormalIsometry& iso, const BallPoint& x) {
    if (!(iso.config == x.config())) throw ConfigMismatch();
    const double ch = std::cosh(iso.s);
    const double sh = std::sinh(iso.s);
    const Element w2nu = mul(x.w2(), iso.nu);
    const Element den_inv = inv(sh * w2nu + ch * iso.nu);
    std::vector<Element> w1 = vecmat(x.w1(), iso.M);
    for (auto& v : w1) v = mul(den_inv, v);
    Element w2 = mul(den_inv, ch * w2nu + sh * iso.nu);
    return BallPoint(x.config(), std::move(w1), std::move(w2));
}

GroupMatrix embed_normal(const NormalIsometry& iso) {
    const Kind kind = iso.config.kind;
    if (kind == Kind::O) throw std::invalid_argument("embed_normal: unsupported for octonions");
    const int m = iso.config.m;
    FMatrix g(kind, m + 1, m + 1);
    for (int i = 0; i < m - 1; ++i)
        for (int j = 0; j < m - 1; ++j) g(i, j) = iso.M(i, j);
    const Element c = std::cosh(iso.s) * iso.nu;
    const Element s = std::sinh(iso.s) * iso.nu;
    g(m - 1, m - 1) = c;
    g(m - 1, m) = s;
    g(m, m - 1) = s;
    g(m, m) = c;
    return GroupMatrix(iso.config, std::move(g));
}

namespace {

void require_matrix_kind(Kind kind) {
    if (kind == Kind::O) throw std::invalid_argument("operation unsupported for octonions");
}

// Left F-line of a homogeneous row vector, as a ball point.
BallPoint dehomogenize(SpaceConfig cfg, const std::vector<Element>& v) {
    const int m = cfg.m;
    const Element lam_inv = inv(v[static_cast<std::size_t>(m)]);
    std::vector<Element> w1;
    for (int i = 0; i < m - 1; ++i) w1.push_back(mul(lam_inv, v[static_cast<std::size_t>(i)]));
    return BallPoint(cfg, std::move(w1), mul(lam_inv, v[static_cast<std::size_t>(m - 1)]));
}

std::vector<Element> homogenize(const BallPoint& x) {
    std::vector<Element> v = x.w1();
    v.push_back(x.w2());
    v.push_back(Element(x.config().kind, 1.0));
    return v;
}

// A^n kept as (P, log scale) with max |P_ij| = 1.
struct ScaledPower {
    FMatrix p;
    double log_scale = 0.0;

    // Scaling by a power of two keeps exactly representable powers exact.
    void normalize() {
        const int e = std::ilogb(p.max_abs());
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j)
                for (std::size_t c = 0; c < dim(p.kind()); ++c) p(i, j)[c] = std::ldexp(p(i, j)[c], -e);
        log_scale += e * std::log(2.0);
    }
    void square() {
        p = matmul(p, p);
        log_scale *= 2.0;
        normalize();
    }
};

// d(o, A^n o) = acosh |(A^n)_{mm}| since the last row of A^n has form norm -1.
double origin_displacement(const ScaledPower& sp) {
    const int m = sp.p.rows() - 1;
    const double log_lambda = sp.log_scale + std::log(norm(sp.p(m, m)));
    if (log_lambda <= 0.0) return 0.0;
    return log_lambda + std::log1p(std::sqrt(std::max(0.0, -std::expm1(-2.0 * log_lambda))));
}

BallPoint attracting_point(const GroupMatrix& a) {
    const SpaceConfig cfg = a.config();
    const int m = cfg.m;
    ScaledPower sp{a.entries(), 0.0};
    sp.normalize();
    auto last_row = [&] {
        std::vector<Element> v;
        for (int j = 0; j <= m; ++j) v.push_back(sp.p(m, j));
        return v;
    };
    BallPoint prev = dehomogenize(cfg, last_row());
    for (int iter = 0; iter < 64; ++iter) {
        sp.square();
        BallPoint cur = dehomogenize(cfg, last_row());
        const double change = max_coord_diff(cur, prev);
        prev = std::move(cur);
        if (change <= 1e-15 && iter >= 3) break;
    }
    return project_to_sphere(prev);
}

}  // namespace

BallPoint act_interior(const GroupMatrix& a, const BallPoint& x) {
    if (!(a.config() == x.config())) throw ConfigMismatch();
    return dehomogenize(a.config(), vecmat(homogenize(x), a.entries()));
}

GroupMatrix compose(const GroupMatrix& a, const GroupMatrix& b) {
    if (!(a.config() == b.config())) throw ConfigMismatch();
    return GroupMatrix(a.config(), matmul(a.entries(), b.entries()), 1e-8);
}

GroupMatrix inverse(const GroupMatrix& a) {
    const Kind kind = a.config().kind;
    const FMatrix j = FMatrix::lorentz_form(kind, a.config().m + 1);
    return GroupMatrix(a.config(), matmul(matmul(j, adjoint(a.entries())), j), 1e-8);
}

GroupMatrix power(const GroupMatrix& a, int n) {
    if (n < 0) return power(inverse(a), -n);
    FMatrix r = FMatrix::identity(a.config().kind, a.config().m + 1);
    FMatrix base = a.entries();
    for (unsigned e = static_cast<unsigned>(n); e; e >>= 1) {
        if (e & 1u) r = matmul(r, base);
        if (e > 1) base = matmul(base, base);
    }
    return GroupMatrix(a.config(), std::move(r), 1e-6);
}

const char* motion_name(Motion m) noexcept {
    switch (m) {
    case Motion::Elliptic: return "elliptic";
    case Motion::Parabolic: return "parabolic";
    case Motion::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

NotHyperbolic::NotHyperbolic(Motion m)
    : std::domain_error(std::string("isometry is not hyperbolic (") + motion_name(m) + ")"), motion_(m) {}

namespace {

// Eigenvalues of a Jordan block split by eps^{1/k} under rounding, which is far
// above the 1e-9 hyperbolicity threshold. The mean of a cluster is stable to
// O(eps), so clusters are averaged before taking moduli, and the spread inside
// a cluster flags a nontrivial Jordan block.
struct SpectrumSummary {
    double radius = 0.0;
    double spread = 0.0;
};

SpectrumSummary summarize_spectrum(const GroupMatrix& a) {
    require_matrix_kind(a.config().kind);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(complex_image(a.entries()), false);
    const Eigen::VectorXcd ev = es.eigenvalues();
    const int n = static_cast<int>(ev.size());
    constexpr double kLink = 1e-3;
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) label[i] = i;
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(ev[i] - ev[j]) < kLink && label[j] > label[i]) {
                    label[j] = label[i];
                    changed = true;
                }
    }
    SpectrumSummary out;
    for (int c = 0; c < n; ++c) {
        std::complex<double> sum = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i)
            if (label[i] == c) {
                sum += ev[i];
                ++count;
            }
        if (count == 0) continue;
        const std::complex<double> mean = sum / static_cast<double>(count);
        out.radius = std::max(out.radius, std::abs(mean));
        for (int i = 0; i < n; ++i)
            if (label[i] == c) out.spread = std::max(out.spread, std::abs(ev[i] - mean));
    }
    return out;
}

}  // namespace

double spectral_radius(const GroupMatrix& a) { return summarize_spectrum(a).radius; }

Motion classify(const GroupMatrix& a) {
    const SpectrumSummary s = summarize_spectrum(a);
    if (s.radius > 1.0 + 1e-9) return Motion::Hyperbolic;
    return s.spread > 1e-9 ? Motion::Parabolic : Motion::Elliptic;
}

double translation_length(const NormalIsometry& iso) {
    if (iso.s == 0.0) throw NotHyperbolic(Motion::Elliptic);
    return std::abs(iso.s);
}

double translation_length(const GroupMatrix& a) {
    return a.config().kind == Kind::H ? stable_length(a) : spectral_length(a);
}

double spectral_length(const GroupMatrix& a) {
    const Motion m = classify(a);
    if (m != Motion::Hyperbolic) throw NotHyperbolic(m);
    return std::log(spectral_radius(a));
}

double stable_length(const GroupMatrix& a) {
    const Motion m = classify(a);
    if (m != Motion::Hyperbolic) throw NotHyperbolic(m);
    ScaledPower sp{a.entries(), 0.0};
    sp.normalize();
    for (int i = 0; i < 3; ++i) sp.square();
    double d_prev = origin_displacement(sp);
    std::vector<double> est;
    for (int n = 8; n < 1024; n *= 2) {
        sp.square();
        const double d = origin_displacement(sp);
        est.push_back((d - d_prev) / n);
        d_prev = d;
        if (est.size() >= 2 && std::abs(est.back() - est[est.size() - 2]) < 1e-8) break;
    }
    if (est.size() >= 3) {
        const double e1 = est[est.size() - 3], e2 = est[est.size() - 2], e3 = est.back();
        const double den = e3 - 2.0 * e2 + e1;
        const double ratio = (e2 != e1) ? (e3 - e2) / (e2 - e1) : 0.0;
        if (std::abs(den) > 1e-14 && ratio > 0.0 && ratio < 1.0) return e3 - (e3 - e2) * (e3 - e2) / den;
    }
    return est.back();
}

BallFixedPair fixed_points(const GroupMatrix& a) {
    const Motion m = classify(a);
    if (m != Motion::Hyperbolic) throw NotHyperbolic(m);
    return {attracting_point(inverse(a)), attracting_point(a)};
}

FMatrix random_rotation(SpaceConfig config, std::mt19937_64& rng) {
    const Kind kind = config.kind;
    const int d = config.horizontal_dim();
    if (kind == Kind::O) {
        FMatrix r(kind, 1, 1);
        r(0, 0) = random_unit(kind, rng);
        return r;
    }
    std::vector<std::vector<Element>> rows;
    while (static_cast<int>(rows.size()) < d) {
        std::vector<Element> v;
        for (int i = 0; i < d; ++i) v.push_back(random_element(kind, rng));
        for (const auto& r : rows) {
            const Element c = hermitian(v, r);
            for (int i = 0; i < d; ++i) v[i] -= mul(c, r[i]);
        }
        double n2 = 0.0;
        for (const auto& x : v) n2 += x.norm2();
        if (n2 < 1e-6) continue;
        for (auto& x : v) x /= std::sqrt(n2);
        rows.push_back(std::move(v));
    }
    FMatrix r(kind, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r(i, j) = rows[i][j];
    return r;
}

NormalIsometry random_normal(SpaceConfig config, std::mt19937_64& rng, double s) {
    FMatrix rot = random_rotation(config, rng);
    Element nu = random_unit(config.kind, rng);
    return NormalIsometry(config, std::move(rot), std::move(nu), s);
}

GroupMatrix random_form_preserving(SpaceConfig config, std::mt19937_64& rng) {
    const Kind kind = config.kind;
    require_matrix_kind(kind);
    const int n = config.m + 1;
    std::normal_distribution<double> nd(0.0, 0.5);
    auto form = [&](const std::vector<Element>& u, const std::vector<Element>& v) {
        Element s(kind);
        for (int a = 0; a < n; ++a) {
            const Element t = mul(u[a], conj(v[a]));
            if (a == n - 1) s -= t; else s += t;
        }
        return s;
    };
    auto random_row = [&] {
        std::vector<Element> v;
        for (int a = 0; a < n; ++a) {
            Element e(kind);
            for (std::size_t c = 0; c < dim(kind); ++c) e[c] = nd(rng);
            v.push_back(e);
        }
        return v;
    };
    std::vector<Element> timelike;
    for (;;) {
        timelike = random_row();
        timelike[n - 1][0] += 1.5;
        const double q = form(timelike, timelike).re();
        if (q < -0.1) {
            for (auto& x : timelike) x /= std::sqrt(-q);
            break;
        }
    }
    std::vector<std::vector<Element>> rows;
    std::vector<double> signs;
    rows.push_back(timelike);
    signs.push_back(-1.0);
    while (static_cast<int>(rows.size()) < n) {
        std::vector<Element> v = random_row();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Element c = signs[r] * form(v, rows[r]);
            for (int a = 0; a < n; ++a) v[a] -= mul(c, rows[r][a]);
        }
        const double q = form(v, v).re();
        if (q < 1e-3) continue;
        for (auto& x : v) x /= std::sqrt(q);
        rows.push_back(std::move(v));
        signs.push_back(1.0);
    }
    FMatrix g(kind, n, n);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rows[static_cast<std::size_t>(i + 1)][j];
    for (int j = 0; j < n; ++j) g(n - 1, j) = rows[0][j];
    return GroupMatrix(config, std::move(g));
}

GroupMatrix conjugate(const GroupMatrix& c, const GroupMatrix& n) {
    return compose(compose(c, n), inverse(c));
}

RotationResiduals rotation_residuals(double s, const Element& Q, const Element& nu, double knorm) {
    const Kind kind = Q.kind();
    if (nu.kind() != kind) throw KindMismatch(nu.kind(), kind);
    if (std::abs(Q.re()) > 1e-12 * std::max(1.0, norm(Q))) throw std::invalid_argument("Q must be purely imaginary");
    if (std::abs(norm(nu) - 1.0) > 1e-12) throw std::invalid_argument("nu must be a unit");
    const double k2 = knorm * knorm;
    const double e2s = std::exp(2.0 * s);
    const Element one(kind, 1.0);
    const Element r1 = (e2s + k2) * one, r2 = (e2s - k2) * one, r3 = (1.0 + k2) * one;
    const Element nu_inv = inv(nu);

    const Element rhs = mul(mul(mul(nu_inv, inv(r1 - Q)), nu), mul(mul(nu_inv, r2 + Q), nu));
    const Element corrected = mul(mul(nu_inv, mul(inv(r1 - Q), r3 - Q)), mul(mul(inv(r3 - Q), r2 + Q), nu));
    const Element literal = mul(mul(nu_inv, mul(inv(r1 + Q), r3 - Q)), mul(mul(r3 + Q, r2 + Q), nu));

    const SpaceConfig cfg(kind, 2);
    const NilPoint g(cfg, Q, {knorm * one});
    const NormalIsometry iso(cfg, FMatrix::identity(kind, 1), nu, s);
    const Element w2 = act_ball(iso, stereo(g)).w2();

    const double scale = std::max(1.0, norm(rhs));
    return {norm(corrected - rhs) / scale, norm(literal - rhs) / scale, norm(w2 - rhs) / scale};
}

double rotation_identity_residual(double s, const Element& Q, const Element& nu, double knorm) {
    return rotation_residuals(s, Q, nu, knorm).corrected;
}

}  // namespace rank1kit
