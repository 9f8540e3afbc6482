#include "rank1kit/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rank1kit {

namespace {

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

SL2::SL2(const Mat2& m) : m_(m) {
    const cplx ad = m(0, 0) * m(1, 1), bc = m(0, 1) * m(1, 0);
    const double scale = std::max({1.0, std::abs(ad), std::abs(bc)});
    if (!m.allFinite() || std::abs(ad - bc - 1.0) > 1e-12 * scale)
        throw std::invalid_argument("matrix does not have unit determinant");
}

SL2::SL2(cplx a, cplx b, cplx c, cplx d) : SL2((Mat2() << a, b, c, d).finished()) {}

SL2 SL2::diag(cplx lambda) {
    if (lambda == 0.0) throw std::invalid_argument("diagonal entry must be nonzero");
    Mat2 m = Mat2::Zero();
    m(0, 0) = lambda;
    m(1, 1) = 1.0 / lambda;
    return SL2(m, Unchecked{});
}

SL2 SL2::inverse() const { return SL2(sl2_inverse(m_), Unchecked{}); }

SL2 operator*(const SL2& x, const SL2& y) { return SL2(x.m_ * y.m_, SL2::Unchecked{}); }

Mat2 sl2_inverse(const Mat2& m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

Mat2 sl2_exp(const Mat2& a) {
    const cplx mu2 = -a.determinant();
    cplx c, s;
    if (std::abs(mu2) < 1e-12) {
        c = 1.0 + mu2 / 2.0;
        s = 1.0 + mu2 / 6.0;
    } else {
        const cplx mu = std::sqrt(mu2);
        c = std::cosh(mu);
        s = std::sinh(mu) / mu;
    }
    return c * Mat2::Identity() + s * a;
}

Word inverse(const Word& w) {
    Word r;
    r.letters.assign(w.letters.rbegin(), w.letters.rend());
    for (auto& x : r.letters) x = -x;
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return reduce(r);
}

Word power(const Word& w, int n) {
    if (n < 0) return power(inverse(w), -n);
    Word r;
    for (int i = 0; i < n; ++i) r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
    return reduce(r);
}

Word reduce(const Word& w) {
    Word r;
    for (int x : w.letters) {
        if (!r.letters.empty() && r.letters.back() == -x)
            r.letters.pop_back();
        else
            r.letters.push_back(x);
    }
    return r;
}

std::string to_letters(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (int x : w.letters) {
        const int g = std::abs(x) - 1;
        if (g < 0 || g >= 26) throw std::invalid_argument("letter index out of range for letter notation");
        s.push_back(static_cast<char>((x > 0 ? 'a' : 'A') + g));
    }
    return s;
}

Word from_letters(const std::string& s) {
    Word w;
    if (s == "1") return w;
    if (s.empty()) throw std::invalid_argument("empty word string; use \"1\" for the identity");
    for (char ch : s) {
        if (ch >= 'a' && ch <= 'z')
            w.letters.push_back(ch - 'a' + 1);
        else if (ch >= 'A' && ch <= 'Z')
            w.letters.push_back(-(ch - 'A' + 1));
        else
            throw std::invalid_argument(std::string("invalid letter '") + ch + "' in word");
    }
    return w;
}

namespace {

// a < A < b < B < ...
std::vector<int> class_key(const Word& w) {
    std::vector<int> k;
    for (int x : w.letters) k.push_back(2 * std::abs(x) + (x < 0 ? 1 : 0));
    return k;
}

}  // namespace

Word cyclic_canonical(const Word& w) {
    Word base = reduce(w);
    while (base.size() > 1 && base.letters.front() == -base.letters.back()) {
        base.letters.pop_back();
        base.letters.erase(base.letters.begin());
    }
    Word best = base;
    std::vector<int> best_key = class_key(base);
    for (const Word& b : {base, inverse(base)}) {
        for (std::size_t r = 0; r < b.size(); ++r) {
            Word rot;
            rot.letters.assign(b.letters.begin() + static_cast<long>(r), b.letters.end());
            rot.letters.insert(rot.letters.end(), b.letters.begin(), b.letters.begin() + static_cast<long>(r));
            auto k = class_key(rot);
            if (k < best_key) {
                best_key = std::move(k);
                best = std::move(rot);
            }
        }
    }
    return best;
}

std::vector<Word> cyclic_classes(int arity, int max_len) {
    if (arity < 1) throw std::invalid_argument("arity must be positive");
    std::vector<int> alphabet;
    for (int g = 1; g <= arity; ++g) {
        alphabet.push_back(g);
        alphabet.push_back(-g);
    }
    std::vector<Word> out;
    std::vector<Word> frontier{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier)
            for (int x : alphabet) {
                if (!w.empty() && w.letters.back() == -x) continue;
                Word v = w;
                v.letters.push_back(x);
                next.push_back(std::move(v));
            }
        for (const Word& w : next) {
            if (w.size() > 1 && w.letters.front() == -w.letters.back()) continue;
            if (cyclic_canonical(w) == w) out.push_back(w);
        }
        frontier = std::move(next);
    }
    return out;
}

void validate(const Word& w, int arity) {
    for (int x : w.letters)
        if (x == 0 || std::abs(x) > arity)
            throw std::invalid_argument("word letter " + std::to_string(x) + " outside generators 1.." +
                                        std::to_string(arity));
}

Mat2 evaluate(const SL2Rep& rep, const Word& w) {
    validate(w, rep.arity());
    Mat2 r = Mat2::Identity();
    for (int x : w.letters) {
        const Mat2& g = rep.generators[static_cast<std::size_t>(std::abs(x) - 1)].matrix();
        r = r * (x > 0 ? g : sl2_inverse(g));
    }
    return r;
}

SL2Rep complex_conjugate(const SL2Rep& rep) {
    SL2Rep r;
    for (const auto& g : rep.generators) r.generators.emplace_back(Mat2(g.matrix().conjugate()));
    return r;
}

SL2Rep conjugate(const SL2Rep& rep, const SL2& c) {
    SL2Rep r;
    const SL2 ci = c.inverse();
    for (const auto& g : rep.generators) r.generators.push_back(c * g * ci);
    return r;
}

const char* class_name(SL2Class c) noexcept {
    switch (c) {
    case SL2Class::Identity: return "identity";
    case SL2Class::Parabolic: return "parabolic";
    case SL2Class::Elliptic: return "elliptic";
    case SL2Class::Loxodromic: return "loxodromic";
    }
    return "?";
}

SL2Class classify(const Mat2& a) {
    const cplx tr = a.trace();
    if (std::abs(tr.imag()) > 1e-9 || std::abs(tr.real()) > 2.0 + 1e-9) return SL2Class::Loxodromic;
    for (double sign : {1.0, -1.0}) {
        if (std::abs(tr - 2.0 * sign) <= 1e-9) {
            const double off = max_abs(a - sign * Mat2::Identity());
            return off <= 1e-9 ? SL2Class::Identity : SL2Class::Parabolic;
        }
    }
    return SL2Class::Elliptic;
}

NotLoxodromic::NotLoxodromic(SL2Class c, const std::string& what)
    : std::domain_error(what + " is " + class_name(c) + ", not loxodromic"), class_(c) {}

cplx dominant_eigenvalue(cplx trace) {
    const cplx s = std::sqrt(trace - 2.0) * std::sqrt(trace + 2.0);
    const cplx a = (trace + s) / 2.0, b = (trace - s) / 2.0;
    return std::abs(a) >= std::abs(b) ? a : b;
}

double length_of_trace(cplx trace) { return 2.0 * std::log(std::abs(dominant_eigenvalue(trace))); }

double length(const Mat2& a) {
    const SL2Class c = classify(a);
    if (c != SL2Class::Loxodromic) throw NotLoxodromic(c, "element");
    return length_of_trace(a.trace());
}

double length_gauge(const Mat2& a) {
    const cplx tr = a.trace();
    return std::abs(tr - 2.0) + std::abs(tr + 2.0);
}

cplx trace_word(const SL2Rep& rep, const Word& w) { return evaluate(rep, w).trace(); }

VogtResult vogt(cplx x1, cplx x2, cplx x3, cplx y12, cplx y13, cplx y23) {
    VogtResult r;
    r.P = x1 * y23 + x2 * y13 + x3 * y12 - x1 * x2 * x3;
    r.Q = x1 * x1 + x2 * x2 + x3 * x3 + y12 * y12 + y13 * y13 + y23 * y23 + y12 * y13 * y23 - x1 * x2 * y12 -
          x1 * x3 * y13 - x2 * x3 * y23 - 4.0;
    r.Delta = r.P * r.P - 4.0 * r.Q;
    const cplx s = std::sqrt(r.Delta);
    // the larger-modulus root avoids cancellation; the other follows from Vieta
    const cplx big = (std::abs(r.P + s) >= std::abs(r.P - s)) ? (r.P + s) / 2.0 : (r.P - s) / 2.0;
    const cplx small = big == 0.0 ? cplx(0.0) : r.Q / big;
    r.roots = {big, small};
    return r;
}

namespace {

template <class M>
RankReport rank_of(const M& m, double rel_tol) {
    RankReport r;
    if (m.size() == 0) return r;
    Eigen::JacobiSVD<M> svd(m);
    const auto& sv = svd.singularValues();
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double smax = sv.size() ? sv(0) : 0.0;
    r.tolerance = rel_tol * smax;
    for (double s : r.singular_values)
        if (s > r.tolerance && smax > 0.0) ++r.rank;
    return r;
}

// Prefix and suffix products of an evaluated word, and its letters' matrices.
struct WordFactors {
    std::vector<Mat2> prefix;  // prefix[p] = product of letters [0, p)
    std::vector<Mat2> suffix;  // suffix[p] = product of letters [p, n)
    std::vector<int> letters;
};

WordFactors factor_word(const SL2Rep& rep, const Word& w) {
    validate(w, rep.arity());
    WordFactors f;
    const std::size_t n = w.size();
    f.letters = w.letters;
    std::vector<Mat2> mats(n);
    for (std::size_t p = 0; p < n; ++p) {
        const int x = w.letters[p];
        const Mat2& g = rep.generators[static_cast<std::size_t>(std::abs(x) - 1)].matrix();
        mats[p] = x > 0 ? g : sl2_inverse(g);
    }
    f.prefix.assign(n + 1, Mat2::Identity());
    f.suffix.assign(n + 1, Mat2::Identity());
    for (std::size_t p = 0; p < n; ++p) f.prefix[p + 1] = f.prefix[p] * mats[p];
    for (std::size_t p = n; p-- > 0;) f.suffix[p] = mats[p] * f.suffix[p + 1];
    return f;
}

// d/dt tr w(..., X_g exp(t xi), ...) at t = 0.
cplx trace_derivative(const SL2Rep& rep, const WordFactors& f, int g, const Mat2& xi) {
    cplx d = 0.0;
    const Mat2& x = rep.generators[static_cast<std::size_t>(g)].matrix();
    for (std::size_t p = 0; p < f.letters.size(); ++p) {
        const int l = f.letters[p];
        if (std::abs(l) != g + 1) continue;
        if (l > 0)
            d += (f.prefix[p] * x * xi * f.suffix[p + 1]).trace();
        else
            d -= (f.prefix[p] * xi * sl2_inverse(x) * f.suffix[p + 1]).trace();
    }
    return d;
}

SL2Rep moved(const SL2Rep& rep, int g, const Mat2& xi, cplx t) {
    SL2Rep r = rep;
    const Mat2 m = rep.generators[static_cast<std::size_t>(g)].matrix() * sl2_exp(t * xi);
    r.generators[static_cast<std::size_t>(g)] = SL2(m);
    return r;
}

constexpr double kStep = 1e-5;

}  // namespace

RankReport rank_report(const Eigen::MatrixXcd& m, double rel_tol) { return rank_of(m, rel_tol); }
RankReport rank_report(const Eigen::MatrixXd& m, double rel_tol) { return rank_of(m, rel_tol); }

std::array<Mat2, 3> sl2_basis() {
    Mat2 h = Mat2::Zero(), e = Mat2::Zero(), f = Mat2::Zero();
    h(0, 0) = 1.0;
    h(1, 1) = -1.0;
    e(0, 1) = 1.0;
    f(1, 0) = 1.0;
    return {h, e, f};
}

TraceJacobian trace_jacobian(const SL2Rep& rep, const std::vector<Word>& words, Derivative how, Exec exec) {
    const auto basis = sl2_basis();
    const int cols = 3 * rep.arity();
    const auto rows = static_cast<Eigen::Index>(words.size());
    std::vector<WordFactors> factors;
    for (const auto& w : words) factors.push_back(factor_word(rep, w));

    TraceJacobian out;
    out.matrix = Eigen::MatrixXcd::Zero(rows, cols);
    for_each_index(static_cast<std::size_t>(cols), exec, [&](std::size_t c) {
        const int g = static_cast<int>(c) / 3;
        const Mat2& xi = basis[c % 3];
        if (how == Derivative::Analytic) {
            for (Eigen::Index r = 0; r < rows; ++r)
                out.matrix(r, static_cast<Eigen::Index>(c)) = trace_derivative(rep, factors[static_cast<std::size_t>(r)], g, xi);
        } else {
            const SL2Rep plus = moved(rep, g, xi, kStep), minus = moved(rep, g, xi, -kStep);
            for (Eigen::Index r = 0; r < rows; ++r) {
                const Word& w = words[static_cast<std::size_t>(r)];
                out.matrix(r, static_cast<Eigen::Index>(c)) = (trace_word(plus, w) - trace_word(minus, w)) / (2.0 * kStep);
            }
        }
    });
    out.rank = rank_report(out.matrix);
    return out;
}

LengthJacobian length_jacobian(const SL2Rep& rep, const std::vector<Word>& words, Derivative how, Exec exec) {
    const auto basis = sl2_basis();
    const int cols = 6 * rep.arity();
    const auto rows = static_cast<Eigen::Index>(words.size());
    std::vector<WordFactors> factors;
    std::vector<cplx> weight;  // dl = 2 Re(dtr / (lambda - 1/lambda))
    for (const auto& w : words) {
        const Mat2 m = evaluate(rep, w);
        const SL2Class c = classify(m);
        if (c != SL2Class::Loxodromic) throw NotLoxodromic(c, "word " + to_letters(w));
        const cplx lam = dominant_eigenvalue(m.trace());
        weight.push_back(1.0 / (lam - 1.0 / lam));
        factors.push_back(factor_word(rep, w));
    }

    LengthJacobian out;
    out.matrix = Eigen::MatrixXd::Zero(rows, cols);
    for_each_index(static_cast<std::size_t>(cols), exec, [&](std::size_t c) {
        const int g = static_cast<int>(c) / 6;
        const int k = static_cast<int>(c) % 6;
        const cplx rot = k < 3 ? cplx(1.0) : cplx(0.0, 1.0);
        const Mat2& xi = basis[static_cast<std::size_t>(k % 3)];
        if (how == Derivative::Analytic) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                const auto i = static_cast<std::size_t>(r);
                const cplx dtr = rot * trace_derivative(rep, factors[i], g, xi);
                out.matrix(r, static_cast<Eigen::Index>(c)) = 2.0 * std::real(dtr * weight[i]);
            }
        } else {
            const SL2Rep plus = moved(rep, g, rot * xi, kStep), minus = moved(rep, g, rot * xi, -kStep);
            for (Eigen::Index r = 0; r < rows; ++r) {
                const Word& w = words[static_cast<std::size_t>(r)];
                out.matrix(r, static_cast<Eigen::Index>(c)) =
                    (length_of_trace(trace_word(plus, w)) - length_of_trace(trace_word(minus, w))) / (2.0 * kStep);
            }
        }
    });
    out.rank = rank_report(out.matrix);
    return out;
}

std::vector<Word> default_length_words() {
    return {Word{{1}}, Word{{2}}, Word{{1, 2}}, Word{{1, -2}}, Word{{1, 1, 2}}, Word{{1, 2, 2}}};
}

SpherePoint SpherePoint::finite(cplx x) {
    const double n = std::sqrt(1.0 + std::norm(x));
    return {x / n, 1.0 / n};
}

SpherePoint SpherePoint::infinity() { return {1.0, 0.0}; }

double sphere_distance(const SpherePoint& a, const SpherePoint& b) { return std::abs(a.z * b.w - a.w * b.z); }

namespace {

SpherePoint normalized(cplx z, cplx w) {
    const double n = std::sqrt(std::norm(z) + std::norm(w));
    return {z / n, w / n};
}

SpherePoint eigenline(const Mat2& a, cplx e) {
    const cplx u0 = a(0, 1), u1 = e - a(0, 0);
    const cplx v0 = e - a(1, 1), v1 = a(1, 0);
    if (std::norm(u0) + std::norm(u1) >= std::norm(v0) + std::norm(v1)) return normalized(u0, u1);
    return normalized(v0, v1);
}

}  // namespace

SpherePoint mobius(const Mat2& a, const SpherePoint& p) {
    return normalized(a(0, 0) * p.z + a(0, 1) * p.w, a(1, 0) * p.z + a(1, 1) * p.w);
}

FixedPair fixed_points(const Mat2& a) {
    const SL2Class c = classify(a);
    if (c != SL2Class::Loxodromic) throw NotLoxodromic(c, "element");
    const cplx lam = dominant_eigenvalue(a.trace());
    return {eigenline(a, 1.0 / lam), eigenline(a, lam)};
}

double sphere_crossratio(const SpherePoint& x1, const SpherePoint& x2, const SpherePoint& x3, const SpherePoint& x4) {
    const double num = std::pow(sphere_distance(x3, x1) * sphere_distance(x4, x2), 2);
    const double den = std::pow(sphere_distance(x4, x1) * sphere_distance(x3, x2), 2);
    if (den == 0.0) {
        if (num == 0.0) throw std::domain_error("sphere_crossratio: indeterminate 0/0 configuration");
        return std::numeric_limits<double>::infinity();
    }
    return num / den;
}

bool commute(const Mat2& a, const Mat2& b, double tol) {
    return max_abs(a * b - b * a) <= tol * std::max(1.0, max_abs(a) * max_abs(b));
}

bool is_nonelementary(const SL2Rep& rep) {
    const int n = rep.arity();
    if (n < 2) return false;
    std::vector<Word> cands;
    for (int i = 1; i <= n; ++i) cands.push_back(Word{{i}});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            cands.push_back(Word{{i, j}});
            cands.push_back(Word{{i, -j}});
        }
    std::vector<FixedPair> fps;
    for (const auto& w : cands) {
        const Mat2 m = evaluate(rep, w);
        if (classify(m) == SL2Class::Loxodromic) fps.push_back(fixed_points(m));
    }
    constexpr double kDistinct = 1e-8;
    for (std::size_t i = 0; i < fps.size(); ++i)
        for (std::size_t j = i + 1; j < fps.size(); ++j) {
            const SpherePoint p[4] = {fps[i].repelling, fps[i].attracting, fps[j].repelling, fps[j].attracting};
            bool distinct = true;
            for (int a = 0; a < 4 && distinct; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (sphere_distance(p[a], p[b]) <= kDistinct) {
                        distinct = false;
                        break;
                    }
            if (distinct) return true;
        }
    return false;
}

namespace {

bool loxodromic(const SL2Rep& rep, const Word& w) { return classify(evaluate(rep, w)) == SL2Class::Loxodromic; }

void push_unique(std::vector<Word>& v, const Word& w) {
    if (std::find(v.begin(), v.end(), w) == v.end()) v.push_back(w);
}

// Index triple of pairwise non-commuting words, if any.
bool find_triple(const SL2Rep& rep, const std::vector<Word>& words, std::array<std::size_t, 3>& out) {
    std::vector<Mat2> m;
    for (const auto& w : words) m.push_back(evaluate(rep, w));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (commute(m[i], m[j])) continue;
            for (std::size_t k = j + 1; k < m.size(); ++k)
                if (!commute(m[i], m[k]) && !commute(m[j], m[k])) {
                    out = {i, j, k};
                    return true;
                }
        }
    return false;
}

}  // namespace

std::vector<Word> coordinate_words(const SL2Rep& rep, const std::vector<Word>& seed, int budget) {
    if (!is_nonelementary(rep)) throw ElementaryRepresentation();
    for (const auto& w : seed) validate(w, rep.arity());
    const std::vector<Word> pool = cyclic_classes(rep.arity(), 4);

    Word h;
    bool have_h = false;
    for (const auto* src : {&seed, &pool}) {
        for (const auto& w : *src)
            if (!w.empty() && loxodromic(rep, w)) {
                h = w;
                have_h = true;
                break;
            }
        if (have_h) break;
    }
    if (!have_h) throw ElementaryRepresentation();

    // Non-hyperbolic w is replaced by w h^n and w h^-n, which recover tr w
    // through tr(w h^n) + tr(w h^-n) = tr(w) tr(h^n); h itself is added.
    std::vector<Word> out;
    bool used_h = false;
    for (const auto& w : seed) {
        if (loxodromic(rep, w)) {
            push_unique(out, w);
            continue;
        }
        bool fixed = false;
        for (int n = 1; n <= 8 && !fixed; ++n) {
            const Word a = concat(w, power(h, n)), b = concat(w, power(h, -n));
            if (!a.empty() && !b.empty() && loxodromic(rep, a) && loxodromic(rep, b)) {
                push_unique(out, a);
                push_unique(out, b);
                fixed = true;
            }
        }
        if (!fixed) throw std::runtime_error("could not make word " + to_letters(w) + " loxodromic");
        used_h = true;
    }
    if (used_h) push_unique(out, h);

    // If X1 commutes with Xi, the triple X1 Xi, X1 Xk, Xk (Xk not commuting
    // with X1) has no commuting pair.
    std::array<std::size_t, 3> t{};
    if (out.size() >= 3 && !find_triple(rep, out, t)) {
        const Mat2 x1 = evaluate(rep, out[0]);
        std::size_t k = 0;
        for (std::size_t j = 1; j < out.size() && k == 0; ++j)
            if (!commute(x1, evaluate(rep, out[j]))) k = j;
        std::size_t i = 0;
        for (std::size_t j = 1; j < out.size() && i == 0; ++j)
            if (j != k && commute(x1, evaluate(rep, out[j]))) i = j;
        if (k != 0 && i != 0) {
            const Word a = concat(out[0], out[i]), b = concat(out[0], out[k]);
            if (loxodromic(rep, a) && loxodromic(rep, b)) {
                const Word c = out[k];
                std::vector<Word> rest;
                for (std::size_t j = 1; j < out.size(); ++j)
                    if (j != i && j != k) rest.push_back(out[j]);
                out = {a, b, c};
                for (const auto& w : rest) push_unique(out, w);
            }
        }
    }
    for (const auto& w : pool) {
        if (out.size() >= 3 && find_triple(rep, out, t)) break;
        if (loxodromic(rep, w)) push_unique(out, w);
    }
    if (!find_triple(rep, out, t)) throw ElementaryRepresentation();
    std::vector<Word> ordered{out[t[0]], out[t[1]], out[t[2]]};
    for (std::size_t j = 0; j < out.size(); ++j)
        if (j != t[0] && j != t[1] && j != t[2]) ordered.push_back(out[j]);
    out = std::move(ordered);

    const int target = 6 * rep.arity() - 6;
    int rank = length_jacobian(rep, out, Derivative::Analytic, Exec::Serial).rank.rank;
    for (const auto& w : pool) {
        if (rank >= target || static_cast<int>(out.size()) >= budget) break;
        if (std::find(out.begin(), out.end(), w) != out.end() || !loxodromic(rep, w)) continue;
        out.push_back(w);
        const int r = length_jacobian(rep, out, Derivative::Analytic, Exec::Serial).rank.rank;
        if (r > rank)
            rank = r;
        else
            out.pop_back();
    }
    return out;
}

SL2 random_sl2(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (;;) {
        Mat2 m;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = cplx(nd(rng), nd(rng));
        const cplx det = m.determinant();
        if (std::abs(det) < 0.1) continue;
        return SL2(Mat2(m / std::sqrt(det)));
    }
}

SL2 random_loxodromic(std::mt19937_64& rng, double lmin, double lmax) {
    std::uniform_real_distribution<double> ul(lmin, lmax), ut(-std::numbers::pi, std::numbers::pi);
    const double l = ul(rng), theta = ut(rng);
    const SL2 c = random_sl2(rng);
    return c * SL2::diag(std::exp(cplx(l, theta) / 2.0)) * c.inverse();
}

SL2Rep random_rep(std::mt19937_64& rng, int arity) {
    SL2Rep rep;
    for (int i = 0; i < arity; ++i) rep.generators.push_back(random_loxodromic(rng));
    return rep;
}

}  // namespace rank1kit
