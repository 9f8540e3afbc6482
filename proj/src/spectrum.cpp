#include "rank1kit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "rank1kit/random.hpp"

namespace rank1kit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t word_hash(const Word& w) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (int x : w.letters) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
    return h;
}

}  // namespace

LengthOracle LengthOracle::from_rep(SL2Rep rep, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise sigma must be finite and >= 0");
    LengthOracle o;
    o.arity_ = rep.arity();
    o.rep_ = std::move(rep);
    o.sigma_ = sigma;
    o.seed_ = seed;
    return o;
}

LengthOracle LengthOracle::from_table(const std::map<Word, double>& table, int arity) {
    if (arity < 1) throw std::invalid_argument("arity must be positive");
    LengthOracle o;
    o.arity_ = arity;
    for (const auto& [w, l] : table) {
        validate(w, arity);
        if (!std::isfinite(l) || l < 0.0)
            throw std::invalid_argument("length of word " + to_letters(w) + " must be finite and >= 0");
        o.table_[cyclic_canonical(w)] = l;
    }
    return o;
}

double LengthOracle::operator()(const Word& w) const {
    validate(w, arity_);
    const Word key = cyclic_canonical(w);
    if (!rep_) {
        const auto it = table_.find(key);
        if (it == table_.end()) throw OracleMiss(w);
        return it->second;
    }
    const Mat2 m = evaluate(*rep_, key);
    const SL2Class c = classify(m);
    if (c != SL2Class::Loxodromic) throw NotLoxodromic(c, "word " + to_letters(w));
    double l = length_of_trace(m.trace());
    if (sigma_ > 0.0) {
        auto rng = stream_rng(seed_, word_hash(key));
        l = std::max(0.0, l + sigma_ * std::normal_distribution<double>(0.0, 1.0)(rng));
    }
    return l;
}

namespace {

struct Lemma1Lengths {
    std::vector<double> a, b, ab;
};

Lemma1Lengths lemma1_lengths(const LengthOracle& oracle, const Word& a, const Word& b, int n_max) {
    if (n_max < 1) throw std::invalid_argument("length cross-ratio sequence needs at least one term");
    Lemma1Lengths out;
    for (int n = 1; n <= n_max; ++n) {
        const Word an = power(a, n), bn = power(b, n);
        out.a.push_back(oracle(an));
        out.b.push_back(oracle(bn));
        // a product that is not loxodromic has translation length 0
        double lab = 0.0;
        try {
            lab = oracle(concat(an, bn));
        } catch (const NotLoxodromic&) {
        }
        out.ab.push_back(lab);
    }
    return out;
}

}  // namespace

std::vector<double> lemma1_sequence(const LengthOracle& oracle, const Word& a, const Word& b, int n_max) {
    const auto l = lemma1_lengths(oracle, a, b, n_max);
    std::vector<double> seq;
    for (std::size_t i = 0; i < l.a.size(); ++i) seq.push_back(std::exp(l.a[i] + l.b[i] - l.ab[i]));
    return seq;
}

std::array<std::vector<double>, 2> lemma1_companions(const LengthOracle& oracle, const Word& a, const Word& b,
                                                     int n_max) {
    const auto l = lemma1_lengths(oracle, a, b, n_max);
    std::array<std::vector<double>, 2> out;
    for (std::size_t i = 0; i < l.a.size(); ++i) {
        out[0].push_back(std::exp(l.a[i] - l.ab[i]));
        out[1].push_back(std::exp(l.b[i] - l.ab[i]));
    }
    return out;
}

Estimate crossratio_estimate(const std::vector<double>& seq) {
    if (seq.size() < 4) throw std::invalid_argument("cross-ratio estimate needs at least 4 terms");
    const double last = seq.back();
    for (double v : seq)
        if (!std::isfinite(v)) return {last, kInf};
    const std::size_t n = std::min<std::size_t>(seq.size(), 5);
    const std::vector<double> win(seq.end() - static_cast<long>(n), seq.end());
    const double scale = std::max(std::abs(last), std::numeric_limits<double>::min());

    auto rms_about = [&](auto&& model) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::pow(win[k] - model(k), 2);
        return std::sqrt(s / static_cast<double>(n));
    };

    // differences at the rounding floor carry no rate information
    const double floor = 1e-13 * scale;
    std::vector<double> ratios;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const double d0 = win[k + 1] - win[k], d1 = win[k + 2] - win[k + 1];
        if (std::abs(d0) > floor && std::abs(d1) > floor) ratios.push_back(d1 / d0);
    }
    if (ratios.size() < 2) {
        const double rms = rms_about([&](std::size_t) { return last; });
        return {last, rms / scale};
    }
    std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2), ratios.end());
    const double r = ratios[ratios.size() / 2];
    if (!(std::abs(r) < 1.0)) return {last, kInf};

    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        basis(i, 0) = 1.0;
        basis(i, 1) = std::pow(r, static_cast<double>(k));
        rhs(i) = win[k];
    }
    const Eigen::Vector2d coef = basis.colPivHouseholderQr().solve(rhs);
    const double c = coef(0);
    const double rms = rms_about([&](std::size_t k) { return coef(0) + coef(1) * std::pow(r, static_cast<double>(k)); });
    return {c, rms / std::max(std::abs(c), std::numeric_limits<double>::min())};
}

std::vector<Word> trace_coordinate_words(int arity) {
    std::vector<Word> out;
    for (int i = 1; i <= arity; ++i) out.push_back(Word{{i}});
    for (int i = 1; i <= arity; ++i)
        for (int j = i + 1; j <= arity; ++j) out.push_back(Word{{i, j}});
    for (int i = 1; i <= arity; ++i)
        for (int j = i + 1; j <= arity; ++j)
            for (int k = j + 1; k <= arity; ++k) out.push_back(Word{{i, j, k}});
    return out;
}

double conjugacy_distance(const SL2Rep& r1, const SL2Rep& r2) {
    if (r1.arity() != r2.arity()) throw std::invalid_argument("conjugacy_distance: arity mismatch");
    const int n = r1.arity();
    if (n > 20) throw std::invalid_argument("conjugacy_distance: arity too large for sign enumeration");
    const auto words = trace_coordinate_words(n);
    std::vector<cplx> t1, t2;
    for (const auto& w : words) {
        t1.push_back(trace_word(r1, w));
        t2.push_back(trace_word(r2, w));
    }
    double best = kInf;
    for (bool conj : {false, true}) {
        for (std::uint32_t signs = 0; signs < (1u << n); ++signs) {
            double worst = 0.0;
            for (std::size_t k = 0; k < words.size(); ++k) {
                double s = 1.0;
                for (int x : words[k].letters)
                    if (signs & (1u << (std::abs(x) - 1))) s = -s;
                const cplx a = conj ? std::conj(t1[k]) : t1[k];
                worst = std::max(worst, std::abs(s * a - t2[k]) / std::max(1.0, std::abs(t2[k])));
            }
            best = std::min(best, worst);
        }
    }
    return best;
}

SL2 loxodromic_from_fixed_points(const SpherePoint& attracting, const SpherePoint& repelling, cplx lambda) {
    Mat2 p;
    p << attracting.z, repelling.z, attracting.w, repelling.w;
    const cplx det = p.determinant();
    if (std::abs(det) < 1e-12) throw std::invalid_argument("fixed points must be distinct");
    Mat2 d = Mat2::Zero();
    d(0, 0) = lambda;
    d(1, 1) = 1.0 / lambda;
    const Mat2 m = p * d * sl2_inverse(p) / det;
    return SL2(Mat2(m / std::sqrt(m.determinant())));
}

namespace {

SpherePoint random_sphere_point(std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    const double x = nd(rng), y = nd(rng), z = nd(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    const cplx num(x / r, y / r);
    const double den = 1.0 - z / r;
    const double n = std::sqrt(std::norm(num) + den * den);
    return {num / n, den / n};
}

}  // namespace

SL2Rep random_schottky_pair(std::mt19937_64& rng, double lmin, double lmax) {
    std::uniform_real_distribution<double> ul(lmin, lmax), ut(-std::numbers::pi, std::numbers::pi);
    for (;;) {
        SpherePoint p[4];
        for (auto& q : p) q = random_sphere_point(rng);
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (sphere_distance(p[i], p[j]) < 0.2) ok = false;
        if (!ok) continue;
        std::vector<SL2> gens;
        for (int g = 0; g < 2; ++g) {
            const double l = ul(rng), theta = ut(rng);
            gens.push_back(loxodromic_from_fixed_points(p[2 * g], p[2 * g + 1], std::exp(cplx(l, theta) / 2.0)));
        }
        return SL2Rep(std::move(gens));
    }
}

std::vector<Word> default_budget(int arity) {
    std::vector<Word> out = cyclic_classes(arity, 4);
    if (arity >= 2) {
        const Word a{{1}}, b{{2}};
        for (int n = 1; n <= 8; ++n)
            for (const Word& w : {power(a, n), power(b, n), concat(power(a, n), power(b, n)),
                                  concat(power(a, n), power(b, -n))}) {
                const Word c = cyclic_canonical(w);
                if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
            }
    }
    return out;
}

namespace {
std::string convergence_message(double rms) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "reconstruction did not converge; best RMS residual %.3e", rms);
    return buf;
}
}  // namespace

ConvergenceError::ConvergenceError(double best_rms, Reconstruction best)
    : std::runtime_error(convergence_message(best_rms)),
      best_rms_(best_rms),
      best_(std::move(best)) {}

namespace {

constexpr int kLemma1Terms = 8;

std::vector<Mat2> model_matrices(const std::vector<double>& x, int arity) {
    auto lox = [](cplx attracting, cplx repelling, double l, double theta, bool attracting_at_infinity) {
        const cplx lam = std::exp(cplx(l, theta) / 2.0);
        Mat2 d = Mat2::Zero();
        d(0, 0) = lam;
        d(1, 1) = 1.0 / lam;
        if (attracting_at_infinity) return d;
        Mat2 p;
        p << attracting, repelling, 1.0, 1.0;
        return Mat2(p * d * sl2_inverse(p) / p.determinant());
    };
    std::vector<Mat2> m;
    m.push_back(lox(0.0, 0.0, x[0], x[1], true));
    if (arity >= 2) m.push_back(lox(1.0, cplx(x[4], x[5]), x[2], x[3], false));
    for (int g = 2; g < arity; ++g) {
        const std::size_t o = 6 + 6 * static_cast<std::size_t>(g - 2);
        m.push_back(lox(cplx(x[o + 2], x[o + 3]), cplx(x[o + 4], x[o + 5]), x[o], x[o + 1], false));
    }
    return m;
}

std::size_t parameter_count(int arity) { return arity == 1 ? 2 : 6 + 6 * static_cast<std::size_t>(arity - 2); }

struct Problem {
    int arity;
    std::vector<Word> words;
    std::vector<double> target;

    Eigen::VectorXd residuals(const std::vector<double>& x) const {
        const auto mats = model_matrices(x, arity);
        Eigen::VectorXd r(static_cast<Eigen::Index>(words.size()));
        for (std::size_t k = 0; k < words.size(); ++k) {
            Mat2 p = Mat2::Identity();
            for (int l : words[k].letters) {
                const Mat2& g = mats[static_cast<std::size_t>(std::abs(l) - 1)];
                p = p * (l > 0 ? g : sl2_inverse(g));
            }
            r(static_cast<Eigen::Index>(k)) = length_of_trace(p.trace()) - target[k];
        }
        return r;
    }
};

struct Fit {
    std::vector<double> x;
    double rms = kInf;
    int iterations = 0;
};

double rms_of(const Eigen::VectorXd& r) {
    if (!r.allFinite()) return kInf;
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

Fit levenberg_marquardt(const Problem& prob, std::vector<double> x, int max_iter, double tol) {
    const auto np = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd r = prob.residuals(x);
    double cost = r.allFinite() ? r.squaredNorm() : kInf;
    double mu = 1e-3;
    Fit fit;
    int it = 0;
    for (; it < max_iter && std::isfinite(cost); ++it) {
        if (rms_of(r) <= 1e-3 * tol) break;
        Eigen::MatrixXd jac(r.size(), np);
        for (Eigen::Index j = 0; j < np; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double h = 1e-7 * std::max(1.0, std::abs(x[ju]));
            std::vector<double> xp = x, xm = x;
            xp[ju] += h;
            xm[ju] -= h;
            jac.col(j) = (prob.residuals(xp) - prob.residuals(xm)) / (2.0 * h);
        }
        if (!jac.allFinite()) break;
        const Eigen::MatrixXd a = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * r;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd h = a;
            for (Eigen::Index j = 0; j < np; ++j) h(j, j) += mu * std::max(a(j, j), 1e-12);
            const Eigen::VectorXd dx = -h.ldlt().solve(g);
            std::vector<double> xn = x;
            for (Eigen::Index j = 0; j < np; ++j) xn[static_cast<std::size_t>(j)] += dx(j);
            const Eigen::VectorXd rn = prob.residuals(xn);
            const double cn = rn.allFinite() ? rn.squaredNorm() : kInf;
            if (cn < cost) {
                const bool stalled = cost - cn <= 1e-15 * cost && dx.norm() <= 1e-13 * (1.0 + Eigen::Map<Eigen::VectorXd>(x.data(), np).norm());
                x = std::move(xn);
                r = rn;
                cost = cn;
                mu = std::max(mu / 3.0, 1e-12);
                accepted = true;
                if (stalled) it = max_iter;
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted) break;
    }
    fit.x = std::move(x);
    fit.rms = rms_of(r);
    fit.iterations = std::min(it, max_iter);
    return fit;
}

// Shared fixed points make a sequence run off to 0 or infinity; noise alone
// leaves the tail non-contracting but level.
bool degenerate(const std::vector<double>& seq, const Estimate& e) {
    if (!std::isfinite(e.value) || !(e.value > 1e-10) || !(e.value < 1e10)) return true;
    if (std::isfinite(e.confidence)) return false;
    const double drift = seq.back() / seq[seq.size() - 5];
    return !(drift < 2.0 && drift > 0.5);
}

}  // namespace

SL2Rep rep_from_parameters(const std::vector<double>& x, int arity) {
    if (arity < 1 || x.size() != parameter_count(arity)) throw std::invalid_argument("parameter vector size does not match arity");
    SL2Rep rep;
    for (const auto& m : model_matrices(x, arity)) rep.generators.emplace_back(Mat2(m / std::sqrt(m.determinant())));
    return rep;
}

Reconstruction reconstruct(const LengthOracle& oracle, const ReconstructOptions& options) {
    const int arity = oracle.arity();
    if (arity < 2) throw std::invalid_argument("reconstruction needs at least two generators");
    if (options.restarts < 1) throw std::invalid_argument("at least one restart is required");
    const Word a{{1}}, b{{2}};

    const double la = oracle(a), lb = oracle(b);
    if (la <= 0.0 || lb <= 0.0) throw ElementaryRepresentation();

    // |[0, p, inf, 1]| = |1 - p|^2 and |[0, 1, inf, p]| = |1 - p|^2 / |p|^2
    std::vector<double> s1, s2;
    try {
        s1 = lemma1_sequence(oracle, a, b, kLemma1Terms);
        s2 = lemma1_sequence(oracle, a, inverse(b), kLemma1Terms);
    } catch (const NotLoxodromic&) {
        throw ElementaryRepresentation();
    }
    const Estimate c1 = crossratio_estimate(s1), c2 = crossratio_estimate(s2);
    if (degenerate(s1, c1) || degenerate(s2, c2)) throw ElementaryRepresentation();
    const double r1 = std::sqrt(c1.value), r2 = std::sqrt(c1.value / c2.value);

    Problem prob{arity, {}, {}};
    for (const auto& w : options.words.empty() ? default_budget(arity) : options.words) {
        try {
            prob.target.push_back(oracle(w));
            prob.words.push_back(w);
        } catch (const NotLoxodromic&) {
        }
    }
    if (prob.words.size() < parameter_count(arity))
        throw std::invalid_argument("word budget has fewer loxodromic words than parameters");

    // p lies on |p - 1| = r1 and |p| = r2
    const double px = (r2 * r2 - r1 * r1 + 1.0) / 2.0;
    const double py = std::sqrt(std::max(0.0, r2 * r2 - px * px));

    std::vector<Fit> fits(static_cast<std::size_t>(options.restarts));
    for_each_index(fits.size(), options.exec, [&](std::size_t k) {
        auto rng = stream_rng(options.seed, k);
        std::uniform_real_distribution<double> ut(-std::numbers::pi, std::numbers::pi);
        std::normal_distribution<double> nd(0.0, 1.0);
        std::vector<double> x{la, ut(rng), lb, ut(rng), px, (k % 2 == 0 ? py : -py)};
        for (int g = 3; g <= arity; ++g) {
            x.push_back(oracle(Word{{g}}));
            x.push_back(ut(rng));
            for (int i = 0; i < 4; ++i) x.push_back(nd(rng));
        }
        fits[k] = levenberg_marquardt(prob, std::move(x), options.max_iterations, options.tolerance);
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < fits.size(); ++k)
        if (fits[k].rms < fits[best].rms) best = k;

    Reconstruction out;
    out.parameters = fits[best].x;
    out.words = prob.words;
    const Eigen::VectorXd res = prob.residuals(out.parameters);
    out.residuals.assign(res.data(), res.data() + res.size());
    out.rms = fits[best].rms;
    out.restart = static_cast<int>(best);
    out.iterations = fits[best].iterations;
    out.one_minus_p = {r1, c1.confidence};
    out.p_modulus = {r2, std::max(c1.confidence, c2.confidence)};
    try {
        out.rep = rep_from_parameters(out.parameters, arity);
    } catch (const std::invalid_argument&) {
        if (out.rms <= options.tolerance) throw;
    }
    if (!(out.rms <= options.tolerance)) throw ConvergenceError(out.rms, std::move(out));
    return out;
}

}  // namespace rank1kit
