#include "rank1kit/checks.hpp"

#include <algorithm>
#include <cmath>

#include "rank1kit/random.hpp"
#include "rank1kit/spectrum.hpp"

namespace rank1kit::checks {

namespace {

template <class F>
double worst_of(std::size_t n, Exec exec, F&& f) {
    std::vector<double> v(n, 0.0);
    for_each_index(n, exec, [&](std::size_t i) { v[i] = f(i); });
    double w = 0.0;
    for (double x : v) w = std::isnan(x) ? x : std::max(w, x);
    return w;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

double rel(const Element& a, const Element& b) { return norm(a - b) / std::max({norm(a), norm(b), 1e-300}); }

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::uint64_t tag(SpaceConfig cfg) { return static_cast<std::uint64_t>(cfg.m * 10 + static_cast<int>(cfg.kind)); }

}  // namespace

double algebra_laws(std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed, i);
        const Element x = random_element(Kind::O, rng), y = random_element(Kind::O, rng);
        const Element xy = mul(x, y);
        double w = rel(mul(x, conj(x)), Element(Kind::O, x.norm2()));
        w = std::max(w, rel(norm(xy), norm(x) * norm(y)));
        w = std::max(w, rel(mul(xy, inv(y)), x));
        w = std::max(w, rel(inv(xy), mul(inv(y), inv(x))));
        return w;
    });
}

double boundary_metric(SpaceConfig cfg, std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ tag(cfg), i);
        const NilPoint c = random_nilpoint(cfg, rng), g = random_nilpoint(cfg, rng), h = random_nilpoint(cfg, rng);
        const double d = dist(g, h);
        const double s = uniform(rng, -2.0, 2.0);
        const NormalIsometry delta = NormalIsometry::dilation(cfg, s);
        return std::max(rel(dist(nmul(c, g), nmul(c, h)), d), rel(dist(act_nil(delta, g), act_nil(delta, h)), std::exp(-s) * d));
    });
}

double projection_roundtrip(SpaceConfig cfg, std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ tag(cfg), i);
        const NilPoint g = random_nilpoint(cfg, rng, 2.0);
        const BallPoint x = stereo(g);
        const NilPoint back = stereo_inv(x);
        double w = std::abs(x.norm2() - 1.0);
        w = std::max(w, norm(back.center() - g.center()) / std::max(1.0, norm(g.center())));
        for (std::size_t k = 0; k < g.horizontal().size(); ++k)
            w = std::max(w, norm(back.horizontal()[k] - g.horizontal()[k]) / std::max(1.0, norm(g.horizontal()[k])));
        return w;
    });
}

double gauge_crossratio(SpaceConfig cfg, std::size_t samples, std::uint64_t seed, Exec exec) {
    const BallPoint south = BallPoint::south(cfg), north = BallPoint::north(cfg);
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ tag(cfg), i);
        const NilPoint g1 = random_nilpoint(cfg, rng), g2 = random_nilpoint(cfg, rng);
        const double q1 = qnorm(g1), q2 = qnorm(g2);
        return rel(crossratio_ball(south, north, stereo(g1), stereo(g2)), q2 * q2 / (q1 * q1));
    });
}

double model_equivalence(SpaceConfig cfg, std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ tag(cfg), i);
        const NormalIsometry iso = random_normal(cfg, rng, uniform(rng, -2.0, 2.0));
        const NilPoint g = random_nilpoint(cfg, rng);
        return max_coord_diff(stereo(act_nil(iso, g)), act_ball(iso, stereo(g)));
    });
}

RotationWorst rotation_identity(Kind kind, std::size_t samples, std::uint64_t seed, Exec exec) {
    std::vector<RotationResiduals> r(samples);
    for_each_index(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ static_cast<std::uint64_t>(kind), i);
        const double s = uniform(rng, -2.0, 2.0), k = uniform(rng, 0.0, 2.0);
        const Element q = random_imaginary(kind, rng);
        r[i] = rotation_residuals(s, q, random_unit(kind, rng), k);
    });
    RotationWorst w;
    for (const auto& x : r) {
        w.corrected = std::max(w.corrected, x.corrected);
        w.literal = std::max(w.literal, x.literal);
        w.chain = std::max(w.chain, x.chain);
    }
    return w;
}

double lemma1_sl2(std::size_t pairs, int n, std::uint64_t seed, Exec exec) {
    return worst_of(pairs, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed, i);
        const SL2Rep rep = random_schottky_pair(rng);
        const auto fa = fixed_points(rep.generators[0].matrix()), fb = fixed_points(rep.generators[1].matrix());
        const double cr = sphere_crossratio(fa.repelling, fb.repelling, fa.attracting, fb.attracting);
        const auto seq = lemma1_sequence(LengthOracle::from_rep(rep), Word{{1}}, Word{{2}}, n);
        return std::abs(seq.back() - cr) / cr;
    });
}

double lemma1_matrix(SpaceConfig cfg, std::size_t pairs, int n, std::uint64_t seed, Exec exec) {
    return worst_of(pairs, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed ^ tag(cfg), i);
        const GroupMatrix a = conjugate(random_form_preserving(cfg, rng), embed_normal(random_normal(cfg, rng, uniform(rng, 1.0, 2.0))));
        const GroupMatrix b = conjugate(random_form_preserving(cfg, rng), embed_normal(random_normal(cfg, rng, uniform(rng, 1.0, 2.0))));
        const auto fa = fixed_points(a), fb = fixed_points(b);
        const double cr = crossratio_ball(fa.repelling, fb.repelling, fa.attracting, fb.attracting);
        const GroupMatrix an = power(a, n), bn = power(b, n);
        const double seq = std::exp(translation_length(an) + translation_length(bn) - translation_length(compose(an, bn)));
        return std::abs(seq - cr) / cr;
    });
}

double lemma2(std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed, i);
        const Mat2 m = random_loxodromic(rng, 0.01, 6.0).matrix();
        const double l = length(m);
        return rel(length_gauge(m), 2.0 * (std::exp(l / 2.0) + std::exp(-l / 2.0)));
    });
}

double vogt(std::size_t samples, std::uint64_t seed, Exec exec) {
    return worst_of(samples, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed, i);
        const SL2Rep rep = random_rep(rng, 3);
        const auto t = [&](std::vector<int> w) { return trace_word(rep, Word{std::move(w)}); };
        const VogtResult v = rank1kit::vogt(t({1}), t({2}), t({3}), t({1, 2}), t({1, 3}), t({2, 3}));
        double w = 0.0;
        for (const cplx z : {t({1, 2, 3}), t({2, 1, 3})}) {
            const double scale = std::max({1.0, std::norm(v.P), std::abs(v.Q), std::norm(z)});
            w = std::max(w, std::abs(z * z - v.P * z + v.Q) / scale);
        }
        return w;
    });
}

std::vector<int> length_chart_ranks(std::size_t reps, std::uint64_t seed, Exec exec) {
    std::vector<int> ranks(reps, 0);
    for_each_index(reps, exec, [&](std::size_t i) {
        auto rng = stream_rng(seed, i);
        ranks[i] = length_jacobian(random_rep(rng, 2), default_length_words(), Derivative::Analytic, Exec::Serial).rank.rank;
    });
    return ranks;
}

std::vector<CheckResult> verify_suite(std::uint64_t seed, Exec exec, double scale) {
    const auto n = [&](std::size_t base) { return std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(base) * scale)); };
    std::vector<CheckResult> out;
    out.push_back({"algebra", "octonion laws", n(10000), algebra_laws(n(10000), seed, exec), 1e-12});
    for (Kind k : {Kind::R, Kind::C, Kind::H, Kind::O}) {
        const SpaceConfig cfg(k, k == Kind::O ? 2 : 3);
        const std::string tagname = std::string(kind_name(k));
        out.push_back({"nilboundary", "metric invariance " + tagname, n(1000), boundary_metric(cfg, n(1000), seed, exec), 1e-12});
        out.push_back({"ballmodel", "projection round trip " + tagname, n(1000), projection_roundtrip(cfg, n(1000), seed, exec), 1e-10});
        out.push_back({"ballmodel", "gauge cross-ratio " + tagname, n(1000), gauge_crossratio(cfg, n(1000), seed, exec), 1e-9});
        out.push_back({"isometry", "model equivalence " + tagname, n(1000), model_equivalence(cfg, n(1000), seed, exec), 1e-9});
    }
    for (Kind k : {Kind::C, Kind::H, Kind::O}) {
        const RotationWorst w = rotation_identity(k, n(1000), seed, exec);
        const std::string tagname = std::string(kind_name(k));
        out.push_back({"isometry", "rotation identity (r1-Q)^-1 form " + tagname, n(1000), w.corrected, 1e-10});
        out.push_back({"isometry", "rotation identity (r1+Q)^-1 form " + tagname, n(1000), w.literal, 1e-10, false});
        out.push_back({"isometry", "rotation identity vs ball action " + tagname, n(1000), w.chain, 1e-10});
    }
    out.push_back({"spectrum", "length cross-ratio limit SL2(C) n=24", n(100), lemma1_sl2(n(100), 24, seed, exec), 1e-5});
    out.push_back({"spectrum", "length cross-ratio limit O(3,1) n=24", n(20), lemma1_matrix(SpaceConfig(Kind::R, 3), n(20), 24, seed, exec), 1e-5});
    out.push_back({"spectrum", "length cross-ratio limit U(2,1) n=24", n(20), lemma1_matrix(SpaceConfig(Kind::C, 2), n(20), 24, seed, exec), 1e-5});
    out.push_back({"sl2traces", "trace gauge identity", n(10000), lemma2(n(10000), seed, exec), 1e-12});
    out.push_back({"sl2traces", "Vogt quadratic", n(10000), vogt(n(10000), seed, exec), 1e-10});
    const auto ranks = length_chart_ranks(n(20), seed, exec);
    int deficit = 0;
    for (int r : ranks) deficit = std::max(deficit, 6 - r);
    out.push_back({"sl2traces", "length chart rank deficit", ranks.size(), static_cast<double>(deficit), 0.0});
    return out;
}

}  // namespace rank1kit::checks
