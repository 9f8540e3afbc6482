// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rank1kit/checks.hpp"
#include "rank1kit/cli.hpp"
#include "rank1kit/random.hpp"
#include "rank1kit/spectrum.hpp"

using namespace rank1kit;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [FAILED]");
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Kind kKinds[] = {Kind::R, Kind::C, Kind::H, Kind::O};

SpaceConfig config_for(Kind k) { return SpaceConfig(k, k == Kind::O ? 2 : 3); }

Outcome check_algebra() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double w = checks::algebra_laws(10000, kSeed, Exec::Parallel);
    const double t = seconds_since(t0);
    o.require(w <= 1e-12, "worst rel err " + sci(w) + " <= 1e-12");
    o.require(t < 5.0, "runtime " + sci(t) + " s < 5 s");
    return o;
}

Outcome check_boundary() {
    Outcome o;
    for (Kind k : kKinds) {
        const double w = checks::boundary_metric(config_for(k), 1000, kSeed, Exec::Parallel);
        o.require(w <= 1e-12, std::string(kind_name(k)) + " " + sci(w));
    }
    return o;
}

Outcome check_projection() {
    Outcome o;
    for (Kind k : kKinds) {
        const SpaceConfig cfg = config_for(k);
        const bool e = max_coord_diff(stereo(NilPoint::identity(cfg)), BallPoint::north(cfg)) == 0.0;
        const bool inf = max_coord_diff(stereo(NilPoint::infinity(cfg)), BallPoint::south(cfg)) == 0.0;
        const double w = checks::projection_roundtrip(cfg, 1000, kSeed, Exec::Parallel);
        o.require(e && inf && w <= 1e-10, std::string(kind_name(k)) + " exact poles, round trip " + sci(w));
    }
    return o;
}

Outcome check_gauge() {
    Outcome o;
    const double w = checks::gauge_crossratio(SpaceConfig(Kind::O, 2), 1000, kSeed, Exec::Parallel);
    o.require(w <= 1e-9, "octonion worst rel err " + sci(w) + " <= 1e-9");
    return o;
}

Outcome check_models() {
    Outcome o;
    for (Kind k : kKinds) {
        const double w = checks::model_equivalence(config_for(k), 1000, kSeed, Exec::Parallel);
        o.require(w <= 1e-9, std::string(kind_name(k)) + " " + sci(w));
    }
    return o;
}

Outcome check_rotation() {
    Outcome o;
    const auto w = checks::rotation_identity(Kind::O, 1000, kSeed, Exec::Parallel);
    o.require(w.corrected <= 1e-10, "(r1-Q)^-1 form " + sci(w.corrected) + " <= 1e-10");
    o.require(w.chain <= 1e-10, "vs ball action " + sci(w.chain));
    cli::JobConfig cfg;
    cfg.command = cli::Command::Verify;
    const auto r = cli::execute(cfg);
    const bool both = r.output.find("rotation identity (r1-Q)^-1 form O") != std::string::npos &&
                      r.output.find("rotation identity (r1+Q)^-1 form O") != std::string::npos;
    o.require(both, "verify reports both readings");
    return o;
}

Outcome check_length_crossratio() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const double s = checks::lemma1_sl2(100, 24, kSeed, Exec::Parallel);
    const double r = checks::lemma1_matrix(SpaceConfig(Kind::R, 3), 20, 24, kSeed, Exec::Parallel);
    const double c = checks::lemma1_matrix(SpaceConfig(Kind::C, 2), 20, 24, kSeed, Exec::Parallel);
    const double t = seconds_since(t0);
    o.require(s <= 1e-5, "SL2(C) " + sci(s));
    o.require(r <= 1e-5, "O(3,1) " + sci(r));
    o.require(c <= 1e-5, "U(2,1) " + sci(c));
    o.require(t < 60.0, "runtime " + sci(t) + " s");
    return o;
}

Outcome check_trace_gauge() {
    Outcome o;
    const double w = checks::lemma2(10000, kSeed, Exec::Parallel);
    o.require(w <= 1e-12, "worst rel err " + sci(w));
    const Mat2 m = SL2::diag(cplx(2.0)).matrix();
    const double g = length_gauge(m), l = length(m);
    o.require(m.trace() == cplx(2.5) && std::abs(g - 5.0) <= 1e-15 && std::abs(l - 2.0 * std::numbers::ln2) <= 1e-15,
              "tr 2.5: gauge " + std::to_string(g) + ", l = 2 ln 2");
    return o;
}

Outcome check_vogt_check() {
    Outcome o;
    const double w = checks::vogt(10000, kSeed, Exec::Parallel);
    o.require(w <= 1e-10, "worst residual " + sci(w));
    const VogtResult v = vogt(2.0, 2.0, 2.0, 2.0, 2.0, 2.0);
    o.require(v.P == cplx(4.0) && v.Q == cplx(4.0) && v.Delta == cplx(0.0), "identity P = Q = 4, Delta = 0");
    return o;
}

Outcome check_kernel_dimension() {
    Outcome o;
    const cplx a(1.3, 0.4), b(0.7, -0.2);
    const SL2Rep commuting({SL2::diag(cplx(1.8, 0.3)), SL2::diag(cplx(0.4, -2.1)), SL2(a, b, b, (1.0 + b * b) / a)});
    const auto words = trace_coordinate_words(3);
    const int kc = trace_jacobian(commuting, words).kernel_dim();
    o.require(kc == 4, "commuting configuration kernel " + std::to_string(kc) + " (expected 4)");
    const std::vector<Word> six(words.begin(), words.begin() + 6);
    o.detail += "; first six words alone " + std::to_string(trace_jacobian(commuting, six).kernel_dim());
    std::mt19937_64 rng(kSeed);
    const int kg = trace_jacobian(random_rep(rng, 3), words).kernel_dim();
    o.require(kg == 3, "generic kernel " + std::to_string(kg));
    return o;
}

Outcome check_length_chart() {
    Outcome o;
    const auto ranks = checks::length_chart_ranks(20, kSeed, Exec::Parallel);
    int lo = 6;
    for (int r : ranks) lo = std::min(lo, r);
    o.require(lo == 6, "min rank over 20 reps " + std::to_string(lo));
    const SL2Rep axis({SL2::diag(std::exp(cplx(0.7, 0.2))), SL2::diag(std::exp(cplx(-0.4, 1.1)))});
    const int r = length_jacobian(axis, default_length_words()).rank.rank;
    o.require(r <= 2, "shared axis rank " + std::to_string(r));
    return o;
}

Outcome check_rigidity() {
    Outcome o;
    auto rng = stream_rng(kSeed, 0);
    const SL2Rep truth = random_schottky_pair(rng);
    const LengthOracle oracle = LengthOracle::from_rep(truth);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Reconstruction rec = reconstruct(oracle);
        const double t = seconds_since(t0);
        const double d = conjugacy_distance(rec.rep, truth);
        o.require(d <= 1e-4 && t <= 60.0, "distance " + sci(d) + " in " + sci(t) + " s");
        double held = 0.0;
        for (const auto& w : cyclic_classes(2, 5)) {
            if (w.size() < 5) continue;
            const double l = oracle(w);
            held = std::max(held, std::abs(length(evaluate(rec.rep, w)) - l) / std::max(1.0, l));
        }
        o.require(held <= 1e-3, "held-out words " + sci(held));
        const Reconstruction bar = reconstruct(LengthOracle::from_rep(complex_conjugate(truth)));
        const double db = conjugacy_distance(bar.rep, rec.rep);
        o.require(db <= 1e-4, "conjugate oracle class " + sci(db));
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"algebra laws", check_algebra},
        {"boundary metric", check_boundary},
        {"projection fixed values", check_projection},
        {"cross-ratio gauge identity", check_gauge},
        {"model equivalence", check_models},
        {"rotation identity", check_rotation},
        {"length cross-ratio limit", check_length_crossratio},
        {"trace gauge identity", check_trace_gauge},
        {"Vogt identity", check_vogt_check},
        {"trace kernel dimension", check_kernel_dimension},
        {"length chart rank", check_length_chart},
        {"rigidity round trip", check_rigidity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %-28s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
