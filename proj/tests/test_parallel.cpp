#include <doctest.h>

#include "rank1kit/checks.hpp"
#include "rank1kit/random.hpp"
#include "rank1kit/spectrum.hpp"

using namespace rank1kit;

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const SpaceConfig o(Kind::O, 2), h(Kind::H, 3);
    CHECK(checks::algebra_laws(500, 4, Exec::Serial) == checks::algebra_laws(500, 4, Exec::Parallel));
    CHECK(checks::boundary_metric(o, 200, 4, Exec::Serial) == checks::boundary_metric(o, 200, 4, Exec::Parallel));
    CHECK(checks::projection_roundtrip(h, 200, 4, Exec::Serial) == checks::projection_roundtrip(h, 200, 4, Exec::Parallel));
    CHECK(checks::gauge_crossratio(o, 200, 4, Exec::Serial) == checks::gauge_crossratio(o, 200, 4, Exec::Parallel));
    CHECK(checks::model_equivalence(h, 200, 4, Exec::Serial) == checks::model_equivalence(h, 200, 4, Exec::Parallel));
    const auto a = checks::rotation_identity(Kind::O, 200, 4, Exec::Serial), b = checks::rotation_identity(Kind::O, 200, 4, Exec::Parallel);
    CHECK(a.corrected == b.corrected);
    CHECK(a.literal == b.literal);
    CHECK(a.chain == b.chain);
    CHECK(checks::lemma1_sl2(20, 24, 4, Exec::Serial) == checks::lemma1_sl2(20, 24, 4, Exec::Parallel));
    CHECK(checks::lemma1_matrix(SpaceConfig(Kind::C, 2), 5, 24, 4, Exec::Serial) ==
          checks::lemma1_matrix(SpaceConfig(Kind::C, 2), 5, 24, 4, Exec::Parallel));
    CHECK(checks::lemma2(500, 4, Exec::Serial) == checks::lemma2(500, 4, Exec::Parallel));
    CHECK(checks::vogt(500, 4, Exec::Serial) == checks::vogt(500, 4, Exec::Parallel));
    CHECK(checks::length_chart_ranks(5, 4, Exec::Serial) == checks::length_chart_ranks(5, 4, Exec::Parallel));
}

TEST_CASE("serial and parallel Jacobians agree") {
    std::mt19937_64 rng(8);
    const SL2Rep rep = random_rep(rng, 3);
    const auto words = trace_coordinate_words(3);
    for (Derivative d : {Derivative::Analytic, Derivative::FiniteDifference}) {
        const auto s = trace_jacobian(rep, words, d, Exec::Serial), p = trace_jacobian(rep, words, d, Exec::Parallel);
        CHECK(s.matrix == p.matrix);
    }
    const SL2Rep pair = random_schottky_pair(rng);
    CHECK(length_jacobian(pair, default_length_words(), Derivative::Analytic, Exec::Serial).matrix ==
          length_jacobian(pair, default_length_words(), Derivative::Analytic, Exec::Parallel).matrix);
}

TEST_CASE("verify suite is deterministic across execution modes") {
    const auto s = checks::verify_suite(1, Exec::Serial, 0.05), p = checks::verify_suite(1, Exec::Parallel, 0.05);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i].name == p[i].name);
        CHECK(s[i].value == p[i].value);
        CHECK(s[i].passed());
    }
}
