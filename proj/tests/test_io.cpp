#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rank1kit/io.hpp"
#include "rank1kit/random.hpp"

using namespace rank1kit;
using io::json;

namespace {

// message of the InputError thrown by f, or "" when nothing is thrown
template <class F>
std::string input_error(F&& f) {
    try {
        f();
    } catch (const io::InputError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

}  // namespace

TEST_CASE("json round trips") {
    for (Kind k : {Kind::R, Kind::C, Kind::H, Kind::O}) {
        const SpaceConfig cfg(k, k == Kind::O ? 2 : 3);
        for (std::uint64_t i = 0; i < 50; ++i) {
            auto rng = stream_rng(11, i);
            const Element a = random_element(k, rng);
            CHECK(io::to_json(io::element_from_json(io::to_json(a), "x")) == io::to_json(a));
            const NilPoint g = random_nilpoint(cfg, rng);
            CHECK(io::to_json(io::nilpoint_from_json(io::to_json(g), "x")) == io::to_json(g));
            const BallPoint x = stereo(g);
            CHECK(io::to_json(io::ballpoint_from_json(io::to_json(x), "x")) == io::to_json(x));
            const NormalIsometry iso = random_normal(cfg, rng, 0.3);
            CHECK(io::to_json(io::normal_from_json(io::to_json(iso), "x")) == io::to_json(iso));
        }
        const NilPoint inf = NilPoint::infinity(cfg);
        CHECK(io::nilpoint_from_json(io::to_json(inf), "x").is_infinity());
    }
    std::mt19937_64 rng(3);
    const SL2Rep rep = random_rep(rng, 3);
    CHECK(io::to_json(io::rep_from_json(io::to_json(rep), "")) == io::to_json(rep));
    const Word w = from_letters("aBcA");
    CHECK(io::word_from_json(io::to_json(w), "w") == w);
    CHECK(io::word_from_json(json("aBcA"), "w") == w);
}

TEST_CASE("complex numbers accept plain reals") {
    CHECK(io::complex_from_json(json(2.5), "z") == cplx(2.5, 0.0));
    CHECK(io::complex_from_json(json::array({1.0, -2.0}), "z") == cplx(1.0, -2.0));
    CHECK(starts_with(input_error([] { io::complex_from_json(json("x"), "y12"); }), "y12:"));
}

TEST_CASE("input errors name the field") {
    std::mt19937_64 rng(1);
    json rep = io::to_json(random_rep(rng, 2));
    rep["generators"][1][0][1] = "oops";
    CHECK(starts_with(input_error([&] { io::rep_from_json(rep, ""); }), "generators[1][0][1]:"));

    json singular = io::to_json(random_rep(rng, 2));
    singular["generators"][0] = json::array({json::array({1.0, 2.0}), json::array({2.0, 4.0})});
    CHECK(starts_with(input_error([&] { io::rep_from_json(singular, ""); }), "generators[0]:"));

    CHECK(starts_with(input_error([] { io::rep_from_json(json::object(), ""); }), "generators:"));

    json cfg{{"kind", "Q"}, {"m", 2}};
    CHECK(starts_with(input_error([&] { io::config_from_json(cfg, "config"); }), "config.kind:"));
    cfg = {{"kind", "O"}, {"m", 3}};
    CHECK(starts_with(input_error([&] { io::config_from_json(cfg, "config"); }), "config.m:"));

    json pt = io::to_json(random_nilpoint(SpaceConfig(Kind::H, 2), rng));
    pt["horizontal"][0] = json::array({1.0, 2.0});
    CHECK(starts_with(input_error([&] { io::nilpoint_from_json(pt, "points[2]"); }), "points[2].horizontal[0]:"));
    pt = io::to_json(random_nilpoint(SpaceConfig(Kind::H, 2), rng));
    pt["center"][0] = 1.0;
    CHECK(starts_with(input_error([&] { io::nilpoint_from_json(pt, "points[0]"); }), "points[0]"));

    CHECK(starts_with(input_error([] { io::word_from_json(json::array({1, 0}), "w"); }), "w[1]:"));
    CHECK(starts_with(input_error([] { io::parse_json_text("{", "--input"); }), "--input:"));
}

TEST_CASE("word lists") {
    const auto w = io::parse_word_list("a, ab ,aB");
    REQUIRE(w.size() == 3);
    CHECK(to_letters(w[2]) == "aB");
    CHECK(starts_with(input_error([] { io::parse_word_list("a,,b"); }), "--words[1]:"));
    CHECK(starts_with(input_error([] { io::parse_word_list("a,b7"); }), "--words[1]:"));
    CHECK(starts_with(input_error([] { io::parse_word_list(""); }), "--words:"));
}

TEST_CASE("length tables") {
    const std::vector<Word> words{from_letters("a"), from_letters("b"), from_letters("aB")};
    const std::vector<double> lengths{1.25, 0.1 + 0.2, 3.0};
    std::istringstream in(io::write_length_table(words, lengths));
    int arity = 0;
    const auto table = io::read_length_table(in, arity);
    CHECK(arity == 2);
    CHECK(table.size() == 3);
    CHECK(table.at(from_letters("b")) == 0.1 + 0.2);

    std::istringstream bad("word,length\na,1\nb,-2\n");
    CHECK(starts_with(input_error([&] { io::read_length_table(bad, arity); }), "line 3 length:"));
    std::istringstream noheader("a,1\n");
    CHECK(starts_with(input_error([&] { io::read_length_table(noheader, arity); }), "line 1:"));
}

TEST_CASE("format_double round trips") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> e(-300.0, 300.0), m(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = m(rng) * std::pow(10.0, e(rng));
        CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(4.0) == "4");
}
