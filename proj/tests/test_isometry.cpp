#include <doctest.h>

#include <cmath>

#include "rank1kit/isometry.hpp"
#include "rank1kit/random.hpp"

using namespace rank1kit;

namespace {

const SpaceConfig kConfigs[] = {{Kind::R, 2}, {Kind::R, 3}, {Kind::C, 2}, {Kind::C, 3},
                                {Kind::H, 2}, {Kind::H, 3}, {Kind::O, 2}};
const SpaceConfig kMatrixConfigs[] = {{Kind::R, 2}, {Kind::R, 3}, {Kind::C, 2}, {Kind::C, 3}, {Kind::H, 2}, {Kind::H, 3}};

double rel(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

std::uint64_t tag(const SpaceConfig& c) { return static_cast<std::uint64_t>(c.m * 10 + static_cast<int>(c.kind)); }

BallPoint random_boundary(SpaceConfig cfg, std::mt19937_64& rng) {
    std::vector<Element> w1;
    for (int i = 0; i < cfg.horizontal_dim(); ++i) w1.push_back(random_element(cfg.kind, rng));
    return project_to_sphere(BallPoint(cfg, std::move(w1), random_element(cfg.kind, rng)));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

GroupMatrix hyperbolic_conjugate(SpaceConfig cfg, std::mt19937_64& rng, double s) {
    const GroupMatrix c = random_form_preserving(cfg, rng);
    return conjugate(c, embed_normal(random_normal(cfg, rng, s)));
}

}  // namespace

TEST_CASE("normal form validation") {
    const SpaceConfig cfg(Kind::C, 2);
    CHECK_THROWS_AS(NormalIsometry(cfg, FMatrix::identity(Kind::C, 1), Element(Kind::C, 2.0), 0.1), std::invalid_argument);
    FMatrix bad = FMatrix::identity(Kind::C, 1);
    bad(0, 0) = Element(Kind::C, 0.5);
    CHECK_THROWS_AS(NormalIsometry(cfg, bad, Element(Kind::C, 1.0), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(NormalIsometry(cfg, FMatrix::identity(Kind::C, 2), Element(Kind::C, 1.0), 0.1), std::invalid_argument);
}

TEST_CASE("axis endpoints are fixed") {
    for (const auto& cfg : kConfigs) {
        auto rng = stream_rng(30, tag(cfg));
        const NormalIsometry iso = random_normal(cfg, rng, 0.8);
        CHECK(approx_equal(act_nil(iso, NilPoint::identity(cfg)), NilPoint::identity(cfg)));
        CHECK(act_nil(iso, NilPoint::infinity(cfg)).is_infinity());
        CHECK(max_coord_diff(act_ball(iso, BallPoint::north(cfg)), BallPoint::north(cfg)) <= 1e-15);
        CHECK(max_coord_diff(act_ball(iso, BallPoint::south(cfg)), BallPoint::south(cfg)) <= 1e-15);
    }
}

TEST_CASE("pure dilation scales the coordinates") {
    for (const auto& cfg : kConfigs) {
        auto rng = stream_rng(31, tag(cfg));
        for (int n = 0; n < 50; ++n) {
            const double s = uniform(rng, -2.0, 2.0);
            const NilPoint g = random_nilpoint(cfg, rng);
            const NilPoint h = act_nil(NormalIsometry::dilation(cfg, s), g);
            CHECK(approx_equal(h.center(), std::exp(-2 * s) * g.center(), 1e-13));
            for (std::size_t i = 0; i < g.horizontal().size(); ++i)
                CHECK(approx_equal(h.horizontal()[i], std::exp(-s) * g.horizontal()[i], 1e-13));
            CHECK(rel(qnorm(h), std::exp(-s) * qnorm(g)) < 1e-12);
            const NilPoint g2 = random_nilpoint(cfg, rng);
            CHECK(rel(dist(h, act_nil(NormalIsometry::dilation(cfg, s), g2)), std::exp(-s) * dist(g, g2)) < 1e-12);
        }
    }
}

TEST_CASE("real case is scaling and rotation") {
    const SpaceConfig cfg(Kind::R, 3);
    auto rng = stream_rng(32, 0);
    for (int n = 0; n < 20; ++n) {
        const FMatrix m = random_rotation(cfg, rng);
        const NilPoint g(cfg, Element(Kind::R), {random_element(Kind::R, rng), random_element(Kind::R, rng)});
        const auto km = vecmat(g.horizontal(), m);
        const NilPoint h = act_nil(NormalIsometry(cfg, m, Element(Kind::R, 1.0), 0.6), g);
        for (int i = 0; i < 2; ++i) CHECK(approx_equal(h.horizontal()[i], std::exp(-0.6) * km[i], 1e-13));
        // nu = -1 adds the reflection k -> -k
        const NilPoint r = act_nil(NormalIsometry(cfg, m, Element(Kind::R, -1.0), 0.6), g);
        for (int i = 0; i < 2; ++i) CHECK(approx_equal(r.horizontal()[i], -std::exp(-0.6) * km[i], 1e-13));
    }
}

TEST_CASE("origin moves along the axis") {
    for (const auto& cfg : kConfigs) {
        for (double s : {-1.3, 0.2, 0.9}) {
            const BallPoint x = act_ball(NormalIsometry::dilation(cfg, s), BallPoint::origin(cfg));
            CHECK(approx_equal(x.w2(), Element(cfg.kind, std::tanh(s)), 1e-15));
        }
    }
}

TEST_CASE("the two models are equivariant under the projection") {
    for (const auto& cfg : kConfigs) {
        auto rng = stream_rng(33, tag(cfg));
        for (int n = 0; n < 100; ++n) {
            const NormalIsometry iso = random_normal(cfg, rng, uniform(rng, -2.0, 2.0));
            const NilPoint g = random_nilpoint(cfg, rng);
            CHECK(max_coord_diff(stereo(act_nil(iso, g)), act_ball(iso, stereo(g))) <= 1e-9);
        }
    }
}

TEST_CASE("rotations preserve the boundary distance") {
    for (const auto& cfg : kMatrixConfigs) {
        auto rng = stream_rng(34, tag(cfg));
        for (int n = 0; n < 50; ++n) {
            const NormalIsometry rot = random_normal(cfg, rng, 0.0);
            const NilPoint g = random_nilpoint(cfg, rng), h = random_nilpoint(cfg, rng);
            CHECK(rel(dist(act_nil(rot, g), act_nil(rot, h)), dist(g, h)) < 1e-12);
        }
    }
}

TEST_CASE("cross-ratio is invariant under the ball action") {
    for (const auto& cfg : kConfigs) {
        auto rng = stream_rng(35, tag(cfg));
        for (int n = 0; n < 50; ++n) {
            const double s = uniform(rng, -1.5, 1.5);
            const NormalIsometry iso = cfg.kind == Kind::O ? NormalIsometry::dilation(cfg, s) : random_normal(cfg, rng, s);
            BallPoint p[4];
            for (auto& x : p) x = random_boundary(cfg, rng);
            // nearly coincident points make the ratio ill-conditioned
            if (chordal(p[2], p[0]) < 1e-3 || chordal(p[3], p[1]) < 1e-3) continue;
            CHECK(rel(crossratio_ball(act_ball(iso, p[0]), act_ball(iso, p[1]), act_ball(iso, p[2]), act_ball(iso, p[3])),
                      crossratio_ball(p[0], p[1], p[2], p[3])) < 1e-9);
        }
    }
}

TEST_CASE("matrix action agrees with the normal-form action") {
    for (const auto& cfg : kMatrixConfigs) {
        auto rng = stream_rng(36, tag(cfg));
        for (int n = 0; n < 30; ++n) {
            const NormalIsometry iso = random_normal(cfg, rng, uniform(rng, -2.0, 2.0));
            const BallPoint x = random_interior(cfg, rng);
            CHECK(max_coord_diff(act_interior(embed_normal(iso), x), act_ball(iso, x)) <= 1e-12);
        }
        CHECK_THROWS_AS(embed_normal(NormalIsometry::dilation(SpaceConfig(Kind::O, 2), 0.3)), std::invalid_argument);
    }
}

TEST_CASE("form-preserving matrices are isometries") {
    for (const auto& cfg : kMatrixConfigs) {
        auto rng = stream_rng(37, tag(cfg));
        for (int n = 0; n < 30; ++n) {
            const GroupMatrix a = random_form_preserving(cfg, rng);
            const BallPoint x = random_interior(cfg, rng), y = random_interior(cfg, rng);
            CHECK(rel(coshdist(act_interior(a, x), act_interior(a, y)), coshdist(x, y)) < 1e-10);
            const BallPoint o = BallPoint::origin(cfg);
            CHECK(max_coord_diff(act_interior(compose(a, inverse(a)), x), x) <= 1e-10);
            CHECK(max_coord_diff(act_interior(GroupMatrix(cfg, FMatrix::identity(cfg.kind, cfg.m + 1)), x), x) == 0.0);
            // right action: x(AB) = (xA)B
            const GroupMatrix b = random_form_preserving(cfg, rng);
            CHECK(max_coord_diff(act_interior(compose(a, b), o), act_interior(b, act_interior(a, o))) <= 1e-10);
        }
    }
    FMatrix bad = FMatrix::identity(Kind::R, 3);
    bad(0, 1) = Element(Kind::R, 0.5);
    CHECK_THROWS_AS(GroupMatrix(SpaceConfig(Kind::R, 2), bad), std::invalid_argument);
}

TEST_CASE("translation lengths") {
    const SpaceConfig c2(Kind::C, 2);
    auto rng = stream_rng(38, 0);
    CHECK(translation_length(random_normal(c2, rng, 0.7)) == 0.7);
    CHECK(translation_length(random_normal(c2, rng, -0.7)) == 0.7);
    CHECK_THROWS_AS(translation_length(NormalIsometry::dilation(c2, 0.0)), NotHyperbolic);
    for (const auto& cfg : kMatrixConfigs) {
        auto r = stream_rng(39, tag(cfg));
        const GroupMatrix id(cfg, FMatrix::identity(cfg.kind, cfg.m + 1));
        try {
            translation_length(id);
            FAIL("identity accepted");
        } catch (const NotHyperbolic& e) {
            CHECK(e.motion() == Motion::Elliptic);
        }
        for (int n = 0; n < 10; ++n) {
            const double s = uniform(r, 0.3, 2.5);
            const NormalIsometry iso = random_normal(cfg, r, s);
            CHECK(rel(coshdist(BallPoint::origin(cfg), act_ball(iso, BallPoint::origin(cfg))), std::cosh(s)) < 1e-12);
            const GroupMatrix a = conjugate(random_form_preserving(cfg, r), embed_normal(iso));
            CHECK(rel(translation_length(a), s) < 1e-8);
            CHECK(rel(stable_length(a), s) < 1e-8);
            CHECK(rel(translation_length(power(a, 2)), 2 * translation_length(a)) < 1e-8);
            if (cfg.kind != Kind::H) CHECK(rel(spectral_length(a), s) < 1e-10);
        }
    }
}

TEST_CASE("classification") {
    const SpaceConfig cfg(Kind::R, 2);
    // I + X + X^2/2 for a nilpotent X in the Lie algebra of O(2,1).
    FMatrix p(Kind::R, 3, 3);
    const double e[3][3] = {{1, 1, 1}, {-1, 0.5, -0.5}, {1, 0.5, 1.5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p(i, j) = Element(Kind::R, e[i][j]);
    CHECK(classify(GroupMatrix(cfg, p)) == Motion::Parabolic);
    auto rng = stream_rng(40, 0);
    const SpaceConfig c3(Kind::C, 3);
    CHECK(classify(embed_normal(random_normal(c3, rng, 0.0))) == Motion::Elliptic);
    CHECK(classify(embed_normal(random_normal(c3, rng, 0.01))) == Motion::Hyperbolic);
    CHECK_THROWS_AS(fixed_points(GroupMatrix(cfg, p)), NotHyperbolic);
}

TEST_CASE("boundary fixed points of hyperbolic matrices") {
    for (const auto& cfg : kMatrixConfigs) {
        auto rng = stream_rng(41, tag(cfg));
        const NormalIsometry iso = random_normal(cfg, rng, 0.9);
        const BallFixedPair fp = fixed_points(embed_normal(iso));
        CHECK(max_coord_diff(fp.attracting, BallPoint::north(cfg)) <= 1e-12);
        CHECK(max_coord_diff(fp.repelling, BallPoint::south(cfg)) <= 1e-12);
        for (int n = 0; n < 10; ++n) {
            const GroupMatrix c = random_form_preserving(cfg, rng);
            const GroupMatrix a = conjugate(c, embed_normal(random_normal(cfg, rng, uniform(rng, 0.5, 2.0))));
            const BallFixedPair f = fixed_points(a);
            const GroupMatrix ci = inverse(c);
            CHECK(max_coord_diff(f.attracting, project_to_sphere(act_interior(ci, BallPoint::north(cfg)))) <= 1e-9);
            CHECK(max_coord_diff(f.repelling, project_to_sphere(act_interior(ci, BallPoint::south(cfg)))) <= 1e-9);
            CHECK(max_coord_diff(project_to_sphere(act_interior(a, f.attracting)), f.attracting) <= 1e-9);
            const BallFixedPair g = fixed_points(inverse(a));
            CHECK(max_coord_diff(g.attracting, f.repelling) <= 1e-9);
        }
    }
}

TEST_CASE("complex image is multiplicative") {
    auto rng = stream_rng(42, 0);
    const SpaceConfig cfg(Kind::H, 2);
    const GroupMatrix a = random_form_preserving(cfg, rng), b = random_form_preserving(cfg, rng);
    const Eigen::MatrixXcd lhs = complex_image(matmul(a.entries(), b.entries()));
    const Eigen::MatrixXcd rhs = complex_image(a.entries()) * complex_image(b.entries());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("rotation-scaling identity in the ball action") {
    auto rng = stream_rng(43, 0);
    for (Kind kind : {Kind::R, Kind::C, Kind::H, Kind::O}) {
        for (int n = 0; n < 200; ++n) {
            const double s = uniform(rng, -2.0, 2.0), k = std::abs(uniform(rng, 0.0, 2.0));
            const Element q = random_imaginary(kind, rng);
            const RotationResiduals one = rotation_residuals(s, q, Element(kind, 1.0), k);
            CHECK(one.corrected <= 1e-13);
            const RotationResiduals r = rotation_residuals(s, q, random_unit(kind, rng), k);
            CHECK(r.corrected <= (kind == Kind::O ? 1e-10 : 1e-12));
            CHECK(r.chain <= 1e-10);
            if (kind != Kind::R) CHECK(r.literal > 1e-3);
        }
    }
    CHECK_THROWS_AS(rotation_residuals(0.1, Element(Kind::H, 1.0), Element(Kind::H, 1.0), 0.5), std::invalid_argument);
}
