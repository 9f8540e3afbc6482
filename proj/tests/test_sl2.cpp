#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rank1kit/random.hpp"
#include "rank1kit/sl2.hpp"

using namespace rank1kit;

namespace {

const Word X{{1}}, Y{{2}}, Z{{3}};

std::vector<Word> seven_words() {
    return {Word{{1}}, Word{{2}}, Word{{3}}, Word{{1, 2}}, Word{{1, 3}}, Word{{2, 3}}, Word{{1, 2, 3}}};
}

SL2 with_trace(cplx tr) { return SL2(tr, -1.0, 1.0, 0.0); }

// X, Y diagonal loxodromic and Z symmetric.
SL2Rep commuting_configuration() {
    const cplx a(1.3, 0.4), b(0.7, -0.2);
    const cplx d = (1.0 + b * b) / a;
    return SL2Rep({SL2::diag(cplx(1.8, 0.3)), SL2::diag(cplx(0.4, -2.1)), SL2(a, b, b, d)});
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Real coordinates of the tangent X_i^-1 eta X_i - eta of conjugation by exp(t eta).
Eigen::VectorXd conjugation_direction(const SL2Rep& rep, const Mat2& eta) {
    Eigen::VectorXd v(6 * rep.arity());
    for (int i = 0; i < rep.arity(); ++i) {
        const Mat2& x = rep.generators[static_cast<std::size_t>(i)].matrix();
        const Mat2 xi = sl2_inverse(x) * eta * x - eta;
        const cplx coeff[3] = {xi(0, 0), xi(0, 1), xi(1, 0)};
        for (int k = 0; k < 3; ++k) {
            v(6 * i + k) = coeff[k].real();
            v(6 * i + k + 3) = coeff[k].imag();
        }
    }
    return v;
}

}  // namespace

TEST_CASE("SL2 construction") {
    CHECK_NOTHROW(SL2(2.0, 3.0, 1.0, 2.0));
    CHECK_THROWS_AS(SL2(2.0, 3.0, 1.0, 2.5), std::invalid_argument);
    const SL2 a = SL2::diag(cplx(2.0, 1.0));
    CHECK(((a * a.inverse()).matrix() - Mat2::Identity()).norm() < 1e-15);
    CHECK_THROWS_AS(SL2::diag(0.0), std::invalid_argument);
}

TEST_CASE("sl2_exp") {
    std::mt19937_64 rng(5);
    for (const auto& xi : sl2_basis()) {
        const Mat2 e = sl2_exp(0.3 * xi);
        CHECK(std::abs(e.determinant() - 1.0) < 1e-14);
        // Taylor oracle
        Mat2 t = Mat2::Identity(), term = Mat2::Identity();
        for (int n = 1; n < 30; ++n) {
            term = term * (0.3 * xi) / static_cast<double>(n);
            t += term;
        }
        CHECK((e - t).norm() < 1e-14);
    }
    Mat2 a;
    a << cplx(0.2, 0.1), cplx(-0.4, 0.3), cplx(0.5, 0.0), cplx(-0.2, -0.1);
    Mat2 t = Mat2::Identity(), term = Mat2::Identity();
    for (int n = 1; n < 40; ++n) {
        term = term * a / static_cast<double>(n);
        t += term;
    }
    CHECK((sl2_exp(a) - t).norm() < 1e-14);
}

TEST_CASE("words") {
    const Word w = from_letters("abA");
    CHECK(w.letters == std::vector<int>{1, 2, -1});
    CHECK(to_letters(w) == "abA");
    CHECK(to_letters(inverse(w)) == "aBA");
    CHECK(to_letters(Word{}) == "1");
    CHECK(from_letters("1").empty());
    CHECK_THROWS_AS(from_letters("a1"), std::invalid_argument);
    CHECK_THROWS_AS(from_letters(""), std::invalid_argument);
    CHECK(reduce(from_letters("abBAc")) == from_letters("c"));
    CHECK(concat(from_letters("ab"), from_letters("Ba")) == from_letters("aa"));
    CHECK(power(from_letters("ab"), 3) == from_letters("ababab"));
    CHECK(power(from_letters("ab"), -2) == from_letters("BABA"));
    CHECK(power(from_letters("ab"), 0).empty());
}

TEST_CASE("cyclic classes") {
    const auto c1 = cyclic_classes(2, 1);
    CHECK(c1.size() == 2);
    const auto c2 = cyclic_classes(2, 2);
    // a, b, aa, ab, aB, bb
    CHECK(c2.size() == 6);
    std::mt19937_64 rng(11);
    const SL2Rep rep = random_rep(rng, 2);
    const auto c4 = cyclic_classes(2, 4);
    for (std::size_t i = 0; i < c4.size(); ++i) {
        const Word& w = c4[i];
        CHECK(reduce(w) == w);
        CHECK(w.letters.front() != -w.letters.back());
        // traces agree up to sign on rotations and inverses, so classes are distinct
        for (std::size_t j = 0; j < i; ++j) {
            Word r = c4[j];
            bool same = false;
            for (const Word& base : {r, inverse(r)})
                for (std::size_t s = 0; s < base.size(); ++s) {
                    Word rot;
                    rot.letters.assign(base.letters.begin() + static_cast<long>(s), base.letters.end());
                    rot.letters.insert(rot.letters.end(), base.letters.begin(), base.letters.begin() + static_cast<long>(s));
                    if (rot == w) same = true;
                }
            CHECK_FALSE(same);
        }
    }
    // brute-force count of cyclically reduced words of length 3 is 24; classes under
    // rotation and inversion: aaa, bbb, aab, aaB, abb, aBB  (6)
    CHECK(cyclic_classes(2, 3).size() - c2.size() == 6);
    (void)rep;
}

TEST_CASE("classification") {
    CHECK(classify(with_trace(3.0).matrix()) == SL2Class::Loxodromic);
    CHECK(classify(with_trace(2.0 * std::cos(1.0)).matrix()) == SL2Class::Elliptic);
    CHECK(classify(SL2::diag(std::polar(1.01, 0.7)).matrix()) == SL2Class::Loxodromic);
    CHECK(classify(SL2::diag(std::polar(1.01, std::numbers::pi)).matrix()) == SL2Class::Loxodromic);
    CHECK(classify(Mat2::Identity()) == SL2Class::Identity);
    CHECK(classify(-Mat2::Identity()) == SL2Class::Identity);
    CHECK(classify(SL2(1.0, 1.0, 0.0, 1.0).matrix()) == SL2Class::Parabolic);
    CHECK(classify(SL2(-1.0, 3.0, 0.0, -1.0).matrix()) == SL2Class::Parabolic);
    CHECK(classify(with_trace(cplx(1.0, 0.1)).matrix()) == SL2Class::Loxodromic);
    CHECK(std::string(class_name(SL2Class::Elliptic)) == "elliptic");
}

TEST_CASE("translation length") {
    CHECK(length(SL2::diag(2.0).matrix()) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(length(SL2::diag(-0.5).matrix()) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    try {
        (void)length(with_trace(1.0).matrix());
        FAIL("expected NotLoxodromic");
    } catch (const NotLoxodromic& e) {
        CHECK(e.classification() == SL2Class::Elliptic);
    }
    CHECK_THROWS_AS((void)length(SL2(1.0, 1.0, 0.0, 1.0).matrix()), NotLoxodromic);

    std::mt19937_64 rng(21);
    for (int n = 0; n < 500; ++n) {
        const SL2 a = random_loxodromic(rng, 0.05, 4.0);
        const double l = length(a.matrix());
        CHECK(length((a * a).matrix()) == doctest::Approx(2.0 * l).epsilon(1e-10));
        const SL2 c = random_sl2(rng);
        CHECK(length((c * a * c.inverse()).matrix()) == doctest::Approx(l).epsilon(1e-9));
        // eigenvalue oracle from Eigen
        Eigen::ComplexEigenSolver<Mat2> es(a.matrix());
        const double big = std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(1)));
        CHECK(l == doctest::Approx(2.0 * std::log(big)).epsilon(1e-9));
    }
}

TEST_CASE("trace-length gauge") {
    const SL2 a = with_trace(2.5);
    CHECK(length_gauge(a.matrix()) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(length(a.matrix()) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(length_gauge(Mat2::Identity()) == 4.0);

    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const Mat2 m = random_loxodromic(rng, 0.01, 6.0).matrix();
        const double l = length(m);
        const double rhs = 2.0 * (std::exp(l / 2.0) + std::exp(-l / 2.0));
        worst = std::max(worst, std::abs(length_gauge(m) - rhs) / rhs);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("trace identities") {
    std::mt19937_64 rng(8);
    for (int n = 0; n < 1000; ++n) {
        const SL2Rep rep = random_rep(rng, 2);
        CHECK(trace_word(rep, Word{}) == cplx(2.0));
        const cplx x = trace_word(rep, X), y = trace_word(rep, Y);
        const cplx lhs = trace_word(rep, from_letters("ab")) + trace_word(rep, from_letters("aB"));
        CHECK(rel(lhs, x * y) <= 1e-12 * std::max(1.0, std::abs(x * y)));
        CHECK(rel(trace_word(rep, from_letters("aa")), x * x - 2.0) <= 1e-12 * std::max(1.0, std::abs(x * x)));
    }
    const SL2Rep rep({SL2::diag(2.0)});
    CHECK_THROWS_AS(trace_word(rep, Y), std::invalid_argument);
}

TEST_CASE("Vogt quadratic") {
    const VogtResult id = vogt(2.0, 2.0, 2.0, 2.0, 2.0, 2.0);
    CHECK(id.P == cplx(4.0));
    CHECK(id.Q == cplx(4.0));
    CHECK(id.Delta == cplx(0.0));
    CHECK(std::abs(id.roots[0] - 2.0) < 1e-15);
    CHECK(std::abs(id.roots[1] - 2.0) < 1e-15);

    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const SL2Rep rep = random_rep(rng, 3);
        const VogtResult v = vogt(trace_word(rep, X), trace_word(rep, Y), trace_word(rep, Z),
                                  trace_word(rep, from_letters("ab")), trace_word(rep, from_letters("ac")),
                                  trace_word(rep, from_letters("bc")));
        CHECK(v.Delta == v.P * v.P - 4.0 * v.Q);
        const double scale = std::max({1.0, std::abs(v.P) * std::abs(v.P), std::abs(v.Q)});
        for (const char* w : {"abc", "bac"}) {
            const cplx z = trace_word(rep, from_letters(w));
            worst = std::max(worst, std::abs(z * z - v.P * z + v.Q) / std::max(scale, std::norm(z)));
        }
        CHECK(std::abs(v.roots[0] + v.roots[1] - v.P) <= 1e-12 * std::max(1.0, std::abs(v.P)));
        CHECK(std::abs(v.roots[0] * v.roots[1] - v.Q) <= 1e-12 * std::max(1.0, std::abs(v.Q)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("rank report") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = 1e-3;
    m(2, 2) = 1e-12;
    const RankReport r = rank_report(m);
    CHECK(r.rank == 2);
    CHECK(r.tolerance == doctest::Approx(2e-8));
    CHECK(r.singular_values.size() == 3);
    CHECK(rank_report(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 2))).rank == 0);
}

TEST_CASE("trace Jacobian gradient check") {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 20; ++n) {
        const SL2Rep rep = random_rep(rng, 3);
        std::vector<Word> words = seven_words();
        for (const char* w : {"aBc", "ABc", "aabC", "CbA"}) words.push_back(from_letters(w));
        const auto an = trace_jacobian(rep, words, Derivative::Analytic, Exec::Serial);
        const auto fd = trace_jacobian(rep, words, Derivative::FiniteDifference, Exec::Serial);
        for (Eigen::Index i = 0; i < an.matrix.rows(); ++i)
            for (Eigen::Index j = 0; j < an.matrix.cols(); ++j)
                CHECK(std::abs(an.matrix(i, j) - fd.matrix(i, j)) <= 1e-7 * std::max(1.0, std::abs(an.matrix(i, j))));
    }
}

TEST_CASE("trace Jacobian kernel dimensions") {
    std::mt19937_64 rng(19);
    for (int n = 0; n < 20; ++n) {
        const auto j = trace_jacobian(random_rep(rng, 3), seven_words());
        CHECK(j.kernel_dim() == 3);
    }
    const SL2Rep ident({SL2(), SL2(), SL2()});
    CHECK(trace_jacobian(ident, seven_words()).rank.rank == 0);

    // The two diagonal generators commute, so the six pair traces lose one
    // more direction than at a generic triple.
    const SL2Rep cfg = commuting_configuration();
    std::vector<Word> six = seven_words();
    six.pop_back();
    CHECK(trace_jacobian(cfg, six).kernel_dim() == 4);
}

TEST_CASE("seventh trace differential follows the first six") {
    std::mt19937_64 rng(23);
    for (int n = 0; n < 20; ++n) {
        const SL2Rep rep = random_rep(rng, 3);
        const auto words = seven_words();
        const auto j = trace_jacobian(rep, words).matrix;
        const Eigen::MatrixXcd six = j.topRows(6);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(six, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double tol = 1e-8 * sv(0);
        for (Eigen::Index c = 0; c < six.cols(); ++c) {
            if (c < sv.size() && sv(c) > tol) continue;
            const Eigen::VectorXcd v = svd.matrixV().col(c);
            CHECK(std::abs(j.row(6).dot(v.conjugate())) <= 1e-7 * j.row(6).norm());
            CHECK((j.row(6) * v).norm() <= 1e-7 * j.row(6).norm());
        }
    }
}

TEST_CASE("length Jacobian") {
    std::mt19937_64 rng(29);
    for (int n = 0; n < 20; ++n) {
        const SL2Rep rep = random_rep(rng, 2);
        const auto an = length_jacobian(rep, default_length_words(), Derivative::Analytic, Exec::Serial);
        const auto fd = length_jacobian(rep, default_length_words(), Derivative::FiniteDifference, Exec::Serial);
        CHECK(an.rank.rank == 6);
        CHECK(fd.rank.rank == 6);
        CHECK((an.matrix - fd.matrix).cwiseAbs().maxCoeff() <= 1e-7 * std::max(1.0, an.matrix.cwiseAbs().maxCoeff()));
        for (const auto& eta : sl2_basis()) {
            for (cplx s : {cplx(1.0), cplx(0.0, 1.0)}) {
                const Eigen::VectorXd v = conjugation_direction(rep, s * eta);
                CHECK((an.matrix * v).norm() <= 1e-10 * an.matrix.norm() * v.norm());
            }
        }
    }
    const SL2Rep shared({SL2::diag(cplx(1.5, 0.5)), SL2::diag(cplx(-0.3, 2.2))});
    CHECK(length_jacobian(shared, default_length_words()).rank.rank <= 2);

    const SL2Rep bad({SL2::diag(2.0), SL2(1.0, 1.0, 0.0, 1.0)});
    try {
        (void)length_jacobian(bad, default_length_words());
        FAIL("expected NotLoxodromic");
    } catch (const NotLoxodromic& e) {
        CHECK(std::string(e.what()).find("word b") != std::string::npos);
    }
}

TEST_CASE("sphere fixed points and cross-ratio") {
    const FixedPair fp = fixed_points(SL2::diag(2.0).matrix());
    CHECK(fp.attracting.is_infinity());
    CHECK(std::abs(fp.repelling.value()) < 1e-15);

    std::mt19937_64 rng(31);
    for (int n = 0; n < 200; ++n) {
        const Mat2 a = random_loxodromic(rng).matrix();
        const FixedPair f = fixed_points(a);
        CHECK(sphere_distance(mobius(a, f.attracting), f.attracting) < 1e-12);
        CHECK(sphere_distance(mobius(a, f.repelling), f.repelling) < 1e-12);
        // forward orbits approach the attracting point
        SpherePoint p = SpherePoint::finite(cplx(0.3, -0.8));
        Mat2 big = a;
        for (int k = 0; k < 6; ++k) big = big * big;
        p = mobius(big, p);
        CHECK(sphere_distance(p, f.attracting) < 1e-6);
    }

    const SpherePoint x1 = SpherePoint::finite(0.0), x2 = SpherePoint::finite(1.0), x3 = SpherePoint::finite(cplx(2.0, 1.0));
    const SpherePoint x4 = SpherePoint::finite(cplx(-1.0, 3.0));
    const auto plane = [](cplx a, cplx b, cplx c, cplx d) { return std::norm(c - a) * std::norm(d - b) / (std::norm(d - a) * std::norm(c - b)); };
    CHECK(sphere_crossratio(x1, x2, x3, x4) == doctest::Approx(plane(0.0, 1.0, cplx(2.0, 1.0), cplx(-1.0, 3.0))).epsilon(1e-13));
    // infinity drops its factors
    CHECK(sphere_crossratio(x1, x2, x3, SpherePoint::infinity()) ==
          doctest::Approx(std::norm(cplx(2.0, 1.0)) / std::norm(cplx(1.0, 1.0))).epsilon(1e-13));
    CHECK(std::isinf(sphere_crossratio(x1, x2, x3, x1)));
    CHECK_THROWS_AS(sphere_crossratio(x1, x1, x1, x1), std::domain_error);
    // Mobius invariance
    for (int n = 0; n < 100; ++n) {
        const Mat2 g = random_sl2(rng).matrix();
        CHECK(sphere_crossratio(mobius(g, x1), mobius(g, x2), mobius(g, x3), mobius(g, x4)) ==
              doctest::Approx(sphere_crossratio(x1, x2, x3, x4)).epsilon(1e-9));
    }
}

TEST_CASE("nonelementary detection") {
    std::mt19937_64 rng(37);
    for (int n = 0; n < 50; ++n) CHECK(is_nonelementary(random_rep(rng, 2)));
    CHECK_FALSE(is_nonelementary(SL2Rep({SL2::diag(2.0), SL2::diag(cplx(0.0, 3.0))})));
    CHECK_FALSE(is_nonelementary(SL2Rep({SL2::diag(2.0)})));
    // shared repelling point at 0 only
    CHECK_FALSE(is_nonelementary(SL2Rep({SL2::diag(2.0), SL2(2.0, 0.0, 1.0, 0.5)})));
}

TEST_CASE("coordinate words") {
    std::mt19937_64 rng(41);
    const SL2Rep elementary({SL2::diag(2.0), SL2::diag(3.0)});
    CHECK_THROWS_AS(coordinate_words(elementary, {X, Y}), ElementaryRepresentation);

    for (int n = 0; n < 10; ++n) {
        SL2Rep rep = random_rep(rng, 2);
        const auto out = coordinate_words(rep, {X, Y, from_letters("ab")});
        CHECK(std::find(out.begin(), out.end(), X) != out.end());
        CHECK(std::find(out.begin(), out.end(), Y) != out.end());
        for (const auto& w : out) CHECK(classify(evaluate(rep, w)) == SL2Class::Loxodromic);
        CHECK(length_jacobian(rep, out).rank.rank == 6);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                CHECK_FALSE(commute(evaluate(rep, out[static_cast<std::size_t>(i)]), evaluate(rep, out[static_cast<std::size_t>(j)])));
    }

    // b is parabolic
    const SL2Rep para({random_loxodromic(rng), SL2(1.0, 1.0, 0.0, 1.0)});
    REQUIRE(is_nonelementary(para));
    const auto out = coordinate_words(para, {X, Y, from_letters("aB")});
    for (const auto& w : out) CHECK(classify(evaluate(para, w)) == SL2Class::Loxodromic);
    CHECK(std::find(out.begin(), out.end(), Y) == out.end());

    // a and aa commute: the triple becomes a.aa, a.b, b
    const SL2Rep gen = random_rep(rng, 2);
    const auto rec = coordinate_words(gen, {X, from_letters("aa"), Y});
    CHECK(rec[0] == from_letters("aaa"));
    CHECK(rec[1] == from_letters("ab"));
    CHECK(rec[2] == Y);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK_FALSE(commute(evaluate(gen, rec[static_cast<std::size_t>(i)]), evaluate(gen, rec[static_cast<std::size_t>(j)])));
}
