#pragma once

#include <array>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rank1kit/parallel.hpp"

namespace rank1kit {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// 2x2 complex matrix of unit determinant.
class SL2 {
public:
    SL2() : m_(Mat2::Identity()) {}
    /// Throws std::invalid_argument when |det - 1| > 1e-12 max(1, |ad|, |bc|).
    explicit SL2(const Mat2& m);
    SL2(cplx a, cplx b, cplx c, cplx d);

    static SL2 diag(cplx lambda);

    const Mat2& matrix() const noexcept { return m_; }
    cplx trace() const { return m_.trace(); }
    SL2 inverse() const;

    friend SL2 operator*(const SL2& x, const SL2& y);

private:
    struct Unchecked {};
    SL2(const Mat2& m, Unchecked) : m_(m) {}
    Mat2 m_;
};

/// Inverse of a unit-determinant matrix by the adjugate.
Mat2 sl2_inverse(const Mat2& m);
/// exp of a traceless matrix: cosh(mu) I + sinh(mu)/mu A with mu^2 = -det A.
Mat2 sl2_exp(const Mat2& a);

/// Word in the generators as signed 1-based indices: [1, -2, 1] is a b^-1 a.
struct Word {
    std::vector<int> letters;

    bool empty() const noexcept { return letters.empty(); }
    std::size_t size() const noexcept { return letters.size(); }
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;
};

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// w^n for any integer n.
Word power(const Word& w, int n);
/// Free reduction (cancels adjacent x x^-1).
Word reduce(const Word& w);
/// Letters a, b, c, ... for generators and A, B, C, ... for inverses; "1" is
/// the empty word.
std::string to_letters(const Word& w);
Word from_letters(const std::string& s);

/// Cyclically reduced words of length 1..max_len, one per class under cyclic
/// rotation and inversion (translation length is constant on each class).
std::vector<Word> cyclic_classes(int arity, int max_len);
/// Representative of w's class under cyclic reduction, rotation and inversion;
/// the representative chosen by cyclic_classes.
Word cyclic_canonical(const Word& w);

struct SL2Rep {
    std::vector<SL2> generators;

    SL2Rep() = default;
    explicit SL2Rep(std::vector<SL2> gens) : generators(std::move(gens)) {}
    int arity() const noexcept { return static_cast<int>(generators.size()); }
};

/// Throws std::invalid_argument when a letter is 0 or exceeds the arity.
void validate(const Word& w, int arity);
Mat2 evaluate(const SL2Rep& rep, const Word& w);
SL2Rep complex_conjugate(const SL2Rep& rep);
/// C X C^-1 applied to every generator.
SL2Rep conjugate(const SL2Rep& rep, const SL2& c);

enum class SL2Class { Identity, Parabolic, Elliptic, Loxodromic };
const char* class_name(SL2Class c) noexcept;

/// Loxodromic iff tr lies off [-2, 2] by more than 1e-9; tr = +-2 within
/// 1e-9 is parabolic unless the matrix is +-I.
SL2Class classify(const Mat2& a);

class NotLoxodromic : public std::domain_error {
public:
    NotLoxodromic(SL2Class c, const std::string& what);
    SL2Class classification() const noexcept { return class_; }

private:
    SL2Class class_;
};

/// Eigenvalue of larger modulus, computed as (tr + sqrt(tr-2) sqrt(tr+2))/2.
cplx dominant_eigenvalue(cplx trace);
/// 2 log|lambda| for loxodromic A.
double length(const Mat2& a);
double length_of_trace(cplx trace);
/// |tr - 2| + |tr + 2|, equal to 2(e^{l/2} + e^{-l/2}).
double length_gauge(const Mat2& a);

cplx trace_word(const SL2Rep& rep, const Word& w);

struct VogtResult {
    cplx P, Q, Delta;
    std::array<cplx, 2> roots;
};
/// With x_i = tr X_i and y_ij = tr X_i X_j:
///   P = x1 y23 + x2 y13 + x3 y12 - x1 x2 x3
///   Q = sum x_i^2 + sum y_ij^2 + y12 y13 y23 - x1 x2 y12 - x1 x3 y13 - x2 x3 y23 - 4
/// tr X1X2X3 and tr X2X1X3 are the roots of z^2 - P z + Q, Delta = P^2 - 4Q.
VogtResult vogt(cplx x1, cplx x2, cplx x3, cplx y12, cplx y13, cplx y23);

struct RankReport {
    std::vector<double> singular_values;
    int rank = 0;
    double tolerance = 0.0;
};
/// Rank counts singular values above rel_tol * sigma_max.
RankReport rank_report(const Eigen::MatrixXcd& m, double rel_tol = 1e-8);
RankReport rank_report(const Eigen::MatrixXd& m, double rel_tol = 1e-8);

enum class Derivative { Analytic, FiniteDifference };

/// Basis diag(1,-1), E12, E21 of sl2(C).
std::array<Mat2, 3> sl2_basis();

struct TraceJacobian {
    /// rows: words; column 3i + k: generator i moved along X_i exp(t xi_k).
    Eigen::MatrixXcd matrix;
    RankReport rank;
    int kernel_dim() const noexcept { return static_cast<int>(matrix.cols()) - rank.rank; }
};
TraceJacobian trace_jacobian(const SL2Rep& rep, const std::vector<Word>& words,
                             Derivative how = Derivative::Analytic, Exec exec = Exec::Parallel);

struct LengthJacobian {
    /// rows: words; column 6i + k: generator i moved along X_i exp(t xi_k) for
    /// k < 3 and X_i exp(i t xi_{k-3}) for k >= 3.
    Eigen::MatrixXd matrix;
    RankReport rank;
};
/// Throws NotLoxodromic naming the first non-loxodromic word.
LengthJacobian length_jacobian(const SL2Rep& rep, const std::vector<Word>& words,
                               Derivative how = Derivative::Analytic, Exec exec = Exec::Parallel);

/// {X, Y, XY, XY^-1, X^2Y, XY^2}
std::vector<Word> default_length_words();

/// Point of the Riemann sphere in homogeneous coordinates (z : w), unit norm;
/// w = 0 is infinity.
struct SpherePoint {
    cplx z{0.0}, w{1.0};

    static SpherePoint finite(cplx x);
    static SpherePoint infinity();
    bool is_infinity(double tol = 1e-14) const { return std::abs(w) <= tol; }
    cplx value() const { return z / w; }
};
/// |z1 w2 - z2 w1| for unit representatives: half the chordal distance.
double sphere_distance(const SpherePoint& a, const SpherePoint& b);
/// Mobius action of the column convention z -> (az + b)/(cz + d).
SpherePoint mobius(const Mat2& a, const SpherePoint& p);

struct FixedPair {
    SpherePoint repelling;
    SpherePoint attracting;
};
/// Eigenvector lines of a loxodromic, labelled by eigenvalue modulus.
FixedPair fixed_points(const Mat2& a);

/// |x3-x1|^2 |x4-x2|^2 / (|x4-x1|^2 |x3-x2|^2) on the sphere, with factors at
/// infinity handled projectively.
double sphere_crossratio(const SpherePoint& x1, const SpherePoint& x2, const SpherePoint& x3,
                         const SpherePoint& x4);

bool commute(const Mat2& a, const Mat2& b, double tol = 1e-9);

/// Some pair among generators and their pairwise products has four distinct
/// fixed points (sphere distance > 1e-8).
bool is_nonelementary(const SL2Rep& rep);

class ElementaryRepresentation : public std::domain_error {
public:
    ElementaryRepresentation() : std::domain_error("representation is elementary") {}
};

/// Loxodromic word set whose first three words pairwise do not commute,
/// extended while the length Jacobian is below rank 6 arity - 6 and the set
/// has fewer than `budget` words.
std::vector<Word> coordinate_words(const SL2Rep& rep, const std::vector<Word>& seed, int budget = 30);

SL2 random_sl2(std::mt19937_64& rng);
/// C diag(e^{(l + i theta)/2}, ...) C^-1 with l uniform in [lmin, lmax].
SL2 random_loxodromic(std::mt19937_64& rng, double lmin = 0.5, double lmax = 3.0);
/// Independent random SL2 matrices with |tr| bounded away from [-2, 2].
SL2Rep random_rep(std::mt19937_64& rng, int arity);

}  // namespace rank1kit
