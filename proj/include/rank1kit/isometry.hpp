#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "rank1kit/ballmodel.hpp"

namespace rank1kit {

/// Dense matrix with entries in one of the algebras. Rows act on the right of
/// row vectors, matching the convention that GL(n+1,F) acts on F^{n+1} from
/// the right.
class FMatrix {
public:
    FMatrix() = default;
    FMatrix(Kind kind, int rows, int cols);

    static FMatrix identity(Kind kind, int n);
    /// diag(1, ..., 1, -1), the form of signature (n, 1).
    static FMatrix lorentz_form(Kind kind, int n);

    Kind kind() const noexcept { return kind_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    const Element& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
    Element& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

    double max_abs() const noexcept;

private:
    Kind kind_ = Kind::R;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Element> a_;
};

FMatrix matmul(const FMatrix& a, const FMatrix& b);
/// Conjugate transpose.
FMatrix adjoint(const FMatrix& a);
FMatrix operator-(const FMatrix& a, const FMatrix& b);
/// row vector times matrix
std::vector<Element> vecmat(const std::vector<Element>& v, const FMatrix& a);

/// Complex image of a matrix over R, C or H. Quaternion entries z + w j map to
/// the 2x2 block [[z, w], [-conj w, conj z]], which is multiplicative.
Eigen::MatrixXcd complex_image(const FMatrix& a);

/// Hyperbolic isometry in normal form
///   [ M  0          0         ]
///   [ 0  nu cosh s  nu sinh s ]
///   [ 0  nu sinh s  nu cosh s ]
/// fixing the axis through (0,-1) and (0,1). For kind O, M is a 1x1 unit.
struct NormalIsometry {
    SpaceConfig config;
    FMatrix M;
    Element nu;
    double s = 0.0;

    NormalIsometry() = default;
    NormalIsometry(SpaceConfig cfg, FMatrix rotation, Element unit, double translation);

    /// (I, 1, s): pure translation along the axis.
    static NormalIsometry dilation(SpaceConfig cfg, double s);
};

/// Element of O_F(m,1), F in {R, C, H}: G J G* = J.
class GroupMatrix {
public:
    GroupMatrix() = default;
    GroupMatrix(SpaceConfig config, FMatrix entries, double tol = 1e-10);

    const SpaceConfig& config() const noexcept { return config_; }
    const FMatrix& entries() const noexcept { return entries_; }

private:
    SpaceConfig config_;
    FMatrix entries_;
};

/// Boundary action in nilpotent coordinates. Infinity is fixed.
NilPoint act_nil(const NormalIsometry& iso, const NilPoint& g);
/// w1' = (w2 nu sinh s + nu cosh s)^{-1}(w1 M), w2' = (...)^{-1}(w2 nu cosh s + nu sinh s).
BallPoint act_ball(const NormalIsometry& iso, const BallPoint& x);

GroupMatrix embed_normal(const NormalIsometry& iso);
/// (x,1) A rescaled by the inverse of its last coordinate.
BallPoint act_interior(const GroupMatrix& a, const BallPoint& x);
GroupMatrix compose(const GroupMatrix& a, const GroupMatrix& b);
/// J A* J
GroupMatrix inverse(const GroupMatrix& a);
GroupMatrix power(const GroupMatrix& a, int n);

enum class Motion { Elliptic, Parabolic, Hyperbolic };
const char* motion_name(Motion m) noexcept;

class NotHyperbolic : public std::domain_error {
public:
    explicit NotHyperbolic(Motion m);
    Motion motion() const noexcept { return motion_; }

private:
    Motion motion_;
};

double spectral_radius(const GroupMatrix& a);
/// Hyperbolic iff the spectral radius exceeds 1 + 1e-9; otherwise parabolic when
/// powers grow without bound and elliptic when they stay bounded.
Motion classify(const GroupMatrix& a);

double translation_length(const NormalIsometry& iso);
/// log of the spectral radius for R and C, stable length for H.
double translation_length(const GroupMatrix& a);
double spectral_length(const GroupMatrix& a);
/// lim d(o, A^n o)/n via doubling n = 8..1024 with differenced estimates
/// (d_{2n} - d_n)/n and Aitken extrapolation of the tail.
double stable_length(const GroupMatrix& a);

struct BallFixedPair {
    BallPoint repelling;
    BallPoint attracting;
};
BallFixedPair fixed_points(const GroupMatrix& a);

GroupMatrix random_form_preserving(SpaceConfig config, std::mt19937_64& rng);
/// Random element of O_F(m-1) (unit scalar for O).
FMatrix random_rotation(SpaceConfig config, std::mt19937_64& rng);
NormalIsometry random_normal(SpaceConfig config, std::mt19937_64& rng, double s);
/// C N C^{-1}
GroupMatrix conjugate(const GroupMatrix& c, const GroupMatrix& n);

struct RotationResiduals {
    double corrected = 0.0;  ///< [v^-1((r1-Q)^-1(r3-Q))][((r3-Q)^-1(r2+Q))v] vs RHS
    double literal = 0.0;    ///< [v^-1((r1+Q)^-1(r3-Q))][((r3+Q)(r2+Q))v] vs RHS
    double chain = 0.0;      ///< RHS vs w2 of act_ball(stereo(g)) for a matching g
};

/// With r1 = e^{2s}+|k|^2, r2 = e^{2s}-|k|^2, r3 = 1+|k|^2, compares both
/// readings of the identity against [(v^-1 (r1-Q)^-1) v][v^-1 (r2+Q) v].
RotationResiduals rotation_residuals(double s, const Element& Q, const Element& nu, double knorm);
/// Residual of the corrected reading.
double rotation_identity_residual(double s, const Element& Q, const Element& nu, double knorm);

}  // namespace rank1kit
