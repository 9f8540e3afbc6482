#pragma once

#include <random>
#include <vector>

#include "rank1kit/algebra.hpp"

namespace rank1kit {

/// H^m_F: the algebra and the rank m. Kind O only admits m = 2.
struct SpaceConfig {
    Kind kind = Kind::R;
    int m = 2;

    SpaceConfig() = default;
    SpaceConfig(Kind k, int rank);

    int horizontal_dim() const noexcept { return m - 1; }
    /// Real dimension of the boundary sphere, dim_R(F)·m − 1.
    int boundary_dim() const noexcept { return static_cast<int>(dim(kind)) * m - 1; }

    friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

class ConfigMismatch : public std::invalid_argument {
public:
    ConfigMismatch() : std::invalid_argument("space configuration mismatch") {}
};

class InfinityOperand : public std::invalid_argument {
public:
    explicit InfinityOperand(const char* op)
        : std::invalid_argument(std::string(op) + ": point at infinity is not allowed here") {}
};

/// Boundary point [(t,q),k] of H^m_F in nilpotent-group coordinates. The
/// (t,q) part is stored as one purely imaginary element `center`; for kind O
/// coefficients 1..3 are t and 4..7 are q.
class NilPoint {
public:
    NilPoint() = default;
    NilPoint(SpaceConfig config, Element center, std::vector<Element> horizontal);

    static NilPoint identity(SpaceConfig config);
    static NilPoint infinity(SpaceConfig config);

    const SpaceConfig& config() const noexcept { return config_; }
    const Element& center() const noexcept { return center_; }
    const std::vector<Element>& horizontal() const noexcept { return horizontal_; }
    bool is_infinity() const noexcept { return infinity_; }

    /// |k|^2 summed over horizontal coordinates.
    double horizontal_norm2() const noexcept;

private:
    SpaceConfig config_;
    Element center_;
    std::vector<Element> horizontal_;
    bool infinity_ = false;
};

/// Hermitian product sum_i k_i conj(k'_i).
Element hermitian(const std::vector<Element>& k, const std::vector<Element>& kp);

NilPoint nmul(const NilPoint& g, const NilPoint& h);
NilPoint ninv(const NilPoint& g);
/// A(g) = (|k|^2 + t, q).
Element gauge(const NilPoint& g);
double qnorm(const NilPoint& g);
/// d(g,h) = |h^{-1} g|.
double dist(const NilPoint& g, const NilPoint& h);

/// |A(g3^-1 g1)||A(g4^-1 g2)| / (|A(g4^-1 g1)||A(g3^-1 g2)|). Factors involving
/// the point at infinity are dropped. Returns +inf for a vanishing denominator,
/// throws std::domain_error when numerator and denominator both vanish.
double crossratio_nil(const NilPoint& g1, const NilPoint& g2, const NilPoint& g3,
                      const NilPoint& g4);

bool approx_equal(const NilPoint& a, const NilPoint& b, double tol = 1e-12);

NilPoint random_nilpoint(SpaceConfig config, std::mt19937_64& rng, double scale = 1.0);

}  // namespace rank1kit
