#pragma once

#include <vector>

#include "rank1kit/nilboundary.hpp"

namespace rank1kit {

/// Point (w1, w2) of the closed unit ball in F^{m-1} x F.
class BallPoint {
public:
    BallPoint() = default;
    BallPoint(SpaceConfig config, std::vector<Element> w1, Element w2);

    /// The axis endpoints (0, 1) and (0, -1), and the center of the ball.
    static BallPoint north(SpaceConfig config);
    static BallPoint south(SpaceConfig config);
    static BallPoint origin(SpaceConfig config);

    const SpaceConfig& config() const noexcept { return config_; }
    const std::vector<Element>& w1() const noexcept { return w1_; }
    const Element& w2() const noexcept { return w2_; }

    /// |w1|^2 + |w2|^2.
    double norm2() const noexcept;
    bool is_interior() const noexcept { return norm2() < 1.0; }
    bool is_boundary(double tol = kBoundaryTol) const noexcept;

    static constexpr double kBoundaryTol = 1e-10;

private:
    SpaceConfig config_;
    std::vector<Element> w1_;
    Element w2_;
};

/// sum over all coordinates of x_a conj(y_a).
Element inner(const BallPoint& x, const BallPoint& y);

/// Cayley correction Re[(v1 conj v2)(w2 conj w1)] - Re[(conj v2 w2)(conj w1 v1)];
/// identically zero for the associative kinds.
double rform(const BallPoint& v, const BallPoint& w);

/// <<x,y>>: |1 - <x,y>| for R, C, H and (|1 - <x,y>|^2 + 2R<x,y>)^{1/2} for O.
/// Points within the boundary tolerance are projected onto the sphere first.
double chordal(const BallPoint& x, const BallPoint& y);

/// cosh of the hyperbolic distance between interior points.
double coshdist(const BallPoint& x, const BallPoint& y);
double distance(const BallPoint& x, const BallPoint& y);

/// <<z,x>><<w,y>> / (<<w,x>><<z,y>>) with the same 0/0 and +inf conventions as
/// crossratio_nil.
double crossratio_ball(const BallPoint& x, const BallPoint& y, const BallPoint& z, const BallPoint& w);

/// Generalized stereographic projection N ∪ {∞} -> boundary sphere:
/// w1 = 2 (1+|k|^2 - t, -q)^{-1} k, w2 = (1+|k|^2 - t, -q)^{-1} (1-|k|^2 + t, q).
BallPoint stereo(const NilPoint& g);
/// Inverse projection; (0,-1) maps to infinity. Throws for points off the sphere.
NilPoint stereo_inv(const BallPoint& x);

BallPoint project_to_sphere(const BallPoint& x);
double max_coord_diff(const BallPoint& a, const BallPoint& b);

BallPoint random_interior(SpaceConfig config, std::mt19937_64& rng, double radius = 0.9);

}  // namespace rank1kit
