#pragma once

// Divided differences and the cubic Hermite interpolant through
// (x, f(x)), (x, f'(x)), (y, f(y)), (z, f(z)).

#include "mproot/mpreal.hpp"

namespace mproot {

/// 10^-(digits-10), the relative scale below which two nodes (or a
/// denominator) are treated as zero.
BigReal guard_tolerance(Precision precision);

/// |a-b| > guard_tolerance * max(1, |a|, |b|) at the wider precision.
bool separated(const BigReal& a, const BigReal& b);

/// Interpolation data. Construction throws DegenerateNodes unless x, y, z
/// are pairwise separated.
class NodeTriple {
 public:
  NodeTriple(BigReal x, BigReal y, BigReal z, BigReal fx, BigReal fy, BigReal fz, BigReal fprime_x);

  const BigReal& x() const noexcept { return x_; }
  const BigReal& y() const noexcept { return y_; }
  const BigReal& z() const noexcept { return z_; }
  const BigReal& fx() const noexcept { return fx_; }
  const BigReal& fy() const noexcept { return fy_; }
  const BigReal& fz() const noexcept { return fz_; }
  const BigReal& fprime_x() const noexcept { return fpx_; }

 private:
  BigReal x_, y_, z_, fx_, fy_, fz_, fpx_;
};

/// f[a,b] = (fa - fb)/(a - b).
BigReal dd1(const BigReal& a, const BigReal& fa, const BigReal& b, const BigReal& fb);

/// f[y,x,x] = (f[y,x] - f'(x))/(y - x).
BigReal dd2_confluent(const BigReal& y, const BigReal& x, const BigReal& fy, const BigReal& fx,
                      const BigReal& fprime_x);

/// f[a,b,c] = (f[b,c] - f[a,b])/(c - a).
BigReal dd2_distinct(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& fa,
                     const BigReal& fb, const BigReal& fc);

struct HermiteBasis {
  BigReal w0;     // 1 at x, 0 at y and z, zero slope at x
  BigReal w1;     // 1 at y
  BigReal w2;     // 1 at z
  BigReal wbar0;  // 0 at all nodes, unit slope at x
};

HermiteBasis hermite_basis(const NodeTriple& nodes, const BigReal& t);

/// H(t) = w0 f(x) + w1 f(y) + w2 f(z) + wbar0 f'(x).
BigReal hermite_eval(const NodeTriple& nodes, const BigReal& t);

/// H'(t) from the differentiated basis.
BigReal hermite_slope(const NodeTriple& nodes, const BigReal& t);

/// H'(z) = 2f[x,z] + f[y,z] - f[x,y] + (x-z) f[y,x,x] - f'(x).
BigReal hermite_deriv_at_z(const NodeTriple& nodes);

/// H'(z) = 2f[x,z] + f[y,z] - 2f[x,y] + (y-z) f[y,x,x]. Same polynomial,
/// regrouped through the definition of f[y,x,x].
BigReal hermite_deriv_at_z_alt(const NodeTriple& nodes);

/// H'(z) with every divided difference written out, f[y,x,x] split into
/// its f[y,x] and f'(x) parts.
BigReal hermite_deriv_at_z_expanded(const NodeTriple& nodes);

}  // namespace mproot
