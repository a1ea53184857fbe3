#include "mproot/divdiff.hpp"

#include <utility>

#include "mproot/errors.hpp"

namespace mproot {

BigReal guard_tolerance(Precision precision) { return pow10(-(precision.digits() - 10), precision); }

bool separated(const BigReal& a, const BigReal& b) {
  const Precision p = std::max(a.precision(), b.precision());
  const BigReal scale = max(BigReal(1, p), max(abs(a), abs(b)));
  return abs(a - b) > guard_tolerance(p) * scale;
}

namespace {

void require_separated(const BigReal& a, const BigReal& b, const char* what) {
  if (!separated(a, b)) throw DegenerateNodes(std::string("nodes ") + what + " coincide within the guard");
}

}  // namespace

NodeTriple::NodeTriple(BigReal x, BigReal y, BigReal z, BigReal fx, BigReal fy, BigReal fz, BigReal fprime_x)
    : x_(std::move(x)),
      y_(std::move(y)),
      z_(std::move(z)),
      fx_(std::move(fx)),
      fy_(std::move(fy)),
      fz_(std::move(fz)),
      fpx_(std::move(fprime_x)) {
  require_separated(x_, y_, "x,y");
  require_separated(x_, z_, "x,z");
  require_separated(y_, z_, "y,z");
}

BigReal dd1(const BigReal& a, const BigReal& fa, const BigReal& b, const BigReal& fb) {
  require_separated(a, b, "a,b");
  return (fa - fb) / (a - b);
}

BigReal dd2_confluent(const BigReal& y, const BigReal& x, const BigReal& fy, const BigReal& fx,
                      const BigReal& fprime_x) {
  return (dd1(y, fy, x, fx) - fprime_x) / (y - x);
}

BigReal dd2_distinct(const BigReal& a, const BigReal& b, const BigReal& c, const BigReal& fa,
                     const BigReal& fb, const BigReal& fc) {
  require_separated(a, c, "a,c");
  return (dd1(b, fb, c, fc) - dd1(a, fa, b, fb)) / (c - a);
}

HermiteBasis hermite_basis(const NodeTriple& n, const BigReal& t) {
  const BigReal& x = n.x();
  const BigReal& y = n.y();
  const BigReal& z = n.z();
  const BigReal dxy = x - y;
  const BigReal dxz = x - z;
  const BigReal tx = t - x;
  const BigReal ty = t - y;
  const BigReal tz = t - z;
  const BigReal lagrange_x = ty * tz / (dxy * dxz);
  const BigReal k = (2 * x - y - z) / (dxy * dxz);
  return HermiteBasis{
      lagrange_x * (1 - tx * k),
      tx * tx * tz / ((y - x) * (y - x) * (y - z)),
      tx * tx * ty / ((z - x) * (z - x) * (z - y)),
      tx * ty * tz / (dxy * dxz),
  };
}

BigReal hermite_eval(const NodeTriple& n, const BigReal& t) {
  const HermiteBasis w = hermite_basis(n, t);
  return w.w0 * n.fx() + w.w1 * n.fy() + w.w2 * n.fz() + w.wbar0 * n.fprime_x();
}

BigReal hermite_slope(const NodeTriple& n, const BigReal& t) {
  const BigReal& x = n.x();
  const BigReal& y = n.y();
  const BigReal& z = n.z();
  const BigReal dxy = x - y;
  const BigReal dxz = x - z;
  const BigReal tx = t - x;
  const BigReal ty = t - y;
  const BigReal tz = t - z;
  const BigReal k = (2 * x - y - z) / (dxy * dxz);
  const BigReal lagrange = ty * tz / (dxy * dxz);
  const BigReal lagrange_slope = (ty + tz) / (dxy * dxz);
  const BigReal w0 = lagrange_slope * (1 - tx * k) - lagrange * k;
  const BigReal w1 = (2 * tx * tz + tx * tx) / ((y - x) * (y - x) * (y - z));
  const BigReal w2 = (2 * tx * ty + tx * tx) / ((z - x) * (z - x) * (z - y));
  const BigReal wbar0 = (ty * tz + tx * tz + tx * ty) / (dxy * dxz);
  return w0 * n.fx() + w1 * n.fy() + w2 * n.fz() + wbar0 * n.fprime_x();
}

BigReal hermite_deriv_at_z(const NodeTriple& n) {
  const BigReal fxz = dd1(n.x(), n.fx(), n.z(), n.fz());
  const BigReal fyz = dd1(n.y(), n.fy(), n.z(), n.fz());
  const BigReal fxy = dd1(n.x(), n.fx(), n.y(), n.fy());
  const BigReal fyxx = dd2_confluent(n.y(), n.x(), n.fy(), n.fx(), n.fprime_x());
  return 2 * fxz + fyz - fxy + (n.x() - n.z()) * fyxx - n.fprime_x();
}

BigReal hermite_deriv_at_z_alt(const NodeTriple& n) {
  const BigReal fxz = dd1(n.x(), n.fx(), n.z(), n.fz());
  const BigReal fyz = dd1(n.y(), n.fy(), n.z(), n.fz());
  const BigReal fxy = dd1(n.x(), n.fx(), n.y(), n.fy());
  const BigReal fyxx = dd2_confluent(n.y(), n.x(), n.fy(), n.fx(), n.fprime_x());
  return 2 * fxz + fyz - 2 * fxy + (n.y() - n.z()) * fyxx;
}

BigReal hermite_deriv_at_z_expanded(const NodeTriple& n) {
  const BigReal& x = n.x();
  const BigReal& y = n.y();
  const BigReal& z = n.z();
  const BigReal& fx = n.fx();
  const BigReal& fy = n.fy();
  const BigReal& fz = n.fz();
  const BigReal& d = n.fprime_x();
  const BigReal ratio = (x - z) / (y - x);
  return 2 * (fx - fz) / (x - z) + (fy - fz) / (y - z) - (fx - fy) / (x - y) +
         ratio * ((fy - fx) / (y - x)) - ratio * d - d;
}

}  // namespace mproot
