#include "l1adm/prox.hpp"

#include <algorithm>
#include <cmath>

namespace l1adm {

namespace {

Complex shrink_entry(Complex v, double t)
{
  double const mag = std::abs(v);
  if (mag <= t) { return Complex(0.0, 0.0); }
  return v * ((mag - t) / mag);
}

Complex clip_entry(Complex v, double radius)
{
  double const mag = std::abs(v);
  if (mag <= radius) { return v; }
  Complex out = v * (radius / mag);
  // rounding can leave |out| one ulp outside the ball
  while (std::abs(out) > radius) { out *= 1.0 - 0x1.0p-52; }
  return out;
}

void check_radii(const RVector& w, Index n, const char* what)
{
  if (w.size() == 0) { return; }
  if (w.size() != n) { throw DimensionMismatch(std::string(what) + ": radius vector length mismatch"); }
  if (!(w.array() > 0.0).all()) { throw InvalidParameter(std::string(what) + ": radii must be positive"); }
}

}  // namespace

CVector shrink(const CVector& v, double t)
{
  if (!(t >= 0.0)) { throw InvalidParameter("shrink: threshold must be nonnegative"); }
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) { out[i] = shrink_entry(v[i], t); }
  return out;
}

CVector shrink(const CVector& v, const RVector& t)
{
  if (t.size() != v.size()) { throw DimensionMismatch("shrink: threshold vector length mismatch"); }
  if (!(t.array() >= 0.0).all()) { throw InvalidParameter("shrink: thresholds must be nonnegative"); }
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) { out[i] = shrink_entry(v[i], t[i]); }
  return out;
}

CVector project_linf_ball(const CVector& v, const RVector& w)
{
  check_radii(w, v.size(), "project_linf_ball");
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) { out[i] = clip_entry(v[i], w.size() == 0 ? 1.0 : w[i]); }
  return out;
}

CVector project_l2_ball(const CVector& v, double delta)
{
  if (!(delta >= 0.0)) { throw InvalidParameter("project_l2_ball: radius must be nonnegative"); }
  double const nrm = v.norm();
  if (nrm <= delta) { return v; }
  CVector out = v * (delta / nrm);
  while (out.norm() > delta) { out *= 1.0 - 0x1.0p-52; }
  return out;
}

CVector shrink_l2(const CVector& v, double t) { return v - project_l2_ball(v, t); }

CVector project_halfspace_F(const CVector& v, const RVector& w)
{
  if (w.size() != 0 && w.size() != v.size()) {
    throw DimensionMismatch("project_halfspace_F: bound vector length mismatch");
  }
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    double const bound = w.size() == 0 ? 1.0 : w[i];
    out[i] = Complex(std::min(v[i].real(), bound), v[i].imag());
  }
  return out;
}

CVector DualSet::project(const CVector& v) const
{
  check_radii(radii, v.size(), "DualSet");
  if (halfspace_count < 0 || halfspace_count > v.size()) {
    throw InvalidParameter("DualSet: halfspace_count out of range");
  }
  CVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    double const w = radii.size() == 0 ? 1.0 : radii[i];
    if (i < halfspace_count) {
      out[i] = Complex(std::min(v[i].real(), w), v[i].imag());
    } else {
      out[i] = clip_entry(v[i], w);
    }
  }
  return out;
}

bool DualSet::contains(const CVector& v, double slack) const
{
  for (Index i = 0; i < v.size(); ++i) {
    double const w = radii.size() == 0 ? 1.0 : radii[i];
    double const measure = i < halfspace_count ? v[i].real() : std::abs(v[i]);
    if (measure > w + slack) { return false; }
  }
  return true;
}

}  // namespace l1adm
