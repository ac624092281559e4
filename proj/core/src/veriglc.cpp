#include "rigidlens/veriglc.hpp"

#include <cmath>

#include "rigidlens/parallel.hpp"

namespace rigidlens {

namespace {

double signed_gap(double rcs, double spectra) {
  const bool ri = std::isinf(rcs), si = std::isinf(spectra);
  if (ri && si) return 0.0;
  if (ri) return kInf;
  if (si) return -kInf;
  return rcs - spectra;
}

}  // namespace

VerificationReport verify_representation(const MultiPoly& p, const Pencil& P,
                                         const RaySample& rays, double tol,
                                         double tol_div, int det_cap) {
  if (p.n() != P.n())
    throw DimensionMismatch("verify_representation: variable counts differ");
  if (p.degree() > P.size())
    throw DimensionMismatch("verify_representation: pencil smaller than degree(p)");

  VerificationReport report;
  report.tol = tol;
  report.tol_div = tol_div;

  const std::size_t k = rays.size();
  std::vector<std::vector<RayComparison>> rows(k);
  std::vector<std::exception_ptr> errors(k);
  parallel_for(k, [&](std::size_t i) {
    try {
      const Ray& a = rays.directions[i];
      const Ray neg = a.opposite();
      const auto [rp, rn] = rcs_radii_both(p, a);
      const double sp = spectrahedral_radius(P, a);
      const double sn = spectrahedral_radius(P, neg);
      rows[i] = {RayComparison{a, rp, sp, signed_gap(rp, sp)},
                 RayComparison{neg, rn, sn, signed_gap(rn, sn)}};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  report.contains_p_in_pencil = true;
  report.contains_pencil_in_p = true;
  for (const auto& pair : rows) {
    for (const auto& row : pair) {
      report.rows.push_back(row);
      report.max_abs_gap = std::max(report.max_abs_gap, std::abs(row.gap));
      if (row.gap > tol) report.contains_p_in_pencil = false;
      if (row.gap < -tol) report.contains_pencil_in_p = false;
    }
  }

  if (P.size() <= det_cap) {
    report.cofactor_exact_route = true;
    const MultiPoly det = det_poly(P, det_cap);
    report.det_rz = is_rz(det, rays.directions).is_rz;
    if (det.degree() >= p.degree()) {
      try {
        CofactorResult cof = extract_cofactor(det, p);
        report.cofactor = std::move(cof.q);
        report.cofactor_residual = cof.residual;
      } catch (const DegenerateSystem&) {
        report.cofactor_residual = kInf;
      }
    } else {
      report.cofactor_residual = kInf;  // determinant cannot be a multiple
    }
  } else {
    report.cofactor_exact_route = false;
    report.cofactor_residual = fit_objective(P, p, rays);
    report.det_rz = true;  // monic symmetric pencil: eigenvalue roots are real
  }

  report.pass = report.max_abs_gap <= tol &&
                report.cofactor_residual <= tol_div && report.det_rz;
  return report;
}

}  // namespace rigidlens
