#ifndef RIGIDLENS_IO_HPP
#define RIGIDLENS_IO_HPP

#include <string>
#include <vector>

#include "rigidlens/deform.hpp"
#include "rigidlens/rzgeom.hpp"
#include "rigidlens/tangentcover.hpp"
#include "rigidlens/veriglc.hpp"

namespace rigidlens {

/// Version stamp carried by every emitted JSON document.
inline constexpr int kSchemaVersion = 1;

// Polynomial files: {"n": int, "terms": [{"exps": [int,...], "coef": float}]}.
// Exponent lists are length n; duplicate exponent vectors are rejected.
MultiPoly poly_from_json_string(const std::string& text);
std::string poly_to_json_string(const MultiPoly& p);
MultiPoly load_poly(const std::string& path);
void save_poly(const MultiPoly& p, const std::string& path);

// Pencil files: {"n": int, "N": int, "matrices": [[[row],...], ...]} with n
// matrices of size NxN (symmetrized on load).
Pencil pencil_from_json_string(const std::string& text);
std::string pencil_to_json_string(const Pencil& P);
Pencil load_pencil(const std::string& path);
void save_pencil(const Pencil& P, const std::string& path);

// Cover files: records of {point, gradient, form} plus the block partition.
std::string cover_to_json_string(const TangentCover& cover);
TangentCover cover_from_json_string(const std::string& text);

// Report emitters. CSV columns are documented in the README; infinities
// print as "inf"/"-inf" in both JSON (as strings) and CSV.
std::string rz_verdict_to_json_string(const RzVerdict& v);
std::string radial_slices_csv(const std::vector<RadialSlice>& slices);
std::string fit_report_to_json_string(const FitReport& report);
std::string path_to_json_string(const DeformationPath& path);
std::string monitor_report_csv(const MonitorReport& report);
std::string monitor_report_to_json_string(const MonitorReport& report);
std::string verification_report_to_json_string(const VerificationReport& report);
std::string verification_report_csv(const VerificationReport& report);

/// Standalone SVG of the per-ray radius profiles (rcs radius of the target
/// vs spectrahedral radius of the pencil). Polar layout for n=2, ray-index
/// chart otherwise. Rays with infinite radius break the polyline.
std::string radius_profile_svg(const VerificationReport& report, int n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace rigidlens

#endif  // RIGIDLENS_IO_HPP
