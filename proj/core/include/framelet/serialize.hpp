#pragma once

// JSON / CSV interchange. Numbers are written in the shortest form that
// reads back to the identical double.

#include <string>
#include <utility>
#include <vector>

#include "framelet/cascade.hpp"
#include "framelet/design.hpp"
#include "framelet/frame_verify.hpp"
#include "framelet/mask_analysis.hpp"
#include "framelet/periodic.hpp"
#include "framelet/plf_repair.hpp"
#include "framelet/trig_interp.hpp"
#include "framelet/uep_complete.hpp"

namespace framelet {

// Readers throw ParseError with the line/column of a syntax error or the path
// of the offending field (e.g. "coeffs[3][1]").

/// { "m_min": int, "coeffs": [[re, im], ...] }
std::string to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const std::string& text);

/// { "nodes": [...], "values": [...] }
std::string to_json(const PiecewiseLinearPeriodic& f);
PiecewiseLinearPeriodic polyline_from_json(const std::string& text);

/// [ { "role": "m0", "m_min": ..., "coeffs": ..., "provenance": ... }, { "role": "m1", ... }, ... ]
/// A file holding a single TrigPoly object is read as a bundle with only m0.
std::string to_json(const MaskBundle& b);
MaskBundle bundle_from_json(const std::string& text);

/// { "j": int, "taps": [ { "m": int, "c": re, "c_im": im }, ... ] }
std::string to_json(const FilterCoeffs& f);
FilterCoeffs filter_from_json(const std::string& text);
/// Header "m,c,c_im", one row per tap.
std::string to_csv(const FilterCoeffs& f);
FilterCoeffs filter_from_csv(const std::string& text);

std::string to_json(const StabilityReport& r);
std::string to_json(const DesignCertificate& c);
std::string to_json(const UepResidual& r);
std::string to_json(const PrReport& r);

/// { "level", "lo", "hi", "samples": [[re, im], ...] }
std::string to_json(const DyadicFunction& d);
DyadicFunction dyadic_from_json(const std::string& text);
/// Header "x,re,im".
std::string to_csv(const DyadicFunction& d);

/// One value per line (optional header "x" or "value"; a second column is
/// read as the imaginary part).
std::vector<cplx> signal_from_csv(const std::string& text);
std::string signal_to_csv(const std::vector<cplx>& x);

/// Rows "angle,value" (an optional non-numeric header is skipped).
std::vector<std::pair<double, double>> samples_from_csv(const std::string& text);

/// Throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace framelet
