#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "parabolic/dynamics.hpp"
#include "parabolic/spectra.hpp"

namespace parabolic::cli {

using Json = nlohmann::ordered_json;

/// Printf "%.17g".
std::string format_double(double x);
/// JSON text with two-space indent and floats printed by format_double.
std::string dump_json(const Json& j);

Json to_json(const Rational& r);
Json to_json(const Gauss& z);
Json to_json(const QMatrix& m);
/// [[index, "value"], ...]
Json to_json(const SparseVec& v);
/// Bases longer than `limit` are elided to their dimension.
Json basis_json(const std::vector<SparseVec>& basis, std::size_t limit = 64);
Json to_json(const AlgebraElement& y);
Json to_json(const Subspace& s);
Json to_json(const Sl2Triple& t);
Json to_json(const EigenDecomposition& d, bool with_bases = false);
Json to_json(const FlatnessVerdict& v);
Json to_json(const GrowthReport& g);
Json to_json(const ConvergenceRecord& r);
Json to_json(const PropagationRecord& r);
Json to_json(const FixedSetScan& s);
Json to_json(const ClosedFormProbe& p);
/// Sample count and max residual; the samples go to CSV.
Json summary_json(const TrajectoryReport& r);

}  // namespace parabolic::cli
