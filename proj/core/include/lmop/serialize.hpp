#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lmop/measures.hpp"
#include "lmop/mop_engine.hpp"

namespace lmop {

using Json = nlohmann::json;

/// Sorted list of (twice_exp, re, im) triples.
Json poly_to_json(const HalfLaurentPoly& p);
HalfLaurentPoly poly_from_json(const Json& j, BranchSpec branch = {});

Json branch_to_json(const BranchSpec& b);
BranchSpec branch_from_json(const Json& j);

/// Measure schema: {"type": "atoms"|"arc"|"lebesgue"|"szego_of_real"|"functional", ...}
/// with all angles in radians.
MeasureSource measure_from_json(const Json& j, BranchSpec branch);
Json measure_to_json(const MeasureSource& m);

struct LoadedSystem {
  MeasureSystem system;
  std::optional<ChebyshevCertificate> at_certificate;
};

/// System schema: {"t0": ..., "closed_end": "left"|"right", "measures": [...]}
/// plus optional "angelesco_arcs": [[alpha, beta], ...] (validated Angelesco
/// construction) or "at_system": {...} (AT construction with certificate).
LoadedSystem system_from_json(const Json& j);
Json system_to_json(const MeasureSystem& sys);

RealSystem real_system_from_json(const Json& j);

Json multi_index_to_json(const MultiIndex& n);
MultiIndex multi_index_from_json(const Json& j);

Json complex_to_json(const Complex& c);
Json finite_or_string(double v);

Json normality_to_json(const NormalityReport& rep);

}  // namespace lmop
