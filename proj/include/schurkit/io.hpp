#ifndef SCHURKIT_IO_HPP
#define SCHURKIT_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "schurkit/cfsolver.hpp"
#include "schurkit/colligation.hpp"

namespace schurkit {

using Json = nlohmann::json;

/// Matrix wire format: {"rows": r, "cols": c, "data": [[re, im], ...]} with
/// row-major data. Readers also accept two shorthands: a nested array of rows
/// of [re, im] pairs, and a flat array holding exactly one pair (a 1x1).
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// {"order": K, "coeffs": [matrix, ...]}; "order" is optional on input.
Json series_to_json(const MatSeries& s);
MatSeries series_from_json(const Json& j);

/// {"m", "n", "gammas", "in_bases", "out_bases"}.
Json sequence_to_json(const ChoiceSequence& cs);
ChoiceSequence sequence_from_json(const Json& j);

/// {"coeffs": [matrix, ...]}.
Json problem_to_json(const SchurProblem& p);
SchurProblem problem_from_json(const Json& j);

/// {"m", "h", "U": matrix}; unitarity is validated on input.
Json colligation_to_json(const Colligation& col);
Colligation colligation_from_json(const Json& j, const Tolerances& tol = {});

/// {"basis": matrix}; orthonormality is validated on input.
Subspace subspace_from_json(const Json& j, const Tolerances& tol = {});

Json tolerances_to_json(const Tolerances& tol);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view s);

/// 16 hex digits of fnv1a64 over the canonical (sorted-key) dump.
std::string digest_hex(const Json& canonical);

/// Reads and parses a JSON file; throws ParseError on I/O or syntax trouble.
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace schurkit

#endif
