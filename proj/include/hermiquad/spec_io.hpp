#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hermiquad/detail/json_writer.hpp"
#include "hermiquad/integrals.hpp"
#include "hermiquad/poly.hpp"

// JSON spec files: a version-tagged list of polynomial queries and integral
// specs, each carrying a unique string id. Example:
//
//   {
//     "schema_version": 1,
//     "entries": [
//       {"id": "g1", "kind": "In", "n": 2, "a": 1.0, "f": 1.0},
//       {"id": "r1", "kind": "rational", "nu": 1.0, "n": 0, "c": 1.0},
//       {"id": "p1", "kind": "poly", "family": "h2", "n": 2, "x": 3, "y": 1}
//     ]
//   }
//
// Unlisted numeric fields take the defaults declared on the structs; unknown
// keys are rejected so typos cannot silently change a case.

namespace hermiquad {

struct SpecEntry {
  std::string id;
  std::variant<GaussIntegralSpec, RationalIntegralSpec, PolyQuery> payload;
};

struct SpecFile {
  int schema_version = 1;
  std::vector<SpecEntry> entries;
};

// File-level problems (unreadable file, bad JSON, schema violations). These
// are a different category from evaluation errors: the CLI maps them to
// exit 2 before any entry runs.
class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SpecFile parse_spec_json(const std::string& text);
SpecFile load_spec_file(const std::string& path);

const char* gauss_kind_name(GaussKind k) noexcept;
const char* poly_family_name(PolyFamily f) noexcept;

// Emits "kind" plus the parameter fields of the payload into the writer's
// current object; the result re-parses as the same entry (minus the id).
void write_entry_payload(detail::JsonWriter& w, const SpecEntry& e);

void write_gauss_payload(detail::JsonWriter& w, const GaussIntegralSpec& s);
void write_rational_payload(detail::JsonWriter& w,
                            const RationalIntegralSpec& s);
void write_poly_payload(detail::JsonWriter& w, const PolyQuery& q);

}  // namespace hermiquad
