#pragma once

// JSON encoding of library values. Complex numbers are [re, im]; group
// elements are {"kind": "rotation" | "bhp", "params": {...}}.

#include <filesystem>
#include <vector>

#include "json.hpp"

#include "ccr/averaging.hpp"
#include "ccr/forms.hpp"
#include "ccr/reduction.hpp"

namespace ccr {

using json = nlohmann::json;

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const GroupElement& g);
GroupElement group_element_from_json(const json& j);

json to_json(const GaussianPacket& p);
json to_json(const TransformedPacket& t);
TransformedPacket packet_from_json(const json& j);

/// {mass, s0, terms}. A true s0 is re-verified on load.
json to_json(const FieldVector& f);
FieldVector field_from_json(const json& j);

json to_json(const QuadratureConfig& q);
QuadratureConfig quadrature_from_json(const json& j);

json to_json(const FormValue& v);
json to_json(const BFormValue& v);
json to_json(const WeylWord& w);
json to_json(const AverageResult& r);
json to_json(const ReducedSequence& s);
json to_json(const NullSpaceReport& r);

/// Corpus file: {"fields": [field, ...]}. Throws ParseError on I/O or
/// schema problems.
std::vector<FieldVector> load_corpus(const std::filesystem::path& path);
json corpus_to_json(const std::vector<FieldVector>& fields);
void save_json(const std::filesystem::path& path, const json& j);

}  // namespace ccr
