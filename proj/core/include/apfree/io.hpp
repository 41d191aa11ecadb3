#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "apfree/constructor.hpp"
#include "apfree/order.hpp"
#include "apfree/verifier.hpp"

namespace apfree {

enum class EmitFormat { Tsv, JsonLines };

EmitFormat parse_emit_format(std::string_view token);  // "tsv" | "json-lines"

// One comment header `# source=.. order=.. depth=..`, then one row per
// entry ascending by rank (position in image order). TSV rows are
// domain<TAB>rank<TAB>image; JSON rows are objects with those keys.
// Output is deterministic for a given map.
void write_map(std::ostream& os, const FiniteOrderedMap& m, EmitFormat format,
               std::string_view source_label, std::uint32_t depth);

// One JSON object per construction step, in order.
void write_audit(std::ostream& os, const ConstructionState& st);

// Reads either format back (sniffed per line: '{' starts a JSON row),
// skipping blank lines and '#' comments. Rows may carry two or three
// columns. With an order, the image column is the last one and rows
// map into that order. Without one, the second column is a rank and
// rows map into the standard rational order by rank.
FiniteOrderedMap read_map(std::istream& in, OrderPtr order);

}  // namespace apfree
