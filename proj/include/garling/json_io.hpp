#pragma once

#include <string>

#include "garling/sparse_vector.hpp"
#include "garling/weights.hpp"

namespace garling {

/// Accepts the shorthand "power:THETA:LEN" | "harmonic:LEN", a "@file.json"
/// reference, or an inline JSON descriptor
/// {"kind":"power","theta":T,"length":N} | {"kind":"harmonic","length":N} |
/// {"kind":"explicit","values":[...]}.
Weights weights_from_descriptor(const std::string& text);

/// Inline JSON {"entries":[[index,value],...]} or a "@file.json" reference.
SparseVector vector_from_text(const std::string& text);

}  // namespace garling
