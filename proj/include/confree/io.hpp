#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "confree/terms.hpp"

namespace confree {

using nlohmann::json;

// Textual grammar shared with the CLI:
//   generator   name(index)              e.g. a(-2)
//   word        juxtaposition with '*' or whitespace
//   polynomial  +/- separated terms with optional p/q coefficients,
//               e.g. 2*a(0)*a(1) - 1/2*b(-1)*a(2); "1" is the empty word.

Generator parse_generator(const std::string& text, const Alphabet& alphabet);
Word parse_word(const std::string& text, const Alphabet& alphabet);
NcPoly parse_poly(const std::string& text, const Alphabet& alphabet);

std::string render_generator(const Generator& g, const Alphabet& alphabet);
/// Empty word renders as "1".
std::string render_word(const Word& w, const Alphabet& alphabet);
/// Terms sorted descending; pass an order to control the ranking
/// (defaults to the structural container order).
std::string render_poly(const NcPoly& p, const Alphabet& alphabet,
                        std::optional<OrderSpec> order = std::nullopt);

// JSON mirrors. A word is [["a",-2],["a",-1]]; a polynomial is a list of
// {"coeff": "p/q", "word": [...]} objects. Coefficients are strings because
// they may exceed machine range.
json word_to_json(const Word& w, const Alphabet& alphabet);
Word word_from_json(const json& j, const Alphabet& alphabet);
json poly_to_json(const NcPoly& p, const Alphabet& alphabet,
                  std::optional<OrderSpec> order = std::nullopt);
NcPoly poly_from_json(const json& j, const Alphabet& alphabet);

}  // namespace confree
