#pragma once

#include <string_view>

#include "json.hpp"

#include "wedgebench/config.hpp"

namespace wb {

// One operation per expression; arguments are separated by whitespace and use
// the literal forms from literals.hpp.
//
//   eval-e <ord> <ord>
//   delta-x <ord> <ord>
//   is-safe <cover> <node>           node: U literal, or a tree id for table covers
//   find-safe <cover> <ord>
//   covers-within <cover> <ord>
//   isolate <point>                  L:1.0.2 / R:3
//   simulate <targets>
//   extend <cond> <node>
//   extend <cond> above <ord>
//
// simulate and extend run over the binary fixture when a b: literal appears,
// over U otherwise.
nlohmann::json run_query(std::string_view expr, const RunConfig& cfg);

} // namespace wb
