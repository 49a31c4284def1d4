#pragma once

#include <string>

#include "bop/branched.hpp"

namespace bop {

// Text format described in docs/pair-format.md. D is not required to be
// logarithmic here; that is a pair condition, not a syntax rule.
PairBD parse_pair(const std::string& text);
std::string write_pair(const PairBD& p);
PairBD load_pair(const std::string& path);

}  // namespace bop
