#pragma once

#include <string>
#include <string_view>

#include "rtlp/nba.hpp"

namespace rtlp {

/// Writes a state-based Büchi automaton in HOA v1. Atomic propositions are
/// the occurrences mentioned by some guard, in ascending id order, quoted
/// with their occurrence names.
std::string export_hoa(const Nba& nba, const PredicateTable& table, std::string_view name = {});

/// Reads the subset of HOA v1 that `export_hoa` writes: state-based Buchi
/// acceptance with explicit transition labels. AP names are resolved against
/// `table`. Errors are reported as ParseError with line and column.
Nba import_hoa(std::string_view text, const PredicateTable& table);

}  // namespace rtlp
