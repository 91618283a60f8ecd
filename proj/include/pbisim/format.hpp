#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pbisim/gadgets.hpp"
#include "pbisim/plts.hpp"
#include "pbisim/ppda.hpp"
#include "pbisim/rational.hpp"

namespace pbisim::format {

enum class FileKind { Plts, Ppda, Afa, Game };

/// Kind named by the first non-comment line.
FileKind detect_kind(const std::string& text);

Plts parse_plts(const std::string& text);
Ppda parse_ppda(const std::string& text);
gadgets::OneLetterAfa parse_afa(const std::string& text);
gadgets::ReachGame parse_game(const std::string& text);

std::string serialize(const Plts& l);
std::string serialize(const Ppda& m);
std::string serialize(const gadgets::OneLetterAfa& afa);
std::string serialize(const gadgets::ReachGame& g);

/// Configuration with runs of repeated symbols kept symbolic.
struct ConfigSpec {
  ControlId control = 0;
  std::vector<std::pair<SymbolId, BigInt>> runs;  // top first
};

/// Accepts "pXZ" (names matched greedily), "p X Z" and run shorthand such as
/// "p I^12 Z" or "pI^0b1100Z". "_" stands for the empty stack.
ConfigSpec parse_config(const Ppda& m, const std::string& text);

/// Expands the runs; SizeGuard if the stack would exceed max_height.
Config expand(const ConfigSpec& c, std::size_t max_height);

std::string probability_string(const Rational& r);

}  // namespace pbisim::format
