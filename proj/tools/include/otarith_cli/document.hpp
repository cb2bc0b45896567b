#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "otarith/linalg.hpp"
#include "otarith/poly.hpp"

namespace otarith::cli {

using json = nlohmann::ordered_json;

struct Options {
  unsigned precision_bits = 128;
  std::uint64_t enum_cap = 1'000'000;
  unsigned long horizon = 60;
};

// Unset fields fall through to the next source.
struct OptionOverrides {
  std::optional<unsigned> precision_bits;
  std::optional<std::uint64_t> enum_cap;
  std::optional<unsigned long> horizon;
};

struct ModulusSpec {
  bool from_subgroup = false;
  std::vector<IntVector> finite_generators;
  std::optional<std::vector<int>> real_places;  // nullopt: every real place marked
};

struct InputDocument {
  json source;
  ZPoly min_poly;
  std::optional<RatMatrix> integral_basis;
  std::optional<std::vector<IntVector>> units;
  std::string unit_provenance = "input";
  std::optional<std::vector<IntVector>> subgroup;
  std::optional<ModulusSpec> modulus;
  OptionOverrides options;
};

// Throws ParseError (with a line or a JSON path) and ShapeError.
InputDocument parse_input(std::string_view text);
InputDocument parse_document(const json& doc);

// flag > OTARITH_ENUM_CAP > document > default
Options resolve_options(const InputDocument& doc, const OptionOverrides& flags, const char* env_enum_cap);

}  // namespace otarith::cli
