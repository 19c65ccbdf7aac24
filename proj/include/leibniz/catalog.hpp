#pragma once

#include "leibniz/algebra.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leibniz {

// Catalog file: JSON array of
//   {"name": str, "dim": int, "params": [{"name": str, "admissible": str}],
//    "entries": [[i, j, k, "expr"], ...]}
// with 1-based indices; omitted entries are zero. Schema violations throw
// Error(Schema) naming the JSON pointer of the offending value.
std::vector<AlgebraTable> parse_catalog(std::string_view json_text);
std::vector<AlgebraTable> load_catalog(const std::string &path);

// A transcription problem in a catalog entry together with the alternative
// readings of it.
struct ErrataEntry {
  struct Reading {
    std::string label;
    AlgebraTable table;
  };

  std::string algebra;
  std::string issue;
  // First failing basis triple (1-based) of the printed reading, if any.
  std::optional<std::array<std::size_t, 3>> failing;
  std::vector<Reading> alternatives;
  // Label of the alternative used by downstream computations; empty keeps
  // the printed reading.
  std::string effective;
};

// Errata file: JSON array of
//   {"algebra": str, "issue": str, "failing": [i, j, k] | null,
//    "alternatives": [{"label": str, "params": [...], "entries": [...]}],
//    "effective": str}
std::vector<ErrataEntry> parse_errata(std::string_view json_text);

class Catalog {
public:
  Catalog() = default;
  Catalog(std::vector<AlgebraTable> tables, std::vector<ErrataEntry> errata);

  const std::vector<AlgebraTable> &tables() const { return tables_; }
  const std::vector<ErrataEntry> &errata() const { return errata_; }
  std::vector<std::string> names() const;
  bool contains(const std::string &name) const;

  // The table as printed. Throws UnknownAlgebra.
  const AlgebraTable &literal(const std::string &name) const;
  // The printed table, or the alternative reading that errata selects.
  const AlgebraTable &effective(const std::string &name) const;
  const ErrataEntry *errata_for(const std::string &name) const;

private:
  std::vector<AlgebraTable> tables_;
  std::vector<ErrataEntry> errata_;
};

std::string read_text_file(const std::string &path);

} // namespace leibniz
