#pragma once

// Shared access to the shipped data files.

#include "leibniz/catalog.hpp"
#include "leibniz/families.hpp"

#include <string>
#include <vector>

namespace leibniz::testing {

inline std::string data_path(const std::string &rel) {
  return std::string(LEIBNIZ_TEST_DATA_DIR) + "/" + rel;
}

inline const Catalog &shipped_catalog() {
  static const Catalog cat(load_catalog(data_path("catalog.json")),
                           parse_errata(read_text_file(data_path("errata.json"))));
  return cat;
}

inline const std::vector<OperatorFamily> &shipped_families(const std::string &kind) {
  static std::map<std::string, std::vector<OperatorFamily>> cache;
  auto it = cache.find(kind);
  if (it == cache.end())
    it = cache.emplace(kind, load_families(data_path("families/" + kind + ".json"))).first;
  return it->second;
}

inline const OperatorFamily &shipped_family(const std::string &label) {
  for (const char *kind : {"rota-baxter", "nijenhuis", "reynolds", "averaging"})
    for (const auto &f : shipped_families(kind))
      if (f.label == label)
        return f;
  throw std::runtime_error("no family " + label);
}

} // namespace leibniz::testing
