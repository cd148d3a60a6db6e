#ifndef ERGM_TABLE_IO_HPP
#define ERGM_TABLE_IO_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ergm/enumeration.hpp"
#include "json.hpp"

namespace ergm {

/// CSV with header `n,m,ell,count`, nonzero entries only, m-major order.
inline void write_table_csv(const CoefficientTable& table, std::ostream& os) {
  os << "n,m,ell,count\n";
  table.for_each_nonzero([&](std::int64_t m, std::int64_t l, std::uint64_t c) {
    os << table.n() << ',' << m << ',' << l << ',' << c << '\n';
  });
}

inline nlohmann::json table_sidecar(const CoefficientTable& table) {
  const auto total = table.total();
  return {{"n", table.n()}, {"total", total}, {"checksum", total}};
}

inline CoefficientTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "n,m,ell,count") {
    throw std::runtime_error("coefficient CSV: missing header `n,m,ell,count`");
  }
  std::optional<CoefficientTable> table;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field[4];
    for (auto& f : field) {
      if (!std::getline(row, f, ',')) {
        throw std::runtime_error("coefficient CSV: short row at line " + std::to_string(line_no));
      }
    }
    const int n = std::stoi(field[0]);
    const std::int64_t m = std::stoll(field[1]);
    const std::int64_t l = std::stoll(field[2]);
    const std::uint64_t c = std::stoull(field[3]);
    if (!table) table.emplace(n);
    if (table->n() != n) throw std::runtime_error("coefficient CSV: mixed n values");
    if (m < 0 || m > table->max_triangles() || l < 0 || l > table->max_edges()) {
      throw std::runtime_error("coefficient CSV: entry out of range at line " +
                               std::to_string(line_no));
    }
    table->at(m, l) = c;
  }
  if (!table) throw std::runtime_error("coefficient CSV: no rows");
  return *table;
}

/// Checks the sidecar against the table and the power-set cardinality.
inline void validate_table(const CoefficientTable& table, const nlohmann::json& sidecar) {
  const auto total = table.total();
  const auto expected = std::uint64_t{1} << pair_count(table.n());
  if (sidecar.at("n").get<int>() != table.n() ||
      sidecar.at("total").get<std::uint64_t>() != total ||
      sidecar.at("checksum").get<std::uint64_t>() != total || total != expected) {
    throw std::runtime_error("coefficient table for n = " + std::to_string(table.n()) +
                             " failed its checksum");
  }
}

/// On-disk cache of coefficient tables keyed by n.
class TableCache {
 public:
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Directory from $ERGM_TABLE_CACHE, if set.
  static std::optional<TableCache> from_env() {
    if (const char* d = std::getenv("ERGM_TABLE_CACHE"); d != nullptr && *d != '\0') {
      return TableCache(d);
    }
    return std::nullopt;
  }

  std::filesystem::path csv_path(int n) const {
    return dir_ / ("coefficients_n" + std::to_string(n) + ".csv");
  }
  std::filesystem::path json_path(int n) const {
    return dir_ / ("coefficients_n" + std::to_string(n) + ".json");
  }

  std::optional<CoefficientTable> load(int n) const {
    std::ifstream csv(csv_path(n));
    std::ifstream js(json_path(n));
    if (!csv || !js) return std::nullopt;
    auto table = read_table_csv(csv);
    validate_table(table, nlohmann::json::parse(js));
    return table;
  }

  void store(const CoefficientTable& table) const {
    std::filesystem::create_directories(dir_);
    std::ofstream csv(csv_path(table.n()));
    write_table_csv(table, csv);
    std::ofstream js(json_path(table.n()));
    js << table_sidecar(table).dump() << '\n';
  }

  CoefficientTable load_or_enumerate(int n, const EnumerationOptions& opts = {}) const {
    if (auto cached = load(n)) return *std::move(cached);
    auto table = enumerate_coefficients(n, opts);
    store(table);
    return table;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace ergm

#endif  // ERGM_TABLE_IO_HPP
