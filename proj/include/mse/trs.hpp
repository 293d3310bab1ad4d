#ifndef MSE_TRS_HPP
#define MSE_TRS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace mse {

/// Observed cells of a triple record system. Cell order is
/// (111, 110, 101, 011, 100, 010, 001); the 000 cell is unobserved.
struct TrsTable {
  std::int64_t x111{};
  std::int64_t x110{};
  std::int64_t x101{};
  std::int64_t x011{};
  std::int64_t x100{};
  std::int64_t x010{};
  std::int64_t x001{};
  std::string label;

  std::int64_t x0() const {
    return x111 + x110 + x101 + x011 + x100 + x010 + x001;
  }
  std::int64_t n1() const { return x111 + x110 + x101 + x100; }
  std::int64_t n2() const { return x111 + x110 + x011 + x010; }
  std::int64_t n3() const { return x111 + x101 + x011 + x001; }

  std::array<std::int64_t, 7> cells() const {
    return {x111, x110, x101, x011, x100, x010, x001};
  }
};

/// Probabilities of all eight cells, same order as TrsTable with 000 last.
struct CellProbabilities {
  std::array<double, 8> p{};  // p111, p110, p101, p011, p100, p010, p001, p000

  double p111() const { return p[0]; }
  double p110() const { return p[1]; }
  double p101() const { return p[2]; }
  double p011() const { return p[3]; }
  double p100() const { return p[4]; }
  double p010() const { return p[5]; }
  double p001() const { return p[6]; }
  double p000() const { return p[7]; }
  double sum() const;
};

/// Uniform estimator output.
struct EstimateResult {
  std::string method;
  double n_hat{};
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  bool feasible{};
  std::map<std::string, double> diagnostics;
  std::string label;
};

enum class TableFormat { json, csv };

/// Builds a TrsTable from raw counts, rejecting negative counts and
/// all-zero tables.
TrsTable validate_table(const std::array<std::int64_t, 7>& raw,
                        const std::string& label = {});

TrsTable load_table(const std::string& path, TableFormat format);
void save_table(const TrsTable& table, const std::string& path,
                TableFormat format);

TrsTable parse_table_json(const std::string& text);
TrsTable parse_table_csv(const std::string& text);
std::string table_to_json(const TrsTable& table);
std::string table_to_csv(const TrsTable& table);

/// Published case-study tables: als_all, als_deployed, als_nondeployed, wtc.
TrsTable builtin_dataset(const std::string& name);

}  // namespace mse

#endif
