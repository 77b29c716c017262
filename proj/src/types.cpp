#include "lscd/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace lscd {

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 7> kMetricNames{{
    {Metric::APD, "APD"},
    {Metric::PRT, "PRT"},
    {Metric::AMD, "AMD"},
    {Metric::AMD_1to2, "AMD_1to2"},
    {Metric::AMD_2to1, "AMD_2to1"},
    {Metric::SAMD, "SAMD"},
    {Metric::SAMD_HUNGARIAN, "SAMD_HUNGARIAN"},
}};

constexpr std::array<std::pair<Space, std::string_view>, 4> kSpaceNames{{
    {Space::FULL, "FULL"},
    {Space::DEF, "DEF"},
    {Space::PCA, "PCA"},
    {Space::RAND, "RAND"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Table, typename Key>
std::string_view lookup_name(const Table& table, Key key) {
  for (const auto& [k, name] : table)
    if (k == key) return name;
  return "?";
}

template <typename Table>
auto lookup_key(const Table& table, std::string_view name)
    -> std::optional<typename Table::value_type::first_type> {
  for (const auto& [k, n] : table)
    if (iequals(n, name)) return k;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Metric m) { return lookup_name(kMetricNames, m); }
std::string_view to_string(Space s) { return lookup_name(kSpaceNames, s); }

std::optional<Metric> parse_metric(std::string_view name) { return lookup_key(kMetricNames, name); }
std::optional<Space> parse_space(std::string_view name) { return lookup_key(kSpaceNames, name); }

}  // namespace lscd
