#ifndef RPD_POOL_IO_HPP
#define RPD_POOL_IO_HPP

// JSON persistence of direction pools. Every real is stored as a decimal
// string with 17 significant digits so a reload reproduces the pool
// bit-for-bit:
//
//   {
//     "format": "rpd-direction-pool", "version": 1,
//     "dimension": 3, "M": 2,
//     "seed": "42", "source_checksum": "0x5f1d...",
//     "directions": [["0.26726124191242440", ...], ...],
//     "proj_median": ["...", "..."],
//     "proj_mad": ["...", "..."]
//   }

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpd/curve_io.hpp"
#include "rpd/directions.hpp"

namespace rpd {

inline std::string format_hex64(std::uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size())
      throw ParseError(what + ": trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(what + ": '" + s + "' is not an unsigned integer");
  }
}

inline nlohmann::json pool_to_json(const DirectionPool& pool) {
  using nlohmann::json;
  auto reals = [](std::span<const double> v) {
    json a = json::array();
    for (double x : v)
      a.push_back(format_real(x));
    return a;
  };
  json dirs = json::array();
  for (const Direction& v : pool.directions())
    dirs.push_back(reals(v.coords()));
  return json{{"format", "rpd-direction-pool"},
              {"version", 1},
              {"dimension", pool.dimension()},
              {"M", pool.size()},
              {"seed", std::to_string(pool.seed())},
              {"source_checksum", format_hex64(pool.source_checksum())},
              {"directions", std::move(dirs)},
              {"proj_median", reals(pool.medians())},
              {"proj_mad", reals(pool.mads())}};
}

inline DirectionPool pool_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "rpd-direction-pool")
      throw ParseError("pool file: unexpected format tag");
    if (j.at("version").get<int>() != 1)
      throw ParseError("pool file: unsupported version");
    const auto dim = j.at("dimension").get<std::size_t>();
    const auto M = j.at("M").get<std::size_t>();
    auto reals = [](const nlohmann::json& a, const std::string& what) {
      std::vector<double> v;
      for (const auto& x : a)
        v.push_back(parse_real(x.get<std::string>(), what));
      return v;
    };
    std::vector<Direction> dirs;
    for (const auto& d : j.at("directions")) {
      auto coords = reals(d, "pool direction");
      if (coords.size() != dim)
        throw ParseError("pool file: direction has the wrong dimension");
      dirs.push_back(Direction::from_unit(std::move(coords)));
    }
    auto med = reals(j.at("proj_median"), "pool median");
    auto mad = reals(j.at("proj_mad"), "pool MAD");
    if (dirs.size() != M || med.size() != M || mad.size() != M)
      throw ParseError("pool file: list lengths do not match M");
    return DirectionPool(std::move(dirs), std::move(med), std::move(mad),
                         parse_u64(j.at("source_checksum").get<std::string>(), "checksum"),
                         parse_u64(j.at("seed").get<std::string>(), "seed"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pool file: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("pool file: ") + e.what());
  }
}

inline void save_pool(const DirectionPool& pool, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write " + path);
  out << pool_to_json(pool).dump(1) << '\n';
}

inline DirectionPool load_pool(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return pool_from_json(j);
}

} // namespace rpd

#endif // RPD_POOL_IO_HPP
