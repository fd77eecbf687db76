// Copyright 2026 The bosonfft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bosonfft/complexity.hpp"
#include "bosonfft/distribution.hpp"
#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"
#include "bosonfft/fourier.hpp"
#include "bosonfft/mcmc.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft::io {

using nlohmann::json;

/// "1,1,0" -> (1,1,0). Whitespace around entries is ignored.
inline FockState parse_fock_state(std::string_view text) {
  std::vector<int> occ;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size())
      throw ValidationError("cannot parse Fock state '" + std::string(text) + "'");
    if (v < 0) throw ValidationError("negative occupation in Fock state '" + std::string(text) + "'");
    occ.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return FockState(std::move(occ));
}

inline json state_to_json(const FockState& s) { return json(std::vector<int>(s.begin(), s.end())); }

inline FockState state_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("Fock state must be a JSON array of integers");
  std::vector<int> occ;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ValidationError("Fock state entries must be nonnegative integers");
    occ.push_back(v.get<int>());
  }
  return FockState(std::move(occ));
}

// ---- unitary -------------------------------------------------------------

/// {"n": n, "re": [[...]], "im": [[...]]}, row-major.
inline json unitary_to_json(const UnitaryMatrix& u) {
  const std::size_t n = u.size();
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json rr = json::array(), ir = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(u(i, j).real());
      ir.push_back(u(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline UnitaryMatrix unitary_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
    throw ValidationError("unitary JSON needs keys n, re, im");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw DimensionError("unitary n must be >= 1");
  const auto n = j["n"].get<std::size_t>();
  const json& re = j["re"];
  const json& im = j["im"];
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n)
    throw DimensionError("unitary re/im must have n rows");
  std::vector<cdouble> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!re[i].is_array() || !im[i].is_array() || re[i].size() != n || im[i].size() != n)
      throw DimensionError("unitary is not square: row " + std::to_string(i) + " does not have n entries");
    for (std::size_t c = 0; c < n; ++c) {
      if (!re[i][c].is_number() || !im[i][c].is_number()) throw ValidationError("unitary entries must be numbers");
      entries.emplace_back(re[i][c].get<double>(), im[i][c].get<double>());
    }
  }
  return UnitaryMatrix(n, std::move(entries));
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + origin + ": " + e.what());
  }
}

inline void write_unitary(const std::filesystem::path& path, const UnitaryMatrix& u) {
  write_text(path, unitary_to_json(u).dump(2) + "\n");
}

inline UnitaryMatrix read_unitary(const std::filesystem::path& path) {
  return unitary_from_json(parse_json(read_text(path), "'" + path.string() + "'"));
}

// ---- distributions -------------------------------------------------------

/// [{"state": [...], "probability": p}, ...] in canonical order.
inline json distribution_to_json(const OutcomeDistribution& d) {
  json arr = json::array();
  for (const auto& [s, p] : d.entries) arr.push_back(json{{"state", state_to_json(s)}, {"probability", p}});
  return arr;
}

/// Accepts either the bare entry array or an object carrying it under
/// "entries".
inline OutcomeDistribution distribution_from_json(const json& j, DistributionKind kind = DistributionKind::exact) {
  const json& arr = j.is_object() && j.contains("entries") ? j["entries"] : j;
  if (!arr.is_array()) throw ValidationError("distribution JSON must be an array of {state, probability}");
  OutcomeDistribution d;
  d.kind = kind;
  if (j.is_object() && j.contains("kind")) d.kind = j["kind"] == "empirical" ? DistributionKind::empirical : DistributionKind::exact;
  for (const auto& e : arr) {
    if (!e.contains("state") || !e.contains("probability") || !e["probability"].is_number())
      throw ValidationError("distribution entry needs state and probability");
    d.entries[state_from_json(e["state"])] = e["probability"].get<double>();
  }
  return d;
}

/// Distribution file written by the dist command: the entry array plus
/// metadata.
inline json distribution_file_json(const OutcomeDistribution& d, const FockState& input) {
  return json{{"input", state_to_json(input)},
              {"kind", d.kind == DistributionKind::exact ? "exact" : "empirical"},
              {"total_mass", d.total_mass()},
              {"entries", distribution_to_json(d)}};
}

// ---- CSV -----------------------------------------------------------------

inline std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return ss.str();
}

/// bin,re,im,abs
inline std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "bin,re,im,abs\n";
  for (std::size_t b = 0; b < s.bins.size(); ++b) {
    const cdouble v = s.bins[b];
    out += std::to_string(b) + ',' + format_double(v.real()) + ',' + format_double(v.imag()) + ',' +
           format_double(std::abs(v)) + '\n';
  }
  return out;
}

/// Parses spectrum CSV back into bins; the abs column is ignored.
inline std::vector<cdouble> spectrum_bins_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "bin,re,im,abs") throw ValidationError("spectrum CSV header mismatch");
  std::vector<cdouble> bins;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string bin, re, im;
    std::getline(row, bin, ',');
    std::getline(row, re, ',');
    std::getline(row, im, ',');
    if (std::stoull(bin) != bins.size()) throw ValidationError("spectrum CSV bins out of order");
    bins.emplace_back(std::stod(re), std::stod(im));
  }
  return bins;
}

/// N,weighted_average,maximum,ratio
inline std::string ratio_curve_to_csv(std::span<const RatioRow> rows) {
  std::string out = "N,weighted_average,maximum,ratio\n";
  for (const auto& r : rows) {
    if (r.skipped) {
      out += std::to_string(r.modes) + ",skipped,skipped,skipped\n";
      continue;
    }
    out += std::to_string(r.modes) + ',' + format_double(r.weighted_average) + ',' + format_double(r.maximum) + ',' +
           format_double(r.ratio) + '\n';
  }
  return out;
}

/// N,engine_cost,clifford_cost
inline std::string speedup_to_csv(std::span<const SpeedupRow> rows) {
  std::string out = "N,engine_cost,clifford_cost\n";
  for (const auto& r : rows)
    out += std::to_string(r.modes) + ',' + std::to_string(r.engine_cost) + ',' + std::to_string(r.clifford_cost) + '\n';
  return out;
}

// ---- chain report --------------------------------------------------------

inline json chain_report_json(const ChainConfig& cfg, const ChainStats& stats) {
  json cps = json::array();
  for (const auto& c : stats.checkpoints) cps.push_back(json{{"step", c.step}, {"cosine_distance", c.cosine_distance}});
  return json{{"steps", cfg.steps},
              {"burn_in", cfg.burn_in},
              {"seed", cfg.seed},
              {"acceptance_rate", stats.acceptance_rate()},
              {"checkpoints", std::move(cps)},
              {"empirical", distribution_to_json(stats.empirical)}};
}

}  // namespace bosonfft::io
