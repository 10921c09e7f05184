// Copyright 2026 The qop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qop/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qop::io {

namespace {

constexpr double kFileTolerance = 1e-8;

bool is_scalar(const Json& j) { return j.is_number() || j.is_boolean() || j.is_null(); }

// Arrays of scalars, or arrays of arrays of scalars, print on one line.
bool is_inline(const Json& j) {
  if (!j.is_array()) return is_scalar(j);
  for (const auto& e : j) {
    if (e.is_object() || e.is_string()) return false;
    if (e.is_array()) {
      for (const auto& f : e) {
        if (!is_scalar(f)) return false;
      }
    }
  }
  return true;
}

void dump_to(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (is_inline(j)) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump_to(os, j[i], depth + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << inner;
        dump_to(os, j[i], depth + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        os << inner << Json(key).dump() << ": ";
        dump_to(os, value, depth + 1);
        os << (++i < j.size() ? ",\n" : "\n");
      }
      os << pad << '}';
      return;
    }
    default:
      os << j.dump();
  }
}

std::size_t get_dim(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() < 0) {
    throw ParseError(std::string("missing or invalid integer field '") + key + "'");
  }
  return j.at(key).get<std::size_t>();
}

void check_version(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("format_version") || j.at("format_version") != kFormatVersion) {
    throw ParseError("unsupported or missing format_version (expected 1)");
  }
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string out = buf;
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string dump(const Json& value) {
  std::ostringstream os;
  dump_to(os, value, 0);
  os << '\n';
  return os.str();
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
    throw ParseError("matrix must be a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (!all_finite(m)) throw ParseError("matrix entries must be finite");
  return m;
}

Json channel_to_json(const Channel& ch, Representation rep) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["d_in"] = ch.d_in();
  j["d_out"] = ch.d_out();
  if (rep == Representation::kKraus) {
    Json ops = Json::array();
    for (const auto& e : ch.kraus().operators()) ops.push_back(matrix_to_json(e));
    j["kraus"] = std::move(ops);
  } else {
    j["choi"] = matrix_to_json(ch.choi().matrix());
  }
  return j;
}

Channel channel_from_json(const Json& j) {
  check_version(j);
  const std::size_t d_in = get_dim(j, "d_in");
  const std::size_t d_out = get_dim(j, "d_out");
  if (d_in == 0 || d_out == 0) throw ParseError("dimensions must be positive");
  const bool has_kraus = j.contains("kraus");
  const bool has_choi = j.contains("choi");
  if (has_kraus == has_choi) throw ParseError("exactly one of 'kraus' or 'choi' is required");
  if (has_kraus) {
    if (!j.at("kraus").is_array() || j.at("kraus").empty()) {
      throw ParseError("'kraus' must be a non-empty list of matrices");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto& m : j.at("kraus")) ops.push_back(matrix_from_json(m));
    return Channel::from_kraus(KrausSet::create(d_in, d_out, std::move(ops), kFileTolerance));
  }
  return Channel::from_choi(
      ChoiMatrix::create(d_in, d_out, matrix_from_json(j.at("choi")), kFileTolerance, kFileTolerance));
}

std::string write_channel(const Channel& ch, Representation rep) { return dump(channel_to_json(ch, rep)); }

Channel read_channel(const std::string& text) { return channel_from_json(parse(text)); }

Json state_to_json(const DensityMatrix& rho) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j;
}

DensityMatrix state_from_json(const Json& j) {
  check_version(j);
  const std::size_t dim = get_dim(j, "dim");
  if (!j.contains("matrix")) throw ParseError("missing 'matrix'");
  ComplexMatrix m = matrix_from_json(j.at("matrix"));
  if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
    throw ParseError("'matrix' must be dim x dim");
  }
  Tolerances tol;
  tol.hermiticity = kFileTolerance;
  tol.trace = kFileTolerance;
  tol.psd = kFileTolerance;
  return DensityMatrix(std::move(m), tol);
}

Json dilation_to_json(const Dilation& dil) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["d_in"] = dil.d_in();
  j["d_fin"] = dil.d_fin();
  j["d_env"] = dil.d_env();
  j["unitary"] = matrix_to_json(dil.unitary());
  j["env_state"] = matrix_to_json(dil.env_state().matrix());
  return j;
}

Dilation dilation_from_json(const Json& j) {
  check_version(j);
  const std::size_t d_in = get_dim(j, "d_in");
  const std::size_t d_fin = get_dim(j, "d_fin");
  const std::size_t d_env = get_dim(j, "d_env");
  if (!j.contains("unitary") || !j.contains("env_state")) {
    throw ParseError("dilation needs 'unitary' and 'env_state'");
  }
  Tolerances tol;
  tol.hermiticity = kFileTolerance;
  tol.trace = kFileTolerance;
  tol.psd = kFileTolerance;
  return Dilation::create(d_in, d_fin, d_env, matrix_from_json(j.at("unitary")),
                          DensityMatrix(matrix_from_json(j.at("env_state")), tol), kFileTolerance);
}

Json to_json(const NonRealizabilityCertificate& cert) {
  Json j;
  j["claim"] = to_string(cert.claim);
  j["rank_tested"] = cert.rank_tested;
  j["vectors_required"] = cert.vectors_required;
  j["dimension_available"] = cert.dimension_available;
  j["decoherence_contradiction"] = cert.decoherence_contradiction;
  j["d2_branch_used"] = cert.d2_branch_used;
  Json counts = Json::array();
  for (const auto& rc : cert.rank_counts) {
    Json c;
    c["rank"] = rc.rank;
    c["vectors_required"] = rc.vectors_required;
    c["dimension_available"] = rc.dimension_available;
    c["excluded"] = rc.excluded;
    counts.push_back(std::move(c));
  }
  j["rank_counts"] = std::move(counts);
  j["narrative"] = cert.narrative;
  return j;
}

Json to_json(const SearchResult& result) {
  Json j;
  j["verdict"] = to_string(result.verdict);
  j["best_residual"] = result.best_residual;
  j["best_restart"] = result.best_restart;
  j["best_env_spectrum"] = std::vector<double>(result.best_env_spectrum.data(),
                                               result.best_env_spectrum.data() + result.best_env_spectrum.size());
  j["best_unitary"] = matrix_to_json(result.best_unitary);
  j["residual_history"] = result.residual_history;
  j["note"] = "LIKELY_NOT_REALIZABLE is numerical evidence from a local search, not a proof.";
  return j;
}

Json to_json(const PerturbationReport& report) {
  Json j;
  j["radius"] = report.radius;
  j["n_samples"] = report.n_samples;
  j["fraction_likely_not_realizable"] = report.fraction_likely_not_realizable;
  j["counts"] = Json{{"REALIZED", report.realized},
                     {"LIKELY_NOT_REALIZABLE", report.likely_not_realizable},
                     {"UNDECIDED", report.undecided}};
  j["residual_stats"] = Json{{"min", report.residual_min},
                             {"max", report.residual_max},
                             {"mean", report.residual_mean},
                             {"median", report.residual_median}};
  Json samples = Json::array();
  for (const auto& s : report.samples) {
    samples.push_back(Json{{"weight", s.weight}, {"residual", s.residual}, {"verdict", to_string(s.verdict)}});
  }
  j["samples"] = std::move(samples);
  j["note"] = report.note;
  return j;
}

Json to_json(const SearchConfig& cfg) {
  Json j;
  j["restarts"] = cfg.restarts;
  j["max_iters"] = cfg.max_iters;
  j["seed"] = cfg.seed;
  j["step_tolerance"] = cfg.step_tolerance;
  j["realizable_threshold"] = cfg.realizable_threshold;
  j["nonrealizable_threshold"] = cfg.nonrealizable_threshold;
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace qop::io
