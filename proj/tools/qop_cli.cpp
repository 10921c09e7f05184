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

// qop: build, convert, apply and analyze quantum channels from the command line.
//
// Exit codes: 0 success (REALIZED / NOT_REALIZABLE for verdict commands),
// 1 internal error, 2 invalid input, 3 certificate INCONCLUSIVE,
// 4 search LIKELY_NOT_REALIZABLE, 5 search UNDECIDED.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qop/channel.hpp"
#include "qop/counterexample.hpp"
#include "qop/dilation.hpp"
#include "qop/io.hpp"
#include "qop/random.hpp"
#include "qop/realizability.hpp"

namespace {

using qop::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitLikelyNotRealizable = 4;
constexpr int kExitUndecided = 5;

constexpr std::uint64_t kDefaultSeed = 1;

struct Options {
  std::string kind;
  std::size_t d = 0;
  std::size_t d_fin = 0;
  std::string alpha;
  std::string beta;
  std::string rho_target;
  std::string rho_basis;
  std::string dilation;
  std::size_t kraus_rank = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string in;
  std::string state;
  std::string out;
  std::string to = "kraus";
  std::size_t restarts = 50;
  std::size_t max_iters = 2000;
  std::size_t threads = 0;
  double radius = 0.01;
  std::size_t samples = 20;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list");
  return out;
}

// "re" or "re,im".
qop::Complex parse_complex(const std::string& text) {
  const auto parts = parse_list(text);
  if (parts.size() > 2) throw UsageError("complex value must be 're' or 're,im'");
  return {parts[0], parts.size() == 2 ? parts[1] : 0.0};
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    qop::io::write_file_atomic(opt.out, text);
  }
}

qop::io::Representation representation(const std::string& to) {
  if (to == "kraus") return qop::io::Representation::kKraus;
  if (to == "choi") return qop::io::Representation::kChoi;
  throw UsageError("--to must be 'kraus' or 'choi'");
}

qop::Channel load_channel(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  return qop::io::read_channel(qop::io::read_file(path));
}

void require_dims(const Options& opt) {
  if (opt.d == 0 || opt.d_fin == 0) throw UsageError("--d and --d-fin are required");
}

// rho' from --rho-target (eigenvalues) and optional --rho-basis, or from
// --alpha/--beta as |alpha|^2 |0'><0'| + |beta|^2 |1'><1'|.
qop::CounterexampleParams counterexample_params(const Options& opt) {
  require_dims(opt);
  if (!opt.rho_target.empty()) {
    const auto eigenvalues = parse_list(opt.rho_target);
    if (eigenvalues.size() != opt.d_fin) throw UsageError("--rho-target needs d-fin eigenvalues");
    qop::RealVector probs = Eigen::Map<const qop::RealVector>(eigenvalues.data(),
                                                              static_cast<Eigen::Index>(eigenvalues.size()));
    qop::check_distribution(probs);
    qop::ComplexMatrix rho = probs.cast<qop::Complex>().asDiagonal().toDenseMatrix();
    if (!opt.rho_basis.empty()) {
      Json j = qop::io::parse(qop::io::read_file(opt.rho_basis));
      const qop::ComplexMatrix basis = qop::io::matrix_from_json(j.is_object() ? j.at("matrix") : j);
      if (basis.rows() != rho.rows() || !qop::is_unitary(basis, 1e-8)) {
        throw UsageError("--rho-basis must be a unitary d-fin x d-fin matrix");
      }
      rho = basis * rho * basis.adjoint();
      rho = 0.5 * (rho + rho.adjoint());
    }
    return {opt.d, opt.d_fin, qop::DensityMatrix(std::move(rho))};
  }
  if (!opt.alpha.empty() && !opt.beta.empty()) {
    return {opt.d, opt.d_fin,
            qop::implementing_unitary_target(opt.d_fin, parse_complex(opt.alpha), parse_complex(opt.beta))};
  }
  throw UsageError("counterexample needs --rho-target or both --alpha and --beta");
}

qop::SearchConfig search_config(const Options& opt) {
  qop::SearchConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.max_iters = opt.max_iters;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.validate();
  return cfg;
}

Json report(const std::vector<std::string>& argv, Json config, std::uint64_t seed, Json results,
            std::chrono::steady_clock::time_point start) {
  Json j;
  j["command"] = argv;
  j["config"] = std::move(config);
  j["seed"] = seed;
  j["results"] = std::move(results);
  j["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return j;
}

int cmd_build(const Options& opt) {
  const auto rep = representation(opt.to);
  std::optional<qop::Channel> ch;
  if (opt.kind == "counterexample") {
    if (opt.rho_target.empty() && !opt.alpha.empty() && !opt.beta.empty()) {
      require_dims(opt);
      ch = qop::channel_from_dilation(
          qop::implementing_unitary(opt.d, opt.d_fin, parse_complex(opt.alpha), parse_complex(opt.beta)));
    } else {
      ch = qop::build_counterexample(counterexample_params(opt));
    }
  } else if (opt.kind == "random") {
    require_dims(opt);
    qop::Rng rng(opt.seed);
    ch = qop::random_channel(opt.d, opt.d_fin, rng, opt.kraus_rank);
  } else if (opt.kind == "from-dilation") {
    if (opt.dilation.empty()) throw UsageError("from-dilation needs --dilation");
    ch = qop::channel_from_dilation(qop::io::dilation_from_json(qop::io::parse(qop::io::read_file(opt.dilation))));
  } else {
    throw UsageError("unknown kind '" + opt.kind + "'");
  }
  emit(opt, qop::io::write_channel(*ch, rep));
  return kExitOk;
}

int cmd_certify(const Options& opt, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  Json config;
  std::optional<qop::CounterexampleParams> params;
  std::string membership;
  if (!opt.in.empty()) {
    config["input"] = opt.in;
    const qop::FamilyMatch match = qop::match_counterexample_family(load_channel(opt.in));
    params = match.params;
    membership = match.reason;
  } else {
    params = counterexample_params(opt);
  }

  Json results;
  int code = kExitInconclusive;
  if (params) {
    config["d"] = params->d;
    config["d_fin"] = params->d_fin;
    config["rho_target"] = qop::io::matrix_to_json(params->rho_target.matrix());
    const auto cert = qop::certify_nonrealizable(*params);
    results = qop::io::to_json(cert);
    if (cert.claim == qop::CertificateClaim::kNotRealizable) code = kExitOk;
  } else {
    qop::NonRealizabilityCertificate cert;
    cert.narrative.push_back("Channel is not in the counterexample family: " + membership + ".");
    cert.narrative.push_back("No claim is made.");
    results = qop::io::to_json(cert);
  }
  emit(opt, qop::io::dump(report(argv, std::move(config), opt.seed, std::move(results), start)));
  return code;
}

int cmd_search(const Options& opt, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  const qop::SearchConfig cfg = search_config(opt);
  const qop::Channel target = load_channel(opt.in);
  const qop::SearchResult result = qop::search_mixed_env_realization(target, cfg);
  Json config = qop::io::to_json(cfg);
  config["input"] = opt.in;
  emit(opt, qop::io::dump(report(argv, std::move(config), cfg.seed, qop::io::to_json(result), start)));
  switch (result.verdict) {
    case qop::Verdict::kRealized: return kExitOk;
    case qop::Verdict::kLikelyNotRealizable: return kExitLikelyNotRealizable;
    case qop::Verdict::kUndecided: return kExitUndecided;
  }
  return kExitUndecided;
}

int cmd_perturb(const Options& opt, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  const qop::SearchConfig cfg = search_config(opt);
  const qop::Channel center = load_channel(opt.in);
  const auto rep = qop::perturbation_experiment(center, opt.radius, opt.samples, cfg);
  Json config = qop::io::to_json(cfg);
  config["input"] = opt.in;
  config["radius"] = opt.radius;
  config["samples"] = opt.samples;
  emit(opt, qop::io::dump(report(argv, std::move(config), cfg.seed, qop::io::to_json(rep), start)));
  return kExitOk;
}

int cmd_convert(const Options& opt) {
  emit(opt, qop::io::write_channel(load_channel(opt.in), representation(opt.to)));
  return kExitOk;
}

int cmd_apply(const Options& opt) {
  const qop::Channel ch = load_channel(opt.in);
  if (opt.state.empty()) throw UsageError("--state is required");
  const qop::DensityMatrix rho = qop::io::state_from_json(qop::io::parse(qop::io::read_file(opt.state)));
  emit(opt, qop::io::dump(qop::io::state_to_json(qop::apply(ch, rho))));
  return kExitOk;
}

int cmd_params(const Options& opt) {
  if (opt.d == 0 || opt.d_fin == 0) throw UsageError("--d and --d-fin are required");
  emit(opt, std::to_string(qop::parameter_count(static_cast<std::int64_t>(opt.d),
                                                static_cast<std::int64_t>(opt.d_fin))) +
                "\n");
  return kExitOk;
}

void add_dims(CLI::App* cmd, Options& opt) {
  cmd->add_option("--d", opt.d, "Initial system dimension");
  cmd->add_option("--d-fin", opt.d_fin, "Final system dimension");
}

void add_counterexample(CLI::App* cmd, Options& opt) {
  add_dims(cmd, opt);
  cmd->add_option("--alpha", opt.alpha, "Coefficient alpha ('re' or 're,im')");
  cmd->add_option("--beta", opt.beta, "Coefficient beta ('re' or 're,im')");
  cmd->add_option("--rho-target", opt.rho_target, "Eigenvalues of rho' as a comma list");
  cmd->add_option("--rho-basis", opt.rho_basis, "JSON matrix whose columns are the eigenvectors of rho'");
}

void add_search(CLI::App* cmd, Options& opt) {
  cmd->add_option("--restarts", opt.restarts, "Number of restarts")->capture_default_str();
  cmd->add_option("--max-iters", opt.max_iters, "Iterations per restart")->capture_default_str();
  cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  Options opt;
  CLI::App app{"Quantum channel construction and mixed-environment realizability analysis"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "Write a ChannelFile");
  build->add_option("kind", opt.kind, "counterexample | random | from-dilation")->required();
  add_counterexample(build, opt);
  build->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  build->add_option("--kraus-rank", opt.kraus_rank, "Kraus rank of a random channel (0 = d*d_fin)");
  build->add_option("--dilation", opt.dilation, "DilationFile for kind from-dilation");
  build->add_option("--to", opt.to, "kraus | choi")->capture_default_str();
  build->add_option("--out", opt.out, "Output path (default stdout)");

  auto* certify = app.add_subcommand("certify", "Run the analytic non-realizability certificate");
  certify->add_option("--in", opt.in, "ChannelFile to test for family membership");
  add_counterexample(certify, opt);
  certify->add_option("--seed", opt.seed, "Echoed in the report")->capture_default_str();
  certify->add_option("--out", opt.out, "Report path (default stdout)");

  auto* search = app.add_subcommand("search", "Search for a mixed-environment realization");
  search->add_option("--in", opt.in, "Target ChannelFile")->required();
  add_search(search, opt);
  search->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  search->add_option("--out", opt.out, "Report path (default stdout)");

  auto* perturb = app.add_subcommand("perturb", "Search around random perturbations of a channel");
  perturb->add_option("--in", opt.in, "Center ChannelFile")->required();
  perturb->add_option("--radius", opt.radius, "Maximum mixing weight")->capture_default_str();
  perturb->add_option("--samples", opt.samples, "Number of samples")->capture_default_str();
  add_search(perturb, opt);
  perturb->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  perturb->add_option("--out", opt.out, "Report path (default stdout)");

  auto* convert = app.add_subcommand("convert", "Rewrite a ChannelFile in Kraus or Choi form");
  convert->add_option("--in", opt.in, "Input ChannelFile")->required();
  convert->add_option("--to", opt.to, "kraus | choi")->required();
  convert->add_option("--out", opt.out, "Output path (default stdout)");

  auto* apply = app.add_subcommand("apply", "Apply a channel to a StateFile");
  apply->add_option("--in", opt.in, "ChannelFile")->required();
  apply->add_option("--state", opt.state, "StateFile")->required();
  apply->add_option("--out", opt.out, "Output path (default stdout)");

  auto* params = app.add_subcommand("params", "Real parameter count d^2 (d_fin^2 - 1)");
  add_dims(params, opt);
  params->add_option("--out", opt.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*build) return cmd_build(opt);
    if (*certify) return cmd_certify(opt, args);
    if (*search) return cmd_search(opt, args);
    if (*perturb) return cmd_perturb(opt, args);
    if (*convert) return cmd_convert(opt);
    if (*apply) return cmd_apply(opt);
    if (*params) return cmd_params(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qop::io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalid;
}
