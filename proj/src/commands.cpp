// Copyright 2026 The hypinit Authors.
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
#include "hypinit/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "hypinit/data.hpp"
#include "hypinit/differentiation.hpp"
#include "hypinit/distributions.hpp"
#include "hypinit/es_hyperopt.hpp"
#include "hypinit/parallel.hpp"
#include "hypinit/scoring.hpp"
#include "hypinit/simd/kernels.hpp"
#include "hypinit/tasks.hpp"

namespace hypinit {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json RunRecord::hashable() const {
  return Json{{"version", kVersion},
              {"command", command},
              {"config", config},
              {"results", results}};
}

std::string RunRecord::content_hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(hashable().dump())));
  return buf;
}

Json RunRecord::to_json() const {
  Json j = hashable();
  j["content_hash"] = content_hash();
  j["runtime"] = runtime;
  return j;
}

namespace {

constexpr std::uint64_t tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Context {
  const Json &config;
  Prng master;
  int workers;
  Family family;
  double beta_scale;

  explicit Context(const Json &cfg)
      : config(cfg), master(cfg.at("seed").get<std::uint64_t>()),
        workers(cfg.at("runtime").at("workers").get<int>()),
        family(parse_family(
            cfg.at("distribution").at("family").get<std::string>())),
        beta_scale(cfg.at("distribution").at("beta_scale").get<double>()) {
    if (workers < 1) {
      throw Error("runtime.workers must be >= 1");
    }
    if (!(beta_scale > 0.0)) {
      throw Error("distribution.beta_scale must be > 0");
    }
  }
};

bool is_score_method(const std::string &method) {
  return method == "S1" || method == "S2" || method == "S3";
}

void check_method(const std::string &method) {
  if (!is_score_method(method) && method != "manual" && method != "uniform") {
    throw Error("unknown method '" + method +
                "' (expected S1, S2, S3, manual or uniform)");
  }
}

ScoreSpec score_spec(const Json &cfg, const std::string &kind) {
  const Json &s = cfg.at("score");
  ScoreSpec spec;
  spec.kind = parse_score_kind(kind);
  spec.omega = parse_omega_kind(s.at("omega").get<std::string>());
  spec.t = s.at("t").get<int>();
  spec.w = s.at("w").get<double>();
  spec.eps = s.at("eps").get<double>();
  spec.k_eigs = s.at("k_eigs").get<int>();
  spec.harmonic_scale = s.at("harmonic_scale").get<double>();
  spec.validate();
  return spec;
}

EsConfig es_config(const Context &ctx) {
  const Json &e = ctx.config.at("es");
  EsConfig cfg;
  cfg.eta = e.at("eta").get<double>();
  cfg.sigma = e.at("sigma").get<double>();
  cfg.n_samples = e.at("n_samples").get<int>();
  cfg.n_iters = e.at("n_iters").get<int>();
  cfg.eps_converge = e.at("eps_converge").get<double>();
  cfg.antithetic = e.at("antithetic").get<bool>();
  cfg.use_utility = e.at("use_utility").get<bool>();
  cfg.workers = ctx.workers;
  cfg.validate();
  return cfg;
}

HyperParams initial_hyper(const Context &ctx) {
  const Json &init = ctx.config.at("es").at("init");
  if (init.is_null()) {
    Prng rng = ctx.master.derive({tag("init")});
    return init_guess(ctx.family, rng);
  }
  const auto v = init.get<std::vector<double>>();
  if (v.size() != 2) {
    throw Error("es.init needs two values");
  }
  return ctx.family == Family::Beta ? HyperParams::beta(v[0], v[1])
                                    : HyperParams::gaussian(v[0], v[1]);
}

Circuit build_ansatz(const Context &ctx, int layers, int qubits,
                     const std::string &kind) {
  if (kind == "strongly_entangling") {
    return build_strongly_entangling(layers, qubits);
  }
  if (kind == "hea") {
    return build_hea(layers, qubits);
  }
  if (kind == "two_design") {
    return build_two_design(
        layers, qubits,
        ctx.master.derive({tag("two_design"), static_cast<std::uint64_t>(qubits)})
            .next_u64());
  }
  throw Error("unknown ansatz.kind '" + kind +
              "' (expected strongly_entangling, hea or two_design)");
}

Observable cost_observable(const Context &ctx, int qubits) {
  const auto z = ctx.config.at("cost").at("z_qubits").get<std::vector<int>>();
  for (int q : z) {
    if (q < 0 || q >= qubits) {
      throw Error("cost.z_qubits entry " + std::to_string(q) +
                  " outside a " + std::to_string(qubits) + "-qubit register");
    }
  }
  return Observable::z_product(qubits, z);
}

/// |0...0><0...0| = prod_i (I + Z_i) / 2, expanded over all Z subsets.
Observable zero_projector(int qubits) {
  if (qubits > 12) {
    throw Error("projector cost limited to 12 qubits");
  }
  const std::size_t count = std::size_t{1} << qubits;
  std::vector<PauliTerm> terms;
  terms.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::string word(qubits, 'I');
    for (int q = 0; q < qubits; ++q) {
      if (mask >> q & 1U) {
        word[q] = 'Z';
      }
    }
    terms.push_back({1.0 / static_cast<double>(count), std::move(word)});
  }
  return Observable(qubits, std::move(terms));
}

Json hyper_json(const HyperParams &hp) {
  Json j{{"family", to_string(hp.family())}};
  const auto names = hp.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    j[names[i]] = hp.constrained()[i];
  }
  return j;
}

Json trace_json(const EsTrace &trace, const HyperParams &hp0) {
  const auto names = hp0.names();
  Json iters = Json::array();
  for (const auto &it : trace.iterations) {
    Json lambda = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) {
      lambda[names[i]] = it.constrained[i];
    }
    iters.push_back({{"iteration", it.iteration},
                     {"lambda", lambda},
                     {"unconstrained", it.unconstrained},
                     {"mean_score", it.mean_score},
                     {"best_score", it.best_score},
                     {"delta_l1", it.delta_l1}});
  }
  return {{"converged", trace.converged}, {"iterations", iters}};
}

std::string trace_csv(const EsTrace &trace, const HyperParams &hp0) {
  std::string out = "iter";
  for (const auto &name : hp0.names()) {
    out += "," + name;
  }
  out += ",mean_score,best_score,delta_l1\n";
  for (const auto &it : trace.iterations) {
    out += std::to_string(it.iteration);
    for (double v : it.constrained) {
      out += "," + fmt_double(v);
    }
    out += "," + fmt_double(it.mean_score) + "," + fmt_double(it.best_score) +
           "," + fmt_double(it.delta_l1) + "\n";
  }
  return out;
}

struct MethodHyper {
  HyperParams hp;
  Json json;
  std::string trace_csv;
};

/// lambda* for a method: ES for score methods, fixed values otherwise.
MethodHyper method_hyper(const Context &ctx, const std::string &method,
                         const Circuit &ansatz, const Objective *objective,
                         std::uint64_t stream) {
  check_method(method);
  if (method == "manual") {
    HyperParams hp = manual_baseline(ctx.family);
    return {hp, {{"method", method}, {"lambda_star", hyper_json(hp)}}, {}};
  }
  if (method == "uniform") {
    HyperParams hp = uniform_baseline();
    return {hp, {{"method", method}, {"lambda_star", hyper_json(hp)}}, {}};
  }
  const ScoreSpec spec = score_spec(ctx.config, method);
  const EsConfig cfg = es_config(ctx);
  const HyperParams hp0 = initial_hyper(ctx);
  const std::size_t p = ansatz.num_params();
  const double scale = ctx.beta_scale;
  const int draws = ctx.config.at("es").at("theta_draws").get<int>();
  if (draws < 1) {
    throw Error("es.theta_draws must be >= 1");
  }
  RolloutScore rollout = [&, p, scale, draws](const HyperParams &hp,
                                              Prng &rng) {
    double total = 0.0;
    for (int d = 0; d < draws; ++d) {
      const auto theta = sample_params(hp, p, rng, scale);
      total += score(theta, ansatz, objective, spec, 1).raw;
    }
    return total / draws;
  };
  const Prng es_master = ctx.master.derive({tag("es"), tag(method), stream});
  EsResult res = es_optimize(rollout, hp0, cfg, es_master);
  Json j{{"method", method},
         {"lambda_initial", hyper_json(hp0)},
         {"lambda_star", hyper_json(res.best)},
         {"es_trace", trace_json(res.trace, hp0)}};
  return {res.best, std::move(j), trace_csv(res.trace, hp0)};
}

std::vector<std::string> methods_from(const Json &list) {
  auto methods = list.get<std::vector<std::string>>();
  if (methods.empty()) {
    throw Error("method list is empty");
  }
  for (const auto &m : methods) {
    check_method(m);
  }
  return methods;
}

std::vector<double> initial_theta(const Context &ctx, const HyperParams &hp,
                                  std::size_t p) {
  Prng rng = ctx.master.derive({tag("theta0")});
  return sample_params(hp, p, rng, ctx.beta_scale);
}

std::string curves_csv(const std::vector<std::pair<std::string,
                                                   std::vector<double>>> &curves) {
  std::string out = "iter,cost,method\n";
  for (const auto &[method, curve] : curves) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      out += std::to_string(i) + "," + fmt_double(curve[i]) + "," + method +
             "\n";
    }
  }
  return out;
}

RunRecord new_record(const char *command, const Json &config) {
  RunRecord r;
  r.command = command;
  r.config = config;
  r.config.erase("runtime");
  return r;
}

} // namespace

RunRecord cmd_hypopt(const Json &config) {
  const Context ctx(config);
  const Json &a = config.at("ansatz");
  const Circuit ansatz = build_ansatz(ctx, a.at("layers").get<int>(),
                                      a.at("qubits").get<int>(),
                                      a.at("kind").get<std::string>());
  const ObservableObjective objective(ansatz,
                                      cost_observable(ctx, ansatz.num_qubits()));
  const std::string method = config.at("score").at("kind").get<std::string>();
  if (!is_score_method(method)) {
    throw Error("score.kind must be S1, S2 or S3");
  }
  MethodHyper mh = method_hyper(ctx, method, ansatz, &objective, 0);
  RunRecord r = new_record("hypopt", config);
  r.results = {{"num_params", ansatz.num_params()},
               {"method", mh.json.at("method")},
               {"lambda_initial", mh.json.at("lambda_initial")},
               {"lambda_star", mh.json.at("lambda_star")},
               {"es_trace", mh.json.at("es_trace")}};
  r.sidecars["es_trace.csv"] = mh.trace_csv;
  return r;
}

RunRecord cmd_vqe(const Json &config) {
  const Context ctx(config);
  VqeTask task = make_vqe_task(
      load_hamiltonian(config.at("vqe").at("hamiltonian").get<std::string>()),
      config.at("ansatz").at("layers").get<int>());
  const ObservableObjective objective(task.circuit, task.hamiltonian);
  const int iters = config.at("train").at("iters").get<int>();
  const double lr = config.at("train").at("lr").get<double>();
  const double threshold = config.at("vqe").at("gap_threshold").get<double>();

  RunRecord r = new_record("vqe", config);
  Json methods = Json::array();
  std::vector<std::pair<std::string, std::vector<double>>> curves;
  for (const auto &method : methods_from(config.at("methods"))) {
    MethodHyper mh = method_hyper(ctx, method, task.circuit, &objective, 0);
    const auto theta0 = initial_theta(ctx, mh.hp, task.circuit.num_params());
    const TrainResult tr = train(objective, theta0, iters, lr, ctx.workers);
    Json first_below = nullptr;
    for (std::size_t i = 0; i < tr.curve.size(); ++i) {
      if (tr.curve[i] - task.exact_ground_energy < threshold) {
        first_below = i;
        break;
      }
    }
    mh.json["curve"] = tr.curve;
    mh.json["final_energy"] = tr.curve.back();
    mh.json["gap"] = tr.curve.back() - task.exact_ground_energy;
    mh.json["first_iter_below_threshold"] = first_below;
    methods.push_back(std::move(mh.json));
    curves.emplace_back(method, tr.curve);
    if (!mh.trace_csv.empty()) {
      r.sidecars["es_trace_" + method + ".csv"] = mh.trace_csv;
    }
  }
  r.results = {{"num_qubits", task.hamiltonian.num_qubits()},
               {"num_params", task.circuit.num_params()},
               {"exact_ground_energy", task.exact_ground_energy},
               {"methods", methods}};
  r.sidecars["curves.csv"] = curves_csv(curves);
  return r;
}

RunRecord cmd_qml(const Json &config) {
  const Context ctx(config);
  const Json &q = config.at("qml");
  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
  const Dataset ds = load_csv(q.at("dataset").get<std::string>(),
                              q.at("label_column").get<std::string>());
  const Split split = split_80_20(ds, seed);
  const auto limit = q.at("train_limit").get<std::size_t>();
  const Dataset train_set =
      ds.subset(stratified_subsample(ds, split.train, limit, seed));
  const Dataset test_set = ds.subset(split.test);

  const PcaModel pca =
      fit_pca(train_set.features, q.at("pca_components").get<std::size_t>());
  const Matrix train_pca = transform(pca, train_set.features);
  const MinMaxScaler scaler = fit_scaler(train_pca);
  QmlTask task = make_qml_task(
      scale_features(scaler, train_pca), train_set.labels,
      scale_features(scaler, transform(pca, test_set.features)),
      test_set.labels, ds.num_classes,
      config.at("ansatz").at("layers").get<int>());

  std::vector<std::size_t> all(train_set.size());
  std::iota(all.begin(), all.end(), 0);
  const auto score_rows = stratified_subsample(
      train_set, all, q.at("score_batch").get<std::size_t>(), seed);
  const QmlObjective score_objective(task, score_rows);
  const QmlObjective objective(task);
  const int iters = config.at("train").at("iters").get<int>();
  const double lr = config.at("train").at("lr").get<double>();

  RunRecord r = new_record("qml", config);
  Json methods = Json::array();
  std::vector<std::pair<std::string, std::vector<double>>> curves;
  for (const auto &method : methods_from(config.at("methods"))) {
    MethodHyper mh =
        method_hyper(ctx, method, task.ansatz, &score_objective, 0);
    const auto theta0 = initial_theta(ctx, mh.hp, task.ansatz.num_params());
    const TrainResult tr = train(objective, theta0, iters, lr, ctx.workers);
    mh.json["curve"] = tr.curve;
    mh.json["final_loss"] = tr.curve.back();
    mh.json["test_accuracy"] = qml_accuracy(task, tr.theta);
    methods.push_back(std::move(mh.json));
    curves.emplace_back(method, tr.curve);
    if (!mh.trace_csv.empty()) {
      r.sidecars["es_trace_" + method + ".csv"] = mh.trace_csv;
    }
  }
  r.results = {{"dataset", ds.name},
               {"num_classes", ds.num_classes},
               {"num_features", ds.dim()},
               {"n_train", train_set.size()},
               {"n_test", test_set.size()},
               {"num_params", task.ansatz.num_params()},
               {"explained_variance", pca.explained_variance},
               {"methods", methods}};
  r.sidecars["curves.csv"] = curves_csv(curves);
  return r;
}

RunRecord cmd_grad_profile(const Json &config) {
  const Context ctx(config);
  const Json &g = config.at("grad_profile");
  const int layers = g.at("layers").get<int>();
  const Circuit circuit = build_hea(layers, g.at("qubits").get<int>());
  const Observable obs = cost_observable(ctx, circuit.num_qubits());
  const int samples = g.at("samples").get<int>();
  const int bins = g.at("bins").get<int>();
  const double delta = g.at("delta").get<double>();
  if (samples < 1 || bins < 1) {
    throw Error("grad_profile.samples and grad_profile.bins must be >= 1");
  }
  const auto hyper = g.at("hyper").get<std::vector<double>>();
  if (hyper.size() != 2) {
    throw Error("grad_profile.hyper needs two values");
  }
  auto make = [&](double shift) {
    return ctx.family == Family::Beta
               ? HyperParams::beta(hyper[0] + shift, hyper[1] + shift)
               : HyperParams::gaussian(hyper[0] + shift, hyper[1] + shift);
  };
  const HyperParams variants[2] = {make(0.0), make(delta)};
  const auto slots = circuit.layer_slots();

  // magnitudes[v][layer] over all samples and slots of that layer
  std::vector<std::vector<std::vector<double>>> magnitudes(
      2, std::vector<std::vector<double>>(layers));
  for (int v = 0; v < 2; ++v) {
    std::vector<Gradient> grads(samples);
    parallel_for(samples, ctx.workers, [&](std::size_t m) {
      Prng rng = ctx.master.derive({tag("grad_profile"), m});
      const auto theta =
          sample_params(variants[v], circuit.num_params(), rng, ctx.beta_scale);
      grads[m] = gradient(circuit, theta, obs, {}, 1);
    });
    for (int l = 0; l < layers; ++l) {
      for (const auto &grad : grads) {
        for (int s : slots[l]) {
          magnitudes[v][l].push_back(std::abs(grad.values[s]));
        }
      }
    }
  }

  std::string csv[2];
  for (auto &c : csv) {
    c = "layer,bin_left,bin_right,density\n";
  }
  Json layer_json = Json::array();
  for (int l = 0; l < layers; ++l) {
    double hi = 0.0;
    for (int v = 0; v < 2; ++v) {
      for (double m : magnitudes[v][l]) {
        hi = std::max(hi, m);
      }
    }
    if (hi <= 0.0) {
      hi = 1.0;
    }
    const double width = hi / bins;
    std::vector<double> density[2];
    for (int v = 0; v < 2; ++v) {
      std::vector<std::size_t> counts(bins, 0);
      for (double m : magnitudes[v][l]) {
        const int b = std::min(bins - 1, static_cast<int>(m / width));
        ++counts[b];
      }
      const double total = static_cast<double>(magnitudes[v][l].size());
      density[v].resize(bins);
      for (int b = 0; b < bins; ++b) {
        density[v][b] = static_cast<double>(counts[b]) / (total * width);
        csv[v] += std::to_string(l) + "," + fmt_double(b * width) + "," +
                  fmt_double((b + 1) * width) + "," +
                  fmt_double(density[v][b]) + "\n";
      }
    }
    double tv = 0.0;
    for (int b = 0; b < bins; ++b) {
      tv += std::abs(density[0][b] - density[1][b]) * width;
    }
    layer_json.push_back({{"layer", l},
                          {"bin_width", width},
                          {"baseline_density", density[0]},
                          {"perturbed_density", density[1]},
                          {"total_variation", 0.5 * tv}});
  }
  RunRecord r = new_record("grad-profile", config);
  r.results = {{"num_params", circuit.num_params()},
               {"baseline", hyper_json(variants[0])},
               {"perturbed", hyper_json(variants[1])},
               {"layers", layer_json}};
  r.sidecars["histogram_baseline.csv"] = csv[0];
  r.sidecars["histogram_perturbed.csv"] = csv[1];
  return r;
}

RunRecord cmd_bp_scan(const Json &config) {
  const Context ctx(config);
  const Json &b = config.at("bp_scan");
  const auto qubit_counts = b.at("qubits").get<std::vector<int>>();
  const int layers = b.at("layers").get<int>();
  const int samples = b.at("samples").get<int>();
  if (samples < 2) {
    throw Error("bp_scan.samples must be >= 2");
  }
  if (qubit_counts.size() < 2) {
    throw Error("bp_scan.qubits needs at least two sizes");
  }
  const auto methods = methods_from(b.at("methods"));
  const std::string cost = b.at("cost").get<std::string>();
  if (cost != "projector" && cost != "z_qubits") {
    throw Error("bp_scan.cost must be 'projector' or 'z_qubits'");
  }

  Json table = Json::array();
  std::string csv = "qubits,method,variance\n";
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  for (int n : qubit_counts) {
    const Circuit ansatz = build_ansatz(ctx, layers, n, "two_design");
    const Observable obs =
        cost == "projector" ? zero_projector(n) : cost_observable(ctx, n);
    const ObservableObjective objective(ansatz, obs);
    const std::size_t p = ansatz.num_params();
    for (const auto &method : methods) {
      MethodHyper mh = method_hyper(ctx, method, ansatz, &objective,
                                    static_cast<std::uint64_t>(n));
      std::vector<double> d0(samples);
      parallel_for(samples, ctx.workers, [&](std::size_t m) {
        Prng rng = ctx.master.derive(
            {tag("bp_scan"), static_cast<std::uint64_t>(n), m});
        auto theta = sample_params(mh.hp, p, rng, ctx.beta_scale);
        const double t0 = theta[0];
        theta[0] = t0 + kShift;
        const double plus = expectation(apply_circuit(ansatz, theta), obs);
        theta[0] = t0 - kShift;
        const double minus = expectation(apply_circuit(ansatz, theta), obs);
        d0[m] = 0.5 * (plus - minus);
      });
      const double mean =
          std::accumulate(d0.begin(), d0.end(), 0.0) / samples;
      double var = 0.0;
      for (double d : d0) {
        var += (d - mean) * (d - mean);
      }
      var /= samples - 1;
      mh.json["qubits"] = n;
      mh.json["variance"] = var;
      mh.json["mean"] = mean;
      table.push_back(std::move(mh.json));
      csv += std::to_string(n) + "," + method + "," + fmt_double(var) + "\n";
      points[method].emplace_back(n, std::log(std::max(var, 1e-300)));
    }
  }
  Json slopes = Json::object();
  for (const auto &method : methods) {
    const auto &pts = points[method];
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto &[x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    slopes[method] = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  RunRecord r = new_record("bp-scan", config);
  r.results = {{"table", table}, {"log_variance_slope", slopes}};
  r.sidecars["bp_table.csv"] = csv;
  return r;
}

RunRecord run_command(std::string_view command, const Json &config) {
  const Json merged = merge_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunRecord record;
  if (command == "hypopt") {
    record = cmd_hypopt(merged);
  } else if (command == "vqe") {
    record = cmd_vqe(merged);
  } else if (command == "qml") {
    record = cmd_qml(merged);
  } else if (command == "grad-profile") {
    record = cmd_grad_profile(merged);
  } else if (command == "bp-scan") {
    record = cmd_bp_scan(merged);
  } else {
    throw Error("unknown command '" + std::string(command) + "'");
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  record.runtime = {{"workers", merged.at("runtime").at("workers")},
                    {"kernels", simd::active_kernels().name},
                    {"wall_seconds", elapsed.count()}};
  return record;
}

void write_record(const RunRecord &record, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string &name, const std::string &text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) {
      throw Error("cannot write " + (dir / name).string());
    }
    out << text;
  };
  write("record.json", record.to_json().dump(2) + "\n");
  for (const auto &[name, text] : record.sidecars) {
    write(name, text);
  }
}

} // namespace hypinit
