#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "scnf/parallel.hpp"
#include "scnf/scnf.hpp"

namespace scnf::cli {

using nlohmann::json;

std::string sha256_file(const std::string& path) {
  const std::string data = io::read_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed for " + path);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

struct Run {
  std::string command;
  std::uint64_t seed = 0;
  bool seeded = false;
  int workers = 1;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::size_t> parse_lags(const std::string& text) {
  std::vector<std::size_t> lags;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) continue;
    std::size_t used = 0;
    const auto v = std::stoull(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("bad lag: " + cell);
    lags.push_back(v);
  }
  if (lags.empty()) throw std::invalid_argument("no lags given");
  return lags;
}

void write_manifest(const Run& run, const json& flags) {
  if (run.outputs.empty()) return;
  json m;
  m["tool"] = "scnf";
  m["version"] = kVersion;
  m["format_version"] = io::kFormatVersion;
  m["subcommand"] = run.command;
  m["flags"] = flags;
  m["seed"] = run.seeded ? json(run.seed) : json(nullptr);
  m["workers"] = run.workers;
  auto digests = [](const std::vector<std::string>& paths) {
    json arr = json::array();
    for (const auto& p : paths) arr.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    return arr;
  };
  m["inputs"] = digests(run.inputs);
  m["outputs"] = digests(run.outputs);
  io::write_file(run.outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

// Collects every option of the chosen subcommand into a JSON object.
json flags_of(const CLI::App* sub) {
  json flags = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto res = opt->results();
    std::string key = opt->get_name();
    if (opt->get_expected_max() == 0)
      flags[key] = true;
    else if (res.size() == 1)
      flags[key] = res.front();
    else
      flags[key] = res;
  }
  return flags;
}

std::string report_json(const LearnResult& res, const std::vector<double>& folds) {
  json nodes = json::array();
  for (std::size_t i = 0; i < res.nodes.size(); ++i) {
    const auto& r = res.nodes[i];
    nodes.push_back({{"node", i + 1},
                     {"s_false", r.s_false},
                     {"s_true", r.s_true},
                     {"s_conflict", r.s_conflict},
                     {"deterministic_clauses", r.deterministic_clauses},
                     {"stochastic_clauses", r.stochastic_clauses},
                     {"neg_log_lik", r.neg_log_lik},
                     {"lambda", r.lambda}});
  }
  json out{{"nodes", nodes}};
  if (!folds.empty()) out["fold_neg_log_lik"] = folds;
  return out.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic CNF networks: learning, conversion and inference", "scnf"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print tool and format versions");

  Run run;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  auto common = [&](CLI::App* sub, bool randomized) {
    auto* s = sub->add_option("--seed", seed, "Random seed");
    if (randomized) s->required();
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::function<void()> action;

  // generate
  auto* gen = app.add_subcommand("generate", "Random PBN from merged random Boolean networks");
  std::size_t nodes = 10, constituents = 2;
  double mean_degree = 4.0;
  std::string out_path;
  gen->add_option("--nodes", nodes, "Node count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--constituents", constituents, "Boolean networks merged")->check(CLI::PositiveNumber);
  gen->add_option("--mean-degree", mean_degree, "Mean Poisson in-degree")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "Model JSON")->required();
  common(gen, true);
  gen->callback([&] {
    action = [&] {
      GenConfig cfg;
      cfg.n = nodes;
      cfg.constituents = constituents;
      cfg.mean_in_degree = mean_degree;
      cfg.seed.value = *seed;
      io::save_model(random_pbn(cfg), out_path);
      run.outputs.push_back(out_path);
    };
  });

  // gen-data
  auto* gd = app.add_subcommand("gen-data", "Simulate training time series from a model");
  std::string model_path;
  std::size_t series = 20, inits = 5, steps = 16;
  gd->add_option("--model", model_path, "Model JSON")->required();
  gd->add_option("--series", series, "Number of time series")->check(CLI::PositiveNumber);
  gd->add_option("--inits", inits, "Distinct initial states")->check(CLI::PositiveNumber);
  gd->add_option("--steps", steps, "Transitions per series");
  gd->add_option("--out", out_path, "Time-series CSV")->required();
  common(gd, true);
  gd->callback([&] {
    action = [&] {
      const auto model = io::load_model(model_path);
      run.inputs.push_back(model_path);
      io::save_series(gen_dataset(model, series, inits, steps, *seed, workers), out_path);
      run.outputs.push_back(out_path);
    };
  });

  // learn
  auto* ln = app.add_subcommand("learn", "Learn an SCNF network from time series");
  std::string data_path, filter_path, report_path, sweep_text;
  std::size_t folds = 0;
  ln->add_option("--data", data_path, "Time-series CSV")->required();
  ln->add_option("--out", out_path, "Learned network JSON")->required();
  ln->add_option("--folds", folds, "Cross-validation folds (0 disables)");
  ln->add_option("--lambda-sweep", sweep_text, "Comma-separated penalty weights");
  ln->add_option("--literal-filter", filter_path, "JSON map node -> allowed nodes");
  ln->add_option("--report", report_path, "Learning report JSON");
  common(ln, true);
  ln->callback([&] {
    action = [&] {
      const auto data = io::load_series(data_path);
      run.inputs.push_back(data_path);
      const std::size_t n = data.front().front().size();
      LearnOptions opt;
      opt.fit.seed = *seed;
      if (!sweep_text.empty()) {
        opt.fit.sweep.clear();
        std::stringstream ss(sweep_text);
        std::string cell;
        while (std::getline(ss, cell, ','))
          if (!cell.empty()) opt.fit.sweep.push_back(std::stod(cell));
        if (opt.fit.sweep.empty()) throw std::invalid_argument("empty lambda sweep");
        for (double v : opt.fit.sweep)
          if (!(v > 0.0)) throw std::invalid_argument("penalty weights must be positive");
      }
      LiteralFilter filter;
      if (!filter_path.empty()) {
        filter = io::load_literal_filter(filter_path, n);
        run.inputs.push_back(filter_path);
      }
      LearnResult result;
      std::vector<double> fold_scores;
      if (folds > 0) {
        auto cv = cross_validate(data, folds, filter, opt, workers);
        result = std::move(cv.final_model);
        fold_scores = std::move(cv.fold_nll);
      } else {
        result = scnfn_learn(build_transition_list(data), n, filter, opt, workers);
      }
      io::save_model(result.network, out_path);
      run.outputs.push_back(out_path);
      if (!report_path.empty()) {
        io::write_file(report_path, report_json(result, fold_scores));
        run.outputs.push_back(report_path);
      }
    };
  });

  // convert
  auto* cv = app.add_subcommand("convert", "Convert between SCNF network and PBN");
  std::string in_path;
  std::size_t max_stochastic = kMaxStochasticForPbn;
  cv->add_option("--in", in_path, "Model JSON")->required();
  cv->add_option("--out", out_path, "Converted model JSON")->required();
  cv->add_option("--max-stochastic", max_stochastic, "Stochastic clauses allowed per node");
  common(cv, false);
  cv->callback([&] {
    action = [&] {
      const auto model = io::load_model(in_path);
      run.inputs.push_back(in_path);
      if (const auto* net = std::get_if<ScnfNetwork>(&model))
        io::save_model(scnfn_to_pbn(*net, max_stochastic), out_path);
      else
        io::save_model(pbn_to_scnfn(std::get<Pbn>(model)), out_path);
      run.outputs.push_back(out_path);
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "Sample trajectories from one initial state");
  std::string init_text;
  std::size_t runs = 1;
  sim->add_option("--model", model_path, "Model JSON")->required();
  sim->add_option("--init", init_text, "Initial state bit string")->required();
  sim->add_option("--steps", steps, "Transitions per trajectory");
  sim->add_option("--runs", runs, "Number of trajectories")->check(CLI::PositiveNumber);
  sim->add_option("--out", out_path, "Time-series CSV")->required();
  common(sim, true);
  sim->callback([&] {
    action = [&] {
      const auto model = io::load_model(model_path);
      run.inputs.push_back(model_path);
      const auto s0 = State::from_string(init_text);
      if (s0.size() != model_size(model)) throw std::invalid_argument("initial state width does not match the model");
      Dataset data(runs);
      parallel_for(runs, workers, [&](std::size_t j) {
        StreamRng rng(*seed, {stream::kTrajectory, 0, j});
        data[j] = trajectory(model, s0, steps, rng);
      });
      io::save_series(data, out_path);
      run.outputs.push_back(out_path);
    };
  });

  // infer
  auto* inf = app.add_subcommand("infer", "Monte Carlo k-step node probabilities");
  std::string init_file, acf_path, lags_text = "0,1,10,100,1000,2000";
  std::size_t random_inits = 0, samples = 5000;
  unsigned k = 2;
  inf->add_option("--model", model_path, "Model JSON")->required();
  auto* o_init = inf->add_option("--init", init_text, "Initial state bit string");
  auto* o_file = inf->add_option("--init-file", init_file, "File with one bit string per line");
  auto* o_rand = inf->add_option("--random", random_inits, "Number of random initial states");
  o_init->excludes(o_file)->excludes(o_rand);
  o_file->excludes(o_rand);
  inf->add_option("--steps", k, "Steps k")->check(CLI::PositiveNumber);
  inf->add_option("--samples", samples, "Trajectories M per initial state")->check(CLI::PositiveNumber);
  inf->add_option("--out", out_path, "Estimates CSV")->required();
  inf->add_option("--acf", acf_path, "Autocorrelation report CSV");
  inf->add_option("--lags", lags_text, "Comma-separated lags for --acf");
  common(inf, false);
  inf->callback([&] {
    if (!seed) throw CLI::RequiredError("--seed");
    if (o_init->count() + o_file->count() + o_rand->count() == 0)
      throw CLI::RequiredError("one of --init, --init-file, --random");
    action = [&] {
      const auto model = io::load_model(model_path);
      run.inputs.push_back(model_path);
      const std::size_t n = model_size(model);
      std::vector<State> starts;
      if (!init_text.empty()) {
        starts.push_back(State::from_string(init_text));
      } else if (!init_file.empty()) {
        std::ifstream in(init_file);
        if (!in) throw std::runtime_error("cannot open " + init_file);
        starts = io::read_states(in);
        run.inputs.push_back(init_file);
      } else {
        starts = random_states(n, random_inits, *seed);
      }
      if (starts.empty()) throw std::invalid_argument("no initial states");
      for (const auto& s : starts)
        if (s.size() != n) throw std::invalid_argument("initial state width does not match the model");
      std::ostringstream csv;
      csv << "init,node,estimate\n";
      for (std::size_t r = 0; r < starts.size(); ++r) {
        const auto est = estimate_node_probs(model, starts[r], k, samples, {*seed, stream::kTrajectory, r}, workers);
        for (std::size_t i = 0; i < n; ++i)
          csv << starts[r].to_string() << ",x" << i + 1 << ',' << fmt(est.per_node[i]) << '\n';
      }
      io::write_file(out_path, csv.str());
      run.outputs.push_back(out_path);
      if (!acf_path.empty()) {
        const auto rep = acf_diagnostic(model, starts, k, samples, parse_lags(lags_text), *seed, workers);
        std::ostringstream acf;
        acf << "lag,rho\n";
        for (std::size_t l = 0; l < rep.lags.size(); ++l) acf << rep.lags[l] << ',' << fmt(rep.rho[l]) << '\n';
        io::write_file(acf_path, acf.str());
        run.outputs.push_back(acf_path);
        for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
      }
    };
  });

  // exact
  auto* ex = app.add_subcommand("exact", "Exact transition matrix, diagram and marginals");
  std::string matrix_path, diagram_path, marginals_path;
  unsigned exact_k = 1;
  ex->add_option("--model,--net", model_path, "Model JSON")->required();
  ex->add_option("--matrix", matrix_path, "k-step matrix CSV");
  ex->add_option("--diagram", diagram_path, "k-step transition diagram DOT");
  ex->add_option("--marginals", marginals_path, "Node marginals CSV (needs --init)");
  ex->add_option("--init", init_text, "Initial state for --marginals");
  ex->add_option("--k", exact_k, "Steps")->check(CLI::PositiveNumber);
  common(ex, false);
  ex->callback([&] {
    if (matrix_path.empty() && diagram_path.empty() && marginals_path.empty())
      throw CLI::RequiredError("one of --matrix, --diagram, --marginals");
    if (!marginals_path.empty() && init_text.empty()) throw CLI::RequiredError("--init");
    action = [&] {
      const auto model = io::load_model(model_path);
      run.inputs.push_back(model_path);
      auto tm = std::visit(
          [&](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, Pbn>)
              return pbn_transition_matrix(m, workers);
            else
              return scnf_transition_matrix(m, workers);
          },
          model);
      const auto tk = exact_k == 1 ? tm : k_step(tm, exact_k);
      if (!matrix_path.empty()) {
        io::write_file(matrix_path, to_csv(tk));
        run.outputs.push_back(matrix_path);
      }
      if (!diagram_path.empty()) {
        io::write_file(diagram_path, to_dot(transition_diagram(tk)));
        run.outputs.push_back(diagram_path);
      }
      if (!marginals_path.empty()) {
        const auto from = State::from_string(init_text);
        const auto probs = node_true_marginals(tm, from, exact_k);
        std::ostringstream csv;
        csv << "node,probability\n";
        for (std::size_t i = 0; i < probs.size(); ++i) csv << 'x' << i + 1 << ',' << fmt(probs[i]) << '\n';
        io::write_file(marginals_path, csv.str());
        run.outputs.push_back(marginals_path);
      }
    };
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Prediction fidelity of a learned model");
  std::string ref_path, learned_path;
  std::size_t eval_runs = 400;
  unsigned eval_steps = 100;
  std::size_t eval_inits = 200;
  ev->add_option("--reference", ref_path, "Reference model JSON")->required();
  ev->add_option("--learned", learned_path, "Learned model JSON")->required();
  ev->add_option("--inits", eval_inits, "Initial states R")->check(CLI::PositiveNumber);
  ev->add_option("--runs", eval_runs, "Simulations M per initial state")->check(CLI::PositiveNumber);
  ev->add_option("--steps", eval_steps, "Steps K")->check(CLI::PositiveNumber);
  ev->add_option("--out", out_path, "Fidelity CSV")->required();
  common(ev, true);
  ev->callback([&] {
    action = [&] {
      const auto ref = io::load_model(ref_path);
      const auto learned = io::load_model(learned_path);
      run.inputs = {ref_path, learned_path};
      const auto rep = fidelity(ref, learned, eval_inits, eval_runs, eval_steps, *seed, workers);
      std::ostringstream csv;
      csv << "k,deltaBar,sigma,sigmaBar\n";
      for (const auto& p : rep.points)
        csv << p.k << ',' << fmt(p.delta_bar) << ',' << fmt(p.sigma) << ',' << fmt(p.sigma_bar) << '\n';
      io::write_file(out_path, csv.str());
      run.outputs.push_back(out_path);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: usage: " << msg << '\n';
    return 2;
  }

  if (version) {
    out << "scnf " << kVersion << " (model format " << io::kFormatVersion << ", series format "
        << io::kFormatVersion << ")\n";
    return 0;
  }
  const auto subs = app.get_subcommands();
  if (subs.empty()) {
    err << "error: usage: no subcommand given\n";
    return 2;
  }
  run.command = subs.front()->get_name();
  run.seeded = seed.has_value();
  run.seed = seed.value_or(0);
  run.workers = workers;
  try {
    action();
    write_manifest(run, flags_of(subs.front()));
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << run.command << ": " << msg << '\n';
    return 1;
  }
  return 0;
}

}  // namespace scnf::cli
