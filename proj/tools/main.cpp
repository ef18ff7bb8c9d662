#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbcast/budget.hpp"
#include "mbcast/netgen.hpp"
#include "mbcast/protocols.hpp"
#include "mbcast/schedule.hpp"
#include "mbcast/selectors.hpp"

using json = nlohmann::json;
using namespace mbc;

namespace {

constexpr int kExitOk = 0, kExitIncomplete = 1, kExitViolation = 2, kExitConfig = 3;

struct SinrCli {
  double alpha = 3.0, beta = 1.0, noise = 1.0, epsilon = 0.5, power = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--alpha", alpha, "path-loss exponent");
    app->add_option("--beta", beta, "SINR threshold");
    app->add_option("--noise", noise, "ambient noise power");
    app->add_option("--epsilon", epsilon, "weak-device sensitivity margin");
    app->add_option("--power", power, "uniform transmission power");
  }
  SinrParams params() const {
    SinrParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.noise = noise;
    p.epsilon = epsilon;
    p.power = power;
    p.validate();
    return p;
  }
};

struct RunCfg {
  std::string protocol;
  std::string instance_file;
  uint32_t n = 20, N = 0, k = 1, limit = 2000000;
  double side = 1.5, min_sep = 0.0;
  uint64_t seed = 1, rumor_seed = 0;
  bool audit = true;
  std::string out, csv, trace_out;
};

NetworkInstance make_instance(const RunCfg& c, const SinrParams& p) {
  if (!c.instance_file.empty()) return load_net(c.instance_file);
  double sep = c.min_sep > 0 ? c.min_sep : p.range() / 10;
  return gen_random(c.n, c.side, sep, c.seed, p, c.N);
}

std::map<StationId, std::vector<uint32_t>> make_sources(const NetworkInstance& net, uint32_t k,
                                                        uint64_t rumor_seed) {
  std::vector<StationId> ids;
  for (const auto& st : net.stations) ids.push_back(st.id);
  std::mt19937_64 rng(rumor_seed ? rumor_seed : 0x5eed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<StationId, std::vector<uint32_t>> src;
  for (uint32_t i = 0; i < k && i < ids.size(); ++i) src[ids[i]] = {i + 1};
  return src;
}

struct RunOutcome {
  json record;
  std::string csv_row;
  int exit_code = kExitOk;
};

RunOutcome run_one(const RunCfg& c, const SinrParams& p) {
  RunOutcome out;
  auto proto = protocol_by_name(c.protocol);
  auto net = make_instance(c, p);
  auto m = compute_metrics(net, p);
  auto src = make_sources(net, std::min<uint32_t>(c.k, net.n()), c.rumor_seed);
  EngineOptions opt;
  opt.limit = c.limit;
  opt.record_trace = c.audit || !c.trace_out.empty();
  auto res = run_protocol(net, p, proto, src, opt);

  std::string audit_err;
  if (c.audit) audit_err = audit_trace(net, p, res.trace);

  double bc = 0.0, bf = 0.0;
  try {
    bc = budget_constant(c.protocol);
    bf = budget_formula(c.protocol, net.n(), src.size(), m, net.N);
  } catch (const std::invalid_argument&) {
    // foil protocols carry no fitted budget
  }
  out.record = {{"schema", 1},
                {"protocol", c.protocol},
                {"n", net.n()},
                {"N", net.N},
                {"k", src.size()},
                {"D", m.D},
                {"Delta", m.Delta},
                {"g", m.g},
                {"connected", m.connected},
                {"seed", c.seed},
                {"rumor_seed", c.rumor_seed},
                {"limit", c.limit},
                {"rounds", res.rounds},
                {"completed", res.completed},
                {"terminated", res.terminated},
                {"budget_constant", bc},
                {"budget_formula", bf},
                {"audit", audit_err}};
  std::ostringstream row;
  row << c.protocol << ',' << net.n() << ',' << net.N << ',' << src.size() << ',' << m.D << ','
      << m.Delta << ',' << m.g << ',' << c.seed << ',' << res.rounds << ','
      << (res.completed ? 1 : 0);
  out.csv_row = row.str();

  if (!c.trace_out.empty()) {
    std::ofstream tf(c.trace_out);
    write_trace(tf, res.trace);
  }
  if (!audit_err.empty())
    out.exit_code = kExitViolation;
  else if (!res.completed || !res.terminated)
    out.exit_code = kExitIncomplete;
  return out;
}

void emit(const RunOutcome& r, const RunCfg& c) {
  std::cout << r.record.dump() << "\n";
  if (!c.out.empty()) {
    std::ofstream f(c.out, std::ios::app);
    f << r.record.dump() << "\n";
  }
  if (!c.csv.empty()) {
    bool fresh = !std::ifstream(c.csv).good();
    std::ofstream f(c.csv, std::ios::app);
    if (fresh) f << "protocol,n,N,k,D,Delta,g,seed,rounds,completed\n";
    f << r.csv_row << "\n";
  }
}

void attach_run_opts(CLI::App* cmd, RunCfg& cfg) {
  cmd->add_option("--protocol", cfg.protocol, "protocol name")->required();
  cmd->add_option("--instance", cfg.instance_file, "instance file (NET format)");
  cmd->add_option("--n", cfg.n, "station count for the random generator");
  cmd->add_option("--N", cfg.N, "id-space bound (0 = smallest power of two >= 2n)");
  cmd->add_option("--side", cfg.side, "square side for the random generator");
  cmd->add_option("--min-sep", cfg.min_sep, "minimum pairwise separation (0 = range/10)");
  cmd->add_option("--seed", cfg.seed, "instance seed");
  cmd->add_option("--k", cfg.k, "number of sources, one rumor each");
  cmd->add_option("--rumor-seed", cfg.rumor_seed, "source selection seed");
  cmd->add_option("--limit", cfg.limit, "round limit");
  cmd->add_flag("--audit,!--no-audit", cfg.audit, "replay trace through the reception oracle");
  cmd->add_option("--out", cfg.out, "append NDJSON report records here");
  cmd->add_option("--csv", cfg.csv, "append flat summary rows here");
  cmd->add_option("--trace-out", cfg.trace_out, "write the round trace (JSONL)");
}

uint32_t worker_count() {
  if (const char* env = std::getenv("MBSIM_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR multi-broadcast experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config");
  SinrCli sp;
  sp.attach(&app);

  RunCfg rcfg;
  auto* run_cmd = app.add_subcommand("run", "single protocol execution with report record");
  attach_run_opts(run_cmd, rcfg);

  auto* sweep_cmd = app.add_subcommand("sweep", "Cartesian sweep over axes of run parameters");
  RunCfg scfg;
  attach_run_opts(sweep_cmd, scfg);
  std::vector<std::string> axes;
  sweep_cmd->add_option("--axis", axes, "axis as key=v1,v2,... (keys: n,k,seed,side,protocol)");

  auto* gen_cmd = app.add_subcommand("gen", "emit a network instance file");
  RunCfg gcfg;
  std::string gen_out;
  uint32_t fam_delta = 0, fam_j = 0, chain_delta = 0, chain_d = 0;
  std::vector<uint32_t> chain_js;
  gen_cmd->add_option("--n", gcfg.n, "station count");
  gen_cmd->add_option("--N", gcfg.N, "id-space bound");
  gen_cmd->add_option("--side", gcfg.side, "square side");
  gen_cmd->add_option("--min-sep", gcfg.min_sep, "minimum separation");
  gen_cmd->add_option("--seed", gcfg.seed, "seed");
  gen_cmd->add_option("--family-delta", fam_delta, "single-rumor family row width");
  gen_cmd->add_option("--family-j", fam_j, "single-rumor family top index");
  gen_cmd->add_option("--chain-delta", chain_delta, "chained copies row width");
  gen_cmd->add_option("--chain-d", chain_d, "chained copies eccentricity (odd)");
  gen_cmd->add_option("--chain-js", chain_js, "per-copy top indices");
  gen_cmd->add_option("--out", gen_out, "output path (default stdout)");

  auto* ver_cmd = app.add_subcommand("verify", "invariant suites");
  bool v_selectors = false;
  std::string v_instance, v_backbone, v_constants;
  ver_cmd->add_flag("--selectors", v_selectors, "exhaustive schedule-family grid");
  ver_cmd->add_option("--instance", v_instance, "validate instance file and print metrics");
  ver_cmd->add_option("--backbone", v_backbone, "build and check the backbone of an instance");
  ver_cmd->add_option("--emit-constants", v_constants,
                      "write the fitted per-protocol constant table (NDJSON)");

  auto* adv_cmd = app.add_subcommand("adversary", "candidate-elimination lower-bound game");
  std::string a_proto = "btd-multicast";
  uint32_t a_delta = 8, a_limit = 100000;
  adv_cmd->add_option("--protocol", a_proto, "protocol name or naive-flooding");
  adv_cmd->add_option("--delta", a_delta, "row width (max degree)");
  adv_cmd->add_option("--limit", a_limit, "round limit");

  CLI11_PARSE(app, argc, argv);

  try {
    SinrParams p = sp.params();

    if (*run_cmd) {
      auto r = run_one(rcfg, p);
      emit(r, rcfg);
      return r.exit_code;
    }

    if (*sweep_cmd) {
      std::vector<std::pair<std::string, std::vector<std::string>>> parsed;
      for (const auto& a : axes) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("axis needs key=v1,v2,...");
        std::vector<std::string> vals;
        std::stringstream ss(a.substr(eq + 1));
        for (std::string v; std::getline(ss, v, ',');) vals.push_back(v);
        if (vals.empty()) throw std::invalid_argument("empty axis: " + a);
        parsed.push_back({a.substr(0, eq), vals});
      }
      std::vector<RunCfg> cells{scfg};
      for (const auto& [key, vals] : parsed) {
        std::vector<RunCfg> next;
        for (const auto& base : cells)
          for (const auto& v : vals) {
            RunCfg c = base;
            if (key == "n")
              c.n = std::stoul(v);
            else if (key == "k")
              c.k = std::stoul(v);
            else if (key == "seed")
              c.seed = std::stoull(v);
            else if (key == "side")
              c.side = std::stod(v);
            else if (key == "protocol")
              c.protocol = v;
            else
              throw std::invalid_argument("unknown axis key: " + key);
            next.push_back(c);
          }
        cells = std::move(next);
      }
      std::vector<RunOutcome> results(cells.size());
      std::atomic<size_t> cursor{0};
      auto work = [&] {
        for (size_t i; (i = cursor.fetch_add(1)) < cells.size();) {
          try {
            RunCfg c = cells[i];
            c.out.clear();
            c.csv.clear();
            c.trace_out.clear();
            results[i] = run_one(c, p);
          } catch (const std::exception& e) {
            results[i].record = {{"schema", 1}, {"error", e.what()}};
            results[i].exit_code = kExitConfig;
          }
        }
      };
      std::vector<std::thread> pool;
      for (uint32_t w = 0; w < worker_count(); ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
      int worst = kExitOk;
      for (size_t i = 0; i < results.size(); ++i) {  // deterministic merge order
        emit(results[i], scfg);
        worst = std::max(worst, results[i].exit_code);
      }
      return worst;
    }

    if (*gen_cmd) {
      NetworkInstance net;
      if (fam_delta)
        net = gen_lower_bound_family(fam_delta, fam_j, p);
      else if (chain_delta)
        net = chain_networks(chain_delta, chain_d, chain_js, p);
      else {
        double sep = gcfg.min_sep > 0 ? gcfg.min_sep : p.range() / 10;
        net = gen_random(gcfg.n, gcfg.side, sep, gcfg.seed, p, gcfg.N);
      }
      if (gen_out.empty())
        std::cout << to_text(net, p);
      else
        save_net(net, p, gen_out);
      return kExitOk;
    }

    if (*ver_cmd) {
      bool bad = false;
      if (v_selectors) {
        for (uint32_t N : {8u, 16u, 32u, 64u})
          for (uint32_t x = 1; x <= 8; ++x) {
            auto f = build_ssf(N, x);
            bool ok = verify_ssf(f, N, x) &&
                      f.size() <= kSsfLengthConstant * x * x * std::max(1.0, std::log2(N));
            std::cout << "ssf N=" << N << " x=" << x << " len=" << f.size()
                      << (ok ? " ok" : " FAIL") << "\n";
            bad |= !ok;
          }
        for (uint32_t N : {8u, 16u})
          for (uint32_t x = 1; x <= 6; ++x)
            for (uint32_t y = 1; y <= x; ++y) {
              auto f = build_selector(N, x, y);
              bool ok = verify_selector(f, N, x, y);
              if (y <= x / 2)
                ok = ok && f.size() <= kSelectorLengthConstant * x * std::max(1.0, std::log2(N));
              std::cout << "selector N=" << N << " x=" << x << " y=" << y << " len=" << f.size()
                        << (ok ? " ok" : " FAIL") << "\n";
              bad |= !ok;
            }
      }
      if (!v_instance.empty()) {
        auto net = load_net(v_instance);
        net.validate();
        auto m = compute_metrics(net, p);
        std::cout << json{{"n", net.n()},     {"N", net.N},
                          {"D", m.D},         {"Delta", m.Delta},
                          {"g", m.g},         {"connected", m.connected}}
                         .dump()
                  << "\n";
      }
      if (!v_backbone.empty()) {
        auto net = load_net(v_backbone);
        auto err = verify_backbone(compute_backbone(net, p), net, p);
        if (!err.empty()) {
          std::cout << "backbone: " << err << "\n";
          bad = true;
        } else {
          std::cout << "backbone: ok\n";
        }
      }
      if (!v_constants.empty()) {
        std::ofstream f(v_constants);
        for (auto& proto : protocol_suite())
          f << json{{"schema", 1},
                    {"protocol", proto.name},
                    {"constant", budget_constant(proto.name)}}
                   .dump()
            << "\n";
      }
      return bad ? kExitViolation : kExitOk;
    }

    if (*adv_cmd) {
      ProtocolSpec proto =
          a_proto == "naive-flooding" ? naive_flooding() : protocol_by_name(a_proto);
      auto r = adversary_run(proto, a_delta, p, a_limit);
      uint32_t thr = a_delta / (blocking_count(p) - 1) - 1;
      std::cout << json{{"schema", 1},
                        {"protocol", a_proto},
                        {"delta", a_delta},
                        {"forced_rounds", r.forced_rounds},
                        {"informed", r.informed},
                        {"threshold", thr},
                        {"surviving", r.family_sizes.empty() ? a_delta : r.family_sizes.back()}}
                       .dump()
                << "\n";
      return r.forced_rounds >= thr ? kExitOk : kExitViolation;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitConfig;
}
