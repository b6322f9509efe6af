/* Copyright 2026 The fasta2a Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fasta2a/bounds.hpp"

// fasta2a command-line driver. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fasta2a/fasta2a.h"

namespace {

// Thrown after a C API failure; carries the process exit code.
struct Failure {
  int code;
};

int exit_code_for(fa2a_status st) {
  switch (st) {
    case FA2A_OK:
      return 0;
    case FA2A_ERR_INVARIANT:
      return 3;
    case FA2A_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

void check(fa2a_status st) {
  if (st == FA2A_OK) return;
  std::cerr << "error: " << fa2a_last_error() << "\n";
  throw Failure{exit_code_for(st)};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using TopologyPtr = std::unique_ptr<fa2a_topology, Deleter<fa2a_topology, fa2a_topology_free>>;
using MatrixPtr = std::unique_ptr<fa2a_matrix, Deleter<fa2a_matrix, fa2a_matrix_free>>;
using SchedulePtr = std::unique_ptr<fa2a_schedule, Deleter<fa2a_schedule, fa2a_schedule_free>>;
using ReportPtr = std::unique_ptr<fa2a_report, Deleter<fa2a_report, fa2a_report_free>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  fa2a_string_free(s);
  return out;
}

struct TopoFlags {
  std::string file;
  std::size_t n = 4;
  std::size_t m = 8;
  double b1 = 450e9;
  double b2 = 50e9;
  double alpha = 0.0;

  void add(CLI::App* app) {
    app->add_option("--topo", file, "Topology JSON file {n,m,b1,b2,alpha}; inline flags override it");
    app->add_option("--n", n, "Number of servers")->capture_default_str();
    app->add_option("--m", m, "GPUs per server")->capture_default_str();
    app->add_option("--b1", b1, "Scale-up bandwidth per GPU, bytes/s")->capture_default_str();
    app->add_option("--b2", b2, "Scale-out bandwidth per GPU, bytes/s")->capture_default_str();
    app->add_option("--alpha", alpha, "Wake-up delay per transfer step, seconds")
        ->capture_default_str();
  }

  TopologyPtr build(const CLI::App* app) const {
    std::size_t tn = n, tm = m;
    double tb1 = b1, tb2 = b2, ta = alpha;
    if (!file.empty()) {
      fa2a_topology* raw = nullptr;
      check(fa2a_topology_load(file.c_str(), &raw));
      TopologyPtr base(raw);
      check(fa2a_topology_get(base.get(), &tn, &tm, &tb1, &tb2, &ta));
      if (app->count("--n")) tn = n;
      if (app->count("--m")) tm = m;
      if (app->count("--b1")) tb1 = b1;
      if (app->count("--b2")) tb2 = b2;
      if (app->count("--alpha")) ta = alpha;
    }
    fa2a_topology* raw = nullptr;
    check(fa2a_topology_create(tn, tm, tb1, tb2, ta, &raw));
    return TopologyPtr(raw);
  }
};

struct WorkloadFlags {
  std::string kind = "uniform";
  std::uint64_t seed = 1;
  std::uint64_t mean = 50'000'000;
  double skew = 0.8;
  std::uint64_t total = 0;
  std::uint64_t tile = 1'000'000'000;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "Workload: uniform, zipf or adversarial")
        ->check(CLI::IsMember({"uniform", "zipf", "adversarial"}))
        ->capture_default_str();
    app->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    app->add_option("--mean", mean, "uniform: mean bytes per GPU pair")->capture_default_str();
    app->add_option("--skew", skew, "zipf: skew factor in [0,1)")->capture_default_str();
    app->add_option("--total", total,
                    "zipf: total bytes (default: mean times the number of GPU pairs)");
    app->add_option("--tile", tile, "adversarial: bytes per server pair")->capture_default_str();
  }

  MatrixPtr generate(const fa2a_topology* t, std::uint64_t s) const {
    fa2a_matrix* raw = nullptr;
    if (kind == "uniform") {
      check(fa2a_matrix_gen_uniform(s, t, mean, &raw));
    } else if (kind == "zipf") {
      std::uint64_t bytes = total;
      if (bytes == 0) {
        std::size_t n = 0, m = 0;
        check(fa2a_topology_get(t, &n, &m, nullptr, nullptr, nullptr));
        bytes = mean * (n * m) * (n * m - 1);
      }
      check(fa2a_matrix_gen_zipf(s, t, skew, bytes, &raw));
    } else {
      check(fa2a_matrix_gen_adversarial(t, tile, &raw));
    }
    return MatrixPtr(raw);
  }
};

MatrixPtr load_matrix(const std::string& path) {
  fa2a_matrix* raw = nullptr;
  check(fa2a_matrix_load(path.c_str(), &raw));
  return MatrixPtr(raw);
}

SchedulePtr synthesize(const fa2a_matrix* d, const fa2a_topology* t, fa2a_scheduler which,
                       double* us = nullptr) {
  fa2a_schedule* raw = nullptr;
  check(fa2a_schedule_synthesize(d, t, which, &raw, us));
  return SchedulePtr(raw);
}

ReportPtr simulate(const fa2a_schedule* s, const fa2a_topology* t) {
  fa2a_report* raw = nullptr;
  check(fa2a_simulate(s, t, &raw));
  return ReportPtr(raw);
}

fa2a_scheduler scheduler_from(const std::string& name) {
  return name == "spreadout" ? FA2A_SCHED_SPREADOUT : FA2A_SCHED_FAST;
}

std::string csv_header() {
  char* h = nullptr;
  check(fa2a_csv_header(&h));
  return take(h);
}

void emit_rows(const fa2a_matrix* d, const fa2a_topology* t, std::uint64_t seed,
               const std::vector<std::string>& schedulers) {
  ReportPtr fast_report;
  for (const auto& name : schedulers) {
    char* row = nullptr;
    if (name == "optimal") {
      if (!fast_report) fast_report = simulate(synthesize(d, t, FA2A_SCHED_FAST).get(), t);
      check(fa2a_report_optimal_csv_row(fast_report.get(), seed, &row));
    } else {
      ReportPtr r = simulate(synthesize(d, t, scheduler_from(name)).get(), t);
      check(fa2a_report_csv_row(r.get(), seed, &row));
      if (name == "fast") fast_report = std::move(r);
    }
    std::cout << take(row) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fasta2a: two-tier All-to-Allv schedule synthesis and analytical simulation"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a demand matrix file");
  TopoFlags gen_topo;
  WorkloadFlags gen_work;
  std::string gen_out;
  gen_topo.add(gen);
  gen_work.add(gen);
  gen->add_option("--out", gen_out, "Output path (.json for JSON, CSV otherwise)")->required();

  // schedule
  auto* sched = app.add_subcommand("schedule", "Synthesize a schedule for a demand matrix");
  TopoFlags sched_topo;
  std::string sched_matrix, sched_out, sched_kind = "fast";
  sched_topo.add(sched);
  sched->add_option("--matrix", sched_matrix, "Demand matrix file (CSV or JSON)")->required();
  sched->add_option("--scheduler", sched_kind, "fast or spreadout")
      ->check(CLI::IsMember({"fast", "spreadout"}))
      ->capture_default_str();
  sched->add_option("--out", sched_out, "Schedule JSON output path (stdout when omitted)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate a schedule and report timing and bounds");
  TopoFlags sim_topo;
  std::string sim_schedule;
  sim_topo.add(sim);
  sim->add_option("--schedule", sim_schedule, "Schedule JSON file from 'schedule'")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "CSV rows for fast, spreadout and the optimal bound");
  TopoFlags cmp_topo;
  WorkloadFlags cmp_work;
  std::string cmp_matrix;
  cmp_topo.add(cmp);
  cmp_work.add(cmp);
  cmp->add_option("--matrix", cmp_matrix, "Demand matrix file; generated from workload flags if omitted");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over server counts or bandwidth ratios");
  TopoFlags sw_topo;
  WorkloadFlags sw_work;
  std::vector<std::size_t> sw_servers;
  std::vector<double> sw_ratios;
  std::size_t sw_seeds = 1;
  std::vector<std::string> sw_scheds{"fast"};
  sw_topo.add(sweep);
  sw_work.add(sweep);
  auto* opt_servers =
      sweep->add_option("--servers", sw_servers, "Comma-separated server counts")->delimiter(',');
  auto* opt_ratio =
      sweep->add_option("--ratio", sw_ratios, "Comma-separated B1/B2 ratios (B2 held fixed)")
          ->delimiter(',');
  opt_servers->excludes(opt_ratio);
  sweep->add_option("--seeds", sw_seeds, "Seeds per point, starting at --seed")->capture_default_str();
  sweep->add_option("--schedulers", sw_scheds, "Comma-separated subset of fast,spreadout,optimal")
      ->delimiter(',')
      ->check(CLI::IsMember({"fast", "spreadout", "optimal"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen) {
      TopologyPtr t = gen_topo.build(gen);
      MatrixPtr d = gen_work.generate(t.get(), gen_work.seed);
      check(fa2a_matrix_save(d.get(), gen_out.c_str()));
    } else if (*sched) {
      TopologyPtr t = sched_topo.build(sched);
      MatrixPtr d = load_matrix(sched_matrix);
      double us = 0.0;
      SchedulePtr s = synthesize(d.get(), t.get(), scheduler_from(sched_kind), &us);
      if (sched_out.empty()) {
        char* json = nullptr;
        check(fa2a_schedule_to_json(s.get(), &json));
        std::cout << take(json) << "\n";
        std::cerr << "synthesis_us " << us << "\n";
      } else {
        check(fa2a_schedule_save(s.get(), sched_out.c_str()));
        std::cout << "synthesis_us " << us << "\n";
      }
    } else if (*sim) {
      fa2a_schedule* raw = nullptr;
      check(fa2a_schedule_load(sim_schedule.c_str(), &raw));
      SchedulePtr s(raw);
      // Shape defaults to the schedule's own unless given explicitly.
      std::size_t n = 0, m = 0;
      check(fa2a_schedule_info(s.get(), nullptr, &n, &m, nullptr));
      if (!sim->count("--n")) sim_topo.n = n;
      if (!sim->count("--m")) sim_topo.m = m;
      TopologyPtr t = sim_topo.build(sim);
      ReportPtr r = simulate(s.get(), t.get());
      char* json = nullptr;
      check(fa2a_report_to_json(r.get(), &json));
      std::cout << take(json) << "\n";
    } else if (*cmp) {
      TopologyPtr t = cmp_topo.build(cmp);
      MatrixPtr d = cmp_matrix.empty() ? cmp_work.generate(t.get(), cmp_work.seed)
                                       : load_matrix(cmp_matrix);
      std::cout << csv_header() << "\n";
      emit_rows(d.get(), t.get(), cmp_work.seed, {"fast", "spreadout", "optimal"});
    } else if (*sweep) {
      if (sw_servers.empty() && sw_ratios.empty()) {
        std::cerr << "error: sweep needs --servers or --ratio\n";
        return 2;
      }
      std::cout << csv_header() << "\n";
      const std::size_t points = sw_servers.empty() ? sw_ratios.size() : sw_servers.size();
      for (std::size_t p = 0; p < points; ++p) {
        TopoFlags pt = sw_topo;
        TopologyPtr base = sw_topo.build(sweep);
        check(fa2a_topology_get(base.get(), &pt.n, &pt.m, &pt.b1, &pt.b2, &pt.alpha));
        if (!sw_servers.empty()) pt.n = sw_servers[p];
        if (!sw_ratios.empty()) pt.b1 = sw_ratios[p] * pt.b2;
        fa2a_topology* raw = nullptr;
        check(fa2a_topology_create(pt.n, pt.m, pt.b1, pt.b2, pt.alpha, &raw));
        TopologyPtr t(raw);
        for (std::size_t k = 0; k < sw_seeds; ++k) {
          const std::uint64_t seed = sw_work.seed + k;
          MatrixPtr d = sw_work.generate(t.get(), seed);
          emit_rows(d.get(), t.get(), seed, sw_scheds);
        }
      }
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
