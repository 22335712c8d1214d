// Command-line front end: tauphi <command> [options]. See README for the list.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "tauphi/harness/run.hpp"

namespace {

void on_interrupt(int) { tauphi::interrupt_requested().store(true); }

}  // namespace

int main(int argc, char** argv) {
  using namespace tauphi;
  CLI::App app{"Exact and Monte Carlo experiments on divisors of phi(n) and lambda(n)"};
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  app.option_defaults()->always_capture_default();

  ExperimentConfig cfg;
  std::string command;
  app.add_option("command", command, "sieve|totals|rz|poisson|simplex|sfrak|mc|partition|classes|lemma41|constants")
      ->required();

  auto opt_u64 = [&](const char* name, std::optional<u64>& field, const char* help) {
    app.add_option_function<u64>(name, [&field](const u64& v) { field = v; }, help);
  };
  auto opt_real = [&](const char* name, std::optional<double>& field, const char* help) {
    app.add_option_function<double>(name, [&field](const double& v) { field = v; }, help);
  };
  auto opt_uint = [&](const char* name, std::optional<unsigned>& field, const char* help) {
    app.add_option_function<unsigned>(name, [&field](const unsigned& v) { field = v; }, help);
  };

  opt_u64("--x", cfg.x, "upper limit x");
  opt_real("--z", cfg.z, "roughness parameter z");
  opt_real("--a", cfg.a, "window exponent a (poisson)");
  opt_real("--r", cfg.r, "cube side r (default (v^1.5 ln v)^-1)");
  opt_real("--y", cfg.y, "divisor y (lemma41)");
  opt_real("--A", cfg.A, "partition constant A");
  opt_real("--c", cfg.c, "constant c in v = c sqrt(ln x / ln ln x) (classes)");
  opt_uint("--v", cfg.v, "tuple length v");
  opt_uint("--B_max", cfg.B_max, "largest B reported (poisson)");
  opt_u64("--samples", cfg.samples, "Monte Carlo sample count");
  opt_u64("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--u", cfg.u, "moduli, comma separated")->delimiter(',');
  app.add_option("--q", cfg.q, "window primes for X_q, comma separated")->delimiter(',');
  app.add_option("--at", cfg.at, "totals checkpoints, comma separated (default powers of 10)")->delimiter(',');
  app.add_option("--v_cap", cfg.v_cap, "largest v accepted by mc");
  app.add_flag("--series", cfg.series, "totals: emit x, ratio, envelope");
  app.add_flag("--squarefree", cfg.squarefree, "classes: squarefree tau'' sums instead of class sums");

  app.add_option("--out", cfg.out_path, "output file (CSV; SPF1 binary for sieve)");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--segment-size", cfg.segment_size, "sieve / totals segment length")->check(CLI::PositiveNumber);
  app.add_option("--checkpoint", cfg.checkpoint_path, "checkpoint file (resumed when present)");
  app.add_option_function<u64>("--stop-after-segments", [&](const u64& v) { cfg.stop_after_segments = v; })
      ->group("");

  try {
    app.parse(argc, argv);
    cfg.command = parse_command(command);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  return run(cfg, std::cout, std::cerr);
}
