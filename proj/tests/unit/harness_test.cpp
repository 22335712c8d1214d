#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "tauphi/harness/run.hpp"

using namespace tauphi;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cfg(const ExperimentConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tauphi_harness_test";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

ExperimentConfig make(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  return cfg;
}

// One small config per command.
std::vector<ExperimentConfig> one_of_each() {
  std::vector<ExperimentConfig> out;
  auto c = make(Command::totals);
  c.x = 300'000;
  c.segment_size = 4096;
  out.push_back(c);
  c = make(Command::rz);
  c.x = 50'000;
  c.z = 3;
  c.u = {1, 5};
  out.push_back(c);
  c = make(Command::poisson);
  c.x = 100'000;
  out.push_back(c);
  c = make(Command::simplex);
  c.v = 3;
  out.push_back(c);
  c = make(Command::sfrak);
  c.x = 10'000;
  c.z = 3;
  c.v = 3;
  c.r = 0.1;
  c.u = {5, 1, 1};
  out.push_back(c);
  c = make(Command::mc);
  c.x = 10'000;
  c.z = 5;
  c.v = 2;
  c.r = 0.1;
  c.samples = 5000;
  c.seed = 11;
  out.push_back(c);
  c = make(Command::partition);
  c.x = 30'000;
  c.A = 2;
  out.push_back(c);
  c = make(Command::classes);
  c.x = 30'000;
  c.v = 2;
  out.push_back(c);
  c = make(Command::lemma41);
  c.x = 30'000;
  c.y = 100;
  out.push_back(c);
  out.push_back(make(Command::constants));
  return out;
}

}  // namespace

TEST(Constants, Values) {
  const auto table = constants_table();
  ASSERT_EQ(table.size(), 6u);
  EXPECT_EQ(format_constant(table[1].value), "0.561459483566885");
  EXPECT_EQ(format_constant(euler_gamma()), "0.577215664901533");
  EXPECT_NEAR(b2() / b1_new(), std::sqrt(2.0), 1e-15);
  EXPECT_LT(b1_old(), b1_new());
  EXPECT_LT(b1_new(), b2());
  EXPECT_NEAR(b1_old(), 0.107, 5e-4);
}

TEST(Csv, Formatting) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(25), "25");
  CsvTable t({"a", "b"});
  t.add({"x,y", u128(1) << 100});
  EXPECT_EQ(t.str(), "a,b\n\"x,y\",1267650600228229401496703205376\n");
  EXPECT_THROW(t.add({"only one"}), std::logic_error);
}

TEST(Checkpoint, RoundTripAndRefusals) {
  const Checkpoint c{0x1234, 1, 42, std::string("payload\0bytes", 13)};
  const auto path = scratch("ck.bin");
  save_checkpoint(path, c);
  EXPECT_EQ(load_checkpoint(path, 0x1234), c);
  EXPECT_THROW(load_checkpoint(path, 0x1235), DataCorruptionError);
  auto bytes = encode_checkpoint(c);
  bytes[46] ^= 1;
  EXPECT_THROW(decode_checkpoint(bytes), DataCorruptionError);
  EXPECT_THROW(decode_checkpoint(encode_checkpoint(c).substr(0, 20)), DataCorruptionError);
  EXPECT_THROW(decode_checkpoint("SPF1" + encode_checkpoint(c).substr(4)), DataCorruptionError);
}

TEST(Config, HashTracksOutputParameters) {
  auto a = make(Command::totals);
  a.x = 1000;
  auto b = a;
  b.threads = 8;
  b.out_path = "elsewhere.csv";
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.x = 1001;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.segment_size = 77;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Run, TotalsExample) {
  auto cfg = make(Command::totals);
  cfg.x = 10;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "x,sum_tau_phi,sum_tau_lambda,ratio,exponent_phi,exponent_lambda\n"
            "10,25,24,0.95999999999999996,0.55146368975774107,0.52689523463939103\n");
}

TEST(Run, UsageErrors) {
  auto mc = make(Command::mc);
  mc.x = 1000;
  mc.z = 3;
  mc.v = 2;
  mc.samples = 10;
  const auto r = run_cfg(mc);
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
  EXPECT_EQ(run_cfg(make(Command::totals)).code, kExitUsage);
  auto big_v = mc;
  big_v.seed = 1;
  big_v.v = 9;
  EXPECT_EQ(run_cfg(big_v).code, kExitUsage);
  auto bad_z = make(Command::poisson);
  bad_z.x = 10'000;
  bad_z.z = 1000;
  EXPECT_EQ(run_cfg(bad_z).code, kExitUsage);
  EXPECT_THROW(parse_command("sum"), UsageError);
}

TEST(Run, ResourceErrorForOversizedTable) {
  auto cfg = make(Command::sieve);
  cfg.x = (u64{1} << 32) - 2;
  cfg.out_path = scratch("never.spf").string();
  EXPECT_EQ(run_cfg(cfg).code, kExitResource);
  EXPECT_FALSE(fs::exists(cfg.out_path));
}

TEST(Run, SieveWritesLoadableTable) {
  auto cfg = make(Command::sieve);
  cfg.x = 1000;
  cfg.out_path = scratch("t.spf").string();
  const auto r = run_cfg(cfg);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "lo,hi,prime_count\n2,1001,168\n");
  EXPECT_EQ(load_spf_table(cfg.out_path).spf(999), 3u);
}

TEST(Run, OutputIdenticalAcrossThreadCounts) {
  for (auto cfg : one_of_each()) {
    cfg.threads = 1;
    const auto base = run_cfg(cfg);
    ASSERT_EQ(base.code, kExitOk) << command_name(cfg.command) << ": " << base.err;
    for (unsigned threads : {4u, 8u}) {
      cfg.threads = threads;
      EXPECT_EQ(run_cfg(cfg).out, base.out) << command_name(cfg.command) << " threads=" << threads;
    }
  }
}

TEST(Run, WritesOutFileAtomically) {
  auto cfg = make(Command::totals);
  cfg.x = 1000;
  cfg.out_path = scratch("t.csv").string();
  ASSERT_EQ(run_cfg(cfg).code, kExitOk);
  EXPECT_FALSE(fs::exists(cfg.out_path + ".tmp"));
  EXPECT_EQ(read_file(cfg.out_path).substr(0, 2), "x,");
}

TEST(Run, InterruptAndResumeGiveIdenticalBytes) {
  auto cfg = make(Command::totals);
  cfg.x = 400'000;
  cfg.segment_size = 2000;
  cfg.out_path = scratch("direct.csv").string();
  ASSERT_EQ(run_cfg(cfg).code, kExitOk);
  const auto direct = read_file(cfg.out_path);

  cfg.out_path = scratch("resumed.csv").string();
  cfg.checkpoint_path = scratch("resume.ck").string();
  for (unsigned threads : {1u, 4u, 8u}) {
    fs::remove(cfg.checkpoint_path);
    fs::remove(cfg.out_path);
    cfg.threads = threads;
    cfg.stop_after_segments = 7;
    EXPECT_EQ(run_cfg(cfg).code, kExitInterrupted);
    EXPECT_FALSE(fs::exists(cfg.out_path));
    EXPECT_EQ(decode_checkpoint(read_file(cfg.checkpoint_path)).segment, 6u);
    EXPECT_EQ(run_cfg(cfg).code, kExitInterrupted);  // a second partial leg
    cfg.stop_after_segments.reset();
    cfg.threads = 1 + (threads % 3);
    const auto r = run_cfg(cfg);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("resuming at segment 13"), std::string::npos) << r.err;
    EXPECT_EQ(read_file(cfg.out_path), direct);
    // rerun on the finished checkpoint reproduces the same bytes
    ASSERT_EQ(run_cfg(cfg).code, kExitOk);
    EXPECT_EQ(read_file(cfg.out_path), direct);
  }
}

TEST(Run, RefusesForeignOrCorruptCheckpoint) {
  auto cfg = make(Command::totals);
  cfg.x = 100'000;
  cfg.segment_size = 1000;
  cfg.checkpoint_path = scratch("foreign.ck").string();
  cfg.stop_after_segments = 3;
  ASSERT_EQ(run_cfg(cfg).code, kExitInterrupted);
  auto other = cfg;
  other.x = 100'001;
  other.stop_after_segments.reset();
  const auto r = run_cfg(other);
  EXPECT_EQ(r.code, kExitCorrupt);
  EXPECT_NE(r.err.find("different configuration"), std::string::npos);

  auto bytes = read_file(cfg.checkpoint_path);
  bytes[50] ^= 0x40;
  write_file_atomic(cfg.checkpoint_path, bytes);
  cfg.stop_after_segments.reset();
  EXPECT_EQ(run_cfg(cfg).code, kExitCorrupt);
}
