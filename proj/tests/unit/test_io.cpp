#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "hallmhd/errors.hpp"
#include "hallmhd/io/config_file.hpp"
#include "hallmhd/io/files.hpp"
#include "hallmhd/io/manifest.hpp"
#include "hallmhd/io/report_io.hpp"
#include "hallmhd/io/snapshot.hpp"
#include "hallmhd/solver/solver.hpp"
#include "hallmhd/spectral/random.hpp"
#include "json.hpp"

using namespace hallmhd;
using namespace hallmhd::io;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = HALLMHD_GOLDEN_DIR;

// fresh directory per test case
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("hallmhd-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string hex(const std::vector<std::uint8_t>& bytes, std::size_t count) {
  std::ostringstream os;
  for (std::size_t i = 0; i < count; ++i) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02x", bytes[i]);
    os << buf << ((i + 1) % 16 == 0 ? "\n" : " ");
  }
  return os.str();
}

spectral::MhdState sample_state(int n) {
  const auto g = spectral::Grid::make(2, n);
  return {spectral::random_field(g, 3, 1, {0.0, 1.0, spectral::Envelope::power}, true),
          spectral::random_field(g, 3, 2, {0.0, 1.0, spectral::Envelope::power}, true), 0.125};
}

bool same_bits(const spectral::Field& a, const spectral::Field& b) {
  return a.data().size() == b.data().size() &&
         std::memcmp(a.data().data(), b.data().data(), a.data().size_bytes()) == 0;
}

InequalityReport example_report() {
  InequalityReport r;
  r.name = "example";
  r.times = {0, 0.5};
  r.lhs = {1, 2};
  r.rhs = {1, 4};
  r.fitted_constant = 0.5;
  r.threshold = 1;
  r.values["max_ratio"] = 0.5;
  r.series["ratio"] = {1, 0.5};
  r.metadata["n"] = "64";
  r.judge();
  return r;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const auto c = parse_config("dim = 2\nn = 64\nalpha = 1\ns = 2.5\nt_end = 0.5\n");
  CHECK(c.sim.n == 64);
  CHECK(c.sim.cfl_safety == 0.4);
  CHECK_FALSE(c.sim.dt.has_value());
  CHECK(c.sim.initial.recipe == solver::Recipe::taylor_green);
  CHECK(c.eps == std::vector<double>{1e-2, 1e-3, 1e-4});
  CHECK(c.shells == std::vector<int>{0, 1, 2});
  CHECK_FALSE(c.snapshot_double);
}

TEST_CASE("config grammar and validation errors") {
  CHECK_THROWS_WITH_AS(parse_config("alpha = 0.75\n"), doctest::Contains("alpha must be >= 1"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("s = 2\n"), doctest::Contains("s must exceed 1+d/2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("n = 64\nn = 32\n", {}, "dup.cfg"), doctest::Contains("dup.cfg:2"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("nn = 64\n"), doctest::Contains("unknown key 'nn'"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[solver]\nn = 64\n"), doctest::Contains("unknown section [solver]"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[initial]\nbogus = 1\n"), doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("n = sixty\n"), doctest::Contains("invalid value for n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[initial]\nrecipe = vortex\n"), doctest::Contains("vortex"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("[experiment]\neps = 1e-3,1e-2\n"), doctest::Contains("strictly decreasing"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config("[initial\n"), ConfigError);
  CHECK_NOTHROW(parse_config("; comment\n[initial]\n; another\nseed = 3\n"));
  CHECK_NOTHROW(parse_config("[perturbation]\n"));
}

TEST_CASE("overrides") {
  const auto c = parse_config("n = 64\n", {parse_override("n=32"), parse_override("initial.seed = 9"),
                                            parse_override("dt=1e-3")});
  CHECK(c.sim.n == 32);
  CHECK(c.sim.initial.seed == 9u);
  CHECK(*c.sim.dt == 1e-3);
  CHECK_THROWS_AS(parse_override("n"), ConfigError);
  CHECK_THROWS_AS(parse_config("", {parse_override("initial.nope=1")}), ConfigError);
}

TEST_CASE("canonical config is golden and round trips") {
  const std::string text = canonical_config({});
  CHECK(text == read_text_file(kGolden / "canonical_default.ini"));

  auto c = parse_config("dt = 0.0025\n[initial]\nrecipe = random_band\nkband = 6\ndecay = 0.1\namplitude_b = 0.3\n"
                        "envelope = exponential\n[experiment]\neps = 0.01,0.001\nj = 2,3\n");
  const std::string canon = canonical_config(c);
  const auto again = parse_config(canon);
  CHECK(canonical_config(again) == canon);
  CHECK(*again.sim.dt == 0.0025);
  CHECK(again.sim.initial.amplitude_b == 0.3);
  CHECK(again.sim.initial.spectrum.envelope == spectral::Envelope::exponential);
}

TEST_CASE("load config from file and from a manifest") {
  TempDir dir;
  write_file_atomic(dir.path / "a.cfg", std::string_view("n = 32\n[initial]\nseed = 4\n"));
  const auto c = load_config(dir.path / "a.cfg");
  CHECK(c.sim.n == 32);

  RunManifest m;
  m.command = "simulate";
  m.config = canonical_config(c);
  write_manifest(dir.path, m);
  const auto from_manifest = load_config(dir.path / kManifestName);
  CHECK(canonical_config(from_manifest) == m.config);
  CHECK_THROWS_AS(load_config(dir.path / "missing.cfg"), ConfigError);
}

TEST_CASE("file helpers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_real(std::nan("")) == "nan");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_real(v)) == v);

  TempDir dir;
  const fs::path p = dir.path / "sub" / "x.txt";
  write_file_atomic(p, std::string_view("first"));
  write_file_atomic(p, std::string_view("second"));
  CHECK(read_text_file(p) == "second");
  CHECK(sha256_file(p) == sha256_hex("second"));
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(p.parent_path())) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("snapshot header layout") {
  const auto g = spectral::Grid::make(2, 8);
  solver::InitialDataSpec spec;
  spectral::MhdState s = solver::initial_data(spec, g);
  s.t = 0.25;
  const auto bytes = encode_snapshot(s, 1.0, 2.5);
  CHECK(bytes.size() == kSnapshotHeaderBytes + 2 * 3 * 40 * 2 * 4);
  CHECK(hex(bytes, kSnapshotHeaderBytes) == read_text_file(kGolden / "snapshot_header_n8.hex"));
  CHECK(encode_snapshot(s, 1.0, 2.5, SnapshotPrecision::complex128).size() == kSnapshotHeaderBytes + 2 * 3 * 40 * 2 * 8);
}

TEST_CASE("snapshot round trips") {
  const auto s = sample_state(32);
  const auto wide = decode_snapshot(encode_snapshot(s, 1.25, 2.5, SnapshotPrecision::complex128));
  CHECK(same_bits(wide.state.u, s.u));
  CHECK(same_bits(wide.state.b, s.b));
  CHECK(wide.state.t == s.t);
  CHECK(wide.alpha == 1.25);
  CHECK(wide.precision == SnapshotPrecision::complex128);

  // single precision: first write rounds, later round trips are byte-exact
  const auto bytes = encode_snapshot(s, 1.0, 2.5);
  const auto narrow = decode_snapshot(bytes);
  CHECK(encode_snapshot(narrow.state, narrow.alpha, narrow.s, narrow.precision) == bytes);

  TempDir dir;
  write_snapshot(dir.path / "s.hmhd", s, 1.0, 2.5, SnapshotPrecision::complex128);
  const auto disk = read_snapshot(dir.path / "s.hmhd");
  CHECK(same_bits(disk.state.u, s.u));
}

TEST_CASE("malformed snapshots") {
  const auto bytes = encode_snapshot(sample_state(16), 1.0, 2.5);
  std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 100);
  CHECK_THROWS_WITH_AS(decode_snapshot(cut), "unexpected end of snapshot", ConfigError);
  CHECK_THROWS_WITH_AS(decode_snapshot({'H', 'M'}), "unexpected end of snapshot", ConfigError);

  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_WITH_AS(decode_snapshot(bad), doctest::Contains("\"HMHD1\""), ConfigError);
  auto v2 = bytes;
  v2[4] = '2';
  CHECK_THROWS_WITH_AS(decode_snapshot(v2), doctest::Contains("HMHD2"), ConfigError);

  auto longer = bytes;
  longer.push_back(0);
  CHECK_THROWS_AS(decode_snapshot(longer), ConfigError);
  auto scalar = bytes;
  scalar[6] = 2;
  CHECK_THROWS_AS(decode_snapshot(scalar), ConfigError);
  auto n = bytes;
  n[8] = 12;
  CHECK_THROWS_AS(decode_snapshot(n), ConfigError);
}

TEST_CASE("inequality report JSON and CSV are golden") {
  const auto r = example_report();
  const std::string json = to_json(r);
  CHECK(json == read_text_file(kGolden / "inequality_report.json"));
  CHECK(to_csv(r) == read_text_file(kGolden / "inequality_report.csv"));

  const auto back = inequality_report_from_json(json);
  CHECK(back.name == r.name);
  CHECK(back.lhs == r.lhs);
  CHECK(back.series == r.series);
  CHECK(back.threshold == r.threshold);
  CHECK(to_json(back) == json);
}

TEST_CASE("non-finite values survive serialization") {
  auto r = example_report();
  r.threshold = std::numeric_limits<double>::infinity();
  r.lhs[1] = std::nan("");
  const std::string json = to_json(r);
  const auto parsed = nlohmann::json::parse(json);
  CHECK(parsed.at("threshold") == "inf");
  CHECK(parsed.at("lhs").at(1) == "nan");
  const auto back = inequality_report_from_json(json);
  CHECK(std::isinf(back.threshold));
  CHECK(std::isnan(back.lhs[1]));
}

TEST_CASE("doubles round trip losslessly through JSON") {
  auto r = example_report();
  r.lhs = {0.1, 1.0 / 3.0, 2.0 / 7.0 * 1e-17, 123456789.123456789};
  r.rhs = r.lhs;
  r.times = {0, 1, 2, 3};
  const auto back = inequality_report_from_json(to_json(r));
  for (std::size_t i = 0; i < r.lhs.size(); ++i) CHECK(std::memcmp(&back.lhs[i], &r.lhs[i], sizeof(double)) == 0);
}

TEST_CASE("report rendering") {
  const auto out = render_report(to_json(example_report()));
  CHECK(out.text.find("example") != std::string::npos);
  CHECK(out.text.find("PASS") != std::string::npos);
  REQUIRE(out.csv.size() == 1u);
  CHECK(out.csv.begin()->second == to_csv(example_report()));

  CHECK_THROWS_AS(render_report("{\"schema\": \"other/1\"}"), ConfigError);
  CHECK_THROWS_AS(render_report("not json"), ConfigError);
  CHECK_THROWS_AS(inequality_report_from_json("{\"schema\": \"hallmhd.suite/1\"}"), ConfigError);
}

TEST_CASE("every report schema renders") {
  solver::SimConfig c;
  c.n = 16;
  c.t_end = 0.02;
  c.dt = 2e-3;
  c.snapshot_stride = 1;
  const auto tr = solver::simulate(c);
  const lp::Layout layout(tr.snapshots.front().u.grid_ptr());

  std::vector<ShellAudit> audits;
  const auto rows = analysis::energy_terms(tr, layout, 0, c.alpha);
  audits.push_back({"energy", 0, rows, analysis::audit_budget(rows)});

  Suite suite{"demo", true, {example_report()}, {{"x", 1.0}}, {{"k", "v"}}};
  for (const std::string& doc : {to_json(audits, 1e-3, true), trajectory_summary_json(tr),
                                 to_json(analysis::lp_analyze(tr.snapshots.back(), layout, 2.5)), to_json(suite)}) {
    const auto parsed = nlohmann::json::parse(doc);
    CHECK(parsed.at("schema").get<std::string>().rfind("hallmhd.", 0) == 0);
    CHECK_NOTHROW(render_report(doc));
  }
  const std::string csv = diagnostics_csv(tr);
  CHECK(csv.rfind("step,t,dt,energy", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == long(tr.rows.size() + 1));
}

TEST_CASE("manifest hashing and verification") {
  TempDir dir;
  write_file_atomic(dir.path / "a.txt", std::string_view("alpha"));
  write_file_atomic(dir.path / "sub" / "b.bin", std::string_view("beta"));
  RunManifest m;
  m.command = "simulate";
  m.config = canonical_config({});
  m.platform = platform_fingerprint();
  m.files = hash_files(dir.path, {"a.txt", "sub/b.bin"});
  m.timings["total_s"] = 0.5;
  write_manifest(dir.path, m);

  const auto back = read_manifest(dir.path / kManifestName);
  CHECK(back.command == "simulate");
  CHECK(back.files.size() == 2u);
  CHECK(back.files[0].sha256 == sha256_hex("alpha"));
  CHECK(back.files[1].bytes == 4u);
  CHECK(back.platform.count("compiler") == 1u);
  CHECK(verify_manifest(dir.path).empty());

  write_file_atomic(dir.path / "a.txt", std::string_view("gamma"));
  fs::remove(dir.path / "sub" / "b.bin");
  const auto bad = verify_manifest(dir.path);
  CHECK(bad.size() == 2u);
}
