#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = mwht::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("mwht_cli_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::vector<double>> load_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("model writes the three curves with the delay peak at f0") {
  const fs::path d = fresh_dir("model");
  const Run r = run({"model", "--coupling", "0.3", "--out", d.string()});
  REQUIRE(r.code == 0);
  for (const char* f : {"magnitude.csv", "phase.csv", "group_delay.csv", "model.json"}) CHECK(fs::exists(d / f));
  std::string header;
  const auto rows = load_csv(d / "group_delay.csv", &header);
  CHECK(header == "frequency_GHz,group_delay_ns");
  CHECK(rows.size() >= 2001);
  const json doc = load_json(d / "model.json");
  CHECK(doc["peak_frequency_GHz"].get<double>() == doctest::Approx(10.0).epsilon(1e-12));
  // Closed form: section delay + round trip * (1 + r) / (1 - r), r = sqrt(1 - C^2).
  const double rr = std::sqrt(1 - 0.09);
  const double exact = 0.05 + 0.2 * (1 + rr) / (1 - rr);
  CHECK(doc["analytic_group_delay_at_f0_ns"].get<double>() == doctest::Approx(exact).epsilon(1e-9));
  CHECK(doc["peak_group_delay_ns"].get<double>() == doctest::Approx(exact).epsilon(1e-2));
  for (const auto& row : load_csv(d / "magnitude.csv")) CHECK(std::abs(row[1]) < 1e-9);
}

TEST_CASE("a decoupled loop gives the flat section delay") {
  const fs::path d = fresh_dir("model0");
  REQUIRE(run({"model", "--coupling", "0", "--out", d.string()}).code == 0);
  for (const auto& row : load_csv(d / "group_delay.csv")) CHECK(row[1] == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("json table output") {
  const fs::path d = fresh_dir("modeljson");
  REQUIRE(run({"model", "--coupling", "0.5", "--format", "json", "--out", d.string()}).code == 0);
  const json t = load_json(d / "phase.json");
  CHECK(t["columns"][1] == "phase_deg");
  CHECK(t["rows"].size() >= 2001);
}

TEST_CASE("invalid input is reported in one aggregated message") {
  const Run r = run({"model", "--coupling", "1.5", "--f0", "-2", "--out", fresh_dir("bad").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("coupling") != std::string::npos);
  CHECK(r.err.find("f0") != std::string::npos);
  CHECK(run({"model", "--no-such-flag"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"demo", "--app", "nope"}).code == 2);
}

TEST_CASE("characterize sweep includes the design points and records alpha") {
  const fs::path d = fresh_dir("char");
  REQUIRE(run({"characterize", "--count", "5", "--out", d.string()}).code == 0);
  std::string header;
  const auto rows = load_csv(d / "tradeoff.csv", &header);
  CHECK(header.find("alpha") != std::string::npos);
  CHECK(rows.size() == 7);
  bool has087 = false;
  for (const auto& row : rows) {
    has087 = has087 || std::abs(row[0] - 0.87) < 1e-12;
    CHECK(row.back() == 0.35);
  }
  CHECK(has087);
  const json doc = load_json(d / "characterize.json");
  CHECK(doc["alpha"] == 0.35);
  CHECK(doc["monotone"]["rotated_phase_decreasing"] == true);
  CHECK(doc["monotone"]["peak_delay_decreasing"] == true);
  CHECK(doc["monotone"]["half_delay_bandwidth_increasing"] == true);
}

TEST_CASE("characterize failure codes") {
  CHECK(run({"characterize", "--couplings", "0.5", "--alpha", "100", "--out", fresh_dir("c3").string()}).code == 3);
  CHECK(run({"characterize", "--touchstone", "/nonexistent/x.s2p", "--out", fresh_dir("c4").string()}).code == 4);
  CHECK(run({"characterize", "--alpha", "-1", "--out", fresh_dir("c2").string()}).code == 2);
}

TEST_CASE("demo pipelines") {
  {
    const fs::path d = fresh_dir("edge");
    REQUIRE(run({"demo", "--app", "edge", "--source", "ideal", "--out", d.string()}).code == 0);
    const json m = load_json(d / "metrics.json");
    CHECK(m["metrics"]["edge_to_center_ratio"]["clipped"] == true);
    CHECK(m["config"]["source"] == "ideal");
    CHECK(fs::exists(d / "input.csv"));
    CHECK(fs::exists(d / "output.csv"));
  }
  {
    const fs::path d = fresh_dir("ssb");
    REQUIRE(run({"demo", "--app", "ssb", "--source", "ideal", "--out", d.string()}).code == 0);
    CHECK(load_json(d / "metrics.json")["metrics"]["sideband_suppression_dB"].get<double>() >= 60.0);
  }
  {
    const fs::path d = fresh_dir("peak");
    REQUIRE(run({"demo", "--app", "peak", "--source", "model", "--out", d.string()}).code == 0);
    const json m = load_json(d / "metrics.json");
    CHECK(m["metrics"]["center_suppression"]["value_dB"].get<double>() >= 6.0);
    CHECK(m["config"]["coupling"] == 0.71);
  }
  CHECK(run({"demo", "--source", "touchstone:/nonexistent/x.s2p", "--out", fresh_dir("d4").string()}).code == 4);
}

TEST_CASE("demo with a Touchstone source") {
  const fs::path d = fresh_dir("tsdemo");
  fs::create_directories(d);
  // A broadband pure delay: the edge metric sees no edges, but the pipeline runs.
  std::ofstream f(d / "delay.s2p");
  f << "# GHz S RI R 50\n";
  for (int k = 0; k <= 800; ++k) {
    const double ghz = k * 0.1, ph = -2 * M_PI * ghz * 0.3;
    f << ghz << " 0 0 " << std::cos(ph) << " " << std::sin(ph) << " " << std::cos(ph) << " " << std::sin(ph)
      << " 0 0\n";
  }
  f.close();
  const Run r = run({"demo", "--app", "edge", "--source", "touchstone:" + (d / "delay.s2p").string(), "--out",
                     (d / "out").string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(d / "out" / "metrics.json"));
}

TEST_CASE("identical configuration gives byte-identical output") {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  REQUIRE(run({"demo", "--app", "edge", "--source", "model", "--out", a.string()}).code == 0);
  REQUIRE(run({"demo", "--app", "edge", "--source", "model", "--out", b.string()}).code == 0);
  for (const char* f : {"input.csv", "output.csv"}) CHECK(slurp(a / f) == slurp(b / f));
  REQUIRE(run({"characterize", "--count", "4", "--out", a.string()}).code == 0);
  REQUIRE(run({"characterize", "--count", "4", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "tradeoff.csv") == slurp(b / "tradeoff.csv"));
  CHECK_FALSE(fs::exists(a / "tradeoff.csv.tmp"));
}

TEST_CASE("config file supplies the same keys as the flags") {
  const fs::path d = fresh_dir("cfg");
  fs::create_directories(d);
  {
    std::ofstream f(d / "run.toml");
    f << "[model]\ncoupling = 0.9\nout = \"" << (d / "out").string() << "\"\n";
  }
  REQUIRE(run({"--config", (d / "run.toml").string(), "model"}).code == 0);
  const json doc = load_json(d / "out" / "model.json");
  CHECK(doc["config"]["coupling"] == 0.9);
  CHECK(doc["analytic_group_delay_at_f0_ns"].get<double>() == doctest::Approx(0.5590814293).epsilon(1e-6));
}

TEST_CASE("transient and hilbert commands") {
  const fs::path d = fresh_dir("tr");
  REQUIRE(run({"transient", "--coupling", "0.5", "--out", d.string()}).code == 0);
  const json t = load_json(d / "transient.json");
  CHECK(t["settle_time_ns"].get<double>() > 0.0);
  const fs::path h = fresh_dir("hb");
  REQUIRE(run({"hilbert", "--pulse", "tri", "--t", "0.5", "--t", "2", "--out", h.string()}).code == 0);
  const auto rows = load_csv(h / "hilbert.csv");
  CHECK(rows.size() == 2);
  // A rect pole is reported, not integrated.
  const fs::path h2 = fresh_dir("hb2");
  REQUIRE(run({"hilbert", "--pulse", "rect", "--t", "1", "--out", h2.string()}).code == 0);
  CHECK(slurp(h2 / "hilbert.csv") == "t,pulse,pv_quadrature,closed_form\n1,1,nan,inf\n");
  CHECK(run({"hilbert", "--epsilon", "0", "--out", fresh_dir("hb3").string()}).code == 2);
}
