#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include "mwht/errors.hpp"
#include "mwht/model.hpp"
#include "mwht/phase.hpp"
#include "mwht/touchstone.hpp"

using namespace mwht;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_touchstone(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TouchstoneRecord delay_record(double tau_s, double lo_hz, double hi_hz, std::size_t n) {
  const FrequencyGrid g = FrequencyGrid::spanning(lo_hz, hi_hz, n);
  std::vector<cplx> v(g.count());
  for (std::size_t k = 0; k < g.count(); ++k) v[k] = std::polar(1.0, -g.angular_at(k) * tau_s);
  return record_from_response(ComplexResponse(g, v));
}

}  // namespace

TEST_CASE("the three data formats decode the same point") {
  const auto ri = parse_touchstone("# GHz S RI R 50\n10 0 0 -1 0 0 0 0 0\n");
  REQUIRE(ri.rows.size() == 1);
  CHECK(ri.rows[0].freq_hz == 10e9);
  CHECK(ri.rows[0].s21() == cplx{-1, 0});

  const auto ma = parse_touchstone("# GHz S MA R 50\n10 0 0 1 180 0 0 0 0\n");
  CHECK(std::abs(ma.rows[0].s21() - cplx{-1, 0}) < 1e-12);

  const auto db = parse_touchstone("# GHz S DB R 50\n10 0 0 0 180 0 0 0 0\n");
  CHECK(std::abs(db.rows[0].s21()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(std::arg(db.rows[0].s21())) == doctest::Approx(kPi));
  CHECK(db.format == DataFormat::DB);
}

TEST_CASE("option line defaults, units and comments") {
  const auto r = parse_touchstone("! comment\n#\n100 1 0 0.5 90 0 0 1 0 ! trailing\n");
  CHECK(r.freq_unit == FrequencyUnit::GHz);
  CHECK(r.format == DataFormat::MA);
  CHECK(r.reference_ohms == 50.0);
  CHECK(r.rows[0].freq_hz == 100e9);
  CHECK(std::abs(r.rows[0].s21() - cplx{0, 0.5}) < 1e-15);

  const auto m = parse_touchstone("# mhz s ri r 75\n1 0 0 +1 0 0 0 0 0\n2 0 0 1 0 0 0 0 0\n");
  CHECK(m.freq_unit == FrequencyUnit::MHz);
  CHECK(m.reference_ohms == 75.0);
  CHECK(m.rows[1].freq_hz == 2e6);
  CHECK(unit_scale(FrequencyUnit::kHz) == 1e3);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("! no options\n10 0 0 1 0 0 0 0 0\n") == 2);
  CHECK(parse_error_line("") >= 0);
  CHECK(parse_error_line("# GHz S RI R 50\n10 0 0 1 0 0 0 0 0\n9 0 0 1 0 0 0 0 0\n") == 3);
  CHECK(parse_error_line("# GHz S RI R 50\n10 0 0 1 0 0 0 0 0\n10 0 0 1 0 0 0 0 0\n") == 3);
  CHECK(parse_error_line("# GHz S RI R 50\n! c\n10 0 0 1 0 0 0 0\n") == 3);
  CHECK(parse_error_line("# GHz S RI R 50\n10 0 0 1 0 0 0 0 x\n") == 2);
  CHECK(parse_error_line("# GHz Y RI R 50\n") == 1);
  CHECK(parse_error_line("# GHz S RI R 50\n# GHz S RI R 50\n") == 2);
  CHECK(parse_error_line("# GHz S RI R 50\n10 0 0 1.2 0 0 0 0 0\n") == 2);
}

TEST_CASE("slightly active S21 is tolerated with a warning") {
  const auto r = parse_touchstone("# GHz S MA R 50\n10 0 0 1.05 0 0 0 0 0\n");
  CHECK(r.warnings.size() == 1);
  CHECK(parse_touchstone("# GHz S MA R 50\n10 0 0 1 0 0 0 0 0\n").warnings.empty());
}

TEST_CASE("serialize and reparse round trip in every format") {
  const auto p = CouplerResonatorParams::standard(0.6);
  const ComplexResponse resp = unit_transfer(p, model_grid(10e9, 0.8, 1.2, 201));
  for (DataFormat fmt : {DataFormat::RI, DataFormat::MA, DataFormat::DB}) {
    for (FrequencyUnit unit : {FrequencyUnit::Hz, FrequencyUnit::MHz, FrequencyUnit::GHz}) {
      const TouchstoneRecord rec = record_from_response(resp, fmt, unit);
      const TouchstoneRecord back = parse_touchstone(serialize_touchstone(rec));
      REQUIRE(back.rows.size() == rec.rows.size());
      CHECK(back.format == fmt);
      CHECK(back.freq_unit == unit);
      for (std::size_t k = 0; k < rec.rows.size(); ++k) {
        CHECK(back.rows[k].freq_hz == doctest::Approx(rec.rows[k].freq_hz).epsilon(1e-15));
        for (int j = 0; j < 4; ++j) CHECK(std::abs(back.rows[k].s[j] - rec.rows[k].s[j]) <= 1e-12);
        CHECK(std::abs(back.rows[k].s21() - resp[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("the same data written in RI, MA and DB parses identically") {
  const auto p = CouplerResonatorParams::standard(0.87);
  const ComplexResponse resp = unit_transfer(p, model_grid(10e9, 0.8, 1.2, 101));
  const auto ri = parse_touchstone(serialize_touchstone(record_from_response(resp, DataFormat::RI)));
  const auto ma = parse_touchstone(serialize_touchstone(record_from_response(resp, DataFormat::MA)));
  const auto db = parse_touchstone(serialize_touchstone(record_from_response(resp, DataFormat::DB)));
  for (std::size_t k = 0; k < ri.rows.size(); ++k) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(ri.rows[k].s[j] - ma.rows[k].s[j]) <= 1e-10);
      CHECK(std::abs(ri.rows[k].s[j] - db.rows[k].s[j]) <= 1e-10);
    }
  }
}

TEST_CASE("resampling onto the record's own grid is exact") {
  const TouchstoneRecord rec = delay_record(0.4e-9, 8e9, 12e9, 81);
  const ComplexResponse same = to_response(rec, 8e9, 12e9, 81);
  for (std::size_t k = 0; k < rec.rows.size(); ++k) CHECK(same[k] == rec.rows[k].s21());
  const ComplexResponse direct = to_response(rec);
  CHECK(direct.size() == 81);
  for (std::size_t k = 0; k < rec.rows.size(); ++k) CHECK(direct[k] == rec.rows[k].s21());
}

TEST_CASE("coarse pure-delay record interpolates to the right delay") {
  const double tau = 1e-9;
  const TouchstoneRecord rec = delay_record(tau, 8e9, 12e9, 81);  // 50 MHz, about 18 degrees per row
  const ComplexResponse fine = to_response(rec, 8.5e9, 11.5e9, 3001);
  const SampledCurve d = group_delay(unwrap_phase(fine));
  const double mean = std::accumulate(d.values.begin(), d.values.end(), 0.0) / static_cast<double>(d.values.size());
  CHECK(mean == doctest::Approx(tau).epsilon(0.01));
  const PhaseCurve ph = unwrap_phase(fine);
  const double slope = -(ph[ph.size() - 1] - ph[0]) / (kTwoPi * (11.5e9 - 8.5e9));
  CHECK(slope == doctest::Approx(tau).epsilon(0.01));
}

TEST_CASE("resampling errors") {
  const TouchstoneRecord rec = delay_record(1e-9, 8e9, 12e9, 81);
  CHECK_THROWS_AS(to_response(rec, 7e9, 11e9, 100), RangeError);
  CHECK_THROWS_AS(to_response(rec, 9e9, 13e9, 100), RangeError);
  auto uneven = parse_touchstone("# GHz S RI R 50\n1 0 0 1 0 0 0 0 0\n2 0 0 1 0 0 0 0 0\n4 0 0 1 0 0 0 0 0\n");
  CHECK_THROWS_AS(to_response(uneven), ValidationError);
}

TEST_CASE("file reading") {
  CHECK_THROWS_AS(read_touchstone("/nonexistent/dir/none.s2p"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "mwht_test_touchstone.s2p";
  {
    std::ofstream f(path);
    f << serialize_touchstone(delay_record(1e-9, 8e9, 12e9, 5));
  }
  const TouchstoneRecord r = read_touchstone(path);
  CHECK(r.rows.size() == 5);
  std::filesystem::remove(path);
}
