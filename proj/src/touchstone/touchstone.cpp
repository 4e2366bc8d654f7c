#include "mwht/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mwht/errors.hpp"

namespace mwht {

namespace {

constexpr double kDegree = kPi / 180.0;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double to_number(const std::string& tok, int line) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError("not a number: '" + tok + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + tok + "'", line);
  return v;
}

cplx decode(double a, double b, DataFormat fmt) {
  switch (fmt) {
    case DataFormat::RI:
      return {a, b};
    case DataFormat::MA:
      return std::polar(a, b * kDegree);
    case DataFormat::DB:
      return std::polar(std::pow(10.0, a / 20.0), b * kDegree);
  }
  return {};
}

std::pair<double, double> encode(cplx v, DataFormat fmt) {
  switch (fmt) {
    case DataFormat::RI:
      return {v.real(), v.imag()};
    case DataFormat::MA:
      return {std::abs(v), std::arg(v) / kDegree};
    case DataFormat::DB:
      // An exact zero has no dB value; -400 dB reads back as 1e-20.
      return {v == cplx{} ? -400.0 : 20.0 * std::log10(std::abs(v)), std::arg(v) / kDegree};
  }
  return {};
}

struct OptionLine {
  FrequencyUnit unit = FrequencyUnit::GHz;
  DataFormat format = DataFormat::MA;
  double ohms = 50.0;
};

OptionLine parse_option_line(const std::vector<std::string>& t, int line) {
  OptionLine opt;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const std::string u = upper(t[i]);
    if (u == "HZ") opt.unit = FrequencyUnit::Hz;
    else if (u == "KHZ") opt.unit = FrequencyUnit::kHz;
    else if (u == "MHZ") opt.unit = FrequencyUnit::MHz;
    else if (u == "GHZ") opt.unit = FrequencyUnit::GHz;
    else if (u == "RI") opt.format = DataFormat::RI;
    else if (u == "MA") opt.format = DataFormat::MA;
    else if (u == "DB") opt.format = DataFormat::DB;
    else if (u == "S") continue;
    else if (u == "Y" || u == "Z" || u == "H" || u == "G")
      throw ParseError("only S parameters are supported, found " + t[i], line);
    else if (u == "R") {
      if (i + 1 >= t.size()) throw ParseError("option line: R needs a value", line);
      opt.ohms = to_number(t[++i], line);
      if (!(opt.ohms > 0.0)) throw ParseError("option line: reference resistance must be positive", line);
    } else {
      throw ParseError("option line: unknown token '" + t[i] + "'", line);
    }
  }
  return opt;
}

const char* unit_name(FrequencyUnit u) {
  switch (u) {
    case FrequencyUnit::Hz: return "Hz";
    case FrequencyUnit::kHz: return "kHz";
    case FrequencyUnit::MHz: return "MHz";
    case FrequencyUnit::GHz: return "GHz";
  }
  return "GHz";
}

const char* format_name(DataFormat f) {
  switch (f) {
    case DataFormat::RI: return "RI";
    case DataFormat::MA: return "MA";
    case DataFormat::DB: return "DB";
  }
  return "RI";
}

}  // namespace

double unit_scale(FrequencyUnit unit) noexcept {
  switch (unit) {
    case FrequencyUnit::Hz: return 1.0;
    case FrequencyUnit::kHz: return 1e3;
    case FrequencyUnit::MHz: return 1e6;
    case FrequencyUnit::GHz: return 1e9;
  }
  return 1.0;
}

TouchstoneRecord parse_touchstone(std::string_view text) {
  TouchstoneRecord rec;
  bool have_options = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const std::size_t bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
    const std::vector<std::string> t = tokens(line);
    if (t.empty()) continue;
    if (t[0].front() == '#') {
      if (have_options) throw ParseError("second option line", line_no);
      std::vector<std::string> opts = t;
      if (opts[0].size() > 1) opts.insert(opts.begin() + 1, opts[0].substr(1));
      const OptionLine o = parse_option_line(opts, line_no);
      rec.freq_unit = o.unit;
      rec.format = o.format;
      rec.reference_ohms = o.ohms;
      have_options = true;
      continue;
    }
    if (!have_options) throw ParseError("data before the option line ('# <unit> S <fmt> R <ohms>')", line_no);
    if (t.size() != 9) {
      std::ostringstream os;
      os << "two-port row needs 9 columns, found " << t.size();
      throw ParseError(os.str(), line_no);
    }
    TwoPortRow row{};
    row.freq_hz = to_number(t[0], line_no) * unit_scale(rec.freq_unit);
    for (int k = 0; k < 4; ++k)
      row.s[k] = decode(to_number(t[1 + 2 * k], line_no), to_number(t[2 + 2 * k], line_no), rec.format);
    if (!rec.rows.empty() && !(row.freq_hz > rec.rows.back().freq_hz))
      throw ParseError("frequencies must be strictly increasing", line_no);
    const double mag21 = std::abs(row.s21());
    if (mag21 > 1.1) {
      std::ostringstream os;
      os << "|S21| = " << mag21 << " exceeds the 1.1 passivity tolerance";
      throw ParseError(os.str(), line_no);
    }
    if (mag21 > 1.0) {
      std::ostringstream os;
      os << "line " << line_no << ": |S21| = " << mag21 << " above 1 (treated as measurement ripple)";
      rec.warnings.push_back(os.str());
    }
    rec.rows.push_back(row);
  }
  if (!have_options) throw ParseError("missing option line ('# <unit> S <fmt> R <ohms>')", line_no);
  if (rec.rows.empty()) throw ParseError("no data rows", line_no);
  return rec;
}

TouchstoneRecord read_touchstone(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open Touchstone file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return parse_touchstone(buf.str());
}

std::string serialize_touchstone(const TouchstoneRecord& record) {
  std::string out = "! two-port S-parameters\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", record.reference_ohms);
  out += std::string("# ") + unit_name(record.freq_unit) + " S " + format_name(record.format) + " R " + buf + "\n";
  const double scale = unit_scale(record.freq_unit);
  for (const TwoPortRow& row : record.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.freq_hz / scale);
    out += buf;
    for (const cplx& v : row.s) {
      const auto [a, b] = encode(v, record.format);
      std::snprintf(buf, sizeof buf, " %.17g %.17g", a, b);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ComplexResponse to_response(const TouchstoneRecord& record, double lo_hz, double hi_hz, std::size_t points) {
  if (record.rows.empty()) throw ValidationError("Touchstone record has no rows");
  if (points < 2 || !(hi_hz > lo_hz)) throw ValidationError("to_response: need hi > lo and at least 2 points");
  const double first = record.rows.front().freq_hz, last = record.rows.back().freq_hz;
  if (lo_hz < first || hi_hz > last) {
    std::ostringstream os;
    os << "requested band [" << lo_hz << ", " << hi_hz << "] Hz leaves the record span [" << first << ", " << last
       << "] Hz";
    throw RangeError(os.str());
  }
  const FrequencyGrid grid = FrequencyGrid::spanning(lo_hz, hi_hz, points);
  std::vector<cplx> values(points);
  std::size_t j = 0;
  for (std::size_t k = 0; k < points; ++k) {
    const double f = std::clamp(grid.at(k), first, last);
    while (j + 2 < record.rows.size() && record.rows[j + 1].freq_hz <= f) ++j;
    const TwoPortRow& a = record.rows[j];
    if (f == a.freq_hz || record.rows.size() == 1) {
      values[k] = a.s21();
      continue;
    }
    const TwoPortRow& b = record.rows[j + 1];
    if (f == b.freq_hz) {
      values[k] = b.s21();
      continue;
    }
    const double w = (f - a.freq_hz) / (b.freq_hz - a.freq_hz);
    values[k] = a.s21() + w * (b.s21() - a.s21());
  }
  return ComplexResponse(grid, std::move(values));
}

ComplexResponse to_response(const TouchstoneRecord& record) {
  const std::size_t n = record.rows.size();
  if (n < 2) throw ValidationError("Touchstone record needs at least 2 rows");
  const double step = (record.rows.back().freq_hz - record.rows.front().freq_hz) / static_cast<double>(n - 1);
  std::vector<cplx> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double expected = record.rows.front().freq_hz + static_cast<double>(k) * step;
    if (std::abs(record.rows[k].freq_hz - expected) > 1e-6 * step)
      throw ValidationError("Touchstone frequencies are not uniformly spaced");
    values[k] = record.rows[k].s21();
  }
  return ComplexResponse(FrequencyGrid(record.rows.front().freq_hz, step, n), std::move(values));
}

TouchstoneRecord record_from_response(const ComplexResponse& s21, DataFormat format, FrequencyUnit unit) {
  TouchstoneRecord rec;
  rec.freq_unit = unit;
  rec.format = format;
  rec.rows.reserve(s21.size());
  for (std::size_t k = 0; k < s21.size(); ++k)
    rec.rows.push_back(TwoPortRow{s21.grid().at(k), {cplx{}, s21[k], s21[k], cplx{}}});
  return rec;
}

}  // namespace mwht
