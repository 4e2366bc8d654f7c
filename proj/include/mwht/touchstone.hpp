#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mwht/types.hpp"

namespace mwht {

enum class FrequencyUnit { Hz, kHz, MHz, GHz };
enum class DataFormat { RI, MA, DB };

double unit_scale(FrequencyUnit unit) noexcept;

struct TwoPortRow {
  double freq_hz;
  std::array<cplx, 4> s;  // S11, S21, S12, S22 (file order)

  cplx s21() const noexcept { return s[1]; }
};

// Touchstone v1 two-port data. Frequencies are stored in Hz whatever the file unit.
struct TouchstoneRecord {
  FrequencyUnit freq_unit = FrequencyUnit::GHz;
  DataFormat format = DataFormat::MA;
  double reference_ohms = 50.0;
  std::vector<TwoPortRow> rows;
  std::vector<std::string> warnings;  // e.g. |S21| slightly above 1
};

// Throws ParseError (with line number) on a missing option line, a non-S parameter,
// wrong column counts, non-finite values, non-increasing frequencies or |S21| > 1.1.
TouchstoneRecord parse_touchstone(std::string_view text);

// IoError when the file cannot be read.
TouchstoneRecord read_touchstone(const std::filesystem::path& path);

// Text in the record's unit and format, full double precision.
std::string serialize_touchstone(const TouchstoneRecord& record);

// S21 linearly interpolated (real and imaginary parts) onto `points` samples over
// [lo_hz, hi_hz]. RangeError when the band leaves the record span.
ComplexResponse to_response(const TouchstoneRecord& record, double lo_hz, double hi_hz, std::size_t points);

// S21 over the record's own grid when it is uniform (ValidationError otherwise).
ComplexResponse to_response(const TouchstoneRecord& record);

// Reciprocal, matched record (S11 = S22 = 0, S12 = S21) carrying `s21`.
TouchstoneRecord record_from_response(const ComplexResponse& s21, DataFormat format = DataFormat::RI,
                                      FrequencyUnit unit = FrequencyUnit::GHz);

}  // namespace mwht
