#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mwht/applications.hpp"
#include "mwht/characterization.hpp"
#include "mwht/errors.hpp"
#include "mwht/hilbert.hpp"
#include "mwht/model.hpp"
#include "mwht/phase.hpp"
#include "mwht/touchstone.hpp"
#include "mwht/transient.hpp"
#include "output.hpp"

namespace mwht::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kGHz = 1e9;
constexpr double kNs = 1e-9;
constexpr double kDeg = 180.0 / kPi;

// Collects every problem with a configuration before anything is computed.
class Problems {
 public:
  void require(bool ok, const std::string& message) {
    if (!ok) list_.push_back(message);
  }
  void raise_if_any(const std::string& command) const {
    if (list_.empty()) return;
    std::string msg = command + ": invalid configuration";
    for (const auto& p : list_) msg += "\n  - " + p;
    throw ConfigError(msg);
  }

 private:
  std::vector<std::string> list_;
};

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";

  TableFormat table_format() const { return format == "json" ? TableFormat::json : TableFormat::csv; }
};

struct UnitOptions {
  double coupling;
  double f0_ghz = 10.0;
  std::optional<double> loop_delay_ns{};
  std::optional<double> section_delay_ns{};

  void validate(Problems& p) const {
    p.require(coupling >= 0.0 && coupling <= 1.0, "coupling must lie in [0, 1]");
    p.require(f0_ghz > 0.0 && std::isfinite(f0_ghz), "f0 must be positive");
    p.require(!loop_delay_ns || *loop_delay_ns > 0.0, "loop delay must be positive");
    p.require(!section_delay_ns || *section_delay_ns >= 0.0, "section delay must be non-negative");
  }
  CouplerResonatorParams params() const {
    const double f0 = f0_ghz * kGHz;
    return CouplerResonatorParams(coupling, f0, loop_delay_ns ? *loop_delay_ns * kNs : 1.5 / f0,
                                  section_delay_ns ? *section_delay_ns * kNs : 0.5 / f0);
  }
  json echo() const {
    const CouplerResonatorParams p = params();
    return json{{"coupling", coupling},
                {"f0_GHz", f0_ghz},
                {"loop_delay_ns", p.loop_delay_s() / kNs},
                {"section_delay_ns", p.coupled_section_delay_s() / kNs}};
  }
};

void add_unit_options(CLI::App* cmd, UnitOptions& u) {
  cmd->add_option("--coupling,-c", u.coupling, "Coupling magnitude |C| in [0, 1]")->capture_default_str();
  cmd->add_option("--f0", u.f0_ghz, "Center frequency, GHz")->capture_default_str();
  cmd->add_option("--loop-delay", u.loop_delay_ns, "Loop delay, ns (default 1.5/f0)");
  cmd->add_option("--section-delay", u.section_delay_ns, "Coupled-section delay, ns (default 0.5/f0)");
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out,-o", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

// ---------------------------------------------------------------- model

struct ModelOptions {
  Common common;
  UnitOptions unit{0.3};
  int units = 1;
  double lo = 0.8;
  double hi = 1.2;
  int points = kDefaultModelPoints;
};

void run_model(const ModelOptions& o, std::ostream& out) {
  Problems p;
  o.unit.validate(p);
  p.require(o.units >= 1, "units must be at least 1");
  p.require(o.lo >= 0.0 && o.lo < 1.0 && o.hi > 1.0, "band must satisfy 0 <= lo < 1 < hi (fractions of f0)");
  p.require(o.points >= 3, "points must be at least 3");
  p.raise_if_any("model");

  const CouplerResonatorParams unit = o.unit.params();
  const CascadeSpec cascade = CascadeSpec::identical(unit, static_cast<std::size_t>(o.units));
  const double f0 = unit.center_freq_hz();
  const ComplexResponse r =
      evaluate_resolved([&](const FrequencyGrid& g) { return cascade_transfer(cascade, g); },
                        model_grid(f0, o.lo, o.hi, static_cast<std::size_t>(o.points)));
  const PhaseCurve phase = unwrap_phase(r);
  const SampledCurve delay = group_delay(phase);
  const SampledCurve mag = magnitude_db(r);

  Table tm{"magnitude", {"frequency_GHz", "magnitude_dB"}, {}};
  Table tp{"phase", {"frequency_GHz", "phase_deg"}, {}};
  Table td{"group_delay", {"frequency_GHz", "group_delay_ns"}, {}};
  std::size_t peak = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double f = r.grid().at(k) / kGHz;
    tm.rows.push_back({f, mag.values[k]});
    tp.rows.push_back({f, phase[k] * kDeg});
    td.rows.push_back({f, delay.values[k] / kNs});
    if (delay.values[k] > delay.values[peak]) peak = k;
  }
  const fs::path dir = o.common.out_dir;
  for (const Table* t : {&tm, &tp, &td}) write_table(dir, *t, o.common.table_format());

  json cfg = o.unit.echo();
  cfg["units"] = o.units;
  cfg["band_fraction"] = {o.lo, o.hi};
  cfg["min_points"] = o.points;
  json doc{{"command", "model"},
           {"config", cfg},
           {"grid_points", r.size()},
           {"peak_group_delay_ns", delay.values[peak] / kNs},
           {"peak_frequency_GHz", r.grid().at(peak) / kGHz},
           {"analytic_group_delay_at_f0_ns", o.units * unit_group_delay_at(unit, f0) / kNs}};
  write_json(dir, "model", doc);
  out << "model: " << r.size() << " samples, peak delay " << delay.values[peak] / kNs << " ns at "
      << r.grid().at(peak) / kGHz << " GHz\n";
}

// ---------------------------------------------------------------- characterize

struct CharacterizeOptions {
  Common common;
  UnitOptions unit{0.5};
  std::vector<double> couplings;
  double from = 0.1;
  double to = 0.9;
  int count = 20;
  std::vector<double> extra{0.71, 0.87};
  double alpha = kDefaultAlpha;
  std::string touchstone;
};

bool strictly(const std::vector<double>& v, bool increasing) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
  return true;
}

void run_characterize(const CharacterizeOptions& o, std::ostream& out) {
  Problems p;
  o.unit.validate(p);
  p.require(o.alpha > 0.0, "alpha must be positive");
  std::vector<double> couplings = o.couplings;
  if (o.touchstone.empty() && couplings.empty()) {
    p.require(o.count >= 2, "count must be at least 2");
    p.require(o.from > 0.0 && o.to < 1.0 && o.from < o.to, "sweep needs 0 < from < to < 1");
    if (o.count >= 2) {
      for (int i = 0; i < o.count; ++i) couplings.push_back(o.from + (o.to - o.from) * i / (o.count - 1));
      couplings.insert(couplings.end(), o.extra.begin(), o.extra.end());
    }
  }
  for (double c : couplings) p.require(c > 0.0 && c < 1.0, "coupling " + format_number(c) + " outside (0, 1)");
  p.raise_if_any("characterize");
  std::sort(couplings.begin(), couplings.end());
  couplings.erase(std::unique(couplings.begin(), couplings.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  couplings.end());

  const double f0 = o.unit.f0_ghz * kGHz;
  std::vector<CharacterizationReport> reports;
  json cfg{{"alpha", o.alpha}, {"f0_GHz", o.unit.f0_ghz}};
  if (!o.touchstone.empty()) {
    const TouchstoneRecord rec = read_touchstone(o.touchstone);
    for (const auto& w : rec.warnings) out << "warning: " << w << "\n";
    const ComplexResponse r = to_response(rec, 0.8 * f0, 1.2 * f0, kDefaultModelPoints);
    reports.push_back(characterize_response(r, f0, o.alpha));
    cfg["touchstone"] = o.touchstone;
  } else {
    reports = coupling_sweep(couplings, o.unit.params(), o.alpha);
    cfg["unit"] = o.unit.echo();
    cfg["couplings"] = couplings;
  }

  Table t{"tradeoff",
          {"coupling", "rotated_phase_deg", "transition_bandwidth_GHz", "transition_bandwidth_rel", "omega_L_GHz",
           "omega_R_GHz", "peak_delay_ns", "half_delay_bandwidth_GHz", "alpha"},
          {}};
  std::vector<double> dphi, dw, tau, hdb;
  for (const auto& r : reports) {
    t.rows.push_back({r.coupling_mag.value_or(std::nan("")), r.rotated_phase_rad * kDeg,
                      r.transition_bandwidth_hz / kGHz, r.transition_bandwidth_hz / r.center_hz, r.omega_L_hz / kGHz,
                      r.omega_R_hz / kGHz, r.peak_delay_s / kNs, r.half_delay_bandwidth_hz / kGHz, r.alpha});
    dphi.push_back(r.rotated_phase_rad);
    dw.push_back(r.transition_bandwidth_hz);
    tau.push_back(r.peak_delay_s);
    hdb.push_back(r.half_delay_bandwidth_hz);
  }
  const fs::path dir = o.common.out_dir;
  write_table(dir, t, o.common.table_format());
  json doc{{"command", "characterize"},
           {"config", cfg},
           {"alpha", o.alpha},
           {"rows", reports.size()},
           {"monotone",
            {{"rotated_phase_decreasing", strictly(dphi, false)},
             {"transition_bandwidth_increasing", strictly(dw, true)},
             {"peak_delay_decreasing", strictly(tau, false)},
             {"half_delay_bandwidth_increasing", strictly(hdb, true)}}}};
  write_json(dir, "characterize", doc);
  out << "characterize: " << reports.size() << " rows (alpha = " << o.alpha << ")\n";
}

// ---------------------------------------------------------------- transient

struct TransientOptions {
  Common common;
  UnitOptions unit{0.5};
  std::optional<double> drive_ghz;
  std::optional<double> duration_ns;
  std::optional<double> dt_ps;
};

void run_transient(const TransientOptions& o, std::ostream& out) {
  Problems p;
  o.unit.validate(p);
  p.require(!o.drive_ghz || *o.drive_ghz > 0.0, "drive frequency must be positive");
  p.require(!o.duration_ns || *o.duration_ns > 0.0, "duration must be positive");
  p.require(!o.dt_ps || *o.dt_ps > 0.0, "time step must be positive");
  p.raise_if_any("transient");

  const CouplerResonatorParams unit = o.unit.params();
  const double drive = o.drive_ghz ? *o.drive_ghz * kGHz : unit.center_freq_hz();
  const double dt = o.dt_ps ? *o.dt_ps * 1e-12 : default_transient_dt(unit);
  const double duration = o.duration_ns ? *o.duration_ns * kNs : 20.0 * unit_group_delay_at(unit, drive);
  const TransientAnalysis a = analyze_transient(unit, drive, duration, dt);

  Table t{"transient", {"time_ns", "output", "envelope_magnitude", "envelope_phase_deg"}, {}};
  for (std::size_t n = 0; n < a.output.size(); ++n)
    t.rows.push_back({a.output.time_at(n) / kNs, a.output[n].real(), std::abs(a.envelope[n]),
                      std::arg(a.envelope[n]) * kDeg});
  const fs::path dir = o.common.out_dir;
  write_table(dir, t, o.common.table_format());

  json cfg = o.unit.echo();
  cfg["drive_GHz"] = drive / kGHz;
  cfg["duration_ns"] = duration / kNs;
  cfg["dt_ps"] = dt * 1e12;
  json doc{{"command", "transient"},
           {"config", cfg},
           {"steady_amplitude", a.steady_amplitude},
           {"steady_phase_deg", a.steady_phase_rad * kDeg},
           {"analytic_amplitude", std::abs(a.analytic_phasor)},
           {"analytic_phase_deg", std::arg(a.analytic_phasor) * kDeg},
           {"amplitude_error", a.amplitude_error},
           {"phase_error_deg", a.phase_error_rad * kDeg},
           {"settle_time_ns", a.settle_time_s / kNs},
           {"group_delay_ns", a.analytic_group_delay_s / kNs}};
  write_json(dir, "transient", doc);
  out << "transient: settle " << a.settle_time_s / kNs << " ns, group delay " << a.analytic_group_delay_s / kNs
      << " ns\n";
}

// ---------------------------------------------------------------- hilbert

struct HilbertOptions {
  Common common;
  std::string pulse = "rect";
  std::vector<double> t;
  double from = -3.0;
  double to = 3.0;
  int count = 61;
  double epsilon = 1e-2;
};

void run_hilbert(const HilbertOptions& o, std::ostream& out) {
  Problems p;
  p.require(o.epsilon > 0.0, "epsilon must be positive");
  std::vector<double> ts = o.t;
  if (ts.empty()) {
    p.require(o.count >= 1 && o.to >= o.from, "need count >= 1 and to >= from");
    if (o.count == 1) ts.push_back(o.from);
    for (int i = 0; o.count > 1 && i < o.count; ++i) ts.push_back(o.from + (o.to - o.from) * i / (o.count - 1));
  }
  for (double t : ts) p.require(std::isfinite(t), "t values must be finite");
  p.raise_if_any("hilbert");

  const AnalyticPulse pulse{o.pulse == "tri" ? PulseKind::tri : PulseKind::rect};
  Table tab{"hilbert", {"t", "pulse", "pv_quadrature", "closed_form"}, {}};
  double worst = 0.0;
  for (double t : ts) {
    const double cf = hilbert_closed_form(pulse, t);
    const double pv = is_closed_form_pole(pulse, t) ? std::nan("") : hilbert_pv_quadrature(pulse, t, o.epsilon);
    if (std::isfinite(pv) && std::isfinite(cf)) worst = std::max(worst, std::abs(pv - cf));
    tab.rows.push_back({t, pulse(t), pv, cf});
  }
  const fs::path dir = o.common.out_dir;
  write_table(dir, tab, o.common.table_format());
  json doc{{"command", "hilbert"},
           {"config", {{"pulse", o.pulse}, {"epsilon", o.epsilon}, {"t", ts}}},
           {"max_abs_difference", worst}};
  write_json(dir, "hilbert", doc);
  out << "hilbert: " << ts.size() << " points, max |PV - closed form| = " << worst << "\n";
}

// ---------------------------------------------------------------- demo

struct DemoOptions {
  Common common;
  std::string app = "edge";
  std::string source = "model";
  UnitOptions unit{0.71};
  int units = 2;
  std::optional<double> width_ns;
  std::optional<double> period_ns;
  int periods = 4;
  double tone_offset_ghz = 0.5;
  std::string sideband = "upper";
};

Table waveform_table(const std::string& name, const TimeSignal& s, double carrier_hz) {
  const std::vector<double> env = envelope(s, carrier_hz);
  Table t{name, {"time_ns", "value", "envelope"}, {}};
  t.rows.reserve(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) t.rows.push_back({s.time_at(n) / kNs, s[n].real(), env[n]});
  return t;
}

json db_value(double db, bool clipped) {
  return json{{"value_dB", db}, {"clipped", clipped}, {"clip_dB", kMetricClipDb}};
}

void run_demo(const DemoOptions& o, std::ostream& out) {
  Problems p;
  o.unit.validate(p);
  p.require(o.units >= 1, "units must be at least 1");
  p.require(o.periods >= 1, "periods must be at least 1");
  p.require(!o.width_ns || *o.width_ns > 0.0, "pulse width must be positive");
  p.require(!o.period_ns || *o.period_ns > 0.0, "period must be positive");
  p.require(o.tone_offset_ghz > 0.0, "tone offset must be positive");
  const bool touch = o.source.rfind("touchstone:", 0) == 0;
  p.require(o.source == "ideal" || o.source == "model" || (touch && o.source.size() > 11),
            "source must be ideal, model or touchstone:<path>");
  p.raise_if_any("demo");

  const CouplerResonatorParams unit = o.unit.params();
  const double f0 = unit.center_freq_hz();
  const CascadeSpec cascade = CascadeSpec::identical(unit, static_cast<std::size_t>(o.units));
  std::optional<TouchstoneRecord> record;
  std::optional<ComplexResponse> measured;
  if (touch) {
    record = read_touchstone(o.source.substr(11));
    for (const auto& w : record->warnings) out << "warning: " << w << "\n";
    measured = to_response(*record, record->rows.front().freq_hz, record->rows.back().freq_hz,
                           std::max<std::size_t>(4001, record->rows.size()));
  }

  json cfg = o.unit.echo();
  cfg["app"] = o.app;
  cfg["source"] = o.source;
  cfg["units"] = o.units;
  json metrics;
  const fs::path dir = o.common.out_dir;

  if (o.app == "ssb") {
    // 4096 samples at 8.192 f0 put f0 and the tones on FFT bins for offsets that are
    // multiples of f0/500.
    const TimeSignal x = two_tone(f0, o.tone_offset_ghz * kGHz, 8.192 * f0, 4096);
    const Device branch = o.source == "ideal"   ? Device::band_hilbert(f0)
                          : o.source == "model" ? Device::cascade(cascade)
                                                : Device::sampled(*measured, "touchstone");
    SsbSpec spec;
    spec.center_hz = f0;
    spec.sideband = o.sideband == "lower" ? Sideband::lower : Sideband::upper;
    const SsbResult r = ssb_modulate(x, branch, spec);
    write_table(dir, waveform_table("input", x, f0), o.common.table_format());
    write_table(dir, waveform_table("output", r.output, f0), o.common.table_format());
    cfg["tone_offset_GHz"] = o.tone_offset_ghz;
    cfg["sideband"] = o.sideband;
    metrics = json{{"sideband_suppression_dB", r.suppression_db},
                   {"at_numerical_floor", r.at_floor},
                   {"floor_dB", kSsbFloorDb},
                   {"delay_branch_ps", r.delay_s * 1e12}};
    if (r.warning) metrics["warning"] = *r.warning;
    out << "demo ssb: suppression " << r.suppression_db << " dB\n";
  } else {
    ModulatedPulseTrain train =
        o.app == "edge" ? ModulatedPulseTrain::rect_default(f0) : ModulatedPulseTrain::tri_default(f0);
    if (o.width_ns) train.pulse_width_s = *o.width_ns * kNs;
    if (o.period_ns) train.period_s = *o.period_ns * kNs;
    else if (o.width_ns) train.period_s = 4.0 * train.pulse_width_s;
    train.num_periods = o.periods;
    // The ideal transform acts about DC, so it is shown on the unmodulated train.
    if (o.source == "ideal") train.carrier_hz = 0.0;
    const TimeSignal x = generate_pulse_train(train);

    double bulk = 0.0;
    std::optional<DeviceOutput> y;
    if (o.source == "ideal") {
      y = apply_device(Device::ideal_hilbert(), x);
    } else if (o.source == "model") {
      bulk = estimate_bulk_delay(cascade);
      y = apply_device(Device::cascade(cascade), x);
    } else {
      bulk = estimate_bulk_delay(*measured, f0);
      y = apply_device(*measured, x);
    }
    write_table(dir, waveform_table("input", x, train.carrier_hz), o.common.table_format());
    write_table(dir, waveform_table("output", y->output, train.carrier_hz), o.common.table_format());
    cfg["pulse_width_ns"] = train.pulse_width_s / kNs;
    cfg["period_ns"] = train.period_s / kNs;
    cfg["periods"] = train.num_periods;
    cfg["carrier_GHz"] = train.carrier_hz / kGHz;
    cfg["sample_rate_GHz"] = train.sample_rate_hz / kGHz;
    metrics["zeroed_energy_fraction"] = y->zeroed_energy_fraction;
    metrics["bulk_delay_ns"] = bulk / kNs;
    if (o.app == "edge") {
      const EdgeReport e = edge_detection_metric(x, y->output, train, bulk);
      metrics["detected"] = e.detected;
      if (!e.detected) metrics["failure"] = e.failure;
      metrics["edge_to_center_ratio"] = db_value(e.edge_to_center_ratio_db, e.clipped);
      metrics["input_edge_to_center_ratio_dB"] = e.input_edge_to_center_ratio_db;
      metrics["edge_alignment_error_ns"] = e.edge_alignment_error_s / kNs;
      out << "demo edge: edge/center " << e.edge_to_center_ratio_db << " dB" << (e.clipped ? " (clipped)" : "")
          << "\n";
    } else {
      const PeakReport r = peak_clipping_metric(x, y->output, train, bulk);
      metrics["detected"] = r.detected;
      if (!r.detected) metrics["failure"] = r.failure;
      metrics["center_suppression"] = db_value(r.center_suppression_db, r.clipped);
      metrics["second_transform_recovery_error"] = r.recovery_error;
      out << "demo peak: center suppression " << r.center_suppression_db << " dB"
          << (r.clipped ? " (clipped)" : "") << "\n";
    }
  }
  write_json(dir, "metrics", json{{"command", "demo"}, {"config", cfg}, {"metrics", metrics}});
}

int exit_code(ErrorKind k) { return static_cast<int>(k); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Microwave Hilbert transformer toolkit: coupler-loop phaser model, characterization, "
               "transient simulation, Hilbert oracles and application demos."};
  app.name("mwht");
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags ([model], [demo], ... sections)");
  app.require_subcommand(1, 1);

  ModelOptions model;
  CLI::App* cmd_model = app.add_subcommand("model", "Magnitude, phase and group delay of a unit or cascade");
  add_common(cmd_model, model.common);
  add_unit_options(cmd_model, model.unit);
  cmd_model->add_option("--units", model.units, "Identical units in cascade")->capture_default_str();
  cmd_model->add_option("--lo", model.lo, "Band start, fraction of f0")->capture_default_str();
  cmd_model->add_option("--hi", model.hi, "Band stop, fraction of f0")->capture_default_str();
  cmd_model->add_option("--points", model.points, "Minimum samples")->capture_default_str();

  CharacterizeOptions ch;
  CLI::App* cmd_ch = app.add_subcommand("characterize", "Rotated phase / transition bandwidth / delay trade-off");
  add_common(cmd_ch, ch.common);
  add_unit_options(cmd_ch, ch.unit);
  cmd_ch->add_option("--couplings", ch.couplings, "Explicit coupling list (overrides the sweep)");
  cmd_ch->add_option("--from", ch.from, "Sweep start")->capture_default_str();
  cmd_ch->add_option("--to", ch.to, "Sweep stop")->capture_default_str();
  cmd_ch->add_option("--count", ch.count, "Sweep points")->capture_default_str();
  cmd_ch->add_option("--extra", ch.extra, "Design points added to the sweep")->capture_default_str();
  cmd_ch->add_option("--alpha", ch.alpha, "Slope departure factor")->capture_default_str();
  cmd_ch->add_option("--touchstone", ch.touchstone, "Characterize measured S21 from a .s2p file instead");

  TransientOptions tr;
  CLI::App* cmd_tr = app.add_subcommand("transient", "Switched-on sinusoid through the flow-graph simulator");
  add_common(cmd_tr, tr.common);
  add_unit_options(cmd_tr, tr.unit);
  cmd_tr->add_option("--drive", tr.drive_ghz, "Drive frequency, GHz (default f0)");
  cmd_tr->add_option("--duration", tr.duration_ns, "Duration, ns (default 20 group delays)");
  cmd_tr->add_option("--dt", tr.dt_ps, "Time step, ps (default 1/(64 f0))");

  HilbertOptions hb;
  CLI::App* cmd_hb = app.add_subcommand("hilbert", "PV quadrature against closed-form pulse transforms");
  add_common(cmd_hb, hb.common);
  cmd_hb->add_option("--pulse", hb.pulse)->check(CLI::IsMember({"rect", "tri"}))->capture_default_str();
  cmd_hb->add_option("--t", hb.t, "Explicit evaluation points (overrides the range)");
  cmd_hb->add_option("--from", hb.from)->capture_default_str();
  cmd_hb->add_option("--to", hb.to)->capture_default_str();
  cmd_hb->add_option("--count", hb.count)->capture_default_str();
  cmd_hb->add_option("--epsilon", hb.epsilon, "Initial excluded half-window")->capture_default_str();

  DemoOptions dm;
  CLI::App* cmd_dm = app.add_subcommand("demo", "Edge detection, peak clipping or SSB pipelines");
  add_common(cmd_dm, dm.common);
  add_unit_options(cmd_dm, dm.unit);
  cmd_dm->add_option("--app", dm.app)->check(CLI::IsMember({"edge", "peak", "ssb"}))->capture_default_str();
  cmd_dm->add_option("--source", dm.source, "ideal, model or touchstone:<path>")->capture_default_str();
  cmd_dm->add_option("--units", dm.units, "Identical units in the modeled cascade")->capture_default_str();
  cmd_dm->add_option("--width", dm.width_ns, "Pulse width, ns");
  cmd_dm->add_option("--period", dm.period_ns, "Pulse period, ns (default 4 widths)");
  cmd_dm->add_option("--periods", dm.periods, "Pulses in the train")->capture_default_str();
  cmd_dm->add_option("--tone-offset", dm.tone_offset_ghz, "SSB tone offset from f0, GHz")->capture_default_str();
  cmd_dm->add_option("--sideband", dm.sideband)->check(CLI::IsMember({"upper", "lower"}))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorKind::validation);
  }

  try {
    if (cmd_model->parsed()) run_model(model, out);
    else if (cmd_ch->parsed()) run_characterize(ch, out);
    else if (cmd_tr->parsed()) run_transient(tr, out);
    else if (cmd_hb->parsed()) run_hilbert(hb, out);
    else if (cmd_dm->parsed()) run_demo(dm, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(ErrorKind::io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(ErrorKind::numerical);
  }
  return 0;
}

}  // namespace mwht::cli
