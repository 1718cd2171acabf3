#include "hyper/config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hyper/errors.hpp"

namespace hyper {

namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_.empty() ? "config" : path_, "must be an object");
  }

  std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }
  bool has(const std::string& name) const { return node_.contains(name); }

  const json& get(const std::string& name) {
    seen_.insert(name);
    if (!node_.contains(name)) throw ValidationError(key(name), "required key is missing");
    return node_.at(name);
  }

  double number(const std::string& name) {
    const json& v = get(name);
    if (!v.is_number()) throw ValidationError(key(name), "must be a number");
    return v.get<double>();
  }
  double number(const std::string& name, double fallback) { return has(name) ? number(name) : mark(name, fallback); }

  std::uint64_t count(const std::string& name, std::uint64_t fallback) {
    if (!has(name)) return mark(name, fallback);
    const json& v = get(name);
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ValidationError(key(name), "must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool flag(const std::string& name, bool fallback) {
    if (!has(name)) return mark(name, fallback);
    const json& v = get(name);
    if (!v.is_boolean()) throw ValidationError(key(name), "must be true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& name, const std::string& fallback) {
    if (!has(name)) return mark(name, fallback);
    const json& v = get(name);
    if (!v.is_string()) throw ValidationError(key(name), "must be a string");
    return v.get<std::string>();
  }

  Section child(const std::string& name) { return Section(get(name), key(name)); }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!seen_.count(it.key())) throw ValidationError(key(it.key()), "unknown key");
  }

 private:
  template <typename T>
  T mark(const std::string& name, T value) {
    seen_.insert(name);
    return value;
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

PulseShape parse_shape(Section& s, const std::string& name) {
  const std::string v = s.text(name, "gaussian");
  if (v == "gaussian") return PulseShape::gaussian;
  if (v == "square") return PulseShape::square;
  throw ValidationError(s.key(name), "must be \"gaussian\" or \"square\"");
}

void parse_grid(Section g, GridSpec& grid) {
  grid.num_z = g.count("num_z", 200);
  grid.num_detunings = g.count("num_detunings", 801);
  grid.t_step = g.number("t_step", 0.02);
  if (g.has("detuning_halfwidth")) {
    const json& v = g.get("detuning_halfwidth");
    if (v.is_string() && v.get<std::string>() == "nyquist") grid.detuning_halfwidth = 0.0;
    else if (v.is_number() && v.get<double>() > 0.0) grid.detuning_halfwidth = v.get<double>();
    else throw ValidationError(g.key("detuning_halfwidth"), "must be \"nyquist\" or a positive number");
  }
  grid.t_span.begin = g.number("t_start");
  grid.t_span.end = g.number("t_end");
  if (grid.num_z < 2) throw ValidationError(g.key("num_z"), "must be at least 2");
  if (grid.num_detunings < 2) throw ValidationError(g.key("num_detunings"), "must be at least 2");
  if (!(grid.t_step > 0.0)) throw ValidationError(g.key("t_step"), "must be positive");
  g.finish();
}

void parse_plan(Section p, ExperimentPlan& plan) {
  const std::string kind = p.text("kind", "");
  if (kind == "2pe") plan.kind = ProtocolKind::two_pulse;
  else if (kind == "3pe-context") plan.kind = ProtocolKind::three_pulse_context;
  else if (kind == "hyper-forward") plan.kind = ProtocolKind::hyper_forward;
  else if (kind == "hyper-backward") plan.kind = ProtocolKind::hyper_backward;
  else throw ValidationError(p.key("kind"), "must be one of 2pe, 3pe-context, hyper-forward, hyper-backward");

  plan.alpha_L = p.number("alpha_L", 1.0);
  plan.t1 = p.number("t1");
  plan.t2 = p.number("t2");
  plan.t4 = plan.kind == ProtocolKind::two_pulse ? p.number("t4", plan.t2) : p.number("t4");
  plan.stark_phase = p.number("stark_phase", 0.0);
  plan.options.balance_error = p.number("balance_error", 0.0);
  plan.options.window_gap = p.number("window_gap", 0.5);
  plan.options.guard_3pe = p.flag("guard_3pe", true);
  plan.reference_run = p.flag("reference_run", false);
  plan.label = p.text("label", kind);

  if (p.has("input")) {
    Section in = p.child("input");
    plan.input.shape = parse_shape(in, "shape");
    plan.input.fwhm = in.number("fwhm", 1.0);
    plan.input.area = in.number("area_pi", 0.01) * std::numbers::pi;
    plan.input.phase = in.number("phase", 0.0);
    in.finish();
  } else {
    plan.input.area = 0.01 * std::numbers::pi;
  }
  plan.input.center = plan.t1;

  if (p.has("pi_pulse")) {
    Section pi = p.child("pi_pulse");
    plan.options.pi_shape = parse_shape(pi, "shape");
    plan.options.pi_fwhm = pi.number("fwhm", 0.5);
    plan.options.pi_area_multiplier = pi.number("area_multiplier", 1.0);
    pi.finish();
  }

  if (p.has("sweep")) {
    Section sw = p.child("sweep");
    const std::string var = sw.text("variable", "");
    if (var == "alpha_L") plan.sweep = SweepVariable::alpha_L;
    else if (var == "gradient") plan.sweep = SweepVariable::gradient;
    else if (var == "input_area") plan.sweep = SweepVariable::input_area;
    else throw ValidationError(sw.key("variable"), "must be alpha_L, gradient or input_area");
    const json& values = sw.get("values");
    if (!values.is_array() || values.empty()) throw ValidationError(sw.key("values"), "must be a non-empty array");
    for (const auto& v : values) {
      if (!v.is_number()) throw ValidationError(sw.key("values"), "entries must be numbers");
      plan.values.push_back(v.get<double>());
    }
    sw.finish();
  }
  p.finish();
}

NoiseSettings parse_noise(Section n) {
  NoiseSettings s;
  s.shots = n.count("shots", 1000);
  s.model.pulse_areas.min_multiplier = n.number("multiplier_min", 0.5);
  s.model.detector_noise_variance = n.number("detector_noise_variance", 2e-9);
  s.model.beat_frequency = n.number("beat_frequency", 2.0 * std::numbers::pi * 6.0);
  s.envelope_fwhm = n.number("envelope_fwhm", 1.8);
  s.envelope_offset = n.number("envelope_offset", 15.0);
  s.reference_offset = n.number("reference_offset", -15.0);
  s.timeline_step = n.number("timeline_step", 0.5);
  if (n.has("spectral_mask")) {
    const json& mask = n.get("spectral_mask");
    if (!mask.is_array()) throw ValidationError(n.key("spectral_mask"), "must be an array of features");
    for (std::size_t i = 0; i < mask.size(); ++i) {
      Section f(mask[i], n.key("spectral_mask") + "[" + std::to_string(i) + "]");
      SpectralFeature feat;
      feat.center = f.number("center");
      feat.width = f.number("width");
      feat.depth = f.number("depth");
      if (!(feat.width > 0.0)) throw ValidationError(f.key("width"), "must be positive");
      f.finish();
      s.model.spectral_mask.push_back(feat);
    }
  }
  if (s.shots < 2) throw ValidationError(n.key("shots"), "need at least 2 shots");
  if (!(s.envelope_fwhm > 0.0)) throw ValidationError(n.key("envelope_fwhm"), "must be positive");
  if (!(s.timeline_step > 0.0)) throw ValidationError(n.key("timeline_step"), "must be positive");
  n.finish();
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.document = document;
  Section top(root, "");
  cfg.seed = top.count("seed", 0);
  parse_grid(top.child("grid"), cfg.plan.grid);
  if (top.has("solver")) {
    Section s = top.child("solver");
    const std::string mode = s.text("pi_pulse_mode", "instantaneous");
    if (mode == "instantaneous") cfg.plan.solver.pi_pulse_mode = PiPulseMode::instantaneous;
    else if (mode == "resolved") cfg.plan.solver.pi_pulse_mode = PiPulseMode::resolved;
    else throw ValidationError(s.key("pi_pulse_mode"), "must be \"instantaneous\" or \"resolved\"");
    cfg.threads = static_cast<int>(s.count("threads", 0));
    s.finish();
  }
  parse_plan(top.child("plan"), cfg.plan);
  cfg.plan.seed = cfg.seed;
  if (top.has("noise")) {
    cfg.noise = parse_noise(top.child("noise"));
    cfg.noise->model.seed = cfg.seed;
  }
  if (top.has("output")) {
    Section o = top.child("output");
    cfg.output_dir = o.text("dir", "");
    o.finish();
  }
  top.finish();

  if (cfg.noise) {
    const auto& plan_doc = root["plan"];
    if (!plan_doc.contains("input") || !plan_doc["input"].contains("area_pi")) cfg.plan.input.area = 0.0;
    if (cfg.plan.input.area != 0.0)
      throw ValidationError("plan.input.area_pi", "noise runs record the sequence with no input pulse; set it to 0");
    cfg.noise->model.validate();
  }
  cfg.plan.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config", "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

}  // namespace hyper
