#include "wcopt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "wcopt/error.hpp"

namespace wcopt {

using json = nlohmann::json;

std::string ProblemSpec::name() const {
  switch (kind) {
    case ProblemKind::phase_retrieval: return "phase-" + std::to_string(d1) + "-" + std::to_string(m);
    case ProblemKind::blind_deconvolution:
      return "blind-" + std::to_string(d1) + "-" + std::to_string(d2) + "-" + std::to_string(m);
    case ProblemKind::lad: return "lad-" + std::to_string(d1) + "-" + std::to_string(m);
    case ProblemKind::cvar: return "cvar-" + std::to_string(d1) + "-" + std::to_string(m);
  }
  return {};
}

std::vector<std::string> preset_names() {
  return {"phase-10-30",     "phase-50-150",    "phase-100-300",    "blind-10-10-30",
          "blind-10-10-50",  "blind-50-50-200", "blind-100-100-400"};
}

ProblemSpec parse_preset(std::string_view name) {
  auto fail = [&] { return Error(Errc::invalid_argument, "unknown preset '" + std::string(name) + "'"); };
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = name.find('-', start);
    parts.push_back(name.substr(start, dash == std::string_view::npos ? dash : dash - start));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  std::vector<Index> dims;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(parts[k].data(), parts[k].data() + parts[k].size(), value);
    if (ec != std::errc() || ptr != parts[k].data() + parts[k].size() || value < 1) throw fail();
    dims.push_back(static_cast<Index>(value));
  }
  ProblemSpec spec;
  if (parts[0] == "phase" && dims.size() == 2) {
    spec = {ProblemKind::phase_retrieval, dims[0], 0, dims[1], 0.0};
  } else if (parts[0] == "blind" && dims.size() == 3) {
    spec = {ProblemKind::blind_deconvolution, dims[0], dims[1], dims[2], 0.0};
  } else if (parts[0] == "lad" && dims.size() == 2) {
    spec = {ProblemKind::lad, dims[0], 0, dims[1], 0.0};
  } else {
    throw fail();
  }
  return spec;
}

ProblemInstance generate_instance(const ProblemSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case ProblemKind::phase_retrieval: return generate_phase_retrieval(rng, spec.d1, spec.m);
    case ProblemKind::blind_deconvolution: return generate_blind_deconvolution(rng, spec.d1, spec.d2, spec.m);
    case ProblemKind::lad: return generate_lad(rng, spec.d1, spec.m, spec.mu);
    case ProblemKind::cvar: break;
  }
  throw Error(Errc::unsupported_combination, "sweeps support phase, blind and lad problems");
}

Vector initial_point(const ProblemSpec& spec, RngStream& rng) {
  if (spec.kind == ProblemKind::blind_deconvolution) {
    Vector x0 = unit_sphere_point(rng, spec.d1);
    Vector y0 = unit_sphere_point(rng, spec.d2);
    return concat(x0, y0);
  }
  return unit_sphere_point(rng, spec.d1);
}

std::vector<double> StepsizeGrid::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double span = static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / span;
    if (spacing == Spacing::linear) {
      out[k] = min + (max - min) * t;
    } else {
      out[k] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
    }
  }
  out.back() = max;
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& message) {
  throw ConfigError(field, "config field '" + field + "': " + message);
}

void check_keys(const json& object, const std::string& prefix,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) bad(prefix + key, "unknown key");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  return j;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(field, "must be finite");
  return v;
}

std::uint64_t get_unsigned(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0)) {
    bad(field, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) bad(field, "expected a string");
  return j.get<std::string>();
}

Vector get_vector(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& e = j[k];
    if (e.is_string()) {
      const std::string s = e.get<std::string>();
      if (s == "inf") v[static_cast<Index>(k)] = std::numeric_limits<double>::infinity();
      else if (s == "-inf") v[static_cast<Index>(k)] = -std::numeric_limits<double>::infinity();
      else bad(field, "entries must be numbers, \"inf\" or \"-inf\"");
    } else {
      if (!e.is_number()) bad(field, "entries must be numbers");
      v[static_cast<Index>(k)] = e.get<double>();
    }
  }
  return v;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) {
    if (std::isinf(v[k])) out.push_back(v[k] > 0 ? "inf" : "-inf");
    else out.push_back(v[k]);
  }
  return out;
}

ProblemSpec parse_problem(const json& j) {
  require_object(j, "problem");
  check_keys(j, "problem.", {"preset", "kind", "d", "d1", "d2", "m", "mu"});
  ProblemSpec spec;
  if (j.contains("preset")) {
    if (j.size() > 1) bad("problem.preset", "a preset cannot be combined with explicit dimensions");
    try {
      return parse_preset(get_string(j["preset"], "problem.preset"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      bad("problem.preset", e.what());
    }
  }
  if (!j.contains("kind")) bad("problem.kind", "required unless a preset is given");
  try {
    spec.kind = parse_problem_kind(get_string(j["kind"], "problem.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad("problem.kind", e.what());
  }
  if (spec.kind == ProblemKind::cvar) bad("problem.kind", "cvar instances are not realizable and cannot be swept");
  auto dim = [&](const char* key, Index& out) {
    if (!j.contains(key)) bad(std::string("problem.") + key, "required");
    const std::uint64_t v = get_unsigned(j[key], std::string("problem.") + key);
    if (v < 1) bad(std::string("problem.") + key, "must be >= 1");
    out = static_cast<Index>(v);
  };
  if (spec.kind == ProblemKind::blind_deconvolution) {
    dim("d1", spec.d1);
    dim("d2", spec.d2);
  } else {
    dim("d", spec.d1);
    spec.d2 = 0;
  }
  dim("m", spec.m);
  if (j.contains("mu")) {
    if (spec.kind != ProblemKind::lad) bad("problem.mu", "only lad problems take mu");
    spec.mu = get_number(j["mu"], "problem.mu");
    if (spec.mu < 0.0) bad("problem.mu", "must be >= 0");
  }
  return spec;
}

json problem_json(const ProblemSpec& spec) {
  json j;
  j["kind"] = std::string(to_string(spec.kind));
  if (spec.kind == ProblemKind::blind_deconvolution) {
    j["d1"] = spec.d1;
    j["d2"] = spec.d2;
  } else {
    j["d"] = spec.d1;
  }
  j["m"] = spec.m;
  if (spec.kind == ProblemKind::lad) j["mu"] = spec.mu;
  return j;
}

Regularizer parse_regularizer(const json& j) {
  require_object(j, "regularizer");
  if (!j.contains("kind")) bad("regularizer.kind", "required");
  RegularizerKind kind{};
  try {
    kind = parse_regularizer_kind(get_string(j["kind"], "regularizer.kind"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad("regularizer.kind", e.what());
  }
  auto number = [&](const char* key) {
    if (!j.contains(key)) bad(std::string("regularizer.") + key, "required");
    return get_number(j[key], std::string("regularizer.") + key);
  };
  try {
    switch (kind) {
      case RegularizerKind::zero: check_keys(j, "regularizer.", {"kind"}); return Regularizer::zero();
      case RegularizerKind::ball:
        check_keys(j, "regularizer.", {"kind", "radius"});
        return Regularizer::ball(number("radius"));
      case RegularizerKind::l1:
        check_keys(j, "regularizer.", {"kind", "weight"});
        return Regularizer::l1(number("weight"));
      case RegularizerKind::squared_l2:
        check_keys(j, "regularizer.", {"kind", "mu"});
        return Regularizer::squared_l2(number("mu"));
      case RegularizerKind::box: {
        check_keys(j, "regularizer.", {"kind", "lower", "upper"});
        if (!j.contains("lower")) bad("regularizer.lower", "required");
        if (!j.contains("upper")) bad("regularizer.upper", "required");
        return Regularizer::box(get_vector(j["lower"], "regularizer.lower"),
                                get_vector(j["upper"], "regularizer.upper"));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad("regularizer", e.what());
  }
  return Regularizer::zero();
}

json regularizer_json(const Regularizer& r) {
  json j;
  j["kind"] = std::string(to_string(r.kind()));
  switch (r.kind()) {
    case RegularizerKind::zero: break;
    case RegularizerKind::ball: j["radius"] = r.radius(); break;
    case RegularizerKind::l1: j["weight"] = r.weight(); break;
    case RegularizerKind::squared_l2: j["mu"] = r.weight(); break;
    case RegularizerKind::box:
      j["lower"] = vector_json(r.lower());
      j["upper"] = vector_json(r.upper());
      break;
  }
  return j;
}

}  // namespace

SweepConfig parse_config(std::string_view text) {
  SweepConfig config;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return config;
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config syntax error: ") + e.what());
  }
  require_object(root, "<root>");
  check_keys(root, "", {"problem", "methods", "stepsize", "epochs", "rounds", "target", "seed",
                        "output", "regularizer", "timing"});
  if (root.contains("problem")) config.problem = parse_problem(root["problem"]);
  if (root.contains("methods")) {
    const json& m = root["methods"];
    if (!m.is_array() || m.empty()) bad("methods", "expected a nonempty array");
    config.methods.clear();
    for (std::size_t k = 0; k < m.size(); ++k) {
      const std::string field = "methods[" + std::to_string(k) + "]";
      try {
        const ModelFamily family = parse_model_family(get_string(m[k], field));
        for (ModelFamily seen : config.methods) {
          if (seen == family) bad(field, "duplicate method");
        }
        config.methods.push_back(family);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        bad(field, e.what());
      }
    }
  }
  if (root.contains("stepsize")) {
    const json& s = require_object(root["stepsize"], "stepsize");
    check_keys(s, "stepsize.", {"count", "min", "max", "spacing"});
    if (s.contains("count")) config.stepsize.count = get_unsigned(s["count"], "stepsize.count");
    if (s.contains("min")) config.stepsize.min = get_number(s["min"], "stepsize.min");
    if (s.contains("max")) config.stepsize.max = get_number(s["max"], "stepsize.max");
    if (s.contains("spacing")) {
      const std::string sp = get_string(s["spacing"], "stepsize.spacing");
      if (sp == "linear") config.stepsize.spacing = Spacing::linear;
      else if (sp == "log") config.stepsize.spacing = Spacing::log;
      else bad("stepsize.spacing", "expected \"linear\" or \"log\"");
    }
  }
  if (root.contains("epochs")) config.epochs = get_unsigned(root["epochs"], "epochs");
  if (root.contains("rounds")) config.rounds = get_unsigned(root["rounds"], "rounds");
  if (root.contains("target")) config.target = get_number(root["target"], "target");
  if (root.contains("seed")) config.seed = get_unsigned(root["seed"], "seed");
  if (root.contains("output")) config.output = get_string(root["output"], "output");
  if (root.contains("regularizer")) config.regularizer = parse_regularizer(root["regularizer"]);
  if (root.contains("timing")) {
    if (!root["timing"].is_boolean()) bad("timing", "expected true or false");
    config.timing = root["timing"].get<bool>();
  }

  if (config.stepsize.count < 1) bad("stepsize.count", "must be >= 1");
  if (!(config.stepsize.min > 0.0)) bad("stepsize.min", "must be positive");
  if (!(config.stepsize.min < config.stepsize.max)) bad("stepsize.min", "must be less than stepsize.max");
  if (config.epochs < 1) bad("epochs", "must be >= 1");
  if (config.rounds < 1) bad("rounds", "must be >= 1");
  if (!(config.target > 0.0)) bad("target", "must be positive");
  const Regularizer& r = config.regularizer;
  if (r.kind() == RegularizerKind::box) {
    const Index dim = config.problem.d1 + config.problem.d2;
    if (r.lower().size() != dim) bad("regularizer.lower", "length must equal the problem dimension");
  }
  return config;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string dump_config(const SweepConfig& config) {
  json root;
  root["problem"] = problem_json(config.problem);
  json methods = json::array();
  for (ModelFamily f : config.methods) methods.push_back(std::string(to_string(f)));
  root["methods"] = methods;
  root["stepsize"] = {{"count", config.stepsize.count},
                      {"min", config.stepsize.min},
                      {"max", config.stepsize.max},
                      {"spacing", config.stepsize.spacing == Spacing::linear ? "linear" : "log"}};
  root["epochs"] = config.epochs;
  root["rounds"] = config.rounds;
  root["target"] = config.target;
  root["seed"] = config.seed;
  root["output"] = config.output;
  root["regularizer"] = regularizer_json(config.regularizer);
  root["timing"] = config.timing;
  return root.dump(2) + "\n";
}

void save_config(const SweepConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write config '" + path + "'");
  out << dump_config(config);
  if (!out) throw Error(Errc::io_error, "failed writing config '" + path + "'");
}

}  // namespace wcopt
