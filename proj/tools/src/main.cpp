// subplanck -- batch front end for the closed-form phase-space engine.
//
// One job per invocation: a subcommand picks the quantity, flags describe
// the state, grid and output formats, and `--config file.json` fills in any
// flag not given explicitly.  Every writing run drops a checksum manifest
// next to its outputs so result directories can be re-checked later, either
// with the `verify` subcommand (files vs. manifest) or by re-running the
// job with `--verify` (fresh computation vs. manifest).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "manifest.hpp"
#include "pngio.hpp"
#include "subplanck/analysis.hpp"
#include "subplanck/closedform.hpp"
#include "subplanck/fock.hpp"
#include "subplanck/gridio.hpp"
#include "subplanck/parallel.hpp"
#include "subplanck/states.hpp"
#include "subplanck/types.hpp"

namespace subplanck::cli {
namespace {

using closedform::PointEvaluator;
using nlohmann::ordered_json;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// ---------------------------------------------------------------------------
// argv and config plumbing

// "--grid -4:4:-4:4:201" would be read by the parser as two independent
// options because the value starts with a dash.  Fuse such pairs into
// "--grid=-4:4:-4:4:201" up front; genuine flags never start with a digit
// or a dot, so the rewrite is unambiguous.
std::vector<std::string> fuse_dash_values(int argc, char** argv) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    const bool wants_value = tok.size() > 2 && tok.rfind("--", 0) == 0 &&
                             tok.find('=') == std::string::npos;
    if (wants_value && i + 1 < argc) {
      const char* next = argv[i + 1];
      if (next[0] == '-' && next[1] != '\0' &&
          (std::isdigit(static_cast<unsigned char>(next[1])) ||
           next[1] == '.')) {
        out.push_back(tok + "=" + next);
        ++i;
        continue;
      }
    }
    out.push_back(std::move(tok));
  }
  return out;
}

// `--config file.json` merges a flat JSON object of long-option values
// under the explicit command line: each key is turned into --key=value and
// appended unless that flag was already given, so explicit flags always
// win.  Boolean true injects the bare flag, arrays join with commas.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(gridio::read_file(path));
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument(
        "config must be a JSON object of flag/value pairs");

  for (const auto& [key, value] : doc.items()) {
    if (key == "config") continue;  // no nesting
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& tok : args)
      if (tok == flag || tok.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    if (present) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& element : value) {
        if (!joined.empty()) joined += ",";
        joined +=
            element.is_string() ? element.get<std::string>() : element.dump();
      }
      args.push_back(flag + "=" + joined);
    } else {
      args.push_back(flag + "=" + (value.is_string()
                                       ? value.get<std::string>()
                                       : value.dump()));
    }
  }
  return args;
}

void attach_config(CLI::App* sub) {
  // Consumed by expand_config before the parse; registered so the parser
  // accepts (and documents) the flag.
  sub->add_option("--config",
                  "JSON file whose keys fill in flags not set explicitly");
}

// ---------------------------------------------------------------------------
// shared flag groups

struct StateArgs {
  std::string family = "coherent";
  std::vector<double> alpha;  // re [, im]
  double c0 = 0.0;
  std::string mode = "none";
  int r = 0;
  int q = 0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* c0_opt = nullptr;
};

void add_state_flags(CLI::App* sub, StateArgs& s) {
  sub->add_option("--family", s.family, "State family")
      ->check(CLI::IsMember({"coherent", "cat", "compass"}))
      ->capture_default_str();
  s.alpha_opt =
      sub->add_option("--alpha", s.alpha,
                      "Coherent amplitude re[,im] (coherent family only)")
          ->delimiter(',')
          ->expected(1, 2);
  s.c0_opt = sub->add_option(
      "--c0", s.c0, "Displacement scale c0 > 0 (cat/compass families only)");
  sub->add_option("--mode", s.mode,
                  "Ladder recipe: none, sa (r additions then q subtractions) "
                  "or as (the reverse order)")
      ->check(CLI::IsMember({"none", "sa", "as"}))
      ->capture_default_str();
  sub->add_option("--r", s.r, "Photon additions")->capture_default_str();
  sub->add_option("--q", s.q, "Photon subtractions")->capture_default_str();
}

states::StateSpec to_spec(const StateArgs& s) {
  states::StateSpec spec;
  spec.family = states::family_from_name(s.family);
  spec.mode = states::mode_from_name(s.mode);
  spec.r = s.r;
  spec.q = s.q;
  if (spec.family == states::Family::coherent) {
    if (s.c0_opt->count() > 0)
      throw std::invalid_argument(
          "--c0 applies to the cat/compass families; the coherent family "
          "takes --alpha");
    if (!s.alpha.empty())
      spec.alpha = Complex{s.alpha[0], s.alpha.size() > 1 ? s.alpha[1] : 0.0};
  } else {
    if (s.alpha_opt->count() > 0)
      throw std::invalid_argument(
          "--alpha applies to the coherent family; cat/compass take --c0");
    spec.c0 = s.c0;
  }
  states::validate(spec);
  return spec;
}

struct GridArgs {
  std::string packed;
  double x_min = 0.0, x_max = 0.0, p_min = 0.0, p_max = 0.0;
  int nx = 0, np = 0;
  CLI::Option *packed_opt = nullptr, *o_xmin = nullptr, *o_xmax = nullptr,
              *o_pmin = nullptr, *o_pmax = nullptr, *o_nx = nullptr,
              *o_np = nullptr;
};

void add_grid_flags(CLI::App* sub, GridArgs& g) {
  g.packed_opt = sub->add_option(
      "--grid", g.packed,
      "Square window xmin:xmax:pmin:pmax:n (default -4:4:-4:4:201)");
  g.o_xmin = sub->add_option("--x-min", g.x_min, "Window override");
  g.o_xmax = sub->add_option("--x-max", g.x_max, "Window override");
  g.o_pmin = sub->add_option("--p-min", g.p_min, "Window override");
  g.o_pmax = sub->add_option("--p-max", g.p_max, "Window override");
  g.o_nx = sub->add_option("--nx", g.nx, "Samples along x (>= 33)");
  g.o_np = sub->add_option("--np", g.np, "Samples along p (>= 33)");
}

analysis::GridSpec parse_packed_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string::size_type from = 0;
  while (true) {
    const auto colon = text.find(':', from);
    parts.push_back(text.substr(from, colon - from));
    if (colon == std::string::npos) break;
    from = colon + 1;
  }
  if (parts.size() != 5)
    throw std::invalid_argument("grid: expected xmin:xmax:pmin:pmax:n, got \"" +
                                text + "\"");
  double vals[4];
  for (int i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      vals[i] = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[i].size() || parts[i].empty())
      throw std::invalid_argument("grid: bad bound \"" + parts[i] + "\"");
  }
  int n = 0;
  std::size_t used = 0;
  try {
    n = std::stoi(parts[4], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != parts[4].size() || parts[4].empty() || n < 2)
    throw std::invalid_argument("grid: bad sample count \"" + parts[4] + "\"");
  return analysis::GridSpec{vals[0], vals[1], vals[2], vals[3], n, n};
}

analysis::GridSpec to_grid(const GridArgs& g) {
  analysis::GridSpec spec;  // library default window
  if (g.packed_opt->count() > 0) spec = parse_packed_grid(g.packed);
  if (g.o_xmin->count() > 0) spec.x_min = g.x_min;
  if (g.o_xmax->count() > 0) spec.x_max = g.x_max;
  if (g.o_pmin->count() > 0) spec.p_min = g.p_min;
  if (g.o_pmax->count() > 0) spec.p_max = g.p_max;
  if (g.o_nx->count() > 0) spec.nx = g.nx;
  if (g.o_np->count() > 0) spec.np = g.np;
  return spec;
}

enum : unsigned { kCsv = 1u, kJson = 2u, kPgrd = 4u, kPng = 8u };

struct FormatArgs {
  std::vector<std::string> list;
  bool f_csv = false, f_json = false, f_pgrd = false, f_png = false;
  bool verify = false;
  unsigned allowed = 0;
};

void add_format_flags(CLI::App* sub, FormatArgs& f, unsigned allowed) {
  f.allowed = allowed;
  std::string menu;
  if (allowed & kCsv) menu += "csv,";
  if (allowed & kJson) menu += "json,";
  if (allowed & kPgrd) menu += "pgrd,";
  if (allowed & kPng) menu += "png,";
  if (!menu.empty()) menu.pop_back();
  sub->add_option("--formats", f.list,
                  "Comma-separated subset of {" + menu + "}")
      ->delimiter(',');
  if (allowed & kCsv) sub->add_flag("--csv", f.f_csv, "Write <out>.csv");
  if (allowed & kJson) sub->add_flag("--json", f.f_json, "Write <out>.json");
  if (allowed & kPgrd)
    sub->add_flag("--pgrd", f.f_pgrd, "Write <out>.pgrd (binary grid)");
  if (allowed & kPng)
    sub->add_flag("--png", f.f_png, "Write <out>.png (heatmap)");
  sub->add_flag("--verify", f.verify,
                "Recompute and compare checksums against <out>.manifest.json "
                "instead of writing");
}

std::set<std::string> resolve_formats(const FormatArgs& f,
                                      const char* fallback) {
  std::set<std::string> out;
  const auto admit = [&](const std::string& name, unsigned bit) {
    if (!(f.allowed & bit))
      throw std::invalid_argument("format \"" + name +
                                  "\" does not apply to this subcommand");
    out.insert(name);
  };
  for (const auto& name : f.list) {
    if (name == "csv") admit(name, kCsv);
    else if (name == "json") admit(name, kJson);
    else if (name == "pgrd") admit(name, kPgrd);
    else if (name == "png") admit(name, kPng);
    else
      throw std::invalid_argument("unknown format \"" + name +
                                  "\" (pick from csv,json,pgrd,png)");
  }
  if (f.f_csv) admit("csv", kCsv);
  if (f.f_json) admit("json", kJson);
  if (f.f_pgrd) admit("pgrd", kPgrd);
  if (f.f_png) admit("png", kPng);
  if (out.empty() && fallback) out.insert(fallback);
  return out;
}

// ---------------------------------------------------------------------------
// manifest plumbing shared by all writing subcommands

struct Artifact {
  std::string path;
  std::string bytes;
};

ordered_json state_json(const states::StateSpec& spec) {
  return ordered_json::parse(states::to_json(spec));
}

ordered_json grid_json(const analysis::GridSpec& g) {
  ordered_json j;
  j["x_min"] = g.x_min;
  j["x_max"] = g.x_max;
  j["p_min"] = g.p_min;
  j["p_max"] = g.p_max;
  j["nx"] = g.nx;
  j["np"] = g.np;
  return j;
}

ordered_json formats_json(const std::set<std::string>& formats) {
  return ordered_json(formats);  // sorted, deterministic
}

// Either writes artifacts + manifest, or (verify mode) compares the freshly
// computed bytes against the manifest recorded by a previous run.
int finish_job(const std::string& command, const ordered_json& params,
               const std::vector<Artifact>& artifacts,
               const ordered_json& render, const std::string& out_base,
               bool verify) {
  const std::string manifest_path = out_base + ".manifest.json";
  if (verify) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(gridio::read_file(manifest_path));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "verify: cannot read manifest %s: %s\n",
                   manifest_path.c_str(), e.what());
      return 2;
    }
    if (!doc.is_object() || !doc.contains("outputs") ||
        !doc["outputs"].is_array()) {
      std::fprintf(stderr, "verify: %s has no outputs array\n",
                   manifest_path.c_str());
      return 2;
    }
    bool all_ok = true;
    for (const auto& art : artifacts) {
      const OutputRecord rec = record_output(art.path, art.bytes);
      const nlohmann::json* entry = nullptr;
      for (const auto& candidate : doc["outputs"])
        if (candidate.is_object() && candidate.value("path", "") == rec.path) {
          entry = &candidate;
          break;
        }
      if (entry == nullptr) {
        std::printf("UNLISTED %s\n", rec.path.c_str());
        all_ok = false;
      } else if (entry->value("bytes", std::uint64_t{0}) == rec.bytes &&
                 entry->value("crc32", "") == rec.crc32_hex) {
        std::printf("OK       %s\n", rec.path.c_str());
      } else {
        std::printf("CHANGED  %s\n", rec.path.c_str());
        all_ok = false;
      }
    }
    return all_ok ? 0 : 1;
  }

  std::vector<OutputRecord> records;
  records.reserve(artifacts.size());
  for (const auto& art : artifacts) {
    gridio::write_file(art.path, art.bytes);
    records.push_back(record_output(art.path, art.bytes));
  }
  const ordered_json manifest = make_manifest(command, params, records, render);
  gridio::write_file(manifest_path, manifest.dump(2) + "\n");
  return 0;
}

// Full-precision JSON dump of a grid (header fields + flat values array).
std::string grid_to_json_text(const analysis::PhaseGrid& grid) {
  ordered_json j = grid_json(grid.spec);
  j["values"] = grid.values;
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------
// subcommands

int run_grid_quantity(const char* name, PointEvaluator::Quantity quantity,
                      const StateArgs& sargs, const GridArgs& gargs,
                      const FormatArgs& fargs, const std::string& out_base) {
  const states::StateSpec spec = to_spec(sargs);
  const analysis::GridSpec gspec = to_grid(gargs);
  const std::set<std::string> formats = resolve_formats(fargs, "csv");

  const PointEvaluator eval(spec, quantity);
  const analysis::PhaseGrid grid = analysis::eval_grid(eval, gspec);

  std::vector<Artifact> artifacts;
  ordered_json render;
  if (formats.count("csv"))
    artifacts.push_back({out_base + ".csv", gridio::grid_to_csv(grid)});
  if (formats.count("json"))
    artifacts.push_back({out_base + ".json", grid_to_json_text(grid)});
  if (formats.count("pgrd"))
    artifacts.push_back({out_base + ".pgrd", gridio::grid_to_pgrd(grid)});
  if (formats.count("png")) {
    const Palette palette = quantity == PointEvaluator::Quantity::wigner
                                ? Palette::diverging
                                : Palette::sequential;
    std::string bytes;
    const RenderInfo info = encode_png(grid, palette, bytes);
    artifacts.push_back({out_base + ".png", std::move(bytes)});
    render["palette"] = palette_name(info.palette);
    render["v_min"] = info.v_min;
    render["v_max"] = info.v_max;
  }

  ordered_json params;
  params["state"] = state_json(spec);
  params["grid"] = grid_json(gspec);
  params["formats"] = formats_json(formats);
  return finish_job(name, params, artifacts, render, out_base, fargs.verify);
}

int run_pnd(const StateArgs& sargs, int n_max, const FormatArgs& fargs,
            const std::string& out_base) {
  const states::StateSpec spec = to_spec(sargs);
  const std::vector<double> probs = closedform::pnd(spec, n_max);

  const std::set<std::string> formats = resolve_formats(fargs, "csv");
  std::vector<Artifact> artifacts;
  if (formats.count("csv")) {
    std::string csv = "n,probability\n";
    for (int n = 0; n <= n_max; ++n)
      csv += std::to_string(n) + "," + gridio::format_double(probs[n]) + "\n";
    artifacts.push_back({out_base + ".csv", std::move(csv)});
  }
  if (formats.count("json")) {
    ordered_json j;
    j["n_max"] = n_max;
    j["probabilities"] = probs;
    artifacts.push_back({out_base + ".json", j.dump(2) + "\n"});
  }

  ordered_json params;
  params["state"] = state_json(spec);
  params["n_max"] = n_max;
  params["formats"] = formats_json(formats);
  return finish_job("pnd", params, artifacts, {}, out_base, fargs.verify);
}

struct ScanRange {
  double from = 0.0;
  double to = 0.0;
  int count = 0;
};

ScanRange parse_scan_range(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos ||
      text.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("scan: expected from:to:count, got \"" + text +
                                "\"");
  ScanRange range;
  try {
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    const std::string a = text.substr(0, c1);
    const std::string b = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string c = text.substr(c2 + 1);
    range.from = std::stod(a, &u1);
    range.to = std::stod(b, &u2);
    range.count = std::stoi(c, &u3);
    if (u1 != a.size() || u2 != b.size() || u3 != c.size())
      throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("scan: expected from:to:count, got \"" + text +
                                "\"");
  }
  if (range.count < 1) throw std::invalid_argument("scan: count must be >= 1");
  if (!(range.to >= range.from))
    throw std::invalid_argument("scan: range must be ordered");
  return range;
}

// fidelity-scan sweeps the amplitude itself, so it takes the family/recipe
// flags but not --alpha; --c0 is reinterpreted as the sweep range.
struct ScanStateArgs {
  std::string family = "compass";
  std::string mode = "none";
  int r = 0;
  int q = 0;
};

void add_scan_state_flags(CLI::App* sub, ScanStateArgs& s) {
  sub->add_option("--family", s.family, "State family (coherent or compass)")
      ->check(CLI::IsMember({"coherent", "cat", "compass"}))
      ->capture_default_str();
  sub->add_option("--mode", s.mode,
                  "Ladder recipe: none, sa (r additions then q subtractions) "
                  "or as (the reverse order)")
      ->check(CLI::IsMember({"none", "sa", "as"}))
      ->capture_default_str();
  sub->add_option("--r", s.r, "Photon additions")->capture_default_str();
  sub->add_option("--q", s.q, "Photon subtractions")->capture_default_str();
}

// Fidelity between the normalized deformed state and its base along a c0
// scan.  The coherent family maps c0 to alpha = c0/sqrt(2) so the curves
// are comparable with the compass ones; points where the recipe
// annihilates the state (e.g. subtraction from the vacuum at c0 = 0) are
// reported as nan rather than aborting the scan.
int run_fidelity_scan(const ScanStateArgs& sargs,
                      const std::string& range_text, const FormatArgs& fargs,
                      const std::string& out_base) {
  const ScanRange range = parse_scan_range(range_text);

  // Surface bad orders/modes once, before the sweep.
  states::StateSpec probe;
  probe.family = states::family_from_name(sargs.family);
  probe.mode = states::mode_from_name(sargs.mode);
  probe.r = sargs.r;
  probe.q = sargs.q;
  if (probe.family == states::Family::coherent)
    probe.alpha = Complex{1.0, 0.0};
  else
    probe.c0 = 1.0;
  states::validate(probe);

  const states::OperatorRecipe recipe{probe.mode, probe.r, probe.q};
  std::vector<double> c0s(range.count), fids(range.count);
  for (int i = 0; i < range.count; ++i) {
    const double c0 = range.count == 1
                          ? range.from
                          : range.from + (range.to - range.from) * i /
                                             (range.count - 1);
    c0s[i] = c0;
    double f = std::numeric_limits<double>::quiet_NaN();
    try {
      if (recipe.mode == states::Mode::none) {
        f = 1.0;
      } else {
        states::CoherentSuperposition base;
        switch (probe.family) {
          case states::Family::coherent:
            base = states::make_coherent(Complex{c0 * kInvSqrt2, 0.0});
            break;
          case states::Family::cat:
            base = states::make_cat(c0);
            break;
          case states::Family::compass:
            if (c0 > 0.0) {
              base = states::make_compass(c0);
            } else {
              // c0 = 0 collapses all four components onto the vacuum.
              base.terms.assign(4, states::Term{Complex{1.0, 0.0},
                                                Complex{0.0, 0.0}});
            }
            break;
        }
        f = closedform::fidelity_deformed_vs_base(
            states::deform(base, recipe));
      }
    } catch (const numeric_guard_error&) {
      // annihilated state or overflowing norm at this c0: leave nan
    }
    fids[i] = f;
  }

  const std::set<std::string> formats = resolve_formats(fargs, "csv");
  std::vector<Artifact> artifacts;
  if (formats.count("csv")) {
    std::string csv = "c0,fidelity\n";
    for (int i = 0; i < range.count; ++i)
      csv += gridio::format_double(c0s[i]) + "," +
             gridio::format_double(fids[i]) + "\n";
    artifacts.push_back({out_base + ".csv", std::move(csv)});
  }
  if (formats.count("json")) {
    ordered_json j;
    j["c0"] = c0s;
    j["fidelity"] = fids;
    artifacts.push_back({out_base + ".json", j.dump(2) + "\n"});
  }

  ordered_json params;
  params["family"] = sargs.family;
  params["mode"] = sargs.mode;
  params["r"] = sargs.r;
  params["q"] = sargs.q;
  params["c0"] = range_text;
  params["formats"] = formats_json(formats);
  return finish_job("fidelity-scan", params, artifacts, {}, out_base,
                    fargs.verify);
}

int run_features(const StateArgs& sargs, const GridArgs& gargs,
                 double threshold, const FormatArgs& fargs,
                 const std::string& out_base) {
  const states::StateSpec spec = to_spec(sargs);
  const analysis::GridSpec gspec = to_grid(gargs);

  const PointEvaluator eval(spec, PointEvaluator::Quantity::wigner);
  const analysis::PhaseGrid grid = analysis::eval_grid(eval, gspec);
  const analysis::FeatureReport report =
      analysis::central_feature(grid, threshold);

  // The report itself is the product; grid dumps are opt-in extras.
  const std::set<std::string> formats = resolve_formats(fargs, nullptr);
  std::vector<Artifact> artifacts;
  artifacts.push_back({out_base + ".json", gridio::feature_to_json(report)});
  ordered_json render;
  if (formats.count("csv"))
    artifacts.push_back({out_base + ".csv", gridio::grid_to_csv(grid)});
  if (formats.count("pgrd"))
    artifacts.push_back({out_base + ".pgrd", gridio::grid_to_pgrd(grid)});
  if (formats.count("png")) {
    std::string bytes;
    const RenderInfo info = encode_png(grid, Palette::diverging, bytes);
    artifacts.push_back({out_base + ".png", std::move(bytes)});
    render["palette"] = palette_name(info.palette);
    render["v_min"] = info.v_min;
    render["v_max"] = info.v_max;
  }

  ordered_json params;
  params["state"] = state_json(spec);
  params["grid"] = grid_json(gspec);
  params["threshold"] = threshold;
  params["formats"] = formats_json(formats);
  return finish_job("features", params, artifacts, render, out_base,
                    fargs.verify);
}

int run_zero_profile(const StateArgs& sargs, int n_angles, double r_max,
                     const FormatArgs& fargs, const std::string& out_base) {
  const states::StateSpec spec = to_spec(sargs);
  const PointEvaluator eval(spec, PointEvaluator::Quantity::sensitivity);
  const std::vector<double> radii =
      analysis::zero_profile(eval, n_angles, r_max);

  const std::set<std::string> formats = resolve_formats(fargs, "csv");
  std::vector<Artifact> artifacts;
  if (formats.count("csv")) {
    std::string csv = "theta,radius\n";
    for (int k = 0; k < n_angles; ++k) {
      const double theta = 2.0 * M_PI * k / n_angles;
      csv += gridio::format_double(theta) + "," +
             gridio::format_double(radii[k]) + "\n";
    }
    artifacts.push_back({out_base + ".csv", std::move(csv)});
  }
  if (formats.count("json"))
    artifacts.push_back(
        {out_base + ".json", gridio::zero_profile_to_json(radii, r_max)});

  ordered_json params;
  params["state"] = state_json(spec);
  params["n_angles"] = n_angles;
  params["r_max"] = r_max;
  params["formats"] = formats_json(formats);
  return finish_job("zero-profile", params, artifacts, {}, out_base,
                    fargs.verify);
}

// Reference values straight from the truncated-basis oracle, for pinning
// down test vectors independently of the closed forms.
int run_fixtures(const StateArgs& sargs, const GridArgs& gargs,
                 const std::string& quantity, const FormatArgs& fargs,
                 const std::string& out_base) {
  const states::StateSpec spec = to_spec(sargs);
  const analysis::GridSpec g = to_grid(gargs);
  if (g.nx < 2 || g.np < 2 || !(g.x_min < g.x_max) || !(g.p_min < g.p_max))
    throw std::invalid_argument("fixtures: degenerate grid window");

  // Pad the basis for the farthest corner so the parity kernel (wigner)
  // or the displacement (sensitivity) stays inside its accuracy region.
  const double reach =
      std::hypot(std::max(std::abs(g.x_min), std::abs(g.x_max)),
                 std::max(std::abs(g.p_min), std::abs(g.p_max))) *
      kInvSqrt2;
  const fock::FockVector v = fock::build_state_padded(spec, reach);

  const bool want_wigner = quantity == "wigner";
  std::vector<double> values(static_cast<std::size_t>(g.nx) * g.np);
  parallel::parallel_for(static_cast<std::size_t>(g.nx), [&](std::size_t ix) {
    const double x = g.x_min + (g.x_max - g.x_min) * static_cast<double>(ix) /
                                   (g.nx - 1);
    for (int ip = 0; ip < g.np; ++ip) {
      const double p =
          g.p_min + (g.p_max - g.p_min) * static_cast<double>(ip) / (g.np - 1);
      const Complex point{x * kInvSqrt2, p * kInvSqrt2};
      values[ix * static_cast<std::size_t>(g.np) + ip] =
          want_wigner ? fock::wigner_fock(v, point)
                      : fock::sensitivity_fock(v, point);
    }
  });

  ordered_json doc;
  auto& params = doc["params"];
  params["state"] = state_json(spec);
  params["grid"] = grid_json(g);
  params["quantity"] = quantity;
  doc["cutoff"] = v.cutoff();
  doc["values"] = values;

  std::vector<Artifact> artifacts;
  artifacts.push_back({out_base + ".json", doc.dump() + "\n"});
  return finish_job("fixtures", doc["params"], artifacts, {}, out_base,
                    fargs.verify);
}

// ---------------------------------------------------------------------------

int run_main(int argc, char** argv) {
  CLI::App app{
      "Phase-space toolkit for coherent, cat, compass and photon-added/"
      "subtracted states: Wigner grids, displacement sensitivity, photon "
      "statistics, state fidelities and sub-Planck feature reports.\n"
      "Set SUBPLANCK_THREADS to cap the worker count."};
  app.require_subcommand(1);

  // wigner / sensitivity ----------------------------------------------------
  StateArgs wig_state, sen_state;
  GridArgs wig_grid, sen_grid;
  FormatArgs wig_fmt, sen_fmt;
  std::string wig_out = "wigner", sen_out = "sensitivity";

  CLI::App* wig = app.add_subcommand(
      "wigner", "Wigner function on an (x, p) grid (peak-1 convention)");
  add_state_flags(wig, wig_state);
  add_grid_flags(wig, wig_grid);
  add_format_flags(wig, wig_fmt, kCsv | kJson | kPgrd | kPng);
  wig->add_option("--out", wig_out, "Output base name")->capture_default_str();
  attach_config(wig);

  CLI::App* sen = app.add_subcommand(
      "sensitivity",
      "Displacement sensitivity |<psi|D(delta)|psi>|^2 on a (dx, dp) grid");
  add_state_flags(sen, sen_state);
  add_grid_flags(sen, sen_grid);
  add_format_flags(sen, sen_fmt, kCsv | kJson | kPgrd | kPng);
  sen->add_option("--out", sen_out, "Output base name")->capture_default_str();
  attach_config(sen);

  // pnd ----------------------------------------------------------------------
  StateArgs pnd_state;
  FormatArgs pnd_fmt;
  int pnd_nmax = 32;
  std::string pnd_out = "pnd";
  CLI::App* pnd = app.add_subcommand(
      "pnd", "Photon-number distribution of a (deformed) coherent state");
  add_state_flags(pnd, pnd_state);
  pnd->add_option("--n-max", pnd_nmax, "Highest photon number reported")
      ->capture_default_str();
  add_format_flags(pnd, pnd_fmt, kCsv | kJson);
  pnd->add_option("--out", pnd_out, "Output base name")->capture_default_str();
  attach_config(pnd);

  // fidelity-scan -------------------------------------------------------------
  ScanStateArgs fid_state;
  FormatArgs fid_fmt;
  std::string fid_range, fid_out = "fidelity-scan";
  CLI::App* fid = app.add_subcommand(
      "fidelity-scan",
      "Overlap of the normalized deformed state with its base over a c0 "
      "sweep (coherent family: alpha = c0/sqrt(2))");
  add_scan_state_flags(fid, fid_state);
  fid->add_option("--c0", fid_range, "Sweep range from:to:count")->required();
  add_format_flags(fid, fid_fmt, kCsv | kJson);
  fid->add_option("--out", fid_out, "Output base name")->capture_default_str();
  attach_config(fid);

  // features -------------------------------------------------------------------
  StateArgs fea_state;
  GridArgs fea_grid;
  FormatArgs fea_fmt;
  double fea_threshold = 0.01;
  std::string fea_out = "features";
  CLI::App* fea = app.add_subcommand(
      "features",
      "Central interference-tile report (area, extents, isotropy, ratio to "
      "the Planck cell) from a Wigner grid");
  add_state_flags(fea, fea_state);
  add_grid_flags(fea, fea_grid);
  fea->add_option("--threshold", fea_threshold,
                  "Contour level as a fraction of max |W|")
      ->capture_default_str();
  add_format_flags(fea, fea_fmt, kCsv | kPgrd | kPng);
  fea->add_option("--out", fea_out, "Output base name")->capture_default_str();
  attach_config(fea);

  // zero-profile ----------------------------------------------------------------
  StateArgs zer_state;
  FormatArgs zer_fmt;
  int zer_angles = 64;
  double zer_rmax = 2.0;
  std::string zer_out = "zero-profile";
  CLI::App* zer = app.add_subcommand(
      "zero-profile",
      "Smallest |delta| with vanishing sensitivity along each ray (radius "
      "-1 marks rays that never reach zero within r-max)");
  add_state_flags(zer, zer_state);
  zer->add_option("--n-angles", zer_angles, "Number of rays (>= 16)")
      ->capture_default_str();
  zer->add_option("--r-max", zer_rmax, "Scan limit for |delta|")
      ->capture_default_str();
  add_format_flags(zer, zer_fmt, kCsv | kJson);
  zer->add_option("--out", zer_out, "Output base name")->capture_default_str();
  attach_config(zer);

  // fixtures ---------------------------------------------------------------------
  StateArgs fix_state;
  GridArgs fix_grid;
  FormatArgs fix_fmt;
  std::string fix_quantity = "wigner", fix_out = "fixtures";
  CLI::App* fix = app.add_subcommand(
      "fixtures",
      "Reference values from the truncated-basis oracle (for test vectors)");
  add_state_flags(fix, fix_state);
  add_grid_flags(fix, fix_grid);
  fix->add_option("--quantity", fix_quantity, "wigner or sensitivity")
      ->check(CLI::IsMember({"wigner", "sensitivity"}))
      ->capture_default_str();
  add_format_flags(fix, fix_fmt, kJson);
  fix->add_option("--out", fix_out, "Output base name")->capture_default_str();
  attach_config(fix);

  // verify --------------------------------------------------------------------------
  std::string ver_manifest;
  CLI::App* ver = app.add_subcommand(
      "verify", "Check files in a result directory against their manifest");
  ver->add_option("manifest", ver_manifest, "Path to a *.manifest.json")
      ->required();

  std::vector<std::string> args;
  try {
    args = expand_config(fuse_dash_values(argc, argv));
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::vector<const char*> ptrs;
  ptrs.reserve(args.size() + 1);
  ptrs.push_back(argv[0]);
  for (const auto& a : args) ptrs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help and friends: usage on stdout, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (wig->parsed())
      return run_grid_quantity("wigner", PointEvaluator::Quantity::wigner,
                               wig_state, wig_grid, wig_fmt, wig_out);
    if (sen->parsed())
      return run_grid_quantity("sensitivity",
                               PointEvaluator::Quantity::sensitivity,
                               sen_state, sen_grid, sen_fmt, sen_out);
    if (pnd->parsed()) return run_pnd(pnd_state, pnd_nmax, pnd_fmt, pnd_out);
    if (fid->parsed())
      return run_fidelity_scan(fid_state, fid_range, fid_fmt, fid_out);
    if (fea->parsed())
      return run_features(fea_state, fea_grid, fea_threshold, fea_fmt,
                          fea_out);
    if (zer->parsed())
      return run_zero_profile(zer_state, zer_angles, zer_rmax, zer_fmt,
                              zer_out);
    if (fix->parsed())
      return run_fixtures(fix_state, fix_grid, fix_quantity, fix_fmt,
                          fix_out);
    if (ver->parsed()) return verify_manifest(ver_manifest);
  } catch (const numeric_guard_error& e) {
    std::fprintf(stderr, "error (numeric guard): %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace subplanck::cli

int main(int argc, char** argv) { return subplanck::cli::run_main(argc, argv); }
