#include "bohr/experiment.hpp"

#include "bohr/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#ifndef BOHR_VERSION
#define BOHR_VERSION "0.0.0"
#endif

namespace bohr {

namespace {

constexpr double kThird = 1.0 / 3.0;

bool same_double(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

std::string format17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

SeminormFamily::Kind parse_mode(const std::string& mode) {
  if (mode == "r1") return SeminormFamily::Kind::MajorantSup;
  if (mode == "r2") return SeminormFamily::Kind::TermwiseSup;
  throw std::invalid_argument("mode must be r1 or r2: " + mode);
}

std::vector<ConvexTarget> parse_targets(const std::vector<std::string>& specs) {
  std::vector<ConvexTarget> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(parse_target(s));
  return out;
}

Json item(const ReinhardtDomain& d, const std::string& target, const std::string& mode, const RadiusEstimate& e) {
  Json j;
  j["n"] = d.dimension();
  j["p"] = number(d.p());
  j["target"] = target;
  j["mode"] = mode;
  j["radius_lo"] = number(e.lower);
  j["radius_hi"] = number(e.upper);
  j["witness"] = e.witness;
  j["margin"] = number(e.worst_margin);
  j["estimate"] = to_json(e);
  return j;
}

double published_lower(const ReinhardtDomain& d, SeminormFamily::Kind mode) {
  const double n = d.dimension();
  if (d.dimension() == 1) return kThird;
  if (mode == SeminormFamily::Kind::TermwiseSup) return 1.0 - std::pow(2.0 / 3.0, 1.0 / n);
  if (d.is_polydisk()) return 1.0 / (3.0 * std::sqrt(n));
  if (d.p() == 1.0) return 1.0 / (3.0 * std::cbrt(std::numbers::e));
  throw std::invalid_argument("no published lower radius for r1 on " + to_string(d) + "; pass --radius");
}

std::vector<FamilyMember> build_family(const ExperimentConfig& c, const ReinhardtDomain& d, const ConvexTarget& g,
                                       const std::vector<double>& alphas) {
  if (c.family == "mobius") return mobius_family(alphas, c.degree, d.dimension());
  if (c.family == "drift") return drift_family(g, alphas, c.degree, d);
  throw std::invalid_argument("unknown family: " + c.family);
}

bool is_unit_disk(const ConvexTarget& g) {
  const auto* disk = std::get_if<Disk>(&g.shape());
  return disk && disk->center == Complex{} && disk->radius == 1.0;
}

ExperimentRecord run_radius(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const SeminormFamily s(parse_mode(c.mode), d);
  const auto alphas = parse_alpha_grid(c.alpha_grid);
  Json items = Json::array();
  for (const auto& spec : c.targets) {
    const auto g = parse_target(spec);
    for (const auto& m : build_family(c, d, g, alphas)) {
      auto e = function_radius(m.series, s, g, c.tol, m.admissible ? admissible_tail(m.series, g) : TailFunction{},
                               c.condition_tol);
      e.witness = m.label;
      e.witness_parameter = m.parameter;
      Json j = item(d, spec, c.mode, e);
      j["alpha"] = m.parameter;
      if (e.upper - e.lower > c.tol) rec.passed = false;
      if (c.family == "mobius" && is_unit_disk(g)) {
        const double exact = 1.0 / (1.0 + 2.0 * m.parameter);
        j["expected"] = exact;
        if (std::abs(0.5 * (e.lower + e.upper) - exact) > c.tol) rec.passed = false;
      }
      items.push_back(std::move(j));
    }
  }
  rec.payload["items"] = std::move(items);
  return rec;
}

ExperimentRecord run_sweep(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const SeminormFamily s(parse_mode(c.mode), d);
  const auto alphas = parse_alpha_grid(c.alpha_grid);
  const double top = *std::max_element(alphas.begin(), alphas.end());
  Json items = Json::array();
  for (const auto& spec : c.targets) {
    const auto g = parse_target(spec);
    RadiusEstimate e;
    Json corridor;
    if (c.family == "witness-l1") {
      if (d.p() != 1.0 || c.mode != "r2" || !is_unit_disk(g)) {
        throw std::invalid_argument("witness-l1 needs --domain lp:1:<n>, --mode r2 and the unit disk target");
      }
      e = witness_upper_bound_l1(d.dimension(), alphas, c.tol, c.degree);
      if (d.dimension() == 2) corridor = {{"lo", 0.1835}, {"hi", 0.30}};
    } else {
      e = family_infimum(build_family(c, d, g, alphas), s, g, c.tol);
      if (c.family == "mobius" && is_unit_disk(g) && top >= 0.999) corridor = {{"lo", kThird - 1e-6}, {"hi", kThird + 2e-3}};
    }
    Json j = item(d, spec, c.mode, e);
    if (!corridor.is_null()) {
      const bool ok = e.upper >= corridor["lo"].get<double>() && e.upper <= corridor["hi"].get<double>();
      corridor["passed"] = ok;
      rec.passed = rec.passed && ok;
      j["corridor"] = corridor;
    }
    items.push_back(std::move(j));
  }
  rec.payload["items"] = std::move(items);
  return rec;
}

ExperimentRecord run_probe(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const auto kind = parse_mode(c.mode);
  const SeminormFamily s(kind, d);
  const double r = std::isnan(c.radius) ? published_lower(d, kind) : c.radius;
  Json items = Json::array();
  for (const auto& spec : c.targets) {
    const AdmissibleGenerator gen(parse_target(spec), d, c.inner_degree, c.contraction, c.seed, c.probe_degree);
    const auto e = probe_no_violation(gen, s, r, c.count, {}, c.condition_tol);
    Json j = item(d, spec, c.mode, e);
    j["probe_radius"] = r;
    j["violations"] = e.violations;
    items.push_back(std::move(j));
    if (e.violations != 0) rec.passed = false;
  }
  rec.payload["items"] = std::move(items);
  return rec;
}

ExperimentRecord run_verify_bounds(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const auto one = ReinhardtDomain::polydisk(1);
  Json items = Json::array();
  for (const auto& spec : c.targets) {
    const auto g = parse_target(spec);
    if (g.is_whole_plane()) continue;
    const AdmissibleGenerator gen(g, one, c.inner_degree, c.contraction, c.seed, c.probe_degree);
    std::vector<CoefficientBoundReport> reports(c.count);
    parallel_for(c.count, [&](std::size_t i) {
      reports[i] = landau_caratheodory_check(gen.generate(i).series, g, c.condition_tol);
    });
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!reports[i].passed) ++violations;
      if (reports[i].max_excess > worst) {
        worst = reports[i].max_excess;
        worst_index = i;
      }
    }
    Json j{{"check", "coefficient_bound"}, {"n", 1},          {"p", number(one.p())},
           {"target", spec},               {"mode", ""},       {"witness", "index=" + std::to_string(worst_index)},
           {"margin", number(-worst)},     {"count", c.count}, {"violations", violations}};
    items.push_back(std::move(j));
    if (violations != 0) rec.passed = false;
  }

  // Equality case: 2(1-z)/(1+z) onto Re w > 0, |c_k| = 2 dist(c0, boundary).
  const ConvexTarget right = HalfPlane{{}, {1.0, 0.0}};
  const auto h = disk_to_target_map(right);
  const auto cayley = compose(h.taylor(Complex{}, c.probe_degree), TruncatedPowerSeries::monomial(MultiIndex::unit(1, 0), 1.0, c.probe_degree), c.probe_degree);
  const auto eq = landau_caratheodory_check(cayley, right, c.condition_tol);
  items.push_back(Json{{"check", "equality_case"}, {"n", 1}, {"p", number(one.p())}, {"target", to_string(right)},
                       {"mode", ""}, {"witness", "2(1-z)/(1+z)"}, {"margin", number(-eq.max_excess)},
                       {"passed", std::abs(eq.max_excess) <= 1e-9}});
  if (std::abs(eq.max_excess) > 1e-9) rec.passed = false;

  const auto kind = parse_mode(c.mode);
  const bool supported = kind == SeminormFamily::Kind::TermwiseSup
                             ? true
                             : d.dimension() >= 2 && (d.is_polydisk() || d.p() == 1.0);
  if (supported) {
    BracketOptions options;
    options.probe_count = c.count;
    options.seed = c.seed;
    options.probe_degree = c.probe_degree;
    options.inner_degree = c.inner_degree;
    options.contraction = c.contraction;
    options.family_degree = c.degree;
    options.alphas = parse_alpha_grid(c.alpha_grid);
    options.tol = c.tol;
    const auto b = bracket_consistency(d.dimension(), d, kind, options);
    Json j = item(d, "disk:0,0,1", c.mode, b.witness);
    j["check"] = "bracket";
    j["published_lower"] = number(b.published_lower);
    j["published_upper"] = number(b.published_upper);
    j["upper_vacuous"] = b.upper_vacuous;
    j["probe"] = to_json(b.probe);
    j["witness_consistent"] = b.witness_consistent;
    if (b.upper_side_certified) j["upper_side_certified"] = *b.upper_side_certified;
    j["note"] = b.note;
    j["passed"] = b.passed();
    items.push_back(std::move(j));
    if (!b.passed()) rec.passed = false;
  }
  rec.payload["items"] = std::move(items);
  return rec;
}

ExperimentRecord run_axioms(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const SeminormFamily s(parse_mode(c.mode), d);
  std::vector<TruncatedPowerSeries> functions;
  functions.reserve(c.count + 1);
  for (std::size_t i = 0; i <= c.count; ++i) {
    functions.push_back(random_series(d.dimension(), c.inner_degree, c.seed, i));
  }
  std::vector<double> grid;
  for (int k = 1; k <= 9; ++k) grid.push_back(0.1 * k);
  const auto report = check_axioms(s, functions, grid, c.condition_tol);
  const auto outcome = [](const AxiomOutcome& o) {
    return Json{{"checked", o.checked}, {"failed", o.failed}, {"skipped", o.skipped}, {"worst_margin", number(o.worst_margin)}};
  };
  const auto& b = report.submultiplicative;
  const double skip_share = b.checked + b.skipped == 0 ? 0.0 : double(b.skipped) / double(b.checked + b.skipped);
  double worst = std::min({report.monotone.worst_margin, report.submultiplicative.worst_margin,
                           report.limit.worst_margin, report.split.worst_margin});
  Json j{{"n", d.dimension()}, {"p", number(d.p())}, {"target", ""}, {"mode", c.mode}, {"witness", ""},
         {"margin", number(worst)}};
  j["monotone"] = outcome(report.monotone);
  j["submultiplicative"] = outcome(report.submultiplicative);
  j["limit"] = outcome(report.limit);
  j["split"] = outcome(report.split);
  j["deviation_at_smallest_r"] = number(report.deviation_at_smallest_r);
  j["skip_share"] = skip_share;
  rec.passed = report.passed() && skip_share < 0.05;
  j["passed"] = rec.passed;
  rec.payload["items"] = Json::array({j});
  return rec;
}

ExperimentRecord run_independence(const ExperimentConfig& c) {
  ExperimentRecord rec;
  const auto d = parse_domain(c.domain);
  const SeminormFamily s(parse_mode(c.mode), d);
  IndependenceOptions options;
  options.tol = c.tol;
  options.alphas = parse_alpha_grid(c.alpha_grid);
  options.degree = c.degree;
  const auto report = independence_experiment(s, parse_targets(c.targets), options);
  Json items = Json::array();
  for (const auto& e : report.entries) {
    Json j = item(d, e.target, c.mode, e.estimate);
    j["asserted"] = e.asserted;
    if (!e.note.empty()) j["note"] = e.note;
    if (e.asserted && d.dimension() == 1 && std::abs(e.estimate.upper - kThird) > report.agreement) rec.passed = false;
    items.push_back(std::move(j));
  }
  rec.payload["items"] = std::move(items);
  rec.payload["spread"] = number(report.spread);
  rec.payload["agreement"] = report.agreement;
  if (!report.passed()) rec.passed = false;
  return rec;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell(const Json& j, const char* key) {
  if (!j.contains(key)) return "";
  const Json& v = j[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format17(v.get<double>());
  return v.dump();
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return command == o.command && domain == o.domain && targets == o.targets && mode == o.mode &&
         family == o.family && alpha_grid == o.alpha_grid && count == o.count && seed == o.seed && tol == o.tol &&
         condition_tol == o.condition_tol && degree == o.degree && probe_degree == o.probe_degree &&
         inner_degree == o.inner_degree && contraction == o.contraction && same_double(radius, o.radius) &&
         output == o.output;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> commands{"radius", "sweep", "probe", "verify-bounds", "axioms", "independence"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    throw std::invalid_argument("unknown command: " + command);
  }
  (void)parse_domain(domain);
  if (targets.empty()) throw std::invalid_argument("at least one target is required");
  (void)parse_targets(targets);
  (void)parse_mode(mode);
  (void)parse_alpha_grid(alpha_grid);
  if (!(tol > 0.0) || !(condition_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (degree < 1 || probe_degree < 1 || inner_degree < 1) throw std::invalid_argument("degrees must be positive");
  if (inner_degree > probe_degree) throw std::invalid_argument("inner degree exceeds probe degree");
  if (!(contraction > 0.0 && contraction < 1.0)) throw std::invalid_argument("contraction must lie in (0,1)");
  if (!std::isnan(radius) && !(radius > 0.0 && radius < 1.0)) throw std::invalid_argument("radius must lie in (0,1)");
  if (count == 0 && (command == "probe" || command == "axioms" || command == "verify-bounds")) {
    throw std::invalid_argument("count must be positive");
  }
}

Json number(double x) {
  if (std::isfinite(x)) return x;
  return format17(x);
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("not a number: " + s);
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"command", c.command},
              {"domain", c.domain},
              {"targets", c.targets},
              {"mode", c.mode},
              {"family", c.family},
              {"alpha_grid", c.alpha_grid},
              {"count", c.count},
              {"seed", c.seed},
              {"tol", number(c.tol)},
              {"condition_tol", number(c.condition_tol)},
              {"degree", c.degree},
              {"probe_degree", c.probe_degree},
              {"inner_degree", c.inner_degree},
              {"contraction", number(c.contraction)},
              {"radius", number(c.radius)},
              {"output", c.output}};
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.command = j.at("command").get<std::string>();
  c.domain = j.at("domain").get<std::string>();
  c.targets = j.at("targets").get<std::vector<std::string>>();
  c.mode = j.at("mode").get<std::string>();
  c.family = j.at("family").get<std::string>();
  c.alpha_grid = j.at("alpha_grid").get<std::string>();
  c.count = j.at("count").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.tol = number_from(j.at("tol"));
  c.condition_tol = number_from(j.at("condition_tol"));
  c.degree = j.at("degree").get<int>();
  c.probe_degree = j.at("probe_degree").get<int>();
  c.inner_degree = j.at("inner_degree").get<int>();
  c.contraction = number_from(j.at("contraction"));
  c.radius = number_from(j.at("radius"));
  c.output = j.at("output").get<std::string>();
  return c;
}

Json to_json(const ExperimentRecord& r) {
  return Json{{"kind", r.kind},         {"config", to_json(r.config)}, {"payload", r.payload},
              {"passed", r.passed},     {"version", r.version},        {"timestamp", r.timestamp},
              {"wall_clock", r.wall_clock}};
}

ExperimentRecord record_from_json(const Json& j) {
  ExperimentRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.config = config_from_json(j.at("config"));
  r.payload = j.at("payload");
  r.passed = j.at("passed").get<bool>();
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.wall_clock = j.at("wall_clock").get<double>();
  return r;
}

Json to_json(const RadiusEstimate& e) {
  return Json{{"lower", number(e.lower)},
              {"upper", number(e.upper)},
              {"tolerance", number(e.tolerance)},
              {"kind", to_string(e.kind)},
              {"probe_radius", number(e.probe_radius)},
              {"witness", e.witness},
              {"witness_parameter", number(e.witness_parameter)},
              {"on_boundary", e.on_boundary},
              {"worst_margin", number(e.worst_margin)},
              {"violations", e.violations},
              {"uncertain", e.uncertain},
              {"count", e.count},
              {"tail", number(e.tail)}};
}

std::string config_hash(const ExperimentConfig& c) {
  Json j = to_json(c);
  j.erase("output");
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentRecord run(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  if (config.command == "radius") {
    rec = run_radius(config);
  } else if (config.command == "sweep") {
    rec = run_sweep(config);
  } else if (config.command == "probe") {
    rec = run_probe(config);
  } else if (config.command == "verify-bounds") {
    rec = run_verify_bounds(config);
  } else if (config.command == "axioms") {
    rec = run_axioms(config);
  } else {
    rec = run_independence(config);
  }
  rec.kind = config.command;
  rec.config = config;
  rec.version = BOHR_VERSION;
  rec.timestamp = utc_timestamp();
  rec.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::filesystem::path default_results_dir() {
  if (const char* env = std::getenv("BOHRLAB_RESULTS_DIR"); env && *env) return env;
  return "bohrlab-results";
}

std::filesystem::path persist(const ExperimentRecord& record, const std::filesystem::path& results_dir) {
  namespace fs = std::filesystem;
  fs::path path;
  if (!record.config.output.empty()) {
    path = record.config.output;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
  } else {
    const fs::path dir = results_dir / config_hash(record.config);
    fs::create_directories(dir);
    int next = 1;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      int k = 0;
      if (std::sscanf(name.c_str(), "run-%d.json", &k) == 1) next = std::max(next, k + 1);
    }
    char name[32];
    std::snprintf(name, sizeof name, "run-%04d.json", next);
    path = dir / name;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(record).dump(2) << '\n';
  return path;
}

std::string emit_table(const std::vector<ExperimentRecord>& records, TableFormat format) {
  static const std::vector<std::string> header{"experiment_id", "n",         "p",       "target", "mode",
                                               "radius_lo",     "radius_hi", "witness", "seed",   "margin"};
  for (const auto& r : records) {
    if (r.kind != records.front().kind) throw std::invalid_argument("emit_table: mixed record kinds");
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;
  for (const auto& r : records) {
    const std::string id = config_hash(r.config);
    std::vector<double> radii;
    for (const auto& it : r.payload.value("items", Json::array())) {
      rows.push_back({id, cell(it, "n"), cell(it, "p"), cell(it, "target"), cell(it, "mode"), cell(it, "radius_lo"),
                      cell(it, "radius_hi"), cell(it, "witness"), std::to_string(r.config.seed), cell(it, "margin")});
      if (it.value("asserted", false)) radii.push_back(number_from(it.at("radius_hi")));
    }
    if (r.kind == "independence") {
      double delta = 0.0;
      for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = i + 1; j < radii.size(); ++j) delta = std::max(delta, std::abs(radii[i] - radii[j]));
      }
      footer.push_back(format17(delta));
    }
  }

  std::ostringstream out;
  if (format == TableFormat::Csv) {
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    for (const auto& f : footer) out << "# max_pairwise_delta," << f << '\n';
    return out.str();
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  const auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  for (const auto& f : footer) out << "max pairwise delta: " << f << '\n';
  return out.str();
}

}  // namespace bohr
