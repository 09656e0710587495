// pconway: Conway polynomials of links and congruence checks for periodic links.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pconway/diagram.hpp"
#include "pconway/json_io.hpp"
#include "pconway/linking.hpp"
#include "pconway/periodic.hpp"
#include "pconway/skein.hpp"
#include "pconway/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pconway;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Input errors that already carry their file context.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::size_t max_crossings = 64;
  double time_limit_s = 60.0;
  bool no_cache = false;
  bool json_flag = false;
  std::string json_path;

  SkeinOptions skein() const {
    SkeinOptions o;
    o.use_cache = !no_cache;
    o.max_crossings = max_crossings;
    o.time_limit = std::chrono::milliseconds(static_cast<long>(time_limit_s * 1000));
    return o;
  }
  bool json() const { return json_flag || !json_path.empty(); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LinkDiagram load_diagram(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_pd(text);
  } catch (const ParseError& e) {
    // Drop the "line L, column C: " prefix in favour of path:L:C.
    std::string msg = e.what();
    if (auto k = msg.find(": "); k != std::string::npos) msg = msg.substr(k + 2);
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + msg);
  } catch (const ValidationError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

QuotientPattern load_pattern(const std::string& path) {
  try {
    QuotientPattern q = pattern_from_json(load_json(path));
    require_valid(q);
    return q;
  } catch (const ValidationError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit_json(const Globals& g, const json& j) {
  if (g.json_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(g.json_path, std::ios::binary);
  if (!out) throw InputError(g.json_path + ": cannot write file");
  out << j.dump(2) << '\n';
}

/// Optional persistent memo, enabled by PCONWAY_CACHE_DIR.
class PersistentCache {
 public:
  explicit PersistentCache(const Globals& g) {
    const char* dir = std::getenv("PCONWAY_CACHE_DIR");
    if (g.no_cache || dir == nullptr || *dir == '\0') return;
    path_ = fs::path(dir) / "conway-cache.json";
    cache_ = std::make_shared<MemoCache>();
    std::ifstream in(path_);
    if (!in) return;
    try {
      cache_from_json(json::parse(in), *cache_);
    } catch (const std::exception& e) {
      std::cerr << "warning: ignoring unreadable cache " << path_ << ": " << e.what() << '\n';
      cache_->clear();
    }
  }
  ~PersistentCache() {
    if (!cache_) return;
    std::error_code ec;
    fs::create_directories(path_.parent_path(), ec);
    std::ofstream out(path_);
    if (out) out << cache_to_json(*cache_).dump() << '\n';
  }
  PersistentCache(const PersistentCache&) = delete;
  PersistentCache& operator=(const PersistentCache&) = delete;

  std::shared_ptr<MemoCache> get() const { return cache_; }

 private:
  fs::path path_;
  std::shared_ptr<MemoCache> cache_;
};

std::string normal_form_text(const ConwayNormalForm& nf) {
  if (nf.even_coefficients.empty()) return "a_0 = 0";
  std::string out;
  for (std::size_t i = 0; i < nf.even_coefficients.size(); ++i) {
    if (i) out += ", ";
    out += "a_" + std::to_string(2 * i) + " = " + nf.even_coefficients[i].get_str();
  }
  return out;
}

json normal_form_json(const ConwayNormalForm& nf) {
  json coeffs = json::array();
  for (const auto& a : nf.even_coefficients) coeffs.push_back(a.get_str());
  return {{"components", nf.component_count}, {"a", coeffs}};
}

json matrix_json(const LinkingMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.rows()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.get_str());
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------

int cmd_conway(const Globals& g, const std::string& file) {
  const LinkDiagram d = load_diagram(file);
  if (d.empty()) throw InputError(file + ": diagram is empty");
  PersistentCache store(g);
  ConwayEngine engine(g.skein(), store.get());
  const IntPolynomial poly = engine.conway(d);
  const int n = components(d).count;
  const ConwayNormalForm nf = to_normal_form(poly, n);
  if (g.json()) {
    emit_json(g, {{"schema", kSchemaVersion},
                  {"diagram", diagram_to_json(d)},
                  {"conway", to_string(poly)},
                  {"normal_form", normal_form_json(nf)}});
  } else {
    std::cout << "∇ = " << to_string(poly) << " ; n=" << n << " ; " << normal_form_text(nf) << '\n';
  }
  return kExitOk;
}

int cmd_lkmatrix(const Globals& g, const std::string& file) {
  const LinkDiagram d = load_diagram(file);
  if (d.empty()) throw InputError(file + ": diagram is empty");
  const LinkingMatrix m = build_linking_matrix(d);
  const BigInt cof = m.size() > 0 ? cofactor(m, 0, 0) : BigInt(1);
  const BigInt a0_matrix = a0_from_matrix(m);
  PersistentCache store(g);
  ConwayEngine engine(g.skein(), store.get());
  const IntPolynomial poly = engine.conway(d);
  const BigInt a0_skein = to_normal_form(poly, static_cast<int>(m.size())).a(0);
  const bool agree = a0_matrix == a0_skein;
  if (g.json()) {
    emit_json(g, {{"schema", kSchemaVersion},
                  {"matrix", matrix_json(m)},
                  {"cofactor_00", cof.get_str()},
                  {"a0_matrix", a0_matrix.get_str()},
                  {"a0_skein", a0_skein.get_str()},
                  {"agree", agree}});
  } else {
    for (const auto& row : m.rows()) {
      for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "") << row[j].get_str();
      std::cout << '\n';
    }
    std::cout << "cofactor(0,0) = " << cof.get_str() << '\n'
              << "a_0 (matrix) = " << a0_matrix.get_str() << '\n'
              << "a_0 (skein)  = " << a0_skein.get_str() << '\n'
              << (agree ? "agree" : "DISAGREE") << '\n';
  }
  return agree ? kExitOk : kExitFailure;
}

int cmd_lift(const Globals& g, const std::string& file, int p) {
  const QuotientPattern q = load_pattern(file);
  const Lift l = lift(q, p);
  if (g.json()) {
    emit_json(g, lift_to_json(l, p));
    return kExitOk;
  }
  const auto& o = l.orbits;
  std::cout << render_pd(l.diagram) << '\n'
            << "components: " << o.orbit_of.size() << ", crossings: " << l.diagram.crossing_count()
            << '\n';
  for (std::size_t c = 0; c < o.orbit_of.size(); ++c)
    std::cout << "component " << c << ": orbit " << o.orbit_of[c] << ", position "
              << o.position_of[c] << ", rotates to " << o.rotation[c] << '\n';
  return kExitOk;
}

int cmd_classify(const Globals& g, const std::string& file, int p) {
  const QuotientPattern q = load_pattern(file);
  const auto windings = winding_numbers(q);
  const bool strong = is_strongly_periodic(q, p);
  const bool os = is_orbitally_separated(q);
  const auto type = is_prime(p) ? classify_type_m(q, p) : std::nullopt;
  if (g.json()) {
    json t = nullptr;
    if (type) {
      t = {{"m", type->m},
           {"quotient_pairs", type->quotient_pairs},
           {"invariant_pairs", type->invariant_pairs},
           {"periodic_quotient", type->periodic_quotient},
           {"periodic_part", type->periodic_part}};
    }
    emit_json(g, {{"schema", kSchemaVersion},
                  {"p", p},
                  {"windings", windings},
                  {"strongly_periodic", strong},
                  {"orbitally_separated", os},
                  {"type", t}});
    return kExitOk;
  }
  std::cout << "windings:";
  for (long w : windings) std::cout << ' ' << w;
  std::cout << '\n'
            << "strongly " << p << "-periodic: " << (strong ? "yes" : "no") << '\n'
            << "orbitally separated: " << (os ? "yes" : "no") << '\n';
  if (type) {
    std::cout << "type m = " << type->m << '\n';
    for (auto [a, b] : type->quotient_pairs) std::cout << "  pair (" << a << ", " << b << ")\n";
  } else {
    std::cout << "no type-m structure\n";
  }
  return kExitOk;
}

struct GenArgs {
  int width = 2;
  int events = 6;
  int p = 3;
  bool os = false;
  bool strong = false;
  std::uint64_t seed = 1;
  int count = 1;
  int max_rejections = 20000;
};

int cmd_gen(const Globals& g, const GenArgs& a) {
  PatternConfig c;
  c.boundary_width = a.width;
  c.event_count = a.events;
  c.p = a.p;
  c.require_os = a.os;
  c.require_strong = a.strong;
  c.max_rejections = a.max_rejections;
  json patterns = json::array();
  for (int i = 0; i < a.count; ++i) {
    // Pattern i uses seed + i so single patterns can be regenerated.
    QuotientPattern q;
    try {
      q = random_pattern(c, a.seed + static_cast<std::uint64_t>(i));
    } catch (const PatternGenerationError& e) {
      throw InputError(e.what());
    }
    patterns.push_back(pattern_to_json(q));
  }
  if (g.json()) {
    emit_json(g, {{"schema", kSchemaVersion}, {"seed", a.seed}, {"patterns", patterns}});
  } else {
    for (const auto& q : patterns) std::cout << q.dump() << '\n';
  }
  return kExitOk;
}

std::vector<int> parse_primes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int p = std::stoi(item, &used);
      if (used != item.size() || !is_prime(p)) throw std::invalid_argument("");
      out.push_back(p);
    } catch (const std::exception&) {
      throw InputError("--p: '" + item + "' is not a prime");
    }
  }
  return out;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string primes = "3,5";
  int count = 100;
  std::uint64_t seed = 42;
  int threads = 1;
  std::string witness_dir;
  bool timing = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  SuiteConfig c;
  if (a.suite == "all") {
    c.suites = {"main", "lemma41", "lemma43", "hopf"};
  } else {
    c.suites = {a.suite};
  }
  c.primes = parse_primes(a.primes);
  c.count = a.count;
  c.seed = a.seed;
  c.max_crossings = g.max_crossings;
  c.time_limit = g.skein().time_limit;
  c.use_cache = !g.no_cache;
  c.threads = a.threads;
  if (!a.witness_dir.empty()) c.witness_dir = a.witness_dir;
  const SuiteReport r = run_suite(c);
  const OutcomeCounts t = r.totals();
  if (g.json()) {
    emit_json(g, suite_to_json(r, a.timing));
  } else {
    for (const auto& [name, n] : r.summary())
      std::cout << name << ": " << n.pass << " pass, " << n.fail << " fail, " << n.not_applicable
                << " not applicable, " << n.skipped << " skipped\n";
    for (const auto& rep : r.reports)
      if (rep.outcome == Outcome::fail) std::cout << "FAIL " << rep.statement << ": " << rep.detail << '\n';
  }
  return t.fail == 0 ? kExitOk : kExitFailure;
}

int cmd_replay(const Globals& g, const std::string& file) {
  VerificationReport recorded;
  try {
    recorded = report_from_json(load_json(file));
  } catch (const ValidationError& e) {
    throw InputError(file + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  }
  ConwayEngine engine(g.skein());
  const VerificationReport again = replay(recorded, engine, CheckLimits{g.skein().time_limit});
  const bool same = report_to_json(again) == report_to_json(recorded);
  if (g.json()) {
    emit_json(g, {{"schema", kSchemaVersion}, {"reproduced", same}, {"report", report_to_json(again)}});
  } else {
    std::cout << again.statement << ": " << to_string(again.outcome) << " (" << again.detail << ")\n"
              << (same ? "reproduced" : "NOT reproduced") << '\n';
  }
  if (!same) return kExitFailure;
  return again.outcome == Outcome::fail ? kExitFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conway polynomials of links and congruence checks for periodic links"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--max-crossings", g.max_crossings, "Crossing ceiling for skein evaluation")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit", g.time_limit_s, "Seconds per computation; 0 for unlimited")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-cache", g.no_cache, "Disable memoization");
  auto* json_opt = app.add_option("--json", g.json_path, "Emit JSON, to FILE when given")
                       ->expected(0, 1);
  app.set_version_flag("--version", "pconway 1.0");

  std::string file;
  int p = 3;

  auto* conway_cmd = app.add_subcommand("conway", "Conway polynomial of a PD diagram");
  conway_cmd->add_option("pd-file", file, "PD-code text file")->required();

  auto* lk_cmd = app.add_subcommand("lkmatrix", "Linking matrix and a_0 cross-check");
  lk_cmd->add_option("pd-file", file, "PD-code text file")->required();

  auto* lift_cmd = app.add_subcommand("lift", "p-fold cyclic lift of a quotient pattern");
  lift_cmd->add_option("pattern", file, "Pattern JSON file")->required();
  lift_cmd->add_option("-p", p, "Period")->required()->check(CLI::PositiveNumber);

  auto* classify_cmd = app.add_subcommand("classify", "Periodicity and type-m classification");
  classify_cmd->add_option("pattern", file, "Pattern JSON file")->required();
  classify_cmd->add_option("-p", p, "Period")->required()->check(CLI::Range(2, 1 << 20));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Random quotient patterns");
  gen_cmd->add_option("--width", gen.width, "Boundary width")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--events", gen.events, "Event count")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("-p", gen.p, "Period")->check(CLI::Range(2, 1 << 20));
  gen_cmd->add_flag("--os", gen.os, "Require orbital separation");
  gen_cmd->add_flag("--strong", gen.strong, "Require strong periodicity");
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first pattern");
  gen_cmd->add_option("--count", gen.count, "Number of patterns")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-rejections", gen.max_rejections, "Give up after this many draws")
      ->check(CLI::PositiveNumber);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--suite", va.suite, "Suite to run")
      ->check(CLI::IsMember({"main", "lemma41", "lemma43", "hopf", "all"}));
  verify_cmd->add_option("--p", va.primes, "Comma-separated primes");
  verify_cmd->add_option("--count", va.count, "Checks per suite and prime")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", va.seed, "Master seed");
  verify_cmd->add_option("--threads", va.threads, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--witness-dir", va.witness_dir, "Directory for failing reports");
  verify_cmd->add_flag("--timing", va.timing, "Include per-check timings in JSON");

  auto* replay_cmd = app.add_subcommand("replay", "Re-run a stored verification report");
  replay_cmd->add_option("report", file, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  g.json_flag = json_opt->count() > 0;

  try {
    if (*conway_cmd) return cmd_conway(g, file);
    if (*lk_cmd) return cmd_lkmatrix(g, file);
    if (*lift_cmd) return cmd_lift(g, file, p);
    if (*classify_cmd) return cmd_classify(g, file, p);
    if (*gen_cmd) return cmd_gen(g, gen);
    if (*verify_cmd) return cmd_verify(g, va);
    if (*replay_cmd) return cmd_replay(g, file);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TimeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
