#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcpoly/cw_basis.hpp"
#include "fcpoly/error.hpp"
#include "fcpoly/factorization.hpp"
#include "fcpoly/polytope.hpp"
#include "fcpoly/simplex_ops.hpp"
#include "fcpoly/whitehead.hpp"

#ifndef FCPOLY_FIGURES_DIR
#define FCPOLY_FIGURES_DIR "figures"
#endif

namespace fcpoly::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out, RunReport& report) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  report.artifacts.push_back(path);
}

Bidegree parseBidegree(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--source expects COSIMP,SIMP, got '" + s + "'");
  try {
    return Bidegree{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--source expects COSIMP,SIMP, got '" + s + "'");
  }
}

// {"source": {"cosimp": c, "simp": s}, "letters": [{"k": "d", "i": 0}, ...]}
// with k in d (face), s (degeneracy), D (coface), S (codegeneracy).
OpWord wordFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto& src = j.at("source");
    std::vector<Letter> letters;
    for (const auto& l : j.at("letters")) {
      const std::string k = l.at("k").get<std::string>();
      const int i = l.at("i").get<int>();
      if (k == "d") letters.push_back(face(i));
      else if (k == "s") letters.push_back(degen(i));
      else if (k == "D") letters.push_back(coface(i));
      else if (k == "S") letters.push_back(codegen(i));
      else throw Error(Errc::MalformedInput, "unknown letter kind '" + k + "'");
    }
    return OpWord(std::move(letters), {src.at("cosimp").get<int>(), src.at("simp").get<int>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
}

OpWord wordArgument(const std::string& text, const std::string& source, const std::string& input) {
  if (!input.empty()) return wordFromJson(readFile(input));
  if (text.empty()) throw UsageError("a word (or --input FILE) is required");
  if (source.empty()) throw UsageError("--source COSIMP,SIMP is required");
  return OpWord(parseLetters(text), parseBidegree(source));
}

ExportFormat parseFormat(const std::string& f) {
  if (f == "json") return ExportFormat::Json;
  if (f == "dot") return ExportFormat::Dot;
  if (f == "off") return ExportFormat::Off;
  throw UsageError("unknown format '" + f + "'");
}

// "n:deg=count" or "n,r:deg=count"
void applyOverride(const std::string& spec, GradedSetSpec& target) {
  const auto colon = spec.find(':');
  const auto eq = spec.find('=');
  if (colon == std::string::npos || eq == std::string::npos || eq < colon) {
    throw UsageError("override must look like LEVEL:DEGREE=COUNT, got '" + spec + "'");
  }
  const int deg = std::stoi(spec.substr(colon + 1, eq - colon - 1));
  const int count = std::stoi(spec.substr(eq + 1));
  if (deg < 1 || count < 0) throw UsageError("bad override '" + spec + "'");
  target.names.erase(deg);
  if (count == 0) target.counts.erase(deg);
  else target.counts[deg] = static_cast<std::size_t>(count);
}

std::vector<std::string> lineDiff(const std::string& expected, const std::string& actual) {
  std::vector<std::string> diffs;
  std::istringstream a(expected);
  std::istringstream b(actual);
  std::string la;
  std::string lb;
  for (int line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) break;
    if (!ha) la = "<eof>";
    if (!hb) lb = "<eof>";
    if (la != lb) {
      diffs.push_back("line " + std::to_string(line) + ": expected " + la + " | got " + lb);
      if (diffs.size() >= 20) break;
    }
  }
  return diffs;
}

bool isCubeGraph(const CellComplex& c) {
  if (c.vertices().size() != 8) return false;
  const auto edges = c.edges();
  if (edges.size() != 12) return false;
  std::vector<std::set<std::size_t>> adj(8);
  for (auto [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  // Label vertices by 3-bit codes via BFS from vertex 0 and check every edge
  // flips exactly one bit.
  std::vector<int> code(8, -1);
  code[0] = 0;
  std::vector<std::size_t> nbrs(adj[0].begin(), adj[0].end());
  if (nbrs.size() != 3) return false;
  for (int b = 0; b < 3; ++b) code[nbrs[static_cast<std::size_t>(b)]] = 1 << b;
  for (int round = 0; round < 3; ++round) {
    for (std::size_t v = 0; v < 8; ++v) {
      if (code[v] >= 0) continue;
      std::vector<int> known;
      for (auto u : adj[v]) {
        if (code[u] >= 0) known.push_back(code[u]);
      }
      if (known.size() >= 2) code[v] = known[0] | known[1];
    }
  }
  std::set<int> used(code.begin(), code.end());
  if (used.size() != 8 || used.count(-1)) return false;
  for (auto [a, b] : edges) {
    const int x = code[a] ^ code[b];
    if (x == 0 || (x & (x - 1)) != 0) return false;
  }
  return true;
}

struct FigureCase {
  const char* file;
  const char* psi;
  Bidegree source;
};

constexpr FigureCase kFigures[] = {
    {"fig3.json", "d_0 d_1 s^0 s^1", {2, 2}},
    {"fig4.json", "d_0 d_1 d_2 s^0", {1, 3}},
};

}  // namespace

std::string defaultFiguresDir() { return FCPOLY_FIGURES_DIR; }

RunReport checkFigures(const std::string& dir, std::ostream& out) {
  RunReport report;
  auto record = [&](const std::string& name, bool pass) {
    report.checks.emplace_back(name, pass);
    out << (pass ? "PASS " : "FAIL ") << name << "\n";
  };
  for (const auto& fig : kFigures) {
    const auto t0 = Clock::now();
    const LabeledPolytope lp = labelPolytope(makeTarget(OpWord(parseLetters(fig.psi), fig.source)));
    const std::string actual = factorizationJson(lp);
    report.timings.emplace_back(fig.file, secondsSince(t0));

    std::map<std::size_t, std::size_t> sizes;
    for (const auto& cls : lp.labels) ++sizes[cls.members.size()];
    if (std::string(fig.file) == "fig3.json") {
      record("fig3: 18 classes, 6 doubled", lp.labels.size() == 18 && sizes[2] == 6 && sizes[1] == 12);
    } else {
      record("fig4: 8 classes, two of size 6, cube graph",
             lp.labels.size() == 8 && sizes[6] == 2 && isCubeGraph(lp.complex));
    }

    const std::string path = dir + "/" + fig.file;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      record(std::string(fig.file) + ": golden file present", false);
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto diffs = lineDiff(ss.str(), actual);
    for (const auto& d : diffs) out << "  " << fig.file << " " << d << "\n";
    record(std::string(fig.file) + ": matches golden", diffs.empty());
  }
  for (const auto& [name, pass] : report.checks) {
    if (!pass) report.exitCode = kCheckFailure;
  }
  return report;
}

RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunReport report;
  CLI::App app{"Face-codegeneracy polyhedra and operator-word calculus", "fcpoly"};
  app.require_subcommand(1);

  std::string word;
  std::string source;
  std::string input;
  std::string output;
  std::string format = "json";

  auto* normalizeCmd = app.add_subcommand("normalize", "Canonical form phi o theta of a face/codegeneracy word");
  normalizeCmd->add_option("word", word, "e.g. \"s^0 d_0 s^1 d_1\"");
  normalizeCmd->add_option("--source", source, "source bidegree COSIMP,SIMP");
  normalizeCmd->add_option("--input", input, "word as JSON");
  bool showOracle = false;
  normalizeCmd->add_flag("--oracle", showOracle, "also print the underlying Delta maps");

  int N = 0;
  int n = 0;
  bool full = false;
  auto* polytopeCmd = app.add_subcommand("polytope", "Cell complex P^N_n");
  polytopeCmd->add_option("--N", N, "number of letters")->required();
  polytopeCmd->add_option("--n", n, "number of codegeneracies");
  polytopeCmd->add_flag("--permutohedron", full, "build P^N directly from ordered set partitions");
  polytopeCmd->add_option("--format", format, "json | dot | off");
  polytopeCmd->add_option("-o,--output", output, "write to file");

  auto* factorizeCmd = app.add_subcommand("factorize", "Labelled polyhedron P^{n+m}_n(psi) and its boundary scheme");
  factorizeCmd->add_option("word", word, "psi as a word");
  factorizeCmd->add_option("--source", source, "source bidegree COSIMP,SIMP");
  factorizeCmd->add_option("--input", input, "word as JSON");
  factorizeCmd->add_option("--format", format, "json | dot");
  factorizeCmd->add_option("-o,--output", output, "write to file");

  std::string specFile;
  std::vector<std::string> cwOverrides;
  std::vector<std::string> crossOverrides;
  int maxLevel = 3;
  auto* crossCmd = app.add_subcommand("crossterms", "Level inventories R_n and E-bar^n_r from a basis spec");
  crossCmd->add_option("--spec", specFile, "JSON basis spec");
  crossCmd->add_option("--cw", cwOverrides, "override LEVEL:DEGREE=COUNT");
  crossCmd->add_option("--cross", crossOverrides, "override N,R:DEGREE=COUNT");
  crossCmd->add_option("--max-level", maxLevel, "largest n (and r) to list");
  crossCmd->add_option("-o,--output", output, "write to file");

  std::string figuresDir = defaultFiguresDir();
  bool regenerate = false;
  auto* figCmd = app.add_subcommand("check-figures", "Recompute the bundled labelled polytopes and compare with the golden files");
  figCmd->add_option("--dir", figuresDir, "golden directory");
  figCmd->add_flag("--regenerate", regenerate, "rewrite the golden files instead of checking");

  auto* s7Cmd = app.add_subcommand("s7-report", "Cross-term bookkeeping for the S^7 example");
  s7Cmd->add_option("-o,--output", output, "write to file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    report.exitCode = code == 0 ? kOk : kUsage;
    return report;
  }

  const auto t0 = Clock::now();
  try {
    if (*normalizeCmd) {
      const OpWord w = wordArgument(word, source, input);
      const CanonicalForm form = normalize(w);
      out << formatCanonical(form) << "\n";
      if (showOracle) {
        const DeltaPair d = deltaOracle(w);
        auto show = [&](const char* tag, const MonotoneMap& m) {
          out << tag << " [" << m.domain << "] -> [" << m.codomain << "]:";
          for (int v : m.values) out << ' ' << v;
          out << "\n";
        };
        show("simplicial", d.simplicial);
        show("cosimplicial", d.cosimplicial);
      }
    } else if (*polytopeCmd) {
      const ExportFormat fmt = parseFormat(format);
      const CellComplex c = full ? permutohedron(N) : fcPolytope(N, n);
      emit(exportComplex(c, fmt), output, out, report);
    } else if (*factorizeCmd) {
      const LabeledPolytope lp = labelPolytope(makeTarget(wordArgument(word, source, input)));
      if (format == "json") emit(factorizationJson(lp), output, out, report);
      else if (format == "dot") emit(factorizationDot(lp), output, out, report);
      else throw UsageError("factorize supports json or dot");
    } else if (*crossCmd) {
      BasisFile spec = specFile.empty() ? BasisFile{} : loadBasisJson(readFile(specFile));
      for (const auto& o : cwOverrides) {
        const int level = std::stoi(o.substr(0, o.find(':')));
        if (level < 0) throw UsageError("negative level in '" + o + "'");
        if (static_cast<int>(spec.cw.perLevel.size()) <= level) spec.cw.perLevel.resize(static_cast<std::size_t>(level) + 1);
        applyOverride(o, spec.cw.perLevel[static_cast<std::size_t>(level)]);
      }
      for (const auto& o : crossOverrides) {
        const auto comma = o.find(',');
        const int a = std::stoi(o.substr(0, comma));
        const int b = std::stoi(o.substr(comma + 1, o.find(':') - comma - 1));
        if (a <= 0 || b <= 0) throw UsageError("cross-terms vanish at n = 0 or r = 0: '" + o + "'");
        applyOverride(o, spec.cross.perBidegree[{a, b}]);
      }
      nlohmann::ordered_json j;
      j["format_version"] = 1;
      auto graded = [](const GradedSetSpec& g) {
        nlohmann::ordered_json o = nlohmann::ordered_json::object();
        for (const auto& [deg, c] : g.counts) {
          if (c) o[std::to_string(deg)] = g.namesIn(deg);
        }
        return o;
      };
      j["R"] = nlohmann::ordered_json::object();
      for (int lv = 0; lv <= maxLevel; ++lv) j["R"][std::to_string(lv)] = graded(cwDecompose(lv, spec.cw));
      j["E"] = nlohmann::ordered_json::object();
      for (int lv = 0; lv <= maxLevel; ++lv) {
        for (int r = 0; r <= maxLevel; ++r) {
          j["E"][std::to_string(lv) + "," + std::to_string(r)] = graded(crossTermLevel(lv, r, spec.cross));
        }
      }
      emit(j.dump(2) + "\n", output, out, report);
    } else if (*figCmd) {
      if (regenerate) {
        for (const auto& fig : kFigures) {
          const auto lp = labelPolytope(makeTarget(OpWord(parseLetters(fig.psi), fig.source)));
          emit(factorizationJson(lp), figuresDir + "/" + fig.file, out, report);
        }
      } else {
        RunReport r = checkFigures(figuresDir, out);
        r.timings.emplace_back("total", secondsSince(t0));
        return r;
      }
    } else if (*s7Cmd) {
      const S7Report r = s7Example();
      emit(s7ReportJson(r), output, out, report);
      for (const auto& c : r.checks) report.checks.emplace_back(c.name, c.pass);
      if (!r.allPass()) report.exitCode = kCheckFailure;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    report.exitCode = kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    report.exitCode = kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: malformed number in an option\n";
    report.exitCode = kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range in an option\n";
    report.exitCode = kUsage;
  }
  report.timings.emplace_back("total", secondsSince(t0));
  return report;
}

}  // namespace fcpoly::cli
