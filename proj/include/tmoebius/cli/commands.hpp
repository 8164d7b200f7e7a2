#pragma once

#include "CLI11.hpp"
#include "json.hpp"
#include "tmoebius/diagram/json_io.hpp"
#include "tmoebius/verify/acceptance.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmoebius::cli {

enum class Format { Json, Csv, Table };

struct Options {
  std::string surface = "m0";
  int genus = 1;
  std::string a = "1", b = "1";
  std::string mu, nu;
  std::string format;
  std::string convention = "val-1";
  int order = 20;
  int jobs = 0;
  std::string out;
  // subcommand specific
  std::string method = "diagrams";
  std::string diagram;
  std::string mu_dir, nu_dir;
  std::optional<std::int64_t> t_start;
  std::string shape;
  std::string suite = "all";
  bool factorize = false;
  bool timings = false;
};

/// Bad flag values: exit code 1.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Format parse_format(const std::string& s, Format fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw InputError("--format must be json, csv or table, got '" + s + "'");
}

inline HalfInt half_flag(const std::string& name, const std::string& text) {
  if (text.find('.') != std::string::npos) {
    throw InputError(name + " takes a fraction such as 3/2, not a decimal");
  }
  try {
    return HalfInt::parse(text);
  } catch (const std::exception& e) {
    throw InputError(name + ": " + e.what());
  }
}

inline Partition partition_flag(const std::string& name, const std::string& text) {
  try {
    return Partition::parse(text);
  } catch (const std::exception& e) {
    throw InputError(name + ": " + e.what());
  }
}

/// Comma list in the given order (rays keep their order, unlike partitions).
inline std::vector<std::int64_t> list_flag(const std::string& name, const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(name + ": '" + tok + "' is not an integer");
    }
  }
  return out;
}

inline std::string read_text(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw InputError("cannot read diagram file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Shared request parsing; rejects parity-violating classes and ‖μ‖+‖ν‖ ≠ 2b.
struct Parsed {
  SurfaceKind surface;
  HomologyClass cls;
  Partition mu, nu;
  ExponentConvention convention;
};

inline Parsed parse_common(const Options& o, bool need_a = true) {
  Parsed p;
  try {
    p.surface = parse_surface(o.surface);
    p.convention = parse_convention(o.convention);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (o.genus < 1) throw InputError("--genus must be at least 1");
  p.cls.a = need_a ? half_flag("--a", o.a) : HalfInt::from_integer(1);
  p.cls.b = half_flag("--b", o.b);
  p.mu = partition_flag("--mu", o.mu);
  p.nu = partition_flag("--nu", o.nu);
  if (need_a && p.cls.a.doubled() < 1) throw InputError("--a must be positive");
  if (p.cls.b.doubled() < 1) throw InputError("--b must be positive");
  if (p.mu.norm() + p.nu.norm() != p.cls.b.doubled()) {
    throw InputError("|mu| + |nu| = " + std::to_string(p.mu.norm() + p.nu.norm()) + " differs from 2b = " +
                     std::to_string(p.cls.b.doubled()));
  }
  if (need_a && !p.cls.valid_for(p.surface)) {
    throw InputError("class " + p.cls.to_string() + " violates 2b = 2*delta*a (mod 2) on " + surface_name(p.surface) +
                     " (2b = " + std::to_string(p.cls.b.doubled()) + ", 2*delta*a = " +
                     std::to_string(delta(p.surface) * p.cls.a.doubled()) + ")");
  }
  return p;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

inline std::string code_string(const std::vector<std::int64_t>& code) {
  std::string s;
  for (std::size_t i = 0; i < code.size(); ++i) s += (i ? " " : "") + std::to_string(code[i]);
  return s;
}

inline std::string cells_string(const Marking& m) {
  std::string s;
  for (std::size_t i = 0; i < m.placements.size(); ++i) {
    if (i) s += "; ";
    s += std::to_string(i + 1) + ": " + to_string(m.placements[i]);
  }
  return s;
}

}  // namespace detail

inline void cmd_diagrams(const Options& o, std::ostream& out) {
  auto p = detail::parse_common(o);
  auto fmt = detail::parse_format(o.format, Format::Json);
  auto list = enumerate_diagrams({p.surface, o.genus, p.cls, p.mu + p.nu}, o.jobs);
  if (fmt == Format::Csv) out << "index,floors,joints,edges,aut_order,canonical_code\n";
  if (fmt == Format::Table) {
    out << list.size() << " diagrams, genus " << o.genus << ", class " << p.cls.to_string() << ", profile "
        << (p.mu + p.nu).to_string() << " on " << surface_name(p.surface) << "\n";
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& d = list[i];
    auto cf = canonicalize(d);
    const int floors = d.count(VertexKind::Ground) + d.count(VertexKind::Etage);
    switch (fmt) {
      case Format::Json: {
        json j{{"index", i}, {"aut_order", cf.aut_order.str()}, {"diagram", to_json(d, p.surface)}};
        out << j.dump() << "\n";
        break;
      }
      case Format::Csv:
        out << i << "," << floors << "," << d.count(VertexKind::Joint) << "," << d.edges.size() << ","
            << cf.aut_order << "," << detail::code_string(cf.code) << "\n";
        break;
      case Format::Table:
        out << std::setw(5) << i << "  floors " << floors << "  joints " << d.count(VertexKind::Joint) << "  |Aut| "
            << cf.aut_order << "  " << to_json(d).dump() << "\n";
        break;
    }
  }
}

inline void cmd_markings(const Options& o, std::ostream& out) {
  auto fmt = detail::parse_format(o.format, Format::Json);
  std::vector<FloorDiagram> diagrams;
  SurfaceKind s;
  Partition mu, nu;
  ExponentConvention conv;
  if (!o.diagram.empty()) {
    auto doc = diagram_from_string(detail::read_text(o.diagram));
    try {
      s = doc.surface.value_or(parse_surface(o.surface));
      conv = parse_convention(o.convention);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    auto rep = validate(doc.diagram, s);
    if (!rep.ok()) throw InputError("invalid diagram: " + rep.to_string());
    mu = detail::partition_flag("--mu", o.mu);
    nu = o.nu.empty() ? tangency_profile(doc.diagram).minus(mu) : detail::partition_flag("--nu", o.nu);
    if (mu + nu != tangency_profile(doc.diagram)) {
      throw InputError("mu + nu = " + (mu + nu).to_string() + " differs from the diagram's ends " +
                       tangency_profile(doc.diagram).to_string());
    }
    diagrams.push_back(doc.diagram);
  } else {
    auto p = detail::parse_common(o);
    s = p.surface;
    mu = p.mu;
    nu = p.nu;
    conv = p.convention;
    diagrams = enumerate_diagrams({s, o.genus, p.cls, mu + nu}, o.jobs);
  }
  struct Row {
    std::vector<Marking> markings;
    std::vector<Rational> mults;
  };
  auto rows = parallel_map(diagrams, o.jobs, [&](const FloorDiagram& d) {
    Row r;
    r.markings = enumerate_markings(d, mu, nu);
    for (const auto& m : r.markings) r.mults.push_back(marked_mult(d, m, conv));
    return r;
  });
  if (fmt == Format::Csv) out << "diagram,marking,multiplicity,cells\n";
  Rational total = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].markings.size(); ++k) {
      const auto& m = rows[i].markings[k];
      const auto& mult = rows[i].mults[k];
      total += mult;
      ++count;
      switch (fmt) {
        case Format::Json: {
          json cells = json::array();
          for (const auto& c : m.placements) {
            const char* kind = c.kind == CellKind::Vertex ? "vertex" : c.kind == CellKind::Edge ? "edge" : "end";
            cells.push_back({{"kind", kind}, {"index", c.index}});
          }
          json j{{"diagram", i}, {"marking", k}, {"multiplicity", to_string(mult)}, {"cells", cells}};
          out << j.dump() << "\n";
          break;
        }
        case Format::Csv:
          out << i << "," << k << "," << to_string(mult) << "," << detail::csv_escape(detail::cells_string(m)) << "\n";
          break;
        case Format::Table:
          out << "diagram " << i << " marking " << k << "  mult " << to_string(mult) << "  " << detail::cells_string(m)
              << "\n";
          break;
      }
    }
  }
  if (fmt == Format::Table) out << count << " markings, total " << to_string(total) << "\n";
}

inline void cmd_invariant(const Options& o, std::ostream& out, bool refined) {
  auto p = detail::parse_common(o);
  auto fmt = detail::parse_format(o.format, Format::Table);
  InvariantRequest req{p.surface, o.genus, p.cls, p.mu, p.nu, p.convention};
  InvariantResult res;
  if (o.method == "weightings") {
    if (refined) throw InputError("bg is only available with --method diagrams");
    res.N = invariant_via_weightings(req);
    res.convention = req.convention;
  } else if (o.method == "diagrams") {
    res = compute_invariant(req, o.jobs, refined);
  } else {
    throw InputError("--method must be diagrams or weightings, got '" + o.method + "'");
  }
  const bool diag = o.method == "diagrams";
  switch (fmt) {
    case Format::Json: {
      json j{{"surface", surface_name(p.surface)}, {"genus", o.genus},  {"a", p.cls.a.to_string()},
             {"b", p.cls.b.to_string()},           {"mu", p.mu.to_list()}, {"nu", p.nu.to_list()},
             {"convention", convention_name(p.convention)}, {"method", o.method}, {"N", to_string(res.N)}};
      if (diag) {
        j["diagrams"] = res.diagram_count;
        j["markings"] = res.marking_count.str();
      }
      if (refined) {
        j["BG"] = res.BG.to_string();
        j["symmetric"] = res.BG.is_palindromic();
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "surface,genus,a,b,mu,nu,convention,method,N" << (refined ? ",BG" : "") << "\n";
      out << surface_name(p.surface) << "," << o.genus << "," << p.cls.a.to_string() << "," << p.cls.b.to_string()
          << "," << detail::csv_escape(p.mu.to_list()) << "," << detail::csv_escape(p.nu.to_list()) << ","
          << convention_name(p.convention) << "," << o.method << "," << to_string(res.N);
      if (refined) out << "," << detail::csv_escape(res.BG.to_string());
      out << "\n";
      break;
    case Format::Table:
      if (refined) {
        out << "BG = " << res.BG.to_string() << "\n";
        out << "BG(1) = " << to_string(res.BG.evaluate_at_one()) << "\n";
      } else {
        out << "N = " << to_string(res.N) << "\n";
      }
      if (diag) out << "diagrams: " << res.diagram_count << ", markings: " << res.marking_count << "\n";
      out << "convention: " << convention_name(p.convention) << "\n";
      break;
  }
}

inline void cmd_series(const Options& o, std::ostream& out) {
  auto p = detail::parse_common(o, false);
  auto fmt = detail::parse_format(o.format, Format::Table);
  if (o.order < 0) throw InputError("--order must be nonnegative");
  SeriesRequest req{p.surface, o.genus, p.cls.b, p.mu, p.nu, HalfInt::from_doubled(o.order), p.convention};
  auto F = generating_series(req, o.jobs);
  switch (fmt) {
    case Format::Json: {
      json coeffs = json::array();
      for (int n = 0; n <= o.order; ++n) coeffs.push_back(to_string(F[n]));
      json j{{"surface", surface_name(p.surface)}, {"genus", o.genus}, {"b", p.cls.b.to_string()},
             {"mu", p.mu.to_list()}, {"nu", p.nu.to_list()}, {"convention", convention_name(p.convention)},
             {"order", o.order}, {"coefficients", coeffs}};
      if (o.factorize) {
        auto dec = decompose(req, o.jobs);
        json fs = json::array();
        for (std::size_t i = 0; i < dec.shapes.size(); ++i) {
          fs.push_back({{"shape", to_json(dec.shapes[i])}, {"form", dec.factorizations[i].to_string()}});
        }
        j["factorizations"] = fs;
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "power,a,coefficient\n";
      for (int n = 0; n <= o.order; ++n) out << n << "," << doubled_to_string(n) << "," << to_string(F[n]) << "\n";
      break;
    case Format::Table:
      out << "F(y) = sum_a N y^(2a), " << surface_name(p.surface) << ", genus " << o.genus << ", b = "
          << p.cls.b.to_string() << ", convention " << convention_name(p.convention) << "\n";
      for (int n = 0; n <= o.order; ++n) {
        if (F[n] != 0) out << "  y^" << n << "  (a = " << doubled_to_string(n) << ")  " << to_string(F[n]) << "\n";
      }
      if (o.factorize) {
        auto dec = decompose(req, o.jobs);
        for (std::size_t i = 0; i < dec.shapes.size(); ++i) {
          out << "  shape " << i << ": " << dec.factorizations[i].to_string() << "\n";
        }
      }
      break;
  }
}

inline void cmd_regularity(const Options& o, std::ostream& out) {
  RegularityFamily f;
  try {
    f.surface = parse_surface(o.surface);
    f.convention = parse_convention(o.convention);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  f.genus = o.genus;
  f.fixed = {detail::list_flag("--mu", o.mu), detail::list_flag("--mu-dir", o.mu_dir)};
  f.free = {detail::list_flag("--nu", o.nu), detail::list_flag("--nu-dir", o.nu_dir)};
  if (f.fixed.dir.empty()) f.fixed.dir.assign(f.fixed.base.size(), 0);
  if (f.free.dir.empty()) f.free.dir.assign(f.free.base.size(), 0);
  if (f.fixed.dir.size() != f.fixed.base.size()) throw InputError("--mu-dir must have as many entries as --mu");
  if (f.free.dir.size() != f.free.base.size()) throw InputError("--nu-dir must have as many entries as --nu");
  for (const auto* r : {&f.fixed, &f.free}) {
    for (auto x : r->base) {
      if (x < 1) throw InputError("ray base entries must be positive");
    }
    for (auto x : r->dir) {
      if (x < 0) throw InputError("ray directions must be nonnegative");
    }
  }
  if (!o.shape.empty()) {
    auto doc = diagram_from_string(detail::read_text(o.shape));
    f.shape = doc.diagram;
    if (doc.surface) f.surface = *doc.surface;
    f.genus = genus(doc.diagram);
    f.a = homology_class(doc.diagram).a;
    f.name = "shape";
  } else {
    if (o.genus < 1) throw InputError("--genus must be at least 1");
    f.a = detail::half_flag("--a", o.a);
    if (f.a.doubled() < 1) throw InputError("--a must be positive");
    f.name = "all diagrams";
    // Parity of 2b along the ray: both the base and the step must respect it.
    std::int64_t b0 = 0, step = 0;
    for (const auto* r : {&f.fixed, &f.free}) {
      for (std::size_t i = 0; i < r->base.size(); ++i) {
        b0 += r->base[i];
        step += r->dir[i];
      }
    }
    const std::int64_t want = (delta(f.surface) * f.a.doubled()) % 2;
    if (b0 % 2 != want || step % 2 != 0) {
      throw InputError("ray leaves 2b = 2*delta*a (mod 2) on " + std::string(surface_name(f.surface)));
    }
  }
  f.name += " " + std::string(surface_name(f.surface)) + " genus " + std::to_string(f.genus) + " a=" + f.a.to_string();
  if (!f.fixed.base.empty()) f.name += " mu=" + f.fixed.to_string();
  if (!f.free.base.empty()) f.name += " nu=" + f.free.to_string();
  FitOptions opt;
  opt.t_start = o.t_start;
  QuasiPolynomialFit fit;
  try {
    fit = fit_regularity(f, opt);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  auto fmt = detail::parse_format(o.format, Format::Table);
  auto coeff_list = [](const std::vector<Rational>& c) {
    std::vector<std::string> s;
    for (const auto& x : c) s.push_back(to_string(x));
    return s;
  };
  switch (fmt) {
    case Format::Json: {
      json classes = json::array();
      for (const auto& c : fit.classes) classes.push_back(coeff_list(c));
      json j{{"family", fit.family}, {"t_start", fit.t_start}, {"period", fit.period},
             {"degree_bound", fit.degree_bound}, {"classes", classes}, {"residual", to_string(fit.residual)},
             {"single_polynomial", fit.single_polynomial}, {"exact", fit.ok()}};
      if (fit.single_polynomial) j["single"] = coeff_list(fit.single);
      out << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "class,power,coefficient\n";
      for (std::size_t r = 0; r < fit.classes.size(); ++r) {
        for (std::size_t k = 0; k < fit.classes[r].size(); ++k) {
          out << r << "," << k << "," << to_string(fit.classes[r][k]) << "\n";
        }
      }
      break;
    case Format::Table:
      out << "family: " << fit.family << "\n";
      out << "labeled count (fixed and free entries labeled) as a function of t >= " << fit.t_start << "\n";
      out << "degree bound " << fit.degree_bound << ", period " << fit.period << ", held-out residual "
          << to_string(fit.residual) << "\n";
      for (std::size_t r = 0; r < fit.classes.size(); ++r) {
        out << "  t = " << r << " mod " << fit.period << ":";
        auto c = coeff_list(fit.classes[r]);
        for (std::size_t k = 0; k < c.size(); ++k) out << " " << c[k] << "*t^" << k;
        out << "\n";
      }
      out << (fit.single_polynomial ? "one polynomial covers every class" : "no single polynomial fits") << "\n";
      break;
  }
}

/// Runs the CLI with the given argument list (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline int cmd_verify(const Options& o, std::ostream& out) {
  std::set<int> which;
  if (o.suite == "all") {
    for (int i = 1; i <= 9; ++i) which.insert(i);
  } else {
    for (auto id : detail::list_flag("--suite", o.suite)) {
      if (id < 1 || id > 9) throw InputError("--suite entries must be between 1 and 9");
      which.insert(static_cast<int>(id));
    }
  }
  auto fmt = detail::parse_format(o.format, Format::Table);
  std::ostringstream sink;
  CommandRunner runner = [&](const std::vector<std::string>& a, std::ostream& os) { return run(a, os, sink); };
  auto results = run_acceptance(which, o.jobs, runner);
  bool all = true;
  for (const auto& r : results) all = all && r.ok();
  switch (fmt) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : results) {
        json j{{"id", r.id}, {"title", r.title}, {"pass", r.ok()}, {"documented", r.documented_failure && !r.ok()},
               {"detail", r.detail}};
        if (o.timings) j["seconds"] = r.seconds;
        arr.push_back(j);
      }
      out << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      out << "id,pass,title,detail\n";
      for (const auto& r : results) {
        out << r.id << "," << (r.ok() ? "PASS" : "FAIL") << "," << detail::csv_escape(r.title) << ","
            << detail::csv_escape(r.detail) << "\n";
      }
      break;
    case Format::Table:
      for (const auto& r : results) {
        out << criterion_line(r);
        if (o.timings) out << " [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
        out << "\n";
      }
      break;
  }
  return all ? 0 : 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Floor diagram counts on Hirzebruch-type surfaces", "tmoebius"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s, bool with_a = true) {
    s->add_option("--surface", o.surface, "m0 or m1");
    s->add_option("--genus", o.genus, "genus g >= 1");
    if (with_a) s->add_option("--a", o.a, "E-coefficient, e.g. 3/2");
    s->add_option("--b", o.b, "F-coefficient, e.g. 1");
    s->add_option("--mu", o.mu, "fixed end weights, comma list");
    s->add_option("--nu", o.nu, "free end weights, comma list");
    s->add_option("--format", o.format, "json, csv or table");
    s->add_option("--convention", o.convention, "val-1 or val");
    s->add_option("--jobs", o.jobs, "worker threads (default TMOEBIUS_JOBS or 1)");
    s->add_option("--out", o.out, "write output to this file");
  };
  auto* diagrams = app.add_subcommand("diagrams", "enumerate floor diagrams as JSON lines");
  common(diagrams);
  auto* markings = app.add_subcommand("markings", "list markings and their multiplicities");
  common(markings);
  markings->add_option("--diagram", o.diagram, "diagram JSON (inline or file)");
  auto* invariant = app.add_subcommand("invariant", "the count N");
  common(invariant);
  invariant->add_option("--method", o.method, "diagrams or weightings");
  auto* bg = app.add_subcommand("bg", "the refined count BG(q)");
  common(bg);
  auto* series = app.add_subcommand("series", "generating series in y^(2a)");
  common(series, false);
  series->add_option("--order", o.order, "largest power of y");
  series->add_flag("--factorize", o.factorize, "list each shape's generator product");
  auto* regularity = app.add_subcommand("regularity", "fit a (quasi-)polynomial along a ray of end weights");
  common(regularity);
  regularity->add_option("--mu-dir", o.mu_dir, "direction for --mu");
  regularity->add_option("--nu-dir", o.nu_dir, "direction for --nu");
  regularity->add_option("--t-start", o.t_start, "first sample t (default: past every wall)");
  regularity->add_option("--shape", o.shape, "restrict to one shape (JSON inline or file)");
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--suite", o.suite, "all or a comma list of criterion numbers");
  verify->add_option("--format", o.format, "json, csv or table");
  verify->add_option("--jobs", o.jobs, "worker threads");
  verify->add_option("--out", o.out, "write output to this file");
  verify->add_flag("--timings", o.timings, "append elapsed seconds");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::ostringstream buffer;
  std::ostream& dest = o.out.empty() ? out : static_cast<std::ostream&>(buffer);
  int code = 0;
  try {
    if (*diagrams) cmd_diagrams(o, dest);
    if (*markings) cmd_markings(o, dest);
    if (*invariant) cmd_invariant(o, dest, false);
    if (*bg) cmd_invariant(o, dest, true);
    if (*series) cmd_series(o, dest);
    if (*regularity) cmd_regularity(o, dest);
    if (*verify) code = cmd_verify(o, dest);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      err << "error: cannot write '" << o.out << "'\n";
      return 1;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace tmoebius::cli
