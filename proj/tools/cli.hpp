#pragma once

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdiag/mdiag.hpp"

namespace mdiag::cli {

namespace detail {

inline std::string roots_str(const std::vector<Root>& rs) {
  std::string s = "{";
  for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + rs[i].str();
  return s + "}";
}

inline std::string indices_str(const std::vector<int>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i] + 1);
  return s + "}";
}

inline Json roots_json(const std::vector<Root>& rs) {
  Json j = Json::array();
  for (const auto& r : rs) j.push_back(r.coeffs());
  return j;
}

inline DiagramFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_diagram_file(ss.str());
}

inline std::vector<MarkedDiagram> as_counting(const DiagramFile& f) {
  std::vector<MarkedDiagram> out;
  for (const auto& e : f.entries) out.push_back(e.diagram.with_mode(DiagramMode::counting));
  return out;
}

inline std::string blocks_str(const std::vector<IndexSet>& blocks, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    s += b ? " | " : "";
    for (std::size_t k = 0; k < blocks[b].size(); ++k) s += (k ? " " : "") + names.at(blocks[b][k]);
  }
  return s;
}

struct Options {
  bool json = false;
  bool timing = false;
  std::string label;
  std::string file;
  std::string op;
  std::string theorem;
  std::string check;
  bool distinguished_only = false;
  std::uint64_t conjecture_c = 0;
  int n = 2;
  std::uint32_t p = 5;
  std::uint64_t seed = kDefaultSeed;
  std::size_t sample = 0;
  std::size_t copies = 16;
};

inline void rootsys_info(const Options& o, RunReport& rep, std::ostream& out) {
  const auto rs = build_root_system(o.label);
  Json res;
  res["system"] = rs->label();
  res["rank"] = rs->rank();
  res["num_roots"] = rs->roots().size();
  res["num_positive"] = rs->positive_roots().size();
  res["cartan"] = rs->cartan();
  res["positive_roots"] = roots_json(rs->positive_roots());
  res["highest_root"] = highest_root(*rs).coeffs();
  rep.result = res;
  if (o.json) return;
  out << rs->label() << ": rank " << rs->rank() << ", " << rs->roots().size() << " roots ("
      << rs->positive_roots().size() << " positive)\n";
  out << "Cartan matrix:\n";
  for (const auto& row : rs->cartan()) {
    for (auto v : row) out << std::setw(3) << v;
    out << "\n";
  }
  out << "highest root: " << highest_root(*rs).str() << "\n";
  out << "positive roots:";
  for (const auto& r : rs->positive_roots()) out << " " << r.str();
  out << "\n";
}

inline void diagram_cmd(const Options& o, RunReport& rep, std::ostream& out) {
  const auto f = load(o.file);
  const auto names = f.names();
  if (o.op == "sum") {
    const auto s = sum(as_counting(f));
    rep.result = Json{{"op", "sum"}, {"diagram", s.coeffs()}, {"regular", is_regular(s)}};
    if (!o.json) out << "sum = " << s.str() << (is_regular(s) ? " (regular)" : "") << "\n";
  } else if (o.op == "boxplus") {
    const auto ds = f.diagrams();
    require_common(ds, DiagramMode::binary, "boxplus");
    MarkedDiagram acc = MarkedDiagram::zero(f.system, DiagramMode::binary);
    for (const auto& d : ds) acc = boxplus(acc, d);
    rep.result = Json{{"op", "boxplus"}, {"diagram", acc.coeffs()}, {"regular", is_regular(acc)}};
    if (!o.json) out << "boxplus = " << acc.str() << (is_regular(acc) ? " (regular)" : "") << "\n";
  } else {
    Json rel = Json::array();
    for (std::size_t a = 0; a < f.entries.size(); ++a) {
      for (std::size_t b = 0; b < f.entries.size(); ++b) {
        if (a != b && geq(f.entries[a].diagram, f.entries[b].diagram)) {
          rel.push_back({names[a], names[b]});
          if (!o.json) out << names[a] << " >= " << names[b] << "\n";
        }
      }
    }
    rep.result = Json{{"op", "order"}, {"geq", rel}};
    if (!o.json && rel.empty()) out << "no comparable pairs\n";
  }
}

inline void check_cmd(const Options& o, RunReport& rep, std::ostream& out) {
  const auto f = load(o.file);
  const auto ds = as_counting(f);
  const auto names = f.names();
  TheoremVerdict v;
  if (o.theorem == "propA") {
    v = check_prop_A(ds);
  } else if (o.theorem == "propB") {
    v = check_prop_B(ds);
  } else if (o.theorem == "thmC") {
    v = check_thm_C(ds);
  } else if (o.theorem == "sum-to-regular") {
    v = check_sum_to_regular(ds);
  } else {
    if (o.conjecture_c == 0) throw InvalidArgument("check conjecture needs --c <positive integer>");
    v = check_conjecture(ds, o.conjecture_c);
  }
  if (!revalidate(v, ds)) throw Error("internal error: certificate failed to re-validate");
  rep.records.push_back(to_record(v, o.seed));
  if (o.json) return;
  out << to_string(v.theorem_id) << ": " << (v.holds ? "holds" : "does not hold")
      << (v.inconclusive ? " (search inconclusive)" : "") << (v.conjectural ? " [conjectural]" : "") << "\n";
  out << "conclusion: " << v.conclusion_text << "\n";
  if (!v.certificate) return;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, InequalityTrace>) {
          out << "sum " << MarkedDiagram(f.system, c.sum).str() << " vs threshold "
              << MarkedDiagram(f.system, c.threshold).str();
          if (c.first_failing) out << ", short at node " << *c.first_failing + 1;
          out << "\n";
        } else if constexpr (std::is_same_v<T, PropACertificate>) {
          out << "sum " << MarkedDiagram(f.system, c.trace.sum).str() << " vs threshold "
              << MarkedDiagram(f.system, c.trace.threshold).str() << "\n";
          out << "partition: " << blocks_str(c.partition.blocks, names) << "\n";
        } else {
          out << "type (" << c.r << "," << c.s << ") anchors:";
          for (auto a : c.anchors) out << " " << names.at(a);
          out << "\nblocks: " << blocks_str(c.blocks, names) << "\n";
        }
      },
      *v.certificate);
}

inline void classify_cmd(const Options& o, RunReport& rep, std::ostream& out) {
  const auto rs = build_root_system(o.label);
  Json rows = Json::array();
  if (o.distinguished_only) {
    for (const auto& d : distinguished_pairs(*rs)) {
      rows.push_back({{"J", roots_json(d.J)}, {"K", roots_json(d.K)}, {"dim_levi", d.dim_levi}});
      if (!o.json) out << "J=" << roots_str(d.J) << " K=" << roots_str(d.K) << " dim " << d.dim_levi << "\n";
    }
    rep.result = Json{{"system", rs->label()}, {"distinguished_pairs", rows}};
    if (!o.json) out << rows.size() << " distinguished pairs\n";
    return;
  }
  for (const auto& d : enumerate_jordan_data(*rs)) {
    const auto supp = jordan_diagram_support(*rs, d);
    Json row;
    row["I"] = d.levi;
    row["I_prime"] = roots_json(d.pseudo_base);
    row["J"] = roots_json(d.J);
    row["K"] = roots_json(d.K);
    row["levi_kind"] = d.proper_levi ? "proper_levi" : "proper_pseudo_levi";
    row["support"] = supp;
    rows.push_back(row);
    if (!o.json) {
      out << "I=" << indices_str(d.levi) << " I'=" << roots_str(d.pseudo_base) << " J=" << roots_str(d.J)
          << " K=" << roots_str(d.K) << " support=" << indices_str(supp) << "\n";
    }
  }
  rep.result = Json{{"system", rs->label()}, {"jordan_data", rows}};
  if (!o.json) out << rows.size() << " quadruples\n";
}

inline void lab_cmd(const Options& o, RunReport& rep, std::ostream& out) {
  const FiniteGroupContext g(o.n, o.p);
  LabReport l;
  if (o.check == "uuuu") {
    l = verify_uuuu(g, o.seed);
  } else if (o.check == "boxplus") {
    l = verify_boxplus(g, o.seed);
  } else if (o.check == "regular-support") {
    l = verify_regular_support(g, o.seed);
  } else if (o.check == "torus-orbit") {
    l = verify_torus_orbit(g, o.seed);
  } else if (o.check == "su-reg") {
    l = verify_su_reg(g, o.seed, o.sample);
  } else if (o.check == "six-uregular") {
    l = verify_six_uregular(g, o.seed, o.sample);
  } else {
    l = verify_thm_C_regular_unipotent(g, o.copies, o.seed);
  }
  rep.records.push_back(to_record(l));
  if (o.json) return;
  out << "SL_" << g.n() << "(F_" << g.p() << "), |G| = " << g.order() << ", " << g.classes().size() << " classes\n";
  out << l.check << ": " << (l.holds ? "holds" : "violated") << " (" << l.checked << " checked, " << l.violations
      << " violations)\n";
  for (const auto& [k, v] : l.metrics) out << "  " << k << " = " << v << "\n";
  if (l.witness) out << "  witness " << *l.witness << "\n";
  for (const auto& c : l.counterexamples) out << "  " << c << "\n";
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on a clean run, including negative verdicts; 1 on input, mode, budget
/// or precondition errors; 2 on usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Marked Dynkin diagrams: root systems, theorem hypotheses and SL_n(F_p) experiments", "mdiag"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit the machine-readable report");
  app.add_flag("--timing", o.timing, "Record wall-clock time in elapsed_ms (otherwise 0)");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* rootsys = app.add_subcommand("rootsys", "Root system tables");
  auto* info = rootsys->add_subcommand("info", "Roots and Cartan matrix");
  info->add_option("system", o.label, "e.g. G2, E8")->required();
  rootsys->require_subcommand(1);

  auto* diagram = app.add_subcommand("diagram", "Diagram arithmetic over a diagram file");
  diagram->add_option("op", o.op)->required()->check(CLI::IsMember({"sum", "boxplus", "order"}));
  diagram->add_option("file", o.file)->required();

  auto* check = app.add_subcommand("check", "Decide a theorem hypothesis for a diagram file");
  check->add_option("theorem", o.theorem)
      ->required()
      ->check(CLI::IsMember({"propA", "propB", "thmC", "sum-to-regular", "conjecture"}));
  check->add_option("file", o.file)->required();
  check->add_option("--c", o.conjecture_c, "Threshold multiple for 'conjecture'");

  auto* classify = app.add_subcommand("classify", "Jordan class combinatorics");
  auto* jordan = classify->add_subcommand("jordan", "Enumerate (I, I', J, K)");
  jordan->add_option("system", o.label)->required();
  jordan->add_flag("--distinguished-only", o.distinguished_only, "List distinguished pairs (J, K) with J in Delta");
  classify->require_subcommand(1);

  auto* lab = app.add_subcommand("lab", "Finite-field experiments in SL_n(F_p)");
  auto* verify = lab->add_subcommand("verify", "Run one exhaustive or sampled verification");
  verify->add_option("check", o.check)
      ->required()
      ->check(CLI::IsMember({"uuuu", "boxplus", "regular-support", "torus-orbit", "su-reg", "six-uregular", "thmC"}));
  verify->add_option("--n", o.n)->required();
  verify->add_option("--p", o.p)->required();
  verify->add_option("--sample", o.sample, "Sample size (0 = exhaustive when within budget)");
  verify->add_option("--copies", o.copies, "Factors for thmC (copies of the regular unipotent class)")
      ->capture_default_str();
  lab->require_subcommand(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  RunReport rep;
  rep.command = args;
  rep.seed = o.seed;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (rootsys->parsed()) {
      detail::rootsys_info(o, rep, out);
    } else if (diagram->parsed()) {
      detail::diagram_cmd(o, rep, out);
    } else if (check->parsed()) {
      detail::check_cmd(o, rep, out);
    } else if (classify->parsed()) {
      detail::classify_cmd(o, rep, out);
    } else {
      detail::lab_cmd(o, rep, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : rep.records) r.elapsed_ms = ms;
  }
  if (o.json) out << emit_report(rep);
  return 0;
}

}  // namespace mdiag::cli
