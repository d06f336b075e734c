// Command-line front end: one-shot sumset queries, extremal searches, and the
// survey/report harness over all small abelian groups.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sumsets/extremal.hpp"
#include "sumsets/formulas.hpp"
#include "sumsets/group.hpp"
#include "sumsets/perfect.hpp"
#include "sumsets/sumfree.hpp"
#include "sumsets/sumset.hpp"
#include "sumsets/survey.hpp"

namespace {

using namespace sumsets;

SubsetMask parse_set(const Group& g, const std::string& text) {
  SubsetMask m = SubsetMask::empty_set(g.order());
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty element in set literal");
    m.set(std::stoi(tok));
  }
  return m;
}

std::string describe_flags(const StructureFlags& f) {
  std::string s = symmetry_name(f.symmetry);
  if (f.is_ap) s += ", AP(diff=" + std::to_string(f.ap_difference) + ")";
  if (f.coset_subgroup) s += ", in-coset-of-order-" + std::to_string(f.coset_subgroup->order);
  if (f.is_quad) s += ", quad";
  return s;
}

int cmd_sumset(const std::string& group, const std::string& set_text, int h, const std::string& kind_name) {
  Group g(group);
  const SubsetMask a = parse_set(g, set_text);
  const SumsetKind kind = parse_kind(kind_name);
  const SubsetMask result = sumset(g, a, h, kind);
  std::cout << h << "-fold " << kind_name << " sumset of " << a.to_string() << " in " << g.spec().to_string()
            << ": " << result.to_string() << " size=" << result.count() << "\n";
  return 0;
}

int cmd_rho(const std::string& group, int m, int h, const std::string& kind_name, int jobs) {
  Group g(group);
  const SumsetKind kind = parse_kind(kind_name);
  auto r = rho_brute(g, m, h, kind, jobs);
  std::cout << "rho[" << kind_name << "](" << g.spec().to_string() << ", m=" << m << ", h=" << h
            << ") = " << r.value << "\n";
  std::cout << "  witness " << r.witnesses.front().to_string() << " [" << describe_flags(r.witness_classes.front())
            << "]\n";
  if (kind == SumsetKind::Plain || kind == SumsetKind::Signed) {
    auto f = rho_formula(g.order(), m, h);
    std::cout << "  divisor formula: " << *f.value << " at d=" << *f.achieving_divisor
              << (kind == SumsetKind::Signed ? " (signed minimum can exceed it in noncyclic groups)" : "") << "\n";
  } else if (kind == SumsetKind::Restricted) {
    auto f = rho_hat_closed(g.order(), m, h);
    if (f.applicable) std::cout << "  closed bound: " << *f.value << "\n";
  }
  return 0;
}

int cmd_mu(const std::string& group, int k, int l) {
  Group g(group);
  SumfreeParams p{k, l};
  auto r = mu_brute(g, p);
  std::cout << "mu(" << g.spec().to_string() << ", {" << k << "," << l << "}) = " << r.value << "  ("
            << r.witnesses.size() << " maximum sets)\n";
  for (std::size_t i = 0; i < r.witnesses.size() && i < 4; ++i)
    std::cout << "  " << r.witnesses[i].to_string() << " [" << describe_flags(r.witness_classes[i]) << "]\n";
  if (k == 2 && l == 1) {
    auto f = mu_sumfree_group(g.spec());
    std::cout << "  exponent-divisor formula: " << *f.value << " at d=" << *f.achieving_divisor << "\n";
  }
  if (g.spec().is_cyclic()) {
    auto f = mu_formula(g.order(), k, l);
    std::cout << "  divisor formula: " << *f.value << " at d=" << *f.achieving_divisor
              << "; interval reduction: " << mu_via_gamma(g.order(), p) << "\n";
  }
  return 0;
}

int cmd_chi(const std::string& group, int h, const std::string& kind_name) {
  Group g(group);
  const SumsetKind kind = parse_kind(kind_name);
  const int brute = chi_brute(g, h, kind);
  std::cout << (kind == SumsetKind::Restricted ? "chi^(" : "chi(") << g.spec().to_string() << ", " << h
            << ") = " << brute << "\n";
  if (kind == SumsetKind::Plain) {
    auto f = chi_formula(g.order(), h);
    std::cout << "  divisor formula: " << *f.value << " at d=" << *f.achieving_divisor << "\n";
  } else if (h == 2 && g.spec().is_cyclic()) {
    std::cout << "  closed form floor(n/2)+2: " << chi_hat2(g.order()) << "\n";
  }
  return 0;
}

int cmd_spectrum(const std::string& group, int h, const std::string& kind_name) {
  Group g(group);
  const SumsetKind kind = parse_kind(kind_name);
  auto s = spectrum_brute(g, h, kind);
  std::cout << (kind == SumsetKind::Restricted ? "S^(" : "S(") << g.spec().to_string() << ", " << h << ") = {";
  for (std::size_t i = 0; i < s.sizes.size(); ++i) std::cout << (i ? "," : "") << s.sizes[i];
  std::cout << "}  (chi = " << s.chi << ")\n";
  for (const auto& [size, count] : s.census)
    std::cout << "  size " << size << ": " << count << " witness sets\n";
  return 0;
}

PerfectKind perfect_kind_from(const std::string& kind_name) {
  const SumsetKind k = parse_kind(kind_name);
  switch (k) {
    case SumsetKind::Plain: return PerfectKind::Basis;
    case SumsetKind::Restricted: return PerfectKind::RestrictedBasis;
    case SumsetKind::Signed: return PerfectKind::Spanning;
    case SumsetKind::RestrictedSigned: return PerfectKind::RestrictedSpanning;
  }
  return PerfectKind::Basis;
}

int cmd_perfect(const std::string& group, int s, const std::string& kind_name) {
  Group g(group);
  const PerfectKind kind = perfect_kind_from(kind_name);
  auto report = find_perfect(g, s, kind);
  std::cout << "perfect " << perfect_kind_name(kind) << " search in " << g.spec().to_string() << " with s=" << s
            << "\n";
  std::cout << "  capacity-admissible sizes:";
  if (report.capacity_admissible_m.empty()) std::cout << " none";
  for (int m : report.capacity_admissible_m) std::cout << " " << m;
  std::cout << "\n  found " << report.found.size() << " perfect sets\n";
  for (std::size_t i = 0; i < report.found.size() && i < 8; ++i) {
    std::cout << "    " << report.found[i].to_string();
    if (kind == PerfectKind::Basis)
      std::cout << (basis_disjointness_check(g, report.found[i], s) ? "  [disjointness ok]" : "  [disjointness FAILED]");
    std::cout << "\n";
  }
  if (report.found.size() > 8) std::cout << "    ... " << report.found.size() - 8 << " more\n";
  return 0;
}

int cmd_survey(int max_order, int jobs, const std::string& out_path, const std::string& targets_csv, int h_max,
               int signed_h_max, int s_max, const std::string& m_list_csv, bool resume) {
  survey::SurveyConfig config;
  config.max_order = max_order;
  config.jobs = jobs;
  config.h_max = h_max;
  config.signed_h_max = signed_h_max;
  config.s_max = s_max;
  if (!targets_csv.empty()) {
    std::stringstream ss(targets_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) config.targets.push_back(tok);
  }
  if (!m_list_csv.empty()) {
    std::stringstream ss(m_list_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) config.m_list.push_back(std::stoi(tok));
  }

  std::set<std::string> skip;
  std::vector<std::string> retained;
  if (resume) {
    if (out_path.empty()) throw std::invalid_argument("--resume needs --out");
    std::ifstream existing(out_path);
    if (existing) {
      auto plan = survey::plan_resume(existing);
      skip = plan.done_tasks;
      retained = plan.retained_lines;
    }
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + out_path);
    out = &file;
  }
  for (const auto& line : retained) *out << line << '\n';

  auto result = survey::run_survey(config, [&](const survey::LedgerRecord& r) { *out << r.to_line() << '\n'; },
                                   skip.empty() ? nullptr : &skip);
  out->flush();
  std::cerr << "survey: " << result.records << " records, " << result.matches << " match, "
            << result.theorem_mismatches << " theorem mismatches, " << result.conjecture_mismatches
            << " conjecture mismatches, " << result.not_applicable << " not applicable\n";
  return result.theorem_mismatches > 0 ? 2 : 0;
}

int cmd_report(const std::string& in_path, const std::string& format, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open " + in_path);
  std::vector<survey::LedgerRecord> ledger;
  std::string line;
  bool has_theorem_mismatch = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = survey::LedgerRecord::parse_line(line);
    if (!rec) throw std::runtime_error("malformed ledger line: " + line);
    has_theorem_mismatch = has_theorem_mismatch || rec->verdict == survey::Verdict::MismatchTheorem;
    ledger.push_back(std::move(*rec));
  }
  if (out_path.empty()) {
    survey::emit_report(ledger, format, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    survey::emit_report(ledger, format, out);
  }
  return has_theorem_mismatch ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sumsets: exact sumset computations and theorem surveys in finite abelian groups"};
  app.require_subcommand(1);
  // --h is a domain flag (fold count), so help is --help only
  app.set_help_flag("--help", "print help");

  std::string group, set_text, kind = "plain", out_path, in_path, targets, m_list, format = "table";
  int m = 1, h = 2, k = 2, l = 1, s = 2, jobs = 1, max_order = 12, h_max = 4, signed_h_max = 3, s_max = 4;
  bool resume = false;

  auto* c_sumset = app.add_subcommand("sumset", "h-fold sumset of an explicit set");
  c_sumset->add_option("--group", group, "group spec, e.g. Z53 or Z2xZ6")->required();
  c_sumset->add_option("--set", set_text, "comma-separated element indices, e.g. 2,3,5,7")->required();
  c_sumset->add_option("--h", h, "fold count")->required();
  c_sumset->add_option("--kind", kind, "plain|restricted|signed|restricted-signed");

  auto* c_rho = app.add_subcommand("rho", "minimum h-fold sumset size over m-subsets");
  c_rho->add_option("--group", group)->required();
  c_rho->add_option("--m", m, "subset size")->required();
  c_rho->add_option("--h", h, "fold count")->required();
  c_rho->add_option("--kind", kind, "plain|restricted|signed|restricted-signed");
  c_rho->add_option("--jobs", jobs, "worker threads");

  auto* c_mu = app.add_subcommand("mu", "maximum (k,l)-sumfree subset size");
  c_mu->add_option("--group", group)->required();
  c_mu->add_option("--k", k)->required();
  c_mu->add_option("--l", l)->required();

  auto* c_chi = app.add_subcommand("chi", "critical number");
  c_chi->add_option("--group", group)->required();
  c_chi->add_option("--h", h)->required();
  c_chi->add_option("--kind", kind, "plain|restricted");

  auto* c_spec = app.add_subcommand("spectrum", "sumset sizes of maximum incomplete sets");
  c_spec->add_option("--group", group)->required();
  c_spec->add_option("--h", h)->required();
  c_spec->add_option("--kind", kind, "plain|restricted");

  auto* c_perfect = app.add_subcommand("perfect", "search for perfect bases / spanning sets");
  c_perfect->add_option("--group", group)->required();
  c_perfect->add_option("--s", s, "budget")->required();
  c_perfect->add_option("--kind", kind, "plain=basis, restricted, signed=spanning, restricted-signed");

  auto* c_survey = app.add_subcommand("survey", "run every check over all groups up to an order");
  c_survey->add_option("--max-order", max_order, "largest group order");
  c_survey->add_option("--jobs", jobs, "worker threads");
  c_survey->add_option("--out", out_path, "ledger output path (default stdout)");
  c_survey->add_option("--targets", targets, "comma-separated check ids (default all)");
  c_survey->add_option("--h-max", h_max, "fold range for plain grids");
  c_survey->add_option("--signed-h-max", signed_h_max, "fold range for signed grids");
  c_survey->add_option("--s-max", s_max, "budget range for perfect structures");
  c_survey->add_option("--m-list", m_list, "restrict grids to these subset sizes, e.g. 4,7");
  c_survey->add_flag("--resume", resume, "skip tasks already present in --out");

  auto* c_report = app.add_subcommand("report", "aggregate a ledger into a table or CSV");
  c_report->add_option("--in", in_path, "ledger path")->required();
  c_report->add_option("--format", format, "table|csv");
  c_report->add_option("--out", out_path, "report output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(c_sumset)) return cmd_sumset(group, set_text, h, kind);
    if (app.got_subcommand(c_rho)) return cmd_rho(group, m, h, kind, jobs);
    if (app.got_subcommand(c_mu)) return cmd_mu(group, k, l);
    if (app.got_subcommand(c_chi)) return cmd_chi(group, h, kind);
    if (app.got_subcommand(c_spec)) return cmd_spectrum(group, h, kind);
    if (app.got_subcommand(c_perfect)) return cmd_perfect(group, s, kind);
    if (app.got_subcommand(c_survey))
      return cmd_survey(max_order, jobs, out_path, targets, h_max, signed_h_max, s_max, m_list, resume);
    if (app.got_subcommand(c_report)) return cmd_report(in_path, format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
