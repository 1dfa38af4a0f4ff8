// cmgaudin: Gaudin spectra and fixed-point reports for finite complex
// reflection groups.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "cmg/char_table.hpp"
#include "cmg/errors.hpp"
#include "cmg/families.hpp"
#include "cmg/gaudin.hpp"
#include "cmg/group.hpp"
#include "cmg/json_io.hpp"
#include "cmg/params.hpp"
#include "cmg/regular.hpp"
#include "cmg/sn.hpp"

namespace {

using cmg::io::json;

struct Options {
  std::string group_file;
  std::string builtin;
  int n = 0;
  int e = 0;
  int d = 0;  // regular number for tau_d
  std::string k_text;
  std::string c_text;
  std::string tau_file;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  int max_d = 0;
  int chi = -1;
  std::string partition = "euler";  // euler | singleton | @file
  std::string check_kind;
};

void add_group_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--group", opt.group_file, "group definition JSON file");
  cmd->add_option("--builtin", opt.builtin, "symmetric | cyclic | dihedral | monomial");
  cmd->add_option("--n", opt.n, "rank parameter (S_n, or r of G(e,1,r))");
  cmd->add_option("--e", opt.e, "order parameter (mu_e, G(e,e,2), or d of G(e,1,r))");
}

void add_run_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tol", opt.tol, "numerical tolerance")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random seed recorded in reports")->capture_default_str();
  cmd->add_option("--jobs", opt.jobs, "parallel jobs over characters")->capture_default_str();
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
}

cmg::groups::ReflectionGroup build_group(const Options& opt) {
  if (!opt.group_file.empty() && !opt.builtin.empty())
    throw cmg::InputError("give either --group or --builtin, not both");
  if (!opt.group_file.empty()) return cmg::io::load_group_file(opt.group_file);
  if (opt.builtin == "symmetric") {
    if (opt.n < 1) throw cmg::InputError("symmetric builtin needs --n");
    return cmg::groups::make_symmetric(opt.n);
  }
  if (opt.builtin == "cyclic") {
    if (opt.e < 1) throw cmg::InputError("cyclic builtin needs --e");
    return cmg::groups::make_cyclic(opt.e);
  }
  if (opt.builtin == "dihedral") {
    if (opt.e < 2) throw cmg::InputError("dihedral builtin needs --e >= 2");
    return cmg::groups::make_dihedral(opt.e);
  }
  if (opt.builtin == "monomial" || opt.builtin == "wreath") {
    if (opt.e < 1 || opt.n < 1) throw cmg::InputError("monomial builtin needs --e (d) and --n (r)");
    return cmg::groups::make_wreath(opt.e, opt.n);
  }
  throw cmg::InputError("no group given: use --group or --builtin");
}

json parse_inline_or_file(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw cmg::InputError("cannot open parameter file: " + text.substr(1));
    return json::parse(in);
  }
  return json::parse(text);
}

struct ParamPair {
  cmg::groups::ParamK k;
  cmg::groups::ParamC c;
};

ParamPair resolve_params(const Options& opt, const cmg::groups::ReflectionGroup& g,
                         const cmg::groups::ReflectionInventory& inv) {
  if (opt.k_text.empty() == opt.c_text.empty())
    throw cmg::InputError("give exactly one of --k or --c");
  ParamPair p;
  if (!opt.k_text.empty()) {
    p.k = cmg::io::parse_k(parse_inline_or_file(opt.k_text), inv);
    p.c = cmg::groups::k_to_c(g, inv, p.k, opt.tol);
  } else {
    p.c = cmg::io::parse_c(parse_inline_or_file(opt.c_text), inv);
    p.k = cmg::groups::c_to_k(g, inv, p.c);
  }
  return p;
}

struct TauBundle {
  cmg::regular::RegularAutomorphism aut;
  cmg::chars::TauData action;
};

TauBundle resolve_tau(const Options& opt, const cmg::groups::ReflectionGroup& g,
                      const cmg::groups::ReflectionInventory& inv,
                      const cmg::chars::CharacterTable& table) {
  if ((opt.d > 0) == !opt.tau_file.empty())
    throw cmg::InputError("give exactly one of --d or --tau-file");
  TauBundle tb;
  if (opt.d > 0) {
    auto find = cmg::regular::find_regular_element(g, inv, opt.d, 1, opt.tol);
    if (!find) throw cmg::InputError("d = " + std::to_string(opt.d) + " is not a regular number");
    tb.aut = cmg::regular::make_tau_inner(g, inv, *find);
  } else {
    tb.aut = cmg::regular::make_tau_general(g, inv, cmg::io::load_matrix_file(opt.tau_file), opt.tol);
  }
  tb.action = cmg::chars::tau_data(g, table, tb.aut.tau, opt.tol);
  return tb;
}

void emit(const Options& opt, const json& doc) {
  if (opt.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    cmg::io::write_json_file(opt.out, doc);
}

json run_meta(const Options& opt) {
  json meta;
  meta["tol"] = cmg::io::real_string(opt.tol);
  meta["seed"] = opt.seed;
  return meta;
}

int cmd_info(const Options& opt) {
  auto g = build_group(opt);
  auto inv = cmg::groups::classify_reflections(g, opt.tol);
  auto table = cmg::chars::character_table(g, opt.tol, opt.seed);
  json doc = cmg::io::group_info_json(g, inv, table);
  std::vector<int> b;
  for (int r = 0; r < table.count(); ++r) b.push_back(cmg::chars::b_invariant(g, table, r));
  doc["character_table"] = cmg::io::character_table_json(g, table, b);
  doc["meta"] = run_meta(opt);
  emit(opt, doc);
  return 0;
}

int cmd_regular(const Options& opt) {
  auto g = build_group(opt);
  auto inv = cmg::groups::classify_reflections(g, opt.tol);
  int max_d = opt.max_d;
  if (max_d <= 0) {
    for (int w = 0; w < g.size(); ++w) max_d = std::max(max_d, g.element_order(w));
  }
  json entries = json::array();
  json regular_list = json::array();
  for (int d = 1; d <= max_d; ++d) {
    auto find = cmg::regular::find_regular_element(g, inv, d, 1, opt.tol);
    if (!find) {
      entries.push_back(cmg::io::regular_d_json(g, inv, d, false, "", 0, 0, false));
      continue;
    }
    auto tau = cmg::regular::make_tau_inner(g, inv, *find);
    auto report = cmg::regular::springer_verify(g, tau, opt.tol);
    auto word = g.word(find->element_index);
    std::string word_str = word.empty() ? "e" : "";
    for (std::size_t i = 0; i < word.size(); ++i)
      word_str += (i ? ".g" : "g") + std::to_string(word[i]);
    entries.push_back(cmg::io::regular_d_json(g, inv, d, true, word_str, report.dim_v_tau,
                                              report.order_w_tau, report.pass()));
    regular_list.push_back(d);
  }
  json doc;
  doc["group"] = g.name().empty() ? "custom" : g.name();
  doc["regular_numbers"] = regular_list;
  doc["per_d"] = entries;
  doc["meta"] = run_meta(opt);
  emit(opt, doc);
  return 0;
}

int cmd_spectrum(const Options& opt) {
  auto g = build_group(opt);
  auto inv = cmg::groups::classify_reflections(g, opt.tol);
  auto table = cmg::chars::character_table(g, opt.tol, opt.seed);
  auto params = resolve_params(opt, g, inv);

  std::optional<TauBundle> tb;
  cmg::groups::CVector v;
  if (opt.d > 0 || !opt.tau_file.empty()) {
    tb = resolve_tau(opt, g, inv, table);
    v = tb->aut.witness;
  } else {
    cmg::regular::RegularElementFind id_find;
    auto find = cmg::regular::find_regular_element(g, inv, 1, 1, opt.tol);
    v = find->witness;  // d = 1 always succeeds with the identity
  }

  json spectra = json::array();
  for (int r = 0; r < table.count(); ++r) {
    if (opt.chi >= 0 && opt.chi != r) continue;
    auto spec = cmg::gaudin::chi_spectrum(g, inv, table, params.c, v, r, opt.tol,
                                          opt.seed ^ (0x9e37u + static_cast<std::uint64_t>(r)));
    std::vector<int> fixed;
    if (tb) fixed = cmg::gaudin::tau_fixed_covectors(spec, tb->aut.tau, opt.tol);
    spectra.push_back(cmg::io::spectrum_json(table, spec, fixed, tb.has_value()));
  }
  json doc;
  doc["group"] = g.name().empty() ? "custom" : g.name();
  if (opt.d > 0) doc["d"] = opt.d;
  doc["spectra"] = spectra;
  doc["meta"] = run_meta(opt);
  emit(opt, doc);
  return 0;
}

cmg::families::FamilyPartition resolve_partition(const Options& opt,
                                                 const cmg::groups::ReflectionGroup& g,
                                                 const cmg::groups::ReflectionInventory& inv,
                                                 const cmg::chars::CharacterTable& table,
                                                 const cmg::groups::ParamK& k) {
  if (opt.partition == "euler")
    return cmg::families::euler_partition(g, inv, table, k, opt.tol);
  if (opt.partition == "singleton")
    return cmg::families::singleton_partition(g, table, k);
  if (!opt.partition.empty() && opt.partition[0] == '@') {
    std::ifstream in(opt.partition.substr(1));
    if (!in) throw cmg::InputError("cannot open partition file");
    json doc = json::parse(in);
    std::vector<std::vector<int>> blocks;
    for (const auto& bj : doc) {
      std::vector<int> block;
      for (const auto& e : bj) {
        if (e.is_number_integer()) {
          block.push_back(e.get<int>());
        } else {
          // label lookup
          const std::string label = e.get<std::string>();
          int found = -1;
          for (int r = 0; r < table.count(); ++r)
            if (table.labels[r] == label) found = r;
          if (found < 0) throw cmg::InputError("unknown character label: " + label);
          block.push_back(found);
        }
      }
      blocks.push_back(block);
    }
    return cmg::families::user_partition(table, blocks);
  }
  throw cmg::InputError("--partition must be euler, singleton or @file.json");
}

int cmd_check(const Options& opt) {
  if (opt.check_kind == "combinatorics") {
    if (opt.n < 2) throw cmg::InputError("check combinatorics needs --n >= 2");
    std::vector<int> ds;
    if (opt.d > 0) {
      ds.push_back(opt.d);
    } else {
      for (int d = 2; d <= opt.n; ++d)
        if (cmg::sn::is_regular_number_sn(opt.n, d)) ds.push_back(d);
    }
    bool ok = true;
    json per_d = json::array();
    for (int d : ds) {
      json block;
      block["d"] = d;
      block["table"] = cmg::io::combinatorics_table_json(opt.n, d);
      // Eq checks: nonvanishing iff membership; |value| = quotient dim;
      // quotient map bijective onto multipartitions.
      const auto wd_type = cmg::sn::cycle_type(cmg::sn::regular_wd(opt.n, d));
      const auto members = cmg::sn::part_n_d(opt.n, d);
      bool vanishing_ok = true, dim_ok = true;
      for (const auto& lambda : cmg::sn::partitions_of(opt.n)) {
        const long long value = cmg::sn::mn_character(lambda, wd_type);
        const bool member =
            std::find(members.begin(), members.end(), lambda) != members.end();
        vanishing_ok = vanishing_ok && ((value != 0) == member);
        if (member) {
          const long long dim =
              cmg::sn::multipartition_dim(cmg::sn::d_quotient(lambda, d));
          dim_ok = dim_ok && (std::abs(value) == dim);
        }
      }
      const int j = (opt.n % d == 0) ? 0 : 1;
      const int r = (opt.n - j) / d;
      std::vector<cmg::sn::Multipartition> images;
      for (const auto& lambda : members) images.push_back(cmg::sn::d_quotient(lambda, d));
      std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) {
        return a.components < b.components;
      });
      const bool distinct = std::adjacent_find(images.begin(), images.end()) == images.end();
      const bool bijective =
          distinct && images.size() == cmg::sn::multipartitions(r, d).size();
      block["nonvanishing_iff_member"] = vanishing_ok;
      block["abs_value_equals_quotient_dim"] = dim_ok;
      block["quotient_bijective"] = bijective;
      ok = ok && vanishing_ok && dim_ok && bijective;
      per_d.push_back(block);
    }
    json doc;
    doc["n"] = opt.n;
    doc["checks"] = per_d;
    doc["all_pass"] = ok;
    doc["meta"] = run_meta(opt);
    emit(opt, doc);
    return ok ? 0 : 1;
  }

  if (opt.check_kind == "jean") {
    if (opt.n < 2 || opt.d < 1) throw cmg::InputError("check jean needs --n and --d");
    auto g = cmg::groups::make_symmetric(opt.n);
    auto inv = cmg::groups::classify_reflections(g, opt.tol);
    Options local = opt;
    if (local.k_text.empty() && local.c_text.empty()) local.k_text = "[0,1]";
    auto params = resolve_params(local, g, inv);
    auto report = cmg::families::jean_report_sn(opt.n, opt.d, params.k);
    json doc = cmg::io::jean_json(report);
    doc["meta"] = run_meta(opt);
    emit(opt, doc);
    return report.all_equal ? 0 : 1;
  }

  if (opt.check_kind != "theorem-a" && opt.check_kind != "conjecture-b")
    throw cmg::InputError("check kind must be theorem-a, conjecture-b, jean or combinatorics");

  auto g = build_group(opt);
  auto inv = cmg::groups::classify_reflections(g, opt.tol);
  auto table = cmg::chars::character_table(g, opt.tol, opt.seed);
  auto params = resolve_params(opt, g, inv);
  auto tb = resolve_tau(opt, g, inv, table);
  if (!cmg::groups::k_is_tau_stable(g, inv, params.k, tb.aut.tau, opt.tol))
    throw cmg::ParameterError("parameter k is not tau-stable");

  if (opt.check_kind == "theorem-a") {
    auto report = cmg::families::theorem_a_report(g, inv, table, params.k, tb.aut, tb.action,
                                                  tb.aut.witness, opt.tol, opt.seed, opt.jobs);
    json doc;
    doc["group"] = g.name().empty() ? "custom" : g.name();
    if (opt.d > 0) doc["d"] = opt.d;
    doc["report"] = cmg::io::theorem_a_json(report);
    doc["meta"] = run_meta(opt);
    emit(opt, doc);
    return report.all_pass ? 0 : 1;
  }

  auto partition = resolve_partition(opt, g, inv, table, params.k);
  auto report = cmg::families::conjecture_b_report(g, inv, table, params.k, tb.aut, tb.action,
                                                   tb.aut.witness, partition, opt.tol, opt.seed,
                                                   opt.jobs);
  json doc;
  doc["group"] = g.name().empty() ? "custom" : g.name();
  if (opt.d > 0) doc["d"] = opt.d;
  doc["report"] = cmg::io::conjecture_b_json(table, report);
  doc["meta"] = run_meta(opt);
  emit(opt, doc);
  return report.theorem_side_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaudin spectra and fixed-point reports for complex reflection groups"};
  app.require_subcommand(1);
  Options opt;

  auto* info = app.add_subcommand("info", "group, reflection and character data");
  add_group_options(info, opt);
  add_run_options(info, opt);

  auto* reg = app.add_subcommand("regular", "regular numbers and Springer checks");
  add_group_options(reg, opt);
  add_run_options(reg, opt);
  reg->add_option("--max-d", opt.max_d, "scan limit (default: max element order)");

  auto* spec = app.add_subcommand("spectrum", "joint eigenvalue covectors per character");
  add_group_options(spec, opt);
  add_run_options(spec, opt);
  spec->add_option("--k", opt.k_text, "parameter k as JSON (or @file)");
  spec->add_option("--c", opt.c_text, "parameter c as JSON (or @file)");
  spec->add_option("--d", opt.d, "regular number for tau_d");
  spec->add_option("--tau-file", opt.tau_file, "normalizer matrix JSON file");
  spec->add_option("--chi", opt.chi, "restrict to one character row");

  auto* check = app.add_subcommand("check", "theorem-a | conjecture-b | jean | combinatorics");
  check->add_option("which", opt.check_kind, "what to check")->required();
  add_group_options(check, opt);
  add_run_options(check, opt);
  check->add_option("--k", opt.k_text, "parameter k as JSON (or @file)");
  check->add_option("--c", opt.c_text, "parameter c as JSON (or @file)");
  check->add_option("--d", opt.d, "regular number for tau_d");
  check->add_option("--tau-file", opt.tau_file, "normalizer matrix JSON file");
  check->add_option("--partition", opt.partition, "euler | singleton | @file.json")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_info(opt);
    if (reg->parsed()) return cmd_regular(opt);
    if (spec->parsed()) return cmd_spectrum(opt);
    if (check->parsed()) return cmd_check(opt);
  } catch (const cmg::InputError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cmg::ParameterError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cmg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
