#include "cmg/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cmg/errors.hpp"

namespace cmg::io {

std::string real_string(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

json complex_json(const groups::Complex& z) {
  return json::array({real_string(z.real()), real_string(z.imag())});
}

json cvector_json(const groups::CVector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(complex_json(v(i)));
  return arr;
}

json cmatrix_json(const groups::CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

double parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    const double num = std::stod(s.substr(0, slash));
    const double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw InputError("rational with zero denominator: " + s);
    return num / den;
  } catch (const std::invalid_argument&) {
    throw InputError("cannot parse number: " + s);
  }
}

groups::Complex parse_entry(const json& e) {
  if (e.is_number()) return groups::Complex(e.get<double>(), 0.0);
  if (e.is_string()) return groups::Complex(parse_rational(e.get<std::string>()), 0.0);
  if (e.is_array() && e.size() == 2) {
    double re = e[0].is_string() ? parse_rational(e[0].get<std::string>()) : e[0].get<double>();
    double im = e[1].is_string() ? parse_rational(e[1].get<std::string>()) : e[1].get<double>();
    return groups::Complex(re, im);
  }
  throw InputError("matrix entry must be a number, rational string or [re, im] pair");
}

}  // namespace

groups::CMatrix load_matrix_json(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw InputError("matrix: expected array of rows");
  const int rows = static_cast<int>(doc.size());
  const int cols = static_cast<int>(doc[0].size());
  groups::CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(doc[i].size()) != cols) throw InputError("matrix: ragged rows");
    for (int j = 0; j < cols; ++j) m(i, j) = parse_entry(doc[i][j]);
  }
  return m;
}

groups::CMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file: " + path);
  json doc = json::parse(in);
  return load_matrix_json(doc);
}

groups::ReflectionGroup load_group_json(const json& doc, int cap) {
  if (doc.contains("builtin")) {
    const std::string which = doc["builtin"].get<std::string>();
    if (which == "symmetric") return groups::make_symmetric(doc.at("n").get<int>(), cap);
    if (which == "cyclic") return groups::make_cyclic(doc.at("e").get<int>());
    if (which == "dihedral") return groups::make_dihedral(doc.at("e").get<int>(), cap);
    if (which == "monomial" || which == "wreath")
      return groups::make_wreath(doc.at("d").get<int>(), doc.at("r").get<int>(), cap);
    throw InputError("unknown builtin: " + which);
  }
  if (!doc.contains("generators")) throw InputError("group file needs generators or builtin");
  std::vector<groups::CMatrix> gens;
  for (const auto& gj : doc["generators"]) gens.push_back(load_matrix_json(gj));
  auto g = groups::generate_group(gens, cap);
  return g;
}

groups::ReflectionGroup load_group_file(const std::string& path, int cap) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file: " + path);
  json doc = json::parse(in);
  return load_group_json(doc, cap);
}

groups::ParamK parse_k(const json& doc, const groups::ReflectionInventory& inv) {
  json rows = doc;
  if (!rows.is_array()) throw InputError("k: expected an array");
  if (!rows.empty() && !rows[0].is_array()) rows = json::array({rows});
  // Entries that are [re, im] pairs make a bare pair ambiguous with a
  // two-orbit form; resolve by the orbit count.
  if (rows.size() != inv.orbits.size() && rows.size() == 2 && inv.orbits.size() == 1)
    rows = json::array({doc});
  if (rows.size() != inv.orbits.size())
    throw ParameterError("k: expected one value row per hyperplane orbit");
  groups::ParamK k;
  k.per_orbit.resize(inv.orbits.size());
  for (std::size_t o = 0; o < inv.orbits.size(); ++o) {
    if (static_cast<int>(rows[o].size()) != inv.orbits[o].e)
      throw ParameterError("k: orbit " + std::to_string(o) + " needs e = " +
                           std::to_string(inv.orbits[o].e) + " values");
    for (const auto& e : rows[o]) k.per_orbit[o].push_back(parse_entry(e));
  }
  return k;
}

groups::ParamC parse_c(const json& doc, const groups::ReflectionInventory& inv) {
  if (!doc.is_array()) throw InputError("c: expected an array");
  if (doc.size() != inv.reflection_classes.size())
    throw ParameterError("c: expected one value per reflection conjugacy class (" +
                         std::to_string(inv.reflection_classes.size()) + ")");
  groups::ParamC c;
  for (const auto& e : doc) c.by_class.push_back(parse_entry(e));
  return c;
}

namespace {

std::string word_string(const groups::ReflectionGroup& g, int element) {
  auto w = g.word(element);
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += "g" + std::to_string(w[i]);
  }
  return s;
}

}  // namespace

json group_info_json(const groups::ReflectionGroup& g, const groups::ReflectionInventory& inv,
                     const chars::CharacterTable& table) {
  json doc;
  doc["name"] = g.name().empty() ? "custom" : g.name();
  doc["order"] = g.size();
  doc["dim"] = g.dim();
  doc["exact_arithmetic"] = g.is_exact();
  doc["n_reflections"] = inv.reflections.size();
  doc["n_hyperplanes"] = inv.hyperplane_alphas.size();
  json orbits = json::array();
  for (const auto& orbit : inv.orbits) {
    json o;
    o["orbit_id"] = orbit.orbit_id;
    o["n_hyperplanes"] = orbit.hyperplane_ids.size();
    o["e"] = orbit.e;
    orbits.push_back(o);
  }
  doc["hyperplane_orbits"] = orbits;
  json classes = json::array();
  for (std::size_t cls = 0; cls < inv.reflection_classes.size(); ++cls) {
    json c;
    c["class_id"] = cls;
    c["size"] = inv.reflection_classes[cls].size();
    const auto& refl = inv.reflections[inv.reflection_classes[cls][0]];
    c["representative_word"] = word_string(g, refl.element_index);
    c["det"] = complex_json(refl.det_value);
    classes.push_back(c);
  }
  doc["reflection_classes"] = classes;
  doc["n_conjugacy_classes"] = table.classes.count();
  doc["character_degrees"] = table.degrees;
  return doc;
}

json character_table_json(const groups::ReflectionGroup& g, const chars::CharacterTable& table,
                          const std::vector<int>& b_invariants) {
  json doc;
  json classes = json::array();
  for (int c = 0; c < table.classes.count(); ++c) {
    json cj;
    cj["size"] = table.classes.sizes[c];
    cj["representative_word"] = word_string(g, table.classes.representatives[c]);
    classes.push_back(cj);
  }
  doc["classes"] = classes;
  json rows = json::array();
  for (int r = 0; r < table.count(); ++r) {
    json row;
    row["label"] = table.labels.empty() ? std::to_string(r) : table.labels[r];
    row["degree"] = table.degrees[r];
    if (!b_invariants.empty()) row["b_invariant"] = b_invariants[r];
    json values = json::array();
    for (int c = 0; c < table.classes.count(); ++c) values.push_back(complex_json(table.rows(r, c)));
    row["values"] = values;
    rows.push_back(row);
  }
  doc["irreducibles"] = rows;
  return doc;
}

json regular_d_json(const groups::ReflectionGroup& g, const groups::ReflectionInventory&,
                    int d, bool regular, const std::string& wd_word, int dim_v_tau,
                    int order_w_tau, bool springer_pass) {
  json doc;
  doc["d"] = d;
  doc["regular"] = regular;
  if (regular) {
    doc["wd_word"] = wd_word;
    doc["dim_V_tau"] = dim_v_tau;
    doc["order_W_tau"] = order_w_tau;
    doc["springer_pass"] = springer_pass;
  }
  (void)g;
  return doc;
}

json spectrum_json(const chars::CharacterTable& table, const gaudin::CovectorSpectrum& spec,
                   const std::vector<int>& tau_fixed, bool with_tau) {
  json doc;
  doc["chi"] = table.labels.empty() ? std::to_string(spec.chi_row) : table.labels[spec.chi_row];
  doc["degree"] = table.degrees[spec.chi_row];
  doc["base_point"] = cvector_json(spec.base_point);
  json entries = json::array();
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    json e;
    e["vstar"] = cvector_json(spec.entries[i].vstar);
    e["mult"] = spec.entries[i].multiplicity;
    if (with_tau)
      e["tau_fixed"] =
          std::find(tau_fixed.begin(), tau_fixed.end(), static_cast<int>(i)) != tau_fixed.end();
    if (spec.entries[i].unstable) e["unstable"] = true;
    entries.push_back(e);
  }
  doc["entries"] = entries;
  json residuals;
  residuals["max_commutator"] = real_string(spec.max_commutator);
  residuals["cluster"] = real_string(spec.cluster_residual);
  doc["residuals"] = residuals;
  return doc;
}

json theorem_a_json(const families::TheoremAReport& report) {
  json doc;
  json checks = json::array();
  for (const auto& check : report.checks) {
    json c;
    c["chi"] = check.label;
    c["criterion"] = real_string(check.norm_sq);
    c["asserted"] = check.asserted;
    c["n_covectors"] = check.n_entries;
    c["n_tau_fixed"] = check.n_tau_fixed;
    c["verdict"] = check.pass ? "pass" : "FAIL";
    checks.push_back(c);
  }
  doc["characters"] = checks;
  doc["all_pass"] = report.all_pass;
  doc["tol"] = real_string(report.tol);
  doc["seed"] = report.seed;
  return doc;
}

json conjecture_b_json(const chars::CharacterTable& table,
                       const families::ConjectureBReport& report) {
  json doc;
  doc["partition_provenance"] = families::provenance_string(report.partition.provenance);
  json blocks = json::array();
  for (const auto& finding : report.blocks) {
    json b;
    json chis = json::array();
    for (int r : finding.chi_rows)
      chis.push_back(table.labels.empty() ? std::to_string(r) : table.labels[r]);
    b["chis"] = chis;
    b["criterion"] = real_string(finding.criterion);
    b["tau_stable_block"] = finding.tau_stable_block;
    b["tau_fixed_counts"] = finding.fixed_counts;
    b["verdict"] = finding.verdict;
    blocks.push_back(b);
  }
  doc["blocks"] = blocks;
  json global;
  global["sum_criteria"] = real_string(report.sum_criteria);
  global["order_W_tau"] = report.order_w_tau;
  global["seed"] = report.seed;
  global["tol"] = real_string(report.tol);
  doc["global"] = global;
  doc["theorem_side_pass"] = report.theorem_side_pass;
  return doc;
}

json partition_json(const sn::Partition& p) {
  json arr = json::array();
  for (int part : p) arr.push_back(part);
  return arr;
}

json multipartition_json(const sn::Multipartition& mu) {
  json arr = json::array();
  for (const auto& comp : mu.components) arr.push_back(partition_json(comp));
  return arr;
}

json jean_json(const families::JeanReport& report) {
  json doc;
  doc["n"] = report.n;
  doc["d"] = report.d;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["lambda"] = partition_json(row.lambda);
    r["in_Part_n_d"] = row.in_part_n_d;
    r["chi_at_wd"] = row.chi_at_wd;
    r["lhs_norm_sq"] = row.lhs;
    r["rhs_dim_sq"] = row.rhs;
    r["equal"] = row.equal;
    rows.push_back(r);
  }
  doc["rows"] = rows;
  doc["all_equal"] = report.all_equal;
  return doc;
}

json combinatorics_table_json(int n, int d) {
  const auto wd = sn::regular_wd(n, d);
  const auto type = sn::cycle_type(wd);
  const auto members = sn::part_n_d(n, d);
  json rows = json::array();
  for (const auto& lambda : sn::partitions_of(n)) {
    json row;
    row["lambda"] = partition_json(lambda);
    row["in_Part_n_d"] =
        std::find(members.begin(), members.end(), lambda) != members.end();
    row["chi_at_wd"] = sn::mn_character(lambda, type);
    row["core"] = partition_json(sn::d_core(lambda, d));
    const auto quo = sn::d_quotient(lambda, d);
    row["quotient"] = multipartition_json(quo);
    row["quotient_dim"] = sn::multipartition_dim(quo);
    rows.push_back(row);
  }
  return rows;
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace cmg::io
