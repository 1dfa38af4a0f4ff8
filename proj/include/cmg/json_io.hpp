#pragma once

#include <string>

#include <json.hpp>

#include "cmg/char_table.hpp"
#include "cmg/families.hpp"
#include "cmg/gaudin.hpp"
#include "cmg/group.hpp"
#include "cmg/params.hpp"
#include "cmg/regular.hpp"

namespace cmg::io {

using json = nlohmann::ordered_json;

/// Fixed-width decimal rendering: 15 significant digits, reproducible diffs.
std::string real_string(double x);
json complex_json(const groups::Complex& z);  // ["re", "im"] strings
json cvector_json(const groups::CVector& v);
json cmatrix_json(const groups::CMatrix& m);

/// Group definition file:
///   { "dim": n, "generators": [[["re","im"],...],...], "name": str }
/// with exact rational strings, or { "builtin": ..., "n"/"e"/"d"/"r": ... }.
groups::ReflectionGroup load_group_json(const json& doc, int cap = 20000);
groups::ReflectionGroup load_group_file(const std::string& path, int cap = 20000);

/// Complex matrix file: [[["re","im"] | number, ...], ...].
groups::CMatrix load_matrix_json(const json& doc);
groups::CMatrix load_matrix_file(const std::string& path);

/// Parameter k: [[v,...] per orbit] (single orbit may drop the outer list);
/// entries are numbers or [re, im]. Parameter c: [v per reflection class].
groups::ParamK parse_k(const json& doc, const groups::ReflectionInventory& inv);
groups::ParamC parse_c(const json& doc, const groups::ReflectionInventory& inv);

/// Report fragments.
json group_info_json(const groups::ReflectionGroup& g, const groups::ReflectionInventory& inv,
                     const chars::CharacterTable& table);
json character_table_json(const groups::ReflectionGroup& g, const chars::CharacterTable& table,
                          const std::vector<int>& b_invariants);
json regular_d_json(const groups::ReflectionGroup& g, const groups::ReflectionInventory& inv,
                    int d, bool regular, const std::string& wd_word, int dim_v_tau,
                    int order_w_tau, bool springer_pass);
json spectrum_json(const chars::CharacterTable& table, const gaudin::CovectorSpectrum& spec,
                   const std::vector<int>& tau_fixed, bool with_tau);
json theorem_a_json(const families::TheoremAReport& report);
json conjecture_b_json(const chars::CharacterTable& table,
                       const families::ConjectureBReport& report);
json jean_json(const families::JeanReport& report);
json partition_json(const sn::Partition& p);
json multipartition_json(const sn::Multipartition& mu);

/// Combinatorics emitter for (n, d): one row per partition of n.
json combinatorics_table_json(int n, int d);

void write_json_file(const std::string& path, const json& doc);

}  // namespace cmg::io
