#pragma once

// Subcommand dispatch for the matlie command-line tool. Every command prints a
// one-line JSON run report on stdout:
//   {"command":..., "inputs":[...], "outcome":{...}, "timing_ms":...}
// Exit codes: 0 success, 1 domain error, 2 malformed input or usage.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matlie/io.hpp"
#include "matlie/matlie.hpp"
#include "selftest.hpp"

namespace matlie::cli {

using json = nlohmann::json;

/// Input could not be understood (bad JSON, unknown preset, missing file).
struct UsageError : std::runtime_error {
  std::string name;
  UsageError(std::string n, const std::string& msg) : std::runtime_error(msg), name(std::move(n)) {}
};

// Presets ---------------------------------------------------------------------------

/// I, S, St, P, J (symplectic form), Eij or Ei_j (1-based units), Z (zero).
inline Matrix preset_matrix(const std::string& name, const Field& f, std::size_t n) {
  if (name == "I") return Matrix::identity(f, n);
  if (name == "S") return shift_matrix(f, n);
  if (name == "St") return transpose(shift_matrix(f, n));
  if (name == "P") return cyclic_permutation(f, n);
  if (name == "J") return symplectic_form(f, n);
  if (name == "Z") return Matrix(f, n, n);
  if (name.size() >= 3 && name[0] == 'E') {
    const std::string idx = name.substr(1);
    if (idx.find_first_not_of("0123456789_") == std::string::npos) {
      const auto us = idx.find('_');
      std::size_t i = 0, j = 0;
      if (us != std::string::npos && us > 0 && us + 1 < idx.size()) {
        i = std::stoul(idx.substr(0, us));
        j = std::stoul(idx.substr(us + 1));
      } else if (us == std::string::npos && idx.size() == 2) {
        i = static_cast<std::size_t>(idx[0] - '0');
        j = static_cast<std::size_t>(idx[1] - '0');
      } else {
        throw UsageError("UnknownPreset", "ambiguous unit \"" + name + "\"; write Ei_j");
      }
      return matrix_unit(f, n, i, j);
    }
  }
  throw UsageError("UnknownPreset", "unknown matrix preset \"" + name + "\"");
}

/// Comma-separated presets. UPPER expands to every E(i,j) with i < j and
/// UNITS to all n^2 units.
inline std::vector<Matrix> preset_list(const std::string& list, const Field& f, std::size_t n) {
  std::vector<Matrix> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "UPPER" || item == "UNITS") {
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
          if (item == "UNITS" || i < j) out.push_back(matrix_unit(f, n, i, j));
      continue;
    }
    out.push_back(preset_matrix(item, f, n));
  }
  if (out.empty()) throw UsageError("UnknownPreset", "empty preset list");
  return out;
}

inline const std::vector<std::string>& map_preset_names() {
  static const std::vector<std::string> names{"identity",      "transpose",          "symplectic",
                                              "neg-transpose", "trace-shift",        "conj-random",
                                              "anti-random",   "twisted-conj-random", "twisted-anti-random"};
  return names;
}

inline AlgebraMap preset_map(const std::string& name, const Field& f, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "identity") return AlgebraMap::identity(f, n);
  if (name == "transpose") return AlgebraMap::transpose_map(f, n);
  if (name == "symplectic")
    return AlgebraMap::from_function(f, n, [](const Matrix& x) { return symplectic_involution(x); });
  if (name == "neg-transpose") return AlgebraMap::from_function(f, n, [](const Matrix& x) { return -transpose(x); });
  if (name == "trace-shift") {
    const Matrix id = Matrix::identity(f, n);
    return AlgebraMap::from_function(f, n, [&](const Matrix& x) { return x + trace(x) * id; });
  }
  if (name == "conj-random") return AlgebraMap::conjugation(random_invertible(f, n, rng));
  if (name == "anti-random") return AlgebraMap::anti_conjugation(random_invertible(f, n, rng));
  if (name == "twisted-conj-random")
    return AlgebraMap::conjugation(random_invertible(f, n, rng), FieldAutomorphism::frobenius(1));
  if (name == "twisted-anti-random")
    return AlgebraMap::anti_conjugation(random_invertible(f, n, rng), FieldAutomorphism::frobenius(1));
  throw UsageError("UnknownPreset", "unknown map preset \"" + name + "\"");
}

// File helpers ------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("FileNotFound", "cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("MalformedJSON", path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("FileNotWritable", "cannot write \"" + path + "\"");
  out << text;
}

/// A generator set read from a file: a matrix array, {"generators": [...]},
/// a single matrix, or a subspace (its canonical basis, flagged as a span).
struct MatrixInput {
  std::vector<Matrix> matrices;
  std::optional<Subspace> span;
};

inline MatrixInput matrices_from_json(const json& j) {
  MatrixInput in;
  if (j.is_array()) {
    for (const auto& m : j) in.matrices.push_back(io::matrix_from_json(m));
  } else if (j.is_object() && j.contains("generators")) {
    return matrices_from_json(j.at("generators"));
  } else if (j.is_object() && j.contains("basis")) {
    in.span = io::subspace_from_json(j);
    in.matrices = in.span->basis();
  } else if (j.is_object() && j.contains("entries")) {
    in.matrices.push_back(io::matrix_from_json(j));
  } else {
    throw Error(Errc::ParseError, "expected a matrix, a matrix array, or a subspace");
  }
  return in;
}

// Dispatch ------------------------------------------------------------------------------

struct Options {
  std::string field = "q";
  std::size_t n = 0;
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  std::string csv;
  std::string preset;
  std::string map;
  std::string save_map;
  std::string kind = "lie";
  std::optional<std::size_t> max_k;
  std::size_t k = 1;
  std::string prop = "D";
  bool span = false;
  std::size_t max_n = 12;
  std::string evidence;
  std::size_t samples = 6;
};

namespace detail {

inline std::size_t require_n(const Options& o) {
  if (o.n == 0) throw UsageError("MissingArgument", "--n is required with presets");
  return o.n;
}

inline MatrixInput load_matrices(const Options& o, std::vector<std::string>& inputs) {
  if (!o.in.empty()) {
    inputs.push_back(o.in);
    return matrices_from_json(read_json_file(o.in));
  }
  if (!o.preset.empty()) return {preset_list(o.preset, io::parse_field_flag(o.field), require_n(o)), std::nullopt};
  throw UsageError("MissingArgument", "give --in <file.json> or --preset <list>");
}

inline AlgebraMap load_map(const Options& o, std::vector<std::string>& inputs) {
  std::optional<AlgebraMap> map;
  if (!o.in.empty()) {
    inputs.push_back(o.in);
    map = io::algebra_map_from_json(read_json_file(o.in));
  } else if (!o.map.empty()) {
    map = preset_map(o.map, io::parse_field_flag(o.field), require_n(o), o.seed);
  } else {
    throw UsageError("MissingArgument", "give --in <map.json> or --map <preset>");
  }
  if (!o.save_map.empty()) write_text_file(o.save_map, io::to_json(*map).dump(2) + "\n");
  return *map;
}

inline void maybe_write(const Options& o, const json& j) {
  if (!o.out.empty()) write_text_file(o.out, j.dump(2) + "\n");
}

inline SubsetH subset_from(const MatrixInput& in, bool as_span) {
  if (in.span) return SubsetH::span_of(*in.span);
  if (in.matrices.empty()) throw Error(Errc::EmptySequence, "H is empty");
  if (as_span) return SubsetH::span_of(Subspace::span(in.matrices));
  return SubsetH::finite(in.matrices);
}

inline json report_json(const NilpotencyReport& r) {
  json j{{"is_lie_nilpotent", r.is_lie_nilpotent},
         {"index", r.index ? json(*r.index) : json(nullptr)},
         {"is_omega_lie_nilpotent", r.is_omega_lie_nilpotent},
         {"dim", r.dim},
         {"stabilization_index", r.stabilization_index},
         {"conjecture_bound", r.bounds.conjecture_bound},
         {"within_conjecture_bound", r.bounds.within_conjecture_bound}};
  if (r.bounds.g_bound) {
    j["g_bound"] = *r.bounds.g_bound;
    j["within_g_bound"] = *r.bounds.within_g_bound;
  }
  return j;
}

}  // namespace detail

inline json run_command(const std::string& command, const Options& o, std::vector<std::string>& inputs,
                        std::ostream& text, int& status) {
  using namespace detail;
  status = 0;
  if (command == "bracket") {
    const auto in = load_matrices(o, inputs);
    if (in.matrices.size() < 2) throw Error(Errc::EmptySequence, "bracket needs at least two matrices");
    const Matrix r = left_normed(in.matrices);
    maybe_write(o, io::to_json(r));
    return {{"arity", in.matrices.size()}, {"result", io::to_json(r)}};
  }
  if (command == "closure") {
    const auto in = load_matrices(o, inputs);
    ProductKind kind;
    if (o.kind == "lie") kind = ProductKind::Lie;
    else if (o.kind == "assoc" || o.kind == "associative") kind = ProductKind::Associative;
    else throw UsageError("BadArgument", "--kind must be lie or assoc");
    const auto res = closure(in.matrices, kind);
    maybe_write(o, io::to_json(res.subspace));
    return {{"kind", kind == ProductKind::Lie ? "Lie" : "Associative"},
            {"dim", res.subspace.dim()},
            {"ambient_dim", res.subspace.ambient_dim()},
            {"rounds", res.rounds},
            {"subspace", io::to_json(res.subspace)}};
  }
  if (command == "chain") {
    const auto h = subset_from(load_matrices(o, inputs), o.span);
    const auto chain = centralizer_chain(h, o.max_k);
    json dims = json::array();
    for (const auto& l : chain.levels) dims.push_back(l.dim());
    maybe_write(o, io::to_json(chain.omega));
    return {{"level_dims", dims},
            {"stabilization_index", chain.stabilization_index},
            {"stabilized", chain.stabilized()},
            {"omega", io::to_json(chain.omega)}};
  }
  if (command == "nilpotency") {
    const auto h = subset_from(load_matrices(o, inputs), o.span);
    json j = report_json(nilpotency_report(h));
    maybe_write(o, j);
    return j;
  }
  if (command == "hereditary") {
    const auto in = load_matrices(o, inputs);
    const auto h = subset_from(in, false);
    HereditaryProperty prop;
    if (o.prop == "D") prop = HereditaryProperty::Distinct;
    else if (o.prop == "L") prop = HereditaryProperty::LinearlyIndependent;
    else throw UsageError("BadArgument", "--prop must be D or L");
    const auto s = hereditary_centralizer(h, o.k, prop);
    const auto plain = lie_centralizer(h, o.k);
    maybe_write(o, io::to_json(s));
    return {{"k", o.k},
            {"prop", o.prop},
            {"dim", s.dim()},
            {"plain_dim", plain.dim()},
            {"contains_plain", plain.is_subspace_of(s)},
            {"subspace", io::to_json(s)}};
  }
  if (command == "bounds") {
    const std::string table = bounds_csv(o.max_n);
    if (!o.csv.empty()) write_text_file(o.csv, table);
    json rows = json::array();
    for (std::size_t n = 1; n <= o.max_n; ++n)
      for (std::size_t k = 1; k <= n; ++k)
        rows.push_back({{"n", n}, {"k", k}, {"g", dim_bound_g(n, k)}, {"conjecture_bound", conjecture_bound(n)}});
    json j{{"max_n", o.max_n}, {"rows", rows}};
    if (!o.evidence.empty()) {
      const auto ev = run_evidence_experiment(o.seed, o.samples);
      write_text_file(o.evidence, evidence_csv(ev));
      std::size_t within = 0;
      for (const auto& r : ev) within += r.within_bound;
      j["evidence_rows"] = ev.size();
      j["evidence_within_bound"] = within;
    }
    maybe_write(o, j);
    return j;
  }
  if (command == "recover-auto" || command == "recover-anti") {
    const auto map = load_map(o, inputs);
    const bool anti = command == "recover-anti";
    const bool twisted = !map.twist().is_identity();
    const RecoveryResult r = anti ? (twisted ? recover_twisted_antiautomorphism(map) : recover_antiautomorphism(map))
                                  : (twisted ? recover_twisted_automorphism(map) : recover_automorphism(map));
    json j = io::to_json(r);
    maybe_write(o, j);
    j["twisted"] = twisted;
    return j;
  }
  if (command == "decompose") {
    const auto map = load_map(o, inputs);
    const auto d = decompose_lie_automorphism(map);
    json j = io::to_json(d);
    maybe_write(o, j);
    j["classification"] = to_string(classify_map(map));
    j["tau_trace_property"] = tau_trace_property_check(map, d);
    return j;
  }
  if (command == "verify-example") {
    std::vector<Field> fields;
    if (o.field == "q" && o.n == 0) fields = {Field::rationals(), Field::prime(7)};
    else fields = {io::parse_field_flag(o.field)};
    json results = json::array();
    bool all = true;
    for (const auto& f : fields) {
      const auto ex = reproduce_symplectic_example(f, o.n ? o.n : 8);
      const bool matches = ex.recovery.conjugator == symplectic_form(f, ex.m.rows());
      const bool ok = ex.recovery.verified && matches;
      all = all && ok;
      text << "field " << f.describe() << "\n";
      text << "M = phi(S^T)^" << ex.m.rows() - 1 << " phi(E(1," << ex.m.rows() << ")) = " << ex.m << "\n";
      text << "a = " << transpose(ex.recovery.kernel_vector) << "^T\n";
      text << "A-bar =\n";
      for (std::size_t i = 0; i < ex.recovery.conjugator.rows(); ++i) {
        text << "  ";
        for (std::size_t j = 0; j < ex.recovery.conjugator.cols(); ++j)
          text << (j ? " " : "") << f.format(ex.recovery.conjugator(i, j));
        text << "\n";
      }
      text << (ok ? "VERIFIED" : "NOT VERIFIED") << "\n";
      results.push_back({{"field", io::to_json(f)},
                         {"m", io::to_json(ex.m)},
                         {"phi_transposed_shift", io::to_json(ex.phi_transposed_shift)},
                         {"recovery", io::to_json(ex.recovery)},
                         {"matches_symplectic_form", matches}});
    }
    if (!all) status = 1;
    json j{{"verified", all}, {"results", results}};
    maybe_write(o, j);
    return j;
  }
  if (command == "selftest") {
    const auto outcomes = run_selftest(o.seed);
    json checks = json::array();
    bool all = true;
    for (const auto& c : outcomes) {
      text << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
      checks.push_back({{"name", c.name}, {"passed", c.passed}});
      all = all && c.passed;
    }
    if (!all) status = 1;
    return {{"passed", all}, {"checks", checks}};
  }
  throw UsageError("UnknownCommand", "unknown command \"" + command + "\"");
}

/// Parses `args` (without the program name), runs the command and writes the
/// run report to `out`. Errors go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact matrix Lie-algebra toolkit"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"bracket", "left-normed bracket of two or more matrices"},
      {"closure", "Lie or associative closure of generators"},
      {"chain", "Lie centralizer chain L_1(H), L_2(H), ..."},
      {"nilpotency", "Lie-nilpotency report for H"},
      {"hereditary", "hereditary k-th Lie centralizer (property D or L)"},
      {"bounds", "dimension bound table; optional evidence experiment"},
      {"recover-auto", "recover the conjugator of a (twisted) automorphism"},
      {"recover-anti", "recover the conjugator of a (twisted) anti-automorphism"},
      {"decompose", "split a Lie automorphism into sigma + tau"},
      {"verify-example", "reproduce the symplectic involution example on M_8"},
      {"selftest", "run the invariant sweep"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--field", o.field, "q | gf:p | gfext:p:m[:c0,...,cm]");
    sub->add_option("--n", o.n, "matrix size for presets");
    sub->add_option("--in", o.in, "input JSON file");
    sub->add_option("--out", o.out, "write the result JSON here");
    sub->add_option("--seed", o.seed, "random seed");
    if (name == "bounds") {
      sub->add_option("--csv", o.csv, "write the n,k,g,conjecture_bound table");
      sub->add_option("--max-n", o.max_n, "largest n in the table");
      sub->add_option("--evidence", o.evidence, "run the evidence experiment and write its CSV");
      sub->add_option("--samples", o.samples, "random samples per (field, n) in the experiment");
    } else {
      sub->add_option("--csv", o.csv, "accepted for uniformity; only bounds writes CSV");
    }
    if (name == "bracket" || name == "closure" || name == "chain" || name == "nilpotency" || name == "hereditary")
      sub->add_option("--preset", o.preset, "comma-separated presets: I,S,St,P,J,Z,Eij,Ei_j,UPPER,UNITS");
    if (name == "closure") sub->add_option("--kind", o.kind, "lie | assoc");
    if (name == "chain") sub->add_option("--max-k", o.max_k, "stop after this many levels");
    if (name == "chain" || name == "nilpotency") sub->add_flag("--span", o.span, "quantify over the linear span");
    if (name == "hereditary") {
      sub->add_option("--k", o.k, "centralizer index");
      sub->add_option("--prop", o.prop, "D (distinct) | L (linearly independent)");
    }
    if (name == "recover-auto" || name == "recover-anti" || name == "decompose") {
      std::string names;
      for (const auto& m : map_preset_names()) names += (names.empty() ? "" : ", ") + m;
      sub->add_option("--map", o.map, "map preset: " + names);
      sub->add_option("--save-map", o.save_map, "write the map JSON here");
    }
  }

  std::vector<std::string> owned{"matlie"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<std::string> inputs;
  const auto start = std::chrono::steady_clock::now();
  json outcome;
  int status = 0;
  try {
    outcome = run_command(command, o, inputs, out, status);
  } catch (const UsageError& e) {
    err << "error: " << e.name << ": " << e.what() << "\n";
    outcome = {{"error", e.name}, {"message", e.what()}};
    status = 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    outcome = {{"error", std::string(e.code_name())}, {"message", e.what()}};
    status = e.code() == Errc::ParseError ? 2 : 1;
  } catch (const json::exception& e) {
    err << "error: MalformedJSON: " << e.what() << "\n";
    outcome = {{"error", "MalformedJSON"}, {"message", e.what()}};
    status = 2;
  }
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const json report{{"command", command}, {"inputs", inputs}, {"outcome", outcome}, {"timing_ms", ms}};
  out << report.dump() << "\n";
  return status;
}

}  // namespace matlie::cli
