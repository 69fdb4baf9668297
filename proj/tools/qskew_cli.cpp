#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qskew/json_io.hpp"
#include "qskew/verify.hpp"

namespace {

using namespace qskew;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitMismatch = 2;

struct Range {
  long lo = 0, hi = 0;
};

Range parse_range(const std::string& text) {
  auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = std::stol(text);
  } else {
    r.lo = std::stol(text.substr(0, dots));
    r.hi = std::stol(text.substr(dots + 2));
  }
  if (r.hi < r.lo) throw DomainError("empty range " + text);
  return r;
}

ExponentAssignment parse_assignment(const std::string& text, long r) {
  ExponentAssignment a;
  a.r = r;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("assignment entry needs name=value: " + item);
    a.exponents[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
  }
  return a;
}

FamilyId parse_family(const std::string& name, int n) {
  auto kind = parse_family_kind(name);
  if (!kind)
    throw DomainError("unknown family " + name +
                      " (expected euclidean-odd, euclidean-even, weyl-single, weyl-multi, "
                      "matrices-single, matrices-multi, symplectic, kpq)");
  if (n < 1) throw DomainError("family size n must be >= 1");
  return FamilyId{*kind, n};
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw DomainError("cannot open output file " + output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

std::string pideg_text(const std::string& source, const PIDegreeReport& rep) {
  std::ostringstream os;
  os << "input:             " << source << "\n";
  os << "ell:               " << rep.ell << "\n";
  os << "invariant factors:";
  for (const auto& d : rep.invariant_factors) os << " " << d.get_str();
  os << "\n";
  os << "h:                 " << rep.h.get_str() << "\n";
  os << "PI degree:         " << rep.pi_degree.get_str() << "\n";
  return os.str();
}

int cmd_pideg(const std::string& family_name, int n, const std::string& r_text,
              const std::string& assign_text, const std::string& input,
              const std::string& format, const std::string& output) {
  Range rr = parse_range(r_text);
  if (rr.lo != rr.hi) throw DomainError("pideg expects a single root order; use sweep for ranges");
  long r = rr.lo;
  IntMatrix m;
  std::string source;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw DomainError("cannot open " + input);
    json j;
    in >> j;
    m = matrix_from_json(j);
    source = input;
  } else if (!family_name.empty()) {
    FamilyId id = parse_family(family_name, n);
    ExponentAssignment assign =
        assign_text.empty() ? default_assignment(id, r) : parse_assignment(assign_text, r);
    m = family_matrix(id, assign);
    source = family_name + " n=" + std::to_string(n);
  } else {
    throw DomainError("pideg needs either a family or --input");
  }
  PIDegreeReport rep = pi_degree(m, r);
  if (format == "json")
    emit(pidegree_report_to_json(rep).dump(2), output);
  else
    emit(pideg_text(source, rep), output);
  return kExitOk;
}

int cmd_family(const std::string& family_name, int n, const std::string& emit_what, long r,
               const std::string& assign_text, const std::string& output) {
  FamilyId id = parse_family(family_name, n);
  ExponentAssignment assign =
      assign_text.empty() ? default_assignment(id, r ? r : 1) : parse_assignment(assign_text, r);
  if (emit_what == "matrix") {
    emit(matrix_to_json(family_matrix(id, assign)).dump(2), output);
  } else if (emit_what == "spec") {
    FieldPtr field = r > 0 ? family_cyclotomic_field(id, assign) : family_generic_field(id);
    emit(spec_to_json(*family_ore_spec(id, field)).dump(2), output);
  } else {
    throw DomainError("--emit must be matrix or spec");
  }
  return kExitOk;
}

int cmd_removal(const std::string& family_name, int n, long r, const std::string& assign_text,
                const std::string& input, const std::string& output, int max_index) {
  SpecPtr spec;
  if (!input.empty()) {
    std::ifstream in(input);
    if (!in) throw DomainError("cannot open " + input);
    json j;
    in >> j;
    spec = spec_from_json(j);
  } else if (!family_name.empty()) {
    FamilyId id = parse_family(family_name, n);
    ExponentAssignment assign =
        assign_text.empty() ? default_assignment(id, r ? r : 1) : parse_assignment(assign_text, r);
    FieldPtr field = r > 0 ? family_cyclotomic_field(id, assign) : family_generic_field(id);
    spec = family_ore_spec(id, field);
  } else {
    throw DomainError("removal needs either a family or --input");
  }
  if (max_index > 0) {
    auto patched = std::make_shared<OreSpec>(*spec);
    patched->max_index = max_index;
    spec = patched;
  }
  RemovalResult res = iterate_removal(spec);
  emit(removal_result_to_json(*spec, res).dump(2), output);
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  std::vector<VerifyReport> reports = run_verify_suite(suite);
  bool all_ok = true;
  for (const auto& rep : reports) {
    std::cout << rep.to_string();
    all_ok = all_ok && rep.passed();
  }
  std::cout << (all_ok ? "verification passed" : "verification FAILED") << "\n";
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_sweep(const std::string& family_name, const std::string& n_text, const std::string& r_text,
              const std::string& format, const std::string& output) {
  Range nr = parse_range(n_text);
  Range rr = parse_range(r_text);
  auto kind = parse_family_kind(family_name);
  if (!kind) throw DomainError("unknown family " + family_name);

  struct Row {
    int n;
    long r;
    Int h, pi, closed;
    bool match;
  };
  std::vector<Row> rows;
  bool all_match = true;
  for (long n = nr.lo; n <= nr.hi; ++n) {
    for (long r = rr.lo; r <= rr.hi; ++r) {
      FamilyId id{*kind, static_cast<int>(n)};
      PIDegreeReport rep = pi_degree(family_matrix(id, default_assignment(id, r)), r);
      Int closed = closed_form_pidegree(id, r);  // throws NoClosedForm for multiparameter input
      Row row{static_cast<int>(n), r, rep.h, rep.pi_degree, closed, rep.pi_degree == closed};
      all_match = all_match && row.match;
      rows.push_back(std::move(row));
    }
  }

  std::ostringstream os;
  if (format == "csv") {
    os << "family,n,r,ell,h,pi_degree,closed_form,match\n";
    for (const auto& row : rows)
      os << family_name << "," << row.n << "," << row.r << "," << row.r << "," << row.h.get_str()
         << "," << row.pi.get_str() << "," << row.closed.get_str() << ","
         << (row.match ? "true" : "false") << "\n";
  } else if (format == "json") {
    json arr = json::array();
    for (const auto& row : rows)
      arr.push_back(json{{"family", family_name},
                         {"n", row.n},
                         {"r", row.r},
                         {"ell", row.r},
                         {"h", row.h.get_str()},
                         {"pi_degree", row.pi.get_str()},
                         {"closed_form", row.closed.get_str()},
                         {"match", row.match}});
    os << arr.dump(2);
  } else {
    os << "family           n   r   pi_degree   closed_form   match\n";
    for (const auto& row : rows) {
      std::ostringstream line;
      line.width(0);
      os << family_name;
      for (size_t k = family_name.size(); k < 17; ++k) os << ' ';
      std::string ns = std::to_string(row.n), rs = std::to_string(row.r);
      os << ns << std::string(4 - ns.size(), ' ') << rs << std::string(4 - rs.size(), ' ');
      std::string ps = row.pi.get_str(), cs = row.closed.get_str();
      os << ps << std::string(ps.size() < 12 ? 12 - ps.size() : 1, ' ') << cs
         << std::string(cs.size() < 14 ? 14 - cs.size() : 1, ' ')
         << (row.match ? "yes" : "NO") << "\n";
    }
  }
  emit(os.str(), output);
  return all_match ? kExitOk : kExitMismatch;
}

// Dispatches a JSON run manifest. Exactly one input source (family or
// matrix/spec file) is permitted per run.
int cmd_run(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DomainError("cannot open manifest " + manifest_path);
  json j;
  in >> j;
  const std::string command = j.at("command").get<std::string>();
  const std::string family = j.value("family", "");
  const std::string input = j.value("input", "");
  if (!family.empty() && !input.empty())
    throw DomainError("manifest must name exactly one input source (family or input file)");
  if (family.empty() && input.empty() && command != "verify")
    throw DomainError("manifest names no input source");
  int n = j.value("n", 1);
  std::string r_text = j.contains("r") && j["r"].is_number()
                           ? std::to_string(j["r"].get<long>())
                           : j.value("r", "0");
  std::string n_text = j.contains("n") && j["n"].is_number()
                           ? std::to_string(j["n"].get<long>())
                           : j.value("n", "1");
  std::string assign;
  if (j.contains("assign"))
    for (const auto& [name, v] : j.at("assign").items())
      assign += (assign.empty() ? "" : ",") + name + "=" + std::to_string(v.get<long>());
  const std::string format = j.value("format", "text");
  const std::string output = j.value("output", "");
  if (command == "pideg") return cmd_pideg(family, n, r_text, assign, input, format, output);
  if (command == "sweep") return cmd_sweep(family, n_text, r_text, format, output);
  if (command == "removal")
    return cmd_removal(family, n, parse_range(r_text).lo, assign, input, output,
                       j.value("max_index", 0));
  if (command == "family")
    return cmd_family(family, n, j.value("emit", "matrix"), parse_range(r_text).lo, assign, output);
  if (command == "verify") return cmd_verify(j.value("suite", "all"));
  throw DomainError("unknown manifest command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact PI-degree and derivation-removal computations for iterated q-skew "
               "polynomial rings"};
  app.require_subcommand(1);

  std::string family, r_text = "0", assign, input, format = "text", output, n_text = "1";
  int n = 1, max_index = 0;
  std::string emit_what = "matrix", suite;

  CLI::App* pideg = app.add_subcommand("pideg", "compute the PI degree of a quantum affine space");
  pideg->require_subcommand(1);
  CLI::App* pideg_family = pideg->add_subcommand("family", "take the matrix from a named family");
  pideg_family->add_option("name", family, "family name")->required();
  pideg_family->add_option("--n", n, "family size parameter");
  pideg_family->add_option("--r", r_text, "root-of-unity order")->required();
  pideg_family->add_option("--assign", assign,
                           "parameter exponents name=int,... for multiparameter families");
  pideg_family->add_option("--format", format, "text or json");
  pideg_family->add_option("--output", output, "write the report to a file");
  CLI::App* pideg_matrix = pideg->add_subcommand("matrix", "take the matrix from a JSON file");
  pideg_matrix->add_option("--input", input, "JSON file with an integer matrix")->required();
  pideg_matrix->add_option("--r", r_text, "root-of-unity order")->required();
  pideg_matrix->add_option("--format", format, "text or json");
  pideg_matrix->add_option("--output", output, "write the report to a file");

  CLI::App* fam = app.add_subcommand("family", "emit a family's exponent matrix or Ore presentation");
  fam->add_option("family", family, "family name")->required();
  fam->add_option("--n", n, "family size parameter");
  fam->add_option("--emit", emit_what, "matrix or spec");
  fam->add_option("--r", r_text, "root order for a cyclotomic coefficient field (0 = generic)");
  fam->add_option("--assign", assign, "parameter exponents for multiparameter families");
  fam->add_option("--output", output, "write JSON to a file");

  CLI::App* rem = app.add_subcommand("removal", "run the iterated derivation-removal driver");
  rem->add_option("family", family, "family name");
  rem->add_option("--n", n, "family size parameter");
  rem->add_option("--r", r_text, "root order for a cyclotomic coefficient field (0 = generic)");
  rem->add_option("--assign", assign, "parameter exponents for multiparameter families");
  rem->add_option("--input", input, "JSON file with an Ore spec");
  rem->add_option("--output", output, "write the removal result JSON to a file");
  rem->add_option("--max-index", max_index, "nilpotence search cap");

  CLI::App* ver = app.add_subcommand("verify", "run a named property suite");
  ver->add_option("suite", suite, "qarith, scalars, ore, removal, pidegree, families, or all")
      ->required();

  CLI::App* runm = app.add_subcommand("run", "execute a JSON run manifest");
  std::string manifest;
  runm->add_option("--manifest", manifest, "manifest file")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate computed vs closed-form PI degrees");
  sweep->add_option("family", family, "family with a closed form")->required();
  sweep->add_option("--n", n_text, "n or range a..b")->required();
  sweep->add_option("--r", r_text, "r or range a..b")->required();
  sweep->add_option("--format", format, "text, csv, or json");
  sweep->add_option("--output", output, "write the table to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pideg->parsed()) {
      if (pideg_matrix->parsed()) family.clear();
      return cmd_pideg(family, n, r_text, assign, input, format, output);
    }
    if (fam->parsed()) return cmd_family(family, n, emit_what, parse_range(r_text).lo, assign, output);
    if (rem->parsed()) return cmd_removal(family, n, parse_range(r_text).lo, assign, input, output, max_index);
    if (ver->parsed()) return cmd_verify(suite);
    if (runm->parsed()) return cmd_run(manifest);
    if (sweep->parsed()) return cmd_sweep(family, n_text, r_text, format, output);
  } catch (const NoClosedForm& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitInputError;
}
