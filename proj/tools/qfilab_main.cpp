// qfilab: command-line front end producing figure data (CSV), verification
// reports, and single-pair gap reports (JSON).

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qfilab/bounds.hpp"
#include "qfilab/landscape.hpp"
#include "qfilab/spin.hpp"
#include "qfilab/verify.hpp"
#include "qfilab/version.hpp"

namespace {

using namespace qfilab;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "5,15,25" or "2..6" or "3" -> list of dimensions.
std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(item.substr(0, dots));
      const int hi = std::stoi(item.substr(dots + 2));
      if (hi < lo) throw ParseError("bad dimension range: " + item);
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
    } else if (!item.empty()) {
      dims.push_back(std::stoi(item));
    }
  }
  if (dims.empty()) throw ParseError("no dimensions given");
  return dims;
}

std::vector<int> parse_ranks(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

// CSV writer with the standard comment header; writes a temp file first and
// renames it into place.
class CsvWriter {
 public:
  CsvWriter(std::string path, const std::string& command_line,
            std::uint64_t seed)
      : path_(std::move(path)) {
    body_ << "# qfi-lab " << kVersion << "\n";
    body_ << "# command: " << command_line << "\n";
    body_ << "# seed: " << seed << "\n";
  }

  void header(const std::string& columns) { body_ << columns << "\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) body_ << ',';
      body_ << fields[i];
    }
    body_ << "\n";
  }

  void commit() {
    if (path_.empty() || path_ == "-") {
      std::cout << body_.str();
      return;
    }
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open " + tmp + " for writing");
      out << body_.str();
      if (!out.good()) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path_);
  }

 private:
  std::string path_;
  std::ostringstream body_;
};

std::string join_args(int argc, char** argv) {
  std::string out = "qfilab";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

// ------------------------------------------------------------- parsing ----

// key=value fields after a "family:" prefix, e.g. "random:d=3,rank=2,seed=5".
// Bare tokens ("pure:random,d=4") are kept with an empty value.
std::map<std::string, std::string> parse_fields(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      fields[item] = "";
    } else {
      fields[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return fields;
}

Matrix matrix_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.contains("dim") || !j.contains("matrix")) {
    throw ParseError(path + ": expected fields 'dim' and 'matrix'");
  }
  const int d = j["dim"].get<int>();
  const auto& entries = j["matrix"];
  if (d < 1 || static_cast<int>(entries.size()) != d * d) {
    throw ParseError(path + ": 'matrix' must hold dim^2 [re, im] pairs");
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const auto& e = entries[static_cast<std::size_t>(i) * d + k];
      if (!e.is_array() || e.size() != 2) {
        throw ParseError(path + ": matrix entries must be [re, im] pairs");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

DensityMatrix parse_state(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (family == "file") return DensityMatrix(matrix_from_json_file(rest));
  const auto fields = parse_fields(rest);
  const auto get = [&](const char* key, const std::string& fallback) {
    auto it = fields.find(key);
    return it == fields.end() ? fallback : it->second;
  };

  if (family == "mixed") {
    const int d = std::stoi(get("d", "2"));
    return DensityMatrix(Matrix::Identity(d, d) / d);
  }
  if (family == "pure") {
    const int d = std::stoi(get("d", "2"));
    const std::uint64_t seed = std::stoull(get("seed", "1"));
    return random_density_matrix(d, 1, seed);
  }
  if (family == "random") {
    const int d = std::stoi(get("d", "2"));
    const int rank = std::stoi(get("rank", std::to_string(d)));
    const std::uint64_t seed = std::stoull(get("seed", "1"));
    return random_density_matrix(d, rank, seed);
  }
  if (family == "ghz") {
    const int n = std::stoi(get("n", "2"));
    const double p = std::stod(get("p", "0"));
    return noisy_ghz(n, p);
  }
  throw ParseError("unknown state family: " + family);
}

Matrix pauli_matrix(char c) {
  Matrix s(2, 2);
  switch (c) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
    case 'z': s << 1, 0, 0, -1; break;
    case '1': s = Matrix::Identity(2, 2); break;
    default: throw ParseError("pauli string may contain x, y, z, 1 only");
  }
  return s;
}

Observable parse_operator(const std::string& spec) {
  if (spec == "sx" || spec == "sy" || spec == "sz") {
    return Observable(pauli_matrix(spec[1]));
  }
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (kind == "file") return Observable(matrix_from_json_file(rest));
  if (kind == "pauli") {
    if (rest.empty()) throw ParseError("empty pauli string");
    Matrix m = Matrix::Identity(1, 1);
    for (char c : rest) {
      const Matrix s = pauli_matrix(c);
      Matrix next(m.rows() * 2, m.cols() * 2);
      next.topLeftCorner(m.rows(), m.cols()) = m * s(0, 0);
      next.topRightCorner(m.rows(), m.cols()) = m * s(0, 1);
      next.bottomLeftCorner(m.rows(), m.cols()) = m * s(1, 0);
      next.bottomRightCorner(m.rows(), m.cols()) = m * s(1, 1);
      m = std::move(next);
    }
    return Observable(m);
  }
  if (kind == "gen") {
    const auto fields = parse_fields(rest);
    const int d = std::stoi(fields.at("d"));
    const int idx = std::stoi(fields.at("m"));
    const GeneratorBasis basis(d);
    if (idx < 0 || idx >= basis.count()) {
      throw ParseError("generator index out of range");
    }
    return basis[idx];
  }
  if (kind == "jx" || kind == "jy" || kind == "jz") {
    const auto fields = parse_fields(rest);
    const int n = std::stoi(fields.at("n"));
    return collective_operator(n, axis_from_name(kind.substr(1))).op;
  }
  throw ParseError("unknown operator spec: " + spec);
}

// ------------------------------------------------------------ commands ----

int run_verify(const std::string& suite, const VerifyOptions& opts) {
  const std::vector<CheckResult> results = verify_suite(suite, opts);
  bool all_pass = true;
  int width = 0;
  for (const CheckResult& r : results) {
    width = std::max(width, static_cast<int>(r.name.size()));
  }
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%-6s %-*s  max err %-12.3e tol %-9.1e\n",
                r.pass ? "[ok]" : "[FAIL]", width, r.name.c_str(), r.max_error,
                r.tolerance);
  }
  std::printf("%zu identities checked, %s\n", results.size(),
              all_pass ? "all passed" : "FAILURES present");
  return all_pass ? kExitOk : kExitVerifyFailure;
}

void scan_scatter(CsvWriter& csv, const std::string& figure, int d,
                  int n_states, const std::vector<int>& ranks,
                  std::uint64_t seed) {
  if (d > 10) throw TooLarge("scatter scans are capped at d = 10");
  const bool kmb = figure == "fqkmb-exps";

  if (figure == "h-exps" || figure == "avgv-exps") {
    csv.header(figure == "h-exps"
                   ? "kind,id,seed,rank,s_lin,s_vn,exp_s,h"
                   : "kind,id,seed,rank,s_lin,s_vn,exp_s,h,avg_v");
    for (const ScanRecord& r : region_scan(d, n_states, ranks, seed)) {
      std::string kind = "scatter";
      if (r.id == "pure") kind = "marker-pure";
      if (r.id == "mixed") kind = "marker-mixed";
      std::vector<std::string> row{
          kind,         r.id,         std::to_string(r.seed),
          std::to_string(r.rank),     g17(r.s_lin),
          g17(r.s_vn),  g17(r.exp_s), g17(r.h)};
      if (figure == "avgv-exps") row.push_back(g17(r.avg_gap));
      csv.row(row);
    }
    return;
  }

  // Averaged-QFI landscape: full-rank scatter plus the white-noise boundary.
  csv.header("kind,id,seed,lambda,s_vn,exp_s,avg_fq");
  const std::vector<int> full_rank{d};
  for (const ScanRecord& r : region_scan(d, n_states, full_rank, seed)) {
    if (r.id == "pure") continue;  // singular; the boundary curve covers the limit
    double value = r.avg_qfi_math;
    if (kmb) {
      const RealVector l =
          r.id == "mixed" ? RealVector::Constant(d, 1.0 / d)
                          : random_density_matrix(d, d, r.seed).eigenvalues();
      value = avg_qfi_kmb_analytic(l);
    }
    const std::string kind = r.id == "mixed" ? "marker-mixed" : "scatter";
    const double lambda =
        r.id == "mixed" ? 1.0 / d : std::numeric_limits<double>::quiet_NaN();
    csv.row({kind, r.id, std::to_string(r.seed), g17(lambda), g17(r.s_vn),
             g17(r.exp_s), g17(value)});
  }
  RealVector grid(50);
  for (int i = 0; i < 50; ++i) grid(i) = (i + 1) / 50.0 / d;
  int idx = 0;
  for (const WhiteNoisePoint& p : white_noise_curve(d, grid)) {
    csv.row({"boundary", "boundary-" + std::to_string(idx++), "0",
             g17(p.lambda), g17(std::log(p.exp_s)), g17(p.exp_s),
             g17(kmb ? p.avg_qfi_kmb : p.avg_qfi_math)});
  }
}

void scan_hessian(CsvWriter& csv, const std::vector<int>& dims,
                  int grid_points) {
  csv.header("d,lambda,min_eig");
  for (int d : dims) {
    if (d < 2 || d > 25) throw TooLarge("hessian scan is capped at d = 25");
    for (int i = 1; i <= grid_points; ++i) {
      const double lambda = static_cast<double>(i) / grid_points / d;
      csv.row({std::to_string(d), g17(lambda),
               g17(hessian_min_eig(d, lambda))});
    }
  }
}

int run_scan(const std::string& figure, const std::string& d_text,
             const std::string& out, int n_states,
             const std::string& ranks_text, std::uint64_t seed,
             int lambda_grid, const std::string& command_line) {
  CsvWriter csv(out, command_line, seed);
  const std::vector<int> dims = parse_dims(d_text);
  if (figure == "hessian") {
    scan_hessian(csv, dims, lambda_grid);
  } else if (figure == "h-exps" || figure == "avgv-exps" ||
             figure == "fqmath-exps" || figure == "fqkmb-exps") {
    if (dims.size() != 1) {
      throw ParseError("scatter scans take a single dimension");
    }
    scan_scatter(csv, figure, dims[0], n_states, parse_ranks(ranks_text),
                 seed);
  } else {
    throw UnknownFigure("unknown figure: " + figure);
  }
  csv.commit();
  return kExitOk;
}

int run_ghz(int n, int p_grid, const std::string& out,
            const std::string& command_line) {
  if (p_grid < 1) throw ParseError("p-grid must be positive");
  CsvWriter csv(out, command_line, 0);
  csv.header("p,purity,fq_over_n2,rhs,fidelity_bound");
  for (int i = 0; i < p_grid; ++i) {
    const double p = p_grid == 1 ? 0.0 : static_cast<double>(i) / (p_grid - 1);
    const DensityMatrix rho = noisy_ghz(n, p);
    const GhzRelation rel = ghz_purity_relation(rho, n);
    const FidelityBound fid = fidelity_bound(rho, n);
    csv.row({g17(p), g17(rho.purity()), g17(rel.lhs), g17(rel.rhs),
             g17(fid.bound / (static_cast<double>(n) * n))});
  }
  csv.commit();
  return kExitOk;
}

int run_gap(const std::string& state_spec, const std::string& op_spec,
            const std::string& out) {
  const DensityMatrix rho = parse_state(state_spec);
  const Observable a = parse_operator(op_spec);
  const GapReport report = gap(rho, a);
  const BoundCheck h_bound = bound_h_times_sigma(rho, a);
  const BoundCheck lin_bound = bound_linear_entropy(rho, a);

  // Saturation flagged at 1e-7 relative.
  const auto saturated = [](const BoundCheck& b) {
    return std::abs(b.gap - b.bound) <= 1e-7 * std::max(1.0, std::abs(b.bound));
  };

  json j;
  j["version"] = kVersion;
  j["dim"] = rho.dim();
  j["state"] = state_spec;
  j["operator"] = op_spec;
  j["variance"] = report.variance;
  j["qfi"] = report.qfi;
  j["gap"] = report.gap;
  j["bounds"]["h_times_sigma"] = {{"bound", h_bound.bound},
                                  {"holds", h_bound.holds},
                                  {"saturated", saturated(h_bound)}};
  j["bounds"]["linear_entropy"] = {{"bound", lin_bound.bound},
                                   {"holds", lin_bound.holds},
                                   {"saturated", saturated(lin_bound)}};
  if (rho.rank() == 2) {
    const Rank2Identity id = rank2_gap_identity(rho, a);
    j["rank2_identity"] = {
        {"value", id.value},
        {"sigma", {id.sigma1, id.sigma2}},
        {"matches_gap", std::abs(id.value - report.gap) <= 1e-9}};
  }

  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw IoError("cannot open " + out);
    f << j.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfi-lab: variance vs quantum Fisher information toolkit"};
  app.require_subcommand(1);

  std::string suite = "all";
  std::string d_text = "2..6";
  std::uint64_t seed = 42;
  long samples = 100000;
  auto* verify = app.add_subcommand("verify", "run identity/bound suites");
  verify->add_option("suite", suite,
                     "core | bounds | averages | landscape | spin | all");
  verify->add_option("--d", d_text, "dimension range, e.g. 2..6");
  verify->add_option("--seed", seed, "base RNG seed");
  verify->add_option("--samples", samples, "Monte-Carlo samples per average");

  std::string figure;
  std::string scan_d = "3";
  std::string out;
  std::string ranks;
  int n_states = 200;
  int lambda_grid = 50;
  auto* scan = app.add_subcommand(
      "scan",
      "write figure data as CSV\n"
      "  h-exps      columns kind,id,seed,rank,s_lin,s_vn,exp_s,h\n"
      "  avgv-exps   columns ...,avg_v (generator-sphere average of V)\n"
      "  fqmath-exps columns kind,id,seed,lambda,s_vn,exp_s,avg_fq\n"
      "  fqkmb-exps  same schema, Kubo-Mori-Bogoliubov average\n"
      "  hessian     columns d,lambda,min_eig\n"
      "Values carry 17 significant digits; fixed seeds give byte-identical "
      "files.");
  scan->add_option("figure", figure,
                   "h-exps | avgv-exps | fqmath-exps | fqkmb-exps | hessian")
      ->required();
  scan->add_option("--d", scan_d,
                   "dimension(s): 3 or 5,15,25 (d<=10 scatter, d<=25 hessian)");
  scan->add_option("--out", out, "output path (default stdout)");
  scan->add_option("--seed", seed, "RNG seed");
  scan->add_option("--n-states", n_states, "number of random states");
  scan->add_option("--ranks", ranks, "rank cycle, e.g. 1,2,3 (default all)");
  scan->add_option("--lambda-grid", lambda_grid, "grid points per dimension");

  int ghz_n = 4;
  int p_grid = 21;
  auto* ghz = app.add_subcommand("ghz", "noisy-GHZ family table");
  ghz->add_option("--n", ghz_n, "number of qubits (<= 8)");
  ghz->add_option("--p-grid", p_grid, "number of p values in [0, 1]");
  ghz->add_option("--out", out, "output path (default stdout)");

  std::string state_spec;
  std::string op_spec;
  auto* gap_cmd = app.add_subcommand(
      "gap",
      "gap report for one state/operator pair\n"
      "  --state  mixed:d=2 | pure:random,d=4,seed=7 | random:d=3,rank=2,seed=1\n"
      "           | ghz:n=4,p=0.3 | file:rho.json\n"
      "  --op     sx|sy|sz | pauli:zz | gen:d=3,m=4 | jz:n=4 | file:a.json\n"
      "JSON state/operator files: {\"dim\": d, \"matrix\": [[re,im], ...]}\n"
      "with dim^2 row-major entries.");
  gap_cmd->add_option("--state", state_spec, "state spec")->required();
  gap_cmd->add_option("--op", op_spec, "operator spec")->required();
  gap_cmd->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command_line = join_args(argc, argv);
  try {
    if (verify->parsed()) {
      const std::vector<int> dims = parse_dims(d_text);
      VerifyOptions opts;
      opts.seed = seed;
      opts.d_min = dims.front();
      opts.d_max = dims.back();
      opts.samples = samples;
      return run_verify(suite, opts);
    }
    if (scan->parsed()) {
      return run_scan(figure, scan_d, out, n_states, ranks, seed, lambda_grid,
                      command_line);
    }
    if (ghz->parsed()) {
      return run_ghz(ghz_n, p_grid, out, command_line);
    }
    if (gap_cmd->parsed()) {
      return run_gap(state_spec, op_spec, out);
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
