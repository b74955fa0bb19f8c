#include "csgreen/cli/commands.hpp"

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "csgreen/cli/config.hpp"
#include "csgreen/cli/table1.hpp"
#include "csgreen/matrix_elements.hpp"
#include "csgreen/residue.hpp"
#include "csgreen/spectrum.hpp"
#include "csgreen/sweep.hpp"

namespace csgreen::cli {

namespace {

/// 17 significant digits: enough to round-trip binary64 exactly.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Staged output: content is written to <path>.tmp and renamed into place on
/// commit, so a failure part-way never leaves a truncated file behind.
class StagedFile {
 public:
  explicit StagedFile(std::filesystem::path path)
      : path_(std::move(path)),
        tmp_(path_.string() + ".tmp"),
        out_(tmp_, std::ios::binary) {
    if (!out_) {
      throw std::runtime_error("cannot open '" + tmp_.string() +
                               "' for writing");
    }
  }
  StagedFile(const StagedFile&) = delete;
  StagedFile& operator=(const StagedFile&) = delete;
  ~StagedFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) {
      throw std::runtime_error("write failed for '" + tmp_.string() + "'");
    }
    out_.close();
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_config_echo(std::ostream& os, const RunConfig& cfg) {
  os << "# dimension = " << cfg.dimension << "\n";
  os << "# l = " << cfg.l << "\n";
  os << "# b = " << fmt(cfg.b) << "\n";
  for (const auto& [power, value] : cfg.coefficients) {
    os << "# coeff." << power << " = " << fmt(value) << "\n";
  }
  os << "# blocks = " << cfg.blocks << "\n";
  os << "# k_max = " << cfg.k_max << "\n";
  os << "# tol = " << fmt(cfg.tol) << "\n";
  if (cfg.has_window) {
    os << "# window = " << fmt(cfg.e_lo) << " " << fmt(cfg.e_hi) << "\n";
  }
  if (cfg.has_sweep) {
    os << "# sweep = " << fmt(cfg.b_min) << " " << fmt(cfg.b_max) << " "
       << cfg.sweep_steps << "\n";
  }
}

std::string resolve_out(const RunConfig& cfg, const std::string& cli_out,
                        const char* command) {
  if (!cli_out.empty()) return cli_out;
  if (!cfg.out.empty()) return cfg.out;
  throw ParseError(0, std::string(command) +
                          " needs an output path: pass --out or set the "
                          "'out' config key");
}

std::complex<double> parse_z(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParseError(0, "--z expects re,im (e.g. --z 2.0,1.0)");
  }
  try {
    std::size_t used = 0;
    const std::string re_text = text.substr(0, comma);
    const std::string im_text = text.substr(comma + 1);
    const double re = std::stod(re_text, &used);
    if (used != re_text.size()) throw std::invalid_argument(re_text);
    const double im = std::stod(im_text, &used);
    if (used != im_text.size()) throw std::invalid_argument(im_text);
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError(0, "--z expects two numbers re,im; got '" + text + "'");
  }
}

long resolved_blocks(const RunConfig& cfg) {
  return cfg.blocks < 0 ? 3 : cfg.blocks;
}

FindOptions find_options(const RunConfig& cfg) {
  FindOptions opts;
  opts.blocks = cfg.blocks;
  opts.tol = cfg.tol;
  opts.k_max = cfg.k_max;
  return opts;
}

void write_dense_csv(StagedFile& file, const RunConfig& cfg,
                     const Eigen::MatrixXd& matrix) {
  std::ostream& os = file.stream();
  write_config_echo(os, cfg);
  os << "row,col,value\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      os << r << "," << c << "," << fmt(matrix(r, c)) << "\n";
    }
  }
}

int cmd_matelem(const RunConfig& cfg, const std::string& cli_out) {
  const std::string stem = resolve_out(cfg, cli_out, "matelem");
  const BasisSpec basis = cfg.basis();
  const PotentialSpec pot = cfg.potential();
  const long order = (resolved_blocks(cfg) + 1) * default_block_size(pot);

  std::vector<std::pair<std::string, Eigen::MatrixXd>> outputs;
  outputs.emplace_back(stem + "_S.csv", overlap_matrix(basis, order).dense());
  outputs.emplace_back(stem + "_T.csv", kinetic_matrix(basis, order).dense());
  for (const auto& [power, value] : cfg.coefficients) {
    (void)value;
    outputs.emplace_back(stem + "_R" + std::to_string(power) + ".csv",
                         power_matrix(basis, order, power).dense());
  }

  std::vector<std::unique_ptr<StagedFile>> staged;
  for (const auto& [path, matrix] : outputs) {
    staged.push_back(std::make_unique<StagedFile>(path));
    write_dense_csv(*staged.back(), cfg, matrix);
  }
  for (auto& file : staged) file->commit();
  return 0;
}

int cmd_green(const RunConfig& cfg, const std::string& cli_out,
              const std::string& z_text) {
  const std::string path = resolve_out(cfg, cli_out, "green");
  const std::complex<double> z = parse_z(z_text);
  const BasisSpec basis = cfg.basis();
  const PotentialSpec pot = cfg.potential();
  const long blocks = resolved_blocks(cfg);

  const JacobiCache cache(basis, pot);
  const BlockTridiagonal rows = cache.at(z);
  const GreenBlockMatrix g =
      green_matrix(rows, z, blocks, cfg.tol, cfg.k_max);
  const double defect = defect_residual(rows, g);

  StagedFile file{path};
  std::ostream& os = file.stream();
  write_config_echo(os, cfg);
  os << "# z = " << fmt(z.real()) << "," << fmt(z.imag()) << "\n";
  os << "# block_size = " << g.block_size << "\n";
  os << "# tail_depth = " << g.tail_depth << "\n";
  os << "# convergence_estimate = " << fmt(g.convergence_estimate) << "\n";
  os << "# defect_residual = " << fmt(defect) << "\n";
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < g.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.values.cols(); ++c) {
      os << r << "," << c << "," << fmt(g.values(r, c).real()) << ","
         << fmt(g.values(r, c).imag()) << "\n";
    }
  }
  file.commit();
  return 0;
}

/// Shared by `spectrum` and `states`: search the window, then attach
/// eigenstates via contour residues (marking each level validated or not).
struct SolvedSpectrum {
  SpectrumResult spectrum;
  std::vector<std::optional<Eigenstate>> states;
};

SolvedSpectrum solve_spectrum(const RunConfig& cfg, const char* command) {
  if (!cfg.has_window) {
    throw ParseError(0, std::string(command) +
                            " needs a 'window = E_lo E_hi' config key");
  }
  const BasisSpec basis = cfg.basis();
  const PotentialSpec pot = cfg.potential();
  SolvedSpectrum solved;
  solved.spectrum =
      find_eigenvalues(basis, pot, cfg.e_lo, cfg.e_hi, find_options(cfg));
  ResidueOptions ropts;
  ropts.tol = cfg.tol;
  ropts.k_max = cfg.k_max;
  solved.states = validate_spectrum(basis, pot, solved.spectrum, ropts);
  return solved;
}

void write_search_notes(std::ostream& os, const SpectrumResult& spectrum) {
  os << "# levels = " << spectrum.levels.size() << "\n";
  for (const EigenvalueRecord& r : spectrum.rejected) {
    os << "# rejected = " << fmt(r.energy) << "\n";
  }
  for (const double e : spectrum.flagged) {
    os << "# flagged = " << fmt(e) << "\n";
  }
  for (const double e : spectrum.skipped) {
    os << "# skipped = " << fmt(e) << "\n";
  }
}

int cmd_spectrum(const RunConfig& cfg, const std::string& cli_out) {
  const std::string path = resolve_out(cfg, cli_out, "spectrum");
  const SolvedSpectrum solved = solve_spectrum(cfg, "spectrum");

  StagedFile file{path};
  std::ostream& os = file.stream();
  write_config_echo(os, cfg);
  write_search_notes(os, solved.spectrum);
  os << "index,energy,bracket,blocks,tail_depth,validated\n";
  for (const EigenvalueRecord& lv : solved.spectrum.levels) {
    os << lv.index << "," << fmt(lv.energy) << "," << fmt(lv.bracket) << ","
       << lv.blocks << "," << lv.tail_depth << "," << (lv.validated ? 1 : 0)
       << "\n";
  }
  file.commit();
  return 0;
}

int cmd_states(const RunConfig& cfg, const std::string& cli_out) {
  const std::string stem = resolve_out(cfg, cli_out, "states");
  const SolvedSpectrum solved = solve_spectrum(cfg, "states");
  const BasisSpec basis = cfg.basis();

  StagedFile coeffs{stem + "_coeffs.csv"};
  {
    std::ostream& os = coeffs.stream();
    write_config_echo(os, cfg);
    write_search_notes(os, solved.spectrum);
    os << "index,n,c\n";
    for (std::size_t i = 0; i < solved.states.size(); ++i) {
      if (!solved.states[i]) continue;
      const Eigen::VectorXd& c = solved.states[i]->coeffs;
      for (Eigen::Index n = 0; n < c.size(); ++n) {
        os << solved.spectrum.levels[i].index << "," << n << "," << fmt(c(n))
           << "\n";
      }
    }
  }

  // Radial profiles on a uniform grid out to 10/b, where every bound state
  // of a confining problem has decayed to numerical noise.
  constexpr int kSamples = 201;
  const double r_max = 10.0 / basis.b;
  StagedFile wave{stem + "_wave.csv"};
  {
    std::ostream& os = wave.stream();
    write_config_echo(os, cfg);
    os << "index,r,psi\n";
    for (std::size_t i = 0; i < solved.states.size(); ++i) {
      if (!solved.states[i]) continue;
      for (int s = 0; s < kSamples; ++s) {
        const double r = r_max * static_cast<double>(s) / (kSamples - 1);
        os << solved.spectrum.levels[i].index << "," << fmt(r) << ","
           << fmt(eigenstate_eval(basis, *solved.states[i], r)) << "\n";
      }
    }
  }
  coeffs.commit();
  wave.commit();
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& cli_out,
              std::ostream& err) {
  const std::string path = resolve_out(cfg, cli_out, "sweep");
  if (!cfg.has_sweep) {
    throw ParseError(0, "sweep needs a 'sweep = b_min b_max steps' config key");
  }
  if (!cfg.has_window) {
    throw ParseError(0, "sweep needs a 'window = E_lo E_hi' config key");
  }
  std::vector<double> b_values;
  for (long i = 0; i < cfg.sweep_steps; ++i) {
    b_values.push_back(cfg.sweep_steps == 1
                           ? cfg.b_min
                           : cfg.b_min + (cfg.b_max - cfg.b_min) *
                                             static_cast<double>(i) /
                                             static_cast<double>(
                                                 cfg.sweep_steps - 1));
  }
  const SweepResult result = sweep_b(cfg.basis(), cfg.potential(), b_values,
                                     cfg.e_lo, cfg.e_hi, find_options(cfg));
  for (const SweepFailure& f : result.failures) {
    err << "sweep: b = " << fmt(f.b) << " failed: " << f.reason << "\n";
  }

  StagedFile file{path};
  std::ostream& os = file.stream();
  write_config_echo(os, cfg);
  for (const SweepFailure& f : result.failures) {
    os << "# failed_b = " << fmt(f.b) << "\n";
  }
  os << "b,index,energy\n";
  for (const SweepRecord& row : result.rows) {
    os << fmt(row.b) << "," << row.level << "," << fmt(row.energy) << "\n";
  }
  file.commit();
  return 0;
}

struct BenchCase {
  const char* name;
  int dimension;
  int coulomb_power;   // fixed -1; kept for symmetry of the table
  int confine_power;
  double confine_coeff;
  const double* reference;
};

int cmd_bench_table1(const std::optional<RunConfig>& cfg, std::ostream& out) {
  // Numeric knobs may come from an optional config; the two Hamiltonians
  // themselves are fixed — that is what the benchmark certifies.
  double b = 1.0;
  long blocks = 7;
  long k_max = 1L << 16;
  double tol = 1e-12;
  if (cfg) {
    b = cfg->b;
    if (cfg->blocks >= 0) blocks = cfg->blocks;
    k_max = cfg->k_max;
    tol = cfg->tol;
  }

  const BenchCase cases[2] = {
      {"coulomb+linear(D=3)", 3, -1, 1, 1.0, kCoulombLinearRef},
      {"coulomb+oscillator(D=2)", 2, -1, 2, 0.5, kCoulombOscillatorRef},
  };

  int matches = 0;
  for (const BenchCase& bc : cases) {
    const BasisSpec basis(bc.dimension, 0, b);
    PotentialSpec pot;
    pot.set(-1, -1.0);
    pot.set(bc.confine_power, bc.confine_coeff);

    const double lo = bc.reference[0] - 1.0;
    const double hi =
        bc.reference[19] + 0.25 * (bc.reference[19] - bc.reference[18]);
    FindOptions opts;
    opts.blocks = blocks;
    opts.k_max = k_max;
    opts.tol = tol;
    opts.count_limit = 20;
    const SpectrumResult spectrum =
        find_eigenvalues(basis, pot, lo, hi, opts);

    for (int row = 0; row < 20; ++row) {
      if (row < static_cast<int>(spectrum.levels.size())) {
        const double e = spectrum.levels[row].energy;
        const double rel =
            std::abs(e - bc.reference[row]) / std::abs(bc.reference[row]);
        const bool pass = rel <= kTable1RelTol;
        matches += pass ? 1 : 0;
        out << bc.name << " row " << (row + 1) << ": computed " << fmt(e)
            << " reference " << fmt(bc.reference[row]) << " rel " << fmt(rel)
            << (pass ? " PASS" : " FAIL") << "\n";
      } else {
        out << bc.name << " row " << (row + 1) << ": MISSING (reference "
            << fmt(bc.reference[row]) << ") FAIL\n";
      }
    }
  }
  out << "table1: " << matches << "/40 within " << fmt(kTable1RelTol) << "\n";
  return matches == 40 ? 0 : 3;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Coulomb-Sturmian Green's-operator toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string z_text;

  const auto add_common = [&](CLI::App* cmd, bool config_required) {
    CLI::Option* c =
        cmd->add_option("--config", config_path, "run configuration file");
    if (config_required) c->required();
    cmd->add_option("--out", out_path, "output path (overrides config 'out')");
  };

  CLI::App* matelem = app.add_subcommand(
      "matelem", "write overlap, kinetic and power matrices as CSV");
  add_common(matelem, true);
  CLI::App* green = app.add_subcommand(
      "green", "evaluate the truncated Green's matrix at a complex energy");
  add_common(green, true);
  green->add_option("--z", z_text, "complex energy as re,im")->required();
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "locate eigenvalues in the config window");
  add_common(spectrum, true);
  CLI::App* states = app.add_subcommand(
      "states", "extract eigenstate coefficients and radial profiles");
  add_common(states, true);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "repeat the eigenvalue search over a range of b");
  add_common(sweep, true);
  CLI::App* bench = app.add_subcommand(
      "bench-table1", "reproduce the two benchmark spectra and report "
                      "pass/fail against embedded references");
  add_common(bench, false);

  // CLI11's vector overload consumes arguments back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    std::optional<RunConfig> cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (matelem->parsed()) return cmd_matelem(*cfg, out_path);
    if (green->parsed()) return cmd_green(*cfg, out_path, z_text);
    if (spectrum->parsed()) return cmd_spectrum(*cfg, out_path);
    if (states->parsed()) return cmd_states(*cfg, out_path);
    if (sweep->parsed()) return cmd_sweep(*cfg, out_path, err);
    if (bench->parsed()) return cmd_bench_table1(cfg, out);
    err << "error: no subcommand\n";
    return 1;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const PartitionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace csgreen::cli
