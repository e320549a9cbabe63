// Command-line front end: lik <command> [options] SYSTEM
#include "lik/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

lik::Rational to_rational(const std::string& s) {
  try {
    return lik::parse_rational(s);
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected a rational number, got '" + s + "'");
  }
}

std::vector<lik::Rational> to_rank_list(const std::string& s) {
  std::vector<lik::Rational> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_rational(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conserved densities, symmetries and recursion operators of polynomial lattice systems"};
  app.require_subcommand(1);
  app.fallthrough();

  lik::RunOptions opts;
  std::vector<std::string> weight_args, param_args;
  std::string rank_arg, max_rank_arg, ranks_arg;
  int levels = 0;
  std::size_t normalize_unknown = 0;

  app.add_flag("--json", opts.json, "Emit the report as JSON");
  app.add_option("--weight", weight_args, "Pin a component weight, e.g. u=1")->allow_extra_args(false)->take_all();
  app.add_option("--param", param_args, "Assign a parameter value, e.g. a=1")->allow_extra_args(false)->take_all();

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("system", opts.system_path, "System file")->required()->check(CLI::ExistingFile);
  };

  auto* weights = app.add_subcommand("weights", "Compute the scaling weights");
  add_system(weights);

  auto* densities = app.add_subcommand("densities", "Compute polynomial conserved densities");
  add_system(densities);
  auto* rank_opt = densities->add_option("--rank", rank_arg, "Single rank");
  auto* max_rank_opt = densities->add_option("--max-rank", max_rank_arg, "All ranks up to this one");
  rank_opt->excludes(max_rank_opt);

  auto* symmetries = app.add_subcommand("symmetries", "Compute generalized symmetries");
  add_system(symmetries);
  auto* ranks_opt = symmetries->add_option("--ranks", ranks_arg, "Comma-separated rank per component");
  auto* sym_levels = symmetries->add_option("--levels", levels, "Number of successive levels from rank(F)");
  ranks_opt->excludes(sym_levels);
  symmetries->add_option("--gap", opts.gap, "Rank increment between levels")->capture_default_str();
  symmetries->add_option("--normalize-unknown", normalize_unknown, "1-based unknown scaled to 1");

  auto* recursion = app.add_subcommand("recursion", "Compute a recursion operator");
  add_system(recursion);
  auto* rec_levels = recursion->add_option("--levels", levels, "Symmetries used (default 3)");
  recursion->add_option("--gap", opts.gap, "Level gap s linking G(k) and G(k+s)")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check results read from files");
  add_system(verify);
  verify->add_option("--density", opts.density_file, "File with 'rho = ...' and optional 'flux = ...'")
      ->check(CLI::ExistingFile);
  verify->add_option("--symmetry", opts.symmetry_file, "File with one 'component = ...' line per component")
      ->check(CLI::ExistingFile);
  verify->add_option("--operator", opts.operator_file, "File with 'R[i,j] = ...' lines")->check(CLI::ExistingFile);

  auto* verify_rec = app.add_subcommand("verify-recursion", "Check a recursion operator read from a file");
  add_system(verify_rec);
  verify_rec->add_option("--operator", opts.operator_file, "File with 'R[i,j] = ...' lines")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
    opts.command = app.get_subcommands().front()->get_name();
    for (const auto& w : weight_args) opts.weights.push_back(lik::parse_assignment(w));
    for (const auto& p : param_args) opts.params.push_back(lik::parse_assignment(p));
    if (!rank_arg.empty()) opts.rank = to_rational(rank_arg);
    if (!max_rank_arg.empty()) opts.max_rank = to_rational(max_rank_arg);
    if (!ranks_arg.empty()) opts.ranks = to_rank_list(ranks_arg);
    if (*sym_levels || *rec_levels) opts.levels = levels;
    if (normalize_unknown) opts.normalize_unknown = normalize_unknown;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : lik::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lik::kExitUsage;
  }

  lik::RunOutput out = lik::run(opts);
  std::cout << out.out;
  std::cerr << out.err;
  return out.exit_code;
}
