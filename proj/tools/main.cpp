#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_support.hpp"

using superperiods::cli::JobConfig;

namespace {

void add_common(CLI::App* sub, JobConfig& cfg, std::string& output) {
  sub->add_option("--m", cfg.m, "exponent of y")->required();
  sub->add_option("--poly", cfg.poly, "f(x), e.g. \"x^5 - 3/2x + (1,2)\"");
  sub->add_option("--roots", cfg.roots, "roots of f, e.g. \"0, 1, -1, 2i\"");
  sub->add_option("--digits", cfg.digits, "target decimal digits")->check(CLI::PositiveNumber);
  sub->add_option("--bits", cfg.bits, "target bits (overrides --digits)")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", cfg.lambda, "double-exponential parameter, <= pi/2");
  sub->add_option("--tree", cfg.tree, "spanning tree strategy")->check(CLI::IsMember({"capacity", "euclidean"}));
  sub->add_option("--scheme", cfg.scheme, "quadrature scheme")->check(CLI::IsMember({"auto", "de", "gc"}));
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  sub->add_option("-o,--output", output, "write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Period matrices and Abel-Jacobi maps of superelliptic curves y^m = f(x)"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string output;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {{"periods", "big period matrix (Omega_A, Omega_B)"},
                      {"tau", "small period matrix with symmetry and positivity checks"},
                      {"homology", "spanning tree, intersection matrix and symplectic basis change"},
                      {"abel-jacobi", "Abel-Jacobi image of a degree-zero divisor"},
                      {"integration-report", "per-edge quadrature parameters"}};
  for (auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, cfg, output);
    if (std::string(c.name) == "abel-jacobi")
      sub->add_option("--divisor", cfg.divisor, "e.g. \"1*P2 -1*P1\", \"2*(0,1) -2*inf<1>\"")->required();
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  std::ostringstream buf;
  int code = superperiods::cli::run_job(cfg, buf, std::cerr);
  if (code != 0) return code;
  if (output.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(output);
    if (!f) {
      std::cerr << "error: cannot write " << output << "\n";
      return 3;
    }
    f << buf.str();
  }
  return 0;
}
