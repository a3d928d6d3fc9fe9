#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "opdiag/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) opdiag::fail(opdiag::ErrorKind::Input, "cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization of matrix families L(eps) = L_0 + eps L_1 + ..."};
  app.require_subcommand(1);

  std::string input;
  long order = -1;
  std::size_t max_stages = 0;
  std::string complement = "pivot";
  std::string format = "json";
  long pole = -1;
  std::size_t length = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("family", input, "Family JSON file")->required();
    sub->add_option("--order", order, "Truncation order T of the reported series (default max(2k+4, 12))");
    sub->add_option("--max-stages", max_stages, "Stage budget (default rows + cols + 2)");
    sub->add_option("--complement", complement, "Complement strategy: pivot or given:<file>")->default_str("pivot");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}))->default_str("json");
    sub->add_option("--pole", pole, "Declared pole p (overrides the file's \"pole\")");
  };

  const char* commands[][2] = {
      {"analyze", "Run the recursion to stabilization: k, generic rank, per-stage subspaces"},
      {"diagonalize", "phi, psi, Delta with an exact residual check"},
      {"invert", "Laurent coefficients of the generalized inverse"},
      {"jordan", "Jordan chain generators of a given length"},
      {"smith", "Local Smith factorization S_P, P(eps) and exponents"},
      {"linearize", "Augmented linear pencil and its stabilization index"},
      {"verify", "All identity and oracle cross-checks"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c[0], c[1]);
    add_common(sub);
    if (std::string(c[0]) == "jordan") sub->add_option("--length", length, "Chain length l >= 1")->required();
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    opdiag::FamilySpec spec = opdiag::parse_family(read_file(input));
    if (pole >= 0) {
      // Re-validate the powers against the overriding pole.
      opdiag::Json j = opdiag::family_to_json(spec);
      j["pole"] = pole;
      spec = opdiag::family_from_json(j);
    }
    opdiag::CommandOptions options;
    if (order >= 0) options.order = order;
    options.max_stages = max_stages;
    options.jordan_length = length;
    if (complement.rfind("given:", 0) == 0) {
      options.complements = opdiag::parse_complements(read_file(complement.substr(6)), spec.cols, spec.rows);
      options.given_complements = true;
    } else if (complement != "pivot") {
      opdiag::fail(opdiag::ErrorKind::Input, "--complement must be pivot or given:<file>");
    }

    const opdiag::Json report = opdiag::run_command(command, spec, options);
    if (format == "text")
      std::cout << opdiag::render_text(report);
    else
      std::cout << report.dump(2) << "\n";
    return opdiag::report_exit_code(report);
  } catch (const opdiag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return opdiag::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
