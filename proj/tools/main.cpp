#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sagbisat/error.hpp"
#include "sagbisat/problem.hpp"

namespace {

std::atomic<bool> g_cancel{false};

void on_signal(int) { g_cancel = true; }

bool is_command(const std::string& s) {
  return std::find(sagbisat::kCommands.begin(), sagbisat::kCommands.end(), s) != sagbisat::kCommands.end();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturations and SAGBI bases of subalgebras of polynomial rings"};
  app.footer(
      "usage: sagbisat [COMMAND] [FILE] [options]\n"
      "COMMAND overrides the run statement of FILE; FILE may be '-' for stdin.\n"
      "commands: saturate satsagbi trunc-satsagbi mingens uinv gb nf rel-mod toric member\n"
      "exit codes: 0 done, 2 iteration limit, 1 error");
  std::vector<std::string> positional;
  sagbisat::RunFlags flags;
  std::optional<long> degree;
  std::optional<int> n;
  std::string g, f;
  app.add_option("positional", positional, "[COMMAND] [FILE]")->expected(0, 2);
  app.add_option("--max-iterations", flags.max_iterations, "iteration cap")->default_val(20);
  app.add_flag("--json", flags.json, "structured output");
  app.add_flag("--verbose", flags.verbose, "progress lines on stderr");
  app.add_flag("--stats", flags.stats, "degrees, term counts and leading terms");
  app.add_option("--degree", degree, "truncation degree (trunc-satsagbi, uinv)");
  app.add_option("--n", n, "number of coefficients minus one (uinv)");
  app.add_option("--g", g, "saturating element (saturate, rel-mod)");
  app.add_option("--f", f, "query polynomial (nf, member)");
  CLI11_PARSE(app, argc, argv);

  std::string file;
  if (!positional.empty() && is_command(positional.front())) {
    flags.command = positional.front();
    if (positional.size() > 1) file = positional[1];
  } else if (positional.size() == 1) {
    file = positional.front();
  } else {
    std::cerr << app.help();
    return 1;
  }
  if (degree) flags.args.emplace_back("degree", std::to_string(*degree));
  if (n) flags.args.emplace_back("n", std::to_string(*n));
  if (!g.empty()) flags.args.emplace_back("g", g);
  if (!f.empty()) flags.args.emplace_back("f", f);
  flags.progress = &std::cerr;
  flags.cancel = &g_cancel;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  std::string text;
  if (file.empty()) {
    if (flags.command != "uinv") {
      std::cerr << "error: a problem file is required\n";
      return 1;
    }
    text = "run uinv;";
  } else {
    std::stringstream ss;
    if (file == "-") {
      ss << std::cin.rdbuf();
    } else {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "error: cannot open " << file << "\n";
        return 1;
      }
      ss << in.rdbuf();
    }
    text = ss.str();
  }

  sagbisat::ProblemFile problem;
  try {
    problem = sagbisat::parse_problem(text);
  } catch (const sagbisat::ParseError& e) {
    std::cerr << (file.empty() ? "<args>" : file) << ": " << e.what() << "\n";
    return 1;
  } catch (const sagbisat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  sagbisat::RunOutput out = sagbisat::run_command(problem, flags);
  (out.exit_code == 1 && !flags.json ? std::cerr : std::cout) << out.text;
  return out.exit_code;
}
