#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gammahc/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact Hochschild and cyclic homology of finitely presented commutative algebras"};
  std::string input, cmd, json_out;
  int nmax = -1;
  std::uint64_t seed = 1;
  app.add_option("--input", input, "job file (ring/vars/rel/nmax lines); '-' reads stdin")->required();
  app.add_option("--cmd", cmd, "hh, hc, layers, oracle, compare, 'witness24 p=<int>' or selftest");
  app.add_option("--nmax", nmax, "top degree, overrides the job file")->check(CLI::NonNegativeNumber);
  app.add_option("--json", json_out, "write the JSON report here instead of stdout");
  app.add_option("--seed", seed, "seed for the randomized selftest checks");
  CLI11_PARSE(app, argc, argv);

  std::stringstream text;
  if (input == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream f(input);
    if (!f) {
      std::cerr << "cannot read " << input << "\n";
      return 2;
    }
    text << f.rdbuf();
  }

  const auto r = gammahc::run_text(text.str(), cmd, nmax, seed);
  if (json_out.empty()) {
    std::cout << r.json;
  } else {
    std::ofstream(json_out) << r.json;
  }
  return r.exit_code;
}
