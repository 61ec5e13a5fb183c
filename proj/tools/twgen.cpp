// Build-time generator: writes matcher source for a workload's patterns or
// for a signature/patterns file pair.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "termweave/bench.hpp"
#include "termweave/codegen.hpp"

using namespace termweave;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"twgen"};
  std::string builtin, sig_file, patterns_file, name, out;
  app.add_option("--builtin", builtin, "prop or overlap");
  app.add_option("--signatures", sig_file);
  app.add_option("--patterns", patterns_file);
  app.add_option("--name", name);
  app.add_option("--out", out)->required();
  CLI11_PARSE(app, argc, argv);
  try {
    std::unique_ptr<DiscriminationNet> net;
    if (!builtin.empty()) {
      net = std::make_unique<DiscriminationNet>(bench::workload_signature(builtin));
      for (const auto &p : bench::workload_patterns(builtin))
        net->add(p);
      if (name.empty())
        name = builtin;
    } else {
      auto sig = sig_file.empty() ? SignatureTable() : SignatureTable::load(sig_file);
      net = std::make_unique<DiscriminationNet>(sig);
      std::istringstream lines(slurp(patterns_file));
      for (std::string line; std::getline(lines, line);)
        if (line.find_first_not_of(" \t\r") != std::string::npos)
          net->add(Pattern::parse(line, net->signature()));
    }
    codegen::write_spec(codegen::generate_matcher_source(*net, name), out);
  } catch (const std::exception &e) {
    std::cerr << "twgen: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
