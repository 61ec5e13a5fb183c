// Writes generated matchers for the test corpus into a directory.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <filesystem>

#include "support/corpus.hpp"

int main(int argc, char **argv) {
  if (argc != 3) {
    std::cerr << "usage: corpus_gen OUT_DIR BUNDLES\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto &[file, text] : twtest::corpus_sources(std::strtoul(argv[2], nullptr, 10))) {
    const auto path = dir / file;
    {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream old;
      old << in.rdbuf();
      if (in && old.str() == text)
        continue;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
      std::cerr << "corpus_gen: cannot write " << path << "\n";
      return 2;
    }
  }
  return 0;
}
