// Writes the bundled instances as JSON problem files into a directory.
#include "infoprice/corpus.hpp"
#include "infoprice/problem_file.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <output-dir>\n";
    return 3;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& inst : infoprice::corpus::bundled()) {
    const auto path = dir / (inst.name + ".json");
    std::ofstream out(path);
    out << infoprice::emitProblem(inst.file);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 5;
    }
  }
  return 0;
}
