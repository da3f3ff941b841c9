// Writes every built-in registry entry as a standalone manifest file, so the
// file-based CLI path and the programmatic path run on identical data.
// Usage: emit-manifests <output-directory>

#include <filesystem>
#include <iostream>

#include "kmnv/manifold.hpp"
#include "kmnv/registry.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: emit-manifests <output-directory>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& entry : kmnv::registry::all()) {
    const auto path = dir / (entry.name + ".json");
    kmnv::save_manifest(entry.spec, path.string());
    std::cout << path.string() << "\n";
  }
  return 0;
}
