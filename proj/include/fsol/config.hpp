#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsol/solop.hpp"

namespace fsol {

struct GridBlock {
  double extent = 5.0;
  int resolution = 101;
  std::vector<int> ks{1, 2, 4, 8};
  VecN axis;  // defaults to e1
};

struct SurfaceBlock {
  CircleSurface surface;
  int num_samples = 32;
  double mollifier_width = 0.1;
};

struct OutputBlock {
  std::string path;
  std::string format = "csv";
};

// Parsed CLI configuration. The symbol block is mandatory; everything else
// is optional with defaults.
struct RunConfig {
  std::optional<SymbolSpec> symbol;
  std::vector<TestFunction> testfns;
  SourceTerm source;
  QuadParams quadrature;
  std::optional<GridBlock> grid;
  std::optional<SurfaceBlock> surface;
  OutputBlock output;

  const SymbolSpec& require_symbol() const;
  // First configured test function, defaulting to the unit gaussian.
  TestFunction default_testfn() const;
};

// Parses a JSON config; any malformed input raises Error(InvalidConfig)
// naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// 17-significant-digit decimal formatting used by every human- and
// machine-readable emitter.
std::string format_full(double x);
std::string format_full(cplx z);

}  // namespace fsol
