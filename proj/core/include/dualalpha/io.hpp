#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "dualalpha/alpha_builder.hpp"
#include "dualalpha/cech_graph.hpp"
#include "dualalpha/complex.hpp"

namespace dualalpha {

/// Malformed input; the message carries the source name and line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV points: one point per line, comma-separated decimals, constant
/// arity. Blank lines and lines starting with '#' are skipped. Optional
/// weights: one value per line, one per point; default p = 0. The result
/// has a1 = 0.
WeightedPoints read_points(std::istream& points, std::istream* weights = nullptr,
                           const std::string& points_name = "points",
                           const std::string& weights_name = "weights");
WeightedPoints parse_points(const std::filesystem::path& points,
                            const std::optional<std::filesystem::path>& weights = std::nullopt);

/// Inputs of one CLI run. Exactly one of `alpha` and `radius` is set, and
/// `radius` is only accepted for unweighted points.
struct RunConfig {
  std::filesystem::path points_path;
  std::optional<std::filesystem::path> weights_path;
  std::optional<double> alpha;
  std::optional<double> radius;
  int max_dim = 2;
  std::uint32_t prime = 2;
  Tolerances tol{};
  std::optional<std::filesystem::path> out_path;
  unsigned threads = 1;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  /// The cutoff in power units: alpha, or radius squared.
  double cutoff() const;
  BuildParams build_params() const;
  /// parse_points on the configured files, with a1 = cutoff().
  WeightedPoints load_points() const;
};

/// Contents of a `.alpha` file.
struct ComplexFile {
  std::size_t ambient_dim = 0;
  double a1 = 0.0;
  FilteredComplex complex;
  std::optional<WitnessMap> witness;
};

/// Shortest decimal with 17 significant digits; -0 prints as 0.
std::string format_real(double value);

/// Header `#alpha v1`, `#ambient m`, `#a1 <a1>`, then one line
/// `k w v0 .. vk [y1 .. ym]` per simplex, sorted by (k, w, vertices).
void write_complex(const ComplexFile& file, std::ostream& out);
void write_complex(const ComplexFile& file, const std::filesystem::path& path);

ComplexFile read_complex(std::istream& in, const std::string& name = "complex");
ComplexFile read_complex(const std::filesystem::path& path);

/// OFF soup of the witness-embedded barycentric subdivision: every
/// simplex becomes a point, flags of length 2 become 2-vertex faces and
/// flags of length 3 become triangles. Requires ambient dimension <= 3.
void write_off(const BarycentricEmbedding& embedding, std::ostream& out);

}  // namespace dualalpha
