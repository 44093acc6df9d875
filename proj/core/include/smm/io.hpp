#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smm/flag.hpp"
#include "smm/grassmann.hpp"
#include "smm/linalg.hpp"
#include "smm/metrics.hpp"
#include "smm/product.hpp"
#include "smm/stiefel.hpp"

namespace smm {

enum class ModelKind {
  Grassmann,
  Flag,
  Stiefel,
  Spd,
  Product,
  // extension kinds used by the CLI surface
  Sym,            // one symmetric matrix (Cartan tangent)
  MTangentFlag,   // one skew matrix with zero diagonal blocks
  MTangentStiefel,// B1 then B2
  Frames,         // extraction output: orthonormal basis blocks / QR factors
};

std::string kind_name(ModelKind kind);
ModelKind kind_from_name(const std::string& name);

/// In-memory image of one `smm 1` file.
struct ModelFile {
  ModelKind kind = ModelKind::Spd;
  int n = 0;
  std::vector<int> k;             // single k or signature; empty if absent
  std::vector<double> params;     // empty when the kind has no params line
  std::optional<std::uint64_t> seed;
  std::string prng;               // empty when absent
  std::vector<Matrix> matrices;
};

ModelFile read_model(std::istream& in);
ModelFile read_model(const std::string& path);
void write_model(const ModelFile& file, std::ostream& out);
void write_model(const ModelFile& file, const std::string& path);

/// Shortest decimal representation that round-trips binary64.
std::string format_double(double value);

// typed views; each validates shape agreement with the header
GrassmannPoint to_grassmann(const ModelFile& file);
IsospectralPoint to_flag(const ModelFile& file);
CholeskyStiefelPoint to_stiefel(const ModelFile& file);
SpdMatrix to_spd(const ModelFile& file);
GrassmannProductPoint to_product(const ModelFile& file);
FlagMTangent to_flag_tangent(const ModelFile& file);
StiefelMTangent to_stiefel_tangent(const ModelFile& file);

ModelFile from_grassmann(const GrassmannPoint& point);
ModelFile from_flag(const IsospectralPoint& point);
ModelFile from_stiefel(const CholeskyStiefelPoint& point);
ModelFile from_spd(const SpdMatrix& a);
ModelFile from_product(const GrassmannProductPoint& point);

}  // namespace smm
