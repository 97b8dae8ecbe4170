#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pir/pir.hpp"

namespace pir {

/// Text model of a parameter file: sections [modulus], [ring], [inner],
/// [outer], [shape] and the optional [flags]. Serialization is canonical,
/// so parse(serialize(x)) == x byte for byte.
struct ParamsDoc {
  std::vector<std::pair<Scalar, unsigned>> factors;
  Index n = 0;
  std::vector<std::vector<VecZ>> inner_towers;  // per prime, lowest degree first
  Index s = 0;
  MatZ mixing;
  std::vector<std::vector<std::vector<VecZ>>> constituent_towers;  // per constituent, per prime
  Index t = 0, L = 0, r = 0;
  bool allow_noncompliant = false;

  bool operator==(const ParamsDoc& o) const {
    return factors == o.factors && n == o.n && towers_eq(inner_towers, o.inner_towers) &&
           s == o.s && same_matrix(mixing, o.mixing) &&
           constituents_eq(constituent_towers, o.constituent_towers) && t == o.t && L == o.L &&
           r == o.r && allow_noncompliant == o.allow_noncompliant;
  }

  static bool towers_eq(const std::vector<std::vector<VecZ>>& a,
                        const std::vector<std::vector<VecZ>>& b);
  static bool constituents_eq(const std::vector<std::vector<std::vector<VecZ>>>& a,
                              const std::vector<std::vector<std::vector<VecZ>>>& b);
};

std::string serialize_params(const ParamsDoc& doc);
ParamsDoc parse_params(const std::string& text);

ParamsDoc doc_from_params(const PirParams& params);
PirParams params_from_doc(const ParamsDoc& doc, Rng& rng);

/// Binary matrix file: magic "PIRMAT01", LE u64 rows/cols/modulus, then
/// rows*cols LE u32 values in row-major order, every value below the
/// modulus.
struct MatrixFileData {
  MatZ values;
  Scalar modulus = 0;
  bool operator==(const MatrixFileData& o) const {
    return modulus == o.modulus && same_matrix(values, o.values);
  }
};

std::vector<std::uint8_t> serialize_matrix(const MatrixFileData& m);
MatrixFileData parse_matrix(const std::vector<std::uint8_t>& bytes);

/// Per-query secrets: d, gamma and the a/e/u ring matrices, plus enough of
/// the ambient (n, m, t, r, s) to validate against the params at recovery.
struct SecretsDoc {
  Index d = 0, gamma = 1;
  Index n = 0, t = 0, r = 0, s = 0;
  Scalar m = 0;
  RingMatrix a, e, u;
  bool operator==(const SecretsDoc&) const = default;
};

std::string serialize_secrets(const SecretsDoc& doc);
SecretsDoc parse_secrets(const std::string& text);

SecretsDoc doc_from_secrets(const PirParams& params, const QuerySecrets& sec);
QuerySecrets secrets_from_doc(const SecretsDoc& doc);

// small file helpers (throw IoError)
void write_file(const std::string& path, const std::string& text);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::string read_text_file(const std::string& path);
std::vector<std::uint8_t> read_binary_file(const std::string& path);

}  // namespace pir
