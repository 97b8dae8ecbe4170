#pragma once

#include <optional>
#include <vector>

#include "pir/outercode.hpp"

namespace pir {

/// Protocol parameters. The modulus and database shape (t, L, r) are public;
/// n, the inner code, and the outer code are the user's secrets.
struct PirParams {
  Modulus modulus;
  Index t = 0, L = 0, r = 0;
  Index n = 0, s = 0;
  CrtCyclicCode inner;
  OuterCode outer;
  bool compliant = false;
};

/// Per-prime towers for one cyclic code (factor order of the Modulus).
struct CodeSpec {
  std::vector<std::vector<VecZ>> towers;
};

struct SetupConfig {
  Modulus modulus;
  Index n = 0;
  Index s = 0, r = 0, t = 0, L = 0;
  std::optional<CodeSpec> inner;                    // absent: randomized search
  std::optional<std::vector<CodeSpec>> constituents;
  std::optional<MatZ> mixing;                       // default: random upper triangular, unit diagonal
  bool allow_noncompliant = false;
  int attempts = 300;
};

/// Builds (or searches for) a protocol-compliant instance. Throws
/// IncompatibleDimensions (r > s, empty shapes) and NoCompliantInstance when
/// the attempt budget runs out or an explicit spec fails validation.
PirParams setup(const SetupConfig& cfg, Rng& rng);

/// Database of t files stored concatenated, entries in Z_{m'}.
struct Database {
  MatZ entries;  // L x (t*r)
  Index t = 0;
  Scalar m_prime = 0;

  Index rows() const { return entries.rows(); }
  Index file_cols() const { return t == 0 ? 0 : entries.cols() / t; }
};

Database make_database(MatZ entries, Index t, Scalar m_prime);
MatZ file_slice(const Database& db, Index d);  // 1-based, L x r

struct QueryMatrix {
  MatZ rows;  // (t*r) x (2*n*s)
  Scalar modulus = 0;
};

struct ResponseMatrix {
  MatZ rows;  // L x (2*n*s)
  Scalar modulus = 0;
};

struct QuerySecrets {
  Index d = 0;      // 1-based desired file
  Index gamma = 1;  // 1-based column position in {1..s-r+1}
  RingMatrix a, e, u;  // (t*r) x s stacked blocks
};

/// Fixed randomness for gen_query (the golden-vector test mode): a and e
/// hold t*r*s elements in file-major, row-major, column order; u holds the r
/// payload entries u_{1+lambda, gamma+lambda}.
struct QueryStreams {
  std::vector<RingElem> a, e, u;
  Index gamma = 1;
};

std::pair<QueryMatrix, QuerySecrets> gen_query(const PirParams& params, Index d, Rng& rng);
std::pair<QueryMatrix, QuerySecrets> gen_query_with_streams(const PirParams& params, Index d,
                                                            const QueryStreams& streams);

/// R = DB * Q over Z_m. The server's entire computation.
ResponseMatrix server_respond(const Database& db, const QueryMatrix& q);

/// Recovers the desired file (L x r over Z_{m'}) from the response.
MatZ recover(const PirParams& params, const QuerySecrets& secrets, const ResponseMatrix& resp);

}  // namespace pir
