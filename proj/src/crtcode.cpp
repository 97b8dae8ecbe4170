#include "pir/crtcode.hpp"

#include "pir/error.hpp"
#include "pir/poly.hpp"

namespace pir {

namespace {

// lift a single component row to Z_m with zeros in the other components
VecZ lift_component_row(const VecZ& row, size_t comp, const Modulus& modulus) {
  const auto& factors = modulus.factors();
  std::vector<Scalar> residues(factors.size(), 0), moduli(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) moduli[i] = factors[i].pe;
  VecZ out(row.size());
  for (Index j = 0; j < row.size(); ++j) {
    residues[comp] = row[j];
    out[j] = crt_lift(residues, moduli);
  }
  return out;
}

// fold a polynomial (possibly of degree n) into the ring Z_pe[x]/(x^n - 1)
VecZ fold_poly(const VecZ& f, Index n, Scalar pe) {
  VecZ out = VecZ::Zero(n);
  for (Index i = 0; i < f.size(); ++i) out[i % n] = (out[i % n] + f[i]) % pe;
  return out;
}

}  // namespace

CrtCyclicCode crt_code(const Modulus& modulus, std::vector<ChainRingCode> components) {
  const auto& factors = modulus.factors();
  if (components.size() != factors.size())
    fail(Err::ComponentCountMismatch, "one component per prime factor required");
  CrtCyclicCode code;
  code.modulus_ = modulus;
  code.n_ = components.empty() ? 0 : components[0].n();
  for (size_t i = 0; i < components.size(); ++i) {
    if (components[i].p() != factors[i].p || components[i].e() != factors[i].e)
      fail(Err::ComponentMismatch, "component ring does not match factor");
    if (components[i].n() != code.n_) fail(Err::LengthMismatch, "components disagree on n");
  }
  code.components_ = std::move(components);

  // Z_m generator rows: componentwise standard generators, zero elsewhere
  std::vector<VecZ> rows;
  for (size_t i = 0; i < code.components_.size(); ++i) {
    const MatZ& gen = code.components_[i].generator_matrix();
    for (Index r = 0; r < gen.rows(); ++r)
      rows.push_back(lift_component_row(gen.row(r), i, modulus));
  }
  code.gen_zm_.resize(static_cast<Index>(rows.size()), code.n_);
  for (size_t r = 0; r < rows.size(); ++r) code.gen_zm_.row(static_cast<Index>(r)) = rows[r];

  // parity check: CRT-combined componentwise duals, Howell-canonical
  std::vector<VecZ> dual_rows;
  for (size_t i = 0; i < code.components_.size(); ++i) {
    MatZ d = right_annihilator(code.components_[i].generator_matrix(), factors[i].pe);
    for (Index r = 0; r < d.rows(); ++r)
      dual_rows.push_back(lift_component_row(d.row(r), i, modulus));
  }
  HowellForm h(modulus.m(), code.n_);
  for (const VecZ& r : dual_rows) h.add_row(r);
  code.parity_zm_ = h.matrix();
  return code;
}

bool is_nonfree(const CrtCyclicCode& code) {
  const auto& comps = code.components();
  for (const auto& c : comps)
    if (!is_hensel_lift(c)) return true;
  for (size_t i = 1; i < comps.size(); ++i)
    if (module_type(comps[i]).rank() != module_type(comps[0]).rank()) return true;
  return false;
}

MatZ parity_check_zm(const CrtCyclicCode& code) { return code.parity_zm(); }

namespace {

// torsion exponents max(a_i, 1); the sampling flavor keeps e = 1 components
// whole since the torsion constraint cannot be met there
CrtCyclicCode map_to_torsion(const CrtCyclicCode& code, bool sampling) {
  std::vector<ChainRingCode> comps;
  for (const auto& c : code.components()) {
    std::vector<unsigned> exps = factor_exponents(c);
    if (!(sampling && c.e() == 1)) {
      for (unsigned& a : exps)
        if (a != c.e()) a = std::max(a, 1u);
    }
    comps.push_back(chain_code_from_exponents(c.p(), c.e(), c.n(), exps));
  }
  return crt_code(code.modulus(), std::move(comps));
}

}  // namespace

CrtCyclicCode torsion_part(const CrtCyclicCode& code) {
  return map_to_torsion(code, /*sampling=*/false);
}

CrtCyclicCode dual_code(const CrtCyclicCode& code) {
  std::vector<ChainRingCode> comps;
  for (const auto& c : code.components()) comps.push_back(dual_chain_code(c));
  return crt_code(code.modulus(), std::move(comps));
}

CrtCyclicCode intersect(const CrtCyclicCode& a, const CrtCyclicCode& b) {
  if (a.modulus() != b.modulus() || a.n() != b.n())
    fail(Err::AmbientMismatch, "intersection of codes over different ambients");
  std::vector<ChainRingCode> comps;
  for (size_t i = 0; i < a.components().size(); ++i) {
    const auto& ca = a.components()[i];
    const auto& cb = b.components()[i];
    MatZ inter = span_intersection(ca.generator_matrix(), cb.generator_matrix(), ca.pe());
    comps.push_back(chain_code_from_span(ca.p(), ca.e(), ca.n(), inter));
  }
  return crt_code(a.modulus(), std::move(comps));
}

bool is_lcd(const CrtCyclicCode& code) { return intersect(code, dual_code(code)).is_zero(); }

bool contains(const CrtCyclicCode& code, const VecZ& word) {
  for (const auto& c : code.components()) {
    const Scalar pe = c.pe();
    if (!c.howell().contains(word.unaryExpr([pe](Scalar x) { return x % pe; }))) return false;
  }
  return true;
}

bool is_subset(const CrtCyclicCode& a, const CrtCyclicCode& b) {
  for (Index r = 0; r < a.generator_zm().rows(); ++r)
    if (!contains(b, a.generator_zm().row(r))) return false;
  return true;
}

RingElem principal_generator(const CrtCyclicCode& code) {
  std::vector<RingElem> parts;
  for (const auto& c : code.components()) {
    VecZ g = VecZ::Zero(1);
    Scalar pj = 1;
    for (const VecZ& f : c.tower()) {
      g = poly::add(g, poly::scale(f, pj, c.pe()), c.pe());
      pj *= c.p();
    }
    parts.push_back({fold_poly(g, c.n(), c.pe()), c.pe()});
  }
  return crt_combine(parts, code.modulus());
}

RingElem sample_codeword(const CrtCyclicCode& code, Rng& rng) {
  const Scalar m = code.modulus().m();
  RingElem out = ring_zero(code.n(), m);
  const MatZ& gen = code.generator_zm();
  for (Index r = 0; r < gen.rows(); ++r) {
    const Scalar c = rng.uniform(m);
    if (c == 0) continue;
    for (Index j = 0; j < code.n(); ++j)
      out.coeffs[j] = (out.coeffs[j] + c * gen(r, j)) % m;
  }
  return out;
}

CrtCyclicCode sampling_torsion_domain(const CrtCyclicCode& code) {
  return map_to_torsion(code, /*sampling=*/true);
}

RingElem sample_torsion(const CrtCyclicCode& code, Rng& rng) {
  return sample_codeword(sampling_torsion_domain(code), rng);
}

CrtCyclicCode u_sample_domain(const CrtCyclicCode& constituent_s, const CrtCyclicCode& inner) {
  return sampling_torsion_domain(intersect(constituent_s, dual_code(inner)));
}

RingElem sample_u(const CrtCyclicCode& constituent_s, const CrtCyclicCode& inner, Rng& rng) {
  return sample_u_from_domain(u_sample_domain(constituent_s, inner), inner, rng);
}

RingElem sample_u_from_domain(const CrtCyclicCode& domain, const CrtCyclicCode& inner, Rng& rng) {
  const MatZ& h = inner.parity_zm();
  const MatZ ht = h.transpose();
  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    RingElem u = sample_codeword(domain, rng);
    if (u.is_zero() || contains(inner, u.coeffs)) continue;
    MatZ row(1, u.n());
    row.row(0) = u.coeffs;
    MatZ syn = matmul_mod(row, ht, inner.modulus().m());
    bool ok = true;
    for (const Factor& f : inner.modulus().factors()) {
      bool nonzero = false, annihilated = true;
      for (Index j = 0; j < syn.cols(); ++j) {
        const Scalar v = syn(0, j) % f.pe;
        if (v != 0) nonzero = true;
        if (v * f.p % f.pe != 0) annihilated = false;
      }
      if (!nonzero || !annihilated) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  fail(Err::EmptySampleSet, "no valid u sample after bounded attempts");
}

}  // namespace pir
