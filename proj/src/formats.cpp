#include "pir/formats.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pir/error.hpp"
#include "pir/poly.hpp"

namespace pir {

namespace {

void put_poly(std::ostringstream& out, const VecZ& f) {
  for (Index i = 0; i < f.size(); ++i) {
    if (i) out << ' ';
    out << f[i];
  }
  if (f.size() == 0) out << 0;
}

void put_tower_line(std::ostringstream& out, const std::string& key,
                    const std::vector<VecZ>& tower) {
  out << key << " =";
  for (size_t j = 0; j < tower.size(); ++j) {
    out << (j ? " ; " : " ");
    put_poly(out, tower[j]);
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(Err::ParseError, "bad integer: '" + s + "'");
  return v;
}

VecZ parse_poly(const std::string& s) {
  std::vector<Scalar> coeffs;
  for (const std::string& tok : split(strip(s), ' '))
    if (!tok.empty()) coeffs.push_back(parse_u64(tok));
  if (coeffs.empty()) fail(Err::ParseError, "empty coefficient list");
  VecZ f(static_cast<Index>(coeffs.size()));
  for (size_t i = 0; i < coeffs.size(); ++i) f[static_cast<Index>(i)] = coeffs[i];
  return f;
}

std::vector<VecZ> parse_tower(const std::string& s) {
  std::vector<VecZ> tower;
  for (const std::string& part : split(s, ';')) tower.push_back(parse_poly(part));
  return tower;
}

struct Line {
  std::string key, value;
};

// section name -> ordered key/value lines
using Sections = std::vector<std::pair<std::string, std::vector<Line>>>;

Sections parse_sections(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(Err::ParseError, "unterminated section header");
      out.emplace_back(line.substr(1, line.size() - 2), std::vector<Line>{});
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail(Err::ParseError, "expected key = value: '" + line + "'");
    if (out.empty()) fail(Err::ParseError, "key outside any section");
    out.back().second.push_back({strip(line.substr(0, eq)), strip(line.substr(eq + 1))});
  }
  return out;
}

const std::vector<Line>* find_section(const Sections& s, const std::string& name) {
  for (const auto& [n, lines] : s)
    if (n == name) return &lines;
  return nullptr;
}

const std::vector<Line>& need_section(const Sections& s, const std::string& name) {
  const auto* sec = find_section(s, name);
  if (!sec) fail(Err::ParseError, "missing section [" + name + "]");
  return *sec;
}

std::string need_key(const std::vector<Line>& sec, const std::string& key) {
  for (const Line& l : sec)
    if (l.key == key) return l.value;
  fail(Err::ParseError, "missing key '" + key + "'");
}

}  // namespace

std::string serialize_params(const ParamsDoc& doc) {
  std::ostringstream out;
  out << "[modulus]\nfactors =";
  for (auto [p, e] : doc.factors) out << ' ' << p << '^' << e;
  out << "\n\n[ring]\nn = " << doc.n << "\n\n[inner]\n";
  for (size_t i = 0; i < doc.factors.size(); ++i)
    put_tower_line(out, "prime " + std::to_string(doc.factors[i].first), doc.inner_towers[i]);
  out << "\n[outer]\ns = " << doc.s << '\n';
  for (Index i = 0; i < doc.mixing.rows(); ++i) {
    out << "m_row =";
    for (Index j = 0; j < doc.mixing.cols(); ++j) out << ' ' << doc.mixing(i, j);
    out << '\n';
  }
  for (size_t c = 0; c < doc.constituent_towers.size(); ++c)
    for (size_t i = 0; i < doc.factors.size(); ++i)
      put_tower_line(out,
                     "constituent " + std::to_string(c + 1) + " prime " +
                         std::to_string(doc.factors[i].first),
                     doc.constituent_towers[c][i]);
  out << "\n[shape]\nt = " << doc.t << "\nL = " << doc.L << "\nr = " << doc.r << '\n';
  if (doc.allow_noncompliant) out << "\n[flags]\nallow-noncompliant = true\n";
  return out.str();
}

ParamsDoc parse_params(const std::string& text) {
  ParamsDoc doc;
  Sections secs = parse_sections(text);

  for (const std::string& tok : split(need_key(need_section(secs, "modulus"), "factors"), ' ')) {
    if (tok.empty()) continue;
    auto parts = split(tok, '^');
    if (parts.size() != 2) fail(Err::ParseError, "factor must look like p^e");
    doc.factors.emplace_back(parse_u64(parts[0]), static_cast<unsigned>(parse_u64(parts[1])));
  }
  doc.n = static_cast<Index>(parse_u64(need_key(need_section(secs, "ring"), "n")));

  const auto& inner = need_section(secs, "inner");
  for (auto [p, e] : doc.factors)
    doc.inner_towers.push_back(parse_tower(need_key(inner, "prime " + std::to_string(p))));

  const auto& outer = need_section(secs, "outer");
  doc.s = static_cast<Index>(parse_u64(need_key(outer, "s")));
  std::vector<VecZ> mrows;
  for (const Line& l : outer)
    if (l.key == "m_row") mrows.push_back(parse_poly(l.value));
  if (static_cast<Index>(mrows.size()) != doc.s)
    fail(Err::ParseError, "expected s m_row lines");
  doc.mixing.resize(doc.s, doc.s);
  for (Index i = 0; i < doc.s; ++i) {
    if (mrows[i].size() != doc.s) fail(Err::ParseError, "m_row width mismatch");
    doc.mixing.row(i) = mrows[i];
  }
  for (Index c = 1; c <= doc.s; ++c) {
    std::vector<std::vector<VecZ>> towers;
    for (auto [p, e] : doc.factors)
      towers.push_back(parse_tower(need_key(
          outer, "constituent " + std::to_string(c) + " prime " + std::to_string(p))));
    doc.constituent_towers.push_back(std::move(towers));
  }

  const auto& shape = need_section(secs, "shape");
  doc.t = static_cast<Index>(parse_u64(need_key(shape, "t")));
  doc.L = static_cast<Index>(parse_u64(need_key(shape, "L")));
  doc.r = static_cast<Index>(parse_u64(need_key(shape, "r")));

  if (const auto* flags = find_section(secs, "flags"))
    for (const Line& l : *flags)
      if (l.key == "allow-noncompliant" && l.value == "true") doc.allow_noncompliant = true;
  return doc;
}

ParamsDoc doc_from_params(const PirParams& params) {
  ParamsDoc doc;
  for (const Factor& f : params.modulus.factors()) doc.factors.emplace_back(f.p, f.e);
  doc.n = params.n;
  for (const auto& comp : params.inner.components()) doc.inner_towers.push_back(comp.tower());
  doc.s = params.s;
  doc.mixing = params.outer.mixing();
  for (const auto& c : params.outer.constituents()) {
    std::vector<std::vector<VecZ>> towers;
    for (const auto& comp : c.components()) towers.push_back(comp.tower());
    doc.constituent_towers.push_back(std::move(towers));
  }
  doc.t = params.t;
  doc.L = params.L;
  doc.r = params.r;
  doc.allow_noncompliant = !params.compliant;
  return doc;
}

PirParams params_from_doc(const ParamsDoc& doc, Rng& rng) {
  SetupConfig cfg;
  cfg.modulus = validate_modulus(doc.factors);
  cfg.n = doc.n;
  cfg.s = doc.s;
  cfg.r = doc.r;
  cfg.t = doc.t;
  cfg.L = doc.L;
  cfg.inner = CodeSpec{doc.inner_towers};
  std::vector<CodeSpec> cs;
  for (const auto& towers : doc.constituent_towers) cs.push_back(CodeSpec{towers});
  cfg.constituents = std::move(cs);
  cfg.mixing = doc.mixing;
  cfg.allow_noncompliant = doc.allow_noncompliant;
  return setup(cfg, rng);
}

// ---- binary matrix file ----

namespace {

constexpr char kMatrixMagic[8] = {'P', 'I', 'R', 'M', 'A', 'T', '0', '1'};

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& b, size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[at + i];
  return v;
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& b, size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[at + i];
  return v;
}

}  // namespace

std::vector<std::uint8_t> serialize_matrix(const MatrixFileData& m) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMatrixMagic, kMatrixMagic + 8);
  put_u64(out, static_cast<std::uint64_t>(m.values.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.values.cols()));
  put_u64(out, m.modulus);
  for (Index i = 0; i < m.values.rows(); ++i)
    for (Index j = 0; j < m.values.cols(); ++j)
      put_u32(out, static_cast<std::uint32_t>(m.values(i, j)));
  return out;
}

MatrixFileData parse_matrix(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 32) fail(Err::ParseError, "matrix file too short");
  if (!std::equal(kMatrixMagic, kMatrixMagic + 8, bytes.begin()))
    fail(Err::ParseError, "bad matrix magic");
  const std::uint64_t rows = get_u64(bytes, 8);
  const std::uint64_t cols = get_u64(bytes, 16);
  const std::uint64_t modulus = get_u64(bytes, 24);
  if (modulus < 2 || modulus >= (1ull << 32)) fail(Err::ParseError, "modulus out of range");
  if (rows > (1ull << 24) || cols > (1ull << 24) ||
      (rows != 0 && cols > (1ull << 40) / rows))
    fail(Err::ParseError, "matrix dimensions out of range");
  if (bytes.size() != 32 + 4 * rows * cols) fail(Err::ParseError, "matrix payload size mismatch");
  MatrixFileData out;
  out.modulus = modulus;
  out.values.resize(static_cast<Index>(rows), static_cast<Index>(cols));
  size_t at = 32;
  for (Index i = 0; i < out.values.rows(); ++i)
    for (Index j = 0; j < out.values.cols(); ++j, at += 4) {
      const std::uint32_t v = get_u32(bytes, at);
      if (v >= modulus) fail(Err::ParseError, "matrix value not below modulus");
      out.values(i, j) = v;
    }
  return out;
}

// ---- secrets file ----

namespace {

void put_ring_matrix(std::ostringstream& out, const std::string& name, const RingMatrix& m) {
  out << '[' << name << "]\n";
  for (Index i = 0; i < m.rows(); ++i) {
    out << "row =";
    for (Index j = 0; j < m.cols(); ++j) {
      out << (j ? " ; " : " ");
      put_poly(out, m.at(i, j).coeffs);
    }
    out << '\n';
  }
}

RingMatrix parse_ring_matrix(const std::vector<Line>& sec, Index rows, Index cols, Index n,
                             Scalar m) {
  RingMatrix out(rows, cols, n, m);
  Index i = 0;
  for (const Line& l : sec) {
    if (l.key != "row") continue;
    if (i >= rows) fail(Err::ParseError, "too many rows in ring matrix");
    auto parts = split(l.value, ';');
    if (static_cast<Index>(parts.size()) != cols)
      fail(Err::ParseError, "ring matrix row width mismatch");
    for (Index j = 0; j < cols; ++j) {
      VecZ f = parse_poly(parts[j]);
      if (f.size() != n) fail(Err::ParseError, "ring element must have exactly n coefficients");
      for (Index k = 0; k < n; ++k)
        if (f[k] >= m) fail(Err::ParseError, "coefficient not below modulus");
      out.at(i, j) = {f, m};
    }
    ++i;
  }
  if (i != rows) fail(Err::ParseError, "missing rows in ring matrix");
  return out;
}

}  // namespace

std::string serialize_secrets(const SecretsDoc& doc) {
  std::ostringstream out;
  out << "[query]\nd = " << doc.d << "\ngamma = " << doc.gamma << "\nn = " << doc.n
      << "\nm = " << doc.m << "\nt = " << doc.t << "\nr = " << doc.r << "\ns = " << doc.s
      << "\n\n";
  put_ring_matrix(out, "a", doc.a);
  out << '\n';
  put_ring_matrix(out, "e", doc.e);
  out << '\n';
  put_ring_matrix(out, "u", doc.u);
  return out.str();
}

SecretsDoc parse_secrets(const std::string& text) {
  Sections secs = parse_sections(text);
  const auto& q = need_section(secs, "query");
  SecretsDoc doc;
  doc.d = static_cast<Index>(parse_u64(need_key(q, "d")));
  doc.gamma = static_cast<Index>(parse_u64(need_key(q, "gamma")));
  doc.n = static_cast<Index>(parse_u64(need_key(q, "n")));
  doc.m = parse_u64(need_key(q, "m"));
  doc.t = static_cast<Index>(parse_u64(need_key(q, "t")));
  doc.r = static_cast<Index>(parse_u64(need_key(q, "r")));
  doc.s = static_cast<Index>(parse_u64(need_key(q, "s")));
  const Index rows = doc.t * doc.r;
  doc.a = parse_ring_matrix(need_section(secs, "a"), rows, doc.s, doc.n, doc.m);
  doc.e = parse_ring_matrix(need_section(secs, "e"), rows, doc.s, doc.n, doc.m);
  doc.u = parse_ring_matrix(need_section(secs, "u"), rows, doc.s, doc.n, doc.m);
  return doc;
}

SecretsDoc doc_from_secrets(const PirParams& params, const QuerySecrets& sec) {
  SecretsDoc doc;
  doc.d = sec.d;
  doc.gamma = sec.gamma;
  doc.n = params.n;
  doc.m = params.modulus.m();
  doc.t = params.t;
  doc.r = params.r;
  doc.s = params.s;
  doc.a = sec.a;
  doc.e = sec.e;
  doc.u = sec.u;
  return doc;
}

QuerySecrets secrets_from_doc(const SecretsDoc& doc) {
  QuerySecrets sec;
  sec.d = doc.d;
  sec.gamma = doc.gamma;
  sec.a = doc.a;
  sec.e = doc.e;
  sec.u = doc.u;
  return sec;
}

// ---- file helpers ----

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot open for writing: " + path);
  out << text;
  if (!out) fail(Err::IoError, "write failed: " + path);
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Err::IoError, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

}  // namespace pir

namespace pir {

bool ParamsDoc::towers_eq(const std::vector<std::vector<VecZ>>& a,
                          const std::vector<std::vector<VecZ>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!poly::eq(a[i][j], b[i][j])) return false;
  }
  return true;
}

bool ParamsDoc::constituents_eq(const std::vector<std::vector<std::vector<VecZ>>>& a,
                                const std::vector<std::vector<std::vector<VecZ>>>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!towers_eq(a[i], b[i])) return false;
  return true;
}

}  // namespace pir
