#include "schur/pcgroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace schur {

namespace {

bool is_small_prime(int p) {
  if (p < 2 || p > 251) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

bool supported_above(const Element& x, int i) {
  for (int k = 0; k <= i; ++k) {
    if (x[k] != 0) return false;
  }
  return true;
}

}  // namespace

std::size_t ElementHash::operator()(const Element& x) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto b : x.e) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

PcGroup::PcGroup(int p, int n, std::vector<Element> powers, std::vector<Element> commutators)
    : p_(p), n_(n), powers_(std::move(powers)), comms_(std::move(commutators)) {
  if (!is_small_prime(p)) throw Error("prime out of range: " + std::to_string(p));
  if (n < 0 || n > kMaxGens) throw Error("generator count out of range: " + std::to_string(n));
  if (powers_.size() != static_cast<std::size_t>(n)) throw Error("expected one power relation per generator");
  if (comms_.size() != static_cast<std::size_t>(n * n)) throw Error("expected n*n commutator slots");
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < kMaxGens; ++k) {
      if (k >= n && powers_[i][k] != 0) throw Error("power relation uses unknown generator");
      if (powers_[i][k] >= p) throw Error("exponent out of range");
    }
    if (!supported_above(powers_[i], i)) {
      throw Error("power relation of g" + std::to_string(i + 1) + " is not in later generators");
    }
    for (int j = 0; j < n; ++j) {
      Element& c = comms_[static_cast<std::size_t>(i * n + j)];
      if (i <= j) {
        c = Element{};
        continue;
      }
      for (int k = 0; k < kMaxGens; ++k) {
        if (k >= n && c[k] != 0) throw Error("commutator relation uses unknown generator");
        if (c[k] >= p) throw Error("exponent out of range");
      }
      if (!supported_above(c, i)) {
        throw Error("commutator [g" + std::to_string(i + 1) + ",g" + std::to_string(j + 1) +
                    "] is not in later generators");
      }
    }
  }
  build_tables();
}

PcGroup PcGroup::with_definitions(std::vector<int> weights, std::vector<Definition> defs) const {
  if (weights.size() != static_cast<std::size_t>(n_) || defs.size() != static_cast<std::size_t>(n_)) {
    throw Error("definitions must cover every generator");
  }
  PcGroup g = *this;
  g.weights_ = std::move(weights);
  g.defs_ = std::move(defs);
  return g;
}

int PcGroup::rank() const {
  return static_cast<int>(std::count(weights_.begin(), weights_.end(), 1));
}

int PcGroup::weight_class() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

bool PcGroup::validate_definitions() const {
  if (n_ == 0) return true;
  if (weights_.size() != static_cast<std::size_t>(n_)) return false;
  for (int k = 0; k < n_; ++k) {
    const Definition& d = defs_[static_cast<std::size_t>(k)];
    const int w = weights_[static_cast<std::size_t>(k)];
    if (k > 0 && w < weights_[static_cast<std::size_t>(k - 1)]) return false;
    switch (d.kind) {
      case Definition::Kind::generator:
        if (w != 1) return false;
        break;
      case Definition::Kind::power:
        if (d.a < 0 || d.a >= k || power_relation(d.a) != generator(k)) return false;
        if (w != weights_[static_cast<std::size_t>(d.a)] + 1) return false;
        break;
      case Definition::Kind::commutator:
        if (d.b < 0 || d.a <= d.b || d.a >= k || commutator_relation(d.a, d.b) != generator(k)) return false;
        if (weights_[static_cast<std::size_t>(d.b)] != 1 || w != weights_[static_cast<std::size_t>(d.a)] + 1) {
          return false;
        }
        break;
      case Definition::Kind::none:
        return false;
    }
  }
  return true;
}

Element PcGroup::generator(int i, int e) const {
  if (i < 0 || i >= n_) throw Error("generator index out of range");
  Element x;
  if (e != 0) mul_gen_pow(x, i, ((e % p_) + p_) % p_);
  return x;
}

void PcGroup::build_tables() {
  const int n = n_;
  central_from_ = n;
  for (int j = n - 1; j >= 0; --j) {
    bool central = powers_[static_cast<std::size_t>(j)] == Element{};
    for (int i = 0; i < n && central; ++i) {
      if (i < j && comms_[static_cast<std::size_t>(j * n + i)] != Element{}) central = false;
      if (i > j && comms_[static_cast<std::size_t>(i * n + j)] != Element{}) central = false;
    }
    if (!central) break;
    central_from_ = j;
  }

  commutes_.assign(static_cast<std::size_t>(n * n), 1);
  for (int k = 0; k < n; ++k) {
    for (int j = k + 1; j < n; ++j) {
      commutes_[static_cast<std::size_t>(k * n + j)] =
          comms_[static_cast<std::size_t>(j * n + k)] == Element{} ? 1 : 0;
    }
  }

  const std::size_t pm1 = static_cast<std::size_t>(p_ - 1);
  conj_pow_.assign(static_cast<std::size_t>(n) * pm1 * static_cast<std::size_t>(n) * pm1, Element{});
  auto slot = [&](int k, int e, int j, int f) -> Element& {
    return conj_pow_[((static_cast<std::size_t>(k) * pm1 + static_cast<std::size_t>(e - 1)) *
                          static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(j)) *
                         pm1 +
                     static_cast<std::size_t>(f - 1)];
  };
  // Entries for k only use the collector on generators > k, whose tables are
  // already complete.
  for (int k = n - 1; k >= 0; --k) {
    for (int j = k + 1; j < n; ++j) {
      Element c = comms_[static_cast<std::size_t>(j * n + k)];
      c[j] = 1;
      slot(k, 1, j, 1) = c;
    }
    for (int e = 1; e < p_; ++e) {
      if (e > 1) {
        // conjugate the previous layer by g_k once more
        for (int j = k + 1; j < n; ++j) {
          const Element prev = slot(k, e - 1, j, 1);
          Element acc;
          for (int m = k + 1; m < n; ++m) {
            if (prev[m] != 0) mul_into(acc, slot(k, 1, m, prev[m]), k + 1);
          }
          slot(k, e, j, 1) = acc;
        }
      }
      for (int j = k + 1; j < n; ++j) {
        const Element base = slot(k, e, j, 1);
        Element acc = base;
        for (int f = 2; f < p_; ++f) {
          mul_into(acc, base, k + 1);
          slot(k, e, j, f) = acc;
        }
      }
    }
  }

  gen_inv_.assign(static_cast<std::size_t>(n), Element{});
  for (int k = 0; k < n; ++k) gen_inv_[static_cast<std::size_t>(k)] = inv(generator(k));
}

void PcGroup::mul_gen_pow(Element& acc, int k, int e) const {
  if (e == 0) return;
  const int n = n_;
  if (k >= central_from_) {
    int v = acc[k] + e;
    acc[k] = static_cast<std::uint8_t>(v >= p_ ? v - p_ : v);
    return;
  }
  const int a = acc[k] + e;
  const bool overflow = a >= p_;
  bool need_conj = false;
  const std::uint8_t* row = &commutes_[static_cast<std::size_t>(k * n)];
  for (int j = k + 1; j < central_from_; ++j) {
    if (acc[j] != 0 && row[j] == 0) {
      need_conj = true;
      break;
    }
  }
  if (!overflow && !need_conj) {
    acc[k] = static_cast<std::uint8_t>(a);
    return;
  }
  Element tail = overflow ? powers_[static_cast<std::size_t>(k)] : Element{};
  acc[k] = static_cast<std::uint8_t>(overflow ? a - p_ : a);
  for (int j = k + 1; j < central_from_; ++j) {
    const int f = acc[j];
    if (f == 0) continue;
    acc[j] = 0;
    if (need_conj) {
      mul_into(tail, conj_power(k, e, j, f), j);
    } else {
      mul_gen_pow(tail, j, f);
    }
  }
  for (int j = central_from_; j < n; ++j) {
    int v = acc[j] + tail[j];
    tail[j] = static_cast<std::uint8_t>(v >= p_ ? v - p_ : v);
  }
  for (int j = k + 1; j < n; ++j) acc[j] = tail[j];
}

void PcGroup::mul_into(Element& acc, const Element& y, int start) const {
  for (int k = start; k < n_; ++k) {
    if (k >= central_from_) {
      for (int j = k; j < n_; ++j) {
        int v = acc[j] + y[j];
        acc[j] = static_cast<std::uint8_t>(v >= p_ ? v - p_ : v);
      }
      return;
    }
    if (y[k] != 0) mul_gen_pow(acc, k, y[k]);
  }
}

Element PcGroup::mul(const Element& x, const Element& y) const {
  Element r = x;
  mul_into(r, y, 0);
  return r;
}

void PcGroup::mul_assign(Element& x, const Element& y) const { mul_into(x, y, 0); }

Element PcGroup::inv(const Element& x) const {
  Element z = x;
  Element y;
  for (int i = 0; i < n_; ++i) {
    if (i >= central_from_) {
      for (int j = i; j < n_; ++j) y[j] = static_cast<std::uint8_t>(z[j] == 0 ? 0 : p_ - z[j]);
      break;
    }
    if (z[i] == 0) continue;
    const int f = p_ - z[i];
    y[i] = static_cast<std::uint8_t>(f);
    mul_gen_pow(z, i, f);
  }
  return y;
}

Element PcGroup::pow(const Element& x, long long k) const {
  Element base = k < 0 ? inv(x) : x;
  unsigned long long m = static_cast<unsigned long long>(k < 0 ? -k : k);
  Element r;
  while (m != 0) {
    if (m & 1ULL) mul_into(r, base, 0);
    m >>= 1;
    if (m != 0) base = mul(base, base);
  }
  return r;
}

Element PcGroup::comm(const Element& x, const Element& y) const {
  return mul(inv(mul(y, x)), mul(x, y));
}

Element PcGroup::conj(const Element& x, const Element& y) const { return mul(mul(inv(y), x), y); }

int PcGroup::order_log(const Element& x) const {
  int k = 0;
  Element y = x;
  while (!is_identity(y)) {
    y = pow(y, p_);
    ++k;
  }
  return k;
}

int PcGroup::depth(const Element& x) const {
  for (int i = 0; i < n_; ++i) {
    if (x[i] != 0) return i;
  }
  return n_;
}

Element PcGroup::collect(std::span<const int> word) const {
  Element acc;
  for (int s : word) {
    const int k = s < 0 ? -s : s;
    if (k < 1 || k > n_) throw Error("generator index " + std::to_string(s) + " out of range");
    if (s > 0) {
      mul_gen_pow(acc, k - 1, 1);
    } else {
      mul_into(acc, gen_inv_[static_cast<std::size_t>(k - 1)], 0);
    }
  }
  return acc;
}

bool PcGroup::is_consistent() const {
  bool ok = true;
  for_each_consistency_test([&](const Element& a, const Element& b) { ok = ok && a == b; });
  return ok;
}

std::string format_element(const PcGroup& g, const Element& x) {
  std::string s;
  for (int i = 0; i < g.ngens(); ++i) {
    if (x[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += 'g' + std::to_string(i + 1) + '^' + std::to_string(x[i]);
  }
  return s.empty() ? "1" : s;
}

std::string PcGroup::to_text() const {
  std::ostringstream out;
  out << "pcgroup p=" << p_ << " n=" << n_ << '\n';
  for (int i = 0; i < n_; ++i) {
    if (powers_[static_cast<std::size_t>(i)] != Element{}) {
      out << 'g' << i + 1 << "^p = " << format_element(*this, powers_[static_cast<std::size_t>(i)]) << '\n';
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < i; ++j) {
      const Element& c = commutator_relation(i, j);
      if (c != Element{}) out << "[g" << i + 1 << ",g" << j + 1 << "] = " << format_element(*this, c) << '\n';
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error("line " + std::to_string(line) + ": " + msg);
}

int parse_gen(const std::string& tok, std::size_t& pos, int n, int line) {
  if (pos >= tok.size() || tok[pos] != 'g') parse_fail(line, "expected generator in '" + tok + "'");
  ++pos;
  std::size_t start = pos;
  while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
  if (start == pos) parse_fail(line, "expected generator number in '" + tok + "'");
  const int k = std::stoi(tok.substr(start, pos - start));
  if (k < 1 || k > n) parse_fail(line, "generator g" + std::to_string(k) + " out of range");
  return k - 1;
}

Element parse_word(std::istringstream& in, int p, int n, int line) {
  Element x;
  std::string tok;
  bool any = false;
  while (in >> tok) {
    if (tok == "1" && !any) {
      any = true;
      continue;
    }
    std::size_t pos = 0;
    const int k = parse_gen(tok, pos, n, line);
    int e = 1;
    if (pos < tok.size()) {
      if (tok[pos] != '^') parse_fail(line, "bad token '" + tok + "'");
      try {
        e = std::stoi(tok.substr(pos + 1));
      } catch (const std::exception&) {
        parse_fail(line, "bad exponent in '" + tok + "'");
      }
    }
    if (e < 0 || e >= p) parse_fail(line, "exponent out of range in '" + tok + "'");
    if (x[k] != 0) parse_fail(line, "repeated generator in word");
    for (int j = k + 1; j < n; ++j) {
      if (x[j] != 0) parse_fail(line, "word is not in normal form");
    }
    x[k] = static_cast<std::uint8_t>(e);
    any = true;
  }
  if (!any) parse_fail(line, "empty right hand side");
  return x;
}

}  // namespace

PcGroup PcGroup::from_text(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  int p = 0, n = -1;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (std::sscanf(line.c_str(), "pcgroup p=%d n=%d", &p, &n) != 2) parse_fail(lineno, "expected header");
    break;
  }
  if (n < 0) throw Error("missing pcgroup header");
  if (!is_small_prime(p)) parse_fail(lineno, "invalid prime");
  if (n > kMaxGens) parse_fail(lineno, "too many generators");
  std::vector<Element> powers(static_cast<std::size_t>(n));
  std::vector<Element> comms(static_cast<std::size_t>(n * n));
  std::vector<char> seen_pow(static_cast<std::size_t>(n), 0);
  std::vector<char> seen_comm(static_cast<std::size_t>(n * n), 0);
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected '='");
    std::string lhs = line.substr(0, eq);
    lhs.erase(std::remove_if(lhs.begin(), lhs.end(), [](unsigned char c) { return std::isspace(c); }), lhs.end());
    std::istringstream rhs(line.substr(eq + 1));
    if (!lhs.empty() && lhs[0] == '[') {
      std::size_t pos = 1;
      const int i = parse_gen(lhs, pos, n, lineno);
      if (pos >= lhs.size() || lhs[pos] != ',') parse_fail(lineno, "expected ','");
      ++pos;
      const int j = parse_gen(lhs, pos, n, lineno);
      if (pos + 1 != lhs.size() || lhs[pos] != ']') parse_fail(lineno, "expected ']'");
      if (i <= j) parse_fail(lineno, "commutator needs i > j");
      const auto s = static_cast<std::size_t>(i * n + j);
      if (seen_comm[s]) parse_fail(lineno, "duplicate relation");
      seen_comm[s] = 1;
      comms[s] = parse_word(rhs, p, n, lineno);
    } else {
      std::size_t pos = 0;
      const int i = parse_gen(lhs, pos, n, lineno);
      const std::string suffix = lhs.substr(pos);
      if (suffix != "^p" && suffix != "^" + std::to_string(p)) parse_fail(lineno, "expected g<i>^p");
      if (seen_pow[static_cast<std::size_t>(i)]) parse_fail(lineno, "duplicate relation");
      seen_pow[static_cast<std::size_t>(i)] = 1;
      powers[static_cast<std::size_t>(i)] = parse_word(rhs, p, n, lineno);
    }
  }
  return PcGroup(p, n, std::move(powers), std::move(comms));
}

}  // namespace schur
