// Finite p-groups given by consistent polycyclic presentations.
//
// A presentation has generators g_1..g_n, power relations g_i^p = w_i and
// commutator relations [g_i, g_j] = w_ij (i > j), where every right hand side
// is a normal-form word in generators of index > i.  This is a presentation
// refining a central series, so every element has a unique normal form
// g_1^{e_1} ... g_n^{e_n} with 0 <= e_i < p.
//
// Indices are 0-based in the API and 1-based in the text format.
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schur {

inline constexpr int kMaxGens = 48;

/// Error raised for malformed input and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normal form exponent vector.  Only the first ngens() entries of the owning
/// group are meaningful; the rest stay zero.
struct Element {
  std::array<std::uint8_t, kMaxGens> e{};

  std::uint8_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  std::uint8_t& operator[](int i) { return e[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& x) const noexcept;
};

/// How a generator of a p-central presentation arises from earlier ones.
struct Definition {
  enum class Kind : std::uint8_t { none, generator, power, commutator };
  Kind kind = Kind::none;
  int a = -1;  // power: g = g_a^p; commutator: g = [g_a, g_b] with a > b
  int b = -1;

  friend bool operator==(const Definition&, const Definition&) = default;
};

class PcGroup {
 public:
  /// `commutators` has n*n entries; entry i*n+j (i > j) is [g_i, g_j].
  /// Throws Error when a right hand side is not in later generators.
  PcGroup(int p, int n, std::vector<Element> powers, std::vector<Element> commutators);

  /// Attach lower-p-central weights and generator definitions.  The caller
  /// guarantees they describe this presentation; `validate_definitions`
  /// checks them.
  PcGroup with_definitions(std::vector<int> weights, std::vector<Definition> defs) const;

  int prime() const { return p_; }
  int ngens() const { return n_; }
  /// log_p of the group order.
  int order_log() const { return n_; }

  const Element& power_relation(int i) const { return powers_[static_cast<std::size_t>(i)]; }
  const Element& commutator_relation(int i, int j) const {
    return comms_[static_cast<std::size_t>(i * n_ + j)];
  }

  bool has_definitions() const { return !defs_.empty() || n_ == 0; }
  const std::vector<Definition>& definitions() const { return defs_; }
  const std::vector<int>& weights() const { return weights_; }
  /// Number of weight-1 generators (only meaningful with definitions).
  int rank() const;
  /// Largest weight (p-class) of a p-central presentation.
  int weight_class() const;
  bool validate_definitions() const;

  Element identity() const { return Element{}; }
  Element generator(int i, int e = 1) const;
  bool is_identity(const Element& x) const { return x == Element{}; }

  Element mul(const Element& x, const Element& y) const;
  /// x <- x * y, in place.
  void mul_assign(Element& x, const Element& y) const;
  Element inv(const Element& x) const;
  Element pow(const Element& x, long long k) const;
  /// [x, y] = x^-1 y^-1 x y.
  Element comm(const Element& x, const Element& y) const;
  /// x^y = y^-1 x y.
  Element conj(const Element& x, const Element& y) const;
  /// log_p of the order of x.
  int order_log(const Element& x) const;
  /// First index with nonzero exponent, or ngens() for the identity.
  int depth(const Element& x) const;

  /// Collect a word of signed 1-based generator indices (-k means g_k^-1).
  Element collect(std::span<const int> word) const;

  /// Exhaustive test-word consistency check.
  bool is_consistent() const;

  /// Visit the standard consistency test words; `visit(lhs, rhs)` receives the
  /// two collected evaluations of each test word.
  template <class Visit>
  void for_each_consistency_test(Visit&& visit) const;

  std::string to_text() const;
  static PcGroup from_text(const std::string& text);

  friend bool operator==(const PcGroup& a, const PcGroup& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.powers_ == b.powers_ && a.comms_ == b.comms_;
  }

 private:
  void build_tables();
  void mul_gen_pow(Element& acc, int k, int e) const;
  void mul_into(Element& acc, const Element& y, int start) const;
  const Element& conj_power(int k, int e, int j, int f) const {
    const auto pm1 = static_cast<std::size_t>(p_ - 1);
    return conj_pow_[((static_cast<std::size_t>(k) * pm1 + static_cast<std::size_t>(e - 1)) *
                          static_cast<std::size_t>(n_) +
                      static_cast<std::size_t>(j)) *
                         pm1 +
                     static_cast<std::size_t>(f - 1)];
  }

  int p_ = 0;
  int n_ = 0;
  std::vector<Element> powers_;
  std::vector<Element> comms_;
  std::vector<int> weights_;
  std::vector<Definition> defs_;

  // Collector tables.
  std::vector<Element> conj_pow_;       // (g_j^(g_k^e))^f for j > k
  std::vector<std::uint8_t> commutes_;  // g_j and g_k commute (j > k), at k*n+j
  std::vector<Element> gen_inv_;        // g_k^-1
  int central_from_ = 0;                // g_c.. central of exponent p
};

using GroupPtr = std::shared_ptr<const PcGroup>;

inline GroupPtr share(PcGroup g) { return std::make_shared<const PcGroup>(std::move(g)); }

/// Write `x` as a word `g1^2 g3^1`, or `1` for the identity.
std::string format_element(const PcGroup& g, const Element& x);

template <class Visit>
void PcGroup::for_each_consistency_test(Visit&& visit) const {
  const int n = n_;
  // (g_k g_j) g_i = g_k (g_j g_i),  k > j > i
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < j; ++i) {
        const Element gk = generator(k), gj = generator(j), gi = generator(i);
        visit(mul(mul(gk, gj), gi), mul(gk, mul(gj, gi)));
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const Element gj = generator(j);
    const Element gjp = generator(j, p_ - 1);
    // (g_j^(p-1) g_j) g_j = g_j^(p-1) (g_j g_j)
    visit(mul(mul(gjp, gj), gj), mul(gjp, mul(gj, gj)));
    for (int i = 0; i < j; ++i) {
      const Element gi = generator(i);
      const Element gip = generator(i, p_ - 1);
      // (g_j^(p-1) g_j) g_i = g_j^(p-1) (g_j g_i)
      visit(mul(mul(gjp, gj), gi), mul(gjp, mul(gj, gi)));
      // (g_j g_i^(p-1)) g_i = g_j (g_i^(p-1) g_i)
      visit(mul(mul(gj, gip), gi), mul(gj, mul(gip, gi)));
    }
  }
}

}  // namespace schur
