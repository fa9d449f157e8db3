#include "schur/recipes.hpp"

#include <cctype>
#include <optional>

#include "schur/filtrations.hpp"

namespace schur {

SubgroupRecipe SubgroupRecipe::whole() { return SubgroupRecipe(std::make_shared<Node>()); }

SubgroupRecipe SubgroupRecipe::zassenhaus(int i) {
  if (i < 1) throw Error("Zassenhaus index must be positive");
  auto n = std::make_shared<Node>();
  n->op = Op::zassenhaus;
  n->index = i;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::p_central(int j) {
  if (j < 0) throw Error("p-central index must be nonnegative");
  auto n = std::make_shared<Node>();
  n->op = Op::p_central;
  n->index = j;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::agemo(const SubgroupRecipe& r) {
  auto n = std::make_shared<Node>();
  n->op = Op::agemo;
  n->a = r.node_;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::commutator(const SubgroupRecipe& a, const SubgroupRecipe& b) {
  auto n = std::make_shared<Node>();
  n->op = Op::commutator;
  n->a = a.node_;
  n->b = b.node_;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::product(const SubgroupRecipe& a, const SubgroupRecipe& b) {
  auto n = std::make_shared<Node>();
  n->op = Op::product;
  n->a = a.node_;
  n->b = b.node_;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::frattini(const SubgroupRecipe& e) {
  auto n = std::make_shared<Node>();
  n->op = Op::frattini;
  n->a = e.node_;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::star(const SubgroupRecipe& e) {
  auto n = std::make_shared<Node>();
  n->op = Op::relative_frattini;
  n->a = e.node_;
  return SubgroupRecipe(n);
}

SubgroupRecipe SubgroupRecipe::e2(const SubgroupRecipe& e) {
  auto n = std::make_shared<Node>();
  n->op = Op::e2;
  n->a = e.node_;
  return SubgroupRecipe(n);
}

std::string SubgroupRecipe::name() const {
  const Node& n = *node_;
  auto sub = [](const std::shared_ptr<const Node>& x) { return SubgroupRecipe(x).name(); };
  switch (n.op) {
    case Op::whole:
      return "G";
    case Op::zassenhaus:
      return "D" + std::to_string(n.index);
    case Op::p_central:
      return "P" + std::to_string(n.index);
    case Op::agemo:
      return "agemo(" + sub(n.a) + ")";
    case Op::commutator:
      return "[" + sub(n.a) + "," + sub(n.b) + "]";
    case Op::product:
      return sub(n.a) + "*" + sub(n.b);
    case Op::frattini:
      return "E1(" + sub(n.a) + ")";
    case Op::relative_frattini:
      return "star(" + sub(n.a) + ")";
    case Op::e2:
      return "E2(" + sub(n.a) + ")";
  }
  return "?";
}

class RecipeEvaluator {
 public:
  explicit RecipeEvaluator(GroupPtr g) : g_(std::move(g)), zass_(g_) {}

  Subgroup eval(const SubgroupRecipe::Node& n) {
    using Op = SubgroupRecipe::Op;
    switch (n.op) {
      case Op::whole:
        return Subgroup::whole(g_);
      case Op::zassenhaus:
        return zass_.term(n.index);
      case Op::p_central: {
        if (!chain_) chain_ = lower_p_central_chain(g_).terms;
        if (static_cast<std::size_t>(n.index) < chain_->size()) return (*chain_)[static_cast<std::size_t>(n.index)];
        return Subgroup(g_);
      }
      case Op::agemo:
        return schur::agemo(eval(*n.a));
      case Op::commutator:
        return commutator_subgroup(eval(*n.a), eval(*n.b));
      case Op::product:
        return schur::product(eval(*n.a), eval(*n.b));
      case Op::frattini: {
        const Subgroup e = eval(*n.a);
        return schur::product(schur::agemo(e), commutator_subgroup(e, e));
      }
      case Op::relative_frattini: {
        const Subgroup e = eval(*n.a);
        return schur::product(schur::agemo(e), commutator_subgroup(Subgroup::whole(g_), e));
      }
      case Op::e2: {
        const Subgroup e = eval(*n.a);
        const Subgroup fr = schur::product(schur::agemo(e), commutator_subgroup(e, e));
        return schur::product(schur::agemo(e), commutator_subgroup(Subgroup::whole(g_), fr));
      }
    }
    throw Error("unknown recipe");
  }

 private:
  GroupPtr g_;
  ZassenhausSeries zass_;
  std::optional<std::vector<Subgroup>> chain_;
};

Subgroup SubgroupRecipe::evaluate(GroupPtr g) const {
  RecipeEvaluator ev(std::move(g));
  return ev.eval(*node_);
}

namespace {

class RecipeParser {
 public:
  explicit RecipeParser(const std::string& s) : s_(s) {}

  SubgroupRecipe parse() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("bad recipe '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }
  int number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoi(s_.substr(start, pos_ - start));
  }
  SubgroupRecipe expr() {
    auto r = term();
    while (eat('*')) r = SubgroupRecipe::product(r, term());
    return r;
  }
  SubgroupRecipe wrapped() {
    expect('(');
    auto r = expr();
    expect(')');
    return r;
  }
  SubgroupRecipe term() {
    if (eat('[')) {
      auto a = expr();
      expect(',');
      auto b = expr();
      expect(']');
      return SubgroupRecipe::commutator(a, b);
    }
    if (word("E1")) return SubgroupRecipe::frattini(wrapped());
    if (word("E2")) return SubgroupRecipe::e2(wrapped());
    if (word("star")) return SubgroupRecipe::star(wrapped());
    if (word("agemo")) return SubgroupRecipe::agemo(wrapped());
    if (word("G")) return SubgroupRecipe::whole();
    if (word("D")) return SubgroupRecipe::zassenhaus(number());
    if (word("P")) return SubgroupRecipe::p_central(number());
    fail("unknown recipe term");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

SubgroupRecipe parse_recipe(const std::string& text) { return RecipeParser(text).parse(); }

}  // namespace schur
