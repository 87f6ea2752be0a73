#include "fcpoly/whitehead.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

#include "fcpoly/error.hpp"

namespace fcpoly {

using json = nlohmann::ordered_json;

std::string Generator::str() const {
  std::string out = decoration.empty() ? name : formatLetters(decoration) + " " + name;
  if (copy != 0) out += "(" + std::to_string(copy) + ")";
  return out;
}

struct BracketTree::Node {
  std::optional<Generator> gen;
  std::optional<BracketTree> left;
  std::optional<BracketTree> right;
  int degree = 0;
  int leaves = 1;
  std::string text;
  std::string key;  // injective over all generator fields
};

BracketTree BracketTree::leaf(Generator g) {
  auto node = std::make_shared<Node>();
  node->degree = g.degree;
  node->text = g.str();
  node->key = formatLetters(g.decoration) + " " + g.name + "#" + std::to_string(g.degree) + "#" +
              std::to_string(g.copy) + (g.crossTerm ? "#x" : "");
  node->gen = std::move(g);
  return BracketTree(std::move(node));
}

BracketTree BracketTree::bracket(BracketTree a, BracketTree b) {
  auto node = std::make_shared<Node>();
  node->degree = a.degree() + b.degree() - 1;
  node->leaves = a.leafCount() + b.leafCount();
  node->text = "[" + a.str() + ", " + b.str() + "]";
  node->key = "[" + a.node_->key + "," + b.node_->key + "]";
  node->left = std::move(a);
  node->right = std::move(b);
  return BracketTree(std::move(node));
}

bool BracketTree::isLeaf() const { return node_->gen.has_value(); }
const Generator& BracketTree::generator() const { return *node_->gen; }
const BracketTree& BracketTree::left() const { return *node_->left; }
const BracketTree& BracketTree::right() const { return *node_->right; }
int BracketTree::degree() const { return node_->degree; }
int BracketTree::leafCount() const { return node_->leaves; }
std::string BracketTree::str() const { return node_->text; }

const std::string& BracketTree::key() const { return node_->key; }

namespace {

int parity(long v) { return static_cast<int>(((v % 2) + 2) % 2); }
long signPow(long e) { return parity(e) ? -1 : 1; }

}  // namespace

BracketExpr::BracketExpr(std::vector<Term> terms) {
  for (auto& t : terms) {
    if (t.coeff != 0) terms_.push_back(std::move(t));
  }
}

BracketExpr BracketExpr::of(Generator g, long coeff) { return of(BracketTree::leaf(std::move(g)), coeff); }

BracketExpr BracketExpr::of(BracketTree t, long coeff) { return BracketExpr({Term{coeff, std::move(t)}}); }

bool BracketExpr::isHomogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.tree.degree() == terms_.front().tree.degree(); });
}

std::optional<int> BracketExpr::degree() const {
  if (terms_.empty()) return std::nullopt;
  if (!isHomogeneous()) throw Error(Errc::InhomogeneousOperand, "terms of different degrees in " + str());
  return terms_.front().tree.degree();
}

BracketExpr BracketExpr::operator+(const BracketExpr& o) const {
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
  return BracketExpr(std::move(terms));
}

BracketExpr BracketExpr::operator-(const BracketExpr& o) const { return *this + o * -1; }

BracketExpr BracketExpr::operator*(long k) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff *= k;
  return BracketExpr(std::move(terms));
}

std::string BracketExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const long c = terms_[k].coeff;
    if (k) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a);
    out += terms_[k].tree.str();
  }
  return out;
}

BracketExpr bracket(const BracketExpr& a, const BracketExpr& b) {
  a.degree();
  b.degree();
  std::vector<Term> terms;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) terms.push_back(Term{x.coeff * y.coeff, BracketTree::bracket(x.tree, y.tree)});
  }
  return BracketExpr(std::move(terms));
}

namespace {

struct Canon {
  long sign;
  BracketTree tree;
};

std::optional<Canon> canonical(const BracketTree& t) {
  if (t.isLeaf()) return Canon{1, t};
  auto l = canonical(t.left());
  auto r = canonical(t.right());
  if (!l || !r) return std::nullopt;
  long sign = l->sign * r->sign;
  if (l->tree.key() == r->tree.key() && parity(static_cast<long>(l->tree.degree()) * l->tree.degree())) return std::nullopt;
  if (l->tree.key() > r->tree.key()) {
    std::swap(l, r);
    sign *= signPow(static_cast<long>(l->tree.degree()) * r->tree.degree());
  }
  return Canon{sign, BracketTree::bracket(l->tree, r->tree)};
}

}  // namespace

BracketExpr normalizeExpr(const BracketExpr& e) {
  std::map<std::string, Term> merged;
  for (const auto& t : e.terms()) {
    auto c = canonical(t.tree);
    if (!c) continue;
    auto [it, inserted] = merged.try_emplace(c->tree.key(), Term{0, c->tree});
    it->second.coeff += t.coeff * c->sign;
  }
  std::vector<Term> terms;
  for (auto& [key, term] : merged) terms.push_back(std::move(term));
  return BracketExpr(std::move(terms));
}

bool equivalent(const BracketExpr& a, const BracketExpr& b) {
  const BracketExpr d = normalizeExpr(a - b);
  return d.isZero();
}

namespace {

BracketExpr applyTree(const BracketTree& t, const GeneratorImage& image) {
  if (t.isLeaf()) {
    const Generator& g = t.generator();
    std::optional<BracketExpr> img = image(g);
    if (!img) return BracketExpr::of(t);
    if (auto d = img->degree(); d && *d != g.degree) {
      throw Error(Errc::DegreeMismatch, g.str() + " has degree " + std::to_string(g.degree) + " but its image has degree " +
                                            std::to_string(*d));
    }
    return *img;
  }
  return bracket(applyTree(t.left(), image), applyTree(t.right(), image));
}

}  // namespace

BracketExpr applyMorphism(const BracketExpr& e, const GeneratorImage& image) {
  BracketExpr out;
  for (const auto& t : e.terms()) out = out + applyTree(t.tree, image) * t.coeff;
  return out;
}

BracketExpr applyMorphism(const BracketExpr& e, const std::map<Generator, BracketExpr>& images) {
  return applyMorphism(e, [&](const Generator& g) -> std::optional<BracketExpr> {
    auto it = images.find(g);
    if (it == images.end()) return std::nullopt;
    return it->second;
  });
}

BracketExpr jacobiCombination(const BracketTree& x, const BracketTree& y, const BracketTree& z) {
  const long p = x.degree();
  const long q = y.degree();
  const long r = z.degree();
  using T = BracketTree;
  return BracketExpr({Term{signPow(p * r), T::bracket(T::bracket(x, y), z)},
                      Term{signPow(p * q), T::bracket(T::bracket(y, z), x)},
                      Term{signPow(q * r), T::bracket(T::bracket(z, x), y)}});
}

bool isJacobiInstance(const BracketExpr& e) {
  const BracketExpr n = normalizeExpr(e);
  if (n.isZero()) return false;
  const BracketTree& t = n.terms().front().tree;
  if (t.isLeaf()) return false;
  if (t.left().isLeaf() && t.right().isLeaf()) return false;
  // [[a,b],c] or, after reordering, [c,[a,b]].
  const BracketTree& inner = t.left().isLeaf() ? t.right() : t.left();
  const BracketTree& outer = t.left().isLeaf() ? t.left() : t.right();
  const std::array<BracketTree, 3> parts{inner.left(), inner.right(), outer};

  std::array<int, 3> order{0, 1, 2};
  do {
    const BracketExpr j = normalizeExpr(jacobiCombination(parts[order[0]], parts[order[1]], parts[order[2]]));
    if (j.terms().size() != n.terms().size()) continue;
    bool proportional = true;
    const long a = n.terms().front().coeff;
    const long b = j.terms().front().coeff;
    for (std::size_t k = 0; k < j.terms().size() && proportional; ++k) {
      proportional = n.terms()[k].tree.key() == j.terms()[k].tree.key() &&
                     n.terms()[k].coeff * b == j.terms()[k].coeff * a;
    }
    if (proportional) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

BracketExpr codegeneracyPushforward(const BracketExpr& e, int j) {
  return applyMorphism(e, [j](const Generator& g) -> std::optional<BracketExpr> {
    std::vector<Letter> ops{codegen(j)};
    ops.insert(ops.end(), g.decoration.begin(), g.decoration.end());
    Generator out = g;
    out.decoration = normalizeDecoration(ops);
    const bool codegenOnGenerator =
        std::any_of(out.decoration.begin(), out.decoration.end(),
                    [](Letter l) { return l.kind == LetterKind::CosimpCodegen; });
    if (codegenOnGenerator && g.crossTerm) return BracketExpr{};
    return BracketExpr::of(std::move(out));
  });
}

std::vector<CrossTerm> crossTermC21(const GradedSetSpec& basis0, const GradedSetSpec& basis1) {
  std::vector<CrossTerm> out;
  for (const auto& [p, c0] : basis0.counts) {
    for (const auto& x : basis0.namesIn(p)) {
      for (const auto& [q, c1] : basis1.counts) {
        for (const auto& y : basis1.namesIn(q)) {
          Generator g{"S(" + x + "," + y + ")", p + q - 1, 0, {}, true};
          BracketExpr attaching = bracket(BracketExpr::of(Generator{x, p, 0, {}, false}),
                                          BracketExpr::of(Generator{y, q, 1, {}, false}));
          out.push_back(CrossTerm{std::move(g), std::move(attaching)});
        }
      }
    }
  }
  return out;
}

bool S7Report::allPass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.pass; });
}

S7Report s7Example() {
  S7Report r;
  r.iota7 = Generator{"iota7", 7, 0, {}, false};
  const Generator iota13{"iota13", 13, 0, {}, true};
  const Generator iota19{"iota19", 19, 0, {}, true};
  auto dec = [](Generator g, std::vector<Letter> ops, int copy = 0) {
    g.decoration = std::move(ops);
    g.copy = copy;
    return BracketExpr::of(std::move(g));
  };

  r.c11.generator = iota13;
  r.c11.attaching = bracket(dec(r.iota7, {coface(0)}, 0), dec(r.iota7, {coface(1)}, 1));

  r.c22.generator = iota19;
  r.c22.attaching = normalizeExpr(
      bracket(dec(iota13, {coface(0)}), dec(r.iota7, {degen(0), coface(2), coface(1)})) -
      bracket(dec(iota13, {coface(1)}), dec(r.iota7, {degen(0), coface(2), coface(0)})) +
      bracket(dec(iota13, {coface(2)}), dec(r.iota7, {degen(0), coface(1), coface(0)})));
  for (const auto& t : r.c22.attaching.terms()) r.c22Signs.push_back(t.coeff > 0 ? 1 : -1);

  CrossTermSpec spec;
  spec.perBidegree[{1, 1}].add(13, "iota13");
  spec.perBidegree[{2, 2}].add(19, "iota19");
  r.e21 = crossTermLevel(2, 1, spec);

  auto check = [&](std::string name, bool pass, std::string detail) {
    r.checks.push_back(ReportCheck{std::move(name), pass, std::move(detail)});
  };
  const auto d11 = r.c11.attaching.degree();
  check("C11 generator degree 13 = 7+7-1", d11 == 13 && iota13.degree == 13, r.c11.attaching.str());
  const auto d22 = r.c22.attaching.degree();
  check("C22 attaching map homogeneous of degree 19", r.c22.attaching.isHomogeneous() && d22 == 19,
        r.c22.attaching.str());
  check("C22 sign pattern (+,-,+)", r.c22Signs == std::vector<int>{1, -1, 1}, r.c22.attaching.str());
  check("E^2_1 has two degree-13 generators", r.e21.count(13) == 2 && r.e21.total() == 2,
        std::to_string(r.e21.count(13)) + " in degree 13");

  bool lowZero = true;
  for (int n = 0; n <= 6; ++n) {
    for (int rr = 0; rr <= 6; ++rr) {
      if ((n == 1 && rr == 1) || (n == 2 && rr == 2)) continue;
      for (const auto& [deg, c] : spec.at(n, rr).counts) lowZero = lowZero && (deg >= r.connectivity || c == 0);
    }
  }
  check("other cross-terms vanish below degree 24", lowZero, "n, r <= 6");

  bool killed = true;
  std::string pushDetail;
  for (int j = 0; j <= 1; ++j) {
    const BracketExpr pushed = normalizeExpr(codegeneracyPushforward(r.c22.attaching, j));
    killed = killed && pushed.isZero();
    pushDetail += "s^" + std::to_string(j) + ": " + pushed.str() + "; ";
  }
  check("codegeneracies annihilate d0 iota19", killed, pushDetail);

  for (const char* psi : {"d_0 d_1 s^0 s^1", "d_0 d_2 s^0 s^1", "d_1 d_2 s^0 s^1"}) {
    r.polytopes.push_back(labelPolytope(makeTarget(OpWord(parseLetters(psi), {2, 2}))));
  }
  bool sizes = true;
  std::string sizeDetail;
  for (const auto& lp : r.polytopes) {
    sizes = sizes && lp.labels.size() == 18 && lp.complex.dimension() == 3;
    sizeDetail += formatWord(lp.psi.word()) + ": " + std::to_string(lp.labels.size()) + " classes; ";
  }
  check("P^4_2(psi) has 18 vertex classes for each candidate", sizes, sizeDetail);
  return r;
}

namespace {

json leafJson(const Generator& g) {
  json j;
  j["g"] = g.name;
  j["deg"] = g.degree;
  j["copy"] = g.copy;
  j["ops"] = g.decoration.empty() ? std::string() : formatLetters(g.decoration);
  if (g.crossTerm) j["cross"] = true;
  return j;
}

json treeJson(const BracketTree& t) {
  if (t.isLeaf()) return leafJson(t.generator());
  return json::array({"br", treeJson(t.left()), treeJson(t.right())});
}

json exprJson(const BracketExpr& e) {
  json out = json::array();
  for (const auto& t : e.terms()) out.push_back({{"c", t.coeff}, {"t", treeJson(t.tree)}});
  return out;
}

BracketTree treeFromJson(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.size() != 3 || j[0] != "br") throw Error(Errc::MalformedInput, "bracket node must be [\"br\", l, r]");
    return BracketTree::bracket(treeFromJson(j[1]), treeFromJson(j[2]));
  }
  Generator g;
  g.name = j.at("g").get<std::string>();
  g.degree = j.at("deg").get<int>();
  if (g.degree < 1) throw Error(Errc::MalformedInput, "generator degree must be >= 1");
  g.copy = j.value("copy", 0);
  g.decoration = parseLetters(j.value("ops", std::string()));
  g.crossTerm = j.value("cross", false);
  return BracketTree::leaf(std::move(g));
}

}  // namespace

std::string exprToJson(const BracketExpr& e) { return exprJson(e).dump(); }

BracketExpr exprFromJson(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    const nlohmann::json& terms = j.is_object() ? j.at("terms") : j;
    std::vector<Term> out;
    for (const auto& t : terms) out.push_back(Term{t.at("c").get<long>(), treeFromJson(t.at("t"))});
    return BracketExpr(std::move(out));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
}

std::string s7ReportJson(const S7Report& r) {
  json j;
  j["format_version"] = 1;
  j["h_multiplications"] = r.hMultiplications;
  j["connectivity"] = r.connectivity;
  j["generators"] = json::array({leafJson(r.iota7), leafJson(r.c11.generator), leafJson(r.c22.generator)});
  j["attaching"] = {{"iota13", exprJson(r.c11.attaching)}, {"iota19", exprJson(r.c22.attaching)}};
  j["iota19_signs"] = r.c22Signs;
  j["E21"] = json::object();
  for (const auto& [deg, c] : r.e21.counts) j["E21"][std::to_string(deg)] = r.e21.namesIn(deg);
  j["polytopes"] = json::array();
  for (const auto& lp : r.polytopes) {
    std::size_t doubled = 0;
    for (const auto& cls : lp.labels) doubled += cls.members.size() == 2 ? 1 : 0;
    j["polytopes"].push_back({{"psi", formatWord(lp.psi.word())},
                              {"classes", lp.labels.size()},
                              {"doubled", doubled},
                              {"f_vector", fVector(lp.complex, true)}});
  }
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["pass"] = r.allPass();
  return j.dump(2) + "\n";
}

}  // namespace fcpoly
