// Finite groups from Cayley tables, and products of group models.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "hopfgroup/group.hpp"
#include "text_util.hpp"

namespace hopfgroup {
namespace {

struct FiniteData {
  std::string name;
  std::vector<std::string> names;
  std::vector<std::vector<unsigned>> table;
  std::vector<unsigned> inverse;
  unsigned identity = 0;
  std::vector<unsigned> cyclic_orders;
  bool abelian = true;
  std::map<std::string, unsigned, std::less<>> lookup;
};

/// A finite group G with two levels: H_{top-1} = G and H_top = {e}. The
/// original model has top = 0 (counting measure); the dual model of an
/// abelian group has top = 1 (mu(G) = 1), which makes the Fourier transform
/// unitary.
class FiniteGroup final : public Group {
 public:
  FiniteGroup(std::shared_ptr<const FiniteData> data, int top) : data_(std::move(data)), top_(top) {}

  std::string descriptor() const override {
    std::string base = "finite:" + data_->name;
    return top_ == 0 ? base : "dual(" + base + ")";
  }
  int min_level() const override { return top_ - 1; }
  int max_level() const override { return top_; }
  bool is_abelian() const override { return data_->abelian; }
  std::size_t arity() const override { return 1; }

  GElem identity() const override { return elem(data_->identity); }
  GElem mul(const GElem& x, const GElem& y) const override { return elem(data_->table[idx(x)][idx(y)]); }
  GElem inv(const GElem& x) const override { return elem(data_->inverse[idx(x)]); }

  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    return n == top_ ? elem(idx(x)) : identity();
  }

  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    if (m > n) throw Error(ErrorCode::Usage, "coset_reps needs m <= n");
    if (m == n) return {identity()};
    std::vector<GElem> out;
    for (unsigned i = 0; i < size(); ++i) out.push_back(elem(i));
    return out;
  }

  mpz_class index(int m, int n) const override { return m == n ? 1 : size(); }
  int conj_level(const GElem&, int n) const override {
    require_level(n);
    return n;
  }
  mpq_class modular(const GElem&) const override { return 1; }

  std::vector<GElem> window(int n, int) const override { return coset_reps(min_level(), n); }

  void validate(const GElem& x) const override {
    if (x.coords.size() != 1 || x.coords[0].get_den() != 1 || sgn(x.coords[0]) < 0 || x.coords[0] >= size())
      throw Error(ErrorCode::Elem, "not an element of " + descriptor());
  }

  std::string format_element(const GElem& x) const override { return data_->names[idx(x)]; }

  GElem parse_element(std::string_view text) const override {
    std::string_view t = detail::trim(text);
    auto it = data_->lookup.find(t);
    if (it == data_->lookup.end())
      throw Error(ErrorCode::Elem, "'" + std::string(t) + "' is not an element of " + descriptor());
    return elem(it->second);
  }

  GroupPtr dual() const override {
    if (!data_->abelian || data_->cyclic_orders.empty())
      throw Error(ErrorCode::Unsupported, "group " + descriptor() + " is not abelian with a known cyclic decomposition");
    return std::make_shared<FiniteGroup>(data_, 1 - top_);
  }

  CycScalar pairing(const GElem& xi, const GElem& x) const override {
    const auto& orders = data_->cyclic_orders;
    unsigned long lcm = 1;
    for (unsigned o : orders) lcm = std::lcm(lcm, static_cast<unsigned long>(o));
    auto a = digits(idx(xi));
    auto b = digits(idx(x));
    unsigned long long exponent = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      exponent += static_cast<unsigned long long>(a[i]) * b[i] * (lcm / orders[i]);
    return CycScalar::root_of_unity(static_cast<unsigned>(lcm), static_cast<long long>(exponent % lcm));
  }

  int annihilator_level(int n) const override {
    require_level(n);
    dual();
    return -n;
  }

  std::vector<GElem> annihilator_reps(int n, int level) const override { return dual()->coset_reps(-n, level); }

  int pairing_level(const GElem& x) const override {
    GroupPtr d = dual();
    return idx(x) == data_->identity ? d->min_level() : d->max_level();
  }

 private:
  unsigned size() const { return static_cast<unsigned>(data_->names.size()); }
  static GElem elem(unsigned i) { return GElem{mpq_class(i)}; }
  unsigned idx(const GElem& x) const {
    validate(x);
    return static_cast<unsigned>(x.coords[0].get_num().get_ui());
  }
  std::vector<unsigned> digits(unsigned i) const {
    std::vector<unsigned> out(data_->cyclic_orders.size());
    for (std::size_t k = out.size(); k-- > 0;) {
      out[k] = i % data_->cyclic_orders[k];
      i /= data_->cyclic_orders[k];
    }
    return out;
  }

  std::shared_ptr<const FiniteData> data_;
  int top_;
};

class ProductGroup final : public Group {
 public:
  explicit ProductGroup(std::vector<GroupPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorCode::Parse, "product of no groups");
    lo_ = factors_.front()->min_level();
    hi_ = factors_.front()->max_level();
    for (const auto& f : factors_) {
      lo_ = std::min(lo_, f->min_level());
      hi_ = std::max(hi_, f->max_level());
      offsets_.push_back(arity_);
      arity_ += f->arity();
    }
  }

  std::string descriptor() const override {
    std::string out = "prod(";
    for (std::size_t i = 0; i < factors_.size(); ++i) out += (i ? "," : "") + factors_[i]->descriptor();
    return out + ")";
  }
  int min_level() const override { return lo_; }
  int max_level() const override { return hi_; }
  bool is_abelian() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](const GroupPtr& f) { return f->is_abelian(); });
  }
  std::size_t arity() const override { return arity_; }

  GElem identity() const override {
    std::vector<GElem> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    return join(parts);
  }
  GElem mul(const GElem& x, const GElem& y) const override {
    auto a = split(x), b = split(y);
    for (std::size_t i = 0; i < factors_.size(); ++i) a[i] = factors_[i]->mul(a[i], b[i]);
    return join(a);
  }
  GElem inv(const GElem& x) const override {
    auto a = split(x);
    for (std::size_t i = 0; i < factors_.size(); ++i) a[i] = factors_[i]->inv(a[i]);
    return join(a);
  }
  GElem canonical_rep(const GElem& x, int n) const override {
    require_level(n);
    auto a = split(x);
    for (std::size_t i = 0; i < factors_.size(); ++i) a[i] = factors_[i]->canonical_rep(a[i], clamp(i, n));
    return join(a);
  }
  std::vector<GElem> coset_reps(int m, int n) const override {
    require_level(m);
    require_level(n);
    if (m > n) throw Error(ErrorCode::Usage, "coset_reps needs m <= n");
    std::vector<std::vector<GElem>> per;
    for (std::size_t i = 0; i < factors_.size(); ++i) per.push_back(factors_[i]->coset_reps(clamp(i, m), clamp(i, n)));
    return cartesian(per);
  }
  mpz_class index(int m, int n) const override {
    mpz_class out = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) out *= factors_[i]->index(clamp(i, m), clamp(i, n));
    return out;
  }
  int conj_level(const GElem& x, int n) const override {
    require_level(n);
    auto a = split(x);
    int m = n;
    for (std::size_t i = 0; i < factors_.size(); ++i) m = std::max(m, factors_[i]->conj_level(a[i], clamp(i, n)));
    return std::min(m, hi_);
  }
  mpq_class modular(const GElem& x) const override {
    auto a = split(x);
    mpq_class out = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) out *= factors_[i]->modular(a[i]);
    return out;
  }
  std::vector<GElem> window(int n, int radius) const override {
    std::vector<std::vector<GElem>> per;
    for (std::size_t i = 0; i < factors_.size(); ++i) per.push_back(factors_[i]->window(clamp(i, n), radius));
    return cartesian(per);
  }
  void validate(const GElem& x) const override {
    if (x.coords.size() != arity_) throw Error(ErrorCode::Elem, "element of wrong shape for " + descriptor());
    auto a = split(x);
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->validate(a[i]);
  }
  std::string format_element(const GElem& x) const override {
    auto a = split(x);
    std::string out = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) out += (i ? ", " : "") + factors_[i]->format_element(a[i]);
    return out + ")";
  }
  GElem parse_element(std::string_view text) const override {
    std::string_view t = detail::trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
      throw Error(ErrorCode::Parse, "product element must be a tuple, got '" + std::string(t) + "'");
    auto parts = detail::split_top_level(t.substr(1, t.size() - 2));
    if (parts.size() != factors_.size()) throw Error(ErrorCode::Parse, "product element has the wrong number of components");
    std::vector<GElem> a;
    for (std::size_t i = 0; i < factors_.size(); ++i) a.push_back(factors_[i]->parse_element(parts[i]));
    return join(a);
  }

  GroupPtr dual() const override {
    std::vector<GroupPtr> duals;
    for (const auto& f : factors_) duals.push_back(f->dual());
    return make_product(std::move(duals));
  }
  CycScalar pairing(const GElem& xi, const GElem& x) const override {
    auto a = split(xi), b = split(x);
    CycScalar out(1L);
    for (std::size_t i = 0; i < factors_.size(); ++i) out *= factors_[i]->pairing(a[i], b[i]);
    return out;
  }
  int annihilator_level(int n) const override {
    GroupPtr d = dual();
    int level = d->min_level();
    for (std::size_t i = 0; i < factors_.size(); ++i) level = std::max(level, factors_[i]->annihilator_level(clamp(i, n)));
    return level;
  }
  std::vector<GElem> annihilator_reps(int n, int level) const override {
    GroupPtr d = dual();
    std::vector<std::vector<GElem>> per;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      GroupPtr fd = factors_[i]->dual();
      int fl = std::clamp(level, fd->min_level(), fd->max_level());
      per.push_back(factors_[i]->annihilator_reps(clamp(i, n), fl));
    }
    return cartesian(per);
  }
  int pairing_level(const GElem& x) const override {
    GroupPtr d = dual();
    auto a = split(x);
    int level = d->min_level();
    for (std::size_t i = 0; i < factors_.size(); ++i) level = std::max(level, factors_[i]->pairing_level(a[i]));
    return level;
  }

 private:
  int clamp(std::size_t i, int n) const { return std::clamp(n, factors_[i]->min_level(), factors_[i]->max_level()); }

  std::vector<GElem> split(const GElem& x) const {
    if (x.coords.size() != arity_) throw Error(ErrorCode::Elem, "element of wrong shape for " + descriptor());
    std::vector<GElem> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      auto first = x.coords.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
      out.emplace_back(std::vector<mpq_class>(first, first + static_cast<std::ptrdiff_t>(factors_[i]->arity())));
    }
    return out;
  }

  static GElem join(const std::vector<GElem>& parts) {
    GElem out;
    for (const auto& p : parts) out.coords.insert(out.coords.end(), p.coords.begin(), p.coords.end());
    return out;
  }

  static std::vector<GElem> cartesian(const std::vector<std::vector<GElem>>& per) {
    std::vector<std::vector<GElem>> acc{{}};
    for (const auto& options : per) {
      std::vector<std::vector<GElem>> next;
      for (const auto& prefix : acc)
        for (const auto& o : options) {
          next.push_back(prefix);
          next.back().push_back(o);
        }
      acc = std::move(next);
    }
    std::vector<GElem> out;
    out.reserve(acc.size());
    for (const auto& parts : acc) out.push_back(join(parts));
    return out;
  }

  std::vector<GroupPtr> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t arity_ = 0;
  int lo_ = 0;
  int hi_ = 0;
};

std::vector<std::vector<unsigned>> cyclic_product_table(const std::vector<unsigned>& orders, unsigned size) {
  std::vector<std::vector<unsigned>> table(size, std::vector<unsigned>(size));
  for (unsigned a = 0; a < size; ++a)
    for (unsigned b = 0; b < size; ++b) {
      unsigned ra = a, rb = b, result = 0, scale = 1;
      for (std::size_t k = orders.size(); k-- > 0;) {
        unsigned digit = (ra % orders[k] + rb % orders[k]) % orders[k];
        result += digit * scale;
        scale *= orders[k];
        ra /= orders[k];
        rb /= orders[k];
      }
      table[a][b] = result;
    }
  return table;
}

GroupPtr make_cyclic_product(std::string_view name, const std::vector<unsigned>& orders) {
  unsigned size = 1;
  for (unsigned o : orders) {
    if (o == 0 || o > 4096) throw Error(ErrorCode::Parse, "cyclic factor order out of range in '" + std::string(name) + "'");
    size *= o;
    if (size > 4096) throw Error(ErrorCode::Range, "finite group '" + std::string(name) + "' is beyond desk scale");
  }
  std::vector<std::string> names;
  for (unsigned i = 0; i < size; ++i) {
    std::vector<unsigned> digits(orders.size());
    unsigned r = i;
    for (std::size_t k = orders.size(); k-- > 0;) {
      digits[k] = r % orders[k];
      r /= orders[k];
    }
    std::string label;
    for (std::size_t k = 0; k < digits.size(); ++k) label += (k ? "." : "") + std::to_string(digits[k]);
    names.push_back(label);
  }
  return make_finite(std::string(name), std::move(names), cyclic_product_table(orders, size), orders);
}

GroupPtr make_symmetric(unsigned n) {
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0U);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<unsigned>, unsigned> where;
  std::vector<std::string> names;
  for (unsigned i = 0; i < perms.size(); ++i) {
    where[perms[i]] = i;
    std::string label;
    for (unsigned v : perms[i]) label += std::to_string(v + 1);
    names.push_back(label);
  }
  std::vector<std::vector<unsigned>> table(perms.size(), std::vector<unsigned>(perms.size()));
  for (unsigned a = 0; a < perms.size(); ++a)
    for (unsigned b = 0; b < perms.size(); ++b) {
      std::vector<unsigned> c(n);
      for (unsigned i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];  // (a b)(i) = a(b(i))
      table[a][b] = where[c];
    }
  return make_finite("S" + std::to_string(n), std::move(names), std::move(table));
}

GroupPtr make_dihedral(unsigned n) {
  // s^f r^i stored at index f * n + i; r s = s r^{-1}.
  std::vector<std::string> names;
  for (unsigned f = 0; f < 2; ++f)
    for (unsigned i = 0; i < n; ++i) names.push_back((f ? "s" : "r") + std::to_string(i));
  std::vector<std::vector<unsigned>> table(2 * n, std::vector<unsigned>(2 * n));
  for (unsigned a = 0; a < 2 * n; ++a)
    for (unsigned b = 0; b < 2 * n; ++b) {
      unsigned fa = a / n, ia = a % n, fb = b / n, ib = b % n;
      unsigned rot = ((fb ? n - ia : ia) + ib) % n;
      table[a][b] = ((fa + fb) % 2) * n + rot;
    }
  return make_finite("D" + std::to_string(n), std::move(names), std::move(table));
}

}  // namespace

GroupPtr make_product(std::vector<GroupPtr> factors) { return std::make_shared<ProductGroup>(std::move(factors)); }

GroupPtr make_finite(std::string name, std::vector<std::string> element_names, std::vector<std::vector<unsigned>> table,
                     std::vector<unsigned> cyclic_orders) {
  auto data = std::make_shared<FiniteData>();
  const unsigned size = static_cast<unsigned>(element_names.size());
  if (size == 0) throw Error(ErrorCode::Validation, "finite group has no elements");
  if (table.size() != size) throw Error(ErrorCode::Validation, "Cayley table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != size) throw Error(ErrorCode::Validation, "Cayley table is not square");
    for (unsigned v : row)
      if (v >= size) throw Error(ErrorCode::Validation, "Cayley table entry out of range");
  }
  for (unsigned i = 0; i < size; ++i) {
    if (element_names[i].empty() || !data->lookup.emplace(element_names[i], i).second)
      throw Error(ErrorCode::Validation, "element names must be distinct and nonempty");
    if (element_names[i].find_first_of(",()[]{} \t") != std::string::npos)
      throw Error(ErrorCode::Validation, "element name '" + element_names[i] + "' contains reserved characters");
  }
  bool found = false;
  for (unsigned e = 0; e < size && !found; ++e) {
    bool ok = true;
    for (unsigned x = 0; x < size && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      data->identity = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::Validation, "Cayley table has no identity");
  data->inverse.assign(size, size);
  for (unsigned x = 0; x < size; ++x)
    for (unsigned y = 0; y < size; ++y)
      if (table[x][y] == data->identity && table[y][x] == data->identity) data->inverse[x] = y;
  for (unsigned x = 0; x < size; ++x)
    if (data->inverse[x] == size) throw Error(ErrorCode::Validation, "element " + element_names[x] + " has no inverse");
  for (unsigned a = 0; a < size; ++a)
    for (unsigned b = 0; b < size; ++b) {
      if (table[a][b] != table[b][a]) data->abelian = false;
      for (unsigned c = 0; c < size; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::Validation, "Cayley table is not associative");
    }
  if (!cyclic_orders.empty()) {
    unsigned product = 1;
    for (unsigned o : cyclic_orders) product *= o;
    if (product != size || !data->abelian || data->identity != 0)
      throw Error(ErrorCode::Validation, "cyclic decomposition does not match the Cayley table");
    if (cyclic_product_table(cyclic_orders, size) != table)
      throw Error(ErrorCode::Validation, "Cayley table is not the mixed-radix product of the given cyclic groups");
  }
  data->name = std::move(name);
  data->names = std::move(element_names);
  data->table = std::move(table);
  data->cyclic_orders = std::move(cyclic_orders);
  return std::make_shared<FiniteGroup>(std::move(data), 0);
}

GroupPtr make_named_finite(std::string_view name) {
  std::string n(detail::trim(name));
  auto number_after = [&](std::size_t pos) -> unsigned {
    long long v = 0;
    if (!detail::parse_int(std::string_view(n).substr(pos), v) || v <= 0 || v > 4096)
      throw Error(ErrorCode::Parse, "unknown finite group '" + n + "'");
    return static_cast<unsigned>(v);
  };
  if (!n.empty() && n[0] == 'Z') {
    std::vector<unsigned> orders;
    for (std::string_view part : detail::split_top_level(n, 'x')) {
      if (part.empty() || part[0] != 'Z') throw Error(ErrorCode::Parse, "unknown finite group '" + n + "'");
      long long v = 0;
      if (!detail::parse_int(part.substr(1), v) || v <= 0) throw Error(ErrorCode::Parse, "unknown finite group '" + n + "'");
      orders.push_back(static_cast<unsigned>(v));
    }
    return make_cyclic_product(n, orders);
  }
  if (!n.empty() && n[0] == 'S') {
    unsigned k = number_after(1);
    if (k > 5) throw Error(ErrorCode::Range, "symmetric groups are limited to S5");
    return make_symmetric(k);
  }
  if (!n.empty() && n[0] == 'D') {
    unsigned k = number_after(1);
    if (k < 2 || k > 512) throw Error(ErrorCode::Range, "dihedral order out of range");
    return make_dihedral(k);
  }
  throw Error(ErrorCode::Parse, "unknown finite group '" + n + "'");
}

GroupPtr load_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open Cayley table file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, "Cayley table file '" + path + "': " + e.what());
  }
  try {
    std::vector<std::string> names = doc.at("elements").get<std::vector<std::string>>();
    std::map<std::string, unsigned> where;
    for (unsigned i = 0; i < names.size(); ++i) where[names[i]] = i;
    std::vector<std::vector<unsigned>> table;
    for (const auto& row : doc.at("table")) {
      std::vector<unsigned> r;
      for (const auto& cell : row) {
        if (cell.is_number_unsigned()) {
          r.push_back(cell.get<unsigned>());
        } else {
          auto it = where.find(cell.get<std::string>());
          if (it == where.end()) throw Error(ErrorCode::Validation, "Cayley table names an unknown element");
          r.push_back(it->second);
        }
      }
      table.push_back(std::move(r));
    }
    std::vector<unsigned> orders;
    if (doc.contains("cyclic_orders")) orders = doc["cyclic_orders"].get<std::vector<unsigned>>();
    return make_finite("cayley@" + path, std::move(names), std::move(table), std::move(orders));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Validation, "Cayley table file '" + path + "': " + e.what());
  }
}

}  // namespace hopfgroup
