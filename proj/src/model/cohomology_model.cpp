#include "contact9/model/cohomology_model.hpp"

#include "contact9/errors.hpp"

#include <algorithm>

namespace contact9::model {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

}  // namespace

bool IntClass::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; });
}

CohomologyModel::CohomologyModel(std::vector<GradedPiece> graded) : graded_(std::move(graded)) {
  const int n = dimension();
  require(n >= 0, "a model needs at least degree 0");
  for (int d = 0; d <= n; ++d) {
    rho2_.emplace_back(dim2(d), rank_z(d));
    beta_.emplace_back(dim2(d), std::vector<Integer>(rank_z(d + 1)));
  }
  for (int k = 0; k <= n; ++k) {
    std::vector<F2Matrix> row;
    for (int d = 0; d + k <= n; ++d) row.emplace_back(dim2(d + k), dim2(d));
    sq_.push_back(std::move(row));
  }
  for (int i = 0; i <= n; ++i) {
    std::vector<std::vector<F2Vector>> row;
    for (int j = 0; i + j <= n; ++j) row.emplace_back(dim2(i) * dim2(j), F2Vector(dim2(i + j)));
    cup2_.push_back(std::move(row));
  }
  eval2_ = F2Vector(dim2(n));
}

Integer CohomologyModel::order(int d, std::size_t g) const {
  const GradedPiece& p = piece(d);
  require(g < p.z_generators(), "integral generator out of range");
  return g < p.z_rank ? Integer(0) : p.z_torsion[g - p.z_rank];
}

const std::vector<Integer>& CohomologyModel::beta_entry(int d, std::size_t i) const {
  require(in_range(d) && i < dim2(d), "beta entry out of range");
  return beta_[static_cast<std::size_t>(d)][i];
}

void CohomologyModel::set_beta_entry(int d, std::size_t i, std::vector<Integer> coords) {
  require(in_range(d) && i < dim2(d) && coords.size() == rank_z(d + 1), "beta entry out of range");
  beta_[static_cast<std::size_t>(d)][i] = normalize(IntClass{d + 1, std::move(coords)}).c;
}

const F2Matrix& CohomologyModel::sq_matrix(int k, int d) const {
  require(k >= 0 && d >= 0 && d + k <= dimension(), "Sq matrix out of range");
  return sq_[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
}

F2Matrix& CohomologyModel::sq_matrix(int k, int d) {
  require(k >= 0 && d >= 0 && d + k <= dimension(), "Sq matrix out of range");
  return sq_[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
}

const F2Vector& CohomologyModel::cup2_entry(int i, std::size_t a, int j, std::size_t b) const {
  require(i >= 0 && j >= 0 && i + j <= dimension() && a < dim2(i) && b < dim2(j), "cup2 entry out of range");
  return cup2_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a * dim2(j) + b];
}

F2Vector& CohomologyModel::cup2_entry(int i, std::size_t a, int j, std::size_t b) {
  require(i >= 0 && j >= 0 && i + j <= dimension() && a < dim2(i) && b < dim2(j), "cup2 entry out of range");
  return cup2_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a * dim2(j) + b];
}

bool CohomologyModel::has_cupz(int i, int j) const { return i + j > dimension() || cupz_.count({i, j}) > 0; }

void CohomologyModel::set_cupz(int i, int j, std::vector<std::vector<Integer>> products) {
  require(i >= 0 && j >= 0 && i + j <= dimension(), "cupZ degree pair out of range");
  require(products.size() == rank_z(i) * rank_z(j), "cupZ table has the wrong number of entries");
  for (auto& p : products) {
    require(p.size() == rank_z(i + j), "cupZ entry has the wrong length");
    p = normalize(IntClass{i + j, std::move(p)}).c;
  }
  cupz_[{i, j}] = std::move(products);
}

bool CohomologyModel::orientable() const {
  const int n = dimension();
  return orientation_ != 0 && piece(n).z_rank == 1 && piece(n).z_torsion.empty();
}

Mod2Class CohomologyModel::basis2(int d, std::size_t i) const {
  require(i < dim2(d), "mod-2 basis index out of range");
  return {d, F2Vector::unit(dim2(d), i)};
}

IntClass CohomologyModel::basis_z(int d, std::size_t g) const {
  require(g < rank_z(d), "integral generator out of range");
  IntClass z = zero_z(d);
  z.c[g] = 1;
  return z;
}

IntClass CohomologyModel::normalize(IntClass z) const {
  require(z.c.size() == rank_z(z.degree), "integral class does not match its group");
  for (std::size_t g = 0; g < z.c.size(); ++g) {
    const Integer t = order(z.degree, g);
    if (t != 0) z.c[g] = mod_floor(z.c[g], t);
  }
  return z;
}

IntClass CohomologyModel::add(const IntClass& a, const IntClass& b) const {
  require(a.degree == b.degree && a.c.size() == b.c.size(), "adding classes of different degrees");
  IntClass out = a;
  for (std::size_t g = 0; g < out.c.size(); ++g) out.c[g] += b.c[g];
  return normalize(std::move(out));
}

IntClass CohomologyModel::scale(const IntClass& a, const Integer& k) const {
  IntClass out = a;
  for (auto& x : out.c) x *= k;
  return normalize(std::move(out));
}

Mod2Class CohomologyModel::rho2(const IntClass& z) const {
  require(z.c.size() == rank_z(z.degree), "integral class does not match its group");
  Mod2Class out = zero2(z.degree);
  if (!in_range(z.degree)) return out;
  const F2Matrix& m = rho2_matrix(z.degree);
  for (std::size_t g = 0; g < z.c.size(); ++g) {
    if ((z.c[g] & 1) != 0) out.v += m.column(g);
  }
  return out;
}

IntClass CohomologyModel::beta(const Mod2Class& x) const {
  require(x.v.size() == dim2(x.degree), "mod-2 class does not match its group");
  IntClass out = zero_z(x.degree + 1);
  for (std::size_t i : x.v.support()) {
    const auto& e = beta_entry(x.degree, i);
    for (std::size_t g = 0; g < e.size(); ++g) out.c[g] += e[g];
  }
  return normalize(std::move(out));
}

Mod2Class CohomologyModel::sq(int k, const Mod2Class& x) const {
  require(k >= 0, "Sq^k needs k >= 0");
  require(x.v.size() == dim2(x.degree), "mod-2 class does not match its group");
  if (x.degree + k > dimension()) return zero2(x.degree + k);
  return {x.degree + k, sq_matrix(k, x.degree).apply(x.v)};
}

Mod2Class CohomologyModel::cup(const Mod2Class& x, const Mod2Class& y) const {
  require(x.v.size() == dim2(x.degree) && y.v.size() == dim2(y.degree), "mod-2 class does not match its group");
  const int d = x.degree + y.degree;
  Mod2Class out = zero2(d);
  if (d > dimension()) return out;
  for (std::size_t a : x.v.support()) {
    for (std::size_t b : y.v.support()) out.v += cup2_entry(x.degree, a, y.degree, b);
  }
  return out;
}

IntClass CohomologyModel::cup_z(const IntClass& a, const IntClass& b) const {
  const int d = a.degree + b.degree;
  if (d > dimension()) return zero_z(d);
  auto it = cupz_.find({a.degree, b.degree});
  if (it == cupz_.end()) {
    throw ContractViolation("integral product for degrees (" + std::to_string(a.degree) + ", " +
                            std::to_string(b.degree) + ") is not part of the model");
  }
  IntClass out = zero_z(d);
  const std::size_t nb = rank_z(b.degree);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      const auto& p = it->second[i * nb + j];
      for (std::size_t g = 0; g < p.size(); ++g) out.c[g] += a.c[i] * b.c[j] * p[g];
    }
  }
  return normalize(std::move(out));
}

bool CohomologyModel::eval2(const Mod2Class& top) const {
  require(top.degree == dimension() && top.v.size() == dim2(top.degree), "evaluation needs a top-degree class");
  return eval2_.dot(top.v);
}

Integer CohomologyModel::eval_z(const IntClass& top) const {
  require(top.degree == dimension(), "evaluation needs a top-degree class");
  require(orientable(), "integral evaluation needs an orientable model");
  return top.c[0] * orientation_;
}

std::optional<std::pair<int, std::size_t>> CohomologyModel::find_basis(const std::string& name) const {
  for (int d = 0; d <= dimension(); ++d) {
    const auto& names = piece(d).f2_basis;
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return std::make_pair(d, static_cast<std::size_t>(it - names.begin()));
  }
  return std::nullopt;
}

std::string CohomologyModel::describe(const Mod2Class& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (std::size_t i : x.v.support()) {
    if (!out.empty()) out += " + ";
    out += piece(x.degree).f2_basis[i];
  }
  return out;
}

}  // namespace contact9::model
